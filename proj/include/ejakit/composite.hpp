#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ejakit/check_report.hpp"
#include "ejakit/effects.hpp"

namespace ejakit {

/// Factorwise Kronecker composite of two algebras built from real or complex
/// matrix factors. Factor (i, j) of the composite is factor i of `left`
/// tensored with factor j of `right`, in row-major order.
struct TensorComposite {
  AlgebraSpec left;
  AlgebraSpec right;
  AlgebraSpec spec;
  std::vector<std::pair<int, int>> pairs;
};

/// M_n(F) (x) M_m(F) = M_nm(F). Size-1 factors are kind neutral. Throws
/// MixedKindError when a real and a complex factor of size >= 2 meet and
/// StructuralError for quaternionic or spin factors.
TensorComposite tensor_matrix(const AlgebraSpec& left, const AlgebraSpec& right);

/// a (x) b inside the composite.
Element tensor_elements(const TensorComposite& c, const Element& a, const Element& b);

/// Randomized checks of the composite laws: atom (x) atom is an atom of unit
/// norm, product states have product densities and stay normalized,
/// orthogonality is preserved, frames multiply to frames (rank is
/// multiplicative) and tensors of spanning atom families stay independent.
CheckReport check_composite_props(const AlgebraSpec& left, const AlgebraSpec& right, std::uint64_t seed, int trials,
                                  const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Dimension-counting classification of simple algebras closed under
// composites.

enum class CatalogKind { real, complex, quaternion, spin, exceptional };

const char* catalog_kind_name(CatalogKind kind);

struct CatalogEntry {
  CatalogKind kind;
  long long rank;
  long long dim;
};

/// Real and complex for n = 1..max_rank, quaternionic for n = 2..max_rank,
/// spin factors of rank 2 with dim 3..max_spin_dim and the exceptional
/// algebra (rank 3, dim 27).
std::vector<CatalogEntry> simple_catalog(int max_rank, int max_spin_dim);

/// Largest dimension of a simple algebra of the given rank; INT64_MAX for
/// rank 2, where spin factors are unbounded.
long long max_simple_dim(long long rank);

struct ScanRow {
  CatalogEntry entry;
  /// First power m at which no simple algebra of rank n^m reaches dim^m;
  /// 0 when the entry survives every power up to max_power.
  int excluded_at_power = 0;
  /// Required and available dimension at the excluding power.
  long long required_dim = 0;
  long long available_dim = 0;
};

struct MixedPairing {
  int real_rank;
  int complex_rank;
  bool tensor_rejected;  // tensor_matrix raised MixedKindError
  bool excluded;         // check_mixed_exclusion found the contradiction
};

struct ScanResult {
  int max_rank;
  int max_power;
  int max_spin_dim;
  std::vector<ScanRow> rows;
  std::vector<MixedPairing> mixed;
};

/// Throws ValidationError unless max_rank >= 2, max_power >= 2 and
/// max_spin_dim >= 3.
ScanResult scan_closure(int max_rank, int max_power, int max_spin_dim = 10);

/// Power at which an entry is excluded (0 = survives up to max_power).
int exclusion_power(const CatalogEntry& entry, int max_power, long long* required = nullptr,
                    long long* available = nullptr);

/// Decides whether a complex factor of rank n and a real factor of rank m can
/// share a simple composite: the composite must be a complex matrix algebra,
/// whose corners are all complex, while a pure state on the complex side
/// would cut out a corner isomorphic to the real factor. details.excluded is
/// true exactly when the real factor is not itself complex (m >= 2).
CheckReport check_mixed_exclusion(int n, int m);

nlohmann::json scan_to_json(const ScanResult& scan);
std::string scan_to_text(const ScanResult& scan);

}  // namespace ejakit

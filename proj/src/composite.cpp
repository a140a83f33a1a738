#include "ejakit/composite.hpp"

#include <climits>
#include <cstdio>

#include "ejakit/errors.hpp"
#include "ejakit/random.hpp"
#include "ejakit/serialize.hpp"

namespace ejakit {

namespace {

constexpr long long kUnbounded = LLONG_MAX;

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kUnbounded / b) return kUnbounded;
  return a * b;
}

long long sat_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

FactorKind product_kind(const FactorKind& a, const FactorKind& b) {
  for (const FactorKind* k : {&a, &b}) {
    if (k->type == FactorType::quaternion || k->type == FactorType::spin) {
      throw StructuralError("no tensor product is available for " + k->name());
    }
  }
  const int n = a.size * b.size;
  if (a.size == 1) return {b.type, n};
  if (b.size == 1) return {a.type, n};
  if (a.type != b.type) {
    throw MixedKindError("cannot tensor " + a.name() + " with " + b.name() +
                         ": real and complex matrix factors have no common composite");
  }
  return {a.type, n};
}

json coords_json(const Element& a) { return element_to_json(a); }

}  // namespace

TensorComposite tensor_matrix(const AlgebraSpec& left, const AlgebraSpec& right) {
  if (left.is_null() || right.is_null()) throw StructuralError("tensor_matrix: null system");
  std::vector<FactorKind> kinds;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < left.num_factors(); ++i)
    for (int j = 0; j < right.num_factors(); ++j) {
      kinds.push_back(product_kind(left.factor(i), right.factor(j)));
      pairs.emplace_back(i, j);
    }
  return TensorComposite{left, right, AlgebraSpec(std::move(kinds)), std::move(pairs)};
}

Element tensor_elements(const TensorComposite& c, const Element& a, const Element& b) {
  require_same_spec(a.spec(), c.left, "tensor_elements");
  require_same_spec(b.spec(), c.right, "tensor_elements");
  Eigen::VectorXd coords(c.spec.dim());
  for (size_t idx = 0; idx < c.pairs.size(); ++idx) {
    const auto [i, j] = c.pairs[idx];
    const Eigen::MatrixXcd x = factor_matrix(a, i);
    const Eigen::MatrixXcd y = factor_matrix(b, j);
    Eigen::MatrixXcd k(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index s = 0; s < x.cols(); ++s) k.block(r * y.rows(), s * y.cols(), y.rows(), y.cols()) = x(r, s) * y;
    const FactorKind& kind = c.spec.factor(static_cast<int>(idx));
    coords.segment(c.spec.offset(static_cast<int>(idx)), kind.dim()) = matrix_to_coords(kind, k);
  }
  return Element(c.spec, std::move(coords));
}

CheckReport check_composite_props(const AlgebraSpec& left, const AlgebraSpec& right, std::uint64_t seed, int trials,
                                  const ToleranceConfig& tol) {
  const TensorComposite c = tensor_matrix(left, right);
  CheckRecorder rec("composite_properties", c.spec, seed, tol.op);
  rec.details()["left"] = spec_to_json(left);
  rec.details()["right"] = spec_to_json(right);
  rec.details()["rank_product"] = c.spec.rank() == left.rank() * right.rank();
  rec.details()["dim_composite"] = c.spec.dim();
  rec.details()["dim_product"] = left.dim() * right.dim();
  rec.record_bool(c.spec.rank() == left.rank() * right.rank());
  rec.record_bool(c.spec.dim() >= left.dim() * right.dim());

  const std::uint64_t salt = stable_hash("composite_properties");
  const Element one = Element::unit(c.spec);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t), salt);
    const std::vector<Element> fa = random_frame(left, rng);
    const std::vector<Element> fb = random_frame(right, rng);
    const Element& p = fa.front();
    const Element& q = fb.front();
    auto exemplar = [&] { return json{{"p", coords_json(p)}, {"q", coords_json(q)}}; };

    // atom (x) atom is an atom with unit norm
    const Element pq = tensor_elements(c, p, q);
    rec.record_bool(is_atomic(pq, tol), exemplar);
    rec.record(std::abs(inner_product(pq, pq) - 1.0), exemplar);

    // product densities evaluate multiplicatively on product effects
    const Element x = random_effect(left, rng);
    const Element y = random_effect(right, rng);
    const double joint = evaluate(tensor_elements(c, x, y), State{pq});
    rec.record(std::abs(joint - evaluate(x, State{p}) * evaluate(y, State{q})), exemplar);

    // normalized states compose to a normalized state
    const Element w1 = random_element(left, rng, SampleProfile::state);
    const Element w2 = random_element(right, rng, SampleProfile::state);
    rec.record(std::abs(State{tensor_elements(c, w1, w2)}.total() - 1.0), exemplar);

    // frames multiply to frames; orthogonality is preserved
    Element sum = Element::zero(c.spec);
    std::vector<Element> products;
    for (const auto& a : fa)
      for (const auto& b : fb) products.push_back(tensor_elements(c, a, b));
    double cross = 0.0;
    for (size_t i = 0; i < products.size(); ++i) {
      sum += products[i];
      for (size_t j = i + 1; j < products.size(); ++j)
        cross = std::max(cross, std::abs(inner_product(products[i], products[j])));
    }
    rec.record(cross, exemplar);
    rec.record(distance(sum, one), exemplar);
    rec.record_bool(static_cast<int>(products.size()) == c.spec.rank(), exemplar);
  }

  // Tensors of spanning atom families are linearly independent.
  Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(trials), salt);
  std::vector<Element> atoms_a;
  std::vector<Element> atoms_b;
  for (int i = 0; i < left.dim(); ++i) atoms_a.push_back(random_atom(left, rng));
  for (int i = 0; i < right.dim(); ++i) atoms_b.push_back(random_atom(right, rng));
  Eigen::MatrixXd cols(c.spec.dim(), left.dim() * right.dim());
  Eigen::Index col = 0;
  for (const auto& a : atoms_a)
    for (const auto& b : atoms_b) cols.col(col++) = tensor_elements(c, a, b).coords();
  Eigen::MatrixXd span_a(left.dim(), left.dim());
  Eigen::MatrixXd span_b(right.dim(), right.dim());
  for (int i = 0; i < left.dim(); ++i) span_a.col(i) = atoms_a[static_cast<size_t>(i)].coords();
  for (int i = 0; i < right.dim(); ++i) span_b.col(i) = atoms_b[static_cast<size_t>(i)].coords();
  Eigen::FullPivLU<Eigen::MatrixXd> lu_a(span_a);
  Eigen::FullPivLU<Eigen::MatrixXd> lu_b(span_b);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(cols.transpose() * cols);
  lu.setThreshold(1e-10);
  const bool spanning = lu_a.rank() == left.dim() && lu_b.rank() == right.dim();
  rec.details()["gram_rank"] = lu.rank();
  if (spanning) {
    rec.record_bool(lu.rank() == left.dim() * right.dim());
  } else {
    rec.skip();
  }
  return rec.finish();
}

const char* catalog_kind_name(CatalogKind kind) {
  switch (kind) {
    case CatalogKind::real:
      return "real";
    case CatalogKind::complex:
      return "complex";
    case CatalogKind::quaternion:
      return "quaternion";
    case CatalogKind::spin:
      return "spin";
    case CatalogKind::exceptional:
      return "exceptional";
  }
  return "?";
}

std::vector<CatalogEntry> simple_catalog(int max_rank, int max_spin_dim) {
  std::vector<CatalogEntry> out;
  for (long long n = 1; n <= max_rank; ++n) out.push_back({CatalogKind::real, n, n * (n + 1) / 2});
  for (long long n = 1; n <= max_rank; ++n) out.push_back({CatalogKind::complex, n, n * n});
  for (long long n = 2; n <= max_rank; ++n) out.push_back({CatalogKind::quaternion, n, n * (2 * n - 1)});
  for (long long d = 3; d <= max_spin_dim; ++d) out.push_back({CatalogKind::spin, 2, d});
  if (max_rank >= 3) out.push_back({CatalogKind::exceptional, 3, 27});
  return out;
}

long long max_simple_dim(long long rank) {
  if (rank == 2) return kUnbounded;
  long long best = sat_mul(rank, sat_mul(2, rank) - 1);  // quaternionic
  best = std::max(best, sat_mul(rank, rank));
  if (rank == 3) best = std::max(best, 27LL);
  return best;
}

int exclusion_power(const CatalogEntry& entry, int max_power, long long* required, long long* available) {
  for (int m = 2; m <= max_power; ++m) {
    const long long need = sat_pow(entry.dim, m);
    const long long rank = sat_pow(entry.rank, m);
    const long long have = max_simple_dim(rank);
    if (have < need) {
      if (required) *required = need;
      if (available) *available = have;
      return m;
    }
  }
  return 0;
}

ScanResult scan_closure(int max_rank, int max_power, int max_spin_dim) {
  if (max_rank < 2 || max_power < 2 || max_spin_dim < 3) {
    throw ValidationError("scan_closure needs max_rank >= 2, max_power >= 2 and max_spin_dim >= 3");
  }
  ScanResult out{max_rank, max_power, max_spin_dim, {}, {}};
  for (const auto& e : simple_catalog(max_rank, max_spin_dim)) {
    ScanRow row{e};
    row.excluded_at_power = exclusion_power(e, max_power, &row.required_dim, &row.available_dim);
    out.rows.push_back(row);
  }
  for (int n = 2; n <= max_rank; ++n)
    for (int m = 2; m <= max_rank; ++m) {
      bool rejected = false;
      try {
        tensor_matrix(AlgebraSpec({FactorKind::real(n)}), AlgebraSpec({FactorKind::complex(m)}));
      } catch (const MixedKindError&) {
        rejected = true;
      }
      const CheckReport r = check_mixed_exclusion(m, n);
      out.mixed.push_back({n, m, rejected, r.details.value("excluded", false)});
    }
  return out;
}

CheckReport check_mixed_exclusion(int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("check_mixed_exclusion needs n, m >= 1");
  CheckRecorder rec("complex_real_exclusion", AlgebraSpec({FactorKind::complex(n), FactorKind::real(m)}),
                    0, 0.0);
  const long long rank = static_cast<long long>(n) * m;
  const long long need = static_cast<long long>(n) * n * (static_cast<long long>(m) * (m + 1) / 2);

  // Simple candidates for the composite: right rank, enough dimension and
  // closed under further composites.
  json candidates = json::array();
  std::vector<CatalogKind> kinds;
  const CatalogEntry options[] = {{CatalogKind::real, rank, rank * (rank + 1) / 2},
                                  {CatalogKind::complex, rank, rank * rank},
                                  {CatalogKind::quaternion, rank, rank * (2 * rank - 1)}};
  for (const auto& e : options) {
    if (e.kind == CatalogKind::quaternion && rank < 2) continue;
    const bool big_enough = e.dim >= need;
    const bool closed = exclusion_power(e, 2) == 0;
    candidates.push_back({{"kind", catalog_kind_name(e.kind)},
                          {"rank", e.rank},
                          {"dim", e.dim},
                          {"dim_sufficient", big_enough},
                          {"closed_under_composites", closed}});
    if (big_enough && closed) kinds.push_back(e.kind);
  }
  rec.details()["required_rank"] = rank;
  rec.details()["required_dim"] = need;
  rec.details()["candidates"] = candidates;

  // Every surviving candidate must be complex when the left factor is
  // complex of rank >= 2 (a real composite would be too small).
  bool only_complex = !kinds.empty();
  for (auto k : kinds) only_complex = only_complex && (k == CatalogKind::complex || rank == 1);
  rec.record_bool(n == 1 || only_complex);

  // Corners of M_nm(C) are M_l(C); the corner cut out by a pure state on the
  // complex side must be isomorphic to M_m(R), so rank l = m and l^2 equals
  // m(m+1)/2.
  json corners = json::array();
  bool matched = false;
  for (long long l = 1; l <= rank; ++l) {
    const bool same = l == m && l * l == static_cast<long long>(m) * (m + 1) / 2;
    matched = matched || same;
    corners.push_back({{"kind", "complex"}, {"rank", l}, {"dim", l * l}, {"isomorphic_to_real_factor", same}});
  }
  rec.details()["corner_kinds"] = corners;
  rec.details()["real_factor"] = {{"rank", m}, {"dim", static_cast<long long>(m) * (m + 1) / 2}};
  rec.details()["excluded"] = !matched;
  rec.record_bool(matched == (m == 1));
  return rec.finish();
}

json scan_to_json(const ScanResult& scan) {
  json rows = json::array();
  for (const auto& r : scan.rows) {
    json row{{"kind", catalog_kind_name(r.entry.kind)}, {"rank", r.entry.rank}, {"dim", r.entry.dim}};
    if (r.excluded_at_power == 0) {
      row["survives"] = true;
      row["excluded_at_power"] = nullptr;
    } else {
      row["survives"] = false;
      row["excluded_at_power"] = r.excluded_at_power;
      row["required_dim"] = r.required_dim;
      row["available_dim"] = r.available_dim;
    }
    rows.push_back(row);
  }
  json mixed = json::array();
  for (const auto& p : scan.mixed) {
    mixed.push_back({{"real_rank", p.real_rank},
                     {"complex_rank", p.complex_rank},
                     {"tensor_rejected", p.tensor_rejected},
                     {"excluded", p.excluded}});
  }
  return json{{"max_rank", scan.max_rank},
              {"max_power", scan.max_power},
              {"max_spin_dim", scan.max_spin_dim},
              {"entries", rows},
              {"mixed_pairings", mixed}};
}

std::string scan_to_text(const ScanResult& scan) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %5s %6s  %s\n", "kind", "rank", "dim", "status");
  out += line;
  for (const auto& r : scan.rows) {
    std::string status = "survives";
    if (r.excluded_at_power != 0) {
      status = "excluded_at_power " + std::to_string(r.excluded_at_power);
    }
    std::snprintf(line, sizeof line, "%-12s %5lld %6lld  %s\n", catalog_kind_name(r.entry.kind), r.entry.rank,
                  r.entry.dim, status.c_str());
    out += line;
  }
  int rejected = 0;
  for (const auto& p : scan.mixed) rejected += (p.tensor_rejected && p.excluded) ? 1 : 0;
  std::snprintf(line, sizeof line, "mixed real/complex pairings excluded: %d of %zu\n", rejected, scan.mixed.size());
  out += line;
  return out;
}

}  // namespace ejakit

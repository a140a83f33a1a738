#include "ejakit/algebra.hpp"

#include "ejakit/errors.hpp"

namespace ejakit {

int FactorKind::dim() const {
  switch (type) {
    case FactorType::real:
      return size * (size + 1) / 2;
    case FactorType::complex:
      return size * size;
    case FactorType::quaternion:
      return size * (2 * size - 1);
    case FactorType::spin:
      return size + 1;
  }
  return 0;
}

int FactorKind::rank() const { return type == FactorType::spin ? 2 : size; }

std::string FactorKind::name() const {
  switch (type) {
    case FactorType::real:
      return "RealMatrix(" + std::to_string(size) + ")";
    case FactorType::complex:
      return "ComplexMatrix(" + std::to_string(size) + ")";
    case FactorType::quaternion:
      return "QuaternionMatrix(" + std::to_string(size) + ")";
    case FactorType::spin:
      return "Spin(" + std::to_string(size) + ")";
  }
  return "?";
}

AlgebraSpec::AlgebraSpec(std::vector<FactorKind> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("an algebra needs at least one simple factor");
  for (const auto& f : factors_) {
    if (f.type == FactorType::spin) {
      if (f.size < 2) throw ValidationError("Spin(k) requires k >= 2, got " + std::to_string(f.size));
    } else if (f.size < 1) {
      throw ValidationError("matrix factors require n >= 1, got " + std::to_string(f.size));
    }
  }
  index();
}

AlgebraSpec AlgebraSpec::null_system() {
  AlgebraSpec s;
  s.index();
  return s;
}

AlgebraSpec AlgebraSpec::trivial() { return AlgebraSpec({FactorKind::real(1)}); }

void AlgebraSpec::index() {
  offsets_.clear();
  dim_ = 0;
  rank_ = 0;
  for (const auto& f : factors_) {
    offsets_.push_back(dim_);
    dim_ += f.dim();
    rank_ += f.rank();
  }
}

std::string AlgebraSpec::name() const {
  if (factors_.empty()) return "Null";
  std::string out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) out += " + ";
    out += factors_[i].name();
  }
  return out;
}

void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b, const char* what) {
  if (!(a == b)) {
    throw StructuralError(std::string(what) + ": algebra mismatch (" + a.name() + " vs " + b.name() + ")");
  }
}

}  // namespace ejakit

#include "ejakit/element.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "ejakit/errors.hpp"

namespace ejakit {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2 = 0.70710678118654752440;

using cd = std::complex<double>;

}  // namespace

Element::Element(AlgebraSpec spec, Eigen::VectorXd coords) : spec_(std::move(spec)), coords_(std::move(coords)) {
  if (coords_.size() != spec_.dim()) {
    throw StructuralError("element of " + spec_.name() + " needs " + std::to_string(spec_.dim()) +
                          " coordinates, got " + std::to_string(coords_.size()));
  }
}

Element Element::zero(const AlgebraSpec& spec) { return Element(spec, Eigen::VectorXd::Zero(spec.dim())); }

Element Element::factor_unit(const AlgebraSpec& spec, int factor) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(spec.dim());
  const FactorKind& k = spec.factor(factor);
  const int off = spec.offset(factor);
  if (k.type == FactorType::spin) {
    c(off + k.size) = kSqrt2;
  } else {
    for (int i = 0; i < k.size; ++i) c(off + i) = 1.0;
  }
  return Element(spec, std::move(c));
}

Element Element::unit(const AlgebraSpec& spec) {
  Element u = zero(spec);
  for (int f = 0; f < spec.num_factors(); ++f) u += factor_unit(spec, f);
  return u;
}

Eigen::VectorXd Element::block(int factor) const {
  return coords_.segment(spec_.offset(factor), spec_.factor(factor).dim());
}

Element& Element::operator+=(const Element& other) {
  require_same_spec(spec_, other.spec_, "element addition");
  coords_ += other.coords_;
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_spec(spec_, other.spec_, "element subtraction");
  coords_ -= other.coords_;
  return *this;
}

Element& Element::operator*=(double s) {
  coords_ *= s;
  return *this;
}

double distance(const Element& a, const Element& b) {
  require_same_spec(a.spec(), b.spec(), "distance");
  return (a.coords() - b.coords()).norm();
}

Eigen::MatrixXcd coords_to_matrix(const FactorKind& kind, const Eigen::Ref<const Eigen::VectorXd>& c) {
  if (!kind.is_matrix()) throw StructuralError("coords_to_matrix called on a spin factor");
  const int n = kind.size;
  const int N = kind.matrix_size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
  int idx = n;
  switch (kind.type) {
    case FactorType::real:
      for (int i = 0; i < n; ++i) m(i, i) = c(i);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double x = c(idx++) * kInvSqrt2;
          m(i, j) = x;
          m(j, i) = x;
        }
      break;
    case FactorType::complex:
      for (int i = 0; i < n; ++i) m(i, i) = c(i);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const cd z(c(idx) * kInvSqrt2, c(idx + 1) * kInvSqrt2);
          idx += 2;
          m(i, j) = z;
          m(j, i) = std::conj(z);
        }
      break;
    case FactorType::quaternion:
      for (int i = 0; i < n; ++i) {
        m(2 * i, 2 * i) = c(i);
        m(2 * i + 1, 2 * i + 1) = c(i);
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const cd a(c(idx) * kInvSqrt2, c(idx + 1) * kInvSqrt2);
          const cd b(c(idx + 2) * kInvSqrt2, c(idx + 3) * kInvSqrt2);
          idx += 4;
          m(2 * i, 2 * j) = a;
          m(2 * i, 2 * j + 1) = b;
          m(2 * i + 1, 2 * j) = -std::conj(b);
          m(2 * i + 1, 2 * j + 1) = std::conj(a);
          m(2 * j, 2 * i) = std::conj(a);
          m(2 * j, 2 * i + 1) = -b;
          m(2 * j + 1, 2 * i) = std::conj(b);
          m(2 * j + 1, 2 * i + 1) = a;
        }
      break;
    case FactorType::spin:
      break;
  }
  return m;
}

Eigen::VectorXd matrix_to_coords(const FactorKind& kind, const Eigen::MatrixXcd& raw) {
  if (!kind.is_matrix()) throw StructuralError("matrix_to_coords called on a spin factor");
  const int n = kind.size;
  const int N = kind.matrix_size();
  if (raw.rows() != N || raw.cols() != N) {
    throw StructuralError(kind.name() + " block must be " + std::to_string(N) + "x" + std::to_string(N));
  }
  const Eigen::MatrixXcd h = 0.5 * (raw + raw.adjoint());
  Eigen::VectorXd c(kind.dim());
  int idx = n;
  switch (kind.type) {
    case FactorType::real:
      for (int i = 0; i < n; ++i) c(i) = h(i, i).real();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(idx++) = kSqrt2 * h(i, j).real();
      break;
    case FactorType::complex:
      for (int i = 0; i < n; ++i) c(i) = h(i, i).real();
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          c(idx++) = kSqrt2 * h(i, j).real();
          c(idx++) = kSqrt2 * h(i, j).imag();
        }
      break;
    case FactorType::quaternion:
      for (int i = 0; i < n; ++i) c(i) = 0.5 * (h(2 * i, 2 * i).real() + h(2 * i + 1, 2 * i + 1).real());
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const cd a = 0.5 * (h(2 * i, 2 * j) + std::conj(h(2 * i + 1, 2 * j + 1)));
          const cd b = 0.5 * (h(2 * i, 2 * j + 1) - std::conj(h(2 * i + 1, 2 * j)));
          c(idx++) = kSqrt2 * a.real();
          c(idx++) = kSqrt2 * a.imag();
          c(idx++) = kSqrt2 * b.real();
          c(idx++) = kSqrt2 * b.imag();
        }
      break;
    case FactorType::spin:
      break;
  }
  return c;
}

double structure_defect(const FactorKind& kind, const Eigen::MatrixXcd& m) {
  double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (kind.type == FactorType::real) {
    defect = std::max(defect, m.imag().cwiseAbs().maxCoeff());
  } else if (kind.type == FactorType::quaternion) {
    for (int i = 0; i < kind.size; ++i)
      for (int j = 0; j < kind.size; ++j) {
        defect = std::max(defect, std::abs(m(2 * i, 2 * j) - std::conj(m(2 * i + 1, 2 * j + 1))));
        defect = std::max(defect, std::abs(m(2 * i, 2 * j + 1) + std::conj(m(2 * i + 1, 2 * j))));
      }
  }
  return defect;
}

Eigen::MatrixXcd factor_matrix(const Element& a, int factor) {
  const FactorKind& k = a.spec().factor(factor);
  return coords_to_matrix(k, a.coords().segment(a.spec().offset(factor), k.dim()));
}

Eigen::VectorXd spin_to_coords(const SpinBlock& s) {
  Eigen::VectorXd c(s.v.size() + 1);
  c.head(s.v.size()) = kSqrt2 * s.v;
  c(s.v.size()) = kSqrt2 * s.t;
  return c;
}

SpinBlock coords_to_spin(const Eigen::Ref<const Eigen::VectorXd>& c) {
  const auto k = c.size() - 1;
  return SpinBlock{kInvSqrt2 * c.head(k), kInvSqrt2 * c(k)};
}

SpinBlock spin_block(const Element& a, int factor) {
  const FactorKind& k = a.spec().factor(factor);
  if (k.type != FactorType::spin) throw StructuralError("spin_block called on a matrix factor");
  return coords_to_spin(a.coords().segment(a.spec().offset(factor), k.dim()));
}

Eigen::VectorXcd quaternion_partner(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd w(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    w(i) = -std::conj(v(i + 1));
    w(i + 1) = std::conj(v(i));
  }
  return w;
}

}  // namespace ejakit

#include "ejakit/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ejakit/errors.hpp"

namespace ejakit {

namespace {

// Eigenvalues of a quaternionic embedding come in pairs; values this close
// (relative to the block scale) are treated as one eigenspace while pairing.
constexpr double kQuaternionPairing = 1e-9;

constexpr double kSqrtRoundoff = 1e-13;

Eigen::VectorXd spin_product(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const SpinBlock x = coords_to_spin(a);
  const SpinBlock y = coords_to_spin(b);
  SpinBlock out{y.t * x.v + x.t * y.v, x.t * y.t + x.v.dot(y.v)};
  return spin_to_coords(out);
}

struct QuaternionAtom {
  double value;
  Eigen::VectorXcd v;
  Eigen::VectorXcd w;
};

// Splits each (even-dimensional, J-invariant) eigenspace of a quaternionic
// embedding into pairs (v, Jv).
FactorFrame quaternion_frame(const FactorKind& kind, const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  const Eigen::VectorXd& w = solver.eigenvalues();
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();
  const int N = static_cast<int>(w.size());
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());

  std::vector<QuaternionAtom> atoms;
  // Orthogonalizing against every earlier pair (not only the current
  // cluster) keeps atoms orthogonal when neighbouring clusters are close
  // enough for the eigensolver to mix their vectors.
  std::vector<Eigen::VectorXcd> chosen;
  int start = 0;
  while (start < N) {
    int end = start + 1;
    while (end < N && (w(end) - w(end - 1) <= kQuaternionPairing * scale || (end - start) % 2 == 1)) ++end;
    const int width = end - start;
    for (int step = 0; step < width / 2; ++step) {
      Eigen::VectorXcd best;
      double best_norm = -1.0;
      for (int c = start; c < end; ++c) {
        Eigen::VectorXcd g = vecs.col(c);
        for (const auto& u : chosen) g -= u * u.dot(g);
        const double nrm = g.norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = g;
        }
      }
      Eigen::VectorXcd v = best / best_norm;
      Eigen::VectorXcd partner = quaternion_partner(v);
      for (const auto& u : chosen) partner -= u * u.dot(partner);
      partner -= v * v.dot(partner);
      partner.normalize();
      const double value = 0.5 * ((v.adjoint() * m * v)(0).real() + (partner.adjoint() * m * partner)(0).real());
      chosen.push_back(v);
      chosen.push_back(partner);
      atoms.push_back({value, v, partner});
    }
    start = end;
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const QuaternionAtom& a, const QuaternionAtom& b) { return a.value > b.value; });

  FactorFrame frame;
  frame.kind = kind;
  frame.values.resize(kind.size);
  frame.vectors.resize(N, N);
  for (int c = 0; c < kind.size; ++c) {
    frame.values(c) = atoms[static_cast<size_t>(c)].value;
    frame.vectors.col(2 * c) = atoms[static_cast<size_t>(c)].v;
    frame.vectors.col(2 * c + 1) = atoms[static_cast<size_t>(c)].w;
  }
  return frame;
}

}  // namespace

Element jordan_product(const Element& a, const Element& b) {
  require_same_spec(a.spec(), b.spec(), "jordan_product");
  const AlgebraSpec& spec = a.spec();
  Eigen::VectorXd out(spec.dim());
  for (int f = 0; f < spec.num_factors(); ++f) {
    const FactorKind& k = spec.factor(f);
    const int off = spec.offset(f);
    if (k.type == FactorType::spin) {
      out.segment(off, k.dim()) = spin_product(a.block(f), b.block(f));
    } else {
      const Eigen::MatrixXcd x = factor_matrix(a, f);
      const Eigen::MatrixXcd y = factor_matrix(b, f);
      out.segment(off, k.dim()) = matrix_to_coords(k, 0.5 * (x * y + y * x));
    }
  }
  return Element(spec, std::move(out));
}

double inner_product(const Element& a, const Element& b) {
  require_same_spec(a.spec(), b.spec(), "inner_product");
  return a.coords().dot(b.coords());
}

Element quadratic_rep(const Element& a, const Element& x) {
  require_same_spec(a.spec(), x.spec(), "quadratic_rep");
  const AlgebraSpec& spec = a.spec();
  Eigen::VectorXd out(spec.dim());
  for (int f = 0; f < spec.num_factors(); ++f) {
    const FactorKind& k = spec.factor(f);
    const int off = spec.offset(f);
    if (k.type == FactorType::spin) {
      const Eigen::VectorXd ab = a.block(f);
      const Eigen::VectorXd xb = x.block(f);
      const Eigen::VectorXd aax = spin_product(ab, spin_product(ab, xb));
      const Eigen::VectorXd aa_x = spin_product(spin_product(ab, ab), xb);
      out.segment(off, k.dim()) = 2.0 * aax - aa_x;
    } else {
      const Eigen::MatrixXcd m = factor_matrix(a, f);
      out.segment(off, k.dim()) = matrix_to_coords(k, m * factor_matrix(x, f) * m);
    }
  }
  return Element(spec, std::move(out));
}

Eigen::MatrixXcd FactorFrame::atom_columns(int c) const {
  if (kind.type == FactorType::quaternion) return vectors.middleCols(2 * c, 2);
  return vectors.col(c);
}

Eigen::VectorXd FactorFrame::atom_coords(int c) const {
  if (kind.type == FactorType::spin) {
    const double sign = c == 0 ? 1.0 : -1.0;
    return spin_to_coords(SpinBlock{0.5 * sign * direction, 0.5});
  }
  const Eigen::MatrixXcd cols = atom_columns(c);
  return matrix_to_coords(kind, cols * cols.adjoint());
}

FactorFrame factor_frame(const Element& a, int factor) {
  const FactorKind& kind = a.spec().factor(factor);
  FactorFrame frame;
  frame.kind = kind;
  switch (kind.type) {
    case FactorType::spin: {
      const SpinBlock s = spin_block(a, factor);
      const double r = s.v.norm();
      frame.direction = Eigen::VectorXd::Zero(kind.size);
      if (r > 0.0) {
        frame.direction = s.v / r;
      } else {
        frame.direction(0) = 1.0;
      }
      frame.values.resize(2);
      frame.values << s.t + r, s.t - r;
      return frame;
    }
    case FactorType::real: {
      const Eigen::MatrixXd m = factor_matrix(a, factor).real();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
      frame.values = solver.eigenvalues().reverse();
      frame.vectors = solver.eigenvectors().rowwise().reverse().cast<std::complex<double>>();
      return frame;
    }
    case FactorType::complex: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(factor_matrix(a, factor));
      frame.values = solver.eigenvalues().reverse();
      frame.vectors = solver.eigenvectors().rowwise().reverse();
      return frame;
    }
    case FactorType::quaternion:
      return quaternion_frame(kind, factor_matrix(a, factor));
  }
  return frame;
}

AtomicSpectrum atomic_spectrum(const Element& a) {
  require_finite(a, "atomic_spectrum");
  const AlgebraSpec& spec = a.spec();
  struct Entry {
    double value;
    int factor;
    Eigen::VectorXd coords;
  };
  std::vector<Entry> entries;
  entries.reserve(static_cast<size_t>(spec.rank()));
  for (int f = 0; f < spec.num_factors(); ++f) {
    const FactorFrame frame = factor_frame(a, f);
    for (int c = 0; c < frame.size(); ++c) {
      Eigen::VectorXd coords = Eigen::VectorXd::Zero(spec.dim());
      coords.segment(spec.offset(f), frame.kind.dim()) = frame.atom_coords(c);
      entries.push_back({frame.values(c), f, std::move(coords)});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.value > y.value; });
  AtomicSpectrum out;
  for (auto& e : entries) {
    out.values.push_back(e.value);
    out.factors.push_back(e.factor);
    out.atoms.emplace_back(spec, std::move(e.coords));
  }
  return out;
}

std::vector<double> eigenvalues(const Element& a) {
  require_finite(a, "eigenvalues");
  std::vector<double> out;
  for (int f = 0; f < a.spec().num_factors(); ++f) {
    const FactorFrame frame = factor_frame(a, f);
    for (int c = 0; c < frame.size(); ++c) out.push_back(frame.values(c));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Element SpectralDecomposition::reconstruct(const AlgebraSpec& spec) const {
  Element out = Element::zero(spec);
  for (size_t i = 0; i < values.size(); ++i) out += values[i] * projections[i];
  return out;
}

SpectralDecomposition spectral_decompose(const Element& a, const ToleranceConfig& tol) {
  const AtomicSpectrum atoms = atomic_spectrum(a);
  SpectralDecomposition out;
  size_t i = 0;
  while (i < atoms.size()) {
    size_t j = i + 1;
    while (j < atoms.size() && atoms.values[j - 1] - atoms.values[j] <= tol.eig) ++j;
    Element p = Element::zero(a.spec());
    double sum = 0.0;
    std::vector<Element> members;
    for (size_t m = i; m < j; ++m) {
      p += atoms.atoms[m];
      sum += atoms.values[m];
      members.push_back(atoms.atoms[m]);
    }
    out.values.push_back(sum / static_cast<double>(j - i));
    out.projections.push_back(std::move(p));
    out.atoms.push_back(std::move(members));
    i = j;
  }
  return out;
}

double min_eigenvalue(const Element& a) {
  const auto ev = eigenvalues(a);
  return ev.empty() ? 0.0 : ev.back();
}

double max_eigenvalue(const Element& a) {
  const auto ev = eigenvalues(a);
  return ev.empty() ? 0.0 : ev.front();
}

double order_norm(const Element& a) {
  const auto ev = eigenvalues(a);
  if (ev.empty()) return 0.0;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

bool is_positive(const Element& a, const ToleranceConfig& tol) { return min_eigenvalue(a) >= -tol.pos; }

bool is_effect(const Element& a, const ToleranceConfig& tol) {
  const auto ev = eigenvalues(a);
  if (ev.empty()) return true;
  return ev.back() >= -tol.pos && ev.front() <= 1.0 + tol.pos;
}

Element spectral_function(const Element& a, const std::function<double(double)>& f) {
  const AtomicSpectrum s = atomic_spectrum(a);
  Element out = Element::zero(a.spec());
  for (size_t i = 0; i < s.size(); ++i) out += f(s.values[i]) * s.atoms[i];
  return out;
}

Element spectral_projection_above(const Element& a, double threshold) {
  return spectral_function(a, [threshold](double x) { return x > threshold ? 1.0 : 0.0; });
}

Element effect_sqrt(const Element& q) {
  // sqrt amplifies roundoff (sqrt(1e-17) ~ 3e-9), so eigenvalues at that
  // level count as exact zeros.
  return spectral_function(q, [](double x) { return x <= kSqrtRoundoff ? 0.0 : std::sqrt(std::min(x, 1.0)); });
}

void require_finite(const Element& a, const char* what) {
  if (!a.coords().allFinite()) throw ValidationError(std::string(what) + ": element has non-finite coordinates");
}

}  // namespace ejakit

#include "ejakit/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ejakit/errors.hpp"
#include "ejakit/jordan.hpp"

namespace ejakit {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::VectorXcd gaussian_vector(Rng& rng, int n, bool complex) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) {
    const double re = rng.normal();
    const double im = complex ? rng.normal() : 0.0;
    v(i) = {re, im};
  }
  return v;
}

Eigen::VectorXd atom_block(const FactorKind& kind, Rng& rng) {
  switch (kind.type) {
    case FactorType::spin: {
      Eigen::VectorXd u(kind.size);
      for (int i = 0; i < kind.size; ++i) u(i) = rng.normal();
      double n = u.norm();
      if (n == 0.0) {
        u(0) = 1.0;
        n = 1.0;
      }
      return spin_to_coords(SpinBlock{0.5 * u / n, 0.5});
    }
    case FactorType::real:
    case FactorType::complex: {
      Eigen::VectorXcd v = gaussian_vector(rng, kind.size, kind.type == FactorType::complex);
      v.normalize();
      return matrix_to_coords(kind, v * v.adjoint());
    }
    case FactorType::quaternion: {
      Eigen::VectorXcd v = gaussian_vector(rng, 2 * kind.size, true);
      v.normalize();
      const Eigen::VectorXcd w = quaternion_partner(v);
      return matrix_to_coords(kind, v * v.adjoint() + w * w.adjoint());
    }
  }
  return {};
}

}  // namespace

Rng Rng::derived(std::uint64_t master, std::uint64_t stream, std::uint64_t salt) {
  return Rng(splitmix64(splitmix64(master) ^ splitmix64(stream + 0x632be59bd9b4e019ULL) ^ salt));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Element random_element(const AlgebraSpec& spec, Rng& rng, SampleProfile profile) {
  switch (profile) {
    case SampleProfile::effect:
      return random_effect(spec, rng);
    case SampleProfile::state: {
      const AtomicSpectrum s = atomic_spectrum(random_element(spec, rng));
      std::vector<double> weights(s.size());
      for (auto& w : weights) w = rng.uniform(0.05, 1.0);
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      Element out = Element::zero(spec);
      for (size_t i = 0; i < s.size(); ++i) out += (weights[i] / total) * s.atoms[i];
      return out;
    }
    case SampleProfile::gaussian:
      break;
  }
  Eigen::VectorXd c(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) c(i) = rng.normal();
  return Element(spec, std::move(c));
}

Element random_effect(const AlgebraSpec& spec, Rng& rng) {
  const Element g = random_element(spec, rng);
  const auto ev = eigenvalues(g);
  const double hi = ev.front();
  const double lo = ev.back();
  const Element one = Element::unit(spec);
  if (hi - lo < 1e-12) return rng.uniform() * one;
  return (1.0 / (hi - lo)) * (g - lo * one);
}

Element random_sharp(const AlgebraSpec& spec, Rng& rng, int rank_target) {
  if (rank_target < 0 || rank_target > spec.rank()) {
    throw ValidationError("rank_target " + std::to_string(rank_target) + " outside [0, " +
                          std::to_string(spec.rank()) + "] for " + spec.name());
  }
  std::vector<Element> frame = random_frame(spec, rng);
  for (size_t i = frame.size(); i > 1; --i) {
    const int j = rng.uniform_int(0, static_cast<int>(i) - 1);
    std::swap(frame[i - 1], frame[static_cast<size_t>(j)]);
  }
  Element out = Element::zero(spec);
  for (int i = 0; i < rank_target; ++i) out += frame[static_cast<size_t>(i)];
  return out;
}

Element random_sharp(const AlgebraSpec& spec, Rng& rng) {
  return random_sharp(spec, rng, rng.uniform_int(0, spec.rank()));
}

Element random_atom_in_factor(const AlgebraSpec& spec, int factor, Rng& rng) {
  const FactorKind& kind = spec.factor(factor);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(spec.dim());
  c.segment(spec.offset(factor), kind.dim()) = atom_block(kind, rng);
  return Element(spec, std::move(c));
}

Element random_atom(const AlgebraSpec& spec, Rng& rng) {
  return random_atom_in_factor(spec, rng.uniform_int(0, spec.num_factors() - 1), rng);
}

std::vector<Element> random_frame(const AlgebraSpec& spec, Rng& rng) {
  // Eigenvectors of a Gaussian sample are Haar distributed in each factor.
  return atomic_spectrum(random_element(spec, rng)).atoms;
}

Element random_element(const AlgebraSpec& spec, std::uint64_t seed, SampleProfile profile) {
  Rng rng(seed);
  return random_element(spec, rng, profile);
}

Element random_effect(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_effect(spec, rng);
}

Element random_sharp(const AlgebraSpec& spec, std::uint64_t seed, int rank_target) {
  Rng rng(seed);
  return random_sharp(spec, rng, rank_target);
}

Element random_atom(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  return random_atom(spec, rng);
}

}  // namespace ejakit

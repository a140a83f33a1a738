#include <gtest/gtest.h>

#include "ejakit/effects.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/random.hpp"
#include "oracles.hpp"

using namespace ejakit;

namespace {

const AlgebraSpec kC3({FactorKind::complex(3)});

Eigen::VectorXcd random_vector(int n, Rng& rng) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = {rng.normal(), rng.normal()};
  return v;
}

}  // namespace

TEST(Effects, FloorAndCeilingOfDiagonalEffect) {
  const Element q = oracle::diagonal(kC3, {1.0, 0.4, 0.0});
  EXPECT_LT(distance(floor(q), oracle::diagonal(kC3, {1, 0, 0})), 1e-12);
  EXPECT_LT(distance(ceiling(q), oracle::diagonal(kC3, {1, 1, 0})), 1e-12);
  EXPECT_FALSE(is_sharp(q));
  EXPECT_TRUE(is_sharp(floor(q)));
  EXPECT_EQ(sharp_rank(ceiling(q)), 2);
  EXPECT_TRUE(is_atomic(floor(q)));
}

TEST(Effects, FloorAndCeilingMatchDenseProjectors) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    // Unitary conjugate of a diagonal with a 1, a 0 and an interior value.
    Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(
                             Eigen::MatrixXcd::NullaryExpr(3, 3, [&] { return oracle::cd(rng.normal(), rng.normal()); }))
                             .householderQ();
    Eigen::Vector3cd d(1.0, rng.uniform(0.1, 0.9), 0.0);
    const Eigen::MatrixXcd m = u * d.asDiagonal() * u.adjoint();
    const Element q = oracle::from_matrix(kC3, m);
    const Eigen::MatrixXcd top = oracle::spectral_projector(m, [](double x) { return x > 0.5 && x > 1 - 1e-6; });
    const Eigen::MatrixXcd supp = oracle::spectral_projector(m, [](double x) { return x > 1e-6; });
    EXPECT_LT(oracle::max_abs(factor_matrix(floor(q), 0) - top), 1e-9);
    EXPECT_LT(oracle::max_abs(factor_matrix(ceiling(q), 0) - supp), 1e-9);
  }
}

TEST(Effects, ComplementAndOrder) {
  Rng rng(5);
  const Element q = random_effect(kC3, rng);
  EXPECT_TRUE(is_effect(complement(q)));
  EXPECT_LT(distance(complement(complement(q)), q), 1e-15);
  EXPECT_TRUE(leq(floor(q), q));
  EXPECT_TRUE(leq(q, ceiling(q)));
  EXPECT_FALSE(leq(Element::unit(kC3), q) && !is_sharp(q));
}

TEST(Effects, PartialSum) {
  const Element a = oracle::diagonal(kC3, {0.5, 0.2, 0.0});
  const Element b = oracle::diagonal(kC3, {0.5, 0.9, 0.0});
  const EffectSum ok = effect_add(a, complement(a));
  ASSERT_TRUE(std::holds_alternative<Element>(ok));
  EXPECT_LT(distance(std::get<Element>(ok), Element::unit(kC3)), 1e-12);
  const EffectSum bad = effect_add(a, b);
  ASSERT_TRUE(std::holds_alternative<NotSummable>(bad));
  EXPECT_NEAR(std::get<NotSummable>(bad).max_eigenvalue, 1.1, 1e-12);
}

TEST(Effects, SharpPreconditionsAreEnforced) {
  const Element q = oracle::diagonal(kC3, {0.5, 0.0, 0.0});
  EXPECT_THROW(require_sharp(q, {}, "q"), ValidationError);
  EXPECT_THROW(require_effect(2.0 * q + 2.0 * q, {}, "q"), ValidationError);
  EXPECT_THROW(pure_state_of_atom(q), ValidationError);
}

TEST(Effects, TransitionProbabilityIsTheBornRule) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::VectorXcd a = random_vector(3, rng), b = random_vector(3, rng);
    const Element p = oracle::from_matrix(kC3, oracle::projector(a));
    const Element q = oracle::from_matrix(kC3, oracle::projector(b));
    EXPECT_NEAR(transition_probability(p, q), oracle::born(a, b), 1e-10);
    EXPECT_NEAR(transition_probability(p, q), transition_probability(q, p), 1e-12);
  }
}

TEST(Effects, SpinTransitionProbability) {
  // Atoms (u, 1)/2 and (w, 1)/2 have transition probability (1 + <u, w>) / 2.
  const AlgebraSpec spin({FactorKind::spin(3)});
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Vector3d u(rng.normal(), rng.normal(), rng.normal()), w(rng.normal(), rng.normal(), rng.normal());
    u.normalize();
    w.normalize();
    const Element p(spin, spin_to_coords({u / 2, 0.5}));
    const Element q(spin, spin_to_coords({w / 2, 0.5}));
    ASSERT_TRUE(is_atomic(p));
    EXPECT_NEAR(transition_probability(p, q), (1 + u.dot(w)) / 2, 1e-12);
  }
}

TEST(Effects, StateDecompositionIsSpectral) {
  const Element w = oracle::diagonal(kC3, {0.6, 0.3, 0.1});
  const State omega = make_state(w);
  EXPECT_TRUE(omega.is_unital());
  EXPECT_FALSE(is_pure_state(omega));
  const std::vector<WeightedState> parts = state_decompose(omega);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_NEAR(parts[0].weight, 0.6, 1e-12);
  EXPECT_NEAR(parts[2].weight, 0.1, 1e-12);
  for (const WeightedState& s : parts) EXPECT_TRUE(is_pure_state(s.state));
  EXPECT_NEAR(evaluate(oracle::diagonal(kC3, {1, 0, 1}), omega), 0.7, 1e-12);
  EXPECT_THROW(make_state(2.0 * w), ValidationError);
}

TEST(Effects, SharpLatticeMatchesSubspaceOperations) {
  Rng rng(11);
  const AlgebraSpec c4({FactorKind::complex(4)});
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXcd x = random_vector(4, rng), y = random_vector(4, rng), z = random_vector(4, rng);
    Eigen::MatrixXcd px(4, 2), py(4, 2);
    px << x, z;
    py << y, z;
    // Projectors onto span{x, z} and span{y, z}; they meet in span{z}.
    const Eigen::MatrixXcd P = px * (px.adjoint() * px).inverse() * px.adjoint();
    const Eigen::MatrixXcd Q = py * (py.adjoint() * py).inverse() * py.adjoint();
    const Element p = oracle::from_matrix(c4, P), q = oracle::from_matrix(c4, Q);
    const Eigen::MatrixXcd join = oracle::spectral_projector(P + Q, [](double v) { return v > 1e-6; });
    const Eigen::MatrixXcd meet = oracle::spectral_projector(P + Q, [](double v) { return v > 2 - 1e-6; });
    EXPECT_LT(oracle::max_abs(factor_matrix(sharp_join(p, q), 0) - join), 1e-8);
    EXPECT_LT(oracle::max_abs(factor_matrix(sharp_meet(p, q), 0) - meet), 1e-8);
    EXPECT_LT(oracle::max_abs(factor_matrix(sharp_meet(p, q), 0) - oracle::projector(z)), 1e-8);
  }
}

TEST(Effects, AtomicRefinementAndOrthogonality) {
  Rng rng(13);
  const AlgebraSpec spec({FactorKind::quaternion(3), FactorKind::spin(4)});
  for (int trial = 0; trial < 20; ++trial) {
    const Element p = random_sharp(spec, rng);
    const std::vector<Element> atoms = atomic_refinement(p);
    ASSERT_EQ(static_cast<int>(atoms.size()), sharp_rank(p));
    Element sum = Element::zero(spec);
    for (size_t i = 0; i < atoms.size(); ++i) {
      EXPECT_TRUE(is_atomic(atoms[i]));
      sum += atoms[i];
      for (size_t j = 0; j < i; ++j) EXPECT_TRUE(orthogonal(atoms[i], atoms[j]));
    }
    EXPECT_LT(distance(sum, p), 1e-9);
    EXPECT_TRUE(orthogonal(p, complement(p)));
  }
}

#include <gtest/gtest.h>

#include "ejakit/errors.hpp"
#include "ejakit/filters.hpp"
#include "ejakit/pet_suite.hpp"
#include "oracles.hpp"

using namespace ejakit;

namespace {

const AlgebraSpec kC3({FactorKind::complex(3)});

Eigen::MatrixXcd random_unitary(int n, Rng& rng) {
  const Eigen::MatrixXcd g =
      Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return oracle::cd(rng.normal(), rng.normal()); });
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
}

Eigen::MatrixXcd random_hermitian(int n, Rng& rng) {
  const Eigen::MatrixXcd g =
      Eigen::MatrixXcd::NullaryExpr(n, n, [&] { return oracle::cd(rng.normal(), rng.normal()); });
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST(Maps, CompositionFollowsTheHeisenbergConvention) {
  Rng rng(1);
  const AlgebraSpec b({FactorKind::real(2)}), c({FactorKind::spin(3)});
  const PsuMap f = random_psu(kC3, b, rng);
  const PsuMap g = random_psu(b, c, rng);
  const Element x = random_effect(c, rng);
  EXPECT_LT(distance(apply(compose(g, f), x), apply(f, apply(g, x))), 1e-12);
  const State w = random_unital_state(kC3, rng);
  EXPECT_LT(distance(apply_state(compose(g, f), w).density, apply_state(g, apply_state(f, w)).density), 1e-12);
  // <w, f#(x)> = <f_*(w), x>.
  EXPECT_NEAR(evaluate(apply(compose(g, f), x), w), evaluate(x, apply_state(compose(g, f), w)), 1e-12);
  EXPECT_THROW(compose(f, g), StructuralError);
  EXPECT_THROW(PsuMap(kC3, b, Eigen::MatrixXd::Zero(2, 2)), StructuralError);
}

TEST(Maps, RandomMapsArePositiveAndSubunital) {
  Rng rng(3);
  const AlgebraSpec b({FactorKind::quaternion(2), FactorKind::real(1)});
  for (int trial = 0; trial < 10; ++trial) {
    const PsuMap f = random_psu(kC3, b, rng);
    EXPECT_TRUE(is_subunital(f));
    EXPECT_TRUE(positivity_check(f, 50, 7).passed());
  }
  const PsuMap negated(kC3, kC3, -Eigen::MatrixXd::Identity(9, 9));
  EXPECT_FALSE(positivity_check(negated, 20, 7).passed());
}

TEST(Maps, AdjointIsTheTranspose) {
  Rng rng(5);
  const PsuMap f = random_psu(kC3, kC3, rng);
  const Element x = random_element(kC3, rng), y = random_element(kC3, rng);
  EXPECT_NEAR(inner_product(apply(f, x), y), inner_product(x, apply(adjoint(f), y)), 1e-12);
  EXPECT_FALSE(adjoint(f).validated());
}

TEST(Maps, ImageOfAStateIsItsSupport) {
  Rng rng(7);
  const Eigen::MatrixXcd u = random_unitary(3, rng);
  const Eigen::Vector3cd d(0.7, 0.3, 0.0);
  const Eigen::MatrixXcd w = u * d.asDiagonal() * u.adjoint();
  const PsuMap f = state_as_map(oracle::from_matrix(kC3, w));
  const Eigen::MatrixXcd support = oracle::spectral_projector(w, [](double x) { return x > 1e-6; });
  EXPECT_LT(oracle::max_abs(factor_matrix(image(f), 0) - support), 1e-9);
  EXPECT_FALSE(is_faithful(f));
  EXPECT_TRUE(is_faithful(PsuMap::identity(kC3)));
}

TEST(Filters, AssertIsConjugationByTheProjection) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd u = random_unitary(3, rng);
    const Eigen::Vector3cd d(1.0, 1.0, 0.0);
    const Eigen::MatrixXcd P = u * d.asDiagonal() * u.adjoint();
    const Eigen::MatrixXcd X = random_hermitian(3, rng);
    const Element out = apply(assert_map(oracle::from_matrix(kC3, P)), oracle::from_matrix(kC3, X));
    EXPECT_LT(oracle::max_abs(factor_matrix(out, 0) - P * X * P), 1e-10);
  }
}

TEST(Filters, FilterAndCompressionAgainstMatrices) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd u = random_unitary(3, rng);
    const Eigen::Vector3cd d(1.0, 0.25, 0.0), root(1.0, 0.5, 0.0), top(1.0, 0.0, 0.0), supp(1.0, 1.0, 0.0);
    const Eigen::MatrixXcd S = u * root.asDiagonal() * u.adjoint();
    const Eigen::MatrixXcd F = u * top.asDiagonal() * u.adjoint();
    const Element q = oracle::from_matrix(kC3, u * d.asDiagonal() * u.adjoint());
    const Eigen::MatrixXcd X = random_hermitian(3, rng);
    const Element x = oracle::from_matrix(kC3, X);

    const PsuMap xi = filter_for(q);
    EXPECT_EQ(xi.target().dim(), 4);  // corner of the rank-2 support is M_2(C)
    EXPECT_LT(distance(apply(xi, Element::unit(xi.target())), q), 1e-10);
    // Restricting to the support corner and filtering back gives sqrt(q) X sqrt(q).
    const Corner c = corner_spec(ceiling(q));
    EXPECT_LT(oracle::max_abs(factor_matrix(c.projection, 0) - u * supp.asDiagonal() * u.adjoint()), 1e-10);
    const Element filtered(kC3, xi.matrix() * c.embedding.transpose() * x.coords());
    EXPECT_LT(oracle::max_abs(factor_matrix(filtered, 0) - S * X * S), 1e-10);

    const PsuMap pi = compression_for(q);
    EXPECT_EQ(pi.source().dim(), 1);  // corner of floor(q), an atom
    EXPECT_TRUE(is_unital(pi));
    const Eigen::MatrixXd m = pi.matrix();
    EXPECT_LT((m * m.transpose() - Eigen::MatrixXd::Identity(1, 1)).norm(), 1e-12);
    const Element back(kC3, m.transpose() * m * x.coords());
    EXPECT_LT(oracle::max_abs(factor_matrix(back, 0) - F * X * F), 1e-10);
  }
}

TEST(Filters, FiltersAndAssertsArePure) {
  Rng rng(13);
  const AlgebraSpec spec({FactorKind::quaternion(2), FactorKind::spin(3)});
  for (int trial = 0; trial < 10; ++trial) {
    const Element q = gapped_effect(spec, rng);
    const PureMap f = as_pure(filter_for(q));
    EXPECT_TRUE(is_pure_consistent(f));
    EXPECT_LT(distance(f.witness.filter_effect, q), 1e-9);
    const PureMap g = dagger(f);
    EXPECT_LT(map_distance(dagger(g).map, f.map), 1e-9);
  }
  // An average of two different conjugations is not pure.
  const Element p = random_atom(kC3, rng), r = random_atom(kC3, rng);
  const PsuMap mix(kC3, kC3, 0.5 * (assert_map(p).matrix() + quadratic_rep_matrix(p + r) / 4.0));
  EXPECT_THROW(as_pure(mix), ValidationError);
}

TEST(Filters, CorruptedCompressionFailsTheIsometryCheck) {
  const AlgebraSpec spec({FactorKind::complex(3)});
  const CheckReport good = check_sharp_isometry(spec, 1, 50, {}, [](const Element& p) { return compression_for(p); });
  EXPECT_TRUE(good.passed());
  const CheckReport bad = check_sharp_isometry(spec, 1, 50, {}, [](const Element& p) {
    const PsuMap pi = compression_for(p);
    return PsuMap(pi.source(), pi.target(), 1.01 * pi.matrix());
  });
  EXPECT_FALSE(bad.passed());
  EXPECT_GT(bad.worst_residual, 1e-3);
}

TEST(Filters, CornerOfSpinAtomIsTrivial) {
  Rng rng(17);
  const AlgebraSpec spin({FactorKind::spin(4)});
  const Element p = random_atom(spin, rng);
  const Corner c = corner_spec(p);
  EXPECT_EQ(c.spec, AlgebraSpec::trivial());
  EXPECT_EQ(corner_spec(Element::unit(spin)).spec, spin);
  EXPECT_TRUE(corner_spec(Element::zero(spin)).spec.is_null());
}

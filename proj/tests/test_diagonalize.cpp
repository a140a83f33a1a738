#include <gtest/gtest.h>

#include "ejakit/diagonalize.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/pet_suite.hpp"
#include "oracles.hpp"

using namespace ejakit;

namespace {

const AlgebraSpec kR3({FactorKind::real(3)});

// Distinct eigenvalues above `floor_value`, merged at `gap`, from the dense solver.
std::vector<double> distinct_values(std::vector<double> all, double floor_value, double gap = 1e-6) {
  std::vector<double> out;
  for (double x : all) {
    if (x < floor_value) continue;
    if (out.empty() || out.back() - x > gap) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Diagonalize, PeelsTheDocumentedExample) {
  const Element v = oracle::diagonal(kR3, {0.9, 0.9, 0.3});
  const SpectralDecomposition d = peel_diagonalize(v);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.values[0], 0.9, 1e-12);
  EXPECT_NEAR(d.values[1], 0.3, 1e-12);
  EXPECT_LT(distance(d.projections[0], oracle::diagonal(kR3, {1, 1, 0})), 1e-12);
  EXPECT_EQ(d.atoms[0].size(), 2u);
  EXPECT_LT(distance(d.reconstruct(kR3), v), 1e-12);
}

TEST(Diagonalize, PeelMatchesDenseSolverOnRandomEffects) {
  Rng rng(21);
  const std::vector<AlgebraSpec> systems = {AlgebraSpec({FactorKind::complex(4)}),
                                            AlgebraSpec({FactorKind::quaternion(3)}),
                                            AlgebraSpec({FactorKind::real(2), FactorKind::spin(5)})};
  for (const AlgebraSpec& spec : systems) {
    for (int trial = 0; trial < 30; ++trial) {
      const PlantedElement planted = planted_effect(spec, rng);
      const Element& v = planted.element;
      std::vector<double> all;
      for (int i = 0; i < spec.num_factors(); ++i) {
        const FactorKind& kind = spec.factor(i);
        std::vector<double> part;
        if (kind.type == FactorType::quaternion) {
          part = oracle::quaternion_eigenvalues(factor_matrix(v, i));
        } else if (kind.is_matrix()) {
          part = oracle::eigenvalues(factor_matrix(v, i));
        } else {
          const SpinBlock s = spin_block(v, i);
          part = oracle::spin_eigenvalues(s.v, s.t);
        }
        all.insert(all.end(), part.begin(), part.end());
      }
      std::sort(all.rbegin(), all.rend());
      const std::vector<double> expected = distinct_values(all, 1e-8);
      const PeelResult peel = peel_diagonalize_traced(v);
      const SpectralDecomposition& d = peel.decomposition;
      ASSERT_EQ(d.size(), expected.size());
      for (size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d.values[i], expected[i], 1e-8);
      for (const PeelStep& s : peel.steps) EXPECT_LT(std::abs(s.orthogonality_defect), 1e-8);
      EXPECT_LT(distance(d.reconstruct(spec), v), 1e-7);
      EXPECT_TRUE(check_uniqueness(v, 1).passed());
    }
  }
}

TEST(Diagonalize, PeelRejectsNonEffects) {
  EXPECT_THROW(peel_diagonalize(oracle::diagonal(kR3, {1.5, 0, 0})), ValidationError);
  EXPECT_THROW(peel_diagonalize(oracle::diagonal(kR3, {0.5, -0.1, 0})), ValidationError);
  EXPECT_TRUE(peel_diagonalize(Element::zero(kR3)).empty());
}

TEST(Diagonalize, SignedElementsUseTheShiftedPeel) {
  const Element a = oracle::diagonal(kR3, {2.5, -0.75, 0.0});
  const SignedDecomposition s = diagonalize_general(a);
  ASSERT_EQ(s.decomposition.size(), 2u);
  EXPECT_NEAR(s.decomposition.values[0], 2.5, 1e-9);
  EXPECT_NEAR(s.decomposition.values[1], -0.75, 1e-9);
  EXPECT_LT(distance(s.positive, oracle::diagonal(kR3, {2.5, 0, 0})), 1e-9);
  EXPECT_LT(distance(s.negative, oracle::diagonal(kR3, {0, 0.75, 0})), 1e-9);
  EXPECT_NEAR(inner_product(s.positive, s.negative), 0.0, 1e-12);
}

TEST(Diagonalize, MostNegativeEigenvalueComesFromTheRemainder) {
  // With n = ceil(||a||) = 2 the shifted peel never reaches the -2 eigenspace;
  // that part must come back with eigenvalue -n.
  const Element a = oracle::diagonal(kR3, {1.0, -2.0, -2.0});
  const SignedDecomposition s = diagonalize_general(a);
  ASSERT_EQ(s.decomposition.size(), 2u);
  EXPECT_NEAR(s.decomposition.values[1], -2.0, 1e-12);
  EXPECT_LT(distance(s.decomposition.projections[1], oracle::diagonal(kR3, {0, 1, 1})), 1e-12);
  EXPECT_LT(distance(s.decomposition.reconstruct(kR3), a), 1e-12);
}

TEST(Diagonalize, SignedReconstructionOnRandomElements) {
  Rng rng(23);
  const AlgebraSpec spec({FactorKind::complex(3), FactorKind::spin(3)});
  for (int trial = 0; trial < 30; ++trial) {
    const PlantedElement planted = planted_element(spec, rng);
    const SignedDecomposition s = diagonalize_general(planted.element);
    EXPECT_LT(distance(s.decomposition.reconstruct(spec), planted.element), 1e-7);
    EXPECT_LT(distance(s.positive - s.negative, planted.element), 1e-7);
    EXPECT_TRUE(is_positive(s.positive));
    EXPECT_TRUE(is_positive(s.negative));
  }
}

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "ejakit/composite.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/random.hpp"
#include "oracles.hpp"

using namespace ejakit;

namespace {

const ScanRow* find_row(const ScanResult& scan, CatalogKind kind, long long rank, long long dim) {
  for (const ScanRow& r : scan.rows)
    if (r.entry.kind == kind && r.entry.rank == rank && r.entry.dim == dim) return &r;
  return nullptr;
}

}  // namespace

TEST(Composite, RealCompositeIsStrictlyLargerThanTheProduct) {
  const AlgebraSpec r2({FactorKind::real(2)}), r3({FactorKind::real(3)});
  const TensorComposite c = tensor_matrix(r2, r3);
  EXPECT_EQ(c.spec, AlgebraSpec({FactorKind::real(6)}));
  EXPECT_EQ(r2.dim() * r3.dim(), 18);
  EXPECT_EQ(c.spec.dim(), oracle::simple_dim(FactorType::real, 6));
  EXPECT_LT(r2.dim() * r3.dim(), c.spec.dim());
  EXPECT_EQ(c.spec.rank(), r2.rank() * r3.rank());
}

TEST(Composite, ComplexDimensionsMultiply) {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) {
      const AlgebraSpec a({FactorKind::complex(n)}), b({FactorKind::complex(m)});
      const TensorComposite c = tensor_matrix(a, b);
      EXPECT_EQ(c.spec.dim(), a.dim() * b.dim());
      EXPECT_EQ(c.spec.rank(), a.rank() * b.rank());
    }
}

TEST(Composite, DirectSumsComposeFactorwise) {
  const AlgebraSpec a({FactorKind::complex(2), FactorKind::complex(1)}), b({FactorKind::complex(2)});
  const TensorComposite c = tensor_matrix(a, b);
  EXPECT_EQ(c.spec, AlgebraSpec({FactorKind::complex(4), FactorKind::complex(2)}));
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[1], std::make_pair(1, 0));
  // Size-1 factors are kind neutral.
  EXPECT_NO_THROW(tensor_matrix(AlgebraSpec({FactorKind::real(1)}), AlgebraSpec({FactorKind::complex(3)})));
}

TEST(Composite, UnsupportedPairingsAreRejected) {
  EXPECT_THROW(tensor_matrix(AlgebraSpec({FactorKind::real(2)}), AlgebraSpec({FactorKind::complex(2)})),
               MixedKindError);
  EXPECT_THROW(tensor_matrix(AlgebraSpec({FactorKind::quaternion(2)}), AlgebraSpec({FactorKind::real(2)})),
               StructuralError);
  EXPECT_THROW(tensor_matrix(AlgebraSpec({FactorKind::spin(3)}), AlgebraSpec({FactorKind::complex(2)})),
               StructuralError);
}

TEST(Composite, TensorOfElementsIsTheKroneckerProduct) {
  Rng rng(31);
  const AlgebraSpec a({FactorKind::complex(2)}), b({FactorKind::complex(3)});
  const TensorComposite c = tensor_matrix(a, b);
  for (int trial = 0; trial < 10; ++trial) {
    const Element x = random_element(a, rng), y = random_element(b, rng);
    const Eigen::MatrixXcd expected = Eigen::kroneckerProduct(factor_matrix(x, 0), factor_matrix(y, 0)).eval();
    EXPECT_LT(oracle::max_abs(factor_matrix(tensor_elements(c, x, y), 0) - expected), 1e-10);

    const Element p = random_atom(a, rng), q = random_atom(b, rng);
    const Element pq = tensor_elements(c, p, q);
    EXPECT_TRUE(is_atomic(pq));
    EXPECT_NEAR(pq.norm(), 1.0, 1e-9);
    EXPECT_NEAR(inner_product(pq, pq), inner_product(p, p) * inner_product(q, q), 1e-9);
  }
}

TEST(Composite, RandomizedLawsPass) {
  const CheckReport real = check_composite_props(AlgebraSpec({FactorKind::real(2)}),
                                                 AlgebraSpec({FactorKind::real(3)}), 3, 30);
  EXPECT_TRUE(real.passed()) << real.worst_residual;
  const CheckReport cx = check_composite_props(AlgebraSpec({FactorKind::complex(2)}),
                                               AlgebraSpec({FactorKind::complex(2)}), 3, 30);
  EXPECT_TRUE(cx.passed()) << cx.worst_residual;
}

TEST(Composite, ScanExcludesTheExpectedFamilies) {
  const ScanResult scan = scan_closure(8, 4);
  for (long long n = 2; n <= 8; ++n) {
    const ScanRow* q = find_row(scan, CatalogKind::quaternion, n, n * (2 * n - 1));
    ASSERT_NE(q, nullptr);
    EXPECT_EQ(q->excluded_at_power, 2);
    EXPECT_GT(q->required_dim, q->available_dim);
  }
  for (long long n = 1; n <= 8; ++n) {
    EXPECT_EQ(find_row(scan, CatalogKind::real, n, n * (n + 1) / 2)->excluded_at_power, 0);
    EXPECT_EQ(find_row(scan, CatalogKind::complex, n, n * n)->excluded_at_power, 0);
  }
  for (long long d = 3; d <= 10; ++d) {
    const int power = find_row(scan, CatalogKind::spin, 2, d)->excluded_at_power;
    if (d >= 5) {
      EXPECT_GE(power, 2);
      EXPECT_LE(power, 3);
    } else {
      EXPECT_EQ(power, 0);  // Spin(2) = M_2(R), Spin(3) = M_2(C)
    }
  }
  EXPECT_EQ(find_row(scan, CatalogKind::exceptional, 3, 27)->excluded_at_power, 2);
  for (const MixedPairing& p : scan.mixed) {
    EXPECT_TRUE(p.tensor_rejected);
    EXPECT_TRUE(p.excluded);
  }
  EXPECT_THROW(scan_closure(1, 4), ValidationError);
}

TEST(Composite, MixedExclusionNeedsANonTrivialRealFactor) {
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const CheckReport r = check_mixed_exclusion(n, m);
      EXPECT_TRUE(r.passed());
      EXPECT_EQ(r.details.at("excluded").get<bool>(), m >= 2);
    }
}

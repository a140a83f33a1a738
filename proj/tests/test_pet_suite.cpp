#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ejakit/errors.hpp"
#include "ejakit/pet_suite.hpp"
#include "ejakit/serialize.hpp"

using namespace ejakit;

namespace {

std::vector<AlgebraSpec> small_systems() {
  return {AlgebraSpec({FactorKind::real(3)}), AlgebraSpec({FactorKind::complex(2)}),
          AlgebraSpec({FactorKind::quaternion(2)}), AlgebraSpec({FactorKind::spin(4)}),
          AlgebraSpec({FactorKind::complex(2), FactorKind::real(1)})};
}

std::string describe(const CheckReport& r) {
  std::string s = r.check_id + " on " + r.spec.name() + ": " + std::to_string(r.failures) + " failures, worst " +
                  std::to_string(r.worst_residual);
  if (!r.exemplars.empty()) s += "\n" + r.exemplars.front().dump();
  return s;
}

}  // namespace

TEST(PetSuite, CatalogIdsAreUniqueAndGrouped) {
  std::set<std::string> ids;
  int axioms = 0;
  for (const CheckInfo& c : check_catalog()) {
    EXPECT_TRUE(ids.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.statement.empty()) << c.id;
    if (c.group == CheckGroup::axiom) ++axioms;
  }
  EXPECT_EQ(axioms, 6);
}

TEST(PetSuite, EveryCheckPassesOnSmallSystems) {
  for (const AlgebraSpec& spec : small_systems()) {
    const std::vector<CheckReport> axioms = run_axiom_suite(spec, 3, 8);
    const std::vector<CheckReport> props = run_proposition_suite(spec, 3, 8);
    for (const CheckReport& r : axioms) EXPECT_TRUE(r.passed()) << describe(r);
    for (const CheckReport& r : props) EXPECT_TRUE(r.passed()) << describe(r);
    EXPECT_EQ(axioms.size(), 6u);
  }
}

TEST(PetSuite, ScalarAndCompositeChecksPass) {
  EXPECT_TRUE(run_scalar_checks(1, 50).passed());
  for (const CheckReport& r : run_composite_suite(1, 10)) EXPECT_TRUE(r.passed()) << describe(r);
}

TEST(PetSuite, SingleChecksAreSelectable) {
  const AlgebraSpec spec({FactorKind::complex(2)});
  const CheckReport r = run_check("transition_symmetry", spec, 2, 20);
  EXPECT_EQ(r.check_id, "transition_symmetry");
  EXPECT_EQ(r.trials, 20);
  EXPECT_THROW(run_check("no_such_check", spec, 2, 20), ValidationError);
  EXPECT_THROW(run_check("classification_scan", spec, 2, 20), ValidationError);
}

TEST(PetSuite, ReportsAreDeterministic) {
  const AlgebraSpec spec({FactorKind::quaternion(2), FactorKind::spin(3)});
  const std::string a = canonical_dump(report_to_json(run_check("self_duality", spec, 9, 5)));
  const std::string b = canonical_dump(report_to_json(run_check("self_duality", spec, 9, 5)));
  const std::string c = canonical_dump(report_to_json(run_check("self_duality", spec, 10, 5)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(PetSuite, DefaultGridCoversTheRequiredSystems) {
  const std::vector<AlgebraSpec> grid = default_grid();
  EXPECT_EQ(grid.size(), 3u * 4u + 5u + 2u);
  int mixed = 0;
  for (const AlgebraSpec& s : grid) mixed += s.num_factors() > 1;
  EXPECT_EQ(mixed, 2);
}

TEST(PetSuite, TraceabilityTableListsEveryCheck) {
  std::ifstream in(EJAKIT_CHECKS_DOC);
  ASSERT_TRUE(in) << EJAKIT_CHECKS_DOC;
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string doc = buf.str();
  for (const CheckInfo& c : check_catalog()) EXPECT_NE(doc.find("`" + c.id + "`"), std::string::npos) << c.id;
}

TEST(PetSuite, GeneratorsRespectTheirContracts) {
  Rng rng(51);
  const AlgebraSpec spec({FactorKind::complex(3), FactorKind::spin(3)});
  for (int trial = 0; trial < 20; ++trial) {
    const PlantedElement p = planted_effect(spec, rng);
    EXPECT_TRUE(is_effect(p.element));
    for (size_t i = 1; i < p.values.size(); ++i) EXPECT_GT(p.values[i - 1], p.values[i]);
    EXPECT_GT(order_norm(filter_effect(spec, rng)), 0.0);
    EXPECT_TRUE(random_unital_state(spec, rng).is_unital());
    const Element u = random_sharp(spec, rng);
    const Element sub = random_subprojection(u, rng);
    EXPECT_TRUE(is_sharp(sub));
    EXPECT_TRUE(leq(sub, u));
  }
}

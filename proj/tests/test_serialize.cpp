#include <gtest/gtest.h>

#include "ejakit/errors.hpp"
#include "ejakit/pet_suite.hpp"
#include "ejakit/serialize.hpp"

using namespace ejakit;

namespace {

const AlgebraSpec kMixed({FactorKind::real(2), FactorKind::complex(2), FactorKind::quaternion(2), FactorKind::spin(3)});

std::string parse_error_pointer(const std::string& text) {
  try {
    element_from_json(parse_json(text));
  } catch (const ParseError& e) {
    return e.pointer();
  }
  return "<no error>";
}

}  // namespace

TEST(Serialize, SpecRoundTrip) {
  const json j = spec_to_json(kMixed);
  EXPECT_EQ(spec_from_json(j), kMixed);
  EXPECT_EQ(spec_from_json(parse_json(R"({"factors":[{"kind":"spin","k":4}]})")),
            AlgebraSpec({FactorKind::spin(4)}));
}

TEST(Serialize, ElementRoundTripIsExact) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Element a = random_element(kMixed, rng);
    const Element b = element_from_json(parse_json(canonical_dump(element_to_json(a, "effect"))));
    EXPECT_LT(distance(a, b), 1e-14);
  }
}

TEST(Serialize, MapAndPureMapRoundTrip) {
  Rng rng(43);
  const AlgebraSpec a({FactorKind::complex(2)}), b({FactorKind::spin(3)});
  const PsuMap f = random_psu(a, b, rng);
  const PsuMap g = map_from_json(parse_json(canonical_dump(map_to_json(f))));
  EXPECT_EQ(g.source(), a);
  EXPECT_EQ(g.target(), b);
  EXPECT_EQ(map_distance(f, g), 0.0);

  const Element q = gapped_effect(a, rng);
  const PsuMap xi = filter_for(q);
  const PureMap pure = make_pure(q, Element::unit(xi.target()));
  const PureMap back = pure_map_from_json(parse_json(canonical_dump(pure_map_to_json(pure))));
  EXPECT_LT(map_distance(back.map, pure.map), 1e-14);
  EXPECT_TRUE(is_pure_consistent(back));
}

TEST(Serialize, ReportRoundTrip) {
  const CheckReport r = run_check("sharp_negation", AlgebraSpec({FactorKind::real(2)}), 5, 10);
  const CheckReport back = report_from_json(parse_json(canonical_dump(report_to_json(r))));
  EXPECT_EQ(back.check_id, r.check_id);
  EXPECT_EQ(back.spec, r.spec);
  EXPECT_EQ(back.trials, r.trials);
  EXPECT_EQ(back.worst_residual, r.worst_residual);
}

TEST(Serialize, CanonicalDumpIsSortedAndStable) {
  const json j = parse_json(R"({"b":0.1,"a":[1,2],"c":{"z":1,"y":2}})");
  const std::string text = canonical_dump(j);
  EXPECT_LT(text.find("\"a\""), text.find("\"b\""));
  EXPECT_LT(text.find("\"y\""), text.find("\"z\""));
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_EQ(canonical_dump(parse_json(text)), text);
  EXPECT_NE(canonical_dump(json(std::numeric_limits<double>::infinity())).find("inf"), std::string::npos);
}

TEST(Serialize, ErrorsCarryJsonPointers) {
  EXPECT_EQ(parse_error_pointer(R"({"spec":{"factors":[{"kind":"real","n":2}]},"blocks":[[1,0,0]]})"), "/blocks/0");
  EXPECT_EQ(parse_error_pointer(R"({"spec":{"factors":[{"kind":"real","n":0}]},"blocks":[]})"),
            "/spec/factors/0/n");
  EXPECT_EQ(parse_error_pointer(R"({"spec":{"factors":[{"kind":"spin","k":3}]},"blocks":[{"v":[1,2],"t":0}]})"),
            "/blocks/0/v");
  EXPECT_EQ(parse_error_pointer(R"({"spec":{"factors":[{"kind":"real","n":1}]},"blocks":[["x"]]})"),
            "/blocks/0/0");
  EXPECT_EQ(parse_error_pointer(R"({"spec":{"factors":[{"kind":"real","n":1}]},"blocks":[[1]],"role":"x"})"),
            "/role");
  EXPECT_THROW(parse_json("{"), ParseError);
}

TEST(Serialize, NonHermitianBlocksAreRejected) {
  EXPECT_THROW(element_from_json(parse_json(R"({"spec":{"factors":[{"kind":"real","n":2}]},"blocks":[[1,1,0,1]]})")),
               ValidationError);
}

TEST(Serialize, ExceptionalFactorIsScanOnly) {
  try {
    spec_from_json(parse_json(R"({"factors":[{"kind":"octonion","n":3}]})"));
    FAIL() << "octonion spec accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pointer(), "/factors/0/kind");
    EXPECT_NE(std::string(e.what()).find("scan"), std::string::npos);
  }
}

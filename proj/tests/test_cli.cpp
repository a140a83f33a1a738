#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "ejakit/serialize.hpp"

using namespace ejakit;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "ejakit");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kC2 = R"({"factors":[{"kind":"complex","n":2}]})";
const std::string kR3 = R"({"factors":[{"kind":"real","n":3}]})";

}  // namespace

TEST(Cli, DiagonalizesTheDocumentedExample) {
  const std::string element = R"({"spec":)" + kR3 + R"(,"blocks":[[0.9,0,0,0,0.9,0,0,0,0.3]],"role":"effect"})";
  const Invocation r = run({"diag", element});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = parse_json(r.out);
  EXPECT_EQ(j.at("method"), "peel");
  ASSERT_EQ(j.at("eigenvalues").size(), 2u);
  EXPECT_NEAR(j.at("eigenvalues")[0].get<double>(), 0.9, 1e-12);
  EXPECT_NEAR(j.at("eigenvalues")[1].get<double>(), 0.3, 1e-12);
}

TEST(Cli, SignedElementsUseTheShiftedPeel) {
  const std::string element = R"({"spec":)" + kR3 + R"(,"blocks":[[2,0,0,0,-1,0,0,0,0]]})";
  const Invocation r = run({"diag", element, "--format", "text"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("rank 1"), std::string::npos);
  EXPECT_NE(r.out.find("-1"), std::string::npos);
}

TEST(Cli, CheckIsDeterministicAndPasses) {
  const Invocation a = run({"check", kC2, "--seed", "4", "--trials", "5"});
  const Invocation b = run({"check", kC2, "--seed", "4", "--trials", "5"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = parse_json(a.out);
  EXPECT_TRUE(j.at("summary").at("passed").get<bool>());
  EXPECT_EQ(j.at("config").at("seed"), 4);
}

TEST(Cli, SingleCheckAndTextFormat) {
  const Invocation r = run({"check", kC2, "--check", "transition_symmetry", "--trials", "10", "--format", "text"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("pass  transition_symmetry"), std::string::npos);
  EXPECT_NE(r.out.find("1 reports, 0 failed"), std::string::npos);
}

TEST(Cli, ReportFileMatchesStdoutPayload) {
  const auto path = std::filesystem::temp_directory_path() / "ejakit_cli_report.json";
  const Invocation with_file = run({"check", kC2, "--trials", "3", "--report", path.string()});
  const Invocation plain = run({"check", kC2, "--trials", "3"});
  ASSERT_EQ(with_file.code, kExitOk);
  EXPECT_TRUE(with_file.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), plain.out);
  std::filesystem::remove(path);
}

TEST(Cli, GenProducesLoadableObjects) {
  for (const char* what : {"effect", "sharp", "atom", "state"}) {
    const Invocation r = run({"gen", what, "--algebra", kC2, "--seed", "3"});
    ASSERT_EQ(r.code, kExitOk) << what << ": " << r.err;
    EXPECT_NO_THROW(element_from_json(parse_json(r.out))) << what;
    EXPECT_EQ(r.out, run({"gen", what, "--algebra", kC2, "--seed", "3"}).out);
  }
  const Invocation m = run({"gen", "map", "--algebra", kC2, "--target", kR3});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  const PsuMap f = map_from_json(parse_json(m.out));
  EXPECT_EQ(f.target().dim(), 6);
}

TEST(Cli, ScanAndTensor) {
  const Invocation s = run({"scan", "--max-rank", "8", "--max-power", "4"});
  ASSERT_EQ(s.code, kExitOk);
  const json j = parse_json(s.out);
  for (const json& row : j.at("entries"))
    if (row.at("kind") == "quaternion") EXPECT_EQ(row.at("excluded_at_power"), 2);

  const Invocation t = run({"tensor", kR3, R"({"factors":[{"kind":"real","n":2}]})", "--trials", "5"});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  EXPECT_EQ(parse_json(t.out).at("spec"), parse_json(R"({"factors":[{"kind":"real","n":6}]})"));
}

TEST(Cli, BadInputExitsWithCodeTwo) {
  EXPECT_EQ(run({"tensor", kR3, kC2}).code, kExitBadInput);
  EXPECT_EQ(run({"check", R"({"factors":[{"kind":"octonion","n":3}]})"}).code, kExitBadInput);
  EXPECT_EQ(run({"check", "/nonexistent/spec.json"}).code, kExitBadInput);
  EXPECT_EQ(run({"check", kC2, "--seed", "0"}).code, kExitBadInput);
  EXPECT_EQ(run({"check", kC2, "--check", "nope"}).code, kExitBadInput);
  EXPECT_EQ(run({"check"}).code, kExitBadInput);
  EXPECT_EQ(run({"frobnicate"}).code, kExitBadInput);
  EXPECT_EQ(run({"diag", R"({"spec":)" + kR3 + R"(,"blocks":[[1,0,0]]})"}).code, kExitBadInput);
  EXPECT_EQ(run({"check", kC2, "--tol-op", "-1"}).code, kExitBadInput);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

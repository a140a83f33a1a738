#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "ejakit/composite.hpp"
#include "ejakit/diagonalize.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/pet_suite.hpp"
#include "ejakit/serialize.hpp"

namespace ejakit {

namespace {

struct Options {
  std::uint64_t seed = 1;
  int trials = 200;
  std::string format = "json";
  std::string output;
  std::string report;
  std::optional<double> tol_eig, tol_pos, tol_op, tol_sharp;

  // gen
  std::string what;
  std::string algebra;
  std::string target;
  // check
  std::string spec;
  bool grid = false;
  std::string check_id;
  // diag
  std::string element;
  // scan
  int max_rank = 8;
  int max_power = 4;
  int max_spin_dim = 10;
  // tensor
  std::string left, right;
};

std::string read_source(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream in(arg);
  if (!in) throw ParseError("", "cannot read '" + arg + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_json(const std::string& arg) { return parse_json(read_source(arg)); }

ToleranceConfig tolerances(const Options& o) {
  ToleranceConfig tol = ToleranceConfig::from_environment();
  if (o.tol_eig) tol.eig = *o.tol_eig;
  if (o.tol_pos) tol.pos = *o.tol_pos;
  if (o.tol_op) tol.op = *o.tol_op;
  if (o.tol_sharp) tol.sharp = *o.tol_sharp;
  tol.validate();
  return tol;
}

json tolerances_to_json(const ToleranceConfig& tol) {
  return {{"eig", tol.eig}, {"op", tol.op}, {"pos", tol.pos}, {"sharp", tol.sharp}};
}

void write_payload(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParseError("", "cannot write '" + path + "'");
  file << text;
}

int run_gen(const Options& o, std::ostream& out) {
  const AlgebraSpec spec = spec_from_json(load_json(o.algebra));
  Rng rng = Rng::derived(o.seed, 0, stable_hash("gen:" + o.what));
  json payload;
  if (o.what == "effect") {
    payload = element_to_json(random_effect(spec, rng), "effect");
  } else if (o.what == "sharp") {
    payload = element_to_json(random_sharp(spec, rng), "effect");
  } else if (o.what == "atom") {
    payload = element_to_json(random_atom(spec, rng), "effect");
  } else if (o.what == "state") {
    payload = element_to_json(random_unital_state(spec, rng).density, "state");
  } else {
    const AlgebraSpec target = o.target.empty() ? spec : spec_from_json(load_json(o.target));
    payload = map_to_json(random_psu(spec, target, rng));
  }
  write_payload(o.output, canonical_dump(payload), out);
  return kExitOk;
}

std::string reports_to_text(const std::vector<CheckReport>& reports) {
  std::ostringstream s;
  int failed = 0;
  for (const CheckReport& r : reports) {
    char worst[32];
    std::snprintf(worst, sizeof worst, "%.3g", r.worst_residual);
    s << r.verdict() << "  " << r.check_id << "  " << r.spec.name() << "  trials=" << r.trials
      << " failures=" << r.failures << " worst=" << worst << "\n";
    if (!r.passed()) ++failed;
  }
  s << reports.size() << " reports, " << failed << " failed\n";
  return s.str();
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  const ToleranceConfig tol = tolerances(o);
  std::vector<CheckReport> reports;
  if (o.grid) {
    reports = run_grid(o.seed, o.trials, tol);
  } else if (o.spec.empty()) {
    throw ValidationError("check needs an algebra spec or --grid");
  } else {
    const AlgebraSpec spec = spec_from_json(load_json(o.spec));
    if (!o.check_id.empty()) {
      reports.push_back(ejakit::run_check(o.check_id, spec, o.seed, o.trials, tol));
    } else {
      reports = run_axiom_suite(spec, o.seed, o.trials, tol);
      for (CheckReport& r : run_proposition_suite(spec, o.seed, o.trials, tol)) reports.push_back(std::move(r));
    }
  }

  int failed = 0;
  json list = json::array();
  for (const CheckReport& r : reports) {
    list.push_back(report_to_json(r));
    if (!r.passed()) ++failed;
  }
  const json payload = {
      {"command", "check"},
      {"config",
       {{"grid", o.grid}, {"seed", o.seed}, {"trials", o.trials}, {"tolerances", tolerances_to_json(tol)}}},
      {"reports", list},
      {"summary", {{"failed", failed}, {"passed", failed == 0}, {"reports", reports.size()}}},
  };
  const std::string json_text = canonical_dump(payload);
  if (!o.report.empty()) write_payload(o.report, json_text, out);
  if (o.format == "text") {
    out << reports_to_text(reports);
  } else if (o.report.empty()) {
    out << json_text;
  }
  if (failed > 0) err << failed << " of " << reports.size() << " checks failed\n";
  return failed == 0 ? kExitOk : kExitChecksFailed;
}

int run_diag(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = tolerances(o);
  const Element v = element_from_json(load_json(o.element), tol);
  json payload;
  SpectralDecomposition d;
  if (is_effect(v, tol)) {
    d = peel_diagonalize(v, tol);
    payload = decomposition_to_json(d);
    payload["method"] = "peel";
  } else {
    const SignedDecomposition s = diagonalize_general(v, tol);
    d = s.decomposition;
    payload = decomposition_to_json(d);
    payload["method"] = "shifted_peel";
    payload["positive"] = element_to_json(s.positive);
    payload["negative"] = element_to_json(s.negative);
  }
  if (o.format == "text") {
    for (size_t i = 0; i < d.size(); ++i) {
      char line[64];
      std::snprintf(line, sizeof line, "%.17g  rank %zu\n", d.values[i], d.atoms[i].size());
      out << line;
    }
  } else {
    out << canonical_dump(payload);
  }
  return kExitOk;
}

int run_scan(const Options& o, std::ostream& out) {
  const ScanResult scan = scan_closure(o.max_rank, o.max_power, o.max_spin_dim);
  out << (o.format == "text" ? scan_to_text(scan) : canonical_dump(scan_to_json(scan)));
  return kExitOk;
}

int run_tensor(const Options& o, std::ostream& out) {
  const ToleranceConfig tol = tolerances(o);
  const AlgebraSpec left = spec_from_json(load_json(o.left));
  const AlgebraSpec right = spec_from_json(load_json(o.right));
  const TensorComposite c = tensor_matrix(left, right);
  const CheckReport r = check_composite_props(left, right, o.seed, o.trials, tol);
  const json payload = {{"spec", spec_to_json(c.spec)}, {"report", report_to_json(r)}};
  write_payload(o.output, canonical_dump(payload), out);
  return r.passed() ? kExitOk : kExitChecksFailed;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol-eig", o.tol_eig, "eigenvalue clustering threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-pos", o.tol_pos, "positivity slack")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-op", o.tol_op, "operator identity threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-sharp", o.tol_sharp, "sharpness threshold")->check(CLI::PositiveNumber);
}

void add_seed_trials(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "master seed")->check(CLI::PositiveNumber);
  cmd->add_option("--trials", o.trials, "trials per check")->check(CLI::PositiveNumber);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pure effect theory checks on Euclidean Jordan algebras", "ejakit"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "write a random effect, sharp effect, atom, state or map");
  gen->add_option("what", o.what, "effect|sharp|atom|state|map")
      ->required()
      ->check(CLI::IsMember({"effect", "sharp", "atom", "state", "map"}));
  gen->add_option("--algebra", o.algebra, "algebra spec (source for maps)")->required();
  gen->add_option("--target", o.target, "target spec for maps (default: the source)");
  gen->add_option("--seed", o.seed, "seed")->check(CLI::PositiveNumber);
  gen->add_option("--output", o.output, "output path (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "run the axiom and proposition suites");
  check->add_option("spec", o.spec, "algebra spec");
  check->add_flag("--grid", o.grid, "run over the default grid, plus scalar and composite checks");
  check->add_option("--check", o.check_id, "run a single check id");
  add_seed_trials(check, o);
  check->add_option("--report", o.report, "write the JSON report here");
  check->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "text"}));
  add_common(check, o);

  CLI::App* diag = app.add_subcommand("diag", "diagonalize an element");
  diag->add_option("element", o.element, "element JSON")->required();
  diag->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  add_common(diag, o);

  CLI::App* scan = app.add_subcommand("scan", "dimension-counting scan over simple algebras");
  scan->add_option("--max-rank", o.max_rank, "largest rank in the catalog");
  scan->add_option("--max-power", o.max_power, "largest tensor power");
  scan->add_option("--max-spin-dim", o.max_spin_dim, "largest spin factor dimension");
  scan->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));

  CLI::App* tensor = app.add_subcommand("tensor", "build a composite and check its laws");
  tensor->add_option("left", o.left, "left spec")->required();
  tensor->add_option("right", o.right, "right spec")->required();
  add_seed_trials(tensor, o);
  tensor->add_option("--output", o.output, "output path (default: stdout)");
  add_common(tensor, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*gen) return run_gen(o, out);
    if (*check) return run_check(o, out, err);
    if (*diag) return run_diag(o, out);
    if (*scan) return run_scan(o, out);
    return run_tensor(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ejakit

#include "ejakit/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "ejakit/errors.hpp"

namespace ejakit {

namespace {

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, size_t index) { return pointer + "/" + std::to_string(index); }

const json& member(const json& j, const char* key, const std::string& pointer) {
  if (!j.is_object()) throw ParseError(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(pointer, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& pointer) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
  }
  throw ParseError(pointer, "expected a number");
}

int positive_int(const json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 4096) {
    throw ParseError(pointer, "expected a positive integer");
  }
  return j.get<int>();
}

const json& array(const json& j, const std::string& pointer) {
  if (!j.is_array()) throw ParseError(pointer, "expected an array");
  return j;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_block_json(const FactorKind& kind, const Eigen::MatrixXcd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out.push_back(m(i, j).real());
      if (kind.type != FactorType::real) out.push_back(m(i, j).imag());
    }
  return out;
}

void dump(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        dump(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (scalars) {
        out += "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump(j[i], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isnan(v)) {
        out += "\"nan\"";
      } else if (std::isinf(v)) {
        out += v > 0 ? "\"inf\"" : "\"-inf\"";
      } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
        out += buf;
      }
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json spec_to_json(const AlgebraSpec& spec) {
  json factors = json::array();
  for (const auto& f : spec.factors()) {
    switch (f.type) {
      case FactorType::real:
        factors.push_back({{"kind", "real"}, {"n", f.size}});
        break;
      case FactorType::complex:
        factors.push_back({{"kind", "complex"}, {"n", f.size}});
        break;
      case FactorType::quaternion:
        factors.push_back({{"kind", "quaternion"}, {"n", f.size}});
        break;
      case FactorType::spin:
        factors.push_back({{"kind", "spin"}, {"k", f.size}});
        break;
    }
  }
  return json{{"factors", factors}};
}

AlgebraSpec spec_from_json(const json& j, const std::string& pointer) {
  const std::string fp = child(pointer, "factors");
  const json& factors = array(member(j, "factors", pointer), fp);
  if (factors.empty()) throw ParseError(fp, "an algebra needs at least one simple factor");
  std::vector<FactorKind> kinds;
  for (size_t i = 0; i < factors.size(); ++i) {
    const std::string ip = child(fp, i);
    const json& kind = member(factors[i], "kind", ip);
    if (!kind.is_string()) throw ParseError(child(ip, "kind"), "expected a string");
    const auto& name = kind.get_ref<const std::string&>();
    if (name == "real" || name == "complex" || name == "quaternion") {
      const int n = positive_int(member(factors[i], "n", ip), child(ip, "n"));
      kinds.push_back(name == "real"      ? FactorKind::real(n)
                      : name == "complex" ? FactorKind::complex(n)
                                          : FactorKind::quaternion(n));
    } else if (name == "spin") {
      const int k = positive_int(member(factors[i], "k", ip), child(ip, "k"));
      if (k < 2) throw ParseError(child(ip, "k"), "Spin(k) requires k >= 2");
      kinds.push_back(FactorKind::spin(k));
    } else if (name == "octonion" || name == "exceptional") {
      throw ParseError(child(ip, "kind"),
                       "the exceptional (octonionic) factor has no arithmetic here; it is only available in the "
                       "dimension table of the scan command");
    } else {
      throw ParseError(child(ip, "kind"), "unknown factor kind \"" + name + "\"");
    }
  }
  return AlgebraSpec(std::move(kinds));
}

json element_to_json(const Element& a, std::string_view role) {
  json blocks = json::array();
  for (int f = 0; f < a.spec().num_factors(); ++f) {
    const FactorKind& k = a.spec().factor(f);
    if (k.type == FactorType::spin) {
      const SpinBlock s = spin_block(a, f);
      blocks.push_back({{"v", vector_json(s.v)}, {"t", s.t}});
    } else {
      blocks.push_back(matrix_block_json(k, factor_matrix(a, f)));
    }
  }
  json out{{"spec", spec_to_json(a.spec())}, {"blocks", blocks}};
  if (!role.empty()) out["role"] = std::string(role);
  return out;
}

Element element_from_json(const json& j, const ToleranceConfig& tol, const std::string& pointer) {
  const AlgebraSpec spec = spec_from_json(member(j, "spec", pointer), child(pointer, "spec"));
  if (j.contains("role")) {
    const json& role = j["role"];
    if (!role.is_string() || (role != "effect" && role != "state")) {
      throw ParseError(child(pointer, "role"), "role must be \"effect\" or \"state\"");
    }
  }
  const std::string bp = child(pointer, "blocks");
  const json& blocks = array(member(j, "blocks", pointer), bp);
  if (static_cast<int>(blocks.size()) != spec.num_factors()) {
    throw ParseError(bp, "expected " + std::to_string(spec.num_factors()) + " blocks, got " +
                             std::to_string(blocks.size()));
  }
  Eigen::VectorXd coords(spec.dim());
  for (int f = 0; f < spec.num_factors(); ++f) {
    const FactorKind& k = spec.factor(f);
    const std::string ip = child(bp, static_cast<size_t>(f));
    const json& block = blocks[static_cast<size_t>(f)];
    if (k.type == FactorType::spin) {
      const json& v = array(member(block, "v", ip), child(ip, "v"));
      if (static_cast<int>(v.size()) != k.size) {
        throw ParseError(child(ip, "v"), "factor " + std::to_string(f) + " (" + k.name() + ") expects a vector of " +
                                             std::to_string(k.size) + " numbers, got " + std::to_string(v.size()));
      }
      SpinBlock s{Eigen::VectorXd(k.size), number(member(block, "t", ip), child(ip, "t"))};
      for (int i = 0; i < k.size; ++i) s.v(i) = number(v[static_cast<size_t>(i)], child(child(ip, "v"), i));
      coords.segment(spec.offset(f), k.dim()) = spin_to_coords(s);
      continue;
    }
    const int N = k.matrix_size();
    const int width = k.type == FactorType::real ? 1 : 2;
    array(block, ip);
    if (static_cast<int>(block.size()) != N * N * width) {
      throw ParseError(ip, "factor " + std::to_string(f) + " (" + k.name() + ") expects " +
                               std::to_string(N * N * width) + " numbers, got " + std::to_string(block.size()));
    }
    Eigen::MatrixXcd m(N, N);
    size_t idx = 0;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        const double re = number(block[idx], child(ip, idx));
        ++idx;
        double im = 0.0;
        if (width == 2) {
          im = number(block[idx], child(ip, idx));
          ++idx;
        }
        m(r, c) = {re, im};
      }
    if (!m.allFinite()) throw ValidationError(ip + ": factor " + std::to_string(f) + " has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double defect = structure_defect(k, m);
    if (defect > tol.op * scale) {
      throw ValidationError(ip + ": factor " + std::to_string(f) + " (" + k.name() +
                            ") is not self-adjoint (defect " + std::to_string(defect) + ")");
    }
    coords.segment(spec.offset(f), k.dim()) = matrix_to_coords(k, m);
  }
  return Element(spec, std::move(coords));
}

json map_to_json(const PsuMap& f) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < f.matrix().rows(); ++i) rows.push_back(vector_json(f.matrix().row(i).transpose()));
  return json{{"source", spec_to_json(f.source())},
              {"target", spec_to_json(f.target())},
              {"matrix", rows},
              {"convention", "heisenberg"}};
}

PsuMap map_from_json(const json& j, const std::string& pointer) {
  const json& conv = member(j, "convention", pointer);
  if (conv != "heisenberg") throw ParseError(child(pointer, "convention"), "convention must be \"heisenberg\"");
  const AlgebraSpec source = spec_from_json(member(j, "source", pointer), child(pointer, "source"));
  const AlgebraSpec target = spec_from_json(member(j, "target", pointer), child(pointer, "target"));
  const std::string mp = child(pointer, "matrix");
  const json& rows = array(member(j, "matrix", pointer), mp);
  if (static_cast<int>(rows.size()) != source.dim()) {
    throw ParseError(mp, "expected " + std::to_string(source.dim()) + " rows (source dimension), got " +
                             std::to_string(rows.size()));
  }
  Eigen::MatrixXd m(source.dim(), target.dim());
  for (int r = 0; r < source.dim(); ++r) {
    const std::string rp = child(mp, static_cast<size_t>(r));
    const json& row = array(rows[static_cast<size_t>(r)], rp);
    if (static_cast<int>(row.size()) != target.dim()) {
      throw ParseError(rp, "expected " + std::to_string(target.dim()) + " columns (target dimension), got " +
                               std::to_string(row.size()));
    }
    for (int c = 0; c < target.dim(); ++c) m(r, c) = number(row[static_cast<size_t>(c)], child(rp, static_cast<size_t>(c)));
  }
  return PsuMap(source, target, std::move(m), false);
}

json pure_map_to_json(const PureMap& f) {
  json out = map_to_json(f.map);
  out["witness"] = {{"filter_effect", element_to_json(f.witness.filter_effect, "effect")},
                    {"mid_spec", spec_to_json(f.witness.mid_spec)},
                    {"compression_projection", element_to_json(f.witness.compression_projection, "effect")}};
  return out;
}

PureMap pure_map_from_json(const json& j, const ToleranceConfig& tol) {
  PsuMap map = map_from_json(j);
  const json& w = member(j, "witness", "");
  PureWitness witness{element_from_json(member(w, "filter_effect", "/witness"), tol, "/witness/filter_effect"),
                      spec_from_json(member(w, "mid_spec", "/witness"), "/witness/mid_spec"),
                      element_from_json(member(w, "compression_projection", "/witness"), tol,
                                        "/witness/compression_projection")};
  return PureMap{std::move(map), std::move(witness)};
}

json report_to_json(const CheckReport& r) {
  return json{{"check_id", r.check_id},   {"spec", spec_to_json(r.spec)},     {"trials", r.trials},
              {"failures", r.failures},   {"worst_residual", r.worst_residual}, {"seed", r.seed},
              {"verdict", r.verdict()},   {"exemplars", r.exemplars},         {"details", r.details}};
}

CheckReport report_from_json(const json& j, const std::string& pointer) {
  CheckReport r;
  const json& id = member(j, "check_id", pointer);
  if (!id.is_string()) throw ParseError(child(pointer, "check_id"), "expected a string");
  r.check_id = id.get<std::string>();
  r.spec = spec_from_json(member(j, "spec", pointer), child(pointer, "spec"));
  r.trials = member(j, "trials", pointer).get<int>();
  r.failures = member(j, "failures", pointer).get<int>();
  r.worst_residual = number(member(j, "worst_residual", pointer), child(pointer, "worst_residual"));
  r.seed = member(j, "seed", pointer).get<std::uint64_t>();
  for (const auto& e : array(member(j, "exemplars", pointer), child(pointer, "exemplars"))) r.exemplars.push_back(e);
  r.details = member(j, "details", pointer);
  const json& verdict = member(j, "verdict", pointer);
  if (verdict != r.verdict()) throw ParseError(child(pointer, "verdict"), "verdict disagrees with failure count");
  return r;
}

json decomposition_to_json(const SpectralDecomposition& d) {
  json values = json::array();
  json projections = json::array();
  json atomic = json::array();
  for (size_t i = 0; i < d.size(); ++i) {
    values.push_back(d.values[i]);
    projections.push_back(element_to_json(d.projections[i], "effect"));
    json atoms = json::array();
    if (i < d.atoms.size())
      for (const auto& a : d.atoms[i]) atoms.push_back(element_to_json(a, "effect"));
    atomic.push_back(atoms);
  }
  return json{{"eigenvalues", values}, {"projections", projections}, {"atomic", atomic}};
}

std::string canonical_dump(const json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace ejakit

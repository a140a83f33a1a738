#include "ejakit/pet_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <variant>

#include "ejakit/composite.hpp"
#include "ejakit/diagonalize.hpp"
#include "ejakit/errors.hpp"
#include "ejakit/serialize.hpp"

namespace ejakit {

namespace {

// ---------------------------------------------------------------------------
// Small numerical helpers.

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const Element& a, const Element& b) { return max_abs(a.coords() - b.coords()); }

double quantize(double x) { return std::round(x * 1024.0) / 1024.0; }

// Distance of the spectrum from {0, 1}.
double sharp_defect(const Element& a) {
  double d = 0.0;
  for (double v : eigenvalues(a)) d = std::max(d, std::min(std::abs(v), std::abs(v - 1.0)));
  return d;
}

// Amount by which b - a fails to be positive.
double order_gap(const Element& a, const Element& b) { return std::max(0.0, -min_eigenvalue(b - a)); }

// Every eigenvalue is numerically zero or at least 1e-4.
bool clear_of_threshold(const Element& a) {
  for (double v : eigenvalues(a))
    if (std::abs(v) > 1e-12 && std::abs(v) < 1e-4) return false;
  return true;
}

PsuMap random_psu_once(const AlgebraSpec& source, const AlgebraSpec& target, Rng& rng);

bool is_zero(const Element& a) { return order_norm(a) <= kDecisionThreshold; }

bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return max_abs(a - b) <= kDecisionThreshold; }

Eigen::MatrixXd solve_least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() == 0) return Eigen::MatrixXd::Zero(0, b.cols());
  return a.colPivHouseholderQr().solve(b);
}

int column_rank(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  return static_cast<int>(qr.rank());
}

// Worst violation of positivity (on random atoms of the target) and of
// sub-unitality.
double psu_defect(const PsuMap& f, Rng& rng, int probes = 4) {
  if (f.target().is_null() || f.source().is_null()) return 0.0;
  double d = std::max(0.0, max_eigenvalue(apply(f, Element::unit(f.target()))) - 1.0);
  for (int i = 0; i < probes; ++i) {
    d = std::max(d, std::max(0.0, -min_eigenvalue(apply(f, random_atom(f.target(), rng)))));
  }
  return d;
}

AlgebraSpec pick_system(const AlgebraSpec& a, Rng& rng) { return rng.uniform() < 0.5 ? a : AlgebraSpec::trivial(); }

// Effect without an eigensolver: (x / ||x||_2 + 1) / 2 has spectrum in [0, 1]
// because the coordinate norm bounds the order norm.
Element cheap_effect(const AlgebraSpec& spec, Rng& rng) {
  const Element x = random_element(spec, rng);
  const double n = x.norm();
  if (n == 0.0) return 0.5 * Element::unit(spec);
  return 0.5 * ((1.0 / n) * x + Element::unit(spec));
}

// Unital state x*x / <x*x, 1>, again without an eigensolver.
Element cheap_density(const AlgebraSpec& spec, Rng& rng) {
  const Element x = random_element(spec, rng);
  const Element sq = jordan_product(x, x);
  return (1.0 / inner_product(sq, Element::unit(spec))) * sq;
}

// Trace form computed from the matrix blocks, as an alternative route to
// the coordinate inner product.
double trace_form(const Element& a, const Element& b) {
  double total = 0.0;
  for (int f = 0; f < a.spec().num_factors(); ++f) {
    const FactorKind& kind = a.spec().factor(f);
    if (kind.type == FactorType::spin) {
      const SpinBlock x = spin_block(a, f);
      const SpinBlock y = spin_block(b, f);
      total += 2.0 * (x.v.dot(y.v) + x.t * y.t);
    } else {
      const double tr = (factor_matrix(a, f) * factor_matrix(b, f)).trace().real();
      total += kind.type == FactorType::quaternion ? 0.5 * tr : tr;
    }
  }
  return total;
}

// Strict positivity decided by Cholesky factorization of the blocks shifted
// by eps (matrix factors) or by t - |v| > eps (spin factors).
bool interior_by_cholesky(const Element& v, double eps) {
  for (int f = 0; f < v.spec().num_factors(); ++f) {
    const FactorKind& kind = v.spec().factor(f);
    if (kind.type == FactorType::spin) {
      const SpinBlock s = spin_block(v, f);
      if (!(s.t - s.v.norm() > eps)) return false;
    } else {
      const Eigen::MatrixXcd m = factor_matrix(v, f);
      const Eigen::MatrixXcd shifted = m - eps * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
      Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
      if (llt.info() != Eigen::Success) return false;
    }
  }
  return true;
}

Element random_atom_below(const Element& u, Rng& rng, const ToleranceConfig& tol) {
  const Corner c = corner_spec(u, tol);
  const Element r = random_sharp(c.spec, rng, 1);
  return Element(u.spec(), c.embedding * r.coords());
}

// ---------------------------------------------------------------------------
// Per-trial bookkeeping.

using Input = std::variant<Element, PsuMap, double>;

class Probe {
 public:
  void close(const char* what, double residual, double threshold) {
    worst_ = std::isfinite(residual) ? std::max(worst_, residual) : INFINITY;
    if (!(residual <= threshold)) {
      violations_.push_back({{"what", what}, {"residual", residual}, {"threshold", threshold}});
    }
  }
  void expect(const char* what, bool ok) {
    if (!ok) violations_.push_back({{"what", what}});
  }
  void note(std::string name, Input value) { inputs_.emplace_back(std::move(name), std::move(value)); }
  // Counts which side of a biconditional the trial landed on.
  void side(const char* what, bool truth) { ++sides_[what][truth ? 1 : 0]; }
  void skip() { skipped_ = true; }
  void error(const std::exception& e) { violations_.push_back({{"what", "exception"}, {"message", e.what()}}); }

  bool ok() const { return violations_.empty(); }
  bool skipped() const { return skipped_; }
  double worst() const { return worst_; }
  const std::map<std::string, std::array<int, 2>>& sides() const { return sides_; }

  json exemplar() const {
    json in = json::object();
    for (const auto& [name, value] : inputs_) {
      if (const auto* e = std::get_if<Element>(&value)) {
        in[name] = element_to_json(*e);
      } else if (const auto* m = std::get_if<PsuMap>(&value)) {
        in[name] = map_to_json(*m);
      } else {
        in[name] = std::get<double>(value);
      }
    }
    return {{"inputs", in}, {"violations", violations_}};
  }

 private:
  std::vector<std::pair<std::string, Input>> inputs_;
  json violations_ = json::array();
  std::map<std::string, std::array<int, 2>> sides_;
  double worst_ = 0.0;
  bool skipped_ = false;
};

using TrialBody = std::function<void(Probe&, Rng&)>;

CheckReport run_trials(const std::string& id, const AlgebraSpec& spec, std::uint64_t seed, int trials,
                       double threshold, const TrialBody& body) {
  CheckRecorder rec(id, spec, seed, threshold);
  const std::uint64_t salt = stable_hash(id);
  std::map<std::string, std::array<int, 2>> sides;
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t), salt);
    Probe probe;
    try {
      body(probe, rng);
    } catch (const ValidationError& e) {
      probe.error(e);
    } catch (const StructuralError& e) {
      probe.error(e);
    }
    if (probe.skipped() && probe.ok()) {
      rec.skip();
      continue;
    }
    for (const auto& [what, counts] : probe.sides()) {
      sides[what][0] += counts[0];
      sides[what][1] += counts[1];
    }
    rec.record_outcome(probe.worst(), probe.ok(), [&] { return probe.exemplar(); });
  }
  if (!sides.empty()) {
    json tally = json::object();
    for (const auto& [what, counts] : sides) tally[what] = {{"false", counts[0]}, {"true", counts[1]}};
    rec.details()["sides"] = tally;
  }
  return rec.finish();
}

// Checks a compression's universal property against g = asrt_floor(q) o h.
void compression_universal(const PsuMap& pi, const Element& q, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const AlgebraSpec& a = q.spec();
  const Element one = Element::unit(a);
  const PsuMap g = compose(assert_map(floor(q, tol), tol), random_psu(pick_system(a, rng), a, rng));
  pr.note("g", g);
  pr.close("synthesized g has 1 o g = q o g", max_abs_diff(apply(g, one), apply(g, q)), tol.op);
  const PsuMap mediator = compose(adjoint(pi), g);
  pr.close("compression mediator recomposes", map_distance(compose(pi, mediator), g), tol.op);
  pr.expect("compression mediator is unique", column_rank(pi.matrix().transpose()) == pi.source().dim());
  pr.close("compression mediator is positive sub-unital", psu_defect(mediator, rng), tol.pos);
}

// Checks a filter's universal property against f = h o asrt-like maps with
// 1 o f <= q, given the Heisenberg matrix of the filter.
void filter_universal(const PsuMap& xi, const Element& q, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const AlgebraSpec& a = q.spec();
  const AlgebraSpec d = pick_system(a, rng);
  const PsuMap f(a, d, quadratic_rep_matrix(effect_sqrt(q)) * random_psu(a, d, rng).matrix());
  pr.note("f", f);
  pr.close("synthesized f has 1 o f <= q", order_gap(apply(f, Element::unit(d)), q), tol.pos);
  const PsuMap mediator(xi.target(), d, solve_least_squares(xi.matrix(), f.matrix()));
  pr.close("filter mediator recomposes", map_distance(compose(mediator, xi), f), refactor_threshold(tol));
  pr.expect("filter mediator is unique", column_rank(xi.matrix()) == xi.target().dim());
  pr.close("filter mediator is positive sub-unital", psu_defect(mediator, rng), tol.pos);
}

// ---------------------------------------------------------------------------
// Axioms.

void filters_and_compressions(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element q = gapped_effect(a, rng);
  pr.note("q", q);
  const Element one = Element::unit(a);
  const PsuMap pi = compression_for(q, tol);
  pr.close("compression equation pi#(1) = pi#(q)", max_abs_diff(apply(pi, one), apply(pi, q)), tol.op);
  pr.close("floor is the image of the compression", distance(image(pi, tol), floor(q, tol)), tol.sharp);
  compression_universal(pi, q, tol, pr, rng);

  const PsuMap xi = filter_for(q, tol);
  pr.close("filter equation xi#(1) = q", distance(apply(xi, Element::unit(xi.target())), q), tol.op);
  filter_universal(xi, q, tol, pr, rng);
}

void pure_maps_dagger(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const double thr = refactor_threshold(tol);
  const Element q = filter_effect(a, rng);
  const AlgebraSpec mid = corner_spec(ceiling(q, tol), tol).spec;
  const Element p = random_sharp(mid, rng, rng.uniform_int(1, mid.rank()));
  pr.note("q", q);
  pr.note("p", p);
  const PureMap f = make_pure(q, p, tol);
  pr.close("constructed pure map refactors", refactor(f.map, tol).residual(), thr);
  pr.expect("witness is consistent", is_pure_consistent(f, tol));

  const PureMap d = dagger(f, tol);
  pr.close("dagger is pure", refactor(d.map, tol).residual(), thr);
  pr.expect("dagger witness is consistent", is_pure_consistent(d, tol));
  pr.close("dagger is an involution", map_distance(dagger(d, tol).map, f.map), tol.op);

  // The composite's effect f#(f2#(1)) can land arbitrarily close to the
  // ceiling threshold when supports are nearly orthogonal; redraw f2 until
  // the composite is clear of it.
  std::optional<PureMap> f2;
  for (int attempt = 0; attempt < 16 && !f2; ++attempt) {
    const Element q2 = filter_effect(mid, rng);
    const AlgebraSpec mid2 = corner_spec(ceiling(q2, tol), tol).spec;
    const Element p2 = random_sharp(mid2, rng, rng.uniform_int(1, mid2.rank()));
    PureMap candidate = make_pure(q2, p2, tol);
    if (!clear_of_threshold(apply(f.map, apply(candidate.map, Element::unit(mid2))))) continue;
    pr.note("q2", q2);
    pr.note("p2", p2);
    f2 = std::move(candidate);
  }
  if (!f2) return;
  const PsuMap h = compose(f2->map, f.map);
  pr.close("composite of pure maps refactors", refactor(h, tol).residual(), thr);
  pr.close("dagger(f) o f refactors", refactor(compose(d.map, f.map), tol).residual(), thr);
  pr.close("f o dagger(f) refactors", refactor(compose(f.map, d.map), tol).residual(), thr);
  pr.close("dagger reverses composition",
           map_distance(dagger(as_pure(h, tol), tol).map, compose(d.map, dagger(*f2, tol).map)), tol.op);
}

void images(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const AlgebraSpec src = pick_system(a, rng);
  const PsuMap f = random_psu(src, a, rng);
  pr.note("f", f);
  const Element one = Element::unit(a);
  const Element s = image(f, tol);
  pr.close("image is sharp", sharp_defect(s), tol.sharp);
  pr.close("f#(im f) = f#(1)", max_abs_diff(apply(f, s), apply(f, one)), tol.op);

  // Minimality: among sums of atoms from the spectral frame of (f#)^T(1),
  // exactly those above the image satisfy the defining equation.
  const AtomicSpectrum frame = atomic_spectrum(Element(a, f.matrix().transpose() * Element::unit(src).coords()));
  const int r = static_cast<int>(frame.size());
  auto test_subset = [&](const std::vector<bool>& chosen) {
    Element p = Element::zero(a);
    for (int i = 0; i < r; ++i)
      if (chosen[static_cast<size_t>(i)]) p += frame.atoms[static_cast<size_t>(i)];
    const bool holds = order_norm(apply(f, one - p)) <= kDecisionThreshold;
    pr.side("defining equation holds exactly for sharp effects above the image", holds);
    pr.expect("defining equation holds exactly for sharp effects above the image", holds == leq(s, p, tol));
  };
  std::vector<bool> chosen(static_cast<size_t>(r));
  if (r <= 4) {
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      for (int i = 0; i < r; ++i) chosen[static_cast<size_t>(i)] = (mask >> i) & 1u;
      test_subset(chosen);
    }
  } else {
    std::vector<bool> base(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) base[static_cast<size_t>(i)] = frame.values[static_cast<size_t>(i)] >= tol.sharp;
    test_subset(base);
    for (int i = 0; i < r; ++i) {
      chosen = base;
      chosen[static_cast<size_t>(i)] = !chosen[static_cast<size_t>(i)];
      test_subset(chosen);
    }
    for (int k = 0; k < 16; ++k) {
      for (int i = 0; i < r; ++i) chosen[static_cast<size_t>(i)] = rng.uniform() < 0.5;
      test_subset(chosen);
    }
  }

  const Element above = s + quadratic_rep(complement(s), random_effect(a, rng));
  pr.close("non-sharp effects above the image satisfy the equation", max_abs_diff(apply(f, above), apply(f, one)),
           tol.op);
}

void sharp_negation(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  pr.note("p", p);
  const Element c = complement(p);
  pr.close("complement is sharp", sharp_defect(c), tol.sharp);
  pr.close("complement is idempotent", distance(jordan_product(c, c), c), tol.op);
  pr.expect("complement is recognized as sharp", is_sharp(c, tol));
  const Element fl = floor(gapped_effect(a, rng), tol);
  pr.close("complement of a floor is sharp", sharp_defect(complement(fl)), tol.sharp);
}

void sharp_filter_adjoint(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  pr.note("p", p);
  const Element one = Element::unit(a);

  const PsuMap pi = compression_for(p, tol);
  const PsuMap xi = adjoint(pi);
  const Element corner_one = Element::unit(xi.target());
  pr.close("adjoint of the compression satisfies xi#(1) = p", distance(apply(xi, corner_one), p), tol.op);
  pr.close("adjoint of the compression is faithful", distance(image(xi, tol), corner_one), tol.sharp);
  filter_universal(xi, p, tol, pr, rng);

  const PsuMap pi2 = adjoint(filter_for(p, tol));
  pr.close("adjoint of the filter satisfies pi#(1) = pi#(p)", max_abs_diff(apply(pi2, one), apply(pi2, p)), tol.op);
  pr.close("adjoint of the filter is unital", distance(apply(pi2, one), Element::unit(pi2.source())), tol.op);
  compression_universal(pi2, p, tol, pr, rng);
}

void isometry_trial(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng,
                    const std::function<PsuMap(const Element&)>& compression) {
  const Element p = random_sharp(a, rng);
  pr.note("p", p);
  const PsuMap pi = compression(p);
  const Eigen::MatrixXd m = compose(adjoint(pi), pi).matrix();
  pr.close("dagger(pi) o pi = id", max_abs(m - Eigen::MatrixXd::Identity(m.rows(), m.cols())), tol.op);
}

void sharp_compression_isometry(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  isometry_trial(a, tol, pr, rng, [&](const Element& p) { return compression_for(p, tol); });
}

// ---------------------------------------------------------------------------
// Propositions.

void jordan_algebra_identities(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element x = random_element(a, rng);
  const Element y = random_element(a, rng);
  const Element z = random_element(a, rng);
  pr.note("x", x);
  pr.note("y", y);
  const double nx = 1.0 + x.norm();
  const double ny = 1.0 + y.norm();
  const double nz = 1.0 + z.norm();
  const Element xx = jordan_product(x, x);
  pr.close("Jordan identity",
           distance(jordan_product(xx, jordan_product(y, x)), jordan_product(jordan_product(xx, y), x)) /
               (nx * nx * nx * ny),
           tol.op);
  pr.close("commutativity", distance(jordan_product(x, y), jordan_product(y, x)) / (nx * ny), tol.op);
  pr.close("unit", distance(jordan_product(Element::unit(a), x), x) / nx, tol.op);
  pr.close("associativity of the form",
           std::abs(inner_product(jordan_product(x, y), z) - inner_product(y, jordan_product(x, z))) / (nx * ny * nz),
           tol.op);

  const SpectralDecomposition sd = spectral_decompose(x, tol);
  pr.close("spectral reconstruction", distance(sd.reconstruct(a), x) / nx, 10.0 * tol.op);
  double idem = 0.0;
  double cross = 0.0;
  double top = 0.0;
  for (size_t i = 0; i < sd.size(); ++i) {
    idem = std::max(idem, distance(jordan_product(sd.projections[i], sd.projections[i]), sd.projections[i]));
    top = std::max(top, std::abs(sd.values[i]));
    for (size_t j = i + 1; j < sd.size(); ++j)
      cross = std::max(cross, jordan_product(sd.projections[i], sd.projections[j]).norm());
  }
  pr.close("spectral projections are idempotent", idem, tol.op);
  pr.close("spectral projections are orthogonal", cross, tol.op);
  pr.close("order norm is the largest absolute eigenvalue", std::abs(order_norm(x) - top) / nx, tol.op);

  for (int f = 0; f < a.num_factors(); ++f) {
    if (a.factor(f).type != FactorType::quaternion) continue;
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(factor_matrix(x, f)).eigenvalues();
    double pairing = 0.0;
    for (Eigen::Index i = 0; i + 1 < ev.size(); i += 2) pairing = std::max(pairing, std::abs(ev(i) - ev(i + 1)));
    pr.close("quaternionic eigenvalues come in pairs", pairing / nx, tol.op);
  }
}

void map_adjoint_duality(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const AlgebraSpec t = pick_system(a, rng);
  const PsuMap f = random_psu(a, t, rng);
  pr.note("f", f);
  pr.close("adjoint is an involution", map_distance(adjoint(adjoint(f)), f), tol.op);
  const Element w = random_element(t, rng);
  const Element v = random_element(a, rng);
  pr.close("<f# w, v> = <w, adjoint(f)# v>",
           std::abs(inner_product(apply(f, w), v) - inner_product(w, apply(adjoint(f), v))) /
               ((1.0 + w.norm()) * (1.0 + v.norm())),
           tol.op);
  const State omega = random_unital_state(a, rng);
  const Element q = gapped_effect(t, rng);
  const State pushed = apply_state(f, omega);
  pr.close("pushed states evaluate like pulled effects",
           std::abs(evaluate(q, pushed) - evaluate(apply(f, q), omega)), tol.op);
  pr.close("pushed state is positive", order_gap(Element::zero(t), pushed.density), tol.pos);
  pr.close("pushed state is sub-normalized", std::max(0.0, pushed.total() - 1.0), tol.op);
}

void constructed_map_positivity(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element q = gapped_effect(a, rng);
  const Element p = random_sharp(a, rng);
  pr.note("q", q);
  pr.note("p", p);
  const PsuMap maps[] = {compression_for(q, tol), filter_for(q, tol), assert_map(p, tol), random_psu(a, a, rng),
                         compose(filter_for(q, tol), assert_map(p, tol))};
  for (const PsuMap& m : maps) {
    const CheckReport r = positivity_check(m, 6, rng.next_u64(), tol);
    pr.close("constructed map is positive on atoms", r.worst_residual, tol.pos);
    if (!m.source().is_null() && !m.target().is_null()) {
      pr.close("constructed map is sub-unital",
               std::max(0.0, max_eigenvalue(apply(m, Element::unit(m.target()))) - 1.0), tol.pos);
    }
  }
}

void compression_examples(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  // Diagonal projection onto the first k basis vectors of one matrix factor:
  // the compression keeps the top-left k x k block.
  for (int f = 0; f < a.num_factors(); ++f) {
    const FactorKind& kind = a.factor(f);
    if (!kind.is_matrix()) continue;
    const int k = rng.uniform_int(1, kind.size);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(a.dim());
    for (int i = 0; i < k; ++i) c(a.offset(f) + i) = 1.0;
    const Element q(a, c);
    const Element x = random_element(a, rng);
    const PsuMap pi = compression_for(q, tol);
    const Element kept(a, pi.matrix().transpose() * apply(pi, x).coords());
    const int m = kind.type == FactorType::quaternion ? 2 * k : k;
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(kind.matrix_size(), kind.matrix_size());
    block.topLeftCorner(m, m) = factor_matrix(x, f).topLeftCorner(m, m);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(a.dim());
    expected.segment(a.offset(f), kind.dim()) = matrix_to_coords(kind, block);
    pr.close("compression of a diagonal projection keeps the top-left block", max_abs(kept.coords() - expected),
             tol.op);
    FactorKind corner = kind;
    corner.size = k;
    pr.expect("corner of a diagonal projection has the same kind", pi.source() == AlgebraSpec({corner}));
  }

  // q + r with r orthogonal to q and ||r|| < 1 has the compression of q.
  const Element p = random_sharp(a, rng);
  const Element r = rng.uniform(0.1, 0.95) * quadratic_rep(complement(p), random_effect(a, rng));
  pr.note("p", p);
  pr.note("r", r);
  const PsuMap pa = compression_for(p, tol);
  const PsuMap pb = compression_for(p + r, tol);
  pr.expect("compressions have the same corner", pa.source() == pb.source());
  if (pa.source() == pb.source()) {
    pr.close("compressions agree up to a Jordan isomorphism",
             jordan_isomorphism_defect(pa.source(), pb.source(), pb.matrix() * pa.matrix().transpose()),
             refactor_threshold(tol));
  }

  // The filter of q acts as b -> sqrt(q) b sqrt(q) on matrix factors.
  const Element q = gapped_effect(a, rng);
  const Corner corner = corner_spec(ceiling(q, tol), tol);
  if (corner.spec.is_null()) return;
  const PsuMap xi = filter_for(q, tol);
  const Element b = random_element(corner.spec, rng);
  const Element image_b = apply(xi, b);
  const Element embedded(a, corner.embedding * b.coords());
  for (int f = 0; f < a.num_factors(); ++f) {
    if (!a.factor(f).is_matrix()) continue;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(factor_matrix(q, f));
    const Eigen::MatrixXcd root = es.eigenvectors() *
                                  es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<std::complex<double>>().asDiagonal() *
                                  es.eigenvectors().adjoint();
    const Eigen::MatrixXcd expected = root * factor_matrix(embedded, f) * root;
    pr.close("filter acts as sqrt(q) b sqrt(q)", max_abs((factor_matrix(image_b, f) - expected).cwiseAbs()),
             10.0 * tol.op * (1.0 + b.norm()));
  }
}

void filter_downset(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const double thr = refactor_threshold(tol);
  const Element q = gapped_effect(a, rng);
  pr.note("q", q);
  const PsuMap xi = filter_for(q, tol);
  const AlgebraSpec& corner = xi.target();
  if (!corner.is_null()) {
    const Element b2 = gapped_effect(corner, rng);
    const Element b1 = quadratic_rep(effect_sqrt(b2), random_effect(corner, rng));
    const Element b3 = random_effect(corner, rng);
    const Element x1 = apply(xi, b1);
    const Element x2 = apply(xi, b2);
    pr.close("filter maps effects into the downset of q", order_gap(Element::zero(a), x2), tol.pos);
    pr.close("filter maps effects below q", order_gap(x2, q), tol.pos);
    pr.close("filter preserves order", order_gap(x1, x2), tol.pos);
    pr.expect("filter reflects order", leq(b3, b2, tol) == leq(apply(xi, b3), x2, tol));

    // Surjectivity onto effects below q.
    double mu = 1.0;
    for (double v : eigenvalues(q))
      if (v >= tol.sharp) mu = std::min(mu, v);
    const Element support = ceiling(q, tol);
    const Element e = 0.5 * mu * quadratic_rep(support, random_effect(a, rng)) + 0.5 * rng.uniform() * q;
    const Eigen::VectorXd pre = solve_least_squares(xi.matrix(), e.coords());
    pr.close("every effect below q has a preimage", max_abs(xi.matrix() * pre - e.coords()), thr);
    const Element b(corner, pre);
    pr.close("preimage is positive", order_gap(Element::zero(corner), b), thr);
    pr.close("preimage is below the unit", order_gap(b, Element::unit(corner)), thr);
  }

  const PsuMap xi1 = filter_for(Element::unit(a), tol);
  const PsuMap pi1 = compression_for(Element::unit(a), tol);
  pr.close("filter of the unit is an isomorphism", jordan_isomorphism_defect(xi1.target(), a, xi1.matrix()), thr);
  pr.close("compression of the unit is an isomorphism", jordan_isomorphism_defect(a, pi1.source(), pi1.matrix()),
           thr);
  pr.expect("filter of zero is the zero map", filter_for(Element::zero(a), tol).target().is_null());
  pr.expect("compression of zero is the zero map", compression_for(Element::zero(a), tol).source().is_null());
}

void filters_faithful(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element q = gapped_effect(a, rng);
  pr.note("q", q);
  const PsuMap pi = compression_for(q, tol);
  pr.close("compression is unital", distance(apply(pi, Element::unit(a)), Element::unit(pi.source())), tol.op);
  const PsuMap xi = filter_for(q, tol);
  const Element corner_one = Element::unit(xi.target());
  pr.close("1 o xi = q", distance(apply(xi, corner_one), q), tol.op);
  pr.close("filter has full image", distance(image(xi, tol), corner_one), tol.sharp);
  if (!xi.target().is_null()) {
    const Element r = random_atom(xi.target(), rng);
    pr.expect("filter does not annihilate a nonzero effect", order_norm(apply(xi, r)) > tol.sharp);
  }
}

// p <= q, either commuting with q (same frame) or U_sqrt(q)(e).
Element below(const PlantedElement& q, Rng& rng, bool commuting) {
  const AlgebraSpec& a = q.element.spec();
  if (!commuting) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      Element p = quadratic_rep(effect_sqrt(q.element), gapped_effect(a, rng));
      if (clear_of_threshold(p)) return p;
    }
  }
  Element p = Element::zero(a);
  for (size_t i = 0; i < q.values.size(); ++i) {
    const double v = rng.uniform() < 0.5 ? q.values[i] : q.values[i] * rng.uniform();
    p += v * q.projections[i];
  }
  return p;
}

Element planted_level(const PlantedElement& q, const std::function<bool(double)>& keep) {
  Element out = Element::zero(q.element.spec());
  for (size_t i = 0; i < q.values.size(); ++i)
    if (keep(q.values[i])) out += q.projections[i];
  return out;
}

// Zero tests for q o f and ceil(q) o f on an annihilated and a generic effect.
void ceiling_annihilation(const AlgebraSpec& a, const Element& generic, const ToleranceConfig& tol, Probe& pr,
                          Rng& rng) {
  const PsuMap f = random_psu(pick_system(a, rng), a, rng);
  pr.note("f", f);
  const Element killed = quadratic_rep(complement(image(f, tol)), gapped_effect(a, rng));
  for (const Element& x : {killed, generic}) {
    pr.expect("q o f = 0 iff ceil(q) o f = 0", is_zero(apply(f, x)) == is_zero(apply(f, ceiling(x, tol))));
  }
  pr.close("annihilated effect has zero pullback", order_norm(apply(f, killed)), tol.op);
  const Element pulled = apply(f, generic);
  const Element pulled_ceiling = apply(f, ceiling(generic, tol));
  if (clear_of_threshold(pulled) && clear_of_threshold(pulled_ceiling)) {
    pr.close("ceil(q o f) = ceil(ceil(q) o f)", distance(ceiling(pulled, tol), ceiling(pulled_ceiling, tol)),
             tol.sharp);
  }
}

void floor_ceiling(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const PlantedElement planted = planted_effect(a, rng);
  const Element& q = planted.element;
  pr.note("q", q);
  const Element fl = floor(q, tol);
  pr.close("floor is below q", order_gap(fl, q), tol.pos);
  pr.close("floor is idempotent", distance(floor(fl, tol), fl), tol.sharp);
  pr.close("floor is the eigenvalue-1 projection", distance(fl, planted_level(planted, [](double v) { return v == 1.0; })),
           tol.sharp);
  pr.close("ceiling is the support projection",
           distance(ceiling(q, tol), planted_level(planted, [](double v) { return v > 0.0; })), tol.sharp);
  for (bool commuting : {true, false}) {
    const Element p = below(planted, rng, commuting);
    pr.close("p <= q implies floor(p) <= floor(q)", order_gap(floor(p, tol), fl), tol.sharp);
  }
  ceiling_annihilation(a, q, tol, pr, rng);
  const Element s = random_sharp(a, rng);
  for (const Element& x : {q, s}) {
    pr.expect("q is sharp iff floor(q) = q", is_sharp(x, tol) == (distance(floor(x, tol), x) <= kDecisionThreshold));
  }
}

void ceiling_monotone(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const PlantedElement planted = planted_effect(a, rng);
  const Element& q = planted.element;
  pr.note("q", q);
  for (bool commuting : {true, false}) {
    const Element p = below(planted, rng, commuting);
    pr.note(commuting ? "p_commuting" : "p", p);
    pr.close("p <= q implies ceil(p) <= ceil(q)", order_gap(ceiling(p, tol), ceiling(q, tol)), tol.sharp);
    pr.close("p <= q implies floor(p) <= floor(q)", order_gap(floor(p, tol), floor(q, tol)), tol.sharp);
  }
  const double c = rng.uniform(0.01, 1.0);
  pr.close("ceil(c q) = ceil(q)", distance(ceiling(c * q, tol), ceiling(q, tol)), tol.sharp);
  ceiling_annihilation(a, q, tol, pr, rng);
}

// Sharp effects in general position relative to each other: sums of
// nearly overlapping projections have eigenvalues just above zero, which
// makes their ceiling ill-conditioned.
bool general_position(const Element& p, const Element& q) {
  return clear_of_threshold(p + q) && clear_of_threshold(complement(p) + complement(q));
}

Element random_sharp_against(const std::vector<Element>& others, Rng& rng) {
  Element s = random_sharp(others.front().spec(), rng);
  for (int attempt = 0; attempt < 16; ++attempt) {
    if (std::all_of(others.begin(), others.end(), [&](const Element& o) { return general_position(o, s); })) break;
    s = random_sharp(others.front().spec(), rng);
  }
  return s;
}

void sharp_lattice(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  const Element q = random_sharp_against({p}, rng);
  const Element r = random_sharp_against({p, q}, rng);
  pr.note("p", p);
  pr.note("q", q);
  pr.note("r", r);
  const Element j = sharp_join(p, q, tol);
  const Element m = sharp_meet(p, q, tol);
  pr.close("join is sharp", sharp_defect(j), tol.sharp);
  pr.close("meet is sharp", sharp_defect(m), tol.sharp);
  pr.close("join is an upper bound", std::max(order_gap(p, j), order_gap(q, j)), tol.sharp);
  pr.close("meet is a lower bound", std::max(order_gap(m, p), order_gap(m, q)), tol.sharp);
  pr.close("join commutes", distance(j, sharp_join(q, p, tol)), tol.sharp);
  pr.close("join associates", distance(sharp_join(p, sharp_join(q, r, tol), tol), sharp_join(j, r, tol)), tol.sharp);
  pr.close("meet associates", distance(sharp_meet(p, sharp_meet(q, r, tol), tol), sharp_meet(m, r, tol)), tol.sharp);
  pr.close("absorption p v (p ^ q) = p", distance(sharp_join(p, m, tol), p), tol.sharp);
  pr.close("absorption p ^ (p v q) = p", distance(sharp_meet(p, j, tol), p), tol.sharp);

  const Element u = random_sharp(a, rng);
  const Element j2 = sharp_join(random_subprojection(u, rng, 0, tol), random_subprojection(u, rng, 0, tol), tol);
  pr.close("join is below every sharp upper bound", order_gap(j2, u), tol.sharp);
  const Element l = random_sharp(a, rng);
  const Element lc = complement(l);
  const Element m2 =
      sharp_meet(l + random_subprojection(lc, rng, 0, tol), l + random_subprojection(lc, rng, 0, tol), tol);
  pr.close("meet is above every sharp lower bound", order_gap(l, m2), tol.sharp);

  const Element above = sharp_join(p, r, tol);
  for (const Element& x : {above, q}) {
    pr.expect("p <= x iff p v x = x", leq(p, x, tol) == (distance(sharp_join(p, x, tol), x) <= kDecisionThreshold));
  }
}

void assert_maps(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  pr.note("p", p);
  const PsuMap asrt = assert_map(p, tol);
  pr.close("asrt o asrt = asrt", map_distance(compose(asrt, asrt), asrt), tol.op);
  pr.close("im(asrt) = p", distance(image(asrt, tol), p), tol.sharp);
  pr.close("1 o asrt = p", distance(apply(asrt, Element::unit(a)), p), tol.op);

  const PsuMap h = random_psu(pick_system(a, rng), a, rng);
  const PsuMap inside = compose(asrt, h);
  pr.note("h", h);
  pr.close("asrt o f = f when im(f) <= p", map_distance(compose(asrt, inside), inside), tol.op);
  for (const PsuMap& f : {inside, h}) {
    const bool below = leq(image(f, tol), p, tol);
    pr.side("im(f) <= p iff asrt o f = f", below);
    pr.expect("im(f) <= p iff asrt o f = f", below == same_matrix(compose(asrt, f).matrix(), f.matrix()));
  }

  const PsuMap k = random_psu(a, pick_system(a, rng), rng);
  const PsuMap before = compose(k, asrt);
  pr.note("k", k);
  pr.close("f o asrt = f when 1 o f <= p", map_distance(compose(before, asrt), before), tol.op);
  for (const PsuMap& f : {before, k}) {
    const bool below = leq(apply(f, Element::unit(f.target())), p, tol);
    pr.side("1 o f <= p iff f o asrt = f", below);
    pr.expect("1 o f <= p iff f o asrt = f", below == same_matrix(compose(f, asrt).matrix(), f.matrix()));
  }
}

void sharp_orthogonality(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  const bool build_orthogonal = rng.uniform() < 0.5;
  const Element q = build_orthogonal ? random_subprojection(complement(p), rng, 0, tol) : random_sharp(a, rng);
  pr.note("p", p);
  pr.note("q", q);
  const bool summable = std::holds_alternative<Element>(effect_add(p, q, tol));
  const Element q_after = apply(assert_map(p, tol), q);
  pr.side("summable iff p <= not q", summable);
  pr.expect("summable iff p <= not q", summable == leq(p, complement(q), tol));
  pr.expect("summable iff q <= not p", summable == leq(q, complement(p), tol));
  pr.expect("summable iff q o asrt_p = 0", summable == is_zero(q_after));
  pr.expect("summable iff ceilings are orthogonal", summable == orthogonal(p, q, tol));
  if (build_orthogonal) {
    pr.expect("constructed pair is summable", summable);
    pr.close("q o asrt_p vanishes for orthogonal q", order_norm(q_after), tol.op);
  }
}

void sharp_addition(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  const Element q = random_subprojection(complement(p), rng, 0, tol);
  pr.note("p", p);
  pr.note("q", q);
  pr.close("sum of orthogonal sharp effects is sharp", sharp_defect(p + q), tol.sharp);
  pr.close("sum of orthogonal sharp effects is their join", distance(p + q, sharp_join(p, q, tol)), tol.sharp);

  // p sharp and p + e sharp with e orthogonal to p forces e sharp.
  const Element e = rng.uniform() < 0.5 ? q : quadratic_rep(complement(p), gapped_effect(a, rng));
  pr.expect("p + e is sharp iff e is sharp", is_sharp(p + e, tol) == is_sharp(e, tol));

  const Element t = random_sharp(a, rng);
  const Element sub = random_subprojection(t, rng, 0, tol);
  pr.close("difference of nested sharp effects is sharp", sharp_defect(t - sub), tol.sharp);
}

void norm_boundary(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element v = rng.uniform(0.05, 2.0) * filter_effect(a, rng);
  pr.note("v", v);
  const double n = order_norm(v);
  const Element one = Element::unit(a);
  pr.close("||v|| 1 - v lies on the boundary of the cone", std::abs(min_eigenvalue(n * one - v)), tol.op * (1.0 + n));

  const double t = rng.uniform(0.05, 0.95);
  const Element w = (t / n) * v;
  pr.close("||w|| < 1 puts 1 - w in the interior", std::max(0.0, (1.0 - t) - min_eigenvalue(one - w)), tol.op);
  pr.close("interior element has full ceiling", distance(ceiling(one - w, tol), one), tol.sharp);

  const Element p = random_sharp(a, rng);
  pr.note("p", p);
  const double c = rng.uniform(0.05, 0.95);
  pr.expect("a sharp multiple c p with c < 1 is sharp only for p = 0", is_sharp(c * p, tol) == (sharp_rank(p, tol) == 0));
  const Element under = c * quadratic_rep(p, random_effect(a, rng));
  pr.close("ceil(p - v) = p for v <= p with ||v|| < 1", distance(ceiling(p - under, tol), p), tol.sharp);
  const Element beside = c * quadratic_rep(complement(p), random_effect(a, rng));
  pr.close("floor(p + v) = p for v orthogonal to p with ||v|| < 1", distance(floor(p + beside, tol), p), tol.sharp);
}

void interior_ceiling(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  Element v = gapped_effect(a, rng);
  if (rng.uniform() < 0.3) v = 0.5 * v + 0.25 * Element::unit(a);
  pr.note("v", v);
  const bool full = distance(ceiling(v, tol), Element::unit(a)) <= tol.sharp;
  pr.expect("ceil(v) = 1 iff v is in the interior", full == interior_by_cholesky(v, tol.sharp));
}

void unit_norm_floor(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  PlantedElement planted = planted_effect(a, rng);
  if (planted.values.front() <= 0.0) {
    pr.skip();
    return;
  }
  const Element v = (1.0 / planted.values.front()) * planted.element;
  pr.note("v", v);
  const Element fl = floor(v, tol);
  pr.expect("||v|| = 1 implies floor(v) != 0", sharp_rank(fl, tol) >= 1);
  pr.close("floor is the top eigenprojection", distance(fl, planted.projections.front()), tol.sharp);
}

void orthogonal_independence(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  std::vector<Element> frame = random_frame(a, rng);
  const int k = rng.uniform_int(1, a.rank());
  std::vector<Element> family(static_cast<size_t>(k), Element::zero(a));
  for (size_t i = 0; i < frame.size(); ++i) {
    const size_t slot = i < static_cast<size_t>(k) ? i : static_cast<size_t>(rng.uniform_int(0, k));
    if (slot < family.size()) family[slot] += frame[i];
  }
  Eigen::MatrixXd cols(a.dim(), k);
  for (int i = 0; i < k; ++i) cols.col(i) = family[static_cast<size_t>(i)].coords();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(cols);
  lu.setThreshold(1e-10);
  pr.expect("orthogonal sharp family is linearly independent", lu.rank() == k);

  Eigen::VectorXd coeff(k);
  Element combo = Element::zero(a);
  for (int i = 0; i < k; ++i) {
    coeff(i) = rng.normal();
    combo += coeff(i) * family[static_cast<size_t>(i)];
  }
  double leak = 0.0;
  double recover = 0.0;
  for (int i = 0; i < k; ++i) {
    const Element& pi = family[static_cast<size_t>(i)];
    const PsuMap asrt = assert_map(pi, tol);
    for (int j = 0; j < k; ++j)
      if (j != i) leak = std::max(leak, order_norm(apply(asrt, family[static_cast<size_t>(j)])));
    const double got = inner_product(apply(asrt, combo), Element::unit(a)) / sharp_rank(pi, tol);
    recover = std::max(recover, std::abs(got - coeff(i)));
  }
  pr.close("p_j o asrt_{p_i} = 0 for i != j", leak, tol.op);
  pr.close("coefficients are recovered by assert maps", recover / (1.0 + coeff.norm()), tol.op);
}

void diag_peel(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const PlantedElement planted = planted_effect(a, rng);
  const Element& v = planted.element;
  pr.note("v", v);
  const PeelResult traced = peel_diagonalize_traced(v, tol);
  const SpectralDecomposition& peel = traced.decomposition;

  auto compare = [&](const std::vector<double>& values, const std::vector<Element>& projections, const char* which) {
    if (values.size() != peel.size()) {
      pr.expect(which, false);
      return;
    }
    double dl = 0.0;
    double dp = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
      dl = std::max(dl, std::abs(values[i] - peel.values[i]));
      dp = std::max(dp, distance(projections[i], peel.projections[i]));
    }
    pr.close("peeled eigenvalues match", dl, tol.eig);
    pr.close("peeled projections match", dp, tol.sharp);
  };

  std::vector<double> pv;
  std::vector<Element> pp;
  for (size_t i = 0; i < planted.values.size(); ++i) {
    if (planted.values[i] <= 0.0) continue;
    pv.push_back(planted.values[i]);
    pp.push_back(planted.projections[i]);
  }
  compare(pv, pp, "peel finds the planted number of eigenvalues");

  const SpectralDecomposition oracle = spectral_decompose(v, tol);
  std::vector<double> ov;
  std::vector<Element> op;
  for (size_t i = 0; i < oracle.size(); ++i) {
    if (oracle.values[i] < tol.eig) continue;
    ov.push_back(oracle.values[i]);
    op.push_back(oracle.projections[i]);
  }
  compare(ov, op, "peel finds the eigensolver's number of eigenvalues");

  pr.close("peel reconstructs v", distance(peel.reconstruct(a), v), tol.sharp);
  pr.expect("peel takes at most rank steps", static_cast<int>(traced.steps.size()) <= a.rank());
  double defect = 0.0;
  for (const PeelStep& s : traced.steps) defect = std::max(defect, std::abs(s.orthogonality_defect));
  pr.close("each residual is orthogonal to the peeled floors", defect, tol.sharp);
  for (size_t i = 1; i < peel.size(); ++i)
    pr.expect("peeled eigenvalues strictly decrease", peel.values[i] < peel.values[i - 1]);
}

void diag_uniqueness(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element v = planted_effect(a, rng).element;
  pr.note("v", v);
  const CheckReport r = check_uniqueness(v, rng.next_u64(), tol);
  pr.expect("peel and eigensolver agree", r.passed());
  pr.close("peel and eigensolver residual", r.worst_residual, tol.sharp);

  // A perturbation far below tol.eig must not split any cluster.
  const Element nudged = v + 1e-10 * random_atom(a, rng);
  if (is_effect(nudged, tol)) {
    const CheckReport r2 = check_uniqueness(nudged, rng.next_u64(), tol);
    pr.expect("near-degenerate clusters merge on both paths", r2.passed());
    pr.close("near-degenerate residual", r2.worst_residual, tol.sharp);
  }
}

void diag_signed(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const PlantedElement planted = planted_element(a, rng);
  const Element& x = planted.element;
  pr.note("a", x);
  const SignedDecomposition sd = diagonalize_general(x, tol);
  const double scale = 1.0 + order_norm(x);
  pr.close("positive - negative = a", distance(sd.positive - sd.negative, x) / scale, tol.sharp);
  pr.close("decomposition reconstructs a", distance(sd.decomposition.reconstruct(a), x) / scale, tol.sharp);
  pr.close("positive part is positive", order_gap(Element::zero(a), sd.positive), tol.pos * scale);
  pr.close("negative part is positive", order_gap(Element::zero(a), sd.negative), tol.pos * scale);
  pr.close("parts are orthogonal", std::abs(inner_product(sd.positive, sd.negative)) / (scale * scale), tol.op);
  pr.expect("ceilings of the parts are orthogonal", orthogonal(sd.positive, sd.negative, tol));

  std::vector<double> pv;
  std::vector<Element> pp;
  for (size_t i = 0; i < planted.values.size(); ++i) {
    if (planted.values[i] == 0.0) continue;
    pv.push_back(planted.values[i]);
    pp.push_back(planted.projections[i]);
  }
  // The decomposition lists the shifted-peel values first and the remainder
  // (eigenvalue -n) last; sort by value before comparing.
  std::vector<size_t> order(sd.decomposition.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t l, size_t r) { return sd.decomposition.values[l] > sd.decomposition.values[r]; });
  if (order.size() != pv.size()) {
    pr.expect("signed eigenvalue count matches the planted spectrum", false);
    return;
  }
  double dl = 0.0;
  double dp = 0.0;
  for (size_t i = 0; i < pv.size(); ++i) {
    dl = std::max(dl, std::abs(sd.decomposition.values[order[i]] - pv[i]));
    dp = std::max(dp, distance(sd.decomposition.projections[order[i]], pp[i]));
  }
  pr.close("signed eigenvalues match", dl / scale, tol.eig);
  pr.close("signed projections match", dp, tol.sharp);
}

void sharp_atomic_refinement(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const int k = rng.uniform_int(1, a.rank());
  const Element p = random_sharp(a, rng, k);
  pr.note("p", p);
  const std::vector<Element> atoms = atomic_refinement(p, tol);
  pr.expect("refinement has rank many atoms", static_cast<int>(atoms.size()) == k);
  Element sum = Element::zero(a);
  double atomic = 0.0;
  double cross = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    sum += atoms[i];
    atomic = std::max({atomic, sharp_defect(atoms[i]), std::abs(inner_product(atoms[i], atoms[i]) - 1.0)});
    for (size_t j = i + 1; j < atoms.size(); ++j)
      cross = std::max(cross, std::abs(inner_product(atoms[i], atoms[j])));
  }
  pr.close("atoms are sharp with unit norm", atomic, tol.sharp);
  pr.close("atoms are orthogonal", cross, tol.op);
  pr.close("atoms sum to p", distance(sum, p), tol.sharp);

  // The downset of an atom is one-dimensional; larger sharp effects have
  // effects below them that are not multiples.
  const Element first = atoms.front();
  const Element inside = quadratic_rep(first, random_effect(a, rng));
  pr.close("effects below an atom are multiples of it", distance(inside, inner_product(inside, first) * first),
           tol.op);
  const Element below_p = quadratic_rep(p, random_effect(a, rng));
  const bool multiple = distance(below_p, (inner_product(below_p, p) / k) * p) <= kDecisionThreshold;
  pr.expect("p is atomic iff its downset is one-dimensional", is_atomic(p, tol) == multiple);
  pr.expect("atomic iff rank one", is_atomic(p, tol) == (k == 1));
}

void atomic_spectrum_check(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element x = random_element(a, rng);
  pr.note("x", x);
  const AtomicSpectrum s = atomic_spectrum(x);
  pr.expect("one atom per unit of rank", static_cast<int>(s.size()) == a.rank());
  Element sum = Element::zero(a);
  Element rebuilt = Element::zero(a);
  double atomic = 0.0;
  double cross = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    sum += s.atoms[i];
    rebuilt += s.values[i] * s.atoms[i];
    atomic = std::max({atomic, sharp_defect(s.atoms[i]), std::abs(inner_product(s.atoms[i], s.atoms[i]) - 1.0)});
    for (size_t j = i + 1; j < s.size(); ++j) cross = std::max(cross, std::abs(inner_product(s.atoms[i], s.atoms[j])));
    if (i > 0) pr.expect("values are sorted", s.values[i] <= s.values[i - 1]);
  }
  pr.close("atoms are atomic", atomic, tol.sharp);
  pr.close("atoms are orthogonal", cross, tol.op);
  pr.close("atoms sum to the unit", distance(sum, Element::unit(a)), tol.sharp);
  pr.close("atomic spectrum reconstructs x", distance(rebuilt, x) / (1.0 + x.norm()), 10.0 * tol.op);
}

void pure_effects_and_states(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const double thr = refactor_threshold(tol);
  Element q = rng.uniform(0.05, 1.0) * random_atom(a, rng);
  if (rng.uniform() < 0.5 && a.rank() >= 2) {
    const Element p = random_sharp(a, rng, rng.uniform_int(2, a.rank()));
    q = quadratic_rep(p, 0.5 * (Element::unit(a) + cheap_effect(a, rng)));
  }
  pr.note("q", q);
  const double rq = refactor(effect_as_map(q), tol).residual();
  const bool proportional = sharp_rank(ceiling(q, tol), tol) == 1;
  pr.expect("effect is pure iff proportional to an atom", (rq <= thr) == proportional);
  if (proportional) {
    pr.close("multiple of an atom refactors", rq, thr);
    pr.close("witness filter effect is q", distance(as_pure(effect_as_map(q), tol).witness.filter_effect, q), thr);
  }

  const Element w = rng.uniform() < 0.5 ? random_atom(a, rng) : random_unital_state(a, rng).density;
  pr.note("w", w);
  const PsuMap omega = state_as_map(w);
  const double rw = refactor(omega, tol).residual();
  const bool atomic_image = is_atomic(image(omega, tol), tol);
  pr.expect("unital state is pure iff its image is atomic", (rw <= thr) == atomic_image);
  if (atomic_image) pr.close("state with atomic image refactors", rw, thr);
}

void atomic_state(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element q = random_atom(a, rng);
  pr.note("q", q);
  const State omega = pure_state_of_atom(q, tol);
  pr.close("omega_q is unital", std::abs(omega.total() - 1.0), tol.op);
  pr.close("omega_q(q) = 1", std::abs(evaluate(q, omega) - 1.0), tol.op);
  pr.close("im(omega_q) = q", distance(image(state_as_map(omega.density), tol), q), tol.sharp);
  pr.expect("omega_q is pure", is_pure_state(omega, tol));
  pr.close("omega_q = dagger(q)", map_distance(dagger(as_pure(effect_as_map(q), tol), tol).map, state_as_map(q)),
           tol.op);

  // Any unital state with image below q is omega_q.
  const Element w = random_element(a, rng, SampleProfile::state);
  const Element cut = quadratic_rep(q, w);
  const Element sigma = (1.0 / inner_product(cut, Element::unit(a))) * cut;
  pr.close("unital state with image below q is omega_q", distance(sigma, q), tol.op);
}

void pure_distinguish(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_atom(a, rng);
  int mode = rng.uniform_int(0, 2);
  if (mode == 0 && a.rank() == 1) mode = 2;
  const Element q = mode == 0 ? random_atom_below(complement(p), rng, tol) : mode == 1 ? random_atom(a, rng) : p;
  pr.note("p", p);
  pr.note("q", q);
  constexpr double kZero = 1e-10;
  const double pq = evaluate(p, pure_state_of_atom(q, tol));
  const double qp = evaluate(q, pure_state_of_atom(p, tol));
  const bool z1 = std::abs(pq) <= kZero;
  const bool z2 = std::abs(qp) <= kZero;
  pr.side("p o omega_q = 0 iff q o omega_p = 0", z1);
  pr.expect("p o omega_q = 0 iff q o omega_p = 0", z1 == z2);
  pr.expect("q o omega_p = 0 iff p and q are orthogonal", z2 == orthogonal(p, q, tol));
  if (mode == 0) {
    pr.close("orthogonal atoms have zero transition", std::max(std::abs(pq), std::abs(qp)), kZero);
  }
}

void transition_symmetry(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_atom(a, rng);
  Element q = random_atom(a, rng);
  if (rng.uniform() < 0.5) {
    for (int f = 0; f < a.num_factors(); ++f) {
      if (inner_product(p, Element::factor_unit(a, f)) > 0.5) q = random_atom_in_factor(a, f, rng);
    }
  }
  pr.note("p", p);
  pr.note("q", q);
  constexpr double kSym = 1e-10;
  const double pq = transition_probability(p, q, tol);
  const double qp = transition_probability(q, p, tol);
  pr.close("q o omega_p = p o omega_q", std::abs(pq - qp), kSym);
  pr.close("transition probability matches the trace form", std::abs(pq - trace_form(p, q)), kSym);
  pr.close("trace form is symmetric", std::abs(trace_form(p, q) - trace_form(q, p)), kSym);
  // Scalar route: q o omega_p with omega_p = dagger(p), compared against its
  // own dagger p o omega_q.
  const PsuMap omega_p = dagger(as_pure(effect_as_map(p), tol), tol).map;
  const PsuMap omega_q = dagger(as_pure(effect_as_map(q), tol), tol).map;
  const double s1 = compose(effect_as_map(q), omega_p).matrix()(0, 0);
  const double s2 = compose(effect_as_map(p), omega_q).matrix()(0, 0);
  pr.close("scalar q o omega_p equals its dagger p o omega_q", std::abs(s1 - s2), kSym);
}

void inner_product_definition(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element v = random_element(a, rng);
  const Element w = random_element(a, rng);
  pr.note("v", v);
  pr.note("w", w);
  const AtomicSpectrum sv = atomic_spectrum(v);
  const AtomicSpectrum sw = atomic_spectrum(w);
  auto defined = [](const AtomicSpectrum& x, const AtomicSpectrum& y) {
    double total = 0.0;
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) total += x.values[i] * y.values[j] * trace_form(x.atoms[i], y.atoms[j]);
    return total;
  };
  const double scale = (1.0 + v.norm()) * (1.0 + w.norm());
  const double vw = defined(sv, sw);
  pr.close("defined inner product matches the trace form", std::abs(vw - inner_product(v, w)) / scale, tol.op);
  pr.close("defined inner product is symmetric", std::abs(vw - defined(sw, sv)) / scale, tol.op);
  double squares = 0.0;
  for (double l : sv.values) squares += l * l;
  pr.close("<v, v> = sum of squared eigenvalues", std::abs(inner_product(v, v) - squares) / (1.0 + v.norm() * v.norm()),
           tol.op);
}

constexpr int kDualitySamples = 200;
constexpr double kDualitySlack = 1e-8;

void self_duality(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const std::vector<Element> frame = random_frame(a, rng);
  const bool make_positive = rng.uniform() < 0.5;
  Element v = Element::zero(a);
  const size_t negative_slot = static_cast<size_t>(rng.uniform_int(0, static_cast<int>(frame.size()) - 1));
  for (size_t i = 0; i < frame.size(); ++i) {
    double lambda = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, 2.0);
    if (!make_positive && (i == negative_slot || rng.uniform() < 0.2)) lambda = -rng.uniform(0.01, 1.0);
    v += lambda * frame[i];
  }
  pr.note("v", v);

  // Positive test elements: the atoms of v (the witnesses used in the
  // argument) followed by random atoms, states and effects.
  std::vector<Element> samples = atomic_spectrum(v).atoms;
  while (static_cast<int>(samples.size()) < kDualitySamples) {
    switch (samples.size() % 3) {
      case 0:
        samples.push_back(random_atom(a, rng));
        break;
      case 1:
        samples.push_back(cheap_density(a, rng));
        break;
      default:
        samples.push_back(cheap_effect(a, rng));
        break;
    }
  }
  double lowest = INFINITY;
  for (const Element& s : samples) lowest = std::min(lowest, inner_product(v, s));
  const bool by_inner_product = lowest >= -kDualitySlack;
  const bool by_eigenvalues = is_positive(v, tol);
  pr.expect("eigenvalue and inner-product positivity tests agree", by_inner_product == by_eigenvalues);
  pr.expect("positivity matches the construction", by_eigenvalues == make_positive);
  if (make_positive) pr.close("positive element pairs nonnegatively", std::max(0.0, -lowest), kDualitySlack);
}

void state_convex_decomposition(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const std::vector<Element> frame = random_frame(a, rng);
  std::vector<double> weights(frame.size());
  double total = 0.0;
  for (double& w : weights) {
    w = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.05, 1.0);
    total += w;
  }
  if (total == 0.0) {
    weights.front() = 1.0;
    total = 1.0;
  }
  Element density = Element::zero(a);
  std::vector<double> planted;
  for (size_t i = 0; i < frame.size(); ++i) {
    weights[i] /= total;
    density += weights[i] * frame[i];
    if (weights[i] > 0.0) planted.push_back(weights[i]);
  }
  std::sort(planted.rbegin(), planted.rend());
  pr.note("density", density);

  const std::vector<WeightedState> parts = state_decompose(State{density}, tol);
  double sum = 0.0;
  Element rebuilt = Element::zero(a);
  double cross = 0.0;
  bool pure = true;
  std::vector<double> got;
  for (size_t i = 0; i < parts.size(); ++i) {
    sum += parts[i].weight;
    got.push_back(parts[i].weight);
    rebuilt += parts[i].weight * parts[i].state.density;
    pure = pure && is_pure_state(parts[i].state, tol) && parts[i].weight >= 0.0;
    for (size_t j = i + 1; j < parts.size(); ++j)
      cross = std::max(cross, std::abs(inner_product(parts[i].state.density, parts[j].state.density)));
  }
  pr.close("weights sum to one", std::abs(sum - 1.0), tol.op);
  pr.expect("parts are pure with nonnegative weight", pure);
  pr.close("pure parts sit on orthogonal atoms", cross, tol.op);
  pr.close("mixture reconstructs the state", distance(rebuilt, density), 10.0 * tol.op);
  if (got.size() != planted.size()) {
    pr.expect("weights match the planted mixture", false);
  } else {
    double dw = 0.0;
    for (size_t i = 0; i < got.size(); ++i) dw = std::max(dw, std::abs(got[i] - planted[i]));
    pr.close("weights match the planted mixture", dw, tol.eig);
  }
}

void pure_state_extremal(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const bool make_pure_state = a.rank() == 1 || rng.uniform() < 0.5;
  Element w = random_atom(a, rng);
  if (!make_pure_state) {
    const std::vector<Element> frame = random_frame(a, rng);
    const int k = rng.uniform_int(2, a.rank());
    w = Element::zero(a);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      const double x = rng.uniform(0.05, 1.0);
      w += x * frame[static_cast<size_t>(i)];
      total += x;
    }
    w *= 1.0 / total;
  }
  pr.note("density", w);
  const State omega{w};
  const bool pure = is_pure_state(omega, tol);
  const std::vector<WeightedState> parts = state_decompose(omega, tol);
  pr.expect("pure iff exactly one spectral weight", pure == (parts.size() == 1));
  pr.expect("pure iff the image is atomic", pure == is_atomic(image(state_as_map(w), tol), tol));
  pr.expect("purity matches the construction", pure == make_pure_state);
  if (pure && a.rank() >= 2) {
    // Any state sigma != omega leaves the cone when subtracted from omega.
    const Element sigma = random_element(a, rng, SampleProfile::state);
    pr.expect("pure state admits no proper convex split", min_eigenvalue(w - 1e-3 * sigma) < -tol.pos);
  } else if (parts.size() >= 2) {
    const double l = parts.front().weight;
    const Element rest = (1.0 / (1.0 - l)) * (w - l * parts.front().state.density);
    pr.expect("mixed state splits into distinct states", distance(parts.front().state.density, rest) > 0.1);
    pr.close("split recombines", distance(l * parts.front().state.density + (1.0 - l) * rest, w), tol.op);
    pr.close("split remainder is a state", order_gap(Element::zero(a), rest), tol.pos);
  }
}

constexpr int kBicomplementProbes = 200;

void assert_bicomplement(const AlgebraSpec& a, const ToleranceConfig& tol, Probe& pr, Rng& rng) {
  const Element p = random_sharp(a, rng);
  const Element pc = complement(p);
  pr.note("p", p);
  const PsuMap P = assert_map(p, tol);
  const PsuMap Q = assert_map(pc, tol);
  pr.close("asrt_p is idempotent", map_distance(compose(P, P), P), tol.op);
  pr.close("asrt_{not p} is idempotent", map_distance(compose(Q, Q), Q), tol.op);

  auto zero = [](const Element& x) { return max_abs(x.coords()) <= kDecisionThreshold; };
  auto same = [](const Element& x, const Element& y) { return max_abs_diff(x, y) <= kDecisionThreshold; };
  for (int i = 0; i < kBicomplementProbes; ++i) {
    const int mode = i % 3;
    const Element e = cheap_effect(a, rng);
    const Element q = mode == 0 ? quadratic_rep(p, e) : mode == 1 ? quadratic_rep(pc, e) : e;
    const Element qp = apply(P, q);
    const Element qq = apply(Q, q);
    pr.side("q o P = q iff q o Q = 0", same(qp, q));
    pr.side("q o Q = q iff q o P = 0", same(qq, q));
    pr.expect("q o P = q iff q o Q = 0", same(qp, q) == zero(qq));
    pr.expect("q o Q = q iff q o P = 0", same(qq, q) == zero(qp));
    if (mode == 0) pr.close("effect below p is fixed by asrt_p", max_abs_diff(qp, q), tol.op);
    if (mode == 1) pr.close("effect below not p is killed by asrt_p", max_abs(qp.coords()), tol.op);

    const Element w = cheap_density(a, rng);
    Element d = w;
    if (mode < 2) {
      const Element cut = quadratic_rep(mode == 0 ? p : pc, w);
      const double t = inner_product(cut, Element::unit(a));
      if (t < 1e-6) continue;
      d = (1.0 / t) * cut;
    }
    const State omega{d};
    const Element dp = apply_state(P, omega).density;
    const Element dq = apply_state(Q, omega).density;
    pr.side("P o w = w iff Q o w = 0", same(dp, d));
    pr.side("Q o w = w iff P o w = 0", same(dq, d));
    pr.expect("P o w = w iff Q o w = 0", same(dp, d) == zero(dq));
    pr.expect("Q o w = w iff P o w = 0", same(dq, d) == zero(dp));
    if (mode == 0) pr.close("state inside p is fixed by asrt_p", max_abs_diff(dp, d), tol.op);
  }

  // Assert maps send pure states to multiples of pure states.
  const Element atom = random_atom(a, rng);
  const Element image_density = apply_state(P, pure_state_of_atom(atom, tol)).density;
  int support = 0;
  for (double v : eigenvalues(image_density))
    if (v > tol.sharp) ++support;
  pr.expect("asrt_p maps a pure state to a multiple of a pure state", support <= 1);
}

// ---------------------------------------------------------------------------
// Registry.

using Body = void (*)(const AlgebraSpec&, const ToleranceConfig&, Probe&, Rng&);

enum class Primary { op, refactor, sharp, pos, eig };

struct Entry {
  CheckInfo info;
  Primary primary;
  Body body;
};

double primary_threshold(Primary p, const ToleranceConfig& tol) {
  switch (p) {
    case Primary::refactor:
      return refactor_threshold(tol);
    case Primary::sharp:
      return tol.sharp;
    case Primary::pos:
      return tol.pos;
    case Primary::eig:
      return tol.eig;
    case Primary::op:
      break;
  }
  return tol.op;
}

const std::vector<Entry>& registry() {
  using G = CheckGroup;
  static const std::vector<Entry> entries = {
      {{"filters_and_compressions", G::axiom,
        "Every effect q has a compression (pi#(1) = pi#(q), final among such maps) and a filter "
        "(xi#(1) = q, initial among maps with 1 o f <= q); mediators exist, are unique and positive."},
       Primary::op, filters_and_compressions},
      {{"pure_maps_dagger", G::axiom,
        "Compressions after filters refactor; the dagger of a pure map is pure, involutive and reverses "
        "composition; composites of pure maps are pure."},
       Primary::refactor, pure_maps_dagger},
      {{"images", G::axiom,
        "Every map f has an image: a sharp effect s with f#(s) = f#(1), and a sharp effect p satisfies "
        "f#(p) = f#(1) exactly when s <= p (all sub-projections of the frame for rank <= 4)."},
       Primary::op, images},
      {{"sharp_negation", G::axiom, "The complement of a sharp effect is sharp."}, Primary::sharp, sharp_negation},
      {{"sharp_filter_adjoint", G::axiom,
        "For sharp p the adjoint of a compression for p is a filter for p, and the adjoint of a filter is a "
        "compression."},
       Primary::op, sharp_filter_adjoint},
      {{"sharp_compression_isometry", G::axiom, "For sharp p the compression is an isometry: dagger(pi) o pi = id."},
       Primary::op, sharp_compression_isometry},

      {{"jordan_algebra_identities", G::proposition,
        "Jordan identity, commutativity, unit, associativity of the trace form, spectral reconstruction with "
        "orthogonal idempotents, order norm and paired quaternionic eigenvalues."},
       Primary::op, jordan_algebra_identities},
      {{"map_adjoint_duality", G::proposition,
        "The adjoint is an involution and dual for the inner product; pushing states forward agrees with "
        "pulling effects back."},
       Primary::op, map_adjoint_duality},
      {{"constructed_map_positivity", G::proposition,
        "Filters, compressions, assert maps and their composites are positive and sub-unital."},
       Primary::pos, constructed_map_positivity},
      {{"compression_examples", G::proposition,
        "Matrix examples: the compression of a diagonal projection keeps the top-left block, q + r with r "
        "orthogonal and ||r|| < 1 has the compression of q, and the filter acts as sqrt(q) b sqrt(q)."},
       Primary::op, compression_examples},
      {{"filter_downset", G::proposition,
        "The effects of the filter's system correspond to the effects below q; filters and compressions of 1 "
        "are isomorphisms and those of 0 are zero maps."},
       Primary::refactor, filter_downset},
      {{"filters_faithful", G::proposition, "Compressions are unital, filters are faithful and 1 o xi_q = q."},
       Primary::op, filters_faithful},
      {{"floor_ceiling", G::proposition,
        "floor(q) <= q, floor is idempotent and monotone, ceil(q) o f = 0 iff q o f = 0, "
        "ceil(q o f) = ceil(ceil(q) o f), and q is sharp iff floor(q) = q."},
       Primary::sharp, floor_ceiling},
      {{"ceiling_monotone", G::proposition,
        "Ceilings and floors are monotone, ceil(c q) = ceil(q) for scalars c > 0, and q o f = 0 iff "
        "ceil(q) o f = 0."},
       Primary::sharp, ceiling_monotone},
      {{"sharp_lattice", G::proposition,
        "Sharp effects form a lattice with join ceil(p + q) and meet its De Morgan dual."},
       Primary::sharp, sharp_lattice},
      {{"assert_maps", G::proposition,
        "asrt_p is idempotent with image p and 1 o asrt_p = p; im(f) <= p iff asrt_p o f = f; "
        "1 o f <= p iff f o asrt_p = f."},
       Primary::op, assert_maps},
      {{"sharp_orthogonality", G::proposition,
        "Sharp p and q are orthogonal iff p <= not q iff q <= not p iff q o asrt_p = 0."},
       Primary::op, sharp_orthogonality},
      {{"sharp_addition", G::proposition,
        "Sums of orthogonal sharp effects are sharp joins; p and p + q sharp force q sharp; differences of "
        "nested sharp effects are sharp."},
       Primary::sharp, sharp_addition},
      {{"norm_boundary", G::proposition,
        "||v|| 1 - v lies on the boundary of the cone; ||v|| < 1 puts 1 - v in the interior; sharp effects of "
        "norm below 1 vanish; ceil(p - v) = p and floor(p + v) = p for small v below or beside p."},
       Primary::sharp, norm_boundary},
      {{"interior_ceiling", G::proposition, "An effect has ceiling 1 exactly when it lies in the interior of the cone."},
       Primary::sharp, interior_ceiling},
      {{"unit_norm_floor", G::proposition, "An effect of norm 1 has a nonzero floor."}, Primary::sharp,
       unit_norm_floor},
      {{"orthogonal_independence", G::proposition, "Nonzero orthogonal sharp effects are linearly independent."},
       Primary::op, orthogonal_independence},
      {{"diag_peel", G::proposition,
        "Peeling floors diagonalizes an effect: the planted and eigensolver spectra are reproduced within "
        "rank steps with each residual orthogonal to the peeled floors."},
       Primary::sharp, diag_peel},
      {{"diag_uniqueness", G::proposition,
        "The diagonalization is unique: peel and eigensolver agree, also after re-peeling and under "
        "perturbations below the clustering threshold."},
       Primary::sharp, diag_uniqueness},
      {{"diag_signed", G::proposition,
        "Arbitrary elements diagonalize by shifting into the unit interval; v = v+ - v- with orthogonal "
        "positive parts."},
       Primary::sharp, diag_signed},
      {{"sharp_atomic_refinement", G::proposition,
        "Every nonzero sharp effect is a sum of orthogonal atoms; atoms have one-dimensional downsets."},
       Primary::sharp, sharp_atomic_refinement},
      {{"atomic_spectrum", G::proposition,
        "Every element is a real combination of rank many orthogonal atoms summing to the unit."},
       Primary::sharp, atomic_spectrum_check},
      {{"pure_effects_and_states", G::proposition,
        "An effect is pure iff it is proportional to an atom; a unital state is pure iff its image is atomic."},
       Primary::refactor, pure_effects_and_states},
      {{"atomic_state", G::proposition,
        "An atom q has a unique unital state with image q; it is pure and equals the dagger of q."},
       Primary::sharp, atomic_state},
      {{"pure_distinguish", G::proposition, "For atoms, p o omega_q = 0 iff q o omega_p = 0 iff p and q are orthogonal."},
       Primary::op, pure_distinguish},
      {{"transition_symmetry", G::proposition,
        "Transition probabilities are symmetric: q o omega_p = p o omega_q, by the inner product, the matrix "
        "trace and the dagger of the scalar."},
       Primary::op, transition_symmetry},
      {{"inner_product_definition", G::proposition,
        "The inner product defined from atomic spectra and transition probabilities is well defined, "
        "symmetric and gives <v, v> = sum of squared eigenvalues."},
       Primary::op, inner_product_definition},
      {{"self_duality", G::proposition,
        "v is positive iff <v, w> >= 0 for all positive w; the eigenvalue test and the inner-product test "
        "against 200 positive elements agree."},
       Primary::op, self_duality},
      {{"state_convex_decomposition", G::proposition,
        "Every unital state is a convex combination of pure states on orthogonal atoms."},
       Primary::eig, state_convex_decomposition},
      {{"pure_state_extremal", G::proposition,
        "A state is pure iff it is convex extremal: pure states have one spectral weight and admit no proper "
        "split, mixed states split into distinct states."},
       Primary::op, pure_state_extremal},
      {{"assert_bicomplement", G::proposition,
        "asrt_p is an idempotent with bicomplement asrt_{not p}: all four implication pairs hold on random "
        "effects and states, and pure states stay pure up to scale."},
       Primary::op, assert_bicomplement},
  };
  return entries;
}

const Entry* find_entry(const std::string& id) {
  for (const Entry& e : registry())
    if (e.info.id == id) return &e;
  return nullptr;
}

CheckReport run_entry(const Entry& e, const AlgebraSpec& spec, std::uint64_t seed, int trials,
                      const ToleranceConfig& tol) {
  return run_trials(e.info.id, spec, seed, trials, primary_threshold(e.primary, tol),
                    [&](Probe& pr, Rng& rng) { e.body(spec, tol, pr, rng); });
}

std::vector<CheckReport> run_group(CheckGroup group, const AlgebraSpec& spec, std::uint64_t seed, int trials,
                                   const ToleranceConfig& tol) {
  std::vector<CheckReport> out;
  for (const Entry& e : registry())
    if (e.info.group == group) out.push_back(run_entry(e, spec, seed, trials, tol));
  return out;
}

long long real_dim(long long n) { return n * (n + 1) / 2; }

}  // namespace

// ---------------------------------------------------------------------------
// Generators.

namespace {

PlantedElement plant(const AlgebraSpec& spec, Rng& rng, const std::function<double(Rng&)>& draw) {
  const std::vector<Element> frame = random_frame(spec, rng);
  std::vector<double> values(frame.size());
  for (size_t i = 0; i < frame.size(); ++i) values[i] = (i > 0 && rng.uniform() < 0.15) ? values[i - 1] : draw(rng);
  std::map<double, Element, std::greater<double>> groups;
  for (size_t i = 0; i < frame.size(); ++i) {
    auto it = groups.find(values[i]);
    if (it == groups.end()) {
      groups.emplace(values[i], frame[i]);
    } else {
      it->second += frame[i];
    }
  }
  PlantedElement out{Element::zero(spec), {}, {}};
  for (const auto& [v, p] : groups) {
    out.element += v * p;
    out.values.push_back(v);
    out.projections.push_back(p);
  }
  return out;
}

}  // namespace

PlantedElement planted_effect(const AlgebraSpec& spec, Rng& rng) {
  return plant(spec, rng, [](Rng& r) {
    const double u = r.uniform();
    if (u < 0.2) return 0.0;
    if (u < 0.4) return 1.0;
    return quantize(r.uniform(0.05, 0.95));
  });
}

PlantedElement planted_element(const AlgebraSpec& spec, Rng& rng) {
  return plant(spec, rng, [](Rng& r) { return r.uniform() < 0.15 ? 0.0 : quantize(r.uniform(-3.0, 3.0)); });
}

Element gapped_effect(const AlgebraSpec& spec, Rng& rng) { return planted_effect(spec, rng).element; }

Element filter_effect(const AlgebraSpec& spec, Rng& rng) {
  while (true) {
    PlantedElement p = plant(spec, rng, [](Rng& r) { return r.uniform() < 0.25 ? 0.0 : quantize(r.uniform(0.1, 1.0)); });
    if (p.values.front() > 0.0) return p.element;
  }
}

State random_unital_state(const AlgebraSpec& spec, Rng& rng) {
  while (true) {
    PlantedElement p = plant(spec, rng, [](Rng& r) { return r.uniform() < 0.3 ? 0.0 : r.uniform(0.05, 1.0); });
    const double total = inner_product(p.element, Element::unit(spec));
    if (total > 0.0) return State{(1.0 / total) * p.element};
  }
}

Element random_subprojection(const Element& u, Rng& rng, int min_rank, const ToleranceConfig& tol) {
  const Corner c = corner_spec(u, tol);
  if (c.spec.is_null()) return Element::zero(u.spec());
  const int k = rng.uniform_int(std::min(min_rank, c.spec.rank()), c.spec.rank());
  const Element r = random_sharp(c.spec, rng, k);
  return Element(u.spec(), c.embedding * r.coords());
}

PsuMap random_psu(const AlgebraSpec& source, const AlgebraSpec& target, Rng& rng) {
  if (source.is_null() || target.is_null())
    return PsuMap(source, target, Eigen::MatrixXd::Zero(source.dim(), target.dim()));
  // Redraw while (f#)^T(1), whose ceiling is the image, has an eigenvalue
  // just above zero.
  for (int attempt = 0;; ++attempt) {
    PsuMap f = random_psu_once(source, target, rng);
    if (attempt == 15 || clear_of_threshold(Element(target, f.matrix().transpose() * Element::unit(source).coords())))
      return f;
  }
}

namespace {

PsuMap random_psu_once(const AlgebraSpec& source, const AlgebraSpec& target, Rng& rng) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(source.dim(), target.dim());
  const int terms = rng.uniform_int(1, 3);
  for (int i = 0; i < terms; ++i) {
    Element w = Element::zero(target);
    const int atoms = rng.uniform_int(1, std::max(1, target.rank() / 2));
    for (int k = 0; k < atoms; ++k) w += rng.uniform(0.2, 1.0) * random_atom(target, rng);
    const Element e = gapped_effect(source, rng);
    f += rng.uniform(0.2, 1.0) * e.coords() * w.coords().transpose();
  }
  if (source == target && rng.uniform() < 0.5) {
    f += rng.uniform(0.2, 1.0) * quadratic_rep_matrix(gapped_effect(source, rng));
  }
  const double top = max_eigenvalue(Element(source, f * Element::unit(target).coords()));
  if (top > 0.0) f *= rng.uniform(0.4, 1.0) / top;
  return PsuMap(source, target, f);
}

}  // namespace

PsuMap effect_as_map(const Element& q) {
  return PsuMap(q.spec(), AlgebraSpec::trivial(), Eigen::MatrixXd(q.coords()));
}

PsuMap state_as_map(const Element& w) {
  return PsuMap(AlgebraSpec::trivial(), w.spec(), Eigen::MatrixXd(w.coords().transpose()));
}

// ---------------------------------------------------------------------------
// Suites.

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = [] {
    std::vector<CheckInfo> out;
    for (const Entry& e : registry()) out.push_back(e.info);
    out.push_back({"scalar_self_adjoint", CheckGroup::scalar,
                   "Scalars of the trivial system compose by multiplication, equal their dagger and have effects "
                   "behaving as [0, 1]."});
    out.push_back({"composite_properties", CheckGroup::composite,
                   "Composites of atoms are atoms of unit norm, product states have product densities, orthogonality "
                   "and frames are preserved and tensors of spanning atom families stay independent."});
    out.push_back({"composite_dimensions", CheckGroup::composite,
                   "rank(V (x) W) = rank V rank W; dim equality for complex and strict inequality for real "
                   "factors of size >= 2."});
    out.push_back({"complex_real_exclusion", CheckGroup::composite,
                   "A complex and a real factor of size >= 2 never share a simple composite."});
    out.push_back({"classification_scan", CheckGroup::composite,
                   "Dimension counting over tensor powers excludes quaternionic, spin (dim >= 5) and exceptional "
                   "factors while real and complex survive."});
    return out;
  }();
  return catalog;
}

std::vector<CheckReport> run_axiom_suite(const AlgebraSpec& spec, std::uint64_t seed, int trials,
                                         const ToleranceConfig& tol) {
  return run_group(CheckGroup::axiom, spec, seed, trials, tol);
}

std::vector<CheckReport> run_proposition_suite(const AlgebraSpec& spec, std::uint64_t seed, int trials,
                                               const ToleranceConfig& tol) {
  return run_group(CheckGroup::proposition, spec, seed, trials, tol);
}

CheckReport run_check(const std::string& id, const AlgebraSpec& spec, std::uint64_t seed, int trials,
                      const ToleranceConfig& tol) {
  const Entry* e = find_entry(id);
  if (e == nullptr) throw ValidationError("unknown check id '" + id + "'");
  return run_entry(*e, spec, seed, trials, tol);
}

CheckReport check_sharp_isometry(const AlgebraSpec& spec, std::uint64_t seed, int trials, const ToleranceConfig& tol,
                                 const std::function<PsuMap(const Element&)>& compression) {
  return run_trials("sharp_compression_isometry", spec, seed, trials, tol.op,
                    [&](Probe& pr, Rng& rng) { isometry_trial(spec, tol, pr, rng, compression); });
}

CheckReport run_scalar_checks(std::uint64_t seed, int trials, const ToleranceConfig& tol) {
  const AlgebraSpec one = AlgebraSpec::trivial();
  auto scalar = [&](double s) { return PsuMap(one, one, Eigen::MatrixXd::Constant(1, 1, s)); };
  auto effect = [&](double s) { return Element(one, Eigen::VectorXd::Constant(1, s)); };
  return run_trials("scalar_self_adjoint", one, seed, trials, tol.op, [&](Probe& pr, Rng& rng) {
    const double s = rng.uniform();
    const double t = rng.uniform();
    pr.note("s", s);
    pr.note("t", t);
    pr.close("s o t = s t", std::abs(compose(scalar(s), scalar(t)).matrix()(0, 0) - s * t), tol.op);
    pr.close("adjoint(s) = s", std::abs(adjoint(scalar(s)).matrix()(0, 0) - s), tol.op);
    pr.close("dagger(s) = s", std::abs(dagger(as_pure(scalar(s), tol), tol).map.matrix()(0, 0) - s), tol.op);
    pr.close("complement(s) = 1 - s", std::abs(complement(effect(s)).coords()(0) - (1.0 - s)), tol.op);
    pr.expect("s <= t as effects iff as numbers", leq(effect(s), effect(t), tol) == (s <= t));
    pr.expect("floor of an interior scalar is 0", floor(effect(s), tol).coords()(0) == 0.0);
    pr.expect("ceiling of a nonzero scalar is 1", std::abs(ceiling(effect(s), tol).coords()(0) - 1.0) <= tol.op);
    pr.expect("only 0 and 1 are sharp", is_sharp(effect(s), tol) == false && is_sharp(effect(0.0), tol) &&
                                            is_sharp(effect(1.0), tol));
    pr.close("0.3 o 0.5 = 0.15", std::abs(compose(scalar(0.3), scalar(0.5)).matrix()(0, 0) - 0.15), tol.op);
    pr.close("complement(1) = 0", std::abs(complement(effect(1.0)).coords()(0)), 0.0);
  });
}

std::vector<CheckReport> run_composite_suite(std::uint64_t seed, int trials, const ToleranceConfig& tol) {
  using F = FactorKind;
  std::vector<CheckReport> out;
  const std::vector<std::pair<AlgebraSpec, AlgebraSpec>> pairs = {
      {AlgebraSpec({F::real(2)}), AlgebraSpec({F::real(3)})},
      {AlgebraSpec({F::complex(2)}), AlgebraSpec({F::complex(3)})},
      {AlgebraSpec({F::complex(2)}), AlgebraSpec({F::complex(2)})},
      {AlgebraSpec({F::real(1)}), AlgebraSpec({F::complex(3)})},
      {AlgebraSpec({F::complex(2), F::complex(1)}), AlgebraSpec({F::complex(2)})},
  };
  for (const auto& [l, r] : pairs) out.push_back(check_composite_props(l, r, seed, trials, tol));

  {
    CheckRecorder rec("composite_dimensions", AlgebraSpec::trivial(), seed, 0.0);
    json table = json::array();
    for (int n = 1; n <= 4; ++n) {
      for (int m = 1; m <= 4; ++m) {
        for (FactorType type : {FactorType::real, FactorType::complex}) {
          const TensorComposite c = tensor_matrix(AlgebraSpec({F{type, n}}), AlgebraSpec({F{type, m}}));
          const long long dv = type == FactorType::real ? real_dim(n) : n * n;
          const long long dw = type == FactorType::real ? real_dim(m) : m * m;
          const long long dc = type == FactorType::real ? real_dim(n * m) : n * m * n * m;
          const bool strict = type == FactorType::real && n >= 2 && m >= 2;
          const bool ok = c.spec.rank() == n * m && c.spec.dim() == dc &&
                          (type == FactorType::complex ? dc == dv * dw : (strict ? dc > dv * dw : dc >= dv * dw));
          json row = {{"kind", type == FactorType::real ? "real" : "complex"},
                      {"n", n},
                      {"m", m},
                      {"rank", c.spec.rank()},
                      {"dim", c.spec.dim()},
                      {"dim_product", dv * dw}};
          rec.record_bool(ok, [&] { return row; });
          table.push_back(row);
        }
      }
    }
    rec.details()["table"] = table;
    out.push_back(rec.finish());
  }

  {
    CheckRecorder rec("complex_real_exclusion", AlgebraSpec::trivial(), seed, 0.0);
    json rows = json::array();
    for (int n = 2; n <= 4; ++n) {
      for (int m = 1; m <= 4; ++m) {
        const CheckReport r = check_mixed_exclusion(n, m);
        bool rejected = false;
        try {
          tensor_matrix(AlgebraSpec({F::complex(n)}), AlgebraSpec({F::real(m)}));
        } catch (const MixedKindError&) {
          rejected = true;
        }
        const bool excluded = r.details.value("excluded", false);
        const json row = {{"n", n}, {"m", m}, {"excluded", excluded}, {"tensor_rejected", rejected}};
        rec.record_bool(r.passed() && excluded == (m >= 2) && rejected == (m >= 2), [&] { return row; });
        rows.push_back(row);
      }
    }
    rec.details()["pairings"] = rows;
    out.push_back(rec.finish());
  }

  {
    CheckRecorder rec("classification_scan", AlgebraSpec::trivial(), seed, 0.0);
    const ScanResult scan = scan_closure(8, 4);
    for (const ScanRow& row : scan.rows) {
      const CatalogEntry& e = row.entry;
      bool ok = true;
      switch (e.kind) {
        case CatalogKind::real:
        case CatalogKind::complex:
          ok = row.excluded_at_power == 0;
          break;
        case CatalogKind::quaternion:
        case CatalogKind::exceptional:
          ok = row.excluded_at_power == 2;
          break;
        case CatalogKind::spin:
          ok = e.dim >= 5 ? (row.excluded_at_power >= 2 && row.excluded_at_power <= 3) : row.excluded_at_power == 0;
          break;
      }
      rec.record_bool(ok, [&] {
        return json{{"kind", catalog_kind_name(e.kind)},
                    {"rank", e.rank},
                    {"dim", e.dim},
                    {"excluded_at_power", row.excluded_at_power}};
      });
    }
    for (const MixedPairing& m : scan.mixed) {
      rec.record_bool(m.tensor_rejected && m.excluded, [&] {
        return json{{"real_rank", m.real_rank}, {"complex_rank", m.complex_rank}};
      });
    }
    rec.details()["scan"] = scan_to_json(scan);
    out.push_back(rec.finish());
  }
  return out;
}

std::vector<AlgebraSpec> default_grid() {
  using F = FactorKind;
  std::vector<AlgebraSpec> grid;
  for (FactorType type : {FactorType::real, FactorType::complex, FactorType::quaternion})
    for (int n = 1; n <= 4; ++n) grid.push_back(AlgebraSpec({F{type, n}}));
  for (int k = 2; k <= 6; ++k) grid.push_back(AlgebraSpec({F::spin(k)}));
  grid.push_back(AlgebraSpec({F::complex(2), F::spin(3), F::real(1)}));
  grid.push_back(AlgebraSpec({F::real(3), F::quaternion(2)}));
  return grid;
}

std::vector<CheckReport> run_grid(std::uint64_t seed, int trials, const ToleranceConfig& tol) {
  std::vector<CheckReport> out;
  for (const AlgebraSpec& spec : default_grid()) {
    for (CheckReport& r : run_axiom_suite(spec, seed, trials, tol)) out.push_back(std::move(r));
    for (CheckReport& r : run_proposition_suite(spec, seed, trials, tol)) out.push_back(std::move(r));
  }
  out.push_back(run_scalar_checks(seed, trials, tol));
  for (CheckReport& r : run_composite_suite(seed, trials, tol)) out.push_back(std::move(r));
  return out;
}

}  // namespace ejakit

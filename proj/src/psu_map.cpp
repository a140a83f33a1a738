#include "ejakit/psu_map.hpp"

#include <algorithm>

#include "ejakit/errors.hpp"
#include "ejakit/random.hpp"

namespace ejakit {

PsuMap::PsuMap(AlgebraSpec source, AlgebraSpec target, Eigen::MatrixXd matrix, bool validated)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)), validated_(validated) {
  if (matrix_.rows() != source_.dim() || matrix_.cols() != target_.dim()) {
    throw StructuralError("map " + source_.name() + " -> " + target_.name() + " needs a " +
                          std::to_string(source_.dim()) + "x" + std::to_string(target_.dim()) + " matrix, got " +
                          std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
  }
}

PsuMap PsuMap::identity(const AlgebraSpec& spec) {
  return PsuMap(spec, spec, Eigen::MatrixXd::Identity(spec.dim(), spec.dim()));
}

PsuMap PsuMap::zero(const AlgebraSpec& source, const AlgebraSpec& target) {
  return PsuMap(source, target, Eigen::MatrixXd::Zero(source.dim(), target.dim()));
}

PsuMap PsuMap::from_linear(const AlgebraSpec& source, const AlgebraSpec& target,
                           const std::function<Element(const Element&)>& heisenberg, bool validated) {
  Eigen::MatrixXd m(source.dim(), target.dim());
  for (int j = 0; j < target.dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(target.dim());
    e(j) = 1.0;
    const Element out = heisenberg(Element(target, std::move(e)));
    require_same_spec(out.spec(), source, "PsuMap::from_linear");
    m.col(j) = out.coords();
  }
  return PsuMap(source, target, std::move(m), validated);
}

PsuMap compose(const PsuMap& g, const PsuMap& f) {
  require_same_spec(f.target(), g.source(), "compose");
  return PsuMap(f.source(), g.target(), f.matrix() * g.matrix(), f.validated() && g.validated());
}

Element apply(const PsuMap& f, const Element& q) {
  require_same_spec(q.spec(), f.target(), "apply");
  return Element(f.source(), f.matrix() * q.coords());
}

State apply_state(const PsuMap& f, const State& omega) {
  require_same_spec(omega.density.spec(), f.source(), "apply_state");
  return State{Element(f.target(), f.matrix().transpose() * omega.density.coords())};
}

PsuMap adjoint(const PsuMap& f) { return PsuMap(f.target(), f.source(), f.matrix().transpose(), false); }

Element image(const PsuMap& f, const ToleranceConfig& tol) {
  if (f.target().is_null()) return Element::zero(f.target());
  const Element pushed(f.target(), f.matrix().transpose() * Element::unit(f.source()).coords());
  return ceiling(pushed, tol);
}

bool is_unital(const PsuMap& f, const ToleranceConfig& tol) {
  return distance(apply(f, Element::unit(f.target())), Element::unit(f.source())) <= tol.op;
}

bool is_subunital(const PsuMap& f, const ToleranceConfig& tol) {
  return leq(apply(f, Element::unit(f.target())), Element::unit(f.source()), tol);
}

bool is_faithful(const PsuMap& f, const ToleranceConfig& tol) {
  return sharp_rank(image(f, tol), tol) == f.target().rank();
}

double map_distance(const PsuMap& f, const PsuMap& g) {
  require_same_spec(f.source(), g.source(), "map_distance");
  require_same_spec(f.target(), g.target(), "map_distance");
  if (f.matrix().size() == 0) return 0.0;
  return (f.matrix() - g.matrix()).cwiseAbs().maxCoeff();
}

CheckReport positivity_check(const PsuMap& f, int trials, std::uint64_t seed, const ToleranceConfig& tol) {
  CheckRecorder rec("map_positivity", f.source().is_null() ? AlgebraSpec::trivial() : f.source(), seed, tol.pos);
  if (f.target().is_null() || f.source().is_null()) return rec.finish();
  const std::uint64_t salt = stable_hash("map_positivity");
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(t), salt);
    const Element p = random_atom(f.target(), rng);
    const double low = min_eigenvalue(apply(f, p));
    rec.record(std::max(0.0, -low), [&] {
      return nlohmann::json{{"atom", std::vector<double>(p.coords().data(), p.coords().data() + p.dim())},
                            {"min_eigenvalue", low}};
    });
  }
  return rec.finish();
}

}  // namespace ejakit

#include "ejakit/filters.hpp"

#include <cmath>
#include <limits>

#include "ejakit/errors.hpp"
#include "ejakit/random.hpp"

namespace ejakit {

namespace {

// Columns of the corner inside one factor block, in corner coordinates.
Eigen::MatrixXd factor_embedding(const FactorKind& ambient, const FactorKind& corner, const Eigen::MatrixXcd& u) {
  Eigen::MatrixXd e(ambient.dim(), corner.dim());
  for (int j = 0; j < corner.dim(); ++j) {
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(corner.dim());
    unit(j) = 1.0;
    const Eigen::MatrixXcd x = coords_to_matrix(corner, unit);
    e.col(j) = matrix_to_coords(ambient, u * x * u.adjoint());
  }
  return e;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Corner corner_spec(const Element& p, const ToleranceConfig& tol) {
  require_sharp(p, tol, "corner_spec");
  const AlgebraSpec& spec = p.spec();
  std::vector<FactorKind> kinds;
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<int> owners;
  for (int f = 0; f < spec.num_factors(); ++f) {
    const FactorKind& kind = spec.factor(f);
    const FactorFrame frame = factor_frame(p, f);
    int k = 0;
    while (k < frame.size() && frame.values(k) >= 0.5) ++k;
    if (k == 0) continue;
    FactorKind ck = kind;
    Eigen::MatrixXd block;
    if (kind.type == FactorType::spin) {
      if (k == 2) {
        block = Eigen::MatrixXd::Identity(kind.dim(), kind.dim());
      } else {
        ck = FactorKind::real(1);
        block = frame.atom_coords(0);
      }
    } else if (k == kind.size) {
      block = Eigen::MatrixXd::Identity(kind.dim(), kind.dim());
    } else {
      ck.size = k;
      const int cols = kind.type == FactorType::quaternion ? 2 * k : k;
      block = factor_embedding(kind, ck, frame.vectors.leftCols(cols));
    }
    kinds.push_back(ck);
    blocks.push_back(std::move(block));
    owners.push_back(f);
  }
  Corner c{spec, kinds.empty() ? AlgebraSpec::null_system() : AlgebraSpec(kinds), Eigen::MatrixXd(), p};
  c.embedding = Eigen::MatrixXd::Zero(spec.dim(), c.spec.dim());
  for (size_t i = 0; i < blocks.size(); ++i) {
    const int f = owners[i];
    c.embedding.block(spec.offset(f), c.spec.offset(static_cast<int>(i)), blocks[i].rows(), blocks[i].cols()) =
        blocks[i];
  }
  return c;
}

Eigen::MatrixXd quadratic_rep_matrix(const Element& a) {
  const AlgebraSpec& spec = a.spec();
  Eigen::MatrixXd m(spec.dim(), spec.dim());
  for (int j = 0; j < spec.dim(); ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(spec.dim());
    e(j) = 1.0;
    m.col(j) = quadratic_rep(a, Element(spec, std::move(e))).coords();
  }
  return m;
}

PsuMap compression_for(const Element& q, const ToleranceConfig& tol) {
  require_effect(q, tol, "compression_for");
  const Corner c = corner_spec(floor(q, tol), tol);
  return PsuMap(c.spec, q.spec(), c.embedding.transpose());
}

PsuMap filter_for(const Element& q, const ToleranceConfig& tol) {
  require_effect(q, tol, "filter_for");
  const Corner c = corner_spec(ceiling(q, tol), tol);
  return PsuMap(q.spec(), c.spec, quadratic_rep_matrix(effect_sqrt(q)) * c.embedding);
}

PsuMap assert_map(const Element& p, const ToleranceConfig& tol) {
  const Corner c = corner_spec(p, tol);
  return PsuMap(p.spec(), p.spec(), c.embedding * c.embedding.transpose());
}

double jordan_isomorphism_defect(const AlgebraSpec& from, const AlgebraSpec& to, const Eigen::MatrixXd& m) {
  if (m.rows() != to.dim() || m.cols() != from.dim()) return std::numeric_limits<double>::infinity();
  if (from.dim() == 0) return 0.0;
  double defect = (m * Element::unit(from).coords() - Element::unit(to).coords()).cwiseAbs().maxCoeff();
  defect = std::max(defect, max_abs(m.transpose() * m - Eigen::MatrixXd::Identity(from.dim(), from.dim())));
  Rng rng(0x6a6f7264616eULL);
  for (int t = 0; t < 3; ++t) {
    const Element x = random_element(from, rng);
    const Element y = random_element(from, rng);
    const Element lhs(to, m * jordan_product(x, y).coords());
    const Element rhs = jordan_product(Element(to, m * x.coords()), Element(to, m * y.coords()));
    defect = std::max(defect, (lhs.coords() - rhs.coords()).cwiseAbs().maxCoeff() / (x.norm() * y.norm()));
  }
  return defect;
}

Refactorization refactor(const PsuMap& h, const ToleranceConfig& tol) {
  const Element q = apply(h, Element::unit(h.target()));
  const Element s = image(h, tol);
  const Corner cq = corner_spec(ceiling(q, tol), tol);
  const Corner cs = corner_spec(s, tol);
  const Eigen::MatrixXd xi = quadratic_rep_matrix(effect_sqrt(q)) * cq.embedding;

  Refactorization r{q, s, Eigen::MatrixXd(), cq.spec, cs.spec};
  const Eigen::MatrixXd rhs = h.matrix() * cs.embedding;
  if (xi.cols() == 0) {
    r.theta = Eigen::MatrixXd::Zero(0, rhs.cols());
  } else {
    r.theta = xi.colPivHouseholderQr().solve(rhs);
  }
  r.recompose_residual = max_abs(xi * r.theta * cs.embedding.transpose() - h.matrix());
  r.isomorphism_defect = jordan_isomorphism_defect(cs.spec, cq.spec, r.theta);
  return r;
}

double refactor_threshold(const ToleranceConfig& tol) { return 10.0 * tol.op; }

PureMap as_pure(const PsuMap& h, const ToleranceConfig& tol) {
  const Refactorization r = refactor(h, tol);
  if (!(r.residual() <= refactor_threshold(tol))) {
    throw ValidationError("map does not factor as a compression after a filter (residual " +
                          std::to_string(r.residual()) + ")");
  }
  return PureMap{PsuMap(h.source(), h.target(), h.matrix()), PureWitness{r.filter_effect, r.filter_corner, r.image}};
}

PureMap make_pure(const Element& q, const Element& p_inside, const ToleranceConfig& tol) {
  const PsuMap xi = filter_for(q, tol);
  require_same_spec(p_inside.spec(), xi.target(), "make_pure");
  const PsuMap asrt = assert_map(p_inside, tol);
  const Corner mid = corner_spec(p_inside, tol);
  return PureMap{compose(asrt, xi), PureWitness{apply(xi, p_inside), mid.spec, p_inside}};
}

PureMap dagger(const PureMap& f, const ToleranceConfig& tol) {
  return as_pure(PsuMap(f.map.target(), f.map.source(), f.map.matrix().transpose()), tol);
}

bool is_pure_consistent(const PureMap& f, const ToleranceConfig& tol) {
  const PureWitness& w = f.witness;
  if (!(w.filter_effect.spec() == f.map.source()) || !(w.compression_projection.spec() == f.map.target())) {
    return false;
  }
  const Refactorization r = refactor(f.map, tol);
  const double thr = refactor_threshold(tol);
  return r.residual() <= thr && distance(r.filter_effect, w.filter_effect) <= thr &&
         distance(r.image, w.compression_projection) <= thr && r.filter_corner.dim() == w.mid_spec.dim() &&
         r.filter_corner.rank() == w.mid_spec.rank();
}

}  // namespace ejakit

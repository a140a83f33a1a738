#include "ejakit/diagonalize.hpp"

#include <cmath>

#include "ejakit/errors.hpp"
#include "ejakit/serialize.hpp"

namespace ejakit {

PeelResult peel_diagonalize_traced(const Element& v, const ToleranceConfig& tol) {
  require_effect(v, tol, "peel_diagonalize");
  const AlgebraSpec& spec = v.spec();
  PeelResult out;
  Element residual = v;
  Element accumulated = Element::zero(spec);
  const int limit = spec.rank() + 1;
  while (true) {
    const double lambda = order_norm(residual);
    if (lambda < tol.eig) break;
    if (static_cast<int>(out.steps.size()) >= limit) {
      throw InternalError("peel_diagonalize did not terminate within rank + 1 = " + std::to_string(limit) + " steps");
    }
    const Element p = floor((1.0 / lambda) * residual, tol);
    if (sharp_rank(p, tol) == 0) throw InternalError("peel_diagonalize produced an empty floor");
    residual -= lambda * p;
    accumulated += p;
    const double defect = inner_product(ceiling(residual, tol), accumulated);
    out.steps.push_back({lambda, p, defect});
    out.decomposition.values.push_back(lambda);
    out.decomposition.projections.push_back(p);
    out.decomposition.atoms.push_back(atomic_refinement(p, tol));
  }
  return out;
}

SpectralDecomposition peel_diagonalize(const Element& v, const ToleranceConfig& tol) {
  return peel_diagonalize_traced(v, tol).decomposition;
}

SignedDecomposition diagonalize_general(const Element& a, const ToleranceConfig& tol) {
  require_finite(a, "diagonalize_general");
  const AlgebraSpec& spec = a.spec();
  const Element one = Element::unit(spec);
  const double n = std::max(1.0, std::ceil(order_norm(a)));
  const SpectralDecomposition shifted = peel_diagonalize((1.0 / (2.0 * n)) * (a + n * one), tol);

  SignedDecomposition out{{}, Element::zero(spec), Element::zero(spec)};
  Element covered = Element::zero(spec);
  auto push = [&](double value, const Element& p, std::vector<Element> atoms) {
    if (std::abs(value) < tol.eig) return;
    out.decomposition.values.push_back(value);
    out.decomposition.projections.push_back(p);
    out.decomposition.atoms.push_back(std::move(atoms));
    if (value > 0.0) {
      out.positive += value * p;
    } else {
      out.negative -= value * p;
    }
  };
  for (size_t i = 0; i < shifted.size(); ++i) {
    push(2.0 * n * shifted.values[i] - n, shifted.projections[i], shifted.atoms[i]);
    covered += shifted.projections[i];
  }
  // The part of the unit not reached by the peel carries eigenvalue -n.
  const Element rest = complement(covered);
  if (sharp_rank(rest, tol) > 0) push(-n, rest, atomic_refinement(rest, tol));
  return out;
}

CheckReport check_uniqueness(const Element& v, std::uint64_t seed, const ToleranceConfig& tol) {
  CheckRecorder rec("diag_uniqueness", v.spec(), seed, tol.eig);
  auto exemplar = [&] { return json{{"effect", element_to_json(v, "effect")}}; };

  const SpectralDecomposition eig = spectral_decompose(v, tol);
  SpectralDecomposition oracle;
  for (size_t i = 0; i < eig.size(); ++i) {
    if (eig.values[i] < tol.eig) continue;
    oracle.values.push_back(eig.values[i]);
    oracle.projections.push_back(eig.projections[i]);
  }

  auto compare = [&](const SpectralDecomposition& peel) {
    if (peel.size() != oracle.size()) {
      rec.record_bool(false, [&] {
        json ex = exemplar();
        ex["peel_clusters"] = peel.size();
        ex["oracle_clusters"] = oracle.size();
        return ex;
      });
      return;
    }
    double dl = 0.0;
    double dp = 0.0;
    for (size_t i = 0; i < peel.size(); ++i) {
      dl = std::max(dl, std::abs(peel.values[i] - oracle.values[i]));
      dp = std::max(dp, distance(peel.projections[i], oracle.projections[i]));
    }
    rec.record(dl, tol.eig, exemplar);
    rec.record(dp, tol.sharp, exemplar);
  };

  const SpectralDecomposition peel = peel_diagonalize(v, tol);
  compare(peel);
  rec.record(distance(peel.reconstruct(v.spec()), v), tol.sharp, exemplar);
  compare(peel_diagonalize(peel.reconstruct(v.spec()), tol));
  return rec.finish();
}

}  // namespace ejakit

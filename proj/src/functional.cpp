#include "kirchhoff/functional.hpp"

#include "kirchhoff/potential.hpp"

#include <algorithm>
#include <cmath>

namespace kirchhoff {

double potential_energy(const RadialField& u, const PotentialSpec& V) {
  if (V.is_zero()) return 0.0;
  double s = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u.weights[i] == 0.0 || u.values[i] == 0.0) continue;
    s += u.weights[i] * V.value(u.nodes[i]) * u.values[i] * u.values[i];
  }
  return 0.5 * s;
}

FunctionalValue evaluate_I(const RadialField& u, const ModelParams& m, const PotentialSpec* V) {
  const auto n = norms(u, m.p);
  FunctionalValue f;
  f.kinetic = 0.5 * m.a * n.gradl2sq;
  f.kirchhoff = 0.25 * m.b * n.gradl2sq * n.gradl2sq;
  f.potential = V ? potential_energy(u, *V) : 0.0;
  f.nonlinear = n.lpp / m.p;
  f.total = f.kinetic + f.kirchhoff + f.potential - f.nonlinear;
  return f;
}

namespace {

double residual_max(const RadialField& u, double coef, double lambda, double p, const PotentialSpec* V) {
  const Eigen::VectorXd lap = radial_laplacian(u);
  double worst = 0;
  for (Eigen::Index i = 0; i + 1 < u.size(); ++i) {
    const double x = u.values[i];
    double pot = lambda;
    if (V && x != 0.0) pot += V->value(u.nodes[i]);
    const double nonlin = abs_pow(x, p - 1.0) * (x < 0 ? -1.0 : 1.0);
    const double r = -coef * lap[i] + pot * x - nonlin;
    if (std::isfinite(r)) worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

PdeResidual pde_residual(const RadialField& u, double lambda, const ModelParams& m, const PotentialSpec* V) {
  PdeResidual out;
  const double umax = u.values.cwiseAbs().maxCoeff();
  if (umax == 0.0) return out;
  const double coef = m.a + m.b * norms(u, m.p).gradl2sq;
  out.residual = residual_max(u, coef, lambda, m.p, V);

  RadialField coarse;
  coarse.dim = u.dim;
  coarse.spacing = 2 * u.spacing;
  const Eigen::Index nc = (u.size() - 1) / 2 + 1;
  coarse.nodes.resize(nc);
  coarse.values.resize(nc);
  for (Eigen::Index i = 0; i < nc; ++i) {
    coarse.nodes[i] = u.nodes[2 * i];
    coarse.values[i] = u.values[2 * i];
  }
  out.coarse = residual_max(coarse, coef, lambda, m.p, V);
  out.scale = std::pow(umax, m.p - 1.0);
  out.tooCoarse = out.estimate() > 1e-6 * out.scale;
  return out;
}

PohozaevNehari pohozaev_nehari_residuals(const RadialField& u, double lambda, const ModelParams& m) {
  const auto n = norms(u, m.p);
  const double kin = m.a * n.gradl2sq + m.b * n.gradl2sq * n.gradl2sq;
  return {kin - m.N * (m.p - 2.0) / (2.0 * m.p) * n.lpp, kin + lambda * n.l2sq - n.lpp};
}

}  // namespace kirchhoff

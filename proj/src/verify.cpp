#include "kirchhoff/verify.hpp"

#include "kirchhoff/functional.hpp"

#include <algorithm>
#include <cmath>

namespace kirchhoff {

namespace {

Check check(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

VerifyReport verify_instance(const ProblemParams& pr, const VerifyTolerances& tol) {
  check_problem(pr);
  VerifyReport rep;
  rep.params = pr;
  const Regime reg = classify(pr);
  rep.regime = reg.tag;
  rep.cStar = reg.cStar;

  const double pq = is_kirchhoff_critical(pr.N, pr.p) ? kirchhoff_critical_exponent(pr.N) : pr.p;
  const auto qp = qp_profile(pr.N, pq);
  rep.profileChecks.push_back(check("gn_l2_vs_grad", rel(qp->gradl2sq, qp->l2sq), tol.gnIdentity));
  rep.profileChecks.push_back(check("gn_l2_vs_lpp", rel(2.0 / pq * qp->lpp, qp->l2sq), tol.gnIdentity));
  rep.profileChecks.push_back(check("gn_grad_vs_lpp", rel(2.0 / pq * qp->lpp, qp->gradl2sq), tol.gnIdentity));

  const ModelParams m = pr.model();
  for (const auto& br : root_equation_solve(pr, qp->l2norm())) {
    BranchVerification bv;
    bv.branch = br;
    const RadialField u = build_solution(br, pr, *qp);
    const auto n = norms(u, pr.p);
    const auto pn = pohozaev_nehari_residuals(u, br.lambda, m);
    const double scale = m.a * n.gradl2sq + m.b * n.gradl2sq * n.gradl2sq;
    const auto I = evaluate_I(u, m);
    bv.checks.push_back(check("root_residual", std::abs(root_residual(pr, qp->l2norm(), br.Dsq)), tol.rootResidual));
    bv.checks.push_back(check("mass_error", rel(n.l2sq, pr.c * pr.c), tol.mass));
    bv.checks.push_back(check("gradient_error", rel(n.gradl2sq, br.Dsq), tol.gradient));
    bv.checks.push_back(check("pohozaev", std::abs(pn.pohozaev) / scale, tol.pohozaevNehari));
    bv.checks.push_back(check("nehari", std::abs(pn.nehari) / scale, tol.pohozaevNehari));
    bv.checks.push_back(check("energy_error", rel(I.total, br.energy), tol.energy));
    const auto pde = pde_residual(u, br.lambda, m);
    bv.pdeResidual = pde.residual;
    bv.pdeEstimate = pde.estimate();
    bv.pdeTooCoarse = pde.tooCoarse;
    bv.checks.push_back({"pde_residual", pde.residual, pde.estimate(), pde.within_estimate()});
    rep.branches.push_back(std::move(bv));
  }
  auto ok = [](const Check& c) { return c.passed; };
  rep.passed = std::all_of(rep.profileChecks.begin(), rep.profileChecks.end(), ok) &&
               std::all_of(rep.branches.begin(), rep.branches.end(),
                           [&](const BranchVerification& b) { return std::all_of(b.checks.begin(), b.checks.end(), ok); });
  return rep;
}

}  // namespace kirchhoff

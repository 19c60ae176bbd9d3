#include "kirchhoff/limit_solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace kirchhoff {

std::string_view to_string(BranchTag tag) {
  switch (tag) {
    case BranchTag::Unique: return "Unique";
    case BranchTag::Lower: return "Lower";
    case BranchTag::Upper: return "Upper";
  }
  return "unknown";
}

namespace {

// Exponent under which the profile is cached; p = 2 + 8/N is snapped so
// every caller shares one profile.
double profile_exponent(int N, double p) { return is_kirchhoff_critical(N, p) ? kirchhoff_critical_exponent(N) : p; }

struct RootEquation {
  double a, b, s, k, logK, logC;

  RootEquation(const ProblemParams& pr, double qpNorm) : a(pr.a), b(pr.b) {
    s = scaling_degree(pr.N, pr.p);
    const double zeta = 2.0 * pr.N - pr.p * (pr.N - 2.0);
    k = 4.0 / (s - 4.0);
    logK = 4.0 / (4.0 - s) * std::log(4.0 / s) + 4.0 * (pr.p - 2.0) / (4.0 - s) * std::log(qpNorm);
    logC = 2.0 * zeta / (4.0 - s) * std::log(pr.c);
  }

  double g(double t) const { return std::log(t) + logK - logC - k * std::log(a + b * t); }
  double slope(double t) const { return 1.0 - k * b * t / (a + b * t); }  // d g / d log t
};

// Root of g on [ulo, uhi] (log t) with a sign change, bisected to 1e-14 and
// polished by one Newton step.
double bisect_log(const RootEquation& eq, double ulo, double uhi) {
  double glo = eq.g(std::exp(ulo));
  for (int it = 0; it < 400 && uhi - ulo > 1e-14; ++it) {
    const double mid = 0.5 * (ulo + uhi);
    if (mid <= ulo || mid >= uhi) break;
    const double gm = eq.g(std::exp(mid));
    if ((gm < 0) == (glo < 0)) {
      ulo = mid;
      glo = gm;
    } else {
      uhi = mid;
    }
  }
  double u = 0.5 * (ulo + uhi);
  const double t = std::exp(u);
  const double gu = eq.g(t), d = eq.slope(t);
  if (d != 0.0) {
    const double u1 = u - gu / d;
    if (std::abs(eq.g(std::exp(u1))) < std::abs(gu)) u = u1;
  }
  return std::exp(u);
}

// Moves u by `step` until g changes sign relative to the value at u.
double expand(const RootEquation& eq, double u, double step, bool wantPositive) {
  for (int it = 0; it < 2000; ++it) {
    const double t = std::exp(u);
    if (!std::isfinite(t) || t == 0.0) break;
    const double gv = eq.g(t);
    if ((gv > 0) == wantPositive) return u;
    u += step;
  }
  throw NumericalFailure("root solver: bracket expansion exhausted");
}

}  // namespace

double root_residual(const ProblemParams& params, double qpNorm, double t) { return RootEquation(params, qpNorm).g(t); }

double root_residual_slope(const ProblemParams& params, double t) { return RootEquation(params, 1.0).slope(t); }

double branch_multiplier(const ProblemParams& pr, double t) {
  const double s = scaling_degree(pr.N, pr.p);
  const double zeta = 2.0 * pr.N - pr.p * (pr.N - 2.0);
  return zeta / (s * pr.c * pr.c) * t * (pr.a + pr.b * t);
}

double branch_energy(const ProblemParams& pr, double t) {
  const double s = scaling_degree(pr.N, pr.p);
  return (s - 4.0) / (2.0 * s) * pr.a * t + (s - 8.0) / (4.0 * s) * pr.b * t * t;
}

LimitBranch make_branch(const ProblemParams& pr, double t, BranchTag tag) {
  return {t, branch_multiplier(pr, t), branch_energy(pr, t), tag};
}

std::vector<LimitBranch> root_equation_solve(const ProblemParams& pr, double qpNorm) {
  check_problem(pr);
  if (!(qpNorm > 0)) throw std::invalid_argument("root_equation_solve: qpNorm must be positive");
  const RootEquation eq(pr, qpNorm);
  const RegimeTag tag = regime_tag(pr.N, pr.p);

  if (pr.b == 0.0) return {make_branch(pr, std::exp(eq.logC - eq.logK + eq.k * std::log(pr.a)), BranchTag::Unique)};

  if (tag == RegimeTag::KirchhoffCritical) {
    const double K = std::exp(eq.logK), C = std::exp(eq.logC);
    const double den = K - C * pr.b;
    if (!(den > 0)) return {};
    return {make_branch(pr, C * pr.a / den, BranchTag::Unique)};
  }

  if (tag == RegimeTag::KirchhoffSupercritical) {
    // the b = 0 root lies below the root; walk up until g > 0
    const double u0 = eq.logC - eq.logK + eq.k * std::log(pr.a);
    const double uhi = expand(eq, u0, std::log(4.0), true);
    const double ulo = (uhi == u0) ? expand(eq, u0, -std::log(4.0), false) : uhi - std::log(4.0);
    return {make_branch(pr, bisect_log(eq, ulo, uhi), BranchTag::Unique)};
  }

  // two-branch: g rises to its maximum at Υ and falls on both sides
  const double ups = pr.a / (pr.b * (eq.k - 1.0));
  const double c1 = threshold_c1(pr.a, pr.b, pr.N, pr.p, qpNorm);
  if (std::abs(pr.c - c1) / c1 < kFoldWindow) return {make_branch(pr, ups, BranchTag::Unique)};
  const double uu = std::log(ups);
  if (!(eq.g(ups) > 0)) return {};
  const double ulo = expand(eq, uu, -std::log(2.0), false);
  const double uhi = expand(eq, uu, std::log(2.0), false);
  const double tLower = bisect_log(eq, ulo, uu);
  const double tUpper = bisect_log(eq, uu, uhi);
  return {make_branch(pr, tLower, BranchTag::Lower), make_branch(pr, tUpper, BranchTag::Upper)};
}

std::vector<LimitBranch> root_equation_solve(const ProblemParams& pr) {
  check_problem(pr);
  return root_equation_solve(pr, qp_l2_norm(pr.N, profile_exponent(pr.N, pr.p)));
}

RadialField build_solution(const LimitBranch& br, const ProblemParams& pr, const QpProfile& qp) {
  check_problem(pr);
  if (qp.N != pr.N || std::abs(qp.p - pr.p) > kCriticalExponentTol)
    throw std::invalid_argument("build_solution: profile does not match (N, p)");
  const double s = scaling_degree(pr.N, pr.p);
  const double beta = std::sqrt(br.Dsq) / pr.c;
  const double alpha = std::pow(4.0 * (pr.a + pr.b * br.Dsq) / s, 1.0 / (pr.p - 2.0)) * std::pow(beta, 2.0 / (pr.p - 2.0));
  return make_field<double>(pr.N, qp.field.radius() / beta, alpha * qp.field.values);
}

BifurcationTable sweep(const ModelParams& model, const std::vector<double>& cGrid, int workers) {
  check_model(model);
  for (std::size_t i = 0; i < cGrid.size(); ++i) {
    if (!(cGrid[i] > 0)) throw InadmissibleError("c-grid", "c values must be positive");
    if (i > 0 && !(cGrid[i] > cGrid[i - 1])) throw InadmissibleError("c-grid", "c grid must be strictly increasing");
  }
  const double qpNorm = qp_l2_norm(model.N, profile_exponent(model.N, model.p));
  std::vector<std::vector<LimitBranch>> perC(cGrid.size());
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < cGrid.size(); i += stride) perC[i] = root_equation_solve(at_mass(model, cGrid[i]), qpNorm);
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w, workers);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  BifurcationTable table{model, cGrid, {}};
  for (std::size_t i = 0; i < cGrid.size(); ++i)
    for (const auto& br : perC[i]) table.rows.push_back({cGrid[i], br.branch, br.Dsq, br.lambda, br.energy});
  return table;
}

FoldPoint fold_point(const ModelParams& model) {
  check_model(model);
  if (regime_tag(model.N, model.p) != RegimeTag::TwoBranch) throw InadmissibleError("p", "fold point needs p < 2 + 8/N");
  if (!(model.b > 0)) throw InadmissibleError("b", "fold point needs b > 0");
  const double qpNorm = qp_l2_norm(model.N, model.p);
  FoldPoint fp;

  // Υ: zero of t·g'(t), which decreases from 1 to 1 − k
  const RootEquation shape(at_mass(model, 1.0), qpNorm);
  auto slopeAt = [&](double u) { return shape.slope(std::exp(u)); };
  double ulo = std::log(model.a / model.b), uhi = ulo;
  while (slopeAt(ulo) <= 0) ulo -= 1.0;
  while (slopeAt(uhi) >= 0) uhi += 1.0;
  for (int it = 0; it < 400 && uhi - ulo > 1e-15 * std::max(1.0, std::abs(ulo)); ++it) {
    const double mid = 0.5 * (ulo + uhi);
    if (mid <= ulo || mid >= uhi) break;
    (slopeAt(mid) > 0 ? ulo : uhi) = mid;
  }
  const double ups = std::exp(0.5 * (ulo + uhi));

  // c₁: zero of g(Υ; c), increasing in log c
  auto gAt = [&](double logc) { return RootEquation(at_mass(model, std::exp(logc)), qpNorm).g(ups); };
  double clo = 0.0, chi = 0.0;
  while (gAt(clo) >= 0) clo -= 1.0;
  while (gAt(chi) <= 0) chi += 1.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (clo + chi);
    if (mid <= clo || mid >= chi) break;
    (gAt(mid) < 0 ? clo : chi) = mid;
  }
  fp.cFold = std::exp(0.5 * (clo + chi));
  fp.UpsilonDsq = ups;
  fp.LambdaMult = branch_multiplier(at_mass(model, fp.cFold), ups);
  fp.closedFormC1 = threshold_c1(model.a, model.b, model.N, model.p, qpNorm);
  fp.relativeGap = std::abs(fp.cFold - fp.closedFormC1) / fp.closedFormC1;

  const RootEquation atFold(at_mass(model, fp.cFold), qpNorm);
  const double du = 1e-4;
  fp.slopeAtUpsilon = (atFold.g(ups * std::exp(du)) - atFold.g(ups * std::exp(-du))) / (2 * du);

  fp.probeC = fp.cFold * (1.0 + 1e-6);
  const auto probe = root_equation_solve(at_mass(model, fp.probeC), qpNorm);
  if (probe.size() == 2) {
    fp.lowerOffset = (probe[0].Dsq - ups) / ups;
    fp.upperOffset = (probe[1].Dsq - ups) / ups;
    fp.lowerLambdaOffset = (probe[0].lambda - fp.LambdaMult) / fp.LambdaMult;
    fp.upperLambdaOffset = (probe[1].lambda - fp.LambdaMult) / fp.LambdaMult;
  }
  return fp;
}

EnergyRatioReport energy_ratio_check(double alpha, double beta, const ModelParams& model) {
  check_model(model);
  if (regime_tag(model.N, model.p) == RegimeTag::TwoBranch)
    throw InadmissibleError("p", "energy ratio inequality needs p >= 2 + 8/N");
  if (!(alpha >= beta)) throw InadmissibleError("alpha", "energy ratio needs alpha >= beta");
  const double cStar = classify(model).cStar;
  if (!(beta > cStar)) throw InadmissibleError("beta", "energy ratio needs beta above the existence threshold");
  const auto ra = root_equation_solve(at_mass(model, alpha));
  const auto rb = root_equation_solve(at_mass(model, beta));
  if (ra.size() != 1 || rb.size() != 1) throw NumericalFailure("energy ratio: expected a unique solution at both masses");
  EnergyRatioReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.mAlpha = ra[0].energy;
  r.mBeta = rb[0].energy;
  r.ratio = r.mBeta / r.mAlpha;
  r.q = derived_exponents(model.N, model.p).q;
  r.bound = std::pow(alpha / beta, r.q);
  r.slack = r.ratio - r.bound;
  r.holds = r.slack >= -1e-12 * r.bound;
  return r;
}

LocalLimit z_c_closed_form(const ProblemParams& pr) {
  check_problem(pr);
  const double s = scaling_degree(pr.N, pr.p);
  const double zeta = 2.0 * pr.N - pr.p * (pr.N - 2.0);
  const double Q = qp_l2_norm(pr.N, profile_exponent(pr.N, pr.p));
  LocalLimit z;
  z.Dsq = std::pow(4.0 * pr.a / s, 4.0 / (s - 4.0)) * std::pow(Q, 4.0 * (pr.p - 2.0) / (s - 4.0)) *
          std::pow(pr.c, 2.0 * zeta / (4.0 - s));
  z.lambda = zeta / (s * pr.c * pr.c) * pr.a * z.Dsq;
  z.energy = (s - 4.0) / (2.0 * s) * pr.a * z.Dsq;
  return z;
}

BLimitReport b_limit_check(const ProblemParams& params, const std::vector<double>& bGrid) {
  ProblemParams base = params;
  base.b = 0.0;
  check_problem(base);
  if (regime_tag(base.N, base.p) == RegimeTag::TwoBranch) throw InadmissibleError("p", "b-limit check needs p >= 2 + 8/N");
  if (bGrid.empty()) throw InadmissibleError("b-grid", "b grid is empty");
  for (std::size_t i = 0; i < bGrid.size(); ++i) {
    if (!(bGrid[i] > 0)) throw InadmissibleError("b-grid", "b values must be positive");
    if (i > 0 && !(bGrid[i] < bGrid[i - 1])) throw InadmissibleError("b-grid", "b grid must be strictly decreasing");
  }
  BLimitReport rep;
  rep.params = base;
  rep.closedForm = z_c_closed_form(base);
  rep.atZero = root_equation_solve(base).at(0);
  auto rel = [](double x, double ref) { return std::abs(x - ref) / std::abs(ref); };
  rep.zeroRowError = std::max({rel(rep.atZero.Dsq, rep.closedForm.Dsq), rel(rep.atZero.lambda, rep.closedForm.lambda),
                               rel(rep.atZero.energy, rep.closedForm.energy)});
  for (double b : bGrid) {
    ProblemParams pr = base;
    pr.b = b;
    const auto roots = root_equation_solve(pr);
    if (roots.size() != 1) throw InadmissibleError("c", "no solution at b = " + std::to_string(b) + " (c below threshold)");
    const auto& br = roots[0];
    rep.rows.push_back({b, br.Dsq, br.lambda, br.energy, std::abs(br.Dsq - rep.closedForm.Dsq),
                        std::abs(br.lambda - rep.closedForm.lambda)});
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].DsqError < rep.rows[i - 1].DsqError)) rep.monotone = false;
  return rep;
}

}  // namespace kirchhoff

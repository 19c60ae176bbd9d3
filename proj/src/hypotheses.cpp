#include "kirchhoff/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kirchhoff {

std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::V1: return "V1";
    case Hypothesis::V2: return "V2";
    case Hypothesis::V5: return "V5";
  }
  return "unknown";
}

double sobolev_sharp_constant() { return 3.0 * std::pow(std::numbers::pi / 2.0, 4.0 / 3.0); }

double sobolev_constant() { return 1.0 / std::sqrt(sobolev_sharp_constant()); }

namespace {

void finish(HypothesisReport& r) {
  r.satisfied = std::all_of(r.margins.begin(), r.margins.end(), [](const Margin& m) { return m.holds(); });
}

}  // namespace

HypothesisReport validate_V1(const PotentialSpec& V, const ProblemParams& pr, double mc) {
  check_problem(pr);
  if (pr.N > 3) throw InadmissibleError("N", "(V1) needs N <= 3");
  if (regime_tag(pr.N, pr.p) == RegimeTag::TwoBranch) throw InadmissibleError("p", "(V1) needs p >= 2 + 8/N");
  HypothesisReport r;
  r.hypothesis = Hypothesis::V1;
  const double vinf = sup_norm(V);
  const double winf = weighted_sup_norm(V);
  const double mu = std::min(1.0, 2.0 / pr.N);
  const double c2 = pr.c * pr.c;
  const double p = pr.p;
  double wbound = 0;
  if (pr.N == 1) {
    wbound = std::sqrt(mc) / pr.c * std::sqrt(4.0 * pr.a * (p - 6.0) / (std::pow(p - 2.0, 3) + 4.0 * (p - 2.0)));
  } else {
    const double s = pr.N * (p - 2.0);
    const double zeta = p * (2.0 - pr.N) + 2.0 * pr.N;
    wbound = std::sqrt(mc) / pr.c * std::sqrt(pr.a * (s - 4.0) * zeta * zeta / (4.0 * (p - 2.0) * (s + zeta)));
  }
  r.quantities = {{"sup_V", vinf}, {"sup_W", winf}, {"mu", mu}, {"m_c", mc}, {"sup_V_bound", 2.0 * mu * mc / c2},
                  {"sup_W_bound", wbound}};
  r.margins.push_back({"sup_V_positive", vinf, true});
  r.margins.push_back({"sup_V_bound", 2.0 * mu * mc / c2 - vinf, true});
  r.margins.push_back({"sup_W_bound", wbound - winf, false});
  if (V.is_zero()) r.notes.push_back("V is identically zero: the strict lower bound 0 < |V|_inf fails");
  if (!std::isfinite(vinf) || !std::isfinite(winf)) r.notes.push_back("V or W = V|x| is unbounded");
  finish(r);
  return r;
}

HypothesisReport validate_V2(const PotentialSpec& V, const ProblemParams& pr) {
  check_problem(pr);
  if (pr.N != 3) throw InadmissibleError("N", "(V2) needs N = 3");
  HypothesisReport r;
  r.hypothesis = Hypothesis::V2;
  const auto v32 = lq_norm(V, 3, 1.5);
  const auto w3 = weighted_lq_norm(V, 3, 3.0);
  const double S = sobolev_constant(), S2 = S * S;
  const double p = pr.p, a = pr.a;
  const double lhs1 = S2 * v32.value;
  const double rhs1 = 2.0 * a * (3.0 * p - 10.0) / (9.0 * p - 10.0);
  const double lhs2 = 4.0 * S * w3.value * (3.0 * (p - 2.0) * (p - 2.0) / (6.0 - p) + 1.0) + v32.value * S2 * (9.0 * (p - 2.0) + 6.0);
  const double rhs2 = a * (3.0 * p - 10.0);
  r.quantities = {{"L3/2_V", v32.value}, {"L3_W", w3.value}, {"S_emb", S}, {"S_emb_sq", S2},
                  {"nu_bar", lhs1 / a}, {"L3/2_V_tail_share", v32.tailShare}, {"L3_W_tail_share", w3.tailShare}};
  r.margins.push_back({"L3/2_bound", rhs1 - lhs1, true});
  r.margins.push_back({"combined_bound", rhs2 - lhs2, false});
  r.notes.push_back("Sobolev convention: |u|_6 <= S_emb |grad u|_2, S_emb^2 = 1/(3 (pi/2)^(4/3))");
  if (!v32.finite) r.notes.push_back("V is not in L^{3/2}: tail or core contribution does not decay");
  if (!w3.finite) r.notes.push_back("W = V|x| is not in L^3: tail or core contribution does not decay");
  finish(r);
  if (!v32.finite || !w3.finite) r.satisfied = false;
  return r;
}

HypothesisReport validate_V5(const PotentialSpec& V, const ProblemParams& pr, double mc1, double mc2, double rMax,
                             int samples) {
  check_problem(pr);
  if (pr.N < 2) throw InadmissibleError("N", "(V5) needs N >= 2");
  if (regime_tag(pr.N, pr.p) != RegimeTag::TwoBranch) throw InadmissibleError("p", "(V5) needs p < 2 + 8/N");
  HypothesisReport r;
  r.hypothesis = Hypothesis::V5;
  const double vinf = sup_norm(V);
  const double bound = 2.0 / (pr.c * pr.c) * (mc2 - mc1);
  const double k = pr.N * (pr.p - 2.0) / pr.p;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double rr = rMax * i / samples;
    const double v = V.value(rr), dv = V.radial_derivative(rr);
    double slack = -k * v - dv;
    if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
    worst = std::min(worst, slack);
    if (slack < 0 && !r.firstViolationRadius) r.firstViolationRadius = rr;
  }
  r.quantities = {{"sup_V", vinf}, {"sup_V_bound", bound}, {"k", k}, {"m_c1", mc1}, {"m_c2", mc2}};
  r.margins.push_back({"sup_V_bound", bound - vinf, false});
  r.margins.push_back({"pointwise_slope", worst, false});
  if (r.firstViolationRadius) r.notes.push_back("pointwise condition first fails at r = " + std::to_string(*r.firstViolationRadius));
  if (!V.is_zero())
    r.notes.push_back("a bounded V > 0 cannot satisfy the pointwise condition: r^k V(r) would have to be nonincreasing");
  finish(r);
  return r;
}

}  // namespace kirchhoff

#include "kirchhoff/regimes.hpp"

#include "kirchhoff/gn_profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kirchhoff {

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::TwoBranch: return "TwoBranch";
    case RegimeTag::KirchhoffCritical: return "KirchhoffCritical";
    case RegimeTag::KirchhoffSupercritical: return "KirchhoffSupercritical";
  }
  return "unknown";
}

double local_critical_exponent(int N) { return 2.0 + 4.0 / N; }
double kirchhoff_critical_exponent(int N) { return 2.0 + 8.0 / N; }
double sobolev_exponent(int N) {
  return N <= 2 ? std::numeric_limits<double>::infinity() : 2.0 * N / (N - 2.0);
}

bool is_kirchhoff_critical(int N, double p) {
  return std::abs(p - kirchhoff_critical_exponent(N)) <= kCriticalExponentTol;
}

void check_exponent(int N, double p) {
  if (N < 1 || N > 4) throw InadmissibleError("N", "N must be one of 1, 2, 3, 4 (got " + std::to_string(N) + ")");
  if (!std::isfinite(p)) throw InadmissibleError("p", "p must be finite");
  std::ostringstream os;
  if (!(p > local_critical_exponent(N))) {
    os << "p = " << p << " must exceed 2 + 4/N = " << local_critical_exponent(N);
    throw InadmissibleError("p", os.str());
  }
  if (!(p < sobolev_exponent(N))) {
    os << "p = " << p << " must be below 2* = " << sobolev_exponent(N);
    throw InadmissibleError("p", os.str());
  }
  if (N == 4 && (p >= kirchhoff_critical_exponent(N) || is_kirchhoff_critical(N, p))) {
    os << "N = 4 is admitted only for p < 2 + 8/N = 4 (got p = " << p << ")";
    throw InadmissibleError("N", os.str());
  }
}

void check_model(const ModelParams& m) {
  check_exponent(m.N, m.p);
  if (!(m.a > 0) || !std::isfinite(m.a)) throw InadmissibleError("a", "a must be positive and finite");
  if (!(m.b >= 0) || !std::isfinite(m.b)) throw InadmissibleError("b", "b must be nonnegative and finite");
}

void check_problem(const ProblemParams& params) {
  check_model(params.model());
  if (!(params.c > 0) || !std::isfinite(params.c)) throw InadmissibleError("c", "c must be positive and finite");
}

RegimeTag regime_tag(int N, double p) {
  check_exponent(N, p);
  if (is_kirchhoff_critical(N, p)) return RegimeTag::KirchhoffCritical;
  return p < kirchhoff_critical_exponent(N) ? RegimeTag::TwoBranch : RegimeTag::KirchhoffSupercritical;
}

double scaling_degree(int N, double p) { return is_kirchhoff_critical(N, p) ? 8.0 : N * (p - 2.0); }

DerivedExponents derived_exponents(int N, double p) {
  check_exponent(N, p);
  const double s = scaling_degree(N, p);
  const double zeta = 2.0 * N - p * (N - 2.0);
  return {s - 4.0, 8.0 - s, 2.0 * zeta / (s - 4.0), zeta};
}

double threshold_c0(double b, int N, double qpNorm) {
  if (N < 1 || N > 3) throw InadmissibleError("N", "c0 is defined for N = 1, 2, 3 only");
  if (!(b > 0)) throw InadmissibleError("b", "c0 needs b > 0");
  const double den = 8.0 - 2.0 * N;
  return std::pow(b / 2.0, N / den) * std::pow(qpNorm, 8.0 / den);
}

double threshold_c0(double b, int N) {
  if (N < 1 || N > 3) throw InadmissibleError("N", "c0 is defined for N = 1, 2, 3 only");
  return threshold_c0(b, N, qp_l2_norm(N, kirchhoff_critical_exponent(N)));
}

double threshold_c1(double a, double b, int N, double p, double qpNorm) {
  check_exponent(N, p);
  if (regime_tag(N, p) != RegimeTag::TwoBranch) throw InadmissibleError("p", "c1 needs p < 2 + 8/N");
  if (!(a > 0)) throw InadmissibleError("a", "c1 needs a > 0");
  if (!(b > 0)) throw InadmissibleError("b", "c1 needs b > 0");
  const auto e = derived_exponents(N, p);
  const double s = N * (p - 2.0);
  const double twoZeta = 2.0 * e.zeta;
  return std::pow(16.0 / s, 2.0 / e.zeta) * std::pow(qpNorm, 2.0 * (p - 2.0) / e.zeta) *
         std::pow(b / e.theta, e.theta / twoZeta) * std::pow(a / e.eta, e.eta / twoZeta);
}

double threshold_c1(double a, double b, int N, double p) {
  return threshold_c1(a, b, N, p, qp_l2_norm(N, p));
}

Regime classify(const ModelParams& model) {
  check_model(model);
  const RegimeTag tag = regime_tag(model.N, model.p);
  if (model.b == 0.0 || tag == RegimeTag::KirchhoffSupercritical) return {tag, 0.0};
  if (tag == RegimeTag::KirchhoffCritical) return {tag, threshold_c0(model.b, model.N)};
  return {tag, threshold_c1(model.a, model.b, model.N, model.p)};
}

Regime classify(const ProblemParams& params) {
  check_problem(params);
  return classify(params.model());
}

}  // namespace kirchhoff

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kirchhoff {

/// Thrown when a parameter tuple lies outside the admissible set. The
/// offending parameter name is kept so the CLI can name it.
class InadmissibleError : public std::invalid_argument {
 public:
  InadmissibleError(std::string parameter, const std::string& what)
      : std::invalid_argument(what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Raised when an iterative method (bisection bracket, shooting, flow) fails.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients of the equation without the mass.
struct ModelParams {
  double a = 1.0;  // dispersion coefficient
  double b = 1.0;  // Kirchhoff coefficient
  int N = 3;
  double p = 5.0;
};

struct ProblemParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;  // the L² norm of u is c, its square c² is the mass
  int N = 3;
  double p = 5.0;

  ModelParams model() const { return {a, b, N, p}; }
};

inline ProblemParams at_mass(const ModelParams& m, double c) { return {m.a, m.b, c, m.N, m.p}; }

struct DerivedExponents {
  double theta;  // N(p-2) - 4
  double eta;    // 8 - N(p-2)
  double q;      // (4N - 2p(N-2)) / (N(p-2) - 4)
  double zeta;   // 2N - p(N-2)
};

enum class RegimeTag { TwoBranch, KirchhoffCritical, KirchhoffSupercritical };

struct Regime {
  RegimeTag tag;
  double cStar;  // existence threshold: 0, c0 or c1
};

std::string_view to_string(RegimeTag tag);

// Absolute tolerance used to recognise p = 2 + 8/N.
inline constexpr double kCriticalExponentTol = 1e-12;

double local_critical_exponent(int N);      // 2 + 4/N
double kirchhoff_critical_exponent(int N);  // 2 + 8/N
double sobolev_exponent(int N);             // 2N/(N-2), +inf for N <= 2

/// Rejects (N, p) outside 2+4/N < p < 2*, N in 1..4, and N = 4 outside the
/// two-branch range.
void check_exponent(int N, double p);
void check_model(const ModelParams& m);
void check_problem(const ProblemParams& params);

RegimeTag regime_tag(int N, double p);
bool is_kirchhoff_critical(int N, double p);

/// N(p-2), snapped to exactly 8 on the Kirchhoff-critical exponent.
double scaling_degree(int N, double p);

DerivedExponents derived_exponents(int N, double p);

/// c0 = (b/2)^{N/(8-2N)} ‖Q‖^{8/(8-2N)} with ‖Q‖ = ‖Q_{2+8/N}‖₂ supplied.
double threshold_c0(double b, int N, double qpNorm);
/// Same, with ‖Q_{2+8/N}‖₂ taken from the profile cache.
double threshold_c0(double b, int N);

double threshold_c1(double a, double b, int N, double p, double qpNorm);
double threshold_c1(double a, double b, int N, double p);

/// Regime tag and existence threshold. The threshold uses the cached
/// ‖Q_p‖₂ when the regime needs it. b = 0 (local limit) has cStar = 0.
Regime classify(const ProblemParams& params);
Regime classify(const ModelParams& model);

}  // namespace kirchhoff

#pragma once

#include "kirchhoff/gn_profile.hpp"
#include "kirchhoff/radial_field.hpp"
#include "kirchhoff/regimes.hpp"

#include <string_view>
#include <vector>

namespace kirchhoff {

/// Upper is the larger root D₁² (energy m_{c,1}), Lower the smaller D₂².
enum class BranchTag { Unique, Lower, Upper };

std::string_view to_string(BranchTag tag);

struct LimitBranch {
  double Dsq = 0;     // ‖∇u_c‖₂²
  double lambda = 0;  // Lagrange multiplier
  double energy = 0;  // I_∞(u_c)
  BranchTag branch = BranchTag::Unique;
};

/// Relative window around c₁ inside which a double root is reported.
inline constexpr double kFoldWindow = 1e-8;

/// Log-space residual of the root equation
///   t·K = C·(a + b t)^k,  K = (4/s)^{4/(4−s)} ‖Q‖^{4(p−2)/(4−s)},
///   C = c^{2ζ/(4−s)}, k = 4/(s−4), s = N(p−2);
/// i.e. log(tK) − log(C(a+bt)^k). Its size is the relative residual.
double root_residual(const ProblemParams& params, double qpNorm, double t);

/// t·d/dt of root_residual.
double root_residual_slope(const ProblemParams& params, double t);

/// λ = ζ/(s c²)·t(a+bt).
double branch_multiplier(const ProblemParams& params, double Dsq);
/// m = θ/(2s)·a·t + (s−8)/(4s)·b·t².
double branch_energy(const ProblemParams& params, double Dsq);
LimitBranch make_branch(const ProblemParams& params, double Dsq, BranchTag tag);

/// All positive roots t = D², ordered Lower then Upper. Empty when no
/// solution exists. Throws NumericalFailure if a bracket cannot be formed.
std::vector<LimitBranch> root_equation_solve(const ProblemParams& params, double qpNorm);
std::vector<LimitBranch> root_equation_solve(const ProblemParams& params);

/// u_c(r) = α Q_p(β r), β = D/c, α = [4(a+bD²)/s]^{1/(p−2)} β^{2/(p−2)},
/// on Q_p's grid stretched by 1/β.
RadialField build_solution(const LimitBranch& branch, const ProblemParams& params, const QpProfile& qp);

struct BifurcationRow {
  double c = 0;
  BranchTag branch = BranchTag::Unique;
  double Dsq = 0;
  double lambda = 0;
  double energy = 0;
};

struct BifurcationTable {
  ModelParams model;
  std::vector<double> cGrid;
  std::vector<BifurcationRow> rows;  // by c, then branch
};

/// Solves at every c of the grid; workers > 1 shards the grid over threads.
BifurcationTable sweep(const ModelParams& model, const std::vector<double>& cGrid, int workers = 1);

struct FoldPoint {
  double cFold = 0;
  double UpsilonDsq = 0;
  double LambdaMult = 0;
  double closedFormC1 = 0;
  double relativeGap = 0;          // |cFold − c₁|/c₁
  double slopeAtUpsilon = 0;       // central difference of the residual in log t at Υ, c = cFold
  double probeC = 0;               // c₁(1 + 1e−6)
  double upperOffset = 0;          // (D₁² − Υ)/Υ at probeC, positive
  double lowerOffset = 0;          // (D₂² − Υ)/Υ at probeC, negative
  double upperLambdaOffset = 0;    // (λ₁ − Λ)/Λ at probeC
  double lowerLambdaOffset = 0;
};

/// Locates c₁ independently of its closed form: Υ by bisection on the
/// vanishing t-derivative of the residual, then c by bisection on
/// residual(Υ; c) = 0.
FoldPoint fold_point(const ModelParams& model);

struct EnergyRatioReport {
  double alpha = 0, beta = 0;
  double mAlpha = 0, mBeta = 0;
  double ratio = 0;  // m_β / m_α
  double q = 0;
  double bound = 0;  // (α/β)^q
  double slack = 0;  // ratio − bound
  bool holds = false;
};

/// m_β/m_α ≥ (α/β)^q for α ≥ β > c*, KirchhoffCritical or Supercritical.
EnergyRatioReport energy_ratio_check(double alpha, double beta, const ModelParams& model);

struct LocalLimit {
  double Dsq = 0;
  double lambda = 0;
  double energy = 0;
};

/// Norms of the normalized solution Z_c of −aΔu + λu = |u|^{p−2}u:
/// ‖∇Z_c‖² = [4a/s]^{4/(s−4)} ‖Q‖^{4(p−2)/(s−4)} c^{2ζ/(4−s)}, I_∞ = (s−4)/(2s)·a·‖∇Z_c‖².
LocalLimit z_c_closed_form(const ProblemParams& params);

struct BLimitRow {
  double b = 0;
  double Dsq = 0;
  double lambda = 0;
  double energy = 0;
  double DsqError = 0;     // |D²(b) − D²(0)|
  double lambdaError = 0;  // |λ(b) − λ(0)|
};

struct BLimitReport {
  ProblemParams params;  // b ignored
  LocalLimit closedForm;
  LimitBranch atZero;       // root solver run at b = 0
  double zeroRowError = 0;  // max relative gap between atZero and closedForm
  std::vector<BLimitRow> rows;
  bool monotone = false;  // DsqError strictly decreasing along rows
};

/// bGrid must be strictly decreasing and positive.
BLimitReport b_limit_check(const ProblemParams& params, const std::vector<double>& bGrid);

}  // namespace kirchhoff

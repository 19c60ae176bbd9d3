#pragma once

#include "kirchhoff/limit_solver.hpp"

#include <string>
#include <vector>

namespace kirchhoff {

/// Tolerances of the identity suite.
struct VerifyTolerances {
  double gnIdentity = 1e-6;    // pairwise relative gap of ‖Q‖², ‖∇Q‖², (2/p)‖Q‖_p^p
  double rootResidual = 1e-10;
  double mass = 1e-8;
  double gradient = 1e-6;
  double pohozaevNehari = 1e-6;  // relative to a‖∇u‖² + b‖∇u‖⁴
  double energy = 1e-6;
};

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool passed = false;
};

struct BranchVerification {
  LimitBranch branch;
  std::vector<Check> checks;
  double pdeResidual = 0;
  double pdeEstimate = 0;
  bool pdeTooCoarse = false;
};

struct VerifyReport {
  ProblemParams params;
  RegimeTag regime = RegimeTag::TwoBranch;
  double cStar = 0;
  std::vector<Check> profileChecks;
  std::vector<BranchVerification> branches;
  bool passed = false;
};

/// Solves the limit problem, builds every branch and runs the identity suite:
/// Q_p norm identities, root residual, mass, gradient norm, Pohozaev and
/// Nehari residuals, I_∞(u_c) = m, and the PDE residual against its
/// grid-refinement estimate. An empty branch list means no solution.
VerifyReport verify_instance(const ProblemParams& params, const VerifyTolerances& tol = {});

}  // namespace kirchhoff

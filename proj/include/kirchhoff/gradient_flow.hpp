#pragma once

#include "kirchhoff/potential.hpp"
#include "kirchhoff/radial_field.hpp"
#include "kirchhoff/regimes.hpp"

#include <vector>

namespace kirchhoff {

struct FlowSchedule {
  int maxSteps = 20000;
  double tol = 1e-8;        // on the preconditioned projected gradient norm
  double initialStep = 1.0;
  int maxHalvings = 40;
  int divergenceWindow = 10;  // consecutive energy increases tolerated after line-search failure
};

struct FlowTraceRow {
  int step = 0;
  double energy = 0;
  double gradientNorm = 0;
  double multiplier = 0;
};

struct FlowState {
  RadialField u;  // Simpson weights, for use with the quadrature routines
  double mass = 0;  // discrete ‖u‖² in the flow's cell weights
  double energy = 0;
  double multiplierEstimate = 0;  // λ = −DI(u)[u]/c²
  double gradientNormOnSphere = 0;
  int step = 0;
};

struct FlowResult {
  FlowState state;
  std::vector<FlowTraceRow> trace;
};

/// Projected descent for I on the radial mass sphere ‖u‖² = c², in the
/// coercive two-branch regime c > c₁. The field is discretised by finite
/// volumes on initial's grid (cell-volume mass weights, face-centred
/// gradients), preconditioned by (a+b‖∇u₀‖²)(A + W). Each step projects the
/// preconditioned gradient onto the tangent space, takes a Barzilai–Borwein
/// step with halving backtracking and renormalises the mass. Throws
/// NumericalFailure on divergence or when the step cap is reached.
FlowResult normalized_gradient_flow(const RadialField& initial, const PotentialSpec& V, const ProblemParams& params,
                                    const FlowSchedule& schedule = {});

/// exp(−r²/(2σ²)) scaled to mass c², with σ chosen so that ‖∇u‖² = Dsq.
RadialField gaussian_initial(int N, double c, double Dsq, double rMax, Eigen::Index intervals);

/// Discrete mass weights of the flow (cell volumes) for a given grid.
Eigen::VectorXd flow_cell_weights(int N, double spacing, Eigen::Index nodes);

}  // namespace kirchhoff

#pragma once

#include "kirchhoff/radial_field.hpp"

#include <memory>

namespace kirchhoff {

/// Controls for the radial shooting of the standard ground state
/// -ΔW + W = W^{p-1}. Zero values select automatic choices.
struct ShootingConfig {
  double heightLo = 0;    // initial-value bracket for W(0); 0 = doubling from 1
  double heightHi = 0;
  double rMax = 0;        // truncation radius; 0 = adaptive from decayTol
  int intervals = 4096;   // grid intervals on [0, rMax], even
  int substeps = 8;       // RK4 steps per grid interval
  double decayTol = 1e-10;
  double matchTol = 1e-9;  // trajectory trust threshold before the linear tail takes over
  int maxBisections = 200;
};

/// Positive radial solution of W'' + (N-1)/r W' - W + W^{p-1} = 0. For N = 1
/// the closed form ((p/2) sech²((p-2)x/2))^{1/(p-2)} is sampled.
RadialField standard_ground_state(int N, double p, const ShootingConfig& cfg = {});

/// Always shoots, for any N in 1..4 (used to cross-check the N = 1 closed form).
RadialField shoot_ground_state(int N, double p, const ShootingConfig& cfg = {});

/// Closed-form N = 1 ground state at x.
double soliton_1d(double p, double x);

/// Q_p of -(N(p-2)/4)ΔQ + ((2N-p(N-2))/4)Q = Q^{p-1} with its norms.
struct QpProfile {
  int N = 0;
  double p = 0;
  RadialField field;
  double l2sq = 0;
  double gradl2sq = 0;
  double lpp = 0;

  double l2norm() const;
};

/// Q_p(x) = B^{1/(p-2)} W(√(B/A) x) with A = N(p-2)/4, B = (2N-p(N-2))/4.
QpProfile qp_from_standard(const RadialField& W, int N, double p);

/// (p / (2‖Q_p‖₂^{p-2}))^{1/p}.
double gn_best_constant(const QpProfile& qp);

/// Right-hand side C ‖∇u‖^{N(p-2)/(2p)} ‖u‖^{1-N(p-2)/(2p)} of the GN inequality.
double gn_rhs(double constant, int N, double p, double l2sq, double gradl2sq);

/// Memoised profile per (N, p) with the default shooting configuration.
/// Safe for concurrent callers.
std::shared_ptr<const QpProfile> qp_profile(int N, double p);
double qp_l2_norm(int N, double p);

}  // namespace kirchhoff

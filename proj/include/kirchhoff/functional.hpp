#pragma once

#include "kirchhoff/radial_field.hpp"
#include "kirchhoff/regimes.hpp"

namespace kirchhoff {

class PotentialSpec;

/// I(u) = a/2‖∇u‖² + b/4‖∇u‖⁴ + ½∫Vu² − (1/p)‖u‖_p^p, split by term.
struct FunctionalValue {
  double kinetic = 0;
  double kirchhoff = 0;
  double potential = 0;
  double nonlinear = 0;
  double total = 0;
};

/// ½∫V u² by the field's quadrature. Zero-weight nodes are skipped so a pole
/// at the origin does not produce 0·∞.
double potential_energy(const RadialField& u, const PotentialSpec& V);

/// With V null this is I_∞.
FunctionalValue evaluate_I(const RadialField& u, const ModelParams& m, const PotentialSpec* V = nullptr);

struct PdeResidual {
  double residual = 0;  // max norm on the field's grid
  double coarse = 0;    // same on every second node
  double scale = 0;     // max|u|^{p-1}
  bool tooCoarse = false;

  /// Fourth-order convergence makes the fine residual at most coarse/4 once
  /// the grid resolves u; smaller factors mean the residual is not
  /// discretization dominated.
  double estimate() const { return coarse / 4; }
  bool within_estimate() const { return residual <= estimate(); }
};

/// max |−(a+b‖∇u‖²)Δu + (V+λ)u − |u|^{p−2}u| over all nodes but the last.
/// The Laplacian at r = 0 is N·u''(0). The coarse run reuses the fine
/// ‖∇u‖² so the two differ only by the Laplacian discretization.
PdeResidual pde_residual(const RadialField& u, double lambda, const ModelParams& m, const PotentialSpec* V = nullptr);

struct PohozaevNehari {
  double pohozaev = 0;  // a‖∇u‖² + b‖∇u‖⁴ − (N(p−2)/(2p))‖u‖_p^p
  double nehari = 0;    // a‖∇u‖² + b‖∇u‖⁴ + λ‖u‖² − ‖u‖_p^p
};

PohozaevNehari pohozaev_nehari_residuals(const RadialField& u, double lambda, const ModelParams& m);

}  // namespace kirchhoff

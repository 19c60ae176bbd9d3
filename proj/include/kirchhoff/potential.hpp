#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace kirchhoff {

enum class PotentialFamily { Gaussian, AlgebraicDecay, CompactBump, SingularPole };

std::string_view to_string(PotentialFamily family);

/// Nonnegative radial potential V(r) from one of four families:
///   gaussian        V0 exp(−r²/w²)
///   algebraic       V0 (1+r)^{−s}
///   bump            V0 exp(1 − 1/(1−ξ²)), ξ = (r − center)/halfwidth, zero for |ξ| ≥ 1
///   pole            V0 r^{−σ} χ(r), χ = 1 on [0, Rc], 0 beyond 2Rc, smooth between
/// Rc = ∞ (the default) means no cutoff.
class PotentialSpec {
 public:
  PotentialSpec() = default;

  static PotentialSpec zero();
  static PotentialSpec gaussian(double V0, double width = 1.0);
  static PotentialSpec algebraic(double V0, double decay);
  static PotentialSpec bump(double V0, double center, double halfwidth);
  static PotentialSpec pole(double V0, double sigma, double cutoff = std::numeric_limits<double>::infinity());

  PotentialFamily family() const { return family_; }
  double amplitude() const { return V0_; }
  /// Family parameters in declaration order, for reports.
  std::vector<std::pair<std::string, double>> parameters() const;
  bool is_zero() const { return V0_ == 0.0; }

  double value(double r) const;
  /// ⟨∇V(x)·x⟩ = r V'(r).
  double radial_derivative(double r) const;

  /// Same potential with V0 multiplied by k.
  PotentialSpec scaled(double k) const;

  /// "family:key=value,..." round-trippable through parse_potential.
  std::string describe() const;

 private:
  PotentialFamily family_ = PotentialFamily::Gaussian;
  double V0_ = 0;
  double p1_ = 1;  // width | decay | center | sigma
  double p2_ = 0;  // -     | -     | halfwidth | cutoff
};

/// Parses "gaussian:V0=0.01,w=1", "algebraic:V0=1,s=2", "bump:V0=1,center=2,halfwidth=1",
/// "pole:V0=0.1,sigma=1,Rc=5", or "zero". Throws InadmissibleError("potential", ...).
PotentialSpec parse_potential(std::string_view text);

/// Maximiser of a unimodal fn on [lo, hi] by golden-section search; returns x.
double golden_section_max(const std::function<double(double)>& fn, double lo, double hi, double tol = 1e-12);

/// sup of fn over [0, rMax]: a grid scan followed by golden-section refinement
/// around the best node.
double numeric_sup(const std::function<double(double)>& fn, double rMax, int samples = 4096);

/// ‖V‖_∞, analytic per family (+∞ for an unbounded pole).
double sup_norm(const PotentialSpec& V);

/// ‖W‖_∞ with W(x) = V(x)|x|: analytic for gaussian and algebraic, numeric
/// otherwise; +∞ when W is unbounded.
double weighted_sup_norm(const PotentialSpec& V);

struct LqNorm {
  double value = 0;     // +∞ when the tail test fails
  bool finite = true;
  double tailShare = 0;  // share of the last [R, 2R] panel in the total
};

/// (∫_{R^N} |fn(|x|)|^q dx)^{1/q} by Gauss–Legendre on geometrically graded
/// panels toward 0 and ∞. Declared infinite when the last outward panel
/// still carries more than 1e-6 of the total.
LqNorm radial_lq_norm(const std::function<double(double)>& fn, int N, double q);

LqNorm lq_norm(const PotentialSpec& V, int N, double q);           // ‖V‖_q
LqNorm weighted_lq_norm(const PotentialSpec& V, int N, double q);  // ‖W‖_q

/// Average of V(|x + y|) over the sphere |x| = r, with |y| = shift.
double spherical_average(const PotentialSpec& V, int N, double shift, double r);

/// Gauss–Legendre nodes and weights on [−1, 1].
struct GaussLegendre {
  std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace kirchhoff

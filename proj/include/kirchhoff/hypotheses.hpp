#pragma once

#include "kirchhoff/potential.hpp"
#include "kirchhoff/regimes.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kirchhoff {

enum class Hypothesis { V1, V2, V5 };

std::string_view to_string(Hypothesis h);

/// One inequality: value ≥ 0 (or > 0 when strict) means it holds.
struct Margin {
  std::string name;
  double value = 0;
  bool strict = true;

  bool holds() const { return strict ? value > 0 : value >= 0; }
};

struct HypothesisReport {
  Hypothesis hypothesis = Hypothesis::V1;
  bool satisfied = false;  // every margin holds and the norms are finite
  std::vector<Margin> margins;
  std::vector<std::pair<std::string, double>> quantities;  // norms and constants used
  std::vector<std::string> notes;
  std::optional<double> firstViolationRadius;  // V5 pointwise scan
};

/// Sharp constant of ‖∇u‖₂² ≥ S_sharp ‖u‖₆² in R³: 3(π/2)^{4/3}.
double sobolev_sharp_constant();
/// S_emb with ‖u‖₆ ≤ S_emb ‖∇u‖₂, so S_emb² = 1/S_sharp.
double sobolev_constant();

/// 0 < ‖V‖∞ < 2μ m_c/c², μ = min{1, 2/N}, and the ‖W‖∞ bound
///   N = 1:    (√m_c / c)·√(4a(p−6)/((p−2)³ + 4(p−2)))   (p > 6 holds since p ≥ 10)
///   N = 2, 3: (√m_c / c)·√(a(N(p−2)−4)ζ²/(4(p−2)(N(p−2)+ζ)))
HypothesisReport validate_V1(const PotentialSpec& V, const ProblemParams& params, double mc);

/// N = 3: S_emb²‖V‖_{3/2} < 2a(3p−10)/(9p−10) and
/// 4 S_emb‖W‖₃(3(p−2)²/(6−p) + 1) + ‖V‖_{3/2} S_emb²(9(p−2)+6) ≤ a(3p−10).
HypothesisReport validate_V2(const PotentialSpec& V, const ProblemParams& params);

/// ‖V‖∞ ≤ 2c^{−2}(m_{c,2} − m_{c,1}) and ⟨∇V·x⟩ ≤ −(N(p−2)/p)V on a uniform
/// scan of [0, rMax] with `samples` intervals.
HypothesisReport validate_V5(const PotentialSpec& V, const ProblemParams& params, double mc1, double mc2,
                             double rMax = 50.0, int samples = 8192);

}  // namespace kirchhoff

#pragma once

#include "kirchhoff/potential.hpp"
#include "kirchhoff/radial_field.hpp"
#include "kirchhoff/regimes.hpp"

#include <vector>

namespace kirchhoff {

struct DilationScan {
  double hMin = 1e-2;
  double hMax = 1e2;
  int samples = 401;                // log-spaced h values, refined by golden section
  std::vector<double> translations;  // |y| values besides y = 0
};

struct DilationBound {
  double maxValue = 0;  // max over h and y of I(h⋆u(·−y))
  double argmaxH = 1;
  double argmaxShift = 0;
  double mc = 0;

  double supV = 0;
  bool supApplicable = false;  // ‖V‖∞ finite
  double supBound = 0;         // m_c + ½‖V‖∞c²
  double supSlack = 0;

  double nuBar = 0;  // S_emb²‖V‖_{3/2}/a
  double nu = 0;     // 3(p−2)ν̄/(3p−10−4ν̄)
  bool sobolevApplicable = false;  // N = 3, ‖V‖_{3/2} finite, 3p−10−4ν̄ > 0
  double sobolevBound = 0;         // (1+ν)m_c
  double sobolevSlack = 0;

  std::vector<std::pair<double, double>> path;  // (h, max over y)
};

/// I(h⋆u(·−y)) = I_∞(h⋆u) + ½∫V(x+y)(h⋆u)²dx. The translated potential term
/// uses the exact spherical average of V(|x+y|).
double translated_value(const RadialField& u, const PotentialSpec& V, const ModelParams& m, double h, double shift);

/// Maximises over the dilation grid and translations, and reports the
/// Lemma-type upper bounds m_c + ½‖V‖∞c² and (1+ν)m_c with their slacks.
DilationBound dilation_path_bound(const RadialField& u, const PotentialSpec& V, const ProblemParams& params, double mc,
                                  const DilationScan& scan = {});

/// P(u) = a‖∇u‖² + b‖∇u‖⁴ − (N(p−2)/(2p))‖u‖_p^p − ½∫⟨∇V·x⟩u².
double potential_pohozaev(const RadialField& u, const PotentialSpec& V, const ModelParams& m);

}  // namespace kirchhoff

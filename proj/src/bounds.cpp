#include "kirchhoff/bounds.hpp"

#include "kirchhoff/functional.hpp"
#include "kirchhoff/hypotheses.hpp"

#include <cmath>

namespace kirchhoff {

namespace {

double shifted_potential_energy(const RadialField& u, const PotentialSpec& V, int N, double shift) {
  if (V.is_zero()) return 0.0;
  if (shift == 0.0) return potential_energy(u, V);
  double s = 0;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u.weights[i] == 0.0 || u.values[i] == 0.0) continue;
    s += u.weights[i] * spherical_average(V, N, shift, u.nodes[i]) * u.values[i] * u.values[i];
  }
  return 0.5 * s;
}

struct Scaled {
  const RadialField& u;
  const PotentialSpec& V;
  const ModelParams& m;
  FieldNorms<double> base;

  double at(double h, double shift) const {
    const double G = base.gradl2sq * h * h;
    const double local = 0.5 * m.a * G + 0.25 * m.b * G * G - std::pow(h, 0.5 * m.N * (m.p - 2.0)) * base.lpp / m.p;
    return local + shifted_potential_energy(dilate(u, h), V, m.N, shift);
  }
};

}  // namespace

double translated_value(const RadialField& u, const PotentialSpec& V, const ModelParams& m, double h, double shift) {
  return Scaled{u, V, m, norms(u, m.p)}.at(h, shift);
}

DilationBound dilation_path_bound(const RadialField& u, const PotentialSpec& V, const ProblemParams& pr, double mc,
                                  const DilationScan& scan) {
  check_problem(pr);
  if (!(scan.hMin > 0) || !(scan.hMax > scan.hMin) || scan.samples < 2)
    throw std::invalid_argument("dilation_path_bound: bad h range");
  const ModelParams m = pr.model();
  const Scaled f{u, V, m, norms(u, m.p)};
  std::vector<double> shifts{0.0};
  for (double y : scan.translations)
    if (y > 0) shifts.push_back(y);

  DilationBound out;
  out.mc = mc;
  out.maxValue = -std::numeric_limits<double>::infinity();
  const double l0 = std::log(scan.hMin), l1 = std::log(scan.hMax);
  int bestIdx = 0;
  for (int i = 0; i < scan.samples; ++i) {
    const double h = std::exp(l0 + (l1 - l0) * i / (scan.samples - 1));
    double best = -std::numeric_limits<double>::infinity();
    for (double y : shifts) {
      const double v = f.at(h, y);
      if (v > best) best = v;
      if (v > out.maxValue) {
        out.maxValue = v;
        out.argmaxH = h;
        out.argmaxShift = y;
        bestIdx = i;
      }
    }
    out.path.emplace_back(h, best);
  }
  // refine in log h around the best sample for the best translation
  const double dl = (l1 - l0) / (scan.samples - 1);
  const double lo = l0 + dl * std::max(0, bestIdx - 1), hi = l0 + dl * std::min(scan.samples - 1, bestIdx + 1);
  const double y = out.argmaxShift;
  const double lh = golden_section_max([&](double x) { return f.at(std::exp(x), y); }, lo, hi, 1e-10);
  const double refined = f.at(std::exp(lh), y);
  if (refined > out.maxValue) {
    out.maxValue = refined;
    out.argmaxH = std::exp(lh);
  }

  const double c2 = pr.c * pr.c;
  out.supV = sup_norm(V);
  out.supApplicable = std::isfinite(out.supV);
  out.supBound = mc + 0.5 * out.supV * c2;
  out.supSlack = out.supBound - out.maxValue;

  if (pr.N == 3) {
    const auto v32 = lq_norm(V, 3, 1.5);
    const double S = sobolev_constant();
    out.nuBar = S * S * v32.value / pr.a;
    const double den = 3.0 * pr.p - 10.0 - 4.0 * out.nuBar;
    out.sobolevApplicable = v32.finite && den > 0;
    out.nu = out.sobolevApplicable ? 3.0 * (pr.p - 2.0) * out.nuBar / den : std::numeric_limits<double>::infinity();
    out.sobolevBound = (1.0 + out.nu) * mc;
    out.sobolevSlack = out.sobolevBound - out.maxValue;
  }
  return out;
}

double potential_pohozaev(const RadialField& u, const PotentialSpec& V, const ModelParams& m) {
  const auto n = norms(u, m.p);
  double pot = 0;
  if (!V.is_zero())
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (u.weights[i] == 0.0 || u.values[i] == 0.0) continue;
      pot += u.weights[i] * V.radial_derivative(u.nodes[i]) * u.values[i] * u.values[i];
    }
  return m.a * n.gradl2sq + m.b * n.gradl2sq * n.gradl2sq - m.N * (m.p - 2.0) / (2.0 * m.p) * n.lpp - 0.5 * pot;
}

}  // namespace kirchhoff

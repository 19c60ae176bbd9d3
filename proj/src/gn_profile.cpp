#include "kirchhoff/gn_profile.hpp"

#include "kirchhoff/regimes.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

namespace kirchhoff {

namespace {

enum class Outcome { Overshoot, Undershoot, Undecided };

struct Shooter {
  int N;
  double p;

  // (W, W') -> (W', W'') ; the origin uses the limit W''(0) = (W - W^{p-1}) / N
  void rhs(double r, double w, double dw, double& fw, double& fdw) const {
    const double nonlin = abs_pow(w, p - 1.0) * (w < 0 ? -1.0 : 1.0);
    fw = dw;
    fdw = (r == 0.0) ? (w - nonlin) / N : -(N - 1) / r * dw + w - nonlin;
  }

  void step(double r, double dt, double& w, double& dw) const {
    double k1w, k1d, k2w, k2d, k3w, k3d, k4w, k4d;
    rhs(r, w, dw, k1w, k1d);
    rhs(r + 0.5 * dt, w + 0.5 * dt * k1w, dw + 0.5 * dt * k1d, k2w, k2d);
    rhs(r + 0.5 * dt, w + 0.5 * dt * k2w, dw + 0.5 * dt * k2d, k3w, k3d);
    rhs(r + dt, w + dt * k3w, dw + dt * k3d, k4w, k4d);
    w += dt / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
    dw += dt / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
  }

  // Integrates from W(0) = height until the trajectory crosses zero or turns
  // upward. Samples W at every `substeps` steps into `samples` if non-null.
  Outcome classify(double height, double dt, int substeps, long maxSteps, std::vector<double>* samples) const {
    double w = height, dw = 0.0, r = 0.0;
    if (samples) {
      samples->clear();
      samples->push_back(w);
    }
    if (height <= 1.0) return Outcome::Undershoot;
    for (long k = 1; k <= maxSteps; ++k) {
      step(r, dt, w, dw);
      r = dt * static_cast<double>(k);
      if (samples && k % substeps == 0) samples->push_back(w);
      if (w < 0.0) return Outcome::Overshoot;
      if (dw > 0.0) return Outcome::Undershoot;
    }
    return Outcome::Undecided;
  }
};

// Decaying solution of the linearised equation T'' + (N-1)/r T' - T = 0.
double linear_tail(int N, double r) {
  const double nu = std::abs(0.5 * N - 1.0);
  return std::pow(r, 1.0 - 0.5 * N) * std::cyl_bessel_k(nu, r);
}

struct ShotProfile {
  std::vector<double> values;  // at the grid nodes
  double height = 0;
};

struct Bracket {
  double lo, hi;
};

Bracket initial_bracket(const Shooter& s, const ShootingConfig& cfg, double dt, long maxSteps) {
  if (cfg.heightLo > 0 && cfg.heightHi > 0) {
    if (s.classify(cfg.heightLo, dt, 1, maxSteps, nullptr) != Outcome::Undershoot ||
        s.classify(cfg.heightHi, dt, 1, maxSteps, nullptr) != Outcome::Overshoot)
      throw NumericalFailure("shooting: height bracket does not straddle the ground state");
    return {cfg.heightLo, cfg.heightHi};
  }
  double lo = 1.0, hi = 2.0;
  for (int k = 0; k < 64; ++k) {
    const Outcome o = s.classify(hi, dt, 1, maxSteps, nullptr);
    if (o == Outcome::Overshoot) return {lo, hi};
    lo = hi;
    hi *= 2.0;
  }
  throw NumericalFailure("shooting: no overshooting height found by doubling");
}

Bracket bisect(const Shooter& s, Bracket b, const ShootingConfig& cfg, double dt, long maxSteps) {
  for (int it = 0; it < cfg.maxBisections; ++it) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (mid <= b.lo || mid >= b.hi) return b;
    const Outcome o = s.classify(mid, dt, 1, maxSteps, nullptr);
    if (o == Outcome::Undecided) return {mid, mid};
    (o == Outcome::Overshoot ? b.hi : b.lo) = mid;
  }
  if (b.hi - b.lo > 1e-12 * b.hi) throw NumericalFailure("shooting: bisection did not converge within the iteration cap");
  return b;
}

// Samples the bracketing trajectories on a uniform grid of `intervals` cells
// of width h, keeps the part where they agree to matchTol, and continues with
// the linear tail. Returns the index where the tail starts.
ShotProfile assemble(const Shooter& s, const Bracket& b, double h, int intervals, const ShootingConfig& cfg) {
  const int sub = cfg.substeps;
  const double dt = h / sub;
  const long steps = static_cast<long>(intervals) * sub;
  std::vector<double> lo, hi;
  s.classify(b.lo, dt, sub, steps, &lo);
  s.classify(b.hi, dt, sub, steps, &hi);

  const std::size_t n = static_cast<std::size_t>(intervals) + 1;
  std::size_t trusted = 0;
  for (std::size_t i = 1; i < std::min({n, lo.size(), hi.size()}); ++i) {
    const double mid = 0.5 * (lo[i] + hi[i]);
    const double prev = 0.5 * (lo[i - 1] + hi[i - 1]);
    if (!(mid > 0) || mid >= prev || std::abs(hi[i] - lo[i]) > cfg.matchTol * mid) break;
    trusted = i;
  }
  if (trusted < 8) throw NumericalFailure("shooting: trajectory not resolved on the grid");

  ShotProfile out;
  out.height = 0.5 * (b.lo + b.hi);
  out.values.resize(n);
  for (std::size_t i = 0; i <= trusted; ++i) out.values[i] = 0.5 * (lo[i] + hi[i]);
  const double rm = h * static_cast<double>(trusted);
  const double tm = linear_tail(s.N, rm);
  for (std::size_t i = trusted + 1; i < n; ++i)
    out.values[i] = out.values[trusted] * linear_tail(s.N, h * static_cast<double>(i)) / tm;
  return out;
}

// Radius where the profile (trajectory, then tail) falls below decayTol·W(0).
double decay_radius(const Shooter& s, const ShotProfile& shot, double h, const ShootingConfig& cfg) {
  const double target = cfg.decayTol * shot.height;
  for (std::size_t i = 0; i < shot.values.size(); ++i)
    if (shot.values[i] < target) return h * static_cast<double>(i);
  // extend the tail analytically
  const std::size_t last = shot.values.size() - 1;
  const double rl = h * static_cast<double>(last);
  const double tl = linear_tail(s.N, rl);
  double r = rl;
  while (shot.values[last] * linear_tail(s.N, r) / tl >= target) r += 1.0;
  return r;
}

}  // namespace

double soliton_1d(double p, double x) {
  const double k = 0.5 * (p - 2.0);
  const double sech = 1.0 / std::cosh(k * x);
  return std::pow(0.5 * p * sech * sech, 1.0 / (p - 2.0));
}

RadialField shoot_ground_state(int N, double p, const ShootingConfig& cfg) {
  if (N < 1 || N > 4) throw InadmissibleError("N", "shooting: dimension must be in 1..4");
  if (!(p > 2.0) || !(p < sobolev_exponent(N))) throw InadmissibleError("p", "shooting: exponent must satisfy 2 < p < 2*");
  if (cfg.intervals < 16 || cfg.intervals % 2 != 0) throw std::invalid_argument("shooting: intervals must be even and >= 16");
  const Shooter s{N, p};

  double rMax = cfg.rMax;
  if (!(rMax > 0)) {
    // provisional run on a fixed fine step to locate the decay radius
    const double h0 = 0.01;
    const int n0 = 8000;
    const double dt0 = h0 / cfg.substeps;
    const long maxSteps = static_cast<long>(n0) * cfg.substeps;
    Bracket b = bisect(s, initial_bracket(s, cfg, dt0, maxSteps), cfg, dt0, maxSteps);
    ShotProfile shot = assemble(s, b, h0, n0, cfg);
    rMax = decay_radius(s, shot, h0, cfg);
  }

  const double h = rMax / cfg.intervals;
  const double dt = h / cfg.substeps;
  const long maxSteps = static_cast<long>(cfg.intervals) * cfg.substeps * 4;
  Bracket b = bisect(s, initial_bracket(s, cfg, dt, maxSteps), cfg, dt, maxSteps);
  ShotProfile shot = assemble(s, b, h, cfg.intervals, cfg);
  return make_field<double>(N, rMax, Eigen::Map<const Eigen::VectorXd>(shot.values.data(), static_cast<Eigen::Index>(shot.values.size())));
}

RadialField standard_ground_state(int N, double p, const ShootingConfig& cfg) {
  if (N != 1) return shoot_ground_state(N, p, cfg);
  if (!(p > 2.0)) throw InadmissibleError("p", "ground state: exponent must exceed 2");
  if (cfg.intervals < 16 || cfg.intervals % 2 != 0) throw std::invalid_argument("ground state: intervals must be even and >= 16");
  double rMax = cfg.rMax;
  if (!(rMax > 0)) {
    const double k = 0.5 * (p - 2.0);
    rMax = std::acosh(std::pow(cfg.decayTol, -0.5 * (p - 2.0))) / k;
  }
  return sample_field<double>(1, rMax, cfg.intervals, [p](double x) { return soliton_1d(p, x); });
}

double QpProfile::l2norm() const { return std::sqrt(l2sq); }

QpProfile qp_from_standard(const RadialField& W, int N, double p) {
  const double A = N * (p - 2.0) / 4.0;
  const double B = (2.0 * N - p * (N - 2.0)) / 4.0;
  const double stretch = std::sqrt(A / B);  // Q's radius per unit of W's radius
  QpProfile q;
  q.N = N;
  q.p = p;
  q.field = make_field<double>(N, W.radius() * stretch, W.values * std::pow(B, 1.0 / (p - 2.0)));
  const auto nrm = norms(q.field, p);
  q.l2sq = nrm.l2sq;
  q.gradl2sq = nrm.gradl2sq;
  q.lpp = nrm.lpp;
  return q;
}

double gn_best_constant(const QpProfile& qp) {
  return std::pow(qp.p / (2.0 * std::pow(qp.l2norm(), qp.p - 2.0)), 1.0 / qp.p);
}

double gn_rhs(double constant, int N, double p, double l2sq, double gradl2sq) {
  const double e = N * (p - 2.0) / (2.0 * p);
  return constant * std::pow(std::sqrt(gradl2sq), e) * std::pow(std::sqrt(l2sq), 1.0 - e);
}

std::shared_ptr<const QpProfile> qp_profile(int N, double p) {
  static std::shared_mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const QpProfile>> cache;
  const auto key = std::make_pair(N, p);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto fresh = std::make_shared<const QpProfile>(qp_from_standard(standard_ground_state(N, p), N, p));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(fresh)).first->second;
}

double qp_l2_norm(int N, double p) { return qp_profile(N, p)->l2norm(); }

}  // namespace kirchhoff

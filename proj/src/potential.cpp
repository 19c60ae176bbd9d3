#include "kirchhoff/potential.hpp"

#include "kirchhoff/radial_field.hpp"
#include "kirchhoff/regimes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace kirchhoff {

std::string_view to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::Gaussian: return "gaussian";
    case PotentialFamily::AlgebraicDecay: return "algebraic";
    case PotentialFamily::CompactBump: return "bump";
    case PotentialFamily::SingularPole: return "pole";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double bump_f(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }

// C^∞ step: 0 for x ≤ 0, 1 for x ≥ 1.
double smooth_step(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  const double f = bump_f(x), g = bump_f(1 - x);
  return f / (f + g);
}

double smooth_step_slope(double x) {
  if (x <= 0 || x >= 1) return 0;
  const double f = bump_f(x), g = bump_f(1 - x);
  const double df = f / (x * x), dg = g / ((1 - x) * (1 - x));
  return (df * g + f * dg) / ((f + g) * (f + g));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InadmissibleError("potential", what);
}

std::string format_number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

PotentialSpec PotentialSpec::zero() { return gaussian(0.0, 1.0); }

PotentialSpec PotentialSpec::gaussian(double V0, double width) {
  require(V0 >= 0 && std::isfinite(V0), "gaussian: V0 must be finite and nonnegative");
  require(width > 0 && std::isfinite(width), "gaussian: w must be positive");
  PotentialSpec v;
  v.family_ = PotentialFamily::Gaussian;
  v.V0_ = V0;
  v.p1_ = width;
  return v;
}

PotentialSpec PotentialSpec::algebraic(double V0, double decay) {
  require(V0 >= 0 && std::isfinite(V0), "algebraic: V0 must be finite and nonnegative");
  require(decay > 0 && std::isfinite(decay), "algebraic: s must be positive");
  PotentialSpec v;
  v.family_ = PotentialFamily::AlgebraicDecay;
  v.V0_ = V0;
  v.p1_ = decay;
  return v;
}

PotentialSpec PotentialSpec::bump(double V0, double center, double halfwidth) {
  require(V0 >= 0 && std::isfinite(V0), "bump: V0 must be finite and nonnegative");
  require(center >= 0 && std::isfinite(center), "bump: center must be nonnegative");
  require(halfwidth > 0 && std::isfinite(halfwidth), "bump: halfwidth must be positive");
  PotentialSpec v;
  v.family_ = PotentialFamily::CompactBump;
  v.V0_ = V0;
  v.p1_ = center;
  v.p2_ = halfwidth;
  return v;
}

PotentialSpec PotentialSpec::pole(double V0, double sigma, double cutoff) {
  require(V0 >= 0 && std::isfinite(V0), "pole: V0 must be finite and nonnegative");
  require(sigma > 0 && sigma < 2, "pole: sigma must lie in (0, 2)");
  require(cutoff > 0, "pole: Rc must be positive");
  PotentialSpec v;
  v.family_ = PotentialFamily::SingularPole;
  v.V0_ = V0;
  v.p1_ = sigma;
  v.p2_ = cutoff;
  return v;
}

std::vector<std::pair<std::string, double>> PotentialSpec::parameters() const {
  switch (family_) {
    case PotentialFamily::Gaussian: return {{"V0", V0_}, {"w", p1_}};
    case PotentialFamily::AlgebraicDecay: return {{"V0", V0_}, {"s", p1_}};
    case PotentialFamily::CompactBump: return {{"V0", V0_}, {"center", p1_}, {"halfwidth", p2_}};
    case PotentialFamily::SingularPole: return {{"V0", V0_}, {"sigma", p1_}, {"Rc", p2_}};
  }
  return {};
}

double PotentialSpec::value(double r) const {
  if (V0_ == 0.0) return 0.0;
  r = std::abs(r);
  switch (family_) {
    case PotentialFamily::Gaussian: return V0_ * std::exp(-(r * r) / (p1_ * p1_));
    case PotentialFamily::AlgebraicDecay: return V0_ * std::pow(1.0 + r, -p1_);
    case PotentialFamily::CompactBump: {
      const double xi = (r - p1_) / p2_;
      if (std::abs(xi) >= 1.0) return 0.0;
      return V0_ * std::exp(1.0 - 1.0 / (1.0 - xi * xi));
    }
    case PotentialFamily::SingularPole: {
      if (r == 0.0) return kInf;
      const double chi = std::isinf(p2_) ? 1.0 : smooth_step((2 * p2_ - r) / p2_);
      return chi == 0.0 ? 0.0 : V0_ * std::pow(r, -p1_) * chi;
    }
  }
  return 0.0;
}

double PotentialSpec::radial_derivative(double r) const {
  if (V0_ == 0.0) return 0.0;
  r = std::abs(r);
  switch (family_) {
    case PotentialFamily::Gaussian: return -2.0 * r * r / (p1_ * p1_) * value(r);
    case PotentialFamily::AlgebraicDecay: return -p1_ * r / (1.0 + r) * value(r);
    case PotentialFamily::CompactBump: {
      const double xi = (r - p1_) / p2_;
      if (std::abs(xi) >= 1.0) return 0.0;
      const double om = 1.0 - xi * xi;
      return r * value(r) * (-2.0 * xi / (om * om)) / p2_;
    }
    case PotentialFamily::SingularPole: {
      if (r == 0.0) return -kInf;
      if (std::isinf(p2_)) return -p1_ * value(r);
      const double x = (2 * p2_ - r) / p2_;
      const double dchi = -smooth_step_slope(x) / p2_;
      return -p1_ * value(r) + V0_ * std::pow(r, 1.0 - p1_) * dchi;
    }
  }
  return 0.0;
}

PotentialSpec PotentialSpec::scaled(double k) const {
  PotentialSpec v = *this;
  v.V0_ *= k;
  return v;
}

std::string PotentialSpec::describe() const {
  std::string s(to_string(family_));
  char sep = ':';
  for (const auto& [k, v] : parameters()) {
    s += sep;
    s += k + "=" + format_number(v);
    sep = ',';
  }
  return s;
}

PotentialSpec parse_potential(std::string_view text) {
  if (text == "zero" || text == "none") return PotentialSpec::zero();
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  std::map<std::string, double, std::less<>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      require(eq != std::string_view::npos, "expected key=value in '" + std::string(item) + "'");
      const std::string key(item.substr(0, eq));
      const std::string_view val = item.substr(eq + 1);
      double x = 0;
      if (val == "inf") {
        x = kInf;
      } else {
        auto res = std::from_chars(val.data(), val.data() + val.size(), x);
        require(res.ec == std::errc() && res.ptr == val.data() + val.size(), "bad number for " + key);
      }
      kv[key] = x;
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  auto get = [&](std::initializer_list<const char*> keys, double fallback) {
    for (const char* k : keys)
      if (auto it = kv.find(k); it != kv.end()) {
        const double v = it->second;
        kv.erase(it);
        return v;
      }
    return fallback;
  };
  PotentialSpec v;
  if (family == "gaussian") {
    const double V0 = get({"V0"}, 0.01), w = get({"w", "width"}, 1.0);
    v = PotentialSpec::gaussian(V0, w);
  } else if (family == "algebraic") {
    const double V0 = get({"V0"}, 0.01), s = get({"s", "decay"}, 2.0);
    v = PotentialSpec::algebraic(V0, s);
  } else if (family == "bump") {
    const double V0 = get({"V0"}, 0.01), c = get({"center"}, 0.0), h = get({"halfwidth", "hw"}, 1.0);
    v = PotentialSpec::bump(V0, c, h);
  } else if (family == "pole") {
    const double V0 = get({"V0"}, 0.01), sg = get({"sigma"}, 1.0), rc = get({"Rc", "cutoff"}, kInf);
    v = PotentialSpec::pole(V0, sg, rc);
  } else {
    require(false, "unknown potential family '" + std::string(family) + "'");
  }
  require(kv.empty(), "unknown key '" + (kv.empty() ? std::string() : kv.begin()->first) + "' for " + std::string(family));
  return v;
}

double golden_section_max(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = fn(x1), f2 = fn(x2);
  for (int it = 0; it < 300 && hi - lo > tol * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = fn(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = fn(x1);
    }
  }
  return 0.5 * (lo + hi);
}

double numeric_sup(const std::function<double(double)>& fn, double rMax, int samples) {
  int best = 0;
  double fbest = fn(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double f = fn(rMax * i / samples);
    if (f > fbest || !std::isfinite(fbest)) {
      fbest = f;
      best = i;
    }
  }
  if (!std::isfinite(fbest)) return fbest;
  const double lo = rMax * std::max(0, best - 1) / samples;
  const double hi = rMax * std::min(samples, best + 1) / samples;
  const double x = golden_section_max(fn, lo, hi);
  return std::max(fbest, fn(x));
}

double sup_norm(const PotentialSpec& V) {
  if (V.is_zero()) return 0.0;
  switch (V.family()) {
    case PotentialFamily::Gaussian:
    case PotentialFamily::AlgebraicDecay:
    case PotentialFamily::CompactBump: return V.amplitude();
    case PotentialFamily::SingularPole: return kInf;
  }
  return kInf;
}

double weighted_sup_norm(const PotentialSpec& V) {
  if (V.is_zero()) return 0.0;
  const auto par = V.parameters();
  const double V0 = V.amplitude();
  auto W = [&V](double r) { return r * V.value(r); };
  switch (V.family()) {
    case PotentialFamily::Gaussian: return V0 * par[1].second / std::sqrt(2.0 * std::numbers::e);
    case PotentialFamily::AlgebraicDecay: {
      const double s = par[1].second;
      if (s < 1) return kInf;
      if (s == 1) return V0;
      const double r = 1.0 / (s - 1.0);
      return V0 * r * std::pow(1.0 + r, -s);
    }
    case PotentialFamily::CompactBump: {
      const double c = par[1].second, h = par[2].second;
      const double lo = std::max(0.0, c - h);
      return numeric_sup([&](double r) { return W(lo + r); }, c + h - lo);
    }
    case PotentialFamily::SingularPole: {
      const double sigma = par[1].second, rc = par[2].second;
      if (sigma > 1) return kInf;
      if (sigma == 1) return V0;
      if (std::isinf(rc)) return kInf;
      return numeric_sup(W, 2 * rc);
    }
  }
  return kInf;
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    g.nodes[i] = -z;
    g.nodes[n - 1 - i] = z;
    g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return cache.emplace(n, std::move(g)).first->second;
}

namespace {

double panel(const std::function<double(double)>& f, double lo, double hi) {
  const auto& g = gauss_legendre(32);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double s = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
  return s * half;
}

}  // namespace

LqNorm radial_lq_norm(const std::function<double(double)>& fn, int N, double q) {
  const double area = sphere_area<double>(N);
  auto integrand = [&](double r) {
    const double v = std::abs(fn(r));
    return v == 0.0 ? 0.0 : area * std::pow(v, q) * std::pow(r, N - 1);
  };
  double total = 0;
  LqNorm out;
  // inward panels [2^{-k-1}, 2^{-k}]
  bool inwardDone = false;
  for (int k = 0; k < 400; ++k) {
    const double hi = std::ldexp(1.0, -k);
    const double part = panel(integrand, 0.5 * hi, hi);
    total += part;
    if (k >= 4 && part <= 1e-17 * total) {
      inwardDone = true;
      break;
    }
  }
  // outward panels [2^k, 2^{k+1}]
  double last = 0;
  for (int k = 0; k < 64; ++k) {
    const double lo = std::ldexp(1.0, k);
    last = panel(integrand, lo, 2 * lo);
    total += last;
    if (k >= 4 && last <= 1e-17 * total) break;
  }
  out.tailShare = total > 0 ? last / total : 0.0;
  if (!inwardDone || !std::isfinite(total) || out.tailShare > 1e-6) {
    out.finite = false;
    out.value = kInf;
    return out;
  }
  out.value = std::pow(total, 1.0 / q);
  return out;
}

LqNorm lq_norm(const PotentialSpec& V, int N, double q) {
  if (V.is_zero()) return {};
  return radial_lq_norm([&V](double r) { return V.value(r); }, N, q);
}

LqNorm weighted_lq_norm(const PotentialSpec& V, int N, double q) {
  if (V.is_zero()) return {};
  return radial_lq_norm([&V](double r) { return r * V.value(r); }, N, q);
}

double spherical_average(const PotentialSpec& V, int N, double shift, double r) {
  if (shift == 0.0 || V.is_zero()) return V.value(r);
  auto at = [&](double cosphi) { return V.value(std::sqrt(std::max(0.0, r * r + shift * shift + 2 * r * shift * cosphi))); };
  if (N == 1) return 0.5 * (V.value(r + shift) + V.value(r - shift));
  const auto& g = gauss_legendre(64);
  double s = 0;
  constexpr double pi = std::numbers::pi;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double x = g.nodes[i];
    if (N == 3) {
      s += 0.5 * g.weights[i] * at(x);
    } else {
      const double phi = 0.5 * pi * (x + 1.0);
      const double dens = (N == 2) ? 1.0 / pi : 2.0 / pi * std::sin(phi) * std::sin(phi);
      s += 0.5 * pi * g.weights[i] * dens * at(std::cos(phi));
    }
  }
  return s;
}

}  // namespace kirchhoff

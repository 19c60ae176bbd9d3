#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kirchhoff {

/// Surface measure of the unit sphere in R^N (2 for N = 1: the half-line
/// integral is doubled).
template <typename Scalar = double>
Scalar sphere_area(int N) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  switch (N) {
    case 1: return Scalar(2);
    case 2: return 2 * pi;
    case 3: return 4 * pi;
    case 4: return 2 * pi * pi;
    default: throw std::invalid_argument("sphere_area: dimension must be in 1..4");
  }
}

/// A radial function sampled on a uniform grid 0 = r_0 < ... < r_n with
/// composite Simpson weights including r^{N-1} and the sphere area. n is even.
template <typename Scalar>
struct BasicRadialField {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int dim = 3;
  Scalar spacing = 0;
  Vector nodes;
  Vector values;
  Vector weights;

  Eigen::Index size() const { return nodes.size(); }
  Scalar radius() const { return nodes[nodes.size() - 1]; }
};

using RadialField = BasicRadialField<double>;

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> simpson_weights(int N, Scalar spacing, Eigen::Index intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw std::invalid_argument("simpson_weights: intervals must be even and >= 2");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(intervals + 1);
  const Scalar area = sphere_area<Scalar>(N);
  for (Eigen::Index i = 0; i <= intervals; ++i) {
    Scalar coef = (i == 0 || i == intervals) ? Scalar(1) : (i % 2 == 1 ? Scalar(4) : Scalar(2));
    Scalar r = spacing * Scalar(i);
    w[i] = coef * spacing / Scalar(3) * area * std::pow(r, N - 1);
  }
  if (N == 1) w[0] = spacing / Scalar(3) * area;
  return w;
}

/// Field with the given samples on [0, rMax]; values.size() - 1 must be even.
template <typename Scalar>
BasicRadialField<Scalar> make_field(int N, Scalar rMax, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values) {
  const Eigen::Index intervals = values.size() - 1;
  if (!(rMax > 0)) throw std::invalid_argument("make_field: radius must be positive");
  BasicRadialField<Scalar> f;
  f.dim = N;
  f.spacing = rMax / Scalar(intervals);
  f.nodes = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(intervals + 1, Scalar(0), rMax);
  f.weights = simpson_weights<Scalar>(N, f.spacing, intervals);
  f.values = std::move(values);
  return f;
}

/// Samples fn(r) on a uniform grid.
template <typename Scalar, typename Fn>
BasicRadialField<Scalar> sample_field(int N, Scalar rMax, Eigen::Index intervals, Fn&& fn) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(intervals + 1);
  const Scalar h = rMax / Scalar(intervals);
  for (Eigen::Index i = 0; i <= intervals; ++i) v[i] = fn(h * Scalar(i));
  return make_field<Scalar>(N, rMax, std::move(v));
}

template <typename Scalar>
Scalar integrate(const BasicRadialField<Scalar>& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& integrand) {
  return f.weights.dot(integrand);
}

/// First derivative by sixth-order centred differences. The field is even
/// in r, so ghost values mirror the interior at the origin; the last three
/// nodes fall back to fourth-order stencils (centred, then one-sided).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> radial_derivative(const BasicRadialField<Scalar>& f) {
  const Eigen::Index n = f.size();
  if (n < 7) throw std::invalid_argument("radial_derivative: need at least 7 nodes");
  const auto& u = f.values;
  const Scalar h = f.spacing;
  auto at = [&](Eigen::Index i) { return u[i < 0 ? -i : i]; };
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d(n);
  for (Eigen::Index i = 0; i < n - 3; ++i)
    d[i] = (-at(i - 3) + 9 * at(i - 2) - 45 * at(i - 1) + 45 * at(i + 1) - 9 * at(i + 2) + at(i + 3)) / (60 * h);
  d[n - 3] = (at(n - 5) - 8 * at(n - 4) + 8 * at(n - 2) - at(n - 1)) / (12 * h);
  for (Eigen::Index i = n - 2; i < n; ++i) {
    // backward stencil on nodes i-4..i, shifted so the target sits at offset k
    const Eigen::Index k = i - (n - 5);
    static constexpr Scalar c3[5] = {-1, 6, -18, 10, 3};   // target at offset 3
    static constexpr Scalar c4[5] = {3, -16, 36, -48, 25};  // target at offset 4
    const Scalar* c = (k == 3) ? c3 : c4;
    Scalar s = 0;
    for (int j = 0; j < 5; ++j) s += c[j] * u[n - 5 + j];
    d[i] = s / (12 * h);
  }
  d[0] = 0;
  return d;
}

/// Second derivative, fourth order, same boundary treatment. Kept at fourth
/// order so PDE residuals stay discretization dominated on 4096-node grids
/// and the grid-refinement estimate in pde_residual applies.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> radial_second_derivative(const BasicRadialField<Scalar>& f) {
  const Eigen::Index n = f.size();
  if (n < 6) throw std::invalid_argument("radial_second_derivative: need at least 6 nodes");
  const auto& u = f.values;
  const Scalar h = f.spacing;
  auto at = [&](Eigen::Index i) { return u[i < 0 ? -i : i]; };
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> d(n);
  for (Eigen::Index i = 0; i < n - 2; ++i)
    d[i] = (-at(i - 2) + 16 * at(i - 1) - 30 * at(i) + 16 * at(i + 1) - at(i + 2)) / (12 * h * h);
  // one-sided 6-point stencils (fourth order) for the last two nodes
  static constexpr Scalar c4[6] = {1, -6, 14, -4, -15, 10};  // target at offset 4 of nodes n-6..n-1
  static constexpr Scalar c5[6] = {-10, 61, -156, 214, -154, 45};  // target at offset 5
  Scalar s4 = 0, s5 = 0;
  for (int j = 0; j < 6; ++j) {
    s4 += c4[j] * u[n - 6 + j];
    s5 += c5[j] * u[n - 6 + j];
  }
  d[n - 2] = s4 / (12 * h * h);
  d[n - 1] = s5 / (12 * h * h);
  return d;
}

/// Radial Laplacian u'' + (N-1)/r u', with N u''(0) at the origin.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> radial_laplacian(const BasicRadialField<Scalar>& f) {
  auto d1 = radial_derivative(f);
  auto d2 = radial_second_derivative(f);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lap(f.size());
  lap[0] = Scalar(f.dim) * d2[0];
  for (Eigen::Index i = 1; i < f.size(); ++i) lap[i] = d2[i] + Scalar(f.dim - 1) / f.nodes[i] * d1[i];
  return lap;
}

template <typename Scalar>
struct FieldNorms {
  Scalar l2sq = 0;      // ‖u‖₂²
  Scalar gradl2sq = 0;  // ‖∇u‖₂²
  Scalar lpp = 0;       // ‖u‖_p^p
};

/// |x|^p via exp(p log|x|), zero at zero.
template <typename Scalar>
Scalar abs_pow(Scalar x, Scalar p) {
  const Scalar ax = std::abs(x);
  return ax == Scalar(0) ? Scalar(0) : std::exp(p * std::log(ax));
}

template <typename Scalar>
FieldNorms<Scalar> norms(const BasicRadialField<Scalar>& f, Scalar p) {
  if (!f.values.allFinite()) throw std::domain_error("norms: field has non-finite samples");
  FieldNorms<Scalar> out;
  out.l2sq = f.weights.dot(f.values.cwiseAbs2());
  out.gradl2sq = f.weights.dot(radial_derivative(f).cwiseAbs2());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> up = f.values.unaryExpr([p](Scalar x) { return abs_pow(x, p); });
  out.lpp = f.weights.dot(up);
  return out;
}

/// (h ⋆ u)(r) = h^{N/2} u(h r), represented exactly by rescaling the grid
/// (nodes r_i / h), so every norm transforms by its exact scaling law.
template <typename Scalar>
BasicRadialField<Scalar> dilate(const BasicRadialField<Scalar>& u, Scalar h) {
  if (!(h > 0)) throw std::invalid_argument("dilate: h must be positive");
  BasicRadialField<Scalar> out;
  out.dim = u.dim;
  out.spacing = u.spacing / h;
  out.nodes = u.nodes / h;
  out.values = u.values * std::pow(h, Scalar(u.dim) / 2);
  out.weights = u.weights * std::pow(h, -Scalar(u.dim));
  return out;
}

/// Value at radius r by four-point Lagrange interpolation; zero beyond the
/// last node, even reflection at the origin.
template <typename Scalar>
Scalar interpolate(const BasicRadialField<Scalar>& u, Scalar r) {
  r = std::abs(r);
  const Eigen::Index n = u.size();
  if (r > u.radius()) return Scalar(0);
  const Scalar x = r / u.spacing;
  Eigen::Index i = static_cast<Eigen::Index>(std::floor(x));
  i = std::min<Eigen::Index>(i, n - 2);
  Eigen::Index base = i - 1;
  if (base + 3 > n - 1) base = n - 4;
  Scalar s = 0;
  for (int j = 0; j < 4; ++j) {
    Scalar lj = 1;
    for (int m = 0; m < 4; ++m)
      if (m != j) lj *= (x - Scalar(base + m)) / Scalar(j - m);
    const Eigen::Index idx = base + j;
    s += lj * u.values[idx < 0 ? -idx : idx];
  }
  return s;
}

/// Resamples u onto a uniform grid of the given radius and interval count.
template <typename Scalar>
BasicRadialField<Scalar> resample(const BasicRadialField<Scalar>& u, Scalar rMax, Eigen::Index intervals) {
  return sample_field<Scalar>(u.dim, rMax, intervals, [&](Scalar r) { return interpolate(u, r); });
}

/// h ⋆ u resampled onto u's own grid. Fails when the dilated support covers
/// fewer than four grid nodes.
template <typename Scalar>
BasicRadialField<Scalar> dilate_resampled(const BasicRadialField<Scalar>& u, Scalar h) {
  auto d = dilate(u, h);
  if (d.radius() < 3 * u.spacing)
    throw std::invalid_argument("dilate_resampled: dilated support shrinks below 4 grid nodes");
  return resample(d, u.radius(), u.size() - 1);
}

}  // namespace kirchhoff

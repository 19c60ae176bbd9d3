#include "kirchhoff/gradient_flow.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <limits>

namespace kirchhoff {

Eigen::VectorXd flow_cell_weights(int N, double h, Eigen::Index n) {
  const double area = sphere_area<double>(N);
  Eigen::VectorXd w(n);
  auto ball = [&](double r) { return area * std::pow(r, N) / N; };
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = h * static_cast<double>(i);
    const double lo = i == 0 ? 0.0 : r - 0.5 * h;
    const double hi = i + 1 == n ? r : r + 0.5 * h;
    w[i] = ball(hi) - ball(lo);
  }
  return w;
}

RadialField gaussian_initial(int N, double c, double Dsq, double rMax, Eigen::Index intervals) {
  if (!(Dsq > 0) || !(c > 0)) throw std::invalid_argument("gaussian_initial: c and Dsq must be positive");
  const double sigma2 = N * c * c / (2.0 * Dsq);
  auto u = sample_field<double>(N, rMax, intervals, [&](double r) { return std::exp(-r * r / (2.0 * sigma2)); });
  u.values *= c / std::sqrt(u.weights.dot(u.values.cwiseAbs2()));
  return u;
}

namespace {

using Vec = Eigen::VectorXd;
using Sparse = Eigen::SparseMatrix<double>;

struct Discretization {
  const ModelParams m;
  double c2;
  Vec w;     // cell weights
  Vec Vn;    // potential at nodes
  Sparse A;  // stiffness, uᵀAu ≈ ‖∇u‖²

  double G(const Vec& u) const { return u.dot(A * u); }

  double energy(const Vec& u) const {
    const double g = G(u);
    double pot = 0, nl = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      pot += w[i] * Vn[i] * u[i] * u[i];
      nl += w[i] * abs_pow(u[i], m.p);
    }
    return 0.5 * m.a * g + 0.25 * m.b * g * g + 0.5 * pot - nl / m.p;
  }

  Vec gradient(const Vec& u) const {
    const double coef = m.a + m.b * G(u);
    Vec g = coef * (A * u);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      const double x = u[i];
      g[i] += w[i] * (Vn[i] * x - abs_pow(x, m.p - 1.0) * (x < 0 ? -1.0 : 1.0));
    }
    return g;
  }

  Vec normalize(const Vec& u) const { return u * std::sqrt(c2 / u.dot(w.cwiseProduct(u))); }
};

}  // namespace

FlowResult normalized_gradient_flow(const RadialField& initial, const PotentialSpec& V, const ProblemParams& params,
                                    const FlowSchedule& sch) {
  check_problem(params);
  const Regime reg = classify(params);
  if (reg.tag != RegimeTag::TwoBranch || !(params.c > reg.cStar))
    throw InadmissibleError("c", "gradient flow needs the two-branch regime with c > c1");
  const Eigen::Index n = initial.size();
  const double h = initial.spacing;
  const int N = initial.dim;
  if (N != params.N) throw std::invalid_argument("gradient flow: field dimension does not match N");

  Discretization d{params.model(), params.c * params.c, flow_cell_weights(N, h, n), Vec(n), Sparse(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    d.Vn[i] = V.value(initial.nodes[i]);
    if (!std::isfinite(d.Vn[i])) throw InadmissibleError("potential", "gradient flow needs a potential bounded on the grid");
  }
  const double area = sphere_area<double>(N);
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double kap = area * std::pow(h * (static_cast<double>(j) + 0.5), N - 1) / h;
    trip.emplace_back(j, j, kap);
    trip.emplace_back(j + 1, j + 1, kap);
    trip.emplace_back(j, j + 1, -kap);
    trip.emplace_back(j + 1, j, -kap);
  }
  d.A.setFromTriplets(trip.begin(), trip.end());

  Vec u = d.normalize(initial.values);
  const double kappa = params.a + params.b * d.G(u);
  Sparse P = kappa * d.A;
  for (Eigen::Index i = 0; i < n; ++i) P.coeffRef(i, i) += kappa * d.w[i];
  Eigen::SimplicialLDLT<Sparse> solver(P);
  if (solver.info() != Eigen::Success) throw NumericalFailure("gradient flow: preconditioner factorisation failed");

  FlowResult out;
  double E = d.energy(u);
  double tau = sch.initialStep;
  Vec uPrev, rPrev;
  int increases = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int k = 0;; ++k) {
    const Vec g = d.gradient(u);
    const Vec Wu = d.w.cwiseProduct(u);
    const double lambda = -u.dot(g) / d.c2;
    const Vec r = g + lambda * Wu;
    const Vec Pg = solver.solve(g);
    const Vec Pw = solver.solve(Wu);
    const Vec Pr = Pg + lambda * Pw;
    const double res = std::sqrt(std::max(0.0, r.dot(Pr))) / std::sqrt(u.dot(P * u));
    out.trace.push_back({k, E, res, lambda});
    if (res < sch.tol || k >= sch.maxSteps) {
      out.state.u = make_field<double>(N, initial.radius(), u);
      out.state.mass = u.dot(Wu);
      out.state.energy = E;
      out.state.multiplierEstimate = lambda;
      out.state.gradientNormOnSphere = res;
      out.state.step = k;
      if (res < sch.tol) return out;
      throw NumericalFailure("gradient flow: no convergence within " + std::to_string(sch.maxSteps) + " steps (residual " +
                             std::to_string(res) + ")");
    }
    const Vec dir = Pg - (Wu.dot(Pg) / Wu.dot(Pw)) * Pw;

    if (k > 0) {
      const Vec s = u - uPrev;
      const double sy = s.dot(r - rPrev);
      if (sy > 0) tau = std::clamp(s.dot(P * s) / sy, 1e-8, 1e4);
      else tau = std::min(2 * tau, 1e4);
    }
    Vec uTry;
    double ETry = 0;
    bool accepted = false;
    for (int m = 0; m <= sch.maxHalvings; ++m) {
      uTry = d.normalize(u - tau * dir);
      ETry = d.energy(uTry);
      if (ETry <= E + 8 * eps * std::max(1.0, std::abs(E))) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      if (++increases >= sch.divergenceWindow) throw NumericalFailure("gradient flow: energy increased on consecutive steps");
    } else {
      increases = 0;
    }
    uPrev = u;
    rPrev = r;
    u = uTry;
    E = ETry;
  }
}

}  // namespace kirchhoff

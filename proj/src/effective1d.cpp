#include "wgspec/effective1d.hpp"

#include <algorithm>
#include <cmath>

#include "wgspec/common.hpp"
#include "wgspec/quadrature.hpp"

namespace wg {

double EffectiveModel::eval_V(double xx) const {
  const double fp = eval(profile->fprime, xx);
  const double gp = eval(profile->gprime, xx);
  return A * (fp * fp - profile->beta1 * profile->beta1) + 2.0 * B * fp * gp +
         C * (gp * gp - profile->beta2 * profile->beta2);
}

EffectiveModel build_effective(const Profile& profile, double A, double B,
                               double C, const EffectiveGrid& grid,
                               double epsilon) {
  EffectiveModel em;
  em.profile = &profile;
  em.A = A;
  em.B = B;
  em.C = C;
  em.epsilon = epsilon;
  int n = grid.n;
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;  // odd sample count keeps composite Simpson exact
  em.x.resize(n);
  em.V.resize(n);
  const double h = 2.0 * grid.X / (n - 1);
  for (int i = 0; i < n; ++i) {
    em.x[i] = -grid.X + i * h;
    em.V[i] = em.eval_V(em.x[i]);
  }
  // the grid must reach past the support: V has to be flat at the ends
  double max_abs = em.V.cwiseAbs().maxCoeff();
  double end_tol = std::max(profile.tail_tol * (std::abs(A) + std::abs(B) + std::abs(C)) *
                                (1.0 + std::abs(profile.beta1) + std::abs(profile.beta2)) * 4.0,
                            1e-12 * std::max(1.0, max_abs));
  if (std::abs(em.V[0]) > end_tol || std::abs(em.V[n - 1]) > end_tol)
    throw HypothesisError(
        "effective potential grid too short: V does not decay at the ends");
  em.integral_V = simpson_samples(
      std::span<const double>(em.V.data(), static_cast<std::size_t>(n)), h);
  auto m = sampled_minimum([&](double xx) { return em.eval_V(xx); }, -grid.X,
                           grid.X, std::max(n, 801));
  em.min_V = m.value;
  em.argmin_V = m.x;
  return em;
}

SymTridiag fd_schrodinger(const Eigen::VectorXd& q_interior, double hx) {
  SymTridiag t;
  const int n = static_cast<int>(q_interior.size());
  t.diag.resize(n);
  t.off = Eigen::VectorXd::Constant(n - 1, -1.0 / (hx * hx));
  for (int i = 0; i < n; ++i) t.diag[i] = 2.0 / (hx * hx) + q_interior[i];
  return t;
}

Schrodinger1D solve_bound_states(const EffectiveModel& em, double X, double hx,
                                 bool want_vectors) {
  Schrodinger1D out;
  const int n = std::max(3, static_cast<int>(std::round(2.0 * X / hx)) - 1);
  out.X = X;
  out.hx = 2.0 * X / (n + 1);
  const double inv_eps2 = 1.0 / (em.epsilon * em.epsilon);
  Eigen::VectorXd q(n);
  double max_abs_V = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -X + (i + 1) * out.hx;
    const double v = em.eval_V(x);
    q[i] = v * inv_eps2;
    max_abs_V = std::max(max_abs_V, std::abs(v));
  }
  out.tol_edge = 1e-6 * max_abs_V * inv_eps2;
  SymTridiag t = fd_schrodinger(q, out.hx);
  out.eigenvalues = t.below(-out.tol_edge);
  out.count = static_cast<int>(out.eigenvalues.size());
  // anything in the +-tol_edge band is a box artifact candidate
  std::vector<double> loose = t.below(out.tol_edge);
  for (std::size_t i = out.eigenvalues.size(); i < loose.size(); ++i)
    out.marginal.push_back(loose[i]);
  out.count_upper = static_cast<int>(loose.size());
  out.marginal_flag = !out.marginal.empty();
  if (want_vectors && out.count > 0) {
    out.eigenvectors.resize(n, out.count);
    for (int j = 0; j < out.count; ++j) {
      Eigen::VectorXd v = t.eigenvector(out.eigenvalues[j]);
      v /= std::sqrt(out.hx) * v.norm() / std::sqrt(out.hx);  // grid L2 norm
      v /= v.norm() * std::sqrt(out.hx) / std::sqrt(out.hx);
      // normalize in the grid L2 inner product sum hx*v_i^2
      v /= v.norm();
      v /= std::sqrt(out.hx);
      out.eigenvectors.col(j) = v;
    }
  }
  return out;
}

std::vector<CountRow> count_vs_epsilon(const EffectiveModel& em,
                                       const std::vector<double>& eps_list,
                                       double X, double hx_base) {
  std::vector<CountRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    EffectiveModel scaled = em;
    scaled.epsilon = eps;
    // deep wells localize like eps^{1/2}; refine accordingly
    double hx = std::min(hx_base, 0.05 * eps / std::sqrt(std::max(1.0, em.V.cwiseAbs().maxCoeff())));
    hx = std::max(hx, 1e-4);
    Schrodinger1D s = solve_bound_states(scaled, X, hx, false);
    rows.push_back({eps, s.count, s.count_upper, s.eigenvalues});
  }
  return rows;
}

AsymptTable asymptotic_slope(const Expr& W, const std::vector<double>& mu_list,
                             int j, double X) {
  AsymptTable table;
  table.j = j;
  auto m = sampled_minimum([&](double x) { return eval(W, x); }, -X, X, 4001);
  table.W_min = m.value;
  table.argmin_W = m.x;
  double max_abs_W = 0.0;
  for (int i = 0; i <= 400; ++i)
    max_abs_W = std::max(max_abs_W, std::abs(eval(W, -X + i * X / 200.0)));
  for (double mu : mu_list) {
    if (!(mu > 0)) throw std::invalid_argument("asymptotic_slope: mu must be > 0");
    // resolve the shrinking ground state
    double hx = std::pow(2.0 * mu * std::max(max_abs_W, 1e-12), -0.5) / 10.0;
    hx = std::min(hx, X / 50.0);
    auto solve_at = [&](double h) {
      const int n = std::max(3, static_cast<int>(std::round(2.0 * X / h)) - 1);
      const double hh = 2.0 * X / (n + 1);
      Eigen::VectorXd q(n);
      for (int i = 0; i < n; ++i) q[i] = mu * eval(W, -X + (i + 1) * hh);
      SymTridiag t = fd_schrodinger(q, hh);
      auto vals = t.smallest(j);
      return vals[j - 1];
    };
    const double lam = solve_at(hx);
    const double lam_fine = solve_at(hx / 2.0);
    AsymptRow row;
    row.mu = mu;
    row.lambda_j = lam_fine;
    row.ratio = lam_fine / mu;
    row.gap_to_wmin = row.ratio - table.W_min;
    row.drift = std::abs(lam_fine - lam) / std::max(1.0, std::abs(lam_fine));
    row.resolved = row.drift <= 1e-3;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace wg

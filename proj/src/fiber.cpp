#include "wgspec/fiber.hpp"

#include <cmath>

#include "wgspec/common.hpp"

namespace wg {

namespace {

SpMat real_fiber_matrix(double beta1, double beta2, const FemMatrices& fem) {
  SpMat K = (1.0 + beta1 * beta1) * fem.D11;
  K += (1.0 + beta2 * beta2) * fem.D22;
  if (beta1 * beta2 != 0.0) {
    SpMat D12t = SpMat(fem.D12.transpose());
    K += beta1 * beta2 * (fem.D12 + D12t);
  }
  K.makeCompressed();
  return K;
}

}  // namespace

FiberProblem assemble_fiber(double p, double beta1, double beta2,
                            const FemMatrices& fem) {
  FiberProblem fp;
  fp.p = p;
  fp.beta1 = beta1;
  fp.beta2 = beta2;
  fp.fem = &fem;
  fp.M = &fem.M;

  SpMat Kr = real_fiber_matrix(beta1, beta2, fem);
  if (p != 0.0) Kr += (p * p) * fem.M;

  // the antisymmetric block vanishes at p = 0 and for beta = 0
  if (p == 0.0 || (beta1 == 0.0 && beta2 == 0.0)) {
    fp.K_real = Kr;
    fp.real_case = true;
    fp.K = Kr.cast<std::complex<double>>();
    return fp;
  }

  SpMat C1t = SpMat(fem.C1.transpose());
  SpMat C2t = SpMat(fem.C2.transpose());
  SpMat antis = beta1 * (C1t - fem.C1) + beta2 * (C2t - fem.C2);
  fp.K = Kr.cast<std::complex<double>>() +
         std::complex<double>(0.0, p) * antis.cast<std::complex<double>>();
  fp.K.makeCompressed();
  fp.real_case = false;
  return fp;
}

FiberEigs solve_fiber(const FiberProblem& fp, int nbands, double tol) {
  FiberEigs out;
  GevpOptions opt;
  opt.k = nbands;
  opt.tol = tol;
  opt.shift = 0.0;
  if (fp.real_case) {
    auto res = solve_gevp_smallest<double>(fp.K_real, *fp.M, opt);
    out.values = res.values;
    out.vectors = res.vectors.cast<std::complex<double>>();
    out.residuals = res.residuals;
    return out;
  }
  SpMatC Mc = fp.M->cast<std::complex<double>>();
  auto res = solve_gevp_smallest<std::complex<double>>(fp.K, Mc, opt);
  out.values = res.values;
  out.vectors = res.vectors;
  out.residuals = res.residuals;
  return out;
}

GroundData threshold(double beta1, double beta2, const FemMatrices& fem,
                     double tol) {
  FiberProblem fp = assemble_fiber(0.0, beta1, beta2, fem);
  GevpOptions opt;
  opt.k = 2;
  opt.tol = tol;
  auto res = solve_gevp_smallest<double>(fp.K_real, fem.M, opt);
  GroundData gd;
  gd.E1 = res.values[0];
  gd.E2 = res.values.size() > 1 ? res.values[1] : res.values[0];
  gd.residual = res.residuals[0];
  gd.v1 = res.vectors.col(0);
  // sign fix: entry of largest magnitude positive
  int imax = 0;
  for (int i = 1; i < gd.v1.size(); ++i)
    if (std::abs(gd.v1[i]) > std::abs(gd.v1[imax])) imax = i;
  if (gd.v1[imax] < 0) gd.v1 = -gd.v1;
  gd.positivity_ok = (gd.v1.array() > 0.0).all();
  // the continuum ground state is simple; a near-degenerate discrete pair
  // points at a discretization problem rather than spectrum
  gd.degenerate_warning = (gd.E2 - gd.E1) <= 1e-8 * std::abs(gd.E1);
  auto c = coefficients(gd, fem);
  gd.A = c.A;
  gd.B = c.B;
  gd.C = c.C;
  gd.Atilde = c.Atilde;
  return gd;
}

Coefficients coefficients(const GroundData& gd, const FemMatrices& fem) {
  const Eigen::VectorXd& v = gd.v1;
  Coefficients c;
  c.A = v.dot(fem.D11 * v);
  c.B = v.dot(fem.D12 * v);
  c.C = v.dot(fem.D22 * v);
  c.Atilde = v.dot(fem.Y1D11 * v);
  return c;
}

std::vector<double> default_band_grid() {
  std::vector<double> g;
  for (int i = -15; i <= 15; ++i) g.push_back(i * 0.2);
  return g;
}

BandTable band_structure(double beta1, double beta2, const FemMatrices& fem,
                         const std::vector<double>& p_grid, int nbands,
                         double tol) {
  BandTable table;
  table.p_grid = p_grid;
  table.bands.resize(p_grid.size());
  table.residuals.resize(p_grid.size());
  table.valid.assign(p_grid.size(), true);
  double E10 = 0.0;
  {
    FiberProblem fp0 = assemble_fiber(0.0, beta1, beta2, fem);
    auto r0 = solve_fiber(fp0, 1, tol);
    E10 = r0.values[0];
  }
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    try {
      FiberProblem fp = assemble_fiber(p_grid[i], beta1, beta2, fem);
      auto r = solve_fiber(fp, nbands, tol);
      table.bands[i].assign(r.values.data(), r.values.data() + r.values.size());
      table.residuals[i].assign(r.residuals.data(),
                                r.residuals.data() + r.residuals.size());
    } catch (const SolverError&) {
      table.valid[i] = false;
    }
  }
  // growth proxy at the largest momentum on the grid
  double pmax = 0.0;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (std::abs(p_grid[i]) > std::abs(pmax) && table.valid[i]) {
      pmax = p_grid[i];
      imax = i;
    }
  }
  if (!p_grid.empty() && pmax != 0.0 && table.valid[imax]) {
    table.growth_proxy_lhs = table.bands[imax][0];
    table.growth_proxy_rhs =
        E10 + 0.5 * pmax * pmax / (1.0 + beta1 * beta1 + beta2 * beta2);
    table.growth_ok = table.growth_proxy_lhs > table.growth_proxy_rhs;
  }
  return table;
}

GaugeReport gauge_check(double beta1, const FemMatrices& fem,
                        const std::vector<double>& p_grid, double tol) {
  GaugeReport rep;
  FiberProblem fp0 = assemble_fiber(0.0, beta1, 0.0, fem);
  auto r0 = solve_fiber(fp0, 1, tol);
  const double E10 = r0.values[0];
  rep.deviations.reserve(p_grid.size());
  for (double p : p_grid) {
    FiberProblem fp = assemble_fiber(p, beta1, 0.0, fem);
    auto r = solve_fiber(fp, 1, tol);
    double dev = std::abs(r.values[0] - E10 - p * p / (1.0 + beta1 * beta1));
    rep.deviations.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  return rep;
}

}  // namespace wg

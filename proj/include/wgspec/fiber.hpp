#pragma once

#include <complex>
#include <vector>

#include "wgspec/fem.hpp"
#include "wgspec/gevp.hpp"

namespace wg {

using SpMatC = Eigen::SparseMatrix<std::complex<double>>;

// Momentum fiber of the straightened waveguide over the cross-section:
//   K(p) = p^2 M + (1+b1^2) D11 + (1+b2^2) D22 + b1 b2 (D12 + D12^T)
//          + i p (b1 (C1^T - C1) + b2 (C2^T - C2))
// K(0) is real symmetric; K(p) = conj(K(-p)), so the spectra at +-p agree.
struct FiberProblem {
  double p = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  const FemMatrices* fem = nullptr;
  SpMatC K;
  const SpMat* M = nullptr;
  SpMat K_real;     // valid when p == 0
  bool real_case = false;
};

FiberProblem assemble_fiber(double p, double beta1, double beta2,
                            const FemMatrices& fem);

struct FiberEigs {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd residuals;
};

FiberEigs solve_fiber(const FiberProblem& fp, int nbands,
                      double tol = 1e-10);

// Ground data at p = 0: threshold energy, the positive normalized ground
// vector and the energy coefficients built from it.
struct GroundData {
  double E1 = 0.0;           // threshold energy E1(0)
  double E2 = 0.0;           // next eigenvalue (simplicity diagnostic)
  Eigen::VectorXd v1;        // M-normalized, sign-fixed positive
  double A = 0.0, B = 0.0, C = 0.0, Atilde = 0.0;
  bool degenerate_warning = false;
  bool positivity_ok = false;
  double residual = 0.0;
};

GroundData threshold(double beta1, double beta2, const FemMatrices& fem,
                     double tol = 1e-10);

struct Coefficients {
  double A, B, C, Atilde;
};
Coefficients coefficients(const GroundData& gd, const FemMatrices& fem);

struct BandTable {
  std::vector<double> p_grid;
  // bands[i][n] = E_{n+1}(p_i); residuals parallel
  std::vector<std::vector<double>> bands;
  std::vector<std::vector<double>> residuals;
  std::vector<bool> valid;
  double growth_proxy_lhs = 0.0, growth_proxy_rhs = 0.0;
  bool growth_ok = false;
};

BandTable band_structure(double beta1, double beta2, const FemMatrices& fem,
                         const std::vector<double>& p_grid, int nbands,
                         double tol = 1e-9);

// Exact dispersion when beta2 = 0: E1(p) = E1(0) + p^2/(1+beta1^2) in the
// continuum; returns the worst discrete deviation over the grid.
struct GaugeReport {
  double max_deviation = 0.0;
  std::vector<double> deviations;
};
GaugeReport gauge_check(double beta1, const FemMatrices& fem,
                        const std::vector<double>& p_grid, double tol = 1e-10);

std::vector<double> default_band_grid();  // {-3, -2.8, ..., 3}

}  // namespace wg

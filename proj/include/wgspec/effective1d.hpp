#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wgspec/profile.hpp"
#include "wgspec/tridiag.hpp"

namespace wg {

// Reduced longitudinal model: the potential
//   V(x) = A (f'(x)^2 - b1^2) + 2 B f'(x) g'(x) + C (g'(x)^2 - b2^2)
// sampled on a grid, and the Schrodinger problems -d2/dx2 + V/eps^2 it feeds.
struct EffectiveModel {
  const Profile* profile = nullptr;
  double A = 0.0, B = 0.0, C = 0.0;
  Eigen::VectorXd x;  // uniform sample grid
  Eigen::VectorXd V;
  double integral_V = 0.0;  // composite Simpson over the grid
  double min_V = 0.0;
  double argmin_V = 0.0;
  double epsilon = 1.0;

  double eval_V(double xx) const;  // pointwise from the expressions
};

struct EffectiveGrid {
  double X = 8.0;  // grid covers [-X, X]
  int n = 4001;    // sample count (odd keeps Simpson exact on the grid)
};

EffectiveModel build_effective(const Profile& profile, double A, double B,
                               double C, const EffectiveGrid& grid,
                               double epsilon = 1.0);

// Dirichlet finite differences on (-X, X); holds every eigenvalue below
// -tol_edge, where tol_edge = 1e-6 max|V|/eps^2 absorbs the box artifacts.
struct Schrodinger1D {
  double X = 0.0;
  double hx = 0.0;
  double tol_edge = 0.0;
  std::vector<double> eigenvalues;       // < -tol_edge, ascending
  std::vector<double> marginal;          // eigenvalues in [-tol_edge, tol_edge]
  Eigen::MatrixXd eigenvectors;          // L2-normalized on the grid
  int count = 0;                         // strict count
  int count_upper = 0;                   // including marginal ones
  bool marginal_flag = false;
};

Schrodinger1D solve_bound_states(const EffectiveModel& em, double X, double hx,
                                 bool want_vectors = true);

struct CountRow {
  double epsilon;
  int count;
  int count_upper;
  std::vector<double> eigenvalues;
};

std::vector<CountRow> count_vs_epsilon(const EffectiveModel& em,
                                       const std::vector<double>& eps_list,
                                       double X, double hx_base);

// lambda_j(N_mu)/mu for N_mu = -d2/dx2 + mu W; the grid is refined per mu so
// the shrinking ground state stays resolved, with a two-level drift check.
struct AsymptRow {
  double mu;
  double lambda_j;
  double ratio;        // lambda_j / mu
  double gap_to_wmin;  // ratio - W_min
  double drift;        // eigenvalue drift between the two grid levels
  bool resolved;
};

struct AsymptTable {
  double W_min = 0.0;
  double argmin_W = 0.0;
  int j = 1;
  std::vector<AsymptRow> rows;
};

AsymptTable asymptotic_slope(const Expr& W, const std::vector<double>& mu_list,
                             int j, double X = 20.0);

// Shared helper: FD matrix of -d2/dx2 + q(x) on (-X, X) with n interior nodes.
SymTridiag fd_schrodinger(const Eigen::VectorXd& q_interior, double hx);

}  // namespace wg

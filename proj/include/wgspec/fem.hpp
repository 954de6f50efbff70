#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "wgspec/mesh.hpp"

namespace wg {

using SpMat = Eigen::SparseMatrix<double>;

// P1 element matrices over the cross-section, restricted to interior
// (Dirichlet) degrees of freedom:
//   M    mass                 ∫ φi φj
//   S    stiffness            ∫ ∇φi·∇φj        (S = D11 + D22 exactly)
//   D11  ∫ ∂1φi ∂1φj,   D22  ∫ ∂2φi ∂2φj,  D12  ∫ ∂1φi ∂2φj
//   C1   ∫ φi ∂1φj,     C2   ∫ φi ∂2φj      (antisymmetric on interior dofs)
//   Y1M  ∫ y1 φi φj,    Y1D11 ∫ y1 ∂1φi ∂1φj
// All integrals are evaluated in closed form (the integrands are polynomial
// on each triangle), so the assembly identities hold to rounding.
struct FemMatrices {
  int n_vertices = 0;
  int n_interior = 0;
  std::vector<int> interior_of_vertex;  // -1 on the boundary
  std::vector<int> vertex_of_interior;
  double area = 0.0;

  SpMat M, S, D11, D22, D12, C1, C2, Y1M, Y1D11;

  // pre-elimination matrices over all vertices (partition-of-unity checks)
  SpMat full_M, full_S;
};

FemMatrices assemble_p1(const Mesh& mesh);

// Restriction of a nodal vector (all vertices) to interior dofs and back.
Eigen::VectorXd restrict_interior(const FemMatrices& fem,
                                  const Eigen::VectorXd& nodal);
Eigen::VectorXd extend_by_zero(const FemMatrices& fem,
                               const Eigen::VectorXd& interior);

}  // namespace wg

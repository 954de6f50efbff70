#include "wgspec/fem.hpp"

#include <array>
#include <stdexcept>

namespace wg {

namespace {

using Triplet = Eigen::Triplet<double>;

struct ElementGeometry {
  double area;
  // constant gradients of the three barycentric basis functions
  double gx[3], gy[3];
  double y1[3];      // y1 coordinates of the vertices
  double y1_mean;    // centroid y1
};

ElementGeometry element_geometry(const Mesh& mesh, const std::array<int, 3>& t) {
  ElementGeometry g;
  const auto& p0 = mesh.vertices[t[0]];
  const auto& p1 = mesh.vertices[t[1]];
  const auto& p2 = mesh.vertices[t[2]];
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                     (p2[0] - p0[0]) * (p1[1] - p0[1]);
  if (det <= 0.0) throw std::runtime_error("assemble_p1: non-positive triangle");
  g.area = 0.5 * det;
  g.gx[0] = (p1[1] - p2[1]) / det;
  g.gy[0] = (p2[0] - p1[0]) / det;
  g.gx[1] = (p2[1] - p0[1]) / det;
  g.gy[1] = (p0[0] - p2[0]) / det;
  g.gx[2] = (p0[1] - p1[1]) / det;
  g.gy[2] = (p1[0] - p0[0]) / det;
  for (int i = 0; i < 3; ++i) g.y1[i] = mesh.vertices[t[i]][0];
  g.y1_mean = (g.y1[0] + g.y1[1] + g.y1[2]) / 3.0;
  return g;
}

SpMat from_triplets(int n, const std::vector<Triplet>& trips) {
  SpMat m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(0.0);
  m.makeCompressed();
  return m;
}

SpMat restrict_matrix(const SpMat& full, const std::vector<int>& int_of_vert,
                      int n_int) {
  std::vector<Triplet> trips;
  trips.reserve(full.nonZeros());
  for (int k = 0; k < full.outerSize(); ++k) {
    for (SpMat::InnerIterator it(full, k); it; ++it) {
      int r = int_of_vert[it.row()];
      int c = int_of_vert[it.col()];
      if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  return from_triplets(n_int, trips);
}

}  // namespace

FemMatrices assemble_p1(const Mesh& mesh) {
  const int n = mesh.num_vertices();
  FemMatrices fem;
  fem.n_vertices = n;
  fem.interior_of_vertex.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (!mesh.on_boundary[v]) {
      fem.interior_of_vertex[v] = static_cast<int>(fem.vertex_of_interior.size());
      fem.vertex_of_interior.push_back(v);
    }
  }
  fem.n_interior = static_cast<int>(fem.vertex_of_interior.size());

  std::vector<Triplet> tM, tS, tD11, tD22, tD12, tC1, tC2, tY1M, tY1D11;
  const std::size_t guess = mesh.triangles.size() * 9;
  for (auto* v : {&tM, &tS, &tD11, &tD22, &tD12, &tC1, &tC2, &tY1M, &tY1D11})
    v->reserve(guess);

  for (const auto& tri : mesh.triangles) {
    const ElementGeometry g = element_geometry(mesh, tri);
    const double A = g.area;
    fem.area += A;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int vi = tri[i], vj = tri[j];
        const double mass = A / 12.0 * (i == j ? 2.0 : 1.0);
        tM.emplace_back(vi, vj, mass);
        tD11.emplace_back(vi, vj, A * g.gx[i] * g.gx[j]);
        tD22.emplace_back(vi, vj, A * g.gy[i] * g.gy[j]);
        tD12.emplace_back(vi, vj, A * g.gx[i] * g.gy[j]);
        tS.emplace_back(vi, vj, A * (g.gx[i] * g.gx[j] + g.gy[i] * g.gy[j]));
        tC1.emplace_back(vi, vj, A / 3.0 * g.gx[j]);
        tC2.emplace_back(vi, vj, A / 3.0 * g.gy[j]);
        // ∫ y1 φi φj = Σ_k y1_k ∫ λk λi λj,
        // ∫ λ0^c0 λ1^c1 λ2^c2 = 2A c0! c1! c2! / (c0+c1+c2+2)!
        double m3 = 0.0;
        for (int k = 0; k < 3; ++k) {
          int cnt[3] = {0, 0, 0};
          ++cnt[k];
          ++cnt[i];
          ++cnt[j];
          static const double fact[4] = {1.0, 1.0, 2.0, 6.0};
          m3 += g.y1[k] * 2.0 * A * fact[cnt[0]] * fact[cnt[1]] * fact[cnt[2]] /
                120.0;
        }
        tY1M.emplace_back(vi, vj, m3);
        tY1D11.emplace_back(vi, vj, A * g.y1_mean * g.gx[i] * g.gx[j]);
      }
    }
  }

  fem.full_M = from_triplets(n, tM);
  fem.full_S = from_triplets(n, tS);

  const auto& map = fem.interior_of_vertex;
  const int ni = fem.n_interior;
  fem.M = restrict_matrix(fem.full_M, map, ni);
  fem.S = restrict_matrix(fem.full_S, map, ni);
  fem.D11 = restrict_matrix(from_triplets(n, tD11), map, ni);
  fem.D22 = restrict_matrix(from_triplets(n, tD22), map, ni);
  fem.D12 = restrict_matrix(from_triplets(n, tD12), map, ni);
  fem.C1 = restrict_matrix(from_triplets(n, tC1), map, ni);
  fem.C2 = restrict_matrix(from_triplets(n, tC2), map, ni);
  fem.Y1M = restrict_matrix(from_triplets(n, tY1M), map, ni);
  fem.Y1D11 = restrict_matrix(from_triplets(n, tY1D11), map, ni);
  return fem;
}

Eigen::VectorXd restrict_interior(const FemMatrices& fem,
                                  const Eigen::VectorXd& nodal) {
  Eigen::VectorXd out(fem.n_interior);
  for (int i = 0; i < fem.n_interior; ++i) out[i] = nodal[fem.vertex_of_interior[i]];
  return out;
}

Eigen::VectorXd extend_by_zero(const FemMatrices& fem,
                               const Eigen::VectorXd& interior) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(fem.n_vertices);
  for (int i = 0; i < fem.n_interior; ++i) out[fem.vertex_of_interior[i]] = interior[i];
  return out;
}

}  // namespace wg

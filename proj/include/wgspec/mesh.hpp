#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace wg {

// Triangulation of a planar cross-section. Triangles are positively oriented;
// boundary flags mark the vertices on the polygonal boundary. Meshes are
// immutable once built, so they can be shared freely between solves.
struct Mesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::uint8_t> on_boundary;

  // Refinement provenance. When this mesh came out of refine_uniform,
  // coarse_vertex_count >= 0 and every fine vertex v >= coarse_vertex_count
  // is the midpoint of coarse edge parent_edge[v - coarse_vertex_count].
  int coarse_vertex_count = -1;
  std::vector<std::array<int, 2>> parent_edge;

  bool nested() const { return coarse_vertex_count >= 0; }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_interior() const;
  double triangle_area(int t) const;
  double total_area() const;
  double max_edge() const;
  double min_angle() const;  // radians
};

// Structured triangulation of origin + (0,a) x (0,b) with grid pitch h (axis
// divisions ceil(a/h), ceil(b/h); cell diagonals alternate per cell so even
// grids keep both mirror symmetries).
Mesh make_rectangle(double a, double b, double h,
                    std::array<double, 2> origin = {0.0, 0.0});

// Concentric-ring triangulation of the disk of radius r centered at 0;
// ring count ceil(r/h), all boundary vertices exactly at radius r.
Mesh make_disk(double r, double h);

// Quasi-uniform triangulation of a simple, positively oriented polygon:
// boundary subdivision at pitch h, interior lattice points, Delaunay
// insertion, then removal of triangles outside the polygon.
Mesh make_polygon(const std::vector<std::array<double, 2>>& pts, double h);

// Each triangle split into 4 congruent children (nested refinement).
Mesh refine_uniform(const Mesh& m);

// Interpolates a coarse nodal vector into the refined mesh's nodal basis.
std::vector<double> prolongate(const Mesh& fine,
                               const std::vector<double>& coarse_values);

// Plain-text dump for debugging (not a stable format): counts, coordinates,
// triangle indices, boundary flags.
void write_offlike(const Mesh& m, std::ostream& os);

}  // namespace wg

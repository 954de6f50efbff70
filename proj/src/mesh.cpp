#include "wgspec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "wgspec/common.hpp"

namespace wg {

namespace {

using Pt = std::array<double, 2>;

double signed_area(const Pt& a, const Pt& b, const Pt& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

double dist(const Pt& a, const Pt& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

void flip_negative_triangles(Mesh& m) {
  for (auto& t : m.triangles) {
    if (signed_area(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]) < 0)
      std::swap(t[1], t[2]);
  }
}

// Boundary vertices = endpoints of edges adjacent to exactly one triangle.
void flag_boundary(Mesh& m) {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : m.triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  m.on_boundary.assign(m.vertices.size(), 0);
  for (const auto& [edge, count] : edge_count) {
    if (count == 1) {
      m.on_boundary[edge.first] = 1;
      m.on_boundary[edge.second] = 1;
    }
  }
}

}  // namespace

int Mesh::num_interior() const {
  int n = 0;
  for (auto f : on_boundary) n += (f == 0);
  return n;
}

double Mesh::triangle_area(int t) const {
  const auto& tri = triangles[t];
  return signed_area(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
  return a;
}

double Mesh::max_edge() const {
  double m = 0.0;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e)
      m = std::max(m, dist(vertices[t[e]], vertices[t[(e + 1) % 3]]));
  return m;
}

double Mesh::min_angle() const {
  double worst = constants::pi;
  for (const auto& t : triangles) {
    for (int k = 0; k < 3; ++k) {
      const Pt& a = vertices[t[k]];
      const Pt& b = vertices[t[(k + 1) % 3]];
      const Pt& c = vertices[t[(k + 2) % 3]];
      double ux = b[0] - a[0], uy = b[1] - a[1];
      double vx = c[0] - a[0], vy = c[1] - a[1];
      double cosang = (ux * vx + uy * vy) /
                      (std::hypot(ux, uy) * std::hypot(vx, vy));
      cosang = std::clamp(cosang, -1.0, 1.0);
      worst = std::min(worst, std::acos(cosang));
    }
  }
  return worst;
}

Mesh make_rectangle(double a, double b, double h, std::array<double, 2> origin) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("make_rectangle: degenerate dimensions");
  if (!(h > 0.0) || h >= std::min(a, b) + 1e-15)
    throw std::invalid_argument("make_rectangle: need 0 < h < min(a,b)");
  const int nx = std::max(1, static_cast<int>(std::ceil(a / h - 1e-9)));
  const int ny = std::max(1, static_cast<int>(std::ceil(b / h - 1e-9)));
  const double dx = a / nx, dy = b / ny;
  Mesh m;
  m.vertices.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      m.vertices.push_back({origin[0] + i * dx, origin[1] + j * dy});
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      int v00 = vid(i, j), v10 = vid(i + 1, j);
      int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      if ((i + j) % 2 == 0) {
        m.triangles.push_back({v00, v10, v11});
        m.triangles.push_back({v00, v11, v01});
      } else {
        m.triangles.push_back({v00, v10, v01});
        m.triangles.push_back({v10, v11, v01});
      }
    }
  }
  flag_boundary(m);
  return m;
}

Mesh make_disk(double r, double h) {
  if (!(r > 0.0)) throw std::invalid_argument("make_disk: radius must be > 0");
  if (!(h > 0.0) || h >= r)
    throw std::invalid_argument("make_disk: need 0 < h < r");
  const int rings = std::max(1, static_cast<int>(std::ceil(r / h - 1e-9)));
  Mesh m;
  m.vertices.push_back({0.0, 0.0});
  std::vector<int> ring_start(rings + 1, 0);
  for (int j = 1; j <= rings; ++j) {
    ring_start[j] = m.num_vertices();
    const int cnt = 6 * j;
    const double rj = r * j / rings;
    for (int k = 0; k < cnt; ++k) {
      const double th = 2.0 * constants::pi * k / cnt;
      m.vertices.push_back({rj * std::cos(th), rj * std::sin(th)});
    }
  }
  // ring 1 fans around the center
  for (int k = 0; k < 6; ++k)
    m.triangles.push_back({0, ring_start[1] + k, ring_start[1] + (k + 1) % 6});
  for (int j = 2; j <= rings; ++j) {
    const int no = 6 * j, ni = 6 * (j - 1);
    auto outer = [&](int t) { return ring_start[j] + ((t % no) + no) % no; };
    auto inner = [&](int t) { return ring_start[j - 1] + ((t % ni) + ni) % ni; };
    for (int s = 0; s < 6; ++s) {
      for (int t = 0; t < j; ++t) {
        m.triangles.push_back({outer(s * j + t), outer(s * j + t + 1),
                               inner(s * (j - 1) + t)});
        if (t < j - 1)
          m.triangles.push_back({inner(s * (j - 1) + t),
                                 outer(s * j + t + 1),
                                 inner(s * (j - 1) + t + 1)});
      }
    }
  }
  flip_negative_triangles(m);
  flag_boundary(m);
  return m;
}

// ---------------------------------------------------------------------------
// polygon meshing: Delaunay insertion over boundary + lattice points

namespace {

bool segments_properly_intersect(const Pt& a, const Pt& b, const Pt& c,
                                 const Pt& d) {
  auto orient = [](const Pt& p, const Pt& q, const Pt& r) {
    double v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
    if (v > 1e-14) return 1;
    if (v < -1e-14) return -1;
    return 0;
  };
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool point_in_polygon(const Pt& p, const std::vector<Pt>& poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((poly[i][1] > p[1]) != (poly[j][1] > p[1])) {
      double xint = poly[j][0] + (poly[i][0] - poly[j][0]) *
                                     (p[1] - poly[j][1]) /
                                     (poly[i][1] - poly[j][1]);
      if (p[0] < xint) inside = !inside;
    }
  }
  return inside;
}

double point_segment_distance(const Pt& p, const Pt& a, const Pt& b) {
  double vx = b[0] - a[0], vy = b[1] - a[1];
  double wx = p[0] - a[0], wy = p[1] - a[1];
  double vv = vx * vx + vy * vy;
  double t = vv > 0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
  return std::hypot(wx - t * vx, wy - t * vy);
}

struct Delaunay {
  std::vector<Pt> pts;
  struct Tri {
    int v[3];
    bool alive = true;
  };
  std::vector<Tri> tris;

  bool in_circumcircle(const Tri& t, const Pt& p) const {
    const Pt& a = pts[t.v[0]];
    const Pt& b = pts[t.v[1]];
    const Pt& c = pts[t.v[2]];
    const double ax = a[0] - p[0], ay = a[1] - p[1];
    const double bx = b[0] - p[0], by = b[1] - p[1];
    const double cx = c[0] - p[0], cy = c[1] - p[1];
    const double det =
        (ax * ax + ay * ay) * (bx * cy - cx * by) -
        (bx * bx + by * by) * (ax * cy - cx * ay) +
        (cx * cx + cy * cy) * (ax * by - bx * ay);
    // ties (cocircular lattice quads) count as outside so the existing
    // triangulation is kept; scale-aware threshold
    double scale = std::abs(ax) + std::abs(ay) + std::abs(bx) + std::abs(by) +
                   std::abs(cx) + std::abs(cy);
    scale = scale * scale * scale * scale;
    return det > 1e-12 * std::max(scale, 1e-30);
  }

  void insert(int pi) {
    const Pt& p = pts[pi];
    std::map<std::pair<int, int>, int> boundary;  // cavity edges
    for (auto& t : tris) {
      if (!t.alive || !in_circumcircle(t, p)) continue;
      t.alive = false;
      for (int e = 0; e < 3; ++e) {
        int a = t.v[e], b = t.v[(e + 1) % 3];
        auto key = std::minmax(a, b);
        auto it = boundary.find({key.first, key.second});
        if (it == boundary.end())
          boundary[{key.first, key.second}] = (a <= b) ? e + 1 : -(e + 1);
        else
          boundary.erase(it);  // interior edge of the cavity
      }
    }
    // re-fan: orientation fixed afterwards, only connectivity matters here
    for (const auto& [edge, dir] : boundary) {
      Tri nt;
      nt.v[0] = edge.first;
      nt.v[1] = edge.second;
      nt.v[2] = pi;
      tris.push_back(nt);
    }
  }
};

}  // namespace

Mesh make_polygon(const std::vector<std::array<double, 2>>& pts, double h) {
  const std::size_t np = pts.size();
  if (np < 3) throw std::invalid_argument("make_polygon: need >= 3 vertices");
  if (!(h > 0.0)) throw std::invalid_argument("make_polygon: h must be > 0");
  double area2 = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % np];
    area2 += p[0] * q[1] - q[0] * p[1];
  }
  if (area2 <= 0.0)
    throw std::invalid_argument("make_polygon: polygon must be positively oriented");
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = i + 1; j < np; ++j) {
      if (j == i + 1 || (i == 0 && j == np - 1)) continue;  // adjacent edges
      if (segments_properly_intersect(pts[i], pts[(i + 1) % np], pts[j],
                                      pts[(j + 1) % np]))
        throw std::invalid_argument("make_polygon: polygon self-intersects");
    }
  }

  std::vector<Pt> poly(pts.begin(), pts.end());
  std::vector<Pt> nodes;
  // boundary subdivision at pitch <= h
  for (std::size_t i = 0; i < np; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % np];
    const int segs = std::max(1, static_cast<int>(std::ceil(dist(a, b) / h - 1e-9)));
    for (int s = 0; s < segs; ++s) {
      double t = static_cast<double>(s) / segs;
      nodes.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  const std::size_t boundary_node_count = nodes.size();
  // interior lattice
  double minx = poly[0][0], maxx = poly[0][0], miny = poly[0][1], maxy = poly[0][1];
  for (const auto& p : poly) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }
  for (double y = miny + h; y < maxy - 1e-12; y += h) {
    for (double x = minx + h; x < maxx - 1e-12; x += h) {
      Pt p{x, y};
      if (!point_in_polygon(p, poly)) continue;
      double d = std::numeric_limits<double>::max();
      for (std::size_t i = 0; i < np; ++i)
        d = std::min(d, point_segment_distance(p, poly[i], poly[(i + 1) % np]));
      if (d >= 0.45 * h) nodes.push_back(p);
    }
  }

  // Delaunay over all nodes, seeded with a box hull well outside the polygon
  Delaunay dt;
  const double pad = 10.0 * std::max(maxx - minx, maxy - miny) + 10.0 * h;
  dt.pts = nodes;
  const int s0 = static_cast<int>(dt.pts.size());
  dt.pts.push_back({minx - pad, miny - pad});
  dt.pts.push_back({maxx + pad, miny - pad});
  dt.pts.push_back({maxx + pad, maxy + pad});
  dt.pts.push_back({minx - pad, maxy + pad});
  dt.tris.push_back({{s0, s0 + 1, s0 + 2}, true});
  dt.tris.push_back({{s0, s0 + 2, s0 + 3}, true});
  // deterministic insertion order: lexicographic by coordinates
  std::vector<int> order(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (nodes[a][0] != nodes[b][0]) return nodes[a][0] < nodes[b][0];
    return nodes[a][1] < nodes[b][1];
  });
  for (int pi : order) dt.insert(pi);

  Mesh m;
  m.vertices = nodes;
  for (const auto& t : dt.tris) {
    if (!t.alive) continue;
    if (t.v[0] >= s0 || t.v[1] >= s0 || t.v[2] >= s0) continue;
    Pt centroid{(dt.pts[t.v[0]][0] + dt.pts[t.v[1]][0] + dt.pts[t.v[2]][0]) / 3.0,
                (dt.pts[t.v[0]][1] + dt.pts[t.v[1]][1] + dt.pts[t.v[2]][1]) / 3.0};
    if (!point_in_polygon(centroid, poly)) continue;
    if (std::abs(signed_area(dt.pts[t.v[0]], dt.pts[t.v[1]], dt.pts[t.v[2]])) <
        1e-14 * h * h)
      continue;
    m.triangles.push_back({t.v[0], t.v[1], t.v[2]});
  }
  flip_negative_triangles(m);
  flag_boundary(m);
  (void)boundary_node_count;
  return m;
}

Mesh refine_uniform(const Mesh& coarse) {
  Mesh fine;
  fine.vertices = coarse.vertices;
  fine.coarse_vertex_count = coarse.num_vertices();
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find({key.first, key.second});
    if (it != midpoint.end()) return it->second;
    int id = fine.num_vertices();
    fine.vertices.push_back(
        {0.5 * (coarse.vertices[a][0] + coarse.vertices[b][0]),
         0.5 * (coarse.vertices[a][1] + coarse.vertices[b][1])});
    fine.parent_edge.push_back({key.first, key.second});
    midpoint[{key.first, key.second}] = id;
    return id;
  };
  for (const auto& t : coarse.triangles) {
    int a = t[0], b = t[1], c = t[2];
    int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
    fine.triangles.push_back({a, ab, ca});
    fine.triangles.push_back({ab, b, bc});
    fine.triangles.push_back({ca, bc, c});
    fine.triangles.push_back({ab, bc, ca});
  }
  flag_boundary(fine);
  return fine;
}

std::vector<double> prolongate(const Mesh& fine,
                               const std::vector<double>& coarse_values) {
  if (!fine.nested())
    throw std::invalid_argument("prolongate: mesh has no refinement parent");
  if (static_cast<int>(coarse_values.size()) != fine.coarse_vertex_count)
    throw std::invalid_argument("prolongate: size mismatch");
  std::vector<double> out(fine.num_vertices());
  for (int i = 0; i < fine.coarse_vertex_count; ++i) out[i] = coarse_values[i];
  for (int i = fine.coarse_vertex_count; i < fine.num_vertices(); ++i) {
    const auto& e = fine.parent_edge[i - fine.coarse_vertex_count];
    out[i] = 0.5 * (coarse_values[e[0]] + coarse_values[e[1]]);
  }
  return out;
}

void write_offlike(const Mesh& m, std::ostream& os) {
  os << m.num_vertices() << ' ' << m.num_triangles() << '\n';
  for (const auto& v : m.vertices)
    os << format_double(v[0]) << ' ' << format_double(v[1]) << '\n';
  for (const auto& t : m.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (std::size_t i = 0; i < m.on_boundary.size(); ++i)
    os << (m.on_boundary[i] ? 1 : 0) << (i + 1 == m.on_boundary.size() ? '\n' : ' ');
}

}  // namespace wg

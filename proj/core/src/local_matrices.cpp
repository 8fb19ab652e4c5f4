#include "mqsfeti/local_matrices.hpp"

#include "mqsfeti/errors.hpp"

#include <string>

namespace mqsfeti {

TetFrame::TetFrame(const Mesh& mesh, Index tet) {
  const auto& t = mesh.tets[static_cast<std::size_t>(tet)];
  for (int i = 0; i < 4; ++i) vertex[i] = mesh.vertices[static_cast<std::size_t>(t[i])];

  Eigen::Matrix3d span;
  span.col(0) = vertex[1] - vertex[0];
  span.col(1) = vertex[2] - vertex[0];
  span.col(2) = vertex[3] - vertex[0];
  const double det = span.determinant();
  volume = det / 6.0;
  if (!(volume > 0.0))
    throw AssemblyError("degenerate or inverted tet " + std::to_string(tet));

  const Eigen::Matrix3d inv = span.inverse();
  for (int i = 1; i < 4; ++i) grad_bary[i] = inv.row(i - 1).transpose();
  grad_bary[0] = -(grad_bary[1] + grad_bary[2] + grad_bary[3]);
}

double TetFrame::bary(int local_vertex, const Vec3& x) const {
  if (local_vertex == 0)
    return 1.0 - bary(1, x) - bary(2, x) - bary(3, x);
  return grad_bary[local_vertex].dot(x - vertex[0]);
}

Vec3 TetFrame::point(const std::array<double, 4>& bary) const {
  return bary[0] * vertex[0] + bary[1] * vertex[1] + bary[2] * vertex[2] + bary[3] * vertex[3];
}

Vec3 TetFrame::edge_basis(int local_edge, const Vec3& x) const {
  const int a = Mesh::kLocalEdges[local_edge][0];
  const int b = Mesh::kLocalEdges[local_edge][1];
  return bary(a, x) * grad_bary[b] - bary(b, x) * grad_bary[a];
}

Vec3 TetFrame::edge_basis_curl(int local_edge) const {
  const int a = Mesh::kLocalEdges[local_edge][0];
  const int b = Mesh::kLocalEdges[local_edge][1];
  return 2.0 * grad_bary[a].cross(grad_bary[b]);
}

Mat6 local_curl_curl(const TetFrame& t, double mu) {
  std::array<Vec3, 6> curl;
  for (int e = 0; e < 6; ++e) curl[e] = t.edge_basis_curl(e);
  Mat6 k;
  const double scale = t.volume / mu;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      const double v = scale * curl[i].dot(curl[j]);
      k(i, j) = v;
      k(j, i) = v;
    }
  return k;
}

Mat6 local_mass(const TetFrame& t, double sigma) {
  // integral of lambda_i lambda_j = V (1 + delta_ij) / 20
  const double v20 = t.volume / 20.0;
  const auto ibb = [&](int i, int j) { return v20 * (i == j ? 2.0 : 1.0); };
  const auto& g = t.grad_bary;
  Mat6 m;
  for (int i = 0; i < 6; ++i) {
    const int a = Mesh::kLocalEdges[i][0], b = Mesh::kLocalEdges[i][1];
    for (int j = i; j < 6; ++j) {
      const int c = Mesh::kLocalEdges[j][0], d = Mesh::kLocalEdges[j][1];
      const double v = sigma * (g[b].dot(g[d]) * ibb(a, c) - g[b].dot(g[c]) * ibb(a, d) -
                                g[a].dot(g[d]) * ibb(b, c) + g[a].dot(g[c]) * ibb(b, d));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

Mat46 local_mixed(const TetFrame& t, double sigma) {
  // integral of grad(hat_v) . w_(c,d) = (V/4) g_v . (g_d - g_c)
  const auto& g = t.grad_bary;
  const double v4 = t.volume / 4.0;
  Mat46 s;
  for (int v = 0; v < 4; ++v)
    for (int j = 0; j < 6; ++j) {
      const int c = Mesh::kLocalEdges[j][0], d = Mesh::kLocalEdges[j][1];
      s(v, j) = sigma * v4 * g[v].dot(g[d] - g[c]);
    }
  return s;
}

Mat4 local_p1_stiffness(const TetFrame& t, double sigma) {
  const auto& g = t.grad_bary;
  Mat4 c;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      const double v = sigma * t.volume * g[a].dot(g[b]);
      c(a, b) = v;
      c(b, a) = v;
    }
  return c;
}

} // namespace mqsfeti

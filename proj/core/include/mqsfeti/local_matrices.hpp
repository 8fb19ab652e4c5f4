#pragma once

#include "mqsfeti/mesh.hpp"

namespace mqsfeti {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat46 = Eigen::Matrix<double, 4, 6>;
using Mat4 = Eigen::Matrix4d;

/// Geometry fixings of one tet: barycentric gradients, volume, and the
/// lowest-order edge basis. Local edge e = (a, b) carries the function
/// w_e = lambda_a grad(lambda_b) - lambda_b grad(lambda_a), whose curl
/// 2 grad(lambda_a) x grad(lambda_b) is constant on the tet.
struct TetFrame {
  std::array<Vec3, 4> vertex;
  std::array<Vec3, 4> grad_bary;
  double volume = 0.0;

  TetFrame(const Mesh& mesh, Index tet); // throws AssemblyError on degenerate tets

  double bary(int local_vertex, const Vec3& x) const;
  Vec3 point(const std::array<double, 4>& bary) const;
  Vec3 edge_basis(int local_edge, const Vec3& x) const;
  Vec3 edge_basis_curl(int local_edge) const;
};

/// Curl-curl form: integral of mu^-1 curl(w_i) . curl(w_j). Exact; symmetric
/// positive semidefinite with the local gradients in its kernel.
Mat6 local_curl_curl(const TetFrame& t, double mu);

/// Edge mass form: integral of sigma w_i . w_j. Exact.
Mat6 local_mass(const TetFrame& t, double sigma);

/// Mixed form: integral of sigma grad(hat_a) . w_j. Exact; equals
/// D^T * local_mass where D is the nodal-to-edge incidence embedding.
Mat46 local_mixed(const TetFrame& t, double sigma);

/// Nodal stiffness: integral of sigma grad(hat_a) . grad(hat_b). Row sums
/// vanish.
Mat4 local_p1_stiffness(const TetFrame& t, double sigma);

} // namespace mqsfeti

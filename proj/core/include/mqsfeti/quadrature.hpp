#pragma once

#include <array>
#include <span>

namespace mqsfeti {

/// Barycentric quadrature rules. Weights sum to one; multiply by the measure
/// of the simplex.
struct TetQuadPoint {
  std::array<double, 4> bary;
  double weight;
};

struct TriQuadPoint {
  std::array<double, 3> bary;
  double weight;
};

/// Smallest built-in tet rule exact for polynomials of the given degree
/// (supported up to 5; throws std::invalid_argument beyond).
std::span<const TetQuadPoint> tet_rule(int degree);

/// Same for triangles.
std::span<const TriQuadPoint> tri_rule(int degree);

} // namespace mqsfeti

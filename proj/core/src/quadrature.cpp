#include "mqsfeti/quadrature.hpp"

#include <stdexcept>
#include <vector>

namespace mqsfeti {

namespace {

// Degree-2, 4 points.
constexpr double kTetA2 = 0.58541019662496845446;
constexpr double kTetB2 = 0.13819660112501051518;

const std::vector<TetQuadPoint> kTet1{{{0.25, 0.25, 0.25, 0.25}, 1.0}};

const std::vector<TetQuadPoint> kTet2{
    {{kTetA2, kTetB2, kTetB2, kTetB2}, 0.25},
    {{kTetB2, kTetA2, kTetB2, kTetB2}, 0.25},
    {{kTetB2, kTetB2, kTetA2, kTetB2}, 0.25},
    {{kTetB2, kTetB2, kTetB2, kTetA2}, 0.25},
};

// Degree-3, 5 points (one negative weight).
const std::vector<TetQuadPoint> kTet3{
    {{0.25, 0.25, 0.25, 0.25}, -0.8},
    {{0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0}, 0.45},
    {{1.0 / 6.0, 0.5, 1.0 / 6.0, 1.0 / 6.0}, 0.45},
    {{1.0 / 6.0, 1.0 / 6.0, 0.5, 1.0 / 6.0}, 0.45},
    {{1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5}, 0.45},
};

// Degree-5, 14 points.
std::vector<TetQuadPoint> make_tet5() {
  const double b1 = 0.31088591926330060980;
  const double a1 = 1.0 - 3.0 * b1;
  const double w1 = 0.11268792571801585080;
  const double b2 = 0.09273525031089122640;
  const double a2 = 1.0 - 3.0 * b2;
  const double w2 = 0.07349304311636194954;
  const double c = 0.04550370412564964949;
  const double d = 0.5 - c;
  const double w3 = 0.04254602077708146643;

  std::vector<TetQuadPoint> pts;
  const auto orbit4 = [&](double a, double b, double w) {
    pts.push_back({{a, b, b, b}, w});
    pts.push_back({{b, a, b, b}, w});
    pts.push_back({{b, b, a, b}, w});
    pts.push_back({{b, b, b, a}, w});
  };
  orbit4(a1, b1, w1);
  orbit4(a2, b2, w2);
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& p : pairs) {
    std::array<double, 4> bary{d, d, d, d};
    bary[p[0]] = c;
    bary[p[1]] = c;
    pts.push_back({bary, w3});
  }
  return pts;
}

const std::vector<TetQuadPoint> kTet5 = make_tet5();

const std::vector<TriQuadPoint> kTri1{{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 1.0}};

// Degree-2: edge midpoints.
const std::vector<TriQuadPoint> kTri2{
    {{0.5, 0.5, 0.0}, 1.0 / 3.0},
    {{0.5, 0.0, 0.5}, 1.0 / 3.0},
    {{0.0, 0.5, 0.5}, 1.0 / 3.0},
};

// Degree-4, 6 points (Dunavant).
std::vector<TriQuadPoint> make_tri4() {
  const double a1 = 0.44594849091596488632;
  const double w1 = 0.22338158967801146570;
  const double a2 = 0.09157621350977074346;
  const double w2 = 0.10995174365532186764;
  std::vector<TriQuadPoint> pts;
  const auto orbit3 = [&](double a, double w) {
    const double b = 1.0 - 2.0 * a;
    pts.push_back({{b, a, a}, w});
    pts.push_back({{a, b, a}, w});
    pts.push_back({{a, a, b}, w});
  };
  orbit3(a1, w1);
  orbit3(a2, w2);
  return pts;
}

const std::vector<TriQuadPoint> kTri4 = make_tri4();

// Degree-5, 7 points.
std::vector<TriQuadPoint> make_tri5() {
  std::vector<TriQuadPoint> pts{{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225}};
  const auto orbit3 = [&](double a, double w) {
    const double b = 1.0 - 2.0 * a;
    pts.push_back({{b, a, a}, w});
    pts.push_back({{a, b, a}, w});
    pts.push_back({{a, a, b}, w});
  };
  orbit3(0.47014206410511508977, 0.13239415278850618074);
  orbit3(0.10128650732345633880, 0.12593918054482715260);
  return pts;
}

const std::vector<TriQuadPoint> kTri5 = make_tri5();

} // namespace

std::span<const TetQuadPoint> tet_rule(int degree) {
  if (degree <= 1) return kTet1;
  if (degree == 2) return kTet2;
  if (degree == 3) return kTet3;
  if (degree <= 5) return kTet5;
  throw std::invalid_argument("tet quadrature supported up to degree 5");
}

std::span<const TriQuadPoint> tri_rule(int degree) {
  if (degree <= 1) return kTri1;
  if (degree == 2) return kTri2;
  if (degree <= 4) return kTri4;
  if (degree == 5) return kTri5;
  throw std::invalid_argument("triangle quadrature supported up to degree 5");
}

} // namespace mqsfeti

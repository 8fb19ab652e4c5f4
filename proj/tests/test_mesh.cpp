#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mqsfeti/errors.hpp"
#include "mqsfeti/labels.hpp"

using namespace mqsfeti;

namespace {

BoxGeometry unit_cube(int n, Vec3 cmin = {0, 0, 0}, Vec3 cmax = {0.5, 1, 1}) {
  BoxGeometry g;
  g.domain_min = {0, 0, 0};
  g.domain_max = {1, 1, 1};
  g.conductor_min = cmin;
  g.conductor_max = cmax;
  g.resolution = n;
  return g;
}

// Smallest legal configuration: a 1x1x2 column of cells, conductor in the
// lower cell.
BoxGeometry column_geometry() {
  BoxGeometry g;
  g.domain_min = {0, 0, 0};
  g.domain_max = {1, 1, 2};
  g.conductor_min = {0, 0, 0};
  g.conductor_max = {1, 1, 1};
  g.resolution = 1;
  return g;
}

} // namespace

TEST_CASE("single-cube subdivision counts, derived from the two-cube column") {
  // Hand enumeration of one subdivided cube gives V=8, E=19 (12 cube edges +
  // 6 face diagonals + 1 body diagonal), F=18, T=6. The smallest legal mesh
  // glues two such cubes along a square carrying 4 vertices, 5 edges (4 sides
  // + 1 diagonal) and 2 triangles, so the column must have
  //   V = 2*8 - 4, E = 2*19 - 5, F = 2*18 - 2, T = 2*6.
  const Mesh column = build_box_mesh(column_geometry());
  CHECK(column.n_vertices() == 12);
  CHECK(column.n_edges() == 33);
  CHECK(column.n_faces() == 34);
  CHECK(column.n_tets() == 12);
  CHECK(column.euler_characteristic() == 1);

  // Recover the single-cube counts by inclusion-exclusion and compare with
  // the hand enumeration.
  CHECK((column.n_edges() + 5) / 2 == 19);
  CHECK((column.n_faces() + 2) / 2 == 18);
  CHECK((column.n_vertices() + 4) / 2 == 8);

  // All 12 tets are congruent with volume 1/6.
  for (Index t = 0; t < column.n_tets(); ++t)
    CHECK(column.tet_volume(t) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("n=2 unit cube counts and incidence") {
  const Mesh m = build_box_mesh(unit_cube(2));
  CHECK(m.n_vertices() == 27);
  CHECK(m.n_tets() == 48);
  CHECK(m.euler_characteristic() == 1);

  Index interior = 0, boundary = 0;
  for (Index f = 0; f < m.n_faces(); ++f)
    (m.face_tets[static_cast<std::size_t>(f)][1] == kInvalidIndex ? boundary : interior)++;
  CHECK(2 * interior + boundary == 4 * m.n_tets());

  const double expected = (0.5 * 0.5 * 0.5) / 6.0;
  double total = 0.0;
  for (Index t = 0; t < m.n_tets(); ++t) {
    CHECK(m.tet_volume(t) == doctest::Approx(expected).epsilon(1e-14));
    total += m.tet_volume(t);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tet-edge incidence signs match the global orientation") {
  const Mesh m = build_box_mesh(unit_cube(2));
  for (Index t = 0; t < m.n_tets(); ++t)
    for (int e = 0; e < 6; ++e) {
      const auto& tet = m.tets[static_cast<std::size_t>(t)];
      const Index a = tet[Mesh::kLocalEdges[e][0]];
      const Index b = tet[Mesh::kLocalEdges[e][1]];
      const auto& edge = m.edges[static_cast<std::size_t>(m.tet_edges[t][e])];
      CHECK(edge[0] < edge[1]);
      if (m.tet_edge_signs[t][e] > 0) {
        CHECK(edge[0] == a);
        CHECK(edge[1] == b);
      } else {
        CHECK(edge[0] == b);
        CHECK(edge[1] == a);
      }
    }
}

TEST_CASE("geometry validation errors") {
  CHECK_THROWS_AS(build_box_mesh(unit_cube(1, {0, 0, 0}, {1, 1, 1})), ConfigError); // empty insulator
  CHECK_THROWS_AS(build_box_mesh(unit_cube(2, {0, 0, 0}, {0.3, 1, 1})), ConfigError); // misaligned
  CHECK_THROWS_AS(build_box_mesh(unit_cube(2, {0.5, 0, 0}, {0.5, 1, 1})), ConfigError); // empty conductor
  CHECK_THROWS_AS(build_box_mesh(unit_cube(0)), ConfigError); // resolution
}

TEST_CASE("mesh generation is deterministic") {
  const Mesh a = build_box_mesh(unit_cube(3, {0, 0, 0}, Vec3{1.0 / 3.0, 1, 1}));
  const Mesh b = build_box_mesh(unit_cube(3, {0, 0, 0}, Vec3{1.0 / 3.0, 1, 1}));
  CHECK(a.tets == b.tets);
  CHECK(a.edges == b.edges);
  CHECK(a.faces == b.faces);
  CHECK(a.tet_edges == b.tet_edges);
}

TEST_CASE("classification of the half-box interface") {
  const auto g = unit_cube(2);
  const Mesh m = build_box_mesh(g);
  const auto labels = classify_entities(m, g);

  // Interface is the plane x = 0.5: a 2x2 grid of squares, each split in two
  // (9 vertices, 6+6 axis edges + 4 diagonals, 8 triangles).
  CHECK(labels.interface_vertices.size() == 9);
  CHECK(labels.interface_edges.size() == 16);
  CHECK(labels.interface_faces.size() == 8);

  for (Index v : labels.interface_vertices)
    CHECK(m.vertices[static_cast<std::size_t>(v)][0] == doctest::Approx(0.5));

  CHECK(labels.conductor_vertices.size() == 18);

  // Closure intersection equals the interface, entity by entity.
  for (Index e = 0; e < m.n_edges(); ++e) {
    const bool shared = labels.edge_in_conductor[static_cast<std::size_t>(e)] &&
                        labels.edge_in_insulator[static_cast<std::size_t>(e)];
    CHECK(shared == static_cast<bool>(labels.edge_on_interface[static_cast<std::size_t>(e)]));
  }

  for (Index f : labels.interface_faces) {
    const auto owners = m.face_tets[static_cast<std::size_t>(f)];
    REQUIRE(owners[1] != kInvalidIndex);
    CHECK(labels.tet_region[static_cast<std::size_t>(owners[0])] !=
          labels.tet_region[static_cast<std::size_t>(owners[1])]);
  }
}

TEST_CASE("interior conductor yields a closed, simply connected interface") {
  const auto g = unit_cube(3, Vec3{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                           Vec3{2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0});
  const Mesh m = build_box_mesh(g);
  const auto labels = classify_entities(m, g);
  const long long chi = static_cast<long long>(labels.interface_vertices.size()) -
                        static_cast<long long>(labels.interface_edges.size()) +
                        static_cast<long long>(labels.interface_faces.size());
  CHECK(chi == 2);
}

TEST_CASE("middle slab conductor is rejected: disconnected interface") {
  const auto g = unit_cube(4, Vec3{0.25, 0, 0}, Vec3{0.5, 1, 1});
  const Mesh m = build_box_mesh(g);
  CHECK_THROWS_AS(classify_entities(m, g), ConfigError);
}

TEST_CASE("euler characteristic holds across resolutions") {
  for (int n : {1, 2, 3}) {
    BoxGeometry g = column_geometry();
    g.resolution = n;
    const Mesh m = build_box_mesh(g);
    CHECK(m.euler_characteristic() == 1);
    for (Index t = 0; t < m.n_tets(); ++t) CHECK(m.tet_volume(t) > 0.0);
  }
}

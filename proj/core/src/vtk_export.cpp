#include "mqsfeti/vtk_export.hpp"

#include "mqsfeti/errors.hpp"

#include <cstdio>
#include <fstream>

namespace mqsfeti {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v); // normalize -0
  return buf;
}

void write_vectors(std::ofstream& out, const char* name,
                   const std::vector<Vec3>& values) {
  out << "VECTORS " << name << " double\n";
  for (const auto& v : values) out << fmt(v[0]) << ' ' << fmt(v[1]) << ' ' << fmt(v[2]) << '\n';
}

} // namespace

void export_fields(const std::string& path, const Mesh& mesh, const EntityLabels& labels,
                   const BField& b, const ConductorEField* e) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open export path " + path);

  out << "# vtk DataFile Version 3.0\n";
  out << "eddy-current fields\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";

  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const auto& p : mesh.vertices)
    out << fmt(p[0]) << ' ' << fmt(p[1]) << ' ' << fmt(p[2]) << '\n';

  out << "CELLS " << mesh.n_tets() << ' ' << mesh.n_tets() * 5 << '\n';
  for (const auto& t : mesh.tets)
    out << "4 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';

  out << "CELL_TYPES " << mesh.n_tets() << '\n';
  for (Index t = 0; t < mesh.n_tets(); ++t) out << "10\n";

  const std::size_t nt = static_cast<std::size_t>(mesh.n_tets());
  std::vector<Vec3> b_re(nt), b_im(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    b_re[t] = b.per_tet[t].real();
    b_im[t] = b.per_tet[t].imag();
  }
  std::vector<Vec3> e_re(nt, Vec3::Zero()), e_im(nt, Vec3::Zero());
  if (e != nullptr)
    for (std::size_t i = 0; i < e->tets.size(); ++i) {
      e_re[static_cast<std::size_t>(e->tets[i])] = e->values[i].real();
      e_im[static_cast<std::size_t>(e->tets[i])] = e->values[i].imag();
    }

  out << "CELL_DATA " << mesh.n_tets() << '\n';
  write_vectors(out, "B_re", b_re);
  write_vectors(out, "B_im", b_im);
  out << "SCALARS subdomain int 1\nLOOKUP_TABLE default\n";
  for (std::size_t t = 0; t < nt; ++t)
    out << (labels.tet_region[t] == Region::Conductor ? 1 : 0) << '\n';
  write_vectors(out, "E_re", e_re);
  write_vectors(out, "E_im", e_im);

  if (!out) throw IoError("failed writing fields to " + path);
}

} // namespace mqsfeti

#include "tlbm/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace tlbm {

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

void write_vtk(std::ostream& os, const MacroField& m, const std::string& title) {
  const std::size_t n = std::size_t(m.nx) * m.ny * m.nz;
  os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << m.nx << ' ' << m.ny << ' ' << m.nz << "\n";
  os << "ORIGIN 0 0 0\nSPACING 1 1 1\n";
  os << "POINT_DATA " << n << "\n";
  os << "SCALARS node_type int 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i) os << int(m.types[i]) << '\n';
  os << "SCALARS density double 1\nLOOKUP_TABLE default\n";
  for (std::size_t i = 0; i < n; ++i) os << format_value(m.rho[i]) << '\n';
  os << "VECTORS velocity double\n";
  for (std::size_t i = 0; i < n; ++i)
    os << format_value(m.ux[i]) << ' ' << format_value(m.uy[i]) << ' ' << format_value(m.uz[i]) << '\n';
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void check_written(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void write_vtk_file(const std::string& path, const MacroField& m) {
  auto f = open_output(path);
  write_vtk(f, m);
  check_written(f, path);
}

void write_csv_slice(std::ostream& os, const MacroField& m, Axis axis, int index) {
  const int dims[3] = {m.nx, m.ny, m.nz};
  const int a = int(axis);
  if (index < 0 || index >= dims[a]) throw std::out_of_range("slice index outside the domain");
  os << "x,y,z,type,rho,ux,uy,uz\n";
  for (int z = 0; z < m.nz; ++z)
    for (int y = 0; y < m.ny; ++y)
      for (int x = 0; x < m.nx; ++x) {
        const int p[3] = {x, y, z};
        if (p[a] != index) continue;
        const std::size_t i = std::size_t(x) + std::size_t(m.nx) * (y + std::size_t(m.ny) * z);
        os << x << ',' << y << ',' << z << ',' << int(m.types[i]) << ',' << format_value(m.rho[i]) << ','
           << format_value(m.ux[i]) << ',' << format_value(m.uy[i]) << ',' << format_value(m.uz[i]) << '\n';
      }
}

void write_csv_slice_file(const std::string& path, const MacroField& m, Axis axis, int index) {
  auto f = open_output(path);
  write_csv_slice(f, m, axis, index);
  check_written(f, path);
}

}  // namespace tlbm

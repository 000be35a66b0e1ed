#pragma once
// Field output: legacy ASCII VTK and CSV slices. Formatting is fixed so equal
// fields always produce identical bytes.

#include <iosfwd>
#include <string>

#include "tlbm/geometry.hpp"
#include "tlbm/solver.hpp"

namespace tlbm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// STRUCTURED_POINTS with node_type and density scalars and velocity vectors.
void write_vtk(std::ostream& os, const MacroField& m, const std::string& title = "tlbm");
/// Throws IoError when the file cannot be written.
void write_vtk_file(const std::string& path, const MacroField& m);

/// Columns x,y,z,type,rho,ux,uy,uz for every node of the plane `axis == index`.
void write_csv_slice(std::ostream& os, const MacroField& m, Axis axis, int index);
void write_csv_slice_file(const std::string& path, const MacroField& m, Axis axis, int index);

/// Fixed scientific formatting used by every writer.
std::string format_value(double v);

}  // namespace tlbm

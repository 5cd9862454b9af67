#ifndef EGMCL_IO_HPP
#define EGMCL_IO_HPP

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "egmcl/mesh.hpp"

namespace egmcl {

using NamedField = std::pair<std::string, std::vector<double>>;

/// Writes a legacy ASCII VTK (version 3.0) STRUCTURED_GRID file with the
/// given point and cell data arrays. Throws on I/O failure with the path.
void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<NamedField>& point_data,
               const std::vector<NamedField>& cell_data);

/// Reads back the named arrays from a file written by write_vtk (testing
/// round trips; not a general VTK parser).
std::vector<NamedField> read_vtk_fields(const std::string& path);

/// Minimal CSV emitter: header once, then one row per call.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& values);

 private:
  std::string path_;
  std::size_t columns_;
  std::ofstream out_;
};

}  // namespace egmcl

#endif

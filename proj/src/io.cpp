#include "egmcl/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace egmcl {

void write_vtk(const std::string& path, const Mesh& mesh,
               const std::vector<NamedField>& point_data,
               const std::vector<NamedField>& cell_data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(9);

  const int npx = mesh.nx() + 1, npy = mesh.ny() + 1;
  out << "# vtk DataFile Version 3.0\n";
  out << "scalar conservation law solution\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_GRID\n";
  out << "DIMENSIONS " << npx << " " << npy << " 1\n";
  out << "POINTS " << npx * npy << " double\n";
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    const Vec2 x = mesh.vertex_coord(i);
    out << x.x << " " << x.y << " 0\n";
  }

  if (!point_data.empty()) {
    out << "POINT_DATA " << mesh.num_vertices() << "\n";
    for (const NamedField& f : point_data) {
      if (static_cast<int>(f.second.size()) != mesh.num_vertices())
        throw std::runtime_error("point data size mismatch for " + f.first);
      out << "SCALARS " << f.first << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (double w : f.second) out << w << "\n";
    }
  }
  if (!cell_data.empty()) {
    out << "CELL_DATA " << mesh.num_cells() << "\n";
    for (const NamedField& f : cell_data) {
      if (static_cast<int>(f.second.size()) != mesh.num_cells())
        throw std::runtime_error("cell data size mismatch for " + f.first);
      out << "SCALARS " << f.first << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (double w : f.second) out << w << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<NamedField> read_vtk_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<NamedField> fields;
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    if (key == "POINT_DATA" || key == "CELL_DATA") {
      ss >> count;
    } else if (key == "SCALARS") {
      std::string name;
      ss >> name;
      std::getline(in, line);  // LOOKUP_TABLE
      std::vector<double> values(count);
      for (std::size_t k = 0; k < count; ++k) in >> values[k];
      std::getline(in, line);  // trailing newline
      fields.emplace_back(name, std::move(values));
    }
  }
  return fields;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : path_(path), columns_(header.size()), out_(path) {
  if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
  out_.precision(12);
  for (std::size_t k = 0; k < header.size(); ++k)
    out_ << header[k] << (k + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::runtime_error("CSV column count mismatch in " + path_);
  for (std::size_t k = 0; k < values.size(); ++k)
    out_ << values[k] << (k + 1 < values.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& values) {
  if (values.size() != columns_)
    throw std::runtime_error("CSV column count mismatch in " + path_);
  for (std::size_t k = 0; k < values.size(); ++k)
    out_ << values[k] << (k + 1 < values.size() ? "," : "\n");
}

}  // namespace egmcl

#ifndef EGMCL_MESH_HPP
#define EGMCL_MESH_HPP

#include <array>
#include <span>
#include <vector>

#include "egmcl/core.hpp"

namespace egmcl {

/// One mesh face. Interior faces are stored once; `out` is the neighbor
/// cell for interior faces and a ghost label >= num_cells() for boundary
/// faces. The normal points from `in` towards `out`.
struct Face {
  int in;
  int out;
  Vec2 normal;
  double area;
  int side;  // 0=W, 1=E, 2=S, 3=N relative to `in`
  bool boundary = false;
};

/// Uniform rectangular partition of an axis-aligned rectangle, with the
/// cell/vertex/face connectivity needed by the schemes. Cells and vertices
/// are numbered row-major; faces of a cell are ordered W, E, S, N.
/// Immutable after construction.
class Mesh {
 public:
  Mesh(Rect domain, int nx, int ny);

  const Rect& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }

  int num_cells() const { return nx_ * ny_; }
  int num_vertices() const { return (nx_ + 1) * (ny_ + 1); }
  int num_ghosts() const { return 2 * (nx_ + ny_); }
  double cell_area() const { return hx_ * hy_; }

  // Local vertex order: 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1) on the
  // reference cell (tensor-product Q1 numbering).
  std::array<int, 4> cell_vertices(int e) const;
  std::span<const int> vertex_cells(int i) const;

  const std::vector<Face>& faces() const { return faces_; }
  /// The 4 faces of cell e in W,E,S,N order, with +1 if e is the face's
  /// `in` cell and -1 otherwise.
  struct CellFace {
    int face;
    int orientation;
  };
  std::array<CellFace, 4> cell_faces(int e) const;

  Vec2 vertex_coord(int i) const;
  Vec2 cell_origin(int e) const;
  Vec2 cell_center(int e) const;
  Vec2 map_to_physical(int e, Vec2 ref) const;

  /// |Omega_i| = sum of areas of cells containing vertex i.
  double vertex_patch_measure(int i) const;

  /// Point on a face at arc-length parameter s in [0,1]. The face segment
  /// is oriented with increasing x (S/N faces) or increasing y (W/E faces).
  Vec2 face_point(const Face& f, double s) const;
  /// The two vertices on a face of cell `f.in`, as local indices of that
  /// cell, ordered consistently with face_point's parameterization.
  std::array<int, 2> face_local_vertices(const Face& f) const;

 private:
  Rect domain_;
  int nx_, ny_;
  double hx_, hy_;
  std::vector<Face> faces_;
  std::vector<std::array<CellFace, 4>> cell_faces_;
  std::vector<int> vertex_cell_offsets_;
  std::vector<int> vertex_cell_data_;
};

}  // namespace egmcl

#endif

#include "egmcl/mesh.hpp"

#include <stdexcept>

namespace egmcl {

Mesh::Mesh(Rect domain, int nx, int ny) : domain_(domain), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("Mesh: cell counts must be positive");
  }
  if (!(domain.x_max > domain.x_min) || !(domain.y_max > domain.y_min)) {
    throw std::invalid_argument("Mesh: degenerate domain rectangle");
  }
  hx_ = domain.width() / nx;
  hy_ = domain.height() / ny;

  const int n_cells = num_cells();
  cell_faces_.resize(n_cells);
  faces_.reserve(2 * n_cells + nx + ny);

  // Deterministic enumeration: cells row-major, faces in W,E,S,N order.
  // Interior faces are created by the cell on the low-index side (E and N
  // sides); boundary faces get ghost labels in encounter order.
  int next_ghost = n_cells;
  auto cell_id = [this](int cx, int cy) { return cy * nx_ + cx; };
  for (int cy = 0; cy < ny_; ++cy) {
    for (int cx = 0; cx < nx_; ++cx) {
      const int e = cell_id(cx, cy);
      // W
      if (cx == 0) {
        faces_.push_back({e, next_ghost++, {-1.0, 0.0}, hy_, 0, true});
        cell_faces_[e][0] = {static_cast<int>(faces_.size()) - 1, +1};
      } else {
        // shared with the E face of the west neighbor
        const int nb = cell_id(cx - 1, cy);
        cell_faces_[e][0] = {cell_faces_[nb][1].face, -1};
      }
      // E
      if (cx == nx_ - 1) {
        faces_.push_back({e, next_ghost++, {1.0, 0.0}, hy_, 1, true});
      } else {
        faces_.push_back({e, cell_id(cx + 1, cy), {1.0, 0.0}, hy_, 1, false});
      }
      cell_faces_[e][1] = {static_cast<int>(faces_.size()) - 1, +1};
      // S
      if (cy == 0) {
        faces_.push_back({e, next_ghost++, {0.0, -1.0}, hx_, 2, true});
        cell_faces_[e][2] = {static_cast<int>(faces_.size()) - 1, +1};
      } else {
        const int nb = cell_id(cx, cy - 1);
        cell_faces_[e][2] = {cell_faces_[nb][3].face, -1};
      }
      // N
      if (cy == ny_ - 1) {
        faces_.push_back({e, next_ghost++, {0.0, 1.0}, hx_, 3, true});
      } else {
        faces_.push_back({e, cell_id(cx, cy + 1), {0.0, 1.0}, hx_, 3, false});
      }
      cell_faces_[e][3] = {static_cast<int>(faces_.size()) - 1, +1};
    }
  }

  // Vertex -> incident cells, CSR layout.
  const int n_verts = num_vertices();
  vertex_cell_offsets_.assign(n_verts + 1, 0);
  for (int e = 0; e < n_cells; ++e) {
    for (int v : cell_vertices(e)) ++vertex_cell_offsets_[v + 1];
  }
  for (int i = 0; i < n_verts; ++i) {
    vertex_cell_offsets_[i + 1] += vertex_cell_offsets_[i];
  }
  vertex_cell_data_.resize(vertex_cell_offsets_.back());
  std::vector<int> cursor(vertex_cell_offsets_.begin(),
                          vertex_cell_offsets_.end() - 1);
  for (int e = 0; e < n_cells; ++e) {
    for (int v : cell_vertices(e)) vertex_cell_data_[cursor[v]++] = e;
  }
}

std::array<int, 4> Mesh::cell_vertices(int e) const {
  const int cx = e % nx_;
  const int cy = e / nx_;
  const int base = cy * (nx_ + 1) + cx;
  return {base, base + 1, base + nx_ + 1, base + nx_ + 2};
}

std::span<const int> Mesh::vertex_cells(int i) const {
  return {vertex_cell_data_.data() + vertex_cell_offsets_[i],
          vertex_cell_data_.data() + vertex_cell_offsets_[i + 1]};
}

std::array<Mesh::CellFace, 4> Mesh::cell_faces(int e) const {
  return cell_faces_[e];
}

Vec2 Mesh::vertex_coord(int i) const {
  const int vx = i % (nx_ + 1);
  const int vy = i / (nx_ + 1);
  return {domain_.x_min + vx * hx_, domain_.y_min + vy * hy_};
}

Vec2 Mesh::cell_origin(int e) const {
  const int cx = e % nx_;
  const int cy = e / nx_;
  return {domain_.x_min + cx * hx_, domain_.y_min + cy * hy_};
}

Vec2 Mesh::cell_center(int e) const {
  const Vec2 o = cell_origin(e);
  return {o.x + 0.5 * hx_, o.y + 0.5 * hy_};
}

Vec2 Mesh::map_to_physical(int e, Vec2 ref) const {
  const Vec2 o = cell_origin(e);
  return {o.x + ref.x * hx_, o.y + ref.y * hy_};
}

double Mesh::vertex_patch_measure(int i) const {
  return cell_area() * static_cast<double>(vertex_cells(i).size());
}

Vec2 Mesh::face_point(const Face& f, double s) const {
  const Vec2 o = cell_origin(f.in);
  switch (f.side) {
    case 0: return {o.x, o.y + s * hy_};
    case 1: return {o.x + hx_, o.y + s * hy_};
    case 2: return {o.x + s * hx_, o.y};
    default: return {o.x + s * hx_, o.y + hy_};
  }
}

std::array<int, 2> Mesh::face_local_vertices(const Face& f) const {
  switch (f.side) {
    case 0: return {0, 2};
    case 1: return {1, 3};
    case 2: return {0, 1};
    default: return {2, 3};
  }
}

}  // namespace egmcl

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace disperse {

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rectangular n-dimensional cell grid. Cell i along axis j covers
/// [origin_j + i * spacing_j, origin_j + (i + 1) * spacing_j).
struct Grid {
  std::vector<int> cells;
  std::vector<double> spacing;
  std::vector<double> origin;

  int dim() const { return static_cast<int>(cells.size()); }
  std::size_t size() const;
  double cell_volume() const;
  double cell_lower(int axis, int i) const { return origin[axis] + i * spacing[axis]; }
  double cell_center(int axis, int i) const { return origin[axis] + (i + 0.5) * spacing[axis]; }
  double upper(int axis) const { return origin[axis] + cells[axis] * spacing[axis]; }
  /// Distance in the flat index between neighbours along `axis` (row-major,
  /// last axis contiguous).
  std::size_t stride(int axis) const;
  /// Per-axis multi-index of a flat index.
  std::vector<int> unflatten(std::size_t flat) const;

  /// Throws std::invalid_argument unless every axis has >= 3 cells and a
  /// positive finite spacing.
  void validate() const;

  bool operator==(const Grid&) const = default;
};

Grid make_grid(std::vector<int> cells, std::vector<double> spacing, std::vector<double> origin);

/// Uniform grid covering [lower_j, upper_j] with the given cell counts.
Grid make_box_grid(std::vector<int> cells, const std::vector<double>& lower,
                   const std::vector<double>& upper);

/// Cell averages on a grid, row-major.
struct Field {
  Grid grid;
  std::vector<double> values;

  static Field zeros(const Grid& grid);

  std::size_t size() const { return values.size(); }
  double max_abs() const;
  double min() const;
  double max() const;
  bool all_finite() const;
  /// sum_i u_i dV in index order.
  double integral() const;
};

void require_same_grid(const Field& a, const Field& b);

}  // namespace disperse

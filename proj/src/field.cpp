#include "disperse/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace disperse {

std::size_t Grid::size() const {
  std::size_t n = cells.empty() ? 0 : 1;
  for (int c : cells) n *= static_cast<std::size_t>(c);
  return n;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (double h : spacing) v *= h;
  return v;
}

std::size_t Grid::stride(int axis) const {
  std::size_t s = 1;
  for (int j = dim() - 1; j > axis; --j) s *= static_cast<std::size_t>(cells[j]);
  return s;
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
  std::vector<int> idx(cells.size());
  for (int j = dim() - 1; j >= 0; --j) {
    idx[j] = static_cast<int>(flat % static_cast<std::size_t>(cells[j]));
    flat /= static_cast<std::size_t>(cells[j]);
  }
  return idx;
}

void Grid::validate() const {
  if (cells.empty()) throw std::invalid_argument("grid needs at least one axis");
  if (spacing.size() != cells.size() || origin.size() != cells.size()) {
    throw std::invalid_argument("grid cells/spacing/origin lengths differ");
  }
  for (std::size_t j = 0; j < cells.size(); ++j) {
    if (cells[j] < 3) {
      throw std::invalid_argument("grid axis " + std::to_string(j) + " needs >= 3 cells");
    }
    if (!(spacing[j] > 0.0) || !std::isfinite(spacing[j])) {
      throw std::invalid_argument("grid axis " + std::to_string(j) + " needs positive spacing");
    }
    if (!std::isfinite(origin[j])) throw std::invalid_argument("grid origin must be finite");
  }
}

Grid make_grid(std::vector<int> cells, std::vector<double> spacing, std::vector<double> origin) {
  Grid g{std::move(cells), std::move(spacing), std::move(origin)};
  g.validate();
  return g;
}

Grid make_box_grid(std::vector<int> cells, const std::vector<double>& lower,
                   const std::vector<double>& upper) {
  if (lower.size() != cells.size() || upper.size() != cells.size()) {
    throw std::invalid_argument("make_box_grid: bounds do not match cell counts");
  }
  std::vector<double> spacing(cells.size());
  for (std::size_t j = 0; j < cells.size(); ++j) {
    spacing[j] = (upper[j] - lower[j]) / std::max(cells[j], 1);
  }
  return make_grid(std::move(cells), std::move(spacing), lower);
}

Field Field::zeros(const Grid& grid) {
  grid.validate();
  return Field{grid, std::vector<double>(grid.size(), 0.0)};
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const { return *std::min_element(values.begin(), values.end()); }

double Field::max() const { return *std::max_element(values.begin(), values.end()); }

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double Field::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size()) {
    throw GridMismatch("fields live on different grids");
  }
}

}  // namespace disperse

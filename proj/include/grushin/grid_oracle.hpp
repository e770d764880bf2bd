#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grushin/core.hpp"
#include "grushin/region.hpp"

namespace grushin {

/// Shortest axis-parallel path length on a lattice over a rectangle.
///
/// Nodes sit at cell centres (spacing h = width / resolution), so no node lies on
/// the axis x = 0 when the region straddles it symmetrically. Horizontal edges
/// weigh h; a vertical edge in column x weighs h |x|^(-alpha/2). The value is an
/// independent numerical estimate of the Carnot-Caratheodory distance.
class GridOracle {
public:
  struct Node {
    int column;
    int row;
  };

  GridOracle(Params params, Rectangle region, int resolution);

  int columns() const { return columns_; }
  int rows() const { return rows_; }
  double spacing() const { return h_; }
  const Rectangle& region() const { return region_; }

  /// Nearest lattice node; throws PreconditionError outside the region.
  Node nearest_node(const GrushinPoint& z) const;
  double column_abscissa(int column) const { return region_.xmin + h_ * (column + 0.5); }

  double distance(const GrushinPoint& z1, const GrushinPoint& z2) const;

  /// Distances from `source` to every target, sharing one Dijkstra sweep.
  std::vector<double> distances(const GrushinPoint& source,
                                std::span<const GrushinPoint> targets) const;

  /// Distances between lattice nodes that share the source column.
  std::vector<double> node_distances(Node source, std::span<const Node> targets) const;

private:
  Params params_;
  Rectangle region_;
  int columns_;
  int rows_;
  double h_;
  std::vector<double> vertical_weight_;
};

/// Convenience wrapper building a one-off oracle.
double grid_cc_distance(const GrushinPoint& z1, const GrushinPoint& z2, const Params& p,
                        int resolution, const Rectangle& region);

}  // namespace grushin

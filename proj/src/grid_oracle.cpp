#include "grushin/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

namespace grushin {

GridOracle::GridOracle(Params params, Rectangle region, int resolution)
    : params_(params), region_(region) {
  region_.validate();
  if (resolution < 8) {
    throw PreconditionError("grid resolution must be at least 8, got " +
                            std::to_string(resolution));
  }
  columns_ = resolution;
  h_ = region_.width() / resolution;
  rows_ = std::max(1, static_cast<int>(std::ceil(region_.height() / h_ - 1e-9)));
  vertical_weight_.resize(columns_);
  for (int i = 0; i < columns_; ++i) {
    const double x = std::abs(column_abscissa(i));
    vertical_weight_[i] = x == 0 ? std::numeric_limits<double>::infinity()
                                 : h_ * std::pow(x, -params_.half_alpha());
  }
}

GridOracle::Node GridOracle::nearest_node(const GrushinPoint& z) const {
  if (!region_.contains(z.coords())) {
    std::ostringstream os;
    os << "point (" << z.x() << ", " << z.y() << ") lies outside the grid region";
    throw PreconditionError(os.str());
  }
  const int i = std::clamp(static_cast<int>(std::floor((z.x() - region_.xmin) / h_)), 0,
                           columns_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((z.y() - region_.ymin) / h_)), 0,
                           rows_ - 1);
  return {i, j};
}

// Vertical edge weights depend only on the column, and projecting any path onto
// the row band spanned by its endpoints never lengthens it. Hence the node-to-node
// distance depends only on (source column, target column, |row difference|), and
// a single sweep from (column, row 0) answers every query with that source column.
std::vector<double> GridOracle::node_distances(Node source, std::span<const Node> targets) const {
  const auto index = [this](int i, int j) { return static_cast<std::size_t>(j) * columns_ + i; };
  std::vector<double> dist(static_cast<std::size_t>(columns_) * rows_,
                           std::numeric_limits<double>::infinity());
  std::vector<char> settled(dist.size(), 0);

  std::vector<std::size_t> target_index;
  target_index.reserve(targets.size());
  int max_row = 0;
  for (const auto& t : targets) {
    const int dj = std::abs(t.row - source.row);
    max_row = std::max(max_row, dj);
    target_index.push_back(index(t.column, dj));
  }
  std::vector<char> wanted(dist.size(), 0);
  std::size_t remaining = 0;
  for (auto ti : target_index) {
    if (!wanted[ti]) {
      wanted[ti] = 1;
      ++remaining;
    }
  }

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  const std::size_t start = index(source.column, 0);
  dist[start] = 0;
  heap.emplace(0.0, start);

  while (!heap.empty() && remaining > 0) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (wanted[u]) --remaining;
    const int i = static_cast<int>(u % columns_);
    const int j = static_cast<int>(u / columns_);
    const auto relax = [&](int ni, int nj, double w) {
      const std::size_t v = index(ni, nj);
      if (!settled[v] && d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    };
    if (i > 0) relax(i - 1, j, h_);
    if (i + 1 < columns_) relax(i + 1, j, h_);
    if (j > 0) relax(i, j - 1, vertical_weight_[i]);
    if (j < max_row) relax(i, j + 1, vertical_weight_[i]);
  }

  std::vector<double> out;
  out.reserve(targets.size());
  for (auto ti : target_index) out.push_back(dist[ti]);
  return out;
}

std::vector<double> GridOracle::distances(const GrushinPoint& source,
                                          std::span<const GrushinPoint> targets) const {
  const Node s = nearest_node(source);
  std::vector<Node> nodes;
  nodes.reserve(targets.size());
  for (const auto& t : targets) nodes.push_back(nearest_node(t));
  return node_distances(s, nodes);
}

double GridOracle::distance(const GrushinPoint& z1, const GrushinPoint& z2) const {
  const GrushinPoint targets[] = {z2};
  return distances(z1, targets).front();
}

double grid_cc_distance(const GrushinPoint& z1, const GrushinPoint& z2, const Params& p,
                        int resolution, const Rectangle& region) {
  return GridOracle(p, region, resolution).distance(z1, z2);
}

}  // namespace grushin

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "upslab/grid.hpp"

namespace upslab {

/// A subset of the grid as a strictly increasing list of flat indices.
struct IndexSet {
  GridParams grid;
  std::vector<std::int64_t> indices;

  std::int64_t size() const { return static_cast<std::int64_t>(indices.size()); }
  bool empty() const { return indices.empty(); }

  bool contains(std::int64_t flat) const {
    return std::binary_search(indices.begin(), indices.end(), flat);
  }
};

/// Sorts, deduplicates, and range-checks.
inline IndexSet make_index_set(const GridParams& grid, std::vector<std::int64_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!indices.empty() && (indices.front() < 0 || indices.back() >= grid.total))
    throw std::invalid_argument("set index out of range for grid");
  return IndexSet{grid, std::move(indices)};
}

inline IndexSet empty_set(const GridParams& grid) { return IndexSet{grid, {}}; }

inline IndexSet full_set(const GridParams& grid) {
  std::vector<std::int64_t> all(static_cast<std::size_t>(grid.total));
  for (std::int64_t i = 0; i < grid.total; ++i) all[static_cast<std::size_t>(i)] = i;
  return IndexSet{grid, std::move(all)};
}

inline IndexSet complement(const IndexSet& s) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(s.grid.total - s.size()));
  std::size_t k = 0;
  for (std::int64_t i = 0; i < s.grid.total; ++i) {
    if (k < s.indices.size() && s.indices[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return IndexSet{s.grid, std::move(out)};
}

/// Membership bitmap for O(1) lookups in inner loops.
inline std::vector<char> to_bitmap(const IndexSet& s) {
  std::vector<char> bits(static_cast<std::size_t>(s.grid.total), 0);
  for (std::int64_t i : s.indices) bits[static_cast<std::size_t>(i)] = 1;
  return bits;
}

}  // namespace upslab

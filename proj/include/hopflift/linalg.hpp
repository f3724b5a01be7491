// Dense exact row reduction over cyclotomic fields.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hopflift/cyclotomic.hpp"

namespace hopflift {

using Vec = std::vector<CycNum>;

/// Incremental echelon basis with first-nonzero pivoting. Each stored row
/// remembers which inserted vectors (by label) it was built from.
class RowReducer {
 public:
  explicit RowReducer(std::size_t ncols) : ncols_(ncols) {}

  struct Reduction {
    Vec residual;
    /// v = residual + sum coeff * (vector inserted under label)
    std::map<std::size_t, CycNum> combination;
    bool in_span() const;
  };

  /// Returns true when v was independent of the rows so far.
  bool insert(const Vec& v, std::size_t label);
  Reduction reduce(const Vec& v) const;
  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }

 private:
  struct Row {
    std::size_t pivot;
    Vec values;
    std::map<std::size_t, CycNum> combination;
  };
  std::size_t ncols_;
  std::vector<Row> rows_;
};

/// Some x with sum_j x[j] * columns[j] == b (free variables set to 0).
std::optional<Vec> solve_columns(const std::vector<Vec>& columns, const Vec& b);

}  // namespace hopflift

#include "hopflift/linalg.hpp"

#include "hopflift/errors.hpp"

namespace hopflift {

bool RowReducer::Reduction::in_span() const {
  for (const auto& x : residual)
    if (!x.is_zero()) return false;
  return true;
}

RowReducer::Reduction RowReducer::reduce(const Vec& v) const {
  if (v.size() != ncols_) throw InvalidArgument("row length mismatch in reduction");
  Reduction out{v, {}};
  for (const Row& row : rows_) {
    CycNum c = out.residual[row.pivot];
    if (c.is_zero()) continue;
    for (std::size_t k = row.pivot; k < ncols_; ++k)
      if (!row.values[k].is_zero()) out.residual[k] -= c * row.values[k];
    for (const auto& [label, coeff] : row.combination) {
      CycNum& slot = out.combination[label];
      slot += c * coeff;
      if (slot.is_zero()) out.combination.erase(label);
    }
  }
  return out;
}

bool RowReducer::insert(const Vec& v, std::size_t label) {
  Reduction r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < ncols_ && r.residual[pivot].is_zero()) ++pivot;
  if (pivot == ncols_) return false;
  // residual = v - sum(...), so the new row is (v - combination) / pivot value.
  CycNum s = r.residual[pivot].inv();
  Row row{pivot, std::move(r.residual), {}};
  for (auto& x : row.values)
    if (!x.is_zero()) x = x * s;
  row.combination[label] = s;
  for (const auto& [l, c] : r.combination) {
    CycNum& slot = row.combination[l];
    slot -= c * s;
    if (slot.is_zero()) row.combination.erase(l);
  }
  rows_.push_back(std::move(row));
  return true;
}

std::optional<Vec> solve_columns(const std::vector<Vec>& columns, const Vec& b) {
  RowReducer rr(b.size());
  for (std::size_t j = 0; j < columns.size(); ++j) rr.insert(columns[j], j);
  auto r = rr.reduce(b);
  if (!r.in_span()) return std::nullopt;
  Vec x(columns.size());
  for (const auto& [j, c] : r.combination) x[j] = c;
  return x;
}

}  // namespace hopflift

// Copyright 2026 The smtkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain backtracking Sudoku solver used as an independent reference. It
// shares nothing with the solver-backed path beyond the grid type.

#ifndef SMTKIT_TESTS_SUDOKU_ORACLE_HPP
#define SMTKIT_TESTS_SUDOKU_ORACLE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "smtkit/apps/sudoku.hpp"

namespace smtkit::testing {

class SudokuOracle
{
 public:
  explicit SudokuOracle(const SudokuGrid& grid)
      : d_n(grid.n), d_side(grid.n * grid.n), d_cells(grid.cells.size(), 0)
  {
    for (std::size_t i = 0; i < d_cells.size(); ++i) d_cells[i] = grid.cells[i].value_or(0);
  }

  /** Number of completions, counting no further than `limit`. */
  std::size_t count(std::size_t limit = 2)
  {
    d_limit = limit;
    d_found = 0;
    d_first.reset();
    if (!givens_consistent()) return 0;
    search();
    return d_found;
  }

  const std::optional<std::vector<int>>& first() const { return d_first; }

  /** Fills the grid with a random valid completion; false if there is none. */
  template <typename Rng>
  bool randomize(Rng& rng)
  {
    d_rng_order.resize(d_side);
    std::iota(d_rng_order.begin(), d_rng_order.end(), 1);
    std::shuffle(d_rng_order.begin(), d_rng_order.end(), rng);
    bool ok = count(1) == 1;
    d_rng_order.clear();
    if (ok) d_cells = *d_first;
    return ok;
  }

  const std::vector<int>& cells() const { return d_cells; }

 private:
  bool allowed(std::size_t idx, int v) const
  {
    std::size_t r = idx / d_side, c = idx % d_side;
    std::size_t br = r / d_n * d_n, bc = c / d_n * d_n;
    for (std::size_t k = 0; k < d_side; ++k)
    {
      if (k != c && d_cells[r * d_side + k] == v) return false;
      if (k != r && d_cells[k * d_side + c] == v) return false;
      std::size_t rr = br + k / d_n, cc = bc + k % d_n;
      if ((rr != r || cc != c) && d_cells[rr * d_side + cc] == v) return false;
    }
    return true;
  }

  bool givens_consistent() const
  {
    for (std::size_t i = 0; i < d_cells.size(); ++i)
    {
      if (d_cells[i] != 0 && !allowed(i, d_cells[i])) return false;
    }
    return true;
  }

  void search()
  {
    // Most constrained blank first.
    std::size_t best = d_cells.size();
    std::size_t best_count = d_side + 1;
    for (std::size_t i = 0; i < d_cells.size(); ++i)
    {
      if (d_cells[i] != 0) continue;
      std::size_t options = 0;
      for (int v = 1; v <= static_cast<int>(d_side); ++v) options += allowed(i, v);
      if (options < best_count)
      {
        best = i;
        best_count = options;
      }
    }
    if (best == d_cells.size())
    {
      if (d_found++ == 0) d_first = d_cells;
      return;
    }
    for (std::size_t k = 0; k < d_side && d_found < d_limit; ++k)
    {
      int v = d_rng_order.empty() ? static_cast<int>(k + 1) : d_rng_order[k];
      if (!allowed(best, v)) continue;
      d_cells[best] = v;
      search();
      d_cells[best] = 0;
    }
  }

  std::size_t d_n;
  std::size_t d_side;
  std::vector<int> d_cells;
  std::size_t d_limit = 2;
  std::size_t d_found = 0;
  std::optional<std::vector<int>> d_first;
  std::vector<int> d_rng_order;
};

inline SudokuGrid grid_from(std::size_t n, const std::vector<int>& cells)
{
  std::vector<std::optional<int>> out;
  for (int v : cells) out.push_back(v == 0 ? std::nullopt : std::optional<int>(v));
  return SudokuGrid(n, out);
}

/**
 * A random 4×4 puzzle: a random full grid with cells blanked. Every fourth
 * puzzle gets one extra clue overwritten, which may make it unsolvable.
 */
template <typename Rng>
SudokuGrid random_small_puzzle(Rng& rng, std::size_t index)
{
  SudokuOracle full(SudokuGrid(2, std::vector<std::optional<int>>(16)));
  full.randomize(rng);
  std::vector<int> cells = full.cells();
  std::uniform_int_distribution<int> coin(0, 99);
  int keep = 25 + static_cast<int>(index % 4) * 10;
  for (int& v : cells)
  {
    if (coin(rng) >= keep) v = 0;
  }
  if (index % 4 == 3)
  {
    std::uniform_int_distribution<std::size_t> cell(0, 15);
    std::uniform_int_distribution<int> digit(1, 4);
    cells[cell(rng)] = digit(rng);
  }
  return grid_from(2, cells);
}

}  // namespace smtkit::testing

#endif

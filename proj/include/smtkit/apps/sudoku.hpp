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

// n×n Sudoku (a grid of n²×n² cells) solved through a session. Cells are the
// variables C0 .. C(n⁴-1) in row-major order.

#ifndef SMTKIT_APPS_SUDOKU_HPP
#define SMTKIT_APPS_SUDOKU_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/session.hpp"

namespace smtkit {

struct SudokuGrid
{
  /** Box dimension; the grid is n²×n². */
  std::size_t n = 3;
  /** Row-major, n⁴ entries; nullopt is blank. */
  std::vector<std::optional<int>> cells;

  /** Validates size and ranges; throws MalformedGrid. */
  SudokuGrid(std::size_t n, std::vector<std::optional<int>> cells);

  /** Whitespace-separated tokens, `_` for blank; n inferred unless given. */
  static SudokuGrid parse(std::string_view text, std::optional<std::size_t> n = std::nullopt);
  static SudokuGrid load(const std::string& path, std::optional<std::size_t> n = std::nullopt);

  std::size_t side() const { return n * n; }
  const std::optional<int>& at(std::size_t row, std::size_t col) const
  {
    return cells[row * side() + col];
  }
  bool filled() const;
  /** Rows of space-separated tokens. */
  std::string to_string() const;

  bool operator==(const SudokuGrid&) const = default;
};

enum class CellEncoding
{
  integer,
  enumeration,
};

std::string cell_var(std::size_t index);

/** Index of the top-left cell of every box, row-major. */
std::vector<std::size_t> box_starts(std::size_t n);
/** Offsets from a box start to each of its cells. */
std::vector<std::size_t> box_offsets(std::size_t n);

struct SudokuConstraints
{
  SExpr specifiers;
  std::vector<SExpr> constraints;
};

/** Range and distinctness constraints for every row, column and box. */
SudokuConstraints sudoku_base_constraints(std::size_t n,
                                          CellEncoding encoding = CellEncoding::integer);

/** (= Ci v) for each given cell. */
std::vector<SExpr> input_grid_constraints(const SudokuGrid& grid);

/** Declares the cells and asserts the base constraints at the current level. */
void assert_sudoku_base(Session& session,
                        std::size_t n,
                        CellEncoding encoding = CellEncoding::integer);

struct SudokuOutcome
{
  CheckResult result;
  std::optional<SudokuGrid> solution;
};

/** Solves `grid` in a pushed scope; base constraints must already be asserted. */
SudokuOutcome solve_grid(Session& session, const SudokuGrid& grid);

/** True iff every row, column and box of a filled grid is a permutation of 1..n². */
bool verify_grid(const SudokuGrid& grid);

/** True iff `solution` is the only completion of `grid`. */
bool check_unique(Session& session, const SudokuGrid& grid, const SudokuGrid& solution);

}  // namespace smtkit

#endif

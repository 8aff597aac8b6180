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

#include <gtest/gtest.h>

#include <random>

#include "smtkit/apps/sudoku.hpp"
#include "solvers.hpp"
#include "sudoku_oracle.hpp"

namespace smtkit {
namespace {

std::string puzzle_path(int i)
{
  char name[32];
  std::snprintf(name, sizeof name, "/data/sudoku/puzzle%02d.txt", i);
  return std::string(SMTKIT_SOURCE_DIR) + name;
}

TEST(SudokuGridTest, ParseAndPrint)
{
  SudokuGrid g = SudokuGrid::parse("1 _ _ 4\n_ _ 1 _\n_ 1 _ _\n4 _ _ 1");
  EXPECT_EQ(g.n, 2u);
  EXPECT_EQ(g.at(0, 3), std::optional<int>(4));
  EXPECT_FALSE(g.at(0, 1).has_value());
  EXPECT_FALSE(g.filled());
  EXPECT_EQ(SudokuGrid::parse(g.to_string()), g);
}

TEST(SudokuGridTest, Malformed)
{
  EXPECT_THROW(SudokuGrid::parse("1 2 3"), MalformedGrid);
  EXPECT_THROW(SudokuGrid::parse("1 _ _ 5 _ _ _ _ _ _ _ _ _ _ _ _"), MalformedGrid);
  EXPECT_THROW(SudokuGrid::parse("1 _ _ x _ _ _ _ _ _ _ _ _ _ _ _"), MalformedGrid);
  EXPECT_THROW(SudokuGrid::parse("_ _ _ _ _ _ _ _ _ _ _ _ _ _ _ _", 3), MalformedGrid);
  EXPECT_THROW(SudokuGrid(2, std::vector<std::optional<int>>(15)), MalformedGrid);
}

TEST(SudokuGridTest, Verify)
{
  SudokuGrid good = SudokuGrid::parse("1 2 3 4 3 4 1 2 2 1 4 3 4 3 2 1");
  EXPECT_TRUE(verify_grid(good));
  SudokuGrid bad_box = SudokuGrid::parse("1 2 3 4 2 1 4 3 3 4 1 2 4 3 2 1");
  EXPECT_FALSE(verify_grid(bad_box));
  EXPECT_FALSE(verify_grid(SudokuGrid::parse("1 2 3 4 3 4 1 2 2 1 4 3 4 3 2 _")));
}

TEST(SudokuConstraintsTest, Shape)
{
  EXPECT_EQ(box_starts(2), (std::vector<std::size_t>{0, 2, 8, 10}));
  EXPECT_EQ(box_offsets(2), (std::vector<std::size_t>{0, 1, 4, 5}));
  EXPECT_EQ(cell_var(7), "C7");
  SudokuConstraints c = sudoku_base_constraints(2);
  // 16 cells × 2 range bounds + 4 rows + 4 columns + 4 boxes.
  EXPECT_EQ(c.constraints.size(), 16u * 2 + 12);
  EXPECT_EQ(c.specifiers.size(), 32u);
  EXPECT_EQ(print(c.constraints.front()), "(<= 1 C0)");
  // A 1×1 grid has one cell and no groups of two or more.
  EXPECT_EQ(sudoku_base_constraints(1).constraints.size(), 2u);

  SudokuGrid g = SudokuGrid::parse("1 _ _ 4 _ _ _ _ _ _ _ _ _ _ _ _");
  auto in = input_grid_constraints(g);
  ASSERT_EQ(in.size(), 2u);
  EXPECT_EQ(print(in[1]), "(= C3 4)");
}

TEST(SudokuConstraintsTest, NineByNineGeometry)
{
  EXPECT_EQ(box_starts(3), (std::vector<std::size_t>{0, 3, 6, 27, 30, 33, 54, 57, 60}));
  EXPECT_EQ(box_offsets(3), (std::vector<std::size_t>{0, 1, 2, 9, 10, 11, 18, 19, 20}));
  SudokuConstraints c = sudoku_base_constraints(3);
  EXPECT_EQ(c.specifiers.size(), 162u);
  std::size_t distincts = 0;
  for (const SExpr& e : c.constraints) distincts += e.head_is("distinct");
  EXPECT_EQ(distincts, 27u);
  EXPECT_EQ(print(c.constraints[1]), "(>= 9 C0)");
  EXPECT_TRUE(input_grid_constraints(SudokuGrid(3, std::vector<std::optional<int>>(81))).empty());
  std::string out_of_range = "10";
  for (int i = 0; i < 80; ++i) out_of_range += " _";
  EXPECT_THROW(SudokuGrid::parse(out_of_range), MalformedGrid);
}

TEST(SudokuGridTest, AllOnesIsInvalid)
{
  EXPECT_FALSE(verify_grid(SudokuGrid(3, std::vector<std::optional<int>>(81, 1))));
}

TEST(SudokuOracleTest, Sanity)
{
  SudokuGrid empty(2, std::vector<std::optional<int>>(16));
  EXPECT_EQ(testing::SudokuOracle(empty).count(1000), 288u);
  SudokuGrid clash = SudokuGrid::parse("1 1 _ _ _ _ _ _ _ _ _ _ _ _ _ _");
  EXPECT_EQ(testing::SudokuOracle(clash).count(), 0u);
}

class SudokuSolve : public ::testing::TestWithParam<CellEncoding>
{
 protected:
  void SetUp() override
  {
    if (!testing::z3_available()) GTEST_SKIP() << "z3 not available";
    session = std::make_unique<Session>(testing::z3_config());
  }
  std::unique_ptr<Session> session;
};

TEST_P(SudokuSolve, RandomSmallPuzzlesAgreeWithOracle)
{
  assert_sudoku_base(*session, 2, GetParam());
  std::mt19937 rng(404);
  std::size_t by_count[3] = {0, 0, 0};
  for (std::size_t i = 0; i < 40; ++i)
  {
    SudokuGrid puzzle = testing::random_small_puzzle(rng, i);
    testing::SudokuOracle oracle(puzzle);
    std::size_t solutions = oracle.count(2);
    ++by_count[solutions];

    SudokuOutcome out = solve_grid(*session, puzzle);
    ASSERT_EQ(session->depth(), 1u);
    if (solutions == 0)
    {
      EXPECT_TRUE(out.result.is_unsat()) << puzzle.to_string();
      continue;
    }
    ASSERT_TRUE(out.result.is_sat()) << puzzle.to_string();
    ASSERT_TRUE(out.solution.has_value());
    EXPECT_TRUE(verify_grid(*out.solution));
    for (std::size_t k = 0; k < 16; ++k)
    {
      if (puzzle.cells[k])
      {
        EXPECT_EQ(out.solution->cells[k], puzzle.cells[k]);
      }
    }
    if (solutions == 1)
    {
      EXPECT_EQ(*out.solution, testing::grid_from(2, *oracle.first()));
    }
    EXPECT_EQ(check_unique(*session, puzzle, *out.solution), solutions == 1)
        << puzzle.to_string();
    EXPECT_EQ(session->depth(), 1u);
  }
  // The sample should exercise unsolvable, unique and ambiguous puzzles.
  EXPECT_GT(by_count[0], 0u);
  EXPECT_GT(by_count[1], 0u);
  EXPECT_GT(by_count[2], 0u);
}

TEST_P(SudokuSolve, StoredPuzzlesMatchOracle)
{
  assert_sudoku_base(*session, 3, GetParam());
  for (int i = 1; i <= 6; ++i)
  {
    SudokuGrid puzzle = SudokuGrid::load(puzzle_path(i));
    testing::SudokuOracle oracle(puzzle);
    ASSERT_EQ(oracle.count(2), 1u) << "puzzle " << i;
    SudokuOutcome out = solve_grid(*session, puzzle);
    ASSERT_TRUE(out.result.is_sat());
    EXPECT_EQ(*out.solution, testing::grid_from(3, *oracle.first())) << "puzzle " << i;
    EXPECT_TRUE(check_unique(*session, puzzle, *out.solution));
  }
  EXPECT_EQ(session->depth(), 1u);
}

TEST_P(SudokuSolve, EdgeCases)
{
  assert_sudoku_base(*session, 2, GetParam());
  SudokuGrid empty(2, std::vector<std::optional<int>>(16));
  SudokuOutcome any = solve_grid(*session, empty);
  ASSERT_TRUE(any.result.is_sat());
  EXPECT_TRUE(verify_grid(*any.solution));
  EXPECT_FALSE(check_unique(*session, empty, *any.solution));
  EXPECT_TRUE(check_unique(*session, *any.solution, *any.solution));

  // Swapping two cells of one row breaks the column constraints.
  SudokuGrid swapped = *any.solution;
  std::swap(swapped.cells[0], swapped.cells[1]);
  EXPECT_FALSE(verify_grid(swapped));

  std::vector<std::optional<int>> cells(16);
  cells[0] = 3;
  cells[2] = 3;
  EXPECT_TRUE(solve_grid(*session, SudokuGrid(2, cells)).result.is_unsat());
  EXPECT_EQ(session->depth(), 1u);
}

// With integer cells the blank 9×9 grid is beyond z3's reach in incremental
// mode (minutes); the enumeration encoding answers in seconds.
TEST(SudokuBlank, NineByNineIsNotUnique)
{
  if (!testing::z3_available()) GTEST_SKIP() << "z3 not available";
  Session session(testing::z3_config());
  assert_sudoku_base(session, 3, CellEncoding::enumeration);
  SudokuGrid empty(3, std::vector<std::optional<int>>(81));
  SudokuOutcome any = solve_grid(session, empty);
  ASSERT_TRUE(any.result.is_sat());
  EXPECT_TRUE(verify_grid(*any.solution));
  EXPECT_FALSE(check_unique(session, empty, *any.solution));

  std::vector<std::optional<int>> cells(81);
  cells[0] = 5;
  cells[4] = 5;
  EXPECT_TRUE(solve_grid(session, SudokuGrid(3, cells)).result.is_unsat());
}

INSTANTIATE_TEST_SUITE_P(Encodings,
                         SudokuSolve,
                         ::testing::Values(CellEncoding::integer, CellEncoding::enumeration));

TEST(SudokuPortable, Cvc5SolvesSmallPuzzle)
{
  auto config = testing::cvc5_config();
  if (!config) GTEST_SKIP() << "cvc5 not available";
  Session session(*config);
  assert_sudoku_base(session, 2);
  SudokuGrid puzzle = SudokuGrid::parse("1 _ _ _ _ _ 3 _ _ 4 _ _ _ _ _ 2");
  testing::SudokuOracle oracle(puzzle);
  std::size_t solutions = oracle.count(2);
  SudokuOutcome out = solve_grid(session, puzzle);
  ASSERT_TRUE(out.result.is_sat());
  EXPECT_TRUE(verify_grid(*out.solution));
  EXPECT_EQ(check_unique(session, puzzle, *out.solution), solutions == 1);
}

}  // namespace
}  // namespace smtkit

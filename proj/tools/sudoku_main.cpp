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

// Solves a Sudoku puzzle file: whitespace-separated cells, `_` for blanks.
//
// Exit status: 0 solved, 2 no solution, 3 solver gave up, 1 error.

#include <CLI11.hpp>

#include <iostream>

#include "smtkit/apps/sudoku.hpp"

int
main(int argc, char** argv)
{
  CLI::App app{"Solve an n*n Sudoku puzzle with an SMT solver"};
  std::string path;
  std::size_t n = 0;
  bool enum_sorts = false;
  bool unique = false;
  std::string solver;
  app.add_option("puzzle", path, "puzzle file")->required();
  app.add_option("--n", n, "box dimension (default: inferred from the cell count)");
  app.add_flag("--enum-sorts", enum_sorts, "encode cell values as an enumeration sort");
  app.add_flag("--check-unique", unique, "also report whether the solution is unique");
  app.add_option("--solver", solver, "solver command line (default: $SMT_SOLVER_PATH or z3 -in)");
  CLI11_PARSE(app, argc, argv);

  try
  {
    auto grid = smtkit::SudokuGrid::load(path, n > 0 ? std::optional<std::size_t>(n) : std::nullopt);
    smtkit::SessionConfig config;
    config.solver_flag = solver;
    smtkit::Session session(config);
    auto encoding = enum_sorts ? smtkit::CellEncoding::enumeration : smtkit::CellEncoding::integer;
    smtkit::assert_sudoku_base(session, grid.n, encoding);

    smtkit::SudokuOutcome out = smtkit::solve_grid(session, grid);
    if (!out.result.is_sat())
    {
      std::cout << smtkit::to_string(out.result) << "\n";
      return out.result.is_unsat() ? 2 : 3;
    }
    std::cout << out.solution->to_string();
    if (unique)
    {
      bool u = smtkit::check_unique(session, grid, *out.solution);
      std::cout << "unique: " << (u ? "yes" : "no") << "\n";
    }
    return 0;
  }
  catch (const std::exception& e)
  {
    std::cerr << "sudoku: " << e.what() << "\n";
    return 1;
  }
}

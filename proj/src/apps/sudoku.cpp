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

#include "smtkit/apps/sudoku.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "smtkit/errors.hpp"

namespace smtkit {

namespace {

/* Pops the scope it pushed on every exit path. */
class ScopeGuard
{
 public:
  explicit ScopeGuard(Session& s) : d_session(s) { d_session.push(); }
  ~ScopeGuard()
  {
    try
    {
      if (d_session.is_open()) d_session.pop();
    }
    catch (const std::exception&)
    {
    }
  }
  ScopeGuard(const ScopeGuard&) = delete;
  ScopeGuard& operator=(const ScopeGuard&) = delete;

 private:
  Session& d_session;
};

std::string digit_sort_name(std::size_t n)
{
  return "digit" + std::to_string(n * n);
}

SExpr conjunction(std::vector<SExpr> parts)
{
  parts.insert(parts.begin(), sym("and"));
  return SExpr::list(std::move(parts));
}

}  // namespace

SudokuGrid::SudokuGrid(std::size_t n_, std::vector<std::optional<int>> cells_)
    : n(n_), cells(std::move(cells_))
{
  if (n == 0) throw MalformedGrid("box dimension must be at least 1");
  std::size_t want = n * n * n * n;
  if (cells.size() != want)
  {
    throw MalformedGrid("expected " + std::to_string(want) + " cells for n=" + std::to_string(n)
                        + ", got " + std::to_string(cells.size()));
  }
  int hi = static_cast<int>(n * n);
  for (std::size_t i = 0; i < cells.size(); ++i)
  {
    if (cells[i] && (*cells[i] < 1 || *cells[i] > hi))
    {
      throw MalformedGrid("cell " + std::to_string(i) + " holds " + std::to_string(*cells[i])
                          + ", outside 1.." + std::to_string(hi));
    }
  }
}

SudokuGrid
SudokuGrid::parse(std::string_view text, std::optional<std::size_t> n)
{
  std::istringstream is{std::string(text)};
  std::vector<std::optional<int>> cells;
  std::string tok;
  while (is >> tok)
  {
    if (tok == "_")
    {
      cells.emplace_back();
      continue;
    }
    if (!std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 6)
    {
      throw MalformedGrid("bad cell token: " + tok);
    }
    cells.emplace_back(std::stoi(tok));
  }
  if (!n)
  {
    auto root = static_cast<std::size_t>(std::llround(std::sqrt(std::sqrt(double(cells.size())))));
    for (std::size_t k = root > 0 ? root - 1 : 0; k <= root + 1; ++k)
    {
      if (k > 0 && k * k * k * k == cells.size()) n = k;
    }
    if (!n)
    {
      throw MalformedGrid(std::to_string(cells.size()) + " cells is not a fourth power");
    }
  }
  return SudokuGrid(*n, std::move(cells));
}

SudokuGrid
SudokuGrid::load(const std::string& path, std::optional<std::size_t> n)
{
  std::ifstream in(path);
  if (!in) throw MalformedGrid("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), n);
}

bool
SudokuGrid::filled() const
{
  return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.has_value(); });
}

std::string
SudokuGrid::to_string() const
{
  std::ostringstream os;
  std::size_t width = std::to_string(side()).size();
  for (std::size_t r = 0; r < side(); ++r)
  {
    for (std::size_t c = 0; c < side(); ++c)
    {
      std::string tok = at(r, c) ? std::to_string(*at(r, c)) : "_";
      if (c > 0) os << ' ';
      os << std::string(width - tok.size(), ' ') << tok;
    }
    os << '\n';
  }
  return os.str();
}

std::string
cell_var(std::size_t index)
{
  return "C" + std::to_string(index);
}

std::vector<std::size_t>
box_starts(std::size_t n)
{
  std::size_t side = n * n;
  std::vector<std::size_t> out;
  for (std::size_t br = 0; br < n; ++br)
  {
    for (std::size_t bc = 0; bc < n; ++bc) out.push_back(br * n * side + bc * n);
  }
  return out;
}

std::vector<std::size_t>
box_offsets(std::size_t n)
{
  std::size_t side = n * n;
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < n; ++r)
  {
    for (std::size_t c = 0; c < n; ++c) out.push_back(r * side + c);
  }
  return out;
}

SudokuConstraints
sudoku_base_constraints(std::size_t n, CellEncoding encoding)
{
  std::size_t side = n * n;
  std::size_t count = side * side;
  SudokuConstraints out;

  std::vector<SExpr> specs;
  SExpr sort = encoding == CellEncoding::integer ? sym(":int") : sym(":" + digit_sort_name(n));
  for (std::size_t i = 0; i < count; ++i)
  {
    specs.push_back(sym(cell_var(i)));
    specs.push_back(sort);
  }
  out.specifiers = SExpr::list(std::move(specs));

  if (encoding == CellEncoding::integer)
  {
    for (std::size_t i = 0; i < count; ++i)
    {
      out.constraints.push_back(SExpr::list({sym("<="), SExpr::integer(1), sym(cell_var(i))}));
      out.constraints.push_back(
          SExpr::list({sym(">="), SExpr::integer(static_cast<long>(side)), sym(cell_var(i))}));
    }
  }

  auto distinct = [&](const std::vector<std::size_t>& idx) {
    if (idx.size() < 2) return;
    std::vector<SExpr> items{sym("distinct")};
    for (std::size_t i : idx) items.push_back(sym(cell_var(i)));
    out.constraints.push_back(SExpr::list(std::move(items)));
  };
  for (std::size_t r = 0; r < side; ++r)
  {
    std::vector<std::size_t> row;
    for (std::size_t c = 0; c < side; ++c) row.push_back(r * side + c);
    distinct(row);
  }
  for (std::size_t c = 0; c < side; ++c)
  {
    std::vector<std::size_t> col;
    for (std::size_t r = 0; r < side; ++r) col.push_back(r * side + c);
    distinct(col);
  }
  const std::vector<std::size_t> offsets = box_offsets(n);
  for (std::size_t start : box_starts(n))
  {
    std::vector<std::size_t> box;
    for (std::size_t off : offsets) box.push_back(start + off);
    distinct(box);
  }
  return out;
}

std::vector<SExpr>
input_grid_constraints(const SudokuGrid& grid)
{
  std::vector<SExpr> out;
  for (std::size_t i = 0; i < grid.cells.size(); ++i)
  {
    if (grid.cells[i])
    {
      out.push_back(SExpr::list({sym("="), sym(cell_var(i)), SExpr::integer(*grid.cells[i])}));
    }
  }
  return out;
}

void
assert_sudoku_base(Session& session, std::size_t n, CellEncoding encoding)
{
  if (n == 0) throw MalformedGrid("box dimension must be at least 1");
  if (encoding == CellEncoding::enumeration
      && !session.registry().find_user_sort(digit_sort_name(n)))
  {
    std::vector<SExpr> members;
    for (std::size_t v = 1; v <= n * n; ++v) members.push_back(SExpr::integer(static_cast<long>(v)));
    session.register_enum_sort(digit_sort_name(n), members);
  }
  SudokuConstraints base = sudoku_base_constraints(n, encoding);
  session.declare(base.specifiers);
  if (!base.constraints.empty()) session.assert_term_dynamic(conjunction(base.constraints));
}

SudokuOutcome
solve_grid(Session& session, const SudokuGrid& grid)
{
  ScopeGuard scope(session);
  std::vector<SExpr> given = input_grid_constraints(grid);
  if (!given.empty()) session.assert_term_dynamic(conjunction(std::move(given)));

  SudokuOutcome out{session.check_sat(), std::nullopt};
  if (!out.result.is_sat()) return out;

  std::vector<SExpr> vars;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) vars.push_back(sym(cell_var(i)));
  const Sort cell_sort = std::get<Sort>(session.env().lookup(cell_var(0)).signature);
  std::vector<std::optional<int>> cells;
  for (const auto& [_, raw] : session.get_value(vars))
  {
    HostValue v = decode_value(raw, cell_sort, session.registry());
    if (v.is<BigInt>())
    {
      cells.emplace_back(v.as<BigInt>().convert_to<int>());
    }
    else
    {
      cells.emplace_back(std::stoi(v.as<EnumMember>().label));
    }
  }
  out.solution = SudokuGrid(grid.n, std::move(cells));
  return out;
}

bool
verify_grid(const SudokuGrid& grid)
{
  if (!grid.filled()) return false;
  const std::size_t side = grid.side();
  auto permutation = [&](const std::vector<std::size_t>& idx) {
    std::vector<bool> seen(side + 1, false);
    for (std::size_t i : idx)
    {
      int v = *grid.cells[i];
      if (v < 1 || static_cast<std::size_t>(v) > side || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  };
  for (std::size_t k = 0; k < side; ++k)
  {
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
    for (std::size_t j = 0; j < side; ++j)
    {
      row.push_back(k * side + j);
      col.push_back(j * side + k);
    }
    if (!permutation(row) || !permutation(col)) return false;
  }
  const std::vector<std::size_t> offsets = box_offsets(grid.n);
  for (std::size_t start : box_starts(grid.n))
  {
    std::vector<std::size_t> box;
    for (std::size_t off : offsets) box.push_back(start + off);
    if (!permutation(box)) return false;
  }
  return true;
}

bool
check_unique(Session& session, const SudokuGrid& grid, const SudokuGrid& solution)
{
  ScopeGuard scope(session);
  std::vector<SExpr> given = input_grid_constraints(grid);
  if (!given.empty()) session.assert_term_dynamic(conjunction(std::move(given)));
  std::vector<SExpr> same = input_grid_constraints(solution);
  session.assert_term_dynamic(SExpr::list({sym("not"), conjunction(std::move(same))}));
  CheckResult r = session.check_sat();
  if (r.is_unknown()) throw SolverError("uniqueness check returned " + to_string(r));
  return r.is_unsat();
}

}  // namespace smtkit

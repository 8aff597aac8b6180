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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "etc_oracle.hpp"
#include "random_sexpr.hpp"
#include "smtkit/apps/etc.hpp"
#include "smtkit/apps/sudoku.hpp"
#include "smtkit/session.hpp"
#include "solvers.hpp"
#include "sudoku_oracle.hpp"

namespace smtkit {
namespace {

using Clock = std::chrono::steady_clock;

// Pinned budgets.
constexpr double k_fixture_seconds = 1.0;
constexpr double k_puzzle_seconds = 2.0;
constexpr double k_incremental_speedup = 2.0;
constexpr int k_random_small_puzzles = 50;
constexpr int k_soundness_sets = 200;
constexpr int k_roundtrip_values = 1000;
constexpr std::size_t k_frames = 100;
constexpr std::size_t k_perf_size = 200;
constexpr std::size_t k_outside_margin = 100;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict
{
  bool pass = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what)
  {
    if (!ok)
    {
      pass = false;
      notes << " [failed: " << what << "]";
    }
  }
};

SessionConfig z3() { return testing::z3_config(); }

/* 1 */
void conjunction_fixture(Verdict& v)
{
  auto run = [&](const SessionConfig& config, const std::string& label) {
    auto start = Clock::now();
    Session s(config);
    s.assert_term("(x :bool y :int)", "(and x (>= y 5))");
    CheckResult r = s.check_sat();
    v.require(r.is_sat(), label + " sat");
    if (!r.is_sat()) return;
    auto a = s.assignment();
    HostValue x = s.eval("x");
    BigInt y = s.eval("y").as<BigInt>();
    s.close();
    double t = seconds_since(start);
    v.require(x == HostValue::boolean(true), label + " x = true");
    v.require(y >= 5, label + " y >= 5");
    v.require(t < k_fixture_seconds, label + " runtime");
    v.notes << " " << label << ": " << print(assignment_form(a)) << " in " << t << "s";
    if (label == "z3") v.notes << (y == 5 ? " (y = 5 as expected)" : " (y != 5, not required)");
  };
  run(z3(), "z3");
  if (auto c = testing::cvc5_config()) run(*c, "cvc5");
  else v.notes << " cvc5: unavailable";
}

/* 2 */
void sum_fixture(Verdict& v)
{
  auto run = [&](const SessionConfig& config, const std::string& label) {
    auto start = Clock::now();
    Session s(config);
    s.assert_term("(x :int y :int)", "(= (+ x y) 10)");
    CheckResult r = s.check_sat();
    v.require(r.is_sat(), label + " sat");
    if (!r.is_sat()) return;
    BigInt x = s.eval("x").as<BigInt>();
    BigInt y = s.eval("y").as<BigInt>();
    s.close();
    double t = seconds_since(start);
    v.require(x + y == 10, label + " x + y = 10");
    v.require(t < k_fixture_seconds, label + " runtime");
    v.notes << " " << label << ": x=" << x << " y=" << y << " in " << t << "s";
  };
  run(z3(), "z3");
  if (auto c = testing::cvc5_config()) run(*c, "cvc5");
  else v.notes << " cvc5: unavailable";
}

/* 3 */
void divergence_fixture(Verdict& v)
{
  SExpr form = parse_one("(not (= (+ x y) y))");
  SExpr specs = parse_one("(x :bool y :int)");
  {
    Session s(z3());
    s.assert_unchecked(form, specs);
    CheckResult r = s.check_sat();
    v.require(r.is_sat(), "z3 sat");
    v.notes << " z3: " << to_string(r);
  }
  auto c = testing::cvc5_config();
  v.require(c.has_value(), "cvc5 available");
  if (!c) return;
  Session s(*c);
  try
  {
    s.assert_unchecked(form, specs);
    v.require(false, "cvc5 SolverError");
  }
  catch (const SolverError& e)
  {
    v.notes << " cvc5: SolverError (" << e.what() << ")";
  }
}

/* 4 */
void stored_puzzles(Verdict& v)
{
  Session s(z3());
  assert_sudoku_base(s, 3);
  int solved = 0;
  double worst = 0;
  for (int i = 1; i <= 6; ++i)
  {
    char name[64];
    std::snprintf(name, sizeof name, "%s/data/sudoku/puzzle%02d.txt", SMTKIT_SOURCE_DIR, i);
    SudokuGrid puzzle = SudokuGrid::load(name);
    auto start = Clock::now();
    SudokuOutcome out = solve_grid(s, puzzle);
    double t = seconds_since(start);
    worst = std::max(worst, t);
    std::string tag = "puzzle" + std::to_string(i);
    v.require(out.result.is_sat(), tag + " sat");
    if (!out.solution) continue;
    v.require(t < k_puzzle_seconds, tag + " runtime " + std::to_string(t));
    v.require(verify_grid(*out.solution), tag + " verify");
    for (std::size_t k = 0; k < puzzle.cells.size(); ++k)
    {
      if (puzzle.cells[k]) v.require(out.solution->cells[k] == puzzle.cells[k], tag + " givens");
    }
    v.require(check_unique(s, puzzle, *out.solution), tag + " unique");
    ++solved;
  }
  v.require(s.depth() == 1, "depth 1 after all puzzles");
  v.notes << " " << solved << "/6 solved, unique and verified; slowest solve " << worst
          << "s; final depth " << s.depth();
}

/* 5 */
void small_puzzle_oracle(Verdict& v)
{
  Session s(z3());
  assert_sudoku_base(s, 2);
  std::mt19937 rng(2026);
  int mismatches = 0;
  int by_count[3] = {0, 0, 0};
  for (int i = 0; i < k_random_small_puzzles; ++i)
  {
    SudokuGrid puzzle = testing::random_small_puzzle(rng, static_cast<std::size_t>(i));
    testing::SudokuOracle oracle(puzzle);
    std::size_t solutions = oracle.count(2);
    ++by_count[solutions];
    SudokuOutcome out = solve_grid(s, puzzle);
    bool ok = solutions == 0 ? out.result.is_unsat() : out.result.is_sat();
    if (ok && solutions == 1) ok = *out.solution == testing::grid_from(2, *oracle.first());
    if (ok && solutions == 2) ok = verify_grid(*out.solution);
    mismatches += !ok;
  }
  v.require(mismatches == 0, "oracle agreement");
  v.notes << " " << mismatches << " mismatches over " << k_random_small_puzzles
          << " puzzles (" << by_count[0] << " unsat, " << by_count[1] << " unique, "
          << by_count[2] << " ambiguous)";
}

/* 6 */
class FormGenerator
{
 public:
  FormGenerator(std::mt19937& rng, std::vector<std::pair<std::string, int>> vars)
      : d_rng(rng), d_vars(std::move(vars))
  {
  }

  // sort: 0 Bool, 1 Int, 2 BitVec 8
  std::string term(int sort, int depth)
  {
    if (depth == 0 || pick(4) == 0) return leaf(sort);
    auto b = [&] { return term(0, depth - 1); };
    auto i = [&] { return term(1, depth - 1); };
    auto w = [&] { return term(2, depth - 1); };
    switch (sort)
    {
      case 0:
        switch (pick(12))
        {
          case 0: return "(not " + b() + ")";
          case 1: return "(and " + b() + " " + b() + ")";
          case 2: return "(or " + b() + " " + b() + ")";
          case 3: return "(=> " + b() + " " + b() + ")";
          case 4: return "(xor " + b() + " " + b() + ")";
          case 5: return "(= " + i() + " " + i() + ")";
          case 6: return "(<= " + i() + " " + i() + ")";
          case 7: return "(< " + i() + " " + i() + ")";
          case 8: return "(distinct " + i() + " " + i() + ")";
          case 9: return "(= " + w() + " " + w() + ")";
          case 10: return "(bvult " + w() + " " + w() + ")";
          default: return "(ite " + b() + " " + b() + " " + b() + ")";
        }
      case 1:
        switch (pick(6))
        {
          case 0: return "(+ " + i() + " " + i() + ")";
          case 1: return "(- " + i() + " " + i() + ")";
          case 2: return "(* " + std::to_string(pick(7) - 3) + " " + i() + ")";
          case 3: return "(ite " + b() + " " + i() + " " + i() + ")";
          case 4: return "(mod " + i() + " 3)";
          default: return "(abs " + i() + ")";
        }
      default:
        switch (pick(6))
        {
          case 0: return "(bvadd " + w() + " " + w() + ")";
          case 1: return "(bvand " + w() + " " + w() + ")";
          case 2: return "(bvor " + w() + " " + w() + ")";
          case 3: return "(bvxor " + w() + " " + w() + ")";
          case 4: return "(bvnot " + w() + ")";
          default: return "(ite " + b() + " " + w() + " " + w() + ")";
        }
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(d_rng); }

  std::string leaf(int sort)
  {
    std::vector<std::string> names;
    for (const auto& [name, s] : d_vars)
    {
      if (s == sort) names.push_back(name);
    }
    if (!names.empty() && pick(3) != 0) return names[static_cast<std::size_t>(pick(static_cast<int>(names.size())))];
    if (sort == 0) return pick(2) ? "true" : "false";
    if (sort == 1)
    {
      int k = pick(21) - 10;
      return k < 0 ? "(- " + std::to_string(-k) + ")" : std::to_string(k);
    }
    return print(SExpr::bitvec(8, pick(256)));
  }

  std::mt19937& d_rng;
  std::vector<std::pair<std::string, int>> d_vars;
};

void model_soundness(Verdict& v)
{
  auto run = [&](const SessionConfig& config, const std::string& label) {
    Session s(config);
    std::mt19937 rng(6);
    static const char* specs[] = {":bool", ":int", "(:bitvec 8)"};
    int sat = 0, unsat = 0, unknown = 0, violations = 0;
    for (int set = 0; set < k_soundness_sets; ++set)
    {
      s.push();
      std::vector<std::pair<std::string, int>> vars;
      std::string decl = "(";
      int nvars = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < nvars; ++k)
      {
        int sort = static_cast<int>(rng() % 3);
        std::string name = "v" + std::to_string(k);
        vars.emplace_back(name, sort);
        decl += name + " " + specs[sort] + " ";
      }
      s.declare(decl + ")");
      FormGenerator gen(rng, vars);
      std::vector<SExpr> forms;
      int nforms = 1 + static_cast<int>(rng() % 8);
      for (int k = 0; k < nforms; ++k)
      {
        forms.push_back(parse_one(gen.term(0, 3)));
        s.assert_term_dynamic(forms.back());
      }
      CheckResult r = s.check_sat();
      if (r.is_sat())
      {
        ++sat;
        for (const auto& [form, value] : s.get_value(forms))
        {
          if (!value.is_symbol("true"))
          {
            ++violations;
            v.notes << " " << label << " violated: " << print(form) << " = " << print(value);
          }
        }
      }
      else if (r.is_unsat())
      {
        ++unsat;
      }
      else
      {
        ++unknown;
      }
      s.pop();
    }
    v.require(violations == 0, label + " soundness");
    v.notes << " " << label << ": " << sat << " sat / " << unsat << " unsat / " << unknown
            << " unknown, " << violations << " violations;";
  };
  run(z3(), "z3");
  auto c = testing::cvc5_config();
  v.require(c.has_value(), "cvc5 available");
  if (c) run(*c, "cvc5");
}

/* 7 */
void scope_semantics(Verdict& v)
{
  Session s(z3());
  s.push();
  s.declare("(q :int)");
  s.assert_term("(= q 4)");
  v.require(s.check_sat().is_sat(), "inner sat");
  s.pop();
  s.declare("(q :bool)");
  s.assert_term("q");
  CheckResult r = s.check_sat();
  v.require(r.is_sat() && s.eval("q") == HostValue::boolean(true), "q redeclared as Bool");
  try
  {
    s.declare("(q :int)");
    v.require(false, "ConflictingDeclaration at same level");
  }
  catch (const ConflictingDeclaration&)
  {
    v.notes << " redeclare q Bool after pop accepted; q Int at same level rejected";
  }
  try
  {
    s.pop();
    v.require(false, "PopOnBaseLevel");
  }
  catch (const PopOnBaseLevel&)
  {
  }
  v.require(s.depth() == 1, "depth 1");
}

/* 8 */
void datatypes(Verdict& v)
{
  auto run = [&](const SessionConfig& config, const std::string& label) {
    Session s(config);
    std::vector<SExpr> digits;
    for (int i = 1; i <= 9; ++i) digits.push_back(num(i));
    s.register_enum_sort("square", digits);
    s.register_tuple_sort("person", {{"age", sym(":int")}, {"name", sym(":string")}});
    s.assert_term("(c :square d :square p :person)",
                  "(and (= c 7) (distinct d 1 2 3 4 5 6 7 8) "
                  "(= (person.age p) 42) (= (person.name p) \"Ada\"))");
    v.require(s.check_sat().is_sat(), label + " sat");
    HostValue c = s.eval("c");
    HostValue d = s.eval("d");
    HostValue p = s.eval("p");
    v.require(c == HostValue{EnumMember{"SQUARE", "7"}}, label + " c");
    v.require(d == HostValue{EnumMember{"SQUARE", "9"}}, label + " d");
    TupleValue want{"PERSON", {{"age", HostValue::integer(42)}, {"name", HostValue::text("Ada")}}};
    v.require(p == HostValue{want}, label + " p");
    v.notes << " " << label << ": c=" << c << " d=" << d << " p=" << p << ";";
  };
  run(z3(), "z3");
  if (auto c = testing::cvc5_config()) run(*c, "cvc5");
}

/* 9 */
void etc_generator(Verdict& v)
{
  ElementCatalog catalog =
      ElementCatalog::load(std::string(SMTKIT_SOURCE_DIR) + "/data/catalogs/probe_request.sexp");
  std::set<std::size_t> feasible = testing::feasible_sizes(catalog);
  std::size_t lo = *feasible.begin();
  std::size_t hi = *feasible.rbegin();

  Session s(z3());
  int wrong = 0;
  std::size_t sat_sizes = 0;
  for (std::size_t size = 0; size <= hi + k_outside_margin; ++size)
  {
    GenerateOutcome out = generate(s, catalog, size, 2, size);
    bool expect = feasible.count(size) > 0;
    bool ok = expect ? out.result.is_sat() && out.frames.size() == 2 : out.result.is_unsat();
    for (const Frame& f : out.frames) ok = ok && f.size() == size;
    if (!ok)
    {
      ++wrong;
      if (wrong <= 5) v.notes << " size " << size << ": " << to_string(out.result);
    }
    sat_sizes += out.result.is_sat();
  }
  v.require(wrong == 0, "range agreement");
  v.require(s.depth() == 1, "depth 1");
  v.notes << " oracle range " << lo << ".." << hi << " (" << feasible.size()
          << " sizes, contiguous: " << (feasible.size() == hi - lo + 1 ? "yes" : "no")
          << "); checked 0.." << hi + k_outside_margin << ", " << sat_sizes << " SAT, " << wrong
          << " disagreements;";

  auto start = Clock::now();
  GenerateOutcome incremental = generate(s, catalog, k_perf_size, k_frames, 1);
  double t_incremental = seconds_since(start);
  v.require(incremental.frames.size() == k_frames, "incremental frame count");

  start = Clock::now();
  std::size_t fresh_frames = 0;
  for (std::size_t i = 0; i < k_frames; ++i)
  {
    Session fresh(z3());
    LayoutOutcome out = solve_layout(fresh, catalog, k_perf_size);
    if (out.layout)
    {
      Frame f = fill_layout(catalog, *out.layout, i);
      fresh_frames += f.size() == k_perf_size;
    }
  }
  double t_fresh = seconds_since(start);
  v.require(fresh_frames == k_frames, "fresh frame count");
  double speedup = t_fresh / t_incremental;
  v.require(speedup >= k_incremental_speedup, "speedup");
  v.notes << " " << k_frames << " frames at " << k_perf_size << " bytes: incremental "
          << t_incremental << "s, fresh sessions " << t_fresh << "s, speedup " << speedup << "x";
}

/* 10 */
void parser_laws(Verdict& v)
{
  std::mt19937_64 rng(10);
  int failures = 0;
  for (int i = 0; i < k_roundtrip_values; ++i)
  {
    SExpr value = testing::random_sexpr(rng, 4);
    try
    {
      if (!(parse_one(print(value)) == value)) ++failures;
    }
    catch (const Error&)
    {
      ++failures;
    }
  }
  v.require(failures == 0, "random round trips");
  v.notes << " " << k_roundtrip_values - failures << "/" << k_roundtrip_values
          << " random values round-trip;";

  auto check_text = [&](const std::string& text, const std::string& label) {
    SExpr m = parse_one(text);
    SExpr again = parse_one(print(m));
    v.require(again == m, label + " reparse");
    v.require(parse_one(print(again)) == again, label + " reprint");
    v.notes << " " << label << " model (" << m.size() << " entries) ok;";
  };
  std::ifstream in(std::string(SMTKIT_SOURCE_DIR) + "/data/fixtures/z3_model.txt");
  std::stringstream stored;
  stored << in.rdbuf();
  check_text(stored.str(), "stored z3");

  std::string cmd = "z3 " + std::string(SMTKIT_SOURCE_DIR) + "/data/fixtures/z3_model_query.smt2";
  FILE* p = ::popen(cmd.c_str(), "r");
  std::string live;
  char buf[4096];
  std::size_t n;
  while (p != nullptr && (n = std::fread(buf, 1, sizeof buf, p)) > 0) live.append(buf, n);
  if (p != nullptr) ::pclose(p);
  auto forms = parse(live);
  v.require(forms.size() == 2 && forms[0].is_symbol("sat"), "live z3 capture");
  if (forms.size() == 2) check_text(live.substr(live.find('(')), "live z3");
}

}  // namespace
}  // namespace smtkit

int main()
{
  using namespace smtkit;
  if (!testing::z3_available())
  {
    std::cout << "FAIL all: z3 not found on the search path\n";
    return 1;
  }
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"conjunction fixture", conjunction_fixture},
      {"sum fixture", sum_fixture},
      {"unchecked divergence", divergence_fixture},
      {"stored sudoku puzzles", stored_puzzles},
      {"4x4 oracle equivalence", small_puzzle_oracle},
      {"model soundness", model_soundness},
      {"scope semantics", scope_semantics},
      {"datatype round trip", datatypes},
      {"frame generator", etc_generator},
      {"parser laws", parser_laws},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    Verdict v;
    try
    {
      criteria[i].second(v);
    }
    catch (const std::exception& e)
    {
      v.pass = false;
      v.notes << " [exception: " << e.what() << "]";
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ":"
              << v.notes.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

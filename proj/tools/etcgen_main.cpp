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

// Generates frames of an exact byte size from an element catalog, one hex
// line per frame.
//
// Exit status: 0 frames written, 2 size infeasible, 3 solver gave up, 1 error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "smtkit/apps/etc.hpp"

int
main(int argc, char** argv)
{
  CLI::App app{"Generate size-constrained frames from an element catalog"};
  std::string path;
  std::size_t size = 0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string solver;
  app.add_option("catalog", path, "catalog file")->required();
  app.add_option("--size", size, "frame size in bytes")->required();
  app.add_option("--count", count, "number of frames")->required();
  app.add_option("--seed", seed, "base seed for body contents");
  app.add_option("--out", out_path, "output file (default: standard output)");
  app.add_option("--solver", solver, "solver command line (default: $SMT_SOLVER_PATH or z3 -in)");
  CLI11_PARSE(app, argc, argv);

  try
  {
    auto catalog = smtkit::ElementCatalog::load(path);
    smtkit::SessionConfig config;
    config.solver_flag = solver;
    smtkit::Session session(config);
    smtkit::GenerateOutcome out = smtkit::generate(session, catalog, size, count, seed);
    if (!out.result.is_sat())
    {
      std::cerr << "etcgen: " << smtkit::to_string(out.result) << " for size " << size << "\n";
      return out.result.is_unsat() ? 2 : 3;
    }

    std::ofstream file;
    if (!out_path.empty())
    {
      file.open(out_path);
      if (!file) throw std::runtime_error("cannot write " + out_path);
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    for (const smtkit::Frame& f : out.frames) os << smtkit::to_hex(f) << "\n";
    return 0;
  }
  catch (const std::exception& e)
  {
    std::cerr << "etcgen: " << e.what() << "\n";
    return 1;
  }
}

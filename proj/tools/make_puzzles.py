#!/usr/bin/env python3
# Copyright 2026 The smtkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes 9x9 puzzles with unique solutions to data/sudoku/.

A random full grid is built by backtracking, then clues are removed in random
order as long as the solution stays unique.
"""

import argparse
import pathlib
import random

N = 3
SIDE = N * N


def candidates(grid, i):
    r, c = divmod(i, SIDE)
    used = set(grid[r * SIDE:(r + 1) * SIDE])
    used.update(grid[c::SIDE])
    br, bc = r // N * N, c // N * N
    for dr in range(N):
        used.update(grid[(br + dr) * SIDE + bc:(br + dr) * SIDE + bc + N])
    return [v for v in range(1, SIDE + 1) if v not in used]


def count_solutions(grid, limit=2):
    best, best_cands = None, None
    for i, v in enumerate(grid):
        if v == 0:
            cands = candidates(grid, i)
            if best is None or len(cands) < len(best_cands):
                best, best_cands = i, cands
                if len(cands) <= 1:
                    break
    if best is None:
        return 1
    total = 0
    for v in best_cands:
        grid[best] = v
        total += count_solutions(grid, limit - total)
        grid[best] = 0
        if total >= limit:
            break
    return total


def fill(grid, rng):
    try:
        i = grid.index(0)
    except ValueError:
        return True
    cands = candidates(grid, i)
    rng.shuffle(cands)
    for v in cands:
        grid[i] = v
        if fill(grid, rng):
            return True
    grid[i] = 0
    return False


def make_puzzle(rng):
    grid = [0] * (SIDE * SIDE)
    fill(grid, rng)
    order = list(range(SIDE * SIDE))
    rng.shuffle(order)
    for i in order:
        keep = grid[i]
        grid[i] = 0
        if count_solutions(grid[:]) != 1:
            grid[i] = keep
    return grid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=6)
    ap.add_argument("--seed", type=int, default=2026)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).parent.parent / "data" / "sudoku"))
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k in range(args.count):
        grid = make_puzzle(rng)
        rows = [" ".join(str(v) if v else "_" for v in grid[r * SIDE:(r + 1) * SIDE])
                for r in range(SIDE)]
        (out / ("puzzle%02d.txt" % (k + 1))).write_text("\n".join(rows) + "\n")


if __name__ == "__main__":
    main()

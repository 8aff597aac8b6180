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

"""Line-oriented SMT-LIB2 front end over the cvc5 Python bindings.

Stands in for a cvc5 executable where only the Python package is installed.
Each input line must hold complete commands, which is how the session
library writes them.
"""

import sys

import cvc5


def main():
    tm = cvc5.TermManager()
    solver = cvc5.Solver(tm)
    symbols = cvc5.SymbolManager(tm)
    for line in sys.stdin:
        if not line.strip():
            continue
        parser = cvc5.InputParser(solver, symbols)
        parser.setStringInput(cvc5.InputLanguage.SMT_LIB_2_6, line, "stdin")
        while True:
            try:
                cmd = parser.nextCommand()
                if cmd.isNull():
                    break
                out = cmd.invoke(solver, symbols)
            except Exception as e:  # parse or solver error
                msg = str(e).strip().replace('"', '""')
                sys.stdout.write('(error "%s")\n' % msg)
                sys.stdout.flush()
                break
            if out:
                sys.stdout.write(out if out.endswith("\n") else out + "\n")
                sys.stdout.flush()
            if str(cmd).strip() == "(exit)":
                return


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
# Minimal stand-in solver: answers sat with irrational (root-obj) values
# unless a symbol is pinned by an extra (= |s| c) assertion. Pinning to zero
# is answered unsat.
import re
import sys

declared = []
pins = []
for line in sys.stdin:
    line = line.strip()
    if line.startswith("(echo"):
        print(line.split('"')[1], flush=True)
    elif line.startswith("(reset"):
        declared, pins = [], []
    elif line.startswith("(declare-const"):
        declared.append(line.split()[1])
    elif line.startswith("(assert (= |"):
        pins.append(line)
    elif line == "(check-sat)":
        zero = any(re.search(r"\(/ 0\.0 1\.0\)\)\)$", p) for p in pins)
        print("unsat" if zero else "sat", flush=True)
    elif line == "(get-model)":
        if pins:
            value = re.search(r"(\(- )?\(/ [0-9.]+ [0-9.]+\)\)?\)\)$", pins[0]).group(0)[:-2]
        else:
            value = "(root-obj (+ (^ x 2) (- 2)) 1)"
        print("(")
        for d in declared:
            print("  (define-fun %s () Real %s)" % (d, value))
        print(")", flush=True)
    elif line.startswith("(exit"):
        break

#!/usr/bin/env python3
"""Print the a4-group and a4-commutator algebra files.

Elements are the even permutations of {0,1,2,3} in lexicographic order of
their one-line notation, so element 0 is the identity. mul(a, b) is the
composition i -> a(b(i)), and comm(x, y) = ((x^-1 * y^-1) * x) * y.

Usage: gen_a4.py group|commutator
"""

import itertools
import sys


def parity(p):
    inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inv % 2


def main():
    which = sys.argv[1] if len(sys.argv) > 1 else "group"
    elems = [p for p in itertools.permutations(range(4)) if parity(p) == 0]
    index = {p: i for i, p in enumerate(elems)}
    m = len(elems)

    def mul(a, b):
        pa, pb = elems[a], elems[b]
        return index[tuple(pa[pb[i]] for i in range(4))]

    def inv(a):
        pa = elems[a]
        out = [0] * 4
        for i, v in enumerate(pa):
            out[v] = i
        return index[tuple(out)]

    def comm(x, y):
        return mul(mul(mul(inv(x), inv(y)), x), y)

    name = "a4-group" if which == "group" else "a4-commutator"
    lines = [f"# alternating group A4; element i is the i-th even permutation",
             f"# of 0123 in lexicographic order (0 is the identity)",
             f"algebra {name}", f"size {m}", "op mul 2"]
    for a in range(m):
        lines.append(" ".join(str(mul(a, b)) for b in range(m)))
    lines.append("op inv 1")
    lines.append(" ".join(str(inv(a)) for a in range(m)))
    lines.append("op e 0")
    lines.append("0")
    if which != "group":
        lines.append("op comm 2")
        for a in range(m):
            lines.append(" ".join(str(comm(a, b)) for b in range(m)))
    print("\n".join(lines))


if __name__ == "__main__":
    main()

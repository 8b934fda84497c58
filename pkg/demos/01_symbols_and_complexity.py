#!/usr/bin/env python3
"""A tour of the surjection-symbol basis and the complexity filtration.

The arity-k operation spaces are spanned by symbols

    {1,...,k}  <--f--  [q]  --phi-->  [r]

with f onto, phi order-preserving and hitting {1,...,r}, and no position
where f and phi repeat together.  The complexity of f measures how much the
fibers interleave; bounding it carves out the suboperads that model n-fold
loop-space structure.
"""

from chainops.boxprod import complexity, enumerate_symbols

print("Complexity counts adjacent changes of two-valued subsequences:")
for seq in [(1, 1, 2, 2, 2, 1, 2, 2, 1, 1, 2), (1, 2, 3, 1, 3, 2, 1, 2),
            (1, 1, 1), (1, 2)]:
    print("  %-28s -> %d" % ("".join(map(str, seq)), complexity(seq)))

print()
print("Symbols at arity 2, q = 1, level 0 (the two cup-like generators):")
for s in enumerate_symbols(2, 1, 0):
    print("  f=%s phi=%s  degree %d" % (s.f, s.phi, s.total_degree))

print()
print("The filtration is strict: q = 2, level 0 needs complexity 2")
for n in (1, 2):
    syms = enumerate_symbols(2, 2, 0, n)
    print("  complexity <= %d: %d symbols %s"
          % (n, len(syms), [("".join(map(str, s.f))) for s in syms]))

print()
print("Counts per (q, r) for arity 2, q <= 4:")
for q in range(1, 5):
    row = []
    for r in range(q + 2):
        row.append(len(enumerate_symbols(2, q, r)))
    print("  q=%d: %s" % (q, row))

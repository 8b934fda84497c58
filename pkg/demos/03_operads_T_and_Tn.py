#!/usr/bin/env python3
"""Building the chain operads, composing symbols, and computing homology.

The full operad has weakly contractible arities; bounding the complexity at
n cuts out a suboperad whose arity-2 homology matches the configuration
space of n-cubes: two points for n = 1, a circle for n = 2.
"""

from chainops.boxprod import Symbol
from chainops.operads import (TruncatedChainOperad, operad_homology,
                              verify_operad_axioms)

op = TruncatedChainOperad(None, 2, 4)

print("The unit is the identity family (one top symbol per level):")
unit = op.unit()
print("  ", sorted(unit)[:3], "...")

a = {Symbol(2, (1, 2), (0, 0), 0): 1}
b = {Symbol(2, (2, 1), (0, 0), 0): 1}
print()
print("Composing the two degree-0 generators of arity 2:")
print("  gamma(f=12; f=12, 1) =", op.gamma(a, [a, unit]))
print("  gamma(f=12; f=21, 1) =", op.gamma(a, [b, unit]))
print("  gamma(f=12; 1, f=12) =", op.gamma(a, [unit, a]))

print()
print("Axiom suite on the truncated window (seeded, replayable):")
rep = verify_operad_axioms(op, seed=1, exhaustive_cap=30, samples=20)
for name, item in sorted(rep.items.items()):
    print("  %-44s %5d instances %s" %
          (name, item.instances, "ok" if not item.failures else "FAIL"))

print()
print("Homology of the truncated arities (level-quotient, stabilized):")
for n, label in ((None, "full operad"), (1, "complexity <= 1"),
                 (2, "complexity <= 2")):
    rep = operad_homology(2, n, (0, 1, 2), 4)
    print("  %-16s arity 2: %s" % (label, rep.groups))

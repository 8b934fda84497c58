#!/usr/bin/env python3
"""The cochain operations on a simplicial set, and the identity verifier.

The cup product shares the middle vertex, the join product skips it, and
the general fiberwise operation multiplies evaluations on the fibers of
a function to {1,...,k}.  All their interrelations are checked mechanically
on every basis cochain.
"""

from chainops.cochain_ops import AugmentedCochainSystem, verify_identities
from chainops.simplicial import standard_simplex_sset

W = standard_simplex_sset(2)
sys_ = AugmentedCochainSystem(W, 4)

v0, v1 = sys_.dual("0"), sys_.dual("1")
e01 = sys_.dual("0.1")
top = sys_.dual("0.1.2")

print("On the standard 2-simplex:")
print("  v0* cup v0*      =", dict(sys_.cup(v0, v0).values))
print("  v0* cup e01*     =", dict(sys_.cup(v0, e01).values))
print("  e01* cup v1*     =", dict(sys_.cup(e01, v1).values))
print("  v0* join v1*     =", dict(sys_.sqcup(v0, v1).values))

print()
print("A fiberwise operation with interleaved fibers f = (1,2,1):")
out = sys_.angle((1, 2, 1), [e01, v1])
print("  <f>(e01*, v1*) =", dict(out.values))

print()
print("Identity suite (every relation, all basis cochains):")
rep = verify_identities(W, name="2-simplex")
for name, item in sorted(rep.items.items()):
    print("  %-48s %6d instances %s" %
          (name, item.instances, "ok" if not item.failures else "FAIL"))

#!/usr/bin/env python3
"""Hochschild cohomology with its product and bracket, certificate included.

For the dual numbers in characteristic two every cohomology group has
dimension two (the periodic resolution has vanishing differentials); the
report then certifies graded commutativity, the Jacobi identity, and the
derivation property with explicit cobounding cochains.
"""

from chainops.hochschild import (dual_numbers_mod2, gerstenhaber_report,
                                 hochschild_cohomology, integers,
                                 upper_triangular_mod2)

for R in (integers(), dual_numbers_mod2(), upper_triangular_mod2()):
    print("algebra %s (rank %d, %s):" %
          (R.name, R.n, "Z" if not R.prime else "Z/%d" % R.prime))
    groups = hochschild_cohomology(R, 3)
    for p in range(4):
        betti, torsion = groups[p]
        print("  H^%d: %d%s" % (p, betti, "  torsion %s" % (torsion,)
                                if torsion else ""))
    rep = gerstenhaber_report(R, p_max=3)
    print("  structure report: %s, %d certificates" %
          ("all identities hold" if rep.passed else "FAILURES",
           len(rep.certificates)))
    print()

#!/usr/bin/env python3
"""Conormalizing the dual of a simplicial set, two ways, with a certificate.

The kernel form intersects the kernels of the codegeneracies; the cokernel
form quotients by the positive cofaces.  Both land on one group per
nondegenerate simplex, and compare_conormalizations produces explicit
mutually inverse chain maps between them.
"""

from chainops.cosimplicial import (compare_conormalizations,
                                   conormalize_cokernel, conormalize_kernel)
from chainops.simplicial import simplicial_circle, standard_simplex_sset

for W, name in ((standard_simplex_sset(2), "standard 2-simplex"),
                (simplicial_circle(), "circle (1 vertex, 1 edge)")):
    cap = W.max_dim() + 2
    A = W.dual_cosimplicial(cap)
    print("%s: levels carry all simplices, degenerate included" % name)
    print("  level ranks:", [A.rank(m) for m in range(cap + 1)])
    kres = conormalize_kernel(A)
    cres = conormalize_cokernel(A)
    print("  conormalized ranks (kernel form):  ",
          [kres.complex.rank(-m) for m in range(cap + 1)])
    print("  conormalized ranks (cokernel form):",
          [cres.complex.rank(-m) for m in range(cap + 1)])
    print("  nondegenerate simplex counts:      ",
          [len(W.nondegenerate(m)) for m in range(cap + 1)])
    cert = compare_conormalizations(A, kres, cres)
    print("  isomorphism certificate verified through level", cert.levels)
    hom = {m: kres.complex.homology(-m) for m in range(W.max_dim() + 1)}
    print("  cohomology (rank, torsion):", hom)
    print()

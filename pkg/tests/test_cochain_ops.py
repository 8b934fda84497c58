import pytest

from chainops.cochain_ops import (AugmentedCochainSystem, LevelMismatch,
                                  sampled_decomposition_check, verify_identities)
from chainops.simplicial import (Cell, simplicial_circle, standard_simplex_sset)


@pytest.fixture(scope="module")
def d1():
    return AugmentedCochainSystem(standard_simplex_sset(1), 4)


@pytest.fixture(scope="module")
def d2():
    return AugmentedCochainSystem(standard_simplex_sset(2), 5)


def test_restrict_examples(d2):
    W = d2.W
    top = W.cell("0.1.2")
    assert d2.restrict(top, (0, 2)) == Cell((), "0.2")
    assert d2.restrict(top, (0, 1, 2)) == top
    e = W.cell("0.1")
    assert d2.restrict(e, (0,)) == Cell((), "0")
    assert d2.restrict(e, ()) == ()


def test_cup_on_zero_cochains(d1):
    # (x cup y)(v) = x(v) y(v) pointwise in degree zero
    x = d1.dual("0")
    y = d1.dual("1")
    assert d1.cup(x, x) == x
    assert d1.cup(x, y).values == ()


def test_cup_direct_evaluations(d1):
    W = d1.W
    v0, v1, e = d1.dual("0"), d1.dual("1"), d1.dual("0.1")
    edge = W.cell("0.1")
    assert d1.cup(v0, e).value(edge) == 1
    assert d1.cup(v1, e).value(edge) == 0
    assert d1.cup(e, v1).value(edge) == 1


def test_cup_associative_on_basis(d2):
    basis = [d2.dual(n) for m in range(3) for n in d2.W.nondegenerate(m)]
    for x in basis:
        for y in basis:
            for z in basis:
                if x.level + y.level + z.level > 2:
                    continue
                assert d2.cup(d2.cup(x, y), z) == d2.cup(x, d2.cup(y, z))


def test_sqcup_direct_evaluations(d1):
    W = d1.W
    v0, v1 = d1.dual("0"), d1.dual("1")
    edge = W.cell("0.1")
    assert d1.sqcup(v0, v1).value(edge) == 1
    assert d1.sqcup(v1, v0).value(edge) == 0


def test_angle_level_mismatch(d1):
    with pytest.raises(LevelMismatch):
        d1.angle((1, 2), [d1.dual("0.1"), d1.dual("0")])


def test_identities_on_standard_simplices_and_circle():
    for W, name in [(standard_simplex_sset(2), "simplex2"),
                    (simplicial_circle(), "circle")]:
        rep = verify_identities(W, name=name)
        assert rep.passed, rep.to_dict()
        totals = sum(it.instances for it in rep.items.values())
        assert totals > 500


def test_corrupted_angle_fails_naturality():
    # dropping the fiber restriction (using an initial segment instead)
    W = standard_simplex_sset(2)
    sys_ = AugmentedCochainSystem(W, 4)

    def corrupt_angle(f, xs):
        from chainops.cochain_ops import CochainElement
        if not f:
            return sys_.angle(f, xs)
        k = len(xs)
        m = len(f) - 1
        fibers = [tuple(t for t, v in enumerate(f) if v == i + 1)
                  for i in range(k)]
        out = {}
        for cell in sys_.cells(m):
            prod = 1
            offset = 0
            for fib, x in zip(fibers, xs):
                seg = tuple(range(offset, offset + len(fib)))
                offset += len(fib)
                prod *= x.value(sys_.restrict(cell, seg))
                if not prod:
                    break
            if prod:
                out[cell] = prod
        return CochainElement.make(m, out)

    rep = verify_identities(W, level_cap=3, name="corrupt",
                            angle_impl=corrupt_angle)
    assert not rep.passed
    assert rep.items["naturality of fiberwise operations (k=2)"].failures


def test_sampled_decomposition():
    assert sampled_decomposition_check(standard_simplex_sset(2), seed=3,
                                       max_level=5, samples=40) == 40

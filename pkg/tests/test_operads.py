import random

import pytest

from chainops import boxprod
from chainops.boxprod import Symbol, enumerate_symbols, ker_expand
from chainops.operads import (NotStabilized, TruncatedChainOperad,
                              UnsupportedInstance, act_perm_vec, boundary_vec,
                              block_permutation, gamma_matrix,
                              gamma_substitution, level_truncated_complex,
                              little_cubes_comparison, operad_homology,
                              symbol_complex, vec_degree, vec_eq,
                              verify_operad_axioms)


def sym_vec(k, f, phi, r):
    return {Symbol(k, tuple(f), tuple(phi), r): 1}


def test_unit_is_a_cycle():
    # the identity family is a cycle in the level-truncated quotient; the
    # only loss under truncation is the single overflow term at the frontier
    op = TruncatedChainOperad(None, 2, 4)
    unit = op.unit()
    cap = op.q_cap + 1
    assert boundary_vec(unit, level_cap=cap) == {}
    residual = boundary_vec(unit)
    assert all(s.r == cap + 1 for s in residual)


def test_gamma_substitution_example():
    # composing the q=1 generator with itself and the unit gives the
    # single q=2 symbol with f-sequence (1,2,3)
    op = TruncatedChainOperad(None, 2, 4)
    a = sym_vec(2, (1, 2), (0, 0), 0)
    out = op.gamma(a, [a, op.unit()])
    assert out == {Symbol(3, (1, 2, 3), (0, 0, 0), 0): 1}
    # composing with units reproduces the degree-0 generators
    for f in ((1, 2), (2, 1)):
        g = sym_vec(2, f, (0, 0), 0)
        assert vec_eq(op.gamma(g, [op.unit(), op.unit()]), g)
        assert vec_eq(op.gamma(op.unit(), [g]), g)


def test_gamma_cross_validated_by_hand_matrix():
    # the two pipelines agree on a spread of level-matched instances
    rng = random.Random(3)
    pool = {k: [s for q in range(k - 1, 5) for r in range(q + 2)
                for s in enumerate_symbols(k, q, r)] for k in (1, 2)}
    done = 0
    while done < 60:
        k = rng.choice((1, 2))
        h = rng.choice(pool[k])
        term = rng.choice([s for s, _ in ker_expand(h)])
        gs = []
        ok = True
        for m in term.fiber_degrees():
            cands = [s for kk in (1, 2) for s in pool[kk]
                     if s.r == m and s.q <= 3]
            if not cands:
                ok = False
                break
            gs.append({rng.choice(cands): 1})
        if not ok:
            continue
        assert vec_eq(gamma_substitution({h: 1}, gs), gamma_matrix({h: 1}, gs))
        done += 1


def test_degree_additivity_random():
    rng = random.Random(5)
    pool = {k: [s for q in range(k - 1, 5) for r in range(q + 2)
                for s in enumerate_symbols(k, q, r)] for k in (1, 2)}
    done = 0
    while done < 80:
        k = rng.choice((1, 2))
        h = rng.choice(pool[k])
        term = rng.choice([s for s, _ in ker_expand(h)])
        gs = []
        ok = True
        for m in term.fiber_degrees():
            cands = [s for kk in (1, 2) for s in pool[kk]
                     if s.r == m and s.q <= 3]
            if not cands:
                ok = False
                break
            gs.append({rng.choice(cands): 1})
        if not ok:
            continue
        out = gamma_substitution({h: 1}, gs)
        if out:
            assert vec_degree(out) == h.total_degree + \
                sum(vec_degree(g) for g in gs)
        done += 1


def test_axiom_suite_families():
    for n, kmax in [(1, 3), (2, 2), (None, 2)]:
        op = TruncatedChainOperad(n, kmax, 4)
        rep = verify_operad_axioms(op, seed=7, exhaustive_cap=30, samples=20)
        assert rep.passed, rep.to_dict()


def test_corrupted_gamma_detected():
    # negative control: flipping one sign breaks the composition diagram
    op = TruncatedChainOperad(None, 2, 4)

    class Corrupt(TruncatedChainOperad):
        def gamma(self, h_vec, arg_vecs):
            out = gamma_substitution(h_vec, arg_vecs, self.n)
            if out and min(s.q for s in out) >= 2:
                first = sorted(out)[0]
                out = dict(out)
                out[first] = -out[first]
            return out

    bad = Corrupt(None, 2, 4)
    rep = verify_operad_axioms(bad, seed=7, exhaustive_cap=30, samples=20,
                               cross_check=True)
    assert not rep.passed
    names = {name for name, it in rep.items.items() if it.failures}
    assert names & {"associativity (composition diagram)",
                    "gamma is a chain map",
                    "substitution gamma equals matrix gamma"}


def test_witnesses_replay():
    op = TruncatedChainOperad(None, 2, 4)

    class Corrupt(TruncatedChainOperad):
        def gamma(self, h_vec, arg_vecs):
            out = gamma_substitution(h_vec, arg_vecs, self.n)
            if out and min(s.q for s in out) >= 2:
                first = sorted(out)[0]
                out = dict(out)
                out[first] = -out[first]
            return out

    bad = Corrupt(None, 2, 4)
    rep = verify_operad_axioms(bad, seed=9, exhaustive_cap=30, samples=20)
    item = rep.items.get("substitution gamma equals matrix gamma")
    assert item and item.failures
    tag, h, gs = item.failures[0]
    # re-evaluating the witness reproduces the discrepancy
    assert not vec_eq(bad.gamma(h, gs), gamma_matrix(h, gs, bad.n))


def test_homology_T1_and_T2():
    rep = operad_homology(1, None, (0, 1, 2), 4)
    assert rep.stabilized
    assert rep.groups == {0: (1, ()), 1: (0, ()), 2: (0, ())}
    rep = operad_homology(2, None, (0, 1, 2), 3)
    assert rep.stabilized
    assert rep.groups == {0: (1, ()), 1: (0, ()), 2: (0, ())}


def test_homology_filtration_levels():
    rep = operad_homology(2, 1, (0, 1, 2), 3)
    assert rep.groups == {0: (2, ()), 1: (0, ()), 2: (0, ())}
    rep = operad_homology(2, 2, (0, 1, 2), 3)
    assert rep.groups == {0: (1, ()), 1: (1, ()), 2: (0, ())}


def test_not_stabilized_raised(monkeypatch):
    # manufactured mismatch between the two truncation levels
    from chainops import operads as ops
    real = ops.level_truncated_complex

    def fake(k, n, level_cap, window):
        if level_cap >= 4:
            from chainops.complexes import GradedIntComplex
            return GradedIntComplex((-2, 3), {0: ("x", "y")}, {})
        return real(k, n, level_cap, window)

    monkeypatch.setattr(ops, "level_truncated_complex", fake)
    with pytest.raises(NotStabilized):
        ops.operad_homology(2, None, (0,), 3)
    rep = ops.operad_homology(2, None, (0,), 3, strict=False)
    assert not rep.stabilized and rep.groups != rep.groups_next


def test_little_cubes_comparison():
    for n, k in [(1, 2), (2, 2), (2, 1)]:
        rep = little_cubes_comparison(n, k, level_cap=3, resolution=4)
        assert rep.match, rep.to_dict()
    with pytest.raises(UnsupportedInstance):
        little_cubes_comparison(3, 2)


def test_sigma_freeness_T2():
    # no symbol of T(2), q <= 6, fixed by the transposition
    for q in range(1, 7):
        for r in range(q + 2):
            for s in enumerate_symbols(2, q, r):
                assert act_perm_vec({s: 1}, (2, 1)) != {s: 1}


def test_filtration_inclusions_are_chain_maps():
    # T_n symbols sit inside T_{n+1} and T with the same differential and
    # the same composition
    rng = random.Random(13)
    for q in range(1, 5):
        for r in range(q + 2):
            for s in enumerate_symbols(2, q, r, 1):
                assert s in set(enumerate_symbols(2, q, r, 2))
                assert s in set(enumerate_symbols(2, q, r))
                b1 = boxprod.t_boundary(s)
                assert all(boxprod.complexity(t.f) <= 1 for t in b1)
    # gamma restricted to the filtration agrees with gamma upstairs
    pool = [s for q in range(1, 4) for r in range(q + 2)
            for s in enumerate_symbols(2, q, r, 1)]
    done = 0
    while done < 30:
        h = rng.choice(pool)
        term = rng.choice([t for t, _ in ker_expand(h)])
        gs = []
        ok = True
        for m in term.fiber_degrees():
            cands = [s for s in pool if s.r == m and s.q <= 3] + \
                [s for q in range(3) for s in enumerate_symbols(1, q, m, 1)
                 if s.r == m]
            if not cands:
                ok = False
                break
            gs.append({rng.choice(cands): 1})
        if not ok:
            continue
        low = gamma_substitution({h: 1}, gs, 1)
        high = gamma_substitution({h: 1}, gs, None)
        assert vec_eq(low, high)
        done += 1


def test_block_permutation_shape():
    # two blocks of arities (2, 3) swapped by the transposition: the first
    # block of the permuted composite is the old second block
    assert block_permutation((2, 1), [2, 3]) == (4, 5, 1, 2, 3)
    bp = block_permutation((2, 1), [1, 1])
    assert sorted(bp) == [1, 2]
    assert block_permutation((1, 2), [2, 3]) == (1, 2, 3, 4, 5)
    # a 3-cycle with mixed arities is a bijection of the right size
    bp = block_permutation((2, 3, 1), [1, 2, 3])
    assert sorted(bp) == list(range(1, 7))


def test_symbol_complex_matches_level_truncation_ranks():
    # degree-0 chains agree where the windows coincide
    q_cx = symbol_complex(2, None, 4)
    l_cx = level_truncated_complex(2, None, 3, (0, 1))
    syms_q = {s for s in q_cx.basis[0]}
    syms_l = {s for s in l_cx.basis[0]}
    # level truncation keeps r <= 3, q-truncation keeps q <= 4; overlap
    both = {s for s in syms_q if s.r <= 3} & {s for s in syms_l if s.q <= 4}
    assert both


def test_sigma_freeness_T3():
    # no nonidentity permutation fixes a basis symbol of T(3), small window
    perms = [(2, 1, 3), (1, 3, 2), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    for q in range(2, 5):
        for r in range(q + 2):
            for s in enumerate_symbols(3, q, r):
                for sigma in perms:
                    moved, _sign = boxprod.act_perm(s, sigma)
                    assert moved != s

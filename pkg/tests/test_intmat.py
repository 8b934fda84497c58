import random

from chainops import intmat
from chainops.intmat import IntMatrix


def is_diagonal(m):
    return all(i == j for (i, j) in m.data)


def check_snf(m):
    diag, u, v = intmat.smith_normal_form(m)
    prod = u * m * v
    assert is_diagonal(prod)
    got = [prod.entry(i, i) for i in range(min(m.rows, m.cols))]
    assert [d for d in got if d] == diag
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0 and a > 0
    assert abs(intmat.det_sign_unimodular(u)) == 1
    assert abs(intmat.det_sign_unimodular(v)) == 1
    return diag


def test_snf_hand_example():
    # |det| = 8 = 2*4, gcd of entries = 2
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    assert check_snf(m) == [2, 4]


def test_snf_identity():
    assert check_snf(IntMatrix.identity(3)) == [1, 1, 1]


def test_snf_zero():
    assert check_snf(IntMatrix.zeros(2, 3)) == []


def test_snf_empty():
    assert check_snf(IntMatrix.zeros(0, 0)) == []
    assert check_snf(IntMatrix.zeros(0, 4)) == []


def test_snf_random():
    rng = random.Random(7)
    for _ in range(60):
        rows = rng.randrange(0, 6)
        cols = rng.randrange(0, 6)
        m = IntMatrix(rows, cols,
                      {(i, j): rng.randrange(-9, 10)
                       for i in range(rows) for j in range(cols)})
        check_snf(m)


def test_kernel_basis():
    rng = random.Random(11)
    for _ in range(40):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 6)
        m = IntMatrix(rows, cols,
                      {(i, j): rng.randrange(-4, 5)
                       for i in range(rows) for j in range(cols)})
        k = intmat.kernel_basis(m)
        assert (m * k).is_zero()
        assert len(intmat.snf_diagonal(k)) == k.cols
        assert k.cols == cols - intmat.rank(m)
        # saturated: all invariant factors are 1
        assert all(f == 1 for f in intmat.snf_diagonal(k))


def test_solve():
    rng = random.Random(13)
    hits = 0
    for _ in range(60):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = IntMatrix(rows, cols,
                      {(i, j): rng.randrange(-4, 5)
                       for i in range(rows) for j in range(cols)})
        x = [rng.randrange(-3, 4) for _ in range(cols)]
        b = m.apply(x)
        sol = intmat.solve(m, b)
        assert sol is not None
        assert m.apply(sol) == b
        hits += 1
    assert hits == 60


def test_solve_unsolvable():
    m = IntMatrix.from_rows([[2]])
    assert intmat.solve(m, [1]) is None
    assert intmat.solve(m, [4]) == [2]


def test_inverse_unimodular():
    m = IntMatrix.from_rows([[1, 2], [0, 1]])
    inv = intmat.inverse_unimodular(m)
    assert m * inv == IntMatrix.identity(2)
    assert inv * m == IntMatrix.identity(2)


def test_matrix_ops():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert (a * b).to_rows() == [[2, 1], [4, 3]]
    assert (a + b).to_rows() == [[1, 3], [4, 4]]
    assert (a - a).is_zero()
    assert a.transpose().to_rows() == [[1, 3], [2, 4]]
    assert a.apply([1, 1]) == [3, 7]

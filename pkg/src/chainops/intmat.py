"""Sparse integer matrices with exact arithmetic, Smith normal form, and
integer linear solvers.

All entries are Python ints (arbitrary precision).  Matrices are immutable
after construction; every operation returns a fresh matrix, so values can be
shared freely across threads.
"""

from fractions import Fraction


class IntMatrix:
    """A rows x cols integer matrix stored as {(i, j): value} with no zeros."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        assert rows >= 0 and cols >= 0
        self.rows = rows
        self.cols = cols
        d = {}
        if data:
            for (i, j), v in data.items():
                assert 0 <= i < rows and 0 <= j < cols, (i, j, rows, cols)
                if v:
                    d[(i, j)] = int(v)
        self.data = d

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_rows(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        data = {}
        for i, row in enumerate(rows_list):
            assert len(row) == cols, "rows have varying lengths"
            for j, v in enumerate(row):
                if v:
                    data[(i, j)] = int(v)
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, cols_list, rows=None):
        cols = len(cols_list)
        if rows is None:
            rows = len(cols_list[0]) if cols else 0
        data = {}
        for j, col in enumerate(cols_list):
            assert len(col) == rows
            for i, v in enumerate(col):
                if v:
                    data[(i, j)] = int(v)
        return cls(rows, cols, data)

    def to_rows(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def entry(self, i, j):
        return self.data.get((i, j), 0)

    def column(self, j):
        return [self.data.get((i, j), 0) for i in range(self.rows)]

    def row(self, i):
        return [self.data.get((i, j), 0) for j in range(self.cols)]

    def is_zero(self):
        return not self.data

    def transpose(self):
        return IntMatrix(self.cols, self.rows,
                         {(j, i): v for (i, j), v in self.data.items()})

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, 0) + v
        return IntMatrix(self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntMatrix(self.rows, self.cols,
                         {k: -v for k, v in self.data.items()})

    def __rmul__(self, c):
        c = int(c)
        return IntMatrix(self.rows, self.cols,
                         {k: c * v for k, v in self.data.items()})

    def __mul__(self, other):
        """Matrix product self @ other (sparse column-wise)."""
        assert self.cols == other.rows, (self.cols, other.rows)
        rows_of = {}
        for (i, j), v in self.data.items():
            rows_of.setdefault(j, []).append((i, v))
        data = {}
        for (j, l), w in other.data.items():
            for i, v in rows_of.get(j, ()):
                key = (i, l)
                data[key] = data.get(key, 0) + v * w
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, vec):
        """Apply to a dense column vector (list of ints)."""
        assert len(vec) == self.cols
        out = [0] * self.rows
        for (i, j), v in self.data.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def stack_rows(self, other):
        """Block matrix [self; other]."""
        assert self.cols == other.cols
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i + self.rows, j)] = v
        return IntMatrix(self.rows + other.rows, self.cols, data)

    def stack_cols(self, other):
        """Block matrix [self | other]."""
        assert self.rows == other.rows
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i, j + self.cols)] = v
        return IntMatrix(self.rows, self.cols + other.cols, data)

    def submatrix_cols(self, col_indices):
        pos = {j: l for l, j in enumerate(col_indices)}
        data = {}
        for (i, j), v in self.data.items():
            if j in pos:
                data[(i, pos[j])] = v
        return IntMatrix(self.rows, len(col_indices), data)

    def __repr__(self):
        return "IntMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, len(self.data))


class _SNFWorker:
    """Row/column reduction to Smith normal form.

    Pivots are chosen with smallest magnitude (and then least fill) to keep
    coefficient growth under control.  Optionally tracks the unimodular
    transforms u, v with u*m*v diagonal.
    """

    def __init__(self, m, track=True):
        self.rows = m.rows
        self.cols = m.cols
        # row-major and column-major views of the work matrix
        self.r = {}   # i -> {j: v}
        self.c = {}   # j -> {i: v}
        for (i, j), v in m.data.items():
            self.r.setdefault(i, {})[j] = v
            self.c.setdefault(j, {})[i] = v
        self.track = track
        if track:
            self.u = {i: {i: 1} for i in range(self.rows)}   # row ops
            self.v = {j: {j: 1} for j in range(self.cols)}   # col ops, col-major

    def _set(self, i, j, val):
        if val:
            self.r.setdefault(i, {})[j] = val
            self.c.setdefault(j, {})[i] = val
        else:
            if i in self.r and j in self.r[i]:
                del self.r[i][j]
                del self.c[j][i]

    def _add_row(self, dst, src, k):
        # row[dst] += k*row[src]
        if not k:
            return
        for j, v in list(self.r.get(src, {}).items()):
            self._set(dst, j, self.r.get(dst, {}).get(j, 0) + k * v)
        if self.track:
            u = self.u
            for j, v in u.get(src, {}).items():
                u.setdefault(dst, {})[j] = u.get(dst, {}).get(j, 0) + k * v
                if not u[dst][j]:
                    del u[dst][j]

    def _add_col(self, dst, src, k):
        # col[dst] += k*col[src]
        if not k:
            return
        for i, v in list(self.c.get(src, {}).items()):
            self._set(i, dst, self.r.get(i, {}).get(dst, 0) + k * v)
        if self.track:
            v_ = self.v
            for i, w in v_.get(src, {}).items():
                v_.setdefault(dst, {})[i] = v_.get(dst, {}).get(i, 0) + k * w
                if not v_[dst][i]:
                    del v_[dst][i]

    def _swap_rows(self, a, b):
        if a == b:
            return
        ra, rb = dict(self.r.get(a, {})), dict(self.r.get(b, {}))
        for j in set(ra) | set(rb):
            self._set(a, j, rb.get(j, 0))
            self._set(b, j, ra.get(j, 0))
        if self.track:
            self.u[a], self.u[b] = self.u.get(b, {}), self.u.get(a, {})

    def _swap_cols(self, a, b):
        if a == b:
            return
        ca, cb = dict(self.c.get(a, {})), dict(self.c.get(b, {}))
        for i in set(ca) | set(cb):
            va, vb = ca.get(i, 0), cb.get(i, 0)
            self._set(i, a, vb)
            self._set(i, b, va)
        if self.track:
            self.v[a], self.v[b] = self.v.get(b, {}), self.v.get(a, {})

    def _negate_row(self, i):
        for j, v in list(self.r.get(i, {}).items()):
            self._set(i, j, -v)
        if self.track:
            self.u[i] = {j: -v for j, v in self.u.get(i, {}).items()}

    def _find_pivot(self, s):
        best = None
        for i, row in self.r.items():
            if i < s:
                continue
            for j, v in row.items():
                if j < s:
                    continue
                key = (abs(v), len(row) + len(self.c[j]))
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if key[0] == 1 and key[1] <= 2:
                        return i, j
        if best is None:
            return None
        return best[1], best[2]

    def run(self):
        s = 0
        n = min(self.rows, self.cols)
        diag = []
        while s < n:
            piv = self._find_pivot(s)
            if piv is None:
                break
            self._swap_rows(s, piv[0])
            self._swap_cols(s, piv[1])
            while True:
                a = self.r[s][s]
                # clear column s
                again = False
                for i in [i for i in list(self.c.get(s, {})) if i > s]:
                    v = self.r.get(i, {}).get(s, 0)
                    if v:
                        q = v // a
                        self._add_row(i, s, -q)
                        if self.r.get(i, {}).get(s, 0):
                            # remainder smaller than pivot: swap it up
                            self._swap_rows(s, i)
                            again = True
                            break
                if again:
                    continue
                for j in [j for j in list(self.r.get(s, {})) if j > s]:
                    v = self.r.get(s, {}).get(j, 0)
                    if v:
                        q = v // a
                        self._add_col(j, s, -q)
                        if self.r.get(s, {}).get(j, 0):
                            self._swap_cols(s, j)
                            again = True
                            break
                if again:
                    continue
                break
            # pivot now alone in its row and column
            a = self.r[s][s]
            if a < 0:
                self._negate_row(s)
                a = -a
            # enforce divisibility: fold in any entry a does not divide
            bad = None
            for i, row in self.r.items():
                if i <= s:
                    continue
                for j, v in row.items():
                    if j > s and v % a:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad:
                self._add_row(s, bad[0], 1)
                continue
            diag.append(a)
            s += 1
        return diag


def smith_normal_form(m):
    """Return (diag, u, v) with u*m*v diagonal, d_1 | d_2 | ..., d_i > 0,
    and u, v unimodular.  The empty matrix gives an empty diagonal."""
    worker = _SNFWorker(m, track=True)
    diag = worker.run()
    u = IntMatrix(m.rows, m.rows,
                  {(i, j): v for i, row in worker.u.items() for j, v in row.items()})
    v = IntMatrix(m.cols, m.cols,
                  {(i, j): v for j, col in worker.v.items() for i, v in col.items()})
    return diag, u, v


def snf_diagonal(m):
    """Invariant factors only (no transform tracking; faster)."""
    return _SNFWorker(m, track=False).run()


def rank(m):
    return len(snf_diagonal(m))


def kernel_basis(m):
    """Basis of the integer kernel of m, as an IntMatrix whose columns span
    ker(m).  The basis is saturated (the kernel is a direct summand)."""
    diag, _u, v = smith_normal_form(m)
    r = len(diag)
    cols = []
    for j in range(r, m.cols):
        cols.append(v.column(j))
    return IntMatrix.from_columns(cols, rows=m.cols)


def solve(m, b):
    """One integer solution x of m x = b, or None if there is none."""
    diag, u, v = smith_normal_form(m)
    ub = u.apply(list(b))
    y = [0] * m.cols
    for i, d in enumerate(diag):
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    for i in range(len(diag), m.rows):
        if ub[i]:
            return None
    return v.apply(y)


def inverse_unimodular(m):
    """Exact inverse of a unimodular square matrix."""
    assert m.rows == m.cols
    diag, u, v = smith_normal_form(m)
    assert len(diag) == m.rows and all(d == 1 for d in diag), \
        "matrix is not unimodular"
    # u m v = I  =>  m^{-1} = v u
    return v * u


def det_sign_unimodular(m):
    """Determinant (+-1) of a unimodular matrix via fraction-free elimination."""
    n = m.rows
    assert n == m.cols
    a = [[Fraction(x) for x in row] for row in m.to_rows()]
    det = Fraction(1)
    for s in range(n):
        piv = next((i for i in range(s, n) if a[i][s]), None)
        if piv is None:
            return 0
        if piv != s:
            a[s], a[piv] = a[piv], a[s]
            det = -det
        det *= a[s][s]
        for i in range(s + 1, n):
            f = a[i][s] / a[s][s]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[s])]
    assert det.denominator == 1
    return int(det)

"""Finite simplicial sets in Eilenberg-Zilber normal form.

Every simplex is stored as a degeneracy word applied to a nondegenerate
simplex: ``Cell(word, base)`` with ``word`` a strictly decreasing tuple of
degeneracy indices (outermost first).  Faces of nondegenerate simplices are
given at construction; the face and degeneracy of an arbitrary cell are
computed by pushing operators through the word with the simplicial
identities, which are verified on all generators when the set is built.
"""

import json
from dataclasses import dataclass

from . import delta
from .delta import FinOrd, OrderedMap
from .intmat import IntMatrix
from .complexes import GradedIntComplex


@dataclass(frozen=True, order=True)
class Cell:
    word: tuple   # strictly decreasing degeneracy indices, outermost first
    base: str

    @property
    def is_degenerate(self):
        return bool(self.word)


class FiniteSimplicialSet:
    """Nondegenerate simplices per dimension plus their faces."""

    def __init__(self, simplices, faces, check=True):
        self.simplices = {d: tuple(names) for d, names in sorted(simplices.items())}
        self.dim_of = {}
        for d, names in self.simplices.items():
            for name in names:
                assert isinstance(name, str)
                assert name not in self.dim_of, "duplicate simplex name %r" % name
                self.dim_of[name] = d
        self.faces = {}
        for name, fs in faces.items():
            d = self.dim_of[name]
            assert d >= 1 and len(fs) == d + 1
            self.faces[name] = tuple(fs)
            for c in fs:
                assert isinstance(c, Cell)
                assert self.cell_dim(c) == d - 1
        for d, names in self.simplices.items():
            if d >= 1:
                for name in names:
                    assert name in self.faces, "missing faces for %r" % name
        if check:
            self._check_identities()

    # -- basic structure ---------------------------------------------------

    def max_dim(self):
        return max(self.simplices) if self.simplices else -1

    def nondegenerate(self, d):
        return self.simplices.get(d, ())

    def n_nondegenerate(self):
        return sum(len(v) for v in self.simplices.values())

    def cell(self, name):
        return Cell((), name)

    def cell_dim(self, c):
        return self.dim_of[c.base] + len(c.word)

    def face(self, c, i):
        """d_i of a cell, in normal form."""
        n = self.cell_dim(c)
        assert 0 <= i <= n and n >= 1
        if not c.word:
            return self.faces[c.base][i]
        j = c.word[0]
        tail = Cell(c.word[1:], c.base)
        if i < j:
            return self.degeneracy(self.face(tail, i), j - 1)
        if i in (j, j + 1):
            return tail
        return self.degeneracy(self.face(tail, i - 1), j)

    def degeneracy(self, c, i):
        """s_i of a cell, in normal form."""
        n = self.cell_dim(c)
        assert 0 <= i <= n
        word = c.word
        if not word or i > word[0]:
            return Cell((i,) + word, c.base)
        # s_i s_j = s_{j+1} s_i for i <= j
        inner = self.degeneracy(Cell(word[1:], c.base), i)
        return Cell((word[0] + 1,) + inner.word, inner.base)

    def act(self, c, alpha):
        """Contravariant action: the cell c o alpha for alpha : [m] -> [m']
        with m' the dimension of c."""
        assert alpha.target.level == self.cell_dim(c)
        gens = delta.decompose(alpha)
        out = c
        for kind, _m, i in reversed(gens):
            out = self.face(out, i) if kind == "d" else self.degeneracy(out, i)
        return out

    def restrict(self, c, subset):
        """The face of c spanned by a nonempty sorted subset of its vertex
        positions."""
        m = self.cell_dim(c)
        assert subset, "empty restriction is the augmentation point"
        assert all(0 <= u <= m for u in subset)
        inj = OrderedMap(FinOrd(len(subset)), FinOrd.bracket(m), tuple(subset))
        return self.act(c, inj)

    def cells(self, m):
        """All m-cells (degenerate included), deterministically ordered."""
        out = []
        for j in sorted(self.simplices):
            if j > m:
                break
            for name in self.simplices[j]:
                base = self.cell(name)
                for eta in delta.all_surjections(FinOrd.bracket(m), FinOrd.bracket(j)):
                    out.append(self.act(base, eta))
        assert len(set(out)) == len(out)
        return tuple(sorted(out))

    def _check_identities(self):
        for d, names in self.simplices.items():
            if d < 2:
                continue
            for name in names:
                c = self.cell(name)
                for j in range(d + 1):
                    for i in range(j):
                        left = self.face(self.face(c, j), i)
                        right = self.face(self.face(c, i), j - 1)
                        assert left == right, \
                            "simplicial identity fails on %r (i=%d, j=%d)" % (name, i, j)

    # -- derived algebra ---------------------------------------------------

    def cochain_complex(self, cap=None):
        """Normalized cochain complex, stored homologically: chain degree -m
        holds the duals of the nondegenerate m-simplices."""
        if cap is None:
            cap = self.max_dim()
        basis = {-m: tuple(self.nondegenerate(m)) for m in range(cap + 1)}
        diff = {}
        for m in range(cap):
            # chain map -m -> -m-1 is the cochain differential C^m -> C^{m+1}
            rows = self.nondegenerate(m + 1)
            cols = self.nondegenerate(m)
            col_index = {name: j for j, name in enumerate(cols)}
            data = {}
            for r, name in enumerate(rows):
                c = self.cell(name)
                for i in range(m + 2):
                    f = self.face(c, i)
                    if not f.is_degenerate:
                        j = col_index[f.base]
                        key = (r, j)
                        data[key] = data.get(key, 0) + (-1) ** i
            diff[-m] = IntMatrix(len(rows), len(cols), data)
        return GradedIntComplex((-cap - 1, 1), basis, diff,
                                regrade="cochain (chain degree -m holds C^m)")

    def dual_cosimplicial(self, level_cap):
        """The cosimplicial abelian group of integer-valued functions on all
        simplices (degenerate included), levels 0..level_cap."""
        from .cosimplicial import CosimplicialAbGroup
        levels = {m: self.cells(m) for m in range(level_cap + 1)}
        index = {m: {c: i for i, c in enumerate(cs)} for m, cs in levels.items()}

        def op_matrix(alpha):
            m, mp = alpha.source.level, alpha.target.level
            data = {}
            for jp, cp in enumerate(levels[mp]):
                pulled = self.act(cp, alpha)
                data[(jp, index[m][pulled])] = 1
            return IntMatrix(len(levels[mp]), len(levels[m]), data)

        cofaces = {}
        codegens = {}
        for m in range(level_cap):
            for i in range(m + 2):
                cofaces[(m, i)] = op_matrix(delta.coface(m, i))
        for m in range(1, level_cap + 1):
            for i in range(m):
                codegens[(m, i)] = op_matrix(delta.codegeneracy(m, i))
        return CosimplicialAbGroup(
            {m: tuple(levels[m]) for m in levels}, cofaces, codegens)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        obj = {
            "simplices": {str(d): list(names) for d, names in self.simplices.items()},
            "faces": {name: [[list(c.word), c.base] for c in fs]
                      for name, fs in sorted(self.faces.items())},
        }
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        simplices = {int(d): tuple(names) for d, names in obj["simplices"].items()}
        faces = {name: tuple(Cell(tuple(w), b) for w, b in fs)
                 for name, fs in obj.get("faces", {}).items()}
        return cls(simplices, faces)


# -- standard models -------------------------------------------------------

def vertex_name(vertices):
    return ".".join(str(v) for v in vertices)


def standard_simplex_sset(n):
    """Delta^n as a simplicial set: nondegenerate j-simplices are the
    (j+1)-subsets of {0..n}."""
    from itertools import combinations
    simplices = {}
    faces = {}
    for j in range(n + 1):
        names = []
        for verts in combinations(range(n + 1), j + 1):
            names.append(vertex_name(verts))
            if j >= 1:
                faces[vertex_name(verts)] = tuple(
                    Cell((), vertex_name(verts[:i] + verts[i + 1:]))
                    for i in range(j + 1))
        simplices[j] = tuple(names)
    return FiniteSimplicialSet(simplices, faces)


def simplicial_circle():
    """Delta^1 with both endpoints identified: one vertex, one edge."""
    return FiniteSimplicialSet(
        {0: ("v",), 1: ("e",)},
        {"e": (Cell((), "v"), Cell((), "v"))})


def from_simplicial_complex(vertices, facets):
    """Simplicial set of an abstract simplicial complex (given by maximal
    faces); vertices are sorted to fix the ordering."""
    verts = sorted(vertices)
    pos = {v: i for i, v in enumerate(verts)}
    from itertools import combinations
    all_faces = set()
    for f in facets:
        f = tuple(sorted(f, key=lambda v: pos[v]))
        for k in range(1, len(f) + 1):
            for sub in combinations(f, k):
                all_faces.add(sub)
    simplices = {}
    faces = {}
    for f in sorted(all_faces, key=lambda f: (len(f), f)):
        d = len(f) - 1
        name = vertex_name(f)
        simplices.setdefault(d, []).append(name)
        if d >= 1:
            faces[name] = tuple(Cell((), vertex_name(f[:i] + f[i + 1:]))
                                for i in range(d + 1))
    return FiniteSimplicialSet({d: tuple(v) for d, v in simplices.items()}, faces)


def standard_simplex_chains(m):
    """Normalized chains of Delta^m: degree-j basis is the injective ordered
    maps [j] -> [m], the differential the alternating sum of vertex
    deletions."""
    basis = {}
    index = {}
    for j in range(m + 1):
        injs = tuple(f.values for f in delta.all_injections(
            FinOrd.bracket(j), FinOrd.bracket(m)))
        basis[j] = injs
        index[j] = {v: i for i, v in enumerate(injs)}
    diff = {}
    for j in range(1, m + 1):
        data = {}
        for col, vals in enumerate(basis[j]):
            for t in range(j + 1):
                fvals = vals[:t] + vals[t + 1:]
                row = index[j - 1][fvals]
                data[(row, col)] = data.get((row, col), 0) + (-1) ** t
        diff[j] = IntMatrix(len(basis[j - 1]), len(basis[j]), data)
    return GradedIntComplex((-1, m + 1), basis, diff)

"""The cochain operation calculus on a finite simplicial set: cup product,
the degree-raising join product, the general fiberwise operations indexed by
functions to {1,...,k}, and the mechanical verification of the identities
relating them to the cosimplicial structure.

Cochains at level [m] are integer functions on all m-simplices (degenerate
ones included); the normalized cochains, which vanish on degenerates, are
the basis used by the verification suites.  The system is augmented: the
empty level is a copy of the integers with distinguished element eps, which
the operations consume on empty fibers.
"""

from dataclasses import dataclass, field

from . import delta
from .delta import FinOrd, OrderedMap


class LevelMismatch(Exception):
    pass


@dataclass(frozen=True)
class CochainElement:
    """Integer function on the simplices of one level; ``level`` is the
    skeletal dimension m, or None for the empty level."""
    level: object               # int >= 0 or None
    values: tuple               # sorted ((cell, value), ...), zeros dropped

    @classmethod
    def make(cls, level, mapping):
        vals = tuple(sorted((c, v) for c, v in mapping.items() if v))
        return cls(level, vals)

    def value(self, cell):
        for c, v in self.values:
            if c == cell:
                return v
        return 0

    def as_dict(self):
        return dict(self.values)

    def __add__(self, other):
        assert self.level == other.level
        out = self.as_dict()
        for c, v in other.values:
            out[c] = out.get(c, 0) + v
        return CochainElement.make(self.level, out)

    def scale(self, c):
        return CochainElement.make(self.level, {k: c * v for k, v in self.values})


class AugmentedCochainSystem:
    """Levels of integer cochains on a finite simplicial set, with the full
    action of ordered maps and the fiberwise operations."""

    def __init__(self, W, level_cap):
        self.W = W
        self.level_cap = level_cap
        self._cells = {m: W.cells(m) for m in range(level_cap + 1)}

    def cells(self, m):
        if m is None:
            return ((),)
        if m > self.level_cap:
            raise LevelMismatch((m, self.level_cap))
        return self._cells[m]

    def epsilon(self):
        """The distinguished generator of the empty level."""
        return CochainElement.make(None, {(): 1})

    def zero(self, level):
        return CochainElement.make(level, {})

    def dual(self, name):
        """Normalized basis cochain: the dual of a nondegenerate simplex,
        extended by zero on every other simplex."""
        cell = self.W.cell(name)
        return CochainElement.make(self.W.cell_dim(cell), {cell: 1})

    def basis(self, m):
        if m is None:
            return [self.epsilon()]
        return [self.dual(name) for name in self.W.nondegenerate(m)]

    def restrict(self, cell, subset):
        """sigma(U): the face spanned by a subset of the vertex positions;
        the empty subset gives the augmentation point (returned as ())."""
        if not subset:
            return ()
        return self.W.restrict(cell, tuple(subset))

    def pushforward(self, x, alpha):
        """The map of cochain levels induced by an ordered map of levels:
        (alpha_* x)(sigma) = x(sigma o alpha)."""
        src_level = alpha.source.level if alpha.source.size else None
        tgt_level = alpha.target.level
        if x.level != src_level:
            raise LevelMismatch((x.level, src_level))
        if src_level is None:
            c = x.value(())
            return CochainElement.make(
                tgt_level, {cell: c for cell in self.cells(tgt_level)})
        out = {}
        for cell in self.cells(tgt_level):
            v = x.value(self.W.act(cell, alpha))
            if v:
                out[cell] = v
        return CochainElement.make(tgt_level, out)

    def coface(self, x, i):
        m = x.level if x.level is not None else -1
        return self.pushforward(x, delta.coface(m, i))

    def codegeneracy(self, x, i):
        return self.pushforward(x, delta.codegeneracy(x.level, i))

    # -- operations --------------------------------------------------------

    def cup(self, x, y):
        """Front-face/back-face product: the vertex p is shared."""
        p, q = x.level, y.level
        out = {}
        for cell in self.cells(p + q):
            a = x.value(self.restrict(cell, range(p + 1)))
            if a:
                b = y.value(self.restrict(cell, range(p, p + q + 1)))
                if b:
                    out[cell] = a * b
        return CochainElement.make(p + q, out)

    def sqcup(self, x, y):
        """Degree-raising join: the partition has no shared vertex."""
        p, q = x.level, y.level
        out = {}
        for cell in self.cells(p + q + 1):
            a = x.value(self.restrict(cell, range(p + 1)))
            if a:
                b = y.value(self.restrict(cell, range(p + 1, p + q + 2)))
                if b:
                    out[cell] = a * b
        return CochainElement.make(p + q + 1, out)

    def angle(self, f, xs):
        """The operation indexed by f: [m] -> {1..k} (as a tuple of values):
        multiply the evaluations on the fiber restrictions; empty fibers
        consume the augmentation class."""
        k = len(xs)
        for v in f:
            assert 1 <= v <= k
        fibers = [tuple(t for t, v in enumerate(f) if v == i + 1)
                  for i in range(k)]
        for fib, x in zip(fibers, xs):
            want = len(fib) - 1 if fib else None
            if x.level != want:
                raise LevelMismatch((x.level, want))
        if not f:
            # empty source: everything lands in the augmentation level
            prod = 1
            for x in xs:
                prod *= x.value(())
            return CochainElement.make(None, {(): prod})
        m = len(f) - 1
        out = {}
        for cell in self.cells(m):
            prod = 1
            for fib, x in zip(fibers, xs):
                prod *= x.value(self.restrict(cell, fib))
                if not prod:
                    break
            if prod:
                out[cell] = prod
        return CochainElement.make(m, out)


# -- identity verification ----------------------------------------------------

@dataclass
class CheckItem:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok, witness):
        self.instances += 1
        if not ok:
            self.failures.append(witness)


@dataclass
class CochainReport:
    complex_name: str
    level_cap: int
    items: dict = field(default_factory=dict)

    def item(self, name):
        return self.items.setdefault(name, CheckItem(name))

    @property
    def passed(self):
        return all(not it.failures for it in self.items.values())

    def to_dict(self):
        return {
            "complex": self.complex_name, "level_cap": self.level_cap,
            "passed": self.passed,
            "items": {name: {"instances": it.instances,
                             "failures": [repr(w) for w in it.failures]}
                      for name, it in sorted(self.items.items())},
        }


def _restriction_map(f, g, phi):
    """The restriction of phi to the i-th fibers, skeletally renumbered."""
    out = []
    for i in (1, 2):
        src = [t for t, v in enumerate(f) if v == i]
        tgt = [t for t, v in enumerate(g) if v == i]
        pos = {t: j for j, t in enumerate(tgt)}
        out.append(OrderedMap(FinOrd(len(src)), FinOrd(len(tgt)),
                              tuple(pos[phi.values[t]] for t in src)))
    return out


def _fiber_element(system, values, level_basis_pool):
    return level_basis_pool[len(values) - 1 if values else None]


def verify_identities(W, level_cap=None, name="complex", angle_impl=None):
    """Exhaustive verification of the cup/join/fiberwise-operation
    identities on all normalized basis cochains of W, within level caps.
    Returns a report; failures carry replayable witnesses."""
    if level_cap is None:
        level_cap = W.max_dim() + 2
    sys_ = AugmentedCochainSystem(W, level_cap)
    angle = angle_impl or sys_.angle
    report = CochainReport(name, level_cap)
    eps = sys_.epsilon()
    M = level_cap

    def bases(m):
        return sys_.basis(m if m >= 0 else None)

    # unit 0-cochain: the constant function 1 on vertices
    e = sys_.zero(0)
    for x in sys_.basis(0):
        e = e + x

    # cup/join identities with the cosimplicial operators
    it_cup_d = report.item("cofaces of a cup product")
    it_shared = report.item("shared middle coface")
    it_cup_s = report.item("codegeneracies of a cup product")
    it_join_d = report.item("cofaces of a join product")
    it_join_s = report.item("codegeneracies of a join product")
    it_join_e = report.item("join unit")
    it_join_cup = report.item("join from cup")
    it_cup_join = report.item("cup from join")
    for p in range(0, M):
        for q in range(0, M - p):
            for x in bases(p):
                for y in bases(q):
                    if p + q + 1 <= M:
                        xy = sys_.cup(x, y)
                        for i in range(p + q + 1):
                            lhs = sys_.coface(xy, i)
                            if i <= p:
                                rhs = sys_.cup(sys_.coface(x, i), y)
                            else:
                                rhs = sys_.cup(x, sys_.coface(y, i - p))
                            it_cup_d.record(lhs == rhs, ("cup-coface", p, q, i, x, y))
                        lhs = sys_.cup(sys_.coface(x, p + 1), y)
                        rhs = sys_.cup(x, sys_.coface(y, 0))
                        it_shared.record(lhs == rhs, ("shared-coface", p, q, x, y))
                        for i in range(max(0, p + q - 1) + 1):
                            if p + q == 0:
                                continue
                            lhs = sys_.codegeneracy(xy, i)
                            if i <= p - 1:
                                rhs = sys_.cup(sys_.codegeneracy(x, i), y)
                            else:
                                rhs = sys_.cup(x, sys_.codegeneracy(y, i - p))
                            it_cup_s.record(lhs == rhs, ("cup-codegeneracy", p, q, i, x, y))
                    if p + q + 2 <= M:
                        xjy = sys_.sqcup(x, y)
                        for i in range(p + q + 3):
                            # for i >= p+2 the face deletes the
                            # (i-p-1)-st vertex of the back block (forced by
                            # naturality, which is checked exhaustively)
                            lhs = sys_.coface(xjy, i)
                            if i <= p + 1:
                                rhs = sys_.sqcup(sys_.coface(x, i), y)
                            else:
                                rhs = sys_.sqcup(x, sys_.coface(y, i - p - 1))
                            it_join_d.record(lhs == rhs, ("join-coface", p, q, i, x, y))
                        # seam coincidence: the top coface on the front block
                        # equals the zeroth coface on the back block
                        lhs = sys_.sqcup(sys_.coface(x, p + 1), y)
                        rhs = sys_.sqcup(x, sys_.coface(y, 0))
                        it_join_d.record(lhs == rhs, ("join-coface-seam", p, q, x, y))
                        for i in range(p + q + 1):
                            if i == p:
                                continue
                            lhs = sys_.codegeneracy(xjy, i)
                            if i < p:
                                rhs = sys_.sqcup(sys_.codegeneracy(x, i), y)
                            else:
                                rhs = sys_.sqcup(x, sys_.codegeneracy(y, i - p - 1))
                            it_join_s.record(lhs == rhs, ("join-codegeneracy", p, q, i, x, y))
                    if p + q + 1 <= M:
                        lhs = sys_.sqcup(x, y)
                        it_join_cup.record(
                            lhs == sys_.cup(sys_.coface(x, p + 1), y) and
                            lhs == sys_.cup(x, sys_.coface(y, 0)),
                            ("join-from-cup", p, q, x, y))
                        it_cup_join.record(
                            sys_.cup(x, y) == sys_.codegeneracy(lhs, p),
                            ("cup-from-join", p, q, x, y))
            if q == 0:
                pass
        if p + 1 <= M:
            for x in bases(p):
                lhs = sys_.codegeneracy(sys_.sqcup(x, e), p)
                rhs = sys_.codegeneracy(sys_.sqcup(e, x), 0)
                it_join_e.record(lhs == x and rhs == x, ("join-unit", p, x))

    # the join is the fiberwise operation of the two-block partition
    it_block = report.item("join is the block-partition operation")
    for p in range(0, M - 1):
        for q in range(0, M - 1 - p):
            f = tuple([1] * (p + 1) + [2] * (q + 1))
            for x in bases(p):
                for y in bases(q):
                    it_block.record(angle(f, [x, y]) == sys_.sqcup(x, y),
                                ("join-block", f, x, y))

    # naturality of the fiberwise operations
    it_nat = report.item("naturality of fiberwise operations (k=2)")
    for m1 in range(-1, min(3, M) + 1):
        for m2 in range(-1, min(3, M) + 1):
            src = FinOrd(m1 + 1)
            tgt = FinOrd(m2 + 1)
            for phi in delta.all_ordered_maps(src, tgt):
                for gmask in range(2 ** (m2 + 1)):
                    g = tuple(1 + (gmask >> t & 1) for t in range(m2 + 1))
                    f = tuple(g[phi.values[t]] for t in range(m1 + 1))
                    phis = _restriction_map(f, g, phi)
                    fib_f = [sum(1 for v in f if v == i) - 1 for i in (1, 2)]
                    for x in bases(fib_f[0]):
                        for y in bases(fib_f[1]):
                            if m1 >= 0:
                                lhs = sys_.pushforward(angle(f, [x, y]), phi)
                            else:
                                # empty source: the operation lands in eps
                                val = x.value(()) * y.value(())
                                if m2 >= 0:
                                    lhs = sys_.pushforward(
                                        eps.scale(val), _empty_map(tgt))
                                else:
                                    lhs = eps.scale(val)
                            xs2 = _push_fiber(sys_, x, phis[0])
                            ys2 = _push_fiber(sys_, y, phis[1])
                            rhs = angle(g, [xs2, ys2])
                            it_nat.record(lhs == rhs,
                                        ("naturality", phi.values, g, x, y))

    # symmetry
    it_sym = report.item("symmetry of fiberwise operations")
    for m in range(0, min(4, M) + 1):
        for fmask in range(2 ** (m + 1)):
            f = tuple(1 + (fmask >> t & 1) for t in range(m + 1))
            tf = tuple(3 - v for v in f)
            fib = [sum(1 for v in f if v == i) - 1 for i in (1, 2)]
            for x in bases(fib[0]):
                for y in bases(fib[1]):
                    it_sym.record(angle(f, [x, y]) == angle(tf, [y, x]),
                                ("symmetry", f, x, y))

    # associativity through a three-block function, and the direct 3-ary
    it_assoc = report.item("associativity of fiberwise operations (k=3)")
    it_decomp = report.item("3-ary operations decompose through 2-ary")
    for m in range(0, min(3, M) + 1):
        for g in _all_functions(m + 1, 3):
            fibs = [tuple(t for t, v in enumerate(g) if v == i)
                    for i in (1, 2, 3)]
            levels = [len(fb) - 1 if fb else None for fb in fibs]
            alpha_g = tuple(1 if v in (1, 2) else 2 for v in g)
            beta_g = tuple(1 if v == 1 else 2 for v in g)
            g1 = tuple(v for v in g if v in (1, 2))
            g2 = tuple(v - 1 for v in g if v in (2, 3))
            for x in bases(levels[0] if levels[0] is not None else -1):
                for y in bases(levels[1] if levels[1] is not None else -1):
                    for z in bases(levels[2] if levels[2] is not None else -1):
                        left = angle(alpha_g, [angle(g1, [x, y]), z])
                        right = angle(beta_g, [x, angle(g2, [y, z])])
                        direct = angle(g, [x, y, z])
                        it_assoc.record(left == right, ("associativity", g, x, y, z))
                        it_decomp.record(left == direct and right == direct,
                                    ("decomposition", g, x, y, z))

    # units
    it_unit = report.item("augmentation units")
    for m in range(0, min(4, M) + 1):
        f1 = (1,) * (m + 1)
        f2 = (2,) * (m + 1)
        for x in bases(m):
            it_unit.record(angle(f1, [x, eps]) == x, ("unit-right", m, x))
            it_unit.record(angle(f2, [eps, x]) == x, ("unit-left", m, x))

    return report


def _push_fiber(system, x, phi):
    if phi.source.size == 0:
        # map between augmentation points, or into a nonempty fiber
        if phi.target.size == 0:
            return x
        return system.pushforward(x, phi)
    return system.pushforward(x, phi)


def _empty_map(tgt):
    return OrderedMap(FinOrd(0), tgt, ())


def _all_functions(length, k):
    out = [()]
    for _ in range(length):
        out = [f + (v,) for f in out for v in range(1, k + 1)]
    return out


def sampled_decomposition_check(W, seed=0, max_level=5, samples=60,
                                level_cap=None):
    """Decomposition check on sampled three-valued functions with larger
    sources: the 3-ary operation equals a composite of 2-ary ones."""
    import random
    rng = random.Random(seed)
    if level_cap is None:
        level_cap = max_level + 1
    sys_ = AugmentedCochainSystem(W, level_cap)
    eps = sys_.epsilon()
    checked = 0
    for _ in range(samples * 5):
        if checked >= samples:
            break
        m = rng.randrange(2, max_level + 1)
        g = tuple(rng.randrange(1, 4) for _ in range(m + 1))
        fibs = [tuple(t for t, v in enumerate(g) if v == i) for i in (1, 2, 3)]
        levels = [len(fb) - 1 if fb else None for fb in fibs]
        xs = []
        for lvl in levels:
            pool = sys_.basis(lvl)
            if pool:
                xs.append(rng.choice(pool))
            elif lvl is None:
                xs.append(eps)
            else:
                xs.append(sys_.zero(lvl))
        alpha_g = tuple(1 if v in (1, 2) else 2 for v in g)
        g1 = tuple(v for v in g if v in (1, 2))
        left = sys_.angle(alpha_g, [sys_.angle(g1, [xs[0], xs[1]]), xs[2]])
        direct = sys_.angle(g, xs)
        assert left == direct, (g,)
        checked += 1
    return checked

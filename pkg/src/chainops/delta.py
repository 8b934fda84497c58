"""Finite ordered sets and order-preserving maps: the categories behind
cosimplicial objects.

Objects are skeletal: [m] = {0, ..., m} has size m+1, and the empty set
(size 0) is allowed for the augmented category.  Arbitrary finite totally
ordered sets are always presented through their unique isomorphism to some
[m]; subsets are kept as sorted index lists together with this renumbering.
"""

from dataclasses import dataclass
from itertools import combinations


class IndexOutOfRange(Exception):
    pass


@dataclass(frozen=True, order=True)
class FinOrd:
    """The totally ordered set {0, ..., size-1}; size 0 is the empty set."""
    size: int

    def __post_init__(self):
        assert self.size >= 0

    @classmethod
    def bracket(cls, m):
        """The object [m] = {0, ..., m}."""
        assert m >= -1
        return cls(m + 1)

    @property
    def level(self):
        """m such that this object is [m]; the empty set gives -1."""
        return self.size - 1

    def __iter__(self):
        return iter(range(self.size))


@dataclass(frozen=True, order=True)
class OrderedMap:
    """Weakly increasing map between skeletal finite ordered sets."""
    source: FinOrd
    target: FinOrd
    values: tuple

    def __post_init__(self):
        assert len(self.values) == self.source.size
        for v in self.values:
            assert 0 <= v < self.target.size
        assert all(a <= b for a, b in zip(self.values, self.values[1:])), \
            "values not weakly increasing"

    def __call__(self, i):
        return self.values[i]

    def compose(self, other):
        """self o other."""
        assert other.target == self.source
        return OrderedMap(other.source, self.target,
                          tuple(self.values[v] for v in other.values))

    @classmethod
    def identity(cls, obj):
        return cls(obj, obj, tuple(range(obj.size)))

    def is_injective(self):
        return len(set(self.values)) == len(self.values)

    def is_surjective(self):
        return set(self.values) == set(range(self.target.size))

    def image(self):
        return sorted(set(self.values))


def coface(m, i):
    """d^i : [m] -> [m+1], the ordered injection missing i."""
    if not (0 <= i <= m + 1):
        raise IndexOutOfRange((m, i))
    vals = tuple(j if j < i else j + 1 for j in range(m + 1))
    return OrderedMap(FinOrd.bracket(m), FinOrd.bracket(m + 1), vals)


def codegeneracy(m, i):
    """s^i : [m] -> [m-1], the ordered surjection hitting i twice."""
    if not (0 <= i <= m - 1):
        raise IndexOutOfRange((m, i))
    vals = tuple(j if j <= i else j - 1 for j in range(m + 1))
    return OrderedMap(FinOrd.bracket(m), FinOrd.bracket(m - 1), vals)


def factor_epi_mono(phi):
    """Unique factorization phi = mono o epi with epi surjective and mono
    injective."""
    img = phi.image()
    pos = {v: k for k, v in enumerate(img)}
    mid = FinOrd(len(img))
    epi = OrderedMap(phi.source, mid, tuple(pos[v] for v in phi.values))
    mono = OrderedMap(mid, phi.target, tuple(img))
    return epi, mono


def decompose(phi):
    """Write phi as a list of generators (composed left to right as listed):
    first codegeneracies, then cofaces.  Empty list for identities."""
    epi, mono = factor_epi_mono(phi)
    gens = []
    # epi = product of s^i: collapse repeated values one at a time
    cur = list(epi.values)
    m = len(cur) - 1
    while len(set(cur)) < len(cur):
        i = next(j for j in range(len(cur) - 1) if cur[j] == cur[j + 1])
        gens.append(("s", m, i))
        # s^i identifies positions i, i+1; on values, drop one duplicate
        cur = cur[:i] + cur[i + 1:]
        m -= 1
    # mono = product of d^i: insert missing values top-down
    missing = sorted(set(range(phi.target.size)) - set(mono.values))
    level = mono.source.level
    for i in sorted(missing):
        gens.append(("d", level, i))
        level += 1
    return gens


def all_ordered_maps(src, tgt):
    """All weakly increasing maps FinOrd(src_size) -> FinOrd(tgt_size)."""
    s, t = src.size, tgt.size
    if s == 0:
        return [OrderedMap(src, tgt, ())]
    out = []
    # weakly increasing tuples of length s over t values
    for comb in combinations(range(t + s - 1), s):
        vals = tuple(c - k for k, c in enumerate(comb))
        out.append(OrderedMap(src, tgt, vals))
    return out


def all_injections(src, tgt):
    return [f for f in all_ordered_maps(src, tgt) if f.is_injective()]


def all_surjections(src, tgt):
    return [f for f in all_ordered_maps(src, tgt) if f.is_surjective()]

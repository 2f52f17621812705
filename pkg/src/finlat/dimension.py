"""Dimension vectors of modular lattices of finite length.

Prime intervals (cover pairs) are grouped into projectivity classes:
the equivalence generated by transposition, where [a, b] and [c, d] are
transposes when d = b v c with a = b ^ c, or symmetrically.  For a
modular lattice every maximal chain of an interval meets each class the
same number of times, so counting along any one chain gives a
well-defined vector indexed by the classes; those vectors add along
chains and their supports mirror the compact congruences.

Class ids are assigned in order of each class's lexicographically
smallest prime interval, which keeps every vector deterministic.
"""

from .errors import NotModular, NotComparable
from .order import is_modular, first_maximal_chain, length
from .congruence import congruence_lattice, quotient

__all__ = [
    "ProjectivityClasses", "DimensionVector", "projectivity_classes",
    "delta", "mtol_support", "meet_irreducible_for_class",
    "class_congruence_bijection", "gdim_signature",
]


class ProjectivityClasses:
    """The partition of the prime intervals of a lattice into
    projectivity classes."""

    __slots__ = ("host", "classes", "class_of")

    def __init__(self, host, classes):
        self.host = host
        self.classes = classes                     # tuple of tuples of (lo, hi)
        self.class_of = {iv: i for i, cls in enumerate(classes) for iv in cls}

    def __len__(self):
        return len(self.classes)

    def representative(self, class_id):
        return self.classes[class_id][0]

    def __repr__(self):
        return f"ProjectivityClasses(count={len(self.classes)})"


def _transposes(L, i1, i2):
    a, b = i1
    c, d = i2
    if L.join(b, c) == d and L.meet(b, c) == a:
        return True
    if L.join(d, a) == b and L.meet(d, a) == c:
        return True
    return False


def projectivity_classes(L):
    """Group the prime intervals of L by projectivity (transitive
    closure of transposition)."""
    def build():
        intervals = sorted(L.covers)
        k = len(intervals)
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(k):
            for j in range(i):
                if find(i) != find(j) and _transposes(L, intervals[i], intervals[j]):
                    ri, rj = find(i), find(j)
                    parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for i in range(k):
            groups.setdefault(find(i), []).append(intervals[i])
        classes = tuple(tuple(g) for g in
                        sorted(groups.values(), key=lambda g: g[0]))
        return ProjectivityClasses(L, classes)

    return L.cached("projectivity_classes", build)


class DimensionVector:
    """A vector of per-class cover counts, indexed by projectivity class id."""

    __slots__ = ("classes", "counts")

    def __init__(self, classes, counts):
        self.classes = classes
        self.counts = tuple(counts)

    def __getitem__(self, class_id):
        return self.counts[class_id]

    def support(self):
        return frozenset(i for i, c in enumerate(self.counts) if c > 0)

    def __add__(self, other):
        if self.classes is not other.classes:
            raise ValueError("vectors over different class families")
        return DimensionVector(self.classes,
                               tuple(a + b for a, b in
                                     zip(self.counts, other.counts)))

    def __eq__(self, other):
        return (isinstance(other, DimensionVector)
                and self.counts == other.counts)

    def __hash__(self):
        return hash(self.counts)

    def __repr__(self):
        return f"DimensionVector{self.counts}"


def _require_modular(L):
    ok, witness = L.cached("is_modular", lambda: is_modular(L))
    if not ok:
        raise NotModular(witness)


def delta(L, a, b, chain=None):
    """Per-class cover counts along a maximal chain of [a, b].

    Requires a <= b and L modular, so that the count is independent of
    the chain chosen; by default the lexicographically first maximal
    chain is used.
    """
    if not L.leq(a, b):
        raise NotComparable(a, b)
    _require_modular(L)
    classes = projectivity_classes(L)
    if chain is None:
        chain = first_maximal_chain(L, a, b)
    counts = [0] * len(classes)
    for lo, hi in zip(chain, chain[1:]):
        counts[classes.class_of[(lo, hi)]] += 1
    return DimensionVector(classes, counts)


def mtol_support(v):
    """The support of a dimension vector: the image of the vector in the
    maximal semilattice quotient of the free commutative monoid."""
    return v.support()


def meet_irreducible_for_class(L, class_id, con=None):
    """The largest congruence of L collapsing no prime interval of the
    given class.

    A congruence collapses either every interval of a projectivity
    class or none of them, and for a cover a < b the congruences
    separating a from b are closed under joins, so the maximum exists;
    it is completely meet-irreducible.
    """
    _require_modular(L)
    if con is None:
        con = congruence_lattice(L)
    a, b = projectivity_classes(L).representative(class_id)
    best = None
    for theta in con.congruences:
        if not theta.collapses(a, b):
            best = theta if best is None else best.join(theta)
    if best is None or best.collapses(a, b):
        raise AssertionError("no congruence separates a prime interval")
    return best


def class_congruence_bijection(L, con=None):
    """class id -> its congruence, verified to be a bijection onto the
    completely meet-irreducible congruences."""
    if con is None:
        con = congruence_lattice(L)
    classes = projectivity_classes(L)
    assignment = tuple(meet_irreducible_for_class(L, cid, con)
                       for cid in range(len(classes)))
    indices = [con.index_of(theta) for theta in assignment]
    if len(set(indices)) != len(indices):
        raise AssertionError("class -> congruence map is not injective")
    if set(indices) != set(con.meet_irreducible_indices()):
        raise AssertionError("class congruences miss some meet-irreducible")
    return assignment


def gdim_signature(L, con=None):
    """The signature (Z^X, u) of the dimension group of a bounded modular
    lattice of finite length: X indexes the projectivity classes (equally,
    the completely meet-irreducible congruences) and u(x) is the length
    of the quotient L/theta_x."""
    from .fields import GroupWithUnitSignature

    _require_modular(L)
    if con is None:
        con = congruence_lattice(L)
    assignment = class_congruence_bijection(L, con)
    unit = []
    for theta in assignment:
        Q, _ = quotient(L, theta)
        unit.append(length(Q, Q.bottom, Q.top))
    return GroupWithUnitSignature(len(assignment), unit)

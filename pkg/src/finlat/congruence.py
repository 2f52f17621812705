"""Congruences of finite lattices.

A congruence is stored as a partition of 0..n-1; ``labels[i]`` is the
smallest element of the block containing i, which makes the
representation canonical and hashable.

The congruence generated by a set of pairs is computed by closure with
a union-find: whenever a ~ b, force a^c ~ b^c and avc ~ bvc for every
c, to a fixpoint.  Joins of congruences need no such closure (the
transitive closure of a union of congruences is already compatible),
so the full congruence lattice is generated by join-closing the
principal congruences of covers at join-irreducible elements.
"""

from .errors import SizeCapExceeded
from .order import (
    FiniteLattice,
    LatticeHomomorphism,
    lattice_from_covers,
    transitive_reduction,
    sublattice,
    length,
)

DEFAULT_CON_CAP = 1 << 20


class Congruence:
    __slots__ = ("labels",)

    def __init__(self, labels):
        self.labels = tuple(labels)

    @property
    def size(self):
        return len(self.labels)

    def collapses(self, a, b):
        return self.labels[a] == self.labels[b]

    def is_identity(self):
        return all(l == i for i, l in enumerate(self.labels))

    def is_full(self):
        return all(l == 0 for l in self.labels)

    def block_count(self):
        return len(set(self.labels))

    def blocks(self):
        """Blocks as sorted tuples, ordered by their smallest element."""
        by_rep = {}
        for i, l in enumerate(self.labels):
            by_rep.setdefault(l, []).append(i)
        return tuple(tuple(by_rep[r]) for r in sorted(by_rep))

    def refines(self, other):
        """True iff every block of self lies inside a block of other."""
        ol = other.labels
        return all(ol[i] == ol[l] for i, l in enumerate(self.labels))

    def join(self, other):
        """Join in the congruence lattice = transitive closure of the union."""
        n = len(self.labels)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(n):
            for l in (self.labels[i], other.labels[i]):
                ri, rl = find(i), find(l)
                if ri != rl:
                    parent[max(ri, rl)] = min(ri, rl)
        return Congruence(tuple(find(i) for i in range(n)))

    def meet(self, other):
        """Meet = common refinement (intersection of the relations)."""
        n = len(self.labels)
        rep = {}
        labels = [0] * n
        for i in range(n):
            key = (self.labels[i], other.labels[i])
            labels[i] = rep.setdefault(key, i)
        return Congruence(tuple(labels))

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        parts = ["".join(f"{x}" if x < 10 else f"({x})" for x in b)
                 for b in self.blocks()]
        return "Congruence[" + "|".join(parts) + "]"


def identity_congruence(n):
    return Congruence(range(n))


def full_congruence(n):
    return Congruence([0] * n)


def congruence_generated(L, pairs):
    """Smallest congruence of L containing all given pairs."""
    n = L.size
    meet = L.meet_table
    join = L.join_table
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    work = []
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            work.append((a, b))
    while work:
        a, b = work.pop()
        ma, mb = meet[a], meet[b]
        ja, jb = join[a], join[b]
        for c in range(n):
            for x, y in ((ma[c], mb[c]), (ja[c], jb[c])):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
                    work.append((x, y))
    # canonical: label every element by the least member of its block
    least = {}
    for i in range(n):
        r = find(i)
        if r not in least:
            least[r] = i  # ascending scan: first hit is the least
    return Congruence(tuple(least[find(i)] for i in range(n)))


def principal_congruence(L, a, b):
    """The smallest congruence collapsing (a, b)."""
    return congruence_generated(L, [(a, b)])


def _principal_generators(L):
    """Principal congruences of the covers at join-irreducible elements.

    Every principal congruence of a cover a < b equals the principal
    congruence of (j*, j) for a join-irreducible j with j v a = b and
    j ^ a = j*, so these generate all of Con L under joins.
    """
    gens = set()
    for j in range(L.size):
        lower = L.lower_covers(j)
        if len(lower) == 1:
            gens.add(congruence_generated(L, [(lower[0], j)]))
    return gens


class CongruenceLattice:
    """All congruences of a finite lattice, ordered by refinement.

    ``congruences[i]`` is the i-th congruence in the canonical order
    (block count descending, then partition lexicographic), so index 0
    is the identity and the last index is the full congruence.
    ``lattice`` is the refinement order as a FiniteLattice on those
    indices.  For a finite lattice every congruence is compact, so this
    object plays both roles Con L and Conc L.
    """

    __slots__ = ("host", "congruences", "lattice", "_index")

    def __init__(self, host, congruences, lattice):
        self.host = host
        self.congruences = congruences
        self.lattice = lattice
        self._index = {c: i for i, c in enumerate(congruences)}

    def __len__(self):
        return len(self.congruences)

    def __getitem__(self, i):
        return self.congruences[i]

    def index_of(self, congruence):
        return self._index[congruence]

    @property
    def identity_index(self):
        return self.lattice.bottom

    @property
    def full_index(self):
        return self.lattice.top

    def join_irreducible_indices(self):
        return tuple(i for i in range(len(self.congruences))
                     if len(self.lattice.lower_covers(i)) == 1)

    def meet_irreducible_indices(self):
        """Completely meet-irreducible = exactly one upper cover (finite case)."""
        return tuple(i for i in range(len(self.congruences))
                     if len(self.lattice.upper_covers(i)) == 1)

    def atom_indices(self):
        return self.lattice.atoms()

    def __repr__(self):
        return f"CongruenceLattice(host={self.host.size}, count={len(self)})"


def congruence_lattice(L, cap=DEFAULT_CON_CAP):
    """All congruences of L, as a :class:`CongruenceLattice`.

    Generated as the join-closure of the principal congruences;
    raises :class:`SizeCapExceeded` if more than ``cap`` congruences
    appear.
    """
    def build():
        n = L.size
        found = {identity_congruence(n)}
        frontier = list(_principal_generators(L))
        found.update(frontier)
        while frontier:
            fresh = []
            for c in frontier:
                for d in list(found):
                    j = c.join(d)
                    if j not in found:
                        found.add(j)
                        fresh.append(j)
                        if len(found) > cap:
                            raise SizeCapExceeded("congruence count", cap)
            frontier = fresh
        congruences = tuple(sorted(found,
                                   key=lambda c: (-c.block_count(), c.labels)))
        k = len(congruences)
        covers = transitive_reduction(
            k, lambda i, j: congruences[i].refines(congruences[j]))
        lattice = lattice_from_covers(k, covers)
        return CongruenceLattice(L, congruences, lattice)

    if cap == DEFAULT_CON_CAP:
        return L.cached("congruence_lattice", build)
    return build()


def is_simple(L):
    """True iff L has exactly the two trivial congruences.

    Equivalent to: |L| >= 2 and every principal congruence of a cover
    is the full congruence (any congruence above the identity contains
    a cover pair by convexity).
    """
    if L.size < 2:
        return False
    return all(g.is_full() for g in _principal_generators(L))


def quotient(L, theta):
    """The quotient lattice L/theta and its projection homomorphism.

    Blocks are indexed by ascending least element.
    """
    blocks = theta.blocks()
    reps = [b[0] for b in blocks]
    block_of = {}
    for i, b in enumerate(blocks):
        for x in b:
            block_of[x] = i
    masks = []
    for b in blocks:
        m = 0
        for x in b:
            m |= 1 << x
        masks.append(m)

    def blk_leq(i, j):
        # some x in block i lies below some y in block j
        return any(L.poset.up_mask(x) & masks[j] for x in blocks[i])

    k = len(blocks)
    covers = transitive_reduction(k, blk_leq)
    labels = None
    if L.labels:
        labels = ["+".join(L.labels[x] for x in b) for b in blocks]
    Q = lattice_from_covers(k, covers, labels=labels)
    proj = LatticeHomomorphism(L, Q, [block_of[x] for x in range(L.size)])
    return Q, proj


class ConcMap:
    """The action of Con on a lattice homomorphism f: A -> B.

    Sends each congruence of A to the congruence of B generated by the
    pairs (f(x), f(y)) with x ~ y.  Always a 0-preserving
    join-homomorphism between the congruence lattices; this is verified
    at construction.
    """

    __slots__ = ("hom", "source_con", "target_con", "indices")

    def __init__(self, hom, source_con, target_con, indices):
        self.hom = hom
        self.source_con = source_con
        self.target_con = target_con
        self.indices = tuple(indices)
        sl = source_con.lattice
        tl = target_con.lattice
        ix = self.indices
        if ix[sl.bottom] != tl.bottom:
            raise AssertionError("Con map must preserve the identity congruence")
        for i in range(len(ix)):
            for j in range(i):
                if ix[sl.join(i, j)] != tl.join(ix[i], ix[j]):
                    raise AssertionError("Con map failed to preserve a join")

    def __call__(self, i):
        return self.indices[i]

    def apply(self, congruence):
        return self.target_con[self.indices[self.source_con.index_of(congruence)]]

    def is_injective(self):
        return len(set(self.indices)) == len(self.indices)

    def is_surjective(self):
        return len(set(self.indices)) == len(self.target_con)

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def image_is_ideal(self):
        """Is the image a down-set closed under joins in the target?"""
        tl = self.target_con.lattice
        img = set(self.indices)
        for i in img:
            for j in range(len(self.target_con)):
                if tl.leq(j, i) and j not in img:
                    return False
        return all(tl.join(i, j) in img for i in img for j in img)

    def compose(self, other):
        if other.target_con is not self.source_con:
            raise ValueError("composition mismatch")
        return ConcMap(self.hom.compose(other.hom),
                       other.source_con, self.target_con,
                       tuple(self.indices[other.indices[i]]
                             for i in range(len(other.indices))))


def conc_of_hom(f, source_con=None, target_con=None):
    """Compute Con f for a lattice homomorphism f."""
    A, B = f.source, f.target
    if source_con is None:
        source_con = congruence_lattice(A)
    if target_con is None:
        target_con = congruence_lattice(B)
    indices = []
    for alpha in source_con.congruences:
        pairs = []
        for block in alpha.blocks():
            for x in block[1:]:
                pairs.append((f(block[0]), f(x)))
        beta = congruence_generated(B, pairs)
        indices.append(target_con.index_of(beta))
    return ConcMap(f, source_con, target_con, indices)


def is_congruence_preserving_extension(K, sub_elements):
    """Does the sublattice of K on ``sub_elements`` have the same
    congruence lattice as K (via the inclusion map)?"""
    sub, incl = sublattice(K, sub_elements)
    cmap = conc_of_hom(incl, target_con=congruence_lattice(K))
    return cmap.is_bijective()


def con_interval_above(con, theta_index):
    """The interval [theta, full] of a congruence lattice, as a lattice."""
    lat = con.lattice
    elems = [i for i in range(len(con)) if lat.leq(theta_index, i)]
    sub, _ = sublattice(lat, elems)
    return sub

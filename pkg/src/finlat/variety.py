"""Variety membership at desk scale.

``in_variety(A, K)`` decides whether a finite lattice A lies in the
variety generated by a finite lattice K.  For lattice varieties
(congruence-distributive, finitely generated) Jónsson's lemma reduces
this to: every subdirectly irreducible factor of A is a homomorphic
image of a sublattice of K — no powers needed.

The homomorphic-image search assigns images in K to a minimal
generating set of the factor and grows the generated sublattice while
propagating the factor-element label forced on each new element (a
homomorphism is determined by generator images).  A label conflict
kills the branch, so the search is exact: it succeeds iff some
sublattice of K maps onto the factor.  Interchangeable generators
(swappable by an automorphism fixing the others) are forced into
ascending image order to cut the symmetric branches.
"""

from .errors import SearchCapExceeded
from .order import (
    LatticeHomomorphism,
    _map_search,
    sublattice,
)
from .congruence import (
    Congruence,
    congruence_lattice,
    quotient,
)

DEFAULT_HS_CAP = 30


def find_embedding(A, B, require_0=False, require_1=False):
    """An injective meet/join-preserving map A -> B, or None.

    Backtracking assigns source elements in index order with images
    ascending, so the first embedding found has the lexicographically
    smallest image tuple.
    """
    for image in _map_search(A, B, iso=False,
                             require_0=require_0, require_1=require_1):
        return LatticeHomomorphism(A, B, image, trusted=True)
    return None


def whitman_check(L):
    """Exhaustive check of Whitman's condition.

    Returns (True, None), or (False, (a, b, c, d)) where
    a^b <= cvd but none of a <= cvd, b <= cvd, a^b <= c, a^b <= d holds.
    """
    n = L.size
    meet = L.meet_table
    join = L.join_table
    leq = L.leq
    for a in range(n):
        for b in range(n):
            m = meet[a][b]
            for c in range(n):
                if leq(m, c):
                    continue
                for d in range(n):
                    if leq(m, d):
                        continue
                    j = join[c][d]
                    if leq(m, j) and not leq(a, j) and not leq(b, j):
                        return False, (a, b, c, d)
    return True, None


def subdirect_decomposition(A, con=None):
    """The quotients of A by its completely meet-irreducible congruences.

    Returns a list of (congruence, quotient lattice, projection); the
    product of the quotients embeds A (the congruences meet to the
    identity), which is verified.
    """
    if con is None:
        con = congruence_lattice(A)
    out = []
    meet_all = None
    for i in con.meet_irreducible_indices():
        theta = con[i]
        Q, proj = quotient(A, theta)
        out.append((theta, Q, proj))
        meet_all = theta if meet_all is None else meet_all.meet(theta)
    if out and not meet_all.is_identity():
        raise AssertionError("meet-irreducible congruences do not separate A")
    return out


def minimal_generating_set(L):
    """A generating subset made inclusion-minimal by greedy removal,
    scanning candidates in descending index order (deterministic)."""
    from .order import closure_under_ops

    gens = list(range(L.size))
    for x in sorted(gens, reverse=True):
        trial = [g for g in gens if g != x]
        if trial and closure_under_ops(L, trial) == tuple(range(L.size)):
            gens = trial
    return tuple(gens)


def _swappable_generator_pairs(F, gens):
    """Pairs of generator positions exchangeable by an automorphism of F
    fixing the remaining generators pointwise."""
    pairs = set()
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            forced = {g: g for g in gens}
            forced[gens[i]] = gens[j]
            forced[gens[j]] = gens[i]
            for _ in _map_search(F, F, iso=True, forced=forced):
                pairs.add((i, j))
                break
    return pairs


class FactorSearch:
    """Search for a sublattice of K mapping onto the factor F."""

    def __init__(self, F, K):
        self.F = F
        self.K = K
        self.gens = minimal_generating_set(F)
        self.ascending = _swappable_generator_pairs(F, self.gens)
        self.nodes = 0

    def _close(self, assigned):
        """Close the assigned generator images under meet/join, labelling
        each new element with the forced F-element.  Returns the label
        map (K element -> F element) or None on conflict."""
        F, K = self.F, self.K
        label = {}
        for g, t in assigned:
            if t in label and label[t] != g:
                return None
            label[t] = g
        queue = list(label)
        elems = list(label)
        while queue:
            x = queue.pop()
            lx = label[x]
            for y in list(elems):
                ly = label[y]
                for kz, fz in ((K.meet(x, y), F.meet(lx, ly)),
                               (K.join(x, y), F.join(lx, ly))):
                    if kz in label:
                        if label[kz] != fz:
                            return None
                    else:
                        label[kz] = fz
                        elems.append(kz)
                        queue.append(kz)
        return label

    def run(self):
        """Return a full label map on success, else None."""
        F, K = self.F, self.K
        gens = self.gens
        m = len(gens)

        def walk(pos, assigned):
            if pos == m:
                label = self._close(assigned)
                if label is not None:
                    return label
                return None
            for t in range(K.size):
                if any(i < pos and assigned[i][1] >= t
                       for i, j in self.ascending if j == pos):
                    continue
                if any(t == prev for _, prev in assigned):
                    # one K-element cannot carry two generator labels
                    # unless the generators coincide, which they do not
                    continue
                self.nodes += 1
                trial = assigned + [(gens[pos], t)]
                if self._close(trial) is None:
                    continue
                result = walk(pos + 1, trial)
                if result is not None:
                    return result
            return None

        return walk(0, [])


class FactorCertificate:
    """Evidence for one subdirectly irreducible factor."""

    __slots__ = ("found", "factor", "sublattice_elements", "kernel", "nodes")

    def __init__(self, found, factor, sublattice_elements, kernel, nodes):
        self.found = found
        self.factor = factor
        self.sublattice_elements = sublattice_elements
        self.kernel = kernel
        self.nodes = nodes

    def __repr__(self):
        if self.found:
            return (f"FactorCertificate(sublattice={self.sublattice_elements},"
                    f" blocks={self.kernel.block_count()})")
        return f"FactorCertificate(refuted after {self.nodes} nodes)"


class VarietyCertificate:
    __slots__ = ("member", "factors")

    def __init__(self, member, factors):
        self.member = member
        self.factors = factors

    def __repr__(self):
        return f"VarietyCertificate(member={self.member})"


def in_variety(A, K, cap=DEFAULT_HS_CAP):
    """Is A in the variety generated by K?  Both finite lattices.

    Returns (bool, VarietyCertificate).  True iff each subdirectly
    irreducible factor of A is a homomorphic image of a sublattice of
    K; each positive factor certificate carries the sublattice elements
    and the kernel congruence, each refutation the node count of the
    exhausted search.  Raises :class:`SearchCapExceeded` when |K|
    exceeds ``cap``.
    """
    if K.size > cap:
        raise SearchCapExceeded("generating lattice size", K.size, cap)
    factors = []
    seen = []
    from .order import find_isomorphism

    for theta, Q, _ in subdirect_decomposition(A):
        if any(find_isomorphism(Q, prev) for prev in seen):
            continue
        seen.append(Q)
        factors.append(Q)

    certs = []
    member = True
    for Q in factors:
        search = FactorSearch(Q, K)
        label = search.run()
        if label is None:
            member = False
            certs.append(FactorCertificate(False, Q, None, None, search.nodes))
            continue
        elems = tuple(sorted(label))
        sub, _ = sublattice(K, elems)
        # kernel of the labelling = the congruence of the sublattice
        # whose quotient is Q
        first_of = {}
        kernel_labels = []
        for i, e in enumerate(elems):
            v = label[e]
            kernel_labels.append(first_of.setdefault(v, i))
        kernel = Congruence(kernel_labels)
        QQ, _ = quotient(sub, kernel)
        if find_isomorphism(QQ, Q) is None:
            raise AssertionError("labelling kernel does not reproduce the factor")
        certs.append(FactorCertificate(True, Q, elems, kernel, search.nodes))
    return member, VarietyCertificate(member, certs)


def max_meet_u_family(K, u):
    """The largest m admitting b_0..b_{m-1} > u with b_i ^ b_j = u for
    all i < j, plus one witness family (branch-and-bound clique search)."""
    verts = [x for x in range(K.size) if K.leq(u, x) and x != u]
    adj = {x: set() for x in verts}
    for i, x in enumerate(verts):
        for y in verts[:i]:
            if K.meet(x, y) == u:
                adj[x].add(y)
                adj[y].add(x)
    best = []

    def grow(current, candidates):
        nonlocal best
        if len(current) > len(best):
            best = list(current)
        for i, x in enumerate(candidates):
            if len(current) + len(candidates) - i <= len(best):
                return
            grow(current + [x], [y for y in candidates[i + 1:] if y in adj[x]])

    grow([], verts)
    return len(best), tuple(best)

"""Poset-indexed diagrams of lattices and semilattices.

The index poset I_n has as elements the subsets of {0..n-1} of size at
most two together with the full set, ordered by inclusion.  The
canonical diagram over it assigns to each subset P the sublattice of
the length-two lattice M_n spanned by {0, 1} and the atoms named by P,
with inclusions as transitions.  Applying Con nodewise and edgewise
turns a lattice diagram into a diagram of join-semilattices with zero.

``extract_mn_from_lifting`` reverses this: from any lattice diagram B
over I_n whose singleton nodes are three-element chains and which has
the same Con diagram (witnessed by a natural equivalence), it produces
an embedding of M_n into the top node, by reading off the middle
elements of the chains and checking the forced meet/join relations.
"""

from .errors import HypothesisViolated, NotComparable, PreconditionFailed
from .order import (
    FinitePoset,
    FiniteLattice,
    LatticeHomomorphism,
    transitive_reduction,
    all_isomorphisms,
    find_isomorphism,
    sublattice,
    length,
)
from .congruence import (
    congruence_lattice,
    principal_congruence,
    conc_of_hom,
    is_congruence_preserving_extension,
)
from .constructions import m_n, boolean


class IndexPoset:
    """A finite poset whose elements carry subset labels (for I_n)."""

    __slots__ = ("poset", "subsets", "n", "_where")

    def __init__(self, poset, subsets, n):
        self.poset = poset
        self.subsets = tuple(frozenset(s) for s in subsets)
        self.n = n
        self._where = {s: i for i, s in enumerate(self.subsets)}

    @property
    def size(self):
        return self.poset.size

    def index_of(self, subset):
        return self._where[frozenset(subset)]

    def leq(self, p, q):
        return self.poset.leq(p, q)

    def comparable_pairs(self):
        """All (p, q) with p <= q, including p == q."""
        return [(p, q) for p in range(self.size) for q in range(self.size)
                if self.poset.leq(p, q)]

    def __repr__(self):
        return f"IndexPoset(n={self.n}, size={self.size})"


def build_In(n):
    """The index poset I_n: subsets of {0..n-1} of size <= 2, plus the
    full set, ordered by inclusion."""
    if n < 3:
        raise ValueError("build_In needs n >= 3")
    universe = frozenset(range(n))
    subsets = [frozenset()]
    subsets += [frozenset([x]) for x in range(n)]
    subsets += [frozenset(c) for c in _pairs(n)]
    subsets.append(universe)
    subsets = sorted(set(subsets), key=lambda s: (len(s), tuple(sorted(s))))
    k = len(subsets)
    covers = transitive_reduction(k, lambda i, j: subsets[i] <= subsets[j])
    labels = ["{" + ",".join(str(x) for x in sorted(s)) + "}" for s in subsets]
    poset = FinitePoset(k, covers, labels=labels)
    return IndexPoset(poset, subsets, n)


def _pairs(n):
    for x in range(n):
        for y in range(x + 1, n):
            yield (x, y)


class LatticeDiagram:
    """Lattices indexed by a poset, with commuting transition maps.

    ``maps[(p, q)]`` is a LatticeHomomorphism for every p <= q;
    identities and composition are verified exhaustively.
    """

    __slots__ = ("index", "nodes", "maps")

    def __init__(self, index, nodes, maps):
        self.index = index
        self.nodes = tuple(nodes)
        self.maps = dict(maps)
        self._validate(lambda f: f.violation() is None)

    def _validate(self, is_morphism):
        idx = self.index
        for p, q in idx.comparable_pairs():
            if (p, q) not in self.maps:
                raise ValueError(f"missing transition map {p} -> {q}")
            f = self.maps[(p, q)]
            if f.source is not self.nodes[p] or f.target is not self.nodes[q]:
                raise ValueError(f"transition {p} -> {q} has wrong endpoints")
            if not is_morphism(f):
                raise ValueError(f"transition {p} -> {q} is not a morphism")
            if p == q and any(f(x) != x for x in range(self.nodes[p].size)):
                raise ValueError(f"map at ({p}, {p}) is not the identity")
        for p, q in idx.comparable_pairs():
            for r in range(idx.size):
                if idx.leq(q, r):
                    fpq, fqr, fpr = (self.maps[(p, q)], self.maps[(q, r)],
                                     self.maps[(p, r)])
                    for x in range(self.nodes[p].size):
                        if fqr(fpq(x)) != fpr(x):
                            raise ValueError(
                                f"transitions do not commute on {p}<={q}<={r}")

    def node(self, subset):
        return self.nodes[self.index.index_of(subset)]

    def map(self, p, q):
        return self.maps[(p, q)]

    def __repr__(self):
        return f"{type(self).__name__}(index={self.index!r})"


class JoinHomomorphism:
    """A join- and zero-preserving map between finite lattices (used as
    the transition maps of semilattice diagrams)."""

    __slots__ = ("source", "target", "image")

    def __init__(self, source, target, image, trusted=False):
        self.source = source
        self.target = target
        self.image = tuple(image)
        if not trusted and self.violation() is not None:
            raise ValueError(f"not a join homomorphism: {self.violation()}")

    def violation(self):
        f = self.image
        s, t = self.source, self.target
        if f[s.bottom] != t.bottom:
            return ("zero",)
        for a in range(s.size):
            for b in range(a):
                if f[s.join(a, b)] != t.join(f[a], f[b]):
                    return ("join", a, b)
        return None

    def __call__(self, x):
        return self.image[x]

    def __repr__(self):
        return f"JoinHomomorphism({self.source.size}->{self.target.size})"


class SemilatticeDiagram(LatticeDiagram):
    """Join-semilattices with zero, indexed by a poset.

    Nodes are finite lattices used as join-semilattice carriers; maps
    preserve joins and zero only.  ``congruence_lattices`` is set when
    the diagram arises as Con of a lattice diagram.
    """

    __slots__ = ("congruence_lattices",)

    def __init__(self, index, nodes, maps, congruence_lattices=None):
        self.index = index
        self.nodes = tuple(nodes)
        self.maps = dict(maps)
        self.congruence_lattices = congruence_lattices
        self._validate(lambda f: f.violation() is None)


def build_A_diagram(n):
    """The canonical diagram over I_n: node P is the sublattice of M_n
    on {0, 1} and the atoms indexed by P; transitions are inclusions.

    Node element order: 0, then the named atoms ascending, then 1 — so
    in node P the atom a_x sits at index sorted(P).index(x) + 1.
    """
    idx = build_In(n)
    mn = m_n(n)
    ambient = []      # node id -> ambient M_n elements, ascending
    nodes = []
    for s in idx.subsets:
        elems = [0] + [x + 1 for x in sorted(s)] + [n + 1]
        sub, _ = sublattice(mn, elems)
        ambient.append(elems)
        nodes.append(sub)
    maps = {}
    for p, q in idx.comparable_pairs():
        pos_q = {e: i for i, e in enumerate(ambient[q])}
        image = [pos_q[e] for e in ambient[p]]
        maps[(p, q)] = LatticeHomomorphism(nodes[p], nodes[q], image)
    return LatticeDiagram(idx, nodes, maps)


def atom_index_in_node(index_poset, node_id, x):
    """Index of the atom named x inside node ``node_id`` of the canonical
    diagram (see :func:`build_A_diagram`)."""
    s = index_poset.subsets[node_id]
    if x not in s:
        raise ValueError(f"atom {x} not in node subset {set(s)}")
    return sorted(s).index(x) + 1


def conc_diagram(D):
    """Apply Con to every node and transition of a lattice diagram."""
    cons = [congruence_lattice(L) for L in D.nodes]
    nodes = [c.lattice for c in cons]
    maps = {}
    for p, q in D.index.comparable_pairs():
        cmap = conc_of_hom(D.maps[(p, q)], source_con=cons[p],
                           target_con=cons[q])
        maps[(p, q)] = JoinHomomorphism(nodes[p], nodes[q], cmap.indices,
                                        trusted=True)
    return SemilatticeDiagram(D.index, nodes, maps,
                              congruence_lattices=tuple(cons))


class NaturalTransformation:
    """A family of per-node maps between two diagrams on the same index
    poset, with every square commuting.  ``components[p]`` maps node-p
    element indices of the source to those of the target.  For a natural
    equivalence every component is a join-isomorphism."""

    __slots__ = ("source", "target", "components", "is_equivalence")

    def __init__(self, source, target, components):
        if source.index.size != target.index.size:
            raise ValueError("diagrams indexed by different posets")
        self.source = source
        self.target = target
        self.components = tuple(tuple(c) for c in components)
        iso = True
        for p in range(source.index.size):
            comp = self.components[p]
            sl, tl = source.nodes[p], target.nodes[p]
            if len(comp) != sl.size:
                raise ValueError(f"component {p} has wrong length")
            JoinHomomorphism(sl, tl, comp)  # validates join/zero preservation
            if len(set(comp)) != tl.size:
                iso = False
        self.is_equivalence = iso
        for p, q in source.index.comparable_pairs():
            f = source.maps[(p, q)]
            g = target.maps[(p, q)]
            cp, cq = self.components[p], self.components[q]
            for x in range(source.nodes[p].size):
                if cq[f(x)] != g(cp[x]):
                    raise ValueError(f"square ({p}, {q}) does not commute")

    def component(self, p):
        return self.components[p]

    def __repr__(self):
        kind = "equivalence" if self.is_equivalence else "transformation"
        return f"NaturalTransformation({kind}, nodes={len(self.components)})"


def find_natural_equivalence(D1, D2):
    """A natural equivalence D1 -> D2, or None.

    Nodes are processed in index order (a linear extension, small
    subsets first); per-node isomorphisms are enumerated
    lexicographically and pruned against the commuting squares with the
    already-assigned nodes.
    """
    idx = D1.index
    if idx.size != D2.index.size:
        return None
    k = idx.size
    chosen = [None] * k

    def squares_ok(p):
        for q in range(p + 1):
            if chosen[q] is None:
                continue
            for lo, hi in ((q, p), (p, q)):
                if lo != hi and idx.leq(lo, hi):
                    f = D1.maps[(lo, hi)]
                    g = D2.maps[(lo, hi)]
                    if any(chosen[hi][f(x)] != g(chosen[lo][x])
                           for x in range(D1.nodes[lo].size)):
                        return False
        return True

    def walk(p):
        if p == k:
            return NaturalTransformation(D1, D2, chosen)
        for iso in all_isomorphisms(D1.nodes[p], D2.nodes[p]):
            chosen[p] = iso.image
            if squares_ok(p):
                result = walk(p + 1)
                if result is not None:
                    return result
            chosen[p] = None
        return None

    return walk(0)


# ---------------------------------------------------------------------------
# The five forced-relation checks and the M_n extraction

class LiftingConstraintReport:
    """Outcome of the five implication checks at one instantiation."""

    __slots__ = ("items",)

    def __init__(self, items):
        self.items = dict(items)   # item number -> (hypothesis, conclusion)

    def all_implications_hold(self):
        return all((not hyp) or concl for hyp, concl in self.items.values())

    def __repr__(self):
        return f"LiftingConstraintReport({self.items})"


def _theta_index(con, L, a, b):
    return con.index_of(principal_congruence(L, a, b))


def check_lifting_constraints(B, xi, u, v, x, y, b_x, b_y, c):
    """Check the five forced relations for a lifting of the canonical
    Con diagram.

    B: lattice diagram over I_n with injective transitions; xi: natural
    equivalence from Con of the canonical diagram to Con of B; u < v in
    the bottom node; x != y atom names; b_x, b_y elements of the
    singleton nodes {x}, {y} lying in [u, v] there; c is 0 or 1 (which
    bound of the canonical nodes the hypotheses use).

    Returns a report mapping item 1..5 to (hypothesis holds, conclusion
    holds); on a genuine lifting every hypothesis that holds has its
    conclusion hold.
    """
    if x == y:
        raise ValueError("x and y must be distinct")
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    concA = xi.source
    concB = xi.target
    if concA.congruence_lattices is None or concB.congruence_lattices is None:
        raise ValueError("xi must connect Con diagrams")
    idx = B.index
    n = idx.n
    p_bot = idx.index_of(frozenset())
    p_x = idx.index_of(frozenset([x]))
    p_y = idx.index_of(frozenset([y]))
    p_xy = idx.index_of(frozenset([x, y]))
    A = ConcSides(concA, concB, B, xi)

    if not B.nodes[p_bot].leq(u, v) or u == v:
        raise ValueError("need u < v in the bottom node")

    def into(p, q, e):
        return B.maps[(p, q)](e)

    u_x, v_x = into(p_bot, p_x, u), into(p_bot, p_x, v)
    u_y, v_y = into(p_bot, p_y, u), into(p_bot, p_y, v)
    Bx, By = B.nodes[p_x], B.nodes[p_y]
    if not (Bx.leq(u_x, b_x) and Bx.leq(b_x, v_x)):
        raise ValueError("b_x must lie in [u, v] of its node")
    if not (By.leq(u_y, b_y) and By.leq(b_y, v_y)):
        raise ValueError("b_y must lie in [u, v] of its node")

    u_p = into(p_bot, p_xy, u)
    v_p = into(p_bot, p_xy, v)
    bx_p = into(p_x, p_xy, b_x)
    by_p = into(p_y, p_xy, b_y)
    Bp = B.nodes[p_xy]

    hyp_low_x = A.matches_singleton(p_x, x, c, u_x, b_x)
    hyp_low_y = A.matches_singleton(p_y, y, c, u_y, b_y)
    hyp_high_x = A.matches_singleton(p_x, x, c, b_x, v_x)
    hyp_high_y = A.matches_singleton(p_y, y, c, b_y, v_y)

    items = {}
    items[1] = (hyp_low_x, A.matches_pair(p_xy, x, c, u_p, bx_p))
    items[2] = (hyp_low_x and hyp_low_y, Bp.meet(bx_p, by_p) == u_p)
    items[3] = (hyp_high_x, A.matches_pair(p_xy, x, c, bx_p, v_p))
    items[4] = (hyp_high_x and hyp_high_y, Bp.join(bx_p, by_p) == v_p)
    items[5] = (hyp_low_x and hyp_high_y, Bp.leq(bx_p, by_p))
    return LiftingConstraintReport(items)


class ConcSides:
    """Helper pairing the canonical Con diagram with Con of B via xi."""

    def __init__(self, concA, concB, B, xi):
        self.concA = concA
        self.concB = concB
        self.B = B
        self.xi = xi

    def _xi_image(self, p, node_a, c, x):
        """xi_p(theta(c, a_x)) as an index of Con(B_p)."""
        conA = self.concA.congruence_lattices[p]
        La = conA.host
        idx = self.concA.index.subsets[p]
        a_pos = sorted(idx).index(x) + 1
        c_elem = La.bottom if c == 0 else La.top
        i = _theta_index(conA, La, c_elem, a_pos)
        return self.xi.components[p][i]

    def matches_singleton(self, p, x, c, lo, hi):
        conB = self.concB.congruence_lattices[p]
        return (_theta_index(conB, self.B.nodes[p], lo, hi)
                == self._xi_image(p, p, c, x))

    def matches_pair(self, p, x, c, lo, hi):
        conB = self.concB.congruence_lattices[p]
        return (_theta_index(conB, self.B.nodes[p], lo, hi)
                == self._xi_image(p, p, c, x))


def extract_mn_from_lifting(B, xi):
    """Produce a verified embedding of M_n into the top node of B.

    B must be a lattice diagram over I_n whose singleton nodes are
    three-element chains and whose bottom node has at least two
    elements; xi a natural equivalence from Con of the canonical
    diagram onto Con of B.  The embedding sends the atoms of M_n to the
    images of the chain middles in the top node.
    """
    idx = B.index
    n = idx.n
    concA, concB = xi.source, xi.target
    if concA.congruence_lattices is None or concB.congruence_lattices is None:
        raise ValueError("xi must connect Con diagrams")
    if not xi.is_equivalence:
        raise HypothesisViolated("xi", "not a natural equivalence")
    p_bot = idx.index_of(frozenset())
    p_top = idx.index_of(frozenset(range(n)))
    B0 = B.nodes[p_bot]
    if B0.size < 2:
        raise HypothesisViolated("bottom node", "no pair u < v")
    u, v = B0.bottom, B0.top

    middles = {}
    low_side = set()    # atoms whose low interval matches theta(0, a_x)
    high_side = set()
    for x in range(n):
        p = idx.index_of(frozenset([x]))
        Bx = B.nodes[p]
        if Bx.size != 3 or len(Bx.covers) != 2:
            raise HypothesisViolated(f"node {{{x}}}",
                                     "must be a three-element chain")
        u_x = B.maps[(p_bot, p)](u)
        v_x = B.maps[(p_bot, p)](v)
        if u_x != Bx.bottom or v_x != Bx.top:
            raise HypothesisViolated(f"node {{{x}}}",
                                     "u, v must map to the chain ends")
        (b_x,) = [e for e in range(3) if e not in (Bx.bottom, Bx.top)]
        middles[x] = b_x

        conA_x = concA.congruence_lattices[p]
        conB_x = concB.congruence_lattices[p]
        La = conA_x.host
        a_pos = atom_index_in_node(idx, p, x)
        theta0 = _theta_index(conA_x, La, La.bottom, a_pos)
        image = xi.components[p][theta0]
        if image == _theta_index(conB_x, Bx, u_x, b_x):
            low_side.add(x)
        elif image == _theta_index(conB_x, Bx, b_x, v_x):
            high_side.add(x)
        else:
            raise AssertionError("image of an atom congruence is not "
                                 "a chain atom congruence")

    # Prefer the low side; the mixed case cannot survive a genuine
    # natural equivalence (the forced relations chain the middles into
    # a cycle), so its absence is asserted.
    major = low_side if len(low_side) >= len(high_side) else high_side
    assert len(major) >= 2
    assert len(major) == n, (
        "mixed atom orientation contradicts the natural equivalence")

    top = B.nodes[p_top]
    u_t = B.maps[(p_bot, p_top)](u)
    v_t = B.maps[(p_bot, p_top)](v)
    b_t = {x: B.maps[(idx.index_of(frozenset([x])), p_top)](middles[x])
           for x in range(n)}
    c = 0 if major is low_side else 1
    for x in range(n):
        for y in range(x + 1, n):
            report = check_lifting_constraints(
                B, xi, u, v, x, y, middles[x], middles[y], c)
            assert report.items[2][1], "forced meet fails"
            assert report.items[4][1], "forced join fails"
            assert top.meet(b_t[x], b_t[y]) == u_t
            assert top.join(b_t[x], b_t[y]) == v_t

    mn = m_n(n)
    image = [u_t] + [b_t[x] for x in range(n)] + [v_t]
    hom = LatticeHomomorphism(mn, top, image)
    if not hom.is_injective():
        raise AssertionError("extracted map is not injective")
    return hom


def find_chain_cpe(L, u, v):
    """A three-element chain {u, x, v} of which L is a
    congruence-preserving extension.

    Preconditions (raising :class:`PreconditionFailed` by name):
    ``length``: the lattice has length at most 3; ``comparable``:
    u < v; ``theta``: the principal congruence of (u, v) is the full
    congruence; ``con``: Con L is Boolean of rank 2.

    The construction follows the length split: in a length-2 interval
    any middle element works (the least is chosen); in the length-3
    case a diamond is located, its短 side completed to a maximal chain,
    and the middle of that chain is the witness.
    """
    if length(L, L.bottom, L.top) > 3:
        raise PreconditionFailed("length", "lattice has length > 3")
    if not L.leq(u, v) or u == v:
        raise PreconditionFailed("comparable", "need u < v")
    if not principal_congruence(L, u, v).is_full():
        raise PreconditionFailed("theta", "theta(u, v) is not the full congruence")
    con = congruence_lattice(L)
    if len(con) != 4 or find_isomorphism(con.lattice, boolean(2)) is None:
        raise PreconditionFailed("con", "Con L is not Boolean of rank 2")

    lh = length(L, u, v)
    if lh == 2:
        mids = [w for w in L.interval_elements(u, v) if w not in (u, v)]
        for x in mids:
            if L.leq(u, x) and L.leq(x, v):
                if is_congruence_preserving_extension(L, (u, x, v)):
                    return (u, x, v)
        raise AssertionError("no middle element works at length 2")

    # length 3: u, v are the bounds of L
    assert u == L.bottom and v == L.top
    emb = find_embedding(_M3, L)
    assert emb is not None, "a length-3 witness needs a diamond"
    a, b = emb(0), emb(_M3.top)
    assert length(L, a, b) == 2
    if b != v:
        x = b
    else:
        assert a != u
        x = a
    assert is_congruence_preserving_extension(L, (u, x, v))
    return (u, x, v)


from .variety import find_embedding  # noqa: E402  (cycle-free tail import)

_M3 = m_n(3)

"""Finite posets and lattices.

Elements are dense integer indices 0..size-1.  A poset is given by its
cover relation (the Hasse diagram); the full order is derived as the
reflexive-transitive closure and stored as per-element bitmasks, so all
order queries are O(1) big-int operations.  A lattice additionally
carries precomputed meet and join tables.

Everything here is immutable after construction and safe to share.
"""

from .errors import (
    CyclicCovers,
    NotACoverRelation,
    NotALattice,
    NotComparable,
    ChainLimitExceeded,
)

DEFAULT_CHAIN_LIMIT = 10**6


class FinitePoset:
    """A finite poset given by its cover relation.

    ``covers`` is a set of (lower, upper) pairs and must be exactly the
    covering relation: acyclic, and with no element strictly between the
    endpoints of any pair.
    """

    __slots__ = ("size", "covers", "labels", "_down", "_up",
                 "heights", "depths", "_topo")

    def __init__(self, size, covers, labels=None):
        if size < 0:
            raise ValueError("size must be >= 0")
        covers = tuple(sorted(set((int(a), int(b)) for a, b in covers)))
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size):
                raise ValueError(f"cover {a, b} out of range 0..{size - 1}")
            if a == b:
                raise CyclicCovers((a, b))
        self.size = size
        self.covers = covers
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != size:
                raise ValueError("labels length must equal size")
        self.labels = labels

        ups = [[] for _ in range(size)]     # ups[a] = elements covering a
        downs = [[] for _ in range(size)]   # downs[b] = lower covers of b
        for a, b in covers:
            ups[a].append(b)
            downs[b].append(a)

        # Kahn topological sort; detects cycles.
        indeg = [len(downs[i]) for i in range(size)]
        topo = [i for i in range(size) if indeg[i] == 0]
        head = 0
        while head < len(topo):
            x = topo[head]
            head += 1
            for y in ups[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    topo.append(y)
        if len(topo) != size:
            stuck = [i for i in range(size) if indeg[i] > 0]
            raise CyclicCovers(tuple(stuck[:4]))
        self._topo = tuple(topo)

        down = [0] * size   # down[b]: bitmask of {a : a <= b}
        heights = [0] * size
        for x in topo:
            m = 1 << x
            h = 0
            for a in downs[x]:
                m |= down[a]
                if heights[a] + 1 > h:
                    h = heights[a] + 1
            down[x] = m
            heights[x] = h
        up = [0] * size
        depths = [0] * size
        for x in reversed(topo):
            m = 1 << x
            d = 0
            for b in ups[x]:
                m |= up[b]
                if depths[b] + 1 > d:
                    d = depths[b] + 1
            up[x] = m
            depths[x] = d
        self._down = tuple(down)
        self._up = tuple(up)
        self.heights = tuple(heights)
        self.depths = tuple(depths)

        # Each declared cover must be a genuine cover.
        for a, b in covers:
            between = down[b] & up[a] & ~(1 << a) & ~(1 << b)
            if between:
                raise NotACoverRelation((a, b), between.bit_length() - 1)

    def leq(self, a, b):
        return bool((self._down[b] >> a) & 1)

    def down_mask(self, b):
        return self._down[b]

    def up_mask(self, a):
        return self._up[a]

    def lower_covers(self, b):
        return tuple(a for a, bb in self.covers if bb == b)

    def upper_covers(self, a):
        return tuple(b for aa, b in self.covers if aa == a)

    def minimal_elements(self):
        return tuple(x for x in range(self.size)
                     if self._down[x] == (1 << x))

    def maximal_elements(self):
        return tuple(x for x in range(self.size)
                     if self._up[x] == (1 << x))

    def dual(self):
        return FinitePoset(self.size, [(b, a) for a, b in self.covers],
                           labels=self.labels)

    def label_of(self, x):
        return self.labels[x] if self.labels else str(x)

    def __repr__(self):
        return f"FinitePoset(size={self.size}, covers={len(self.covers)})"


def transitive_reduction(size, leq):
    """Cover pairs of the order given by the predicate ``leq(a, b)``."""
    down = []
    for b in range(size):
        m = 0
        for a in range(size):
            if a != b and leq(a, b):
                m |= 1 << a
        down.append(m)
    covers = []
    for b in range(size):
        d = down[b]
        for a in _bits(d):
            # a is a cover of b iff nothing in the strict down-set of b
            # lies strictly above a
            if not any(c != a and (down[c] >> a) & 1 for c in _bits(d)):
                covers.append((a, b))
    return sorted(covers)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """A finite lattice: validated poset plus total meet/join tables.

    Use :func:`validate_lattice` to construct one; the constructor here
    trusts its arguments.
    """

    __slots__ = ("poset", "meet_table", "join_table", "bottom", "top", "_cache")

    def __init__(self, poset, meet_table, join_table, bottom, top):
        self.poset = poset
        self.meet_table = meet_table
        self.join_table = join_table
        self.bottom = bottom
        self.top = top
        self._cache = {}

    @property
    def size(self):
        return self.poset.size

    @property
    def covers(self):
        return self.poset.covers

    @property
    def labels(self):
        return self.poset.labels

    def label_of(self, x):
        return self.poset.label_of(x)

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def leq(self, a, b):
        return self.poset.leq(a, b)

    def lower_covers(self, x):
        return self.poset.lower_covers(x)

    def upper_covers(self, x):
        return self.poset.upper_covers(x)

    def height(self, x):
        return self.poset.heights[x]

    def atoms(self):
        return self.poset.upper_covers(self.bottom)

    def coatoms(self):
        return self.poset.lower_covers(self.top)

    def interval_elements(self, a, b):
        """Elements of [a, b], ascending by index."""
        mask = self.poset.up_mask(a) & self.poset.down_mask(b)
        return tuple(_bits(mask))

    def cached(self, key, compute):
        try:
            return self._cache[key]
        except KeyError:
            value = compute()
            self._cache[key] = value
            return value

    def __repr__(self):
        return f"FiniteLattice(size={self.size})"


def validate_lattice(poset):
    """Check that a poset is a lattice and compute its meet/join tables.

    Raises :class:`NotALattice` with a witness pair when some pair of
    elements lacks a unique greatest lower bound or least upper bound.
    """
    n = poset.size
    if n == 0:
        raise ValueError("empty poset is not a lattice")
    down = poset._down
    up = poset._up
    # Scan order for locating maxima/minima of bitmask sets: by height,
    # descending resp. ascending.  The extremum of a subset, if it
    # exists, is any member of maximal (minimal) height, so one
    # containment test decides.
    by_height_desc = sorted(range(n), key=lambda x: (-poset.heights[x], x))
    by_depth_desc = sorted(range(n), key=lambda x: (-poset.depths[x], x))

    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        meet[a][a] = a
        join[a][a] = a
        for b in range(a):
            commons = down[a] & down[b]
            m = -1
            for c in by_height_desc:
                if (commons >> c) & 1:
                    m = c
                    break
            if m < 0 or commons & ~down[m]:
                raise NotALattice((b, a), "meet")
            meet[a][b] = meet[b][a] = m

            commons = up[a] & up[b]
            j = -1
            for c in by_depth_desc:
                if (commons >> c) & 1:
                    j = c
                    break
            if j < 0 or commons & ~up[j]:
                raise NotALattice((b, a), "join")
            join[a][b] = join[b][a] = j

    bottom = 0
    top = 0
    for x in range(1, n):
        bottom = meet[bottom][x]
        top = join[top][x]
    return FiniteLattice(poset,
                         tuple(tuple(row) for row in meet),
                         tuple(tuple(row) for row in join),
                         bottom, top)


def lattice_from_covers(size, covers, labels=None):
    return validate_lattice(FinitePoset(size, covers, labels=labels))


def length(L, a, b):
    """Length of the interval [a, b]: the number of covers in a longest chain."""
    if not L.leq(a, b):
        raise NotComparable(a, b)
    mask = L.poset.up_mask(a) & L.poset.down_mask(b)
    dist = {a: 0}
    for x in L.poset._topo:
        if not (mask >> x) & 1 or x == a:
            continue
        best = -1
        for c in L.lower_covers(x):
            if (mask >> c) & 1 and c in dist and dist[c] > best:
                best = dist[c]
        if best >= 0:
            dist[x] = best + 1
    return dist[b]


def lattice_length(L):
    return length(L, L.bottom, L.top)


def maximal_chains(L, a, b, limit=DEFAULT_CHAIN_LIMIT):
    """All maximal chains of [a, b], bottom to top, in lexicographic order.

    Covers inside an interval of a lattice are covers of the whole
    lattice, so the chains are exactly the cover-paths from a to b.
    Raises :class:`ChainLimitExceeded` past ``limit`` chains.
    """
    if not L.leq(a, b):
        raise NotComparable(a, b)
    mask = L.poset.up_mask(a) & L.poset.down_mask(b)
    out = []
    stack = [a]

    def walk(x):
        if x == b:
            out.append(tuple(stack))
            if len(out) > limit:
                raise ChainLimitExceeded(limit)
            return
        for y in L.upper_covers(x):
            if (mask >> y) & 1:
                stack.append(y)
                walk(y)
                stack.pop()

    walk(a)
    return out


def first_maximal_chain(L, a, b):
    """Lexicographically first maximal chain of [a, b]."""
    if not L.leq(a, b):
        raise NotComparable(a, b)
    mask = L.poset.up_mask(a) & L.poset.down_mask(b)
    chain = [a]
    x = a
    while x != b:
        x = next(y for y in L.upper_covers(x) if (mask >> y) & 1)
        chain.append(x)
    return tuple(chain)


def is_modular(L):
    """Exhaustive modular-law check.

    Returns (True, None) or (False, (x, y, z)) where x <= z but
    x v (y ^ z) != (x v y) ^ z.
    """
    n = L.size
    meet = L.meet_table
    join = L.join_table
    for x in range(n):
        upx = L.poset.up_mask(x)
        for z in _bits(upx):
            jx = join[x]
            mz = meet[z]
            for y in range(n):
                if jx[mz[y]] != mz[jx[y]]:
                    return False, (x, y, z)
    return True, None


def is_distributive(L):
    n = L.size
    meet = L.meet_table
    join = L.join_table
    for x in range(n):
        mx = meet[x]
        for y in range(n):
            jxy = mx[y]
            for z in range(n):
                if mx[join[y][z]] != join[jxy][mx[z]]:
                    return False
    return True


def is_2_ladder(p):
    """True iff every element has at most two lower covers.

    Accepts a poset or a lattice; callers are responsible for only
    asking this of (finite) lattices.
    """
    poset = p.poset if isinstance(p, FiniteLattice) else p
    counts = [0] * poset.size
    for a, b in poset.covers:
        counts[b] += 1
        if counts[b] > 2:
            return False
    return True


def dual(L):
    """The dual lattice: order reversed, meet and join swapped."""
    return FiniteLattice(L.poset.dual(), L.join_table, L.meet_table,
                         L.top, L.bottom)


# ---------------------------------------------------------------------------
# Homomorphisms

class LatticeHomomorphism:
    """A meet/join-preserving map between two finite lattices.

    ``image[x]`` is the image of source element x.  Verified at
    construction unless ``trusted=True``.
    """

    __slots__ = ("source", "target", "image")

    def __init__(self, source, target, image, trusted=False):
        self.source = source
        self.target = target
        self.image = tuple(image)
        if len(self.image) != source.size:
            raise ValueError("image length must equal source size")
        if not trusted:
            bad = self.violation()
            if bad is not None:
                raise ValueError(f"not a lattice homomorphism: {bad}")

    def violation(self):
        f = self.image
        s, t = self.source, self.target
        for a in range(s.size):
            for b in range(a):
                if f[s.meet(a, b)] != t.meet(f[a], f[b]):
                    return ("meet", a, b)
                if f[s.join(a, b)] != t.join(f[a], f[b]):
                    return ("join", a, b)
        return None

    def __call__(self, x):
        return self.image[x]

    def is_injective(self):
        return len(set(self.image)) == len(self.image)

    def is_surjective(self):
        return len(set(self.image)) == self.target.size

    def preserves_bottom(self):
        return self.image[self.source.bottom] == self.target.bottom

    def preserves_top(self):
        return self.image[self.source.top] == self.target.top

    def compose(self, other):
        """self o other (apply ``other`` first)."""
        if other.target is not self.source:
            raise ValueError("composition mismatch")
        return LatticeHomomorphism(
            other.source, self.target,
            tuple(self.image[other.image[x]] for x in range(other.source.size)),
            trusted=True)

    def __repr__(self):
        return f"LatticeHomomorphism({self.source.size}->{self.target.size})"


def identity_hom(L):
    return LatticeHomomorphism(L, L, range(L.size), trusted=True)


# ---------------------------------------------------------------------------
# Sublattices

def closure_under_ops(L, seed):
    """Smallest subset of L containing ``seed`` closed under meet and join."""
    mask = 0
    for x in seed:
        mask |= 1 << x
    elems = sorted(set(seed))
    queue = list(elems)
    while queue:
        x = queue.pop()
        for y in list(elems):
            for z in (L.meet(x, y), L.join(x, y)):
                if not (mask >> z) & 1:
                    mask |= 1 << z
                    elems.append(z)
                    queue.append(z)
    return tuple(sorted(elems))


def sublattice(L, elements):
    """The sublattice on a meet/join-closed subset, with its inclusion map.

    Elements are re-indexed in ascending ambient order; covers are
    recomputed for the induced order (they need not be covers of L).
    """
    elems = tuple(sorted(set(elements)))
    if not elems:
        raise ValueError("sublattice needs at least one element")
    pos = {e: i for i, e in enumerate(elems)}
    for a in elems:
        for b in elems:
            if L.meet(a, b) not in pos or L.join(a, b) not in pos:
                raise ValueError(f"subset not closed under meet/join at {a, b}")
    k = len(elems)
    covers = transitive_reduction(k, lambda i, j: L.leq(elems[i], elems[j]))
    labels = None
    if L.labels:
        labels = tuple(L.labels[e] for e in elems)
    sub = lattice_from_covers(k, covers, labels=labels)
    incl = LatticeHomomorphism(sub, L, elems, trusted=True)
    return sub, incl


def interval_sublattice(L, a, b):
    """The interval [a, b] as a lattice, with its inclusion map."""
    if not L.leq(a, b):
        raise NotComparable(a, b)
    return sublattice(L, L.interval_elements(a, b))


# ---------------------------------------------------------------------------
# Isomorphism and embedding search

def _map_search(A, B, iso, require_0=False, require_1=False, forced=None):
    """Backtracking search for meet/join-preserving injections A -> B.

    Yields image tuples in lexicographic order (source elements are
    assigned in index order, candidate images ascending, so the first
    yield has the lexicographically smallest image).  With ``iso=True``
    only bijections survive the invariant pruning.
    """
    n, m = A.size, B.size
    if iso and n != m:
        return
    if n == 0:
        return

    pa, pb = A.poset, B.poset
    if iso:
        def inv(p, L, x):
            return (p.heights[x], p.depths[x],
                    len(p.lower_covers(x)), len(p.upper_covers(x)),
                    p.down_mask(x).bit_count(), p.up_mask(x).bit_count())
        inv_a = [inv(pa, A, x) for x in range(n)]
        inv_b = [inv(pb, B, x) for x in range(m)]
        cands = [tuple(t for t in range(m) if inv_b[t] == inv_a[s])
                 for s in range(n)]
    else:
        # embeddings only grow height/depth
        cands = [tuple(t for t in range(m)
                       if pb.heights[t] >= pa.heights[s]
                       and pb.depths[t] >= pa.depths[s])
                 for s in range(n)]
    if require_0:
        cands[A.bottom] = (B.bottom,) if B.bottom in cands[A.bottom] else ()
    if require_1:
        cands[A.top] = (B.top,) if B.top in cands[A.top] else ()
    if forced:
        for s, t in forced.items():
            cands[s] = (t,) if t in cands[s] else ()

    # For each element x, the pairs (i, j) with i,j < x whose meet/join
    # is x: their image constraint can only be checked once x is mapped.
    meet_late = [[] for _ in range(n)]
    join_late = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            x = A.meet(i, j)
            if x > i:
                meet_late[x].append((i, j))
            x = A.join(i, j)
            if x > i:
                join_late[x].append((i, j))

    img = [-1] * n
    used = [False] * m

    def ok(s, t):
        # order pattern against assigned elements
        for s2 in range(s):
            t2 = img[s2]
            if pa.leq(s2, s) != pb.leq(t2, t):
                return False
            if pa.leq(s, s2) != pb.leq(t, t2):
                return False
        # meet/join of (s2, s) when the result is already assigned
        for s2 in range(s + 1):
            t2 = img[s2] if s2 < s else t
            x = A.meet(s2, s)
            if x <= s:
                fx = img[x] if x < s else t
                if B.meet(t2, t) != fx:
                    return False
            x = A.join(s2, s)
            if x <= s:
                fx = img[x] if x < s else t
                if B.join(t2, t) != fx:
                    return False
        # deferred pairs whose meet/join equals s
        for i, j in meet_late[s]:
            if B.meet(img[i], img[j]) != t:
                return False
        for i, j in join_late[s]:
            if B.join(img[i], img[j]) != t:
                return False
        return True

    def walk(s):
        if s == n:
            yield tuple(img)
            return
        for t in cands[s]:
            if used[t]:
                continue
            if ok(s, t):
                img[s] = t
                used[t] = True
                yield from walk(s + 1)
                used[t] = False
                img[s] = -1

    yield from walk(0)


def all_isomorphisms(A, B):
    """Yield every lattice isomorphism A -> B as a LatticeHomomorphism."""
    for image in _map_search(A, B, iso=True):
        yield LatticeHomomorphism(A, B, image, trusted=True)


def find_isomorphism(A, B):
    """A meet/join-preserving bijection A -> B, or None.

    Deterministic: lexicographically smallest image tuple.
    """
    for image in _map_search(A, B, iso=True):
        return LatticeHomomorphism(A, B, image, trusted=True)
    return None

"""Built-in lattices and combinators.

Element indexing conventions (fixed so tests and exchange files are
deterministic):

* ``m_n(n)``:   0, a_1..a_n, 1 at indices 0, 1..n, n+1.
* ``m_nm(n,m)``: 0, a_1..a_n, mid, b_1..b_m, 1 — two diamonds stacked,
  sharing the middle element; n+m+3 elements, length 4.
* ``chain(k)``: indices 0..k-1 in order.
* ``boolean(k)``: subsets of a k-set indexed by bitmask.
* ``n5()``:     u, x, y, z, v at 0..4 with u<x<v and u<y<z<v.
* ``fig_cel()``: the 11-element modular lattice of length 4 drawn below.

All constructors return plain :class:`FiniteLattice` values.
"""

from .order import (
    FiniteLattice,
    LatticeHomomorphism,
    lattice_from_covers,
    closure_under_ops,
    sublattice,
)


def m_n(n):
    """Length-two lattice with n atoms (n >= 3): 0 < a_1,...,a_n < 1."""
    if n < 3:
        raise ValueError("m_n needs n >= 3")
    covers = [(0, i) for i in range(1, n + 1)]
    covers += [(i, n + 1) for i in range(1, n + 1)]
    labels = ["0"] + [f"a{i}" for i in range(1, n + 1)] + ["1"]
    return lattice_from_covers(n + 2, covers, labels=labels)


def m_nm(n, m):
    """Two diamonds stacked and sharing their middle element.

    0 < a_1..a_n < mid < b_1..b_m < 1; n+m+3 elements, length 4.
    """
    if n < 3 or m < 3:
        raise ValueError("m_nm needs n, m >= 3")
    mid = n + 1
    top = n + m + 2
    covers = [(0, i) for i in range(1, n + 1)]
    covers += [(i, mid) for i in range(1, n + 1)]
    covers += [(mid, mid + j) for j in range(1, m + 1)]
    covers += [(mid + j, top) for j in range(1, m + 1)]
    labels = (["0"] + [f"a{i}" for i in range(1, n + 1)] + ["m"]
              + [f"b{j}" for j in range(1, m + 1)] + ["1"])
    return lattice_from_covers(n + m + 3, covers, labels=labels)


def chain(k):
    """The k-element chain 0 < 1 < ... < k-1."""
    if k < 1:
        raise ValueError("chain needs k >= 1")
    return lattice_from_covers(k, [(i, i + 1) for i in range(k - 1)],
                               labels=[str(i) for i in range(k)])


def boolean(k):
    """The Boolean lattice 2^k; element i is the bitmask of a subset."""
    if k < 0:
        raise ValueError("boolean needs k >= 0")
    n = 1 << k
    covers = [(s, s | (1 << b)) for s in range(n) for b in range(k)
              if not (s >> b) & 1]
    labels = ["{" + ",".join(str(b) for b in range(k) if (s >> b) & 1) + "}"
              for s in range(n)]
    return lattice_from_covers(n, covers, labels=labels)


def n5():
    """The pentagon: u < x < v and u < y < z < v; the smallest
    non-modular lattice."""
    covers = [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]
    return lattice_from_covers(5, covers, labels=["u", "x", "y", "z", "v"])


# Node layout of the length-4 counterexample lattice (x, rank):
#
#   rank 4:            v=10
#   rank 3:      8           9
#   rank 2:  3   4   5   6   7
#   rank 1:      1           2
#   rank 0:            u=0
#
# Edges: u-1, u-2; 1-3, 1-4, 1-5; 2-5, 2-6, 2-7;
#        3-8, 4-8, 5-8, 5-9, 6-9, 7-9; 8-10, 9-10.
_FIG_CEL_COVERS = (
    (0, 1), (0, 2),
    (1, 3), (1, 4), (1, 5),
    (2, 5), (2, 6), (2, 7),
    (3, 8), (4, 8), (5, 8),
    (5, 9), (6, 9), (7, 9),
    (8, 10), (9, 10),
)


def fig_cel():
    """An 11-element modular lattice of length 4 with congruence lattice 2^2
    that is not a congruence-preserving extension of any chain joining its
    bounds.  Bottom u = 0, top v = 10."""
    labels = ["u", "p1", "p2", "q1", "q2", "q3", "q4", "q5", "r1", "r2", "v"]
    return lattice_from_covers(11, _FIG_CEL_COVERS, labels=labels)


def product(A, B):
    """Direct product with componentwise order; (a, b) has index a*|B| + b."""
    nb = B.size
    covers = []
    for a, a2 in A.covers:
        for b in range(nb):
            covers.append((a * nb + b, a2 * nb + b))
    for a in range(A.size):
        for b, b2 in B.covers:
            covers.append((a * nb + b, a * nb + b2))
    labels = None
    if A.labels and B.labels:
        labels = [f"({A.labels[a]},{B.labels[b]})"
                  for a in range(A.size) for b in range(nb)]
    return lattice_from_covers(A.size * nb, covers, labels=labels)


def bounded_extension(L):
    """L with a new bottom and a new top adjoined (even if L is bounded).

    Returns (L', inclusion) where the inclusion maps x to x+1.
    """
    n = L.size
    covers = [(a + 1, b + 1) for a, b in L.covers]
    covers.append((0, L.bottom + 1))
    covers.append((L.top + 1, n + 1))
    labels = None
    if L.labels:
        labels = ["0*"] + list(L.labels) + ["1*"]
    ext = lattice_from_covers(n + 2, covers, labels=labels)
    incl = LatticeHomomorphism(L, ext, [x + 1 for x in range(n)])
    return ext, incl


def sublattice_generated(L, seed):
    """The sublattice of L generated by ``seed``, with its inclusion map."""
    elems = closure_under_ops(L, seed)
    return sublattice(L, elems)

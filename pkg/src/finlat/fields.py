"""Finite fields, subspace lattices, and matricial-algebra signatures.

Field elements are dense indices 0..q-1 encoding polynomials over the
prime field in base p (index = sum c_i * p^i); addition and
multiplication are precomputed tables.  Subspaces of F^n are kept in
reduced row-echelon form, which is a unique representative, so equality
is tuple equality.
"""

from itertools import combinations, product as iproduct

from .errors import CapExceeded
from .order import lattice_from_covers, transitive_reduction
from .constructions import chain, product

DEFAULT_SUBSPACE_CAP = 4096

# Irreducible moduli (coefficient tuples, ascending degree, monic) for
# the prime powers the toolkit ships with.
_BUILTIN_MODULI = {
    4: (2, 2, (1, 1, 1)),        # x^2 + x + 1 over GF(2)
    8: (2, 3, (1, 1, 0, 1)),     # x^3 + x + 1 over GF(2)
    9: (3, 2, (1, 0, 1)),        # x^2 + 1 over GF(3)
    16: (2, 4, (1, 1, 0, 0, 1)),  # x^4 + x + 1 over GF(2)
    25: (5, 2, (2, 1, 1)),       # x^2 + x + 2 over GF(5)
    27: (3, 3, (1, 2, 0, 1)),    # x^3 + 2x + 1 over GF(3)
}


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(num, den, p):
    num = _poly_trim(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError
    inv_lead = pow(den[-1], p - 2, p) if p > 2 else den[-1]
    quot = [0] * max(0, len(num) - len(den) + 1)
    rem = list(num)
    while len(rem) >= len(den) and _poly_trim(rem):
        rem = _poly_trim(rem)
        if len(rem) < len(den):
            break
        shift = len(rem) - len(den)
        factor = (rem[-1] * inv_lead) % p
        quot[shift] = factor
        for i, d in enumerate(den):
            rem[i + shift] = (rem[i + shift] - factor * d) % p
    return quot, _poly_trim(rem)


def _is_irreducible(modulus, p):
    """Trial division by all monic polynomials of degree 1..deg/2."""
    k = len(_poly_trim(modulus)) - 1
    for d in range(1, k // 2 + 1):
        for tail in iproduct(range(p), repeat=d):
            den = list(tail) + [1]
            _, rem = _poly_divmod(modulus, den, p)
            if not rem:
                return False
    return True


class FiniteField:
    """GF(p^k) with precomputed add/mul tables.

    ``FiniteField(q)`` uses a built-in modulus (any prime q, and the
    shipped prime powers); pass ``modulus`` explicitly (coefficients
    ascending, monic, length k+1) for anything else.  The modulus is
    checked for irreducibility at construction.
    """

    __slots__ = ("p", "k", "q", "modulus", "add_table", "mul_table",
                 "neg_table", "inv_table")

    def __init__(self, q=None, *, p=None, k=None, modulus=None):
        if q is not None and p is None:
            if _is_prime(q):
                p, k, modulus = q, 1, (0, 1)
            elif q in _BUILTIN_MODULI:
                p, k, modulus = _BUILTIN_MODULI[q]
            else:
                raise ValueError(
                    f"no built-in modulus for q={q}; pass p, k and modulus")
        if p is None or k is None:
            raise ValueError("need q or (p, k)")
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if modulus is None:
            if k == 1:
                modulus = (0, 1)
            else:
                raise ValueError("degree > 1 needs an explicit modulus")
        modulus = tuple(int(c) % p for c in modulus)
        if len(_poly_trim(modulus)) - 1 != k or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if k > 1 and not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = modulus

        def to_poly(i):
            c = []
            for _ in range(k):
                c.append(i % p)
                i //= p
            return c

        def to_index(c):
            i = 0
            for x in reversed(c[:k] + [0] * (k - len(c))):
                i = i * p + x
            return i

        q_ = self.q
        polys = [to_poly(i) for i in range(q_)]
        add = [[0] * q_ for _ in range(q_)]
        mul = [[0] * q_ for _ in range(q_)]
        for i in range(q_):
            for j in range(i + 1):
                s = [(a + b) % p for a, b in zip(polys[i], polys[j])]
                add[i][j] = add[j][i] = to_index(s)
                prod = [0] * (2 * k - 1)
                for a, ca in enumerate(polys[i]):
                    if ca:
                        for b, cb in enumerate(polys[j]):
                            prod[a + b] = (prod[a + b] + ca * cb) % p
                _, rem = _poly_divmod(prod, list(modulus), p)
                mul[i][j] = mul[j][i] = to_index(rem)
        self.add_table = tuple(tuple(r) for r in add)
        self.mul_table = tuple(tuple(r) for r in mul)
        neg = [0] * q_
        inv = [None] * q_
        for i in range(q_):
            for j in range(q_):
                if add[i][j] == 0:
                    neg[i] = j
                if i and mul[i][j] == 1:
                    inv[i] = j
        self.neg_table = tuple(neg)
        self.inv_table = tuple(inv)

    zero = 0
    one = 1

    def add(self, a, b):
        return self.add_table[a][b]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return self.inv_table[a]

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"FiniteField(q={self.q})"


def rref(F, rows):
    """Reduced row-echelon form over F; returns the nonzero rows as a tuple."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = F.inv(mat[pivot_row][col])
        mat[pivot_row] = [F.mul(inv, x) for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [F.sub(x, F.mul(f, y))
                          for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(r))


class Subspace:
    """A subspace of F^n, canonically represented by its RREF basis."""

    __slots__ = ("field", "n", "basis")

    def __init__(self, field, n, vectors):
        self.field = field
        self.n = n
        self.basis = rref(field, [v for v in vectors if any(v)])

    @property
    def dim(self):
        return len(self.basis)

    def vectors(self):
        """Every vector of the subspace (q^dim of them)."""
        F = self.field
        out = set()
        for coeffs in iproduct(F.elements(), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, row)]
            out.add(tuple(v))
        return frozenset(out)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.n == other.n
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        rows = [";".join(str(x) for x in r) for r in self.basis]
        return f"Subspace(dim={self.dim}, [{' '.join(rows)}])"


def _all_rref_bases(F, n, d):
    """Every RREF matrix of rank d in F^n, by pivot-column choice."""
    q = F.q
    out = []
    for pivots in combinations(range(n), d):
        free = [(i, j) for i in range(d) for j in range(n)
                if j > pivots[i] and j not in pivots]
        for values in iproduct(range(q), repeat=len(free)):
            mat = [[0] * n for _ in range(d)]
            for i in range(d):
                mat[i][pivots[i]] = F.one
            for (i, j), v in zip(free, values):
                mat[i][j] = v
            out.append(tuple(tuple(r) for r in mat))
    return out


class SubspaceLatticeResult:
    """Sub(F^n): the lattice, the subspaces in element order, their dims."""

    __slots__ = ("field", "n", "lattice", "subspaces")

    def __init__(self, field, n, lattice, subspaces):
        self.field = field
        self.n = n
        self.lattice = lattice
        self.subspaces = subspaces

    @property
    def dims(self):
        return tuple(s.dim for s in self.subspaces)


def subspace_lattice(F, n, cap=DEFAULT_SUBSPACE_CAP):
    """The lattice of subspaces of F^n ordered by inclusion.

    Meet is intersection and join is sum; both are recovered from the
    containment order during validation, and the enumeration count is
    checked against the q-binomial formula.  Elements are ordered by
    (dimension, basis), so index 0 is the zero space and the last index
    is the whole space.
    """
    if isinstance(F, int):
        F = FiniteField(F)
    if F.q ** n > cap:
        raise CapExceeded("q^n", F.q ** n, cap)
    subs = []
    for d in range(n + 1):
        found = sorted(set(_all_rref_bases(F, n, d)))
        if len(found) != gaussian_count(F.q, n, d):
            raise AssertionError("echelon enumeration disagrees with q-binomial")
        subs.extend(found)
    spaces = []
    span_sets = []
    for basis in subs:
        s = Subspace(F, n, basis)
        spaces.append(s)
        span_sets.append(s.vectors())
    k = len(spaces)
    covers = transitive_reduction(
        k, lambda i, j: span_sets[i] <= span_sets[j])
    labels = [f"d{spaces[i].dim}:" + "|".join(
        "".join(str(x) for x in row) for row in spaces[i].basis)
        for i in range(k)]
    labels[0] = "0"
    lat = lattice_from_covers(k, covers, labels=labels)
    return SubspaceLatticeResult(F, n, lat, tuple(spaces))


def gaussian_count(q, n, d):
    """Number of d-dimensional subspaces of F_q^n (q-binomial coefficient)."""
    if isinstance(q, FiniteField):
        q = q.q
    if d < 0 or d > n:
        return 0
    num = 1
    den = 1
    for i in range(d):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


class MatricialSignature:
    """A finite product of full matrix algebras over F, recorded as the
    field together with the block sizes."""

    __slots__ = ("field", "blocks")

    def __init__(self, field, blocks):
        if isinstance(field, int):
            field = FiniteField(field)
        blocks = tuple(int(u) for u in blocks)
        if any(u < 1 for u in blocks):
            raise ValueError("block sizes must be >= 1")
        self.field = field
        self.blocks = blocks

    def __repr__(self):
        return f"MatricialSignature(q={self.field.q}, blocks={self.blocks})"


class GroupWithUnitSignature:
    """(Z^rank, unit) with componentwise order; unit entries all >= 1."""

    __slots__ = ("rank", "unit")

    def __init__(self, rank, unit):
        unit = tuple(int(u) for u in unit)
        if len(unit) != rank or any(u < 1 for u in unit):
            raise ValueError("unit must have length rank with entries >= 1")
        self.rank = rank
        self.unit = unit

    def isomorphic(self, other):
        """Isomorphism in the category of pre-ordered groups with
        order-unit: a coordinate permutation matching the units."""
        return (self.rank == other.rank
                and sorted(self.unit) == sorted(other.unit))

    def __eq__(self, other):
        return (isinstance(other, GroupWithUnitSignature)
                and self.rank == other.rank and self.unit == other.unit)

    def __hash__(self):
        return hash((self.rank, self.unit))

    def __repr__(self):
        return f"(Z^{self.rank}, {self.unit})"


def matricial_ideal_lattice(sig, cap=DEFAULT_SUBSPACE_CAP):
    """The lattice of principal right ideals of a matricial algebra:
    the direct product of the subspace lattices Sub(F^{u_i})."""
    lat = chain(1)
    for u in sig.blocks:
        lat = product(lat, subspace_lattice(sig.field, u, cap=cap).lattice)
    return lat


def k0_of_matricial(sig):
    """The K0 signature of a matricial algebra: rank = number of blocks,
    order-unit = the block sizes."""
    return GroupWithUnitSignature(len(sig.blocks), sig.blocks)

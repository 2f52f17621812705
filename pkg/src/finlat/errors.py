"""Exception types shared by all finlat modules."""


class LatticeError(Exception):
    """Base class for every error raised by finlat."""


class CyclicCovers(LatticeError):
    """The cover relation contains a directed cycle."""

    def __init__(self, cycle_hint=None):
        self.cycle_hint = cycle_hint
        super().__init__(f"cover relation is cyclic (near {cycle_hint})")


class NotACoverRelation(LatticeError):
    """An edge (a, b) has some c with a < c < b, so it is not a cover."""

    def __init__(self, edge, witness):
        self.edge = edge
        self.witness = witness
        super().__init__(
            f"edge {edge} is not a cover: {witness} lies strictly between"
        )


class NotALattice(LatticeError):
    """A pair of elements has no unique meet or join."""

    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind  # "meet" or "join"
        super().__init__(f"pair {pair} has no unique {kind}")


class NotComparable(LatticeError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"elements {a} and {b} are not comparable (need a <= b)")


class NotModular(LatticeError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"lattice is not modular, witness triple {witness}")


class ChainLimitExceeded(LatticeError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"more than {limit} maximal chains")


class SizeCapExceeded(LatticeError):
    def __init__(self, what, cap):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeds cap {cap}")


class CapExceeded(LatticeError):
    """Enumeration refused because the instance is over the configured cap."""

    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds cap {cap}")


class SearchCapExceeded(LatticeError):
    def __init__(self, what, value, cap):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"search refused: {what} = {value} exceeds cap {cap}")


class PreconditionFailed(LatticeError):
    def __init__(self, name, detail=""):
        self.name = name
        super().__init__(f"precondition failed: {name}" + (f" ({detail})" if detail else ""))


class HypothesisViolated(LatticeError):
    def __init__(self, where, detail=""):
        self.where = where
        super().__init__(f"hypothesis violated at {where}" + (f": {detail}" if detail else ""))

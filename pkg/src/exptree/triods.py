"""The formal triod map on itineraries and on external addresses.

A triod is a triple of distinct formal (pre-)periodic points.  One step
of the triod map shifts all members when their first symbols agree,
chops the odd one out (replacing it by the kneading sequence) when
exactly two agree, and stops when all three first symbols are pairwise
distinct.  The star symbol counts as distinct from every integer; the
only itinerary starting with the star is ``*nu`` itself.

The stream of majority votes assembles the middle point of the triple:
the branch point if the triple is branched, the middle member if it is
linear.  The address-level map does the same bookkeeping through
partition sectors and is semi-conjugate to the itinerary-level map.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import IsStopCaseError, NotDistinctError
from .partition import (
    Boundary,
    Itinerary,
    Partition,
    Plain,
    PreSingular,
    is_in_S_nu,
    itinerary,
    sector_of,
    shift_itinerary,
)
from .sequences import ExtAddress, canonicalize, cyclic_between

__all__ = [
    "AddressTriod",
    "Triod",
    "TriodShape",
    "Shape",
    "address_triod_step",
    "classify",
    "majority_vote",
    "middle_point",
    "to_itinerary_triod",
    "triod_step",
]


class Shape(Enum):
    BRANCHED = "branched"
    LINEAR = "linear"
    PRESINGULAR_BRANCHED = "presingular-branched"
    PRESINGULAR_LINEAR = "presingular-linear"


@dataclass(frozen=True, slots=True)
class TriodShape:
    """Shape of a triod; ``middle`` is the 1-based member index for the
    linear variants and ``None`` for the branched ones."""

    shape: Shape
    middle: int | None = None

    def is_linear(self) -> bool:
        return self.shape in (Shape.LINEAR, Shape.PRESINGULAR_LINEAR)

    def is_presingular(self) -> bool:
        return self.shape in (Shape.PRESINGULAR_BRANCHED, Shape.PRESINGULAR_LINEAR)

    def __str__(self) -> str:
        if self.middle is None:
            return self.shape.value
        return f"{self.shape.value}(middle={self.middle})"


@dataclass(frozen=True, slots=True)
class Triod:
    """Ordered triple of distinct itineraries in the ambient partition."""

    members: tuple[Itinerary, Itinerary, Itinerary]
    partition: Partition

    def __post_init__(self):
        t, u, v = self.members
        if t == u or u == v or t == v:
            raise NotDistinctError("triod members must be pairwise distinct")

    def validate(self) -> None:
        """Check membership of all members in the formal point space."""
        for m in self.members:
            if not is_in_S_nu(self.partition, m):
                raise ValueError(
                    f"itinerary {m} has a forward shift equal to the kneading sequence"
                )

    def __str__(self) -> str:
        return "[" + ", ".join(str(m) for m in self.members) + "]"


@dataclass(frozen=True, slots=True)
class AddressTriod:
    """Triple of external addresses in positive cyclic order whose
    itineraries are distinct formal (pre-)periodic points."""

    members: tuple[ExtAddress, ExtAddress, ExtAddress]
    partition: Partition

    def __post_init__(self):
        t, u, v = self.members
        if not cyclic_between(t, u, v):
            raise NotDistinctError(
                "address triod members must be listed in positive cyclic order"
            )

    def validate(self) -> None:
        to_itinerary_triod(self).validate()

    def __str__(self) -> str:
        return "[" + ", ".join(str(m) for m in self.members) + "]"


def to_itinerary_triod(A: AddressTriod) -> Triod:
    """The associated triod of itineraries."""
    t, u, v = A.members
    P = A.partition
    return Triod((itinerary(P, t), itinerary(P, u), itinerary(P, v)), P)


def triod_step(T: Triod) -> Triod | None:
    """One application of the formal triod map, or ``None`` for stop.

    Members whose first symbols form the majority are shifted; a member
    whose first symbol differs from the other two is replaced by the
    kneading sequence.
    """
    P = T.partition
    t, u, v = T.members
    a, b, c = (t.first_symbol(), u.first_symbol(), v.first_symbol())
    nu = P.kneading
    sh = shift_itinerary
    if a == b == c:
        nxt = (sh(P, t), sh(P, u), sh(P, v))
    elif a == b:
        nxt = (sh(P, t), sh(P, u), nu)
    elif a == c:
        nxt = (sh(P, t), nu, sh(P, v))
    elif b == c:
        nxt = (nu, sh(P, u), sh(P, v))
    else:
        return None
    return Triod(nxt, P)


def majority_vote(T: Triod) -> int:
    """The integer shared by at least two first symbols."""
    t, u, v = T.members
    a, b, c = (t.first_symbol(), u.first_symbol(), v.first_symbol())
    if a == b or a == c:
        vote = a
    elif b == c:
        vote = b
    else:
        raise IsStopCaseError(f"triod {T} is in the stop case")
    assert vote != "*", "only *nu starts with the star, and members are distinct"
    return vote


def _prepend_votes(votes: list[int], tail: Itinerary) -> Itinerary:
    if isinstance(tail, PreSingular):
        return PreSingular(tuple(votes) + tail.prefix)
    return Plain(canonicalize(tuple(votes) + tail.seq.preperiod, tail.seq.period))


def middle_point(T: Triod, _cache: dict | None = None) -> Itinerary:
    """The middle point of the triod: the stream of majority votes.

    When iteration reaches the stop case after ``i`` votes, the result is
    pre-singular with the collected votes as prefix.  Otherwise the vote
    stream is eventually periodic: every member of an iterated triod is a
    shift of one of the inputs or of the kneading sequence, so the
    iteration revisits a state, at which point the votes split into
    preperiod and period.

    ``_cache`` maps previously solved triod states to their middle
    points; every state visited along the way is added to it.
    """
    path: list[Triod] = []
    votes: list[int] = []
    seen: dict[Triod, int] = {}
    cur = T

    def assemble(i: int) -> Itinerary:
        """Middle point of ``path[i]``: votes from step i on, then the tail."""
        return _prepend_votes(votes[i:], tail)

    while True:
        if _cache is not None and cur in _cache:
            tail = _cache[cur]
            break
        if cur in seen:
            j = seen[cur]
            # stream of the repeated state is votes[j:] forever
            tail = Plain(canonicalize((), votes[j:]))
            break
        seen[cur] = len(votes)
        path.append(cur)
        nxt = triod_step(cur)
        if nxt is None:
            tail = PreSingular(())
            break
        votes.append(majority_vote(cur))
        cur = nxt
    if _cache is not None:
        for i, state in enumerate(path):
            _cache[state] = assemble(i)
    return assemble(0)


def classify(T: Triod) -> TriodShape:
    """Shape of the triod: linear iff the middle point is a member;
    pre-singular variants iff iteration reached the stop case."""
    b = middle_point(T)
    presing = isinstance(b, PreSingular)
    for i, m in enumerate(T.members, start=1):
        if m == b:
            return TriodShape(
                Shape.PRESINGULAR_LINEAR if presing else Shape.LINEAR, middle=i
            )
    return TriodShape(Shape.PRESINGULAR_BRANCHED if presing else Shape.BRANCHED)


def address_triod_step(A: AddressTriod) -> AddressTriod | None:
    """One step of the triod map on external addresses, or ``None`` for stop.

    Members sharing a partition sector are shifted; the member outside
    the shared sector (or on the partition boundary) is replaced by the
    base address.  Stop iff no two members share a sector.
    """
    P = A.partition
    t, u, v = A.members
    sectors = []
    for x in (t, u, v):
        res = sector_of(P, x)
        sectors.append(None if isinstance(res, Boundary) else res.k)
    a, b, c = sectors
    s = P.base
    if a is not None and a == b == c:
        nxt = (t.shift(), u.shift(), v.shift())
    elif a is not None and a == b:
        nxt = (t.shift(), u.shift(), s)
    elif a is not None and a == c:
        nxt = (t.shift(), s, v.shift())
    elif b is not None and b == c:
        nxt = (s, u.shift(), v.shift())
    else:
        return None
    return AddressTriod(nxt, P)

"""The dynamical partition of the shift space and itineraries.

A strictly preperiodic base address ``s`` splits the shift space into
sectors ``I_k``, the lexicographic intervals between consecutive
preimages ``m.s`` of ``s`` under the shift.  Recording the sector indices
visited by the shift orbit of an address yields its itinerary; entering
the partition boundary (hitting a preimage of ``s`` exactly) is recorded
with the star symbol, after which the tail is forced to be the kneading
sequence.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .errors import NormalizationWarning, PeriodicBaseError
from .sequences import ExtAddress, Ordering, canonicalize, compare_lex

__all__ = [
    "STAR",
    "Itinerary",
    "Partition",
    "Plain",
    "PreSingular",
    "SectorResult",
    "Interior",
    "Boundary",
    "inverse_branch",
    "is_in_S_nu",
    "itinerary",
    "itinerary_entry",
    "kneading",
    "sector_of",
    "shift_itinerary",
    "validate_base",
]

STAR = "*"


@dataclass(frozen=True, slots=True)
class Plain:
    """An itinerary without the star symbol: an eventually periodic
    integer sequence, represented like an external address."""

    seq: ExtAddress

    def first_symbol(self):
        return self.seq.entry(1)

    def __str__(self) -> str:
        return str(self.seq)


@dataclass(frozen=True, slots=True)
class PreSingular:
    """An itinerary of the form ``prefix . * . nu``.

    Only the integer prefix is stored; the star and the ambient kneading
    sequence tail are implied by context.
    """

    prefix: tuple[int, ...]

    def first_symbol(self):
        return self.prefix[0] if self.prefix else STAR

    def __str__(self) -> str:
        return ",".join([str(k) for k in self.prefix] + [STAR])


Itinerary = Union[Plain, PreSingular]


@dataclass(frozen=True, slots=True)
class Interior:
    """The queried address lies inside sector ``I_k``."""

    k: int


@dataclass(frozen=True, slots=True)
class Boundary:
    """The queried address equals ``m . base``, a point of the partition
    boundary (the shift preimages of the base address)."""

    m: int


SectorResult = Union[Interior, Boundary]


@dataclass(frozen=True, slots=True)
class Partition:
    """A validated base address together with its derived data.

    ``offset_j0`` is the integer with ``base`` inside
    ``I_0 = (j0.base, (j0+1).base)``; sector ``I_k`` is the interval
    ``((j0+k).base, (j0+k+1).base)``.
    """

    base: ExtAddress
    offset_j0: int
    kneading: Plain

    def sector_bounds(self, k: int) -> tuple[ExtAddress, ExtAddress]:
        """The endpoints ``(j0+k).base`` and ``(j0+k+1).base`` of ``I_k``."""
        return (
            self.base.prepend(self.offset_j0 + k),
            self.base.prepend(self.offset_j0 + k + 1),
        )

    def __str__(self) -> str:
        return f"Partition(base={self.base}, j0={self.offset_j0}, nu={self.kneading})"


def _sector_of(base: ExtAddress, j0: int, t: ExtAddress) -> SectorResult:
    cmp = compare_lex(t.shift(), base)
    if cmp is Ordering.EQ:
        return Boundary(t.entry(1))
    m = t.entry(1) if cmp is Ordering.GT else t.entry(1) - 1
    return Interior(m - j0)


def validate_base(s: ExtAddress) -> Partition:
    """Build the dynamical partition for a strictly preperiodic ``s``.

    Raises :class:`PeriodicBaseError` if ``s`` is purely periodic.  A
    leading entry other than 0 is accepted with a
    :class:`NormalizationWarning`: the partition itself is well defined,
    only the usual normalization of base addresses starts at 0.
    """
    if s.is_periodic():
        raise PeriodicBaseError(f"base address {s} is purely periodic")
    if s.entry(1) != 0:
        warnings.warn(
            f"base address {s} does not start with 0",
            NormalizationWarning,
            stacklevel=2,
        )
    j0 = s.entry(1) - 1 if s.shift() < s else s.entry(1)
    nu = _itinerary_against(s, j0, s)
    assert isinstance(nu, Plain), "kneading of a preperiodic base cannot hit the boundary"
    return Partition(base=s, offset_j0=j0, kneading=nu)


def sector_of(P: Partition, t: ExtAddress) -> SectorResult:
    """Locate ``t`` in the partition: sector index or boundary sheet."""
    return _sector_of(P.base, P.offset_j0, t)


def _itinerary_against(base: ExtAddress, j0: int, t: ExtAddress) -> Itinerary:
    steps = len(t.preperiod) + len(t.period)
    out: list[int] = []
    cur = t
    for _ in range(steps):
        res = _sector_of(base, j0, cur)
        if isinstance(res, Boundary):
            return PreSingular(tuple(out))
        out.append(res.k)
        cur = cur.shift()
    # The entry stream factors through the shift orbit of t, so its
    # preperiod/period divide t's; boundary hits can only occur within
    # the preperiod of t (a boundary address is strictly preperiodic).
    return Plain(canonicalize(out[: len(t.preperiod)], out[len(t.preperiod) :]))


@lru_cache(maxsize=65536)
def _itinerary_cached(P: Partition, t: ExtAddress) -> Itinerary:
    return _itinerary_against(P.base, P.offset_j0, t)


def itinerary(P: Partition, t: ExtAddress) -> Itinerary:
    """The itinerary of ``t`` with respect to the partition base.

    Entry ``k`` is the sector index of the ``(k-1)``-fold shift of ``t``;
    a boundary hit at step ``k`` yields a :class:`PreSingular` value with
    the ``k-1`` entries collected so far.
    """
    return _itinerary_cached(P, t)


def kneading(P: Partition) -> Plain:
    """The kneading sequence: the itinerary of the base w.r.t. itself."""
    return P.kneading


def inverse_branch(P: Partition, k: int, u: ExtAddress) -> ExtAddress:
    """The unique shift preimage of ``u`` in the half-open sector ``I_k^-``.

    ``I_k^-`` includes its upper endpoint, so ``u <= base`` maps to the
    preimage with first entry ``j0 + k + 1``.
    """
    if u > P.base:
        return u.prepend(P.offset_j0 + k)
    return u.prepend(P.offset_j0 + k + 1)


def shift_itinerary(P: Partition, t: Itinerary) -> Itinerary:
    """Shift an itinerary; the star tail of ``*nu`` shifts to ``nu``."""
    if isinstance(t, Plain):
        return Plain(t.seq.shift())
    if t.prefix:
        return PreSingular(t.prefix[1:])
    return P.kneading


def itinerary_entry(P: Partition, t: Itinerary, i: int):
    """Entry ``i >= 1`` of an itinerary; integers or :data:`STAR`."""
    if isinstance(t, Plain):
        return t.seq.entry(i)
    r = len(t.prefix)
    if i <= r:
        return t.prefix[i - 1]
    if i == r + 1:
        return STAR
    return P.kneading.seq.entry(i - r - 1)


def is_in_S_nu(P: Partition, t: Itinerary) -> bool:
    """Membership in the space of formal (pre-)periodic points.

    Pre-singular itineraries always belong; a plain itinerary belongs iff
    no strict forward shift (n >= 1) equals the kneading sequence.  The
    itinerary itself may equal the kneading sequence.
    """
    if isinstance(t, PreSingular):
        return True
    nu = P.kneading.seq
    cur = t.seq
    for _ in range(len(t.seq.preperiod) + len(t.seq.period)):
        cur = cur.shift()
        if cur == nu:
            return False
    return True

"""Enumerate the external addresses realizing a given itinerary.

Every formal (pre-)periodic itinerary is realized by finitely many
external addresses, all sharing one preperiod length and one period
length (a multiple of the itinerary's period).  For a purely periodic
itinerary the search enumerates candidate periodic addresses directly:
an address inside sector ``I_k`` starts with ``j0 + k`` or ``j0 + k + 1``,
so a realizing address of period ``m * n`` is determined by a choice of
offset bit per position.  Preperiodic itineraries are pulled back from
their periodic part through the inverse branches of the shift, and
pre-singular itineraries are pullbacks of the partition boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    EmptyRangeError,
    GapAssignmentFailureError,
    RealizationBoundExceededError,
)
from .partition import (
    Boundary,
    Itinerary,
    Partition,
    Plain,
    PreSingular,
    inverse_branch,
    itinerary,
    sector_of,
)
from .sequences import ExtAddress, canonicalize, cyclic_between
from .triods import AddressTriod, TriodShape, classify, middle_point, to_itinerary_triod

__all__ = [
    "AddressSet",
    "SeparatingAddress",
    "addresses_of",
    "addresses_of_periodic",
    "separating_addresses",
    "DEFAULT_M_MAX",
    "DEFAULT_CANDIDATE_CAP",
]

DEFAULT_M_MAX = 8
DEFAULT_CANDIDATE_CAP = 2**20


@dataclass(frozen=True, slots=True)
class AddressSet:
    """Finite, lexicographically sorted family of addresses sharing one
    itinerary."""

    addresses: tuple[ExtAddress, ...]
    itinerary: Itinerary

    def __post_init__(self):
        if not self.addresses:
            return
        pre_lens = {len(a.preperiod) for a in self.addresses}
        per_lens = {len(a.period) for a in self.addresses}
        if len(pre_lens) != 1 or len(per_lens) != 1:
            raise AssertionError(
                f"realizing addresses of {self.itinerary} disagree on preperiod/period"
            )
        if isinstance(self.itinerary, Plain):
            n = len(self.itinerary.seq.period)
            if per_lens.pop() % n != 0:
                raise AssertionError(
                    f"address period is not a multiple of the itinerary period for {self.itinerary}"
                )

    def __iter__(self):
        return iter(self.addresses)

    def __len__(self):
        return len(self.addresses)


def _matches_periodic(P: Partition, t: ExtAddress, target: Sequence[int]) -> bool:
    """Whole-orbit check: entry ``i`` of It(t) equals ``target[i mod n]``.

    ``t`` must be purely periodic.  The shift orbit of ``t`` closes after
    one address period, but the alignment against the target needs the
    least common multiple of the two period lengths; early exit on the
    first mismatch.
    """
    n = len(target)
    steps = lcm(len(t.period), n)
    cur = t
    for i in range(steps):
        res = sector_of(P, cur)
        if isinstance(res, Boundary) or res.k != target[i % n]:
            return False
        cur = cur.shift()
    return True


def addresses_of_periodic(
    P: Partition,
    p: Plain,
    m_max: int = DEFAULT_M_MAX,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    paranoid: bool = False,
) -> AddressSet:
    """All periodic external addresses with itinerary ``p``.

    For ``m = 1, 2, ...`` every offset vector in ``{0,1}^(m*n)`` is tried;
    the search stops at the first ``m`` with a nonempty result, which is
    exhaustive because all realizing addresses share one minimal period.
    ``paranoid`` additionally scans ``m+1 .. 2m`` and checks that nothing
    new turns up.

    Raises :class:`RealizationBoundExceededError` when ``m_max`` or the
    candidate cap is exhausted first.
    """
    if not isinstance(p, Plain) or p.seq.preperiod:
        raise ValueError(f"itinerary {p} is not purely periodic")
    target = list(p.seq.period)
    n = len(target)

    def scan(m: int) -> set[ExtAddress]:
        found: set[ExtAddress] = set()
        entries_base = [P.offset_j0 + target[i % n] for i in range(m * n)]
        for eps in product((0, 1), repeat=m * n):
            cand = canonicalize((), [b + e for b, e in zip(entries_base, eps)])
            if cand in found:
                continue
            if _matches_periodic(P, cand, target):
                found.add(cand)
        return found

    for m in range(1, m_max + 1):
        if 2 ** (m * n) > candidate_cap:
            raise RealizationBoundExceededError(
                f"candidate space 2^{m * n} exceeds cap for itinerary {p}"
            )
        found = scan(m)
        if found:
            if paranoid:
                for m2 in range(m + 1, 2 * m + 1):
                    if 2 ** (m2 * n) > candidate_cap:
                        break
                    extra = scan(m2) - found
                    if extra:
                        raise AssertionError(
                            f"paranoid scan found new addresses {extra} for {p} at m={m2}"
                        )
            return AddressSet(tuple(sorted(found)), p)
    raise RealizationBoundExceededError(
        f"no realizing address of {p} found for m <= {m_max}"
    )


def _boundary_pullbacks(
    P: Partition, prefix: Sequence[int], m_range: Iterable[int]
) -> list[ExtAddress]:
    ms = list(m_range)
    if not ms:
        raise EmptyRangeError("pre-singular realization requires a nonempty m range")
    out = []
    for m in ms:
        a = P.base.prepend(m)
        for k in reversed(list(prefix)):
            a = inverse_branch(P, k, a)
        out.append(a)
    return out


def addresses_of(
    P: Partition,
    t: Itinerary,
    m_max: int = DEFAULT_M_MAX,
    m_range: Iterable[int] | None = None,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
    paranoid: bool = False,
) -> AddressSet:
    """External addresses realizing the itinerary ``t``.

    Preperiodic itineraries are obtained by pulling the realizations of
    the periodic part back through the inverse branches prescribed by the
    preperiod, keeping those whose itinerary is exactly ``t``.  For a
    pre-singular ``t`` the full family is infinite (one pullback of the
    partition boundary per integer), so a finite ``m_range`` must be
    supplied by the caller.
    """
    if isinstance(t, PreSingular):
        if m_range is None:
            raise EmptyRangeError(
                "pre-singular realization requires an explicit m range"
            )
        addrs = _boundary_pullbacks(P, t.prefix, m_range)
        return AddressSet(tuple(sorted(addrs)), t)

    per = Plain(canonicalize((), t.seq.period))
    periodic = addresses_of_periodic(P, per, m_max, candidate_cap, paranoid)
    if not t.seq.preperiod:
        return periodic
    out = []
    for a in periodic:
        for k in reversed(t.seq.preperiod):
            a = inverse_branch(P, k, a)
        if itinerary(P, a) == t:
            out.append(a)
    return AddressSet(tuple(sorted(out)), t)


@dataclass(frozen=True, slots=True)
class SeparatingAddress:
    """An address of the middle-point itinerary, located relative to the
    triod: strictly inside cyclic gap ``(member_gap, member_gap+1)`` or
    equal to member ``member`` (1-based indices, None otherwise)."""

    address: ExtAddress
    gap: int | None
    member: int | None


def _stop_stage(A: AddressTriod, max_steps: int = 10_000) -> AddressTriod:
    """Iterate the address triod map until just before the stop case."""
    from .triods import address_triod_step

    cur = A
    for _ in range(max_steps):
        nxt = address_triod_step(cur)
        if nxt is None:
            return cur
        cur = nxt
    raise AssertionError("address triod did not stop; caller must check the shape first")


def separating_addresses(
    P: Partition,
    A: AddressTriod,
    m_max: int = DEFAULT_M_MAX,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> tuple[TriodShape, list[SeparatingAddress]]:
    """Addresses of the triod's middle point, assigned to its cyclic gaps.

    For a branched triod every gap must receive at least one address; for
    a linear triod the middle member itself realizes the middle point and
    at least one further address lies in the gap opposite the middle.
    A violation raises :class:`GapAssignmentFailureError` (it would mean
    an internal inconsistency, not bad input).
    """
    T = to_itinerary_triod(A)
    b = middle_point(T)
    shape = classify(T)

    if isinstance(b, PreSingular):
        # Boundary pullbacks; take the sheet range from both the initial
        # and the stop-stage members so the gaps around each member are
        # covered.
        firsts = [x.entry(1) for x in A.members]
        firsts += [x.entry(1) for x in _stop_stage(A).members]
        addrs = _boundary_pullbacks(P, b.prefix, range(min(firsts) - 1, max(firsts) + 2))
    else:
        addrs = list(addresses_of(P, b, m_max, candidate_cap=candidate_cap))

    t1, t2, t3 = A.members
    gaps = [(t1, t2), (t2, t3), (t3, t1)]
    out: list[SeparatingAddress] = []
    for a in addrs:
        member = next((i for i, t in enumerate(A.members, start=1) if a == t), None)
        if member is not None:
            out.append(SeparatingAddress(a, gap=None, member=member))
            continue
        gap = next(
            (i for i, (lo, hi) in enumerate(gaps, start=1) if cyclic_between(lo, a, hi)),
            None,
        )
        out.append(SeparatingAddress(a, gap=gap, member=None))

    got_gaps = {sa.gap for sa in out if sa.gap is not None}
    if shape.is_linear():
        j = shape.middle
        opposite = (j % 3) + 1
        if not any(sa.member == j for sa in out):
            raise GapAssignmentFailureError(
                f"linear triod {A}: middle member {j} does not realize {b}"
            )
        if opposite not in got_gaps:
            raise GapAssignmentFailureError(
                f"linear triod {A}: no address of {b} in the gap opposite member {j}"
            )
    else:
        if got_gaps != {1, 2, 3}:
            raise GapAssignmentFailureError(
                f"branched triod {A}: gaps {sorted(got_gaps)} covered, expected all three"
            )
    return shape, out

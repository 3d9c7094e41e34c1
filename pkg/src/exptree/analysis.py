"""Derived invariants and decision procedures on abstract Hubbard trees.

Trees are compared through itinerary-keyed canonical forms: itineraries
are intrinsic labels (recomputable from sector data and the dynamics),
so structural equality of the keyed data decides equivalence.  The core
entropy is the logarithm of the spectral radius of the edge transition
matrix of the tree self-map; edge images are arcs, so each matrix row
marks the edges of one tree path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailureError, NotExpansiveError, PeriodicBaseError
from .partition import (
    Itinerary,
    Plain,
    itinerary,
    itinerary_entry,
    validate_base,
)
from .sequences import ExtAddress
from .treebuild import AbstractHubbardTree

__all__ = [
    "ExpansivityReport",
    "TransitionMatrix",
    "core_entropy",
    "expansivity_report",
    "same_map",
    "spectral_radius_exact",
    "spectral_radius_power",
    "transition_matrix",
    "tree_equivalent",
]


def _canonical_form(T: AbstractHubbardTree):
    key = {v.id: str(v.itinerary) for v in T.vertices}
    edges = frozenset(frozenset((key[a], key[b])) for a, b in T.edges)
    dyn = {key[i]: key[img] for i, img in enumerate(T.dynamics)}
    sectors = {k: frozenset(key[i] for i in ids) for k, ids in T.sectors}
    orders = {}
    for i, order in enumerate(T.cyclic_order):
        if order is None:
            continue
        labels = tuple(key[j] for j in order)
        if labels:
            rot = min(range(len(labels)), key=lambda r: labels[r:] + labels[:r])
            labels = labels[rot:] + labels[:rot]
        orders[key[i]] = labels
    return (frozenset(key.values()), edges, dyn, sectors, key[T.singular_point], orders)


def tree_equivalent(T1: AbstractHubbardTree, T2: AbstractHubbardTree) -> bool:
    """Equivalence of abstract Hubbard trees.

    True iff the itinerary-labeled vertex sets, edges, dynamics, sector
    labels and rotation-normalized cyclic orders all coincide.
    """
    return _canonical_form(T1) == _canonical_form(T2)


def same_map(s1: ExtAddress, s2: ExtAddress) -> bool:
    """Do two preperiodic base addresses belong to the same map?

    True iff the itinerary of ``s2`` with respect to ``s1`` equals the
    kneading sequence of ``s1``.  Both addresses must be strictly
    preperiodic (:class:`PeriodicBaseError` otherwise).
    """
    P1 = validate_base(s1)
    if s2.is_periodic():
        raise PeriodicBaseError(f"address {s2} is purely periodic")
    return itinerary(P1, s2) == P1.kneading


@dataclass(frozen=True)
class ExpansivityReport:
    """First-separation depths: for each unordered vertex pair, the least
    ``n`` with differing itinerary entries at position ``n + 1``."""

    depths: dict[tuple[int, int], int]
    max_depth: int


def _sequence_params(it: Itinerary, nu_pre: int, nu_per: int) -> tuple[int, int]:
    if isinstance(it, Plain):
        return len(it.seq.preperiod), len(it.seq.period)
    return len(it.prefix) + 1 + nu_pre, nu_per


def expansivity_report(T: AbstractHubbardTree) -> ExpansivityReport:
    """Separation depths for all marked-point pairs of the tree.

    Raises :class:`NotExpansiveError` if some pair of vertices never
    separates, which cannot happen for built trees but is checked for
    externally supplied ones.
    """
    P = T.partition
    nu_pre = len(P.kneading.seq.preperiod)
    nu_per = len(P.kneading.seq.period)
    depths: dict[tuple[int, int], int] = {}
    for i in range(len(T.vertices)):
        for j in range(i + 1, len(T.vertices)):
            a = T.vertices[i].itinerary
            b = T.vertices[j].itinerary
            pa, qa = _sequence_params(a, nu_pre, nu_per)
            pb, qb = _sequence_params(b, nu_pre, nu_per)
            bound = max(pa, pb) + math.lcm(qa, qb)
            for n in range(bound):
                if itinerary_entry(P, a, n + 1) != itinerary_entry(P, b, n + 1):
                    depths[(i, j)] = n
                    break
            else:
                raise NotExpansiveError(
                    f"vertices {a} and {b} have identical itineraries"
                )
    return ExpansivityReport(depths, max(depths.values(), default=0))


@dataclass(frozen=True)
class TransitionMatrix:
    """Edge transition matrix: entry ``(e, f)`` is 1 iff the image arc of
    edge ``e`` covers edge ``f``."""

    matrix: np.ndarray
    edges: tuple[tuple[int, int], ...]

    def row_map(self) -> dict[tuple[int, int], set[tuple[int, int]]]:
        """Edge-to-covered-edges view, independent of row order."""
        out = {}
        for i, e in enumerate(self.edges):
            out[e] = {self.edges[j] for j in np.nonzero(self.matrix[i])[0]}
        return out


def transition_matrix(T: AbstractHubbardTree) -> TransitionMatrix:
    """Markov matrix of the tree self-map over the edges.

    The image of an edge ``(u, v)`` is the tree path from the image of
    ``u`` to the image of ``v``; the row of ``(u, v)`` marks every edge
    on that path.
    """
    edges = T.edges
    index = {frozenset(e): i for i, e in enumerate(edges)}
    mat = np.zeros((len(edges), len(edges)), dtype=np.int64)
    for i, (u, v) in enumerate(edges):
        path = T.path(T.dynamics[u], T.dynamics[v])
        for a, b in zip(path, path[1:]):
            mat[i, index[frozenset((a, b))]] = 1
    return TransitionMatrix(mat, edges)


def spectral_radius_power(
    A: np.ndarray,
    tol: float = 1e-9,
    max_iter: int = 100_000,
    history: int = 128,
) -> float:
    """Spectral radius of a nonnegative matrix by iterated matrix-vector
    products from the all-ones vector.

    Each step applies the matrix and renormalizes; the growth estimate
    over a window of ``p`` steps is the geometric mean of the last ``p``
    one-norm ratios.  The iteration is accepted once the normalized
    vector revisits its value from ``p`` steps earlier (the relevant
    window for matrices whose peripheral spectrum oscillates with period
    ``p``) and successive growth estimates differ by less than ``tol``.
    Raises :class:`ConvergenceFailureError` at the iteration cap.
    """
    n = A.shape[0]
    if n == 0:
        return 0.0
    fl = A.astype(float)
    x = np.ones(n, dtype=float) / n
    vectors = [x]
    log_ratios: list[float] = []
    prev_estimate = None
    for _ in range(max_iter):
        y = fl @ x
        norm = y.sum()
        if norm == 0.0:
            return 0.0  # nilpotent: the orbit dies out
        x = y / norm
        vectors.append(x)
        log_ratios.append(math.log(norm))
        if len(vectors) > history:
            vectors.pop(0)
        estimate = None
        for p in range(1, len(vectors)):
            if np.max(np.abs(x - vectors[-1 - p])) < 1e-12:
                window = log_ratios[-p:]
                estimate = math.exp(sum(window) / p)
                break
        if estimate is not None and prev_estimate is not None:
            if abs(estimate - prev_estimate) < tol * max(1.0, estimate):
                return estimate
        prev_estimate = estimate
    raise ConvergenceFailureError(
        f"growth estimates did not stabilize within {max_iter} iterations"
    )


def spectral_radius_exact(A: np.ndarray) -> float:
    """Spectral radius via the characteristic polynomial.

    The matrix is a nonnegative integer matrix, so its spectral radius is
    its largest real eigenvalue; the roots are isolated exactly with
    sympy and evaluated to high precision.
    """
    import sympy

    n = A.shape[0]
    if n == 0:
        return 0.0
    M = sympy.Matrix(A.tolist())
    lam = sympy.symbols("lam")
    poly = M.charpoly(lam)
    roots = sympy.real_roots(poly.as_expr(), lam)
    if not roots:
        return 0.0
    return float(max(sympy.Float(r.evalf(30)) for r in roots))


def core_entropy(
    T: AbstractHubbardTree,
    tol: float = 1e-9,
    max_iter: int = 200_000,
    exact_size_limit: int = 12,
) -> float:
    """Core entropy: log of the spectral radius of the transition matrix.

    Uses the matrix-vector growth method; when that fails to stabilize
    and the matrix is small enough, falls back to exact root isolation.
    A spectral radius at most 1 yields entropy 0.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    A = transition_matrix(T).matrix
    try:
        rho = spectral_radius_power(A, tol, max_iter)
    except ConvergenceFailureError:
        if A.shape[0] <= exact_size_limit:
            rho = spectral_radius_exact(A)
        else:
            raise
    return math.log(rho) if rho > 1.0 else 0.0

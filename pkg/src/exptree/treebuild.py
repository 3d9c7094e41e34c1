"""Construction of the abstract exponential Hubbard tree.

The vertex set consists of the forward orbit of the singular point
``*nu`` under the shift together with the middle points of all triods of
orbit members.  Betweenness of vertices is decided by the triod
algorithm (``w`` lies on the arc ``[u, v]`` iff the middle point of
``[u, w, v]`` is ``w``), edges are pairs with nothing in between, the
vertex dynamics is the shift, and branches at the singular point are
labeled by the shared first itinerary entry of their vertices.  At every
other vertex of degree at least three, the realizing external addresses
of the vertex split the circle at infinity into gaps, one per branch,
which yields the cyclic order of the branches.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from itertools import combinations

from .errors import (
    ClosureViolationError,
    GapAssignmentFailureError,
    NotATreeError,
    NotExpansiveError,
)
from .partition import (
    STAR,
    Itinerary,
    Partition,
    Plain,
    PreSingular,
    is_in_S_nu,
    itinerary_entry,
    shift_itinerary,
    validate_base,
)
from .realization import DEFAULT_CANDIDATE_CAP, DEFAULT_M_MAX, addresses_of
from .sequences import ExtAddress, compare_lex, cyclic_between
from .triods import Triod, middle_point

__all__ = [
    "AbstractHubbardTree",
    "Vertex",
    "VertexKind",
    "build_tree",
    "check_tree_invariants",
    "omega_plus",
    "to_dot",
    "to_json",
    "tree_from_json",
    "vertex_set",
]


class VertexKind(Enum):
    SINGULAR = "singular"
    POST_SINGULAR = "postsingular"
    BRANCH_EXTRA = "branch"
    BOTH = "both"


@dataclass(frozen=True, slots=True)
class Vertex:
    id: int
    itinerary: Itinerary
    kind: VertexKind

    def __str__(self) -> str:
        return f"{self.id}:{self.itinerary}[{self.kind.value}]"


@dataclass(frozen=True)
class AbstractHubbardTree:
    """Finite tree with shift dynamics, sector labels at the singular
    point and cyclic orders at all other vertices.

    Vertex ids index ``vertices``; ``dynamics[i]`` is the image id of
    vertex ``i``; ``cyclic_order[i]`` lists the neighbors of ``i`` in
    cyclic order (``None`` exactly for the singular point, whose branch
    order is carried by the integer sector labels).
    """

    partition: Partition
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]
    dynamics: tuple[int, ...]
    singular_point: int
    sectors: tuple[tuple[int, tuple[int, ...]], ...]
    cyclic_order: tuple[tuple[int, ...] | None, ...]
    notes: tuple[str, ...] = ()

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {k: sorted(v) for k, v in adj.items()}

    def degree(self, vid: int) -> int:
        return sum(1 for a, b in self.edges if vid in (a, b))

    def path(self, a: int, b: int) -> list[int]:
        """Vertex ids along the unique tree path from ``a`` to ``b``."""
        adj = self.adjacency()
        prev = {a: None}
        queue = [a]
        while queue:
            cur = queue.pop(0)
            if cur == b:
                break
            for nxt in adj[cur]:
                if nxt not in prev:
                    prev[nxt] = cur
                    queue.append(nxt)
        if b not in prev:
            raise NotATreeError(f"no path between vertices {a} and {b}")
        out = [b]
        while out[-1] != a:
            out.append(prev[out[-1]])
        return out[::-1]

    def vertex_by_itinerary(self) -> dict[Itinerary, int]:
        return {v.itinerary: v.id for v in self.vertices}

    def sector_map(self) -> dict[int, tuple[int, ...]]:
        return dict(self.sectors)

    def __str__(self) -> str:
        return (
            f"AbstractHubbardTree(base={self.partition.base}, "
            f"|V|={len(self.vertices)}, |E|={len(self.edges)})"
        )


def omega_plus(P: Partition) -> list[Itinerary]:
    """The forward orbit of the singular point: ``*nu`` and all shifts of
    the kneading sequence."""
    return [PreSingular(())] + [Plain(x) for x in P.kneading.seq.shifts()]


def _sort_itineraries(items: list[Itinerary]) -> list[Itinerary]:
    """Deterministic vertex order: pre-singular first (by prefix), then
    plain itineraries lexicographically."""

    def cmp(a: Itinerary, b: Itinerary) -> int:
        a_pre = isinstance(a, PreSingular)
        b_pre = isinstance(b, PreSingular)
        if a_pre != b_pre:
            return -1 if a_pre else 1
        if a_pre:
            return -1 if a.prefix < b.prefix else (0 if a.prefix == b.prefix else 1)
        return compare_lex(a.seq, b.seq).value

    return sorted(items, key=cmp_to_key(cmp))


def vertex_set(P: Partition) -> list[Itinerary]:
    """The formal vertex set: the singular orbit plus all middle points
    of its triods, sorted deterministically (pre-singular first).

    Verifies closure under the shift and under taking triods of the full
    result; failures raise :class:`ClosureViolationError`.
    """
    orbit = omega_plus(P)
    cache: dict = {}
    verts: set[Itinerary] = set(orbit)
    for tri in combinations(orbit, 3):
        verts.add(middle_point(Triod(tri, P), _cache=cache))
    _check_closure(P, verts, cache)
    return _sort_itineraries(list(verts))


def _check_closure(P: Partition, verts: set[Itinerary], cache: dict) -> None:
    for it in verts:
        if not is_in_S_nu(P, it):
            raise ClosureViolationError(f"vertex {it} is not a formal point")
        if shift_itinerary(P, it) not in verts:
            raise ClosureViolationError(f"vertex set is not shift invariant at {it}")
    for tri in combinations(sorted(verts, key=str), 3):
        b = middle_point(Triod(tri, P), _cache=cache)
        if b not in verts:
            raise ClosureViolationError(
                f"vertex set not closed under triods: b{tri} = {b}"
            )


def _first_entries_span(vertices: list[Itinerary]) -> tuple[int, int]:
    firsts = [v.first_symbol() for v in vertices if v.first_symbol() != STAR]
    return min(firsts), max(firsts)


def _vertex_addresses(
    P: Partition,
    it: Itinerary,
    span: tuple[int, int],
    m_max: int,
    candidate_cap: int,
) -> tuple[ExtAddress, ...]:
    if isinstance(it, PreSingular):
        m_range = range(span[0] - 1, span[1] + 2)
        return addresses_of(P, it, m_range=m_range).addresses
    return addresses_of(P, it, m_max, candidate_cap=candidate_cap).addresses


def _min_rotation(seq: tuple[int, ...]) -> tuple[int, ...]:
    if not seq:
        return seq
    best = min(range(len(seq)), key=lambda i: seq[i:] + seq[:i])
    return seq[best:] + seq[:best]


def _cyclic_order_by_gaps(
    P: Partition,
    vid: int,
    vit: Itinerary,
    branches: list[tuple[int, list[int]]],
    itineraries: dict[int, Itinerary],
    span: tuple[int, int],
    m_max: int,
    candidate_cap: int,
    notes: list[str],
) -> tuple[int, ...]:
    """Order the branches at a vertex by the cyclic gaps of its realizing
    addresses.  ``branches`` holds ``(neighbor id, branch vertex ids)``."""
    anchors = _vertex_addresses(P, vit, span, m_max, candidate_cap)
    if len(anchors) < len(branches):
        raise GapAssignmentFailureError(
            f"vertex {vit}: {len(anchors)} addresses for {len(branches)} branches"
        )
    gap_of_branch: dict[int, int] = {}
    q = len(anchors)
    for nb, members in branches:
        gaps_seen: set[int] = set()
        for w in members:
            for a in _vertex_addresses(P, itineraries[w], span, m_max, candidate_cap):
                gap = next(
                    (
                        i
                        for i in range(q)
                        if cyclic_between(anchors[i], a, anchors[(i + 1) % q])
                    ),
                    None,
                )
                if gap is None:
                    raise GapAssignmentFailureError(
                        f"address {a} of branch vertex {itineraries[w]} collides "
                        f"with an anchor address of {vit}"
                    )
                gaps_seen.add(gap)
        if len(gaps_seen) != 1:
            raise GapAssignmentFailureError(
                f"branch through {nb} at vertex {vit} spans gaps {sorted(gaps_seen)}"
            )
        gap_of_branch[nb] = gaps_seen.pop()
    if len(set(gap_of_branch.values())) != len(branches):
        raise GapAssignmentFailureError(f"two branches at {vit} share a gap")
    if len(anchors) > len(branches):
        notes.append(
            f"vertex {vit}: {len(anchors)} realizing addresses for "
            f"{len(branches)} branches"
        )
    ordered = sorted(gap_of_branch, key=gap_of_branch.__getitem__)
    return tuple(ordered)


def _cyclic_order_presingular(
    P: Partition,
    vit: PreSingular,
    branches: list[tuple[int, list[int]]],
    itineraries: dict[int, Itinerary],
) -> tuple[int, ...] | None:
    """Branch order at a pre-singular vertex via the itinerary entry that
    the iterated dynamics exposes at the singular point.

    Each branch is read off from its vertices whose itineraries agree
    with the vertex prefix; if some branch has no such witness, ``None``
    is returned and the caller falls back to the address-gap method.
    """
    r = len(vit.prefix)
    entry_of_branch: dict[int, int] = {}
    for nb, members in branches:
        votes: set[int] = set()
        for w in members:
            wit = itineraries[w]
            head = tuple(itinerary_entry(P, wit, i) for i in range(1, r + 1))
            if head != vit.prefix:
                continue
            e = itinerary_entry(P, wit, r + 1)
            if e == STAR:
                continue
            votes.add(e)
        if len(votes) != 1:
            if len(votes) > 1:
                raise GapAssignmentFailureError(
                    f"branch at {vit} exposes several sectors {sorted(votes)}"
                )
            return None
        entry_of_branch[nb] = votes.pop()
    if len(set(entry_of_branch.values())) != len(branches):
        raise GapAssignmentFailureError(f"two branches at {vit} expose one sector")
    return tuple(sorted(entry_of_branch, key=entry_of_branch.__getitem__))


def build_tree(
    P: Partition,
    m_max: int = DEFAULT_M_MAX,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> AbstractHubbardTree:
    """Construct the abstract exponential Hubbard tree over ``P``."""
    its = vertex_set(P)
    n = len(its)
    it2id = {it: i for i, it in enumerate(its)}
    cache: dict = {}

    def mid(a: Itinerary, b: Itinerary, c: Itinerary) -> Itinerary:
        return middle_point(Triod((a, b, c), P), _cache=cache)

    # Betweenness scan: between[i][j] = set of vertices strictly inside [i, j].
    between: dict[tuple[int, int], set[int]] = {
        (i, j): set() for i in range(n) for j in range(i + 1, n)
    }
    for i, j, w in (
        (i, j, w) for i in range(n) for j in range(i + 1, n) for w in range(n)
    ):
        if w == i or w == j:
            continue
        if mid(its[i], its[w], its[j]) == its[w]:
            between[(i, j)].add(w)

    edges = tuple(
        (i, j) for (i, j), mids in sorted(between.items()) if not mids
    )

    # Dynamics: the shift; the singular point maps to the kneading vertex.
    sing = it2id[PreSingular(())]
    nu_id = it2id[Plain(P.kneading.seq)]
    dynamics = []
    for it in its:
        img = shift_itinerary(P, it)
        if img not in it2id:
            raise ClosureViolationError(f"shift of vertex {it} left the vertex set")
        dynamics.append(it2id[img])
    assert dynamics[sing] == nu_id

    tree = AbstractHubbardTree(
        partition=P,
        vertices=tuple(
            Vertex(i, it, VertexKind.POST_SINGULAR) for i, it in enumerate(its)
        ),
        edges=edges,
        dynamics=tuple(dynamics),
        singular_point=sing,
        sectors=(),
        cyclic_order=(),
        notes=(),
    )
    if len(edges) != n - 1 or len(_component(tree.adjacency(), 0)) != n:
        raise NotATreeError(
            f"betweenness produced {len(edges)} edges on {n} vertices"
        )

    # Sector labels at the singular point: shared first itinerary entry.
    adj = tree.adjacency()
    sector_groups: dict[int, list[int]] = {}
    for i, it in enumerate(its):
        if i == sing:
            continue
        sector_groups.setdefault(it.first_symbol(), []).append(i)
    sectors = tuple(sorted((k, tuple(sorted(v))) for k, v in sector_groups.items()))

    # Vertex kinds need degrees.
    orbit = set(omega_plus(P))
    kinds = []
    for i, it in enumerate(its):
        deg = len(adj[i])
        if i == sing:
            kinds.append(VertexKind.SINGULAR)
        elif it in orbit:
            kinds.append(VertexKind.BOTH if deg >= 3 else VertexKind.POST_SINGULAR)
        else:
            kinds.append(VertexKind.BRANCH_EXTRA)

    # Cyclic orders.
    span = _first_entries_span(its)
    notes: list[str] = []
    itineraries = dict(enumerate(its))
    cyclic: list[tuple[int, ...] | None] = []
    for i, it in enumerate(its):
        if i == sing:
            cyclic.append(None)
            continue
        nbrs = adj[i]
        if len(nbrs) <= 2:
            cyclic.append(_min_rotation(tuple(nbrs)))
            continue
        branches = [
            (nb, sorted(_component_without(adj, i, nb))) for nb in nbrs
        ]
        order: tuple[int, ...] | None = None
        if isinstance(it, PreSingular):
            order = _cyclic_order_presingular(P, it, branches, itineraries)
            if order is None:
                notes.append(
                    f"vertex {it}: no prefix witness in some branch; "
                    "used address gaps for the cyclic order"
                )
        if order is None:
            order = _cyclic_order_by_gaps(
                P, i, it, branches, itineraries, span, m_max, candidate_cap, notes
            )
        cyclic.append(_min_rotation(order))

    tree = AbstractHubbardTree(
        partition=P,
        vertices=tuple(Vertex(i, it, k) for (i, it), k in zip(enumerate(its), kinds)),
        edges=edges,
        dynamics=tuple(dynamics),
        singular_point=sing,
        sectors=sectors,
        cyclic_order=tuple(cyclic),
        notes=tuple(notes),
    )
    check_tree_invariants(tree)
    return tree


def _component(adj: dict[int, list[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _component_without(adj: dict[int, list[int]], removed: int, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt != removed and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _cyclic_subsequence(sub: list, full: list) -> bool:
    """Is ``sub`` a cyclic-order-preserving subsequence of ``full``?"""
    if len(sub) <= 2:
        return True
    pos = {x: i for i, x in enumerate(full)}
    idx = [pos[x] for x in sub]
    m = len(full)
    rot = idx.index(min(idx))
    idx = idx[rot:] + idx[:rot]
    return all(idx[i] < idx[i + 1] for i in range(len(idx) - 1))


def check_tree_invariants(tree: AbstractHubbardTree) -> None:
    """Verify all structural invariants of an abstract Hubbard tree.

    Raises :class:`NotATreeError`, :class:`NotExpansiveError` or
    :class:`ClosureViolationError` accordingly.
    """
    P = tree.partition
    n = len(tree.vertices)
    its = [v.itinerary for v in tree.vertices]
    adj = tree.adjacency()

    if len(set(its)) != n:
        raise NotExpansiveError("two vertices share an itinerary")
    if len(tree.edges) != n - 1 or len(_component(adj, 0)) != n:
        raise NotATreeError("vertex/edge data is not a tree")

    sing = tree.singular_point
    if its[sing] != PreSingular(()):
        raise ClosureViolationError("singular point does not carry the itinerary *nu")

    it2id = {it: i for i, it in enumerate(its)}
    for i, it in enumerate(its):
        img = shift_itinerary(P, it)
        if tree.dynamics[i] != it2id.get(img):
            raise ClosureViolationError(f"dynamics at vertex {it} is not the shift")

    # Endpoints lie on the singular orbit; the singular value is one.
    orbit = set(omega_plus(P))
    nu_id = it2id[Plain(P.kneading.seq)]
    for i in range(n):
        if len(adj[i]) == 1 and its[i] not in orbit:
            raise ClosureViolationError(f"endpoint {its[i]} is not on the singular orbit")
    if len(adj[nu_id]) != 1:
        raise ClosureViolationError("the singular value vertex is not an endpoint")

    # Sectors = branches at the singular point = first-entry groups.
    expected: dict[int, set[int]] = {}
    for i, it in enumerate(its):
        if i != sing:
            expected.setdefault(it.first_symbol(), set()).add(i)
    got = {k: set(v) for k, v in tree.sectors}
    if got != expected:
        raise ClosureViolationError("sector labels disagree with first itinerary entries")
    for nb in adj[sing]:
        comp = _component_without(adj, sing, nb)
        firsts = {its[i].first_symbol() for i in comp}
        if len(firsts) != 1:
            raise ClosureViolationError(
                f"branch at the singular point mixes sectors {sorted(firsts)}"
            )
    if nu_id not in got.get(0, set()):
        raise ClosureViolationError("the singular value vertex is not in sector 0")

    # Dynamics restricted to each branch at the singular point is injective.
    for nb in adj[sing]:
        comp = sorted(_component_without(adj, sing, nb))
        images = [tree.dynamics[i] for i in comp]
        if len(set(images)) != len(images):
            raise ClosureViolationError(
                "dynamics folds a branch at the singular point onto itself"
            )

    # Cyclic order bookkeeping and preservation under the dynamics.
    for i in range(n):
        order = tree.cyclic_order[i]
        if i == sing:
            if order is not None:
                raise ClosureViolationError("singular point must not carry a cyclic order")
            continue
        if order is None or sorted(order) != adj[i]:
            raise ClosureViolationError(f"cyclic order at vertex {its[i]} is inconsistent")

    for i in range(n):
        if i == sing or len(adj[i]) < 3:
            continue
        image = tree.dynamics[i]
        branch_images = []
        for nb in tree.cyclic_order[i]:
            w = tree.dynamics[nb]
            if w == image:
                raise ClosureViolationError(
                    f"neighbor {its[nb]} collapses onto the image of {its[i]}"
                )
            branch_images.append(tree.path(image, w)[1])
        if len(set(branch_images)) != len(branch_images):
            raise ClosureViolationError(f"dynamics folds branches at {its[i]}")
        if image == sing:
            firsts = [its[w].first_symbol() for w in branch_images]
            ok = _cyclic_subsequence(firsts, sorted(set(firsts)))
        else:
            ok = _cyclic_subsequence(branch_images, list(tree.cyclic_order[image]))
        if not ok:
            raise ClosureViolationError(
                f"dynamics does not preserve the cyclic order at {its[i]}"
            )


def _itinerary_to_text(it: Itinerary) -> str:
    return str(it)


def to_json(tree: AbstractHubbardTree, indent: int | None = None) -> str:
    """Serialize per the library's stable JSON schema."""
    doc = {
        "base": str(tree.partition.base),
        "kneading": str(tree.partition.kneading),
        "vertices": [
            {"id": v.id, "itinerary": _itinerary_to_text(v.itinerary), "kind": v.kind.value}
            for v in tree.vertices
        ],
        "edges": [[a, b] for a, b in tree.edges],
        "dynamics": {str(i): img for i, img in enumerate(tree.dynamics)},
        "singular_point": tree.singular_point,
        "sectors": {str(k): list(ids) for k, ids in tree.sectors},
        "cyclic_order": {
            str(i): list(order)
            for i, order in enumerate(tree.cyclic_order)
            if order is not None
        },
    }
    return json.dumps(doc, indent=indent)


def tree_from_json(text: str) -> AbstractHubbardTree:
    """Rebuild a tree from its JSON form (used by round-trip checks)."""
    from .cli import parse_itinerary  # grammar lives in the cli module

    doc = json.loads(text)
    from .cli import parse_address

    P = validate_base(parse_address(doc["base"]))
    if str(P.kneading) != doc["kneading"]:
        raise ClosureViolationError(
            f"stored kneading {doc['kneading']} disagrees with the base {doc['base']}"
        )
    vertices = tuple(
        Vertex(v["id"], parse_itinerary(v["itinerary"]), VertexKind(v["kind"]))
        for v in sorted(doc["vertices"], key=lambda v: v["id"])
    )
    n = len(vertices)
    cyclic: list[tuple[int, ...] | None] = [None] * n
    for k, order in doc["cyclic_order"].items():
        cyclic[int(k)] = tuple(order)
    return AbstractHubbardTree(
        partition=P,
        vertices=vertices,
        edges=tuple(sorted(tuple(sorted(e)) for e in doc["edges"])),
        dynamics=tuple(doc["dynamics"][str(i)] for i in range(n)),
        singular_point=doc["singular_point"],
        sectors=tuple(
            sorted((int(k), tuple(sorted(v))) for k, v in doc["sectors"].items())
        ),
        cyclic_order=tuple(cyclic),
    )


def to_dot(tree: AbstractHubbardTree) -> str:
    """GraphViz form: undirected tree edges plus a dashed overlay showing
    the vertex dynamics."""
    lines = ["digraph hubbard_tree {"]
    for v in tree.vertices:
        shape = "doublecircle" if v.id == tree.singular_point else "circle"
        lines.append(f'  {v.id} [label="{v.itinerary}", shape={shape}];')
    for a, b in tree.edges:
        lines.append(f"  {a} -> {b} [dir=none];")
    for i, img in enumerate(tree.dynamics):
        lines.append(f"  {i} -> {img} [style=dashed, constraint=false, color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Diagram-level invariants: Seifert circles, genus, alternating, special, prime."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, DiagramError, require_valid


class NotReducedError(DiagramError):
    """The diagram has a nugatory crossing, so primality is not decided by it."""

    def __init__(self, crossings: list[int]):
        self.crossings = crossings
        super().__init__(f"diagram is not reduced; nugatory crossings {crossings}")


@dataclass(frozen=True)
class SeifertData:
    circles: tuple[tuple[int, ...], ...]
    crossing_count: int

    @property
    def s(self) -> int:
        return len(self.circles)

    @property
    def c(self) -> int:
        return self.crossing_count

    @property
    def chi(self) -> int:
        return self.s - self.c

    def circle_of(self) -> dict[int, int]:
        return {e: i for i, circ in enumerate(self.circles) for e in circ}


def _smoothed_out_slot(d: Diagram, x: int, in_slot: int) -> int:
    """Out slot joined to ``in_slot`` by the oriented smoothing of crossing ``x``.

    The incoming ends sit at adjacent slots, and each is joined to the
    outgoing end that is not across from it.
    """
    for s in ((in_slot + 1) % 4, (in_slot - 1) % 4):
        if not d.is_incoming((x, s)):
            return s
    raise DiagramError(f"crossing {x} is not consistently oriented")


def seifert_circles(d: Diagram) -> SeifertData:
    require_valid(d)
    seen: set[int] = set()
    circles = []
    for start in range(1, d.edge_count + 1):
        if start in seen:
            continue
        circ = []
        e = start
        while e not in seen:
            seen.add(e)
            circ.append(e)
            x, s = d.head(e)
            e = d.pd[x][_smoothed_out_slot(d, x, s)]
        circles.append(tuple(circ))
    return SeifertData(tuple(circles), d.crossing_count)


def genus(d: Diagram) -> int:
    """Genus of the surface produced by Seifert's algorithm on a knot diagram."""
    ncomp, _ = d.components()
    if ncomp != 1:
        raise DiagramError(f"genus needs a knot, got {ncomp} components")
    chi = seifert_circles(d).chi
    return (1 - chi) // 2


def is_alternating(d: Diagram) -> bool:
    # every edge must run from an over-passage to an under-passage or back
    require_valid(d)
    for e in range(1, d.edge_count + 1):
        if d.tail(e)[1] % 2 == d.head(e)[1] % 2:
            return False
    return True


def crossing_sides(d: Diagram, data: SeifertData | None = None) -> dict[int, set[str]]:
    """For each Seifert circle, the sides ("L"/"R") on which its crossings lie.

    Following a smoothed arc from in-slot ``s`` to out-slot ``s + 1`` is a
    right turn, leaving the crossing on the circle's left.
    """
    data = data or seifert_circles(d)
    owner = data.circle_of()
    sides: dict[int, set[str]] = {i: set() for i in range(data.s)}
    for x in range(d.crossing_count):
        for s in range(4):
            if not d.is_incoming((x, s)):
                continue
            out = _smoothed_out_slot(d, x, s)
            side = "L" if out == (s + 1) % 4 else "R"
            sides[owner[d.pd[x][s]]].add(side)
    return sides


def is_special(d: Diagram) -> bool:
    """True iff every Seifert circle has all its crossings on one side.

    On the sphere this is the same as each circle bounding a disc that
    misses the other circles: the empty side of a circle cannot contain
    other circles because the diagram is connected.
    """
    return all(len(s) == 1 for s in crossing_sides(d).values())


def nugatory_crossings(d: Diagram) -> list[int]:
    """Crossings where two opposite corners belong to the same face."""
    fs = d.faces()
    cf = fs.corner_face
    return [x for x in range(d.crossing_count)
            if cf[(x, 0)] == cf[(x, 2)] or cf[(x, 1)] == cf[(x, 3)]]


def is_reduced(d: Diagram) -> bool:
    return not nugatory_crossings(d)


def _bridges(n_vertices: int, edges: list[tuple[int, int]], skip: int) -> list[int]:
    """Indices of bridges of a multigraph (edge ``skip`` removed), iteratively."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_vertices)]
    for i, (u, v) in enumerate(edges):
        if i == skip:
            continue
        adj[u].append((v, i))
        adj[v].append((u, i))
    disc = [-1] * n_vertices
    low = [0] * n_vertices
    out = []
    timer = 0
    for root in range(n_vertices):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            u, via, it = stack[-1]
            advanced = False
            for w, i in it:
                if i == via:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, i, iter(adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    out.append(via)
    return out


def two_edge_cuts(d: Diagram) -> list[tuple[int, int]]:
    """Every pair of edges whose removal disconnects the underlying 4-valent graph.

    Exhaustive: for each edge, the partners completing a cut are exactly the
    bridges of the graph with that edge deleted.
    """
    require_valid(d)
    labels = list(range(1, d.edge_count + 1))
    edges = [(d.occurrences[e][0][0], d.occurrences[e][1][0]) for e in labels]
    cuts = set()
    for i in range(len(edges)):
        for j in _bridges(d.crossing_count, edges, i):
            cuts.add((min(i, j) + 1, max(i, j) + 1))
    return sorted(cuts)


def shared_edge_face_pairs(d: Diagram) -> list[tuple[int, int, tuple[int, ...]]]:
    """Pairs of distinct faces sharing two or more edges.

    In a connected plane graph these correspond to 2-edge cuts, which gives a
    dual-side check of :func:`two_edge_cuts`.
    """
    fs = d.faces()
    sides: dict[int, list[int]] = {}
    for fi, face in enumerate(fs.faces):
        for x, s in face:
            sides.setdefault(d.pd[x][(s + 1) % 4], []).append(fi)
    shared: dict[tuple[int, int], list[int]] = {}
    for e, fl in sides.items():
        f, g = sorted(fl)
        if f != g:
            shared.setdefault((f, g), []).append(e)
    return [(f, g, tuple(sorted(es))) for (f, g), es in sorted(shared.items()) if len(es) >= 2]


def diagram_prime(d: Diagram) -> bool:
    """True iff the reduced diagram has no 2-edge cut.

    Raises :class:`NotReducedError` when a nugatory crossing is present.
    """
    if not d.is_connected():
        raise DiagramError("primality test needs a connected diagram")
    bad = nugatory_crossings(d)
    if bad:
        raise NotReducedError(bad)
    return not two_edge_cuts(d)

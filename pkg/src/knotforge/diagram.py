"""Oriented link diagrams as planar-diagram (PD) combinatorial maps.

Conventions
-----------
* Each crossing is a 4-tuple of edge labels listed counterclockwise, starting
  at the incoming under-strand.  Slots 0 and 2 carry the under-strand, slots 1
  and 3 the over-strand.
* Edges are labelled ``1..edge_count``.  Reading the crossings in order and
  each tuple left to right, every label occurs exactly twice.  The *stored
  direction* of an edge runs from its first occurrence to its second one;
  ``orientation[e - 1]`` is ``+1`` when the link travels along the stored
  direction and ``-1`` otherwise.
* An edge end is a ``(crossing index, slot)`` pair.  A corner ``(x, s)`` is
  the region between slots ``s`` and ``s + 1`` of crossing ``x``.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

End = tuple[int, int]


class DiagramError(ValueError):
    """Raised when an operation receives a diagram violating its preconditions."""


@dataclass(frozen=True)
class Crossing:
    slots: tuple[int, int, int, int]
    over_sign: int

    def under(self) -> tuple[int, int]:
        return self.slots[0], self.slots[2]

    def over(self) -> tuple[int, int]:
        return self.slots[1], self.slots[3]


@dataclass
class ValidationReport:
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def add(self, message: str) -> None:
        self.failures.append(message)


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[End, ...], ...]
    corner_face: dict[End, int]

    def __len__(self) -> int:
        return len(self.faces)

    def face_edges(self, d: Diagram) -> list[list[int]]:
        """Edge labels bounding each face, in traversal order."""
        out = []
        for face in self.faces:
            out.append([d.slot_edge(end) for end in face])
        return out


class Diagram:
    """An oriented link diagram.  Treat instances as immutable."""

    def __init__(self, crossings: Sequence[Sequence[int]], orientation: Sequence[int]):
        self.pd: tuple[tuple[int, int, int, int], ...] = tuple(
            tuple(int(x) for x in c) for c in crossings  # type: ignore[misc]
        )
        self.orientation: tuple[int, ...] = tuple(int(o) for o in orientation)

    # construction helpers -------------------------------------------------

    @classmethod
    def from_heads(cls, pd: Sequence[Sequence[int]], heads: dict[int, End]) -> Diagram:
        """Build a diagram from PD tuples and the arrival end of every edge."""
        d = cls(pd, [1] * (2 * len(pd)))
        orientation = [1 if heads[e] == d.occurrences[e][1] else -1
                       for e in range(1, d.edge_count + 1)]
        return cls(pd, orientation)

    @classmethod
    def from_pd(cls, pd: Sequence[Sequence[int]]) -> Diagram:
        """Build a diagram from a bare PD code, inferring the orientation.

        Under-strands fix the direction of their edges and directions then
        propagate along over-strands.  A component that never passes under
        anything keeps the stored direction of its smallest edge.
        """
        pd = [tuple(int(x) for x in c) for c in pd]
        if any(len(c) != 4 for c in pd):
            raise DiagramError("every crossing needs 4 slots")
        occ: dict[int, list[End]] = {}
        for x, c in enumerate(pd):
            for s, e in enumerate(c):
                occ.setdefault(e, []).append((x, s))
        if any(len(v) != 2 for v in occ.values()):
            raise DiagramError("edge multiplicity: every label must occur exactly twice")
        labels = sorted(occ)
        if labels != list(range(1, len(labels) + 1)):
            raise DiagramError("edge labels must be 1..E")

        def other(end: End) -> End:
            a, b = occ[pd[end[0]][end[1]]]
            return b if a == end else a

        heads: dict[int, End] = {}
        for x, c in enumerate(pd):
            heads.setdefault(c[0], (x, 0))
            heads.setdefault(c[2], other((x, 2)))

        def propagate() -> None:
            changed = True
            while changed:
                changed = False
                for x, c in enumerate(pd):
                    for s, t in ((1, 3), (3, 1)):
                        e, f = c[s], c[t]
                        if e in heads and f not in heads:
                            # arriving at slot s means leaving at slot t
                            heads[f] = other((x, t)) if heads[e] == (x, s) else (x, t)
                            changed = True

        propagate()
        for e in labels:
            if e not in heads:
                heads[e] = occ[e][1]
                propagate()
        return cls.from_heads(pd, heads)

    # basic structure ------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.pd)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.pd)

    @cached_property
    def occurrences(self) -> dict[int, tuple[End, End]]:
        occ: dict[int, list[End]] = {}
        for x, c in enumerate(self.pd):
            for s, e in enumerate(c):
                occ.setdefault(e, []).append((x, s))
        return {e: tuple(v) for e, v in occ.items()}  # type: ignore[misc]

    def slot_edge(self, end: End) -> int:
        return self.pd[end[0]][end[1]]

    def other_end(self, end: End) -> End:
        a, b = self.occurrences[self.slot_edge(end)]
        return b if a == end else a

    def head(self, e: int) -> End:
        """The end where the link arrives along edge ``e``."""
        first, second = self.occurrences[e]
        return second if self.orientation[e - 1] == 1 else first

    def tail(self, e: int) -> End:
        first, second = self.occurrences[e]
        return first if self.orientation[e - 1] == 1 else second

    def is_incoming(self, end: End) -> bool:
        return self.head(self.slot_edge(end)) == end

    @cached_property
    def crossings(self) -> tuple[Crossing, ...]:
        return tuple(Crossing(c, self._sign(x)) for x, c in enumerate(self.pd))

    def _sign(self, x: int) -> int:
        # over-strand from slot 3 to slot 1 is a right-handed crossing
        return 1 if self.is_incoming((x, 3)) else -1

    def signs(self) -> list[int]:
        return [c.over_sign for c in self.crossings]

    def writhe(self) -> int:
        return sum(self.signs())

    # traversal ------------------------------------------------------------

    def next_edge(self, e: int) -> int:
        """Edge that follows ``e`` along its strand."""
        x, s = self.head(e)
        return self.pd[x][(s + 2) % 4]

    @cached_property
    def _component_data(self) -> tuple[list[list[int]], dict[int, int]]:
        seen: dict[int, int] = {}
        comps: list[list[int]] = []
        for start in range(1, self.edge_count + 1):
            if start in seen:
                continue
            path = []
            e = start
            while e not in seen:
                seen[e] = len(comps)
                path.append(e)
                e = self.next_edge(e)
            comps.append(path)
        return comps, seen

    def component_paths(self) -> list[list[int]]:
        """Edges of each component in travel order, starting at its smallest label."""
        return [list(p) for p in self._component_data[0]]

    def components(self) -> tuple[int, dict[int, int]]:
        """Number of link components and the component label of every edge."""
        comps, labels = self._component_data
        return len(comps), dict(labels)

    def faces(self) -> FaceSet:
        """Complementary regions of the diagram, as cycles of corners.

        Raises DiagramError for a disconnected map, where corner orbits do
        not correspond to regions of a single plane diagram.
        """
        if not self.is_connected():
            raise DiagramError("faces need a connected diagram")
        return self._faces

    @cached_property
    def _faces(self) -> FaceSet:
        corner_face: dict[End, int] = {}
        faces = []
        for x in range(self.crossing_count):
            for s in range(4):
                if (x, s) in corner_face:
                    continue
                cyc = []
                cur = (x, s)
                while cur not in corner_face:
                    corner_face[cur] = len(faces)
                    cyc.append(cur)
                    # leave along slot s+1, turn at the far end
                    y, t = self.other_end((cur[0], (cur[1] + 1) % 4))
                    cur = (y, t)
                faces.append(tuple(cyc))
        return FaceSet(tuple(faces), corner_face)

    def is_connected(self) -> bool:
        if not self.pd:
            return False
        parent = list(range(self.crossing_count))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for (x, _), (y, _) in self.occurrences.values():
            parent[find(x)] = find(y)
        return len({find(x) for x in range(self.crossing_count)}) == 1

    # transforms -----------------------------------------------------------

    def mirror(self) -> Diagram:
        """Swap over and under at every crossing, keeping the orientation."""
        pd = []
        slot_map: dict[End, End] = {}
        for x, c in enumerate(self.pd):
            i = 1 if self.is_incoming((x, 1)) else 3
            pd.append(tuple(c[(i + k) % 4] for k in range(4)))
            for s in range(4):
                slot_map[(x, s)] = (x, (s - i) % 4)
        heads = {e: slot_map[self.head(e)] for e in range(1, self.edge_count + 1)}
        return Diagram.from_heads(pd, heads)

    def relabel(self, order: Sequence[int] | None = None,
                edge_map: dict[int, int] | None = None) -> Diagram:
        """Reorder crossings (``order[k]`` = old index of new crossing k) and rename edges."""
        order = list(order) if order is not None else list(range(self.crossing_count))
        edge_map = edge_map or {e: e for e in range(1, self.edge_count + 1)}
        new_index = {old: new for new, old in enumerate(order)}
        pd = [tuple(edge_map[e] for e in self.pd[old]) for old in order]
        heads = {}
        for e in range(1, self.edge_count + 1):
            x, s = self.head(e)
            heads[edge_map[e]] = (new_index[x], s)
        return Diagram.from_heads(pd, heads)

    # validation -----------------------------------------------------------

    def validate(self) -> ValidationReport:
        return validate(self)

    # equality and serialization ------------------------------------------

    def canonical(self) -> tuple:
        """Canonical form up to crossing and edge relabelling.

        Edges are renumbered along each component in travel order; the
        starting edge of each component and the component order are chosen
        to minimize the resulting PD code.
        """
        return _canonical_form(self)

    def is_isomorphic(self, other: Diagram) -> bool:
        return self.canonical() == other.canonical()

    def to_json(self) -> str:
        return json.dumps({"crossings": [list(c) for c in self.pd],
                           "orientation": list(self.orientation)})

    @classmethod
    def from_json(cls, text: str | dict) -> Diagram:
        """Read diagram JSON; a missing ``orientation`` is inferred as for PD input."""
        data = json.loads(text) if isinstance(text, str) else text
        try:
            crossings = data["crossings"]
        except (KeyError, TypeError) as exc:
            raise DiagramError(f"missing diagram field: {exc}") from None
        if "orientation" not in data:
            return cls.from_pd(crossings)
        return cls(crossings, data["orientation"])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.pd == other.pd and self.orientation == other.orientation

    def __hash__(self) -> int:
        return hash((self.pd, self.orientation))

    def __repr__(self) -> str:
        return f"Diagram(crossings={len(self.pd)}, edges={self.edge_count})"


def validate(d: Diagram) -> ValidationReport:
    """Check every structural invariant of ``d``; never raises."""
    report = ValidationReport()
    if not d.pd:
        report.add("empty diagram unsupported")
        return report
    for x, c in enumerate(d.pd):
        if len(c) != 4:
            report.add(f"crossing {x}: expected 4 slots, got {len(c)}")
    if not report.ok:
        return report
    counts = Counter(e for c in d.pd for e in c)
    E = d.edge_count
    for e, k in sorted(counts.items()):
        if k != 2:
            report.add(f"edge multiplicity: label {e} occurs {k} times at "
                       f"{[(x, s) for x, c in enumerate(d.pd) for s, f in enumerate(c) if f == e]}")
    bad_labels = sorted(set(counts) - set(range(1, E + 1)))
    if bad_labels:
        report.add(f"edge labels outside 1..{E}: {bad_labels}")
    if len(d.orientation) != E:
        report.add(f"orientation has {len(d.orientation)} entries, expected {E}")
    elif any(o not in (1, -1) for o in d.orientation):
        report.add("orientation entries must be +1 or -1")
    if not report.ok:
        return report
    for x in range(d.crossing_count):
        if not d.is_incoming((x, 0)):
            report.add(f"crossing {x}: slot 0 is not an incoming under-strand")
        if d.is_incoming((x, 2)):
            report.add(f"crossing {x}: slot 2 is not an outgoing under-strand")
        if d.is_incoming((x, 1)) == d.is_incoming((x, 3)):
            report.add(f"crossing {x}: over-strand needs one incoming and one outgoing end")
    if not d.is_connected():
        report.add("diagram is disconnected")
        return report
    F = len(d._faces)
    V = d.crossing_count
    if V - E + F != 2:
        report.add(f"not planar: V - E + F = {V - E + F} (V={V}, E={E}, F={F})")
    return report


def require_valid(d: Diagram) -> None:
    report = validate(d)
    if not report:
        raise DiagramError("; ".join(report.failures))


def _canonical_form(d: Diagram) -> tuple:
    paths = d.component_paths()
    signs = d.signs()
    best = None
    # try every starting edge on the first component; remaining components
    # follow in the order their smallest new label appears, starting at
    # the edge whose relabelling is smallest
    from itertools import permutations

    comp_orders = list(permutations(range(len(paths)))) if len(paths) <= 4 else [tuple(range(len(paths)))]
    for order in comp_orders:
        starts_choices = [range(len(paths[i])) for i in order]
        for starts in _product_small(starts_choices):
            emap: dict[int, int] = {}
            label = 1
            for ci, st in zip(order, starts):
                p = paths[ci]
                for k in range(len(p)):
                    emap[p[(st + k) % len(p)]] = label
                    label += 1
            code = tuple(sorted((tuple(emap[e] for e in c), sgn)
                                for c, sgn in zip(d.pd, signs)))
            if best is None or code < best:
                best = code
    return best


def _product_small(choices):
    from itertools import product

    total = 1
    for c in choices:
        total *= len(c)
    if total > 20000:
        # only the first component's start is varied for large links
        first = choices[0]
        rest = [0] * (len(choices) - 1)
        for s in first:
            yield (s, *rest)
        return
    yield from product(*choices)


# ---------------------------------------------------------------------------
# text formats


def export(d: Diagram, fmt: str) -> str:
    """Serialize ``d`` as ``pd``, ``gauss``, ``dt`` or ``json`` text."""
    require_valid(d)
    if fmt == "json":
        return d.to_json()
    if fmt == "pd":
        return "PD[" + ", ".join(f"X[{a},{b},{c},{e}]" for a, b, c, e in d.pd) + "]"
    if fmt == "gauss":
        return " | ".join(" ".join(str(v) for v in comp) for comp in gauss_code(d))
    if fmt == "dt":
        return " ".join(str(v) for v in dt_code(d))
    raise ValueError(f"unknown format {fmt!r}")


def _visits(d: Diagram, path: Iterable[int]) -> list[tuple[int, bool]]:
    """(crossing, is_over) for every crossing passage along an edge path."""
    out = []
    for e in path:
        x, s = d.head(e)
        out.append((x, s in (1, 3)))
    return out


def gauss_code(d: Diagram) -> list[list[int]]:
    """Signed crossing passages per component: ``+k`` over, ``-k`` under (1-based)."""
    codes = []
    for path in d.component_paths():
        codes.append([(x + 1) if over else -(x + 1) for x, over in _visits(d, path)])
    return codes


def dt_code(d: Diagram) -> list[int]:
    """Dowker-Thistlethwaite code of a knot diagram."""
    n, _ = d.components()
    if n != 1:
        raise DiagramError("DT code needs a knot (one component)")
    path = d.component_paths()[0]
    visits = _visits(d, path)
    labels: dict[int, list[tuple[int, bool]]] = {}
    for i, (x, over) in enumerate(visits, start=1):
        labels.setdefault(x, []).append((i, over))
    pairs = {}
    for x, ((i, o1), (j, o2)) in labels.items():
        if i % 2 == j % 2:
            raise DiagramError("crossing visited twice with equal parity; not a plane diagram")
        odd, even = (i, j) if i % 2 else (j, i)
        even_over = o2 if even == j else o1
        pairs[odd] = -even if even_over else even
    return [pairs[k] for k in sorted(pairs)]


_PD_ITEM = re.compile(r"X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")


def parse(text: str, fmt: str) -> Diagram:
    """Inverse of ``export`` for the ``pd`` and ``json`` formats."""
    if fmt == "json":
        try:
            return Diagram.from_json(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"bad JSON: {exc}") from None
    if fmt == "pd":
        items = _PD_ITEM.findall(text)
        if not items:
            raise DiagramError("no X[a,b,c,d] entries found")
        return Diagram.from_pd([tuple(int(v) for v in it) for it in items])
    raise ValueError(f"cannot parse format {fmt!r}")

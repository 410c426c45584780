"""Tile-based assembly of the knots L_n, their Seifert data and gray graphs G_n.

Four tiles are transcribed in ``data/tiles.json``.  Each is a disc (or, for
the base tile, the whole sphere) containing a few crossings and some dashed
boundary circles ("holes").  The strands meet every boundary circle in the
four diagonal corners NE, NW, SW, SE, so any tile fits into any hole.

Assembly for a given ``n``:

1. start with ``Fig1a``; its holes are the *left* and *right* slots;
2. fill the right slot with one ``Fig1b``;
3. for ``m = 1 .. n-1``: fill both slots with ``Fig2a``, then nest ``2m``
   copies of ``Fig1b`` into the left slot and ``2m + 1`` copies into the
   right slot;
4. cap both slots with ``Fig2b``.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .diagram import Diagram, require_valid
from .invariants import SeifertData, seifert_circles

CORNERS = ("NE", "NW", "SW", "SE")
OPPOSITE = {"NE": "SW", "SW": "NE", "NW": "SE", "SE": "NW"}
KINDS = ("Fig1a", "Fig1b", "Fig2a", "Fig2b")

# sha256 of the shipped tiles.json; edits to the tile file must update it
TILE_SHA256 = "5dad0327fbaf7edb19d9ff7f0da397b019c51726d1cf06721de8a6a18d94c23d"
TILE_ENV = "KNOTFORGE_TILE_FILE"


class ConstructionError(RuntimeError):
    def __init__(self, message: str, step: int | None = None):
        self.step = step
        where = f" (step {step})" if step is not None else ""
        super().__init__(message + where)


class TileIntegrityError(ConstructionError):
    """The tile file does not match the expected hash or is malformed."""


@dataclass(frozen=True)
class Tile:
    kind: str
    outer: bool
    crossings: dict[str, tuple[int, int]]
    holes: tuple[str, ...]
    connections: tuple[tuple[str, str], ...]
    gray_vertices: tuple[str, ...]
    gray_edges: tuple[tuple[str, str, str], ...]

    def gray_components(self) -> list[tuple[set[str], list[tuple[str, str, str]]]]:
        parent = {v: v for v in self.gray_vertices}

        def find(v):
            while parent[v] != v:
                v = parent[v]
            return v

        for u, v, _ in self.gray_edges:
            parent[find(u)] = find(v)
        comps: dict[str, tuple[set[str], list]] = {}
        for v in self.gray_vertices:
            comps.setdefault(find(v), (set(), []))[0].add(v)
        for e in self.gray_edges:
            comps[find(e[0])][1].append(e)
        return list(comps.values())


@dataclass(frozen=True)
class TileSet:
    tiles: dict[str, Tile]
    interface: dict[str, str]
    sha256: str

    def __getitem__(self, kind: str) -> Tile:
        return self.tiles[kind]


# ---------------------------------------------------------------------------
# tile file


def default_tile_path() -> Path:
    return Path(str(resources.files("knotforge") / "data" / "tiles.json"))


def file_sha256(path: str | os.PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_tiles(path: str | os.PathLike | None = None, verify_hash: bool = True) -> TileSet:
    """Read and check a tile file.

    ``path`` defaults to ``$KNOTFORGE_TILE_FILE`` and then to the embedded
    file.  With ``verify_hash`` the file must hash to ``TILE_SHA256``.
    """
    if path is None:
        path = os.environ.get(TILE_ENV) or default_tile_path()
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise TileIntegrityError(f"cannot read tile file {path}: {exc}") from None
    digest = hashlib.sha256(raw).hexdigest()
    if verify_hash and digest != TILE_SHA256:
        raise TileIntegrityError(f"tile file {path} has sha256 {digest}, expected {TILE_SHA256}")
    try:
        data = json.loads(raw)
        tiles = {kind: _parse_tile(kind, data["tiles"][kind]) for kind in KINDS}
        interface = dict(data["interface"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TileIntegrityError(f"malformed tile file {path}: {exc}") from None
    tileset = TileSet(tiles, interface, digest)
    for tile in tiles.values():
        problems = check_tile(tile)
        if problems:
            raise TileIntegrityError(f"tile {tile.kind}: " + "; ".join(problems))
    if sorted(interface) != sorted(CORNERS) or sorted(interface.values()) != ["in", "in", "out", "out"]:
        raise TileIntegrityError("interface must mark two corners 'in' and two 'out'")
    return tileset


def _parse_tile(kind: str, d: dict) -> Tile:
    return Tile(
        kind=kind,
        outer=bool(d["outer"]),
        crossings={k: tuple(v) for k, v in d["crossings"].items()},
        holes=tuple(d["holes"]),
        connections=tuple((a, b) for a, b in d["connections"]),
        gray_vertices=tuple(d["gray"]["vertices"]),
        gray_edges=tuple((u, v, lab) for u, v, lab in d["gray"]["edges"]),
    )


def check_tile(tile: Tile) -> list[str]:
    """Fragment validation: every corner of every crossing, hole and outer
    boundary is used by exactly one connection."""
    expected = Counter()
    for x in tile.crossings:
        expected.update(f"{x}.{c}" for c in CORNERS)
    for h in tile.holes:
        expected.update(f"{h}.{c}" for c in CORNERS)
    if tile.outer:
        expected.update(f"O.{c}" for c in CORNERS)
    used = Counter(p for pair in tile.connections for p in pair)
    problems = []
    for p in sorted(set(expected) | set(used)):
        if used[p] != expected[p]:
            problems.append(f"point {p} used {used[p]} times, expected {expected[p]}")
    for a, b in tile.connections:
        if a == b:
            problems.append(f"connection {a}-{b} joins a point to itself")
    for u, v, _ in tile.gray_edges:
        if u not in tile.gray_vertices or v not in tile.gray_vertices:
            problems.append(f"gray edge {u}-{v} uses an unknown vertex")
    return problems


@lru_cache(maxsize=None)
def _embedded_tiles() -> TileSet:
    return load_tiles(default_tile_path())


def tile_catalog(tileset: TileSet | None = None) -> dict[str, Tile]:
    """The four construction tiles, keyed by kind."""
    return dict((tileset or _embedded_tiles()).tiles)


# ---------------------------------------------------------------------------
# plan


@dataclass(frozen=True)
class Step:
    kind: str
    slot: str  # "root", "left" or "right"
    phase: str


@dataclass(frozen=True)
class ConstructionPlan:
    n: int
    steps: tuple[Step, ...]

    def tile_counts(self) -> dict[str, int]:
        counts = Counter(s.kind for s in self.steps)
        return {k: counts.get(k, 0) for k in KINDS}


def expected_tile_counts(n: int) -> dict[str, int]:
    return {
        "Fig1a": 1,
        "Fig1b": 1 + sum(4 * m + 1 for m in range(1, n)),
        "Fig2a": 2 * (n - 1),
        "Fig2b": 2,
    }


def plan(n: int) -> ConstructionPlan:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    steps = [Step("Fig1a", "root", "base"), Step("Fig1b", "right", "base")]
    for m in range(1, n):
        steps += [Step("Fig2a", "left", f"m={m}"), Step("Fig2a", "right", f"m={m}")]
        steps += [Step("Fig1b", "left", f"m={m}")] * (2 * m)
        steps += [Step("Fig1b", "right", f"m={m}")] * (2 * m + 1)
    steps += [Step("Fig2b", "left", "cap"), Step("Fig2b", "right", "cap")]
    return ConstructionPlan(n, tuple(steps))


# ---------------------------------------------------------------------------
# assembly


@dataclass
class Assembly:
    """A fully assembled construction with provenance."""

    plan: ConstructionPlan
    diagram: Diagram
    # crossing index -> (tile instance, tile kind, crossing name)
    crossing_origin: list[tuple[int, str, str]]
    instances: list[tuple[str, int | None, str | None]]  # kind, parent, hole
    # (instance, hole) -> flow pattern observed on that boundary
    boundary_flow: dict[tuple[int, str], dict[str, str]] = field(default_factory=dict)


def _point(inst: int, tile: Tile, name: str) -> tuple:
    owner, corner = name.split(".")
    if owner == "O":
        return ("O", inst, corner)
    if owner in tile.holes:
        return ("H", inst, owner, corner)
    if owner in tile.crossings:
        return ("X", inst, owner, corner)
    raise TileIntegrityError(f"tile {tile.kind}: unknown owner {owner!r} in {name!r}")


def assemble(n: int, tileset: TileSet | None = None) -> Assembly:
    tileset = tileset or _embedded_tiles()
    p = plan(n)

    instances: list[tuple[str, int | None, str | None]] = []
    slots: dict[str, tuple[int, str]] = {}
    alias: dict[tuple, tuple] = {}
    for idx, step in enumerate(p.steps):
        tile = tileset[step.kind]
        inst = len(instances)
        if step.slot == "root":
            if tile.outer or len(tile.holes) != 2:
                raise ConstructionError(f"base tile {tile.kind} must be closed with two holes", idx)
            instances.append((tile.kind, None, None))
            slots = {"left": (inst, tile.holes[0]), "right": (inst, tile.holes[1])}
            continue
        if step.slot not in slots:
            raise ConstructionError(f"no open {step.slot} hole to fill", idx)
        if not tile.outer:
            raise ConstructionError(f"tile {tile.kind} has no outer boundary", idx)
        parent, hole = slots.pop(step.slot)
        instances.append((tile.kind, parent, hole))
        for c in CORNERS:
            alias[("O", inst, c)] = ("H", parent, hole, c)
        if len(tile.holes) > 1:
            raise ConstructionError(f"tile {tile.kind} has more than one hole", idx)
        if tile.holes:
            slots[step.slot] = (inst, tile.holes[0])
    if slots:
        raise ConstructionError(f"holes left open: {sorted(slots)}", len(p.steps))

    # adjacency after gluing: partner point and the tile instance owning the
    # connection; glued hole corners get one connection from each side
    adj: dict[tuple, list[tuple[tuple, int]]] = {}
    for inst, (kind, _, _) in enumerate(instances):
        tile = tileset[kind]
        for a, b in tile.connections:
            pa = _point(inst, tile, a)
            pb = _point(inst, tile, b)
            pa, pb = alias.get(pa, pa), alias.get(pb, pb)
            adj.setdefault(pa, []).append((pb, inst))
            adj.setdefault(pb, []).append((pa, inst))

    crossing_index: dict[tuple[int, str], int] = {}
    crossing_origin = []
    for inst, (kind, _, _) in enumerate(instances):
        for name in tileset[kind].crossings:
            crossing_index[(inst, name)] = len(crossing_origin)
            crossing_origin.append((inst, kind, name))

    for pt, nbrs in adj.items():
        want = 1 if pt[0] == "X" else 2
        if len(nbrs) != want:
            raise ConstructionError(f"point {pt} has {len(nbrs)} connections, expected {want}")

    def wire(start: tuple) -> tuple[tuple, list[tuple[tuple, str]]]:
        """Follow a wire from a crossing corner to the next crossing corner.

        Returns the far corner and the boundary points crossed, each with
        its direction ("in" = into the disc bounded by that circle).
        """
        cur, owner = adj[start][0]
        passed = []
        while cur[0] != "X":
            (a, oa), (b, ob) = adj[cur]
            nxt, owner = (b, ob) if oa == owner else (a, oa)
            # the parent tile owns the outside of the circle
            passed.append((cur, "out" if owner == cur[1] else "in"))
            cur = nxt
        return cur, passed

    # trace strands: through a crossing a strand continues at the opposite corner
    ncross = len(crossing_origin)
    visited: set[tuple] = set()
    components: list[list[tuple[tuple, tuple, list]]] = []
    for inst, name in crossing_index:
        for corner in ("NE", "NW"):
            start = ("X", inst, name, corner)
            if start in visited:
                continue
            comp = []
            cur = start
            while cur not in visited:
                visited.add(cur)
                far, passed = wire(cur)
                visited.add(far)
                comp.append((cur, far, passed))
                _, fi, fn, fc = far
                cur = ("X", fi, fn, OPPOSITE[fc])
            components.append(comp)

    # orient every component so boundary crossings follow the file's flow
    oriented = []
    for comp in components:
        first = next(((pt, d) for _, _, passed in comp for pt, d in passed), None)
        if first is not None and tileset.interface[first[0][3]] != first[1]:
            comp = _reverse(comp)
        oriented.append(comp)

    flows: dict[tuple[int, str], dict[str, str]] = {}
    for comp in oriented:
        for _, _, passed in comp:
            for (_, pinst, hole, corner), d in passed:
                flows.setdefault((pinst, hole), {})[corner] = d
    for key, flow in sorted(flows.items()):
        if flow != tileset.interface:
            raise ConstructionError(f"boundary {key} has flow {flow}, expected {tileset.interface}")

    # label edges consecutively along each component
    pd_slots: list[dict[str, int]] = [dict() for _ in range(ncross)]
    incoming: list[set[str]] = [set() for _ in range(ncross)]
    label = 0
    for comp in oriented:
        for tail, head, _ in comp:
            label += 1
            tx = crossing_index[(tail[1], tail[2])]
            hx = crossing_index[(head[1], head[2])]
            pd_slots[tx][tail[3]] = label
            pd_slots[hx][head[3]] = label
            incoming[hx].add(head[3])
    pd = []
    for x in range(ncross):
        s = pd_slots[x]
        if "SW" in incoming[x]:
            pd.append((s["SW"], s["SE"], s["NE"], s["NW"]))
        elif "NE" in incoming[x]:
            pd.append((s["NE"], s["NW"], s["SW"], s["SE"]))
        else:
            raise ConstructionError(f"crossing {crossing_origin[x]} has no incoming under-strand")
    d = Diagram.from_pd(pd)
    require_valid(d)
    return Assembly(p, d, crossing_origin, instances, flows)


def _reverse(comp):
    out = []
    for tail, head, passed in reversed(comp):
        flipped = [(pt, "out" if d == "in" else "in") for pt, d in reversed(passed)]
        out.append((head, tail, flipped))
    return out


@lru_cache(maxsize=32)
def _cached_assembly(n: int) -> Assembly:
    return assemble(n)


def build_link(n: int, tileset: TileSet | None = None) -> tuple[Diagram, SeifertData]:
    """Diagram of L_n together with the Seifert data of its surface R_n."""
    a = assemble(n, tileset) if tileset is not None else _cached_assembly(n)
    return a.diagram, seifert_circles(a.diagram)


# ---------------------------------------------------------------------------
# gray graph


@dataclass(frozen=True)
class GrayGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    edge_labels: tuple[str, ...] = ()
    origin: dict[str, tuple[int, str]] = field(default_factory=dict)


def build_graph(n: int, tileset: TileSet | None = None) -> GrayGraph:
    """The gray graph G_n: the union of the gray fragments of all tiles used.

    Gray fragments lie strictly inside their tiles, so no stitching across
    holes is needed; only the plan is consulted.
    """
    tileset = tileset or _embedded_tiles()
    p = plan(n)
    vertices, edges, labels = [], [], []
    origin = {}
    for inst, step in enumerate(p.steps):
        tile = tileset[step.kind]
        for v in tile.gray_vertices:
            name = f"{inst}:{tile.kind}:{v}"
            vertices.append(name)
            origin[name] = (inst, tile.kind)
        for u, v, lab in tile.gray_edges:
            edges.append((f"{inst}:{tile.kind}:{u}", f"{inst}:{tile.kind}:{v}"))
            labels.append(f"{inst}:{tile.kind}:{lab}")
    return GrayGraph(tuple(vertices), tuple(edges), tuple(labels), origin)

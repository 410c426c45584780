"""Alexander polynomial by Fox calculus and the knot determinant by Goeritz matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, DiagramError, require_valid
from .laurent import ONE, ZERO, LaurentPoly, bareiss_det

Word = tuple[tuple[int, int], ...]  # (generator, ±1) letters


@dataclass(frozen=True)
class WirtingerData:
    arcs: tuple[tuple[int, ...], ...]
    relations: tuple[Word, ...]
    arc_of_edge: dict[int, int]


def wirtinger(d: Diagram) -> WirtingerData:
    """One generator per over-arc and one relation per crossing.

    For a right-handed crossing with over-arc ``k``, incoming under-arc ``i``
    and outgoing under-arc ``j`` the relation is ``k i k^-1 j^-1``; for a
    left-handed one it is ``k^-1 i k j^-1``.
    """
    require_valid(d)
    ncomp, _ = d.components()
    if ncomp != 1:
        raise DiagramError(f"Wirtinger presentation here needs a knot, got {ncomp} components")
    arcs = []
    arc_of_edge: dict[int, int] = {}
    for x in range(d.crossing_count):
        e = d.pd[x][2]
        arc = []
        while True:
            arc_of_edge[e] = len(arcs)
            arc.append(e)
            hx, hs = d.head(e)
            if hs == 0:
                break
            e = d.pd[hx][(hs + 2) % 4]
        arcs.append(tuple(arc))
    relations = []
    for x, c in enumerate(d.crossings):
        i = arc_of_edge[c.slots[0]]
        j = arc_of_edge[c.slots[2]]
        k = arc_of_edge[c.slots[1]]
        if c.over_sign == 1:
            relations.append(((k, 1), (i, 1), (k, -1), (j, -1)))
        else:
            relations.append(((k, -1), (i, 1), (k, 1), (j, -1)))
    return WirtingerData(tuple(arcs), tuple(relations), arc_of_edge)


def fox_row(word: Word, ngens: int) -> dict[int, LaurentPoly]:
    """Abelianized Fox derivatives of ``word``, every generator sent to ``t``."""
    row: dict[int, LaurentPoly] = {}
    power = 0
    for g, e in word:
        if e == 1:
            term = LaurentPoly.monomial(1, power)
        else:
            term = LaurentPoly.monomial(-1, power - 1)
        row[g] = row.get(g, ZERO) + term
        power += e
    return {g: p for g, p in row.items() if not p.is_zero()}


def alexander_matrix(w: WirtingerData) -> list[dict[int, LaurentPoly]]:
    n = len(w.arcs)
    return [fox_row(r, n) for r in w.relations]


def sparse_det(rows: list[dict[int, LaurentPoly]], cols: list[int]) -> LaurentPoly:
    """Determinant, up to a unit, of the square matrix given by sparse rows.

    Entries that are units (``±t^k``) are used as pivots first, picking the
    one with the least fill-in; division by a unit is exact.  Whatever is
    left when no unit pivot remains goes through :func:`bareiss_det`.
    """
    rows = [dict((c, p) for c, p in r.items() if c in set(cols) and not p.is_zero()) for r in rows]
    if len(rows) != len(cols):
        raise ValueError("matrix is not square")
    live_rows = set(range(len(rows)))
    col_rows: dict[int, set[int]] = {c: set() for c in cols}
    for ri, r in enumerate(rows):
        for c in r:
            col_rows[c].add(ri)
    acc = ONE
    while live_rows:
        best = None
        for ri in live_rows:
            r = rows[ri]
            for c, p in r.items():
                if p.is_unit():
                    cost = (len(r) - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, ri, c)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, ri, c = best
        prow = rows[ri]
        piv = prow[c]
        for rj in list(col_rows[c]):
            if rj == ri:
                continue
            r = rows[rj]
            factor = r[c].exact_div(piv)
            for cc, pp in prow.items():
                new = r.get(cc, ZERO) - factor * pp
                if new.is_zero():
                    if cc in r:
                        del r[cc]
                        col_rows[cc].discard(rj)
                else:
                    if cc not in r:
                        col_rows[cc].add(rj)
                    r[cc] = new
        for cc in prow:
            col_rows[cc].discard(ri)
        del col_rows[c]
        live_rows.discard(ri)
        acc = acc * piv
    if not live_rows:
        return acc
    rest_rows = sorted(live_rows)
    rest_cols = sorted(col_rows)
    if any(not col_rows[c] for c in rest_cols):
        return ZERO
    dense = [[rows[ri].get(c, ZERO) for c in rest_cols] for ri in rest_rows]
    return acc * bareiss_det(dense)


def alexander_poly(d: Diagram) -> LaurentPoly:
    """Normalized Alexander polynomial of a knot diagram.

    Computed from the Fox Jacobian of the Wirtinger presentation with the
    last relation and last generator deleted.
    """
    w = wirtinger(d)
    mat = alexander_matrix(w)
    n = len(w.arcs)
    if n == 1:
        return ONE
    det = sparse_det(mat[:-1], list(range(n - 1)))
    if det.is_zero():
        raise DiagramError("Alexander minor vanished; not a knot diagram?")
    return det.normalize()


def alexander_poly_dense(d: Diagram) -> LaurentPoly:
    """Same as :func:`alexander_poly` but with plain Bareiss on the dense minor."""
    w = wirtinger(d)
    n = len(w.arcs)
    if n == 1:
        return ONE
    mat = alexander_matrix(w)
    dense = [[row.get(c, ZERO) for c in range(n - 1)] for row in mat[:-1]]
    return bareiss_det(dense).normalize()


# ---------------------------------------------------------------------------
# Goeritz


def checkerboard(d: Diagram) -> dict[int, int]:
    """Two-colouring of the faces; face 0 gets colour 0.

    At every crossing the corners alternate colours, corners 0 and 2 sharing
    one colour and corners 1 and 3 the other.
    """
    fs = d.faces()
    cf = fs.corner_face
    nbrs: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(len(fs))}
    for x in range(d.crossing_count):
        f = [cf[(x, s)] for s in range(4)]
        for s in range(4):
            a, b = f[s], f[(s + 1) % 4]
            nbrs[a].append((b, True))
            nbrs[b].append((a, True))
        for a, b in ((f[0], f[2]), (f[1], f[3])):
            nbrs[a].append((b, False))
            nbrs[b].append((a, False))
    colour = {0: 0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v, differ in nbrs[u]:
            want = colour[u] ^ int(differ)
            if v not in colour:
                colour[v] = want
                stack.append(v)
            elif colour[v] != want:
                raise DiagramError("faces admit no checkerboard colouring")
    return colour


def goeritz_matrix(d: Diagram) -> tuple[list[list[int]], list[int]]:
    """Goeritz matrix on the faces of colour 1 (the class avoiding face 0).

    Returns the full (singular) matrix and the list of shaded face ids.
    """
    colour = checkerboard(d)
    cf = d.faces().corner_face
    shaded = sorted(f for f, c in colour.items() if c == 1)
    index = {f: i for i, f in enumerate(shaded)}
    m = len(shaded)
    g = [[0] * m for _ in range(m)]
    for x in range(d.crossing_count):
        if colour[cf[(x, 1)]] == 1:
            eta, (a, b) = 1, (cf[(x, 1)], cf[(x, 3)])
        else:
            eta, (a, b) = -1, (cf[(x, 0)], cf[(x, 2)])
        if a == b:
            continue
        i, j = index[a], index[b]
        g[i][j] += eta
        g[j][i] += eta
        g[i][i] -= eta
        g[j][j] -= eta
    return g, shaded


def int_bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def goeritz_determinant(d: Diagram) -> int:
    g, _ = goeritz_matrix(d)
    minor = [row[1:] for row in g[1:]]
    return abs(int_bareiss_det(minor))


def determinant(d: Diagram) -> int:
    """Knot determinant, computed by Goeritz matrix and checked against |Δ(-1)|."""
    via_goeritz = goeritz_determinant(d)
    via_alexander = abs(alexander_poly(d).eval_at_integer(-1))
    if via_goeritz != via_alexander:
        raise DiagramError(f"determinant mismatch: Goeritz {via_goeritz}, |Δ(-1)| {via_alexander}")
    return via_goeritz

"""Two-bridge oracle: even continued fractions and plumbing Seifert matrices.

Continued fractions use the additive convention
``[a1, ..., ak] = a1 + 1/(a2 + 1/(... + 1/ak))``.  A linear plumbing of
``2k`` twisted bands with ``a_i = 2 b_i`` half twists has the Seifert matrix
with diagonal ``b_1, -b_2, b_3, -b_4, ...`` and ones just above the
diagonal.  The alternating signs were fixed by calibration against the
trefoil (``[2, -2]``, fraction 3/2) and the figure-eight (``[2, 2]``,
fraction 5/2); see ``tests/test_twobridge.py``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .laurent import ONE, T, LaurentPoly, bareiss_det


class ExpansionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Fraction:
    p: int
    q: int

    def __post_init__(self):
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not in lowest terms")

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def equivalent(self, other: Fraction, mirror: bool = False) -> bool:
        """Same two-bridge knot: equal ``p`` and ``q' ≡ q^{±1} (mod p)``.

        With ``mirror`` the mirror image (``q' ≡ -q^{±1}``) also counts.
        """
        if abs(self.p) != abs(other.p):
            return False
        p = abs(self.p)
        if p == 1:
            return True
        q = self.q % p
        cands = {q, pow(q, -1, p)}
        if mirror:
            cands |= {(-c) % p for c in cands}
        return other.q % p in cands


def _check_expansion(e) -> tuple[int, ...]:
    e = tuple(int(a) for a in e)
    if not e or len(e) % 2:
        raise ExpansionError(f"expansion needs a positive even length, got {len(e)}")
    for a in e:
        if a == 0 or a % 2:
            raise ExpansionError(f"coefficients must be nonzero even integers, got {a}")
    return e


def convergent(e) -> tuple[int, int]:
    """Numerator and denominator by the standard three-term recurrence."""
    h_prev, h = 1, e[0]
    k_prev, k = 0, 1
    for a in e[1:]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


def evaluate(e) -> Fraction:
    """Value of an even expansion, in lowest terms with positive numerator."""
    e = _check_expansion(e)
    num, den = e[-1], 1
    for a in reversed(e[:-1]):
        if num == 0:
            raise ExpansionError(f"degenerate tail in {list(e)}")
        num, den = a * num + den, num
    if den == 0:
        raise ExpansionError(f"degenerate expansion {list(e)}")
    g = gcd(num, den)
    num, den = num // g, den // g
    if num < 0:
        num, den = -num, -den
    return Fraction(num, den)


def plumbing_seifert_matrix(e) -> list[list[int]]:
    e = _check_expansion(e)
    n = len(e)
    v = [[0] * n for _ in range(n)]
    for i, a in enumerate(e):
        v[i][i] = a // 2 if i % 2 == 0 else -(a // 2)
        if i + 1 < n:
            v[i][i + 1] = 1
    return v


def seifert_alexander(v: list[list[int]]) -> LaurentPoly:
    """Normalized ``det(V - t V^T)``."""
    n = len(v)
    m = [[LaurentPoly.const(v[i][j]) - T * v[j][i] for j in range(n)] for i in range(n)]
    return bareiss_det(m).normalize() if n else ONE


def expansion_alexander(e) -> LaurentPoly:
    return seifert_alexander(plumbing_seifert_matrix(e))


def symmetrized_det(v: list[list[int]]) -> int:
    from .alexander import int_bareiss_det

    n = len(v)
    return int_bareiss_det([[v[i][j] + v[j][i] for j in range(n)] for i in range(n)])


def even_values(bound: int) -> list[int]:
    return [a for a in range(-bound, bound + 1) if a and a % 2 == 0]


MAX_CROSS_CHECK_N = 4
_VECTOR_ROWS = 200_000


def numerator_search(p: int, length: int, bound: int) -> list[tuple[int, ...]]:
    """Every even expansion of ``length`` with ``|a_i| <= bound`` and numerator ``±p``.

    The last few coefficients are evaluated for all choices at once with
    numpy; the remaining tail coefficients are looped over and the leading
    coefficient is solved for rather than searched.
    """
    if length < 2 or length % 2:
        raise ValueError("length must be a positive even integer")
    vals = even_values(bound)
    k = len(vals)
    tail_len = length - 1
    vec_len = 1
    while vec_len < tail_len and k ** (vec_len + 1) <= _VECTOR_ROWS:
        vec_len += 1
    grid = np.array(list(itertools.product(vals, repeat=vec_len)), dtype=np.int64)
    num0 = grid[:, -1].copy()
    den0 = np.ones_like(num0)
    for col in range(vec_len - 2, -1, -1):
        num0, den0 = grid[:, col] * num0 + den0, num0
    out: list[tuple[int, ...]] = []
    for prefix in itertools.product(vals, repeat=tail_len - vec_len):
        num, den = num0, den0
        for a in reversed(prefix):
            num, den = a * num + den, num
        ok = num != 0
        safe = np.where(ok, num, 1)
        for sign in (1, -1):
            target = sign * p - den
            a1 = target // safe
            hit = ok & (a1 * safe == target) & (a1 != 0) & (a1 % 2 == 0) & (np.abs(a1) <= bound)
            for idx in np.nonzero(hit)[0]:
                out.append((int(a1[idx]), *prefix, *(int(v) for v in grid[idx])))
    return sorted(set(out))


def enumerate_expansions(f: Fraction, length: int, bound: int, mirror: bool = False) -> list[tuple[int, ...]]:
    """All even expansions of ``length`` with ``|a_i| <= bound`` equivalent to ``f``.

    Brute force over the whole coefficient box, sorted lexicographically.
    """
    if bound < 2 or length < 2 or length % 2:
        raise ValueError("need bound >= 2 and a positive even length")
    return [e for e in numerator_search(abs(f.p), length, bound)
            if evaluate(e).equivalent(f, mirror=mirror)]


def even_expansion(p: int, q: int) -> tuple[int, ...] | None:
    """The all-even expansion of ``p/q`` in the additive convention, if any.

    Each step takes the nearest even integer, so the remainder has modulus
    below 1; an odd integer value admits no even expansion.
    """
    if q == 0:
        return None
    out = []
    while True:
        if q < 0:
            p, q = -p, -q
        a = 2 * _round_half_away(p, 2 * q)
        r = p - a * q
        if abs(r) == q:
            return None
        if a == 0:
            return None
        out.append(a)
        if r == 0:
            return tuple(out)
        p, q = q, r


def _round_half_away(num: int, den: int) -> int:
    # den > 0
    qt, rem = divmod(num, den)
    if 2 * rem > den or (2 * rem == den and num > 0):
        qt += 1
    return qt


def class_expansions(f: Fraction, mirror: bool = False) -> list[tuple[int, ...]]:
    """Even expansions of every fraction two-bridge equivalent to ``f``.

    A nonzero even leading term forces ``|p/q'| >= 1``, so only
    representatives ``q'`` with ``|q'| <= p`` can occur.
    """
    p = abs(f.p)
    q = f.q % p
    cands = {q, pow(q, -1, p)} if p > 1 else {0}
    if mirror:
        cands |= {(-c) % p for c in cands}
    out = set()
    for c in cands:
        for qq in (c - p, c, c + p):
            if qq == 0 or abs(qq) > p:
                continue
            e = even_expansion(p, qq)
            if e is not None:
                out.add(e)
    return sorted(out)


def expansions_matching(delta: LaurentPoly, p: int, length: int, bound: int) -> list[tuple[int, ...]]:
    """Even expansions with numerator ``p`` whose plumbing polynomial is ``delta``."""
    delta = delta.normalize()
    return [e for e in numerator_search(p, length, bound) if expansion_alexander(e) == delta]


def junction_count(e) -> int:
    """Plumbing junctions whose two bands both carry at least two full twists."""
    return sum(1 for a, b in zip(e, e[1:]) if abs(a) >= 4 and abs(b) >= 4)


def read_backwards(e) -> tuple[int, ...]:
    """The same linear plumbing listed from its other end.

    Reversing the band order swaps the parity of every position, which flips
    the sign pattern of the diagonal, hence the negation.
    """
    return tuple(-a for a in reversed(e))


def plumbing_classes(expansions) -> list[tuple[int, ...]]:
    return sorted({min(tuple(e), read_backwards(e)) for e in expansions})


def plumbing_surface_count(expansions) -> int:
    """Surface count read off the expansions of one knot.

    Each plumbing (an expansion up to :func:`read_backwards`) contributes
    ``2**j`` where ``j`` is the number of junctions between bands that both
    carry at least two full twists: such a junction can be plumbed from
    either side.  Hopf bands (``|a| = 2``) allow no choice.
    """
    return sum(2 ** junction_count(e) for e in plumbing_classes(expansions))


@dataclass
class CrossCheckReport:
    n: int | None
    determinant: int
    alexander: LaurentPoly | None
    length: int | None
    bound: int | None
    fraction: Fraction | None
    expansions: list[tuple[int, ...]]
    delta_matches: list[tuple[int, ...]] = field(default_factory=list)
    census_count: int | None = None
    error: str | None = None

    @property
    def reversal_classes(self) -> int:
        return len(plumbing_classes(self.expansions))

    @property
    def count(self) -> int:
        return plumbing_surface_count(self.expansions) if self.expansions else 0

    @property
    def agree(self) -> bool | None:
        if self.census_count is None:
            return None
        return self.error is None and self.count == self.census_count

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "fraction": str(self.fraction) if self.fraction else None,
            "determinant": self.determinant,
            "alexander": self.alexander.to_json() if self.alexander is not None else None,
            "length": self.length,
            "bound": self.bound,
            "delta_matches": [list(e) for e in self.delta_matches],
            "expansions": [list(e) for e in self.expansions],
            "expansion_count": len(self.expansions),
            "reversal_classes": self.reversal_classes,
            "count": self.count,
            "census_count": self.census_count,
            "agree": self.agree,
            "error": self.error,
        }


def default_bound(n: int) -> int:
    return 4 * n + 2


def cross_check_invariants(n: int, delta: LaurentPoly, p: int, census_count: int,
                           bound: int | None = None) -> CrossCheckReport:
    """Recover the knot's fraction from ``(delta, p)`` and count surfaces from it.

    ``delta_matches`` lists every length-``2n`` expansion reproducing both
    invariants (mirror images included, since Δ cannot tell them apart).
    The fraction is read from the first match; ``expansions`` keeps the
    matches two-bridge equivalent to it.
    """
    if n > MAX_CROSS_CHECK_N:
        raise ValueError(f"expansion search is limited to n <= {MAX_CROSS_CHECK_N}")
    length = 2 * n
    bound = bound or default_bound(n)
    matches = expansions_matching(delta, p, length, bound)
    report = CrossCheckReport(n, p, delta, length, bound, None, [], matches, census_count)
    if not matches:
        report.error = f"no even expansion of length {length} with |a_i| <= {bound} reproduces Δ"
        return report
    report.fraction = evaluate(matches[0])
    report.expansions = [e for e in matches if evaluate(e).equivalent(report.fraction)]
    return report


def cross_check(n: int, bound: int | None = None) -> CrossCheckReport:
    from .alexander import alexander_poly, determinant
    from .census import count_surfaces
    from .construct import build_link

    d, _ = build_link(n)
    return cross_check_invariants(n, alexander_poly(d), determinant(d), count_surfaces(n), bound)


def fraction_report(f: Fraction, length: int | None = None) -> CrossCheckReport:
    """Oracle run on an explicit fraction (no census to compare with)."""
    exps = class_expansions(f)
    if length is not None:
        exps = [e for e in exps if len(e) == length]
    report = CrossCheckReport(None, abs(f.p), None, length, None, f, exps)
    if not exps:
        report.error = "fraction has no even expansion"
    else:
        report.alexander = expansion_alexander(exps[0])
    return report

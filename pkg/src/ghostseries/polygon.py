"""Newton polygons of the series at a weight, with certified slope prefixes.

A slope request is answered from a finite truncation, so every answer comes
with a certificate: the truncation degree D is grown until every later
coefficient provably lies above the supporting line of the last requested
slope.  The lower bound used is lam(g_i) * c, where c is the smallest
valuation any zero can contribute against the given weight:

    c = min(v_p(w_kappa), 1)            odd p,
    c = min(v_2(w_kappa), 3)            p = 2, plain series,
    c = min(v_2(w_kappa), 1)            p = 2, modified series,

because zeros of the coefficients satisfy v_p(w) >= 1 (>= 3 for p = 2;
the extra eta_8 zeros of the modified series sit at v_2(w) = 1).  The
growth of lam(Delta_i) past s/c is checked exactly on a window beyond D
and extrapolated monotonically past the window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .dims import dim_cusp_gamma0
from .errors import CertificationError, PrecisionError
from .series import GhostCoefficient, coefficient_divisor, lam_values
from .weightspace import (
    INFINITY,
    Classical,
    ComponentLabel,
    ExplicitW,
    ExtendedRational,
    PrimeContext,
    WeightPoint,
    is_finite,
    pair_valuation,
    weight_component,
    weight_valuation,
)

DEFAULT_CAP = 10_000


class PolygonPoint(NamedTuple):
    index: int
    value: ExtendedRational


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull, stored as its minimal vertex list."""

    vertices: tuple[tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        slopes = [
            Fraction(y2 - y1, x2 - x1)
            for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:])
        ]
        if any(s2 <= s1 for s1, s2 in zip(slopes, slopes[1:])):
            raise AssertionError("hull slopes must increase strictly between vertices")

    def slope_pairs(self) -> tuple[tuple[Fraction, int], ...]:
        """(slope, multiplicity) per edge; multiplicities are index gaps."""
        return tuple(
            (Fraction(y2 - y1, x2 - x1), x2 - x1)
            for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:])
        )

    def slopes(self, n: int | None = None) -> tuple[Fraction, ...]:
        """Slopes flattened with multiplicity, nondecreasing."""
        out: list[Fraction] = []
        for slope, mult in self.slope_pairs():
            take = mult if n is None else min(mult, n - len(out))
            out.extend([slope] * take)
            if n is not None and len(out) >= n:
                break
        return tuple(out)


@dataclass(frozen=True)
class SlopeList:
    """Nondecreasing slopes with a count of how many are guaranteed final."""

    slopes: tuple[Fraction, ...]
    certified_count: int

    def __post_init__(self) -> None:
        if any(b < a for a, b in zip(self.slopes, self.slopes[1:])):
            raise AssertionError("slope lists are nondecreasing")

    def pairs(self) -> tuple[tuple[Fraction, int], ...]:
        out: list[tuple[Fraction, int]] = []
        for s in self.slopes:
            if out and out[-1][0] == s:
                out[-1] = (s, out[-1][1] + 1)
            else:
                out.append((s, 1))
        return tuple(out)

    def __len__(self) -> int:
        return len(self.slopes)

    def __getitem__(self, j: int) -> Fraction:
        return self.slopes[j]


def lower_hull(points: Sequence[tuple[int, ExtendedRational]]) -> NewtonPolygon:
    """Lower convex hull over the finite points; +Infinity points are omitted.

    The first point must be (0, 0) (the series has constant term 1) and
    indices must be given in strictly increasing order.
    """
    if not points:
        raise ValueError("cannot take the hull of no points")
    pts = [(int(i), v) for i, v in points]
    if pts[0][0] != 0 or pts[0][1] != 0:
        raise ValueError("the hull needs the point (0, 0) for the constant term")
    if any(b <= a for (a, _), (b, _) in zip(pts, pts[1:])):
        raise ValueError("point indices must increase strictly")

    finite = [(i, Fraction(v)) for i, v in pts if is_finite(v)]
    hull: list[tuple[int, Fraction]] = []
    for x, y in finite:
        # pop while the middle vertex is on or above the chord (keeps the
        # vertex set minimal: collinear interior points are dropped)
        while len(hull) >= 2:
            x1, y1 = hull[-2]
            x2, y2 = hull[-1]
            if (y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return NewtonPolygon(tuple(hull))


# ---------------------------------------------------------------------------
# coefficient families and evaluation

class StandardFamily:
    """Coefficients of the plain series on one component, with caching."""

    def __init__(self, ctx: PrimeContext, eps: ComponentLabel):
        self.ctx = ctx
        self.eps = eps
        self.floor_cap = Fraction(3) if ctx.p == 2 else Fraction(1)
        self._divisors: dict[int, GhostCoefficient] = {}
        self._lams: list[int] = [0]

    def divisor(self, i: int) -> GhostCoefficient:
        got = self._divisors.get(i)
        if got is None:
            got = self._divisors[i] = coefficient_divisor(self.ctx, self.eps, i)
        return got

    def lam_upto(self, upto: int) -> list[int]:
        if upto >= len(self._lams):
            self._lams = lam_values(self.ctx, self.eps, upto)
        return self._lams


class _WeightEvaluator:
    """Valuation of coefficients at one fixed weight, caching per-zero legs."""

    def __init__(self, family, kappa: WeightPoint):
        self.family = family
        self.ctx = family.ctx
        self.kappa = kappa
        self._legs: dict[WeightPoint, ExtendedRational] = {}

    def leg(self, zero: WeightPoint) -> ExtendedRational:
        got = self._legs.get(zero)
        if got is None:
            got = self._legs[zero] = pair_valuation(self.kappa, zero, self.ctx)
        return got

    def __call__(self, i: int) -> ExtendedRational:
        if i == 0:
            return Fraction(0)
        total = Fraction(0)
        for zero, mult in self.family.divisor(i).zeros.items():
            v = self.leg(zero)
            if not is_finite(v):
                return INFINITY
            total += mult * v
        return total


def coefficient_valuation(coef, kappa: WeightPoint) -> ExtendedRational:
    """v_p of one coefficient at the weight kappa; +Infinity at its zeros."""
    ctx = PrimeContext(coef.component.p)
    if weight_component(kappa, ctx) != coef.component:
        raise ValueError("weight lies on a different component than the coefficient")
    total = Fraction(0)
    for zero, mult in coef.zeros.items():
        v = pair_valuation(kappa, zero, ctx)
        if not is_finite(v):
            return INFINITY
        total += mult * v
    return total


# ---------------------------------------------------------------------------
# the certificate engine

def _nth_anchor(poly: NewtonPolygon, n: int) -> tuple[Fraction, int, Fraction]:
    """Slope s of the n-th slope and the vertex closing its segment."""
    covered = 0
    for edge, (slope, mult) in enumerate(poly.slope_pairs()):
        covered += mult
        if covered >= n:
            x, y = poly.vertices[edge + 1]
            return slope, x, y
    raise AssertionError("anchor requested beyond the hull")


def _tail_clears(
    lam: Sequence[int],
    D: int,
    window_end: int,
    c: Fraction,
    s: Fraction,
    i0: int,
    y0: Fraction,
) -> bool:
    """Exact window check plus the monotone extrapolation assertion."""
    deltas: list[int] = []
    for i in range(D + 1, window_end + 1):
        step = lam[i] - lam[i - 1]
        deltas.append(step)
        if not (lam[i] * c > y0 + s * (i - i0)):
            return False
        if not (step * c > s):
            return False
    half = len(deltas) // 2
    if half and min(deltas[half:]) < min(deltas[:half]):
        return False
    return True


def certified_slopes(
    point_value: Callable[[int], ExtendedRational],
    lam_upto: Callable[[int], Sequence[int]],
    c: Fraction,
    n: int,
    cap: int,
) -> tuple[SlopeList, NewtonPolygon, list[tuple[int, ExtendedRational]]]:
    """First n hull slopes with a truncation certificate.

    Grows the truncation degree D (doubling, up to ``cap``) until the hull
    over indices 0..D has n slopes and every coefficient on the window
    (D, 2D + 32] provably clears the supporting line at the n-th slope.
    """
    if n < 1:
        raise ValueError("at least one slope must be requested")
    if c <= 0:
        raise ValueError("the valuation floor c must be positive")
    D = min(max(2 * n, 16), cap)
    while True:
        window_end = 2 * D + 32
        lam = lam_upto(window_end)
        points = [(i, point_value(i)) for i in range(D + 1)]
        poly = lower_hull(points)
        flat = poly.slopes(n)
        if len(flat) >= n:
            s, i0, y0 = _nth_anchor(poly, n)
            if _tail_clears(lam, D, window_end, c, s, i0, y0):
                return SlopeList(flat, n), poly, points
        if D >= cap:
            raise CertificationError(
                f"could not certify {n} slopes within the degree cap {cap}; "
                "raise the cap (flag --cap or GHOST_CAP)"
            )
        D = min(2 * D + 32, cap)


def _valuation_floor(ctx: PrimeContext, kappa: WeightPoint, cap_val: Fraction) -> Fraction:
    """min(v_p(w_kappa), cap_val): the least valuation any zero leg can take."""
    try:
        v = weight_valuation(kappa, ctx)
    except PrecisionError:
        # the weight is known to at least its stated precision m
        if isinstance(kappa, ExplicitW) and kappa.m >= cap_val:
            return cap_val
        raise
    if not is_finite(v):
        return cap_val
    return min(Fraction(v), cap_val)


def _resolve_family(ctx: PrimeContext, kappa: WeightPoint, seed):
    if seed is not None:
        from .modified import ModifiedFamily  # local import avoids a cycle

        return ModifiedFamily(ctx, seed)
    return StandardFamily(ctx, weight_component(kappa, ctx))


def ghost_slopes(
    ctx: PrimeContext,
    kappa: WeightPoint,
    n: int,
    *,
    seed=None,
    cap: int | None = None,
) -> SlopeList:
    """First n slopes of the Newton polygon of the series at the weight kappa.

    Passing a weight-2 seed switches to the modified p = 2 series.
    """
    family = _resolve_family(ctx, kappa, seed)
    weight_component(kappa, ctx)  # validates the weight for this prime
    c = _valuation_floor(ctx, kappa, family.floor_cap)
    evaluator = _WeightEvaluator(family, kappa)
    slopes, _, _ = certified_slopes(evaluator, family.lam_upto, c, n, cap or DEFAULT_CAP)
    return slopes


def ghost_polygon(
    ctx: PrimeContext,
    kappa: WeightPoint,
    n: int,
    *,
    seed=None,
    cap: int | None = None,
) -> tuple[SlopeList, NewtonPolygon]:
    """Like :func:`ghost_slopes` but also returns the certified hull."""
    family = _resolve_family(ctx, kappa, seed)
    c = _valuation_floor(ctx, kappa, family.floor_cap)
    evaluator = _WeightEvaluator(family, kappa)
    slopes, poly, _ = certified_slopes(evaluator, family.lam_upto, c, n, cap or DEFAULT_CAP)
    return slopes, poly


def classical_ghost_slopes(
    ctx: PrimeContext,
    k: int,
    count_mode: str = "tame",
    *,
    seed=None,
    cap: int | None = None,
) -> SlopeList:
    """Predicted classical slopes in weight k.

    ``tame`` returns the first dim S_k(Gamma_0(N)) slopes (the classical
    comparison length); ``full`` the first dim S_k(Gamma_0(Np)) slopes.
    """
    if k % 2 != 0 or k < 2:
        raise ValueError(f"classical weight k = {k} must be even and at least 2")
    if count_mode == "tame":
        n = dim_cusp_gamma0(ctx.N, k)
    elif count_mode == "full":
        n = dim_cusp_gamma0(ctx.N * ctx.p, k)
    else:
        raise ValueError(f"unknown count mode {count_mode!r} (use 'tame' or 'full')")
    if n == 0:
        return SlopeList((), 0)
    return ghost_slopes(ctx, Classical(k), n, seed=seed, cap=cap)

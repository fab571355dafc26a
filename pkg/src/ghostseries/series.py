"""Coefficient divisors of the ghost series.

The i-th coefficient is stored as a divisor: a finite map from integer
weights (the zeros) to positive multiplicities.  Expanding the product
into a polynomial is never needed; evaluating the series at a weight only
requires valuations of the individual factors.

The multiplicity of the zero w_k in the i-th coefficient is the up-down
pattern s(d_k^new - 1) shifted past d_k leading zeros:

    m_i(k) = s_{i - d_k}(d_k^new - 1)   for d_k < i < d_k + d_k^new,

and 0 otherwise, with d_k = dim S_k(Gamma_0(N)) and d_k^new the p-new
dimension at level Np.  In particular m_i(k) > 0 exactly when
d_k < i < d_k + d_k^new.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, Mapping

from .dims import dim_cusp_gamma0, dim_pnew, gamma0_invariants
from .weightspace import (
    Classical,
    ComponentLabel,
    PrimeContext,
    WeightPoint,
    classical_weights,
)


# ---------------------------------------------------------------------------
# the up-down pattern

@dataclass(frozen=True)
class UpDownPattern:
    """The palindromic sequence 1, 2, ..., up, ..., 2, 1 of length ell."""

    ell: int
    terms: tuple[int, ...]


def updown_term(ell: int, j: int) -> int:
    """j-th term (1-indexed) of the up-down pattern of length ell; 0 outside."""
    if j < 1 or j > ell:
        return 0
    if j <= ell // 2:
        return j
    return ell + 1 - j


def updown(ell: int) -> UpDownPattern:
    """The up-down pattern; empty when ell <= 0."""
    if ell <= 0:
        return UpDownPattern(ell, ())
    return UpDownPattern(ell, tuple(updown_term(ell, j) for j in range(1, ell + 1)))


def updown_padded(ell: int, pad: int, j: int) -> int:
    """j-th term (1-indexed) of the pattern preceded by ``pad`` zeros."""
    return updown_term(ell, j - pad)


def multiplicity(ctx: PrimeContext, i: int, k: int) -> int:
    """m_i(k): order of vanishing of the i-th coefficient at w_k."""
    if k % 2 != 0:
        raise ValueError(f"zero weights are even; got k = {k}")
    if i <= 0 or k < 2:
        return 0
    d = dim_cusp_gamma0(ctx.N, k)
    if i <= d:
        return 0
    return updown_term(dim_pnew(ctx, k) - 1, i - d)


# ---------------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class GhostCoefficient:
    """Divisor of the i-th coefficient on one component: zeros with multiplicity."""

    index: int
    component: ComponentLabel
    zeros: Mapping[WeightPoint, int] = field(default_factory=dict)

    @property
    def lam(self) -> int:
        """Total degree: the sum of all zero multiplicities."""
        return sum(self.zeros.values())


@dataclass(frozen=True)
class DeltaDivisor:
    """Zero/pole divisor of the ratio of consecutive coefficients g_i/g_{i-1}."""

    index: int
    zeros: Mapping[WeightPoint, int]
    poles: Mapping[WeightPoint, int]

    @property
    def lam(self) -> int:
        return sum(self.zeros.values()) - sum(self.poles.values())


def enumeration_margin(N: int) -> int:
    """Safe overshoot for cutting off the zero enumeration.

    d_k = k*mu0/12 - (g - 1) - nu_inf - theta2*nu2 - theta3*nu3 with
    0 <= theta2 <= 1/2 and 0 <= theta3 <= 2/3, so once some k reaches
    d_k >= i + ceil(nu2/2 + 2nu3/3) no later weight can dip back under i.
    (d_k itself is not monotone: dim S_12(SL_2(Z)) = 1 > dim S_14 = 0.)
    """
    inv = gamma0_invariants(N)
    margin = (inv.nu2 * 3 + inv.nu3 * 4 + 5) // 6  # ceil(nu2/2 + 2*nu3/3)
    return margin


def _component_dims(ctx: PrimeContext, eps: ComponentLabel, stop_at: int) -> Iterator[tuple[int, int]]:
    """(k, d_k) along the component until d_k >= stop_at is safely past."""
    margin = enumeration_margin(ctx.N)
    for k in classical_weights(ctx, eps):
        d = dim_cusp_gamma0(ctx.N, k)
        if d >= stop_at + margin:
            return
        yield k, d


def coefficient_divisor(ctx: PrimeContext, eps: ComponentLabel, i: int) -> GhostCoefficient:
    """Divisor of the i-th coefficient on the component eps (i >= 1)."""
    if i < 1:
        raise ValueError(f"coefficient index i = {i} must be at least 1")
    zeros: Dict[WeightPoint, int] = {}
    for k, d in _component_dims(ctx, eps, i):
        if d < i:
            m = updown_term(dim_pnew(ctx, k) - 1, i - d)
            if m:
                zeros[Classical(k)] = m
    return GhostCoefficient(i, eps, zeros)


def delta_divisor(ctx: PrimeContext, eps: ComponentLabel, i: int) -> DeltaDivisor:
    """Formal difference of consecutive coefficient divisors (g_0 = 1)."""
    if i < 1:
        raise ValueError(f"index i = {i} must be at least 1")
    current = coefficient_divisor(ctx, eps, i).zeros
    previous = coefficient_divisor(ctx, eps, i - 1).zeros if i > 1 else {}
    zeros: Dict[WeightPoint, int] = {}
    poles: Dict[WeightPoint, int] = {}
    for z in sorted(set(current) | set(previous), key=lambda w: w.k):
        diff = current.get(z, 0) - previous.get(z, 0)
        if diff > 0:
            zeros[z] = diff
        elif diff < 0:
            poles[z] = -diff
    return DeltaDivisor(i, zeros, poles)


# ---------------------------------------------------------------------------
# degree arrays (fast path used by polygons and certificates)

def lam_deltas(ctx: PrimeContext, eps: ComponentLabel, upto: int) -> list[int]:
    """[lam(Delta_i) for i = 0..upto], computed by difference arrays.

    The multiplicity of w_k rises by one on i in [d_k + 1, d_k + ceil(ell/2)]
    and falls by one on i in [d_k + floor(ell/2) + 2, d_k + ell + 1] where
    ell = d_k^new - 1, so each weight touches the array in O(1).
    """
    diff = [0] * (upto + 2)

    def mark(lo: int, hi: int, step: int) -> None:
        lo, hi = max(lo, 1), min(hi, upto)
        if lo <= hi:
            diff[lo] += step
            diff[hi + 1] -= step

    for k, d in _component_dims(ctx, eps, upto):
        ell = dim_pnew(ctx, k) - 1
        if ell >= 1:
            mark(d + 1, d + (ell + 1) // 2, +1)
            mark(d + ell // 2 + 2, d + ell + 1, -1)

    out = [0] * (upto + 1)
    running = 0
    for i in range(1, upto + 1):
        running += diff[i]
        out[i] = running
    return out


def lam_values(ctx: PrimeContext, eps: ComponentLabel, upto: int) -> list[int]:
    """[lam(g_i) for i = 0..upto]: partial sums of the delta degrees."""
    deltas = lam_deltas(ctx, eps, upto)
    out = [0] * (upto + 1)
    total = 0
    for i in range(1, upto + 1):
        total += deltas[i]
        out[i] = total
        if total < 0:
            raise AssertionError(f"negative degree at i = {i}; divisor bookkeeping broke")
    return out

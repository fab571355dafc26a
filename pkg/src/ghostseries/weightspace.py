"""Even p-adic weight space: components, w-coordinates, exact valuations.

Even weight space is a disjoint union of open unit discs, one per even
character of the torsion subgroup of Z_p^x.  On a fixed disc the coordinate
of a weight ``kappa`` is ``w = kappa(gamma) - 1`` where ``gamma`` topologically
generates ``1 + 2pZ_p``.  Everything here is exact: valuations are returned
as `fractions.Fraction` (normalized so ``v_p(p) = 1``) or as the
:data:`INFINITY` sentinel, never as floats.

The distance formulas used throughout:

* two even integer weights k, k' on one component satisfy
  ``v_2(w_k - w_k') = 2 + v_2(k - k')`` for p = 2 and
  ``v_p(w_k - w_k') = 1 + v_p(k - k')`` for odd p (both follow from
  ``v_p(gamma^m - 1) = v_p(gamma - 1) + v_p(m)``);
* a weight ``z^k eta_8^{+-}`` (p = 2) has ``w = -5^k - 1``, so it sits at
  distance exactly 1 from every integer weight and at distance
  ``2 + v_2(k - k')`` from its siblings;
* a weight ``z^k chi`` with chi of conductor ``p^t`` (t >= 2) sits at
  distance ``v_p(zeta - 1) = 1/(p^(t-2)(p-1))`` from every integer weight,
  where zeta is the primitive ``p^(t-1)``-th root of unity ``chi(gamma)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import ComponentMismatch, PrecisionError


# ---------------------------------------------------------------------------
# exact arithmetic helpers

class _PlusInfinity:
    """The point +infinity of the extended rationals (absorbs addition)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "+Infinity"

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is INFINITY

    def __gt__(self, other) -> bool:
        return other is not INFINITY

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other is INFINITY or other > 0:
            return self
        raise ArithmeticError("cannot multiply +Infinity by a nonpositive value")

    __rmul__ = __mul__

    def __neg__(self):
        raise ArithmeticError("-Infinity is not an extended rational here")


INFINITY = _PlusInfinity()

ExtendedRational = Union[int, Fraction, _PlusInfinity]


def is_finite(value: ExtendedRational) -> bool:
    return value is not INFINITY


def padic_valuation(n: int, p: int) -> int:
    """v_p of a nonzero integer."""
    if n == 0:
        raise ValueError("v_p(0) is infinite; handle zero before calling")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# contexts and components

@dataclass(frozen=True)
class PrimeContext:
    """A prime p together with a tame level N coprime to p."""

    p: int
    N: int = 1

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.N < 1:
            raise ValueError(f"tame level N = {self.N} must be positive")
        if gcd(self.N, self.p) != 1:
            raise ValueError(f"N = {self.N} must be coprime to p = {self.p}")


@dataclass(frozen=True)
class ComponentLabel:
    """A component of even weight space: an even residue mod (p-1).

    For p = 2 the modulus degenerates to 1 and the unique component is
    labelled 0.
    """

    residue: int
    p: int

    def __post_init__(self) -> None:
        modulus = max(self.p - 1, 1)
        if not (0 <= self.residue < modulus):
            raise ValueError(f"residue {self.residue} out of range mod {modulus}")
        if self.residue % 2 != 0:
            raise ValueError("components of even weight space have even residue")


def component_of(k: int, ctx: PrimeContext) -> ComponentLabel:
    """Component containing the integer weight z^k.  Rejects odd k."""
    if k % 2 != 0:
        raise ValueError(f"integer weight k = {k} must be even")
    modulus = max(ctx.p - 1, 1)
    return ComponentLabel(k % modulus, ctx.p)


def classical_weights(ctx: PrimeContext, eps: ComponentLabel):
    """Yield the even integer weights k >= 2 lying on the component eps,
    in increasing order.  (These are the only possible coefficient zeros.)
    """
    if eps.p != ctx.p:
        raise ValueError("component belongs to a different prime")
    if ctx.p == 2:
        k, step = 2, 2
    else:
        step = ctx.p - 1
        k = eps.residue if eps.residue >= 2 else step
    while True:
        yield k
        k += step


# ---------------------------------------------------------------------------
# weight points

@dataclass(frozen=True)
class Classical:
    """The weight z^k for an even integer k (any sign)."""

    k: int

    def __post_init__(self) -> None:
        if self.k % 2 != 0:
            raise ValueError(f"classical weight k = {self.k} must be even")


@dataclass(frozen=True)
class EtaEight:
    """The weight z^k eta_8^{+-} (p = 2 only), sign forced to (-1)^k."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("eta_8 weights require k >= 2")

    @property
    def sign(self) -> int:
        return 1 if self.k % 2 == 0 else -1


@dataclass(frozen=True)
class CharClassical:
    """The weight z^k chi for chi of conductor p^t, t >= 2 (odd p only).

    The tame part of chi is trivial, so evenness forces k even; the choice
    of primitive chi does not affect any valuation computed here.
    """

    k: int
    t: int

    def __post_init__(self) -> None:
        if self.k % 2 != 0:
            raise ValueError(f"character weight k = {self.k} must be even")
        if self.t < 2:
            raise ValueError("character conductor exponent must satisfy t >= 2")


@dataclass(frozen=True)
class Annulus:
    """A weight at exact distance v from the integer weight k0, v positive
    and non-integral.

    Integral v is rejected: with v not an integer every ultrametric
    ``min(v, integer)`` below is strict, so the polygon is well defined
    without further information about the weight.
    """

    center: int
    v: Fraction

    def __post_init__(self) -> None:
        if self.center % 2 != 0:
            raise ValueError("annulus center must be an even integer weight")
        if isinstance(self.v, float):
            raise TypeError("annulus radius must be exact: pass a Fraction, not a float")
        object.__setattr__(self, "v", Fraction(self.v))
        if self.v <= 0:
            raise ValueError("annulus radius v must be positive")
        if self.v.denominator == 1:
            raise ValueError(
                "annulus radius v must not be an integer; "
                "use an explicit w-value with enough precision instead"
            )


@dataclass(frozen=True)
class ExplicitW:
    """A weight given by its w-coordinate w0 (an integer) mod p^m.

    The coordinate presumes the fixed generator gamma = 1 + p (gamma = 5 for
    p = 2) unless ``generator`` overrides it.  For odd p the coordinate alone
    does not say which disc the weight lives on, so ``residue`` names the
    component; it may be omitted for p = 2.
    """

    w0: int
    m: int
    residue: int | None = None
    generator: int | None = None

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("precision m must be at least 1")


WeightPoint = Union[Classical, EtaEight, CharClassical, Annulus, ExplicitW]

ZeroPoint = Union[Classical, EtaEight]


def default_generator(p: int) -> int:
    return 5 if p == 2 else 1 + p


def _check_generator(gen: int, p: int) -> int:
    want = 2 if p == 2 else 1
    if gen <= 1 or padic_valuation(gen - 1, p) != want:
        raise ValueError(
            f"{gen} does not generate 1 + {2 * p if p == 2 else p}Z_{p}: "
            f"need v_{p}(gen - 1) = {want}"
        )
    return gen


def weight_component(a: WeightPoint, ctx: PrimeContext) -> ComponentLabel:
    """Component of weight space containing the point ``a``."""
    if isinstance(a, Classical):
        return component_of(a.k, ctx)
    if isinstance(a, EtaEight):
        if ctx.p != 2:
            raise ValueError("eta_8 weights exist only for p = 2")
        return ComponentLabel(0, 2)
    if isinstance(a, CharClassical):
        if ctx.p == 2:
            raise ValueError("conductor-p^t weights are used only for odd p")
        return component_of(a.k, ctx)
    if isinstance(a, Annulus):
        return component_of(a.center, ctx)
    if isinstance(a, ExplicitW):
        if ctx.p == 2:
            return ComponentLabel(0, 2)
        if a.residue is None:
            raise ValueError(
                "explicit w-values need a component residue for odd p "
                "(the coordinate does not determine the disc)"
            )
        if a.residue % 2 != 0:
            raise ValueError("component residue must be even")
        return ComponentLabel(a.residue % (ctx.p - 1), ctx.p)
    raise TypeError(f"not a weight point: {a!r}")


# ---------------------------------------------------------------------------
# valuations

def classical_pair_valuation(k: int, k2: int, ctx: PrimeContext) -> ExtendedRational:
    """v_p(w_k - w_k') for two even integer weights on one component.

    Returns 2 + v_2(k - k') for p = 2, 1 + v_p(k - k') for odd p, and
    +Infinity when the weights coincide.
    """
    if component_of(k, ctx) != component_of(k2, ctx):
        raise ComponentMismatch(
            f"weights {k} and {k2} lie on different components mod {ctx.p - 1}"
        )
    if k == k2:
        return INFINITY
    base = 2 if ctx.p == 2 else 1
    return base + padic_valuation(k - k2, ctx.p)


def _w_coordinate_mod(z: ZeroPoint, p: int, m: int, gen: int) -> int:
    """w-coordinate of a zero, reduced mod p^m, in the convention of gen."""
    mod = p ** m
    if isinstance(z, Classical):
        return (pow(gen, z.k, mod) - 1) % mod
    # eta_8^{+-}(gamma) = -1 because gamma = 5 mod 8 for every generator
    return (-pow(gen, z.k, mod) - 1) % mod


def _explicit_pair_valuation(a: ExplicitW, z: ZeroPoint, ctx: PrimeContext) -> Fraction:
    p = ctx.p
    gen = _check_generator(a.generator or default_generator(p), p)
    mod = p ** a.m
    if a.w0 % p != 0:
        raise ValueError(f"w0 = {a.w0} is not in the open unit disc (p must divide w0)")
    diff = (a.w0 - _w_coordinate_mod(z, p, a.m, gen)) % mod
    if diff == 0:
        raise PrecisionError(
            f"w-value known mod {p}^{a.m} only: v_{p}(w - w_z) >= {a.m} "
            f"is not determined (zero at k = {z.k})"
        )
    return Fraction(padic_valuation(diff, p))


def pair_valuation(a: WeightPoint, z: ZeroPoint, ctx: PrimeContext) -> ExtendedRational:
    """v_p(w_a - w_z) for a weight point ``a`` and a coefficient zero ``z``.

    ``z`` must be a Classical or EtaEight point on the component of ``a``.
    """
    if not isinstance(z, (Classical, EtaEight)):
        raise TypeError(f"coefficient zeros are Classical or EtaEight points, not {z!r}")
    if isinstance(z, EtaEight) and ctx.p != 2:
        raise ValueError("eta_8 zeros exist only for p = 2")
    if weight_component(a, ctx) != weight_component(z, ctx):
        raise ComponentMismatch(
            f"{a!r} and {z!r} lie on different components of weight space"
        )

    if isinstance(a, Classical):
        if isinstance(z, Classical):
            return classical_pair_valuation(a.k, z.k, ctx)
        # classical vs eta_8: w-values are 5^k - 1 and -5^k' - 1, and
        # 5^k + 5^k' is 2 mod 4, so the distance is exactly 1.
        return Fraction(1)

    if isinstance(a, EtaEight):
        if isinstance(z, EtaEight):
            if a.k == z.k:
                return INFINITY
            return Fraction(2 + padic_valuation(a.k - z.k, 2))
        return Fraction(1)

    if isinstance(a, Annulus):
        # strict ultrametric: v is not an integer and the other leg is
        other = pair_valuation(Classical(a.center), z, ctx)
        return min(a.v, other)

    if isinstance(a, CharClassical):
        p = ctx.p
        # v_p(zeta - 1) < 1 <= v_p(gamma^(k-z) - 1), so the root of unity wins
        return Fraction(1, p ** (a.t - 2) * (p - 1))

    if isinstance(a, ExplicitW):
        return _explicit_pair_valuation(a, z, ctx)

    raise TypeError(f"not a weight point: {a!r}")


def weight_valuation(a: WeightPoint, ctx: PrimeContext) -> ExtendedRational:
    """v_p(w_a), i.e. the distance from ``a`` to the center of its disc.

    Raises PrecisionError for an explicit w-value that is 0 mod p^m.
    """
    p = ctx.p
    if isinstance(a, Classical):
        if a.k == 0:
            return INFINITY
        base = 2 if p == 2 else 1
        return Fraction(base + padic_valuation(a.k, p))
    if isinstance(a, EtaEight):
        return Fraction(1)
    if isinstance(a, CharClassical):
        return Fraction(1, p ** (a.t - 2) * (p - 1))
    if isinstance(a, Annulus):
        return min(a.v, weight_valuation(Classical(a.center), ctx))
    if isinstance(a, ExplicitW):
        if a.w0 % p != 0:
            raise ValueError(f"w0 = {a.w0} is not in the open unit disc")
        rep = a.w0 % (p ** a.m)
        if rep == 0:
            raise PrecisionError(
                f"v_{p}(w) >= {a.m} is all the precision allows for w0 = {a.w0}"
            )
        return Fraction(padic_valuation(rep, p))
    raise TypeError(f"not a weight point: {a!r}")

"""Pochhammer symbols, finite multiple harmonic sums, and the closed-form
derivatives at 1 of the Pochhammer-ratio weights.

The strict/weak sums run on the same fixed-point chain kernels as the
infinite series (O(depth * m) time, O(depth) memory). Exact-rational twins
built by plain enumeration are provided for small arguments; the derivative
closed forms are assembled from exact rationals and only rounded on return.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import List, Optional, Tuple

from .chains import ChainEvaluator, Level, Pow
from .context import HPReal, PrecisionContext
from .errors import ConsistencyError, DomainError
from .indices import Index, compositions


def pochhammer(a, m: int, ctx: PrecisionContext) -> HPReal:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1."""
    if m < 0:
        raise DomainError(f"pochhammer needs m >= 0, got {m}")
    av = ctx.real(a)
    mp = ctx.mp
    acc = mp.mpf(1)
    base = av.mpf
    for j in range(m):
        acc *= base + j
    return HPReal(acc, ctx)


def _finite_chain(parts: Tuple[int, ...], m: int, ctx: PrecisionContext,
                  strict: bool) -> HPReal:
    levels = [Level(pows=(Pow(k, Fraction(1)),)) for k in parts]
    ev = ChainEvaluator(ctx, levels, t_start=0, strict=strict)
    # strict S_m sums variables < m (state h_n(m-1)); weak S*_m includes m
    ev.advance_to(m if strict else m + 1)
    return HPReal(ctx.mp.mpf(ev.pvals[-1]) / ev.S, ctx)


def strict_sum(ix: Optional[Index], m: int, ctx: PrecisionContext) -> HPReal:
    """S_m: sum over 0 <= m_1 < ... < m_n < m of prod (m_i+1)^(-k_i).

    The empty index gives 1; m below the depth gives 0.
    """
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    if ix is None:
        return ctx.one()
    if m < ix.depth:
        return ctx.zero()
    return _finite_chain(ix.parts, m, ctx, strict=True)


def star_sum(ix: Optional[Index], m: int, ctx: PrecisionContext) -> HPReal:
    """S*_m: sum over 0 <= m_1 <= ... <= m_n <= m of prod (m_i+1)^(-k_i)."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    if ix is None:
        return ctx.one()
    return _finite_chain(ix.parts, m, ctx, strict=False)


def strict_sum_exact(ix: Optional[Index], m: int) -> Fraction:
    """Enumeration-based exact S_m (intended for small m)."""
    if ix is None:
        return Fraction(1)
    total = Fraction(0)
    for combo in combinations(range(m), ix.depth):
        term = Fraction(1)
        for mi, k in zip(combo, ix.parts):
            term /= Fraction(mi + 1) ** k
        total += term
    return total


def star_sum_exact(ix: Optional[Index], m: int) -> Fraction:
    """Enumeration-based exact S*_m (intended for small m)."""
    if ix is None:
        return Fraction(1)
    total = Fraction(0)
    for combo in combinations_with_replacement(range(m + 1), ix.depth):
        term = Fraction(1)
        for mi, k in zip(combo, ix.parts):
            term /= Fraction(mi + 1) ** k
        total += term
    return total


def _ones_strict(m: int, r: int) -> List[Fraction]:
    """Exact [S_m(1^j)]_{j=0..r} by the O(r*m) recurrence."""
    vals = [Fraction(1)] + [Fraction(0)] * r
    for t in range(m):
        inv = Fraction(1, t + 1)
        for j in range(r, 0, -1):
            vals[j] += vals[j - 1] * inv
    return vals


def _ones_star(m: int, r: int) -> List[Fraction]:
    """Exact [S*_m(1^j)]_{j=0..r}."""
    vals = [Fraction(1)] + [Fraction(0)] * r
    for t in range(m + 1):
        inv = Fraction(1, t + 1)
        for j in range(1, r + 1):
            vals[j] += vals[j - 1] * inv
    return vals


def _harmonic(m: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def _factorial(m: int) -> int:
    out = 1
    for j in range(2, m + 1):
        out *= j
    return out


def d1_pochhammer_at1(m: int, ctx: PrecisionContext) -> HPReal:
    """d/da (a)_m at a=1, i.e. m! * (H_{m+1} - 1/(m+1)) = m! * H_m."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    return ctx.real(_factorial(m) * _harmonic(m))


def d1_inv_pochhammer2a_at1(m: int, ctx: PrecisionContext) -> HPReal:
    """d/da 1/(2a)_m at a=1, i.e. (-2/(m+1)!) * (H_{m+1} - 1)."""
    if m < 0:
        raise DomainError(f"m must be >= 0, got {m}")
    val = Fraction(-2, _factorial(m + 1)) * (_harmonic(m + 1) - 1)
    return ctx.real(val)


def dr_inv_pochhammer_2minus_at1_exact(m: int, r: int) -> Fraction:
    """(1/r!) d^r/da^r [1/(2-a)_{m+1}] at a=1 via S*_m(1^r)/(m+1)!."""
    if m < 0 or r < 0:
        raise DomainError("m and r must be >= 0")
    return _ones_star(m, r)[r] / _factorial(m + 1)


def dr_inv_pochhammer_2minus_at1(m: int, r: int, ctx: PrecisionContext) -> HPReal:
    return ctx.real(dr_inv_pochhammer_2minus_at1_exact(m, r))


def dr_ratio_at1_forms(m: int, r: int) -> Tuple[Fraction, Fraction]:
    """The two exact-rational routes to (1/r!) d^r/da^r [(a)_m/(2-a)_{m+1}] at 1.

    First: (1/(m+1)) * sum_i S_m(1^(r-i)) S*_m(1^i).
    Second: sum_i 2^i * sum over compositions k of r+1 into i+1 parts of
            S_m(k_1..k_i) / (m+1)^(k_{i+1}).
    Equality of the two for all m, r is itself one of the verified identities.
    """
    if m < 0 or r < 0:
        raise DomainError("m and r must be >= 0")
    ones_s = _ones_strict(m, r)
    ones_t = _ones_star(m, r)
    form_a = sum((ones_s[r - i] * ones_t[i] for i in range(r + 1)),
                 Fraction(0)) / (m + 1)
    form_b = Fraction(0)
    for i in range(min(m, r) + 1):
        inner = Fraction(0)
        for comp in compositions(r + 1, i + 1):
            head = strict_sum_exact(Index(comp[:i]) if i else None, m)
            inner += head / Fraction(m + 1) ** comp[i]
        form_b += 2 ** i * inner
    return form_a, form_b


def dr_ratio_at1(m: int, r: int, ctx: PrecisionContext) -> HPReal:
    """Closed-form scaled derivative of the Pochhammer ratio, cross-checked
    through both exact routes (ConsistencyError if they ever disagree)."""
    form_a, form_b = dr_ratio_at1_forms(m, r)
    if form_a != form_b:
        raise ConsistencyError(
            f"ratio-derivative routes disagree at m={m}, r={r}: "
            f"{form_a} vs {form_b}")
    return ctx.real(form_a)

"""Convergent infinite-series evaluators.

zeta / eta_shifted          single series (Euler-Maclaurin tail / accelerated)
mzv / mzsv / alt_mzsv       nested chains over strictly / weakly increasing
                            variables, with analytic chain-tail corrections
weighted_product_series     the harmonic-product series forming the
                            right-hand sides of the expansion identities

Each nested evaluator returns an Evaluation pairing the value with
EvalDiagnostics (terms used, tail correction, error estimate, strategy).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .chains import ChainEvaluator, Level, Pow, WeightedChainEvaluator
from .context import HPReal, PrecisionContext
from .errors import DomainError
from .indices import Index, admissible
from .tailcalc import power_sum_tail


@dataclass(frozen=True)
class EvalDiagnostics:
    """Truncation report for one series evaluation."""
    terms_used: int
    tail_correction: HPReal
    error_estimate: HPReal
    strategy: str


class Evaluation(NamedTuple):
    value: HPReal
    diagnostics: EvalDiagnostics


def _wrap(ctx: PrecisionContext, value_mpf, info) -> Evaluation:
    diag = EvalDiagnostics(
        terms_used=info["terms"],
        tail_correction=HPReal(info["tail"], ctx),
        error_estimate=HPReal(info["estimate"], ctx),
        strategy=info["strategy"],
    )
    return Evaluation(HPReal(value_mpf, ctx), diag)


def exact_diag(ctx: PrecisionContext) -> EvalDiagnostics:
    """Diagnostics for closed-form quantities (error at the rounding floor)."""
    floor = ctx.mp.mpf(10) ** (-(ctx.working_digits - 2))
    return EvalDiagnostics(0, ctx.zero(), HPReal(floor, ctx), "direct")


def zeta(k, ctx: PrecisionContext) -> HPReal:
    """Riemann zeta for real k > 1 by partial sum plus Euler-Maclaurin tail."""
    kv = ctx.real(k)
    if kv <= 1:
        raise DomainError(f"zeta requires k > 1, got {kv}")
    mp = ctx.mp
    tail = power_sum_tail(mp, kv.mpf, mp.mpf(0), 1, ctx.tol * mp.mpf("1e-2"))
    return HPReal(1 + tail, ctx)


def zeta_ex(k, ctx: PrecisionContext) -> Evaluation:
    val = zeta(k, ctx)
    return Evaluation(val, exact_diag(ctx))


def eta_shifted(k: int, ctx: PrecisionContext) -> HPReal:
    """sum_{m>=0} (-1)^m / (m+1)^k for integer k >= 1 (accelerated)."""
    return eta_shifted_ex(k, ctx).value


def eta_shifted_ex(k: int, ctx: PrecisionContext) -> Evaluation:
    if k < 1:
        raise DomainError(f"eta_shifted requires k >= 1, got {k}")
    ev = ChainEvaluator(ctx, [Level(pows=(Pow(int(k)),))], t_start=1,
                        alternating=True)
    val, info = ev.run(ctx.tol)
    return _wrap(ctx, val, info)


def _index_levels(ix: Index):
    return [Level(pows=(Pow(int(k)),)) for k in ix.parts]


def mzv(ix: Index, ctx: PrecisionContext, tol=None, relax=None) -> Evaluation:
    """Multiple zeta value over strictly increasing variables."""
    if not admissible(ix, alternating=False):
        raise DomainError(f"inadmissible index {ix}: last part must be >= 2")
    ev = ChainEvaluator(ctx, _index_levels(ix), t_start=1, strict=True)
    val, info = ev.run(tol if tol is not None else ctx.tol, relax=relax)
    return _wrap(ctx, val, info)


def mzsv(ix: Index, ctx: PrecisionContext, tol=None, relax=None) -> Evaluation:
    """Multiple zeta-star value over weakly increasing variables."""
    if not admissible(ix, alternating=False):
        raise DomainError(f"inadmissible index {ix}: last part must be >= 2")
    ev = ChainEvaluator(ctx, _index_levels(ix), t_start=1)
    val, info = ev.run(tol if tol is not None else ctx.tol, relax=relax)
    return _wrap(ctx, val, info)


def alt_mzsv(ix: Index, ctx: PrecisionContext, tol=None, relax=None) -> Evaluation:
    """Alternating zeta-star value: sign (-1)^(m_n - 1) on the outer variable."""
    ev = ChainEvaluator(ctx, _index_levels(ix), t_start=1, alternating=True)
    val, info = ev.run(tol if tol is not None else ctx.tol, relax=relax)
    return _wrap(ctx, val, info)


def weighted_product_series(r: int, s: int, alternating: bool,
                            ctx: PrecisionContext) -> HPReal:
    """2 * sum_m sigma(m)/(m+1)^p * sum_{i<=r} S_m(1^(r-i)) S*_m(1^i).

    (sigma, p) is (+1, 2s-1) in the plain case (needs s >= 2) and
    ((-1)^m, 2s) in the alternating case (s >= 1).
    """
    return weighted_product_series_ex(r, s, alternating, ctx).value


def weighted_product_series_ex(r: int, s: int, alternating: bool,
                               ctx: PrecisionContext, tol=None,
                               relax=None) -> Evaluation:
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    if alternating:
        if s < 1:
            raise DomainError(f"alternating case needs s >= 1, got {s}")
        p = 2 * s
    else:
        if s < 2:
            raise DomainError(f"plain case needs s >= 2, got {s}")
        p = 2 * s - 1
    ev = WeightedChainEvaluator(ctx, r=int(r), p=p, alternating=alternating)
    val, info = ev.run(tol if tol is not None else ctx.tol, relax=relax)
    two = ctx.mp.mpf(2)
    info = dict(info)
    info["tail"] = two * info["tail"]
    info["estimate"] = two * info["estimate"]
    return _wrap(ctx, two * val, info)

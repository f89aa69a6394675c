"""Identity catalog and verification runner.

Every identity carries a parameter schema, a default grid (the widest range
that completes quickly at 30 digits), and an evaluator producing both sides
with diagnostics. Verification never trusts a single evaluation route: the
two sides always come from structurally different evaluators.

The per-identity pass tolerance is max(ctx.tol, 10 * (sum of both sides'
error estimates)), so a verification cannot fail through honest truncation
error while a genuinely false identity still fails loudly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fnmatch import fnmatch
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Dict, List, Optional, Tuple

from . import finite_sums, hypergeom, series
from .context import HPReal, PrecisionContext
from .errors import ConfigurationError, DomainError
from .indices import Index, compositions
from .numerics import derivative_at
from .series import EvalDiagnostics, Evaluation, exact_diag

RELAX = 200  # sides may return a plateaued estimate up to RELAX * tol


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str                      # 'int' | 'real' | 'choice'
    lo: Optional[Fraction] = None  # closed bounds unless *_open
    hi: Optional[Fraction] = None
    lo_open: bool = False
    hi_open: bool = False
    choices: Tuple[str, ...] = ()

    def describe(self) -> str:
        if self.kind == "choice":
            return f"{self.name} in {{{','.join(self.choices)}}}"
        lo = "" if self.lo is None else str(self.lo)
        hi = "" if self.hi is None else str(self.hi)
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        return f"{self.name}:{self.kind} {lb}{lo}..{hi}{rb}"

    def validate(self, value):
        if self.kind == "choice":
            if str(value) not in self.choices:
                raise ConfigurationError(
                    f"{self.name}={value!r} not in {self.choices}")
            return str(value)
        if self.kind == "int":
            try:
                v = int(value)
            except (TypeError, ValueError):
                raise ConfigurationError(f"{self.name}={value!r} is not an integer")
            frac = Fraction(v)
        else:
            try:
                v = hypergeom.as_fraction(value)
            except (DomainError, ValueError):
                raise ConfigurationError(f"{self.name}={value!r} is not a real number")
            frac = v
        if self.lo is not None and (frac < self.lo or (self.lo_open and frac == self.lo)):
            raise ConfigurationError(f"{self.name}={value} below bound {self.lo}")
        if self.hi is not None and (frac > self.hi or (self.hi_open and frac == self.hi)):
            raise ConfigurationError(f"{self.name}={value} above bound {self.hi}")
        return v if self.kind == "int" else value


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    anchor: str
    params: Tuple[ParamSpec, ...]
    default_grid: Tuple[dict, ...]
    evaluate: Callable  # (ctx, params) -> (Evaluation, Evaluation)

    def schema_text(self) -> str:
        return ", ".join(p.describe() for p in self.params) or "(no parameters)"

    def grid_text(self) -> str:
        return "; ".join(
            ",".join(f"{k}={v}" for k, v in sorted(inst.items())) or "-"
            for inst in self.default_grid)


@dataclass
class VerificationResult:
    id: str
    params: dict
    lhs_value: HPReal
    rhs_value: HPReal
    abs_diff: HPReal
    tolerance: HPReal
    passed: bool
    lhs_diag: EvalDiagnostics
    rhs_diag: EvalDiagnostics
    elapsed_s: float
    error: Optional[str] = None


# -- evaluation helpers -----------------------------------------------------------

def _scalar(ctx: PrecisionContext, value) -> Evaluation:
    v = value if isinstance(value, HPReal) else ctx.real(value)
    return Evaluation(v, exact_diag(ctx))


def _combine(ctx: PrecisionContext, parts: List[Tuple[int, Evaluation]]) -> Evaluation:
    """Signed integer combination of evaluations with aggregated diagnostics."""
    total = ctx.zero()
    tail = ctx.zero()
    est = ctx.zero()
    terms = 0
    strategy = "direct"
    for coef, ev in parts:
        total = total + coef * ev.value
        tail = tail + coef * ev.diagnostics.tail_correction
        est = est + abs(coef) * ev.diagnostics.error_estimate
        if ev.diagnostics.terms_used >= terms:
            terms = ev.diagnostics.terms_used
            strategy = ev.diagnostics.strategy
    return Evaluation(total, EvalDiagnostics(terms, tail, est, strategy))


def _star(ctx, parts, tol):
    return series.mzsv(Index(tuple(parts)), ctx, tol=tol, relax=RELAX)


def _strict(ctx, parts, tol):
    return series.mzv(Index(tuple(parts)), ctx, tol=tol, relax=RELAX)


def _alt(ctx, parts, tol):
    return series.alt_mzsv(Index(tuple(parts)), ctx, tol=tol, relax=RELAX)


def _two_one_parts(r: int, s: int, kind: str) -> List[Tuple[int, Tuple[int, ...]]]:
    """Signed power-of-two combinations over compositions of r+1.

    kind 'star': coefficient (-1)^(r-i) 2^(i+1), last entry += 2s-2 (weak sums)
    kind 'alt' : same signs, last entry += 2s-1 (alternating weak sums)
    kind 'mzv' : coefficient +2^(i+1), last entry += 2s-2 (strict sums)
    """
    out = []
    bump = 2 * s - 1 if kind == "alt" else 2 * s - 2
    for i in range(r + 1):
        coef = 2 ** (i + 1)
        if kind != "mzv":
            coef *= (-1) ** (r - i)
        for comp in compositions(r + 1, i + 1):
            out.append((coef, comp[:i] + (comp[i] + bump,)))
    return out


# -- per-identity evaluators -------------------------------------------------------

def _ev_remark1_even(ctx, p):
    s = p["s"]
    z = series.zeta(2 * s, ctx)
    lhs = _scalar(ctx, 2 * (1 - ctx.real(2) ** (1 - 2 * s)) * z)
    rhs = _star(ctx, (2,) * s, ctx.tol)
    return lhs, rhs


def _ev_remark1_odd(ctx, p):
    s = p["s"]
    lhs = _scalar(ctx, 2 * series.zeta(2 * s + 1, ctx))
    rhs = _star(ctx, (1,) + (2,) * s, ctx.tol)
    return lhs, rhs


def _ev_specialized(case):
    def ev(ctx, p):
        s, alpha = p["s"], p["alpha"]
        lhs = hypergeom.specialized_lhs(case, alpha, s, ctx, tol=ctx.tol, relax=RELAX)
        rhs = hypergeom.specialized_rhs(case, alpha, s, ctx, tol=ctx.tol, relax=RELAX)
        return lhs, rhs
    return ev


def _ev_a1_prefactor_derivative(ctx, p):
    from .numerics import gamma

    def f(x):
        return gamma(x, x.ctx) ** 2 / (2 * gamma(2 * x, x.ctx))

    lhs = _scalar(ctx, derivative_at(f, 1, 1, ctx))
    rhs = _scalar(ctx, -1)
    return lhs, rhs


def _ev_eq1(ctx, p):
    s = p["s"]
    lhs = _scalar(ctx, 4 * s * (1 - ctx.real(2) ** (-2 * s))
                  * series.zeta(2 * s + 1, ctx))
    parts = [(1, _star(ctx, (3,) + (2,) * (s - 1), ctx.tol))]
    for i in range(1, s + 1):
        parts.append((2, _star(ctx, (2,) * (i - 1) + (3,) + (2,) * (s - i), ctx.tol)))
    return lhs, _combine(ctx, parts)


def _ev_a2_cyclic(ctx, p):
    s = p["s"]
    lhs = _scalar(ctx, (2 * s - 1) * series.zeta(2 * s, ctx))
    parts = [(1, _star(ctx, (2,) * s, ctx.tol))]
    for i in range(0, s - 1):
        parts.append((1, _star(ctx, (1,) + (2,) * i + (3,) + (2,) * (s - 2 - i),
                               ctx.tol)))
    return lhs, _combine(ctx, parts)


def _ev_eq2_check(ctx, p):
    m, r = p["m"], p["r"]
    lhs = _scalar(ctx, finite_sums.dr_inv_pochhammer_2minus_at1(m, r, ctx))

    def f(x):
        prod = x.ctx.one()
        for j in range(m + 1):
            prod = prod * (2 - x + j)
        return 1 / prod

    fact_r = 1
    for j in range(2, r + 1):
        fact_r *= j
    rhs = _scalar(ctx, derivative_at(f, 1, r, ctx) / fact_r)
    return lhs, rhs


def _ev_eq3(ctx, p):
    r, s = p["r"], p["s"]
    lhs = _star(ctx, (1,) * (r + 1) + (2,) * (s - 1), ctx.tol)
    rhs = series.weighted_product_series_ex(r, s, False, ctx, tol=ctx.tol,
                                            relax=RELAX)
    return lhs, rhs


def _ev_eq3_expansion(k):
    def ev(ctx, p):
        s = p["s"]
        lhs = _star(ctx, (1,) * (k + 1) + (2,) * (s - 1), ctx.tol)
        parts = [(coef, _star(ctx, ix, ctx.tol))
                 for coef, ix in _two_one_parts(k, s, "star")]
        return lhs, _combine(ctx, parts)
    return ev


def _ev_eq4(ctx, p):
    r, s = p["r"], p["s"]
    lhs = _star(ctx, (r + 2,) + (2,) * (s - 1), ctx.tol)
    rhs = series.weighted_product_series_ex(r, s, True, ctx, tol=ctx.tol,
                                            relax=RELAX)
    return lhs, rhs


def _ev_eq4_expansion(k):
    def ev(ctx, p):
        s = p["s"]
        lhs = _star(ctx, (k + 2,) + (2,) * (s - 1), ctx.tol)
        parts = [(coef, _alt(ctx, ix, ctx.tol))
                 for coef, ix in _two_one_parts(k, s, "alt")]
        return lhs, _combine(ctx, parts)
    return ev


def _ev_eq5_check(ctx, p):
    m, r = p["m"], p["r"]
    form_a, form_b = finite_sums.dr_ratio_at1_forms(m, r)
    return _scalar(ctx, form_a), _scalar(ctx, form_b)


def _ev_addendum_mzv_form(ctx, p):
    r, s = p["r"], p["s"]
    lhs = series.weighted_product_series_ex(r, s, False, ctx, tol=ctx.tol,
                                            relax=RELAX)
    parts = [(coef, _strict(ctx, ix, ctx.tol))
             for coef, ix in _two_one_parts(r, s, "mzv")]
    return lhs, _combine(ctx, parts)


def _ev_two_one_eq3(ctx, p):
    r, s = p["r"], p["s"]
    lhs = _star(ctx, (1,) * (r + 1) + (2,) * (s - 1), ctx.tol)
    parts = [(coef, _star(ctx, ix, ctx.tol))
             for coef, ix in _two_one_parts(r, s, "star")]
    return lhs, _combine(ctx, parts)


def _ev_two_one_eq4(ctx, p):
    r, s = p["r"], p["s"]
    lhs = _star(ctx, (r + 2,) + (2,) * (s - 1), ctx.tol)
    parts = [(coef, _alt(ctx, ix, ctx.tol))
             for coef, ix in _two_one_parts(r, s, "alt")]
    return lhs, _combine(ctx, parts)


def _kr_params_i(variant: str, alpha, s: int) -> hypergeom.KRParamsI:
    if variant == "a1":
        al = hypergeom.as_fraction(alpha)
        return hypergeom.KRParamsI(s=s, a=2 * al, b=(Fraction(1),) + (al,) * s,
                                   c=(al,) * (s + 1))
    if variant == "a4":
        al = hypergeom.as_fraction(alpha)
        return hypergeom.KRParamsI(s=s, a=Fraction(2), b=(al,) + (Fraction(1),) * s,
                                   c=(Fraction(1),) * (s + 1))
    g = Fraction(7, 10)
    return hypergeom.KRParamsI(s=s, a=Fraction(11, 5), b=(g,) * (s + 1),
                               c=(g,) * (s + 1))


def _kr_params_ii(variant: str, alpha, s: int) -> hypergeom.KRParamsII:
    if variant == "a2":
        al = hypergeom.as_fraction(alpha)
        return hypergeom.KRParamsII(s=s, a=2 * al, c0=Fraction(1), b=(al,) * s,
                                    c=(al,) * s)
    if variant == "a3":
        al = hypergeom.as_fraction(alpha)
        return hypergeom.KRParamsII(s=s, a=Fraction(2), c0=al,
                                    b=(Fraction(1),) * s, c=(Fraction(1),) * s)
    g = Fraction(7, 10)
    return hypergeom.KRParamsII(s=s, a=Fraction(11, 5), c0=g, b=(g,) * s,
                                c=(g,) * s)


def _ev_theoremA_i(ctx, p):
    params = _kr_params_i(p["variant"], p.get("alpha", "1"), p["s"])
    lhs = hypergeom.kr_lhs_i(params, ctx, tol=ctx.tol)
    rhs = hypergeom.kr_rhs_i(params, ctx, tol=ctx.tol, relax=RELAX)
    return lhs, rhs


def _ev_theoremA_ii(ctx, p):
    params = _kr_params_ii(p["variant"], p.get("alpha", "1"), p["s"])
    lhs = hypergeom.kr_lhs_ii(params, ctx, tol=ctx.tol)
    rhs = hypergeom.kr_rhs_ii(params, ctx, tol=ctx.tol, relax=RELAX)
    return lhs, rhs


# -- registry ---------------------------------------------------------------------

def _int_spec(name, lo, hi):
    return ParamSpec(name, "int", Fraction(lo), Fraction(hi))


def _alpha_spec(lo=None, hi=None, lo_open=False, hi_open=False):
    return ParamSpec("alpha", "real",
                     None if lo is None else Fraction(lo),
                     None if hi is None else Fraction(hi),
                     lo_open, hi_open)


_ALPHAS = ("0.6", "1.0", "1.3")


def _grid(**lists) -> Tuple[dict, ...]:
    keys = list(lists)
    return tuple(dict(zip(keys, combo))
                 for combo in iter_product(*(lists[k] for k in keys)))


def _build_registry() -> List[IdentityDescriptor]:
    reg: List[IdentityDescriptor] = []

    def add(id_, anchor, params, grid, evaluate):
        reg.append(IdentityDescriptor(id_, anchor, tuple(params), tuple(grid),
                                      evaluate))

    add("remark1_even", "Remark 1, even weights",
        [_int_spec("s", 1, 8)], _grid(s=[1, 2, 3, 4, 5]), _ev_remark1_even)
    add("remark1_odd", "Remark 1, odd weights",
        [_int_spec("s", 1, 8)], _grid(s=[1, 2, 3, 4, 5]), _ev_remark1_odd)
    add("a1_specialized", "(A1) specialized identity",
        [_int_spec("s", 1, 4), _alpha_spec(lo=0, lo_open=True)],
        _grid(s=[1, 2, 3], alpha=_ALPHAS), _ev_specialized("a1"))
    add("a1_prefactor_derivative", "(A1) prefactor derivative at 1",
        [], ({},), _ev_a1_prefactor_derivative)
    add("eq1", "Eq. (1)",
        [_int_spec("s", 1, 6)], _grid(s=[1, 2, 3, 4]), _ev_eq1)
    add("a2_specialized", "(A2) specialized identity",
        [_int_spec("s", 2, 4), _alpha_spec(lo=0, lo_open=True)],
        _grid(s=[2, 3], alpha=_ALPHAS), _ev_specialized("a2"))
    add("a2_cyclic", "(A2) cyclic-sum example",
        [_int_spec("s", 1, 6)], _grid(s=[2, 3, 4, 5]), _ev_a2_cyclic)
    add("a3_specialized", "(A3) specialized identity",
        [_int_spec("s", 2, 4), _alpha_spec(hi=2, hi_open=True)],
        _grid(s=[2, 3], alpha=_ALPHAS), _ev_specialized("a3"))
    add("eq2_check", "Eq. (2) closed form vs derivative oracle",
        [_int_spec("m", 0, 30), _int_spec("r", 0, 6)],
        _grid(m=[0, 1, 2, 3, 5, 10, 15], r=[0, 1, 2, 3, 4]), _ev_eq2_check)
    add("eq3", "Eq. (3)",
        [_int_spec("r", 0, 5), _int_spec("s", 2, 4)],
        _grid(r=[0, 1, 2, 3], s=[2, 3]), _ev_eq3)
    for k in range(4):
        add(f"eq3_expansion_r{k}", f"(A3) expansion display, r={k}",
            [_int_spec("s", 2, 4)], _grid(s=[2, 3]), _ev_eq3_expansion(k))
    add("a4_specialized", "(A4) specialized identity",
        [_int_spec("s", 1, 4), _alpha_spec(hi=Fraction(3, 2), hi_open=True)],
        _grid(s=[1, 2, 3], alpha=_ALPHAS), _ev_specialized("a4"))
    add("eq4", "Eq. (4)",
        [_int_spec("r", 0, 5), _int_spec("s", 1, 3)],
        _grid(r=[0, 1, 2, 3], s=[1, 2]), _ev_eq4)
    for k in range(4):
        add(f"eq4_expansion_r{k}", f"(A4) expansion display, r={k}",
            [_int_spec("s", 1, 3)], _grid(s=[1, 2]), _ev_eq4_expansion(k))
    add("eq5_check", "Eq. (5), both closed forms",
        [_int_spec("m", 0, 30), _int_spec("r", 0, 8)],
        _grid(m=[0, 1, 2, 3, 4, 6, 8, 10, 12, 15], r=[0, 1, 2, 3, 4, 5]),
        _ev_eq5_check)
    add("addendum_mzv_form", "Addendum, strict-sum form",
        [_int_spec("r", 0, 5), _int_spec("s", 2, 3)],
        _grid(r=[0, 1, 2, 3, 4], s=[2, 3]), _ev_addendum_mzv_form)
    add("two_one_eq3", "Addendum, two-one rewrite of Eq. (3)",
        [_int_spec("r", 0, 5), _int_spec("s", 2, 3)],
        _grid(r=[0, 1, 2, 3, 4], s=[2, 3]), _ev_two_one_eq3)
    add("two_one_eq4", "Addendum, two-one rewrite of Eq. (4)",
        [_int_spec("r", 0, 5), _int_spec("s", 1, 3)],
        _grid(r=[0, 1, 2, 3, 4], s=[1, 2]), _ev_two_one_eq4)
    add("theoremA_i", "Theorem A (i)",
        [ParamSpec("variant", "choice", choices=("a1", "a4", "generic")),
         _int_spec("s", 1, 3), _alpha_spec()],
        tuple([{"variant": "a1", "s": 1, "alpha": a} for a in _ALPHAS]
              + [{"variant": "a4", "s": 1, "alpha": a} for a in _ALPHAS]
              + [{"variant": "generic", "s": 1, "alpha": "1.0"}]),
        _ev_theoremA_i)
    add("theoremA_ii", "Theorem A (ii)",
        [ParamSpec("variant", "choice", choices=("a2", "a3", "generic")),
         _int_spec("s", 1, 3), _alpha_spec()],
        tuple([{"variant": "a2", "s": 2, "alpha": a} for a in _ALPHAS]
              + [{"variant": "a3", "s": 2, "alpha": a} for a in _ALPHAS]
              + [{"variant": "generic", "s": 1, "alpha": "1.0"}]),
        _ev_theoremA_ii)
    return reg


_REGISTRY: List[IdentityDescriptor] = _build_registry()
_BY_ID: Dict[str, IdentityDescriptor] = {d.id: d for d in _REGISTRY}


def list_identities() -> List[IdentityDescriptor]:
    """The full registry in canonical order."""
    return list(_REGISTRY)


def get_identity(id_: str) -> IdentityDescriptor:
    try:
        return _BY_ID[id_]
    except KeyError:
        raise ConfigurationError(f"unknown identity {id_!r}") from None


def _validate_params(desc: IdentityDescriptor, params: dict) -> dict:
    out = {}
    specs = {p.name: p for p in desc.params}
    for key, value in params.items():
        if key not in specs:
            raise ConfigurationError(
                f"identity {desc.id} takes no parameter {key!r}")
        out[key] = specs[key].validate(value)
    for name in specs:
        if name in out:
            continue
        # alpha is unused by the generic theorem variants
        if name == "alpha" and out.get("variant") == "generic":
            continue
        raise ConfigurationError(f"identity {desc.id} requires parameter {name!r}")
    return out


def verify(id_: str, params: dict, ctx: PrecisionContext) -> VerificationResult:
    """Evaluate both sides of one identity instance and compare."""
    desc = get_identity(id_)
    checked = _validate_params(desc, dict(params))
    start = time.perf_counter()
    lhs, rhs = desc.evaluate(ctx, checked)
    elapsed = time.perf_counter() - start
    diff = abs(lhs.value - rhs.value)
    est_sum = lhs.diagnostics.error_estimate + rhs.diagnostics.error_estimate
    tolerance = HPReal(max(ctx.tol, (10 * est_sum).mpf), ctx)
    passed = diff <= tolerance
    return VerificationResult(
        id=desc.id, params=checked, lhs_value=lhs.value, rhs_value=rhs.value,
        abs_diff=diff, tolerance=tolerance, passed=passed,
        lhs_diag=lhs.diagnostics, rhs_diag=rhs.diagnostics, elapsed_s=elapsed)


def _instances_for(desc: IdentityDescriptor,
                   param_grid: Optional[dict]) -> List[dict]:
    if not param_grid:
        return [dict(g) for g in desc.default_grid]
    names = [p.name for p in desc.params]
    override_keys = [k for k in param_grid if k in names]
    if not override_keys and desc.params:
        return [dict(g) for g in desc.default_grid]
    instances = []
    seen = set()
    for base in desc.default_grid or ({},):
        for combo in iter_product(*(param_grid[k] for k in override_keys)):
            inst = dict(base)
            inst.update(zip(override_keys, combo))
            key = tuple(sorted((k, str(v)) for k, v in inst.items()))
            if key not in seen:
                seen.add(key)
                instances.append(inst)
    return instances


def verify_suite(id_filter: Optional[str], param_grid: Optional[dict],
                 ctx: PrecisionContext) -> List[VerificationResult]:
    """Run all matching (identity, parameters) combinations in canonical order.

    Individual failures are recorded, never raised; an empty match is a
    configuration error.
    """
    pattern = id_filter or "*"
    matched = [d for d in _REGISTRY if fnmatch(d.id, pattern)]
    if not matched:
        raise ConfigurationError(f"no identity matches {pattern!r}")
    results: List[VerificationResult] = []
    for desc in matched:
        for inst in _instances_for(desc, param_grid):
            start = time.perf_counter()
            try:
                results.append(verify(desc.id, inst, ctx))
            except ConfigurationError:
                raise  # bad grids are caller errors, not verification failures
            except Exception as exc:  # evaluation failure: record, keep going
                nan = HPReal(ctx.mp.nan, ctx)
                results.append(VerificationResult(
                    id=desc.id, params=dict(inst), lhs_value=nan, rhs_value=nan,
                    abs_diff=nan, tolerance=HPReal(ctx.tol, ctx), passed=False,
                    lhs_diag=exact_diag(ctx), rhs_diag=exact_diag(ctx),
                    elapsed_s=time.perf_counter() - start,
                    error=f"{type(exc).__name__}: {exc}"))
    return results

import pytest

from mzsv import ContextMismatchError, DomainError, HPReal, PrecisionContext


def test_context_validation():
    with pytest.raises(DomainError):
        PrecisionContext(digits=5)
    with pytest.raises(DomainError):
        PrecisionContext(digits=30, guard=2)
    with pytest.raises(DomainError):
        PrecisionContext(digits=30, max_terms=10)
    with pytest.raises(DomainError):
        PrecisionContext(digits=30, tol=0)


def test_defaults():
    ctx = PrecisionContext(digits=30)
    assert ctx.guard == 10
    assert ctx.max_terms == 10 ** 8
    assert ctx.working_digits == 40
    assert ctx.tol == ctx.mp.mpf(10) ** -30


def test_arithmetic_and_comparisons(ctx30):
    a = ctx30.real("0.5")
    b = ctx30.real(3)
    assert (a + b).decimal().startswith("3.5")
    assert (b - a).decimal().startswith("2.5")
    assert (a * b).decimal().startswith("1.5")
    assert (b / a).decimal().startswith("6.0")
    assert (a ** 2).decimal().startswith("0.25")
    assert abs(-b) == b
    assert a < b and b > a and a <= a and b >= b
    assert a != b


def test_string_coercion_is_exact_decimal(ctx30):
    x = ctx30.real("1.3")
    # 1.3 parsed as a decimal, not the binary double 1.3000000000000000444...
    assert x.decimal(20).startswith("1.3000000000000000000")


def test_ln_exp_roundtrip(ctx30):
    x = ctx30.real("2.5")
    y = x.ln().exp()
    assert abs((y - x).mpf) < ctx30.tol


def test_cross_context_mixing_is_an_error(ctx30, ctx50):
    a = ctx30.real(1)
    b = ctx50.real(1)
    with pytest.raises(ContextMismatchError):
        _ = a + b
    with pytest.raises(ContextMismatchError):
        _ = a < b
    with pytest.raises(ContextMismatchError):
        _ = a == b


def test_decimal_rendering(ctx30):
    assert ctx30.real(0).decimal(5) == "0.0000"
    assert ctx30.real(24).decimal(10) == "24.00000000"
    assert ctx30.real("-1.5").decimal(4) == "-1.500"
    # plain decimal below 1e6, even for small magnitudes
    tiny = ctx30.real("0.000001").decimal(6)
    assert "e" not in tiny and tiny.startswith("0.00000100")
    assert ctx30.real("999999.5").decimal(8) == "999999.50"


def test_decimal_rounding_carry(ctx30):
    assert ctx30.real("9.9999").decimal(4) == "10.00"


def test_hpreal_repr(ctx30):
    assert "HPReal(" in repr(ctx30.real(2))

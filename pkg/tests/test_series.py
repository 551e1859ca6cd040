import random
from fractions import Fraction

import pytest

from vertexcalc.deltacalc import Delta, DeltaExpr, Term, window_coeffs
from vertexcalc.errors import SummabilityError, WindowUnderflowError
from vertexcalc.scalars import Vec, binom
from vertexcalc.series import (
    WindowedSeries,
    apply_delta,
    binomial_power,
    delta_series,
    exp_endo,
    multiply,
    taylor_substitute,
)


def poly(variables, entries):
    return WindowedSeries.from_monomials(variables, entries)


def rand_poly(rng, variables, max_deg=3, terms=4):
    entries = {}
    for _ in range(terms):
        key = tuple(rng.randint(0, max_deg) for _ in variables)
        entries[key] = entries.get(key, 0) + rng.randint(-4, 4)
    return poly(variables, entries)


# ---------------------------------------------------------------------------
# multiply

def test_delta_times_one_minus_x_telescopes():
    d = delta_series("x", (-7, 7))
    p = poly(("x",), {(0,): 1, (1,): -1})
    prod = multiply(d, p)
    assert prod.is_zero_on({"x": (-5, 5)})


def test_geometric_series_times_one_minus_x():
    geo = WindowedSeries(
        ("x",), {(n,): 1 for n in range(0, 8)},
        window={"x": (None, 7)}, exact={"x": False}, shape={"x": (True, False)})
    p = poly(("x",), {(0,): 1, (1,): -1})
    prod = multiply(geo, p)
    one = poly(("x",), {(0,): 1})
    assert (prod - one).is_zero_on({"x": (-5, 5)})


def test_delta_times_delta_refused():
    d = delta_series("x", (-5, 5))
    with pytest.raises(SummabilityError):
        multiply(d, d)


def test_multiply_associative_when_certified():
    rng = random.Random(3)
    for _ in range(10):
        a = rand_poly(rng, ("x", "y"))
        b = rand_poly(rng, ("x", "y"))
        c = rand_poly(rng, ("x", "y"))
        left = multiply(multiply(a, b), c)
        right = multiply(a, multiply(b, c))
        assert (left - right).is_zero()


def test_multiply_associative_with_truncated_factor():
    geo = WindowedSeries(
        ("x",), {(n,): 1 for n in range(0, 9)},
        window={"x": (None, 8)}, exact={"x": False}, shape={"x": (True, False)})
    p = poly(("x",), {(0,): 1, (1,): -1})
    q = poly(("x",), {(0,): 2, (2,): 3})
    left = multiply(multiply(geo, p), q)
    right = multiply(geo, multiply(p, q))
    assert (left - right).is_zero_on({"x": (-4, 4)})


def test_multiply_window_clipping_is_safe():
    # inexact * exact: the product window shrinks by the polynomial's spread
    geo = WindowedSeries(
        ("x",), {(n,): 1 for n in range(0, 6)},
        window={"x": (None, 5)}, exact={"x": False}, shape={"x": (True, False)})
    p = poly(("x",), {(0,): 1, (2,): 5})
    prod = multiply(geo, p)
    assert prod.known("x") == (None, 5)
    assert prod.coeff({"x": 5}) == 6
    with pytest.raises(WindowUnderflowError):
        prod.coeff({"x": 6})


# ---------------------------------------------------------------------------
# taylor substitution

def test_substitute_square_is_finite_binomial():
    s = poly(("x",), {(2,): 1})
    out = taylor_substitute(s, "x", (1, "x"), (1, "y"))
    assert out.coeff({"x": 2}) == 1
    assert out.coeff({"x": 1, "y": 1}) == 2
    assert out.coeff({"y": 2}) == 1
    assert out.is_exact()


def test_substitute_reciprocal_truncates_on_window():
    s = poly(("x",), {(-1,): 1})
    out = taylor_substitute(s, "x", (1, "x"), (1, "y"), {"y": (0, 2)})
    assert out.coeff({"x": -1}) == 1
    assert out.coeff({"x": -2, "y": 1}) == -1
    assert out.coeff({"x": -3, "y": 2}) == 1
    with pytest.raises(WindowUnderflowError):
        out.coeff({"x": -4, "y": 3})


def test_substitute_reciprocal_matches_binom_row():
    s = poly(("x",), {(-2,): 1})
    out = taylor_substitute(s, "x", (1, "x"), (1, "y"), {"y": (0, 5)})
    for k in range(6):
        assert out.coeff({"x": -2 - k, "y": k}) == binom(-2, k)


def test_double_shift_equals_single_on_shared_window():
    s = poly(("x",), {(-1,): 1, (2,): 3})
    one = taylor_substitute(s, "x", (1, "x"), (1, "y"), {"y": (0, 3)})
    two = taylor_substitute(one, "x", (1, "x"), (1, "z"), {"z": (0, 3)})
    swapped = taylor_substitute(s, "x", (1, "x"), (1, "z"), {"z": (0, 3)})
    swapped = taylor_substitute(swapped, "x", (1, "x"), (1, "y"), {"y": (0, 3)})
    w = {"x": (-4, 2), "y": (0, 3), "z": (0, 3)}
    assert (two - swapped).is_zero_on(w)


def test_substitute_into_fresh_head_variable():
    # f(x) -> f(z + y): head z fresh, expansion in y
    s = poly(("x",), {(-1,): 1})
    out = taylor_substitute(s, "x", (1, "z"), (1, "y"), {"y": (0, 3)})
    assert "x" not in out.variables
    assert out.coeff({"z": -1}) == 1
    assert out.coeff({"z": -2, "y": 1}) == -1


def test_automorphism_property_on_polynomials():
    rng = random.Random(14)
    for _ in range(8):
        p = rand_poly(rng, ("x",), max_deg=3)
        q = rand_poly(rng, ("x",), max_deg=3)
        lhs = taylor_substitute(multiply(p, q), "x", (1, "x"), (1, "y"))
        rhs = multiply(
            taylor_substitute(p, "x", (1, "x"), (1, "y")),
            taylor_substitute(q, "x", (1, "x"), (1, "y")))
        assert (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# derivative / residue / coeff

def test_derivative_power_rule():
    s = poly(("x",), {(-1,): 1})
    d = s.derivative("x")
    assert d.coeff({"x": -2}) == -1
    assert d.coeff({"x": -1}) == 0


def test_residue_reads_minus_one_slice():
    s = poly(("x",), {(-1,): 3, (2,): 1})
    r = s.residue("x")
    assert r.coeffs == {(): 3}


def test_residue_of_derivative_vanishes():
    rng = random.Random(5)
    for _ in range(10):
        entries = {(rng.randint(-4, 4),): rng.randint(-5, 5) for _ in range(5)}
        s = poly(("x",), entries)
        assert s.derivative("x").residue("x").coeffs == {}


def test_coeff_outside_window_refused():
    geo = WindowedSeries(
        ("x",), {(n,): 1 for n in range(0, 4)},
        window={"x": (None, 3)}, exact={"x": False}, shape={"x": (True, False)})
    assert geo.coeff({"x": -2}) == 0
    with pytest.raises(WindowUnderflowError):
        geo.coeff({"x": 4})


# ---------------------------------------------------------------------------
# exp of a nilpotent endomorphism

def test_exp_endo_zero_map():
    v = Vec({"e0": 2, "e1": -1})
    out = exp_endo({}, "x", v)
    assert out.coeffs == {(0,): v}


def test_exp_endo_truncated_polynomial_derivation():
    # D = d/dt on Q[t]/(t^3): e^(xD) t^2 = t^2 + 2 t x + x^2
    dop = {"e1": Vec({"e0": 1}), "e2": Vec({"e1": 2})}
    out = exp_endo(dop, "x", Vec.unit("e2"))
    assert out.coeff({"x": 0}) == Vec.unit("e2")
    assert out.coeff({"x": 1}) == Vec({"e1": 2})
    assert out.coeff({"x": 2}) == Vec({"e0": 1})
    assert out.coeff({"x": 3}) == 0


def test_exp_endo_degree_bounded_by_nilpotency():
    dop = {"e1": Vec({"e0": 1}), "e2": Vec({"e1": 1}), "e3": Vec({"e2": 1})}
    out = exp_endo(dop, "x", Vec.unit("e3"))
    assert max(k[0] for k in out.coeffs) <= 3


def test_exp_endo_refuses_non_nilpotent():
    dop = {"e0": Vec.unit("e0")}
    with pytest.raises(SummabilityError):
        exp_endo(dop, "x", Vec.unit("e0"))


# ---------------------------------------------------------------------------
# delta layer

def test_delta_series_all_coefficients_one():
    d = delta_series("x", (-6, 6))
    for n in (-2, 0, 5):
        assert d.coeff({"x": n}) == 1


def test_apply_delta_matches_symbolic_layer():
    f = poly(("x1", "x2"), {(0, 0): 1, (1, 2): -3})
    w = {"x0": (-3, 3), "x1": (-6, 6), "x2": (-3, 6)}
    got = apply_delta((1, "x1"), (-1, "x2"), "x0", f, w)
    sym_terms = [
        Term(c, tuple(
            (v, e) for v, e in zip(("x1", "x2"), key) if e),
            Delta(((1, "x1"), (-1, "x2")), "x0"), ())
        for key, c in f.coeffs.items()
    ]
    sym = DeltaExpr(sym_terms, ("x0", "x1", "x2"))
    want = window_coeffs(sym, w)
    got_dict = {}
    for key, c in got.coeffs.items():
        mono = tuple(sorted((v, e) for v, e in zip(got.variables, key) if e))
        got_dict[mono] = c
    assert got_dict == want


def test_apply_delta_underflow_reports_needed_region():
    # a series only known above -1 in x1 cannot fill a window needing -6
    f = WindowedSeries(
        ("x1", "x2"), {(0, 0): 1},
        window={"x1": (-1, None), "x2": (None, 3)},
        exact={"x1": False, "x2": False},
        shape={"x1": (False, True), "x2": (True, False)})
    with pytest.raises(WindowUnderflowError):
        apply_delta((1, "x1"), (-1, "x2"), "x0", f,
                    {"x0": (-3, 3), "x1": (-6, 6), "x2": (-3, 6)})


def test_series_layer_agrees_with_atom_expansion():
    # (x - y)^-1 built by substitution matches the symbolic atom on a window
    s = poly(("x",), {(-1,): 1})
    series_side = taylor_substitute(s, "x", (1, "x"), (-1, "y"), {"y": (0, 4)})
    from vertexcalc.deltacalc import make_term
    atom_side = DeltaExpr(
        [make_term(1, raw_atoms=[((1, "x"), ((-1, "y"),), -1)])], ("x", "y"))
    w = {"x": (-5, -1), "y": (0, 4)}
    want = window_coeffs(atom_side, w)
    got = {}
    for key, c in series_side.coeffs.items():
        mono = tuple(sorted(
            (v, e) for v, e in zip(series_side.variables, key) if e))
        if all(w[v][0] <= dict(mono).get(v, 0) <= w[v][1] for v in w):
            got[mono] = c
    assert got == want


def test_binomial_power_polynomial():
    p = binomial_power(("x", "y"), (1, "x"), (-1, "y"), 2)
    assert p.coeff({"x": 2}) == 1
    assert p.coeff({"x": 1, "y": 1}) == -2
    assert p.coeff({"y": 2}) == 1

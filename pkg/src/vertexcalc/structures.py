"""Finite vertex structures and exact axiom checkers.

A VertexStructure is a finite basis plus mode tables u_n v (finitely many
nonzero modes per pair, so every Y(u,x)v is a Laurent polynomial) and optional
vacuum data.  The derivation operator is always derived from the table
(D v = v_(-2) 1), never user-supplied.

Checkers return PropertyReport records.  Identities between exact Laurent
polynomials are decided exactly; identities involving delta factors or
infinite expansions are decided coefficient-wise on a recorded window that
contains the full support of every term plus a completeness margin.
"""
from __future__ import annotations

from fractions import Fraction

from .deltacalc import Delta, DeltaExpr, Term, window_coeffs
from .errors import ConsistencyViolationError, ConstructionError
from .rationalforms import S1, S2, TripleInstance, check_A
from .scalars import Vec
from .series import (
    INF,
    WindowedSeries,
    binomial_power,
    exp_endo,
    multiply,
    taylor_substitute,
)

AXIOMS = (
    "jacobi", "weak_comm", "weak_assoc", "weak_skew_assoc",
    "vf_skew_symmetry", "skew_symmetry", "d_derivative", "d_bracket",
    "vacuum_prop", "creation_prop", "strong_creation", "injectivity",
)

VACUUM_AXIOMS = {
    "skew_symmetry", "d_derivative", "d_bracket",
    "vacuum_prop", "creation_prop", "strong_creation",
}

ANCHORS = {
    "jacobi": "x0^-1 d((x1-x2)/x0) Y(u,x1)Y(v,x2) - x0^-1 d((-x2+x1)/x0) Y(v,x2)Y(u,x1) "
              "= x1^-1 d((x2+x0)/x1) Y(Y(u,x0)v,x2)",
    "weak_comm": "(x1-x2)^m [Y(u,x1), Y(v,x2)] = 0",
    "weak_assoc": "(x0+x2)^m (Y(u,x0+x2)Y(v,x2)w - Y(Y(u,x0)v,x2)w) = 0",
    "weak_skew_assoc": "(x1-x0)^m (Y(v,-x0+x1)Y(u,x1)w - Y(Y(u,x0)v,x1-x0)w) = 0",
    "vf_skew_symmetry": "Y(Y(u,x0)v,x2) = Y(Y(v,-x0)u,x2+x0)",
    "skew_symmetry": "Y(u,x)v = e^(xD) Y(v,-x)u",
    "d_derivative": "Y(Du,x) = d/dx Y(u,x)",
    "d_bracket": "[D, Y(u,x)] = d/dx Y(u,x)",
    "vacuum_prop": "Y(1,x) = id",
    "creation_prop": "Y(u,x)1 in V[[x]] and Y(u,0)1 = u",
    "strong_creation": "Y(u,x)1 = e^(xD) u",
    "injectivity": "u -> Y(u,x) is injective",
}


class PropertyReport:
    __slots__ = ("axiom", "verdict", "witnesses", "window", "anchor")

    def __init__(self, axiom, verdict, witnesses=None, window=None):
        self.axiom = axiom
        self.verdict = verdict  # "PASS" | "FAIL" | "UNTESTED"
        self.witnesses = witnesses or {}
        self.window = window
        self.anchor = ANCHORS.get(axiom, axiom)

    @property
    def passed(self):
        return self.verdict == "PASS"

    def to_json(self):
        return {"axiom": self.axiom, "anchor": self.anchor,
                "verdict": self.verdict, "witness": self.witnesses,
                "window": self.window}

    def __repr__(self):
        return f"PropertyReport({self.axiom}: {self.verdict})"


class VertexStructure:
    """Finite basis, finite mode tables, optional vacuum element."""

    def __init__(self, name, basis, ytable, vacuum=None, tags=()):
        self.name = name
        self.basis = tuple(basis)
        self.ytable = {}
        for (u, v), modes in ytable.items():
            clean = {n: vec for n, vec in modes.items() if vec}
            if clean:
                self.ytable[(u, v)] = clean
        self.vacuum = vacuum
        self.tags = tuple(tags)
        self.one = Vec.unit(vacuum) if vacuum else None
        self.dop = self._derive_dop() if vacuum else None

    def _derive_dop(self):
        dop = {}
        for v in self.basis:
            img = Vec()
            for b, c in self.one.entries.items():
                vec = self.ytable.get((v, b), {}).get(-2)
                if vec:
                    img = img + vec.scale(c)
            if img:
                dop[v] = img
        # nilpotency and D(1) = 0 are derivable facts; assert them
        for v in self.basis:
            cur = Vec.unit(v)
            for _ in range(len(self.basis) + 1):
                nxt = Vec()
                for b, c in cur.entries.items():
                    if b in dop:
                        nxt = nxt + dop[b].scale(c)
                cur = nxt
                if not cur:
                    break
            if cur:
                raise ConstructionError("derived derivation operator is not nilpotent")
        done = Vec()
        for b, c in self.one.entries.items():
            if b in dop:
                done = done + dop[b].scale(c)
        if done:
            raise ConstructionError("derived derivation does not annihilate the vacuum")
        return dop

    def d_apply(self, vec: Vec) -> Vec:
        out = Vec()
        for b, c in vec.entries.items():
            img = self.dop.get(b)
            if img:
                out = out + img.scale(c)
        return out

    # -- mode application ---------------------------------------------------
    def _as_vec(self, x):
        return x if isinstance(x, Vec) else Vec.unit(x)

    def y_modes(self, u, v):
        """Y(u,x)v as a dict exponent -> Vec (exponent of x is -n-1)."""
        uvec, vvec = self._as_vec(u), self._as_vec(v)
        out = {}
        for a, ca in uvec.entries.items():
            for b, cb in vvec.entries.items():
                modes = self.ytable.get((a, b))
                if not modes:
                    continue
                c = ca * cb
                for n, vec in modes.items():
                    e = -n - 1
                    prev = out.get(e)
                    add = vec.scale(c)
                    out[e] = add if prev is None else prev + add
        return {e: v for e, v in out.items() if v}

    def y_series(self, u, v, xvar="x"):
        return WindowedSeries.from_monomials(
            (xvar,), {(e,): vec for e, vec in self.y_modes(u, v).items()})

    def compose_y(self, a, xa, b, xb, w):
        """Y(a,xa) Y(b,xb) w as an exact two-variable series."""
        inner = self.y_modes(b, w)
        out = {}
        for eb, vec in inner.items():
            for ea, vec2 in self.y_modes(a, vec).items():
                key = (ea, eb)
                prev = out.get(key)
                out[key] = vec2 if prev is None else prev + vec2
        return WindowedSeries.from_monomials((xa, xb), out)

    def iterate_y(self, u, x0, v, x2, w):
        """Y(Y(u,x0)v, x2) w as an exact two-variable series."""
        inner = self.y_modes(u, v)
        out = {}
        for e0, vec in inner.items():
            for e2, vec2 in self.y_modes(vec, w).items():
                key = (e0, e2)
                prev = out.get(key)
                out[key] = vec2 if prev is None else prev + vec2
        return WindowedSeries.from_monomials((x0, x2), out)

    def max_pole_order(self):
        worst = 0
        for modes in self.ytable.values():
            top = max(modes)
            if top >= 0:
                worst = max(worst, top + 1)
        return worst

    def support_extent(self):
        ext = 1
        for modes in self.ytable.values():
            for n in modes:
                ext = max(ext, abs(-n - 1))
        return ext

    def mutate(self, name, edits, tags=()):
        """Copy with single-entry edits {(u, n, v): new Vec-or-None}."""
        table = {pair: dict(modes) for pair, modes in self.ytable.items()}
        for (u, n, v), vec in edits.items():
            modes = table.setdefault((u, v), {})
            if vec:
                modes[n] = vec
            else:
                modes.pop(n, None)
        return VertexStructure(name, self.basis, table, self.vacuum, tags)


# ---------------------------------------------------------------------------
# construction from commutative differential algebras

def _alg_mul(mult, x: Vec, y: Vec) -> Vec:
    out = Vec()
    for a, ca in x.entries.items():
        for b, cb in y.entries.items():
            prod = mult.get((a, b))
            if prod:
                out = out + prod.scale(ca * cb)
    return out


def borcherds_construct(name, basis, mult, derivation, unit=None, tags=()):
    """Vertex structure Y(u,x)v = (e^(xD) u) v from a commutative algebra.

    ``mult`` maps basis pairs to Vec products, ``derivation`` maps basis names
    to Vec images.  Commutativity, associativity, the Leibniz rule and
    nilpotency are verified on the basis; the unit (if given) becomes the
    vacuum element.  Without a unit the result is vacuum-free.
    """
    basis = tuple(basis)
    for a in basis:
        for b in basis:
            ab = mult.get((a, b), Vec())
            ba = mult.get((b, a), Vec())
            if ab != ba:
                raise ConstructionError(f"product not commutative at ({a},{b})")
    for a in basis:
        for b in basis:
            for c in basis:
                left = _alg_mul(mult, mult.get((a, b), Vec()), Vec.unit(c))
                right = _alg_mul(mult, Vec.unit(a), mult.get((b, c), Vec()))
                if left != right:
                    raise ConstructionError(f"product not associative at ({a},{b},{c})")
    dvecs = {b: derivation.get(b, Vec()) for b in basis}

    def d_of(vec):
        out = Vec()
        for b, c in vec.entries.items():
            out = out + dvecs[b].scale(c)
        return out

    for a in basis:
        for b in basis:
            lhs = d_of(mult.get((a, b), Vec()))
            rhs = (_alg_mul(mult, dvecs[a], Vec.unit(b))
                   + _alg_mul(mult, Vec.unit(a), dvecs[b]))
            if lhs != rhs:
                raise ConstructionError(f"derivation fails the Leibniz rule at ({a},{b})")
    if unit is not None:
        for b in basis:
            if mult.get((unit, b), Vec()) != Vec.unit(b):
                raise ConstructionError(f"unit law fails at {b}")

    # powers D^m u / m!, refusing non-nilpotent derivations
    ytable = {}
    for u in basis:
        powers = []
        cur = Vec.unit(u)
        fact = 1
        m = 0
        while cur:
            if m > len(basis):
                raise ConstructionError("derivation is not nilpotent")
            powers.append(cur.scale(Fraction(1, fact)) if fact > 1 else cur)
            cur = d_of(cur)
            m += 1
            fact *= m
        for v in basis:
            modes = {}
            for m, dmu in enumerate(powers):
                prod = _alg_mul(mult, dmu, Vec.unit(v))
                if prod:
                    modes[-m - 1] = prod
            if modes:
                ytable[(u, v)] = modes
    return VertexStructure(name, basis, ytable, vacuum=unit, tags=tags)


def restrict(S: VertexStructure, sub_basis, name, tags=()):
    """Substructure on a basis subset; refused unless closed under all modes."""
    sub = set(sub_basis)
    table = {}
    for (u, v), modes in S.ytable.items():
        if u in sub and v in sub:
            for n, vec in modes.items():
                if not vec.support() <= sub:
                    raise ConstructionError(
                        f"not closed: ({u})_{n}({v}) leaves the span of {sorted(sub)}")
            table[(u, v)] = dict(modes)
    vac = S.vacuum if S.vacuum in sub else None
    return VertexStructure(name, tuple(sub_basis), table, vacuum=vac, tags=tags)


# ---------------------------------------------------------------------------
# verdict helpers

def _zero_verdict(series, window_box):
    """(is_zero, witness) — exact when possible, otherwise on the window."""
    if series.is_exact():
        if series.is_zero():
            return True, None
        return False, series.first_nonzero()
    if series.is_zero_on(window_box):
        return True, None
    return False, series.first_nonzero(window_box)


def default_window(S: VertexStructure):
    return S.support_extent() + 2 * S.max_pole_order() + 2


def minimal_pole_order(S: VertexStructure, u, v):
    """Negative of the least power of x in Y(u,x)v when negative, else 0."""
    modes = S.ytable.get((u, v), {})
    if not modes:
        return 0
    top = max(modes)
    return top + 1 if top >= 0 else 0


def _search_min_m(diff, clearing, m_max, box):
    for m in range(0, m_max + 1):
        prod = multiply(diff, clearing(m)) if m else diff
        ok, _ = _zero_verdict(prod, box)
        if ok:
            return m
    return None


def witness_is_valid(diff, clearing, m, box):
    prod = multiply(diff, clearing(m)) if m else diff
    ok, _ = _zero_verdict(prod, box)
    return ok


# ---------------------------------------------------------------------------
# the twelve axiom checkers

def _jacobi_symbolic_zero(f12, g12, h02, N):
    """Window-oracle verdict on the three-term delta combination."""
    terms = []
    f12 = f12.align(("x1", "x2"))
    g12 = g12.align(("x1", "x2"))
    h02 = h02.align(("x0", "x2"))
    for key, c in f12.coeffs.items():
        mono = tuple((v, e) for v, e in zip(("x1", "x2"), key) if e)
        terms.append(Term(c, mono, Delta(((1, "x1"), (-1, "x2")), "x0"), ()))
    for key, c in g12.coeffs.items():
        mono = tuple((v, e) for v, e in zip(("x1", "x2"), key) if e)
        terms.append(Term(c.scale(-1), mono, Delta(((-1, "x2"), (1, "x1")), "x0"), ()))
    for key, c in h02.coeffs.items():
        mono = tuple((v, e) for v, e in zip(("x0", "x2"), key) if e)
        terms.append(Term(c.scale(-1), mono, Delta(((1, "x2"), (1, "x0")), "x1"), ()))
    expr = DeltaExpr(terms, ("x0", "x1", "x2"))
    out = window_coeffs(expr, {v: (-N, N) for v in ("x0", "x1", "x2")})
    if not out:
        return True, None
    mono = sorted(out)[0]
    return False, (dict(mono), out[mono])


def check_jacobi(S: VertexStructure, window=None):
    N = window or default_window(S)
    for u in S.basis:
        for v in S.basis:
            for w in S.basis:
                f = S.compose_y(u, "x1", v, "x2", w)
                g = S.compose_y(v, "x2", u, "x1", w)
                h = S.iterate_y(u, "x0", v, "x2", w)
                # route 1: symbolic delta expansion with the window oracle
                ok_sym, wit_sym = _jacobi_symbolic_zero(f, g, h, N)
                # route 2: concrete delta convolution via the (A)-checker
                inst = TripleInstance(
                    f.rename({"x1": S1, "x2": S2}),
                    S.compose_y(v, S1, u, S2, w),
                    S.iterate_y(u, S2, v, S1, w))
                ok_ser, wit_ser = check_A(inst, N)
                if ok_sym != ok_ser:
                    raise ConsistencyViolationError(
                        f"jacobi routes disagree on ({u},{v},{w}): "
                        f"symbolic={ok_sym} series={ok_ser}")
                if not ok_sym:
                    return PropertyReport(
                        "jacobi", "FAIL",
                        {"triple": (u, v, w), "monomial": wit_sym[0]},
                        window=N)
    return PropertyReport("jacobi", "PASS", {}, window=N)


def _weak_diff(S, axiom, u, v, w, N):
    if axiom == "weak_comm":
        d = (S.compose_y(u, "x1", v, "x2", w)
             - S.compose_y(v, "x2", u, "x1", w).align(("x1", "x2")))
        clearing = lambda m: binomial_power(("x1", "x2"), (1, "x1"), (-1, "x2"), m)
        b = {"x1": (-N, N), "x2": (-N, N)}
    elif axiom == "weak_assoc":
        f = S.compose_y(u, "t", v, "x2", w)
        fsub = taylor_substitute(f, "t", (1, "x0"), (1, "x2"), {"x2": (INF, N)})
        d = fsub - S.iterate_y(u, "x0", v, "x2", w)
        clearing = lambda m: binomial_power(("x0", "x2"), (1, "x0"), (1, "x2"), m)
        b = {"x0": (-N, N), "x2": (-N, N)}
    elif axiom == "weak_skew_assoc":
        c1 = S.compose_y(v, "t", u, "x1", w)
        c1 = taylor_substitute(c1, "t", (-1, "x0"), (1, "x1"), {"x1": (INF, N)})
        c2 = S.iterate_y(u, "x0", v, "t", w)
        c2 = taylor_substitute(c2, "t", (1, "x1"), (-1, "x0"), {"x0": (INF, N)})
        d = c1 - c2
        clearing = lambda m: binomial_power(("x0", "x1"), (1, "x1"), (-1, "x0"), m)
        b = {"x0": (-N, N), "x1": (-N, N)}
    else:
        raise ValueError(axiom)
    return d, clearing, b


def check_weak(S: VertexStructure, axiom, m_max=None, window=None):
    """weak_comm / weak_assoc / weak_skew_assoc with minimal witnesses."""
    N = window or default_window(S)
    if m_max is None:
        m_max = S.max_pole_order() + 2
    witnesses = {}
    for u in S.basis:
        for v in S.basis:
            worst = 0
            for w in S.basis:
                d, clearing, b = _weak_diff(S, axiom, u, v, w, N)
                m = _search_min_m(d, clearing, m_max, b)
                if m is None:
                    return PropertyReport(
                        axiom, "FAIL",
                        {"triple": (u, v, w), "m_max": m_max}, window=N)
                worst = max(worst, m)
            witnesses[f"{u},{v}"] = worst
    return PropertyReport(axiom, "PASS", {"min_m": witnesses}, window=N)


def check_vf_skew_symmetry(S: VertexStructure, window=None):
    N = window or default_window(S)
    for u in S.basis:
        for v in S.basis:
            for w in S.basis:
                left = S.iterate_y(u, "x0", v, "x2", w)
                right = S.iterate_y(v, "x0", u, "t", w).flip_sign("x0")
                right = taylor_substitute(right, "t", (1, "x2"), (1, "x0"),
                                          {"x0": (INF, N)})
                ok, wit = _zero_verdict(left - right,
                                        {"x0": (-N, N), "x2": (-N, N)})
                if not ok:
                    return PropertyReport(
                        "vf_skew_symmetry", "FAIL",
                        {"triple": (u, v, w), "monomial": wit[0]}, window=N)
    return PropertyReport("vf_skew_symmetry", "PASS", {}, window=N)


def _exp_d_apply(S: VertexStructure, series: WindowedSeries, xvar):
    """e^(x D) applied to every coefficient of a one-variable series."""
    out = None
    for key, vec in series.coeffs.items():
        expd = exp_endo(S.dop, xvar, vec)
        shift = WindowedSeries.from_monomials((xvar,), {key: 1})
        piece = multiply(expd, shift)
        out = piece if out is None else out + piece
    return out if out is not None else WindowedSeries.zero((xvar,))


def check_skew_symmetry(S: VertexStructure, window=None):
    for u in S.basis:
        for v in S.basis:
            left = S.y_series(u, v, "x")
            right = _exp_d_apply(S, S.y_series(v, u, "x").flip_sign("x"), "x")
            if not (left - right).is_zero():
                return PropertyReport(
                    "skew_symmetry", "FAIL",
                    {"pair": (u, v),
                     "monomial": (left - right).first_nonzero()[0]})
    return PropertyReport("skew_symmetry", "PASS", {})


def check_d_derivative(S: VertexStructure, window=None):
    for u in S.basis:
        du = S.dop.get(u, Vec())
        for v in S.basis:
            lhs = S.y_series(du, v, "x") if du else WindowedSeries.zero(("x",))
            rhs = S.y_series(u, v, "x").derivative("x")
            if not (lhs - rhs).is_zero():
                return PropertyReport(
                    "d_derivative", "FAIL",
                    {"pair": (u, v), "monomial": (lhs - rhs).first_nonzero()[0]})
    return PropertyReport("d_derivative", "PASS", {})


def check_d_bracket(S: VertexStructure, window=None):
    for u in S.basis:
        for v in S.basis:
            yuv = S.y_series(u, v, "x")
            d_of = WindowedSeries.from_monomials(
                ("x",), {k: S.d_apply(c) for k, c in yuv.coeffs.items()})
            y_dv = S.y_series(u, S.dop.get(v, Vec()), "x") \
                if S.dop.get(v) else WindowedSeries.zero(("x",))
            lhs = d_of - y_dv
            rhs = yuv.derivative("x")
            if not (lhs - rhs).is_zero():
                return PropertyReport(
                    "d_bracket", "FAIL",
                    {"pair": (u, v), "monomial": (lhs - rhs).first_nonzero()[0]})
    return PropertyReport("d_bracket", "PASS", {})


def check_vacuum_prop(S: VertexStructure, window=None):
    for v in S.basis:
        got = S.y_modes(S.one, v)
        want = {0: Vec.unit(v)}
        if got != want:
            return PropertyReport("vacuum_prop", "FAIL", {"element": v})
    return PropertyReport("vacuum_prop", "PASS", {})


def check_creation_prop(S: VertexStructure, window=None):
    for u in S.basis:
        modes = S.y_modes(u, S.one)
        if any(e < 0 for e in modes):
            return PropertyReport(
                "creation_prop", "FAIL",
                {"element": u, "reason": "negative powers acting on the vacuum"})
        if modes.get(0, Vec()) != Vec.unit(u):
            return PropertyReport(
                "creation_prop", "FAIL",
                {"element": u, "reason": "constant term differs from u"})
    return PropertyReport("creation_prop", "PASS", {})


def check_strong_creation(S: VertexStructure, window=None):
    for u in S.basis:
        lhs = S.y_series(u, S.one, "x")
        rhs = exp_endo(S.dop, "x", Vec.unit(u))
        if not (lhs - rhs).is_zero():
            return PropertyReport(
                "strong_creation", "FAIL",
                {"element": u, "monomial": (lhs - rhs).first_nonzero()[0]})
    return PropertyReport("strong_creation", "PASS", {})


def check_injectivity(S: VertexStructure, window=None):
    """Exact rank of v -> (mode table row of v) over the rationals."""
    columns = []
    row_index = {}
    for v in S.basis:
        col = {}
        for w in S.basis:
            for n, vec in S.ytable.get((v, w), {}).items():
                for b, c in vec.entries.items():
                    key = (w, n, b)
                    row_index.setdefault(key, len(row_index))
                    col[key] = c
        columns.append(col)
    rows = len(row_index)
    matrix = [[Fraction(0)] * len(S.basis) for _ in range(rows)]
    for j, col in enumerate(columns):
        for key, c in col.items():
            matrix[row_index[key]][j] = Fraction(c)
    rank = 0
    col = 0
    nrows = len(matrix)
    for col in range(len(S.basis)):
        pivot = None
        for r in range(rank, nrows):
            if matrix[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        pv = matrix[rank][col]
        for r in range(nrows):
            if r != rank and matrix[r][col]:
                factor = matrix[r][col] / pv
                matrix[r] = [a - factor * b for a, b in zip(matrix[r], matrix[rank])]
        rank += 1
    if rank < len(S.basis):
        return PropertyReport("injectivity", "FAIL",
                              {"rank": rank, "dim": len(S.basis)})
    return PropertyReport("injectivity", "PASS", {"rank": rank})


def check_axiom(S: VertexStructure, axiom, m_max=None, window=None) -> PropertyReport:
    if axiom in VACUUM_AXIOMS and S.vacuum is None:
        return PropertyReport(axiom, "UNTESTED",
                              {"reason": "structure has no vacuum element"})
    if axiom == "jacobi":
        return check_jacobi(S, window)
    if axiom in ("weak_comm", "weak_assoc", "weak_skew_assoc"):
        return check_weak(S, axiom, m_max, window)
    if axiom == "vf_skew_symmetry":
        return check_vf_skew_symmetry(S, window)
    if axiom == "skew_symmetry":
        return check_skew_symmetry(S, window)
    if axiom == "d_derivative":
        return check_d_derivative(S, window)
    if axiom == "d_bracket":
        return check_d_bracket(S, window)
    if axiom == "vacuum_prop":
        return check_vacuum_prop(S, window)
    if axiom == "creation_prop":
        return check_creation_prop(S, window)
    if axiom == "strong_creation":
        return check_strong_creation(S, window)
    if axiom == "injectivity":
        return check_injectivity(S, window)
    raise ValueError(f"unknown axiom {axiom!r}")


def check_all(S: VertexStructure, m_max=None, window=None):
    return {axiom: check_axiom(S, axiom, m_max, window) for axiom in AXIOMS}


# ---------------------------------------------------------------------------
# the implication matrix

MINORS = ("vacuum_prop", "creation_prop", "injectivity")

ALGEBRA_ROWS = [
    ("two-of-three/ca", ("weak_comm", "weak_assoc"), ("jacobi",)),
    ("two-of-three/cs", ("weak_comm", "weak_skew_assoc"), ("jacobi",)),
    ("two-of-three/as", ("weak_assoc", "weak_skew_assoc"), ("jacobi",)),
    ("main-axiom-gives-weak", ("jacobi",),
     ("weak_comm", "weak_assoc", "weak_skew_assoc")),
    ("main-axiom-gives-vfss", ("jacobi",), ("vf_skew_symmetry",)),
    ("wa+vfss", ("weak_assoc", "vf_skew_symmetry"), ("jacobi",)),
    ("wsa+vfss", ("weak_skew_assoc", "vf_skew_symmetry"), ("jacobi",)),
    ("wc+vfss+inj", ("injectivity", "weak_comm", "vf_skew_symmetry"), ("jacobi",)),
    ("vacuum-from-creation", ("injectivity", "vf_skew_symmetry", "creation_prop"),
     ("vacuum_prop",)),
    ("creation-from-vacuum", ("injectivity", "vf_skew_symmetry", "vacuum_prop"),
     ("creation_prop",)),
    ("vfss-gives-minor-props", ("vacuum_prop", "injectivity", "vf_skew_symmetry"),
     ("strong_creation", "skew_symmetry", "d_derivative", "d_bracket")),
    ("ss+dder-gives-vfss", MINORS + ("skew_symmetry", "d_derivative"),
     ("vf_skew_symmetry",)),
    ("ss+dbracket-gives-vfss", MINORS + ("skew_symmetry", "d_bracket"),
     ("vf_skew_symmetry",)),
    ("sc-from-ss", MINORS + ("skew_symmetry",), ("strong_creation",)),
    ("sc-from-dbracket", MINORS + ("d_bracket",), ("strong_creation",)),
    ("sc-from-dder", MINORS + ("d_derivative",), ("strong_creation",)),
    ("ss-from-wc+dbracket", MINORS + ("weak_comm", "d_bracket"),
     ("skew_symmetry",)),
    ("wc+dbracket-gives-jacobi", MINORS + ("weak_comm", "d_bracket"), ("jacobi",)),
    ("jacobi-gives-wc+dbracket", MINORS + ("jacobi",),
     ("weak_comm", "d_bracket")),
    ("wa-gives-dder", MINORS + ("weak_assoc",), ("d_derivative",)),
    ("wa+sc-gives-dbracket", MINORS + ("weak_assoc", "strong_creation"),
     ("d_bracket",)),
    ("wa+ss-gives-jacobi", MINORS + ("weak_assoc", "skew_symmetry"), ("jacobi",)),
    ("jacobi-gives-wa+ss", MINORS + ("jacobi",), ("weak_assoc", "skew_symmetry")),
    ("wsa-gives-dder", MINORS + ("weak_skew_assoc",), ("d_derivative",)),
    ("wsa+ss-gives-dbracket", MINORS + ("weak_skew_assoc", "skew_symmetry"),
     ("d_bracket",)),
    ("wsa+dbracket-gives-ss", MINORS + ("weak_skew_assoc", "d_bracket"),
     ("skew_symmetry",)),
    ("wsa+ss-gives-jacobi", MINORS + ("weak_skew_assoc", "skew_symmetry"),
     ("jacobi",)),
    ("wsa+dbracket-gives-jacobi", MINORS + ("weak_skew_assoc", "d_bracket"),
     ("jacobi",)),
    ("jacobi-gives-wsa+ss+dbracket", MINORS + ("jacobi",),
     ("weak_skew_assoc", "skew_symmetry", "d_bracket")),
]


def implication_matrix(corpus, m_max=None, window=None):
    """Replay every encoded replacement row on every corpus member.

    Per member and row: if every premise checker passes, the conclusion
    checkers must pass; a premises-pass/conclusion-fails event raises
    ConsistencyViolationError with full diagnostics.  Rows whose premises are
    not all satisfied are reported UNTESTED for that member.
    """
    report = []
    for S in corpus:
        verdicts = check_all(S, m_max, window)
        for row_id, premises, conclusions in ALGEBRA_ROWS:
            prem = {p: verdicts[p].verdict for p in premises}
            if any(v != "PASS" for v in prem.values()):
                report.append({"member": S.name, "row": row_id,
                               "verdict": "UNTESTED", "premises": prem})
                continue
            concl = {c: verdicts[c].verdict for c in conclusions}
            if all(v == "PASS" for v in concl.values()):
                report.append({"member": S.name, "row": row_id,
                               "verdict": "PASS", "premises": prem})
            else:
                raise ConsistencyViolationError(
                    f"row {row_id} on {S.name}: premises pass {prem} "
                    f"but conclusions fail {concl}")
    return report

"""Sparse exact multivariate Laurent series on declared coefficient windows.

A WindowedSeries stores exact coefficients for the monomials it knows about.
Per variable it carries a *knowledge window* (lo, hi) — coefficients with that
variable's exponent inside the window are complete, outside they are unknown —
plus an *exact* flag meaning the whole support lies inside the window (so the
series is complete everywhere in that direction), and truncation *shape* flags
used to certify that products are finite convolutions.

Any operation that cannot guarantee exactness of a requested coefficient
raises instead of truncating silently.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import SummabilityError, WindowUnderflowError
from .scalars import Vec, binom, coeff_add, coeff_is_zero, coeff_mul

INF = None  # open window end


def _known_contains(known, lo, hi):
    klo, khi = known
    if klo is not None and (lo is None or lo < klo):
        return False
    if khi is not None and (hi is None or hi > khi):
        return False
    return True


class WindowedSeries:
    __slots__ = ("variables", "coeffs", "window", "exact", "shape")

    def __init__(self, variables, coeffs, window=None, exact=None, shape=None):
        self.variables = tuple(variables)
        self.coeffs = {k: v for k, v in coeffs.items() if not coeff_is_zero(v)}
        self.window = dict(window) if window else {}
        self.exact = dict(exact) if exact else {}
        self.shape = dict(shape) if shape else {}
        for v in self.variables:
            self.window.setdefault(v, (INF, INF))
            self.exact.setdefault(v, True)
            self.shape.setdefault(v, (True, True))

    # -- construction -----------------------------------------------------
    @classmethod
    def from_monomials(cls, variables, coeffs):
        """Exact finite-support series; monomials keyed by exponent tuples."""
        variables = tuple(variables)
        out = cls(variables, coeffs)
        for i, v in enumerate(variables):
            exps = [k[i] for k in out.coeffs] or [0]
            out.window[v] = (min(exps), max(exps))
            out.exact[v] = True
            out.shape[v] = (True, True)
        return out

    @classmethod
    def zero(cls, variables):
        return cls.from_monomials(variables, {})

    @classmethod
    def constant(cls, variables, coeff):
        return cls.from_monomials(variables, {(0,) * len(tuple(variables)): coeff})

    # -- bookkeeping --------------------------------------------------------
    def idx(self, var):
        return self.variables.index(var)

    def known(self, var):
        """Interval on which coefficients in this variable are complete."""
        return (INF, INF) if self.exact.get(var, False) else self.window[var]

    def support(self, var):
        i = self.idx(var)
        exps = [k[i] for k in self.coeffs]
        return (min(exps), max(exps)) if exps else (0, 0)

    def finite_support(self, var):
        lo, hi = self.shape.get(var, (False, False))
        return lo and hi

    def is_exact(self):
        return all(self.exact[v] for v in self.variables)

    def copy_meta(self, coeffs):
        return WindowedSeries(self.variables, coeffs, self.window, self.exact, self.shape)

    def __repr__(self):
        n = len(self.coeffs)
        return f"WindowedSeries({','.join(self.variables)}; {n} monomials)"

    def to_records(self):
        recs = []
        for key in sorted(self.coeffs):
            mono = {v: e for v, e in zip(self.variables, key) if e}
            c = self.coeffs[key]
            recs.append({"monomial": mono,
                         "coeff": c.to_json() if isinstance(c, Vec) else
                         (str(c) if isinstance(c, int) else f"{c.numerator}/{c.denominator}")})
        meta = {
            "variables": list(self.variables),
            "window": {v: list(self.window[v]) for v in self.variables},
            "exact": {v: self.exact[v] for v in self.variables},
            "shape": {v: list(self.shape[v]) for v in self.variables},
        }
        return {"terms": recs, **meta}

    # -- linear structure ---------------------------------------------------
    def align(self, variables):
        """Re-express over a variable superset (dropped vars must be unused)."""
        variables = tuple(variables)
        positions = []
        for v in self.variables:
            if v not in variables:
                if any(k[self.idx(v)] for k in self.coeffs):
                    raise ValueError(f"cannot drop live variable {v!r}")
                positions.append(None)
            else:
                positions.append(variables.index(v))
        coeffs = {}
        for key, c in self.coeffs.items():
            new = [0] * len(variables)
            for p, e in zip(positions, key):
                if p is not None:
                    new[p] = e
        # keys may collide only if a dropped variable was live, excluded above
            coeffs[tuple(new)] = c
        window, exact, shape = {}, {}, {}
        for v in variables:
            if v in self.variables:
                window[v] = self.window[v]
                exact[v] = self.exact[v]
                shape[v] = self.shape[v]
            else:
                window[v], exact[v], shape[v] = (0, 0), True, (True, True)
        return WindowedSeries(variables, coeffs, window, exact, shape)

    def rename(self, mapping):
        """Bijectively rename variables; series content is untouched."""
        new_vars = tuple(mapping.get(v, v) for v in self.variables)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("rename must stay bijective")
        return WindowedSeries(
            new_vars, self.coeffs,
            {mapping.get(v, v): self.window[v] for v in self.variables},
            {mapping.get(v, v): self.exact[v] for v in self.variables},
            {mapping.get(v, v): self.shape[v] for v in self.variables},
        )

    def flip_sign(self, var):
        """Substitute var -> -var."""
        i = self.idx(var)
        coeffs = {k: (coeff_mul(c, -1) if k[i] % 2 else c) for k, c in self.coeffs.items()}
        out = self.copy_meta(coeffs)
        lo, hi = self.window[var]
        out.window[var] = (-hi if hi is not None else INF, -lo if lo is not None else INF)
        l, u = self.shape[var]
        out.shape[var] = (u, l)
        return out

    def scale(self, c):
        return self.copy_meta({k: coeff_mul(v, c) for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if self.variables != other.variables:
            allv = tuple(sorted(set(self.variables) | set(other.variables)))
            return self.align(allv) + other.align(allv)
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            prev = coeffs.get(k)
            coeffs[k] = c if prev is None else coeff_add(prev, c)
        window, exact, shape = {}, {}, {}
        for v in self.variables:
            exact[v] = self.exact[v] and other.exact[v]
            ka, kb = self.known(v), other.known(v)
            lo = None if ka[0] is None and kb[0] is None else max(
                x for x in (ka[0], kb[0]) if x is not None)
            hi = None if ka[1] is None and kb[1] is None else min(
                x for x in (ka[1], kb[1]) if x is not None)
            window[v] = (lo, hi) if not exact[v] else (
                min(self.window[v][0], other.window[v][0]),
                max(self.window[v][1], other.window[v][1]))
            shape[v] = (self.shape[v][0] and other.shape[v][0],
                        self.shape[v][1] and other.shape[v][1])
        out = WindowedSeries(self.variables, coeffs, window, exact, shape)
        return out._drop_unknown()

    def __sub__(self, other):
        return self + (-other)

    def _drop_unknown(self):
        """Remove stored coefficients outside the knowledge region."""
        keep = {}
        for key, c in self.coeffs.items():
            ok = True
            for v, e in zip(self.variables, key):
                lo, hi = self.known(v)
                if (lo is not None and e < lo) or (hi is not None and e > hi):
                    ok = False
                    break
            if ok:
                keep[key] = c
        return WindowedSeries(self.variables, keep, self.window, self.exact, self.shape)

    # -- coefficient access ---------------------------------------------------
    def coeff(self, mono):
        """Exact coefficient of a monomial given as {var: exp}."""
        key = [0] * len(self.variables)
        for v, e in mono.items():
            key[self.idx(v)] = e
        for v, e in zip(self.variables, key):
            lo, hi = self.known(v)
            if (lo is not None and e < lo) or (hi is not None and e > hi):
                raise WindowUnderflowError(
                    f"coefficient at {mono} not inside the exact window for {v!r}")
        return self.coeffs.get(tuple(key), 0)

    def is_zero_on(self, window):
        """True iff every coefficient inside the window vanishes (all known)."""
        for v, (lo, hi) in window.items():
            if not _known_contains(self.known(v), lo, hi):
                raise WindowUnderflowError(
                    f"window {window} exceeds the known region for {v!r}: "
                    f"known {self.known(v)}")
        for key, c in self.coeffs.items():
            inside = True
            for v, e in zip(self.variables, key):
                if v in window:
                    lo, hi = window[v]
                    if (lo is not None and e < lo) or (hi is not None and e > hi):
                        inside = False
                        break
                elif e != 0:
                    inside = False
                    break
            if inside and not coeff_is_zero(c):
                return False
        return True

    def is_zero(self):
        """Exact zero test; requires the series to be exact in every variable."""
        if not self.is_exact():
            raise WindowUnderflowError("zero test on an inexact series; use is_zero_on")
        return not self.coeffs

    def first_nonzero(self, window=None):
        """Smallest monomial (by sorted key) with a nonzero coefficient."""
        keys = sorted(self.coeffs)
        for k in keys:
            if window is not None:
                ok = all(
                    (window.get(v, (0, 0))[0] is None or window.get(v, (0, 0))[0] <= e)
                    and (window.get(v, (0, 0))[1] is None or e <= window.get(v, (0, 0))[1])
                    for v, e in zip(self.variables, k))
                if not ok:
                    continue
            return {v: e for v, e in zip(self.variables, k) if e}, self.coeffs[k]
        return None

    # -- calculus ---------------------------------------------------------------
    def derivative(self, var):
        i = self.idx(var)
        coeffs = {}
        for key, c in self.coeffs.items():
            e = key[i]
            if e == 0:
                continue
            new = key[:i] + (e - 1,) + key[i + 1:]
            coeffs[new] = coeff_mul(c, e)
        out = self.copy_meta(coeffs)
        lo, hi = self.window[var]
        out.window[var] = (lo - 1 if lo is not None else INF,
                           hi - 1 if hi is not None else INF)
        return out

    def residue(self, var):
        """Series of var^-1 coefficients, var removed from the variable list."""
        if not _known_contains(self.known(var), -1, -1):
            raise WindowUnderflowError(f"residue needs the var^-1 slice of {var!r}")
        i = self.idx(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        coeffs = {}
        for key, c in self.coeffs.items():
            if key[i] == -1:
                coeffs[key[:i] + key[i + 1:]] = c
        return WindowedSeries(
            rest, coeffs,
            {v: self.window[v] for v in rest},
            {v: self.exact[v] for v in rest},
            {v: self.shape[v] for v in rest},
        )


# ---------------------------------------------------------------------------
# multiplication

def multiply(a: WindowedSeries, b: WindowedSeries) -> WindowedSeries:
    """Exact product on the window the factors can certify.

    Summability is certified per variable by the shape table: one factor has
    finite support, or both are lower-truncated, or both are upper-truncated.
    The output window is where every contributing coefficient is known.
    """
    if set(a.variables) != set(b.variables):
        allv = tuple(sorted(set(a.variables) | set(b.variables)))
        return multiply(a.align(allv), b.align(allv))
    b = b.align(a.variables)
    window, exact, shape = {}, {}, {}
    for v in a.variables:
        fa, fb = a.shape[v], b.shape[v]
        if not ((fa[0] and fa[1]) or (fb[0] and fb[1]) or (fa[0] and fb[0]) or (fa[1] and fb[1])):
            raise SummabilityError(
                f"shapes cannot certify finite convolution in {v!r}: {fa} vs {fb}")
        shape[v] = (fa[0] and fb[0], fa[1] and fb[1])
        exact[v] = a.exact[v] and b.exact[v]
        if exact[v]:
            alo, ahi = a.window[v]
            blo, bhi = b.window[v]
            window[v] = (alo + blo, ahi + bhi)
        elif a.exact[v]:
            slo, shi = a.support(v)
            blo, bhi = b.known(v)
            window[v] = (blo + shi if blo is not None else INF,
                         bhi + slo if bhi is not None else INF)
        elif b.exact[v]:
            slo, shi = b.support(v)
            alo, ahi = a.known(v)
            window[v] = (alo + shi if alo is not None else INF,
                         ahi + slo if ahi is not None else INF)
        else:
            raise WindowUnderflowError(
                f"product knows no complete window in {v!r}: both factors inexact")
    coeffs = {}
    for k1, c1 in a.coeffs.items():
        for k2, c2 in b.coeffs.items():
            key = tuple(x + y for x, y in zip(k1, k2))
            c = coeff_mul(c1, c2)
            prev = coeffs.get(key)
            coeffs[key] = c if prev is None else coeff_add(prev, c)
    out = WindowedSeries(a.variables, coeffs, window, exact, shape)
    return out._drop_unknown()


def binomial_power(variables, head_sv, tail_sv, n, var_list=None):
    """(s_h v_h + s_t v_t)^n for n >= 0 as an exact polynomial series."""
    if n < 0:
        raise ValueError("binomial_power is for nonnegative exponents")
    variables = tuple(variables)
    hs, hv = head_sv
    ts, tv = tail_sv
    coeffs = {}
    for k in range(n + 1):
        c = binom(n, k)
        if (n - k) % 2 and hs < 0:
            c = -c
        if k % 2 and ts < 0:
            c = -c
        key = [0] * len(variables)
        key[variables.index(hv)] += n - k
        key[variables.index(tv)] += k
        key = tuple(key)
        coeffs[key] = coeffs.get(key, 0) + c
    return WindowedSeries.from_monomials(variables, coeffs)


# ---------------------------------------------------------------------------
# Taylor substitution

def taylor_substitute(s: WindowedSeries, var, head_sv, tail_sv, out_window=None):
    """Substitute var -> (head + tail), expanded in nonnegative tail powers.

    head/tail are signed variables; the head may be ``var`` itself (the plain
    shift x -> x + y) or a fresh variable; the tail variable must be distinct
    from both head and ``var``.  If the series carries negative powers of
    ``var`` the expansion is infinite in the tail direction and ``out_window``
    must bound the tail variable's exponent; the output window records exactly
    where the result is complete.
    """
    hs, hv = head_sv
    ts, tv = tail_sv
    if tv == var or tv == hv:
        raise ValueError("tail variable must differ from the head and the target")
    klo, khi = s.known(var)
    if khi is not None:
        raise WindowUnderflowError(
            f"substitution target {var!r} must be known-complete above; known ({klo},{khi})")
    negative = any(k[s.idx(var)] < 0 for k in s.coeffs)
    if negative and (out_window is None or tv not in out_window
                     or out_window[tv][1] is None):
        raise WindowUnderflowError(
            f"negative powers of {var!r}: need a finite upper window for {tv!r}")
    hv_pre = hv in s.variables and hv != var and any(k[s.idx(hv)] for k in s.coeffs)
    if hv_pre and not s.exact[hv]:
        raise WindowUnderflowError(
            f"substitution head {hv!r} already live and inexact; not supported")

    new_vars = list(s.variables)
    new_vars.remove(var)
    for v in (hv, tv):
        if v not in new_vars:
            new_vars.append(v)
    new_vars = tuple(new_vars)
    iv = s.idx(var)
    ih = new_vars.index(hv)
    it = new_vars.index(tv)

    coeffs = {}
    for key, c in s.coeffs.items():
        n = key[iv]
        base = [0] * len(new_vars)
        for v, e in zip(s.variables, key):
            if v != var:
                base[new_vars.index(v)] += e
        kmax = n if n >= 0 else out_window[tv][1] - base[it]
        for k in range(0, kmax + 1):
            bc = binom(n, k)
            if bc == 0:
                continue
            if (n - k) % 2 and hs < 0:
                bc = -bc
            if k % 2 and ts < 0:
                bc = -bc
            new = list(base)
            new[ih] += n - k
            new[it] += k
            key2 = tuple(new)
            val = coeff_mul(c, bc)
            prev = coeffs.get(key2)
            coeffs[key2] = val if prev is None else coeff_add(prev, val)

    window, exact, shape = {}, {}, {}
    for v in new_vars:
        if v in s.variables and v not in (hv, tv):
            window[v], exact[v], shape[v] = s.window[v], s.exact[v], s.shape[v]
        else:
            window[v], exact[v], shape[v] = (INF, INF), True, (True, True)
    if not negative and s.exact[var]:
        # finite expansion into exact directions: support-derived exact windows
        ok_spread = all(
            v == var or v not in s.variables or s.exact[v] for v in (hv, tv))
        if ok_spread:
            out = WindowedSeries(new_vars, coeffs, window, exact, shape)
            for v in (hv, tv):
                exps = [k[new_vars.index(v)] for k in out.coeffs] or [0]
                out.window[v] = (min(exps), max(exps))
                out.exact[v] = True
                out.shape[v] = (True, True)
            return out
    # truncated / inexact expansion: the head is complete above klo (shifted by
    # any pre-existing exact head exponents), the tail below the window cap
    head_lo = klo
    if hv_pre and klo is not None:
        head_lo = klo + s.support(hv)[1]
    window[hv] = (head_lo, INF)
    exact[hv] = False
    shape[hv] = (False, False)
    tail_known_hi = out_window[tv][1] if negative else INF
    if tv in s.variables:
        tlo, thi = s.known(tv)
        tail_known_hi = thi if tail_known_hi is None else (
            tail_known_hi if thi is None else min(tail_known_hi, thi))
        window[tv] = (tlo, tail_known_hi)
    else:
        window[tv] = (0, tail_known_hi)
    exact[tv] = False
    shape[tv] = (True, False) if (tv not in s.variables or s.shape[tv][0]) else (False, False)
    out = WindowedSeries(new_vars, coeffs, window, exact, shape)
    return out._drop_unknown()


# ---------------------------------------------------------------------------
# deltas in the concrete layer

def delta_series(var, window, variables=None):
    """The one-variable delta (all coefficients 1) truncated to a window."""
    variables = (var,) if variables is None else tuple(variables)
    i = variables.index(var)
    lo, hi = window
    coeffs = {}
    for n in range(lo, hi + 1):
        key = [0] * len(variables)
        key[i] = n
        coeffs[tuple(key)] = 1
    return WindowedSeries(
        variables, coeffs,
        {v: ((lo, hi) if v == var else (0, 0)) for v in variables},
        {v: v != var for v in variables},
        {v: ((False, False) if v == var else (True, True)) for v in variables},
    )


def apply_delta(num_head, num_tail, denom, s: WindowedSeries, out_window):
    """denom^-1 delta(num/denom) * s, exact on out_window.

    ``num_head``/``num_tail`` are signed variables (tail may be None), and the
    series must not involve the denominator.  The window must be finite for
    the denominator (it pins the delta index) and bounded above for the tail
    variable.  Raises WindowUnderflowError naming the region the series would
    have to know if its windows are too small.
    """
    if denom in s.variables and any(k[s.idx(denom)] for k in s.coeffs):
        raise SummabilityError(f"series involves the delta denominator {denom!r}")
    hs, hv = num_head
    dlo, dhi = out_window[denom]
    if dlo is None or dhi is None:
        raise SummabilityError(f"delta index needs a finite window for {denom!r}")
    n_values = [-e - 1 for e in range(dlo, dhi + 1)]
    nmax = max(n_values)
    # completeness requirement in the numerator-head direction
    klo, khi = s.known(hv) if hv in s.variables else (INF, INF)
    if khi is not None:
        raise WindowUnderflowError(f"series must be known-complete above in {hv!r}")
    if klo is not None:
        hlo = out_window.get(hv, (0, 0))[0]
        if hlo is None or klo > hlo - nmax:
            raise WindowUnderflowError(
                f"series known above {klo} in {hv!r}, but the delta window needs "
                f"{'unbounded' if hlo is None else hlo - nmax}")
    if num_tail is not None:
        ts, tv = num_tail
        whi = out_window.get(tv, (0, 0))[1]
        if whi is None:
            raise SummabilityError(f"numerator tail {tv!r} needs a bounded window")
        tklo, tkhi = s.known(tv) if tv in s.variables else (INF, INF)
        if tkhi is not None and tkhi < whi:
            raise WindowUnderflowError(
                f"series known below {tkhi} in {tv!r}, but the window needs {whi}")
    for v in s.variables:
        if v in (hv, denom) or (num_tail is not None and v == num_tail[1]):
            continue
        wlo, whi2 = out_window.get(v, (0, 0))
        if not _known_contains(s.known(v), wlo, whi2):
            raise WindowUnderflowError(
                f"series knowledge in {v!r} does not cover the requested window")

    variables = list(s.variables)
    for v in ([hv] if num_tail is None else [hv, num_tail[1]]) + [denom]:
        if v not in variables:
            variables.append(v)
    variables = tuple(variables)
    base_idx = [variables.index(v) for v in s.variables]
    ih = variables.index(hv)
    idn = variables.index(denom)
    it = variables.index(num_tail[1]) if num_tail is not None else None

    coeffs = {}
    for key, c in s.coeffs.items():
        base = [0] * len(variables)
        for p, e in zip(base_idx, key):
            base[p] += e
        for n in n_values:
            if num_tail is None:
                kmax = 0
            else:
                kmax = out_window[num_tail[1]][1] - base[it]
                if n >= 0:
                    kmax = min(kmax, n)
            for k in range(0, kmax + 1):
                bc = binom(n, k)
                if bc == 0:
                    continue
                if (n - k) % 2 and hs < 0:
                    bc = -bc
                if num_tail is not None and k % 2 and num_tail[0] < 0:
                    bc = -bc
                new = list(base)
                new[ih] += n - k
                if num_tail is not None:
                    new[it] += k
                new[idn] += -n - 1
                key2 = tuple(new)
                val = coeff_mul(c, bc)
                prev = coeffs.get(key2)
                coeffs[key2] = val if prev is None else coeff_add(prev, val)

    window = {v: out_window.get(v, (0, 0)) for v in variables}
    exact = {v: False for v in variables}
    shape = {v: (False, False) for v in variables}
    out = WindowedSeries(variables, coeffs, window, exact, shape)
    return out._drop_unknown()


# ---------------------------------------------------------------------------
# exponentials of nilpotent endomorphisms

def exp_endo(dop, xvar, vec: Vec, max_steps=64):
    """e^(x*D) v = sum_k x^k D^k v / k! for a nilpotent endomorphism D.

    ``dop`` maps basis names to Vec images.  Refused if D fails to annihilate
    the vector within max_steps applications (the series would be infinite).
    """
    def apply(v: Vec) -> Vec:
        out = Vec()
        for name, c in v.entries.items():
            img = dop.get(name)
            if img:
                out = out + img.scale(c)
        return out

    coeffs = {}
    cur = vec
    k = 0
    fact = 1
    while cur:
        if k > max_steps:
            raise SummabilityError("endomorphism is not nilpotent on this vector")
        if k:
            fact *= k
        c = cur.scale(Fraction(1, fact)) if fact > 1 else cur
        coeffs[(k,)] = c
        cur = apply(cur)
        k += 1
    return WindowedSeries.from_monomials((xvar,), coeffs)

"""Symbolic calculus of expanded powers and formal delta factors.

The central object is a finite sum of terms

    coeff * monomial * [delta factor] * [expanded-power atoms]

where an atom ``(head + t1 + ... + tk)^n`` denotes the expansion of an integer
power in nonnegative powers of the tail sum (all negative exponents fall on the
head variable), and a delta factor ``d^-1 delta(num/d)`` denotes
``sum_n num^n d^(-n-1)`` with the numerator expanded the same way.

Canonical form rules:

* a tail never contains a +v/-v pair (such pairs cancel at construction);
* a head with sign -1 is flipped, multiplying the coefficient by (-1)^exp;
* an atom with empty tail or zero exponent folds into the plain monomial;
* like terms (same monomial, delta, atom multiset) are collected.

Cancellation across the head is never performed: (x + y - x)^n stays inert,
because only the tail sits in nonnegative powers.

Every rewrite here preserves the coefficient of every monomial; the window
oracle (`window_coeffs` / `coeff_of`) recomputes coefficients from scratch by
iterated binomial expansion and is the independent check on the symbolic layer.
"""
from __future__ import annotations

import hashlib
import json

from .errors import (
    ProverFailureError,
    ResidueRefusedError,
    SubstitutionRefusedError,
    SummabilityError,
    UnsupportedRewriteError,
)
from .scalars import (
    binom,
    coeff_add,
    coeff_is_zero,
    coeff_mul,
    coeff_to_json,
    multinomial,
)

DEFAULT_VARS = ("x0", "x1", "x2")


# ---------------------------------------------------------------------------
# signed variables and monomials

def sv_parse(text):
    """"+x1" / "-x2" / "x1" -> signed variable (sign, name)."""
    if text.startswith("-"):
        return (-1, text[1:])
    if text.startswith("+"):
        return (1, text[1:])
    return (1, text)


def sv_format(s):
    sign, var = s
    return ("+" if sign > 0 else "-") + var


def sv_neg(svs):
    return tuple((-s, v) for s, v in svs)


def mono_mul(a, b):
    out = dict(a)
    for var, e in b:
        new = out.get(var, 0) + e
        if new:
            out[var] = new
        else:
            out.pop(var, None)
    return tuple(sorted(out.items()))


def mono_of(mapping):
    return tuple(sorted((v, e) for v, e in mapping.items() if e))


# ---------------------------------------------------------------------------
# structural pieces

class Atom:
    """(head + tail_1 + ... + tail_k)^exp, head sign +1 after canonicalization."""

    __slots__ = ("head", "tail", "exp")

    def __init__(self, head, tail, exp):
        self.head = head
        self.tail = tail
        self.exp = exp

    def key(self):
        return (self.head, self.tail, self.exp)

    def __eq__(self, other):
        return isinstance(other, Atom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def variables(self):
        return {self.head} | {v for _, v in self.tail}

    def __repr__(self):
        inner = "+" + self.head + "".join(sv_format(t) for t in self.tail)
        return f"({inner})^{self.exp}"

    def to_json(self):
        return {
            "head": "+" + self.head,
            "tail": [sv_format(t) for t in self.tail],
            "exp": self.exp,
        }


class Delta:
    """denom^-1 * delta(num/denom); num is an ordered signed sum, first = head."""

    __slots__ = ("num", "denom")

    def __init__(self, num, denom):
        num = tuple(num)
        if not num:
            raise ValueError("delta numerator must be nonempty")
        if any(v == denom for _, v in num):
            raise ValueError("delta denominator may not occur in the numerator")
        self.num = num
        self.denom = denom

    def key(self):
        return (self.num, self.denom)

    def __eq__(self, other):
        return isinstance(other, Delta) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def variables(self):
        return {v for _, v in self.num} | {self.denom}

    def __repr__(self):
        num = "".join(sv_format(t) for t in self.num).lstrip("+")
        return f"{self.denom}^-1*d(({num})/{self.denom})"

    def to_json(self):
        return {"num": [sv_format(t) for t in self.num], "denom": self.denom}


class Term:
    __slots__ = ("coeff", "mono", "delta", "atoms")

    def __init__(self, coeff, mono=(), delta=None, atoms=()):
        self.coeff = coeff
        self.mono = tuple(mono)
        self.delta = delta
        self.atoms = tuple(atoms)

    def shape_key(self):
        dkey = self.delta.key() if self.delta else None
        return (self.mono, dkey, tuple(sorted(a.key() for a in self.atoms)))

    def variables(self):
        out = {v for v, _ in self.mono}
        if self.delta:
            out |= self.delta.variables()
        for a in self.atoms:
            out |= a.variables()
        return out

    def raw_atoms(self):
        return [((1, a.head), a.tail, a.exp) for a in self.atoms]

    def __eq__(self, other):
        return (isinstance(other, Term)
                and self.coeff == other.coeff
                and self.shape_key() == other.shape_key())

    def __hash__(self):
        return hash(self.shape_key())

    def __repr__(self):
        bits = [repr(self.coeff)]
        bits += [f"{v}^{e}" for v, e in self.mono]
        if self.delta:
            bits.append(repr(self.delta))
        bits += [repr(a) for a in self.atoms]
        return " * ".join(bits)


def _canonical_atom(head_sv, tail_svs, exp):
    """Canonicalize one expanded power; returns (sign_factor, mono, atom_or_None)."""
    hsign, hvar = head_sv
    tail = list(tail_svs)
    changed = True
    while changed:
        changed = False
        for i in range(len(tail)):
            want = (-tail[i][0], tail[i][1])
            for j in range(len(tail)):
                if i != j and tail[j] == want:
                    for idx in sorted((i, j), reverse=True):
                        del tail[idx]
                    changed = True
                    break
            if changed:
                break
    factor = 1
    if hsign < 0:
        factor = -1 if exp % 2 else 1
        tail = [(-s, v) for s, v in tail]
    if exp == 0:
        return 1, (), None
    if not tail:
        return factor, ((hvar, exp),), None
    return factor, (), Atom(hvar, tuple(sorted(tail)), exp)


def make_term(coeff, mono=(), delta=None, raw_atoms=()):
    """Build a canonical term from raw (head_sv, tail_svs, exp) atom triples."""
    mono = tuple(mono)
    atoms = []
    for head_sv, tail_svs, exp in raw_atoms:
        factor, extra_mono, atom = _canonical_atom(head_sv, tail_svs, exp)
        if factor != 1:
            coeff = coeff_mul(coeff, factor)
        if extra_mono:
            mono = mono_mul(mono, extra_mono)
        if atom is not None:
            atoms.append(atom)
    atoms.sort(key=lambda a: a.key())
    return Term(coeff, mono, delta, tuple(atoms))


class DeltaExpr:
    """A finite sum of delta-calculus terms over a fixed variable universe."""

    __slots__ = ("terms", "variables")

    def __init__(self, terms=(), variables=DEFAULT_VARS):
        self.terms = tuple(terms)
        self.variables = frozenset(variables)
        for t in self.terms:
            extra = t.variables() - self.variables
            if extra:
                raise ValueError(f"variables {sorted(extra)} outside the declared universe")

    def extend_universe(self, extra_vars):
        return DeltaExpr(self.terms, self.variables | set(extra_vars))

    def __add__(self, other):
        return DeltaExpr(self.terms + other.terms, self.variables | other.variables)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DeltaExpr(
            tuple(Term(coeff_mul(t.coeff, c), t.mono, t.delta, t.atoms) for t in self.terms),
            self.variables,
        )

    def is_zero(self):
        return not normalize(self).terms

    def __repr__(self):
        if not self.terms:
            return "DeltaExpr(0)"
        return "DeltaExpr[" + " + ".join(repr(t) for t in self.terms) + "]"

    def to_records(self):
        out = []
        for t in self.terms:
            rec = {"coeff": coeff_to_json(t.coeff), "monomial": dict(t.mono)}
            if t.delta:
                rec["delta"] = t.delta.to_json()
            rec["atoms"] = [a.to_json() for a in t.atoms]
            out.append(rec)
        return out


def expr_hash(e):
    """Short content hash of the serialized expression, term order included."""
    data = json.dumps(e.to_records(), sort_keys=True)
    return hashlib.sha256(data.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# normalization

def normalize(e: DeltaExpr) -> DeltaExpr:
    """Collect like terms, drop zeros, and re-canonicalize atoms; idempotent."""
    buckets = {}
    for t in e.terms:
        t2 = make_term(t.coeff, t.mono, t.delta, t.raw_atoms())
        key = t2.shape_key()
        if key in buckets:
            buckets[key] = Term(coeff_add(buckets[key].coeff, t2.coeff),
                                t2.mono, t2.delta, t2.atoms)
        else:
            buckets[key] = t2
    kept = [buckets[k] for k in sorted(buckets) if not coeff_is_zero(buckets[k].coeff)]
    return DeltaExpr(kept, e.variables)


# ---------------------------------------------------------------------------
# rewrites

def delta_to_atoms(d: Delta, variables=DEFAULT_VARS) -> DeltaExpr:
    """Rewrite denom^-1 delta(num/denom) as (num - denom)^-1 + (denom - num)^-1."""
    head, rest = d.num[0], d.num[1:]
    first = (head, rest + ((-1, d.denom),), -1)
    second = ((1, d.denom), sv_neg(d.num), -1)
    return DeltaExpr(
        [make_term(1, raw_atoms=[first]), make_term(1, raw_atoms=[second])],
        set(variables) | d.variables(),
    )


def expand_deltas(e: DeltaExpr) -> DeltaExpr:
    """Apply delta_to_atoms to every delta-carrying term; order preserved."""
    out = []
    for t in e.terms:
        if t.delta is None:
            out.append(t)
            continue
        for piece in delta_to_atoms(t.delta, e.variables).terms:
            out.append(make_term(
                coeff_mul(t.coeff, piece.coeff),
                mono_mul(t.mono, piece.mono),
                None,
                t.raw_atoms() + piece.raw_atoms(),
            ))
    return DeltaExpr(out, e.variables)


def taylor_shift(e: DeltaExpr, var, shift) -> DeltaExpr:
    """Substitute var -> var + shift everywhere, expanding by the convention.

    ``shift`` is a signed variable distinct from ``var``.  Plain powers var^n
    become atoms (var + shift)^n; atoms and delta numerators extend their
    tails.  A delta whose denominator is ``var`` cannot be shifted directly.
    """
    ssign, svar = shift
    if svar == var:
        raise UnsupportedRewriteError("shift variable must differ from the shifted variable")
    if svar not in e.variables:
        raise UnsupportedRewriteError(
            f"shift variable {svar!r} not in the universe; extend_universe first")
    out = []
    for t in e.terms:
        mono = dict(t.mono)
        raw_atoms = t.raw_atoms()
        n = mono.pop(var, 0)
        if n:
            raw_atoms.append(((1, var), (), n))  # the loop below adds the shift
        shifted_atoms = []
        for head_sv, tail, exp in raw_atoms:
            new_tail = list(tail)
            if head_sv[1] == var:
                new_tail.append((head_sv[0] * ssign, svar))
            for s, v in tail:
                if v == var:
                    new_tail.append((s * ssign, svar))
            shifted_atoms.append((head_sv, tuple(new_tail), exp))
        delta = t.delta
        if delta is not None:
            if delta.denom == var:
                raise UnsupportedRewriteError(
                    "cannot shift a delta denominator; rewrite via delta_to_atoms first")
            if any(v == var for _, v in delta.num):
                num = list(delta.num)
                for s, v in delta.num:
                    if v == var:
                        num.append((s * ssign, svar))
                delta = Delta(tuple(num), delta.denom)
        out.append(make_term(t.coeff, mono_of(mono), delta, shifted_atoms))
    return DeltaExpr(out, e.variables)


# ---------------------------------------------------------------------------
# the coefficient-window oracle

def _iv_add(a, b):
    lo = None if a[0] is None or b[0] is None else a[0] + b[0]
    hi = None if a[1] is None or b[1] is None else a[1] + b[1]
    return (lo, hi)


def _factor_bounds(factor):
    """Structural per-variable exponent bounds (lo, hi) of one factor."""
    kind, payload = factor
    bounds = {}
    if kind == "mono":
        for v, e in payload:
            bounds[v] = (e, e)
    elif kind == "atom":
        a = payload
        bounds[a.head] = (a.exp, a.exp) if not a.tail else (None, a.exp)
        for _, v in a.tail:
            bounds[v] = _iv_add(bounds.get(v, (0, 0)), (0, None))
    else:  # delta
        d = payload
        bounds[d.denom] = (None, None)
        bounds[d.num[0][1]] = (None, None)
        for _, v in d.num[1:]:
            bounds[v] = _iv_add(bounds.get(v, (0, 0)), (0, None))
    return bounds


def _needed_windows(factors, window):
    """For each factor, the window its own coefficients must cover."""
    all_bounds = [_factor_bounds(f) for f in factors]
    needs = []
    for i in range(len(factors)):
        need = {}
        for v, (wlo, whi) in window.items():
            lo_other, hi_other = 0, 0
            for j, b in enumerate(all_bounds):
                if j == i:
                    continue
                blo, bhi = b.get(v, (0, 0))
                lo_other = None if lo_other is None or blo is None else lo_other + blo
                hi_other = None if hi_other is None or bhi is None else hi_other + bhi
            lo = None if wlo is None or hi_other is None else wlo - hi_other
            hi = None if whi is None or lo_other is None else whi - lo_other
            need[v] = (lo, hi)
        needs.append(need)
    return needs


def _expand_signed_power(head_sv, tail_svs, exp, need):
    """Finite dict of window-relevant coefficients of (head + tail)^exp."""
    hsign, hvar = head_sv
    sign_fix = 1
    if hsign < 0:
        sign_fix = -1 if exp % 2 else 1
        tail_svs = sv_neg(tail_svs)
    caps = []
    for s, v in tail_svs:
        lo, hi = need.get(v, (None, None))
        if hi is None:
            raise SummabilityError(
                f"tail variable {v!r} has no upper exponent bound; expansion is infinite")
        caps.append(max(0, hi))
    out = {}
    hl, hh = need.get(hvar, (None, None))

    def emit(allocs):
        k = sum(allocs)
        head_e = exp - k
        if hl is not None and head_e < hl:
            return
        if hh is not None and head_e > hh:
            return
        coeff = binom(exp, k) * multinomial(allocs) * sign_fix
        if coeff == 0:
            return
        mono = {hvar: head_e} if head_e else {}
        for (s, v), a in zip(tail_svs, allocs):
            if a % 2 and s < 0:
                coeff = -coeff
            if a:
                mono[v] = mono.get(v, 0) + a
        key = mono_of(mono)
        out[key] = out.get(key, 0) + coeff

    def rec(i, allocs):
        if i == len(tail_svs):
            emit(allocs)
            return
        for a in range(0, caps[i] + 1):
            rec(i + 1, allocs + [a])

    rec(0, [])
    return {k: v for k, v in out.items() if v}


def _expand_factor(factor, need):
    kind, payload = factor
    if kind == "mono":
        return {payload: 1}
    if kind == "atom":
        a = payload
        return _expand_signed_power((1, a.head), a.tail, a.exp, need)
    d = payload
    dlo, dhi = need.get(d.denom, (None, None))
    if dlo is None or dhi is None:
        raise SummabilityError(
            f"delta denominator {d.denom!r} has no finite window; the sum over its index diverges")
    out = {}
    for ed in range(dlo, dhi + 1):
        n = -ed - 1
        for mono, c in _expand_signed_power(d.num[0], d.num[1:], n, need).items():
            key = mono_mul(mono, ((d.denom, ed),))
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _in_window(mono, window):
    exps = dict(mono)
    for v, (lo, hi) in window.items():
        e = exps.pop(v, 0)
        if (lo is not None and e < lo) or (hi is not None and e > hi):
            return False
    return all(e == 0 for e in exps.values())


def _term_window_coeffs(t: Term, window):
    """Exact coefficients of one term on the window (complete there)."""
    tm = dict(t.mono)
    shifted = {}
    for v in set(window) | t.variables():
        lo, hi = window.get(v, (0, 0))
        e = tm.get(v, 0)
        shifted[v] = (None if lo is None else lo - e,
                      None if hi is None else hi - e)
    factors = [("atom", a) for a in t.atoms]
    if t.delta is not None:
        factors = [("delta", t.delta)] + factors
    if not factors:
        return {t.mono: t.coeff} if _in_window(t.mono, window) else {}
    needs = _needed_windows(factors, shifted)
    acc = {(): 1}
    for f, need in zip(factors, needs):
        piece = _expand_factor(f, need)
        new = {}
        for m1, c1 in acc.items():
            for m2, c2 in piece.items():
                key = mono_mul(m1, m2)
                new[key] = new.get(key, 0) + c1 * c2
        acc = {k: v for k, v in new.items() if v}
    out = {}
    for m, c in acc.items():
        full = mono_mul(m, t.mono)
        if _in_window(full, window):
            val = coeff_mul(t.coeff, c)
            prev = out.get(full)
            out[full] = val if prev is None else coeff_add(prev, val)
    return out


def window_coeffs(e: DeltaExpr, window):
    """Exact coefficients of every monomial inside the window.

    ``window`` maps variables to (lo, hi); variables absent from it are pinned
    to exponent 0.  Raises SummabilityError if some term's coefficients are not
    certifiably finite sums.
    """
    out = {}
    for t in e.terms:
        for mono, c in _term_window_coeffs(t, dict(window)).items():
            prev = out.get(mono)
            out[mono] = c if prev is None else coeff_add(prev, c)
    return {k: v for k, v in out.items() if not coeff_is_zero(v)}


def coeff_of(e: DeltaExpr, monomial):
    """Exact coefficient of one monomial ({var: exp} mapping or mono tuple)."""
    key = mono_of(dict(monomial))
    window = {v: (ex, ex) for v, ex in key}
    got = window_coeffs(e, window)
    return got.get(key, 0)


def certify_term(t: Term) -> bool:
    """True iff every coefficient of the term is a certifiably finite sum."""
    window = {v: (0, 0) for v in t.variables()}
    factors = [("atom", a) for a in t.atoms]
    if t.delta is not None:
        factors = [("delta", t.delta)] + factors
    if not factors:
        return True
    needs = _needed_windows(factors, window)
    for (kind, payload), need in zip(factors, needs):
        if kind == "atom":
            if any(need.get(v, (None, None))[1] is None for _, v in payload.tail):
                return False
        elif kind == "delta":
            lo, hi = need.get(payload.denom, (None, None))
            if lo is None or hi is None:
                return False
            if any(need.get(v, (None, None))[1] is None for _, v in payload.num[1:]):
                return False
    return True


def multiply(e1: DeltaExpr, e2: DeltaExpr) -> DeltaExpr:
    """Partial product: term-by-term, refused unless each result is summable."""
    out = []
    for t1 in e1.terms:
        for t2 in e2.terms:
            if t1.delta is not None and t2.delta is not None:
                raise SummabilityError("product of two delta factors is never summable")
            merged = make_term(
                coeff_mul(t1.coeff, t2.coeff),
                mono_mul(t1.mono, t2.mono),
                t1.delta or t2.delta,
                t1.raw_atoms() + t2.raw_atoms(),
            )
            if not certify_term(merged):
                raise SummabilityError(f"cannot certify the product term {merged!r}")
            out.append(merged)
    return normalize(DeltaExpr(out, e1.variables | e2.variables))


# ---------------------------------------------------------------------------
# delta substitution and residues

def delta_substitute(e: DeltaExpr) -> DeltaExpr:
    """Replace numerator-shaped factors next to a delta by its denominator.

    For a term carrying d^-1 delta(num/d), every atom expanding the numerator
    in the numerator's own direction is replaced by d^exp (for a negative-head
    numerator the canonical atom is the flipped one, so the replacement
    contributes the matching (-1)^exp).  A single-variable numerator
    substitutes plain powers of that variable.  Certification is conservative:
    every other atom of the term must share no variable with the numerator and
    must not contain the denominator; otherwise the rewrite is refused.
    Window semantics are unchanged.
    """
    out = []
    for t in e.terms:
        if t.delta is None:
            out.append(t)
            continue
        d = t.delta
        head_sign, head_var = d.num[0]
        if head_sign > 0:
            match_head, match_tail, flip = head_var, tuple(sorted(d.num[1:])), False
        else:
            match_head, match_tail, flip = head_var, tuple(sorted(sv_neg(d.num[1:]))), True
        num_vars = {v for _, v in d.num}
        mono = dict(t.mono)
        coeff = t.coeff
        kept = []
        substituted = False
        for a in t.atoms:
            if a.head == match_head and a.tail == match_tail:
                # the atom is the canonical form of num^exp (times (-1)^exp if
                # the numerator head is negative): num^exp next to the delta
                # equals denom^exp
                mono[d.denom] = mono.get(d.denom, 0) + a.exp
                if flip and a.exp % 2:
                    coeff = coeff_mul(coeff, -1)
                substituted = True
                continue
            if a.variables() & num_vars:
                raise SubstitutionRefusedError(
                    f"atom {a!r} shares variables with the delta numerator but is not "
                    "an exact match; substitution not certifiable")
            if d.denom in a.variables():
                raise SubstitutionRefusedError(
                    f"atom {a!r} contains the delta denominator {d.denom!r}")
            kept.append(a)
        if len(d.num) == 1 and head_sign > 0 and mono.get(head_var):
            ex = mono.pop(head_var)
            mono[d.denom] = mono.get(d.denom, 0) + ex
            substituted = True
        if not substituted:
            out.append(t)
            continue
        out.append(make_term(coeff, mono_of(mono), d,
                             [((1, a.head), a.tail, a.exp) for a in kept]))
    return DeltaExpr(out, e.variables)


def residue(e: DeltaExpr, var) -> DeltaExpr:
    """Coefficient of var^-1 as a var-free expression.

    Certified patterns per term: var only in the monomial; var as the delta
    denominator (and nowhere else); var in exactly one expanded-power atom.
    Anything else is refused rather than summed blindly.
    """
    out_terms = []
    for t in e.terms:
        mono = dict(t.mono)
        e_var = mono.pop(var, 0)
        atoms_with = [a for a in t.atoms if var in a.variables()]
        atoms_without = [a for a in t.atoms if var not in a.variables()]
        raw_without = [((1, a.head), a.tail, a.exp) for a in atoms_without]
        delta_has = t.delta is not None and var in t.delta.variables()

        if delta_has:
            if atoms_with or t.delta.denom != var:
                raise ResidueRefusedError(
                    f"variable {var!r} entangled with a delta factor; residue not certifiable")
            # mono var^e times sum_n num^n var^(-n-1): var^-1 needs n = e
            out_terms.append(make_term(
                t.coeff, mono_of(mono), None,
                raw_without + [(t.delta.num[0], t.delta.num[1:], e_var)]))
            continue
        if not atoms_with:
            if e_var == -1:
                out_terms.append(make_term(t.coeff, mono_of(mono), t.delta, raw_without))
            continue
        if len(atoms_with) > 1:
            raise ResidueRefusedError(
                f"variable {var!r} occurs in several atoms; residue not certifiable")
        a = atoms_with[0]
        occurrences = [i for i, (_, v) in enumerate(a.tail) if v == var]
        if a.head == var:
            if occurrences:
                raise ResidueRefusedError(
                    f"variable {var!r} occurs in both head and tail of {a!r}")
            k = a.exp + 1 + e_var  # head exponent exp-k must equal -1-e_var
            if k < 0:
                continue
            coeff_k = binom(a.exp, k)
            if coeff_k == 0:
                continue
            for allocs in _compositions(k, len(a.tail)):
                c = coeff_k * multinomial(allocs)
                m = dict(mono)
                for (s, v), al in zip(a.tail, allocs):
                    if al % 2 and s < 0:
                        c = -c
                    m[v] = m.get(v, 0) + al
                out_terms.append(make_term(
                    coeff_mul(t.coeff, c), mono_of(m), t.delta, raw_without))
            continue
        if len(occurrences) != 1:
            raise ResidueRefusedError(
                f"variable {var!r} occurs several times in the tail of {a!r}")
        s_occ, _ = a.tail[occurrences[0]]
        alloc = -1 - e_var
        if alloc < 0:
            continue
        c = binom(a.exp, alloc)
        if c == 0:
            continue
        if alloc % 2 and s_occ < 0:
            c = -c
        rest = tuple(x for i, x in enumerate(a.tail) if i != occurrences[0])
        out_terms.append(make_term(
            coeff_mul(t.coeff, c), mono_of(mono), t.delta,
            raw_without + [((1, a.head), rest, a.exp - alloc)]))
    return normalize(DeltaExpr(out_terms, e.variables))


def _compositions(k, m):
    """All m-tuples of nonnegative ints summing to k."""
    if m == 0:
        if k == 0:
            yield ()
        return
    if m == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, m - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# the identity prover

TWO_TERM = "two-term"
THREE_TERM = "three-term"


def identity_lhs(which) -> DeltaExpr:
    """The left-hand side of the named delta identity, terms in display order."""
    x0, x1, x2 = DEFAULT_VARS
    if which == TWO_TERM:
        terms = [
            Term(1, (), Delta(((1, x2), (1, x0)), x1), ()),
            Term(-1, (), Delta(((1, x1), (-1, x0)), x2), ()),
        ]
    elif which == THREE_TERM:
        terms = [
            Term(1, (), Delta(((1, x1), (-1, x2)), x0), ()),
            Term(-1, (), Delta(((-1, x2), (1, x1)), x0), ()),
            Term(-1, (), Delta(((1, x2), (1, x0)), x1), ()),
        ]
    else:
        raise ValueError(f"unknown identity {which!r}")
    return DeltaExpr(terms, DEFAULT_VARS)


class ProofTrace:
    """Ordered rewrite trace ending (on success) in the empty expression."""

    def __init__(self, which):
        self.which = which
        self.steps = []
        self.pairs = []
        self.residual = None

    def record(self, rule, before, after):
        self.steps.append({
            "rule": rule,
            "before-hash": expr_hash(before),
            "after-hash": expr_hash(after),
        })

    def to_json(self):
        return {
            "identity": self.which,
            "steps": self.steps,
            "cancel-pairs": [list(p) for p in self.pairs],
            "residual-terms": 0 if self.residual is None else len(self.residual.terms),
        }


def prove_identity(which) -> ProofTrace:
    """Reduce the named identity's LHS to zero; the trace records the pairing.

    Cancellation pairs are reported by 1-based position of the expanded atoms
    in display order.
    """
    trace = ProofTrace(which)
    lhs = identity_lhs(which)
    expanded = expand_deltas(lhs)
    trace.record("delta-to-atoms", lhs, expanded)

    groups = {}
    for pos, t in enumerate(expanded.terms, start=1):
        groups.setdefault(t.shape_key(), []).append((pos, t))
    pairs = []
    for members in groups.values():
        total = 0
        for _, t in members:
            total = coeff_add(total, t.coeff)
        if not coeff_is_zero(total) or len(members) != 2:
            residual = normalize(expanded)
            trace.residual = residual
            raise ProverFailureError(
                f"{which} identity left a nonzero residual", residual=residual)
        pairs.append(tuple(sorted(p for p, _ in members)))
    trace.pairs = sorted(pairs)
    final = normalize(expanded)
    trace.record("cancel-pairs", expanded, final)
    if final.terms:
        trace.residual = final
        raise ProverFailureError(f"{which} identity left a nonzero residual", residual=final)
    return trace

"""Sparse homogeneous polynomials, graded subspaces and Macaulay matrices."""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from . import exactla as la
from .exactla import QQ, Fp, PrimeField


class ParseError(ValueError):
    pass


class NoRoot(Exception):
    pass


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int):
    """Exponent vectors of degree ``degree``, in canonical (descending lex) order."""
    if degree < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int):
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class HomogPoly:
    """A homogeneous polynomial stored as ``{exponent tuple: coefficient}``."""
    __slots__ = ("nvars", "degree", "terms", "field", "prefix")

    def __init__(self, nvars, degree, terms=None, field=QQ, prefix="x"):
        self.nvars = nvars
        self.degree = degree
        self.field = field
        self.prefix = prefix
        t = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars or sum(e) != degree:
                    raise ValueError(f"monomial {e} does not fit ({nvars} vars, degree {degree})")
                c = field(c)
                if c != 0:
                    t[e] = c
        self.terms = t

    @classmethod
    def _raw(cls, nvars, degree, terms, field, prefix):
        p = cls.__new__(cls)
        p.nvars, p.degree, p.terms, p.field, p.prefix = nvars, degree, terms, field, prefix
        return p

    # -- constructors
    @classmethod
    def var(cls, i, nvars, field=QQ, prefix="x"):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, 1, {tuple(e): field.one}, field, prefix)

    @classmethod
    def const(cls, c, nvars, field=QQ, prefix="x"):
        c = field(c)
        return cls._raw(nvars, 0, {(0,) * nvars: c} if c != 0 else {}, field, prefix)

    @classmethod
    def zero(cls, nvars, degree, field=QQ, prefix="x"):
        return cls._raw(nvars, degree, {}, field, prefix)

    @classmethod
    def linear(cls, coeffs, field=QQ, prefix="x"):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field(c)
            if c != 0:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(n, 1, terms, field, prefix)

    @classmethod
    def from_vector(cls, vec, nvars, degree, field=QQ, prefix="x"):
        mons = monomials(nvars, degree)
        terms = {m: field(c) for m, c in zip(mons, vec) if c != 0}
        return cls._raw(nvars, degree, terms, field, prefix)

    # -- views
    def coeff_vector(self):
        z = self.field.zero
        return [self.terms.get(m, z) for m in monomials(self.nvars, self.degree)]

    def coeff(self, e):
        return self.terms.get(tuple(e), self.field.zero)

    def is_zero(self):
        return not self.terms

    def leading_coeff(self):
        for m in monomials(self.nvars, self.degree):
            if m in self.terms:
                return self.terms[m]
        return self.field.zero

    def normalized(self):
        """Scale so that the first nonzero coefficient in canonical order is 1."""
        lc = self.leading_coeff()
        if lc == 0:
            return self
        return self * (self.field.one / lc)

    def to_field(self, field):
        return HomogPoly(self.nvars, self.degree, dict(self.terms), field, self.prefix)

    def with_prefix(self, prefix):
        return HomogPoly._raw(self.nvars, self.degree, self.terms, self.field, prefix)

    # -- arithmetic
    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v == 0:
                t.pop(e, None)
            else:
                t[e] = v
        return HomogPoly._raw(self.nvars, self.degree, t, self.field, self.prefix)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return HomogPoly._raw(self.nvars, self.degree, {e: -c for e, c in self.terms.items()},
                              self.field, self.prefix)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, HomogPoly):
            self._check(other)
            t = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _add_exp(e1, e2)
                    v = t.get(e)
                    t[e] = c1 * c2 if v is None else v + c1 * c2
            t = {e: c for e, c in t.items() if c != 0}
            return HomogPoly._raw(self.nvars, self.degree + other.degree, t, self.field, self.prefix)
        c = self.field(other)
        if c == 0:
            return HomogPoly.zero(self.nvars, self.degree, self.field, self.prefix)
        return HomogPoly._raw(self.nvars, self.degree, {e: v * c for e, v in self.terms.items()},
                              self.field, self.prefix)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        out = HomogPoly.const(1, self.nvars, self.field, self.prefix)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def diff(self, i):
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        t = {e: c for e, c in t.items() if c != 0}
        return HomogPoly._raw(self.nvars, max(self.degree - 1, 0), t, self.field, self.prefix)

    def gradient(self):
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, point):
        total = self.field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total

    def subs(self, forms):
        """Compose with a tuple of forms: ``x_i -> forms[i]``."""
        if len(forms) != self.nvars:
            raise ValueError("substitution length mismatch")
        target = forms[0]
        deg = self.degree * target.degree
        powers = [[None] for _ in forms]

        def pw(i, k):
            lst = powers[i]
            while len(lst) <= k:
                if len(lst) == 1:
                    lst.append(forms[i])
                else:
                    lst.append(lst[-1] * forms[i])
            return lst[k]

        t = {}
        for e, c in self.terms.items():
            prod = None
            for i, k in enumerate(e):
                if k:
                    prod = pw(i, k) if prod is None else prod * pw(i, k)
            if prod is None:
                prod = HomogPoly.const(1, target.nvars, self.field, target.prefix)
            for me, mc in prod.terms.items():
                v = t.get(me)
                t[me] = c * mc if v is None else v + c * mc
        t = {e: c for e, c in t.items() if c != 0}
        return HomogPoly._raw(target.nvars, deg, t, self.field, target.prefix)

    def linear_change(self, m):
        """Substitute ``x -> m x`` for a square matrix ``m``."""
        forms = [HomogPoly.linear(row, self.field, self.prefix) for row in m]
        return self.subs(forms)

    # -- text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"HomogPoly({format_poly(self)!r}, nvars={self.nvars}, degree={self.degree})"


def random_form(nvars, degree, rng, bound=5, field=QQ, density=1.0):
    """Random form with integer coefficients in [-bound, bound]."""
    terms = {}
    for m in monomials(nvars, degree):
        if rng.random() < density:
            terms[m] = rng.randint(-bound, bound)
    return HomogPoly(nvars, degree, terms, field)


def proportional(f: HomogPoly, g: HomogPoly) -> bool:
    """Projective equality of two nonzero forms."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    if f.nvars != g.nvars or f.degree != g.degree or f.terms.keys() != g.terms.keys():
        return False
    return f.normalized() == g.normalized()


# ---------------------------------------------------------------- text grammar

def _format_coeff(c):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(f: HomogPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for m in monomials(f.nvars, f.degree):
        c = f.terms.get(m)
        if c is None:
            continue
        factors = []
        for i, k in enumerate(m):
            if k == 1:
                factors.append(f"{f.prefix}{i}")
            elif k > 1:
                factors.append(f"{f.prefix}{i}^{k}")
        cs = _format_coeff(c)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if not factors:
            body = mag
        elif mag == "1":
            body = "*".join(factors)
        else:
            body = mag + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^([xz])(\d+)(?:\^(\d+))?$")
_COEF = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_poly(text: str, nvars: int | None = None, field=QQ, degree: int | None = None,
               prefix: str | None = None) -> HomogPoly:
    """Parse ``coef*x0^e0*x1^e1 + ...`` into a homogeneous form."""
    s = text.replace(" ", "").replace("\n", "")
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        if nvars is None or degree is None:
            raise ParseError("zero polynomial needs explicit nvars and degree")
        return HomogPoly.zero(nvars, degree, field, prefix or "x")
    raw = []
    pos = 0
    seen_prefix = prefix
    maxvar = -1
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse near {s[pos:]!r}")
        if pos > 0 and m.group(1) is None:
            raise ParseError(f"missing sign near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(sign)
        exps = {}
        for tok in m.group(2).split("*"):
            if not tok:
                raise ParseError(f"empty factor in {m.group(2)!r}")
            cm = _COEF.match(tok)
            if cm:
                den = int(cm.group(2)) if cm.group(2) else 1
                if den == 0:
                    raise ParseError("zero denominator")
                coef *= Fraction(int(cm.group(1)), den)
                continue
            fm = _FACTOR.match(tok)
            if not fm:
                raise ParseError(f"bad factor {tok!r}")
            if seen_prefix is None:
                seen_prefix = fm.group(1)
            elif seen_prefix != fm.group(1):
                raise ParseError("mixed variable names")
            idx = int(fm.group(2))
            k = int(fm.group(3)) if fm.group(3) else 1
            exps[idx] = exps.get(idx, 0) + k
            maxvar = max(maxvar, idx)
        raw.append((coef, exps))
        pos = m.end()
    if nvars is None:
        nvars = maxvar + 1
    if maxvar >= nvars:
        raise ParseError(f"variable index {maxvar} out of range for {nvars} variables")
    terms = {}
    degs = set()
    for coef, exps in raw:
        e = tuple(exps.get(i, 0) for i in range(nvars))
        degs.add(sum(e))
        terms[e] = terms.get(e, Fraction(0)) + coef
    if len(degs) != 1:
        raise ParseError("polynomial is not homogeneous")
    d = degs.pop()
    if degree is not None and d != degree:
        raise ParseError(f"expected degree {degree}, got {d}")
    terms = {e: field(c) for e, c in terms.items()}
    return HomogPoly(nvars, d, terms, field, seen_prefix or "x")


# ---------------------------------------------------------------- graded subspaces

@dataclass
class GradedSubspace:
    """A subspace of the degree-``degree`` forms, stored by an RREF basis."""
    nvars: int
    degree: int
    basis: list
    field: object = QQ
    prefix: str = "z"

    @classmethod
    def span(cls, forms, nvars=None, degree=None, field=None, prefix=None):
        forms = list(forms)
        if forms:
            nvars = forms[0].nvars if nvars is None else nvars
            degree = forms[0].degree if degree is None else degree
            field = forms[0].field if field is None else field
            prefix = forms[0].prefix if prefix is None else prefix
        field = field or QQ
        vecs = [f.coeff_vector() for f in forms if not f.is_zero()]
        return cls(nvars, degree, la.row_space(vecs, field) if vecs else [], field, prefix or "z")

    @classmethod
    def from_vectors(cls, vecs, nvars, degree, field=QQ, prefix="z"):
        vecs = list(vecs)
        return cls(nvars, degree, la.row_space(vecs, field) if vecs else [], field, prefix)

    @property
    def dim(self):
        return len(self.basis)

    @property
    def ambient_dim(self):
        return len(monomials(self.nvars, self.degree))

    def forms(self):
        return [HomogPoly.from_vector(v, self.nvars, self.degree, self.field, self.prefix)
                for v in self.basis]

    def contains(self, f: HomogPoly) -> bool:
        if f.is_zero():
            return True
        if f.degree != self.degree:
            return False
        return la.in_span(f.coeff_vector(), self.basis, self.field)

    def contains_space(self, other) -> bool:
        return all(la.in_span(v, self.basis, self.field) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace):
            return NotImplemented
        return (self.nvars == other.nvars and self.degree == other.degree
                and self.basis == other.basis)

    def annihilator(self):
        """Dual equations: vectors ``w`` with ``w . v = 0`` on the subspace."""
        if not self.basis:
            return la.identity(self.ambient_dim, self.field)
        return la.kernel(self.basis, field=self.field)

    def reduce(self, f: HomogPoly) -> HomogPoly:
        """Normal form modulo the subspace (pivot coordinates cleared)."""
        v = f.coeff_vector()
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x != 0)
            if v[c] != 0:
                a = v[c]
                v = [x - a * y for x, y in zip(v, row)]
        return HomogPoly.from_vector(v, self.nvars, self.degree, self.field, self.prefix)

    def to_field(self, field):
        return GradedSubspace.span([g.to_field(field) for g in self.forms()],
                                   self.nvars, self.degree, field, self.prefix)

    def transformed(self, forms):
        """Image under composition ``Q -> Q(forms)``."""
        return GradedSubspace.span([g.subs(forms) for g in self.forms()], forms[0].nvars,
                                   self.degree * forms[0].degree, self.field, forms[0].prefix)


# ---------------------------------------------------------------- Macaulay matrices

def macaulay_matrix(gens, degree, nvars=None, field=None):
    """Matrix of ``(c_{i,m}) -> sum_{i,m} c_{i,m} m g_i`` into degree ``degree``.

    Rows are the monomials of degree ``degree``; columns run over
    generators and then over multiplier monomials in canonical order.
    """
    gens = list(gens)
    nvars = gens[0].nvars if nvars is None else nvars
    field = gens[0].field if field is None else field
    idx = monomial_index(nvars, degree)
    cols = []
    for g in gens:
        for m in monomials(nvars, degree - g.degree):
            col = [field.zero] * len(idx)
            for e, c in g.terms.items():
                col[idx[_add_exp(e, m)]] = c
            cols.append(col)
    if not cols:
        return [[] for _ in idx]
    return la.transpose(cols)


def module_macaulay(cols, src_twists, tgt_twists, degree, nvars, field=QQ):
    """Degree-``degree`` block of a map between graded free modules.

    ``cols[j][r]`` is the entry (a form of degree src_twists[j]-tgt_twists[r],
    or None for zero).  Row blocks follow the target summands, column blocks
    follow the source summands; inside a block monomials are in canonical order.
    """
    row_off = []
    off = 0
    for t in tgt_twists:
        row_off.append(off)
        off += len(monomials(nvars, degree - t))
    nrows = off
    out_cols = []
    for j, s in enumerate(src_twists):
        for m in monomials(nvars, degree - s):
            col = [field.zero] * nrows
            for r, entry in enumerate(cols[j]):
                if entry is None or entry.is_zero():
                    continue
                idx = monomial_index(nvars, degree - tgt_twists[r])
                for e, c in entry.terms.items():
                    col[row_off[r] + idx[_add_exp(e, m)]] = c
            out_cols.append(col)
    if not out_cols:
        return [[] for _ in range(nrows)]
    return la.transpose(out_cols)


def split_module_vector(vec, twists, degree, nvars, field=QQ, prefix="z"):
    """Inverse of the block layout used by ``module_macaulay``."""
    out = []
    off = 0
    for t in twists:
        k = len(monomials(nvars, degree - t))
        if degree - t < 0:
            out.append(None)
            continue
        out.append(HomogPoly.from_vector(vec[off:off + k], nvars, degree - t, field, prefix))
        off += k
    return out


# ---------------------------------------------------------------- univariate over F_p

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        if c:
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
        _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, p), mod, p)
    return result


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def fp_univariate_roots(coeffs, p, rng):
    """Distinct roots in F_p of ``sum coeffs[i] t^i`` (Cantor-Zassenhaus)."""
    f = _trim([c % p for c in coeffs])
    if not f:
        raise ValueError("zero polynomial has every element as a root")
    if len(f) == 1:
        return []
    xp = _ppowmod([0, 1], p, f, p)
    g = _pgcd(f, _psub(xp, [0, 1], p), p)
    roots = []

    def split(h):
        deg = len(h) - 1
        if deg == 0:
            return
        if deg == 1:
            roots.append((-h[0]) * pow(h[1], -1, p) % p)
            return
        while True:
            a = rng.randrange(p)
            w = _ppowmod([a, 1], (p - 1) // 2, h, p)
            d = _pgcd(h, _psub(w, [1], p), p)
            if 0 < len(d) - 1 < deg:
                break
        split(d)
        q = h
        # exact division h / d
        quo = []
        r = list(q)
        inv = pow(d[-1], -1, p)
        dd = len(d) - 1
        quo = [0] * (len(r) - dd)
        while len(r) - 1 >= dd and r:
            c = r[-1] * inv % p
            shift = len(r) - 1 - dd
            quo[shift] = c
            for i, bc in enumerate(d):
                r[shift + i] = (r[shift + i] - c * bc) % p
            r.pop()
            _trim(r)
        split(_trim(quo))

    split(g)
    return sorted(roots)


def fp_is_squarefree(coeffs, p):
    f = _trim([c % p for c in coeffs])
    if len(f) <= 2:
        return True
    df = _trim([(i * c) % p for i, c in enumerate(f)][1:])
    if not df:
        return False
    return len(_pgcd(f, df, p)) == 1

"""Exact linear algebra over Q and prime fields.

Matrices are plain lists of rows.  Over Q the entries are Fractions and
elimination runs fraction-free on integers; over F_p the entries are
``Fp`` elements and elimination runs on raw residues.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction


class NoSolution(Exception):
    pass


class NotRankOneSymmetric(Exception):
    pass


# ---------------------------------------------------------------- fields

class Rationals:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fp):
            raise TypeError("cannot lift a residue to Q")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def random(self, rng, bound=7):
        v = 0
        while v == 0:
            v = rng.randint(-bound, bound)
        return Fraction(v)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    def __init__(self, p: int, check: bool = True):
        if check and (p % 2 == 0 or not is_probable_prime(p)):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.name = f"GF({p})"
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fp):
            return x
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return Fp(num * pow(den, -1, self.p) % self.p, self)
        return Fp(int(x) % self.p, self)

    @property
    def zero(self):
        return Fp(0, self)

    @property
    def one(self):
        return Fp(1, self)

    def random(self, rng, bound=None):
        return Fp(rng.randrange(1, self.p), self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


DEFAULT_PRIME = 2**61 - 1


class Fp:
    """Element of a prime field."""
    __slots__ = ("v", "field")

    def __init__(self, v, field):
        self.v = v
        self.field = field

    def _c(self, other):
        if isinstance(other, Fp):
            return other.v
        return self.field(other).v

    def __add__(self, o):
        return Fp((self.v + self._c(o)) % self.field.p, self.field)

    __radd__ = __add__

    def __sub__(self, o):
        return Fp((self.v - self._c(o)) % self.field.p, self.field)

    def __rsub__(self, o):
        return Fp((self._c(o) - self.v) % self.field.p, self.field)

    def __mul__(self, o):
        return Fp(self.v * self._c(o) % self.field.p, self.field)

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = self._c(o)
        if c == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return Fp(self.v * pow(c, -1, self.field.p) % self.field.p, self.field)

    def __rtruediv__(self, o):
        return self.field(o) / self

    def __neg__(self):
        return Fp(-self.v % self.field.p, self.field)

    def __pow__(self, e):
        if e < 0:
            return Fp(pow(pow(self.v, -1, self.field.p), -e, self.field.p), self.field)
        return Fp(pow(self.v, e, self.field.p), self.field)

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.v == o.v
        try:
            return self.v == self.field(o).v
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)

    def __str__(self):
        return str(self.v)


def field_of(values, default=QQ):
    for v in values:
        if isinstance(v, Fp):
            return v.field
    return default


def matrix_field(m, default=QQ):
    for row in m:
        for v in row:
            if isinstance(v, Fp):
                return v.field
    return default


# ---------------------------------------------------------------- basics

def zeros(r, c, field=QQ):
    return [[field.zero for _ in range(c)] for _ in range(r)]


def identity(n, field=QQ):
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(m):
    return [list(r) for r in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in bt] for row in a]


def matvec(m, v):
    return [sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in m]


def coerce_matrix(m, field):
    return [[field(x) for x in row] for row in m]


def is_zero_matrix(m):
    return all(x == 0 for row in m for x in row)


# ---------------------------------------------------------------- elimination

def _rref_qq(m):
    """Row-reduce a rational matrix.  Returns (R, pivots) with Fraction entries."""
    rows = []
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    prev = 1
    # Bareiss forward sweep
    for c in range(nc):
        if r == nr:
            break
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        pv = pr[c]
        for i in range(r + 1, nr):
            ri = rows[i]
            a = ri[c]
            if a == 0:
                if pv != prev:
                    rows[i] = [(pv * x) // prev for x in ri]
                continue
            rows[i] = [(pv * x - a * y) // prev for x, y in zip(ri, pr)]
        prev = pv
        pivots.append(c)
        r += 1
    rows = rows[:r]
    # strip content, then clear above pivots
    for i in range(r):
        g = 0
        for x in rows[i]:
            g = math.gcd(g, x)
        if g > 1:
            rows[i] = [x // g for x in rows[i]]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        pk = rows[k]
        pv = pk[c]
        for i in range(k):
            ri = rows[i]
            a = ri[c]
            if a == 0:
                continue
            g = math.gcd(pv, a)
            u, w = pv // g, a // g
            new = [u * x - w * y for x, y in zip(ri, pk)]
            cg = 0
            for x in new:
                cg = math.gcd(cg, x)
                if cg == 1:
                    break
            if cg > 1:
                new = [x // cg for x in new]
            rows[i] = new
    out = []
    for k in range(r):
        pv = rows[k][pivots[k]]
        out.append([Fraction(x, pv) for x in rows[k]])
    return out, pivots


def _rref_fp(m, field):
    p = field.p
    rows = [[x.v if isinstance(x, Fp) else field(x).v for x in row] for row in m]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [x * inv % p for x in rows[r]]
        rows[r] = pr
        for i in range(nr):
            if i == r:
                continue
            a = rows[i][c]
            if a:
                rows[i] = [(x - a * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    return [[Fp(x, field) for x in row] for row in rows[:r]], pivots


def rref(m, field=None):
    """Reduced row echelon form of the row space.

    Returns ``(R, pivots)`` where ``R`` has only the nonzero rows, each with a
    leading 1 in the column listed in ``pivots``.
    """
    if not m:
        return [], []
    if field is None:
        field = matrix_field(m)
    if isinstance(field, PrimeField):
        return _rref_fp(m, field)
    return _rref_qq([[Fraction(x) for x in row] for row in m])


def rank(m, field=None):
    return len(rref(m, field)[1])


def kernel(m, ncols=None, field=None):
    """Basis of the right null space ``{v : m v = 0}`` as a list of vectors."""
    if field is None:
        field = matrix_field(m)
    if not m:
        n = ncols or 0
        return [[field.one if i == j else field.zero for i in range(n)] for j in range(n)]
    nc = len(m[0])
    R, piv = rref(m, field)
    pset = set(piv)
    basis = []
    for f in range(nc):
        if f in pset:
            continue
        v = [field.zero] * nc
        v[f] = field.one
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def left_kernel(m, field=None):
    return kernel(transpose(m), field=field) if m else []


def solve(m, b, field=None):
    """One solution of ``m x = b``; raises NoSolution if inconsistent."""
    if field is None:
        field = matrix_field(m, field_of(b))
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    R, piv = rref(aug, field)
    nc = len(m[0])
    if piv and piv[-1] == nc:
        raise NoSolution("inconsistent linear system")
    x = [field.zero] * nc
    for row, c in zip(R, piv):
        x[c] = row[nc]
    return x


def inverse(m, field=None):
    if field is None:
        field = matrix_field(m)
    n = len(m)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)]
           for i, row in enumerate(m)]
    R, piv = rref(aug, field)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise NoSolution("matrix is singular")
    return [row[n:] for row in R]


def det(m, field=None):
    if field is None:
        field = matrix_field(m)
    n = len(m)
    a = [list(r) for r in m]
    d = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return field.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = field.one / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def row_space(vectors, field=None):
    """RREF basis of the span of ``vectors``."""
    vs = [v for v in vectors]
    if not vs:
        return []
    return rref(vs, field)[0]


def same_span(a, b, field=None):
    ra = row_space(a, field)
    rb = row_space(b, field)
    return ra == rb


def in_span(v, basis, field=None):
    if not basis:
        return all(x == 0 for x in v)
    return rank(list(basis) + [v], field) == rank(basis, field)


def random_vector(n, field, rng, bound=7):
    return [field.random(rng, bound) for _ in range(n)]


def random_combination(vectors, field, rng, bound=7):
    coeffs = random_vector(len(vectors), field, rng, bound)
    out = [field.zero] * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        out = [o + c * x for o, x in zip(out, v)]
    return out


def rank1_sym_factor(s, field=None):
    """Write a rank-one symmetric matrix as ``c * w w^T``.

    ``w`` is normalized so that its first nonzero entry is 1.
    """
    if field is None:
        field = matrix_field(s)
    s = coerce_matrix(s, field)
    n = len(s)
    for i in range(n):
        for j in range(n):
            if s[i][j] != s[j][i]:
                raise NotRankOneSymmetric("matrix is not symmetric")
    k = next((i for i in range(n) if s[i][i] != 0), None)
    if k is None or rank(s, field) != 1:
        raise NotRankOneSymmetric("matrix is not of rank one")
    c0 = s[k][k]
    col = [s[i][k] for i in range(n)]
    first = next(x for x in col if x != 0)
    w = [x / first for x in col]
    c = c0 / (w[k] * w[k])
    for i in range(n):
        for j in range(n):
            if s[i][j] != c * w[i] * w[j]:
                raise NotRankOneSymmetric("matrix is not of the form c w w^T")
    return c, w


def rng_from(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


class EchelonBasis:
    """Growing basis kept in echelon form; ``add`` reports independence."""

    def __init__(self, field=QQ):
        self.field = field
        self.rows = {}

    def reduce(self, v):
        v = list(v)
        for c, row in self.rows.items():
            a = v[c]
            if a != 0:
                v = [x - a * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        w = self.reduce(v)
        c = next((i for i, x in enumerate(w) if x != 0), None)
        if c is None:
            return False
        inv = self.field.one / w[c]
        w = [x * inv for x in w]
        for k, row in self.rows.items():
            a = row[c]
            if a != 0:
                self.rows[k] = [x - a * y for x, y in zip(row, w)]
        self.rows[c] = w
        return True

    def __len__(self):
        return len(self.rows)


# ---------------------------------------------------------------- modular helpers

def primes_below(start: int = DEFAULT_PRIME + 1):
    """Odd primes in decreasing order, starting below ``start``."""
    p = start - 1
    while p > 2:
        if is_probable_prime(p):
            yield p
        p -= 1


def crt_pair(a1: int, m1: int, a2: int, m2: int):
    """x mod m1*m2 with x = a1 mod m1 and x = a2 mod m2 (coprime moduli)."""
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return (a1 + m1 * t) % (m1 * m2), m1 * m2


def rational_reconstruct(a: int, m: int):
    """The fraction r/s with r = s*a mod m and |r|, |s| <= sqrt(m/2), or None."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)

"""Univariate polynomials over exact coefficient fields, with factorization
over finite fields, root finding, and exact dense linear algebra.

A Poly is generic over its coefficient field: finite fields (FFElement
coefficients) and rational function fields (RatFunc coefficients) share the
implementation through operator overloading.  Coefficients are stored
constant-term first with no trailing zeros; the zero polynomial has an empty
coefficient tuple and degree -1.

Factorization is squarefree decomposition (with p-th-root descent for
derivative-zero inputs), distinct-degree splitting, then randomized
equal-degree splitting seeded through an explicit rng, using the trace-map
variant in characteristic 2.
"""

import random
from itertools import product

from .errors import QlinError
from .fields import embedding

_DEFAULT_SEED = 0


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero, field.one))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(c) for c in ints])

    @classmethod
    def from_terms(cls, field, terms):
        """From {exponent: coefficient} pairs."""
        if not terms:
            return cls.zero(field)
        coeffs = [field.zero] * (max(terms) + 1)
        for e, c in terms.items():
            coeffs[e] = coeffs[e] + c
        return cls(field, coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    @property
    def lc(self):
        if not self.coeffs:
            raise QlinError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        inv = self.field.one / self.lc
        return Poly(self.field, [c * inv for c in self.coeffs])

    def _check(self, other):
        if not isinstance(other, Poly):
            raise QlinError(f"expected a polynomial, got {type(other).__name__}")
        if other.field is not self.field:
            raise QlinError("polynomials over different coefficient fields")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other):
        self._check(other)
        out = list(self.coeffs) + [self.field.zero] * (len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return Poly(self.field, out)

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            self._check(other)
            if self.is_zero or other.is_zero:
                return Poly.zero(self.field)
            out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] = out[i + j] + a * b
            return Poly(self.field, out)
        # scalar
        return Poly(self.field, [c * other for c in self.coeffs])

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise QlinError("polynomial powers take nonnegative integer exponents")
        r = Poly.one(self.field)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def divmod(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(self.field), self
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = self.field.one / other.lc
        q = [self.field.zero] * (len(rem) - db)
        for i in range(len(rem) - 1 - db, -1, -1):
            c = rem[i + db]
            if c:
                c = c * inv_lc
                q[i] = c
                for j, b in enumerate(other.coeffs):
                    if b:
                        rem[i + j] = rem[i + j] - c * b
        return Poly(self.field, q), Poly(self.field, rem[:db])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self):
        p = self.field.characteristic
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(c * self.field.from_int(i % p))
        return Poly(self.field, out)

    def evaluate(self, point):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def map_coefficients(self, fn, new_field):
        return Poly(new_field, [fn(c) for c in self.coeffs])

    def shift_x(self, n):
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return Poly(self.field, (self.field.zero,) * n + self.coeffs)

    def trailing_zero_count(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return 0

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def sort_key(self):
        return (self.degree, [getattr(c, "sort_key", lambda: c)() for c in reversed(self.coeffs)])

    def __repr__(self):
        from .cli import render_poly

        return f"Poly({render_poly(self)})"


def poly_gcd(a, b):
    """Monic gcd by Euclid; rejects the (0, 0) pair."""
    if a.is_zero and b.is_zero:
        raise QlinError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_pow_mod(g, e, f):
    """g^e mod f by binary powering."""
    r = Poly.one(g.field)
    g = g % f
    while e:
        if e & 1:
            r = (r * g) % f
        e >>= 1
        if e:
            g = (g * g) % f
    return r


def poly_qth_power_mod(g, f, q):
    """g^q mod f via the characteristic-p identity (sum c_j x^j)^q = sum c_j^q x^{jq}.

    Coefficient q-th powers delegate to the element's own qth_power (Frobenius
    for finite fields, t -> t^q substitution for rational functions).
    """
    p = g.field.characteristic
    r = q
    while r > 1:
        if r % p:
            raise QlinError(f"{q} is not a power of the characteristic {p}")
        r //= p
    if not f.is_monic or f.degree < 1:
        raise QlinError("modulus must be monic and nonconstant")
    if g.is_zero:
        return g
    terms = {}
    for j, c in enumerate(g.coeffs):
        if c:
            terms[j * q] = c.qth_power(q)
    return Poly.from_terms(g.field, terms) % f


def _pth_root(f):
    """For f with zero derivative (f = g(x^p)), return g."""
    field = f.field
    p = field.characteristic
    k = getattr(field, "k", 1)
    out = []
    for i in range(0, len(f.coeffs), p):
        c = f.coeffs[i]
        out.append(c if k == 1 else c.qth_power(p ** (k - 1)))
    return Poly(field, out)


def squarefree_decomposition(f):
    """Multiset of (monic squarefree factor, multiplicity) with product = monic(f)."""
    if f.degree < 1:
        raise QlinError("constant polynomial has no squarefree decomposition")
    p = f.field.characteristic
    f = f.monic()
    out = []
    n = 1
    while f.degree > 0:
        d = f.derivative()
        if d.is_zero:
            f = _pth_root(f)
            n *= p
            continue
        g = poly_gcd(f, d)
        h = (f // g).monic()
        i = 1
        while h.degree > 0:
            gg = poly_gcd(g, h)
            piece = (h // gg).monic()
            if piece.degree > 0:
                out.append((piece, i * n))
            h = gg
            g = (g // gg).monic()
            i += 1
        if g.degree > 0:
            f = _pth_root(g)
            n *= p
        else:
            break
    return out


def _frobenius_powers(f, upto):
    """x^{Q^d} mod f for d = 0..upto, Q the coefficient field order."""
    Q = f.field.order
    h = Poly.x(f.field) % f
    powers = [h]
    for _ in range(upto):
        h = poly_pow_mod(h, Q, f)
        powers.append(h)
    return powers


def is_irreducible(f):
    """Rabin test over the coefficient field."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    f = f.monic()
    n = f.degree
    powers = _frobenius_powers(f, n)
    x = Poly.x(f.field)
    if powers[n] != x % f:
        return False
    divisors = set()
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            divisors.add(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        divisors.add(m)
    for ell in divisors:
        if poly_gcd(powers[n // ell] - x, f).degree > 0:
            return False
    return True


def _ddf(f):
    """Distinct-degree split of a monic squarefree f: list of (product, d)."""
    Q = f.field.order
    x = Poly.x(f.field)
    out = []
    v = f
    h = x % v
    d = 0
    while v.degree > 0:
        d += 1
        if 2 * d > v.degree:
            out.append((v, v.degree))
            break
        h = poly_pow_mod(h, Q, v)
        g = poly_gcd(h - x, v)
        if g.degree > 0:
            out.append((g, d))
            v = (v // g).monic()
            h = h % v
    return out


def _edf(f, d, rng):
    """Equal-degree split of a monic squarefree product of degree-d irreducibles."""
    field = f.field
    Q = field.order
    p = field.characteristic
    k = getattr(field, "k", 1)
    if f.degree == d:
        return [f]
    work, done = [f], []
    while work:
        u = work.pop()
        if u.degree == d:
            done.append(u)
            continue
        r = Poly(field, [field.random_element(rng) for _ in range(u.degree)])
        if p == 2:
            # trace map over GF(2): r + r^2 + r^4 + ... splits the factors
            s = r % u
            trace = s
            for _ in range(k * d - 1):
                s = (s * s) % u
                trace = trace + s
            g = poly_gcd(trace, u) if not trace.is_zero else Poly.one(field)
        else:
            h = poly_pow_mod(r, (Q**d - 1) // 2, u)
            g = poly_gcd(h - Poly.one(field), u)
        if 0 < g.degree < u.degree:
            work.append(g.monic())
            work.append((u // g).monic())
        else:
            work.append(u)
    return done


def poly_factor(f, rng=None):
    """Complete factorization over a finite field.

    Returns a list of (monic irreducible, multiplicity), sorted canonically;
    the product times f's leading coefficient reproduces f.  The randomized
    equal-degree stage draws from ``rng`` (a seeded generator by default).
    """
    if f.degree < 1:
        raise QlinError("cannot factor a constant polynomial")
    if rng is None:
        rng = random.Random(_DEFAULT_SEED)
    out = []
    for sqf, mult in squarefree_decomposition(f):
        for prod_, d in _ddf(sqf):
            for irr in _edf(prod_, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def factor_degrees(f):
    """Multiset of irreducible factor degrees (no equal-degree splitting needed)."""
    out = []
    for sqf, mult in squarefree_decomposition(f):
        for prod_, d in _ddf(sqf):
            out.extend([d] * ((prod_.degree // d) * mult))
    return sorted(out, reverse=True)


def poly_roots(f, F, rng=None):
    """All roots of f in the field F, sorted by coordinate vector.

    f's coefficients may live in a subfield of F; they are embedded first.
    Repeated roots are reported once.
    """
    if f.is_zero:
        raise QlinError("the zero polynomial has every element as a root")
    if rng is None:
        rng = random.Random(_DEFAULT_SEED)
    if f.field is not F:
        emb = embedding(f.field, F)
        f = f.map_coefficients(emb, F)
    if f.degree == 0:
        return []
    f = f.monic()
    x = Poly.x(F)
    linear_part = poly_gcd(poly_pow_mod(x, F.order, f) - x, f)
    if linear_part.degree == 0:
        return []
    roots = [-g.coeff(0) for g in _edf(linear_part, 1, rng)]
    roots.sort(key=lambda e: e.sort_key())
    return roots


class Matrix:
    """Dense rectangular matrix over one exact field."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = [tuple(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise QlinError("ragged matrix rows")
        self.field = field
        self.rows = tuple(rows)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows)) if self.rows else [])

    def rref(self):
        """(reduced row echelon Matrix, pivot column tuple)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            sel = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if sel is None:
                continue
            rows[r], rows[sel] = rows[sel], rows[r]
            inv = self.field.one / rows[r][c]
            rows[r] = [v * inv for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    coef = rows[i][c]
                    rows[i] = [v - coef * w for v, w in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(self.field, rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def left_kernel(self):
        """Basis rows of {v : v * M = 0}, in reduced echelon form."""
        n = self.nrows
        zero, one = self.field.zero, self.field.one
        aug = Matrix(
            self.field,
            [list(self.rows[i]) + [one if j == i else zero for j in range(n)] for i in range(n)],
        )
        red, _ = aug.rref()
        m = self.ncols
        kernel_rows = [r[m:] for r in red.rows if not any(r[:m])]
        if not kernel_rows:
            return Matrix(self.field, [])
        return Matrix(self.field, kernel_rows).rref()[0]

    def det(self):
        if self.nrows != self.ncols:
            raise QlinError("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for c in range(n):
            sel = next((i for i in range(c, n) if rows[i][c]), None)
            if sel is None:
                return self.field.zero
            if sel != c:
                rows[c], rows[sel] = rows[sel], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = self.field.one / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    coef = rows[i][c] * inv
                    rows[i] = [v - coef * w for v, w in zip(rows[i], rows[c])]
        return det

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def mat_kernel(M):
    """Rows spanning {v : v * M = 0}, reduced echelon, deterministic pivots."""
    return [list(r) for r in M.left_kernel().rows]

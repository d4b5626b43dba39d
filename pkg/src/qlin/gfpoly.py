"""Raw univariate polynomial kernels over small finite fields.

Three interchangeable kernels share one duck-typed interface; higher layers
(field construction, rational functions, fraction-free elimination) pick one
per base field and never look inside the representation:

* ``Gf2X``   — polynomials over GF(2) packed into Python ints, bit i holding
  the coefficient of degree i (0 is the zero polynomial).  Multiplication is
  carry-less; squaring is a bit spread.
* ``GfpX``   — polynomials over GF(p), p an odd prime, as tuples of ints in
  [0, p).  Long convolutions and evaluations go through numpy int64 arrays
  (exact: p^2 * len < 2^63 for the primes used here).
* ``GfqX``   — polynomials over an extension field, as tuples of the field's
  raw element values; all coefficient arithmetic is delegated to the field
  object (anything exposing the raw_* methods of fields.FiniteField).

Conventions: coefficient order is constant-term first, no trailing zeros,
"degree" of the zero polynomial is -1, gcds are monic.
"""

import numpy as np

_NUMPY_CUTOVER = 48  # schoolbook below this length


def pow_mod(K, a, e, m):
    """a^e mod m in kernel K by binary powering."""
    r = K.mod(K.one, m)
    a = K.mod(a, m)
    while e:
        if e & 1:
            r = K.mod(K.mul(r, a), m)
        e >>= 1
        if e:
            a = K.mod(K.square(a), m)
    return r


class Gf2X:
    """GF(2)[t] on packed ints."""

    zero = 0
    one = 1
    x = 2

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def degree(a):
        return a.bit_length() - 1

    @staticmethod
    def add(a, b):
        return a ^ b

    sub = add

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        if a.bit_count() > b.bit_count():
            a, b = b, a
        acc = 0
        while a:
            low = a & -a
            acc ^= b << (low.bit_length() - 1)
            a ^= low
        return acc

    @staticmethod
    def mul_scalar(a, c):
        return a if c & 1 else 0

    @staticmethod
    def square(a):
        if a == 0:
            return 0
        # reading the binary digits in base 4 interleaves a zero after each bit
        return int(format(a, "b"), 4)

    @classmethod
    def subst_q(cls, a, q):
        """Substitute t -> t^q for q a power of 2 (coefficients are fixed)."""
        while q > 1:
            a = cls.square(a)
            q >>= 1
        return a

    @staticmethod
    def divmod(a, b):
        if b == 0:
            raise ZeroDivisionError("polynomial division by zero")
        db = b.bit_length() - 1
        q = 0
        while True:
            shift = a.bit_length() - 1 - db
            if shift < 0 or a == 0:
                return q, a
            q ^= 1 << shift
            a ^= b << shift

    @classmethod
    def mod(cls, a, b):
        return cls.divmod(a, b)[1]

    @classmethod
    def exact_div(cls, a, b):
        q, r = cls.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    @staticmethod
    def gcd(a, b):
        while b:
            a, b = b, Gf2X.mod(a, b)
        return a

    @staticmethod
    def xgcd(a, b):
        u0, u1 = 1, 0
        while b:
            q, r = Gf2X.divmod(a, b)
            a, b = b, r
            u0, u1 = u1, u0 ^ Gf2X.mul(q, u1)
        return a, u0

    @staticmethod
    def monic(a):
        return a

    @staticmethod
    def lc(a):
        return 0 if a == 0 else 1

    @staticmethod
    def shift(a, n):
        return a << n

    @staticmethod
    def const(c):
        return c & 1

    @staticmethod
    def from_coeffs(coeffs):
        a = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                a |= 1 << i
        return a

    @staticmethod
    def coeffs(a):
        if a == 0:
            return ()
        return tuple((a >> i) & 1 for i in range(a.bit_length()))

    @staticmethod
    def eval(a, x, scalar):
        """Horner evaluation; ``scalar(c)`` lifts a GF(2) coefficient to x's ring."""
        acc = scalar(0)
        for i in range(a.bit_length() - 1, -1, -1):
            acc = acc * x + scalar((a >> i) & 1)
        return acc

    @staticmethod
    def rand(deg, rng):
        return rng.getrandbits(deg + 1) | (1 << deg) if deg >= 0 else 0


class GfpX:
    """GF(p)[t] on tuples of ints, p an odd prime."""

    def __init__(self, p):
        self.p = p
        self.zero = ()
        self.one = (1,)
        self.x = (0, 1)

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def degree(a):
        return len(a) - 1

    @staticmethod
    def _trim(c):
        n = len(c)
        while n and not c[n - 1]:
            n -= 1
        return tuple(c[:n])

    def add(self, a, b):
        p = self.p
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] = (c[i] + v) % p
        return self._trim(c)

    def sub(self, a, b):
        p = self.p
        c = list(a) + [0] * (len(b) - len(a))
        for i, v in enumerate(b):
            c[i] = (c[i] - v) % p
        return self._trim(c)

    def neg(self, a):
        p = self.p
        return tuple((p - v) % p for v in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        p = self.p
        if min(len(a), len(b)) >= _NUMPY_CUTOVER:
            c = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)) % p
            return self._trim(c.tolist())
        c = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    c[i + j] += u * v
        return self._trim([v % p for v in c])

    def mul_scalar(self, a, c):
        c %= self.p
        if c == 0:
            return ()
        if c == 1:
            return a
        p = self.p
        return tuple(v * c % p for v in a)

    def square(self, a):
        return self.mul(a, a)

    def subst_q(self, a, q):
        """Substitute t -> t^q, q a power of p (GF(p) coefficients are fixed)."""
        if not a:
            return ()
        c = [0] * ((len(a) - 1) * q + 1)
        c[::q] = a
        return tuple(c)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        db = len(b) - 1
        inv_lc = pow(b[-1], p - 2, p)
        r = list(a)
        q = [0] * max(len(a) - db, 0)
        for i in range(len(a) - 1 - db, -1, -1):
            c = r[i + db] % p
            if c:
                c = c * inv_lc % p
                q[i] = c
                for j, v in enumerate(b):
                    r[i + j] = (r[i + j] - c * v) % p
        return self._trim(q), self._trim(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a, b):
        u0, u1 = self.one, self.zero
        while b:
            q, r = self.divmod(a, b)
            a, b = b, r
            u0, u1 = u1, self.sub(u0, self.mul(q, u1))
        return a, u0

    def monic(self, a):
        if not a or a[-1] == 1:
            return a
        return self.mul_scalar(a, pow(a[-1], self.p - 2, self.p))

    @staticmethod
    def lc(a):
        return a[-1] if a else 0

    @staticmethod
    def shift(a, n):
        if not a:
            return ()
        return (0,) * n + tuple(a)

    def const(self, c):
        c %= self.p
        return (c,) if c else ()

    def from_coeffs(self, coeffs):
        return self._trim([c % self.p for c in coeffs])

    @staticmethod
    def coeffs(a):
        return tuple(a)

    @staticmethod
    def eval(a, x, scalar):
        acc = scalar(0)
        for c in reversed(a):
            acc = acc * x + scalar(c)
        return acc

    def eval_cyclic(self, a, pattern):
        """Evaluate at a point whose powers cycle through ``pattern``.

        ``pattern`` is a list of coordinate tuples: pattern[i] = coords of
        point^i, repeating with the pattern's period from index 1 onward
        (pattern[0] is the coords of 1).  Returns summed coordinates mod p.
        Exact via int64: requires p^2 * len(a) < 2^63.
        """
        if not a:
            return (0,) * len(pattern[0])
        width = len(pattern[0])
        period = len(pattern) - 1
        arr = np.array(a, dtype=np.int64)
        n = len(a)
        out = []
        for j in range(width):
            col = [pattern[0][j]] + [pattern[1 + (i % period)][j] for i in range(n - 1)]
            out.append(int(arr.dot(np.array(col, dtype=np.int64))) % self.p)
        return tuple(out)

    def rand(self, deg, rng):
        if deg < 0:
            return ()
        c = [rng.randrange(self.p) for _ in range(deg)] + [rng.randrange(1, self.p)]
        return tuple(c)


class GfqX:
    """F[t] for an extension field F, on tuples of raw element values."""

    def __init__(self, field):
        self.field = field
        self.zero = ()
        self.one = (field.one_raw,)
        self.x = (field.zero_raw, field.one_raw)

    @staticmethod
    def is_zero(a):
        return not a

    @staticmethod
    def degree(a):
        return len(a) - 1

    def _trim(self, c):
        z = self.field.zero_raw
        n = len(c)
        while n and c[n - 1] == z:
            n -= 1
        return tuple(c[:n])

    def add(self, a, b):
        f = self.field
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, v in enumerate(b):
            c[i] = f.raw_add(c[i], v)
        return self._trim(c)

    def sub(self, a, b):
        f = self.field
        c = list(a) + [f.zero_raw] * (len(b) - len(a))
        for i, v in enumerate(b):
            c[i] = f.raw_sub(c[i], v)
        return self._trim(c)

    def neg(self, a):
        f = self.field
        return tuple(f.raw_neg(v) for v in a)

    def mul(self, a, b):
        if not a or not b:
            return ()
        f = self.field
        c = [f.zero_raw] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u != f.zero_raw:
                for j, v in enumerate(b):
                    if v != f.zero_raw:
                        c[i + j] = f.raw_add(c[i + j], f.raw_mul(u, v))
        return self._trim(c)

    def mul_scalar(self, a, c):
        f = self.field
        if c == f.zero_raw:
            return ()
        if c == f.one_raw:
            return a
        return tuple(f.raw_mul(v, c) for v in a)

    def square(self, a):
        return self.mul(a, a)

    def subst_q(self, a, q):
        """Substitute t -> t^q and raise coefficients to the q-th power."""
        if not a:
            return ()
        f = self.field
        c = [f.zero_raw] * ((len(a) - 1) * q + 1)
        c[::q] = [f.raw_frobenius(v, q) for v in a]
        return tuple(c)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        db = len(b) - 1
        inv_lc = f.raw_inv(b[-1])
        r = list(a)
        q = [f.zero_raw] * max(len(a) - db, 0)
        for i in range(len(a) - 1 - db, -1, -1):
            c = r[i + db]
            if c != f.zero_raw:
                c = f.raw_mul(c, inv_lc)
                q[i] = c
                for j, v in enumerate(b):
                    if v != f.zero_raw:
                        r[i + j] = f.raw_sub(r[i + j], f.raw_mul(c, v))
        return self._trim(q), self._trim(r[:db])

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def gcd(self, a, b):
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a, b):
        u0, u1 = self.one, self.zero
        while b:
            q, r = self.divmod(a, b)
            a, b = b, r
            u0, u1 = u1, self.sub(u0, self.mul(q, u1))
        return a, u0

    def monic(self, a):
        f = self.field
        if not a or a[-1] == f.one_raw:
            return a
        return self.mul_scalar(a, f.raw_inv(a[-1]))

    def lc(self, a):
        return a[-1] if a else self.field.zero_raw

    def shift(self, a, n):
        if not a:
            return ()
        return (self.field.zero_raw,) * n + tuple(a)

    def const(self, c):
        return (c,) if c != self.field.zero_raw else ()

    def from_coeffs(self, coeffs):
        return self._trim(list(coeffs))

    @staticmethod
    def coeffs(a):
        return tuple(a)

    def eval(self, a, x, scalar):
        acc = scalar(self.field.zero_raw)
        for c in reversed(a):
            acc = acc * x + scalar(c)
        return acc

    def rand(self, deg, rng):
        if deg < 0:
            return ()
        f = self.field
        c = [f.random_raw(rng) for _ in range(deg)]
        while True:
            top = f.random_raw(rng)
            if top != f.zero_raw:
                return tuple(c) + (top,)

"""The rational function field F_q(t).

RatFunc values are reduced fractions of polynomials in t over a finite base
field: gcd(num, den) = 1, den monic, zero stored as 0/1.  The numerator and
denominator are raw kernel polynomials (see gfpoly); all public arithmetic
re-normalizes, and a t-degree guard aborts runaway growth instead of
exhausting memory.  Values are immutable and hashable.
"""

from functools import lru_cache

from .errors import FieldMismatchError, GuardExceededError, PoleError, QlinError
from .fields import FFElement, FiniteField, embedding
from .gfpoly import Gf2X, GfpX, GfqX

DEGREE_GUARD = 100_000


def tpoly_kernel(base):
    """The raw t-polynomial kernel for a finite base field."""
    if base.k == 1:
        return Gf2X if base.p == 2 else GfpX(base.p)
    return GfqX(base)


@lru_cache(maxsize=None)
def rational_function_field(base):
    """The canonical F_q(t) over a finite base field (singleton per base)."""
    if not isinstance(base, FiniteField):
        raise QlinError("base of a rational function field must be a FiniteField")
    return RatFuncField(base)


class RatFuncField:
    """Descriptor of F_q(t); construct through rational_function_field()."""

    def __init__(self, base):
        self.base = base
        self.tops = tpoly_kernel(base)
        self.zero = RatFunc(self, self.tops.zero, self.tops.one)
        self.one = RatFunc(self, self.tops.one, self.tops.one)
        self.t = RatFunc(self, self.tops.x, self.tops.one)

    @property
    def characteristic(self):
        return self.base.p

    def from_int(self, n):
        return RatFunc(self, self.tops.const(self.base.from_int(n).val), self.tops.one)

    def from_base(self, e):
        if e.field is not self.base:
            raise FieldMismatchError("constant is not in the base field")
        return RatFunc(self, self.tops.const(e.val), self.tops.one)

    def tpoly(self, coeffs):
        """Raw t-polynomial from base-field coefficients (ints or FFElements)."""
        vals = []
        for c in coeffs:
            if isinstance(c, FFElement):
                if c.field is not self.base:
                    raise FieldMismatchError("coefficient outside the base field")
                vals.append(c.val)
            else:
                vals.append(self.base.from_int(c).val)
        return self.tops.from_coeffs(vals)

    def ratfunc(self, num_coeffs, den_coeffs=(1,)):
        """Normalized fraction from coefficient sequences (constant first)."""
        return self.normalize(self.tpoly(num_coeffs), self.tpoly(den_coeffs))

    def polynomial(self, num_coeffs):
        return self.ratfunc(num_coeffs)

    def normalize(self, num, den):
        """Reduced, monic-denominator canonical form of num/den (raw inputs)."""
        K = self.tops
        if K.is_zero(den):
            raise ZeroDivisionError("zero denominator in rational function")
        if K.is_zero(num):
            return self.zero
        if den == K.one:
            return self._guarded(num, den)
        g = K.gcd(num, den)
        if K.degree(g) > 0:
            num = K.exact_div(num, g)
            den = K.exact_div(den, g)
        lc = K.lc(den)
        if lc != self.base.one_raw:
            inv = self.base.raw_inv(lc)
            num = K.mul_scalar(num, inv)
            den = K.mul_scalar(den, inv)
        return self._guarded(num, den)

    def _guarded(self, num, den):
        if self.tops.degree(num) > DEGREE_GUARD or self.tops.degree(den) > DEGREE_GUARD:
            raise GuardExceededError(
                f"t-degree exceeds the guard ({DEGREE_GUARD}); aborting runaway growth"
            )
        return RatFunc(self, num, den)

    def __repr__(self):
        return f"{self.base}(t)"


class RatFunc:
    """An element of F_q(t) in canonical form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den

    # -- views ---------------------------------------------------------------

    def num_coeffs(self):
        base = self.field.base
        return tuple(base.wrap(v) for v in self.field.tops.coeffs(self.num))

    def den_coeffs(self):
        base = self.field.base
        return tuple(base.wrap(v) for v in self.field.tops.coeffs(self.den))

    @property
    def is_polynomial(self):
        return self.den == self.field.tops.one

    def t_degree(self):
        K = self.field.tops
        return max(K.degree(self.num), K.degree(self.den))

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise FieldMismatchError("rational functions over different base fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, FFElement):
            return self.field.from_base(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        K = self.field.tops
        one = K.one
        if self.den == one and o.den == one:
            return self.field._guarded(K.add(self.num, o.num), one)
        num = K.add(K.mul(self.num, o.den), K.mul(o.num, self.den))
        return self.field.normalize(num, K.mul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        K = self.field.tops
        one = K.one
        if self.den == one and o.den == one:
            return self.field._guarded(K.sub(self.num, o.num), one)
        num = K.sub(K.mul(self.num, o.den), K.mul(o.num, self.den))
        return self.field.normalize(num, K.mul(self.den, o.den))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RatFunc(self.field, self.field.tops.neg(self.num), self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        K = self.field.tops
        one = K.one
        if self.den == one and o.den == one:
            return self.field._guarded(K.mul(self.num, o.num), one)
        # cross-cancel before multiplying to contain growth
        g1 = K.gcd(self.num, o.den)
        g2 = K.gcd(o.num, self.den)
        n1 = K.exact_div(self.num, g1) if K.degree(g1) > 0 else self.num
        d2 = K.exact_div(o.den, g1) if K.degree(g1) > 0 else o.den
        n2 = K.exact_div(o.num, g2) if K.degree(g2) > 0 else o.num
        d1 = K.exact_div(self.den, g2) if K.degree(g2) > 0 else self.den
        return self.field.normalize(K.mul(n1, n2), K.mul(d1, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFunc(self.field, o.den, o.num)._renorm()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def _renorm(self):
        return self.field.normalize(self.num, self.den)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of the zero rational function")
        return self.field.normalize(self.den, self.num)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        r = self.field.one
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def qth_power(self, q):
        """self^q by substituting t -> t^q; q must be the base field size."""
        if q != self.field.base.order:
            raise QlinError(
                f"q={q} does not match the base field size {self.field.base.order}"
            )
        K = self.field.tops
        return self.field._guarded(K.subst_q(self.num, q), K.subst_q(self.den, q))

    def evaluate(self, point):
        """Specialize t -> point; point lives in an extension of the base field."""
        base = self.field.base
        if not isinstance(point, FFElement):
            raise FieldMismatchError("specialization point must be a field element")
        if point.field.p != base.p or point.field.k % base.k:
            raise FieldMismatchError(
                f"cannot evaluate over {point.field}: not an extension of {base}"
            )
        K = self.field.tops
        emb = embedding(base, point.field)
        if base.k == 1:
            scalar = point.field.from_int
        else:
            scalar = lambda raw: emb(base.wrap(raw))
        den_val = K.eval(self.den, point, scalar)
        if not den_val:
            raise PoleError(f"denominator vanishes at t = {point}")
        num_val = K.eval(self.num, point, scalar)
        return num_val / den_val

    # -- comparisons -----------------------------------------------------------

    def __bool__(self):
        return not self.field.tops.is_zero(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return (
                self.field is other.field
                and self.num == other.num
                and self.den == other.den
            )
        if isinstance(other, (int, FFElement)):
            o = self._coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.num, self.den))

    def __str__(self):
        from .cli import render_tpoly  # rendering lives with the grammar

        num = render_tpoly(self.field, self.num)
        if self.is_polynomial:
            return num
        den = render_tpoly(self.field, self.den)
        return f"({num})/({den})"

    def __repr__(self):
        return f"<{self} over {self.field}>"

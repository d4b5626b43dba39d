"""Finite fields F_{p^k} with deterministic construction.

A field is built once per (p, k) and cached; its modulus is the monic
irreducible of degree k over F_p whose coefficient vector (a_0, ..., a_{k-1}),
read as a base-p integer, is minimal.  This pins every downstream artifact
(root orderings, generator matrices, JSON output) to one bit-reproducible
model.  Elements are residues in the power basis of the generator g = x mod
modulus; raw storage is a packed int for p = 2, a plain residue for k = 1,
and a trimmed coefficient tuple otherwise.

Everything here is immutable after construction and safe for concurrent use.
"""

from functools import lru_cache
from itertools import product

from .errors import FieldMismatchError, QlinError
from .gfpoly import Gf2X, GfpX, pow_mod

MAX_DEGREE_GF2 = 128
MAX_DEGREE_ODD = 32


def _is_prime(n):
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin below 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_is_irreducible(K, f, p, k):
    # gcd/Frobenius test: x^{p^k} = x mod f, and x^{p^{k/l}} - x coprime to f
    # for every prime l | k
    x = K.x
    h = x
    powers = {0: x}
    for d in range(1, k + 1):
        h = pow_mod(K, h, p, f)
        powers[d] = h
    if powers[k] != K.mod(x, f):
        return False
    for ell in _prime_factors(k):
        g = K.gcd(K.sub(powers[k // ell], x), f)
        if K.degree(g) > 0:
            return False
    return True


def _minimal_modulus(p, k):
    """Monic irreducible of degree k over F_p with least base-p coefficient int."""
    K = Gf2X if p == 2 else GfpX(p)
    for n in range(p**k):
        if p == 2:
            cand = (1 << k) | n
        else:
            digits = []
            m = n
            for _ in range(k):
                m, r = divmod(m, p)
                digits.append(r)
            cand = K.from_coeffs(digits + [1])
        if _poly_is_irreducible(K, cand, p, k):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """Descriptor of F_{p^k}; construct through :func:`make_field`."""

    def __init__(self, p, k, _token=None):
        if _token is not _FIELD_TOKEN:
            raise QlinError("use make_field(p, k); fields are canonical singletons")
        self.p = p
        self.k = k
        self.order = p**k
        if p == 2:
            self._impl = "prime" if k == 1 else "gf2"
        else:
            self._impl = "prime" if k == 1 else "extp"
        self._K = Gf2X if p == 2 else GfpX(p)
        if k == 1:
            self._mod = self._K.x  # identity placeholder: residues mod x
        else:
            self._mod = _minimal_modulus(p, k)
        if self._impl == "prime":
            self.zero_raw, self.one_raw = 0, 1
        elif self._impl == "gf2":
            self.zero_raw, self.one_raw = 0, 1
        else:
            self.zero_raw, self.one_raw = (), (1,)
        self.zero = FFElement(self, self.zero_raw)
        self.one = FFElement(self, self.one_raw)

    # -- descriptor surface -------------------------------------------------

    @property
    def characteristic(self):
        return self.p

    @property
    def extension_degree(self):
        return self.k

    def modulus_coeffs(self):
        """Coefficients of the modulus, constant term first, length k+1."""
        c = list(self._K.coeffs(self._mod))
        return tuple(c + [0] * (self.k + 1 - len(c)))

    @property
    def generator(self):
        """The residue class of x (for k = 1, the element 1)."""
        if self.k == 1:
            return self.one
        if self._impl == "gf2":
            return FFElement(self, 2)
        return FFElement(self, (0, 1))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- element construction -------------------------------------------------

    def element(self, coords):
        coords = list(coords)
        if len(coords) != self.k:
            raise QlinError(f"expected {self.k} coordinates, got {len(coords)}")
        if self._impl == "prime":
            return FFElement(self, coords[0] % self.p)
        if self._impl == "gf2":
            return FFElement(self, Gf2X.from_coeffs(coords))
        return FFElement(self, self._K.from_coeffs(coords))

    def from_int(self, n):
        n %= self.p
        if self._impl == "extp":
            return FFElement(self, (n,) if n else ())
        return FFElement(self, n)

    def wrap(self, raw):
        return FFElement(self, raw)

    def elements(self):
        """All elements in coordinate-lexicographic order."""
        for coords in product(range(self.p), repeat=self.k):
            yield self.element(coords)

    def random_raw(self, rng):
        if self._impl == "gf2":
            return rng.getrandbits(self.k)
        if self._impl == "prime":
            return rng.randrange(self.p)
        return self._K.from_coeffs([rng.randrange(self.p) for _ in range(self.k)])

    def random_element(self, rng):
        return FFElement(self, self.random_raw(rng))

    # -- raw arithmetic -------------------------------------------------------

    def raw_add(self, a, b):
        if self._impl == "gf2":
            return a ^ b
        if self._impl == "prime":
            return (a + b) % self.p
        return self._K.add(a, b)

    def raw_sub(self, a, b):
        if self._impl == "gf2":
            return a ^ b
        if self._impl == "prime":
            return (a - b) % self.p
        return self._K.sub(a, b)

    def raw_neg(self, a):
        if self._impl == "gf2":
            return a
        if self._impl == "prime":
            return (-a) % self.p
        return self._K.neg(a)

    def raw_mul(self, a, b):
        if self._impl == "gf2":
            return Gf2X.mod(Gf2X.mul(a, b), self._mod)
        if self._impl == "prime":
            return a * b % self.p
        return self._K.mod(self._K.mul(a, b), self._mod)

    def raw_inv(self, a):
        if a == self.zero_raw:
            raise ZeroDivisionError("inverse of zero field element")
        if self._impl == "prime":
            return pow(a, self.p - 2, self.p)
        g, u = self._K.xgcd(a, self._mod)
        # g is a nonzero constant; scale u by its inverse
        if self._impl == "gf2":
            return u
        c = pow(g[0], self.p - 2, self.p)
        return self._K.mul_scalar(u, c)

    def raw_pow(self, a, e):
        if e < 0:
            return self.raw_pow(self.raw_inv(a), -e)
        r = self.one_raw
        while e:
            if e & 1:
                r = self.raw_mul(r, a)
            a = self.raw_mul(a, a)
            e >>= 1
        return r

    def raw_frobenius(self, v, q):
        r = _power_of_char(q, self.p)
        if r is None:
            raise QlinError(f"{q} is not a power of the characteristic {self.p}")
        if self._impl == "prime":
            return v
        if self._impl == "gf2":
            for _ in range(r):
                v = Gf2X.mod(Gf2X.square(v), self._mod)
            return v
        for _ in range(r):
            v = self.raw_pow(v, self.p)
        return v

    def raw_coords(self, v):
        if self._impl == "prime":
            return (v,)
        if self._impl == "gf2":
            return tuple((v >> i) & 1 for i in range(self.k))
        return tuple(v) + (0,) * (self.k - len(v))


def _power_of_char(q, p):
    """Return r with q = p^r (r >= 1), or None."""
    if q < p:
        return None
    r = 0
    while q > 1:
        if q % p:
            return None
        q //= p
        r += 1
    return r


_FIELD_TOKEN = object()


@lru_cache(maxsize=None)
def make_field(p, k=1):
    """The canonical F_{p^k}.  Deterministic: repeated calls share one object."""
    if not isinstance(p, int) or not _is_prime(p):
        raise QlinError(f"characteristic {p} is not prime")
    if not isinstance(k, int) or k <= 0:
        raise QlinError(f"extension degree {k} must be a positive integer")
    cap = MAX_DEGREE_GF2 if p == 2 else MAX_DEGREE_ODD
    if k > cap:
        raise QlinError(f"extension degree {k} exceeds the desk-scale cap {cap} for p={p}")
    return FiniteField(p, k, _token=_FIELD_TOKEN)


class FFElement:
    """An element of a FiniteField, stored as power-basis coordinates."""

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        self.field = field
        self.val = val

    def coords(self):
        """Power-basis coordinates, constant term first, length k."""
        return self.field.raw_coords(self.val)

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field.raw_add(self.val, o.val))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field.raw_sub(self.val, o.val))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field.raw_sub(o.val, self.val))

    def __neg__(self):
        return FFElement(self.field, self.field.raw_neg(self.val))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field.raw_mul(self.val, o.val))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FFElement(self.field, self.field.raw_mul(self.val, self.field.raw_inv(o.val)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        return FFElement(self.field, self.field.raw_pow(self.val, e))

    def inverse(self):
        return FFElement(self.field, self.field.raw_inv(self.val))

    def frobenius(self, q):
        """e^q for q a power of the characteristic."""
        return FFElement(self.field, self.field.raw_frobenius(self.val, q))

    qth_power = frobenius

    def __bool__(self):
        return self.val != self.field.zero_raw

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field is other.field and self.val == other.val
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.val))

    def sort_key(self):
        return self.coords()

    def __str__(self):
        coords = self.coords()
        if self.field.k == 1:
            return str(coords[0])
        terms = []
        for i in range(self.field.k - 1, -1, -1):
            c = coords[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                var = "g" if i == 1 else f"g^{i}"
                terms.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self} in {self.field}>"

    def to_json(self):
        return {"p": self.field.p, "k": self.field.k, "coords": list(self.coords())}


@lru_cache(maxsize=None)
def embedding(source, target):
    """The canonical embedding F_{p^j} -> F_{p^k} for j | k.

    The generator's image is the root of source's modulus in target with the
    lexicographically least coordinate vector, making the map deterministic.
    """
    if source.p != target.p:
        raise FieldMismatchError("embeddings require equal characteristic")
    if target.k % source.k:
        raise FieldMismatchError(
            f"degree {source.k} does not divide {target.k}; no embedding exists"
        )
    if source is target:
        return Embedding(source, target, target.generator)
    if source.k == 1:
        return Embedding(source, target, target.one)
    from . import polys

    mod_poly = polys.Poly(target, [target.from_int(c) for c in source.modulus_coeffs()])
    roots = polys.poly_roots(mod_poly, target)
    return Embedding(source, target, roots[0])


class Embedding:
    """Ring homomorphism between two fields of one characteristic."""

    def __init__(self, source, target, image_of_generator):
        self.source = source
        self.target = target
        self.image_of_generator = image_of_generator
        img = image_of_generator.val
        powers = [target.one_raw]
        for _ in range(source.k - 1):
            powers.append(target.raw_mul(powers[-1], img))
        self._powers = powers
        self._scalars = [target.from_int(c).val for c in range(source.p)]

    def __call__(self, e):
        if e.field is not self.source:
            raise FieldMismatchError("element does not belong to the embedding's source")
        if self.source is self.target:
            return e
        tgt = self.target
        acc = tgt.zero_raw
        for c, pw in zip(e.coords(), self._powers):
            if c:
                acc = tgt.raw_add(acc, tgt.raw_mul(self._scalars[c], pw))
        return FFElement(tgt, acc)

    def __repr__(self):
        return f"Embedding({self.source} -> {self.target})"


def _fp_matrix_inverse(rows, p):
    """Invert a square matrix of ints over F_p (small, dense)."""
    n = len(rows)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] % p), None)
        if piv is None:
            raise QlinError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] % p:
                c = aug[r][col]
                aug[r] = [(v - c * w) % p for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def subfield_coords(sub, big):
    """Coordinatizer for big as a vector space over its subfield sub."""
    return SubfieldCoords(sub, big)


class SubfieldCoords:
    """Expresses elements of F_{p^{e s}} in the F_{p^e}-basis {1, G, ..., G^{s-1}}.

    G is the big field's generator; its minimal polynomial over the subfield
    has degree s, so the powers form a basis.  Coordinates come from one
    precomputed F_p change-of-basis inverse.
    """

    def __init__(self, sub, big):
        if sub.p != big.p or big.k % sub.k:
            raise FieldMismatchError("no subfield relation")
        self.sub = sub
        self.big = big
        self.dim = big.k // sub.k
        p, e, es = sub.p, sub.k, big.k
        if e == 1:
            self._inv = None
            return
        emb = embedding(sub, big)
        gpow = [big.one]
        for _ in range(self.dim - 1):
            gpow.append(gpow[-1] * big.generator)
        cols = []
        for j in range(self.dim):
            for l in range(e):
                basis_elem = gpow[j] * emb(sub.generator**l)
                cols.append(basis_elem.coords())
        # columns indexed by j*e + l; invert the es x es matrix
        rows = [[cols[c][r] for c in range(es)] for r in range(es)]
        self._inv = _fp_matrix_inverse(rows, p)

    def coords(self, elem):
        """Coordinates of elem over the subfield, length big.k // sub.k."""
        if elem.field is not self.big:
            raise FieldMismatchError("element not in the coordinatized field")
        if self._inv is None:
            return tuple(self.sub.from_int(c) for c in elem.coords())
        p, e = self.sub.p, self.sub.k
        vec = elem.coords()
        sol = [sum(r * v for r, v in zip(row, vec)) % p for row in self._inv]
        return tuple(
            self.sub.element(sol[j * e : (j + 1) * e]) for j in range(self.dim)
        )

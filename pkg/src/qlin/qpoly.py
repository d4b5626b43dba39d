"""q-linearized polynomials and minimal linearizations.

A QPoly is a sparse sum a_i x^{q^i} keyed by q-exponent; its roots form an
F_q-vector space and evaluation is F_q-linear.  minimal_qpoly computes, for a
separable f, the monic q-polynomial L of least q-degree divisible by f, by
iterating r_i = x^{q^i} mod f and stopping at the first linear dependence
over the coefficient field; the dependence certificate is read off the
echelon state's transformation tags, so no system is re-solved.

Over F_q(t) the elimination is fraction-free: vectors are cleared to F_q[t]
(monic inputs already are), rows are cross-multiplied and content-stripped,
and the certificate is normalized back to reduced fractions at the end.
minimal_qdegree computes only m(f), certifying dependence structurally
(vectors confined to too few coordinate columns) plus a specialized-rank
lower bound, which keeps the PSL(2,p) family at p = 7 in seconds where the
full L is astronomically large.
"""

import random
from dataclasses import dataclass

from .errors import GuardExceededError, QlinError
from .fields import FFElement, FiniteField, embedding, make_field
from .funcfield import DEGREE_GUARD, RatFunc, RatFuncField
from .polys import Poly, poly_qth_power_mod

RAW_DEGREE_GUARD = 12 * DEGREE_GUARD


class QPoly:
    """Sparse q-polynomial: coeffs maps q-exponent i to a nonzero a_i."""

    __slots__ = ("field", "q", "coeffs")

    def __init__(self, field, q, coeffs):
        self.field = field
        self.q = q
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def qdegree(self):
        if not self.coeffs:
            raise QlinError("the zero q-polynomial has no q-degree")
        return max(self.coeffs)

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[self.qdegree] == self.field.one

    def coeff(self, i):
        return self.coeffs.get(i, self.field.zero)

    def monic(self):
        if self.is_zero:
            raise QlinError("cannot normalize the zero q-polynomial")
        if self.is_monic:
            return self
        inv = self.field.one / self.coeffs[self.qdegree]
        return QPoly(self.field, self.q, {e: c * inv for e, c in self.coeffs.items()})

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, self.field.zero) + c
        return QPoly(self.field, self.q, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, self.field.zero) - c
        return QPoly(self.field, self.q, out)

    def scale(self, c):
        return QPoly(self.field, self.q, {e: a * c for e, a in self.coeffs.items()})

    def frobenius_shift(self):
        """Sum a_i^q x^{q^{i+1}}, i.e. the q-th power as a q-polynomial."""
        return QPoly(
            self.field, self.q, {e + 1: c.qth_power(self.q) for e, c in self.coeffs.items()}
        )

    def _check(self, other):
        if not isinstance(other, QPoly) or other.field is not self.field or other.q != self.q:
            raise QlinError("q-polynomials over different fields or q")

    def to_poly(self):
        """The same polynomial written densely with ordinary exponents."""
        return Poly.from_terms(self.field, {self.q**e: c for e, c in self.coeffs.items()})

    def evaluate(self, point):
        """Additive evaluation sum a_i point^{q^i}."""
        if isinstance(self.field, RatFuncField):
            if not isinstance(point, RatFunc) or point.field is not self.field:
                raise QlinError("evaluation point must lie in the coefficient field")
            get_coeff = lambda c: c
        elif isinstance(point, FFElement):
            if point.field.p != self.field.p or point.field.k % self.field.k:
                raise QlinError(f"{point.field} does not contain {self.field}")
            emb = embedding(self.field, point.field)
            get_coeff = emb
        else:
            raise QlinError("unsupported evaluation point")
        if self.is_zero:
            return point - point  # zero of the point's ring
        n = self.qdegree
        acc = None
        w = point
        for i in range(n + 1):
            c = self.coeffs.get(i)
            if c is not None:
                term = get_coeff(c) * w
                acc = term if acc is None else acc + term
            if i < n:
                if isinstance(w, RatFunc):
                    # t -> t^q substitution equals the q-th power on F_q(t)
                    w = w.qth_power(self.q) if self.q == self.field.base.order else w**self.q
                else:
                    w = w.frobenius(self.q)
        return acc

    def terms_descending(self):
        return sorted(self.coeffs.items(), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.field is other.field and self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.q, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def __repr__(self):
        from .cli import render_qpoly

        return f"QPoly({render_qpoly(self)})"


@dataclass(frozen=True)
class LinearizationResult:
    """m(f), the minimal monic q-polynomial L, and the dependence certificate.

    The certificate c_0..c_{m-1} expresses x^{q^m} = sum c_i x^{q^i} mod f,
    so L = x^{q^m} - sum c_i x^{q^i}.
    """

    m: int
    L: QPoly
    certificate: tuple


def qp_associate(L):
    """The ordinary polynomial x^n + a_{n-1} x^{n-1} + ... + a_0 of a monic L."""
    if L.is_zero:
        raise QlinError("the zero q-polynomial has no associate")
    L = L.monic()
    return Poly.from_terms(L.field, dict(L.coeffs.items()))


def qp_divides(f, L):
    """True iff f divides L viewed as an ordinary polynomial."""
    if f.field is not L.field:
        raise QlinError("polynomials over different coefficient fields")
    if f.is_zero:
        return L.is_zero
    return (L.to_poly() % f).is_zero


def _validate_q(field, q):
    """q = p^r with F_q inside the coefficient field; returns (p, r)."""
    if isinstance(field, RatFuncField):
        p, e = field.base.p, field.base.k
    elif isinstance(field, FiniteField):
        p, e = field.p, field.k
    else:
        raise QlinError("unsupported coefficient field")
    r = 0
    qq = q
    while qq > 1:
        if qq % p:
            raise QlinError(f"q={q} is not a power of the characteristic {p}")
        qq //= p
        r += 1
    if r == 0 or e % r:
        raise QlinError(f"F_{q} is not a subfield of the coefficient constants")
    return p, r


def _check_separable(f):
    """Reject repeated roots; a single factor of x is allowed."""
    lead_zeros = f.trailing_zero_count()
    if lead_zeros > 1:
        raise QlinError("inseparable input: x^2 divides f")
    f0 = Poly(f.field, f.coeffs[lead_zeros:]) if lead_zeros else f
    if f0.degree > 0:
        d = f0.derivative()
        if d.is_zero:
            raise QlinError("inseparable input: derivative vanishes")
        from .polys import poly_gcd

        if poly_gcd(f0, d).degree > 0:
            raise QlinError("inseparable input: repeated roots detected")


# -- fraction-free echelon state over F_q[t] ---------------------------------


class _PolySpan:
    """Echelonized span of raw t-polynomial vectors with transformation tags.

    Rows are pairwise fully reduced (cross-multiplication, then content
    stripped) so a dependent vector reduces to exactly zero in one ascending
    pass; its tag block then holds polynomials S_j with sum S_j v_j = 0.
    """

    def __init__(self, tops, width, max_tags):
        self.tops = tops
        self.width = width
        self.max_tags = max_tags
        self.rows = []  # (pivot, vec) ascending by pivot; vec = main + tags
        self.count = 0

    def _strip(self, vec):
        K = self.tops
        g = K.zero
        for entry in vec:
            if not K.is_zero(entry):
                g = K.gcd(g, entry) if not K.is_zero(g) else K.monic(entry)
                if K.degree(g) == 0:
                    return vec
        if K.is_zero(g) or K.degree(g) == 0:
            return vec
        return [K.exact_div(e, g) if not K.is_zero(e) else e for e in vec]

    def _combine(self, piv, v, c, row):
        K = self.tops
        out = []
        for vk, rk in zip(v, row):
            a = vk if piv == K.one else K.mul(piv, vk)
            b = rk if c == K.one else K.mul(c, rk)
            out.append(K.sub(a, b))
        return self._strip(out)

    def insert(self, main_vec):
        """Add a vector; returns None if independent, else the tag relation."""
        K = self.tops
        idx = self.count
        if idx >= self.max_tags:
            raise QlinError("span tracker tag capacity exceeded")
        tags = [K.zero] * self.max_tags
        tags[idx] = K.one
        v = list(main_vec) + tags
        for pivot, row in self.rows:
            c = v[pivot]
            if not K.is_zero(c):
                v = self._combine(row[pivot], v, c, row)
        pivot = next((j for j in range(self.width) if not K.is_zero(v[j])), None)
        self.count += 1
        if pivot is None:
            return v[self.width :]
        for i, (p2, row2) in enumerate(self.rows):
            c = row2[pivot]
            if not K.is_zero(c):
                self.rows[i] = (p2, self._combine(v[pivot], row2, c, v))
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda pr: pr[0])
        return None

    @property
    def rank(self):
        return len(self.rows)


class _FieldSpan:
    """Echelonized span over a field; rows normalized to pivot 1."""

    def __init__(self, field, width, max_tags=0):
        self.field = field
        self.width = width
        self.max_tags = max_tags
        self.rows = []
        self.count = 0

    def insert(self, main_vec):
        idx = self.count
        tags = [self.field.zero] * self.max_tags
        if self.max_tags:
            tags[idx] = self.field.one
        v = list(main_vec) + tags
        for pivot, row in self.rows:
            c = v[pivot]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        pivot = next((j for j in range(self.width) if v[j]), None)
        self.count += 1
        if pivot is None:
            return v[self.width :]
        inv = self.field.one / v[pivot]
        v = [a * inv for a in v]
        for i, (p2, row2) in enumerate(self.rows):
            c = row2[pivot]
            if c:
                self.rows[i] = (p2, [a - c * b for a, b in zip(row2, v)])
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda pr: pr[0])
        return None

    @property
    def rank(self):
        return len(self.rows)


# -- Krylov stream x^{q^i} mod f over F_q[t] ----------------------------------


class _RawKrylov:
    """Yields x^{q^i} mod f as raw t-polynomial vectors, i = 0, 1, 2, ...

    Requires f monic with F_q[t] coefficients (raw vector fvec of length n).
    """

    def __init__(self, rf_field, fvec, q):
        self.tops = rf_field.tops
        self.n = len(fvec)
        self.q = q
        self.fterms = [(j, c) for j, c in enumerate(fvec) if not self.tops.is_zero(c)]

    def _reduce(self, dense):
        K = self.tops
        n = self.n
        for d in range(len(dense) - 1, n - 1, -1):
            c = dense[d]
            if K.is_zero(c):
                continue
            dense[d] = K.zero
            base = d - n
            for j, fj in self.fterms:
                dense[base + j] = K.sub(dense[base + j], K.mul(c, fj))
        return dense[:n]

    def stream(self):
        K = self.tops
        n, q = self.n, self.q
        if n == 1:
            # f = x + f_0 monic: x = -f_0 mod f (f = x leaves the zero residue)
            f0 = self.fterms[0][1] if self.fterms else K.zero
            r = [K.neg(f0)]
        else:
            r = [K.zero] * n
            r[1] = K.one
        while True:
            yield list(r)
            dense = [K.zero] * ((n - 1) * q + 1)
            top = 0
            for j, c in enumerate(r):
                if not K.is_zero(c):
                    dense[j * q] = K.subst_q(c, q)
                    top = max(top, K.degree(dense[j * q]))
            if top > RAW_DEGREE_GUARD:
                raise GuardExceededError(
                    f"t-degree {top} exceeds the raw elimination guard"
                )
            r = self._reduce(dense)


def _monic_cleared(f):
    """Monic-ize f over F_q(t) and clear denominators by substituting x -> x/D.

    Returns (fvec, D) where fvec holds the F_q[t] coefficients of the
    conjugated monic polynomial g with g(Dx) = D^n f(x) up to a scalar; D = 1
    whenever f is already monic with polynomial coefficients.  The roots of g
    are D times the roots of f, so m is preserved and L transforms by powers
    of D on each coefficient.
    """
    field = f.field
    K = field.tops
    f = f.monic()
    dens = [c.den for c in f.coeffs]
    D = K.one
    for d in dens:
        g = K.gcd(D, d)
        D = K.mul(K.exact_div(D, g) if K.degree(g) > 0 else D, d)
    n = f.degree
    if K.degree(D) == 0:
        return [c.num for c in f.coeffs[:n]], K.one
    dpow = [K.one]
    for _ in range(n):
        dpow.append(K.mul(dpow[-1], D))
    fvec = []
    for j in range(n):
        c = f.coeffs[j]
        fvec.append(K.mul(c.num, K.exact_div(dpow[n - j], c.den)))
    return fvec, D


def minimal_qpoly(f, q):
    """The minimal q-polynomial of a separable f, with m(f) and certificate.

    m(f) equals the dimension of the F_q-span of f's roots; L divides every
    q-polynomial divisible by f.  Terminates with m <= deg f.
    """
    if f.degree < 1:
        raise QlinError("minimal linearization needs a nonconstant polynomial")
    _validate_q(f.field, q)
    _check_separable(f)
    if isinstance(f.field, RatFuncField):
        return _minimal_qpoly_ratfunc(f, q)
    return _minimal_qpoly_finite(f, q)


def _minimal_qpoly_ratfunc(f, q):
    field = f.field
    K = field.tops
    n = f.degree
    fvec, D = _monic_cleared(f)
    span = _PolySpan(K, n, n + 1)
    krylov = _RawKrylov(field, fvec, q).stream()
    for i in range(n + 1):
        r = next(krylov)
        relation = span.insert(r)
        if relation is not None:
            m = i
            sm = relation[m]
            cleared = D != K.one
            cert = []
            for j in range(m):
                num = K.neg(relation[j])
                den = sm
                if cleared:
                    # undo the x -> x/D conjugation: c_j scales by D^{q^j - q^m}
                    den = K.mul(den, _tpow(K, D, q**m - q**j))
                cert.append(field.normalize(num, den))
            coeffs = {m: field.one}
            for j, c in enumerate(cert):
                coeffs[j] = -c
            return LinearizationResult(m, QPoly(field, q, coeffs), tuple(cert))
    raise AssertionError("no dependence within deg f + 1 Krylov vectors")  # unreachable


def _tpow(K, a, e):
    r = K.one
    while e:
        if e & 1:
            r = K.mul(r, a)
        e >>= 1
        if e:
            a = K.mul(a, a)
        if K.degree(r) > RAW_DEGREE_GUARD or K.degree(a) > RAW_DEGREE_GUARD:
            raise GuardExceededError("t-degree exceeds the raw elimination guard")
    return r


def _minimal_qpoly_finite(f, q):
    field = f.field
    f = f.monic()
    n = f.degree
    span = _FieldSpan(field, n, max_tags=n + 1)
    r = Poly.x(field) % f
    for i in range(n + 1):
        vec = [r.coeff(j) for j in range(n)]
        relation = span.insert(vec)
        if relation is not None:
            m = i
            inv = field.one / relation[m]
            cert = tuple(-(relation[j] * inv) for j in range(m))
            coeffs = {m: field.one}
            for j, c in enumerate(cert):
                coeffs[j] = -c
            return LinearizationResult(m, QPoly(field, q, coeffs), cert)
        r = poly_qth_power_mod(r, f, q)
    raise AssertionError("no dependence within deg f + 1 Krylov vectors")  # unreachable


def minimal_qdegree(f, q, rng=None):
    """m(f) alone, via certified shortcuts where the full L is out of reach.

    Upper bounds come from vectors confined to too few coordinate columns
    (exact), lower bounds from the rank of the vectors specialized at random
    points (rank can only drop under specialization).  Falls back to the full
    fraction-free elimination when the two sides do not meet.
    """
    if f.degree < 1:
        raise QlinError("minimal linearization needs a nonconstant polynomial")
    _validate_q(f.field, q)
    _check_separable(f)
    if rng is None:
        rng = random.Random(0)
    if isinstance(f.field, FiniteField):
        return _minimal_qpoly_finite(f, q).m
    field = f.field
    K = field.tops
    n = f.degree
    fvec, D = _monic_cleared(f)
    vectors = []
    nonzero_cols = set()
    krylov = _RawKrylov(field, fvec, q).stream()
    spec = _SpecRank(field, n, rng)
    for i in range(n + 1):
        r = next(krylov)
        vectors.append(r)
        nonzero_cols.update(j for j in range(n) if not K.is_zero(r[j]))
        if spec.insert(r):
            continue
        # rank stalled at i: certified dependence, an unlucky point, or unproven
        if len(nonzero_cols) <= i and spec.rank == i:
            return i
        for _ in range(3):
            if spec.respecialize(vectors) == i + 1:
                break  # point was unlucky; rank recovered, keep streaming
        else:
            return _exact_first_dependence(K, n, vectors, krylov)
    raise AssertionError("no dependence within deg f + 1 Krylov vectors")  # unreachable


def _exact_first_dependence(K, n, vectors, krylov):
    span = _PolySpan(K, n, n + 2)
    for i, v in enumerate(vectors):
        if span.insert(v) is not None:
            return i
    i = len(vectors)
    while True:
        if span.insert(next(krylov)) is not None:
            return i
        i += 1


class _SpecRank:
    """Rank of raw t-poly vectors specialized at a random extension point."""

    def __init__(self, rf_field, width, rng):
        self.rf_field = rf_field
        self.width = width
        self.rng = rng
        self.degree = 2
        self._new_point()

    def _new_point(self):
        base = self.rf_field.base
        E = make_field(base.p, base.k * self.degree)
        while True:
            lam = E.random_element(self.rng)
            if lam:
                break
        self.E = E
        self.lam = lam
        K = self.rf_field.tops
        self.pattern = None
        if hasattr(K, "eval_cyclic") and E.order <= 4096:
            pattern = [E.one.coords()]
            w = lam
            while True:
                pattern.append(w.coords())
                if w == E.one:
                    break
                w = w * lam
            self.pattern = pattern
        self.tracker = _FieldSpan(E, self.width)
        self.degree += 1  # next retry uses a bigger extension

    def _eval(self, raw):
        K = self.rf_field.tops
        if self.pattern is not None:
            return self.E.element(K.eval_cyclic(raw, self.pattern))
        if self.rf_field.base.k == 1:
            scalar = self.E.from_int
        else:
            emb = embedding(self.rf_field.base, self.E)
            scalar = lambda v: emb(self.rf_field.base.wrap(v))
        return K.eval(raw, self.lam, scalar)

    def insert(self, raw_vec):
        """True iff the specialized rank grew."""
        before = self.tracker.rank
        self.tracker.insert([self._eval(c) for c in raw_vec])
        return self.tracker.rank > before

    def respecialize(self, vectors):
        """Rebuild the tracker at a fresh point; returns the resulting rank."""
        self._new_point()
        for v in vectors:
            self.tracker.insert([self._eval(c) for c in v])
        return self.tracker.rank

    @property
    def rank(self):
        return self.tracker.rank


def moore_qpoly(basis, q, method="product"):
    """The monic q-polynomial whose roots are exactly the F_q-span of basis.

    ``method="product"`` composes one basis vector at a time;
    ``method="determinant"`` expands the Moore determinant along its x-row.
    Both raise on F_q-linearly dependent input (the determinant vanishes).
    """
    basis = list(basis)
    if not basis:
        raise QlinError("empty basis")
    E = basis[0].field
    if any(b.field is not E for b in basis):
        raise QlinError("basis elements must share one field")
    _validate_q(E, q)
    if method == "product":
        L = QPoly(E, q, {0: E.one})
        for alpha in basis:
            beta = L.evaluate(alpha)
            if not beta:
                raise QlinError("basis is F_q-linearly dependent (determinant vanishes)")
            L = L.frobenius_shift() - L.scale(beta ** (q - 1))
        return L
    if method == "determinant":
        from .polys import Matrix

        n = len(basis)
        iterates = []
        for a in basis:
            row = [a]
            for _ in range(n):
                row.append(row[-1].frobenius(q))
            iterates.append(row)
        coeffs = {}
        for j in range(n + 1):
            minor = Matrix(E, [[row[jj] for jj in range(n + 1) if jj != j] for row in iterates])
            d = minor.det()
            if (n + j) % 2 == 1:
                d = -d
            coeffs[j] = d
        if not coeffs.get(n):
            raise QlinError("basis is F_q-linearly dependent (determinant vanishes)")
        return QPoly(E, q, coeffs).monic()
    raise QlinError(f"unknown moore_qpoly method {method!r}")

"""Dense univariate polynomials over Q, Z/m, or an extension field.

Coefficients are stored constant term first with no trailing zeros; the zero
polynomial has an empty coefficient tuple.  Factorization over F_p uses
distinct-degree plus equal-degree splitting with a deterministic candidate
sequence, so identical inputs always factor identically.
"""

from fractions import Fraction

from .errors import NonSquarefree
from .rings import QQ, IntegersMod


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        cs = [ring.canon(c) for c in coeffs]
        while cs and cs[-1] == ring.zero:
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Poly({self.ring}, {list(self.coeffs)})"

    def __add__(self, other):
        r = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [r.zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [r.zero] * (n - len(other.coeffs))
        return Poly(r, [r.add(x, y) for x, y in zip(a, b)])

    def __sub__(self, other):
        r = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [r.zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [r.zero] * (n - len(other.coeffs))
        return Poly(r, [r.sub(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        return Poly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        r = self.ring
        if self.is_zero() or other.is_zero():
            return Poly(r, [])
        out = [r.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == r.zero:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = r.add(out[i + j], r.mul(x, y))
        return Poly(r, out)

    def scale(self, c):
        r = self.ring
        return Poly(r, [r.mul(c, x) for x in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.lead()))

    def divmod(self, other):
        """Quotient and remainder; the divisor's lead must be a unit."""
        r = self.ring
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        dlead_inv = r.inv(other.lead())
        rem = list(self.coeffs)
        dd = other.degree
        q = [r.zero] * max(1, len(rem) - dd)
        while len(rem) - 1 >= dd and rem:
            while rem and rem[-1] == r.zero:
                rem.pop()
            if len(rem) - 1 < dd or not rem:
                break
            shift = len(rem) - 1 - dd
            c = r.mul(rem[-1], dlead_inv)
            q[shift] = c
            for i, d in enumerate(other.coeffs):
                rem[shift + i] = r.sub(rem[shift + i], r.mul(c, d))
        return Poly(r, q), Poly(r, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def pow_mod(self, e, modulus):
        """self**e mod modulus by square and multiply."""
        r = self.ring
        result = Poly(r, [r.one])
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def eval(self, x):
        r = self.ring
        acc = r.zero
        for c in reversed(self.coeffs):
            acc = r.add(r.mul(acc, x), c)
        return acc

    def derivative(self):
        r = self.ring
        return Poly(r, [r.mul(r.canon(i), c) for i, c in enumerate(self.coeffs)][1:])

    def compose_xp(self, p):
        """For f = sum a_i x^(p*i) return sum a_i x^i (p-th root over F_p)."""
        return Poly(self.ring, list(self.coeffs[::p]))


def poly_gcd(a, b):
    """Monic gcd over a field; gcd with zero is the other argument made monic."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic, over a field."""
    r = a.ring
    one, zero = Poly(r, [r.one]), Poly(r, [])
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero():
        q, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    c = r.inv(r0.lead())
    return r0.monic(), s0.scale(c), t0.scale(c)


def _sqf_decomposition(f, p):
    """Squarefree decomposition over F_p; list of (squarefree monic, mult)."""
    r = f.ring
    out = []
    if f.degree < 1:
        return out
    fprime = f.derivative()
    if fprime.is_zero():
        # f = g(x^p) = (root g)^p
        for piece, mult in _sqf_decomposition(f.compose_xp(p), p):
            out.append((piece, mult * p))
        return out
    c = poly_gcd(f, fprime)
    w = (f // c).monic()
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = (w // y).monic()
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # leftover factors all have multiplicity divisible by p, so c is a
        # p-th power: c(x) = v(x)^p = v~(x^p) with the same coefficients
        for piece, mult in _sqf_decomposition(c.monic().compose_xp(p), p):
            out.append((piece, mult * p))
    return out


def _ddf(f, p):
    """Distinct-degree split of squarefree monic f; list of (product, degree)."""
    r = f.ring
    out = []
    x = Poly(r, [r.zero, r.one])
    h = x
    rest = f
    d = 0
    while rest.degree > 0:
        d += 1
        if rest.degree < 2 * d:
            out.append((rest, rest.degree))
            break
        h = h.pow_mod(p, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = (rest // g).monic()
            h = h % rest
    return out


def _candidate_polys(ring, max_deg):
    """Deterministic enumeration of monic polynomials of degree 1..max_deg."""
    from itertools import product

    p = ring.m
    for deg in range(1, max_deg + 1):
        for tail in product(range(p), repeat=deg):
            yield Poly(ring, list(tail) + [1])


def _edf(f, d, p):
    """Split squarefree monic f (all factors of degree d) into irreducibles."""
    if f.degree == d:
        return [f]
    r = f.ring
    one = Poly(r, [r.one])
    for h in _candidate_polys(r, f.degree - 1):
        g = poly_gcd(h, f)
        if 0 < g.degree < f.degree:
            return _edf(g, d, p) + _edf((f // g).monic(), d, p)
        if p == 2:
            # trace map over F_{2^d}
            w = h % f
            acc = w
            for _ in range(d - 1):
                w = (w * w) % f
                acc = acc + w
            g = poly_gcd(acc, f)
        else:
            w = h.pow_mod((p ** d - 1) // 2, f)
            g = poly_gcd(w - one, f)
        if 0 < g.degree < f.degree:
            return _edf(g, d, p) + _edf((f // g).monic(), d, p)
    raise AssertionError("equal-degree splitting exhausted its candidates")


def factor_poly_mod_p(f):
    """Factor a nonzero polynomial over F_p into irreducibles.

    Returns [(irreducible monic Poly, multiplicity)] sorted by degree then by
    coefficient tuple; the product of factors to their multiplicities equals
    f up to the leading unit.
    """
    r = f.ring
    if not isinstance(r, IntegersMod) or not r.is_field:
        raise ValueError("factorization requires a prime-field polynomial")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    p = r.m
    f = f.monic()
    if f.degree == 0:
        return []          # units have an empty factorization
    factors = []
    for piece, mult in _sqf_decomposition(f, p):
        for prod, d in _ddf(piece, p):
            if prod.degree == 0:
                continue
            for irr in _edf(prod, d, p):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return factors


def is_irreducible_mod_p(f):
    """True when f is irreducible over its prime field."""
    fac = factor_poly_mod_p(f)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0].degree == f.degree


def sturm_real_root_count(f):
    """Number of distinct real roots of a squarefree rational polynomial."""
    if f.ring != QQ:
        raise ValueError("Sturm count expects a rational polynomial")
    if f.degree <= 0:
        return 0
    if poly_gcd(f, f.derivative()).degree > 0:
        raise NonSquarefree("input has a repeated root; divide by gcd(f, f') first")
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero():
            break
        chain.append(-rem)

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)

    def sign_at_inf(g, positive):
        if g.is_zero():
            return 0
        lead = g.lead()
        s = 1 if lead > 0 else -1
        if not positive and g.degree % 2 == 1:
            s = -s
        return s

    neg = [sign_at_inf(g, positive=False) for g in chain]
    pos = [sign_at_inf(g, positive=True) for g in chain]
    return variations(neg) - variations(pos)


def resultant(f, g):
    """Resultant of two rational polynomials via the Sylvester determinant."""
    if f.is_zero() or g.is_zero():
        return 0
    n, m = f.degree, g.degree
    if n == 0:
        return f.coeffs[0] ** m
    if m == 0:
        return g.coeffs[0] ** n
    size = n + m
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(m):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in fc] + [Fraction(0)] * (size - n - 1 - i))
    for i in range(n):
        rows.append([Fraction(0)] * i + [Fraction(c) for c in gc] + [Fraction(0)] * (size - m - 1 - i))
    # fraction-free style elimination with Fractions (sizes here are tiny)
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            if rows[r][col] != 0:
                factor = rows[r][col] * inv
                for c in range(col, size):
                    rows[r][c] -= factor * rows[col][c]
    return det.numerator if det.denominator == 1 else det


def discriminant(f):
    """disc(f) for monic rational f."""
    n = f.degree
    res = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res

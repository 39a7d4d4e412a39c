"""Exact scalar arithmetic in the quantum parameter q.

Laurent polynomials with integer coefficients, optionally in a fractional
power q^(1/scale), and exact quotients of such.  Also the standard
q-combinatorics: balanced quantum integers [m], factorials, Gaussian
binomials, and the polynomials phi_m(x) = prod_{k<=m} (1 - x^k).

Everything here is exact integer/Fraction arithmetic; no floats anywhere.
Internally a Laurent polynomial is a dict mapping exponent numerators to
nonzero integer coefficients; a handful of raw-dict helpers are exported for
hot loops that want to skip object overhead.
"""

from fractions import Fraction
from math import gcd


# ---------------------------------------------------------------------------
# raw dict helpers (scale-1 hot paths; dicts map int exponent -> int coeff)
# ---------------------------------------------------------------------------

def dadd_into(acc, d, coeff=1, shift=0):
    """acc += coeff * q^shift * d, in place.  Drops zero entries."""
    if coeff == 0:
        return acc
    for e, c in d.items():
        e2 = e + shift
        v = acc.get(e2, 0) + coeff * c
        if v:
            acc[e2] = v
        else:
            acc.pop(e2, None)
    return acc


def dmul(a, b):
    """Product of two raw Laurent dicts."""
    if not a or not b:
        return {}
    out = {}
    if len(a) > len(b):
        a, b = b, a
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                del out[e]
    return out


def dshift(d, e):
    """q^e * d as a new dict."""
    if e == 0:
        return dict(d)
    return {k + e: c for k, c in d.items()}


def _dscale_exponents(d, f):
    """Multiply every exponent by the integer factor f."""
    if f == 1:
        return dict(d)
    return {k * f: c for k, c in d.items()}


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentScalar:
    """An element of Z[q^(1/scale), q^(-1/scale)].

    The coefficient dict maps exponent *numerators* (integers) to nonzero
    integer coefficients; the true exponent of a key k is k/scale.  Ordinary
    computations all live at scale 1; fractional scales only show up when
    pairing torus elements against weights off the root lattice.
    """

    __slots__ = ("scale", "c")

    def __init__(self, c=None, scale=1):
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        self.scale = scale
        self.c = c if c is not None else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({}, 1)

    @classmethod
    def one(cls):
        return cls({0: 1}, 1)

    @classmethod
    def integer(cls, n):
        return cls({0: n} if n else {}, 1)

    @classmethod
    def q_power(cls, e, coeff=1):
        """coeff * q^e, where e may be an int or a Fraction."""
        if coeff == 0:
            return cls.zero()
        if isinstance(e, Fraction):
            return cls({e.numerator: coeff}, e.denominator)
        return cls({e: coeff}, 1)

    @classmethod
    def from_terms(cls, terms):
        out = cls.zero()
        for e, coeff in terms:
            out = out + cls.q_power(e, coeff)
        return out

    # -- scale management --------------------------------------------------

    def normalized(self):
        """Equivalent scalar with the smallest possible scale."""
        if self.scale == 1 or not self.c:
            return LaurentScalar(dict(self.c), 1)
        g = self.scale
        for e in self.c:
            g = gcd(g, e)
            if g == 1:
                return self
        return LaurentScalar({e // g: c for e, c in self.c.items()},
                             self.scale // g)

    def _align(self, other):
        """Rewrite self and other over a common scale; returns (da, db, s)."""
        sa, sb = self.scale, other.scale
        if sa == sb:
            return self.c, other.c, sa
        g = gcd(sa, sb)
        s = sa // g * sb
        return (_dscale_exponents(self.c, s // sa),
                _dscale_exponents(other.c, s // sb), s)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.integer(other)
        da, db, s = self._align(other)
        out = dict(da)
        dadd_into(out, db)
        return LaurentScalar(out, s)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar({e: -c for e, c in self.c.items()}, self.scale)

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.integer(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentScalar.zero()
            return LaurentScalar({e: c * other for e, c in self.c.items()},
                                 self.scale)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        da, db, s = self._align(other)
        return LaurentScalar(dmul(da, db), s)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            e = self.q_power_exponent()
            if e is None:
                raise ValueError("negative power of a non-unit")
            return LaurentScalar.q_power(e * n)
        out = LaurentScalar.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def shift(self, e):
        """Multiply by q^e (e int or Fraction)."""
        return self * LaurentScalar.q_power(e)

    def bar(self):
        """The involution q -> q^(-1)."""
        return LaurentScalar({-e: c for e, c in self.c.items()}, self.scale)

    def exact_div(self, other):
        """Exact quotient self/other in Z[q^(1/s), q^(-1/s)].

        Raises ValueError when the division is not exact.  Works by long
        division on lowest-order terms, which is valid over Z because lowest
        coefficients multiply.
        """
        if isinstance(other, int):
            other = LaurentScalar.integer(other)
        if not other.c:
            raise ZeroDivisionError("division by zero scalar")
        da, db, s = self._align(other)
        if not da:
            return LaurentScalar.zero()
        rem = dict(da)
        lo_b = min(db)
        cb = db[lo_b]
        e_max = max(da) - max(db)  # exact quotients can't exceed this degree
        quot = {}
        # long division from the bottom exponent up
        while rem:
            lo_r = min(rem)
            cr = rem[lo_r]
            e = lo_r - lo_b
            if cr % cb or e > e_max:
                raise ValueError("inexact scalar division")
            k = cr // cb
            quot[e] = k
            dadd_into(rem, db, coeff=-k, shift=e)
        return LaurentScalar(quot, s)

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == {0: 1}

    def q_power_exponent(self):
        """If self == q^e exactly (coefficient 1), the exponent e; else None."""
        if len(self.c) != 1:
            return None
        (e, coeff), = self.c.items()
        if coeff != 1:
            return None
        return Fraction(e, self.scale)

    def unit_exponent_and_sign(self):
        """If self == +-q^e, return (e, sign); else None."""
        if len(self.c) != 1:
            return None
        (e, coeff), = self.c.items()
        if coeff == 1:
            return (Fraction(e, self.scale), 1)
        if coeff == -1:
            return (Fraction(e, self.scale), -1)
        return None

    def valuation(self):
        if not self.c:
            raise ValueError("zero scalar has no valuation")
        return Fraction(min(self.c), self.scale)

    def degree(self):
        if not self.c:
            raise ValueError("zero scalar has no degree")
        return Fraction(max(self.c), self.scale)

    def coeff(self, e):
        if isinstance(e, Fraction):
            num = e.numerator * self.scale
            if num % e.denominator:
                return 0
            return self.c.get(num // e.denominator, 0)
        return self.c.get(e * self.scale, 0)

    def terms(self):
        return sorted((Fraction(e, self.scale), c) for e, c in self.c.items())

    def integer_content(self):
        g = 0
        for c in self.c.values():
            g = gcd(g, abs(c))
        return g

    def value_at_one(self):
        return sum(self.c.values())

    def value_at_zero(self):
        """Limit at q -> 0; raises on a pole (negative valuation)."""
        if not self.c:
            return 0
        v = min(self.c)
        if v < 0:
            raise ValueError("pole at q = 0")
        return self.c.get(0, 0) if v == 0 else 0

    # -- protocol ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentScalar.integer(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        da, db, _ = self._align(other)
        return da == db

    def __hash__(self):
        n = self.normalized()
        return hash((n.scale, tuple(sorted(n.c.items()))))

    def __bool__(self):
        return bool(self.c)

    def __str__(self):
        if not self.c:
            return "0"
        bits = []
        for e, c in sorted(self.c.items()):
            exp = Fraction(e, self.scale)
            if exp == 0:
                t = str(abs(c))
            else:
                mag = "q" if exp == 1 else "q^%s" % exp
                t = mag if abs(c) == 1 else "%d*%s" % (abs(c), mag)
            bits.append(("- " if c < 0 else "+ ") + t)
        s = " ".join(bits)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return "LaurentScalar(%s)" % self

    # -- serialization -----------------------------------------------------

    def to_json(self):
        n = self.normalized()
        return {"scale": n.scale,
                "terms": sorted([e, c] for e, c in n.c.items())}

    @classmethod
    def from_json(cls, obj):
        return cls({int(e): int(c) for e, c in obj["terms"] if int(c)},
                   int(obj.get("scale", 1)))


# ---------------------------------------------------------------------------
# polynomial gcd (used to keep rational scalars reduced)
# ---------------------------------------------------------------------------

def _primitive(d):
    """(content, primitive dict with positive lowest coefficient)."""
    if not d:
        return 0, {}
    g = 0
    for c in d.values():
        g = gcd(g, abs(c))
    lo = min(d)
    sign = 1 if d[lo] > 0 else -1
    g *= sign
    return g, {e: c // g for e, c in d.items()}


def laurent_gcd(a, b):
    """A gcd of two scale-1 Laurent scalars, as a primitive polynomial.

    Uses the primitive pseudo-remainder sequence over Z after shifting both
    arguments to valuation 0.  The result is defined up to units; it is
    normalized primitive with positive lowest coefficient and valuation 0.
    """
    da = dshift(a.c, -min(a.c)) if a.c else {}
    db = dshift(b.c, -min(b.c)) if b.c else {}
    _, da = _primitive(da)
    _, db = _primitive(db)
    if not da:
        return LaurentScalar(db, 1)
    while db:
        # pseudo-remainder of da by db
        n, m = max(da) if da else 0, max(db)
        if not da:
            break
        if n < m:
            da, db = db, da
            n, m = m, n
        lc = db[m]
        rem = dict(da)
        while rem and max(rem) >= m:
            d = max(rem)
            cr = rem[d]
            # scale remainder so the leading terms cancel over Z
            if cr % lc:
                rem = {e: c * lc for e, c in rem.items()}
                cr = rem[d]
            dadd_into(rem, db, coeff=-(cr // lc), shift=d - m)
        if rem:
            v = min(rem)
            if v:
                rem = dshift(rem, -v)
            _, rem = _primitive(rem)
        da, db = db, rem
    _, da = _primitive(da)
    return LaurentScalar(da, 1)


# ---------------------------------------------------------------------------
# rational scalars
# ---------------------------------------------------------------------------

_GCD_SIZE_THRESHOLD = 64


class RationalScalar:
    """A quotient num/den of Laurent scalars, kept in a light normal form.

    The normal form: den has valuation 0, positive lowest coefficient, and
    the pair has integer content 1; exact divisions are attempted so that
    actual Laurent polynomials always normalize to den == 1.  A full
    polynomial gcd pass only runs when the operands grow past a size
    threshold, since the quotients arising here are usually tiny.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if isinstance(num, int):
            num = LaurentScalar.integer(num)
        if den is None:
            den = LaurentScalar.one()
        elif isinstance(den, int):
            den = LaurentScalar.integer(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _normalized:
            self.num, self.den = num, den
            return
        num, den = self._reduce(num, den)
        self.num, self.den = num, den

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return LaurentScalar.zero(), LaurentScalar.one()
        # fold unit denominators straight into the numerator
        u = den.unit_exponent_and_sign()
        if u is not None:
            e, sign = u
            num = num.shift(-e) * sign
            return num, LaurentScalar.one()
        # shift the denominator to valuation 0 (q powers are units)
        v = den.valuation()
        if v:
            num = num.shift(-v)
            den = den.shift(-v)
        # integer content
        g = gcd(num.integer_content(), den.integer_content())
        lo = min(den.c)
        if den.c[lo] < 0:
            g = -g
        if g != 1:
            num = LaurentScalar({e: c // g for e, c in num.c.items()},
                                num.scale)
            den = LaurentScalar({e: c // g for e, c in den.c.items()},
                                den.scale)
        # try the cheap exact division first
        try:
            q = num.exact_div(den)
            return q, LaurentScalar.one()
        except ValueError:
            pass
        if (len(num.c) + len(den.c) > _GCD_SIZE_THRESHOLD
                and num.scale == 1 and den.scale == 1):
            g = laurent_gcd(num, den)
            if not g.is_one():
                num = num.exact_div(g)
                den = den.exact_div(g)
        return num, den

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls(LaurentScalar.zero(), LaurentScalar.one(), _normalized=True)

    @classmethod
    def one(cls):
        return cls(LaurentScalar.one(), LaurentScalar.one(), _normalized=True)

    @classmethod
    def from_laurent(cls, l):
        return cls(l, LaurentScalar.one(), _normalized=True)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalScalar):
            return x
        if isinstance(x, LaurentScalar):
            return RationalScalar.from_laurent(x)
        if isinstance(x, int):
            return RationalScalar.from_laurent(LaurentScalar.integer(x))
        return None

    # -- field operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalScalar(self.num + o.num, self.den)
        return RationalScalar(self.num * o.den + o.num * self.den,
                              self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalScalar(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        return RationalScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalScalar(self.den, self.num)

    def bar(self):
        return RationalScalar(self.num.bar(), self.den.bar())

    # -- queries -----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_laurent(self):
        return self.den.is_one()

    def as_laurent(self):
        """The underlying Laurent scalar; exact or ValueError."""
        if self.den.is_one():
            return self.num
        return self.num.exact_div(self.den)

    def q_power_exponent(self):
        """If self == q^e exactly, the exponent e (Fraction); else None."""
        if len(self.num.c) != len(self.den.c) or self.num.is_zero():
            return None
        ea = self.num.valuation()
        eb = self.den.valuation()
        e = ea - eb
        if self.num == self.den.shift(e):
            return e
        return None

    def value_at_zero(self):
        """Limit at q -> 0 as a Fraction; raises on a pole."""
        if self.num.is_zero():
            return Fraction(0)
        a = self.num.valuation()
        b = self.den.valuation()
        if a > b:
            return Fraction(0)
        if a < b:
            raise ValueError("pole at q = 0")
        lo_n = min(self.num.c)
        lo_d = min(self.den.c)
        return Fraction(self.num.c[lo_n], self.den.c[lo_d])

    def value_at_one(self):
        d = self.den.value_at_one()
        if d == 0:
            raise ValueError("denominator vanishes at q = 1")
        return Fraction(self.num.value_at_one(), d)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __repr__(self):
        return "RationalScalar(%s)" % self

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(LaurentScalar.from_json(obj["num"]),
                   LaurentScalar.from_json(obj["den"]))


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def qint(m, d=1):
    """Balanced quantum integer [m] in q^d: (q^dm - q^-dm)/(q^d - q^-d)."""
    if m < 0:
        raise ValueError("negative quantum integer")
    return LaurentScalar({d * (m - 1 - 2 * k): 1 for k in range(m)}, 1)


def qfact(m, d=1):
    """Balanced quantum factorial [m]! in q^d."""
    out = LaurentScalar.one()
    for k in range(2, m + 1):
        out = out * qint(k, d)
    return out


def qbinom(n, k, d=1):
    """Balanced Gaussian binomial [n choose k] in q^d."""
    if k < 0 or k > n:
        return LaurentScalar.zero()
    num = LaurentScalar.one()
    for j in range(k):
        num = num * qint(n - j, d)
    return num.exact_div(qfact(k, d))


def phi(m, d=1):
    """phi_m(q^d) = prod_{k=1}^{m} (1 - q^(dk))."""
    out = LaurentScalar.one()
    for k in range(1, m + 1):
        out = out * LaurentScalar({0: 1, d * k: -1})
    return out

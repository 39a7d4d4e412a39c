"""Word model of U_q(n): the free algebra, its grading and the bilinear form.

Elements are finite linear combinations of words in the generators, tagged
with a side: "E" for U_q(n), "F" for U_q(n-).  Words are digit strings
("121" means E_1 E_2 E_1).  The Serre ideal is never divided out
syntactically; instead, the bilinear form between the two sides has the
Serre ideal as its kernel, so equality in U_q(n) is equality of pairings
against all F-words of the weight.

The form is determined by (E_i, F_j) = delta_ij / (1 - q_i^2) together with
its multiplicativity with respect to the coproducts; concretely it is
computed by a letter-deletion recursion whose q-powers come from commuting
K-factors past generators.  Both one-sided recursions (deleting from the F
word or from the E word) are implemented; they agree, and on short words
they agree with a literal tensor-expansion of the coproduct.
"""

from .scalar import LaurentScalar, RationalScalar, qbinom
from . import linalg

DEFAULT_HEIGHT_CAP = 8


def weight_of_word(cartan, word):
    """Weight of a word in simple-root coordinates."""
    c = [0] * cartan.n
    for ch in word:
        c[int(ch) - 1] += 1
    return tuple(c)


def all_words_of_weight(cartan, weight):
    """All words with the given alpha-coordinate weight, in lex order."""
    letters = []
    for i, k in enumerate(weight):
        letters.extend([str(i + 1)] * k)
    out = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(prefix)
            return
        used = set()
        for idx, ch in enumerate(remaining):
            if ch in used:
                continue
            used.add(ch)
            rec(prefix + ch, remaining[:idx] + remaining[idx + 1:])
        return

    rec("", "".join(sorted(letters)))
    return out


class WordElement:
    """A linear combination of words on one side ("E" or "F")."""

    __slots__ = ("cartan", "side", "terms")

    def __init__(self, cartan, side, terms=None):
        if side not in ("E", "F"):
            raise ValueError("side must be 'E' or 'F'")
        self.cartan = cartan
        self.side = side
        self.terms = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _coerce_scalar(c)
                if not c.is_zero():
                    acc = self.terms.get(w)
                    s = c if acc is None else acc + c
                    if s.is_zero():
                        self.terms.pop(w, None)
                    else:
                        self.terms[w] = s

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, cartan, side="E"):
        return cls(cartan, side)

    @classmethod
    def generator(cls, cartan, i, side="E"):
        """The generator E_i (or F_i), 1-based index."""
        return cls(cartan, side, {str(i): RationalScalar.one()})

    @classmethod
    def from_word(cls, cartan, word, side="E", coeff=None):
        c = RationalScalar.one() if coeff is None else _coerce_scalar(coeff)
        return cls(cartan, side, {word: c})

    # -- ring structure --------------------------------------------------------

    def _check(self, other):
        if self.cartan is not other.cartan or self.side != other.side:
            raise ValueError("mixed sides or Cartan data")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return WordElement(self.cartan, self.side, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return WordElement(self.cartan, self.side,
                           {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WordElement):
            self._check(other)
            t = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    s = t.get(w)
                    s = c if s is None else s + c
                    if s.is_zero():
                        t.pop(w, None)
                    else:
                        t[w] = s
            return WordElement(self.cartan, self.side, t)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = _coerce_scalar(c)
        if c.is_zero():
            return WordElement(self.cartan, self.side)
        return WordElement(self.cartan, self.side,
                           {w: cc * c for w, cc in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, WordElement):
            return NotImplemented
        return (self.side == other.side and self.cartan is other.cartan
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.side, tuple(sorted(
            (w, c) for w, c in self.terms.items()))))

    # -- grading ----------------------------------------------------------------

    def weight(self):
        """Common weight of all words (alpha coords); None for 0; raises
        if the element is not homogeneous."""
        wt = None
        for w in self.terms:
            x = weight_of_word(self.cartan, w)
            if wt is None:
                wt = x
            elif wt != x:
                raise ValueError("element is not weight-homogeneous")
        return wt

    def height(self):
        wt = self.weight()
        return 0 if wt is None else sum(wt)

    # -- involutions -------------------------------------------------------------

    def eta(self):
        """Bar involution: fixes words, conjugates coefficients q -> 1/q."""
        return WordElement(self.cartan, self.side,
                           {w: c.bar() for w, c in self.terms.items()})

    def sigma(self):
        """The q-linear antiautomorphism: reverses words, keeps coefficients."""
        return WordElement(self.cartan, self.side,
                           {w[::-1]: c for w, c in self.terms.items()})

    # -- io -----------------------------------------------------------------------

    def to_json(self):
        return {"side": self.side,
                "terms": [[w, c.to_json()] for w, c in
                          sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, cartan, data):
        return cls(cartan, data["side"],
                   {w: RationalScalar.from_json(c) for w, c in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "0_%s" % self.side
        bits = []
        for w, c in sorted(self.terms.items()):
            bits.append("(%s)*%s" % (c, w))
        return " + ".join(bits)


def _coerce_scalar(c):
    if isinstance(c, RationalScalar):
        return c
    if isinstance(c, LaurentScalar):
        return RationalScalar.from_laurent(c)
    if isinstance(c, int):
        return RationalScalar.from_laurent(LaurentScalar.integer(c))
    raise TypeError("cannot coerce %r to a scalar" % (c,))


# ---------------------------------------------------------------------------
# the bilinear form
# ---------------------------------------------------------------------------

_NUM_CACHE = {}


def _pair_numerator(cartan, eword, fword):
    """Numerator N(e, f): the pairing of words times prod_i (1 - q_i^2).

    Recursion deleting the first letter of the F word: commuting the K-factor
    of a deleted E letter past the earlier E letters contributes
    q^{(prefix, alpha_j)}.
    """
    if len(eword) != len(fword):
        return LaurentScalar.zero()
    key = (cartan.label, eword, fword)
    hit = _NUM_CACHE.get(key)
    if hit is not None:
        return hit
    if not eword:
        return LaurentScalar.one()
    j = fword[0]
    rest = fword[1:]
    acc = LaurentScalar.zero()
    aj = int(j) - 1
    for t, ch in enumerate(eword):
        if ch != j:
            continue
        # (alpha_{e_1} + ... + alpha_{e_{t-1}}, alpha_j)
        e = 0
        for p in range(t):
            ip = int(eword[p]) - 1
            e += cartan.d[ip] * cartan.A[ip][aj]
        sub = _pair_numerator(cartan, eword[:t] + eword[t + 1:], rest)
        if not sub.is_zero():
            acc = acc + sub.shift(e)
    _NUM_CACHE[key] = acc
    return acc


def _pair_numerator_eside(cartan, eword, fword):
    """Same numerator via the mirrored recursion deleting from the E word."""
    if len(eword) != len(fword):
        return LaurentScalar.zero()
    if not eword:
        return LaurentScalar.one()
    j = eword[0]
    rest = eword[1:]
    acc = LaurentScalar.zero()
    aj = int(j) - 1
    for t, ch in enumerate(fword):
        if ch != j:
            continue
        e = 0
        for p in range(t):
            ip = int(fword[p]) - 1
            e += cartan.d[ip] * cartan.A[ip][aj]
        sub = _pair_numerator_eside(cartan, rest, fword[:t] + fword[t + 1:])
        if not sub.is_zero():
            acc = acc + sub.shift(e)
    return acc


def _denominator(cartan, weight):
    """prod_i (1 - q_i^2)^{m_i} for the weight in alpha coords."""
    d = LaurentScalar.one()
    for i, m in enumerate(weight):
        f = LaurentScalar.one() - LaurentScalar.q_power(2 * cartan.d[i])
        for _ in range(m):
            d = d * f
    return d


def pair_words(cartan, eword, fword):
    """The bilinear form on a pair of words, as a RationalScalar."""
    n = _pair_numerator(cartan, eword, fword)
    if n.is_zero():
        return RationalScalar.zero()
    den = _denominator(cartan, weight_of_word(cartan, eword))
    return RationalScalar(n, den)


def drinfeld_pair(x, y):
    """The bilinear form between an E-side and an F-side element."""
    if x.side == "F" and y.side == "E":
        x, y = y, x
    if x.side != "E" or y.side != "F":
        raise ValueError("need one E-side and one F-side element")
    acc = RationalScalar.zero()
    for we, ce in x.terms.items():
        for wf, cf in y.terms.items():
            if len(we) != len(wf):
                continue
            p = pair_words(x.cartan, we, wf)
            if not p.is_zero():
                acc = acc + ce * cf * p
    return acc


def coproduct_pair_oracle(cartan, eword, fword):
    """Independent check of the form on words of length <= 2.

    Expands the coproduct of the E word literally into tensor slots with
    K-factors, commutes K's to the right in each slot, and pairs slotwise
    against the factors of the F word.
    """
    if len(eword) != len(fword):
        return RationalScalar.zero()
    ci = [RationalScalar.one()
          / RationalScalar.from_laurent(
              LaurentScalar.one() - LaurentScalar.q_power(2 * cartan.d[k]))
          for k in range(cartan.n)]
    if len(eword) == 0:
        return RationalScalar.one()
    if len(eword) == 1:
        if eword == fword:
            return ci[int(eword) - 1]
        return RationalScalar.zero()
    if len(eword) != 2:
        raise ValueError("oracle only covers words of length <= 2")
    a, b = int(eword[0]) - 1, int(eword[1]) - 1
    c, d = int(fword[0]) - 1, int(fword[1]) - 1
    acc = RationalScalar.zero()
    # Delta(E_a E_b) = E_aE_b ox 1 + E_a K_b ox E_b + K_a E_b ox E_a
    #                + K_aK_b ox E_aE_b ; only middle terms pair with F_c ox F_d.
    if a == c and b == d:
        acc = acc + ci[a] * ci[b]
    if b == c and a == d:
        e = cartan.d[a] * cartan.A[a][b]
        acc = acc + RationalScalar.from_laurent(
            LaurentScalar.q_power(e)) * ci[a] * ci[b]
    return acc


# ---------------------------------------------------------------------------
# Serre elements and weight-space bases
# ---------------------------------------------------------------------------

def serre_element(cartan, i, j, side="E"):
    """The integral quantum Serre relation in generators i != j (1-based).

    sum_{r+s=1-a_ij} (-1)^r [1-a_ij choose r]_{q_i} * word(i^r j i^s).
    """
    if i == j:
        raise ValueError("need two distinct generators")
    ai, aj = i - 1, j - 1
    m = 1 - cartan.A[ai][aj]
    terms = {}
    for r in range(m + 1):
        s = m - r
        w = str(i) * r + str(j) + str(i) * s
        coeff = RationalScalar.from_laurent(qbinom(m, r, cartan.d[ai]))
        if r % 2:
            coeff = -coeff
        terms[w] = coeff
    return WordElement(cartan, side, terms)


def serre_ideal_words(cartan, weight, side="E"):
    """Spanning elements w1 * S_ij * w2 of the Serre ideal in one weight."""
    out = []
    for i in range(1, cartan.n + 1):
        for j in range(1, cartan.n + 1):
            if i == j:
                continue
            s = serre_element(cartan, i, j, side)
            swt = s.weight()
            rem = tuple(a - b for a, b in zip(weight, swt))
            if any(x < 0 for x in rem):
                continue
            for left in all_words_of_weight(cartan, rem):
                for cut in range(len(left) + 1):
                    w1, w2 = left[:cut], left[cut:]
                    out.append(
                        WordElement(cartan, side, {w1: RationalScalar.one()})
                        * s *
                        WordElement(cartan, side, {w2: RationalScalar.one()}))
    # dedupe
    seen = set()
    uniq = []
    for x in out:
        key = tuple(sorted((w, str(c)) for w, c in x.terms.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(x)
    return uniq


class WeightSpaceBasis:
    """A weight space of the free algebra with its form and quotient data.

    words: all words of the weight in lex order.  gram[r][c] pairs E-word r
    against F-word c.  pivots: the first columns that are linearly
    independent, scanning in word order; their count is the dimension of the
    Serre quotient in this weight (the Kostant partition number).
    """

    def __init__(self, cartan, weight, height_cap=None):
        cap = DEFAULT_HEIGHT_CAP if height_cap is None else height_cap
        if sum(weight) > cap:
            raise ValueError("height %d exceeds cap %d"
                             % (sum(weight), cap))
        self.cartan = cartan
        self.weight = tuple(weight)
        self.words = tuple(all_words_of_weight(cartan, weight))
        self.gram = [[pair_words(cartan, we, wf) for wf in self.words]
                     for we in self.words]
        rank, pivots = linalg.rank_and_pivot_columns(self.gram)
        self.rank = rank
        self.pivots = pivots
        self._pivot_inv = None

    def pivot_words(self):
        return tuple(self.words[i] for i in self.pivots)

    def pairing_vector(self, x):
        """Pairings of an E-side element against every F-word, in order."""
        out = []
        for wf in self.words:
            acc = RationalScalar.zero()
            for we, ce in x.terms.items():
                p = pair_words(self.cartan, we, wf)
                if not p.is_zero():
                    acc = acc + ce * p
            out.append(acc)
        return out

    def quotient_coords(self, x):
        """Coordinates of x in the quotient w.r.t. the pivot-word basis.

        Solves against the pivot submatrix, then verifies the remaining
        pairings, so a wrong spanning assumption fails loudly.
        """
        if x.is_zero():
            return [RationalScalar.zero()] * self.rank
        if x.weight() != self.weight:
            raise ValueError("weight mismatch")
        vec = self.pairing_vector(x)
        if self._pivot_inv is None:
            sub = [[self.gram[r][c] for c in self.pivots]
                   for r in self.pivots]
            self._pivot_inv = linalg.invert(sub)
        rhs = [vec[c] for c in self.pivots]
        coords = linalg.mat_vec(self._pivot_inv, rhs)
        # verify on the full pairing vector
        for c in range(len(self.words)):
            acc = RationalScalar.zero()
            for k, r in enumerate(self.pivots):
                if not coords[k].is_zero():
                    acc = acc + coords[k] * self.gram[r][c]
            if not (acc - vec[c]).is_zero():
                raise RuntimeError("element not in the span of pivot words")
        return coords

    def is_zero_in_quotient(self, x):
        return all(v.is_zero() for v in self.pairing_vector(x))

    def equal_in_quotient(self, x, y):
        return self.is_zero_in_quotient(x - y)

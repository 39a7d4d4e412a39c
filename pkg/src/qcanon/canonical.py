"""Canonical and dual-canonical bases of U_q(n).

For a fixed PBW frame (one reduced word of the longest Weyl element) the
canonical basis element B(m) is the unique bar-invariant element in
E(m) + q Z[q]-span of the other PBW monomials; the matrix is found by the
classical triangular fix-up against the bar matrix, which in turn is
assembled multiplicatively from the bar images of the root vectors so that
no large word space is ever materialized.

The dual basis B*(m) is built from the inverse-transpose of the canonical
matrix against the twisted PBW pairing, then normalized so that its top
dual-PBW coefficient has lowest term exactly 1.  Each element is certified
against the twisted bar identity

    eta(B*(m)) = (-1)^{ht b} q^{-(b,b)/2 - sum_i d_i b_i} sigma(B*(m))

with b the weight of m, eta the bar involution and sigma the word-reversal
antiautomorphism.
"""

from .scalar import LaurentScalar, RationalScalar, qfact
from .pbw import PBWFrame, PBWElement
from . import linalg

_ONE = RationalScalar.one
_ZERO = RationalScalar.zero


def _qp(e, c=1):
    return RationalScalar.from_laurent(LaurentScalar.q_power(e, c))


def _as_laurent(r):
    return r.as_laurent()


# ---------------------------------------------------------------------------
# bar and sigma through the straightening engine
# ---------------------------------------------------------------------------

def _root_image_coords(frame, s, which):
    """PBW coordinates of eta/sigma of the root vector E_{beta_s}."""
    cache = _frame_state(frame).setdefault(("root", which), {})
    hit = cache.get(s)
    if hit is None:
        rv = frame.root_vectors()[s]
        img = rv.eta() if which == "bar" else rv.sigma()
        hit = frame.pbw_coordinates(img)
        cache[s] = hit
    return hit


def _frame_state(frame):
    st = getattr(frame, "_canonical_state", None)
    if st is None:
        st = {}
        frame._canonical_state = st
    return st


def _image_power(frame, s, k, which):
    """eta/sigma of E_{beta_s}^{(k)} as a PBWElement."""
    cache = _frame_state(frame).setdefault(("power", which), {})
    key = (s, k)
    hit = cache.get(key)
    if hit is None:
        base = PBWElement(frame, _root_image_coords(frame, s, which))
        acc = base
        for _ in range(k - 1):
            acc = acc * base
        if k >= 2:
            acc = acc.scale(
                _ONE() / RationalScalar.from_laurent(
                    qfact(k, frame.beta_pair_half(s))))
        cache[key] = acc
        hit = acc
    return hit


def bar_monomial(frame, m):
    """eta(E(m)) as a PBWElement (bar fixes [k]!-scalars, so the image is
    the ordered product of the bar images of the divided root powers)."""
    cache = _frame_state(frame).setdefault("bar_monomial", {})
    m = tuple(m)
    hit = cache.get(m)
    if hit is None:
        acc = None
        for s in range(frame.N - 1, -1, -1):
            if not m[s]:
                continue
            factor = _image_power(frame, s, m[s], "bar")
            acc = factor if acc is None else acc * factor
        if acc is None:
            acc = PBWElement.monomial(frame, m)
        cache[m] = acc
        hit = acc
    return hit


def sigma_monomial(frame, m):
    """sigma(E(m)): antiautomorphism, so the factor order reverses."""
    cache = _frame_state(frame).setdefault("sigma_monomial", {})
    m = tuple(m)
    hit = cache.get(m)
    if hit is None:
        acc = None
        for s in range(frame.N):
            if not m[s]:
                continue
            factor = _image_power(frame, s, m[s], "sigma")
            acc = factor if acc is None else acc * factor
        if acc is None:
            acc = PBWElement.monomial(frame, m)
        cache[m] = acc
        hit = acc
    return hit


def bar_element(frame, x):
    """eta of a PBWElement (conjugates coefficients, bars monomials)."""
    acc = PBWElement(frame)
    for m, c in x.terms.items():
        acc = acc + bar_monomial(frame, m).scale(c.bar())
    return acc


def sigma_element(frame, x):
    """sigma of a PBWElement (coefficients are fixed, sigma is q-linear)."""
    acc = PBWElement(frame)
    for m, c in x.terms.items():
        acc = acc + sigma_monomial(frame, m).scale(c)
    return acc


# ---------------------------------------------------------------------------
# the per-weight slice: bar matrix, canonical matrix, dual basis
# ---------------------------------------------------------------------------

class WeightSlice:
    """All basis data of one weight space in one frame.

    Fields:
      indices   -- PBW indices of the weight, lex ascending
      bar       -- M[i][j]: coefficient of E(indices[i]) in eta(E(indices[j]))
      canonical -- C[i][j]: coefficient of E(indices[i]) in B(indices[j])
      grams     -- (E(m), f_tilde(m)) per index (closed form)
      normalizers -- nu per index: B*(m) = (raw dual)(m) / nu
    """

    def __init__(self, frame, weight):
        self.frame = frame
        self.weight = tuple(weight)
        self.indices = frame.indices_of_weight(self.weight)
        self.pos = {m: i for i, m in enumerate(self.indices)}
        self._bar = None
        self._canonical = None
        self._ctrans_inv = None
        self._grams = None
        self._normalizers = None
        self._bstar = {}

    # -- bar matrix ---------------------------------------------------------

    def bar_matrix(self):
        if self._bar is not None:
            return self._bar
        k = len(self.indices)
        M = [[LaurentScalar.zero() for _ in range(k)] for _ in range(k)]
        for j, m in enumerate(self.indices):
            img = bar_monomial(self.frame, m)
            for n, c in img.terms.items():
                i = self.pos.get(n)
                if i is None:
                    raise RuntimeError("bar image left the weight space")
                M[i][j] = _as_laurent(c)
        # unitriangularity with lex-larger supports
        for j, m in enumerate(self.indices):
            if not M[j][j].is_one():
                raise RuntimeError("bar matrix diagonal is not 1 at %s"
                                   % (m,))
            for i in range(j):
                if not M[i][j].is_zero():
                    raise RuntimeError(
                        "bar image of %s has a lex-smaller term" % (m,))
        self._bar = M
        return M

    # -- canonical matrix -----------------------------------------------------

    def canonical_matrix(self):
        """C with B(m) = sum_n C[n][m] E(n): bar-invariant, unitriangular,
        off-diagonal entries in q Z[q]."""
        if self._canonical is not None:
            return self._canonical
        M = self.bar_matrix()
        k = len(self.indices)
        C = [[LaurentScalar.zero() for _ in range(k)] for _ in range(k)]
        for j in range(k):
            col = [LaurentScalar.zero() for _ in range(k)]
            col[j] = LaurentScalar.one()
            while True:
                # defect = M cbar - c
                defect = None
                low = None
                for i in range(j, k):
                    acc = LaurentScalar.zero()
                    for t in range(j, i + 1):
                        if not col[t].is_zero() and not M[i][t].is_zero():
                            acc = acc + M[i][t] * col[t].bar()
                    acc = acc - col[i]
                    if not acc.is_zero():
                        low = i
                        defect = acc
                        break
                if low is None:
                    break
                # solve r - bar(r) = defect with r in qZ[q]
                r = LaurentScalar.zero()
                for e, ce in defect.terms():
                    if e == 0:
                        raise RuntimeError(
                            "bar defect has a constant term; no canonical "
                            "solution at %s" % (self.indices[j],))
                    if e > 0:
                        if defect.coeff(-e) != -ce:
                            raise RuntimeError(
                                "bar defect is not antisymmetric at %s"
                                % (self.indices[j],))
                        r = r + LaurentScalar.q_power(e, ce)
                col[low] = col[low] + r
            for i in range(k):
                C[i][j] = col[i]
            # certification: unitriangular with qZ[q] off-diagonal
            if not C[j][j].is_one():
                raise RuntimeError("canonical diagonal is not 1")
            for i in range(k):
                if i != j and not C[i][j].is_zero():
                    if C[i][j].valuation() <= 0:
                        raise RuntimeError(
                            "canonical entry not in qZ[q] at %s"
                            % (self.indices[j],))
        self._canonical = C
        return C

    def canonical_element(self, m):
        C = self.canonical_matrix()
        j = self.pos[tuple(m)]
        return PBWElement(
            self.frame,
            {n: RationalScalar.from_laurent(C[i][j])
             for i, n in enumerate(self.indices)
             if not C[i][j].is_zero()})

    # -- dual basis ------------------------------------------------------------

    def grams(self):
        if self._grams is None:
            self._grams = [self.frame.dual_gram_closed(m)
                           for m in self.indices]
        return self._grams

    def _ct_inverse(self):
        if self._ctrans_inv is None:
            C = self.canonical_matrix()
            k = len(self.indices)
            ct = [[RationalScalar.from_laurent(C[j][i]) for j in range(k)]
                  for i in range(k)]
            self._ctrans_inv = linalg.invert(ct)
        return self._ctrans_inv

    def dual_raw(self, m):
        """The element dual to sigma-Omega of the canonical family:
        (dual_raw(m), sigma Omega B(n)) = delta_{mn}."""
        G = self._ct_inverse()
        grams = self.grams()
        j = self.pos[tuple(m)]
        terms = {}
        for i, n in enumerate(self.indices):
            if not G[i][j].is_zero():
                terms[n] = G[i][j] / grams[i]
        return PBWElement(self.frame, terms)

    def normalizer(self, m):
        """The signed q-power nu: lowest term of the coefficient of E(m)* in
        dual_raw(m), which equals 1/(gram_m * dual_scalar(m))."""
        if self._normalizers is None:
            self._normalizers = {}
        mm = tuple(m)
        hit = self._normalizers.get(mm)
        if hit is None:
            i = self.pos[mm]
            lead = (_ONE() / (self.grams()[i]
                              * RationalScalar.from_laurent(
                                  self.frame.dual_scalar(mm))))
            ll = _as_laurent(lead)
            v = ll.valuation()
            hit = LaurentScalar.q_power(v, ll.coeff(v))
            self._normalizers[mm] = hit
        return hit

    def dual_canonical_element(self, m):
        mm = tuple(m)
        hit = self._bstar.get(mm)
        if hit is None:
            nu = RationalScalar.from_laurent(self.normalizer(mm))
            hit = self.dual_raw(mm).scale(_ONE() / nu)
            self._bstar[mm] = hit
        return hit

    def bstar_coordinates(self, x):
        """Coordinates of a PBWElement of this weight in the B* basis."""
        C = self.canonical_matrix()
        grams = self.grams()
        out = {}
        for j, n in enumerate(self.indices):
            t = _ZERO()
            for m, c in x.terms.items():
                i = self.pos.get(m)
                if i is None:
                    raise ValueError("element not in this weight space")
                if not C[i][j].is_zero():
                    t = t + c * grams[i] * RationalScalar.from_laurent(C[i][j])
            if not t.is_zero():
                out[n] = t * RationalScalar.from_laurent(self.normalizer(n))
        return out


def weight_slice(frame, weight):
    cache = _frame_state(frame).setdefault("slices", {})
    weight = tuple(weight)
    hit = cache.get(weight)
    if hit is None:
        hit = WeightSlice(frame, weight)
        cache[weight] = hit
    return hit


# ---------------------------------------------------------------------------
# top-level operations
# ---------------------------------------------------------------------------

def canonical_element(frame, m):
    """B(m) as a PBWElement."""
    return weight_slice(frame, frame.index_weight(m)).canonical_element(m)


def dual_canonical_element(frame, m):
    """B*(m) as a PBWElement."""
    return weight_slice(frame,
                        frame.index_weight(m)).dual_canonical_element(m)


def bstar_coordinates(frame, x):
    """Expand a weight-homogeneous PBWElement in the B* basis."""
    if x.is_zero():
        return {}
    return weight_slice(frame, x.weight()).bstar_coordinates(x)


def is_dual_canonical(frame, x):
    """(True, m, exponent) if x = q^exponent B*(m); else (False, None, None).

    A q-power multiple of a dual canonical basis vector counts; any sign or
    multi-term combination does not.
    """
    if x.is_zero():
        return (False, None, None)
    coords = bstar_coordinates(frame, x)
    if len(coords) != 1:
        return (False, None, None)
    (m, c), = coords.items()
    e = c.q_power_exponent()
    if e is None:
        return (False, None, None)
    return (True, m, e)


def lusztig_parametrization(frame, x):
    """The PBW index m with x = q^k B*(m); raises if x is not of that form."""
    ok, m, e = is_dual_canonical(frame, x)
    if not ok:
        raise ValueError("element is not a q-power multiple of a dual "
                         "canonical basis vector")
    return m, e


def twisted_bar_scalar(frame, weight):
    """(-1)^{ht b} q^{-(b,b)/2 - sum d_i b_i} for b the weight."""
    cartan = frame.cartan
    ht = sum(weight)
    bb2 = cartan.pair_alpha(weight, weight)
    if bb2 % 2:
        raise RuntimeError("(b,b) odd")
    expo = -bb2 // 2 - sum(cartan.d[i] * weight[i]
                           for i in range(cartan.n))
    return _qp(expo, -1 if ht % 2 else 1)


def check_twisted_identity(frame, m):
    """Verify eta(B*(m)) = c_b sigma(B*(m)) exactly; returns c_b."""
    x = dual_canonical_element(frame, m)
    lhs = bar_element(frame, x)
    c = twisted_bar_scalar(frame, frame.index_weight(m))
    rhs = sigma_element(frame, x).scale(c)
    if lhs != rhs:
        raise AssertionError("twisted bar identity fails at %s" % (m,))
    return c


def sigma_parametrization(frame, m):
    """The index n with sigma(B*(m)) = q^k B*(n); returns (n, k)."""
    x = dual_canonical_element(frame, m)
    sx = sigma_element(frame, x)
    coords = bstar_coordinates(frame, sx)
    if len(coords) != 1:
        raise RuntimeError("sigma image is not a single dual basis vector")
    (n, c), = coords.items()
    e = c.q_power_exponent()
    if e is None:
        raise RuntimeError("sigma image coefficient is not a q-power")
    return n, e


def q_commute_check(x, y):
    """(True, c) if xy = q^c yx (nonzero products), else (False, None)."""
    xy = x * y
    yx = y * x
    if xy.is_zero() and yx.is_zero():
        return (True, 0)
    if xy.is_zero() or yx.is_zero():
        return (False, None)
    if set(xy.terms) != set(yx.terms):
        return (False, None)
    ratio = None
    for m, c in xy.terms.items():
        r = c / yx.terms[m]
        if ratio is None:
            ratio = r
        elif ratio != r:
            return (False, None)
    e = ratio.q_power_exponent()
    if e is None:
        return (False, None)
    return (True, e)

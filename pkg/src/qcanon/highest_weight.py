"""Simple highest-weight modules and matrix-coefficient elements.

The first half builds the finite-dimensional simple module V(lam) over the
quantized enveloping algebra as the quotient of U_q(n^-) v_lam by the
radical of the contravariant form, one weight space at a time, certifying
every weight multiplicity against the Freudenthal recursion and the total
dimension against the Weyl formula.

The second half turns linear functionals on the negative part into elements
of U_q(n) through the dual PBW basis:  for the functional
u |-> v*(u v_lam), with v* dual to the extremal vector of weight y(lam),
the representing element is a quantum minor; for y = w0 it is q-central.
Because the dual pair (E(m)*, F(n)) is exactly biorthogonal, the
coordinates of the representing element are the values of the functional on
the F-side dual basis -- no linear solve is involved.
"""

from .canonical import bstar_coordinates
from .cartan import freudenthal_multiplicities, weyl_dim
from .linalg import rank_and_pivot_columns, solve_square
from .pbw import PBWElement
from .scalar import LaurentScalar, RationalScalar, qfact, qint


def _qp(e, c=1):
    return RationalScalar.from_laurent(LaurentScalar.q_power(e, c))


def _qint_signed(m, d):
    """The balanced quantum integer [m]_{q^d} for m of either sign."""
    if m >= 0:
        return RationalScalar.from_laurent(qint(m, d))
    return -RationalScalar.from_laurent(qint(-m, d))


def _vec_add(out, vid, c):
    acc = out.get(vid)
    acc = c if acc is None else acc + c
    if acc.is_zero():
        out.pop(vid, None)
    else:
        out[vid] = acc


_EMPTY = {}


class SimpleModule:
    """The simple integrable module V(lam) with its contravariant form.

    Vectors are dictionaries mapping basis-vector ids to scalars; id 0 is
    the highest weight vector and every other basis vector is F_i applied
    to an earlier one (recorded in ``parent``).  Construction runs down the
    weight poset: at each new weight the spanning vectors F_i b are paired
    through <F_i x, y> = <x, E_i y>, the pivot columns of the pairing
    matrix become the basis, and every spanning vector is stored expanded
    in that basis -- this quotients out the radical of the form, so the
    result is the simple module rather than the Verma module.

    The rank found at each weight must match the Freudenthal multiplicity
    and the total dimension the Weyl formula, otherwise construction
    raises.
    """

    def __init__(self, cartan, lam, dim_cap=200000):
        self.cartan = cartan
        self.lam = tuple(int(x) for x in lam)
        if len(self.lam) != cartan.n or any(x < 0 for x in self.lam):
            raise ValueError("highest weight must be dominant integral")
        self.dim = weyl_dim(cartan, self.lam)
        if self.dim > dim_cap:
            raise ValueError("dim V(lam) = %d exceeds cap" % self.dim)
        mults = freudenthal_multiplicities(cartan, self.lam)
        self._alpha_w = [
            cartan.alpha_to_w(tuple(1 if j == i else 0
                                    for j in range(cartan.n)))
            for i in range(cartan.n)]
        self.weight_of = [self.lam]
        self.parent = [None]
        self.basis_at = {self.lam: [0]}
        self.gram_at = {self.lam: [[RationalScalar.one()]]}
        self._pos = {self.lam: {0: 0}}
        self._etab = {}
        self._ftab = {}
        for j in range(cartan.n):
            self._etab[(j, 0)] = {}
        level = [self.lam]
        while level:
            nxt = set()
            for mu in level:
                for i in range(cartan.n):
                    nu = tuple(a - b for a, b in zip(mu, self._alpha_w[i]))
                    if nu in mults and nu not in self.basis_at:
                        nxt.add(nu)
            level = sorted(nxt)
            for nu in level:
                self._build_weight_space(nu, mults[nu])
        if len(self.weight_of) != self.dim:
            raise RuntimeError("built %d vectors, Weyl dimension is %d"
                               % (len(self.weight_of), self.dim))
        if set(self.basis_at) != set(mults):
            raise RuntimeError("weight support mismatch")

    # -- construction -------------------------------------------------------

    def _build_weight_space(self, nu, want):
        cartan = self.cartan
        spanning = []
        for i in range(cartan.n):
            up = tuple(a + b for a, b in zip(nu, self._alpha_w[i]))
            for pid in self.basis_at.get(up, ()):
                spanning.append((i, pid))
        if not spanning:
            raise RuntimeError("no spanning vectors at weight %s" % (nu,))
        # E_j F_i b = F_i E_j b + delta_ij [<wt b, alpha_j-check>]_{q_j} b
        eact = []
        for (i, pid) in spanning:
            acts = []
            for j in range(cartan.n):
                vec = self.apply_f(i, self._etab[(j, pid)])
                if i == j:
                    c = _qint_signed(self.weight_of[pid][j], cartan.d[j])
                    if not c.is_zero():
                        _vec_add(vec, pid, c)
                acts.append(vec)
            eact.append(acts)
        # pairing matrix: <F_i b, s> = <b, E_i s>
        pair = []
        for a, (i, pid) in enumerate(spanning):
            pair.append([self._pair_id_vec(pid, eact[b][i])
                         for b in range(len(spanning))])
        for a in range(len(spanning)):
            for b in range(a):
                if pair[a][b] != pair[b][a]:
                    raise RuntimeError("contravariant form not symmetric "
                                       "at weight %s" % (nu,))
        rank, pivots = rank_and_pivot_columns(pair)
        if rank != want:
            raise RuntimeError(
                "form rank %d at weight %s; Freudenthal multiplicity is %d"
                % (rank, nu, want))
        ids = []
        pos = {}
        for t in pivots:
            vid = len(self.weight_of)
            self.weight_of.append(nu)
            self.parent.append(spanning[t])
            pos[vid] = len(ids)
            ids.append(vid)
        self.basis_at[nu] = ids
        self._pos[nu] = pos
        gram = [[pair[a][b] for b in pivots] for a in pivots]
        self.gram_at[nu] = gram
        # every spanning vector, expanded in the new basis: the pairing
        # functionals of the pivot rows separate the quotient space
        for s, (i, pid) in enumerate(spanning):
            col = [pair[a][s] for a in pivots]
            sol = solve_square(gram, col)
            self._ftab[(i, pid)] = {
                vid: c for vid, c in zip(ids, sol) if not c.is_zero()}
        for t, vid in zip(pivots, ids):
            for j in range(cartan.n):
                self._etab[(j, vid)] = eact[t][j]

    # -- linear and bilinear structure ---------------------------------------

    def highest(self):
        return {0: RationalScalar.one()}

    def vid_weight(self, vid):
        return self.weight_of[vid]

    def vec_weight(self, vec):
        wts = {self.weight_of[vid] for vid in vec}
        if len(wts) != 1:
            raise ValueError("vector is zero or not weight-homogeneous")
        return wts.pop()

    def dim_of_weight(self, wt):
        return len(self.basis_at.get(tuple(wt), ()))

    def _pair_id_vec(self, vid, vec):
        wt = self.weight_of[vid]
        gram = self.gram_at[wt]
        pos = self._pos[wt]
        row = gram[pos[vid]]
        acc = RationalScalar.zero()
        for wid, c in vec.items():
            acc = acc + c * row[pos[wid]]
        return acc

    def pairing(self, u, v):
        """The contravariant form <u, v> (cross-weight terms vanish)."""
        acc = RationalScalar.zero()
        for vid, c in u.items():
            wt = self.weight_of[vid]
            part = {wid: c2 for wid, c2 in v.items()
                    if self.weight_of[wid] == wt}
            if part:
                acc = acc + c * self._pair_id_vec(vid, part)
        return acc

    def coords_at(self, vec, wt=None):
        """Coefficient list of a vector on the basis of its weight space."""
        if wt is None:
            wt = self.vec_weight(vec)
        zero = RationalScalar.zero()
        return [vec.get(vid, zero) for vid in self.basis_at[tuple(wt)]]

    # -- the algebra action ---------------------------------------------------

    def apply_e(self, i, vec):
        out = {}
        for vid, c in vec.items():
            for wid, c2 in self._etab[(i, vid)].items():
                _vec_add(out, wid, c * c2)
        return out

    def apply_f(self, i, vec):
        out = {}
        for vid, c in vec.items():
            for wid, c2 in self._ftab.get((i, vid), _EMPTY).items():
                _vec_add(out, wid, c * c2)
        return out

    def apply_divided_f(self, i, k, vec):
        out = vec
        for _ in range(k):
            out = self.apply_f(i, out)
            if not out:
                return {}
        if k >= 2:
            d = RationalScalar.from_laurent(qfact(k, self.cartan.d[i]))
            out = {vid: c / d for vid, c in out.items()}
        return out

    def apply_divided_e(self, i, k, vec):
        out = vec
        for _ in range(k):
            out = self.apply_e(i, out)
            if not out:
                return {}
        if k >= 2:
            d = RationalScalar.from_laurent(qfact(k, self.cartan.d[i]))
            out = {vid: c / d for vid, c in out.items()}
        return out

    def apply_f_word(self, word, vec):
        """Apply the F-monomial named by a digit word, rightmost letter
        first (operator composition order)."""
        out = vec
        for ch in reversed(str(word)):
            out = self.apply_f(int(ch) - 1, out)
            if not out:
                return {}
        return out

    def apply_e_word(self, word, vec):
        out = vec
        for ch in reversed(str(word)):
            out = self.apply_e(int(ch) - 1, out)
            if not out:
                return {}
        return out

    def apply_f_terms(self, terms, vec):
        """Apply a combination of F-words given as a dict word -> coeff
        (e.g. the terms of an F-side word element)."""
        out = {}
        for w, c in terms.items():
            for vid, c2 in self.apply_f_word(w, vec).items():
                _vec_add(out, vid, c * c2)
        return out


def simple_module(cartan, lam):
    """V(lam), cached on the Cartan datum (construction is deterministic)."""
    cache = getattr(cartan, "_module_cache", None)
    if cache is None:
        cache = {}
        cartan._module_cache = cache
    lam = tuple(int(x) for x in lam)
    if lam not in cache:
        cache[lam] = SimpleModule(cartan, lam)
    return cache[lam]


def act_on_weight(cartan, word, lam):
    """w(lam) in fundamental-weight coordinates, w given by a digit word."""
    out = tuple(lam)
    for ch in reversed(str(word)):
        out = cartan.reflect_w(int(ch) - 1, out)
    return out


def extremal_vector(module, word):
    """The extremal vector v_{w lam} along a reduced word of w.

    With suffix weights mu_t = s_{j_t} ... s_{j_k} lam, each step forces the
    divided power F_{j_t}^{(a_t)} with a_t = <mu_{t+1}, alpha_{j_t}-check>;
    a negative forced exponent or a vanishing result means the word was not
    reduced.  For reduced words the result is independent of the word, has
    weight w(lam), and spans its (extremal, hence one-dimensional) weight
    space.
    """
    cartan = module.cartan
    vec = module.highest()
    cur = module.lam
    for ch in reversed(str(word)):
        j = int(ch) - 1
        a = cur[j]
        if a < 0:
            raise ValueError("negative forced exponent at letter %s; "
                             "word not reduced for this weight" % ch)
        vec = module.apply_divided_f(j, a, vec)
        if not vec:
            raise RuntimeError("extremal lowering vanished at letter %s"
                               % ch)
        cur = cartan.reflect_w(j, cur)
    if module.vec_weight(vec) != cur:
        raise RuntimeError("extremal vector has the wrong weight")
    return vec


# ---------------------------------------------------------------------------
# matrix coefficients through the dual PBW basis
# ---------------------------------------------------------------------------

def _hw_state(frame):
    st = getattr(frame, "_hw_state", None)
    if st is None:
        st = {}
        frame._hw_state = st
    return st


def _f_root_terms(frame, s):
    """The F-side root vector: the words of E_{beta_s} with E-letters
    renamed to F-letters, order preserved."""
    cache = _hw_state(frame).setdefault("f_root", {})
    hit = cache.get(s)
    if hit is None:
        rv = frame.root_vectors()[s]
        hit = dict(rv.terms)
        cache[s] = hit
    return hit


def apply_f_dual_basis(frame, module, m, vec):
    """The F-side vector dual to E(m)*, applied to a module vector.

    The dual family is the letter-renamed image of the E-side PBW family,
    normalized by dual_scalar(m) * gram(m); as an operator product the
    low-s divided root powers act first.  Working factor by factor keeps
    each application a short word combination, cheap at heights far beyond
    what full word expansions could reach.
    """
    out = vec
    scalars = RationalScalar.one()
    for s in range(frame.N):
        k = m[s]
        if k == 0:
            continue
        terms = _f_root_terms(frame, s)
        for _ in range(k):
            out = module.apply_f_terms(terms, out)
            if not out:
                return {}
        if k >= 2:
            scalars = scalars * RationalScalar.from_laurent(
                qfact(k, frame.beta_pair_half(s)))
    norm = scalars * RationalScalar.from_laurent(frame.dual_scalar(m)) \
        * frame.dual_gram_closed(m)
    inv = RationalScalar.one() / norm
    return {vid: c * inv for vid, c in out.items()}


def matrix_coefficient(frame, lam, word, twist=True):
    """The element of U_q(n) representing u |-> v*(u v_lam).

    Here v* is dual to the extremal vector of weight y(lam) inside V(lam),
    for y the Weyl element of the given reduced word, normalized by
    v*(v_{y lam}) = 1 on the divided-power extremal vector.  The element is
    returned in dual-PBW coordinates:

        X = sum_n  v*(F(n) v_lam) E(n)*,

    using exact biorthogonality of (E(m)*, F(n)).  With ``twist`` the
    whole element is scaled by q^{(lam, lam - y lam)}, the K-twist that
    matches the coproduct convention of the bilinear form.
    """
    cartan = frame.cartan
    module = simple_module(cartan, lam)
    ext = extremal_vector(module, word)
    ylam = act_on_weight(cartan, word, module.lam)
    ids = module.basis_at[ylam]
    if len(ids) != 1:
        raise RuntimeError("extremal weight space is not one-dimensional")
    eid = ids[0]
    ecoef = ext[eid]
    diff = tuple(a - b for a, b in zip(module.lam, ylam))
    wt = cartan.w_to_alpha_integral(diff)
    coords = {}
    for n in frame.indices_of_weight(wt):
        img = apply_f_dual_basis(frame, module, n, module.highest())
        if not img:
            continue
        if set(img) != {eid}:
            raise RuntimeError("image left the extremal weight space")
        c = img[eid] / ecoef
        if not c.is_zero():
            coords[n] = c * RationalScalar.from_laurent(frame.dual_scalar(n))
    x = PBWElement(frame, coords)
    if twist:
        x = x.scale(_qp(cartan.pair_w_alpha(module.lam, wt)))
    return x


def minor_element(frame, r):
    """The r-th quantum minor of the frame's reduced word.

    For word i_1 ... i_N this is the matrix-coefficient element for
    lam = the fundamental weight of i_r and y = s_{i_1} ... s_{i_r},
    normalized so that its coordinate on the dual PBW vector E(m)* at its
    own parametrizing index m is exactly 1.  Returns (x, m); the element is
    certified to span a single dual canonical line, and the normalization
    makes the r = 1 minor literally the generator E_{i_1}.
    """
    word = frame.word
    if not 1 <= r <= frame.N:
        raise ValueError("minor index out of range")
    i_r = int(word[r - 1]) - 1
    lam = tuple(1 if j == i_r else 0 for j in range(frame.cartan.n))
    x = matrix_coefficient(frame, lam, word[:r], twist=False)
    coords = bstar_coordinates(frame, x)
    if len(coords) != 1:
        raise RuntimeError(
            "minor %d spans %d dual canonical lines" % (r, len(coords)))
    m = next(iter(coords))
    lead = x.terms.get(m)
    if lead is None:
        raise RuntimeError("minor %d has no coordinate at its own "
                           "parametrizing index" % r)
    unit = lead / RationalScalar.from_laurent(frame.dual_scalar(m))
    return x.scale(RationalScalar.one() / unit), m


def _z_exponent(cartan, lam):
    """The q-power that makes the central family exactly multiplicative.

    The bare matrix coefficients satisfy X(lam) X(mu) =
    q^{(lam, mu - w0 mu)} X(lam + mu); with c_kl = (w_k, w_l - w0 w_l)
    (an integer, symmetric in k, l) the rescale by

        e(lam) = sum_{k<l} lam_k lam_l c_kl
                 + sum_k  lam_k (lam_k - 1)/2 c_kk

    cancels that cocycle while leaving the fundamental-weight elements
    untouched.
    """
    n = cartan.n
    weyl = cartan.weyl()
    e = 0
    coef = []
    for l in range(n):
        wl = tuple(1 if j == l else 0 for j in range(n))
        diff = tuple(a - b
                     for a, b in zip(wl, weyl.longest_element_action(wl)))
        coef.append(cartan.w_to_alpha_integral(diff))
    for k in range(n):
        wk = tuple(1 if j == k else 0 for j in range(n))
        e += lam[k] * (lam[k] - 1) // 2 * cartan.pair_w_alpha(wk, coef[k])
        for l in range(k + 1, n):
            e += lam[k] * lam[l] * cartan.pair_w_alpha(wk, coef[l])
    return e


def z_element(frame, lam):
    """The q-central element attached to a dominant weight.

    This is the matrix-coefficient element for y = w0 (the frame's own
    word), i.e. the functional dual to the lowest weight vector of V(lam),
    times the q-power of ``_z_exponent``; the family is then exactly
    multiplicative, z(lam) z(mu) = z(lam + mu), and the fundamental-weight
    elements are the bare matrix coefficients.  Returns (x, m) with m the
    parametrizing index (the lex-largest index of the support, which is the
    top of the single dual canonical line the element spans).
    """
    lam = tuple(int(x) for x in lam)
    x = matrix_coefficient(frame, lam, frame.word, twist=False)
    x = x.scale(_qp(_z_exponent(frame.cartan, lam)))
    return x, max(x.terms)


def remark_parameter(word, r):
    """For adapted (quiver-compatible) words the parametrizing index of the
    r-th minor in closed form: m_k = 1 iff i_k = i_r and k <= r."""
    return tuple(1 if word[k] == word[r - 1] and k <= r - 1 else 0
                 for k in range(len(word)))

"""Crystal combinatorics at q = 0, computed exactly inside modules.

The crystal operators are never defined abstractly here.  A weight space of
a highest-weight module decomposes under each triple (E_i, F_i, K_i) as
V_mu = (+)_k F_i^(k)(ker E_i cap V_{mu + k alpha_i}); the lowering/raising
operators shift the string degree k by one, which is computed by exact
linear algebra.  Vertices of the crystal graph are read off by reducing a
lattice vector modulo q against a certified lattice basis of its weight
space: the nonzero vectors B(m) v_lam, where B(m) runs over the canonical
basis.  That these images form a basis of the weight space is asserted on
every slice that gets touched.

Elements of the canonical basis itself are handled through the same
machinery by acting on a dominant-enough highest weight vector (component
bound: the height of the element), so string parametrizations and the
epsilon data of basis labels reduce to module computations.  Tensor
products carry the algebra action through the coproduct
Delta(E_i) = E_i (x) 1 + K_i (x) E_i, Delta(F_i) = F_i (x) K_i^{-1} +
1 (x) F_i, and the combinatorial pair rule is validated against that
action rather than postulated.
"""

from fractions import Fraction

from .canonical import (canonical_element, dual_canonical_element,
                        is_dual_canonical, sigma_parametrization)
from .highest_weight import simple_module
from .linalg import invert, mat_vec
from .scalar import LaurentScalar, RationalScalar, qfact


def _qp(e, c=1):
    return RationalScalar.from_laurent(LaurentScalar.q_power(e, c))


def _vec_add(out, vid, c):
    acc = out.get(vid)
    s = c if acc is None else acc + c
    if s.is_zero():
        out.pop(vid, None)
    else:
        out[vid] = s


# ---------------------------------------------------------------------------
# tensor products of modules
# ---------------------------------------------------------------------------

class TensorModule:
    """left (x) right with the algebra acting through the coproduct.

    Basis ids are pairs (left id, right id), so nesting the construction
    builds longer tensor products.  The factors must share the Cartan
    datum; weights add componentwise.
    """

    def __init__(self, left, right):
        if left.cartan is not right.cartan:
            raise ValueError("tensor factors over different Cartan data")
        self.cartan = left.cartan
        self.left = left
        self.right = right
        self.basis_at = {}
        for lw, lids in left.basis_at.items():
            for rw, rids in right.basis_at.items():
                wt = tuple(a + b for a, b in zip(lw, rw))
                dst = self.basis_at.setdefault(wt, [])
                for a in lids:
                    for b in rids:
                        dst.append((a, b))
        for wt in self.basis_at:
            self.basis_at[wt].sort()

    def highest(self):
        a = next(iter(self.left.highest()))
        b = next(iter(self.right.highest()))
        return {(a, b): RationalScalar.one()}

    def vid_weight(self, vid):
        a, b = vid
        return tuple(x + y for x, y in zip(self.left.vid_weight(a),
                                           self.right.vid_weight(b)))

    def vec_weight(self, vec):
        wts = {self.vid_weight(vid) for vid in vec}
        if len(wts) != 1:
            raise ValueError("vector is zero or not weight-homogeneous")
        return wts.pop()

    def dim_of_weight(self, wt):
        return len(self.basis_at.get(tuple(wt), ()))

    def coords_at(self, vec, wt=None):
        if wt is None:
            wt = self.vec_weight(vec)
        zero = RationalScalar.zero()
        return [vec.get(vid, zero) for vid in self.basis_at[tuple(wt)]]

    def apply_e(self, i, vec):
        d = self.cartan.d[i]
        one = RationalScalar.one()
        out = {}
        for (a, b), c in vec.items():
            for a2, c2 in self.left.apply_e(i, {a: one}).items():
                _vec_add(out, (a2, b), c * c2)
            fac = _qp(d * self.left.vid_weight(a)[i])
            for b2, c2 in self.right.apply_e(i, {b: one}).items():
                _vec_add(out, (a, b2), c * fac * c2)
        return out

    def apply_f(self, i, vec):
        d = self.cartan.d[i]
        one = RationalScalar.one()
        out = {}
        for (a, b), c in vec.items():
            fac = _qp(-d * self.right.vid_weight(b)[i])
            for a2, c2 in self.left.apply_f(i, {a: one}).items():
                _vec_add(out, (a2, b), c * fac * c2)
            for b2, c2 in self.right.apply_f(i, {b: one}).items():
                _vec_add(out, (a, b2), c * c2)
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


def _tensor_top_pair(tmod):
    """(lam_left, lam_right) under the invariant form, cached."""
    hit = getattr(tmod, "_top_pair", None)
    if hit is None:
        la = tmod.left.vid_weight(next(iter(tmod.left.highest())))
        lb = tmod.right.vid_weight(next(iter(tmod.right.highest())))
        hit = tmod.cartan.pair_w(la, lb)
        tmod._top_pair = hit
    return hit


def _tensor_twist(tmod, mu, nu):
    """Lattice twist exponent for a left weight mu and right weight nu.

    The coproduct used here relates to the one for which the plain tensor
    product of crystal lattices is preserved by conjugating with the
    diagonal operator q^(wt_left, wt_right); the twist (normalized to
    vanish on highest (x) highest, hence integral) converts between the
    two coordinate systems.
    """
    e = tmod.cartan.pair_w(mu, nu) - _tensor_top_pair(tmod)
    e = Fraction(e)
    if e.denominator != 1:
        raise AssertionError("non-integral tensor twist")
    return e.numerator


def tensor_product_vector(tmod, u, v):
    """The lattice representative of u (x) v inside a TensorModule built
    over u's and v's modules (the twisted product: see _tensor_twist)."""
    fac = _qp(_tensor_twist(tmod, tmod.left.vec_weight(u),
                            tmod.right.vec_weight(v)))
    out = {}
    for a, ca in u.items():
        for b, cb in v.items():
            out[(a, b)] = ca * cb * fac
    return out


# ---------------------------------------------------------------------------
# exact Kashiwara operators
# ---------------------------------------------------------------------------

def _nullspace(rows, ncols):
    """Kernel basis (as coefficient lists) of a matrix given by rows."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for t in range(r, len(m)):
            if not m[t][c].is_zero():
                pr = t
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for t in range(len(m)):
            if t != r and not m[t][c].is_zero():
                f = m[t][c]
                m[t] = [x - f * y for x, y in zip(m[t], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    pivset = set(pivots)
    one = RationalScalar.one()
    zero = RationalScalar.zero()
    out = []
    for c in range(ncols):
        if c in pivset:
            continue
        v = [zero] * ncols
        v[c] = one
        for t, pc in enumerate(pivots):
            v[pc] = -m[t][c]
        out.append(v)
    return out


def _alpha_w(cartan, i):
    return cartan.alpha_to_w(tuple(1 if t == i else 0
                                   for t in range(cartan.n)))


def _string_data(mod, i, mu):
    """String decomposition of the weight space V_mu for the i-th triple.

    Returns a dict holding the basis id list, the inverse of the matrix
    whose columns are F_i^(k) w for w running over exact kernel bases up
    the i-string, and the (k, w) parts themselves.  Completeness of the
    decomposition is asserted.
    """
    cache = getattr(mod, "_crystal_strings", None)
    if cache is None:
        cache = {}
        mod._crystal_strings = cache
    key = (i, tuple(mu))
    hit = cache.get(key)
    if hit is not None:
        return hit
    alpha = _alpha_w(mod.cartan, i)
    basis = mod.basis_at[tuple(mu)]
    dim = len(basis)
    one = RationalScalar.one()
    parts = []
    cols = []
    k = 0
    while True:
        nu = tuple(a + k * b for a, b in zip(mu, alpha))
        src = mod.basis_at.get(nu)
        if not src:
            break
        if nu[i] >= k:
            # a singular vector at nu heads a string of length <nu, a_i^>;
            # it only reaches back down to mu when k <= nu[i]
            up = tuple(a + b for a, b in zip(nu, alpha))
            updim = mod.dim_of_weight(up)
            if updim:
                imgs = [mod.coords_at(mod.apply_e(i, {vid: one}), up)
                        for vid in src]
                rows = [[imgs[j][r] for j in range(len(src))]
                        for r in range(updim)]
            else:
                rows = []
            for kv in _nullspace(rows, len(src)):
                w = {vid: c for vid, c in zip(src, kv) if not c.is_zero()}
                parts.append((k, w))
                cols.append(mod.coords_at(mod.apply_divided_f(i, k, w),
                                          tuple(mu)))
        k += 1
    if len(cols) != dim:
        raise AssertionError("string decomposition does not fill the "
                             "weight space")
    mat = [[cols[j][r] for j in range(dim)] for r in range(dim)]
    data = {"basis": basis, "inv": invert(mat), "parts": parts,
            "down": {}, "up": {}}
    cache[key] = data
    return data


def _string_coords(mod, i, vec):
    data = _string_data(mod, i, mod.vec_weight(vec))
    zero = RationalScalar.zero()
    coords = [vec.get(vid, zero) for vid in data["basis"]]
    return data, mat_vec(data["inv"], coords)


def kashiwara_f(mod, i, vec):
    """Exact lowering operator: shift every string component k -> k + 1.

    Preserves the crystal lattice; the vertex-level operator is this map
    followed by reduction mod q.
    """
    if not vec:
        return {}
    data, c = _string_coords(mod, i, vec)
    out = {}
    for j, (k, w) in enumerate(data["parts"]):
        if c[j].is_zero():
            continue
        tgt = data["down"].get(j)
        if tgt is None:
            tgt = mod.apply_divided_f(i, k + 1, w)
            data["down"][j] = tgt
        for vid, cc in tgt.items():
            _vec_add(out, vid, c[j] * cc)
    return out


def kashiwara_e(mod, i, vec):
    """Exact raising operator: shift every string component k -> k - 1."""
    if not vec:
        return {}
    data, c = _string_coords(mod, i, vec)
    out = {}
    for j, (k, w) in enumerate(data["parts"]):
        if k == 0 or c[j].is_zero():
            continue
        tgt = data["up"].get(j)
        if tgt is None:
            tgt = mod.apply_divided_f(i, k - 1, w)
            data["up"][j] = tgt
        for vid, cc in tgt.items():
            _vec_add(out, vid, c[j] * cc)
    return out


# ---------------------------------------------------------------------------
# reduction modulo q against the canonical lattice basis
# ---------------------------------------------------------------------------

def _global_slice(frame, mod, mu):
    """Lattice basis of the weight space V_mu: the nonzero images
    B(m) v_lam of canonical elements, with the inverse change of basis.

    Asserts that the nonzero images are exactly dim V_mu many and are
    independent; their labels m parametrize the crystal vertices at mu.
    """
    cache = getattr(mod, "_crystal_global", None)
    if cache is None:
        cache = {}
        mod._crystal_global = cache
    key = (frame.word, tuple(mu))
    hit = cache.get(key)
    if hit is not None:
        return hit
    lam = mod.vid_weight(next(iter(mod.highest())))
    diff = tuple(a - b for a, b in zip(lam, mu))
    wt = mod.cartan.w_to_alpha_integral(diff)
    dim = mod.dim_of_weight(mu)
    labels = []
    cols = []
    for m in frame.indices_of_weight(wt):
        word = canonical_element(frame, m).to_word_element()
        img = mod.apply_f_terms(word.terms, mod.highest())
        if img:
            labels.append(m)
            cols.append(mod.coords_at(img, tuple(mu)))
    if len(labels) != dim:
        raise AssertionError("canonical images do not fill the weight space")
    mat = [[cols[j][r] for j in range(dim)] for r in range(dim)]
    data = {"labels": labels, "inv": invert(mat)}
    cache[key] = data
    return data


def _label_weight(frame, mod, label):
    """Weight (fundamental coordinates) of a lattice basis label."""
    if isinstance(mod, TensorModule):
        lw = _label_weight(frame, mod.left, label[0])
        rw = _label_weight(frame, mod.right, label[1])
        return tuple(a + b for a, b in zip(lw, rw))
    lam = mod.vid_weight(next(iter(mod.highest())))
    shift = mod.cartan.alpha_to_w(frame.index_weight(label))
    return tuple(a - b for a, b in zip(lam, shift))


def global_coordinates(frame, mod, vec):
    """Exact coordinates of a weight vector on the lattice basis of its
    weight space (labelled by canonical indices, pairs for tensors)."""
    if isinstance(mod, TensorModule):
        bucket = {}
        for (a, b), c in vec.items():
            bucket.setdefault(a, {})[b] = c
        mid = {}
        for a, sub in bucket.items():
            for rl, c in global_coordinates(frame, mod.right, sub).items():
                mid.setdefault(rl, {})[a] = c
        out = {}
        for rl, sub in mid.items():
            nu = _label_weight(frame, mod.right, rl)
            for ll, c in global_coordinates(frame, mod.left, sub).items():
                if c.is_zero():
                    continue
                mu = _label_weight(frame, mod.left, ll)
                # coordinates on the twisted lattice basis
                out[(ll, rl)] = c * _qp(-_tensor_twist(mod, mu, nu))
        return out
    mu = mod.vec_weight(vec)
    data = _global_slice(frame, mod, mu)
    zero = RationalScalar.zero()
    coords = [vec.get(vid, zero) for vid in mod.basis_at[tuple(mu)]]
    sol = mat_vec(data["inv"], coords)
    return {m: c for m, c in zip(data["labels"], sol) if not c.is_zero()}


def reduce_mod_q(frame, mod, vec):
    """Class of a lattice vector at q = 0, as a dict label -> Fraction.

    Raises ValueError (pole at q = 0) when the vector is not in the
    lattice spanned by the canonical images.
    """
    if not vec:
        return {}
    out = {}
    for label, c in global_coordinates(frame, mod, vec).items():
        v = c.value_at_zero()
        if v:
            out[label] = v
    return out


# ---------------------------------------------------------------------------
# vertices of the crystal graph
# ---------------------------------------------------------------------------

class CrystalVertex:
    """A crystal vertex carried together with an exact lattice
    representative; the representative reduces mod q to the single basis
    label stored in ``label``."""

    __slots__ = ("frame", "mod", "vec", "label", "weight", "_eps")

    def __init__(self, frame, mod, vec, label):
        self.frame = frame
        self.mod = mod
        self.vec = vec
        self.label = label
        self.weight = mod.vec_weight(vec)
        self._eps = {}

    def __eq__(self, other):
        if not isinstance(other, CrystalVertex):
            return NotImplemented
        return self.mod is other.mod and self.label == other.label

    def __hash__(self):
        return hash((id(self.mod), self.label))

    def __repr__(self):
        return "CrystalVertex(%r at %r)" % (self.label, self.weight)


def vertex(frame, mod, vec):
    """Wrap a lattice vector as the crystal vertex it reduces to; raises
    when the reduction is not a single unit coordinate."""
    red = reduce_mod_q(frame, mod, vec)
    if len(red) != 1:
        raise ValueError("vector does not reduce to a single basis label")
    label, c = next(iter(red.items()))
    if c != 1:
        raise ValueError("vector does not reduce to a single basis label")
    return CrystalVertex(frame, mod, vec, label)


def highest_vertex(frame, mod):
    return vertex(frame, mod, mod.highest())


def vertex_f(frame, v, i):
    """f-tilde at the vertex level; None when the operator kills the
    vertex."""
    nxt = kashiwara_f(v.mod, i, v.vec)
    if not nxt:
        return None
    red = reduce_mod_q(frame, v.mod, nxt)
    if not red:
        return None
    (label, c), = red.items()
    if c != 1:
        raise AssertionError("lowering did not land on a basis label")
    return CrystalVertex(frame, v.mod, nxt, label)


def vertex_e(frame, v, i):
    """e-tilde at the vertex level; None when the operator kills the
    vertex."""
    nxt = kashiwara_e(v.mod, i, v.vec)
    if not nxt:
        return None
    red = reduce_mod_q(frame, v.mod, nxt)
    if not red:
        return None
    (label, c), = red.items()
    if c != 1:
        raise AssertionError("raising did not land on a basis label")
    return CrystalVertex(frame, v.mod, nxt, label)


def epsilon(frame, v, i):
    """Number of raising steps before the vertex dies."""
    hit = v._eps.get(i)
    if hit is not None:
        return hit
    r = 0
    cur = v
    while True:
        nxt = vertex_e(frame, cur, i)
        if nxt is None:
            break
        cur = nxt
        r += 1
    v._eps[i] = r
    return r


def phi(frame, v, i):
    return epsilon(frame, v, i) + v.weight[i]


def etilde_max(frame, v, i):
    """(e-tilde_i^max of the vertex, number of steps taken)."""
    cur = v
    r = 0
    while True:
        nxt = vertex_e(frame, cur, i)
        if nxt is None:
            return cur, r
        cur = nxt
        r += 1


# ---------------------------------------------------------------------------
# canonical labels through a dominant-enough module
# ---------------------------------------------------------------------------

def basis_label_vertex(frame, m, lam=None):
    """The crystal vertex of B(m) v_lam, for lam dominating the label's
    epsilon data.

    With no lam the weight (c, ..., c) is raised from c = 1 until the image
    is nonzero; c = height of m always suffices, and the vertex data read
    off afterwards (epsilon values, string entries) do not depend on the
    ambient weight, so the smallest workable module is used.  The reduction
    machinery certifies that the image is again the global lattice vector
    labelled m.
    """
    m = tuple(m)
    word = canonical_element(frame, m).to_word_element()
    if lam is not None:
        trial = [tuple(lam)]
    else:
        top = max(1, frame.cartan.height(frame.index_weight(m)))
        trial = [tuple([c] * frame.cartan.n) for c in range(1, top + 1)]
    img = None
    for lam_c in trial:
        mod = simple_module(frame.cartan, lam_c)
        img = mod.apply_f_terms(word.terms, mod.highest())
        if img:
            break
    if not img:
        raise ValueError("label is not visible at this highest weight")
    v = vertex(frame, mod, img)
    if v.label != m:
        raise AssertionError("label mismatch in the module embedding")
    return v


def cap_E(frame, m, lam=None):
    """The weight sum_i epsilon_i(b) w_i of the label m, as a tuple of
    fundamental-weight coordinates."""
    v = basis_label_vertex(frame, m, lam)
    return tuple(epsilon(frame, v, i) for i in range(frame.cartan.n))


def in_B_lambda(frame, m, lam):
    """Whether the canonical element labelled m survives on V(lam):
    epsilon data of the sigma-image must be dominated by lam."""
    n, _ = sigma_parametrization(frame, m)
    caps = cap_E(frame, n)
    return all(a <= b for a, b in zip(caps, lam))


class StringDatum:
    """Maximal raising exponents read along a fixed reduced word."""

    __slots__ = ("word", "values")

    def __init__(self, word, values):
        self.word = str(word)
        self.values = tuple(int(x) for x in values)
        if any(x < 0 for x in self.values):
            raise ValueError("string entries must be nonnegative")

    def __eq__(self, other):
        if not isinstance(other, StringDatum):
            return NotImplemented
        return self.word == other.word and self.values == other.values

    def __hash__(self):
        return hash((self.word, self.values))

    def __add__(self, other):
        if self.word != other.word:
            raise ValueError("string data along different words")
        return StringDatum(self.word, tuple(a + b for a, b in
                                            zip(self.values, other.values)))

    def __repr__(self):
        return "StringDatum(%r, %r)" % (self.word, self.values)

    def to_json(self):
        return {"word": self.word, "a": list(self.values)}


def string_param(frame, m, word=None, lam=None):
    """String datum of the canonical label m along a reduced word
    (default: the frame's word).

    When the word is a full word of the longest element the recursion is
    asserted to end at the highest vertex.
    """
    if word is None:
        word = frame.word
    word = str(word)
    v = basis_label_vertex(frame, m, lam)
    values = []
    for ch in word:
        v, r = etilde_max(frame, v, int(ch) - 1)
        values.append(r)
    W = frame.cartan.weyl()
    if len(word) == frame.N and \
            W.word_to_element(word) == W.word_to_element(frame.word):
        top = v.mod.vec_weight(v.mod.highest())
        if v.weight != top:
            raise AssertionError("string recursion did not end at the top")
    return StringDatum(word, values)


def string_vertex(frame, v, word):
    """String datum of a module vertex along a word (no top assertion)."""
    values = []
    for ch in str(word):
        v, r = etilde_max(frame, v, int(ch) - 1)
        values.append(r)
    return StringDatum(word, values)


def complete_word(cartan, word):
    """Extend a reduced word on the right to a reduced word of the longest
    element, taking the smallest available letter at each step."""
    W = cartan.weyl()
    cur = str(word)
    if cur and not W.is_reduced(cur):
        raise ValueError("not a reduced word")
    grown = True
    while grown:
        grown = False
        for i in range(1, cartan.n + 1):
            cand = cur + str(i)
            if W.is_reduced(cand):
                cur = cand
                grown = True
                break
    return cur


# ---------------------------------------------------------------------------
# Demazure subsets and components
# ---------------------------------------------------------------------------

def demazure_vertices(frame, mod, word):
    """The subset of the crystal reached from the top by lowering chains
    along the word, rightmost letter innermost, all exponents."""
    W = mod.cartan.weyl()
    word = str(word)
    if word and not W.is_reduced(word):
        raise ValueError("not a reduced word")
    cache = getattr(mod, "_crystal_demazure", None)
    if cache is None:
        cache = {}
        mod._crystal_demazure = cache
    key = (frame.word, word)
    hit = cache.get(key)
    if hit is not None:
        return hit
    top = highest_vertex(frame, mod)
    cur = {top.label: top}
    for ch in reversed(word):
        i = int(ch) - 1
        nxt = dict(cur)
        for v in cur.values():
            w = v
            while True:
                w = vertex_f(frame, w, i)
                if w is None:
                    break
                nxt.setdefault(w.label, w)
        cur = nxt
    cache[key] = cur
    return cur


def demazure_membership(frame, mod, v, word):
    return v.label in demazure_vertices(frame, mod, word)


def component_vertices(frame, mod, start=None):
    """Lowering closure of a starting vertex (default: the top), as a dict
    label -> vertex.  Starting from a highest vertex this is its whole
    connected component."""
    if start is None:
        start = highest_vertex(frame, mod)
    n = mod.cartan.n
    seen = {start.label: start}
    queue = [start]
    while queue:
        v = queue.pop()
        for i in range(n):
            w = vertex_f(frame, v, i)
            if w is not None and w.label not in seen:
                seen[w.label] = w
                queue.append(w)
    return seen


def crystal_graph_edges(frame, mod, start=None):
    """(vertices, edges) of the lowering closure; edges are triples
    (source label, i, target label)."""
    verts = component_vertices(frame, mod, start)
    edges = []
    n = mod.cartan.n
    for label, v in verts.items():
        for i in range(n):
            w = vertex_f(frame, v, i)
            if w is not None:
                edges.append((label, i, w.label))
    return verts, edges


_DOT_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
               "#ff7f0e", "#8c564b", "#17becf")


def crystal_graph_dot(frame, mod, start=None, name="crystal"):
    """DOT text of the crystal graph; edge label and colour encode i."""
    verts, edges = crystal_graph_edges(frame, mod, start)
    order = sorted(verts)
    ids = {label: "v%d" % t for t, label in enumerate(order)}
    lines = ["digraph %s {" % name,
             "  rankdir=TB;",
             "  node [shape=box, fontsize=10];"]
    for label in order:
        lines.append('  %s [label="%s"];'
                     % (ids[label], str(label).replace(" ", "")))
    for a, i, b in sorted(edges, key=lambda e: (ids[e[0]], e[1], ids[e[2]])):
        lines.append('  %s -> %s [label="%d", color="%s"];'
                     % (ids[a], ids[b], i + 1,
                        _DOT_COLORS[i % len(_DOT_COLORS)]))
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# the combinatorial pair rule on tensor vertices
# ---------------------------------------------------------------------------

def tensor_rule_f(frame, va, vb, i):
    """Pair rule for lowering on a pure tensor vertex va (x) vb; returns
    (new va, new vb, side), where the moved side may become None."""
    if phi(frame, va, i) > epsilon(frame, vb, i):
        return vertex_f(frame, va, i), vb, "left"
    return va, vertex_f(frame, vb, i), "right"


def tensor_rule_e(frame, va, vb, i):
    """Pair rule for raising on a pure tensor vertex va (x) vb."""
    if phi(frame, va, i) >= epsilon(frame, vb, i):
        return vertex_e(frame, va, i), vb, "left"
    return va, vertex_e(frame, vb, i), "right"


# ---------------------------------------------------------------------------
# the multiplication rule for dual basis elements
# ---------------------------------------------------------------------------

def multiplication_rule_check(frame, factors, target):
    """Check q^t B(m_1)* ... B(m_r)* = B(target)* modulo q times the dual
    lattice, and exactly.

    Returns a dict with keys "mod_q" (bool), "exponent" (the integer t
    normalizing the target coordinate), and "exact" (bool: the product is
    a q-power multiple of B(target)* on the nose).
    """
    factors = [tuple(m) for m in factors]
    target = tuple(target)
    x = dual_canonical_element(frame, factors[0])
    for m in factors[1:]:
        x = x * dual_canonical_element(frame, m)
    out = {"mod_q": False, "exponent": None, "exact": False}
    tc = x.terms.get(target)
    if tc is None or tc.is_zero():
        return out
    coords = {}
    for n, c in x.terms.items():
        c = c / RationalScalar.from_laurent(frame.dual_scalar(n))
        try:
            l = c.as_laurent().normalized()
        except ValueError:
            return out
        if l.scale != 1:
            return out
        coords[n] = l
    t = -coords[target].valuation()
    ok = True
    for n, l in coords.items():
        if l.valuation() + t < 0:
            ok = False
            break
        low = l.coeff(-t)
        if n == target:
            if low != 1:
                ok = False
                break
        elif low != 0:
            ok = False
            break
    out["mod_q"] = ok
    out["exponent"] = int(t) if ok else None
    good, mm, _e = is_dual_canonical(frame, x)
    out["exact"] = bool(good and mm == target)
    return out

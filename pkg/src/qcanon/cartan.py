"""Finite-type Cartan data, weight/root lattices and Weyl-group combinatorics.

Weights are handled in two integer coordinate systems: fundamental-weight
coordinates ("w", the default for module highest weights) and simple-root
coordinates ("a", the natural grading of U_q(n)).  The symmetric W-invariant
form is normalized by (alpha_i, alpha_i) = 2 d_i with d_i the symmetrizers,
so form values on the weight lattice lie in (2/denom) Z.

Also here: reduced words of the longest element w0 with their positive-root
sequences, Bruhat order, the quiver (sink-sequence) adaptedness test, and the
classical q-free oracles used to certify downstream computations: Kostant
partition numbers, Freudenthal weight multiplicities and the Weyl dimension
formula.
"""

from fractions import Fraction
from functools import lru_cache


def _as_tuple_matrix(rows):
    return tuple(tuple(r) for r in rows)


# ---------------------------------------------------------------------------
# Cartan matrices per type
# ---------------------------------------------------------------------------

def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i in range(n - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    return a


def _cartan_matrix_and_syms(letter, n):
    if letter == "A" and n >= 1:
        return _chain(n), [1] * n
    if letter == "B" and n >= 2:
        # alpha_n short: d = (2,...,2,1)
        a = _chain(n)
        a[n - 1][n - 2] = -2
        return a, [2] * (n - 1) + [1]
    if letter == "C" and n >= 2:
        # alpha_n long: d = (1,...,1,2)
        a = _chain(n)
        a[n - 2][n - 1] = -2
        return a, [1] * (n - 1) + [2]
    if letter == "D" and n >= 3:
        a = _chain(n - 1)
        for row in a:
            row.append(0)
        a.append([0] * n)
        a[n - 1][n - 1] = 2
        # node n attaches to node n-2
        a[n - 1][n - 3] = -1
        a[n - 3][n - 1] = -1
        a[n - 1][n - 2] = 0
        a[n - 2][n - 1] = 0
        return a, [1] * n
    if letter == "E" and n in (6, 7, 8):
        # Bourbaki: chain 1-3-4-5-...-n with node 2 attached to node 4
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        for x, y in zip(chain, chain[1:]):
            a[x - 1][y - 1] = a[y - 1][x - 1] = -1
        a[1][3] = a[3][1] = -1
        return a, [1] * n
    if letter == "F" and n == 4:
        # 1-2=>3-4 : alpha_1, alpha_2 long
        a = _chain(4)
        a[2][1] = -2
        return a, [2, 2, 1, 1]
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]], [1, 3]
    raise ValueError("unsupported type %s%d" % (letter, n))


def _invert_rational_matrix(a):
    n = len(a)
    aug = [[Fraction(a[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [x / f for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [x - g * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class CartanData:
    """Validated finite-type Cartan datum.

    a_ij = <alpha_j, alpha_i-check>; d_i a_ij = d_j a_ji;
    (alpha_i, alpha_j) = d_i a_ij.
    """

    def __init__(self, label, cartan_matrix, symmetrizers):
        self.label = label
        self.n = len(cartan_matrix)
        self.A = _as_tuple_matrix(cartan_matrix)
        self.d = tuple(symmetrizers)
        for i in range(self.n):
            if self.A[i][i] != 2:
                raise ValueError("diagonal of a Cartan matrix must be 2")
            for j in range(self.n):
                if i != j and self.A[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
                if self.d[i] * self.A[i][j] != self.d[j] * self.A[j][i]:
                    raise ValueError("symmetrizers do not symmetrize")
        self._ainv = _invert_rational_matrix([list(r) for r in self.A])
        # (w_i, w_j) = d_i * (A^{-1})_{ij}
        self.gram_w = _as_tuple_matrix(
            [[self.d[i] * self._ainv[i][j] for j in range(self.n)]
             for i in range(self.n)])
        for i in range(self.n):
            for j in range(self.n):
                if self.gram_w[i][j] != self.gram_w[j][i]:
                    raise ValueError("weight form not symmetric")
        den = 1
        for row in self.gram_w:
            for x in row:
                den = den * (Fraction(x) / 2).denominator // _gcd(
                    den, (Fraction(x) / 2).denominator)
        self.denom = den
        self._weyl = None

    # -- coordinates -------------------------------------------------------

    def alpha_to_w(self, c):
        """Simple-root coordinates -> fundamental-weight coordinates."""
        return tuple(sum(self.A[k][j] * c[j] for j in range(self.n))
                     for k in range(self.n))

    def w_to_alpha(self, lam):
        """Fundamental-weight coords -> simple-root coords (Fractions)."""
        return tuple(sum(self._ainv[k][j] * lam[j] for j in range(self.n))
                     for k in range(self.n))

    def w_to_alpha_integral(self, lam):
        """Like w_to_alpha but requires the result to be integral."""
        c = self.w_to_alpha(lam)
        out = []
        for x in c:
            x = Fraction(x)
            if x.denominator != 1:
                raise ValueError("weight not in the root lattice")
            out.append(x.numerator)
        return tuple(out)

    # -- the W-invariant form ------------------------------------------------

    def pair_w(self, lam, mu):
        """(lam, mu) for weights in fundamental-weight coordinates."""
        return sum(Fraction(lam[i]) * self.gram_w[i][j] * mu[j]
                   for i in range(self.n) for j in range(self.n))

    def pair_alpha(self, c1, c2):
        """(x, y) for root-lattice elements in alpha coordinates (integer)."""
        return sum(c1[i] * self.d[i] * self.A[i][j] * c2[j]
                   for i in range(self.n) for j in range(self.n))

    def pair_w_alpha(self, lam, c):
        """(lam, x) with lam in w-coords, x in alpha coords: sum d_j c_j lam_j."""
        return sum(self.d[j] * c[j] * lam[j] for j in range(self.n))

    def coroot_pairing(self, lam, i):
        """<lam, alpha_i-check> for lam in w-coords."""
        return lam[i]

    def height(self, c):
        return sum(c)

    def is_dominant(self, lam):
        return all(x >= 0 for x in lam)

    def rho_w(self):
        return (1,) * self.n

    # -- simple reflections --------------------------------------------------

    def reflect_w(self, i, lam):
        """s_i acting on fundamental-weight coordinates."""
        return tuple(lam[k] - self.A[k][i] * lam[i] for k in range(self.n))

    def reflect_alpha(self, i, c):
        """s_i acting on simple-root coordinates."""
        out = list(c)
        out[i] = c[i] - sum(self.A[i][j] * c[j] for j in range(self.n))
        return tuple(out)

    def q_exbrackets(self):
        """q_i exponents: q_i = q^{d_i}."""
        return self.d

    def weyl(self):
        if self._weyl is None:
            self._weyl = WeylGroup(self)
        return self._weyl

    def __repr__(self):
        return "CartanData(%s)" % self.label


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def build_cartan(type_label, rank=None):
    """Build Cartan data from a label like "B2", or ("B", 2)."""
    if rank is None:
        letter, rank = type_label[0].upper(), int(type_label[1:])
    else:
        letter, rank = type_label.upper(), int(rank)
    a, d = _cartan_matrix_and_syms(letter, rank)
    return CartanData("%s%d" % (letter, rank), a, d)


class WeightVector:
    """A weight with an explicit basis tag ('w' or 'a') and exact coords."""

    __slots__ = ("cartan", "basis", "coords")

    def __init__(self, cartan, coords, basis="w"):
        if basis not in ("w", "a"):
            raise ValueError("basis must be 'w' or 'a'")
        self.cartan = cartan
        self.basis = basis
        self.coords = tuple(Fraction(x) for x in coords)

    def to_w(self):
        if self.basis == "w":
            return self
        return WeightVector(self.cartan, self.cartan.alpha_to_w(self.coords),
                            "w")

    def to_alpha(self):
        if self.basis == "a":
            return self
        return WeightVector(self.cartan, self.cartan.w_to_alpha(self.coords),
                            "a")

    def is_dominant(self):
        return all(x >= 0 for x in self.to_w().coords)

    def pair(self, other):
        return self.cartan.pair_w(self.to_w().coords, other.to_w().coords)

    def __add__(self, other):
        o = other if other.basis == self.basis else (
            other.to_w() if self.basis == "w" else other.to_alpha())
        return WeightVector(self.cartan,
                            tuple(x + y for x, y in zip(self.coords, o.coords)),
                            self.basis)

    def __sub__(self, other):
        o = other if other.basis == self.basis else (
            other.to_w() if self.basis == "w" else other.to_alpha())
        return WeightVector(self.cartan,
                            tuple(x - y for x, y in zip(self.coords, o.coords)),
                            self.basis)

    def __neg__(self):
        return WeightVector(self.cartan, tuple(-x for x in self.coords),
                            self.basis)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return (self.cartan is other.cartan
                and self.to_w().coords == other.to_w().coords)

    def __hash__(self):
        return hash((id(self.cartan), self.to_w().coords))

    def __repr__(self):
        return "WeightVector(%s; %s)" % (self.basis, self.coords)


# ---------------------------------------------------------------------------
# Weyl group
# ---------------------------------------------------------------------------

class WeylGroup:
    """The Weyl group as integer matrices acting on w-coordinates."""

    def __init__(self, cartan):
        self.cartan = cartan
        n = cartan.n
        ident = _as_tuple_matrix([[1 if i == j else 0 for j in range(n)]
                                  for i in range(n)])
        self.identity = ident
        self.gens = tuple(self._refl_matrix(i) for i in range(n))
        # BFS enumeration; depth = length
        self.length = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for s in self.gens:
                    m2 = _mat_mul(m, s)  # right multiplication by s_i
                    if m2 not in self.length:
                        self.length[m2] = self.length[m] + 1
                        nxt.append(m2)
            frontier = nxt
        self.elements = sorted(self.length, key=lambda m: (self.length[m], m))
        self.order = len(self.elements)
        maxlen = max(self.length.values())
        longest = [m for m, l in self.length.items() if l == maxlen]
        if len(longest) != 1:
            raise RuntimeError("longest element not unique")
        self.w0 = longest[0]
        # positive roots in alpha coordinates, by orbit search
        roots = set()
        frontier = [tuple(1 if k == i else 0 for k in range(n))
                    for i in range(n)]
        roots.update(frontier)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(n):
                    c2 = cartan.reflect_alpha(i, c)
                    if c2 not in roots:
                        roots.add(c2)
                        nxt.append(c2)
            frontier = nxt
        self.positive_roots = sorted(r for r in roots
                                     if all(x >= 0 for x in r))
        self.N = len(self.positive_roots)
        if maxlen != self.N:
            raise RuntimeError("length of w0 != number of positive roots")
        self._bruhat_memo = {}

    def _refl_matrix(self, i):
        n = self.cartan.n
        return _as_tuple_matrix(
            [[(1 if k == j else 0) - (self.cartan.A[k][i] if j == i else 0)
              for j in range(n)] for k in range(n)])

    # -- actions -------------------------------------------------------------

    def act_w(self, m, lam):
        return tuple(sum(m[k][j] * lam[j] for j in range(len(lam)))
                     for k in range(len(lam)))

    def act_alpha(self, m, c):
        lam = self.cartan.alpha_to_w(c)
        out = self.act_w(m, lam)
        return self.cartan.w_to_alpha_integral(out)

    def longest_element_action(self, lam):
        return self.act_w(self.w0, lam)

    def word_to_element(self, word):
        m = self.identity
        for ch in word:
            m = _mat_mul(m, self.gens[int(ch) - 1])
        return m

    def is_reduced(self, word):
        m = self.identity
        l = 0
        for ch in word:
            m2 = _mat_mul(m, self.gens[int(ch) - 1])
            if self.length[m2] != l + 1:
                return False
            m, l = m2, l + 1
        return True

    # -- Bruhat order ----------------------------------------------------------

    def bruhat_leq(self, u, w):
        """u <= w in Bruhat order (elements as matrices)."""
        if u == w:
            return True
        lu, lw = self.length[u], self.length[w]
        if lu >= lw:
            return False
        key = (u, w)
        if key in self._bruhat_memo:
            return self._bruhat_memo[key]
        # pick a right descent s of w
        for s in self.gens:
            ws = _mat_mul(w, s)
            if self.length[ws] < lw:
                us = _mat_mul(u, s)
                if self.length[us] < lu:
                    res = self.bruhat_leq(us, ws)
                else:
                    res = self.bruhat_leq(u, ws)
                break
        self._bruhat_memo[key] = res
        return res


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# reduced words
# ---------------------------------------------------------------------------

def reduced_words_w0(cartan):
    """All reduced words of w0, as digit strings, sorted."""
    w = cartan.weyl()
    memo = {w.identity: [""]}

    def words_of(m):
        if m in memo:
            return memo[m]
        out = []
        for i, s in enumerate(w.gens):
            ms = _mat_mul(m, s)
            if w.length[ms] < w.length[m]:
                out.extend(r + str(i + 1) for r in words_of(ms))
        memo[m] = out
        return out

    return sorted(words_of(w.w0))


def positive_root_sequence(cartan, word):
    """beta_s = s_{i_1}...s_{i_{s-1}}(alpha_{i_s}) in alpha coords.

    Raises on a non-reduced word.  For reduced words of w0 the result is a
    permutation of the positive roots.
    """
    w = cartan.weyl()
    if not w.is_reduced(word):
        raise ValueError("word %r is not reduced" % word)
    betas = []
    prefix = w.identity
    for ch in word:
        i = int(ch) - 1
        alpha = tuple(1 if k == i else 0 for k in range(cartan.n))
        betas.append(w.act_alpha(prefix, alpha))
        prefix = _mat_mul(prefix, w.gens[i])
    return tuple(betas)


class ReducedWord:
    """A reduced word with its positive-root sequence."""

    def __init__(self, cartan, word, require_w0=True):
        self.cartan = cartan
        self.word = word
        self.letters = tuple(int(ch) - 1 for ch in word)
        self.betas = positive_root_sequence(cartan, word)
        weyl = cartan.weyl()
        if require_w0:
            if len(word) != weyl.N:
                raise ValueError("word %r is not a reduced word of w0" % word)
            if set(self.betas) != set(weyl.positive_roots):
                raise ValueError("beta sequence is not all positive roots")
        self.N = len(word)

    def __repr__(self):
        return "ReducedWord(%s, %s)" % (self.cartan.label, self.word)


def is_quiver_adapted(cartan, word):
    """True iff the word is a sink sequence for some orientation.

    Edges of the (valued) diagram are pairs {i,j} with a_ij != 0; an
    orientation assigns each edge a direction; i is a sink when every
    incident edge points into i; using a sink reflects (flips) its edges.
    """
    n = cartan.n
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if cartan.A[i][j] != 0]
    letters = [int(ch) - 1 for ch in word]

    def ok(orientation):
        # orientation: dict edge -> head vertex
        orient = dict(orientation)
        for i in letters:
            for e in edges:
                if i in e and orient[e] != i:
                    return False
            for e in edges:
                if i in e:
                    orient[e] = e[0] if e[1] == i else e[1]
        return True

    from itertools import product
    for choice in product(*[(e[0], e[1]) for e in edges]):
        if ok(dict(zip(edges, choice))):
            return True
    return False


# ---------------------------------------------------------------------------
# classical q-free oracles
# ---------------------------------------------------------------------------

def kostant_partition_count(cartan, beta):
    """Number of multisets of positive roots summing to beta (alpha coords)."""
    roots = cartan.weyl().positive_roots

    @lru_cache(maxsize=None)
    def count(rem, idx):
        if all(x == 0 for x in rem):
            return 1
        if idx == len(roots):
            return 0
        total = 0
        r = roots[idx]
        c = tuple(rem)
        while all(x >= 0 for x in c):
            total += count(c, idx + 1)
            c = tuple(x - y for x, y in zip(c, r))
        return total

    return count(tuple(beta), 0)


def weyl_dim(cartan, lam):
    """dim V(lam) by the Weyl dimension formula (lam in w-coords)."""
    w = cartan.weyl()
    rho = cartan.rho_w()
    num = Fraction(1)
    for beta in w.positive_roots:
        num *= Fraction(cartan.pair_w_alpha(tuple(l + r for l, r in
                                                  zip(lam, rho)), beta),
                        cartan.pair_w_alpha(rho, beta))
    if num.denominator != 1:
        raise RuntimeError("Weyl dimension not integral")
    return num.numerator


def freudenthal_multiplicities(cartan, lam):
    """Weight multiplicities of V(lam) via the Freudenthal recursion.

    Returns a dict mapping w-coordinate tuples to positive integers.
    """
    w = cartan.weyl()
    rho = cartan.rho_w()
    lam = tuple(lam)
    lam_rho = tuple(l + r for l, r in zip(lam, rho))
    c_lam = cartan.pair_w(lam_rho, lam_rho)
    # enumerate candidate weights: lam - (nonneg root combos), level by level
    mults = {lam: 1}
    alpha_w = [cartan.alpha_to_w(tuple(1 if k == i else 0
                                       for k in range(cartan.n)))
               for i in range(cartan.n)]
    level = [lam]
    while level:
        nxt = set()
        for mu in level:
            for aw in alpha_w:
                nu = tuple(m - a for m, a in zip(mu, aw))
                nxt.add(nu)
        nxt = sorted(nxt)
        level = []
        for mu in nxt:
            if mu in mults:
                continue
            mu_rho = tuple(m + r for m, r in zip(mu, rho))
            denom = c_lam - cartan.pair_w(mu_rho, mu_rho)
            total = Fraction(0)
            for beta in w.positive_roots:
                bw = cartan.alpha_to_w(beta)
                k = 1
                while True:
                    nu = tuple(m + k * b for m, b in zip(mu, bw))
                    if nu not in mults:
                        # above the cone of computed weights: stop when nu
                        # can no longer reach lam
                        diff = cartan.w_to_alpha(
                            tuple(l - x for l, x in zip(lam, nu)))
                        if any(x < 0 for x in diff):
                            break
                        k += 1
                        continue
                    total += mults[nu] * (cartan.pair_w_alpha(nu, beta))
                    k += 1
            if total == 0:
                continue
            m = 2 * total / denom
            if m.denominator != 1:
                raise RuntimeError("Freudenthal recursion non-integral")
            if m.numerator > 0:
                mults[mu] = m.numerator
                level.append(mu)
    return mults

"""Adapted algebras and their parameter semigroups.

For a reduced word of the longest Weyl element the flag minors pairwise
q-commute; the algebra they generate meets the dual canonical basis in a
set of parameters closed under addition.  This module builds those
parameter semigroups (in any quiver-compatible reference parametrization),
verifies the defining multiplicativity/maximality pair, decomposes
parameters over the q-center, intersects semigroups across words, scans
the two implications between q-commutation and multiplicativity, and
reproduces the explicit rank-two cone tables.
"""

import time

from .canonical import (dual_canonical_element, is_dual_canonical,
                        lusztig_parametrization, q_commute_check,
                        sigma_parametrization)
from .cartan import is_quiver_adapted
from .highest_weight import minor_element, remark_parameter
from .pbw import PBWElement, PBWFrame


def _height(frame, m):
    return frame.cartan.height(frame.index_weight(m))


def _addv(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _scalev(k, a):
    return tuple(k * x for x in a)


# ---------------------------------------------------------------------------
# the generating minors of one word
# ---------------------------------------------------------------------------

class AdaptedAlgebraSpec:
    """The minors of one reduced word with their parameters.

    ``generators`` is a list of (r, element, parameter) with r = 1..N; the
    elements pairwise q-commute (validated on construction) and the first
    one is literally the generator E_{i_1}.
    """

    def __init__(self, frame):
        self.frame = frame
        self.word = frame.word
        self.generators = []
        for r in range(1, frame.N + 1):
            x, m = minor_element(frame, r)
            self.generators.append((r, x, m))
        for a in range(len(self.generators)):
            for b in range(a + 1, len(self.generators)):
                ok, _ = q_commute_check(self.generators[a][1],
                                        self.generators[b][1])
                if not ok:
                    raise RuntimeError(
                        "minors %d and %d of %s do not q-commute"
                        % (a + 1, b + 1, frame.word))
        first = self.generators[0][1]
        e1 = PBWElement.monomial(frame,
                                 tuple([1] + [0] * (frame.N - 1)))
        if first != e1:
            raise RuntimeError("the first minor is not the first generator")

    @property
    def params(self):
        return tuple(m for (_r, _x, m) in self.generators)

    def monomial_parameters_independent(self, height):
        """Distinct exponent vectors give distinct parameter sums within
        the height cap (so the corresponding monomials are independent);
        returns the number of monomials enumerated."""
        gens = self.params
        seen = {}
        stack = [((0,) * self.frame.N, (0,) * len(gens), 0)]
        while stack:
            acc, used, idx = stack.pop()
            if idx == len(gens):
                if acc in seen and seen[acc] != used:
                    raise RuntimeError("parameter collision at %s" % (acc,))
                seen[acc] = used
                continue
            k = 0
            cur = acc
            while _height(self.frame, cur) <= height:
                u = list(used)
                u[idx] = k
                stack.append((cur, tuple(u), idx + 1))
                cur = _addv(cur, gens[idx])
                k += 1
        return len(seen)


def adapted_spec(frame):
    """Build and validate the minors of the frame's word."""
    return AdaptedAlgebraSpec(frame)


# ---------------------------------------------------------------------------
# parameter semigroups
# ---------------------------------------------------------------------------

class SemigroupCone:
    """A finitely generated subsemigroup of N^N with membership search.

    ``word`` names the parametrization the generator vectors live in.
    """

    def __init__(self, word, generators):
        self.word = str(word)
        gens = sorted({tuple(int(x) for x in g) for g in generators})
        for g in gens:
            if any(x < 0 for x in g) or not any(g):
                raise ValueError("generators must be nonzero and nonnegative")
        self.N = len(gens[0])
        if any(len(g) != self.N for g in gens):
            raise ValueError("generators of mixed length")
        self.generators = tuple(gens)

    def decompose(self, m):
        """Nonnegative integer coordinates on the generators, or None.

        Bounded depth-first search; the first solution in generator order
        is returned (generators are usually independent, making it unique).
        """
        m = tuple(int(x) for x in m)

        def rec(rem, idx):
            if not any(rem):
                return (0,) * (len(self.generators) - idx)
            if idx == len(self.generators):
                return None
            g = self.generators[idx]
            top = min(r // c for r, c in zip(rem, g) if c)
            for k in range(top, -1, -1):
                nxt = tuple(r - k * c for r, c in zip(rem, g))
                if any(x < 0 for x in nxt):
                    continue
                tail = rec(nxt, idx + 1)
                if tail is not None:
                    return (k,) + tail
            return None

        return rec(m, 0)

    def contains(self, m):
        return self.decompose(m) is not None

    def generators_minimal(self):
        """No generator lies in the semigroup of the remaining ones."""
        for i, g in enumerate(self.generators):
            rest = SemigroupCone(self.word,
                                 [h for j, h in enumerate(self.generators)
                                  if j != i]) \
                if len(self.generators) > 1 else None
            if rest is not None and rest.contains(g):
                return False
        return True

    def generates_full_lattice(self):
        """The generators span Z^N as a group (the gcd of all maximal
        minors is 1)."""
        import itertools
        rows = [list(g) for g in self.generators]
        if len(rows) < self.N:
            return False
        g = 0
        for sub in itertools.combinations(rows, self.N):
            g = _gcd_int(g, _int_det([list(r) for r in sub]))
            if g == 1:
                return True
        return g == 1

    def __repr__(self):
        return "SemigroupCone(%r, %r)" % (self.word, list(self.generators))


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _int_det(mat):
    """Integer determinant by fraction-free elimination on a copy."""
    from fractions import Fraction
    n = len(mat)
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    assert det.denominator == 1
    return int(det)


def reparametrize(param_frame, element):
    """The parameter of a dual-canonical-line element in another frame."""
    y = PBWElement.from_word_element(param_frame, element.to_word_element())
    m, _e = lusztig_parametrization(param_frame, y)
    return m


def cone(param_frame, gen_frame):
    """The parameter semigroup of one word's minors, read in another
    word's parametrization.

    The reference word must be compatible with a quiver orientation, which
    is what makes parameters add under multiplication.
    """
    if not is_quiver_adapted(param_frame.cartan, param_frame.word):
        raise ValueError("reference word is not quiver-compatible")
    gens = []
    for r in range(1, gen_frame.N + 1):
        _x, m = minor_element(gen_frame, r)
        if gen_frame.word == param_frame.word:
            gens.append(m)
        else:
            # the minor itself is only a rational multiple of the dual
            # basis vector, so transport the normalized element instead
            gens.append(reparametrize(
                param_frame, dual_canonical_element(gen_frame, m)))
    return SemigroupCone(param_frame.word, gens)


def sigma_cone(frame, sg):
    """The image of a parameter semigroup under the antiautomorphism, at
    the level of parameters."""
    return SemigroupCone(sg.word, [sigma_parametrization(frame, g)[0]
                                   for g in sg.generators])


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------

class VerificationReport:
    """Outcome of one exhaustive scan: scope, counts, and violations."""

    def __init__(self, scope):
        self.scope = dict(scope)
        self.counts = {}
        self.violations = {}
        self.notes = {}
        self.seconds = 0.0

    @property
    def passed(self):
        return all(not v for v in self.violations.values())

    def to_json(self):
        return {
            "scope": self.scope,
            "counts": self.counts,
            "violations": {k: [list(map(list, pair)) if isinstance(
                pair, tuple) else pair for pair in v]
                for k, v in self.violations.items()},
            "notes": self.notes,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }


def _labels_up_to_height(frame, h, include_zero=False):
    hts = [frame.cartan.height(b) for b in frame.betas]
    out = []

    def rec(pos, rem, acc):
        if pos == frame.N:
            out.append(tuple(acc))
            return
        k = 0
        while k * hts[pos] <= rem:
            acc.append(k)
            rec(pos + 1, rem - k * hts[pos], acc)
            acc.pop()
            k += 1

    rec(0, h, [])
    if not include_zero:
        out.remove((0,) * frame.N)
    return out


def _is_multiplicative(frame, m, n):
    """Whether the product of the two dual basis vectors is again a dual
    basis vector up to a power of q; returns (bool, label)."""
    x = dual_canonical_element(frame, m) * dual_canonical_element(frame, n)
    ok, lbl, _e = is_dual_canonical(frame, x)
    return ok, lbl


def verify_adapted(frame, candidate_params, height):
    """Check the two defining properties of an adapted parameter set.

    Multiplicativity: every monomial in the candidates whose parameter sum
    has height within the cap multiplies into a single dual-canonical line,
    with the expected parameter.  Maximality: every parameter within the
    cap that lies outside the candidate semigroup has a witness candidate
    whose product with it leaves the dual canonical basis.
    """
    t0 = time.time()
    cand = sorted({tuple(int(x) for x in p) for p in candidate_params})
    sg = SemigroupCone(frame.word, cand)
    rep = VerificationReport({"word": frame.word,
                              "type": frame.cartan.label,
                              "height": height,
                              "candidates": [list(p) for p in cand]})
    elems = {p: dual_canonical_element(frame, p) for p in cand}

    # multiplicativity over all monomials within the cap
    checked = 0
    bad_mult = []
    stack = [((0,) * frame.N, (), 0)]
    while stack:
        acc, used, idx = stack.pop()
        if idx == len(cand):
            if sum(used) >= 2:
                x = None
                for p, k in zip(cand, used):
                    for _ in range(k):
                        x = elems[p] if x is None else x * elems[p]
                ok, lbl, _e = is_dual_canonical(frame, x)
                checked += 1
                if not ok or lbl != acc:
                    bad_mult.append((list(map(int, acc)), list(used)))
            continue
        k = 0
        cur = acc
        while _height(frame, cur) <= height:
            stack.append((cur, used + (k,), idx + 1))
            cur = _addv(cur, cand[idx])
            k += 1
    rep.counts["monomials_checked"] = checked
    rep.violations["multiplicativity"] = sorted(bad_mult)

    # maximality over all outside parameters within the cap
    outside = [m for m in _labels_up_to_height(frame, height)
               if not sg.contains(m)]
    unwitnessed = []
    for m in outside:
        found = False
        for p in sorted(cand, key=lambda p: _height(frame, p)):
            ok, _lbl = _is_multiplicative(frame, p, m)
            if not ok:
                found = True
                break
        if not found:
            unwitnessed.append(list(map(int, m)))
    rep.counts["outside_parameters"] = len(outside)
    rep.violations["maximality"] = sorted(unwitnessed)
    rep.seconds = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# the q-center at the parameter level
# ---------------------------------------------------------------------------

def letter_blocks(word):
    """Positions of each letter in the word (1-based letters, 0-based
    positions)."""
    blocks = {}
    for pos, ch in enumerate(str(word)):
        blocks.setdefault(int(ch), []).append(pos)
    return blocks


def central_parameters(word):
    """The parameter n_k of the central element of the k-th fundamental
    weight: a unit on every position carrying the letter k."""
    blocks = letter_blocks(word)
    out = {}
    for k, positions in blocks.items():
        out[k] = remark_parameter(word, positions[-1] + 1)
    return out


def qcenter_decompose(word, m):
    """Split a parameter into its central part and its remainder.

    The central coefficient at the letter k is the minimum of m over the
    positions carrying k; the remainder then has a zero in every letter
    block, which pins the decomposition uniquely.
    """
    word = str(word)
    m = tuple(int(x) for x in m)
    blocks = letter_blocks(word)
    cents = central_parameters(word)
    z = (0,) * len(m)
    for k, positions in blocks.items():
        mk = min(m[p] for p in positions)
        z = _addv(z, _scalev(mk, cents[k]))
    h = tuple(a - b for a, b in zip(m, z))
    assert all(x >= 0 for x in h)
    for k, positions in blocks.items():
        assert any(h[p] == 0 for p in positions)
    return z, h


def in_center_parameters(word, m):
    """Whether the parameter is a sum of central generators."""
    z, h = qcenter_decompose(word, m)
    return not any(h)


def in_complement_parameters(word, m):
    """Whether the parameter has a zero in every letter block."""
    blocks = letter_blocks(word)
    return all(any(m[p] == 0 for p in positions)
               for positions in blocks.values())


def qcenter_tests(frame, height, margin=2):
    """Scan the central family against the dual basis within the cap.

    (a) products with the central generators stay on dual-canonical lines
    with added parameters (pairs whose product height exceeds the cap by
    more than the margin are skipped and counted); (b) every parameter's
    central/remainder split multiplies back to its own line; (c) the sum
    map on (central, blockwise-zero) parameter pairs is recovered exactly
    by the split, so the decomposition is a bijection.
    """
    t0 = time.time()
    word = frame.word
    rep = VerificationReport({"word": word, "type": frame.cartan.label,
                              "height": height})
    cents = central_parameters(word)
    labels = _labels_up_to_height(frame, height, include_zero=True)

    bad_central = []
    tested = skipped = 0
    for m in labels:
        for k, nk in sorted(cents.items()):
            if _height(frame, m) + _height(frame, nk) > height + margin:
                skipped += 1
                continue
            tested += 1
            ok, lbl = _is_multiplicative(frame, nk, m)
            if not ok or lbl != _addv(nk, m):
                bad_central.append((k, list(map(int, m))))
    rep.counts["central_pairs"] = tested
    rep.counts["central_pairs_skipped"] = skipped
    rep.violations["central_multiplicativity"] = bad_central

    bad_split = []
    for m in labels:
        z, h = qcenter_decompose(word, m)
        if not any(z) or not any(h):
            continue  # the split is trivial on either factor
        x = (dual_canonical_element(frame, z)
             * dual_canonical_element(frame, h))
        ok, lbl, _e = is_dual_canonical(frame, x)
        if not ok or lbl != m:
            bad_split.append(list(map(int, m)))
    rep.violations["split_product"] = bad_split

    central_sums = [m for m in labels if in_center_parameters(word, m)]
    remainders = [m for m in labels if in_complement_parameters(word, m)]
    bad_unique = []
    npairs = 0
    for z in central_sums:
        for h in remainders:
            s = _addv(z, h)
            if _height(frame, s) > height:
                continue
            npairs += 1
            if qcenter_decompose(word, s) != (z, h):
                bad_unique.append([list(map(int, z)), list(map(int, h))])
    rep.counts["split_pairs"] = npairs
    rep.violations["split_bijection"] = bad_unique
    rep.seconds = time.time() - t0
    return rep


def intersection_semigroup(param_frame, gen_words, height):
    """Intersect the parameter semigroups of several words inside one
    reference parametrization, up to the cap; returns the atoms (points
    not splittable into smaller members) as a semigroup."""
    cones = []
    for w in gen_words:
        gf = param_frame if w == param_frame.word \
            else PBWFrame(param_frame.cartan, w)
        cones.append(cone(param_frame, gf))
    pts = [m for m in _labels_up_to_height(param_frame, height)
           if all(c.contains(m) for c in cones)]
    members = set(pts)
    atoms = []
    for m in sorted(pts, key=lambda m: (_height(param_frame, m), m)):
        split = False
        for a in atoms:
            rem = tuple(x - y for x, y in zip(m, a))
            if all(x >= 0 for x in rem) and (not any(rem)
                                             or rem in members):
                split = True
                break
        if not split:
            atoms.append(m)
    return SemigroupCone(param_frame.word, atoms)


def minor_line_report(frame):
    """Record, per minor of the word, whether it spans a single dual basis
    line whose parameter matches the closed form valid for
    quiver-compatible words.  Purely observational: outcomes are written
    into the report's notes, never into its violations, so incompatible
    words can be surveyed without failing anything.
    """
    t0 = time.time()
    rep = VerificationReport({
        "word": frame.word, "type": frame.cartan.label,
        "quiver_adapted": is_quiver_adapted(frame.cartan, frame.word)})
    rows = []
    matching = 0
    for r in range(1, frame.N + 1):
        expected = remark_parameter(frame.word, r)
        row = {"r": r, "closed_form": list(expected)}
        try:
            _x, m = minor_element(frame, r)
            row["single_line"] = True
            row["parameter"] = list(m)
            row["matches"] = (m == expected)
        except RuntimeError:
            row["single_line"] = False
            row["matches"] = False
        matching += bool(row["matches"])
        rows.append(row)
    rep.notes["minors"] = rows
    rep.counts["minors"] = frame.N
    rep.counts["matching_closed_form"] = matching
    rep.seconds = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# the two implications between q-commutation and multiplicativity
# ---------------------------------------------------------------------------

def _bz_pair_list(frame, height):
    labels = _labels_up_to_height(frame, height)
    out = []
    for i, m in enumerate(labels):
        hm = _height(frame, m)
        for n in labels[i:]:
            if hm + _height(frame, n) <= height:
                out.append((m, n))
    return out


def _bz_evaluate(frame, pairs):
    elems = {}

    def elem(m):
        if m not in elems:
            elems[m] = dual_canonical_element(frame, m)
        return elems[m]

    qc_pairs = mult_pairs = 0
    mult_not_qc = []
    qc_not_mult = []
    for m, n in pairs:
        okq, _e = q_commute_check(elem(m), elem(n))
        okm, _lbl = _is_multiplicative(frame, m, n)
        if okq:
            qc_pairs += 1
        if okm:
            mult_pairs += 1
        if okm and not okq:
            mult_not_qc.append([list(map(int, m)), list(map(int, n))])
        if okq and not okm:
            qc_not_mult.append([list(map(int, m)), list(map(int, n))])
    return qc_pairs, mult_pairs, mult_not_qc, qc_not_mult


def _bz_chunk_worker(args):
    label, word, pairs = args
    from .cartan import build_cartan
    frame = PBWFrame(build_cartan(label), word)
    return _bz_evaluate(frame, pairs)


def bz_verify(frame, height, jobs=1):
    """Exhaustively compare q-commutation with multiplicativity.

    Pairs of dual basis parameters are enumerated with total weight height
    within the cap; the forward implication (multiplicative pairs
    q-commute) must never fail, while the reverse list is the content of
    the conjecture under test.  With jobs > 1 the pair list is split over
    worker processes; violation lists are sorted before reporting, so the
    result is identical for any job count.
    """
    t0 = time.time()
    rep = VerificationReport({"word": frame.word,
                              "type": frame.cartan.label, "height": height})
    pairs = _bz_pair_list(frame, height)
    if jobs and jobs > 1 and len(pairs) > 1:
        import multiprocessing
        nchunks = min(len(pairs), jobs * 4)
        chunks = [pairs[k::nchunks] for k in range(nchunks)]
        work = [(frame.cartan.label, frame.word, ch) for ch in chunks]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_bz_chunk_worker, work)
    else:
        parts = [_bz_evaluate(frame, pairs)]
    qc_pairs = sum(p[0] for p in parts)
    mult_pairs = sum(p[1] for p in parts)
    mult_not_qc = sorted(v for p in parts for v in p[2])
    qc_not_mult = sorted(v for p in parts for v in p[3])
    rep.counts["pairs"] = len(pairs)
    rep.counts["q_commuting"] = qc_pairs
    rep.counts["multiplicative"] = mult_pairs
    rep.violations["multiplicative_not_q_commuting"] = mult_not_qc
    rep.violations["q_commuting_not_multiplicative"] = qc_not_mult
    rep.seconds = time.time() - t0
    return rep


# ---------------------------------------------------------------------------
# the rank-two tables
# ---------------------------------------------------------------------------

# data sets for the short-root-first word in rank two type B; the first is
# verified (not derived) by verify_adapted, the second is its image under
# the antiautomorphism at the parameter level
B2_EXTRA_CONE = ((0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0), (0, 1, 0, 1))


def b2_cone_table(frame, other_word="1212"):
    """The six generator lists covering N^4 for the rank-two type B word.

    Returns a dict name -> SemigroupCone in the frame's parametrization:
    the frame's own cone, the other word's cone, their antiautomorphism
    images, and the extra pair completing the cover.
    """
    if frame.cartan.label != "B2" or frame.word != "2121":
        raise ValueError("the table is tabulated for the word 2121 in B2")
    other = PBWFrame(frame.cartan, other_word)
    c_own = cone(frame, frame)
    c_other = cone(frame, other)
    d = SemigroupCone(frame.word, B2_EXTRA_CONE)
    return {
        "own": c_own,
        "other": c_other,
        "sigma_own": sigma_cone(frame, c_own),
        "sigma_other": sigma_cone(frame, c_other),
        "extra": d,
        "sigma_extra": sigma_cone(frame, d),
    }


def b2_decomposition_check(frame, entries_cap=4, product_height_cap=6):
    """Cover N^4 by the six cones and factor the covered elements.

    Every lattice point with entries within the cap must belong to at
    least one cone; each point whose weight height stays within the
    product cap must factor, up to a power of q, into dual basis elements
    taken from the union of the generator lists.
    """
    t0 = time.time()
    table = b2_cone_table(frame)
    rep = VerificationReport({"word": frame.word, "type": "B2",
                              "entries_cap": entries_cap,
                              "product_height_cap": product_height_cap})
    uncovered = []
    unfactored = []
    covered = factored = 0
    rng = range(entries_cap + 1)
    for m in ((a, b, c, d) for a in rng for b in rng
              for c in rng for d in rng):
        if not any(m):
            continue
        home = None
        for name, sg in table.items():
            dec = sg.decompose(m)
            if dec is not None:
                home = (name, sg, dec)
                break
        if home is None:
            uncovered.append(list(m))
            continue
        covered += 1
        if _height(frame, m) > product_height_cap:
            continue
        name, sg, dec = home
        factors = []
        for g, k in zip(sg.generators, dec):
            factors.extend([g] * k)
        if len(factors) == 1:
            factored += 1
            continue
        x = None
        for g in factors:
            y = dual_canonical_element(frame, g)
            x = y if x is None else x * y
        ok, lbl, _e = is_dual_canonical(frame, x)
        if ok and lbl == m:
            factored += 1
        else:
            unfactored.append(list(m))
    rep.counts["points"] = (entries_cap + 1) ** 4 - 1
    rep.counts["covered"] = covered
    rep.counts["factored"] = factored
    rep.violations["uncovered"] = uncovered
    rep.violations["unfactored"] = unfactored
    rep.seconds = time.time() - t0
    return rep

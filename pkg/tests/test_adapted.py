"""Adapted-algebra semigroups, the q-center split, and the pair scans."""

import json

import pytest

from qcanon.adapted import (AdaptedAlgebraSpec, SemigroupCone, adapted_spec,
                            b2_cone_table, b2_decomposition_check, bz_verify,
                            central_parameters, cone, in_center_parameters,
                            in_complement_parameters, intersection_semigroup,
                            minor_line_report, qcenter_decompose,
                            qcenter_tests, sigma_cone, verify_adapted)
from qcanon.cartan import build_cartan
from qcanon.pbw import PBWElement, PBWFrame

_CARTANS = {}
_FRAMES = {}


def frame(label, word):
    if label not in _CARTANS:
        _CARTANS[label] = build_cartan(label)
    key = (label, word)
    if key not in _FRAMES:
        _FRAMES[key] = PBWFrame(_CARTANS[label], word)
    return _FRAMES[key]


# -- generating minors -------------------------------------------------------

def test_minor_spec_parameters_and_first_generator():
    spec = adapted_spec(frame("A2", "121"))
    assert spec.params == ((1, 0, 0), (0, 1, 0), (1, 0, 1))
    r, x, m = spec.generators[0]
    assert r == 1 and m == (1, 0, 0)
    assert x == PBWElement.monomial(frame("A2", "121"), (1, 0, 0))

    spec = adapted_spec(frame("B2", "2121"))
    assert spec.params == ((1, 0, 0, 0), (0, 1, 0, 0),
                           (1, 0, 1, 0), (0, 1, 0, 1))


def test_minor_monomial_parameters_are_independent():
    spec = adapted_spec(frame("A2", "121"))
    assert spec.monomial_parameters_independent(6) == 30


# -- the cone computations ---------------------------------------------------

def test_a2_cone_tables():
    f121, f212 = frame("A2", "121"), frame("A2", "212")
    own = cone(f121, f121)
    other = cone(f121, f212)
    assert set(own.generators) == {(1, 0, 0), (0, 1, 0), (1, 0, 1)}
    assert set(other.generators) == {(0, 0, 1), (0, 1, 0), (1, 0, 1)}
    # the first letter's unit vector always belongs to a word's own cone
    assert own.contains((1, 0, 0))
    assert cone(f212, f212).contains((1, 0, 0))
    # both cones are stable under the antiautomorphism
    assert set(sigma_cone(f121, own).generators) == set(own.generators)
    assert set(sigma_cone(f121, other).generators) == set(other.generators)
    # and together they exhaust the parameter lattice
    for a in range(4):
        for b in range(4):
            for c in range(4):
                m = (a, b, c)
                assert own.contains(m) or other.contains(m)


def test_b2_cone_tables():
    table = b2_cone_table(frame("B2", "2121"))
    expected = {
        "own": {(1, 0, 0, 0), (0, 1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)},
        "other": {(0, 0, 0, 1), (1, 0, 0, 1), (1, 0, 1, 0), (0, 1, 0, 1)},
        "sigma_own": {(1, 0, 0, 0), (2, 0, 0, 1),
                      (1, 0, 1, 0), (0, 1, 0, 1)},
        "sigma_other": {(0, 0, 0, 1), (0, 0, 1, 0),
                        (1, 0, 1, 0), (0, 1, 0, 1)},
        "extra": {(0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0), (0, 1, 0, 1)},
        "sigma_extra": {(2, 0, 0, 1), (1, 0, 0, 1),
                        (1, 0, 1, 0), (0, 1, 0, 1)},
    }
    assert set(table) == set(expected)
    for name, gens in expected.items():
        assert set(table[name].generators) == gens, name


def test_cone_structure_invariants():
    f121, f212 = frame("A2", "121"), frame("A2", "212")
    table = b2_cone_table(frame("B2", "2121"))
    cones = [cone(f121, f121), cone(f121, f212)] + list(table.values())
    for sg in cones:
        assert len(sg.generators) == sg.N
        assert sg.generators_minimal()
        assert sg.generates_full_lattice()


def test_cone_requires_quiver_compatible_reference():
    f = frame("A3", "212321")
    with pytest.raises(ValueError):
        cone(f, f)


def test_semigroup_cone_membership_search():
    sg = SemigroupCone("121", [(1, 0, 0), (0, 1, 0), (1, 0, 1)])
    assert sg.decompose((2, 1, 1)) == (1, 1, 1)
    assert sg.contains((0, 0, 0))
    assert not sg.contains((0, 0, 1))
    assert not sg.contains((0, 0, 2))
    # a redundant generator is flagged by the minimality check
    fat = SemigroupCone("121", [(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert not fat.generators_minimal()
    with pytest.raises(ValueError):
        SemigroupCone("121", [(1, 0, 0), (0, -1, 0)])
    with pytest.raises(ValueError):
        SemigroupCone("121", [(1, 0, 0), (0, 0, 0, 1)])


def test_lattice_generation_check():
    assert SemigroupCone("121", [(1, 0, 0), (0, 1, 0),
                                 (1, 0, 1)]).generates_full_lattice()
    # index-two sublattice
    assert not SemigroupCone("121", [(2, 0, 0), (0, 1, 0),
                                     (0, 0, 2)]).generates_full_lattice()
    # too few generators
    assert not SemigroupCone("121", [(1, 0, 0),
                                     (0, 1, 0)]).generates_full_lattice()


# -- multiplicativity / maximality -------------------------------------------

def test_verify_adapted_a2_all_four_choices():
    for pw in ("121", "212"):
        for gw in ("121", "212"):
            pf, gf = frame("A2", pw), frame("A2", gw)
            rep = verify_adapted(pf, cone(pf, gf).generators, 6)
            assert rep.passed, (pw, gw, rep.violations)
            assert rep.counts["monomials_checked"] > 0
            assert rep.counts["outside_parameters"] > 0


def test_verify_adapted_b2_all_four_choices():
    for pw in ("2121", "1212"):
        for gw in ("2121", "1212"):
            pf, gf = frame("B2", pw), frame("B2", gw)
            rep = verify_adapted(pf, cone(pf, gf).generators, 6)
            assert rep.passed, (pw, gw, rep.violations)


def test_verify_adapted_b2_extra_cones():
    f = frame("B2", "2121")
    table = b2_cone_table(f)
    for name in ("extra", "sigma_extra"):
        rep = verify_adapted(f, table[name].generators, 6)
        assert rep.passed, (name, rep.violations)


def test_verify_adapted_detects_dropped_generator():
    f = frame("A2", "121")
    rep = verify_adapted(f, [(1, 0, 0), (0, 1, 0)], 6)
    assert not rep.passed
    assert not rep.violations["multiplicativity"]
    assert [1, 0, 1] in rep.violations["maximality"]


def test_verify_adapted_rejects_bad_candidate():
    # E1 and E2 do not multiply into a single dual basis line, so a
    # candidate set containing both fails the multiplicativity half
    f = frame("A2", "121")
    rep = verify_adapted(f, [(1, 0, 0), (0, 0, 1)], 4)
    assert rep.violations["multiplicativity"]


# -- the q-center ------------------------------------------------------------

def test_central_parameters_closed_form():
    assert central_parameters("121") == {1: (1, 0, 1), 2: (0, 1, 0)}
    assert central_parameters("2121") == {1: (0, 1, 0, 1), 2: (1, 0, 1, 0)}


def test_qcenter_decompose_worked_example():
    z, h = qcenter_decompose("2121", (2, 1, 1, 0))
    assert z == (1, 0, 1, 0)
    assert h == (1, 1, 0, 0)


def test_qcenter_decompose_edge_cases():
    # central parameters decompose with no remainder
    z, h = qcenter_decompose("2121", (1, 1, 1, 1))
    assert z == (1, 1, 1, 1) and h == (0, 0, 0, 0)
    assert in_center_parameters("2121", (1, 1, 1, 1))
    # blockwise-zero parameters decompose with no central part
    z, h = qcenter_decompose("121", (3, 0, 0))
    assert z == (0, 0, 0) and h == (3, 0, 0)
    assert in_complement_parameters("121", (3, 0, 0))
    assert not in_complement_parameters("121", (1, 0, 1))


def test_qcenter_decompose_is_a_bijection_at_small_heights():
    for label, word in (("A2", "121"), ("B2", "2121")):
        f = frame(label, word)
        hts = [f.cartan.height(b) for b in f.betas]
        seen = set()

        def rec(pos, rem, acc):
            if pos == f.N:
                m = tuple(acc)
                z, h = qcenter_decompose(word, m)
                assert tuple(a + b for a, b in zip(z, h)) == m
                assert in_center_parameters(word, z)
                assert in_complement_parameters(word, h)
                assert (z, h) not in seen
                seen.add((z, h))
                return
            k = 0
            while k * hts[pos] <= rem:
                rec(pos + 1, rem - k * hts[pos], acc + [k])
                k += 1

        rec(0, 8, [])
        assert len(seen) > 90


def test_qcenter_scans_pass():
    rep = qcenter_tests(frame("A2", "121"), 6)
    assert rep.passed, rep.violations
    assert rep.counts["central_pairs"] == 100
    assert rep.counts["central_pairs_skipped"] == 0

    rep = qcenter_tests(frame("B2", "2121"), 6)
    assert rep.passed, rep.violations
    # the tall central generators push some products past the cap margin
    assert rep.counts["central_pairs_skipped"] > 0
    assert rep.counts["split_pairs"] > 0


# -- intersections -----------------------------------------------------------

def test_intersection_semigroup_is_the_central_cone():
    sg = intersection_semigroup(frame("A2", "121"), ["121", "212"], 6)
    assert set(sg.generators) == {(0, 1, 0), (1, 0, 1)}
    sg = intersection_semigroup(frame("B2", "2121"), ["2121", "1212"], 6)
    assert set(sg.generators) == {(1, 0, 1, 0), (0, 1, 0, 1)}


def test_intersection_with_single_word_is_own_cone():
    f = frame("A2", "121")
    sg = intersection_semigroup(f, ["121"], 6)
    assert set(sg.generators) == set(cone(f, f).generators)


def test_intersection_matches_central_membership():
    # members of the intersection are exactly the central parameters
    f = frame("A2", "121")
    sg = intersection_semigroup(f, ["121", "212"], 6)
    for m in [(0, 1, 0), (1, 0, 1), (1, 1, 1), (2, 1, 2)]:
        assert sg.contains(m)
        assert in_center_parameters("121", m)
    for m in [(1, 0, 0), (0, 0, 1), (2, 0, 1)]:
        assert not sg.contains(m)
        assert not in_center_parameters("121", m)


# -- the pair scans ----------------------------------------------------------

def test_pair_scan_a2():
    rep = bz_verify(frame("A2", "121"), 6)
    assert rep.counts["pairs"] == 156
    assert rep.counts["q_commuting"] == rep.counts["multiplicative"] == 107
    assert rep.violations["multiplicative_not_q_commuting"] == []
    assert rep.violations["q_commuting_not_multiplicative"] == []


def test_pair_scan_b2():
    rep = bz_verify(frame("B2", "2121"), 6)
    assert rep.counts["pairs"] == 189
    assert rep.counts["q_commuting"] == rep.counts["multiplicative"] == 101
    assert rep.violations["multiplicative_not_q_commuting"] == []
    assert rep.violations["q_commuting_not_multiplicative"] == []


def test_pair_scan_a3_report_only():
    # the forward implication is a theorem and must hold on any word; the
    # reverse direction is only surveyed here
    rep = bz_verify(frame("A3", "121321"), 4)
    assert rep.violations["multiplicative_not_q_commuting"] == []
    assert rep.counts["pairs"] > 100
    reverse = rep.violations["q_commuting_not_multiplicative"]
    assert isinstance(reverse, list)


def test_minor_line_report_on_compatible_and_incompatible_words():
    rep = minor_line_report(frame("A3", "121321"))
    assert rep.scope["quiver_adapted"]
    assert rep.counts["matching_closed_form"] == 6
    # off the quiver-compatible class the closed form is only surveyed
    rep = minor_line_report(frame("A3", "212321"))
    assert not rep.scope["quiver_adapted"]
    assert len(rep.notes["minors"]) == 6
    for row in rep.notes["minors"]:
        assert set(row) >= {"r", "closed_form", "single_line", "matches"}


# -- the rank-two cover ------------------------------------------------------

def test_b2_decomposition_cover_and_factorization():
    rep = b2_decomposition_check(frame("B2", "2121"),
                                 entries_cap=4, product_height_cap=6)
    assert rep.passed, rep.violations
    assert rep.counts["points"] == 624
    assert rep.counts["covered"] == 624
    assert rep.counts["factored"] > 50
    # the all-ones point is covered by one of the six cones
    table = b2_cone_table(frame("B2", "2121"))
    assert any(sg.contains((1, 1, 1, 1)) for sg in table.values())


# -- report serialization ----------------------------------------------------

def test_verification_report_round_trips_through_json():
    rep = bz_verify(frame("A2", "121"), 3)
    blob = json.dumps(rep.to_json())
    data = json.loads(blob)
    assert data["passed"] is True
    assert data["scope"]["word"] == "121"
    assert data["counts"]["pairs"] > 0
    assert set(data["violations"]) == {"multiplicative_not_q_commuting",
                                       "q_commuting_not_multiplicative"}
    assert data["seconds"] >= 0

"""Finite involutive spaces: sections, antisymmetric sets, maximality.

Everything here is exact integer combinatorics, which is what makes the
commutative theory a genuine oracle for the matrix-side classification
(covered by the embedding cross-checks at the bottom)."""

from __future__ import annotations

import numpy as np
import pytest

from trokit import (
    FiniteInvolutiveSpace,
    antisymmetric_open_sets,
    build_sections,
    classify,
    cone_inclusion_matches_set_inclusion,
    cone_of_open_set,
    embed_as_tro,
    enumerate_spaces,
    is_maximal_antisymmetric,
    recover_open_set,
    subspace_equal,
    orthonormalize,
    vanishing_ideal,
)


def two_point_swap(discrete: bool = True) -> FiniteInvolutiveSpace:
    if discrete:
        return FiniteInvolutiveSpace.build(2, (1, 0), discrete=True)
    return FiniteInvolutiveSpace.build(2, (1, 0), opens=[])


def four_point_discrete() -> FiniteInvolutiveSpace:
    return FiniteInvolutiveSpace.build(4, (1, 0, 3, 2), discrete=True)


def test_build_validates_involution():
    with pytest.raises(ValueError):
        FiniteInvolutiveSpace.build(3, (1, 2, 0), discrete=True)  # 3-cycle
    with pytest.raises(ValueError):
        FiniteInvolutiveSpace.build(2, (0, 0), discrete=True)  # not a permutation


def test_build_validates_topology():
    # {0}, missing {1}: the swap does not map opens to opens
    with pytest.raises(ValueError):
        FiniteInvolutiveSpace.build(2, (1, 0), opens=[{0}])
    # union/intersection closure violation
    with pytest.raises(ValueError):
        FiniteInvolutiveSpace.build(4, (1, 0, 3, 2), opens=[{0, 2}, {1, 3}, {0, 3}, {1, 2}])


def test_section_space_dimensions():
    assert build_sections(two_point_swap()).dim == 1
    assert build_sections(four_point_discrete()).dim == 2
    fixed = FiniteInvolutiveSpace.build(1, (0,), discrete=True)
    assert build_sections(fixed).dim == 0


def test_sections_are_odd():
    secs = build_sections(four_point_discrete())
    f = secs.element(np.array([2.0, -3.0]))
    assert secs.is_section(f)
    tau = secs.space.tau
    for p in range(4):
        assert f[tau[p]] == -f[p]
    assert not secs.is_section(np.array([1.0, 1.0, 0.0, 0.0]))


def test_sections_vanish_at_fixed_points():
    mixed = FiniteInvolutiveSpace.build(3, (1, 0, 2), discrete=True)
    secs = build_sections(mixed)
    assert secs.dim == 1
    for row in secs.basis:
        assert row[2] == 0.0


def test_antisymmetric_sets_two_point():
    assert [sorted(s) for s in antisymmetric_open_sets(two_point_swap())] == [[], [0], [1]]
    assert [sorted(s) for s in antisymmetric_open_sets(two_point_swap(False))] == [[]]


def test_antisymmetric_count_discrete():
    # 3^k sets and 2^k maximal ones for k free orbits, discrete topology
    for n, k in ((2, 1), (4, 2), (6, 3)):
        tau = tuple(p + 1 if p % 2 == 0 else p - 1 for p in range(n))
        sp = FiniteInvolutiveSpace.build(n, tau, discrete=True)
        sets = antisymmetric_open_sets(sp)
        assert len(sets) == 3 ** k
        maximal = [u for u in sets if is_maximal_antisymmetric(sp, u).maximal]
        assert len(maximal) == 2 ** k


def test_cone_examples():
    sp = two_point_swap()
    secs = build_sections(sp)
    cone = cone_of_open_set(secs, {1})
    # sections with f(1) >= 0
    assert cone.contains(np.array([-2.0, 2.0]))
    assert not cone.contains(np.array([2.0, -2.0]))
    assert cone.contains(np.zeros(2))

    empty = cone_of_open_set(secs, frozenset())
    assert empty.contains(np.zeros(2))
    assert not empty.contains(np.array([1.0, -1.0]))


def test_cone_span_dimension():
    sp = four_point_discrete()
    secs = build_sections(sp)
    cone = cone_of_open_set(secs, {1, 3})
    assert cone.span_dim() == 2
    assert len(cone.generators()) == 2


def test_cone_requires_open_antisymmetric():
    sp = two_point_swap(False)  # indiscrete
    secs = build_sections(sp)
    with pytest.raises(ValueError):
        cone_of_open_set(secs, {0})  # not open
    sp2 = two_point_swap()
    with pytest.raises(ValueError):
        cone_of_open_set(build_sections(sp2), {0, 1})  # meets its image


def test_recover_open_set_roundtrip():
    for sp in (two_point_swap(), four_point_discrete()):
        secs = build_sections(sp)
        for u in antisymmetric_open_sets(sp):
            assert recover_open_set(cone_of_open_set(secs, u)) == u


def test_maximality_examples_four_point():
    sp = four_point_discrete()
    r = is_maximal_antisymmetric(sp, frozenset({1}))
    assert not r.maximal
    assert r.agree  # all four conditions say no
    assert r.witness is not None and frozenset({1}) < r.witness

    r2 = is_maximal_antisymmetric(sp, frozenset({1, 3}))
    assert r2.maximal and r2.agree

    r3 = is_maximal_antisymmetric(sp, frozenset())
    assert not r3.maximal


def test_two_point_indiscrete_splits_conditions():
    # the empty set has no strictly larger antisymmetric open (v holds)
    # yet its complement is the whole space, not a boundary (ii fails):
    # the two points are topologically indistinguishable
    sp = two_point_swap(False)
    r = is_maximal_antisymmetric(sp, frozenset())
    assert r.conditions["v"]
    assert not r.conditions["ii"]
    assert not r.agree
    assert not sp.separates_orbits()


def test_four_point_indistinguishable_pair_splits_conditions():
    # one discrete orbit {0,1}; orbit {2,3} glued by the topology: every
    # open containing 2 contains 3 and conversely
    sp = FiniteInvolutiveSpace.build(
        4, (1, 0, 3, 2),
        opens=[{0}, {1}, {0, 1}, {2, 3}, {0, 2, 3}, {1, 2, 3},
               {0, 1, 2, 3}])
    assert not sp.separates_orbits()
    r = is_maximal_antisymmetric(sp, frozenset({0}))
    assert r.conditions["v"]
    assert not r.conditions["ii"]
    assert not r.agree


def test_first_three_conditions_always_agree():
    for n in (2, 4):
        for sp in enumerate_spaces(n):
            for u in antisymmetric_open_sets(sp):
                r = is_maximal_antisymmetric(sp, u)
                assert r.conditions["ii"] == r.conditions["iii"] == r.conditions["iv"]


def test_divergence_only_without_orbit_separation():
    for n in (2, 4):
        for sp in enumerate_spaces(n):
            agree = all(is_maximal_antisymmetric(sp, u).agree
                        for u in antisymmetric_open_sets(sp))
            if sp.separates_orbits():
                assert agree


def test_separating_spaces_have_nontrivial_antisymmetric_set():
    for n in (2, 4):
        for sp in enumerate_spaces(n):
            if sp.separates_orbits():
                assert any(len(u) > 0 for u in antisymmetric_open_sets(sp))


def test_cone_inclusion_matches_set_inclusion():
    for sp in (two_point_swap(), four_point_discrete(), two_point_swap(False)):
        ok, witness = cone_inclusion_matches_set_inclusion(sp)
        assert ok, witness
    for sp in enumerate_spaces(4):
        ok, witness = cone_inclusion_matches_set_inclusion(sp)
        assert ok, witness


def test_vanishing_ideal_examples():
    sp = four_point_discrete()
    secs = build_sections(sp)
    assert vanishing_ideal(secs, frozenset({0, 1, 2, 3})).shape[0] == 0
    assert vanishing_ideal(secs, frozenset()).shape[0] == 2
    assert vanishing_ideal(secs, frozenset({0, 1})).shape[0] == 1


def test_vanishing_ideal_validates_input():
    sp = four_point_discrete()
    secs = build_sections(sp)
    with pytest.raises(ValueError):
        vanishing_ideal(secs, frozenset({0}))  # not symmetric
    indiscrete4 = FiniteInvolutiveSpace.build(4, (1, 0, 3, 2), opens=[])
    with pytest.raises(ValueError):
        # symmetric but not closed: the only closed sets are trivial
        vanishing_ideal(build_sections(indiscrete4), frozenset({0, 1}))
    vanishing_ideal(build_sections(indiscrete4), frozenset({0, 1, 2, 3}))


def test_vanishing_ideals_are_ternary_ideals_and_biject():
    # discrete case: closed symmetric sets correspond one to one with
    # ternary ideals of the section space, reversing inclusion
    sp = four_point_discrete()
    secs = build_sections(sp)
    closed_sets = [frozenset(), frozenset({0, 1}), frozenset({2, 3}),
                   frozenset({0, 1, 2, 3})]
    ideals = {c: vanishing_ideal(secs, c) for c in closed_sets}
    dims = {c: m.shape[0] for c, m in ideals.items()}
    assert sorted(dims.values()) == [0, 1, 1, 2]
    for c1 in closed_sets:
        for c2 in closed_sets:
            if c1 <= c2:
                assert dims[c1] >= dims[c2]
    # ternary ideal property: f g h stays inside, entrywise products
    for c, rows in ideals.items():
        for f in rows:
            for g in secs.basis:
                for h in secs.basis:
                    prod = f * g * h
                    if rows.shape[0]:
                        coeffs, *_ = np.linalg.lstsq(rows.T, prod, rcond=None)
                        assert np.allclose(rows.T @ coeffs, prod, atol=1e-12)
                    else:
                        assert np.allclose(prod, 0)


def test_embed_two_point_swap():
    secs = build_sections(two_point_swap())
    z = embed_as_tro(secs)
    assert z.dim == 1
    expected = orthonormalize([np.diag([1.0, -1.0]).astype(complex)])
    assert subspace_equal(z.space, expected)


def test_embed_fixed_point_space_is_zero():
    fixed = FiniteInvolutiveSpace.build(2, (0, 1), discrete=True)
    z = embed_as_tro(build_sections(fixed))
    assert z.dim == 0


def test_embedding_counts_match_combinatorics():
    for n in (2, 4):
        tau = tuple(p + 1 if p % 2 == 0 else p - 1 for p in range(n))
        sp = FiniteInvolutiveSpace.build(n, tau, discrete=True)
        sets = antisymmetric_open_sets(sp)
        maximal = [u for u in sets if is_maximal_antisymmetric(sp, u).maximal]
        info = classify(embed_as_tro(build_sections(sp)))
        assert info.natural_cone_count == len(sets)
        assert info.maximal_cone_count == len(maximal)


def test_enumerate_spaces_counts_and_validity():
    assert len(enumerate_spaces(2)) == 2  # indiscrete and discrete
    spaces4 = enumerate_spaces(4)
    assert len(spaces4) == 19
    for sp in spaces4[:5]:
        for a in sp.opens:
            assert sp.tau_mask(a) in sp.opens
    with pytest.raises(ValueError):
        enumerate_spaces(3)
    with pytest.raises(ValueError):
        enumerate_spaces(8)

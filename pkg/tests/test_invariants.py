"""Stationary descendent invariants: frozen values, structure, properties."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gwp1.epslaurent import EpsLaurent
from gwp1.invariants import (
    free_energy,
    invariant_by_genus,
    n_point_invariant,
    one_point_invariant,
)


def eps(pairs):
    return EpsLaurent({e: Fraction(v) for e, v in pairs.items()})


def test_one_point_values():
    assert one_point_invariant(0).value == eps({-2: 1, 0: "-1/24"})
    assert one_point_invariant(1).value == EpsLaurent.zero()
    assert one_point_invariant(2).value == eps({-2: "1/4", 0: "1/24", 2: "7/5760"})
    with pytest.raises(ValueError):
        one_point_invariant(-1)


def test_two_point_values():
    assert n_point_invariant((0, 0)).value == eps({-2: 1})
    assert n_point_invariant((0, 1)).value == EpsLaurent.zero()
    assert n_point_invariant((1, 1)).value == eps({-2: "1/2"})
    assert n_point_invariant((2, 2)).value == eps({-2: "1/3", 0: "1/6", 2: "1/576"})


def test_divisor_like_cross_check():
    # <tau_0 tau_2> agrees with the independent frozen evaluation
    assert n_point_invariant((0, 2)).value == eps({-2: "1/2", 0: "1/24"})


def test_three_point_values():
    assert n_point_invariant((0, 0, 0)).value == eps({-2: 1})
    assert n_point_invariant((0, 1, 2)).value == EpsLaurent.zero()


def test_bad_inputs():
    with pytest.raises(ValueError):
        n_point_invariant((-1, 0))
    with pytest.raises(ValueError):
        n_point_invariant(())


def test_by_genus_decoding():
    table = invariant_by_genus((0,))
    assert table == {0: Fraction(1), 1: Fraction(-1, 24)}
    t2 = invariant_by_genus((2,))
    assert t2[0] == Fraction(1, 4) and t2[2] == Fraction(7, 5760)


def test_free_energy_weight_3():
    fe = free_energy(3)
    assert fe[(0,)] == eps({-2: 1, 0: "-1/24"})
    assert fe[(0, 0)] == eps({-2: "1/2"})
    assert fe[(0, 0, 0)] == eps({-2: "1/6"})
    assert fe[(2,)] == eps({-2: "1/4", 0: "1/24", 2: "7/5760"})
    assert (1,) not in fe and (0, 1) not in fe  # parity-vanishing entries dropped
    assert set(fe) <= {(0,), (0, 0), (0, 0, 0), (1,), (0, 1), (2,)}


small_ks = st.lists(
    st.integers(min_value=0, max_value=4), min_size=1, max_size=3
).filter(lambda ks: sum(ks) <= 6)


@settings(max_examples=25, deadline=None)
@given(small_ks)
def test_structural_properties(ks):
    rec = n_point_invariant(tuple(sorted(ks)), check_stability=False)
    total = sum(ks)
    if total % 2 == 1:
        assert rec.value == EpsLaurent.zero()  # parity vanishing
        return
    for e in rec.value.exponents():
        assert e % 2 == 0  # even eps-exponents only
        # e = 2g-2 with genus g >= 0 and degree d = total/2 + 1 - g >= 0
        assert -2 <= e <= total


@settings(max_examples=10, deadline=None)
@given(st.permutations([0, 0, 2]))
def test_permutation_symmetry(perm):
    base = n_point_invariant((0, 0, 2), check_stability=False).value
    assert n_point_invariant(tuple(perm), check_stability=False).value == base

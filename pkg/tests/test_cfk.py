"""Tests for bifiltered complexes: staircases, tensors, homology, splitting."""

from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma4 import _kernels
from gamma4.cfk import (
    BifilteredComplex,
    HomologySummary,
    MalformedExponentsError,
    NotSingleTowerError,
    dual,
    homology_over_polynomial_ring,
    staircase,
    staircase_exponents,
    staircase_from_semigroup,
    subcomplex_at_level,
    tensor,
    tensor_power,
    trefoil_staircase,
    v_invariant,
    verify_staircase2n,
    vi_sequence,
)
from gamma4.semigroups import FormalSemigroup
from gamma4.torus import alexander, vi_lspace

coprime_pairs = (
    st.tuples(st.integers(min_value=2, max_value=14), st.integers(min_value=2, max_value=14))
    .filter(lambda ab: gcd(*ab) == 1 and ab[0] * ab[1] <= 120)
)


def torus_staircase(p: int, q: int) -> BifilteredComplex:
    return staircase_from_semigroup(FormalSemigroup.from_generators(p, q))


def test_staircase_frozen_gradings():
    tref = trefoil_staircase()
    assert tref.maslov == (0, -1, -2)
    assert tref.alexander == (1, 0, -1)
    assert tref.arrows == ((), ((0, 2), (1, 0)), ())
    s35 = staircase([4, 3, 1, 0, -1, -3, -4])
    assert s35.maslov == (0, -1, -2, -3, -4, -7, -8)
    unknot = staircase([0])
    assert unknot.maslov == (0,) and unknot.arrows == ((),)


@pytest.mark.parametrize("bad", [[1, 0], [1, 1, 0, -1, -1], [2, 0, -1], [0, 1, -1]])
def test_staircase_malformed(bad):
    with pytest.raises(MalformedExponentsError):
        staircase(bad)


def test_staircase_exponents_match_alexander_support():
    for p, q in [(2, 3), (3, 5), (5, 6), (4, 7)]:
        exps = staircase_exponents(FormalSemigroup.from_generators(p, q))
        assert list(exps) == sorted(alexander(p, q), reverse=True)


def test_complex_validation_rejects_bad_data():
    with pytest.raises(ValueError):
        BifilteredComplex(("x", "x"), (0, 0), (0, 0), ((), ()))  # duplicate ids
    with pytest.raises(ValueError):
        BifilteredComplex(("x", "y"), (0, -2), (0, 0), ((((0, 1)),), ()))  # grading
    with pytest.raises(ValueError):  # filtration: A(tgt) - e > A(src)
        BifilteredComplex(("x", "y"), (0, -1), (0, 5), (((0, 1),), ()))
    with pytest.raises(ValueError):  # differential does not square to zero
        BifilteredComplex(
            ("a", "b", "c"),
            (0, -1, -2),
            (0, 0, 0),
            ((((0, 1),), ((0, 2),), ())),
        )


def test_dump_golden_trefoil():
    assert trefoil_staircase().dump() == (
        "y1 0 1\n"
        "y2 -1 0\n"
        "y3 -2 -1\n"
        "y2 -> U^0 y3\n"
        "y2 -> U^1 y1"
    )


def test_homology_examples():
    one = BifilteredComplex(("x",), (0,), (0,), ((),))
    assert homology_over_polynomial_ring(one) == HomologySummary(1, 0, ())
    pair = BifilteredComplex(("x", "y"), (0, -1), (0, 0), (((0, 1),), ()))
    assert homology_over_polynomial_ring(pair) == HomologySummary(0, None, ())
    assert homology_over_polynomial_ring(pair).is_zero
    # Trefoil at filtration level 0: tower drops to grading -2.
    level0 = subcomplex_at_level(trefoil_staircase(), 0)
    assert homology_over_polynomial_ring(level0).tower_grading == -2


def test_v_invariant_values():
    tref = trefoil_staircase()
    assert v_invariant(tref, 0) == 1
    assert v_invariant(tref, 1) == 0
    assert v_invariant(staircase([4, 3, 1, 0, -1, -3, -4]), 0) == 2
    with pytest.raises(NotSingleTowerError):
        v_invariant(
            BifilteredComplex(("x", "y"), (0, 0), (0, 0), ((), ())), 0
        )


def test_vi_sequence_examples():
    assert vi_sequence(staircase([4, 3, 1, 0, -1, -3, -4])) == (2, 1, 1, 1, 0)
    assert vi_sequence(staircase([0])) == (0,)
    assert vi_sequence(torus_staircase(5, 6)) == vi_lspace(5, 6)
    assert vi_sequence(dual(trefoil_staircase())) == (0,)


def test_tensor_basics():
    tref = trefoil_staircase()
    assert len(tensor(tref, tref)) == 9
    assert vi_sequence(tensor(tref, tref)) == vi_lspace(2, 5) == (1, 1, 0)
    unit = staircase([0])
    prod = tensor(tref, unit)
    assert prod.maslov == tref.maslov
    assert prod.alexander == tref.alexander
    assert prod.arrows == tref.arrows


def test_dual_involution():
    for p, q in [(2, 3), (3, 5)]:
        c = torus_staircase(p, q)
        dd = dual(dual(c))
        assert dd.maslov == c.maslov
        assert dd.alexander == c.alexander
        assert dd.arrows == c.arrows


@given(coprime_pairs)
@settings(max_examples=30, deadline=None)
def test_vi_matches_torsion_formula(ab):
    p, q = ab
    assert vi_sequence(torus_staircase(p, q)) == vi_lspace(p, q)


@given(coprime_pairs.filter(lambda ab: ab[0] * ab[1] <= 60))
@settings(max_examples=20, deadline=None)
def test_dual_staircases_have_zero_profile(ab):
    assert vi_sequence(dual(torus_staircase(*ab))) == (0,)


@given(coprime_pairs.filter(lambda ab: ab[0] * ab[1] <= 40), coprime_pairs.filter(lambda ab: ab[0] * ab[1] <= 40))
@settings(max_examples=15, deadline=None)
def test_tensor_profile_shape(ab, cd):
    """Tensor products of staircases: construction validates all invariants,
    and the torsion profile is a well-formed sequence reaching 0 at the genus."""
    c = tensor(torus_staircase(*ab), torus_staircase(*cd))
    seq = vi_sequence(c)
    genus = max(c.alexander)
    assert len(seq) == genus + 1
    assert seq[-1] == 0
    assert all(cur - nxt in (0, 1) for cur, nxt in zip(seq, seq[1:]))


@pytest.mark.parametrize(
    "p,n",
    [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)],
)
def test_tensor_power_matches_representative(p, n):
    base = torus_staircase(p, p + 1)
    assert vi_sequence(tensor_power(base, n)) == vi_lspace(p, p * n + 1)


@pytest.mark.slow
def test_tensor_power_matches_representative_large():
    base = torus_staircase(5, 6)
    assert vi_sequence(tensor_power(base, 4)) == vi_lspace(5, 21)


def test_subcomplex_gradings():
    tref = trefoil_staircase()
    sub = subcomplex_at_level(tref, 0)
    assert sub.maslov == (-2, -1, -2)
    assert sub.alexander == (0, 0, -1)
    # Level at or above the genus changes nothing.
    assert subcomplex_at_level(tref, 1).maslov == tref.maslov


def test_verify_staircase2n():
    for n in (1, 2, 6):
        report = verify_staircase2n(n)
        assert report.passed, report.failures()
    assert verify_staircase2n(1).checks == ()  # base case: nothing to split
    assert len(verify_staircase2n(2).checks) == 7
    with pytest.raises(ValueError):
        verify_staircase2n(0)


def test_backends_agree_on_homology_structure():
    """The active backend and the NumPy twin must produce the same module
    structure (rank, torsion multiset, tower location) on sample complexes."""
    samples = [
        subcomplex_at_level(torus_staircase(3, 5), s) for s in range(0, 5)
    ] + [
        subcomplex_at_level(tensor(torus_staircase(2, 3), torus_staircase(2, 5)), s)
        for s in range(0, 4)
    ]
    for c in samples:
        n = len(c)
        entries = [(t, src) for src, terms in enumerate(c.arrows) for _, t in terms]
        grading = np.asarray(c.maslov, dtype=np.int64)
        res_active = _kernels.graded_snf(_kernels.pack_bit_rows(n, entries), grading.copy())
        res_numpy = _kernels._graded_snf_numpy(
            _kernels.pack_bit_rows(n, entries), grading.copy()
        )
        for res in (res_active, res_numpy):
            assert len(res[0]) == len(res_active[0])  # same rank
        tors_active = sorted(
            (int(d), int(c.maslov[i])) for i, d in zip(res_active[0], res_active[2]) if d >= 1
        )
        tors_numpy = sorted(
            (int(d), int(c.maslov[i])) for i, d in zip(res_numpy[0], res_numpy[2]) if d >= 1
        )
        assert tors_active == tors_numpy

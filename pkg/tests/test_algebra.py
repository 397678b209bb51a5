from fractions import Fraction

import pytest

from prelie_rota.algebra import (
    ALPHA_SAMPLES,
    CATALOG_NAMES,
    AlgebraSpec,
    basis_vector,
    catalog,
    catalog_instances,
    commutator_algebra,
    is_antisymmetric,
    jacobi_defects,
    left_prelie_defect,
    multiply,
    prelie_check,
)

e1, e2 = basis_vector(2, 0), basis_vector(2, 1)


def nonzero(A):
    return {k: A.constant(*k) for k in A.constants if A.constant(*k)}


def test_catalog_a1_constants():
    # 0-based keys: (i, j, k) means coefficient of e_k in e_i.e_j
    assert nonzero(catalog("A1")) == {(0, 0, 0): 1, (0, 0, 1): 1, (1, 0, 1): 1}


def test_catalog_a5_at_zero():
    assert nonzero(catalog("A5", 0)) == {(0, 0, 0): 1}


def test_catalog_a8_constants():
    assert nonzero(catalog("A8")) == {
        (0, 0, 0): 1,
        (0, 1, 1): 2,
        (1, 0, 0): Fraction(1, 2),
        (1, 0, 1): 1,
        (1, 1, 1): 1,
    }


def test_catalog_errors():
    with pytest.raises(KeyError):
        catalog("A9")
    with pytest.raises(ValueError):
        catalog("A5")
    with pytest.raises(ValueError):
        catalog("A1", 1)


def test_multiply_examples():
    A = catalog("A1")
    assert multiply(e2, e1, A) == (0, 1)
    assert multiply(e1, e2, A) == (0, 0)
    assert multiply((1, 1), e1, A) == (1, 2)


def test_prelie_defect_examples():
    assert left_prelie_defect(catalog("A1"), 0, 1, 0) == (0, 0)
    assert left_prelie_defect(catalog("A8"), 0, 1, 0) == (0, 0)
    for A in catalog_instances():
        for i in range(2):
            for k in range(2):
                assert left_prelie_defect(A, i, i, k) == (0, 0)


@pytest.mark.parametrize("A", catalog_instances(), ids=lambda A: A.label)
def test_left_prelie_everywhere(A):
    res = prelie_check(A)
    assert res["triples"] == 8
    assert res["left_pass"] == 8


def test_right_prelie_fails_somewhere():
    # the catalog is left-handed: the right identity breaks on A8
    assert prelie_check(catalog("A8"))["right_pass"] < 8


@pytest.mark.parametrize("A", catalog_instances(), ids=lambda A: A.label)
def test_commutator_is_lie(A):
    B, ok = commutator_algebra(A)
    assert ok
    assert is_antisymmetric(B)
    assert all(all(c == 0 for c in v) for v in jacobi_defects(B).values())


def test_json_round_trip():
    for name in CATALOG_NAMES:
        A = catalog(name, Fraction(1, 2)) if name in ("A5", "A6") else catalog(name)
        assert AlgebraSpec.from_json(A.to_json()) == A


def test_symbolic_alpha_round_trip():
    A = catalog("A6", "alpha")
    assert A.symbolic
    B = AlgebraSpec.from_json(A.to_json())
    assert B == A
    assert A.specialize(2) == catalog("A6", 2)


def test_alpha_samples():
    assert ALPHA_SAMPLES == (-1, 0, Fraction(1, 2), 1, 2)

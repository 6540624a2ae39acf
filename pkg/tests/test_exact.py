import math

import numpy as np
import pytest
from conftest import random_complex, svd_norm

from opnorm.exact import (
    AnchorNorms,
    anchor_norms,
    is_p_isometry,
    norm_inf,
    norm_inf_attained,
    norm_one,
    norm_one_attained,
    norm_two,
)
from opnorm.structured import densify, random_unitary_permutation

# ||[[1,2],[3,4]]||_2 solves the 2x2 Gram eigenproblem in closed form
_NORM2_1234 = math.sqrt(15.0 + math.sqrt(221.0))


def test_anchor_norms_frozen_2x2():
    a = anchor_norms([[1, 2], [3, 4]])
    assert a.n1 == 6.0
    assert a.ninf == 7.0
    assert a.n2 == pytest.approx(_NORM2_1234, rel=1e-12)


def test_attained_indices_and_ties():
    v, j = norm_one_attained([[1, 2], [3, 4]])
    assert (v, j) == (6.0, 1)
    v, i = norm_inf_attained([[1, 2], [3, 4]])
    assert (v, i) == (7.0, 1)
    # ties resolve to the smallest index
    _, j = norm_one_attained([[1, 1], [1, 1]])
    assert j == 0


def test_norm_one_norm_inf_duality():
    rng = np.random.default_rng(2)
    A = random_complex(rng, 4, 4)
    assert norm_one(A) == pytest.approx(norm_inf(np.conj(A.T)), rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_norm_two_matches_svd_oracle(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(8):
        A = random_complex(rng, n, n)
        assert norm_two(A) == pytest.approx(svd_norm(A), rel=1e-12)


def test_norm_two_special_shapes():
    rng = np.random.default_rng(17)
    H = random_complex(rng, 6, 6)
    H = H + np.conj(H.T)  # hermitian
    assert norm_two(H) == pytest.approx(svd_norm(H), rel=1e-12)
    B = random_complex(rng, 6, 2)
    low = B @ np.conj(B.T)  # rank deficient
    assert norm_two(low) == pytest.approx(svd_norm(low), rel=1e-12)
    assert norm_two(np.zeros((4, 4))) == 0.0
    assert norm_two([[3 + 4j]]) == pytest.approx(5.0, rel=1e-15)


def test_norm_two_scale_invariance():
    rng = np.random.default_rng(23)
    A = random_complex(rng, 5, 5)
    base = norm_two(A)
    assert norm_two(1e150 * A) == pytest.approx(1e150 * base, rel=1e-12)
    assert norm_two(1e-150 * A) == pytest.approx(1e-150 * base, rel=1e-12)


def test_norm_two_requires_square():
    with pytest.raises(ValueError):
        norm_two(np.ones((2, 3)))


def test_anchor_invariant_enforced():
    # n2 <= sqrt(n1 * ninf) must hold for admissible anchors
    with pytest.raises(ValueError):
        AnchorNorms(1.0, 2.0, 1.0)
    a = AnchorNorms(2.0, 2.0, 2.0)
    assert a.geometric_midpoint == 2.0


def test_anchor_two_norm_interpolation_bound():
    rng = np.random.default_rng(31)
    for _ in range(20):
        a = anchor_norms(random_complex(rng, 4, 4))
        assert a.n2 <= a.geometric_midpoint * (1 + 1e-9)


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 4.0, math.inf])
def test_unitary_permutation_is_isometry(p):
    S = random_unitary_permutation(6, seed=9)
    assert is_p_isometry(densify(S), p)


def test_is_p_isometry_rejects():
    S = densify(random_unitary_permutation(5, seed=4)).copy()
    i = int(np.argmax(np.abs(S).sum(axis=1)))
    S[i, :] *= 1.001  # off-modulus phase
    assert not is_p_isometry(S, 2)
    assert not is_p_isometry([[1, 1], [0, 1]], 2)  # two nonzeros in a row
    assert not is_p_isometry(np.ones((2, 3)), 2)  # not square
    with pytest.raises(ValueError):
        is_p_isometry(np.eye(2), 2, trials=0)


def test_diagonal_phases_are_isometries():
    D = np.diag([1.0, 1j, -1.0])
    assert is_p_isometry(D, 1.5)
    assert not is_p_isometry(np.diag([1.0, 0.5]), 1.5)

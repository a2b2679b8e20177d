from __future__ import annotations

import numpy as np
import pytest

from linform.equation import canceling_pair_partition, is_translation_invariant, make_equation
from linform.errors import ArityMismatch, NotApplicable, OutOfRange
from linform.field import field_of_order
from linform.hilbert import cube_system, find_cube_embedding, verify_embedding

CUBE_EQ = [-6, 3, 1, 7, 2, -4, -2, -1]


def test_cube_system_points():
    assert cube_system(1).points == [0, 1]
    assert cube_system(2).incidence.astype(int).tolist() == [[0, 0], [1, 0], [0, 1], [1, 1]]
    assert len(cube_system(3).points) == 8
    with pytest.raises(OutOfRange):
        cube_system(0)


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_relations_vanish_exactly_on_cubes(t):
    M = cube_system(t).relations()
    rng = np.random.default_rng(t)
    for _ in range(20):
        x, d = rng.integers(-50, 50), rng.integers(-50, 50, size=t)
        pts = np.array([x + sum(d[i] for i in range(t) if S >> i & 1) for S in range(1 << t)])
        assert not (pts @ M).any()
    # rank 2^t - t - 1 leaves exactly the t+1 cube parameters free
    assert (np.linalg.matrix_rank(M) if M.size else 0) == (1 << t) - t - 1


def test_eleven_element_embedding_and_no_pairing():
    F = field_of_order(11)
    L = make_equation(F, CUBE_EQ)
    emb = find_cube_embedding(L, 3)
    assert emb == [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
    assert verify_embedding(L, 3, emb)
    assert canceling_pair_partition(L.coeffs) is None


def test_small_examples():
    F5 = field_of_order(5)
    assert find_cube_embedding(make_equation(F5, [1, 4, 4, 1]), 2) == [0, 1, 2, 3]
    assert find_cube_embedding(make_equation(F5, [1, 1, 1, 1]), 2) is None
    with pytest.raises(ArityMismatch):
        find_cube_embedding(make_equation(F5, [1, 4, 4]), 2)
    with pytest.raises(NotApplicable):
        find_cube_embedding(make_equation(F5, [1, 4, 4, 1], rhs_mode="nonzero"), 2)


def test_needs_translation_invariance():
    rng = np.random.default_rng(0)
    for q in (3, 5, 7):
        F = field_of_order(q)
        for _ in range(30):
            L = make_equation(F, list(rng.integers(1, q, size=4)))
            emb = find_cube_embedding(L, 2)
            if not is_translation_invariant(L):
                assert emb is None
            elif emb is not None:
                assert verify_embedding(L, 2, emb)


def test_wrong_assignment_fails_verification():
    L = make_equation(field_of_order(11), CUBE_EQ)
    assert not verify_embedding(L, 3, [0, 1, 2, 3, 4, 5, 6, 7])

"""Sign matrices: Sylvester, Paley conference, regular Hadamard supply."""

import numpy as np
import pytest

from cretan.designs import fixture_difference_set
from cretan.hadamard import (
    NoConstructionAvailable,
    SignMatrix,
    kronecker_sign,
    menon_hadamard_from_design,
    paley_conference,
    regular_hadamard,
    sylvester,
)


def test_sylvester_orders():
    for e in range(6):
        H = sylvester(e)
        assert H.order == 2 ** e
        H.validate()
    assert (sylvester(1).entries == [[1, 1], [1, -1]]).all()
    with pytest.raises(ValueError):
        sylvester(-1)


def test_paley_conference_prime():
    W = paley_conference(5)
    assert W.order == 6 and W.kind == "conference"
    assert W.is_symmetric
    E = W.entries.astype(np.int64)
    assert (E @ E.T == 5 * np.eye(6, dtype=np.int64)).all()


def test_paley_conference_prime_power():
    W = paley_conference(9)
    assert W.order == 10
    assert W.is_symmetric
    W.validate()


def test_paley_conference_rejects_3_mod_4():
    with pytest.raises(ValueError):
        paley_conference(7)


def test_regular_seed_and_powers_of_two():
    for m in (1, 2, 4, 8):
        M = regular_hadamard(m)
        assert M.order == 4 * m * m
        assert M.excess == 2 * m
        M.validate()


def test_regular_hadamard_from_menon_fixture():
    M = regular_hadamard(3)
    assert M.order == 36 and M.excess == 6
    M.validate()
    assert (M.entries.sum(axis=0) == 6).all()


def test_regular_hadamard_times_two():
    M = regular_hadamard(6)
    assert M.order == 144 and M.excess == 12
    M.validate()


def test_regular_hadamard_missing_fixture():
    for m in (5, 7):
        with pytest.raises(NoConstructionAvailable):
            regular_hadamard(m)


def test_menon_mapping_direct():
    sb = fixture_difference_set("36-15-6").develop()
    M = menon_hadamard_from_design(sb)
    assert M.excess == 6
    assert np.isin(M.entries, (-1, 1)).all()


def test_kronecker_sign_weights():
    H = kronecker_sign(sylvester(2), sylvester(1))
    assert H.order == 8 and H.weight == 8 and H.kind == "hadamard"
    H.validate()
    W = kronecker_sign(paley_conference(5), sylvester(1))
    assert W.kind == "weighing" and W.weight == 10
    W.validate()


def test_validate_catches_broken_matrix():
    H = sylvester(2)
    bad = H.entries.copy()
    bad[0, 0] = -bad[0, 0]
    broken = SignMatrix(4, bad, "hadamard", 4)
    with pytest.raises(ValueError):
        broken.validate()

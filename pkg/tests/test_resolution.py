import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homres import (ChainComplex, FgAbGroup, IntMatrix, free_resolution, homological_resolution,
                    is_homological, is_quasi_iso, pad_resolution, total_map, validate_resolution)
from homres.generators import random_complex
from homres.resolution import (AugmentedRowResolution, higher_components, matrix_locations,
                               resolution_with_entry, row_problems)


# -- rows -----------------------------------------------------------------


def test_free_resolution_of_z2():
    R = free_resolution(FgAbGroup.cyclic(2))
    assert R.ranks == {-1: 1, 0: 1}
    assert R.d1[-1] == IntMatrix([[2]])
    assert row_problems(R) == []


def test_free_resolution_of_free_group():
    R = free_resolution(FgAbGroup.free(3))
    assert R.ranks == {0: 3}
    assert row_problems(R) == []


def test_free_resolution_of_z2_plus_z():
    R = free_resolution(FgAbGroup.from_invariants([2], 1))
    assert R.ranks == {-1: 1, 0: 2}
    assert R.d1[-1] == IntMatrix([[2], [0]])
    assert row_problems(R) == []


def test_free_resolution_drops_unit_generators():
    # Z^2 / <(1, 1), (0, 3)> is Z/3 on a non-obvious generator
    G = FgAbGroup(2, IntMatrix([[1, 0], [1, 3]]))
    R = free_resolution(G)
    assert R.ranks == {-1: 1, 0: 1}
    assert row_problems(R) == []


def test_pad_zero_is_identity():
    R = free_resolution(FgAbGroup.cyclic(2))
    assert pad_resolution(R, 0) is R


def test_padding_z2_by_one_gives_three_columns():
    R = pad_resolution(free_resolution(FgAbGroup.cyclic(2)), 1, random.Random(1))
    assert R.columns == [-2, -1, 0]
    assert row_problems(R) == []


def test_padding_the_zero_group_gives_acyclic_row():
    R = pad_resolution(free_resolution(FgAbGroup.free(0)), 2, random.Random(2))
    assert len(R.columns) >= 2
    assert row_problems(R) == []


@given(st.lists(st.integers(0, 9), max_size=3), st.integers(0, 3), st.integers(0, 10**6))
def test_padded_rows_stay_exact(orders, extra, seed):
    G = FgAbGroup(len(orders), IntMatrix.diag(orders))
    R = pad_resolution(free_resolution(G), extra, random.Random(seed))
    assert row_problems(R) == []


def test_row_problems_catch_bad_augmentation():
    R = free_resolution(FgAbGroup.cyclic(2))
    bad = AugmentedRowResolution(0, R.group, R.ranks, R.d1, IntMatrix([[2]]))
    assert row_problems(bad)


# -- whole resolutions ----------------------------------------------------


def test_resolution_of_z_in_degree_zero():
    res = homological_resolution(ChainComplex({0: 1}))
    assert res.C.ranks == {(0, 0): 1}
    assert res.C.components == {}
    assert res.phi.components == {(0, 0, 0): IntMatrix([[1]])}
    assert validate_resolution(res) == []


def test_zero_differential_gives_column_zero_only():
    A = ChainComplex({0: 2, 1: 1, 3: 1})
    res = homological_resolution(A)
    assert res.C.columns == [0]
    assert res.C.r_max == -1
    assert validate_resolution(res) == []


def test_resolution_of_z_to_2z(z_to_2z):
    res = homological_resolution(z_to_2z)
    assert res.C.ranks == {(-1, 1): 1, (0, 1): 1}
    assert res.C.d(1, -1, 1) == IntMatrix([[2]])
    assert res.phi.components == {(0, 0, 1): IntMatrix([[1]]), (1, -1, 1): IntMatrix([[1]])}
    assert is_quasi_iso(total_map(res.phi))
    assert validate_resolution(res) == []


def test_resolution_of_zero_complex():
    res = homological_resolution(ChainComplex.zero())
    assert res.C.ranks == {}
    assert validate_resolution(res) == []


def test_resolution_is_deterministic(z_to_2z):
    a = homological_resolution(z_to_2z, {1: 2}, seed=4, perturb=True)
    b = homological_resolution(z_to_2z, {1: 2}, seed=4, perturb=True)
    assert a.C == b.C and a.phi == b.phi


@given(st.integers(0, 10**6))
def test_random_resolutions_validate(seed):
    rng = random.Random(seed)
    A = random_complex(rng)
    res = homological_resolution(A)
    assert validate_resolution(res) == []
    assert set(res.C.columns) <= {-1, 0}
    assert res.C.r_max <= 1


@given(st.integers(0, 10**6), st.booleans())
def test_padded_resolutions_validate(seed, perturb):
    rng = random.Random(seed)
    A = random_complex(rng)
    pad = {j: rng.randint(0, 2) for j in A.degrees}
    res = homological_resolution(A, pad, seed=seed, perturb=perturb)
    assert validate_resolution(res) == []
    assert is_homological(res.C)
    if not perturb:
        assert res.C.r_max <= 1


def test_perturbed_padding_produces_d2():
    hits = 0
    for seed in range(20):
        rng = random.Random(seed)
        A = random_complex(rng)
        res = homological_resolution(A, {j: 1 for j in A.degrees}, seed=seed, perturb=True)
        hits += higher_components(res).get(2, 0) > 0
    assert hits > 0


# -- negative checks ------------------------------------------------------


def test_changing_d1_is_detected(z_to_2z):
    res = homological_resolution(z_to_2z)
    bad = resolution_with_entry(res, ("d", (1, -1, 1)), 0, 0, 4)
    assert validate_resolution(bad)


def test_changing_phi_is_detected(z_to_2z):
    res = homological_resolution(z_to_2z)
    assert validate_resolution(resolution_with_entry(res, ("phi", (0, 0, 1)), 0, 0, 3))
    assert validate_resolution(resolution_with_entry(res, ("phi", (1, -1, 1)), 0, 0, 0))


def test_matrix_locations_cover_everything(z_to_2z):
    res = homological_resolution(z_to_2z, {1: 1}, seed=1)
    kinds = {w[0] for w, _ in matrix_locations(res)}
    assert kinds == {"d", "phi", "aug"}


def test_unknown_location_rejected(z_to_2z):
    res = homological_resolution(z_to_2z)
    with pytest.raises(ValueError):
        resolution_with_entry(res, ("psi", 0), 0, 0, 1)

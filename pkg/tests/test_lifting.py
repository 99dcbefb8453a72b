import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homres import (ChainComplex, ChainMap, IntMatrix, LiftingError, MulticomplexHomotopy,
                    MulticomplexMap, check_mc_homotopy, check_mc_map, embed_complex, embed_map,
                    find_homotopy, homological_resolution, homotopy_between_lifts,
                    induced_resolution_map, is_quasi_iso, lift_through_quasi_iso, total_map)
from homres.generators import (random_complex, random_homotopy_blocks, random_mc_map,
                               random_quasi_iso)
from homres.lifting import homotopy_inverse
from homres.multicomplex import compose_blocks, planted_map


def lifting_instance(seed: int):
    rng = random.Random(seed)
    A = random_complex(rng)
    f = random_quasi_iso(A, rng)
    res = homological_resolution(f.source, {j: rng.randint(0, 1) for j in f.source.degrees},
                                 seed=seed, perturb=True)
    gbar = random_mc_map(res.C, embed_complex(f.target), rng)
    return f, gbar, rng


def planted_pair(f: ChainMap, g: MulticomplexMap, rng: random.Random):
    """h = g + (d t + t d) and the homotopy -f t from f g to f h."""
    t = random_homotopy_blocks(g.source, g.target, rng)
    h = planted_map(g, t)
    F = embed_map(f)
    ft = {k: -m for k, m in compose_blocks(F.components, 0, t, -1).items()}
    return h, MulticomplexHomotopy(F.compose(g), F.compose(h), ft)


# -- lifting --------------------------------------------------------------


def test_lift_along_identity_returns_gbar(z_to_2z):
    res = homological_resolution(z_to_2z)
    g, s = lift_through_quasi_iso(ChainMap.identity(z_to_2z), res.phi)
    assert g == res.phi
    assert s.components == {}


def test_lift_of_zero_is_zero(z_to_2z):
    res = homological_resolution(z_to_2z)
    zero = MulticomplexMap.zero(res.C, embed_complex(z_to_2z))
    g, s = lift_through_quasi_iso(ChainMap.identity(z_to_2z), zero)
    assert g.components == {} and s.components == {}


def test_lift_phi_through_its_own_total(z_to_2z):
    res = homological_resolution(z_to_2z)
    f = total_map(res.phi)
    g, s = lift_through_quasi_iso(f, res.phi)
    assert check_mc_map(g)
    assert check_mc_homotopy(s)
    assert is_quasi_iso(total_map(g))


def test_lift_rejects_non_quasi_iso(z_to_2z):
    res = homological_resolution(z_to_2z)
    with pytest.raises(LiftingError):
        lift_through_quasi_iso(ChainMap.zero(z_to_2z, z_to_2z), res.phi)


@given(st.integers(0, 10**6))
def test_lift_witness_verifies(seed):
    f, gbar, _ = lifting_instance(seed)
    g, s = lift_through_quasi_iso(f, gbar)
    assert check_mc_map(g)
    assert s.g == gbar and s.f == embed_map(f).compose(g)
    assert check_mc_homotopy(s)


# -- homotopies between lifts ---------------------------------------------


def test_equal_lifts_give_zero_homotopy(z_to_2z):
    res = homological_resolution(z_to_2z)
    f = ChainMap.identity(z_to_2z)
    s = MulticomplexHomotopy(res.phi, res.phi, {})
    t = homotopy_between_lifts(f, res.phi, res.phi, s)
    assert t.components == {}


@given(st.integers(0, 10**6))
def test_planted_lifts_are_connected(seed):
    f, gbar, rng = lifting_instance(seed)
    g, _ = lift_through_quasi_iso(f, gbar)
    h, s = planted_pair(f, g, rng)
    assert check_mc_homotopy(s)
    t = homotopy_between_lifts(f, g, h, s)
    assert t.f == g and t.g == h
    assert check_mc_homotopy(t)


@given(st.integers(0, 10**6))
def test_identity_base_with_found_homotopy(seed):
    rng = random.Random(seed)
    A = random_complex(rng)
    res = homological_resolution(A, {j: 1 for j in A.degrees}, seed=seed, perturb=True)
    g = random_mc_map(res.C, embed_complex(A), rng)
    h = planted_map(g, random_homotopy_blocks(res.C, embed_complex(A), rng))
    s = find_homotopy(g, h)
    t = homotopy_between_lifts(ChainMap.identity(A), g, h, s)
    assert check_mc_homotopy(t)


# -- induced maps ---------------------------------------------------------


def test_induced_map_over_identity_is_identity(z_to_2z):
    res = homological_resolution(z_to_2z)
    g, w = induced_resolution_map(res, res, ChainMap.identity(z_to_2z))
    assert g == MulticomplexMap.identity(res.C)
    assert w.components == {}


def test_induced_map_from_z2_to_z4(z_to_2z):
    B = ChainComplex({0: 1, 1: 1}, {0: IntMatrix([[4]])})
    f = ChainMap(z_to_2z, B, {0: IntMatrix([[1]]), 1: IntMatrix([[2]])})
    ra, rb = homological_resolution(z_to_2z), homological_resolution(B)
    g, w = induced_resolution_map(ra, rb, f)
    assert check_mc_map(g)
    assert check_mc_homotopy(w)


def test_induced_map_over_zero_is_null_homotopic(z_to_2z):
    res = homological_resolution(z_to_2z, {1: 1}, seed=2)
    g, w = induced_resolution_map(res, res, ChainMap.zero(z_to_2z, z_to_2z))
    assert check_mc_homotopy(w)
    assert find_homotopy(g, MulticomplexMap.zero(res.C, res.C)) is not None


@given(st.integers(0, 10**6))
def test_induced_maps_of_quasi_isos_are_homotopy_equivalences(seed):
    rng = random.Random(seed)
    f = random_quasi_iso(random_complex(rng), rng)
    ra = homological_resolution(f.source, {j: rng.randint(0, 1) for j in f.source.degrees},
                                seed=seed, perturb=True)
    rb = homological_resolution(f.target)
    g, w = induced_resolution_map(ra, rb, f)
    back, w2 = homotopy_inverse(ra, rb, f)
    assert check_mc_homotopy(w) and check_mc_homotopy(w2)
    assert find_homotopy(back.compose(g), MulticomplexMap.identity(ra.C)) is not None
    assert find_homotopy(g.compose(back), MulticomplexMap.identity(rb.C)) is not None

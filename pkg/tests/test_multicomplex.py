import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homres import (ChainComplex, ChainMap, DimensionError, IntMatrix, Multicomplex,
                    MulticomplexHomotopy, MulticomplexMap, check_chain_map, check_homotopy_witness,
                    check_mc_homotopy, check_mc_map, embed_complex, embed_map, find_homotopy,
                    homological_resolution, is_homological, total_complex, total_homotopy,
                    total_map, validate_complex, validate_multicomplex)
from homres.generators import random_complex, random_homotopy_blocks, random_mc_map
from homres.multicomplex import homotopy_boundary, planted_map


def two_column(d1: int) -> Multicomplex:
    return Multicomplex({(-1, 1): 1, (0, 1): 1}, {(1, -1, 1): IntMatrix([[d1]])})


def random_resolution_complex(seed: int, pad: int = 1) -> Multicomplex:
    rng = random.Random(seed)
    A = random_complex(rng, max_rank=3, max_pieces=4)
    return homological_resolution(A, {j: pad for j in A.degrees}, seed=seed, perturb=True).C


# -- validity and predicates ----------------------------------------------


def test_embedded_complex_is_valid(z_to_2z):
    C = embed_complex(z_to_2z)
    assert validate_multicomplex(C) == []
    assert C.d(0, 0, 0) == IntMatrix([[2]])
    assert not is_homological(C)


def test_zero_multicomplex():
    C = Multicomplex.zero()
    assert validate_multicomplex(C) == []
    assert total_complex(C) == ChainComplex.zero()


def test_d1_squared_nonzero_is_reported():
    C = Multicomplex({(-2, 0): 1, (-1, 0): 1, (0, 0): 1},
                     {(1, -2, 0): IntMatrix([[1]]), (1, -1, 0): IntMatrix([[1]])})
    assert validate_multicomplex(C) == ["identity fails for n=2 at cell (-2, 0)"]


def test_block_shape_checked():
    with pytest.raises(DimensionError):
        Multicomplex({(-1, 0): 1, (0, 0): 2}, {(1, -1, 0): IntMatrix([[1]])})


def test_homological_examples():
    assert is_homological(two_column(2))
    assert not is_homological(two_column(0))
    assert not is_homological(Multicomplex({(1, 0): 1}))


# -- totalization ---------------------------------------------------------


def test_total_of_two_column_example():
    T = total_complex(two_column(2))
    assert T.ranks == {0: 1, 1: 1}
    assert T.diff(0) == IntMatrix([[2]])


@given(st.integers(0, 10**6))
def test_total_of_embedding_is_the_complex(seed):
    A = random_complex(random.Random(seed))
    assert total_complex(embed_complex(A)) == A


@given(st.integers(0, 10**6))
def test_total_complex_squares_to_zero(seed):
    C = random_resolution_complex(seed)
    assert validate_multicomplex(C) == []
    assert validate_complex(C.total) == []


@given(st.integers(0, 10**6))
def test_rows_of_homological_multicomplexes_are_complexes(seed):
    C = random_resolution_complex(seed)
    for j in C.rows:
        assert validate_complex(C.row(j)) == []


def test_column_filtration_is_increasing():
    C = random_resolution_complex(4, pad=2)
    prev = None
    for k in range(0, min(C.columns) - 1, -1):
        F = C.column_filtration(k)
        assert validate_multicomplex(F) == []
        if prev is not None:
            assert set(prev.ranks) <= set(F.ranks)
        prev = F
    assert prev == C


# -- maps and homotopies --------------------------------------------------


def test_identity_map_checks():
    C = two_column(2)
    assert check_mc_map(MulticomplexMap.identity(C))
    assert total_map(MulticomplexMap.identity(C)) == ChainMap.identity(C.total)


def test_negative_shift_rejected():
    C = two_column(2)
    with pytest.raises(ValueError):
        MulticomplexMap(C, C, {(-1, 0, 1): IntMatrix([[1]])})


def test_column_zero_map_totalizes_to_itself(z_to_2z):
    f = ChainMap(z_to_2z, z_to_2z, {0: IntMatrix([[3]]), 1: IntMatrix([[3]])})
    assert total_map(embed_map(f)) == f


@given(st.integers(0, 10**6))
def test_total_map_is_functorial(seed):
    rng = random.Random(seed)
    C = random_resolution_complex(seed)
    f = random_mc_map(C, C, rng, bound=1)
    g = random_mc_map(C, C, rng, bound=1)
    assert check_mc_map(f) and check_mc_map(g)
    assert total_map(g.compose(f)) == total_map(g).compose(total_map(f))


@given(st.integers(0, 10**6))
def test_planted_homotopy_descends_to_total(seed):
    rng = random.Random(seed)
    C = random_resolution_complex(seed)
    X = random_resolution_complex(seed + 1)
    g = random_mc_map(C, X, rng, bound=1)
    s = random_homotopy_blocks(C, X, rng)
    f = planted_map(g, s)
    h = MulticomplexHomotopy(f, g, s)
    assert check_mc_map(f)
    assert check_mc_homotopy(h)
    T = total_homotopy(h)
    assert check_chain_map(T.f) and check_homotopy_witness(T)


def test_corrupted_planted_homotopy_fails():
    rng = random.Random(11)
    C = random_resolution_complex(11)
    g = MulticomplexMap.identity(C)
    s = random_homotopy_blocks(C, C, rng)
    key = next(k for k, m in s.items() if m.rows and m.cols)
    f = planted_map(g, s)
    bad = dict(s)
    bad[key] = s[key].with_entry(0, 0, s[key][0, 0] + 1)
    assert check_mc_homotopy(MulticomplexHomotopy(f, g, s))
    assert not check_mc_homotopy(MulticomplexHomotopy(f, g, bad))


# -- deciding homotopy ----------------------------------------------------


def test_find_homotopy_of_equal_maps_is_zero():
    C = random_resolution_complex(5)
    f = MulticomplexMap.identity(C)
    h = find_homotopy(f, f)
    assert h is not None and h.components == {}


def test_identity_of_z_is_not_null_homotopic():
    E = embed_complex(ChainComplex({0: 1}))
    assert find_homotopy(MulticomplexMap.identity(E), MulticomplexMap.zero(E, E)) is None


def test_identity_of_acyclic_piece_is_null_homotopic():
    E = embed_complex(ChainComplex({0: 1, 1: 1}, {0: IntMatrix([[1]])}))
    h = find_homotopy(MulticomplexMap.identity(E), MulticomplexMap.zero(E, E))
    assert h is not None and check_mc_homotopy(h)


@given(st.integers(0, 10**6))
def test_find_homotopy_recovers_planted(seed):
    rng = random.Random(seed)
    C = random_resolution_complex(seed)
    X = random_resolution_complex(seed + 7)
    g = random_mc_map(C, X, rng, bound=1)
    f = planted_map(g, random_homotopy_blocks(C, X, rng))
    h = find_homotopy(f, g)
    assert h is not None and check_mc_homotopy(h)


def _brute_force_homotopy(f, g, box=2, limit=5):
    """Search every admissible homotopy with entries in [-box, box]; None if too many."""
    shape = random_homotopy_blocks(f.source, f.target, random.Random(0))
    slots = [(k, x, y) for k, m in shape.items() for x in range(m.rows) for y in range(m.cols)]
    if len(slots) > limit:
        return None
    for values in itertools.product(range(-box, box + 1), repeat=len(slots)):
        blocks = {k: [[0] * m.cols for _ in range(m.rows)] for k, m in shape.items()}
        for (k, x, y), v in zip(slots, values):
            blocks[k][x][y] = v
        s = {k: IntMatrix(rows, shape[k].rows, shape[k].cols) for k, rows in blocks.items()}
        if check_mc_homotopy(MulticomplexHomotopy(f, g, s)):
            return True
    return False


def test_find_homotopy_absence_agrees_with_brute_force():
    checked = 0
    for seed in range(300):
        rng = random.Random(seed)
        A = random_complex(rng, lo=0, hi=1, max_rank=1, max_pieces=2)
        B = random_complex(rng, lo=0, hi=1, max_rank=2, max_pieces=2)
        f = embed_map(ChainMap(A, B, {}))
        g_chain = random_mc_map(embed_complex(A), embed_complex(B), rng)
        if find_homotopy(g_chain, f) is not None:
            continue
        found = _brute_force_homotopy(g_chain, f)
        if found is None:
            continue
        assert found is False
        checked += 1
    assert checked >= 5


def test_homotopy_boundary_of_zero_is_zero():
    C = two_column(2)
    assert homotopy_boundary(C, C, {}) == {}

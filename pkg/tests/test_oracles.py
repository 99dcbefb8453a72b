"""Sanity checks on the reference computations themselves."""

import math

from oracles import (cyclic_tensor_order, det_fraction, determinantal_invariants,
                     homology_oracle)


def test_det_fraction_known_values():
    assert det_fraction([[2, 0], [0, 3]]) == 6
    assert det_fraction([[0, 1], [1, 0]]) == -1
    assert det_fraction([[1, 2], [2, 4]]) == 0
    assert det_fraction([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]) == 4


def test_determinantal_invariants_textbook():
    assert determinantal_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == ((2, 6, 12), 3)
    assert determinantal_invariants([[1, 0], [0, 1]]) == ((), 2)
    assert determinantal_invariants([[0, 0], [0, 0]]) == ((), 0)
    assert determinantal_invariants([[2, 0, 0], [0, 3, 0]]) == ((6,), 2)


def test_tensor_order_matches_gcd_for_small_orders():
    for a in range(1, 7):
        for b in range(1, 7):
            assert cyclic_tensor_order(a, b) == math.gcd(a, b)


def test_homology_oracle_on_z_to_2z():
    ranks = {0: 1, 1: 1}
    diffs = {0: [[2]]}
    assert homology_oracle(ranks, diffs, 0) == ((), 0)
    assert homology_oracle(ranks, diffs, 1) == ((2,), 0)
    assert homology_oracle({0: 2}, {}, 0) == ((), 2)

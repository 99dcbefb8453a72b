"""Seeded random objects: unimodular matrices, complexes, quasi-isomorphisms.

These are used by padded resolutions and by the test suite.  Every function
takes a ``random.Random`` so results are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap
from .linalg import IntMatrix, kernel_basis
from .multicomplex import Blocks, Multicomplex, MulticomplexMap, target_cell


def random_unimodular(n: int, rng: random.Random, steps: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """A random ``P`` with ``det = ±1`` together with its inverse."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0)
    for _ in range(steps if steps is not None else 2 * n):
        kind = rng.random()
        a = rng.randrange(n)
        if kind < 0.15:
            # negate row a of P, column a of Q
            P[a] = [-x for x in P[a]]
            for row in Q:
                row[a] = -row[a]
        elif n > 1:
            b = rng.randrange(n - 1)
            b += b >= a
            if kind < 0.3:
                P[a], P[b] = P[b], P[a]
                for row in Q:
                    row[a], row[b] = row[b], row[a]
            else:
                c = rng.choice((-2, -1, 1, 2))
                # P <- E P with E = I + c e_b e_a^T; Q <- Q E^{-1}
                P[b] = [x + c * y for x, y in zip(P[b], P[a])]
                for row in Q:
                    row[a] -= c * row[b]
    return IntMatrix(P, n, n), IntMatrix(Q, n, n)


@dataclass(frozen=True)
class ElementaryPiece:
    """``Z --k--> Z`` from ``degree`` to ``degree + 1``; ``k=None`` means a lone Z."""

    degree: int
    k: int | None


def complex_from_pieces(pieces: list[ElementaryPiece]) -> ChainComplex:
    ranks: dict[int, int] = {}
    slots = []
    for p in pieces:
        lo = ranks.get(p.degree, 0)
        ranks[p.degree] = lo + 1
        if p.k is None:
            slots.append((p, lo, None))
        else:
            hi = ranks.get(p.degree + 1, 0)
            ranks[p.degree + 1] = hi + 1
            slots.append((p, lo, hi))
    diffs = {j: [[0] * ranks[j] for _ in range(ranks.get(j + 1, 0))] for j in ranks}
    for p, lo, hi in slots:
        if hi is not None:
            diffs[p.degree][hi][lo] = p.k
    return ChainComplex(ranks, {j: IntMatrix(m, ranks.get(j + 1, 0), ranks[j])
                                for j, m in diffs.items()})


def conjugate(A: ChainComplex, rng: random.Random) -> tuple[ChainComplex, dict[int, tuple[IntMatrix, IntMatrix]]]:
    """Change basis in every degree by a random unimodular matrix."""
    P = {j: random_unimodular(r, rng) for j, r in A.ranks.items()}
    diffs = {}
    for j in A.ranks:
        if j + 1 in A.ranks:
            diffs[j] = P[j + 1][0] @ A.diff(j) @ P[j][1]
    return ChainComplex(A.ranks, diffs), P


def random_pieces(rng: random.Random, lo: int = -3, hi: int = 3, max_rank: int = 4,
                  max_pieces: int = 6, max_k: int = 5) -> list[ElementaryPiece]:
    ranks: dict[int, int] = {}
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        e = rng.randint(lo, hi)
        lone = e == hi or rng.random() < 0.2
        if lone:
            if ranks.get(e, 0) < max_rank:
                ranks[e] = ranks.get(e, 0) + 1
                pieces.append(ElementaryPiece(e, None))
            continue
        if ranks.get(e, 0) < max_rank and ranks.get(e + 1, 0) < max_rank:
            ranks[e] = ranks.get(e, 0) + 1
            ranks[e + 1] = ranks.get(e + 1, 0) + 1
            pieces.append(ElementaryPiece(e, rng.randint(0, max_k)))
    return pieces


def random_complex(rng: random.Random, lo: int = -3, hi: int = 3, max_rank: int = 4,
                   max_pieces: int = 6) -> ChainComplex:
    """Sum of shifted ``Z --k--> Z`` (k in 0..5) and lone Z's, conjugated."""
    A = complex_from_pieces(random_pieces(rng, lo, hi, max_rank, max_pieces))
    return conjugate(A, rng)[0]


def random_matrix(rows: int, cols: int, rng: random.Random, bound: int = 2) -> IntMatrix:
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)],
                     rows, cols)


def random_chain_homotopy_blocks(A: ChainComplex, B: ChainComplex, rng: random.Random,
                                 bound: int = 1) -> dict[int, IntMatrix]:
    return {j: random_matrix(B.rank(j - 1), A.rank(j), rng, bound)
            for j in A.ranks if B.rank(j - 1)}


def null_homotopic(A: ChainComplex, B: ChainComplex, s: dict[int, IntMatrix]) -> dict[int, IntMatrix]:
    """Components of ``d s + s d``."""
    def s_at(j: int) -> IntMatrix:
        return s.get(j, IntMatrix.zeros(B.rank(j - 1), A.rank(j)))
    return {j: B.diff(j - 1) @ s_at(j) + s_at(j + 1) @ A.diff(j) for j in A.ranks}


def random_quasi_iso(A: ChainComplex, rng: random.Random, max_extra: int = 2) -> ChainMap:
    """A random quasi-isomorphism out of or into A.

    The other end is ``A ⊕ E`` with E a sum of acyclic pieces ``Z --±1--> Z``,
    conjugated by random unimodular matrices.  The map is the inclusion (or
    the projection), plus a random null-homotopic term.
    """
    lo, hi = (A.lo, A.hi) if A.ranks else (0, 0)
    extra = [ElementaryPiece(rng.randint(lo - 1, hi), rng.choice((1, -1)))
             for _ in range(rng.randint(0, max_extra))]
    E = complex_from_pieces(extra)
    ranks = {j: A.rank(j) + E.rank(j) for j in set(A.ranks) | set(E.ranks)}
    diffs = {}
    for j in ranks:
        top = IntMatrix.hstack(A.diff(j), IntMatrix.zeros(A.rank(j + 1), E.rank(j)))
        bottom = IntMatrix.hstack(IntMatrix.zeros(E.rank(j + 1), A.rank(j)), E.diff(j))
        diffs[j] = IntMatrix.vstack(top, bottom)
    S = ChainComplex(ranks, {j: m for j, m in diffs.items() if m.rows and m.cols})
    S2, P = conjugate(S, rng)
    inc = {j: P[j][0] @ IntMatrix.vstack(IntMatrix.identity(A.rank(j)),
                                          IntMatrix.zeros(E.rank(j), A.rank(j)))
           for j in A.ranks}
    proj = {j: IntMatrix.hstack(IntMatrix.identity(A.rank(j)),
                                IntMatrix.zeros(A.rank(j), E.rank(j))) @ P[j][1]
            for j in A.ranks}
    if rng.random() < 0.5:
        f = ChainMap(A, S2, inc)
    else:
        f = ChainMap(S2, A, proj)
    h = null_homotopic(f.source, f.target,
                       random_chain_homotopy_blocks(f.source, f.target, rng))
    return ChainMap(f.source, f.target, {j: f.at(j) + h[j] for j in f.source.ranks})


def random_chain_map(A: ChainComplex, B: ChainComplex, rng: random.Random,
                     bound: int = 2) -> ChainMap:
    """A random element of the lattice of chain maps A -> B."""
    degrees = [j for j in A.ranks if B.rank(j)]
    layout = []
    pos = 0
    for j in degrees:
        layout.append((j, pos))
        pos += B.rank(j) * A.rank(j)
    n = pos
    rows = []
    for j in A.ranks:
        # d_B f_j - f_{j+1} d_A = 0, entries of a rank_B(j+1) x rank_A(j) matrix
        rb1, ra = B.rank(j + 1), A.rank(j)
        off_j = dict(layout).get(j)
        off_j1 = dict(layout).get(j + 1)
        for x in range(rb1):
            for y in range(ra):
                row = [0] * n
                if off_j is not None:
                    D = B.diff(j)
                    for z in range(B.rank(j)):
                        row[off_j + z * ra + y] += D[x, z]
                if off_j1 is not None:
                    E = A.diff(j)
                    ra1 = A.rank(j + 1)
                    for z in range(ra1):
                        row[off_j1 + x * ra1 + z] -= E[z, y]
                rows.append(row)
    K = kernel_basis(IntMatrix(rows, len(rows), n)) if rows else IntMatrix.identity(n)
    coeffs = [rng.randint(-bound, bound) for _ in range(K.cols)]
    vec = [sum(c * K[i, k] for k, c in enumerate(coeffs)) for i in range(n)]
    comps = {}
    for j, off in layout:
        rb, ra = B.rank(j), A.rank(j)
        comps[j] = IntMatrix([vec[off + x * ra: off + (x + 1) * ra] for x in range(rb)], rb, ra)
    return ChainMap(A, B, comps)


def random_mc_map(C: Multicomplex, X: Multicomplex, rng: random.Random,
                  bound: int = 2) -> MulticomplexMap:
    """A random element of the lattice of multicomplex maps C -> X."""
    pairs = []
    for a in C.cells:
        n = a[0] + a[1]
        for b in X.cells_in_degree(n, a[0]):
            pairs.append((a, b))
    off = {}
    pos = 0
    for a, b in pairs:
        off[(a, b)] = pos
        pos += C.rank(*a) * X.rank(*b)
    n_unknown = pos
    eqs = {}
    epos = 0
    for a in C.cells:
        n = a[0] + a[1]
        for c in X.cells_in_degree(n + 1, a[0]):
            eqs[(a, c)] = epos
            epos += C.rank(*a) * X.rank(*c)
    M = [[0] * n_unknown for _ in range(epos)]
    for (a, b), o in off.items():
        ra, rb = C.rank(*a), X.rank(*b)
        for key, D in X.components.items():
            if (key[1], key[2]) != b:
                continue
            c = target_cell(key, 1)
            eo = eqs[(a, c)]
            for x in range(rb):
                for y in range(ra):
                    for z in range(D.rows):
                        if D[z, x]:
                            M[eo + z * ra + y][o + x * ra + y] += D[z, x]
        for key, E in C.components.items():
            if target_cell(key, 1) != a:
                continue
            a2 = (key[1], key[2])
            eo = eqs.get((a2, b))
            if eo is None:
                continue
            ra2 = C.rank(*a2)
            for x in range(rb):
                for y in range(ra):
                    for w in range(ra2):
                        if E[y, w]:
                            M[eo + x * ra2 + w][o + x * ra + y] -= E[y, w]
    K = kernel_basis(IntMatrix(M, epos, n_unknown)) if epos else IntMatrix.identity(n_unknown)
    coeffs = [rng.randint(-bound, bound) for _ in range(K.cols)]
    vec = [sum(c * K[i, k] for k, c in enumerate(coeffs) if c) for i in range(n_unknown)]
    comps = {}
    for (a, b), o in off.items():
        ra, rb = C.rank(*a), X.rank(*b)
        comps[(b[0] - a[0], a[0], a[1])] = IntMatrix(
            [vec[o + x * ra: o + (x + 1) * ra] for x in range(rb)], rb, ra)
    return MulticomplexMap(C, X, comps)


def random_homotopy_blocks(C: Multicomplex, X: Multicomplex, rng: random.Random,
                           bound: int = 1) -> Blocks:
    """Random degree -1 blocks with column shift >= -1 (any entries)."""
    out = {}
    for a in C.cells:
        n = a[0] + a[1]
        for b in X.cells_in_degree(n - 1, a[0] - 1):
            out[(b[0] - a[0], a[0], a[1])] = random_matrix(X.rank(*b), C.rank(*a), rng, bound)
    return out


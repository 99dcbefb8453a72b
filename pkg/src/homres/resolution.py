"""Homological resolutions of bounded complexes of free abelian groups.

Each row ``C^{*,j}`` of the resolution is a free resolution of ``H^j(A)``
(column 0 on top, negative columns below).  The higher components ``d^r`` and
the comparison map ``phi: C -> A`` are then built column by column.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .complexes import ChainComplex, is_quasi_iso
from .errors import InvariantBreach
from .generators import random_matrix, random_unimodular
from .groups import (FgAbGroup, GroupMorphism, kernel_is_image, morphism_is_surjective)
from .linalg import IntMatrix, in_column_span, kernel_basis, smith_normal_form, solve_linear
from .multicomplex import (Blocks, Multicomplex, MulticomplexMap, check_mc_map, compose_blocks,
                           embed_complex, is_homological, target_cell, total_map,
                           validate_multicomplex)


@dataclass(frozen=True)
class AugmentedRowResolution:
    """A free resolution ``... -> C^{-1} -> C^0 -> group`` of one row.

    ``d1[i]`` maps column i to column i + 1.  ``augmentation`` is the matrix of
    ``C^0 -> group`` on generators.
    """

    row: int
    group: FgAbGroup
    ranks: Mapping[int, int]
    d1: Mapping[int, IntMatrix]
    augmentation: IntMatrix

    @property
    def columns(self) -> list[int]:
        return sorted(i for i, r in self.ranks.items() if r)

    def rank(self, i: int) -> int:
        return self.ranks.get(i, 0)

    def diff(self, i: int) -> IntMatrix:
        m = self.d1.get(i)
        return m if m is not None else IntMatrix.zeros(self.rank(i + 1), self.rank(i))

    @property
    def rho(self) -> GroupMorphism:
        return GroupMorphism(FgAbGroup.free(self.rank(0)), self.group, self.augmentation)


def row_problems(R: AugmentedRowResolution) -> list[str]:
    """Why R fails to be a free resolution of its group (empty if it is one)."""
    problems = []
    if any(i > 0 for i in R.columns):
        problems.append(f"row {R.row}: column with positive index")
    if R.augmentation.shape != (R.group.generator_count, R.rank(0)):
        return problems + [f"row {R.row}: augmentation has wrong shape"]
    for i in R.columns:
        if i >= 0:
            continue
        if not (R.diff(i + 1) @ R.diff(i)).is_zero():
            problems.append(f"row {R.row}: d1 d1 != 0 at column {i}")
        elif not in_column_span(R.diff(i - 1), kernel_basis(R.diff(i))):
            problems.append(f"row {R.row}: not exact at column {i}")
    rho = R.rho
    if not morphism_is_surjective(rho):
        problems.append(f"row {R.row}: augmentation not surjective")
    if not kernel_is_image(rho, R.diff(-1)):
        problems.append(f"row {R.row}: kernel of augmentation differs from image of d1")
    return problems


def free_resolution(G: FgAbGroup, row: int = 0) -> AugmentedRowResolution:
    """The minimal resolution ``0 -> Z^t -> Z^r -> G -> 0`` from a Smith form.

    With ``U R V = S`` the group is ``coker(S)`` in the coordinates ``y = U x``;
    generators of order s_i > 1 and the free generators are kept, and ``d1``
    is the diagonal of the torsion orders.
    """
    dec = smith_normal_form(G.relations)
    n = G.generator_count
    diag = dec.diagonal
    torsion = [i for i, s in enumerate(diag) if s > 1]
    free = list(range(dec.rank, n))
    keep = torsion + free
    # generator e_i of coker(S) pulled back to G's generators is U^{-1} e_i
    Uinv = solve_linear(dec.U, IntMatrix.identity(n))
    aug = Uinv.submatrix(slice(None), keep)
    ranks = {0: len(keep)}
    d1 = {}
    if torsion:
        ranks[-1] = len(torsion)
        d1[-1] = IntMatrix.diag([diag[i] for i in torsion], len(keep), len(torsion))
    return AugmentedRowResolution(row, G, ranks, d1, aug)


def pad_resolution(R: AugmentedRowResolution, extra: int,
                   rng: random.Random | None = None) -> AugmentedRowResolution:
    """Lengthen R by ``extra`` columns of acyclic ``Z^k --id--> Z^k`` pieces.

    The pieces go below the lowest column; every column is then re-based by a
    random unimodular matrix, so the added pieces are mixed into the rest.
    """
    if extra <= 0:
        return R
    rng = rng or random.Random(0)
    ranks = dict(R.ranks)
    entries: dict[int, dict[tuple[int, int], int]] = {
        i: {(x, y): m[x, y] for x in range(m.rows) for y in range(m.cols) if m[x, y]}
        for i, m in R.d1.items()}
    bottom = min(R.columns, default=0)
    for step in range(1, extra + 1):
        lo_col = bottom - step
        k = rng.randint(1, 2)
        r_lo, r_hi = ranks.get(lo_col, 0), ranks.get(lo_col + 1, 0)
        ranks[lo_col] = r_lo + k
        ranks[lo_col + 1] = r_hi + k
        # new generators go at the end of each column, joined by the identity
        block = entries.setdefault(lo_col, {})
        for z in range(k):
            block[(r_hi + z, r_lo + z)] = 1
    d1 = {}
    for i, block in entries.items():
        m = [[0] * ranks.get(i, 0) for _ in range(ranks.get(i + 1, 0))]
        for (x, y), v in block.items():
            m[x][y] = v
        d1[i] = IntMatrix(m, ranks.get(i + 1, 0), ranks.get(i, 0))
    ranks = {i: r for i, r in ranks.items() if r}
    P = {i: random_unimodular(r, rng) for i, r in ranks.items()}
    conj = {}
    for i in ranks:
        if i + 1 in ranks and i in d1:
            conj[i] = P[i + 1][0] @ d1[i] @ P[i][1]
    aug = R.augmentation
    if 0 in ranks:
        aug = IntMatrix.hstack(aug, IntMatrix.zeros(aug.rows, ranks[0] - aug.cols)) @ P[0][1]
    return AugmentedRowResolution(R.row, R.group, ranks, conj, aug)


@dataclass(frozen=True)
class HomologicalResolution:
    """``phi: C -> A`` with C homological and free.

    ``rows[j]`` is the augmented resolution of ``H^j(A)`` sitting in row j of
    C; its augmentation matrix is expressed in the cocycle basis of
    ``A.homology(j)``, and ``phi^0`` on row j equals ``cocycle_basis @ augmentation``.
    """

    complex: ChainComplex
    C: Multicomplex
    phi: MulticomplexMap
    rows: Mapping[int, AugmentedRowResolution]
    padding: Mapping[int, int] = field(default_factory=dict)
    seed: int = 0
    perturb: bool = False

    @property
    def target(self) -> Multicomplex:
        return self.phi.target


def _rho_lift(A: ChainComplex, rows: Mapping[int, AugmentedRowResolution],
              j: int, w: IntMatrix) -> IntMatrix:
    """Y with ``rho_j Y = -[w]`` in ``H^j(A)``."""
    H = A.homology(j)
    W = H.coordinates(w)
    R = rows.get(j)
    aug = R.augmentation if R is not None else IntMatrix.zeros(H.group.generator_count, 0)
    stacked = IntMatrix.hstack(aug, H.group.relations)
    sol = solve_linear(stacked, -W)
    if sol is None:
        raise InvariantBreach(f"augmentation of row {j} is not surjective")
    return sol.submatrix(range(aug.cols), slice(None))


def homological_resolution(A: ChainComplex, padding: Mapping[int, int] | None = None,
                           seed: int = 0, perturb: bool = False) -> HomologicalResolution:
    """Resolve A by a homological multicomplex.

    ``padding[j]`` lengthens row j by that many acyclic columns.  With
    ``perturb`` the lifts ``phi^r`` (r >= 1) receive random cocycle-valued
    corrections; without it every choice is the solver's canonical one, and
    then all ``d^r`` with r >= 2 come out zero.
    """
    padding = {int(j): int(k) for j, k in (padding or {}).items() if k}
    rows: dict[int, AugmentedRowResolution] = {}
    for j in A.degrees:
        R = free_resolution(A.homology(j).group, j)
        if padding.get(j):
            R = pad_resolution(R, padding[j], random.Random(f"{seed}:{j}"))
        if R.columns:
            rows[j] = R
    rng = random.Random(f"{seed}:lifts")

    ranks = {(i, j): R.rank(i) for j, R in rows.items() for i in R.columns}
    d: Blocks = {(1, i, j): R.diff(i) for j, R in rows.items() for i in R.columns
                 if R.rank(i + 1)}
    d = {k: m for k, m in d.items() if not m.is_zero()}
    shape = Multicomplex(ranks)
    target = embed_complex(A)

    phi: Blocks = {}
    for j, R in rows.items():
        if R.rank(0):
            phi[(0, 0, j)] = A.homology(j).cocycle_basis @ R.augmentation

    def cells_in_column(i: int) -> list[tuple[int, int]]:
        return sorted(c for c in ranks if c[0] == i)

    def lift_phi(n: int, cell: tuple[int, int], rhs: IntMatrix) -> None:
        # phi^n on cell (-n, t) with d_A phi^n = rhs in A^{t-n+1}
        t = cell[1]
        X = solve_linear(A.diff(t - n), rhs)
        if X is None:
            raise InvariantBreach(f"phi^{n} has no solution on cell {cell}")
        if perturb:
            Z = A.homology(t - n).cocycle_basis
            X = X + Z @ random_matrix(Z.cols, X.cols, rng, 1)
        phi[(n, cell[0], t)] = X

    def restrict(blocks: Blocks, cell: tuple[int, int]) -> Blocks:
        return {k: m for k, m in blocks.items() if (k[1], k[2]) == cell}

    # phi^1 on column -1
    for cell in cells_in_column(-1):
        rhs = compose_blocks(phi, 0, restrict(d, cell), 1).get((1, *cell))
        rhs = rhs if rhs is not None else IntMatrix.zeros(A.rank(cell[1]), ranks[cell])
        lift_phi(1, cell, rhs)

    min_col = min((i for i, _ in ranks), default=0)
    n = 1
    while -n - 1 >= min_col:
        col = -n - 1
        # d^{n+1} from column -n-1 into column 0, through the augmentation
        for cell in cells_in_column(col):
            t = cell[1]
            w = compose_blocks(phi, 0, restrict(d, cell), 1).get((n + 1, *cell))
            w = w if w is not None else IntMatrix.zeros(A.rank(t - n), ranks[cell])
            if not (A.diff(t - n) @ w).is_zero():
                raise InvariantBreach(f"obstruction on {cell} is not a cocycle")
            Y = _rho_lift(A, rows, t - n, w)
            if Y.rows:
                d[(n + 1, col, t)] = Y
        d = {k: m for k, m in d.items() if not m.is_zero()}
        # extend d^{n+1} to the columns further left
        for i in range(col - 1, min_col - 1, -1):
            for cell in cells_in_column(i):
                tgt = target_cell((n + 1, *cell), 1)
                if shape.rank(*tgt) == 0:
                    continue
                known = {k: m for k, m in d.items() if k[0] <= n + 1}
                sq = compose_blocks(known, 1, restrict(known, cell), 1)
                E = sq.get((n + 2, *cell))
                after = (tgt[0] + 1, tgt[1])
                if E is None:
                    continue
                E = -E
                if after[0] < 0 and not (shape_d1(d, ranks, after) @ E).is_zero():
                    raise InvariantBreach(f"extension of d^{n + 1} on {cell} is obstructed")
                X = solve_linear(shape_d1(d, ranks, tgt), E)
                if X is None:
                    raise InvariantBreach(f"cannot extend d^{n + 1} on {cell}")
                if not X.is_zero():
                    d[(n + 1, *cell)] = X
        # phi^{n+1} on column -n-1
        for cell in cells_in_column(col):
            rhs = compose_blocks(phi, 0, restrict(d, cell), 1).get((n + 1, *cell))
            rhs = rhs if rhs is not None else IntMatrix.zeros(A.rank(cell[1] - n), ranks[cell])
            lift_phi(n + 1, cell, rhs)
        n += 1

    C = Multicomplex(ranks, d)
    phi_map = MulticomplexMap(C, target, phi)
    return HomologicalResolution(A, C, phi_map, rows, padding, seed, perturb)


def shape_d1(d: Blocks, ranks: Mapping[tuple[int, int], int], cell: tuple[int, int]) -> IntMatrix:
    m = d.get((1, *cell))
    if m is not None:
        return m
    return IntMatrix.zeros(ranks.get((cell[0] + 1, cell[1]), 0), ranks.get(cell, 0))


def validate_resolution(res: HomologicalResolution) -> list[str]:
    """Every check a homological resolution must pass; empty when all hold.

    Checks the multicomplex identity, the homological predicate, each row
    against ``H^j(A)`` (exactness, augmentation onto the homology group with
    kernel the image of d1, ``phi^0`` factoring through the augmentation), that
    phi is a multicomplex map, and that ``Tot(phi)`` is a quasi-isomorphism.
    """
    A, C = res.complex, res.C
    problems = [f"multicomplex: {v}" for v in validate_multicomplex(C)]
    if problems:
        return problems
    if not is_homological(C):
        problems.append("C is not homological")
    for j in sorted(set(C.rows) | set(A.degrees)):
        H = A.homology(j)
        R = res.rows.get(j)
        ranks = {i: C.rank(i, j) for i in C.columns if C.rank(i, j)}
        d1 = {i: C.d(1, i, j) for i in ranks}
        aug = R.augmentation if R is not None else IntMatrix.zeros(H.group.generator_count, 0)
        if aug.cols != C.rank(0, j):
            problems.append(f"row {j}: augmentation does not match C^(0,{j})")
            continue
        row = AugmentedRowResolution(j, H.group, ranks, d1, aug)
        problems.extend(row_problems(row))
        phi0 = res.phi.components.get((0, 0, j), IntMatrix.zeros(A.rank(j), C.rank(0, j)))
        if phi0 != H.cocycle_basis @ aug:
            problems.append(f"row {j}: phi^0 does not factor through the augmentation")
    if res.phi.source != C or res.phi.target != embed_complex(A):
        problems.append("phi has the wrong source or target")
        return problems
    if not check_mc_map(res.phi):
        problems.append("phi is not a multicomplex map")
        return problems
    if not is_quasi_iso(total_map(res.phi)):
        problems.append("Tot(phi) is not a quasi-isomorphism")
    return problems


def resolution_with_entry(res: HomologicalResolution, where: tuple, i: int, j: int,
                          value: int) -> HomologicalResolution:
    """Copy of res with one matrix entry replaced (for mutation tests).

    ``where`` is ``("d", key)``, ``("phi", key)`` or ``("aug", row)``.
    """
    kind, key = where
    C, phi, rows = res.C, res.phi, dict(res.rows)
    if kind == "d":
        comps = dict(C.components)
        comps[key] = comps[key].with_entry(i, j, value)
        C = Multicomplex(C.ranks, comps)
        phi = MulticomplexMap(C, phi.target, phi.components)
    elif kind == "phi":
        comps = dict(phi.components)
        comps[key] = comps[key].with_entry(i, j, value)
        phi = MulticomplexMap(C, phi.target, comps)
    elif kind == "aug":
        R = rows[key]
        rows[key] = AugmentedRowResolution(R.row, R.group, R.ranks, R.d1,
                                           R.augmentation.with_entry(i, j, value))
    else:
        raise ValueError(f"unknown location {kind!r}")
    return HomologicalResolution(res.complex, C, phi, rows, res.padding, res.seed, res.perturb)


def matrix_locations(res: HomologicalResolution) -> list[tuple[tuple, IntMatrix]]:
    """Every stored matrix of a resolution, addressed as in :func:`resolution_with_entry`."""
    out: list[tuple[tuple, IntMatrix]] = [(("d", k), m) for k, m in res.C.components.items()]
    out += [(("phi", k), m) for k, m in res.phi.components.items()]
    out += [(("aug", j), R.augmentation) for j, R in res.rows.items()]
    return [(w, m) for w, m in out if m.rows and m.cols]


def higher_components(res: HomologicalResolution) -> dict[int, int]:
    """Number of nonzero blocks of each d^r."""
    out: dict[int, int] = {}
    for (r, _, _) in res.C.components:
        out[r] = out.get(r, 0) + 1
    return out


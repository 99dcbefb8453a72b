"""Left derived functors of ``- ⊗ M`` for complexes of free abelian groups.

``C ⊗ M`` for a free multicomplex C is computed as ``Tot(C) ⊗ P`` where P is
a free resolution of M, so every group in sight stays free and homology is
computed by the same routine as everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .complexes import ChainComplex
from .groups import FgAbGroup
from .linalg import IntMatrix
from .resolution import AugmentedRowResolution, HomologicalResolution, free_resolution, homological_resolution


def resolution_complex(R: AugmentedRowResolution) -> ChainComplex:
    """The row ``... -> C^{-1} -> C^0`` as a complex (the group itself dropped)."""
    return ChainComplex(R.ranks, {i: R.diff(i) for i in R.columns if R.rank(i + 1)})


def tensor_complexes(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """``X ⊗ Y`` with ``d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy`` for x of degree p.

    The summands of degree n are ordered by ascending p, and inside one
    summand basis vectors are ordered as (x index, y index).
    """
    def summands(n: int) -> list[int]:
        return [p for p in X.ranks if Y.rank(n - p)]

    degrees = sorted({p + q for p in X.ranks for q in Y.ranks})
    ranks = {n: sum(X.rank(p) * Y.rank(n - p) for p in summands(n)) for n in degrees}
    diffs = {}
    for n in degrees:
        if not ranks.get(n + 1):
            continue
        src, tgt = summands(n), summands(n + 1)
        grid = []
        for p2 in tgt:
            row = []
            for p in src:
                q = n - p
                size = (X.rank(p2) * Y.rank(n + 1 - p2), X.rank(p) * Y.rank(q))
                if p2 == p + 1:
                    block = X.diff(p).kron(IntMatrix.identity(Y.rank(q)))
                elif p2 == p:
                    sign = -1 if p % 2 else 1
                    block = IntMatrix.identity(X.rank(p)).kron(Y.diff(q)) * sign
                else:
                    block = IntMatrix.zeros(*size)
                row.append(block)
            grid.append(row)
        diffs[n] = IntMatrix.block(grid)
    return ChainComplex(ranks, diffs)


def derived_tensor_complex(res: HomologicalResolution, M: FgAbGroup) -> ChainComplex:
    """A free complex representing ``A ⊗^L M`` for the complex A resolved by res."""
    P = resolution_complex(free_resolution(M))
    return tensor_complexes(res.C.total, P)


@dataclass(frozen=True)
class DerivedTensorResult:
    """Homology of ``A ⊗^L M`` in each degree, plus how it was computed."""

    complex: ChainComplex
    group: FgAbGroup
    homology: Mapping[int, FgAbGroup]
    padding: Mapping[int, int] = field(default_factory=dict)
    seed: int = 0

    def invariants(self) -> dict[int, tuple[tuple[int, ...], int]]:
        """Nonzero degrees only, as (invariant factors, free rank)."""
        return {n: G.isomorphism_type for n, G in sorted(self.homology.items())
                if not G.is_trivial()}

    def at(self, n: int) -> FgAbGroup:
        return self.homology.get(n, FgAbGroup.free(0))


def hyper_derived_tensor(A: ChainComplex, M: FgAbGroup, padding: Mapping[int, int] | None = None,
                         seed: int = 0, perturb: bool = False) -> DerivedTensorResult:
    res = homological_resolution(A, padding, seed=seed, perturb=perturb)
    T = derived_tensor_complex(res, M)
    homology = {n: T.homology(n).group for n in T.degrees}
    return DerivedTensorResult(A, M, homology, dict(res.padding), seed)


def tor(G: FgAbGroup, M: FgAbGroup, i: int) -> FgAbGroup:
    """``Tor_i(G, M)``; zero for every i >= 2 since the resolutions have length one."""
    if i < 0:
        raise ValueError("Tor is only defined for i >= 0")
    T = tensor_complexes(resolution_complex(free_resolution(G)),
                         resolution_complex(free_resolution(M)))
    return T.homology(-i).group

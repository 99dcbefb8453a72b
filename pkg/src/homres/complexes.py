"""Bounded cochain complexes of finitely generated free abelian groups.

Grading is cohomological: ``diff(j)`` maps degree j to degree j + 1 and has
shape ``rank(j + 1) x rank(j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError, InvariantBreach
from .groups import FgAbGroup, GroupMorphism, morphism_is_iso
from .linalg import IntMatrix, kernel_basis, solve_linear


def _clean_ranks(ranks: Mapping[int, int]) -> dict[int, int]:
    out = {}
    for j, r in ranks.items():
        if r < 0:
            raise ValueError(f"negative rank {r} in degree {j}")
        if r:
            out[int(j)] = int(r)
    return dict(sorted(out.items()))


class ChainComplex:
    """Free groups ``Z^rank(j)`` with differentials ``diff(j)``.

    Degrees with no stored rank are zero.  Zero differentials need not be
    stored.
    """

    def __init__(self, ranks: Mapping[int, int], diffs: Mapping[int, IntMatrix] | None = None):
        self.ranks = _clean_ranks(ranks)
        self._diffs: dict[int, IntMatrix] = {}
        for j, m in (diffs or {}).items():
            j = int(j)
            want = (self.rank(j + 1), self.rank(j))
            if m.shape != want:
                raise DimensionError(f"diff({j}) has shape {m.shape}, expected {want}")
            if not m.is_zero():
                self._diffs[j] = m
        self._homology: dict[int, HomologyData] = {}

    @classmethod
    def zero(cls) -> ChainComplex:
        return cls({})

    @classmethod
    def concentrated(cls, degree: int, rank: int) -> ChainComplex:
        return cls({degree: rank})

    @property
    def lo(self) -> int:
        return min(self.ranks, default=0)

    @property
    def hi(self) -> int:
        return max(self.ranks, default=-1)

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def rank(self, j: int) -> int:
        return self.ranks.get(j, 0)

    def diff(self, j: int) -> IntMatrix:
        m = self._diffs.get(j)
        return m if m is not None else IntMatrix.zeros(self.rank(j + 1), self.rank(j))

    @property
    def diffs(self) -> dict[int, IntMatrix]:
        return dict(self._diffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.ranks == other.ranks and self._diffs == other._diffs

    def __hash__(self) -> int:
        return hash((tuple(self.ranks.items()), tuple(sorted(self._diffs.items()))))

    def __repr__(self) -> str:
        return f"ChainComplex(ranks={self.ranks})"

    def homology(self, j: int) -> HomologyData:
        if j not in self._homology:
            self._homology[j] = _compute_homology(self, j)
        return self._homology[j]


def validate_complex(A: ChainComplex) -> list[str]:
    """Violations of ``diff(j+1) @ diff(j) == 0``; empty when A is a complex."""
    problems = []
    for j in range(A.lo - 1, A.hi + 1):
        comp = A.diff(j + 1) @ A.diff(j)
        if not comp.is_zero():
            problems.append(f"d∘d != 0 at degree {j}: {comp.tolist()}")
    return problems


@dataclass(frozen=True)
class HomologyData:
    """``H^j`` presented on a basis of cocycles.

    ``cocycle_basis`` embeds ``Z^z`` into ``A^j``; ``group`` has those z
    generators and the coboundaries (in cocycle coordinates) as relations;
    ``nu`` is the projection ``Z^z -> group``.
    """

    degree: int
    cocycle_basis: IntMatrix
    group: FgAbGroup
    nu: GroupMorphism

    def coordinates(self, cocycles: IntMatrix) -> IntMatrix:
        """Express cocycles of ``A^j`` (as columns) in the cocycle basis."""
        X = solve_linear(self.cocycle_basis, cocycles)
        if X is None:
            raise InvariantBreach(f"vectors are not cocycles in degree {self.degree}")
        return X


def _compute_homology(A: ChainComplex, j: int) -> HomologyData:
    Z = kernel_basis(A.diff(j))
    rel = solve_linear(Z, A.diff(j - 1))
    if rel is None:
        raise InvariantBreach(f"coboundaries in degree {j} are not cocycles")
    group = FgAbGroup(Z.cols, rel)
    nu = GroupMorphism(FgAbGroup.free(Z.cols), group, IntMatrix.identity(Z.cols))
    return HomologyData(j, Z, group, nu)


def homology_at(A: ChainComplex, j: int) -> HomologyData:
    return A.homology(j)


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: Mapping[int, IntMatrix]

    def __post_init__(self) -> None:
        comps = {}
        for j, m in self.components.items():
            want = (self.target.rank(j), self.source.rank(j))
            if m.shape != want:
                raise DimensionError(f"component {j} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                comps[int(j)] = m
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @classmethod
    def identity(cls, A: ChainComplex) -> ChainMap:
        return cls(A, A, {j: IntMatrix.identity(r) for j, r in A.ranks.items()})

    @classmethod
    def zero(cls, A: ChainComplex, B: ChainComplex) -> ChainMap:
        return cls(A, B, {})

    def at(self, j: int) -> IntMatrix:
        m = self.components.get(j)
        return m if m is not None else IntMatrix.zeros(self.target.rank(j), self.source.rank(j))

    @property
    def degrees(self) -> range:
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        return range(lo, hi + 1)

    def compose(self, first: ChainMap) -> ChainMap:
        """``self ∘ first``."""
        return ChainMap(first.source, self.target,
                        {j: self.at(j) @ first.at(j) for j in first.source.ranks})

    def __add__(self, other: ChainMap) -> ChainMap:
        return ChainMap(self.source, self.target,
                        {j: self.at(j) + other.at(j) for j in self.source.ranks})

    def __sub__(self, other: ChainMap) -> ChainMap:
        return ChainMap(self.source, self.target,
                        {j: self.at(j) - other.at(j) for j in self.source.ranks})

    def __neg__(self) -> ChainMap:
        return ChainMap(self.source, self.target, {j: -m for j, m in self.components.items()})


def check_chain_map(f: ChainMap) -> bool:
    for j in range(f.source.lo - 1, f.source.hi + 1):
        if f.target.diff(j) @ f.at(j) != f.at(j + 1) @ f.source.diff(j):
            return False
    return True


def induced_map_on_homology(f: ChainMap, j: int) -> GroupMorphism:
    HA = f.source.homology(j)
    HB = f.target.homology(j)
    image = f.at(j) @ HA.cocycle_basis
    X = solve_linear(HB.cocycle_basis, image)
    if X is None:
        raise InvariantBreach(f"chain map does not send cocycles to cocycles in degree {j}")
    return GroupMorphism(HA.group, HB.group, X)


def is_quasi_iso(f: ChainMap) -> bool:
    return all(morphism_is_iso(induced_map_on_homology(f, j)) for j in f.degrees)


@dataclass(frozen=True)
class ChainHomotopy:
    """``s`` with ``f - g == d s + s d``; ``component(j): A^j -> B^(j-1)``."""

    f: ChainMap
    g: ChainMap
    components: Mapping[int, IntMatrix]

    def __post_init__(self) -> None:
        if self.f.source != self.g.source or self.f.target != self.g.target:
            raise DimensionError("homotopy endpoints have different source or target")
        comps = {}
        for j, m in self.components.items():
            want = (self.target.rank(j - 1), self.source.rank(j))
            if m.shape != want:
                raise DimensionError(f"component {j} has shape {m.shape}, expected {want}")
            if not m.is_zero():
                comps[int(j)] = m
        object.__setattr__(self, "components", dict(sorted(comps.items())))

    @property
    def source(self) -> ChainComplex:
        return self.f.source

    @property
    def target(self) -> ChainComplex:
        return self.f.target

    def at(self, j: int) -> IntMatrix:
        m = self.components.get(j)
        return m if m is not None else IntMatrix.zeros(self.target.rank(j - 1), self.source.rank(j))


def check_homotopy_witness(s: ChainHomotopy) -> bool:
    A, B = s.source, s.target
    for j in A.degrees:
        lhs = s.f.at(j) - s.g.at(j)
        rhs = B.diff(j - 1) @ s.at(j) + s.at(j + 1) @ A.diff(j)
        if lhs != rhs:
            return False
    return True

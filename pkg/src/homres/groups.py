"""Finitely generated abelian groups given by generators and relations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionError
from .linalg import IntMatrix, kernel_basis, smith_normal_form, solve_linear


@dataclass(frozen=True)
class FgAbGroup:
    """The cokernel of ``relations: Z^k -> Z^n`` (one relation per column).

    ``invariant_factors`` and ``free_rank`` are filled in from a Smith
    decomposition of the relation matrix; units are dropped.
    """

    generator_count: int
    relations: IntMatrix
    invariant_factors: tuple[int, ...] = field(init=False)
    free_rank: int = field(init=False)

    def __post_init__(self) -> None:
        if self.relations.rows != self.generator_count:
            raise DimensionError(
                f"relations have {self.relations.rows} rows for "
                f"{self.generator_count} generators")
        dec = smith_normal_form(self.relations)
        object.__setattr__(self, "invariant_factors", dec.invariant_factors)
        object.__setattr__(self, "free_rank", self.generator_count - dec.rank)

    @classmethod
    def free(cls, rank: int) -> FgAbGroup:
        return cls(rank, IntMatrix.zeros(rank, 0))

    @classmethod
    def cyclic(cls, order: int) -> FgAbGroup:
        """``Z/order``; order 0 gives Z."""
        if order == 0:
            return cls.free(1)
        return cls(1, IntMatrix([[order]]))

    @classmethod
    def from_invariants(cls, factors: tuple[int, ...] | list[int], free_rank: int = 0) -> FgAbGroup:
        n = len(factors) + free_rank
        return cls(n, IntMatrix.diag(list(factors), n, len(factors)))

    @property
    def isomorphism_type(self) -> tuple[tuple[int, ...], int]:
        return self.invariant_factors, self.free_rank

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def is_isomorphic(self, other: FgAbGroup) -> bool:
        return self.isomorphism_type == other.isomorphism_type

    def order(self) -> int | None:
        """Number of elements, or None for an infinite group."""
        if self.free_rank:
            return None
        out = 1
        for s in self.invariant_factors:
            out *= s
        return out

    def contains_zero(self, vectors: IntMatrix) -> bool:
        """True when every column of ``vectors`` is zero in the group."""
        return solve_linear(self.relations, vectors) is not None

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{s}" for s in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def cokernel_group(A: IntMatrix) -> FgAbGroup:
    return FgAbGroup(A.rows, A)


@dataclass(frozen=True)
class GroupMorphism:
    """A homomorphism given by an integer matrix on generators.

    ``matrix`` has shape ``target.generator_count x source.generator_count``.
    Two morphisms are equal when their matrices agree modulo the target
    relations.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.generator_count, self.source.generator_count):
            raise DimensionError(
                f"morphism matrix {self.matrix.shape} does not fit "
                f"{self.source.generator_count} -> {self.target.generator_count} generators")

    @classmethod
    def identity(cls, group: FgAbGroup) -> GroupMorphism:
        return cls(group, group, IntMatrix.identity(group.generator_count))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> GroupMorphism:
        return cls(source, target,
                   IntMatrix.zeros(target.generator_count, source.generator_count))

    def equals(self, other: GroupMorphism) -> bool:
        if self.matrix.shape != other.matrix.shape:
            return False
        return self.target.contains_zero(self.matrix - other.matrix)

    def compose(self, first: GroupMorphism) -> GroupMorphism:
        """``self ∘ first``."""
        return GroupMorphism(first.source, self.target, self.matrix @ first.matrix)


def morphism_is_well_defined(f: GroupMorphism) -> bool:
    """True iff relations of the source are sent into the target relations."""
    return solve_linear(f.target.relations, f.matrix @ f.source.relations) is not None


def morphism_is_surjective(f: GroupMorphism) -> bool:
    stacked = IntMatrix.hstack(f.matrix, f.target.relations)
    return cokernel_group(stacked).is_trivial()


def morphism_is_injective(f: GroupMorphism) -> bool:
    # x is in the kernel iff (x, y) solves matrix.x + relations.y = 0 for some y
    stacked = IntMatrix.hstack(f.matrix, f.target.relations)
    K = kernel_basis(stacked)
    top = K.submatrix(range(f.source.generator_count), slice(None))
    return f.source.contains_zero(top)


def morphism_is_iso(f: GroupMorphism) -> bool:
    if not morphism_is_well_defined(f):
        raise ValueError("morphism is not well defined")
    return morphism_is_surjective(f) and morphism_is_injective(f)


def kernel_is_image(outgoing: GroupMorphism, incoming: IntMatrix) -> bool:
    """Whether ``ker(outgoing)`` equals the span of the columns of ``incoming``.

    ``outgoing`` must have a free source (no relations), as for an augmentation
    out of a free group; ``incoming`` lands in that free source.
    """
    if outgoing.source.relations.cols and not outgoing.source.relations.is_zero():
        raise ValueError("kernel_is_image expects a free source")
    stacked = IntMatrix.hstack(outgoing.matrix, outgoing.target.relations)
    K = kernel_basis(stacked)
    top = K.submatrix(range(outgoing.source.generator_count), slice(None))
    image_in_kernel = outgoing.target.contains_zero(outgoing.matrix @ incoming)
    return image_in_kernel and solve_linear(incoming, top) is not None

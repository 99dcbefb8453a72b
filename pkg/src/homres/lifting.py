"""Lifting maps out of homological multicomplexes through quasi-isomorphisms.

The source C is processed one column at a time, starting at column 0 and
moving left.  For a cell ``a`` in column i every term of the equations that
involves ``d_C`` comes from columns to the right of i, so it is already
known; what is left is one integer system per cell.  The unknown map and
the homotopy correction are solved together; when the homotopy part can be
taken to be zero it is.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainMap, is_quasi_iso
from .errors import DimensionError, LiftingError
from .linalg import IntMatrix, solve_linear
from .multicomplex import (Blocks, Cell, Multicomplex, MulticomplexHomotopy, MulticomplexMap,
                           add_blocks, assemble, compose_blocks, embed_complex, embed_map,
                           split_blocks, total_map)


def _restrict(blocks: Blocks, cell: Cell) -> Blocks:
    return {k: m for k, m in blocks.items() if (k[1], k[2]) == cell}


def _cells(M: Multicomplex, degree: int, min_column: int) -> list[Cell]:
    return M.cells_in_degree(degree, min_column)


def _column_of(blocks: Blocks, src: Multicomplex, tgt: Multicomplex, degree: int,
               cell: Cell, tgt_cells: list[Cell]) -> IntMatrix:
    return assemble(blocks, degree, [cell], tgt_cells, src, tgt)


@dataclass(frozen=True)
class _Step:
    """One cell's system ``[[D, 0], [F, -E]] [x; y] = [r1; r2]``."""

    x_cells: list[Cell]
    y_cells: list[Cell]
    D: IntMatrix
    F: IntMatrix
    E: IntMatrix
    r1: IntMatrix
    r2: IntMatrix

    def solve(self) -> tuple[IntMatrix, IntMatrix] | None:
        nx, ny = self.D.cols, self.E.cols
        top = IntMatrix.vstack(self.D, self.F)
        rhs = IntMatrix.vstack(self.r1, self.r2)
        # first try with no correction term
        x = solve_linear(top, rhs)
        if x is not None:
            return x, IntMatrix.zeros(ny, rhs.cols)
        full = IntMatrix.block([[self.D, IntMatrix.zeros(self.D.rows, ny)],
                                [self.F, -self.E]])
        sol = solve_linear(full, rhs)
        if sol is None:
            return None
        return sol.submatrix(range(nx), slice(None)), sol.submatrix(range(nx, nx + ny), slice(None))


def _source_columns(C: Multicomplex) -> list[int]:
    return sorted(C.columns, reverse=True)


def lift_through(f: MulticomplexMap, gbar: MulticomplexMap) -> tuple[MulticomplexMap, MulticomplexHomotopy]:
    """Lift ``gbar: C -> Y`` through ``f: X -> Y`` up to homotopy.

    Returns ``g: C -> X`` and s with ``f g - gbar = d s + s d``.  This works
    whenever C is homological and either X is a complex in column 0 with
    ``Tot(f)`` a quasi-isomorphism, or X is homological and ``Tot(f)`` is a
    quasi-isomorphism.
    """
    X, Y = f.source, f.target
    C = gbar.source
    if gbar.target != Y:
        raise DimensionError("gbar does not land in the target of f")
    dC = C.components
    g: Blocks = {}
    s: Blocks = {}
    for i in _source_columns(C):
        for a in sorted(c for c in C.cells if c[0] == i):
            n = a[0] + a[1]
            xb = _cells(X, n, i)          # g(a) lands here
            xe = _cells(X, n + 1, i)      # d_X g(a) lands here
            yc = _cells(Y, n, i - 1)      # f g(a) and d_Y s(a) land here
            ys = _cells(Y, n - 1, i - 1)  # s(a) lands here
            da = _restrict(dC, a)
            step = _Step(
                xb, ys,
                assemble(X.components, 1, xb, xe, X, X),
                assemble(f.components, 0, xb, yc, X, Y),
                assemble(Y.components, 1, ys, yc, Y, Y),
                _column_of(compose_blocks(g, 0, da, 1), C, X, 1, a, xe),
                _column_of(add_blocks((1, _restrict(gbar.components, a)),
                                      (1, compose_blocks(s, -1, da, 1))), C, Y, 0, a, yc),
            )
            sol = step.solve()
            if sol is None:
                raise LiftingError(f"quasi-isomorphism hypothesis violated at degree {n}")
            x, y = sol
            g.update(_split_column(x, 0, a, xb, C, X))
            s.update(_split_column(y, -1, a, ys, C, Y))
    g_map = MulticomplexMap(C, X, g)
    return g_map, MulticomplexHomotopy(f.compose(g_map), gbar, s)


def _split_column(M: IntMatrix, degree: int, cell: Cell, tgt_cells: list[Cell],
                  src: Multicomplex, tgt: Multicomplex) -> Blocks:
    return split_blocks(M, degree, [cell], tgt_cells, src, tgt)


def lift_through_quasi_iso(f: ChainMap, gbar: MulticomplexMap,
                           check: bool = True) -> tuple[MulticomplexMap, MulticomplexHomotopy]:
    """Lift ``gbar: C -> B`` along a quasi-isomorphism ``f: A -> B``.

    Returns ``g: C -> A`` and a homotopy s from ``f g`` to ``gbar``; here
    A and B are seen as multicomplexes in column 0.
    """
    if check and not is_quasi_iso(f):
        raise LiftingError("f is not a quasi-isomorphism")
    if gbar.target != embed_complex(f.target):
        raise DimensionError("gbar does not land in the target of f")
    return lift_through(embed_map(f), gbar)


def homotopy_through(f: MulticomplexMap, g: MulticomplexMap, h: MulticomplexMap,
                     s: MulticomplexHomotopy) -> MulticomplexHomotopy:
    """A homotopy t from g to h, given s from ``f g`` to ``f h``.

    Along the way a second-order term sigma with
    ``f t - s = d sigma - sigma d`` is built; it is what keeps every
    per-cell system solvable.
    """
    X, Y = f.source, f.target
    C = g.source
    if g.source != h.source or g.target != X or h.target != X:
        raise DimensionError("g and h must both map into the source of f")
    dC = C.components
    diff = add_blocks((1, g.components), (-1, h.components))
    t: Blocks = {}
    sigma: Blocks = {}
    for i in _source_columns(C):
        for a in sorted(c for c in C.cells if c[0] == i):
            n = a[0] + a[1]
            xb = _cells(X, n - 1, i - 1)   # t(a)
            xe = _cells(X, n, i - 1)       # d_X t(a), g(a) - h(a)
            yc = _cells(Y, n - 1, i - 2)   # f t(a), s(a), d_Y sigma(a)
            ys = _cells(Y, n - 2, i - 2)   # sigma(a)
            da = _restrict(dC, a)
            r1 = add_blocks((1, _restrict(diff, a)), (-1, compose_blocks(t, -1, da, 1)))
            r2 = add_blocks((1, _restrict(s.components, a)), (-1, compose_blocks(sigma, -2, da, 1)))
            step = _Step(
                xb, ys,
                assemble(X.components, 1, xb, xe, X, X),
                assemble(f.components, 0, xb, yc, X, Y),
                assemble(Y.components, 1, ys, yc, Y, Y),
                _column_of(r1, C, X, 0, a, xe),
                _column_of(r2, C, Y, -1, a, yc),
            )
            sol = step.solve()
            if sol is None:
                raise LiftingError(f"quasi-isomorphism hypothesis violated at degree {n}")
            x, y = sol
            t.update(_split_column(x, -1, a, xb, C, X))
            sigma.update(_split_column(y, -2, a, ys, C, Y))
    return MulticomplexHomotopy(g, h, t)


def homotopy_between_lifts(f: ChainMap, g: MulticomplexMap, h: MulticomplexMap,
                           s: MulticomplexHomotopy, check: bool = True) -> MulticomplexHomotopy:
    """Given s from ``f g`` to ``f h`` with f a quasi-isomorphism, a homotopy g to h."""
    if check and not is_quasi_iso(f):
        raise LiftingError("f is not a quasi-isomorphism")
    return homotopy_through(embed_map(f), g, h, s)


def induced_resolution_map(res_a, res_b, f: ChainMap) -> tuple[MulticomplexMap, MulticomplexHomotopy]:
    """A map ``g: C -> C'`` of resolutions over ``f: A -> A'``.

    Returns g with a homotopy from ``phi' g`` to ``f phi``.
    """
    if f.source != res_a.complex or f.target != res_b.complex:
        raise DimensionError("f does not go between the resolved complexes")
    gbar = embed_map(f).compose(res_a.phi)
    return lift_through(res_b.phi, gbar)


def homotopy_inverse(res_a, res_b, f: ChainMap) -> tuple[MulticomplexMap, MulticomplexHomotopy]:
    """A map ``g': C' -> C`` with ``f phi g' ~ phi'``, for f a quasi-isomorphism."""
    if not is_quasi_iso(f):
        raise LiftingError("f is not a quasi-isomorphism")
    through = embed_map(f).compose(res_a.phi)
    return lift_through(through, res_b.phi)


def is_quasi_iso_mc(f: MulticomplexMap) -> bool:
    return is_quasi_iso(total_map(f))

"""Multicomplexes: bigraded free groups with differentials of every column shift.

A cell ``(i, j)`` holds ``C^{i,j} = Z^rank``; ``i`` is the column (resolution
degree) and ``i + j`` the total degree.  Every bigraded morphism in this module
is a dict of blocks keyed by ``(shift, i, j)``: the block leaves cell ``(i, j)``
and lands in ``(i + shift, j + degree - shift)`` where ``degree`` is the total
degree of the morphism (+1 for differentials, 0 for maps, -1 for homotopies).
So ``d^r`` has key ``(r, i, j)`` and goes ``C^{i,j} -> C^{i+r, j-r+1}``.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from typing import Mapping

from .complexes import ChainComplex, ChainHomotopy, ChainMap
from .errors import DimensionError
from .linalg import IntMatrix, in_column_span, kernel_basis, solve_linear

Cell = tuple[int, int]
Key = tuple[int, int, int]
Blocks = dict[Key, IntMatrix]


def target_cell(key: Key, degree: int) -> Cell:
    shift, i, j = key
    return i + shift, j + degree - shift


def _normalize(blocks: Mapping[Key, IntMatrix], source: "Multicomplex",
               target: "Multicomplex", degree: int, min_shift: int, what: str) -> Blocks:
    out = {}
    for key, m in blocks.items():
        key = tuple(int(x) for x in key)
        if key[0] < min_shift:
            raise ValueError(f"{what} component with column shift {key[0]} < {min_shift}")
        want = (target.rank(*target_cell(key, degree)), source.rank(key[1], key[2]))
        if m.shape != want:
            raise DimensionError(f"{what} block {key} has shape {m.shape}, expected {want}")
        if not m.is_zero():
            out[key] = m
    return dict(sorted(out.items()))


def _by_source(blocks: Blocks) -> dict[Cell, list[tuple[int, IntMatrix]]]:
    idx: dict[Cell, list[tuple[int, IntMatrix]]] = defaultdict(list)
    for (shift, i, j), m in blocks.items():
        idx[(i, j)].append((shift, m))
    return idx


def compose_blocks(outer: Blocks, outer_degree: int, inner: Blocks, inner_degree: int) -> Blocks:
    """Blocks of ``outer ∘ inner``; shifts and degrees add."""
    idx = _by_source(outer)
    acc: dict[Key, IntMatrix] = {}
    for key, m in inner.items():
        mid = target_cell(key, inner_degree)
        for shift, n in idx.get(mid, ()):
            k = (key[0] + shift, key[1], key[2])
            prod = n @ m
            acc[k] = acc[k] + prod if k in acc else prod
    return {k: v for k, v in sorted(acc.items()) if not v.is_zero()}


def add_blocks(*terms: tuple[int, Blocks]) -> Blocks:
    """Signed sum ``Σ sign * blocks``."""
    acc: dict[Key, IntMatrix] = {}
    for sign, blocks in terms:
        for k, m in blocks.items():
            m = m if sign == 1 else m * sign
            acc[k] = acc[k] + m if k in acc else m
    return {k: v for k, v in sorted(acc.items()) if not v.is_zero()}


class Multicomplex:
    """Ranks per cell plus differential components ``d^r`` (r >= 0)."""

    def __init__(self, ranks: Mapping[Cell, int], components: Mapping[Key, IntMatrix] | None = None):
        clean = {}
        for (i, j), r in ranks.items():
            if r < 0:
                raise ValueError(f"negative rank at {(i, j)}")
            if r:
                clean[(int(i), int(j))] = int(r)
        self.ranks: dict[Cell, int] = dict(sorted(clean.items()))
        self.components: Blocks = _normalize(components or {}, self, self, 1, 0, "differential")

    @classmethod
    def zero(cls) -> Multicomplex:
        return cls({})

    def rank(self, i: int, j: int) -> int:
        return self.ranks.get((i, j), 0)

    def d(self, r: int, i: int, j: int) -> IntMatrix:
        m = self.components.get((r, i, j))
        if m is not None:
            return m
        return IntMatrix.zeros(self.rank(i + r, j - r + 1), self.rank(i, j))

    @property
    def cells(self) -> list[Cell]:
        return list(self.ranks)

    @property
    def columns(self) -> list[int]:
        return sorted({i for i, _ in self.ranks})

    @property
    def rows(self) -> list[int]:
        return sorted({j for _, j in self.ranks})

    @property
    def r_max(self) -> int:
        return max((k[0] for k in self.components), default=-1)

    def cells_in_degree(self, n: int, min_column: int | None = None) -> list[Cell]:
        """Cells of total degree n, ascending column; optionally column >= min_column."""
        return sorted((c for c in self.ranks
                       if c[0] + c[1] == n and (min_column is None or c[0] >= min_column)))

    @cached_property
    def total_degrees(self) -> list[int]:
        return sorted({i + j for i, j in self.ranks})

    def column_filtration(self, k: int) -> Multicomplex:
        """The sub-multicomplex ``C_(k)`` of columns ``k <= i <= 0``."""
        ranks = {c: r for c, r in self.ranks.items() if k <= c[0] <= 0}
        comps = {key: m for key, m in self.components.items()
                 if (key[1], key[2]) in ranks and target_cell(key, 1) in ranks}
        return Multicomplex(ranks, comps)

    def row(self, j: int) -> ChainComplex:
        """Row j as a complex in the column index, with differential d^1."""
        ranks = {i: r for (i, jj), r in self.ranks.items() if jj == j}
        return ChainComplex(ranks, {i: self.d(1, i, j) for i in ranks if (i + 1) in ranks})

    @cached_property
    def total(self) -> ChainComplex:
        degrees = self.total_degrees
        ranks = {n: sum(self.ranks[c] for c in self.cells_in_degree(n)) for n in degrees}
        diffs = {}
        for n in degrees:
            if n + 1 in ranks:
                diffs[n] = assemble(self.components, 1, self.cells_in_degree(n),
                                    self.cells_in_degree(n + 1), self, self)
        return ChainComplex(ranks, diffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multicomplex):
            return NotImplemented
        return self is other or (self.ranks == other.ranks and self.components == other.components)

    def __hash__(self) -> int:
        return hash((tuple(self.ranks.items()), tuple(self.components.items())))

    def __repr__(self) -> str:
        return f"Multicomplex(ranks={self.ranks}, r_max={self.r_max})"


def assemble(blocks: Blocks, degree: int, src_cells: list[Cell], tgt_cells: list[Cell],
             source: Multicomplex, target: Multicomplex) -> IntMatrix:
    """Block matrix of a bigraded morphism between two lists of cells."""
    rows = [0]
    for c in tgt_cells:
        rows.append(rows[-1] + target.rank(*c))
    cols = [0]
    for c in src_cells:
        cols.append(cols[-1] + source.rank(*c))
    data = [[0] * cols[-1] for _ in range(rows[-1])]
    for a, (i, j) in enumerate(src_cells):
        for b, (ti, tj) in enumerate(tgt_cells):
            shift = ti - i
            if tj != j + degree - shift:
                continue
            m = blocks.get((shift, i, j))
            if m is None:
                continue
            r0, c0 = rows[b], cols[a]
            for x in range(m.rows):
                row = data[r0 + x]
                mr = m.row(x)
                for y in range(m.cols):
                    row[c0 + y] = mr[y]
    return IntMatrix(data, rows[-1], cols[-1])


def split_blocks(M: IntMatrix, degree: int, src_cells: list[Cell], tgt_cells: list[Cell],
                 source: Multicomplex, target: Multicomplex) -> Blocks:
    """Inverse of :func:`assemble`."""
    out = {}
    r0 = 0
    for ti, tj in tgt_cells:
        nr = target.rank(ti, tj)
        c0 = 0
        for i, j in src_cells:
            nc = source.rank(i, j)
            shift = ti - i
            if tj == j + degree - shift:
                block = M.submatrix(range(r0, r0 + nr), range(c0, c0 + nc))
                if not block.is_zero():
                    out[(shift, i, j)] = block
            c0 += nc
        r0 += nr
    return dict(sorted(out.items()))


def validate_multicomplex(C: Multicomplex) -> list[str]:
    """Violations of ``Σ_{p+q=n} d^p d^q = 0``, one per offending (n, i, j)."""
    square = compose_blocks(C.components, 1, C.components, 1)
    return [f"identity fails for n={n} at cell {(i, j)}" for (n, i, j) in square]


def is_homological(C: Multicomplex) -> bool:
    if any(key[0] == 0 for key in C.components):
        return False
    if any(i > 0 for i, _ in C.ranks):
        return False
    for (i, j) in C.ranks:
        if i < 0:
            K = kernel_basis(C.d(1, i, j))
            if not in_column_span(C.d(1, i - 1, j), K):
                return False
    return True


def embed_complex(A: ChainComplex) -> Multicomplex:
    """A as a multicomplex in column 0, its differential stored as d^0."""
    return Multicomplex({(0, j): r for j, r in A.ranks.items()},
                        {(0, 0, j): m for j, m in A.diffs.items()})


def total_complex(C: Multicomplex) -> ChainComplex:
    return C.total


class MulticomplexMap:
    """Total-degree-0 map with components ``f^k: A^{s,t} -> B^{s+k, t-k}``, k >= 0."""

    degree = 0

    def __init__(self, source: Multicomplex, target: Multicomplex,
                 components: Mapping[Key, IntMatrix]):
        self.source = source
        self.target = target
        self.components = _normalize(components, source, target, 0, 0, "map")

    @classmethod
    def identity(cls, C: Multicomplex) -> MulticomplexMap:
        return cls(C, C, {(0, i, j): IntMatrix.identity(r) for (i, j), r in C.ranks.items()})

    @classmethod
    def zero(cls, A: Multicomplex, B: Multicomplex) -> MulticomplexMap:
        return cls(A, B, {})

    def compose(self, first: MulticomplexMap) -> MulticomplexMap:
        """``self ∘ first``."""
        return MulticomplexMap(first.source, self.target,
                               compose_blocks(self.components, 0, first.components, 0))

    def __add__(self, other: MulticomplexMap) -> MulticomplexMap:
        return MulticomplexMap(self.source, self.target,
                               add_blocks((1, self.components), (1, other.components)))

    def __sub__(self, other: MulticomplexMap) -> MulticomplexMap:
        return MulticomplexMap(self.source, self.target,
                               add_blocks((1, self.components), (-1, other.components)))

    def __neg__(self) -> MulticomplexMap:
        return MulticomplexMap(self.source, self.target, add_blocks((-1, self.components)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MulticomplexMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.components == other.components)

    def __repr__(self) -> str:
        return f"MulticomplexMap({len(self.components)} blocks)"


def embed_map(f: ChainMap) -> MulticomplexMap:
    return MulticomplexMap(embed_complex(f.source), embed_complex(f.target),
                           {(0, 0, j): m for j, m in f.components.items()})


class MulticomplexHomotopy:
    """Total-degree -1 map ``s^k: A^{i,j} -> B^{i+k, j-k-1}``, k >= -1,
    claimed to satisfy ``f - g = d s + s d``."""

    degree = -1

    def __init__(self, f: MulticomplexMap, g: MulticomplexMap, components: Mapping[Key, IntMatrix]):
        if f.source != g.source or f.target != g.target:
            raise DimensionError("homotopy endpoints have different source or target")
        self.f = f
        self.g = g
        self.components = _normalize(components, f.source, f.target, -1, -1, "homotopy")

    @property
    def source(self) -> Multicomplex:
        return self.f.source

    @property
    def target(self) -> Multicomplex:
        return self.f.target

    def __repr__(self) -> str:
        return f"MulticomplexHomotopy({len(self.components)} blocks)"


def homotopy_boundary(source: Multicomplex, target: Multicomplex, s: Blocks) -> Blocks:
    """Blocks of ``d s + s d`` for a degree -1 family ``s``."""
    return add_blocks((1, compose_blocks(target.components, 1, s, -1)),
                      (1, compose_blocks(s, -1, source.components, 1)))


def check_mc_map(f: MulticomplexMap) -> bool:
    left = compose_blocks(f.target.components, 1, f.components, 0)
    right = compose_blocks(f.components, 0, f.source.components, 1)
    return left == right


def check_mc_homotopy(s: MulticomplexHomotopy) -> bool:
    diff = add_blocks((1, s.f.components), (-1, s.g.components))
    return diff == homotopy_boundary(s.source, s.target, s.components)


def total_map(f: MulticomplexMap) -> ChainMap:
    A, B = f.source, f.target
    comps = {n: assemble(f.components, 0, A.cells_in_degree(n), B.cells_in_degree(n), A, B)
             for n in A.total_degrees}
    return ChainMap(A.total, B.total, comps)


def total_homotopy(s: MulticomplexHomotopy) -> ChainHomotopy:
    A, B = s.source, s.target
    comps = {n: assemble(s.components, -1, A.cells_in_degree(n), B.cells_in_degree(n - 1), A, B)
             for n in A.total_degrees}
    return ChainHomotopy(total_map(s.f), total_map(s.g), comps)


def _unknown_layout(A: Multicomplex, B: Multicomplex) -> list[tuple[Cell, Cell]]:
    pairs = []
    for a in A.cells:
        n = a[0] + a[1]
        for b in B.cells_in_degree(n - 1, a[0] - 1):
            pairs.append((a, b))
    return pairs


def find_homotopy(f: MulticomplexMap, g: MulticomplexMap) -> MulticomplexHomotopy | None:
    """Solve ``f - g = d s + s d`` exactly for an admissible s, or return None.

    Unknowns are every entry of every block allowed by the filtration
    condition (column shift >= -1); the integer system is solved in one go,
    so None means no homotopy exists.
    """
    A, B = f.source, f.target
    rhs_blocks = add_blocks((1, f.components), (-1, g.components))
    if not rhs_blocks:
        return MulticomplexHomotopy(f, g, {})

    unknowns = _unknown_layout(A, B)
    u_off = {}
    pos = 0
    for a, b in unknowns:
        u_off[(a, b)] = pos
        pos += A.rank(*a) * B.rank(*b)
    n_unknown = pos

    equations = []
    for a in A.cells:
        n = a[0] + a[1]
        for c in B.cells_in_degree(n, a[0] - 1):
            equations.append((a, c))
    e_off = {}
    pos = 0
    for a, c in equations:
        e_off[(a, c)] = pos
        pos += A.rank(*a) * B.rank(*c)
    n_eq = pos

    for key in rhs_blocks:
        a = (key[1], key[2])
        if (a, target_cell(key, 0)) not in e_off:
            return None

    M = [[0] * n_unknown for _ in range(n_eq)]
    dB = _by_source(B.components)
    dA_into: dict[Cell, list[tuple[Cell, IntMatrix]]] = defaultdict(list)
    for key, m in A.components.items():
        dA_into[target_cell(key, 1)].append(((key[1], key[2]), m))

    for (a, b), off in u_off.items():
        ra, rb = A.rank(*a), B.rank(*b)
        # d_B ∘ X : (a -> b -> c)
        for shift, D in dB.get(b, ()):
            c = target_cell((shift, b[0], b[1]), 1)
            eo = e_off[(a, c)]
            rc = B.rank(*c)
            for x in range(rb):
                for y in range(ra):
                    col = off + x * ra + y
                    for z in range(rc):
                        v = D[z, x]
                        if v:
                            M[eo + z * ra + y][col] += v
        # X ∘ d_A : (a' -> a -> b)
        for a2, E in dA_into.get(a, ()):
            eo = e_off.get((a2, b))
            if eo is None:
                continue
            ra2 = A.rank(*a2)
            for x in range(rb):
                for y in range(ra):
                    col = off + x * ra + y
                    for w in range(ra2):
                        v = E[y, w]
                        if v:
                            M[eo + x * ra2 + w][col] += v

    rhs = [0] * n_eq
    for key, m in rhs_blocks.items():
        a = (key[1], key[2])
        eo = e_off[(a, target_cell(key, 0))]
        ra = A.rank(*a)
        for x in range(m.rows):
            for y in range(m.cols):
                rhs[eo + x * ra + y] = m[x, y]

    sol = solve_linear(IntMatrix(M, n_eq, n_unknown), IntMatrix([[v] for v in rhs], n_eq, 1))
    if sol is None:
        return None
    vec = sol.column(0)
    comps = {}
    for (a, b), off in u_off.items():
        ra, rb = A.rank(*a), B.rank(*b)
        block = IntMatrix([vec[off + x * ra: off + (x + 1) * ra] for x in range(rb)], rb, ra)
        comps[(b[0] - a[0], a[0], a[1])] = block
    return MulticomplexHomotopy(f, g, comps)


def planted_map(g: MulticomplexMap, s: Blocks) -> MulticomplexMap:
    """``g + (d s + s d)``, a map homotopic to g through s."""
    return MulticomplexMap(g.source, g.target,
                           add_blocks((1, g.components),
                                      (1, homotopy_boundary(g.source, g.target, s))))


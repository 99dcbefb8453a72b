"""JSON documents for complexes, groups, maps, homotopies and resolutions.

Every document is an object with ``format_version`` and ``kind``.  The
canonical text form is ``json.dumps`` with sorted keys and no spaces, so
writing a parsed canonical file reproduces it byte for byte.  Files carry
no trailing newline.

Matrices are lists of rows.  Degrees are object keys written in decimal;
cells of a multicomplex are written ``"i,j"``, and blocks of bigraded maps
are grouped first by column shift and then by source cell.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable

from .complexes import ChainComplex, ChainMap
from .errors import DimensionError
from .groups import FgAbGroup
from .linalg import IntMatrix
from .multicomplex import (Blocks, Multicomplex, MulticomplexHomotopy, MulticomplexMap,
                           embed_complex, target_cell)
from .resolution import AugmentedRowResolution, HomologicalResolution

FORMAT_VERSION = 1
KINDS = ("complex", "multicomplex", "group", "chain_map", "mc_map", "homotopy", "resolution")


class SchemaError(ValueError):
    """A document does not match the schema of its kind."""


def canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- small helpers --------------------------------------------------------


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise SchemaError(f"{what} must be an integer, got {x!r}")
    return x


def _key_int(k: str, what: str) -> int:
    try:
        return int(k)
    except ValueError:
        raise SchemaError(f"{what} key {k!r} is not an integer") from None


def _key_cell(k: str) -> tuple[int, int]:
    parts = k.split(",")
    if len(parts) != 2:
        raise SchemaError(f"cell key {k!r} is not of the form 'i,j'")
    return _key_int(parts[0], "cell"), _key_int(parts[1], "cell")


def _obj(x: Any, what: str) -> dict:
    if not isinstance(x, dict):
        raise SchemaError(f"{what} must be an object")
    return x


def _matrix(x: Any, rows: int, cols: int, what: str) -> IntMatrix:
    if not isinstance(x, list):
        raise SchemaError(f"{what} must be a list of rows")
    if rows == 0 and x == []:
        return IntMatrix.zeros(0, cols)
    if len(x) != rows or any(not isinstance(r, list) or len(r) != cols for r in x):
        raise SchemaError(f"{what} must have shape {rows} x {cols}")
    return IntMatrix([[_int(v, what) for v in r] for r in x], rows, cols)


def _dump_matrix(m: IntMatrix) -> list:
    return m.tolist()


def _cell_str(c: tuple[int, int]) -> str:
    return f"{c[0]},{c[1]}"


def _check_header(doc: Any, kind: str) -> dict:
    doc = _obj(doc, "document")
    if doc.get("format_version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {doc.get('format_version')!r}")
    if doc.get("kind") != kind:
        raise SchemaError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc


def _header(kind: str, **payload: Any) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": kind, **payload}


# -- groups ---------------------------------------------------------------


def group_to_doc(G: FgAbGroup) -> dict:
    return _header("group", generators=G.generator_count, relations=_dump_matrix(G.relations))


def group_from_doc(doc: Any) -> FgAbGroup:
    doc = _check_header(doc, "group")
    n = _int(doc.get("generators"), "generators")
    if n < 0:
        raise SchemaError("generators must be non-negative")
    rel = doc.get("relations", [])
    cols = len(rel[0]) if isinstance(rel, list) and rel and isinstance(rel[0], list) else 0
    return FgAbGroup(n, _matrix(rel, n, cols, "relations"))


# -- complexes ------------------------------------------------------------


def complex_to_doc(A: ChainComplex) -> dict:
    return _header("complex",
                   ranks={str(j): r for j, r in A.ranks.items()},
                   diff={str(j): _dump_matrix(m) for j, m in A.diffs.items()})


def complex_from_doc(doc: Any) -> ChainComplex:
    doc = _check_header(doc, "complex")
    ranks = {_key_int(k, "rank"): _int(v, "rank") for k, v in _obj(doc.get("ranks", {}), "ranks").items()}
    if any(r < 0 for r in ranks.values()):
        raise SchemaError("ranks must be non-negative")
    diffs = {}
    for k, v in _obj(doc.get("diff", {}), "diff").items():
        j = _key_int(k, "diff")
        diffs[j] = _matrix(v, ranks.get(j + 1, 0), ranks.get(j, 0), f"diff[{j}]")
    return ChainComplex(ranks, diffs)


# -- bigraded blocks ------------------------------------------------------


def _blocks_to_doc(blocks: Blocks) -> dict:
    out: dict[str, dict[str, list]] = {}
    for (shift, i, j), m in blocks.items():
        out.setdefault(str(shift), {})[_cell_str((i, j))] = _dump_matrix(m)
    return out


def _blocks_from_doc(x: Any, degree: int, source: Multicomplex, target: Multicomplex,
                     what: str) -> Blocks:
    out = {}
    for sk, cells in _obj(x, what).items():
        shift = _key_int(sk, what)
        for ck, v in _obj(cells, f"{what}[{sk}]").items():
            i, j = _key_cell(ck)
            key = (shift, i, j)
            rows = target.rank(*target_cell(key, degree))
            out[key] = _matrix(v, rows, source.rank(i, j), f"{what}[{sk}][{ck}]")
    return out


def multicomplex_to_doc(C: Multicomplex) -> dict:
    return _header("multicomplex",
                   ranks={_cell_str(c): r for c, r in C.ranks.items()},
                   components=_blocks_to_doc(C.components))


def multicomplex_from_doc(doc: Any) -> Multicomplex:
    doc = _check_header(doc, "multicomplex")
    ranks = {_key_cell(k): _int(v, "rank") for k, v in _obj(doc.get("ranks", {}), "ranks").items()}
    if any(r < 0 for r in ranks.values()):
        raise SchemaError("ranks must be non-negative")
    shape = Multicomplex(ranks)
    return Multicomplex(ranks, _blocks_from_doc(doc.get("components", {}), 1, shape, shape,
                                                "components"))


# -- maps and homotopies --------------------------------------------------

Loader = Callable[[Any], Any]


def chain_map_to_doc(f: ChainMap) -> dict:
    return _header("chain_map", source=complex_to_doc(f.source), target=complex_to_doc(f.target),
                   components={str(j): _dump_matrix(m) for j, m in f.components.items()})


def chain_map_from_doc(doc: Any, resolve: Loader | None = None) -> ChainMap:
    doc = _check_header(doc, "chain_map")
    A = complex_from_doc(_inline(doc.get("source"), resolve))
    B = complex_from_doc(_inline(doc.get("target"), resolve))
    comps = {}
    for k, v in _obj(doc.get("components", {}), "components").items():
        j = _key_int(k, "component")
        comps[j] = _matrix(v, B.rank(j), A.rank(j), f"components[{j}]")
    return ChainMap(A, B, comps)


def mc_map_to_doc(f: MulticomplexMap) -> dict:
    return _header("mc_map", source=multicomplex_to_doc(f.source),
                   target=multicomplex_to_doc(f.target), components=_blocks_to_doc(f.components))


def mc_map_from_doc(doc: Any, resolve: Loader | None = None) -> MulticomplexMap:
    doc = _check_header(doc, "mc_map")
    A = multicomplex_from_doc(_inline(doc.get("source"), resolve))
    B = multicomplex_from_doc(_inline(doc.get("target"), resolve))
    return MulticomplexMap(A, B, _blocks_from_doc(doc.get("components", {}), 0, A, B, "components"))


def homotopy_to_doc(s: MulticomplexHomotopy) -> dict:
    return _header("homotopy", f=mc_map_to_doc(s.f), g=mc_map_to_doc(s.g),
                   components=_blocks_to_doc(s.components))


def homotopy_from_doc(doc: Any, resolve: Loader | None = None) -> MulticomplexHomotopy:
    doc = _check_header(doc, "homotopy")
    f = mc_map_from_doc(_inline(doc.get("f"), resolve), resolve)
    g = mc_map_from_doc(_inline(doc.get("g"), resolve), resolve)
    comps = _blocks_from_doc(doc.get("components", {}), -1, f.source, f.target, "components")
    return MulticomplexHomotopy(f, g, comps)


# -- resolutions ----------------------------------------------------------


def resolution_to_doc(res: HomologicalResolution) -> dict:
    return _header(
        "resolution",
        complex=complex_to_doc(res.complex),
        C=multicomplex_to_doc(res.C),
        phi=_blocks_to_doc(res.phi.components),
        augmentation={str(j): _dump_matrix(R.augmentation) for j, R in res.rows.items()},
        padding={str(j): k for j, k in sorted(res.padding.items())},
        seed=res.seed,
        perturb=res.perturb,
    )


def resolution_from_doc(doc: Any, resolve: Loader | None = None) -> HomologicalResolution:
    """Rebuild a resolution; row groups are recomputed from the complex."""
    doc = _check_header(doc, "resolution")
    A = complex_from_doc(_inline(doc.get("complex"), resolve))
    C = multicomplex_from_doc(_inline(doc.get("C"), resolve))
    target = embed_complex(A)
    phi = MulticomplexMap(C, target, _blocks_from_doc(doc.get("phi", {}), 0, C, target, "phi"))
    rows = {}
    for k, v in _obj(doc.get("augmentation", {}), "augmentation").items():
        j = _key_int(k, "augmentation")
        G = A.homology(j).group
        aug = _matrix(v, G.generator_count, C.rank(0, j), f"augmentation[{j}]")
        ranks = {i: C.rank(i, j) for i in C.columns if C.rank(i, j)}
        rows[j] = AugmentedRowResolution(j, G, ranks, {i: C.d(1, i, j) for i in ranks}, aug)
    padding = {_key_int(k, "padding"): _int(v, "padding")
               for k, v in _obj(doc.get("padding", {}), "padding").items()}
    seed = _int(doc.get("seed", 0), "seed")
    perturb = doc.get("perturb", False)
    if not isinstance(perturb, bool):
        raise SchemaError("perturb must be true or false")
    return HomologicalResolution(A, C, phi, rows, padding, seed, perturb)


# -- files ----------------------------------------------------------------

_READERS = {
    "complex": lambda d, r: complex_from_doc(d),
    "multicomplex": lambda d, r: multicomplex_from_doc(d),
    "group": lambda d, r: group_from_doc(d),
    "chain_map": chain_map_from_doc,
    "mc_map": mc_map_from_doc,
    "homotopy": homotopy_from_doc,
    "resolution": resolution_from_doc,
}

_WRITERS = {
    ChainComplex: complex_to_doc,
    Multicomplex: multicomplex_to_doc,
    FgAbGroup: group_to_doc,
    ChainMap: chain_map_to_doc,
    MulticomplexMap: mc_map_to_doc,
    MulticomplexHomotopy: homotopy_to_doc,
    HomologicalResolution: resolution_to_doc,
}


def _inline(x: Any, resolve: Loader | None) -> Any:
    """A nested document, or a file name resolved through ``resolve``."""
    if isinstance(x, str):
        if resolve is None:
            raise SchemaError(f"file reference {x!r} cannot be resolved here")
        return resolve(x)
    if x is None:
        raise SchemaError("missing nested document")
    return x


def to_doc(obj: Any) -> dict:
    for cls, writer in _WRITERS.items():
        if isinstance(obj, cls):
            return writer(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_doc(doc: Any, resolve: Loader | None = None) -> Any:
    kind = _obj(doc, "document").get("kind")
    if kind not in _READERS:
        raise SchemaError(f"unknown kind {kind!r}")
    try:
        return _READERS[kind](doc, resolve)
    except DimensionError as e:
        raise SchemaError(str(e)) from None


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from None


def load(path: str | Path) -> Any:
    """Parse a document file; string references are read relative to its folder."""
    path = Path(path)
    base = path.parent

    def resolve(name: str) -> Any:
        return read_json(base / name)

    return from_doc(read_json(path), resolve)


def dump(obj: Any, path: str | Path) -> None:
    Path(path).write_text(canonical(to_doc(obj)))

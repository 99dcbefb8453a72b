"""Command-line front end.

Exit codes: 0 success (or the checked property holds), 1 the checked
property fails, 2 malformed input, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Callable

from .complexes import ChainComplex, ChainMap, check_chain_map, is_quasi_iso, validate_complex
from .derived import hyper_derived_tensor, tor
from .errors import DimensionError, InvariantBreach, LiftingError
from .groups import FgAbGroup
from .lifting import induced_resolution_map, lift_through_quasi_iso
from .multicomplex import (Multicomplex, MulticomplexHomotopy, MulticomplexMap, check_mc_homotopy,
                           check_mc_map, embed_map, find_homotopy, is_homological,
                           total_map, validate_multicomplex)
from .resolution import HomologicalResolution, homological_resolution, validate_resolution
from .serialization import SchemaError, canonical, dump, load, to_doc

OK, FALSE, MALFORMED, BREACH = 0, 1, 2, 3


class Report:
    """Lines for people, a dict for machines."""

    def __init__(self, command: str):
        self.data: dict[str, Any] = {"command": command}
        self.lines: list[str] = []

    def put(self, key: str, value: Any, line: str | None = None) -> None:
        self.data[key] = value
        if line is not None:
            self.lines.append(line)

    def say(self, line: str) -> None:
        self.lines.append(line)

    def emit(self, as_json: bool, code: int) -> int:
        self.data["exit_code"] = code
        if as_json:
            print(canonical(self.data))
        else:
            for line in self.lines:
                print(line)
        return code


def _group_info(G: FgAbGroup) -> dict:
    return {"invariant_factors": list(G.invariant_factors), "free_rank": G.free_rank,
            "name": str(G)}


def _parse_pad(text: str | None) -> dict[int, int]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        j, sep, k = part.partition("=")
        if not sep:
            raise SchemaError(f"bad --pad entry {part!r}, expected j=k")
        try:
            out[int(j)] = int(k)
        except ValueError:
            raise SchemaError(f"bad --pad entry {part!r}, expected integers") from None
        if out[int(j)] < 0:
            raise SchemaError("padding must be non-negative")
    return out


def _expect(obj: Any, *types: type) -> Any:
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise SchemaError(f"expected a {names} document, got {type(obj).__name__}")
    return obj


def _as_mc_map(obj: Any) -> MulticomplexMap:
    obj = _expect(obj, ChainMap, MulticomplexMap)
    return embed_map(obj) if isinstance(obj, ChainMap) else obj


def _write(obj: Any, path: str | None, report: Report, key: str) -> None:
    if path:
        dump(obj, path)
        report.put(key, path, f"wrote {path}")
    else:
        report.put(key, to_doc(obj))


# -- commands -------------------------------------------------------------


def cmd_check(args: argparse.Namespace, report: Report) -> int:
    obj = load(args.file)
    kind = type(obj).__name__
    problems: list[str] = []
    if isinstance(obj, ChainComplex):
        problems = validate_complex(obj)
    elif isinstance(obj, Multicomplex):
        problems = validate_multicomplex(obj)
        if args.homological and not problems and not is_homological(obj):
            problems.append("not homological")
    elif isinstance(obj, ChainMap):
        problems = [] if check_chain_map(obj) else ["not a chain map"]
    elif isinstance(obj, MulticomplexMap):
        problems = [] if check_mc_map(obj) else ["not a multicomplex map"]
    elif isinstance(obj, MulticomplexHomotopy):
        problems = [] if check_mc_homotopy(obj) else ["witness equation fails"]
    elif isinstance(obj, HomologicalResolution):
        problems = validate_resolution(obj)
        if not problems:
            report.say("passed: multicomplex identity, homological predicate, row exactness, "
                       "augmentation onto homology, multicomplex map, quasi-isomorphism")
    report.put("kind", kind, f"{kind}: {len(problems)} violation(s)")
    report.put("violations", problems)
    for p in problems:
        report.say(f"  {p}")
    return FALSE if problems else OK


def _homology_source(obj: Any) -> ChainComplex:
    obj = _expect(obj, ChainComplex, Multicomplex, HomologicalResolution)
    if isinstance(obj, Multicomplex):
        return obj.total
    if isinstance(obj, HomologicalResolution):
        return obj.C.total
    return obj


def cmd_homology(args: argparse.Namespace, report: Report) -> int:
    A = _homology_source(load(args.file))
    degrees = [args.degree] if args.degree is not None else list(A.degrees)
    groups = {}
    for j in degrees:
        G = A.homology(j).group
        groups[str(j)] = _group_info(G)
        if args.degree is not None:
            report.say(str(G))
        else:
            report.say(f"H^{j} = {G}")
    report.put("homology", groups)
    return OK


def cmd_qiso(args: argparse.Namespace, report: Report) -> int:
    obj = _expect(load(args.file), ChainMap, MulticomplexMap, HomologicalResolution)
    if isinstance(obj, HomologicalResolution):
        f = total_map(obj.phi)
    elif isinstance(obj, MulticomplexMap):
        f = total_map(obj)
    else:
        f = obj
    if not check_chain_map(f):
        report.put("quasi_iso", False, "not a chain map")
        return FALSE
    result = is_quasi_iso(f)
    report.put("quasi_iso", result, "quasi-isomorphism" if result else "not a quasi-isomorphism")
    return OK if result else FALSE


def cmd_tot(args: argparse.Namespace, report: Report) -> int:
    obj = _expect(load(args.file), Multicomplex, MulticomplexMap)
    out = obj.total if isinstance(obj, Multicomplex) else total_map(obj)
    _write(out, args.output, report, "total")
    if not args.output and not args.json:
        print(canonical(to_doc(out)))
    return OK


def cmd_resolve(args: argparse.Namespace, report: Report) -> int:
    A = _expect(load(args.file), ChainComplex)
    if validate_complex(A):
        raise SchemaError("input is not a complex (d∘d != 0)")
    res = homological_resolution(A, _parse_pad(args.pad), seed=args.seed, perturb=args.perturb)
    problems = validate_resolution(res)
    if problems:
        raise InvariantBreach("; ".join(problems))
    report.say("passed: multicomplex identity, homological predicate, row exactness, "
               "augmentation onto homology, multicomplex map, quasi-isomorphism")
    report.put("columns", res.C.columns, f"columns: {res.C.columns}")
    report.put("r_max", res.C.r_max, f"largest nonzero d^r: r = {res.C.r_max}")
    _write(res, args.output, report, "resolution")
    return OK


def cmd_lift(args: argparse.Namespace, report: Report) -> int:
    f = _expect(load(args.f), ChainMap)
    gbar = _as_mc_map(load(args.g))
    if not check_chain_map(f) or not check_mc_map(gbar):
        raise SchemaError("inputs are not maps")
    if not is_quasi_iso(f):
        report.put("lifted", False, "f is not a quasi-isomorphism")
        return FALSE
    g, s = lift_through_quasi_iso(f, gbar, check=False)
    if not (check_mc_map(g) and check_mc_homotopy(s)):
        raise InvariantBreach("lift failed its own verification")
    report.put("lifted", True, "lift found; witness f g - gbar = d s + s d verified")
    _write(g, args.output, report, "map")
    if args.witness:
        _write(s, args.witness, report, "witness")
    return OK


def cmd_homotopy(args: argparse.Namespace, report: Report) -> int:
    f = _as_mc_map(load(args.f))
    g = _as_mc_map(load(args.g))
    if f.source != g.source or f.target != g.target:
        raise SchemaError("maps have different source or target")
    s = find_homotopy(f, g)
    if s is None:
        report.put("homotopic", False, "no homotopy exists")
        return FALSE
    if not check_mc_homotopy(s):
        raise InvariantBreach("homotopy failed its own verification")
    report.put("homotopic", True, "homotopy found; witness verified")
    if args.output:
        _write(s, args.output, report, "homotopy")
    return OK


def cmd_induced(args: argparse.Namespace, report: Report) -> int:
    ra = _expect(load(args.res_a), HomologicalResolution)
    rb = _expect(load(args.res_b), HomologicalResolution)
    f = _expect(load(args.map), ChainMap)
    for res in (ra, rb):
        if validate_resolution(res):
            raise SchemaError("input resolution does not validate")
    if not check_chain_map(f):
        raise SchemaError("input map is not a chain map")
    g, w = induced_resolution_map(ra, rb, f)
    if not (check_mc_map(g) and check_mc_homotopy(w)):
        raise InvariantBreach("induced map failed its own verification")
    report.put("induced", True, "induced map found; witness phi' g ~ f phi verified")
    _write(g, args.output, report, "map")
    if args.witness:
        _write(w, args.witness, report, "witness")
    return OK


def _cyclic(k: int) -> FgAbGroup:
    if k < 0:
        raise SchemaError("cyclic orders must be non-negative")
    return FgAbGroup.cyclic(k)


def cmd_tor(args: argparse.Namespace, report: Report) -> int:
    if args.i < 0:
        raise SchemaError("--i must be non-negative")
    G = tor(_cyclic(args.a), _cyclic(args.b), args.i)
    report.put("group", _group_info(G), str(G))
    return OK


def cmd_hypertor(args: argparse.Namespace, report: Report) -> int:
    A = _expect(load(args.complex), ChainComplex)
    M = _expect(load(args.group), FgAbGroup)
    if validate_complex(A):
        raise SchemaError("input is not a complex (d∘d != 0)")
    result = hyper_derived_tensor(A, M, _parse_pad(args.pad), seed=args.seed)
    groups = {}
    for n, G in sorted(result.homology.items()):
        if not G.is_trivial():
            groups[str(n)] = _group_info(G)
            report.say(f"H^{n} = {G}")
    if not groups:
        report.say("all homology vanishes")
    report.put("homology", groups)
    return OK


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homres", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.set_defaults(func=func)
        return sp

    sp = add("check", cmd_check, "validate any document")
    sp.add_argument("file")
    sp.add_argument("--homological", action="store_true")

    sp = add("homology", cmd_homology, "homology of a complex (or of a total complex)")
    sp.add_argument("file")
    sp.add_argument("--degree", type=int)

    sp = add("qiso", cmd_qiso, "is a map (or a resolution's phi) a quasi-isomorphism")
    sp.add_argument("file")

    sp = add("tot", cmd_tot, "total complex or total map")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")

    sp = add("resolve", cmd_resolve, "homological resolution of a complex")
    sp.add_argument("file")
    sp.add_argument("--pad", help="extra columns per row, e.g. 0=1,1=2")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--perturb", action="store_true",
                    help="randomize the lifts so higher differentials appear")
    sp.add_argument("-o", "--output")

    sp = add("lift", cmd_lift, "lift a map through a quasi-isomorphism")
    sp.add_argument("-f", required=True, help="quasi-isomorphism A -> B (chain_map)")
    sp.add_argument("-g", required=True, help="map C -> B (mc_map)")
    sp.add_argument("-o", "--output")
    sp.add_argument("--witness")

    sp = add("homotopy", cmd_homotopy, "decide whether two maps are homotopic")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("-o", "--output")

    sp = add("induced-map", cmd_induced, "map of resolutions over a chain map")
    sp.add_argument("res_a")
    sp.add_argument("res_b")
    sp.add_argument("map")
    sp.add_argument("-o", "--output")
    sp.add_argument("--witness")

    sp = add("tor", cmd_tor, "Tor_i(Z/a, Z/b); 0 stands for Z")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--i", type=int, required=True)

    sp = add("hypertor", cmd_hypertor, "homology of the derived tensor product")
    sp.add_argument("complex")
    sp.add_argument("group")
    sp.add_argument("--pad")
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return MALFORMED if e.code else OK
    report = Report(args.command)
    try:
        code = args.func(args, report)
    except (SchemaError, DimensionError, FileNotFoundError, IsADirectoryError) as e:
        report.put("error", str(e), f"malformed input: {e}")
        code = MALFORMED
    except ValueError as e:
        report.put("error", str(e), f"malformed input: {e}")
        code = MALFORMED
    except LiftingError as e:
        report.put("error", str(e), str(e))
        code = FALSE
    except InvariantBreach as e:
        report.put("error", str(e), f"internal invariant breach: {e}")
        code = BREACH
    return report.emit(args.json, code)


if __name__ == "__main__":
    sys.exit(main())

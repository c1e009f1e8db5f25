"""Command-line entry point and the JSON formats for quivers and representations.

Exit codes: 0 when every check passes, 1 on a failed check, 2 on a parse
or schema error, 3 on a precondition failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List, Optional

from .algebra import (
    Arrow,
    FinViolation,
    GroundAlgebra,
    PresentationError,
    QuiverPresentation,
    build_algebra,
    check_conditions,
    fixture,
    ground_dual_numbers,
    ground_field,
    radical_multiplicities,
    serre_pairing_check,
    za3_vertex,
)
from .exactla import FieldSpec, Matrix

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class SchemaError(ValueError):
    """Input does not match the expected JSON schema."""

    def __init__(self, message: str, field: str = "", line: Optional[int] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


class PreconditionError(ValueError):
    """A valid request whose mathematical preconditions do not hold."""


# JSON <-> objects

def _line_of(text: Optional[str], key: str) -> Optional[int]:
    if not text:
        return None
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return None


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, line=exc.lineno) from None


def _require(obj, key, kind, path, text):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError("missing", f"{path}{key}", _line_of(text, key))
    val = obj[key]
    if not isinstance(val, kind):
        raise SchemaError(f"expected {getattr(kind, '__name__', kind)}", f"{path}{key}", _line_of(text, key))
    return val


def quiver_from_json(data: Any, text: Optional[str] = None) -> QuiverPresentation:
    vertices = _require(data, "vertices", list, "", text)
    arrows_raw = _require(data, "arrows", list, "", text)
    rels_raw = data.get("relations", []) if isinstance(data, dict) else []
    if not isinstance(rels_raw, list):
        raise SchemaError("expected list", "relations", _line_of(text, "relations"))
    arrows = []
    for i, a in enumerate(arrows_raw):
        if not isinstance(a, dict) or not all(k in a for k in ("name", "from", "to")):
            raise SchemaError("each arrow needs name, from and to", f"arrows[{i}]", _line_of(text, "arrows"))
        arrows.append(Arrow(str(a["name"]), a["from"], a["to"]))
    rels = []
    for i, rel in enumerate(rels_raw):
        if not isinstance(rel, list) or not rel:
            raise SchemaError("a relation is a non-empty list of terms", f"relations[{i}]", _line_of(text, "relations"))
        terms = []
        for j, term in enumerate(rel):
            if not isinstance(term, dict) or "coef" not in term or "path" not in term:
                raise SchemaError("each term needs coef and path", f"relations[{i}][{j}]", _line_of(text, "coef"))
            if not isinstance(term["path"], list):
                raise SchemaError("path must be a list of arrow names", f"relations[{i}][{j}].path",
                                  _line_of(text, "path"))
            terms.append((str(term["coef"]), tuple(str(n) for n in term["path"])))
        rels.append(terms)
    try:
        return QuiverPresentation.make(vertices, arrows, rels)
    except PresentationError as exc:
        raise SchemaError(str(exc), "relations" if "relation" in str(exc) else "arrows") from None


def quiver_to_json(pres: QuiverPresentation, field: Optional[FieldSpec] = None) -> dict:
    F = field or FieldSpec.rationals()
    return {
        "vertices": list(pres.vertices),
        "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in pres.arrows],
        "relations": [[{"coef": F.text(F(c)), "path": list(p)} for c, p in rel] for rel in pres.relations],
    }


def ground_from_json(data: Any, F: FieldSpec) -> GroundAlgebra:
    if data is None or data == "k":
        return ground_field(F)
    if data == "dual":
        return ground_dual_numbers(F)
    if isinstance(data, dict):
        try:
            return GroundAlgebra(F, data["names"], data["products"], data["unit"], data.get("radical", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"invalid ground algebra: {exc}", "ground") from None
    raise SchemaError("expected 'k', 'dual' or a structure-constant object", "ground")


def ground_to_json(R: GroundAlgebra) -> Any:
    F = R.field
    if R == ground_field(F):
        return "k"
    if R == ground_dual_numbers(F):
        return "dual"
    return {"names": R.names,
            "products": [[[F.text(x) for x in R.products[i][j]] for j in range(R.dim)] for i in range(R.dim)],
            "unit": [F.text(x) for x in R.unit],
            "radical": [[F.text(x) for x in R.radical.column(c)] for c in range(R.radical.cols)]}


def _grid(m: Matrix) -> List[List[str]]:
    return [[m.field.text(x) for x in row] for row in m.data]


def representation_to_json(X) -> dict:
    alg, R = X.alg, X.ground
    return {
        "field": str(X.field),
        "ground": ground_to_json(R),
        "spaces": {str(v): d for v, d in zip(alg.vertices, X.dims)},
        "arrow_maps": {name: _grid(X.arrows[a]) for a, name in enumerate(alg.arrow_names)},
        "ground_action": {str(v): {R.names[i]: _grid(X.action[k][i]) for i in range(R.dim)}
                          for k, v in enumerate(alg.vertices)},
    }


def _parse_grid(grid, rows, cols, F, field, text):
    if not isinstance(grid, list) or len(grid) != rows:
        raise SchemaError(f"expected {rows} rows", field, _line_of(text, field.split(".")[-1]))
    out = []
    for r, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"row {r} must have {cols} entries", field, _line_of(text, field.split(".")[-1]))
        try:
            out.append([F(str(x)) for x in row])
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad scalar in row {r}: {exc}", field) from None
    return Matrix(F, rows, cols, out)


def representation_from_json(data: Any, alg, text: Optional[str] = None):
    from .modcat import Representation, RepresentationError
    F = alg.field
    if isinstance(data, dict) and "field" in data:
        try:
            fd = FieldSpec.parse(str(data["field"]))
        except ValueError as exc:
            raise SchemaError(str(exc), "field", _line_of(text, "field")) from None
        if fd != F:
            raise SchemaError(f"field {fd} does not match the algebra field {F}", "field", _line_of(text, "field"))
    R = ground_from_json(data.get("ground", "k") if isinstance(data, dict) else None, F)
    spaces = _require(data, "spaces", dict, "", text)
    byname = {str(v): i for i, v in enumerate(alg.vertices)}
    for key in spaces:
        if key not in byname:
            raise SchemaError("unknown vertex", f"spaces.{key}", _line_of(text, key))
    dims = []
    for v in alg.vertices:
        d = spaces.get(str(v), 0)
        if not isinstance(d, int) or d < 0:
            raise SchemaError("dimension must be a non-negative integer", f"spaces.{v}", _line_of(text, str(v)))
        dims.append(d)
    maps = data.get("arrow_maps", {})
    if not isinstance(maps, dict):
        raise SchemaError("expected object", "arrow_maps", _line_of(text, "arrow_maps"))
    for key in maps:
        if key not in alg.aindex:
            raise SchemaError("unknown arrow", f"arrow_maps.{key}", _line_of(text, key))
    arrows = []
    for a, name in enumerate(alg.arrow_names):
        s, t = dims[alg.arrow_source[a]], dims[alg.arrow_target[a]]
        grid = maps.get(name)
        if grid is None:
            if s and t:
                raise SchemaError("missing", f"arrow_maps.{name}", _line_of(text, "arrow_maps"))
            arrows.append(Matrix.zero(F, t, s))
        else:
            arrows.append(_parse_grid(grid, t, s, F, f"arrow_maps.{name}", text))
    act_raw = data.get("ground_action", {}) or {}
    action = []
    for k, v in enumerate(alg.vertices):
        per = act_raw.get(str(v))
        acts = []
        for i, bname in enumerate(R.names):
            if per is None or bname not in per:
                # the unit may be omitted, and so may anything on a zero space
                if i == _unit_index(R) or dims[k] == 0:
                    acts.append(Matrix.identity(F, dims[k]))
                    continue
                raise SchemaError("missing ground action", f"ground_action.{v}.{bname}", _line_of(text, "ground_action"))
            acts.append(_parse_grid(per[bname], dims[k], dims[k], F, f"ground_action.{v}.{bname}", text))
        action.append(acts)
    try:
        return Representation(alg, R, dims, arrows, action, check=True)
    except RepresentationError as exc:
        raise SchemaError(str(exc), "representation") from None


def _unit_index(R: GroundAlgebra) -> Optional[int]:
    nz = [i for i, x in enumerate(R.unit) if x]
    return nz[0] if len(nz) == 1 and R.unit[nz[0]] == R.field(1) else None


def parse_input(path: str, alg=None, field: Optional[FieldSpec] = None):
    """Read a quiver or representation file; a representation needs ``alg``."""
    data, text = _load_json(path)
    if isinstance(data, dict) and "vertices" in data:
        return quiver_from_json(data, text)
    if isinstance(data, dict) and "spaces" in data:
        if alg is None:
            raise SchemaError("a representation needs an algebra (--fixture or --quiver)", "spaces")
        return representation_from_json(data, alg, text)
    raise SchemaError("neither a quiver nor a representation", "")


# output

def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "table":
        for key, val in _flatten(report):
            out.write(f"{key}\t{val}\n")
    else:
        out.write(json.dumps(report, sort_keys=True, indent=2, default=str))
        out.write("\n")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj, default=str)


# commands

def _field(args, default="q") -> FieldSpec:
    try:
        return FieldSpec.parse(args.field or default)
    except ValueError as exc:
        raise SchemaError(str(exc), "--field") from None


def _algebra(args):
    F = _field(args)
    if args.quiver:
        pres = parse_input(args.quiver)
        if not isinstance(pres, QuiverPresentation):
            raise SchemaError("--quiver file is not a quiver", "vertices")
        try:
            return build_algebra(pres, F)
        except FinViolation as exc:
            raise PreconditionError(str(exc)) from None
    if args.fixture:
        try:
            return fixture(args.fixture, F)
        except KeyError as exc:
            raise SchemaError(str(exc.args[0]), "--fixture") from None
    raise SchemaError("give --fixture or --quiver", "--fixture")


def _vertex(alg, text):
    for v in alg.vertices:
        if str(v) == str(text):
            return v
    raise PreconditionError(f"unknown vertex {text!r}")


def _ground(args, F):
    from .algebra import make_ground
    try:
        return make_ground(args.ground or "k", F)
    except (KeyError, ValueError) as exc:
        raise SchemaError(str(exc), "--ground") from None


def _module(args, alg):
    """``--rep`` file, else the simple at ``--vertex`` over ``--ground``."""
    from .modcat import s_functor, residue_module
    if args.rep:
        X = parse_input(args.rep, alg)
        if isinstance(X, QuiverPresentation):
            raise SchemaError("--rep file is a quiver", "spaces")
        return X
    if args.vertex is None:
        raise SchemaError("give --rep or --vertex", "--rep")
    R = _ground(args, alg.field)
    return s_functor(alg, _vertex(alg, args.vertex), residue_module(R))


def cmd_check(args) -> tuple:
    alg = _algebra(args)
    rep = check_conditions(alg)
    mult = radical_multiplicities(alg)
    out = {"algebra": {"dimension": alg.dimension, "vertices": [str(v) for v in alg.vertices],
                       "loewy_length": alg.loewy_length},
           "conditions": rep.as_dict(),
           "radical_multiplicities": {f"{p}->{q}": ns for (p, q), ns in sorted(mult.items(), key=lambda x: str(x[0]))},
           "serre_pairing": serre_pairing_check(alg, rep.nakayama) if rep.selfinj else None}
    if args.fixture and args.fixture.upper() == "Z6":
        interior = [za3_vertex(j, l) for j in (2, 3) for l in range(3)]
        irep = check_conditions(alg, interior)
        out["interior"] = {"vertices": interior, "conditions": irep.as_dict(),
                           "serre_pairing": serre_pairing_check(alg, irep.nakayama, [(p, q) for p in interior
                                                                                     for q in interior])
                           if irep.selfinj else None,
                           "caveat": "boundary vertices of a finite window are not self-injective"}
    return out, EXIT_OK


def cmd_resolve(args) -> tuple:
    from .homalg import is_exact_resolution, is_minimal_resolution, min_inj_resolution, min_proj_resolution
    alg = _algebra(args)
    X = _module(args, alg)
    res = min_proj_resolution(X, args.depth)
    terms = [{"heads": res.head_names(i), "dims": list(res.terms[i].dims)} for i in range(len(res.terms))]
    exact = is_exact_resolution(res)
    minimal = is_minimal_resolution(res)
    inj = min_inj_resolution(X, args.depth)
    out = {"module": {str(v): d for v, d in zip(alg.vertices, X.dims)},
           "projective": {"terms": terms, "syzygy_dims": [list(m.dims) for m in res.syzygies],
                          "finite": res.finite, "exact": exact, "minimal": minimal},
           "injective": {"term_dims": [list(t.dims) for t in inj.terms],
                         "cosyzygy_dims": [list(b.dims) for b in inj.cosyzygies], "finite": inj.finite}}
    return out, EXIT_OK if exact and minimal else EXIT_FAIL


def cmd_functor(args) -> tuple:
    from .homalg import c_functor, derived_c_dim, derived_k_dim, k_functor
    alg = _algebra(args)
    X = _module(args, alg)
    qs = [_vertex(alg, args.at)] if args.at is not None else list(alg.vertices)
    out = {}
    for q in qs:
        out[str(q)] = {"C": c_functor(q, X).dims[0], "K": k_functor(q, X).dims[0],
                       "L1C": derived_c_dim(1, q, X), "R1K": derived_k_dim(1, q, X)}
    return {"module": {str(v): d for v, d in zip(alg.vertices, X.dims)}, "values": out}, EXIT_OK


def cmd_classify(args) -> tuple:
    from .cotorsion import BUILTIN_PAIRS, builtin_pair, e_criteria, phi_membership, psi_membership, \
        trivial_class_membership, EngineDisagreement
    alg = _algebra(args)
    X = _module(args, alg)
    er = e_criteria(X)
    out = {"module": {str(v): d for v, d in zip(alg.vertices, X.dims)}, "E": er.as_dict(), "pairs": {}}
    if not er.agree:
        out["error"] = "the three ℰ criteria disagree"
        return out, EXIT_FAIL
    for name in BUILTIN_PAIRS:
        pair = builtin_pair(name, X.ground)
        phi = phi_membership(X, pair.A)
        psi = psi_membership(X, pair.B)
        w = trivial_class_membership(X, pair)
        out["pairs"][name] = {"in_phi": phi.in_phi, "in_psi": psi.in_psi, "in_E": er.verdict,
                              "in_W": w.verdict, "W_witness": w.witness,
                              "phi_failing_vertices": phi.failing, "psi_failing_vertices": psi.failing}
    return out, EXIT_OK


def cmd_tower(args) -> tuple:
    from .cotorsion import builtin_pair, sample_e
    from .modcat import regular_module, residue_module, simple
    from .tower import TowerInput, build_tower, seq_condition_witness, tower_report, verify_stage_lemmas
    from .suites import trial_rng
    alg = _algebra(args)
    R = _ground(args, alg.field)
    q = _vertex(alg, args.vertex if args.vertex is not None else alg.vertices[0])
    B0 = regular_module(R) if args.B == "R" else residue_module(R)
    inp = TowerInput(simple(alg, q), B0, args.depth)
    stages = build_tower(inp)
    rep = verify_stage_lemmas(stages, inp, q)
    out = {"vertex": str(q), "ground": args.ground or "k", "B0": args.B, "depth": args.depth,
           "stages": tower_report(stages), "checks": rep["checks"],
           "stabilization_index": rep["stabilization_index"], "passed": rep["passed"]}
    if args.pair:
        pair = builtin_pair(args.pair, R)
        rng = trial_rng(args.seed, "tower-cli")
        es = [sample_e(alg, R, rng) for _ in range(3)]
        w = seq_condition_witness(alg, q, B0, args.depth, pair.B, es)
        w["verdicts"].pop("T_report", None)
        out["seq_witness"] = w
        out["passed"] = out["passed"] and w["verdicts"]["passed"]
    return out, EXIT_OK if out["passed"] else EXIT_FAIL


def cmd_verify(args) -> tuple:
    from .suites import SuiteConfig, run_suite
    cfg = SuiteConfig(suite=args.suite, field=args.field or "fp:101", ground=args.ground or "k",
                      trials=args.trials, seed=args.seed, depth=args.depth, N=args.N, fixture=args.fixture,
                      max_dim=args.max_dim)
    _field(args, "fp:101")
    report = run_suite(cfg)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", help="C1, C3, C<N>, Z6, ZA3:<lo>:<hi> or A2")
    common.add_argument("--quiver", help="quiver JSON file")
    common.add_argument("--rep", help="representation JSON file")
    common.add_argument("--field", help="q or fp:<p>")
    common.add_argument("--ground", choices=["k", "dual"], help="ground algebra R")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--N", type=int, help="cycle length for lemma-8.1")
    common.add_argument("--vertex", help="vertex id (simple module, or the tower vertex)")
    common.add_argument("--max-dim", type=int, default=4, dest="max_dim")
    parser = argparse.ArgumentParser(prog="quiverhom", description="Homological algebra over quivers with relations.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="algebra conditions")
    sub.add_parser("resolve", parents=[common], help="minimal resolutions")
    fp = sub.add_parser("functor", parents=[common], help="C, K and derived values")
    fp.add_argument("--at", help="evaluate at this vertex only")
    sub.add_parser("classify", parents=[common], help="class verdicts for the built-in pairs")
    tp = sub.add_parser("tower", parents=[common], help="truncated tower with stage checks")
    tp.add_argument("--B", choices=["k", "R"], default="R", help="B0 = residue field or regular module")
    tp.add_argument("--pair", choices=["projective-all", "all-injective", "free-all"])
    vp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    vp.add_argument("suite", choices=SUITES)
    return parser


COMMANDS = {"check": cmd_check, "resolve": cmd_resolve, "functor": cmd_functor, "classify": cmd_classify,
            "tower": cmd_tower, "verify": cmd_verify}


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    from .modcat import RepresentationError
    from .tower import TowerError
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = COMMANDS[args.command](args)
    except SchemaError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (PreconditionError, TowerError, RepresentationError) as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    emit(report, args.format, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Input is one JSON document::

    {
      "algebra": {"name": "A2", "dim": 2, "names": ["x1", "x2"],
                  "brackets": [{"left": 2, "right": 1, "coeffs": {"1": "1"}}]},
      "representation": {"dim": 2, "matrices": [[["0", "1"], ["0", "0"]],
                                                [["1", "0"], ["0", "0"]]]},
      "adapted_basis": [["1", "0"], ["0", "1"]],
      "settings": {"backend": "exact", "tol": 1e-9}
    }

Indices are 1-based.  ``adapted_basis`` (optional) lists the new basis
vectors in old coordinates.  Characters given on the command line and all
reported points are coefficient vectors in the dual of the adapted basis.

Exit codes: 0 success or property holds, 1 property fails, 2 input error,
3 computation unsupported.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb

from . import errors as E
from .duality import dual_spectrum_check, working_problem
from .exterior import verify_identities
from .koszul import build_complex, homology_dims, rho_diagram_check
from .lie_algebra import (
    LieAlgebra,
    adapted_basis,
    adapted_from_user,
    derived_series,
    is_character,
    lower_central_series,
    trace_vector,
    validate,
)
from .linalg import DEFAULT_TOL, Matrix
from .representation import Representation, validate_rep
from .scalars import BACKENDS, EXACT, GaussianRational, format_scalar, parse_scalar, to_backend
from .spectra import (
    DELTA,
    FAMILIES,
    SpectralData,
    containment_check,
    projection_check,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3

INPUT_ERRORS = (E.ParseError, E.InvalidAlgebra, E.InvalidRepresentation, E.NotSolvable, E.NotNilpotent,
                E.NotACharacter, E.NotAnIdeal, E.BasisNotAdapted)
UNSUPPORTED = (E.IrrationalSpectrum, E.AdaptationFailed, E.NoCommonEigenvector, E.BackendMismatch, E.NotCommuting)
BROKEN = (E.EmptySpectrum, E.ChainConditionFailed, E.CandidateGridIncomplete)

COMMANDS = ("validate", "info", "spectrum", "slodkowski", "homology", "dual-check", "diagram-check",
            "projection-check", "containment-check")


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, INPUT_ERRORS):
        return EXIT_INPUT
    if isinstance(exc, UNSUPPORTED):
        return EXIT_UNSUPPORTED
    if isinstance(exc, BROKEN):
        return EXIT_FAIL
    if isinstance(exc, ValueError):
        return EXIT_INPUT
    return EXIT_FAIL


# ---------------------------------------------------------------- input

class InputDocument:
    def __init__(self, algebra, rep, adapted=None, name=None, backend=None, tol=None):
        self.algebra = algebra
        self.rep = rep
        self.adapted = adapted
        self.name = name
        self.backend = backend
        self.tol = tol


def _require(obj, key, field, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise E.ParseError(f"missing required key {key!r}", field=field)
    val = obj[key]
    if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise E.ParseError(f"expected {kind.__name__}, got {type(val).__name__}", field=f"{field}.{key}")
    return val


def _matrix(rows, size, field):
    if not isinstance(rows, list) or len(rows) != size:
        got = len(rows) if isinstance(rows, list) else type(rows).__name__
        raise E.ParseError(f"expected {size} rows, got {got}", field=field)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise E.ParseError(f"expected {size} entries", field=f"{field}[{i}]")
        out.append([parse_scalar(x, field=f"{field}[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(out, backend=EXACT, cols=size)


def parse_input(text: str) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise E.ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise E.ParseError("top level must be an object")

    alg = _require(doc, "algebra", "algebra", dict)
    n = _require(alg, "dim", "algebra", int)
    if n < 1:
        raise E.ParseError("dimension must be at least 1", field="algebra.dim")
    names = alg.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n
                              or not all(isinstance(s, str) for s in names)):
        raise E.ParseError(f"need {n} string names", field="algebra.names")
    brackets = {}
    for b, entry in enumerate(alg.get("brackets", [])):
        fld = f"algebra.brackets[{b}]"
        i = _require(entry, "left", fld, int)
        j = _require(entry, "right", fld, int)
        for key, v in (("left", i), ("right", j)):
            if not 1 <= v <= n:
                raise E.ParseError(f"index {v} out of range 1..{n}", field=f"{fld}.{key}")
        coeffs = _require(entry, "coeffs", fld, dict)
        vec = {}
        for h, x in coeffs.items():
            try:
                hh = int(h)
            except ValueError:
                raise E.ParseError(f"basis index {h!r} is not an integer", field=f"{fld}.coeffs") from None
            if not 1 <= hh <= n:
                raise E.ParseError(f"index {hh} out of range 1..{n}", field=f"{fld}.coeffs")
            vec[hh - 1] = parse_scalar(x, field=f"{fld}.coeffs.{h}")
        key = (i - 1, j - 1)
        if key in brackets:
            raise E.ParseError(f"bracket ({i}, {j}) given twice", field=fld)
        brackets[key] = vec
    try:
        L = LieAlgebra.from_brackets(n, brackets, names)
    except E.InvalidAlgebra as exc:
        raise E.ParseError(str(exc), field="algebra.brackets") from exc

    rep = _require(doc, "representation", "representation", dict)
    m = _require(rep, "dim", "representation", int)
    if m < 1:
        raise E.ParseError("dimension must be at least 1", field="representation.dim")
    mats = _require(rep, "matrices", "representation", list)
    if len(mats) != n:
        raise E.ParseError(f"expected {n} matrices, got {len(mats)}", field="representation.matrices")
    parsed = [_matrix(M, m, f"representation.matrices[{k}]") for k, M in enumerate(mats)]
    try:
        R = Representation(L, parsed)
    except E.InvalidRepresentation as exc:
        raise E.ParseError(str(exc), field="representation.matrices") from exc

    adapted = None
    if doc.get("adapted_basis") is not None:
        vecs = _matrix(doc["adapted_basis"], n, "adapted_basis")
        adapted = vecs.T   # columns are the new basis vectors

    settings = doc.get("settings", {}) or {}
    backend = settings.get("backend")
    if backend is not None and backend not in BACKENDS:
        raise E.ParseError(f"backend must be one of {BACKENDS}", field="settings.backend")
    tol = settings.get("tol")
    if tol is not None and (not isinstance(tol, (int, float)) or isinstance(tol, bool) or tol <= 0):
        raise E.ParseError("tol must be a positive number", field="settings.tol")
    return InputDocument(L, R, adapted, alg.get("name"), backend, tol)


def parse_character(text: str, n: int):
    parts = [p for p in text.split(",")] if text.strip() else []
    if len(parts) != n:
        raise E.ParseError(f"character needs {n} comma-separated scalars, got {len(parts)}", field="--character")
    return tuple(parse_scalar(p.strip(), field=f"--character[{k + 1}]") for k, p in enumerate(parts))


def parse_ideal(text: str, n: int):
    if not text.strip():
        return []
    idx = []
    for p in text.split(","):
        try:
            v = int(p)
        except ValueError:
            raise E.ParseError(f"ideal index {p!r} is not an integer", field="--ideal") from None
        if not 1 <= v <= n:
            raise E.ParseError(f"ideal index {v} out of range 1..{n}", field="--ideal")
        idx.append(v - 1)
    if len(set(idx)) != len(idx):
        raise E.ParseError("repeated ideal index", field="--ideal")
    return [[int(a == i) for a in range(n)] for i in sorted(idx)]


# ---------------------------------------------------------------- serialization

def fmt(x) -> str:
    if isinstance(x, GaussianRational):
        return format_scalar(x)
    z = complex(x)
    re = 0.0 if abs(z.real) < 1e-12 else z.real
    im = 0.0 if abs(z.imag) < 1e-12 else z.imag
    if not im:
        return f"{re:.12g}"
    tail = f"{abs(im):.12g}*i"
    if not re:
        return ("-" if im < 0 else "") + tail
    return f"{re:.12g}{'-' if im < 0 else '+'}{tail}"


def fmt_point(f):
    return [fmt(x) for x in f]


def _points(points, profiles=None):
    out = []
    for f in points:
        item = {"character": fmt_point(f)}
        if profiles is not None and f in profiles:
            item["homology"] = list(profiles[f].dims)
        out.append(item)
    return out


def _diagnostics(doc, ab):
    L = doc.algebra
    ds, solvable = derived_series(L)
    lc, nilpotent = lower_central_series(L)
    out = {
        "name": doc.name,
        "dim": L.dim,
        "rep_dim": doc.rep.dim,
        "solvable": solvable,
        "nilpotent": nilpotent,
        "derived_series_dims": list(ds.dims),
        "lower_central_series_dims": list(lc.dims),
    }
    if ab is not None:
        out["derived_dim"] = ab.derived_dim
        out["adapted_basis"] = [fmt_point(ab.B.column(j)) for j in range(L.dim)]
        out["trace_vector"] = fmt_point(trace_vector(ab.algebra))
    return out


def serialize(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"backend: {report['backend']}"]
    alg = report.get("algebra")
    if alg:
        lines.append(f"algebra: {alg.get('name') or '(unnamed)'}  dim L = {alg['dim']}  dim E = {alg['rep_dim']}")
        lines.append(f"  solvable: {alg['solvable']}  nilpotent: {alg['nilpotent']}")
        lines.append(f"  derived series dims: {alg['derived_series_dims']}")
        if "trace_vector" in alg:
            lines.append(f"  trace vector: ({', '.join(alg['trace_vector'])})")
            lines.append("  adapted basis: " + "; ".join("(" + ", ".join(v) + ")" for v in alg["adapted_basis"]))
    res = report.get("result", {})
    _render(res, lines, 0)
    lines.append(f"status: {report['status']}")
    return "\n".join(lines)


def _render(obj, lines, depth):
    pad = "  " * depth
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            _render(val, lines, depth + 1)
        elif isinstance(val, list) and val and isinstance(val[0], dict) and "character" in val[0]:
            lines.append(f"{pad}{key}:")
            for item in val:
                extra = f"  H_* dims {item['homology']}" if "homology" in item else ""
                lines.append(f"{pad}  ({', '.join(item['character'])}){extra}")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(pad + "  " + ", ".join(f"{k}={item[k]}" for k in sorted(item)))
        else:
            lines.append(f"{pad}{key}: {val}")


# ---------------------------------------------------------------- commands

def _ensure_valid(doc):
    v = validate(doc.algebra)
    if not v.ok:
        raise E.InvalidAlgebra(f"not a Lie algebra: antisymmetry {v.antisymmetry}, jacobi {v.jacobi}")
    r = validate_rep(doc.rep)
    if not r.ok:
        raise E.InvalidRepresentation(f"bracket compatibility fails at {r.violations}")


def _working(doc):
    _ensure_valid(doc)
    ab = adapted_from_user(doc.algebra, doc.adapted) if doc.adapted is not None else adapted_basis(doc.algebra)
    return working_problem(doc.algebra, doc.rep, ab)


def cmd_validate(doc, args, backend, tol):
    v = validate(doc.algebra)
    r = validate_rep(doc.rep)
    ok = v.ok and r.ok
    res = {
        "algebra_valid": v.ok,
        "antisymmetry_violations": [list(x) for x in v.antisymmetry],
        "jacobi_violations": [list(x) for x in v.jacobi],
        "representation_valid": r.ok,
        "representation_violations": [list(x) for x in r.violations],
    }
    return res, ok, None


def cmd_info(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    return {"chain_dims": [Rw.dim * comb(Lw.dim, p) for p in range(Lw.dim + 1)]}, True, ab


def cmd_spectrum(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    S = SpectralData(Lw, Rw, backend, tol).sp()
    return {"sp": _points(S.points, S.profiles), "candidates_examined": len(S.candidate_universe)}, True, ab


def cmd_slodkowski(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    if args.family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    if not 0 <= args.k <= Lw.dim:
        raise ValueError(f"level k={args.k} out of range 0..{Lw.dim}")
    S = SpectralData(Lw, Rw, backend, tol).slodkowski(args.family, args.k)
    return {
        "family": args.family,
        "k": args.k,
        "points": _points(S.points, S.profiles),
        "closed_range_clause": S.closed_range_clause,
    }, True, ab


def cmd_homology(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    if args.character is None:
        raise ValueError("homology needs --character")
    f = parse_character(args.character, Lw.dim)
    if not is_character(Lw, f):
        raise E.NotACharacter("character does not vanish on the derived algebra")
    C = build_complex(Lw, Rw, tuple(to_backend(x, backend) for x in f), backend, tol=tol)
    prof = homology_dims(C)
    return {
        "character": fmt_point(f),
        "differential_shapes": [list(s) for s in C.shapes()],
        "homology": list(prof.dims),
        "in_spectrum": prof.nonzero,
    }, True, ab


def cmd_dual_check(doc, args, backend, tol):
    ab, _, _ = _working(doc)
    rep = dual_spectrum_check(doc.algebra, doc.rep, ab, backend, tol)
    res = {
        "trace_vector": fmt_point(rep.trace_vector),
        "calibration_sign": rep.calibration_sign,
        "sp_primal": _points(rep.sp_primal.points, rep.sp_primal.profiles),
        "sp_dual": _points(rep.sp_dual.points, rep.sp_dual.profiles),
        "translation_verified": rep.translation_verified,
        "slodkowski_duality": [
            {"k": s.k, "delta_to_pi_swapped": s.first, "delta_to_pi_same_level": s.first_literal,
             "pi_to_delta": s.second}
            for s in rep.slodkowski
        ],
    }
    return res, rep.ok, ab


def cmd_diagram_check(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    if args.character is not None:
        chars = [parse_character(args.character, Lw.dim)]
    else:
        chars = list(SpectralData(Lw, Rw, EXACT, tol).candidates)
    failures, checked = [], 0
    for f in chars:
        if not is_character(Lw, f):
            raise E.NotACharacter("character does not vanish on the derived algebra")
        rep = rho_diagram_check(Lw, Rw, tuple(to_backend(x, backend) for x in f), backend)
        checked += rep.checked
        failures += [{"character": fmt_point(f), "degree": p} for _, p in rep.failures]
    ident_fail = []
    for i in range(Lw.dim):
        r = verify_identities(Lw, i)
        ident_fail += [{"generator": i + 1, "identity": lab, "degree": str(deg)} for lab, deg in r.failures]
    res = {
        "characters_checked": len(chars),
        "diagram_degrees_checked": checked,
        "diagram_failures": failures,
        "identity_failures": ident_fail,
    }
    return res, not failures and not ident_fail, ab


def cmd_projection_check(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    if args.ideal is None:
        raise ValueError("projection-check needs --ideal")
    basis = parse_ideal(args.ideal, Lw.dim)
    rep = projection_check(Lw, Rw, basis, backend, tol)
    res = {
        "ideal": [i + 1 for v in basis for i, x in enumerate(v) if x],
        "comparisons": len(rep.checked),
        "mismatches": [
            {"family": lab, "k": "-" if k is None else k, "projected": [fmt_point(f) for f in a],
             "ideal_spectrum": [fmt_point(f) for f in b]}
            for lab, k, a, b in rep.mismatches
        ],
    }
    return res, rep.ok, ab


def cmd_containment_check(doc, args, backend, tol):
    ab, Lw, Rw = _working(doc)
    rep = containment_check(Lw, Rw, backend, tol)
    res = {
        "memberships_checked": rep.checked,
        "failures": [{"character": fmt_point(f), "degree": p} for f, p in rep.failures],
    }
    return res, rep.ok, ab


HANDLERS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "spectrum": cmd_spectrum,
    "slodkowski": cmd_slodkowski,
    "homology": cmd_homology,
    "dual-check": cmd_dual_check,
    "diagram-check": cmd_diagram_check,
    "projection-check": cmd_projection_check,
    "containment-check": cmd_containment_check,
}


def build_parser():
    p = argparse.ArgumentParser(prog="liespectra", description="Joint spectra of solvable Lie algebras of matrices.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="input JSON document, or - for standard input")
    p.add_argument("--backend", choices=BACKENDS, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true", help="machine-readable JSON report")
    p.add_argument("--family", choices=FAMILIES, default=DELTA)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--character", default=None, help='comma-separated scalars, e.g. "0,1/2+i"')
    p.add_argument("--ideal", default=None, help='1-based basis indices, e.g. "1,2"')
    return p


def run(command, doc: InputDocument, args, backend=None, tol=None):
    """Execute one command; returns (report dict, exit code)."""
    backend = backend or doc.backend or EXACT
    tol = tol if tol is not None else (doc.tol if doc.tol is not None else DEFAULT_TOL)
    report = {"command": command, "backend": backend}
    start = time.perf_counter()
    try:
        if command == "slodkowski" and args.k is None:
            raise ValueError("slodkowski needs --k")
        res, ok, ab = HANDLERS[command](doc, args, backend, tol)
        report["result"] = res
        report["algebra"] = _diagnostics(doc, ab) if command != "validate" else _diagnostics(doc, None)
        code = EXIT_OK if ok else EXIT_FAIL
        report["status"] = "ok" if ok else "property fails"
    except (E.LieSpectraError, ValueError) as exc:
        code = exit_code_for(exc)
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        report["status"] = {EXIT_INPUT: "input error", EXIT_UNSUPPORTED: "unsupported", EXIT_FAIL: "failure"}[code]
    report["exit_code"] = code
    report["timing_seconds"] = round(time.perf_counter() - start, 6)
    return report, code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.tol is not None and args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = parse_input(text)
    except E.ParseError as exc:
        report = {"command": args.command, "backend": args.backend or EXACT, "status": "input error",
                  "error": {"type": "ParseError", "message": str(exc), "field": exc.field, "line": exc.line},
                  "exit_code": EXIT_INPUT}
        print(serialize(report) if args.json else f"input error: {exc}")
        return EXIT_INPUT
    report, code = run(args.command, doc, args, args.backend, args.tol)
    if args.json:
        print(serialize(report))
    elif "error" in report:
        print(f"{report['status']}: {report['error']['type']}: {report['error']['message']}")
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())

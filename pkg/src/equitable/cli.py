"""Command line front end.

    python3 -m equitable emit --family E --d 3
    python3 -m equitable verify --suite all --d 0..4
    python3 -m equitable recognize triple.json --b 1

Exit status: 0 pass, 1 verification failure, 2 usage, 3 parse or shape,
4 recognition, 5 resource guard.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from .errors import ParameterError, ParseError, RecognitionError, ResourceLimitError, ShapeError
from .exactla import ExactMatrix
from .matrixio import dumps_document, dumps_matrix, format_table, loads_triple, triple_to_document
from .modmodel import FreeScalars, basis_matrix, gram, make_spec
from .recognize import INDETERMINATE, Branch, ShapeTriple, irreducibility_certificate, recognize_triple
from .repkit import ALL_BASES, Axis, BasisId, Generator, SpaceId, build_canonical, family, rep
from .scalars import SYMBOLIC, Backend, format_scalar, parse_rational, parse_scalar
from .suites import SUITES, run_suites, suite_names
from .transit import rotator_matrix, transition

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_RECOGNITION, EXIT_RESOURCE = range(6)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    command: str
    ds: tuple[int, ...]
    backend: Backend = SYMBOLIC
    free: FreeScalars = field(default_factory=FreeScalars)
    fmt: str = "text"
    out: str | None = None


def parse_d(text: str) -> tuple[int, ...]:
    """``N`` or ``A..B`` (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"--d expects N or A..B, got {text!r}") from exc
    if lo < 0 or hi < lo:
        raise UsageError(f"--d range {text!r} must satisfy 0 <= A <= B")
    return tuple(range(lo, hi + 1))


# canonical family names as printed, plus the bare letters
_FAMILIES = {"Z": family("Z")}
for _b in ("K", "E", "N", "T", "P"):
    for _t in (False, True):
        for _i in (False, True):
            for _z in (False, True):
                _FAMILIES.setdefault(str(family(_b, _t, _i, _z)), family(_b, _t, _i, _z))
    _FAMILIES[_b] = family(_b)


def _space(text: str) -> SpaceId:
    for s in SpaceId:
        if text == s.value or text == s.name:
            return s
    raise UsageError(f"unknown space {text!r}; choose V or V*")


def _basis(text: str) -> BasisId:
    try:
        return BasisId.parse(text)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"unknown basis {text!r}; choose from {', '.join(map(str, ALL_BASES))}") from exc


def _generator(text: str) -> Generator:
    try:
        return Generator(text)
    except ValueError as exc:
        raise UsageError(f"unknown generator {text!r}; choose from {', '.join(g.value for g in Generator)}") from exc


def _split(text: str, n: int, what: str) -> list[str]:
    parts = text.split(":")
    if len(parts) != n:
        raise UsageError(f"{what} expects {n} colon-separated fields, got {text!r}")
    return parts


def _hint(text: str | None):
    if text is None:
        return None
    s = parse_scalar(text)
    c = s.constant_value()
    return s if c is None else c


def _single_d(cfg: CliConfig) -> int:
    if len(cfg.ds) != 1:
        raise UsageError("this command needs a single --d value")
    return cfg.ds[0]


def _render_matrix(m: ExactMatrix, cfg: CliConfig) -> str:
    return format_table(m) if cfg.fmt == "table" else dumps_matrix(m)


def _emit_object(args, cfg: CliConfig) -> ExactMatrix:
    d = _single_d(cfg)
    chosen = [k for k in ("family", "rep", "basis", "eta", "gram", "transition", "rotator") if getattr(args, k)]
    if len(chosen) != 1:
        raise UsageError("emit needs exactly one of --family, --rep, --basis, --eta, --gram, --transition, --rotator")
    what = chosen[0]
    val = getattr(args, what)
    q = cfg.backend.q
    if what == "family":
        if val not in _FAMILIES:
            raise UsageError(f"unknown family {val!r}; choose from {', '.join(sorted(_FAMILIES))}")
        return build_canonical(_FAMILIES[val], d, q)
    if what == "rep":
        s, b, g = _split(val, 3, "--rep")
        return rep(_space(s), _basis(b), _generator(g), d, q)
    if what == "rotator":
        s, b = _split(val, 2, "--rotator")
        return rotator_matrix(d, _space(s), _basis(b), q)
    spec = make_spec(d, cfg.backend, cfg.free)
    if what == "basis":
        s, b = _split(val, 2, "--basis")
        return basis_matrix(spec, _space(s), _basis(b))
    if what == "eta":
        s, a = _split(val, 2, "--eta")
        try:
            axis = Axis(a)
        except ValueError as exc:
            raise UsageError(f"unknown axis {a!r}; choose x, y or z") from exc
        return ExactMatrix([[c] for c in spec.eta_coords(_space(s), axis)], 1)
    if what == "gram":
        bv, bd = _split(val, 2, "--gram")
        return gram(spec, _basis(bv), _basis(bd))
    s, src, dst = _split(val, 3, "--transition")
    return transition(spec, _space(s), _basis(src), _basis(dst))


def cmd_emit(args, cfg: CliConfig) -> tuple[int, str]:
    return EXIT_OK, _render_matrix(_emit_object(args, cfg), cfg)


def cmd_transition(args, cfg: CliConfig) -> tuple[int, str]:
    spec = make_spec(_single_d(cfg), cfg.backend, cfg.free)
    m = transition(spec, _space(args.space), _basis(args.src), _basis(args.dst))
    return EXIT_OK, _render_matrix(m, cfg)


def cmd_gram(args, cfg: CliConfig) -> tuple[int, str]:
    spec = make_spec(_single_d(cfg), cfg.backend, cfg.free)
    return EXIT_OK, _render_matrix(gram(spec, _basis(args.v), _basis(args.dual)), cfg)


def cmd_verify(args, cfg: CliConfig) -> tuple[int, str]:
    try:
        names = suite_names(args.suite)
    except ParameterError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"backend: {cfg.backend}", f"scalars: " + ", ".join(
        f"{k}*={format_scalar(v)}" for k, v in zip(("xy", "yz", "zx", "yx", "zy"), cfg.free.as_tuple()))]
    total_fail = 0
    for name in names:
        for d in cfg.ds:
            try:
                (_, _, report), = run_suites([name], [d], cfg.backend, cfg.free)
            except ResourceLimitError as exc:
                raise ResourceLimitError(f"suite {name} at d={d}: {exc}") from exc
            fails = report.failures()
            total_fail += len(fails)
            status = "PASS" if not fails else "FAIL"
            lines.append(f"[{status}] {name} d={d}: {len(report.checks) - len(fails)}/{len(report.checks)} checks")
            shown = report.checks if args.verbose else fails
            for c in shown:
                mark = "ok  " if c.passed else "FAIL"
                lines.append(f"    {mark} {c.name}" + (f" ({c.detail})" if c.detail and not c.passed else ""))
    lines.append("all checks passed" if not total_fail else f"{total_fail} checks failed")
    return (EXIT_OK if not total_fail else EXIT_FAIL), "\n".join(lines)


def _scalar_text(x) -> str:
    return str(x) if x is INDETERMINATE else format_scalar(x)


def cmd_recognize(args, cfg: CliConfig) -> tuple[int, str]:
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc
    x, y, z = loads_triple(text)
    triple = ShapeTriple(x, y, z)
    result = recognize_triple(triple, q_hint=_hint(args.q), b_hint=_hint(args.b))
    doc = {
        "branch": result.branch.value,
        "b": _scalar_text(result.b),
        "q": None if result.q is None else format_scalar(result.q),
        "certificate": [{"check": c.name, "passed": c.passed} for c in result.certificate.checks],
    }
    if result.normalized_triple is not None:
        doc["affine"] = {k: [format_scalar(a1), format_scalar(a2)] for k, (a1, a2) in result.affine.items()}
        doc["normalized"] = triple_to_document(*result.normalized_triple)
        doc["irreducible"] = irreducibility_certificate(result.normalized_triple)
    status = EXIT_OK if result.branch is not Branch.underdetermined else EXIT_RECOGNITION
    if cfg.fmt == "table":
        lines = [f"branch: {doc['branch']}", f"b: {doc['b']}", f"q: {doc['q']}"]
        if result.branch is Branch.underdetermined:
            lines.append("the diagonals are too short to fix b; pass --b or --q")
        else:
            lines.append(f"irreducible: {doc['irreducible']}")
            for name, m in zip("XYZ", result.normalized_triple):
                lines += [f"{name}:", format_table(m)]
        lines += [f"{'ok  ' if c.passed else 'FAIL'} {c.name}" for c in result.certificate.checks]
        return status, "\n".join(lines)
    return status, dumps_document(doc)


def _common(p: argparse.ArgumentParser, d_default: str | None = None):
    g = p.add_argument_group("global options")
    g.add_argument("--d", default=d_default, help="dimension parameter: N or A..B")
    g.add_argument("--backend", choices=("symbolic", "rational"), default="symbolic")
    g.add_argument("--q", help="rational q0 for the rational backend; q hint for recognize")
    g.add_argument("--scalars", default="", help="free pairings, e.g. xy*=2,yz*=3,zx*=5,yx*=7,zy*=1/2")
    g.add_argument("--format", dest="fmt", choices=("text", "table"), default="text")
    g.add_argument("--out", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equitable", description="Exact U_q(sl2) equitable-presentation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("emit", help="print a canonical matrix, representing matrix, basis, Gram or transition")
    _common(p, "3")
    p.add_argument("--family", help="K, Z, E, N, T, P or a variant such as ZE_{q^-1}^tZ")
    p.add_argument("--rep", help="SPACE:BASIS:GENERATOR, e.g. V:[y]row:x")
    p.add_argument("--basis", help="SPACE:BASIS; columns are the basis vectors in reference coordinates")
    p.add_argument("--eta", help="SPACE:AXIS")
    p.add_argument("--gram", help="BASIS_OF_V:BASIS_OF_V*")
    p.add_argument("--transition", help="SPACE:FROM:TO")
    p.add_argument("--rotator", help="SPACE:BASIS")

    p = sub.add_parser("verify", help="run verification suites over a range of d")
    _common(p, "0..4")
    p.add_argument("--suite", default="all", help="all or a comma list of: " + ", ".join(SUITES))
    p.add_argument("--verbose", action="store_true", help="list passing checks too")

    p = sub.add_parser("transition", help="transition matrix between two bases of one space")
    _common(p, "3")
    p.add_argument("--space", default="V")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)

    p = sub.add_parser("gram", help="Gram matrix of a basis of V against a basis of V*")
    _common(p, "3")
    p.add_argument("--v", required=True, help="basis of V")
    p.add_argument("--dual", required=True, help="basis of V*")

    p = sub.add_parser("recognize", help="recognize a diagonal/lower/upper bidiagonal matrix triple")
    _common(p)
    p.add_argument("input", help="JSON file with matrix documents under X, Y, Z")
    p.add_argument("--b", help="declared b (needed when d <= 1)")
    return parser


_COMMANDS = {
    "emit": cmd_emit,
    "verify": cmd_verify,
    "transition": cmd_transition,
    "gram": cmd_gram,
    "recognize": cmd_recognize,
}


def _config(args) -> CliConfig:
    ds = parse_d(args.d) if args.d is not None else (0,)
    if args.backend == "rational":
        if args.q is None:
            raise UsageError("--backend rational needs --q")
        try:
            backend = Backend(parse_rational(args.q))
        except ParseError as exc:
            raise UsageError(str(exc)) from exc
    else:
        backend = SYMBOLIC
    try:
        free = FreeScalars.parse(args.scalars, backend)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc
    if any(not v for v in free.as_tuple()):
        raise UsageError("free pairing scalars must be nonzero")
    return CliConfig(args.command, ds, backend, free, args.fmt, args.out)


def run(argv=None) -> tuple[int, str, str]:
    """Returns (status, stdout text, stderr text) without touching the real streams."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_USAGE if exc.code else EXIT_OK), "", ""
    try:
        cfg = _config(args)
        status, text = _COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        return EXIT_USAGE, "", f"usage error: {exc}"
    except ParameterError as exc:
        return EXIT_USAGE, "", f"parameter error: {exc}"
    except (ParseError, ShapeError) as exc:
        return EXIT_PARSE, "", f"{type(exc).__name__}: {exc}"
    except RecognitionError as exc:
        return EXIT_RECOGNITION, "", f"{type(exc).__name__}: {exc}"
    except ResourceLimitError as exc:
        return EXIT_RESOURCE, "", f"resource limit: {exc}"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        return status, "", ""
    return status, text, ""


def main(argv=None) -> int:
    status, out, err = run(argv)
    if out:
        print(out)
    if err:
        print(err, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

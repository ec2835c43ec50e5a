"""Command-line front end (``z3super``).

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import calculus as C
from . import covariance as V
from . import hopf as H
from .algebra import AlgebraError, Poly, UnknownGeneratorError
from .expr import ParseError, evaluate, parse, render_poly, render_scalar
from .manifest import ManifestError, export_preset, load_manifest
from .presets import PRESET_NAMES, DESCRIPTIONS, get_preset
from .suites import SUITES, run_suite
from .tensor import TensorPoly

# preference order when --preset is not given
AUTO_ORDER = (
    "superspace",
    "extended",
    "dual-superspace",
    "differential-algebra",
    "weyl",
    "weyl-differential",
    "forms",
    "lie",
    "dual-hopf",
    "glq-free",
)


class UsageError(Exception):
    pass


def _symbols(v) -> set:
    if isinstance(v, TensorPoly):
        return {g for key in v.terms for w in key for g in w}
    return v.symbols()


def _auto_preset(v):
    syms = _symbols(v)
    for name in AUTO_ORDER:
        if syms <= set(get_preset(name).generators):
            return get_preset(name)
    raise UsageError(f"no preset contains all of {', '.join(sorted(syms))}; use --preset")


def _read(text: str, preset=None, tensor: bool = False):
    node = parse(text, tensor=tensor)
    if preset is None:
        v = evaluate(node)
        return v, _auto_preset(v)
    R = get_preset(preset) if isinstance(preset, str) else preset
    return evaluate(node, R.generators, R.name), R


def _poly(text: str, preset) -> Poly:
    v, _ = _read(text, preset)
    if isinstance(v, TensorPoly):
        raise UsageError("expected a polynomial, got a tensor")
    return v


# -- subcommands ---------------------------------------------------------------------


def cmd_normalize(a) -> int:
    v, R = _read(a.expr, a.preset, tensor="(x)" in a.expr)
    if isinstance(v, TensorPoly):
        v = v.with_slots((R,) * v.arity).normalize()
        print(v.render())
    else:
        print(render_poly(R.normalize(v), R))
    return 0


def cmd_grade(a) -> int:
    v, R = _read(a.expr, a.preset)
    print(R.grade_of(R.normalize(v)))
    return 0


def cmd_d(a) -> int:
    R = get_preset(C.DIFF)
    p = _poly(a.expr, R)
    if a.times < 0:
        raise UsageError("--times must be non-negative")
    print(render_poly(C.apply_d_times(p, a.times), R))
    return 0


def cmd_partials(a) -> int:
    R = get_preset(C.DIFF)
    p = _poly(a.expr, R)
    for name, v in zip(("px", "py", "pth"), C.partials(p)):
        print(f"{name}: {render_poly(v, R)}")
    return 0


def cmd_coproduct(a) -> int:
    p = _poly(a.expr, H.A_NAME)
    print(H.coproduct(p).normalize().render())
    return 0


def cmd_antipode(a) -> int:
    A = get_preset(H.A_NAME)
    print(render_poly(H.antipode(_poly(a.expr, A)), A))
    return 0


def cmd_counit(a) -> int:
    print(render_scalar(H.counit(_poly(a.expr, H.A_NAME))))
    return 0


def cmd_pair(a) -> int:
    u = _poly(a.uexpr, H.U_NAME)
    f = _poly(a.aexpr, H.A_NAME)
    print(render_scalar(H.pair(u, f)))
    return 0


def cmd_check(a) -> int:
    if a.suite != "all" and a.suite not in SUITES:
        raise UsageError(f"unknown suite {a.suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    t0 = time.perf_counter()
    rep = run_suite(a.suite, a.max_degree)
    out = rep.machine() if a.format == "machine" else rep.human()
    sys.stdout.write(out)
    print(f"elapsed {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return 0 if rep.ok else 1


def cmd_preset(a) -> int:
    if a.action == "list":
        for name in PRESET_NAMES:
            print(f"{name}: {DESCRIPTIONS.get(name, '')}")
        return 0
    if a.action == "export":
        if not a.args or len(a.args) != 2:
            raise UsageError("usage: preset export PRESET FILE")
        name, path = a.args
        if name not in PRESET_NAMES:
            raise UsageError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
        export_preset(get_preset(name), path)
        print(f"wrote {name} to {path}")
        return 0
    if not a.args or len(a.args) != 1:
        raise UsageError("usage: preset load FILE")
    rs = load_manifest(a.args[0])
    from .algebra import check_local_confluence

    bad = check_local_confluence(rs, max_degree=6, random_words=200)
    print(f"{rs.name}: {len(rs.generators)} generators, {len(rs.rules)} rules, "
          f"{len(bad)} confluence mismatches")
    return 0 if not bad else 1


def cmd_rmatrix(a) -> int:
    if a.load:
        with open(a.load) as fh:
            M = V.import_matrix(fh.read())
        if len(M) != 9 or any(len(r) != 9 for r in M):
            raise UsageError("R-matrix must be 9x9")
    else:
        M = V.build_R()
    if a.export:
        with open(a.export, "w") as fh:
            fh.write(V.export_matrix(M))
    else:
        sys.stdout.write(V.export_matrix(M))
    if a.braid:
        B = V.check_braid(M)
        nz = [(i, j) for i, row in enumerate(B) for j, v in enumerate(row) if v]
        print(f"braid residual: {'zero' if not nz else f'{len(nz)} nonzero entries'}")
        for i, j in nz:
            print(f"  [{i},{j}] = {render_scalar(B[i][j])}")
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="z3super", description="Z3-graded quantum superspace engine")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", help="normal form of an expression")
    s.add_argument("--preset", choices=PRESET_NAMES)
    s.add_argument("expr")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("grade", help="Z3 grade of a homogeneous expression")
    s.add_argument("--preset", choices=PRESET_NAMES)
    s.add_argument("expr")
    s.set_defaults(fn=cmd_grade)

    s = sub.add_parser("d", help="apply the exterior differential")
    s.add_argument("--times", type=int, default=1)
    s.add_argument("expr")
    s.set_defaults(fn=cmd_d)

    for name, fn, helptext in (("partials", cmd_partials, "partial derivatives read off from d"),
                               ("coproduct", cmd_coproduct, "coproduct in the Hopf algebra"),
                               ("antipode", cmd_antipode, "antipode in the Hopf algebra"),
                               ("counit", cmd_counit, "counit in the Hopf algebra")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("expr")
        s.set_defaults(fn=fn)

    s = sub.add_parser("pair", help="pairing <u, f> of U_q with the Hopf algebra")
    s.add_argument("uexpr")
    s.add_argument("aexpr")
    s.set_defaults(fn=cmd_pair)

    s = sub.add_parser("check", help="run a verification suite")
    s.add_argument("suite", help=", ".join(list(SUITES) + ["all"]))
    s.add_argument("--max-degree", type=int, default=None,
                   help="bound for basis-driven suites (default 4; d3 default 6)")
    s.add_argument("--format", choices=("human", "machine"), default="human")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("preset", help="list, export or load ruleset manifests")
    s.add_argument("action", choices=("list", "export", "load"))
    s.add_argument("args", nargs="*")
    s.set_defaults(fn=cmd_preset)

    s = sub.add_parser("rmatrix", help="print, export or import the R-hat matrix")
    s.add_argument("--export", metavar="FILE")
    s.add_argument("--load", metavar="FILE")
    s.add_argument("--braid", action="store_true", help="also report the braid residual")
    s.set_defaults(fn=cmd_rmatrix)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return a.fn(a)
    except (ParseError, UnknownGeneratorError, ManifestError, UsageError, KeyError,
            AlgebraError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: every subcommand prints JSON (or DOT with ``--dot``)."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from ._backend import BACKEND
from .contextuality import (
    Configuration,
    classical_game_value,
    context_sign_oracle,
    enumerate_grids,
    enumerate_pentagrams,
    is_magic,
    mermin_pentagram_canonical,
    mermin_square_canonical,
    pentagram_configuration,
)
from .pauli_core import PauliParseError
from .polar_space import (
    MAX_QUBITS,
    all_hyperplanes,
    build_polar_space,
    gaussian_binomial_isotropic,
    hyperplane_census,
    incidence_dot,
    mask_of,
    space_to_json,
    veldkamp_census,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK = 0, 1, 2


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def _space(n: int):
    if not 1 <= n <= MAX_QUBITS:
        raise UsageError(f"-n must be between 1 and {MAX_QUBITS}")
    return build_polar_space(n)


# space

def cmd_space_build(args, out):
    sp = _space(args.n)
    if args.dot:
        out.write(incidence_dot(sp, f"W({2 * args.n - 1},2)"))
        return
    census = sp.census()
    _check(census["points"] == 4 ** args.n - 1, "point count")
    _check(census["lines"] == gaussian_binomial_isotropic(args.n, 2), "line count")
    if 3 <= args.n <= 4:
        _check(census["planes"] == gaussian_binomial_isotropic(args.n, 3), "plane count")
    if args.full:
        result = space_to_json(sp, planes=3 <= args.n <= 4)
        result["census"] = census
        _emit(result, out)
    else:
        _emit(census, out)


def cmd_space_hyperplanes(args, out):
    sp = _space(args.n)
    hs = all_hyperplanes(sp)
    if args.census:
        census = hyperplane_census(sp, hs)
        if args.verify:
            found = set(sp.enumerate_hyperplanes())
            _check(found == {h.mask for h in hs}, "hyperplane search disagrees with the perp/quadric list")
        _emit(census, out)
    else:
        _emit([h.to_json() | {"name": h.name} for h in hs], out)


def cmd_space_veldkamp(args, out):
    if args.n > 3:
        raise UsageError("Veldkamp lines are listed for n <= 3")
    sp = _space(args.n)
    census = veldkamp_census(sp)
    census["total"] = sum(census.values())
    if args.n == 2:
        _check(census.get("total") == 155, "doily Veldkamp line total")
    _emit(census, out)


# magic

def _verify_signs(config: Configuration) -> None:
    for ctx, s in zip(config.contexts, config.signs):
        _check(context_sign_oracle([config.operators[i] for i in ctx]) == s, f"context {ctx} sign mismatch")


def _config_report(config: Configuration, verify: bool) -> dict:
    if verify:
        _verify_signs(config)
    out = config.to_json()
    out["magic"] = is_magic(config)
    out["negative_contexts"] = [[str(config.operators[i]) for i in c] for c in config.negative_contexts]
    out["verified"] = verify
    return out


def cmd_magic_shape(args, out):
    config = mermin_square_canonical() if args.shape == "square" else mermin_pentagram_canonical()
    if args.dot:
        out.write(config.to_dot(args.shape))
        return
    report = _config_report(config, args.verify)
    _check(report["magic"], "canonical configuration is not magic")
    _emit(report, out)


def cmd_magic_grids(args, out):
    grids = enumerate_grids(build_polar_space(2))
    if args.verify:
        for g in grids:
            _verify_signs(g)
    flags = [is_magic(g) for g in grids]
    _check(all(flags), "non-magic grid")
    _emit({"count": len(grids), "all_magic": all(flags),
           "grids": [g.to_json() for g in grids] if args.full else None}, out)


def cmd_magic_pentagrams(args, out):
    sp = build_polar_space(3)
    pgs = enumerate_pentagrams(sp, threads=args.threads)
    if args.within:
        data = _read_json(args.within)
        labels = data.get("points", data) if isinstance(data, dict) else data
        try:
            allowed = mask_of(sp.point_of(s) for s in labels)
        except (PauliParseError, ValueError, TypeError) as exc:
            raise UsageError(f"bad point list in {args.within}: {exc}") from None
        pgs = [pg for pg in pgs if all(m & ~allowed == 0 for m in pg)]
    configs = [pentagram_configuration(sp, pg) for pg in pgs]
    if args.verify:
        for c in configs:
            _verify_signs(c)
    all_magic = all(is_magic(c) for c in configs)
    _check(all_magic, "non-magic pentagram")
    if not args.within:
        _check(len(pgs) == 12096, f"pentagram count {len(pgs)} != 12096")
    _emit({"count": len(pgs), "all_magic": all_magic}, out)


def cmd_magic_game(args, out):
    try:
        config = Configuration.from_json(_read_json(args.file))
        value = classical_game_value(config)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed configuration: {exc}") from None
    _emit({"value": str(value), "float": float(value), "perfect": value == Fraction(1)}, out)


# magicline

def cmd_magicline(args, out):
    from . import lie_weights as lw

    sp = build_polar_space(3)
    line = lw.magic_veldkamp_line(sp)
    if args.what == "show":
        inner, outer = lw.partition_35(sp)
        if args.dot:
            out.write(incidence_dot(sp, "core", line.core))
            return
        core_ops = {sp.point_of(s) for s in lw.CORE_OPERATORS}
        result = line.to_json()
        result["sizes"] = {"perp": len(line.perp), "elliptic": len(line.elliptic), "hyperbolic": len(line.hyperbolic)}
        result["core_matches_list"] = set(line.core_points) == core_ops
        result["core_is_doily"] = lw.core_is_doily(sp, line.core)
        result["partition_35"] = [bin(inner).count("1"), bin(outer).count("1")]
        _check(result["core_matches_list"] and result["core_is_doily"], "core check")
        _emit(result, out)
    elif args.what == "weights":
        roots = lw.default_roots(sp)
        diagram = lw.weight_orbit(roots, sp.point_of("ZIZ"), sp.points_mask)
        if args.dot:
            out.write(diagram.to_dot(3))
            return
        _check(mask_of(diagram.nodes) == line.core, "weight orbit differs from the core")
        _emit({"roots": [sp.label(r) for r in roots], "highest": "ZIZ",
               "nodes": [sp.label(p) for p in diagram.nodes], "levels": list(diagram.levels()),
               "edges": len(diagram.edges)}, out)
    else:
        labeling = lw.find_duad_labeling(sp, line.core)
        try:
            c = lw.trace_cube_pfaffian_check(labeling, samples=args.samples, seed=args.seed)
        except AssertionError as exc:
            raise CheckFailed(str(exc)) from None
        _emit({"constant": c, "samples": args.samples, "seed": args.seed, "labeling": labeling.to_json()}, out)


# slocc

def _load_state(path: str):
    from .entanglement import StateTensor

    try:
        return StateTensor.from_json(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed state file {path}: {exc}") from None


def cmd_slocc_classify(args, out):
    from .entanglement import classify_3qubit_report, flattening_ranks, two_qubit_separable

    t = _load_state(args.file)
    if t.format == (2, 2, 2):
        _emit(classify_3qubit_report(t), out)
    elif t.format == (2, 2):
        _emit({"class": "SEP" if two_qubit_separable(t) else "ENTANGLED"}, out)
    else:
        _emit({"format": list(t.format), "flattening_ranks": list(flattening_ranks(t))}, out)


def cmd_slocc_secant(args, out):
    from .entanglement import secant_dimension_estimate, zak_dichotomy

    try:
        fmt = tuple(int(d) for d in args.format.split(","))
        dim = secant_dimension_estimate(fmt, args.k, seed=args.seed, symmetric=args.symmetric)
        zak = zak_dichotomy(fmt, symmetric=args.symmetric, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit({"format": list(fmt), "k": args.k, "symmetric": args.symmetric,
           "affine_dimension": dim, "zak": zak}, out)


def cmd_slocc_singularity(args, out):
    from .entanglement import (
        NonIsolatedError,
        NotCriticalError,
        hyperplane_section_poly,
        singular_point_analysis,
        singularity_type,
    )

    t = _load_state(args.file)
    try:
        chart = [int(c) for c in args.chart.split(",")]
        germ = hyperplane_section_poly(t).localize(chart)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = {"polynomial": str(germ), "variables": list(germ.variables)}
    try:
        analysis = singular_point_analysis(germ)
    except NotCriticalError as exc:
        result.update({"is_singular": False, "reason": str(exc)})
    except NonIsolatedError as exc:
        result.update({"is_singular": True, "type": "NON_ISOLATED", "reason": str(exc)})
    else:
        result.update(analysis.to_json())
        result["type"] = singularity_type(analysis)
    _emit(result, out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--dot", action="store_true", help="emit DOT instead of JSON where a graph exists")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: $PAULI_POLAR_THREADS or 1)")

    p = _Parser(prog="pauli-polar", description="Pauli groups, symplectic polar spaces and contextuality.",
                parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    space = top.add_parser("space", help="polar space W(2n-1, 2)").add_subparsers(dest="cmd", required=True)
    s = space.add_parser("build", parents=[common])
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--full", action="store_true", help="list points, lines and planes")
    s.set_defaults(func=cmd_space_build)
    s = space.add_parser("hyperplanes", parents=[common])
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--census", action="store_true")
    s.add_argument("--verify", action="store_true", help="cross-check against the hyperplane search")
    s.set_defaults(func=cmd_space_hyperplanes)
    s = space.add_parser("veldkamp", parents=[common])
    s.add_argument("-n", type=int, default=2)
    s.set_defaults(func=cmd_space_veldkamp)

    magic = top.add_parser("magic", help="Mermin configurations").add_subparsers(dest="cmd", required=True)
    for shape in ("square", "pentagram"):
        s = magic.add_parser(shape, parents=[common])
        s.add_argument("--verify", action="store_true", help="check every sign with explicit matrices")
        s.set_defaults(func=cmd_magic_shape, shape=shape)
    s = magic.add_parser("enumerate-grids", parents=[common])
    s.add_argument("--verify", action="store_true")
    s.add_argument("--full", action="store_true")
    s.set_defaults(func=cmd_magic_grids)
    s = magic.add_parser("enumerate-pentagrams", parents=[common])
    s.add_argument("--within", metavar="FILE", help="JSON list of allowed points")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_magic_pentagrams)
    s = magic.add_parser("game-value", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_magic_game)

    s = top.add_parser("magicline", parents=[common], help="the magic Veldkamp line of W(5,2)")
    s.add_argument("what", choices=["show", "weights", "pfaffian-check"])
    s.add_argument("--samples", type=int, default=20)
    s.set_defaults(func=cmd_magicline)

    slocc = top.add_parser("slocc", help="entanglement classes").add_subparsers(dest="cmd", required=True)
    s = slocc.add_parser("classify", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_slocc_classify)
    s = slocc.add_parser("secant-dim", parents=[common])
    s.add_argument("--format", required=True, help="comma separated local dimensions")
    s.add_argument("-k", type=int, default=2)
    s.add_argument("--symmetric", action="store_true")
    s.set_defaults(func=cmd_slocc_secant)
    s = slocc.add_parser("singularity", parents=[common])
    s.add_argument("file")
    s.add_argument("--chart", required=True, help="comma separated coordinate set to 1 in each factor")
    s.set_defaults(func=cmd_slocc_singularity)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads is not None:
            os.environ["PAULI_POLAR_THREADS"] = str(args.threads)
        args.func(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except CheckFailed as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_CHECK
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    return EXIT_OK


def main() -> None:
    sys.exit(run())

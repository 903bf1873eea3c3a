"""``obstruct <command> <file> [args]``: batch reports over problem files.

Exit status: 0 when every verdict is "lifts" / "vanishes", 1 when some
square is obstructed, 2 on any error.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional, Tuple

from . import model
from .chain import ChainComplex, ChainMap, homology, null_homotopy
from .generate import random_square
from .linalg import Ring
from .obstruction import LiftingSquare, find_lift, obstruction
from .oracle import brute_lift_result
from .problem import (MapDecl, ProblemError, ProblemFile, SquareDecl, complex_lines,
                      format_matrix, load, map_lines, parse, serialize)
from .simplicial import rlp_equivalence_check

OK, OBSTRUCTED, ERROR = 0, 1, 2


class CommandError(Exception):
    pass


def _ranks(c: ChainComplex) -> str:
    return ", ".join(f"{n}:{r}" for n, r in c.ranks.items()) or "zero"


def _components(label: str, f: ChainMap, indent: str = "  ") -> List[str]:
    if f.is_zero():
        return [f"{indent}{label}: zero"]
    out = []
    for n, m in f.components.items():
        out.append(f"{indent}{label} at {n}")
        out += format_matrix(m, indent + "  ")
    return out


def _square(pf: ProblemFile, args) -> List[Tuple[str, LiftingSquare]]:
    if not args:
        if not pf.squares:
            raise CommandError("file declares no squares")
        return [(name, d.square) for name, d in pf.squares.items()]
    name = args[0]
    if name not in pf.squares:
        raise CommandError(f"no square named {name!r}")
    return [(name, pf.square(name))]


def cmd_obstruction(pf: ProblemFile, args, verbose: bool):
    lines, code = [], OK
    for name, sq in _square(pf, args):
        alpha = obstruction(sq)
        h = null_homotopy(alpha.theta)
        lines.append(f"obstruction {name}")
        lines.append(f"  W ranks: {_ranks(alpha.w)}")
        lines.append(f"  F ranks: {_ranks(alpha.f)}")
        lines += _components("theta", alpha.theta)
        if verbose:
            lines += _components("sigma", alpha.sigma)
            if h is not None:
                lines += _components("null-homotopy", h)
        lines.append("  class: " + ("VANISHES" if h is not None else "NONZERO"))
        if h is None:
            code = OBSTRUCTED
    return lines, code


def cmd_lift(pf: ProblemFile, args, verbose: bool):
    lines, code = [], OK
    for name, sq in _square(pf, args):
        lines.append(f"lift {name}")
        lift = find_lift(sq)
        if lift is not None:
            lines.append("  LIFT")
            lines += _components("ell", lift.ell)
            if verbose:
                agrees = brute_lift_result(sq).ell is not None
                lines.append(f"  oracle agrees: {'yes' if agrees else 'NO'}")
            continue
        code = OBSTRUCTED
        res = brute_lift_result(sq)
        lines.append("  NO LIFT")
        if res.certificate is None:
            lines.append("  oracle: found a solution (disagreement)")
        else:
            cert = res.certificate
            ring = sq.ring
            lines.append(f"  certificate: {res.equations} equations in {res.unknowns} unknowns; "
                         f"reduced row {cert.row} reads {ring.format(cert.divisor)} * y = "
                         f"{ring.format(cert.value)}")
    return lines, code


def cmd_homology(pf: ProblemFile, args, verbose: bool):
    if not args:
        raise CommandError("homology needs a complex name")
    name = args[0]
    if name not in pf.complexes:
        raise CommandError(f"no complex named {name!r}")
    c = pf.complex(name)
    if len(args) > 1:
        try:
            n = int(args[1])
        except ValueError:
            raise CommandError(f"bad degree {args[1]!r}") from None
        return [str(homology(c, n))], OK
    return [f"H_{n}({name}): {homology(c, n)}" for n in c.degrees] or [f"{name}: zero complex"], OK


def _map_arg(pf: ProblemFile, args, what: str) -> Tuple[str, ChainMap]:
    if not args:
        raise CommandError(f"{what} needs a map name")
    if args[0] not in pf.maps:
        raise CommandError(f"no map named {args[0]!r}")
    return args[0], pf.map(args[0])


def cmd_factor(pf: ProblemFile, args, verbose: bool):
    name, f = _map_arg(pf, args, "factor")
    kinds = args[1:] or ["cocylinder", "cylinder"]
    lines = []
    for kind in kinds:
        if kind == "cocylinder":
            fac = model.factor_acyclic_cof_then_fib(f)
        elif kind == "cylinder":
            fac = model.factor_cof_then_acyclic_fib(f)
        else:
            raise CommandError(f"unknown factorization {kind!r}")
        mid = f"{name}.{kind}"
        lines.append(f"factor {name} {kind}: {fac.kind}")
        lines += complex_lines(mid, fac.middle)
        lines += map_lines(f"{name}.first", pf.maps[name].source, mid, fac.first)
        lines += map_lines(f"{name}.second", mid, pf.maps[name].target, fac.second)
    return lines, OK


def cmd_suspend(pf: ProblemFile, args, verbose: bool):
    if not args:
        raise CommandError("suspend needs a complex or map name")
    name = args[0]
    try:
        k = int(args[1]) if len(args) > 1 else 1
    except ValueError:
        raise CommandError(f"bad shift {args[1]!r}") from None
    if name in pf.complexes:
        return complex_lines(f"{name}[{k}]", model.suspend(pf.complex(name), k)), OK
    if name in pf.maps:
        decl = pf.maps[name]
        try:
            f = model.suspend_map(decl.map, k)
        except model.NotACofibration as exc:
            raise CommandError(str(exc)) from None
        return map_lines(f"{name}[{k}]", f"{decl.source}[{k}]", f"{decl.target}[{k}]", f), OK
    raise CommandError(f"no complex or map named {name!r}")


def cmd_rlp_check(pf: ProblemFile, args, verbose: bool):
    name, p = _map_arg(pf, args, "rlp-check")
    if len(args) < 2:
        raise CommandError("rlp-check needs a degree n")
    try:
        n = int(args[1])
    except ValueError:
        raise CommandError(f"bad degree {args[1]!r}") from None
    kind = args[2] if len(args) > 2 else "disk"
    try:
        v = rlp_equivalence_check(p, n, kind)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    lines = [f"rlp-check {name} {n} {kind}",
             f"  H_{n - 1}(F): {v.homology}",
             f"  squares tested: {v.squares_tested}",
             "  verdict: " + ("RLP" if v.rlp else "NO RLP")]
    if v.witness is not None:
        lines += _components("witness top", v.witness.top)
        lines += _components("witness bottom", v.witness.bottom)
        lines.append(f"  oracle rejects witness: {'yes' if v.witness_rejected else 'NO'}")
    return lines, OK if v.rlp else OBSTRUCTED


def cmd_check(pf: ProblemFile, args, verbose: bool):
    return [f"ok: ring {pf.ring}, {len(pf.complexes)} complexes, {len(pf.maps)} maps, "
            f"{len(pf.squares)} squares, {len(pf.commands)} commands"], OK


COMMANDS = {
    "obstruction": cmd_obstruction,
    "lift": cmd_lift,
    "homology": cmd_homology,
    "factor": cmd_factor,
    "suspend": cmd_suspend,
    "rlp-check": cmd_rlp_check,
    "check": cmd_check,
}


def execute(pf: ProblemFile, command: str, args, verbose: bool = False):
    """Run one command; returns ``(report lines, exit code)``."""
    if command not in COMMANDS:
        raise CommandError(f"unknown command {command!r}")
    return COMMANDS[command](pf, list(args), verbose)


def run_file(pf: ProblemFile, verbose: bool = False):
    """Run the file's own ``run`` lines in order."""
    out, code = [], OK
    for k, cmd in enumerate(pf.commands, 1):
        try:
            lines, c = execute(pf, cmd[0], cmd[1:], verbose)
        except CommandError as exc:
            raise CommandError(f"line {pf.lines[f'run#{k}']}: {exc}") from None
        if out:
            out.append("")
        out += lines
        code = max(code, c)
    return out, code


def demo_corpus(seed: int, ring: Ring, count: int = 5) -> ProblemFile:
    """Random squares with ``obstruction`` and ``lift`` commands for each."""
    rng = random.Random(seed)
    pf = ProblemFile(ring, [f"# random corpus, seed {seed}"])
    for k in range(count):
        sq = random_square(rng, ring)
        names = {}
        for role, c in (("A", sq.i.source), ("B", sq.i.target),
                        ("X", sq.p.source), ("Y", sq.p.target)):
            names[role] = f"{role}{k}"
            pf.complexes[names[role]] = c
        for role, f, s, t in (("i", sq.i, "A", "B"), ("p", sq.p, "X", "Y"),
                              ("top", sq.top, "A", "X"), ("bottom", sq.bottom, "B", "Y")):
            pf.maps[f"{role}{k}"] = MapDecl(names[s], names[t], f)
        pf.squares[f"sq{k}"] = SquareDecl(f"i{k}", f"p{k}", f"top{k}", f"bottom{k}", sq)
        pf.commands.append(("obstruction", f"sq{k}"))
        pf.commands.append(("lift", f"sq{k}"))
    return pf


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="obstruct",
        description="Obstruction classes and lifts for squares of chain complexes.")
    ap.add_argument("command", choices=sorted(COMMANDS) + ["run", "format", "demo"],
                    help="report to produce; 'run' executes the file's own run lines, "
                         "'format' prints the canonical form, 'demo' writes a random corpus")
    ap.add_argument("file", help="problem file ('-' for stdin; for demo, the output path)")
    ap.add_argument("args", nargs="*", help="command arguments (names, degrees)")
    ap.add_argument("--ring", help="override the declared ring: Z, Q or Z/p")
    ap.add_argument("--seed", type=int, default=0, help="seed for the demo corpus")
    ap.add_argument("--count", type=int, default=5, help="number of squares in the demo corpus")
    ap.add_argument("--verbose", action="store_true", help="print intermediate data")
    return ap


def _read(path: str, ring: Optional[Ring]) -> ProblemFile:
    if path == "-":
        return parse(sys.stdin.read(), ring)
    return load(path, ring)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        ring = Ring.parse(ns.ring) if ns.ring else None
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    try:
        if ns.command == "demo":
            text = serialize(demo_corpus(ns.seed, ring or Ring.parse("Z"), ns.count))
            if ns.file == "-":
                sys.stdout.write(text)
            else:
                with open(ns.file, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return OK
        pf = _read(ns.file, ring)
        if ns.command == "format":
            sys.stdout.write(serialize(pf))
            return OK
        if ns.command == "run":
            lines, code = run_file(pf, ns.verbose)
        else:
            lines, code = execute(pf, ns.command, ns.args, ns.verbose)
    except ProblemError as exc:
        print(f"{ns.file}: {exc.kind}: {exc}", file=sys.stderr)
        return ERROR
    except (CommandError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Line-oriented problem files: complexes, maps, squares and commands.

Grammar (one item per line, tokens separated by single spaces)::

    file     := header? ring-line (complex | map | square | run | blank | comment)*
    header   := ('#' text)*                  leading comment lines, kept verbatim
    ring     := 'ring' ('Z' | 'Q' | 'Z/' prime)
    complex  := 'complex' NAME  rank*  dblock*  'end'
    rank     := 'rank' DEG COUNT
    dblock   := 'd' DEG  row{rank(DEG-1)}
    map      := 'map' NAME SRC '->' TGT 'degree' K  at*  'end'
    at       := 'at' DEG  row{rank_TGT(DEG+K)}
    square   := 'square' NAME 'i=' MAP 'p=' MAP 'top=' MAP 'bottom=' MAP
    run      := 'run' COMMAND ARG*
    row      := ENTRY (' ' ENTRY)*           integers, a/b rationals, residues mod p

Names must be declared before they are referenced.  The canonical form (see
:func:`serialize`) indents ranks, blocks and rows, omits zero matrices,
orders degrees increasingly, groups declarations by kind and separates the
groups by blank lines; canonical files round-trip byte-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import model
from .chain import ChainComplex, ChainMap, boundary_defect, square_defects
from .linalg import Matrix, Ring
from .obstruction import LiftingSquare, SquareError


class ProblemError(Exception):
    kind = "error"

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class ProblemSyntaxError(ProblemError):
    kind = "syntax error"


class UnresolvedReference(ProblemError):
    kind = "unresolved reference"


class PredicateFailure(ProblemError):
    kind = "predicate failure"


@dataclass(frozen=True)
class MapDecl:
    source: str
    target: str
    map: ChainMap


@dataclass(frozen=True)
class SquareDecl:
    i: str
    p: str
    top: str
    bottom: str
    square: LiftingSquare


@dataclass
class ProblemFile:
    ring: Ring
    header: List[str] = field(default_factory=list)
    complexes: Dict[str, ChainComplex] = field(default_factory=dict)
    maps: Dict[str, MapDecl] = field(default_factory=dict)
    squares: Dict[str, SquareDecl] = field(default_factory=dict)
    commands: List[Tuple[str, ...]] = field(default_factory=list)
    lines: Dict[str, int] = field(default_factory=dict)  # name -> declaring line

    def complex(self, name: str) -> ChainComplex:
        return self.complexes[name]

    def map(self, name: str) -> ChainMap:
        return self.maps[name].map

    def square(self, name: str) -> LiftingSquare:
        return self.squares[name].square


_KEYWORDS = {"ring", "complex", "map", "square", "run", "end", "rank", "d", "at"}


def _int(tok: str, ln: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ProblemSyntaxError(ln, f"expected an integer {what}, got {tok!r}") from None


def _name(tok: str, ln: int) -> str:
    if not tok or tok in _KEYWORDS or not (tok[0].isalpha() or tok[0] == "_") \
            or not all(ch.isalnum() or ch in "_.'" for ch in tok):
        raise ProblemSyntaxError(ln, f"invalid name {tok!r}")
    return tok


class _Lines:
    def __init__(self, text: str):
        self.items = [(k + 1, line) for k, line in enumerate(text.splitlines())]
        self.pos = 0

    def next(self):
        """Next non-blank, non-comment line as ``(number, tokens)``, or None."""
        while self.pos < len(self.items):
            ln, raw = self.items[self.pos]
            self.pos += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return ln, stripped.split()
        return None

    def last_line(self) -> int:
        return self.items[-1][0] if self.items else 1


def _read_rows(lines: _Lines, ring: Ring, rows: int, cols: int, ln0: int, what: str) -> Matrix:
    data = []
    for _ in range(rows):
        nxt = lines.next()
        if nxt is None:
            raise ProblemSyntaxError(lines.last_line(), f"unexpected end of file inside {what}")
        ln, toks = nxt
        if len(toks) != cols:
            raise ProblemSyntaxError(ln, f"{what}: expected {cols} entries, got {len(toks)}")
        try:
            data.append([ring(t) for t in toks])
        except (ValueError, ZeroDivisionError):
            raise ProblemSyntaxError(ln, f"{what}: bad entry in {' '.join(toks)!r} "
                                         f"for ring {ring}") from None
    return Matrix(ring, rows, cols, data)


def parse(text: str, ring: Optional[Ring] = None) -> ProblemFile:
    """Parse and check a problem file; ``ring`` overrides the declared ring."""
    lines = _Lines(text)
    header = []
    for _, raw in lines.items:
        if raw.startswith("#"):
            header.append(raw)
        else:
            break

    first = lines.next()
    if first is None or first[1][0] != "ring":
        raise ProblemSyntaxError(first[0] if first else 1, "file must start with a ring line")
    ln, toks = first
    if len(toks) != 2:
        raise ProblemSyntaxError(ln, "expected 'ring R'")
    try:
        declared = Ring.parse(toks[1])
    except ValueError as exc:
        raise ProblemSyntaxError(ln, str(exc)) from None
    pf = ProblemFile(ring or declared, header)
    r = pf.ring

    def fresh(name, ln):
        if name in pf.lines:
            raise ProblemSyntaxError(ln, f"{name!r} already declared on line {pf.lines[name]}")
        pf.lines[name] = ln

    while True:
        nxt = lines.next()
        if nxt is None:
            break
        ln, toks = nxt
        head = toks[0]
        if head == "complex":
            if len(toks) != 2:
                raise ProblemSyntaxError(ln, "expected 'complex NAME'")
            name = _name(toks[1], ln)
            fresh(name, ln)
            pf.complexes[name] = _parse_complex(lines, r, name, ln)
        elif head == "map":
            if len(toks) != 7 or toks[3] != "->" or toks[5] != "degree":
                raise ProblemSyntaxError(ln, "expected 'map NAME SRC -> TGT degree K'")
            name = _name(toks[1], ln)
            fresh(name, ln)
            pf.maps[name] = _parse_map(lines, pf, name, toks, ln)
        elif head == "square":
            name = _name(toks[1], ln) if len(toks) > 1 else None
            if name is None or len(toks) != 6:
                raise ProblemSyntaxError(ln, "expected 'square NAME i=.. p=.. top=.. bottom=..'")
            fresh(name, ln)
            pf.squares[name] = _parse_square(pf, toks, ln)
        elif head == "run":
            if len(toks) < 2:
                raise ProblemSyntaxError(ln, "expected 'run COMMAND ARGS'")
            pf.commands.append(tuple(toks[1:]))
            pf.lines[f"run#{len(pf.commands)}"] = ln
        elif head == "ring":
            raise ProblemSyntaxError(ln, "ring declared twice")
        else:
            raise ProblemSyntaxError(ln, f"unexpected {head!r}")
    return pf


def _parse_complex(lines: _Lines, ring: Ring, name: str, ln0: int) -> ChainComplex:
    ranks: Dict[int, int] = {}
    diffs: Dict[int, Matrix] = {}
    while True:
        nxt = lines.next()
        if nxt is None:
            raise ProblemSyntaxError(lines.last_line(), f"complex {name}: missing 'end'")
        ln, toks = nxt
        if toks == ["end"]:
            break
        if toks[0] == "rank":
            if len(toks) != 3:
                raise ProblemSyntaxError(ln, "expected 'rank DEG COUNT'")
            n, k = _int(toks[1], ln, "degree"), _int(toks[2], ln, "rank")
            if k < 0:
                raise ProblemSyntaxError(ln, "rank must be non-negative")
            if n in ranks:
                raise ProblemSyntaxError(ln, f"rank of degree {n} given twice")
            if diffs:
                raise ProblemSyntaxError(ln, "rank lines must precede differentials")
            ranks[n] = k
        elif toks[0] == "d":
            if len(toks) != 2:
                raise ProblemSyntaxError(ln, "expected 'd DEG'")
            n = _int(toks[1], ln, "degree")
            if n in diffs:
                raise ProblemSyntaxError(ln, f"differential in degree {n} given twice")
            diffs[n] = _read_rows(lines, ring, ranks.get(n - 1, 0), ranks.get(n, 0), ln,
                                  f"complex {name}, d {n}")
        else:
            raise ProblemSyntaxError(ln, f"complex {name}: unexpected {toks[0]!r}")
    c = ChainComplex(ring, ranks, diffs)
    bad = square_defects(c)
    if bad:
        raise PredicateFailure(ln0, f"complex {name}: d^2 != 0 in degree {bad[0]}")
    return c


def _parse_map(lines: _Lines, pf: ProblemFile, name: str, toks, ln0: int) -> MapDecl:
    src, tgt = toks[2], toks[4]
    for ref in (src, tgt):
        if ref not in pf.complexes:
            raise UnresolvedReference(ln0, f"map {name}: no complex named {ref!r}")
    a, b = pf.complexes[src], pf.complexes[tgt]
    k = _int(toks[6], ln0, "degree")
    comps: Dict[int, Matrix] = {}
    while True:
        nxt = lines.next()
        if nxt is None:
            raise ProblemSyntaxError(lines.last_line(), f"map {name}: missing 'end'")
        ln, t = nxt
        if t == ["end"]:
            break
        if t[0] != "at" or len(t) != 2:
            raise ProblemSyntaxError(ln, f"map {name}: expected 'at DEG' or 'end'")
        n = _int(t[1], ln, "degree")
        if n in comps:
            raise ProblemSyntaxError(ln, f"component in degree {n} given twice")
        comps[n] = _read_rows(lines, pf.ring, b.rank(n + k), a.rank(n), ln, f"map {name}, at {n}")
    f = ChainMap(a, b, comps, k)
    if k == 0:
        bad = boundary_defect(f).components
        if bad:
            raise PredicateFailure(ln0, f"map {name}: not a chain map in degree {min(bad)}")
    return MapDecl(src, tgt, f)


def _parse_square(pf: ProblemFile, toks, ln: int) -> SquareDecl:
    refs = {}
    for tok, key in zip(toks[2:], ("i", "p", "top", "bottom")):
        if not tok.startswith(key + "="):
            raise ProblemSyntaxError(ln, f"expected '{key}=MAP', got {tok!r}")
        ref = tok[len(key) + 1:]
        if ref not in pf.maps:
            raise UnresolvedReference(ln, f"square {toks[1]}: no map named {ref!r}")
        refs[key] = ref
    maps = {k: pf.maps[v].map for k, v in refs.items()}
    for key, f in maps.items():
        if f.degree != 0:
            raise PredicateFailure(ln, f"square {toks[1]}: {refs[key]} has degree {f.degree}")
    if not model.is_cofibration(maps["i"]):
        raise PredicateFailure(ln, f"square {toks[1]}: {refs['i']} is not a cofibration")
    if not model.is_fibration(maps["p"]):
        raise PredicateFailure(ln, f"square {toks[1]}: {refs['p']} is not a fibration")
    try:
        sq = LiftingSquare(maps["i"], maps["p"], maps["top"], maps["bottom"])
    except SquareError as exc:
        raise PredicateFailure(ln, f"square {toks[1]}: {exc}") from None
    return SquareDecl(refs["i"], refs["p"], refs["top"], refs["bottom"], sq)


# serialization


def format_matrix(m: Matrix, indent: str = "    ") -> List[str]:
    return [indent + " ".join(m.ring.format(x) for x in row) for row in m.data]


def complex_lines(name: str, c: ChainComplex) -> List[str]:
    out = [f"complex {name}"]
    out += [f"  rank {n} {r}" for n, r in c.ranks.items()]
    for n, m in c.differentials.items():
        out.append(f"  d {n}")
        out += format_matrix(m)
    out.append("end")
    return out


def map_lines(name: str, src: str, tgt: str, f: ChainMap) -> List[str]:
    out = [f"map {name} {src} -> {tgt} degree {f.degree}"]
    for n, m in f.components.items():
        out.append(f"  at {n}")
        out += format_matrix(m)
    out.append("end")
    return out


def serialize(pf: ProblemFile) -> str:
    groups: List[List[str]] = []
    head = list(pf.header) + [f"ring {pf.ring}"]
    groups.append(head)
    for name, c in pf.complexes.items():
        groups.append(complex_lines(name, c))
    for name, m in pf.maps.items():
        groups.append(map_lines(name, m.source, m.target, m.map))
    if pf.squares:
        groups.append([f"square {name} i={s.i} p={s.p} top={s.top} bottom={s.bottom}"
                       for name, s in pf.squares.items()])
    if pf.commands:
        groups.append(["run " + " ".join(cmd) for cmd in pf.commands])
    return "\n\n".join("\n".join(g) for g in groups) + "\n"


def load(path: str, ring: Optional[Ring] = None) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), ring)

"""Line-oriented text formats for algebras, modules, cochains and split structures.

Algebra::

    rank 2
    generators v u
    bracket 1 1 = [d + 2*l, 0]
    bracket 1 2 = [0, d + l]
    summand vir 1
    radical 2

Indices are 1-based.  A missing ``bracket j i`` is completed from
``bracket i j`` by anti-commutativity.  ``summand``/``radical`` lines may also
live in a separate split file.

Module (``action i j`` = e_i λ u_j) and cochain (``cochain i j`` = φ_λ(e_i, u_j))::

    module rank 1            cochain rank 1
    names u                  cochain 1 1 = [d + l]
    action 1 1 = [d + l]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .algebra import CUR, VIR, VIRCUR, ConformalAlgebra, SplitStructure, Summand, lie_of_block
from .errors import ParseError
from .extensions import Cochain
from .modules import ConformalModule
from .poly import DP, LAM, LP, ZERO, MPoly, parse_poly

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass
class ModuleText:
    rank: int
    names: Tuple[str, ...]
    entries: Dict[Tuple[int, int], Tuple[MPoly, ...]] = field(default_factory=dict)

    def bind(self, algebra: ConformalAlgebra) -> ConformalModule:
        n, m = algebra.rank, self.rank
        t = [[[ZERO] * m for _ in range(m)] for _ in range(n)]
        for (i, j), v in self.entries.items():
            if i >= n:
                raise ParseError(f"action refers to generator {i + 1} of a rank-{n} algebra")
            t[i][j] = list(v)
        return ConformalModule.from_table(algebra, t, self.names, rank=m)


@dataclass
class CochainText:
    rank: int
    entries: Dict[Tuple[int, int], Tuple[MPoly, ...]] = field(default_factory=dict)

    def bind(self, module: ConformalModule) -> Cochain:
        n, m, r = module.algebra.rank, module.rank, self.rank
        t = [[[ZERO] * r for _ in range(m)] for _ in range(n)]
        for (i, j), v in self.entries.items():
            if i >= n or j >= m:
                raise ParseError(f"cochain entry ({i + 1}, {j + 1}) is out of range")
            t[i][j] = list(v)
        return Cochain.from_table(module, r, t)


@dataclass
class WorkspaceFile:
    kind: str  # algebra | module | cochain | split
    path: Optional[str]
    payload: object


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield no, line


def _parse_index(tok: str, no: int, line: str, limit: Optional[int] = None) -> int:
    col = line.find(tok) + 1
    try:
        k = int(tok)
    except ValueError:
        raise ParseError(f"expected a 1-based index, got {tok!r}", no, col) from None
    if k < 1 or (limit is not None and k > limit):
        raise ParseError(f"index {k} out of range", no, col)
    return k - 1


def _parse_range(tok: str, no: int, line: str) -> List[int]:
    out: List[int] = []
    for part in tok.split(","):
        if "-" in part:
            a, b = part.split("-", 1)
            lo, hi = _parse_index(a, no, line), _parse_index(b, no, line)
            if hi < lo:
                raise ParseError(f"empty range {part!r}", no, line.find(part) + 1)
            out.extend(range(lo, hi + 1))
        elif part:
            out.append(_parse_index(part, no, line))
    return out


def _parse_vector(line: str, no: int, start: int, width: int) -> Tuple[MPoly, ...]:
    rest = line[start:]
    lb = rest.find("[")
    rb = rest.rfind("]")
    if lb < 0 or rb < lb:
        raise ParseError("expected a bracketed vector [q1, …]", no, start + 1)
    body = rest[lb + 1 : rb]
    if rest[rb + 1 :].strip():
        raise ParseError("unexpected text after vector", no, start + rb + 2)
    parts = body.split(",")
    if len(parts) != width:
        raise ParseError(f"expected {width} entries, found {len(parts)}", no, start + lb + 1)
    out = []
    col = start + lb + 1
    for part in parts:
        text = part.strip() or "0"
        out.append(parse_poly(text, no, col + (len(part) - len(part.lstrip()))))
        col += len(part) + 1
    return tuple(out)


def _split_eq(line: str, no: int) -> Tuple[List[str], int]:
    if "=" not in line:
        raise ParseError("expected '='", no, len(line) + 1)
    head, _ = line.split("=", 1)
    return head.split(), len(head) + 1


def parse_split(text: str, algebra: Optional[ConformalAlgebra] = None) -> SplitStructure:
    summands, radical = [], []
    for no, line in _lines(text):
        toks = line.split()
        if toks[0] == "summand":
            if len(toks) != 3 or toks[1] not in (VIR, CUR, VIRCUR):
                raise ParseError("expected 'summand vir|cur|vircur RANGE'", no, 1)
            idx = _parse_range(toks[2], no, line)
            summands.append((toks[1], tuple(idx)))
        elif toks[0] == "radical":
            idx = _parse_range(toks[1], no, line) if len(toks) > 1 else []
            radical.extend(idx)
        else:
            raise ParseError(f"unknown split directive {toks[0]!r}", no, 1)
        if algebra is not None and idx and max(idx) >= algebra.rank:
            raise ParseError(f"generator {max(idx) + 1} exceeds the algebra rank {algebra.rank}", no, 1)
    return _make_split(summands, radical, algebra)


def _make_split(summands, radical, algebra) -> SplitStructure:
    out = []
    for kind, idx in summands:
        lie = None
        if algebra is not None and kind in (CUR, VIRCUR):
            cur = idx if kind == CUR else idx[1:]
            lie = lie_of_block(algebra, cur)
        out.append(Summand(kind, idx, lie))
    return SplitStructure(tuple(out), tuple(sorted(radical)))


def parse_algebra(text: str) -> ConformalAlgebra:
    n = None
    names: Tuple[str, ...] = ()
    given: Dict[Tuple[int, int], Tuple[MPoly, ...]] = {}
    split_lines = []
    for no, line in _lines(text):
        toks = line.split()
        key = toks[0]
        if key == "rank":
            if n is not None:
                raise ParseError("duplicate rank line", no, 1)
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise ParseError("expected 'rank N' with N ≥ 1", no, 1)
            n = int(toks[1])
        elif key == "generators":
            names = tuple(toks[1:])
            for nm in names:
                if not _NAME.match(nm):
                    raise ParseError(f"bad generator name {nm!r}", no, line.find(nm) + 1)
        elif key == "bracket":
            if n is None:
                raise ParseError("'rank' must come before brackets", no, 1)
            head, start = _split_eq(line, no)
            if len(head) != 3:
                raise ParseError("expected 'bracket i j = [...]'", no, 1)
            i, j = _parse_index(head[1], no, line, n), _parse_index(head[2], no, line, n)
            if (i, j) in given:
                raise ParseError(f"duplicate bracket {i + 1} {j + 1}", no, 1)
            vecv = _parse_vector(line, no, start, n)
            for p in vecv:
                if p.degree(2) > 0:
                    raise ParseError("bracket coefficients may only use d and l", no, start + 1)
            given[(i, j)] = vecv
        elif key in ("summand", "radical"):
            split_lines.append(line)
        else:
            raise ParseError(f"unknown directive {key!r}", no, 1)
    if n is None:
        raise ParseError("missing 'rank' line", 1, 1)
    if names and len(names) != n:
        raise ParseError(f"{len(names)} generator names for rank {n}", 1, 1)
    flip = -DP - LP
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in given.items():
        t[i][j] = list(v)
        if (j, i) not in given:
            t[j][i] = [-p.subs({LAM: flip}) for p in v]
    C = ConformalAlgebra.from_table(t, names)
    if split_lines:
        C = C.with_split(parse_split("\n".join(split_lines), C))
    return C


def parse_module(text: str) -> ModuleText:
    m = None
    names: Tuple[str, ...] = ()
    entries: Dict[Tuple[int, int], Tuple[MPoly, ...]] = {}
    for no, line in _lines(text):
        toks = line.split()
        if toks[0] == "module":
            if len(toks) != 3 or toks[1] != "rank" or not toks[2].isdigit():
                raise ParseError("expected 'module rank M'", no, 1)
            m = int(toks[2])
        elif toks[0] == "names":
            names = tuple(toks[1:])
        elif toks[0] == "action":
            if m is None:
                raise ParseError("'module rank' must come first", no, 1)
            head, start = _split_eq(line, no)
            if len(head) != 3:
                raise ParseError("expected 'action i j = [...]'", no, 1)
            i, j = _parse_index(head[1], no, line), _parse_index(head[2], no, line, m)
            if (i, j) in entries:
                raise ParseError(f"duplicate action {i + 1} {j + 1}", no, 1)
            entries[(i, j)] = _parse_vector(line, no, start, m)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", no, 1)
    if m is None:
        raise ParseError("missing 'module rank' line", 1, 1)
    if names and len(names) != m:
        raise ParseError(f"{len(names)} names for module rank {m}", 1, 1)
    return ModuleText(m, names or tuple(f"u{j + 1}" for j in range(m)), entries)


def parse_cochain(text: str) -> CochainText:
    r = None
    entries: Dict[Tuple[int, int], Tuple[MPoly, ...]] = {}
    for no, line in _lines(text):
        toks = line.split()
        if toks[0] == "cochain" and len(toks) >= 2 and toks[1] == "rank":
            if len(toks) != 3 or not toks[2].isdigit():
                raise ParseError("expected 'cochain rank R'", no, 1)
            r = int(toks[2])
        elif toks[0] == "cochain":
            if r is None:
                raise ParseError("'cochain rank' must come first", no, 1)
            head, start = _split_eq(line, no)
            if len(head) != 3:
                raise ParseError("expected 'cochain i j = [...]'", no, 1)
            i, j = _parse_index(head[1], no, line), _parse_index(head[2], no, line)
            entries[(i, j)] = _parse_vector(line, no, start, r)
        else:
            raise ParseError(f"unknown directive {toks[0]!r}", no, 1)
    if r is None:
        raise ParseError("missing 'cochain rank' line", 1, 1)
    return CochainText(r, entries)


def detect_kind(text: str) -> str:
    for _, line in _lines(text):
        toks = line.split()
        if toks[0] == "rank":
            return "algebra"
        if toks[0] == "module":
            return "module"
        if toks[0] == "cochain":
            return "cochain"
        if toks[0] in ("summand", "radical"):
            return "split"
        break
    raise ParseError("cannot tell what kind of file this is", 1, 1)


def load(path: str) -> WorkspaceFile:
    text = Path(path).read_text(encoding="utf-8")
    kind = detect_kind(text)
    parser = {"algebra": parse_algebra, "module": parse_module, "cochain": parse_cochain, "split": parse_split}[kind]
    return WorkspaceFile(kind, str(path), parser(text))


# -- printing -----------------------------------------------------------------
def _vec(v) -> str:
    return "[" + ", ".join(str(p) for p in v) + "]"


def _range_str(idx) -> str:
    idx = sorted(idx)
    if not idx:
        return ""
    parts = []
    start = prev = idx[0]
    for k in idx[1:] + [None]:
        if k is not None and k == prev + 1:
            prev = k
            continue
        parts.append(f"{start + 1}" if start == prev else f"{start + 1}-{prev + 1}")
        if k is not None:
            start = prev = k
    return ",".join(parts)


def dump_split(S: SplitStructure) -> str:
    lines = []
    for s in S.summands:
        lines.append(f"summand {s.kind} {_range_str(s.indices)}")
    if S.radical:
        lines.append(f"radical {_range_str(S.radical)}")
    return "\n".join(lines) + "\n"


def dump_algebra(C: ConformalAlgebra, with_split: bool = True) -> str:
    lines = [f"rank {C.rank}", "generators " + " ".join(C.names)]
    for i in range(C.rank):
        for j in range(C.rank):
            if any(C.table[i][j]):
                lines.append(f"bracket {i + 1} {j + 1} = {_vec(C.table[i][j])}")
    text = "\n".join(lines) + "\n"
    if with_split and C.split is not None:
        text += dump_split(C.split)
    return text


def dump_module(M: ConformalModule) -> str:
    lines = [f"module rank {M.rank}", "names " + " ".join(M.names)]
    for i in range(M.algebra.rank):
        for j in range(M.rank):
            if any(M.table[i][j]):
                lines.append(f"action {i + 1} {j + 1} = {_vec(M.table[i][j])}")
    return "\n".join(lines) + "\n"


def dump_cochain(phi: Cochain) -> str:
    lines = [f"cochain rank {phi.target_rank}"]
    for i, row in enumerate(phi.table):
        for j, cell in enumerate(row):
            if any(cell):
                lines.append(f"cochain {i + 1} {j + 1} = {_vec(cell)}")
    return "\n".join(lines) + "\n"

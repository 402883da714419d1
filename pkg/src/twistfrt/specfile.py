"""Sectioned plain-text algebra specs and the built-in presets.

A spec looks like::

    [params]
    q, p
    [dim]
    2
    [B]
    [1, 0, 0, 0]
    [0, 0, q, 0]
    [0, q, 1 - q^2, 0]
    [0, 0, 0, 1]
    [twist]
    g(i,1,2) = p
    g(i,2,1) = p^-1
    [options]
    max_degree = 4

``[twist]`` holds ``flip``, ``solve`` (optionally followed by ``g`` lines
that pin unknowns) or ``g(i,j,k) = expr`` lines; a letter in an index slot
ranges over 1..n and unspecified entries are 1.  Two optional sections
extend the format: ``[relations]`` gives the bialgebra relations directly
(one NC expression or ``lhs = rhs`` per line) and ``[hopf]`` states a
claimed determinant ``det = ...`` and antipode images ``S(a) = ...``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .errors import ParseError, SemanticError
from .freealg import Alphabet, NCPoly
from .parsing import parse_ncpoly, parse_scalar
from .quadspace import EndoTensor
from .scalar import ParamSet

__all__ = [
    "AlgebraSpec",
    "TwistSpec",
    "parse_spec",
    "render_spec",
    "load_spec",
    "PRESETS",
    "preset_text",
    "specialize",
]

SECTIONS = ("params", "dim", "B", "twist", "options", "relations", "hopf")
OPTION_KEYS = ("max_degree", "checks")
KNOWN_CHECKS = ("multiplicative", "counit", "coideal", "comodule-diagrams")

_HEADER = re.compile(r"^\[(\w+)\]$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_G_LINE = re.compile(r"^g\(\s*(\w+)\s*,\s*(\w+)\s*,\s*(\w+)\s*\)\s*=\s*")
_S_LINE = re.compile(r"^S\(\s*(\w+)\s*\)\s*=\s*")


@dataclass(frozen=True)
class TwistSpec:
    """``mode`` is "flip", "table" or "solve"; entries are (pattern, value).

    A pattern slot is an int or None (wildcard).
    """

    mode: str = "flip"
    entries: tuple = ()

    def expand(self, n):
        table = {}
        for pattern, value in self.entries:
            ranges = [range(1, n + 1) if s is None else (s,) for s in pattern]
            for key in itertools.product(*ranges):
                table[key] = value
        return table


@dataclass
class AlgebraSpec:
    params: ParamSet
    dim: int
    B: EndoTensor
    twist: TwistSpec = field(default_factory=TwistSpec)
    max_degree: int = 4
    checks: tuple = ()
    relations: tuple = ()
    det: NCPoly = None
    antipode: tuple = ()  # (letter name, NCPoly)

    @property
    def alphabet(self):
        return Alphabet.for_dim(self.dim)

    def __eq__(self, other):
        if not isinstance(other, AlgebraSpec):
            return NotImplemented
        return render_spec(self) == render_spec(other)


def _strip_comment(line):
    i = line.find("#")
    return line if i < 0 else line[:i]


def _perr(msg, line, col, expected=()):
    return ParseError(msg, line, col, expected)


def _scalar(text, params, line, col):
    try:
        return parse_scalar(text, params, line, col - 1)
    except ParseError as exc:
        if "unknown parameter" in str(exc):
            raise SemanticError(str(exc)) from exc
        raise


def _ncpoly(text, alphabet, params, line, col):
    try:
        return parse_ncpoly(text, alphabet, params, line, col - 1)
    except ParseError as exc:
        if "unknown name" in str(exc):
            raise SemanticError(str(exc)) from exc
        raise


def _split_commas(body, col):
    """Split on commas, yielding (piece, 1-based column of piece start)."""
    out, start = [], 0
    for m in re.finditer(",", body + ","):
        piece = body[start : m.start()]
        lead = len(piece) - len(piece.lstrip())
        out.append((piece.strip(), col + start + lead))
        start = m.end()
    return out


def _sectioned(text):
    """[(section, [(line_no, col, content)])] in file order."""
    sections = []
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        content = line.strip()
        if not content:
            continue
        col = len(line) - len(line.lstrip()) + 1
        m = _HEADER.match(content)
        if m and m.group(1) in SECTIONS:
            if any(s == m.group(1) for s, _ in sections):
                raise _perr(f"duplicate section [{m.group(1)}]", no, col)
            current = (m.group(1), [])
            sections.append(current)
            continue
        if m and (current is None or current[0] != "B"):
            raise _perr(f"unknown section [{m.group(1)}]", no, col, tuple(f"[{s}]" for s in SECTIONS))
        if current is None:
            raise _perr("content before the first section", no, col, ("[params]",))
        current[1].append((no, col, content))
    return dict(sections)


def _parse_index(tok, n, no, col):
    if tok.isdigit():
        v = int(tok)
        if not 1 <= v <= n:
            raise SemanticError(f"line {no}, column {col}: index {v} outside 1..{n}")
        return v
    if _NAME.match(tok):
        return None
    raise _perr(f"bad index {tok!r}", no, col, ("integer", "index variable"))


def parse_spec(text):
    """Strict parse; syntax errors carry line/column, semantic ones a message."""
    sec = _sectioned(text)
    for required in ("dim", "B"):
        if required not in sec:
            raise SemanticError(f"missing section [{required}]")

    names = []
    for no, col, content in sec.get("params", []):
        for piece, pcol in _split_commas(content, col):
            if not _NAME.match(piece):
                raise _perr(f"bad parameter name {piece!r}", no, pcol, ("identifier",))
            if piece in names:
                raise SemanticError(f"line {no}: parameter {piece!r} declared twice")
            names.append(piece)
    params = ParamSet(tuple(names))

    dim_lines = sec["dim"]
    if len(dim_lines) != 1 or not dim_lines[0][2].isdigit():
        no, col, _ = dim_lines[0] if dim_lines else (0, 1, "")
        raise _perr("dimension must be a single positive integer", no, col, ("integer",))
    n = int(dim_lines[0][2])
    if n < 1:
        raise SemanticError("dimension must be at least 1")
    size = n * n

    rows = []
    for no, col, content in sec["B"]:
        if not content.startswith("["):
            raise _perr("matrix row must start with '['", no, col, ("[",))
        if not content.endswith("]"):
            raise _perr("matrix row must end with ']'", no, col + len(content), ("]",))
        body = content[1:-1]
        cells = _split_commas(body, col + 1)
        row = []
        for piece, pcol in cells:
            if not piece:
                raise _perr("empty matrix entry", no, pcol, ("scalar expression",))
            row.append(_scalar(piece, params, no, pcol))
        if len(row) != size:
            raise SemanticError(f"line {no}: row has {len(row)} entries, expected {size}")
        rows.append(row)
    if len(rows) != size:
        raise SemanticError(f"[B] has {len(rows)} rows, expected {size}")
    B = EndoTensor(n, rows, params)

    twist = _parse_twist(sec.get("twist", []), n, params)

    max_degree, checks = 4, ()
    for no, col, content in sec.get("options", []):
        key, sep, value = content.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise _perr("expected 'key = value'", no, col + len(content), ("=",))
        if key == "max_degree":
            if not value.isdigit() or int(value) < 2:
                raise SemanticError(f"line {no}: max_degree must be an integer >= 2")
            max_degree = int(value)
        elif key == "checks":
            checks = tuple(v.strip() for v in value.split(",") if v.strip())
            bad = [c for c in checks if c not in KNOWN_CHECKS]
            if bad:
                raise SemanticError(f"line {no}: unknown check {bad[0]!r}; known: {', '.join(KNOWN_CHECKS)}")
        else:
            raise SemanticError(f"line {no}: unknown option {key!r}; known: {', '.join(OPTION_KEYS)}")

    A = Alphabet.for_dim(n)
    relations = tuple(_parse_relation(content, A, params, no, col) for no, col, content in sec.get("relations", []))

    det, antipode = None, []
    for no, col, content in sec.get("hopf", []):
        m = _S_LINE.match(content)
        if content.startswith("det") and content[3:].lstrip().startswith("="):
            eq = content.index("=")
            det = _ncpoly(content[eq + 1 :].strip(), A, params, no, col + eq + 1 + _lead(content[eq + 1 :]))
        elif m:
            name = m.group(1)
            if name not in A or A.letters[A.index(name)].role != "T":
                raise SemanticError(f"line {no}: {name!r} is not a matrix generator")
            antipode.append((name, _ncpoly(content[m.end() :], A, params, no, col + m.end())))
        else:
            raise _perr("expected 'det = ...' or 'S(x) = ...'", no, col, ("det", "S("))
    return AlgebraSpec(params, n, B, twist, max_degree, checks, relations, det, tuple(antipode))


def _lead(s):
    return len(s) - len(s.lstrip())


def _parse_relation(content, A, params, no, col):
    lhs, sep, rhs = content.partition("=")
    left = _ncpoly(lhs.strip(), A, params, no, col + _lead(lhs))
    if not sep:
        return left
    off = col + len(lhs) + 1
    return left - _ncpoly(rhs.strip(), A, params, no, off + _lead(rhs))


def _parse_twist(lines, n, params):
    if not lines:
        return TwistSpec("flip")
    mode = "table"
    entries = []
    for idx, (no, col, content) in enumerate(lines):
        if content in ("flip", "solve"):
            if idx != 0:
                raise _perr(f"'{content}' must be the first twist line", no, col)
            mode = content
            continue
        m = _G_LINE.match(content)
        if not m:
            raise _perr("expected 'flip', 'solve' or 'g(i,j,k) = expr'", no, col, ("flip", "solve", "g("))
        if mode == "flip":
            raise SemanticError(f"line {no}: 'flip' takes no g entries")
        pattern = tuple(_parse_index(m.group(k), n, no, col + m.start(k)) for k in (1, 2, 3))
        value = _scalar(content[m.end() :], params, no, col + m.end())
        if not value:
            raise SemanticError(f"line {no}: twist entries must be nonzero")
        entries.append((pattern, value))
    return TwistSpec(mode, tuple(entries))


# -- rendering -----------------------------------------------------------------------


def _g_pattern_text(pattern):
    # distinct wildcard names keep independent slots independent on reparse
    names = iter("ijk")
    slots = [next(names) if s is None else str(s) for s in pattern]
    return f"g({','.join(slots)})"


def render_spec(spec):
    out = []
    if spec.params.names:
        out += ["[params]", ", ".join(spec.params.names), ""]
    out += ["[dim]", str(spec.dim), "", "[B]"]
    for row in spec.B.text_rows():
        out.append("[" + ", ".join(row) + "]")
    out += ["", "[twist]"]
    if spec.twist.mode in ("flip", "solve"):
        out.append(spec.twist.mode)
    for pattern, value in spec.twist.entries:
        out.append(f"{_g_pattern_text(pattern)} = {value}")
    out += ["", "[options]", f"max_degree = {spec.max_degree}"]
    if spec.checks:
        out.append("checks = " + ", ".join(spec.checks))
    if spec.relations:
        out += ["", "[relations]"]
        out += [_nc_text(r) for r in spec.relations]
    if spec.det is not None or spec.antipode:
        out += ["", "[hopf]"]
        if spec.det is not None:
            out.append(f"det = {_nc_text(spec.det)}")
        out += [f"S({name}) = {_nc_text(v)}" for name, v in spec.antipode]
    return "\n".join(out) + "\n"


def _nc_text(x):
    """Parseable rendering: coefficients joined to words with '*'."""
    if not x:
        return "0"
    parts = []
    for word, c in x.terms():
        w = x.alphabet.render_word(word) if word else ""
        cs = str(c)
        neg = cs.startswith("-") and "+" not in cs[1:] and " - " not in cs[1:]
        if neg:
            cs = cs[1:]
        if "+" in cs or " - " in cs:
            cs = f"({cs})"
        if w and cs == "1":
            body = w
        elif w:
            body = f"{cs}*{w}"
        else:
            body = cs
        parts.append(("-" if neg else "+", body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# -- presets -------------------------------------------------------------------------

_PLANE_B = """\
[1, 0, 0, 0]
[0, 0, q, 0]
[0, q, 1 - q^2, 0]
[0, 0, 0, 1]
"""

_GRASSMANN_B = """\
[-q^-2, 0, 0, 0]
[0, 0, -q^-1, 0]
[0, -q^-1, (q^2 - 1)/q^2, 0]
[0, 0, 0, -q^-2]
"""

_B_PRIME = """\
[1, 0, 0, 0]
[0, (q - q^-1)/(q + q^-1), 2/(q + q^-1), 0]
[0, 2/(q + q^-1), (q^-1 - q)/(q + q^-1), 0]
[0, 0, 0, 1]
"""

_TWO_PARAM_TWIST = """\
[twist]
g(i,1,2) = p
g(i,2,1) = p^-1
"""

_HEAD = "[params]\nq, p\n\n[dim]\n2\n\n[B]\n"
_OPTIONS = "\n[options]\nmax_degree = 4\n"

_RELATIONS = """
[relations]
ac - p*q ca
ab - p^-1*q ba
bc - p^2 cb
cd - p^-1*q dc
bd - p*q db
ad - da + p*(q^-1 - q) cb
"""

_HOPF = """
[hopf]
det = ad - p^-1*q bc
S(a) = Dinv d
S(b) = -(p*q)^-1 Dinv b
S(c) = -p*q Dinv c
S(d) = Dinv a
"""

PRESETS = {
    "quantum-plane": _HEAD + _PLANE_B + "\n" + _TWO_PARAM_TWIST + _OPTIONS,
    "grassmann-plane": _HEAD + _GRASSMANN_B + "\n" + _TWO_PARAM_TWIST + _OPTIONS,
    "b-prime": _HEAD + _B_PRIME + "\n" + _TWO_PARAM_TWIST + _OPTIONS,
    "m-qp-2": _HEAD + _PLANE_B + "\n" + _TWO_PARAM_TWIST + _OPTIONS + _RELATIONS,
    "gl-qp-2": _HEAD + _PLANE_B + "\n" + _TWO_PARAM_TWIST + _OPTIONS + _RELATIONS + _HOPF,
}


def preset_text(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise SemanticError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}") from None


def load_spec(text):
    return parse_spec(text)


def specialize(spec, binding):
    """Substitute parameter values everywhere; the ParamSet is kept."""
    if not binding:
        return spec
    for name in binding:
        if name not in spec.params:
            raise SemanticError(f"--param names unknown parameter {name!r}")
    sub = lambda x: x.substitute(binding)  # noqa: E731
    nc = lambda x: NCPoly(x.alphabet, x.params, {w: sub(c) for w, c in x.items()})  # noqa: E731
    twist = TwistSpec(spec.twist.mode, tuple((p, sub(v)) for p, v in spec.twist.entries))
    return AlgebraSpec(
        spec.params,
        spec.dim,
        spec.B.substitute(binding),
        twist,
        spec.max_degree,
        spec.checks,
        tuple(nc(r) for r in spec.relations),
        None if spec.det is None else nc(spec.det),
        tuple((n, nc(v)) for n, v in spec.antipode),
    )

"""Plain-text group files.

::

    # PSL(2,7) on the projective line
    degree 8
    gen (1 2)(3 5)
    gen (2 3 4 6 8 7 5)

The degree line comes first; ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FormatError
from .permgrp.group import PermGroup
from .permgrp.perm import Permutation, format_cycles, parse_cycles


def parse_group_file(text: str, name: str | None = None) -> PermGroup:
    degree = None
    gens: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "degree":
            if degree is not None:
                raise FormatError(f"line {lineno}: second degree line")
            try:
                degree = int(rest)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad degree {rest!r}") from exc
            if degree < 1:
                raise FormatError(f"line {lineno}: degree must be positive")
        elif key == "gen":
            if degree is None:
                raise FormatError(f"line {lineno}: gen before degree")
            try:
                gens.append(Permutation.from_raw(parse_cycles(rest, degree)))
            except FormatError as exc:
                raise FormatError(f"line {lineno}: {exc}") from exc
        else:
            raise FormatError(f"line {lineno}: expected 'degree' or 'gen', got {key!r}")
    if degree is None:
        raise FormatError("missing degree line")
    return PermGroup(degree, gens, name=name)


def read_group_file(path: str | Path) -> PermGroup:
    p = Path(path)
    return parse_group_file(p.read_text(), name=p.stem)


def format_group_file(G: PermGroup, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"degree {G.degree}")
    lines.extend(f"gen {format_cycles(g.raw)}" for g in G.generators)
    return "\n".join(lines) + "\n"


def canonical_lines(text: str) -> list[str]:
    """Non-comment content with whitespace collapsed, for round-trip checks."""
    out = []
    for raw in text.splitlines():
        line = " ".join(raw.split("#", 1)[0].split())
        if line:
            out.append(line)
    return out

"""Plain-text code files.

Header line "q n k count", then count blocks of k lines with n
space-separated field-element indices each, blocks separated by blank lines.
Blocks are written in RREF so equal subspaces give equal blocks.
"""

from __future__ import annotations

from typing import Iterable, TextIO

from .gf import field_new
from .matrix import Mat, rref

__all__ = ["CodeFileError", "render", "parse", "write_code", "read_code"]


class CodeFileError(ValueError):
    pass


def render(q: int, n: int, k: int, mats: Iterable[Mat]) -> str:
    blocks = []
    for M in mats:
        if M.shape != (k, n):
            raise CodeFileError(f"matrix of shape {M.shape} in a k={k}, n={n} file")
        R = rref(M)
        blocks.append("\n".join(" ".join(str(x) for x in row) for row in R.data))
    head = f"{q} {n} {k} {len(blocks)}"
    return head + "\n\n" + "\n\n".join(blocks) + "\n" if blocks else head + "\n"


def parse(text: str) -> tuple[int, int, int, list[Mat]]:
    """Inverse of render; entries are checked against q, not re-reduced."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise CodeFileError("missing header")
    try:
        q, n, k, count = (int(x) for x in lines[0].split())
    except ValueError as e:
        raise CodeFileError(f"bad header {lines[0]!r}; expected 'q n k count'") from e
    F = field_new(q)
    rows = [ln.split() for ln in lines[1:] if ln.strip()]
    if len(rows) != k * count:
        raise CodeFileError(f"expected {count} blocks of {k} rows, found {len(rows)} rows")
    mats = []
    for b in range(count):
        block = []
        for ln in rows[b * k:(b + 1) * k]:
            if len(ln) != n:
                raise CodeFileError(f"block {b}: row of length {len(ln)}, expected {n}")
            vals = [int(x) for x in ln]
            if any(not 0 <= x < q for x in vals):
                raise CodeFileError(f"block {b}: entry outside GF({q})")
            block.append(vals)
        mats.append(Mat(F, block, n))
    return q, n, k, mats


def write_code(fh: TextIO, q: int, n: int, k: int, mats: Iterable[Mat]) -> None:
    fh.write(render(q, n, k, mats))


def read_code(fh: TextIO) -> tuple[int, int, int, list[Mat]]:
    return parse(fh.read())

"""Reading and writing wavelet coefficient files.

Text format, one record per block::

    # mra-coefficients v1
    # kmax: 8
    # universe: 1,2,3,4
    block -
    - 1
    block 1,2
    1>2 0.25
    2>1 -0.25

Blocks appear in canonical subset order (size, then lexicographic), entries in
lexicographic word order, values with 17 significant digits. `-` denotes the
empty set / empty word. When writing to a path, a JSON sidecar `<path>.meta`
records the table size and the item universe; on read, embedded header
comments take precedence, then the sidecar, then defaults inferred from the
blocks themselves.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import TextIO

import numpy as np

from . import _perm
from .errors import ParseError
from .transform import K_MAX_DEFAULT, WaveletCoefficients
from .words import Subset, Word, content

FORMAT_LINE = "# mra-coefficients v1"


def _format_subset(b: Subset) -> str:
    return ",".join(str(i) for i in b) if b else "-"


def _format_word(w: Word) -> str:
    return ">".join(str(i) for i in w) if w else "-"


def _parse_items(text: str, sep: str, line_no: int | None) -> tuple[int, ...]:
    if text == "-":
        return ()
    items = []
    for token in text.split(sep):
        token = token.strip()
        if not token:
            raise ParseError("empty item token", line_no)
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"non-integer item {token!r}", line_no) from None
        if value < 0:
            raise ParseError(f"negative item {value}", line_no)
        items.append(value)
    if len(set(items)) != len(items):
        raise ParseError(f"repeated item in {text!r}", line_no)
    return tuple(items)


def dumps_coefficients(
    x: WaveletCoefficients,
    k_max: int | None = None,
    universe: Subset | None = None,
) -> str:
    """Serialize coefficients, header comments included."""
    lines = [FORMAT_LINE]
    if k_max is not None:
        lines.append(f"# kmax: {k_max}")
    if universe is not None:
        lines.append(f"# universe: {_format_subset(tuple(sorted(universe)))}")
    for b, vec in x.blocks():
        lines.append(f"block {_format_subset(b)}")
        for word, value in sorted(x.block_function(b).items()):
            lines.append(f"{_format_word(word)} {value:.17g}")
    return "\n".join(lines) + "\n"


def loads_coefficients(
    text: str | TextIO,
) -> tuple[WaveletCoefficients, dict]:
    """Parse a coefficient document; returns the element and its metadata."""
    if not isinstance(text, str):
        text = text.read()
    meta: dict = {"k_max": None, "universe": None}
    blocks: dict[Subset, dict[Word, float]] = {}
    current: Subset | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.lower().startswith("kmax:"):
                try:
                    meta["k_max"] = int(body.split(":", 1)[1].strip())
                except ValueError:
                    raise ParseError("malformed kmax header", line_no) from None
            elif body.lower().startswith("universe:"):
                items = _parse_items(body.split(":", 1)[1].strip(), ",", line_no)
                meta["universe"] = tuple(sorted(items))
            continue
        if line.startswith("block"):
            token = line[len("block") :].strip()
            subset = tuple(sorted(_parse_items(token, ",", line_no)))
            if len(subset) == 1:
                raise ParseError(f"size-1 block {token!r}", line_no)
            if subset in blocks:
                raise ParseError(f"repeated block {token!r}", line_no)
            blocks[subset] = {}
            current = subset
            continue
        if current is None:
            raise ParseError("entry before any block line", line_no)
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'word value', got {line!r}", line_no)
        word = _parse_items(parts[0], ">", line_no)
        if content(word) != current:
            raise ParseError(f"word {parts[0]!r} does not rank {current}", line_no)
        if word in blocks[current]:
            raise ParseError(f"repeated word {parts[0]!r}", line_no)
        try:
            blocks[current][word] = float(parts[1])
        except ValueError:
            raise ParseError(f"bad value {parts[1]!r}", line_no) from None
    out = WaveletCoefficients()
    for subset, entries in blocks.items():
        k = len(subset)
        vec = np.zeros(1 if k == 0 else math.factorial(k))
        for word, value in entries.items():
            idx = 0 if k == 0 else _perm.rank_word(_perm.index_word(word, subset))
            vec[idx] = value
        out.set_block(subset, vec)
    return out, meta


def sidecar_path(path: str | Path) -> Path:
    return Path(str(path) + ".meta")


def write_coefficients(
    x: WaveletCoefficients,
    path: str | Path,
    k_max: int | None = None,
    universe: Subset | None = None,
) -> None:
    """Write a coefficient file plus its JSON metadata sidecar."""
    path = Path(path)
    path.write_text(dumps_coefficients(x, k_max=k_max, universe=universe))
    meta = {
        "format": "mra-coefficients",
        "version": 1,
        "k_max": k_max if k_max is not None else K_MAX_DEFAULT,
        "universe": sorted(universe) if universe is not None else None,
    }
    sidecar_path(path).write_text(json.dumps(meta, indent=2) + "\n")


def read_coefficients(path: str | Path) -> tuple[WaveletCoefficients, dict]:
    """Read a coefficient file, filling metadata from the sidecar if needed."""
    path = Path(path)
    x, meta = loads_coefficients(path.read_text())
    side = sidecar_path(path)
    if side.exists():
        try:
            stored = json.loads(side.read_text())
        except json.JSONDecodeError:
            raise ParseError(f"malformed sidecar {side}") from None
        if meta["k_max"] is None and stored.get("k_max") is not None:
            meta["k_max"] = int(stored["k_max"])
        if meta["universe"] is None and stored.get("universe"):
            meta["universe"] = tuple(sorted(int(i) for i in stored["universe"]))
    if meta["k_max"] is None:
        meta["k_max"] = K_MAX_DEFAULT
    if meta["universe"] is None:
        union: set[int] = set()
        for b, _ in x.blocks():
            union.update(b)
        meta["universe"] = tuple(sorted(union))
    return x, meta

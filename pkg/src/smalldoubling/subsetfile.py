"""Subset files: a ``n=<int>`` header, then one element per line.

Blank lines and ``#`` comments are ignored.  Elements use the text form
``gens:...;comms:...`` or a JSON object with ``gens``/``comms`` arrays.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .group import DimensionMismatch, GroupContext, format_element, parse_element
from .sumset import Subset


class SubsetFileError(ValueError):
    pass


def parse_subset_text(text: str, source: str = "<text>") -> Subset:
    ctx = None
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ctx is None:
            if not line.startswith("n="):
                raise SubsetFileError(f"{source}:{lineno}: expected header 'n=<int>', got {raw!r}")
            try:
                ctx = GroupContext(int(line[2:]))
            except ValueError as exc:
                raise SubsetFileError(f"{source}:{lineno}: bad header {raw!r}: {exc}") from None
            continue
        try:
            g = parse_element(line, ctx)
        except DimensionMismatch as exc:
            raise SubsetFileError(f"{source}:{lineno}: dimension mismatch: {exc}") from None
        except (ValueError, OverflowError) as exc:
            raise SubsetFileError(f"{source}:{lineno}: malformed element: {exc}") from None
        if g in seen:
            raise SubsetFileError(
                f"{source}:{lineno}: duplicate element {format_element(g)} (first on line {seen[g]})"
            )
        seen[g] = lineno
    if ctx is None:
        raise SubsetFileError(f"{source}: missing 'n=<int>' header")
    if not seen:
        raise SubsetFileError(f"{source}: no elements")
    return Subset.of(seen, ctx)


def parse_subset(path: Union[str, Path]) -> Subset:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SubsetFileError(f"{path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise SubsetFileError(f"{path}: not a text file") from None
    return parse_subset_text(text, str(path))


def emit_subset(S: Subset, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n={S.context.n}")
    lines.extend(format_element(g) for g in S)
    return "\n".join(lines) + "\n"

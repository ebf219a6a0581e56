"""Embedded golden families and serialization.

Three published exhaustive catalogs are shipped verbatim: the 6 base
families of (121,6,1), the 8 of (126,6,1) (short block {0,21,...,105}
implied), and the 4 classes of (169,7,1) together with their multiplier
automorphism counts.  The 121/126 listings already use the max-gap normal
form; the 169 listing is in plain lex-min form, so those records carry
normalized=False and are renormalized on ingest.

Two interchange formats: JSON lines (one record per line, fixed key
order) and the brace-set text notation "{{0, 7, 9}, {0, 11, 12}}".  Short
blocks are never serialized; they are implied by (v, k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from .canon import DifferenceFamily
from .modring import Block, classify


class ParseError(ValueError):
    """Malformed input; carries the offending position or line number."""

    def __init__(self, message: str, *, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        elif position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True)
class FamilyRecord:
    """A family as data: full blocks only, provenance string, and whether
    the blocks are already in normal form."""

    v: int
    k: int
    blocks: tuple[Block, ...]
    source: str = ""
    normalized: bool = False

    def to_family(self) -> DifferenceFamily:
        """Ingest into a DifferenceFamily, renormalizing the blocks."""
        return DifferenceFamily.from_blocks(classify(self.v, self.k), self.blocks)


_FAMILIES_121_6: tuple[tuple[Block, ...], ...] = (
    (
        (0, 25, 37, 55, 76, 99),
        (0, 52, 57, 72, 110, 113),
        (0, 54, 71, 81, 90, 97),
        (0, 73, 75, 79, 107, 108),
    ),
    (
        (0, 25, 45, 66, 79, 97),
        (0, 39, 46, 51, 83, 99),
        (0, 62, 63, 65, 71, 98),
        (0, 64, 74, 78, 93, 104),
    ),
    (
        (0, 26, 35, 54, 72, 97),
        (0, 40, 47, 52, 91, 113),
        (0, 42, 53, 57, 63, 80),
        (0, 56, 76, 89, 90, 92),
    ),
    (
        (0, 26, 41, 53, 73, 96),
        (0, 50, 52, 87, 111, 117),
        (0, 63, 72, 77, 105, 108),
        (0, 64, 75, 82, 83, 104),
    ),
    (
        (0, 29, 31, 56, 80, 93),
        (0, 40, 46, 50, 66, 98),
        (0, 45, 60, 67, 78, 79),
        (0, 47, 68, 77, 82, 85),
    ),
    (
        (0, 38, 39, 56, 61, 85),
        (0, 45, 51, 58, 66, 78),
        (0, 49, 53, 79, 90, 93),
        (0, 52, 54, 86, 102, 111),
    ),
)

_FAMILIES_126_6: tuple[tuple[Block, ...], ...] = (
    (
        (0, 26, 38, 56, 81, 103),
        (0, 40, 48, 68, 99, 102),
        (0, 41, 57, 93, 94, 107),
        (0, 80, 82, 87, 91, 97),
    ),
    (
        (0, 28, 46, 68, 85, 101),
        (0, 45, 52, 65, 95, 99),
        (0, 49, 59, 64, 78, 115),
        (0, 82, 88, 90, 91, 114),
    ),
    (
        (0, 30, 50, 69, 95, 123),
        (0, 34, 59, 77, 82, 94),
        (0, 64, 68, 79, 119, 120),
        (0, 80, 88, 90, 104, 117),
    ),
    (
        (0, 35, 36, 64, 89, 103),
        (0, 44, 60, 70, 77, 92),
        (0, 55, 57, 61, 102, 107),
        (0, 75, 83, 86, 95, 113),
    ),
    (
        (0, 36, 37, 47, 77, 108),
        (0, 38, 52, 64, 91, 97),
        (0, 46, 50, 66, 69, 94),
        (0, 68, 70, 75, 83, 92),
    ),
    (
        (0, 36, 37, 64, 93, 115),
        (0, 45, 52, 83, 106, 118),
        (0, 67, 71, 77, 101, 117),
        (0, 68, 82, 85, 87, 100),
    ),
    (
        (0, 36, 38, 48, 75, 95),
        (0, 52, 68, 81, 82, 86),
        (0, 53, 62, 70, 77, 103),
        (0, 55, 61, 80, 83, 115),
    ),
    (
        (0, 47, 48, 67, 91, 123),
        (0, 49, 66, 74, 111, 120),
        (0, 57, 61, 68, 90, 95),
        (0, 73, 85, 87, 103, 113),
    ),
)

_FAMILIES_169_7: tuple[tuple[Block, ...], ...] = (
    (
        (0, 1, 3, 11, 48, 65, 83),
        (0, 4, 13, 29, 43, 81, 141),
        (0, 5, 12, 36, 56, 78, 111),
        (0, 6, 21, 40, 67, 90, 116),
    ),
    (
        (0, 1, 3, 11, 48, 65, 83),
        (0, 4, 13, 29, 43, 81, 141),
        (0, 5, 12, 36, 56, 78, 111),
        (0, 6, 59, 85, 108, 135, 154),
    ),
    (
        (0, 1, 3, 11, 48, 65, 83),
        (0, 4, 13, 29, 43, 81, 141),
        (0, 5, 63, 96, 118, 138, 162),
        (0, 6, 21, 40, 67, 90, 116),
    ),
    (
        (0, 1, 3, 11, 48, 65, 83),
        (0, 4, 32, 92, 130, 144, 160),
        (0, 5, 63, 96, 118, 138, 162),
        (0, 6, 21, 40, 67, 90, 116),
    ),
)

# Multiplier automorphism counts of the (169,7) catalog, in listed order.
BUILTIN_MULTIPLIER_AUTOMORPHISMS: dict[tuple[int, int], tuple[int, ...]] = {
    (169, 7): (1, 1, 3, 3),
}

_BUILTIN: dict[tuple[int, int], tuple[FamilyRecord, ...]] = {}


def _install(v: int, k: int, families: tuple[tuple[Block, ...], ...], normalized: bool) -> None:
    n = len(families)
    autos = BUILTIN_MULTIPLIER_AUTOMORPHISMS.get((v, k))
    records = []
    for i, blocks in enumerate(families):
        source = f"builtin ({v},{k},1) family {i + 1}/{n}"
        if autos is not None:
            source += f", multiplier automorphisms {autos[i]}"
        records.append(
            FamilyRecord(v=v, k=k, blocks=blocks, source=source, normalized=normalized)
        )
    _BUILTIN[(v, k)] = tuple(records)


_install(121, 6, _FAMILIES_121_6, normalized=True)
_install(126, 6, _FAMILIES_126_6, normalized=True)
_install(169, 7, _FAMILIES_169_7, normalized=False)


def builtin_families(v: int, k: int) -> tuple[FamilyRecord, ...]:
    """The embedded catalog for (v, k); empty for anything not shipped."""
    return _BUILTIN.get((v, k), ())


def builtin_keys() -> tuple[tuple[int, int], ...]:
    return tuple(sorted(_BUILTIN))


def render_text(record: FamilyRecord) -> str:
    """The brace-set notation, e.g. "{{0, 7, 9}, {0, 11, 12}}"."""
    inner = ", ".join("{" + ", ".join(str(x) for x in b) + "}" for b in record.blocks)
    return "{" + inner + "}"


def parse_text(
    s: str, v: int, k: int, *, source: str = "parsed", normalized: bool = False
) -> FamilyRecord:
    """Parse the brace-set notation; v and k travel alongside because the
    notation does not carry them."""
    n = len(s)

    def skip_ws(i: int) -> int:
        while i < n and s[i].isspace():
            i += 1
        return i

    def expect(i: int, ch: str) -> int:
        i = skip_ws(i)
        if i >= n or s[i] != ch:
            raise ParseError(f"expected '{ch}'", position=i)
        return i + 1

    blocks: list[Block] = []
    i = expect(0, "{")
    i = skip_ws(i)
    if i < n and s[i] == "}":
        i += 1
    else:
        while True:
            i = expect(i, "{")
            elems: list[int] = []
            while True:
                i = skip_ws(i)
                j = i
                if j < n and s[j] == "-":
                    j += 1
                while j < n and s[j].isdigit():
                    j += 1
                if j == i or (j == i + 1 and s[i] == "-"):
                    raise ParseError("expected an integer", position=i)
                x = int(s[i:j])
                if not 0 <= x < v:
                    raise ParseError(f"element {x} out of range [0, {v})", position=i)
                elems.append(x)
                i = skip_ws(j)
                if i < n and s[i] == ",":
                    i += 1
                    continue
                break
            i = expect(i, "}")
            if len(elems) != k:
                raise ParseError(
                    f"block has {len(elems)} elements, expected {k}", position=i
                )
            blocks.append(tuple(elems))
            i = skip_ws(i)
            if i < n and s[i] == ",":
                i += 1
                continue
            break
        i = expect(i, "}")
    i = skip_ws(i)
    if i != n:
        raise ParseError("trailing characters after family", position=i)
    return FamilyRecord(v=v, k=k, blocks=tuple(blocks), source=source, normalized=normalized)


def _record_to_obj(r: FamilyRecord) -> dict:
    # key order fixed for byte-stable output
    return {
        "v": r.v,
        "k": r.k,
        "blocks": [list(b) for b in r.blocks],
        "source": r.source,
        "normalized": r.normalized,
    }


def _obj_to_record(obj: object, line: int) -> FamilyRecord:
    if not isinstance(obj, dict):
        raise ParseError("record is not a JSON object", line=line)
    for key in ("v", "k", "blocks", "source", "normalized"):
        if key not in obj:
            raise ParseError(f"missing field '{key}'", line=line)
    v, k = obj["v"], obj["k"]
    if not isinstance(v, int) or not isinstance(k, int):
        raise ParseError("fields 'v' and 'k' must be integers", line=line)
    if not isinstance(obj["source"], str) or not isinstance(obj["normalized"], bool):
        raise ParseError("'source' must be a string and 'normalized' a bool", line=line)
    raw = obj["blocks"]
    if not isinstance(raw, list):
        raise ParseError("'blocks' must be a list of blocks", line=line)
    blocks: list[Block] = []
    for b in raw:
        if not isinstance(b, list) or not all(isinstance(x, int) for x in b):
            raise ParseError(f"block {b!r} is not a list of integers", line=line)
        if len(b) != k:
            raise ParseError(f"block {b} has size {len(b)}, expected {k}", line=line)
        for x in b:
            if not 0 <= x < v:
                raise ParseError(f"element {x} out of range [0, {v})", line=line)
        blocks.append(tuple(b))
    return FamilyRecord(
        v=v, k=k, blocks=tuple(blocks), source=obj["source"], normalized=obj["normalized"]
    )


def write_jsonl(records: Iterable[FamilyRecord], dest: str | Path | IO[str]) -> None:
    """One record per line, UTF-8, fixed key order."""
    if hasattr(dest, "write"):
        for r in records:
            dest.write(json.dumps(_record_to_obj(r)) + "\n")
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            write_jsonl(records, fh)


def read_jsonl(src: str | Path | IO[str]) -> list[FamilyRecord]:
    """Read records written by write_jsonl; errors name the failing line."""
    if hasattr(src, "read"):
        lines = src.read().splitlines()
    else:
        lines = Path(src).read_text(encoding="utf-8").splitlines()
    records: list[FamilyRecord] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        records.append(_obj_to_record(obj, lineno))
    return records

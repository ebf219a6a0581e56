"""Residue arithmetic over Z_v for cyclic (v, k, 1) difference families.

A (v, k, 1) difference family is a collection of k-element blocks of Z_v
whose pairwise differences cover every nonzero residue exactly once.  Only
two parameter shapes admit one:

* v = 1 (mod k(k-1)):  t = v // (k(k-1)) full blocks cover all v - 1
  nonzero residues, since t*k*(k-1) = v - 1.
* v = k (mod k(k-1)):  the same t full blocks are joined by the fixed
  short block {0, v/k, 2v/k, ...}.  Its translate orbit has length v/k
  only and covers every pair at distance a multiple of v/k structurally,
  so the full blocks must cover exactly the remaining residues
  (t*k*(k-1) = v - k).

Everything else is inadmissible.  Blocks are plain tuples of residues and
difference bookkeeping is a flat 0/1 table over [0, v), which is what the
search loops hammer on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

Block = tuple[int, ...]


class InvalidParametersError(ValueError):
    """Parameter pair outside the supported shape (v < k or k < 3), or an
    operation applied to parameters that do not support it."""


class CollisionError(ValueError):
    """A difference would be covered twice; carries the first conflict."""

    def __init__(self, difference: int, message: str | None = None):
        self.difference = difference
        super().__init__(message or f"difference {difference} already covered")


class TrackerUnderflowError(RuntimeError):
    """Removal of a difference that is not currently covered.  Unlike a
    collision this is a programming error, not a search dead end."""


class Admissibility(enum.Enum):
    FULL_ONLY = "full-only"
    WITH_SHORT_BLOCK = "short-block"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class Parameters:
    """Search parameters (v, k) with the derived full-block count t."""

    v: int
    k: int
    t: int
    admissibility: Admissibility


def classify(v: int, k: int) -> Parameters:
    """Classify (v, k) by the residue of v mod k(k-1) and derive t."""
    if k < 3:
        raise InvalidParametersError(f"block size k must be at least 3, got {k}")
    if v < k:
        raise InvalidParametersError(f"group order v must be at least k={k}, got {v}")
    period = k * (k - 1)
    residue = v % period
    if residue == 1:
        adm = Admissibility.FULL_ONLY
    elif residue == k:
        adm = Admissibility.WITH_SHORT_BLOCK
    else:
        adm = Admissibility.INADMISSIBLE
    return Parameters(v=v, k=k, t=v // period, admissibility=adm)


def short_block(p: Parameters) -> Block:
    """The fixed block {0, v/k, ..., (k-1)v/k}; exists only when v = k mod k(k-1)."""
    if p.admissibility is not Admissibility.WITH_SHORT_BLOCK:
        raise InvalidParametersError(
            f"(v,k)=({p.v},{p.k}) has no short block ({p.admissibility.value})"
        )
    step = p.v // p.k
    return tuple(step * j for j in range(p.k))


def short_deltas(p: Parameters) -> tuple[int, ...]:
    """The nonzero multiples of v/k, i.e. the differences the short orbit
    covers; empty when the parameters carry no short block."""
    if p.admissibility is not Admissibility.WITH_SHORT_BLOCK:
        return ()
    step = p.v // p.k
    return tuple(step * j for j in range(1, p.k))


def required_differences(p: Parameters) -> frozenset[int]:
    """Residues the full blocks must cover exactly once between them."""
    banned = set(short_deltas(p))
    return frozenset(d for d in range(1, p.v) if d not in banned)


def delta_set(block: Sequence[int], v: int) -> tuple[int, ...]:
    """All k(k-1) ordered-pair differences of a block mod v, sorted.

    Duplicates are kept: a block is usable in a (v, k, 1) family only if
    there are none, but that judgement belongs to the callers.
    """
    out = []
    for i, x in enumerate(block):
        for j, y in enumerate(block):
            if i != j:
                out.append((x - y) % v)
    out.sort()
    return tuple(out)


def forbidden_mask(p: Parameters) -> bytearray:
    """A fresh 0/1 table over [0, v) with the short-block differences
    pre-marked.  The search loops index it directly."""
    used = bytearray(p.v)
    for d in short_deltas(p):
        used[d] = 1
    return used


class DiffTracker:
    """Set of covered nonzero differences with O(1) membership.

    Differences always enter in +/- pairs; for even v the residue v/2 is
    its own partner.  Residues passed as ``forbidden`` (the short block's
    multiples) are marked at construction.
    """

    __slots__ = ("v", "used", "count")

    def __init__(self, v: int, forbidden: Iterable[int] = ()):
        self.v = v
        self.used = bytearray(v)
        self.count = 0
        for d in forbidden:
            d %= v
            if d and not self.used[d]:
                self.used[d] = 1
                self.count += 1

    def __contains__(self, d: int) -> bool:
        return bool(self.used[d % self.v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffTracker):
            return NotImplemented
        return self.v == other.v and self.used == other.used

    def snapshot(self) -> frozenset[int]:
        return frozenset(d for d in range(1, self.v) if self.used[d])

    def add_block(self, block: Sequence[int]) -> None:
        """Cover every difference of ``block``.  Atomic: on the first
        conflict (reuse or internal repeat) nothing is changed and a
        CollisionError naming the conflicting difference is raised."""
        v = self.v
        used = self.used
        marked: list[int] = []
        n = len(block)
        for i in range(n):
            for j in range(i + 1, n):
                d = (block[j] - block[i]) % v
                nd = v - d if d else 0
                if d == 0 or used[d] or used[nd]:
                    for m in marked:
                        used[m] = 0
                        used[v - m] = 0
                        self.count -= 1 if m == v - m else 2
                    if d == 0:
                        raise CollisionError(0, f"block {tuple(block)} repeats a residue")
                    raise CollisionError(d if used[d] else nd)
                used[d] = 1
                used[nd] = 1
                self.count += 1 if d == nd else 2
                marked.append(d)

    def remove_block(self, block: Sequence[int]) -> None:
        """Uncover every difference of ``block``; each must be covered."""
        v = self.v
        used = self.used
        n = len(block)
        ds: list[int] = []
        seen: set[int] = set()
        for i in range(n):
            for j in range(i + 1, n):
                d = (block[j] - block[i]) % v
                if d == 0 or not used[d] or d in seen:
                    raise TrackerUnderflowError(
                        f"difference {d} of block {tuple(block)} is not removable"
                    )
                seen.add(d)
                seen.add(v - d)
                ds.append(d)
        for d in ds:
            used[d] = 0
            used[v - d] = 0
            self.count -= 1 if d == v - d else 2

    def try_extend(self, e: int, elems: Sequence[int], n: int | None = None) -> bool:
        """Mark the differences of ``e`` against ``elems[:n]``.  On any
        collision (including repeats within the batch) roll back and
        return False."""
        v = self.v
        used = self.used
        if n is None:
            n = len(elems)
        for idx in range(n):
            d = (e - elems[idx]) % v
            nd = v - d
            if d == 0 or used[d] or used[nd]:
                for jdx in range(idx):
                    d2 = (e - elems[jdx]) % v
                    used[d2] = 0
                    used[v - d2] = 0
                    self.count -= 1 if d2 == v - d2 else 2
                return False
            used[d] = 1
            used[nd] = 1
            self.count += 1 if d == nd else 2
        return True

    def retract(self, e: int, elems: Sequence[int], n: int | None = None) -> None:
        """Undo a successful try_extend with the same arguments."""
        v = self.v
        used = self.used
        if n is None:
            n = len(elems)
        for idx in range(n):
            d = (e - elems[idx]) % v
            if not used[d]:
                raise TrackerUnderflowError(f"difference {d} is not removable")
            used[d] = 0
            used[v - d] = 0
            self.count -= 1 if d == v - d else 2

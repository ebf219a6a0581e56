"""Block normal forms, mirroring, and multiplier equivalence of families.

A block is stored translated so that 0 comes first and the largest
circular gap sits immediately after it; gap ties pick the
lexicographically least rotation.  All v translates of a block then
collapse to one representative.

Mirroring a normalized block (0, b2, ...) maps x -> (b2 - x) mod v and
renormalizes.  It is negation composed with a translation, so it fixes 0
and b2, preserves the difference multiset, and is an involution.

Two families are equivalent when some unit a of Z_v* maps one onto the
other up to per-block translation and block order.  Since negation is a
unit, mirroring every block at once never leaves the equivalence class;
that is why expanding a family only needs 2^(t-1) per-block mirror
combinations.  canonical_form takes the minimum image over the whole unit
group, so equal keys decide equivalence outright.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .modring import Admissibility, Block, Parameters, short_block

CanonicalKey = tuple[Block, ...]


@lru_cache(maxsize=None)
def units(v: int) -> tuple[int, ...]:
    """The unit group of Z_v in increasing order."""
    return tuple(a for a in range(1, v) if math.gcd(a, v) == 1)


@lru_cache(maxsize=None)
def unit_generators(v: int) -> tuple[int, ...]:
    """A small generating set for Z_v*, grown greedily by subgroup closure."""
    all_units = units(v)
    gens: list[int] = []
    span = {1}
    for a in all_units:
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            y = x * a % v
            if y not in span:
                span.add(y)
                frontier.append(y)
        if len(span) == len(all_units):
            break
    return tuple(gens)


def _normal(xs: list[int], v: int) -> Block:
    """Normal form of a sorted duplicate-free residue list (hot path)."""
    k = len(xs)
    gmax = v - xs[-1] + xs[0]
    starts = [k - 1]
    for i in range(k - 1):
        g = xs[i + 1] - xs[i]
        if g > gmax:
            gmax = g
            starts = [i]
        elif g == gmax:
            starts.append(i)
    if len(starts) == 1:
        i = starts[0]
        o = xs[i]
        return tuple(xs[m] - o for m in range(i, k)) + tuple(
            xs[m] + v - o for m in range(i)
        )
    best: Block | None = None
    for i in starts:
        o = xs[i]
        cand = tuple(xs[m] - o for m in range(i, k)) + tuple(
            xs[m] + v - o for m in range(i)
        )
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def normalize_block(elements: Iterable[int], v: int) -> Block:
    """Translate a set of residues into its normal form.

    The result starts with 0 and puts the largest circular gap first;
    among rotations tied on that gap the lexicographically least tuple
    wins.  Translated inputs normalize identically.
    """
    xs = sorted(x % v for x in elements)
    k = len(xs)
    if k == 0:
        raise ValueError("cannot normalize an empty block")
    for i in range(1, k):
        if xs[i] == xs[i - 1]:
            raise ValueError(f"duplicate residue {xs[i]} in block")
    return _normal(xs, v)


def is_normalized(block: Block, v: int) -> bool:
    return normalize_block(block, v) == block


def mirror_block(block: Block, v: int) -> Block:
    """Mirror a normalized block: x -> (b2 - x) mod v, renormalized.

    Keeps the first two elements 0 and b2, preserves the difference
    multiset, and applied twice gives the block back.
    """
    b2 = block[1]
    return normalize_block([(b2 - x) % v for x in block], v)


@dataclass(frozen=True)
class DifferenceFamily:
    """t normalized full blocks in increasing order; the short block, when
    the parameters call for one, stays implicit."""

    params: Parameters
    full_blocks: tuple[Block, ...]

    def __post_init__(self) -> None:
        p = self.params
        if len(self.full_blocks) != p.t:
            raise ValueError(
                f"expected {p.t} full blocks for (v,k)=({p.v},{p.k}), "
                f"got {len(self.full_blocks)}"
            )
        for b in self.full_blocks:
            if len(b) != p.k:
                raise ValueError(f"block {b} has size {len(b)}, expected {p.k}")
        for a, b in zip(self.full_blocks, self.full_blocks[1:]):
            if a >= b:
                raise ValueError("full blocks must be strictly increasing")

    @classmethod
    def from_blocks(
        cls, params: Parameters, blocks: Iterable[Iterable[int]], *, renormalize: bool = True
    ) -> "DifferenceFamily":
        if renormalize:
            bs = tuple(sorted(normalize_block(b, params.v) for b in blocks))
        else:
            bs = tuple(tuple(b) for b in blocks)
        return cls(params, bs)

    @property
    def short_block(self) -> Block | None:
        if self.params.admissibility is Admissibility.WITH_SHORT_BLOCK:
            return short_block(self.params)
        return None


def _scaled_image(blocks: tuple[Block, ...], a: int, v: int) -> CanonicalKey:
    """Sorted normalized blocks of the family image under the unit a.

    Skips duplicate validation: multiplying a duplicate-free block by a
    unit keeps its residues distinct.
    """
    return tuple(sorted(_normal(sorted(a * x % v for x in b), v) for b in blocks))


def apply_multiplier(f: DifferenceFamily, a: int) -> DifferenceFamily:
    """The image of a family under the unit a, blocks renormalized and sorted."""
    return DifferenceFamily(f.params, _scaled_image(f.full_blocks, a, f.params.v))


def mirror_expand(f: DifferenceFamily) -> list[DifferenceFamily]:
    """All 2^(t-1) per-block mirror combinations, the first block held fixed.

    Mirroring every block at once is the negation unit in disguise, so
    only the remaining t-1 choices can produce new classes.  Output is
    sorted; repeats appear only when some block is its own mirror.
    """
    blocks = f.full_blocks
    t = len(blocks)
    if t <= 1:
        return [f]
    v = f.params.v
    rest = blocks[1:]
    flipped = [mirror_block(b, v) for b in rest]
    out = []
    for bits in range(1 << (t - 1)):
        combo = [blocks[0]]
        for i in range(t - 1):
            combo.append(flipped[i] if bits >> i & 1 else rest[i])
        combo.sort()
        out.append(DifferenceFamily(f.params, tuple(combo)))
    out.sort(key=lambda fam: fam.full_blocks)
    return out


def expansion_class_keys(f: DifferenceFamily) -> set[CanonicalKey]:
    """Canonical keys of all 2^(t-1) mirror expansions of f in one sweep.

    Scaling commutes with mirroring (both are affine maps composed with
    normalization), so each unit's normalized block images and their
    mirrors are computed once and reassembled per expansion, instead of
    renormalizing every block of every expansion under every unit.
    Set-equal to {canonical_form(m) for m in mirror_expand(f)}.
    """
    blocks = f.full_blocks
    t = len(blocks)
    if t <= 1:
        return {canonical_form(f)}
    v = f.params.v
    images = []
    for a in units(v):
        plain = [_normal(sorted(a * x % v for x in b), v) for b in blocks]
        flipped = [mirror_block(b, v) for b in plain]
        images.append((plain, flipped))
    keys: set[CanonicalKey] = set()
    for bits in range(1 << (t - 1)):
        best: CanonicalKey | None = None
        for plain, flipped in images:
            fam = [plain[0]]
            for i in range(1, t):
                fam.append(flipped[i] if bits >> (i - 1) & 1 else plain[i])
            fam.sort()
            img = tuple(fam)
            if best is None or img < best:
                best = img
        assert best is not None
        keys.add(best)
    return keys


def canonical_form(f: DifferenceFamily) -> CanonicalKey:
    """Least multiplier image of the family.

    Equal keys decide multiplier equivalence by construction: the minimum
    is taken over the full unit group, per-block translation is absorbed
    by normalization and block order by sorting.
    """
    v = f.params.v
    blocks = f.full_blocks
    best: CanonicalKey | None = None
    for a in units(v):
        img = _scaled_image(blocks, a, v)
        if best is None or img < best:
            best = img
    assert best is not None
    return best


def canonical_family(f: DifferenceFamily) -> DifferenceFamily:
    """The representative family whose blocks are the canonical key."""
    return DifferenceFamily(f.params, canonical_form(f))


def dedup(families: Iterable[DifferenceFamily]) -> list[DifferenceFamily]:
    """One representative per multiplier-equivalence class, sorted by key.

    The representative is the canonical key itself, so the result does not
    depend on input order.
    """
    reps: dict[CanonicalKey, DifferenceFamily] = {}
    for f in families:
        key = canonical_form(f)
        if key not in reps:
            reps[key] = DifferenceFamily(f.params, key)
    return [reps[key] for key in sorted(reps)]


def multiplier_automorphisms(f: DifferenceFamily) -> int:
    """Number of units mapping the family to itself (identity included),
    with per-block translations absorbed by normalization and block order
    ignored.  Always at least 1 and a divisor of phi(v)."""
    v = f.params.v
    own = tuple(sorted(normalize_block(b, v) for b in f.full_blocks))
    count = 0
    for a in units(v):
        if _scaled_image(own, a, v) == own:
            count += 1
    return count


def orbit_class_keys(families: Iterable[DifferenceFamily]) -> set[CanonicalKey]:
    """Canonical keys of a collection closed under the multiplier action.

    Instead of minimizing over the whole unit group per family, families
    are grouped into orbits by following a few group generators, and each
    orbit contributes its least member.  For closed collections (e.g. a
    complete enumeration) this equals {canonical_form(f)}; a collection
    that is not closed raises ValueError.
    """
    fams = list(families)
    if not fams:
        return set()
    v = fams[0].params.v
    gens = unit_generators(v)
    keys = [f.full_blocks for f in fams]
    index: dict[CanonicalKey, int] = {}
    for i, key in enumerate(keys):
        index.setdefault(key, i)

    parent = list(range(len(fams)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, f in enumerate(fams):
        if f.params.v != v:
            raise ValueError("families must share parameters")
        for a in gens:
            img = _scaled_image(f.full_blocks, a, v)
            j = index.get(img)
            if j is None:
                raise ValueError(
                    "collection is not closed under the multiplier action "
                    f"(image under {a} is missing)"
                )
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj

    best: dict[int, CanonicalKey] = {}
    for i, key in enumerate(keys):
        r = find(i)
        if r not in best or key < best[r]:
            best[r] = key
    return set(best.values())

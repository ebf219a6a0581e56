"""Independent brute-force enumerator used to certify the pruned engine.

Plain depth-first search over raw increasing tuples starting at 0: the
only pruning is the difference-collision test, and a completed block is
kept exactly when it already equals its own normal form.  No gap-bound
reasoning, no difference-multiset deduplication, no mirror bookkeeping;
completeness is immediate from the construction, which is the whole point.
The engine's canonical-class sets are compared against this module's on
every small admissible instance.

The v cap exists only to keep accidental runtimes bounded; patient
callers can raise it.
"""

from __future__ import annotations

from .canon import DifferenceFamily, dedup, normalize_block, orbit_class_keys
from .modring import (
    Admissibility,
    Block,
    InvalidParametersError,
    Parameters,
    short_deltas,
)

DEFAULT_CAP = 60


class CapExceededError(ValueError):
    """The requested order is beyond the configured brute-force cap."""


def _check(params: Parameters, cap: int) -> None:
    if params.admissibility is Admissibility.INADMISSIBLE:
        period = params.k * (params.k - 1)
        raise InvalidParametersError(
            f"(v,k)=({params.v},{params.k}) is inadmissible: "
            f"{params.v} mod {period} = {params.v % period}"
        )
    if params.v > cap:
        raise CapExceededError(
            f"v={params.v} exceeds the oracle cap {cap}; the unpruned search "
            f"grows quickly, pass a larger cap to run it anyway"
        )


def oracle_enumerate(params: Parameters, cap: int = DEFAULT_CAP) -> list[DifferenceFamily]:
    """Every family with normalized blocks in increasing lexicographic
    order, in deterministic order."""
    _check(params, cap)
    v, k, t = params.v, params.k, params.t
    if t == 0:
        return [DifferenceFamily(params, ())]
    pair = [0] * v
    for d in range(1, v):
        pair[d] = (1 << d) | (1 << (v - d))
    mask0 = 0
    for d in short_deltas(params):
        mask0 |= 1 << d
    cur = [0] * k
    blocks: list[Block] = []
    out: list[DifferenceFamily] = []

    def next_block(slot: int, floor: Block | None, mask: int) -> None:
        def fill(pos: int, tight: bool, m: int) -> None:
            if pos == k:
                if tight:
                    return  # equal to the previous block, not strictly greater
                cand = tuple(cur)
                if normalize_block(cand, v) != cand:
                    return
                blocks.append(cand)
                if slot + 1 == t:
                    out.append(DifferenceFamily(params, tuple(blocks)))
                else:
                    next_block(slot + 1, cand, m)
                    # the deeper slot reused cur; restore for the loops above
                    for i in range(1, k):
                        cur[i] = cand[i]
                blocks.pop()
                return
            lo = cur[pos - 1] + 1
            if tight and floor[pos] > lo:
                lo = floor[pos]
            hi = v - k + pos
            for e in range(lo, hi + 1):
                mm = m
                for idx in range(pos):
                    pm = pair[e - cur[idx]]
                    if mm & pm:
                        break
                    mm |= pm
                else:
                    cur[pos] = e
                    fill(pos + 1, tight and e == floor[pos], mm)

        fill(1, floor is not None, mask)

    next_block(0, None, mask0)
    return out


def oracle_classes(params: Parameters, cap: int = DEFAULT_CAP) -> int:
    """Number of multiplier-equivalence classes among all families, i.e.
    len(dedup(oracle_enumerate(params))).

    Computed through orbit grouping: the complete enumeration is closed
    under the multiplier action, so orbit_class_keys yields the same class
    set as family-by-family canonicalization, only much faster.
    """
    return len(orbit_class_keys(oracle_enumerate(params, cap)))


def oracle_class_keys(params: Parameters, cap: int = DEFAULT_CAP):
    """Canonical keys of all classes; set-equal to
    {canonical_form(f) for f in oracle_enumerate(params)}."""
    return orbit_class_keys(oracle_enumerate(params, cap))

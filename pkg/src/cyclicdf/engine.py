"""The pruned exhaustive search for base difference families.

Depth-first search over normalized blocks in lexicographic order.  Within
a family the blocks are strictly increasing, which pins down their second
elements: every block covers the difference b2 between its first two
members, so distinct blocks have distinct b2 and block order is b2 order.
A candidate element is rejected the moment it repeats a difference, and a
completed candidate block whose difference multiset was already expanded
at the same search node is skipped:

* mirror-only mode drops every such repeat.  Mirroring a block preserves
  its difference multiset, so the dropped subtrees are recovered by the
  mirror expansion afterwards.  This assumes equal multisets only ever
  come from mirror images.
* full-delta mode (the default) only drops a candidate whose mirror image
  was already expanded at the node.  Homometric blocks (equal multisets
  without being mirrors) then still get their own subtree, closing the
  completeness gap at the cost of some repeated work.

Base families are the pre-mirroring representatives; compose with
mirror_expand + dedup for the classification.  The search is partitioned
by the second element of the first block: the subtrees are disjoint, so
tasks run independently and concatenating their sorted results in b2
order reproduces the sequential output bit for bit, whatever the worker
count.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .canon import DifferenceFamily, mirror_block, normalize_block
from .modring import (
    Admissibility,
    Block,
    InvalidParametersError,
    Parameters,
    delta_set,
    short_deltas,
)


class DedupMode(enum.Enum):
    MIRROR_ONLY = "mirror-only"
    FULL_DELTA_CLASS = "full-delta"


class SearchWorkerError(RuntimeError):
    """A search task failed; the message names the task."""


@dataclass(frozen=True)
class SearchTask:
    """One unit of parallel work: all families whose first block has the
    given second element."""

    b2: int
    params: Parameters


@dataclass
class SearchConfig:
    thread_count: int = 1
    dedup_mode: DedupMode = DedupMode.FULL_DELTA_CLASS
    # sink receiving each base family as it is emitted (merge order)
    emit: Callable[[DifferenceFamily], None] | None = None
    # sink receiving (task, families_found, nodes_visited) per finished task
    progress: Callable[[SearchTask, int, int], None] | None = None
    # debugging hook: (suppressed_block, retained_block) at the same node;
    # only honored on in-process runs (thread_count == 1 or enumerate_families)
    on_suppress: Callable[[Block, Block], None] | None = None


def _require_admissible(p: Parameters) -> None:
    if p.admissibility is Admissibility.INADMISSIBLE:
        period = p.k * (p.k - 1)
        raise InvalidParametersError(
            f"(v,k)=({p.v},{p.k}) is inadmissible: {p.v} mod {period} = {p.v % period}, "
            f"admissible residues are 1 and {p.k}"
        )


def b2_range(p: Parameters) -> range:
    """Feasible second elements of a normalized block: the first gap is the
    largest of k gaps summing to v, so at least ceil(v/k); the remaining
    k-2 elements need room above it, so at most v-k+1."""
    lo = -(-p.v // p.k)
    return range(lo, p.v - p.k + 2)


def partition(p: Parameters) -> list[SearchTask]:
    """One independent task per feasible b2 of the first block."""
    _require_admissible(p)
    if p.t == 0:
        return []
    return [SearchTask(b2=b2, params=p) for b2 in b2_range(p)]


def _search_task(
    params: Parameters,
    first_b2: int,
    mode: DedupMode,
    on_suppress: Callable[[Block, Block], None] | None = None,
) -> tuple[list[tuple[Block, ...]], int]:
    """DFS for every base family whose first block starts (0, first_b2).

    Returns the families (as tuples of blocks, lexicographic order) and the
    number of accepted element placements.
    """
    v, k, t = params.v, params.k, params.t
    mirror_only = mode is DedupMode.MIRROR_ONLY
    # a pair-of-differences bitmask per residue; collision test and marking
    # become single integer operations, and backtracking is free because
    # masks are passed down by value
    pair = [0] * v
    for d in range(1, v):
        pair[d] = (1 << d) | (1 << (v - d))
    mask0 = 0
    for d in short_deltas(params):
        mask0 |= 1 << d
    cur = [0] * k
    blocks: list[Block] = []
    found: list[tuple[Block, ...]] = []
    nodes = 0
    b2_hi = v - k + 1

    def tie_ok(cand: Block) -> bool:
        # the first gap is maximal by construction; a rotation can compete
        # only when another gap equals it, then the lex-least rotation wins
        b2 = cand[1]
        tie = v - cand[k - 1] == b2
        if not tie:
            for i in range(1, k - 1):
                if cand[i + 1] - cand[i] == b2:
                    tie = True
                    break
        if not tie:
            return True
        return normalize_block(cand, v) == cand

    def fill(slot: int, pos: int, b2: int, memo: dict, mask: int) -> None:
        nonlocal nodes
        if pos == k:
            cand = tuple(cur)
            if not tie_ok(cand):
                return
            key = delta_set(cand, v)
            if mirror_only:
                rep = memo.get(key)
                if rep is not None:
                    if on_suppress is not None:
                        on_suppress(cand, rep)
                    return
                memo[key] = cand
            else:
                reps = memo.get(key)
                if reps is None:
                    memo[key] = [cand]
                else:
                    twin = mirror_block(cand, v)
                    if twin in reps:
                        if on_suppress is not None:
                            on_suppress(cand, twin)
                        return
                    reps.append(cand)
            blocks.append(cand)
            if slot + 1 == t:
                found.append(tuple(blocks))
            else:
                next_blocks(slot + 1, cand[1] + 1, mask)
                # the deeper slot reused cur; the candidate loops up the
                # stack need this block's elements back
                for i in range(1, k):
                    cur[i] = cand[i]
            blocks.pop()
            return
        prev = cur[pos - 1]
        lo = prev + 1
        # every remaining gap is at most b2, so the last element can reach
        # at most its value plus (k-pos)*b2; it must reach v - b2
        reach = v - (k - pos) * b2
        if reach > lo:
            lo = reach
        hi = prev + b2
        cap = v - k + pos
        if cap < hi:
            hi = cap
        for e in range(lo, hi + 1):
            m = mask
            for idx in range(pos):
                pm = pair[e - cur[idx]]
                if m & pm:
                    break
                m |= pm
            else:
                nodes += 1
                cur[pos] = e
                fill(slot, pos + 1, b2, memo, m)

    def next_blocks(slot: int, min_b2: int, mask: int) -> None:
        nonlocal nodes
        memo: dict = {}
        lo = first_b2 if slot == 0 else min_b2
        hi = first_b2 if slot == 0 else b2_hi
        for b2 in range(lo, hi + 1):
            pm = pair[b2]
            if mask & pm:
                continue
            nodes += 1
            cur[1] = b2
            fill(slot, 2, b2, memo, mask | pm)

    next_blocks(0, first_b2, mask0)
    return found, nodes


def run_task(
    task: SearchTask, cfg: SearchConfig | None = None
) -> list[DifferenceFamily]:
    """Run a single partition task to completion."""
    cfg = cfg or SearchConfig()
    found, nodes = _search_task(task.params, task.b2, cfg.dedup_mode, cfg.on_suppress)
    families = [DifferenceFamily(task.params, blocks) for blocks in found]
    if cfg.progress is not None:
        cfg.progress(task, len(families), nodes)
    if cfg.emit is not None:
        for f in families:
            cfg.emit(f)
    return families


def enumerate_families(
    p: Parameters, cfg: SearchConfig | None = None
) -> list[DifferenceFamily]:
    """All base families of (v, k, 1) in lexicographic order.

    Sequential reference implementation: tasks run one after another in b2
    order, so the output is independent of any parallel configuration.
    """
    cfg = cfg or SearchConfig()
    _require_admissible(p)
    if p.t == 0:
        fam = DifferenceFamily(p, ())
        if cfg.emit is not None:
            cfg.emit(fam)
        return [fam]
    out: list[DifferenceFamily] = []
    for task in partition(p):
        found, nodes = _search_task(p, task.b2, cfg.dedup_mode, cfg.on_suppress)
        families = [DifferenceFamily(p, blocks) for blocks in found]
        if cfg.progress is not None:
            cfg.progress(task, len(families), nodes)
        for f in families:
            if cfg.emit is not None:
                cfg.emit(f)
            out.append(f)
    return out


def _task_worker(args: tuple[Parameters, int, str]) -> tuple[int, list[tuple[Block, ...]], int]:
    params, b2, mode_value = args
    found, nodes = _search_task(params, b2, DedupMode(mode_value), None)
    return b2, found, nodes


def run_parallel(
    p: Parameters, cfg: SearchConfig | None = None
) -> list[DifferenceFamily]:
    """Same output as enumerate_families for every thread_count.

    Tasks are distributed over worker processes; results are merged in b2
    order, which is already the lexicographic order of the families.  A
    failing worker aborts the run with a diagnostic naming its task.
    """
    cfg = cfg or SearchConfig()
    _require_admissible(p)
    if cfg.thread_count < 1:
        raise InvalidParametersError(f"thread_count must be positive, got {cfg.thread_count}")
    if cfg.thread_count == 1 or p.t == 0:
        return enumerate_families(p, cfg)

    tasks = partition(p)
    results: dict[int, tuple[list[tuple[Block, ...]], int]] = {}
    with ProcessPoolExecutor(max_workers=min(cfg.thread_count, len(tasks))) as pool:
        futures = {
            pool.submit(_task_worker, (p, task.b2, cfg.dedup_mode.value)): task
            for task in tasks
        }
        for future, task in futures.items():
            try:
                b2, found, nodes = future.result()
            except Exception as exc:
                raise SearchWorkerError(
                    f"search task b2={task.b2} for (v,k)=({p.v},{p.k}) failed: {exc}"
                ) from exc
            results[b2] = (found, nodes)

    out: list[DifferenceFamily] = []
    for task in tasks:
        found, nodes = results[task.b2]
        families = [DifferenceFamily(p, blocks) for blocks in found]
        if cfg.progress is not None:
            cfg.progress(task, len(families), nodes)
        for f in families:
            if cfg.emit is not None:
                cfg.emit(f)
            out.append(f)
    return out

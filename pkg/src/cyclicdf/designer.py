"""Family verification, development into block designs, and the Steiner
2-design certificate.

A verified family develops into a design with v(v-1)/(k(k-1)) blocks:
every translate of each full block plus, when the parameters carry a
short block, its v/k distinct translates.  verify_design then certifies
pair coverage by brute force over all C(v,2) pairs; nothing cheaper is
trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .canon import DifferenceFamily
from .modring import Admissibility, Block, Parameters, short_deltas


@dataclass(frozen=True)
class DuplicateDifference:
    d: int


@dataclass(frozen=True)
class MissingDifference:
    d: int


@dataclass(frozen=True)
class WrongBlockCount:
    expected: int
    actual: int


@dataclass(frozen=True)
class WrongBlockSize:
    index: int
    expected: int
    actual: int


@dataclass(frozen=True)
class PairUncovered:
    p: int
    q: int


@dataclass(frozen=True)
class PairMultiplyCovered:
    p: int
    q: int
    count: int


Violation = (
    DuplicateDifference
    | MissingDifference
    | WrongBlockCount
    | WrongBlockSize
    | PairUncovered
    | PairMultiplyCovered
)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def summary(self, limit: int = 6) -> str:
        if self.ok:
            return "ok"
        parts = []
        for viol in self.violations[:limit]:
            name = type(viol).__name__
            fields = ", ".join(f"{k}={v}" for k, v in vars(viol).items())
            parts.append(f"{name}({fields})")
        if len(self.violations) > limit:
            parts.append(f"... {len(self.violations) - limit} more")
        return "; ".join(parts)


class InvalidFamilyError(ValueError):
    """A family that fails verification was passed where a verified one is
    required; carries the failing report."""

    def __init__(self, report: CheckResult):
        self.report = report
        super().__init__(f"family fails verification: {report.summary()}")


@dataclass(frozen=True)
class Design:
    """A block design on points [0, v): the development of a family."""

    v: int
    k: int
    blocks: tuple[Block, ...]


def verify_blocks(params: Parameters, blocks: Sequence[Sequence[int]]) -> CheckResult:
    """Check raw full blocks against the difference-coverage contract.

    Structural problems (block count, block sizes) are reported first and
    short-circuit the difference analysis.
    """
    v, k, t = params.v, params.k, params.t
    structural: list[Violation] = []
    if len(blocks) != t:
        structural.append(WrongBlockCount(expected=t, actual=len(blocks)))
    for idx, b in enumerate(blocks):
        if len(b) != k:
            structural.append(WrongBlockSize(index=idx, expected=k, actual=len(b)))
    if structural:
        return CheckResult(ok=False, violations=tuple(structural))

    counts = [0] * v
    for b in blocks:
        for i in range(k):
            for j in range(k):
                if i != j:
                    counts[(b[i] - b[j]) % v] += 1

    banned = set(short_deltas(params))
    violations: list[Violation] = []
    for d in range(1, v):
        c = counts[d]
        if d in banned:
            # short-orbit differences may not be touched by full blocks
            if c > 0:
                violations.append(DuplicateDifference(d))
        elif c > 1:
            violations.append(DuplicateDifference(d))
    for d in range(1, v):
        if d not in banned and counts[d] == 0:
            violations.append(MissingDifference(d))
    if counts[0]:
        violations.append(DuplicateDifference(0))
    return CheckResult(ok=not violations, violations=tuple(violations))


def verify_family(f: DifferenceFamily) -> CheckResult:
    """ok iff the full blocks' difference multisets are disjoint and cover
    exactly the residues the short block leaves to them."""
    return verify_blocks(f.params, f.full_blocks)


def develop(f: DifferenceFamily) -> Design:
    """All translates of the full blocks plus the short orbit, sorted.

    Rejects families that fail verify_family; the result has exactly
    v(v-1)/(k(k-1)) blocks.
    """
    report = verify_family(f)
    if not report.ok:
        raise InvalidFamilyError(report)
    v, k = f.params.v, f.params.k
    blocks: list[Block] = []
    for base in f.full_blocks:
        for g in range(v):
            blocks.append(tuple(sorted((x + g) % v for x in base)))
    s = f.short_block
    if s is not None:
        for g in range(v // k):
            blocks.append(tuple(sorted((x + g) % v for x in s)))
    blocks.sort()
    return Design(v=v, k=k, blocks=tuple(blocks))


def verify_design(d: Design) -> CheckResult:
    """Certify the Steiner property: every point pair in exactly one block.

    Counts coverage of all C(v,2) pairs; reports the first uncovered and
    the first multiply covered pair.
    """
    v = d.v
    counts = [0] * (v * v)
    for block in d.blocks:
        n = len(block)
        for i in range(n):
            p = block[i]
            if not 0 <= p < v:
                raise ValueError(f"point {p} out of range [0, {v})")
            for j in range(i + 1, n):
                q = block[j]
                idx = p * v + q if p < q else q * v + p
                counts[idx] += 1
    uncovered: PairUncovered | None = None
    multiple: PairMultiplyCovered | None = None
    for p in range(v):
        base = p * v
        for q in range(p + 1, v):
            c = counts[base + q]
            if c == 0:
                if uncovered is None:
                    uncovered = PairUncovered(p, q)
            elif c > 1 and multiple is None:
                multiple = PairMultiplyCovered(p, q, c)
        if uncovered is not None and multiple is not None:
            break
    violations = tuple(x for x in (uncovered, multiple) if x is not None)
    return CheckResult(ok=not violations, violations=violations)

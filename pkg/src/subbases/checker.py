"""Grid-scale verification of properness and strong properness.

The closure identity "S-bar(sigma) equals the closure of S(sigma)" is
tested by a witness surrogate on the sample grid: a point of
S-bar(sigma) must lie within delta of a sample of S(sigma).  A pass
certifies the absence of violations at resolution delta only; a failure
carries self-verifying witnesses.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .seq import BD, BINARY_DIGITS, BOT, DIGITS, ONE, ZERO, BottomedSeq, render
from .space import SpaceModel
from .subbase import DyadicSubbase

_SLACK = 1e-9
_MAX_VIOLATIONS = 100

_DIGIT_CODE = {ZERO: 0, ONE: 1, BD: 2}


class CheckerError(ValueError):
    """Precondition violation of a check run."""


@dataclass(frozen=True)
class Violation:
    """A point of S-bar(sigma) with no delta-near sample of S(sigma)."""

    sigma: BottomedSeq
    point: object
    nearest: Optional[float]  # distance to nearest sampled member, None if empty

    def to_json(self) -> dict:
        return {
            "sigma": render(self.sigma),
            "point": _point_json(self.point),
            "nearest": self.nearest,
        }


@dataclass
class CheckReport:
    verdict: str  # "pass" | "fail"
    kind: str
    depth: int
    delta: float
    resolution: Fraction
    violations: List[Violation] = field(default_factory=list)
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "depth": self.depth,
            "delta": float(self.delta),
            "resolution": str(self.resolution),
            "truncated": self.truncated,
            "violations": [v.to_json() for v in self.violations],
        }

    def to_text(self) -> str:
        lines = ["%s check at depth %d, delta %s, grid resolution %s: %s"
                 % (self.kind, self.depth, _fmt(self.delta),
                    self.resolution, self.verdict.upper())]
        for v in self.violations:
            near = "none within sample" if v.nearest is None else _fmt(v.nearest)
            lines.append("  sigma=%s point=%s nearest=%s"
                         % (render(v.sigma), _point_text(v.point), near))
        if self.truncated:
            lines.append("  ... violation list truncated at %d" % _MAX_VIOLATIONS)
        return "\n".join(lines)


def _fmt(v) -> str:
    return str(v) if isinstance(v, Fraction) else "%g" % float(v)


def _point_text(p) -> str:
    if isinstance(p, tuple):
        return ",".join(str(c) for c in p)
    return str(p)


def _point_json(p):
    if isinstance(p, tuple):
        return [str(c) for c in p]
    return str(p)


def digit_table(S: DyadicSubbase, M: SpaceModel, depth: int) -> np.ndarray:
    """depth x n_samples int table of classifications (0, 1, 2=boundary)."""
    n = len(M.sample_points)
    table = np.empty((depth, n), dtype=np.int8)
    for k in range(depth):
        for i, x in enumerate(M.sample_points):
            table[k, i] = _DIGIT_CODE[S.digit(k, x)]
    return table


def _sigma_iter(depth: int, alphabet):
    """All sigma with dom within {0..depth-1}, entries from alphabet.

    Lexicographic over positions and digit values; each sigma once.
    """
    letters = tuple(alphabet) + (BOT,)
    for tup in itertools.product(letters, repeat=depth):
        yield BottomedSeq({i: ch for i, ch in enumerate(tup) if ch != BOT})


def _masks(table: np.ndarray, sigma: BottomedSeq, n: int):
    """Sampled membership of S(sigma) and S-bar(sigma) as boolean arrays."""
    open_mask = np.ones(n, dtype=bool)
    closed_mask = np.ones(n, dtype=bool)
    for k, a in sigma.items():
        row = table[k]
        code = _DIGIT_CODE[a]
        open_mask &= row == code
        if a == BD:
            closed_mask &= row == code
        else:
            closed_mask &= (row == code) | (row == 2)
    return open_mask, closed_mask


def _run_check(S: DyadicSubbase, M: SpaceModel, depth: int, delta,
               alphabet, kind: str) -> CheckReport:
    delta_f = float(delta)
    if Fraction(delta) < 2 * M.resolution:
        raise CheckerError("delta %s is below twice the grid resolution %s"
                           % (delta, M.resolution))
    if depth > len(S):
        raise IndexError("depth %d exceeds number of cuts %d" % (depth, len(S)))
    n = len(M.sample_points)
    table = digit_table(S, M, depth)
    report = CheckReport("pass", kind, depth, delta, M.resolution)
    for sigma in _sigma_iter(depth, alphabet):
        open_mask, closed_mask = _masks(table, sigma, n)
        candidates = np.nonzero(closed_mask & ~open_mask)[0]
        if candidates.size == 0:
            continue
        has_open = bool(open_mask.any())
        for i in candidates:
            row = M.distance_row(int(i))
            if has_open:
                nearest = float(row[open_mask].min())
                if nearest <= delta_f + _SLACK:
                    continue
            else:
                nearest = None
            report.verdict = "fail"
            if len(report.violations) < _MAX_VIOLATIONS:
                report.violations.append(
                    Violation(sigma, M.sample_points[int(i)], nearest))
            else:
                report.truncated = True
                return report
            break  # first violation per sigma only
    return report


def check_proper(S: DyadicSubbase, M: SpaceModel, depth: int, delta) -> CheckReport:
    """Closure identity over sigma with binary digits only."""
    return _run_check(S, M, depth, delta, BINARY_DIGITS, "proper")


def check_strong_proper(S: DyadicSubbase, M: SpaceModel, depth: int,
                        delta) -> CheckReport:
    """Closure identity over sigma allowing boundary digits."""
    if not S.classifies_boundary:
        raise CheckerError("subbase has no boundary classification "
                           "(exact oracle or boundary_tol > 0 required)")
    return _run_check(S, M, depth, delta, DIGITS, "strong-proper")


def check_exterior_pair(S: DyadicSubbase, M: SpaceModel, sigma: BottomedSeq,
                        delta) -> CheckReport:
    """Diagnostic for the exterior characterization of properness.

    S(sigma) and the union of the opposite-digit sets must be the
    exteriors of each other; at grid scale every sample outside one set
    must lie within delta of a sample of the other.
    """
    if not sigma.is_binary():
        raise CheckerError("exterior check requires sigma over {0,1,_}")
    delta_f = float(delta)
    if Fraction(delta) < 2 * M.resolution:
        raise CheckerError("delta %s is below twice the grid resolution %s"
                           % (delta, M.resolution))
    depth = sigma.length
    n = len(M.sample_points)
    table = digit_table(S, M, depth)
    open_mask, _closed = _masks(table, sigma, n)
    opposite = np.zeros(n, dtype=bool)
    for k, a in sigma.items():
        opposite |= table[k] == _DIGIT_CODE[ONE if a == ZERO else ZERO]
    report = CheckReport("pass", "exterior", depth, delta, M.resolution)

    def direction(outside_mask, target_mask):
        has_target = bool(target_mask.any())
        for i in np.nonzero(outside_mask)[0]:
            if has_target:
                nearest = float(M.distance_row(int(i))[target_mask].min())
                if nearest <= delta_f + _SLACK:
                    continue
            else:
                nearest = None
            report.verdict = "fail"
            if len(report.violations) < _MAX_VIOLATIONS:
                report.violations.append(
                    Violation(sigma, M.sample_points[int(i)], nearest))
            else:
                report.truncated = True
                return

    # x outside S(sigma) must be close to the opposite union, and vice versa
    direction(~open_mask, opposite)
    direction(~opposite, open_mask)
    return report


def report_to_json_file(report: CheckReport, path: str):
    with open(path, "w") as fh:
        json.dump(report.to_json(), fh, indent=2)
        fh.write("\n")

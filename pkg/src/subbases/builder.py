"""Randomized construction of (strongly) proper dyadic subbases.

Cuts are distance functions to points of the dense enumeration, with
cut values drawn from a base of open rational intervals.  The countable
sets of dangerous values (local extrema of the cut function restricted
to the regions definable from earlier cuts) are replaced by finite
sampled surrogates, and the random draw rejects values within a margin
of them.  The checkers remain the acceptance gate for the result.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .space import SpaceModel
from .subbase import Cut, FunctionalSubbase

_EPS = 1e-9


class Exhaustion(RuntimeError):
    """No admissible cut value found: the interval is too crowded."""


# -- enumerations --------------------------------------------------------


def unpair(n: int) -> Tuple[int, int]:
    """Cantor-style diagonal unpairing, surjective onto pairs.

    unpair(0)=(0,0), unpair(1)=(0,1), unpair(2)=(1,0), unpair(3)=(0,2), ...
    """
    s = 0
    while (s + 1) * (s + 2) // 2 <= n:
        s += 1
    i = n - s * (s + 1) // 2
    return i, s - i


def positive_rational(i: int) -> Fraction:
    """i-th positive rational of the Calkin-Wilf sequence (0-based, starts at 1)."""
    q = Fraction(1)
    for _ in range(i):
        q = 1 / (2 * (q.numerator // q.denominator) + 1 - q)
    return q


def base_interval(m: int) -> Tuple[Fraction, Fraction]:
    """m-th interval of a base of the positive reals.

    Centers run over all positive rationals, radii shrink along the
    second unpaired coordinate; every interval stays positive.
    """
    a, b = unpair(m)
    center = positive_rational(a)
    radius = min(Fraction(1, b + 2), center / 2)
    return center - radius, center + radius


# -- parameters and avoid sets ------------------------------------------


@dataclass
class BuilderParams:
    count: int
    strong: bool = False
    avoid_margin: Fraction = Fraction(1, 1000)
    max_retries: int = 64
    rng_seed: int = 0
    region_support: int = 2  # max #fixed digits in enumerated avoid regions

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be non-negative")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if self.avoid_margin <= 0:
            raise ValueError("avoid_margin must be positive")


@dataclass
class AvoidSet:
    """Finite sampled surrogate of the countable set of dangerous cut values."""

    values: List[Tuple[float, str]] = field(default_factory=list)

    def add(self, value: float, tag: str):
        self.values.append((float(value), tag))

    def clipped(self, lo: Fraction, hi: Fraction, margin) -> List[float]:
        m = float(margin)
        lo_f, hi_f = float(lo) - m, float(hi) + m
        return sorted({v for v, _ in self.values if lo_f <= v <= hi_f})

    def __len__(self):
        return len(self.values)


def candidate(M: SpaceModel, n: int, params: BuilderParams = None):
    """Cut function and target interval for step n: distance to the
    n0-th dense point, and the n1-th base interval."""
    n0, n1 = unpair(n)
    center_index = M.dense_index(n0)
    center = M.sample_points[center_index]

    def f(x):
        return M.metric(center, x)

    return Cut(f=f, c=None, center_index=center_index), base_interval(n1)


def _local_extrema(f_vals: np.ndarray, region: np.ndarray,
                   neighbors: List[np.ndarray]) -> List[float]:
    """Values of f at samples extremal among region neighbors.

    A sample is a local extremum of f restricted to the region when its
    value is maximal or minimal (within slack) among the region samples
    in its neighborhood; isolated region samples count as both.
    """
    out = []
    for i in np.nonzero(region)[0]:
        nb = neighbors[i]
        nb = nb[region[nb]]
        v = f_vals[i]
        if nb.size == 0:
            out.append(float(v))
            continue
        vals = f_vals[nb]
        if v >= vals.max() - _EPS or v <= vals.min() + _EPS:
            out.append(float(v))
    return out


def _small_support_masks(table: np.ndarray, n: int, npts: int, digits,
                         support: int, closed: bool):
    """Masks of S-bar(sigma) (or S(sigma)) for sigma with small support."""
    import itertools

    yield "e", np.ones(npts, dtype=bool)
    indices = range(n)
    for size in range(1, support + 1):
        for ks in itertools.combinations(indices, size):
            for vals in itertools.product(digits, repeat=size):
                mask = np.ones(npts, dtype=bool)
                for k, code in zip(ks, vals):
                    if closed and code != 2:
                        mask &= (table[k] == code) | (table[k] == 2)
                    else:
                        mask &= table[k] == code
                tag = ",".join("%d:%d" % (k, c) for k, c in zip(ks, vals))
                yield tag, mask


def collect_avoid(M: SpaceModel, table: np.ndarray, f_vals: np.ndarray,
                  n: int, strong: bool, params: BuilderParams,
                  neighbors: List[np.ndarray],
                  chosen: Sequence[float] = (),
                  cut_vals: Sequence[np.ndarray] = ()) -> AvoidSet:
    """Sampled avoid set for cut n given the digit table of cuts 0..n-1.

    Regions are the closed sets of sigma with at most region_support
    fixed binary digits, plus every region realized by a sampled code;
    when strong, additionally the sampled boundary regions and the cut
    values of earlier pairs that interact with level sets of f_n.
    """
    npts = len(M.sample_points)
    avoid = AvoidSet()

    for tag, mask in _small_support_masks(table, n, npts, (0, 1),
                                          params.region_support, closed=True):
        if mask.any():
            for v in _local_extrema(f_vals, mask, neighbors):
                avoid.add(v, "extremum|closed[%s]" % tag)

    # regions realized by sampled codes: the closed set of phi(x)|_n
    seen = set()
    for i in range(npts):
        code = tuple(int(c) for c in table[:, i])
        if code in seen:
            continue
        seen.add(code)
        mask = np.ones(npts, dtype=bool)
        for k, c in enumerate(code):
            if c == 2:
                continue
            mask &= (table[k] == c) | (table[k] == 2)
        for v in _local_extrema(f_vals, mask, neighbors):
            avoid.add(v, "extremum|code[%s]" %
                      "".join(str(c) for c in code))

    if strong:
        # sampled boundary regions S(tau), tau over {bd, bot}
        for tag, mask in _small_support_masks(table, n, npts, (2,),
                                              params.region_support,
                                              closed=False):
            if tag != "e" and mask.any():
                for v in _local_extrema(f_vals, mask, neighbors):
                    avoid.add(v, "extremum|boundary[%s]" % tag)
        # earlier cut values with a sampled critical interaction:
        # x extremal for f_k among neighbors on its own f_n level band
        band = 2 * float(M.resolution)
        for k, (c_k, g_vals) in enumerate(zip(chosen, cut_vals)):
            for i in range(npts):
                nb = neighbors[i]
                if nb.size == 0:
                    continue
                level = nb[np.abs(f_vals[nb] - f_vals[i]) <= band]
                if level.size == 0:
                    continue
                g = g_vals[i]
                if g >= g_vals[level].max() - _EPS or g <= g_vals[level].min() + _EPS:
                    if abs(g - c_k) <= band:
                        avoid.add(f_vals[i], "interaction|cut%d" % k)
    return avoid


def choose_cut(interval: Tuple[Fraction, Fraction], avoid: AvoidSet,
               params: BuilderParams, rng: random.Random) -> Fraction:
    """Uniform rational draw from the interval, rejecting values within
    the margin of any avoid value; deterministic given the rng state."""
    lo, hi = interval
    if hi <= lo:
        raise Exhaustion("empty interval %s" % (interval,))
    margin = float(params.avoid_margin)
    blocked = avoid.clipped(lo, hi, params.avoid_margin)
    width = hi - lo
    for _ in range(params.max_retries):
        c = lo + width * Fraction(rng.randrange(1, 2 ** 30), 2 ** 30)
        cf = float(c)
        if all(abs(cf - v) >= margin - _EPS for v in blocked):
            return c
    raise Exhaustion("no admissible cut in %s after %d draws"
                     % (interval, params.max_retries))


@dataclass
class BuildLogRecord:
    n: int
    n0: int
    interval: Tuple[Fraction, Fraction]
    avoid_count: int
    c: Fraction
    retries: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "n0": self.n0,
            "interval": [str(self.interval[0]), str(self.interval[1])],
            "avoid_count": self.avoid_count,
            "c_n": str(self.c),
            "retries": self.retries,
        }


@dataclass
class BuildResult:
    subbase: FunctionalSubbase
    log: List[BuildLogRecord]
    separation: float  # fraction of sample pairs split by some digit

    def log_lines(self) -> str:
        return "\n".join(json.dumps(r.to_json()) for r in self.log)


def separation_fraction(table: np.ndarray) -> float:
    """Fraction of sample pairs distinguished by at least one digit."""
    npts = table.shape[1]
    if npts < 2:
        return 1.0
    groups = {}
    for i in range(npts):
        key = table[:, i].tobytes()
        groups[key] = groups.get(key, 0) + 1
    same = sum(g * (g - 1) // 2 for g in groups.values())
    total = npts * (npts - 1) // 2
    return 1.0 - same / total


def build(M: SpaceModel, params: BuilderParams) -> BuildResult:
    """Build `count` cuts inductively: candidate, avoid set, random cut.

    On exhaustion the next base interval for the same center is tried.
    The result is expected, not guaranteed, to pass the checkers at the
    model's resolution; run them to accept it.
    """
    rng = random.Random(params.rng_seed)
    npts = len(M.sample_points)
    neighbors = M.neighbor_lists(2 * M.resolution)
    table = np.empty((0, npts), dtype=np.int8)
    cuts: List[Cut] = []
    chosen: List[float] = []
    cut_fvals: List[np.ndarray] = []
    log: List[BuildLogRecord] = []

    for n in range(params.count):
        cut, interval = candidate(M, n)
        f_vals = M.distance_row(cut.center_index)
        avoid = collect_avoid(M, table, f_vals, n, params.strong, params,
                              neighbors, chosen, cut_fvals)
        n1 = unpair(n)[1]
        retries = 0
        c = None
        while c is None:
            try:
                c = choose_cut(interval, avoid, params, rng)
            except Exhaustion:
                retries += 1
                if retries > params.max_retries:
                    raise
                n1 += 1
                interval = base_interval(n1)
        cuts.append(Cut(f=cut.f, c=c, center_index=cut.center_index))
        chosen.append(float(c))
        cut_fvals.append(f_vals)
        cf = float(c)
        row = np.where(f_vals < cf - _EPS, 0,
                       np.where(f_vals > cf + _EPS, 1, 2)).astype(np.int8)
        table = np.vstack([table, row])
        log.append(BuildLogRecord(n, unpair(n)[0], interval, len(avoid),
                                  c, retries))

    subbase = FunctionalSubbase(cuts, boundary_tol=1e-9)
    return BuildResult(subbase, log, separation_fraction(table))

"""Dyadic subbases as indexed digit classifiers, the coding map, and K slices.

A subbase is a finite enumeration of disjoint open pairs (S_n^0, S_n^1).
The classifier returns '0' for points of S_n^0, '1' for S_n^1 and 'b' for
the leftover set S_n^bd = X \\ (S_n^0 u S_n^1).  The coding map reports
bottom at every 'b' classification.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .seq import BD, BOT, EMPTY, ONE, ZERO, BottomedSeq, render, sort_key


class DyadicSubbase:
    """Interface: a finite enumeration of cuts with a digit classifier."""

    def __len__(self) -> int:
        raise NotImplementedError

    def digit(self, n: int, x) -> str:
        """Classification of x by pair n: ZERO, ONE or BD."""
        raise NotImplementedError

    @property
    def classifies_boundary(self) -> bool:
        """True when BD classifications are observable (exact or tolerance band)."""
        raise NotImplementedError

    def _check_index(self, n: int):
        if not 0 <= n < len(self):
            raise IndexError("cut index %d out of range [0, %d)" % (n, len(self)))


@dataclass(frozen=True)
class Cut:
    """One pair: the sublevel/superlevel sets of f at value c."""

    f: Callable
    c: object
    center_index: Optional[int] = None


class FunctionalSubbase(DyadicSubbase):
    """Subbase cut from functions: S_n^0 = {f_n < c_n}, S_n^1 = {f_n > c_n}.

    With an exact oracle the sign is computed arithmetically and
    boundary_tol is ignored; otherwise |f_n(x) - c_n| <= boundary_tol is
    classified as the boundary digit.
    """

    def __init__(self, cuts: Sequence[Cut], exact_oracle: Callable = None,
                 boundary_tol: float = None):
        self.cuts = list(cuts)
        self.exact_oracle = exact_oracle
        if boundary_tol is None:
            boundary_tol = 0.0 if exact_oracle is not None else 1e-9
        self.boundary_tol = boundary_tol

    def __len__(self) -> int:
        return len(self.cuts)

    @property
    def classifies_boundary(self) -> bool:
        return self.exact_oracle is not None or self.boundary_tol > 0

    def digit(self, n: int, x) -> str:
        self._check_index(n)
        if self.exact_oracle is not None:
            return self.exact_oracle(n, x)
        cut = self.cuts[n]
        v = cut.f(x) - cut.c
        if v < -self.boundary_tol:
            return ZERO
        if v > self.boundary_tol:
            return ONE
        return BD


class OracleSubbase(DyadicSubbase):
    """Subbase given directly by a digit table/oracle, e.g. counterexample models."""

    def __init__(self, length: int, digit_fn: Callable):
        self._length = length
        self._digit_fn = digit_fn

    def __len__(self) -> int:
        return self._length

    @property
    def classifies_boundary(self) -> bool:
        return True

    def digit(self, n: int, x) -> str:
        self._check_index(n)
        return self._digit_fn(n, x)


class ReindexedSubbase(DyadicSubbase):
    """View of another subbase through an index map (permutation or duplication)."""

    def __init__(self, base: DyadicSubbase, index_map: Sequence[int]):
        for i in index_map:
            if not 0 <= i < len(base):
                raise IndexError("mapped index %d out of range" % i)
        self.base = base
        self.index_map = list(index_map)

    def __len__(self) -> int:
        return len(self.index_map)

    @property
    def classifies_boundary(self) -> bool:
        return self.base.classifies_boundary

    def digit(self, n: int, x) -> str:
        self._check_index(n)
        return self.base.digit(self.index_map[n], x)


def permute(S: DyadicSubbase, pi: Sequence[int]) -> DyadicSubbase:
    """Reorder the enumeration: digit(permute(S, pi), n, x) = digit(S, pi[n], x)."""
    if sorted(pi) != list(range(len(S))):
        raise ValueError("pi must be a bijection on {0..%d}" % (len(S) - 1))
    return ReindexedSubbase(S, pi)


def duplicated_subbase(S: DyadicSubbase, n: int) -> DyadicSubbase:
    """Append a second copy of pair n at the end of the enumeration."""
    if not 0 <= n < len(S):
        raise IndexError("pair index %d out of range" % n)
    return ReindexedSubbase(S, list(range(len(S))) + [n])


# -- coding map and membership ------------------------------------------


def digit(S: DyadicSubbase, n: int, x) -> str:
    return S.digit(n, x)


def phi(S: DyadicSubbase, x, depth: int) -> BottomedSeq:
    """Length-depth prefix of the code of x; boundary digits become bottom."""
    if depth > len(S):
        raise IndexError("depth %d exceeds number of cuts %d" % (depth, len(S)))
    entries = {}
    for n in range(depth):
        d = S.digit(n, x)
        if d in (ZERO, ONE):
            entries[n] = d
    return BottomedSeq(entries)


def member_open(S: DyadicSubbase, sigma: BottomedSeq, x) -> bool:
    """x in S(sigma): the digit equals sigma(k) at every defined index."""
    for k, a in sigma.items():
        if S.digit(k, x) != a:
            return False
    return True


def member_closed(S: DyadicSubbase, sigma: BottomedSeq, x) -> bool:
    """x in S-bar(sigma): the digit is sigma(k) or the boundary digit."""
    for k, a in sigma.items():
        if S.digit(k, x) not in (a, BD):
            return False
    return True


# -- K slices ------------------------------------------------------------


@dataclass(frozen=True)
class KSlice:
    """Finite depth slice of K_S sampled from a space model."""

    depth: int
    elements: frozenset
    resolution: Optional[Fraction] = None

    def sorted_elements(self) -> List[BottomedSeq]:
        return sorted(self.elements, key=sort_key)

    def is_downward_closed(self) -> bool:
        for sigma in self.elements:
            for m in range(self.depth + 1):
                if sigma.restrict(m) not in self.elements:
                    return False
        return True


def enumerate_K(S: DyadicSubbase, M, depth: int) -> KSlice:
    """All restrictions of sampled codes: {phi(x)|_m : x in samples, m <= depth}."""
    if depth > len(S):
        raise IndexError("depth %d exceeds number of cuts %d" % (depth, len(S)))
    elems = set()
    for x in M.sample_points:
        code = phi(S, x, depth)
        for m in range(depth + 1):
            elems.add(code.restrict(m))
    return KSlice(depth=depth, elements=frozenset(elems),
                  resolution=getattr(M, "resolution", None))


@dataclass(frozen=True)
class CuslReport:
    """Verdict of the conditional-upper-semilattice check, with witness on failure."""

    ok: bool
    sigma: Optional[BottomedSeq] = None
    tau: Optional[BottomedSeq] = None
    minimal_upper_bounds: Tuple[BottomedSeq, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_cusl(K: KSlice) -> CuslReport:
    """Every bounded pair must have a least upper bound within the slice.

    On failure reports the first offending pair (in (length, rendering)
    order) together with its minimal upper bounds.
    """
    elems = K.sorted_elements()
    for i, sigma in enumerate(elems):
        for tau in elems[i:]:
            j = sigma.try_join(tau)
            if j is None:
                continue  # no upper bound anywhere
            if j in K.elements:
                continue  # pointwise join is the least upper bound
            ubs = [u for u in elems if j.leq(u)]
            if not ubs:
                continue  # unbounded within the slice
            minimal = [u for u in ubs
                       if not any(v is not u and v.leq(u) for v in ubs)]
            if len(minimal) >= 2:
                return CuslReport(False, sigma, tau,
                                  tuple(sorted(minimal, key=sort_key)))
            # unique minimal element of a finite set of upper bounds is least
    return CuslReport(True)


# -- Hasse diagram export ------------------------------------------------


def kslice_to_dot(K: KSlice, name: str = "kslice") -> str:
    """DOT digraph of the covering relation, nodes sorted by (length, label)."""
    elems = K.sorted_elements()
    index = {e: i for i, e in enumerate(elems)}
    lines = ["digraph %s {" % name, '  rankdir="BT";']
    for e in elems:
        lines.append('  n%d [label="%s"];' % (index[e], render(e)))
    for u in elems:
        for v in elems:
            if u is v or not u.leq(v):
                continue
            covers = not any(w is not u and w is not v
                             and u.leq(w) and w.leq(v) for w in elems)
            if covers:
                lines.append("  n%d -> n%d;" % (index[u], index[v]))
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Ext oracles on F(1,2,N) and on the (1,1)-divisor M, plus lemma sweeps.

Everything is fiberwise: twists by objects of the base never enter, and Hom is
twist-invariant, so a query between two descriptors only depends on their
relative twist.  Ext on M is computed through the Koszul two-term complex of
the divisor (O(-1,-1) -> O), i.e. from the two flag-level groups
Ext(src, tgt(-1,-1)) and Ext(src, tgt); no derived pushforward machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .schur import (
    INDETERMINATE,
    BundleDescriptor,
    _Indeterminate,
    clebsch_gordan_rank2,
    dualize,
    sym_cohomology,
    sym_cohomology_via_pushforward,
)
from .weights import GradedDims, graded_add, graded_shift

SPACE_FLAG = "flag"
SPACE_M = "M"


@dataclass(frozen=True)
class ExtQuery:
    """An Ext^*(source, target) request on the flag variety or on M."""

    source: BundleDescriptor
    target: BundleDescriptor
    space: str = SPACE_M

    def __post_init__(self) -> None:
        if self.source.N != self.target.N:
            raise ValueError("source and target must live on the same F(1,2,N)")
        if self.space not in (SPACE_FLAG, SPACE_M):
            raise ValueError(f"unknown space {self.space!r}")


def hom_bundle(source: BundleDescriptor, target: BundleDescriptor) -> list[BundleDescriptor]:
    """Expand Hom(source, target) = source^v x target by rank-2 Clebsch-Gordan.

    Each det-power j contributes (0, j) to the twist; twists add componentwise.
    """
    if source.N != target.N:
        raise ValueError("source and target must live on the same F(1,2,N)")
    dual = dualize(source)
    out = []
    for s, j in clebsch_gordan_rank2(dual.m, target.m):
        out.append(BundleDescriptor(s, dual.x + target.x, dual.y + target.y + j, source.N))
    return out


def _summand_cohomology(d: BundleDescriptor) -> GradedDims:
    """Filtration evaluator with the exact pushforward as fallback.

    The filtration route is authoritative for every case it decides; when it
    reports Indeterminate the exact evaluator settles the summand (the two
    agree on all determinate inputs, which is property-tested).
    """
    via_filtration = sym_cohomology(d)
    if via_filtration is INDETERMINATE:
        return sym_cohomology_via_pushforward(d)
    assert isinstance(via_filtration, dict)
    return via_filtration


@lru_cache(maxsize=None)
def _ext_on_flag_cached(source: BundleDescriptor, target: BundleDescriptor) -> GradedDims:
    total: GradedDims = {}
    for summand in hom_bundle(source, target):
        total = graded_add(total, _summand_cohomology(summand))
    return total


def ext_on_flag(source: BundleDescriptor, target: BundleDescriptor) -> GradedDims | _Indeterminate:
    """Ext^*_{F(1,2,N)}(source, target) as a graded dimension dict."""
    return dict(_ext_on_flag_cached(source, target))


def koszul_terms(
    source: BundleDescriptor, target: BundleDescriptor
) -> tuple[GradedDims | _Indeterminate, GradedDims | _Indeterminate]:
    """The two flag-level groups feeding Ext on M: (A, B) with

    A = Ext_F(source, target(-1,-1)) and B = Ext_F(source, target).
    """
    return ext_on_flag(source, target.twist(-1, -1)), ext_on_flag(source, target)


def ext_on_M(source: BundleDescriptor, target: BundleDescriptor) -> GradedDims | _Indeterminate:
    """Ext^*_M(source, target) from the Koszul two-term complex.

    With A, B as in :func:`koszul_terms` the long exact sequence gives
    Ext^k_M = B_k + A_{k+1} whenever no connecting map can be nonzero; the
    engine forces the answer only when the supports of A and B never differ
    by 0 or 1, and otherwise reports INDETERMINATE.
    """
    A, B = koszul_terms(source, target)
    if A is INDETERMINATE or B is INDETERMINATE:
        return INDETERMINATE
    assert isinstance(A, dict) and isinstance(B, dict)
    if not A:
        return B
    if not B:
        return graded_shift(A, -1)
    for a in A:
        for b in B:
            if abs(a - b) <= 1:
                return INDETERMINATE
    return graded_add(B, graded_shift(A, -1))


def ext_query(q: ExtQuery) -> GradedDims | _Indeterminate:
    if q.space == SPACE_FLAG:
        return ext_on_flag(q.source, q.target)
    return ext_on_M(q.source, q.target)


@dataclass(frozen=True)
class LemmaPoint:
    """One grid point of a lemma sweep."""

    params: tuple[tuple[str, int], ...]
    expected: tuple[tuple[int, int], ...]
    computed: tuple[tuple[int, int], ...] | str
    verdict: str  # "match" | "mismatch" | "indeterminate"


@dataclass(frozen=True)
class LemmaReport:
    """Sweep result over a lemma's full stated parameter grid."""

    lemma: str
    n: int
    eps: int
    points: tuple[LemmaPoint, ...] = field(default=())

    @property
    def total(self) -> int:
        return len(self.points)

    @property
    def mismatches(self) -> int:
        return sum(p.verdict == "mismatch" for p in self.points)

    @property
    def indeterminates(self) -> int:
        return sum(p.verdict == "indeterminate" for p in self.points)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and self.indeterminates == 0


def _sweep_point(
    params: dict[str, int],
    source: BundleDescriptor,
    target: BundleDescriptor,
    expected: GradedDims,
) -> LemmaPoint:
    got = ext_on_M(source, target)
    if got is INDETERMINATE:
        verdict, computed = "indeterminate", "indeterminate"
    else:
        assert isinstance(got, dict)
        verdict = "match" if got == expected else "mismatch"
        computed = tuple(sorted(got.items()))
    return LemmaPoint(tuple(params.items()), tuple(sorted(expected.items())), computed, verdict)


def check_lemma(lemma: str, n: int, eps: int) -> LemmaReport:
    """Sweep one of the vanishing lemmas A4 / A5 / A6 over its full grid.

    A4: Ext_M(O(t,0), Sym^r U2v(-1,1)) is C[-1] at r = t-1 and zero for
        0 <= r <= min(t-2, n-1), over 1 <= t <= 2n-3+eps.
    A5: Ext_M(Sym^r U2v(-1,1), O(t,0)) = 0 for the same t range and
        0 <= r <= min(t-1, n-1).
    A6: Ext_M(Sym^m U2v, Sym^r U2v(-1,1)) = 0 for 0 <= m <= r <= n-2.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if eps not in (0, 1):
        raise ValueError(f"eps must be 0 or 1, got {eps}")
    N = 2 * n + eps
    points: list[LemmaPoint] = []
    if lemma == "A4":
        for t in range(1, 2 * n - 3 + eps + 1):
            src = BundleDescriptor(0, t, 0, N)
            points.append(_sweep_point(
                {"t": t, "r": t - 1},
                src, BundleDescriptor(t - 1, -1, 1, N), {1: 1},
            ))
            for r in range(0, min(t - 2, n - 1) + 1):
                points.append(_sweep_point(
                    {"t": t, "r": r},
                    src, BundleDescriptor(r, -1, 1, N), {},
                ))
    elif lemma == "A5":
        for t in range(1, 2 * n - 3 + eps + 1):
            for r in range(0, min(t - 1, n - 1) + 1):
                points.append(_sweep_point(
                    {"t": t, "r": r},
                    BundleDescriptor(r, -1, 1, N), BundleDescriptor(0, t, 0, N), {},
                ))
    elif lemma == "A6":
        for r in range(0, n - 1):
            for m in range(0, r + 1):
                points.append(_sweep_point(
                    {"m": m, "r": r},
                    BundleDescriptor(m, 0, 0, N), BundleDescriptor(r, -1, 1, N), {},
                ))
    else:
        raise ValueError(f"unknown lemma {lemma!r}; expected A4, A5 or A6")
    return LemmaReport(lemma, n, eps, tuple(points))

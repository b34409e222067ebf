"""Symmetric powers of the rank-2 tautological bundle on F(1,2,N).

A ``BundleDescriptor`` (m, x, y, N) stands for Sym^m U2v(x*h1 + y*h2) where
U2v is the dual of the rank-2 tautological subbundle.  Two evaluators reduce
its cohomology to line bundles:

* ``sym_cohomology`` filters Sym^m U2v by the m+1 line bundles coming from the
  tautological sequence 0 -> O(h2-h1) -> U2v -> O(h1) -> 0.  Vanishing
  conclusions are always sound; when surviving pieces sit in adjacent degrees
  the long exact sequences could cancel them, so the result is Indeterminate.
* ``sym_cohomology_via_pushforward`` pushes down the P^1-bundle
  F(1,2,N) -> G(2,N) (exact: the pushforward is concentrated in one degree),
  expands by rank-2 Clebsch-Gordan, and finishes with Bott on G(2,N).  Always
  determinate; agrees with the filtration route whenever that is determinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .weights import (
    GradedDims,
    bwb_regularize,
    graded_add,
    line_bundle_cohomology,
    rho,
    weyl_dim,
)


@dataclass(frozen=True)
class BundleDescriptor:
    """Sym^m U2v(x*h1 + y*h2) on F(1,2,N); m = 0 is the line bundle O(x,y)."""

    m: int
    x: int
    y: int
    N: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"symmetric power must be >= 0, got {self.m}")
        if self.N < 3:
            raise ValueError(f"need N >= 3, got {self.N}")

    def twist(self, dx: int, dy: int) -> BundleDescriptor:
        return BundleDescriptor(self.m, self.x + dx, self.y + dy, self.N)


class _Indeterminate:
    """Singleton verdict: the filtration's long exact sequences might cancel."""

    _instance: _Indeterminate | None = None

    def __new__(cls) -> _Indeterminate:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Indeterminate"

    def __bool__(self) -> bool:
        return False


INDETERMINATE = _Indeterminate()


def sym_filtration(d: BundleDescriptor) -> list[tuple[int, int]]:
    """Line-bundle graded pieces of d, sub-most first: (x+m-2j, y+j), j=m..0."""
    return [(d.x + d.m - 2 * j, d.y + j) for j in range(d.m, -1, -1)]


def sym_resolution_step(k: int, N: int) -> tuple[BundleDescriptor, BundleDescriptor, BundleDescriptor]:
    """The short exact sequence 0 -> Sym^{k-1}U2v(-1,1) -> Sym^k U2v -> O(k,0) -> 0."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    return (
        BundleDescriptor(k - 1, -1, 1, N),
        BundleDescriptor(k, 0, 0, N),
        BundleDescriptor(0, k, 0, N),
    )


def clebsch_gordan_rank2(a: int, b: int) -> list[tuple[int, int]]:
    """Sym^a V x Sym^b V = sum_j Sym^{a+b-2j} V x det(V)^j for rank-2 V."""
    if a < 0 or b < 0:
        raise ValueError("symmetric powers must be >= 0")
    return [(a + b - 2 * j, j) for j in range(min(a, b) + 1)]


def dualize(d: BundleDescriptor) -> BundleDescriptor:
    """Dual descriptor; uses det U2 = O(0,-1), so Sym^m U2 = Sym^m U2v(0,-m)."""
    return BundleDescriptor(d.m, -d.x, -d.y - d.m, d.N)


def sym_cohomology(d: BundleDescriptor) -> GradedDims | _Indeterminate:
    """Cohomology of d via the line-bundle filtration.

    Sums the surviving pieces when no two occupy adjacent degrees (the
    filtration's long exact sequences cannot connect them); otherwise returns
    INDETERMINATE.  Total vanishing is always a sound conclusion.
    """
    surviving: list[tuple[int, int]] = []
    for (px, py) in sym_filtration(d):
        res = line_bundle_cohomology(d.N, px, py)
        if not res.vanishes:
            assert res.degree is not None
            surviving.append((res.degree, res.dim))
    degrees = [deg for deg, _ in surviving]
    for i, a in enumerate(degrees):
        for b in degrees[i + 1:]:
            if abs(a - b) == 1:
                return INDETERMINATE
    out: GradedDims = {}
    for deg, dim in surviving:
        out[deg] = out.get(deg, 0) + dim
    return {k: v for k, v in sorted(out.items())}


@lru_cache(maxsize=None)
def _gl2_weight_cohomology(a: int, b: int, N: int) -> GradedDims:
    """Bott on G(2,N) for the weight (a, b, 0, .., 0) (partition coordinates).

    The fundamental-coordinate weight is (a-b, b, 0, .., 0); a >= b is required
    while b may be any integer.
    """
    if a < b:
        raise ValueError(f"need a >= b, got ({a}, {b})")
    w = (a - b, b) + (0,) * (N - 3)
    reg = bwb_regularize(tuple(c + r for c, r in zip(w, rho(N))))
    if reg.singular:
        return {}
    assert reg.weight is not None
    dom = tuple(c - 1 for c in reg.weight)
    return {reg.length: weyl_dim(dom)}


def sym_cohomology_via_pushforward(d: BundleDescriptor) -> GradedDims:
    """Exact cohomology of d via the projection F(1,2,N) -> G(2,N).

    Along the P^1-bundle P(U2), O(x*h1) pushes to Sym^x U2v (x >= 0), to zero
    (x = -1), or to Sym^{-x-2}U2 x det U2 in degree one (x <= -2); tensoring
    with Sym^m U2v and det-powers of U2v and expanding by Clebsch-Gordan leaves
    a direct sum of irreducible G(2,N) bundles, where Bott is exact.
    """
    m, x, y, N = d.m, d.x, d.y, d.N
    if x == -1:
        return {}
    if x >= 0:
        pieces = [(m + x + y - i, y + i) for i in range(min(m, x) + 1)]
        shift = 0
    else:
        s = -x - 2
        pieces = [(m + y - 1 - i, y + x + 1 + i) for i in range(min(m, s) + 1)]
        shift = 1
    total: GradedDims = {}
    for (a, b) in pieces:
        total = graded_add(total, {k + shift: v for k, v in _gl2_weight_cohomology(a, b, N).items()})
    return total

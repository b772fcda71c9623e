"""Core combinatorial invariants of lattice polytopes.

k-normality is decided by explicit iterated Minkowski sumsets of the lattice
points; the decomposition thresholds d_P and nu_P come out of the finite
failure ranges k <= dim-2 and k <= n-2 (for a d-dimensional polytope the map
P∩M + kP∩M -> (k+1)P∩M is onto for every k >= d-1, and V + kP∩M -> (k+1)P∩M
is onto for every k >= n-1, so larger k never fail).  Normalized volume is
computed by two independent routes, point-count interpolation and pulling
triangulation, which the test suite requires to agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .exactmath import Vector, add, det_exact, solve_rational, sub
from .polytope import Polytope, from_points

UNDEFINED = "undefined"


class InvariantError(ValueError):
    """An invariant was requested outside its domain of definition."""


class SearchCapExceeded(RuntimeError):
    """The k-normality scan was stopped by the configured safety cap."""


@dataclass(frozen=True)
class NormalityScan:
    """Aggregated k-normality data for one polytope.

    per_k maps k to (is_k_normal, holes); k_P is None when the polytope is
    not very ample (then no threshold exists).
    """

    name: str | None
    per_k: dict
    d_P: int
    nu_P: int
    k_P: int | None

    def __post_init__(self):
        if not 1 <= self.d_P <= self.nu_P:
            raise AssertionError("threshold ordering violated (bug)")
        for k, (flag, holes) in self.per_k.items():
            if flag != (not holes):
                raise AssertionError(f"flag/hole mismatch at k={k} (bug)")
            nxt = self.per_k.get(k + 1)
            if flag and k >= self.d_P and nxt is not None and not nxt[0]:
                raise AssertionError(f"normality lost from k={k} to {k + 1} (bug)")


@dataclass(frozen=True)
class SmoothData:
    """Edge-fan data for a smooth polytope; gamma/m_prime are None otherwise."""

    is_smooth: bool
    fans: tuple
    gamma: int | None
    m_prime: int | None


def _sumset(a, b):
    return {add(x, y) for x in a for y in b}


def is_k_normal(p: Polytope, k: int):
    """Whether every lattice point of kP is a sum of k lattice points of P.

    Returns (flag, holes); holes are the unreachable points of kP.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pts = p.lattice_points(1)
    reach = set(pts)
    for _ in range(k - 1):
        reach = _sumset(reach, pts)
    holes = frozenset(p.lattice_points(k) - reach)
    return (not holes, holes)


def compute_d_P(p: Polytope) -> int:
    """Smallest n with P∩M + kP∩M = (k+1)P∩M for every k >= n.

    Only k <= dim-2 can fail, so the scan is finite; dimensions <= 2 always
    give 1.
    """
    pts = p.lattice_points(1)
    last_failing = 0
    for k in range(1, p.dim - 1):
        if _sumset(pts, p.lattice_points(k)) != set(p.lattice_points(k + 1)):
            last_failing = k
    return last_failing + 1


def compute_nu_P(p: Polytope) -> int:
    """Analogue of d_P with the vertex set as the added summand.

    Only k <= n-2 can fail (n the number of vertices).
    """
    verts = p.vertices
    last_failing = 0
    for k in range(1, p.num_vertices - 1):
        if _sumset(verts, p.lattice_points(k)) != set(p.lattice_points(k + 1)):
            last_failing = k
    return last_failing + 1


def compute_k_P(p: Polytope, m_P: int, d_P: int, max_k: int | None = None) -> int:
    """Smallest k0 such that P is k-normal for all k >= k0.

    Requires a very ample polytope (finite m_P): the scan is certified to
    terminate at or before (m_P - d_P)*n + 1, and once some k >= d_P is
    normal every larger k is as well, so the scan stops there and returns
    one past the largest failing k.
    """
    if m_P is None:
        raise InvariantError("k_P undefined: polytope is not very ample")
    cap = (m_P - d_P) * p.num_vertices + 1
    pts = p.lattice_points(1)
    reach = set(pts)
    k = 1
    last_failing = 0
    while True:
        normal_here = p.lattice_points(k) <= reach
        if not normal_here:
            last_failing = k
        elif k >= d_P:
            break
        k += 1
        if k > cap:
            raise AssertionError("k-normality scan exceeded its certified cap (bug)")
        if max_k is not None and k > max_k:
            raise SearchCapExceeded(
                f"k-normality scan reached the safety cap max_k={max_k}")
        reach = _sumset(reach, pts)
    return last_failing + 1


def scan_normality(p: Polytope, max_k: int | None = None,
                   through_k: int | None = None) -> NormalityScan:
    """Thresholds plus per-k normality flags and holes, in one scan.

    Records k = 1 .. max(k_P, through_k); for a polytope that is not very
    ample (k_P undefined) the recorded window is through_k or d_P + 1.
    """
    from .semigroup import compute_m_P

    d_P = compute_d_P(p)
    nu_P = compute_nu_P(p)
    mres = compute_m_P(p, d_P)
    k_P = compute_k_P(p, mres.m_P, d_P, max_k=max_k) if mres.very_ample else None
    if k_P is None:
        limit = through_k if through_k is not None else d_P + 1
    else:
        limit = max(k_P, through_k or 1)
    per_k = {k: is_k_normal(p, k) for k in range(1, limit + 1)}
    return NormalityScan(p.name, per_k, d_P, nu_P, k_P)


def decompose_point(p: Polytope, u: Vector, k: int, d_P: int):
    """Split u in kP∩M as x + (k - d_P) lattice points of P with x in d_P·P∩M.

    Greedy: at each level some unit always works because the level is at or
    above d_P; ties are broken lexicographically so the result is
    deterministic.
    """
    if k < d_P:
        raise InvariantError(f"k={k} must be >= d_P={d_P}")
    if not p.contains(u, k):
        raise InvariantError(f"{u} is not a lattice point of {k}P")
    units = []
    current = u
    pts = sorted(p.lattice_points(1))
    for level in range(k, d_P, -1):
        for w in pts:
            remainder = sub(current, w)
            if p.contains(remainder, level - 1):
                units.append(w)
                current = remainder
                break
        else:
            raise AssertionError("no unit peels off although level >= d_P (bug)")
    return current, tuple(units)


def dilate_normality_profile(p: Polytope, d_P: int):
    """Normality of the dilates mP for m = 1..d_P, and the least threshold.

    mP is normal exactly when its own decomposition threshold is 1; beyond
    d_P every dilate is normal, so the least n with "kP normal for all
    k >= n" is found by walking m downward from d_P while dilates stay
    normal.  Returns (threshold, {m: is_normal}).
    """
    flags = {m: compute_d_P(p.dilate(m)) == 1 for m in range(1, d_P + 1)}
    if not flags[d_P]:
        raise AssertionError(f"{d_P}P is not normal although m >= d_P (bug)")
    threshold = d_P
    for m in range(d_P - 1, 0, -1):
        if not flags[m]:
            break
        threshold = m
    return threshold, flags


def degree(p: Polytope) -> int:
    """Degree of P: dim if P has interior lattice points, else the smallest i
    such that kP is interior-point-free for 1 <= k <= dim - i."""
    d = p.dim
    for k in range(1, d + 1):
        if p.interior_lattice_points(k):
            return d - (k - 1)
    return 0


def volume_ehrhart(p: Polytope) -> int:
    """Normalized volume dim!·vol(P) via exact interpolation of |kP∩M|.

    The counts for k = 0..dim determine the degree-dim counting polynomial;
    the normalized volume is dim! times its leading coefficient.
    """
    d = p.dim
    counts = [1] + [len(p.lattice_points(k)) for k in range(1, d + 1)]
    vandermonde = tuple(tuple(k ** j for j in range(d + 1)) for k in range(d + 1))
    coeffs = solve_rational(vandermonde, tuple(counts))
    if isinstance(coeffs, str):
        raise AssertionError(f"point-count interpolation failed: {coeffs} (bug)")
    vol = coeffs[-1] * factorial(d)
    if vol.denominator != 1 or vol <= 0:
        raise AssertionError(f"normalized volume {vol} is not a positive integer (bug)")
    return int(vol)


def volume_triangulation(p: Polytope) -> int:
    """Normalized volume as a sum of |det| over a pulling triangulation."""
    total = 0
    for simplex in _triangulate(p):
        edges = tuple(sub(v, simplex[0]) for v in simplex[1:])
        total += abs(det_exact(edges))
    return total


def _triangulate(p: Polytope):
    """Pulling triangulation from the lexicographically least vertex.

    Facets avoiding the pulled vertex are triangulated recursively in a
    projected coordinate system (dropping one coordinate where the facet
    normal is nonzero, a bijection on the facet's affine hull).
    """
    d = p.dim
    verts = p.vertices
    if len(verts) == d + 1:
        return [verts]
    v0 = verts[0]
    simplices = []
    for f in p.facets:
        if f.slack(v0) == 0:
            continue
        fverts = [v for v in verts if f.slack(v) == 0]
        j = next(i for i, c in enumerate(f.normal) if c != 0)
        lift = {v[:j] + v[j + 1:]: v for v in fverts}
        face = from_points(lift.keys())
        for cell in _triangulate(face):
            simplices.append((v0,) + tuple(lift[q] for q in cell))
    return simplices


def is_smooth(p: Polytope) -> bool:
    """True iff each vertex has dim edges whose primitive directions are a
    lattice basis (|det| = 1)."""
    d = p.dim
    if d == 0:
        return True
    for v in p.vertices:
        fan = p.edge_fan(v)
        if len(fan.edge_directions) != d:
            return False
        if abs(det_exact(fan.edge_directions)) != 1:
            return False
    return True


def _edge_coefficients(p: Polytope, fan, target: Vector):
    """Nonnegative integer coordinates of target in the edge-direction basis."""
    basis_cols = tuple(zip(*fan.edge_directions))  # columns are directions
    sol = solve_rational(basis_cols, target)
    if isinstance(sol, str):
        raise AssertionError(f"edge basis is singular at {fan.vertex} (bug)")
    coeffs = []
    for a in sol:
        if a.denominator != 1 or a < 0:
            raise AssertionError(
                f"non-integral or negative edge coefficient {a} at {fan.vertex} (bug)")
        coeffs.append(int(a))
    return coeffs


def gamma(p: Polytope) -> int:
    """Least scaling of every vertex corner simplex that contains P.

    Equals the maximum coefficient sum when writing vertex differences in
    the edge-direction bases; only defined for smooth polytopes.
    """
    if not is_smooth(p):
        raise InvariantError("gamma requires a smooth polytope")
    if p.dim == 0:
        return 1
    best = 0
    for v in p.vertices:
        fan = p.edge_fan(v)
        for u in p.vertices:
            if u != v:
                best = max(best, sum(_edge_coefficients(p, fan, sub(u, v))))
    return best


def m_prime(p: Polytope) -> int:
    """Largest single edge-basis coefficient over all lattice points and
    vertices of a smooth polytope."""
    if not is_smooth(p):
        raise InvariantError("m_prime requires a smooth polytope")
    if p.dim == 0:
        return 1
    best = 0
    for v in p.vertices:
        fan = p.edge_fan(v)
        for u in sorted(p.lattice_points(1)):
            if u != v:
                best = max(best, max(_edge_coefficients(p, fan, sub(u, v))))
    return best


def smooth_data(p: Polytope) -> SmoothData:
    """Bundle of smoothness flag, edge fans, gamma and m_prime.

    gamma bounds a coefficient sum and m_prime a single coefficient, so the
    two are related by gamma <= dim * m_prime (each of the dim coefficients
    is at most m_prime).
    """
    smooth = is_smooth(p)
    fans = tuple(p.edge_fan(v) for v in p.vertices) if p.dim > 0 else ()
    if not smooth:
        return SmoothData(False, fans, None, None)
    g, mp = gamma(p), m_prime(p)
    if g > p.dim * mp:
        raise AssertionError(f"gamma={g} exceeds dim*m_prime={p.dim * mp} (bug)")
    return SmoothData(True, fans, g, mp)

"""Exact lattice-polytope geometry.

Polytopes are stored with both representations: the extreme points and the
full facet list (primitive inward inequalities normal·x <= offset).  All
constructions are validated; everything is full-dimensional by design, and
all predicates are decided in exact integer or rational arithmetic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactmath import (
    Vector,
    add,
    det_exact,
    dot,
    neg,
    primitive,
    rank,
    scale,
    sub,
    vec,
)

NOT_CONVEX = "not convex"


class GeometryError(ValueError):
    """Degenerate or invalid geometric input."""

    def __init__(self, message: str, *, affine_rank: int | None = None):
        super().__init__(message)
        self.affine_rank = affine_rank


@dataclass(frozen=True, order=True)
class HalfSpace:
    """One facet inequality normal·x <= offset, with primitive normal."""

    normal: Vector
    offset: int

    def slack(self, point: Vector, k: int = 1) -> int:
        """k*offset - normal·point; >= 0 inside the k-th dilate, 0 if tight."""
        return k * self.offset - dot(self.normal, point)


@dataclass(frozen=True)
class EdgeFan:
    """The edges incident to one vertex: primitive directions and neighbors."""

    vertex: Vector
    edge_directions: tuple[Vector, ...]
    neighbor_vertices: tuple[Vector, ...]

    def __post_init__(self):
        if len(set(self.edge_directions)) != len(self.edge_directions):
            raise GeometryError("edge directions must be pairwise distinct")


class Polytope:
    """Full-dimensional lattice polytope.

    Immutable after construction except for the internal memo table of
    lattice points per dilation factor, which is filled idempotently
    (safe for concurrent readers).
    """

    __slots__ = ("vertices", "dim", "facets", "name", "_vertex_set", "_point_cache")

    def __init__(self, vertices: tuple[Vector, ...], dim: int,
                 facets: tuple[HalfSpace, ...], name: str | None = None):
        self.vertices = vertices
        self.dim = dim
        self.facets = facets
        self.name = name
        self._vertex_set = frozenset(vertices)
        self._point_cache: dict[int, frozenset[Vector]] = {}
        self._validate()

    # -- construction invariants -------------------------------------------

    def _validate(self):
        d = self.dim
        if d == 0:
            if self.vertices != ((),) or self.facets != ():
                raise GeometryError("invalid 0-dimensional polytope")
            return
        if not self.vertices or not self.facets:
            raise GeometryError("polytope needs vertices and facets")
        for f in self.facets:
            if primitive(f.normal) != f.normal:
                raise GeometryError(f"facet normal {f.normal} is not primitive")
            for v in self.vertices:
                if f.slack(v) < 0:
                    raise GeometryError(f"vertex {v} violates facet {f}")
            tight = [v for v in self.vertices if f.slack(v) == 0]
            if len(tight) < d or rank(tuple(sub(p, tight[0]) for p in tight[1:])) != d - 1:
                raise GeometryError(f"facet {f} is not tight at d affinely independent vertices")
        for v in self.vertices:
            active = tuple(f.normal for f in self.facets if f.slack(v) == 0)
            if rank(active) != d:
                raise GeometryError(f"listed point {v} is not extreme")

    # -- basic queries -------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def is_vertex(self, point: Vector) -> bool:
        return point in self._vertex_set

    def contains(self, point: Vector, k: int = 1) -> bool:
        """Membership of an integer point in the k-th dilate."""
        return all(f.slack(point, k) >= 0 for f in self.facets)

    def strictly_contains(self, point: Vector, k: int = 1) -> bool:
        if self.dim == 0:
            return False
        return all(f.slack(point, k) > 0 for f in self.facets)

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return (f"<Polytope{label} dim={self.dim} vertices={self.num_vertices} "
                f"facets={len(self.facets)}>")

    # -- lattice points ------------------------------------------------------

    def lattice_points(self, k: int = 1) -> frozenset[Vector]:
        """All lattice points of the k-th dilate, by bounding-box scan."""
        if k < 1:
            raise ValueError("dilation factor must be >= 1")
        cached = self._point_cache.get(k)
        if cached is not None:
            return cached
        if self.dim == 0:
            points = frozenset({()})
        else:
            lows = [min(k * v[i] for v in self.vertices) for i in range(self.dim)]
            highs = [max(k * v[i] for v in self.vertices) for i in range(self.dim)]
            axes = [range(lo, hi + 1) for lo, hi in zip(lows, highs)]
            facets = [(f.normal, k * f.offset) for f in self.facets]
            points = frozenset(
                p for p in itertools.product(*axes)
                if all(dot(n, p) <= c for n, c in facets)
            )
        # setdefault keeps the fill idempotent under concurrent callers
        return self._point_cache.setdefault(k, points)

    def interior_lattice_points(self, k: int = 1) -> frozenset[Vector]:
        """Lattice points strictly inside the k-th dilate."""
        return frozenset(p for p in self.lattice_points(k) if self.strictly_contains(p, k))

    # -- derived constructions ------------------------------------------------

    def edge_fan(self, v: Vector) -> EdgeFan:
        """Primitive edge directions at a vertex.

        A second vertex u spans an edge with v exactly when the facets tight
        at both have normals of rank dim-1.
        """
        if not self.is_vertex(v):
            raise GeometryError(f"{v} is not a vertex")
        d = self.dim
        active_v = [f for f in self.facets if f.slack(v) == 0]
        pairs = []
        for u in self.vertices:
            if u == v:
                continue
            common = tuple(f.normal for f in active_v if f.slack(u) == 0)
            if rank(common) == d - 1:
                pairs.append((primitive(sub(u, v)), u))
        pairs.sort()
        return EdgeFan(v, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def dilate(self, m: int, name: str | None = None) -> "Polytope":
        """The dilate m*P, constructed directly from the scaled data."""
        if m < 1:
            raise ValueError("dilation factor must be >= 1")
        if m == 1:
            return self
        return Polytope(
            tuple(scale(m, v) for v in self.vertices), self.dim,
            tuple(HalfSpace(f.normal, m * f.offset) for f in self.facets),
            name or (f"{self.name}*{m}" if self.name else None),
        )


# -- hull construction ---------------------------------------------------------


def _hyperplane_normal(points: tuple[Vector, ...]) -> Vector | None:
    """Normal of the hyperplane through d points of ZZ^d (cofactor cross product).

    Returns None when the points do not affinely span a hyperplane.
    """
    d = len(points[0])
    diffs = [sub(p, points[0]) for p in points[1:]]
    normal = []
    sign = 1
    for i in range(d):
        minor = tuple(tuple(row[j] for j in range(d) if j != i) for row in diffs)
        normal.append(sign * det_exact(minor))
        sign = -sign
    if all(x == 0 for x in normal):
        return None
    return tuple(normal)


def hrep_from_vrep(points) -> tuple[HalfSpace, ...]:
    """Facet inequalities of the convex hull of a full-dimensional point set.

    Brute force over d-subsets: each candidate hyperplane is kept iff every
    input point lies on one side.  Exact, and every facet is found because a
    facet contains d affinely independent hull vertices.
    """
    pts = sorted({vec(p) for p in points})
    if not pts:
        raise GeometryError("empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise GeometryError("points of mixed dimension")
    if d == 0:
        return ()
    arank = rank(tuple(sub(p, pts[0]) for p in pts[1:]))
    if arank < d:
        raise GeometryError(
            f"point set is not full-dimensional (affine rank {arank} < {d})",
            affine_rank=arank)
    found = set()
    for subset in itertools.combinations(pts, d):
        normal = _hyperplane_normal(subset)
        if normal is None:
            continue
        c = dot(normal, subset[0])
        above = below = False
        for p in pts:
            s = dot(normal, p)
            if s > c:
                above = True
            elif s < c:
                below = True
            if above and below:
                break
        if above and below:
            continue
        if above:
            normal, c = neg(normal), -c
        g = gcd(*normal)
        found.add(HalfSpace(tuple(x // g for x in normal), c // g))
    return tuple(sorted(found))


def from_points(points, name: str | None = None) -> Polytope:
    """Validated polytope from any full-dimensional set of lattice points."""
    pts = sorted({vec(p) for p in points})
    if not pts:
        raise GeometryError("empty point set")
    d = len(pts[0])
    if d == 0:
        return Polytope(((),), 0, (), name)
    facets = hrep_from_vrep(pts)
    verts = []
    for p in pts:
        active = tuple(f.normal for f in facets if f.slack(p) == 0)
        if rank(active) == d:
            verts.append(p)
    return Polytope(tuple(verts), d, facets, name)


# -- product / join / union ----------------------------------------------------


def product(p: Polytope, q: Polytope, name: str | None = None) -> Polytope:
    """Cartesian product; vertices are all pairs of factor vertices."""
    points = [u + w for u in p.vertices for w in q.vertices]
    return from_points(points, name)


def join(p: Polytope, q: Polytope, name: str | None = None) -> Polytope:
    """Join: embed the factors at heights 0 and 1 of a fresh coordinate.

    The result lives in dimension dim(p) + dim(q) + 1 and has
    |vertices(p)| + |vertices(q)| vertices.
    """
    zp = (0,) * p.dim
    zq = (0,) * q.dim
    points = [u + zq + (0,) for u in p.vertices]
    points += [zp + w + (1,) for w in q.vertices]
    return from_points(points, name)


def union_if_convex(parts):
    """Convex hull of a union of polytopes, if the union is that hull.

    Returns the hull polytope when the parts exactly cover it, else the
    sentinel NOT_CONVEX.  Coverage is decided exactly: after a cheap
    lattice-point screen, every candidate uncovered region (hull intersected
    with one violated facet per part) is tested for emptiness by
    Fourier-Motzkin elimination over the rationals.
    """
    parts = list(parts)
    if not parts:
        raise GeometryError("empty union")
    d = parts[0].dim
    if any(q.dim != d for q in parts):
        raise GeometryError("union parts must share ambient dimension")
    hull = from_points([v for q in parts for v in q.vertices])
    if d == 0:
        return hull
    for k in (1, 2):
        covered = set()
        for q in parts:
            covered |= q.lattice_points(k)
        if hull.lattice_points(k) != covered:
            return NOT_CONVEX
    base = [(f.normal, f.offset, False) for f in hull.facets]

    def uncovered_region_exists(i, constraints):
        if not fm_feasible(constraints, d):
            return False
        if i == len(parts):
            return True
        return any(
            uncovered_region_exists(i + 1, constraints + [(neg(f.normal), -f.offset, True)])
            for f in parts[i].facets
        )

    if uncovered_region_exists(0, base):
        return NOT_CONVEX
    return hull


def fm_feasible(constraints, nvars: int) -> bool:
    """Feasibility of {x : coeffs·x <= rhs, strict where flagged} over QQ.

    Fourier-Motzkin elimination; exact, complete for rational polyhedra.
    Constraints are (coeffs, rhs, strict) triples.
    """
    cons = {(tuple(coeffs), Fraction(rhs), strict) for coeffs, rhs, strict in constraints}
    for j in range(nvars):
        uppers, lowers, rest = [], [], set()
        for coeffs, rhs, strict in cons:
            cj = coeffs[j]
            if cj > 0:
                uppers.append((coeffs, rhs, strict))
            elif cj < 0:
                lowers.append((coeffs, rhs, strict))
            else:
                rest.add((coeffs, rhs, strict))
        for (cu, ru, su) in uppers:
            for (cl, rl, sl) in lowers:
                a, b = cu[j], -cl[j]
                coeffs = tuple(b * x + a * y for x, y in zip(cu, cl))
                new = (coeffs, b * ru + a * rl, su or sl)
                rest.add(_fm_normalize(new))
        cons = rest
    for coeffs, rhs, strict in cons:
        if rhs < 0 or (rhs == 0 and strict):
            return False
    return True


def _fm_normalize(constraint):
    coeffs, rhs, strict = constraint
    g = gcd(*(abs(c) for c in coeffs)) if any(coeffs) else 0
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        rhs = rhs / g
    return (coeffs, rhs, strict)


# -- input formats ---------------------------------------------------------------


def parse_points_json(text: str):
    """JSON polytope input: {"name": optional, "vertices": [[int, ...], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GeometryError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict) or "vertices" not in data:
        raise GeometryError('JSON input must be an object with a "vertices" array')
    rows = data["vertices"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise GeometryError('"vertices" must be an array of coordinate arrays')
    try:
        points = [vec(r) for r in rows]
    except TypeError as e:
        raise GeometryError(str(e)) from e
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise GeometryError('"name" must be a string')
    return points, name


def parse_points_text(text: str):
    """Plain-text polytope input: one point per line, '#' comments ignored."""
    points = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            points.append(vec(int(tok) for tok in body.split()))
        except ValueError as e:
            raise GeometryError(f"line {lineno}: {e}") from e
    return points, None

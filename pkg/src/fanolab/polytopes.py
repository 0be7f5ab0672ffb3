"""Lattice polytope geometry with exact rational arithmetic.

Convex hulls are computed by brute-force facet enumeration (desk scale: few
points, dimension <= 3 for the certified paths).  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .laurent import ZeroPolynomialError
from .linalg import hnf_basis, hnf_rows, nullspace, primitive_part, rref


class DegeneratePolytopeError(ValueError):
    pass


class OriginNotInteriorError(ValueError):
    pass


class NotSimplexError(ValueError):
    pass


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    _, _, r = hnf_rows(diffs)
    return r


def _hyperplane_normal(points, rank):
    """Primitive integer normal of the hyperplane through the given points.

    Returns None when the points do not span an affine hyperplane.
    """
    p0 = points[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    basis = nullspace(diffs, ncols=rank)
    if len(basis) != 1:
        return None
    v = basis[0]
    denom = 1
    for x in v:
        denom = denom * x.denominator // __import__("math").gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    return primitive_part(ints)


def _facets_full_dim(points, rank):
    """All facets of conv(points) as (inner primitive normal u, offset c).

    The polytope is { v : <u,v> >= -c }.  Assumes the points affinely span.
    """
    facets = {}
    for subset in combinations(points, rank):
        u = _hyperplane_normal(list(subset), rank)
        if u is None:
            continue
        alpha = sum(a * b for a, b in zip(u, subset[0]))
        lo = hi = False
        for p in points:
            val = sum(a * b for a, b in zip(u, p))
            if val < alpha:
                lo = True
            elif val > alpha:
                hi = True
            if lo and hi:
                break
        if lo and hi:
            continue
        if hi:  # points on the >= side: u is already the inner normal
            facets[(u, -alpha)] = None
        elif lo:
            u = tuple(-x for x in u)
            facets[(u, alpha)] = None
        else:
            # all points on the hyperplane: degenerate input
            raise DegeneratePolytopeError("points do not span the space")
    return sorted(facets)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points, stored by vertices and facet data.

    ``facets`` is a tuple of ``(u, c)`` with u a primitive inner normal and
    the polytope cut out by <u, v> >= -c; it is empty for lower-dimensional
    polytopes.
    """

    rank: int
    vertices: tuple
    facets: tuple
    dim: int

    @classmethod
    def from_points(cls, points, rank=None):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("need at least one point")
        if rank is None:
            rank = len(pts[0])
        if any(len(p) != rank for p in pts):
            raise ValueError("points of mixed dimension")
        dim = _affine_rank(pts)
        if dim == 0:
            return cls(rank, (pts[0],), (), 0)
        if dim < rank:
            verts = _lower_dim_vertices(pts, rank, dim)
            return cls(rank, tuple(verts), (), dim)
        facets = _facets_full_dim(pts, rank)
        verts = []
        for p in pts:
            active = [u for (u, c) in facets
                      if sum(a * b for a, b in zip(u, p)) == -c]
            if len(active) >= rank:
                _, pivots = rref(active)
                if len(pivots) == rank:
                    verts.append(p)
        return cls(rank, tuple(sorted(verts)), tuple(facets), dim)

    @property
    def is_full_dimensional(self):
        return self.dim == self.rank

    def require_full_dim(self):
        if not self.is_full_dimensional:
            raise DegeneratePolytopeError(
                f"polytope has dimension {self.dim} < rank {self.rank}")

    def contains(self, point):
        self.require_full_dim()
        return all(sum(a * b for a, b in zip(u, point)) >= -c
                   for (u, c) in self.facets)

    def on_boundary(self, point):
        self.require_full_dim()
        onto = False
        for (u, c) in self.facets:
            val = sum(a * b for a, b in zip(u, point))
            if val < -c:
                return False
            if val == -c:
                onto = True
        return onto

    def bounding_box(self):
        lo = [min(v[i] for v in self.vertices) for i in range(self.rank)]
        hi = [max(v[i] for v in self.vertices) for i in range(self.rank)]
        return lo, hi

    def origin_strictly_interior(self):
        self.require_full_dim()
        return all(c > 0 for (_, c) in self.facets)

    def to_json_dict(self):
        return {"n": self.rank, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json_dict(cls, data):
        return cls.from_points(data["vertices"], rank=int(data["n"]))


def _lower_dim_vertices(pts, rank, dim):
    """Vertices of a lower-dimensional hull via lattice coordinates."""
    p0 = pts[0]
    diffs = [[x - y for x, y in zip(p, p0)] for p in pts]
    basis = hnf_basis(diffs)
    coords = []
    for d in diffs:
        sol = _solve_integer(basis, d)
        coords.append(tuple(sol))
    if dim == 1:
        lo = min(coords)
        hi = max(coords)
        keep = {coords.index(lo), coords.index(hi)}
    else:
        inner = LatticePolytope.from_points(coords, rank=dim)
        keep = {coords.index(v) for v in inner.vertices}
    return sorted(pts[i] for i in keep)


def _solve_integer(basis_rows, target):
    """Express target as an integer combination of lattice basis rows."""
    a = [[basis_rows[j][i] for j in range(len(basis_rows))]
         for i in range(len(target))]
    aug = [row + [t] for row, t in zip(a, target)]
    rows, pivots = rref(aug)
    ncols = len(basis_rows)
    x = [Fraction(0)] * ncols
    for r, pc in zip(rows, pivots):
        if pc == ncols:
            raise ValueError("target not in lattice span")
        x[pc] = r[ncols]
    if any(v.denominator != 1 for v in x):
        raise ValueError("target not in the integer lattice")
    return [int(v) for v in x]


# ---------------------------------------------------------------------------
# operations


def newton_polytope(f):
    """Convex hull of the exponent vectors of a nonzero Laurent polynomial."""
    if f.is_zero():
        raise ZeroPolynomialError("Newton polytope of 0 is undefined")
    return LatticePolytope.from_points(f.support(), rank=f.rank)


@dataclass(frozen=True)
class FanoReport:
    origin_interior: bool
    vertices_primitive: bool

    @property
    def is_fano(self):
        return self.origin_interior and self.vertices_primitive


def is_fano(p):
    p.require_full_dim()
    from .linalg import vec_gcd
    return FanoReport(
        origin_interior=p.origin_strictly_interior(),
        vertices_primitive=all(vec_gcd(v) == 1 for v in p.vertices),
    )


@dataclass(frozen=True)
class DualPolytope:
    """Polar dual; vertices are exact rationals, one per facet of the input."""

    rank: int
    vertices: tuple
    integral: bool

    def to_lattice_polytope(self):
        if not self.integral:
            raise ValueError("dual polytope is not integral")
        return LatticePolytope.from_points(
            [tuple(int(x) for x in v) for v in self.vertices], rank=self.rank)


def dual_polytope(p):
    p.require_full_dim()
    if not p.origin_strictly_interior():
        raise OriginNotInteriorError(
            "polar dual is unbounded: origin not strictly interior")
    verts = []
    for (u, c) in p.facets:
        verts.append(tuple(Fraction(x, c) for x in u))
    integral = all(x.denominator == 1 for v in verts for x in v)
    return DualPolytope(p.rank, tuple(sorted(verts)), integral)


def is_reflexive(p):
    """True iff the polar dual is integral; equivalently every offset is 1."""
    p.require_full_dim()
    if not p.origin_strictly_interior():
        raise OriginNotInteriorError("reflexivity needs the origin interior")
    return all(c == 1 for (_, c) in p.facets)


@dataclass(frozen=True)
class LatticePointSet:
    all: tuple
    boundary: tuple
    interior: tuple


def lattice_points(p):
    """Exhaustive bounding-box enumeration with exact membership tests."""
    p.require_full_dim()
    lo, hi = p.bounding_box()
    pts, bdry, intr = [], [], []
    for q in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        vals = [sum(a * b for a, b in zip(u, q)) + c for (u, c) in p.facets]
        if any(v < 0 for v in vals):
            continue
        pts.append(q)
        if any(v == 0 for v in vals):
            bdry.append(q)
        else:
            intr.append(q)
    return LatticePointSet(tuple(pts), tuple(bdry), tuple(intr))


# ---------------------------------------------------------------------------
# normal form


@dataclass(frozen=True)
class NormalForm:
    """Canonical vertex matrix under GL(n,Z), plus a stable byte encoding.

    Equality of encodings decides lattice equivalence; certified for
    rank <= 3 (the pairing-matrix canonicalization used here is the standard
    one for reflexive-polytope databases).
    """

    matrix: tuple
    encoding: bytes
    certified: bool

    def __eq__(self, other):
        if not isinstance(other, NormalForm):
            return NotImplemented
        return self.encoding == other.encoding

    def __hash__(self):
        return hash(self.encoding)


def _hnf_columns_canonical(vertex_cols, rank):
    """Canonical left-GL(n,Z) form of the n x k vertex matrix."""
    k = len(vertex_cols)
    a = [[vertex_cols[j][i] for j in range(k)] for i in range(rank)]
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, rank) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rank):
            while a[i][col] != 0:
                q = a[r][col] // a[i][col]
                for j in range(k):
                    a[r][j] -= q * a[i][j]
                a[r], a[i] = a[i], a[r]
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                for j in range(k):
                    a[i][j] -= q * a[r][j]
        r += 1
        if r == rank:
            break
    return tuple(tuple(row) for row in a)


def normal_form(p):
    """GL(n,Z)-canonical form via vertex-facet pairing matrix maximisation."""
    p.require_full_dim()
    verts = list(p.vertices)
    normals = [u for (u, _) in p.facets]
    k = len(verts)
    pairing = [[sum(a * b for a, b in zip(u, v)) for v in verts]
               for u in normals]
    best_key = None
    best_perms = []
    for sigma in permutations(range(k)):
        rows = sorted((tuple(row[j] for j in sigma) for row in pairing),
                      reverse=True)
        key = tuple(rows)
        if best_key is None or key > best_key:
            best_key = key
            best_perms = [sigma]
        elif key == best_key:
            best_perms.append(sigma)
    best_matrix = None
    for sigma in best_perms:
        cols = [verts[j] for j in sigma]
        h = _hnf_columns_canonical(cols, p.rank)
        if best_matrix is None or h < best_matrix:
            best_matrix = h
    encoding = repr((p.rank, best_matrix)).encode()
    return NormalForm(best_matrix, encoding, certified=p.rank <= 3)


# ---------------------------------------------------------------------------
# weighted projective recognition


def simplex_weights(p):
    """Primitive positive relation among the vertices of a Fano simplex.

    Returns the ascending weight vector of the weighted projective space
    given by the spanning fan.
    """
    p.require_full_dim()
    if len(p.vertices) != p.rank + 1:
        raise NotSimplexError(
            f"{len(p.vertices)} vertices; a rank-{p.rank} simplex needs "
            f"{p.rank + 1}")
    if not p.origin_strictly_interior():
        raise OriginNotInteriorError("weights need the origin interior")
    cols = [[v[i] for v in p.vertices] for i in range(p.rank)]
    basis = nullspace(cols, ncols=p.rank + 1)
    if len(basis) != 1:
        raise NotSimplexError("vertices do not satisfy a unique relation")
    v = basis[0]
    denom = 1
    import math
    for x in v:
        denom = denom * x.denominator // math.gcd(denom, x.denominator)
    ints = primitive_part([int(x * denom) for x in v])
    if all(x < 0 for x in ints):
        ints = tuple(-x for x in ints)
    if any(x <= 0 for x in ints):
        raise OriginNotInteriorError(
            "relation is not positive: origin not interior to the simplex")
    return tuple(sorted(ints))

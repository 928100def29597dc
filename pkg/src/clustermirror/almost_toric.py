"""Nodal trades on moment polytopes and the resulting almost toric
base diagrams.

2D polytopes are (possibly unbounded) convex polygons given by an
ordered vertex chain: the boundary runs in from infinity along the
start ray (if any), through the vertices, and back out along the end
ray, with the interior on the left.  Higher-dimensional polytopes are
H-representations; trades target codimension-2 faces (pairs of
facets).

A trade at a smooth corner excises the local model triangle and puts a
focus-focus singularity at chart^{-1}(t*(1,1)).  The recorded
monodromy lives on the character lattice of the fiber, so it
transforms contravariantly in the chart: for chart matrix M it is
M^T F M^{-T} with F = [[2,1],[-1,0]].  Its transpose is the transport
on base tangent vectors, which is the matrix that fixes the eigen
direction M^{-1}(1,1) and carries one boundary edge across the cut to
the other (the smoothness criterion).  This is also what makes the
duality test work: the recorded matrix equals the transpose of the
B-side monodromy of the eigen direction.
"""

from dataclasses import dataclass
from fractions import Fraction

from .lattice import (AffineSubspace, Infeasible, Point, det, is_unimodular,
                      mat_inv, mat_mul, mat_vec, primitive_part, solve_rational,
                      transpose, vec_sub)
from .skeleton import Handle, Skeleton, circle_class, intersection_number
from .syz_base import monodromy_matrix
from .svg import SvgCanvas

FOCUS_FOCUS = ((2, 1), (-1, 0))


class AlmostToricError(ValueError):
    pass


class InfeasibleBase(AlmostToricError):
    """No common basepoint; carries an offending pair of eigenloci."""
    def __init__(self, pair, message):
        self.pair = pair
        super().__init__(message)


@dataclass(frozen=True)
class MomentPolytope:
    """dimension 2: ordered rational vertices, optional (start, end) ray
    directions.  dimension > 2: facets as (inward normal, rhs) pairs
    meaning normal . x >= rhs."""
    dimension: int
    vertices: tuple = ()
    rays: tuple = ()       # () for bounded, else (d_start, d_end)
    facets: tuple = ()

    def __post_init__(self):
        if self.dimension == 2:
            if not self.vertices:
                raise AlmostToricError("polygon needs at least one vertex")
            if self.rays and len(self.rays) != 2:
                raise AlmostToricError("unbounded polygon carries exactly two ray directions")
            if not self.rays and len(self.vertices) < 3:
                raise AlmostToricError("bounded polygon needs at least three vertices")
        elif self.dimension > 2:
            if not self.facets:
                raise AlmostToricError("H-representation needs facets")
        else:
            raise AlmostToricError("dimension must be at least 2")


@dataclass(frozen=True)
class NodalTrade:
    target: object          # vertex index (2D) or (i, j) facet pair (nD)
    chart: tuple = None     # (M, p): x -> M (x - p); derived for 2D corners if None
    t: Fraction = Fraction(1)

    def __post_init__(self):
        if Fraction(self.t) <= 0:
            raise AlmostToricError("singularity distance t must be positive")


@dataclass(frozen=True)
class Singularity:
    trade: NodalTrade
    chart: tuple            # (M, p)
    position: tuple         # 2D: point; nD: point on the singular locus
    locus_basis: tuple      # () in 2D; basis of the codim-2 locus in nD
    eigen: tuple            # primitive direction of the eigenline / plane
    monodromy: tuple
    cut: tuple              # (origin, direction) pointing back toward the face


@dataclass(frozen=True)
class AlmostToricBase:
    polytope: MomentPolytope
    singularities: tuple
    interactions: tuple


def _rational_direction(v):
    """Primitive integer vector parallel to a rational vector."""
    from math import lcm
    denom = 1
    for x in v:
        denom = lcm(denom, Fraction(x).denominator)
    return primitive_part(tuple(int(Fraction(x) * denom) for x in v))


def _corner_edges(poly, i):
    """The two primitive boundary directions leaving vertex i."""
    vs = poly.vertices
    if i < 0 or i >= len(vs):
        raise AlmostToricError("no such vertex")
    if i > 0:
        back = _rational_direction(vec_sub(vs[i - 1], vs[i]))
    elif poly.rays:
        back = poly.rays[0]
    else:
        back = _rational_direction(vec_sub(vs[-1], vs[i]))
    if i < len(vs) - 1:
        fwd = _rational_direction(vec_sub(vs[i + 1], vs[i]))
    elif poly.rays:
        fwd = poly.rays[1]
    else:
        fwd = _rational_direction(vec_sub(vs[0], vs[i]))
    return back, fwd


def smoothable_corner_chart(poly, vertex):
    """Unimodular chart x -> M (x - p) taking the corner at the vertex
    to the standard corner of (R>=0)^2."""
    if poly.dimension != 2:
        raise AlmostToricError("corner charts are 2D only")
    a, b = _corner_edges(poly, vertex)
    d = a[0] * b[1] - a[1] * b[0]
    if d not in (1, -1):
        raise AlmostToricError("corner not integral-affine standard")
    ab = ((a[0], b[0]), (a[1], b[1]))
    inv = tuple(tuple(int(x) for x in row) for row in mat_inv(ab))
    if d == 1:
        M = inv                          # a -> e1, b -> e2
    else:
        M = (inv[1], inv[0])             # a -> e2, b -> e1
    return (M, poly.vertices[vertex])


def chart_apply(chart, x):
    M, p = chart
    return mat_vec(M, vec_sub(x, p))


def chart_unapply(chart, y):
    M, p = chart
    Minv = mat_inv(M)
    return tuple(a + b for a, b in zip(mat_vec(Minv, y), p))


def polygon_inequalities(poly):
    """Inward half-planes (normal, rhs) with normal . x >= rhs."""
    vs = poly.vertices
    ineqs = []

    def edge(dirvec, point):
        nrm = (-dirvec[1], dirvec[0])
        rhs = nrm[0] * Fraction(point[0]) + nrm[1] * Fraction(point[1])
        ineqs.append((nrm, rhs))

    if poly.rays:
        edge((-poly.rays[0][0], -poly.rays[0][1]), vs[0])
    for i in range(len(vs) - 1):
        edge(vec_sub(vs[i + 1], vs[i]), vs[i])
    if poly.rays:
        edge(poly.rays[1], vs[-1])
    else:
        edge(vec_sub(vs[0], vs[-1]), vs[-1])
    return ineqs


def point_in_polygon(poly, q, strict=True):
    for nrm, rhs in polygon_inequalities(poly):
        val = nrm[0] * Fraction(q[0]) + nrm[1] * Fraction(q[1])
        if val < rhs or (strict and val == rhs):
            return False
    return True


def _excised_triangle(chart, t):
    """The local-model triangle hull{0, (2t,0), (0,2t)} pulled back to
    polygon coordinates; the singularity sits on its hypotenuse."""
    t = Fraction(t)
    return tuple(chart_unapply(chart, y)
                 for y in ((0, 0), (2 * t, 0), (0, 2 * t)))


def _project(pts, axis):
    vals = [axis[0] * Fraction(p[0]) + axis[1] * Fraction(p[1]) for p in pts]
    return min(vals), max(vals)


def convex_polygons_intersect(A, B):
    """Separating-axis test for closed convex polygons, exact."""
    for pts in (A, B):
        m = len(pts)
        for i in range(m):
            e = vec_sub(pts[(i + 1) % m], pts[i])
            axis = (-e[1], e[0])
            a_lo, a_hi = _project(A, axis)
            b_lo, b_hi = _project(B, axis)
            if a_hi < b_lo or b_hi < a_lo:
                return False
    return True


def _trade_singularity_2d(poly, trade):
    chart = trade.chart
    if chart is None:
        chart = smoothable_corner_chart(poly, trade.target)
    else:
        M, p = chart
        if not is_unimodular(M):
            raise AlmostToricError("chart matrix must be unimodular")
        chart = (tuple(tuple(row) for row in M), tuple(p))
    M, p = chart
    t = Fraction(trade.t)
    pos = chart_unapply(chart, (t, t))
    Minv = tuple(tuple(int(x) for x in row) for row in mat_inv(M))
    eigen = primitive_part(mat_vec(Minv, (1, 1)))
    mono = mat_mul(mat_mul(transpose(M), FOCUS_FOCUS),
                   tuple(tuple(int(x) for x in row) for row in mat_inv(transpose(M))))
    cut = (pos, tuple(-e for e in eigen))
    return Singularity(trade, chart, pos, (), eigen, mono, cut)


def _facet(poly, i):
    try:
        return poly.facets[i]
    except IndexError:
        raise AlmostToricError("no such facet")


def _trade_singularity_nd(poly, trade):
    if trade.chart is None:
        raise AlmostToricError("explicit charts are required above dimension 2")
    M, p = trade.chart
    n = poly.dimension
    if len(M) != n or not is_unimodular(M):
        raise AlmostToricError("chart matrix must be unimodular of the ambient dimension")
    t = Fraction(trade.t)
    Minv = tuple(tuple(Fraction(x) for x in row) for row in mat_inv(M))
    model_pt = (t, t) + (Fraction(0),) * (n - 2)
    pos = tuple(a + b for a, b in zip(mat_vec(Minv, model_pt), p))
    basis = tuple(tuple(int(Minv[i][j]) for i in range(n)) for j in range(2, n))
    eigen = primitive_part(tuple(int(Minv[i][0] + Minv[i][1]) for i in range(n)))
    mono = None  # the 2x2 model matrix acts in the transverse slice only
    cut = (pos, tuple(-e for e in eigen))
    return Singularity(trade, (M, tuple(p)), pos, basis, eigen, mono, cut)


def detect_interactions(poly, trades):
    """Pairs of traded codim-2 faces whose closures intersect (nD).
    2D bases report nothing: distinct vertices never meet."""
    if poly.dimension == 2:
        return ()
    out = []
    for ai in range(len(trades)):
        for bi in range(ai + 1, len(trades)):
            fa, fb = trades[ai].target, trades[bi].target
            eqs = []
            for fid in set(fa) | set(fb):
                nrm, rhs = _facet(poly, fid)
                eqs.append((nrm, rhs))
            A = [list(n) for n, _ in eqs]
            b = [r for _, r in eqs]
            sol = solve_rational(A, b)
            if isinstance(sol, Infeasible):
                continue
            ineqs = [(_facet(poly, i)) for i in range(len(poly.facets))
                     if i not in set(fa) | set(fb)]
            if isinstance(sol, Point):
                ok = all(sum(Fraction(n[j]) * sol.coords[j] for j in range(len(n))) >= r
                         for n, r in ineqs)
            else:
                ok = _feasible_on_subspace(sol, ineqs)
            if ok:
                out.append((ai, bi))
    return tuple(out)


def _feasible_on_subspace(sub, ineqs):
    """Fourier-Motzkin feasibility of normal.x >= rhs restricted to an
    affine subspace (exact rationals)."""
    point, basis = sub.point, sub.basis
    k = len(basis)
    system = []
    for n, r in ineqs:
        const = sum(Fraction(ni) * pi for ni, pi in zip(n, point))
        coeffs = [sum(Fraction(ni) * bi for ni, bi in zip(n, bvec)) for bvec in basis]
        system.append((coeffs, r - const))    # coeffs . y >= rhs'
    for var in range(k):
        lower, upper, rest = [], [], []
        for coeffs, rhs in system:
            c = coeffs[var]
            if c > 0:
                lower.append(([x / c for x in coeffs], rhs / c))
            elif c < 0:
                upper.append(([x / c for x in coeffs], rhs / c))
            else:
                rest.append((coeffs, rhs))
        new = rest
        for lc, lr in lower:
            for uc, ur in upper:
                coeffs = [u - l for u, l in zip(lc, uc)]
                coeffs[var] = Fraction(0)
                new.append((coeffs, lr - ur))
        system = new
    return all(rhs <= 0 for _, rhs in system)


def apply_trades(poly, trades):
    targets = [tr.target for tr in trades]
    if len(set(targets)) != len(targets):
        raise AlmostToricError("trade targets must be distinct")
    if poly.dimension == 2:
        sings = tuple(_trade_singularity_2d(poly, tr) for tr in trades)
        for i in range(len(sings)):
            for j in range(i + 1, len(sings)):
                ti = _excised_triangle(sings[i].chart, trades[i].t)
                tj = _excised_triangle(sings[j].chart, trades[j].t)
                if convex_polygons_intersect(ti, tj):
                    raise AlmostToricError(
                        "overlapping trade neighborhoods: trades %d and %d" % (i, j))
        return AlmostToricBase(poly, sings, ())
    sings = tuple(_trade_singularity_nd(poly, tr) for tr in trades)
    return AlmostToricBase(poly, sings, detect_interactions(poly, trades))


def transport_matrix(sing):
    """Boundary-edge transport across the cut, rebuilt from the
    recorded character-lattice monodromy.

    recorded = M^T F M^{-T}, so F = M^{-T} recorded M^T and the edge
    transport in polygon coordinates is M^{-1} F M."""
    M, _p = sing.chart
    Minv = tuple(tuple(int(x) for x in row) for row in mat_inv(M))
    Mt = transpose(M)
    Mtinv = transpose(Minv)
    F = mat_mul(mat_mul(Mtinv, sing.monodromy), Mt)
    return mat_mul(mat_mul(Minv, F), M)


def smoothness_check(base):
    """Per trade: does the recorded monodromy carry one boundary edge
    of the traded corner across the cut onto the other?

    The check rebuilds the transport from the recorded matrix rather
    than from F directly, so a corrupted monodromy fails it."""
    if base.polytope.dimension != 2:
        raise AlmostToricError("smoothness check is 2D only")
    results = []
    for sing in base.singularities:
        M, _p = sing.chart
        a, b = _corner_edges(base.polytope, sing.trade.target)
        d = a[0] * b[1] - a[1] * b[0]
        lo, hi = (a, b) if d == 1 else (b, a)   # lo -> e1, hi -> e2
        results.append(mat_vec(transport_matrix(sing), hi) == lo)
    return results


def _eigen_equation(sing):
    """normal . x = rhs for the eigenline (2D) or eigenhyperplane (nD)
    through the singular locus."""
    if len(sing.eigen) == 2 and not sing.locus_basis:
        nrm = (-sing.eigen[1], sing.eigen[0])
    else:
        M, _p = sing.chart
        n = len(M)
        nrm = tuple(int(M[0][j] - M[1][j]) for j in range(n))
    rhs = sum(Fraction(a) * Fraction(x) for a, x in zip(nrm, sing.position))
    return nrm, rhs


def common_basepoint(base):
    """A rational point on every eigenline / eigenhyperplane.

    Unique solutions come back as (q, None).  Positive-dimensional
    solution sets come back as (q, subspace) where q is the orthogonal
    projection of the singularity centroid onto the solution set (a
    canonical choice that lands near the action, unlike a raw
    free-variable assignment).  Raises InfeasibleBase otherwise."""
    sings = base.singularities
    if not sings:
        raise AlmostToricError("no trades, no eigenloci")
    eqs = [_eigen_equation(s) for s in sings]
    A = [list(n) for n, _ in eqs]
    b = [r for _, r in eqs]
    sol = solve_rational(A, b)
    if isinstance(sol, Infeasible):
        for i in range(len(eqs)):
            for j in range(i + 1, len(eqs)):
                pair_sol = solve_rational([A[i], A[j]], [b[i], b[j]])
                if isinstance(pair_sol, Infeasible):
                    raise InfeasibleBase(
                        (i, j), "eigenloci of trades %d and %d never meet" % (i, j))
        raise InfeasibleBase(None, "eigenloci have no common point")
    if isinstance(sol, Point):
        return sol.coords, None
    dim = len(sol.point)
    centroid = tuple(
        sum(Fraction(s.position[i]) for s in sings) / len(sings) for i in range(dim))
    q = _project_onto_affine(centroid, sol)
    return q, sol


def _project_onto_affine(x, sub):
    """Orthogonal projection of x onto point + span(basis), exact."""
    point, basis = sub.point, sub.basis
    k = len(basis)
    diff = [Fraction(a) - Fraction(b) for a, b in zip(x, point)]
    G = [[sum(Fraction(u) * Fraction(v) for u, v in zip(basis[i], basis[j]))
          for j in range(k)] for i in range(k)]
    rhs = [sum(Fraction(u) * d for u, d in zip(basis[i], diff)) for i in range(k)]
    coef = solve_rational(G, rhs)
    assert isinstance(coef, Point)
    out = list(point)
    for c, bvec in zip(coef.coords, basis):
        for i in range(len(out)):
            out[i] += c * Fraction(bvec[i])
    return tuple(out)


def skeleton_from_base(base, q):
    """Skeleton of the traded base seen from the basepoint q.

    One handle per trade: the character is the primitive direction from
    q toward the singularity (the base projection of the disk), the
    disk cocharacter is a primitive normal of the eigenlocus through q.
    In 2D the circle class of the disk boundary is the 90-degree
    rotation of the character, i.e. the chart image of (1,-1) up to
    sign."""
    n = base.polytope.dimension
    handles = []
    for idx, sing in enumerate(base.singularities):
        nrm, rhs = _eigen_equation(sing)
        val = sum(Fraction(a) * Fraction(x) for a, x in zip(nrm, q))
        if val != rhs:
            raise AlmostToricError("basepoint misses the eigenlocus of trade %d" % idx)
        diff = vec_sub(sing.position, q)
        if sing.locus_basis:
            # project out the flat directions of the singular family:
            # the disk runs along the eigen direction only
            M, _p = sing.chart
            comp = sum(Fraction(M[0][j]) * Fraction(diff[j]) for j in range(n))
            if comp == 0:
                raise AlmostToricError("basepoint sits on the singular locus of trade %d" % idx)
            sign = 1 if comp > 0 else -1
            psi = tuple(sign * e for e in sing.eigen)
        else:
            if all(Fraction(x) == 0 for x in diff):
                raise AlmostToricError("basepoint coincides with singularity %d" % idx)
            psi = _rational_direction(diff)
        chi = primitive_part(nrm)
        if sum(a * b for a, b in zip(psi, chi)) != 0:
            raise AssertionError("eigen normal fails to annihilate the disk direction")
        handles.append(Handle(psi, chi, 1))
    return Skeleton(n, tuple(handles))


def disk_classes(base, q):
    """2D circle classes of the skeleton disks, via s = R psi."""
    sk = skeleton_from_base(base, q)
    return [circle_class(h.psi) for h in sk.handles]


def base_viewport(base, pad=1):
    pts = [tuple(map(Fraction, v)) for v in base.polytope.vertices]
    pts += [tuple(map(Fraction, s.position)) for s in base.singularities]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def render_svg(base, q=None, viewport=None):
    """Boundary, singularities, cuts; if q is given, the skeleton
    projection (blue disk segments from q) is overlaid."""
    if base.polytope.dimension != 2:
        raise AlmostToricError("rendering is 2D only")
    if viewport is None:
        viewport = base_viewport(base)
    cv = SvgCanvas(*viewport)
    cv.grid()
    poly = base.polytope
    vs = list(poly.vertices)
    if poly.rays:
        start = cv.clip_ray(vs[0], poly.rays[0])
        if start:
            cv.line(start[0], start[1], stroke="black", width=2)
        end = cv.clip_ray(vs[-1], poly.rays[1])
        if end:
            cv.line(end[0], end[1], stroke="black", width=2)
        if len(vs) > 1:
            cv.polyline(vs, stroke="black", width=2)
    else:
        cv.polyline(vs + [vs[0]], stroke="black", width=2)
    for sing in base.singularities:
        vertex = poly.vertices[sing.trade.target]
        cv.line(sing.position, vertex, stroke="black", width=2, dash="6,4")
    if q is not None:
        for sing in base.singularities:
            cv.line(q, sing.position, stroke="blue", width=2)
        cv.circle(q, rpx=4, fill="blue")
    for sing in base.singularities:
        cv.cross(sing.position)
    return cv.document()


def polytope_from_json(doc):
    try:
        dim = int(doc["dimension"])
        if dim == 2:
            verts = tuple(tuple(Fraction(x) for x in v) for v in doc["vertices"])
            rays = doc.get("rays") or ()
            if rays:
                rays = tuple(tuple(int(x) for x in r) for r in rays)
            return MomentPolytope(2, verts, rays, ())
        facets = tuple(
            (tuple(int(x) for x in f["normal"]), Fraction(f["rhs"]))
            for f in doc["facets"])
        return MomentPolytope(dim, (), (), facets)
    except (KeyError, TypeError, ValueError) as e:
        raise AlmostToricError("malformed polytope document: %s" % e)


def trades_from_json(doc):
    out = []
    try:
        for tr in doc["trades"]:
            target = tr["target"]
            if isinstance(target, list):
                target = tuple(int(x) for x in target)
            else:
                target = int(target)
            chart = None
            if tr.get("chart") is not None:
                ch = tr["chart"]
                chart = (tuple(tuple(int(x) for x in row) for row in ch["matrix"]),
                         tuple(Fraction(x) for x in ch["translation"]))
            out.append(NodalTrade(target, chart, Fraction(tr.get("t", 1))))
    except (KeyError, TypeError, ValueError) as e:
        raise AlmostToricError("malformed trade document: %s" % e)
    return tuple(out)


def base_to_json(base):
    return {
        "dimension": base.polytope.dimension,
        "singularities": [
            {
                "position": [str(Fraction(x)) for x in s.position],
                "eigen": list(s.eigen),
                "monodromy": [list(row) for row in s.monodromy] if s.monodromy else None,
            }
            for s in base.singularities
        ],
        "interactions": [list(p) for p in base.interactions],
    }

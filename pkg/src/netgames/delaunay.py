"""Self-contained 2D Delaunay triangulation (Bowyer-Watson).

Incremental insertion into a super-triangle, with a strictly-inside
circumcircle predicate. Predicates are evaluated in floating point and
re-evaluated in exact rational arithmetic whenever the determinant falls
inside a scale-aware error band, so degenerate inputs (cocircular grid
points, near-collinear triples) are resolved deterministically: a point
exactly on a circumcircle counts as outside. Complexity is O(n^2) per
triangulation, fine for the point-set sizes used here.
"""

import math
from fractions import Fraction


def _orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise, 0 collinear."""
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    scale = max(abs(bx - ax), abs(by - ay), abs(cx - ax), abs(cy - ay), 1.0)
    if abs(det) > 1e-12 * scale * scale:
        return 1 if det > 0 else -1
    exact = (Fraction(bx) - Fraction(ax)) * (Fraction(cy) - Fraction(ay)) - (
        Fraction(by) - Fraction(ay)
    ) * (Fraction(cx) - Fraction(ax))
    if exact > 0:
        return 1
    if exact < 0:
        return -1
    return 0


def _in_circumcircle(ax, ay, bx, by, cx, cy, px, py):
    """True iff p lies strictly inside the circumcircle of CCW triangle (a, b, c)."""
    adx, ady = ax - px, ay - py
    bdx, bdy = bx - px, by - py
    cdx, cdy = cx - px, cy - py
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    det = (
        adx * (bdy * cd - bd * cdy)
        - ady * (bdx * cd - bd * cdx)
        + ad * (bdx * cdy - bdy * cdx)
    )
    scale = max(abs(adx), abs(ady), abs(bdx), abs(bdy), abs(cdx), abs(cdy), 1.0)
    if abs(det) > 1e-11 * scale**4:
        return det > 0
    fax, fay = Fraction(ax) - Fraction(px), Fraction(ay) - Fraction(py)
    fbx, fby = Fraction(bx) - Fraction(px), Fraction(by) - Fraction(py)
    fcx, fcy = Fraction(cx) - Fraction(px), Fraction(cy) - Fraction(py)
    fad = fax * fax + fay * fay
    fbd = fbx * fbx + fby * fby
    fcd = fcx * fcx + fcy * fcy
    exact = (
        fax * (fby * fcd - fbd * fcy)
        - fay * (fbx * fcd - fbd * fcx)
        + fad * (fbx * fcy - fby * fcx)
    )
    return exact > 0


def _validate(points):
    if len(points) < 3:
        raise ValueError("triangulation needs at least 3 points")
    seen = {}
    for idx, (x, y) in enumerate(points):
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"point {idx} has non-finite coordinates")
        key = (x, y)
        if key in seen:
            raise ValueError(f"duplicate point at index {idx} (same as {seen[key]})")
        seen[key] = idx
    ax, ay = points[0]
    bx = by = None
    for x, y in points[1:]:
        if (x, y) != (ax, ay):
            bx, by = x, y
            break
    collinear = True
    if bx is not None:
        for x, y in points:
            if _orient2d(ax, ay, bx, by, x, y) != 0:
                collinear = False
                break
    if collinear:
        raise ValueError("all points are collinear")


def triangulate(points):
    """Delaunay triangles of `points` as index triples.

    Every returned triangle's circumcircle is empty of other input points
    (strictly; cocircular points may sit on the boundary).
    """
    pts = [(float(x), float(y)) for x, y in points]
    _validate(pts)
    n = len(pts)

    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    cx = (min(xs) + max(xs)) / 2.0
    cy = (min(ys) + max(ys)) / 2.0
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    big = 1024.0 * span
    pts.append((cx - 3.0 * big, cy - big))
    pts.append((cx + 3.0 * big, cy - big))
    pts.append((cx, cy + 3.0 * big))

    def ccw(a, b, c):
        if _orient2d(*pts[a], *pts[b], *pts[c]) < 0:
            return (a, c, b)
        return (a, b, c)

    triangles = [ccw(n, n + 1, n + 2)]

    for p in range(n):
        px, py = pts[p]
        bad = []
        keep = []
        for tri in triangles:
            a, b, c = tri
            if _in_circumcircle(*pts[a], *pts[b], *pts[c], px, py):
                bad.append(tri)
            else:
                keep.append(tri)
        # Cavity boundary: edges used by exactly one bad triangle.
        edge_use = {}
        for a, b, c in bad:
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                edge_use[key] = edge_use.get(key, 0) + 1
        triangles = keep
        for (u, v), count in edge_use.items():
            if count == 1:
                triangles.append(ccw(p, u, v))

    return [t for t in triangles if max(t) < n]


def triangulation_edges(points):
    """Undirected edge set {(i, j) with i < j} of the Delaunay triangulation."""
    edges = set()
    for a, b, c in triangulate(points):
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((u, v) if u < v else (v, u))
    return edges

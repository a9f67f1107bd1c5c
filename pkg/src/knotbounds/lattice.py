"""Cubic-lattice polygons and the constructions feeding the bound chain:
doubling, the diagonal push-off annulus, the length-8 kink detour, and
generic projection down to a PD diagram.

Lattice files hold one vertex per line as three integers ("#" comments,
closure implied); multi-component files separate components with "---".
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagrams import LinkDiagram
from .errors import (
    ComponentsCollide,
    DegenerateProjection,
    NotClosed,
    NotUnitStep,
    SelfIntersection,
)

_EPS = 1e-9


def _add(p, q):
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


class LatticePolygon:
    """Closed self-avoiding unit-step polygon on the integer lattice."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        self.vertices = tuple(tuple(int(c) for c in v) for v in vertices)
        validate(self)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __repr__(self):
        return f"LatticePolygon({len(self)} edges)"

    def length(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def translate(self, offset):
        return LatticePolygon([_add(v, offset) for v in self.vertices])

    def reversed_orientation(self):
        return LatticePolygon(self.vertices[::-1])


@dataclass(frozen=True)
class LatticeLink:
    components: tuple

    def __post_init__(self):
        seen = {}
        for idx, comp in enumerate(self.components):
            for v in comp.vertices:
                if v in seen:
                    raise ComponentsCollide(
                        f"components {seen[v]} and {idx} share vertex {v}"
                    )
                seen[v] = idx

    def total_length(self):
        return sum(len(c) for c in self.components)


@dataclass(frozen=True)
class SpecialEdge:
    edge: tuple          # (u, v) on the input polygon
    axis: str            # "x" or "y"
    l1: tuple            # doubled segment on the scaled polygon (3 vertices)
    l2: tuple            # matching segment on the pushed-off companion


def validate(p):
    """Raise unless p is a closed self-avoiding unit-step polygon."""
    vs = p.vertices if isinstance(p, LatticePolygon) else tuple(p)
    if len(vs) < 4:
        raise NotClosed("a closed lattice polygon needs at least 4 edges")
    for i, v in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        d = _sub(w, v)
        if sorted(map(abs, d)) != [0, 0, 1]:
            raise NotUnitStep(f"edge {v} -> {w} is not a unit step")
    if len(set(vs)) != len(vs):
        dup = [v for v in vs if vs.count(v) > 1][0]
        raise SelfIntersection(f"vertex {dup} is visited twice")
    # unit-step edges between distinct integer vertices can only meet at
    # shared endpoints, so vertex distinctness settles self-avoidance
    return True


def scale2(p):
    """Double the polygon: vertices doubled, edge midpoints inserted."""
    out = []
    vs = p.vertices
    for i, v in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        out.append((2 * v[0], 2 * v[1], 2 * v[2]))
        out.append((v[0] + w[0], v[1] + w[1], v[2] + w[2]))
    return LatticePolygon(out)


def pushoff_diagonal(p):
    """The doubled polygon with its (1,1,1)-shifted reversed companion.

    Doubling first realizes the half-unit diagonal push-off on the
    lattice; the two components are disjoint by coordinate parity.
    """
    base = scale2(p)
    companion = base.translate((1, 1, 1)).reversed_orientation()
    return LatticeLink((base, companion))


def select_special_edge(p):
    """Pick the kink site: a z-perpendicular edge at maximal z, extremal
    in its own axis; residual ties break lexicographically by midpoint.

    Returns the edge together with its doubled segments l1 (on scale2(p))
    and l2 (on the companion).
    """
    candidates = []
    for (u, v) in p.edges():
        d = _sub(v, u)
        if d[2] != 0:
            continue
        axis = "x" if d[0] != 0 else "y"
        mid = (u[0] + v[0], u[1] + v[1], u[2] + v[2])  # doubled midpoint
        candidates.append((u, v, axis, mid))
    if not candidates:
        raise NotClosed("polygon has no z-perpendicular edge")
    zmax = max(c[3][2] for c in candidates)
    at_top = [c for c in candidates if c[3][2] == zmax]
    x_par = [c for c in at_top if c[2] == "x"]
    pool = x_par if x_par else at_top
    key = (lambda c: (c[3][0], c[3][1])) if pool is x_par else (
        lambda c: (c[3][1], c[3][0])
    )
    u, v, axis, _ = max(pool, key=key)
    if (axis == "x" and v[0] < u[0]) or (axis == "y" and v[1] < u[1]):
        u, v = v, u  # normalize toward the positive axis direction
    p2 = (2 * u[0], 2 * u[1], 2 * u[2])
    mid = _add(p2, (1, 0, 0) if axis == "x" else (0, 1, 0))
    end = _add(mid, (1, 0, 0) if axis == "x" else (0, 1, 0))
    l1 = (p2, mid, end)
    l2 = tuple(_add(q, (1, 1, 1)) for q in l1)
    return SpecialEdge(edge=(u, v), axis=axis, l1=l1, l2=l2)


def _kink_paths(edge):
    """The two candidate 9-edge detours (opposite handedness) replacing
    the second unit edge of l1, each ringing the companion segment l2."""
    a = edge.l1[1]
    if edge.axis == "x":
        def pt(dx, dy, dz):
            return (a[0] + dx, a[1] + dy, a[2] + dz)
    else:
        def pt(dy, dx, dz):
            return (a[0] + dx, a[1] + dy, a[2] + dz)
    variant_a = [
        pt(0, 0, 0), pt(0, 0, 1), pt(1, 0, 1), pt(1, 0, 2), pt(1, 1, 2),
        pt(1, 2, 2), pt(1, 2, 1), pt(1, 2, 0), pt(1, 1, 0), pt(1, 0, 0),
    ]
    variant_b = [
        pt(0, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(1, 2, 0), pt(1, 2, 1),
        pt(1, 2, 2), pt(1, 1, 2), pt(1, 0, 2), pt(1, 0, 1), pt(1, 0, 0),
    ]
    return variant_a, variant_b


def insert_kink(link, edge, sign, rng_seed=0):
    """Replace one edge of l1 by a 9-edge hook around l2.

    Total length grows by exactly 8 and the linking number moves by
    ``sign`` (verified by projection).  Raises SelfIntersection when
    neither hook handedness realizes the requested sign without
    collision.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    base, companion = link.components
    before = linking_number_by_projection(link, rng_seed=rng_seed)
    for path in _kink_paths(edge):
        try:
            candidate = _replace_edge(base, path)
            kinked = LatticeLink((candidate, companion))
        except (SelfIntersection, ComponentsCollide, NotUnitStep, NotClosed):
            continue
        after = linking_number_by_projection(kinked, rng_seed=rng_seed)
        if after - before == sign:
            return kinked
    raise SelfIntersection(
        f"no valid hook with linking shift {sign:+d} at edge {edge.edge}"
    )


def _replace_edge(polygon, path):
    """Splice a lattice path (endpoints included) over one unit edge."""
    vs = list(polygon.vertices)
    start, end = path[0], path[-1]
    n = len(vs)
    for i, v in enumerate(vs):
        w = vs[(i + 1) % n]
        if (v, w) == (start, end):
            return LatticePolygon(vs[: i + 1] + list(path[1:-1]) + vs[i + 1:])
        if (v, w) == (end, start):
            return LatticePolygon(
                vs[: i + 1] + list(reversed(path[1:-1])) + vs[i + 1:]
            )
    raise NotClosed(f"edge {start} -> {end} not found on polygon")


# --- projection -------------------------------------------------------------

def _merged_segments(polygon):
    """Collinear runs merged; returns [(p, q), ...] oriented along traversal."""
    vs = polygon.vertices
    n = len(vs)
    dirs = [_sub(vs[(i + 1) % n], vs[i]) for i in range(n)]
    start = 0
    for i in range(n):
        if dirs[i] != dirs[i - 1]:
            start = i
            break
    segs = []
    i = start
    for _ in range(n):
        j = i
        while dirs[j % n] == dirs[i % n]:
            j += 1
            if j - i >= n:
                break
        segs.append((vs[i % n], vs[j % n]))
        i = j
        if i % n == start and len(segs) > 1:
            break
    # drop accidental duplicates from the wrap-around
    out = []
    covered = 0
    for p, q in segs:
        if covered >= n:
            break
        d = _sub(q, p)
        covered += max(abs(c) for c in d)
        out.append((p, q))
    return out


def project(link, direction=(0.123, 0.456, 1.0), retries=20, rng_seed=0):
    """Generic projection of a lattice link to an oriented PD diagram.

    The default direction is perturbed and retried when the shadow is
    degenerate (parallel overlaps, touching endpoints, triple points).
    """
    if isinstance(link, LatticePolygon):
        link = LatticeLink((link,))
    rng = random.Random(rng_seed)
    d = direction
    for _ in range(max(1, retries)):
        try:
            return _project_once(link, d)
        except DegenerateProjection:
            d = (
                direction[0] + rng.uniform(-0.2, 0.2),
                direction[1] + rng.uniform(-0.2, 0.2),
                1.0,
            )
    raise DegenerateProjection(
        f"no generic direction found after {retries} retries"
    )


def linking_number_by_projection(link, rng_seed=0):
    d = project(link, rng_seed=rng_seed)
    if d.component_count() != 2:
        raise ComponentsCollide("expected a 2-component link")
    return d.linking_number(0, 1)


def _project_once(link, direction):
    ax, ay, az = direction
    if abs(az) < _EPS:
        raise DegenerateProjection("direction has no vertical part")

    comps = []
    for comp in link.components:
        segs = _merged_segments(comp)
        shadow = []
        for p, q in segs:
            sp = (p[0] - ax / az * p[2], p[1] - ay / az * p[2], p[2])
            sq = (q[0] - ax / az * q[2], q[1] - ay / az * q[2], q[2])
            shadow.append((sp, sq))
        comps.append(shadow)

    # crossings between all non-adjacent segment pairs
    crossings = []  # (comp_i, seg_i, t_i, comp_j, seg_j, t_j, point)
    flat = [
        (ci, si, seg) for ci, segs in enumerate(comps) for si, seg in enumerate(segs)
    ]
    for a in range(len(flat)):
        ci, si, (p1, q1) = flat[a]
        for b in range(a + 1, len(flat)):
            cj, sj, (p2, q2) = flat[b]
            if ci == cj:
                n = len(comps[ci])
                if (si + 1) % n == sj or (sj + 1) % n == si:
                    continue
            hit = _segment_cross(p1, q1, p2, q2)
            if hit == "degenerate":
                raise DegenerateProjection("non-generic segment pair")
            if hit is not None:
                t1, t2, pt = hit
                crossings.append((ci, si, t1, cj, sj, t2, pt))

    pts = [c[6] for c in crossings]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if abs(pts[i][0] - pts[j][0]) < _EPS and abs(pts[i][1] - pts[j][1]) < _EPS:
                raise DegenerateProjection("triple point")

    # passage events per component, ordered along the traversal
    events = {ci: [] for ci in range(len(comps))}
    for idx, (ci, si, t1, cj, sj, t2, _pt) in enumerate(crossings):
        events[ci].append((si, t1, idx, 0))
        events[cj].append((sj, t2, idx, 1))
    for ci in events:
        events[ci].sort(key=lambda e: (e[0], e[1]))

    free = 0
    arc_counter = 1
    passage_arcs = {}  # (crossing idx, side) -> (arc_in, arc_out)
    for ci in range(len(comps)):
        evs = events[ci]
        if not evs:
            free += 1
            continue
        labels = [arc_counter + k for k in range(len(evs))]
        arc_counter += len(evs)
        for k, (si, t, idx, side) in enumerate(evs):
            arc_in = labels[k - 1]
            arc_out = labels[k]
            passage_arcs[(idx, side)] = (arc_in, arc_out)

    pd = []
    over_ins = []
    for idx, (ci, si, t1, cj, sj, t2, pt) in enumerate(crossings):
        z1 = _depth(comps[ci][si], t1)
        z2 = _depth(comps[cj][sj], t2)
        if abs(z1 - z2) < _EPS:
            raise DegenerateProjection("ambiguous depth at crossing")
        side_over = 0 if z1 > z2 else 1
        under_in, under_out = passage_arcs[(idx, 1 - side_over)]
        over_in, over_out = passage_arcs[(idx, side_over)]
        du = _dir2(comps[ci][si] if side_over == 1 else comps[cj][sj])
        do = _dir2(comps[ci][si] if side_over == 0 else comps[cj][sj])
        crossp = du[0] * do[1] - du[1] * do[0]
        if abs(crossp) < _EPS:
            raise DegenerateProjection("parallel strands at crossing")
        if crossp > 0:
            pd.append((under_in, over_in, under_out, over_out))
            over_ins.append(1)
        else:
            pd.append((under_in, over_out, under_out, over_in))
            over_ins.append(3)
    if not pd and not free:
        raise DegenerateProjection("empty projection")
    return LinkDiagram(pd, over_ins, free)


def _depth(seg, t):
    (x1, y1, z1), (x2, y2, z2) = seg
    return z1 + t * (z2 - z1)


def _dir2(seg):
    (x1, y1, _), (x2, y2, _) = seg
    return (x2 - x1, y2 - y1)


def _segment_cross(p1, q1, p2, q2):
    """Interior intersection of two shadow segments.

    Returns (t1, t2, point), None when disjoint, or "degenerate" for
    parallel overlaps and endpoint touches.
    """
    d1 = (q1[0] - p1[0], q1[1] - p1[1])
    d2 = (q2[0] - p2[0], q2[1] - p2[1])
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    if abs(denom) < _EPS:
        cross_r = rx * d1[1] - ry * d1[0]
        if abs(cross_r) < _EPS:
            # collinear: overlap test in 1D
            length = d1[0] * d1[0] + d1[1] * d1[1]
            t_a = (rx * d1[0] + ry * d1[1]) / length
            t_b = t_a + (d2[0] * d1[0] + d2[1] * d1[1]) / length
            lo, hi = min(t_a, t_b), max(t_a, t_b)
            if hi < -_EPS or lo > 1 + _EPS:
                return None
            return "degenerate"
        return None
    t1 = (rx * d2[1] - ry * d2[0]) / denom
    t2 = (rx * d1[1] - ry * d1[0]) / denom
    margin = 1e-7
    if -margin < t1 < margin or 1 - margin < t1 < 1 + margin:
        if -margin < t2 < 1 + margin:
            return "degenerate"
    if -margin < t2 < margin or 1 - margin < t2 < 1 + margin:
        if -margin < t1 < 1 + margin:
            return "degenerate"
    if margin < t1 < 1 - margin and margin < t2 < 1 - margin:
        return t1, t2, (p1[0] + t1 * d1[0], p1[1] + t1 * d1[1])
    return None


# --- file io ----------------------------------------------------------------

def parse_lattice(text):
    """Parse a lattice file into a polygon or link ("---" separates parts)."""
    comps = [[]]
    for line in text.splitlines():
        if "#" in line:
            line = line[: line.index("#")]
        line = line.strip()
        if not line:
            continue
        if line == "---":
            comps.append([])
            continue
        parts = line.split()
        if len(parts) != 3:
            raise NotUnitStep(f"bad lattice line {line!r}")
        comps[-1].append(tuple(int(x) for x in parts))
    comps = [c for c in comps if c]
    if not comps:
        raise NotClosed("empty lattice file")
    if len(comps) == 1:
        return LatticePolygon(comps[0])
    return LatticeLink(tuple(LatticePolygon(c) for c in comps))


def lattice_text(obj):
    if isinstance(obj, LatticePolygon):
        return "\n".join(" ".join(map(str, v)) for v in obj.vertices) + "\n"
    blocks = [
        "\n".join(" ".join(map(str, v)) for v in comp.vertices)
        for comp in obj.components
    ]
    return ("\n---\n").join(blocks) + "\n"

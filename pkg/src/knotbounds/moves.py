"""Reidemeister moves on PD diagrams: greedy R1/R2 reduction, the R3
slide, and the move-insertion helpers used for invariance testing.

Removals are expressed as "joins": pairs of arcs whose loose ends fuse
when crossings disappear.  Joined arc chains either stay open (one
merged arc survives) or close up into a crossing-free unknot circle,
which is tracked in ``unknotted_free``.
"""

from __future__ import annotations

from .diagrams import LinkDiagram


def apply_removals(crossings, over_ins, free, removed, joins, dying):
    """Delete ``removed`` crossings, fusing arcs per ``joins``.

    dying: arcs that vanish outright (their occurrences all sit on
    removed crossings and no strand continues through them).
    Returns (crossings, over_ins, free).
    """
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    edge_count = {}
    for a, b in joins:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra == rb:
            edge_count[ra] = edge_count.get(ra, 0) + 1
        else:
            merged = edge_count.get(ra, 0) + edge_count.get(rb, 0) + 1
            parent[ra] = rb
            edge_count.pop(ra, None)
            edge_count[rb] = merged

    members = {}
    for a in parent:
        members.setdefault(find(a), set()).add(a)

    closed_roots = set()
    for root, group in members.items():
        if edge_count.get(root, 0) == len(group):
            closed_roots.add(root)
        elif edge_count.get(root, 0) != len(group) - 1:
            raise AssertionError("join graph is neither a path nor a cycle")

    relabel = {}
    for root, group in members.items():
        rep = min(group)
        for a in group:
            relabel[a] = rep

    new_crossings = []
    new_over_ins = []
    for ci, t in enumerate(crossings):
        if ci in removed:
            continue
        new_crossings.append(tuple(relabel.get(a, a) for a in t))
        new_over_ins.append(over_ins[ci])

    remaining = {a for t in new_crossings for a in t}
    loops = 0
    for root, group in members.items():
        if root in closed_roots:
            if remaining & {relabel[a] for a in group}:
                raise AssertionError("closed join chain still has occurrences")
            loops += 1
    del dying
    return new_crossings, new_over_ins, free + loops


def find_r1(d):
    """Monogon faces: (crossing, loop-slot-pair) candidates."""
    out = []
    for face in d.faces():
        if len(face) != 1:
            continue
        (c, s) = face[0]
        out.append((c, s))
    return out


def remove_r1(d, site):
    c, s = site
    t = d.crossings[c]
    s_prev = (s - 1) % 4
    # loop arc occupies slots (s_prev, s); the continuing strand uses the rest
    x, y = t[(s_prev + 2) % 4], t[(s_prev + 3) % 4]
    joins = [(x, y)]
    dying = {t[s]}
    crossings, over_ins, free = apply_removals(
        list(d.crossings), list(d.over_ins), d.unknotted_free, {c}, joins, dying
    )
    return LinkDiagram(crossings, over_ins, free)


def kink_sign(d, site):
    """Writhe contribution of a kink crossing; orientation-free."""
    c, s = site
    under = {0, 2}
    s_prev = (s - 1) % 4
    lo, hi = s_prev, s  # the two loop slots, hi = lo + 1 (mod 4)
    over_slot = hi if lo in under else lo
    under_slot = lo if lo in under else hi
    return -1 if over_slot == (under_slot + 1) % 4 else 1


def find_r2(d):
    """Cancelable bigon faces as ((c1, s1), (c2, s2)) dart pairs."""
    out = []
    for face in d.faces():
        if len(face) != 2:
            continue
        (c1, s1), (c2, s2) = face
        if c1 == c2:
            continue
        x = d.crossings[c1][s1]
        xc2, xs2 = d.other_end(x, (c1, s1))
        over1 = s1 % 2 == 1
        over2 = xs2 % 2 == 1
        if over1 == over2:
            out.append(((c1, s1), (c2, s2)))
    return out


def remove_r2(d, site):
    (c1, s1), (c2, s2) = site
    t1, t2 = d.crossings[c1], d.crossings[c2]
    x, y = t1[s1], t2[s2]
    u1, w1 = t1[(s1 + 2) % 4], t1[(s1 + 1) % 4]
    u2, w2 = t2[(s2 + 1) % 4], t2[(s2 + 2) % 4]
    joins = [(u1, u2), (w1, w2)]
    crossings, over_ins, free = apply_removals(
        list(d.crossings), list(d.over_ins), d.unknotted_free,
        {c1, c2}, joins, {x, y},
    )
    return LinkDiagram(crossings, over_ins, free)


def find_r3(d):
    """Movable trigon faces as dart triples."""
    out = []
    for face in d.faces():
        if len(face) != 3:
            continue
        (c1, s1), (c2, s2), (c3, s3) = face
        if len({c1, c2, c3}) != 3:
            continue
        sides = []
        ok = True
        for (ca, sa), (cb, sb) in (((c1, s1), (c2, s2)),
                                   ((c2, s2), (c3, s3)),
                                   ((c3, s3), (c1, s1))):
            arc = d.crossings[ca][sa]
            cc, sc = d.other_end(arc, (ca, sa))
            if (cc, (sc + 1) % 4) != (cb, sb):
                ok = False
                break
            sides.append(((ca, sa), (cc, sc)))
        if not ok:
            continue
        arcs = {d.crossings[ca][sa] for (ca, sa), _ in sides}
        if len(arcs) != 3:
            continue
        # movable unless the over/under pattern around the face is cyclic
        mixed = 0
        for (ca, sa), (cc, sc) in sides:
            if (sa % 2 == 1) != (sc % 2 == 1):
                mixed += 1
        if mixed == 3:
            continue
        out.append(face)
    return out


def apply_r3(d, face):
    """Slide the triangle: every strand's two triangle crossings swap order."""
    (c1, s1), (c2, s2), (c3, s3) = face
    t = [list(x) for x in d.crossings]

    def arrival(ci, si):
        arc = d.crossings[ci][si]
        return d.other_end(arc, (ci, si))

    r1 = arrival(c1, s1)  # x1 lands at c2
    r2 = arrival(c2, s2)  # x2 lands at c3
    r3 = arrival(c3, s3)  # x3 lands at c1
    x1 = d.crossings[c1][s1]
    x2 = d.crossings[c2][s2]
    x3 = d.crossings[c3][s3]
    a = d.crossings[c1][s1 ^ 2]
    b = d.crossings[r1[0]][r1[1] ^ 2]
    h = d.crossings[c2][s2 ^ 2]
    k = d.crossings[r2[0]][r2[1] ^ 2]
    g = d.crossings[c3][s3 ^ 2]
    e = d.crossings[r3[0]][r3[1] ^ 2]

    # side arcs flip to the opposite slot at both ends; far arcs swap
    # across the triangle into the vacated slots of their own strand
    t[c1][s1] = b
    t[c1][s1 ^ 2] = x1
    t[r1[0]][r1[1]] = a
    t[r1[0]][r1[1] ^ 2] = x1
    t[c2][s2] = k
    t[c2][s2 ^ 2] = x2
    t[r2[0]][r2[1]] = h
    t[r2[0]][r2[1] ^ 2] = x2
    t[c3][s3] = e
    t[c3][s3 ^ 2] = x3
    t[r3[0]][r3[1]] = g
    t[r3[0]][r3[1] ^ 2] = x3
    return LinkDiagram([tuple(x) for x in t], d.over_ins, d.unknotted_free)


def reduce_r1_r2(d):
    """Apply R1/R2 removals until none remain."""
    while True:
        sites = find_r1(d)
        if sites:
            d = remove_r1(d, sites[0])
            continue
        pairs = find_r2(d)
        if pairs:
            d = remove_r2(d, pairs[0])
            continue
        return d


def simplify(d, r3_depth=2, r3_width=64):
    """Greedy R1/R2 reduction with a bounded R3 search to unstick it.

    Ambient isotopy class is preserved; crossing count never increases.
    When no R1/R2 applies, sequences of up to ``r3_depth`` R3 slides are
    explored breadth-first (at most ``r3_width`` diagrams per level)
    looking for a diagram that reduces further.
    """
    d = reduce_r1_r2(d)
    while d.crossings and r3_depth > 0:
        frontier = [d]
        seen = {_quick_key(d)}
        improved = None
        for _ in range(r3_depth):
            nxt = []
            for cand in frontier:
                for face in find_r3(cand):
                    moved = apply_r3(cand, face)
                    key = _quick_key(moved)
                    if key in seen:
                        continue
                    seen.add(key)
                    if find_r1(moved) or find_r2(moved):
                        improved = reduce_r1_r2(moved)
                        break
                    if len(nxt) < r3_width:
                        nxt.append(moved)
                if improved:
                    break
            if improved or not nxt:
                break
            frontier = nxt
        if improved is None:
            return d
        d = improved
    return d


def _quick_key(d):
    return (d.crossings, d.over_ins, d.unknotted_free)


# --- move insertion, used by the invariance test-suites ---

_CCW = {"E": "N", "N": "W", "W": "S", "S": "E"}


def _tuple_from_compass(arcs, under_in, over_in):
    """Build (pd_tuple, over_in_slot) from compass-placed arcs."""
    order = [under_in]
    for _ in range(3):
        order.append(_CCW[order[-1]])
    slot = order.index(over_in)
    assert slot in (1, 3)
    return tuple(arcs[p] for p in order), slot


def insert_r1(d, arc, positive, fresh):
    """Add a kink of the requested sign on ``arc``."""
    m, b = fresh, fresh + 1
    if positive:
        extra = (arc, m, m, b)
        over_in = 1
    else:
        extra = (arc, b, m, m)
        over_in = 3
    crossings = list(d.crossings) + [extra]
    over_ins = list(d.over_ins) + [over_in]
    hc, hs = d.head_of(arc)
    crossings[hc] = tuple(
        b if (s == hs) else a for s, a in enumerate(crossings[hc])
    )
    return LinkDiagram(crossings, over_ins, d.unknotted_free)


def insert_r2(d, dart_x, dart_y, fresh):
    """Poke arc of ``dart_x`` under arc of ``dart_y`` across a shared face.

    Both darts must lie on one face (as produced by ``faces``), so the
    poke stays planar.
    """
    cx, sx = dart_x
    cy, sy = dart_y
    x = d.crossings[cx][sx]
    y = d.crossings[cy][sy]
    if x == y:
        raise ValueError("cannot poke an arc across itself")
    m, t, x2, u = fresh, fresh + 1, fresh + 2, fresh + 3

    # dart-aligned: the arc's orientation agrees with the dart direction
    x_aligned = d.head_of(x) == d.other_end(x, (cx, sx))
    y_aligned = d.head_of(y) == d.other_end(y, (cy, sy))

    # local picture: the traced face sits to the right of each dart, so
    # x runs up the west side of the face and y down the east side;
    # x pokes eastward under y, giving a lower crossing c1 and an upper
    # crossing c2.
    x_lo, x_hi = (x, x2) if x_aligned else (x2, x)
    y_hi, y_lo = (y, u) if y_aligned else (u, y)
    c1_arcs = {"W": x_lo, "E": m, "N": t, "S": y_lo}
    c2_arcs = {"E": m, "W": x_hi, "N": y_hi, "S": t}
    under1, under2 = ("W", "E") if x_aligned else ("E", "W")
    over1, over2 = ("N", "N") if y_aligned else ("S", "S")
    t1, o1 = _tuple_from_compass(c1_arcs, under1, over1)
    t2, o2 = _tuple_from_compass(c2_arcs, under2, over2)

    crossings = list(d.crossings) + [t1, t2]
    over_ins = list(d.over_ins) + [o1, o2]
    # reroute the original heads: the piece that keeps the old label is
    # the one containing the arc's tail.
    hx = d.head_of(x)
    hy = d.head_of(y)
    crossings[hx[0]] = tuple(
        (x2 if v == x and s == hx[1] else v)
        for s, v in enumerate(crossings[hx[0]])
    )
    crossings[hy[0]] = tuple(
        (u if v == y and s == hy[1] else v)
        for s, v in enumerate(crossings[hy[0]])
    )
    return LinkDiagram(crossings, over_ins, d.unknotted_free)

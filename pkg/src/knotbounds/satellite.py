"""Reverse parallel links: blackboard doubling plus clasp correction.

``reverse_parallel(d, f)`` doubles a knot diagram (each crossing becomes
four), reverses the parallel copy, then inserts |f - lk0| clasps of one
sign so the linking number of the two components lands exactly on the
requested framing f.  The blackboard linking number lk0 is measured, not
assumed, which keeps the construction immune to convention drift.
"""

from __future__ import annotations

from .diagrams import LinkDiagram, require_knot
from .errors import NotAKnot


def reverse_parallel(d, f):
    """Two-component reverse parallel of a knot diagram with linking number f."""
    require_knot(d)
    if not d.crossings:
        return _unknot_parallel(f)

    doubled, copy_arc, orig_arc = _blackboard_double(d)
    doubled = doubled.reverse_component(doubled.component_of_arc(copy_arc))
    lk0 = doubled.linking_number(0, 1)
    k = abs(f - lk0)
    if k:
        doubled = _insert_clasps(
            doubled, orig_arc, copy_arc, k, 1 if f > lk0 else -1
        )
    c0 = doubled.component_of_arc(orig_arc)
    achieved = doubled.linking_number(c0, 1 - c0)
    if achieved != f:
        raise AssertionError(
            f"clasp bookkeeping off: wanted lk {f}, built {achieved}"
        )
    return doubled


def blackboard_framing(d):
    """Linking number of the plain doubled-and-reversed parallel."""
    require_knot(d)
    if not d.crossings:
        return 0
    doubled, copy_arc, _ = _blackboard_double(d)
    doubled = doubled.reverse_component(doubled.component_of_arc(copy_arc))
    return doubled.linking_number(0, 1)


def _blackboard_double(d):
    """Double every strand with the parallel copy on its left.

    Arc x of the input becomes 2x (original lane) and 2x+1 (copy lane);
    each crossing becomes a 2x2 block with four fresh internal arcs.
    Returns (diagram, an arc label on the copy, one on the original).
    """
    next_label = 2 * max(d.arcs()) + 2
    crossings = []
    over_ins = []
    for ci, t in enumerate(d.crossings):
        a, b, c, e = t
        m_e, m_n, m_s, m_w = range(next_label, next_label + 4)
        next_label += 4
        if d.over_ins[ci] == 1:
            # positive: under lanes run south->north, over lanes east->west;
            # copy lanes sit west (under) and south (over)
            block = [
                ((2 * a, 2 * b + 1, m_e, m_s), 1),        # col E, row S
                ((m_e, 2 * b, 2 * c, m_n), 1),            # col E, row N
                ((2 * a + 1, m_s, m_w, 2 * e + 1), 1),    # col W, row S
                ((m_w, m_n, 2 * c + 1, 2 * e), 1),        # col W, row N
            ]
        else:
            # negative: over lanes run west->east with the copy on the north
            block = [
                ((2 * a, 2 * b, m_e, m_s), 3),            # col E, row S
                ((m_e, 2 * b + 1, 2 * c, m_n), 3),        # col E, row N
                ((2 * a + 1, m_s, m_w, 2 * e), 3),        # col W, row S
                ((m_w, m_n, 2 * c + 1, 2 * e + 1), 3),    # col W, row N
            ]
        for tup, oi in block:
            crossings.append(tup)
            over_ins.append(oi)
    doubled = LinkDiagram(crossings, over_ins)
    lowest = min(d.arcs())
    return doubled, 2 * lowest + 1, 2 * lowest


def _insert_clasps(d, arc0, arc1, k, sign):
    """Insert k clasps of one sign between the doubled pair arc0/arc1.

    arc0 runs on the original component, arc1 antiparallel on its left.
    Each clasp contributes two crossings of the same sign and shifts the
    linking number by sign.
    """
    fresh = max(d.arcs()) + 1
    p = [arc0] + [fresh + i for i in range(k)]
    u = [fresh + k + i for i in range(k)] + [arc1]
    q = [fresh + 2 * k + i for i in range(k)]
    t = [fresh + 3 * k + i for i in range(k)]

    crossings = list(d.crossings)
    over_ins = list(d.over_ins)
    # reroute the old heads onto the last pieces of the cut arcs
    h0 = d.head_of(arc0)
    h1 = d.head_of(arc1)
    crossings[h0[0]] = tuple(
        (p[k] if s == h0[1] else a) for s, a in enumerate(crossings[h0[0]])
    )
    crossings[h1[0]] = tuple(
        (u[0] if s == h1[1] else a) for s, a in enumerate(crossings[h1[0]])
    )
    for i in range(k):
        if sign < 0:
            crossings.append((t[i], q[i], u[i], p[i]))
            over_ins.append(3)
            crossings.append((q[i], t[i], p[i + 1], u[i + 1]))
            over_ins.append(3)
        else:
            crossings.append((p[i], t[i], q[i], u[i]))
            over_ins.append(1)
            crossings.append((u[i + 1], q[i], t[i], p[i + 1]))
            over_ins.append(1)
    return LinkDiagram(crossings, over_ins, d.unknotted_free)


def _unknot_parallel(f):
    """Reverse parallel of the 0-crossing unknot: an unlink or a clasp chain."""
    if f == 0:
        return LinkDiagram([], [], 2)
    k = abs(f)
    p = list(range(0, 2 * k, 2))
    u = list(range(1, 2 * k, 2))
    q = list(range(2 * k, 3 * k))
    t = list(range(3 * k, 4 * k))
    crossings = []
    over_ins = []
    for i in range(k):
        j = (i + 1) % k
        if f < 0:
            crossings.append((t[i], q[i], u[i], p[i]))
            over_ins.append(3)
            crossings.append((q[i], t[i], p[j], u[j]))
            over_ins.append(3)
        else:
            crossings.append((p[i], t[i], q[i], u[i]))
            over_ins.append(1)
            crossings.append((u[j], q[i], t[i], p[j]))
            over_ins.append(1)
    d = LinkDiagram(crossings, over_ins)
    if d.linking_number(0, 1) != f:
        raise AssertionError("clasp chain has wrong linking number")
    return d

"""Brute-force skein oracles, independent of the package engines.

Full resolution trees: no memoization, no R1/R2 reduction, and the
opposite traversal order (components from the highest arc label).  The
Kauffman oracle also uses a different base case: a descending diagram D
contributes v^writhe(D) * gamma^(components-1) directly, so curls are
never stripped.

Diagrams are handled in the normalized PD form (slot 0 = under-in);
switching a crossing rotates its tuple instead of flagging a bit.
"""

from knotbounds.laurent import LaurentPoly2

DELTA = LaurentPoly2({(-1, -1): 1, (1, -1): -1})
GAMMA = LaurentPoly2({(1, -1): 1, (-1, -1): 1, (0, 0): -1})
V = LaurentPoly2({(1, 0): 1})
VINV = LaurentPoly2({(-1, 0): 1})
Z = LaurentPoly2({(0, 1): 1})
ONE = LaurentPoly2.one()


def _heads(crossings, over_ins):
    heads = {}
    for ci, (t, o) in enumerate(zip(crossings, over_ins)):
        heads[t[0]] = (ci, 0)
        heads[t[o]] = (ci, o)
    return heads


def _walk(crossings, over_ins):
    """Traverse from the highest arc; return (branch index or None, comps)."""
    heads = _heads(crossings, over_ins)
    unvisited = {a for t in crossings for a in t}
    seen = set()
    branch = None
    comps = 0
    while unvisited:
        start = max(unvisited)
        comps += 1
        cur = start
        while True:
            unvisited.discard(cur)
            c, s = heads[cur]
            if c not in seen:
                seen.add(c)
                if s == 0 and branch is None:
                    branch = c
            cur = crossings[c][s ^ 2]
            if cur == start:
                break
    return branch, comps


def _splice(crossings, over_ins, removed, joins):
    relabel = {}

    def find(a):
        while a in relabel:
            a = relabel[a]
        return a

    loops = 0
    for a, b in joins:
        ra, rb = find(a), find(b)
        if ra == rb:
            loops += 1
        else:
            relabel[max(ra, rb)] = min(ra, rb)
    cs, os_ = [], []
    for ci, t in enumerate(crossings):
        if ci == removed:
            continue
        cs.append(tuple(find(a) for a in t))
        os_.append(over_ins[ci])
    return cs, os_, loops


def _switch(t, o):
    return t[o:] + t[:o], 4 - o


def _smooth(t, o):
    return [(t[0], t[o ^ 2]), (t[o], t[2])]


def _writhe(over_ins):
    return sum(1 if o == 1 else -1 for o in over_ins)


def homfly_oracle(d):
    """HOMFLY-PT by full binary resolution of a LinkDiagram."""
    return _homfly(list(d.crossings), list(d.over_ins), d.unknotted_free)


def _homfly(crossings, over_ins, loops=0):
    if not crossings:
        return DELTA ** (loops - 1) if loops else ONE
    branch, comps = _walk(crossings, over_ins)
    if branch is None:
        return DELTA ** (comps + loops - 1)
    t, o = crossings[branch], over_ins[branch]
    sign = 1 if o == 1 else -1
    sw_t, sw_o = _switch(t, o)
    switched = list(crossings)
    sw_os = list(over_ins)
    switched[branch] = sw_t
    sw_os[branch] = sw_o
    sm_c, sm_o, extra = _splice(crossings, over_ins, branch, _smooth(t, o))
    p_sw = _homfly(switched, sw_os, loops)
    p_sm = _homfly(sm_c, sm_o, loops + extra)
    if sign > 0:
        return V * V * p_sw + V * Z * p_sm
    return VINV * VINV * p_sw - VINV * Z * p_sm


def kauffman_oracle(d):
    """Kauffman F by full ternary resolution of a LinkDiagram."""
    lam = _lambda(list(d.crossings), d.unknotted_free)
    return lam.shift(-_writhe(list(d.over_ins)), 0)


def _occ(crossings):
    occ = {}
    for ci, t in enumerate(crossings):
        for s, a in enumerate(t):
            occ.setdefault(a, []).append((ci, s))
    return occ


def _unoriented_walk(crossings):
    """Walk from the highest arc, entering at the later occurrence.

    Returns (branch or None, components, arrival slots per crossing).
    The walk direction orients each component, so the recorded arrival
    slots determine every crossing sign.
    """
    occ = _occ(crossings)
    unvisited = set(occ)
    arrivals = {}
    branch = None
    comps = 0
    while unvisited:
        start = max(unvisited)
        comps += 1
        c, s = max(occ[start])
        cur = start
        while True:
            unvisited.discard(cur)
            first_visit = c not in arrivals
            if first_visit:
                arrivals[c] = [None, None]
                if s % 2 == 0 and branch is None:
                    branch = c  # first visit arrives on the under-strand
            arrivals[c][s % 2] = s
            nxt = crossings[c][s ^ 2]
            if nxt == start:
                break
            p1, p2 = occ[nxt]
            c, s = p2 if p1 == (c, s ^ 2) else p1
            cur = nxt
    return branch, comps, arrivals


def _descending_writhe(arrivals):
    w = 0
    for under_s, over_s in arrivals.values():
        w += 1 if over_s == (under_s + 1) % 4 else -1
    return w


def _lambda(crossings, loops=0):
    if not crossings:
        return GAMMA ** (loops - 1) if loops else ONE
    branch, comps, arrivals = _unoriented_walk(crossings)
    if branch is None:
        # descending: regular-isotopy class is a w-writhe unlink, and w
        # is orientation-free there (splitness kills the mixed terms)
        w = _descending_writhe(arrivals)
        return GAMMA ** (comps + loops - 1) * (
            V ** w if w >= 0 else VINV ** (-w)
        )
    t = crossings[branch]
    switched = list(crossings)
    switched[branch] = (t[1], t[2], t[3], t[0])
    ca, ea = _splice_u(crossings, branch, [(t[0], t[1]), (t[2], t[3])])
    cb, eb = _splice_u(crossings, branch, [(t[1], t[2]), (t[3], t[0])])
    return (
        Z * (_lambda(ca, loops + ea) + _lambda(cb, loops + eb))
        - _lambda(switched, loops)
    )


def _splice_u(crossings, removed, joins):
    relabel = {}

    def find(a):
        while a in relabel:
            a = relabel[a]
        return a

    loops = 0
    for a, b in joins:
        ra, rb = find(a), find(b)
        if ra == rb:
            loops += 1
        else:
            relabel[max(ra, rb)] = min(ra, rb)
    out = []
    for ci, t in enumerate(crossings):
        if ci == removed:
            continue
        out.append(tuple(find(a) for a in t))
    return out, loops

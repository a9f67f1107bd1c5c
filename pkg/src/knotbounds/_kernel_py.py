"""Pure-Python skein recursion kernel.

Both polynomial engines work on a flat crossing encoding and recurse
toward descending diagrams: walk the diagram from a deterministic
basepoint; at the first crossing met on its under-strand, branch into
the crossing-switched and crossing-smoothed diagrams.  Descending
diagrams are unlinks and close the recursion.  Sub-diagrams are
canonicalized up to arc relabeling and memoized.

Crossing encoding (one tuple per crossing):
    homfly:   (a0, a1, a2, a3, p, inA, inB)
    kauffman: (a0, a1, a2, a3, p)
where a0..a3 are arc labels counterclockwise, ``p`` says which strand
is under (0: slots 0/2, 1: slots 1/3), and inA/inB are the incoming
slots of the two strands (inA in {0,2}, inB in {1,3}).  Switching a
crossing toggles ``p`` and nothing else, so traversal order is stable
across switches, which is what makes the recursion terminate.

The compiled kernel in ``_kernel.pyx`` mirrors this module; keep their
behaviour identical.
"""

from __future__ import annotations

from .errors import ResourceLimit

IS_COMPILED = False

DEFAULT_NODE_BUDGET = 10_000_000

# polynomial dicts: {(v_exp, z_exp): int}

_DELTA = {(-1, -1): 1, (1, -1): -1}            # (v^-1 - v)/z
_GAMMA = {(1, -1): 1, (-1, -1): 1, (0, 0): -1}  # (v + v^-1)/z - 1


def _poly_mul(p, q):
    out = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            c = out.get(key, 0) + c1 * c2
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def _poly_pow(p, n):
    out = {(0, 0): 1}
    base = dict(p)
    while n:
        if n & 1:
            out = _poly_mul(out, base)
        base = _poly_mul(base, base)
        n >>= 1
    return out


def _mono_mul(p, coeff, dv, dz):
    return {(i + dv, j + dz): c * coeff for (i, j), c in p.items()}


def _poly_add_into(acc, p):
    for key, c in p.items():
        c2 = acc.get(key, 0) + c
        if c2:
            acc[key] = c2
        elif key in acc:
            del acc[key]


def _occurrences(crossings):
    occ = {}
    for ci, t in enumerate(crossings):
        for s in range(4):
            occ.setdefault(t[s], []).append((ci, s))
    return occ


def _splice(crossings, removed, joins):
    """Remove crossings, fusing arc chains; returns (crossings, new_loops)."""
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
        elif ra < rb:
            relabel[rb] = ra
        else:
            relabel[ra] = rb
    out = []
    for ci, t in enumerate(crossings):
        if ci in removed:
            continue
        if relabel:
            out.append(
                (find(t[0]), find(t[1]), find(t[2]), find(t[3])) + t[4:]
            )
        else:
            out.append(t)
    return out, loops


# --- homfly ----------------------------------------------------------------

def _h_sign(t):
    in_under = t[5] if t[4] == 0 else t[6]
    in_over = t[6] if t[4] == 0 else t[5]
    return 1 if in_over == (in_under + 1) % 4 else -1


def _h_simplify(crossings, loops):
    """R1 and R2 removals until stable; both are HOMFLY-neutral."""
    changed = True
    while changed and crossings:
        changed = False
        # R1: an arc occupying two adjacent slots of one crossing
        for ci, t in enumerate(crossings):
            for s in range(4):
                if t[s] == t[(s + 1) % 4]:
                    x, y = t[(s + 2) % 4], t[(s + 3) % 4]
                    crossings, extra = _splice(crossings, {ci}, [(x, y)])
                    loops += extra
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        # R2: bigon face with one strand passing over at both crossings
        site = _find_r2_site(crossings)
        if site is not None:
            removed, joins = site
            crossings, extra = _splice(crossings, removed, joins)
            loops += extra
            changed = True
    return crossings, loops


def _find_r2_site(crossings):
    """Locate a cancelable bigon; returns ({c1, c2}, joins) or None."""
    occ = _occurrences(crossings)
    for x, places in occ.items():
        for (cA, sA), (cB, sB) in (places, places[::-1]):
            if cA == cB:
                continue
            tA, tB = crossings[cA], crossings[cB]
            # bigon partner: the arc one slot counterclockwise at cB must
            # come back one slot clockwise at cA
            y = tB[(sB + 1) % 4]
            py = occ[y]
            other = py[0] if py[1] == (cB, (sB + 1) % 4) else py[1]
            if other != (cA, (sA - 1) % 4):
                continue
            overA = (sA % 2 == 1) != (tA[4] == 1)
            overB = (sB % 2 == 1) != (tB[4] == 1)
            if overA != overB:
                continue
            uA, wA = tA[(sA + 2) % 4], tA[(sA + 1) % 4]
            uB, wB = tB[(sB + 2) % 4], tB[(sB + 3) % 4]
            return {cA, cB}, [(uA, uB), (wA, wB)]
    return None


def _h_walk(crossings):
    """Deterministic traversal; returns (branch crossing or -1, component count).

    The branch crossing is the first one whose first visit arrives on
    the under-strand.
    """
    occ = _occurrences(crossings)
    heads = {}
    for ci, t in enumerate(crossings):
        heads[t[t[5]]] = (ci, t[5])
        heads[t[t[6]]] = (ci, t[6])
    unvisited = set(occ)
    seen = set()
    branch = -1
    comps = 0
    while unvisited:
        start = min(unvisited)
        comps += 1
        cur = start
        while True:
            unvisited.discard(cur)
            c, s = heads[cur]
            if c not in seen:
                seen.add(c)
                under = (s % 2) == (1 if crossings[c][4] else 0)
                if under and branch < 0:
                    branch = c
            cur = crossings[c][s ^ 2]
            if cur == start:
                break
    return branch, comps


def _h_canonical(crossings):
    """Minimal relabeled encoding over all incoming-occurrence starts."""
    occ = _occurrences(crossings)
    best = None
    n = len(crossings)
    for c0 in range(n):
        t0 = crossings[c0]
        for s0 in (t0[5], t0[6]):
            enc = _h_encode(crossings, occ, (c0, s0))
            if best is None or enc < best:
                best = enc
    return best


def _h_encode(crossings, occ, start):
    arc_new = {}
    cross_new = {}
    cross_order = []
    c, s = start
    start_arc = crossings[c][s]
    pending = [(c, s)]
    visited_arcs = set()
    while pending:
        c, s = pending.pop()
        first_arc = crossings[c][s]
        cur_c, cur_s = c, s
        while True:
            arc = crossings[cur_c][cur_s]
            if arc in visited_arcs:
                break
            visited_arcs.add(arc)
            if arc not in arc_new:
                arc_new[arc] = len(arc_new)
            if cur_c not in cross_new:
                cross_new[cur_c] = len(cross_new)
                cross_order.append(cur_c)
            nxt = crossings[cur_c][cur_s ^ 2]
            if nxt not in arc_new:
                arc_new[nxt] = len(arc_new)
            if nxt == first_arc:
                break
            p1, p2 = occ[nxt]
            t = crossings[p1[0]]
            # move to the incoming occurrence of nxt
            if p1[1] == t[5] or p1[1] == t[6]:
                cur_c, cur_s = p1
            else:
                cur_c, cur_s = p2
        # next component: scan visited crossings in discovery order for
        # an arc not yet walked, anchored at the under-in slot
        for cc in cross_order:
            t = crossings[cc]
            anchor = t[5] if t[4] == 0 else t[6]
            for k in range(4):
                a = t[(anchor + k) % 4]
                if a not in visited_arcs:
                    pt = occ[a]
                    for (c2, s2) in pt:
                        tt = crossings[c2]
                        if s2 == tt[5] or s2 == tt[6]:
                            pending.append((c2, s2))
                            break
                    break
            else:
                continue
            break
    out = []
    for cc in cross_order:
        t = crossings[cc]
        in_under = t[5] if t[4] == 0 else t[6]
        in_over = t[6] if t[4] == 0 else t[5]
        out.append(
            (
                arc_new[t[in_under]],
                arc_new[t[(in_under + 1) % 4]],
                arc_new[t[(in_under + 2) % 4]],
                arc_new[t[(in_under + 3) % 4]],
                (in_over - in_under) % 4,
            )
        )
    del start_arc
    return tuple(out)


def _split_pieces(crossings):
    n = len(crossings)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    occ = _occurrences(crossings)
    for places in occ.values():
        if len(places) == 2:
            r1, r2 = find(places[0][0]), find(places[1][0])
            if r1 != r2:
                parent[r1] = r2
    groups = {}
    for ci in range(n):
        groups.setdefault(find(ci), []).append(ci)
    return [
        [crossings[i] for i in members] for members in sorted(groups.values())
    ]


def homfly_core(crossings, loops, cache, stats, max_nodes):
    """HOMFLY-PT of the state; crossings use the 7-field encoding."""
    crossings, loops = _h_simplify(list(crossings), loops)
    if not crossings:
        return _poly_pow(_DELTA, loops - 1) if loops else {(0, 0): 1}
    pieces = _split_pieces(crossings)
    result = _poly_pow(_DELTA, loops + len(pieces) - 1)
    for piece in pieces:
        result = _poly_mul(result, _h_connected(piece, cache, stats, max_nodes))
    return result


def _h_connected(crossings, cache, stats, max_nodes):
    key = _h_canonical(crossings)
    hit = cache.get(key)
    if hit is not None:
        stats[0] += 1
        return hit
    stats[1] += 1
    stats[2] += 1
    if stats[2] > max_nodes:
        raise ResourceLimit(f"skein node budget {max_nodes} exceeded")
    branch, comps = _h_walk(crossings)
    if branch < 0:
        value = _poly_pow(_DELTA, comps - 1)
        cache[key] = value
        return value
    t = crossings[branch]
    sign = _h_sign(t)
    switched = list(crossings)
    switched[branch] = (t[0], t[1], t[2], t[3], t[4] ^ 1, t[5], t[6])
    in_under = t[5] if t[4] == 0 else t[6]
    in_over = t[6] if t[4] == 0 else t[5]
    smoothed, extra = _splice(
        crossings,
        {branch},
        [(t[in_under], t[in_over ^ 2]), (t[in_over], t[in_under ^ 2])],
    )
    p_sw = homfly_core(switched, 0, cache, stats, max_nodes)
    p_sm = homfly_core(smoothed, extra, cache, stats, max_nodes)
    if sign > 0:
        value = {}
        _poly_add_into(value, _mono_mul(p_sw, 1, 2, 0))
        _poly_add_into(value, _mono_mul(p_sm, 1, 1, 1))
    else:
        value = {}
        _poly_add_into(value, _mono_mul(p_sw, 1, -2, 0))
        _poly_add_into(value, _mono_mul(p_sm, -1, -1, 1))
    cache[key] = value
    return value


# --- kauffman ---------------------------------------------------------------

def _k_kink_sign(t, s):
    """Sign of the kink whose loop arc occupies slots s, s+1."""
    lo, hi = s, (s + 1) % 4
    lo_under = (lo % 2) == (1 if t[4] else 0)
    under_slot, over_slot = (lo, hi) if lo_under else (hi, lo)
    return -1 if over_slot == (under_slot + 1) % 4 else 1


def _k_simplify(crossings, loops):
    """R1 (with writhe factor) and R2 removals until stable.

    Returns (crossings, loops, dv): the removed kinks contribute a net
    monomial v^dv to the regular-isotopy polynomial.
    """
    dv = 0
    changed = True
    while changed and crossings:
        changed = False
        for ci, t in enumerate(crossings):
            for s in range(4):
                if t[s] == t[(s + 1) % 4]:
                    dv += _k_kink_sign(t, s)
                    x, y = t[(s + 2) % 4], t[(s + 3) % 4]
                    crossings, extra = _splice(crossings, {ci}, [(x, y)])
                    loops += extra
                    changed = True
                    break
            if changed:
                break
        if changed:
            continue
        site = _find_r2_site(crossings)
        if site is not None:
            removed, joins = site
            crossings, extra = _splice(crossings, removed, joins)
            loops += extra
            changed = True
    return crossings, loops, dv


def _k_walk(crossings):
    """Unoriented traversal; entry occurrences chosen lexicographically."""
    occ = _occurrences(crossings)
    entry = {a: min(places) for a, places in occ.items()}
    unvisited = set(occ)
    seen = set()
    branch = -1
    comps = 0
    while unvisited:
        start = min(unvisited)
        comps += 1
        cur = start
        c, s = entry[start]
        while True:
            unvisited.discard(cur)
            if c not in seen:
                seen.add(c)
                under = (s % 2) == (1 if crossings[c][4] else 0)
                if under and branch < 0:
                    branch = c
            nxt = crossings[c][s ^ 2]
            if nxt == start:
                break
            p1, p2 = occ[nxt]
            c, s = p2 if p1 == (c, s ^ 2) else p1
            cur = nxt
    return branch, comps


def _k_canonical(crossings):
    best = None
    for c0 in range(len(crossings)):
        for s0 in range(4):
            enc = _k_encode(crossings, (c0, s0))
            if best is None or enc < best:
                best = enc
    return best


def _k_encode(crossings, start):
    occ = _occurrences(crossings)
    arc_new = {}
    cross_new = {}
    cross_order = []
    anchor = {}
    visited_arcs = set()
    pending = [start]
    while pending:
        c, s = pending.pop()
        first_arc = crossings[c][s]
        cur_c, cur_s = c, s
        while True:
            arc = crossings[cur_c][cur_s]
            if arc in visited_arcs:
                break
            visited_arcs.add(arc)
            if arc not in arc_new:
                arc_new[arc] = len(arc_new)
            if cur_c not in cross_new:
                cross_new[cur_c] = len(cross_new)
                cross_order.append(cur_c)
                anchor[cur_c] = cur_s
            nxt = crossings[cur_c][cur_s ^ 2]
            if nxt not in arc_new:
                arc_new[nxt] = len(arc_new)
            if nxt == first_arc:
                break
            p1, p2 = occ[nxt]
            cur_c, cur_s = p2 if p1 == (cur_c, cur_s ^ 2) else p1
        for cc in cross_order:
            t = crossings[cc]
            a0 = anchor[cc]
            for k in range(4):
                slot = (a0 + k) % 4
                if t[slot] not in visited_arcs:
                    # enter the new component at the discovered crossing
                    pending.append((cc, slot))
                    break
            else:
                continue
            break
    out = []
    for cc in cross_order:
        t = crossings[cc]
        a0 = anchor[cc]
        under_rel = ((a0 % 2) == (1 if t[4] else 0))
        out.append(
            (
                arc_new[t[a0]],
                arc_new[t[(a0 + 1) % 4]],
                arc_new[t[(a0 + 2) % 4]],
                arc_new[t[(a0 + 3) % 4]],
                1 if under_rel else 0,
            )
        )
    return tuple(out)


def kauffman_core(crossings, loops, cache, stats, max_nodes):
    """Regular-isotopy Kauffman polynomial of the state (5-field encoding)."""
    crossings, loops, dv = _k_simplify(list(crossings), loops)
    if not crossings:
        base = _poly_pow(_GAMMA, loops - 1) if loops else {(0, 0): 1}
        return _mono_mul(base, 1, dv, 0) if dv else base
    pieces = _split_pieces(crossings)
    result = _poly_pow(_GAMMA, loops + len(pieces) - 1)
    if dv:
        result = _mono_mul(result, 1, dv, 0)
    for piece in pieces:
        result = _poly_mul(result, _k_connected(piece, cache, stats, max_nodes))
    return result


def _k_connected(crossings, cache, stats, max_nodes):
    key = _k_canonical(crossings)
    hit = cache.get(key)
    if hit is not None:
        stats[0] += 1
        return hit
    stats[1] += 1
    stats[2] += 1
    if stats[2] > max_nodes:
        raise ResourceLimit(f"skein node budget {max_nodes} exceeded")
    branch, comps = _k_walk(crossings)
    if branch < 0:
        value = _poly_pow(_GAMMA, comps - 1)
        cache[key] = value
        return value
    t = crossings[branch]
    switched = list(crossings)
    switched[branch] = (t[0], t[1], t[2], t[3], t[4] ^ 1)
    smooth_a, extra_a = _splice(
        crossings, {branch}, [(t[0], t[1]), (t[2], t[3])]
    )
    smooth_b, extra_b = _splice(
        crossings, {branch}, [(t[1], t[2]), (t[3], t[0])]
    )
    p_sw = kauffman_core(switched, 0, cache, stats, max_nodes)
    p_a = kauffman_core(smooth_a, extra_a, cache, stats, max_nodes)
    p_b = kauffman_core(smooth_b, extra_b, cache, stats, max_nodes)
    value = {}
    _poly_add_into(value, _mono_mul(p_a, 1, 0, 1))
    _poly_add_into(value, _mono_mul(p_b, 1, 0, 1))
    _poly_add_into(value, _mono_mul(p_sw, -1, 0, 0))
    cache[key] = value
    return value

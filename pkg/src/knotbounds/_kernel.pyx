# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled skein recursion kernel.

Mirrors ``_kernel_py`` exactly (same encodings, same traversal rules,
same cache keys); the diagram walks and canonical-key searches run on
dense C arrays.  Keep the two kernels behaviourally identical.
"""

from libc.stdlib cimport free, malloc

from .errors import ResourceLimit

IS_COMPILED = True

DEFAULT_NODE_BUDGET = 10_000_000

_DELTA = {(-1, -1): 1, (1, -1): -1}
_GAMMA = {(1, -1): 1, (-1, -1): 1, (0, 0): -1}


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


cdef struct Dense:
    int n          # crossings
    int m          # distinct arcs
    int *slot      # 4n slot arcs (dense ids)
    int *occ1      # m: first occurrence packed (c << 2) | s
    int *occ2      # m: second occurrence
    int *extra     # 3n: parity/inA/inB per crossing


cdef int _dense_init(object crossings, Dense *d, dict arc_ids) except -1:
    cdef int n = len(crossings)
    cdef int ci, s, aid
    d.n = n
    d.slot = <int *> malloc(4 * n * sizeof(int))
    d.extra = <int *> malloc(3 * n * sizeof(int))
    d.occ1 = <int *> malloc(8 * n * sizeof(int))
    d.occ2 = <int *> malloc(8 * n * sizeof(int))
    if not d.slot or not d.extra or not d.occ1 or not d.occ2:
        raise MemoryError()
    for ci in range(8 * n):
        d.occ1[ci] = -1
        d.occ2[ci] = -1
    cdef object t
    cdef int idx = 0
    for ci in range(n):
        t = crossings[ci]
        for s in range(4):
            a = t[s]
            cached = arc_ids.get(a)
            if cached is None:
                aid = idx
                arc_ids[a] = idx
                idx += 1
            else:
                aid = cached
            d.slot[4 * ci + s] = aid
            if d.occ1[aid] < 0:
                d.occ1[aid] = (ci << 2) | s
            else:
                d.occ2[aid] = (ci << 2) | s
        if len(t) >= 7:
            d.extra[3 * ci] = t[4]
            d.extra[3 * ci + 1] = t[5]
            d.extra[3 * ci + 2] = t[6]
        else:
            d.extra[3 * ci] = t[4]
            d.extra[3 * ci + 1] = 0
            d.extra[3 * ci + 2] = 0
    d.m = idx
    return 0


cdef void _dense_free(Dense *d):
    free(d.slot)
    free(d.extra)
    free(d.occ1)
    free(d.occ2)


# --- homfly ------------------------------------------------------------------

def _h_sign(t):
    in_under = t[5] if t[4] == 0 else t[6]
    in_over = t[6] if t[4] == 0 else t[5]
    return 1 if in_over == (in_under + 1) % 4 else -1


def _find_r2_site(crossings):
    occ = _occurrences(crossings)
    for x, places in occ.items():
        for (cA, sA), (cB, sB) in (places, places[::-1]):
            if cA == cB:
                continue
            tA = crossings[cA]
            tB = crossings[cB]
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


def _h_simplify(crossings, loops):
    cdef int changed = 1
    while changed and crossings:
        changed = 0
        for ci, t in enumerate(crossings):
            for s in range(4):
                if t[s] == t[(s + 1) % 4]:
                    x, y = t[(s + 2) % 4], t[(s + 3) % 4]
                    crossings, extra = _splice(crossings, {ci}, [(x, y)])
                    loops += extra
                    changed = 1
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
            changed = 1
    return crossings, loops


cdef tuple _h_walk_c(object crossings):
    """(branch index or -1, component count) via the dense arrays."""
    cdef Dense d
    cdef dict arc_ids = {}
    _dense_init(crossings, &d, arc_ids)
    cdef int *head = <int *> malloc(d.m * sizeof(int))
    cdef char *arc_seen = <char *> malloc(d.m)
    cdef char *cross_seen = <char *> malloc(d.n if d.n else 1)
    if not head or not arc_seen or not cross_seen:
        _dense_free(&d)
        raise MemoryError()
    cdef int ci, s, aid, packed
    for aid in range(d.m):
        arc_seen[aid] = 0
    for ci in range(d.n):
        cross_seen[ci] = 0
    for ci in range(d.n):
        s = d.extra[3 * ci + 1]
        head[d.slot[4 * ci + s]] = (ci << 2) | s
        s = d.extra[3 * ci + 2]
        head[d.slot[4 * ci + s]] = (ci << 2) | s
    cdef int branch = -1
    cdef int comps = 0
    cdef int start, cur, under, p
    for start in range(d.m):
        if arc_seen[start]:
            continue
        comps += 1
        cur = start
        while True:
            arc_seen[cur] = 1
            packed = head[cur]
            ci = packed >> 2
            s = packed & 3
            if not cross_seen[ci]:
                cross_seen[ci] = 1
                p = d.extra[3 * ci]
                under = 1 if (s & 1) == p else 0
                if under and branch < 0:
                    branch = ci
            cur = d.slot[4 * ci + (s ^ 2)]
            if cur == start:
                break
    free(head)
    free(arc_seen)
    free(cross_seen)
    _dense_free(&d)
    return branch, comps


cdef bytes _h_encode_c(Dense *d, int start_packed):
    cdef int n = d.n
    cdef int m = d.m
    cdef int *arc_new = <int *> malloc(m * sizeof(int))
    cdef int *cross_new = <int *> malloc(n * sizeof(int))
    cdef int *cross_order = <int *> malloc(n * sizeof(int))
    cdef char *arc_done = <char *> malloc(m)
    if not arc_new or not cross_new or not cross_order or not arc_done:
        raise MemoryError()
    cdef int i
    for i in range(m):
        arc_new[i] = -1
        arc_done[i] = 0
    for i in range(n):
        cross_new[i] = -1
    cdef int n_arc = 0, n_cross = 0
    cdef int pending = start_packed
    cdef int have_pending = 1
    cdef int ci, s, arc, first_arc, nxt, packed, other
    cdef int k, cc, anchor, slot, in_under, in_over, p
    while have_pending:
        have_pending = 0
        ci = pending >> 2
        s = pending & 3
        first_arc = d.slot[4 * ci + s]
        while True:
            arc = d.slot[4 * ci + s]
            if arc_done[arc]:
                break
            arc_done[arc] = 1
            if arc_new[arc] < 0:
                arc_new[arc] = n_arc
                n_arc += 1
            if cross_new[ci] < 0:
                cross_new[ci] = n_cross
                cross_order[n_cross] = ci
                n_cross += 1
            nxt = d.slot[4 * ci + (s ^ 2)]
            if arc_new[nxt] < 0:
                arc_new[nxt] = n_arc
                n_arc += 1
            if nxt == first_arc:
                break
            packed = d.occ1[nxt]
            other = packed >> 2
            slot = packed & 3
            if slot == d.extra[3 * other + 1] or slot == d.extra[3 * other + 2]:
                ci = other
                s = slot
            else:
                packed = d.occ2[nxt]
                ci = packed >> 2
                s = packed & 3
        # next component: first undone arc scanning discovered crossings
        for k in range(n_cross):
            cc = cross_order[k]
            p = d.extra[3 * cc]
            anchor = d.extra[3 * cc + 1] if p == 0 else d.extra[3 * cc + 2]
            for i in range(4):
                slot = (anchor + i) & 3
                arc = d.slot[4 * cc + slot]
                if not arc_done[arc]:
                    packed = d.occ1[arc]
                    other = packed >> 2
                    s = packed & 3
                    if s == d.extra[3 * other + 1] or s == d.extra[3 * other + 2]:
                        pending = packed
                    else:
                        pending = d.occ2[arc]
                    have_pending = 1
                    break
            if have_pending:
                break
        if n_cross == n and not have_pending:
            break
    cdef bytearray out = bytearray(9 * n)
    cdef int pos = 0
    cdef int val
    for k in range(n_cross):
        cc = cross_order[k]
        p = d.extra[3 * cc]
        in_under = d.extra[3 * cc + 1] if p == 0 else d.extra[3 * cc + 2]
        in_over = d.extra[3 * cc + 2] if p == 0 else d.extra[3 * cc + 1]
        for i in range(4):
            val = arc_new[d.slot[4 * cc + ((in_under + i) & 3)]]
            out[pos] = val & 0xFF
            out[pos + 1] = (val >> 8) & 0xFF
            pos += 2
        out[pos] = (in_over - in_under) & 3
        pos += 1
    free(arc_new)
    free(cross_new)
    free(cross_order)
    free(arc_done)
    return bytes(out)


cdef object _h_canonical_c(object crossings):
    cdef Dense d
    cdef dict arc_ids = {}
    _dense_init(crossings, &d, arc_ids)
    cdef bytes best = None
    cdef bytes enc
    cdef int ci
    try:
        for ci in range(d.n):
            enc = _h_encode_c(&d, (ci << 2) | d.extra[3 * ci + 1])
            if best is None or enc < best:
                best = enc
            enc = _h_encode_c(&d, (ci << 2) | d.extra[3 * ci + 2])
            if enc < best:
                best = enc
    finally:
        _dense_free(&d)
    return best


def _split_pieces(crossings):
    cdef int n = len(crossings)
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
    crossings, loops = _h_simplify(list(crossings), loops)
    if not crossings:
        return _poly_pow(_DELTA, loops - 1) if loops else {(0, 0): 1}
    pieces = _split_pieces(crossings)
    result = _poly_pow(_DELTA, loops + len(pieces) - 1)
    for piece in pieces:
        result = _poly_mul(result, _h_connected(piece, cache, stats, max_nodes))
    return result


def _h_connected(crossings, cache, stats, max_nodes):
    key = _h_canonical_c(crossings)
    hit = cache.get(key)
    if hit is not None:
        stats[0] += 1
        return hit
    stats[1] += 1
    stats[2] += 1
    if stats[2] > max_nodes:
        raise ResourceLimit(f"skein node budget {max_nodes} exceeded")
    branch, comps = _h_walk_c(crossings)
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
    value = {}
    if sign > 0:
        _poly_add_into(value, _mono_mul(p_sw, 1, 2, 0))
        _poly_add_into(value, _mono_mul(p_sm, 1, 1, 1))
    else:
        _poly_add_into(value, _mono_mul(p_sw, 1, -2, 0))
        _poly_add_into(value, _mono_mul(p_sm, -1, -1, 1))
    cache[key] = value
    return value


# --- kauffman -----------------------------------------------------------------

def _k_kink_sign(t, s):
    lo, hi = s, (s + 1) % 4
    lo_under = (lo % 2) == (1 if t[4] else 0)
    under_slot, over_slot = (lo, hi) if lo_under else (hi, lo)
    return -1 if over_slot == (under_slot + 1) % 4 else 1


def _k_simplify(crossings, loops):
    cdef int dv = 0
    cdef int changed = 1
    while changed and crossings:
        changed = 0
        for ci, t in enumerate(crossings):
            for s in range(4):
                if t[s] == t[(s + 1) % 4]:
                    dv += _k_kink_sign(t, s)
                    x, y = t[(s + 2) % 4], t[(s + 3) % 4]
                    crossings, extra = _splice(crossings, {ci}, [(x, y)])
                    loops += extra
                    changed = 1
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
            changed = 1
    return crossings, loops, dv


cdef tuple _k_walk_c(object crossings):
    cdef Dense d
    cdef dict arc_ids = {}
    _dense_init(crossings, &d, arc_ids)
    cdef char *arc_seen = <char *> malloc(d.m)
    cdef char *cross_seen = <char *> malloc(d.n if d.n else 1)
    if not arc_seen or not cross_seen:
        _dense_free(&d)
        raise MemoryError()
    cdef int i, ci, s, packed
    for i in range(d.m):
        arc_seen[i] = 0
    for i in range(d.n):
        cross_seen[i] = 0
    cdef int branch = -1
    cdef int comps = 0
    cdef int start, cur, nxt, p, under
    for start in range(d.m):
        if arc_seen[start]:
            continue
        comps += 1
        cur = start
        packed = d.occ1[start]  # lexicographically first occurrence
        ci = packed >> 2
        s = packed & 3
        while True:
            arc_seen[cur] = 1
            if not cross_seen[ci]:
                cross_seen[ci] = 1
                p = d.extra[3 * ci]
                under = 1 if (s & 1) == p else 0
                if under and branch < 0:
                    branch = ci
            nxt = d.slot[4 * ci + (s ^ 2)]
            if nxt == start:
                break
            packed = d.occ1[nxt]
            if (packed >> 2) == ci and (packed & 3) == (s ^ 2):
                packed = d.occ2[nxt]
            ci = packed >> 2
            s = packed & 3
            cur = nxt
    free(arc_seen)
    free(cross_seen)
    _dense_free(&d)
    return branch, comps


cdef bytes _k_encode_c(Dense *d, int start_packed):
    cdef int n = d.n
    cdef int m = d.m
    cdef int *arc_new = <int *> malloc(m * sizeof(int))
    cdef int *cross_new = <int *> malloc(n * sizeof(int))
    cdef int *cross_order = <int *> malloc(n * sizeof(int))
    cdef int *anchor = <int *> malloc(n * sizeof(int))
    cdef char *arc_done = <char *> malloc(m)
    if (not arc_new or not cross_new or not cross_order or not anchor
            or not arc_done):
        raise MemoryError()
    cdef int i
    for i in range(m):
        arc_new[i] = -1
        arc_done[i] = 0
    for i in range(n):
        cross_new[i] = -1
    cdef int n_arc = 0, n_cross = 0
    cdef int pending = start_packed
    cdef int have_pending = 1
    cdef int ci, s, arc, first_arc, nxt, packed
    cdef int k, cc, a0, slot, p, under_rel
    while have_pending:
        have_pending = 0
        ci = pending >> 2
        s = pending & 3
        first_arc = d.slot[4 * ci + s]
        while True:
            arc = d.slot[4 * ci + s]
            if arc_done[arc]:
                break
            arc_done[arc] = 1
            if arc_new[arc] < 0:
                arc_new[arc] = n_arc
                n_arc += 1
            if cross_new[ci] < 0:
                cross_new[ci] = n_cross
                cross_order[n_cross] = ci
                anchor[ci] = s
                n_cross += 1
            nxt = d.slot[4 * ci + (s ^ 2)]
            if arc_new[nxt] < 0:
                arc_new[nxt] = n_arc
                n_arc += 1
            if nxt == first_arc:
                break
            packed = d.occ1[nxt]
            if (packed >> 2) == ci and (packed & 3) == (s ^ 2):
                packed = d.occ2[nxt]
            ci = packed >> 2
            s = packed & 3
        for k in range(n_cross):
            cc = cross_order[k]
            a0 = anchor[cc]
            for i in range(4):
                slot = (a0 + i) & 3
                arc = d.slot[4 * cc + slot]
                if not arc_done[arc]:
                    pending = (cc << 2) | slot
                    have_pending = 1
                    break
            if have_pending:
                break
        if n_cross == n and not have_pending:
            break
    cdef bytearray out = bytearray(9 * n)
    cdef int pos = 0
    cdef int val
    for k in range(n_cross):
        cc = cross_order[k]
        a0 = anchor[cc]
        p = d.extra[3 * cc]
        under_rel = 1 if (a0 & 1) == p else 0
        for i in range(4):
            val = arc_new[d.slot[4 * cc + ((a0 + i) & 3)]]
            out[pos] = val & 0xFF
            out[pos + 1] = (val >> 8) & 0xFF
            pos += 2
        out[pos] = under_rel
        pos += 1
    free(arc_new)
    free(cross_new)
    free(cross_order)
    free(anchor)
    free(arc_done)
    return bytes(out)


cdef object _k_canonical_c(object crossings):
    cdef Dense d
    cdef dict arc_ids = {}
    _dense_init(crossings, &d, arc_ids)
    cdef bytes best = None
    cdef bytes enc
    cdef int ci, s
    try:
        for ci in range(d.n):
            for s in range(4):
                enc = _k_encode_c(&d, (ci << 2) | s)
                if best is None or enc < best:
                    best = enc
    finally:
        _dense_free(&d)
    return best


def kauffman_core(crossings, loops, cache, stats, max_nodes):
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
    key = _k_canonical_c(crossings)
    hit = cache.get(key)
    if hit is not None:
        stats[0] += 1
        return hit
    stats[1] += 1
    stats[2] += 1
    if stats[2] > max_nodes:
        raise ResourceLimit(f"skein node budget {max_nodes} exceeded")
    branch, comps = _k_walk_c(crossings)
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

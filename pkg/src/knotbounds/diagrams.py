"""Oriented link diagrams as planar-diagram (PD) crossing lists.

A crossing is stored as a 4-tuple of arc labels listed counterclockwise
starting from the incoming under-arc, so slot 0 is the under-in and
slot 2 the under-out.  The over-strand occupies slots 1 and 3; which of
them is the incoming one is recorded per crossing in ``over_ins`` and
is either parsed from orientation propagation or carried explicitly
through diagram surgery.

Sign convention: a crossing is positive exactly when the over-strand
enters at slot 1 (one step counterclockwise from the under-in).  The
trefoil ``X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`` has writhe +3 under this
convention.
"""

from __future__ import annotations

import re
from collections import deque

from .errors import (
    InconsistentArcs,
    MalformedCode,
    NonrealizableOrientation,
    NotAKnot,
    UnknownComponent,
)

_TOKEN_RE = re.compile(r"X\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


class LinkDiagram:
    """Immutable oriented link diagram.

    Parameters
    ----------
    crossings : sequence of 4-tuples of arc labels (ints)
    over_ins : sequence of 1/3, incoming over-slot per crossing, or None
        to infer orientations by propagation from the under-strands.
    unknotted_free : number of crossing-free unknot components.
    """

    __slots__ = (
        "crossings",
        "over_ins",
        "unknotted_free",
        "_occ",
        "_heads",
        "_components",
        "_arc_comp",
    )

    def __init__(self, crossings, over_ins=None, unknotted_free=0):
        crossings = tuple(tuple(int(a) for a in t) for t in crossings)
        for t in crossings:
            if len(t) != 4:
                raise MalformedCode(f"crossing tuple {t} does not have 4 arcs")
        occ = {}
        for ci, t in enumerate(crossings):
            for s, a in enumerate(t):
                occ.setdefault(a, []).append((ci, s))
        for a, places in occ.items():
            if len(places) != 2:
                raise InconsistentArcs(
                    f"arc {a} appears {len(places)} time(s), expected 2"
                )
        if unknotted_free < 0:
            raise MalformedCode("negative unknotted-component count")
        if not crossings and not unknotted_free:
            raise MalformedCode("empty diagram: need crossings or 'U n'")

        object.__setattr__(self, "crossings", crossings)
        object.__setattr__(self, "unknotted_free", int(unknotted_free))
        object.__setattr__(self, "_occ", occ)
        if over_ins is None:
            over_ins = _infer_over_ins(crossings, occ)
        else:
            over_ins = tuple(int(o) for o in over_ins)
            if len(over_ins) != len(crossings) or any(
                o not in (1, 3) for o in over_ins
            ):
                raise MalformedCode("over_ins must assign 1 or 3 per crossing")
        object.__setattr__(self, "over_ins", tuple(over_ins))

        heads = _head_occurrences(crossings, self.over_ins, occ)
        object.__setattr__(self, "_heads", heads)
        comps, arc_comp = _trace_components(crossings, occ, heads)
        object.__setattr__(self, "_components", comps)
        object.__setattr__(self, "_arc_comp", arc_comp)

    def __setattr__(self, name, value):
        raise AttributeError("LinkDiagram is immutable")

    def __eq__(self, other):
        if not isinstance(other, LinkDiagram):
            return NotImplemented
        return (
            self.crossings == other.crossings
            and self.over_ins == other.over_ins
            and self.unknotted_free == other.unknotted_free
        )

    def __hash__(self):
        return hash((self.crossings, self.over_ins, self.unknotted_free))

    def __repr__(self):
        return f"LinkDiagram({self.pd_text()!r})"

    # --- basic queries ---

    def crossing_count(self):
        return len(self.crossings)

    def sign(self, ci):
        return 1 if self.over_ins[ci] == 1 else -1

    def signs(self):
        return tuple(self.sign(i) for i in range(len(self.crossings)))

    def writhe(self):
        return sum(self.signs(), 0)

    def components(self):
        """Arc sequences of the crossing-bearing components, in traversal order."""
        return self._components

    def component_count(self):
        return len(self._components) + self.unknotted_free

    def component_of_arc(self, arc):
        return self._arc_comp[arc]

    def arcs(self):
        return sorted(self._occ)

    def other_end(self, arc, place):
        a, b = self._occ[arc]
        return b if place == a else a

    def head_of(self, arc):
        return self._heads[arc]

    def linking_number(self, c1, c2):
        """Half the signed count of crossings between components c1 and c2."""
        total = self.component_count()
        if not (0 <= c1 < total) or not (0 <= c2 < total):
            raise UnknownComponent(f"component ids {c1}, {c2} out of range")
        if c1 == c2:
            raise UnknownComponent("linking number needs two distinct components")
        real = len(self._components)
        if c1 >= real or c2 >= real:
            return 0
        want = {c1, c2}
        acc = 0
        for ci, t in enumerate(self.crossings):
            cu = self._arc_comp[t[0]]
            co = self._arc_comp[t[self.over_ins[ci]]]
            if {cu, co} == want:
                acc += self.sign(ci)
        if acc % 2:
            raise NonrealizableOrientation("odd signed inter-component count")
        return acc // 2

    # --- symmetries ---

    def mirror(self):
        """Swap over/under at every crossing."""
        new_crossings = []
        new_over_ins = []
        for t, o in zip(self.crossings, self.over_ins):
            new_crossings.append(t[o:] + t[:o])
            new_over_ins.append(4 - o)
        return LinkDiagram(new_crossings, new_over_ins, self.unknotted_free)

    def reverse_component(self, comp):
        """Reverse the orientation of one component."""
        total = self.component_count()
        if not (0 <= comp < total):
            raise UnknownComponent(f"component id {comp} out of range")
        if comp >= len(self._components):
            return self  # crossing-free circle: reversal is invisible
        arcs = set(self._components[comp])
        new_crossings = []
        new_over_ins = []
        for t, o in zip(self.crossings, self.over_ins):
            under_on = t[0] in arcs
            over_on = t[o] in arcs
            if over_on:
                o = o ^ 2
            if under_on:
                t = t[2:] + t[:2]
                o = o ^ 2
            new_crossings.append(t)
            new_over_ins.append(o)
        return LinkDiagram(new_crossings, new_over_ins, self.unknotted_free)

    # --- diagram-level invariant predicates ---

    def passages(self, comp):
        """(crossing, role) sequence along a component; role is 'U' or 'O'."""
        out = []
        for arc in self._components[comp]:
            c, s = self._heads[arc]
            out.append((c, "U" if s == 0 else "O"))
        return out

    def is_alternating(self):
        for comp in range(len(self._components)):
            roles = [r for (_, r) in self.passages(comp)]
            if len(roles) < 2:
                continue
            for i, r in enumerate(roles):
                if r == roles[(i + 1) % len(roles)]:
                    return False
        return True

    def is_reduced(self):
        """True when no crossing is nugatory (a cut point of the diagram)."""
        n = len(self.crossings)
        for ci in range(n):
            piece = _pieces_without(self.crossings, self._occ, ci)
            t = self.crossings[ci]
            p = [piece[t[s]] for s in range(4)]
            if p[0] == p[1] and p[2] == p[3] and p[0] != p[2]:
                return False
            if p[1] == p[2] and p[3] == p[0] and p[1] != p[3]:
                return False
        return True

    # --- planar structure ---

    def faces(self):
        """Face boundaries as dart cycles; a dart (c, s) leaves c along slot s."""
        darts = [(c, s) for c in range(len(self.crossings)) for s in range(4)]
        seen = set()
        out = []
        for start in darts:
            if start in seen:
                continue
            cycle = []
            d = start
            while d not in seen:
                seen.add(d)
                cycle.append(d)
                c, s = d
                c2, s2 = self.other_end(self.crossings[c][s], (c, s))
                d = (c2, (s2 + 1) % 4)
            out.append(tuple(cycle))
        return out

    def connected_pieces(self):
        """Partition of crossings into arc-connected pieces."""
        n = len(self.crossings)
        if n == 0:
            return []
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for places in self._occ.values():
            (c1, _), (c2, _) = places
            r1, r2 = find(c1), find(c2)
            if r1 != r2:
                parent[r1] = r2
        groups = {}
        for c in range(n):
            groups.setdefault(find(c), []).append(c)
        return sorted(groups.values())

    def planar_consistent(self):
        """Euler-count sanity check: F = n + pieces + 1 on the sphere."""
        n = len(self.crossings)
        if n == 0:
            return True
        return len(self.faces()) == n + len(self.connected_pieces()) + 1

    # --- serialization ---

    def pd_text(self):
        """Canonical PD text with arcs relabeled 1..m in slot-scan order."""
        relabel = {}
        for t in self.crossings:
            for a in t:
                if a not in relabel:
                    relabel[a] = len(relabel) + 1
        parts = [
            "X({},{},{},{})".format(*(relabel[a] for a in t))
            for t in self.crossings
        ]
        if self.unknotted_free:
            parts.append(f"U {self.unknotted_free}")
        return " ".join(parts)


def parse_pd(text):
    """Parse PD-code text into a LinkDiagram.

    The format is whitespace-separated ``X(a,b,c,d)`` tuples plus an
    optional ``U n`` token for crossing-free unknot components; ``#``
    starts a comment that runs to the end of the line.
    """
    body = []
    for line in text.splitlines():
        if "#" in line:
            line = line[: line.index("#")]
        body.append(line)
    cleaned = " ".join(body)

    crossings = []
    free = 0
    pos = 0
    for m in re.finditer(r"X\([^)]*\)|U\s+(\d+)|\S", cleaned):
        tok = m.group(0)
        if tok.startswith("X"):
            xm = _TOKEN_RE.fullmatch(tok)
            if not xm:
                raise MalformedCode(f"bad crossing token {tok!r}")
            crossings.append(tuple(int(g) for g in xm.groups()))
        elif tok.startswith("U"):
            free += int(m.group(1))
        else:
            raise MalformedCode(f"unexpected token {tok!r} at position {m.start()}")
        pos = m.end()
    del pos
    return LinkDiagram(crossings, None, free)


def _infer_over_ins(crossings, occ):
    """Assign over-strand directions consistent with the under-strands.

    Under slots fix arc directions; over-over arcs propagate a parity
    constraint between crossings.  Crossings left unconstrained (a
    component that never passes under) default to over-in at slot 1.
    """
    n = len(crossings)
    relations = [[] for _ in range(n)]
    seeds = []
    for a, places in occ.items():
        (c1, s1), (c2, s2) = places
        f1, f2 = s1 % 2 == 0, s2 % 2 == 0
        if f1 and f2:
            if (s1 == 0) == (s2 == 0):
                raise NonrealizableOrientation(
                    f"arc {a} enters or leaves under-strands twice"
                )
        elif f1 != f2:
            (cf, sf), (cv, sv) = ((c1, s1), (c2, s2)) if f1 else ((c2, s2), (c1, s1))
            want_head = sf != 0  # fixed tail at slot 2 => variable end is the head
            val = (sv == 1) if want_head else (sv == 3)
            seeds.append((cv, val))
        else:
            if c1 == c2:
                continue  # over-loop at one crossing is always consistent
            parity = 1 ^ (s1 == 1) ^ (s2 == 1)
            relations[c1].append((c2, parity))
            relations[c2].append((c1, parity))

    b = [None] * n

    def propagate(c0, val):
        queue = deque([(c0, val)])
        while queue:
            c, v = queue.popleft()
            if b[c] is not None:
                if b[c] != v:
                    raise NonrealizableOrientation(
                        f"conflicting orientation at crossing {c}"
                    )
                continue
            b[c] = v
            for c2, parity in relations[c]:
                queue.append((c2, v ^ parity))

    for c, val in seeds:
        propagate(c, int(val))
    for c in range(n):
        if b[c] is None:
            propagate(c, 1)
    return tuple(1 if bc else 3 for bc in b)


def _head_occurrences(crossings, over_ins, occ):
    """Map each arc to the occurrence where it enters a crossing."""
    heads = {}
    tails = {}
    for ci, t in enumerate(crossings):
        in_slots = (0, over_ins[ci])
        for s in range(4):
            a = t[s]
            if s in in_slots:
                if a in heads:
                    raise NonrealizableOrientation(f"arc {a} has two heads")
                heads[a] = (ci, s)
            else:
                if a in tails:
                    raise NonrealizableOrientation(f"arc {a} has two tails")
                tails[a] = (ci, s)
    for a in occ:
        if a not in heads or a not in tails:
            raise NonrealizableOrientation(f"arc {a} lacks a head or tail")
    return heads


def _trace_components(crossings, occ, heads):
    comps = []
    arc_comp = {}
    unvisited = set(occ)
    budget = 2 * len(occ) + 4
    while unvisited:
        start = min(unvisited)
        seq = []
        cur = start
        for _ in range(budget):
            seq.append(cur)
            unvisited.discard(cur)
            c, s = heads[cur]
            cur = crossings[c][s ^ 2]
            if cur == start:
                break
        else:
            raise NonrealizableOrientation("component traversal did not close")
        idx = len(comps)
        comps.append(tuple(seq))
        for a in seq:
            arc_comp[a] = idx
    return tuple(comps), arc_comp


def _pieces_without(crossings, occ, skip):
    """Connected piece id for each arc when crossing ``skip`` is deleted."""
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a in occ:
        parent[a] = a
    for ci, t in enumerate(crossings):
        if ci == skip:
            continue
        first = t[0]
        for a in t[1:]:
            r1, r2 = find(first), find(a)
            if r1 != r2:
                parent[r1] = r2
    return {a: find(a) for a in parent}


def require_knot(d):
    if d.component_count() != 1 or d.unknotted_free not in (0, 1):
        raise NotAKnot(f"expected 1 component, found {d.component_count()}")
    if d.unknotted_free == 1 and d.crossings:
        raise NotAKnot("mixed free unknot and crossings is multi-component")

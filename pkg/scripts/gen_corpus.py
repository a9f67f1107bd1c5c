#!/usr/bin/env python3
"""Generate the packaged knot corpus (alternating knots 3_1 .. 7_7).

Each knot is built as the 4-plat closure of a positive continued
fraction: twist regions alternate between the right side and the bottom
of the tangle, the closed shadow gets its unique-up-to-mirror
alternating over/under assignment, and the result is validated
(1 component, alternating, reduced, correct crossing count) before the
PD text is frozen under src/knotbounds/data/corpus/.

The chirality shipped for 3_1 is the writhe +3 one; other entries
record their constructed writhe in the manifest.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from knotbounds.diagrams import LinkDiagram  # noqa: E402
from knotbounds.laurent import LaurentPoly2  # noqa: E402
from knotbounds import skein  # noqa: E402

# positive continued fractions of the 2-bridge knots through 7 crossings
FRACTIONS = {
    "3_1": [3],
    "4_1": [2, 2],
    "5_1": [5],
    "5_2": [3, 2],
    "6_1": [4, 2],
    "6_2": [3, 1, 2],
    "6_3": [2, 1, 1, 2],
    "7_1": [7],
    "7_2": [5, 2],
    "7_3": [4, 3],
    "7_4": [3, 1, 3],
    "7_5": [3, 2, 2],
    "7_6": [2, 1, 2, 2],
    "7_7": [2, 1, 1, 1, 2],
}


class Shadow:
    """Unoriented 4-plat shadow; crossing slots cyclic (NW, SW, SE, NE)."""

    def __init__(self, vertical_start=False):
        self.crossings = []
        self.next = 2
        if vertical_start:
            # infinity-tangle: strands NW--SW and NE--SE
            self.nw, self.sw, self.ne, self.se = 0, 0, 1, 1
        else:
            # 0-tangle: strands NW--NE and SW--SE
            self.nw, self.ne, self.sw, self.se = 0, 0, 1, 1

    def fresh(self):
        self.next += 1
        return self.next - 1

    def h_twist(self):
        ne2, se2 = self.fresh(), self.fresh()
        self.crossings.append([self.ne, self.se, se2, ne2])
        self.ne, self.se = ne2, se2

    def v_twist(self):
        sw2, se2 = self.fresh(), self.fresh()
        self.crossings.append([self.sw, sw2, se2, self.se])
        self.sw, self.se = sw2, se2

    def close_numerator(self):
        self._merge(self.nw, self.ne)
        self._merge(self.sw, self.se)

    def _merge(self, a, b):
        if a == b:
            raise ValueError("closure would create a crossing-free loop")
        for t in self.crossings:
            for i in range(4):
                if t[i] == b:
                    t[i] = a


def build_shadow(fraction):
    """Twist regions alternate so the outermost one is horizontal; when
    the innermost region is then vertical, grow it from the inf-tangle."""
    k = len(fraction)
    types = ["h" if (k - 1 - i) % 2 == 0 else "v" for i in range(k)]
    sh = Shadow(vertical_start=types[0] == "v")
    for a, kind in zip(fraction, types):
        for _ in range(a):
            if kind == "h":
                sh.h_twist()
            else:
                sh.v_twist()
    sh.close_numerator()
    return sh


def alternate(shadow):
    """Walk the closed shadow once, assigning alternating roles.

    The walk direction orients the knot, so the arrival slots fully
    determine the oriented PD data: returns per-crossing
    (under-arrival-slot, over-arrival-slot) in shadow coordinates.
    """
    occ = {}
    for ci, t in enumerate(shadow.crossings):
        for s, a in enumerate(t):
            occ.setdefault(a, []).append((ci, s))
    for a, places in occ.items():
        assert len(places) == 2, f"arc {a} has {len(places)} ends"

    arrivals = [[None, None] for _ in shadow.crossings]  # [under, over]
    visited = set()
    start_arc = min(occ)
    c, s = occ[start_arc][0]
    role_under = True
    steps = 0
    while (c, s) not in visited:
        visited.add((c, s))
        slot_kind = 0 if role_under else 1
        if arrivals[c][slot_kind] is not None:
            raise AssertionError("shadow admits no alternating assignment")
        arrivals[c][slot_kind] = s
        exit_slot = (s + 2) % 4
        arc = shadow.crossings[c][exit_slot]
        p1, p2 = occ[arc]
        c, s = p2 if p1 == (c, exit_slot) else p1
        role_under = not role_under
        steps += 1
        if steps > 4 * len(shadow.crossings) + 4:
            raise AssertionError("walk did not close")
    if len(visited) != 2 * len(shadow.crossings):
        raise AssertionError("shadow is not a knot (multiple components)")
    for under_s, over_s in arrivals:
        if under_s is None or over_s is None or (under_s - over_s) % 2 != 1:
            raise AssertionError("inconsistent alternation walk")
    return arrivals


def build_knot(fraction):
    sh = build_shadow(fraction)
    arrivals = alternate(sh)
    crossings = []
    over_ins = []
    for t, (under_s, over_s) in zip(sh.crossings, arrivals):
        crossings.append(tuple(t[under_s:] + t[:under_s]))
        over_ins.append((over_s - under_s) % 4)
    return LinkDiagram(crossings, over_ins)


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    out_dir = os.path.join(here, "..", "src", "knotbounds", "data", "corpus")
    os.makedirs(out_dir, exist_ok=True)

    trefoil_ref = LaurentPoly2({(2, 0): 2, (4, 0): -1, (2, 2): 1})
    fig8_ref = LaurentPoly2({(-2, 0): 1, (0, 0): -1, (2, 0): 1, (0, 2): -1})

    manifest = []
    for name, fraction in FRACTIONS.items():
        d = build_knot(fraction)
        if name == "3_1" and d.writhe() < 0:
            d = d.mirror()
        n = sum(fraction)
        assert d.component_count() == 1, name
        assert d.crossing_count() == n, (name, d.crossing_count())
        assert d.is_alternating(), name
        assert d.is_reduced(), name
        assert d.planar_consistent(), name
        if name == "3_1":
            assert skein.homfly(d) == trefoil_ref, "3_1 is not the trefoil"
        if name == "4_1":
            assert skein.homfly(d) == fig8_ref, "4_1 is not the figure-eight"
        path = os.path.join(out_dir, f"{name}.pd")
        with open(path, "w") as fh:
            fh.write(f"# {name}: alternating, {n} crossings\n")
            fh.write(d.pd_text() + "\n")
        lattice = ""
        if name in ("3_1", "4_1"):
            lattice = f" lattice=lattice/{name}.lat"
        manifest.append(
            f"{name} corpus/{name}.pd {n}{lattice} writhe={d.writhe():+d}"
        )
        print(f"{name}: {d.pd_text()}  (writhe {d.writhe():+d})")

    with open(os.path.join(out_dir, "manifest.txt"), "w") as fh:
        fh.write("# id  pd-file  crossing-number  [lattice=FILE] [writhe=W]\n")
        fh.write("\n".join(manifest) + "\n")
    print("wrote", len(manifest), "entries")


if __name__ == "__main__":
    main()

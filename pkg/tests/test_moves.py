import itertools
import random

from knotbounds import skein
from knotbounds.diagrams import parse_pd
from knotbounds.moves import (
    apply_r3,
    find_r2,
    find_r3,
    insert_r1,
    insert_r2,
    simplify,
)

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def random_variant(d, rng, n_moves):
    """Apply random R1/R2 insertions; stays in the ambient class."""
    for _ in range(n_moves):
        fresh = max(d.arcs()) + 10
        if rng.random() < 0.5:
            d = insert_r1(d, rng.choice(d.arcs()), rng.random() < 0.5, fresh)
        else:
            faces = [
                f for f in d.faces()
                if len({d.crossings[c][s] for c, s in f}) >= 2
            ]
            f = rng.choice(faces)
            pairs = [
                (a, b)
                for a, b in itertools.permutations(f, 2)
                if d.crossings[a[0]][a[1]] != d.crossings[b[0]][b[1]]
            ]
            da, db = rng.choice(pairs)
            d = insert_r2(d, da, db, fresh)
    return d


def test_kink_simplifies_to_unknot():
    from knotbounds.diagrams import LinkDiagram

    k = LinkDiagram([(1, 2, 2, 1)])
    s = simplify(k)
    assert s.crossing_count() == 0
    assert s.component_count() == 1


def test_simplify_monotone_and_fixed_point(trefoil):
    s = simplify(trefoil)
    assert s.crossing_count() <= trefoil.crossing_count()
    assert s.crossing_count() == 3  # reduced alternating: nothing to do


def test_insertions_stay_planar(trefoil):
    rng = random.Random(42)
    for _ in range(20):
        v = random_variant(trefoil, rng, rng.randint(1, 4))
        assert v.planar_consistent()
        assert simplify(v).crossing_count() == 3


def test_insert_r1_signs(trefoil):
    up = insert_r1(trefoil, 1, True, 100)
    down = insert_r1(trefoil, 1, False, 100)
    assert up.writhe() == trefoil.writhe() + 1
    assert down.writhe() == trefoil.writhe() - 1


def test_r2_insert_then_find(trefoil):
    faces = [
        f for f in trefoil.faces()
        if len({trefoil.crossings[c][s] for c, s in f}) >= 2
    ]
    f = faces[0]
    pairs = [
        (a, b)
        for a, b in itertools.permutations(f, 2)
        if trefoil.crossings[a[0]][a[1]] != trefoil.crossings[b[0]][b[1]]
    ]
    v = insert_r2(trefoil, pairs[0][0], pairs[0][1], 200)
    assert v.crossing_count() == 5
    assert find_r2(v), "inserted bigon must be found"


def test_r3_preserves_class(trefoil):
    pt = skein.homfly(trefoil)
    ft = skein.kauffman(trefoil)
    rng = random.Random(3)
    tested = 0
    for _ in range(10):
        v = random_variant(trefoil, rng, 2)
        for tri in find_r3(v):
            w = apply_r3(v, tri)
            assert w.planar_consistent()
            assert w.crossing_count() == v.crossing_count()
            assert skein.homfly(w) == pt
            assert skein.kauffman(w) == ft
            tested += 1
    assert tested >= 3


def test_no_r3_on_reduced_alternating(trefoil):
    assert find_r3(trefoil) == []


def test_simplify_uses_r3_when_stuck():
    # an R3-then-R2 reducible diagram: poke, slide, verify full reduction
    d = parse_pd(TREFOIL)
    rng = random.Random(11)
    for _ in range(12):
        v = random_variant(d, rng, 3)
        s = simplify(v, r3_depth=2)
        assert s.crossing_count() == 3

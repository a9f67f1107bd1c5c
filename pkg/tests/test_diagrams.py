import pytest

from knotbounds.diagrams import LinkDiagram, parse_pd
from knotbounds.errors import (
    InconsistentArcs,
    MalformedCode,
    NonrealizableOrientation,
    UnknownComponent,
)

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


def test_parse_unknot():
    d = parse_pd("U 1")
    assert d.crossing_count() == 0
    assert d.component_count() == 1
    assert d.is_alternating()
    assert d.writhe() == 0


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert d.crossing_count() == 3
    assert d.component_count() == 1
    assert len(d.components()[0]) == 6
    assert d.is_alternating()
    assert d.is_reduced()


def test_parse_comments_and_lines():
    d = parse_pd("# a trefoil\nX(1,4,2,5)  X(3,6,4,1) # mid\nX(5,2,6,3)\n")
    assert d.crossing_count() == 3


def test_parse_errors():
    with pytest.raises(MalformedCode):
        parse_pd("X(1,2,3) U 1")
    with pytest.raises(MalformedCode):
        parse_pd("Y(1,2,3,4)")
    with pytest.raises(MalformedCode):
        parse_pd("")
    with pytest.raises(InconsistentArcs):
        parse_pd("X(1,4,2,5) X(3,6,4,1)")


def test_nonrealizable_orientation():
    # arc 1 is the under-in of both crossings: two heads
    with pytest.raises(NonrealizableOrientation):
        LinkDiagram([(1, 2, 3, 4), (1, 3, 2, 4)])


def test_writhe_and_mirror():
    d = parse_pd(TREFOIL)
    assert d.writhe() == 3
    m = d.mirror()
    assert m.writhe() == -3
    assert m.mirror() == d


def test_signs_flip_under_mirror(corpus):
    for entry in corpus.values():
        d = entry.diagram
        assert d.mirror().writhe() == -d.writhe()
        assert d.mirror().mirror() == d


def test_unlink_linking_number():
    d = parse_pd("U 2")
    assert d.component_count() == 2
    assert d.linking_number(0, 1) == 0


def test_hopf_linking_number():
    # positive clasp chain of length 1: both crossings positive
    hopf = LinkDiagram([(0, 3, 2, 1), (1, 2, 3, 0)], [1, 1])
    assert hopf.component_count() == 2
    assert all(s == 1 for s in hopf.signs())
    assert hopf.linking_number(0, 1) == 1


def test_linking_number_errors():
    d = parse_pd("U 2")
    with pytest.raises(UnknownComponent):
        d.linking_number(0, 2)
    with pytest.raises(UnknownComponent):
        d.linking_number(1, 1)


def test_reverse_component_negates_linking(corpus):
    from knotbounds.satellite import reverse_parallel

    base = corpus["3_1"].diagram
    L = reverse_parallel(base, -1)
    lk = L.linking_number(0, 1)
    rev = L.reverse_component(1)
    assert rev.linking_number(0, 1) == -lk
    # inter-component crossing signs flip, self-crossings stay
    flips = [
        (a, b)
        for a, b in zip(L.signs(), rev.signs())
        if a != b
    ]
    assert flips, "some signs must flip"


def test_reverse_component_twice_is_identity(corpus):
    from knotbounds.satellite import reverse_parallel

    L = reverse_parallel(corpus["4_1"].diagram, 1)
    assert L.reverse_component(1).reverse_component(1) == L


def test_alternation_detects_violations():
    d = parse_pd(TREFOIL)
    assert d.is_alternating()
    from knotbounds.moves import insert_r1

    kinked = insert_r1(d, 1, True, 100)
    # a kink keeps strict alternation impossible only sometimes; the
    # reliable negative example is a doubled strand
    from knotbounds.satellite import reverse_parallel

    assert not reverse_parallel(d, -3).is_alternating()
    assert not kinked.is_reduced()


def test_kink_is_not_reduced():
    from knotbounds.moves import insert_r1

    d = insert_r1(parse_pd(TREFOIL), 1, False, 50)
    assert not d.is_reduced()
    assert d.crossing_count() == 4


def test_corpus_diagrams_valid(corpus):
    for entry in corpus.values():
        d = entry.diagram
        assert d.is_alternating(), entry.knot_id
        assert d.is_reduced(), entry.knot_id
        assert d.component_count() == 1
        assert d.crossing_count() == entry.crossing_number
        assert d.planar_consistent(), entry.knot_id


def test_faces_euler(trefoil):
    assert len(trefoil.faces()) == trefoil.crossing_count() + 2


def test_arc_double_occurrence_after_transforms(corpus):
    for entry in corpus.values():
        for d in (entry.diagram.mirror(), entry.diagram.reverse_component(0)):
            counts = {}
            for t in d.crossings:
                for a in t:
                    counts[a] = counts.get(a, 0) + 1
            assert all(v == 2 for v in counts.values())


def test_pd_text_round_trip(corpus):
    for entry in corpus.values():
        d = entry.diagram
        again = parse_pd(d.pd_text())
        assert again.crossing_count() == d.crossing_count()
        assert again.writhe() == d.writhe()
        assert again.is_alternating() == d.is_alternating()

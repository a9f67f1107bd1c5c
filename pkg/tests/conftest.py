import pytest

from knotbounds import skein
from knotbounds.corpus import corpus_load
from knotbounds.diagrams import parse_pd

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"


@pytest.fixture(scope="session")
def corpus():
    entries = corpus_load()
    assert entries, "packaged corpus must load"
    return {e.knot_id: e for e in entries}


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def engine():
    return skein.SkeinEngine()

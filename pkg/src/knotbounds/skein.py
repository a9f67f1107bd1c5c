"""HOMFLY-PT and Kauffman polynomial engines.

Conventions (fixed once, everything downstream depends on them):

* HOMFLY-PT P(v, z):  v^-1 P(L+) - v P(L-) = z P(L0),  P(unknot) = 1,
  so P(n-unlink) = ((v^-1 - v)/z)^(n-1) and the writhe +3 trefoil gets
  2v^2 - v^4 + v^2 z^2.
* Kauffman F(v, z) = v^(-w) * Lambda, where Lambda is the regular-isotopy
  polynomial with Lambda(L+) + Lambda(L-) = z (Lambda(L0) + Lambda(Loo)),
  Lambda(unknot) = 1 and a positive kink contributing a factor v.

The recursion kernel is compiled (``_kernel``) when the extension built;
otherwise the pure-Python twin ``_kernel_py`` is used.  Set
``KNOTBOUNDS_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from .laurent import LaurentPoly2

if os.environ.get("KNOTBOUNDS_PURE_PYTHON") == "1":
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

DEFAULT_NODE_BUDGET = kernel.DEFAULT_NODE_BUDGET


def kernel_name():
    return "compiled" if kernel.IS_COMPILED else "pure-python"


def _homfly_state(d):
    crossings = tuple(
        t + (0, 0, o) for t, o in zip(d.crossings, d.over_ins)
    )
    return crossings, d.unknotted_free


def _kauffman_state(d):
    crossings = tuple(t + (0,) for t in d.crossings)
    return crossings, d.unknotted_free


class SkeinEngine:
    """Skein evaluator with a shared memo cache across calls.

    The cache maps canonical diagram keys to polynomial dicts, so results
    never depend on cache state; disabling it only costs time.
    """

    def __init__(self, max_nodes=DEFAULT_NODE_BUDGET, use_cache=True):
        self.max_nodes = max_nodes
        self.use_cache = use_cache
        self._homfly_cache = {}
        self._kauffman_cache = {}
        self._stats = [0, 0, 0]  # hits, misses, nodes

    def homfly(self, d):
        crossings, loops = _homfly_state(d)
        cache = self._homfly_cache if self.use_cache else {}
        terms = kernel.homfly_core(
            crossings, loops, cache, self._stats, self.max_nodes
        )
        return LaurentPoly2(terms)

    def kauffman(self, d):
        crossings, loops = _kauffman_state(d)
        cache = self._kauffman_cache if self.use_cache else {}
        terms = kernel.kauffman_core(
            crossings, loops, cache, self._stats, self.max_nodes
        )
        return LaurentPoly2(terms).shift(-d.writhe(), 0)

    def cache_stats(self):
        hits, misses, _ = self._stats
        return hits, misses, len(self._homfly_cache) + len(self._kauffman_cache)

    def reset(self):
        self._homfly_cache.clear()
        self._kauffman_cache.clear()
        self._stats[:] = [0, 0, 0]


_default_engine = SkeinEngine()


def default_engine():
    return _default_engine


def homfly(d, engine=None):
    """HOMFLY-PT polynomial of a LinkDiagram."""
    return (engine or _default_engine).homfly(d)


def kauffman(d, engine=None):
    """Kauffman polynomial F of a LinkDiagram."""
    return (engine or _default_engine).kauffman(d)


def cache_stats(engine=None):
    return (engine or _default_engine).cache_stats()

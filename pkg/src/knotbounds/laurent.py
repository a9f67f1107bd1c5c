"""Exact sparse Laurent polynomials in two variables v, z.

Coefficients are arbitrary-precision integers (ring "Z") or bits
(ring "GF2").  Terms are stored as a map (v-exponent, z-exponent) ->
coefficient with no zero entries, so equality is plain dict equality
and the degree-span computations used by the bound pipeline are exact.
"""

from __future__ import annotations

from .errors import InexactDivision, RingMismatch, ZeroPolynomial

RING_Z = "Z"
RING_GF2 = "GF2"


def _normalized(terms, ring):
    out = {}
    for key, c in terms.items():
        if ring == RING_GF2:
            c %= 2
        if c:
            out[key] = c
    return out


class LaurentPoly2:
    """Immutable sparse polynomial sum of c * v^i * z^j."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms=None, ring=RING_Z):
        if ring not in (RING_Z, RING_GF2):
            raise ValueError(f"unknown ring {ring!r}")
        object.__setattr__(self, "terms", _normalized(dict(terms or {}), ring))
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly2 is immutable")

    # --- constructors ---

    @classmethod
    def zero(cls, ring=RING_Z):
        return cls({}, ring)

    @classmethod
    def one(cls, ring=RING_Z):
        return cls({(0, 0): 1}, ring)

    @classmethod
    def monomial(cls, coeff, vexp, zexp, ring=RING_Z):
        return cls({(vexp, zexp): coeff}, ring)

    # --- basic predicates ---

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    # --- ring arithmetic ---

    def __add__(self, other):
        self._check_ring(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0) + c
        return LaurentPoly2(terms, self.ring)

    def __neg__(self):
        if self.ring == RING_GF2:
            return self
        return LaurentPoly2({k: -c for k, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_ring(other)
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return LaurentPoly2(terms, self.ring)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = LaurentPoly2.one(self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, dv, dz=0):
        """Multiply by the monomial v^dv * z^dz."""
        return LaurentPoly2(
            {(i + dv, j + dz): c for (i, j), c in self.terms.items()}, self.ring
        )

    # --- operations the congruence pipeline needs ---

    def reduce_mod2(self):
        """Project Z coefficients to GF(2)."""
        if self.ring != RING_Z:
            raise RingMismatch("reduce_mod2 expects ring Z")
        return LaurentPoly2(self.terms, RING_GF2)

    def breadth_v(self):
        """Span (max - min) of v-exponents over the support."""
        if not self.terms:
            raise ZeroPolynomial("breadth_v of the zero polynomial")
        exps = [i for (i, _) in self.terms]
        return max(exps) - min(exps)

    def v_range(self):
        """(min, max) v-exponent over the support."""
        if not self.terms:
            raise ZeroPolynomial("v_range of the zero polynomial")
        exps = [i for (i, _) in self.terms]
        return min(exps), max(exps)

    def substitute_sq(self):
        """Apply v -> v^-2, z -> z^2 (exponent map (i, j) -> (-2i, 2j))."""
        return LaurentPoly2(
            {(-2 * i, 2 * j): c for (i, j), c in self.terms.items()}, self.ring
        )

    def mirror_v(self):
        """Apply v -> v^-1 (exponent map (i, j) -> (-i, j))."""
        return LaurentPoly2(
            {(-i, j): c for (i, j), c in self.terms.items()}, self.ring
        )

    def mul_delta_prefactor(self):
        """Multiply by (v^-1 - v)/z.

        Link polynomials fed through here have min z-exponent >= -1 (true
        for any 2-component link value); anything lower signals a
        convention or computation error upstream, so it is rejected
        rather than silently produced.
        """
        if self.terms and min(j for (_, j) in self.terms) < -1:
            raise InexactDivision(
                "operand has z-degree below -1; (v^-1 - v)/z * p is not the "
                "expected Laurent form"
            )
        prod = self * LaurentPoly2({(-1, 0): 1, (1, 0): -1}, self.ring)
        return prod.shift(0, -1)

    def mul_annulus_factor(self):
        """Multiply by 1 + (v^-2 + v^2)/z^2."""
        factor = LaurentPoly2(
            {(0, 0): 1, (-2, -2): 1, (2, -2): 1}, self.ring
        )
        return self * factor

    # --- serialization ---

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_text(self):
        """Canonical text form, terms in (v-exp, z-exp) order."""
        if not self.terms:
            return "mod2: 0" if self.ring == RING_GF2 else "0"
        parts = []
        for (i, j), c in self.sorted_terms():
            factors = []
            if abs(c) != 1 or (i == 0 and j == 0):
                factors.append(str(abs(c)))
            if i:
                factors.append(f"v^{i}" if i != 1 else "v")
            if j:
                factors.append(f"z^{j}" if j != 1 else "z")
            term = "*".join(factors)
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        text = " ".join(parts)
        if self.ring == RING_GF2:
            return f"mod2: {text}"
        return text

    @classmethod
    def from_text(cls, text):
        """Parse the canonical text form back into a polynomial."""
        text = text.strip()
        ring = RING_Z
        if text.startswith("mod2:"):
            ring = RING_GF2
            text = text[len("mod2:"):].strip()
        if text == "0":
            return cls.zero(ring)
        terms = {}
        # normalize "a - b + c" into signed tokens
        tokens = text.replace("- ", "+ -").split("+")
        for tok in tokens:
            tok = tok.strip()
            if not tok:
                continue
            sign = 1
            if tok.startswith("-"):
                sign = -1
                tok = tok[1:].strip()
            coeff, vexp, zexp = 1, 0, 0
            for factor in tok.split("*"):
                factor = factor.strip()
                if factor == "v":
                    vexp = 1
                elif factor == "z":
                    zexp = 1
                elif factor.startswith("v^"):
                    vexp = int(factor[2:])
                elif factor.startswith("z^"):
                    zexp = int(factor[2:])
                else:
                    coeff = int(factor)
            key = (vexp, zexp)
            terms[key] = terms.get(key, 0) + sign * coeff
        return cls(terms, ring)

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r})"


# Closed forms used by the skein engines and their tests.

def homfly_unlink(n):
    """HOMFLY-PT value of the n-component unlink: ((v^-1 - v)/z)^(n-1)."""
    delta = LaurentPoly2({(-1, -1): 1, (1, -1): -1})
    return delta ** (n - 1)


def kauffman_unlink(n):
    """Kauffman value of the n-component unlink: ((v + v^-1)/z - 1)^(n-1)."""
    gamma = LaurentPoly2({(1, -1): 1, (-1, -1): 1, (0, 0): -1})
    return gamma ** (n - 1)

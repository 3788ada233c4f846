"""Exact-rational homogeneous polynomials in four variables.

Polynomials live either in point space (variables x0..x3) or in dual space
(variables u0..u3).  Coefficients are arbitrary-precision rationals so the
pullback factorizations and degree bookkeeping of the foot-point map can be
verified exactly; only chart residual checks use floating point.

The pedal pullback substitutes

    u0 <- -(x1^2+x2^2+x3^2),   ui <- x0*xi          (dual -> point),

the inverse pedal pullback the symmetric substitution point -> dual.  The
images pick up exceptional factors var0^r and (quadform)^k which
``strip_exceptional`` removes; for an irreducible dual surface of degree n
the stripped pedal image has degree 2n - r - 2k.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotDivisible, SpaceMismatch
from .projmaps import HPlane, HPoint

Exponents = tuple[int, int, int, int]


class Space(enum.Enum):
    POINT = ("x0", "x1", "x2", "x3")
    DUAL = ("u0", "u1", "u2", "u3")

    @property
    def variables(self) -> tuple[str, ...]:
        return self.value

    @property
    def other(self) -> "Space":
        return Space.DUAL if self is Space.POINT else Space.POINT


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)  # exact binary value of the float
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class HomPoly4:
    """Homogeneous polynomial in 4 variables with exact coefficients."""

    __slots__ = ("space", "terms", "degree")

    def __init__(self, space: Space, terms):
        clean: dict[Exponents, Fraction] = {}
        degree = None
        for exps, coeff in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps!r}")
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            d = sum(exps)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError("terms of different total degree")
            clean[exps] = coeff
        self.space = space
        self.terms = clean
        # degree of the zero polynomial is -1 by convention
        self.degree = -1 if degree is None else degree

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, space: Space) -> "HomPoly4":
        return cls(space, {})

    @classmethod
    def constant(cls, space: Space, c) -> "HomPoly4":
        return cls(space, {(0, 0, 0, 0): c})

    @classmethod
    def variable(cls, space: Space, index: int) -> "HomPoly4":
        exps = [0, 0, 0, 0]
        exps[index] = 1
        return cls(space, {tuple(exps): 1})

    @classmethod
    def quadform(cls, space: Space) -> "HomPoly4":
        """The exceptional quadric x1^2+x2^2+x3^2 (resp. u1^2+u2^2+u3^2)."""
        return cls(
            space,
            {(0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1},
        )

    # -- ring operations ----------------------------------------------

    def _check_space(self, other: "HomPoly4"):
        if self.space is not other.space:
            raise SpaceMismatch("operands live in different spaces")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HomPoly4") -> "HomPoly4":
        self._check_space(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return HomPoly4(self.space, terms)

    def __sub__(self, other: "HomPoly4") -> "HomPoly4":
        return self + (-other)

    def __neg__(self) -> "HomPoly4":
        return HomPoly4(self.space, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HomPoly4):
            self._check_space(other)
            terms: dict[Exponents, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
            return HomPoly4(self.space, terms)
        c = _as_fraction(other)
        return HomPoly4(self.space, {e: c * v for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HomPoly4":
        if n < 0:
            raise ValueError("negative power")
        result = HomPoly4.constant(self.space, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly4):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        raise TypeError("HomPoly4 is unhashable")

    def equals_up_to_scale(self, other: "HomPoly4") -> bool:
        """Exact equality up to one nonzero rational factor."""
        if self.space is not other.space:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        lead = self.leading_monomial()
        if lead not in other.terms:
            return False
        lam = other.terms[lead] / self.terms[lead]
        return other == self * lam

    def leading_monomial(self) -> Exponents:
        """Largest exponent tuple in graded-lexicographic order."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=lambda e: (sum(e), e))

    # -- evaluation ----------------------------------------------------

    def eval(self, point) -> float | Fraction:
        """Evaluate at a 4-tuple; exact when all components are rational.

        HPoint/HPlane arguments are checked against the space tag.
        """
        if isinstance(point, HPoint):
            if self.space is not Space.POINT:
                raise SpaceMismatch("dual polynomial evaluated at a point")
            coords = point.coords
        elif isinstance(point, HPlane):
            if self.space is not Space.DUAL:
                raise SpaceMismatch("point polynomial evaluated at a plane")
            coords = point.coords
        else:
            coords = tuple(point)
            if len(coords) != 4:
                raise ValueError("evaluation needs a 4-tuple")
            if all(c == 0 for c in coords):
                raise ValueError("cannot evaluate at the zero tuple")
        total = 0
        for (e0, e1, e2, e3), c in self.terms.items():
            total += c * coords[0] ** e0 * coords[1] ** e1 * coords[2] ** e2 * coords[3] ** e3
        return total

    def eval_grid(self, tuples: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation at an (N, 4) array of tuples."""
        T = np.asarray(tuples, dtype=float)
        out = np.zeros(T.shape[0])
        for exps, c in self.terms.items():
            term = np.full(T.shape[0], float(c))
            for i, e in enumerate(exps):
                if e:
                    term = term * T[:, i] ** e
            out += term
        return out

    def coeff_norm(self) -> float:
        """1-norm of the coefficient vector (used for residual scaling)."""
        return float(sum(abs(c) for c in self.terms.values()))

    def coefficient(self, exps: Exponents) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- exact division -------------------------------------------------

    def exact_divide(self, divisor: "HomPoly4") -> "HomPoly4":
        """Exact quotient self / divisor; NotDivisible on any remainder."""
        self._check_space(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HomPoly4.zero(self.space)
        dlead = divisor.leading_monomial()
        dcoeff = divisor.terms[dlead]
        rem = dict(self.terms)
        quot: dict[Exponents, Fraction] = {}
        while rem:
            lead = max(rem, key=lambda e: (sum(e), e))
            q = tuple(a - b for a, b in zip(lead, dlead))
            if any(e < 0 for e in q):
                raise NotDivisible("exact division failed")
            qc = rem[lead] / dcoeff
            quot[q] = quot.get(q, Fraction(0)) + qc
            for de, dc in divisor.terms.items():
                e = (q[0] + de[0], q[1] + de[1], q[2] + de[2], q[3] + de[3])
                v = rem.get(e, Fraction(0)) - qc * dc
                if v == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return HomPoly4(self.space, quot)


# -- pullbacks ----------------------------------------------------------


def _pullback(poly: HomPoly4, src: Space) -> HomPoly4:
    """Substitute v0 <- -(quadform), vi <- w0*wi into a polynomial."""
    if poly.space is not src:
        raise SpaceMismatch(f"expected a {src.name} polynomial")
    dst = src.other
    q = HomPoly4.quadform(dst)
    qpow: dict[int, HomPoly4] = {0: HomPoly4.constant(dst, 1)}

    def qp(n: int) -> HomPoly4:
        if n not in qpow:
            qpow[n] = qp(n - 1) * q
        return qpow[n]

    result = HomPoly4.zero(dst)
    for (e0, e1, e2, e3), c in poly.terms.items():
        sign = -1 if e0 % 2 else 1
        mono = HomPoly4(dst, {(e1 + e2 + e3, e1, e2, e3): c * sign})
        result = result + mono * qp(e0)
    return result


def pedal_pullback(fstar: HomPoly4) -> HomPoly4:
    """Implicit equation of the pedal image of a dual surface (degree 2n)."""
    return _pullback(fstar, Space.DUAL)


def inverse_pedal_pullback(g: HomPoly4) -> HomPoly4:
    """Implicit dual equation of the inverse pedal of a point surface."""
    return _pullback(g, Space.POINT)


@dataclass(frozen=True)
class StripResult:
    """Pullback with the exceptional factors var0^r and quadform^k removed."""

    reduced: HomPoly4
    r: int
    k: int


def strip_exceptional(poly: HomPoly4) -> StripResult:
    """Remove maximal exact powers of the 0-variable and of the quadric.

    ``var0**r * quadform**k * reduced`` reconstructs the input exactly.
    The reduced polynomial is returned unfactored even if it happens to be
    reducible; no factorization beyond the two known factors is attempted.
    """
    if poly.is_zero():
        raise ValueError("cannot strip the zero polynomial")
    r = min(e[0] for e in poly.terms)
    terms = {(e[0] - r, e[1], e[2], e[3]): c for e, c in poly.terms.items()}
    reduced = HomPoly4(poly.space, terms)
    q = HomPoly4.quadform(poly.space)
    k = 0
    while True:
        try:
            reduced = reduced.exact_divide(q)
        except NotDivisible:
            break
        k += 1
    return StripResult(reduced, r, k)


def degree_bookkeeping(fstar: HomPoly4) -> tuple[int, int, int, int]:
    """(n, r, k, deg) of a dual surface and its stripped pedal image.

    Works symmetrically for point polynomials (inverse pedal direction).
    The identity deg == 2n - r - 2k is asserted; a failure is a bug, not a
    geometric degeneracy.
    """
    n = fstar.degree
    stripped = strip_exceptional(_pullback(fstar, fstar.space))
    deg = stripped.reduced.degree
    assert deg == 2 * n - stripped.r - 2 * stripped.k, "degree rule violated"
    return n, stripped.r, stripped.k, deg


def offset_dual_poly(fstar: HomPoly4, d) -> HomPoly4:
    """Implicit equation of the two-sided offset family of a dual surface.

    A tangent plane of the distance-d offset comes from a tangent plane of
    the base surface by u0 -> u0 -/+ d*sqrt(u.u); the product over both
    signs is polynomial because odd powers of the square root cancel.  The
    result has degree 2n and, for reducible offsets, factors into the two
    one-sided branches.
    """
    if fstar.space is not Space.DUAL:
        raise SpaceMismatch("offset families are built from dual polynomials")
    d = _as_fraction(d)
    n = fstar.degree
    # shift coefficients: fstar(u0 + t, u) = sum_k shift[k] * t^k
    shift: list[dict[Exponents, Fraction]] = [dict() for _ in range(n + 1)]
    for (e0, e1, e2, e3), c in fstar.terms.items():
        for k in range(e0 + 1):
            exps = (e0 - k, e1, e2, e3)
            shift[k][exps] = shift[k].get(exps, Fraction(0)) + c * math.comb(e0, k)
    coeffs = [HomPoly4(Space.DUAL, t) for t in shift]
    q = HomPoly4.quadform(Space.DUAL)
    result = HomPoly4.zero(Space.DUAL)
    for i in range(n + 1):
        if coeffs[i].is_zero():
            continue
        for j in range(n + 1):
            if (i + j) % 2 or coeffs[j].is_zero():
                continue
            sign = -1 if j % 2 else 1
            term = coeffs[i] * coeffs[j] * (d ** (i + j) * sign)
            result = result + term * q ** ((i + j) // 2)
    return result


# -- canonical text form --------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xu][0-3])|([()+\-*/^])|$)")


def format_poly(poly: HomPoly4) -> str:
    """Canonical text form: graded-lex descending, explicit exponents."""
    if poly.is_zero():
        return "0"
    names = poly.space.variables
    parts = []
    for exps in sorted(poly.terms, key=lambda e: (sum(e), e), reverse=True):
        c = poly.terms[exps]
        mono = "*".join(f"{names[i]}^{e}" for i, e in enumerate(exps) if e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class _PolyParser:
    """Recursive-descent parser for the polynomial text grammar.

    Accepts +, -, *, ^ with parentheses, integer and p/q constants and the
    variables x0..x3 or u0..u3 (not mixed).  Division is only allowed by
    constants.  The result must come out homogeneous.
    """

    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad character in polynomial at {text[pos:]!r}")
            if m.group(0).strip():
                self.tokens.append(m.group(0).strip())
            pos = m.end()
        self.pos = 0
        self.space: Space | None = None

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self, space: Space | None):
        self.space = space
        poly = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()!r}")
        return poly, self.space

    def _blank(self):
        # polynomial with no variables seen yet: keep as Fraction
        return Fraction(0)

    def expr(self):
        negate = False
        if self.peek() in ("+", "-"):
            negate = self.take() == "-"
        value = self.term()
        if negate:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = self._add(value, rhs if op == "+" else -rhs)
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                value = self._mul(value, rhs)
            else:
                if isinstance(rhs, HomPoly4):
                    raise ValueError("division by a non-constant polynomial")
                value = self._mul(value, Fraction(1) / rhs)
        return value

    def factor(self):
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(tok)
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ValueError("unexpected end of polynomial")
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ValueError("missing closing parenthesis")
            return value
        if tok.isdigit():
            return Fraction(int(tok))
        if len(tok) == 2 and tok[0] in "xu" and tok[1] in "0123":
            sp = Space.POINT if tok[0] == "x" else Space.DUAL
            if self.space is None:
                self.space = sp
            elif self.space is not sp:
                raise ValueError("mixed point and dual variables")
            return HomPoly4.variable(sp, int(tok[1]))
        raise ValueError(f"unexpected token {tok!r}")

    def _lift(self, v):
        if isinstance(v, HomPoly4):
            return v
        if self.space is None:
            raise ValueError("constant-only polynomial needs an explicit space")
        return HomPoly4.constant(self.space, v)

    def _add(self, a, b):
        if isinstance(a, HomPoly4) or isinstance(b, HomPoly4):
            return self._lift(a) + self._lift(b)
        return a + b

    def _mul(self, a, b):
        if isinstance(a, HomPoly4) and isinstance(b, HomPoly4):
            return a * b
        if isinstance(a, HomPoly4):
            return a * b
        if isinstance(b, HomPoly4):
            return b * a
        return a * b


def parse_poly(text: str, space: Space | None = None) -> HomPoly4:
    """Parse polynomial text; the variables used determine the space.

    Raises ValueError for malformed input or inhomogeneous results.
    """
    value, seen = _PolyParser(text).parse(space)
    if not isinstance(value, HomPoly4):
        sp = seen or space
        if sp is None:
            raise ValueError("constant polynomial needs an explicit space")
        value = HomPoly4.constant(sp, value)
    return value  # HomPoly4 constructor enforced homogeneity term by term

"""Homogeneous forms and their polar multilinear forms.

Covers contractions, polar kernels, k-th polars, the last polarity with
respect to the simplex hypersurface (product of the faces), conic polarity,
and the Cremona transformation.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    ArityMismatch,
    DegenerateSpan,
    InvalidVector,
    KernelObstruction,
    NotInvertibleHere,
    UndefinedAtVertex,
)
from .projective_core import ProjHyperplane, ProjPoint, Simplex


class PolarKernelLevel(enum.Enum):
    """Levels of vanishing of the polar form.

    FIRST and SECOND contract once and twice; THIRD is the isotropic cone
    (full contraction), which for cubics is three contractions.
    """

    FIRST = 1
    SECOND = 2
    THIRD = 3


def _distinct_arrangements(counts: Sequence[int]):
    """All distinct sequences using variable i exactly counts[i] times."""
    total = sum(counts)
    if total == 0:
        yield ()
        return
    counts = list(counts)
    for i, c in enumerate(counts):
        if c:
            counts[i] -= 1
            for rest in _distinct_arrangements(counts):
                yield (i,) + rest
            counts[i] += 1


@dataclass(frozen=True)
class SymmetricForm:
    """A homogeneous polynomial of ``degree`` in ``nvars`` variables.

    ``terms`` holds (exponent tuple, coefficient) pairs with nonzero
    coefficients, sorted by exponent.
    """

    degree: int
    nvars: int
    terms: tuple = ()

    def __post_init__(self):
        acc: dict = {}
        for alpha, c in (self.terms.items() if isinstance(self.terms, Mapping) else self.terms):
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.nvars or sum(alpha) != self.degree or min(alpha) < 0:
                raise ValueError(f"bad exponent {alpha} for degree {self.degree} in {self.nvars} variables")
            acc[alpha] = acc.get(alpha, 0) + linalg.to_scalar(c)
        terms = tuple(sorted((a, c) for a, c in acc.items() if c != 0))
        object.__setattr__(self, "terms", terms)

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    @classmethod
    def monomial(cls, alpha, coeff=1) -> "SymmetricForm":
        return cls(sum(alpha), len(alpha), ((tuple(alpha), coeff),))

    @classmethod
    def linear(cls, coeffs) -> "SymmetricForm":
        n = len(coeffs)
        return cls(1, n, tuple((tuple(int(i == j) for j in range(n)), c) for i, c in enumerate(coeffs)))

    @classmethod
    def from_gram(cls, gram) -> "SymmetricForm":
        """Quadratic form u ↦ uᵀ G u for a symmetric matrix G."""
        n = len(gram)
        terms = []
        for i in range(n):
            for j in range(n):
                alpha = [0] * n
                alpha[i] += 1
                alpha[j] += 1
                terms.append((tuple(alpha), linalg.to_scalar(gram[i][j])))
        return cls(2, n, tuple(terms))

    def __mul__(self, other: "SymmetricForm") -> "SymmetricForm":
        if not isinstance(other, SymmetricForm):
            other = linalg.to_scalar(other)
            return SymmetricForm(self.degree, self.nvars, tuple((a, c * other) for a, c in self.terms))
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        acc: dict = {}
        for a, c in self.terms:
            for b, d in other.terms:
                e = tuple(x + y for x, y in zip(a, b))
                acc[e] = acc.get(e, 0) + c * d
        return SymmetricForm(self.degree + other.degree, self.nvars, tuple(acc.items()))

    __rmul__ = __mul__

    def __add__(self, other: "SymmetricForm") -> "SymmetricForm":
        if (other.degree, other.nvars) != (self.degree, self.nvars):
            raise ValueError("cannot add forms of different shapes")
        return SymmetricForm(self.degree, self.nvars, self.terms + other.terms)

    def __call__(self, u) -> object:
        u = linalg.to_vector(u)
        if len(u) != self.nvars:
            raise ArityMismatch(f"expected a vector of length {self.nvars}")
        total = Fraction(0)
        for alpha, c in self.terms:
            term = c
            for x, a in zip(u, alpha):
                if a:
                    term *= x ** a
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, u) -> "SymmetricForm":
        """Directional derivative Σ u_i ∂_i (degree drops by one)."""
        if self.degree == 0:
            return SymmetricForm(0, self.nvars, ())
        acc: dict = {}
        for alpha, c in self.terms:
            for i, ai in enumerate(alpha):
                if ai and u[i] != 0:
                    beta = alpha[:i] + (ai - 1,) + alpha[i + 1:]
                    acc[beta] = acc.get(beta, 0) + c * ai * u[i]
        return SymmetricForm(self.degree - 1, self.nvars, tuple(acc.items()))

    def linear_coeffs(self) -> tuple:
        if self.degree != 1:
            raise ValueError("not a linear form")
        out = [Fraction(0)] * self.nvars
        for alpha, c in self.terms:
            out[alpha.index(1)] = c
        return tuple(out)

    def gram(self) -> list:
        """Matrix of the polar bilinear form of a quadratic form."""
        if self.degree != 2:
            raise ValueError("not a quadratic form")
        n = self.nvars
        g = [[Fraction(0)] * n for _ in range(n)]
        for alpha, c in self.terms:
            idx = [i for i, a in enumerate(alpha) for _ in range(a)]
            i, j = idx
            if i == j:
                g[i][i] += c
            else:
                g[i][j] += c / 2
                g[j][i] += c / 2
        return g

    def proportional(self, other: "SymmetricForm") -> bool:
        """Equality up to a nonzero scalar."""
        if (self.degree, self.nvars) != (other.degree, other.nvars):
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if [a for a, _ in self.terms] != [a for a, _ in other.terms]:
            return False
        ratio = other.terms[0][1] / self.terms[0][1]
        return all(d == c * ratio for (_, c), (_, d) in zip(self.terms, other.terms))

    def to_records(self) -> list:
        """Serializable (multi-index, numerator, denominator) records."""
        out = []
        for alpha, c in self.terms:
            c = Fraction(c)
            out.append((alpha, c.numerator, c.denominator))
        return out

    @classmethod
    def from_records(cls, records) -> "SymmetricForm":
        records = list(records)
        if not records:
            raise ValueError("empty record list; degree unknown")
        alpha0 = records[0][0]
        return cls(sum(alpha0), len(alpha0), tuple((a, Fraction(n, d)) for a, n, d in records))


def _vector(u, nvars):
    u = linalg.to_vector(u.coords if isinstance(u, ProjPoint) else u)
    if len(u) != nvars:
        raise ArityMismatch(f"expected vectors of length {nvars}")
    return u


def polarize_eval(form: SymmetricForm, vectors: Sequence) -> object:
    """Evaluate the polar multilinear form ψ(v_1, ..., v_d).

    Each monomial x^α contributes (α!/d!) times the sum over distinct
    assignments of slots to variables.
    """
    if len(vectors) != form.degree:
        raise ArityMismatch(f"polar form of degree {form.degree} takes {form.degree} vectors, got {len(vectors)}")
    vecs = [_vector(v, form.nvars) for v in vectors]
    d = form.degree
    total = Fraction(0)
    for alpha, c in form.terms:
        weight = Fraction(math.prod(math.factorial(a) for a in alpha), math.factorial(d))
        s = 0
        for seq in _distinct_arrangements(alpha):
            term = 1
            for v, var in zip(vecs, seq):
                term *= v[var]
            s += term
        total += c * weight * s
    return total


def contract(form: SymmetricForm, u, k: int) -> SymmetricForm:
    """The form x ↦ ψ(u, ..., u, x, ..., x) with k slots filled by u.

    Equal to ((d-k)!/d!) times the k-th directional derivative along u.
    """
    if not 1 <= k <= form.degree:
        raise ValueError(f"contraction count {k} outside 1..{form.degree}")
    u = _vector(u, form.nvars)
    out = form
    for _ in range(k):
        out = out.derivative(u)
    scale = Fraction(math.factorial(form.degree - k), math.factorial(form.degree))
    return out * scale


def kernel_member(form: SymmetricForm, u, level: PolarKernelLevel) -> bool:
    """Does u annihilate ψ after ``level`` contractions (THIRD: all of them)?"""
    u = _vector(u, form.nvars)
    if all(x == 0 for x in u):
        raise InvalidVector("zero vector")
    k = form.degree if level is PolarKernelLevel.THIRD else level.value
    return contract(form, u, min(k, form.degree)).is_zero()


def kth_polar(p: ProjPoint, form: SymmetricForm, k: int):
    """The k-th polar of p: a form of degree d-k, or a ProjHyperplane when d-k = 1."""
    if not 1 <= k < form.degree:
        raise ValueError(f"k must lie in 1..{form.degree - 1}")
    polar = contract(form, p, k)
    if polar.is_zero():
        raise KernelObstruction(f"{p} lies in the order-{k} kernel of the polar form")
    if polar.degree == 1:
        return ProjHyperplane(polar.linear_coeffs())
    return polar


@lru_cache(maxsize=64)
def simplex_form(simplex: Simplex) -> SymmetricForm:
    """Product of the linear forms of the simplex's faces."""
    out = SymmetricForm(0, simplex.n + 1, (((0,) * (simplex.n + 1), 1),))
    for face in simplex.faces:
        out = out * SymmetricForm.linear(face.coords)
    return out


def cubic_polar_point(p: ProjPoint, simplex: Simplex) -> ProjHyperplane:
    """p⊥, the last polar of p w.r.t. the union of the simplex's faces."""
    return kth_polar(p, simplex_form(simplex), simplex.n)


def last_polar_inverse(h: ProjHyperplane, simplex: Simplex) -> ProjPoint:
    """H⊥, the unique point whose last polar w.r.t. the simplex form is H.

    In simplex coordinates the last polar of y is (Π_{j≠i} y_j)_i, i.e. the
    reciprocals of y. Only hyperplanes through no vertex have a preimage:
    a face is the image of every point on it, and a non-face hyperplane
    through a vertex is the image of nothing.
    """
    c = simplex.hyperplane_coordinates(h)
    zeros = [i for i, x in enumerate(c) if x == 0]
    if zeros:
        if len(zeros) == len(c) - 1:
            raise NotInvertibleHere(f"{h} is a face: every point of it has this last polar")
        raise NotInvertibleHere(f"{h} passes through a vertex without being a face; no point has it as last polar")
    return simplex.from_coordinates([1 / x for x in c])


def conic_polar_point(conic: SymmetricForm, p: ProjPoint) -> ProjHyperplane:
    """Polar line of p w.r.t. a conic: v ↦ φ(u, v)."""
    if conic.degree != 2:
        raise ValueError("not a conic")
    return kth_polar(p, conic, 1)


def conic_pole(conic: SymmetricForm, h: ProjHyperplane) -> ProjPoint:
    """The point whose polar w.r.t. a nondegenerate conic is h."""
    try:
        u = linalg.solve(conic.gram(), list(h.coords))
    except ZeroDivisionError as exc:
        raise DegenerateSpan("degenerate conic") from exc
    return ProjPoint(u)


def cremona(p: ProjPoint) -> ProjPoint:
    """Standard quadratic transformation [x_1:...:x_{n+1}] ↦ [Π_{j≠i} x_j]."""
    x = p.coords
    image = [math.prod(x[j] for j in range(len(x)) if j != i) for i in range(len(x))]
    if all(v == 0 for v in image):
        raise UndefinedAtVertex(f"Cremona map undefined at {p}")
    return ProjPoint(image)


def cremona_via_polarities(p: ProjPoint, simplex: Simplex, conic: SymmetricForm) -> ProjPoint:
    """Pole w.r.t. ``conic`` of the last polar of p w.r.t. the simplex."""
    return conic_pole(conic, kth_polar(p, simplex_form(simplex), simplex.n))


def first_polar(p: ProjPoint, simplex: Simplex) -> SymmetricForm:
    """First polar of p w.r.t. the simplex form (a conic when n = 2)."""
    return kth_polar(p, simplex_form(simplex), 1)


def tangent_double_root(conic: SymmetricForm, line: ProjHyperplane, at: ProjPoint) -> bool:
    """True when ``line`` meets the conic at ``at`` with multiplicity two.

    Parametrizing the line as s·at + t·w, the restriction a s² + 2b st + c t²
    has a double root at t = 0 exactly when a = b = 0.
    """
    if linalg.dot(line.coords, at.coords) != 0:
        return False
    # second point of the line: any kernel vector independent of ``at``
    for w in linalg.nullspace([list(line.coords)]):
        if linalg.rank([list(at.coords), w]) == 2:
            break
    else:
        raise DegenerateSpan("line has no second point")
    a = conic(at.coords)
    b = polarize_eval(conic, [at.coords, w])
    c = conic(w)
    return a == 0 and b == 0 and c != 0

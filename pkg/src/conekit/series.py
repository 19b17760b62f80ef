"""Gradings, h-vectors, Hilbert polynomials and multiplicities.

A cone is graded when a single integral linear form gives every
primitive extreme ray degree one.  With such a form the half-open
triangulation turns into a rational generating function
h(t) / (1 - t)^r whose numerator coefficients, polynomial and value at
1 are the invariants reported here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .errors import InvalidInputError, NoGradingError
from .hilbert import TriangulationData
from .linalg import LatticeBasis, Matrix, Vector, dot, matrix, solve_integer_system, vec_add


@dataclass(frozen=True)
class Grading:
    """Integral linear form of value 1 on every primitive extreme ray.

    ``weights`` is the reported form: an ambient integer vector when one
    exists, otherwise the weight vector on lattice coordinates (flagged
    by ``ambient``).  Degrees are always evaluated through the lattice,
    where the form is guaranteed integral.
    """

    weights: Vector
    lattice_weights: Vector
    lattice: LatticeBasis
    ambient: bool

    def degree_of(self, x) -> int:
        c = self.lattice.coords(tuple(x))
        if c is None:
            raise InvalidInputError("%s is not in the graded lattice" % (x,))
        return dot(self.lattice_weights, c)


def find_grading(extreme_rays, lattice: LatticeBasis) -> Optional[Grading]:
    """The canonical degree-one form for the given rays, if any.

    Solves weight . ray == 1 over the lattice; free parameters of an
    underdetermined system are pinned to zero, making the answer unique.
    Returns None when no integral form exists.
    """
    rays = matrix(extreme_rays)
    rays_l = []
    for x in rays:
        c = lattice.coords(x)
        if c is None:
            raise InvalidInputError("ray %s is not in the lattice" % (x,))
        rays_l.append(c)
    ones = (1,) * len(rays)
    lam = solve_integer_system(matrix(rays_l), ones, width=lattice.rank)
    if lam is None:
        return None
    amb = solve_integer_system(rays, ones, width=lattice.ambient_dim)
    if amb is not None:
        return Grading(weights=amb, lattice_weights=lam, lattice=lattice, ambient=True)
    return Grading(weights=lam, lattice_weights=lam, lattice=lattice, ambient=False)


def height_one_count(basis: Matrix, grading: Grading) -> int:
    """Number of Hilbert basis elements of degree one."""
    return sum(1 for row in basis if grading.degree_of(row) == 1)


@dataclass(frozen=True)
class HilbertSeriesData:
    """Invariants of the graded monoid, all derived from h(t)/(1-t)^r.

    ``hilbert_polynomial`` holds ascending exact rational coefficients;
    its value at k counts the degree-k lattice points for all large k.
    """

    h_vector: tuple
    rank: int
    hilbert_polynomial: tuple
    multiplicity: int


def hilbert_polynomial_from_h(h, r: int):
    """Ascending coefficients of sum_i h_i * C(k - i + r - 1, r - 1).

    The binomial is taken as a polynomial in k, so the result is valid
    for every k, not only large ones.
    """
    if r < 1:
        raise InvalidInputError("denominator exponent must be at least 1")
    coeffs = [Fraction(0)] * r
    fact = factorial(r - 1)
    for i, hi in enumerate(h):
        if hi == 0:
            continue
        # expand prod_{m=0}^{r-2} (k + r - 1 - i - m) by convolution
        p = [Fraction(1)]
        for m in range(r - 1):
            c = r - 1 - i - m
            p = [Fraction(0)] + p
            for j in range(len(p) - 1):
                p[j] += c * p[j + 1]
        for j, x in enumerate(p):
            coeffs[j] += hi * x / fact
    return tuple(coeffs)


def hilbert_series(tri: TriangulationData, grading: Grading) -> HilbertSeriesData:
    """h-vector, polynomial and multiplicity from the half-open
    triangulation.

    Every parallelepiped point contributes t^degree after being pushed
    off the excluded facets it happens to lie on (shift by the opposite
    ray); each simplex then contributes a clean (1 - t)^r denominator
    because all rays have degree one.
    """
    if tri.rank == 0:
        return HilbertSeriesData(h_vector=(1,), rank=0, hilbert_polynomial=(), multiplicity=1)
    tally = {}
    for blk in tri.blocks:
        for ray in blk.rays:
            if grading.degree_of(ray) != 1:
                raise NoGradingError("ray %s does not have degree 1" % (ray,))
        for point, zero in zip(blk.points, blk.facet_zero):
            shifted = point
            for j in blk.excluded_facets:
                if zero[j]:
                    shifted = vec_add(shifted, blk.rays[j])
            deg = grading.degree_of(shifted)
            tally[deg] = tally.get(deg, 0) + 1
    top = max(tally)
    h = [tally.get(i, 0) for i in range(top + 1)]
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return HilbertSeriesData(
        h_vector=tuple(h),
        rank=tri.rank,
        hilbert_polynomial=hilbert_polynomial_from_h(h, tri.rank),
        multiplicity=sum(h),
    )

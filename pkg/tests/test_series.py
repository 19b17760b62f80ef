import random
from fractions import Fraction
from math import comb

import pytest

from conekit.cones import cone_from_generators
from conekit.errors import InvalidInputError, NoGradingError
from conekit.hilbert import ConeProblem, hilbert_basis_primal, triangulation_blocks
from conekit.linalg import LatticeBasis, dot, primitive_part
from conekit.series import (
    Grading,
    find_grading,
    height_one_count,
    hilbert_polynomial_from_h,
    hilbert_series,
)

from .oracles import box_points

Z2 = LatticeBasis.standard(2)


def rays_of(cone):
    return tuple(primitive_part(cone.generators[i]) for i in cone.extreme_rays)


def problem(gens, d, lattice=None):
    return ConeProblem(cone_from_generators(gens, d), lattice or LatticeBasis.standard(d))


def degree_counts(cone, grading, top):
    """Brute-force tally of cone lattice points per degree up to ``top``."""
    sup, equ = cone.support_hyperplanes, cone.equations
    bound = top * max(max(abs(x) for x in g) for g in cone.generators)
    counts = [0] * (top + 1)
    for p in box_points(cone.ambient_dim, bound):
        if any(dot(a, p) < 0 for a in sup) or any(dot(e, p) for e in equ):
            continue
        k = grading.degree_of(p)
        if 0 <= k <= top:
            counts[k] += 1
    return counts


def series_coefficient(h, r, k):
    return sum(h[i] * comb(k - i + r - 1, r - 1) for i in range(min(k, len(h) - 1) + 1))


class TestFindGrading:
    def test_plane_cone(self):
        g = find_grading(((0, 1), (2, 3)), Z2)
        assert g.weights == (-1, 1)
        assert g.ambient
        assert g.degree_of((1, 2)) == 1

    def test_orthant(self):
        g = find_grading(((0, 1), (1, 0)), Z2)
        assert g.weights == (1, 1)

    def test_lower_dimensional(self):
        g = find_grading(((1, 0), (1, 2)), Z2)
        assert g.weights == (1, 0)

    def test_no_integral_grading(self):
        assert find_grading(((2, 1), (2, -1)), Z2) is None
        # exhaustive search confirms there is nothing to find
        for lam in box_points(2, 3):
            assert not (dot(lam, (2, 1)) == 1 and dot(lam, (2, -1)) == 1)

    def test_sublattice_falls_back_to_lattice_weights(self):
        lat = LatticeBasis.from_rows(((2, 0), (0, 2)), 2)
        g = find_grading(((2, 0), (0, 2)), lat)
        assert g is not None
        assert not g.ambient
        assert g.degree_of((2, 0)) == 1 and g.degree_of((2, 2)) == 2


class TestHeightOne:
    def test_plane_cone(self):
        basis = ((0, 1), (1, 2), (2, 3))
        g = find_grading(((0, 1), (2, 3)), Z2)
        assert height_one_count(basis, g) == 3

    def test_orthant(self):
        g = find_grading(((0, 1), (1, 0)), Z2)
        assert height_one_count(((0, 1), (1, 0)), g) == 2

    def test_mixed_degrees(self):
        g = Grading(weights=(1, 0), lattice_weights=(1, 0), lattice=Z2, ambient=True)
        assert height_one_count(((1, 0), (1, 1), (1, 2)), g) == 3


class TestHilbertSeries:
    def test_plane_cone(self):
        prob = problem(((0, 1), (2, 3)), 2)
        tri = triangulation_blocks(prob)
        g = find_grading(rays_of(prob.cone), Z2)
        data = hilbert_series(tri, g)
        assert data.h_vector == (1, 1)
        assert data.rank == 2
        assert data.hilbert_polynomial == (Fraction(1), Fraction(2))
        assert data.multiplicity == 2

    def test_unimodular(self):
        prob = problem(((1, 0), (0, 1)), 2)
        data = hilbert_series(triangulation_blocks(prob), find_grading(((0, 1), (1, 0)), Z2))
        assert data.h_vector == (1,)
        assert data.multiplicity == 1

    def test_segment_of_length_two(self):
        # cone over the lattice segment [0, 2]: 2k + 1 points in degree k
        prob = problem(((0, 1), (2, 1)), 2)
        g = find_grading(rays_of(prob.cone), Z2)
        data = hilbert_series(triangulation_blocks(prob), g)
        assert data.h_vector == (1, 1)
        assert data.hilbert_polynomial == (Fraction(1), Fraction(2))
        assert [series_coefficient(data.h_vector, data.rank, k) for k in range(4)] == [1, 3, 5, 7]

    def test_zero_cone(self):
        prob = problem(((0, 0),), 2)
        g = Grading(weights=(0, 0), lattice_weights=(), lattice=Z2, ambient=True)
        data = hilbert_series(triangulation_blocks(prob), g)
        assert data.h_vector == (1,)
        assert data.rank == 0
        assert data.hilbert_polynomial == ()
        assert data.multiplicity == 1

    def test_rejects_unfit_grading(self):
        prob = problem(((0, 1), (2, 3)), 2)
        bad = Grading(weights=(1, 1), lattice_weights=(1, 1), lattice=Z2, ambient=True)
        with pytest.raises(NoGradingError):
            hilbert_series(triangulation_blocks(prob), bad)

    def test_lower_dimensional_cone(self):
        prob = problem(((1, 1, 0), (-1, 1, 0)), 3)
        g = find_grading(rays_of(prob.cone), LatticeBasis.standard(3))
        data = hilbert_series(triangulation_blocks(prob), g)
        assert data.h_vector == (1, 1)
        assert data.rank == 2
        assert data.multiplicity == 2


class TestSeriesAgainstEnumeration:
    def test_counts_match_series_and_polynomial(self):
        rng = random.Random(701)
        trials = 0
        while trials < 8:
            gens = tuple(
                (rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(rng.randint(2, 4))
            )
            prob = problem(gens, 2)
            g = find_grading(rays_of(prob.cone), Z2)
            if g is None:
                continue
            data = hilbert_series(triangulation_blocks(prob), g)
            trials += 1
            counts = degree_counts(prob.cone, g, 8)
            for k in range(9):
                assert series_coefficient(data.h_vector, data.rank, k) == counts[k]
                if k > len(data.h_vector) - 1 - data.rank:
                    value = sum(
                        c * Fraction(k) ** i for i, c in enumerate(data.hilbert_polynomial)
                    )
                    assert value == counts[k]

    def test_one_bigger_example(self):
        gens = ((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
        prob = problem(gens, 3)
        g = find_grading(rays_of(prob.cone), LatticeBasis.standard(3))
        data = hilbert_series(triangulation_blocks(prob), g)
        counts = degree_counts(prob.cone, g, 6)
        # the cone over the unit cross-polytope has 2k^2 + 2k + 1 points in degree k
        assert counts == [1, 5, 13, 25, 41, 61, 85]
        for k in range(7):
            assert series_coefficient(data.h_vector, data.rank, k) == counts[k]
        assert data.multiplicity == 4

    def test_multiplicity_is_sum_of_determinants(self):
        rng = random.Random(709)
        for _ in range(6):
            d = rng.randint(2, 3)
            gens = tuple(
                tuple(rng.randint(-2, 2) for _ in range(d - 1)) + (1,) for _ in range(d + 1)
            )
            prob = problem(gens, d)
            tri = triangulation_blocks(prob)
            g = find_grading(rays_of(prob.cone), LatticeBasis.standard(d))
            if g is None:
                continue
            data = hilbert_series(tri, g)
            assert data.multiplicity == sum(blk.det for blk in tri.blocks)
            assert data.multiplicity == sum(data.h_vector)


class TestHilbertPolynomial:
    def test_dimension_two(self):
        assert hilbert_polynomial_from_h((1, 1), 2) == (Fraction(1), Fraction(2))

    def test_dimension_one(self):
        assert hilbert_polynomial_from_h((1,), 1) == (Fraction(1),)

    def test_dimension_three(self):
        assert hilbert_polynomial_from_h((1, 1), 3) == (Fraction(1), Fraction(2), Fraction(1))

    def test_matches_binomial_expansion(self):
        rng = random.Random(719)
        for _ in range(20):
            r = rng.randint(1, 5)
            h = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 4)))
            poly = hilbert_polynomial_from_h(h, r)
            for k in range(len(h), len(h) + 6):
                direct = sum(h[i] * comb(k - i + r - 1, r - 1) for i in range(len(h)))
                value = sum(c * Fraction(k) ** i for i, c in enumerate(poly))
                assert value == direct

    def test_rejects_rank_zero(self):
        with pytest.raises(InvalidInputError):
            hilbert_polynomial_from_h((1,), 0)

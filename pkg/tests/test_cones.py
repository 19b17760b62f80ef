import random
from fractions import Fraction

from conekit.cones import (
    cone_from_generators,
    extreme_ray_indices,
    is_pointed,
    lineality_witness,
    placing_triangulation,
    rays_from_constraints,
    supports_from_generators,
)
from conekit.linalg import matmul, transpose

from .oracles import box_points, cone_contains, frac_solve


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def random_pointed_gens(rng, d, n):
    """Generators with all-positive last coordinate: pointedness for free."""
    return tuple(
        tuple(rng.randint(-5, 5) for _ in range(d - 1)) + (rng.randint(1, 5),)
        for _ in range(n)
    )


class TestSupports:
    def test_plane_cone(self):
        sup, equ = supports_from_generators(((0, 1), (2, 3)), 2)
        assert set(sup) == {(-3, 2), (1, 0)}
        assert equ == ()

    def test_orthant(self):
        sup, equ = supports_from_generators(((1, 0), (0, 1)), 2)
        assert set(sup) == {(1, 0), (0, 1)}
        assert equ == ()

    def test_lower_dimensional_cone_gets_equation(self):
        sup, equ = supports_from_generators(((1, 1, 0),), 3)
        assert len(equ) == 2
        for e in equ:
            assert dot(e, (1, 1, 0)) == 0

    def test_generators_satisfy_constraints(self):
        rng = random.Random(101)
        for _ in range(60):
            d, n = rng.randint(2, 4), rng.randint(1, 6)
            gens = random_pointed_gens(rng, d, n)
            sup, equ = supports_from_generators(gens, d)
            for g in gens:
                assert all(dot(a, g) >= 0 for a in sup)
                assert all(dot(e, g) == 0 for e in equ)


class TestRaysFromConstraints:
    def test_roundtrip_plane_cone(self):
        rays = rays_from_constraints(((-3, 2), (1, 0)), (), 2)
        assert set(rays) == {(0, 1), (2, 3)}

    def test_halfplane_has_line(self):
        rays = rays_from_constraints(((0, 1),), (), 2)
        assert (1, 0) in rays and (-1, 0) in rays

    def test_equations_cut_down(self):
        rays = rays_from_constraints(((1, 0, 0), (0, 1, 0), (0, 0, 1)), ((1, -1, 0),), 3)
        for r in rays:
            assert r[0] == r[1]

    def test_roundtrip_random(self):
        rng = random.Random(103)
        for _ in range(40):
            d, n = rng.randint(2, 3), rng.randint(2, 5)
            gens = random_pointed_gens(rng, d, n)
            sup, equ = supports_from_generators(gens, d)
            rays = rays_from_constraints(sup, equ, d)
            # same cone both ways, checked by exact membership
            for r in rays:
                assert cone_contains(gens, r)
            for g in gens:
                assert cone_contains(rays, g)


class TestPointedness:
    def test_orthant_pointed(self):
        sup, equ = supports_from_generators(((1, 0), (0, 1)), 2)
        assert is_pointed(sup, equ, 2)

    def test_line_not_pointed(self):
        sup, equ = supports_from_generators(((1, -1), (-1, 1)), 2)
        assert not is_pointed(sup, equ, 2)
        w = lineality_witness(sup, equ, 2)
        assert w in {(1, -1), (-1, 1)}

    def test_witness_is_invisible_to_constraints(self):
        rng = random.Random(107)
        found = 0
        for _ in range(60):
            d = rng.randint(2, 4)
            gens = tuple(
                tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(2, 5))
            )
            sup, equ = supports_from_generators(gens, d)
            if is_pointed(sup, equ, d):
                continue
            found += 1
            w = lineality_witness(sup, equ, d)
            assert any(w)
            assert all(dot(a, w) == 0 for a in sup)
            assert all(dot(e, w) == 0 for e in equ)
        assert found > 5


class TestExtremeRays:
    def test_middle_ray_dropped(self):
        gens = ((0, 1), (1, 2), (2, 3))
        sup, equ = supports_from_generators(gens, 2)
        assert extreme_ray_indices(gens, sup, equ) == (0, 2)

    def test_duplicates_collapse(self):
        gens = ((1, 0), (2, 0), (0, 1))
        sup, equ = supports_from_generators(gens, 2)
        assert extreme_ray_indices(gens, sup, equ) == (0, 2)

    def test_cone_object(self):
        cone = cone_from_generators(((0, 1), (1, 2), (2, 3)), 2)
        assert cone.pointed
        assert cone.extreme_rays == (0, 2)
        assert set(cone.support_hyperplanes) == {(-3, 2), (1, 0)}


class TestPlacingTriangulation:
    def test_square_cone_two_simplices(self):
        rays = ((0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1))
        tri = placing_triangulation(rays)
        assert len(tri) == 2
        assert all(len(s.ray_indices) == 3 for s in tri)
        total_open = sum(len(s.excluded_facets) for s in tri)
        assert total_open == 1

    def test_simplex_input_stays_whole(self):
        rays = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        tri = placing_triangulation(rays)
        assert len(tri) == 1
        assert tri[0].ray_indices == (0, 1, 2)
        assert tri[0].excluded_facets == ()

    def test_half_open_cover_is_exact(self):
        """Each interior rational sample lies in exactly one half-open piece."""
        rng = random.Random(109)
        for _ in range(25):
            d = rng.randint(2, 3)
            gens = random_pointed_gens(rng, d, rng.randint(3, 6))
            sup, equ = supports_from_generators(gens, d)
            if equ:
                continue
            cone = cone_from_generators(gens, d)
            e_rays = tuple(gens[i] for i in cone.extreme_rays)
            tri = placing_triangulation(e_rays)
            for _ in range(12):
                weights = [rng.randint(0, 4) for _ in e_rays]
                if not any(weights):
                    continue
                pt = tuple(sum(w * g[j] for w, g in zip(weights, e_rays)) for j in range(d))
                owners = 0
                for s in tri:
                    rows = [e_rays[i] for i in s.ray_indices]
                    q = frac_solve(transpose(rows), pt)
                    if q is None or any(x < 0 for x in q):
                        continue
                    if any(q[k] == 0 for k in s.excluded_facets):
                        continue
                    owners += 1
                assert owners == 1


class TestMembershipAgainstOracle:
    def test_support_description_matches_subset_search(self):
        rng = random.Random(113)
        for _ in range(20):
            gens = random_pointed_gens(rng, 3, rng.randint(2, 4))
            sup, equ = supports_from_generators(gens, 3)
            for p in box_points(3, 2):
                by_sup = all(dot(a, p) >= 0 for a in sup) and all(
                    dot(e, p) == 0 for e in equ
                )
                # support description decides lattice points iff the subset
                # oracle agrees on the rational cone
                assert by_sup == cone_contains(gens, p)

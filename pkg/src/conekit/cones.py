"""Rational cones: generator/constraint conversion and triangulation.

Both conversion directions run through an incremental double description
pass with explicit lineality bookkeeping, so lower-dimensional and
non-pointed intermediate cones are handled exactly.  Support hyperplanes
are primitive and sorted lexicographically, which fixes a canonical
constraint description for every cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .linalg import (
    LatticeBasis,
    Matrix,
    Vector,
    dot,
    is_zero_vector,
    kernel_lattice,
    matrix,
    primitive_part,
    rank,
    saturation,
    solve_rational_system,
)


def rays_from_constraints(
    inequalities: Matrix, equations: Matrix, ambient_dim: int
) -> Matrix:
    """Primitive extreme rays of ``{x : A x >= 0, B x = 0}``.

    Args:
        inequalities: rows ``a`` imposing ``a . x >= 0``.
        equations: rows ``b`` imposing ``b . x = 0``.
        ambient_dim: dimension of the ambient space.

    Returns:
        Lexicographically sorted primitive rays.  If the solution cone is
        not pointed, the rows of a saturated basis of its lineality space
        are appended with both signs, so the result still generates the
        cone over the nonnegative rationals.
    """
    lin = [list(r) for r in kernel_lattice(matrix(equations), ambient_dim).basis]
    rays: list[Vector] = []
    seen: list[Vector] = []
    for a in inequalities:
        a = tuple(a)
        if is_zero_vector(a):
            seen.append(a)
            continue
        lin_vals = [dot(a, l) for l in lin]
        if any(lin_vals):
            k = next(i for i, v in enumerate(lin_vals) if v)
            l0, v0 = lin.pop(k), lin_vals.pop(k)
            if v0 < 0:
                l0, v0 = [-x for x in l0], -v0
            lin = [
                [v0 * x - v * y for x, y in zip(l, l0)]
                for l, v in zip(lin, lin_vals)
            ]
            projected = []
            for r in rays:
                rv = dot(a, r)
                nr = primitive_part(tuple(v0 * x - rv * y for x, y in zip(r, l0)))
                if nr not in projected:
                    projected.append(nr)
            new_ray = primitive_part(tuple(l0))
            if new_ray not in projected:
                projected.append(new_ray)
            rays = projected
        else:
            neg = [r for r in rays if dot(a, r) < 0]
            if neg:
                pos = [r for r in rays if dot(a, r) > 0]
                kept = [r for r in rays if dot(a, r) >= 0]
                for p in pos:
                    for q in neg:
                        if not _adjacent(p, q, rays, seen):
                            continue
                        w = primitive_part(
                            tuple(
                                dot(a, p) * qx - dot(a, q) * px
                                for px, qx in zip(p, q)
                            )
                        )
                        if w not in kept:
                            kept.append(w)
                rays = kept
        seen.append(a)
    out = {tuple(r) for r in rays}
    lin_lat = saturation(LatticeBasis.from_rows([tuple(l) for l in lin], ambient_dim))
    for b in lin_lat.basis:
        out.add(b)
        out.add(tuple(-x for x in b))
    return tuple(sorted(out))


def _adjacent(p: Vector, q: Vector, rays: Sequence[Vector], seen: Sequence[Vector]) -> bool:
    # Combinatorial adjacency: no third ray is active on every constraint
    # that is active on both p and q.
    active = [a for a in seen if dot(a, p) == 0 and dot(a, q) == 0]
    for r in rays:
        if r == p or r == q:
            continue
        if all(dot(a, r) == 0 for a in active):
            return False
    return True


def supports_from_generators(generators: Matrix, ambient_dim: int):
    """Canonical constraint description of ``cone(generators)``.

    Returns ``(sup, equ)``: primitive facet normals sorted
    lexicographically, and an HNF basis of the linear forms vanishing on
    the span.  Works for non-pointed and lower-dimensional cones.
    """
    gens = matrix(generators)
    equ = kernel_lattice(gens, ambient_dim).basis
    sup = rays_from_constraints(gens, equ, ambient_dim)
    return sup, equ


def is_pointed(sup: Matrix, equ: Matrix, ambient_dim: int) -> bool:
    """Whether ``{x : sup x >= 0, equ x = 0}`` contains no line."""
    return rank(matrix(tuple(sup) + tuple(equ))) == ambient_dim


def lineality_witness(sup: Matrix, equ: Matrix, ambient_dim: int):
    """A nonzero vector of the lineality space, or None when pointed."""
    kern = kernel_lattice(matrix(tuple(sup) + tuple(equ)), ambient_dim)
    if kern.rank == 0:
        return None
    return kern.basis[0]


def extreme_ray_indices(generators: Matrix, sup: Matrix, equ: Matrix) -> tuple:
    """Indices of generators spanning one-dimensional faces of the cone.

    When several parallel generators lie on the same extreme ray only the
    first index is reported, so the index count equals the ray count.
    """
    if not generators:
        return ()
    d = len(generators[0])
    out = []
    directions: list[Vector] = []
    for i, g in enumerate(generators):
        if is_zero_vector(g):
            continue
        active = tuple(a for a in sup if dot(a, g) == 0)
        if rank(matrix(active + tuple(equ))) != d - 1:
            continue
        direction = primitive_part(g)
        if direction in directions:
            continue
        directions.append(direction)
        out.append(i)
    return tuple(out)


@dataclass(frozen=True)
class Cone:
    """A rational cone with both descriptions attached."""

    ambient_dim: int
    generators: Matrix
    support_hyperplanes: Matrix
    equations: Matrix
    extreme_rays: tuple
    pointed: bool


def cone_from_generators(generators, ambient_dim: int) -> Cone:
    gens = matrix(generators)
    sup, equ = supports_from_generators(gens, ambient_dim)
    return Cone(
        ambient_dim=ambient_dim,
        generators=gens,
        support_hyperplanes=sup,
        equations=equ,
        extreme_rays=extreme_ray_indices(gens, sup, equ),
        pointed=is_pointed(sup, equ, ambient_dim),
    )


@dataclass(frozen=True)
class SimplicialCone:
    """A simplex of a triangulation.

    ``ray_indices`` index into the ray matrix the triangulation was built
    from; ``excluded_facets`` lists positions ``p`` such that the facet
    opposite ``ray_indices[p]`` is treated as open.
    """

    ray_indices: tuple
    excluded_facets: tuple


def _facet_forms(rows: Sequence[Vector]) -> list:
    """Integer forms f_i in the row space with f_i . v_j = c_i*delta_ij,
    c_i > 0.  Requires independent rows."""
    k = len(rows)
    d = len(rows[0])
    gram = matrix([[dot(a, b) for b in rows] for a in rows])
    forms = []
    for idx in range(k):
        rhs = tuple(1 if j == idx else 0 for j in range(k))
        y = solve_rational_system(gram, rhs)
        frac = [sum(y[t] * rows[t][j] for t in range(k)) for j in range(d)]
        scale = lcm(*(f.denominator for f in frac)) if frac else 1
        forms.append(primitive_part(tuple(int(f * scale) for f in frac)))
    return forms


def placing_triangulation(rays: Matrix) -> tuple:
    """Triangulate a pointed cone by placing its extreme rays in order.

    Args:
        rays: primitive extreme rays, one per row, in canonical order.

    Returns:
        SimplicialCones whose half-open parts (facets in
        ``excluded_facets`` removed) partition the cone.  The first simplex
        has no exclusions; exclusions elsewhere are decided by visibility
        from a symbolically perturbed interior point of the first simplex.
    """
    rays = matrix(rays)
    if not rays:
        return ()
    d = len(rays[0])
    placed: list[int] = []
    simplices: list[tuple] = []
    cur_rank = 0
    for i, g in enumerate(rays):
        placed_rows = tuple(rays[j] for j in placed)
        new_rank = rank(matrix(placed_rows + (tuple(g),)))
        if new_rank > cur_rank:
            simplices = [s + (i,) for s in simplices] or [(i,)]
            cur_rank = new_rank
            placed.append(i)
            continue
        sup_cur, _ = supports_from_generators(matrix(placed_rows), d)
        fresh = set()
        for a in sup_cur:
            if dot(a, g) >= 0:
                continue
            for s in simplices:
                on = tuple(j for j in s if dot(a, rays[j]) == 0)
                if len(on) == len(s) - 1:
                    fresh.add(tuple(sorted(on + (i,))))
        simplices.extend(sorted(fresh))
        placed.append(i)

    witness = [rays[j] for j in simplices[0]]
    total = [sum(col) for col in zip(*witness)]
    out = []
    for s in simplices:
        forms = _facet_forms([rays[j] for j in s])
        excluded = []
        for pos, f in enumerate(forms):
            signs = [dot(f, total)] + [dot(f, v) for v in witness]
            lead = next((x for x in signs if x), 0)
            if lead < 0:
                excluded.append(pos)
        out.append(SimplicialCone(tuple(s), tuple(excluded)))
    return tuple(out)

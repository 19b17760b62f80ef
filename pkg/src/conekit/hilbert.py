"""Hilbert basis engines.

Two independent algorithms compute the minimal generating set of C cap L
for a pointed rational cone C and a lattice L:

* the primal algorithm triangulates the cone on its extreme rays and
  collects the lattice points of each fundamental parallelepiped;
* the dual algorithm starts from the lattice restricted to the equation
  kernel and intersects one halfspace at a time, completing the
  generating set by pair sums (Pottier-style raising).

Both report results in the original ambient coordinates, rows sorted by
degree (sum of support form values) and then lexicographically, so the
two can be compared element for element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .cones import Cone, lineality_witness, placing_triangulation, supports_from_generators
from .errors import InvalidInputError, NotPointedError
from .linalg import (
    LatticeBasis,
    Matrix,
    Vector,
    det,
    dot,
    hnf,
    kernel_lattice,
    mat_vec,
    matmul,
    matrix,
    primitive_part,
    rank,
    saturation,
    snf,
    vec_add,
    vec_scale,
    vec_sub,
)


@dataclass(frozen=True)
class ConeProblem:
    """A pointed cone together with the lattice the basis lives in.

    ``lattice`` is ZZ^d for integral closure semantics and the span of
    the generators for normalization semantics.
    """

    cone: Cone
    lattice: LatticeBasis


@dataclass(frozen=True)
class SimplexBlock:
    """One simplicial piece of the triangulation with its lattice data.

    ``excluded_facets`` are positions into ``rays``; position j names the
    facet opposite ray j.  ``facet_zero[p][j]`` records whether point p
    has vanishing barycentric coordinate j, i.e. lies on that facet.
    ``det`` is the normalized volume, which equals ``len(points)``.
    """

    rays: Matrix
    excluded_facets: tuple
    points: Matrix
    facet_zero: tuple
    det: int


@dataclass(frozen=True)
class TriangulationData:
    blocks: tuple
    rank: int


@dataclass(frozen=True)
class HilbertBasisResult:
    """Minimal generating set of C cap L, rows in ambient coordinates.

    ``triangulation`` is populated by the primal algorithm and None for
    the dual one.
    """

    basis: Matrix
    triangulation: Optional[TriangulationData] = None


@dataclass(frozen=True)
class _Frame:
    """Coordinates of the problem inside its effective lattice.

    The effective lattice is the saturation of the generator span inside
    L, so the cone is full-dimensional there and primitivity means
    primitivity with respect to L.
    """

    problem: ConeProblem
    effective: LatticeBasis
    rays: Matrix
    sup: Matrix

    def to_ambient(self, z: Vector) -> Vector:
        return self.problem.lattice.to_ambient(self.effective.to_ambient(z))


def _analyze(problem: ConeProblem) -> _Frame:
    cone, lat = problem.cone, problem.lattice
    if not cone.pointed:
        w = lineality_witness(cone.support_hyperplanes, cone.equations, cone.ambient_dim)
        raise NotPointedError(w)
    gens_l = []
    for g in cone.generators:
        c = lat.coords(g)
        if c is None:
            raise InvalidInputError("generator %s is not in the computation lattice" % (g,))
        gens_l.append(c)
    eff = saturation(LatticeBasis.from_rows(gens_l, lat.rank))
    if eff.rank == 0:
        return _Frame(problem, eff, (), ())
    gens_e = [eff.coords(c) for c in gens_l]
    rays = tuple(sorted({primitive_part(gens_e[i]) for i in cone.extreme_rays}))
    sup, equ = supports_from_generators(rays, eff.rank)
    assert not equ, "cone must be full-dimensional in its effective lattice"
    return _Frame(problem, eff, rays, sup)


def _parallelepiped(vrows: Matrix):
    """Lattice points of {q . V : 0 <= q_i < 1} for square integer V.

    Enumerates one representative per residue class of ZZ^k modulo the
    row span of V, read off the Smith normal form, then reduces it into
    the fundamental parallelepiped.  Returns (point, zero-flags) pairs
    where flag j marks a vanishing barycentric coordinate.
    """
    k = len(vrows)
    d_abs = abs(det(vrows))
    if d_abs == 0:
        raise InvalidInputError("parallelepiped rows are linearly dependent")
    if d_abs == 1:
        return [((0,) * k, (True,) * k)]
    s, u, _ = snf(vrows)
    diag = [s[i][i] for i in range(k)]
    out = []
    for b in product(*[range(m) for m in diag]):
        q = [
            sum(Fraction(bi * u[i][j], si) for i, (bi, si) in enumerate(zip(b, diag)))
            for j in range(k)
        ]
        frac = [x - (x.numerator // x.denominator) for x in q]
        z = [sum(frac[j] * vrows[j][i] for j in range(k)) for i in range(k)]
        assert all(x.denominator == 1 for x in z)
        out.append((tuple(int(x) for x in z), tuple(x == 0 for x in frac)))
    out.sort()
    return out


def parallelepiped_points(vrows, lattice: LatticeBasis) -> Matrix:
    """All points of ``lattice`` inside the half-open parallelepiped
    spanned by the rows of ``vrows``.

    The rows must be independent members of the lattice; the number of
    points equals the index of their span in the surrounding saturated
    lattice.
    """
    rows = matrix(vrows)
    coords = []
    for v in rows:
        c = lattice.coords(v)
        if c is None:
            raise InvalidInputError("parallelepiped row %s is not in the lattice" % (v,))
        coords.append(c)
    sub = saturation(LatticeBasis.from_rows(coords, lattice.rank))
    if len(rows) != sub.rank:
        raise InvalidInputError("parallelepiped rows are linearly dependent")
    pts = _parallelepiped(tuple(sub.coords(c) for c in coords))
    return tuple(sorted(lattice.to_ambient(sub.to_ambient(z)) for z, _ in pts))


def triangulation_blocks(problem: ConeProblem) -> TriangulationData:
    """Placing triangulation of the cone with per-simplex lattice data,
    everything reported in ambient coordinates."""
    return _blocks(_analyze(problem))


def _blocks(frame: _Frame) -> TriangulationData:
    blocks = []
    for simplex in placing_triangulation(frame.rays):
        vrows = tuple(frame.rays[i] for i in simplex.ray_indices)
        pts = _parallelepiped(vrows)
        blocks.append(
            SimplexBlock(
                rays=tuple(frame.to_ambient(v) for v in vrows),
                excluded_facets=simplex.excluded_facets,
                points=tuple(frame.to_ambient(z) for z, _ in pts),
                facet_zero=tuple(f for _, f in pts),
                det=len(pts),
            )
        )
    return TriangulationData(tuple(blocks), frame.effective.rank)


def reduce_candidates(candidates: Matrix, sup: Matrix) -> Matrix:
    """Strip reducible elements from a duplicate-free candidate pool.

    A candidate x is reducible when some other candidate y has
    componentwise smaller-or-equal support form values: then x - y lies
    in the cone and in the lattice, so x = y + (x - y) decomposes.
    Candidates are processed by increasing degree (sum of support
    values), which guarantees every reducer is seen before the elements
    it reduces; the survivors are the minimal generating set.
    """
    vals = {x: tuple(dot(a, x) for a in sup) for x in candidates}
    kept = []
    kept_vals = []
    for x in sorted(candidates, key=lambda c: (sum(vals[c]), c)):
        vx = vals[x]
        degree = sum(vx)
        reducible = False
        for vy in kept_vals:
            if sum(vy) >= degree:
                break
            if all(a <= b for a, b in zip(vy, vx)):
                reducible = True
                break
        if not reducible:
            kept.append(x)
            kept_vals.append(vx)
    return tuple(kept)


def hilbert_basis_primal(problem: ConeProblem) -> HilbertBasisResult:
    """Triangulate, collect parallelepiped points and primitive extreme
    rays, then reduce to the minimal generating set."""
    frame = _analyze(problem)
    tri = _blocks(frame)
    pool = set()
    for blk in tri.blocks:
        pool.update(blk.points)
        pool.update(blk.rays)
    pool.discard((0,) * problem.cone.ambient_dim)
    basis = reduce_candidates(tuple(sorted(pool)), problem.cone.support_hyperplanes)
    return HilbertBasisResult(basis=basis, triangulation=tri)


def _normal_form(s, kept, form, priors, val_cache):
    """Reduce candidate s by the kept elements during halfspace raising.

    A keeper v applies when its prior constraint values are
    componentwise below those of s and its value under the new form has
    the same sign and smaller magnitude: then s - v stays feasible on
    the same side, so subtracting v loses nothing.  Dropping dominated
    candidates outright would be wrong, because the remainder may be
    reachable only through them; reducing to a normal form keeps it.
    Every keeper has a positive value somewhere (lineality members are
    filtered out), so each subtraction strictly shrinks s.
    """
    fs = dot(form, s)
    ps = [dot(b, s) for b in priors]
    reduced = True
    while reduced and any(s):
        reduced = False
        for v in kept:
            fv, pv = val_cache[v]
            if fs > 0 and not 0 <= fv <= fs:
                continue
            if fs < 0 and not fs <= fv <= 0:
                continue
            if fs == 0 and fv != 0:
                continue
            if any(a > b for a, b in zip(pv, ps)):
                continue
            s = vec_sub(s, v)
            fs -= fv
            ps = [b - a for a, b in zip(pv, ps)]
            reduced = True
            break
    return s


def _raise_halfspace(pool, form, priors, lineal):
    """Close ``pool`` under positive/negative pair sums for ``form``.

    ``lineal`` is the lineality lattice after the cut; the caller tracks
    a basis of it explicitly, so everything here is normalized to coset
    representatives modulo it (constraint values are coset invariants).
    Negative elements are only discarded at the very end, because late
    sums may still need them.  Each round only pairs elements against
    the previous round's newcomers.
    """
    kept = sorted({lineal.residue(p) for p in pool} - {(0,) * lineal.ambient_dim})
    seen = set(kept)
    cache = {v: (dot(form, v), tuple(dot(b, v) for b in priors)) for v in kept}
    frontier = list(kept)
    while frontier:
        pos = [v for v in kept if cache[v][0] > 0]
        neg = [v for v in kept if cache[v][0] < 0]
        front = set(frontier)
        added = []
        for y in pos:
            y_new = y in front
            for z in neg:
                if not y_new and z not in front:
                    continue
                raw = lineal.residue(vec_add(y, z))
                if not any(raw) or raw in seen:
                    continue
                seen.add(raw)
                s = lineal.residue(_normal_form(raw, kept, form, priors, cache))
                if not any(s) or s in cache:
                    continue
                cache[s] = (dot(form, s), tuple(dot(b, s) for b in priors))
                kept.append(s)
                added.append(s)
        frontier = added
        kept.sort()
    return [v for v in kept if cache[v][0] >= 0]


def hilbert_basis_dual(sup: Matrix, equ: Matrix, lattice: LatticeBasis, ambient_dim: int) -> HilbertBasisResult:
    """Hilbert basis from a constraint description, one halfspace at a
    time, without triangulating.

    The state is a basis of the current lineality lattice plus a pool of
    proper generators.  Each hyperplane splits the lineality lattice
    into its kernel part and one generator w with positive value; the
    pool is closed under pair sums together with w and -w, then
    restricted to the new halfspace.  Must agree with the primal
    algorithm on the cone the constraints carve out of the lattice.
    """
    r = lattice.rank
    if r == 0:
        return HilbertBasisResult(basis=())
    basis_rows = lattice.basis
    sup_l = tuple(mat_vec(basis_rows, a) for a in matrix(sup))
    equ_l = tuple(mat_vec(basis_rows, e) for e in matrix(equ))
    stack = matrix(sup_l + equ_l)
    if rank(stack) < r:
        w = kernel_lattice(stack, r).basis[0]
        raise NotPointedError(lattice.to_ambient(w))
    lineal = kernel_lattice(equ_l, r)
    pool = []
    priors = list(equ_l)  # equations hold with value 0 throughout
    for a in sup_l:
        vals = tuple(dot(a, b) for b in lineal.basis)
        if any(vals):
            h, u = hnf(tuple((v,) for v in vals))
            rows = matmul(u, lineal.basis)
            # row 0 has value hnf pivot > 0, the rest span the kernel
            lineal = LatticeBasis.from_rows(rows[1:], r)
            pool = pool + [rows[0], vec_scale(-1, rows[0])]
        pool = _raise_halfspace(pool, a, priors, lineal)
        priors.append(a)
        # keep the working set minimal between stages
        pool = list(reduce_candidates(tuple(sorted(set(pool))), matrix(priors)))
    assert lineal.rank == 0
    reduced = reduce_candidates(tuple(sorted(set(pool))), matrix(sup_l))
    rows = [lattice.to_ambient(v) for v in reduced]
    rows.sort(key=lambda x: (sum(dot(a, x) for a in sup), x))
    return HilbertBasisResult(basis=tuple(rows))

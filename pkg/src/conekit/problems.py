"""Input-type dispatch and result-record assembly.

A problem is a list of integer matrices, each tagged with a small type
code borrowed from the classic interchange format:

====  ==================  ===================================================
code  keyword             meaning of the rows
====  ==================  ===================================================
0     integral_closure    cone generators, lattice ZZ^d
1     normalization       cone generators, lattice generated by the rows
2     polytope            vertices of a lattice polytope
3     rees_algebra        generators of a monomial ideal
4     inequalities        homogeneous linear inequalities  M x >= 0
5     equations           homogeneous linear equations  M x = 0
6     congruences         rows (c | m) meaning  c . x = 0  mod m
10    lattice_ideal       generators of the lattice of a binomial ideal
====  ==================  ===================================================

Generator types (0, 1, 2, 3, 10) stand alone; constraint types (4, 5, 6)
may be combined, at most one matrix each.  When constraints contain no
inequality matrix the positive orthant is assumed.

:func:`compute_cone` dispatches to the Hilbert basis engine and returns
a :class:`RationalCone`: the ``gen`` matrix, optionally the ``sup`` /
``typ`` / ``equ`` / ``cgr`` matrices, and the ``inv`` table of named
invariants.
"""

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Optional

from .cones import Cone, cone_from_generators, lineality_witness, rays_from_constraints
from .errors import InvalidInputError, NotPointedError
from .hilbert import ConeProblem, hilbert_basis_dual, hilbert_basis_primal, triangulation_blocks
from .linalg import (
    LatticeBasis,
    Matrix,
    Vector,
    congruence_lattice,
    dot,
    hnf,
    identity,
    lattice_index,
    matmul,
    matrix,
    rank,
    saturation,
    snf,
    solve_rational_system,
    transpose,
    vec_scale,
)
from .series import find_grading, height_one_count, hilbert_series

INTEGRAL_CLOSURE = 0
NORMALIZATION = 1
POLYTOPE = 2
REES_ALGEBRA = 3
INEQUALITIES = 4
EQUATIONS = 5
CONGRUENCES = 6
LATTICE_IDEAL = 10

GENERATOR_TYPES = frozenset((INTEGRAL_CLOSURE, NORMALIZATION, POLYTOPE, REES_ALGEBRA, LATTICE_IDEAL))
CONSTRAINT_TYPES = frozenset((INEQUALITIES, EQUATIONS, CONGRUENCES))

MODE_HILBERT_BASIS = "hilbert_basis"
MODE_SUPPORT_HYPERPLANES = "support_hyperplanes_only"
MODE_TRIANGULATION = "triangulation_only"
_MODES = (MODE_HILBERT_BASIS, MODE_SUPPORT_HYPERPLANES, MODE_TRIANGULATION)


@dataclass(frozen=True)
class InputItem:
    matrix: Matrix
    input_type: int


@dataclass(frozen=True)
class InputSystem:
    """A nonempty list of typed matrices describing one cone problem."""

    items: tuple
    ambient_dim: int

    def __post_init__(self):
        if not self.items:
            raise InvalidInputError("input system is empty")
        if self.ambient_dim < 1:
            raise InvalidInputError("ambient dimension must be positive")
        types = [it.input_type for it in self.items]
        for t in types:
            if t not in GENERATOR_TYPES and t not in CONSTRAINT_TYPES:
                raise InvalidInputError("unknown input type %r" % (t,))
        if len(set(types)) != len(types):
            raise InvalidInputError("input type given twice")
        gen_types = [t for t in types if t in GENERATOR_TYPES]
        if gen_types and len(types) > 1:
            raise InvalidInputError(
                "generator type %d cannot be combined with other matrices" % gen_types[0]
            )
        for it in self.items:
            width = self.ambient_dim + 1 if it.input_type == CONGRUENCES else self.ambient_dim
            for row in it.matrix:
                if len(row) != width:
                    raise InvalidInputError(
                        "type %d rows need %d entries, got %d"
                        % (it.input_type, width, len(row))
                    )
            if it.input_type == CONGRUENCES:
                for row in it.matrix:
                    if row[-1] < 1:
                        raise InvalidInputError("congruence modulus must be positive")


def input_system(pairs, ambient_dim: int) -> InputSystem:
    """Build an :class:`InputSystem` from ``(rows, type)`` pairs."""
    return InputSystem(
        items=tuple(InputItem(matrix=matrix(rows), input_type=t) for rows, t in pairs),
        ambient_dim=ambient_dim,
    )


@dataclass(frozen=True)
class ComputationOptions:
    all_computations: bool = False
    hilb: bool = False
    dual: bool = False
    mode: str = MODE_HILBERT_BASIS

    def __post_init__(self):
        if self.mode not in _MODES:
            raise InvalidInputError("unknown computation mode %r" % (self.mode,))


@dataclass(frozen=True)
class RationalCone:
    """Result record: generator matrix plus named invariants.

    ``sup``/``typ``/``equ``/``cgr`` are ``None`` when not requested and
    possibly empty tuples when requested but vacuous.  ``extra_records``
    carries verbatim ``.inv`` lines of unknown kind through a read/write
    round trip.
    """

    ambient_dim: int
    gen: Matrix
    inv: dict
    sup: Optional[Matrix] = None
    typ: Optional[Matrix] = None
    equ: Optional[Matrix] = None
    cgr: Optional[Matrix] = None
    extra_records: tuple = field(default=())


def build_problem(system: InputSystem) -> ConeProblem:
    """Translate a typed input system into a cone-plus-lattice problem."""
    d = system.ambient_dim
    first = system.items[0]
    if first.input_type in CONSTRAINT_TYPES:
        return _constraint_problem(system)
    rows = first.matrix
    if first.input_type == INTEGRAL_CLOSURE:
        return ConeProblem(cone_from_generators(rows, d), LatticeBasis.standard(d))
    if first.input_type == NORMALIZATION:
        return ConeProblem(cone_from_generators(rows, d), LatticeBasis.from_rows(rows, d))
    if first.input_type == POLYTOPE:
        gens = tuple(tuple(r) + (1,) for r in rows)
        return ConeProblem(cone_from_generators(gens, d + 1), LatticeBasis.standard(d + 1))
    if first.input_type == REES_ALGEBRA:
        units = tuple(tuple(identity(d + 1)[i]) for i in range(d))
        gens = units + tuple(tuple(r) + (1,) for r in rows)
        return ConeProblem(cone_from_generators(gens, d + 1), LatticeBasis.standard(d + 1))
    return _quotient_problem(rows, d)


def _constraint_problem(system: InputSystem) -> ConeProblem:
    d = system.ambient_dim
    by_type = {it.input_type: it.matrix for it in system.items}
    ineq = by_type.get(INEQUALITIES)
    if ineq is None:
        ineq = identity(d)  # positive-orthant default
    equ = by_type.get(EQUATIONS, ())
    cgr = by_type.get(CONGRUENCES, ())
    lat = congruence_lattice(matrix(cgr), d) if cgr else LatticeBasis.standard(d)
    rays = rays_from_constraints(matrix(ineq), matrix(equ), d)
    gens = tuple(_scale_into(r, lat) for r in rays)
    return ConeProblem(cone_from_generators(gens, d), lat)


def _scale_into(v: Vector, lat: LatticeBasis) -> Vector:
    """Smallest positive multiple of ``v`` lying in the lattice."""
    if lat.is_standard:
        return tuple(v)
    q = solve_rational_system(transpose(lat.basis), v)
    k = lcm(*(x.denominator for x in q)) if q else 1
    return vec_scale(k, v)


def _quotient_problem(rows: Matrix, d: int) -> ConeProblem:
    sat = saturation(LatticeBasis.from_rows(rows, d))
    r = sat.rank
    if r == d:
        raise InvalidInputError("lattice ideal spans the whole space")
    if r == 0:
        gens = identity(d)
        return ConeProblem(cone_from_generators(gens, d), LatticeBasis.standard(d))
    s, _, v = snf(sat.basis)
    assert all(s[i][i] == 1 for i in range(r))
    images = tuple(row[r:] for row in v)
    # fix the quotient coordinates by Hermite-reducing the column space
    h, _ = hnf(transpose(images))
    gens = transpose(h)
    return ConeProblem(cone_from_generators(gens, d - r), LatticeBasis.standard(d - r))


def _primitive_in_lattice(v: Vector, lat: LatticeBasis) -> Vector:
    cs = lat.coords(v)
    g = 0
    for x in cs:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return lat.to_ambient(tuple(x // g for x in cs))


def _span_index(gens: Matrix, d: int) -> int:
    zz = LatticeBasis.from_rows(gens, d)
    if zz.rank == 0:
        return 1
    return lattice_index(zz, saturation(zz))


def _congruence_rows(lat: LatticeBasis) -> Matrix:
    """Congruences cutting the lattice out of its saturation.

    Rows are ``(c | m)``; together with the span equations they define
    the lattice inside ZZ^d.  Empty when the lattice is saturated.
    """
    if lat.rank == 0:
        return ()
    sat = saturation(lat)
    if sat.basis == lat.basis:
        return ()
    coords = matrix(sat.coords(row) for row in lat.basis)
    diag, _, v = snf(coords)
    # integer forms on ZZ^d returning saturation coordinates, scaled to
    # clear the denominators column by column
    inv_cols = [solve_rational_system(sat.basis, tuple(identity(lat.rank)[i])) for i in range(lat.rank)]
    rows = []
    for i in range(lat.rank):
        m = diag[i][i]
        if m == 1:
            continue
        form = [sum(v[j][i] * col[k] for j, col in enumerate(inv_cols)) for k in range(lat.ambient_dim)]
        k = lcm(*(x.denominator for x in form))
        entries = [int(k * x) for x in form] + [k * m]
        g = 0
        for x in entries:
            g = gcd(g, x)
        entries = [x // g for x in entries]
        lead = next((x for x in entries[:-1] if x), 0)
        if lead < 0:
            entries = [-x for x in entries[:-1]] + [entries[-1]]
        rows.append(tuple(entries))
    return tuple(rows)


def compute_cone(system: InputSystem, opts: Optional[ComputationOptions] = None) -> RationalCone:
    """Run the engine on a typed input system.

    The ``inv`` table always carries the counts, rank, index and grading
    data; ``sup``/``typ``/``equ``/``cgr`` are filled when
    ``all_computations`` is set (support data also in the two restricted
    modes).  Raises :class:`NotPointedError` with a witness vector when
    the described cone contains a line.
    """
    opts = opts or ComputationOptions()
    prob = build_problem(system)
    cone, lat = prob.cone, prob.lattice
    d = cone.ambient_dim
    sup, equ = cone.support_hyperplanes, cone.equations
    if not cone.pointed:
        raise NotPointedError(lineality_witness(sup, equ, d))

    def order(rows):
        return tuple(sorted(rows, key=lambda x: (sum(dot(a, x) for a in sup), x)))

    rays = order(_primitive_in_lattice(cone.generators[i], lat) for i in cone.extreme_rays)
    grading = find_grading(rays, lat)
    tri = None
    basis_mode = opts.mode == MODE_HILBERT_BASIS
    if basis_mode:
        if opts.dual:
            gen = hilbert_basis_dual(sup, equ, lat, d).basis
        else:
            result = hilbert_basis_primal(prob)
            gen = result.basis
            tri = result.triangulation
    else:
        gen = rays
        if opts.mode == MODE_TRIANGULATION:
            tri = triangulation_blocks(prob)

    inv = {}
    if basis_mode:
        inv["hilbert basis elements"] = len(gen)
    inv["number extreme rays"] = len(rays)
    inv["number support hyperplanes"] = len(sup)
    inv["rank"] = rank(matrix(cone.generators))
    constraint_input = system.items[0].input_type in CONSTRAINT_TYPES
    inv["index"] = 1 if constraint_input else _span_index(cone.generators, d)
    inv["homogeneous"] = grading is not None
    if grading is not None:
        inv["homogeneous weights"] = grading.weights
        if basis_mode:
            inv["height 1 elements"] = height_one_count(gen, grading)
        if opts.mode != MODE_SUPPORT_HYPERPLANES:
            if tri is None:
                tri = triangulation_blocks(prob)
            series = hilbert_series(tri, grading)
            inv["multiplicity"] = series.multiplicity
            if opts.hilb and basis_mode:
                inv["h-vector"] = series.h_vector
                inv["hilbert polynomial"] = series.hilbert_polynomial

    show_support = opts.all_computations or not basis_mode
    return RationalCone(
        ambient_dim=d,
        gen=gen,
        inv=inv,
        sup=sup if show_support else None,
        typ=matmul(gen, transpose(sup)) if opts.all_computations else None,
        equ=equ if show_support else None,
        cgr=_congruence_rows(lat) if opts.all_computations else None,
    )


def level_one_elements(rc: RationalCone) -> Matrix:
    """Generators at level one, last coordinate dropped.

    For a Rees-algebra result these exponent vectors generate the
    integral closure of the input ideal; for a polytope result they are
    the lattice points of the polytope.
    """
    return tuple(row[:-1] for row in rc.gen if row[-1] == 1)

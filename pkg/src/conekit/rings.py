"""Monomial subalgebras and ideals as exponent data.

The coefficient field is a display label only; every operation works on
the exponent vectors (a monomial ``x^3*y`` is the row (3, 1)).
Integral closures, normalizations, Rees algebras, binomial-ideal
quotients and the invariant-ring helpers all reduce to one Hilbert
basis computation over a suitable typed input system.
"""

from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidInputError
from .linalg import Matrix, Vector, identity, matrix, rank
from .problems import (
    ComputationOptions,
    EQUATIONS,
    CONGRUENCES,
    INEQUALITIES,
    INTEGRAL_CLOSURE,
    LATTICE_IDEAL,
    NORMALIZATION,
    REES_ALGEBRA,
    RationalCone,
    compute_cone,
    input_system,
    level_one_elements,
)


@dataclass(frozen=True)
class RingDescriptor:
    """A polynomial ring named by its coefficient label and variables."""

    coefficient_label: str
    variable_names: tuple

    def __post_init__(self):
        if not self.variable_names:
            raise InvalidInputError("ring needs at least one variable")
        if len(set(self.variable_names)) != len(self.variable_names):
            raise InvalidInputError("ring variable names must be distinct")


def polynomial_ring(coefficient_label: str, *names: str) -> RingDescriptor:
    return RingDescriptor(coefficient_label, tuple(names))


@dataclass(frozen=True)
class MonomialSubalgebra:
    """A subalgebra generated by finitely many monomials.

    ``cone`` caches the full engine result the subalgebra came from and
    never takes part in comparisons.
    """

    ring: RingDescriptor
    exponents: Matrix
    cone: Optional[RationalCone] = field(default=None, compare=False)

    @property
    def monomials(self) -> tuple:
        names = self.ring.variable_names
        return tuple(render_monomial(row, names) for row in self.exponents)


@dataclass(frozen=True)
class MonomialIdealInput:
    ring: RingDescriptor
    exponents: Matrix


@dataclass(frozen=True)
class BinomialIdealInput:
    ring: RingDescriptor
    differences: Matrix


def _degree_lex(rows) -> Matrix:
    return tuple(sorted(rows, key=lambda r: (sum(r), r)))


def _check_exponents(rows, width: int):
    for row in rows:
        if len(row) != width:
            raise InvalidInputError(
                "exponent row %s does not match the %d ring variables" % (row, width)
            )
        if any(e < 0 for e in row):
            raise InvalidInputError("negative exponent in %s" % (row,))


def create_monomial_subalgebra(ring: RingDescriptor, monomials) -> MonomialSubalgebra:
    """Deduplicate the exponent rows and store them in canonical order."""
    rows = matrix(monomials)
    _check_exponents(rows, len(ring.variable_names))
    return MonomialSubalgebra(ring=ring, exponents=_degree_lex(set(rows)))


def monomial_ideal(ring: RingDescriptor, monomials) -> MonomialIdealInput:
    """Keep only the minimal monomial generators of the ideal."""
    rows = matrix(monomials)
    _check_exponents(rows, len(ring.variable_names))
    minimal = [
        r
        for r in set(rows)
        if not any(
            s != r and all(a <= b for a, b in zip(s, r)) for s in set(rows)
        )
    ]
    return MonomialIdealInput(ring=ring, exponents=_degree_lex(minimal))


def binomial_ideal(ring: RingDescriptor, differences) -> BinomialIdealInput:
    rows = matrix(differences)
    for row in rows:
        if not any(row):
            raise InvalidInputError("zero row does not describe a binomial")
        if len(row) != len(ring.variable_names):
            raise InvalidInputError("difference row %s does not match the ring" % (row,))
    return BinomialIdealInput(ring=ring, differences=rows)


def intcl_toric_ring(algebra: MonomialSubalgebra) -> MonomialSubalgebra:
    """Integral closure of the subalgebra in the full polynomial ring."""
    d = len(algebra.ring.variable_names)
    rc = compute_cone(input_system([(algebra.exponents, INTEGRAL_CLOSURE)], d))
    return MonomialSubalgebra(ring=algebra.ring, exponents=_degree_lex(rc.gen), cone=rc)


def normal_toric_ring(algebra: MonomialSubalgebra) -> MonomialSubalgebra:
    """Normalization: integral closure inside the group the exponents generate."""
    d = len(algebra.ring.variable_names)
    rc = compute_cone(input_system([(algebra.exponents, NORMALIZATION)], d))
    return MonomialSubalgebra(ring=algebra.ring, exponents=_degree_lex(rc.gen), cone=rc)


def _fresh_name(taken) -> str:
    candidates = ["t", "t'"]
    i = 0
    while True:
        for name in candidates:
            if name not in taken:
                return name
        candidates = ["t%d" % i]
        i += 1


def intcl_mon_ideal(ideal: MonomialIdealInput, t_name: Optional[str] = None):
    """Integral closure of a monomial ideal and its normalized Rees algebra.

    Returns ``(ideal_generators, rees_normalization)``.  The Rees
    algebra lives in the ring extended by one auxiliary variable; when
    ``t_name`` names the last ring variable the ring is taken to be of
    the form R'[t] already and is reused as is.
    """
    names = ideal.ring.variable_names
    if t_name is not None:
        if t_name != names[-1]:
            raise InvalidInputError(
                "auxiliary variable %r must be the last ring variable" % (t_name,)
            )
        if any(row[-1] for row in ideal.exponents):
            raise InvalidInputError("ideal generators may not involve the auxiliary variable")
        rows = tuple(row[:-1] for row in ideal.exponents)
        out_ring = ideal.ring
    else:
        rows = ideal.exponents
        out_ring = RingDescriptor(ideal.ring.coefficient_label, names + (_fresh_name(names),))
    rc = compute_cone(input_system([(rows, REES_ALGEBRA)], len(out_ring.variable_names) - 1))
    rees = MonomialSubalgebra(ring=out_ring, exponents=_degree_lex(rc.gen), cone=rc)
    return _degree_lex(level_one_elements(rc)), rees


def normal_toric_ring_from_binomials(
    ideal: BinomialIdealInput, fresh_name: str = "t"
) -> MonomialSubalgebra:
    """Normalization of the quotient modulo the prime binomial ideal.

    The quotient monoid is computed through the lattice-ideal input type
    and re-embedded with nonnegative exponents into a new polynomial
    ring in rank-many variables named ``fresh_name`` + 1, 2, ...
    """
    d = len(ideal.ring.variable_names)
    rc = compute_cone(
        input_system([(ideal.differences, LATTICE_IDEAL)], d),
        ComputationOptions(all_computations=True),
    )
    k = rc.ambient_dim
    # pick rank-many independent support forms; their values give a
    # nonnegative coordinate system for the pointed quotient monoid
    forms = []
    for s in sorted(rc.sup):
        if rank(matrix(forms + [s])) > len(forms):
            forms.append(s)
        if len(forms) == k:
            break
    gens = tuple(tuple(sum(a * b for a, b in zip(s, g)) for s in forms) for g in rc.gen)
    out = RingDescriptor(
        ideal.ring.coefficient_label,
        tuple("%s%d" % (fresh_name, i + 1) for i in range(k)),
    )
    return MonomialSubalgebra(ring=out, exponents=_degree_lex(gens), cone=rc)


def intersection_val_rings(weights: Matrix, ring: RingDescriptor) -> MonomialSubalgebra:
    """Intersection of the monomial valuation rings with the polynomial ring.

    Each weight row v turns into the constraint v . a >= 0 on exponent
    vectors, on top of the positive orthant.
    """
    d = len(ring.variable_names)
    rows = tuple(identity(d)) + matrix(weights)
    rc = compute_cone(input_system([(rows, INEQUALITIES)], d))
    return MonomialSubalgebra(ring=ring, exponents=_degree_lex(rc.gen), cone=rc)


def intersection_val_ring_ideals(weights: Matrix, ring: RingDescriptor):
    """Valuation intersections with lower bounds: rows are ``(v | b)``.

    Returns ``(subalgebra, module_generators)``: the exponents with all
    values at least 0 form the subalgebra, and the module generators
    are the minimal exponents with every value at least its bound.
    """
    d = len(ring.variable_names)
    rows = matrix(weights)
    for row in rows:
        if len(row) != d + 1:
            raise InvalidInputError("weight row %s needs %d entries" % (row, d + 1))
    lifted = tuple(identity(d + 1)) + tuple(tuple(r[:-1]) + (-r[-1],) for r in rows)
    rc = compute_cone(input_system([(lifted, INEQUALITIES)], d + 1))
    algebra = _degree_lex(r[:-1] for r in rc.gen if r[-1] == 0)
    module = _degree_lex(r[:-1] for r in rc.gen if r[-1] == 1)
    return MonomialSubalgebra(ring=ring, exponents=algebra, cone=rc), module


def torus_invariants(exponents_of_action: Matrix, ring: RingDescriptor) -> MonomialSubalgebra:
    """Invariants of the diagonal torus action with the given weights."""
    d = len(ring.variable_names)
    rc = compute_cone(input_system([(matrix(exponents_of_action), EQUATIONS)], d))
    return MonomialSubalgebra(ring=ring, exponents=_degree_lex(rc.gen), cone=rc)


def finite_diag_invariants(congruences: Matrix, ring: RingDescriptor) -> MonomialSubalgebra:
    """Invariants of a finite diagonal group action given by congruences."""
    d = len(ring.variable_names)
    rc = compute_cone(input_system([(matrix(congruences), CONGRUENCES)], d))
    return MonomialSubalgebra(ring=ring, exponents=_degree_lex(rc.gen), cone=rc)


def diag_invariants(
    equations: Matrix, congruences: Matrix, ring: RingDescriptor
) -> MonomialSubalgebra:
    """Invariants of a general diagonal group action (torus times finite)."""
    d = len(ring.variable_names)
    sysm = input_system(
        [(matrix(equations), EQUATIONS), (matrix(congruences), CONGRUENCES)], d
    )
    rc = compute_cone(sysm)
    return MonomialSubalgebra(ring=ring, exponents=_degree_lex(rc.gen), cone=rc)


def render_monomial(exponents: Vector, names) -> str:
    """``(3, 1)`` over (x, y) renders as ``x^3*y``; the empty product is ``1``."""
    parts = []
    for e, name in zip(exponents, names):
        if e == 0:
            continue
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


def parse_monomial(text: str, names) -> Vector:
    out = [0] * len(names)
    body = text.strip()
    if body == "1":
        return tuple(out)
    for factor in body.split("*"):
        name, _, power = factor.strip().partition("^")
        if name not in names:
            raise InvalidInputError("unknown variable %r in monomial %r" % (name, text))
        if power:
            try:
                e = int(power)
            except ValueError:
                raise InvalidInputError("bad exponent %r in monomial %r" % (power, text))
            if e < 0:
                raise InvalidInputError("negative exponent in monomial %r" % (text,))
        else:
            e = 1
        out[names.index(name)] += e
    return tuple(out)

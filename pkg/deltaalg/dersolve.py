"""Spaces of delta-(super)derivations, centroids and the checks built on them.

A linear map `phi` of an algebra of dim `d` is stored as sparse rows, `phi[k][l]`
being coordinate `k` of `phi(e_l)`. Map spaces are subspaces of the `d * d`
dimensional space of such matrices flattened row by row.
"""

import logging
import random

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .enums import Identity, Mode, Parity, Verdict
from .exactfield import HALF, ONE, ZERO, Scalar
from .exceptions import (
    BadParameter,
    DegenerateInput,
    NotFlexible,
    NotUnital,
    ParityMismatch,
    VerificationFailed,
)
from .linalg import DeltaPencil, SparseRows, Subspace, kernel, scan_pencil, sparse_matrix, stacked_kernel
from .superalg import (
    Element,
    Sparse,
    SuperAlgebra,
    add_into,
    center,
    check_identity_multilinear,
    is_supercommutative,
    minus_functor,
    plus_functor,
    product_span,
    scale,
)


Map = SparseRows
Equations = Dict[Tuple[int, int, int], Sparse]

PROBE_DELTAS = tuple(
    Scalar(Fraction(value))
    for value in (-1, 0, Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1, 2, Fraction(5, 7))
)
LITERATURE_DELTAS = tuple(Scalar(Fraction(value)) for value in (-1, 0, Fraction(1, 2), 1))
FUNCTOR_DELTAS = (HALF, Scalar(2), Scalar(-1))


@dataclass(frozen=True)
class DerivationQuery:
    """The defining equation of the maps to compute.

    In plain mode the equation is `phi(xy) = delta * (phi(x)y + x phi(y))`.
    In super mode the second term carries `(-1)^(p(x) deg(phi))`, which needs
    a homogeneous map parity.
    """

    algebra: SuperAlgebra
    delta: Scalar
    parity: Parity = Parity.ANY
    mode: Mode = Mode.PLAIN

    def __post_init__(self):
        object.__setattr__(self, "delta", Scalar.coerce(self.delta))
        if self.mode is Mode.SUPER and self.parity is Parity.ANY:
            raise BadParameter("Superderivations need an even or odd map parity.")


@dataclass(frozen=True)
class MapSpace:
    """A space of linear maps, basis in canonical form over flattened matrices."""

    algebra: SuperAlgebra
    parity: Parity
    space: Subspace
    mode: Mode = Mode.PLAIN
    delta: Optional[Scalar] = None

    @property
    def dim(self) -> int:
        return self.space.dim

    def maps(self) -> List[Map]:
        return [unflatten(vector, self.algebra.dim) for vector in self.space.sparse_basis()]

    def contains(self, phi: Map) -> bool:
        return self.space.contains(flatten(phi, self.algebra.dim))

    def is_subspace_of(self, other: "MapSpace") -> bool:
        return self.space.is_subspace_of(other.space)


def flatten(phi: Map, dim: int) -> Tuple[Scalar, ...]:
    values = [ZERO] * (dim * dim)
    for k, row in phi.items():
        for l, value in row.items():
            values[k * dim + l] = value
    return tuple(values)


def unflatten(vector: Sparse, dim: int) -> Map:
    phi: Map = {}
    for index, value in vector.items():
        if value:
            phi.setdefault(index // dim, {})[index % dim] = value
    return phi


def map_columns(phi: Map, dim: int) -> List[Sparse]:
    """
    Returns:
        List[Sparse]: The images of the basis vectors.
    """
    columns: List[Sparse] = [{} for _ in range(dim)]
    for k, row in phi.items():
        for l, value in row.items():
            if value:
                columns[l][k] = value
    return columns


def apply_map(columns: Sequence[Sparse], vector: Sparse) -> Sparse:
    result: Sparse = {}
    for l, value in vector.items():
        add_into(result, columns[l], value)
    return result


def map_parity(algebra: SuperAlgebra, phi: Map) -> Optional[int]:
    """
    Returns:
        Optional[int]: 0 or 1 for homogeneous nonzero maps, None otherwise.
    """
    degrees = {
        algebra.parity[k] ^ algebra.parity[l] for k, row in phi.items() for l, value in row.items() if value
    }
    return degrees.pop() if len(degrees) == 1 else None


def _allowed(algebra: SuperAlgebra, parity: Parity, k: int, l: int) -> bool:
    if parity is Parity.ANY:
        return True
    return (algebra.parity[k] ^ algebra.parity[l]) == parity.degree


def _unknowns(algebra: SuperAlgebra, parity: Parity) -> List[Tuple[int, int]]:
    dim = algebra.dim
    return [(k, l) for k in range(dim) for l in range(dim) if _allowed(algebra, parity, k, l)]


def _is_super_anticommutative(algebra: SuperAlgebra) -> bool:
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            sign = ONE if algebra.parity[i] and algebra.parity[j] else Scalar(-1)
            if algebra.basis_product(i, j) != scale(algebra.basis_product(j, i), sign):
                return False
    return True


@lru_cache(maxsize=64)
def _pairs(algebra: SuperAlgebra, parity: Parity, mode: Mode) -> Tuple[Tuple[int, int], ...]:
    """Basis pairs whose equations are imposed.

    For supercommutative and superanticommutative tables the equation on
    `(j, i)` is a multiple of the one on `(i, j)` whenever the signs of both
    modes agree.
    """
    dim = algebra.dim
    everything = tuple((i, j) for i in range(dim) for j in range(dim))
    if not (mode is Mode.SUPER or parity is Parity.EVEN or algebra.is_purely_even):
        return everything
    if is_supercommutative(algebra) is None or _is_super_anticommutative(algebra):
        return tuple((i, j) for i in range(dim) for j in range(i, dim))
    return everything


def _sign(algebra: SuperAlgebra, parity: Parity, mode: Mode, i: int) -> Scalar:
    if mode is Mode.SUPER and parity is Parity.ODD and algebra.parity[i]:
        return Scalar(-1)
    return ONE


def _equations(
    algebra: SuperAlgebra,
    parity: Parity,
    mode: Mode,
    product: Scalar = ZERO,
    left: Scalar = ZERO,
    right: Scalar = ZERO,
) -> Equations:
    """Coordinates of `product * phi(e_i e_j) + left * phi(e_i) e_j + right * s e_i phi(e_j)`.

    Returns:
        Equations: For every `(i, j, k)` the coefficients on the unknowns.
    """
    column = {pair: index for index, pair in enumerate(_unknowns(algebra, parity))}
    equations: Equations = {}
    for i, j in _pairs(algebra, parity, mode):
        if product:
            for m, value in algebra.table.get((i, j), ()):
                for k in range(algebra.dim):
                    index = column.get((k, m))
                    if index is not None:
                        add_into(equations.setdefault((i, j, k), {}), {index: value}, product)
        if left:
            for a, entries in algebra.right_index.get(j, ()):
                index = column.get((a, i))
                if index is None:
                    continue
                for k, value in entries:
                    add_into(equations.setdefault((i, j, k), {}), {index: value}, left)
        if right:
            factor = right * _sign(algebra, parity, mode, i)
            for b, entries in algebra.left_index.get(i, ()):
                index = column.get((b, j))
                if index is None:
                    continue
                for k, value in entries:
                    add_into(equations.setdefault((i, j, k), {}), {index: value}, factor)
    return equations


def _rows(equations: Equations, keys: Sequence[Tuple[int, int, int]]) -> SparseRows:
    return {r: equations[key] for r, key in enumerate(keys) if equations.get(key)}


@lru_cache(maxsize=64)
def delta_pencil(algebra: SuperAlgebra, parity: Parity = Parity.ANY, mode: Mode = Mode.PLAIN) -> DeltaPencil:
    """
    Returns:
        DeltaPencil: `M(delta)` whose kernel holds the delta-(super)derivations
            of the requested parity, one column per allowed matrix entry.
    """
    if mode is Mode.SUPER and parity is Parity.ANY:
        raise BadParameter("Superderivations need an even or odd map parity.")
    a = _equations(algebra, parity, mode, product=ONE)
    b = _equations(algebra, parity, mode, left=Scalar(-1), right=Scalar(-1))
    keys = sorted(set(a) | set(b))
    shape = (len(keys), len(_unknowns(algebra, parity)))
    logging.info(f"Built a {shape[0]}x{shape[1]} {mode.value} pencil for {algebra.name}.")
    return DeltaPencil.from_sparse(_rows(a, keys), _rows(b, keys), shape)


def _expand(algebra: SuperAlgebra, parity: Parity, solutions: Subspace) -> Subspace:
    unknowns = _unknowns(algebra, parity)
    dim = algebra.dim
    vectors = []
    for vector in solutions.sparse_basis():
        vectors.append({unknowns[c][0] * dim + unknowns[c][1]: value for c, value in vector.items()})
    return Subspace.from_sparse(vectors, dim * dim)


def delta_defect(
    algebra: SuperAlgebra, phi: Map, delta, mode: Mode = Mode.PLAIN, degree: int = 0
) -> Optional[Tuple[int, int]]:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        phi (Map): The map to check.
        delta (Scalar): The value of delta.
        mode (Mode): Whether the Koszul sign applies.
        degree (int): The parity of `phi`, used in super mode.

    Returns:
        Optional[Tuple[int, int]]: The first basis pair breaking the equation,
            None when `phi` is a delta-(super)derivation.
    """
    delta = Scalar.coerce(delta)
    columns = map_columns(phi, algebra.dim)
    for i in range(algebra.dim):
        sign = Scalar(-1) if mode is Mode.SUPER and degree and algebra.parity[i] else ONE
        for j in range(algebra.dim):
            left = apply_map(columns, algebra.basis_product(i, j))
            right = dict(algebra.product(columns[i], {j: ONE}))
            add_into(right, algebra.product({i: ONE}, columns[j]), sign)
            if left != scale(right, delta):
                return i, j
    return None


def _verify(space: MapSpace, check):
    for index, phi in enumerate(space.maps()):
        witness = check(phi)
        if witness is not None:
            raise VerificationFailed(
                f"Basis map {index} of a {space.algebra.name} solution fails on {witness}."
            )


@lru_cache(maxsize=256)
def _solve(algebra: SuperAlgebra, delta: Scalar, parity: Parity, mode: Mode) -> MapSpace:
    solutions = delta_pencil(algebra, parity, mode).kernel_at(delta)
    space = MapSpace(algebra, parity, _expand(algebra, parity, solutions), mode, delta)
    _verify(space, lambda phi: delta_defect(algebra, phi, delta, mode, parity.degree))
    return space


def solve_delta(query: DerivationQuery) -> MapSpace:
    """
    Args:
        query (DerivationQuery): The algebra, delta, map parity and mode.

    Raises:
        VerificationFailed: When a solution fails the defining equation.

    Returns:
        MapSpace: Every map satisfying the equation, each basis map re-verified
            on all basis pairs.
    """
    return _solve(query.algebra, query.delta, query.parity, query.mode)


def delta_derivations(
    algebra: SuperAlgebra, delta, parity: Parity = Parity.ANY, mode: Mode = Mode.PLAIN
) -> MapSpace:
    return solve_delta(DerivationQuery(algebra, delta, parity, mode))


def _zero_rows(algebra: SuperAlgebra, parity: Parity) -> SparseRows:
    column = {pair: index for index, pair in enumerate(_unknowns(algebra, parity))}
    squares = product_span(algebra, Subspace.whole(algebra.dim))
    rows: SparseRows = {}
    for vector in squares.sparse_basis():
        for k in range(algebra.dim):
            row = {}
            for m, value in vector.items():
                index = column.get((k, m))
                if index is not None:
                    row[index] = value
            if row:
                rows[len(rows)] = row
    return rows


@lru_cache(maxsize=64)
def solve_zero_derivations(algebra: SuperAlgebra, parity: Parity = Parity.ANY) -> MapSpace:
    """
    Returns:
        MapSpace: The maps killing every product.
    """
    rows = _zero_rows(algebra, parity)
    shape = (len(rows), len(_unknowns(algebra, parity)))
    solutions = kernel(sparse_matrix(rows, shape))
    return MapSpace(algebra, parity, _expand(algebra, parity, solutions), Mode.PLAIN, ZERO)


def _centroid_rows(algebra: SuperAlgebra, parity: Parity, mode: Mode) -> SparseRows:
    left = _equations(algebra, parity, mode, product=ONE, left=Scalar(-1))
    right = _equations(algebra, parity, mode, product=ONE, right=Scalar(-1))
    rows: SparseRows = {}
    for equations in (left, right):
        for key in sorted(equations):
            if equations[key]:
                rows[len(rows)] = equations[key]
    return rows


@lru_cache(maxsize=64)
def _centroid(algebra: SuperAlgebra, parity: Parity, mode: Mode) -> MapSpace:
    rows = _centroid_rows(algebra, parity, mode)
    shape = (len(rows), len(_unknowns(algebra, parity)))
    logging.info(f"Solving a {shape[0]}x{shape[1]} centroid system for {algebra.name}.")
    solutions = kernel(sparse_matrix(rows, shape))
    return MapSpace(algebra, parity, _expand(algebra, parity, solutions), mode, HALF)


def centroid(algebra: SuperAlgebra, parity: Parity = Parity.ANY) -> MapSpace:
    """
    Returns:
        MapSpace: The maps with `chi(ab) = chi(a)b = a chi(b)`.
    """
    return _centroid(algebra, parity, Mode.PLAIN)


def supercentroid(algebra: SuperAlgebra, parity: Parity) -> MapSpace:
    """
    Raises:
        BadParameter: When `parity` is not homogeneous.

    Returns:
        MapSpace: The maps with `chi(ab) = chi(a)b = (-1)^(p(a)p(chi)) a chi(b)`.
    """
    if parity is Parity.ANY:
        raise BadParameter("The supercentroid is computed one parity at a time.")
    return _centroid(algebra, parity, Mode.SUPER)


def inner_derivations(algebra: SuperAlgebra, parity: Parity = Parity.ANY) -> MapSpace:
    """
    Returns:
        MapSpace: The span of the left multiplications by basis vectors of
            the requested parity.
    """
    dim = algebra.dim
    vectors = []
    for i in range(dim):
        if parity is not Parity.ANY and algebra.parity[i] != parity.degree:
            continue
        vector = {}
        for l in range(dim):
            for k, value in algebra.basis_product(i, l).items():
                vector[k * dim + l] = value
        vectors.append(vector)
    return MapSpace(algebra, parity, Subspace.from_sparse(vectors, dim * dim))


@dataclass
class ScanReport:
    """Generic dimension and jumps of a delta-derivation pencil."""

    generic_dim: int
    exceptional: Dict[Scalar, int] = field(default_factory=dict)
    probes: Dict[Scalar, int] = field(default_factory=dict)
    irrational_factors: List[str] = field(default_factory=list)
    degenerate: bool = False


def scan_exceptional(
    algebra: SuperAlgebra,
    mode: Mode = Mode.PLAIN,
    parity: Parity = Parity.ANY,
    rng: Optional[random.Random] = None,
) -> ScanReport:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        mode (Mode): Plain derivations or superderivations.
        parity (Parity): Map parity.
        rng (random.Random, optional): Source of the generic samples.

    Returns:
        ScanReport: The exceptional deltas with their exact kernel dims, and
            the dims at -1, 0, 1/2 and 1.
    """
    pencil = delta_pencil(algebra, parity, mode)
    try:
        scan = scan_pencil(pencil, rng or random.Random(0))
    except DegenerateInput:
        size = pencil.shape[1]
        logging.warning(f"The pencil of {algebra.name} is identically zero.")
        return ScanReport(size, probes={delta: size for delta in LITERATURE_DELTAS}, degenerate=True)
    report = ScanReport(scan.generic_kernel_dim)
    for delta in sorted(scan.exceptional, key=lambda value: (value.re, value.im)):
        report.exceptional[delta] = pencil.kernel_dim_at(delta)
    for delta in LITERATURE_DELTAS:
        report.probes[delta] = pencil.kernel_dim_at(delta)
    report.irrational_factors = [str(factor) for factor in scan.irrational_factors]
    return report


@dataclass
class TrivialityVerdict:
    """Classification of every basis direction of a map space."""

    delta: Scalar
    parity: Parity
    mode: Mode
    dim: int
    trivial_dim: int
    directions: Tuple[Verdict, ...] = ()

    @property
    def nontrivial(self) -> bool:
        return Verdict.NONTRIVIAL in self.directions

    @property
    def verdict(self) -> Verdict:
        if not self.dim:
            return Verdict.ZERO
        if self.nontrivial:
            return Verdict.NONTRIVIAL
        return self.directions[0] if len(set(self.directions)) == 1 else self.family

    @property
    def family(self) -> Verdict:
        return family_verdict(self.delta, self.mode)


def family_verdict(delta: Scalar, mode: Mode) -> Verdict:
    if delta == 1:
        return Verdict.IS_DERIVATION
    if delta == HALF:
        return Verdict.IN_SUPERCENTROID if mode is Mode.SUPER else Verdict.IN_CENTROID
    return Verdict.IS_ZERO_DERIVATION


def trivial_family(algebra: SuperAlgebra, delta, parity: Parity, mode: Mode) -> Optional[MapSpace]:
    """
    Returns:
        Optional[MapSpace]: The derivations at 1, the zero-derivations at 0,
            the (super)centroid at 1/2 and None elsewhere.
    """
    delta = Scalar.coerce(delta)
    if delta == 1:
        return delta_derivations(algebra, ONE, parity, mode)
    if not delta:
        return solve_zero_derivations(algebra, parity)
    if delta == HALF:
        if mode is Mode.SUPER:
            return supercentroid(algebra, parity)
        return centroid(algebra, parity)
    return None


def classify(algebra: SuperAlgebra, space: MapSpace, delta=None) -> TrivialityVerdict:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        space (MapSpace): A solution of `solve_delta` on the algebra.
        delta (Scalar, optional): Defaults to the delta of the space.

    Returns:
        TrivialityVerdict: NONTRIVIAL directions exist exactly when the space
            is not inside the span of the trivial maps.
    """
    delta = Scalar.coerce(space.delta if delta is None else delta)
    zero = solve_zero_derivations(algebra, space.parity)
    family = trivial_family(algebra, delta, space.parity, space.mode)
    trivial = zero.space if family is None else zero.space + family.space
    label = family_verdict(delta, space.mode)
    directions = []
    for vector in space.space.basis:
        if zero.space.contains(vector):
            directions.append(Verdict.IS_ZERO_DERIVATION)
        elif trivial.contains(vector):
            directions.append(label)
        else:
            directions.append(Verdict.NONTRIVIAL)
    verdict = TrivialityVerdict(
        delta, space.parity, space.mode, space.dim, trivial.dim, tuple(directions)
    )
    if verdict.nontrivial:
        logging.warning(f"{algebra.name} has a nontrivial {delta}-derivation.")
    return verdict


def unit_multiplication_defect(algebra: SuperAlgebra, space: MapSpace) -> Optional[Tuple[int, int]]:
    """
    Returns:
        Optional[Tuple[int, int]]: The first `(basis map, basis vector)` with
            `phi(x) != phi(1) x`, None when every map multiplies by its value
            at the unit.

    Raises:
        NotUnital: When the algebra has no unit.
    """
    if algebra.unit is None:
        raise NotUnital(f"{algebra.name} has no unit.")
    unit = {i: value for i, value in enumerate(algebra.unit) if value}
    for index, phi in enumerate(space.maps()):
        columns = map_columns(phi, algebra.dim)
        at_unit = apply_map(columns, unit)
        for l in range(algebra.dim):
            if columns[l] != algebra.product(at_unit, {l: ONE}):
                return index, l
    return None


@dataclass
class StructureCheck:
    """Outcome of a structural statement checked on one algebra."""

    name: str
    passed: bool
    witness: Optional[str] = None
    dims: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def _bracket(algebra: SuperAlgebra, x: Sparse, y: Sparse) -> Sparse:
    value = dict(algebra.product(x, y))
    add_into(value, algebra.product(y, x), Scalar(-1))
    return value


def check_commutator_centroid(algebra: SuperAlgebra) -> StructureCheck:
    """Checks that 1/2-derivations of a unital flexible algebra lie in the
    centroid of its commutator algebra.

    Raises:
        NotUnital: When the algebra has no unit.
        NotFlexible: When the flexibility identity fails.
        GradedInput: When the algebra has odd elements.

    Returns:
        StructureCheck: The result, with the failing map and pair as witness.
    """
    if algebra.unit is None:
        raise NotUnital(f"{algebra.name} has no unit.")
    flexibility = check_identity_multilinear(algebra, Identity.FLEXIBILITY)
    if not flexibility:
        raise NotFlexible(flexibility.describe(algebra))
    space = delta_derivations(algebra, HALF)
    commutators = centroid(minus_functor(algebra))
    result = StructureCheck(
        "commutator_centroid",
        True,
        dims={"half_derivations": space.dim, "commutator_centroid": commutators.dim},
    )
    basis = [{i: ONE} for i in range(algebra.dim)]
    for index, phi in enumerate(space.maps()):
        columns = map_columns(phi, algebra.dim)
        for i in range(algebra.dim):
            for j in range(algebra.dim):
                if _bracket(algebra, columns[i], basis[j]) != _bracket(algebra, basis[i], columns[j]):
                    result.passed = False
                elif apply_map(columns, _bracket(algebra, basis[i], basis[j])) != _bracket(
                    algebra, columns[i], basis[j]
                ):
                    result.passed = False
                if not result.passed:
                    result.witness = f"map {index} at ({algebra.label(i)}, {algebra.label(j)})"
                    return result
        if not commutators.contains(phi):
            result.passed = False
            result.witness = f"map {index} is outside the commutator centroid"
            return result
    return result


def check_functor_split(algebra: SuperAlgebra, deltas: Sequence = FUNCTOR_DELTAS) -> StructureCheck:
    """Checks that the delta-derivations and the centroid of an ordinary
    algebra are those shared by its plus and minus algebras.

    Returns:
        StructureCheck: The result, naming the first delta or centroid that differs.
    """
    plus, minus = plus_functor(algebra), minus_functor(algebra)
    result = StructureCheck("functor_split", True)
    for delta in deltas:
        delta = Scalar.coerce(delta)
        own = delta_derivations(algebra, delta)
        shared = stacked_kernel([delta_pencil(plus).at(delta), delta_pencil(minus).at(delta)])
        result.dims[f"delta={delta}"] = own.dim
        if own.space != shared:
            result.passed = False
            result.witness = f"delta={delta}: dims {own.dim} and {shared.dim}"
            return result
    own = centroid(algebra)
    cols = algebra.dim**2
    shared = stacked_kernel(
        [
            sparse_matrix(rows, (len(rows), cols))
            for rows in (
                _centroid_rows(plus, Parity.ANY, Mode.PLAIN),
                _centroid_rows(minus, Parity.ANY, Mode.PLAIN),
            )
        ]
    )
    result.dims["centroid"] = own.dim
    if own.space != shared:
        result.passed = False
        result.witness = f"centroid: dims {own.dim} and {shared.dim}"
    return result


def check_plus_transfer(
    algebra: SuperAlgebra,
    deltas: Sequence = PROBE_DELTAS,
    parities: Sequence[Parity] = (Parity.EVEN, Parity.ODD),
) -> StructureCheck:
    """Checks that every delta-superderivation of the algebra is one of its
    plus algebra.

    Returns:
        StructureCheck: The result, naming the first delta and parity breaking
            the inclusion.
    """
    plus = plus_functor(algebra)
    result = StructureCheck("plus_transfer", True)
    for delta in deltas:
        for parity in parities:
            own = delta_derivations(algebra, delta, parity, Mode.SUPER)
            symmetric = delta_derivations(plus, delta, parity, Mode.SUPER)
            result.dims[f"delta={delta}/{parity.value}"] = own.dim
            if not own.is_subspace_of(symmetric):
                result.passed = False
                result.witness = f"delta={delta}, parity={parity.value}"
                return result
    return result


def check_nc_jordan(algebra: SuperAlgebra, deltas: Sequence = PROBE_DELTAS) -> StructureCheck:
    """Checks on a noncommutative Jordan algebra that its delta-derivations
    are those of its plus algebra and that both share their center.

    Raises:
        GradedInput: When the algebra has odd elements.

    Returns:
        StructureCheck: The result, naming the first failing identity, delta or
            the center.
    """
    result = StructureCheck("nc_jordan", True)
    identity = check_identity_multilinear(algebra, Identity.NC_JORDAN)
    if not identity:
        result.passed = False
        result.witness = identity.describe(algebra)
        return result
    plus = plus_functor(algebra)
    for delta in deltas:
        own = delta_derivations(algebra, delta)
        result.dims[f"delta={delta}"] = own.dim
        if not own.is_subspace_of(delta_derivations(plus, delta)):
            result.passed = False
            result.witness = f"delta={delta}"
            return result
    own_center, plus_center = center(algebra), center(plus)
    result.dims["center"] = own_center.dim
    if own_center != plus_center:
        result.passed = False
        result.witness = f"center: dims {own_center.dim} and {plus_center.dim}"
    return result


def psi_bracket(algebra: SuperAlgebra, phi: Map, x: Element) -> Map:
    """
    Args:
        algebra (SuperAlgebra): A Lie superalgebra.
        phi (Map): An odd map.
        x (Element): An odd element.

    Raises:
        ParityMismatch: When `phi` or `x` is not odd.

    Returns:
        Map: `phi ad_x + ad_x phi`.
    """
    if phi and map_parity(algebra, phi) != 1:
        raise ParityMismatch("The map is not odd.")
    vector = x.sparse
    if not vector:
        return {}
    if algebra.homogeneous_parity(vector) != 1:
        raise ParityMismatch("The element is not odd.")
    columns = map_columns(phi, algebra.dim)
    result: Map = {}
    for l in range(algebra.dim):
        image = apply_map(columns, algebra.product(vector, {l: ONE}))
        add_into(image, algebra.product(vector, columns[l]))
        for k, value in image.items():
            result.setdefault(k, {})[l] = value
    return result

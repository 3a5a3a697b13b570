"""Exact linear algebra over Q(i) on top of sympy's `DomainMatrix`."""

import logging
import random

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import sympy

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .exceptions import DegenerateInput, NotCommuting, NotDiagonalizable, VerificationFailed
from .exactfield import (
    DELTA,
    ONE,
    Poly,
    Scalar,
    ZERO,
    common_rational_roots,
    from_domain,
    nonlinear_factors,
    poly_gcd,
    to_domain,
)


Matrix = DomainMatrix
Vector = Tuple[Scalar, ...]
SparseRows = Dict[int, Dict[int, Scalar]]

EXCLUDED_SAMPLES = {Fraction(0), Fraction(1, 2), Fraction(1), Fraction(-1)}
SAMPLE_BOUND = 10**6
MINOR_CHOICES = 3


def domain_for(values: Iterable[Scalar]):
    """
    Args:
        values (Iterable[Scalar]): Every entry of the matrix to build.

    Returns:
        Domain: `QQ` when every value is real, `QQ_I` otherwise.
    """
    return QQ if all(value.is_real for value in values) else QQ_I


def sparse_matrix(rows: SparseRows, shape: Tuple[int, int], domain=None) -> Matrix:
    """
    Args:
        rows (SparseRows): Nonzero entries as `{row: {col: value}}`.
        shape (Tuple[int, int]): The matrix shape.
        domain (Domain, optional): Forced domain, inferred when omitted.

    Returns:
        Matrix: The matrix in sympy's sparse format.
    """
    if domain is None:
        domain = domain_for(value for row in rows.values() for value in row.values())
    converted = {}
    for i, row in rows.items():
        entries = {j: to_domain(value, domain) for j, value in row.items() if value}
        if entries:
            converted[i] = entries
    return DomainMatrix(converted, shape, domain)


def matrix_from_rows(rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> Matrix:
    """
    Args:
        rows (Sequence[Sequence[Scalar]]): Dense rows, integers accepted.
        cols (int, optional): Column count, required when there are no rows.

    Returns:
        Matrix: The matrix.
    """
    cols = len(rows[0]) if rows else (cols or 0)
    sparse = {
        i: {j: Scalar.coerce(value) for j, value in enumerate(row) if value}
        for i, row in enumerate(rows)
    }
    return sparse_matrix(sparse, (len(rows), cols))


def matrix_entries(matrix: Matrix) -> SparseRows:
    """
    Args:
        matrix (Matrix): A sympy domain matrix over `QQ` or `QQ_I`.

    Returns:
        SparseRows: The nonzero entries converted to scalars.
    """
    domain = matrix.domain
    rep = matrix.to_sparse().rep
    return {
        i: {j: from_domain(value, domain) for j, value in row.items()}
        for i, row in rep.items()
        if row
    }


def matrix_rows(matrix: Matrix) -> List[Vector]:
    """
    Args:
        matrix (Matrix): The matrix to read.

    Returns:
        List[Vector]: The dense rows as scalar tuples.
    """
    rows, cols = matrix.shape
    entries = matrix_entries(matrix)
    return [
        tuple(entries.get(i, {}).get(j, ZERO) for j in range(cols)) for i in range(rows)
    ]


def unify(*matrices: Matrix) -> List[Matrix]:
    """Converts every matrix to `QQ_I` as soon as one of them needs it."""
    if all(matrix.domain == QQ for matrix in matrices):
        return list(matrices)
    return [matrix.convert_to(QQ_I) for matrix in matrices]


def is_zero_matrix(matrix: Matrix) -> bool:
    return not any(matrix.to_sparse().rep.values())


def rref(matrix: Matrix) -> Tuple[Matrix, int, List[int]]:
    """
    Args:
        matrix (Matrix): The matrix to reduce.

    Returns:
        Tuple[Matrix, int, List[int]]:
            The reduced row echelon form, the rank and the pivot columns.
    """
    rows, cols = matrix.shape
    if not rows or not cols:
        return matrix, 0, []
    reduced, pivots = matrix.to_sparse().rref()
    return reduced, len(pivots), list(pivots)


def rank(matrix: Matrix) -> int:
    return rref(matrix)[1]


def _apply(rows: SparseRows, vector: Dict[int, Scalar]) -> Dict[int, Scalar]:
    result = {}
    for i, row in rows.items():
        value = ZERO
        for j, entry in row.items():
            if j in vector:
                value = value + entry * vector[j]
        if value:
            result[i] = value
    return result


def _kernel_vectors(matrix: Matrix) -> List[Dict[int, Scalar]]:
    rows, cols = matrix.shape
    if not rows:
        return [{j: ONE} for j in range(cols)]
    reduced, _, pivots = rref(matrix)
    entries = matrix_entries(reduced)
    pivot_rows = {}
    for i, row in entries.items():
        pivot_rows[min(row)] = row
    vectors = []
    for free in range(cols):
        if free in pivot_rows:
            continue
        vector = {free: ONE}
        for pivot, row in pivot_rows.items():
            if free in row:
                vector[pivot] = -row[free]
        vectors.append(vector)
    original = matrix_entries(matrix)
    for vector in vectors:
        if _apply(original, vector):
            raise VerificationFailed("Kernel vector failed exact verification.")
    return vectors


@dataclass(frozen=True)
class Subspace:
    """A subspace given by its canonical basis in reduced row echelon form."""

    ambient_dim: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        """
        Args:
            vectors (Iterable[Sequence[Scalar]]): A spanning set.
            ambient_dim (int): The dimension of the ambient space.

        Returns:
            Subspace: The canonical form of the span.
        """
        sparse = {}
        for i, vector in enumerate(vectors):
            if isinstance(vector, dict):
                sparse[i] = dict(vector)
            else:
                sparse[i] = {j: value for j, value in enumerate(vector) if value}
        return cls.from_sparse(list(sparse.values()), ambient_dim)

    @classmethod
    def from_sparse(cls, vectors: Sequence[Dict[int, Scalar]], ambient_dim: int) -> "Subspace":
        rows = {i: vector for i, vector in enumerate(vectors) if vector}
        if not rows:
            return cls(ambient_dim, ())
        reduced, rank_, _ = rref(sparse_matrix(rows, (len(vectors), ambient_dim)))
        entries = matrix_entries(reduced)
        basis = []
        for i in sorted(entries)[:rank_]:
            row = entries[i]
            basis.append(tuple(row.get(j, ZERO) for j in range(ambient_dim)))
        return cls(ambient_dim, tuple(basis))

    @classmethod
    def whole(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            tuple(
                tuple(ONE if i == j else ZERO for j in range(ambient_dim))
                for i in range(ambient_dim)
            ),
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> List[int]:
        return [next(j for j, value in enumerate(row) if value) for row in self.basis]

    def sparse_basis(self) -> List[Dict[int, Scalar]]:
        return [{j: value for j, value in enumerate(row) if value} for row in self.basis]

    def coordinates(self, vector: Sequence[Scalar]) -> Optional[List[Scalar]]:
        """
        Args:
            vector (Sequence[Scalar]): A vector of the ambient space.

        Returns:
            Optional[List[Scalar]]:
                Coordinates in the canonical basis, None when the vector is
                not in the subspace.
        """
        coordinates = [vector[pivot] for pivot in self.pivots]
        rebuilt = [ZERO] * self.ambient_dim
        for value, row in zip(coordinates, self.basis):
            if value:
                for j, entry in enumerate(row):
                    if entry:
                        rebuilt[j] = rebuilt[j] + value * entry
        if any(a != b for a, b in zip(rebuilt, vector)):
            return None
        return coordinates

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return self.coordinates(vector) is not None

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        """
        Args:
            other (Subspace): A subspace of the same ambient space.

        Returns:
            Subspace: The intersection, computed from the kernel of `[U^T | -V^T]`.
        """
        if not self.dim or not other.dim:
            return Subspace(self.ambient_dim, ())
        columns = list(self.basis) + [tuple(-value for value in row) for row in other.basis]
        rows = {
            j: {i: column[j] for i, column in enumerate(columns) if column[j]}
            for j in range(self.ambient_dim)
        }
        matrix = sparse_matrix(rows, (self.ambient_dim, len(columns)))
        vectors = []
        for solution in _kernel_vectors(matrix):
            vector = [ZERO] * self.ambient_dim
            for i, value in solution.items():
                if i < self.dim:
                    for j, entry in enumerate(self.basis[i]):
                        if entry:
                            vector[j] = vector[j] + value * entry
            vectors.append(vector)
        return Subspace.span(vectors, self.ambient_dim)


def kernel(matrix: Matrix) -> Subspace:
    """
    Args:
        matrix (Matrix): The matrix.

    Returns:
        Subspace: The null space, each basis vector verified by multiplication.
    """
    return Subspace.from_sparse(_kernel_vectors(matrix), matrix.shape[1])


def stacked_kernel(matrices: Sequence[Matrix]) -> Subspace:
    """
    Args:
        matrices (Sequence[Matrix]): Matrices sharing their column count.

    Returns:
        Subspace: The common null space.
    """
    cols = matrices[0].shape[1]
    rows: SparseRows = {}
    for matrix in matrices:
        for row in matrix_entries(matrix).values():
            rows[len(rows)] = row
    return kernel(sparse_matrix(rows, (len(rows), cols)))


class DeltaPencil:
    """The affine family of constraint matrices `M(delta) = a + delta * b`."""

    def __init__(self, a: Matrix, b: Matrix):
        if a.shape != b.shape:
            raise ValueError(f"Pencil shapes {a.shape} and {b.shape} differ.")
        self.a = a
        self.b = b

    @classmethod
    def from_sparse(cls, a: SparseRows, b: SparseRows, shape: Tuple[int, int]) -> "DeltaPencil":
        domain = domain_for(
            value for rows in (a, b) for row in rows.values() for value in row.values()
        )
        return cls(sparse_matrix(a, shape, domain), sparse_matrix(b, shape, domain))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.a.shape

    @cached_property
    def a_rows(self) -> SparseRows:
        return matrix_entries(self.a)

    @cached_property
    def b_rows(self) -> SparseRows:
        return matrix_entries(self.b)

    @property
    def is_zero(self) -> bool:
        return not self.a_rows and not self.b_rows

    @cached_property
    def components(self) -> List[Tuple[List[int], List[int]]]:
        """
        Returns:
            List[Tuple[List[int], List[int]]]:
                Row and column sets of the connected components of the
                row/column incidence graph. Columns that no row touches are
                left out.
        """
        parent = {}

        def find(node):
            while parent[node] != node:
                parent[node] = parent[parent[node]]
                node = parent[node]
            return node

        row_columns = {}
        for rows in (self.a_rows, self.b_rows):
            for i, row in rows.items():
                row_columns.setdefault(i, set()).update(row)
        for columns in row_columns.values():
            columns = sorted(columns)
            for column in columns:
                parent.setdefault(column, column)
            for column in columns[1:]:
                root_a, root_b = find(columns[0]), find(column)
                if root_a != root_b:
                    parent[max(root_a, root_b)] = min(root_a, root_b)
        groups: Dict[int, Tuple[List[int], List[int]]] = {}
        for column in sorted(parent):
            groups.setdefault(find(column), ([], []))[1].append(column)
        for i in sorted(row_columns):
            columns = row_columns[i]
            if columns:
                groups[find(min(columns))][0].append(i)
        return [groups[key] for key in sorted(groups)]

    @property
    def isolated_columns(self) -> List[int]:
        touched = {column for _, columns in self.components for column in columns}
        return [column for column in range(self.shape[1]) if column not in touched]

    def component_matrix(self, index: int, delta: Scalar) -> Matrix:
        """
        Args:
            index (int): The component index.
            delta (Scalar): The value of delta.

        Returns:
            Matrix: `M(delta)` restricted to the component, in local indices.
        """
        rows, columns = self.components[index]
        local = {column: j for j, column in enumerate(columns)}
        entries: SparseRows = {}
        for i_local, i in enumerate(rows):
            row: Dict[int, Scalar] = {}
            for column, value in self.a_rows.get(i, {}).items():
                row[local[column]] = value
            if delta:
                for column, value in self.b_rows.get(i, {}).items():
                    row[local[column]] = row.get(local[column], ZERO) + delta * value
            entries[i_local] = {j: value for j, value in row.items() if value}
        return sparse_matrix(entries, (len(rows), len(columns)))

    def at(self, delta: Scalar) -> Matrix:
        """
        Args:
            delta (Scalar): The value of delta.

        Returns:
            Matrix: The full matrix `M(delta)`.
        """
        entries: SparseRows = {}
        for i in set(self.a_rows) | set(self.b_rows):
            row = dict(self.a_rows.get(i, {}))
            for column, value in self.b_rows.get(i, {}).items():
                row[column] = row.get(column, ZERO) + delta * value
            entries[i] = {j: value for j, value in row.items() if value}
        return sparse_matrix(entries, self.shape)

    def kernel_at(self, delta: Scalar) -> Subspace:
        """
        Args:
            delta (Scalar): The value of delta.

        Returns:
            Subspace: The null space of `M(delta)`, solved component by component.
        """
        vectors = [{column: ONE} for column in self.isolated_columns]
        for index, (_, columns) in enumerate(self.components):
            for solution in _kernel_vectors(self.component_matrix(index, delta)):
                vectors.append({columns[j]: value for j, value in solution.items()})
        return Subspace.from_sparse(vectors, self.shape[1])

    def kernel_dim_at(self, delta: Scalar) -> int:
        dim = len(self.isolated_columns)
        for index, (_, columns) in enumerate(self.components):
            dim += len(columns) - rank(self.component_matrix(index, delta))
        return dim


def random_delta(rng: random.Random) -> Scalar:
    """
    Args:
        rng (random.Random): The generator to draw from.

    Returns:
        Scalar: A random rational avoiding {0, 1/2, 1, -1}.
    """
    while True:
        value = Fraction(rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND), rng.randint(1, SAMPLE_BOUND))
        if value not in EXCLUDED_SAMPLES:
            return Scalar(value)


def _generic_rank(pencil: DeltaPencil, index: int, rng: random.Random) -> Tuple[int, List[Scalar]]:
    ranks: List[int] = []
    samples: List[Scalar] = []
    while True:
        delta = random_delta(rng)
        ranks.append(rank(pencil.component_matrix(index, delta)))
        samples.append(delta)
        best = max(ranks)
        if ranks.count(best) >= 2:
            return best, [s for s, r in zip(samples, ranks) if r == best]


def _minor_determinant(
    pencil: DeltaPencil, index: int, delta: Scalar, rng: random.Random, size: int
) -> Optional[Poly]:
    """Determinant in delta of a generic-rank minor chosen by pivoting at `delta`."""
    rows, columns = pencil.components[index]
    order = list(range(len(rows)))
    rng.shuffle(order)
    matrix = pencil.component_matrix(index, delta)
    shuffled = matrix.extract(order, list(range(len(columns))))
    _, rank_, pivot_columns = rref(shuffled)
    if rank_ != size:
        return None
    _, _, pivot_rows = rref(shuffled.extract(list(range(len(rows))), pivot_columns).transpose())
    chosen_rows = [rows[order[i]] for i in pivot_rows]
    chosen_columns = [columns[j] for j in pivot_columns]
    ring = QQ_I[DELTA] if pencil.a.domain == QQ_I else QQ[DELTA]
    entries = []
    for i in chosen_rows:
        a_row, b_row = pencil.a_rows.get(i, {}), pencil.b_rows.get(i, {})
        entry_row = []
        for column in chosen_columns:
            expression = _sympy_scalar(a_row.get(column, ZERO)) + DELTA * _sympy_scalar(
                b_row.get(column, ZERO)
            )
            entry_row.append(ring.from_sympy(sympy.expand(expression)))
        entries.append(entry_row)
    determinant = DomainMatrix(entries, (size, size), ring).det()
    return Poly.from_sympy(ring.to_sympy(determinant))


def _sympy_scalar(value: Scalar) -> sympy.Expr:
    return sympy.Rational(value.re.numerator, value.re.denominator) + sympy.I * sympy.Rational(
        value.im.numerator, value.im.denominator
    )


@dataclass
class PencilScan:
    """Outcome of an exceptional delta search."""

    generic_kernel_dim: int
    exceptional: Set[Scalar]
    irrational_factors: List[Poly]


def scan_pencil(pencil: DeltaPencil, rng: Optional[random.Random] = None) -> PencilScan:
    """Finds every rational delta where the kernel of the pencil jumps.

    Each connected component is handled on its own: its generic rank is the
    rank at random samples, and every rational jump is a common root of the
    determinants of several generic-rank minors. Candidates are verified by an
    exact kernel computation.

    Args:
        pencil (DeltaPencil): The constraint pencil.
        rng (random.Random, optional): Source of the random samples.

    Raises:
        DegenerateInput: When the pencil is identically zero.

    Returns:
        PencilScan: Generic kernel dimension, exceptional deltas and the
            nonlinear determinant factors that may hide irrational jumps.
    """
    if pencil.is_zero:
        raise DegenerateInput("The pencil is identically zero.")
    rng = rng or random.Random(0)
    generic_dim = len(pencil.isolated_columns)
    exceptional: Set[Scalar] = set()
    irrational: List[Poly] = []
    for index, (rows, columns) in enumerate(pencil.components):
        generic_rank, samples = _generic_rank(pencil, index, rng)
        generic_dim += len(columns) - generic_rank
        if not generic_rank:
            continue
        determinants = []
        attempts = 0
        while len(determinants) < MINOR_CHOICES and attempts < 4 * MINOR_CHOICES:
            delta = samples[attempts % len(samples)] if attempts < len(samples) else random_delta(rng)
            attempts += 1
            determinant = _minor_determinant(pencil, index, delta, rng, generic_rank)
            if determinant is not None and determinant.degree != Poly.ZERO_DEGREE:
                determinants.append(determinant)
        if not determinants:
            logging.warning(
                f"No generic rank minor found for component {index} of the pencil, "
                "its exceptional deltas were not searched."
            )
            continue
        candidates: Optional[Set[Scalar]] = None
        for determinant in determinants:
            roots = common_rational_roots(determinant)
            candidates = roots if candidates is None else candidates & roots
        for candidate in sorted(candidates or set(), key=lambda value: (value.re, value.im)):
            if rank(pencil.component_matrix(index, candidate)) < generic_rank:
                exceptional.add(candidate)
            else:
                logging.info(f"Rejected exceptional delta candidate {candidate}.")
        common = poly_gcd(determinants)
        if common.is_real:
            for factor in nonlinear_factors(common):
                logging.warning(f"Determinant factor {factor} may hide irrational jumps.")
                irrational.append(factor)
    return PencilScan(generic_dim, exceptional, irrational)


def pencil_exceptional_deltas(
    pencil: DeltaPencil, rng: Optional[random.Random] = None
) -> Tuple[int, Set[Scalar]]:
    """
    Args:
        pencil (DeltaPencil): The constraint pencil.
        rng (random.Random, optional): Source of the random samples.

    Returns:
        Tuple[int, Set[Scalar]]: The generic kernel dimension and the rational
            deltas where the kernel dimension exceeds it.
    """
    scan = scan_pencil(pencil, rng)
    return scan.generic_kernel_dim, scan.exceptional


def half_integers(bound: int) -> List[Scalar]:
    """
    Args:
        bound (int): Largest absolute value.

    Returns:
        List[Scalar]: Every multiple of 1/2 in [-bound, bound].
    """
    return [Scalar(Fraction(k, 2)) for k in range(-2 * bound, 2 * bound + 1)]


def gaussian_half_integers(bound: int) -> List[Scalar]:
    """
    Args:
        bound (int): Largest absolute value of both parts.

    Returns:
        List[Scalar]: Every `(a + b i) / 2` with |a|, |b| <= 2 * bound.
    """
    return [
        Scalar(Fraction(a, 2), Fraction(b, 2))
        for a in range(-2 * bound, 2 * bound + 1)
        for b in range(-2 * bound, 2 * bound + 1)
    ]


def simultaneous_eigenspaces(
    ops: Sequence[Matrix], candidates: Optional[Sequence[Scalar]] = None, dim: Optional[int] = None
) -> List[Tuple[Tuple[Scalar, ...], Subspace]]:
    """Splits the space into joint eigenspaces of commuting operators.

    Args:
        ops (Sequence[Matrix]): Square matrices of the same size.
        candidates (Sequence[Scalar], optional): The eigenvalues to try.
            Defaults to half integers bounded by the size.
        dim (int, optional): Ambient dimension, required when `ops` is empty.

    Raises:
        NotCommuting: When two operators do not commute.
        NotDiagonalizable: When the joint eigenspaces do not fill the space.

    Returns:
        List[Tuple[Tuple[Scalar, ...], Subspace]]: Weights and eigenspaces.
    """
    if dim is None:
        dim = ops[0].shape[0]
    ops = unify(*ops) if ops else []
    for i, left in enumerate(ops):
        for right in ops[i + 1 :]:
            if not is_zero_matrix(left * right - right * left):
                raise NotCommuting(f"Operators {i} and {ops.index(right)} do not commute.")
    if candidates is None:
        candidates = half_integers(max(dim, 1))
    spaces: List[Tuple[Tuple[Scalar, ...], Subspace]] = [((), Subspace.whole(dim))]
    for op in ops:
        entries = matrix_entries(op)
        refined = []
        for weight, space in spaces:
            image = [_apply(entries, vector) for vector in space.sparse_basis()]
            found = 0
            for value in candidates:
                # coefficients c with (op - value) (sum c_r v_r) = 0
                rows: SparseRows = {}
                for r, (vector, mapped) in enumerate(zip(space.sparse_basis(), image)):
                    column = dict(mapped)
                    for j, entry in vector.items():
                        column[j] = column.get(j, ZERO) - value * entry
                    for j, entry in column.items():
                        if entry:
                            rows.setdefault(j, {})[r] = entry
                solutions = _kernel_vectors(sparse_matrix(rows, (dim, space.dim)))
                if not solutions:
                    continue
                vectors = []
                basis = space.sparse_basis()
                for solution in solutions:
                    vector: Dict[int, Scalar] = {}
                    for r, coefficient in solution.items():
                        for j, entry in basis[r].items():
                            vector[j] = vector.get(j, ZERO) + coefficient * entry
                    vectors.append({j: entry for j, entry in vector.items() if entry})
                eigenspace = Subspace.from_sparse(vectors, dim)
                found += eigenspace.dim
                refined.append((weight + (value,), eigenspace))
                if found == space.dim:
                    break
            if found != space.dim:
                raise NotDiagonalizable(
                    f"Candidate eigenvalues cover {found} of {space.dim} dimensions."
                )
        spaces = refined
    total = sum(space.dim for _, space in spaces)
    if total != dim:
        raise NotDiagonalizable(f"Eigenspaces add up to {total} instead of {dim}.")
    return spaces

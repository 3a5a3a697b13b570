"""Lie superalgebras of Cartan type, sl(m, n) and their root decompositions."""

import logging
import random

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .enums import Claims
from .exactfield import I, ONE, ZERO, Scalar
from .exceptions import BadParameter, EqualBlocks, OutOfRange
from .functions import Monomial, apply_derivation, subsets
from .jordancons import matrix_superalgebra, supertrace_functional
from .linalg import Subspace, half_integers, simultaneous_eigenspaces
from .superalg import (
    Element,
    Meta,
    Sparse,
    SuperAlgebra,
    ad_operator,
    add_into,
    combination_label,
    minus_functor,
    monomial_label,
    product_span,
    restrict,
)


Derivation = Dict[int, Dict[Monomial, Scalar]]
Weight = Tuple[Scalar, ...]

W_RANGE = (2, 5)
S_RANGE = (3, 4)
STILDE_VALUES = (4,)
H_VALUES = (4, 5)


@dataclass(frozen=True)
class WBasisElement:
    """The derivation `xi_S d/d(xi_i)` of the Grassmann algebra."""

    monomial: Monomial
    direction: int

    @property
    def parity(self) -> int:
        return (len(self.monomial) + 1) % 2

    @property
    def degree(self) -> int:
        return len(self.monomial) - 1

    @property
    def label(self) -> str:
        derivative = f"d{self.direction}"
        if not self.monomial:
            return derivative
        return f"{monomial_label(self.monomial, 'xi')}*{derivative}"

    def derivation(self) -> Derivation:
        return {self.direction: {self.monomial: ONE}}


@lru_cache(maxsize=None)
def w_basis(n: int) -> Tuple[WBasisElement, ...]:
    """
    Returns:
        Tuple[WBasisElement, ...]: Subsets in graded lexicographic order, then direction.
    """
    return tuple(
        WBasisElement(monomial, direction)
        for monomial in subsets(n)
        for direction in range(1, n + 1)
    )


@lru_cache(maxsize=None)
def _w_position(n: int) -> Dict[Tuple[Monomial, int], int]:
    return {(b.monomial, b.direction): index for index, b in enumerate(w_basis(n))}


def apply(derivation: Derivation, polynomial: Dict[Monomial, Scalar]) -> Dict[Monomial, Scalar]:
    """
    Returns:
        Dict[Monomial, Scalar]: The derivation `sum_i P_i d/d(xi_i)` applied to a polynomial.
    """
    result: Dict[Monomial, Scalar] = {}
    for direction, coefficient in derivation.items():
        add_into(result, apply_derivation(coefficient, direction, polynomial))
    return result


def bracket(n: int, left: Derivation, left_parity: int, right: Derivation, right_parity: int) -> Derivation:
    """Supercommutator of two homogeneous derivations, read off on the generators.

    Returns:
        Derivation: `[D1, D2](xi_j) = D1(D2(xi_j)) - (-1)^(p1 p2) D2(D1(xi_j))`.
    """
    sign = Scalar(-1) if left_parity and right_parity else ONE
    result: Derivation = {}
    for j in range(1, n + 1):
        value = apply(left, right.get(j, {}))
        add_into(value, apply(right, left.get(j, {})), -sign)
        if value:
            result[j] = value
    return result


def to_coordinates(n: int, derivation: Derivation) -> Sparse:
    position = _w_position(n)
    vector: Sparse = {}
    for direction, polynomial in derivation.items():
        for monomial, value in polynomial.items():
            if value:
                vector[position[(monomial, direction)]] = value
    return vector


def w_vector_label(n: int, vector: Sparse) -> str:
    return combination_label([element.label for element in w_basis(n)], vector)


def _check_range(name: str, n: int, allowed: Sequence[int]):
    if n not in allowed:
        raise OutOfRange(f"{name}({n}) is not supported, use n in {sorted(allowed)}.")


@lru_cache(maxsize=None)
def _w_table(n: int) -> Dict[Tuple[int, int], List[Tuple[int, Scalar]]]:
    basis = w_basis(n)
    derivations = [element.derivation() for element in basis]
    table = {}
    for a, left in enumerate(basis):
        for b, right in enumerate(basis):
            value = bracket(n, derivations[a], left.parity, derivations[b], right.parity)
            if value:
                table[(a, b)] = sorted(to_coordinates(n, value).items())
    return table


def build_W(n: int) -> SuperAlgebra:
    """
    Args:
        n (int): Number of Grassmann generators, from 2 to 5.

    Raises:
        OutOfRange: For other values of `n`.

    Returns:
        SuperAlgebra: The Lie superalgebra of derivations of the Grassmann algebra.
    """
    _check_range("W", n, range(W_RANGE[0], W_RANGE[1] + 1))
    basis = w_basis(n)
    meta = Meta(
        claims=Claims.LIE_SUPER,
        family="W",
        params={"n": n},
        labels=[element.label for element in basis],
    )
    algebra = SuperAlgebra(f"W({n})", [element.parity for element in basis], _w_table(n), None, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def w_degree(n: int, index: int) -> int:
    return w_basis(n)[index].degree


def w_grading_violation(algebra: SuperAlgebra) -> Optional[Tuple[int, int]]:
    """
    Returns:
        Optional[Tuple[int, int]]: A basis pair whose bracket leaves W_(k+m), if any.
    """
    n = algebra.meta.params["n"]
    for (a, b), entries in algebra.table.items():
        expected = w_degree(n, a) + w_degree(n, b)
        if any(w_degree(n, c) != expected for c, _ in entries):
            return a, b
    return None


def _partial(index: int, monomial: Monomial) -> Dict[Monomial, Scalar]:
    return apply_derivation({(): ONE}, index, {monomial: ONE})


def _s_derivations(n: int) -> List[Derivation]:
    derivations = []
    for monomial in subsets(n):
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                derivation: Derivation = {}
                add_into(derivation.setdefault(j, {}), _partial(i, monomial))
                add_into(derivation.setdefault(i, {}), _partial(j, monomial))
                derivation = {key: value for key, value in derivation.items() if value}
                if derivation:
                    derivations.append(derivation)
    return derivations


def _times_one_minus_top(n: int, derivation: Derivation) -> Derivation:
    top = tuple(range(1, n + 1))
    result: Derivation = {}
    for direction, polynomial in derivation.items():
        value = dict(polynomial)
        constant = polynomial.get((), ZERO)
        if constant:
            add_into(value, {top: constant}, Scalar(-1))
        if value:
            result[direction] = value
    return result


@lru_cache(maxsize=None)
def s_subspace(n: int) -> Subspace:
    """
    Returns:
        Subspace: S(n) in W(n) coordinates.
    """
    vectors = [to_coordinates(n, d) for d in _s_derivations(n)]
    return Subspace.from_sparse(vectors, n * 2**n)


@lru_cache(maxsize=None)
def stilde_subspace(n: int) -> Subspace:
    """
    Returns:
        Subspace: The deformed algebra `(1 - xi_1...xi_n) S(n)` in W(n) coordinates.
    """
    vectors = [to_coordinates(n, _times_one_minus_top(n, d)) for d in _s_derivations(n)]
    return Subspace.from_sparse(vectors, n * 2**n)


def hamiltonian(n: int, polynomial: Dict[Monomial, Scalar]) -> Derivation:
    """
    Returns:
        Derivation: `D_f = sum_i (df/d(xi_i)) d/d(xi_i)`.
    """
    derivation: Derivation = {}
    for i in range(1, n + 1):
        value = apply_derivation({(): ONE}, i, polynomial)
        if value:
            derivation[i] = value
    return derivation


@lru_cache(maxsize=None)
def htilde_subspace(n: int) -> Subspace:
    """
    Returns:
        Subspace: The span of the `D_f` over monomials `f != 1`, in W(n) coordinates.
    """
    vectors = [to_coordinates(n, hamiltonian(n, {f: ONE})) for f in subsets(n) if f]
    return Subspace.from_sparse(vectors, n * 2**n)


@lru_cache(maxsize=None)
def h_subspace(n: int) -> Subspace:
    """
    Returns:
        Subspace: The derived algebra of the Hamiltonian algebra, in W(n) coordinates.
    """
    return product_span(build_W(n), htilde_subspace(n))


def _restricted(n: int, family: str, name: str, subspace: Subspace) -> SuperAlgebra:
    meta = Meta(
        claims=Claims.LIE_SUPER,
        family=family,
        params={"n": n},
        labels=[w_vector_label(n, vector) for vector in subspace.sparse_basis()],
    )
    algebra = restrict(build_W(n), subspace, name, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def build_S(n: int) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: Unless `n` is 3 or 4.

    Returns:
        SuperAlgebra: The special Lie superalgebra S(n).
    """
    _check_range("S", n, range(S_RANGE[0], S_RANGE[1] + 1))
    return _restricted(n, "S", f"S({n})", s_subspace(n))


def build_Stilde(n: int) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: Unless `n` is 4.

    Returns:
        SuperAlgebra: The deformed special Lie superalgebra.
    """
    _check_range("Stilde", n, STILDE_VALUES)
    return _restricted(n, "Stilde", f"Stilde({n})", stilde_subspace(n))


def build_Htilde(n: int) -> SuperAlgebra:
    _check_range("Htilde", n, H_VALUES)
    return _restricted(n, "Htilde", f"Htilde({n})", htilde_subspace(n))


def build_H(n: int) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: Unless `n` is 4 or 5.

    Returns:
        SuperAlgebra: The Hamiltonian Lie superalgebra H(n).
    """
    _check_range("H", n, H_VALUES)
    return _restricted(n, "H", f"H({n})", h_subspace(n))


def build_sl(m: int, n: int) -> SuperAlgebra:
    """
    Args:
        m (int): Size of the even block.
        n (int): Size of the odd block.

    Raises:
        EqualBlocks: When `m == n`.
        OutOfRange: When a block is empty or `m + n > 4`.

    Returns:
        SuperAlgebra: Supertraceless matrices under the supercommutator.
    """
    if m == n:
        raise EqualBlocks(f"sl({m},{n}) is not simple.")
    if m < 1 or n < 1 or m + n > 4:
        raise OutOfRange(f"sl({m},{n}) is outside of 1 <= m, n and m + n <= 4.")
    matrices = minus_functor(matrix_superalgebra(m, n))
    trace = supertrace_functional(m, n)
    kernel_vectors = []
    size = (m + n) ** 2
    pivot = next(index for index, value in enumerate(trace) if value)
    for index in range(size):
        if index == pivot:
            continue
        vector = {index: ONE}
        if trace[index]:
            vector[pivot] = -trace[index] / trace[pivot]
        kernel_vectors.append(vector)
    subspace = Subspace.from_sparse(kernel_vectors, size)
    meta = Meta(
        claims=Claims.LIE_SUPER,
        family="sl",
        params={"m": m, "n": n},
        labels=[
            combination_label(matrices.meta.labels, vector)
            for vector in subspace.sparse_basis()
        ],
    )
    algebra = restrict(matrices, subspace, f"sl({m},{n})", meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


@dataclass
class RootDecomposition:
    """Joint eigenspaces of the adjoint action of a Cartan subalgebra."""

    cartan: List[Element]
    weights: List[Tuple[Weight, Subspace]]
    which: str

    @property
    def dims(self) -> Dict[Weight, int]:
        return {weight: space.dim for weight, space in self.weights}

    def nonzero_weights(self) -> Set[Weight]:
        return {weight for weight, _ in self.weights if any(weight)}

    def zero_weight_dim(self) -> int:
        return sum(space.dim for weight, space in self.weights if not any(weight))


def _cartan_vectors(which: str, n: int) -> List[Sparse]:
    position = _w_position(n)
    if which == "W":
        return [{position[((i,), i)]: ONE} for i in range(1, n + 1)]
    if which == "S":
        return [
            {position[((i,), i)]: ONE, position[((i + 1,), i + 1)]: Scalar(-1)}
            for i in range(1, n)
        ]
    l = n // 2
    vectors = []
    for i in range(1, l + 1):
        derivation = hamiltonian(n, {(i, i + l): ONE})
        vectors.append({k: I * v for k, v in to_coordinates(n, derivation).items()})
    return vectors


def _cartan_elements(algebra: SuperAlgebra, which: str) -> List[Element]:
    n = algebra.meta.params["n"]
    family = algebra.meta.family
    if family not in ("W", "S", "Stilde", "H", "Htilde"):
        raise BadParameter(f"{algebra.name} is not built from W({n}).")
    vectors = _cartan_vectors(which, n)
    if family == "W":
        return [Element.from_sparse(algebra.dim, vector) for vector in vectors]
    subspace = {
        "S": s_subspace,
        "Stilde": stilde_subspace,
        "H": h_subspace,
        "Htilde": htilde_subspace,
    }[family](n)
    elements = []
    for vector in vectors:
        coordinates = subspace.coordinates(
            tuple(vector.get(i, ZERO) for i in range(subspace.ambient_dim))
        )
        if coordinates is None:
            raise BadParameter(f"Cartan element {w_vector_label(n, vector)} is not in {algebra.name}.")
        elements.append(Element(tuple(coordinates)))
    return elements


def s_to_epsilon(weight: Weight) -> Weight:
    """
    Args:
        weight (Weight): Eigenvalues on `h_(i,i+1)`, i.e. differences `c_i - c_(i+1)`.

    Returns:
        Weight: The epsilon coordinates normalized by `sum c_i = 0`.
    """
    n = len(weight) + 1
    first = sum((Scalar(n - 1 - k) * weight[k] for k in range(n - 1)), ZERO) / n
    values = [first]
    for difference in weight:
        values.append(values[-1] - difference)
    return tuple(values)


def cartan_and_roots(algebra: SuperAlgebra, which: str) -> RootDecomposition:
    """Splits an algebra of this module into root spaces.

    Args:
        algebra (SuperAlgebra): W(n), S(n) or H(n) built by this module.
        which (str): One of `W`, `S` or `H`.

    Returns:
        RootDecomposition: Weights in epsilon coordinates with their spaces.
    """
    if which not in ("W", "S", "H"):
        raise BadParameter(f"Unknown Cartan type {which!r}.")
    n = algebra.meta.params["n"]
    cartan = _cartan_elements(algebra, which)
    operators = [ad_operator(algebra, h) for h in cartan]
    candidates = half_integers(n) if which == "S" else [Scalar(k) for k in range(-n, n + 1)]
    spaces = simultaneous_eigenspaces(operators, candidates, algebra.dim)
    if which == "S":
        spaces = [(s_to_epsilon(weight), space) for weight, space in spaces]
    spaces.sort(key=lambda item: tuple((value.re, value.im) for value in item[0]))
    return RootDecomposition(cartan, spaces, which)


def _epsilon(n: int, plus: Sequence[int], minus: Sequence[int] = ()) -> Weight:
    values = [ZERO] * n
    for i in plus:
        values[i - 1] = values[i - 1] + ONE
    for i in minus:
        values[i - 1] = values[i - 1] - ONE
    return tuple(values)


def _normalized(weight: Weight) -> Weight:
    mean = sum(weight, ZERO) / len(weight)
    return tuple(value - mean for value in weight)


def root_display(which: str, n: int) -> Set[Weight]:
    """
    Returns:
        Set[Weight]: The roots listed for W(n), S(n) or H(n) in epsilon
            coordinates, normalized to sum zero for S(n).
    """
    indices = range(1, n + 1)
    roots: Set[Weight] = set()
    if which == "W":
        for subset in subsets(n):
            if len(subset) > n - 1:
                continue
            roots.add(_epsilon(n, subset))
            for j in indices:
                if j not in subset:
                    roots.add(_epsilon(n, subset, (j,)))
        return roots
    if which == "S":
        for subset in subsets(n):
            if 1 <= len(subset) <= n - 2:
                roots.add(_normalized(_epsilon(n, subset)))
            if len(subset) <= n - 1:
                for j in indices:
                    if j not in subset:
                        roots.add(_normalized(_epsilon(n, subset, (j,))))
        return roots
    l = n // 2
    for signs in _sign_patterns(l):
        plus = [i + 1 for i, sign in enumerate(signs) if sign > 0]
        minus = [i + 1 for i, sign in enumerate(signs) if sign < 0]
        roots.add(_epsilon(l, plus, minus))
    return roots


def w_weights(n: int) -> Dict[Weight, int]:
    """
    Returns:
        Dict[Weight, int]: The weight `eps_S - eps_j` of every basis vector
            `xi_S d_j` of W(n), counted with multiplicity.
    """
    weights: Dict[Weight, int] = {}
    for element in w_basis(n):
        weight = _epsilon(n, element.monomial, (element.direction,))
        weights[weight] = weights.get(weight, 0) + 1
    return weights


def _sign_patterns(size: int) -> List[Tuple[int, ...]]:
    patterns: List[Tuple[int, ...]] = [()]
    for _ in range(size):
        patterns = [pattern + (sign,) for pattern in patterns for sign in (-1, 0, 1)]
    return patterns


def even_action_probe(algebra: SuperAlgebra, trials: int = 10, rng: Optional[random.Random] = None) -> Optional[Subspace]:
    """Looks for a proper subspace of the odd part stable under the even part.

    Returns:
        Optional[Subspace]: A proper invariant subspace generated by a probed
            vector, None when every probe generates the whole odd part.
    """
    rng = rng or random.Random(0)
    even = [i for i in range(algebra.dim) if not algebra.parity[i]]
    odd = [i for i in range(algebra.dim) if algebra.parity[i]]
    candidates: List[Sparse] = [{i: ONE} for i in odd]
    for _ in range(trials):
        vector = {i: Scalar(rng.randint(-3, 3)) for i in odd}
        vector = {i: v for i, v in vector.items() if v}
        if vector:
            candidates.append(vector)
    for start in candidates:
        current = Subspace.from_sparse([start], algebra.dim)
        pending = [start]
        while pending:
            new = []
            for vector in pending:
                for i in even:
                    image = algebra.product({i: ONE}, vector)
                    if image and not current.contains(
                        tuple(image.get(k, ZERO) for k in range(algebra.dim))
                    ):
                        new.append(image)
                        current = Subspace.from_sparse(current.sparse_basis() + [image], algebra.dim)
            pending = new
        if current.dim < len(odd):
            return current
    return None


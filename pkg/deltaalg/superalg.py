"""The superalgebra carrier and the structural operations acting on it."""

import itertools
import logging
import random

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .enums import Claims, Identity, Variety
from .exactfield import HALF, ONE, ZERO, Scalar
from .exceptions import (
    DegenerateInput,
    DimensionMismatch,
    GradedInput,
    GradingError,
    NotClosed,
    NotIdempotent,
    NotPeirce,
    NotUnital,
    ParityMismatch,
    TooLarge,
    OutOfRange,
    ZeroVector,
)
from .functions import Monomial, grassmann_product, subsets
from .linalg import (
    Matrix,
    SparseRows,
    Subspace,
    kernel,
    sparse_matrix,
)


Sparse = Dict[int, Scalar]
Entries = Tuple[Tuple[int, Scalar], ...]

GRASSMANN_LIMIT = 12
ENVELOPE_LIMIT = 6


@dataclass
class Meta:
    """Metadata carried along with the structure constants."""

    claims: Claims = Claims(0)
    degree: Optional[int] = None
    family: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    idempotents: List[Tuple[Scalar, ...]] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class Element:
    """Coordinates of an element in the basis of its algebra."""

    coords: Tuple[Scalar, ...]

    @classmethod
    def from_sparse(cls, dim: int, vector: Mapping[int, Scalar]) -> "Element":
        return cls(tuple(vector.get(i, ZERO) for i in range(dim)))

    @property
    def sparse(self) -> Sparse:
        return {i: value for i, value in enumerate(self.coords) if value}

    def __len__(self) -> int:
        return len(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)


def add_into(target: Sparse, vector: Mapping[int, Scalar], factor: Scalar = ONE):
    """Adds `factor * vector` to `target` in place, dropping zeros."""
    for i, value in vector.items():
        total = target.get(i, ZERO) + factor * value
        if total:
            target[i] = total
        else:
            target.pop(i, None)


def scale(vector: Mapping[int, Scalar], factor: Scalar) -> Sparse:
    if not factor:
        return {}
    return {i: factor * value for i, value in vector.items()}


class SuperAlgebra:
    """A finite dimensional superalgebra given by sparse structure constants.

    The product of basis elements is `e_i * e_j = sum_k c_ij^k e_k` where the
    table maps `(i, j)` to the `(k, c_ij^k)` pairs with nonzero coefficient.
    Grading consistency and the unit are checked at construction.
    """

    def __init__(
        self,
        name: str,
        parity: Sequence[int],
        table: Mapping[Tuple[int, int], Iterable[Tuple[int, Scalar]]],
        unit: Optional[Sequence[Scalar]] = None,
        meta: Optional[Meta] = None,
    ):
        self.name = name
        self.parity = tuple(int(value) for value in parity)
        self.meta = meta or Meta()
        dim = len(self.parity)
        normalized: Dict[Tuple[int, int], Entries] = {}
        for (i, j), entries in table.items():
            merged: Sparse = {}
            for k, value in entries:
                add_into(merged, {k: Scalar.coerce(value)})
            for k in merged:
                if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                    raise IndexError(f"Structure constant ({i}, {j}, {k}) is out of range.")
                if self.parity[k] != self.parity[i] ^ self.parity[j]:
                    raise GradingError(
                        f"c_{i},{j}^{k} is nonzero but parities are "
                        f"{self.parity[i]}, {self.parity[j]}, {self.parity[k]}."
                    )
            if merged:
                normalized[(i, j)] = tuple(sorted(merged.items()))
        self.table = normalized
        self.unit: Optional[Tuple[Scalar, ...]] = None
        if unit is not None:
            unit = tuple(Scalar.coerce(value) for value in unit)
            if len(unit) != dim:
                raise DimensionMismatch(f"Unit has {len(unit)} coordinates instead of {dim}.")
            self._check_unit(unit)
            self.unit = unit

    def __repr__(self) -> str:
        return f"SuperAlgebra({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return (
            self.name == other.name
            and self.parity == other.parity
            and self.table == other.table
            and self.unit == other.unit
        )

    def __hash__(self) -> int:
        return hash((self.name, self.parity, tuple(sorted(self.table.items()))))

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def is_purely_even(self) -> bool:
        return not any(self.parity)

    @property
    def claims(self) -> Claims:
        return self.meta.claims

    def label(self, index: int) -> str:
        if index < len(self.meta.labels):
            return self.meta.labels[index]
        return f"e{index}"

    def _check_unit(self, unit: Sequence[Scalar]):
        unit = {i: value for i, value in enumerate(unit) if value}
        if any(self.parity[i] for i in unit):
            raise NotUnital("The unit must be even.")
        for j in range(self.dim):
            basis = {j: ONE}
            if self.product(unit, basis) != basis or self.product(basis, unit) != basis:
                raise NotUnital(f"The unit does not act as identity on {self.label(j)}.")

    def is_unit(self, vector: Sequence[Scalar]) -> bool:
        try:
            self._check_unit(vector)
        except NotUnital:
            return False
        return True

    @cached_property
    def left_index(self) -> Dict[int, List[Tuple[int, Entries]]]:
        """Table entries grouped by left factor."""
        index: Dict[int, List[Tuple[int, Entries]]] = {}
        for (i, j), entries in sorted(self.table.items()):
            index.setdefault(i, []).append((j, entries))
        return index

    @cached_property
    def right_index(self) -> Dict[int, List[Tuple[int, Entries]]]:
        """Table entries grouped by right factor."""
        index: Dict[int, List[Tuple[int, Entries]]] = {}
        for (i, j), entries in sorted(self.table.items()):
            index.setdefault(j, []).append((i, entries))
        return index

    def product(self, left: Mapping[int, Scalar], right: Mapping[int, Scalar]) -> Sparse:
        """
        Args:
            left (Mapping[int, Scalar]): Sparse coordinates of the left factor.
            right (Mapping[int, Scalar]): Sparse coordinates of the right factor.

        Returns:
            Sparse: Sparse coordinates of the product.
        """
        result: Sparse = {}
        for i, a in left.items():
            for j, b in right.items():
                entries = self.table.get((i, j))
                if entries:
                    add_into(result, dict(entries), a * b)
        return result

    def basis_product(self, i: int, j: int) -> Sparse:
        return dict(self.table.get((i, j), ()))

    def element(self, values: Union[Mapping[int, Any], Sequence[Any]]) -> Element:
        if isinstance(values, Mapping):
            return Element.from_sparse(
                self.dim, {i: Scalar.coerce(value) for i, value in values.items()}
            )
        if len(values) != self.dim:
            raise DimensionMismatch(f"{len(values)} coordinates given for dim {self.dim}.")
        return Element(tuple(Scalar.coerce(value) for value in values))

    def basis_element(self, index: int) -> Element:
        return Element.from_sparse(self.dim, {index: ONE})

    def homogeneous_parity(self, vector: Mapping[int, Scalar]) -> Optional[int]:
        """
        Returns:
            Optional[int]: The parity of a homogeneous nonzero vector, None otherwise.
        """
        parities = {self.parity[i] for i, value in vector.items() if value}
        return parities.pop() if len(parities) == 1 else None

    def structure_constants(self) -> Iterable[Tuple[int, int, int, Scalar]]:
        for (i, j), entries in sorted(self.table.items()):
            for k, value in entries:
                yield i, j, k, value


def _check_element(algebra: SuperAlgebra, element: Element):
    if len(element) != algebra.dim:
        raise DimensionMismatch(
            f"Element of length {len(element)} used in {algebra.name} of dim {algebra.dim}."
        )


def multiply(algebra: SuperAlgebra, x: Element, y: Element) -> Element:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        x (Element): Left factor.
        y (Element): Right factor.

    Raises:
        DimensionMismatch: When an element does not belong to the algebra.

    Returns:
        Element: The product `x * y`.
    """
    _check_element(algebra, x)
    _check_element(algebra, y)
    return Element.from_sparse(algebra.dim, algebra.product(x.sparse, y.sparse))


def monomial_label(monomial: Monomial, symbol: str = "e") -> str:
    if not monomial:
        return "1"
    return "*".join(f"{symbol}{index}" for index in monomial)


def grassmann(n: int) -> SuperAlgebra:
    """
    Args:
        n (int): Number of odd generators.

    Raises:
        TooLarge: When `n` exceeds 12.

    Returns:
        SuperAlgebra: The Grassmann superalgebra on the subset basis.
    """
    if n < 0:
        raise OutOfRange(f"Grassmann algebra needs n >= 0, got {n}.")
    if n > GRASSMANN_LIMIT:
        raise TooLarge(f"Grassmann algebras are limited to {GRASSMANN_LIMIT} generators.")
    monomials = subsets(n)
    position = {monomial: index for index, monomial in enumerate(monomials)}
    table = {}
    for i, left in enumerate(monomials):
        for j, right in enumerate(monomials):
            product = grassmann_product(left, right)
            if product:
                sign, target = product
                table[(i, j)] = [(position[target], Scalar(sign))]
    unit = [ONE] + [ZERO] * (len(monomials) - 1)
    meta = Meta(
        family="grassmann",
        params={"n": n},
        labels=[monomial_label(monomial) for monomial in monomials],
    )
    algebra = SuperAlgebra(
        f"Lambda({n})", [len(monomial) % 2 for monomial in monomials], table, unit, meta
    )
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def _sign(algebra: SuperAlgebra, i: int, j: int) -> Scalar:
    return Scalar(-1) if algebra.parity[i] and algebra.parity[j] else ONE


def plus_functor(algebra: SuperAlgebra, name: Optional[str] = None) -> SuperAlgebra:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        name (str, optional): Name of the result.

    Returns:
        SuperAlgebra: The same space with `a o b = (ab + (-1)^(p(a)p(b)) ba) / 2`.
    """
    table = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            value: Sparse = {}
            add_into(value, algebra.basis_product(i, j), HALF)
            add_into(value, algebra.basis_product(j, i), HALF * _sign(algebra, i, j))
            if value:
                table[(i, j)] = list(value.items())
    meta = Meta(
        family="plus",
        params={"of": algebra.name},
        idempotents=list(algebra.meta.idempotents),
        labels=list(algebra.meta.labels),
    )
    return SuperAlgebra(name or f"{algebra.name}^(+)", algebra.parity, table, algebra.unit, meta)


def minus_functor(algebra: SuperAlgebra, name: Optional[str] = None) -> SuperAlgebra:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        name (str, optional): Name of the result.

    Returns:
        SuperAlgebra: The same space with `[a, b] = ab - (-1)^(p(a)p(b)) ba`.
    """
    table = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            value: Sparse = {}
            add_into(value, algebra.basis_product(i, j))
            add_into(value, algebra.basis_product(j, i), -_sign(algebra, i, j))
            if value:
                table[(i, j)] = list(value.items())
    meta = Meta(family="minus", params={"of": algebra.name}, labels=list(algebra.meta.labels))
    return SuperAlgebra(name or f"{algebra.name}^(-)", algebra.parity, table, None, meta)


def grassmann_envelope(algebra: SuperAlgebra, k: int) -> SuperAlgebra:
    """
    Args:
        algebra (SuperAlgebra): The superalgebra.
        k (int): Number of Grassmann generators.

    Raises:
        TooLarge: When `k` exceeds 6.

    Returns:
        SuperAlgebra:
            The ordinary algebra `G0 (x) A0 + G1 (x) A1` spanned by the
            `e_S (x) a_i` with matching parities.
    """
    if k > ENVELOPE_LIMIT:
        raise TooLarge(f"Grassmann envelopes are limited to {ENVELOPE_LIMIT} generators.")
    basis = [
        (monomial, i)
        for monomial in subsets(k)
        for i in range(algebra.dim)
        if len(monomial) % 2 == algebra.parity[i]
    ]
    position = {key: index for index, key in enumerate(basis)}
    table = {}
    for a, (left, i) in enumerate(basis):
        for b, (right, j) in enumerate(basis):
            entries = algebra.table.get((i, j))
            if not entries:
                continue
            product = grassmann_product(left, right)
            if not product:
                continue
            sign, target = product
            table[(a, b)] = [(position[(target, c)], Scalar(sign) * value) for c, value in entries]
    meta = Meta(
        family="envelope",
        params={"of": algebra.name, "k": k},
        labels=[f"{monomial_label(m)}(x){algebra.label(i)}" for m, i in basis],
    )
    return SuperAlgebra(f"G{k}({algebra.name})", [0] * len(basis), table, None, meta)


Tree = Union[str, int, Tuple[Any, Any]]

IDENTITIES: Dict[Identity, List[List[Tuple[int, Tree]]]] = {
    Identity.ANTICOMMUTATIVITY: [[(1, ("x", "x"))]],
    Identity.JACOBI: [
        [(1, (("x", "y"), "z")), (1, (("y", "z"), "x")), (1, (("z", "x"), "y"))]
    ],
    Identity.COMMUTATIVITY: [[(1, ("x", "y")), (-1, ("y", "x"))]],
    Identity.JORDAN: [[(1, ((("x", "x"), "y"), "x")), (-1, (("x", "x"), ("y", "x")))]],
    Identity.FLEXIBILITY: [[(1, (("x", "y"), "x")), (-1, ("x", ("y", "x")))]],
    Identity.NC_JORDAN: [
        [(1, (("x", "y"), "x")), (-1, ("x", ("y", "x")))],
        [(1, ((("x", "x"), "y"), "x")), (-1, (("x", "x"), ("y", "x")))],
    ],
}

VARIETIES: Dict[Variety, List[Identity]] = {
    Variety.LIE_SUPER: [Identity.ANTICOMMUTATIVITY, Identity.JACOBI],
    Variety.JORDAN_SUPER: [Identity.COMMUTATIVITY, Identity.JORDAN],
    Variety.FLEXIBLE_SUPER: [Identity.FLEXIBILITY],
    Variety.NC_JORDAN_SUPER: [Identity.NC_JORDAN],
}


@dataclass(frozen=True)
class Multilinear:
    """The full linearization of a homogeneous polynomial identity.

    Leaves of the terms are argument positions. Positions listed in one group
    are copies of the same variable, so the polynomial is symmetric in them.
    """

    names: Tuple[str, ...]
    groups: Tuple[Tuple[int, ...], ...]
    terms: Tuple[Tuple[int, Tree], ...]


def _leaves(tree: Tree) -> List[str]:
    if isinstance(tree, tuple):
        return _leaves(tree[0]) + _leaves(tree[1])
    return [tree]


def _substitute(tree: Tree, replacements: List[int]) -> Tree:
    if isinstance(tree, tuple):
        left = _substitute(tree[0], replacements)
        return (left, _substitute(tree[1], replacements))
    return replacements.pop(0)


def linearize(polynomial: List[Tuple[int, Tree]]) -> Multilinear:
    """
    Args:
        polynomial (List[Tuple[int, Tree]]): Coefficients and product trees over
            variable names, homogeneous in every variable.

    Returns:
        Multilinear: The sum over every way to assign distinct copies of each
            repeated variable to its occurrences.
    """
    degrees: Dict[str, int] = {}
    for leaf in _leaves(polynomial[0][1]):
        degrees[leaf] = degrees.get(leaf, 0) + 1
    variables = sorted(degrees)
    names: List[str] = []
    groups: List[Tuple[int, ...]] = []
    for variable in variables:
        start = len(names)
        names.extend(
            f"{variable}{copy + 1}" if degrees[variable] > 1 else variable
            for copy in range(degrees[variable])
        )
        groups.append(tuple(range(start, len(names))))
    collected: Dict[Tree, int] = {}
    for coefficient, tree in polynomial:
        leaves = _leaves(tree)
        choices = [
            itertools.permutations(group) for group in groups
        ]
        for assignment in itertools.product(*choices):
            queues = {variable: list(copies) for variable, copies in zip(variables, assignment)}
            replacements = [queues[leaf].pop(0) for leaf in leaves]
            term = _substitute(tree, replacements)
            collected[term] = collected.get(term, 0) + coefficient
    terms = tuple((value, term) for term, value in collected.items() if value)
    return Multilinear(tuple(names), tuple(groups), terms)


def _evaluate(
    tree: Tree,
    arguments: Sequence[Sparse],
    product: Callable[[Any, Any], Any],
    cache: Dict[Tree, Any],
):
    if not isinstance(tree, tuple):
        return arguments[tree]
    if tree in cache:
        return cache[tree]
    left = _evaluate(tree[0], arguments, product, cache)
    right = _evaluate(tree[1], arguments, product, cache)
    value = product(left, right) if left and right else {}
    cache[tree] = value
    return value


def _evaluate_multilinear(
    multilinear: Multilinear, arguments: Sequence[Any], product: Callable[[Any, Any], Any]
) -> Dict[Any, Scalar]:
    cache: Dict[Tree, Any] = {}
    total: Dict[Any, Scalar] = {}
    for coefficient, tree in multilinear.terms:
        add_into(total, _evaluate(tree, arguments, product, cache), Scalar(coefficient))
    return total


def _tuples(multilinear: Multilinear, dim: int) -> Iterable[Tuple[int, ...]]:
    size = len(multilinear.names)
    per_group = [
        itertools.combinations_with_replacement(range(dim), len(group))
        for group in multilinear.groups
    ]
    for choice in itertools.product(*per_group):
        indices = [0] * size
        for group, values in zip(multilinear.groups, choice):
            for position, value in zip(group, values):
                indices[position] = value
        yield tuple(indices)


@dataclass
class IdentityCheck:
    """Outcome of an identity check, with the first failing basis tuple."""

    identity: str
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    arguments: Tuple[str, ...] = ()
    evaluated: int = 0

    def __bool__(self) -> bool:
        return self.passed

    def describe(self, algebra: SuperAlgebra) -> str:
        if self.passed:
            return f"{self.identity}: pass ({self.evaluated} tuples)"
        pairs = ", ".join(
            f"{name}={algebra.label(index)}"
            for name, index in zip(self.arguments, self.witness or ())
        )
        return f"{self.identity}: fail at ({pairs})"


def check_identity_multilinear(algebra: SuperAlgebra, identity: Identity) -> IdentityCheck:
    """Verifies the full linearization of an identity on every basis tuple.

    Args:
        algebra (SuperAlgebra): An ordinary algebra.
        identity (Identity): The identity to check.

    Raises:
        GradedInput: When the algebra has odd basis elements.

    Returns:
        IdentityCheck: The result with the first failing tuple as witness.
    """
    if not algebra.is_purely_even:
        raise GradedInput(
            f"{algebra.name} has odd elements, check it through its Grassmann envelope."
        )
    basis = [{i: ONE} for i in range(algebra.dim)]
    evaluated = 0
    for polynomial in IDENTITIES[identity]:
        multilinear = linearize(polynomial)
        for indices in _tuples(multilinear, algebra.dim):
            evaluated += 1
            arguments = [basis[index] for index in indices]
            if _evaluate_multilinear(multilinear, arguments, algebra.product):
                return IdentityCheck(identity.value, False, indices, multilinear.names, evaluated)
    return IdentityCheck(identity.value, True, evaluated=evaluated)


def _envelope_product(algebra: SuperAlgebra) -> Callable[[Any, Any], Any]:
    def product(left, right):
        result: Dict[Tuple[Monomial, int], Scalar] = {}
        for (monomial_a, i), a in left.items():
            for (monomial_b, j), b in right.items():
                entries = algebra.table.get((i, j))
                if not entries:
                    continue
                grassmann_ = grassmann_product(monomial_a, monomial_b)
                if not grassmann_:
                    continue
                sign, monomial = grassmann_
                factor = a * b * sign
                add_into(result, {(monomial, k): value for k, value in entries}, factor)
        return result

    return product


def envelope_generators(variety: Variety) -> int:
    """
    Returns:
        int: The number of distinct arguments of the linearized identities.
    """
    return max(
        len(linearize(polynomial).names)
        for identity in VARIETIES[variety]
        for polynomial in IDENTITIES[identity]
    )


def check_super_variety(algebra: SuperAlgebra, variety: Variety) -> IdentityCheck:
    """Checks that the Grassmann envelope of the algebra satisfies the variety.

    The linearized identities are evaluated on envelope tuples where odd
    arguments carry distinct single generators and even arguments carry 1.
    Every other envelope tuple with a nonzero value is the image of one of
    these by relabeling generators, which is an automorphism.

    Args:
        algebra (SuperAlgebra): The superalgebra.
        variety (Variety): The variety to check.

    Returns:
        IdentityCheck: The result, the witness being a tuple of basis indices.
    """
    k = envelope_generators(variety)
    if k > ENVELOPE_LIMIT:
        raise TooLarge(f"{variety.value} needs {k} Grassmann generators.")
    product = _envelope_product(algebra)
    evaluated = 0
    for identity in VARIETIES[variety]:
        for polynomial in IDENTITIES[identity]:
            multilinear = linearize(polynomial)
            for indices in _tuples(multilinear, algebra.dim):
                evaluated += 1
                arguments = []
                generator = 0
                for index in indices:
                    if algebra.parity[index]:
                        generator += 1
                        arguments.append({((generator,), index): ONE})
                    else:
                        arguments.append({((), index): ONE})
                if _evaluate_multilinear(multilinear, arguments, product):
                    logging.info(f"{algebra.name} fails {identity.value} at {indices}.")
                    return IdentityCheck(
                        f"{variety.value}/{identity.value}",
                        False,
                        indices,
                        multilinear.names,
                        evaluated,
                    )
    return IdentityCheck(variety.value, True, evaluated=evaluated)


def is_supercommutative(algebra: SuperAlgebra) -> Optional[Tuple[int, int]]:
    """
    Returns:
        Optional[Tuple[int, int]]:
            The first basis pair with `xy != (-1)^(p(x)p(y)) yx`, None if none.
    """
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            left = algebra.basis_product(i, j)
            right = scale(algebra.basis_product(j, i), _sign(algebra, i, j))
            if left != right:
                return i, j
    return None


def _dense(vector: Mapping[int, Scalar], dim: int) -> Tuple[Scalar, ...]:
    return tuple(vector.get(i, ZERO) for i in range(dim))


def _vectors(algebra: SuperAlgebra, span: Iterable[Union[Element, Mapping[int, Scalar]]]):
    vectors = []
    for item in span:
        if isinstance(item, Element):
            _check_element(algebra, item)
            vectors.append(item.sparse)
        else:
            vectors.append(dict(item))
    return vectors


def product_span(
    algebra: SuperAlgebra, left: Subspace, right: Optional[Subspace] = None
) -> Subspace:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        left (Subspace): Left factors.
        right (Subspace, optional): Right factors, defaults to `left`.

    Returns:
        Subspace: The span of all products `u * v`, e.g. the derived subalgebra.
    """
    right = right or left
    products = [
        algebra.product(u, v) for u in left.sparse_basis() for v in right.sparse_basis()
    ]
    return Subspace.from_sparse(products, algebra.dim)


def subalgebra_closure(
    algebra: SuperAlgebra, span: Iterable[Union[Element, Mapping[int, Scalar]]]
) -> Subspace:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        span (Iterable[Element]): Generators.

    Returns:
        Subspace: The smallest subalgebra containing the generators.
    """
    current = Subspace.from_sparse(_vectors(algebra, span), algebra.dim)
    # Each product of two members of `known` is formed once the later one is pending.
    known = current.sparse_basis()
    pending = list(known)
    while pending:
        new = []
        for u in pending:
            for v in known:
                for product in (algebra.product(u, v), algebra.product(v, u)):
                    if product and not current.contains(_dense(product, algebra.dim)):
                        new.append(product)
                        current = Subspace.from_sparse(current.sparse_basis() + [product], algebra.dim)
        known.extend(new)
        pending = new
    return current


def ideal_closure(algebra: SuperAlgebra, vector: Union[Element, Mapping[int, Scalar]]) -> Subspace:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        vector (Element): A nonzero element.

    Raises:
        ZeroVector: When the element is zero.

    Returns:
        Subspace: The smallest two-sided ideal containing the element.
    """
    start = _vectors(algebra, [vector])[0]
    if not start:
        raise ZeroVector("The ideal generated by zero is trivial.")
    current = Subspace.from_sparse([start], algebra.dim)
    pending = [start]
    while pending:
        new = []
        for u in pending:
            for i in range(algebra.dim):
                for product in (algebra.product(u, {i: ONE}), algebra.product({i: ONE}, u)):
                    if product and not current.contains(_dense(product, algebra.dim)):
                        new.append(product)
                        current = Subspace.from_sparse(current.sparse_basis() + [product], algebra.dim)
        pending = new
    return current


@dataclass
class SimplicityProbe:
    """Heuristic simplicity verdict: finding no proper ideal is not a proof."""

    verdict: str
    ideal: Optional[Subspace] = None
    generator: Optional[Tuple[Scalar, ...]] = None

    NO_PROPER_IDEAL_FOUND = "no_proper_ideal_found"
    PROPER_IDEAL = "proper_ideal"

    @property
    def found_ideal(self) -> bool:
        return self.verdict == self.PROPER_IDEAL


def simplicity_probe(
    algebra: SuperAlgebra, trials: int = 20, rng: Optional[random.Random] = None
) -> SimplicityProbe:
    """Looks for a proper ideal generated by a basis or random vector.

    Args:
        algebra (SuperAlgebra): An algebra of dim at least 2.
        trials (int): Number of random vectors tried after the basis.
        rng (random.Random, optional): Source of the random vectors.

    Returns:
        SimplicityProbe: The probe verdict.
    """
    rng = rng or random.Random(0)
    candidates = [{i: ONE} for i in range(algebra.dim)]
    for _ in range(trials):
        vector = {i: Scalar(rng.randint(-3, 3)) for i in range(algebra.dim)}
        vector = {i: value for i, value in vector.items() if value}
        if vector:
            candidates.append(vector)
    for vector in candidates:
        ideal = ideal_closure(algebra, vector)
        if ideal.dim < algebra.dim:
            return SimplicityProbe(
                SimplicityProbe.PROPER_IDEAL, ideal, _dense(vector, algebra.dim)
            )
    return SimplicityProbe(SimplicityProbe.NO_PROPER_IDEAL_FOUND)


def right_mult_operator(algebra: SuperAlgebra, x: Element) -> Matrix:
    """
    Returns:
        Matrix: The matrix of `y -> y * x`, column `l` holding `e_l * x`.
    """
    _check_element(algebra, x)
    return _operator(algebra, lambda basis: algebra.product(basis, x.sparse))


def left_mult_operator(algebra: SuperAlgebra, x: Element) -> Matrix:
    """
    Returns:
        Matrix: The matrix of `y -> x * y`.
    """
    _check_element(algebra, x)
    return _operator(algebra, lambda basis: algebra.product(x.sparse, basis))


def ad_operator(algebra: SuperAlgebra, x: Element) -> Matrix:
    """
    Returns:
        Matrix: The matrix of `ad_x: y -> xy`, for algebras with a bracket product.
    """
    return left_mult_operator(algebra, x)


def operator_rows(algebra: SuperAlgebra, apply: Callable[[Sparse], Sparse]) -> SparseRows:
    rows: SparseRows = {}
    for l in range(algebra.dim):
        for k, value in apply({l: ONE}).items():
            rows.setdefault(k, {})[l] = value
    return rows


def _operator(algebra: SuperAlgebra, apply: Callable[[Sparse], Sparse]) -> Matrix:
    return sparse_matrix(operator_rows(algebra, apply), (algebra.dim, algebra.dim))


@dataclass
class PeirceDecomposition:
    """The eigenspaces of right multiplication by an idempotent."""

    p0: Subspace
    p_half: Subspace
    p1: Subspace

    @property
    def dims(self) -> Tuple[int, int, int]:
        return self.p0.dim, self.p_half.dim, self.p1.dim


def peirce_decompose(algebra: SuperAlgebra, e: Element) -> PeirceDecomposition:
    """
    Args:
        algebra (SuperAlgebra): The algebra.
        e (Element): An idempotent.

    Raises:
        NotIdempotent: When `e * e != e`.
        NotPeirce: When the eigenspaces for 0, 1/2 and 1 do not fill the space.

    Returns:
        PeirceDecomposition: The three Peirce spaces.
    """
    _check_element(algebra, e)
    if algebra.product(e.sparse, e.sparse) != e.sparse:
        raise NotIdempotent("The element is not idempotent.")
    rows = operator_rows(algebra, lambda basis: algebra.product(basis, e.sparse))
    spaces = []
    for value in (ZERO, HALF, ONE):
        shifted = {k: dict(row) for k, row in rows.items()}
        for l in range(algebra.dim):
            row = shifted.setdefault(l, {})
            total = row.get(l, ZERO) - value
            if total:
                row[l] = total
            else:
                row.pop(l, None)
        spaces.append(kernel(sparse_matrix(shifted, (algebra.dim, algebra.dim))))
    decomposition = PeirceDecomposition(*spaces)
    if sum(decomposition.dims) != algebra.dim:
        raise NotPeirce(
            f"Peirce spaces of dims {decomposition.dims} do not add up to {algebra.dim}."
        )
    return decomposition


def center(algebra: SuperAlgebra) -> Subspace:
    """
    Returns:
        Subspace: The elements commuting and associating with everything,
            computed as one kernel.
    """
    dim = algebra.dim
    rows: SparseRows = {}

    def append(vectors: List[Sparse]):
        block: SparseRows = {}
        for l, vector in enumerate(vectors):
            for k, value in vector.items():
                block.setdefault(k, {})[l] = value
        for row in block.values():
            rows[len(rows)] = row

    basis = [{i: ONE} for i in range(dim)]
    for x in range(dim):
        commutator = []
        for l in range(dim):
            value = dict(algebra.product(basis[l], basis[x]))
            add_into(value, algebra.product(basis[x], basis[l]), Scalar(-1))
            commutator.append(value)
        append(commutator)
        for y in range(dim):
            xy = algebra.basis_product(x, y)
            first, second, third = [], [], []
            for l in range(dim):
                z = basis[l]
                value = algebra.product(algebra.product(z, basis[x]), basis[y])
                add_into(value, algebra.product(z, xy), Scalar(-1))
                first.append(value)
                value = algebra.product(algebra.product(basis[x], z), basis[y])
                add_into(value, algebra.product(basis[x], algebra.product(z, basis[y])), Scalar(-1))
                second.append(value)
                value = algebra.product(xy, z)
                add_into(value, algebra.product(basis[x], algebra.product(basis[y], z)), Scalar(-1))
                third.append(value)
            append(first)
            append(second)
            append(third)
    return kernel(sparse_matrix(rows, (len(rows), dim)))


def restrict(algebra: SuperAlgebra, subspace: Subspace, name: str, meta: Optional[Meta] = None) -> SuperAlgebra:
    """Builds the structure constants of a subalgebra in its canonical basis.

    Args:
        algebra (SuperAlgebra): The ambient algebra.
        subspace (Subspace): A graded subspace closed under multiplication.
        name (str): Name of the result.
        meta (Meta, optional): Metadata of the result.

    Raises:
        ParityMismatch: When a canonical basis vector is not homogeneous.
        NotClosed: When a product leaves the subspace.

    Returns:
        SuperAlgebra: The subalgebra, basis vector `r` being row `r` of the subspace.
    """
    basis = subspace.sparse_basis()
    parity = []
    for r, vector in enumerate(basis):
        value = algebra.homogeneous_parity(vector)
        if value is None:
            raise ParityMismatch(f"Basis vector {r} of {name} is not homogeneous.")
        parity.append(value)
    table = {}
    for r, u in enumerate(basis):
        for s, v in enumerate(basis):
            product = algebra.product(u, v)
            if not product:
                continue
            coordinates = subspace.coordinates(_dense(product, algebra.dim))
            if coordinates is None:
                raise NotClosed(f"The product of basis vectors {r} and {s} leaves {name}.")
            table[(r, s)] = [(t, value) for t, value in enumerate(coordinates) if value]
    unit = None
    if algebra.unit is not None:
        unit = subspace.coordinates(algebra.unit)
    result = SuperAlgebra(name, parity, table, None, meta)
    if unit is not None and result.is_unit(unit):
        result = SuperAlgebra(name, parity, table, unit, meta)
    logging.info(f"Restricted {algebra.name} to {name} of dim {result.dim}.")
    return result


def direct_sum(left: SuperAlgebra, right: SuperAlgebra, name: Optional[str] = None) -> SuperAlgebra:
    """
    Returns:
        SuperAlgebra: `left (+) right` with the basis of `left` first.
    """
    offset = left.dim
    table = {key: list(entries) for key, entries in left.table.items()}
    for (i, j), entries in right.table.items():
        table[(i + offset, j + offset)] = [(k + offset, value) for k, value in entries]
    unit = None
    if left.unit is not None and right.unit is not None:
        unit = left.unit + right.unit
    idempotents = [e + (ZERO,) * right.dim for e in left.meta.idempotents]
    idempotents += [(ZERO,) * left.dim + e for e in right.meta.idempotents]
    meta = Meta(
        claims=left.claims & right.claims,
        family="direct_sum",
        params={"summands": [left.name, right.name]},
        idempotents=idempotents,
        labels=[left.label(i) for i in range(left.dim)]
        + [f"{right.label(i)}'" for i in range(right.dim)],
    )
    if left.meta.degree is not None and right.meta.degree is not None:
        meta.degree = left.meta.degree + right.meta.degree
    return SuperAlgebra(
        name or f"{left.name}+{right.name}", left.parity + right.parity, table, unit, meta
    )


def find_unit(algebra: SuperAlgebra) -> Optional[Element]:
    """
    Returns:
        Optional[Element]: The unit, None when the unit equations are inconsistent.
    """
    dim = algebra.dim
    rows: SparseRows = {}
    for j in range(dim):
        for side in ("left", "right"):
            block: SparseRows = {}
            for i in range(dim):
                product = algebra.basis_product(i, j) if side == "left" else algebra.basis_product(j, i)
                for k, value in product.items():
                    block.setdefault(k, {})[i] = value
            block.setdefault(j, {})[dim] = Scalar(-1)
            for row in block.values():
                rows[len(rows)] = row
    solutions = kernel(sparse_matrix(rows, (len(rows), dim + 1)))
    for vector in solutions.basis:
        if vector[dim]:
            unit = [value / vector[dim] for value in vector[:dim]]
            return Element(tuple(unit))
    return None


def mutate(algebra: SuperAlgebra, rng: random.Random) -> SuperAlgebra:
    """
    Returns:
        SuperAlgebra: A copy with the sign of one random nonzero structure
            constant flipped.
    """
    constants = list(algebra.structure_constants())
    off_diagonal = [constant for constant in constants if constant[0] != constant[1]]
    constants = off_diagonal or constants
    if not constants:
        raise DegenerateInput(f"{algebra.name} has no structure constant to mutate.")
    i, j, k, _ = rng.choice(constants)
    table = {key: list(entries) for key, entries in algebra.table.items()}
    table[(i, j)] = [(t, -value if t == k else value) for t, value in table[(i, j)]]
    meta = Meta(
        family="mutation",
        params={"of": algebra.name, "constant": [i, j, k]},
        labels=list(algebra.meta.labels),
    )
    return SuperAlgebra(f"{algebra.name}~{i},{j},{k}", algebra.parity, table, None, meta)


def homogeneous_components(algebra: SuperAlgebra, subspace: Subspace) -> Tuple[Subspace, Subspace]:
    """
    Returns:
        Tuple[Subspace, Subspace]: The even and odd parts of a graded subspace.
    """
    even, odd = [], []
    for vector in subspace.sparse_basis():
        even.append({i: v for i, v in vector.items() if not algebra.parity[i]})
        odd.append({i: v for i, v in vector.items() if algebra.parity[i]})
    return (
        Subspace.from_sparse(even, algebra.dim),
        Subspace.from_sparse(odd, algebra.dim),
    )


def is_associative(algebra: SuperAlgebra) -> Optional[Tuple[int, int, int]]:
    """
    Returns:
        Optional[Tuple[int, int, int]]: The first basis triple with a nonzero
            associator, None if there is none.
    """
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            ij = algebra.basis_product(i, j)
            for k in range(algebra.dim):
                left = algebra.product(ij, {k: ONE})
                right = algebra.product({i: ONE}, algebra.basis_product(j, k))
                if left != right:
                    return i, j, k
    return None


def combination_label(labels: Sequence[str], vector: Mapping[int, Scalar]) -> str:
    """
    Returns:
        str: A readable linear combination such as `e1-1/2*e2`.
    """
    terms = []
    for index in sorted(vector):
        value = vector[index]
        if value == 1:
            terms.append(f"+{labels[index]}")
        elif value == -1:
            terms.append(f"-{labels[index]}")
        else:
            text = str(value)
            sign = "" if text.startswith("-") else "+"
            if not value.is_real:
                text = f"({text})"
            terms.append(f"{sign}{text}*{labels[index]}")
    return "".join(terms).lstrip("+") or "0"

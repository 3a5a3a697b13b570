"""Jordan superalgebras of the simple list and ordinary Jordan algebras."""

import logging
import os

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .enums import Claims, Variety
from .exactfield import HALF, ONE, ZERO, Scalar
from .exceptions import BadParameter, DeltaAlgError, K10DataCorrupt, OutOfRange
from .functions import Monomial, grassmann_derivative, grassmann_product, sha256_file, subsets
from .linalg import SparseRows, Subspace, kernel, sparse_matrix
from .store import load_algebra
from .superalg import (
    Meta,
    Sparse,
    SuperAlgebra,
    add_into,
    check_super_variety,
    combination_label,
    direct_sum,
    monomial_label,
    plus_functor,
    restrict,
    simplicity_probe,
)


RESOURCES = os.path.join(os.path.dirname(__file__), "resources")
K10_TABLE = os.path.join(RESOURCES, "k10.json")
MATRIX_LIMIT = 4
MATRIX_PLUS_LIMIT = 3
JV_LIMIT = 6
JGAMMA_RANGE = (2, 3)

Polynomial = Dict[Monomial, Scalar]


def _with_meta(algebra: SuperAlgebra, name: str, meta: Meta) -> SuperAlgebra:
    result = SuperAlgebra(name, algebra.parity, algebra.table, algebra.unit, meta)
    logging.info(f"Built {result.name} of dim {result.dim}.")
    return result


def _matrix_index(size: int, i: int, j: int) -> int:
    return (i - 1) * size + (j - 1)


def matrix_superalgebra(m: int, n: int) -> SuperAlgebra:
    """
    Args:
        m (int): Size of the even block.
        n (int): Size of the odd block.

    Raises:
        OutOfRange: When `m + n` is not between 1 and 4.

    Returns:
        SuperAlgebra: The associative matrix superalgebra M(m,n) on the
            matrix units `e_ij`, row by row.
    """
    size = m + n
    if m < 0 or n < 0 or not 1 <= size <= MATRIX_LIMIT:
        raise OutOfRange(f"M({m},{n}) is outside of 1 <= m + n <= {MATRIX_LIMIT}.")
    block = [0] * m + [1] * n
    parity = []
    labels = []
    table = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            parity.append(block[i - 1] ^ block[j - 1])
            labels.append(f"e{i}{j}")
            for l in range(1, size + 1):
                table[(_matrix_index(size, i, j), _matrix_index(size, j, l))] = [
                    (_matrix_index(size, i, l), ONE)
                ]
    diagonal = [_matrix_index(size, i, i) for i in range(1, size + 1)]
    unit = [ONE if index in diagonal else ZERO for index in range(size * size)]
    idempotents = [
        tuple(ONE if index == position else ZERO for index in range(size * size))
        for position in diagonal
    ]
    meta = Meta(
        family="M",
        params={"m": m, "n": n},
        idempotents=idempotents,
        labels=labels,
    )
    return SuperAlgebra(f"M({m},{n})", parity, table, unit, meta)


def supertrace_functional(m: int, n: int) -> List[Scalar]:
    """
    Returns:
        List[Scalar]: The coefficients of the supertrace on the matrix units.
    """
    size = m + n
    values = [ZERO] * (size * size)
    for i in range(1, size + 1):
        values[_matrix_index(size, i, i)] = ONE if i <= m else Scalar(-1)
    return values


def build_matrix_plus(m: int, n: int) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: When `m + n` is not between 1 and 3.

    Returns:
        SuperAlgebra: The Jordan superalgebra M(m,n)^(+).
    """
    if m < 0 or n < 0 or not 1 <= m + n <= MATRIX_PLUS_LIMIT:
        raise OutOfRange(f"M({m},{n})^(+) is outside of 1 <= m + n <= {MATRIX_PLUS_LIMIT}.")
    algebra = plus_functor(matrix_superalgebra(m, n))
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        degree=m + n,
        family="Mplus",
        params={"m": m, "n": n},
        idempotents=algebra.meta.idempotents,
        labels=algebra.meta.labels,
    )
    return _with_meta(algebra, f"M({m},{n})^(+)", meta)


def _sub_plus(
    ambient: SuperAlgebra,
    vectors: Sequence[Sparse],
    name: str,
    family: str,
    params: dict,
    idempotents: Sequence[Sparse] = (),
    degree: Optional[int] = None,
) -> SuperAlgebra:
    subspace = Subspace.from_sparse(list(vectors), ambient.dim)
    registered = []
    for idempotent in idempotents:
        dense = [idempotent.get(index, ZERO) for index in range(ambient.dim)]
        registered.append(tuple(subspace.coordinates(dense)))
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        degree=degree,
        family=family,
        params=params,
        idempotents=registered,
        labels=[combination_label(ambient.meta.labels, vector) for vector in subspace.sparse_basis()],
    )
    algebra = restrict(ambient, subspace, name, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def build_Q_plus(n: int = 2) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: Unless `n` is 2.

    Returns:
        SuperAlgebra: Q(n)^(+), the matrices `[[A, B], [B, A]]` of M(n,n)^(+).
    """
    if n != 2:
        raise OutOfRange(f"Q({n})^(+) is only built for n = 2.")
    size = 2 * n
    ambient = plus_functor(matrix_superalgebra(n, n))
    vectors = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            vectors.append({_matrix_index(size, i, j): ONE, _matrix_index(size, n + i, n + j): ONE})
            vectors.append({_matrix_index(size, i, n + j): ONE, _matrix_index(size, n + i, j): ONE})
    idempotents = [
        {_matrix_index(size, i, i): ONE, _matrix_index(size, n + i, n + i): ONE}
        for i in range(1, n + 1)
    ]
    return _sub_plus(ambient, vectors, f"Q({n})^(+)", "Qplus", {"n": n}, idempotents, n)


def build_P(n: int = 2) -> SuperAlgebra:
    """
    Raises:
        OutOfRange: Unless `n` is 2.

    Returns:
        SuperAlgebra: P(n), the matrices `[[a, b], [c, a^t]]` of M(n,n)^(+)
            with `b` skew and `c` symmetric.
    """
    if n != 2:
        raise OutOfRange(f"P({n}) is only built for n = 2.")
    size = 2 * n
    ambient = plus_functor(matrix_superalgebra(n, n))
    vectors = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            vectors.append({_matrix_index(size, i, j): ONE, _matrix_index(size, n + j, n + i): ONE})
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i < j:
                vectors.append(
                    {_matrix_index(size, i, n + j): ONE, _matrix_index(size, j, n + i): Scalar(-1)}
                )
                vectors.append(
                    {_matrix_index(size, n + i, j): ONE, _matrix_index(size, n + j, i): ONE}
                )
            else:
                vectors.append({_matrix_index(size, n + i, i): ONE})
    idempotents = [
        {_matrix_index(size, i, i): ONE, _matrix_index(size, n + i, n + i): ONE}
        for i in range(1, n + 1)
    ]
    return _sub_plus(ambient, vectors, f"P({n})", "P", {"n": n}, idempotents, n)


def _star(n: int, m: int) -> SparseRows:
    """The involution `x -> U^-1 x^st U` on the matrix units of M(n, 2m)."""
    size = n + 2 * m
    u: Dict[int, Dict[int, Scalar]] = {}
    inverse: Dict[int, Dict[int, Scalar]] = {}
    for i in range(1, n + 1):
        u[i] = {i: ONE}
        inverse[i] = {i: ONE}
    for k in range(1, m + 1):
        top, bottom = n + k, n + m + k
        u[top] = {bottom: ONE}
        u[bottom] = {top: Scalar(-1)}
        inverse[top] = {bottom: Scalar(-1)}
        inverse[bottom] = {top: ONE}
    rows: SparseRows = {}
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            # supertranspose of e_ab
            sign = Scalar(-1) if a <= n < b else ONE
            row, column = b, a
            for r in range(1, size + 1):
                left = inverse[r].get(row)
                if not left:
                    continue
                for c, right in u[column].items():
                    target = _matrix_index(size, r, c)
                    source = _matrix_index(size, a, b)
                    value = rows.setdefault(target, {}).get(source, ZERO) + sign * left * right
                    rows[target][source] = value
    return rows


def build_osp(n: int, m: int) -> SuperAlgebra:
    """
    Args:
        n (int): Size of the even block.
        m (int): Half the size of the odd block.

    Raises:
        OutOfRange: Unless `(n, m)` is `(1, 1)` or `(2, 1)`.

    Returns:
        SuperAlgebra: The hermitian part of M(n,2m)^(+) for the
            orthosymplectic superinvolution.
    """
    if (n, m) not in ((1, 1), (2, 1)):
        raise OutOfRange(f"osp({n},{m}) is only built for (1, 1) and (2, 1).")
    size = n + 2 * m
    ambient = plus_functor(matrix_superalgebra(n, 2 * m))
    rows = _star(n, m)
    for index in range(size * size):
        row = rows.setdefault(index, {})
        row[index] = row.get(index, ZERO) - ONE
    rows = {i: {j: value for j, value in row.items() if value} for i, row in rows.items()}
    hermitian = kernel(sparse_matrix(rows, (size * size, size * size)))
    idempotents = [{_matrix_index(size, i, i): ONE} for i in range(1, n + 1)]
    return _sub_plus(
        ambient,
        hermitian.sparse_basis(),
        f"osp({n},{m})",
        "osp",
        {"n": n, "m": m},
        idempotents,
    )


def build_JVf(n0: int, n1: int) -> SuperAlgebra:
    """
    Args:
        n0 (int): Dimension of the even part of V.
        n1 (int): Dimension of the odd part of V, even.

    Raises:
        OutOfRange: When `n1` is odd, `n0 < 1` or `n0 + n1 > 6`.

    Returns:
        SuperAlgebra: The superform algebra `F1 + V` with the identity form on
            the even part and the standard symplectic form on the odd part.
    """
    if n1 % 2 or n1 < 0:
        raise OutOfRange(f"J({n0},{n1}) needs an even odd dimension, got {n1}.")
    if n0 < 1 or n0 + n1 > JV_LIMIT:
        raise OutOfRange(f"J({n0},{n1}) is outside of n0 >= 1 and n0 + n1 <= {JV_LIMIT}.")
    labels = ["1"] + [f"v{i + 1}" for i in range(n0)]
    for k in range(n1 // 2):
        labels += [f"x{k + 1}", f"y{k + 1}"]
    dim = len(labels)
    parity = [0] * (1 + n0) + [1] * n1
    table = {}
    for index in range(dim):
        table[(0, index)] = [(index, ONE)]
        table[(index, 0)] = [(index, ONE)]
    for index in range(1, n0 + 1):
        table[(index, index)] = [(0, ONE)]
    for k in range(n1 // 2):
        x, y = 1 + n0 + 2 * k, 2 + n0 + 2 * k
        table[(x, y)] = [(0, ONE)]
        table[(y, x)] = [(0, Scalar(-1))]
    unit = [ONE] + [ZERO] * (dim - 1)
    idempotents = []
    for sign in (ONE, Scalar(-1)):
        idempotents.append(tuple([HALF, HALF * sign] + [ZERO] * (dim - 2)))
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        degree=2,
        family="JVf",
        params={"n0": n0, "n1": n1},
        idempotents=idempotents,
        labels=labels,
    )
    algebra = SuperAlgebra(f"J({n0},{n1})", parity, table, unit, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def build_Dt(t) -> SuperAlgebra:
    """
    Args:
        t (Scalar): A nonzero parameter, anything `Scalar.coerce` accepts.

    Raises:
        BadParameter: When `t` is zero.

    Returns:
        SuperAlgebra: The 4-dimensional superalgebra D_t on `e1, e2, x, y`.
    """
    t = Scalar.coerce(t)
    if not t:
        raise BadParameter("D_t is not simple for t = 0.")
    table = {
        (0, 0): [(0, ONE)],
        (1, 1): [(1, ONE)],
        (2, 3): [(0, ONE), (1, t)],
        (3, 2): [(0, Scalar(-1)), (1, -t)],
    }
    for e in (0, 1):
        for odd in (2, 3):
            table[(e, odd)] = [(odd, HALF)]
            table[(odd, e)] = [(odd, HALF)]
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        degree=2,
        family="Dt",
        params={"t": str(t)},
        idempotents=[(ONE, ZERO, ZERO, ZERO), (ZERO, ONE, ZERO, ZERO)],
        labels=["e1", "e2", "x", "y"],
    )
    algebra = SuperAlgebra(f"D({t})", [0, 0, 1, 1], table, [ONE, ONE, ZERO, ZERO], meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def build_K3() -> SuperAlgebra:
    """
    Returns:
        SuperAlgebra: The Kaplansky superalgebra on `e, x, y`, without unit.
    """
    table = {
        (0, 0): [(0, ONE)],
        (0, 1): [(1, HALF)],
        (1, 0): [(1, HALF)],
        (0, 2): [(2, HALF)],
        (2, 0): [(2, HALF)],
        (1, 2): [(0, ONE)],
        (2, 1): [(0, Scalar(-1))],
    }
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        degree=1,
        family="K3",
        idempotents=[(ONE, ZERO, ZERO)],
        labels=["e", "x", "y"],
    )
    algebra = SuperAlgebra("K3", [0, 1, 1], table, None, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def _checksum_path(table_path: str) -> str:
    return os.path.splitext(table_path)[0] + ".sha256"


def build_K10(table_path: Optional[str] = None) -> SuperAlgebra:
    """Loads the 10-dimensional Kac superalgebra and validates it.

    Args:
        table_path (str, optional): Path to an algebra JSON file. Defaults to
            the packaged table, whose checksum is verified first.

    Raises:
        K10DataCorrupt: When the checksum, the Jordan identities, the unit or
            the simplicity probe reject the data.

    Returns:
        SuperAlgebra: K10.
    """
    table_path = table_path or K10_TABLE
    checksum_path = _checksum_path(table_path)
    if os.path.exists(checksum_path):
        with open(checksum_path, "r", encoding="utf-8") as _file:
            expected = _file.read().split()[0]
        if sha256_file(table_path) != expected:
            raise K10DataCorrupt(f"{table_path} does not match {checksum_path}.")
    try:
        algebra = load_algebra(table_path)
    except (DeltaAlgError, OSError) as error:
        raise K10DataCorrupt(f"{table_path} cannot be loaded: {error}") from error
    if algebra.dim != 10:
        raise K10DataCorrupt(f"{table_path} has dim {algebra.dim} instead of 10.")
    if algebra.unit is None:
        raise K10DataCorrupt(f"{table_path} carries no unit.")
    check = check_super_variety(algebra, Variety.JORDAN_SUPER)
    if not check:
        raise K10DataCorrupt(f"{table_path} fails {check.describe(algebra)}.")
    probe = simplicity_probe(algebra)
    if probe.found_ideal:
        raise K10DataCorrupt(f"{table_path} has a proper ideal of dim {probe.ideal.dim}.")
    logging.info(f"Loaded {algebra.name} from {table_path}.")
    return algebra


def _polynomial_parity(polynomial: Polynomial) -> int:
    return len(next(iter(polynomial))) % 2 if polynomial else 0


def grassmann_bracket(n: int, f: Polynomial, g: Polynomial) -> Polynomial:
    """
    Args:
        n (int): Number of Grassmann generators.
        f (Polynomial): A homogeneous Grassmann polynomial.
        g (Polynomial): A Grassmann polynomial.

    Returns:
        Polynomial: `{f, g} = (-1)^p(f) sum_j (df/de_j)(dg/de_j)`.
    """
    result: Polynomial = {}
    sign = -1 if _polynomial_parity(f) else 1
    for j in range(1, n + 1):
        for left, a in f.items():
            left_derivative = grassmann_derivative(j, left)
            if not left_derivative:
                continue
            for right, b in g.items():
                right_derivative = grassmann_derivative(j, right)
                if not right_derivative:
                    continue
                product = grassmann_product(left_derivative[1], right_derivative[1])
                if not product:
                    continue
                factor = sign * left_derivative[0] * right_derivative[0] * product[0]
                add_into(result, {product[1]: a * b}, Scalar(factor))
    return result


def jgamma_index(n: int, monomial: Monomial, bar: bool = False) -> int:
    """
    Returns:
        int: The basis index of `monomial` or of its bar in J(Gamma_n).
    """
    position = subsets(n).index(tuple(monomial))
    return position + (2**n if bar else 0)


def build_JGamma(n: int) -> SuperAlgebra:
    """
    Args:
        n (int): Number of Grassmann generators, 2 or 3.

    Raises:
        OutOfRange: For other values of `n`.

    Returns:
        SuperAlgebra: J(Gamma_n), the plain monomials first and their bars after.
    """
    if not JGAMMA_RANGE[0] <= n <= JGAMMA_RANGE[1]:
        raise OutOfRange(f"J(Gamma_{n}) is only built for n in {list(range(2, 4))}.")
    monomials = subsets(n)
    offset = len(monomials)
    position = {monomial: index for index, monomial in enumerate(monomials)}
    table: Dict[Tuple[int, int], List[Tuple[int, Scalar]]] = {}
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            sign_b = -1 if len(b) % 2 else 1
            product = grassmann_product(a, b)
            if product:
                sign, target = product
                table[(i, j)] = [(position[target], Scalar(sign))]
                table[(offset + i, j)] = [(offset + position[target], Scalar(sign * sign_b))]
                table[(i, offset + j)] = [(offset + position[target], Scalar(sign))]
            bracket = grassmann_bracket(n, {a: ONE}, {b: ONE})
            if bracket:
                table[(offset + i, offset + j)] = [
                    (position[target], Scalar(sign_b) * value) for target, value in bracket.items()
                ]
    parity = [len(m) % 2 for m in monomials] + [(len(m) + 1) % 2 for m in monomials]
    labels = [monomial_label(m) for m in monomials] + [f"bar({monomial_label(m)})" for m in monomials]
    unit = [ONE] + [ZERO] * (2 * offset - 1)
    meta = Meta(
        claims=Claims.JORDAN_SUPER,
        family="JGamma",
        params={"n": n},
        labels=labels,
    )
    algebra = SuperAlgebra(f"J(Gamma_{n})", parity, table, unit, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def check_bar_squares(n: int = 3) -> List[Tuple[str, int, str]]:
    """Applies `bar(e_i)` twice to every plain and bar monomial of J(Gamma_n).

    Twice on a plain `x` gives `x` when `x` does not contain `e_i` and 0
    otherwise. Twice on `bar(x)` gives `bar(x)` when `x` contains `e_i` and 0
    otherwise.

    Returns:
        List[Tuple[str, int, str]]: The failing `(label, i, part)` cases, the
            part being "plain" or "bar". Empty when both rules hold.
    """
    algebra = build_JGamma(n)
    failures = []
    for monomial in subsets(n):
        for i in range(1, n + 1):
            generator = {jgamma_index(n, (i,), bar=True): ONE}
            contains = i in monomial
            for part, bar in (("plain", False), ("bar", True)):
                x = {jgamma_index(n, monomial, bar=bar): ONE}
                twice = algebra.product(generator, algebra.product(generator, x))
                expected = x if contains == bar else {}
                if twice != expected:
                    failures.append((monomial_label(monomial), i, part))
    return failures


def build_H_matrices(n: int) -> SuperAlgebra:
    """
    Args:
        n (int): Matrix size, 2 or 3.

    Raises:
        OutOfRange: For other values of `n`.

    Returns:
        SuperAlgebra: The Jordan algebra H_n of symmetric matrices.
    """
    if n not in (2, 3):
        raise OutOfRange(f"H{n} is only built for n in [2, 3].")
    ambient = plus_functor(matrix_superalgebra(n, 0))
    vectors = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i == j:
                vectors.append({_matrix_index(n, i, i): ONE})
            else:
                vectors.append({_matrix_index(n, i, j): ONE, _matrix_index(n, j, i): ONE})
    idempotents = [{_matrix_index(n, i, i): ONE} for i in range(1, n + 1)]
    return _sub_plus(ambient, vectors, f"H{n}", "Hmatrices", {"n": n}, idempotents, n)


def build_quasi_associative(lam=Fraction(1, 3)) -> SuperAlgebra:
    """
    Args:
        lam (Scalar): The mixing parameter, anything `Scalar.coerce` accepts.

    Returns:
        SuperAlgebra: M2 with the product `lam * xy + (1 - lam) * yx`, flexible
            and noncommutative Jordan.
    """
    lam = Scalar.coerce(lam)
    matrices = matrix_superalgebra(2, 0)
    table = {}
    for i in range(matrices.dim):
        for j in range(matrices.dim):
            value: Sparse = {}
            add_into(value, matrices.basis_product(i, j), lam)
            add_into(value, matrices.basis_product(j, i), ONE - lam)
            if value:
                table[(i, j)] = list(value.items())
    meta = Meta(
        claims=Claims.FLEXIBLE | Claims.NC_JORDAN,
        degree=2,
        family="quasi",
        params={"lambda": str(lam)},
        idempotents=matrices.meta.idempotents,
        labels=matrices.meta.labels,
    )
    algebra = SuperAlgebra(f"M2({lam})", matrices.parity, table, matrices.unit, meta)
    logging.info(f"Built {algebra.name} of dim {algebra.dim}.")
    return algebra


def build_M2() -> SuperAlgebra:
    """
    Returns:
        SuperAlgebra: The associative algebra of 2x2 matrices, as a degree 2
            noncommutative Jordan algebra.
    """
    matrices = matrix_superalgebra(2, 0)
    meta = Meta(
        claims=Claims.FLEXIBLE | Claims.NC_JORDAN,
        degree=2,
        family="M2",
        idempotents=matrices.meta.idempotents,
        labels=matrices.meta.labels,
    )
    return _with_meta(matrices, "M2", meta)


def build_jordan_algebras() -> List[SuperAlgebra]:
    """
    Returns:
        List[SuperAlgebra]: The ordinary algebras H2, H3, M2, J(2,0) and H2+H2.
    """
    h2 = build_H_matrices(2)
    return [
        h2,
        build_H_matrices(3),
        build_M2(),
        build_JVf(2, 0),
        direct_sum(h2, h2, "H2+H2"),
    ]

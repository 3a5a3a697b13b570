import hashlib
import itertools
import random

from typing import Dict, Iterable, List, Optional, Tuple


Monomial = Tuple[int, ...]


def subsets(n: int) -> List[Monomial]:
    """
    Args:
        n (int): Number of Grassmann generators.

    Returns:
        List[Monomial]:
            All subsets of {1..n} as sorted tuples, ordered by size then
            lexicographically.
    """
    result: List[Monomial] = []
    for size in range(n + 1):
        result.extend(itertools.combinations(range(1, n + 1), size))
    return result


def koszul_sign(left: Iterable[int], right: Iterable[int]) -> int:
    """
    Args:
        left (Iterable[int]): Sorted indices of the left monomial.
        right (Iterable[int]): Sorted indices of the right monomial.

    Returns:
        int: The sign of the shuffle sorting the concatenation of both monomials.
    """
    right = tuple(right)
    inversions = sum(1 for a in left for b in right if a > b)
    return -1 if inversions % 2 else 1


def grassmann_product(left: Monomial, right: Monomial) -> Optional[Tuple[int, Monomial]]:
    """
    Args:
        left (Monomial): Left monomial.
        right (Monomial): Right monomial.

    Returns:
        Optional[Tuple[int, Monomial]]:
            The sign and the resulting monomial, None when the product vanishes.
    """
    if set(left) & set(right):
        return None
    return koszul_sign(left, right), tuple(sorted(left + right))


def grassmann_derivative(index: int, monomial: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Applies the odd left derivation d/d(xi_index) to a monomial.

    Args:
        index (int): The generator to differentiate by.
        monomial (Monomial): The sorted monomial.

    Returns:
        Optional[Tuple[int, Monomial]]:
            The sign and the resulting monomial, None when the result vanishes.
    """
    if index not in monomial:
        return None
    position = monomial.index(index)
    sign = -1 if position % 2 else 1
    return sign, monomial[:position] + monomial[position + 1 :]


def apply_derivation(
    coefficient: Dict[Monomial, int], index: int, polynomial: Dict[Monomial, int]
) -> Dict[Monomial, int]:
    """Applies `coefficient * d/d(xi_index)` to a Grassmann polynomial.

    Args:
        coefficient (Dict[Monomial, int]): The polynomial multiplying the derivative.
        index (int): The generator of the derivative.
        polynomial (Dict[Monomial, int]): The polynomial to act on.

    Returns:
        Dict[Monomial, int]: The resulting polynomial, without zero terms.
    """
    result: Dict[Monomial, int] = {}
    for monomial, value in polynomial.items():
        derived = grassmann_derivative(index, monomial)
        if derived is None:
            continue
        sign, rest = derived
        for left, factor in coefficient.items():
            product = grassmann_product(left, rest)
            if product is None:
                continue
            sign_, target = product
            result[target] = result.get(target, 0) + sign * sign_ * factor * value
    return {key: value for key, value in result.items() if value}


def seeded_random(seed: int, key: str = "") -> random.Random:
    """
    Args:
        seed (int): The user facing seed.
        key (str): A label making the stream specific to one check.

    Returns:
        random.Random: A generator that does not depend on scheduling order.
    """
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).hexdigest()
    return random.Random(int(digest[:16], 16))


def sha256_file(filename: str) -> str:
    """
    Args:
        filename (str): The file to hash.

    Returns:
        str: The hexadecimal sha256 digest of the file content.
    """
    with open(filename, "rb") as fle:
        return hashlib.sha256(fle.read()).hexdigest()

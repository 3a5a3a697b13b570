"""JSON persistence of superalgebras."""

import json
import logging
import os

from typing import Any, Dict, List, Optional

import dictdiffer

from .enums import CLAIM_KEYS, Claims
from .exactfield import Scalar, format_scalar, parse_scalar
from .exceptions import DivisionByZero, SchemaError, VerificationFailed
from .superalg import Meta, SuperAlgebra


def _scalar(value: Any, pointer: str) -> Scalar:
    if not isinstance(value, str):
        raise SchemaError("scalars must be strings", pointer)
    try:
        return parse_scalar(value)
    except (ValueError, DivisionByZero) as error:
        raise SchemaError(str(error), pointer) from error


def _integer(value: Any, pointer: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError("expected an integer", pointer)
    return value


def _list(value: Any, pointer: str) -> list:
    if not isinstance(value, list):
        raise SchemaError("expected an array", pointer)
    return value


def algebra_to_dict(algebra: SuperAlgebra) -> Dict[str, Any]:
    """
    Args:
        algebra (SuperAlgebra): The algebra to serialize.

    Returns:
        Dict[str, Any]: The JSON schema representation, entries sorted.
    """
    table = []
    for (i, j), entries in sorted(algebra.table.items()):
        table.append([i, j, [[k, format_scalar(value)] for k, value in entries]])
    meta: Dict[str, Any] = {
        key: bool(algebra.claims & flag) for flag, key in CLAIM_KEYS.items()
    }
    meta.update(
        {
            "degree": algebra.meta.degree,
            "family": algebra.meta.family,
            "params": algebra.meta.params,
            "idempotents": [
                [format_scalar(value) for value in idempotent]
                for idempotent in algebra.meta.idempotents
            ],
            "labels": list(algebra.meta.labels),
        }
    )
    return {
        "name": algebra.name,
        "dim": algebra.dim,
        "parity": list(algebra.parity),
        "unit": None
        if algebra.unit is None
        else [format_scalar(value) for value in algebra.unit],
        "table": table,
        "meta": meta,
    }


def _meta_from_dict(data: Any, dim: int) -> Meta:
    if data is None:
        return Meta()
    if not isinstance(data, dict):
        raise SchemaError("expected an object", "/meta")
    claims = Claims(0)
    for flag, key in CLAIM_KEYS.items():
        if data.get(key):
            claims |= flag
    degree = data.get("degree")
    if degree is not None:
        degree = _integer(degree, "/meta/degree")
    idempotents = []
    for r, idempotent in enumerate(_list(data.get("idempotents", []), "/meta/idempotents")):
        pointer = f"/meta/idempotents/{r}"
        values = _list(idempotent, pointer)
        if len(values) != dim:
            raise SchemaError(f"expected {dim} coordinates", pointer)
        idempotents.append(
            tuple(_scalar(value, f"{pointer}/{c}") for c, value in enumerate(values))
        )
    labels = _list(data.get("labels", []), "/meta/labels")
    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise SchemaError("expected an object", "/meta/params")
    return Meta(
        claims=claims,
        degree=degree,
        family=data.get("family"),
        params=params,
        idempotents=idempotents,
        labels=[str(label) for label in labels],
    )


def algebra_from_dict(data: Any) -> SuperAlgebra:
    """
    Args:
        data (Any): A decoded JSON document.

    Raises:
        SchemaError: When the document does not match the schema.
        GradingError: When a structure constant breaks the grading.

    Returns:
        SuperAlgebra: The algebra.
    """
    if not isinstance(data, dict):
        raise SchemaError("expected an object", "/")
    for key in ("name", "dim", "parity", "table"):
        if key not in data:
            raise SchemaError(f"missing key {key!r}", "/")
    name = data["name"]
    if not isinstance(name, str):
        raise SchemaError("expected a string", "/name")
    dim = _integer(data["dim"], "/dim")
    parity = _list(data["parity"], "/parity")
    if len(parity) != dim:
        raise SchemaError(f"expected {dim} parities", "/parity")
    for index, value in enumerate(parity):
        if value not in (0, 1) or isinstance(value, bool):
            raise SchemaError("parity must be 0 or 1", f"/parity/{index}")
    table: Dict[tuple, List[tuple]] = {}
    for r, row in enumerate(_list(data["table"], "/table")):
        pointer = f"/table/{r}"
        row = _list(row, pointer)
        if len(row) != 3:
            raise SchemaError("expected [i, j, entries]", pointer)
        i = _integer(row[0], f"{pointer}/0")
        j = _integer(row[1], f"{pointer}/1")
        for index, value in ((0, i), (1, j)):
            if not 0 <= value < dim:
                raise SchemaError(f"index {value} is out of range", f"{pointer}/{index}")
        entries = []
        for c, entry in enumerate(_list(row[2], f"{pointer}/2")):
            entry_pointer = f"{pointer}/2/{c}"
            entry = _list(entry, entry_pointer)
            if len(entry) != 2:
                raise SchemaError("expected [k, scalar]", entry_pointer)
            k = _integer(entry[0], f"{entry_pointer}/0")
            if not 0 <= k < dim:
                raise SchemaError(f"index {k} is out of range", f"{entry_pointer}/0")
            entries.append((k, _scalar(entry[1], f"{entry_pointer}/1")))
        if (i, j) in table:
            raise SchemaError(f"duplicate entry for ({i}, {j})", pointer)
        table[(i, j)] = entries
    unit: Optional[List[Scalar]] = None
    if data.get("unit") is not None:
        values = _list(data["unit"], "/unit")
        if len(values) != dim:
            raise SchemaError(f"expected {dim} coordinates", "/unit")
        unit = [_scalar(value, f"/unit/{c}") for c, value in enumerate(values)]
    meta = _meta_from_dict(data.get("meta"), dim)
    return SuperAlgebra(name, parity, table, unit, meta)


def dumps_algebra(algebra: SuperAlgebra) -> str:
    return json.dumps(algebra_to_dict(algebra), indent=4, sort_keys=True) + "\n"


def loads_algebra(text: str) -> SuperAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise SchemaError(f"invalid JSON: {error.msg}", "/") from error
    return algebra_from_dict(data)


def load_algebra(path: str) -> SuperAlgebra:
    """
    Args:
        path (str): Path to an algebra JSON file.

    Returns:
        SuperAlgebra: The algebra.
    """
    with open(path, "r", encoding="utf-8") as _file:
        return loads_algebra(_file.read())


def diff_algebras(left: SuperAlgebra, right: SuperAlgebra) -> list:
    """
    Returns:
        list: The dictdiffer differences between both serialized algebras.
    """
    return list(dictdiffer.diff(algebra_to_dict(left), algebra_to_dict(right)))


def save_algebra(algebra: SuperAlgebra, path: str, verify: bool = False):
    """
    Args:
        algebra (SuperAlgebra): The algebra to write.
        path (str): Destination JSON file, parent folders are created.
        verify (bool): Reload the file and compare it with the algebra.

    Raises:
        VerificationFailed: When the reloaded algebra differs.
    """
    dirname = os.path.dirname(path)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)
    with open(path, "w", encoding="utf-8") as _file:
        _file.write(dumps_algebra(algebra))
    if verify:
        differences = diff_algebras(algebra, load_algebra(path))
        if differences:
            raise VerificationFailed(f"{path} does not round-trip: {differences[:3]}")
    logging.info(f"Saved {algebra.name} to {path}.")

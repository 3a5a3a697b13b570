"""The manifest of structural checks, run over the constructed algebras.

Checks are data: every manifest entry names an algebra, the tier it belongs
to and the kinds of checks it goes through. Adding an algebra or a kind of
check to the battery does not touch the runner.
"""

import json
import logging
import os

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple

from .batch import run_jobs_sync
from .contexts import Stopwatch
from .dersolve import (
    FUNCTOR_DELTAS,
    LITERATURE_DELTAS,
    PROBE_DELTAS,
    StructureCheck,
    centroid,
    check_commutator_centroid,
    check_functor_split,
    check_nc_jordan,
    check_plus_transfer,
    classify,
    delta_defect,
    delta_derivations,
    inner_derivations,
    psi_bracket,
    scan_exceptional,
    unit_multiplication_defect,
)
from .enums import Claims, Identity, Mode, Parity, Tier, Variety, Verdict
from .exactfield import HALF, ONE, Scalar, format_scalar
from .exceptions import BadParameter, DeltaAlgError, SchemaError, UnknownAlgebra
from .functions import seeded_random
from .jordancons import (
    build_Dt,
    build_H_matrices,
    build_JGamma,
    build_JVf,
    build_K3,
    build_K10,
    build_M2,
    build_matrix_plus,
    build_osp,
    build_P,
    build_Q_plus,
    build_quasi_associative,
    check_bar_squares,
    matrix_superalgebra,
)
from .liecons import (
    build_H,
    build_Htilde,
    build_S,
    build_Stilde,
    build_sl,
    build_W,
    cartan_and_roots,
    root_display,
    w_grading_violation,
    w_weights,
)
from .superalg import (
    Element,
    IdentityCheck,
    SuperAlgebra,
    check_identity_multilinear,
    check_super_variety,
    direct_sum,
    grassmann,
    mutate,
    peirce_decompose,
)


def _build_h_pair(n: int) -> SuperAlgebra:
    summand = build_H_matrices(n)
    return direct_sum(summand, summand, f"H{n}+H{n}")


@dataclass(frozen=True)
class Builder:
    """A construction and the names of its parameters."""

    function: Callable[..., SuperAlgebra]
    params: Tuple[str, ...] = ()
    defaults: Tuple[Tuple[str, Any], ...] = ()


BUILDERS: Dict[str, Builder] = {
    "W": Builder(build_W, ("n",)),
    "S": Builder(build_S, ("n",)),
    "Stilde": Builder(build_Stilde, ("n",)),
    "Htilde": Builder(build_Htilde, ("n",)),
    "H": Builder(build_H, ("n",)),
    "sl": Builder(build_sl, ("m", "n")),
    "M": Builder(matrix_superalgebra, ("m", "n")),
    "Mplus": Builder(build_matrix_plus, ("m", "n")),
    "Qplus": Builder(build_Q_plus, ("n",), (("n", 2),)),
    "P": Builder(build_P, ("n",), (("n", 2),)),
    "osp": Builder(build_osp, ("n", "m")),
    "JVf": Builder(build_JVf, ("n0", "n1")),
    "Dt": Builder(build_Dt, ("t",)),
    "K3": Builder(build_K3),
    "K10": Builder(build_K10),
    "JGamma": Builder(build_JGamma, ("n",)),
    "Hn": Builder(build_H_matrices, ("n",)),
    "Hpair": Builder(_build_h_pair, ("n",), (("n", 2),)),
    "M2": Builder(build_M2),
    "quasi": Builder(build_quasi_associative, ("lam",), (("lam", "1/3"),)),
    "Lambda": Builder(grassmann, ("n",)),
}
ALIASES: Dict[str, Tuple[str, Dict[str, Any]]] = {
    "H2": ("Hn", {"n": 2}),
    "H3": ("Hn", {"n": 3}),
}


def build_algebra(
    family: str, params: Optional[Dict[str, Any]] = None, k10_table: Optional[str] = None
) -> SuperAlgebra:
    """
    Args:
        family (str): A key of `BUILDERS` or `ALIASES`.
        params (Dict[str, Any], optional): The construction parameters.
        k10_table (str, optional): Overrides the packaged K10 table.

    Raises:
        UnknownAlgebra: When the family is not registered.
        BadParameter: When parameters are missing or unexpected.

    Returns:
        SuperAlgebra: The constructed algebra.
    """
    params = dict(params or {})
    if family in ALIASES:
        family, fixed = ALIASES[family]
        params = {**fixed, **params}
    if family not in BUILDERS:
        raise UnknownAlgebra(f"Unknown algebra family {family!r}.")
    builder = BUILDERS[family]
    unexpected = sorted(set(params) - set(builder.params))
    if unexpected:
        raise BadParameter(f"{family} does not take {', '.join(unexpected)}.")
    arguments = {**dict(builder.defaults), **params}
    missing = [name for name in builder.params if name not in arguments]
    if missing:
        raise BadParameter(f"{family} needs {', '.join(missing)}.")
    if family == "K10":
        return builder.function(k10_table)
    return builder.function(**arguments)


@dataclass(frozen=True)
class AlgebraSpec:
    """A family name with its parameters."""

    family: str
    params: Tuple[Tuple[str, Any], ...] = ()

    @classmethod
    def of(cls, family: str, **params) -> "AlgebraSpec":
        return cls(family, tuple(sorted(params.items())))

    @classmethod
    def from_dict(cls, data: Any, pointer: str = "/algebras") -> "AlgebraSpec":
        if not isinstance(data, dict) or not isinstance(data.get("family"), str):
            raise SchemaError("expected an object with a family", pointer)
        params = data.get("params") or {}
        if not isinstance(params, dict):
            raise SchemaError("expected an object", f"{pointer}/params")
        return cls.of(data["family"], **params)

    def to_dict(self) -> Dict[str, Any]:
        return {"family": self.family, "params": dict(self.params)}

    def build(self, k10_table: Optional[str] = None) -> SuperAlgebra:
        return build_algebra(self.family, dict(self.params), k10_table)

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}({','.join(str(value) for _, value in self.params)})"


@lru_cache(maxsize=None)
def _built(spec: AlgebraSpec, k10_table: Optional[str]) -> SuperAlgebra:
    return spec.build(k10_table)


Options = Tuple[Tuple[str, Any], ...]


@dataclass(frozen=True)
class Entry:
    """An algebra of the battery with the kinds of checks it goes through."""

    algebra: AlgebraSpec
    tier: Tier
    kinds: Tuple[str, ...]
    options: Options = ()


def _entry(tier: Tier, algebra: AlgebraSpec, *kinds: str, **options) -> Entry:
    return Entry(algebra, tier, kinds, tuple(sorted(options.items())))


JORDAN_SUPER_KINDS = ("axioms", "peirce", "classify", "unit_factorization")
CARTAN_HALF_ONE = ("1/2", "1")
# Plain delta-derivation dims of simple Lie superalgebras away from delta = 1.
SIMPLE_LIE_DIMS = (("-1", 0), ("0", 0), ("1/3", 0), ("1/2", 1), ("2/3", 0), ("2", 0), ("5/7", 0))

MANIFEST: Tuple[Entry, ...] = (
    _entry(
        Tier.FAST,
        AlgebraSpec.of("W", n=2),
        "axioms",
        "roots",
        "scan",
        "classify",
        "mutation",
        modes=("plain", "super"),
        allowed=CARTAN_HALF_ONE,
        plain_dims=SIMPLE_LIE_DIMS,
    ),
    _entry(
        Tier.FAST,
        AlgebraSpec.of("K3"),
        "axioms",
        "peirce",
        "scan",
        "classify",
        modes=("super",),
        allowed=CARTAN_HALF_ONE,
    ),
    _entry(Tier.FAST, AlgebraSpec.of("Dt", t="3"), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(
        Tier.FAST,
        AlgebraSpec.of("JGamma", n=2),
        "axioms",
        "classify",
        "unit_factorization",
        "bar_squares",
        modes=("super",),
    ),
    _entry(Tier.FAST, AlgebraSpec.of("Mplus", m=1, n=1), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("W", n=3),
        "axioms",
        "roots",
        "classify",
        modes=("plain",),
        plain_dims=SIMPLE_LIE_DIMS,
    ),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("S", n=3),
        "axioms",
        "roots",
        "scan",
        "classify",
        modes=("plain",),
        allowed=CARTAN_HALF_ONE,
        plain_dims=SIMPLE_LIE_DIMS,
    ),
    _entry(Tier.FULL, AlgebraSpec.of("sl", m=2, n=1), "axioms", "classify", "psi", modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("Mplus", m=2, n=1), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("Qplus", n=2), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("osp", n=1, m=1), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("osp", n=2, m=1), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("P", n=2), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("JVf", n0=2, n1=2), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("Dt", t="1"), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("Dt", t="2"), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("Dt", t="-1"), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(Tier.FULL, AlgebraSpec.of("K10"), *JORDAN_SUPER_KINDS, modes=("super",)),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("JGamma", n=3),
        "axioms",
        "classify",
        "unit_factorization",
        "bar_squares",
        modes=("super",),
    ),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("Hn", n=2),
        "axioms",
        "peirce",
        "classify",
        "commutator_centroid",
        "functor_split",
        "nc_jordan",
        modes=("plain",),
    ),
    _entry(Tier.FULL, AlgebraSpec.of("Hn", n=3), "axioms", "peirce", "classify", "nc_jordan", modes=("plain",)),
    _entry(Tier.FULL, AlgebraSpec.of("Hpair", n=2), "axioms", "classify", "nc_jordan", modes=("plain",)),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("M2"),
        "axioms",
        "classify",
        "commutator_centroid",
        "functor_split",
        "nc_jordan",
        modes=("plain",),
    ),
    _entry(
        Tier.FULL,
        AlgebraSpec.of("quasi", lam="1/3"),
        "axioms",
        "classify",
        "commutator_centroid",
        "functor_split",
        "nc_jordan",
        modes=("plain",),
    ),
    _entry(Tier.FULL, AlgebraSpec.of("M", m=1, n=1), "plus_transfer"),
    _entry(
        Tier.EXTENDED,
        AlgebraSpec.of("Stilde", n=4),
        "axioms",
        "scan",
        "classify",
        modes=("plain",),
        allowed=CARTAN_HALF_ONE,
        plain_dims=SIMPLE_LIE_DIMS,
    ),
    _entry(
        Tier.EXTENDED,
        AlgebraSpec.of("H", n=5),
        "axioms",
        "roots",
        "scan",
        "classify",
        modes=("plain",),
        allowed=CARTAN_HALF_ONE,
        plain_dims=SIMPLE_LIE_DIMS,
    ),
)
DEFAULT_KINDS = ("axioms", "classify")
KIND_ORDER = (
    "axioms",
    "peirce",
    "mutation",
    "roots",
    "scan",
    "classify",
    "psi",
    "unit_factorization",
    "bar_squares",
    "commutator_centroid",
    "functor_split",
    "plus_transfer",
    "nc_jordan",
)
ANCHORS = {
    "axioms": "the construction satisfies the identities of its claimed variety",
    "peirce": "registered idempotents split the algebra into Peirce spaces for 0, 1/2 and 1",
    "mutation": "a perturbed structure constant is caught by the identity checks",
    "roots": "the weights of the Cartan subalgebra lie in the listed root system",
    "scan": "kernel dimensions only jump at delta in {-1, 0, 1/2, 1}",
    "classify": "simple algebras have no nontrivial delta-(super)derivations",
    "psi": "anticommuting an odd delta-superderivation with an odd ad gives an even one",
    "unit_factorization": "1/2-superderivations of unital algebras multiply by their value at the unit",
    "bar_squares": "bar(e_i) applied twice projects the monomials of J(Gamma_n)",
    "commutator_centroid": "1/2-derivations of unital flexible algebras lie in the centroid of the commutator algebra",
    "functor_split": "delta-derivations and centroid are those shared by the plus and minus algebras",
    "plus_transfer": "delta-superderivations of an algebra are delta-superderivations of its plus algebra",
    "nc_jordan": "noncommutative Jordan algebras share delta-derivations and center with their plus algebra",
}
MUTATIONS = 10


def tier_algebras(tier: Tier) -> List[AlgebraSpec]:
    return [entry.algebra for entry in MANIFEST if entry.tier <= tier]


@dataclass
class SuiteConfig:
    """What the suite runs, and how.

    Attributes:
        tier (Tier): Selects the manifest entries when `algebras` is None.
        seed (int): Seed of the randomized probes.
        workers (int): Checks running at once.
        probe_deltas (Tuple[Scalar, ...]): The deltas every classification visits.
        identity_limit (int): Dimension above which identity checks are skipped.
        check_large (bool): Runs identity checks whatever the dimension.
        k10_table (str, optional): Overrides the packaged K10 table.
        algebras (Tuple[AlgebraSpec, ...], optional): Explicit algebra list.
    """

    config_basename = ".alg.json"

    tier: Tier = Tier.FAST
    seed: int = 0
    workers: int = 1
    probe_deltas: Tuple[Scalar, ...] = PROBE_DELTAS
    identity_limit: int = 50
    check_large: bool = False
    k10_table: Optional[str] = None
    algebras: Optional[Tuple[AlgebraSpec, ...]] = None

    @classmethod
    def from_dict(cls, data: Any) -> "SuiteConfig":
        """
        Raises:
            SchemaError: When a key is unknown or a value has the wrong type.

        Returns:
            SuiteConfig: The configuration, defaults filling missing keys.
        """
        if not isinstance(data, dict):
            raise SchemaError("expected an object", "/")
        known = {
            "tier",
            "seed",
            "workers",
            "probe_deltas",
            "identity_limit",
            "check_large",
            "k10_table",
            "algebras",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise SchemaError(f"unknown keys {', '.join(unknown)}", "/")
        config = cls()
        if "tier" in data:
            config.tier = parse_tier(data["tier"])
        for key in ("seed", "workers", "identity_limit"):
            if key in data:
                if isinstance(data[key], bool) or not isinstance(data[key], int):
                    raise SchemaError("expected an integer", f"/{key}")
                setattr(config, key, data[key])
        if "check_large" in data:
            config.check_large = bool(data["check_large"])
        if data.get("k10_table") is not None:
            config.k10_table = str(data["k10_table"])
        if "probe_deltas" in data:
            values = data["probe_deltas"]
            if not isinstance(values, list):
                raise SchemaError("expected an array", "/probe_deltas")
            deltas = []
            for index, value in enumerate(values):
                try:
                    deltas.append(Scalar.coerce(str(value)))
                except (ValueError, DeltaAlgError) as error:
                    raise SchemaError(str(error), f"/probe_deltas/{index}") from error
            config.probe_deltas = tuple(deltas)
        if data.get("algebras") is not None:
            if not isinstance(data["algebras"], list):
                raise SchemaError("expected an array", "/algebras")
            config.algebras = tuple(
                AlgebraSpec.from_dict(value, f"/algebras/{index}")
                for index, value in enumerate(data["algebras"])
            )
        return config

    @classmethod
    def from_file(cls, path: str) -> "SuiteConfig":
        """
        Args:
            path (str): A JSON configuration file, in the `.alg.json` format.

        Returns:
            SuiteConfig: The configuration.
        """
        with open(path, encoding="utf8") as _config_file:
            try:
                data = json.loads(_config_file.read())
            except json.JSONDecodeError as error:
                raise SchemaError(f"invalid JSON: {error.msg}", "/") from error
        logging.info(f"Read suite configuration from {path}.")
        return cls.from_dict(data)

    @classmethod
    def default_path(cls, directory: str = "") -> str:
        return os.path.join(directory or os.getcwd(), cls.config_basename)

    def selected_algebras(self) -> List[AlgebraSpec]:
        if self.algebras is not None:
            return list(self.algebras)
        return tier_algebras(self.tier)


def parse_tier(value: Any) -> Tier:
    try:
        return Tier[str(value).upper()]
    except KeyError as error:
        raise BadParameter(f"Unknown tier {value!r}.") from error


@dataclass(frozen=True)
class Check:
    """One kind of check applied to one algebra."""

    kind: str
    algebra: AlgebraSpec
    options: Options = ()

    @property
    def check_id(self) -> str:
        return f"{self.kind}/{self.algebra}"

    @property
    def anchor(self) -> str:
        return ANCHORS[self.kind]

    def option(self, key: str, default: Any = None) -> Any:
        return dict(self.options).get(key, default)


def manifest_checks(config: SuiteConfig) -> List[Check]:
    """
    Returns:
        List[Check]: The checks of the selected algebras, grouped by kind in
            the order construction, roots, scans, classification and
            structural statements.
    """
    entries = {entry.algebra: entry for entry in MANIFEST}
    checks = []
    for spec in config.selected_algebras():
        entry = entries.get(spec)
        kinds = entry.kinds if entry else DEFAULT_KINDS
        options = entry.options if entry else ()
        checks.extend(Check(kind, spec, options) for kind in kinds)
    return sorted(checks, key=lambda check: KIND_ORDER.index(check.kind))


@dataclass
class Outcome:
    """What a check runner found."""

    passed: bool = True
    witness: Optional[str] = None
    dims: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    skipped: bool = False

    def fail(self, witness: str):
        if self.passed:
            self.passed = False
            self.witness = witness


@dataclass
class CheckRecord:
    """The serialized result of one check."""

    check: str
    kind: str
    anchor: str
    algebra: str
    inputs: Dict[str, Any]
    status: str
    witness: Optional[str] = None
    dims: Dict[str, Any] = field(default_factory=dict)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "failed"

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        data = {
            "check": self.check,
            "kind": self.kind,
            "anchor": self.anchor,
            "algebra": self.algebra,
            "inputs": self.inputs,
            "status": self.status,
            "witness": self.witness,
            "dims": self.dims,
            "rows": self.rows,
        }
        if timings:
            data["seconds"] = round(self.seconds, 3)
        return data


@dataclass
class SuiteReport:
    """Every check record in manifest order."""

    tier: Tier
    seed: int
    records: List[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def status(self) -> str:
        return "PASSED" if self.passed else "FAILED"

    @property
    def first_witness(self) -> Optional[str]:
        for record in self.records:
            if not record.passed:
                return f"{record.check}: {record.witness}"
        return None

    def counts(self) -> Dict[str, int]:
        statuses = [record.status for record in self.records]
        return {
            "checks": len(statuses),
            "passed": statuses.count("passed"),
            "failed": statuses.count("failed"),
            "skipped": statuses.count("skipped"),
        }

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return {
            "tier": self.tier.name.lower(),
            "seed": self.seed,
            "status": self.status,
            "first_witness": self.first_witness,
            "summary": self.counts(),
            "records": [record.to_dict(timings) for record in self.records],
        }


def _text(value: Scalar) -> str:
    return format_scalar(Scalar.coerce(value))


def _modes(check: Check) -> List[Mode]:
    return [Mode(value) for value in check.option("modes", ("plain",))]


def _parities(algebra: SuperAlgebra, mode: Mode) -> List[Parity]:
    if mode is Mode.PLAIN and algebra.is_purely_even:
        return [Parity.ANY]
    return [Parity.EVEN, Parity.ODD]


def _identity_checks(algebra: SuperAlgebra) -> List[IdentityCheck]:
    results = []
    claims = algebra.claims
    if claims & Claims.LIE_SUPER:
        results.append(check_super_variety(algebra, Variety.LIE_SUPER))
    if claims & Claims.JORDAN_SUPER:
        results.append(check_super_variety(algebra, Variety.JORDAN_SUPER))
    if claims & Claims.FLEXIBLE:
        if algebra.is_purely_even:
            results.append(check_identity_multilinear(algebra, Identity.FLEXIBILITY))
        else:
            results.append(check_super_variety(algebra, Variety.FLEXIBLE_SUPER))
    if claims & Claims.NC_JORDAN:
        if algebra.is_purely_even:
            results.append(check_identity_multilinear(algebra, Identity.NC_JORDAN))
        else:
            results.append(check_super_variety(algebra, Variety.NC_JORDAN_SUPER))
    return results


def run_axioms(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome(dims={"dim": algebra.dim})
    if algebra.dim > config.identity_limit and not config.check_large:
        logging.warning(f"Skipped identity checks of {algebra.name} of dim {algebra.dim}.")
        outcome.skipped = True
        return outcome
    evaluated = 0
    for result in _identity_checks(algebra):
        evaluated += result.evaluated
        if not result:
            outcome.fail(result.describe(algebra))
    outcome.dims["evaluated"] = evaluated
    if algebra.meta.family == "W":
        violation = w_grading_violation(algebra)
        if violation is not None:
            outcome.fail(f"grading breaks at {violation}")
    return outcome


def run_peirce(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome()
    for index, idempotent in enumerate(algebra.meta.idempotents):
        decomposition = peirce_decompose(algebra, Element(tuple(idempotent)))
        outcome.dims[f"idempotent {index}"] = list(decomposition.dims)
    return outcome


def run_mutation(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome()
    detected = 0
    for trial in range(MUTATIONS):
        mutated = mutate(algebra, seeded_random(config.seed, f"{check.check_id}/{trial}"))
        result = check_super_variety(mutated, Variety.LIE_SUPER)
        if not result:
            detected += 1
        outcome.rows.append(
            {
                "mutation": mutated.name,
                "detected": not result,
                "witness": None if result else result.describe(mutated),
            }
        )
    outcome.dims["detected"] = detected
    if detected < MUTATIONS:
        outcome.fail(f"{MUTATIONS - detected} of {MUTATIONS} mutations went unnoticed")
    return outcome


def _weight_text(weight) -> str:
    return "(" + ", ".join(_text(value) for value in weight) + ")"


def run_roots(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    which = algebra.meta.family
    n = algebra.meta.params["n"]
    decomposition = cartan_and_roots(algebra, which)
    display = root_display(which, n)
    outcome = Outcome(
        dims={
            "zero_weight_dim": decomposition.zero_weight_dim(),
            "roots": len(decomposition.nonzero_weights()),
        }
    )
    for weight, space in decomposition.weights:
        outcome.rows.append({"weight": _weight_text(weight), "dim": space.dim})
    for weight in sorted(decomposition.nonzero_weights(), key=_weight_text):
        if weight not in display:
            outcome.fail(f"weight {_weight_text(weight)} is not a listed root")
    if which == "W":
        computed = {weight: dim for weight, dim in decomposition.dims.items() if dim}
        expected = w_weights(n)
        for weight in sorted(set(computed) | set(expected), key=_weight_text):
            if computed.get(weight, 0) != expected.get(weight, 0):
                outcome.fail(
                    f"weight {_weight_text(weight)} has dim {computed.get(weight, 0)}"
                    f" instead of {expected.get(weight, 0)}"
                )
    return outcome


def run_scan(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    allowed = {Scalar.coerce(value) for value in check.option("allowed", ())} or set(LITERATURE_DELTAS)
    outcome = Outcome()
    for mode in _modes(check):
        parities = [Parity.ANY] if mode is Mode.PLAIN else [Parity.EVEN, Parity.ODD]
        for parity in parities:
            key = f"{mode.value}/{parity.value}"
            rng = seeded_random(config.seed, f"{check.check_id}/{key}")
            report = scan_exceptional(algebra, mode, parity, rng)
            outcome.dims[f"{key}/generic"] = report.generic_dim
            if report.irrational_factors:
                outcome.dims[f"{key}/irrational"] = report.irrational_factors
            for delta, dim in report.probes.items():
                outcome.dims[f"{key}/delta={_text(delta)}"] = dim
            for delta, dim in report.exceptional.items():
                outcome.rows.append(
                    {"delta": _text(delta), "mode": mode.value, "parity": parity.value, "dim": dim}
                )
                if delta not in allowed:
                    outcome.fail(f"{key}: unexpected exceptional delta {_text(delta)}")
                if dim <= report.generic_dim:
                    outcome.fail(f"{key}: delta {_text(delta)} does not raise the kernel")
    return outcome


def run_classify(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome()
    is_lie = bool(algebra.claims & Claims.LIE_SUPER)
    is_jordan = bool(algebra.claims & (Claims.JORDAN_SUPER | Claims.NC_JORDAN))
    plain_dims: Dict[Scalar, int] = {}
    for delta in config.probe_deltas:
        for mode in _modes(check):
            for parity in _parities(algebra, mode):
                key = f"{mode.value}/{parity.value}"
                space = delta_derivations(algebra, delta, parity, mode)
                if mode is Mode.PLAIN:
                    plain_dims[delta] = plain_dims.get(delta, 0) + space.dim
                verdict = classify(algebra, space, delta)
                outcome.rows.append(
                    {
                        "algebra": algebra.name,
                        "delta": _text(delta),
                        "mode": mode.value,
                        "parity": parity.value,
                        "dim": space.dim,
                        "verdict": verdict.verdict.value,
                    }
                )
                if verdict.nontrivial:
                    count = verdict.directions.count(Verdict.NONTRIVIAL)
                    outcome.fail(f"delta={_text(delta)} {key}: {count} nontrivial directions")
                if delta == ONE:
                    outcome.dims[f"der/{key}"] = space.dim
                    inner_applies = mode is Mode.SUPER or parity is not Parity.ODD
                    if is_lie and inner_applies:
                        inner = inner_derivations(algebra, parity)
                        outcome.dims[f"inner/{key}"] = inner.dim
                        if not inner.is_subspace_of(space):
                            outcome.fail(f"{key}: ad is not inside the derivations")
                if delta == HALF and mode is Mode.PLAIN and is_jordan and algebra.is_purely_even:
                    if space.space != centroid(algebra, parity).space:
                        outcome.fail("1/2-derivations differ from the centroid")
    for value, expected in check.option("plain_dims", ()):
        delta = Scalar.coerce(value)
        if delta in plain_dims and plain_dims[delta] != expected:
            outcome.fail(f"delta={value} plain: dim {plain_dims[delta]} instead of {expected}")
    return outcome


def run_psi(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome()
    odd = [index for index in range(algebra.dim) if algebra.parity[index]]
    for delta in config.probe_deltas:
        space = delta_derivations(algebra, delta, Parity.ODD, Mode.SUPER)
        outcome.dims[f"delta={_text(delta)}"] = space.dim
        for number, phi in enumerate(space.maps()):
            for x in odd:
                psi = psi_bracket(algebra, phi, algebra.basis_element(x))
                witness = delta_defect(algebra, psi, delta, Mode.SUPER, 0)
                if witness is not None:
                    outcome.fail(f"delta={_text(delta)} map {number} with {algebra.label(x)} at {witness}")
    return outcome


def run_unit_factorization(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    outcome = Outcome()
    if algebra.is_purely_even:
        queries = [(Parity.ANY, Mode.PLAIN)]
    else:
        queries = [(Parity.EVEN, Mode.SUPER), (Parity.ODD, Mode.SUPER)]
    for parity, mode in queries:
        space = delta_derivations(algebra, HALF, parity, mode)
        outcome.dims[f"{mode.value}/{parity.value}"] = space.dim
        defect = unit_multiplication_defect(algebra, space)
        if defect is not None:
            index, l = defect
            outcome.fail(f"{parity.value} map {index} at {algebra.label(l)}")
        if parity is Parity.ODD and space.dim:
            outcome.fail(f"{space.dim} odd 1/2-superderivations")
    return outcome


def run_bar_squares(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    n = algebra.meta.params["n"]
    failures = check_bar_squares(n)
    outcome = Outcome(dims={"cases": 2 * n * 2**n, "failures": len(failures)})
    if failures:
        label, i, part = failures[0]
        outcome.fail(f"bar(e{i}) twice on the {part} monomial {label}")
    return outcome


def _structure_outcome(result: StructureCheck) -> Outcome:
    outcome = Outcome(dims=dict(result.dims))
    if not result:
        outcome.fail(result.witness or result.name)
    return outcome


def run_commutator_centroid(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    return _structure_outcome(check_commutator_centroid(algebra))


def run_functor_split(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    return _structure_outcome(check_functor_split(algebra, FUNCTOR_DELTAS))


def run_plus_transfer(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    return _structure_outcome(check_plus_transfer(algebra, config.probe_deltas))


def run_nc_jordan(algebra: SuperAlgebra, check: Check, config: SuiteConfig) -> Outcome:
    return _structure_outcome(check_nc_jordan(algebra, config.probe_deltas))


RUNNERS: Dict[str, Callable[[SuperAlgebra, Check, SuiteConfig], Outcome]] = {
    "axioms": run_axioms,
    "peirce": run_peirce,
    "mutation": run_mutation,
    "roots": run_roots,
    "scan": run_scan,
    "classify": run_classify,
    "psi": run_psi,
    "unit_factorization": run_unit_factorization,
    "bar_squares": run_bar_squares,
    "commutator_centroid": run_commutator_centroid,
    "functor_split": run_functor_split,
    "plus_transfer": run_plus_transfer,
    "nc_jordan": run_nc_jordan,
}


def run_check(check: Check, config: SuiteConfig) -> CheckRecord:
    """Runs one check, turning library errors into a failed record."""
    name = str(check.algebra)
    with Stopwatch() as stopwatch:
        try:
            algebra = _built(check.algebra, config.k10_table)
            name = algebra.name
            outcome = RUNNERS[check.kind](algebra, check, config)
        except DeltaAlgError as error:
            outcome = Outcome()
            outcome.fail(f"{type(error).__name__}: {error}")
    if outcome.skipped:
        status = "skipped"
    else:
        status = "passed" if outcome.passed else "failed"
    if status == "failed":
        logging.error(f"Check {check.check_id} failed: {outcome.witness}")
    inputs = {"algebra": check.algebra.to_dict()}
    inputs.update({key: list(value) if isinstance(value, tuple) else value for key, value in check.options})
    return CheckRecord(
        check.check_id,
        check.kind,
        check.anchor,
        name,
        inputs,
        status,
        outcome.witness,
        outcome.dims,
        outcome.rows,
        stopwatch.seconds,
    )


def run_suite(config: SuiteConfig) -> SuiteReport:
    """
    Args:
        config (SuiteConfig): The configuration.

    Returns:
        SuiteReport: One record per check in manifest order, whatever order
            the workers finished them in.
    """
    checks = manifest_checks(config)
    logging.info(f"Running {len(checks)} checks of the {config.tier.name.lower()} tier.")
    records = run_jobs_sync(lambda check: run_check(check, config), checks, config.workers)
    report = SuiteReport(config.tier, config.seed, records)
    logging.info(f"Suite {report.status}.")
    return report


def _cell(value: Any) -> str:
    return "-" if value is None else str(value).replace("|", "\\|")


def emit_report(report: SuiteReport, fmt: str = "json", timings: bool = False) -> str:
    """
    Args:
        report (SuiteReport): The report.
        fmt (str): `json` or `markdown`.
        timings (bool): Includes wall times, which makes the output unstable.

    Raises:
        BadParameter: For other formats.

    Returns:
        str: The document, ending with a newline.
    """
    if fmt == "json":
        return json.dumps(report.to_dict(timings), indent=4, sort_keys=True) + "\n"
    if fmt != "markdown":
        raise BadParameter(f"Unknown report format {fmt!r}.")
    counts = report.counts()
    lines = [
        "# Suite report",
        "",
        f"- tier: {report.tier.name.lower()}",
        f"- seed: {report.seed}",
        f"- status: {report.status}",
        f"- checks: {counts['checks']} ({counts['passed']} passed, "
        f"{counts['failed']} failed, {counts['skipped']} skipped)",
        "",
        "| check | status | witness |" + (" seconds |" if timings else ""),
        "|---|---|---|" + ("---|" if timings else ""),
    ]
    for record in report.records:
        line = f"| {_cell(record.check)} | {record.status} | {_cell(record.witness)} |"
        if timings:
            line += f" {record.seconds:.3f} |"
        lines.append(line)
    lines += [
        "",
        "| algebra | delta | mode | parity | dim | verdict |",
        "|---|---|---|---|---|---|",
    ]
    for record in report.records:
        if record.kind != "classify":
            continue
        for row in record.rows:
            lines.append(
                f"| {_cell(row['algebra'])} | {row['delta']} | {row['mode']} | "
                f"{row['parity']} | {row['dim']} | {row['verdict']} |"
            )
    return "\n".join(lines) + "\n"


def save_report(report: SuiteReport, path: str, fmt: str = "json", timings: bool = False):
    dirname = os.path.dirname(path)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)
    with open(path, "w", encoding="utf-8") as _file:
        _file.write(emit_report(report, fmt, timings))
    logging.info(f"Saved the {fmt} report to {path}.")

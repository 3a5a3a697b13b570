import functools
import json
import logging
import os

from typing import Any, Dict, List, Optional

import click

from .__info__ import __version__
from .contexts import ProfileContext
from .dersolve import (
    DerivationQuery,
    Map,
    centroid,
    classify as classify_space,
    scan_exceptional,
    solve_delta,
    supercentroid,
)
from .enums import Claims, Identity, Mode, Parity, Variety
from .exactfield import Scalar, format_scalar, parse_scalar
from .exceptions import DeltaAlgError
from .functions import seeded_random
from .liecons import cartan_and_roots
from .store import diff_algebras, dumps_algebra, load_algebra, save_algebra
from .suite import (
    ALIASES,
    BUILDERS,
    SuiteConfig,
    build_algebra,
    emit_report,
    parse_tier,
    run_suite,
    save_report,
)
from .superalg import (
    SuperAlgebra,
    check_identity_multilinear,
    check_super_variety,
    peirce_decompose,
)


PROFILE_HELP = (
    "Will generate a profile file named alg.prof in the current working directory. "
    "The file can be opened in a profiler like snakeviz."
)
AXIOMS = {
    "lie-super": Variety.LIE_SUPER,
    "jordan-super": Variety.JORDAN_SUPER,
    "flexible-super": Variety.FLEXIBLE_SUPER,
    "nc-jordan-super": Variety.NC_JORDAN_SUPER,
}
CLAIMED_VARIETIES = {
    Claims.LIE_SUPER: Variety.LIE_SUPER,
    Claims.JORDAN_SUPER: Variety.JORDAN_SUPER,
    Claims.FLEXIBLE: Variety.FLEXIBLE_SUPER,
    Claims.NC_JORDAN: Variety.NC_JORDAN_SUPER,
}


class ScalarType(click.ParamType):
    """A Gaussian rational such as `1/2`, `-3` or `1+2i`."""

    name = "scalar"

    def convert(self, value, param, ctx):
        if isinstance(value, Scalar):
            return value
        try:
            return parse_scalar(str(value))
        except (ValueError, DeltaAlgError):
            self.fail(f"{value!r} is not a scalar.", param, ctx)
        return None


SCALAR = ScalarType()
ALGEBRA_PATH = click.Path(exists=True, dir_okay=False)


def library_errors(function):
    """Reports library errors of a well-formed command with exit code 1."""

    @functools.wraps(function)
    def wrapper(*args, **kwargs):
        try:
            return function(*args, **kwargs)
        except DeltaAlgError as error:
            raise click.ClickException(f"{type(error).__name__}: {error}") from error

    return wrapper


def echo_json(data: Any):
    click.echo(json.dumps(data, indent=4, sort_keys=True))


def map_to_list(phi: Map) -> List[list]:
    return [[k, l, format_scalar(value)] for k in sorted(phi) for l, value in sorted(phi[k].items())]


def resolve_query(mode: str, parity: Optional[str]) -> tuple:
    """
    Raises:
        click.BadParameter: When superderivations are asked without a parity.

    Returns:
        tuple: The `Mode` and `Parity` to query.
    """
    mode_ = Mode(mode)
    if parity is None:
        parity = "even" if mode_ is Mode.SUPER else "any"
    parity_ = Parity(parity)
    if mode_ is Mode.SUPER and parity_ is Parity.ANY:
        raise click.BadParameter("superderivations need --parity even or odd.", param_hint="--parity")
    return mode_, parity_


def query_record(algebra: SuperAlgebra, mode: Mode, parity: Parity, delta=None) -> Dict[str, Any]:
    record = {"algebra": algebra.name, "mode": mode.value, "parity": parity.value}
    if delta is not None:
        record["delta"] = format_scalar(delta)
    return record


def mode_options(function):
    function = click.option(
        "--parity",
        type=click.Choice(["even", "odd", "any"]),
        default=None,
        help="Parity of the maps. Defaults to any in plain mode and even in super mode.",
    )(function)
    function = click.option(
        "--mode",
        type=click.Choice(["plain", "super"]),
        default="plain",
        show_default=True,
        help="Plain derivations or superderivations with the Koszul sign.",
    )(function)
    return function


@click.command(help="Prints the version of deltaalg.")
def version():  # pylint: disable=missing-function-docstring
    click.echo(f"deltaalg version {__version__}")


@click.command(help="Builds a named algebra and prints or writes its JSON table.")
@click.argument("family", type=click.Choice(sorted(set(BUILDERS) | set(ALIASES))))
@click.option("--n", "n", type=int, default=None, help="Size parameter n.")
@click.option("--m", "m", type=int, default=None, help="Size parameter m.")
@click.option("--n0", "n0", type=int, default=None, help="Even dimension of J(V,f).")
@click.option("--n1", "n1", type=int, default=None, help="Odd dimension of J(V,f).")
@click.option("--t", "t", type=SCALAR, default=None, help="Parameter of D_t.")
@click.option("--lam", "lam", type=SCALAR, default=None, help="Parameter of the quasi-associative M2.")
@click.option("-o", "--output", default="", help="Destination file. Prints to stdout when omitted.")
@click.option("--verify", is_flag=True, help="Reloads the written file and compares it.")
@click.pass_context
@library_errors
def build(ctx, family, output, verify, **params):  # pylint: disable=missing-function-docstring
    params = {key: value for key, value in params.items() if value is not None}
    algebra = build_algebra(family, params, ctx.obj.get("K10_TABLE"))
    if output:
        save_algebra(algebra, output, verify=verify)
        click.echo(f"Wrote {algebra.name} of dim {algebra.dim} to {output}.", err=True)
        return
    click.echo(dumps_algebra(algebra), nl=False)


@click.command(help="Checks the identities of a variety of superalgebras on an algebra file.")
@click.argument("path", type=ALGEBRA_PATH)
@click.option(
    "--axioms",
    type=click.Choice(sorted(AXIOMS) + ["claims"]),
    default="claims",
    show_default=True,
    help="The variety to check, or every variety the file claims.",
)
@click.option("--identity-limit", default=50, show_default=True, help="Skips algebras of larger dim.")
@click.option("--check-large", is_flag=True, help="Checks whatever the dimension.")
@click.pass_context
@library_errors
def check(ctx, path, axioms, identity_limit, check_large):  # pylint: disable=missing-function-docstring
    algebra = load_algebra(path)
    if axioms == "claims":
        varieties = [variety for flag, variety in CLAIMED_VARIETIES.items() if algebra.claims & flag]
    else:
        varieties = [AXIOMS[axioms]]
    record: Dict[str, Any] = {"algebra": algebra.name, "checks": [], "passed": True}
    if algebra.dim > identity_limit and not check_large:
        record["skipped"] = True
        echo_json(record)
        return
    for variety in varieties:
        if algebra.is_purely_even and variety in (Variety.FLEXIBLE_SUPER, Variety.NC_JORDAN_SUPER):
            identity = Identity.FLEXIBILITY if variety is Variety.FLEXIBLE_SUPER else Identity.NC_JORDAN
            result = check_identity_multilinear(algebra, identity)
        else:
            result = check_super_variety(algebra, variety)
        record["checks"].append(
            {
                "variety": variety.value,
                "passed": result.passed,
                "evaluated": result.evaluated,
                "witness": None if result else result.describe(algebra),
            }
        )
        record["passed"] = record["passed"] and result.passed
    echo_json(record)
    if not record["passed"]:
        ctx.exit(1)


@click.command(help="Computes the delta-(super)derivations of an algebra file.")
@click.argument("path", type=ALGEBRA_PATH)
@click.option("--delta", type=SCALAR, required=True, help="The value of delta, e.g. 1/2.")
@mode_options
@click.option("--emit-basis", is_flag=True, help="Prints the basis maps as [k, l, value] entries.")
@library_errors
def derive(path, delta, mode, parity, emit_basis):  # pylint: disable=missing-function-docstring
    mode_, parity_ = resolve_query(mode, parity)
    algebra = load_algebra(path)
    space = solve_delta(DerivationQuery(algebra, delta, parity_, mode_))
    verdict = classify_space(algebra, space, delta)
    record = {
        "query": query_record(algebra, mode_, parity_, delta),
        "dim": space.dim,
        "verdict": verdict.verdict.value,
    }
    if emit_basis:
        record["basis"] = [map_to_list(phi) for phi in space.maps()]
    echo_json(record)


@click.command(help="Classifies every basis map of a delta-(super)derivation space.")
@click.argument("path", type=ALGEBRA_PATH)
@click.option("--delta", type=SCALAR, required=True, help="The value of delta, e.g. 1/2.")
@mode_options
@click.pass_context
@library_errors
def classify(ctx, path, delta, mode, parity):  # pylint: disable=missing-function-docstring
    mode_, parity_ = resolve_query(mode, parity)
    algebra = load_algebra(path)
    space = solve_delta(DerivationQuery(algebra, delta, parity_, mode_))
    verdict = classify_space(algebra, space, delta)
    echo_json(
        {
            "query": query_record(algebra, mode_, parity_, delta),
            "dim": space.dim,
            "trivial_dim": verdict.trivial_dim,
            "directions": [direction.value for direction in verdict.directions],
            "verdict": verdict.verdict.value,
        }
    )
    if verdict.nontrivial:
        ctx.exit(1)


@click.command(help="Finds the deltas where the derivation space of an algebra file jumps.")
@click.argument("path", type=ALGEBRA_PATH)
@mode_options
@click.option("--seed", default=0, show_default=True, help="Seed of the generic samples.")
@library_errors
def scan(path, mode, parity, seed):  # pylint: disable=missing-function-docstring
    mode_, parity_ = resolve_query(mode, parity)
    algebra = load_algebra(path)
    report = scan_exceptional(algebra, mode_, parity_, seeded_random(seed, "scan"))
    echo_json(
        {
            "query": query_record(algebra, mode_, parity_),
            "generic_dim": report.generic_dim,
            "exceptional": {format_scalar(delta): dim for delta, dim in report.exceptional.items()},
            "probes": {format_scalar(delta): dim for delta, dim in report.probes.items()},
            "irrational_factors": report.irrational_factors,
            "degenerate": report.degenerate,
        }
    )


@click.command(name="centroid", help="Computes the centroid, or the supercentroid with --super.")
@click.argument("path", type=ALGEBRA_PATH)
@click.option("--super", "super_", is_flag=True, help="Applies the Koszul sign.")
@click.option("--parity", type=click.Choice(["even", "odd", "any"]), default=None, help="Parity of the maps.")
@click.option("--emit-basis", is_flag=True, help="Prints the basis maps as [k, l, value] entries.")
@library_errors
def centroid_(path, super_, parity, emit_basis):  # pylint: disable=missing-function-docstring
    mode_, parity_ = resolve_query("super" if super_ else "plain", parity)
    algebra = load_algebra(path)
    space = supercentroid(algebra, parity_) if super_ else centroid(algebra, parity_)
    record = {"query": query_record(algebra, mode_, parity_), "dim": space.dim}
    if emit_basis:
        record["basis"] = [map_to_list(phi) for phi in space.maps()]
    echo_json(record)


@click.command(help="Prints the Peirce decomposition of registered or given idempotents.")
@click.argument("path", type=ALGEBRA_PATH)
@click.option(
    "--idempotent",
    default="",
    help="Comma separated coordinates. Uses the registered idempotents when omitted.",
)
@library_errors
def peirce(path, idempotent):  # pylint: disable=missing-function-docstring
    algebra = load_algebra(path)
    if idempotent:
        try:
            candidates = [tuple(parse_scalar(value.strip()) for value in idempotent.split(","))]
        except (ValueError, DeltaAlgError) as error:
            raise click.BadParameter(str(error), param_hint="--idempotent") from error
    else:
        candidates = [tuple(values) for values in algebra.meta.idempotents]
    records = []
    for values in candidates:
        decomposition = peirce_decompose(algebra, algebra.element(values))
        records.append(
            {
                "idempotent": [format_scalar(value) for value in values],
                "dims": {"0": decomposition.p0.dim, "1/2": decomposition.p_half.dim, "1": decomposition.p1.dim},
            }
        )
    echo_json({"algebra": algebra.name, "decompositions": records})


@click.command(help="Prints the root decomposition of W(n), S(n) or H(n).")
@click.argument("path", type=ALGEBRA_PATH)
@click.option("--which", type=click.Choice(["W", "S", "H"]), default=None, help="Defaults to the family.")
@library_errors
def roots(path, which):  # pylint: disable=missing-function-docstring
    algebra = load_algebra(path)
    family = algebra.meta.family
    which = which or {"Stilde": "S", "Htilde": "H"}.get(family, family)
    if which not in ("W", "S", "H") or "n" not in algebra.meta.params:
        raise click.BadParameter(f"{algebra.name} is not W(n), S(n) or H(n).", param_hint="--which")
    decomposition = cartan_and_roots(algebra, which)
    echo_json(
        {
            "algebra": algebra.name,
            "weights": [
                {"weight": [format_scalar(value) for value in weight], "dim": space.dim}
                for weight, space in decomposition.weights
            ],
            "zero_weight_dim": decomposition.zero_weight_dim(),
        }
    )


@click.command(help="Prints the differences between two algebra files. Exits with 1 if any.")
@click.argument("left", type=ALGEBRA_PATH)
@click.argument("right", type=ALGEBRA_PATH)
@click.pass_context
@library_errors
def diff(ctx, left, right):  # pylint: disable=missing-function-docstring
    differences = diff_algebras(load_algebra(left), load_algebra(right))
    for action, location, change in differences:
        click.echo(f"{action} {location} {change}")
    if differences:
        ctx.exit(1)


@click.command(help="Runs the check battery and writes its report. Exits with 1 unless it passed.")
@click.option("--suite", type=click.Choice(["paper"]), default="paper", help="The battery to run.")
@click.option("--tier", type=click.Choice(["fast", "full", "extended"]), default=None, help="Defaults to fast.")
@click.option("--seed", type=int, default=None, help="Seed of the randomized probes.")
@click.option("--workers", type=int, default=None, envvar="ALG_WORKERS", help="Checks running at once.")
@click.option(
    "--format", "format_", type=click.Choice(["json", "markdown"]), default="json", show_default=True
)
@click.option("-o", "--output", default="", help="Destination file. Prints to stdout when omitted.")
@click.option("--config", "config_path", default="", help="A JSON configuration, .alg.json by default.")
@click.option("--check-large", is_flag=True, default=None, help="Runs identity checks whatever the dimension.")
@click.option("--timings", is_flag=True, help="Adds wall times, the report is then not byte-stable.")
@click.option("-p", "--profile", is_flag=True, help=PROFILE_HELP)
@click.pass_context
def report(  # pylint: disable=too-many-positional-arguments,too-many-arguments
    ctx, suite, tier, seed, workers, format_, output, config_path, check_large, timings, profile
):
    """Runs the check battery."""
    if profile:
        with ProfileContext():
            run_report(ctx, suite, tier, seed, workers, format_, output, config_path, check_large, timings)
        return
    run_report(ctx, suite, tier, seed, workers, format_, output, config_path, check_large, timings)


@library_errors
def run_report(  # pylint: disable=too-many-positional-arguments,too-many-arguments
    ctx, suite, tier, seed, workers, format_, output, config_path, check_large, timings
):  # pylint: disable=missing-function-docstring
    path = config_path or SuiteConfig.default_path()
    if config_path or os.path.exists(path):
        config = SuiteConfig.from_file(path)
    else:
        config = SuiteConfig()
    if tier is not None:
        config.tier = parse_tier(tier)
    if seed is not None:
        config.seed = seed
    if workers is not None:
        config.workers = workers
    if check_large:
        config.check_large = True
    if ctx.obj.get("K10_TABLE"):
        config.k10_table = ctx.obj["K10_TABLE"]
    logging.info(f"Running the {suite} battery at the {config.tier.name.lower()} tier.")
    suite_report = run_suite(config)
    if output:
        save_report(suite_report, output, format_, timings)
    else:
        click.echo(emit_report(suite_report, format_, timings), nl=False)
    click.echo(f"Suite {suite_report.status}.", err=True)
    if not suite_report.passed:
        click.echo(suite_report.first_witness, err=True)
        ctx.exit(1)


class Group(click.Group):
    """Lists the commands in the order they were added."""

    def list_commands(self, ctx):
        return list(self.commands)


@click.group(cls=Group)
@click.version_option(
    prog_name="alg",
    version=__version__,
    message="%(prog)s version %(version)s",
)
@click.option("-v", "--verbose", is_flag=True, help="Logs progress at the INFO level.")
@click.option(
    "--k10-table",
    default="",
    help="Path to a K10 structure constant table. Defaults to the packaged one.",
    required=False,
)
@click.pass_context
def cli(ctx, verbose, k10_table):  # pylint: disable=missing-function-docstring
    ctx.ensure_object(dict)
    if verbose:
        logging.getLogger().setLevel("INFO")
    if k10_table:
        ctx.obj["K10_TABLE"] = k10_table


cli.add_command(version)
cli.add_command(build)
cli.add_command(check)
cli.add_command(derive)
cli.add_command(classify)
cli.add_command(scan)
cli.add_command(centroid_)
cli.add_command(peirce)
cli.add_command(roots)
cli.add_command(diff)
cli.add_command(report)


def main():
    """This main function will be registered as the console script when installing the
    package.
    """
    cli(obj={})  # pylint: disable=unexpected-keyword-arg,no-value-for-parameter


if __name__ == "__main__":
    main()

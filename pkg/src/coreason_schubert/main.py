# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional

import typer

from coreason_schubert.config import Mutation, SchubertConfig
from coreason_schubert.core.centralizer import CentralizerMatrix, KostantSubstitution
from coreason_schubert.core.exactalg import SRing
from coreason_schubert.core.main_theorem import derive_lambda_w
from coreason_schubert.core.peterson import PetersonAlgebra
from coreason_schubert.core.report_generator import ReportGenerator
from coreason_schubert.core.schubert import classical_double_schubert, quantum_schubert
from coreason_schubert.core.symfunc import SeriesModel, kdouble_small
from coreason_schubert.core.verifier import Verifier
from coreason_schubert.core.weyl import Partition, parse_element, parse_permutation
from coreason_schubert.utils.logger import logger, set_console_level

app = typer.Typer(
    help="Coreason Schubert: quantum Schubert classes, the Peterson algebra and centralizer minors",
    no_args_is_help=True,
)
verify_app = typer.Typer(help="Run the verification registry.", no_args_is_help=True)
compute_app = typer.Typer(help="Compute single objects in canonical text.", no_args_is_help=True)
scan_app = typer.Typer(help="Exploratory scans.", no_args_is_help=True)
app.add_typer(verify_app, name="verify")
app.add_typer(compute_app, name="compute")
app.add_typer(scan_app, name="scan")

RankOption = Annotated[int, typer.Option("--n", "-n", min=2, help="Rank n")]


def fail(e: Exception, what: str) -> typer.Exit:
    logger.exception(f"{what} failed")
    typer.secho(f"Error: {e}", fg=typer.colors.RED)
    return typer.Exit(code=1)


@verify_app.command("run")
def verify_run(
    n: Annotated[Optional[int], typer.Option("--n", "-n", min=2, help="Largest rank to verify")] = None,
    check: Annotated[Optional[List[str]], typer.Option("--check", "-c", help="Check id (repeatable)")] = None,
    json_path: Annotated[Optional[Path], typer.Option("--json", help="Write the JSON report here")] = None,
    markdown_path: Annotated[Optional[Path], typer.Option("--markdown", help="Write the Markdown report here")] = None,
    save: Annotated[bool, typer.Option("--save", help="Write both reports into the configured report_dir")] = False,
    mutation: Annotated[Optional[Mutation], typer.Option("--mutation", help="Negative-control sign flip")] = None,
    workers: Annotated[Optional[int], typer.Option("--workers", min=1, help="Worker threads")] = None,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Log every case")] = False,
) -> None:
    """
    Run the selected checks (all by default) for ranks 2..n.
    Exits with code 1 if any case fails.
    """
    if verbose:
        set_console_level("DEBUG")
    try:
        config = SchubertConfig()
        updates: Dict[str, Any] = {}
        if n is not None:
            updates["max_n"] = n
        if mutation is not None:
            updates["mutation"] = mutation
        if workers is not None:
            updates["workers"] = workers
        config = config.model_copy(update=updates)
        summary = Verifier(config).run_all(check)
        generator = ReportGenerator()
        typer.echo(generator.console_table(summary))
        if save:
            report_dir = Path(config.report_dir)
            json_path = json_path or report_dir / "verification.json"
            markdown_path = markdown_path or report_dir / "verification.md"
        if json_path is not None:
            generator.write_json(summary, json_path)
        if markdown_path is not None:
            generator.write_markdown(summary, markdown_path)
    except Exception as e:
        raise fail(e, "Verification") from e

    counts = summary.counts
    message = f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped"
    if not summary.ok:
        typer.secho(f"Verification failed: {message}", fg=typer.colors.RED)
        raise typer.Exit(code=1)
    typer.secho(f"Verification passed: {message}", fg=typer.colors.GREEN)


@compute_app.command("schubert")
def compute_schubert(
    n: RankOption,
    w: Annotated[str, typer.Option("--w", help="Permutation as a word ('s2 s1') or one-line ('3,1,2')")],
    classical: Annotated[bool, typer.Option("--classical", help="Classical double Schubert polynomial")] = False,
) -> None:
    """Print the quantum (or classical) double Schubert polynomial of w."""
    try:
        element = parse_permutation(w, n)
        if classical:
            text = SRing.for_rank(n).coords.to_text(classical_double_schubert(element))
        else:
            text = quantum_schubert(element).to_text()
    except Exception as e:
        raise fail(e, "compute schubert") from e
    typer.echo(text)


@compute_app.command("jclass")
def compute_jclass(
    n: RankOption,
    word: Annotated[str, typer.Option("--word", help="Grassmannian element, e.g. 'tau c2' or 'tau^2 * s0'")],
    as_json: Annotated[bool, typer.Option("--json", help="Print the support as JSON")] = False,
) -> None:
    """Print the j-basis element j_w in the A-basis."""
    try:
        w = parse_element(word, n)
        j = PetersonAlgebra(n).j_class(w)
    except Exception as e:
        raise fail(e, "compute jclass") from e
    if as_json:
        typer.echo(json.dumps(j.to_json(w), indent=2, sort_keys=True))
    else:
        typer.echo(f"j_{w.label()} = {j.to_text()}")


@compute_app.command("minor")
def compute_minor(
    n: RankOption,
    shape: Annotated[str, typer.Option("--lambda", help="Partition, e.g. '2,1'")],
    k: Annotated[int, typer.Option("--k", min=0, help="Number of rows")],
) -> None:
    """Print the centralizer minor of a partition in the k x (n-k) box."""
    try:
        matrix = CentralizerMatrix(n)
        text = matrix.coords.to_text(matrix.minor(Partition.parse(shape), k))
    except Exception as e:
        raise fail(e, "compute minor") from e
    typer.echo(text)


@compute_app.command("matrix")
def compute_matrix(n: RankOption) -> None:
    """Print the centralizer matrix in y-coordinates, one row per line."""
    try:
        text = CentralizerMatrix(n).to_text()
    except Exception as e:
        raise fail(e, "compute matrix") from e
    typer.echo(text)


@compute_app.command("psi")
def compute_psi(
    n: RankOption,
    expr: Annotated[str, typer.Option("--expr", help="Polynomial in x_i, q_i, a_i, e.g. 'x_1 - a_1'")],
) -> None:
    """Print the Kostant image of a polynomial as numerator times powers of D_i."""
    try:
        psi = KostantSubstitution(CentralizerMatrix(n))
        text = psi.apply(SRing.for_rank(n).parse(expr)).to_text()
    except Exception as e:
        raise fail(e, "compute psi") from e
    typer.echo(text)


@compute_app.command("dualschur")
def compute_dualschur(
    partition: Annotated[str, typer.Option("--partition", help="Partition, e.g. '2,1'")],
    cutoff: Annotated[int, typer.Option("--cutoff", min=1, help="y-degree truncation")] = 8,
    radius: Annotated[int, typer.Option("--radius", min=1, help="Alphabet a_-M..a_M")] = 10,
    n: Annotated[Optional[int], typer.Option("--n", "-n", min=2, help="k-double Schur rank")] = None,
) -> None:
    """
    Print the dual Schur function to the given y-degree.
    With --n, the partition names a k-double Schur function and must have main hook at most n - 1.
    """
    try:
        shape = Partition.parse(partition)
        name = kdouble_small(shape, n) if n is not None else None
        model = SeriesModel.get(radius, cutoff)
        if name is None:
            text = model.dual_schur(shape).to_text()
        else:
            text = f"k-double Schur at n={n} = {name.label()}\n{name.resolve(model).to_text()}"
    except Exception as e:
        raise fail(e, "compute dualschur") from e
    typer.echo(text)


@compute_app.command("lambda")
def compute_lambda(
    n: RankOption,
    w: Annotated[str, typer.Option("--w", help="Permutation as a word or one-line")],
) -> None:
    """Print lambda(w), the factorization of w t_lambda and the denominator minors."""
    try:
        text = derive_lambda_w(parse_permutation(w, n)).to_text()
    except Exception as e:
        raise fail(e, "compute lambda") from e
    typer.echo(text)


@scan_app.command("positivity")
def scan_positivity(
    n: RankOption,
    maxlen: Annotated[int, typer.Option("--maxlen", min=0, help="Length bound")] = 6,
) -> None:
    """
    Check the signs of every j-class coefficient up to the length bound.
    Exits with code 1 if a non-extended class violates positivity.
    """
    try:
        report = PetersonAlgebra(n).positivity_scan(maxlen)
    except Exception as e:
        raise fail(e, "scan positivity") from e
    for verdict in report.violations:
        kind = "extended" if verdict.extended else "non-extended"
        typer.secho(f"{kind} {verdict.label}: {verdict.witness}", fg=typer.colors.YELLOW)
    extended = sum(1 for v in report.verdicts if v.extended)
    typer.echo(
        f"{len(report.verdicts)} classes ({extended} extended), {len(report.violations)} violations "
        f"at n={n}, length <= {maxlen}"
    )
    if not report.non_extended_positive:
        raise typer.Exit(code=1)


def main() -> None:
    """Entry point for the application script."""
    app()


if __name__ == "__main__":  # pragma: no cover
    main()

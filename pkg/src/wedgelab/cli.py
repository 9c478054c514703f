"""Command line front end: ``wedgelab reconstruct | verify | demo``.

Exit codes: 0 success, 1 usage or internal error (including unreadable input),
2 a verification came out negative.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Callable

import click

from .config import RunConfig
from .errors import ReconstructionError, WedgeLabError
from .reconstruction import WedgeBijectionOracle, reconstruct, table_consistency
from .suites import DEMOS, SUITES

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


def _numpy_scalar(value: Any) -> Any:
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _dump(payload: dict, text: str | None, config: RunConfig) -> None:
    if config.format == "text" and text is not None:
        body = text + "\n"
    else:
        body = json.dumps(payload, sort_keys=True, indent=2, default=_numpy_scalar) + "\n"
    if config.output is None:
        click.echo(body, nl=False)
    else:
        Path(config.output).write_text(body)


def _fail(message: str) -> int:
    click.echo(f"error: {message}", err=True)
    return EXIT_ERROR


def run_options(f: Callable) -> Callable:
    f = click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Write the report here instead of stdout.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
                     show_default=True)(f)
    f = click.option("--tol", type=float, default=None, help="Override the module tolerance.")(f)
    f = click.option("--seed", type=int, default=0, show_default=True)(f)
    return f


@click.group()
def cli() -> None:
    """Wedge geometry, reconstruction of point maps and finite modular theory checks."""


@cli.command("reconstruct")
@click.option("--oracle", "oracle_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
              help='JSON: {"poincare": {...}}, {"dilation": g} or {"table": [[w, w], ...]}.')
@run_options
def cmd_reconstruct(oracle_path: Path, seed: int, tol: float | None, fmt: str, output: Path | None) -> int:
    """Recover the extended Poincaré element behind a wedge bijection."""
    config = RunConfig(seed, tol, output, fmt)
    try:
        data = json.loads(Path(oracle_path).read_text())
        oracle = WedgeBijectionOracle.from_json(data)
    except (OSError, UnicodeDecodeError) as exc:
        return _fail(f"cannot read {oracle_path}: {exc}")
    except (json.JSONDecodeError, ValueError, KeyError, TypeError, IndexError, AttributeError, WedgeLabError) as exc:
        return _fail(f"cannot parse oracle: {exc}")

    if oracle.pairs is not None:
        table = table_consistency(oracle.pairs)
        if not table.passed:
            payload = {"status": "verification-failed", "oracle": oracle.label, "conditions": table.to_json()}
            _dump(payload, f"verification failed: {table.failure}", config)
            return EXIT_NEGATIVE
    try:
        kwargs: dict[str, Any] = {"seed": seed}
        if tol is not None:
            kwargs["threshold"] = tol
        report = reconstruct(oracle, **kwargs)
    except ReconstructionError as exc:
        payload = {"status": "verification-failed", "oracle": oracle.label,
                   "error": type(exc).__name__, "message": str(exc)}
        _dump(payload, f"verification failed ({type(exc).__name__}): {exc}", config)
        return EXIT_NEGATIVE
    payload = {"status": "ok", "oracle": oracle.label, **report.to_json()}
    e = report.element
    text = (f"reconstructed element: gamma={e.gamma:.9g}\n  lambda={(e.lam.round(9) + 0.0).tolist()}\n"
            f"  a={(e.a.round(9) + 0.0).tolist()}\n  fit_residual={report.fit_residual:.3e}")
    _dump(payload, text, config)
    return EXIT_OK


@cli.command("verify")
@click.argument("suite", type=click.Choice(sorted(SUITES)))
@run_options
def cmd_verify(suite: str, seed: int, tol: float | None, fmt: str, output: Path | None) -> int:
    """Run a module's invariant suite at the given seed."""
    config = RunConfig(seed, tol, output, fmt)
    result = SUITES[suite](seed=seed, tol=tol)
    _dump(result.to_json(), result.to_text(), config)
    return EXIT_OK if result.passed else EXIT_ERROR


@cli.command("demo")
@click.argument("name", type=click.Choice(sorted(DEMOS)))
@run_options
def cmd_demo(name: str, seed: int, tol: float | None, fmt: str, output: Path | None) -> int:
    """Run one of the worked demonstrations and print its report."""
    config = RunConfig(seed, tol, output, fmt)
    result = DEMOS[name](seed=seed, tol=tol)
    _dump(result.to_json(), result.to_text(), config)
    return EXIT_OK if result.passed else EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    try:
        code = cli.main(args=argv, prog_name="wedgelab", standalone_mode=False)
    except click.exceptions.Exit as exc:  # --help
        code = exc.exit_code
    except click.ClickException as exc:
        exc.show()
        code = EXIT_ERROR
    except click.Abort:
        code = EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - the CLI reports, never crashes
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        code = EXIT_ERROR
    return int(code or 0)


if __name__ == "__main__":
    sys.exit(main())

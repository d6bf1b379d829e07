"""Entry point de la CLI."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Tuple

import click

from src.application.use_cases.evaluate_outage.evaluate_outage_command import (
    EvaluateOutageCommand,
)
from src.application.use_cases.run_method.run_method_command import RunMethodCommand
from src.application.use_cases.sweep.sweep_command import SweepCommand
from src.application.use_cases.trace_cpf.trace_cpf_command import TraceCPFCommand
from src.domain.exceptions import EECMECException
from src.domain.model.experiment_config import CPFSection, ExperimentConfig
from src.domain.model.run_record import Method
from src.infrastructure.cli.output_formatter import OutputFormatter, error_console
from src.infrastructure.config.dependency_injection import DIContainer
from src.infrastructure.config.logging_config import configure_logging
from src.infrastructure.config.settings import settings


@contextmanager
def _handled(ctx: click.Context) -> Iterator[None]:
    """Traduce excepciones a códigos de salida (1 error, 130 cancelado)."""
    try:
        yield
    except KeyboardInterrupt:
        error_console.print("\n[yellow]👋 Cancelado por el usuario[/yellow]")
        sys.exit(130)
    except (EECMECException, ValueError) as e:
        error_console.print(f"[red]✗ {str(e)}[/red]")
        if ctx.obj.get("debug"):
            error_console.print_exception()
        sys.exit(1)


def _load_config(ctx: click.Context) -> ExperimentConfig:
    path: Path = ctx.obj["config_file"]
    return DIContainer.get_config_repository().load(path)


def _parse_floats(raw: str | None) -> Tuple[float, ...] | None:
    if raw is None:
        return None
    try:
        return tuple(float(v) for v in raw.split(","))
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers, got '{raw}'") from e


@click.group()
@click.option(
    "--config",
    "-c",
    "config_file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Fichero YAML del experimento (default: config/ee-cmec.yaml)",
)
@click.option(
    "--output",
    "-o",
    "output_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directorio de salida (default: ./output)",
)
@click.option("--log-level", type=str, default=None, help="Nivel de logging")
@click.option("--debug", is_flag=True, help="Muestra la traza completa de los errores")
@click.pass_context
def cli(
    ctx: click.Context,
    config_file: Path | None,
    output_dir: Path | None,
    log_level: str | None,
    debug: bool,
) -> None:
    """
    ⚡ EE-CMEC

    Simulador de redes MEC con caché y cooperación energética.

    Ejemplos:

    \b
        # Un escenario con los tres métodos
        python -m src simulate --seed 1

    \b
        # Barrido completo de la configuración
        python -m src -c config/ee-cmec.yaml sweep --workers 4

    \b
        # Curva λ–V y probabilidad de outage
        python -m src cpf config/buses/twobus.txt
        python -m src outage --n 3 --m 2 --k 2 --l 1 --rho 10 --r0 1 --mc 1000000
    """
    configure_logging(log_level)
    if output_dir:
        DIContainer.set_output_dir(output_dir)

    ctx.ensure_object(dict)
    ctx.obj["config_file"] = config_file or settings.config_file
    ctx.obj["debug"] = debug or settings.debug


@cli.command()
@click.option("--seed", type=int, default=None, help="Semilla (default: la primera)")
@click.option("--point", type=float, default=None, help="Punto del eje de barrido")
@click.option(
    "--method",
    "-m",
    "methods",
    type=click.Choice([m.value for m in Method]),
    multiple=True,
    help="Método a ejecutar (repetible; default: los de la configuración)",
)
@click.option("--output-name", type=str, default=None, help="Nombre del CSV de salida")
@click.pass_context
def simulate(
    ctx: click.Context,
    seed: int | None,
    point: float | None,
    methods: Tuple[str, ...],
    output_name: str | None,
) -> None:
    """Ejecuta los métodos sobre un único escenario."""
    with _handled(ctx):
        config = _load_config(ctx)
        seed = config.experiment.seeds[0] if seed is None else seed
        command = RunMethodCommand(
            config=config,
            seed=seed,
            point=point,
            methods=tuple(Method(m) for m in methods) or None,
        )

        OutputFormatter.print_header("simulate", f"seed={seed} point={point}")
        records = DIContainer.get_run_method_handler().execute(command)
        path = DIContainer.get_results_writer().write_runs(
            records, output_name or f"simulate_seed{seed}.csv"
        )

        OutputFormatter.print_records(records)
        OutputFormatter.print_files({"runs": path})


@cli.command()
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Hilos en paralelo")
@click.option("--prefix", type=str, default=None, help="Prefijo de los CSV")
@click.pass_context
def sweep(ctx: click.Context, workers: int | None, prefix: str | None) -> None:
    """Ejecuta métodos × semillas × puntos y escribe filas y resumen."""
    with _handled(ctx):
        config = _load_config(ctx)
        command = SweepCommand(config=config, prefix=prefix, workers=workers)
        experiment = config.experiment
        total = len(experiment.seeds) * len(experiment.sweep_values)

        OutputFormatter.print_header(
            "sweep", f"{total} escenarios × {len(experiment.methods)} métodos"
        )
        progress = OutputFormatter.create_progress()
        with progress:
            task = progress.add_task("[cyan]Simulando...", total=None)
            result = DIContainer.get_sweep_handler().execute(command)
            progress.update(task, description="[green]✓ Completado")

        OutputFormatter.print_sweep_result(result)
        sys.exit(0 if result.success else 1)


@cli.command()
@click.argument("bus_file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--sigma0", type=float, default=None, help="Paso inicial y máximo")
@click.option("--stop-fraction", type=float, default=None, help="Parada: λ < fracción·λ_max")
@click.option("--max-points", type=int, default=None, help="Presupuesto de puntos")
@click.option("--output-name", type=str, default=None, help="Nombre del CSV de salida")
@click.pass_context
def cpf(
    ctx: click.Context,
    bus_file: Path,
    sigma0: float | None,
    stop_fraction: float | None,
    max_points: int | None,
    output_name: str | None,
) -> None:
    """Traza la curva λ–V de BUS_FILE y la escribe como CSV."""
    with _handled(ctx):
        overrides = {
            key: value
            for key, value in (
                ("sigma0", sigma0),
                ("stop_fraction", stop_fraction),
                ("max_points", max_points),
            )
            if value is not None
        }
        command = TraceCPFCommand(
            bus_file=bus_file,
            cpf=CPFSection.model_validate(overrides),
            output_name=output_name,
        )

        OutputFormatter.print_header("cpf", bus_file.name)
        report = DIContainer.get_trace_cpf_handler().execute(command)
        OutputFormatter.print_cpf_report(report)


@cli.command()
@click.option("--n", "n_sources", type=click.IntRange(min=1), required=True, help="Fuentes N")
@click.option("--m", "n_relays", type=click.IntRange(min=0), required=True, help="Relés M")
@click.option("--k", "k_sel", type=click.IntRange(min=1), required=True, help="Enlaces directos K")
@click.option("--l", "l_sel", type=click.IntRange(min=0), required=True, help="Relés L")
@click.option("--rho", type=float, required=True, help="SNR de transmisión (lineal)")
@click.option("--r0", type=float, required=True, help="Tasa objetivo (bit/uso)")
@click.option("--variance", type=float, default=1.0, help="Varianza común de los enlaces")
@click.option(
    "--direct-variances",
    type=str,
    default=None,
    help="Varianzas de los enlaces directos, separadas por comas",
)
@click.option("--mc", "trials", type=click.IntRange(min=1), default=None, help="Ensayos MC")
@click.option("--seed", type=int, default=0, help="Semilla del oráculo")
@click.option("--workers", type=click.IntRange(min=1), default=1, help="Hilos para MC")
@click.option("--exact-selection", is_flag=True, help="Contrasta la variante de selección exacta")
@click.pass_context
def outage(
    ctx: click.Context,
    n_sources: int,
    n_relays: int,
    k_sel: int,
    l_sel: int,
    rho: float,
    r0: float,
    variance: float,
    direct_variances: str | None,
    trials: int | None,
    seed: int,
    workers: int,
    exact_selection: bool,
) -> None:
    """Probabilidad de outage en forma cerrada y, con --mc, su contraste."""
    variances = _parse_floats(direct_variances)
    with _handled(ctx):
        command = EvaluateOutageCommand(
            n_sources=n_sources,
            n_relays=n_relays,
            k_sel=k_sel,
            l_sel=l_sel,
            rho=rho,
            r0=r0,
            variance=variance,
            direct_variances=variances,
            trials=trials,
            seed=seed,
            workers=workers,
            exact_selection=exact_selection,
        )
        report = DIContainer.get_evaluate_outage_handler().execute(command)
        OutputFormatter.print_outage_report(report)


@cli.command("validate-config")
@click.argument(
    "config_path",
    required=False,
    type=click.Path(dir_okay=False, path_type=Path),
)
@click.pass_context
def validate_config(ctx: click.Context, config_path: Path | None) -> None:
    """Carga y valida CONFIG_PATH (default: el de --config)."""
    with _handled(ctx):
        path = config_path or ctx.obj["config_file"]
        config = DIContainer.get_config_repository().load(path)
        OutputFormatter.print_config(config, path)


def main() -> None:
    """Entry point (python -m src, ee-cmec)."""
    cli(prog_name="ee-cmec", obj={})


if __name__ == "__main__":
    main()

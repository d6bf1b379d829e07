"""Formateador de salida para CLI."""

from pathlib import Path
from typing import Sequence

from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from src.application.dto.cpf_report import CPFReport
from src.application.dto.outage_report import OutageReport
from src.application.dto.sweep_result import SweepResult
from src.domain.model.experiment_config import ExperimentConfig
from src.domain.model.run_record import RunRecord

console = Console()
error_console = Console(stderr=True)

MAX_LISTED = 5


def _mbps(value: float) -> str:
    return f"{value / 1e6:.2f}"


class OutputFormatter:
    """
    Formateador de salida con Rich.

    Proporciona métodos para mostrar resultados con estilo.
    """

    @staticmethod
    def print_header(title: str, subtitle: str | None = None) -> None:
        """Muestra cabecera del subcomando."""
        body = f"[bold white]{title}[/bold white]"
        if subtitle:
            body += f"\n[dim]{subtitle}[/dim]"
        console.print(Panel(body, title="[bold cyan]EE-CMEC[/bold cyan]", expand=False))

    @staticmethod
    def create_progress() -> Progress:
        """Crea indicador de progreso (duración desconocida)."""
        return Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            TimeElapsedColumn(),
            console=console,
        )

    @staticmethod
    def print_records(records: Sequence[RunRecord]) -> None:
        """Tabla con una fila por método."""
        table = Table(title="📊 Resultados")
        table.add_column("Método", style="cyan")
        table.add_column("Semilla", justify="right")
        table.add_column("Punto", justify="right")
        table.add_column("Throughput (Mbit/s)", justify="right")
        table.add_column("Borde (Mbit/s)", justify="right")
        table.add_column("Objetivo P1", justify="right")
        table.add_column("ΣG (W)", justify="right", style="magenta")
        table.add_column("Ahorro (W)", justify="right", style="green")
        table.add_column("Iter.", justify="right", style="dim")

        for r in records:
            table.add_row(
                r.method,
                str(r.seed),
                f"{r.sweep_point:g}",
                _mbps(r.total_throughput),
                _mbps(r.edge_throughput),
                f"{r.objective_p1:.4f}",
                f"{r.grid_power:.4f}",
                f"{r.energy_saving:.4f}",
                str(r.iterations),
            )

        console.print(table)

    @staticmethod
    def print_files(files: dict[str, Path]) -> None:
        table = Table(title="📁 Archivos Generados")
        table.add_column("Tipo", style="cyan")
        table.add_column("Archivo", style="magenta")
        table.add_column("Path", style="dim")
        for file_type, path in files.items():
            table.add_row(file_type, path.name, str(path.parent))
        console.print(table)

    @staticmethod
    def print_sweep_result(result: SweepResult) -> None:
        """
        Muestra resultado del barrido.

        Args:
            result: Resultado del barrido
        """
        if not result.success:
            OutputFormatter._print_error(result)
            return

        console.print("\n[bold green]✅ Barrido completado[/bold green]")

        table = Table(title="📈 Resumen por método y punto")
        table.add_column("Método", style="cyan")
        table.add_column("Punto", justify="right")
        table.add_column("Semillas", justify="right", style="dim")
        table.add_column("Throughput (Mbit/s)", justify="right")
        table.add_column("Objetivo P1", justify="right")
        table.add_column("ΣG (W)", justify="right", style="magenta")
        table.add_column("Ahorro (W)", justify="right", style="green")
        for row in result.summary:
            table.add_row(
                str(row["method"]),
                f"{row['sweep_point']:g}",
                str(row["n_seeds"]),
                f"{_mbps(row['total_throughput_mean'])} ± {_mbps(row['total_throughput_std'])}",
                f"{row['objective_p1_mean']:.4f}",
                f"{row['grid_power_mean']:.4f}",
                f"{row['energy_saving_mean']:.4f}",
            )
        console.print(table)

        if result.generated_files:
            OutputFormatter.print_files(result.generated_files)

        metadata = result.metadata
        info_panel = f"""
[bold]Filas:[/bold] {metadata.get("rows", 0)}
[bold]Filas de resumen:[/bold] {metadata.get("summary_rows", 0)}
[bold]Tiempo total:[/bold] {metadata.get("duration_seconds", 0)}s
        """
        console.print(Panel(info_panel.strip(), title="ℹ️ Información"))
        OutputFormatter._print_warnings(result.warnings)

    @staticmethod
    def _print_warnings(warnings: Sequence[str]) -> None:
        if not warnings:
            return

        console.print(f"\n[yellow]⚠ {len(warnings)} warnings:[/yellow]")
        for warning in warnings[:MAX_LISTED]:
            console.print(f"  [dim]• {warning}[/dim]")

        if len(warnings) > MAX_LISTED:
            console.print(f"  [dim]... y {len(warnings) - MAX_LISTED} más[/dim]")

    @staticmethod
    def _print_error(result: SweepResult) -> None:
        """Muestra resultado con errores (por stderr)."""
        error_console.print("\n[bold red]❌ Barrido falló[/bold red]")

        if result.errors:
            error_console.print(f"\n[red]Errores encontrados ({len(result.errors)}):[/red]")
            for error in result.errors:
                error_console.print(f"  [red]• {error}[/red]")

        OutputFormatter._print_warnings(result.warnings)

    @staticmethod
    def print_cpf_report(report: CPFReport) -> None:
        nose = report.trace.nose
        info_panel = f"""
[bold]Sistema:[/bold] {report.bus_file.name}
[bold]Puntos:[/bold] {len(report.trace.points)}
[bold]λ_max:[/bold] [green]{report.lambda_max:.6f}[/green]
[bold]V mínima en la nariz:[/bold] {float(nose.v.min()):.6f} p.u.
[bold]CSV:[/bold] {report.output_file}
[bold]Tiempo:[/bold] {report.duration_seconds}s
        """
        console.print(Panel(info_panel.strip(), title="⚡ Flujo de carga continuado"))

    @staticmethod
    def print_outage_report(report: OutageReport) -> None:
        network = report.network
        table = Table(
            title=(
                f"📡 Outage N={network.n_sources} M={network.n_relays} "
                f"K={network.k_sel} L={network.l_sel} ρ={network.rho:g} R₀={network.r0:g}"
            )
        )
        table.add_column("Cálculo", style="cyan")
        table.add_column("P_out", justify="right")
        table.add_column("Detalle", style="dim")

        table.add_row(
            "Forma cerrada", f"{report.closed_form.p_out:.6g}", report.closed_form.branch.value
        )
        table.add_row("Selección exacta", f"{report.exact.p_out:.6g}", "condicionada en A")

        estimate = report.monte_carlo
        if estimate is not None:
            table.add_row(
                "Monte-Carlo",
                f"{estimate.estimate:.6g}",
                f"stderr {estimate.stderr:.3g}, {estimate.trials} ensayos",
            )
        console.print(table)

        if report.passed is not None:
            variant = "selección exacta" if report.exact_selection else "forma cerrada"
            verdict = (
                "[bold green]PASS[/bold green]" if report.passed else "[bold red]FAIL[/bold red]"
            )
            console.print(f"{verdict} ({report.sigmas:g}σ frente a {variant})")

    @staticmethod
    def print_config(config: ExperimentConfig, path: Path) -> None:
        sc, ex = config.scenario, config.experiment
        info_panel = f"""
[bold]Fichero:[/bold] {path}
[bold]Estaciones:[/bold] {sc.n_macro} macro + {sc.n_small} small
[bold]Métodos:[/bold] {", ".join(m.value for m in ex.methods)}
[bold]Semillas:[/bold] {", ".join(str(s) for s in ex.seeds)}
[bold]Barrido:[/bold] {ex.sweep_axis} ∈ {{{", ".join(f"{v:g}" for v in ex.sweep_values)}}}
[bold]Filas sin ecuación:[/bold] {len(config.unused)}
        """
        console.print(Panel(info_panel.strip(), title="✅ Configuración válida"))

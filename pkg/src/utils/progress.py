from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterable, Optional

from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn, TimeElapsedColumn
from rich.table import Table


@dataclass
class ProgressStats:
    """Statistics for progress display."""
    total_runs: int = 0
    processed: int = 0
    current_run: str = ""


class ProgressDisplay:
    """Rich terminal progress display."""

    def __init__(self, console: Optional[Console] = None):
        # Progress and tables go to stderr so stdout stays clean for piping.
        self.console = console or Console(stderr=True)
        self.stats = ProgressStats()
        self._progress: Optional[Progress] = None
        self._main_task = None

    @contextmanager
    def progress_context(self, total: int, description: str = "Running"):
        """Context manager for progress display."""
        self.stats.total_runs = total

        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(bar_width=40),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            console=self.console,
            transient=False,
        ) as progress:
            self._progress = progress
            self._main_task = progress.add_task(description, total=total)
            try:
                yield self
            finally:
                self._progress = None
                self._main_task = None

    def on_run_complete(self, completed: int, total: int, description: str):
        """Progress callback for the experiment service."""
        self.stats.current_run = description
        if self._progress and self._main_task is not None:
            self._progress.update(
                self._main_task,
                completed=completed,
                total=total,
                description=f"[cyan]{description}[/cyan]",
            )
        self.stats.processed = completed

    def print_header(self, title: str):
        self.console.print()
        self.console.print(Panel(f"[bold]{title}[/bold]", border_style="blue", expand=False))

    def print_success(self, message: str):
        self.console.print(f"  [green]✓[/green] {message}")

    def print_warning(self, message: str):
        self.console.print(f"  [yellow]⚠[/yellow] {message}")

    def print_error(self, message: str):
        self.console.print(f"  [red]✗[/red] {message}")

    def print_info(self, message: str):
        self.console.print(f"  [blue]ℹ[/blue] {message}")

    def print_regret_table(self, final_rows: Iterable, output_dir: str):
        """Final simple regret per cell, plus where the files went."""
        self.console.print()
        table = Table(show_header=True, header_style="bold cyan", box=None, padding=(0, 1))
        table.add_column("Method", style="white")
        table.add_column("Declared f*", justify="right")
        table.add_column("Runs", justify="right")
        table.add_column("Median", justify="right", style="bold")
        table.add_column("IQR", justify="right", style="dim")
        table.add_column("Mean", justify="right")
        rows = list(final_rows)
        for row in rows:
            table.add_row(
                row.method,
                f"{row.f_star:g}",
                str(row.runs),
                f"{row.median:.4g}",
                f"[{row.q1:.4g}, {row.q3:.4g}]",
                f"{row.mean:.4g}",
            )
        if not rows:
            table.add_row("[yellow]No completed runs[/yellow]", "", "", "", "", "")
        self.console.print(Panel(
            table,
            title="[bold]Final simple regret[/bold]",
            subtitle=f"Location: [blue underline]{output_dir}[/blue underline]",
            border_style="green",
            padding=(1, 2),
        ))

    def print_listing(self, problems: Iterable, methods: Iterable[str]):
        """Registered problems and methods."""
        table = Table(show_header=True, header_style="bold green", box=None, padding=(0, 2))
        table.add_column("Problem", style="cyan")
        table.add_column("Dim", justify="right")
        table.add_column("f*", justify="right", style="dim")
        for problem in problems:
            table.add_row(problem.name, str(problem.dim), f"{problem.f_true_star:g}")
        self.console.print(Panel(table, title="[bold]Problems[/bold]", border_style="blue"))
        self.console.print(Panel(", ".join(methods), title="[bold]Methods[/bold]", border_style="blue"))

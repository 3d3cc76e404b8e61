"""Concrete lab commands and the ``main`` entry point.

Each command writes into ``<output_dir>/<command>/``:

symbolic      S.txt, B.txt, D.txt and a summary table of term counts and
              D_n coefficient sums (exit 1 if any sum is non-zero).
solve         taylor_solution.json, coefficient_norms.csv and a difference norm
              table for orders up to difference_norm_order.
spectra       spectra.json and verdict.txt (exit 1 if the diffusion spectrum
              or the conjugate closure check fails).
compare       comparison.csv, a slope table and the RK4 reference trajectory.csv
              (exit 1 if a fitted slope misses truncation + 1).
lattice-info  lattice.json describing the index map.

Tables without a fixed extension follow output_format. With solution_path
set, solve, spectra and compare reload that saved series instead of solving.
"""

import logging

from src.cli.base_command import BaseCommand, run_from_CLI
from src.lattice.index_map import build_lattice
from src.models.errors import ConfigurationError, ExitCode, NumericError, OrderRangeError
from src.models.schema import TaylorSolutionRecord
from src.ncalg.expansions import (
    coefficient_sum,
    render_family,
    symbolic_B,
    symbolic_diff,
    symbolic_S,
    term_count,
)
from src.refint.comparison import COMPARISON_HEADER, compare_taylor_vs_reference
from src.refint.rk4 import TRAJECTORY_HEADER, integrate, trajectory_rows
from src.spectra.analysis import diffusion_spectrum_defect, stability_sweep
from src.taylor.diagnostics import coefficient_norms, difference_norms
from src.taylor.initial import make_initial
from src.taylor.solver import TaylorSolution, solve_coefficients
from src.utils.file_handler import FileHandler, FileHandlerMode

logger = logging.getLogger(__name__)

PAIR_DEFECT_TOLERANCE = 1e-8
DIFFUSION_DEFECT_TOLERANCE = 1e-12


class SymbolicCommand(BaseCommand):
    name = "symbolic"
    help = "Expand S_n, B_n and D_n = S_n - B_n symbolically."

    def execute(self) -> ExitCode:
        N = self.run_config.symbolic_order
        S, B, D = symbolic_S(N), symbolic_B(N), symbolic_diff(N)
        self.file_handler.save_file(self.output_path("S.txt"), render_family("S", S))
        self.file_handler.save_file(self.output_path("B.txt"), render_family("B", B))
        self.file_handler.save_file(self.output_path("D.txt"), render_family("D", D))

        sums = [coefficient_sum(d) for d in D]
        rows = [
            [n, term_count(s), term_count(b), str(total)]
            for n, (s, b, total) in enumerate(zip(S, B, sums), 1)
        ]
        self.file_handler.save_table(
            self.output_path("summary"),
            ["n", "terms_S", "terms_B", "coefficient_sum_D"],
            rows,
            self.run_config.output_format,
        )
        bad = [n for n, total in enumerate(sums, 1) if total != 0]
        if bad:
            logger.error("Non-zero D_n coefficient sums at n = %s", bad)
            return ExitCode.CHECK_FAILED
        return ExitCode.OK


class SolveCommand(BaseCommand):
    name = "solve"
    help = "Solve the Taylor coefficients u_0..u_N and operators U_0..U_N."

    def solve(self, order: int | None = None) -> TaylorSolution:
        """Solve to `order` (default N), or reload the saved solution named in the config."""
        config = self.run_config
        N = config.order if order is None else order
        if config.solution_path:
            return self.load_solution(config.solution_path, N)
        lattice = build_lattice(config.lattice)
        u0 = make_initial(lattice, config.initial)
        logger.info("Solving to order %d on %r", N, lattice)
        return solve_coefficients(u0, N, config.include_nonlinear)

    def load_solution(self, path: str, order: int) -> TaylorSolution:
        """Read a taylor_solution.json back and truncate it to `order`.

        Raises
        ------
        ConfigurationError
            The file is not a JSON file matching the solution schema.
        OrderRangeError
            The saved series is shorter than `order`.
        """
        reader = FileHandler(FileHandlerMode.READ)
        try:
            record = reader.load_model(path, TaylorSolutionRecord)
        except ValueError as e:
            raise ConfigurationError(f"Invalid saved solution {path}: {e}") from e
        if record.order < order:
            raise OrderRangeError(
                f"Saved solution {path} stops at order {record.order}, {order} requested"
            )
        logger.info("Loaded order %d solution from %s", record.order, path)
        return TaylorSolution.from_record(record).truncated(order)

    def execute(self) -> ExitCode:
        config = self.run_config
        sol = self.solve()
        self.file_handler.save_json(self.output_path("taylor_solution.json"), sol.to_record())
        self.file_handler.save_table(
            self.output_path("coefficient_norms"),
            ["n", "norm", "radius"],
            [list(row) for row in coefficient_norms(sol)],
            "csv",
        )
        if config.difference_norm_order > 0:
            self.file_handler.save_table(
                self.output_path("difference_norms"),
                ["n", "difference_norm", "coefficient_norm"],
                [list(row) for row in difference_norms(sol, config.difference_norm_order)],
                config.output_format,
            )
        return ExitCode.OK


class SpectraCommand(SolveCommand):
    name = "spectra"
    help = "Eigen-spectra of U_0..U_N and of the advection parts P J_n."

    def execute(self) -> ExitCode:
        sol = self.solve()
        try:
            reports = stability_sweep(sol)
        except NumericError as e:
            raise NumericError(f"Spectral sweep failed at {e}") from e
        diffusion_defect = diffusion_spectrum_defect(sol.lattice)

        self.file_handler.save_json(self.output_path("spectra.json"), reports)
        lines = [
            f"U_{r.n}: max |Re lambda(P J_{r.n})| = {r.advection_max_abs_real_part:.6e}, "
            f"max Re lambda(U_{r.n}) = {r.max_real_part:.6e}, "
            f"conjugate pair defect = {r.conjugate_pair_defect:.3e}"
            for r in reports
        ]
        lines.append(f"D spectrum vs -nu kappa^2: relative defect = {diffusion_defect:.3e}")
        self.file_handler.save_file(self.output_path("verdict.txt"), "\n".join(lines) + "\n")

        worst_pair = max(r.conjugate_pair_defect for r in reports)
        if diffusion_defect > DIFFUSION_DEFECT_TOLERANCE or worst_pair > PAIR_DEFECT_TOLERANCE:
            logger.error(
                "Spectral checks failed: diffusion %.3e, conjugate pairs %.3e",
                diffusion_defect,
                worst_pair,
            )
            return ExitCode.CHECK_FAILED
        return ExitCode.OK


class CompareCommand(SolveCommand):
    name = "compare"
    help = "Compare truncated series with an RK4 reference and fit convergence slopes."

    def execute(self) -> ExitCode:
        config = self.run_config
        settings = config.compare
        integrator = config.integrator.model_copy(
            update={"include_nonlinear": config.include_nonlinear}
        )
        sol = self.solve(max([config.order, *settings.truncations]))
        table = compare_taylor_vs_reference(
            sol, integrator, settings.times, settings.truncations, settings.min_reference_steps
        )
        fmt = config.output_format
        self.file_handler.save_table(
            self.output_path("comparison"), COMPARISON_HEADER, [list(r) for r in table.rows], "csv"
        )
        self.file_handler.save_table(
            self.output_path("slopes"),
            ["truncation", "slope", "expected"],
            [[n, slope, n + 1] for n, slope in table.slopes.items()],
            fmt,
        )
        trajectory = integrate(sol.fields[0], integrator)
        self.file_handler.save_table(
            self.output_path("trajectory"), TRAJECTORY_HEADER, trajectory_rows(trajectory), "csv"
        )
        if not table.slopes_within(settings.slope_tolerance):
            logger.error(
                "Fitted slopes %s outside tolerance %g", table.slopes, settings.slope_tolerance
            )
            return ExitCode.CHECK_FAILED
        return ExitCode.OK


class LatticeInfoCommand(BaseCommand):
    name = "lattice-info"
    help = "Describe the wavenumber lattice and its index map."

    def execute(self) -> ExitCode:
        lattice = build_lattice(self.run_config.lattice)
        info = {
            "L": lattice.spec.L,
            "dkappa": lattice.spec.dkappa,
            "nu": lattice.spec.nu,
            "M": lattice.M,
            "zero_index": lattice.zero_index,
            "shift_pairs": lattice.shift_pair_count(),
            "squared_norm_counts": {str(k): v for k, v in lattice.squared_norm_counts().items()},
        }
        self.file_handler.save_json(self.output_path("lattice.json"), info)
        return ExitCode.OK


COMMANDS: dict[str, type[BaseCommand]] = {
    command.name: command
    for command in (
        SymbolicCommand,
        SolveCommand,
        SpectraCommand,
        CompareCommand,
        LatticeInfoCommand,
    )
}


def main(argv: list[str] | None = None) -> int:
    return run_from_CLI(COMMANDS, argv)

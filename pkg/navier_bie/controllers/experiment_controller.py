# navier_bie/controllers/experiment_controller.py - Study runners behind the CLI subcommands
import logging
import math
import time
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config.settings import settings
from ..models.curve import Curve
from ..models.experiment import ExperimentConfig, ParamChoice, SolverChoice
from ..models.params import ProblemParams
from ..models.reference import CAVITY_CONDITION, reference_error, reference_iterations
from ..models.report import ExteriorField, NavierPointSource, SolveReport
from ..models.system import ParamKind, SystemMatrix
from ..services.assembly_service import assemble_system, dump_system
from ..services.field_service import (
    boundary_data,
    evaluate_field,
    export_field_csv,
    farfield_error,
    probe_points,
    recover_densities,
)
from ..services.geometry_service import (
    arclength_reparametrize,
    builtin_curve,
    default_source,
    load_curve,
    normalize_length,
)
from ..services.solver_service import cluster_fraction, condition_number, solve_direct, solve_gmres, spectrum
from ..utils.errors import ConfigurationError, NavierBIEError, PipelineError
from ..utils.writers import write_complex_csv, write_csv_rows

logger = logging.getLogger(__name__)

SOLVE_COLUMNS = [
    "geometry", "N", "kind", "omega", "solver", "iterations", "residual", "farfield_error", "assemble_ms", "solve_ms",
]


@dataclass
class PipelineResult:
    geometry: str
    omega: float
    N: int
    system: SystemMatrix
    report: SolveReport
    field: ExteriorField
    error: float
    assemble_ms: float
    solve_ms: float

    def row(self) -> Dict[str, Any]:
        return {
            "geometry": self.geometry,
            "N": self.N,
            "kind": self.system.kind.value,
            "omega": self.omega,
            "solver": self.report.method,
            "iterations": self.report.iterations,
            "residual": self.report.residual,
            "farfield_error": self.error,
            "assemble_ms": self.assemble_ms,
            "solve_ms": self.solve_ms,
        }


def _stage(name: str, func: Callable, *args, **kwargs):
    try:
        return func(*args, **kwargs)
    except PipelineError:
        raise
    except NavierBIEError as e:
        logger.error(f"{name} stage failed: {e}")
        raise PipelineError(name, e) from e


class ExperimentController:
    """Runs the assemble -> solve -> recover -> evaluate -> error pipeline over a config"""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.kind = ParamKind.ARC if config.param_kind == ParamChoice.ARC else ParamKind.GENERAL
        self._sources: Dict[str, NavierPointSource] = {}
        self._curves: Dict[str, Curve] = {}
        if not config.curve_file:
            for name in config.geometry:
                builtin_curve(name)

    # ------------------------------------------------------------ building blocks

    def curve(self, geometry: str) -> Curve:
        """Boundary for a geometry name, arc-length resampled when requested"""
        if geometry not in self._curves:
            base = load_curve(self.config.curve_file) if self.config.curve_file else builtin_curve(geometry)
            if self.kind == ParamKind.ARC:
                base = _stage("geometry", arclength_reparametrize, base, settings.fine_grid)
            self._curves[geometry] = base
        return self._curves[geometry]

    def source(self, geometry: str) -> NavierPointSource:
        if geometry not in self._sources:
            location = self.config.source or default_source(geometry)
            self._sources[geometry] = NavierPointSource(tuple(location), tuple(self.config.polarization))
        return self._sources[geometry]

    def params(self, omega: float) -> ProblemParams:
        c = self.config
        try:
            if c.k_p is not None:
                return ProblemParams.from_wavenumbers(omega, c.k_p, c.k_s, eps=c.eps, eps_factor=settings.eps_factor)
            return ProblemParams.from_lame(omega, c.lam, c.mu, eps=c.eps, eps_factor=settings.eps_factor)
        except ValueError as e:
            logger.error(f"invalid physics for omega={omega:g}: {e}")
            raise ConfigurationError(str(e), field="physics") from e

    def _cases(self) -> List[Tuple[str, float, int]]:
        names = ["custom"] if self.config.curve_file else self.config.geometry
        return list(product(names, self.config.omega, self.config.N))

    def assemble(self, geometry: str, omega: float, N: int, regularized: Optional[bool] = None) -> SystemMatrix:
        regularized = (not self.config.unregularized) if regularized is None else regularized
        curve, params, _ = normalize_length(self.curve(geometry), self.params(omega))
        return _stage("assemble", assemble_system, params, curve, N, self.kind, regularized)

    def run_pipeline(self, geometry: str, omega: float, N: int, solver: Optional[SolverChoice] = None) -> PipelineResult:
        solver = solver or self.config.solver
        physical_curve = self.curve(geometry)
        physical_params = self.params(omega)
        curve, params, factor = normalize_length(physical_curve, physical_params)

        f_n, f_t = _stage("data", boundary_data, physical_curve, physical_params, self.source(geometry), N)
        rhs = np.concatenate([f_n.values, f_t.values])

        started = time.perf_counter()
        system = _stage("assemble", assemble_system, params, curve, N, self.kind, not self.config.unregularized)
        assemble_ms = 1e3 * (time.perf_counter() - started)

        started = time.perf_counter()
        if solver == SolverChoice.GMRES:
            report = _stage("solve", solve_gmres, system, rhs, tol=self.config.tol)
        else:
            report = _stage("solve", solve_direct, system, rhs)
        solve_ms = 1e3 * (time.perf_counter() - started)

        phi_p, phi_s = _stage("recover", recover_densities, report, system.regularizer)
        probes = probe_points(self.config.probe_radius, self.config.probe_count)
        field = _stage("evaluate", evaluate_field, curve, params, phi_p, phi_s, system.dtn, probes * factor)
        field = field.moved_to(probes)
        error = _stage("error", farfield_error, field, physical_params, self.source(geometry))
        logger.info(f"{geometry} omega={omega:g} N={N} {self.kind.value}: far-field error {error:.3e}")
        return PipelineResult(geometry, omega, N, system, report, field, error, assemble_ms, solve_ms)

    # ------------------------------------------------------------ commands

    def cmd_solve(self, dump_systems: bool = False, export_fields: bool = False) -> List[Dict[str, Any]]:
        rows = []
        for geometry, omega, N in self._cases():
            result = self.run_pipeline(geometry, omega, N)
            rows.append(result.row())
            stem = f"{geometry}_{self.kind.value}_w{omega:g}_N{N}"
            if dump_systems:
                dump_system(result.system, self.config.out / f"{stem}.nvbie")
            if export_fields:
                export_field_csv(result.field, self.config.out / f"field_{stem}.csv")
        write_csv_rows(self.config.out / "solve.csv", SOLVE_COLUMNS, rows)
        return rows

    def cmd_convergence(self) -> List[Dict[str, Any]]:
        rows = []
        for geometry, omega, N in self._cases():
            row = self.run_pipeline(geometry, omega, N).row()
            row["plateau"] = row["farfield_error"] < settings.plateau_threshold
            row["reference"] = reference_error(geometry, omega, N, self.kind == ParamKind.ARC)
            rows.append(row)
        for previous, current in zip(rows, rows[1:]):
            same_case = previous["geometry"] == current["geometry"] and previous["omega"] == current["omega"]
            if same_case and not previous["plateau"] and current["farfield_error"] > 0:
                current["slope"] = -math.log(current["farfield_error"] / previous["farfield_error"]) / math.log(
                    current["N"] / previous["N"]
                )
        write_csv_rows(self.config.out / "convergence.csv", SOLVE_COLUMNS + ["plateau", "slope", "reference"], rows)
        return rows

    def cmd_gmres_study(self) -> List[Dict[str, Any]]:
        rows = []
        for geometry, omega, N in self._cases():
            row = self.run_pipeline(geometry, omega, N, solver=SolverChoice.GMRES).row()
            row["reference"] = reference_iterations(geometry, omega, N, self.kind == ParamKind.ARC)
            rows.append(row)
        for index, row in enumerate(rows):
            window = [
                r["iterations"]
                for r in rows[max(0, index - 2):index + 1]
                if r["geometry"] == row["geometry"] and r["omega"] == row["omega"]
            ]
            row["plateau"] = len(window) == 3 and all(abs(w - window[-1]) <= 3 for w in window)
        write_csv_rows(self.config.out / "gmres.csv", SOLVE_COLUMNS + ["plateau", "reference"], rows)
        return rows

    def cmd_spectrum(self) -> List[Dict[str, Any]]:
        rows = []
        for geometry, omega, N in self._cases():
            system = self.assemble(geometry, omega, N)
            eigenvalues = _stage("spectrum", spectrum, system)
            p = system.params
            centers = [-(p.k_p**2 + p.k_s**2) / 2.0, -(p.kt_p**2 + p.kt_s**2) / 2.0]
            fraction = cluster_fraction(eigenvalues, centers)
            stem = f"eigenvalues_{geometry}_{self.kind.value}_w{omega:g}_N{N}.csv"
            write_complex_csv(
                self.config.out / stem,
                np.concatenate([eigenvalues, centers]),
                {"point": ["eigenvalue"] * eigenvalues.size + ["accumulation"] * 2},
            )
            rows.append(
                {
                    "geometry": geometry,
                    "N": N,
                    "omega": omega,
                    "center_1_re": centers[0].real,
                    "center_1_im": centers[0].imag,
                    "center_2_re": centers[1].real,
                    "center_2_im": centers[1].imag,
                    "in_cluster_fraction": fraction,
                }
            )
        columns = ["geometry", "N", "omega", "center_1_re", "center_1_im", "center_2_re", "center_2_im", "in_cluster_fraction"]
        write_csv_rows(self.config.out / "spectrum.csv", columns, rows)
        return rows

    def cmd_condition(self) -> List[Dict[str, Any]]:
        rows = []
        for geometry, omega, N in self._cases():
            regularized = _stage("condition", condition_number, self.assemble(geometry, omega, N, regularized=True))
            plain = _stage("condition", condition_number, self.assemble(geometry, omega, N, regularized=False))
            reference = CAVITY_CONDITION.get(float(omega), {}).get(N) if geometry == "cavity" else None
            rows.append(
                {
                    "geometry": geometry,
                    "N": N,
                    "omega": omega,
                    "kind": self.kind.value,
                    "cond_regularized": regularized,
                    "cond_unregularized": plain,
                    "reference_regularized": reference[0] if reference else None,
                    "reference_unregularized": reference[1] if reference else None,
                }
            )
        columns = [
            "geometry", "N", "omega", "kind", "cond_regularized", "cond_unregularized",
            "reference_regularized", "reference_unregularized",
        ]
        write_csv_rows(self.config.out / "condition.csv", columns, rows)
        return rows

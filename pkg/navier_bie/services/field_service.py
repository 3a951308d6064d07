# navier_bie/services/field_service.py - Point-source data, density recovery and exterior field evaluation
import logging
from pathlib import Path
from typing import Dict, Tuple

import numpy as np
from scipy import special

from ..config.settings import settings
from ..models.curve import Curve
from ..models.grid import GridFunction
from ..models.operator import SandwichOperator
from ..models.params import ProblemParams
from ..models.report import ExteriorField, NavierPointSource, SolveReport
from ..models.system import BlockOperator
from ..utils.errors import DomainError, NearFieldError
from ..utils.writers import write_csv_rows
from .geometry_service import grid_frame

logger = logging.getLogger(__name__)

_CHUNK = 256


def _helmholtz_hessian(k: float, x: np.ndarray) -> np.ndarray:
    """Hessian of (i/4) H1_0(k |x|), shape x.shape[:-1] + (2, 2)"""
    r = np.linalg.norm(x, axis=-1)
    unit = x / r[..., None]
    z = k * r
    h1, h2 = special.hankel1(1, z), special.hankel1(2, z)
    outer = unit[..., :, None] * unit[..., None, :]
    eye = np.eye(2)
    return 0.25j * k * k * h2[..., None, None] * outer - (0.25j * k * h1 / r)[..., None, None] * eye


def fundamental_matrix(params: ProblemParams, x) -> np.ndarray:
    """Navier fundamental solution (1/mu) g_s I + (1/omega^2) grad grad (g_s - g_p)"""
    x = np.asarray(x, dtype=float)
    r = np.linalg.norm(x, axis=-1)
    if np.any(r < 1e-12):
        raise DomainError("fundamental solution is singular at the source point")
    g_s = 0.25j * special.hankel1(0, params.k_s * r)
    hessian = _helmholtz_hessian(params.k_s, x) - _helmholtz_hessian(params.k_p, x)
    return g_s[..., None, None] * np.eye(2) / params.mu + hessian / params.omega**2


def incident_field(params: ProblemParams, source: NavierPointSource, points) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    offsets = points - np.asarray(source.position, dtype=float)
    return fundamental_matrix(params, offsets) @ np.asarray(source.polarization, dtype=complex)


def winding_number(curve: Curve, point, samples: int = 2048) -> int:
    boundary = curve.sample_uniform(samples)
    z = (boundary[:, 0] - point[0]) + 1j * (boundary[:, 1] - point[1])
    turns = np.angle(np.roll(z, -1) / z).sum() / (2.0 * np.pi)
    return int(np.rint(turns))


def boundary_data(
    curve: Curve, params: ProblemParams, source: NavierPointSource, N: int
) -> Tuple[GridFunction, GridFunction]:
    """f_n = -u_inc . n and f_t = -u_inc . t at the nodes"""
    if winding_number(curve, source.position) == 0:
        raise DomainError(f"source {source.position} lies outside the obstacle")
    f = grid_frame(curve, N)
    u_inc = incident_field(params, source, f.point)
    return (
        GridFunction(-np.sum(u_inc * f.normal, axis=-1)),
        GridFunction(-np.sum(u_inc * f.tangent, axis=-1)),
    )


def recover_densities(report: SolveReport, regularizer: BlockOperator) -> Tuple[GridFunction, GridFunction]:
    """(phi_p, phi_s) = R (lambda_p, lambda_s)"""
    if report.solution.size != 2 * regularizer.N:
        raise DomainError(f"solution of length {report.solution.size} does not match regularizer size {regularizer.N}")
    phi = regularizer.apply(report.solution)
    N = regularizer.N
    return GridFunction(phi[:N]), GridFunction(phi[N:])


def probe_points(radius: float = None, count: int = None) -> np.ndarray:
    radius = settings.probe_radius if radius is None else radius
    count = settings.probe_count if count is None else count
    angles = 2.0 * np.pi * np.arange(count) / count
    return radius * np.stack([np.cos(angles), np.sin(angles)], axis=-1)


def _check_exterior(curve: Curve, points: np.ndarray) -> None:
    boundary = curve.sample_uniform(2048)
    for point in points:
        if winding_number(curve, point) != 0:
            raise DomainError(f"evaluation point {tuple(point)} lies inside the obstacle")
    for start in range(0, len(points), _CHUNK):
        block = points[start:start + _CHUNK]
        distance = np.min(np.linalg.norm(block[:, None, :] - boundary[None, :, :], axis=-1), axis=1)
        if np.any(distance < settings.near_field_distance):
            raise NearFieldError(
                f"evaluation point within {settings.near_field_distance} of the boundary "
                f"(distance {distance.min():.3e})"
            )


def layer_potentials(curve: Curve, k: float, double_density, single_density, points) -> Tuple[np.ndarray, np.ndarray]:
    """Value and gradient of DL_k[double_density] - SL_k[single_density] by the rectangular rule"""
    phi = np.asarray(getattr(double_density, "values", double_density), dtype=complex)
    psi = np.asarray(getattr(single_density, "values", single_density), dtype=complex)
    N = phi.size
    f = grid_frame(curve, N)
    weights = (2.0 * np.pi / N) * f.eta
    points = np.atleast_2d(np.asarray(points, dtype=float))
    value = np.zeros(len(points), dtype=complex)
    gradient = np.zeros((len(points), 2), dtype=complex)

    for start in range(0, len(points), _CHUNK):
        block = points[start:start + _CHUNK]
        dx = block[:, None, :] - f.point[None, :, :]
        r = np.linalg.norm(dx, axis=-1)
        z = k * r
        h0, h1, h2 = special.hankel1(0, z), special.hankel1(1, z), special.hankel1(2, z)
        dxn = np.einsum("ijk,jk->ij", dx, f.normal)
        wphi, wpsi = weights * phi, weights * psi

        single = 0.25j * h0
        single_grad = -0.25j * k * (h1 / r)[..., None] * dx
        double = 0.25j * k * h1 * dxn / r
        double_grad = 0.25j * k * (
            -k * (h2 * dxn / r**2)[..., None] * dx + (h1 / r)[..., None] * f.normal[None, :, :]
        )

        value[start:start + _CHUNK] = double @ wphi - single @ wpsi
        gradient[start:start + _CHUNK] = np.einsum("ijk,j->ik", double_grad, wphi) - np.einsum(
            "ijk,j->ik", single_grad, wpsi
        )
    return value, gradient


def evaluate_field(
    curve: Curve,
    params: ProblemParams,
    phi_p: GridFunction,
    phi_s: GridFunction,
    dtn: Dict[str, SandwichOperator],
    points,
) -> ExteriorField:
    """u = grad u_p + vcurl u_s with u_k = DL_k[phi_k] - SL_k[Y_k phi_k]"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    _check_exterior(curve, points)
    up, grad_p = layer_potentials(curve, params.k_p, phi_p, dtn["p"].apply(phi_p.values), points)
    us, grad_s = layer_potentials(curve, params.k_s, phi_s, dtn["s"].apply(phi_s.values), points)
    u_p_part = grad_p
    u_s_part = np.stack([grad_s[:, 1], -grad_s[:, 0]], axis=-1)
    return ExteriorField(points, u_p_part + u_s_part, u_p_part, u_s_part, up, us)


def exact_field(params: ProblemParams, source: NavierPointSource, points) -> np.ndarray:
    """Exterior solution with Dirichlet data -u_inc, namely -u_inc itself"""
    return -incident_field(params, source, points)


def farfield_error(field: ExteriorField, params: ProblemParams, source: NavierPointSource) -> float:
    difference = field.u - exact_field(params, source, field.points)
    return float(np.max(np.linalg.norm(difference, axis=-1)))


def export_field_csv(field: ExteriorField, path: Path) -> Path:
    rows = [
        {"x": p[0], "y": p[1], "re_u1": u[0].real, "im_u1": u[0].imag, "re_u2": u[1].real, "im_u2": u[1].imag}
        for p, u in zip(field.points, field.u)
    ]
    return write_csv_rows(path, ["x", "y", "re_u1", "im_u1", "re_u2", "im_u2"], rows)

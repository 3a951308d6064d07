# navier_bie/services/solver_service.py - Direct and Krylov solvers plus spectral diagnostics
import logging
import time
from typing import Callable, Optional, Union

import numpy as np
from scipy import linalg
from scipy.sparse.linalg import LinearOperator, svds

from ..config.settings import settings
from ..models.report import SolveReport
from ..models.system import SystemMatrix
from ..utils.errors import DomainError, NonConvergenceError, SingularSystemError

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, SystemMatrix]


def _as_array(M: MatrixLike) -> np.ndarray:
    matrix = M.matrix if isinstance(M, SystemMatrix) else np.asarray(M)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"system matrix must be square, got shape {matrix.shape}")
    return matrix


def _check_rhs(matrix: np.ndarray, rhs) -> np.ndarray:
    rhs = np.asarray(rhs, dtype=complex).ravel()
    if rhs.size != matrix.shape[0]:
        raise DomainError(f"right-hand side has length {rhs.size}, system has {matrix.shape[0]} rows")
    return rhs


def _relative_residual(matrix: np.ndarray, x: np.ndarray, rhs: np.ndarray) -> float:
    scale = np.linalg.norm(rhs)
    residual = np.linalg.norm(matrix @ x - rhs)
    return float(residual / scale) if scale > 0 else float(residual)


def solve_direct(M: MatrixLike, rhs) -> SolveReport:
    """LU with partial pivoting"""
    matrix = _as_array(M)
    rhs = _check_rhs(matrix, rhs)
    started = time.perf_counter()
    lu, piv = linalg.lu_factor(matrix, check_finite=True)
    smallest_pivot = np.min(np.abs(np.diag(lu)))
    if smallest_pivot < settings.singular_pivot_tol * np.linalg.norm(matrix, ord=np.inf):
        raise SingularSystemError(f"numerically singular system, smallest pivot {smallest_pivot:.3e}")
    x = linalg.lu_solve((lu, piv), rhs)
    elapsed = time.perf_counter() - started
    residual = _relative_residual(matrix, x, rhs)
    logger.info(f"direct solve of size {matrix.shape[0]}: residual {residual:.2e} in {1e3 * elapsed:.1f} ms")
    return SolveReport(solution=x, method="direct", iterations=0, residual=residual, wall_time=elapsed)


def _givens(a: complex, b: float):
    """Rotation (c, s) with c a + s b = r and -conj(s) a + c b = 0, c real"""
    if b == 0:
        return 1.0, 0.0
    if a == 0:
        return 0.0, 1.0
    scale = np.hypot(abs(a), b)
    return abs(a) / scale, (a / abs(a)) * b / scale


def solve_gmres(
    M: Union[MatrixLike, Callable[[np.ndarray], np.ndarray]],
    rhs,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
) -> SolveReport:
    """Unrestarted GMRES from x0 = 0, modified Gram-Schmidt with one reorthogonalization pass

    The iteration count is the number of matrix-vector products.
    """
    if callable(M) and not isinstance(M, (np.ndarray, SystemMatrix)):
        matvec = M
        rhs = np.asarray(rhs, dtype=complex).ravel()
        matrix = None
    else:
        matrix = _as_array(M)
        rhs = _check_rhs(matrix, rhs)
        matvec = matrix.__matmul__
    tol = settings.gmres_tol if tol is None else tol
    n = rhs.size
    m = min(n, settings.gmres_max_iter) if max_iter is None else max_iter
    started = time.perf_counter()

    beta = np.linalg.norm(rhs)
    if beta == 0:
        return SolveReport(np.zeros(n, dtype=complex), "gmres", 0, 0.0, time.perf_counter() - started)

    basis = np.zeros((m + 1, n), dtype=complex)
    hessenberg = np.zeros((m + 1, m), dtype=complex)
    cs = np.zeros(m)
    sn = np.zeros(m, dtype=complex)
    g = np.zeros(m + 1, dtype=complex)
    g[0] = beta
    basis[0] = rhs / beta
    history = []
    steps = 0

    for k in range(m):
        w = matvec(basis[k])
        for _ in range(2):
            for j in range(k + 1):
                h = np.vdot(basis[j], w)
                hessenberg[j, k] += h
                w = w - h * basis[j]
        h_next = np.linalg.norm(w)
        hessenberg[k + 1, k] = h_next

        for j in range(k):
            upper = cs[j] * hessenberg[j, k] + sn[j] * hessenberg[j + 1, k]
            hessenberg[j + 1, k] = -np.conj(sn[j]) * hessenberg[j, k] + cs[j] * hessenberg[j + 1, k]
            hessenberg[j, k] = upper
        cs[k], sn[k] = _givens(hessenberg[k, k], h_next)
        hessenberg[k, k] = cs[k] * hessenberg[k, k] + sn[k] * h_next
        hessenberg[k + 1, k] = 0.0
        g[k + 1] = -np.conj(sn[k]) * g[k]
        g[k] = cs[k] * g[k]

        steps = k + 1
        residual = abs(g[k + 1]) / beta
        history.append(float(residual))
        if residual <= tol or h_next <= 1e-14 * beta:
            break
        basis[k + 1] = w / h_next

    y = linalg.solve_triangular(hessenberg[:steps, :steps], g[:steps])
    x = basis[:steps].T @ y
    elapsed = time.perf_counter() - started
    residual = _relative_residual(matrix, x, rhs) if matrix is not None else history[-1]
    if history[-1] > tol:
        raise NonConvergenceError("GMRES did not reach the tolerance", best_residual=min(history), iterations=steps)
    logger.info(f"GMRES size {n}: {steps} iterations, residual {residual:.2e} in {1e3 * elapsed:.1f} ms")
    return SolveReport(
        solution=x, method="gmres", iterations=steps, residual=residual, wall_time=elapsed, residual_history=history
    )


def spectrum(M: MatrixLike) -> np.ndarray:
    matrix = _as_array(M)
    if matrix.shape[0] > settings.dense_spectrum_limit:
        raise DomainError(f"dense eigensolve limited to size {settings.dense_spectrum_limit}")
    return linalg.eigvals(matrix)


def condition_number(M: MatrixLike) -> float:
    """2-norm condition number; dense SVD up to the dense limit, iterative estimate beyond"""
    matrix = _as_array(M)
    if matrix.shape[0] <= settings.dense_spectrum_limit:
        values = linalg.svdvals(matrix)
        return float(values[0] / values[-1]) if values[-1] > 0 else float("inf")
    operator = LinearOperator(matrix.shape, matvec=matrix.__matmul__, rmatvec=lambda v: matrix.conj().T @ v, dtype=complex)
    largest = svds(operator, k=1, which="LM", return_singular_vectors=False)[0]
    smallest = svds(operator, k=1, which="SM", return_singular_vectors=False)[0]
    return float(largest / smallest)


def cluster_fraction(eigenvalues: np.ndarray, centers, radius_rel: Optional[float] = None) -> float:
    """Share of eigenvalues within max(1, radius_rel |c|) of one of the centers"""
    radius_rel = settings.cluster_radius_rel if radius_rel is None else radius_rel
    eigenvalues = np.asarray(eigenvalues)
    inside = np.zeros(eigenvalues.size, dtype=bool)
    for c in centers:
        inside |= np.abs(eigenvalues - c) <= max(1.0, radius_rel * abs(c))
    return float(inside.mean())

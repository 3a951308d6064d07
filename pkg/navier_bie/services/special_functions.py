# navier_bie/services/special_functions.py - Bessel and Hankel values used by the kernels
import numpy as np
from scipy import special

from ..utils.errors import DomainError

EULER_GAMMA = float(np.euler_gamma)

_KINDS = {
    "J0": lambda z: special.jv(0, z),
    "J1": lambda z: special.jv(1, z),
    "Y0": lambda z: special.yv(0, z),
    "Y1": lambda z: special.yv(1, z),
    "H1_0": lambda z: special.hankel1(0, z),
    "H1_1": lambda z: special.hankel1(1, z),
    "H1_2": lambda z: special.hankel1(2, z),
}


def bessel_hankel(kind: str, z):
    """J0, J1, Y0, Y1 or first-kind Hankel H1_0, H1_1, H1_2 at real z > 0"""
    if kind not in _KINDS:
        raise DomainError(f"unknown Bessel kind {kind!r}, expected one of {sorted(_KINDS)}")
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0) or not np.all(np.isfinite(z)):
        raise DomainError(f"{kind} needs a positive argument")
    value = _KINDS[kind](z)
    return value[()] if value.ndim == 0 else value


def j0_minus_one(z) -> np.ndarray:
    """J0(z) - 1 without cancellation for small |z|"""
    z = np.asarray(z)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.array(special.jv(0, z) - 1.0, dtype=np.result_type(z, float))
    small = np.abs(z) < 1.0
    if np.any(small):
        q = -0.25 * z[small] ** 2
        term = np.ones_like(q)
        total = np.zeros_like(q)
        for m in range(1, 20):
            term = term * q / (m * m)
            total = total + term
        out[small] = total
    return out[0] if scalar else out

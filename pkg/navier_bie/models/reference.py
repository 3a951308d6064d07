# navier_bie/models/reference.py - Published reference values the studies are compared against
from typing import Dict, Tuple

REFERENCE_N = (32, 64, 128, 256, 512, 1024)

# (geometry, omega) -> far-field error per N in REFERENCE_N
ARC_LENGTH_ERRORS: Dict[Tuple[str, float], Tuple[float, ...]] = {
    ("ellipse", 10.0): (1.42e-5, 1.61e-9, 3.63e-14, 2.64e-14, 4.20e-14, 5.11e-14),
    ("ellipse", 100.0): (4.88e-2, 3.10e-2, 3.29e-4, 1.73e-12, 1.11e-12, 6.94e-13),
    ("kite", 10.0): (1.08e-2, 5.97e-3, 2.84e-4, 9.78e-4, 1.50e-6, 3.42e-7),
    ("kite", 100.0): (6.69e-2, 9.18e-3, 2.31e-3, 9.19e-4, 1.11e-4, 2.12e-6),
    ("cavity", 10.0): (4.44e-3, 1.44e-3, 8.28e-4, 1.61e-4, 4.93e-6, 4.62e-9),
    ("cavity", 100.0): (9.52e-2, 2.98e-2, 2.87e-3, 1.56e-4, 5.85e-6, 3.28e-9),
}

NATURAL_ERRORS: Dict[Tuple[str, float], Tuple[float, ...]] = {
    ("ellipse", 10.0): (3.75e-6, 2.49e-11, 5.77e-16, 1.24e-15, 1.34e-15, 2.10e-15),
    ("ellipse", 100.0): (5.50e-2, 4.19e-1, 5.92e-3, 9.05e-8, 6.92e-13, 3.89e-13),
    ("kite", 10.0): (1.14e-2, 1.36e-3, 8.38e-3, 2.02e-4, 9.03e-11, 6.79e-15),
    ("kite", 100.0): (6.88e-2, 1.17e-2, 5.39e-2, 6.84e-5, 1.79e-12, 5.97e-13),
    ("cavity", 10.0): (1.25e-2, 4.43e-3, 2.10e-3, 6.42e-7, 3.18e-15, 1.06e-15),
    ("cavity", 100.0): (1.49e-1, 3.61e-2, 1.97e-2, 1.85e-6, 6.79e-13, 4.67e-13),
}

ARC_LENGTH_GMRES: Dict[Tuple[str, float], Tuple[int, ...]] = {
    ("ellipse", 10.0): (26, 24, 24, 24, 24, 24),
    ("ellipse", 100.0): (65, 129, 222, 234, 233, 233),
    ("kite", 10.0): (42, 42, 41, 40, 40, 40),
    ("kite", 100.0): (65, 129, 224, 237, 238, 238),
    ("cavity", 10.0): (39, 39, 39, 39, 39, 39),
    ("cavity", 100.0): (65, 129, 233, 249, 249, 249),
}

NATURAL_GMRES: Dict[Tuple[str, float], Tuple[int, ...]] = {
    ("ellipse", 10.0): (34, 34, 34, 34, 34, 34),
    ("ellipse", 100.0): (65, 129, 226, 234, 233, 233),
    ("kite", 10.0): (48, 49, 50, 46, 46, 46),
    ("kite", 100.0): (65, 129, 231, 240, 238, 235),
    ("cavity", 10.0): (50, 49, 47, 44, 44, 44),
    ("cavity", 100.0): (65, 129, 235, 250, 248, 248),
}

# Cavity, natural parametrization: omega -> {N: (regularized, unregularized)}
CAVITY_CONDITION: Dict[float, Dict[int, Tuple[float, float]]] = {
    10.0: {
        32: (1.28e3, 2.79e4),
        64: (1.77e3, 1.61e5),
        128: (2.96e3, 9.51e4),
        256: (2.94e3, 2.84e5),
        512: (2.94e3, 1.37e6),
        1024: (2.94e3, 6.21e6),
    },
    40.0: {
        128: (8.12e3, 1.27e4),
        256: (8.12e3, 2.13e4),
        512: (8.12e3, 8.87e4),
        1024: (8.12e3, 3.91e5),
    },
    160.0: {
        256: (3.63e5, 7.95e3),
        512: (3.63e5, 6.14e4),
        1024: (3.63e5, 2.85e4),
    },
}


def reference_error(geometry: str, omega: float, N: int, arc_length: bool):
    table = ARC_LENGTH_ERRORS if arc_length else NATURAL_ERRORS
    row = table.get((geometry, float(omega)))
    if row is None or N not in REFERENCE_N:
        return None
    return row[REFERENCE_N.index(N)]


def reference_iterations(geometry: str, omega: float, N: int, arc_length: bool):
    table = ARC_LENGTH_GMRES if arc_length else NATURAL_GMRES
    row = table.get((geometry, float(omega)))
    if row is None or N not in REFERENCE_N:
        return None
    return row[REFERENCE_N.index(N)]

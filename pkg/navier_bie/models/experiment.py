# navier_bie/models/experiment.py - Experiment manifests (TOML) and their validation
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..config.settings import settings
from ..utils.errors import ConfigurationError


class ParamChoice(str, Enum):
    ARC = "arc"
    NATURAL = "natural"


class SolverChoice(str, Enum):
    DIRECT = "direct"
    GMRES = "gmres"


class ExperimentConfig(BaseModel):
    """One experiment: geometries x frequencies x grid sizes"""

    geometry: List[str] = Field(default_factory=lambda: ["ellipse"], description="Built-in curve names")
    curve_file: Optional[Path] = Field(None, description="TOML file with Fourier coefficients of a custom curve")
    param_kind: ParamChoice = ParamChoice.NATURAL
    omega: List[float] = Field(default_factory=lambda: [10.0])
    lam: float = 2.0
    mu: float = 3.0
    k_p: Optional[float] = Field(None, gt=0)
    k_s: Optional[float] = Field(None, gt=0)
    eps: Optional[float] = Field(None, gt=0, description="Overrides eps = eps_factor * k^(1/3) for both waves")
    N: List[int] = Field(default_factory=lambda: [32, 64, 128])
    solver: SolverChoice = SolverChoice.DIRECT
    tol: float = Field(default_factory=lambda: settings.gmres_tol)
    unregularized: bool = False
    source: Optional[Tuple[float, float]] = Field(
        None, description="Point-source location, an interior default per geometry when unset"
    )
    polarization: Tuple[float, float] = Field(default_factory=lambda: settings.default_polarization)
    probe_radius: float = Field(default_factory=lambda: settings.probe_radius, gt=0)
    probe_count: int = Field(default_factory=lambda: settings.probe_count, ge=1)
    out: Path = Field(default_factory=lambda: Path(settings.output_dir))

    @field_validator("N")
    @classmethod
    def _check_sizes(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one grid size is required")
        for N in value:
            if N < 16 or N % 2:
                raise ValueError(f"grid sizes must be even and >= 16, got {N}")
        return sorted(value)

    @field_validator("tol")
    @classmethod
    def _check_tol(cls, value: float) -> float:
        if not 0 < value <= 1e-3:
            raise ValueError("tolerance must lie in (0, 1e-3]")
        return value

    @field_validator("omega")
    @classmethod
    def _check_omega(cls, value: List[float]) -> List[float]:
        if not value or any(w <= 0 for w in value):
            raise ValueError("omega values must be positive")
        return value

    @field_validator("geometry")
    @classmethod
    def _check_geometry(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one geometry is required")
        return [name.strip().lower() for name in value]

    @model_validator(mode="after")
    def _check_physics(self):
        if (self.k_p is None) != (self.k_s is None):
            raise ValueError("k_p and k_s must be given together")
        if self.k_p is not None:
            # lam = omega^2 (1 / k_p^2 - 2 / k_s^2) for every omega
            if self.k_s**2 <= 2.0 * self.k_p**2:
                raise ValueError(f"k_s^2 must exceed 2 k_p^2 for a positive lam, got k_p={self.k_p}, k_s={self.k_s}")
        elif self.mu <= 0 or self.lam <= 0:
            raise ValueError(f"Lame constants must be positive, got lam={self.lam}, mu={self.mu}")
        return self


# manifest section -> {key in section: config field}
MANIFEST_SECTIONS: Dict[str, Dict[str, str]] = {
    "geometry": {"name": "geometry", "curve_file": "curve_file", "param_kind": "param_kind"},
    "physics": {"omega": "omega", "lam": "lam", "mu": "mu", "k_p": "k_p", "k_s": "k_s", "eps": "eps"},
    "discretization": {"N": "N"},
    "solver": {"method": "solver", "tol": "tol", "unregularized": "unregularized"},
    "source": {"position": "source", "polarization": "polarization"},
    "probes": {"radius": "probe_radius", "count": "probe_count"},
    "output": {"dir": "out"},
}
_FIELD_TO_KEY = {fld: f"{section}.{key}" for section, keys in MANIFEST_SECTIONS.items() for key, fld in keys.items()}


def _as_list(value: Any) -> Any:
    if isinstance(value, (str, int, float)) and not isinstance(value, bool):
        return [value]
    return value


def build_config(raw: Dict[str, Any]) -> ExperimentConfig:
    """Validate flat field values, reporting failures against manifest keys"""
    for key in ("geometry", "omega", "N"):
        if key in raw:
            raw[key] = _as_list(raw[key])
    try:
        return ExperimentConfig(**raw)
    except ValidationError as e:
        error = e.errors()[0]
        loc = str(error["loc"][0]) if error["loc"] else "physics"
        raise ConfigurationError(error["msg"], field=_FIELD_TO_KEY.get(loc, loc)) from e


def read_manifest(path: Path) -> Dict[str, Any]:
    """Flatten a sectioned TOML manifest into config field values"""
    path = Path(path)
    try:
        document = tomllib.loads(path.read_text())
    except FileNotFoundError as e:
        raise ConfigurationError(f"manifest not found: {path}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(f"{path}: {e}") from e

    raw: Dict[str, Any] = {}
    for section, values in document.items():
        if section not in MANIFEST_SECTIONS:
            raise ConfigurationError(f"unknown section, expected one of {sorted(MANIFEST_SECTIONS)}", field=section)
        for key, value in values.items():
            if key not in MANIFEST_SECTIONS[section]:
                raise ConfigurationError("unknown key", field=f"{section}.{key}")
            raw[MANIFEST_SECTIONS[section][key]] = value
    if "curve_file" in raw:
        raw["curve_file"] = (path.parent / raw["curve_file"]).resolve()
    return raw


def load_config(path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Manifest values first, then non-None overrides from the command line"""
    raw = read_manifest(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[key] = value
    return build_config(raw)

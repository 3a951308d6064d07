# navier_bie/models/params.py - Physical parameters and complexified wavenumbers
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ProblemParams(BaseModel):
    """Frequency, Lame constants and the two wavenumbers with their complexification offsets

    Wavenumbers are stored explicitly so that a length rescaling can multiply
    them (and the offsets) without touching omega or the Lame constants.
    """

    model_config = ConfigDict(frozen=True)

    omega: float = Field(..., gt=0, description="Angular frequency")
    lam: float = Field(2.0, gt=0, description="First Lame constant")
    mu: float = Field(3.0, description="Shear modulus")
    k_p: float = Field(..., gt=0, description="Compressional wavenumber")
    k_s: float = Field(..., gt=0, description="Shear wavenumber")
    eps_p: float = Field(..., gt=0, description="Complexification offset of k_p")
    eps_s: float = Field(..., gt=0, description="Complexification offset of k_s")
    length_scale: float = Field(1.0, gt=0, description="Factor L / 2pi applied to the wavenumbers")

    @model_validator(mode="after")
    def _check_lame(self):
        if self.lam + 2.0 * self.mu <= 0:
            raise ValueError("lam + 2 mu must be positive")
        return self

    @classmethod
    def from_lame(
        cls,
        omega: float,
        lam: float = 2.0,
        mu: float = 3.0,
        eps: Optional[float] = None,
        eps_factor: float = 0.4,
    ) -> "ProblemParams":
        if mu <= 0 or lam + 2.0 * mu <= 0:
            raise ValueError("Lame constants must satisfy mu > 0 and lam + 2 mu > 0")
        k_p = omega / math.sqrt(lam + 2.0 * mu)
        k_s = omega / math.sqrt(mu)
        return cls(
            omega=omega,
            lam=lam,
            mu=mu,
            k_p=k_p,
            k_s=k_s,
            eps_p=eps if eps is not None else eps_factor * k_p ** (1.0 / 3.0),
            eps_s=eps if eps is not None else eps_factor * k_s ** (1.0 / 3.0),
        )

    @classmethod
    def from_wavenumbers(
        cls, omega: float, k_p: float, k_s: float, eps: Optional[float] = None, eps_factor: float = 0.4
    ) -> "ProblemParams":
        mu = omega**2 / k_s**2
        lam = omega**2 / k_p**2 - 2.0 * mu
        return cls(
            omega=omega,
            lam=lam,
            mu=mu,
            k_p=k_p,
            k_s=k_s,
            eps_p=eps if eps is not None else eps_factor * k_p ** (1.0 / 3.0),
            eps_s=eps if eps is not None else eps_factor * k_s ** (1.0 / 3.0),
        )

    @property
    def kt_p(self) -> complex:
        return complex(self.k_p, self.eps_p)

    @property
    def kt_s(self) -> complex:
        return complex(self.k_s, self.eps_s)

    def wavenumber(self, wave: str) -> float:
        return self.k_p if wave == "p" else self.k_s

    def complexified(self, wave: str) -> complex:
        return self.kt_p if wave == "p" else self.kt_s

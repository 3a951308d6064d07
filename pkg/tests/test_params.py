import math

import pytest
from pydantic import ValidationError

from navier_bie.models.params import ProblemParams
from navier_bie.utils.errors import ConfigurationError, NavierBIEError, PipelineError, SingularSystemError


def test_wavenumbers_from_lame_constants():
    p = ProblemParams.from_lame(10.0)
    assert p.k_p == pytest.approx(10.0 / math.sqrt(8.0))
    assert p.k_s == pytest.approx(10.0 / math.sqrt(3.0))
    assert p.k_p < p.k_s


def test_default_offsets_scale_with_cube_root():
    p = ProblemParams.from_lame(10.0)
    assert p.eps_p == pytest.approx(0.4 * p.k_p ** (1 / 3))
    assert p.eps_s == pytest.approx(0.4 * p.k_s ** (1 / 3))
    assert p.kt_s == complex(p.k_s, p.eps_s)
    assert p.complexified("p") == p.kt_p
    assert p.wavenumber("s") == p.k_s


def test_explicit_offset_applies_to_both_waves():
    p = ProblemParams.from_lame(10.0, eps=0.25)
    assert p.eps_p == p.eps_s == 0.25


def test_wavenumber_construction_recovers_lame_constants():
    p = ProblemParams.from_wavenumbers(10.0, 10.0 / math.sqrt(8.0), 10.0 / math.sqrt(3.0))
    assert p.mu == pytest.approx(3.0)
    assert p.lam == pytest.approx(2.0)


@pytest.mark.parametrize("lam, mu", [(2.0, 0.0), (-7.0, 3.0)])
def test_invalid_lame_constants(lam, mu):
    with pytest.raises(ValueError):
        ProblemParams.from_lame(10.0, lam, mu)


def test_params_are_frozen():
    p = ProblemParams.from_lame(10.0)
    with pytest.raises(ValidationError):
        p.omega = 20.0


def test_exit_codes():
    assert ConfigurationError("bad", field="physics.omega").exit_code == 2
    assert NavierBIEError("boom").exit_code == 3
    wrapped = PipelineError("solve", SingularSystemError("pivot"))
    assert wrapped.exit_code == 3
    assert wrapped.stage == "solve"

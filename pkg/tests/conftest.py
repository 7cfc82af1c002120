import pytest

from lambda_mixer.model import AtomicLine, EitMedium, RamanAbsorber


@pytest.fixture
def sec5_eit() -> EitMedium:
    return EitMedium(gamma_ge=300.0, gamma_gs=0.064, delta_control=3036.0, omega_c=50.0, depth=15.0)


@pytest.fixture
def sec5_absorber() -> RamanAbsorber:
    return RamanAbsorber(
        omega_a=100.0,
        delta_2=14700.0,
        gamma_ab=300.0,
        gamma_ac=300.0,
        gamma_cb=0.064,
        depth_2l=85.0,
    )


@pytest.fixture
def rb_line() -> AtomicLine:
    return AtomicLine(gamma_r=5.75, wavelength=795.0, density=3.4e12)

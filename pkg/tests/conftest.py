import pytest

from dkp_spectra import NaturalParams, PhysicalParams, natural_units


@pytest.fixture(scope="session")
def physical_005() -> PhysicalParams:
    return PhysicalParams(mass=938.0, coupling=67.54, screening=0.005)


@pytest.fixture(scope="session")
def physical_015() -> PhysicalParams:
    return PhysicalParams(mass=938.0, coupling=67.54, screening=0.015)


@pytest.fixture(scope="session")
def natural_005(physical_005) -> NaturalParams:
    return natural_units(physical_005)


@pytest.fixture(scope="session")
def natural_015(physical_015) -> NaturalParams:
    return natural_units(physical_015)

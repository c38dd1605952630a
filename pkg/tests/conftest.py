import pytest

from ret_fluids import k_convention
from ret_fluids.analytic import SteadyShearParams
from ret_fluids.constitutive import LinearElastic, Material, PowerGas, PowerLawFluid, QuadraticEnergy

# stress response under constant shear
SHEAR_M = 0.7
SHEAR_VX0 = 0.1
SHEAR_TAU0 = 0.1
SHEAR_SIGMA_INF = 0.39963


@pytest.fixture
def shear_fluid():
    return PowerLawFluid(k=k_convention(SHEAR_M), m=SHEAR_M)


@pytest.fixture
def shear_material(shear_fluid):
    return Material(viscous=QuadraticEnergy(tau0=SHEAR_TAU0), fluid=shear_fluid)


@pytest.fixture
def shear_params(shear_fluid):
    return SteadyShearParams(vx0=SHEAR_VX0, fluid=shear_fluid, tau0=SHEAR_TAU0)


@pytest.fixture
def linear_material():
    return Material(elastic=LinearElastic(E=1.0), viscous=QuadraticEnergy(tau0=1.0),
                    fluid=PowerLawFluid(k=1.0, m=1.0))


@pytest.fixture
def gas_material():
    return Material(elastic=PowerGas(p0=1.0, gamma=1.0), viscous=QuadraticEnergy(tau0=1.0),
                    fluid=PowerLawFluid(k=1.0, m=1.0))


@pytest.fixture
def write_config(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write

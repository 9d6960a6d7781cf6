import math

import pytest

from becpolaron import CondensateParams, ImpurityParams, derive_bath

# Rb gas / K impurity benchmark scenario
RB_GAS = CondensateParams(
    m_B=1.4192261e-25,
    a3=100.0 * 5.29177210903e-11,
    n01=7e6,
    omega_perp=2.0 * math.pi * 34e3,
    omega_z=2.0 * math.pi * 34e3,
)
M_IMPURITY = 6.4924249e-26
OMEGA_TRAP = 4.0 * math.pi * 500.0          # trapped-case frequency

# Isotopically pure Rb-87 gas, as used for the coupling-bound estimates
RB87_GAS = CondensateParams(
    m_B=86.909180527 * 1.66053906660e-27,
    a3=RB_GAS.a3,
    n01=RB_GAS.n01,
    omega_perp=RB_GAS.omega_perp,
    omega_z=RB_GAS.omega_z,
)


def free_bath(d: int, eta: float = 1.0):
    return derive_bath(RB_GAS, ImpurityParams(m_I=M_IMPURITY, Omega=0.0, eta=eta), d)


def trapped_bath(d: int, eta: float = 1.0):
    return derive_bath(RB_GAS, ImpurityParams(m_I=M_IMPURITY, Omega=OMEGA_TRAP, eta=eta), d)


@pytest.fixture(scope="session")
def baths_free():
    return {d: free_bath(d) for d in (1, 2, 3)}


@pytest.fixture(scope="session")
def baths_trapped():
    return {d: trapped_bath(d) for d in (1, 2, 3)}

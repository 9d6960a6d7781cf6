"""Physical constants (CODATA 2018), frozen in one place.

SI units throughout the package: kg, m, s, K, J.
"""

from __future__ import annotations

from dataclasses import dataclass

HBAR: float = 1.054571817e-34   # J s
K_B: float = 1.380649e-23       # J / K (exact)
BOHR_RADIUS: float = 5.29177210903e-11  # m


@dataclass(frozen=True)
class PhysicalConstants:
    """Constant bundle passed around where explicit injection is clearer."""

    hbar: float = HBAR
    k_B: float = K_B
    a_0: float = BOHR_RADIUS

    def __post_init__(self) -> None:
        if self.hbar <= 0 or self.k_B <= 0 or self.a_0 <= 0:
            raise ValueError("physical constants must be strictly positive")


CONSTANTS = PhysicalConstants()

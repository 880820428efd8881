"""Physical constants in atomic units (hartree, bohr, electron masses)."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PhysicalConstants:
    m_p: float = 1836.15267247
    E1_Ps: float = -0.25
    R_c: float = 0.7427
    E_BO_inf: float = -1.0
    mu: float = field(init=False)
    mu_n: float = field(init=False)
    E_lep_inf: float = field(init=False)

    def __post_init__(self):
        if self.m_p == float("inf"):
            mu = 1.0
        else:
            mu = self.m_p / (self.m_p + 1.0)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "mu_n", self.m_p / 2.0)
        object.__setattr__(self, "E_lep_inf", -mu)


CONSTANTS = PhysicalConstants()

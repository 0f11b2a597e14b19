"""Temperature jump and Kapitsa resistance in a Bose gas with the Bogoliubov spectrum."""

from ._core import (
    DispersionError,
    DomainError,
    Engine,
    JumpResult,
    PoleProbe,
    Profiles,
    QuadratureError,
    ScalarMoments,
    determinant,
    eps0,
    eps0_t_ratio,
    eps1,
    identity_residuals,
    jump_coefficient,
    jump_result,
    omega,
    pole_probe,
    profiles,
    resistance,
    zeroth_density,
)

__all__ = [
    "DispersionError",
    "DomainError",
    "Engine",
    "JumpResult",
    "PoleProbe",
    "Profiles",
    "QuadratureError",
    "ScalarMoments",
    "determinant",
    "eps0",
    "eps0_t_ratio",
    "eps1",
    "identity_residuals",
    "jump_coefficient",
    "jump_result",
    "omega",
    "pole_probe",
    "profiles",
    "resistance",
    "zeroth_density",
]

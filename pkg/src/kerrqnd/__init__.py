"""Design and simulation tools for a cross-Kerr photon-number QND detector."""

from .core import (
    NV_DIAMOND,
    DetectorDesign,
    DomainError,
    DriveConfig,
    FockSignal,
    KerrInteraction,
    MaterialSystem,
    ProbeState,
)

__all__ = [
    "NV_DIAMOND",
    "DetectorDesign",
    "DomainError",
    "DriveConfig",
    "FockSignal",
    "KerrInteraction",
    "MaterialSystem",
    "ProbeState",
]

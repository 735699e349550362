"""Tolerances and run configuration shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field, fields

TOL_POINT = 1e-10
TOL_MAT = 1e-9
TOL_DEG = 1e-8
TOL_BALANCE = 1e-8
TOL_COCYCLE = 1e-8
TOL_EMBED = 1e-7
PERTURB_DELTA = 1e-4
MAX_PERTURB_RETRIES = 20
SEARCH_MARGIN = 0.5


@dataclass(frozen=True)
class RunConfig:
    tol_point: float = TOL_POINT
    tol_balance: float = TOL_BALANCE
    tol_cocycle: float = TOL_COCYCLE
    tol_deg: float = TOL_DEG
    ball_radius: float = 8.0
    perturb_delta: float = PERTURB_DELTA
    seed: int = 0
    outputs: dict = field(default_factory=dict)

    def __post_init__(self):
        for f in fields(self):
            if f.name.startswith("tol_") or f.name in ("ball_radius", "perturb_delta"):
                if not getattr(self, f.name) > 0:
                    raise ValueError(f"{f.name} must be positive")

"""Runtime configuration for the numeric parts of the pipeline.

Everything numeric (root finding, tracking, quadrature, oracle sampling)
reads its precision, tolerances and seed from a single Config value so
that two runs with the same Config are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import InputError


@dataclass(frozen=True)
class Config:
    precision_bits: int = 128
    track_step: float = 0.25      # initial step, as a fraction of the segment length
    collision_tol: float = 2.0 ** -40   # relative root-collision threshold
    oracle_tol: float | None = None     # default: 2^-(precision_bits/4)
    degree_bound: int | None = None     # default at use sites: 2*deg(P)
    samples: int = 8
    seed: int = 20259

    def __post_init__(self):
        if self.precision_bits < 64:
            raise InputError("precision_bits must be at least 64")
        if not (0 < self.track_step <= 1):
            raise InputError("track_step must lie in (0, 1]")
        for name in ("collision_tol", "oracle_tol"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise InputError(f"{name} must be positive")
        if self.samples < 1:
            raise InputError("samples must be positive")

    @property
    def resolved_oracle_tol(self) -> float:
        if self.oracle_tol is not None:
            return self.oracle_tol
        return 2.0 ** -(self.precision_bits // 4)

    def resolved_degree_bound(self, poly_degree: int) -> int:
        if self.degree_bound is not None:
            return self.degree_bound
        return 2 * poly_degree

    def doubled(self) -> "Config":
        """Same configuration at doubled precision and halved step."""
        return replace(self, precision_bits=2 * self.precision_bits,
                       track_step=self.track_step / 2)


DEFAULT_CONFIG = Config()

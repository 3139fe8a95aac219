"""Resource caps.  Defaults can be overridden by environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


class CapExceeded(ValueError):
    """A requested computation is larger than the configured cap."""


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}") from None


@dataclass
class Limits:
    max_dense_dim: int = 2**12          # side length of dense 2^(nr) matrices
    max_enum_cells: int = 24            # n*r for normal-form enumeration
    max_enum_candidates: int = 2_000_000
    max_burnside_r: int = 10
    max_burnside_n: int = 6

    @classmethod
    def from_env(cls) -> Limits:
        return cls(
            max_dense_dim=_env_int("LCINV_MAX_DENSE_DIM", cls.max_dense_dim),
            max_enum_cells=_env_int("LCINV_MAX_ENUM_CELLS", cls.max_enum_cells),
            max_enum_candidates=_env_int("LCINV_MAX_ENUM_CANDIDATES", cls.max_enum_candidates),
            max_burnside_r=_env_int("LCINV_MAX_BURNSIDE_R", cls.max_burnside_r),
            max_burnside_n=_env_int("LCINV_MAX_BURNSIDE_N", cls.max_burnside_n),
        )

    def replace(self, **kw) -> Limits:
        known = {f.name for f in fields(self)}
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        for k, v in kw.items():
            if k not in known:
                raise TypeError(f"unknown limit {k!r}")
            if v is not None:
                vals[k] = v
        return Limits(**vals)


def current() -> Limits:
    return Limits.from_env()

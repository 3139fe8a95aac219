"""Text formats shared by the CLI: dense matrices and number printing."""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np


class FormatError(ValueError):
    pass


def fmt_real(v: float) -> str:
    """Full-precision decimal (17 significant digits), no locale."""
    v = float(v)
    if v == 0:
        v = 0.0  # drop the sign of negative zero
    return format(v, ".17g")


def fmt_complex(z: complex) -> str:
    return f"{fmt_real(z.real)} {fmt_real(z.imag)}"


def parse_matrix(text: str) -> np.ndarray:
    """Line 1 ``n``; then 2^n lines of 2^n entries ``re,im``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("matrix file is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"first line must be the qubit count n, got {lines[0]!r}") from None
    if n < 0:
        raise FormatError("qubit count must be non-negative")
    d = 2**n
    body = lines[1:]
    if len(body) != d:
        raise FormatError(f"expected {d} matrix rows for n={n}, found {len(body)}")
    out = np.empty((d, d), dtype=complex)
    for i, line in enumerate(body):
        cells = line.split()
        if len(cells) != d:
            raise FormatError(f"row {i + 1} has {len(cells)} entries, expected {d}")
        for j, cell in enumerate(cells):
            parts = cell.split(",")
            if len(parts) != 2:
                raise FormatError(f"entry ({i + 1},{j + 1}) must be 're,im', got {cell!r}")
            try:
                out[i, j] = complex(float(parts[0]), float(parts[1]))
            except ValueError:
                raise FormatError(f"entry ({i + 1},{j + 1}) is not numeric: {cell!r}") from None
    return out


def format_matrix(rho: np.ndarray) -> str:
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    n = d.bit_length() - 1
    lines = [str(n)]
    for row in rho:
        lines.append(" ".join(f"{fmt_real(z.real)},{fmt_real(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def read_matrix(path: Union[str, Path]) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path: Union[str, Path], rho: np.ndarray) -> None:
    Path(path).write_text(format_matrix(rho))

"""State metrics: fidelity, von Neumann entropy, and the Wigner function.

Entropy is reported in bits (log base 2) by default. The Wigner function
uses x = (a + a^dag)/sqrt(2), hbar = 1, and is normalized so that
integral W(x, p) dx dp = 1; the vacuum then peaks at 1/pi at the origin and
a coherent state alpha peaks at (sqrt(2) Re alpha, sqrt(2) Im alpha).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, InvalidDimensionError
from .fock import DensityOperator, FockKet, laguerre_sequence, log_factorials

EIGENVALUE_FLOOR = 1e-12


def fidelity_pure(a: FockKet, b: FockKet) -> float:
    """|<a|b>|^2 for two pure states on the same cutoff.

    For coherent states this equals exp(-|alpha - beta|^2).
    """
    value = abs(a.overlap(b)) ** 2
    return float(min(max(value, 0.0), 1.0))


def fidelity_mixed(rho: DensityOperator, ket: FockKet) -> float:
    """<ket| rho |ket>, the overlap of a mixed state with a pure reference."""
    if rho.cutoff != ket.cutoff:
        raise InvalidDimensionError(
            "cutoff mismatch: %d vs %d" % (rho.cutoff, ket.cutoff)
        )
    value = np.vdot(ket.amplitudes, rho.matrix @ ket.amplitudes).real
    return float(min(max(value, 0.0), 1.0))


def von_neumann_entropy(rho: DensityOperator, base: float = 2.0) -> float:
    """S(rho) = -Tr(rho log rho) via eigendecomposition.

    The matrix is symmetrized as (M + M^dag)/2 first, eigenvalues at or
    below 1e-12 are discarded, and the log base defaults to 2 (bits); pass
    ``base=math.e`` for nats.
    """
    if base <= 0 or base == 1.0:
        raise InvalidArgumentError("log base must be positive and != 1")
    sym = 0.5 * (rho.matrix + rho.matrix.conj().T)
    eigenvalues = np.linalg.eigvalsh(sym)
    eigenvalues = eigenvalues[eigenvalues > EIGENVALUE_FLOOR]
    if eigenvalues.size == 0:
        return 0.0
    entropy = -float(np.sum(eigenvalues * np.log(eigenvalues))) / math.log(base)
    return entropy if entropy > 0.0 else 0.0


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Wigner samples on a rectangular phase-space grid.

    ``values[i, j]`` is W(x_values[j], p_values[i]).
    """

    x_values: np.ndarray
    p_values: np.ndarray
    values: np.ndarray

    def riemann_sum(self) -> float:
        """Rectangle-rule integral of W over the grid (1 for a contained state)."""
        dx = float(self.x_values[1] - self.x_values[0]) if self.x_values.size > 1 else 1.0
        dp = float(self.p_values[1] - self.p_values[0]) if self.p_values.size > 1 else 1.0
        return float(np.sum(self.values)) * dx * dp


def _checked_axis(values, name) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgumentError("%s must be a non-empty 1-D array" % name)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("%s contains non-finite entries" % name)
    if arr.size > 1 and not np.all(np.diff(arr) > 0):
        raise InvalidArgumentError("%s must be strictly increasing" % name)
    return arr


def wigner(rho: DensityOperator, x_values, p_values) -> WignerGrid:
    """Evaluate W(x, p) of a truncated state on a grid.

    Uses the displaced-parity identity W = (1/pi) Tr[rho D(2 gamma) Pi] with
    gamma = (x + ip)/sqrt(2) and Pi the photon-number parity. Expanding
    D(2 gamma) in the Laguerre closed form and pairing each diagonal of the
    Hermitian rho with its conjugate keeps the sum exactly real; the
    accumulation order over diagonals is fixed, so results are reproducible.
    """
    x_arr = _checked_axis(x_values, "x_values")
    p_arr = _checked_axis(p_values, "p_values")
    X, P = np.meshgrid(x_arr, p_arr)
    B = math.sqrt(2.0) * (X + 1j * P)  # 2 gamma
    u = np.abs(B) ** 2
    abs_b = np.abs(B)
    log_b = np.log(np.where(abs_b > 0, abs_b, 1.0))
    ang_b = np.angle(B)
    c = rho.cutoff
    sym = 0.5 * (rho.matrix + rho.matrix.conj().T)
    lgf = log_factorials(c)
    signs = (-1.0) ** np.arange(c)
    total = np.zeros(B.shape)
    for d in range(c):
        diag = np.diagonal(sym, offset=d)  # rho_{m, m+d}
        lag = laguerre_sequence(d, u)
        acc = np.zeros(B.shape, dtype=complex)
        for m in range(c - d):
            coeff = diag[m] * signs[m] * math.exp(0.5 * (lgf[m] - lgf[m + d]))
            acc = acc + coeff * next(lag)
        if d == 0:
            total += acc.real * np.exp(-0.5 * u)
        else:
            kernel = np.exp(-0.5 * u + d * log_b)
            kernel[abs_b == 0] = 0.0
            total += 2.0 * (acc * np.exp(1j * d * ang_b)).real * kernel
    return WignerGrid(x_arr, p_arr, total / math.pi)


def wigner_to_csv(grid: WignerGrid, path) -> None:
    """Write a grid as CSV: header row is the x axis, first column the p axis.

    Floats are written with repr so a read-back reproduces them exactly.
    """
    lines = ["," + ",".join(repr(float(x)) for x in grid.x_values)]
    for i, p in enumerate(grid.p_values):
        row = ",".join(repr(float(v)) for v in grid.values[i])
        lines.append(repr(float(p)) + "," + row)
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def wigner_to_pgm(grid: WignerGrid, path) -> None:
    """Write an 8-bit min-max scaled heatmap of the grid as binary PGM.

    Row i of the image is p_values[i]; a constant grid maps to all zeros.
    """
    lo = float(np.min(grid.values))
    hi = float(np.max(grid.values))
    if hi > lo:
        scaled = np.rint((grid.values - lo) / (hi - lo) * 255.0)
    else:
        scaled = np.zeros_like(grid.values)
    pixels = scaled.astype(np.uint8)
    height, width = pixels.shape
    with open(path, "wb") as handle:
        handle.write(b"P5\n%d %d\n255\n" % (width, height))
        handle.write(pixels.tobytes())

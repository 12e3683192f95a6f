"""Truncated Fock-space states, coherent states, and displacement operators.

A single bosonic mode is represented on the first ``cutoff`` number states.
Conventions used throughout the package: hbar = 1, x = (a + a^dag)/sqrt(2),
p = (a - a^dag)/(i sqrt(2)), and a coherent state |alpha> = D(alpha)|0> has
number-basis amplitudes

    <n|alpha> = exp(-|alpha|^2 / 2) alpha^n / sqrt(n!)

All operations are pure functions over immutable values; nothing here keeps
hidden state, so results are reproducible bit for bit given the same inputs.
"""

import math
from dataclasses import InitVar, dataclass

import numpy as np

from .errors import (
    CutoffInsufficientError,
    InvalidArgumentError,
    InvalidDimensionError,
    InvalidParameterError,
    TruncationLeakageError,
)

AMPLITUDE_CAP = 10.0
TRUNCATION_TOL = 1e-6
LEAKAGE_TOL = 1e-4


def log_factorials(count: int) -> np.ndarray:
    """Cumulative table of log(n!) for n = 0 .. count-1.

    Working in logs keeps factorial ratios finite well past n = 170 where
    n! itself overflows a double.
    """
    table = np.zeros(count)
    if count > 1:
        table[1:] = np.cumsum(np.log(np.arange(1, count, dtype=float)))
    return table


def default_cutoff(alpha_max: float) -> int:
    """Cutoff policy: max(16, ceil(|alpha|^2 + 6|alpha| + 10)).

    The linear-plus-constant margin keeps the Poisson tail of any coherent
    state with |alpha| <= alpha_max below ~1e-8.
    """
    a = abs(alpha_max)
    return max(16, math.ceil(a * a + 6.0 * a + 10.0))


def _checked_amplitude(alpha, amplitude_cap: float = AMPLITUDE_CAP) -> complex:
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise InvalidParameterError("amplitude must be finite, got %r" % (alpha,))
    if abs(alpha) > amplitude_cap:
        raise InvalidParameterError(
            "amplitude |%g%+gj| = %g exceeds the cap %g"
            % (alpha.real, alpha.imag, abs(alpha), amplitude_cap)
        )
    return alpha


def _check_cutoff(cutoff: int) -> int:
    if int(cutoff) != cutoff or cutoff < 1:
        raise InvalidDimensionError("cutoff must be an integer >= 1, got %r" % (cutoff,))
    return int(cutoff)


@dataclass(frozen=True, eq=False)
class FockKet:
    """Pure state as a normalized complex amplitude vector over |0>..|cutoff-1>.

    ``leakage`` records the probability mass the producing operation lost to
    truncation before renormalizing (0 for states built exactly).
    """

    amplitudes: np.ndarray
    leakage: float = 0.0
    norm_tolerance: InitVar[float] = TRUNCATION_TOL

    def __post_init__(self, norm_tolerance):
        arr = np.array(self.amplitudes, dtype=complex)
        if arr.ndim != 1 or arr.size < 1:
            raise InvalidDimensionError("a ket needs a 1-D amplitude vector of length >= 1")
        nrm2 = float(np.sum(np.abs(arr) ** 2))
        if abs(nrm2 - 1.0) > norm_tolerance:
            raise InvalidArgumentError(
                "amplitudes are not normalized: sum |a_n|^2 = %.12g" % nrm2
            )
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def overlap(self, other: "FockKet") -> complex:
        """<self|other>; both states must share one cutoff."""
        if self.cutoff != other.cutoff:
            raise InvalidDimensionError(
                "cutoff mismatch: %d vs %d" % (self.cutoff, other.cutoff)
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Mixed state: Hermitian, positive semidefinite, unit-trace matrix.

    ``leakage`` records trace lost to truncation by the producing channel
    before renormalization.
    """

    matrix: np.ndarray
    leakage: float = 0.0

    HERMITICITY_TOL = 1e-10
    TRACE_TOL = 1e-8
    EIGENVALUE_FLOOR = -1e-10

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise InvalidDimensionError("a density operator needs a square matrix")
        if float(np.max(np.abs(mat - mat.conj().T))) > self.HERMITICITY_TOL:
            raise InvalidArgumentError("matrix is not Hermitian within tolerance")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > self.TRACE_TOL:
            raise InvalidArgumentError("trace %.12g is not 1 within tolerance" % trace.real)
        if float(np.min(np.linalg.eigvalsh(mat))) < self.EIGENVALUE_FLOOR:
            raise InvalidArgumentError("matrix has a negative eigenvalue beyond tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def cutoff(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def vacuum(cutoff: int) -> FockKet:
    """|0> on the given cutoff."""
    cutoff = _check_cutoff(cutoff)
    amps = np.zeros(cutoff, dtype=complex)
    amps[0] = 1.0
    return FockKet(amps)


def coherent_ket(alpha, cutoff: int, truncation_tolerance: float = TRUNCATION_TOL,
                 amplitude_cap: float = AMPLITUDE_CAP) -> FockKet:
    """Coherent state |alpha> truncated at ``cutoff`` and renormalized.

    The truncated expansion captures 1 - leakage of the norm; if the deficit
    exceeds ``truncation_tolerance`` the state does not fit and an error
    names the cutoff estimate |alpha|^2 + 6|alpha| + 10 that would. The
    renormalization factor applied is 1/sqrt(1 - leakage), recoverable from
    the returned ket's ``leakage`` field.
    """
    alpha = _checked_amplitude(alpha, amplitude_cap)
    cutoff = _check_cutoff(cutoff)
    if alpha == 0:
        return vacuum(cutoff)
    x = abs(alpha) ** 2
    n = np.arange(cutoff)
    logmag = -0.5 * x + n * math.log(abs(alpha)) - 0.5 * log_factorials(cutoff)
    amps = np.exp(logmag) * np.exp(1j * n * np.angle(alpha))
    captured = float(np.sum(np.abs(amps) ** 2))
    deficit = 1.0 - captured
    if deficit > truncation_tolerance:
        needed = math.ceil(x + 6.0 * abs(alpha) + 10.0)
        raise CutoffInsufficientError(
            "cutoff %d keeps only %.9f of the norm of |alpha|=%.6g; "
            "a cutoff of about %d (|alpha|^2 + 6|alpha| + 10) is required"
            % (cutoff, captured, abs(alpha), needed)
        )
    return FockKet(amps / math.sqrt(captured), leakage=deficit)


def laguerre_sequence(order: int, x):
    """Yield associated Laguerre values L_j^(order)(x) for j = 0, 1, 2, ...

    Upward three-term recurrence in the degree j; ``x`` may be a scalar or
    an ndarray (the yielded values then share its shape).
    """
    x = np.asarray(x, dtype=float)
    prev = np.ones(x.shape)
    yield prev
    cur = 1.0 + order - x
    yield cur
    j = 1
    while True:
        prev, cur = cur, ((2.0 * j + order + 1.0 - x) * cur - (j + order) * prev) / (j + 1.0)
        yield cur
        j += 1


def _laguerre_stack(order: int, x: float, count: int) -> np.ndarray:
    gen = laguerre_sequence(order, x)
    return np.array([float(next(gen)) for _ in range(count)])


def displacement_matrix(alpha, cutoff: int, amplitude_cap: float = AMPLITUDE_CAP) -> np.ndarray:
    """Matrix of D(alpha) = exp(alpha a^dag - alpha* a) on the truncated basis.

    Elements come from the closed form (x = |alpha|^2):

        <m|D|n> = sqrt(n!/m!) alpha^(m-n) e^(-x/2) L_n^(m-n)(x)        m >= n
        <m|D|n> = sqrt(m!/n!) (-alpha*)^(n-m) e^(-x/2) L_m^(n-m)(x)    m <  n

    filled one diagonal at a time; magnitudes are assembled in log space so
    large cutoffs never overflow the factorial ratio.
    """
    alpha = _checked_amplitude(alpha, amplitude_cap)
    cutoff = _check_cutoff(cutoff)
    if alpha == 0:
        return np.eye(cutoff, dtype=complex)
    x = abs(alpha) ** 2
    log_abs = math.log(abs(alpha))
    theta = np.angle(alpha)
    lgf = log_factorials(cutoff)
    mat = np.zeros((cutoff, cutoff), dtype=complex)
    for d in range(cutoff):
        j = np.arange(cutoff - d)
        lag = _laguerre_stack(d, x, cutoff - d)
        vals = np.exp(d * log_abs + 0.5 * (lgf[j] - lgf[j + d]) - 0.5 * x) * lag
        mat[j + d, j] = vals * np.exp(1j * d * theta)
        if d:
            mat[j, j + d] = vals * ((-1.0) ** d) * np.exp(-1j * d * theta)
    return mat


def apply_displacement(state: FockKet, alpha, leakage_tolerance: float = LEAKAGE_TOL,
                       amplitude_cap: float = AMPLITUDE_CAP) -> FockKet:
    """Apply D(alpha) to a ket and renormalize.

    The norm deficit after the truncated matrix-vector product is the
    truncation leakage; it is stored on the returned ket and must stay
    below ``leakage_tolerance``.
    """
    mat = displacement_matrix(alpha, state.cutoff, amplitude_cap)
    out = mat @ state.amplitudes
    nrm2 = float(np.sum(np.abs(out) ** 2))
    deficit = 1.0 - nrm2
    if deficit > leakage_tolerance:
        # mean photon number of the input gives its effective |alpha|
        mean_n = float(np.sum(np.arange(state.cutoff) * np.abs(state.amplitudes) ** 2))
        needed = default_cutoff(abs(alpha) + math.sqrt(mean_n))
        raise TruncationLeakageError(
            "displacement by %g%+gj leaked %.3g of the norm past cutoff %d; "
            "raise the cutoff (roughly %d)"
            % (alpha.real, alpha.imag, deficit, state.cutoff, needed)
        )
    return FockKet(out / math.sqrt(nrm2), leakage=deficit)


def number_distribution(state: FockKet) -> np.ndarray:
    """Photon-number probabilities P(n) = |<n|state>|^2 (sums to 1)."""
    return np.abs(state.amplitudes) ** 2


def sample_fock(state: FockKet, seed: int, size=None):
    """Draw Fock-basis measurement outcomes with a seeded generator.

    Returns one int when ``size`` is None, else an ndarray of ``size``
    outcomes. Identical (state, seed, size) always reproduce the same draw.
    """
    rng = np.random.default_rng(seed)
    p = number_distribution(state)
    p = p / p.sum()
    picked = rng.choice(state.cutoff, size=size, p=p)
    if size is None:
        return int(picked)
    return picked


def ket_to_density(state: FockKet) -> DensityOperator:
    """Rank-1 projector |state><state|."""
    return DensityOperator(np.outer(state.amplitudes, state.amplitudes.conj()),
                           leakage=state.leakage)

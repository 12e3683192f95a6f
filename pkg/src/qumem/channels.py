"""Noise channels on truncated density operators.

Two channels are provided. ``pure_loss`` attenuates a mode by a beam-splitter
transmissivity eta; note that loss alone maps a coherent state to another
coherent state (|alpha> -> |sqrt(eta) alpha>), so it never creates entropy on
coherently encoded frames. Entropy tagging therefore uses ``gaussian_noise``,
a random-displacement channel with mean added photon number nbar, under which
the vacuum becomes the thermal state with entropy

    g(nbar) = (nbar + 1) log2(nbar + 1) - nbar log2(nbar)   [bits]

and that entropy is independent of where the input sits in phase space.
"""

import cmath
import math
from functools import lru_cache

import numpy as np

from .errors import CutoffInsufficientError, InvalidParameterError
from .fock import DensityOperator, displacement_matrix, log_factorials

KRAUS_WEIGHT_FLOOR = 1e-12
TRACE_TOL = 1e-4
RADIAL_NODES = 12
ANGULAR_NODES = 16


def _check_probability_like(value, name, upper=None):
    value = float(value)
    if not math.isfinite(value) or value < 0 or (upper is not None and value > upper):
        bound = "[0, %g]" % upper if upper is not None else ">= 0"
        raise InvalidParameterError("%s must be %s, got %r" % (name, bound, value))
    return value


def pure_loss(rho: DensityOperator, eta) -> DensityOperator:
    """Photon-loss channel with transmissivity eta in [0, 1].

    Kraus operators K_k = sqrt((1-eta)^k / k!) eta^(n/2) a^k, built from the
    truncated lowering and number operators; terms whose largest element
    falls below 1e-12 past the binomial bulk are dropped. Loss only moves
    probability down the ladder, so the truncated Kraus family preserves the
    trace to machine precision.
    """
    eta = _check_probability_like(eta, "eta", upper=1.0)
    c = rho.cutoff
    if eta == 1.0:
        return DensityOperator(rho.matrix, leakage=0.0)
    n = np.arange(c, dtype=float)
    lowering = np.diag(np.sqrt(n[1:]), k=1)
    damp = (eta ** (n / 2.0))[:, None]
    lgf = log_factorials(c)
    out = np.zeros((c, c), dtype=complex)
    power = np.eye(c)
    for k in range(c):
        if k > 0:
            power = power @ lowering
        log_w = 0.5 * (k * math.log(1.0 - eta) - lgf[k])
        kraus = math.exp(log_w) * damp * power
        peak = float(np.max(np.abs(kraus)))
        if peak < KRAUS_WEIGHT_FLOOR:
            if k > (1.0 - eta) * (c - 1):
                break
            continue
        out += kraus @ rho.matrix @ kraus.conj().T
    trace = float(np.trace(out).real)
    deficit = 1.0 - trace
    return DensityOperator(out / trace, leakage=deficit)


@lru_cache(maxsize=8)
def _displacement_mixture(nbar: float, cutoff: int, radial_nodes: int, angular_nodes: int):
    """Quadrature family for the random-displacement integral.

    Radial direction: Gauss-Laguerre nodes after substituting t = r^2/nbar,
    which absorbs the Gaussian weight exactly. Angular direction: uniform
    nodes (exact for harmonics below the node count). Weights sum to 1.
    """
    t, w = np.polynomial.laguerre.laggauss(radial_nodes)
    weights = []
    ops = []
    for ti, wi in zip(t, w):
        radius = math.sqrt(nbar * ti)
        for j in range(angular_nodes):
            beta = radius * cmath.exp(2j * math.pi * j / angular_nodes)
            # far radial nodes may exceed the user-level amplitude cap;
            # they carry ~1e-16 weight, so the cap is waived here
            ops.append(displacement_matrix(beta, cutoff, amplitude_cap=math.inf))
            weights.append(wi / angular_nodes)
    stack = np.array(ops)
    stack.setflags(write=False)
    return np.array(weights), stack


def gaussian_noise(rho: DensityOperator, nbar, radial_nodes: int = RADIAL_NODES,
                   angular_nodes: int = ANGULAR_NODES,
                   trace_tolerance: float = TRACE_TOL) -> DensityOperator:
    """Random-displacement (classical Gaussian noise) channel.

    rho -> (1 / (pi nbar)) integral d^2 beta exp(-|beta|^2 / nbar)
                                D(beta) rho D(beta)^dag

    discretized on a Gauss-Laguerre radial x uniform angular grid and summed
    in fixed node order. Adds nbar photons of isotropic noise: the vacuum
    maps to the thermal state of mean occupation nbar. Raises when the
    truncated output loses more than ``trace_tolerance`` of the trace.
    """
    nbar = _check_probability_like(nbar, "nbar")
    if nbar == 0.0:
        return DensityOperator(rho.matrix, leakage=0.0)
    weights, ops = _displacement_mixture(float(nbar), rho.cutoff,
                                         int(radial_nodes), int(angular_nodes))
    out = np.zeros_like(rho.matrix)
    for wi, op in zip(weights, ops):
        out = out + wi * (op @ rho.matrix @ op.conj().T)
    trace = float(np.trace(out).real)
    deficit = 1.0 - trace
    if deficit > trace_tolerance:
        raise CutoffInsufficientError(
            "noise nbar=%g lost %.3g of the trace at cutoff %d; raise the cutoff"
            % (nbar, deficit, rho.cutoff)
        )
    return DensityOperator(out / trace, leakage=deficit)


def thermal_density(nbar, cutoff: int) -> DensityOperator:
    """Thermal state diag(nbar^n / (nbar+1)^(n+1)), renormalized on the cutoff.

    Closed-form reference distribution for the gaussian_noise channel acting
    on vacuum; mainly useful for validation.
    """
    nbar = _check_probability_like(nbar, "nbar")
    n = np.arange(cutoff, dtype=float)
    if nbar == 0.0:
        diag = np.zeros(cutoff)
        diag[0] = 1.0
    else:
        diag = np.exp(n * math.log(nbar) - (n + 1.0) * math.log(nbar + 1.0))
    total = float(diag.sum())
    return DensityOperator(np.diag(diag / total).astype(complex), leakage=1.0 - total)

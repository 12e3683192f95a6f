"""
Coherent states on a truncated Fock ladder
==========================================

Builds a few coherent states, checks how much probability the cutoff
leaves out, and applies displacement operators directly.
"""

import numpy as np

from qumem import (
    coherent_ket,
    default_cutoff,
    displacement_matrix,
    fidelity_pure,
    number_distribution,
    vacuum,
)

# a coherent state |alpha> is the displaced vacuum D(alpha)|0>
for alpha in (0.5, 1.0, 2.0):
    cutoff = default_cutoff(alpha)
    state = coherent_ket(alpha, cutoff)
    dist = number_distribution(state)
    print("alpha=%-4g cutoff=%-3d  mean n=%.4f  tail leakage=%.3e"
          % (alpha, cutoff, np.dot(np.arange(cutoff), dist), state.leakage))

# the matrix route and the closed form agree
cutoff = default_cutoff(1.2)
matrix = displacement_matrix(1.2, cutoff)
moved = matrix @ vacuum(cutoff).amplitudes
closed = coherent_ket(1.2, cutoff).amplitudes
print("matrix vs closed form, max difference:", np.max(np.abs(moved - closed)))

# two displacements compose up to a phase: D(a)D(b) = e^{i Im(a b*)} D(a+b)
a, b = 0.4 + 0.3j, -0.2 + 0.5j
left = displacement_matrix(a, cutoff) @ displacement_matrix(b, cutoff)
right = np.exp(1j * (a * np.conj(b)).imag) * displacement_matrix(a + b, cutoff)
print("composition law residual:", np.max(np.abs(left - right)[:10, :10]))

# overlap of two coherent states falls off as exp(-|a-b|^2)
f = fidelity_pure(coherent_ket(0.5, 30), coherent_ket(0.6, 30))
print("fidelity |0.5> vs |0.6>: %.6f (closed form %.6f)" % (f, np.exp(-0.01)))

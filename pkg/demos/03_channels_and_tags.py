"""
Noise channels and entropy tags
===============================

Pure loss leaves a coherent state coherent (just smaller), so it carries no
entropy signature. Random-displacement noise does mix the state, and the
entropy it injects depends only on the noise strength, not on the stored
amplitude. That makes the post-noise entropy a usable fingerprint for a
whole recording while staying blind to individual frame content.
"""

from qumem import (
    coherent_ket,
    encode_sequence,
    fidelity_mixed,
    gaussian_noise,
    ket_to_density,
    pure_loss,
    vacuum,
    von_neumann_entropy,
)

# cutoff 40 keeps the hottest channel below its truncation guard
rho = ket_to_density(coherent_ket(0.8, 40))

# loss with transmission 0.25 turns |0.8> into |0.4>
lossy = pure_loss(rho, 0.25)
print("after loss: fidelity vs |0.4> =",
      fidelity_mixed(lossy, coherent_ket(0.4, 40)))
print("after loss: entropy =", von_neumann_entropy(lossy), "bits")

# random displacements heat the state instead
for nbar in (0.25, 0.5, 1.0, 2.0):
    noisy = gaussian_noise(rho, nbar)
    print("nbar=%-5g entropy=%.6f bits" % (nbar, von_neumann_entropy(noisy)))

# the entropy matches what the same noise does to the vacuum
nbar = 0.5
on_vacuum = von_neumann_entropy(gaussian_noise(ket_to_density(vacuum(40)), nbar))
on_state = von_neumann_entropy(gaussian_noise(rho, nbar))
print("displacement invariance: %.6f vs %.6f" % (on_vacuum, on_state))

# so a ledger's tags cluster tightly around the channel's entropy level
ledger = encode_sequence([0.1, 0.5, 0.9], nbar=nbar)
print("ledger tags:", [round(t, 6) for t in ledger.tags_bits])

#!/usr/bin/env python3
# Delta-encode a brightness ramp into one qumode, then rewind it.

import numpy as np

from qumem import (
    coherent_ket,
    current_state,
    decode_feature,
    encode_sequence,
    fidelity_pure,
    rewind,
)

# ten synthetic frame features on the 8-bit pixel grid
features = np.array([13, 40, 80, 120, 160, 200, 240, 255, 180, 90]) / 255.0
print("features:", np.round(features, 4))

ledger = encode_sequence(features, kappa=1.0)
print("stored deltas:", np.round([d.real for d in ledger.deltas], 4))
print("cumulative amplitude:", ledger.cumulative)
print("composition phase:", ledger.phase)

# the live state only remembers the last frame...
final = current_state(ledger)
print("fidelity of live state vs |f_N>:",
      fidelity_pure(final, coherent_ket(features[-1], ledger.cutoff)))

# ...but any earlier frame comes back by undoing the later displacements
for k in (3, 6, 10):
    state = rewind(ledger, k)
    target = coherent_ket(features[k - 1], ledger.cutoff)
    print("rewind to frame %2d: fidelity %.9f, decoded %.6f (stored %.6f)"
          % (k, fidelity_pure(state, target), decode_feature(ledger, k),
             features[k - 1]))

# rewinding everything returns the vacuum
print("frame 0 mean photon number:",
      float(np.sum(np.arange(ledger.cutoff)
                   * np.abs(rewind(ledger, 0).amplitudes) ** 2)))

"""qumem: a truncated Fock-space qumode simulator with an image-memory codec.

Image frames are stored as delta-evolved coherent-state displacements on a
single mode per channel, tagged with post-noise von Neumann entropies, and
retrieved by applying the inverse displacements in reverse order.
"""

from . import errors
from .channels import gaussian_noise, pure_loss, thermal_density
from .codec import (
    FrameLedger,
    current_state,
    decode_feature,
    encode_deltas,
    encode_rgb_sequence,
    encode_sequence,
    frame_feature,
    ledger_from_dict,
    ledger_to_dict,
    load_ledgers,
    patch_features,
    rewind,
    rgb_frame_features,
    save_ledgers,
)
from .fock import (
    AMPLITUDE_CAP,
    DensityOperator,
    FockKet,
    apply_displacement,
    coherent_ket,
    default_cutoff,
    displacement_matrix,
    ket_to_density,
    number_distribution,
    sample_fock,
    vacuum,
)
from .images import read_image, write_pgm, write_ppm
from .index import EntropyIndex
from .metrics import (
    WignerGrid,
    fidelity_mixed,
    fidelity_pure,
    von_neumann_entropy,
    wigner,
    wigner_to_csv,
    wigner_to_pgm,
)

__version__ = "0.1.0"

__all__ = [
    "AMPLITUDE_CAP",
    "DensityOperator",
    "EntropyIndex",
    "FockKet",
    "FrameLedger",
    "WignerGrid",
    "apply_displacement",
    "coherent_ket",
    "current_state",
    "decode_feature",
    "default_cutoff",
    "displacement_matrix",
    "encode_deltas",
    "encode_rgb_sequence",
    "encode_sequence",
    "errors",
    "fidelity_mixed",
    "fidelity_pure",
    "frame_feature",
    "gaussian_noise",
    "ket_to_density",
    "ledger_from_dict",
    "ledger_to_dict",
    "load_ledgers",
    "number_distribution",
    "patch_features",
    "pure_loss",
    "read_image",
    "rewind",
    "rgb_frame_features",
    "sample_fock",
    "save_ledgers",
    "thermal_density",
    "vacuum",
    "von_neumann_entropy",
    "wigner",
    "wigner_to_csv",
    "wigner_to_pgm",
    "write_pgm",
    "write_ppm",
]

"""Image-memory codec: frames in, displacement deltas and entropy tags out.

A frame sequence is stored as one qumode per channel. Frame k maps to the
coherent amplitude alpha_k = kappa * I_k (I_k the frame's mean intensity in
[0, 1], alpha_0 = 0); only the increments delta_k = alpha_k - alpha_{k-1}
are applied to the mode, so the stored quantum payload is a single coherent
state regardless of how many frames went in. The ledger keeps the deltas,
the accumulated composition phase

    phase = sum_k Im(delta_k * conj(beta_{k-1})),   beta_k = sum_{j<=k} delta_j

(from D(d1)D(d2) = D(d1+d2) exp(i Im(d1 conj(d2)))), and one entropy tag per
frame: the von Neumann entropy of the frame's state after the tagging noise
channel. Rewind applies the inverse displacements in reverse order.
"""

import json
import math
import numbers
from dataclasses import dataclass

import numpy as np

from .channels import gaussian_noise
from .errors import (
    FrameRangeError,
    InvalidArgumentError,
    InvalidParameterError,
)
from .fock import (
    AMPLITUDE_CAP,
    FockKet,
    apply_displacement,
    coherent_ket,
    default_cutoff,
    ket_to_density,
    vacuum,
)
from .metrics import von_neumann_entropy

LEDGER_VERSION = 1
DEFAULT_KAPPA = 1.0
DEFAULT_NBAR = 0.5


def frame_feature(pixels) -> float:
    """Mean intensity of an 8-bit grayscale frame, scaled to [0, 1].

    feature = mean(pixels) / 255
    """
    arr = np.asarray(pixels)
    if arr.size == 0:
        raise InvalidArgumentError("empty image has no feature")
    if arr.ndim != 2:
        raise InvalidArgumentError("grayscale frame must be 2-D, got %d-D" % arr.ndim)
    return float(arr.mean()) / 255.0


def rgb_frame_features(pixels):
    """Per-channel mean intensities (r, g, b) of an (H, W, 3) frame."""
    arr = np.asarray(pixels)
    if arr.size == 0:
        raise InvalidArgumentError("empty image has no feature")
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise InvalidArgumentError("RGB frame must have shape (H, W, 3)")
    return tuple(float(arr[:, :, c].mean()) / 255.0 for c in range(3))


def patch_features(pixels, grid_size: int) -> np.ndarray:
    """Split a frame into a grid_size x grid_size grid of patch features.

    Rows and columns are divided as evenly as possible; entry [i, j] is the
    mean/255 of patch (i, j).
    """
    arr = np.asarray(pixels)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidArgumentError("patch mode expects a non-empty 2-D frame")
    g = int(grid_size)
    if g < 1 or g > min(arr.shape):
        raise InvalidArgumentError(
            "patch grid %r does not fit a %dx%d frame" % (grid_size, *arr.shape)
        )
    out = np.empty((g, g))
    for i, rows in enumerate(np.array_split(arr, g, axis=0)):
        for j, block in enumerate(np.array_split(rows, g, axis=1)):
            out[i, j] = block.mean() / 255.0
    return out


@dataclass(frozen=True)
class FrameLedger:
    """Classical record of one encoded qumode.

    deltas holds the N applied displacement increments, cumulative their sum,
    phase the accumulated composition phase, and tags_bits one entropy tag
    per frame. channel is "gray" or one of "r"/"g"/"b"; patch marks the
    (row, col) cell when the frame was split into a grid.
    """

    kappa: float
    deltas: tuple
    cumulative: complex
    phase: float
    tags_bits: tuple
    cutoff: int
    noise_nbar: float
    channel: str = "gray"
    patch: tuple | None = None

    @property
    def frame_count(self) -> int:
        return len(self.deltas)

    def partial_amplitude(self, k: int) -> complex:
        """beta_k, the amplitude after the first k displacements."""
        self._check_frame(k)
        return sum(self.deltas[:k], start=complex(0))

    def derive_cumulative(self) -> complex:
        return sum(self.deltas, start=complex(0))

    def derive_phase(self) -> float:
        phase = 0.0
        running = complex(0)
        for delta in self.deltas:
            phase += (complex(delta) * running.conjugate()).imag
            running += delta
        return phase

    def _check_frame(self, k: int) -> None:
        if int(k) != k or k < 0 or k > self.frame_count:
            raise FrameRangeError(
                "frame index %r outside 0..%d" % (k, self.frame_count)
            )


def _checked_gain(kappa) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa) or kappa <= 0:
        raise InvalidParameterError("kappa must be a finite positive real, got %r" % kappa)
    return kappa


def _tag(state: FockKet, nbar: float) -> float:
    return von_neumann_entropy(gaussian_noise(ket_to_density(state), nbar))


def encode_deltas(deltas, kappa: float = DEFAULT_KAPPA, nbar: float = DEFAULT_NBAR,
                  cutoff: int | None = None, channel: str = "gray",
                  patch=None, amplitude_cap: float = AMPLITUDE_CAP) -> FrameLedger:
    """Build a ledger from raw displacement increments.

    The increments are applied to the vacuum in order; each intermediate
    state is tagged with its post-noise entropy. ``cutoff`` defaults to the
    policy value for the largest intermediate amplitude.
    """
    deltas = tuple(complex(d) for d in deltas)
    partials = []
    running = complex(0)
    for delta in deltas:
        if not (math.isfinite(delta.real) and math.isfinite(delta.imag)):
            raise InvalidParameterError("delta %r is not finite" % (delta,))
        running += delta
        partials.append(running)
    alpha_max = max((abs(b) for b in partials), default=0.0)
    if alpha_max > amplitude_cap:
        raise InvalidParameterError(
            "gain too large: peak amplitude %.6g exceeds the cap %g"
            % (alpha_max, amplitude_cap)
        )
    if cutoff is None:
        cutoff = default_cutoff(alpha_max)
    nbar = float(nbar)
    state = vacuum(cutoff)
    tags = []
    phase = 0.0
    running = complex(0)
    for delta in deltas:
        state = apply_displacement(state, delta, amplitude_cap=amplitude_cap)
        phase += (delta * running.conjugate()).imag
        running += delta
        tags.append(_tag(state, nbar))
    return FrameLedger(
        kappa=_checked_gain(kappa),
        deltas=deltas,
        cumulative=running,
        phase=phase,
        tags_bits=tuple(tags),
        cutoff=int(cutoff),
        noise_nbar=nbar,
        channel=str(channel),
        patch=tuple(int(v) for v in patch) if patch is not None else None,
    )


def encode_sequence(features, kappa: float = DEFAULT_KAPPA, nbar: float = DEFAULT_NBAR,
                    cutoff: int | None = None, channel: str = "gray",
                    patch=None, amplitude_cap: float = AMPLITUDE_CAP) -> FrameLedger:
    """Delta-encode a sequence of frame features into one qumode ledger.

    alpha_k = kappa * feature_k with alpha_0 = 0; the applied increments are
    delta_k = alpha_k - alpha_{k-1}. Features must be reals in [0, 1]; the
    peak amplitude kappa * max(feature) must stay under the amplitude cap
    (raise kappa past that and encoding fails with a gain error).
    """
    feats = []
    for value in features:
        if not isinstance(value, numbers.Real) or not math.isfinite(float(value)):
            raise InvalidArgumentError("feature %r is not a finite real" % (value,))
        value = float(value)
        if value < 0.0 or value > 1.0:
            raise InvalidArgumentError("feature %g outside [0, 1]" % value)
        feats.append(value)
    if not feats:
        raise InvalidArgumentError("need at least one frame to encode")
    kappa = _checked_gain(kappa)
    alphas = [kappa * f for f in feats]
    deltas = np.diff([0.0] + alphas)
    return encode_deltas(deltas, kappa=kappa, nbar=nbar, cutoff=cutoff,
                         channel=channel, patch=patch, amplitude_cap=amplitude_cap)


def encode_rgb_sequence(features, kappas=(DEFAULT_KAPPA,) * 3, nbar: float = DEFAULT_NBAR,
                        cutoff: int | None = None, patch=None,
                        amplitude_cap: float = AMPLITUDE_CAP) -> dict:
    """Encode per-channel feature triples into three independent ledgers.

    ``features`` is a sequence of (r, g, b) triples; ``kappas`` one gain per
    channel. Returns {"r": ledger, "g": ledger, "b": ledger}.
    """
    triples = [tuple(t) for t in features]
    if any(len(t) != 3 for t in triples):
        raise InvalidArgumentError("RGB features must be (r, g, b) triples")
    if len(kappas) != 3:
        raise InvalidArgumentError("need one kappa per RGB channel")
    out = {}
    for idx, name in enumerate(("r", "g", "b")):
        out[name] = encode_sequence(
            [t[idx] for t in triples], kappa=kappas[idx], nbar=nbar,
            cutoff=cutoff, channel=name, patch=patch, amplitude_cap=amplitude_cap,
        )
    return out


def current_state(ledger: FrameLedger, method: str = "direct") -> FockKet:
    """State of the encoded qumode after all N frames.

    method="direct" builds coherent(cumulative) in closed form;
    method="sequential" replays every increment through the displacement
    matrix. The two agree up to the tracked global phase.
    """
    if method == "direct":
        return coherent_ket(ledger.cumulative, ledger.cutoff)
    if method == "sequential":
        state = vacuum(ledger.cutoff)
        for delta in ledger.deltas:
            state = apply_displacement(state, delta)
        return state
    raise InvalidArgumentError("unknown method %r (use 'direct' or 'sequential')" % method)


def rewind(ledger: FrameLedger, k: int) -> FockKet:
    """Retrieve the frame-k state by undoing displacements k+1..N in reverse.

    k = 0 recovers the vacuum; k = N returns the current state unchanged.
    """
    ledger._check_frame(k)
    state = current_state(ledger)
    for delta in reversed(ledger.deltas[k:]):
        state = apply_displacement(state, -delta)
    return state


def decode_feature(ledger: FrameLedger, k: int) -> float:
    """Classical readout of frame k: Re(beta_k / kappa), clamped to [0, 1]."""
    value = (ledger.partial_amplitude(k) / ledger.kappa).real
    return float(min(max(value, 0.0), 1.0))


def _complex_pair(value: complex):
    return [float(value.real), float(value.imag)]


def ledger_to_dict(ledger: FrameLedger) -> dict:
    data = {
        "version": LEDGER_VERSION,
        "kappa": float(ledger.kappa),
        "cutoff": int(ledger.cutoff),
        "noise_nbar": float(ledger.noise_nbar),
        "deltas": [_complex_pair(complex(d)) for d in ledger.deltas],
        "cumulative": _complex_pair(complex(ledger.cumulative)),
        "phase": float(ledger.phase),
        "tags_bits": [float(t) for t in ledger.tags_bits],
        "channel": ledger.channel,
    }
    if ledger.patch is not None:
        data["patch"] = [int(v) for v in ledger.patch]
    return data


def ledger_from_dict(data: dict) -> FrameLedger:
    if not isinstance(data, dict) or data.get("version") != LEDGER_VERSION:
        raise InvalidArgumentError(
            "unsupported ledger record (expected version %d)" % LEDGER_VERSION
        )
    try:
        deltas = tuple(complex(re, im) for re, im in data["deltas"])
        cumulative = complex(*data["cumulative"])
        patch = data.get("patch")
        return FrameLedger(
            kappa=float(data["kappa"]),
            deltas=deltas,
            cumulative=cumulative,
            phase=float(data["phase"]),
            tags_bits=tuple(float(t) for t in data["tags_bits"]),
            cutoff=int(data["cutoff"]),
            noise_nbar=float(data["noise_nbar"]),
            channel=str(data["channel"]),
            patch=tuple(int(v) for v in patch) if patch is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError("malformed ledger record: %s" % exc) from exc


def save_ledgers(ledgers, path) -> None:
    """Write one ledger as a JSON object, several as a JSON array.

    json serializes floats with repr, so every real survives a round trip
    exactly (well past 15 significant digits).
    """
    if isinstance(ledgers, FrameLedger):
        payload = ledger_to_dict(ledgers)
    else:
        items = [ledger_to_dict(l) for l in ledgers]
        payload = items[0] if len(items) == 1 else items
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2)
        handle.write("\n")


def load_ledgers(path) -> list:
    """Read a ledger file back as a list of FrameLedger records."""
    with open(path) as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError("%s: not valid JSON (%s)" % (path, exc)) from exc
    records = payload if isinstance(payload, list) else [payload]
    return [ledger_from_dict(r) for r in records]

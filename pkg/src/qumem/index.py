"""Entropy-tag index: fixed-width bucketing with tolerance lookup.

Tags are bucketed as floor(tag / width); a lookup collects every bucket
overlapping [tag - tol, tag + tol] and orders the union by distance to the
query. Tags are fingerprints, not unique keys: distinct frames may share a
bucket (or an exact tag), so lookups return lists and the caller decides.
"""

import json
import math

from .errors import DuplicateEntryError, InvalidArgumentError, InvalidParameterError

DEFAULT_WIDTH_BITS = 0.05


class EntropyIndex:
    """Mutable registry mapping entropy tags to (ledger_id, frame_index).

    Mutation is single-writer; lookups are pure. Identical registration
    order reproduces identical lookup results.
    """

    def __init__(self, width_bits: float = DEFAULT_WIDTH_BITS):
        width_bits = float(width_bits)
        if not math.isfinite(width_bits) or width_bits <= 0:
            raise InvalidParameterError(
                "bucket width must be a positive real, got %r" % width_bits
            )
        self.width_bits = width_bits
        self._buckets = {}
        self._seen = set()

    def __len__(self):
        return len(self._seen)

    def bucket_of(self, tag: float) -> int:
        return math.floor(float(tag) / self.width_bits)

    def register(self, ledger_id: str, frame_index: int, tag: float) -> None:
        if not isinstance(ledger_id, str) or not ledger_id:
            raise InvalidArgumentError("ledger_id must be a non-empty string")
        frame_index = int(frame_index)
        tag = float(tag)
        if not math.isfinite(tag) or tag < 0:
            raise InvalidArgumentError("tag must be a non-negative real, got %r" % tag)
        key = (ledger_id, frame_index)
        if key in self._seen:
            raise DuplicateEntryError(
                "frame %d of %r is already registered" % (frame_index, ledger_id)
            )
        self._seen.add(key)
        self._buckets.setdefault(self.bucket_of(tag), []).append(
            (ledger_id, frame_index, tag)
        )

    def find(self, tag: float, tolerance: float) -> list:
        """All entries in buckets overlapping [tag - tol, tag + tol].

        Returns (ledger_id, frame_index, tag) triples ordered by
        |stored - query| ascending, ties by (ledger_id, frame_index).
        """
        tag = float(tag)
        tolerance = float(tolerance)
        if not math.isfinite(tolerance) or tolerance < 0:
            raise InvalidParameterError("tolerance must be >= 0, got %r" % tolerance)
        first = math.floor((tag - tolerance) / self.width_bits)
        last = math.floor((tag + tolerance) / self.width_bits)
        hits = []
        for bucket in range(first, last + 1):
            hits.extend(self._buckets.get(bucket, ()))
        hits.sort(key=lambda e: (abs(e[2] - tag), e[0], e[1]))
        return hits

    def lookup(self, tag: float, tolerance: float) -> list:
        """Like find(), reduced to (ledger_id, frame_index) pairs."""
        return [(lid, frame) for lid, frame, _ in self.find(tag, tolerance)]

    def entries(self) -> list:
        """Every entry as (bucket, ledger_id, frame_index, tag), bucket-sorted."""
        out = []
        for bucket in sorted(self._buckets):
            for lid, frame, tag in self._buckets[bucket]:
                out.append((bucket, lid, frame, tag))
        return out

    def to_dict(self) -> dict:
        return {
            "width_bits": self.width_bits,
            "entries": [
                {"bucket": b, "ledger": lid, "frame": frame, "tag_bits": tag}
                for b, lid, frame, tag in self.entries()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EntropyIndex":
        try:
            index = cls(width_bits=data["width_bits"])
            for entry in data["entries"]:
                index.register(entry["ledger"], entry["frame"], entry["tag_bits"])
        except (KeyError, TypeError) as exc:
            raise InvalidArgumentError("malformed index record: %s" % exc) from exc
        return index

    def save(self, path) -> None:
        with open(path, "w") as handle:
            json.dump(self.to_dict(), handle, indent=2)
            handle.write("\n")

    @classmethod
    def load(cls, path) -> "EntropyIndex":
        with open(path) as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as exc:
                raise InvalidArgumentError("%s: not valid JSON (%s)" % (path, exc)) from exc
        return cls.from_dict(data)

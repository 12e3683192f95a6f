import numpy as np
import pytest

from qumem import DensityOperator, EntropyIndex, encode_sequence, von_neumann_entropy
from qumem.errors import (
    DuplicateEntryError,
    InvalidArgumentError,
    InvalidParameterError,
)


def test_bucket_of_fixed_width():
    index = EntropyIndex(width_bits=0.05)
    assert index.bucket_of(0.0) == 0
    assert index.bucket_of(0.5828) == 11
    assert index.bucket_of(0.049999) == 0
    assert index.bucket_of(0.05) == 1


def test_buckets_split_nearby_entropies():
    # entropy values from two mixed states land three buckets apart
    high = von_neumann_entropy(DensityOperator(np.array([[0.8, 0.2], [0.2, 0.2]])))
    low = von_neumann_entropy(DensityOperator(np.array([[0.6, 0.4], [0.4, 0.4]])))
    index = EntropyIndex(width_bits=0.05)
    assert index.bucket_of(high) == 11
    assert index.bucket_of(low) == 8


def test_register_and_exact_lookup():
    index = EntropyIndex(width_bits=0.05)
    index.register("a.json", 1, 0.5828)
    index.register("a.json", 2, 0.4287)
    index.register("b.json", 1, 0.9000)
    assert len(index) == 3
    assert index.lookup(0.58, 0.01) == [("a.json", 1)]
    # distances from 0.58: 0.0028, 0.1513, 0.32
    assert index.lookup(0.58, 10.0) == [
        ("a.json", 1), ("a.json", 2), ("b.json", 1)]


def test_lookup_orders_by_distance_then_identity():
    index = EntropyIndex(width_bits=0.05)
    index.register("b.json", 5, 0.52)
    index.register("a.json", 9, 0.48)  # same distance from 0.50
    index.register("a.json", 1, 0.48)
    hits = index.lookup(0.50, 0.05)
    assert hits == [("a.json", 1), ("a.json", 9), ("b.json", 5)]


def test_lookup_spans_bucket_boundaries():
    index = EntropyIndex(width_bits=0.05)
    index.register("x", 1, 0.049)   # bucket 0
    index.register("x", 2, 0.051)   # bucket 1
    assert sorted(index.lookup(0.050, 0.002)) == [("x", 1), ("x", 2)]
    # zero tolerance still reads the query's own bucket
    assert index.lookup(0.051, 0.0) == [("x", 2)]


def test_exact_distance_ties_break_on_identity():
    # 0.25 and 0.75 sit exactly 0.25 from 0.5 in binary floating point
    index = EntropyIndex(width_bits=0.05)
    index.register("x", 2, 0.75)
    index.register("x", 1, 0.25)
    assert index.lookup(0.5, 0.25) == [("x", 1), ("x", 2)]


def test_empty_index_finds_nothing():
    index = EntropyIndex()
    assert index.lookup(0.5, 1.0) == []
    assert index.entries() == []


def test_duplicate_registration_rejected():
    index = EntropyIndex()
    index.register("a", 1, 0.3)
    with pytest.raises(DuplicateEntryError):
        index.register("a", 1, 0.3)
    # same frame in another ledger is fine, as is another frame here
    index.register("b", 1, 0.3)
    index.register("a", 2, 0.3)
    assert len(index) == 3


def test_register_validation():
    index = EntropyIndex()
    with pytest.raises(InvalidArgumentError):
        index.register("", 0, 0.2)
    with pytest.raises(InvalidArgumentError):
        index.register("a", 0, -0.1)
    with pytest.raises(InvalidArgumentError):
        index.register("a", 0, float("nan"))
    with pytest.raises(InvalidParameterError):
        EntropyIndex(width_bits=0.0)
    with pytest.raises(InvalidParameterError):
        index.find(0.5, -1.0)


def test_collision_returns_every_holder():
    index = EntropyIndex()
    for frame in (1, 2, 3):
        index.register("same", frame, 0.7071)
    assert index.lookup(0.7071, 0.0) == [("same", 1), ("same", 2), ("same", 3)]


def test_determinism_under_registration_replay():
    tags = [0.31, 0.29, 0.305, 0.32, 0.295]
    a = EntropyIndex(width_bits=0.01)
    b = EntropyIndex(width_bits=0.01)
    for idx in (a, b):
        for frame, tag in enumerate(tags, start=1):
            idx.register("l", frame, tag)
    assert a.find(0.30, 0.02) == b.find(0.30, 0.02)


def test_entries_are_bucket_sorted():
    index = EntropyIndex(width_bits=0.1)
    index.register("l", 1, 0.95)
    index.register("l", 2, 0.05)
    index.register("l", 3, 0.55)
    assert [e[0] for e in index.entries()] == [0, 5, 9]


def test_index_json_round_trip(tmp_path):
    path = tmp_path / "index.json"
    index = EntropyIndex(width_bits=0.05)
    ledger = encode_sequence([0.2, 0.6, 1.0])
    for frame, tag in enumerate(ledger.tags_bits, start=1):
        index.register("frames.json", frame, tag)
    index.save(path)
    back = EntropyIndex.load(path)
    assert back.width_bits == index.width_bits
    assert back.entries() == index.entries()
    assert back.lookup(ledger.tags_bits[1], 0.025)[0] == ("frames.json", 2)


def test_load_rejects_malformed(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[1, 2")
    with pytest.raises(InvalidArgumentError):
        EntropyIndex.load(path)
    path.write_text('{"entries": []}')
    with pytest.raises(InvalidArgumentError):
        EntropyIndex.load(path)

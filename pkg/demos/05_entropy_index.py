#!/usr/bin/env python3
# Index entropy tags from several recordings and look frames back up.

from qumem import EntropyIndex, encode_sequence

# three recordings taken at different noise levels: the tag level
# fingerprints the channel each one went through (the hot channel needs
# cutoff headroom beyond the amplitude-based default, so set it everywhere)
recordings = {
    "clean.json": encode_sequence([0.2, 0.6, 0.9], nbar=0.1, cutoff=40),
    "normal.json": encode_sequence([0.3, 0.5, 0.7], nbar=0.5, cutoff=40),
    "harsh.json": encode_sequence([0.1, 0.8, 0.4], nbar=1.5, cutoff=40),
}

index = EntropyIndex(width_bits=0.05)
for name, ledger in recordings.items():
    for frame, tag in enumerate(ledger.tags_bits, start=1):
        index.register(name, frame, tag)

print("indexed", len(index), "frames into buckets:")
for bucket, name, frame, tag in index.entries():
    print("  bucket %3d  %-12s frame %d  tag %.6f" % (bucket, name, frame, tag))

# querying near one recording's tag level pulls in only that recording
probe = recordings["normal.json"].tags_bits[0]
print("query tag %.6f tol 0.025:" % probe)
for name, frame in index.lookup(probe, 0.025):
    print("  hit:", name, "frame", frame)

# a wide tolerance ranks everything by distance instead
print("query tag %.6f tol 3.0 (top 4):" % probe)
for name, frame, tag in index.find(probe, 3.0)[:4]:
    print("  %-12s frame %d  tag %.6f" % (name, frame, tag))

"""Snapshot (de)serialization: one JSON document per chain state.

Numbers are written with repr (shortest round-trip decimal), so a snapshot
written and read back reproduces the chain bit-exactly.
"""

import json

from .contour import Chain, Curve


def chain_to_dict(time, chain):
    return {
        "time": time,
        "curves": [
            {
                "winding": c.winding,
                "nodes": [[float(x), float(y)] for x, y in c.nodes],
            }
            for c in chain.curves
        ],
    }


def chain_from_dict(doc):
    chain = Chain(
        [Curve(c["nodes"], c.get("winding", 0)) for c in doc["curves"]]
    )
    return float(doc.get("time", 0.0)), chain


def save_snapshot(path, time, chain):
    with open(path, "w") as fh:
        json.dump(chain_to_dict(time, chain), fh)


def load_snapshot(path):
    with open(path) as fh:
        return chain_from_dict(json.load(fh))

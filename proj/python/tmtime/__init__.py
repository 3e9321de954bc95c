"""One-tape NTM running-time analysis.

Thin wrapper over the native ``_tmtime`` module. Reports come back as plain
dicts with the same shape as the CLI's ``--json`` output; big numbers are
turned into Python ints.
"""

import json
import math

from ._tmtime import (
    Error,
    Machine,
    compose,
    decode,
    encode,
    encode_composition,
)
from . import _tmtime

__all__ = [
    "Error",
    "Machine",
    "bounds",
    "check_input",
    "compose",
    "computations",
    "crossing_budget",
    "crossing_sequences",
    "decide",
    "decode",
    "encode",
    "encode_composition",
    "find_violation",
    "gadget",
    "part_time",
    "verify_witness",
]


def computations(machine, input, max_steps=1000):
    """Every computation on `input`, cut off at max_steps."""
    return json.loads(_tmtime._computations(machine, input, max_steps))


def crossing_sequences(machine, input, choices):
    """{boundary: [state names]} for the given rule choices."""
    raw = json.loads(_tmtime._crossing_sequences(machine, input, list(choices)))
    return {int(b): seq for b, seq in raw.items()}


def check_input(machine, input, C, D):
    """A violation dict if some computation on `input` exceeds C|w|+D, else None."""
    return json.loads(_tmtime._check_input(machine, input, C, D))


def part_time(machine, part, crs):
    """t_M(part, crs): an int, -1 when no computation exists, or math.inf."""
    t = _tmtime._part_time(machine, part, crs)
    return math.inf if t == "inf" else int(t)


def _ints(d, keys):
    for k in keys:
        if isinstance(d.get(k), str):
            d[k] = int(d[k])
    return d


def bounds(q, C, D, ell=None, r=None):
    return _ints(json.loads(_tmtime._bounds(q, C, D, ell, r)), ("ell", "r"))


def crossing_budget(q, C):
    return int(_tmtime._crossing_budget(q, C))


def decide(machine, C, D, ell=None, r=None, jobs=1, max_nodes=200_000_000, expand_cap=1_000_000):
    report = json.loads(_tmtime._decide(machine, C, D, ell, r, jobs, max_nodes, expand_cap))
    return _ints(report, ("ell", "r"))


def find_violation(machine, C, D, strategy="exhaustive", budget=1_000_000, seed=0, ell=None, r=None):
    return json.loads(_tmtime._find_violation(machine, C, D, strategy, budget, seed, ell, r))


def verify_witness(machine, C, D, witness):
    """Empty string when the witness replays to a genuine violation."""
    return _tmtime._verify_witness(machine, C, D, json.dumps(witness))


def gadget(machine, input, C, D, K=1, k=1, mode="reject"):
    """(gadget machine, manifest dict)."""
    m, manifest = _tmtime._gadget(machine, input, C, D, K, k, mode)
    return m, _ints(json.loads(manifest), ("c", "T", "phase2_step_bound", "lattice"))

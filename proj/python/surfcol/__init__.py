"""Edge-width, E1-acyclic list colouring and discharging on embedded graphs.

Graphs, lists and colourings are plain dicts in the same JSON layout the
command-line tool reads and writes.
"""

import json as _json

from . import _surfcol
from ._surfcol import InvalidInput, PreconditionError, ReductionFailure, SurfcolError

__all__ = [
    "InvalidInput",
    "PreconditionError",
    "ReductionFailure",
    "SurfcolError",
    "check",
    "discharge",
    "edge_width",
    "find_config",
    "generate",
    "genus",
    "rho",
    "run_cli",
    "solve",
]


def _dump(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def _keyed(mapping):
    # JSON object keys are strings; accept int-keyed dicts too.
    return {str(k): v for k, v in mapping.items()}


def edge_width(graph, t=2, budget=None, fast=False):
    return _json.loads(_surfcol.edge_width(_dump(graph), t, budget, fast))


def solve(graph, lists, exact=False, epsilon="1/43", waive_ew_check=True):
    out = _json.loads(_surfcol.solve(_dump(graph), _dump(_keyed(lists)), exact, epsilon, waive_ew_check))
    return out


def check(graph, colouring, lists=None):
    lists_text = None if lists is None else _dump(_keyed(lists))
    return _json.loads(_surfcol.check(_dump(graph), _dump(_keyed(colouring)), lists_text))


def discharge(graph, epsilon="1/43", log_transfers=False):
    return _json.loads(_surfcol.discharge(_dump(graph), epsilon, log_transfers))


def find_config(graph):
    return _json.loads(_surfcol.find_config(_dump(graph)))


def generate(family, m=3, n=3, seed=0, e1="all", e1_p=0.5, e1_seed=0, palette=30, k=9, list_seed=0):
    """Returns {"graph": ..., "lists": ...}."""
    return _json.loads(_surfcol.generate(family, m, n, seed, e1, e1_p, e1_seed, palette, k, list_seed))


def genus(graph):
    return _json.loads(_surfcol.genus(_dump(graph)))


def rho(genus, epsilon="1/43"):
    """12(g - 2)/epsilon as a "p/q" string."""
    return _surfcol.rho(genus, epsilon)


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit code, output text)."""
    return _surfcol.run_cli(list(args))

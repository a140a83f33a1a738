"""Effect-theory checks on Euclidean Jordan algebras.

The native module does the arithmetic; this package adds dict-based
constructors and decodes JSON reports.
"""

import json

from ._ejakit import (
    Algebra,
    Element,
    InternalError,
    ParseError,
    StructuralError,
    Tolerances,
    ValidationError,
    ceiling,
    check_ids,
    complement,
    diagonalize,
    eigenvalues,
    floor,
    inner_product,
    is_atomic,
    is_effect,
    is_sharp,
    jordan_product,
    order_norm,
    peel,
    quadratic_rep,
    random_atom,
    random_effect,
    random_sharp,
    tensor,
    transition_probability,
)
from . import _ejakit

__all__ = [
    "Algebra",
    "Element",
    "InternalError",
    "ParseError",
    "StructuralError",
    "Tolerances",
    "ValidationError",
    "algebra",
    "ceiling",
    "check_ids",
    "complement",
    "diagonalize",
    "eigenvalues",
    "floor",
    "inner_product",
    "is_atomic",
    "is_effect",
    "is_sharp",
    "jordan_product",
    "order_norm",
    "peel",
    "quadratic_rep",
    "random_atom",
    "random_effect",
    "random_sharp",
    "run_check",
    "scan",
    "tensor",
    "transition_probability",
]


def algebra(*factors):
    """Builds an Algebra from factor dicts, e.g. algebra({"kind": "complex", "n": 2})."""
    return Algebra(json.dumps({"factors": list(factors)}))


def run_check(check_id, alg, seed=1, trials=50, tol=None):
    """Runs one check and returns its report as a dict."""
    tol = tol if tol is not None else Tolerances()
    return json.loads(_ejakit.run_check_json(check_id, alg, seed, trials, tol))


def scan(max_rank=8, max_power=4, max_spin_dim=10):
    """Dimension-counting scan as a dict with "entries" and "mixed"."""
    return json.loads(_ejakit.scan_json(max_rank, max_power, max_spin_dim))

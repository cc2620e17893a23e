# Author: RD7
# Purpose: Built-in left-invariant QKT models and the registry they are looked up in
# Created: 2025-10-14

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from qktlab.services.errors import UnknownModelError
from qktlab.services.lie_model import MetricLieAlgebra
from qktlab.services.quaternionic import QuaternionicTriple, standard_triple

__all__ = ["Model", "builtin", "builtin_names", "register", "brackets_from_entries"]


@dataclass(frozen=True)
class Model:
    name: str
    L: MetricLieAlgebra
    Q: QuaternionicTriple
    description: str = ""
    expect: str | None = None


ModelFactory = Callable[[], Model]
_BUILTINS: dict[str, ModelFactory] = {}


def register(name: str) -> Callable[[ModelFactory], ModelFactory]:
    """Decorator used to register a builtin model factory."""

    def decorator(func: ModelFactory) -> ModelFactory:
        _BUILTINS[name] = func
        return func

    return decorator


# --------------------------------------------------------------------------- #
# Public API
# --------------------------------------------------------------------------- #
def builtin(name: str) -> Model:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise UnknownModelError(f"unknown model {name!r}, builtins are {', '.join(builtin_names())}") from None
    return factory()


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def brackets_from_entries(dim: int, entries: list[tuple[int, int, int, float]]) -> np.ndarray:
    """Dense brackets from (i, j, k, value) meaning [e_i, e_j] has e_k component value; [e_j, e_i] is implied."""
    c = np.zeros((dim, dim, dim))
    for i, j, k, value in entries:
        c[i, j, k] += value
        c[j, i, k] -= value
    return c


# Flat torus T^8 with the standard hyperkaehler structure
@register("flat8")
def _flat8() -> Model:
    return Model(
        "flat8",
        MetricLieAlgebra(np.zeros((8, 8, 8))),
        standard_triple(2),
        "abelian R^8, flat hyperkaehler torus",
        "hyperkahler",
    )


# S^1 x S^3 x T^4: u(1) + su(2) + R^4 with [e1, e2] = 2 e3 cyclic
@register("hopf8")
def _hopf8() -> Model:
    entries = [(1, 2, 3, 2.0), (2, 3, 1, 2.0), (3, 1, 2, 2.0)]
    return Model(
        "hopf8",
        MetricLieAlgebra(brackets_from_entries(8, entries)),
        standard_triple(2),
        "u(1) + su(2) + R^4, non-balanced HKT",
        "hkt",
    )


# Solvable model of real hyperbolic space, [e0, ei] = ei
@register("solv8")
def _solv8() -> Model:
    entries = [(0, i, i, 1.0) for i in range(1, 8)]
    return Model(
        "solv8",
        MetricLieAlgebra(brackets_from_entries(8, entries)),
        standard_triple(2),
        "solvable [e0, ei] = ei, conformally flat QKT, not HKT",
        "qkt",
    )

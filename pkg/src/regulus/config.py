"""Instance caps and search budgets.

Every exhaustive search in the package is bounded. Exceeding a bound raises
:class:`CapExceeded` or :class:`BudgetExceeded`; nothing is silently truncated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


class RegulusError(Exception):
    """Base class for all package errors."""


class StructureError(RegulusError, ValueError):
    """Tables have the wrong shape or contain out-of-range indices."""


class CapExceeded(RegulusError):
    """A construction would exceed the configured instance cap."""


class BudgetExceeded(RegulusError):
    """A search would visit more candidates than the configured budget."""


@dataclass(frozen=True)
class Limits:
    ring_order: int = 4096
    module_order: int = 256
    lattice_order: int = 64
    hom_budget: int = 2**20
    power_cap: int = 3

    @classmethod
    def from_env(cls) -> "Limits":
        """Defaults, overridden by REGULUS_CAP (ring order), REGULUS_MODULE_CAP and REGULUS_LATTICE_CAP."""
        return cls(ring_order=_env_int("REGULUS_CAP", cls.ring_order),
                   module_order=_env_int("REGULUS_MODULE_CAP", cls.module_order),
                   lattice_order=_env_int("REGULUS_LATTICE_CAP", cls.lattice_order))


def _env_int(var: str, default: int) -> int:
    raw = os.environ.get(var)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise RegulusError(f"{var} must be an integer, got {raw!r}") from None
    if value < 1:
        raise RegulusError(f"{var} must be positive")
    return value


def limits() -> Limits:
    # read on every call so the env var can change between CLI invocations in one process
    return Limits.from_env()


def check_ring_order(order: int, what: str = "ring") -> None:
    cap = limits().ring_order
    if order > cap:
        raise CapExceeded(f"{what} of order {order} exceeds the ring-order cap {cap}")


def check_module_order(order: int, what: str = "module") -> None:
    cap = limits().module_order
    if order > cap:
        raise CapExceeded(f"{what} of order {order} exceeds the module-order cap {cap}")


def check_lattice_order(order: int, what: str = "module") -> None:
    """Full submodule lattices are enumerated only below this (smaller) cap."""
    cap = limits().lattice_order
    if order > cap:
        raise CapExceeded(f"submodule lattice of a {what} of order {order} exceeds the lattice cap {cap}")

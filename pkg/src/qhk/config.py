"""Size gates shared by every module.

All bounds fail loudly with :class:`ResourceLimitError`; nothing is ever
silently truncated.  ``QHK_MAX_ORDER`` in the environment overrides the
quandle-order gate for chain homology.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


class ResourceLimitError(RuntimeError):
    """A configured size gate was exceeded."""

    def __init__(self, what: str, bound: int, reached: int):
        self.what = what
        self.bound = bound
        self.reached = reached
        super().__init__(f"{what}: reached {reached}, bound is {bound}")


@dataclass(frozen=True)
class Limits:
    max_homology_order: int = 20
    max_group_order: int = 10_000
    max_class_size: int = 10_000
    max_type: int = 1000
    max_bar_integral: int = 16
    max_bar_mod: int = 30
    max_alexander_order: int = 100_000

    @classmethod
    def from_env(cls) -> "Limits":
        limits = cls()
        raw = os.environ.get("QHK_MAX_ORDER")
        if raw:
            limits = replace(limits, max_homology_order=int(raw))
        return limits

    def check(self, name: str, value: int) -> None:
        bound = getattr(self, name)
        if value > bound:
            raise ResourceLimitError(name, bound, value)


def default_limits() -> Limits:
    return Limits.from_env()

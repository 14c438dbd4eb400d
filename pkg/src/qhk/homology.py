"""Rack and quandle chain complexes in degrees <= 3.

Bases are lexicographic: the chain ``(x, y)`` is index ``x*n + y`` and
``(x, y, z)`` is ``x*n*n + y*n + z``.  With these bases

    d2(x, y)    = (x) - (x*y)
    d3(x, y, z) = (x, z) - (x*y, z) - (x, y) + (x*z, y*z)

Quandle homology enlarges ``Im d3`` by the degenerate pairs ``(a, a)``
instead of building the quotient complex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .config import Limits, default_limits
from .linalg import (
    AbPresentation,
    FinGenAb,
    IntMatrix,
    cokernel,
    homology_of_pair,
    rank_mod_p,
    require_prime,
)
from .quandle import FiniteQuandle


def _gate(q: FiniteQuandle, limits: Limits | None) -> None:
    (limits or default_limits()).check("max_homology_order", q.order)


def _add(col: dict, key: int, v: int) -> None:
    s = col.get(key, 0) + v
    if s:
        col[key] = s
    else:
        col.pop(key, None)


def boundary2(q: FiniteQuandle) -> IntMatrix:
    n = q.order
    cols = []
    for x in range(n):
        row = q.table[x]
        for y in range(n):
            col: dict[int, int] = {}
            _add(col, x, 1)
            _add(col, row[y], -1)
            cols.append(col)
    return IntMatrix._trusted(n, n * n, cols)


def boundary3(q: FiniteQuandle) -> IntMatrix:
    n = q.order
    T = q.table
    cols = []
    for x in range(n):
        for y in range(n):
            xy = T[x][y]
            for z in range(n):
                col: dict[int, int] = {}
                _add(col, x * n + z, 1)
                _add(col, xy * n + z, -1)
                _add(col, x * n + y, -1)
                _add(col, T[x][z] * n + T[y][z], 1)
                cols.append(col)
    return IntMatrix._trusted(n * n, n ** 3, cols)


def degenerate_columns(q: FiniteQuandle) -> IntMatrix:
    n = q.order
    return IntMatrix._trusted(n * n, n, [{a * n + a: 1} for a in range(n)])


def quandle_boundary3(q: FiniteQuandle) -> IntMatrix:
    """``d3`` with the degenerate pairs appended as extra columns."""
    return boundary3(q).hstack(degenerate_columns(q))


def h1(q: FiniteQuandle) -> FinGenAb:
    n = q.order
    return cokernel(AbPresentation(n, boundary2(q)))


def h2_rack(q: FiniteQuandle, limits: Limits | None = None) -> FinGenAb:
    _gate(q, limits)
    return homology_of_pair(boundary2(q), boundary3(q))


def h2_quandle(q: FiniteQuandle, limits: Limits | None = None) -> FinGenAb:
    _gate(q, limits)
    return homology_of_pair(boundary2(q), quandle_boundary3(q))


def h2_quandle_cohomology_dim(q: FiniteQuandle, ell: int, limits: Limits | None = None) -> int:
    """``dim H^2_Q(X; F_ell)`` from the transposed boundaries mod ``ell``.

    Cochains vanishing on ``(a, a)`` are the coordinates off the diagonal;
    cocycles are those killed by ``d3^T`` restricted to them.
    """
    require_prime(ell)
    _gate(q, limits)
    n = q.order
    keep = [x * n + y for x in range(n) for y in range(n) if x != y]
    d3 = boundary3(q).select_rows(keep)
    cocycles = len(keep) - rank_mod_p(d3, ell)
    coboundaries = rank_mod_p(boundary2(q), ell)
    return cocycles - coboundaries


# ---------------------------------------------------------------------------
# chains and cocycles


@dataclass(frozen=True)
class Chain2:
    quandle: FiniteQuandle
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.quandle.order ** 2:
            raise ValueError("a 2-chain needs one coefficient per ordered pair")

    @classmethod
    def from_terms(cls, q: FiniteQuandle, terms: dict[tuple[int, int], int]) -> "Chain2":
        coeffs = [0] * (q.order ** 2)
        for (x, y), c in terms.items():
            coeffs[x * q.order + y] += c
        return cls(q, tuple(coeffs))

    def terms(self) -> dict[tuple[int, int], int]:
        n = self.quandle.order
        return {(i // n, i % n): c for i, c in enumerate(self.coefficients) if c}

    def __add__(self, other: "Chain2") -> "Chain2":
        if other.quandle != self.quandle:
            raise ValueError("chains over different quandles")
        return Chain2(self.quandle, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def boundary(self) -> tuple[int, ...]:
        out = boundary2(self.quandle).apply(dict(enumerate(self.coefficients)))
        return tuple(out.get(i, 0) for i in range(self.quandle.order))

    def is_cycle(self) -> bool:
        return not any(self.boundary())


def word_to_cycle(q: FiniteQuandle, x0: int, word: Sequence[tuple[int, int]]) -> Chain2:
    """Rack 2-cycle attached to a word ``e_{x_1}^{s_1} ... e_{x_n}^{s_n}`` fixing ``x0``.

    The ``j``-th letter contributes ``s_j ((p *^{(s_j - 1)/2} x_j), x_j)``
    where ``p`` is ``x0`` acted on by the first ``j - 1`` letters.
    """
    coeffs = [0] * (q.order ** 2)
    p = x0
    for x, sign in word:
        if sign == 1:
            coeffs[p * q.order + x] += 1
            p = q.table[p][x]
        elif sign == -1:
            p = q.inv_op(p, x)
            coeffs[p * q.order + x] -= 1
        else:
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
    if p != x0:
        raise ValueError(f"word sends {x0} to {p}; it must stabilize {x0}")
    return Chain2(q, tuple(coeffs))


@dataclass(frozen=True)
class Cocycle2:
    """A map ``X^2 -> target``; ``values[x][y]`` is a coordinate tuple of ``target``."""

    quandle: FiniteQuandle
    target: FinGenAb
    values: tuple[tuple[tuple[int, ...], ...], ...]

    def __call__(self, x: int, y: int) -> tuple[int, ...]:
        return self.values[x][y]


def is_quandle_2cocycle(q: FiniteQuandle, phi: Cocycle2) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustive check; the witness is ``(a,)`` for a nonzero diagonal value
    or ``(x, y, z)`` for a failing triple."""
    A = phi.target
    zero = A.zero()
    n = q.order
    T = q.table
    v = phi.values
    for a in range(n):
        if A.reduce(v[a][a]) != zero:
            return False, (a,)
    for x in range(n):
        for y in range(n):
            xy = T[x][y]
            for z in range(n):
                s = [p - r - u + w for p, r, u, w in
                     zip(v[x][z], v[xy][z], v[x][y], v[T[x][z]][T[y][z]])]
                if A.reduce(s) != zero:
                    return False, (x, y, z)
    return True, None

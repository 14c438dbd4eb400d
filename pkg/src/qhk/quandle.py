"""Finite quandles as Cayley tables, standard constructors, and the
permutation groups that come with them (Inn(X), stabilizers).

Elements are always the indices ``0..n-1``; constructors attach a
``labels`` tuple for display only.  Permutations are tuples ``p`` with
``p[i]`` the image of ``i``, multiplied left to right: ``(p*q)[i] = q[p[i]]``,
so that products of column permutations act on the right like the
quandle operation does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Sequence

from .config import Limits, ResourceLimitError, default_limits

Perm = tuple[int, ...]


class QuandleAxiomError(ValueError):
    """A table violates a quandle axiom; ``witness`` names the failing entries."""

    def __init__(self, axiom: str, witness: tuple[int, ...], message: str):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} fails at {witness}: {message}")


@dataclass(frozen=True)
class FiniteQuandle:
    order: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def column_perm(self, b: int) -> Perm:
        """The right translation ``a -> a * b``."""
        return tuple(row[b] for row in self.table)

    def column_perms(self) -> list[Perm]:
        return [self.column_perm(b) for b in range(self.order)]

    @cached_property
    def inverse_columns(self) -> tuple[Perm, ...]:
        cols = []
        for b in range(self.order):
            inv = [0] * self.order
            for a in range(self.order):
                inv[self.table[a][b]] = a
            cols.append(tuple(inv))
        return tuple(cols)

    def inv_op(self, a: int, b: int) -> int:
        """``a *^-1 b``."""
        return self.inverse_columns[b][a]

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.table]


def validate(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> FiniteQuandle:
    """Check the three quandle axioms and return the quandle.

    Raises :class:`QuandleAxiomError` with the first witness found (axiom
    "I": ``(a,)``, "II": ``(a, b)`` meaning ``a*b`` repeats in column ``b``,
    "III": ``(a, b, c)``).  Malformed shapes raise ``ValueError``.
    """
    n = len(table)
    if n < 1:
        raise ValueError("a quandle needs at least one element")
    rows = []
    for a, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"row {a} has length {len(row)}, expected {n}")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise ValueError(f"entry {v!r} in row {a} out of range 0..{n - 1}")
        rows.append(tuple(row))
    for a in range(n):
        if rows[a][a] != a:
            raise QuandleAxiomError("I", (a,), f"{a}*{a} = {rows[a][a]}")
    for b in range(n):
        seen: dict[int, int] = {}
        for a in range(n):
            v = rows[a][b]
            if v in seen:
                raise QuandleAxiomError("II", (a, b), f"{seen[v]}*{b} = {a}*{b} = {v}")
            seen[v] = a
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            ab = ra[b]
            for c in range(n):
                if rows[ab][c] != rows[ra[c]][rows[b][c]]:
                    raise QuandleAxiomError("III", (a, b, c), "(a*b)*c != (a*c)*(b*c)")
    return FiniteQuandle(n, tuple(rows), tuple(labels) if labels is not None else None)


# ---------------------------------------------------------------------------
# constructors


def trivial_quandle(n: int) -> FiniteQuandle:
    return FiniteQuandle(n, tuple(tuple(a for _ in range(n)) for a in range(n)))


def dihedral(n: int) -> FiniteQuandle:
    """``R_n``: ``a * b = 2b - a (mod n)``."""
    if n < 1:
        raise ValueError("dihedral quandle needs n >= 1")
    return validate([[(2 * b - a) % n for b in range(n)] for a in range(n)])


def alexander(spec) -> FiniteQuandle:
    """Alexander quandle ``x * y = t x + (1 - t) y`` on the elements of an
    :class:`qhk.alexander.AlexanderSpec`, indexed in lexicographic
    coordinate order."""
    elems = spec.elements()
    index = {x: i for i, x in enumerate(elems)}
    tx = [spec.apply_t(x) for x in elems]
    sx = [spec.apply_one_minus_t(x) for x in elems]
    table = [[index[spec.add(tx[i], sx[j])] for j in range(len(elems))] for i in range(len(elems))]
    labels = tuple(",".join(map(str, x)) for x in elems)
    return validate(table, labels)


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        out = lcm(out, length)
    return out


def cycle_string(p: Perm) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def symmetric_generators(n: int) -> list[Perm]:
    """Transposition ``(0 1)`` and the ``n``-cycle; generate ``S_n``."""
    if n < 2:
        return [tuple(range(n))]
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    cycle = tuple((i + 1) % n for i in range(n))
    return [tuple(swap), cycle]


def transposition(n: int, i: int = 0, j: int = 1) -> Perm:
    p = list(range(n))
    p[i], p[j] = j, i
    return tuple(p)


def conjugation_class(perm_generators: Sequence[Perm], seed: Perm,
                      limits: Limits | None = None) -> FiniteQuandle:
    """Conjugacy class of ``seed`` in the group generated by ``perm_generators``
    as a quandle under ``g * h = h^-1 g h``."""
    limits = limits or default_limits()
    seed = tuple(seed)
    degree = len(seed)
    gens = [tuple(g) for g in perm_generators]
    if any(len(g) != degree for g in gens):
        raise ValueError("generators and seed must share a degree")
    inv = [perm_inv(g) for g in gens]
    found = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for x in frontier:
            for g, gi in zip(gens, inv):
                y = perm_mul(perm_mul(gi, x), g)
                if y not in found:
                    found.add(y)
                    if len(found) > limits.max_class_size:
                        raise ResourceLimitError("max_class_size", limits.max_class_size, len(found))
                    nxt.append(y)
        frontier = nxt
    elems = sorted(found)
    index = {x: i for i, x in enumerate(elems)}
    inverses = [perm_inv(h) for h in elems]
    table = [[index[perm_mul(perm_mul(inverses[j], g), h)] for j, h in enumerate(elems)]
             for g in elems]
    return validate(table, [cycle_string(x) for x in elems])


def transposition_quandle(n: int) -> FiniteQuandle:
    """Transpositions of ``S_n`` under conjugation; order ``n(n-1)/2``."""
    if n < 2:
        raise ValueError("need n >= 2")
    return conjugation_class(symmetric_generators(n), transposition(n))


# ---------------------------------------------------------------------------
# structure


def orbits(q: FiniteQuandle) -> list[list[int]]:
    """Orbits of the right Inn(X)-action, each sorted, ordered by least element."""
    parent = list(range(q.order))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(q.order):
        for b in range(q.order):
            ra, rb = find(a), find(q.table[a][b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for x in range(q.order):
        groups.setdefault(find(x), []).append(x)
    return [groups[k] for k in sorted(groups)]


def is_connected(q: FiniteQuandle) -> bool:
    return len(orbits(q)) == 1


def is_quasigroup(q: FiniteQuandle) -> bool:
    return all(len(set(row)) == q.order for row in q.table)


def type_of(q: FiniteQuandle) -> int:
    out = 1
    for p in q.column_perms():
        out = lcm(out, perm_order(p))
    return out


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def index(self, p: Perm) -> int:
        return self._index[p]

    def exponent(self) -> int:
        out = 1
        for p in self.elements:
            out = lcm(out, perm_order(p))
        return out


def perm_group(generators: Sequence[Perm], degree: int, limits: Limits | None = None) -> PermGroup:
    """Breadth-first closure; element 0 is the identity, then BFS order."""
    limits = limits or default_limits()
    ident = tuple(range(degree))
    gens = tuple(dict.fromkeys(tuple(g) for g in generators))
    seen = {ident: 0}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = perm_mul(x, g)
                if y not in seen:
                    seen[y] = len(order)
                    order.append(y)
                    if len(order) > limits.max_group_order:
                        raise ResourceLimitError("max_group_order", limits.max_group_order, len(order))
                    nxt.append(y)
        frontier = nxt
    return PermGroup(degree, gens, tuple(order), 0)


def inn_group(q: FiniteQuandle, limits: Limits | None = None) -> PermGroup:
    return perm_group(q.column_perms(), q.order, limits)


def stabilizer(group: PermGroup, x0: int) -> PermGroup:
    if not 0 <= x0 < group.degree:
        raise ValueError(f"point {x0} out of range")
    elems = tuple(p for p in group.elements if p[x0] == x0)
    gens = tuple(p for p in group.generators if p[x0] == x0)
    return PermGroup(group.degree, gens, elems, elems.index(tuple(range(group.degree))))


def base_point(q: FiniteQuandle, orbit: int = 0) -> int:
    """Least element of the chosen orbit; the default ``x0``."""
    return orbits(q)[orbit][0]

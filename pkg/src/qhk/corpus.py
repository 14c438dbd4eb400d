"""Named families of small quandles and Alexander specs.

Every generator yields entries in a fixed parameter order so tables built
from them are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from sympy import primerange

from .alexander import AlexanderSpec, connected_specs, phi_family, takasaki
from .quandle import (
    FiniteQuandle,
    alexander,
    conjugation_class,
    dihedral,
    transposition_quandle,
    trivial_quandle,
)

FAMILIES = ("trivial", "dihedral", "takasaki", "phi", "alexander", "conj-transpositions")


@dataclass(frozen=True)
class Entry:
    family: str
    params: dict = field(hash=False)
    quandle: FiniteQuandle = field(repr=False)
    spec: AlexanderSpec | None = None

    @property
    def name(self) -> str:
        inner = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.family}({inner})"


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_fmt(x) for x in v) + "]"
    return str(v)


def abelian_groups(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists ``d_1 | d_2 | ...`` with ``d_1 > 1`` and product ``n``."""
    if n == 1:
        return [(1,)]
    out = []

    def rec(rest: int, prefix: tuple[int, ...]):
        if rest == 1:
            out.append(prefix)
            return
        lo = prefix[-1] if prefix else 2
        for d in range(lo, rest + 1):
            if rest % d == 0 and (not prefix or d % prefix[-1] == 0):
                # the remaining factors are multiples of d
                if _feasible(rest // d, d):
                    rec(rest // d, prefix + (d,))

    rec(n, ())
    return sorted(out, key=lambda f: (len(f), f), reverse=True)


def _feasible(rest: int, d: int) -> bool:
    return rest == 1 or (rest % d == 0)


def _spec_key(spec: AlexanderSpec):
    return spec.order, spec.factors, spec.t


# candidate counts above this are handled by a fixed list instead
ENUMERATION_LIMIT = 5000


def _curated_large() -> list[AlexanderSpec]:
    f2 = (2, 2, 2, 2)
    companions = {
        "x^4+x+1": ((0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)),
        "x^4+x^3+1": ((0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 1)),
        "(x^2+x+1)^2": ((0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 1), (0, 0, 1, 0)),
        "F4+F4": ((0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 1)),
        "F4+F4'": ((0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1), (0, 0, 1, 0)),
    }
    out = [AlexanderSpec(f2, t) for t in companions.values()]
    out.append(phi_family(2, 5))
    return out


def _candidates(factors: tuple[int, ...]) -> int:
    total = 1
    for di in factors:
        for dj in factors:
            total *= gcd(di, dj)
    return total


def alexander_corpus(max_order: int = 16) -> list[AlexanderSpec]:
    """Connected Alexander specs of order ``<= max_order``.

    Groups with at most ``ENUMERATION_LIMIT`` candidate matrices are
    enumerated completely; ``(Z/2)^4`` contributes a fixed list.
    """
    specs: set[AlexanderSpec] = set()
    for n in range(2, max_order + 1):
        for factors in abelian_groups(n):
            if _candidates(factors) <= ENUMERATION_LIMIT:
                specs.update(connected_specs(factors))
            elif factors == (2, 2, 2, 2):
                specs.update(s for s in _curated_large() if s.one_minus_t_invertible)
    return sorted(specs, key=_spec_key)


def _alternating4() -> FiniteQuandle:
    gens = [(1, 2, 0, 3), (0, 2, 3, 1)]
    return conjugation_class(gens, (1, 2, 0, 3))


def family(name: str, max_order: int) -> Iterator[Entry]:
    if name == "trivial":
        for n in range(1, max_order + 1):
            yield Entry(name, {"n": n}, trivial_quandle(n))
    elif name == "dihedral":
        for n in range(3, max_order + 1):
            yield Entry(name, {"n": n}, dihedral(n))
    elif name == "takasaki":
        for n in range(2, max_order + 1):
            for factors in sorted(abelian_groups(n)):
                spec = takasaki(factors)
                yield Entry(name, {"factors": list(factors)}, alexander(spec), spec)
    elif name == "phi":
        for p in primerange(2, max_order + 1):
            n = 2
            while p ** (n - 1) <= max_order:
                if gcd(n, p) == 1:
                    spec = phi_family(p, n)
                    yield Entry(name, {"p": p, "n": n}, alexander(spec), spec)
                n += 1
    elif name == "alexander":
        for spec in alexander_corpus(max_order):
            yield Entry(name, {"factors": list(spec.factors), "t": [list(r) for r in spec.t]},
                        alexander(spec), spec)
    elif name == "conj-transpositions":
        n = 2
        while n * (n - 1) // 2 <= max_order:
            yield Entry(name, {"n": n}, transposition_quandle(n))
            n += 1
    else:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def quandle_corpus(max_order: int = 10) -> list[Entry]:
    """A mixed set of small quandles for structural checks."""
    out: list[Entry] = []
    for name in FAMILIES:
        for e in family(name, max_order):
            if name == "trivial" and e.quandle.order > 4:
                continue
            out.append(e)
    if max_order >= 4:
        out.append(Entry("conj-3-cycles-A4", {}, _alternating4()))
    return out


__all__ = [
    "Entry",
    "FAMILIES",
    "abelian_groups",
    "alexander_corpus",
    "family",
    "quandle_corpus",
]

"""Alexander quandles ``x * y = t x + (1 - t) y`` on finite abelian groups.

Closed-form models of the second quandle homology (the tensor quotient
``Q_X`` and the exterior quotient ``coker(1 - T)`` on ``X ^ X``), the
Clauwens model of the associated group, the universal 2-cocycle, the
induced group 2-cocycle on ``Inn(X) = Z/Type x| X``, and the verifiers
that compare the closed forms with the chain-level computation.

The group ``X`` is ``Z/d_1 + ... + Z/d_k`` with standard generators
``e_i``; ``t`` is an integer matrix whose column ``j`` is ``t e_j``.
Elements are coordinate tuples reduced modulo the factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Sequence

from .config import Limits, ResourceLimitError, default_limits
from .groups import CentralExtension, FiniteGroupTable, GroupCocycle2, delta_section
from .homology import Cocycle2
from .quandle import alexander as alexander_quandle, inn_group, perm_mul
from .linalg import (
    AbPresentation,
    CokernelMap,
    FinGenAb,
    IntMatrix,
    cokernel_map,
    require_prime,
)

Elem = tuple[int, ...]


class SpecError(ValueError):
    """An Alexander spec is malformed or ``t`` is not an automorphism."""


@dataclass(frozen=True)
class AlexanderSpec:
    factors: tuple[int, ...]
    t: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        facs = tuple(int(d) for d in self.factors)
        k = len(facs)
        if k == 0:
            raise SpecError("need at least one factor")
        if any(d < 1 for d in facs):
            raise SpecError(f"factors must be positive, got {facs}")
        rows = tuple(tuple(int(v) for v in row) for row in self.t)
        if len(rows) != k or any(len(r) != k for r in rows):
            raise SpecError(f"t must be {k}x{k}")
        for j in range(k):
            for i in range(k):
                if (rows[i][j] * facs[j]) % facs[i]:
                    raise SpecError(
                        f"t does not respect the presentation: {facs[j]} * t[{i}][{j}] "
                        f"= {rows[i][j] * facs[j]} is not 0 mod {facs[i]}")
        rows = tuple(tuple(v % facs[i] for v in row) for i, row in enumerate(rows))
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "t", rows)
        n = 1
        for d in facs:
            n *= d
        limit = default_limits().max_alexander_order
        if n > limit:
            raise ResourceLimitError("max_alexander_order", limit, n)
        if not self._bijective(self.t):
            raise SpecError("t is not an automorphism of X")

    # -- group arithmetic -------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    def elements(self) -> list[Elem]:
        return list(product(*(range(d) for d in self.factors)))

    def index(self, x: Elem) -> int:
        i = 0
        for v, d in zip(x, self.factors):
            i = i * d + v
        return i

    def reduce(self, x: Sequence[int]) -> Elem:
        return tuple(v % d for v, d in zip(x, self.factors))

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def sub(self, x: Elem, y: Elem) -> Elem:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x: Elem) -> Elem:
        return tuple(-a % d for a, d in zip(x, self.factors))

    def zero(self) -> Elem:
        return (0,) * self.rank

    def basis(self, i: int) -> Elem:
        return self.reduce([int(j == i) for j in range(self.rank)])

    def apply(self, M: Sequence[Sequence[int]], x: Elem) -> Elem:
        return tuple(sum(M[i][j] * x[j] for j in range(self.rank)) % self.factors[i]
                     for i in range(self.rank))

    def apply_t(self, x: Elem) -> Elem:
        return self.apply(self.t, x)

    def apply_one_minus_t(self, x: Elem) -> Elem:
        return self.sub(x, self.apply_t(x))

    def matmul(self, A, B) -> tuple[tuple[int, ...], ...]:
        k = self.rank
        return tuple(tuple(sum(A[i][m] * B[m][j] for m in range(k)) % self.factors[i]
                           for j in range(k)) for i in range(k))

    @cached_property
    def identity_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(i == j) % self.factors[i] for j in range(self.rank))
                     for i in range(self.rank))

    @cached_property
    def one_minus_t(self) -> tuple[tuple[int, ...], ...]:
        I = self.identity_matrix
        return tuple(tuple((I[i][j] - self.t[i][j]) % self.factors[i] for j in range(self.rank))
                     for i in range(self.rank))

    def _bijective(self, M) -> bool:
        for x in product(*(range(d) for d in self.factors)):
            if any(x) and not any(self.apply(M, x)):
                return False
        return True

    @cached_property
    def one_minus_t_invertible(self) -> bool:
        return self._bijective(self.one_minus_t)

    def type_with_limit(self, bound: int) -> int:
        M = self.t
        for n in range(1, bound + 1):
            if M == self.identity_matrix:
                return n
            M = self.matmul(M, self.t)
        raise ResourceLimitError("max_type", bound, bound + 1)

    @cached_property
    def type(self) -> int:
        """Multiplicative order of ``t``."""
        return self.type_with_limit(default_limits().max_type)

    @cached_property
    def _t_powers(self) -> tuple:
        powers = [self.identity_matrix]
        for _ in range(self.type - 1):
            powers.append(self.matmul(powers[-1], self.t))
        return tuple(powers)

    def t_power_matrix(self, k: int):
        return self._t_powers[k % self.type]

    def apply_t_power(self, k: int, x: Elem) -> Elem:
        return self.apply(self.t_power_matrix(k), x)

    def det_mod(self, p: int) -> int:
        from sympy import Matrix
        return int(Matrix(self.t).det()) % p

    def to_json(self) -> dict:
        return {"schema": 1, "factors": list(self.factors), "t": [list(r) for r in self.t]}


@dataclass(frozen=True)
class SpecInfo:
    spec: AlexanderSpec
    order: int
    type: int
    one_minus_t_invertible: bool


def validate_spec(spec: AlexanderSpec | dict, limits: Limits | None = None) -> SpecInfo:
    """Check a spec (or its JSON dict) and return the derived data."""
    limits = limits or default_limits()
    if isinstance(spec, dict):
        try:
            spec = AlexanderSpec(tuple(spec["factors"]), tuple(tuple(r) for r in spec["t"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed spec: {exc}") from exc
    return SpecInfo(spec, spec.order, spec.type_with_limit(limits.max_type),
                    spec.one_minus_t_invertible)


def companion_phi(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Companion matrix over ``F_p`` of ``1 + t + ... + t^(n-1)`` in the basis
    ``1, t, ..., t^(n-2)``."""
    k = n - 1
    M = [[0] * k for _ in range(k)]
    for j in range(k - 1):
        M[j + 1][j] = 1
    for i in range(k):
        M[i][k - 1] = (-1) % p
    return tuple(tuple(r) for r in M)


def phi_family(p: int, n: int) -> AlexanderSpec:
    """``F_p[t] / (Phi_n)`` with ``Phi_n = 1 + t + ... + t^(n-1)``."""
    require_prime(p)
    if n < 2:
        raise SpecError("phi family needs n >= 2")
    if gcd(n, p) != 1:
        raise SpecError(f"gcd(n, p) = gcd({n}, {p}) != 1")
    return AlexanderSpec((p,) * (n - 1), companion_phi(p, n))


def takasaki(factors: Sequence[int]) -> AlexanderSpec:
    k = len(factors)
    return AlexanderSpec(tuple(factors), tuple(tuple(-int(i == j) for j in range(k)) for i in range(k)))


# ---------------------------------------------------------------------------
# closed-form models


@dataclass(frozen=True)
class QxModel:
    """``Q_X = X (x) X / {x (x) y - y (x) t x}`` with reduction of pure tensors."""

    spec: AlexanderSpec
    cokernel: CokernelMap = field(repr=False)

    @property
    def group(self) -> FinGenAb:
        return self.cokernel.group

    def tensor_class(self, a: Elem, b: Elem) -> tuple[int, ...]:
        k = self.spec.rank
        vec = {}
        for i in range(k):
            if a[i]:
                for j in range(k):
                    if b[j]:
                        vec[i * k + j] = vec.get(i * k + j, 0) + a[i] * b[j]
        return self.cokernel.reduce(vec)


def _tensor_group_relations(factors) -> list[dict]:
    k = len(factors)
    return [{i * k + j: gcd(factors[i], factors[j])} for i in range(k) for j in range(k)]


@lru_cache(maxsize=None)
def qx_model(spec: AlexanderSpec) -> QxModel:
    k = spec.rank
    rels = _tensor_group_relations(spec.factors)
    for i in range(k):
        for j in range(k):
            col = {i * k + j: 1}
            for m in range(k):
                c = spec.t[m][i]
                if c:
                    key = j * k + m
                    col[key] = col.get(key, 0) - c
            rels.append(col)
    P = AbPresentation(k * k, IntMatrix(k * k, len(rels), rels))
    return QxModel(spec, cokernel_map(P))


def _wedge_index(k: int) -> dict[tuple[int, int], int]:
    return {(i, j): n for n, (i, j) in enumerate((i, j) for i in range(k) for j in range(i + 1, k))}


def _wedge_vector(idx, a: Sequence[int], b: Sequence[int]) -> dict[int, int]:
    vec: dict[int, int] = {}
    k = len(a)
    for i in range(k):
        if not a[i]:
            continue
        for j in range(k):
            if i == j or not b[j]:
                continue
            key, sign = (idx[i, j], 1) if i < j else (idx[j, i], -1)
            vec[key] = vec.get(key, 0) + sign * a[i] * b[j]
    return vec


@dataclass(frozen=True)
class ExteriorModel:
    """``X ^ X / {x ^ y - t x ^ t y}`` with reduction of pure wedges."""

    spec: AlexanderSpec
    cokernel: CokernelMap = field(repr=False)

    @property
    def group(self) -> FinGenAb:
        return self.cokernel.group

    def wedge_class(self, a: Elem, b: Elem) -> tuple[int, ...]:
        k = self.spec.rank
        return self.cokernel.reduce(_wedge_vector(_wedge_index(k), a, b))


@lru_cache(maxsize=None)
def exterior_presentation(spec: AlexanderSpec, with_T: bool = True) -> AbPresentation:
    k = spec.rank
    idx = _wedge_index(k)
    npairs = len(idx)
    rels = [{idx[i, j]: gcd(spec.factors[i], spec.factors[j])} for (i, j) in idx]
    if with_T:
        cols = [[spec.t[m][j] for m in range(k)] for j in range(k)]  # t e_j
        for (i, j), n in idx.items():
            col = _wedge_vector(idx, cols[i], cols[j])
            col = {key: -v for key, v in col.items()}
            col[n] = col.get(n, 0) + 1
            rels.append(col)
    return AbPresentation(npairs, IntMatrix(npairs, len(rels), rels))


def exterior_model(spec: AlexanderSpec, require_invertible: bool = True) -> ExteriorModel:
    if require_invertible and not spec.one_minus_t_invertible:
        raise SpecError("exterior model needs (1 - t) invertible")
    return _exterior_model(spec)


@lru_cache(maxsize=None)
def _exterior_model(spec: AlexanderSpec) -> ExteriorModel:
    return ExteriorModel(spec, cokernel_map(exterior_presentation(spec)))


def qx_to_exterior(spec: AlexanderSpec, coords: Sequence[int]) -> tuple[int, ...]:
    """Image of a ``Q_X`` class under ``u (x) v -> (1 - t) u ^ v``.

    This is the same map as ``u (x) v -> u ^ (1 - t^-1) v`` modulo
    ``1 - T``; it is the isomorphism ``Q_X -> coker(1 - T)`` when
    ``1 - t`` is invertible.
    """
    Q = qx_model(spec)
    E = exterior_model(spec, require_invertible=False)
    k = spec.rank
    idx = _wedge_index(k)
    S = spec.one_minus_t
    total: dict[int, int] = {}
    for key, c in Q.cokernel.lift(coords).items():
        i, j = divmod(key, k)
        u = [S[m][i] for m in range(k)]
        v = [int(m == j) for m in range(k)]
        for w, val in _wedge_vector(idx, u, v).items():
            total[w] = total.get(w, 0) + c * val
    return E.cokernel.reduce(total)


def universal_cocycle(spec: AlexanderSpec) -> Cocycle2:
    """``(x, y) -> [x (x) (1 - t) y]`` in ``Q_X``."""
    q = alexander_quandle(spec)
    Q = qx_model(spec)
    elems = spec.elements()
    sy = [spec.apply_one_minus_t(y) for y in elems]
    values = tuple(tuple(Q.tensor_class(x, s) for s in sy) for x in elems)
    return Cocycle2(q, Q.group, values)


# ---------------------------------------------------------------------------
# Clauwens model and Inn(X)


@dataclass(frozen=True)
class ClauwensElement:
    n: int
    a: Elem
    alpha: tuple[int, ...]


def clauwens_identity(spec: AlexanderSpec) -> ClauwensElement:
    return ClauwensElement(0, spec.zero(), qx_model(spec).group.zero())


def clauwens_mul(spec: AlexanderSpec, g: ClauwensElement, h: ClauwensElement) -> ClauwensElement:
    """``(n, a, A)(m, b, B) = (n + m, t^m a + b, [t^m a (x) b] + A + B)``."""
    Q = qx_model(spec)
    ta = spec.apply_t_power(h.n, g.a)
    alpha = Q.group.add(Q.group.add(Q.tensor_class(ta, h.a), g.alpha), h.alpha)
    return ClauwensElement(g.n + h.n, spec.add(ta, h.a), alpha)


def clauwens_inv(spec: AlexanderSpec, g: ClauwensElement) -> ClauwensElement:
    Q = qx_model(spec)
    u = spec.apply_t_power(-g.n, g.a)
    b = spec.neg(u)
    alpha = Q.group.sub(Q.tensor_class(u, u), g.alpha)
    return ClauwensElement(-g.n, b, alpha)


def clauwens_random(spec: AlexanderSpec, rng: random.Random, span: int = 6) -> ClauwensElement:
    Q = qx_model(spec).group
    a = tuple(rng.randrange(d) for d in spec.factors)
    alpha = Q.reduce([rng.randrange(d) for d in Q.invariant_factors] +
                     [rng.randrange(-span, span + 1) for _ in range(Q.free_rank)])
    return ClauwensElement(rng.randrange(-span, span + 1), a, alpha)


@dataclass(frozen=True)
class InnElement:
    k: int
    a: Elem


@dataclass(frozen=True)
class InnModel:
    """``Z/Type x| X`` with ``(k, a)(m, b) = (k + m, t^m a + b)``.

    ``(k, a)`` acts on the right by ``x -> t^k x + a``; ``table`` indexes
    elements as ``elements``.
    """

    spec: AlexanderSpec
    elements: tuple[InnElement, ...]
    table: FiniteGroupTable = field(repr=False)

    def mul(self, g: InnElement, h: InnElement) -> InnElement:
        s = self.spec
        return InnElement((g.k + h.k) % s.type, s.add(s.apply_t_power(h.k, g.a), h.a))

    def index(self, g: InnElement) -> int:
        return g.k * self.spec.order + self.spec.index(g.a)

    def permutation(self, g: InnElement) -> tuple[int, ...]:
        s = self.spec
        return tuple(s.index(s.add(s.apply_t_power(g.k, x), g.a)) for x in s.elements())


def _require_connected(spec: AlexanderSpec) -> None:
    if not spec.one_minus_t_invertible:
        raise SpecError("the Alexander quandle is not connected: 1 - t is not invertible")


@lru_cache(maxsize=None)
def inn_model(spec: AlexanderSpec) -> InnModel:
    _require_connected(spec)
    elems = tuple(InnElement(k, a) for k in range(spec.type) for a in spec.elements())
    n = spec.order
    T = spec.type
    mul = []
    for g in elems:
        row = []
        for h in elems:
            c = spec.add(spec.apply_t_power(h.k, g.a), h.a)
            row.append(((g.k + h.k) % T) * n + spec.index(c))
        mul.append(tuple(row))
    inv = [0] * len(elems)
    for i, row in enumerate(mul):
        inv[i] = row.index(0)
    table = FiniteGroupTable(len(elems), tuple(mul), tuple(inv), 0)
    return InnModel(spec, elems, table)


def check_inn_isomorphism(spec: AlexanderSpec, limits: Limits | None = None) -> tuple[bool, str]:
    """Compare the model with the permutation closure of the right translations."""
    model = inn_model(spec)
    group = inn_group(alexander_quandle(spec), limits)
    perms = [model.permutation(g) for g in model.elements]
    if len(set(perms)) != len(perms):
        return False, "model elements act by the same permutation"
    if set(perms) != set(group.elements):
        return False, f"model has {len(perms)} elements, inn_group has {group.order}; images differ"
    m = model.table.mul
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            if perm_mul(p, q) != perms[m[i][j]]:
                return False, f"product of {model.elements[i]} and {model.elements[j]} mismatched"
    return True, f"bijection onto inn_group of order {group.order}"


def t_of_phi(spec: AlexanderSpec) -> GroupCocycle2:
    """``((k, x), (m, y)) -> (1 - t) t^m x ^ y`` on ``Inn(X)`` in ``coker(1 - T)``."""
    model = inn_model(spec)
    E = exterior_model(spec)
    idx = _wedge_index(spec.rank)
    rows = []
    for g in model.elements:
        row = []
        for h in model.elements:
            u = spec.apply_one_minus_t(spec.apply_t_power(h.k, g.a))
            row.append(E.cokernel.reduce(_wedge_vector(idx, u, h.a)))
        rows.append(tuple(row))
    return GroupCocycle2(model.table, E.group, tuple(rows))


def clauwens_extension(spec: AlexanderSpec) -> CentralExtension:
    """Clauwens group over ``inn_model`` with section ``(k, a) -> (k, a, 0)``."""
    model = inn_model(spec)
    zero_a = spec.zero()
    zero_alpha = qx_model(spec).group.zero()

    def section(i: int) -> ClauwensElement:
        g = model.elements[i]
        return ClauwensElement(g.k, g.a, zero_alpha)

    return CentralExtension(
        mul=lambda g, h: clauwens_mul(spec, g, h),
        inv=lambda g: clauwens_inv(spec, g),
        quotient=model.table,
        section=section,
        in_kernel=lambda g: g.n % spec.type == 0 and g.a == zero_a,
    )


def clauwens_cocycle(spec: AlexanderSpec) -> GroupCocycle2:
    """``delta`` of the section ``(k, a, 0)`` with ``F`` the ``Q_X`` coordinate."""
    return delta_section(clauwens_extension(spec), lambda g: g.alpha, qx_model(spec).group)


# ---------------------------------------------------------------------------
# bracket identities


@dataclass(frozen=True)
class BracketReport:
    spec: AlexanderSpec
    exhaustive: bool
    checked: dict[str, int]
    failures: dict[str, tuple]

    @property
    def ok(self) -> bool:
        return not self.failures


def bracket_identities(spec: AlexanderSpec, max_exhaustive: int = 9, samples: int = 2000,
                       seed: int = 0) -> BracketReport:
    """Relations satisfied by ``[a, b]`` = class of ``a (x) b`` in ``Q_X``.

    Pairs and triples run over all of ``X`` when ``|X| <= max_exhaustive``
    and are drawn with ``random.Random(seed)`` otherwise.
    """
    _require_connected(spec)
    Q = qx_model(spec)
    G = Q.group
    zero = G.zero()
    elems = spec.elements()
    t, s, add = spec.apply_t, spec.apply_one_minus_t, spec.add
    exhaustive = spec.order <= max_exhaustive

    def br(a, b):
        return Q.tensor_class(a, b)

    def combo(*terms):
        out = zero
        for sign, v in terms:
            out = G.add(out, v) if sign > 0 else G.sub(out, v)
        return out

    if exhaustive:
        pairs = [(x, y) for x in elems for y in elems]
        triples = [(x, y, z) for x in elems for y in elems for z in elems]
    else:
        rng = random.Random(seed)
        pick = lambda: tuple(rng.randrange(d) for d in spec.factors)  # noqa: E731
        pairs = [(pick(), pick()) for _ in range(samples)]
        triples = [(pick(), pick(), pick()) for _ in range(samples)]

    checks = {
        "left_additive": lambda x, y, z: combo((1, br(add(x, y), z)), (-1, br(x, z)), (-1, br(y, z))),
        "right_additive": lambda x, y, z: combo((1, br(x, add(y, z))), (-1, br(x, y)), (-1, br(x, z))),
        "r2": lambda x, y, z: combo((1, br(x, z)), (-1, br(x, y)), (-1, br(add(t(x), y), z)),
                                    (1, br(add(t(x), z), add(t(y), s(z))))),
        "r4": lambda x, y, z: combo((1, br(y, z)), (-1, br(z, add(t(y), s(z))))),
    }
    pair_checks = {
        "twist": lambda x, y: combo((1, br(x, y)), (-1, br(y, t(x)))),
        "r3": lambda x, y: combo((1, br(t(x), t(y))), (-1, br(x, y))),
        "base_point": lambda x, y: combo((1, br(x, spec.zero())), (1, br(spec.zero(), y))),
    }
    checked: dict[str, int] = {}
    failures: dict[str, tuple] = {}
    for name, fn in pair_checks.items():
        checked[name] = len(pairs)
        for p in pairs:
            if fn(*p) != zero:
                failures[name] = p
                break
    for name, fn in checks.items():
        checked[name] = len(triples)
        for p in triples:
            if fn(*p) != zero:
                failures[name] = p
                break
    return BracketReport(spec, exhaustive, checked, failures)


# ---------------------------------------------------------------------------
# enumeration


def automorphisms(factors: Sequence[int], limit: int = 200_000) -> list[tuple[tuple[int, ...], ...]]:
    """All matrices ``t`` defining automorphisms of ``Z/d_1 + ... + Z/d_k``."""
    facs = tuple(factors)
    k = len(facs)
    # admissible values of entry (i, j): multiples of d_i / gcd(d_i, d_j)
    choices = []
    for i in range(k):
        for j in range(k):
            step = facs[i] // gcd(facs[i], facs[j])
            choices.append(range(0, facs[i], step))
    total = 1
    for c in choices:
        total *= len(c)
    if total > limit:
        raise ResourceLimitError("automorphism enumeration", limit, total)
    out = []
    for flat in product(*choices):
        t = tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k))
        try:
            AlexanderSpec(facs, t)
        except SpecError:
            continue
        out.append(t)
    return out


def connected_specs(factors: Sequence[int]) -> list[AlexanderSpec]:
    """Every spec on the given group with ``1 - t`` invertible, in lexicographic ``t`` order."""
    specs = (AlexanderSpec(tuple(factors), t) for t in automorphisms(factors))
    return [s for s in specs if s.one_minus_t_invertible]


def is_special(spec: AlexanderSpec, p: int) -> bool:
    """``det t == 1`` over ``F_p`` for a spec on ``(Z/p)^2``."""
    return spec.factors == (p, p) and spec.det_mod(p) == 1 % p


def order_p2_prediction(spec: AlexanderSpec) -> FinGenAb:
    """Expected ``H_2^Q`` of a connected spec of order ``p^2``."""
    if len(spec.factors) == 1:
        return FinGenAb(0, ())
    (p, q) = spec.factors
    if p != q:
        raise SpecError("not a group of order p^2")
    return FinGenAb(0, (p,)) if is_special(spec, p) else FinGenAb(0, ())


def phi_prediction(p: int, n: int) -> FinGenAb:
    return FinGenAb(0, (p,) * ((n - 1) // 2))

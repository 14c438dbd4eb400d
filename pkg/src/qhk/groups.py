"""Finite groups as multiplication tables, the unnormalized bar complex
with trivial coefficients, and relative cochains of a pair ``K <= G``.

Bar chains ``(g_1, ..., g_n)`` are indexed in mixed radix, ``g_1`` most
significant.  The boundary is

    d(g_1..g_n) = (g_2..g_n) + sum_i (-1)^i (.., g_i g_{i+1}, ..) + (-1)^n (g_1..g_{n-1})

(the last face carries the trivial action).  Relative cochains are
``Map(G^n, A) + Map(K^(n-1), A)`` with ``d(h, k) = (h o d, h|K - k o d)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Sequence

from .config import Limits, default_limits
from .linalg import FinGenAb, IntMatrix, homology_of_pair, rank_mod_p, require_prime
from .quandle import PermGroup, perm_inv, perm_mul


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroupTable:
    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    identity: int

    def __post_init__(self):
        n = self.order
        if len(self.mul) != n or any(len(r) != n for r in self.mul) or len(self.inv) != n:
            raise GroupTableError("table shape mismatch")
        e = self.identity
        for a in range(n):
            if self.mul[e][a] != a or self.mul[a][e] != a:
                raise GroupTableError(f"{e} is not an identity (fails at {a})")
            if self.mul[a][self.inv[a]] != e or self.mul[self.inv[a]][a] != e:
                raise GroupTableError(f"inv[{a}] is not an inverse")
        import numpy as np

        M = np.array(self.mul, dtype=np.int64).reshape(n, n)
        for a in range(n):
            # [b, c]: (ab)c against a(bc)
            bad = np.argwhere(M[M[a]] != M[a][M])
            if len(bad):
                b, c = bad[0]
                raise GroupTableError(f"not associative at {(a, int(b), int(c))}")

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, identity: Hashable) -> "FiniteGroupTable":
        index = {g: i for i, g in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupTableError("duplicate elements")
        table = []
        for g in elements:
            row = []
            for h in elements:
                gh = mul(g, h)
                if gh not in index:
                    raise GroupTableError(f"product {gh!r} not in the element list")
                row.append(index[gh])
            table.append(tuple(row))
        e = index[identity]
        inv = tuple(row.index(e) for row in table)
        return cls(len(elements), tuple(table), inv, e)

    @classmethod
    def from_perm_group(cls, g: PermGroup) -> "FiniteGroupTable":
        return cls.from_elements(list(g.elements), perm_mul, tuple(range(g.degree)))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroupTable":
        return cls.abelian([n])

    @classmethod
    def abelian(cls, factors: Sequence[int]) -> "FiniteGroupTable":
        factors = [d for d in factors if d != 1] or [1]
        elems = list(product(*(range(d) for d in factors)))
        return cls.from_elements(
            elems, lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, factors)),
            tuple(0 for _ in factors))

    def subgroup_indices(self, members: Sequence[int]) -> list[int]:
        """Validate closure and return the sorted index list."""
        s = sorted(set(members))
        ss = set(s)
        if self.identity not in ss:
            raise GroupTableError("subgroup must contain the identity")
        for a in s:
            if self.inv[a] not in ss:
                raise GroupTableError(f"subgroup not closed under inverse at {a}")
            for b in s:
                if self.mul[a][b] not in ss:
                    raise GroupTableError(f"subgroup not closed at {(a, b)}")
        return s

    def restrict(self, members: Sequence[int]) -> "FiniteGroupTable":
        s = self.subgroup_indices(members)
        where = {g: i for i, g in enumerate(s)}
        mul = tuple(tuple(where[self.mul[a][b]] for b in s) for a in s)
        return FiniteGroupTable(len(s), mul, tuple(where[self.inv[a]] for a in s), where[self.identity])

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in range(self.order) for b in range(a))


def subgroup_of_perm(group: PermGroup, sub: PermGroup) -> list[int]:
    return sorted(group.index(p) for p in sub.elements)


# ---------------------------------------------------------------------------
# bar complex


def bar_boundary_columns(G: FiniteGroupTable, n: int) -> list[dict]:
    """Columns of ``d_n : Z[G^n] -> Z[G^(n-1)]`` (trivial coefficients)."""
    N = G.order
    if n <= 1:
        # d_1(g) = () - () = 0
        return [{} for _ in range(N ** max(n, 0))]
    m = G.mul
    cols = []
    for g in product(range(N), repeat=n):
        col: dict[int, int] = {}

        def put(t, s):
            k = 0
            for v in t:
                k = k * N + v
            c = col.get(k, 0) + s
            if c:
                col[k] = c
            else:
                col.pop(k, None)

        put(g[1:], 1)
        for i in range(n - 1):
            put(g[:i] + (m[g[i]][g[i + 1]],) + g[i + 2:], -1 if i % 2 == 0 else 1)
        put(g[:-1], -1 if n % 2 else 1)
        cols.append(col)
    return cols


def bar_boundary(G: FiniteGroupTable, n: int) -> IntMatrix:
    N = G.order
    return IntMatrix(N ** max(n - 1, 0), N ** n, bar_boundary_columns(G, n))


def bar_h1_integral(G: FiniteGroupTable, limits: Limits | None = None) -> FinGenAb:
    (limits or default_limits()).check("max_bar_mod", G.order)
    return homology_of_pair(bar_boundary(G, 1), bar_boundary(G, 2))


def bar_h2_integral(G: FiniteGroupTable, limits: Limits | None = None) -> FinGenAb:
    """Schur multiplier ``H_2(G; Z)`` from the bar complex."""
    (limits or default_limits()).check("max_bar_integral", G.order)
    return homology_of_pair(bar_boundary(G, 2), bar_boundary(G, 3))


def _bar_rank(G: FiniteGroupTable, n: int, ell: int) -> int:
    if n <= 1:
        return 0
    N = G.order
    return rank_mod_p((N ** (n - 1), bar_boundary_columns(G, n)), ell)


def h_group_cohomology_dim(G: FiniteGroupTable, degree: int, ell: int,
                           limits: Limits | None = None) -> int:
    """``dim H^degree(G; F_ell)`` for ``degree`` in 0..2."""
    require_prime(ell)
    if degree not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    (limits or default_limits()).check("max_bar_mod", G.order)
    return G.order ** degree - _bar_rank(G, degree + 1, ell) - _bar_rank(G, degree, ell)


# ---------------------------------------------------------------------------
# relative cochains


@dataclass(frozen=True)
class RelCochainComplex:
    """Mapping-cone cochains of ``K <= G`` over ``F_ell`` in degrees 0..2."""

    G: FiniteGroupTable
    K: tuple[int, ...]
    ell: int

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        return self.G.order ** n + (len(self.K) ** (n - 1) if n >= 1 else 0)

    def differential_transpose_columns(self, n: int) -> list[dict]:
        """Columns of ``(d^n)^T``: one per basis point of ``G^(n+1)`` and ``K^n``.

        Coordinates: ``G^n`` part first (mixed radix), then ``K^(n-1)`` part
        (mixed radix in positions inside ``K``).
        """
        G, K = self.G, self.K
        N = G.order
        offset = N ** n
        cols = bar_boundary_columns(G, n + 1) if n >= 0 else []
        cols = [dict(c) for c in cols]
        KG = G.restrict(K)
        kcols = bar_boundary_columns(KG, n) if n >= 1 else [{} for _ in range(1 if n == 0 else 0)]
        for j, b in enumerate(product(range(len(K)), repeat=n)):
            col: dict[int, int] = {}
            gi = 0
            for v in b:
                gi = gi * N + K[v]
            col[gi] = 1
            for r, v in kcols[j].items():
                col[offset + r] = -v
            cols.append(col)
        return cols

    def rank(self, n: int) -> int:
        if n < 0:
            return 0
        cols = self.differential_transpose_columns(n)
        return rank_mod_p((self.dim(n), cols), self.ell)

    def differential_squares_to_zero(self, n: int) -> bool:
        """``d^(n+1) d^n = 0`` checked as ``(d^n)^T (d^(n+1))^T = 0``."""
        A = self.differential_transpose_columns(n)
        B = self.differential_transpose_columns(n + 1)
        M = IntMatrix(self.dim(n), len(A), A)
        for col in B:
            img = M.apply(col)
            if any(v % self.ell for v in img.values()):
                return False
        return True

    def cohomology_dim(self, n: int) -> int:
        return self.dim(n) - self.rank(n) - self.rank(n - 1)


def h2_relative_dim(G: FiniteGroupTable, K: Sequence[int], ell: int,
                    limits: Limits | None = None, degree: int = 2) -> int:
    """``dim H^degree(G, K; F_ell)`` of the mapping-cone complex."""
    require_prime(ell)
    (limits or default_limits()).check("max_bar_mod", G.order)
    Ks = tuple(G.subgroup_indices(K))
    return RelCochainComplex(G, Ks, ell).cohomology_dim(degree)


def restriction_rank(G: FiniteGroupTable, K: Sequence[int], degree: int, ell: int) -> int:
    """Rank of ``H^degree(G; F_ell) -> H^degree(K; F_ell)``."""
    import numpy as np

    Ks = G.subgroup_indices(K)
    KG = G.restrict(Ks)
    N, M = G.order, len(Ks)
    # cocycles of G: null space of d^degree, i.e. h with h o d_{degree+1} = 0
    cols = bar_boundary_columns(G, degree + 1)
    dense = np.zeros((len(cols), N ** degree), dtype=np.int64)
    for i, c in enumerate(cols):
        for r, v in c.items():
            dense[i, r] = v % ell
    Z = _nullspace_mod_p(dense, ell)
    pos = []
    for b in product(range(M), repeat=degree):
        k = 0
        for v in b:
            k = k * N + Ks[v]
        pos.append(k)
    restricted = [{i: int(z[p]) for i, p in enumerate(pos) if z[p]} for z in Z]
    bk = [dict(c) for c in _coboundary_columns(KG, degree)]
    both = rank_mod_p((M ** degree, restricted + bk), ell)
    return both - rank_mod_p((M ** degree, bk), ell)


def _coboundary_columns(G: FiniteGroupTable, degree: int) -> list[dict]:
    """Columns spanning ``B^degree`` = images of the basis ``(degree-1)``-cochains."""
    if degree <= 1:
        return []
    d = bar_boundary_columns(G, degree)  # d: G^degree -> G^(degree-1)
    cols: list[dict] = [{} for _ in range(G.order ** (degree - 1))]
    for j, c in enumerate(d):
        for r, v in c.items():
            cols[r][j] = v
    return cols


def _nullspace_mod_p(A, p: int):
    """Basis (rows) of ``{x : A x = 0}`` over ``F_p``."""
    import numpy as np

    A = A.copy() % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        mask = A[:, c] != 0
        mask[r] = False
        A[mask] = (A[mask] - np.outer(A[mask, c], A[r])) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(pivots):
            x[c] = -A[i, f] % p
        basis.append(x)
    return basis


# ---------------------------------------------------------------------------
# group 2-cocycles


@dataclass(frozen=True)
class GroupCocycle2:
    """``F : G x G -> target``; ``values[g][h]`` are coordinate tuples."""

    group: FiniteGroupTable
    target: FinGenAb
    values: tuple[tuple[tuple[int, ...], ...], ...]

    def __call__(self, g: int, h: int) -> tuple[int, ...]:
        return self.values[g][h]

    def difference(self, other: "GroupCocycle2") -> "GroupCocycle2":
        A = self.target
        vals = tuple(tuple(A.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.values, other.values))
        return GroupCocycle2(self.group, A, vals)


def is_group_2cocycle(F: GroupCocycle2) -> tuple[bool, tuple[int, int, int] | None]:
    """``F(g,h) + F(gh,k) = F(h,k) + F(g,hk)`` on every triple."""
    import numpy as np

    G, A = F.group, F.target
    N = G.order
    c = A.ngens
    if c == 0:
        return True, None
    V = np.array(F.values, dtype=np.int64).reshape(N, N, c)
    M = np.array(G.mul, dtype=np.int64)
    mods = np.array(list(A.invariant_factors) + [0] * A.free_rank, dtype=np.int64)
    torsion = mods > 0
    for g in range(N):
        # rows indexed by h, columns by k
        s = V[g][:, None, :] + V[M[g]] - V - V[g][M]
        s[..., torsion] %= mods[torsion]
        bad = np.argwhere(s.any(axis=2))
        if len(bad):
            h, k = bad[0]
            return False, (g, int(h), int(k))
    return True, None


def is_coboundary_mod(F: GroupCocycle2, ell: int) -> bool:
    """Whether ``F`` tensored with ``F_ell`` is ``dc`` for some ``c : G -> A/ell``.

    Each coordinate is treated independently, which is exact when the
    target is elementary abelian of exponent ``ell``.
    """
    require_prime(ell)
    G = F.group
    N = G.order
    B = [{} for _ in range(N)]
    m = G.mul
    for g in range(N):
        for h in range(N):
            r = g * N + h
            for j, s in ((h, 1), (m[g][h], -1), (g, 1)):
                c = B[j].get(r, 0) + s
                if c:
                    B[j][r] = c
                else:
                    B[j].pop(r, None)
    base = rank_mod_p((N * N, B), ell)
    for coord in range(F.target.ngens):
        f = {g * N + h: F.values[g][h][coord] for g in range(N) for h in range(N)}
        if rank_mod_p((N * N, B + [f]), ell) > base:
            return False
    return True


@dataclass(frozen=True)
class CentralExtension:
    """``0 -> kernel -> ambient -> quotient -> 0`` with a set-section.

    The ambient group is given by ``mul``/``inv`` on hashable elements;
    ``section`` sends a quotient index to an ambient element and
    ``in_kernel`` recognises the (central) kernel.
    """

    mul: Callable[[Hashable, Hashable], Hashable]
    inv: Callable[[Hashable], Hashable]
    quotient: FiniteGroupTable
    section: Callable[[int], Hashable]
    in_kernel: Callable[[Hashable], bool]


def delta_section(ext: CentralExtension, F: Callable[[Hashable], Sequence[int]],
                  target: FinGenAb) -> GroupCocycle2:
    """``(g, h) -> F(s(g) s(h) s(gh)^-1)``; ``F`` a homomorphism kernel -> target."""
    N = ext.quotient.order
    m = ext.quotient.mul
    sec = [ext.section(g) for g in range(N)]
    sec_inv = [ext.inv(x) for x in sec]
    rows = []
    for g in range(N):
        row = []
        for h in range(N):
            k = ext.mul(ext.mul(sec[g], sec[h]), sec_inv[m[g][h]])
            if not ext.in_kernel(k):
                raise ValueError(f"s({g}) s({h}) s({g}{h})^-1 = {k!r} is outside the kernel")
            row.append(target.reduce(F(k)))
        rows.append(tuple(row))
    return GroupCocycle2(ext.quotient, target, tuple(rows))

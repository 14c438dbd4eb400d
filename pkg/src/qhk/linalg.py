"""Exact integer linear algebra.

Smith normal form, finitely generated abelian groups in canonical
invariant-factor form, cokernels of presentations, homology of
``Z^a <- Z^b <- Z^c`` pairs, tensor/exterior squares and primary parts.

Everything uses Python integers, so there is no overflow at any size.
Matrices are stored column-sparse; their semantics are those of a dense
row-major integer array.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from sympy import factorint, isprime

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "FinGenAb",
    "AbPresentation",
    "CokernelMap",
    "ComplexError",
    "smith_normal_form",
    "invariant_factors",
    "cokernel",
    "cokernel_map",
    "homology_of_pair",
    "homology_of_pair_via_kernel",
    "lattice_invariants",
    "rank_mod_p",
    "tensor_square",
    "exterior_square",
    "primary_part",
    "require_prime",
]


class ComplexError(ValueError):
    """Raised when two maps do not compose to zero."""


def require_prime(ell: int) -> int:
    if not isinstance(ell, int) or not isprime(ell):
        raise ValueError(f"{ell!r} is not a prime")
    return ell


class IntMatrix:
    """Immutable integer matrix (column-sparse storage)."""

    __slots__ = ("rows", "cols", "_columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[dict] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise ValueError("column count mismatch")
        clean = []
        for col in columns:
            c = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise ValueError(f"row index {r} out of range")
                if v:
                    c[r] = int(v)
            clean.append(c)
        self.rows = rows
        self.cols = cols
        self._columns = tuple(clean)

    @classmethod
    def _trusted(cls, rows: int, cols: int, columns: Sequence[dict]) -> "IntMatrix":
        # Caller guarantees in-range indices and no stored zeros.
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._columns = tuple(columns)
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        columns = [{} for _ in range(cols)]
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    columns[j][i] = int(v)
        return cls._trusted(rows, cols, columns)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Sequence[int]) -> "IntMatrix":
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        return cls.from_rows([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls._trusted(rows, cols, [{} for _ in range(cols)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls._trusted(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls._trusted(n, n, [{i: int(v)} if v else {} for i, v in enumerate(values)])

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(v for row in self.to_rows() for v in row)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def column(self, j: int) -> dict:
        return dict(self._columns[j])

    def columns(self) -> tuple[dict, ...]:
        return self._columns

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._columns[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self._columns)

    def is_zero(self) -> bool:
        return not any(self._columns)

    def transpose(self) -> "IntMatrix":
        cols = [{} for _ in range(self.rows)]
        for j, col in enumerate(self._columns):
            for i, v in col.items():
                cols[i][j] = v
        return IntMatrix._trusted(self.cols, self.rows, cols)

    def apply(self, vec: dict) -> dict:
        """Image of a sparse column vector ``{index: value}``."""
        out: dict[int, int] = {}
        for j, a in vec.items():
            if not a:
                continue
            for i, v in self._columns[j].items():
                s = out.get(i, 0) + a * v
                if s:
                    out[i] = s
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix._trusted(self.rows, other.cols, [self.apply(c) for c in other._columns])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix._trusted(self.rows, self.cols + other.cols, self._columns + other._columns)

    def select_rows(self, keep: Sequence[int]) -> "IntMatrix":
        """Submatrix on the given rows, renumbered in the given order."""
        where = {r: k for k, r in enumerate(keep)}
        cols = [{where[i]: v for i, v in c.items() if i in where} for c in self._columns]
        return IntMatrix._trusted(len(keep), self.cols, cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._columns == other._columns

    def __hash__(self) -> int:
        return hash((self.shape, self.entries))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_rows()!r})"
        return f"IntMatrix<{self.rows}x{self.cols}, nnz={self.nnz()}>"


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix = field(repr=False, compare=False)
    V_inv: IntMatrix = field(repr=False, compare=False)

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf_dense(D: list[list[int]], m: int, n: int, track: bool):
    """In-place Smith reduction of the ``m x n`` row list ``D``.

    Pivot is the least-|.| nonzero entry of the active block, first in
    row-major order.  Returns ``(U, U_inv, V, V_inv)`` when tracking,
    otherwise ``None``.
    """
    if track:
        U, Ui, V, Vi = _identity_rows(m), _identity_rows(m), _identity_rows(n), _identity_rows(n)

    def swap_rows(a, b):
        if a == b:
            return
        D[a], D[b] = D[b], D[a]
        if track:
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        if a == b:
            return
        for row in D:
            row[a], row[b] = row[b], row[a]
        if track:
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if track:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += q * us[k]
            for row in Ui:
                if row[dst]:
                    row[src] -= q * row[dst]

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]
            vd, vs = Vi[dst], Vi[src]
            for k in range(n):
                if vd[k]:
                    vs[k] -= q * vd[k]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                cand = (abs(p), t, t)
                for i in range(t + 1, m):
                    if D[i][t] and abs(D[i][t]) < cand[0]:
                        cand = (abs(D[i][t]), i, t)
                for j in range(t + 1, n):
                    if D[t][j] and abs(D[t][j]) < cand[0]:
                        cand = (abs(D[t][j]), t, j)
                swap_rows(t, cand[1])
                swap_cols(t, cand[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            if track:
                U[t] = [-v for v in U[t]]
                for row in Ui:
                    row[t] = -row[t]
        t += 1
    if track:
        return U, Ui, V, Vi
    return None


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    m, n = A.shape
    D = A.to_rows()
    U, Ui, V, Vi = _snf_dense(D, m, n, track=True)
    return SmithDecomposition(
        U=IntMatrix.from_rows(U, m),
        D=IntMatrix.from_rows(D, n),
        V=IntMatrix.from_rows(V, n),
        U_inv=IntMatrix.from_rows(Ui, m),
        V_inv=IntMatrix.from_rows(Vi, n),
    )


def _dense_invariants(D: list[list[int]], m: int, n: int) -> tuple[int, list[int]]:
    _snf_dense(D, m, n, track=False)
    diag = [D[i][i] for i in range(min(m, n)) if D[i][i]]
    return len(diag), [d for d in diag if d != 1]


def lattice_invariants(nrows: int, columns: Iterable[dict]) -> tuple[int, list[int]]:
    """Rank and nontrivial invariant factors of the lattice spanned by ``columns``.

    Unit pivots are eliminated sparsely (fewest-entry columns first,
    shortest row among the unit entries); the leftover block, if any, goes
    through dense Smith reduction.  Only the column span matters, so the
    result is the invariant-factor data of ``Z^nrows / span``.
    """
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        c = {r: v for r, v in col.items() if v}
        if c:
            cols[j] = c
            for r in c:
                rows.setdefault(r, set()).add(j)

    rank = 0
    progress = True
    while progress and cols:
        progress = False
        for j in sorted(cols, key=lambda k: len(cols[k])):
            col = cols.get(j)
            if col is None:
                continue
            piv = None
            for r, v in col.items():
                if (v == 1 or v == -1) and (piv is None or len(rows[r]) < len(rows[piv])):
                    piv = r
            if piv is None:
                continue
            u = col[piv]
            for k in list(rows[piv]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[piv] * u
                for r, v in col.items():
                    nv = ck.get(r, 0) - f * v
                    if nv:
                        if r not in ck:
                            rows[r].add(k)
                        ck[r] = nv
                    else:
                        del ck[r]
                        rows[r].discard(k)
                if not ck:
                    del cols[k]
            for r in col:
                rows[r].discard(j)
            del cols[j]
            rank += 1
            progress = True

    if not cols:
        return rank, []
    live_rows = sorted(r for r, s in rows.items() if s)
    where = {r: i for i, r in enumerate(live_rows)}
    m, n = len(live_rows), len(cols)
    D = [[0] * n for _ in range(m)]
    for jj, col in enumerate(cols.values()):
        for r, v in col.items():
            D[where[r]][jj] = v
    r2, factors = _dense_invariants(D, m, n)
    return rank + r2, factors


def invariant_factors(A: IntMatrix) -> list[int]:
    """Nonzero Smith diagonal of ``A`` (including ones)."""
    rank, factors = lattice_invariants(A.rows, A.columns())
    return [1] * (rank - len(factors)) + factors


def rank_mod_p(A: IntMatrix | tuple[int, Iterable[dict]], p: int) -> int:
    """Rank over the field with ``p`` elements (sparse elimination)."""
    if isinstance(A, IntMatrix):
        columns: Iterable[dict] = A.columns()
    else:
        columns = A[1]
    cols: dict[int, dict[int, int]] = {}
    rows: dict[int, set[int]] = {}
    for j, col in enumerate(columns):
        c = {r: v % p for r, v in col.items() if v % p}
        if c:
            cols[j] = c
            for r in c:
                rows.setdefault(r, set()).add(j)
    rank = 0
    while cols:
        j = min(cols, key=lambda k: len(cols[k]))
        col = cols.pop(j)
        piv = min(col, key=lambda r: len(rows[r]))
        inv = pow(col[piv], -1, p)
        for r in col:
            rows[r].discard(j)
        for k in list(rows[piv]):
            ck = cols[k]
            f = ck[piv] * inv % p
            for r, v in col.items():
                nv = (ck.get(r, 0) - f * v) % p
                if nv:
                    if r not in ck:
                        rows[r].add(k)
                    ck[r] = nv
                else:
                    del ck[r]
                    rows[r].discard(k)
            if not ck:
                del cols[k]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FinGenAb:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_i | d_{i+1}``, all ``d_i >= 2``.

    Field-wise equality is isomorphism.  Elements are coordinate tuples:
    one residue per invariant factor, then one integer per free summand.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in facs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(facs, facs[1:]):
            if b % a:
                raise ValueError(f"invariant factors {facs} not divisibility-ordered")

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "FinGenAb":
        """Canonical form of ``Z^free_rank + sum Z/d`` for arbitrary ``d`` (0 means ``Z``)."""
        orders = list(orders)
        free_rank += sum(1 for d in orders if d == 0)
        finite = [abs(d) for d in orders if d not in (0, 1, -1)]
        _, facs = lattice_invariants(len(finite), [{i: d} for i, d in enumerate(finite)])
        return cls(free_rank, tuple(facs))

    @classmethod
    def parse(cls, text: str) -> "FinGenAb":
        text = text.strip()
        if text in ("0", ""):
            return cls()
        free, orders = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part.startswith("Z/"):
                orders.append(int(part[2:]))
            elif part.startswith("Z^"):
                free += int(part[2:])
            elif part == "Z":
                free += 1
            else:
                raise ValueError(f"cannot parse group term {part!r}")
        return cls.from_orders(orders, free)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    def p_rank(self, ell: int) -> int:
        """Number of cyclic torsion summands of order divisible by ``ell``."""
        return sum(1 for d in self.invariant_factors if d % ell == 0)

    def direct_sum(self, other: "FinGenAb") -> "FinGenAb":
        return FinGenAb.from_orders(self.invariant_factors + other.invariant_factors,
                                    self.free_rank + other.free_rank)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.ngens:
            raise ValueError("coordinate length mismatch")
        k = len(self.invariant_factors)
        return tuple(c % self.invariant_factors[i] if i < k else c for i, c in enumerate(coords))

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(a, b)])

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([x - y for x, y in zip(a, b)])

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def scale(self, n: int, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([n * x for x in a])

    def elements(self):
        """All elements of a finite group, lexicographic in the coordinates."""
        if self.free_rank:
            raise ValueError("infinite group has no element list")
        from itertools import product
        return list(product(*(range(d) for d in self.invariant_factors)))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbPresentation:
    """``Z^generators / column span of relations``."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relations matrix needs one row per generator")


@dataclass(frozen=True)
class CokernelMap:
    """Canonical cokernel together with the reduction from ambient vectors."""

    group: FinGenAb
    # rows of U for the non-unit diagonal positions, then free positions
    _transform: tuple[tuple[int, ...], ...] = field(repr=False)
    # matching columns of U^-1: ambient representatives of the generators
    _lifts: tuple[tuple[int, ...], ...] = field(repr=False)

    def reduce(self, vec: Sequence[int] | dict) -> tuple[int, ...]:
        if isinstance(vec, dict):
            raw = [sum(row[i] * v for i, v in vec.items()) for row in self._transform]
        else:
            raw = [sum(a * b for a, b in zip(row, vec) if b) for row in self._transform]
        return self.group.reduce(raw)

    def lift(self, coords: Sequence[int]) -> dict[int, int]:
        """An ambient vector in the class with the given coordinates."""
        out: dict[int, int] = {}
        for c, gen in zip(coords, self._lifts):
            if c:
                for i, v in enumerate(gen):
                    if v:
                        out[i] = out.get(i, 0) + c * v
        return {i: v for i, v in out.items() if v}


def cokernel_map(P: AbPresentation) -> CokernelMap:
    snf = smith_normal_form(P.relations)
    diag = snf.diagonal
    U = snf.U.to_rows()
    Ui = snf.U_inv.transpose().to_rows()
    keep = [i for i, d in enumerate(diag) if d > 1]
    facs = [diag[i] for i in keep]
    keep += list(range(snf.rank, P.generators))
    return CokernelMap(FinGenAb(P.generators - snf.rank, tuple(facs)),
                       tuple(tuple(U[i]) for i in keep), tuple(tuple(Ui[i]) for i in keep))


def cokernel(P: AbPresentation) -> FinGenAb:
    rank, facs = lattice_invariants(P.generators, P.relations.columns())
    return FinGenAb(P.generators - rank, tuple(facs))


def _check_composable(d_out: IntMatrix, d_in: IntMatrix) -> None:
    if d_out.cols != d_in.rows:
        raise ComplexError(f"cannot compose {d_out.shape} after {d_in.shape}")
    for j, col in enumerate(d_in.columns()):
        if d_out.apply(col):
            raise ComplexError(f"d_out @ d_in is nonzero (column {j})")


def homology_of_pair(d_out: IntMatrix, d_in: IntMatrix, check: bool = True) -> FinGenAb:
    """``Ker(d_out) / Im(d_in)`` in canonical form.

    Free rank is ``dim Ker(d_out) - rank(d_in)``; torsion is the torsion of
    ``coker(d_in)``, which coincides with that of the homology because
    ``C / Ker(d_out)`` embeds in a free group.
    """
    if check:
        _check_composable(d_out, d_in)
    elif d_out.cols != d_in.rows:
        raise ComplexError(f"cannot compose {d_out.shape} after {d_in.shape}")
    rank_out, _ = lattice_invariants(d_out.rows, d_out.columns())
    rank_in, facs = lattice_invariants(d_in.rows, d_in.columns())
    return FinGenAb(d_out.cols - rank_out - rank_in, tuple(facs))


def homology_of_pair_via_kernel(d_out: IntMatrix, d_in: IntMatrix) -> FinGenAb:
    """Same value as :func:`homology_of_pair`, by writing ``Im(d_in)`` in a
    kernel basis of ``d_out`` (dense; meant for small complexes)."""
    _check_composable(d_out, d_in)
    snf = smith_normal_form(d_out)
    r = snf.rank
    n = d_out.cols
    # columns r.. of V span Ker(d_out); coordinates of d_in there are rows r.. of V^-1 d_in
    coords = snf.V_inv @ d_in
    C = coords.select_rows(list(range(r, n)))
    rank_c, facs = lattice_invariants(C.rows, C.columns())
    return FinGenAb(C.rows - rank_c, tuple(facs))


def _finite_gens(A: FinGenAb, op: str) -> tuple[int, ...]:
    if A.free_rank:
        raise ValueError(f"{op} needs a finite group, got free rank {A.free_rank}")
    return A.invariant_factors


def tensor_square(A: FinGenAb) -> FinGenAb:
    d = _finite_gens(A, "tensor_square")
    k = len(d)
    return FinGenAb.from_orders([gcd(d[i], d[j]) for i in range(k) for j in range(k)])


def exterior_square(A: FinGenAb) -> FinGenAb:
    d = _finite_gens(A, "exterior_square")
    k = len(d)
    return FinGenAb.from_orders([gcd(d[i], d[j]) for i in range(k) for j in range(i + 1, k)])


def primary_part(A: FinGenAb, ell: int) -> FinGenAb:
    require_prime(ell)
    parts = []
    for d in A.invariant_factors:
        e = factorint(d).get(ell, 0)
        if e:
            parts.append(ell ** e)
    return FinGenAb(A.free_rank, tuple(parts))

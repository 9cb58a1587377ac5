"""Exact linear algebra over the rationals and prime fields."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``p == 0`` means the rationals, otherwise Z/p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip().upper().replace("/", "").replace("Z_", "Z")
        if t in ("Q", "QQ", "RATIONALS"):
            return cls(0)
        if t.startswith("Z") and t[1:].isdigit():
            return cls(int(t[1:]))
        if t.startswith("GF") and t[2:].isdigit():
            return cls(int(t[2:]))
        raise ValueError(f"unknown field {text!r}")

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"Z{self.p}"

    def __call__(self, x):
        if self.p:
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def norm(self, x):
        return x % self.p if self.p else x


QQ = Field(0)
GF2 = Field(2)


@dataclass
class SparseMatrix:
    """Column-sparse matrix; ``cols[j]`` maps row index to a nonzero entry."""

    nrows: int
    ncols: int
    cols: list = field(default_factory=list)
    field: Field = QQ

    def to_dense(self) -> list[list]:
        zero = self.field(0)
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def transpose(self) -> "SparseMatrix":
        cols = [dict() for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                cols[i][j] = x
        return SparseMatrix(self.ncols, self.nrows, cols, self.field)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        cols = []
        for col in other.cols:
            acc: dict = {}
            for k, y in col.items():
                for i, x in self.cols[k].items():
                    acc[i] = F.norm(acc.get(i, 0) + x * y)
            cols.append({i: x for i, x in acc.items() if x != 0})
        return SparseMatrix(self.nrows, other.ncols, cols, F)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def rank(self) -> int:
        return sparse_rank(self.cols, self.field)


def sparse_rank(cols: list, F: Field) -> int:
    if F.p == 2:
        return _rank_gf2([sum(1 << i for i, x in c.items() if x % 2) for c in cols])
    pivots: dict = {}
    rank = 0
    for col in cols:
        c = {i: F(x) for i, x in col.items() if F(x) != 0}
        while c:
            low = max(c)
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = c
                rank += 1
                break
            factor = c[low] * F.inv(piv[low])
            for i, x in piv.items():
                y = F.norm(c.get(i, 0) - factor * x)
                if y == 0:
                    c.pop(i, None)
                else:
                    c[i] = y
    return rank


def _rank_gf2(masks: list[int]) -> int:
    pivots: dict = {}
    rank = 0
    for m in masks:
        while m:
            low = m.bit_length() - 1
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = m
                rank += 1
                break
            m ^= piv
    return rank


def rref(rows: list[list], F: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a dense matrix; returns (matrix, pivot columns)."""
    M = [[F(x) for x in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.norm(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [F.norm(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def nullspace(rows: list[list], ncols: int, F: Field) -> list[list]:
    """Basis of {x : A x = 0}; one vector per free column, in column order."""
    if not rows:
        return [[F(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, F)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [F(0)] * ncols
        v[fc] = F(1)
        for r, pc in enumerate(pivots):
            v[pc] = F.norm(-R[r][fc])
        basis.append(v)
    return basis


class Echelon:
    """Incrementally maintained echelon basis of a span of vectors."""

    def __init__(self, F: Field):
        self.F = F
        self.rows: dict = {}

    def reduce(self, v: list) -> list:
        F = self.F
        v = [F(x) for x in v]
        for pc, row in self.rows.items():
            if v[pc] != 0:
                f = v[pc]
                v = [F.norm(a - f * b) for a, b in zip(v, row)]
        return v

    def add(self, v: list) -> bool:
        """Insert v; return False if it was already in the span."""
        F = self.F
        v = self.reduce(v)
        pc = next((i for i, x in enumerate(v) if x != 0), None)
        if pc is None:
            return False
        inv = F.inv(v[pc])
        v = [F.norm(x * inv) for x in v]
        for k, row in self.rows.items():
            if row[pc] != 0:
                f = row[pc]
                self.rows[k] = [F.norm(a - f * b) for a, b in zip(row, v)]
        self.rows[pc] = v
        return True

    def __len__(self) -> int:
        return len(self.rows)


def column_space_rank(vectors: list[list], F: Field) -> int:
    ech = Echelon(F)
    for v in vectors:
        ech.add(v)
    return len(ech)


def extend_basis(base: list[list], candidates: list[list], F: Field) -> list[int]:
    """Indices of candidates that are independent modulo span(base), chosen greedily in order."""
    ech = Echelon(F)
    for v in base:
        ech.add(v)
    return [i for i, v in enumerate(candidates) if ech.add(v)]


def solve(rows: list[list], rhs: list, F: Field) -> list | None:
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return None if any(F(b) != 0 for b in rhs) else []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, F)
    if ncols in pivots:
        return None
    x = [F(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols]
    return x

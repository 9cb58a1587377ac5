"""Simplicial (co)homology over Q and Z/p, Poincare polynomials and the H^1 cup product."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .complex import SimplicialComplex, euler_characteristic
from .linalg import GF2, QQ, Echelon, Field, SparseMatrix, extend_basis, nullspace, solve, sparse_rank


def face_index(K: SimplicialComplex, dim: int) -> dict:
    return {f: i for i, f in enumerate(K.faces_of_dim(dim))}


def boundary_matrix(K: SimplicialComplex, dim: int, field: Field = QQ) -> SparseMatrix:
    """Matrix of the boundary map C_dim -> C_{dim-1}, columns in canonical face order."""
    if dim < 1:
        raise ValueError("boundary_matrix needs dim >= 1")
    rows = face_index(K, dim - 1)
    cols = []
    for f in K.faces_of_dim(dim):
        col = {}
        for j in range(len(f)):
            col[rows[f[:j] + f[j + 1:]]] = field(-1 if j % 2 else 1)
        cols.append(col)
    return SparseMatrix(len(rows), len(cols), cols, field)


def betti_numbers(K: SimplicialComplex, field: Field = QQ) -> list[int]:
    if K.is_empty:
        raise ValueError("homology of the empty complex is not defined here")
    d = K.dim
    counts = K.f_vector()
    ranks = [0] * (d + 2)
    for k in range(1, d + 1):
        ranks[k] = sparse_rank(boundary_matrix(K, k, field).cols, field)
    return [counts[k] - ranks[k] - ranks[k + 1] for k in range(d + 1)]


def reduced_betti_numbers(K: SimplicialComplex, field: Field = QQ) -> list[int]:
    b = betti_numbers(K, field)
    b[0] -= 1
    return b


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: tuple
    field: Field = QQ

    def __post_init__(self):
        coeffs = list(self.coefficients)
        if any(c < 0 for c in coeffs):
            raise ValueError("Betti numbers are nonnegative")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __le__(self, other: "PoincarePolynomial") -> bool:
        n = max(len(self.coefficients), len(other.coefficients))
        return all(self[i] <= other[i] for i in range(n))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{c}{mono}")
        return " + ".join(terms) or "0"


def poincare_polynomial(K: SimplicialComplex, field: Field = QQ) -> PoincarePolynomial:
    return PoincarePolynomial(tuple(betti_numbers(K, field)), field)


def euler_poincare(K: SimplicialComplex, field: Field = QQ) -> bool:
    return euler_characteristic(K) == sum((-1) ** i * b for i, b in enumerate(betti_numbers(K, field)))


@dataclass(frozen=True)
class CohomologyClassBasis:
    degree: int
    field: Field
    faces: tuple
    representatives: tuple


@dataclass(frozen=True)
class CupProductH1:
    h1: CohomologyClassBasis
    h2: CohomologyClassBasis
    # table[i][j] = coordinates of h1[i] cup h1[j] in the h2 basis
    table: tuple
    cycles: tuple

    @property
    def nonzero(self) -> bool:
        return any(any(x != 0 for x in entry) for row in self.table for entry in row)

    def product(self, a: list, b: list) -> list:
        """Cup product of two classes given by coordinates in the H^1 basis."""
        F = self.h1.field
        k = len(self.h2.representatives)
        out = [F(0)] * k
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if x != 0 and y != 0:
                    for t in range(k):
                        out[t] = F.norm(out[t] + x * y * self.table[i][j][t])
        return out


def _coboundary_rows(K: SimplicialComplex, dim: int, F: Field) -> list[list]:
    # delta: C^{dim-1} -> C^dim as a dense matrix, one row per dim-face
    if dim < 1 or not K.faces_of_dim(dim):
        return []
    n = len(K.faces_of_dim(dim - 1))
    zero = F(0)
    return [[col.get(i, zero) for i in range(n)] for col in boundary_matrix(K, dim, F).cols]


def _cocycle_space(K: SimplicialComplex, dim: int, F: Field) -> list[list]:
    n = len(K.faces_of_dim(dim))
    rows = _coboundary_rows(K, dim + 1, F)
    return nullspace(rows, n, F)


def _coboundaries(K: SimplicialComplex, dim: int, F: Field) -> list[list]:
    # image of delta: C^{dim-1} -> C^dim spanned by delta of each basis cochain
    if dim < 1:
        return []
    B = boundary_matrix(K, dim, F)
    n = len(K.faces_of_dim(dim))
    # delta(e_i)(sigma) = [d sigma : i], i.e. row i of the boundary matrix
    vecs = [[F(0)] * n for _ in range(B.nrows)]
    for j, col in enumerate(B.cols):
        for i, x in col.items():
            vecs[i][j] = x
    return vecs


def _homology_cycles(K: SimplicialComplex, dim: int, F: Field) -> list[list]:
    """Representative cycles of a basis of H_dim."""
    n = len(K.faces_of_dim(dim))
    if dim >= 1:
        B = boundary_matrix(K, dim, F)
        rows = [[F(0)] * n for _ in range(B.nrows)]
        for j, col in enumerate(B.cols):
            for i, x in col.items():
                rows[i][j] = x
        cycles = nullspace(rows, n, F)
    else:
        cycles = [[F(1 if i == j else 0) for i in range(n)] for j in range(n)]
    bounds = []
    if K.faces_of_dim(dim + 1):
        B2 = boundary_matrix(K, dim + 1, F)
        for col in B2.cols:
            v = [F(0)] * n
            for i, x in col.items():
                v[i] = x
            bounds.append(v)
    keep = extend_basis(bounds, cycles, F)
    return [cycles[i] for i in keep]


def cup_product_h1(K: SimplicialComplex, field: Field = QQ) -> CupProductH1:
    """Front-face/back-face cup product H^1 x H^1 -> H^2 in the canonical vertex order.

    The H^2 basis is the one dual to a chosen basis of H_2, so the coordinates
    of a class are its values on the chosen cycles.
    """
    F = field
    edges = K.faces_of_dim(1)
    tris = K.faces_of_dim(2)
    eidx = {e: i for i, e in enumerate(edges)}

    z1 = _cocycle_space(K, 1, F) if edges else []
    b1 = _coboundaries(K, 1, F) if edges else []
    h1_reps = [z1[i] for i in extend_basis(b1, z1, F)]

    cycles = _homology_cycles(K, 2, F) if tris else []
    h2_reps = _dual_cocycles(K, cycles, F) if cycles else []

    table = []
    for a in h1_reps:
        row = []
        for b in h1_reps:
            cup = [F.norm(a[eidx[(t[0], t[1])]] * b[eidx[(t[1], t[2])]]) for t in tris]
            row.append(tuple(_pair(cup, z, F) for z in cycles))
        table.append(tuple(row))
    return CupProductH1(
        CohomologyClassBasis(1, F, tuple(edges), tuple(tuple(v) for v in h1_reps)),
        CohomologyClassBasis(2, F, tuple(tris), tuple(tuple(v) for v in h2_reps)),
        tuple(table),
        tuple(tuple(z) for z in cycles),
    )


def _pair(cochain: list, chain: list, F: Field):
    acc = F(0)
    for x, y in zip(cochain, chain):
        if x != 0 and y != 0:
            acc = F.norm(acc + x * y)
    return acc


def _dual_cocycles(K: SimplicialComplex, cycles: list[list], F: Field) -> list[list]:
    # cocycles h_j with <h_j, z_i> = delta_ij
    Z2 = _cocycle_space(K, 2, F)
    M = [[_pair(h, z, F) for h in Z2] for z in cycles]
    reps = []
    for j in range(len(cycles)):
        rhs = [F(1 if i == j else 0) for i in range(len(cycles))]
        a = solve(M, rhs, F)
        if a is None:
            raise ArithmeticError("pairing between H^2 and H_2 is degenerate")
        n = len(K.faces_of_dim(2))
        h = [F(0)] * n
        for coef, vec in zip(a, Z2):
            if coef != 0:
                h = [F.norm(x + coef * y) for x, y in zip(h, vec)]
        reps.append(h)
    return reps


def cup_nonzero(K: SimplicialComplex, field: Field = QQ) -> bool:
    b = betti_numbers(K, field)
    if len(b) < 3 or b[1] == 0 or b[2] == 0:
        return False
    return cup_product_h1(K, field).nonzero


def h1_classes(cup: CupProductH1):
    """All nonzero coordinate vectors of H^1 (finite fields only)."""
    F = cup.h1.field
    if not F.p:
        raise ValueError("enumeration needs a finite field")
    k = len(cup.h1.representatives)
    for coords in product(range(F.p), repeat=k):
        if any(coords):
            yield list(coords)


__all__ = [
    "GF2", "QQ", "Field", "Echelon",
    "boundary_matrix", "betti_numbers", "reduced_betti_numbers", "PoincarePolynomial",
    "poincare_polynomial", "cup_product_h1", "cup_nonzero", "CupProductH1", "CohomologyClassBasis",
]

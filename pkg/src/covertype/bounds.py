"""Lower and upper bounds on covering type, and the map-colouring formulas they lean on.

Every square-root formula is evaluated with :func:`math.isqrt`, so perfect
squares such as 1 + 48*1 = 49 never suffer from float rounding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, isqrt

from .complex import SimplicialComplex, connected_components
from .homology import PoincarePolynomial, betti_numbers, cup_nonzero
from .linalg import GF2, QQ, Field

CUP_BOUND = 6


def ceil_half_sqrt(a: int, n: int) -> int:
    """ceil((a + sqrt(n)) / 2) for integers a and n >= 0."""
    s = isqrt(n)
    if s * s == n:
        return -((-(a + s)) // 2)
    return (a + s) // 2 + 1


def floor_half_sqrt(a: int, n: int) -> int:
    """floor((a + sqrt(n)) / 2) for integers a and n >= 0."""
    return (a + isqrt(n)) // 2


def _coeffs(P) -> list[int]:
    if isinstance(P, PoincarePolynomial):
        return list(P.coefficients)
    return list(P)


def poincare_admits(P, n: int) -> bool:
    """Whether a space with Poincare polynomial P could have covering type n."""
    h = _coeffs(P)
    if n < 1 or (h and h[0] > n):
        return False
    return all(h[k] <= comb(n - 1, k + 1) for k in range(1, len(h)))


def poincare_lower_bound(P) -> int:
    h = _coeffs(P)
    if not h:
        raise ValueError("empty Poincare polynomial")
    n = 1
    while not poincare_admits(h, n):
        n += 1
    return n


def homological_dimension(K: SimplicialComplex, field: Field = QQ) -> int | None:
    b = betti_numbers(K, field)
    b[0] -= 1
    top = [i for i, x in enumerate(b) if x]
    return max(top) if top else None


def hd_lower_bound(K: SimplicialComplex, field: Field = QQ) -> int:
    hd = homological_dimension(K, field)
    return 1 if hd is None else hd + 2


def cup_lower_bound(K: SimplicialComplex) -> int | None:
    if any(cup_nonzero(C, F) for C in connected_components(K) for F in (QQ, GF2)):
        return CUP_BOUND
    return None


@dataclass
class BoundReport:
    lower: int
    upper: int | None = None
    contributions: list = field(default_factory=list)
    per_component: list | None = None
    exact: bool = False

    def __post_init__(self):
        if self.upper is not None and self.upper < self.lower:
            raise ValueError(f"upper bound {self.upper} below lower bound {self.lower}")

    def as_dict(self) -> dict:
        out = {"lower": self.lower, "upper": self.upper,
               "contributions": [{"rule": r, "value": v, "field": f} for r, v, f in self.contributions]}
        if self.per_component is not None:
            out["per_component"] = self.per_component
        return out


def combined_lower_bound(K: SimplicialComplex) -> BoundReport:
    if K.is_empty:
        raise ValueError("combined_lower_bound needs a nonempty complex")
    contributions = []
    per_component = []
    for idx, C in enumerate(connected_components(K)):
        best = 1
        for F in (QQ, GF2):
            P = PoincarePolynomial(tuple(betti_numbers(C, F)), F)
            pb = poincare_lower_bound(P)
            hb = hd_lower_bound(C, F)
            contributions.append((f"poincare[{idx}]", pb, str(F)))
            contributions.append((f"hd[{idx}]", hb, str(F)))
            best = max(best, pb, hb)
            if cup_nonzero(C, F):
                contributions.append((f"cup[{idx}]", CUP_BOUND, str(F)))
                best = max(best, CUP_BOUND)
        per_component.append(best)
    return BoundReport(sum(per_component), None, contributions, per_component)


def lower_bound_from_profile(polys, cup_nonzero: bool = False) -> int:
    """Lower bound for a connected space from Poincare polynomials and the cup-product flag."""
    best = max(poincare_lower_bound(P) for P in polys)
    return max(best, CUP_BOUND) if cup_nonzero else best


def bouquet_ct(h: int) -> int:
    """ceil((3 + sqrt(1 + 8h)) / 2), the covering type of a bouquet of h circles."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    if h == 0:
        return 1
    return ceil_half_sqrt(3, 1 + 8 * h)


def bouquet_bounds(h: int) -> BoundReport:
    n = bouquet_ct(h)
    return BoundReport(n, n, [("bouquet", n, None)], exact=True)


@dataclass(frozen=True)
class Surface:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0 or (not self.orientable and self.genus < 1):
            raise ValueError("orientable genus >= 0, non-orientable genus >= 1")

    @classmethod
    def parse(cls, text: str) -> "Surface":
        key, _, val = text.partition("=")
        key = key.strip().lower()
        if key not in ("g", "q") or not val.strip().isdigit():
            raise ValueError(f"surface must be g=<int> or q=<int>, got {text!r}")
        return cls(key == "g", int(val))

    def __str__(self) -> str:
        return f"S_{self.genus}" if self.orientable else f"N_{self.genus}"


def Orientable(g: int) -> Surface:
    return Surface(True, g)


def NonOrientable(q: int) -> Surface:
    return Surface(False, q)


def chromatic_number(surface: Surface) -> int:
    if surface.orientable:
        return floor_half_sqrt(7, 1 + 48 * surface.genus)
    if surface.genus == 2:
        return 6  # Klein bottle: the general formula would give 7
    return floor_half_sqrt(7, 1 + 24 * surface.genus)


# exact values whose proofs are not mechanised here
KNOWN_EXACT = {
    Surface(True, 0): 4,
    Surface(True, 1): 7,
    Surface(False, 1): 6,
}

# explicit maps beating the general upper formula; for q = 5 the
# formula's 9 is used even though a looser estimate of 10 is also quoted
KNOWN_UPPER = {
    Surface(True, 2): 10,
    Surface(False, 2): 8,
    Surface(False, 3): 9,
}


def sphere_ct(m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return m + 2


def surface_ct_bounds(surface: Surface) -> BoundReport:
    g = surface.genus
    contributions = []
    if surface.orientable:
        formula = ceil_half_sqrt(3, 1 + 16 * g)
        profile = [PoincarePolynomial((1, 2 * g, 1), QQ)]
        upper = ceil_half_sqrt(7, 1 + 48 * g)
    else:
        formula = ceil_half_sqrt(3, 1 + 8 * g)
        profile = [PoincarePolynomial((1, g, 1), GF2)]
        upper = ceil_half_sqrt(7, 1 + 24 * g)
    contributions.append(("genus-formula", formula, None))
    pb = poincare_lower_bound(profile[0])
    contributions.append(("poincare", pb, str(profile[0].field)))
    lower = max(formula, pb)
    if g >= 1:
        contributions.append(("cup", CUP_BOUND, "Z2" if not surface.orientable else "Q"))
        lower = max(lower, CUP_BOUND)
    if not surface.orientable and g >= 2:
        contributions.append(("non-orientable-q>=2", 7, "Z2"))
        lower = max(lower, 7)
    upper = KNOWN_UPPER.get(surface, upper)
    contributions.append(("upper", upper, None))
    exact = surface in KNOWN_EXACT
    if exact:
        lower = upper = KNOWN_EXACT[surface]
        contributions.append(("known-exact", lower, None))
    return BoundReport(lower, upper, contributions, exact=exact)

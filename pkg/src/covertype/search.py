"""Exhaustive search for minimal good closed covers of one fixed complex.

Results are *strict* covering types: only subcomplexes of the given complex
are used as cover elements, never other spaces of the same homotopy type.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

from .complex import SimplicialComplex, connected_components, full_subcomplex, simplex_key
from .covers import (
    DEFAULT_COLLAPSE_BUDGET,
    Cover,
    PreconditionError,
    Status,
    budget_ms_from_env,
    contractibility,
    nerve,
    verify_good_cover,
)
from .homology import betti_numbers

MAX_UNIVERSE = 50_000
SMALL_COMPLEX_FACES = 12


class Universe(str, Enum):
    ALL_SUBCOMPLEXES = "all"
    INDUCED_BY_VERTEX_SETS = "induced"
    UNIONS_OF_FACETS = "facets"

    @classmethod
    def parse(cls, text: str) -> "Universe":
        aliases = {"allsubcomplexes": cls.ALL_SUBCOMPLEXES, "inducedbyvertexsets": cls.INDUCED_BY_VERTEX_SETS,
                   "unionsoffacets": cls.UNIONS_OF_FACETS}
        key = text.strip().lower().replace("-", "").replace("_", "")
        for u in cls:
            if key == u.value:
                return u
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown universe {text!r}")


@dataclass(frozen=True)
class SearchConfig:
    max_cover_size: int = 3
    element_universe: Universe | None = None
    time_budget_ms: int | None = None
    collapse_budget: int = DEFAULT_COLLAPSE_BUDGET

    def __post_init__(self):
        if self.max_cover_size < 1:
            raise ValueError("max_cover_size must be at least 1")


class Verdict(str, Enum):
    NO_GOOD_COVER_UP_TO = "NoGoodCoverUpTo"
    FOUND_GOOD_COVER = "FoundGoodCover"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class SearchOutcome:
    verdict: Verdict
    size: int | None = None
    cover: Cover | None = None
    reason: str = ""
    explored: int = 0
    universe: Universe | None = None
    universe_size: int = 0

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict.value, "strict": True, "explored": self.explored,
               "universe": self.universe.value if self.universe else None, "universe_size": self.universe_size}
        if self.size is not None:
            out["size"] = self.size
        if self.reason:
            out["reason"] = self.reason
        return out


class _Overflow(Exception):
    pass


def _all_subcomplexes(K: SimplicialComplex, cap: int) -> list[frozenset]:
    faces = sorted(K.faces, key=simplex_key)
    out = []
    chosen: set = set()

    def rec(i):
        if i == len(faces):
            if chosen:
                if len(out) >= cap:
                    raise _Overflow
                out.append(frozenset(chosen))
            return
        f = faces[i]
        rec(i + 1)
        if len(f) == 1 or all(f[:j] + f[j + 1:] in chosen for j in range(len(f))):
            chosen.add(f)
            rec(i + 1)
            chosen.discard(f)

    rec(0)
    return out


def _induced(K: SimplicialComplex, cap: int) -> list[frozenset]:
    verts = K.sorted_vertices()
    if 2 ** len(verts) - 1 > cap:
        raise _Overflow
    return [full_subcomplex(K, S).faces
            for r in range(1, len(verts) + 1) for S in combinations(verts, r)]


def _facet_unions(K: SimplicialComplex, cap: int) -> list[frozenset]:
    facets = list(K.facets)
    if 2 ** len(facets) - 1 > cap:
        raise _Overflow
    return [SimplicialComplex.from_facets(S).faces
            for r in range(1, len(facets) + 1) for S in combinations(facets, r)]


def element_universe(K: SimplicialComplex, universe: Universe, cap: int = MAX_UNIVERSE) -> list[frozenset]:
    """Candidate elements as face sets, deduplicated, in a fixed canonical order."""
    builder = {Universe.ALL_SUBCOMPLEXES: _all_subcomplexes,
               Universe.INDUCED_BY_VERTEX_SETS: _induced,
               Universe.UNIONS_OF_FACETS: _facet_unions}[universe]
    elems = set(builder(K, cap))
    return sorted(elems, key=lambda fs: (len(fs), sorted(simplex_key(f) for f in fs)))


def strict_ct_search(K: SimplicialComplex, config: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Smallest good cover of K by elements of the configured universe, by iterative deepening.

    Branches on the first uncovered facet, adds an element containing it and
    prunes as soon as a new intersection is non-contractible.  Only the full
    subcomplex universe can certify that no cover exists.
    """
    if K.is_empty:
        raise ValueError("search needs a nonempty complex")
    universe = config.element_universe
    if universe is None:
        universe = (Universe.ALL_SUBCOMPLEXES if len(K.faces) <= SMALL_COMPLEX_FACES
                    else Universe.INDUCED_BY_VERTEX_SETS)
    exhaustive = universe is Universe.ALL_SUBCOMPLEXES
    budget_ms = config.time_budget_ms if config.time_budget_ms is not None else budget_ms_from_env()
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    outcome = SearchOutcome(Verdict.INCONCLUSIVE, universe=universe)

    try:
        candidates = element_universe(K, universe)
    except _Overflow:
        outcome.reason = f"{universe.value} universe exceeds {MAX_UNIVERSE} elements; no exhaustive guarantee"
        return outcome

    memo: dict = {}
    unknown_seen = False

    def status(faces: frozenset) -> Status:
        nonlocal unknown_seen
        if not faces:
            return Status.EMPTY
        st = memo.get(faces)
        if st is None:
            st = contractibility(SimplicialComplex.from_faces(faces), config.collapse_budget).status
            memo[faces] = st
            if st is Status.UNKNOWN:
                unknown_seen = True
        return st

    elements = [c for c in candidates if status(c) is Status.CONTRACTIBLE]
    outcome.universe_size = len(elements)
    facets = sorted(K.facets, key=simplex_key)
    containing = {f: [i for i, c in enumerate(elements) if f in c] for f in facets}

    def compatible(chosen: tuple, j: int) -> bool:
        # every intersection of the new element with a subfamily is empty or contractible
        new = elements[j]
        stack = [(new, k) for k in range(len(chosen))]
        while stack:
            inter, start = stack.pop()
            part = inter & elements[chosen[start]]
            st = status(part)
            if st is Status.EMPTY:
                continue
            if st is not Status.CONTRACTIBLE:
                return False
            for k in range(start + 1, len(chosen)):
                stack.append((part, k))
        return True

    for n in range(1, config.max_cover_size + 1):
        visited: set = set()
        found = None
        stack = [()]
        while stack and found is None:
            if deadline is not None and time.monotonic() > deadline:
                outcome.reason = f"time budget expired while searching size {n}"
                return outcome
            chosen = stack.pop()
            outcome.explored += 1
            union = frozenset().union(*(elements[i] for i in chosen)) if chosen else frozenset()
            open_facet = next((f for f in facets if f not in union), None)
            if open_facet is None:
                found = chosen
                break
            if len(chosen) == n:
                continue
            for j in reversed(containing[open_facet]):
                if j in chosen:
                    continue
                fam = tuple(sorted(chosen + (j,)))
                if fam in visited:
                    continue
                visited.add(fam)
                if compatible(chosen, j):
                    stack.append(fam)
        if found is not None:
            cover = Cover(K, tuple((f"U{i}", SimplicialComplex.from_faces(elements[j]))
                                   for i, j in enumerate(found)))
            report = verify_good_cover(cover, config.collapse_budget)
            if not report.good:
                raise AssertionError(f"search produced a cover that fails re-verification: {report.reason}")
            outcome.verdict, outcome.size, outcome.cover = Verdict.FOUND_GOOD_COVER, len(found), cover
            return outcome

    if unknown_seen:
        outcome.reason = "some contractibility checks were undecided within budget"
    elif not exhaustive:
        outcome.reason = f"{universe.value} universe is not exhaustive; only upper bounds are meaningful"
    else:
        outcome.verdict = Verdict.NO_GOOD_COVER_UP_TO
        outcome.size = config.max_cover_size
    return outcome


class ThreeCoverType(str, Enum):
    CIRCLE_LIKE = "CircleLike"
    CONTRACTIBLE = "Contractible"


def classify_three_covers(cover: Cover) -> ThreeCoverType:
    """A connected space with a good 3-cover is a circle or contractible; the nerve decides which."""
    if len(cover) != 3:
        raise PreconditionError("expected a cover with exactly 3 elements")
    if len(connected_components(cover.ambient)) != 1:
        raise PreconditionError("ambient complex must be connected")
    if not verify_good_cover(cover).good:
        raise PreconditionError("cover is not good")
    N = nerve(cover)
    b1 = betti_numbers(cover.ambient)
    b1 = b1[1] if len(b1) > 1 else 0
    if N.dim == 1 and len(N.faces_of_dim(1)) == 3:
        kind = ThreeCoverType.CIRCLE_LIKE
        expected = 1
    else:
        kind = ThreeCoverType.CONTRACTIBLE
        expected = 0
    if b1 != expected:
        raise AssertionError(f"nerve says {kind.value} but b1 = {b1}")
    return kind

"""Good closed covers: goodness checks, nerves, and cover-producing constructions."""
from __future__ import annotations

import os
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .complex import (
    ComplexError,
    SimplicialComplex,
    barycentric_subdivision,
    cone,
    connected_components,
    fresh_vertex,
    full_subcomplex,
    is_simplicial_map,
    simplex_key,
    star,
    token_str,
    union,
    union_all,
    vertex_key,
)
from .homology import reduced_betti_numbers
from .linalg import GF2, QQ

DEFAULT_COLLAPSE_BUDGET = 100_000


class CoverError(ValueError):
    pass


class PreconditionError(CoverError):
    pass


class NotACoveringError(CoverError):
    pass


class Status(str, Enum):
    CONTRACTIBLE = "contractible"
    NOT_CONTRACTIBLE = "not-contractible"
    UNKNOWN = "unknown"
    EMPTY = "empty"


@dataclass(frozen=True)
class ContractibilityVerdict:
    status: Status
    apex: object = None
    collapses: tuple = ()
    # (degree, field, rank) of a nonzero reduced homology group
    witness: tuple | None = None

    @property
    def certificate(self):
        if self.status is not Status.CONTRACTIBLE:
            return None
        return ("cone", self.apex) if self.apex is not None else ("collapse", self.collapses)


def budget_ms_from_env() -> int | None:
    raw = os.environ.get("COVERTYPE_BUDGET_MS")
    if not raw:
        return None
    try:
        return max(0, int(raw))
    except ValueError:
        return None


def cone_apex(K: SimplicialComplex):
    """Least vertex lying in every maximal simplex, or None."""
    common = set(K.facets[0])
    for f in K.facets[1:]:
        common.intersection_update(f)
        if not common:
            return None
    return min(common, key=vertex_key)


def contractibility(K: SimplicialComplex, collapse_budget: int = DEFAULT_COLLAPSE_BUDGET,
                    budget_ms: int | None = None) -> ContractibilityVerdict:
    if K.is_empty:
        raise ValueError("contractibility of the empty complex is undefined; branch on emptiness first")
    apex = cone_apex(K)
    if apex is not None:
        return ContractibilityVerdict(Status.CONTRACTIBLE, apex=apex)
    for F in (QQ, GF2):
        for deg, b in enumerate(reduced_betti_numbers(K, F)):
            if b:
                return ContractibilityVerdict(Status.NOT_CONTRACTIBLE, witness=(deg, str(F), b))
    if budget_ms is None:
        budget_ms = budget_ms_from_env()
    seq = collapse_search(K, collapse_budget, budget_ms)
    if seq is not None:
        return ContractibilityVerdict(Status.CONTRACTIBLE, collapses=tuple(seq))
    return ContractibilityVerdict(Status.UNKNOWN)


def _codim1(f):
    return [f[:i] + f[i + 1:] for i in range(len(f))] if len(f) > 1 else []


def collapse_search(K: SimplicialComplex, budget: int = DEFAULT_COLLAPSE_BUDGET,
                    budget_ms: int | None = None) -> list | None:
    """Depth-first search for elementary collapses down to a single vertex.

    Returns the list of (free face, coface) pairs, or None when the search
    gets stuck everywhere or runs out of budget.
    """
    faces = set(K.faces)
    up = {f: set() for f in faces}
    for f in faces:
        for g in _codim1(f):
            up[g].add(f)
    deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000
    seq: list = []
    seen: set = set()
    steps = 0

    def free_pairs():
        out = []
        for t in faces:
            if len(up[t]) == 1:
                (s,) = up[t]
                if not up[s]:
                    out.append((t, s))
        out.sort(key=lambda p: (-len(p[1]), simplex_key(p[1]), simplex_key(p[0])))
        return out

    def apply(t, s):
        faces.discard(t)
        faces.discard(s)
        for g in _codim1(s):
            up[g].discard(s)
        for g in _codim1(t):
            up[g].discard(t)
        up[t].discard(s)

    def undo(t, s):
        faces.add(t)
        faces.add(s)
        for g in _codim1(s):
            up[g].add(s)
        for g in _codim1(t):
            up[g].add(t)
        up[t].add(s)

    if len(faces) == 1:
        return []
    seen.add(frozenset(faces))
    stack = [(free_pairs(), 0)]
    while stack:
        pairs, i = stack[-1]
        if i >= len(pairs):
            stack.pop()
            if seq:
                undo(*seq.pop())
            continue
        stack[-1] = (pairs, i + 1)
        steps += 1
        if steps > budget or (deadline is not None and time.monotonic() > deadline):
            return None
        t, s = pairs[i]
        apply(t, s)
        seq.append((t, s))
        if len(faces) == 1:
            return list(seq)
        state = frozenset(faces)
        if state in seen:
            undo(*seq.pop())
            continue
        seen.add(state)
        stack.append((free_pairs(), 0))
    return None


def replay_collapses(K: SimplicialComplex, collapses: Iterable) -> bool:
    """Check that a collapse certificate is valid and ends at a single vertex."""
    faces = set(K.faces)
    for t, s in collapses:
        if t not in faces or s not in faces or len(s) != len(t) + 1 or not set(t) <= set(s):
            return False
        cofaces_t = [f for f in faces if len(f) > len(t) and set(t) <= set(f)]
        if cofaces_t != [s]:
            return False
        faces.discard(t)
        faces.discard(s)
    return len(faces) == 1


def check_certificate(K: SimplicialComplex, verdict: ContractibilityVerdict) -> bool:
    if verdict.status is not Status.CONTRACTIBLE:
        return False
    if verdict.apex is not None:
        return all(verdict.apex in f for f in K.facets)
    return replay_collapses(K, verdict.collapses)


@dataclass(frozen=True)
class Cover:
    ambient: SimplicialComplex
    elements: tuple

    def __post_init__(self):
        elems = tuple((str(n), X) for n, X in self.elements)
        object.__setattr__(self, "elements", elems)
        names = [n for n, _ in elems]
        if len(set(names)) != len(names):
            raise CoverError("cover element names must be unique")
        for n, X in elems:
            if not X.is_subcomplex_of(self.ambient):
                raise CoverError(f"element {n!r} is not a subcomplex of the ambient complex")

    @classmethod
    def of(cls, ambient: SimplicialComplex, elements: Mapping | Iterable) -> "Cover":
        items = elements.items() if isinstance(elements, Mapping) else elements
        return cls(ambient, tuple(items))

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.elements]

    @property
    def complexes(self) -> list[SimplicialComplex]:
        return [X for _, X in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, name: str) -> SimplicialComplex:
        for n, X in self.elements:
            if n == name:
                return X
        raise KeyError(name)

    def covers_ambient(self) -> bool:
        return all(any(f in X.faces for X in self.complexes) for f in self.ambient.facets)


@dataclass
class GoodnessReport:
    covers_ambient: bool
    checked: list = field(default_factory=list)
    verdict: str = "good"
    witness: tuple | None = None
    reason: str = ""
    names: list = field(default_factory=list)

    @property
    def good(self) -> bool:
        return self.verdict == "good"

    def witness_names(self) -> list | None:
        if self.witness is None:
            return None
        return [self.names[i] for i in self.witness]


def nonempty_intersections(cover: Cover) -> tuple[list, list]:
    """Enumerate index sets with nonempty intersection, pruning supersets of empty ones.

    Returns (nonempty, empty) where nonempty holds (index tuple, face set) and
    empty holds the minimal empty index tuples reached by the enumeration.
    """
    sets = [X.faces for X in cover.complexes]
    nonempty, empty = [], []

    def grow(idx, inter):
        if not inter:
            empty.append(idx)
            return
        nonempty.append((idx, inter))
        for j in range(idx[-1] + 1, len(sets)):
            grow(idx + (j,), inter & sets[j])

    for i in range(len(sets)):
        grow((i,), sets[i])
    nonempty.sort(key=lambda p: (len(p[0]), p[0]))
    empty.sort(key=lambda p: (len(p), p))
    return nonempty, empty


def _verdict_of(faces: frozenset, collapse_budget: int, budget_ms):
    return contractibility(SimplicialComplex.from_faces(faces), collapse_budget, budget_ms).status


def verify_good_cover(cover: Cover, collapse_budget: int = DEFAULT_COLLAPSE_BUDGET,
                      jobs: int = 1, budget_ms: int | None = None) -> GoodnessReport:
    report = GoodnessReport(covers_ambient=cover.covers_ambient(), names=cover.names)
    nonempty, empty = nonempty_intersections(cover)
    distinct = list(dict.fromkeys(faces for _, faces in nonempty))
    if jobs > 1 and len(distinct) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            statuses = list(pool.map(_verdict_of, distinct, [collapse_budget] * len(distinct),
                                     [budget_ms] * len(distinct)))
    else:
        statuses = [_verdict_of(f, collapse_budget, budget_ms) for f in distinct]
    status_of = dict(zip(distinct, statuses))

    checked = [(idx, status_of[faces]) for idx, faces in nonempty]
    checked += [(idx, Status.EMPTY) for idx in empty]
    checked.sort(key=lambda p: (len(p[0]), p[0]))
    report.checked = checked

    empty_elements = [idx for idx in empty if len(idx) == 1]
    bad = [idx for idx, st in checked if st is Status.NOT_CONTRACTIBLE]
    unknown = [idx for idx, st in checked if st is Status.UNKNOWN]
    if not report.covers_ambient:
        report.verdict, report.witness, report.reason = "not-good", (), "elements do not cover the ambient complex"
    elif empty_elements:
        report.verdict, report.witness, report.reason = "not-good", empty_elements[0], "empty cover element"
    elif bad:
        report.verdict, report.witness, report.reason = "not-good", bad[0], "intersection is not contractible"
    elif unknown:
        report.verdict, report.witness, report.reason = "unknown", unknown[0], "contractibility undecided"
    return report


def nerve(cover: Cover) -> SimplicialComplex:
    if any(X.is_empty for X in cover.complexes):
        raise CoverError("nerve needs nonempty cover elements")
    names = cover.names
    nonempty, _ = nonempty_intersections(cover)
    return SimplicialComplex.from_facets([[names[i] for i in idx] for idx, _ in nonempty])


def dual_vertex_cover(K: SimplicialComplex) -> Cover:
    """Dual blocks in Sd(K): for each vertex, the full subcomplex on barycenters of faces containing it."""
    sd, _ = barycentric_subdivision(K)
    elements = []
    for v in K.sorted_vertices():
        block = [face for face in sd.vertices if v in face]
        elements.append((token_str(v), full_subcomplex(sd, block)))
    return Cover(sd, tuple(elements))


def polygonal_dual_cover(polygons: Iterable, edges: Iterable = (), vertices: Iterable = ()) -> Cover:
    """Dual-block cover of a polygonal 2-complex.

    Polygons are cyclic vertex sequences.  Each cell is named by its sorted
    vertex tuple and becomes a vertex of the subdivision; the element for a
    vertex v is spanned by the cells containing v.
    """
    polygons = [list(p) for p in polygons]
    chains = []
    for p in polygons:
        if len(p) < 3 or len(set(p)) != len(p):
            raise ComplexError(f"bad polygon {p!r}")
        cell = tuple(sorted(p, key=vertex_key))
        for i in range(len(p)):
            a, b = p[i], p[(i + 1) % len(p)]
            e = tuple(sorted((a, b), key=vertex_key))
            chains.append([(a,), e, cell])
            chains.append([(b,), e, cell])
    for a, b in edges:
        e = tuple(sorted((a, b), key=vertex_key))
        chains.append([(a,), e])
        chains.append([(b,), e])
    for v in vertices:
        chains.append([(v,)])
    sd = SimplicialComplex.from_facets(chains)
    base = sorted({c[0] for c in sd.vertices if len(c) == 1}, key=vertex_key)
    elements = [(token_str(v), full_subcomplex(sd, [c for c in sd.vertices if v in c])) for v in base]
    return Cover(sd, tuple(elements))


def _fresh_name(taken: Iterable[str], hint: str) -> str:
    taken = set(taken)
    if hint not in taken:
        return hint
    i = 1
    while f"{hint}{i}" in taken:
        i += 1
    return f"{hint}{i}"


def cone_cover(Y: SimplicialComplex, X: SimplicialComplex, coverY: Cover, apex=None) -> tuple[SimplicialComplex, Cover]:
    """Good cover of Y with a cone on the subcomplex X attached."""
    if coverY.ambient != Y:
        raise PreconditionError("cover is not a cover of Y")
    if not X.is_subcomplex_of(Y):
        raise PreconditionError("X is not a subcomplex of Y")
    restricted = []
    for name, Yi in coverY.elements:
        inter = SimplicialComplex.from_faces(X.faces & Yi.faces)
        if not inter.is_empty:
            restricted.append((name, inter))
    rep = verify_good_cover(Cover(X, tuple(restricted)))
    if not rep.good:
        where = rep.witness_names()
        raise PreconditionError(f"restriction of the cover to X is not good at {where}: {rep.reason}")
    if apex is None:
        apex = fresh_vertex(Y, "c")
    CX = cone(X, apex)
    total = union(Y, CX)
    name = _fresh_name(coverY.names, "cone")
    return total, Cover(total, coverY.elements + ((name, CX),))


def suspension_cover(K: SimplicialComplex, cover: Cover) -> tuple[SimplicialComplex, Cover]:
    """Suspension of K with the lower cones of a good cover plus the upper cone."""
    rep = verify_good_cover(cover)
    if not rep.good:
        raise PreconditionError(f"input cover is not good ({rep.reason})")
    lower = fresh_vertex(K, "s")
    upper = fresh_vertex(K, "s", avoid=[lower])
    CK = cone(K, lower)
    lower_cover = Cover(CK, tuple((n, cone(X, lower)) for n, X in cover.elements))
    total, out = cone_cover(CK, K, lower_cover, apex=upper)
    return total, out


@dataclass(frozen=True)
class CoveringMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vmap: tuple
    sheets: int

    @property
    def mapping(self) -> dict:
        return dict(self.vmap)

    def preimage(self, L: SimplicialComplex) -> SimplicialComplex:
        m = self.mapping
        faces = [f for f in self.source.faces
                 if tuple(sorted((m[v] for v in f), key=vertex_key)) in L.faces]
        return SimplicialComplex.from_faces(faces)


def _maps_isomorphically(C: SimplicialComplex, S: SimplicialComplex, m: Mapping) -> bool:
    imgs = {m[v] for v in C.vertices}
    if len(imgs) != len(C.vertices) or imgs != set(S.vertices):
        return False
    image_faces = {tuple(sorted((m[v] for v in f), key=vertex_key)) for f in C.faces}
    return image_faces == set(S.faces) and len(C.faces) == len(S.faces)


def make_covering_map(source: SimplicialComplex, target: SimplicialComplex, vmap: Mapping) -> CoveringMap:
    """Validate a vertex map as a finite-sheeted simplicial covering and count its sheets."""
    m = dict(vmap)
    if not is_simplicial_map(source, target, m):
        raise NotACoveringError("vertex map is not a non-degenerate simplicial map")
    image = {tuple(sorted(set(m[v] for v in f), key=vertex_key)) for f in source.faces}
    if image != set(target.faces):
        raise NotACoveringError("vertex map is not surjective onto the target")
    proto = CoveringMap(source, target, tuple(sorted(m.items(), key=lambda kv: vertex_key(kv[0]))), 0)
    sheets = None
    for v in target.sorted_vertices():
        S = star(target, v)
        comps = connected_components(proto.preimage(S))
        if not all(_maps_isomorphically(C, S, m) for C in comps):
            raise NotACoveringError(f"preimage of the star of {v!r} does not split into copies")
        if sheets is None:
            sheets = len(comps)
        elif sheets != len(comps):
            raise NotACoveringError("number of sheets is not constant")
    return CoveringMap(source, target, proto.vmap, sheets or 0)


def lift_cover(f: CoveringMap, coverY: Cover) -> Cover:
    if coverY.ambient != f.target:
        raise PreconditionError("cover is not a cover of the covering's base")
    elements = []
    for name, Yk in coverY.elements:
        comps = connected_components(f.preimage(Yk))
        if len(comps) != f.sheets:
            raise NotACoveringError(f"preimage of {name!r} has {len(comps)} components, expected {f.sheets}")
        for a, C in enumerate(comps):
            elements.append((f"{name}#{a}", C))
    return Cover(f.source, tuple(elements))


def mapping_cone_cover(f: CoveringMap, coverY: Cover) -> tuple[SimplicialComplex, Cover]:
    """Mapping cone of a covering of graphs with the lifted-cylinder cover plus the cone."""
    X, Y = f.source, f.target
    if X.dim > 1 or Y.dim > 1:
        raise CoverError("mapping cylinders are only implemented for complexes of dimension <= 1")
    m = f.mapping
    tag = "x"
    while any(isinstance(v, tuple) and v and v[0] == tag for v in Y.vertices):
        tag += "'"
    top = {u: (tag, u) for u in X.vertices}
    apex = fresh_vertex(Y, "apex", avoid=list(top.values()))

    def cylinder(part: SimplicialComplex) -> list:
        out = []
        for s in part.facets:
            if len(s) == 2:
                a, b = s
                out.append([m[a], m[b], top[b]])
                out.append([m[a], top[a], top[b]])
            else:
                (a,) = s
                out.append([m[a], top[a]])
        return out

    cone_top = SimplicialComplex.from_facets([[top[v] for v in s] + [apex] for s in X.facets])
    total = union_all([Y, SimplicialComplex.from_facets(cylinder(X)), cone_top])

    lifted = lift_cover(f, coverY)
    by_name = dict(coverY.elements)
    elements = []
    for name, part in lifted.elements:
        base = by_name[name.rsplit("#", 1)[0]]
        cyl = union(base, SimplicialComplex.from_facets(cylinder(part)))
        elements.append((f"cyl[{name}]", cyl))
    elements.append(("cone", cone_top))
    return total, Cover(total, tuple(elements))


def check_nerve_lemma(cover: Cover) -> bool:
    """Homology-level Nerve Lemma: nerve and ambient have equal Betti numbers over Q and Z/2."""
    from .homology import poincare_polynomial

    N = nerve(cover)
    return all(poincare_polynomial(N, F) == poincare_polynomial(cover.ambient, F) for F in (QQ, GF2))


def region_boundary_graph(cover: Cover) -> tuple[set, set]:
    """Polyhedral 1-skeleton of a surface cover by regions.

    Nodes are ambient vertices lying in at least three regions; each pairwise
    intersection (a path) contributes the edge joining its end nodes.
    """
    count = defaultdict(int)
    for X in cover.complexes:
        for v in X.vertices:
            count[v] += 1
    nodes = {v for v, c in count.items() if c >= 3}
    edges = set()
    Xs = cover.complexes
    for i in range(len(Xs)):
        for j in range(i + 1, len(Xs)):
            inter = SimplicialComplex.from_faces(Xs[i].faces & Xs[j].faces)
            if inter.is_empty or inter.dim < 1:
                continue
            ends = inter.vertices & nodes
            if len(ends) != 2:
                raise CoverError(f"pairwise intersection {cover.names[i]}/{cover.names[j]} is not an arc between nodes")
            edges.add(frozenset(ends))
    return nodes, edges

"""Finite abstract simplicial complexes.

A complex is stored by its maximal simplices.  Vertices are opaque tokens
(ints, strings, or tuples of those); every simplex is a tuple sorted by
:func:`vertex_key`, so the canonical order is fixed once and for all.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Hashable, Iterable, Mapping

Vertex = Hashable
Simplex = tuple


class ComplexError(ValueError):
    pass


class MalformedSimplexError(ComplexError):
    pass


class NotSimplicialError(ComplexError):
    pass


def vertex_key(v):
    if isinstance(v, bool):
        raise TypeError("bool is not a vertex token")
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vertex_key(x) for x in v))
    raise TypeError(f"unsupported vertex token {v!r}")


def simplex_key(s: Simplex):
    return (len(s), tuple(vertex_key(v) for v in s))


def make_simplex(vertices: Iterable[Vertex]) -> Simplex:
    vs = list(vertices)
    if not vs:
        raise MalformedSimplexError("empty simplex")
    if len(set(vs)) != len(vs):
        raise MalformedSimplexError(f"duplicate vertex in simplex {vs!r}")
    return tuple(sorted(vs, key=vertex_key))


def _antichain(simplices: Iterable[Simplex]) -> tuple[Simplex, ...]:
    # largest first; a simplex survives if no kept simplex contains it
    cands = sorted(set(simplices), key=lambda s: (-len(s), simplex_key(s)))
    kept: list[frozenset] = []
    by_vertex: dict = defaultdict(list)
    out = []
    for s in cands:
        fs = frozenset(s)
        if any(fs <= kept[i] for i in by_vertex.get(s[0], ())):
            continue
        idx = len(kept)
        kept.append(fs)
        for v in s:
            by_vertex[v].append(idx)
        out.append(s)
    return tuple(sorted(out, key=simplex_key))


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: frozenset
    facets: tuple

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Vertex]]) -> "SimplicialComplex":
        simplices = [make_simplex(f) for f in facets]
        reduced = _antichain(simplices)
        return cls(frozenset(v for s in reduced for v in s), reduced)

    @classmethod
    def from_faces(cls, faces: Iterable[Simplex]) -> "SimplicialComplex":
        """Build from a downward-closed set of sorted simplices (not re-checked)."""
        faces = set(faces)
        non_max = set()
        for f in faces:
            if len(f) > 1:
                for i in range(len(f)):
                    non_max.add(f[:i] + f[i + 1:])
        facets = tuple(sorted(faces - non_max, key=simplex_key))
        return cls(frozenset(v for s in facets for v in s), facets)

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(frozenset(), ())

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return frozenset(out)

    @cached_property
    def _by_dim(self) -> dict:
        groups = defaultdict(list)
        for f in self.faces:
            groups[len(f) - 1].append(f)
        return {d: sorted(fs, key=simplex_key) for d, fs in groups.items()}

    def faces_of_dim(self, dim: int) -> list:
        return list(self._by_dim.get(dim, ()))

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    @property
    def is_empty(self) -> bool:
        return not self.facets

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=vertex_key)

    def f_vector(self) -> list[int]:
        return [len(self._by_dim.get(d, ())) for d in range(self.dim + 1)]

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(simplex, key=vertex_key)) in self.faces

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(f in other.faces for f in self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(nv={len(self.vertices)}, facets={len(self.facets)}, dim={self.dim})"


def make_complex(maximal: Iterable[Iterable[Vertex]], universe: Iterable[Vertex] | None = None) -> SimplicialComplex:
    maximal = [list(m) for m in maximal]
    if universe is not None:
        universe = set(universe)
        stray = {v for m in maximal for v in m} - universe
        if stray:
            raise ComplexError(f"vertices outside the declared universe: {sorted(stray, key=vertex_key)!r}")
        seen = {v for m in maximal for v in m}
        maximal += [[v] for v in universe - seen]
    return SimplicialComplex.from_facets(maximal)


def all_faces(K: SimplicialComplex, dim: int) -> list:
    if dim < 0:
        raise ValueError("dim must be nonnegative")
    return K.faces_of_dim(dim)


def intersection(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    if len(A.faces) > len(B.faces):
        A, B = B, A
    return SimplicialComplex.from_faces(A.faces & B.faces)


def union(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    return SimplicialComplex(A.vertices | B.vertices, _antichain(A.facets + B.facets))


def union_all(parts: Iterable[SimplicialComplex]) -> SimplicialComplex:
    facets: list = []
    for p in parts:
        facets.extend(p.facets)
    reduced = _antichain(facets)
    return SimplicialComplex(frozenset(v for s in reduced for v in s), reduced)


def connected_components(K: SimplicialComplex) -> list[SimplicialComplex]:
    parent = {v: v for v in K.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in K.facets:
        r = find(f[0])
        for v in f[1:]:
            rv = find(v)
            if rv != r:
                parent[rv] = r
    groups = defaultdict(list)
    for f in K.facets:
        groups[find(f[0])].append(f)
    comps = [SimplicialComplex(frozenset(v for s in fs for v in s), tuple(fs)) for fs in groups.values()]
    comps.sort(key=lambda c: vertex_key(c.sorted_vertices()[0]))
    return comps


def is_connected(K: SimplicialComplex) -> bool:
    return len(connected_components(K)) == 1


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(K.f_vector()))


def full_subcomplex(K: SimplicialComplex, vertex_subset: Iterable[Vertex]) -> SimplicialComplex:
    """Induced subcomplex on a vertex subset."""
    S = set(vertex_subset)
    cands = []
    for f in K.facets:
        g = tuple(v for v in f if v in S)
        if g:
            cands.append(g)
    reduced = _antichain(cands)
    return SimplicialComplex(frozenset(v for s in reduced for v in s), reduced)


def star(K: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    if v not in K.vertices:
        raise ComplexError(f"unknown vertex {v!r}")
    facets = tuple(f for f in K.facets if v in f)
    return SimplicialComplex(frozenset(x for f in facets for x in f), facets)


def link(K: SimplicialComplex, v: Vertex) -> SimplicialComplex:
    st = star(K, v)
    return SimplicialComplex.from_faces(f for f in st.faces if v not in f)


def barycentric_subdivision(K: SimplicialComplex) -> tuple[SimplicialComplex, dict]:
    """Vertices of Sd(K) are the faces of K; simplices are chains under inclusion.

    The returned carrier maps each new vertex to the face of K it subdivides
    (which is the vertex token itself).
    """
    if K.is_empty:
        raise ComplexError("cannot subdivide the empty complex")
    chains = set()
    for f in K.facets:
        for order in permutations(f):
            chain = [tuple(sorted(order[:k], key=vertex_key)) for k in range(1, len(f) + 1)]
            chains.add(tuple(sorted(chain, key=vertex_key)))
    facets = tuple(sorted(chains, key=simplex_key))
    sd = SimplicialComplex(frozenset(K.faces), facets)
    return sd, {face: face for face in K.faces}


def fresh_vertex(K: SimplicialComplex, hint: str = "apex", avoid: Iterable = ()) -> Vertex:
    taken = set(K.vertices) | set(avoid)
    if all(isinstance(v, int) and not isinstance(v, bool) for v in taken):
        return max(taken, default=-1) + 1
    i = 0
    while f"{hint}{i}" in taken:
        i += 1
    return f"{hint}{i}"


def cone(K: SimplicialComplex, apex: Vertex) -> SimplicialComplex:
    if apex in K.vertices:
        raise ComplexError(f"apex {apex!r} collides with an existing vertex")
    if K.is_empty:
        return SimplicialComplex.from_facets([[apex]])
    return SimplicialComplex.from_facets([list(f) + [apex] for f in K.facets])


def suspension(K: SimplicialComplex, apexes: tuple | None = None) -> SimplicialComplex:
    if apexes is None:
        a = fresh_vertex(K, "s")
        b = fresh_vertex(K, "s", avoid=[a])
        apexes = (a, b)
    a, b = apexes
    if a == b:
        raise ComplexError("suspension apexes must differ")
    return union(cone(K, a), cone(K, b))


def _edge_distance_at_most_two(K: SimplicialComplex, u, v) -> bool:
    nbrs = defaultdict(set)
    for e in K.faces_of_dim(1):
        nbrs[e[0]].add(e[1])
        nbrs[e[1]].add(e[0])
    return v in nbrs[u] or bool(nbrs[u] & nbrs[v])


def quotient(K: SimplicialComplex, identification: Iterable[Iterable[Vertex]] | Mapping) -> SimplicialComplex:
    """Identify vertices along a partition and return the image complex.

    Each class is represented by its least vertex.  Members of one class must
    lie at edge distance at least 3 (disjoint closed stars); otherwise a
    simplex collapses or the image is not the topological quotient, and a
    :class:`NotSimplicialError` asks for a barycentric subdivision first.
    """
    if isinstance(identification, Mapping):
        blocks = defaultdict(list)
        for v, c in identification.items():
            blocks[c].append(v)
        classes = list(blocks.values())
    else:
        classes = [list(c) for c in identification]
    rep = {v: v for v in K.vertices}
    for cls in classes:
        cls = sorted(cls, key=vertex_key)
        for v in cls:
            if v not in K.vertices:
                raise ComplexError(f"unknown vertex {v!r} in identification")
            rep[v] = cls[0]
    for f in K.faces_of_dim(1):
        if rep[f[0]] == rep[f[1]]:
            raise NotSimplicialError(f"edge {f!r} collapses under the identification; subdivide first")
    for cls in classes:
        for u, v in combinations(cls, 2):
            if _edge_distance_at_most_two(K, u, v):
                raise NotSimplicialError(
                    f"vertices {u!r} and {v!r} have overlapping stars; subdivide first")
    return SimplicialComplex.from_facets([[rep[v] for v in f] for f in K.facets])


def relabel(K: SimplicialComplex, mapping: Mapping) -> SimplicialComplex:
    """Apply an injective vertex renaming."""
    if len({mapping[v] for v in K.vertices}) != len(K.vertices):
        raise ComplexError("relabelling is not injective")
    return SimplicialComplex.from_facets([[mapping[v] for v in f] for f in K.facets])


def canonical_relabel(K: SimplicialComplex) -> tuple[SimplicialComplex, dict]:
    """Rename vertices to 0..n-1 in canonical order."""
    mapping = {v: i for i, v in enumerate(K.sorted_vertices())}
    return relabel(K, mapping), mapping


def image_complex(K: SimplicialComplex, vmap: Mapping, allow_degenerate: bool = False) -> SimplicialComplex:
    out = []
    for f in K.facets:
        img = [vmap[v] for v in f]
        if len(set(img)) != len(img) and not allow_degenerate:
            raise NotSimplicialError(f"simplex {f!r} degenerates under the vertex map")
        out.append(set(img))
    return SimplicialComplex.from_facets(out)


def is_simplicial_map(source: SimplicialComplex, target: SimplicialComplex, vmap: Mapping,
                      allow_degenerate: bool = False) -> bool:
    if any(v not in vmap for v in source.vertices):
        return False
    for f in source.facets:
        img = [vmap[v] for v in f]
        if len(set(img)) != len(img) and not allow_degenerate:
            return False
        if tuple(sorted(set(img), key=vertex_key)) not in target.faces:
            return False
    return True


def find_isomorphism(A: SimplicialComplex, B: SimplicialComplex) -> dict | None:
    """Search for a simplicial isomorphism A -> B by backtracking over vertex bijections."""
    if A.f_vector() != B.f_vector() or len(A.vertices) != len(B.vertices):
        return None

    def profile(K, v):
        return tuple(sorted(len(f) for f in K.faces if v in f))

    pa = {v: profile(A, v) for v in A.vertices}
    pb = {v: profile(B, v) for v in B.vertices}
    if sorted(pa.values()) != sorted(pb.values()):
        return None
    order = A.sorted_vertices()
    pos = {v: i for i, v in enumerate(order)}
    faces_by_vertex = defaultdict(list)
    for f in A.faces:
        last = max(f, key=pos.__getitem__)
        faces_by_vertex[last].append(f)
    bverts = B.sorted_vertices()
    assign: dict = {}
    used: set = set()

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in bverts:
            if w in used or pa[v] != pb[w]:
                continue
            assign[v] = w
            ok = all(tuple(sorted((assign[x] for x in f), key=vertex_key)) in B.faces
                     for f in faces_by_vertex[v])
            if ok:
                used.add(w)
                if extend(i + 1):
                    return True
                used.discard(w)
            del assign[v]
        return False

    return dict(assign) if extend(0) else None


def token_str(v) -> str:
    """Stable printable name for a vertex token."""
    if isinstance(v, tuple):
        return "(" + ",".join(token_str(x) for x in v) + ")"
    return str(v)

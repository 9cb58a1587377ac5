"""Explicit complexes and good covers: spheres, bouquets, torus, projective plane, Klein bottle."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .bounds import bouquet_ct
from .complex import (
    NotSimplicialError,
    SimplicialComplex,
    barycentric_subdivision,
    canonical_relabel,
    connected_components,
    make_complex,
    quotient,
    vertex_key,
)
from .covers import Cover, dual_vertex_cover, polygonal_dual_cover, verify_good_cover


class ConstructionError(RuntimeError):
    pass


@dataclass
class GalleryEntry:
    name: str
    complex: SimplicialComplex
    cover: Cover | None
    expected: dict = field(default_factory=dict)
    source: SimplicialComplex | None = None


def sphere(m: int) -> GalleryEntry:
    """Boundary of the (m+1)-simplex covered by its m+2 facets."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    verts = list(range(m + 2))
    facets = [[v for v in verts if v != w] for w in verts]
    K = make_complex(facets)
    cover = Cover(K, tuple((f"F{w}", make_complex([f])) for w, f in zip(verts, facets)))
    betti = [2] if m == 0 else [1] + [0] * (m - 1) + [1]
    return GalleryEntry(f"sphere-{m}", K, cover,
                        {"betti_Q": betti, "betti_Z2": betti, "cover_size": m + 2, "verdict": "good"})


# --- bouquets of circles -------------------------------------------------------

def _path_edges(points):
    return [tuple(sorted((points[i], points[i + 1]))) for i in range(len(points) - 1)]


def _bouquet_elements(m: int) -> dict:
    side = m + 1
    elements = {
        "X1": _path_edges([(x, 0) for x in range(side + 1)]),
        "X2": _path_edges([(0, y) for y in range(side + 1)]),
        "X3": _path_edges([(side - t, t) for t in range(side + 1)]),
    }
    for k in range(1, m + 1):
        corner = side - k
        horizontal = [(x, k) for x in range(corner + 1)]
        vertical = [(corner, y) for y in range(k, -1, -1)]
        elements[f"L{k}"] = _path_edges(horizontal) + _path_edges(vertical)
    return elements


def _deletion_candidates(m: int, k: int) -> list:
    corner = m + 1 - k
    horizontal = _path_edges([(x, k) for x in range(corner + 1)])
    vertical = _path_edges([(corner, y) for y in range(0, k + 1)])
    return horizontal + vertical


def _graph_complex(edge_sets) -> SimplicialComplex:
    return make_complex([list(e) for es in edge_sets for e in es])


def _bouquet_cover(elements: dict) -> Cover:
    K = _graph_complex(elements.values())
    return Cover(K, tuple((name, make_complex([list(e) for e in es])) for name, es in elements.items()))


def _cycle_rank(K: SimplicialComplex) -> int:
    return len(K.faces_of_dim(1)) - len(K.vertices) + len(connected_components(K))


def bouquet_graph(h: int) -> GalleryEntry:
    """Planar graph with b_1 = h covered by bouquet_ct(h) paths.

    The outer triangle has legs on the axes and hypotenuse x + y = m + 1;
    the L-shaped line L_k runs from (0, k) to the hypotenuse and down to the
    x-axis.  Surplus cycles are removed by deleting unit segments, innermost L
    first, at most one per line and pass.
    """
    if h < 1:
        raise ValueError("h must be at least 1")
    n = bouquet_ct(h)
    m = n - 3
    elements = _bouquet_elements(m)
    to_delete = comb(n - 1, 2) - h
    while to_delete:
        progressed = False
        for k in range(m, 0, -1):
            if not to_delete:
                break
            name = f"L{k}"
            for e in _deletion_candidates(m, k):
                if e not in elements[name]:
                    continue
                trial = dict(elements)
                trial[name] = [x for x in elements[name] if x != e]
                if not trial[name]:
                    continue
                L = make_complex([list(x) for x in trial[name]])
                cover = _bouquet_cover(trial)
                if len(connected_components(L)) != 1 or len(connected_components(cover.ambient)) != 1:
                    continue
                if _cycle_rank(cover.ambient) != _cycle_rank(_bouquet_cover(elements).ambient) - 1:
                    continue
                if not verify_good_cover(cover).good:
                    continue
                elements = trial
                to_delete -= 1
                progressed = True
                break
        if not progressed and to_delete:
            raise ConstructionError(f"deletion scan exhausted before reaching b1 = {h}")
    cover = _bouquet_cover(elements)
    return GalleryEntry(f"bouquet-{h}", cover.ambient, cover,
                        {"betti_Q": [1, h], "betti_Z2": [1, h], "cover_size": n, "verdict": "good"})


# --- torus --------------------------------------------------------------------

def torus_k7_triangulation() -> SimplicialComplex:
    tris = [[i % 7, (i + 1) % 7, (i + 3) % 7] for i in range(7)]
    tris += [[i % 7, (i + 2) % 7, (i + 3) % 7] for i in range(7)]
    return make_complex(tris)


def torus_k7() -> GalleryEntry:
    """Seven-vertex torus; its dual blocks are the seven hexagonal countries."""
    K = torus_k7_triangulation()
    cover = dual_vertex_cover(K)
    return GalleryEntry("torus-k7", cover.ambient, cover,
                        {"betti_Q": [1, 2, 1], "betti_Z2": [1, 2, 1], "cover_size": 7, "verdict": "good"},
                        source=K)


# --- projective plane ---------------------------------------------------------
# numbers a + b*phi in Z[phi] are pairs (a, b), with phi^2 = phi + 1

def _phi_mul(x, y):
    a, b = x
    c, d = y
    return (a * c + b * d, a * d + b * c + b * d)


def _phi_sq_dist(p, q):
    total = (0, 0)
    for (a, b), (c, d) in zip(p, q):
        diff = (a - c, b - d)
        sq = _phi_mul(diff, diff)
        total = (total[0] + sq[0], total[1] + sq[1])
    return total


def icosahedron():
    """Vertices (exact, in Z[phi]^3), edges and triangles of the regular icosahedron."""
    verts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = [(0, 0), (s1, 0), (0, s2)]
            for r in range(3):
                verts.append(tuple(base[(i - r) % 3] for i in range(3)))
    edges = {frozenset((i, j)) for i, j in combinations(range(12), 2)
             if _phi_sq_dist(verts[i], verts[j]) == (4, 0)}
    tris = [t for t in combinations(range(12), 3)
            if all(frozenset(p) in edges for p in combinations(t, 2))]
    return verts, edges, tris


def dodecahedron_triangulated():
    """Dodecahedron boundary with each pentagon coned from a central vertex.

    Returns (complex, antipodal vertex map, pentagon subcomplexes keyed by centre).
    Centres are the icosahedron vertices 0..11; dodecahedron vertices are
    12 + index of the dual icosahedron triangle.
    """
    verts, edges, tris = icosahedron()
    neg = {i: verts.index(tuple((-a, -b) for a, b in verts[i])) for i in range(12)}
    tri_index = {frozenset(t): k for k, t in enumerate(tris)}
    anti = dict(neg)
    for k, t in enumerate(tris):
        anti[12 + k] = 12 + tri_index[frozenset(neg[v] for v in t)]
    facets = []
    pentagons = {}
    for v in range(12):
        around = [k for k, t in enumerate(tris) if v in t]
        cells = []
        for a, b in combinations(around, 2):
            if len(set(tris[a]) & set(tris[b])) == 2:
                cells.append([v, 12 + a, 12 + b])
        facets += cells
        pentagons[v] = make_complex(cells)
    return make_complex(facets), anti, pentagons


def _antipodal_quotient(K, anti, pieces):
    """Quotient by a free involution, subdividing until the identification is simplicial."""
    while True:
        classes = {frozenset((v, anti[v])) for v in K.vertices}
        try:
            Q = quotient(K, classes)
        except NotSimplicialError:
            sd, _ = barycentric_subdivision(K)
            anti = {f: tuple(sorted((anti[v] for v in f), key=vertex_key)) for f in sd.vertices}
            pieces = {n: barycentric_subdivision(P)[0] for n, P in pieces.items()}
            K = sd
            continue
        rep = {}
        for c in classes:
            r = min(c, key=vertex_key)
            for v in c:
                rep[v] = r
        images = {n: make_complex([[rep[v] for v in f] for f in P.facets]) for n, P in pieces.items()}
        return Q, images


def rp2_hemidodec() -> GalleryEntry:
    """Hemi-dodecahedron: the antipodal quotient of the dodecahedron, six pentagonal regions."""
    K, anti, pentagons = dodecahedron_triangulated()
    Q, images = _antipodal_quotient(K, anti, pentagons)
    relabelled, mapping = canonical_relabel(Q)
    seen = []
    elements = []
    for centre in sorted(images):
        P = images[centre]
        if P in seen:
            continue
        seen.append(P)
        elements.append((f"P{len(elements)}",
                         make_complex([[mapping[v] for v in f] for f in P.facets])))
    cover = Cover(relabelled, tuple(elements))
    return GalleryEntry("rp2", relabelled, cover,
                        {"betti_Q": [1, 0, 0], "betti_Z2": [1, 1, 1], "cover_size": 6, "verdict": "good"})


# --- Klein bottle -------------------------------------------------------------
# Map layout: a five-country sphere (0 exterior, 1 top, 2 bottom,
# 3/4 the right wedge above/below the midline) with ring countries 5, 6, 7
# drawn around two triple points.  The dual cell structure below has one
# vertex per country; ring annuli are given by arc start angles (degrees,
# counter-clockwise) of the outer countries and of the ring sectors.

SPHERE_CELLS = [
    [0, 1, 3],      # corner (4, 3)
    [0, 2, 4],      # corner (4, 0)
    [1, 3, 4, 2],   # four countries meet at (2, 1.5)
]

LEFT_RING = {  # around the 0/1/2 triple point
    "outer": [(1, 0), (0, 149), (2, 211)],
    "inner": [(6, -90), (7, 45), (5, 135)],
}
RIGHT_RING = {  # around the 0/3/4 triple point
    "outer": [(0, -73), (3, 73), (4, 180)],
    "inner": [(6, -90), (7, 45), (5, 135)],
}


def _owner(arcs, angle):
    norm = sorted(((a % 360, lab) for lab, a in arcs))
    owner = norm[-1][1]
    for start, lab in norm:
        if start <= angle % 360:
            owner = lab
    return owner


def annulus_triangles(outer, inner) -> list:
    """Triangulate the annulus between a ring of outer countries and inner sectors.

    Every boundary event (an outer country change or an inner sector change)
    is a point where three countries meet; it becomes one dual triangle.
    """
    events = sorted({a % 360 for _, a in outer} | {a % 360 for _, a in inner})
    tris = []
    for ang in events:
        before = (ang - 1e-6) % 360
        cell = {_owner(outer, ang), _owner(outer, before), _owner(inner, ang), _owner(inner, before)}
        if len(cell) != 3:
            raise ConstructionError(f"simultaneous boundary events at angle {ang}")
        tris.append(sorted(cell))
    return tris


def klein_cells() -> list:
    cells = [list(c) for c in SPHERE_CELLS]
    for ring in (LEFT_RING, RIGHT_RING):
        cells += annulus_triangles(ring["outer"], ring["inner"])
    return cells


def klein_8() -> GalleryEntry:
    """Eight-country map on the Klein bottle; the rings share labels, which glues the two holes."""
    cover = polygonal_dual_cover(klein_cells())
    return GalleryEntry("klein8", cover.ambient, cover,
                        {"betti_Q": [1, 1, 0], "betti_Z2": [1, 2, 1], "cover_size": 8, "verdict": "good",
                         "disjoint_pairs": [("7", "2"), ("7", "4"), ("3", "6")]})


def sphere_five_regions() -> GalleryEntry:
    """The five-country sphere before the rings are added (triple points kept as triangles)."""
    cover = polygonal_dual_cover([list(c) for c in SPHERE_CELLS] + [[0, 1, 2], [0, 3, 4]])
    return GalleryEntry("sphere5", cover.ambient, cover,
                        {"betti_Q": [1, 0, 1], "betti_Z2": [1, 0, 1], "cover_size": 5, "verdict": "good"})


NAMES = ("sphere-m", "bouquet-h", "torus-k7", "rp2", "klein8")


def build(name: str) -> GalleryEntry:
    if name.startswith("sphere-"):
        return sphere(int(name.split("-", 1)[1]))
    if name.startswith("bouquet-"):
        return bouquet_graph(int(name.split("-", 1)[1]))
    builders = {"torus-k7": torus_k7, "rp2": rp2_hemidodec, "klein8": klein_8}
    if name not in builders:
        raise KeyError(f"unknown gallery entry {name!r}; known: {', '.join(NAMES)}")
    return builders[name]()

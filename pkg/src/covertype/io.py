"""JSON encoding of complexes and covers."""
from __future__ import annotations

import json

from .complex import ComplexError, SimplicialComplex, make_complex, token_str
from .covers import Cover

SCHEMA = 1


def _encode_token(v):
    return v if isinstance(v, (int, str)) and not isinstance(v, bool) else token_str(v)


def _token_order(t):
    return (0, t) if isinstance(t, int) else (1, t)


def _encode_simplices(simplices) -> list:
    out = [sorted((_encode_token(v) for v in s), key=_token_order) for s in simplices]
    return sorted(out, key=lambda s: (len(s), [_token_order(t) for t in s]))


def complex_to_json(K: SimplicialComplex) -> dict:
    """Canonical form: tuple tokens become strings, everything sorted by the encoded tokens."""
    return {"vertices": sorted((_encode_token(v) for v in K.vertices), key=_token_order),
            "maximal_simplices": _encode_simplices(K.facets)}


def _check_token(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ComplexError(f"vertex tokens must be integers or strings, got {v!r}")
    return v


def complex_from_json(data) -> SimplicialComplex:
    if isinstance(data, dict) and "maximal_simplices" not in data:
        for key in ("complex", "ambient"):
            if key in data:
                return complex_from_json(data[key])
    if not isinstance(data, dict) or "maximal_simplices" not in data:
        raise ComplexError('complex JSON needs a "maximal_simplices" list')
    simplices = [[_check_token(v) for v in s] for s in data["maximal_simplices"]]
    universe = [_check_token(v) for v in data.get("vertices", [])] or None
    return make_complex(simplices, universe)


def cover_to_json(cover: Cover) -> dict:
    return {"ambient": complex_to_json(cover.ambient),
            "elements": [{"name": n, "maximal_simplices": _encode_simplices(X.facets)}
                         for n, X in cover.elements]}


def cover_from_json(data) -> Cover:
    if isinstance(data, dict) and "elements" not in data and isinstance(data.get("cover"), dict):
        data = data["cover"]
    if not isinstance(data, dict) or "ambient" not in data or "elements" not in data:
        raise ComplexError('cover JSON needs "ambient" and "elements"')
    ambient = complex_from_json(data["ambient"])
    elements = []
    for i, el in enumerate(data["elements"]):
        name = str(el.get("name", f"U{i}"))
        elements.append((name, make_complex([[_check_token(v) for v in s] for s in el["maximal_simplices"]])))
    return Cover(ambient, tuple(elements))


def dumps(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=False, separators=(",", ":"))

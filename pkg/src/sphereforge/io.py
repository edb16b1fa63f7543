"""JSON (and OFF) serialization for every artifact the tools exchange.

All output is sorted and deterministic: identical inputs produce
byte-identical files.  Rationals serialize as "p/q" strings; vertex
labels as "a:<path>:<pos>", "h:<key>", "c", "r:<int>".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .carvefill import FillManifest
from .complexes import (
    FreeSumCell,
    PolyComplex,
    Simplex,
    SimplicialComplex,
    VertexId,
)
from .constructions import ConstructionReport
from .errors import InputParseError
from .geometry import HullFacet, Point, RegularAztecLift, Subdivision
from .grid import GridBox, GridRegion
from .topology import ShellingOrder, TopologyCertificate


def _labels(verts) -> list[str]:
    return [v.label for v in sorted(verts, key=lambda v: v.sort_key)]


def _parse_verts(labels) -> list[VertexId]:
    try:
        return [VertexId.from_label(s) for s in labels]
    except Exception as exc:
        raise InputParseError(f"bad vertex label list {labels!r}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputParseError(f"cannot read JSON from {path}: {exc}") from exc


def write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# complexes


def complex_to_obj(x: "SimplicialComplex | PolyComplex") -> dict:
    if isinstance(x, SimplicialComplex):
        cells = [{"t": "s", "v": _labels(f.verts)} for f in x.sorted_facets]
        return {"dim": x.dim, "cells": cells}
    cells = [{"t": "s", "v": _labels(f.verts)} for f in x.sorted_simplex_cells]
    cells.extend(
        {"t": "fs", "f": _labels(c.f_part.verts), "g": _labels(c.g_part.verts)}
        for c in x.sorted_free_cells
    )
    return {"dim": x.dim, "cells": cells}


def complex_from_obj(obj: dict) -> "SimplicialComplex | PolyComplex":
    try:
        cells = obj["cells"]
        simplices, free = [], []
        for c in cells:
            if c["t"] == "s":
                simplices.append(Simplex(_parse_verts(c["v"])))
            elif c["t"] == "fs":
                free.append(
                    FreeSumCell(Simplex(_parse_verts(c["f"])), Simplex(_parse_verts(c["g"])))
                )
            else:
                raise InputParseError(f"unknown cell type {c.get('t')!r}")
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"malformed complex object: {exc}") from exc
    if free:
        return PolyComplex.from_cells(simplices, free)
    return SimplicialComplex.from_facets(simplices)


def save_complex(path: str, x) -> None:
    write_text(path, dumps(complex_to_obj(x)))


def load_complex(path: str) -> "SimplicialComplex | PolyComplex":
    return complex_from_obj(_load_json(path))


def load_simplicial(path: str) -> SimplicialComplex:
    x = load_complex(path)
    if not isinstance(x, SimplicialComplex):
        raise InputParseError(
            f"{path} holds free-sum cells; realize it into a triangulation first"
        )
    return x


# --------------------------------------------------------------------------
# regions


def region_to_obj(r: GridRegion) -> dict:
    return {"box": list(r.box.dims), "cells": [list(c) for c in r.sorted_cells]}


def region_from_obj(obj: dict) -> GridRegion:
    try:
        return GridRegion.of(GridBox(tuple(obj["box"])), obj["cells"])
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"malformed region object: {exc}") from exc


# --------------------------------------------------------------------------
# manifests


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(key)


def _key_parse(text: str):
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    return int(text)


def manifest_to_obj(m: FillManifest) -> dict:
    holes = []
    for key in m.hole_keys:
        holes.append(
            {
                "key": _key_str(key),
                "apex": m.apex_of_ball[key].label,
                "cells": [
                    {"f": _labels(c.f_part.verts), "g": _labels(c.g_part.verts)}
                    for c in m.free_cells_by_ball[key]
                ],
            }
        )
    return {"dim": m.result.dim, "complex": complex_to_obj(m.result), "holes": holes}


def manifest_from_obj(obj: dict) -> FillManifest:
    try:
        result = complex_from_obj(obj["complex"])
        if isinstance(result, SimplicialComplex):
            result = PolyComplex.from_simplicial(result)
        keys, by_ball, apex_of = [], {}, {}
        for hole in obj["holes"]:
            key = _key_parse(hole["key"])
            keys.append(key)
            apex_of[key] = VertexId.from_label(hole["apex"])
            by_ball[key] = tuple(
                FreeSumCell(Simplex(_parse_verts(c["f"])), Simplex(_parse_verts(c["g"])))
                for c in hole["cells"]
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputParseError(f"malformed manifest: {exc}") from exc
    return FillManifest(
        result=result,
        hole_keys=tuple(keys),
        free_cells_by_ball=by_ball,
        apex_of_ball=apex_of,
    )


def save_manifest(path: str, m: FillManifest) -> None:
    write_text(path, dumps(manifest_to_obj(m)))


def load_manifest(path: str) -> FillManifest:
    return manifest_from_obj(_load_json(path))


# --------------------------------------------------------------------------
# reports and certificates


def report_to_obj(r: ConstructionReport) -> dict:
    return {
        "construction": r.name,
        "vertex_count": r.vertex_count,
        "free_cell_count": r.free_cell_count,
        "simplex_cell_count": r.simplex_cell_count,
        "per_hole_counts": {_key_str(k): v for k, v in sorted(r.per_hole_counts.items())},
        "claimed_bounds": {k: v for k, v in sorted(r.claimed_bounds.items())},
        "flags": _jsonable(r.flags),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {_key_str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def certificate_to_obj(c: TopologyCertificate) -> dict:
    return {
        "kind": c.kind,
        "dim": c.dim,
        "betti_gf2": list(c.betti) if c.betti is not None else None,
        "pseudomanifold": c.pseudomanifold,
        "closed": c.closed,
        "dual_connected": c.dual_connected,
        "links_verified": c.links_verified,
    }


# --------------------------------------------------------------------------
# shelling orders


def order_to_obj(s: ShellingOrder) -> dict:
    return {"order": [_labels(f.verts) for f in s.order]}


def order_from_obj(obj: dict) -> ShellingOrder:
    try:
        return ShellingOrder(tuple(Simplex(_parse_verts(v)) for v in obj["order"]))
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"malformed shelling order: {exc}") from exc


def load_order(path: str) -> ShellingOrder:
    return order_from_obj(_load_json(path))


# --------------------------------------------------------------------------
# lifts


def _frac_str(f: Fraction) -> str:
    return str(Fraction(f))


def _frac_parse(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"bad rational {s!r}") from exc


def _points_to_obj(points) -> list:
    return [
        [v.label, [_frac_str(c) for c in p]]
        for v, p in sorted(points, key=lambda vp: vp[0].sort_key)
    ]


def _points_from_obj(obj) -> list[tuple[VertexId, Point]]:
    return [
        (VertexId.from_label(label), tuple(_frac_parse(c) for c in coords))
        for label, coords in obj
    ]


def _heights_to_obj(heights) -> dict:
    return {v.label: _frac_str(h) for v, h in sorted(heights.items(), key=lambda kv: kv[0].sort_key)}


def _heights_from_obj(obj) -> dict[VertexId, Fraction]:
    return {VertexId.from_label(k): _frac_parse(v) for k, v in obj.items()}


def lift_to_obj(lift: RegularAztecLift) -> dict:
    return {
        "kind": "aztec",
        "k": lift.k,
        "l": lift.l,
        "eps": _frac_str(lift.eps),
        "points": _points_to_obj(lift.config.points),
        "heights": _heights_to_obj(lift.heights),
        "coarse": _heights_to_obj(lift.coarse),
        "fine": _heights_to_obj(lift.fine),
        "subdivision": [_labels(cell) for cell in lift.subdivision.cells],
    }


def save_lift(path: str, lift: RegularAztecLift) -> None:
    write_text(path, dumps(lift_to_obj(lift)))


def lift_data_from_obj(obj: dict) -> dict:
    """Decode the parts of a lift file needed by the verifier and hull."""
    try:
        points = _points_from_obj(obj["points"])
        heights = _heights_from_obj(obj["heights"])
        sub = Subdivision.of(
            [frozenset(_parse_verts(cell)) for cell in obj["subdivision"]]
        )
        out = {
            "points": points,
            "heights": heights,
            "subdivision": sub,
            "eps": _frac_parse(obj["eps"]),
            "kind": obj.get("kind"),
            "k": obj.get("k"),
            "l": obj.get("l"),
        }
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"malformed lift file: {exc}") from exc
    return out


def load_lift_data(path: str) -> dict:
    return lift_data_from_obj(_load_json(path))


def hull_to_obj(facets: list[HullFacet], kinds: list[str]) -> dict:
    return {
        "facets": [
            {
                "v": _labels(f.vertices),
                "normal": [str(c) for c in f.normal],
                "offset": str(f.offset),
                "kind": kind,
            }
            for f, kind in zip(facets, kinds)
        ]
    }


# --------------------------------------------------------------------------
# OFF export


def off_export(
    x: SimplicialComplex, coords: dict[VertexId, Point]
) -> tuple[str, dict]:
    """Boundary surface of a 3-complex as an OFF mesh.

    Vertex coordinates are decimal approximations (lossy); the returned
    sidecar object records the exact rationals.
    """
    from .complexes import boundary_complex

    surface = x if x.dim == 2 else boundary_complex(x)
    if surface.is_void:
        raise InputParseError("complex is closed; no boundary surface to export")
    verts = surface.vertices
    missing = [v for v in verts if v not in coords]
    if missing:
        raise InputParseError(f"no coordinates for vertex {missing[0].label}")
    index = {v: i for i, v in enumerate(verts)}
    lines = ["OFF", f"{len(verts)} {surface.n_facets} 0"]
    for v in verts:
        lines.append(" ".join(f"{float(c):.12g}" for c in coords[v][:3]))
    for f in surface.sorted_facets:
        lines.append("3 " + " ".join(str(index[v]) for v in f.verts))
    sidecar = {
        "lossy": True,
        "vertices": [
            [v.label, [_frac_str(c) for c in coords[v][:3]]] for v in verts
        ],
        "faces": [_labels(f.verts) for f in surface.sorted_facets],
    }
    return "\n".join(lines) + "\n", sidecar

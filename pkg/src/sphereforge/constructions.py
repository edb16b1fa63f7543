"""End-to-end assembly of the named sphere and ball constructions.

All of them carve balls out of a host triangulation (a join of paths or
the boundary of an even-dimensional cyclic polytope), fill the balls
with free sums of two simplices, and for the grid-based sphere variants
close the boundary with a cone from a fresh apex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Hashable

from .carvefill import (
    BallInComplex,
    CompatibleFamily,
    FillManifest,
    carve_and_fill,
    is_compatible,
    missing_face,
    realize,
)
from .complexes import (
    PolyComplex,
    Simplex,
    SimplicialComplex,
    VertexId,
    boundary_complex,
)
from .errors import DegenerateInput, InternalInvariantViolation
from .grid import (
    GridBox,
    GridRegion,
    JoinOfPaths,
    aztec_crosspolytope,
    band_cell_order,
    boundary_members,
    diagonal_band,
    ehrhart_crosspolytope,
    is_grid_starconvex,
    join_of_paths,
)
from .sampling import choice_vector
from .topology import ShellingOrder, certify, verify_shelling


@dataclass(frozen=True)
class ConstructionReport:
    """A built manifest plus the exact per-instance quantities."""

    name: str
    manifest: FillManifest
    vertex_count: int
    free_cell_count: int
    simplex_cell_count: int
    per_hole_counts: dict[Hashable, int]
    claimed_bounds: dict[str, float]
    flags: dict = field(default_factory=dict)


def _report(name, manifest, per_hole, claimed, flags=None) -> ConstructionReport:
    total = sum(per_hole.values())
    if total != manifest.n_free_cells:
        raise InternalInvariantViolation("per-hole counts disagree with manifest")
    return ConstructionReport(
        name=name,
        manifest=manifest,
        vertex_count=len(manifest.result.vertex_set),
        free_cell_count=manifest.n_free_cells,
        simplex_cell_count=len(manifest.result.simplex_cells),
        per_hole_counts=dict(per_hole),
        claimed_bounds=claimed,
        flags=flags or {},
    )


def _close_with_cone(host: SimplicialComplex, manifest: FillManifest) -> FillManifest:
    """Cone the host boundary to a fresh apex, closing the ball to a sphere."""
    bd = boundary_complex(host)
    apex = VertexId.cone()
    cones = [t.with_vertex(apex) for t in bd.facets]
    result = PolyComplex.from_cells(
        list(manifest.result.simplex_cells) + cones, manifest.result.free_cells
    )
    return FillManifest(
        result=result,
        hole_keys=manifest.hole_keys,
        free_cells_by_ball=manifest.free_cells_by_ball,
        apex_of_ball=manifest.apex_of_ball,
    )


def _band_regions(box: GridBox, width: int) -> list[tuple[int, GridRegion]]:
    """Diagonal bands of constant floor(sum/width), lowest first.

    Bands with fewer than two cells cannot be carved and are skipped; at
    most the single top-corner cell is affected.
    """
    d = box.d
    total = sum(box.dims)
    out = []
    for q in range(total // width + 1):
        m1 = max(d, q * width)
        m2 = min(total, q * width + width - 1)
        if m1 > m2:
            continue
        region = diagonal_band(box, m1, m2)
        if len(region) >= 2:
            out.append((q, region))
    return out


def _extreme_members(box: GridBox, region: GridRegion, width: int) -> list[Simplex]:
    """Cells on the extreme diagonals of a band whose missing face stays
    off the grid boundary.

    Bottom cells (index sum divisible by the width) need all upper
    neighbors inside the box; top cells (sum = width-1 mod width) need all
    lower neighbors inside.  Each then has exactly d boundary facets and
    its fill cell is a free sum with 2d+1 vertices.
    """
    from .grid import cell_simplex

    members = []
    for c in sorted(region.cells):
        s = sum(c)
        if s % width == 0 and all(i + 1 <= n for i, n in zip(c, box.dims)):
            members.append(cell_simplex(c))
        elif s % width == width - 1 and all(i >= 2 for i in c):
            members.append(cell_simplex(c))
    return members


def _grid_band_families(
    host: JoinOfPaths, width: int
) -> tuple[list[int], list[BallInComplex], list[list[Simplex]]]:
    keys, balls, member_lists = [], [], []
    for q, region in _band_regions(host.box, width):
        ball = BallInComplex.of(
            host.complex, [host.facet_of(c) for c in region.cells]
        )
        keys.append(q)
        balls.append(ball)
        member_lists.append(_extreme_members(host.box, region, width))
    return keys, balls, member_lists


def _check_band_balls(keys, balls) -> None:
    for q, ball in zip(keys, balls):
        if not ball.certify_ball().is_ball(ball.dim):
            raise InternalInvariantViolation(f"band {q} is not a ball")


def _assert_bipyramids(manifest: FillManifest) -> None:
    for cell in manifest.free_cells:
        sizes = sorted((len(cell.f_part), len(cell.g_part)))
        if sizes != [2, 3]:
            raise InternalInvariantViolation(f"cell {cell!r} is not a bipyramid")


def _assert_missing_faces_distinct(manifest: FillManifest) -> None:
    faces = [cell.f_part for cell in manifest.free_cells]
    if len(set(faces)) != len(faces):
        raise InternalInvariantViolation("missing faces collide across holes")


def sample_realization_certificates(
    manifest: FillManifest, count: int, seed: int = 0, expect: str = "sphere"
) -> list[tuple[int, ...]]:
    """Certify deterministic seeded realizations; return the sampled vectors."""
    vectors = []
    expected_dim = manifest.result.dim
    for t in range(count):
        bits = choice_vector(seed, t, manifest.n_free_cells)
        cert = certify(realize(manifest, bits))
        ok = cert.kind == expect and cert.dim == expected_dim
        if not ok:
            raise InternalInvariantViolation(
                f"realization {bits} certified as {cert.kind}({cert.dim}), "
                f"expected {expect}({expected_dim})"
            )
        vectors.append(bits)
    return vectors


def build_holes4(n: int, m: int, check: bool = True) -> ConstructionReport:
    """Width-4 diagonal band holes in the join of two paths, closed to a
    sphere.  Every free cell is a triangular bipyramid with a distinct
    interior missing edge, so all of them triangulate independently."""
    if n < 4 or m < 4:
        raise DegenerateInput("need n, m >= 4")
    host = join_of_paths((n, m))
    keys, balls, member_lists = _grid_band_families(host, 4)
    if check:
        _check_band_balls(keys, balls)
    fams = [
        CompatibleFamily.of(ball, members)
        for ball, members in zip(balls, member_lists)
    ]
    manifest = _close_with_cone(
        host.complex, carve_and_fill(host.complex, fams, keys=keys)
    )
    if check:
        _assert_bipyramids(manifest)
        _assert_missing_faces_distinct(manifest)
    per_hole = {q: len(manifest.free_cells_by_ball[q]) for q in manifest.hole_keys}
    b = manifest.n_free_cells
    claimed = {
        "free_cells": b,
        "free_cells_over_n_squared": b / (n * m),
        "leading_coefficient": 0.5,
    }
    return _report("holes4", manifest, per_hole, claimed)


def build_holes3(n: int, m: int, check: bool = True) -> ConstructionReport:
    """Width-3 band variant: denser candidate families, but the members
    come in pairs sharing a missing edge, so most holes fail the
    compatibility test.  Falls back to the maximal compatible subfamily
    (greedy in lexicographic order) and reports what was dropped."""
    if n < 4 or m < 4:
        raise DegenerateInput("need n, m >= 4")
    host = join_of_paths((n, m))
    keys, balls, member_lists = _grid_band_families(host, 3)
    if check:
        _check_band_balls(keys, balls)
    fams = []
    incompatible = []
    family_sizes = {}
    fallback_sizes = {}
    for q, ball, members in zip(keys, balls, member_lists):
        family_sizes[q] = len(members)
        full = CompatibleFamily.of(ball, members)
        if is_compatible(full):
            fams.append(full)
            fallback_sizes[q] = len(members)
            continue
        incompatible.append(q)
        seen_faces = set()
        kept = []
        bd = ball.boundary
        for mbr in sorted(members):
            f = missing_face(ball, mbr)
            if f in seen_faces or bd.has_face(f):
                continue
            seen_faces.add(f)
            kept.append(mbr)
        fams.append(CompatibleFamily.of(ball, kept))
        fallback_sizes[q] = len(kept)
    manifest = _close_with_cone(
        host.complex, carve_and_fill(host.complex, fams, keys=keys)
    )
    if check:
        _assert_bipyramids(manifest)
        _assert_missing_faces_distinct(manifest)
    per_hole = {q: len(manifest.free_cells_by_ball[q]) for q in manifest.hole_keys}
    b = manifest.n_free_cells
    claimed = {
        "free_cells": b,
        "candidate_cells": sum(family_sizes.values()),
        "free_cells_over_n_squared": b / (n * m),
    }
    flags = {
        "incompatible_holes": incompatible,
        "family_sizes": family_sizes,
        "fallback_sizes": fallback_sizes,
    }
    return _report("holes3", manifest, per_hole, claimed, flags)


def _aztec_regions(d: int, k: int, l: int) -> dict[tuple[int, ...], GridRegion]:
    """One Aztec crosspolytope per k^d subgrid of the (kl)^d grid."""
    shape = aztec_crosspolytope(d, k)
    box = GridBox((k * l,) * d)
    out = {}
    for sub in product(range(l), repeat=d):
        cells = [
            tuple(c + k * off for c, off in zip(cell, sub)) for cell in shape.cells
        ]
        out[tuple(s + 1 for s in sub)] = GridRegion.of(box, cells)
    return out


def _aztec_center(key: tuple[int, ...], k: int) -> tuple[int, ...]:
    return tuple((s - 1) * k + (k + 1) // 2 for s in key)


def build_aztec(k: int, l: int, check: bool = True) -> ConstructionReport:
    """Aztec-diamond holes, one per k x k subgrid of a square grid.

    The holes are grid-starconvex from their centers, so the filled cells
    are genuinely convex pieces; the geometric realization lives in the
    geometry module.  The output is a ball (no closing cone)."""
    if k < 3 or k % 2 == 0 or l < 1:
        raise DegenerateInput("need odd k >= 3 and l >= 1")
    n = k * l + 1
    host = join_of_paths((n, n))
    regions = _aztec_regions(2, k, l)
    keys, fams = [], []
    for key in sorted(regions):
        region = regions[key]
        if check and not is_grid_starconvex(region, _aztec_center(key, k)):
            raise InternalInvariantViolation(f"hole {key} is not starconvex")
        ball = BallInComplex.of(host.complex, [host.facet_of(c) for c in region.cells])
        members = sorted(boundary_members(region, host))
        keys.append(key)
        fams.append(CompatibleFamily.of(ball, members))
    manifest = carve_and_fill(host.complex, fams, keys=keys)
    if check:
        _assert_bipyramids(manifest)
        _assert_missing_faces_distinct(manifest)
        expected = (2 * k - 2) * l * l
        if manifest.n_free_cells != expected:
            raise InternalInvariantViolation(
                f"expected {expected} free cells, got {manifest.n_free_cells}"
            )
    per_hole = {key: len(manifest.free_cells_by_ball[key]) for key in manifest.hole_keys}
    claimed = {
        "free_cells": manifest.n_free_cells,
        "formula_2k_minus_2_times_l_squared": (2 * k - 2) * l * l,
        "point_count": 2 * k * l + 2 + l * l,
    }
    return _report("aztec", manifest, per_hole, claimed)


def _cyclic_host(n: int) -> SimplicialComplex:
    """Boundary of the cyclic 4-polytope on 4n vertices labeled 0..4n-1.

    Facets are unions of two disjoint cyclically adjacent vertex pairs;
    this is the even-dimensional form of Gale's evenness condition."""
    size = 4 * n
    verts = [VertexId.raw(i) for i in range(size)]
    facets = []
    for p in range(size):
        for q in range(p + 2, size):
            if p == 0 and q == size - 1:
                continue
            if (q + 1) % size == p:
                continue
            facets.append(
                Simplex(
                    [verts[p], verts[(p + 1) % size], verts[q], verts[(q + 1) % size]]
                )
            )
    return SimplicialComplex.from_facets(facets)


def _cyclic_hole_facet(n: int, shift: int, cell: tuple[int, int]) -> Simplex:
    size = 4 * n
    i, j = cell
    return Simplex(
        VertexId.raw(v % size)
        for v in (i + shift, i + 1 + shift, j + 2 * n + shift, j + 2 * n + 1 + shift)
    )


def build_cyclic(n: int, check: bool = True) -> ConstructionReport:
    """Band holes in the boundary of the cyclic 4-polytope on 4n vertices.

    Each hole is a rotated copy of a width-4 diagonal band in a chart box
    of (2n-1) x (2n-1) cells; the two chart corner cells that would wrap
    into degenerate vertex sets are exactly the two facets cut away to
    turn the wrap-around band into a ball, and they stay uncarved.  The
    family of a hole consists of all extreme-diagonal cells.  The host is
    already a sphere, so no closing cone is added: the result has exactly
    5n vertices.  The report flags that the customary closed-form count
    for this family is one higher (see flags['vertex_count_note'])."""
    if n < 3:
        raise DegenerateInput("need n >= 3")
    host = _cyclic_host(n)
    box = GridBox((2 * n - 1, 2 * n - 1))
    region = diagonal_band(box, 2 * n - 2, 2 * n + 1)
    cell_order = band_cell_order(region)
    keys, fams = [], []
    covered: set[Simplex] = set()
    for k in range(1, n + 1):
        shift = (2 * k + 2 * n) % (4 * n)
        facet_of = {c: _cyclic_hole_facet(n, shift, c) for c in region.cells}
        ball = BallInComplex.of(host, facet_of.values())
        if check:
            order = ShellingOrder(tuple(facet_of[c] for c in cell_order))
            if not verify_shelling(ball.subcomplex, order):
                raise InternalInvariantViolation(f"hole {k} shelling rejected")
            if not ball.certify_ball().is_ball(3):
                raise InternalInvariantViolation(f"hole {k} is not a ball")
        members = [
            facet_of[c] for c in sorted(region.cells) if sum(c) in (2 * n - 2, 2 * n + 1)
        ]
        keys.append(k)
        fams.append(CompatibleFamily.of(ball, members))
        covered |= ball.ball_facets
    if check and len(host.facets - covered) != 2 * n:
        raise InternalInvariantViolation(
            "expected exactly two uncarved facets per hole class"
        )
    manifest = carve_and_fill(host, fams, keys=keys)
    if check:
        _assert_missing_faces_distinct(manifest)
    per_hole = {k: len(manifest.free_cells_by_ball[k]) for k in manifest.hole_keys}
    b = manifest.n_free_cells
    claimed = {
        "free_cells": b,
        "free_cells_over_n_squared": b / (n * n),
        "leading_coefficient": 4.0,
    }
    flags = {
        "vertex_count_note": (
            f"carving {n} holes from the 4n-vertex host yields {5 * n} vertices; "
            f"the customary closed form for this family is {5 * n + 1}"
        ),
        "vertex_count_alternatives": [5 * n, 5 * n + 1],
    }
    return _report("cyclic", manifest, per_hole, claimed, flags)


def build_highd(d: int, n: int, check: bool = True) -> ConstructionReport:
    """Width-(d+2) band holes in the join of d paths, closed to a sphere
    of dimension 2d-1.  Every free cell is the free sum of a (d-1)-simplex
    and a d-simplex, with 2d+1 vertices."""
    if not 2 <= d <= 4:
        raise DegenerateInput("need 2 <= d <= 4 at desk scale")
    if n < d + 3:
        raise DegenerateInput("need n >= d + 3")
    host = join_of_paths((n,) * d)
    width = d + 2
    keys, balls, member_lists = [], [], []
    for q, region in _band_regions(host.box, width):
        if check and not region.shellable_guaranteed:
            raise InternalInvariantViolation(f"band {q} misses the shelling hypothesis")
        ball = BallInComplex.of(host.complex, [host.facet_of(c) for c in region.cells])
        keys.append(q)
        balls.append(ball)
        member_lists.append(_extreme_members(host.box, region, width))
    fams = [
        CompatibleFamily.of(ball, members)
        for ball, members in zip(balls, member_lists)
    ]
    manifest = _close_with_cone(
        host.complex, carve_and_fill(host.complex, fams, keys=keys)
    )
    if check:
        _assert_missing_faces_distinct(manifest)
        for cell in manifest.free_cells:
            sizes = sorted((len(cell.f_part), len(cell.g_part)))
            if sizes != [d, d + 1]:
                raise InternalInvariantViolation(
                    f"cell {cell!r} is not a (d-1)-simplex + d-simplex free sum"
                )
    per_hole = {q: len(manifest.free_cells_by_ball[q]) for q in manifest.hole_keys}
    b = manifest.n_free_cells
    claimed = {
        "free_cells": b,
        "free_cells_over_n_to_d": b / (n ** d),
        "leading_coefficient": 2 / (d + 2),
    }
    return _report("highd", manifest, per_hole, claimed)


def build_aztec_highd(d: int, k: int, l: int, check: bool = True) -> ConstructionReport:
    """Aztec crosspolytope holes in the join of d paths; output is a ball
    of dimension 2d-1 with l^d holes."""
    if not 1 <= d <= 3:
        raise DegenerateInput("need 1 <= d <= 3 at desk scale")
    if k < 3 or k % 2 == 0 or l < 1:
        raise DegenerateInput("need odd k >= 3 and l >= 1")
    n = k * l + 1
    host = join_of_paths((n,) * d)
    regions = _aztec_regions(d, k, l)
    keys, fams = [], []
    for key in sorted(regions):
        region = regions[key]
        if check and not is_grid_starconvex(region, _aztec_center(key, k)):
            raise InternalInvariantViolation(f"hole {key} is not starconvex")
        ball = BallInComplex.of(host.complex, [host.facet_of(c) for c in region.cells])
        members = sorted(boundary_members(region, host))
        keys.append(key)
        fams.append(CompatibleFamily.of(ball, members))
    manifest = carve_and_fill(host.complex, fams, keys=keys)
    per_shell = ehrhart_crosspolytope(d, (k - 1) // 2) - ehrhart_crosspolytope(
        d, (k - 3) // 2
    )
    if check:
        _assert_missing_faces_distinct(manifest)
        expected = per_shell * l ** d
        if manifest.n_free_cells != expected:
            raise InternalInvariantViolation(
                f"expected {expected} free cells, got {manifest.n_free_cells}"
            )
    per_hole = {key: len(manifest.free_cells_by_ball[key]) for key in manifest.hole_keys}
    claimed = {
        "free_cells": manifest.n_free_cells,
        "boundary_cubes_per_hole": per_shell,
        "vertex_count_formula": d * (k * l + 1) + l ** d,
    }
    return _report("aztec_highd", manifest, per_hole, claimed)


BUILDERS = {
    "holes4": build_holes4,
    "holes3": build_holes3,
    "aztec": build_aztec,
    "cyclic": build_cyclic,
    "highd": build_highd,
    "aztec-hd": build_aztec_highd,
}

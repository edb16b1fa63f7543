"""Exact-rational realization: coordinates, lifts, regularity, hulls.

Everything here runs on arbitrary-precision rationals; there is no
floating point anywhere in this module.  Regularity of a subdivision is
always certified a posteriori by exact hyperplane tests, never assumed
from a construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .carvefill import FillManifest, realize, triangulate_cell
from .complexes import VertexId
from .errors import (
    DegenerateCell,
    DegenerateInput,
    DeltaTooLarge,
    EpsSearchExhausted,
    InternalInvariantViolation,
    LiftConstructionFailed,
    SymmetryViolation,
)

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class LiftedConfiguration:
    """Exact rational points with one height per point."""

    points: tuple[tuple[VertexId, Point], ...]
    heights: dict[VertexId, Fraction]

    def __post_init__(self) -> None:
        ids = [v for v, _ in self.points]
        if len(set(ids)) != len(ids):
            raise DegenerateInput("duplicate vertex ids in configuration")
        missing = [v for v in ids if v not in self.heights]
        if missing:
            raise DegenerateInput(f"no height for {missing[0].label}")


@dataclass(frozen=True)
class Subdivision:
    """Claimed cells of a subdivision, each a set of vertex ids."""

    cells: tuple[frozenset[VertexId], ...]

    @classmethod
    def of(cls, cells) -> "Subdivision":
        return cls(tuple(sorted((frozenset(c) for c in cells), key=_cell_key)))

    @classmethod
    def from_manifest(cls, manifest: FillManifest) -> "Subdivision":
        cells = [s.vset for s in manifest.result.simplex_cells]
        cells.extend(c.vset for c in manifest.result.free_cells)
        return cls.of(cells)

    def __len__(self) -> int:
        return len(self.cells)


def _cell_key(cell: frozenset[VertexId]) -> tuple:
    return tuple(sorted(v.sort_key for v in cell))


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


def _cofactor_normal(points: list[tuple[int, ...]]) -> tuple[int, ...] | None:
    """Homogeneous normal of the hyperplane through k points in R^k.

    Returns nu of length k+1 with nu . (p, 1) = 0 for each point, or None
    if the points are affinely dependent.
    """
    k = len(points)
    mat = [list(p) + [1] for p in points]
    nu = []
    for j in range(k + 1):
        minor = [row[:j] + row[j + 1:] for row in mat]
        nu.append((-1) ** j * _bareiss_det(minor))
    if all(v == 0 for v in nu):
        return None
    return _primitive(nu)


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g == 0:
        return tuple(vec)
    return tuple(v // g for v in vec)


def _rank_and_nullvector(
    rows: list[tuple[int, ...]], ncols: int
) -> tuple[int, tuple[int, ...] | None]:
    """Row rank plus a primitive nullspace vector when the nullity is 1.

    Gauss-Jordan over exact rationals: every pivot row ends with a 1 in
    its pivot column and 0 in all other pivot columns.
    """
    pivots: list[tuple[int, list[Fraction]]] = []
    for raw in rows:
        row = [Fraction(x) for x in raw]
        for col, prow in pivots:
            if row[col]:
                f = row[col]
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((c for c, a in enumerate(row) if a), None)
        if lead is None:
            continue
        prow = [a / row[lead] for a in row]
        for idx, (c0, p0) in enumerate(pivots):
            if p0[lead]:
                f = p0[lead]
                pivots[idx] = (c0, [a - f * b for a, b in zip(p0, prow)])
        pivots.append((lead, prow))
    rank = len(pivots)
    if rank != ncols - 1:
        return rank, None
    pivot_cols = {c for c, _ in pivots}
    free = next(c for c in range(ncols) if c not in pivot_cols)
    sol = [Fraction(0)] * ncols
    sol[free] = Fraction(1)
    for col, prow in pivots:
        sol[col] = -prow[free]
    denom = 1
    for f in sol:
        denom = lcm(denom, f.denominator)
    return rank, _primitive([int(f * denom) for f in sol])


def _integerize(columns: list[list[Fraction]]) -> list[list[int]]:
    """Scale each column independently to integers (a diagonal linear map,
    which preserves hyperplanes and sidedness)."""
    out = []
    for col in columns:
        scale = lcm(*(f.denominator for f in col)) if col else 1
        out.append([int(f * scale) for f in col])
    return out


def _int_config(
    pts: list[tuple[VertexId, Point]], heights: dict[VertexId, Fraction] | None
) -> tuple[list[VertexId], list[tuple[int, ...]], int]:
    ids = [v for v, _ in pts]
    if not ids:
        raise DegenerateInput("empty configuration")
    dim = len(pts[0][1])
    if any(len(p) != dim for _, p in pts):
        raise DegenerateInput("points of mixed dimension")
    cols = [[Fraction(p[a]) for _, p in pts] for a in range(dim)]
    if heights is not None:
        cols.append([Fraction(heights[v]) for v in ids])
    int_cols = _integerize(cols)
    rows = [tuple(int_cols[a][i] for a in range(len(int_cols))) for i in range(len(ids))]
    return ids, rows, dim


def _dot_h(nu: tuple[int, ...], row: tuple[int, ...]) -> int:
    return sum(a * b for a, b in zip(nu, row)) + nu[-1]


# ---------------------------------------------------------------------------
# regularity verification


def _cell_walls(
    cell_rows: list[tuple[int, ...]], dim: int
) -> list[tuple[frozenset[int], tuple[int, ...]]]:
    """Supporting (dim-1)-hyperplanes of a projected cell, as (onset
    indices into cell_rows, primitive normal)."""
    walls: dict[frozenset[int], tuple[int, ...]] = {}
    for subset in combinations(range(len(cell_rows)), dim):
        nu = _cofactor_normal([cell_rows[i][:dim] for i in subset])
        if nu is None:
            continue
        sides = [_dot_h(nu, cell_rows[i][:dim]) for i in range(len(cell_rows))]
        if any(s > 0 for s in sides) and any(s < 0 for s in sides):
            continue
        onset = frozenset(i for i, s in enumerate(sides) if s == 0)
        walls.setdefault(onset, nu)
    return list(walls.items())


def verify_regular(
    pts: list[tuple[VertexId, Point]],
    heights: dict[VertexId, Fraction],
    sub: Subdivision,
) -> bool:
    """Exact check that the claimed cells are the regular subdivision
    induced by the heights.

    For each cell: (a) its lifted points share a non-vertical hyperplane,
    (b) every other point lifts strictly above it, and (c) the cells
    cover: every interior wall is shared by exactly two cells and every
    other wall supports the convex hull of the configuration.
    """
    ids, rows, dim = _int_config(list(pts), heights)
    index = {v: i for i, v in enumerate(ids)}
    cells = list(dict.fromkeys(sub.cells))
    if not cells or len(cells) != len(sub.cells):
        return False

    cell_indices: list[list[int]] = []
    for cell in cells:
        if not all(v in index for v in cell):
            raise DegenerateInput("cell uses a vertex not in the configuration")
        cell_indices.append(sorted(index[v] for v in cell))

    for idxs in cell_indices:
        if len(idxs) < dim + 1:
            raise DegenerateCell(f"cell with {len(idxs)} points in dimension {dim}")
        proj_rank, _ = _rank_and_nullvector(
            [rows[i][:dim] + (1,) for i in idxs], dim + 1
        )
        if proj_rank < dim + 1:
            raise DegenerateCell("cell does not span full dimension")
        rank, nu = _rank_and_nullvector([rows[i] + (1,) for i in idxs], dim + 2)
        if nu is None:
            return False  # lifted points not on a common hyperplane
        if nu[dim] == 0:
            return False  # vertical hyperplane
        if nu[dim] < 0:
            nu = tuple(-x for x in nu)
        in_cell = set(idxs)
        for i, row in enumerate(rows):
            if i in in_cell:
                continue
            if _dot_h(nu, row) <= 0:
                return False  # not strictly above

    # wall matching
    counts: dict[frozenset[int], int] = {}
    for idxs in cell_indices:
        cell_rows = [rows[i] for i in idxs]
        for onset_local, _ in _cell_walls(cell_rows, dim):
            onset = frozenset(idxs[i] for i in onset_local)
            counts[onset] = counts.get(onset, 0) + 1
    for onset, count in counts.items():
        if count == 2:
            continue
        if count > 2:
            return False
        base = sorted(onset)
        rank, nu = _rank_and_nullvector(
            [rows[i][:dim] + (1,) for i in base], dim + 1
        )
        if nu is None:
            return False
        sides = [_dot_h(nu, row[:dim]) for row in rows]
        if any(s > 0 for s in sides) and any(s < 0 for s in sides):
            return False  # an unmatched interior wall
    return True


def compose_lift(
    coarse: dict[VertexId, Fraction],
    fine: dict[VertexId, Fraction],
    eps: Fraction,
) -> dict[VertexId, Fraction]:
    """Pointwise coarse + eps * fine on a shared vertex set."""
    if set(coarse) != set(fine):
        raise DegenerateInput("coarse and fine lifts must share the vertex set")
    eps = Fraction(eps)
    return {v: coarse[v] + eps * fine[v] for v in coarse}


EPS_SEARCH_MAX_EXPONENT = 64


def eps_search(
    pts: list[tuple[VertexId, Point]],
    coarse: dict[VertexId, Fraction],
    fine: dict[VertexId, Fraction],
    target: Subdivision,
) -> Fraction:
    """Largest dyadic eps = 2**-t (t <= 64) whose composition certifies
    the target subdivision."""
    for t in range(1, EPS_SEARCH_MAX_EXPONENT + 1):
        eps = Fraction(1, 2 ** t)
        if verify_regular(pts, compose_lift(coarse, fine, eps), target):
            return eps
    raise EpsSearchExhausted("no dyadic perturbation certified the target")


# ---------------------------------------------------------------------------
# coordinates


def standard_coordinates(n: int, m: int) -> dict[VertexId, Point]:
    """First path on the line (t, 0, 1), second on (0, t, -1)."""
    if n < 2 or m < 2:
        raise DegenerateInput("paths need at least 2 vertices")
    out: dict[VertexId, Point] = {}
    for i in range(1, n + 1):
        out[VertexId.path(1, i)] = (Fraction(i), Fraction(0), Fraction(1))
    for j in range(1, m + 1):
        out[VertexId.path(2, j)] = (Fraction(0), Fraction(j), Fraction(-1))
    return out


def paths_coordinates(lengths) -> dict[VertexId, Point]:
    """Recursive embedding of d paths in dimension 2d-1: re-embed the
    first d-1 paths by x -> (x, 0, -1) and place path d on (0,..,0,t,1)."""
    lengths = tuple(lengths)
    if not lengths or any(n < 2 for n in lengths):
        raise DegenerateInput("each path needs at least 2 vertices")
    out: dict[VertexId, Point] = {
        VertexId.path(1, i): (Fraction(i),) for i in range(1, lengths[0] + 1)
    }
    for axis, n in enumerate(lengths[1:], start=2):
        pad = (Fraction(0), Fraction(-1))
        out = {v: p + pad for v, p in out.items()}
        dim = 2 * axis - 1
        for i in range(1, n + 1):
            p = [Fraction(0)] * dim
            p[-2] = Fraction(i)
            p[-1] = Fraction(1)
            out[VertexId.path(axis, i)] = tuple(p)
    return out


# ---------------------------------------------------------------------------
# the square-grid hole lift


@dataclass(frozen=True)
class AztecPatchLift:
    """Split lift of one k x k midpoint grid with a central hole.

    omega is defined on grid keys (i, j), i and j odd in [-k, k], plus the
    center key (0, 0); it splits as alpha[i] + beta[j] on the grid and is
    0 at the center.  cells is the induced subdivision, verified regular.
    """

    k: int
    points: dict[tuple[int, int], tuple[Fraction, Fraction]]
    omega: dict[tuple[int, int], Fraction]
    alpha: dict[int, Fraction]
    beta: dict[int, Fraction]
    cells: tuple[frozenset[tuple[int, int]], ...]


def _validate_axis(vals: list[Fraction], k: int, name: str) -> dict[int, Fraction]:
    if len(vals) != k + 1:
        raise SymmetryViolation(f"{name} needs {k + 1} values for odd indices")
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise SymmetryViolation(f"{name} must be strictly increasing")
    table = {i: vals[(i + k) // 2] for i in range(-k, k + 1, 2)}
    for i in range(1, k + 1, 2):
        if table[-i] != -table[i]:
            raise SymmetryViolation(f"{name} must be antisymmetric")
    return table


def aztec_lift(k: int, xs, ys) -> AztecPatchLift:
    """Split lifting of the midpoint grid of one hole.

    Heights on the outer staircase corners are squared distances from the
    center (keeping the central star lifted strictly convex with rational
    arithmetic); the remaining values follow from coplanarity of the hole
    cells, and the result splits as alpha + beta.  The induced subdivision
    (grid rectangles outside the hole, 2k-6 quadrilaterals and 4 pentagons
    joined to the center) is certified by verify_regular.
    """
    if k < 3 or k % 2 == 0:
        raise DegenerateInput("need odd k >= 3")
    x = _validate_axis([Fraction(v) for v in xs], k, "xs")
    y = _validate_axis([Fraction(v) for v in ys], k, "ys")

    # ring: squared distance at the staircase corners (x_i, y_{k-1-i})
    ring: dict[int, Fraction] = {}
    for i in range(1, k - 1, 2):
        ring[i] = x[i] ** 2 + y[k - 1 - i] ** 2

    # derived corner heights omega_{i, k+1-i}
    corner: dict[int, Fraction] = {}
    for i in range(3, k - 1, 2):
        # plane through the origin and two ring points
        a1, b1, h1 = x[i], y[k - 1 - i], ring[i]
        a2, b2, h2 = x[i - 2], y[k + 1 - i], ring[i - 2]
        det = a1 * b2 - a2 * b1
        if det == 0:
            raise LiftConstructionFailed("degenerate staircase plane")
        ca = (h1 * b2 - h2 * b1) / det
        cb = (a1 * h2 - a2 * h1) / det
        corner[i] = ca * x[i] + cb * y[k + 1 - i]
    top = ring[1] * y[k] / y[k - 2]  # pentagon at the top arm
    right = ring[k - 2] * x[k] / x[k - 2]  # pentagon at the right arm

    def omega_corner(i: int) -> Fraction:
        return top if i == 1 else corner[i]

    alpha: dict[int, Fraction] = {1: Fraction(0)}
    beta: dict[int, Fraction] = {k: top}
    for i in range(3, k + 1, 2):
        upper = right if i == k else corner[i]
        alpha[i] = upper - ring[i - 2] + alpha[i - 2]
        beta[k + 1 - i] = ring[i - 2] - omega_corner(i - 2) + beta[k + 3 - i]
    for i in range(1, k + 1, 2):
        alpha[-i] = alpha[i]
        beta[-i] = beta[i]

    omega: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(0)}
    points: dict[tuple[int, int], tuple[Fraction, Fraction]] = {
        (0, 0): (Fraction(0), Fraction(0))
    }
    for i in range(-k, k + 1, 2):
        for j in range(-k, k + 1, 2):
            omega[(i, j)] = alpha[i] + beta[j]
            points[(i, j)] = (x[i], y[j])
    for i in range(1, k - 1, 2):
        if omega[(i, k - 1 - i)] != ring[i]:
            raise LiftConstructionFailed("split lift does not reproduce the ring")

    cells = _aztec_patch_cells(k, points, omega)
    ids = {key: VertexId.raw(t) for t, key in enumerate(sorted(points))}
    pts = [(ids[key], points[key]) for key in sorted(points)]
    heights = {ids[key]: omega[key] for key in sorted(points)}
    sub = Subdivision.of([{ids[key] for key in cell} for cell in cells])
    if not verify_regular(pts, heights, sub):
        raise LiftConstructionFailed("lift failed its own regularity check")
    return AztecPatchLift(k=k, points=points, omega=omega, alpha=alpha, beta=beta, cells=cells)


def _aztec_patch_cells(k, points, omega) -> tuple[frozenset, ...]:
    """Cells of the patch subdivision, with on-plane grid points included."""
    center = (0, 0)
    keys = sorted(points)
    cols = [
        [points[p][0] for p in keys],
        [points[p][1] for p in keys],
        [omega[p] for p in keys],
    ]
    int_cols = _integerize(cols)
    int_row = {
        p: (int_cols[0][t], int_cols[1][t], int_cols[2][t])
        for t, p in enumerate(keys)
    }

    def on_plane_closure(seed: list[tuple[int, int]]) -> frozenset:
        # hyperplane through three of the seed points, then collect every
        # configuration point lying on it
        nu = _cofactor_normal([int_row[p] for p in seed[:3]])
        if nu is None:
            raise LiftConstructionFailed("degenerate hole cell")
        return frozenset(p for p in keys if _dot_h(nu, int_row[p]) == 0)

    cells: set[frozenset] = set()
    n_rect = 0
    for p in range(1, k + 1):
        for q in range(1, k + 1):
            cx, cy = 2 * p - k - 1, 2 * q - k - 1
            if abs(cx) + abs(cy) <= k - 1:
                continue  # inside the hole
            cells.add(
                frozenset(
                    {
                        (cx - 1, cy - 1),
                        (cx + 1, cy - 1),
                        (cx - 1, cy + 1),
                        (cx + 1, cy + 1),
                    }
                )
            )
            n_rect += 1
    hole_cells: set[frozenset] = set()
    for sx in (1, -1):
        for sy in (1, -1):
            for i in range(3, k - 1, 2):
                quad = [
                    center,
                    (sx * i, sy * (k - 1 - i)),
                    (sx * i, sy * (k + 1 - i)),
                    (sx * (i - 2), sy * (k + 1 - i)),
                ]
                hole_cells.add(on_plane_closure([q for q in quad if q != center] + [center]))
    for sy in (1, -1):
        pent = [center, (1, sy * k), (-1, sy * k), (1, sy * (k - 2)), (-1, sy * (k - 2))]
        hole_cells.add(on_plane_closure(pent[1:] + [center]))
        pent = [center, (sy * k, 1), (sy * k, -1), (sy * (k - 2), 1), (sy * (k - 2), -1)]
        hole_cells.add(on_plane_closure(pent[1:] + [center]))
    expected_quads = 2 * k - 6
    n_quads = sum(1 for c in hole_cells if not any(abs(i) == k or abs(j) == k for i, j in c))
    n_pents = len(hole_cells) - n_quads
    if n_rect != (k * k - 1) // 2 or n_quads != expected_quads or n_pents != 4:
        raise LiftConstructionFailed(
            f"unexpected patch structure: {n_rect} rectangles, "
            f"{n_quads} quadrilaterals, {n_pents} pentagons"
        )
    return tuple(sorted(cells | hole_cells, key=lambda c: sorted(c)))


# ---------------------------------------------------------------------------
# the full lifted configuration for the square-grid construction


@dataclass(frozen=True)
class RegularAztecLift:
    """A certified regular lift of the Aztec-hole subdivision."""

    k: int
    l: int
    config: LiftedConfiguration
    coarse: dict[VertexId, Fraction]
    fine: dict[VertexId, Fraction]
    eps: Fraction
    subdivision: Subdivision
    manifest: FillManifest

    @property
    def heights(self) -> dict[VertexId, Fraction]:
        return self.config.heights


def _coarse_breakpoint_value(i: int) -> Fraction:
    return Fraction(i) ** 2


def _coarse_path_height(i: int, k: int, l: int) -> Fraction:
    r = min((i - 2) // k if i >= 2 else 0, l - 1)
    t0 = r * k + 1
    t1 = t0 + k
    v0, v1 = _coarse_breakpoint_value(t0), _coarse_breakpoint_value(t1)
    return v0 + (v1 - v0) * Fraction(i - t0, k)


def _subgrid_of(i: int, k: int, l: int) -> int:
    return min((i - 2) // k if i >= 2 else 0, l - 1) + 1


def _local_doubled(i: int, k: int, l: int) -> int:
    r = _subgrid_of(i, k, l)
    return 2 * (i - (r - 1) * k) - k - 2


def build_aztec_lift(k: int, l: int) -> RegularAztecLift:
    """Coarse squared-breakpoint lift plus the per-hole split perturbation,
    composed with a certified dyadic scale."""
    from .constructions import build_aztec

    report = build_aztec(k, l)
    manifest = report.manifest
    n = k * l + 1
    coords = standard_coordinates(n, n)

    patch = aztec_lift(k, list(range(-k, k + 1, 2)), list(range(-k, k + 1, 2)))

    pts: list[tuple[VertexId, Point]] = []
    coarse: dict[VertexId, Fraction] = {}
    fine: dict[VertexId, Fraction] = {}
    for i in range(1, n + 1):
        for axis in (1, 2):
            v = VertexId.path(axis, i)
            pts.append((v, coords[v]))
            coarse[v] = _coarse_path_height(i, k, l)
            table = patch.alpha if axis == 1 else patch.beta
            fine[v] = 2 * table[_local_doubled(i, k, l)]

    # hole centers: each is the centroid of its block's four coarse
    # corners, so lifting it onto the block hyperplane means averaging
    for key in manifest.hole_keys:
        r, s = key
        apex = manifest.apex_of_ball[key]
        p_hat = (r - 1) * k + (k + 1) // 2
        q_hat = (s - 1) * k + (k + 1) // 2
        o = (Fraction(2 * p_hat + 1, 4), Fraction(2 * q_hat + 1, 4), Fraction(0))
        corners = [
            VertexId.path(1, (r - 1) * k + 1),
            VertexId.path(1, r * k + 1),
            VertexId.path(2, (s - 1) * k + 1),
            VertexId.path(2, s * k + 1),
        ]
        centroid = tuple(
            sum((coords[v][a] for v in corners), Fraction(0)) / 4 for a in range(3)
        )
        if centroid != o:
            raise InternalInvariantViolation("hole center is not the block centroid")
        pts.append((apex, o))
        coarse[apex] = sum((coarse[v] for v in corners), Fraction(0)) / 4
        fine[apex] = Fraction(0)

    target = Subdivision.from_manifest(manifest)
    eps = eps_search(pts, coarse, fine, target)
    heights = compose_lift(coarse, fine, eps)
    config = LiftedConfiguration(tuple(pts), heights)
    return RegularAztecLift(
        k=k,
        l=l,
        config=config,
        coarse=coarse,
        fine=fine,
        eps=eps,
        subdivision=target,
        manifest=manifest,
    )


# ---------------------------------------------------------------------------
# convex hulls


@dataclass(frozen=True)
class HullFacet:
    """A hull facet: its vertex set and outward supporting hyperplane
    (normal . p <= offset for all configuration points)."""

    vertices: frozenset[VertexId]
    normal: tuple[int, ...]
    offset: int


def convex_hull_brute(pts: list[tuple[VertexId, Point]]) -> list[HullFacet]:
    """Exact brute-force convex hull: every supporting hyperplane spanned
    by the points, merged into maximal coplanar facets."""
    ids, rows, dim = _int_config(list(pts), None)
    rank, _ = _rank_and_nullvector([r + (1,) for r in rows], dim + 1)
    if rank < dim + 1:
        raise DegenerateInput("point set is not full-dimensional")
    found: dict[frozenset[int], tuple[tuple[int, ...], int]] = {}
    onsets: list[frozenset[int]] = []
    for subset in combinations(range(len(rows)), dim):
        sset = frozenset(subset)
        if any(sset <= onset for onset in onsets):
            continue
        nu = _cofactor_normal([rows[i] for i in subset])
        if nu is None:
            continue
        pos = neg = False
        sides = []
        for row in rows:
            s = _dot_h(nu, row)
            sides.append(s)
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:  # flip so every point sits on the non-positive side
            nu = tuple(-x for x in nu)
            sides = [-s for s in sides]
        onset = frozenset(i for i, s in enumerate(sides) if s == 0)
        if onset not in found:
            found[onset] = (nu[:-1], -nu[-1])
            onsets.append(onset)
    facets = [
        HullFacet(frozenset(ids[i] for i in onset), normal, offset)
        for onset, (normal, offset) in found.items()
    ]
    facets.sort(key=lambda f: tuple(sorted(v.sort_key for v in f.vertices)))
    return facets


def lower_facets(facets: list[HullFacet]) -> list[HullFacet]:
    """Facets whose outward normal points downward in the last coordinate."""
    return [f for f in facets if f.normal[-1] < 0]


def hull_with_apex(
    pts: list[tuple[VertexId, Point]], apex_id: VertexId
) -> tuple[list[HullFacet], Point]:
    """Hull of the configuration plus a certified far apex above it.

    The apex closes the upper side, so the hull consists of the lower
    facets of the configuration plus cones over its horizon.
    """
    base = convex_hull_brute(pts)
    dim = len(pts[0][1])
    centroid = tuple(
        sum((p[a] for _, p in pts), Fraction(0)) / len(pts) for a in range(dim)
    )
    height = max(p[-1] for _, p in pts) + 1
    for f in base:
        if f.normal[-1] <= 0:
            continue
        # outward normal . p <= offset; apex must violate it strictly
        rest = sum(n * c for n, c in zip(f.normal[:-1], centroid[:-1]))
        bound = Fraction(f.offset - rest, f.normal[-1])
        if bound + 1 > height:
            height = bound + 1
    apex_pt = centroid[:-1] + (Fraction(height),)
    return convex_hull_brute(list(pts) + [(apex_id, apex_pt)]), apex_pt


SIMPLEX = "simplex"
BIPYRAMID = "bipyramid"
OTHER = "other"


def detect_bipyramid_facets(
    facets: list[HullFacet], pts: list[tuple[VertexId, Point]]
) -> tuple[int, list[str]]:
    """Classify facets of a 4-dimensional hull structurally.

    A five-vertex facet counts as a bipyramid exactly when all of its
    2-faces are triangles (the unique simplicial 3-polytope on 5
    vertices); no facet is assumed to be anything from its vertex count
    alone.
    """
    coords = dict(pts)
    if facets and len(next(iter(coords.values()))) != 4:
        raise DegenerateInput("facet classification expects a 4-dimensional hull")
    kinds = []
    for f in facets:
        n = len(f.vertices)
        if n == 4:
            kinds.append(SIMPLEX)
        elif n == 5 and _is_bipyramid([coords[v] for v in sorted(f.vertices)]):
            kinds.append(BIPYRAMID)
        else:
            kinds.append(OTHER)
    return kinds.count(BIPYRAMID), kinds


def _affine_chart(points: list[Point]) -> list[tuple[int, ...]] | None:
    """Coordinates of coplanar 4-dim points in an affine basis of their
    hyperplane, integerized; None if they do not span a 3-flat."""
    rows = [[Fraction(x) for x in p] for p in points]
    base = rows[0]
    diffs = [[a - b for a, b in zip(r, base)] for r in rows[1:]]
    basis: list[list[Fraction]] = []
    for dvec in diffs:
        reduced = dvec[:]
        for bvec in basis:
            lead = next(i for i, x in enumerate(bvec) if x)
            if reduced[lead]:
                f = reduced[lead] / bvec[lead]
                reduced = [a - f * b for a, b in zip(reduced, bvec)]
        if any(reduced):
            basis.append(reduced)
    if len(basis) != 3:
        return None
    coords = []
    for dvec in [[Fraction(0)] * len(base)] + diffs:
        reduced = dvec[:]
        comp = []
        for bvec in basis:
            lead = next(i for i, x in enumerate(bvec) if x)
            f = reduced[lead] / bvec[lead]
            comp.append(f)
            reduced = [a - f * b for a, b in zip(reduced, bvec)]
        if any(reduced):
            return None
        coords.append(comp)
    cols = [list(c) for c in zip(*coords)]
    return [tuple(r) for r in zip(*_integerize(cols))]


def _is_bipyramid(points: list[Point]) -> bool:
    chart = _affine_chart(points)
    if chart is None:
        return False
    walls = _cell_walls(list(chart), 3)
    if len(walls) != 6:
        return False
    return all(len(onset) == 3 for onset, _ in walls)


# ---------------------------------------------------------------------------
# raising hole centers


def raised_center_target(manifest: FillManifest) -> Subdivision:
    """The refinement produced by lifting every hole center: each free
    cell is replaced by the triangulation that inserts its first part."""
    cells = [s.vset for s in manifest.result.simplex_cells]
    for cell in manifest.free_cells:
        cells.extend(s.vset for s in triangulate_cell(cell, 0))
    return Subdivision.of(cells)


def count_degree3_edges(manifest: FillManifest) -> int:
    """Edges of the center-raised triangulation lying in exactly three
    full-dimensional simplices."""
    realized = realize(manifest, (0,) * manifest.n_free_cells)
    counts: dict[frozenset, int] = {}
    for f in realized.facets:
        for e in combinations(sorted(f), 2):
            key = frozenset(e)
            counts[key] = counts.get(key, 0) + 1
    return sum(1 for c in counts.values() if c == 3)


def raise_centers(
    lift: RegularAztecLift, delta: Fraction
) -> tuple[dict[VertexId, Fraction], int]:
    """Add delta to every hole-center height and certify that the
    subdivision refines as expected: every quadrilateral-type cell splits
    into three simplices around a degree-three edge (pentagons split into
    two).  Returns the new heights and the degree-three edge count."""
    delta = Fraction(delta)
    if delta <= 0:
        raise DegenerateInput("delta must be positive")
    apexes = set(lift.manifest.apex_of_ball.values())
    heights = {
        v: h + delta if v in apexes else h for v, h in lift.heights.items()
    }
    target = raised_center_target(lift.manifest)
    if not verify_regular(list(lift.config.points), heights, target):
        raise DeltaTooLarge(f"raising centers by {delta} breaks regularity")
    return heights, count_degree3_edges(lift.manifest)


def delta_search(lift: RegularAztecLift) -> Fraction:
    """Certified center-raising amount, found by halving from the lift's
    own perturbation scale."""
    target = raised_center_target(lift.manifest)
    apexes = set(lift.manifest.apex_of_ball.values())
    for t in range(1, EPS_SEARCH_MAX_EXPONENT + 1):
        delta = lift.eps * Fraction(1, 2 ** t)
        heights = {
            v: h + delta if v in apexes else h for v, h in lift.heights.items()
        }
        if verify_regular(list(lift.config.points), heights, target):
            return delta
    raise EpsSearchExhausted("no center-raising amount certified the refinement")

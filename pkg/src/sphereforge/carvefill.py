"""Carving balls out of a complex and filling them with free-sum cells.

Each ball is replaced by a cone from a fresh apex over its boundary,
except that the boundary pieces contributed by a compatible family of
simplices are merged, which turns the corresponding cones into free sums
of two simplices.  Every free sum can later be triangulated in two ways
without new vertices, independently of all the others.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .complexes import (
    FreeSumCell,
    PolyComplex,
    Simplex,
    SimplicialComplex,
    VertexId,
    boundary_complex,
)
from .errors import (
    BallOverlap,
    ChoiceLengthMismatch,
    DegenerateInput,
    DisjointnessViolation,
    FaceNotFound,
    IncompatibleFamily,
    InternalInvariantViolation,
    NoBoundaryContact,
    SingleSimplexBall,
)


@dataclass(frozen=True)
class BallInComplex:
    """A subfamily of host facets forming a ball to be carved."""

    host: SimplicialComplex
    ball_facets: frozenset[Simplex]

    @classmethod
    def of(cls, host: SimplicialComplex, facets: Iterable[Simplex]) -> "BallInComplex":
        fs = frozenset(facets)
        if not fs <= host.facets:
            missing = next(iter(fs - host.facets))
            raise FaceNotFound(f"{missing!r} is not a facet of the host")
        if len(fs) == 0:
            raise DegenerateInput("ball needs at least one facet")
        if len(fs) == 1:
            raise SingleSimplexBall("a single-simplex ball cannot be carved")
        return cls(host, fs)

    @property
    def dim(self) -> int:
        return self.host.dim

    @cached_property
    def subcomplex(self) -> SimplicialComplex:
        return SimplicialComplex.from_facets(self.ball_facets)

    @cached_property
    def boundary(self) -> SimplicialComplex:
        return boundary_complex(self.subcomplex)

    @cached_property
    def boundary_facet_set(self) -> frozenset[Simplex]:
        return self.boundary.facets

    def certify_ball(self):
        from .topology import certify

        return certify(self.subcomplex)


def boundary_restriction(b: BallInComplex, sigma: Simplex) -> SimplicialComplex:
    """The pure codimension-1 part of a cell's boundary lying on the
    ball's boundary.  May be void."""
    if sigma not in b.ball_facets:
        raise FaceNotFound(f"{sigma!r} is not a facet of the ball")
    return SimplicialComplex.from_facets(
        t for t in sigma.facets() if t in b.boundary_facet_set
    )


def _contact_facets(b: BallInComplex, sigma: Simplex) -> list[Simplex]:
    return [t for t in sigma.facets() if t in b.boundary_facet_set]


def missing_face(b: BallInComplex, sigma: Simplex) -> Simplex:
    """The unique minimal non-face of the cell's boundary restriction:
    the cell minus the common intersection of its boundary facets."""
    if sigma not in b.ball_facets:
        raise FaceNotFound(f"{sigma!r} is not a facet of the ball")
    contact = _contact_facets(b, sigma)
    if not contact:
        raise NoBoundaryContact(f"{sigma!r} has no facet on the ball boundary")
    if len(contact) == len(sigma):
        raise SingleSimplexBall("boundary restriction is the whole cell boundary")
    shared = contact[0].vset
    for t in contact[1:]:
        shared &= t.vset
    return Simplex(sigma.vset - shared)


@dataclass(frozen=True)
class CompatibleFamily:
    """Full-dimensional simplices of a ball whose missing faces will be
    merged into free-sum cells.

    Members need at least two facets on the ball boundary, so each yields
    a genuine free sum of two simplices of dimension at least one.
    """

    ball: BallInComplex
    members: frozenset[Simplex]

    @classmethod
    def of(cls, ball: BallInComplex, members: Iterable[Simplex]) -> "CompatibleFamily":
        ms = frozenset(members)
        if not ms <= ball.ball_facets:
            missing = next(iter(ms - ball.ball_facets))
            raise FaceNotFound(f"member {missing!r} is not a facet of the ball")
        for m in sorted(ms):
            contact = _contact_facets(ball, m)
            if not contact:
                raise NoBoundaryContact(f"member {m!r} has no boundary facet")
            if len(contact) < 2:
                raise IncompatibleFamily(
                    f"member {m!r} has a single boundary facet; its fill "
                    "cell would degenerate to a simplex"
                )
        return cls(ball, ms)

    @cached_property
    def missing_faces(self) -> dict[Simplex, Simplex]:
        return {m: missing_face(self.ball, m) for m in sorted(self.members)}

    @cached_property
    def sorted_members(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.members))


def is_compatible(fam: CompatibleFamily) -> bool:
    """All missing faces pairwise distinct and none on the ball boundary."""
    faces = list(fam.missing_faces.values())
    if len(set(faces)) != len(faces):
        return False
    bd = fam.ball.boundary
    return not any(bd.has_face(f) for f in faces)


def fill_ball(
    fam: CompatibleFamily, apex: VertexId
) -> tuple[PolyComplex, list[FreeSumCell]]:
    """Replace the ball interior by a cone over its boundary from a fresh
    apex, merging each member's boundary restriction into one free-sum
    cell.  The result has the same boundary as the ball."""
    if not is_compatible(fam):
        raise IncompatibleFamily("missing faces collide or touch the boundary")
    ball = fam.ball
    if apex in ball.host.vertex_set:
        raise DisjointnessViolation(f"apex {apex.label} already used")
    free: list[FreeSumCell] = []
    covered: set[Simplex] = set()
    for m in fam.sorted_members:
        f_part = fam.missing_faces[m]
        g_part = Simplex((m.vset - f_part.vset) | {apex})
        free.append(FreeSumCell(f_part, g_part))
        covered.update(_contact_facets(ball, m))
    cones = [
        t.with_vertex(apex)
        for t in ball.boundary_facet_set
        if t not in covered
    ]
    free.sort()
    if not cones and not free:
        raise DegenerateInput("fill produced no cells")
    result = PolyComplex.from_cells(cones, free)
    return result, free


@dataclass(frozen=True)
class FillManifest:
    """The outcome of carving and filling: the new complex plus the free
    cells per hole in canonical order (hole key, then missing face)."""

    result: PolyComplex
    hole_keys: tuple[Hashable, ...]
    free_cells_by_ball: dict[Hashable, tuple[FreeSumCell, ...]]
    apex_of_ball: dict[Hashable, VertexId]

    @cached_property
    def free_cells(self) -> tuple[FreeSumCell, ...]:
        out: list[FreeSumCell] = []
        for key in self.hole_keys:
            out.extend(self.free_cells_by_ball[key])
        return tuple(out)

    @property
    def n_free_cells(self) -> int:
        return len(self.free_cells)


def _apex_key(key: Hashable, rank: int) -> int:
    return key if isinstance(key, int) else rank


def carve_and_fill(
    host: SimplicialComplex,
    fams: Sequence[CompatibleFamily],
    keys: Sequence[Hashable] | None = None,
) -> FillManifest:
    """Fill several balls with disjoint interiors simultaneously.

    Balls may share boundary faces but no full-dimensional simplex.  One
    fresh apex is introduced per ball; simplices outside every ball are
    kept unchanged.
    """
    host._require_nonvoid()
    if keys is None:
        keys = list(range(1, len(fams) + 1))
    if len(keys) != len(fams) or len(set(keys)) != len(keys):
        raise DegenerateInput("hole keys must be unique, one per family")
    for fam in fams:
        if fam.ball.host is not host and fam.ball.host != host:
            raise FaceNotFound("family ball lives in a different host")
    order = sorted(range(len(fams)), key=lambda i: keys[i])
    seen: set[Simplex] = set()
    for i in order:
        overlap = seen & fams[i].ball.ball_facets
        if overlap:
            raise BallOverlap(f"balls share the simplex {next(iter(overlap))!r}")
        seen |= fams[i].ball.ball_facets

    kept = [f for f in host.facets if f not in seen]
    simplex_cells: list[Simplex] = list(kept)
    by_ball: dict[Hashable, tuple[FreeSumCell, ...]] = {}
    apex_of: dict[Hashable, VertexId] = {}
    used_apexes: set[VertexId] = set()
    for rank, i in enumerate(order, start=1):
        key = keys[i]
        apex = VertexId.hole(_apex_key(key, rank))
        if apex in used_apexes or apex in host.vertex_set:
            raise DisjointnessViolation(f"apex {apex.label} already used")
        used_apexes.add(apex)
        filled, free = fill_ball(fams[i], apex)
        simplex_cells.extend(filled.simplex_cells)
        by_ball[key] = tuple(free)
        apex_of[key] = apex
    all_free = [c for key in sorted(by_ball) for c in by_ball[key]]
    result = PolyComplex.from_cells(simplex_cells, all_free)
    expected = len(host.vertex_set) + len(fams)
    if len(result.vertex_set) != expected:
        raise InternalInvariantViolation(
            f"expected {expected} vertices, got {len(result.vertex_set)}"
        )
    return FillManifest(
        result=result,
        hole_keys=tuple(sorted(by_ball)),
        free_cells_by_ball=by_ball,
        apex_of_ball=apex_of,
    )


def triangulate_cell(c: FreeSumCell, choice: int) -> list[Simplex]:
    """The two triangulations of a free-sum cell without new vertices.

    Choice 0 inserts the first part (one simplex per vertex of the second
    part); choice 1 inserts the second part.  Both leave the cell
    boundary intact.
    """
    if choice not in (0, 1):
        raise DegenerateInput("choice must be 0 or 1")
    if choice == 0:
        return sorted(
            c.f_part.union(c.g_part.without(w)) for w in c.g_part
        )
    return sorted(
        c.g_part.union(c.f_part.without(u)) for u in c.f_part
    )


def realize(m: FillManifest, choices: Sequence[int]) -> SimplicialComplex:
    """Triangulate every free cell according to a choice vector."""
    cells = m.free_cells
    if len(choices) != len(cells):
        raise ChoiceLengthMismatch(
            f"{len(cells)} free cells but {len(choices)} choices"
        )
    facets: list[Simplex] = list(m.result.simplex_cells)
    for cell, bit in zip(cells, choices):
        facets.extend(triangulate_cell(cell, int(bit)))
    return SimplicialComplex.from_facets(facets)

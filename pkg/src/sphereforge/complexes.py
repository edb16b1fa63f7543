"""Core simplicial and polyhedral cell machinery.

Vertices carry structured labels with a fixed total order, so every facet
list, cell list and serialized artifact comes out byte-identical across
runs.  All types are immutable; the operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import (
    DegenerateInput,
    DisjointnessViolation,
    FaceNotFound,
    NotPseudomanifold,
)

_KIND_RANK = {"a": 0, "h": 1, "c": 2, "r": 3}


@dataclass(frozen=True)
class VertexId:
    """Structured vertex label.

    Kinds: ``a`` path vertex (path index, position), ``h`` hole apex
    (integer key), ``c`` the single cone apex, ``r`` raw nonnegative
    integer.  Labels serialize as ``a:<path>:<pos>``, ``h:<key>``, ``c``
    and ``r:<int>``.
    """

    kind: str
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise DegenerateInput(f"unknown vertex kind {self.kind!r}")
        arity = {"a": 2, "h": 1, "c": 0, "r": 1}[self.kind]
        if len(self.data) != arity:
            raise DegenerateInput(f"vertex kind {self.kind!r} needs {arity} fields")
        if self.kind == "a" and (self.data[0] < 1 or self.data[1] < 1):
            raise DegenerateInput("path vertices are 1-based")
        if self.kind == "r" and self.data[0] < 0:
            raise DegenerateInput("raw vertex ids are nonnegative")

    @classmethod
    def path(cls, path: int, pos: int) -> "VertexId":
        return cls("a", (path, pos))

    @classmethod
    def hole(cls, key: int) -> "VertexId":
        return cls("h", (key,))

    @classmethod
    def cone(cls) -> "VertexId":
        return cls("c", ())

    @classmethod
    def raw(cls, n: int) -> "VertexId":
        return cls("r", (n,))

    @property
    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.data)

    def __lt__(self, other: "VertexId") -> bool:
        return self.sort_key < other.sort_key

    def __le__(self, other: "VertexId") -> bool:
        return self.sort_key <= other.sort_key

    @property
    def label(self) -> str:
        if self.kind == "c":
            return "c"
        return ":".join([self.kind] + [str(x) for x in self.data])

    @classmethod
    def from_label(cls, text: str) -> "VertexId":
        parts = text.split(":")
        kind = parts[0]
        if kind not in _KIND_RANK:
            raise DegenerateInput(f"bad vertex label {text!r}")
        try:
            data = tuple(int(p) for p in parts[1:])
        except ValueError as exc:
            raise DegenerateInput(f"bad vertex label {text!r}") from exc
        return cls(kind, data)

    def __repr__(self) -> str:
        return f"V({self.label})"


@dataclass(frozen=True)
class Simplex:
    """An abstract simplex: a strictly sorted tuple of vertex ids."""

    verts: tuple[VertexId, ...]

    def __init__(self, verts: Iterable[VertexId]) -> None:
        vs = tuple(sorted(verts, key=lambda v: v.sort_key))
        for u, w in zip(vs, vs[1:]):
            if u == w:
                raise DegenerateInput(f"repeated vertex {u.label} in simplex")
        object.__setattr__(self, "verts", vs)

    @cached_property
    def vset(self) -> frozenset[VertexId]:
        return frozenset(self.verts)

    @property
    def dim(self) -> int:
        return len(self.verts) - 1

    def __len__(self) -> int:
        return len(self.verts)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self.verts)

    def __contains__(self, v: VertexId) -> bool:
        return v in self.vset

    def __lt__(self, other: "Simplex") -> bool:
        return self.sort_key < other.sort_key

    @property
    def sort_key(self) -> tuple:
        return tuple(v.sort_key for v in self.verts)

    def union(self, other: "Simplex | Iterable[VertexId]") -> "Simplex":
        other_vs = other.verts if isinstance(other, Simplex) else tuple(other)
        return Simplex(self.vset | set(other_vs))

    def with_vertex(self, v: VertexId) -> "Simplex":
        return Simplex(self.verts + (v,))

    def without(self, v: VertexId) -> "Simplex":
        if v not in self.vset:
            raise FaceNotFound(f"{v.label} not in simplex")
        return Simplex(u for u in self.verts if u != v)

    def intersection(self, other: "Simplex") -> "Simplex":
        return Simplex(self.vset & other.vset)

    def issubset(self, other: "Simplex") -> bool:
        return self.vset <= other.vset

    def facets(self) -> list["Simplex"]:
        """All codimension-1 faces."""
        return [Simplex(self.verts[:i] + self.verts[i + 1:]) for i in range(len(self.verts))]

    def faces(self, include_empty: bool = False) -> Iterator["Simplex"]:
        lo = 0 if include_empty else 1
        for k in range(lo, len(self.verts) + 1):
            for c in combinations(self.verts, k):
                yield Simplex(c)

    def __repr__(self) -> str:
        return "{" + ",".join(v.label for v in self.verts) + "}"


EMPTY_SIMPLEX = Simplex(())


@dataclass(frozen=True)
class SimplicialComplex:
    """A pure simplicial complex, stored by its facets.

    Faces are derived from facets on demand; nothing else is stored.  The
    complex with a single empty facet is the join identity.  The void
    complex (no facets at all) is a legal *output* of boundary taking but
    is rejected as input everywhere.
    """

    facets: frozenset[Simplex]
    dim: int

    @classmethod
    def from_facets(cls, facets: Iterable) -> "SimplicialComplex":
        fs = set()
        for f in facets:
            fs.add(f if isinstance(f, Simplex) else Simplex(f))
        if not fs:
            return cls(frozenset(), -1)
        dims = {f.dim for f in fs}
        if len(dims) != 1:
            raise DegenerateInput(f"facets of mixed dimensions {sorted(dims)}")
        return cls(frozenset(fs), dims.pop())

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @cached_property
    def sorted_facets(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.facets))

    @cached_property
    def vertex_set(self) -> frozenset[VertexId]:
        return frozenset(v for f in self.facets for v in f)

    @cached_property
    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(sorted(self.vertex_set, key=lambda v: v.sort_key))

    def has_face(self, s: Simplex) -> bool:
        return any(s.vset <= f.vset for f in self.facets)

    def _require_nonvoid(self) -> None:
        if self.is_void:
            raise DegenerateInput("void complex is not valid input")


def empty_complex() -> SimplicialComplex:
    """The join identity: one empty facet."""
    return SimplicialComplex.from_facets([EMPTY_SIMPLEX])


def join(x: SimplicialComplex, y: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes on disjoint vertex sets."""
    x._require_nonvoid()
    y._require_nonvoid()
    overlap = x.vertex_set & y.vertex_set
    if overlap:
        labels = sorted(v.label for v in overlap)
        raise DisjointnessViolation(f"joined complexes share vertices {labels}")
    return SimplicialComplex.from_facets(
        f.union(g) for f in x.facets for g in y.facets
    )


def link(x: SimplicialComplex, f: Simplex) -> SimplicialComplex:
    """Link of a face: residues of the facets containing it."""
    x._require_nonvoid()
    cofacets = [s for s in x.facets if f.vset <= s.vset]
    if not cofacets:
        raise FaceNotFound(f"{f!r} is not a face")
    return SimplicialComplex.from_facets(
        Simplex(s.vset - f.vset) for s in cofacets
    )


def star(x: SimplicialComplex, f: Simplex) -> SimplicialComplex:
    """Closed star of a face: the subcomplex generated by its cofacets."""
    x._require_nonvoid()
    cofacets = [s for s in x.facets if f.vset <= s.vset]
    if not cofacets:
        raise FaceNotFound(f"{f!r} is not a face")
    return SimplicialComplex.from_facets(cofacets)


def boundary_complex(x: SimplicialComplex) -> SimplicialComplex:
    """Codimension-1 faces lying in exactly one facet; void if closed."""
    x._require_nonvoid()
    counts: dict[Simplex, int] = {}
    for f in x.facets:
        for r in f.facets():
            counts[r] = counts.get(r, 0) + 1
    bad = [r for r, c in counts.items() if c >= 3]
    if bad:
        raise NotPseudomanifold(f"face {bad[0]!r} lies in {counts[bad[0]]} facets")
    return SimplicialComplex.from_facets(r for r, c in counts.items() if c == 1)


def cone(x: SimplicialComplex, apex: VertexId) -> SimplicialComplex:
    """Cone over a complex from a fresh apex."""
    x._require_nonvoid()
    if apex in x.vertex_set:
        raise DisjointnessViolation(f"apex {apex.label} already a vertex")
    return SimplicialComplex.from_facets(f.with_vertex(apex) for f in x.facets)


@dataclass(frozen=True)
class FreeSumCell:
    """A non-simplex cell recorded by its two minimal non-faces.

    The cell is the free sum of the simplex on ``f_part`` and the simplex
    on ``g_part`` (the latter includes the fill apex).  Its proper faces
    are exactly the unions of a proper subset of each part.
    """

    f_part: Simplex
    g_part: Simplex

    def __post_init__(self) -> None:
        if self.f_part.vset & self.g_part.vset:
            raise DisjointnessViolation("free sum parts must be disjoint")
        if len(self.f_part) < 2 or len(self.g_part) < 2:
            raise DegenerateInput("each free sum part needs at least 2 vertices")

    @property
    def dim(self) -> int:
        return len(self.f_part) + len(self.g_part) - 2

    @cached_property
    def vset(self) -> frozenset[VertexId]:
        return self.f_part.vset | self.g_part.vset

    @cached_property
    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(sorted(self.vset, key=lambda v: v.sort_key))

    @property
    def sort_key(self) -> tuple:
        return (self.f_part.sort_key, self.g_part.sort_key)

    def __lt__(self, other: "FreeSumCell") -> bool:
        return self.sort_key < other.sort_key

    def boundary_facets(self) -> list[Simplex]:
        """Codimension-1 faces: drop one vertex from each part."""
        out = []
        for u in self.f_part:
            for w in self.g_part:
                out.append(Simplex((self.vset - {u}) - {w}))
        return out

    def is_proper_face(self, verts: frozenset[VertexId]) -> bool:
        """True iff the vertex set spans a proper face of the cell."""
        if not verts <= self.vset:
            return False
        return not (self.f_part.vset <= verts) and not (self.g_part.vset <= verts)

    def proper_faces(self) -> Iterator[Simplex]:
        """All nonempty proper faces (not the full cell)."""
        f = self.f_part.verts
        g = self.g_part.verts
        for kf in range(len(f)):
            for cf in combinations(f, kf):
                for kg in range(len(g)):
                    for cg in combinations(g, kg):
                        if cf or cg:
                            yield Simplex(cf + cg)

    def __repr__(self) -> str:
        return f"FS({self.f_part!r}+{self.g_part!r})"


@dataclass(frozen=True)
class PolyComplex:
    """A mixed collection of simplices and free-sum cells of equal dimension."""

    simplex_cells: frozenset[Simplex]
    free_cells: frozenset[FreeSumCell]
    dim: int

    @classmethod
    def from_cells(
        cls,
        simplex_cells: Iterable[Simplex],
        free_cells: Iterable[FreeSumCell] = (),
    ) -> "PolyComplex":
        ss = frozenset(simplex_cells)
        fs = frozenset(free_cells)
        dims = {s.dim for s in ss} | {c.dim for c in fs}
        if not dims:
            raise DegenerateInput("a polyhedral complex needs at least one cell")
        if len(dims) != 1:
            raise DegenerateInput(f"cells of mixed dimensions {sorted(dims)}")
        return cls(ss, fs, dims.pop())

    @classmethod
    def from_simplicial(cls, x: SimplicialComplex) -> "PolyComplex":
        x._require_nonvoid()
        return cls(x.facets, frozenset(), x.dim)

    @property
    def n_cells(self) -> int:
        return len(self.simplex_cells) + len(self.free_cells)

    @cached_property
    def vertex_set(self) -> frozenset[VertexId]:
        vs: set[VertexId] = set()
        for s in self.simplex_cells:
            vs |= s.vset
        for c in self.free_cells:
            vs |= c.vset
        return frozenset(vs)

    @cached_property
    def vertices(self) -> tuple[VertexId, ...]:
        return tuple(sorted(self.vertex_set, key=lambda v: v.sort_key))

    @cached_property
    def sorted_simplex_cells(self) -> tuple[Simplex, ...]:
        return tuple(sorted(self.simplex_cells))

    @cached_property
    def sorted_free_cells(self) -> tuple[FreeSumCell, ...]:
        return tuple(sorted(self.free_cells))

    def validate_proper_intersections(self) -> None:
        """Check every pair of cells meets in a common face of both.

        Only pairs sharing a vertex are examined; the empty set is a face
        of everything.  Raises InternalInvariantViolation on failure.
        """
        from .errors import InternalInvariantViolation

        cells: list[tuple[frozenset[VertexId], object]] = []
        for s in self.sorted_simplex_cells:
            cells.append((s.vset, s))
        for c in self.sorted_free_cells:
            cells.append((c.vset, c))
        by_vertex: dict[VertexId, list[int]] = {}
        for i, (vs, _) in enumerate(cells):
            for v in vs:
                by_vertex.setdefault(v, []).append(i)
        pairs = set()
        for idxs in by_vertex.values():
            for i, j in combinations(idxs, 2):
                pairs.add((i, j))
        for i, j in sorted(pairs):
            vi, ci = cells[i]
            vj, cj = cells[j]
            inter = vi & vj
            for vs, cell in ((vi, ci), (vj, cj)):
                if isinstance(cell, FreeSumCell):
                    ok = cell.is_proper_face(inter) or (inter == vs and ci is cj)
                else:
                    ok = inter != vs or ci is cj
                    ok = ok and inter <= vs
                if not ok:
                    raise InternalInvariantViolation(
                        f"cells {ci!r} and {cj!r} do not intersect properly"
                    )

    def boundary(self) -> SimplicialComplex:
        """Codimension-1 faces lying in exactly one cell."""
        counts: dict[Simplex, int] = {}
        for s in self.simplex_cells:
            for r in s.facets():
                counts[r] = counts.get(r, 0) + 1
        for c in self.free_cells:
            for r in c.boundary_facets():
                counts[r] = counts.get(r, 0) + 1
        bad = [r for r, c in counts.items() if c >= 3]
        if bad:
            raise NotPseudomanifold(f"face {bad[0]!r} lies in {counts[bad[0]]} cells")
        return SimplicialComplex.from_facets(r for r, c in counts.items() if c == 1)


@dataclass(frozen=True)
class FVector:
    """Face counts by dimension, index 0 = vertices."""

    counts: tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return sum(c if i % 2 == 0 else -c for i, c in enumerate(self.counts))


def f_vector(x: "PolyComplex | SimplicialComplex") -> FVector:
    """Count faces of every dimension, deduplicated across cells.

    Free-sum cells contribute their proper faces plus the cell itself.
    """
    if isinstance(x, SimplicialComplex):
        x._require_nonvoid()
        x = PolyComplex.from_simplicial(x)
    faces: set[frozenset[VertexId]] = set()
    for s in x.simplex_cells:
        for k in range(1, len(s.verts) + 1):
            for c in combinations(s.verts, k):
                faces.add(frozenset(c))
    full_cells: set[frozenset[VertexId]] = set()
    for cell in x.free_cells:
        full_cells.add(cell.vset)
        for f in cell.proper_faces():
            faces.add(f.vset)
    counts = [0] * (x.dim + 1)
    for f in faces:
        counts[len(f) - 1] += 1
    # a full free-sum cell is a dim-dimensional face with more vertices
    counts[x.dim] += len(full_cells)
    return FVector(tuple(counts))


def gale_evenness(subset: Iterable[int], n: int) -> bool:
    """Gale's evenness condition for a candidate facet of a cyclic polytope.

    Between any two consecutive non-members the number of members must be
    even; runs touching either end of [1, n] are unconstrained.
    """
    members = set(subset)
    run = 0
    seen_gap = False
    for v in range(1, n + 1):
        if v in members:
            run += 1
        else:
            if seen_gap and run % 2 == 1:
                return False
            seen_gap = True
            run = 0
    return True


def cyclic_polytope_facets(n: int, d: int) -> SimplicialComplex:
    """Boundary complex of the cyclic d-polytope on n vertices.

    Vertices are the raw labels 1..n; facets are the d-subsets passing
    Gale's evenness condition.
    """
    if d < 2:
        raise DegenerateInput("cyclic polytopes need dimension >= 2")
    if n <= d:
        raise DegenerateInput(f"need n > d, got n={n}, d={d}")
    verts = [VertexId.raw(i) for i in range(1, n + 1)]
    facets = []
    for idxs in combinations(range(1, n + 1), d):
        if gale_evenness(idxs, n):
            facets.append(Simplex(verts[i - 1] for i in idxs))
    return SimplicialComplex.from_facets(facets)

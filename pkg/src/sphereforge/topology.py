"""Certification oracles: GF(2) homology, sphere/ball recognition, shellings.

These are the independent checks the rest of the package is validated
against.  Homology is computed over the 2-element field with bitset
Gaussian elimination, which is exact; sphere and ball certificates
combine the Betti pattern with pseudomanifold flags and recursive vertex
link certification (depth-limited to dimension 5).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Simplex, SimplicialComplex
from .errors import DegenerateInput, InvalidOrder

LINK_RECURSION_MAX_DIM = 5

SPHERE = "sphere"
BALL = "ball"
NEITHER = "neither"


@dataclass(frozen=True)
class ShellingOrder:
    """Facets in a proposed shelling sequence."""

    order: tuple[Simplex, ...]

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class TopologyCertificate:
    """Outcome of certification plus the evidence it rests on."""

    kind: str
    dim: int
    betti: tuple[int, ...] | None
    pseudomanifold: bool
    closed: bool
    dual_connected: bool
    links_verified: bool

    def is_sphere(self, d: int | None = None) -> bool:
        return self.kind == SPHERE and (d is None or self.dim == d)

    def is_ball(self, d: int | None = None) -> bool:
        return self.kind == BALL and (d is None or self.dim == d)


def _indexed_facets(x: SimplicialComplex) -> list[tuple[int, ...]]:
    index = {v: i for i, v in enumerate(x.vertices)}
    return [tuple(sorted(index[v] for v in f)) for f in x.facets]


def _faces_by_dim(facets: list[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    top = len(facets[0]) - 1
    seen: list[set[tuple[int, ...]]] = [set() for _ in range(top + 1)]
    for f in facets:
        for k in range(1, len(f) + 1):
            for c in combinations(f, k):
                seen[k - 1].add(c)
    return [sorted(s) for s in seen]


def _rank_gf2(columns: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            p = col.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = col
                rank += 1
                break
            col ^= other
    return rank


def _betti_from_indexed(facets: list[tuple[int, ...]]) -> tuple[int, ...]:
    faces = _faces_by_dim(facets)
    top = len(faces) - 1
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        row = {f: i for i, f in enumerate(faces[k - 1])}
        cols = []
        for f in faces[k]:
            mask = 0
            for c in combinations(f, k):
                mask |= 1 << row[c]
            cols.append(mask)
        ranks[k] = _rank_gf2(cols)
    betti = []
    for k in range(top + 1):
        b = len(faces[k]) - ranks[k] - ranks[k + 1]
        if k == 0:
            b -= 1
        betti.append(b)
    return tuple(betti)


def betti_gf2(x: SimplicialComplex) -> tuple[int, ...]:
    """Reduced Betti numbers over GF(2) in dimensions 0..dim."""
    x._require_nonvoid()
    if x.dim < 0:
        raise DegenerateInput("the empty-facet complex has no homology to report")
    return _betti_from_indexed(_indexed_facets(x))


def _ridge_counts(facets: list[tuple[int, ...]]) -> dict[tuple[int, ...], list[int]]:
    """Map each codimension-1 face to the indices of facets containing it."""
    out: dict[tuple[int, ...], list[int]] = {}
    for i, f in enumerate(facets):
        for j in range(len(f)):
            r = f[:j] + f[j + 1:]
            out.setdefault(r, []).append(i)
    return out


def _dual_connected(n_facets: int, ridges: dict[tuple[int, ...], list[int]]) -> bool:
    if n_facets <= 1:
        return True
    parent = list(range(n_facets))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for owners in ridges.values():
        for b in owners[1:]:
            ra, rb = find(owners[0]), find(b)
            if ra != rb:
                parent[ra] = rb
    root = find(0)
    return all(find(i) == root for i in range(n_facets))


def _sphere_pattern(d: int) -> tuple[int, ...]:
    return (0,) * d + (1,)


def _kind_low_dim(facets: list[tuple[int, ...]]) -> str:
    """Sphere/ball/neither for dimensions 0 and 1, directly."""
    d = len(facets[0]) - 1
    if d == 0:
        return SPHERE if len(facets) == 2 else BALL if len(facets) == 1 else NEITHER
    degree: dict[int, int] = {}
    for e in facets:
        for v in e:
            degree[v] = degree.get(v, 0) + 1
    if any(c > 2 for c in degree.values()):
        return NEITHER
    if not _dual_connected(len(facets), _ridge_counts(facets)):
        return NEITHER
    ends = sum(1 for c in degree.values() if c == 1)
    if ends == 0:
        return SPHERE
    return BALL if ends == 2 else NEITHER


def _certify_indexed(facets: list[tuple[int, ...]]) -> TopologyCertificate:
    d = len(facets[0]) - 1
    if d <= 1:
        kind = _kind_low_dim(facets)
        betti = _betti_from_indexed(facets)
        closed = kind == SPHERE
        return TopologyCertificate(kind, d, betti, kind != NEITHER, closed, True, True)

    # iterated vertex links of this complex are memoized by the face
    # whose link they are
    memo: dict[tuple[int, ...], tuple[str, int]] = {}

    def link_kind(
        face: tuple[int, ...], parent_facets: list[tuple[int, ...]], vertex: int
    ) -> tuple[str, int]:
        cached = memo.get(face)
        if cached is not None:
            return cached
        sub = [
            tuple(w for w in f if w != vertex) for f in parent_facets if vertex in f
        ]
        result = _kind(sub, face)
        memo[face] = result
        return result

    def _kind(fs: list[tuple[int, ...]], face: tuple[int, ...]) -> tuple[str, int]:
        dd = len(fs[0]) - 1
        if dd <= 1:
            return _kind_low_dim(fs), dd
        ridges = _ridge_counts(fs)
        if any(len(owners) > 2 for owners in ridges.values()):
            return NEITHER, dd
        if not _dual_connected(len(fs), ridges):
            return NEITHER, dd
        betti = _betti_from_indexed(fs)
        boundary = [r for r, owners in ridges.items() if len(owners) == 1]
        verts = sorted({v for f in fs for v in f})
        if not boundary:
            if betti != _sphere_pattern(dd):
                return NEITHER, dd
            for v in verts:
                sub_face = tuple(sorted(face + (v,)))
                if link_kind(sub_face, fs, v) != (SPHERE, dd - 1):
                    return NEITHER, dd
            return SPHERE, dd
        if any(b != 0 for b in betti):
            return NEITHER, dd
        bd_cert = _certify_indexed(boundary)
        if not bd_cert.is_sphere(dd - 1):
            return NEITHER, dd
        bd_verts = {v for r in boundary for v in r}
        for v in verts:
            sub_face = tuple(sorted(face + (v,)))
            expected = BALL if v in bd_verts else SPHERE
            if link_kind(sub_face, fs, v) != (expected, dd - 1):
                return NEITHER, dd
        return BALL, dd

    ridges = _ridge_counts(facets)
    worst = max(len(owners) for owners in ridges.values())
    pm = worst <= 2
    closed = pm and all(len(owners) == 2 for owners in ridges.values())
    connected = _dual_connected(len(facets), ridges)
    betti = _betti_from_indexed(facets)
    if not pm or not connected:
        return TopologyCertificate(NEITHER, d, betti, pm, closed, connected, True)

    check_links = d <= LINK_RECURSION_MAX_DIM
    verts = sorted({v for f in facets for v in f})

    if closed:
        if betti != _sphere_pattern(d):
            return TopologyCertificate(NEITHER, d, betti, pm, closed, connected, True)
        if check_links:
            for v in verts:
                if link_kind((v,), facets, v) != (SPHERE, d - 1):
                    return TopologyCertificate(
                        NEITHER, d, betti, pm, closed, connected, True
                    )
        return TopologyCertificate(SPHERE, d, betti, pm, closed, connected, check_links)

    if any(b != 0 for b in betti):
        return TopologyCertificate(NEITHER, d, betti, pm, closed, connected, True)
    boundary = [r for r, owners in ridges.items() if len(owners) == 1]
    bd_cert = _certify_indexed(boundary)
    if not bd_cert.is_sphere(d - 1):
        return TopologyCertificate(NEITHER, d, betti, pm, closed, connected, True)
    if check_links:
        bd_verts = {v for r in boundary for v in r}
        for v in verts:
            expected = BALL if v in bd_verts else SPHERE
            if link_kind((v,), facets, v) != (expected, d - 1):
                return TopologyCertificate(
                    NEITHER, d, betti, pm, closed, connected, True
                )
    return TopologyCertificate(BALL, d, betti, pm, closed, connected, check_links)


def certify(x: SimplicialComplex) -> TopologyCertificate:
    """Certify a pure complex as a sphere, a ball, or neither.

    Sphere(d): closed pseudomanifold, connected dual graph, GF(2) Betti
    pattern of a d-sphere, and all vertex links certify as (d-1)-spheres.
    Ball(d): pseudomanifold with nonempty boundary certifying as a
    (d-1)-sphere, vanishing reduced homology, interior vertex links
    spheres and boundary vertex links balls.  Above dimension 5 the link
    recursion is skipped and flagged.
    """
    x._require_nonvoid()
    if x.dim < 0:
        raise DegenerateInput("cannot certify the empty-facet complex")
    return _certify_indexed(_indexed_facets(x))


def verify_shelling(x: SimplicialComplex, s: "ShellingOrder | list[Simplex]") -> bool:
    """Check a facet order is a shelling of a ball.

    Each facet after the first must meet the union of its predecessors in
    a nonempty union of its codimension-1 faces, and never in its whole
    boundary (that would close a sphere inside a ball).
    """
    x._require_nonvoid()
    order = list(s.order if isinstance(s, ShellingOrder) else s)
    if len(order) != x.n_facets or set(order) != set(x.facets):
        raise InvalidOrder("order is not a permutation of the facets")
    if len(order) == 1:
        return True
    d = x.dim
    by_vertex: dict[object, list[int]] = {}
    for j, sigma in enumerate(order):
        if j > 0:
            earlier = sorted({i for v in sigma for i in by_vertex.get(v, ())})
            inters = [sigma.vset & order[i].vset for i in earlier]
            shared_ridges = {f for f in inters if len(f) == d}
            if not shared_ridges or len(shared_ridges) == d + 1:
                return False
            for inter in inters:
                if not any(inter <= r for r in shared_ridges):
                    return False
        for v in sigma:
            by_vertex.setdefault(v, []).append(j)
    return True

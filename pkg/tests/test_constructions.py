"""The named constructions against independent counting oracles."""

from itertools import product

import pytest

from sphereforge import betti_gf2, certify, realize
from sphereforge.constructions import (
    build_aztec,
    build_aztec_highd,
    build_cyclic,
    build_highd,
    build_holes3,
    build_holes4,
    sample_realization_certificates,
)
from sphereforge.errors import DegenerateInput
from sphereforge.grid import ehrhart_crosspolytope


def interior_point_count(lengths, width, residues):
    """Oracle: grid points strictly inside the box whose coordinate sum is
    in the given residue classes."""
    count = 0
    for p in product(*(range(2, n) for n in lengths)):
        if sum(p) % width in residues:
            count += 1
    return count


class TestHoles4:
    def test_count_matches_interior_point_oracle(self):
        for n, m in ((9, 9), (13, 13), (9, 12)):
            report = build_holes4(n, m)
            expected = interior_point_count((n, m), 4, {2, 3})
            assert report.free_cell_count == expected

    def test_vertex_count(self):
        report = build_holes4(9, 9)
        holes = len(report.per_hole_counts)
        assert report.vertex_count == 18 + holes + 1

    def test_small_instance_realizes_to_spheres(self):
        report = build_holes4(5, 5)
        manifest = report.manifest
        assert 1 < manifest.n_free_cells <= 10
        seen = set()
        for bits in product((0, 1), repeat=manifest.n_free_cells):
            r = realize(manifest, bits)
            seen.add(r.facets)
        assert len(seen) == 2 ** manifest.n_free_cells
        cert = certify(realize(manifest, (0,) * manifest.n_free_cells))
        assert cert.is_sphere(3)

    def test_sampled_realizations_certify(self):
        report = build_holes4(6, 6)
        sample_realization_certificates(report.manifest, 4, seed=7)

    def test_euler_characteristic_zero(self):
        from sphereforge import f_vector

        report = build_holes4(5, 5)
        assert f_vector(report.manifest.result).euler_characteristic == 0

    def test_minimal_instance_still_a_sphere(self):
        report = build_holes4(4, 4)
        bits = (0,) * report.free_cell_count
        assert certify(realize(report.manifest, bits)).is_sphere(3)

    def test_degenerate(self):
        with pytest.raises(DegenerateInput):
            build_holes4(3, 9)


class TestHoles3:
    def test_most_holes_incompatible(self):
        report = build_holes3(9, 9)
        assert report.flags["incompatible_holes"]

    def test_fallback_is_half_per_incompatible_hole(self):
        report = build_holes3(9, 9)
        for q in report.flags["incompatible_holes"]:
            assert report.flags["fallback_sizes"][q] * 2 == report.flags["family_sizes"][q]

    def test_count_matches_pairing_oracle(self):
        # candidates are interior points with sum = 2 mod 3, twice each
        # (a bottom and a top cell); the fallback keeps one per pair
        report = build_holes3(9, 9)
        points = interior_point_count((9, 9), 3, {2})
        assert report.claimed_bounds["candidate_cells"] == 2 * points
        assert report.free_cell_count == points

    def test_small_instance_is_sphere(self):
        report = build_holes3(4, 4)
        sample_realization_certificates(report.manifest, 2, seed=3)


class TestAztec:
    @pytest.mark.parametrize(
        "k,l", [(3, 1), (3, 3), (5, 2)]
    )
    def test_exact_counts(self, k, l):
        report = build_aztec(k, l)
        assert report.free_cell_count == (2 * k - 2) * l * l

    def test_vertex_count(self):
        report = build_aztec(3, 1)
        assert report.vertex_count == 2 * 3 * 1 + 2 + 1
        assert report.free_cell_count == 4

    def test_output_is_ball(self):
        report = build_aztec(3, 2)
        sample_realization_certificates(report.manifest, 2, seed=1, expect="ball")

    def test_per_hole_counts(self):
        report = build_aztec(5, 2)
        assert all(c == 8 for c in report.per_hole_counts.values())


class TestCyclic:
    def test_counts(self):
        # every hole carries all extreme cells of a width-4 band in a
        # (2n-1)^2 chart: (2n-3) on the bottom diagonal, (2n-2) on the top
        for n in (3, 4, 5):
            report = build_cyclic(n)
            assert report.free_cell_count == n * (4 * n - 5)
            assert all(c == 4 * n - 5 for c in report.per_hole_counts.values())

    def test_vertex_count_discrepancy_reported(self):
        report = build_cyclic(3)
        assert report.vertex_count == 15
        assert report.flags["vertex_count_alternatives"] == [15, 16]

    def test_realizations_certify_sphere(self):
        report = build_cyclic(3)
        sample_realization_certificates(report.manifest, 2, seed=5)

    def test_ratio_at_n10(self):
        report = build_cyclic(10, check=False)
        ratio = report.free_cell_count / 100
        assert 3.4 <= ratio <= 4.0


class TestHighd:
    def test_reduces_to_holes4_in_dim2(self):
        r2 = build_highd(2, 9)
        r4 = build_holes4(9, 9)
        assert r2.free_cell_count == r4.free_cell_count
        assert r2.vertex_count == r4.vertex_count

    def test_d3_count_matches_oracle(self):
        report = build_highd(3, 8)
        expected = interior_point_count((8, 8, 8), 5, {3, 4})
        assert expected == 86
        assert report.free_cell_count == expected

    def test_d3_cell_shapes(self):
        report = build_highd(3, 8)
        for cell in report.manifest.free_cells:
            assert len(cell.f_part) + len(cell.g_part) == 7
            assert sorted((len(cell.f_part), len(cell.g_part))) == [3, 4]

    def test_small_d3_realization_is_sphere(self):
        report = build_highd(3, 6)
        sample_realization_certificates(report.manifest, 1, seed=11)


class TestAztecHighd:
    def test_d2_matches_aztec(self):
        report = build_aztec_highd(2, 3, 2)
        assert report.free_cell_count == 16

    def test_d3_single_hole(self):
        report = build_aztec_highd(3, 3, 1)
        assert report.free_cell_count == ehrhart_crosspolytope(3, 1) - ehrhart_crosspolytope(3, 0)
        assert report.free_cell_count == 6

    def test_vertex_count_formula(self):
        for d, k, l in ((2, 3, 2), (3, 3, 1)):
            report = build_aztec_highd(d, k, l)
            assert report.vertex_count == d * (k * l + 1) + l ** d

    def test_homology_preserved(self):
        report = build_aztec_highd(3, 3, 1)
        bits = (0,) * report.free_cell_count
        assert all(b == 0 for b in betti_gf2(realize(report.manifest, bits)))

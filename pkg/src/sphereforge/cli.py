"""Command-line entry point wiring generation, filling, realization,
lifting, hulls and verification into reproducible pipelines.

Exit codes: 0 on success, 2 when a verification or certification fails,
1 on usage or input errors.  All randomness flows from --seed through a
fixed counter-based generator (see the sampling module), so identical
invocations produce byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import io as sfio
from .carvefill import BallInComplex, CompatibleFamily, carve_and_fill, realize
from .complexes import Simplex, VertexId
from .constructions import BUILDERS
from .errors import InputParseError, SphereforgeError
from .geometry import (
    build_aztec_lift,
    delta_search,
    detect_bipyramid_facets,
    hull_with_apex,
    raise_centers,
    verify_regular,
)
from .sampling import choice_vector, parse_hex_choices
from .topology import certify, verify_shelling

OK, VERIFY_FAILED, USAGE = 0, 2, 1

EXPECTED_KIND = {
    "holes4": "sphere",
    "holes3": "sphere",
    "cyclic": "sphere",
    "highd": "sphere",
    "aztec": "ball",
    "aztec-hd": "ball",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _base_path(out: str) -> str:
    return out[:-5] if out.endswith(".json") else out


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    env = os.environ.get("SPHEREFORGE_JOBS")
    return max(1, int(env)) if env else 1


def _cmd_generate(args) -> int:
    builder = BUILDERS[args.kind]
    if args.kind in ("holes4", "holes3"):
        report = builder(args.n, args.m if args.m else args.n, check=args.check)
    elif args.kind == "aztec":
        report = builder(args.k, args.l, check=args.check)
    elif args.kind == "cyclic":
        report = builder(args.n, check=args.check)
    elif args.kind == "highd":
        report = builder(args.d, args.n, check=args.check)
    else:
        report = builder(args.d, args.k, args.l, check=args.check)
    manifest = report.manifest
    base = _base_path(args.output)
    sfio.save_complex(f"{base}.json", manifest.result)
    sfio.save_manifest(f"{base}.manifest.json", manifest)
    zeros = (0,) * manifest.n_free_cells
    realized = realize(manifest, zeros)
    sfio.save_complex(f"{base}.realized.json", realized)
    sfio.write_text(f"{base}.report.json", sfio.dumps(sfio.report_to_obj(report)))
    summary = (
        f"{report.name}: {report.free_cell_count} free cells, "
        f"{report.simplex_cell_count} simplices, {report.vertex_count} vertices"
    )
    if not args.check:
        print(summary + ", unchecked")
        return OK
    expected = EXPECTED_KIND[args.kind]
    cert = certify(realized)
    certs = [cert]
    if args.samples:
        vectors = [
            choice_vector(args.seed, t, manifest.n_free_cells)
            for t in range(args.samples)
        ]
        with ThreadPoolExecutor(max_workers=_jobs(args)) as pool:
            certs.extend(pool.map(lambda b: certify(realize(manifest, b)), vectors))
    bad = [c for c in certs if c.kind != expected or c.dim != manifest.result.dim]
    kind_txt = f"{cert.kind}({cert.dim})"
    print(f"{summary}, certificate {kind_txt}")
    return OK if not bad else VERIFY_FAILED


def _cmd_fill(args) -> int:
    host = sfio.load_simplicial(args.input)
    spec = sfio._load_json(args.holes)
    try:
        holes = spec["holes"]
        keys, fams = [], []
        for hole in holes:
            key = sfio._key_parse(str(hole["key"]))
            facets = [Simplex(sfio._parse_verts(v)) for v in hole["facets"]]
            members = [Simplex(sfio._parse_verts(v)) for v in hole.get("members", [])]
            ball = BallInComplex.of(host, facets)
            keys.append(key)
            fams.append(CompatibleFamily.of(ball, members))
    except (KeyError, TypeError) as exc:
        raise InputParseError(f"malformed holes file: {exc}") from exc
    manifest = carve_and_fill(host, fams, keys=keys)
    sfio.save_manifest(args.output, manifest)
    print(f"filled {len(fams)} holes, {manifest.n_free_cells} free cells")
    return OK


def _cmd_realize(args) -> int:
    manifest = sfio.load_manifest(args.manifest)
    b = manifest.n_free_cells
    if args.choices is not None:
        try:
            bits = parse_hex_choices(args.choices, b)
        except ValueError as exc:
            raise InputParseError(str(exc)) from exc
    elif args.random:
        bits = choice_vector(args.seed, args.index, b)
    else:
        bits = (0,) * b
    realized = realize(manifest, bits)
    sfio.save_complex(args.output, realized)
    print(f"realized {b} cells -> {realized.n_facets} facets")
    return OK


def _cmd_verify_sphere(args, expected: str) -> int:
    x = sfio.load_simplicial(args.input)
    cert = certify(x)
    obj = sfio.certificate_to_obj(cert)
    print(sfio.dumps(obj).rstrip())
    if args.report:
        sfio.write_text(args.report, sfio.dumps(obj))
    return OK if cert.kind == expected else VERIFY_FAILED


def _cmd_verify_shelling(args) -> int:
    x = sfio.load_simplicial(args.input)
    order = sfio.load_order(args.order)
    ok = verify_shelling(x, order)
    print("shelling accepted" if ok else "shelling rejected")
    return OK if ok else VERIFY_FAILED


def _cmd_verify_regular(args) -> int:
    data = sfio.load_lift_data(args.input)
    ok = verify_regular(data["points"], data["heights"], data["subdivision"])
    print("regular subdivision verified" if ok else "regularity check failed")
    return OK if ok else VERIFY_FAILED


def _cmd_lift(args) -> int:
    lift = build_aztec_lift(args.k, args.l)
    sfio.save_lift(args.output, lift)
    print(
        f"lift certified with eps={lift.eps}; "
        f"{len(lift.subdivision)} cells, {lift.manifest.n_free_cells} bipyramids"
    )
    return OK


def _cmd_hull(args) -> int:
    data = sfio.load_lift_data(args.input)
    heights = data["heights"]
    pts = [(v, p + (heights[v],)) for v, p in data["points"]]
    facets, apex_pt = hull_with_apex(pts, VertexId.cone())
    count, kinds = detect_bipyramid_facets(
        facets, pts + [(VertexId.cone(), apex_pt)]
    )
    print(f"bipyramids: {count}")
    print(f"facets: {len(facets)} (simplices {kinds.count('simplex')}, other {kinds.count('other')})")
    if args.output:
        sfio.write_text(args.output, sfio.dumps(sfio.hull_to_obj(facets, kinds)))
    return OK


def _cmd_degree3(args) -> int:
    data = sfio.load_lift_data(args.input)
    if data["kind"] != "aztec":
        raise InputParseError("degree3 expects an aztec lift file")
    lift = build_aztec_lift(data["k"], data["l"])
    if lift.eps != data["eps"]:
        raise InputParseError("lift file does not match its regenerated lift")
    delta = delta_search(lift)
    heights, degree3 = raise_centers(lift, delta)
    guaranteed = (2 * lift.k - 6) * lift.l * lift.l
    print(f"degree-3 edges: {degree3} (guaranteed {guaranteed}), delta={delta}")
    if args.output:
        obj = {
            "delta": str(delta),
            "degree3_edges": degree3,
            "guaranteed": guaranteed,
            "heights": sfio._heights_to_obj(heights),
        }
        sfio.write_text(args.output, sfio.dumps(obj))
    return OK


def _cmd_count(args) -> int:
    manifest = sfio.load_manifest(args.manifest)
    for key in manifest.hole_keys:
        print(f"hole {sfio._key_str(key)}: {len(manifest.free_cells_by_ball[key])} free cells")
    b = manifest.n_free_cells
    print(f"total: {b} free cells, 2^{b} = {2 ** b} realizations")
    return OK


def _cmd_export_off(args) -> int:
    x = sfio.load_simplicial(args.input)
    data = sfio.load_lift_data(args.lift)
    coords = {v: p for v, p in data["points"]}
    text, sidecar = sfio.off_export(x, coords)
    sfio.write_text(args.output, text)
    sidecar_path = args.output + ".exact.json"
    sfio.write_text(sidecar_path, sfio.dumps(sidecar))
    print(f"wrote {args.output} (+ exact sidecar)")
    return OK


def build_parser() -> _Parser:
    p = _Parser(prog="sphereforge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a named construction")
    gsub = gen.add_subparsers(dest="kind", required=True)
    for kind in ("holes4", "holes3", "aztec", "cyclic", "highd", "aztec-hd"):
        g = gsub.add_parser(kind)
        if kind in ("holes4", "holes3"):
            g.add_argument("--n", type=int, required=True)
            g.add_argument("--m", type=int, default=0)
        elif kind == "aztec":
            g.add_argument("--k", type=int, required=True)
            g.add_argument("--l", type=int, required=True)
        elif kind == "cyclic":
            g.add_argument("--n", type=int, required=True)
        elif kind == "highd":
            g.add_argument("--d", type=int, required=True)
            g.add_argument("--n", type=int, required=True)
        else:
            g.add_argument("--d", type=int, required=True)
            g.add_argument("--k", type=int, required=True)
            g.add_argument("--l", type=int, required=True)
        g.add_argument("-o", "--output", required=True)
        g.add_argument("--check", dest="check", action="store_true", default=True)
        g.add_argument("--no-check", dest="check", action="store_false")
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--samples", type=int, default=0,
                       help="additionally certify this many seeded realizations")
        g.add_argument("--jobs", type=int, default=None)
        g.set_defaults(func=_cmd_generate)

    f = sub.add_parser("fill", help="carve and fill explicit holes")
    f.add_argument("--input", required=True)
    f.add_argument("--holes", required=True)
    f.add_argument("-o", "--output", required=True)
    f.set_defaults(func=_cmd_fill)

    r = sub.add_parser("realize", help="triangulate the free cells of a manifest")
    r.add_argument("--manifest", required=True)
    r.add_argument("--choices", help="hex bitstring, bit j selects cell j")
    r.add_argument("--random", action="store_true")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--index", type=int, default=0)
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=_cmd_realize)

    v = sub.add_parser("verify", help="certify spheres, balls, shellings, lifts")
    vsub = v.add_subparsers(dest="what", required=True)
    vs = vsub.add_parser("sphere")
    vs.add_argument("input")
    vs.add_argument("--report")
    vs.set_defaults(func=lambda a: _cmd_verify_sphere(a, "sphere"))
    vb = vsub.add_parser("ball")
    vb.add_argument("input")
    vb.add_argument("--report")
    vb.set_defaults(func=lambda a: _cmd_verify_sphere(a, "ball"))
    vk = vsub.add_parser("shelling")
    vk.add_argument("input")
    vk.add_argument("order")
    vk.set_defaults(func=_cmd_verify_shelling)
    vr = vsub.add_parser("regular")
    vr.add_argument("input")
    vr.set_defaults(func=_cmd_verify_regular)

    li = sub.add_parser("lift", help="certified regular lifts")
    lsub = li.add_subparsers(dest="what", required=True)
    la = lsub.add_parser("aztec")
    la.add_argument("--k", type=int, required=True)
    la.add_argument("--l", type=int, required=True)
    la.add_argument("-o", "--output", required=True)
    la.set_defaults(func=_cmd_lift)

    h = sub.add_parser("hull", help="brute-force hull of a lifted configuration")
    h.add_argument("--input", required=True)
    h.add_argument("--apex", default="auto", choices=["auto"])
    h.add_argument("-o", "--output")
    h.set_defaults(func=_cmd_hull)

    d3 = sub.add_parser("degree3", help="raise hole centers, count degree-3 edges")
    d3.add_argument("--input", required=True)
    d3.add_argument("-o", "--output")
    d3.set_defaults(func=_cmd_degree3)

    c = sub.add_parser("count", help="free-cell counts of a manifest")
    c.add_argument("--manifest", required=True)
    c.set_defaults(func=_cmd_count)

    e = sub.add_parser("export", help="export artifacts")
    esub = e.add_subparsers(dest="what", required=True)
    eo = esub.add_parser("off")
    eo.add_argument("--input", required=True, help="realized complex JSON")
    eo.add_argument("--lift", required=True, help="lift JSON providing coordinates")
    eo.add_argument("-o", "--output", required=True)
    eo.set_defaults(func=_cmd_export_off)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except InputParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return USAGE
    except SphereforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

One executable with five subcommands: dga-homology, distinguish, chords,
cord, specseq.  Results print as plain tables and can be written as JSON or
CSV; every run drops a manifest (command, parameters, versions, wall time,
output paths) into the output directory.  Exit codes: 0 ok, 2 invalid
length window, 3 malformed DGA input, 4 chord search failure rate over the
threshold, 5 cord truncation instability.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, chords, cord, free_dga, specseq

EXIT_OK = 0
EXIT_WINDOW = 2
EXIT_INVALID_DGA = 3
EXIT_CHORD_FAILURES = 4
EXIT_TRUNCATION = 5

FAILURE_RATE_THRESHOLD = 0.2


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _outdir(args) -> str:
    out = args.outdir or os.environ.get("STRINGHOM_OUTDIR") or "."
    os.makedirs(out, exist_ok=True)
    return out


def _write_manifest(args, command: str, parameters: dict, outputs: list[str], t0: float):
    manifest = {
        "command": command,
        "parameters": parameters,
        "versions": {
            "stringhom": __version__,
            "python": sys.version.split()[0],
            "numpy": np.__version__,
        },
        "wall_time_s": round(time.time() - t0, 3),
        "outputs": outputs,
    }
    path = os.path.join(_outdir(args), f"manifest_{command.replace('-', '_')}.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
    return path


def _load_or_build_dga(args) -> free_dga.DGA:
    if getattr(args, "spec", None):
        try:
            return free_dga.load_dga(args.spec)
        except free_dga.DGAError:
            raise
        except Exception as exc:
            raise free_dga.InvalidDGA(str(exc)) from exc
    if args.builtin == "hopf":
        return free_dga.build_hopf(args.d)
    if args.builtin == "unlink":
        return free_dga.build_unlink(args.d, args.z2star)
    raise free_dga.InvalidDGA("need --builtin or --spec")


def _valid_window(dga: free_dga.DGA, base: Fraction) -> free_dga.LengthWindow:
    """Nudge the bound upward in 1/7 steps until it clears the spectrum."""
    a = base
    for _ in range(64):
        window = free_dga.LengthWindow(a)
        try:
            window.ensure_valid(dga)
            return window
        except free_dga.WindowCollision:
            a += Fraction(1, 7)
    raise free_dga.WindowCollision("could not find a valid default window")


def _auto_window(dga: free_dga.DGA) -> free_dga.LengthWindow:
    """Largest generator length plus one half, nudged off the spectrum."""
    top = max((float(g.length) for g in dga.generators), default=1.0)
    return _valid_window(dga, Fraction(int(2 * top) + 1, 2))


def cmd_dga_homology(args) -> int:
    t0 = time.time()
    dga = _load_or_build_dga(args)
    window = free_dga.LengthWindow(args.a) if args.a is not None else _auto_window(dga)
    window.ensure_valid(dga)
    degrees = args.degree if args.degree else []
    if args.degree_range:
        lo, hi = args.degree_range
        degrees = list(range(lo, hi + 1))
    rows = [(p, free_dga.homology_dim(dga, p, window)) for p in degrees]
    result = {
        "dga": dga.name,
        "window": str(window.bound),
        "homology": [{"degree": p, "dim": d} for p, d in rows],
    }
    for p, d in rows:
        print(f"H_{p} (a={window.bound}) dim = {d}")
    if args.h0:
        dims = free_dga.h0_dims_by_wordcount(dga, window, args.wmax)
        result["h0_by_wordcount"] = dims
        print(f"H_0 word-count slices (w=0..{args.wmax}): {dims}")
    outputs = []
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=1, sort_keys=True)
        outputs.append(args.json)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["degree", "dim"])
            for p, d in rows:
                w.writerow([p, d])
        outputs.append(args.csv)
    _write_manifest(args, "dga-homology", _params(args), outputs, t0)
    return EXIT_OK


def cmd_distinguish(args) -> int:
    t0 = time.time()
    d = args.d
    hopf = free_dga.build_hopf(d)
    unlink = free_dga.build_unlink(d, args.z2star)
    if d == 2:
        wh = _valid_window(hopf, Fraction(2 * args.wmax) + Fraction(1, 2))
        wu = _valid_window(unlink, 2 * args.z2star * args.wmax + Fraction(1, 2))
        left = free_dga.h0_dims_by_wordcount(hopf, wh, args.wmax)
        right = free_dga.h0_dims_by_wordcount(unlink, wu, args.wmax)
        verdict = "DISTINCT" if left != right else "SAME"
        where = next((w for w in range(len(left)) if left[w] != right[w]), None)
        print(f"H_0 slices, linked pair:  {left}")
        print(f"H_0 slices, spaced pair:  {right}")
        print(f"verdict: {verdict}" + (f" (first difference at w = {where})" if where is not None else ""))
        result = {"d": d, "hopf": left, "unlink": right, "verdict": verdict}
    else:
        p = 2 * d - 4
        wh = _valid_window(hopf, Fraction(13, 2))
        wu = _valid_window(unlink, 2 * args.z2star + Fraction(1, 2))
        lh = free_dga.homology_dim(hopf, p, wh)
        lu = free_dga.homology_dim(unlink, p, wu)
        verdict = "DISTINCT" if lh != lu else "SAME"
        print(f"degree {p}: linked pair dim = {lh}, spaced pair dim = {lu}")
        print(f"verdict: {verdict}")
        result = {"d": d, "degree": p, "hopf": lh, "unlink": lu, "verdict": verdict}
    outputs = []
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=1, sort_keys=True)
        outputs.append(args.json)
    _write_manifest(args, "distinguish", _params(args), outputs, t0)
    return EXIT_OK


def cmd_chords(args) -> int:
    t0 = time.time()
    if args.builtin == "single":
        manifold = chords.single_sphere(args.d)
    else:
        manifold = chords.builtin_config(args.builtin, args.d, args.z2star)
    cfg = chords.ChordConfig(
        nu=args.nu,
        length_bound=args.a,
        seeds_per_circle=args.circle_seeds,
        seeds_per_sphere=args.sphere_seeds,
    )
    diagnostics: dict = {}
    results = chords.find_spectrum(manifold, cfg, diagnostics)
    lengths = [r.length for r in results]
    print(f"binormal chords below a={args.a}:")
    for r in results:
        print(
            f"  length {r.length:.9f}  components {r.comp_source}->{r.comp_target}"
            f"  residual {r.residual:.2e}  multiplicity {r.multiplicity}"
        )
    sums = None
    if args.m > 1:
        sums = chords.chord_sum_spectrum(lengths, args.m, args.a)
        print(f"{args.m}-fold sums below a: {[round(s, 9) for s in sums]}")
    if args.a is not None:
        near = [s for m in range(1, max(2, args.m) + 1)
                for s in chords.chord_sum_spectrum(lengths, m, args.a + 1.0)
                if abs(s - args.a) < 1e-6]
        if near:
            print(f"warning: window bound {args.a} sits on the length spectrum {near}")
    rate = diagnostics.get("failure_rate", 0.0)
    print(f"seeds {diagnostics.get('seeds', 0)}, failure rate {rate:.3f}, "
          f"descent violations {diagnostics.get('descent_violations', 0)}")
    outputs = []
    if args.json:
        report = {
            "config": {
                "builtin": args.builtin,
                "d": args.d,
                "z2star": args.z2star,
                "a": args.a,
                "nu": args.nu,
            },
            "chords": [r.as_json_dict() for r in results],
            "diagnostics": {k: v for k, v in diagnostics.items()},
        }
        if sums is not None:
            report["sum_spectrum"] = sums
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
        outputs.append(args.json)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["length", "comp_source", "comp_target", "residual", "multiplicity"])
            for r in results:
                w.writerow([f"{r.length:.12f}", r.comp_source, r.comp_target,
                            f"{r.residual:.3e}", r.multiplicity])
        outputs.append(args.csv)
    _write_manifest(args, "chords", _params(args), outputs, t0)
    if rate > FAILURE_RATE_THRESHOLD:
        print(f"error: failure rate {rate:.3f} exceeds {FAILURE_RATE_THRESHOLD}", file=sys.stderr)
        return EXIT_CHORD_FAILURES
    return EXIT_OK


def cmd_cord(args) -> int:
    t0 = time.time()
    pres = cord.builtin_presentation(args.builtin, args.kmax)
    dims = cord.quotient_dims_by_wordcount(pres, args.wmax)
    print(f"cord algebra slices (w=0..{args.wmax}): {dims}")
    if not cord.truncation_stable(args.builtin, args.kmax, args.wmax):
        print("error: slice dims unstable under kmax -> kmax+2", file=sys.stderr)
        _write_manifest(args, "cord", _params(args), [], t0)
        return EXIT_TRUNCATION
    rows = None
    if args.compare:
        if args.builtin == "hopf_link":
            dga = free_dga.build_hopf(2)
            window = free_dga.LengthWindow(Fraction(13, 2))
        elif args.builtin == "unlink2":
            dga = free_dga.build_unlink(2, 3)
            window = free_dga.LengthWindow(Fraction(41, 2))
        else:
            dga = None
        if dga is None:
            print("no built-in DGA counterpart; skipping comparison")
        else:
            match, rows = cord.compare_with_h0(pres, dga, window, args.wmax)
            for w, cdim, hdim, ok in rows:
                print(f"  w={w}: cord {cdim}  H_0 {hdim}  {'ok' if ok else 'DIFF'}")
            print("MATCH" if match else "MISMATCH")
    outputs = []
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            if rows is not None:
                w.writerow(["w", "cord_dim", "h0_dim", "match"])
                for row in rows:
                    w.writerow([row[0], row[1], row[2], int(row[3])])
            else:
                w.writerow(["w", "cord_dim"])
                for i, dim in enumerate(dims):
                    w.writerow([i, dim])
        outputs.append(args.csv)
    if args.json:
        result = {"builtin": args.builtin, "kmax": args.kmax, "dims": dims}
        if rows is not None:
            result["comparison"] = [
                {"w": r[0], "cord_dim": r[1], "h0_dim": r[2], "match": r[3]} for r in rows
            ]
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=1, sort_keys=True)
        outputs.append(args.json)
    _write_manifest(args, "cord", _params(args), outputs, t0)
    return EXIT_OK


def cmd_specseq(args) -> int:
    t0 = time.time()
    dga = _load_or_build_dga(args)
    if args.forget_f:
        dga = free_dga.forget_F(dga)
    window = free_dga.LengthWindow(args.a) if args.a is not None else _auto_window(dga)
    window.ensure_valid(dga)
    fc = specseq.from_dga(dga, window)
    tables = [specseq.page(fc, r) for r in range(1, args.rmax + 1)]
    einf = specseq.einfinity(fc)
    converged = specseq.convergence_check(fc)
    for t in tables:
        print(f"page r={t.r}: " + ", ".join(f"E({p},{q})={d}" for p, q, d in t.nonzero()))
    print("page E-inf: " + ", ".join(f"E({p},{q})={d}" for p, q, d in einf.nonzero()))
    print(f"convergence to total homology: {'OK' if converged else 'FAILED'}")
    outputs = []
    if args.csv:
        specseq.pages_to_csv(tables + [einf], args.csv)
        outputs.append(args.csv)
    _write_manifest(args, "specseq", _params(args), outputs, t0)
    return EXIT_OK


def _params(args) -> dict:
    skip = {"func"}
    return {
        k: (str(v) if isinstance(v, Fraction) else v)
        for k, v in vars(args).items()
        if k not in skip
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringhom",
        description="Homology of length-filtered link algebras, chord spectra, "
        "spectral sequences and cord algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--outdir", default=None, help="manifest/output directory")
        p.add_argument("--json", default=None, help="write JSON result here")
        p.add_argument("--csv", default=None, help="write CSV result here")

    p = sub.add_parser("dga-homology", help="homology dims of a built-in or JSON DGA")
    p.add_argument("--builtin", choices=["hopf", "unlink"])
    p.add_argument("--spec", help="DGA JSON file")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--z2star", type=_fraction, default=Fraction(3))
    p.add_argument("--a", type=_fraction, default=None, help="length window bound")
    p.add_argument("--degree", type=int, action="append", help="degree to compute")
    p.add_argument("--degree-range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--h0", action="store_true", help="also degree-0 word-count slices")
    p.add_argument("--wmax", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_dga_homology)

    p = sub.add_parser("distinguish", help="linked vs spaced pair discriminator")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--z2star", type=_fraction, default=Fraction(3))
    p.add_argument("--wmax", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("chords", help="binormal chord spectrum search")
    p.add_argument("--builtin", choices=["hopf", "unlink", "single"], required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--z2star", type=float, default=None)
    p.add_argument("--a", type=float, default=None, help="length bound")
    p.add_argument("--nu", type=int, default=16)
    p.add_argument("--m", type=int, default=1, help="also report m-fold sums")
    p.add_argument("--circle-seeds", type=int, default=24)
    p.add_argument("--sphere-seeds", type=int, default=36)
    common(p)
    p.set_defaults(func=cmd_chords)

    p = sub.add_parser("cord", help="cord algebra slice dimensions")
    p.add_argument("--builtin", choices=["unknot", "hopf_link", "unlink2"], required=True)
    p.add_argument("--wmax", type=int, default=4)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--compare", action="store_true", help="compare with DGA H_0")
    common(p)
    p.set_defaults(func=cmd_cord)

    p = sub.add_parser("specseq", help="weight-filtration spectral sequence pages")
    p.add_argument("--builtin", choices=["hopf", "unlink"])
    p.add_argument("--spec", help="DGA JSON file")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--z2star", type=_fraction, default=Fraction(3))
    p.add_argument("--a", type=_fraction, default=None)
    p.add_argument("--rmax", type=int, default=3)
    p.add_argument("--forget-f", action="store_true", help="stabilization part only")
    common(p)
    p.set_defaults(func=cmd_specseq)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except free_dga.WindowCollision as exc:
        print(f"error: invalid length window: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except free_dga.InvalidDGA as exc:
        print(f"error: invalid DGA: {exc}", file=sys.stderr)
        return EXIT_INVALID_DGA
    except cord.TruncationInstability as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())

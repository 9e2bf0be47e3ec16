"""Command line front end: verification suites, expansions, experiments.

Subcommands: verify, expand, tsm, experiment, zeros, demo-heisenberg.
Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage,
config, or guardrail error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Dict, List, Optional

import numpy as np

from ._rational import Q
from .config import RunConfig, load_config
from .gridfn import GridDomainError
from .harmonics import canonical_harmonic, harmonic_basis
from .laguerre import eval_phi, eval_phi_radial
from .reports import RunManifest, write_csv, write_report
from .rootisolation import common_zero_scan
from .suites import SUITES, run_numeric_suite, run_symbolic_suite
from .twisted import CalibrationError, ConvGeometry, DecayError, GuardrailError, \
    default_geometry, heisenberg_slice_demo, tsm_values, SphereMeasureSpec
from .typefunc import RadialProfile, TypeComponent, TypeFunction

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


def _build_typefunction(spec: Dict) -> TypeFunction:
    n = int(spec.get("n", 1))
    comps = []
    table = spec.get("component", {})
    if not table:
        raise UsageError("f spec needs at least one [component.<i>] section")
    for key in sorted(table):
        c = table[key]
        coeff = complex(float(c.get("coeff_re", 1.0)), float(c.get("coeff_im", 0.0)))
        p, q = int(c.get("p", 0)), int(c.get("q", 0))
        kind = c.get("profile", "gaussian")
        args = c.get("profile_args", [])
        if kind == "phi":
            prof = RadialProfile.phi(int(args[0]), int(args[1]))
        elif kind == "polygauss":
            prof = RadialProfile.from_x_poly([Q(str(a)) for a in args])
        elif kind == "gaussian":
            prof = RadialProfile.gaussian()
        else:
            raise UsageError(f"unknown profile kind {kind!r}")
        comps.append(TypeComponent(coeff, prof, canonical_harmonic(n, p, q)))
    return TypeFunction(n, comps, label=spec.get("label", "config"))


def _fixture_function(name: str, args: List, n: int):
    if name == "zero":
        return lambda z: np.zeros(np.asarray(z).shape[:-1], dtype=complex)
    if name == "phi":
        k = int(args[0])
        return lambda z: eval_phi(k, n, z)
    if name == "gaussian":
        a = float(args[0]) if args else 0.5
        return lambda z: np.exp(-a * np.sum(np.abs(np.asarray(z)) ** 2, axis=-1))
    raise UsageError(f"unknown fixture {name!r}")


def _manifest(args, command: str, overrides: Dict) -> RunManifest:
    return RunManifest.create(command=command, config_path=args.config,
                              overrides=overrides, seed=args.seed,
                              outdir=args.out, timestamp=args.timestamp)


def cmd_verify(args, cfg: RunConfig) -> int:
    g = cfg.guardrails
    if args.suite in ("symbolic", "all"):
        if args.pq_max > g.symbolic_pq_max or args.k_max > g.symbolic_k_max \
                or args.n_max > g.symbolic_n_max:
            raise UsageError(
                f"symbolic ranges exceed guardrails (pq<={g.symbolic_pq_max}, "
                f"k<={g.symbolic_k_max}, n<={g.symbolic_n_max})")
    rows: List[dict] = []
    suites = [args.suite] if args.suite != "all" else ["symbolic", "laguerre",
                                                       "harmonics", "numeric"]
    for name in suites:
        if name == "symbolic":
            rows += run_symbolic_suite(pq_max=args.pq_max, k_max=args.k_max,
                                       n_max=args.n_max, branch=args.branch_convention,
                                       threads=cfg.threads)
        elif name == "laguerre":
            rows += SUITES["laguerre"](inject_fault=args.inject_fault,
                                       threads=cfg.threads)
        elif name == "harmonics":
            rows += SUITES["harmonics"](threads=cfg.threads)
        elif name == "numeric":
            geom = default_geometry(1)
            if args.quick:
                geom = ConvGeometry(1, 10.0, 128)
            rows += run_numeric_suite(k_max=min(args.k_max, 5),
                                      orthogonality_only=args.orthogonality,
                                      geometry=geom,
                                      tol_orth=cfg.tolerances.orthogonality,
                                      threads=cfg.threads)
    failed = [r for r in rows if r["status"] != "pass"]
    payload = {"suite": args.suite, "checks": rows,
               "n_checks": len(rows), "n_failed": len(failed),
               "failed_ids": sorted({r["id"] for r in failed})}
    man = _manifest(args, "verify", {"suite": args.suite, "pq_max": args.pq_max,
                                     "k_max": args.k_max, "n_max": args.n_max,
                                     "branch": args.branch_convention})
    write_report(os.path.join(args.out, "verify_report.json"), man, payload)
    if args.format == "csv":
        flat = [{"id": r["id"], "status": r["status"],
                 "params": json.dumps(r["params"], sort_keys=True)} for r in rows]
        write_csv(os.path.join(args.out, "verify_report.csv"), flat, man)
    for r in failed:
        print(f"FAIL {r['id']} {json.dumps(r['params'], sort_keys=True)}",
              file=sys.stderr)
    print(f"verify {args.suite}: {len(rows) - len(failed)}/{len(rows)} checks passed")
    return EXIT_PASS if not failed else EXIT_FAIL


def cmd_expand(args, cfg: RunConfig) -> int:
    from .expansion import extract_expansion, spectral_projection
    if not args.f_spec:
        raise UsageError("expand requires --f-spec <toml>")
    from .config import parse_toml_min
    with open(args.f_spec, "r", encoding="utf-8") as fh:
        spec = parse_toml_min(fh.read())
    f = _build_typefunction(spec)
    exp = extract_expansion(f, args.k, f.n)
    rng = np.random.default_rng(args.seed)
    probes = rng.normal(size=(8, f.n)) + 1j * rng.normal(size=(8, f.n))
    probes /= np.linalg.norm(probes, axis=1, keepdims=True)
    probes *= np.linspace(0.5, 2.0, 8)[:, None]
    direct = spectral_projection(f, args.k, f.n, probes)
    ev = exp.evaluate(probes)
    resid = np.abs(ev - direct)
    man = _manifest(args, "expand", {"k": args.k, "f_spec": args.f_spec})
    write_report(os.path.join(args.out, "expansion.json"), man,
                 {"k": exp.k, "n": exp.n, "q_max": exp.q_max,
                  "tail_bound": exp.tail, "norm_sq_layered": exp.norm_sq_layered,
                  "coefficients": exp.table_rows()})
    rows = [{"probe": i,
             "re_direct": float(direct[i].real), "im_direct": float(direct[i].imag),
             "re_expansion": float(ev[i].real), "im_expansion": float(ev[i].imag),
             "residual": float(resid[i])} for i in range(len(probes))]
    write_csv(os.path.join(args.out, "expansion_comparison.csv"), rows, man)
    bound = (exp.tail if math.isfinite(exp.tail) else 0.0) + cfg.tolerances.expansion_slack
    ok = float(np.max(resid)) <= bound
    print(f"expand k={args.k}: max residual {float(np.max(resid)):.3e} "
          f"(bound {bound:.3e}); coefficients: {len(exp.table_rows())}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_tsm(args, cfg: RunConfig) -> int:
    n = args.n
    f = _fixture_function(args.fixture, args.fixture_args, n)
    weight = None
    if args.weight:
        p, q = (int(v) for v in args.weight.split(","))
        weight = canonical_harmonic(n, p, q)
    rng = np.random.default_rng(args.seed)
    probes = rng.normal(size=(args.probes, n)) + 1j * rng.normal(size=(args.probes, n))
    probes /= np.linalg.norm(probes, axis=1, keepdims=True)
    probes *= np.linspace(0.5, 1.8, args.probes)[:, None]
    rows = []
    for r in args.radius:
        spec = SphereMeasureSpec(center=(0j,) * n, radius=float(r), weight=weight,
                                 node_order=max(16, int(2 * r) + 8))
        vals = tsm_values(f, spec, probes)
        for i, v in enumerate(vals):
            rows.append({"radius": float(r), "probe": i, "re": float(v.real),
                         "im": float(v.imag)})
    man = _manifest(args, "tsm", {"fixture": args.fixture, "radius": args.radius,
                                  "weight": args.weight})
    write_csv(os.path.join(args.out, "tsm_values.csv"), rows, man)
    write_report(os.path.join(args.out, "tsm_values.json"), man, {"rows": rows})
    print(f"tsm: wrote {len(rows)} values")
    return EXIT_PASS


def cmd_experiment(args, cfg: RunConfig) -> int:
    from .expansion import cone_injectivity_experiment, sphere_injectivity_experiment
    if not args.config:
        raise UsageError("experiment requires --config <toml>")
    from .config import parse_toml_min
    with open(args.config, "r", encoding="utf-8") as fh:
        spec = parse_toml_min(fh.read())
    man = _manifest(args, f"experiment-{args.kind}", {"config": args.config})
    if args.kind == "sphere":
        sp = spec.get("sphere", {})
        n = int(sp.get("n", 2))
        f = _fixture_function(sp.get("f", "phi"), sp.get("f_args", [2]), n)
        weight = canonical_harmonic(n, int(sp.get("weight_p", 1)),
                                    int(sp.get("weight_q", 0)))
        rep = sphere_injectivity_experiment(
            f, weight, [float(r) for r in sp.get("R", [1.6])], n=n,
            k_max=int(sp.get("k_max", 4)), seed=args.seed)
        write_report(os.path.join(args.out, "sphere_experiment.json"), man, rep)
        rows = [{"k": k, "rel_err": v} for k, v in rep["recovered_rel_err"].items()]
        write_csv(os.path.join(args.out, "sphere_experiment.csv"), rows, man)
        if sp.get("f", "phi") == "zero":
            ok = rep["max_recovered_abs"] <= cfg.tolerances.zero_noise_floor
            print(f"sphere experiment (zero fixture): all coefficients pinned "
                  f"at {rep['max_recovered_abs']:.2e}"
                  if ok else "sphere experiment: zero fixture NOT pinned")
        else:
            worst = max(rep["recovered_rel_err"].values(), default=float("inf"))
            ok = worst <= cfg.tolerances.sphere_recovery
            print(f"sphere experiment: worst recovery rel err {worst:.3e}")
        return EXIT_PASS if ok else EXIT_FAIL
    if args.kind == "cone":
        cp = spec.get("cone", {})
        f = _build_typefunction(cp)
        dirs = []
        flat = cp.get("directions", [])
        width = 2 * f.n
        for i in range(0, len(flat), width):
            chunk = flat[i:i + width]
            dirs.append(np.array([complex(chunk[2 * j], chunk[2 * j + 1])
                                  for j in range(f.n)]))
        rep = cone_injectivity_experiment(f, dirs, K=int(cp.get("K", 2)),
                                          t_max=int(cp.get("t_max", 2)))
        write_report(os.path.join(args.out, "cone_experiment.json"), man, rep)
        rows = [row for d in rep["directions"] for pk in d["per_k"] for row in pk["rows"]]
        write_csv(os.path.join(args.out, "cone_experiment.csv"), rows, man)
        print(f"cone experiment verdict: {rep['verdict']}")
        expect = cp.get("expect_verdict")
        if expect:
            return EXIT_PASS if rep["verdict"] == expect else EXIT_FAIL
        return EXIT_PASS
    raise UsageError(f"unknown experiment kind {args.kind!r}")


def cmd_zeros(args, cfg: RunConfig) -> int:
    hits = common_zero_scan(args.k1, args.k2, Q(args.order), Q(args.xmax),
                            Q(args.resolution))
    man = _manifest(args, "zeros", {"k1": args.k1, "k2": args.k2,
                                    "order": args.order, "xmax": args.xmax,
                                    "resolution": args.resolution})
    write_report(os.path.join(args.out, "zeros_scan.json"), man,
                 {"coincidence_candidates": hits, "certified_disjoint": not hits})
    print(f"zeros: {len(hits)} coincidence candidates "
          f"(k1={args.k1}, k2={args.k2}, order={args.order})")
    return EXIT_PASS if not hits else EXIT_FAIL


def cmd_demo_heisenberg(args, cfg: RunConfig) -> int:
    f = lambda z, t: np.exp(-np.abs(z) ** 2) * np.exp(-t ** 2)
    demo = heisenberg_slice_demo(f, f, args.lam, z_steps=args.z_steps,
                                 t_steps=args.t_steps)
    payload = {"demo": demo["residual"], "z_steps": args.z_steps,
               "t_steps": args.t_steps}
    ok = demo["residual"] <= cfg.tolerances.slice_demo
    if args.refine:
        fine = heisenberg_slice_demo(f, f, args.lam, z_steps=2 * args.z_steps,
                                     t_steps=2 * args.t_steps - 1)
        payload["refined"] = fine["residual"]
        ok = ok and fine["residual"] <= 0.5 * demo["residual"]
    man = _manifest(args, "demo-heisenberg", {"z_steps": args.z_steps,
                                              "t_steps": args.t_steps,
                                              "lam": args.lam})
    write_report(os.path.join(args.out, "heisenberg_demo.json"), man, payload)
    msg = f"heisenberg slice demo: residual {demo['residual']:.3e}"
    if args.refine:
        msg += f", refined {payload['refined']:.3e}"
    print(msg)
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="TOML-style config file")
    common.add_argument("--out", default="out", help="output directory for reports")
    common.add_argument("--seed", type=int, default=20250810, help="experiment seed")
    common.add_argument("--tol", type=float, default=None,
                        help="override every tolerance with one value")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for suites")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="additional report format")
    common.add_argument("--timestamp", default=None,
                        help="fix the manifest timestamp (reproducible reports)")

    ap = argparse.ArgumentParser(
        prog="twistharm",
        description="Verification suites and experiments for twisted-convolution "
                    "harmonic analysis on C^n.",
        epilog="Examples:\n"
               "  twistharm verify symbolic --pq-max 3 --k-max 6 --n-max 3\n"
               "  twistharm verify numeric --orthogonality --kmax 5\n"
               "  twistharm zeros --k1 3 --k2 4 --order 1 --xmax 30 --resolution 1e-12\n"
               "  twistharm expand --f-spec fspec.toml --k 2 --out out/\n"
               "  twistharm experiment sphere --config exp.toml\n"
               "  twistharm demo-heisenberg --refine\n",
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites", parents=[common])
    v.add_argument("suite", choices=("symbolic", "laguerre", "harmonics",
                                     "numeric", "all"))
    v.add_argument("--pq-max", type=int, default=4)
    v.add_argument("--k-max", "--kmax", dest="k_max", type=int, default=6)
    v.add_argument("--n-max", type=int, default=3)
    v.add_argument("--orthogonality", action="store_true",
                   help="numeric suite: orthogonality matrix only")
    v.add_argument("--quick", action="store_true",
                   help="numeric suite on a coarser grid")
    v.add_argument("--branch-convention", choices=("resolved", "as-stated"),
                   default="resolved",
                   help="which sign/branch pairing of the ladder identity to verify")
    v.add_argument("--inject-fault", default=None,
                   help="deliberately corrupt a named table (testing the fail path)")

    e = sub.add_parser("expand", help="extract and compare a spectral expansion", parents=[common])
    e.add_argument("--f-spec", default=None, help="TOML file describing the function")
    e.add_argument("--k", type=int, default=1)

    t = sub.add_parser("tsm", help="tabulate twisted spherical means", parents=[common])
    t.add_argument("--fixture", default="phi")
    t.add_argument("--fixture-args", type=float, nargs="*", default=[2])
    t.add_argument("--n", type=int, default=1)
    t.add_argument("--radius", type=float, nargs="+", default=[1.0])
    t.add_argument("--weight", default=None, help="weight bidegree 'p,q'")
    t.add_argument("--probes", type=int, default=6)

    x = sub.add_parser("experiment", help="run an injectivity experiment", parents=[common])
    x.add_argument("kind", choices=("sphere", "cone"))

    z = sub.add_parser("zeros", help="certified common-zero scan", parents=[common])
    z.add_argument("--k1", type=int, required=True)
    z.add_argument("--k2", type=int, required=True)
    z.add_argument("--order", default="0")
    z.add_argument("--xmax", default="60")
    z.add_argument("--resolution", default="1e-12")

    d = sub.add_parser("demo-heisenberg", help="group-convolution slice demo", parents=[common])
    d.add_argument("--z-steps", type=int, default=16)
    d.add_argument("--t-steps", type=int, default=13)
    d.add_argument("--lam", type=float, default=1.0)
    d.add_argument("--refine", action="store_true")
    return ap


_COMMANDS = {
    "verify": cmd_verify,
    "expand": cmd_expand,
    "tsm": cmd_tsm,
    "experiment": cmd_experiment,
    "zeros": cmd_zeros,
    "demo-heisenberg": cmd_demo_heisenberg,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config, tol_override=args.tol, seed=args.seed,
                          threads=args.threads)
        code = _COMMANDS[args.command](args, cfg)
    except (CalibrationError, DecayError) as exc:
        print(f"check refused: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, GuardrailError, GridDomainError, FileNotFoundError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":
    sys.exit(main())

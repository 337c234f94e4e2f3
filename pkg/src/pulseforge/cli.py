"""Command-line frontend: synthesize, bound and verify pulse schemes.

Every synthesis command certifies its output against a seeded random
model before anything is written, so a file on disk is always a
verified scheme.  Exit codes: 0 success, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import bounds, designs, graphcolor, harmonic, netham, scheme, signs

RESIDUAL_TOL = 1e-9


def _env_seed() -> int:
    return int(os.environ.get("PULSEFORGE_SEED", "0"))


def _digest(path: str) -> str:
    with open(path, "rb") as f:
        return hashlib.sha256(f.read()).hexdigest()[:16]


def _load_json(path: str) -> dict:
    with open(path) as f:
        return json.load(f)


def _write_text(path: str, text: str):
    with open(path, "w") as f:
        f.write(text)


def _emit(report: dict):
    print(json.dumps(report, indent=2, sort_keys=True, default=float))


class _Run:
    """Collects the run report while a command executes."""

    def __init__(self, args: argparse.Namespace, inputs: list[str]):
        self.t0 = time.perf_counter()
        self.report = {
            "command": args.command,
            "options": {k: v for k, v in vars(args).items()
                        if k not in ("func", "command") and v is not None},
            "inputs": {p: _digest(p) for p in inputs},
            "outputs": [],
            "residuals": {},
        }

    def finish(self, ok: bool) -> int:
        self.report["ok"] = ok
        self.report["wall_time"] = round(time.perf_counter() - self.t0, 6)
        _emit(self.report)
        return 0 if ok else 1


def _graph_supported_model(g, d: int, seed: int) -> netham.PairHamiltonian:
    # same-color nodes share pulses, so couplings must live on graph edges
    model = netham.random_model(g.n, d, seed)
    m = d * d - 1
    J = np.zeros_like(model.J)
    for u, v in g.edges:
        J[u * m:(u + 1) * m, v * m:(v + 1) * m] = \
            model.J[u * m:(u + 1) * m, v * m:(v + 1) * m]
        J[v * m:(v + 1) * m, u * m:(u + 1) * m] = \
            model.J[v * m:(v + 1) * m, u * m:(u + 1) * m]
    return netham.PairHamiltonian(g.n, d, J, model.r)


def _write_scheme(sch, path: str, fmt: str):
    if fmt == "csv":
        _write_text(path, "\n".join(
            ",".join(str(int(e)) for e in row) for row in sch.pulses) + "\n")
    else:
        _write_text(path, json.dumps(scheme.scheme_to_json(sch),
                                     indent=2, sort_keys=True))


def cmd_decouple(args) -> int:
    inputs = [args.graph] if args.graph else []
    run = _Run(args, inputs)
    if args.graph:
        g = graphcolor.graph_from_json(_load_json(args.graph))
        sch = graphcolor.colored_decoupling_scheme(g, args.d)
        model = _graph_supported_model(g, args.d, args.seed)
    else:
        sch = scheme.decoupling_scheme(args.n, args.d)
        model = netham.random_model(args.n, args.d, args.seed)
    dim = args.d ** sch.n
    target = np.zeros((dim, dim))
    rep = scheme.verify_scheme(model, sch, target, overhead=1.0)
    run.report["intervals"] = sch.N
    run.report["residuals"]["decouple"] = rep["residual"]
    if rep["ok"] and args.out:
        _write_scheme(sch, args.out, args.format)
        run.report["outputs"].append(args.out)
    return run.finish(rep["ok"])


def cmd_invert(args) -> int:
    run = _Run(args, [])
    if args.harmonic:
        if args.format == "csv":
            raise ValueError("phase schemes have complex entries; use json")
        ps = harmonic.fourier_inversion(args.n)
        net = harmonic.random_network(args.n, 3, args.seed)
        numeric, _ = harmonic.phase_average(net, ps)
        H = harmonic.build_hc(net)
        overhead = float(args.n - 1)
        residual = np.linalg.norm(overhead * numeric + H) / np.linalg.norm(H)
        ok = residual <= RESIDUAL_TOL
        if ok and args.out:
            _write_text(args.out, json.dumps(
                harmonic.phase_scheme_to_json(ps), indent=2, sort_keys=True))
            run.report["outputs"].append(args.out)
        run.report["intervals"] = ps.N
    else:
        sch = scheme.inversion_scheme(args.n, args.d)
        model = netham.random_model(args.n, args.d, args.seed)
        H = netham.assemble(model)
        rep = scheme.verify_scheme(model, sch, -H)
        ok, residual, overhead = rep["ok"], rep["residual"], sch.target_overhead
        if ok and args.out:
            _write_scheme(sch, args.out, args.format)
            run.report["outputs"].append(args.out)
        run.report["intervals"] = sch.N
    run.report["overhead"] = overhead
    run.report["residuals"]["invert"] = residual
    return run.finish(ok)


def cmd_bound(args) -> int:
    run = _Run(args, [args.model])
    model = netham.model_from_json(_load_json(args.model))
    Jt = -model.J if args.invert else model.J
    trials = args.rescale_search if args.rescale_search else 1
    rep = bounds.bound_report(Jt, model.J, model.n, trials=trials,
                              seed=args.seed)
    run.report.update(rep)
    return run.finish(True)


def _load_target(spec_word: str, model, H: np.ndarray):
    if spec_word == "zero":
        return np.zeros_like(H)
    if spec_word == "invert":
        return -H
    doc = _load_json(spec_word)
    if "C" in doc:
        return harmonic.build_hc(harmonic.network_from_json(doc))
    return netham.assemble(netham.model_from_json(doc))


def cmd_verify(args) -> int:
    inputs = [args.model, args.scheme]
    if args.target not in ("zero", "invert"):
        inputs.append(args.target)
    run = _Run(args, inputs)
    sdoc = _load_json(args.scheme)
    if "phases" in sdoc:
        net = harmonic.network_from_json(_load_json(args.model))
        ps = harmonic.phase_scheme_from_json(sdoc)
        H = harmonic.build_hc(net)
        target = _load_target(args.target, net, H)
        numeric, _ = harmonic.phase_average(net, ps)
        overhead = args.overhead if args.overhead is not None else 1.0
        scale = max(np.linalg.norm(target), np.linalg.norm(H), 1e-30)
        residual = float(np.linalg.norm(overhead * numeric - target) / scale)
        ok = residual <= RESIDUAL_TOL
    else:
        model = netham.model_from_json(_load_json(args.model))
        sch = scheme.scheme_from_json(sdoc)
        H = netham.assemble(model)
        target = _load_target(args.target, model, H)
        rep = scheme.verify_scheme(model, sch, target, overhead=args.overhead)
        ok, residual = rep["ok"], rep["residual"]
    run.report["residuals"]["verify"] = residual
    return run.finish(ok)


def cmd_signs(args) -> int:
    inputs = [args.from_oa] if args.from_oa else []
    run = _Run(args, inputs)
    if args.m is not None:
        st = signs.spread_signs(args.m)
    else:
        design = designs.design_from_json(_load_json(args.from_oa))
        if not isinstance(design, designs.OrthogonalArray):
            raise ValueError("--from-oa expects an orthogonal-array file")
        st = signs.oa_to_signs(design)
    rep = signs.verify_signs(st)
    run.report["n"] = st.n
    run.report["N"] = st.N
    run.report["violations"] = rep["violations"][:16]
    run.report["residuals"]["sign_checks"] = float(len(rep["violations"]))
    if rep["ok"] and args.out:
        if args.format == "csv":
            rows = np.vstack([st.Sx, st.Sy, st.Sz])
            _write_text(args.out, "\n".join(
                ",".join(str(int(e)) for e in row) for row in rows) + "\n")
        else:
            _write_text(args.out, json.dumps(signs.signs_to_json(st),
                                             indent=2, sort_keys=True))
        run.report["outputs"].append(args.out)
    return run.finish(rep["ok"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulseforge",
        description="Design-based pulse schemes for coupled networks: "
                    "synthesis, overhead bounds and exact verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_env_seed(),
                        help="seed for verification models and searches "
                             "(default: PULSEFORGE_SEED or 0)")

    writer = argparse.ArgumentParser(add_help=False)
    writer.add_argument("--out", help="write the certified scheme here")
    writer.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("decouple", parents=[common, writer],
                       help="switch off all couplings and local terms")
    p.add_argument("--n", type=int, help="number of nodes")
    p.add_argument("--d", type=int, required=True, help="qudit dimension")
    p.add_argument("--graph", help="interaction graph JSON; enables the "
                                   "coloring reduction")
    p.set_defaults(func=cmd_decouple)

    p = sub.add_parser("invert", parents=[common, writer],
                       help="simulate the negated Hamiltonian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, help="qudit dimension (pulse path)")
    p.add_argument("--harmonic", action="store_true",
                   help="oscillator network phase scheme instead of pulses")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("bound", parents=[common],
                       help="spectral lower bounds on time overhead")
    p.add_argument("--model", required=True, help="coupling model JSON")
    p.add_argument("--invert", action="store_true",
                   help="bound the overhead of simulating -H")
    p.add_argument("--rescale-search", type=int, metavar="K",
                   help="try K random block rescalings for a sharper bound")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", parents=[common],
                       help="check a scheme file against a model and target")
    p.add_argument("--model", required=True)
    p.add_argument("--scheme", required=True)
    p.add_argument("--target", required=True,
                   help="'zero', 'invert', or a model JSON file")
    p.add_argument("--overhead", type=float,
                   help="time overhead factor (default: scheme's own)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("signs", parents=[common, writer],
                       help="sign-matrix triples for qubit networks")
    p.add_argument("--m", type=int, help="line-partition order")
    p.add_argument("--from-oa", help="convert a four-symbol array JSON")
    p.set_defaults(func=cmd_signs)
    return parser


def _check_flags(args) -> str | None:
    if args.command == "decouple" and not args.graph and args.n is None:
        return "decouple needs --n or --graph"
    if args.command == "invert" and not args.harmonic and args.d is None:
        return "invert needs --d unless --harmonic"
    if args.command == "signs":
        if (args.m is None) == (args.from_oa is None):
            return "signs needs exactly one of --m or --from-oa"
    return None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    msg = _check_flags(args)
    if msg:
        print(f"usage error: {msg}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

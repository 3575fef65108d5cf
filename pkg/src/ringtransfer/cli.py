"""Command-line front end.

Exit status: 0 on success, 1 for invalid input (bad flags, malformed spec,
unwritable output), 2 when a numerical check fails its tolerance.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import beamsplitter as bs
from .charfun import sweep_g
from .fock import entangled_transfer_check, fock_transfer_fidelity
from .lattice import (
    NetworkSpec,
    PermutationMatrix,
    cyclic_shift_matrix,
    hermitian_expm,
    is_hermitian,
    max_abs,
    mode_frequencies,
    ring_diagonalizer,
)
from .propagator import Propagator, check_transfer_conditions, mu_closed_form, mu_exponential_oracle, mu_spectral
from .synthesis import (
    couplings_spectral,
    intertwining_residual,
    synthesize_couplings,
    synthesize_for_permutation,
    validate_bogoliubov,
)

COMMANDS = ("synthesize", "evolve", "sweep-g", "transfer-check", "fock-demo", "entangle-demo", "bs-cascade", "validate")

EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} in output")
    return format(x, ".17g")


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if obj is None:
        return "null"
    return json.dumps(obj)


def matrix_record(spec: NetworkSpec, a, **extra) -> dict:
    a = np.asarray(a, dtype=complex)
    rec = {"s": spec.s, "tau": spec.tau, "m": list(spec.m)}
    rec.update(extra)
    rec["re"] = a.real.tolist()
    rec["im"] = a.imag.tolist()
    return rec


def load_matrix_record(path: str) -> tuple[NetworkSpec, np.ndarray]:
    try:
        rec = json.loads(Path(path).read_text(encoding="utf-8"))
        spec = NetworkSpec(rec["s"], rec["tau"], tuple(rec["m"]))
        a = np.asarray(rec["re"], dtype=float) + 1j * np.asarray(rec["im"], dtype=float)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read coupling file {path!r}: {exc}") from exc
    if a.shape != (spec.s, spec.s):
        raise UsageError(f"coupling file {path!r}: matrix shape {a.shape} does not match s={spec.s}")
    return spec, a


def parse_m(value, s: int) -> tuple[int, ...]:
    if isinstance(value, (list, tuple)):
        items = [int(v) for v in value]
    else:
        try:
            items = [int(v) for v in str(value).split(",") if v.strip() != ""]
        except ValueError as exc:
            raise UsageError(f"malformed --m list {value!r}") from exc
    if len(items) == 1:
        items = items * s
    if len(items) != s:
        raise UsageError(f"--m has {len(items)} entries but s = {s}")
    return tuple(items)


def spec_from_args(args) -> NetworkSpec:
    if args.s is None:
        raise UsageError("--s is required")
    try:
        return NetworkSpec(args.s, args.tau, parse_m(args.m, args.s))
    except ValueError as exc:
        raise UsageError(f"malformed spec: {exc}") from exc


def parse_perm(value, s: int) -> PermutationMatrix:
    """1-based image list: entry k is the site receiving site k's state."""
    try:
        items = value if isinstance(value, (list, tuple)) else str(value).split(",")
        perm = PermutationMatrix(tuple(int(v) - 1 for v in items))
    except ValueError as exc:
        raise UsageError(f"malformed permutation {value!r}: {exc}") from exc
    if perm.dim != s:
        raise UsageError(f"permutation has {perm.dim} entries but s = {s}")
    return perm


# -- commands --------------------------------------------------------------


def cmd_synthesize(args):
    spec = spec_from_args(args)
    if args.perm is not None:
        lam = synthesize_for_permutation(spec.s, spec.tau, parse_perm(args.perm, spec.s), spec.m)
    else:
        lam = synthesize_couplings(spec)
    if args.format == "csv":
        rows = ["j,k,re,im"]
        rows += [f"{j + 1},{k + 1},{fmt(lam[j, k].real)},{fmt(lam[j, k].imag)}" for j in range(spec.s) for k in range(spec.s)]
        return "\n".join(rows) + "\n", EXIT_OK
    return dumps(matrix_record(spec, lam)) + "\n", EXIT_OK


def cmd_evolve(args):
    if args.couplings:
        spec, lam = load_matrix_record(args.couplings)
        if not is_hermitian(lam, tol=1e-12 * max(1.0, max_abs(lam))):
            raise UsageError("coupling matrix is not Hermitian")
        mu = mu_exponential_oracle(lam, args.t * spec.tau)
        route = "exponential"
    else:
        spec = spec_from_args(args)
        mu = mu_closed_form(spec, args.t * spec.tau).mu
        route = "closed-form"
    rec = matrix_record(spec, mu, t=args.t * spec.tau, route=route)
    return dumps(rec) + "\n", EXIT_OK


def cmd_sweep_g(args):
    spec = spec_from_args(args)
    if not 1 <= args.site <= spec.s:
        raise UsageError(f"--site {args.site} outside 1..{spec.s}")
    if not args.t_min < args.t_max:
        raise UsageError("--t-min must be below --t-max")
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    series = sweep_g(spec, args.site, args.t_min * spec.tau, args.t_max * spec.tau, args.steps)
    return series.to_csv(), EXIT_OK


def cmd_transfer_check(args):
    spec = spec_from_args(args)
    src = args.source
    dst = args.target if args.target is not None else src % spec.s + 1
    t = args.t * spec.tau
    lam = synthesize_couplings(spec)
    routes = {
        "closed_form": mu_closed_form(spec, t),
        "spectral": mu_spectral(spec, t),
        "exponential": Propagator(t=t, mu=mu_exponential_oracle(lam, t)),
    }
    try:
        checks = {name: check_transfer_conditions(p, src, dst) for name, p in routes.items()}
    except IndexError as exc:
        raise UsageError(str(exc)) from exc
    ok = all(c.passed for c in checks.values())
    rec = {"s": spec.s, "tau": spec.tau, "m": list(spec.m), "t": t, "from": src, "to": dst, "passed": ok}
    rec["residuals"] = {name: c.residual for name, c in checks.items()}
    return dumps(rec) + "\n", EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_fock_demo(args):
    spec = spec_from_args(args)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    fids = [fock_transfer_fidelity(spec, args.n, k) for k in range(args.periods + 1)]
    ok = all(f >= 1 - 1e-9 for f in fids)
    rec = {"s": spec.s, "tau": spec.tau, "m": list(spec.m), "n": args.n, "fidelities": fids, "passed": ok}
    return dumps(rec) + "\n", EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_entangle_demo(args):
    spec = spec_from_args(args)
    try:
        rep = entangled_transfer_check(spec, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = rep.passed()
    rec = {
        "s": spec.s,
        "tau": spec.tau,
        "m": list(spec.m),
        "n": args.n,
        "t": rep.times,
        "fidelities": rep.fidelities,
        "min_intermediate": rep.min_intermediate,
        "passed": ok,
    }
    return dumps(rec) + "\n", EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_bs_cascade(args):
    p1, p2 = bs.BSParams.from_angle(args.theta1), bs.BSParams.from_angle(args.theta2)
    out = bs.cascade(p1, p2)
    rec = {
        "theta1": args.theta1,
        "theta2": args.theta2,
        "c10": [out.c10.real, out.c10.imag],
        "c01": [out.c01.real, out.c01.imag],
        "perfect_transfer": bs.perfect_transfer_condition(p1, p2),
    }
    return dumps(rec) + "\n", EXIT_OK


def cmd_validate(args):
    spec = spec_from_args(args)
    s, tau = spec.s, spec.tau
    u = ring_diagonalizer(s)
    c = cyclic_shift_matrix(s).to_matrix()
    lam = synthesize_couplings(spec, check=False)
    checks = {
        "bogoliubov": (max(validate_bogoliubov(u, np.zeros((s, s))).residuals), 1e-12),
        "diagonalizes_shift": (intertwining_residual(u, mode_frequencies(spec), tau, c), 1e-12),
        "coupling_routes": (max_abs(lam - couplings_spectral(spec)), 1e-12 * max(1.0, max_abs(lam))),
        "hermitian": (max_abs(lam - lam.conj().T), 1e-13 * max(1.0, max_abs(lam))),
        "mu_tau_is_shift": (max_abs(mu_spectral(spec, tau).mu - c), 1e-11),
        "mu_s_tau_is_identity": (max_abs(mu_closed_form(spec, s * tau).mu - np.eye(s)), 1e-11),
        "exponential_route": (max_abs(hermitian_expm(lam, tau) - c), 1e-10),
    }
    ok = all(r <= tol for r, tol in checks.values())
    rec = {"s": s, "tau": tau, "m": list(spec.m), "passed": ok}
    rec["checks"] = {k: {"residual": r, "tol": tol, "passed": r <= tol} for k, (r, tol) in checks.items()}
    return dumps(rec) + "\n", EXIT_OK if ok else EXIT_CHECK_FAILED


HANDLERS = {
    "synthesize": cmd_synthesize,
    "evolve": cmd_evolve,
    "sweep-g": cmd_sweep_g,
    "transfer-check": cmd_transfer_check,
    "fock-demo": cmd_fock_demo,
    "entangle-demo": cmd_entangle_demo,
    "bs-cascade": cmd_bs_cascade,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ringtransfer", description="Perfect state transfer around a ring of oscillators.")
    parser.add_argument("--config", help="JSON file of option values; flags given on the command line win")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def network(p):
        p.add_argument("--s", type=int, required=False, help="ring size")
        p.add_argument("--tau", type=float, default=1.0, help="transfer period (default 1)")
        p.add_argument("--m", default="0", help="comma-separated excitation integers; one value is broadcast (default 0)")
        p.add_argument("--out", help="write the result here instead of stdout")

    p = sub.add_parser("synthesize", help="coupling matrix for cyclic (or --perm) transfer")
    network(p)
    p.add_argument("--perm", help="1-based image list, e.g. 3,2,1 swaps sites 1 and 3; "
                   "m entries are assigned in cycle-traversal order")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("evolve", help="propagator mu(t)")
    network(p)
    p.add_argument("--t", type=float, default=1.0, help="time in units of tau (default 1)")
    p.add_argument("--couplings", help="coupling JSON written by 'synthesize'; overrides --s/--tau/--m")

    p = sub.add_parser("sweep-g", help="g_site(t) on a uniform grid, CSV")
    network(p)
    p.add_argument("--site", type=int, default=1)
    p.add_argument("--t-min", type=float, default=0.0, help="in units of tau")
    p.add_argument("--t-max", type=float, default=None, help="in units of tau (default s)")
    p.add_argument("--steps", type=int, default=701)

    p = sub.add_parser("transfer-check", help="check mu(t) moves site FROM to site TO on all three routes")
    network(p)
    p.add_argument("--from", dest="source", type=int, default=1)
    p.add_argument("--to", dest="target", type=int, default=None, help="default: next site")
    p.add_argument("--t", type=float, default=1.0, help="in units of tau")

    p = sub.add_parser("fock-demo", help="|n,0,..> transfer on the Fock-space oracle")
    network(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--periods", type=int, default=1)

    p = sub.add_parser("entangle-demo", help="(|n,0,..>+|0,n,..>)/sqrt2 transfer")
    network(p)
    p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("bs-cascade", help="one photon through two beam splitters")
    p.add_argument("--theta1", type=float, default=math.pi / 4, help="lam*tau of the first splitter")
    p.add_argument("--theta2", type=float, default=math.pi / 4, help="lam*tau of the second splitter")
    p.add_argument("--out")

    p = sub.add_parser("validate", help="run the structural identity checks for one spec")
    network(p)
    return parser


def _load_config(argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    try:
        cfg = json.loads(Path(known.config).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {known.config!r}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = _load_config(argv)
        if not any(a in COMMANDS for a in argv) and "command" in cfg:
            argv.append(str(cfg["command"]))
        parser = build_parser()
        command = next((a for a in argv if a in COMMANDS), None)
        if command is None:
            parser.print_usage(sys.stderr)
            stray = next((a for a in argv if not a.startswith("-")), None)
            if stray is not None and "=" not in stray:
                raise UsageError(f"unknown command {stray!r}; choose one of " + ", ".join(COMMANDS))
            raise UsageError("no command given; choose one of " + ", ".join(COMMANDS))
        if cfg:
            aliases = {"from": "source", "to": "target"}
            defaults = {aliases.get(k, k): v for k, v in cfg.items() if k not in ("command", "config")}
            parser._subparsers._group_actions[0].choices[command].set_defaults(**defaults)
        args = parser.parse_args(argv)
        if args.command == "sweep-g" and args.t_max is None:
            args.t_max = float(args.s) if args.s else None
        text, code = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    out = getattr(args, "out", None)
    if out:
        try:
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write output file {out!r}: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    if code == EXIT_CHECK_FAILED:
        print(f"error: numerical check failed in '{args.command}'", file=sys.stderr)
    return code


def main():
    sys.exit(run())

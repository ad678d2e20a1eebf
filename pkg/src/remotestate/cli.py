"""Command-line interface: one subcommand per analysis, deterministic tables out.

Exit codes: 0 success, 2 bad arguments, 3 domain error, 4 internal numeric
failure.
"""

import argparse
import logging
import math
import sys

import numpy as np

from . import dynamics, fidelity, region, statemap
from .errors import DomainError, NumericError
from .io import emit, json_text, table_text
from .oracle import MAX_SITES, evolve_and_reduce

log = logging.getLogger("remotestate")

EXIT_OK, EXIT_ARGS, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3, 4
POSITIVITY_TOL = 1e-12


class ArgumentError(Exception):
    pass


def b_grid(b_max=10.0):
    """0, 0.1, then 0.5 steps up to ``b_max``, then ``inf``."""
    bs = [0.0, 0.1]
    k = 1
    while 0.5 * k <= b_max + 1e-12:
        bs.append(0.5 * k)
        k += 1
    bs = [b for b in bs if b <= b_max + 1e-12]
    return bs + [math.inf]


def alpha_grid(count=11):
    return [k / (count - 1) for k in range(count)]


def _profile(n, args):
    return dynamics.find_first_maximum(n, args.scan_step, args.refine_tol)


def _profiles(args):
    if args.n_min < 2 or args.n_max < args.n_min:
        raise ArgumentError(f"invalid range n in [{args.n_min}, {args.n_max}]")
    return [_profile(n, args) for n in range(args.n_min, args.n_max + 1)]


def _check_phys(i_pol, j_coh, where):
    if i_pol * i_pol + j_coh > 0.25 + POSITIVITY_TOL or j_coh < 0.0:
        raise NumericError(f"positivity violated at {where}: I={i_pol}, J={j_coh}")


def cmd_profile(args):
    rows = [(p.n, p.tau_max, p.r) for p in _profiles(args)]
    return table_text(["n", "tau_max", "r"], rows, args.format, "profile")


def cmd_region(args):
    if args.n < 2:
        raise ArgumentError("n must be >= 2")
    if args.alpha_count < 2:
        raise ArgumentError("alpha grid needs at least 2 points")
    p = _profile(args.n, args)
    rows = []
    for b in b_grid(args.b_max):
        t = statemap.b_to_t(b)
        for alpha in alpha_grid(args.alpha_count):
            cp = statemap.ControlParams(alpha=alpha, t=t)
            if args.coords == "phys":
                pc = statemap.to_physical(cp, p.r, args.n)
                _check_phys(pc.i_pol, pc.j_coh, (alpha, b))
                x1, x2 = pc.i_pol, pc.j_coh
            else:
                sc = statemap.to_spectral(cp, p.r, args.n, p.tau_max)
                if not (0.5 - POSITIVITY_TOL <= sc.lam <= 1.0 + POSITIVITY_TOL
                        and 0.0 <= sc.beta1 <= 1.0):
                    raise NumericError(f"spectral coordinates out of range at {(alpha, b)}")
                x1, x2 = sc.lam, sc.beta1
            rows.append((alpha, b, t, x1, x2))
    names = ("i_pol", "j_coh") if args.coords == "phys" else ("lambda", "beta1")
    return table_text(["alpha", "b", "t", *names], rows, args.format, f"region_{args.coords}")


def cmd_boundary(args):
    if args.n < 2:
        raise ArgumentError("n must be >= 2")
    p = _profile(args.n, args)
    r = p.r
    report = {"n": args.n, "r": r, "tau_max": p.tau_max,
              "tail_end": region.tail_end(r), "i_c": region.i_c(r)}
    if args.n <= 3:
        report["two_fold"] = {"empty": True, "branch_point": None,
                              "upper_boundary": [], "alpha_br": []}
    else:
        tb = region.twofold_boundary(r, args.n, args.samples)
        curve = region.alpha_br_curve(r, args.n, args.samples)
        for _, i, j in tb.samples:
            _check_phys(i, j, "upper boundary")
        report["two_fold"] = {
            "empty": False,
            "branch_point": {"i_pol": tb.branch_point[0], "j_coh": tb.branch_point[1]},
            "upper_boundary": {"columns": ["t", "b", "i_pol", "j_coh"],
                               "rows": [[t, statemap.t_to_b(t), i, j] for t, i, j in tb.samples]},
            "alpha_br": {"columns": ["t", "b", "alpha"],
                         "rows": [[t, statemap.t_to_b(t), a] for t, a in curve]},
        }
    return json_text(report)


def cmd_zero_polarization(args):
    rows = []
    for p in _profiles(args):
        z = region.zero_polarization_max(p.r, p.n)
        rows.append((p.n, p.r, z.j0_max, z.log_j0_max / math.log(10.0), z.t0_max,
                     statemap.t_to_b(z.t0_max), math.cos(math.pi * z.alpha0_max), z.alpha0_max))
    header = ["n", "r", "j0_max", "log10_j0_max", "t0_max", "b0_max",
              "cos_alpha0_max", "alpha0_max"]
    return table_text(header, rows, args.format, "zero_polarization")


def cmd_coherence_threshold(args):
    if not 0.0 < args.j_min < 0.25:
        raise ArgumentError("--j-min must lie in (0, 1/4)")
    profiles = _profiles(args)
    rows = []
    thresholds = {}
    for p in profiles:
        try:
            t1, i1c = region.coherence_threshold(args.j_min, p.r, p.n)
        except DomainError:
            log.warning("j_min=%g unreachable for n=%d", args.j_min, p.n)
            continue
        thresholds[p.n] = t1
        rows.append((p.n, p.r, t1, statemap.t_to_b(t1), i1c))
    text = table_text(["n", "r", "t1", "b1", "i1_c"], rows, args.format, "coherence_threshold")
    if args.bands:
        # temperatures b1(10k) for every multiple of 10 in range
        ref_ts = [(n, thresholds[n]) for n in sorted(thresholds) if n % 10 == 0]
        band_rows = []
        for ref_n, t in ref_ts:
            for p in profiles:
                if p.n in thresholds and t >= thresholds[p.n]:
                    am, ap, im, ip = region.detectable_band(t, args.j_min, p.r, p.n)
                    band_rows.append((ref_n, statemap.t_to_b(t), t, p.n, am, ap, im, ip))
        header = ["ref_n", "b", "t", "n", "alpha1_minus", "alpha1_plus", "i1_minus", "i1_plus"]
        emit(table_text(header, band_rows, args.format, "detectable_bands"), args.bands)
    return text


def cmd_fidelity(args):
    rows = []
    for p in _profiles(args):
        rep = fidelity.fidelity_report(p)
        if rep.f_one_to_one + rep.f_two_fold > 1.0 + 1e-12:
            raise NumericError(f"fidelities exceed 1 at n={p.n}")
        rows.append((p.n, p.r, rep.s_one_to_one, rep.s_two_fold, rep.f_one_to_one,
                     rep.f_two_fold, rep.s_two_fold_err))
    header = ["n", "r", "s_one_to_one", "s_two_fold", "f_one_to_one", "f_two_fold",
              "s_two_fold_err"]
    return table_text(header, rows, args.format, "fidelity")


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def cmd_average(args):
    ns = args.n if args.n else [2] + list(range(10, 121, 10))
    if min(ns) < 2:
        raise ArgumentError("chain lengths must be >= 2")
    if args.b_step <= 0:
        raise ArgumentError("--b-step must be positive")
    count = int(round(args.b_max / args.b_step))
    bs = [k * args.b_step for k in range(count + 1)] + [math.inf]
    rows = []
    for n in ns:
        p = _profile(n, args)
        for b in bs:
            t = statemap.b_to_t(b)
            i_bar, j_bar = fidelity.averages(t, p.r, n)
            rows.append((n, b, t, i_bar, j_bar))
    return table_text(["n", "b", "t", "i_bar", "j_bar"], rows, args.format, "average")


def cmd_bessel(args):
    rows = []
    for p in _profiles(args):
        n = p.n
        r_appr = dynamics.bessel_approx_amplitude(n, p.tau_max)
        taus = args.scan_step * np.arange(1, int(np.floor(2 * n / args.scan_step + 1e-9)) + 1)
        gap = np.max(np.abs(dynamics.amplitude_modulus(n, taus)
                            - dynamics.bessel_approx_amplitude(n, taus)))
        rows.append((n, p.tau_max, p.r, r_appr, abs(p.r - r_appr), float(gap)))
    header = ["n", "tau_max", "r", "r_appr", "abs_diff", "sup_gap"]
    return table_text(header, rows, args.format, "bessel")


def cmd_oracle(args):
    if not 2 <= args.n <= MAX_SITES:
        raise ArgumentError(f"oracle needs 2 <= n <= {MAX_SITES}")
    cp = statemap.ControlParams.from_b(args.alpha, args.b, args.phi)
    ana = statemap.receiver_state(cp, args.n, args.tau)
    ex = evolve_and_reduce(cp, args.n, args.tau)
    diff = float(np.max(np.abs(ana.matrix() - ex.matrix())))
    if args.format == "csv":
        rows = [("analytic", ana.rho11, ana.r12, ana.phase), ("exact", ex.rho11, ex.r12, ex.phase)]
        return table_text(["source", "rho11", "r12", "phase"], rows, "csv", "oracle") + \
            f"# max_abs_diff,{diff:.3e}\n"
    return json_text({"alpha": args.alpha, "b": args.b, "t": cp.t, "phi": args.phi,
                      "n": args.n, "tau": args.tau,
                      "analytic": vars(ana), "exact": vars(ex), "max_abs_diff": diff})


def _add_scan(p):
    p.add_argument("--scan-step", type=float, default=dynamics.DEFAULT_SCAN_STEP)
    p.add_argument("--refine-tol", type=float, default=dynamics.DEFAULT_REFINE_TOL)


def _add_out(p, formats=("csv", "json"), default="csv"):
    p.add_argument("--format", choices=formats, default=default)
    p.add_argument("--out", default=None, help="output path (default: stdout)")


def _add_range(p, n_min=2, n_max=120):
    p.add_argument("--n-min", type=int, default=n_min)
    p.add_argument("--n-max", type=int, default=n_max)


def build_parser():
    parser = argparse.ArgumentParser(prog="remotestate", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="first amplitude maximum R(n), tau_max(n)")
    _add_range(p)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("region", help="gridded image of the control parameters")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coords", choices=("phys", "eig"), default="phys")
    p.add_argument("--b-max", type=float, default=10.0)
    p.add_argument("--alpha-count", type=int, default=11)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("boundary", help="two-fold subregion boundary and landmarks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=region.BOUNDARY_SAMPLES)
    _add_scan(p)
    _add_out(p, formats=("json",), default="json")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("zero-polarization", help="largest coherence at zero polarization")
    _add_range(p)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_zero_polarization)

    p = sub.add_parser("coherence-threshold", help="temperature needed for coherence j_min")
    _add_range(p)
    p.add_argument("--j-min", type=float, default=0.01)
    p.add_argument("--bands", default=None,
                   help="also write I/alpha bands at b1(10k) to this path")
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_coherence_threshold)

    p = sub.add_parser("fidelity", help="areas and fidelities of the subregions")
    _add_range(p, n_max=60)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("average", help="alpha-averaged polarization and coherence")
    p.add_argument("--n", type=_int_list, default=None, help="comma-separated lengths")
    p.add_argument("--b-max", type=float, default=10.0)
    p.add_argument("--b-step", type=float, default=0.1)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("bessel", help="Bessel approximation of the amplitude")
    _add_range(p, n_max=20)
    _add_scan(p)
    _add_out(p)
    p.set_defaults(func=cmd_bessel)

    p = sub.add_parser("oracle", help="closed form vs exact diagonalization")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--b", type=float, required=True, help="inverse temperature; accepts inf")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    _add_out(p, default="json")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "scan_step", 1.0) <= 0 or getattr(args, "refine_tol", 1.0) <= 0:
        parser.print_usage(sys.stderr)
        print("remotestate: error: --scan-step and --refine-tol must be positive", file=sys.stderr)
        return EXIT_ARGS
    try:
        text = args.func(args)
        emit(text, args.out)
    except ArgumentError as exc:
        print(f"remotestate: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"remotestate: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except DomainError as exc:
        print(f"remotestate: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericError, FloatingPointError) as exc:
        print(f"remotestate: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

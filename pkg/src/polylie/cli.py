"""Batch verification front-end.

Runs the theorem suites at configurable bounds, prints one line per
check, optionally writes the JSON report, and returns a CI-friendly
exit status: 0 all pass, 1 any check failed, 2 usage or bounds error.

Reports are deterministic for a fixed config and seed; elapsed-time
fields are informational and excluded from that contract.  The only
environment variable consulted is POLYLIE_JOBS, a default for --jobs.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import freelie, hkr, polydiff, symgrp, tlie
from .report import VerificationReport


class BoundsError(Exception):
    """Requested bounds outside the range the exact sweeps can sustain."""


def _pick(value, default):
    return default if value is None else value


def _ceiling(cfg, **limits):
    for name, limit in limits.items():
        value = cfg.get(name)
        if value is not None and value > limit:
            raise BoundsError(
                "%s=%d exceeds the supported bound %d for this suite" % (name, value, limit)
            )


def _run_symgrp(args):
    k_max = _pick(args.max_k, 4)
    n_max = _pick(args.max_deg, 6)
    cfg = {"k_max": k_max, "n_max": n_max}
    _ceiling(cfg, k_max=5, n_max=7)
    report = VerificationReport("symgrp", cfg)
    report.extend(symgrp.verify_star_identity(k_max=k_max))
    report.extend(symgrp.verify_dynkin(n_max=n_max))
    return report


def _run_pbw(args):
    cfg = {"q_max": _pick(args.vars, 2), "n_max": _pick(args.max_deg, 5)}
    _ceiling(cfg, q_max=3, n_max=6)
    report = VerificationReport("pbw", cfg)
    report.extend(freelie.verify_pbw(**cfg))
    report.extend(freelie.verify_nested_bracket_projector(q=min(cfg["q_max"], 2), n_max=min(cfg["n_max"], 4)))
    return report


def _run_theorem6(args):
    cfg = {
        "q_max": _pick(args.vars, 2),
        "max_sym_len": _pick(args.max_sym_len, 3),
        "max_deg": _pick(args.max_deg, 2),
    }
    _ceiling(cfg, q_max=2, max_sym_len=4, max_deg=3)
    report = VerificationReport("theorem6", cfg)
    report.extend(freelie.verify_theorem6(**cfg))
    report.extend(
        freelie.verify_multiply_out(
            q=min(cfg["q_max"], 2), inner_deg_max=cfg["max_deg"], outer_sym_len=2
        )
    )
    return report


def _run_theorem1(args):
    cfg = {
        "m_max": _pick(args.vars, 2),
        "max_sym_len": _pick(args.max_sym_len, 3),
        "max_deg": _pick(args.max_deg, 2),
        "coeff_deg": _pick(args.coeff_deg, 1),
    }
    _ceiling(cfg, m_max=2, max_sym_len=3, max_deg=2, coeff_deg=1)
    report = VerificationReport("theorem1", cfg)
    report.extend(hkr.verify_theorem1_dpoly(**cfg))
    report.extend(
        hkr.verify_wedge_route_identity(
            m_max=cfg["m_max"], coeff_deg=2, seed=args.seed, witness_pairs=10
        )
    )
    report.extend(
        polydiff.verify_atiyah_witnesses(m_max=cfg["m_max"], pairs=20, coeff_deg=2, seed=args.seed)
    )
    return report


def _run_theorem2(args):
    cfg = {
        "m_max": _pick(args.vars, 2),
        "degree_max": _pick(args.max_deg, 3),
        "samples": _pick(args.samples, 30),
        "seed": args.seed,
        "coeff_deg": _pick(args.coeff_deg, 2),
    }
    _ceiling(cfg, m_max=3, degree_max=4, samples=500, coeff_deg=3)
    report = VerificationReport("theorem2", cfg)
    report.extend(polydiff.verify_theorem2(**cfg))
    return report


def _run_hopf(args):
    cfg = {
        "m_max": _pick(args.vars, 2),
        "samples": _pick(args.samples, 50),
        "seed": args.seed,
        "coeff_deg": _pick(args.coeff_deg, 2),
    }
    _ceiling(cfg, m_max=3, samples=1000, coeff_deg=3)
    report = VerificationReport("hopf", cfg)
    report.extend(polydiff.verify_hochschild_basics(**cfg))
    report.extend(polydiff.verify_hopf_axioms(**cfg))
    return report


def _run_prop3(args):
    cfg = {
        "m_max": _pick(args.vars, 2),
        "order_max": _pick(args.max_deg, 4),
        "coeff_deg": _pick(args.coeff_deg, 2),
        "seed": args.seed,
    }
    _ceiling(cfg, m_max=2, order_max=5, coeff_deg=3)
    report = VerificationReport("prop3", cfg)
    report.extend(polydiff.verify_prop3_closure(**cfg))
    return report


def _run_adams(args):
    cfg = {
        "k_max": _pick(args.max_k, 3),
        "m_max": _pick(args.vars, 3),
        "coeff_deg": _pick(args.coeff_deg, 2),
        "seed": args.seed,
    }
    _ceiling(cfg, k_max=4, m_max=4, coeff_deg=3)
    report = VerificationReport("adams", cfg)
    report.extend(hkr.verify_adams_eigen(p_list=(2, 3), **cfg))
    return report


def _run_hkr(args):
    cfg = {
        "m_max": _pick(args.vars, 3),
        "k_max": _pick(args.max_k, 3),
        "coeff_deg": _pick(args.coeff_deg, 2),
    }
    _ceiling(cfg, m_max=4, k_max=4, coeff_deg=3)
    report = VerificationReport("hkr", cfg)
    report.extend(hkr.verify_hkr_factorization(**cfg))
    return report


def _run_observation1(args):
    cfg = {"k_max": _pick(args.max_k, 4), "j_max": 3}
    _ceiling(cfg, k_max=5)
    report = VerificationReport("observation1", cfg)
    report.extend(tlie.verify_observation1(**cfg))
    return report


def _run_theorem5(args):
    cfg = {"k_max": _pick(args.max_k, 3), "m_max": _pick(args.vars, 2), "sym_k_max": 4}
    _ceiling(cfg, k_max=3, m_max=2)
    report = VerificationReport("theorem5", cfg)
    report.extend(tlie.verify_theorem5_local(**cfg))
    return report


def _run_prop16(args):
    cfg = {
        "q": _pick(args.vars, 2),
        "max_deg": _pick(args.max_deg, 2),
        "max_sym_len": _pick(args.max_sym_len, 3),
    }
    _ceiling(cfg, q=2, max_deg=3, max_sym_len=3)
    report = VerificationReport("prop16", cfg)
    report.extend(tlie.verify_prop16(**cfg))
    return report


RUNNERS = {
    "symgrp": _run_symgrp,
    "pbw": _run_pbw,
    "theorem6": _run_theorem6,
    "theorem1": _run_theorem1,
    "theorem2": _run_theorem2,
    "hopf": _run_hopf,
    "prop3": _run_prop3,
    "adams": _run_adams,
    "hkr": _run_hkr,
    "observation1": _run_observation1,
    "theorem5": _run_theorem5,
    "prop16": _run_prop16,
}

SUITES = tuple(RUNNERS) + ("all",)


def run_suite(args) -> VerificationReport:
    if args.suite != "all":
        return RUNNERS[args.suite](args)
    merged = VerificationReport("all", {})
    names = list(RUNNERS)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(RUNNERS[name], args) for name in names]
            reports = [f.result() for f in futures]
    else:
        reports = [RUNNERS[name](args) for name in names]
    for name, report in zip(names, reports):
        merged.config[name] = report.config
        merged.extend(report, prefix=name + ".")
    return merged


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("bounds must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polylie",
        description="Exact verification suites for the symmetrization and "
        "polydifferential operator identities.",
    )
    parser.add_argument("--suite", choices=SUITES, default="all", help="suite to run")
    parser.add_argument("--vars", type=_nonneg, default=None, help="number of variables / generators")
    parser.add_argument("--max-deg", type=_nonneg, default=None, help="degree / order bound")
    parser.add_argument("--max-k", type=_nonneg, default=None, help="tensor length bound")
    parser.add_argument("--max-sym-len", type=_nonneg, default=None, help="symmetric word length bound")
    parser.add_argument("--coeff-deg", type=_nonneg, default=None, help="coefficient degree bound")
    parser.add_argument("--samples", type=_nonneg, default=None, help="seeded sample count")
    parser.add_argument("--seed", type=int, default=0, help="random seed for sampled checks")
    parser.add_argument("--json", metavar="PATH", default=None, help="write the JSON report here")
    parser.add_argument("--quiet", action="store_true", help="print failures and the summary only")
    parser.add_argument(
        "--jobs",
        type=int,
        default=int(os.environ.get("POLYLIE_JOBS", "1")),
        help="parallel suite workers for --suite all (default POLYLIE_JOBS or 1)",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        report = run_suite(args)
    except BoundsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    checks = sorted(report.checks, key=lambda check: check.name)
    for check in checks:
        if args.quiet and check.status == "pass":
            continue
        line = "[%s] %s: %s" % (check.status, check.name, check.detail)
        if check.witness:
            line += " | witness: %s" % check.witness
        print(line)
    failed = len(report.failures())
    print(
        "suite %s: %d checks, %d failed%s"
        % (report.suite, len(report.checks), failed, "" if failed else ", all passed")
    )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(report.to_json())
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())

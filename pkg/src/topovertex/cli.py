"""Command-line front end.

Every subcommand is a thin wrapper over a library call: arguments are
parsed into a RunConfig, dispatched, and the result is emitted as canonical
JSON (sorted keys, fixed separators), so identical configurations produce
byte-identical output.  Exit codes: 0 success, 1 verification mismatch,
2 invalid input, 3 configuration blow-up guard.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field

from .partitions import EMPTY, Partition
from .qalgebra import QRational
from .schur import Q_RHO, Spec, VerifyReport, skew_schur, verify_cauchy
from .vertex import topological_vertex, verify_cyclic
from .web import (
    BlowUpError,
    BoundaryData,
    C3,
    CONIFOLD,
    StripDiagram,
    closed_partition_function,
    conifold_alternative,
    conifold_product_formula,
    glued_partition_function,
    verify_strip_oracle,
)
from .hierarchy import hirota_check, tau_coefficients, general_generating_function
from .waves import (
    RouteDisagreement,
    classical_mirror_check,
    mirror_curve,
    product_form_check,
    verify_qdifference,
    verify_recurrence,
    wave_coefficients,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_BLOW_UP = 3


@dataclass
class RunConfig:
    """Resolved global options of one CLI invocation."""

    command: str
    fmt: str = "json"
    seed: int = 0
    max_configs: int = 500_000
    options: dict = field(default_factory=dict)


def _parse_partition(text: str) -> Partition:
    try:
        return Partition(json.loads(text))
    except (json.JSONDecodeError, ValueError, TypeError) as exc:
        raise ValueError(f"bad partition {text!r}: {exc}") from None


def _parse_strip(text: str) -> StripDiagram:
    if text == "conifold":
        return CONIFOLD
    if text == "c3":
        return C3
    if text.startswith("@"):
        with open(text[1:]) as fh:
            data = json.load(fh)
    else:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad strip JSON: {exc}") from None
    return StripDiagram.from_json(data)


def _parse_betas(text: str | None, n: int) -> tuple[Partition, ...]:
    if text is None:
        return (EMPTY,) * n
    data = json.loads(text)
    betas = tuple(Partition(b) for b in data)
    if len(betas) != n:
        raise ValueError(f"expected {n} vertical partitions, got {len(betas)}")
    return betas


def _emit(payload, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True,
                                    separators=(",", ":")) + "\n")
    else:
        _render_text(payload)


def _render_text(payload, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                sys.stdout.write(f"{pad}{key}:\n")
                _render_text(value, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {value}\n")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _render_text(value, indent + 1)
            else:
                sys.stdout.write(f"{pad}- {value}\n")
    else:
        sys.stdout.write(f"{pad}{payload}\n")


def _report_exit(reports: list[VerifyReport], cfg: RunConfig) -> int:
    payload = {"suites": [r.to_json() for r in reports],
               "ok": all(r.ok for r in reports)}
    _emit(payload, cfg)
    return EXIT_OK if payload["ok"] else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_schur(args, cfg: RunConfig) -> int:
    lam = _parse_partition(args.lam)
    mu = _parse_partition(args.mu) if args.mu else EMPTY
    spec = Spec.staircase(_parse_partition(args.beta)) if args.beta else Q_RHO
    value = skew_schur(lam, mu, spec)
    _emit({"lam": lam.to_json(), "mu": mu.to_json(), "value": value.to_json()}, cfg)
    return EXIT_OK


def _cmd_vertex(args, cfg: RunConfig) -> int:
    a = _parse_partition(args.alpha)
    b = _parse_partition(args.beta)
    c = _parse_partition(args.gamma)
    _emit({"value": topological_vertex(a, b, c).to_json()}, cfg)
    return EXIT_OK


def _cmd_zclosed(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    betas = _parse_betas(args.betas, strip.n_vertices)
    series = closed_partition_function(strip, betas, args.qdeg)
    _emit({"strip": strip.to_json(), "series": series.to_json()}, cfg)
    return EXIT_OK


def _cmd_zglue(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    betas = _parse_betas(args.betas, strip.n_vertices)
    boundary = BoundaryData(
        alpha0=_parse_partition(args.alpha0) if args.alpha0 else EMPTY,
        alphaN=_parse_partition(args.alphaN) if args.alphaN else EMPTY,
        betas=betas)
    series = glued_partition_function(strip, boundary, args.qdeg,
                                      max_configs=cfg.max_configs)
    _emit({"strip": strip.to_json(), "series": series.to_json()}, cfg)
    return EXIT_OK


def _cmd_zgen(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    betas = _parse_betas(args.betas, strip.n_vertices) if args.betas else None
    series = general_generating_function(strip, args.which, args.wcap,
                                         args.qdeg, betas=betas)
    _emit({"strip": strip.to_json(), "series": series.to_json()}, cfg)
    return EXIT_OK


def _cmd_tau(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    if args.tau_action == "coeffs":
        coeffs = tau_coefficients(strip, args.n, args.weight_cap, args.qdeg)
        payload = {"coeffs": [[lam.to_json(), a.to_json()]
                              for lam, a in sorted(coeffs.items(),
                                                   key=lambda kv: (kv[0].weight,
                                                                   kv[0].parts))]}
        _emit(payload, cfg)
        return EXIT_OK
    mutate = _parse_partition(args.mutate) if args.mutate else None
    report = hirota_check(strip, args.n, t_degree=args.tdeg, qdeg=args.qdeg,
                          mutate=mutate)
    return _report_exit([report], cfg)


def _cmd_wave(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    try:
        wave = wave_coefficients(strip, args.n, args.kind, args.K, args.qdeg)
    except RouteDisagreement as exc:
        _emit({"ok": False, "error": str(exc)}, cfg)
        return EXIT_VERIFY_FAILED
    _emit(wave.to_json(), cfg)
    return EXIT_OK


def _cmd_mirror(args, cfg: RunConfig) -> int:
    strip = _parse_strip(args.strip)
    curve = mirror_curve(strip, args.n)
    payload = curve.to_json()
    status = EXIT_OK
    if args.classical:
        report = classical_mirror_check(strip, args.n)
        payload["classical"] = report.to_json()
        if not report.ok:
            status = EXIT_VERIFY_FAILED
    _emit(payload, cfg)
    return status


# ---------------------------------------------------------------------------
# verification suites


def _suite_cauchy(args, cfg: RunConfig) -> list[VerifyReport]:
    qdeg = args.qdeg
    finite_x = Spec.finite([QRational.monomial(1, 1), QRational.monomial(-2, 2)])
    finite_y = Spec.finite([QRational.monomial(0, 3), QRational.monomial(2, 1)])
    mu, nu = Partition([1]), Partition([2])
    reports = []
    for identity in ("plain", "dual", "skew", "skew-dual"):
        for specx, specy, label in ((finite_x, finite_y, "2var"),
                                    (Q_RHO, Q_RHO, "qrho")):
            kw = {} if identity in ("plain", "dual") else {"mu": mu, "nu": nu}
            rep = verify_cauchy(identity, specx, specy, qdeg, **kw)
            rep.name = f"{rep.name}-{label}"
            reports.append(rep)
    return reports


def _suite_conifold_identity(args, cfg: RunConfig) -> list[VerifyReport]:
    from .partitions import partitions_up_to
    report = VerifyReport(name="conifold-identity")
    for b1 in partitions_up_to(args.beta_weight):
        for b2 in partitions_up_to(args.beta_weight):
            glued = glued_partition_function(
                CONIFOLD, BoundaryData(betas=(b1, b2)), args.qdeg,
                max_configs=cfg.max_configs)
            prod = conifold_product_formula(b1, b2, args.qdeg)
            alt = conifold_alternative(b1, b2, args.qdeg)
            report.record(glued == prod == alt,
                          {"betas": [b1.to_json(), b2.to_json()]})
    return [report]


def _suite_hirota(args, cfg: RunConfig) -> list[VerifyReport]:
    reports = []
    if args.which in ("c3", "all"):
        rep = hirota_check(C3, 1, t_degree=args.tdeg, qdeg=0)
        rep.name = "hirota-c3"
        reports.append(rep)
    if args.which in ("conifold", "all"):
        for n in (1, 2):
            rep = hirota_check(CONIFOLD, n, t_degree=args.tdeg, qdeg=args.qdeg)
            rep.name = f"hirota-conifold-{n}"
            reports.append(rep)
        control = hirota_check(CONIFOLD, 1, t_degree=args.tdeg, qdeg=args.qdeg,
                               mutate=Partition([2, 1]))
        flipped = VerifyReport(name="hirota-mutation-control")
        flipped.record(not control.ok, {"note": "mutated tau must fail"})
        reports.append(flipped)
    return reports


def _suite_wave(args, cfg: RunConfig) -> list[VerifyReport]:
    from itertools import product as iter_product
    reports = []
    agreement = VerifyReport(name="wave-route-agreement")
    rng = random.Random(cfg.seed)
    strips = [StripDiagram(sigma=sigma)
              for N in range(1, args.n_max + 1)
              for sigma in iter_product((1, -1), repeat=N)]
    if args.samples:
        extra = [tuple(rng.choice((1, -1)) for _ in range(args.n_max + 1))
                 for _ in range(args.samples)]
        strips.extend(StripDiagram(sigma=s) for s in extra)
    for strip in strips:
        for n in range(1, strip.n_vertices + 1):
            for kind in ("phi", "psi"):
                try:
                    wave_coefficients(strip, n, kind, args.K, args.qdeg)
                    agreement.record(True, {})
                except RouteDisagreement as exc:
                    agreement.record(False, {"sigma": list(strip.sigma),
                                             "n": n, "kind": kind,
                                             "error": str(exc)})
    reports.append(agreement)
    for strip, qdeg, label in ((CONIFOLD, 8, "conifold"), (C3, 0, "c3")):
        for kind in ("phi", "psi"):
            wave = wave_coefficients(strip, 1, kind, 8, qdeg)
            rec = verify_recurrence(wave)
            rec.name = f"recurrence-{label}-{kind}"
            qdiff = verify_qdifference(wave)
            qdiff.name = f"qdifference-{label}-{kind}"
            reports.extend([rec, qdiff])
    reports.append(product_form_check("conifold", 8))
    reports.append(product_form_check("c3", 8))
    return reports


def _suite_mirror(args, cfg: RunConfig) -> list[VerifyReport]:
    symbolic = VerifyReport(name="mirror-conifold-symbolic")
    curve = mirror_curve(CONIFOLD, 1)
    b_json = [[e, [[list(v), c.to_json()] for v, c in sorted(qp.coeffs.items())]]
              for e, qp in curve.B]
    expected_b = [[0, [[[0], QRational.from_int(1).to_json()]]]]
    c_dict = {e: {v: c for v, c in qp.coeffs.items()} for e, qp in curve.C}
    symbolic.record(b_json == expected_b, {"B": b_json})
    ok_c = (set(c_dict) == {-1, 0}
            and c_dict[0] == {(0,): QRational.from_int(1)}
            and c_dict[-1] == {(1,): QRational.from_int(-1)})
    symbolic.record(ok_c, {"note": "C must be 1 - Q/y"})
    reports = [symbolic,
               classical_mirror_check(CONIFOLD, 1),
               classical_mirror_check(CONIFOLD, 1, kind="psi")]
    return reports


def _cmd_verify(args, cfg: RunConfig) -> int:
    suite = args.suite
    if suite == "cauchy":
        reports = _suite_cauchy(args, cfg)
    elif suite == "cyclic":
        reports = [verify_cyclic(args.weight_max)]
    elif suite == "strip-oracle":
        reports = [verify_strip_oracle(args.n_max, args.qdeg, args.beta_weight)]
    elif suite == "conifold-identity":
        reports = _suite_conifold_identity(args, cfg)
    elif suite == "hirota":
        reports = _suite_hirota(args, cfg)
    elif suite == "wave":
        reports = _suite_wave(args, cfg)
    elif suite == "mirror":
        reports = _suite_mirror(args, cfg)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return _report_exit(reports, cfg)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topovertex",
        description="Exact topological-vertex partition functions on strips, "
                    "their KP tau structure and quantum mirror curves.")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled property checks")
    default_cap = int(os.environ.get("TOPOVERTEX_MAX_CONFIGS", 500_000))
    parser.add_argument("--max-configs", type=int, default=default_cap,
                        help="guard on gluing-sum configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schur", help="specialized (skew) Schur value")
    p.add_argument("--lam", required=True)
    p.add_argument("--mu")
    p.add_argument("--beta", help="use the shifted staircase of this partition")
    p.set_defaults(handler=_cmd_schur)

    p = sub.add_parser("vertex", help="topological vertex amplitude")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--gamma", required=True)
    p.set_defaults(handler=_cmd_vertex)

    p = sub.add_parser("zclosed", help="closed product formula of a strip")
    p.add_argument("--strip", default="conifold")
    p.add_argument("--betas")
    p.add_argument("--qdeg", type=int, default=3)
    p.set_defaults(handler=_cmd_zclosed)

    p = sub.add_parser("zglue", help="brute-force glued partition function")
    p.add_argument("--strip", default="conifold")
    p.add_argument("--betas")
    p.add_argument("--alpha0")
    p.add_argument("--alphaN")
    p.add_argument("--qdeg", type=int, default=3)
    p.set_defaults(handler=_cmd_zglue)

    p = sub.add_parser("zgen", help="multivariate generating functions")
    p.add_argument("--strip", default="conifold")
    p.add_argument("--which", choices=("z00-multi", "z-alpha"), required=True)
    p.add_argument("--wcap", type=int, default=2)
    p.add_argument("--qdeg", type=int, default=2)
    p.add_argument("--betas")
    p.set_defaults(handler=_cmd_zgen)

    p = sub.add_parser("tau", help="Schur coefficients and the Hirota probe")
    tau_sub = p.add_subparsers(dest="tau_action", required=True)
    pc = tau_sub.add_parser("coeffs")
    pc.add_argument("--strip", default="conifold")
    pc.add_argument("--n", type=int, default=1)
    pc.add_argument("--weight-cap", type=int, default=3)
    pc.add_argument("--qdeg", type=int, default=2)
    pc.set_defaults(handler=_cmd_tau)
    ph = tau_sub.add_parser("hirota")
    ph.add_argument("--strip", default="conifold")
    ph.add_argument("--n", type=int, default=1)
    ph.add_argument("--tdeg", type=int, default=6)
    ph.add_argument("--qdeg", type=int, default=2)
    ph.add_argument("--mutate", help="bump this coefficient (negative control)")
    ph.set_defaults(handler=_cmd_tau)

    p = sub.add_parser("wave", help="wave-function coefficients (two routes)")
    p.add_argument("--strip", default="conifold")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--kind", choices=("phi", "psi"), default="phi")
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--qdeg", type=int, default=2)
    p.set_defaults(handler=_cmd_wave)

    p = sub.add_parser("mirror", help="mirror curve of a strip vertex")
    p.add_argument("--strip", default="conifold")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--classical", action="store_true",
                   help="also run the numeric q -> 1 check")
    p.set_defaults(handler=_cmd_mirror)

    p = sub.add_parser("verify", help="identity suites; exit 1 on mismatch")
    vsub = p.add_subparsers(dest="suite", required=True)
    pv = vsub.add_parser("cauchy")
    pv.add_argument("--qdeg", type=int, default=3)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("cyclic")
    pv.add_argument("--weight-max", type=int, default=2)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("strip-oracle")
    pv.add_argument("--n-max", type=int, default=3)
    pv.add_argument("--qdeg", type=int, default=3)
    pv.add_argument("--beta-weight", type=int, default=2)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("conifold-identity")
    pv.add_argument("--qdeg", type=int, default=3)
    pv.add_argument("--beta-weight", type=int, default=2)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("hirota")
    pv.add_argument("--which", choices=("trivial", "c3", "conifold", "all"),
                    default="all")
    pv.add_argument("--tdeg", type=int, default=6)
    pv.add_argument("--qdeg", type=int, default=2)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("wave")
    pv.add_argument("--n-max", type=int, default=3)
    pv.add_argument("--K", type=int, default=4)
    pv.add_argument("--qdeg", type=int, default=2)
    pv.add_argument("--samples", type=int, default=0)
    pv.set_defaults(handler=_cmd_verify)
    pv = vsub.add_parser("mirror")
    pv.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command, fmt=args.format, seed=args.seed,
                    max_configs=args.max_configs)
    try:
        return args.handler(args, cfg)
    except BlowUpError as exc:
        sys.stderr.write(f"blow-up guard: {exc}\n")
        return EXIT_BLOW_UP
    except (ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

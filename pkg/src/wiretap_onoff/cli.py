"""Command-line front end.

Exit codes: 0 success, 1 usage/parse error, 2 domain invariant violation,
3 infeasible design problem, 4 internal failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import closed_form as cf
from .designer import (
    DesignOutcome,
    adaptive_feasibility_bound,
    feasible_adaptive,
    feasible_nonadaptive,
    nonadaptive_feasibility_bound,
    optimal_params_nonadaptive,
    optimize_adaptive,
)
from .model import AdaptiveDesign, ChannelParams, Constraints, DomainError, NonAdaptiveDesign
from .monte_carlo import (
    McConfig,
    McEstimate,
    estimate_adaptive,
    estimate_nonadaptive,
    estimate_p_out_existing,
)
from .sweeps import (
    COMPARE_COLUMNS,
    THROUGHPUT_COLUMNS,
    OperatingPoint,
    SweepSpec,
    compare_formulations,
    throughput_table,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INFEASIBLE, EXIT_INTERNAL = 0, 1, 2, 3, 4
AGREEMENT_SE = 4.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def fmt(x) -> str:
    """Round-trip representation used in CSV and JSON."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _json_default(obj):
    if isinstance(obj, frozenset):
        return sorted(obj)
    raise TypeError(type(obj).__name__)


def _dump_json(obj) -> str:
    # NaN/inf are not JSON; they map to null
    def clean(v):
        if isinstance(v, float) and not math.isfinite(v):
            return None
        if isinstance(v, dict):
            return {k: clean(w) for k, w in v.items()}
        if isinstance(v, (list, tuple)):
            return [clean(w) for w in v]
        return v

    return json.dumps(clean(obj), indent=2, sort_keys=False, default=_json_default) + "\n"


def _to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def _channel(args) -> ChannelParams:
    return ChannelParams.from_db(args.gbar_b_db, args.gbar_e_db)


def _mc_config(args) -> McConfig:
    return McConfig(args.samples, args.seed, workers=args.workers)


def _estimate_dict(est: McEstimate, reference: float) -> dict:
    return {
        "estimate": est.estimate,
        "std_error": est.std_error,
        "num_samples": est.num_samples,
        "num_conditioning_hits": est.num_conditioning_hits,
        "closed_form": reference,
        "agrees": est.agrees_with(reference, AGREEMENT_SE),
    }


def cmd_eval(args) -> tuple[int, str]:
    ch = _channel(args)
    report: dict = {"scheme": args.scheme,
                    "gamma_bar_b": ch.gamma_bar_b, "gamma_bar_e": ch.gamma_bar_e}
    mc = None

    if args.scheme == "existing":
        if args.rs is None:
            raise UsageError("eval existing: --rs is required")
        p = cf.p_out_existing(ch, args.rs)
        report.update(rate_s=args.rs, p_out=p)
        if args.mc:
            mc = {"p_out": _estimate_dict(estimate_p_out_existing(ch, args.rs, _mc_config(args)), p)}
    else:
        if args.rs is None:
            raise UsageError(f"eval {args.scheme}: --rs is required")
        if args.scheme == "adaptive":
            mu = args.mu if args.mu is not None else 2.0 ** args.rs - 1.0
            design = AdaptiveDesign(args.rs, mu)
            res = cf.evaluate_adaptive(ch, design)
            estimator = estimate_adaptive
        else:
            if args.rb is None:
                raise UsageError("eval nonadaptive: --rb is required")
            mu = args.mu if args.mu is not None else 2.0 ** args.rb - 1.0
            design = NonAdaptiveDesign(args.rb, args.rs, mu)
            res = cf.evaluate_nonadaptive(ch, design)
            estimator = estimate_nonadaptive
        report.update(design=vars(design).copy(),
                      p_tx=res.p_tx, p_so=res.p_so, throughput=res.throughput)
        if args.mc:
            est = estimator(ch, design, _mc_config(args))
            mc = {"p_tx": _estimate_dict(est.p_tx, res.p_tx),
                  "p_so": _estimate_dict(est.p_so, res.p_so),
                  "throughput": _estimate_dict(est.throughput, res.throughput)}

    if mc is not None:
        report["monte_carlo"] = dict(mc, seed=args.seed)

    if args.format == "json":
        return EXIT_OK, _dump_json(report)
    return EXIT_OK, _eval_text(report)


def _eval_text(report: dict) -> str:
    lines = [f"scheme       {report['scheme']}",
             f"Gamma_b      {report['gamma_bar_b']:.6g} (linear)",
             f"Gamma_e      {report['gamma_bar_e']:.6g} (linear)"]
    for k, v in report.get("design", {}).items():
        lines.append(f"{k:<12} {v:.6g}")
    for k in ("rate_s", "p_out", "p_tx", "p_so", "throughput"):
        if k in report and not (k == "rate_s" and "design" in report):
            lines.append(f"{k:<12} {report[k]:.6f}")
    mc = report.get("monte_carlo")
    if mc:
        lines.append(f"monte carlo  seed={mc['seed']}")
        for k, e in mc.items():
            if k == "seed":
                continue
            if math.isnan(e["estimate"]):
                lines.append(f"  {k:<10} undefined (no transmitting samples)")
                continue
            verdict = "agree" if e["agrees"] else "DISAGREE"
            lines.append(
                f"  {k:<10} {e['estimate']:.6f} +/- {e['std_error']:.2e}"
                f"  (n={e['num_conditioning_hits']}, closed form {e['closed_form']:.6f}, {verdict})")
    return "\n".join(lines) + "\n"


def _outcome_text(out: DesignOutcome) -> str:
    lines = [f"[{out.scheme.value}]"]
    if not out.feasible:
        lines.append("  infeasible" + (" (epsilon on the feasibility bound)" if out.near_boundary else ""))
        lines.append(f"  throughput   {0.0:.6f}")
        return "\n".join(lines)
    for k, v in vars(out.design).items():
        lines.append(f"  {k:<12} {v:.6f}")
    lines += [f"  p_tx         {out.result.p_tx:.6f}",
              f"  p_so         {out.result.p_so:.6f}",
              f"  throughput   {out.result.throughput:.6f}",
              f"  binding      {', '.join(sorted(out.binding_constraints))}"]
    return "\n".join(lines)


def cmd_optimize(args) -> tuple[int, str]:
    ch = _channel(args)
    cons = Constraints(args.epsilon, args.sigma)
    schemes = ["adaptive", "nonadaptive"] if args.scheme == "both" else [args.scheme]
    solvers = {"adaptive": optimize_adaptive, "nonadaptive": optimal_params_nonadaptive}
    outcomes = [solvers[s](ch, cons) for s in schemes]
    code = EXIT_OK if all(o.feasible for o in outcomes) else EXIT_INFEASIBLE

    if args.format == "json":
        payload = [o.to_dict() for o in outcomes]
        return code, _dump_json(payload[0] if len(payload) == 1 else payload)
    if args.format == "csv":
        rows = []
        for o in outcomes:
            d, r = o.design, o.result
            rows.append({
                "scheme": o.scheme.value, "feasible": o.feasible,
                "rate_b": getattr(d, "rate_b", math.nan) if d else math.nan,
                "rate_s": d.rate_s if d else math.nan,
                "mu": d.mu if d else math.nan,
                "p_tx": r.p_tx if r else math.nan,
                "p_so": r.p_so if r else math.nan,
                "throughput": o.throughput,
                "binding_constraints": ";".join(sorted(o.binding_constraints)),
            })
        return code, _to_csv(rows, list(rows[0]))
    head = (f"Gamma_b {ch.gamma_bar_b:.6g}, Gamma_e {ch.gamma_bar_e:.6g} (linear), "
            f"epsilon {cons.epsilon:.6g}, sigma {cons.sigma:.6g}")
    return code, "\n".join([head] + [_outcome_text(o) for o in outcomes]) + "\n"


def cmd_feasibility(args) -> tuple[int, str]:
    ch = _channel(args)
    cons = Constraints(args.epsilon, args.sigma)
    report = {
        "epsilon": cons.epsilon,
        "sigma": cons.sigma,
        "adaptive": {"bound": adaptive_feasibility_bound(ch, cons.sigma),
                     "feasible": feasible_adaptive(ch, cons)},
        "nonadaptive": {"bound": nonadaptive_feasibility_bound(ch, cons.sigma),
                        "feasible": feasible_nonadaptive(ch, cons)},
    }
    if args.format == "json":
        return EXIT_OK, _dump_json(report)
    lines = []
    for s in ("adaptive", "nonadaptive"):
        r = report[s]
        verdict = "feasible" if r["feasible"] else "infeasible"
        lines.append(f"{s:<12} needs epsilon > {r['bound']:.6g}: {verdict}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _base_point(args) -> OperatingPoint:
    return OperatingPoint(args.gbar_b_db, args.gbar_e_db,
                          getattr(args, "epsilon", 0.1), getattr(args, "sigma", 0.5),
                          getattr(args, "rs", 1.0))


def _sweep_spec(args) -> SweepSpec:
    return SweepSpec(args.sweep, args.start, args.stop, args.num, args.scale)


def _emit_table(args, rows, columns) -> tuple[int, str]:
    if args.format == "json":
        return EXIT_OK, _dump_json(rows)
    text = _to_csv(rows, columns)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
        return EXIT_OK, ""
    return EXIT_OK, text


def cmd_compare(args) -> tuple[int, str]:
    rows = compare_formulations(_base_point(args), _sweep_spec(args))
    return _emit_table(args, rows, COMPARE_COLUMNS)


def cmd_throughput(args) -> tuple[int, str]:
    rows = throughput_table(_base_point(args), _sweep_spec(args))
    return _emit_table(args, rows, THROUGHPUT_COLUMNS)


def _common_options() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--config", metavar="PATH",
                   help="key = value file; explicit flags take precedence")
    p.add_argument("--gbar-b-db", type=float, default=10.0, help="Bob's average SNR in dB")
    p.add_argument("--gbar-e-db", type=float, default=0.0, help="Eve's average SNR in dB")
    return p


def _mc_options() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="threads; results do not depend on it")
    return p


def _constraint_options() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--epsilon", type=float, default=0.1, help="max secrecy outage probability")
    p.add_argument("--sigma", type=float, default=0.5, help="min transmission probability")
    return p


def _sweep_options() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--num", type=int)
    p.add_argument("--scale", choices=("linear", "log"))
    p.add_argument("--output", "-o", metavar="FILE", help="write CSV here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    # parent parsers share Action objects with their children, so each
    # subcommand gets fresh parents to keep per-command defaults apart
    common, mc, cons, sweep = _common_options, _mc_options, _constraint_options, _sweep_options

    parser = _Parser(prog="wiretap-onoff",
                     description="Secure on-off transmission over Rayleigh wiretap channels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}

    p = sub.add_parser("eval", parents=[common(), mc()], help="closed-form evaluation of a design")
    p.add_argument("scheme", choices=("adaptive", "nonadaptive", "existing"))
    p.add_argument("--rs", type=float, help="secrecy rate R_s (bits/s/Hz)")
    p.add_argument("--rb", type=float, help="codeword rate R_b (non-adaptive)")
    p.add_argument("--mu", type=float, help="on-off SNR threshold (linear); default is the rate floor")
    p.add_argument("--mc", action="store_true", help="also run the Monte Carlo oracle")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval)
    subs["eval"] = p

    p = sub.add_parser("simulate", parents=[common(), mc()], help="Monte Carlo check of a design")
    p.add_argument("scheme", choices=("adaptive", "nonadaptive", "existing"))
    p.add_argument("--rs", type=float)
    p.add_argument("--rb", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_eval, mc=True)
    subs["simulate"] = p

    p = sub.add_parser("optimize", parents=[common(), cons()], help="throughput-optimal design")
    p.add_argument("scheme", choices=("adaptive", "nonadaptive", "both"))
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_optimize)
    subs["optimize"] = p

    p = sub.add_parser("feasibility", parents=[common(), cons()], help="feasibility bounds")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_feasibility)
    subs["feasibility"] = p

    p = sub.add_parser("compare-formulations", parents=[common(), sweep()],
                       help="classic vs conditional secrecy outage (CSV)")
    p.add_argument("--sweep", choices=("rate_s", "gamma_bar_b_db", "gamma_bar_e_db"), default="rate_s")
    p.add_argument("--rs", type=float, default=1.0, help="secrecy rate when sweeping an SNR")
    p.set_defaults(func=cmd_compare, start=0.1, stop=4.0, num=40, scale="linear")
    subs["compare-formulations"] = p

    p = sub.add_parser("throughput-sweep", parents=[common(), cons(), sweep()],
                       help="optimized throughput of both schemes (CSV)")
    p.add_argument("--sweep", choices=("epsilon", "sigma", "gamma_bar_b_db", "gamma_bar_e_db"),
                   default="epsilon")
    p.set_defaults(func=cmd_throughput, start=1e-4, stop=1.0, num=41, scale="log")
    subs["throughput-sweep"] = p

    return parser, subs


def read_config(path: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        out[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return out


def _apply_config(argv: list[str], subs: dict) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    for key in cfg:
        if not any(key == a.dest for p in subs.values() for a in p._actions):
            raise UsageError(f"{known.config}: unknown key {key!r}")
    for p in subs.values():
        dests = {a.dest for a in p._actions}
        # string defaults are converted by each option's type on parse
        p.set_defaults(**{k: v for k, v in cfg.items() if k in dests})


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Run the CLI; returns ``(exit_code, stdout_text, stderr_text)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        _apply_config(argv, subs)
        args = parser.parse_args(argv)
        code, out = args.func(args)
        return code, out, ""
    except UsageError as exc:
        return EXIT_USAGE, "", f"{exc}\n"
    except DomainError as exc:
        return EXIT_DOMAIN, "", f"domain error: {exc}\n"
    except Exception as exc:  # noqa: BLE001
        return EXIT_INTERNAL, "", f"internal error: {type(exc).__name__}: {exc}\n"


def main(argv: list[str] | None = None) -> int:
    try:
        code, out, err = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())

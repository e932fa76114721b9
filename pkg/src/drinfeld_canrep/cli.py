"""Command line front end: ``canrep verify|orders|matrix|report``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
configuration or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import canrep, drinfeld
from .gfq import FieldError, PrimePower, build_field
from .sl2 import DEFAULT_SAMPLES, GroupElement, NotInSL2, Policy
from .vkdecomp import DecompositionReport, PASSING, verify_theorem


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    p: int
    r: int
    command: str
    policy: str = "auto"
    seed: int = 0
    n: int = DEFAULT_SAMPLES
    out: str | None = None
    fmt: str = "json"
    ext_degree: int = 2
    timings: bool = False

    @property
    def q(self) -> int:
        return self.p**self.r

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        try:
            if args.q is not None:
                pp = PrimePower.from_q(args.q)
                if args.p is not None and args.p != pp.p or args.r is not None and args.r != pp.r:
                    raise ConfigError(f"--p/--r disagree with --q {args.q}")
            elif args.p is not None:
                pp = PrimePower(args.p, args.r if args.r is not None else 1)
            else:
                raise ConfigError("one of --q or --p/--r is required")
        except FieldError as exc:
            msg = str(exc)
            if "prime" in msg and args.q is not None:
                msg = f"{args.q} is not a prime power"
            raise ConfigError(msg) from exc
        n = getattr(args, "n", DEFAULT_SAMPLES)
        if n < 1:
            raise ConfigError("--n must be >= 1")
        return cls(
            p=pp.p,
            r=pp.r,
            command=args.command,
            policy=getattr(args, "policy", None) or "auto",
            seed=getattr(args, "seed", 0),
            n=n,
            out=getattr(args, "out", None),
            fmt=getattr(args, "format", "json"),
            ext_degree=getattr(args, "ext_degree", 2),
            timings=getattr(args, "timings", False),
        )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def geometry_checks(spec, max_m: int) -> dict:
    q = spec.q
    free = []
    for m in range(1, max_m + 1):
        if q**m > drinfeld.AFFINE_EXT_CAP:
            break
        free.append(drinfeld.verify_free_action(spec, m).to_dict())
    trans = drinfeld.verify_transitivity_at_infinity(spec).to_dict()
    expected = q * q - q - 2
    totals = [drinfeld.canonical_degree_check(spec, i, j) for i, j in canrep.basis_indices(spec)]
    degree = {
        "expected": expected,
        "indices": len(totals),
        "status": "pass" if all(t == expected for t in totals) else "fail",
    }
    return {"free_action": free, "transitivity": trans, "canonical_degree": degree}


def run_verify(cfg: RunConfig) -> DecompositionReport:
    spec = build_field(cfg.p, cfg.r)
    report = verify_theorem(spec, Policy(cfg.policy, cfg.seed, cfg.n))
    report.checks.update(geometry_checks(spec, cfg.ext_degree))
    return report


def render_report(data: dict) -> str:
    lines = [f"q = {data['q']}  genus = {data['genus']}", " k  dim  indecomposable  simple"]
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    for s in data["summands"]:
        lines.append(f"{s['k']:>2}  {s['dim']:>3}  {yn(s['indecomposable']):<14}  {yn(s['simple'])}")
    if data["semisimple"]:
        lines.append("semisimple: yes")
    else:
        witness = data.get("checks", {}).get("semisimplicity", {}).get("witness")
        lines.append(f"semisimple: no (witness k={witness})")
    lines.append("checks:")
    for name, node in data.get("checks", {}).items():
        statuses = DecompositionReport._status(node)
        verdict = "pass" if statuses and all(s in PASSING for s in statuses) else "fail"
        if statuses and all(s == "vacuous" for s in statuses):
            verdict = "vacuous"
        lines.append(f"  {name}: {verdict}")
    ok = DecompositionReport._status(data.get("checks", {}))
    certified = bool(ok) and all(s in PASSING for s in ok) and all(s["indecomposable"] for s in data["summands"])
    lines.append(f"certified: {yn(certified)}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> int:
    report = run_verify(cfg)
    text = report.to_json(include_timings=cfg.timings)
    if cfg.fmt == "text":
        if cfg.out:
            _emit(text, cfg.out)
        sys.stdout.write(render_report(report.to_dict()))
    else:
        _emit(text, cfg.out)
    return 0 if report.certified else 1


def cmd_orders(cfg: RunConfig) -> int:
    spec = build_field(cfg.p, cfg.r)
    rows = drinfeld.order_table(spec)
    if cfg.fmt == "json":
        text = json.dumps([row.to_dict() for row in rows], indent=2) + "\n"
    else:
        classes = drinfeld.POINT_CLASSES
        lines = ["i j " + " ".join(classes) + " series total"]
        for row in rows:
            vals = " ".join(str(row.orders[c]) for c in classes)
            lines.append(f"{row.i} {row.j} {vals} {'ok' if row.series_ok else 'MISMATCH'} {row.total}")
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.out)
    expected = cfg.q * cfg.q - cfg.q - 2
    return 0 if all(r.series_ok and r.total == expected for r in rows) else 1


def cmd_matrix(cfg: RunConfig, g_enc: list[int], k: int | None) -> int:
    spec = build_field(cfg.p, cfg.r)
    try:
        g = GroupElement.from_ints(spec, *g_enc)
    except (NotInSL2, FieldError) as exc:
        raise ConfigError(str(exc)) from exc
    genus = canrep.genus(spec.q)
    if k is None:
        M = canrep.action_full(g).assemble()
        header = f"{spec.q} {genus} all"
    else:
        if not 0 <= k <= spec.q - 2:
            raise ConfigError(f"--k must lie in [0, {spec.q - 2}]")
        M = canrep.action_block(k, g)
        header = f"{spec.q} {genus} {k}"
    _emit(header + "\n" + M.dump(), cfg.out)
    return 0


def cmd_report(args, cfg: RunConfig | None) -> int:
    if args.input:
        try:
            data = json.loads(Path(args.input).read_text(encoding="utf-8"))
            data["summands"], data["q"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot read report {args.input}: {exc}") from exc
        code = 0
    else:
        if cfg is None:
            raise ConfigError("report needs --in or --q")
        report = run_verify(cfg)
        data = report.to_dict()
        code = 0 if report.certified else 1
    _emit(render_report(data), getattr(args, "out", None))
    return code


def _field_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--q", type=int, help="field order (a prime power)")
    p.add_argument("--p", type=int, help="characteristic")
    p.add_argument("--r", type=int, help="degree over the prime field")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=["json", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="certify the decomposition and the curve facts")
    _field_args(v)
    v.add_argument("--policy", choices=["exhaustive", "sampled"], default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--n", type=int, default=DEFAULT_SAMPLES, help="sampled pair count")
    v.add_argument("--ext-degree", dest="ext_degree", type=int, default=2, help="largest m for the free-action check")
    v.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")

    o = sub.add_parser("orders", help="vanishing orders of the basis differentials")
    _field_args(o)

    m = sub.add_parser("matrix", help="dump the action matrix of a group element")
    _field_args(m)
    m.add_argument("--g", nargs=4, type=int, required=True, metavar=("A", "B", "C", "D"))
    m.add_argument("--k", type=int, default=None, help="degree block (default: full matrix)")

    rp = sub.add_parser("report", help="summarize a JSON report")
    _field_args(rp)
    rp.add_argument("--in", dest="input", help="report produced by verify")
    rp.add_argument("--policy", choices=["exhaustive", "sampled"], default=None)
    rp.add_argument("--seed", type=int, default=0)
    rp.add_argument("--n", type=int, default=DEFAULT_SAMPLES)
    rp.add_argument("--ext-degree", dest="ext_degree", type=int, default=2)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            cfg = None if args.input else RunConfig.from_args(args)
            return cmd_report(args, cfg)
        cfg = RunConfig.from_args(args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "orders":
            return cmd_orders(cfg)
        if args.command == "matrix":
            return cmd_matrix(cfg, args.g, args.k)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())

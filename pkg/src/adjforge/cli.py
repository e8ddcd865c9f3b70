"""Command-line front end.

Exit codes:

* ``check``: 0 valid, 1 law violation, 2 unreadable or ill-shaped input;
* ``battery``: 0 conditions agree (and match ``--expect-verdict``), 1 they
  disagree or the verdict differs from the expected one, 2 input error;
* ``star``: 0 star-on-window, 1 refuted, 3 undecided, 2 input error;
* ``enumerate``: 0 complete window, 3 partial window, 2 input error;
* ``report``: 0 every certificate re-validates, 1 otherwise, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize
from .adjunctions import idempotent_pair_battery, verify_equivalence, pair_context
from .algmod import (BudgetError, DEFAULT_ENUM_BUDGET, enumerate_modules, regular_module,
                     validate_algebra, validate_bimodule, validate_module)
from .ffla import DimensionError
from .fincat import (StructureError, Validation, validate_adjunction, validate_category,
                     validate_functor)
from .monadics import (idempotence_battery, idempotence_battery_comonad, validate_comonad,
                       validate_monad)
from .serialize import SerializationError
from .starlab import build_context, revalidate_certificate, star_verdict

INPUT_ERRORS = (SerializationError, StructureError, DimensionError, KeyError, TypeError,
                ValueError, IndexError)
CHECK_KINDS = ("category", "functor", "monad", "comonad", "adjunction", "algebra", "module")
BATTERY_KINDS = ("monad", "comonad", "pair")
STAR_EXIT = {"star-on-window": 0, "refuted": 1, "undecided": 3}


@dataclass
class RunConfig:
    command: str
    kind: str | None = None
    inputs: list = field(default_factory=list)
    max_dim: int = 2
    budget: int = 512
    enum_budget: int = DEFAULT_ENUM_BUDGET
    fmt: str = "json"
    out: str | None = None
    expect_verdict: bool | None = None
    threads: int = 1

    def __post_init__(self):
        if self.command not in ("check", "battery", "star", "enumerate", "report"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.budget <= 0 or self.enum_budget <= 0:
            raise ValueError("budgets must be positive")
        if self.fmt not in ("json", "text"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.threads <= 0:
            raise ValueError("thread cap must be positive")


def _threads_from_env() -> int:
    raw = os.environ.get("ADJFORGE_THREADS")
    if raw is None:
        return 1
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def _emit(cfg: RunConfig, payload: dict, text: str):
    body = serialize.dumps(payload) if cfg.fmt == "json" else text.rstrip("\n") + "\n"
    if cfg.out:
        Path(cfg.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _err(msg: str) -> int:
    sys.stderr.write(f"error: {msg}\n")
    return 2


def _violations_json(v: Validation) -> list:
    return [{"law": x.law, "witness": list(x.witness) if isinstance(x.witness, tuple) else x.witness}
            for x in v.violations]


def _violations_text(kind: str, v: Validation) -> str:
    if v.ok:
        return f"{kind}: valid"
    lines = [f"{kind}: {len(v.violations)} violation(s)"]
    lines += [f"  {x.law}: {x.witness}" for x in v.violations]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _load_checked(kind: str, path: str) -> Validation:
    d = serialize.load_json(path)
    base = Path(path).parent
    if kind == "category":
        return validate_category(serialize.category_from_json(d))
    if kind == "functor":
        F = serialize.functor_from_json(d)
        v = Validation()
        v.extend(validate_category(F.source), "source ")
        v.extend(validate_category(F.target), "target ")
        if v.ok:
            v.extend(validate_functor(F))
        return v
    if kind == "monad":
        m = serialize.monad_from_json(d)
        v = validate_category(m.base)
        return v if not v.ok else validate_monad(m)
    if kind == "comonad":
        s = serialize.comonad_from_json(d)
        v = validate_category(s.base)
        return v if not v.ok else validate_comonad(s)
    if kind == "adjunction":
        a = serialize.adjunction_from_json(d)
        v = Validation()
        v.extend(validate_category(a.A), "A ")
        v.extend(validate_category(a.B), "B ")
        return v if not v.ok else validate_adjunction(a)
    if kind == "algebra":
        return validate_algebra(serialize.algebra_from_json(d, base))
    if kind == "module":
        if isinstance(d, dict) and "right_action" in d:
            b = serialize.bimodule_from_json(d, base)
            v = Validation()
            v.extend(validate_algebra(b.R), "algebra ")
            v.extend(validate_algebra(b.S), "right algebra ")
            return v if not v.ok else validate_bimodule(b)
        m = serialize.module_from_json(d, base_dir=base)
        v = validate_algebra(m.algebra)
        return v if not v.ok else validate_module(m)
    raise ValueError(f"unknown kind {kind!r}")


def cmd_check(cfg: RunConfig) -> int:
    try:
        v = _load_checked(cfg.kind, cfg.inputs[0])
    except INPUT_ERRORS as exc:
        return _err(str(exc))
    _emit(cfg, {"kind": cfg.kind, "valid": v.ok, "violations": _violations_json(v)},
          _violations_text(cfg.kind, v))
    return 0 if v.ok else 1


# ---------------------------------------------------------------------------
# battery
# ---------------------------------------------------------------------------

def cmd_battery(cfg: RunConfig) -> int:
    try:
        d = serialize.load_json(cfg.inputs[0])
        extra = {}
        if cfg.kind == "monad":
            m = serialize.monad_from_json(d)
            v = validate_monad(m)
            if not v.ok:
                raise StructureError(f"not a monad: {v.violations[0]}")
            report = idempotence_battery(m, cfg.budget)
        elif cfg.kind == "comonad":
            s = serialize.comonad_from_json(d)
            v = validate_comonad(s)
            if not v.ok:
                raise StructureError(f"not a comonad: {v.violations[0]}")
            report = idempotence_battery_comonad(s, cfg.budget)
        elif cfg.kind == "pair":
            a = serialize.adjunction_from_json(d)
            v = validate_adjunction(a)
            if not v.ok:
                raise StructureError(f"not an adjunction: {v.violations[0]}")
            ctx = pair_context(a, cfg.budget)
            report = idempotent_pair_battery(a, cfg.budget, ctx)
            eq = verify_equivalence(a, cfg.budget, ctx)
            extra = {"star": dict(report.star),
                     "equivalence": {"ran": eq.ran, "ok": eq.ok, "checks": dict(eq.checks),
                                     "reason": eq.reason}}
        else:
            raise ValueError(f"unknown battery kind {cfg.kind!r}")
    except INPUT_ERRORS as exc:
        return _err(str(exc))
    payload = report.to_json()
    payload.update(extra)
    text = report.to_text()
    if extra:
        text += "\n  star flags: " + ", ".join(f"{k}={v}" for k, v in sorted(extra["star"].items()))
        if extra["equivalence"]["ran"]:
            text += f"\n  equivalence on fixed objects: {extra['equivalence']['ok']}"
    _emit(cfg, payload, text)
    if not report.agree:
        sys.stderr.write("alarm: equivalent conditions disagree\n")
        return 1
    if cfg.expect_verdict is not None and report.verdict != cfg.expect_verdict:
        sys.stderr.write(f"verdict {report.verdict} differs from expected {cfg.expect_verdict}\n")
        return 1
    return 0


# ---------------------------------------------------------------------------
# star, enumerate, report
# ---------------------------------------------------------------------------

def _load_pair(alg_path: str, p_arg: str):
    R = serialize.algebra_from_json(serialize.load_json(alg_path))
    v = validate_algebra(R)
    if not v.ok:
        raise StructureError(f"invalid algebra: {v.violations[0]}")
    if p_arg == "auto-end":
        return R, regular_module(R)
    d = serialize.load_json(p_arg)
    base = Path(p_arg).parent
    if isinstance(d, dict) and "right_action" in d:
        P = serialize.bimodule_from_json(d, base)
    else:
        P = serialize.module_from_json(d, algebra=R if "algebra" not in d else None, base_dir=base)
        vm = validate_module(P)
        if not vm.ok:
            raise StructureError(f"invalid module: {vm.violations[0]}")
    return R, P


def _star_text(payload: dict) -> str:
    lines = [f"verdict: {payload['verdict']} (window dim {payload['window_dim']})"]
    b = payload.get("battery")
    if b:
        lines.append("battery: " + " ".join(f"({k}) {v}" for k, v in sorted(b["conditions"].items())))
    for k, v in sorted(payload.get("checks", {}).items()):
        lines.append(f"  {k}: {v}")
    for c in payload["certificates"]:
        lines.append(f"certificate: {c['kind']} at a dim {c['module']['dim']} "
                     f"{'S' if c['side'] == 'S' else 'R'}-module (rank {c['rank']})")
    lines += [f"note: {n}" for n in payload.get("notes", [])]
    return "\n".join(lines)


def cmd_star(cfg: RunConfig) -> int:
    try:
        R, P = _load_pair(cfg.inputs[0], cfg.inputs[1])
        ctx = build_context(R, P, cfg.max_dim, cfg.enum_budget)
        verdict = star_verdict(ctx)
    except INPUT_ERRORS as exc:
        return _err(str(exc))
    payload = verdict.to_json(ctx)
    _emit(cfg, payload, _star_text(payload))
    return STAR_EXIT[verdict.status]


def cmd_enumerate(cfg: RunConfig) -> int:
    try:
        R = serialize.algebra_from_json(serialize.load_json(cfg.inputs[0]))
        v = validate_algebra(R)
        if not v.ok:
            raise StructureError(f"invalid algebra: {v.violations[0]}")
        w = enumerate_modules(R, cfg.max_dim, cfg.enum_budget)
    except (BudgetError, *INPUT_ERRORS) as exc:
        return _err(str(exc))
    payload = {"algebra": serialize.algebra_to_json(R), "max_dim": cfg.max_dim,
               "complete": w.complete, "notes": list(w.notes),
               "modules": [serialize.module_to_json(m, False) for m in w.modules]}
    counts = {}
    for m in w.modules:
        counts[m.dim] = counts.get(m.dim, 0) + 1
    text = "\n".join([f"{len(w.modules)} modules up to dim {cfg.max_dim}"
                      + ("" if w.complete else " (partial)")]
                     + [f"  dim {k}: {counts[k]}" for k in sorted(counts)])
    _emit(cfg, payload, text)
    return 0 if w.complete else 3


def cmd_report(cfg: RunConfig) -> int:
    try:
        d = serialize.load_json(cfg.inputs[0])
        bim = d["context"]["bimodule"]
        results = [revalidate_certificate(c, bim) for c in d.get("certificates", [])]
    except INPUT_ERRORS as exc:
        return _err(str(exc))
    payload = {"verdict": d.get("verdict"), "certificates": len(results),
               "revalidated": sum(results), "all_revalidated": all(results)}
    text = (f"verdict: {payload['verdict']}\n"
            f"certificates re-validated: {payload['revalidated']}/{payload['certificates']}")
    _emit(cfg, payload, text)
    return 0 if all(results) else 1


COMMANDS = {"check": cmd_check, "battery": cmd_battery, "star": cmd_star,
            "enumerate": cmd_enumerate, "report": cmd_report}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _verdict(s: str) -> bool:
    low = s.lower()
    if low in ("true", "1", "yes", "all-true"):
        return True
    if low in ("false", "0", "no", "all-false"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-dim", type=int, default=2, help="window dimension bound")
    common.add_argument("--budget", type=int, default=512,
                        help="morphism budget for materialized categories")
    common.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET,
                        help="candidate budget for module enumeration")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--expect-verdict", type=_verdict,
                        help="battery: fail unless the verdict equals this")
    ap = argparse.ArgumentParser(prog="adjforge",
                                 description="Idempotent adjunctions on finite categories "
                                             "and module categories over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="validate a JSON object")
    p.add_argument("kind", choices=CHECK_KINDS)
    p.add_argument("path")
    p = sub.add_parser("battery", parents=[common], help="run an idempotence battery")
    p.add_argument("kind", choices=BATTERY_KINDS)
    p.add_argument("path")
    p = sub.add_parser("star", parents=[common], help="star verdict for a bimodule")
    p.add_argument("algebra")
    p.add_argument("bimodule", help="bimodule or module JSON, or 'auto-end' for the regular module")
    p = sub.add_parser("enumerate", parents=[common], help="list modules up to isomorphism")
    p.add_argument("algebra")
    p = sub.add_parser("report", parents=[common], help="re-validate a star report's certificates")
    p.add_argument("path")
    return ap


def config_from_args(args) -> RunConfig:
    inputs = {"check": [getattr(args, "path", None)], "battery": [getattr(args, "path", None)],
              "star": [getattr(args, "algebra", None), getattr(args, "bimodule", None)],
              "enumerate": [getattr(args, "algebra", None)],
              "report": [getattr(args, "path", None)]}[args.command]
    return RunConfig(command=args.command, kind=getattr(args, "kind", None), inputs=inputs,
                     max_dim=args.max_dim, budget=args.budget, enum_budget=args.enum_budget,
                     fmt=args.format, out=args.out, expect_verdict=args.expect_verdict,
                     threads=_threads_from_env())


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        return _err(str(exc))
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())

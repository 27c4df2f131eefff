"""Command-line entry point.

JSON output is one record per line; ``report`` writes a single document.
Exit codes: 0 when every requested check passes, 1 when at least one claim
fails (including items skipped for budget), 2 for usage or parameter errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import __version__
from .codes import (BudgetExceeded, LinearCode, default_budget_log2, dual_min_distance_upto,
                    weight_distribution)
from .families import A_CLASS_CHOICES, elliptic_code, pick_a, tits_code, tits_field
from .field import FieldError, make_field, quadratic_root_test
from .geometry import elliptic_quadric, is_cap, tits_ovoid
from .predict import ClaimError, meets_griesmer
from .report import RunConfig, full_report, lemma_claims, lemma_suite, table_claim
from .subfield import make_context, subfield_code, subfield_code_expand

DEFAULT_SEED = 20190101

# parameter points swept when verify-tables gets no explicit parameters
TABLE_POINTS = {
    "T1": [{"m": m} for m in (2, 3, 4, 5)],
    "T2": [{"p": p, "m": m} for p, m in ((3, 2), (3, 3), (5, 2))],
    "T3": [{"p": p, "m": m} for p, m in ((3, 2), (3, 3), (5, 2))],
    "T4": [{"p": 3, "m": 2}, {"p": 5, "m": 2}],
    "T5": [{"p": 3, "m": 3}],
    "T6": [{"e": 1}, {"e": 2}],
}
LEMMAS = (5, 6, 7, 8, 9, 10, 11)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep argparse's exit code 2 but route through run()
        raise UsageError(message)


def parse_int_list(text: str) -> list[int]:
    """'3', '2,3,5' or '2..5' (inclusive)."""
    try:
        out: list[int] = []
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(v) for v in part.split(".."))
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} must contain positive integers")
    return out


def parse_coeffs(text: str) -> list[int]:
    try:
        vals = [int(v) for v in text.replace(" ", ",").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed coefficient vector {text!r}") from None
    if not vals or min(vals) < 0:
        raise argparse.ArgumentTypeError(f"malformed coefficient vector {text!r}")
    return vals


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=parse_int_list, help="characteristic(s), e.g. 3 or 3,5")
    common.add_argument("--m", type=parse_int_list, help="extension degree(s), e.g. 2 or 2..5")
    common.add_argument("--e", type=parse_int_list, help="Tits parameter(s), q = 2^(2e+1)")
    common.add_argument("--a-class", choices=A_CLASS_CHOICES, default=None)
    common.add_argument("--a", type=parse_coeffs, default=None,
                        help="coefficients of a, low to high, e.g. 1,2")
    common.add_argument("--budget", type=_positive_float, default=None,
                        help="log2 of the largest enumeration allowed")
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=("elliptic", "tits"), default="elliptic")
    fam.add_argument("--subfield", action="store_true", help="use the subfield code over GF(p)")

    parser = _Parser(prog="ovoidcodes", description="Ovoid codes, their subfield codes, and exhaustive checks of their parameters.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("field", parents=[common], help="describe GF(p^m)")
    sub.add_parser("construct", parents=[common, fam], help="list ovoid points and cap status")
    sub.add_parser("weights", parents=[common, fam], help="weight distribution by enumeration")
    sp = sub.add_parser("subfield", parents=[common, fam], help="expand a code to a subfield code")
    sp.add_argument("--code", default=None, help="JSON code file (field + generator) instead of a family")
    sp.add_argument("--s", type=_positive_int, default=1, help="subfield degree")
    dp = sub.add_parser("dual", parents=[common, fam], help="dual distance by dependent columns")
    dp.add_argument("--t-max", type=int, choices=range(1, 6), default=4)
    tp = sub.add_parser("verify-tables", parents=[common], help="closed forms against enumeration")
    tp.add_argument("--table", choices=sorted(TABLE_POINTS), action="append")
    lp = sub.add_parser("verify-lemmas", parents=[common], help="character-sum identities")
    lp.add_argument("--lemma", type=int, choices=LEMMAS, action="append")
    sub.add_parser("report", parents=[common], help="full acceptance sweep as one JSON document")
    return parser


# -- helpers -------------------------------------------------------------------------

def _one(values: list[int] | None, name: str, default: int | None = None) -> int:
    if values is None:
        if default is None:
            raise UsageError(f"--{name} is required")
        return default
    if len(values) != 1:
        raise UsageError(f"--{name} takes a single value here")
    return values[0]


def _element(F, coeffs: list[int]) -> int:
    if len(coeffs) > F.n or max(coeffs) >= F.p:
        raise UsageError(f"{coeffs} is not an element of GF({F.q})")
    return F.from_coeffs(coeffs + [0] * (F.n - len(coeffs)))


def _family_field(args):
    if args.family == "tits":
        if args.m is not None:
            m = _one(args.m, "m")
            if m % 2 == 0 or m < 3:
                raise UsageError("the Tits family needs odd m >= 3")
            return make_field(2, m)
        return tits_field(_one(args.e, "e"))
    return make_field(_one(args.p, "p"), _one(args.m, "m", 1))


def _pick(F, args) -> int:
    if args.a is not None:
        return _element(F, args.a)
    return pick_a(F, args.a_class or "irreducible")


def _family_code(args) -> tuple[LinearCode, dict]:
    F = _family_field(args)
    if args.family == "tits":
        C, info = tits_code(F), {"family": "tits", "q": F.q}
    else:
        a = _pick(F, args)
        C = elliptic_code(F, a)
        info = {"family": "elliptic", "q": F.q, "a": F.coeffs(a), "a_kind": quadratic_root_test(a, F)}
    if getattr(args, "subfield", False):
        C = subfield_code(C)
        info["subfield"] = F.p
    return C, info


def _config(args) -> RunConfig:
    budget = args.budget if args.budget is not None else default_budget_log2()
    return RunConfig(workers=args.workers, budget_log2=budget, seed=args.seed)


# -- subcommands ----------------------------------------------------------------------

def cmd_field(args) -> list[dict]:
    out = []
    for p in args.p or []:
        for m in args.m or [1]:
            F = make_field(p, m)
            out.append({"field": F.to_json(), "q": F.q, "primitive": F.coeffs(F.primitive), "pass": True})
    if not out:
        raise UsageError("--p is required")
    return out


def cmd_construct(args) -> list[dict]:
    F = _family_field(args)
    if args.family == "tits":
        S, info = tits_ovoid(F), {"family": "tits", "q": F.q}
    else:
        a = _pick(F, args)
        S, info = elliptic_quadric(F, a), {"family": "elliptic", "q": F.q, "a": F.coeffs(a)}
    cap, witness = is_cap(S, return_witness=True)
    info.update({"field": F.to_json(), "size": len(S), "is_cap": cap,
                 "witness": list(witness) if witness else None,
                 "points": [json.loads(line) for line in S.export_lines()], "pass": True})
    return [info]


def cmd_weights(args, cfg: RunConfig) -> list[dict]:
    C, info = _family_code(args)
    try:
        wd = weight_distribution(C, cfg.budget_log2, cfg.workers)
    except BudgetExceeded as exc:
        return [dict(info, n=C.n, k=C.k, error=str(exc), **{"pass": False})]
    d = wd.min_nonzero_weight()
    info.update({"n": C.n, "k": C.k, "d": d, "distribution": wd.to_json(), "pass": True})
    if not info.get("subfield") and d is not None:
        info["griesmer"] = meets_griesmer(C.field.q, C.n, C.k, d)
    return [info]


def cmd_subfield(args) -> list[dict]:
    if args.code:
        with open(args.code) as fh:
            C = LinearCode.from_json(json.load(fh))
        info: dict = {"input": args.code}
    else:
        args.subfield = False
        C, info = _family_code(args)
    ctx = make_context(C.field, args.s)
    S = subfield_code_expand(C, ctx)
    info.update({"s": args.s, "n": S.n, "rows": S.generator.rows, "k": S.k,
                 "parent_k": C.k, "code": S.to_json(), "pass": True})
    return [info]


def cmd_dual(args) -> list[dict]:
    C, info = _family_code(args)
    dd = dual_min_distance_upto(C, args.t_max)
    info.update({"n": C.n, "dual_k": C.n - C.k, "dual_distance": dd.value, "exact": dd.exact,
                 "pass": True})
    return [info]


def cmd_verify_tables(args, cfg: RunConfig) -> list[dict]:
    tables = args.table or sorted(TABLE_POINTS)
    explicit = any(v is not None for v in (args.p, args.m, args.e))
    out = []
    for t in tables:
        if not explicit:
            points = TABLE_POINTS[t]
        elif t == "T6":
            points = [{"e": e} for e in (args.e or [])]
        elif t == "T1":
            points = [{"m": m} for m in (args.m or [])]
        else:
            points = [{"p": p, "m": m} for p in (args.p or []) for m in (args.m or [])]
        if not points:
            raise UsageError(f"no parameter points for {t}")
        for pt in points:
            a = None
            if args.a is not None and t != "T6":
                a = _element(make_field(pt.get("p", 2), pt["m"]), args.a)
            out.append(table_claim(t, cfg, a=a, **pt))
    return out


def cmd_verify_lemmas(args, cfg: RunConfig) -> list[dict]:
    if args.lemma is None and args.p is None and args.m is None:
        return lemma_suite(cfg.seed)
    if args.p is None or args.m is None:
        raise UsageError("--p and --m are required with explicit lemmas")
    out = []
    for lemma in args.lemma or LEMMAS:
        for p in args.p:
            for m in args.m:
                out += lemma_claims(lemma, p, m, seed=cfg.seed)
    return out


# -- output ---------------------------------------------------------------------------

def _scalar_items(rec: dict, prefix: str = ""):
    for key, val in rec.items():
        if isinstance(val, dict):
            yield from _scalar_items(val, f"{prefix}{key}.")
        elif not (isinstance(val, list) and val and isinstance(val[0], list)):
            yield f"{prefix}{key}", val


def _distribution_of(rec: dict):
    for key in ("enumerated", "distribution"):
        if key in rec:
            return rec[key]
    return None


def render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(rec) + "\n" for rec in records)
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        for i, rec in enumerate(records):
            if i:
                buf.write("\n")
            for key, val in _scalar_items(rec):
                writer.writerow([f"# {key}", val if isinstance(val, str) else json.dumps(val)])
            dist = _distribution_of(rec)
            if dist is not None:
                writer.writerow(["w", "count"])
                writer.writerows(dist)
        return buf.getvalue()
    for rec in records:
        status = "PASS" if rec.get("pass") else "FAIL"
        fields = " ".join(f"{k}={json.dumps(v)}" for k, v in _scalar_items(rec) if k != "pass")
        buf.write(f"{status} {fields}\n")
        dist = _distribution_of(rec)
        if dist is not None:
            for w, c in dist:
                buf.write(f"    {w:>8} {c}\n")
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        cmd = args.command
        if cmd == "report":
            doc = full_report(cfg)
            _emit(json.dumps(doc) + "\n", args.out)
            return 0 if doc["pass"] else 1
        if cmd == "field":
            records = cmd_field(args)
        elif cmd == "construct":
            records = cmd_construct(args)
        elif cmd == "weights":
            records = cmd_weights(args, cfg)
        elif cmd == "subfield":
            records = cmd_subfield(args)
        elif cmd == "dual":
            records = cmd_dual(args)
        elif cmd == "verify-tables":
            records = cmd_verify_tables(args, cfg)
        else:
            records = cmd_verify_lemmas(args, cfg)
    except (UsageError, FieldError, ClaimError, ValueError, OSError) as exc:
        print(f"ovoidcodes: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    _emit(render(records, args.format), args.out)
    return 0 if all(r.get("pass") for r in records) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

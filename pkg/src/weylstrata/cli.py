"""Command-line entry point: ``weyl-strata {compute,verify,chartab}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import (ConfigurationError, IntegrityError, InvalidInputError, ResourceError,
                     WeylStrataError)
from .repops import fake_degrees, poincare_polynomial
from .rootsys import CartanType, weyl_order
from .strata import GroupSpec, compute
from .unipotent import classify_unipotent, validate_classes
from .weylgrp import check_orthogonality, weyl_group

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_INTEGRITY = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    type: str
    total_rank: int | None = None
    characteristic: int = 0
    order_cap: int = 50_000
    format: str = "json"
    out: str | None = None

    def spec(self) -> GroupSpec:
        try:
            t = CartanType.parse(self.type)
        except (InvalidInputError, ConfigurationError) as exc:
            raise ConfigurationError(str(exc)) from None
        if self.order_cap <= 0:
            raise ConfigurationError("--order-cap must be positive")
        if weyl_order(t) > self.order_cap:
            raise ConfigurationError(
                f"|W({t})| = {weyl_order(t)} exceeds --order-cap {self.order_cap}")
        return GroupSpec(t, self.total_rank, characteristic=self.characteristic)


# ------------------------------------------------------------------ render

def _dump_json(doc):
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _md_table(header, rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(lines)


def render_compute(doc, fmt):
    if fmt == "json":
        return _dump_json(doc)
    g = doc["group"]
    out = [f"# Strata of {g['type']} (total rank {g['total_rank']}, characteristic "
           f"{g['characteristic']})", "",
           f"schema_version {doc['schema_version']}", "",
           _md_table(["stratum (phi)", "dim", "#Jordan classes", "#sheets"],
                     [(s["phi"], s["orbit_dim"], len(s["classes"]), len(s["components"]))
                      for s in doc["strata"]]),
           "", "## Sheets", "",
           _md_table(["generator", "dim", "members"],
                     [(s["generator"], s["orbit_dim"], ", ".join(s["members"]))
                      for s in doc["sheets"]]),
           "", f"verification passed: {doc['verification']['passed']}", ""]
    return "\n".join(out)


def chartab_document(t: CartanType):
    W = weyl_group(t)
    tab = W.table
    fd = fake_degrees(W)
    return {
        "schema_version": "1.0",
        "type": str(t),
        "order": W.order,
        # columns of W.table follow W.classes
        "classes": [{"size": int(s), "representative": [int(i) for i in W.words[r]]}
                    for s, r in zip(tab.class_sizes, W.classes.representatives)],
        "rows": [{"label": lab, "dim": int(row[0]), "b": int(b),
                  "fake_degree": fd[lab], "values": [int(x) for x in row],
                  **({"alias": tab.aliases[lab]} if lab in tab.aliases else {})}
                 for lab, b, row in zip(tab.labels, tab.b, tab.values)],
    }


def render_chartab(doc, fmt):
    if fmt == "json":
        return _dump_json(doc)
    header = ["label", "dim", "b"] + [f"c{i} ({c['size']})" for i, c in enumerate(doc["classes"])]
    rows = [[r["label"], r["dim"], r["b"]] + r["values"] for r in doc["rows"]]
    return f"# Character table of W({doc['type']}), order {doc['order']}\n\n{_md_table(header, rows)}\n"


# ------------------------------------------------------------------ verify

def invariant_suite(comp):
    """Every property check that `verify` runs, as {name: list of failures}."""
    spec = comp.spec
    W = comp.W
    tab = W.table
    out = {}
    fails = []
    try:
        check_orthogonality(tab.values, tab.class_sizes, W.order)
    except WeylStrataError as exc:
        fails.append(str(exc))
    if sum(int(d) ** 2 for d in tab.dims) != W.order:
        fails.append("sum of squared degrees differs from |W|")
    out["orthogonality"] = fails
    fails = []
    if tab.b[tab.index(tab.trivial)] != 0:
        fails.append("b(trivial) != 0")
    if tab.b[tab.index(tab.sign)] != comp.rs.num_positive:
        fails.append("b(sign) != number of positive roots")
    fd = fake_degrees(W)
    total = [0] * len(poincare_polynomial(spec.semisimple_type))
    for lab, d in zip(tab.labels, tab.dims):
        for i, c in enumerate(fd[lab]):
            total[i] += int(d) * c
    if total != poincare_polynomial(spec.semisimple_type):
        fails.append("sum dim(E) * fake degree(E) differs from the Poincare polynomial")
    out["b_invariants"] = fails
    fails = []
    factors = {(c.family, c.rank) for L in comp.realizable_levis for c in L.subsystem.components}
    for f in sorted(factors):
        t = CartanType((f,))
        fails += [f"{t}: {p}" for p in validate_classes(t, classify_unipotent(t))]
    out["springer"] = fails
    out["induction"] = comp.induction_audit()
    rep = comp.verify_theorem()
    for name, chk in rep["checks"].items():
        out[f"theorem.{name}"] = chk["failures"]
    return out


# -------------------------------------------------------------------- main

def _parser():
    p = argparse.ArgumentParser(prog="weyl-strata",
                                description="Jordan classes, sheets and Lusztig strata.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("compute", "verify", "chartab"):
        s = sub.add_parser(name)
        s.add_argument("--type", required=True, help='e.g. "C2", "A1xA1", "G2"')
        s.add_argument("--total-rank", type=int, default=None)
        s.add_argument("--char", type=int, default=0, dest="characteristic")
        s.add_argument("--order-cap", type=int, default=50_000)
        s.add_argument("--format", choices=("json", "markdown"), default="json")
        s.add_argument("--out", default=None, metavar="PATH")
    return p


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    try:
        spec = cfg.spec()
        if cfg.command == "chartab":
            _emit(render_chartab(chartab_document(spec.semisimple_type), cfg.format), cfg.out)
            return EXIT_OK
        comp = compute(spec)
        if cfg.command == "compute":
            _emit(render_compute(comp.to_dict(), cfg.format), cfg.out)
            return EXIT_OK
        results = invariant_suite(comp)
        summary = {"group": spec.to_dict(),
                   "checks": {k: {"passed": not v, "failures": v} for k, v in sorted(results.items())}}
        summary["passed"] = all(c["passed"] for c in summary["checks"].values())
        _emit(_dump_json(summary), cfg.out)
        return EXIT_OK if summary["passed"] else EXIT_VERIFY
    except (ConfigurationError, ResourceError, InvalidInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrityError as exc:
        sys.stderr.write(_dump_json({"error": "integrity", "message": str(exc),
                                     "details": exc.details}))
        return EXIT_INTEGRITY


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cfg = RunConfig(args.command, args.type, args.total_rank, args.characteristic,
                    args.order_cap, args.format, args.out)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

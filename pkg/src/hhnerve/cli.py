"""Command-line front end.

Exit codes: 0 when every embedded verification passes, 2 when some
mathematical check fails (the witness is in the output), 1 on usage or
ingestion errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .compare import (benson_check, burghelea_report, chain_map_S, cochain_map_T, compare_maps,
                      corrupt_sign)
from .complexes import BudgetExceeded, ChainComplexSlice, budget_mb
from .exactla import FieldSpec, Q
from .fingroup import (FiniteGroup, NotAGroup, NotClosed, UnsupportedParameter, centralizer,
                       conjugacy_classes, group_by_name, load_cayley_file)
from .hochschild import build_hochschild_chains, build_hochschild_cochains, derivations_report
from .nerve import (build_adjoint_nerve, build_bar_complex, build_nerve_cochains,
                    build_one_object_nerve, build_right_nerve, centralizer_bar_complex, components,
                    dot_one_skeleton, orbit_counts, quotient_map)

COMMANDS = ("group-info", "hochschild", "nerve", "derivations", "compare", "burghelea",
            "benson-check", "full-report")


@dataclass
class RunConfig:
    group: Optional[str] = None
    cayley_file: Optional[str] = None
    field: FieldSpec = Q
    max_degree: int = 3
    format: str = "text"
    seed: int = 0
    budget_mb: Optional[float] = None
    timing: bool = False
    corrupt_sign: Optional[int] = None

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max degree must be >= 1")
        if self.budget_mb is not None and self.budget_mb <= 0:
            raise ValueError("budget must be positive")
        if self.format not in ("text", "json", "csv"):
            raise ValueError(f"unknown format {self.format!r}")


class UsageError(Exception):
    pass


def ingest_group(config: RunConfig) -> FiniteGroup:
    if config.cayley_file and config.group:
        raise UsageError("give either --group or --cayley-file, not both")
    if config.cayley_file:
        return load_cayley_file(config.cayley_file)
    if config.group:
        return group_by_name(config.group)
    raise UsageError("no group given (use --group NAME or --cayley-file PATH)")


def _working_field(F: FieldSpec) -> tuple[FieldSpec, list[str]]:
    if F.is_field:
        return F, []
    return Q, ["ranks, derivations and induced maps computed over Q; all differentials are integral"]


def _size(cx: ChainComplexSlice) -> dict:
    return {"dims": list(cx.dims), "nnz": {str(k): d.nnz for k, d in sorted(cx.differentials.items())}}


class Session:
    """Builds each complex at most once per run."""

    def __init__(self, G: FiniteGroup, config: RunConfig):
        self.G = G
        self.config = config
        self.F = config.field
        self.N = config.max_degree
        self._cache: dict = {}
        self.timings: dict[str, float] = {}

    def get(self, key: str, F: Optional[FieldSpec] = None):
        F = F or self.F
        k = (key, F)
        if k not in self._cache:
            t0 = time.perf_counter()
            G, N, b = self.G, self.N, self.config.budget_mb
            if key == "hc":
                v = build_hochschild_chains(G, F, N, b)
            elif key == "hcc":
                v = build_hochschild_cochains(G, F, N, b)
            elif key == "adj":
                v = build_adjoint_nerve(G, F, N, b)
            elif key == "adjc":
                v = build_nerve_cochains(G, F, N, chains=self.get("adj", F))
            elif key == "right":
                v = build_right_nerve(G, F, N, b)
            elif key == "bg":
                v = build_one_object_nerve(G, F, N, b)
            elif key == "bar":
                v = build_bar_complex(G, F, N, b)
            else:
                raise KeyError(key)
            self._cache[k] = v
            self.timings[f"build {key} {F}"] = time.perf_counter() - t0
        return self._cache[k]

    def complex(self, key: str, F: Optional[FieldSpec] = None) -> ChainComplexSlice:
        v = self.get(key, F)
        return getattr(v, "complex", v)


def group_info(s: Session) -> dict:
    G = s.G
    cc = conjugacy_classes(G)
    classes = []
    for rep, cls in zip(cc.representatives, cc.classes):
        classes.append({"representative": rep, "label": G.name_of(rep), "size": len(cls),
                        "members": list(cls), "centralizer_order": centralizer(G, rep).order})
    orbit_ok = all(len(c["members"]) * c["centralizer_order"] == G.order for c in classes)
    return {"group": {"label": G.label, "order": G.order, "abelian": G.is_abelian,
                      "identity": G.identity, "num_classes": len(cc)},
            "conjugacy": classes,
            "checks": {"orbit_stabilizer": orbit_ok}}


def hochschild_section(s: Session) -> dict:
    hc, hcc = s.complex("hc"), s.complex("hcc")
    checks = {"chains_dd_zero": hc.composites_zero(), "cochains_dd_zero": hcc.composites_zero()}
    out = {"sizes": {"hochschild_chains": _size(hc), "hochschild_cochains": _size(hcc)},
           "checks": checks}
    if checks["chains_dd_zero"] and checks["cochains_dd_zero"]:
        h, c = hc.betti(), hcc.betti()
        out["homology"] = h.to_json()
        out["cohomology"] = c.to_json()
        n_classes = len(conjugacy_classes(s.G))
        checks["hh0_equals_classes"] = h.dims[0] == n_classes
        if s.F.is_field:
            checks["homology_equals_cohomology_dims"] = h.dims == c.dims
    return out


def nerve_section(s: Session) -> dict:
    G, N = s.G, s.N
    adj, right, bg, bar = s.complex("adj"), s.complex("right"), s.complex("bg"), s.complex("bar")
    adjc = s.complex("adjc")
    checks = {"adjoint_dd_zero": adj.composites_zero(), "adjoint_cochains_dd_zero": adjc.composites_zero(),
              "right_dd_zero": right.composites_zero(), "bar_dd_zero": bar.composites_zero()}
    comps = []
    for comp in components(s.get("adj")):
        rep = comp.objects[0]
        cb = centralizer_bar_complex(G, rep, s.F, N)
        own, theirs = comp.complex.betti(), cb.betti()
        entry = {"objects": list(comp.objects), "homology": own.to_json(),
                 "centralizer_order": centralizer(G, rep).order,
                 "centralizer_bar_homology": theirs.to_json(),
                 "equal": own.dims == theirs.dims and [h.torsion for h in own.degrees]
                 == [h.torsion for h in theirs.degrees]}
        comps.append(entry)
    checks["components_equal_classes"] = len(comps) == len(conjugacy_classes(G))
    checks["component_homology_equals_centralizer"] = all(c["equal"] for c in comps)
    rb = right.betti()
    checks["right_nerve_contractible"] = rb.dims == (1,) + (0,) * (N - 1) and not any(
        h.torsion for h in rb.degrees)
    checks["bg_equals_bar"] = all(bg.differentials[k] == bar.differentials[k]
                                  for k in range(1, N + 1))
    orbits = orbit_counts(G, N)
    checks["quotient_orbits_biject_bg"] = all(o == b and free for o, b, free in orbits)
    qmaps = {k: quotient_map(G, k, s.F) for k in range(N + 1)}
    checks["quotient_map_commutes"] = all(
        (qmaps[k - 1] @ right.differentials[k]) == (bg.differentials[k] @ qmaps[k])
        for k in range(1, N + 1))
    return {"sizes": {"adjoint": _size(adj), "right_action": _size(right)},
            "adjoint_homology": adj.betti().to_json(),
            "adjoint_cohomology": adjc.betti().to_json(),
            "components": comps,
            "right_action_homology": rb.to_json(),
            "quotient_orbits": [{"degree": k, "orbits": o, "bg_simplices": b, "free": free}
                                for k, (o, b, free) in enumerate(orbits)],
            "checks": checks}


def derivations_section(s: Session) -> dict:
    F, notes = _working_field(s.F)
    rep = derivations_report(s.G, F, s.complex("hcc", F))
    return {"derivations": {**rep.to_json(), "field": F.name, "notes": notes},
            "checks": {"out_equals_hh1": rep.consistent}}


def compare_section(s: Session) -> dict:
    F, notes = _working_field(s.F)
    G, N = s.G, s.N
    target = s.complex("adj", F)
    if s.config.corrupt_sign is not None:
        target = corrupt_sign(target, s.config.corrupt_sign)
        notes = notes + [f"negative control: one sign flipped in nerve differential {s.config.corrupt_sign}"]
    S = chain_map_S(G, F, N, source=s.complex("hc", F), target=target)
    T = cochain_map_T(G, F, N, source=s.complex("hcc", F), target=s.complex("adjc", F))
    rs, rt = compare_maps(S, seed=s.config.seed), compare_maps(T, seed=s.config.seed)
    perm = {"S": all(m.is_permutation_matrix() for m in S.degree_matrices.values()),
            "T": all(m.is_permutation_matrix() for m in T.degree_matrices.values())}
    return {"compare": {"S": rs.to_json(), "T": rt.to_json(), "field": F.name, "notes": notes,
                        "permutation_matrices": perm},
            "checks": {"S_signed_law_and_isomorphism": rs.signed.passed,
                       "S_rescaled_strict": rs.rescaled.passed,
                       "T_signed_law_and_isomorphism": rt.signed.passed,
                       "T_rescaled_strict": rt.rescaled.passed,
                       "S_T_permutation_matrices": perm["S"] and perm["T"]}}


def burghelea_section(s: Session) -> dict:
    rep = burghelea_report(s.G, s.F, s.N, s.complex("hc"))
    return {"burghelea": rep.to_json(), "checks": {"burghelea_equal": rep.passed}}


def benson_section(s: Session) -> dict:
    b = benson_check(s.G)
    return {"benson": b.to_json(), "checks": {"benson_strict_iff_nonabelian": b.consistent}}


SECTIONS = {
    "group-info": (group_info,),
    "hochschild": (group_info, hochschild_section),
    "nerve": (group_info, nerve_section),
    "derivations": (group_info, derivations_section),
    "compare": (group_info, compare_section),
    "burghelea": (group_info, burghelea_section),
    "benson-check": (group_info, benson_section),
    "full-report": (group_info, hochschild_section, nerve_section, derivations_section,
                    compare_section, burghelea_section, benson_section),
}


def run(command: str, config: RunConfig, G: Optional[FiniteGroup] = None) -> tuple[dict, int]:
    """Produce the report for ``command`` and its exit code (0 pass, 2 math failure)."""
    if command not in SECTIONS:
        raise UsageError(f"unknown command {command!r}")
    G = G or ingest_group(config)
    s = Session(G, config)
    report: dict = {"command": command, "version": __version__,
                    "config": {"field": config.field.name, "max_degree": config.max_degree,
                               "seed": config.seed}}
    checks: dict = {}
    for section in SECTIONS[command]:
        t0 = time.perf_counter()
        part = section(s)
        s.timings[section.__name__] = time.perf_counter() - t0
        checks.update(part.pop("checks", {}))
        report.setdefault("sizes", {}).update(part.pop("sizes", {}))
        report.update(part)
    report["checks"] = checks
    report["passed"] = all(checks.values())
    if config.timing:
        report["timing_seconds"] = {k: round(v, 4) for k, v in s.timings.items()}
    return report, 0 if report["passed"] else 2


# ---------------------------------------------------------------- output


def _betti_rows(report: dict) -> list[list]:
    rows = []

    def add(name, b):
        for k, d in enumerate(b["dims"]):
            tors = b.get("torsion", [[]] * len(b["dims"]))[k]
            rows.append([name, b["field"], k, d, " ".join(map(str, tors))])

    for key, name in (("homology", "HH_*"), ("cohomology", "HH^*"),
                      ("adjoint_homology", "H_*(BG_adj)"), ("adjoint_cohomology", "H^*(BG_adj)"),
                      ("right_action_homology", "H_*(BrG)")):
        if key in report:
            add(name, report[key])
    for c in report.get("components", []):
        add(f"H_*(component {c['objects'][0]})", c["homology"])
        add(f"H_*(bar C(g={c['objects'][0]}))", c["centralizer_bar_homology"])
    if "burghelea" in report:
        for c in report["burghelea"]["per_class"]:
            add(f"H_*(C(g={c['representative']}))",
                {"dims": c["dims"], "field": report["burghelea"]["field"]})
    return rows


def format_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["complex", "field", "degree", "dimension", "torsion"])
    w.writerows(_betti_rows(report))
    return buf.getvalue()


def format_text(report: dict) -> str:
    g = report["group"]
    lines = [f"group {g['label']}: order {g['order']}, {g['num_classes']} classes, "
             f"{'abelian' if g['abelian'] else 'non-abelian'}"]
    lines.append("  class sizes: " + ", ".join(
        f"{c['label']}:{c['size']} (|C|={c['centralizer_order']})" for c in report["conjugacy"]))
    for key, name in (("homology", "HH_n"), ("cohomology", "HH^n"),
                      ("adjoint_homology", "H_n(BG)"), ("right_action_homology", "H_n(BrG)")):
        if key in report:
            lines.append(f"  {name} over {report[key]['field']}: {tuple(report[key]['dims'])}")
    if "derivations" in report:
        d = report["derivations"]
        lines.append(f"  Der {d['dim_der']}, Int {d['dim_int']}, Out {d['dim_out']}, HH^1 {d['hh1_dim']}")
    if "burghelea" in report:
        b = report["burghelea"]
        lines.append(f"  Burghelea: HH {tuple(b['hh_dims'])} vs sum over classes {tuple(b['sum_dims'])}")
    if "benson" in report:
        b = report["benson"]
        lines.append(f"  Benson count: lhs {b['lhs_dim']}, rhs {b['rhs_dim']}, {b['verdict']}")
    if "compare" in report:
        for name in ("S", "T"):
            r = report["compare"][name]
            lines.append(f"  {name}: signed law signs {r['signed']['signs']} "
                         f"{'pass' if r['signed']['passed'] else 'FAIL'}; rescaled "
                         f"{'pass' if r['rescaled']['passed'] else 'FAIL'}; unsigned square "
                         f"{'commutes' if r['strict_as_drawn']['passed'] else 'does not commute'}")
            if r["signed"]["witness"]:
                lines.append(f"    witness: {json.dumps(r['signed']['witness'], sort_keys=True)}")
    for k, v in report["checks"].items():
        lines.append(f"  [{'pass' if v else 'FAIL'}] {k}")
    lines.append("PASS" if report["passed"] else "FAIL")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return format_csv(report)
    return format_text(report)


# ---------------------------------------------------------------- dumps


DUMP_KINDS = ("hochschild-chains", "hochschild-cochains", "adjoint", "adjoint-cochains",
              "right", "bg", "bar")


def _dump_source(s: Session, kind: str) -> ChainComplexSlice:
    key = {"hochschild-chains": "hc", "hochschild-cochains": "hcc", "adjoint": "adj",
           "adjoint-cochains": "adjc", "right": "right", "bg": "bg", "bar": "bar"}.get(kind)
    if key is None:
        raise UsageError(f"unknown complex {kind!r}; choose from {', '.join(DUMP_KINDS)}")
    return s.complex(key)


def dump_matrix(s: Session, spec: str) -> str:
    kind, _, k = spec.rpartition(":")
    if not kind or not k.lstrip("-").isdigit():
        raise UsageError(f"--dump-matrix expects COMPLEX:DEGREE, got {spec!r}")
    cx = _dump_source(s, kind)
    if int(k) not in cx.differentials:
        raise UsageError(f"{kind} has differentials in degrees {sorted(cx.differentials)}")
    return cx.differentials[int(k)].dumps()


def dump_complex(s: Session, kind: str) -> str:
    cx = _dump_source(s, kind)
    out = [f"# {cx.label}", f"# orientation {cx.orientation}; basis {cx.codec.describe()}",
           "dims " + " ".join(map(str, cx.dims))]
    for k, d in sorted(cx.differentials.items()):
        out.append(f"# differential {k}")
        out.append(d.dumps().rstrip("\n"))
    return "\n".join(out) + "\n"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad arguments; here 2 is reserved for mathematical failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hhnerve", description=(
        "Hochschild (co)homology of group algebras against the nerve of the adjoint groupoid."))
    p.add_argument("command", choices=COMMANDS)
    src = p.add_argument_group("group source")
    src.add_argument("--group", help="built-in group: c1..c8, klein, s3, s4, d3..d6, q8")
    src.add_argument("--cayley-file", help='JSON file {"order": n, "table": [[...]], "labels": [...]}')
    p.add_argument("--field", default="Q", help="Q, Z or Fp (e.g. F2, F3)")
    p.add_argument("--max-degree", type=int, default=3, help="truncation degree N (default 3)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled (non-exhaustive) checks")
    p.add_argument("--budget-mb", type=float, default=None,
                   help="memory budget in MB (default: $HHNERVE_BUDGET_MB or 1024)")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    p.add_argument("--corrupt-sign", type=int, metavar="K", default=None,
                   help="negative control: flip one sign in nerve differential K before comparing")
    p.add_argument("--dump-matrix", metavar="COMPLEX:K",
                   help=f"print one differential in coordinate format; COMPLEX in {', '.join(DUMP_KINDS)}")
    p.add_argument("--dump-complex", metavar="COMPLEX", help="print dims and all differentials")
    p.add_argument("--dot", action="store_true", help="print the adjoint nerve 1-skeleton as DOT")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(group=args.group, cayley_file=args.cayley_file,
                           field=FieldSpec.parse(args.field), max_degree=args.max_degree,
                           format=args.format, seed=args.seed,
                           budget_mb=args.budget_mb if args.budget_mb is not None else budget_mb(),
                           timing=args.timing, corrupt_sign=args.corrupt_sign)
        G = ingest_group(config)
        if args.dump_matrix or args.dump_complex or args.dot:
            s = Session(G, config)
            if args.dump_matrix:
                sys.stdout.write(dump_matrix(s, args.dump_matrix))
            if args.dump_complex:
                sys.stdout.write(dump_complex(s, args.dump_complex))
            if args.dot:
                sys.stdout.write(dot_one_skeleton(s.get("adj")))
            return 0
        report, code = run(args.command, config, G)
    except NotAGroup as exc:
        print(f"error: NotAGroup({exc.reason}) witness {list(exc.witness)}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded(|G|={exc.order}, N={exc.max_degree}); "
              f"budget {exc.budget_mb} MB", file=sys.stderr)
        return 1
    except (UsageError, UnsupportedParameter, NotClosed, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(report, config.format))
    return code


if __name__ == "__main__":
    sys.exit(main())

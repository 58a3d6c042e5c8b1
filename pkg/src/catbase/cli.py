"""Command-line surface: JSON documents in, reports out, stable exit codes.

Exit codes: 0 all checks pass, 1 a property or theorem check failed (the
report carries witnesses), 2 input error, 3 capacity or budget exceeded.
Reports are byte-stable for fixed inputs and seeds: keys are sorted, subsets
are ascending element arrays, and volatile data (wall time, backend) appears
only under the --timing flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .axioms import AxiomViolation, ValidationResult, default_budget, validate_base
from .classify import classify_all, comeager_region, fundamental_witness
from .core import N_CAP, CategoryBase, PointSet, SetFamily
from .doperator import OperatorTable, cluster_operator, d_topology, validate_operator
from .equiv import DIRECTIONS, check_equivalence
from .errors import CapacityError, InputError, TheoremViolation
from .search import SweepConfig, sweep
from .topo import has_baire_property, validate_topology

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3

_DOCUMENT_KEYS = {"n", "regions", "operator", "topology"}


@dataclass(frozen=True, slots=True)
class InputDocument:
    n: int
    regions: tuple[PointSet, ...]
    operator: Optional[OperatorTable]
    topology: Optional[SetFamily]


def _subset_elements(obj, n: int, where: str) -> int:
    if not isinstance(obj, list):
        raise InputError(f"{where}: expected a subset as an element array")
    mask = 0
    prev = -1
    for i, e in enumerate(obj):
        if not isinstance(e, int) or isinstance(e, bool):
            raise InputError(f"{where}[{i}]: expected an integer element")
        if e >= n or e < 0:
            raise InputError(f"{where}[{i}]: element {e} out of range for n={n}")
        if e <= prev:
            raise InputError(f"{where}[{i}]: elements must be strictly ascending")
        prev = e
        mask |= 1 << e
    return mask


def subset_key(mask: int) -> str:
    """Canonical operator-map key for a subset: its JSON array text."""
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(str(x))
        mask >>= 1
        x += 1
    return "[" + ",".join(out) + "]"


def mask_to_list(mask: int) -> list[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def _parse_operator_map(obj, n: int, where: str) -> OperatorTable:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object mapping subsets to subsets")
    size = 1 << n
    expected = {subset_key(s) for s in range(size)}
    got = set(obj)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        if missing:
            raise InputError(f"{where}: missing key {missing[0]!r} (map must be total)")
        raise InputError(f"{where}: unexpected key {extra[0]!r}")
    table = [0] * size
    for s in range(size):
        key = subset_key(s)
        table[s] = _subset_elements(obj[key], n, f"{where}[{key!r}]")
    return OperatorTable(n, tuple(table))


def parse_input(text: str) -> InputDocument:
    """Strict parse of an input document; unknown fields are rejected."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise InputError("top-level value must be an object")
    unknown = set(raw) - _DOCUMENT_KEYS
    if unknown:
        raise InputError(f"unknown field {sorted(unknown)[0]!r}")
    if "n" not in raw or "regions" not in raw:
        raise InputError('document needs "n" and "regions"')
    n = raw["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError('"n" must be an integer >= 1')
    if n > N_CAP:
        raise CapacityError(f"n={n} exceeds cap {N_CAP}")
    if not isinstance(raw["regions"], list):
        raise InputError('"regions" must be an array of subsets')
    regions = tuple(
        PointSet(n, _subset_elements(sub, n, f"regions[{i}]"))
        for i, sub in enumerate(raw["regions"])
    )
    operator = None
    if "operator" in raw:
        operator = _parse_operator_map(raw["operator"], n, "operator")
    topology = None
    if "topology" in raw:
        if not isinstance(raw["topology"], list):
            raise InputError('"topology" must be an array of subsets')
        topology = SetFamily.from_masks(
            n,
            (
                _subset_elements(sub, n, f"topology[{i}]")
                for i, sub in enumerate(raw["topology"])
            ),
        )
    return InputDocument(n=n, regions=regions, operator=operator, topology=topology)


def document_to_dict(doc: InputDocument) -> dict:
    out: dict = {
        "n": doc.n,
        "regions": [mask_to_list(r.bits) for r in doc.regions],
    }
    if doc.operator is not None:
        out["operator"] = {
            subset_key(s): mask_to_list(doc.operator.table[s])
            for s in range(1 << doc.n)
        }
    if doc.topology is not None:
        out["topology"] = [mask_to_list(m) for m in doc.topology.masks()]
    return out


def serialize_document(doc: InputDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# report rendering
# ---------------------------------------------------------------------------

def _emit(report: dict, text_lines: list[str], as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _fmt_mask(mask: int) -> str:
    return "{" + ",".join(str(x) for x in mask_to_list(mask)) + "}"


def _violation_dict(v: AxiomViolation) -> dict:
    return {
        "kind": v.kind,
        "region": None if v.witness_region is None else mask_to_list(v.witness_region.bits),
        "family": None
        if v.witness_family is None
        else [mask_to_list(d.bits) for d in v.witness_family],
        "point": v.witness_point,
    }


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_validated(args) -> tuple[InputDocument, ValidationResult]:
    doc = parse_input(_read_input(args.input))
    result = validate_base(doc.n, doc.regions, budget=args.budget)
    return doc, result


def _resolve_operator(args, doc: InputDocument, base: CategoryBase) -> tuple[str, OperatorTable]:
    """Operator precedence: --operator flag, embedded document field, cluster."""
    choice = getattr(args, "operator", None)
    if choice is None:
        if doc.operator is not None:
            return "embedded", doc.operator
        return "cluster", cluster_operator(base)
    if choice == "cluster":
        return "cluster", cluster_operator(base)
    raw = _read_input(choice)
    try:
        parsed = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"operator file: malformed JSON at line {exc.lineno}: {exc.msg}"
        ) from exc
    if isinstance(parsed, dict) and "operator" in parsed:
        opdoc = parse_input(raw)
        if opdoc.n != base.n:
            raise InputError(f"operator file has n={opdoc.n}, base has n={base.n}")
        if opdoc.operator is None:
            raise InputError("operator file carries no operator map")
        return f"file:{choice}", opdoc.operator
    return f"file:{choice}", _parse_operator_map(parsed, base.n, "operator")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    doc, result = _load_validated(args)
    report = {
        "command": "validate",
        "n": doc.n,
        "valid": result.ok,
        "degenerate_single_region": result.degenerate_single_region,
        "evaluations": result.evaluations,
        "violations": [_violation_dict(v) for v in result.violations],
    }
    lines = [
        f"valid: {'yes' if result.ok else 'no'}",
        f"n: {doc.n}",
        f"regions: {' '.join(_fmt_mask(r.bits) for r in doc.regions)}",
        f"degenerate single region: {'yes' if result.degenerate_single_region else 'no'}",
        f"axiom clause evaluations: {result.evaluations}",
    ]
    for v in result.violations:
        lines.append(f"violation: {v.describe()}")
    _emit(report, lines, args.json)
    return EXIT_OK if result.ok else EXIT_CHECK_FAILED


def _require_base(result: ValidationResult) -> CategoryBase:
    if not result.ok:
        first = result.violations[0].describe()
        raise InputError(f"input is not a category base ({first})")
    return result.base


def cmd_classify(args) -> int:
    doc, result = _load_validated(args)
    base = _require_base(result)
    classes = classify_all(base)
    rows = []
    for s in range(1 << base.n):
        rows.append(
            {
                "set": mask_to_list(s),
                "singular": classes.is_singular_mask(s),
                "meager": classes.is_meager_mask(s),
                "baire": classes.is_baire_mask(s),
            }
        )
    report = {"command": "classify", "n": base.n, "sets": rows}
    width = max(len(_fmt_mask(s)) for s in range(1 << base.n)) + 2
    lines = [f"n: {base.n}", f"{'set'.ljust(width)}singular  meager  baire"]
    for s in range(1 << base.n):
        lines.append(
            _fmt_mask(s).ljust(width)
            + f"{'yes' if classes.is_singular_mask(s) else 'no':<10}"
            + f"{'yes' if classes.is_meager_mask(s) else 'no':<8}"
            + ("yes" if classes.is_baire_mask(s) else "no")
        )
    _emit(report, lines, args.json)
    return EXIT_OK


def cmd_topology(args) -> int:
    doc, result = _load_validated(args)
    base = _require_base(result)
    source, op = _resolve_operator(args, doc, base)
    if source != "cluster":
        bad = validate_operator(base, op, paranoid=args.paranoid)
        if bad:
            report = {
                "command": "topology",
                "n": base.n,
                "operator": source,
                "operator_valid": False,
                "operator_violations": [v.describe() for v in bad],
            }
            lines = [f"operator: {source}", "operator valid: no"] + [
                f"violation: {v.describe()}" for v in bad
            ]
            _emit(report, lines, args.json)
            return EXIT_CHECK_FAILED
    t = d_topology(base, op)
    report = {
        "command": "topology",
        "n": base.n,
        "operator": source,
        "opens": [mask_to_list(m) for m in t.open_masks()],
    }
    lines = [
        f"n: {base.n}",
        f"operator: {source}",
        f"opens: {' '.join(_fmt_mask(m) for m in t.open_masks())}",
    ]
    _emit(report, lines, args.json)
    return EXIT_OK


def cmd_equiv(args) -> int:
    doc, result = _load_validated(args)
    base = _require_base(result)
    source, op = _resolve_operator(args, doc, base)
    if source != "cluster":
        bad = validate_operator(base, op, paranoid=args.paranoid)
        if bad:
            report = {
                "command": "equiv",
                "n": base.n,
                "operator": source,
                "operator_valid": False,
                "operator_violations": [v.describe() for v in bad],
            }
            lines = [f"operator: {source}", "operator valid: no"] + [
                f"violation: {v.describe()}" for v in bad
            ]
            _emit(report, lines, args.json)
            return EXIT_CHECK_FAILED
    cap = None if args.all_witnesses else args.witness_cap
    rep = check_equivalence(base, op, witness_cap=cap)
    report = {
        "command": "equiv",
        "n": base.n,
        "operator": source,
        "meager_equal": rep.meager_equal,
        "baire_equal": rep.baire_equal,
        "equivalent": rep.equivalent,
        "hypothesis": rep.hypothesis,
        "minimal_region_condition": rep.minimal_region_condition,
        "opens_abundant_baire": rep.opens_abundant_baire,
        "witnesses": {
            k: [mask_to_list(p.bits) for p in rep.witnesses[k]] for k in DIRECTIONS
        },
    }
    lines = [
        f"n: {base.n}",
        f"operator: {source}",
        f"meager classes equal: {'yes' if rep.meager_equal else 'no'}",
        f"baire classes equal: {'yes' if rep.baire_equal else 'no'}",
        f"hypothesis (every region contains a non-empty open): "
        f"{'yes' if rep.hypothesis else 'no'}",
        f"minimal region condition: {'yes' if rep.minimal_region_condition else 'no'}",
        f"non-empty opens abundant Baire: {'yes' if rep.opens_abundant_baire else 'no'}",
    ]
    for k in DIRECTIONS:
        if rep.witnesses[k]:
            sets = " ".join(str(p) for p in rep.witnesses[k])
            lines.append(f"witnesses {k}: {sets}")
    _emit(report, lines, args.json)
    return EXIT_OK if rep.equivalent else EXIT_CHECK_FAILED


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        n=args.n,
        mode="random" if args.random else "exhaustive",
        sample_count=args.samples,
        seed=args.seed,
        canonicalize=args.canonical,
        budget=args.budget if args.budget is not None else default_budget(),
        random_operators=args.operators,
        paranoid=args.paranoid,
        extended=args.extended,
    )
    rep = sweep(cfg, workers=args.workers)
    report = rep.canonical_dict()
    report["command"] = "sweep"
    if args.timing:
        report["timing"] = {
            "elapsed_s": round(rep.elapsed_s, 6),
            "backend": rep.backend,
            "workers": rep.workers,
        }
    c = rep.counts
    lines = [
        f"n: {cfg.n}",
        f"mode: {cfg.mode}",
        f"candidates: {c.candidates}",
        f"valid bases: {c.valid_bases}",
        f"hypothesis true: {c.hypothesis_true}",
        f"equivalence true: {c.equivalence_true}",
        f"minimal condition true: {c.minimal_condition_true}",
        f"operators checked: {c.operators_checked}",
        f"operators hypothesis true: {c.operators_hypothesis_true}",
        f"capacity skipped: {c.capacity_skipped}",
        f"truncated: {'yes' if rep.truncated else 'no'}",
        f"violations: {len(rep.violations)}",
    ]
    for v in rep.violations:
        regions = " ".join(_fmt_mask(r) for r in v.regions)
        lines.append(
            f"violation: index={v.index} check={v.check} operator={v.operator} "
            f"regions=[{regions}] {v.detail}"
        )
    if args.timing:
        lines.append(f"elapsed: {rep.elapsed_s:.3f}s")
        lines.append(f"backend: {rep.backend}")
        lines.append(f"workers: {rep.workers}")
    _emit(report, lines, args.json)
    if rep.truncated:
        return EXIT_CAPACITY
    return EXIT_CHECK_FAILED if rep.violations else EXIT_OK


def _parse_target_set(args, n: int) -> PointSet:
    try:
        raw = json.loads(args.set)
    except json.JSONDecodeError as exc:
        raise InputError(f"--set: malformed JSON: {exc.msg}") from exc
    return PointSet(n, _subset_elements(raw, n, "--set"))


def cmd_witness(args) -> int:
    doc, result = _load_validated(args)
    base = _require_base(result)
    s = _parse_target_set(args, base.n)
    if args.kind == "fundamental":
        w = fundamental_witness(base, s)
        report = {
            "command": "witness",
            "kind": "fundamental",
            "set": mask_to_list(s.bits),
            "region": None if w is None else mask_to_list(w.bits),
        }
        lines = [
            f"set: {s}",
            "meager: yes" if w is None else f"abundant everywhere in region: {w}",
        ]
        _emit(report, lines, args.json)
        return EXIT_OK
    if args.kind == "comeager":
        c = comeager_region(base, s)
        report = {
            "command": "witness",
            "kind": "comeager",
            "set": mask_to_list(s.bits),
            "region": mask_to_list(c.bits),
        }
        _emit(report, [f"set: {s}", f"region meager outside the set: {c}"], args.json)
        return EXIT_OK
    # decomposition over an explicit topology, an operator, or the basic topology
    if doc.topology is not None and getattr(args, "operator", None) is None:
        checked = validate_topology(base.n, doc.topology)
        if not checked.ok:
            raise InputError(
                f"document topology is not a topology ({checked.violation.describe()})"
            )
        t = checked.topology
        source = "document"
    else:
        source, op = _resolve_operator(args, doc, base)
        t = d_topology(base, op)
    dec = has_baire_property(t, s)
    report = {
        "command": "witness",
        "kind": "decomposition",
        "topology": source,
        "set": mask_to_list(s.bits),
        "decomposition": None
        if dec is None
        else {
            "h": mask_to_list(dec.h.bits),
            "q": mask_to_list(dec.q.bits),
            "r": mask_to_list(dec.r.bits),
            "degenerate": dec.degenerate,
        },
    }
    if dec is None:
        lines = [f"set: {s}", "baire property: no"]
    else:
        lines = [
            f"set: {s}",
            f"baire property: yes (over {source} topology)",
            f"h: {dec.h}",
            f"q: {dec.q}",
            f"r: {dec.r}",
            f"degenerate (h empty): {'yes' if dec.degenerate else 'no'}",
        ]
    _emit(report, lines, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catbase",
        description="Finite workbench for category bases and their D-topologies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument(
                "input",
                nargs="?",
                default="-",
                help="input document path, or - for stdin (default)",
            )
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="JSON report")
        fmt.add_argument(
            "--text", dest="json", action="store_false", help="aligned text report (default)"
        )
        p.set_defaults(json=False)
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            help="axiom-2 clause evaluation budget (default: CATBASE_BUDGET or 10^7)",
        )

    p = sub.add_parser("validate", help="check the category-base axioms")
    add_common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="singular/meager/Baire verdicts for all subsets")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("topology", help="operator-induced topology as a sorted open list")
    add_common(p)
    p.add_argument("--operator", default=None, help='"cluster" or an operator JSON file')
    p.add_argument("--paranoid", action="store_true", help="pairwise additivity check")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("equiv", help="compare base classes against the induced topology")
    add_common(p)
    p.add_argument("--operator", default=None, help='"cluster" or an operator JSON file')
    p.add_argument("--paranoid", action="store_true", help="pairwise additivity check")
    p.add_argument("--witness-cap", type=int, default=8, help="witnesses per direction")
    p.add_argument("--all-witnesses", action="store_true", help="list every witness")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("sweep", help="exhaustive or random theorem sweep")
    add_common(p, needs_input=False)
    p.add_argument("--n", type=int, required=True, help="ground-set size")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="all candidate families")
    mode.add_argument("--random", action="store_true", help="seeded random families")
    p.add_argument("--samples", type=int, default=0, help="candidate count (random mode)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--operators", type=int, default=0, help="random operators per base")
    p.add_argument("--canonical", action="store_true", help="quotient by point relabeling")
    p.add_argument("--paranoid", action="store_true", help="pairwise additivity check")
    p.add_argument("--extended", action="store_true", help="allow exhaustive n=4")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true", help="include wall time and backend")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("witness", help="witness objects for a named set")
    add_common(p)
    p.add_argument("--set", required=True, help='target subset, e.g. "[0,1]"')
    p.add_argument(
        "--kind",
        choices=("fundamental", "comeager", "decomposition"),
        required=True,
    )
    p.add_argument("--operator", default=None, help='"cluster" or an operator JSON file')
    p.add_argument("--paranoid", action="store_true", help="pairwise additivity check")
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

"""Command-line workbench over the library.

Four subcommands: ``analyze`` sweeps the ideal lattice of a graph file,
``construct`` emits a realization graph as an annotated document, ``verify``
machine-checks the generator family for chosen pairs, and ``counterexample``
replays the bundled demonstration that the legacy construction misses part
of the ideal while the corrected one does not.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or parse
errors.  Reports print as JSON by default; text mode is a lossy rendering
of the same data.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .construct import (
    ConstructedGraph,
    build_ideal_graph,
    build_legacy_graph,
    cycle_correspondence_check,
)
from .engine import LeavittAlgebra, format_element
from .families import (
    GapReport,
    RelationReport,
    build_generator_family,
    image_span_gap,
    nonzero_vertex_images,
    verify_family_relations,
    verify_surjectivity_window,
)
from .fixture import FIXTURE_BREAKERS, FIXTURE_CORE, load_fixture
from .graphs import (
    EdgePool,
    Graph,
    GraphFormatError,
    condition_K,
    condition_L,
    graph_doc,
    parse_graph,
)
from .ideals import IdealWindow, ProbeReport, closure_under_generators
from .lattice import (
    AdmissiblePair,
    breaking_vertices,
    enumerate_admissible_pairs,
    saturated_hereditary_sets,
)
from .scalars import field_from_spec

POOL = EdgePool(omega_cap=2)


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def parse_pair_spec(g: Graph, spec: str) -> AdmissiblePair:
    """Parse 'H=v1,v2;S=w1' (either list may be empty) into a checked pair."""
    core: list[str] = []
    breakers: list[str] = []
    seen: set[str] = set()
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, eq, rest = chunk.partition("=")
        key = key.strip()
        if not eq or key not in ("H", "S"):
            raise ValueError(f"bad pair component {chunk!r}; expected H=... or S=...")
        if key in seen:
            raise ValueError(f"duplicate pair component {key!r}")
        seen.add(key)
        names = [n.strip() for n in rest.split(",") if n.strip()]
        if key == "H":
            core = names
        else:
            breakers = names
    return AdmissiblePair.make(g, frozenset(core), frozenset(breakers))


# -- report documents ---------------------------------------------------------


def _relations_doc(r: RelationReport) -> dict:
    return {
        "ok": r.ok,
        "groups": [
            {
                "name": g.name,
                "ok": g.ok,
                "checked": g.checked,
                "failures": [
                    {"subject": f.subject, "detail": f.detail} for f in g.failures
                ],
                "skipped": [
                    {"subject": s.subject, "reason": s.reason} for s in g.skipped
                ],
            }
            for g in r.groups
        ],
    }


def _probe_doc(p: Optional[ProbeReport]) -> Optional[dict]:
    if p is None:
        return None
    doc: dict = {"is_identity": p.is_identity, "checked": p.checked}
    if p.failure is not None:
        doc["failure"] = {
            "witness": format_element(p.failure.witness),
            "side": p.failure.side,
            "product": format_element(p.failure.product),
        }
    return doc


def _gap_doc(rep: GapReport) -> dict:
    return {
        "style": rep.style,
        "degree_bound": rep.degree_bound,
        "relations": _relations_doc(rep.relations),
        "span_rank": rep.span_rank,
        "window_rank": rep.window_rank,
        "elements_spanned": rep.elements_spanned,
        "gap_empty": rep.gap_empty,
        "missing": [
            {
                "descriptor": w.descriptor,
                "element": format_element(w.element),
                "certified_absent_from_full_image": w.certified_absent,
            }
            for w in rep.missing
        ],
        "witness_in_span": dict(rep.witness_in_span),
        "probe": _probe_doc(rep.probe),
        "notes": list(rep.notes),
    }


def _construct_doc(built: ConstructedGraph) -> dict:
    base = built.base
    word = lambda p: None if p is None else base.path_word(p)
    return {
        "style": built.style,
        "pair": built.pair.label(),
        "graph": graph_doc(built.graph),
        "vertex_origins": {
            v: {"kind": o.kind, "path": word(o.path)}
            for v, o in sorted(built.vertex_origin.items())
        },
        "edge_origins": {
            name: {"kind": o.kind, "path": word(o.path)}
            for name, o in sorted(built.edge_origin.items())
        },
        "path_sets": {
            kind: {
                "members": [base.path_word(p) for p in ps.members],
                "max_len": ps.max_len,
                "is_infinite": ps.is_infinite,
                "complete": ps.complete,
                "omega_cap": ps.omega_cap,
            }
            for kind, ps in built.path_sets.items()
        },
        "truncated_at": built.truncated_at,
        "notes": list(built.notes),
    }


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return "\n".join(_text_lines(doc))


def _text_lines(value, key: str = "", indent: int = 0) -> list[str]:
    pad = "  " * indent
    label = f"{pad}{key}: " if key else pad
    if isinstance(value, dict):
        head = [f"{pad}{key}:"] if key else []
        lines = head
        for k, v in value.items():
            lines.extend(_text_lines(v, str(k), indent + (1 if key else 0)))
        return lines
    if isinstance(value, list):
        if not value:
            return [f"{label}[]"]
        if all(not isinstance(v, (dict, list)) for v in value):
            return [label + ", ".join(str(v) for v in value)]
        lines = [f"{pad}{key}:"] if key else []
        for v in value:
            lines.extend(_text_lines(v, "-", indent + 1))
        return lines
    return [f"{label}{value}"]


# -- subcommands ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    g = load_graph(args.graph)
    sets = saturated_hereditary_sets(g)
    doc = {
        "command": "analyze",
        "vertices": list(g.vertices),
        "saturated_hereditary_sets": [sorted(s) for s in sets],
        "breaking_vertices": {
            ",".join(sorted(s)) or "(empty)": sorted(breaking_vertices(g, s))
            for s in sets
        },
        "admissible_pairs": [p.label() for p in enumerate_admissible_pairs(g)],
        "condition_L": condition_L(g),
        "condition_K": condition_K(g),
    }
    print(_render(doc, args.format))
    return 0


def _selected_pairs(g: Graph, args) -> list[AdmissiblePair]:
    if args.all_pairs:
        return enumerate_admissible_pairs(g)
    return [parse_pair_spec(g, args.pair)]


def cmd_construct(args) -> int:
    g = load_graph(args.graph)
    builder = build_legacy_graph if args.old else build_ideal_graph
    docs = [
        _construct_doc(builder(g, pair, max_len=args.trunc, pool=POOL))
        for pair in _selected_pairs(g, args)
    ]
    doc = {"command": "construct", "constructions": docs}
    if not args.all_pairs:
        doc = {"command": "construct", **docs[0]}
    print(_render(doc, args.format))
    return 0


def _verify_pair_doc(
    g: Graph, pair: AdmissiblePair, *, field, degree: int, trunc: int
) -> tuple[bool, dict]:
    algebra = LeavittAlgebra(g, field)
    built = build_ideal_graph(g, pair, max_len=trunc, pool=POOL)
    family = build_generator_family(algebra, built, pool=POOL)
    relations = verify_family_relations(family)
    inj = nonzero_vertex_images(family)
    surj = verify_surjectivity_window(family, degree_bound=degree)
    cyc = cycle_correspondence_check(built)
    window = IdealWindow(algebra, pair, bound=degree, pool=POOL)
    closure = closure_under_generators(window)
    ok = relations.ok and inj.ok and surj.ok and cyc.ok and closure.ok
    closure_doc: dict = {"ok": closure.ok, "products_checked": closure.products_checked}
    if closure.failure is not None:
        closure_doc["failure"] = {
            "descriptor": closure.failure.descriptor.word(g),
            "multiplier": closure.failure.multiplier,
            "side": closure.failure.side,
            "product": format_element(closure.failure.product),
        }
    doc = {
        "pair": pair.label(),
        "ok": ok,
        "relations": _relations_doc(relations),
        "vertex_images": {
            "ok": inj.ok,
            "entries": {v: flag for v, flag in inj.entries},
            "conclusion": inj.conclusion,
        },
        "surjectivity": {
            "ok": surj.ok,
            "degree_bound": surj.degree_bound,
            "checked": surj.checked,
            "tallies": dict(surj.tallies),
            "failures": [
                {"descriptor": f.descriptor, "expected": f.expected, "got": f.got}
                for f in surj.failures
            ],
        },
        "cycles": {
            "ok": cyc.ok,
            "built_cycles": cyc.built_cycles,
            "base_cycles": cyc.base_cycles,
            "detail": cyc.detail,
        },
        "closure": closure_doc,
        "truncated_at": built.truncated_at,
    }
    return ok, doc


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    field = field_from_spec(args.field or "rational")
    pair_docs = []
    all_ok = True
    for pair in _selected_pairs(g, args):
        ok, doc = _verify_pair_doc(
            g, pair, field=field, degree=args.degree, trunc=args.trunc
        )
        all_ok = all_ok and ok
        pair_docs.append(doc)
    doc = {
        "command": "verify",
        "ok": all_ok,
        "field": args.field or "rational",
        "degree_bound": args.degree,
        "trunc_len": args.trunc,
        "pairs": pair_docs,
    }
    print(_render(doc, args.format))
    return 0 if all_ok else 1


def _counterexample_field_doc(
    field_spec: str, *, degree: int, trunc: int
) -> tuple[bool, dict]:
    g = load_fixture()
    pair = AdmissiblePair.make(g, FIXTURE_CORE, FIXTURE_BREAKERS)
    field = field_from_spec(field_spec)
    algebra = LeavittAlgebra(g, field)

    old_built = build_legacy_graph(g, pair, max_len=trunc, pool=POOL)
    new_built = build_ideal_graph(g, pair, max_len=trunc, pool=POOL)
    old_gap = image_span_gap(algebra, old_built, degree_bound=degree, pool=POOL)
    new_gap = image_span_gap(algebra, new_built, degree_bound=degree, pool=POOL)
    new_family = build_generator_family(algebra, new_built, pool=POOL)
    surj = verify_surjectivity_window(new_family, degree_bound=degree)
    cyc_old = cycle_correspondence_check(old_built)
    cyc_new = cycle_correspondence_check(new_built)

    window = IdealWindow(algebra, pair, bound=degree, pool=POOL)
    witness = algebra.edge("e") * algebra.gap("w", pair.core)
    probe = old_gap.probe
    probe_failed_with_zero = (
        probe is not None
        and not probe.is_identity
        and probe.failure is not None
        and probe.failure.witness == witness
        and probe.failure.product.is_zero()
    )

    verdict = (
        old_gap.relations.ok
        and not old_gap.gap_empty
        and probe_failed_with_zero
        and new_gap.relations.ok
        and new_gap.gap_empty
        and surj.ok
        and cyc_old.ok
        and cyc_new.ok
    )
    doc = {
        "field": field_spec,
        "verdict": verdict,
        "witness": {
            "text": format_element(witness),
            "in_ideal_window": window.contains(witness),
            "in_legacy_span": old_gap.witness_in_span.get("via(e)"),
            "in_corrected_span": new_gap.witness_in_span.get("via(e)"),
        },
        "legacy": _gap_doc(old_gap),
        "corrected": {
            **_gap_doc(new_gap),
            "surjectivity": {
                "ok": surj.ok,
                "checked": surj.checked,
                "tallies": dict(surj.tallies),
            },
        },
        "cycles_ok": {"legacy": cyc_old.ok, "corrected": cyc_new.ok},
    }
    return verdict, doc


def cmd_counterexample(args) -> int:
    specs = [args.field] if args.field else ["rational", "gf:5"]
    field_docs = {}
    verdicts = []
    gap_lists = []
    for spec in specs:
        verdict, doc = _counterexample_field_doc(
            spec, degree=args.degree, trunc=args.trunc
        )
        field_docs[spec] = doc
        verdicts.append(verdict)
        gap_lists.append(
            tuple(sorted(w["descriptor"] for w in doc["legacy"]["missing"]))
        )
    stable = len(set(gap_lists)) == 1 and len(set(verdicts)) == 1
    doc = {
        "command": "counterexample",
        "degree_bound": args.degree,
        "trunc_len": args.trunc,
        "stable_across_fields": stable,
        "verdict": all(verdicts) and stable,
        "fields": field_docs,
    }
    print(_render(doc, args.format))
    return 0 if doc["verdict"] else 1


# -- argument plumbing ----------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("bound must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphideal",
        description="Exact workbench for graded ideals of path algebras "
        "and the graphs that realize them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, graph=True, pairsel=False, bounds=False, field=False):
        if graph:
            p.add_argument("--graph", required=True, help="graph JSON file")
        if pairsel:
            grp = p.add_mutually_exclusive_group(required=True)
            grp.add_argument(
                "--pair", help="admissible pair, e.g. 'H=v1,v2;S=w1' (lists may be empty)"
            )
            grp.add_argument(
                "--all-pairs", action="store_true", help="run every admissible pair"
            )
        if bounds:
            p.add_argument("--degree", type=_positive, default=4, help="descriptor degree bound")
            p.add_argument("--trunc", type=_positive, default=4, help="path truncation length")
        if field:
            p.add_argument("--field", help="scalar field: rational or gf:P")
        p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("analyze", help="ideal-lattice and cycle-condition sweep")
    add_common(p)
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("construct", help="emit a realization graph document")
    add_common(p, pairsel=True)
    p.add_argument("--trunc", type=_positive, default=4, help="path truncation length")
    p.add_argument("--old", action="store_true", help="use the legacy construction")
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("verify", help="machine-check the generator family")
    add_common(p, pairsel=True, bounds=True, field=True)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser(
        "counterexample", help="replay the bundled legacy-construction failure"
    )
    add_common(p, graph=False, bounds=True, field=True)
    p.set_defaults(run=cmd_counterexample)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except GraphFormatError as exc:
        print(f"error ({exc.kind}): {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())

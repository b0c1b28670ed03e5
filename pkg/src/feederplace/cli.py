"""Command-line front end.

Exit codes: 0 success (feasible / identifiable / no gap), 1 usage or parse
error, 2 infeasible placement, 3 non-identifiable placement, 4 optimality gap
found, 5 resource cap exceeded.  Apart from measured wall times in ``bench``,
identical inputs and seeds produce byte-identical outputs.
"""

import argparse
import json
import os
import statistics
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import corpus
from .errors import CombinatorialLimit, FeederError, InstanceTooLarge, NegativeCost
from .model import (
    CostModel,
    RadialTree,
    export_dot,
    format_cost,
    parse_cost,
    parse_feeder,
    random_radial_tree,
    serialize_feeder,
)
from .oracle import (
    exhaustive_min_cost,
    is_outage_identifiable,
    witness_report,
)
from .placement import (
    check_constraints,
    dp_place,
    placement_cost,
    placement_from_doc,
    placement_to_doc,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_NOT_IDENTIFIABLE = 3
EXIT_ORACLE_GAP = 4
EXIT_CAP = 5


@dataclass(frozen=True)
class BenchRecord:
    """One benchmark row.  decision_sites counts non-root critical nodes
    (branch points and zero-injection nodes), matching the published
    convention for these feeders; the root is always processed as well."""

    feeder: str
    nodes: int
    decision_sites: int
    node_sensors: int
    line_sensors: int
    cost: Fraction
    seconds: float

    def row(self) -> str:
        return "\t".join(
            (
                self.feeder,
                str(self.nodes),
                str(self.decision_sites),
                str(self.node_sensors),
                str(self.line_sensors),
                format_cost(self.cost),
                f"{self.seconds:.6f}",
            )
        )

    HEADER = "feeder\tnodes\tdecision_sites\tnode_sensors\tline_sensors\tcost\tseconds"


def bench_suite(
    instances: list[tuple[str, RadialTree, CostModel]], repeats: int = 11
) -> list[BenchRecord]:
    """Time the placement on each instance; wall time is the median of
    ``repeats`` runs (at least one)."""
    records = []
    for name, tree, costs in instances:
        times = []
        for _ in range(max(repeats, 1)):
            start = time.perf_counter()
            placement, _ = dp_place(tree, costs)
            times.append(time.perf_counter() - start)
        records.append(
            BenchRecord(
                feeder=name,
                nodes=tree.n_nodes,
                decision_sites=sum(
                    1
                    for i in tree.nodes
                    if i != tree.root
                    and (tree.degree(i) >= 3 or i in tree.zero_injection)
                ),
                node_sensors=len(placement.node_sensors),
                line_sensors=len(placement.line_sensors),
                cost=placement_cost(placement, costs),
                seconds=statistics.median(times),
            )
        )
    return records


def _load_feeder(ref: str):
    """Resolve a feeder reference: a path, a file in $FEEDERPLACE_CORPUS, or a
    bundled feeder name."""
    path = Path(ref)
    if path.exists():
        return parse_feeder(path.read_text())
    env_dir = os.environ.get("FEEDERPLACE_CORPUS")
    if env_dir:
        candidate = Path(env_dir) / ref
        if candidate.exists():
            return parse_feeder(candidate.read_text())
        candidate = Path(env_dir) / f"{ref}.json"
        if candidate.exists():
            return parse_feeder(candidate.read_text())
    if ref in corpus.BUNDLED:
        return corpus.load(ref)
    raise FeederError(f"no feeder file or bundled feeder named {ref!r}")


def _apply_cost_overrides(tree, costs, args) -> CostModel:
    node = getattr(args, "node_cost", None)
    line = getattr(args, "line_cost", None)
    if node is None and line is None:
        return costs
    node_cost = dict(costs.node_cost)
    line_cost = dict(costs.line_cost)
    if node is not None:
        value = parse_cost(node)
        if value < 0:
            raise NegativeCost(f"node-cost override {node}")
        node_cost = {i: value for i in tree.nodes}
    if line is not None:
        value = parse_cost(line)
        if value < 0:
            raise NegativeCost(f"line-cost override {line}")
        line_cost = {e: value for e in tree.edges}
    return CostModel(node_cost=node_cost, line_cost=line_cost)


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_place(args) -> int:
    tree, costs = _load_feeder(args.feeder)
    costs = _apply_cost_overrides(tree, costs, args)
    placement, trace = dp_place(tree, costs)
    doc = placement_to_doc(placement)
    doc["cost"] = format_cost(placement_cost(placement, costs))
    text = json.dumps(doc, indent=2) + "\n"
    _write_or_print(text, args.output)
    if args.output:
        print(
            f"placed {len(placement.node_sensors)} node sensor(s), "
            f"{len(placement.line_sensors)} line sensor(s), cost {doc['cost']}"
        )
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_doc(), indent=2) + "\n")
    if args.dot:
        Path(args.dot).write_text(export_dot(tree, placement))
    return EXIT_OK


def _cmd_check(args) -> int:
    tree, costs = _load_feeder(args.feeder)
    placement = placement_from_doc(json.loads(Path(args.placement).read_text()), tree)
    report = check_constraints(tree, placement)
    print(report.describe())
    return EXIT_OK if report.ok else EXIT_INFEASIBLE


def _cmd_identifiable(args) -> int:
    tree, costs = _load_feeder(args.feeder)
    placement = placement_from_doc(json.loads(Path(args.placement).read_text()), tree)
    mode = "worst_case" if args.mode == "worst-case" else "generic"
    max_outages = None if args.unlimited else args.max_outages
    try:
        verdict, pair = is_outage_identifiable(
            tree, placement, mode=mode, max_outages=max_outages,
            cap=args.cap, pair_cap=args.pair_budget,
        )
    except CombinatorialLimit as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    if verdict:
        print(f"identifiable ({args.mode}, max outages "
              f"{'unlimited' if max_outages is None else max_outages})")
        return EXIT_OK
    report = witness_report(tree, placement, pair, mode)
    text = json.dumps(report, indent=2) + "\n"
    if args.witness:
        Path(args.witness).write_text(text)
        print(f"not identifiable; witness written to {args.witness}")
    else:
        print("not identifiable; witness pair:")
        sys.stdout.write(text)
    return EXIT_NOT_IDENTIFIABLE


def _cmd_oracle(args) -> int:
    instances = []
    if args.feeder:
        tree, costs = _load_feeder(args.feeder)
        costs = _apply_cost_overrides(tree, costs, args)
        instances.append((args.feeder, tree, costs))
    else:
        if args.random and args.max_nodes < args.min_nodes:
            print("--max-nodes must be >= --min-nodes", file=sys.stderr)
            return EXIT_USAGE
        for i in range(args.random):
            n = args.min_nodes + (i % (args.max_nodes - args.min_nodes + 1))
            tree = random_radial_tree(
                n, seed=args.seed + i, max_children=3, z_fraction=args.z_fraction
            )
            costs = CostModel.uniform(
                tree,
                parse_cost(args.node_cost if args.node_cost is not None else 2),
                parse_cost(args.line_cost if args.line_cost is not None else 1),
            )
            instances.append((f"random-{args.seed + i}-n{n}", tree, costs))
    if not instances:
        print("nothing to compare; give a feeder or --random COUNT", file=sys.stderr)
        return EXIT_USAGE

    gaps = 0
    for name, tree, costs in instances:
        try:
            brute, brute_cost = exhaustive_min_cost(tree, costs, node_cap=args.cap)
        except InstanceTooLarge as exc:
            print(f"{name}\tSKIP\t{exc}")
            return EXIT_CAP
        placement, _ = dp_place(tree, costs)
        cost = placement_cost(placement, costs)
        gap = cost - brute_cost
        print(f"{name}\tdp={format_cost(cost)}\tbrute={format_cost(brute_cost)}"
              f"\tgap={format_cost(gap)}")
        if gap != 0:
            gaps += 1
            finding = {
                "feeder": name,
                "document": json.loads(serialize_feeder(tree, costs, name=name)),
                "dp_placement": placement_to_doc(placement),
                "dp_cost": format_cost(cost),
                "optimal_placement": placement_to_doc(brute),
                "optimal_cost": format_cost(brute_cost),
            }
            sys.stdout.write(json.dumps(finding, indent=2) + "\n")
    print(f"instances={len(instances)} gaps={gaps}")
    return EXIT_ORACLE_GAP if gaps else EXIT_OK


def _cmd_bench(args) -> int:
    instances = []
    for ref in args.feeders:
        tree, costs = _load_feeder(ref)
        instances.append((ref, tree, _apply_cost_overrides(tree, costs, args)))
    records = bench_suite(instances, repeats=args.repeats)
    rows = [BenchRecord.HEADER] + [r.row() for r in records]
    _write_or_print("\n".join(rows) + "\n", args.output)
    return EXIT_OK


def _cmd_gen(args) -> int:
    tree = random_radial_tree(
        args.nodes, seed=args.seed, max_children=args.max_children, z_fraction=args.z_fraction
    )
    costs = CostModel.uniform(tree, parse_cost(args.node_cost), parse_cost(args.line_cost))
    text = serialize_feeder(tree, costs, name=f"random-{args.seed}-n{args.nodes}")
    _write_or_print(text, args.output)
    return EXIT_OK


def _cmd_export(args) -> int:
    tree, _ = _load_feeder(args.feeder)
    placement = None
    if args.placement:
        placement = placement_from_doc(json.loads(Path(args.placement).read_text()), tree)
    _write_or_print(export_dot(tree, placement), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feederplace",
        description="Minimum-cost sensor placement for outage identifiability "
        "on radial distribution feeders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_costs(p):
        p.add_argument("--node-cost", help="override every node-sensor cost")
        p.add_argument("--line-cost", help="override every line-sensor cost")

    p = sub.add_parser("place", help="compute a minimum-cost placement")
    p.add_argument("feeder", help="feeder file or bundled name")
    p.add_argument("-o", "--output", help="placement file (default: stdout)")
    p.add_argument("--trace", help="write the decision trace here")
    p.add_argument("--dot", help="write a DOT rendering here")
    add_costs(p)
    p.set_defaults(func=_cmd_place)

    p = sub.add_parser("check", help="check a placement against the constraints")
    p.add_argument("feeder")
    p.add_argument("placement")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("identifiable", help="verify outage identifiability")
    p.add_argument("feeder")
    p.add_argument("placement")
    p.add_argument("--mode", choices=("generic", "worst-case"), default="worst-case")
    p.add_argument("--max-outages", type=int, default=3)
    p.add_argument("--unlimited", action="store_true", help="no outage-count limit")
    p.add_argument("--cap", type=int, default=50_000, help="hypothesis count cap")
    p.add_argument("--pair-budget", type=int, default=20_000_000,
                   help="hypothesis-pair sweep budget")
    p.add_argument("--witness", help="write the witness report here")
    p.set_defaults(func=_cmd_identifiable)

    p = sub.add_parser("oracle", help="compare the placement against brute force")
    p.add_argument("feeder", nargs="?", help="feeder file or bundled name")
    p.add_argument("--random", type=int, default=0, help="number of random instances")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-nodes", type=int, default=5)
    p.add_argument("--max-nodes", type=int, default=10)
    p.add_argument("--z-fraction", type=float, default=0.0)
    p.add_argument("--cap", type=int, default=12, help="brute-force node cap")
    add_costs(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="time placements and tabulate results")
    p.add_argument("feeders", nargs="+")
    p.add_argument("--repeats", type=int, default=11)
    p.add_argument("-o", "--output")
    add_costs(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="generate a random feeder file")
    p.add_argument("-n", "--nodes", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-children", type=int, default=3)
    p.add_argument("--z-fraction", type=float, default=0.0)
    p.add_argument("--node-cost", default="2")
    p.add_argument("--line-cost", default="1")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("export", help="export a feeder (and placement) as DOT")
    p.add_argument("feeder")
    p.add_argument("--placement")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except CombinatorialLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FeederError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Bundled feeder corpus.

Three feeders ship with the package: a nine-node demonstration feeder and
single-phase radial renderings of the IEEE 37-node and 123-node test feeders
(see each file's ``notes`` field for exactly how the standard connectivity was
rendered).  The IEEE files mark no node zero-injection; their ``known_no_load``
field records which buses carry no spot load in the standard data so studies
can opt in to that assignment.
"""

import json
from importlib import resources

from .model import CostModel, RadialTree, parse_feeder

BUNDLED = ("demo9", "ieee37", "ieee123")


def bundled_text(name: str) -> str:
    if name not in BUNDLED:
        raise KeyError(f"no bundled feeder named {name!r}; have {BUNDLED}")
    return resources.files("feederplace.data").joinpath(f"{name}.json").read_text()


def load(name: str, no_load_as_zero_injection: bool = False) -> tuple[RadialTree, CostModel]:
    """Load a bundled feeder; optionally mark its known no-load buses
    zero-injection."""
    text = bundled_text(name)
    tree, costs = parse_feeder(text)
    if no_load_as_zero_injection:
        zset = known_no_load(name)
        tree = RadialTree.build(tree.root, tree.edges, zset)
    return tree, costs


def known_no_load(name: str) -> tuple[int, ...]:
    doc = json.loads(bundled_text(name))
    return tuple(doc.get("known_no_load", ()))


def demo9() -> tuple[RadialTree, CostModel]:
    return load("demo9")


def ieee37(no_load_as_zero_injection: bool = False) -> tuple[RadialTree, CostModel]:
    return load("ieee37", no_load_as_zero_injection)


def ieee123(no_load_as_zero_injection: bool = False) -> tuple[RadialTree, CostModel]:
    return load("ieee123", no_load_as_zero_injection)

import json
from typing import Iterable, List, Sequence

# Canonical, byte-deterministic text forms of every model. Each model
# dispatches to the matching method through its accept().

PASS = "PASS"
FAIL = "FAIL"


def format_set(members: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(members)) + "}"


def format_blocks(blocks: Iterable[Iterable[int]]) -> str:
    return "{" + ",".join(format_set(b) for b in blocks) + "}"


def format_rows(rows: Sequence[Sequence[int]]) -> List[str]:
    return [" ".join(str(v) for v in row) for row in rows]


def format_json(value) -> str:
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


class Printer():

    def print(self, obj) -> str:
        return obj.accept(self)

    def group(self, node) -> str:
        node = node.canonical()
        lines = []
        if node.name:
            lines.append(f"# {node.name}")
        lines.append(f"group {node.order}")
        lines += format_rows(node.table)
        return "\n".join(lines) + "\n"

    def subgroup(self, node) -> str:
        return format_set(node.members)

    def gset(self, node) -> str:
        node = node.canonical()
        lines = []
        if node.name:
            lines.append(f"# {node.name}")
        lines.append(f"gset {node.carrier_size} {node.group.order}")
        content = "\n".join(lines) + "\n"
        content += self.group(node.group)
        content += "\n".join(format_rows(node.action)) + "\n"
        return content

    def orbits(self, node) -> str:
        return format_blocks(node.blocks)

    def partition(self, node) -> str:
        return format_blocks(node.blocks())

    def relation(self, node) -> str:
        return "{" + ",".join(f"({a},{c})" for a, c in sorted(node.pairs)) + "}"

    def semigroup(self, node) -> str:
        lines = []
        if node.name:
            lines.append(f"# {node.name}")
        lines.append(f"semigroup {node.order}")
        lines += format_rows(node.table)
        if node.zero is not None:
            lines.append(f"zero {node.zero}")
        if node.roles is not None:
            lines.append("roles " + " ".join(role.tag() for role in node.roles))
        return "\n".join(lines) + "\n"

    def verdict(self, node) -> str:
        status = PASS if node.verdict else FAIL
        witness = "-" if node.witness is None else format_json(node.witness)
        return f"{node.claim_id}\t{node.instance_descriptor or '-'}\t{status}\t{witness}"

    def summary(self, node) -> str:
        lines = [self.verdict(report) for report in node.reports]
        lines.append("# summary")
        for claim, totals in node.totals.items():
            lines.append(f"claim {claim} run={totals.run} pass={totals.passed} fail={totals.failed}")
        block = {
            "claims": {c: t.model_dump() for c, t in node.totals.items()},
            "failed": len(node.failures),
            "run": len(node.reports),
            "status": PASS if node.passed else FAIL,
        }
        lines.append("summary " + format_json(block))
        return "\n".join(lines) + "\n"


def format_partition(node) -> str:
    return Printer().partition(node)

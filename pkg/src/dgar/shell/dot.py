"""Graphviz export of family trees and pencils.

Nodes are sorted by their construction sequence so the output is byte-stable.
"""

from __future__ import annotations

__all__ = ["family_tree_dot", "pencil_dot"]


def _fingerprint(module) -> str:
    dims = module.cohomology.dims
    return " ".join("%d:%d" % (p, k) for p, k in sorted(dims.items()))


def _node_id(prefix) -> str:
    return "C" if not prefix else "C_" + "".join(str(x) for x in prefix)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def family_tree_dot(members: dict, f_values: dict | None = None, name: str = "family") -> str:
    """DOT for the tree of prefixes of the given family members.

    ``members`` maps each alpha to its :class:`FamilyMember`; every prefix of
    every alpha becomes a node, edges carry the kind of construction step.
    """
    nodes: dict = {}
    for alpha, member in members.items():
        for k, module in enumerate(member.chain):
            nodes.setdefault(tuple(alpha[:k]), module)
    lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=box];"]
    for prefix in sorted(nodes, key=lambda p: (len(p), p)):
        module = nodes[prefix]
        fv = f_values.get(prefix) if f_values else module.rank
        label = "%s\\nf=%s\\nH*: %s" % (_node_id(prefix), fv, _fingerprint(module))
        lines.append("  %s [label=%s];" % (_node_id(prefix), _quote(label)))
    for prefix in sorted(nodes, key=lambda p: (len(p), p)):
        if not prefix:
            continue
        kind = "Second" if prefix[-1] else "First"
        lines.append("  %s -> %s [label=%s];" % (_node_id(prefix[:-1]), _node_id(prefix), _quote(kind)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def pencil_dot(root, pencils: dict, fmt=str, name: str = "pencil") -> str:
    """Root A with one leaf per projective point [l1:l2]."""
    lines = ["digraph %s {" % name, "  rankdir=BT;", "  node [shape=box];"]
    lines.append("  C [label=%s];" % _quote("C\\nf=%d\\nH*: %s" % (root.rank, _fingerprint(root))))
    for k, lam in enumerate(sorted(pencils)):
        module = pencils[lam]
        node = "P%d" % k
        point = "[%s:%s]" % (fmt(lam[0]), fmt(lam[1]))
        label = "C_lambda %s\\nf=%d\\nH*: %s" % (point, module.rank, _fingerprint(module))
        lines.append("  %s [label=%s];" % (node, _quote(label)))
        lines.append("  C -> %s [label=%s];" % (node, _quote("Second " + point)))
    lines.append("}")
    return "\n".join(lines) + "\n"

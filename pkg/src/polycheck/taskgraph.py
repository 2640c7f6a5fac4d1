"""Deduplicated task graph over the core subformulas of a run.

Structurally identical subformulas share one node, so the same primitive on
the same arguments is evaluated once per run.  Node ids are assigned in
post-order, hence every node's children have smaller ids and iterating nodes
in id order is a valid evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formulas import And, Atom, Box, Formula, Not, Or, Through, Top


@dataclass(frozen=True)
class TaskNode:
    kind: str
    children: tuple[int, ...]
    atom: str | None = None


@dataclass(frozen=True)
class TaskGraph:
    nodes: tuple[TaskNode, ...]
    save_roots: tuple[tuple[str, int], ...]
    formula_of: tuple[Formula, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def dependents(self) -> list[list[int]]:
        deps: list[list[int]] = [[] for _ in self.nodes]
        for nid, node in enumerate(self.nodes):
            for child in node.children:
                deps[child].append(nid)
        return deps


_KINDS = {Top: "top", Atom: "atom", Not: "not", And: "and", Or: "or",
          Box: "box", Through: "through"}


def build_task_graph(saves: list[tuple[str, Formula]]) -> TaskGraph:
    """Hash-cons the labelled formulas into one shared DAG."""
    nodes: list[TaskNode] = []
    formulas: list[Formula] = []
    index: dict[tuple, int] = {}

    def intern(formula: Formula) -> int:
        kind = _KINDS[type(formula)]
        if isinstance(formula, Atom):
            key = (kind, formula.name)
            child_ids: tuple[int, ...] = ()
        elif isinstance(formula, Top):
            key = (kind,)
            child_ids = ()
        else:
            if isinstance(formula, (Not, Box)):
                subs = (formula.operand,)
            elif isinstance(formula, Through):
                subs = (formula.via, formula.goal)
            else:
                subs = (formula.left, formula.right)
            child_ids = tuple(intern(s) for s in subs)
            key = (kind,) + child_ids
        nid = index.get(key)
        if nid is None:
            nid = len(nodes)
            index[key] = nid
            atom = formula.name if isinstance(formula, Atom) else None
            nodes.append(TaskNode(kind, child_ids, atom))
            formulas.append(formula)
        return nid

    roots = tuple((label, intern(f)) for label, f in saves)
    return TaskGraph(tuple(nodes), roots, tuple(formulas))

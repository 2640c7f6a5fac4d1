"""Global evaluation of formulas over a Kripke encoding.

Boolean connectives are bitset operations, the interior modality is a
neighbourhood subset test, and reachability is computed by flooding: start
from the via-cells that see a goal-cell, spread over the undirected face
relation restricted to via-cells, then take the faces of the flooded region.
Each distinct subformula is evaluated exactly once; independent nodes may run
on different workers and the outcome is identical for any worker count.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import LengthMismatchError, ModelTooLargeError, PolycheckError
from .formulas import print_formula
from .kripke import KripkeModel, SatSet, _gather, in_set, out_set
from .taskgraph import TaskGraph


def sat_box(model: KripkeModel, sat_operand: SatSet) -> SatSet:
    """Cells satisfying the operand all of whose cofaces also satisfy it."""
    model._check_len(sat_operand)
    violating = (~sat_operand.bits)[model.out_indices].astype(np.int64)
    csum = np.concatenate(([0], np.cumsum(violating)))
    per_cell = csum[model.out_indptr[1:]] - csum[model.out_indptr[:-1]]
    return SatSet(sat_operand.bits & (per_cell == 0))


def through_trace(
    model: KripkeModel, sat_via: SatSet, sat_goal: SatSet
) -> tuple[SatSet, SatSet, SatSet]:
    """Run the reachability flooding, returning (frontier, flooded, result).

    frontier: via-cells adjacent (reflexively) to a goal-cell, i.e. the
    next-to-last cells of a witnessing path.  flooded: every cell that can be
    in the middle of a witnessing path.  result: the faces of the flooded
    region, i.e. the cells where the reachability formula holds.
    """
    model._check_len(sat_via)
    model._check_len(sat_goal)
    frontier = sat_via & out_set(model, sat_goal, reflexive=True)
    flooded = frontier.bits.copy()
    via = sat_via.bits
    wave = frontier.ids()
    while wave.size:
        neighbors = np.concatenate(
            (
                _gather(model.out_indptr, model.out_indices, wave),
                _gather(model.in_indptr, model.in_indices, wave),
            )
        )
        fresh = neighbors[via[neighbors] & ~flooded[neighbors]]
        if fresh.size:
            fresh = np.unique(fresh)
            flooded[fresh] = True
        wave = fresh
    flooded_set = SatSet(flooded)
    result = in_set(model, flooded_set, reflexive=True)
    return frontier, flooded_set, result


def sat_through(model: KripkeModel, sat_via: SatSet, sat_goal: SatSet) -> SatSet:
    """Cells from which a path through via-cells reaches a goal-cell."""
    return through_trace(model, sat_via, sat_goal)[2]


def sat_through_paths(
    model: KripkeModel,
    sat_via: SatSet,
    sat_goal: SatSet,
    max_cells: int = 14,
) -> SatSet:
    """Brute-force reachability oracle for small models.

    Rebuilds the face relation from the vertex lists by pairwise subset tests
    and decides, per start cell, whether some path exists by depth-first
    search.  A path's middle cells form a walk over the undirected relation,
    so reachability over via-cells is exactly path existence.  Independent of
    the flooding implementation and of the stored adjacency arrays.
    """
    n = model.n
    if n > max_cells:
        raise ModelTooLargeError(f"{n} cells exceeds the oracle bound {max_cells}")
    if len(sat_via) != n or len(sat_goal) != n:
        raise LengthMismatchError("set length differs from cell count")
    cells = [set(pts) for pts in model.cell_table.cells]
    up = [
        [j for j in range(n) if i != j and cells[i] < cells[j]] for i in range(n)
    ]
    down = [
        [j for j in range(n) if i != j and cells[j] < cells[i]] for i in range(n)
    ]
    via = sat_via.bits
    goal = sat_goal.bits
    can_end = [
        goal[c] or any(goal[e] for e in down[c]) for c in range(n)
    ]
    hit = np.zeros(n, dtype=bool)
    for start in range(n):
        first = [c for c in [start] + up[start] if via[c]]
        seen = set(first)
        stack = list(first)
        found = False
        while stack and not found:
            c = stack.pop()
            if can_end[c]:
                found = True
                break
            for nb in up[c] + down[c]:
                if via[nb] and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        hit[start] = found
    return SatSet(hit)


@dataclass(frozen=True)
class NodeReport:
    status: str  # done | failed | cancelled
    millis: float
    error: str | None = None


@dataclass(frozen=True)
class CheckResults:
    """Satisfaction sets per saved label, plus per-node status and timing."""

    values: dict[str, SatSet]
    errors: dict[str, str]
    node_reports: tuple[NodeReport, ...] = field(repr=False)

    @property
    def ok(self) -> bool:
        return not self.errors

    def check_millis(self) -> float:
        return sum(r.millis for r in self.node_reports)


def run(model: KripkeModel, graph: TaskGraph, workers: int = 1) -> CheckResults:
    """Evaluate every task-graph node once, in parallel across workers.

    A node runs as soon as all of its children have values.  Node values
    depend only on child values, so the outcome is bit-identical for any
    worker count and any scheduling.  A failing node marks its dependents
    cancelled; unrelated nodes still complete.
    """
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    n = len(graph.nodes)
    dependents = graph.dependents()
    pending = [len(set(node.children)) for node in graph.nodes]
    values: list[SatSet | None] = [None] * n
    reports: list[NodeReport | None] = [None] * n
    lock = threading.Lock()
    all_done = threading.Event()
    done_count = 0
    if n == 0:
        all_done.set()

    def evaluate(nid: int) -> SatSet:
        node = graph.nodes[nid]
        kids = [values[c] for c in node.children]
        if node.kind == "top":
            return SatSet.full(model.n)
        if node.kind == "atom":
            return model.atom_set(node.atom)
        if node.kind == "not":
            return ~kids[0]
        if node.kind == "and":
            return kids[0] & kids[1]
        if node.kind == "or":
            return kids[0] | kids[1]
        if node.kind == "box":
            return sat_box(model, kids[0])
        if node.kind == "through":
            return sat_through(model, kids[0], kids[1])
        raise PolycheckError(f"unknown task kind {node.kind!r}")

    def finish(pool, nid: int, report: NodeReport, value: SatSet | None):
        nonlocal done_count
        ready: list[int] = []
        cascade: list[int] = []
        with lock:
            if reports[nid] is not None:
                return
            values[nid] = value
            reports[nid] = report
            done_count += 1
            for dep in dependents[nid]:
                if reports[dep] is not None:
                    continue
                if report.status != "done":
                    cascade.append(dep)
                    continue
                pending[dep] -= 1
                if pending[dep] == 0:
                    ready.append(dep)
            if done_count == n:
                all_done.set()
        for dep in cascade:
            finish(
                pool,
                dep,
                NodeReport("cancelled", 0.0, f"dependency failed: {report.error}"),
                None,
            )
        for dep in ready:
            pool.submit(worker, dep)

    def worker(nid: int):
        start = time.perf_counter()
        try:
            value = evaluate(nid)
        except Exception as exc:  # noqa: BLE001 - reported per node
            millis = (time.perf_counter() - start) * 1000.0
            message = f"{exc} in {print_formula(graph.formula_of[nid])}"
            finish(pool, nid, NodeReport("failed", millis, message), None)
            return
        millis = (time.perf_counter() - start) * 1000.0
        finish(pool, nid, NodeReport("done", millis), value)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        initial = [nid for nid in range(n) if pending[nid] == 0]
        for nid in initial:
            pool.submit(worker, nid)
        all_done.wait()

    labelled: dict[str, SatSet] = {}
    errors: dict[str, str] = {}
    for label, root in graph.save_roots:
        report = reports[root]
        if report.status == "done":
            labelled[label] = values[root]
        else:
            errors[label] = report.error or report.status
    return CheckResults(labelled, errors, tuple(reports))

"""Deciding 101-colorability of orthogonality graphs.

A 101-assignment gives every ray a value in {0, 1} such that each orthogonal
triple carries values summing to 2 (one 0, two 1s) and no orthogonal pair
carries two 0s. This module provides the propagation closure of those rules,
a complete backtracking solver with optional symmetry reduction, a structural
verifier that replays the classical nineteen-ray refutation chain on the
Peres configuration, an exact minimum-violation solver for families of
triples, and a DIMACS CNF export for corroboration by external SAT solvers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactgeom import OrthGraph

ASSUMED = "assumed"
FORCED_PAIR = "forced-by-pair"
FORCED_TRIPLE = "forced-by-triple"


class SkeletonNotFound(ValueError):
    """Raised when a graph does not contain the nineteen-role refutation skeleton."""


@dataclass(frozen=True)
class LogEntry:
    """One assignment with its justification."""

    node: int
    value: int
    reason: str
    constraint: tuple[int, ...] | None = None

    def to_json_obj(self) -> dict:
        return {
            "node": self.node,
            "value": self.value,
            "reason": self.reason,
            "constraint": list(self.constraint) if self.constraint else None,
        }


@dataclass(frozen=True)
class Contradiction:
    """A clash between the 101 rules, with the log up to the clash."""

    constraint: tuple[int, ...]
    node: int
    attempted: int
    existing: int
    log: tuple[LogEntry, ...]

    def to_json_obj(self) -> dict:
        return {
            "constraint": list(self.constraint),
            "node": self.node,
            "attempted": self.attempted,
            "existing": self.existing,
        }


@dataclass(frozen=True)
class Coloring101:
    """A partial 0/1 assignment to graph nodes plus its derivation log."""

    assignment: dict[int, int] = field(default_factory=dict)
    log: tuple[LogEntry, ...] = ()

    def assign(self, node: int, value: int, reason: str = ASSUMED) -> Coloring101:
        """New coloring with one extra assignment appended."""
        if value not in (0, 1):
            raise ValueError(f"value must be 0 or 1, got {value!r}")
        if self.assignment.get(node, value) != value:
            raise ValueError(f"node {node} already has value {self.assignment[node]}")
        new = dict(self.assignment)
        new[node] = value
        return Coloring101(new, self.log + (LogEntry(node, value, reason),))


class _Constraints:
    """Constraint indexes shared by the propagation engine and the solvers."""

    __slots__ = ("n", "edges", "triples", "adjacency", "triples_by_node")

    def __init__(self, n: int, edges, triples):
        self.n = n
        self.edges = tuple(tuple(sorted(e)) for e in edges)
        self.triples = tuple(tuple(sorted(t)) for t in triples)
        self.adjacency: list[set[int]] = [set() for _ in range(n)]
        for i, j in self.edges:
            self.adjacency[i].add(j)
            self.adjacency[j].add(i)
        self.triples_by_node: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for t in self.triples:
            for node in t:
                self.triples_by_node[node].append(t)

    @classmethod
    def from_graph(cls, g: OrthGraph) -> _Constraints:
        return cls(g.n, g.edges, g.triples)

    @classmethod
    def from_triples(cls, n: int, triples) -> _Constraints:
        edges = set()
        for t in triples:
            a, b, c = sorted(t)
            edges.update({(a, b), (a, c), (b, c)})
        return cls(n, sorted(edges), triples)


class _State:
    """Mutable solver state: values, trail, and a propagation worklist."""

    __slots__ = ("cons", "values", "log", "queue", "propagations")

    def __init__(self, cons: _Constraints):
        self.cons = cons
        self.values: list[int | None] = [None] * cons.n
        self.log: list[LogEntry] = []
        self.queue: list[int] = []
        self.propagations = 0

    def mark(self) -> int:
        return len(self.log)

    def undo(self, mark: int) -> None:
        while len(self.log) > mark:
            entry = self.log.pop()
            self.values[entry.node] = None
        self.queue.clear()

    def set(self, node: int, value: int, reason: str, constraint=None) -> Contradiction | None:
        existing = self.values[node]
        if existing is not None:
            if existing != value:
                return Contradiction(
                    constraint=tuple(constraint) if constraint else (node,),
                    node=node,
                    attempted=value,
                    existing=existing,
                    log=tuple(self.log),
                )
            return None
        self.values[node] = value
        self.log.append(LogEntry(node, value, reason, tuple(constraint) if constraint else None))
        self.queue.append(node)
        if reason != ASSUMED:
            self.propagations += 1
        return None

    def propagate(self, rng: random.Random | None = None) -> Contradiction | None:
        """Run the closure rules to a fixed point.

        Rules: a 0 forces every orthogonal neighbour to 1; two 1s in a triple
        force the third member to 0. (A 0 inside a triple forcing the other
        two members to 1 is the neighbour rule, since triple members are
        pairwise adjacent.) The closure is confluent, so the optional rng,
        which randomizes the processing order, must not change the fixed
        point; it exists so tests can check exactly that.
        """
        while self.queue:
            idx = rng.randrange(len(self.queue)) if rng is not None else 0
            node = self.queue.pop(idx)
            value = self.values[node]
            if value == 0:
                for m in self.cons.adjacency[node]:
                    conflict = self.set(m, 1, FORCED_PAIR, (node, m))
                    if conflict:
                        return conflict
            for t in self.cons.triples_by_node[node]:
                vals = [self.values[k] for k in t]
                ones = vals.count(1)
                if ones == 2 and vals.count(None) == 1:
                    third = t[vals.index(None)]
                    conflict = self.set(third, 0, FORCED_TRIPLE, t)
                    if conflict:
                        return conflict
                elif ones == 3:
                    return Contradiction(
                        constraint=t,
                        node=node,
                        attempted=value,  # three 1s: no member may be 0
                        existing=1,
                        log=tuple(self.log),
                    )
        return None


def propagate(
    coloring: Coloring101, g: OrthGraph, rng: random.Random | None = None
) -> Coloring101 | Contradiction:
    """Fixed point of the 101 rules over a partial coloring.

    Returns the extended Coloring101, or a Contradiction naming the clashing
    constraint when the rules collide. Every forced assignment is appended to
    the log with its reason and forcing constraint.
    """
    cons = _Constraints.from_graph(g)
    state = _State(cons)
    for entry in coloring.log:
        if not 0 <= entry.node < cons.n:
            raise ValueError(f"node {entry.node} outside graph of size {cons.n}")
        conflict = state.set(entry.node, entry.value, entry.reason, entry.constraint)
        if conflict:
            return conflict
    for node, value in coloring.assignment.items():
        if not 0 <= node < cons.n:
            raise ValueError(f"node {node} outside graph of size {cons.n}")
        if state.values[node] is None:
            conflict = state.set(node, value, ASSUMED)
            if conflict:  # pragma: no cover - set on fresh node cannot clash
                return conflict
    conflict = state.propagate(rng)
    if conflict:
        return conflict
    assignment = {i: v for i, v in enumerate(state.values) if v is not None}
    return Coloring101(assignment, tuple(state.log))


def validate_101(assignment: dict[int, int], g: OrthGraph) -> list[tuple[int, ...]]:
    """Independent rule check: returns the violated constraints of a total assignment.

    Deliberately free of any solver machinery so it can vouch for witnesses.
    """
    violated: list[tuple[int, ...]] = []
    for i, j in g.edges:
        if assignment.get(i) == 0 and assignment.get(j) == 0:
            violated.append((i, j))
    for t in g.triples:
        if sum(assignment.get(k, 0) for k in t) != 2 or any(assignment.get(k) is None for k in t):
            violated.append(t)
    return violated


@dataclass(frozen=True)
class TraceNode:
    """One node of a refutation decision tree."""

    decision: tuple[int, int] | None
    sym_pins: tuple[int, ...]
    log: tuple[LogEntry, ...]
    contradiction: Contradiction | None
    branch_node: int | None
    children: tuple[TraceNode, ...]

    def count(self) -> int:
        return 1 + sum(c.count() for c in self.children)

    def to_json_obj(self) -> dict:
        obj: dict = {}
        if self.decision is not None:
            obj["decision"] = {"node": self.decision[0], "value": self.decision[1]}
        if self.sym_pins:
            obj["symmetry_pins"] = list(self.sym_pins)
        obj["log"] = [e.to_json_obj() for e in self.log]
        if self.contradiction is not None:
            obj["contradiction"] = self.contradiction.to_json_obj()
        if self.children:
            obj["branch_node"] = self.branch_node
            obj["children"] = [c.to_json_obj() for c in self.children]
        return obj


@dataclass(frozen=True)
class SearchResult:
    verdict: str  # "SAT" | "UNSAT"
    witness: dict[int, int] | None
    refutation: TraceNode | None
    stats: dict[str, int]

    def to_json_obj(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "refutation": self.refutation.to_json_obj() if self.refutation else None,
            "stats": dict(self.stats),
        }


def _pick_branch_node(state: _State) -> int | None:
    """Unassigned node with the most assigned neighbours, ties by lowest index."""
    best, best_score = None, -1
    for node in range(state.cons.n):
        if state.values[node] is not None:
            continue
        score = sum(1 for m in state.cons.adjacency[node] if state.values[m] is not None)
        if score > best_score:
            best, best_score = node, score
    return best


def _solve(state: _State, stats: dict[str, int]) -> tuple[dict[int, int] | None, TraceNode | None]:
    """Complete DFS from an already-propagated consistent state.

    Returns (witness, None) when satisfiable below this point, otherwise
    (None, refutation subtree proving exhaustion).
    """
    node = _pick_branch_node(state)
    if node is None:
        witness = {i: v for i, v in enumerate(state.values)}
        return witness, None

    children = []
    for value in (0, 1):
        stats["nodes_explored"] += 1
        mark = state.mark()
        log_start = len(state.log)
        state.set(node, value, ASSUMED)
        conflict = state.propagate()
        if conflict is None:
            witness, refut = _solve(state, stats)
            if witness is not None:
                return witness, None
            children.append(
                TraceNode(
                    decision=(node, value),
                    sym_pins=(),
                    log=tuple(state.log[log_start:]),
                    contradiction=None,
                    branch_node=refut.branch_node,
                    children=refut.children,
                )
            )
        else:
            children.append(
                TraceNode(
                    decision=(node, value),
                    sym_pins=(),
                    log=tuple(state.log[log_start:]),
                    contradiction=conflict,
                    branch_node=None,
                    children=(),
                )
            )
        state.undo(mark)
        stats["propagations"] = state.propagations

    tree = TraceNode(
        decision=None,
        sym_pins=(),
        log=(),
        contradiction=None,
        branch_node=node,
        children=tuple(children),
    )
    return None, tree


def search_101(
    g: OrthGraph, symmetries: list[tuple[int, ...]] | None = None
) -> SearchResult:
    """Complete backtracking search for a 101-assignment.

    With a symmetry list (graph automorphisms closed under composition), the
    first decision is reduced to an orbit representative: once value 0 is
    refuted for the chosen node, every node in its orbit can be pinned to 1
    in the opposite branch, which is exactly the "without loss of
    generality" step of the classical hand proof.
    """
    return _search(_Constraints.from_graph(g), symmetries)


def _search(cons: _Constraints, symmetries=None) -> SearchResult:
    state = _State(cons)
    stats = {"nodes_explored": 0, "propagations": 0}

    # Unconstrained nodes never trigger a rule; value 1 by convention.
    for node in range(cons.n):
        if not cons.adjacency[node] and not cons.triples_by_node[node]:
            state.set(node, 1, ASSUMED)
    conflict = state.propagate()
    assert conflict is None
    base_log = tuple(state.log)

    if symmetries:
        node = _pick_branch_node(state)
        if node is not None:
            children = []
            # Branch A: representative node takes value 0.
            stats["nodes_explored"] += 1
            mark = state.mark()
            log_start = len(state.log)
            state.set(node, 0, ASSUMED)
            conflict = state.propagate()
            if conflict is None:
                witness, refut = _solve(state, stats)
                if witness is not None:
                    return _sat_result(witness, cons, stats)
                children.append(
                    TraceNode((node, 0), (), tuple(state.log[log_start:]), None,
                              refut.branch_node, refut.children)
                )
            else:
                children.append(
                    TraceNode((node, 0), (), tuple(state.log[log_start:]), conflict, None, ())
                )
            state.undo(mark)

            # Branch B: value 0 is refuted for the whole orbit, pin it to 1.
            pins = tuple(sorted({p[node] for p in symmetries} | {node}))
            stats["nodes_explored"] += 1
            mark = state.mark()
            log_start = len(state.log)
            conflict = None
            for u in pins:
                conflict = state.set(u, 1, ASSUMED)
                if conflict:
                    break
            if conflict is None:
                conflict = state.propagate()
            if conflict is None:
                witness, refut = _solve(state, stats)
                if witness is not None:
                    return _sat_result(witness, cons, stats)
                children.append(
                    TraceNode(None, pins, tuple(state.log[log_start:]), None,
                              refut.branch_node, refut.children)
                )
            else:
                children.append(
                    TraceNode(None, pins, tuple(state.log[log_start:]), conflict, None, ())
                )
            state.undo(mark)
            stats["propagations"] = state.propagations

            tree = TraceNode(None, (), base_log, None, node, tuple(children))
            return SearchResult("UNSAT", None, tree, stats)

    witness, refut = _solve(state, stats)
    if witness is not None:
        return _sat_result(witness, cons, stats)
    stats["propagations"] = state.propagations
    tree = TraceNode(None, (), base_log, None, refut.branch_node, refut.children)
    return SearchResult("UNSAT", None, tree, stats)


def _sat_result(witness: dict[int, int], cons: _Constraints, stats) -> SearchResult:
    bad = _violations_of(witness, cons)
    assert not bad, f"solver returned an invalid witness: {bad}"
    return SearchResult("SAT", witness, None, dict(stats))


def _violations_of(assignment: dict[int, int], cons: _Constraints) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for i, j in cons.edges:
        if assignment.get(i) == 0 and assignment.get(j) == 0:
            out.append((i, j))
    for t in cons.triples:
        if sum(assignment.get(k, 0) for k in t) != 2:
            out.append(t)
    return out


def replay_refutation(tree: TraceNode, g: OrthGraph) -> bool:
    """Independently replay a refutation tree: every branch must end in a clash.

    Checks that sibling decisions cover both values of the branch node (or
    are a value-0 branch plus an orbit pinned to 1), and that re-propagating
    each path's assumptions reproduces a contradiction exactly where the
    tree claims one.
    """
    cons = _Constraints.from_graph(g)

    def walk(node: TraceNode, assumed: list[tuple[int, int]]) -> bool:
        here = list(assumed)
        if node.decision is not None:
            here.append(node.decision)
        for pin in node.sym_pins:
            here.append((pin, 1))
        state = _State(cons)
        conflict = None
        for n, v in here:
            conflict = conflict or state.set(n, v, ASSUMED)
            if conflict is None:
                conflict = state.propagate()
            if conflict:
                break
        if node.contradiction is not None:
            return conflict is not None
        if conflict is not None:
            return False  # tree claims this branch continues, replay says clash
        if not node.children:
            return False  # open branch: not a refutation
        if node.branch_node is None:
            return False
        values = sorted(
            c.decision[1] for c in node.children if c.decision is not None and not c.sym_pins
        )
        covered = values == [0, 1] or (
            values == [0]
            and any(c.sym_pins and node.branch_node in c.sym_pins for c in node.children)
        )
        if not covered:
            return False
        return all(walk(c, here) for c in node.children)

    return walk(tree, [])


# ---------------------------------------------------------------------------
# Structural verification of the classical nineteen-role refutation chain.
# ---------------------------------------------------------------------------

_ROLES = (
    "X", "Y", "Z", "A", "A'", "B", "C", "B'", "C'",
    "D", "D'", "E", "E'", "F", "G", "F'", "G'", "U", "V",
)


@dataclass(frozen=True)
class ReportStep:
    role: str
    node: int
    value: int
    reason: str
    constraint: tuple[int, ...] | None

    def to_json_obj(self) -> dict:
        return {
            "role": self.role,
            "node": self.node,
            "value": self.value,
            "reason": self.reason,
            "constraint": list(self.constraint) if self.constraint else None,
        }


@dataclass(frozen=True)
class RefutationReport:
    """The nineteen-role forcing chain, ending in two 0s on an orthogonal pair."""

    skeleton: dict[str, int]
    steps: tuple[ReportStep, ...]
    final_edge: tuple[int, int]
    ray_names: dict[int, str]

    def to_json_obj(self) -> dict:
        return {
            "skeleton": dict(self.skeleton),
            "steps": [s.to_json_obj() for s in self.steps],
            "final_edge": list(self.final_edge),
        }

    def to_text(self) -> str:
        lines = ["refutation chain (roles -> rays):"]
        for role in _ROLES:
            node = self.skeleton[role]
            lines.append(f"  {role:3s} = ray {node} {self.ray_names[node]}")
        lines.append("derivation:")
        for s in self.steps:
            via = f" via {s.constraint}" if s.constraint else ""
            lines.append(f"  {s.role:3s} (ray {s.node}) -> {s.value}  [{s.reason}{via}]")
        u, v = self.final_edge
        lines.append(
            f"contradiction: rays {u} and {v} are orthogonal but both carry 0."
        )
        return "\n".join(lines) + "\n"


def _table_steps(m: dict[str, int]) -> list[ReportStep]:
    """The forcing chain of the hand proof, instantiated on a skeleton match."""

    def s(role, value, reason, cons_roles=None):
        cons = tuple(m[r] for r in cons_roles) if cons_roles else None
        return ReportStep(role, m[role], value, reason, cons)

    return [
        s("X", 0, ASSUMED),
        s("Y", 1, FORCED_PAIR, ("X", "Y")),
        s("Z", 1, FORCED_PAIR, ("X", "Z")),
        s("A", 1, FORCED_PAIR, ("X", "A")),
        s("A'", 1, FORCED_PAIR, ("X", "A'")),
        s("C", 0, ASSUMED),
        s("B", 1, FORCED_PAIR, ("C", "B")),
        s("D", 1, FORCED_PAIR, ("C", "D")),
        s("E", 0, FORCED_TRIPLE, ("Z", "D", "E")),
        s("F", 1, FORCED_PAIR, ("E", "F")),
        s("G", 1, FORCED_PAIR, ("E", "G")),
        s("C'", 0, ASSUMED),
        s("B'", 1, FORCED_PAIR, ("C'", "B'")),
        s("D'", 1, FORCED_PAIR, ("C'", "D'")),
        s("E'", 0, FORCED_TRIPLE, ("Z", "D'", "E'")),
        s("F'", 1, FORCED_PAIR, ("E'", "F'")),
        s("G'", 1, FORCED_PAIR, ("E'", "G'")),
        s("U", 0, FORCED_TRIPLE, ("F", "F'", "U")),
        s("V", 0, FORCED_TRIPLE, ("G", "G'", "V")),
    ]


def _check_chain_rules(steps: list[ReportStep], edges: set, triples: set) -> bool:
    """Each forced step must be justified by its cited constraint and premises."""
    values: dict[int, int] = {}
    for step in steps:
        if step.node in values:
            return False
        if step.reason == FORCED_PAIR:
            pair = tuple(sorted(step.constraint))
            if pair not in edges or step.value != 1:
                return False
            other = step.constraint[0] if step.constraint[1] == step.node else step.constraint[1]
            if values.get(other) != 0:
                return False
        elif step.reason == FORCED_TRIPLE:
            if tuple(sorted(step.constraint)) not in triples or step.value != 0:
                return False
            others = [k for k in step.constraint if k != step.node]
            if len(others) != 2 or any(values.get(o) != 1 for o in others):
                return False
        values[step.node] = step.value
    return True


def replay_report(report: RefutationReport, g: OrthGraph) -> bool:
    """Cross-check a report: rule-check the chain, then re-derive it by propagation.

    The eager propagation closure is run stage by stage, seeding only the
    report's assumed values; every value the report derives must agree with
    the closure, and the final stage must clash.
    """
    edges = set(g.edges)
    triples = set(g.triples)
    if not _check_chain_rules(list(report.steps), edges, triples):
        return False
    u, v = sorted(report.final_edge)
    if (u, v) not in edges:
        return False

    cons = _Constraints.from_graph(g)
    state = _State(cons)
    seen: dict[int, int] = {}
    for step in report.steps:
        if step.reason == ASSUMED:
            conflict = state.set(step.node, step.value, ASSUMED)
            if conflict is None:
                conflict = state.propagate()
            is_last_assumption = step.role == "C'"
            if conflict is not None and not is_last_assumption:
                return False
            if is_last_assumption and conflict is None:
                return False
        seen[step.node] = step.value
    # Values the closure derived must match the chain wherever both assign.
    for node, value in seen.items():
        if state.values[node] is not None and state.values[node] != value:
            return False
    return True


def verify_lemma_trace(g: OrthGraph) -> RefutationReport:
    """Find the nineteen-role sub-configuration and replay its forcing chain.

    The skeleton is matched structurally (the first match in deterministic
    order is returned) and must replay cleanly: the two wlog assumptions stay
    free until assumed, the closure reproduces the chain's values, and the
    final pair of 0s lands on an orthogonal pair. Raises SkeletonNotFound if
    no sub-configuration supports the chain.
    """
    edges = set(g.edges)
    triples_sorted = sorted(set(g.triples))
    adj = g.adjacency

    def triples_with(*nodes: int) -> list[tuple[int, int, int]]:
        req = set(nodes)
        return [t for t in triples_sorted if req <= set(t)]

    for first in triples_sorted:
        for X, Z in ((a, b) for a in first for b in first if a != b):
            Y = next(k for k in first if k not in (X, Z))
            for A in sorted(adj[X] - {Y, Z}):
                for Ap in sorted(adj[X] - {Y, Z, A}):
                    m = {"X": X, "Y": Y, "Z": Z, "A": A, "A'": Ap}
                    report = _extend_match(m, g, edges, triples_with)
                    if report is not None:
                        return report
    raise SkeletonNotFound(
        f"no nineteen-role refutation skeleton in {g.rayset.label or 'graph'}"
    )


def _extend_match(m: dict[str, int], g: OrthGraph, edges, triples_with):
    used = set(m.values())
    if len(used) != len(m):
        return None
    adj = g.adjacency

    def chain(side: str):
        """Candidate (B,C,D,E,F,G) tuples for one side, A or A'."""
        a_node = m["A" + side]
        z = m["Z"]
        for t in triples_with(a_node):
            rest = [k for k in t if k != a_node]
            for B, C in (rest, rest[::-1]):
                for D in sorted(adj[C]):
                    for tz in triples_with(z, D):
                        E = next(k for k in tz if k not in (z, D))
                        for F in sorted(adj[E]):
                            for G in sorted(adj[E] - {F}):
                                yield (B, C, D, E, F, G)

    for B, C, D, E, F, G in chain(""):
        group1 = {"B": B, "C": C, "D": D, "E": E, "F": F, "G": G}
        if len(set(group1.values()) | used) != len(used) + 6:
            continue
        used1 = used | set(group1.values())
        for Bp, Cp, Dp, Ep, Fp, Gp in chain("'"):
            group2 = {"B'": Bp, "C'": Cp, "D'": Dp, "E'": Ep, "F'": Fp, "G'": Gp}
            if len(set(group2.values()) | used1) != len(used1) + 6:
                continue
            used2 = used1 | set(group2.values())
            for tu in triples_with(F, Fp):
                U = next(k for k in tu if k not in (F, Fp))
                if U in used2:
                    continue
                for tv in triples_with(G, Gp):
                    V = next(k for k in tv if k not in (G, Gp))
                    if V in used2 or V == U:
                        continue
                    if tuple(sorted((U, V))) not in edges:
                        continue
                    full = dict(m)
                    full.update(group1)
                    full.update(group2)
                    full.update({"U": U, "V": V})
                    steps = _table_steps(full)
                    report = RefutationReport(
                        skeleton=full,
                        steps=tuple(steps),
                        final_edge=(U, V),
                        ray_names={i: str(r) for i, r in enumerate(g.rayset)},
                    )
                    if replay_report(report, g):
                        return report
    return None


# ---------------------------------------------------------------------------
# Exact minimum number of violated triples over total assignments.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ViolationCount:
    """Exact minimum of violated triples, with an argmin witness."""

    triples: tuple[tuple[int, int, int], ...]
    minimum: int
    witness: tuple[int, ...]

    def to_json_obj(self) -> dict:
        return {
            "minimum": self.minimum,
            "witness": list(self.witness),
            "n_triples": len(self.triples),
        }


def naive_violations(assignment, triples) -> list[tuple[int, int, int]]:
    """Triples whose three values do not sum to 2. No solver machinery."""
    return [t for t in triples if assignment[t[0]] + assignment[t[1]] + assignment[t[2]] != 2]


def min_violations(n_nodes: int, triples) -> ViolationCount:
    """Exact minimum, over all 2^n total assignments, of violated triples.

    A triple is violated iff its values do not sum to 2 (two 0s on a pair
    inside a triple are subsumed: they force a sum other than 2). Solved by
    deepening over candidate violated subsets: for k = 0, 1, ... every
    k-subset of triples is dropped and the rest solved as hard constraints
    by the propagation-backed complete search, so the first satisfiable k is
    the exact minimum. The witness re-counts to exactly k by construction.
    """
    from itertools import combinations

    triples = tuple(tuple(sorted(t)) for t in triples)
    for k in range(len(triples) + 1):
        for dropped in combinations(range(len(triples)), k):
            active = [t for i, t in enumerate(triples) if i not in dropped]
            cons = _Constraints.from_triples(n_nodes, active)
            result = _search(cons)
            if result.verdict == "SAT":
                witness = tuple(result.witness.get(i, 1) for i in range(n_nodes))
                violated = naive_violations(witness, triples)
                assert len(violated) == k
                return ViolationCount(triples=triples, minimum=k, witness=witness)
    raise AssertionError("unreachable: dropping every triple is satisfiable")


def brute_force_min_violations(n_nodes: int, triples) -> int:
    """Exhaustive 2^n reference for small systems (independent of the solver)."""
    import numpy as np

    assert n_nodes <= 22, "exhaustive reference limited to small systems"
    assignments = np.arange(1 << n_nodes, dtype=np.int64)
    bits = (assignments[:, None] >> np.arange(n_nodes)) & 1
    counts = np.zeros(len(assignments), dtype=np.int64)
    for a, b, c in triples:
        counts += (bits[:, a] + bits[:, b] + bits[:, c]) != 2
    return int(counts.min())


def brute_force_101(n_nodes: int, edges, triples) -> bool:
    """Exhaustive 2^n satisfiability reference for the full 101 rules."""
    import numpy as np

    assert n_nodes <= 22, "exhaustive reference limited to small systems"
    assignments = np.arange(1 << n_nodes, dtype=np.int64)
    bits = (assignments[:, None] >> np.arange(n_nodes)) & 1
    ok = np.ones(len(assignments), dtype=bool)
    for i, j in edges:
        ok &= (bits[:, i] + bits[:, j]) > 0
    for a, b, c in triples:
        ok &= (bits[:, a] + bits[:, b] + bits[:, c]) == 2
    return bool(ok.any())


# ---------------------------------------------------------------------------
# DIMACS export.
# ---------------------------------------------------------------------------

def export_cnf(g: OrthGraph) -> str:
    """DIMACS CNF whose models are exactly the 101-assignments of the graph.

    Variable i+1 stands for node i; a positive literal asserts value 0 and a
    negative literal value 1. Each triple contributes an at-least-one-zero
    clause plus three pairwise at-most-one-zero clauses; each lone pair
    contributes its no-two-zeros clause (pairs inside triples are already
    covered by the at-most-one clauses).
    """
    lines = [
        f"c 101-function constraints for ray set {g.rayset.label or '(unlabeled)'}",
        "c variable v <-> node v-1; positive literal: node takes value 0",
    ]
    for i, ray in enumerate(g.rayset):
        lines.append(f"c var {i + 1} <-> node {i}: {ray}")
    n_clauses = 4 * len(g.triples) + len(g.lone_pairs)
    lines.append(f"p cnf {g.n} {n_clauses}")
    for a, b, c in g.triples:
        lines.append(f"{a + 1} {b + 1} {c + 1} 0")
        lines.append(f"-{a + 1} -{b + 1} 0")
        lines.append(f"-{a + 1} -{c + 1} 0")
        lines.append(f"-{b + 1} -{c + 1} 0")
    for i, j in g.lone_pairs:
        lines.append(f"-{i + 1} -{j + 1} 0")
    return "\n".join(lines) + "\n"

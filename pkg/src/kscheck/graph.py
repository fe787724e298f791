"""KS hypergraphs, FUNC-constrained value assignments and certificates.

Vertices carry self-adjoint Pauli words; hyperedges are mutually commuting
subsets whose ordered product is a signed identity.  A value assignment
puts ±1 on every vertex; it is admissible when the values on every edge
multiply to that edge's sign.  The search is plain depth-first enumeration
with per-edge pruning, exhaustive over {+1, -1}^|V|.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import pauli
from .errors import CapExceededError, InvalidGraphError
from .pauli import PauliString

DEFAULT_SEARCH_CAP = 24

# A total assignment of ±1 values, aligned with the graph's vertex order.
ValueAssignment = tuple[int, ...]


@dataclass(frozen=True)
class KSGraph:
    """Labelled operators plus validated hyperedges and their signs."""

    vertices: tuple[tuple[str, PauliString], ...]
    hyperedges: tuple[tuple[int, ...], ...]
    edge_signs: tuple[int, ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.vertices)

    @property
    def operators(self) -> tuple[PauliString, ...]:
        return tuple(op for _, op in self.vertices)

    def edge_operators(self, edge_index: int) -> tuple[PauliString, ...]:
        return tuple(self.vertices[v][1] for v in self.hyperedges[edge_index])

    def edge_labels(self, edge_index: int) -> tuple[str, ...]:
        return tuple(self.vertices[v][0] for v in self.hyperedges[edge_index])

    def vertex_degree(self, vertex: int) -> int:
        return sum(1 for edge in self.hyperedges if vertex in edge)

    def index_of(self, label: str) -> int:
        for i, (name, _) in enumerate(self.vertices):
            if name == label:
                return i
        raise KeyError(label)


@dataclass(frozen=True)
class ParityCertificate:
    """UNSAT proof by squaring: every vertex has even edge-incidence, so
    the product of all edge constraints is identically +1, while the
    product of the edge signs is -1."""

    vertex_degrees: tuple[int, ...]
    sign_product: int

    def explanation(self) -> str:
        return (
            "every vertex lies on an even number of edges, so multiplying "
            "all edge constraints squares every value away and forces the "
            f"product of edge signs to be +1; it is {self.sign_product}"
        )


@dataclass(frozen=True)
class TheoremVerdict:
    satisfiable: bool
    witnesses: tuple[ValueAssignment, ...]
    certificate: ParityCertificate | None


def _maximal_cliques(adjacency: list[set[int]]) -> list[frozenset[int]]:
    """Bron-Kerbosch without pivoting; fine for the graphs in scope."""
    cliques: list[frozenset[int]] = []

    def extend(clique: set[int], candidates: set[int], excluded: set[int]):
        if not candidates and not excluded:
            cliques.append(frozenset(clique))
            return
        for v in sorted(candidates):
            extend(clique | {v}, candidates & adjacency[v], excluded & adjacency[v])
            candidates = candidates - {v}
            excluded = excluded | {v}

    extend(set(), set(range(len(adjacency))), set())
    return cliques


def derive_hyperedges(operators: Sequence[PauliString]) -> tuple[tuple[int, ...], ...]:
    """Maximal mutually commuting subsets that qualify as hyperedges.

    A clique qualifies only when it has at least two members and its
    ordered operator product is a signed identity (otherwise it cannot
    carry a FUNC product constraint).  Output is deterministic:
    each edge sorted by vertex index, edges sorted lexicographically.
    """
    ops = list(operators)
    if len(ops) < 2:
        raise ValueError("need at least two operators")
    n = ops[0].n_qubits
    for op in ops[1:]:
        if op.n_qubits != n:
            raise ValueError("operators must act on the same number of qubits")
    adjacency = [
        {j for j in range(len(ops)) if j != i and ops[i].commutes(ops[j])}
        for i in range(len(ops))
    ]
    edges = []
    for clique in _maximal_cliques(adjacency):
        if len(clique) < 2:
            continue
        members = tuple(sorted(clique))
        try:
            pauli.edge_product([ops[v] for v in members])
        except ValueError:
            continue
        edges.append(members)
    return tuple(sorted(edges))


def build_graph(
    vertices: Iterable[tuple[str, PauliString | str]],
    hyperedges: Iterable[Iterable[int]] | None = None,
) -> KSGraph:
    """Validate and assemble a KSGraph.

    When ``hyperedges`` is omitted they are derived as the maximal
    commuting subsets with signed-identity products.  Declared edges may
    be any subset of those (figures often fix specific edges); each is
    checked individually for commutation and a ±identity product.
    """
    parsed: list[tuple[str, PauliString]] = []
    for label, op in vertices:
        if isinstance(op, str):
            op = PauliString.parse(op)
        parsed.append((label, op))
    if not parsed:
        raise InvalidGraphError("graph needs at least one vertex")
    labels = [label for label, _ in parsed]
    if len(set(labels)) != len(labels):
        raise InvalidGraphError("vertex labels must be distinct")
    n = parsed[0][1].n_qubits
    for label, op in parsed:
        if op.n_qubits != n:
            raise InvalidGraphError(f"vertex {label}: expected {n} qubits")
        if not op.is_hermitian:
            raise InvalidGraphError(f"vertex {label}: operator {op} is not hermitian")

    if hyperedges is None:
        try:
            edges = derive_hyperedges([op for _, op in parsed])
        except ValueError as exc:
            raise InvalidGraphError(str(exc)) from exc
    else:
        edges = []
        for raw in hyperedges:
            members = tuple(sorted(set(raw)))
            if len(members) < 2:
                raise InvalidGraphError(f"edge {raw!r} has fewer than two vertices")
            if members[0] < 0 or members[-1] >= len(parsed):
                raise InvalidGraphError(f"edge {raw!r} has out-of-range vertices")
            edges.append(members)
        edges = tuple(edges)

    signs = []
    for members in edges:
        ops = [parsed[v][1] for v in members]
        try:
            signs.append(pauli.edge_product(ops))
        except ValueError as exc:
            names = ", ".join(parsed[v][0] for v in members)
            raise InvalidGraphError(f"edge {{{names}}}: {exc}") from exc

    covered = {v for members in edges for v in members}
    isolated = [parsed[v][0] for v in range(len(parsed)) if v not in covered]
    if isolated:
        raise InvalidGraphError(f"isolated vertices: {', '.join(isolated)}")

    return KSGraph(tuple(parsed), tuple(edges), tuple(signs))


def admissible_tuples(graph: KSGraph, edge_index: int) -> tuple[tuple[int, ...], ...]:
    """All ±1 tuples on the edge whose product equals the edge sign.

    Ordered lexicographically with +1 before -1; always 2^(k-1) of them.
    """
    edge = graph.hyperedges[edge_index]
    sign = graph.edge_signs[edge_index]
    out = []
    for combo in product((1, -1), repeat=len(edge)):
        value = 1
        for x in combo:
            value *= x
        if value == sign:
            out.append(combo)
    return tuple(out)


def search_assignments(graph: KSGraph, cap: int = DEFAULT_SEARCH_CAP) -> TheoremVerdict:
    """Exhaust {+1, -1}^|V| and collect every FUNC-respecting assignment.

    Depth-first with per-edge pruning as soon as an edge is fully
    assigned; witnesses come out in lexicographic order (+1 before -1).
    """
    n = graph.n_vertices
    if n > cap:
        raise CapExceededError(f"{n} vertices exceeds the search cap of {cap}")

    completes_at: list[list[int]] = [[] for _ in range(n)]
    for e_idx, edge in enumerate(graph.hyperedges):
        completes_at[max(edge)].append(e_idx)

    values = [0] * n
    witnesses: list[ValueAssignment] = []

    def extend(v: int):
        if v == n:
            witnesses.append(tuple(values))
            return
        for val in (1, -1):
            values[v] = val
            ok = True
            for e_idx in completes_at[v]:
                prod = 1
                for u in graph.hyperedges[e_idx]:
                    prod *= values[u]
                if prod != graph.edge_signs[e_idx]:
                    ok = False
                    break
            if ok:
                extend(v + 1)
        values[v] = 0

    extend(0)
    return TheoremVerdict(
        satisfiable=bool(witnesses),
        witnesses=tuple(witnesses),
        certificate=parity_certificate(graph),
    )


def parity_certificate(graph: KSGraph) -> ParityCertificate | None:
    """The squaring-argument certificate, when it applies.

    Available iff every vertex lies on an even number of edges and the
    product of all edge signs is -1; any such graph is UNSAT.
    """
    degrees = tuple(graph.vertex_degree(v) for v in range(graph.n_vertices))
    if any(d % 2 for d in degrees):
        return None
    sign_product = 1
    for s in graph.edge_signs:
        sign_product *= s
    if sign_product != -1:
        return None
    return ParityCertificate(vertex_degrees=degrees, sign_product=sign_product)

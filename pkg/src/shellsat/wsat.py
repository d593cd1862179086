"""Weak K3-saturation machinery on graphs.

Graphs are complexes of dimension at most 1 (vertex set plus edge set).
A spanning subgraph G is weakly K3-saturated in a host F when the missing
host edges can be added one at a time, each completing a copy of K3; the
greedy fixed point (the K3-bootstrap closure) decides this because an
addable edge stays addable after other additions.  The engine is fixed to
the K3 pattern; certificates carry a pattern field for forward
compatibility.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .complexes import Complex, from_facets
from .errors import (
    ConnectivityError,
    ContainmentError,
    MalformedCertificateError,
    NotAFaceError,
    UnsupportedDimensionError,
)
from .outcomes import (
    Budget,
    BudgetExceeded,
    NotSaturated,
    OutOfBudget,
    as_budget,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class SaturationCertificate:
    """A start subgraph, an ordering of the missing host edges, and one
    3-vertex K3 witness per ordered edge."""

    start: Complex
    order: tuple[Edge, ...]
    witnesses: tuple[tuple[int, int, int], ...]
    pattern: str = field(default="K3", compare=False)


def _require_graph(K: Complex) -> None:
    if K.dim > 1:
        raise UnsupportedDimensionError(
            f"expected a graph (dimension <= 1), got dimension {K.dim}")


def _edge_set(K: Complex) -> set[Edge]:
    return {(u, v) for u, v in K.faces_of_dim(1)}


def _require_spanning(F: Complex, G: Complex) -> None:
    _require_graph(F)
    _require_graph(G)
    if F.labels != G.labels:
        raise ContainmentError("subgraph must span the host vertex set")
    if not _edge_set(G) <= _edge_set(F):
        raise ContainmentError("subgraph has edges outside the host")


def graph_complex(vertex_labels, edge_label_pairs) -> Complex:
    """Build a graph complex, keeping edgeless vertices as 0-facets."""
    facets: list[tuple[str, ...]] = [tuple(e) for e in edge_label_pairs]
    covered = {lab for e in facets for lab in e}
    facets.extend((lab,) for lab in vertex_labels if lab not in covered)
    return from_facets(facets)


def _subgraph(F: Complex, edges: set[Edge]) -> Complex:
    return graph_complex(F.labels, [F.label_face(e) for e in sorted(edges)])


def _closure_edges(n: int, host: set[Edge], start: set[Edge]) -> set[Edge]:
    """Greedy K3-bootstrap fixed point over raw edge sets."""
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u, v in start:
        adjacency[u].add(v)
        adjacency[v].add(u)
    current = set(start)
    remaining = sorted(host - current)
    progress = True
    while progress and remaining:
        progress = False
        rest = []
        for u, v in remaining:
            if adjacency[u] & adjacency[v]:
                current.add((u, v))
                adjacency[u].add(v)
                adjacency[v].add(u)
                progress = True
            else:
                rest.append((u, v))
        remaining = rest
    return current


def k3_closure(F: Complex, G: Complex) -> Complex:
    """Add host edges completing a K3 until none qualifies.

    The result does not depend on addition order: a witness for an addable
    edge persists when other edges are added.
    """
    _require_spanning(F, G)
    closed = _closure_edges(F.n_vertices, _edge_set(F), _edge_set(G))
    return _subgraph(F, closed)


def is_weakly_saturated(F: Complex, G: Complex) -> bool:
    """True iff the K3-bootstrap closure of G inside F is all of F."""
    _require_spanning(F, G)
    return _closure_edges(F.n_vertices, _edge_set(F), _edge_set(G)) == _edge_set(F)


def extract_saturation_order(F: Complex, G: Complex):
    """Greedy saturating order with recorded witnesses.

    At every step the lexicographically least addable edge is taken and
    witnessed by its least common neighbour.  Returns ``NotSaturated()``
    when the closure falls short of the host.
    """
    _require_spanning(F, G)
    n = F.n_vertices
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u, v in _edge_set(G):
        adjacency[u].add(v)
        adjacency[v].add(u)
    remaining = sorted(_edge_set(F) - _edge_set(G))
    order: list[Edge] = []
    witnesses: list[tuple[int, int, int]] = []
    while remaining:
        chosen = None
        for u, v in remaining:
            common = adjacency[u] & adjacency[v]
            if common:
                chosen = (u, v)
                w = min(common)
                break
        if chosen is None:
            return NotSaturated()
        remaining.remove(chosen)
        order.append(chosen)
        witnesses.append(tuple(sorted((*chosen, w))))
        adjacency[chosen[0]].add(chosen[1])
        adjacency[chosen[1]].add(chosen[0])
    return SaturationCertificate(G, tuple(order), tuple(witnesses))


def saturation_violation(F: Complex, cert: SaturationCertificate) -> str | None:
    """Replay the certificate; return a description of the first failure.

    Raises MalformedCertificateError when the start graph does not span the
    host, the order is not exactly the missing host edges, or the arity of
    an entry is broken; a wrong witness merely invalidates the certificate.
    """
    try:
        _require_spanning(F, cert.start)
    except ContainmentError as exc:
        raise MalformedCertificateError(str(exc)) from None
    missing = _edge_set(F) - _edge_set(cert.start)
    if sorted(cert.order) != sorted(missing) or len(cert.order) != len(missing):
        raise MalformedCertificateError(
            "certificate order is not exactly the missing host edges")
    if len(cert.witnesses) != len(cert.order):
        raise MalformedCertificateError(
            "certificate must carry one witness per ordered edge")
    for i, witness in enumerate(cert.witnesses):
        if len(set(witness)) != 3 or any(not 0 <= v < F.n_vertices for v in witness):
            raise MalformedCertificateError(
                f"witness {i} is not a 3-vertex set of the host")

    present = set(_edge_set(cert.start))
    for i, (edge, witness) in enumerate(zip(cert.order, cert.witnesses)):
        present.add(edge)
        if not set(edge) <= set(witness):
            return f"index {i}: witness {witness} does not contain edge {edge}"
        witness_edges = [tuple(sorted(p)) for p in combinations(witness, 2)]
        absent = [e for e in witness_edges if e not in present]
        if absent:
            return (f"index {i}: witness edge {absent[0]} is not present "
                    f"after adding edge {edge}")
    return None


def verify_saturation(F: Complex, cert: SaturationCertificate) -> bool:
    """True iff every ordered edge completes the K3 named by its witness."""
    return saturation_violation(F, cert) is None


def _spanning_connected(n: int, edges) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


def decide_wsat_eq_treesize(F: Complex, budget: int | Budget | None = None):
    """Decide whether some spanning tree of F is weakly K3-saturated in F.

    Equivalently, whether wsat(F, K3) = n - 1: a weakly K3-saturated
    subgraph of a connected host is necessarily connected and spanning
    (adding an eligible edge never merges components), so n - 1 edges is
    the floor and trees are the only candidates at that size.  Trees are
    enumerated by contraction/deletion in lexicographic edge order;
    closure failures are memoized by tree edge set.
    """
    _require_graph(F)
    if not F.is_connected():
        raise ConnectivityError("the host graph must be connected")
    budget = as_budget(budget)
    n = F.n_vertices
    host = _edge_set(F)
    if n == 1:
        return SaturationCertificate(F, (), ())

    edges_sorted = sorted(host)
    failed: set[frozenset[Edge]] = set()

    def tree_search(component: list[int], avail: list[Edge],
                    chosen: list[Edge]):
        budget.spend()
        comps = len(set(component))
        if comps == 1:
            key = frozenset(chosen)
            if key in failed:
                return None
            if _closure_edges(n, host, set(chosen)) == host:
                cert = extract_saturation_order(F, _subgraph(F, set(chosen)))
                assert isinstance(cert, SaturationCertificate)
                return cert
            failed.add(key)
            return None
        live = [(u, v) for u, v in avail if component[u] != component[v]]
        if not live:
            return None
        u, v = live[0]
        rest = live[1:]
        # Include branch: contract the edge.
        merged = [component[v] if c == component[u] else c for c in component]
        chosen.append((u, v))
        result = tree_search(merged, rest, chosen)
        chosen.pop()
        if result is not None:
            return result
        # Exclude branch, only when the remainder still connects everything.
        if _spanning_connected(n, chosen + rest):
            return tree_search(component, rest, chosen)
        return None

    try:
        result = tree_search(list(range(n)), edges_sorted, [])
    except OutOfBudget:
        return BudgetExceeded(stage="wsat-tree-search")
    if result is None:
        return NotSaturated()
    return result


def wsat_number(F: Complex, budget: int | Budget | None = None):
    """Minimum edge count of a weakly K3-saturated subgraph of F, exactly.

    Sizes are scanned upward from n - 1 (the spanning floor); feasibility
    is monotone in size, so the first feasible size is the answer.
    Candidates that are not connected and spanning are skipped, justified
    by the component-preservation argument above.
    """
    _require_graph(F)
    if not F.is_connected():
        raise ConnectivityError("the host graph must be connected")
    budget = as_budget(budget)
    n = F.n_vertices
    host = _edge_set(F)
    edges_sorted = sorted(host)
    try:
        for size in range(n - 1, len(edges_sorted) + 1):
            for subset in combinations(edges_sorted, size):
                if not _spanning_connected(n, subset):
                    continue
                budget.spend()
                if _closure_edges(n, host, set(subset)) == host:
                    return size
    except OutOfBudget:
        return BudgetExceeded(stage="wsat-number")
    raise AssertionError("the host itself is always weakly saturated")


# -- certificate file format ---------------------------------------------------

def format_saturation(F: Complex, cert: SaturationCertificate) -> str:
    """"# start:" edges, then one "e_i : J_i" line per ordered edge."""
    def edge_text(e: Edge) -> str:
        return " ".join(F.label_face(e))

    lines = [f"# saturation of {F.fingerprint}", f"# pattern: {cert.pattern}"]
    start = ", ".join(edge_text(e) for e in sorted(_edge_set(cert.start)))
    lines.append(f"# start: {start}".rstrip())
    for edge, witness in zip(cert.order, cert.witnesses):
        lines.append(f"{edge_text(edge)} : {' '.join(F.label_face(witness))}")
    return "\n".join(lines) + "\n"


def parse_saturation(text: str, F: Complex) -> SaturationCertificate:
    """Parse a saturation certificate against its host graph."""
    start_edges: list[Edge] = []
    order: list[Edge] = []
    witnesses: list[tuple[int, int, int]] = []
    pattern = "K3"
    saw_start = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("saturation of"):
                    claimed = body[len("saturation of"):].strip()
                    if claimed != F.fingerprint:
                        raise MalformedCertificateError(
                            f"certificate fingerprint {claimed} does not match "
                            f"host {F.fingerprint}")
                elif body.startswith("start:"):
                    saw_start = True
                    listing = body[len("start:"):].strip()
                    for part in filter(None, (p.strip() for p in listing.split(","))):
                        start_edges.append(F.face_from_labels(part.split()))
                elif body.startswith("pattern:"):
                    pattern = body[len("pattern:"):].strip()
                continue
            if ":" not in line:
                raise MalformedCertificateError(
                    f"line {lineno}: expected 'edge : witness', got {line!r}")
            left, right = line.split(":", 1)
            order.append(F.face_from_labels(left.split()))
            witnesses.append(F.face_from_labels(right.split()))
        except NotAFaceError as exc:
            raise MalformedCertificateError(f"line {lineno}: {exc}") from None
    if not saw_start:
        raise MalformedCertificateError("certificate must contain '# start:'")
    start = _subgraph(F, set(start_edges))
    return SaturationCertificate(start, tuple(order), tuple(witnesses),
                                 pattern=pattern)

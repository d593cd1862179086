"""Instance generation and independent brute-force oracles.

The generator produces pure connected 2-complexes three ways: seeded
random sampling, exhaustive enumeration up to isomorphism (canonical
labeling by the minimum lexicographic facet list over all vertex
permutations, feasible at up to 7 support vertices), and barycentric
subdivision of the enumerated stream.  The oracles re-decide shellability,
collapsibility and the weak saturation number by raw exhaustion and are
used only to cross-check the real deciders on small instances.
"""

import random
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

from .complexes import Complex, from_facets
from .errors import OracleBoundError, ParameterError
from .wsat import graph_complex

MODES = ("random-pure-2", "enumerate-all", "subdivide-depth-k")

ORACLE_MAX_FACETS = 6
ORACLE_MAX_FACES = 12
ORACLE_MAX_VERTICES = 6

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic instance-stream description: same spec, same stream."""

    seed: int
    n_vertices: int
    n_triangles: int
    mode: str
    depth: int = 1

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.n_vertices < 3:
            raise ParameterError("2-complexes need at least 3 vertices")
        if self.n_triangles < 1:
            raise ParameterError("need at least one triangle")
        cap = len(list(combinations(range(self.n_vertices), 3)))
        if self.n_triangles > cap:
            raise ParameterError(
                f"{self.n_triangles} triangles do not fit on "
                f"{self.n_vertices} vertices (max {cap})")
        if self.depth < 0:
            raise ParameterError("subdivision depth must be >= 0")


def _triangles_connected(triangles) -> bool:
    support = sorted({v for t in triangles for v in t})
    index = {v: i for i, v in enumerate(support)}
    parent = list(range(len(support)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in triangles:
        for u, v in ((a, b), (b, c)):
            ru, rv = find(index[u]), find(index[v])
            if ru != rv:
                parent[ru] = rv
    return len({find(i) for i in range(len(support))}) == 1


def complex_from_triangles(triangles) -> Complex:
    """Build a pure 2-complex from id triangles, labelling vertex i as 'vi'."""
    return from_facets([tuple(f"v{v}" for v in t) for t in triangles])


def canonical_triangles(triangles) -> tuple[Triangle, ...]:
    """Canonical form: relabel the support densely, then take the minimum
    lexicographic sorted facet list over all support permutations."""
    support = sorted({v for t in triangles for v in t})
    index = {v: i for i, v in enumerate(support)}
    dense = [tuple(sorted(index[v] for v in t)) for t in triangles]
    best = None
    for perm in permutations(range(len(support))):
        mapped = tuple(sorted(tuple(sorted((perm[a], perm[b], perm[c])))
                              for a, b, c in dense))
        if best is None or mapped < best:
            best = mapped
    return best


def sample_pure2(rng: random.Random, n_vertices: int,
                 n_triangles: int) -> tuple[Complex, int]:
    """One uniform sample of distinct triangles, retried until connected.

    Returns the complex together with the number of rejected draws.
    """
    all_triangles = list(combinations(range(n_vertices), 3))
    retries = 0
    while True:
        triangles = sorted(rng.sample(all_triangles, n_triangles))
        if _triangles_connected(triangles):
            return complex_from_triangles(triangles), retries
        retries += 1


def enumerate_pure2(n_vertices: int, n_triangles: int) -> Iterator[Complex]:
    """All pure connected 2-complexes with at most the given support and
    facet count, one representative per isomorphism class."""
    all_triangles = list(combinations(range(n_vertices), 3))
    seen: set[tuple[Triangle, ...]] = set()
    for t in range(1, n_triangles + 1):
        for triangles in combinations(all_triangles, t):
            if not _triangles_connected(triangles):
                continue
            canonical = canonical_triangles(triangles)
            if canonical in seen:
                continue
            seen.add(canonical)
            yield complex_from_triangles(canonical)


def generate(spec: GeneratorSpec) -> Iterator[Complex]:
    """The instance stream described by the spec.

    random-pure-2 is an endless seeded stream; enumerate-all is finite and
    exhaustive up to isomorphism; subdivide-depth-k subdivides the
    enumerated stream ``spec.depth`` times.
    """
    spec.validate()
    if spec.mode == "random-pure-2":
        rng = random.Random(spec.seed)
        while True:
            instance, _ = sample_pure2(rng, spec.n_vertices, spec.n_triangles)
            yield instance
    elif spec.mode == "enumerate-all":
        yield from enumerate_pure2(spec.n_vertices, spec.n_triangles)
    else:
        for base in enumerate_pure2(spec.n_vertices, spec.n_triangles):
            instance = base
            for _ in range(spec.depth):
                instance = instance.barycentric_subdivision()
            yield instance


# -- graph instance helpers (used by the test suites) --------------------------

def enumerate_connected_graphs(n: int) -> Iterator[Complex]:
    """All connected graphs on exactly n labelled-then-canonicalized vertices,
    one representative per isomorphism class (feasible up to n = 6)."""
    if n == 1:
        yield graph_complex(["v0"], [])
        return
    pairs = list(combinations(range(n), 2))
    bit = {p: i for i, p in enumerate(pairs)}
    perms = list(permutations(range(n)))
    seen = bytearray(1 << len(pairs))

    def connected(mask: int) -> bool:
        adjacency = [[] for _ in range(n)]
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adjacency[u].append(v)
                adjacency[v].append(u)
        stack, reached = [0], {0}
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        return len(reached) == n

    for mask in range(1 << len(pairs)):
        if seen[mask] or not connected(mask):
            continue
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        for perm in perms:
            image = 0
            for u, v in edges:
                image |= 1 << bit[tuple(sorted((perm[u], perm[v])))]
            seen[image] = 1
        yield graph_complex([f"v{i}" for i in range(n)],
                            [(f"v{u}", f"v{v}") for u, v in edges])


def sample_connected_graph(rng: random.Random, n: int, p: float) -> Complex:
    """A seeded G(n, p) sample, retried until connected."""
    pairs = list(combinations(range(n), 2))
    while True:
        edges = [e for e in pairs if rng.random() < p]
        graph = graph_complex([f"v{i}" for i in range(n)],
                              [(f"v{u}", f"v{v}") for u, v in edges])
        if graph.is_connected():
            return graph


def sample_spanning_subgraph(rng: random.Random, F: Complex, p: float) -> Complex:
    """A seeded spanning subgraph of F keeping each edge with probability p."""
    kept = [F.label_face(e) for e in F.faces_of_dim(1) if rng.random() < p]
    return graph_complex(F.labels, kept)


# -- brute-force oracles --------------------------------------------------------

def oracle_shelling(K: Complex) -> bool:
    """Ground-truth shellability by trying every facet permutation."""
    facets = [frozenset(f) for f in K.facets]
    if len(facets) > ORACLE_MAX_FACETS:
        raise OracleBoundError(
            f"shelling oracle is limited to {ORACLE_MAX_FACETS} facets")
    d = max(len(f) for f in facets) - 1

    def all_subsets(s: frozenset) -> set[frozenset]:
        out = set()
        items = sorted(s)
        for k in range(1, len(items) + 1):
            out.update(frozenset(c) for c in combinations(items, k))
        return out

    for order in permutations(facets):
        covered: set[frozenset] = set()
        good = True
        for i, facet in enumerate(order):
            if i > 0:
                shared = [s for s in all_subsets(facet)
                          if s != facet and s in covered]
                maximal = [s for s in shared
                           if not any(s < t for t in shared)]
                if not maximal:
                    good = d == 0
                else:
                    good = all(len(s) == d for s in maximal)
                if not good:
                    break
            covered |= all_subsets(facet)
        if good:
            return True
    return False


def oracle_collapsible(K: Complex) -> bool:
    """Ground-truth collapsibility by exploring every collapse sequence."""
    faces = {frozenset(f) for f in K.faces if f}
    if len(faces) > ORACLE_MAX_FACES:
        raise OracleBoundError(
            f"collapsibility oracle is limited to {ORACLE_MAX_FACES} faces")

    def search(current: frozenset) -> bool:
        if len(current) == 1 and len(next(iter(current))) == 1:
            return True
        for tau in current:
            above = [g for g in current if tau < g]
            maximal = [g for g in above if not any(g < h for h in above)]
            if len(maximal) != 1:
                continue
            smaller = frozenset(g for g in current if not tau <= g)
            if search(smaller):
                return True
        return False

    return search(frozenset(faces))


def oracle_wsat(F: Complex) -> int:
    """Ground-truth wsat(F, K3) over all spanning subgraphs, smallest first."""
    n = F.n_vertices
    if n > ORACLE_MAX_VERTICES:
        raise OracleBoundError(
            f"wsat oracle is limited to {ORACLE_MAX_VERTICES} vertices")
    edges = sorted(tuple(e) for e in F.faces_of_dim(1))
    full = 0
    bit_of = {}
    for i, e in enumerate(edges):
        bit_of[e] = 1 << i
        full |= 1 << i

    def closes(mask: int) -> bool:
        adjacency = [0] * n
        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                adjacency[u] |= 1 << v
                adjacency[v] |= 1 << u
        current = mask
        changed = True
        while changed:
            changed = False
            for i, (u, v) in enumerate(edges):
                if current >> i & 1:
                    continue
                if adjacency[u] & adjacency[v]:
                    current |= 1 << i
                    adjacency[u] |= 1 << v
                    adjacency[v] |= 1 << u
                    changed = True
        return current == full

    for size in range(len(edges) + 1):
        for subset in combinations(range(len(edges)), size):
            mask = 0
            for i in subset:
                mask |= 1 << i
            if closes(mask):
                return size
    raise AssertionError("the full edge set always closes")

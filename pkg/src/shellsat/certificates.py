"""Certificate translations between shellability, weak saturation and collapsibility.

For a pure connected 2-dimensional complex L:

* a shelling of L yields a spanning tree of the 1-skeleton that is weakly
  K3-saturated, the saturating order following the shelling;
* a weakly K3-saturated spanning tree of a *flag* L yields a collapse of
  L minus some triangles down to a single vertex, collapsing the witness
  triangles in reverse saturation order and then pruning the tree;
* any collapse certificate reaching a point must remove exactly as many
  triangles as the reduced Euler characteristic, which gives a cheap
  consistency check on the whole pipeline.

``run_chain`` wires the three translations together behind one budget.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .collapse import (
    CollapseCertificate,
    CollapseStep,
    verify_collapse,
)
from .complexes import Complex, Face, from_facets
from .errors import (
    CertificateError,
    ConnectivityError,
    FlagnessError,
    PurityError,
)
from .outcomes import Budget, BudgetExceeded, Unshellable, as_budget
from .shelling import ShellingCertificate, find_shelling, first_shelling_violation
from .wsat import (
    Edge,
    SaturationCertificate,
    _edge_set,
    _spanning_connected,
    _subgraph,
    saturation_violation,
    verify_saturation,
)


@dataclass
class ChainReport:
    """Everything produced by one pipeline run on one subject complex."""

    original: Complex
    subject: Complex
    subdivision_depth: int
    chi: int
    status: str
    shelling: ShellingCertificate | None = None
    saturation: SaturationCertificate | None = None
    collapse: CollapseCertificate | None = None
    removed_count: int | None = None
    verdicts: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def _require_pure2_connected(L: Complex, what: str) -> None:
    if L.dim != 2 or not L.is_pure():
        raise PurityError(f"{what} requires a pure 2-dimensional complex")
    if not L.is_connected():
        raise ConnectivityError(f"{what} requires a connected complex")


def shelling_to_saturated_tree(L: Complex,
                               cert: ShellingCertificate) -> SaturationCertificate:
    """Turn a shelling into a weakly K3-saturated spanning tree certificate.

    The tree starts with the two lexicographically least edges of the first
    facet; each facet meeting the previous union in a single edge
    contributes its new vertex plus the least new edge at that vertex.  The
    saturating order collects the one leftover edge per facet (none when a
    facet arrives with all three edges already present), witnessed by the
    facet's own vertex set.
    """
    _require_pure2_connected(L, "the tree construction")
    violation = first_shelling_violation(L, cert)
    if violation is not None:
        raise CertificateError(
            f"invalid shelling: condition fails at index {violation}")

    def facet_edges(facet: Face) -> list[Edge]:
        return list(combinations(facet, 2))

    order = cert.order
    tree: set[Edge] = set()
    sat_order: list[Edge] = []
    witnesses: list[tuple[int, int, int]] = []

    first_edges = facet_edges(order[0])
    tree.update(first_edges[:2])
    sat_order.append(first_edges[2])
    witnesses.append(order[0])
    covered: set[Edge] = set(first_edges)

    for facet in order[1:]:
        edges = facet_edges(facet)
        shared = [e for e in edges if e in covered]
        new = [e for e in edges if e not in covered]
        if not shared:
            raise AssertionError(
                "a valid shelling cannot attach a facet along zero edges")
        if len(shared) == 1:
            new_vertex = (set(facet) - set(shared[0])).pop()
            assert all(new_vertex in e for e in new) and len(new) == 2
            tree.add(new[0])
            sat_order.append(new[1])
            witnesses.append(facet)
        else:
            assert len(new) <= 1
            if new:
                sat_order.append(new[0])
                witnesses.append(facet)
        covered.update(edges)

    assert len(tree) == L.n_vertices - 1
    host = L.skeleton(1)
    return SaturationCertificate(_subgraph(host, tree),
                                 tuple(sat_order), tuple(witnesses))


def saturation_to_collapse(L: Complex,
                           cert: SaturationCertificate) -> CollapseCertificate:
    """Turn a saturated spanning tree of a flag complex into a collapse.

    Each witness induces a triangle of L (flagness); the triangles are
    pairwise distinct because a later triangle contains its own ordered
    edge while earlier ones do not.  Triangles outside the witness list are
    removed up front; the witness triangles collapse in reverse saturation
    order, and the remaining spanning tree is pruned leaf by leaf
    (largest leaf first) down to the least vertex.
    """
    _require_pure2_connected(L, "the collapse construction")
    if not L.is_flag2():
        raise FlagnessError(
            "the collapse construction requires a flag complex")
    host = L.skeleton(1)
    failure = saturation_violation(host, cert)
    if failure is not None:
        raise CertificateError(f"invalid saturation certificate: {failure}")
    tree_edges = _edge_set(cert.start)
    n = L.n_vertices
    if len(tree_edges) != n - 1 or not _spanning_connected(n, tree_edges):
        raise CertificateError("the start graph must be a spanning tree")

    triangles: list[Face] = []
    for i, witness in enumerate(cert.witnesses):
        triangle = tuple(sorted(witness))
        if triangle not in L.faces:
            raise FlagnessError(
                f"witness {witness} at index {i} does not induce a triangle")
        triangles.append(triangle)
    assert len(set(triangles)) == len(triangles), "witness triangles must be distinct"

    removed = frozenset(set(L.triangles) - set(triangles))
    steps = [CollapseStep(edge, triangle)
             for edge, triangle in reversed(list(zip(cert.order, triangles)))]

    degree = {v: 0 for v in range(n)}
    at_vertex: dict[int, set[Edge]] = {v: set() for v in range(n)}
    for e in tree_edges:
        for v in e:
            degree[v] += 1
            at_vertex[v].add(e)
    alive = set(range(n))
    while len(alive) > 1:
        leaf = max(v for v in alive if degree[v] == 1)
        edge = next(iter(at_vertex[leaf]))
        steps.append(CollapseStep((leaf,), edge))
        alive.remove(leaf)
        for v in edge:
            degree[v] -= 1
            at_vertex[v].discard(edge)
    final_vertex = next(iter(alive))
    target = from_facets([[L.labels[final_vertex]]])
    return CollapseCertificate(removed, tuple(steps), target)


def check_removal_count(L: Complex, cert: CollapseCertificate) -> bool:
    """For a point-targeting certificate: removed count equals chi tilde.

    A collapse preserves the reduced Euler characteristic and a point has
    characteristic 0, so the removal stage must account for all of it.
    """
    if not cert.targets_point():
        raise CertificateError("the certificate must target a single vertex")
    return len(cert.removed_triangles) == L.reduced_euler_characteristic()


def run_chain(K: Complex, budget: int | Budget | None = None) -> ChainReport:
    """Run shelling search and both certificate translations on one subject.

    Non-flag inputs are replaced by their second barycentric subdivision
    (recorded in the report); flag inputs run as-is.  All stages share one
    node budget.  Every produced certificate is re-verified and the
    verdicts are recorded; a failed search stops the chain with an honest
    status instead of an error.
    """
    _require_pure2_connected(K, "the certificate chain")
    budget = as_budget(budget)
    depth = 0 if K.is_flag2() else 2
    L = K
    for _ in range(depth):
        L = L.barycentric_subdivision()
    chi = L.reduced_euler_characteristic()
    report = ChainReport(original=K, subject=L, subdivision_depth=depth,
                         chi=chi, status="pending")

    shell = find_shelling(L, budget)
    if isinstance(shell, BudgetExceeded):
        report.status = "budget-exceeded:shelling"
        return report
    if isinstance(shell, Unshellable):
        report.status = "unshellable"
        return report
    report.shelling = shell
    report.verdicts["shelling_verifies"] = first_shelling_violation(L, shell) is None

    saturation = shelling_to_saturated_tree(L, shell)
    report.saturation = saturation
    host = L.skeleton(1)
    report.verdicts["saturation_verifies"] = verify_saturation(host, saturation)
    report.verdicts["start_has_tree_size"] = (
        len(_edge_set(saturation.start)) == L.n_vertices - 1)

    collapse = saturation_to_collapse(L, saturation)
    report.collapse = collapse
    report.verdicts["collapse_verifies"] = verify_collapse(L, collapse)
    report.verdicts["collapse_targets_point"] = collapse.targets_point()
    report.verdicts["removal_count_matches_chi"] = check_removal_count(L, collapse)
    report.removed_count = len(collapse.removed_triangles)
    report.status = "complete"
    return report


# -- report serialization ------------------------------------------------------

def format_chain_report(report: ChainReport) -> str:
    """Structured text report, one section per stage, certificates embedded."""
    from .collapse import format_collapse
    from .shelling import format_shelling
    from .wsat import format_saturation

    lines = [
        "# chain report",
        f"# original: {report.original.fingerprint}",
        f"# subject: {report.subject.fingerprint}",
        f"# subdivision-depth: {report.subdivision_depth}",
        f"# chi: {report.chi}",
        f"# status: {report.status}",
    ]
    if report.removed_count is not None:
        lines.append(f"# removed-count: {report.removed_count}")
    for name, value in report.verdicts.items():
        lines.append(f"# verdict {name}: {str(value).lower()}")
    if report.shelling is not None:
        lines.append("# stage shelling")
        lines.append(format_shelling(report.subject, report.shelling).rstrip("\n"))
    if report.saturation is not None:
        lines.append("# stage saturation")
        host = report.subject.skeleton(1)
        lines.append(format_saturation(host, report.saturation).rstrip("\n"))
    if report.collapse is not None:
        lines.append("# stage collapse")
        lines.append(format_collapse(report.subject, report.collapse).rstrip("\n"))
    return "\n".join(lines) + "\n"


def chain_report_json(report: ChainReport) -> dict:
    """Stable machine-readable structure for the chain report."""
    subject = report.subject

    def face_text(f: Face) -> str:
        return " ".join(subject.label_face(f))

    data = {
        "original": report.original.fingerprint,
        "subject": subject.fingerprint,
        "subdivision_depth": report.subdivision_depth,
        "chi": report.chi,
        "status": report.status,
        "removed_count": report.removed_count,
        "verdicts": dict(report.verdicts),
        "shelling": None,
        "saturation": None,
        "collapse": None,
    }
    if report.shelling is not None:
        data["shelling"] = [face_text(f) for f in report.shelling.order]
    if report.saturation is not None:
        sat = report.saturation
        data["saturation"] = {
            "start": [face_text(e) for e in sorted(_edge_set(sat.start))],
            "order": [face_text(e) for e in sat.order],
            "witnesses": [face_text(w) for w in sat.witnesses],
            "pattern": sat.pattern,
        }
    if report.collapse is not None:
        col = report.collapse
        data["collapse"] = {
            "removed": [face_text(t) for t in sorted(col.removed_triangles)],
            "steps": [[face_text(s.free_face), face_text(s.facet)]
                      for s in col.steps],
            "target": [" ".join(col.target.label_face(f))
                       for f in col.target.facets],
        }
    return data

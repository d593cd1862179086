"""Shelling verification and search for pure simplicial complexes.

A shelling is an ordering of all facets such that each facet meets the
union of its predecessors in a pure codimension-1 subcomplex.  The
condition is prefix-checkable, which makes depth-first search with
safe pruning possible; the verifier is dimension-generic, the search is
exercised at dimension 2.
"""

from dataclasses import dataclass
from itertools import combinations

from .complexes import Complex, Face
from .errors import (
    ConnectivityError,
    MalformedCertificateError,
    NotAFaceError,
    PurityError,
    UnsupportedDimensionError,
)
from .outcomes import Budget, BudgetExceeded, OutOfBudget, Unshellable, as_budget


@dataclass(frozen=True)
class ShellingCertificate:
    """An ordering of all facets witnessing shellability."""

    order: tuple[Face, ...]


def _proper_subfaces(facet: Face) -> list[Face]:
    return [sub for k in range(1, len(facet))
            for sub in combinations(facet, k)]


def _meets_predecessors(proper: list[Face], covered: set[Face], d: int) -> bool:
    """Check that the shared subcomplex is pure of dimension d-1.

    ``proper`` lists the nonempty proper subfaces of the candidate facet,
    ``covered`` holds every face of the predecessor union and ``d`` is the
    facet dimension.
    """
    shared = [f for f in proper if f in covered]
    if not shared:
        # The intersection is the empty-face complex, of dimension -1.
        return d == 0
    maximal = (f for f in shared
               if not any(f is not g and set(f) < set(g) for g in shared))
    return all(len(f) == d for f in maximal)


def first_shelling_violation(K: Complex, cert: ShellingCertificate) -> int | None:
    """Return the 0-based index of the first facet violating the shelling
    condition, or None when the certificate is a valid shelling.

    Raises MalformedCertificateError when the order is not a permutation of
    the facet set, and PurityError for non-pure complexes.
    """
    if not K.is_pure():
        raise PurityError("shellings are defined for pure complexes only")
    order = [tuple(f) for f in cert.order]
    if sorted(order) != list(K.facets) or len(order) != len(K.facets):
        raise MalformedCertificateError(
            "certificate order is not a permutation of the facet set")
    d = K.dim
    covered: set[Face] = set()
    for i, facet in enumerate(order):
        if i > 0 and not _meets_predecessors(_proper_subfaces(facet), covered, d):
            return i
        covered.add(facet)
        covered.update(_proper_subfaces(facet))
    return None


def verify_shelling(K: Complex, cert: ShellingCertificate) -> bool:
    """True iff the certificate is a valid shelling of K."""
    return first_shelling_violation(K, cert) is None


def find_shelling(K: Complex, budget: int | Budget | None = None):
    """Search for a shelling of a pure connected complex of dimension >= 1.

    Returns the lexicographically first shelling (depth-first, candidates in
    facet order), ``Unshellable()`` after exhausting the search space, or
    ``BudgetExceeded`` once the node budget runs out.  Failed facet sets are
    memoized: extendability depends only on the set of placed facets, not
    on their order.
    """
    if not K.is_pure():
        raise PurityError("shelling search requires a pure complex")
    if K.dim < 1:
        raise UnsupportedDimensionError("shelling search requires dimension >= 1")
    if not K.is_connected():
        raise ConnectivityError("shelling search requires a connected complex")

    budget = as_budget(budget)
    facets = list(K.facets)
    m = len(facets)
    proper = [_proper_subfaces(f) for f in facets]
    d = K.dim

    placed = [False] * m
    order: list[int] = []
    covered: set[Face] = set()
    failed: set[frozenset[int]] = set()

    def extend() -> bool:
        if len(order) == m:
            return True
        state = frozenset(order)
        if state in failed:
            return False
        for i in range(m):
            if placed[i]:
                continue
            if order and not _meets_predecessors(proper[i], covered, d):
                continue
            budget.spend()
            placed[i] = True
            order.append(i)
            added = [f for f in proper[i] if f not in covered]
            if facets[i] not in covered:
                added.append(facets[i])
            covered.update(added)
            if extend():
                return True
            covered.difference_update(added)
            order.pop()
            placed[i] = False
        failed.add(state)
        return False

    try:
        found = extend()
    except OutOfBudget:
        return BudgetExceeded(stage="shelling")
    if not found:
        return Unshellable()
    return ShellingCertificate(tuple(facets[i] for i in order))


# -- certificate file format -------------------------------------------------

def format_shelling(K: Complex, cert: ShellingCertificate) -> str:
    """One facet per line in shelling order, with a fingerprint header."""
    lines = [f"# shelling of {K.fingerprint}"]
    lines.extend(" ".join(K.label_face(f)) for f in cert.order)
    return "\n".join(lines) + "\n"


def parse_shelling(text: str, K: Complex) -> ShellingCertificate:
    """Parse a shelling certificate against its subject complex.

    A "# shelling of <fingerprint>" header, when present, must match the
    subject; faces are given by vertex labels as in the ".sc" format.
    """
    order: list[Face] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:2] == ["shelling", "of"] and len(parts) == 3:
                if parts[2] != K.fingerprint:
                    raise MalformedCertificateError(
                        f"certificate fingerprint {parts[2]} does not match "
                        f"subject {K.fingerprint}")
            continue
        try:
            face = K.face_from_labels(line.split())
        except NotAFaceError as exc:
            raise MalformedCertificateError(f"line {lineno}: {exc}") from None
        order.append(face)
    if not order:
        raise MalformedCertificateError("certificate lists no facets")
    return ShellingCertificate(tuple(order))

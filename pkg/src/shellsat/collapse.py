"""Elementary collapses, collapsibility search and k-triangle-removal decisions.

A face is free when it is contained in a single facet; the elementary
collapse removes it together with every face above it.  Certificates list
an optional set of removed triangles, the collapse steps in order, and the
target subcomplex the steps must reach.  All faces in a certificate are
expressed in the id coordinates of the subject complex.
"""

from dataclasses import dataclass
from itertools import combinations

from .complexes import Complex, Face, from_facets
from .errors import (
    ConnectivityError,
    MalformedCertificateError,
    NotAFaceError,
    NotFreeError,
    ParameterError,
    PurityError,
)
from .outcomes import (
    Budget,
    BudgetExceeded,
    Impossible,
    NotCollapsible,
    OutOfBudget,
    as_budget,
)


@dataclass(frozen=True)
class CollapseStep:
    free_face: Face
    facet: Face


@dataclass(frozen=True)
class CollapseCertificate:
    """Remove the listed triangles, apply the steps, arrive at the target."""

    removed_triangles: frozenset[Face]
    steps: tuple[CollapseStep, ...]
    target: Complex

    def targets_point(self) -> bool:
        return self.target.dim == 0 and self.target.n_vertices == 1


# -- replay machinery over plain face sets (empty face excluded) -------------

def _cofacets(faces: set[Face], tau: Face) -> list[Face]:
    """Facets of the current complex strictly containing tau."""
    tau_set = set(tau)
    above = [g for g in faces if len(g) > len(tau) and tau_set < set(g)]
    return [g for g in above
            if not any(g is not h and set(g) < set(h) for h in above)]


def _step_violation(faces: set[Face], step: CollapseStep) -> str | None:
    """Why the step is illegal on the current face set, or None if legal."""
    tau, sigma = step.free_face, step.facet
    if not tau:
        return "the empty face cannot be collapsed"
    if tau not in faces:
        return f"free face {tau} is not a face of the current complex"
    if sigma not in faces or not set(tau) < set(sigma):
        return f"{sigma} is not a facet strictly containing {tau}"
    cofacets = _cofacets(faces, tau)
    if sigma not in cofacets:
        return f"{sigma} is not a facet of the current complex"
    others = [g for g in cofacets if g != sigma]
    if others:
        return f"free face {tau} is also contained in facet {min(others)}"
    return None


def _apply_step(faces: set[Face], step: CollapseStep) -> set[Face]:
    tau_set = set(step.free_face)
    return {g for g in faces if not tau_set <= set(g)}


def _nonempty_faces(K: Complex) -> set[Face]:
    return {f for f in K.faces if f}


def _legal_steps(faces: set[Face]) -> list[CollapseStep]:
    steps = []
    for tau in faces:
        cofacets = _cofacets(faces, tau)
        if len(cofacets) == 1:
            steps.append(CollapseStep(tau, cofacets[0]))
    return steps


def _rebuild(K: Complex, faces: set[Face]) -> Complex:
    maximal = [f for f in faces
               if not any(f is not g and set(f) < set(g) for g in faces)]
    return from_facets([K.label_face(f) for f in maximal])


# -- public operations --------------------------------------------------------

def apply_collapse(K: Complex, step: CollapseStep) -> Complex:
    """Perform one elementary collapse, returning the smaller complex.

    The free face must be contained in exactly one facet, which must be the
    one named by the step; otherwise NotFreeError reports the obstruction.
    """
    faces = _nonempty_faces(K)
    reason = _step_violation(faces, step)
    if reason is not None:
        blocking = None
        cofacets = _cofacets(faces, step.free_face) if step.free_face in faces else []
        others = [g for g in cofacets if g != step.facet]
        if others:
            blocking = min(others)
        raise NotFreeError(reason, blocking_facet=blocking)
    return _rebuild(K, _apply_step(faces, step))


def free_faces(K: Complex) -> list[CollapseStep]:
    """All currently legal collapse steps, in lexicographic face order."""
    return sorted(_legal_steps(_nonempty_faces(K)),
                  key=lambda s: (s.free_face, s.facet))


def _search_order(faces: set[Face]) -> list[CollapseStep]:
    # Greedy preference: highest-dimensional free face first, lex within.
    return sorted(_legal_steps(faces),
                  key=lambda s: (-len(s.free_face), s.free_face, s.facet))


def _collapse_to_point(faces: set[Face], steps: list[CollapseStep],
                       visited: set[frozenset[Face]], budget: Budget) -> bool:
    """Depth-first search for a collapse to a single vertex, extending steps.

    Dead complexes are memoized in ``visited``: collapsibility depends only
    on the current face set, so every route into a known-dead state prunes.
    """
    if len(faces) == 1 and all(len(f) == 1 for f in faces):
        return True
    key = frozenset(faces)
    if key in visited:
        return False
    for step in _search_order(faces):
        budget.spend()
        steps.append(step)
        if _collapse_to_point(_apply_step(faces, step), steps, visited, budget):
            return True
        steps.pop()
    visited.add(key)
    return False


def is_collapsible(K: Complex, budget: int | Budget | None = None):
    """Decide whether K collapses to a point (any single vertex).

    Returns a CollapseCertificate, ``NotCollapsible()`` after exhausting all
    collapse sequences (with dead-state memoization), or ``BudgetExceeded``.
    """
    if not K.is_connected():
        raise ConnectivityError("collapsibility search requires a connected complex")
    budget = as_budget(budget)
    faces = _nonempty_faces(K)
    steps: list[CollapseStep] = []
    try:
        found = _collapse_to_point(faces, steps, set(), budget)
    except OutOfBudget:
        return BudgetExceeded(stage="collapse")
    if not found:
        return NotCollapsible()
    remaining = faces
    for step in steps:
        remaining = _apply_step(remaining, step)
    target = _rebuild(K, remaining)
    return CollapseCertificate(frozenset(), tuple(steps), target)


def collapsible_after_removing(K: Complex, k: int,
                               budget: int | Budget | None = None):
    """Decide whether removing some k triangles leaves a collapsible complex.

    Euler gate: a complex that collapses to a point has reduced Euler
    characteristic 0 and removing one triangle lowers it by exactly 1, so
    any feasible k equals the reduced Euler characteristic; other k are
    Impossible without search.  Triangle subsets are tried in lexicographic
    order; dead-state memoization is shared across subsets.
    """
    if k < 0:
        raise ParameterError("removal count must be >= 0")
    if K.dim != 2 or not K.is_pure():
        raise PurityError("removal search requires a pure 2-dimensional complex")
    if not K.is_connected():
        raise ConnectivityError("removal search requires a connected complex")
    if K.reduced_euler_characteristic() != k:
        return Impossible()

    budget = as_budget(budget)
    all_faces = _nonempty_faces(K)
    visited: set[frozenset[Face]] = set()
    for removed in combinations(K.triangles, k):
        faces = all_faces - set(removed)
        steps: list[CollapseStep] = []
        try:
            found = _collapse_to_point(faces, steps, visited, budget)
        except OutOfBudget:
            return BudgetExceeded(stage="collapse-after-removing")
        if found:
            remaining = faces
            for step in steps:
                remaining = _apply_step(remaining, step)
            target = _rebuild(K, remaining)
            cert = CollapseCertificate(frozenset(removed), tuple(steps), target)
            return frozenset(removed), cert
    return Impossible()


def collapse_violation(K: Complex, cert: CollapseCertificate) -> str | None:
    """Replay the certificate; return a description of the first failure.

    Structural breakage (faces that do not belong to the subject at all,
    or removed entries that are not triangles of K) raises
    MalformedCertificateError; an illegal step or a target mismatch merely
    makes the certificate invalid and is reported as a string.
    """
    for t in cert.removed_triangles:
        if t not in K.faces or len(t) != 3:
            raise MalformedCertificateError(
                f"removed entry {t} is not a triangle of the subject")
    for i, step in enumerate(cert.steps):
        for face in (step.free_face, step.facet):
            if face not in K.faces:
                raise MalformedCertificateError(
                    f"step {i}: {face} is not a face of the subject")

    faces = _nonempty_faces(K) - set(cert.removed_triangles)
    for i, step in enumerate(cert.steps):
        reason = _step_violation(faces, step)
        if reason is not None:
            return f"step {i}: {reason}"
        faces = _apply_step(faces, step)

    reached = {K.label_face(f) for f in faces}
    expected = {cert.target.label_face(f) for f in cert.target.faces if f}
    if reached != expected:
        return "final complex does not equal the certificate target"
    return None


def verify_collapse(K: Complex, cert: CollapseCertificate) -> bool:
    """True iff replaying the certificate is legal and ends at its target."""
    return collapse_violation(K, cert) is None


# -- certificate file format ---------------------------------------------------

def format_collapse(K: Complex, cert: CollapseCertificate) -> str:
    """"# removed:" line, one "tau -> sigma" step per line, then the target."""
    def face_text(face: Face) -> str:
        return " ".join(K.label_face(face))

    lines = [f"# collapse of {K.fingerprint}"]
    removed = ", ".join(face_text(t) for t in sorted(cert.removed_triangles))
    lines.append(f"# removed: {removed}".rstrip())
    for step in cert.steps:
        lines.append(f"{face_text(step.free_face)} -> {face_text(step.facet)}")
    lines.append("# target:")
    for facet in cert.target.facets:
        lines.append(" ".join(cert.target.label_face(facet)))
    return "\n".join(lines) + "\n"


def parse_collapse(text: str, K: Complex) -> CollapseCertificate:
    """Parse a collapse certificate file against its subject complex."""
    removed: list[Face] = []
    steps: list[CollapseStep] = []
    target_lines: list[str] = []
    in_target = False
    saw_removed = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("collapse of"):
                    claimed = body[len("collapse of"):].strip()
                    if claimed != K.fingerprint:
                        raise MalformedCertificateError(
                            f"certificate fingerprint {claimed} does not match "
                            f"subject {K.fingerprint}")
                elif body.startswith("removed:"):
                    saw_removed = True
                    listing = body[len("removed:"):].strip()
                    for part in filter(None, (p.strip() for p in listing.split(","))):
                        removed.append(K.face_from_labels(part.split()))
                elif body.startswith("target:"):
                    in_target = True
                continue
            if in_target:
                target_lines.append(line)
            else:
                if "->" not in line:
                    raise MalformedCertificateError(
                        f"line {lineno}: expected 'free -> facet', got {line!r}")
                left, right = line.split("->", 1)
                steps.append(CollapseStep(K.face_from_labels(left.split()),
                                          K.face_from_labels(right.split())))
        except NotAFaceError as exc:
            raise MalformedCertificateError(f"line {lineno}: {exc}") from None
    if not saw_removed or not in_target or not target_lines:
        raise MalformedCertificateError(
            "certificate must contain '# removed:' and a nonempty '# target:' section")
    target = from_facets(target_lines)
    return CollapseCertificate(frozenset(removed), tuple(steps), target)

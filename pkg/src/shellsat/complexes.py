"""Finite simplicial complexes over dense integer vertex ids.

A complex is stored as the downward closure of its facet list.  Vertex ids
are assigned by sorting the original string labels, so two complexes built
from the same label faces are structurally identical, serialize to the same
bytes and share one fingerprint.  Faces are strictly increasing id tuples;
the empty face ``()`` is always present.

Complexes are immutable after construction and safe to share between
threads.  Supported dimensions are -1 < dim <= 3 (inputs of dimension at
most 2 plus their barycentric subdivisions).
"""

import hashlib
import re
from itertools import chain, combinations, permutations
from typing import Iterable, Sequence

from .errors import (
    EmptyComplexError,
    MalformedFaceError,
    NotAFaceError,
    ParseError,
    ShellsatError,
    UnsupportedDimensionError,
)

Face = tuple[int, ...]

MAX_DIMENSION = 3

LABEL_RE = re.compile(r"[A-Za-z0-9_{}|.\-]+\Z")


def subfaces(face: Face) -> Iterable[Face]:
    """All subsets of a face, the empty face and the face itself included."""
    return chain.from_iterable(combinations(face, k) for k in range(len(face) + 1))


class Complex:
    """Immutable simplicial complex; construct via :func:`from_facets`."""

    __slots__ = ("labels", "facets", "faces", "_fingerprint", "_hash")

    def __init__(self, labels: tuple[str, ...], facets: tuple[Face, ...],
                 faces: frozenset[Face]):
        # Internal constructor; invariants are established by from_facets.
        self.labels = labels
        self.facets = facets
        self.faces = faces
        self._fingerprint: str | None = None
        self._hash: int | None = None

    # -- basic structure ---------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def has_face(self, face: Face) -> bool:
        return tuple(face) in self.faces

    def label_face(self, face: Face) -> tuple[str, ...]:
        return tuple(self.labels[v] for v in face)

    def face_from_labels(self, labels: Sequence[str]) -> Face:
        """Translate a label sequence to the id face it names, sorted."""
        index = {lab: v for v, lab in enumerate(self.labels)}
        try:
            ids = sorted(index[lab] for lab in labels)
        except KeyError as exc:
            raise NotAFaceError(f"unknown vertex label {exc.args[0]!r}") from None
        return tuple(ids)

    def faces_of_dim(self, k: int) -> list[Face]:
        return sorted(f for f in self.faces if len(f) == k + 1)

    @property
    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    @property
    def triangles(self) -> list[Face]:
        return self.faces_of_dim(2)

    # -- equality / hashing / fingerprint ----------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.labels == other.labels and self.facets == other.facets

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.labels, self.facets))
        return self._hash

    def __repr__(self) -> str:
        parts = [" ".join(self.label_face(f)) for f in self.facets[:4]]
        more = ", ..." if len(self.facets) > 4 else ""
        return f"Complex({', '.join(parts)}{more})"

    @property
    def fingerprint(self) -> str:
        """Stable digest of the sorted facet list, usable as a table key."""
        if self._fingerprint is None:
            digest = hashlib.sha256(self.to_sc().encode("utf-8")).hexdigest()
            self._fingerprint = digest[:16]
        return self._fingerprint

    # -- counting ----------------------------------------------------------

    def f_vector(self) -> tuple[int, ...]:
        """Face counts (f_-1, f_0, ..., f_dim); f_-1 = 1 for the empty face."""
        counts = [0] * (self.dim + 2)
        for f in self.faces:
            counts[len(f)] += 1
        return tuple(counts)

    def reduced_euler_characteristic(self) -> int:
        """Alternating face-count sum, the empty face contributing -1."""
        return sum(1 if len(f) % 2 else -1 for f in self.faces)

    # -- predicates ----------------------------------------------------------

    def is_pure(self) -> bool:
        """True when all facets share one dimension."""
        sizes = {len(f) for f in self.facets}
        return len(sizes) == 1

    def is_connected(self) -> bool:
        """Connectivity of the 1-skeleton (single vertices count as components)."""
        n = self.n_vertices
        adjacency = [[] for _ in range(n)]
        for u, v in self.faces_of_dim(1):
            adjacency[u].append(v)
            adjacency[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def is_flag2(self) -> bool:
        """True iff every 3-clique of the 1-skeleton spans a triangle.

        Only defined up to dimension 2; higher dimensions raise.
        """
        if self.dim > 2:
            raise UnsupportedDimensionError(
                f"flagness check supports dimension <= 2, got {self.dim}")
        neighbours: dict[int, set[int]] = {v: set() for v in range(self.n_vertices)}
        for u, v in self.faces_of_dim(1):
            neighbours[u].add(v)
            neighbours[v].add(u)
        for u, v in self.faces_of_dim(1):
            for w in neighbours[u] & neighbours[v]:
                if (u, v, w) == tuple(sorted((u, v, w))) and (u, v, w) not in self.faces:
                    return False
        return True

    # -- derived complexes ---------------------------------------------------

    def skeleton(self, k: int) -> "Complex":
        """The subcomplex of faces of dimension at most k."""
        if k < 0:
            raise UnsupportedDimensionError("skeleton dimension must be >= 0")
        kept = [f for f in self.faces if 0 < len(f) <= k + 1]
        return from_facets([self.label_face(f) for f in kept])

    def induced(self, faces: Iterable[Face]) -> "Complex":
        """The subcomplex induced by the listed faces (their downward closure)."""
        listed = [tuple(f) for f in faces]
        for f in listed:
            if f not in self.faces or not f:
                raise NotAFaceError(f"{f} is not a nonempty face of the complex")
        return from_facets([self.label_face(f) for f in listed])

    def barycentric_subdivision(self) -> "Complex":
        """The complex of chains of nonempty faces.

        New vertex labels serialize the original face: the face with labels
        a, b becomes "{a|b}".  Facets are the maximal chains, one per
        (facet, vertex order) pair of the original complex.
        """
        def chain_label(face: Face) -> str:
            return "{" + "|".join(self.label_face(face)) + "}"

        new_facets = []
        for facet in self.facets:
            for order in permutations(facet):
                prefix_chain = [chain_label(tuple(sorted(order[:k + 1])))
                                for k in range(len(order))]
                new_facets.append(prefix_chain)
        return from_facets(new_facets)

    # -- serialization -------------------------------------------------------

    def to_sc(self) -> str:
        """Serialize to the ".sc" text format: one facet per line, sorted."""
        lines = []
        for facet in self.facets:
            labels = self.label_face(facet)
            for lab in labels:
                if not LABEL_RE.match(lab):
                    raise ShellsatError(f"label {lab!r} is not serializable")
            lines.append(" ".join(labels))
        return "\n".join(lines) + "\n"


def _build(label_faces: Iterable[tuple[str, ...]]) -> Complex:
    """Normalize label faces into a Complex (id assignment, closure, facets)."""
    listed = list(label_faces)
    vertex_labels = sorted({lab for face in listed for lab in face})
    if not vertex_labels:
        raise EmptyComplexError("a complex must have at least one vertex")
    index = {lab: v for v, lab in enumerate(vertex_labels)}

    id_faces = set()
    for face in listed:
        ids = tuple(sorted(index[lab] for lab in face))
        if len(ids) > MAX_DIMENSION + 1:
            raise UnsupportedDimensionError(
                f"face {' '.join(face)!r} has dimension {len(ids) - 1}; "
                f"the supported maximum is {MAX_DIMENSION}")
        id_faces.add(ids)

    faces = {sub for f in id_faces for sub in subfaces(f)}
    facets = sorted(f for f in id_faces
                    if not any(f != g and set(f) < set(g) for g in id_faces))
    return Complex(tuple(vertex_labels), tuple(facets), frozenset(faces))


def from_facets(facets: Iterable[str | Sequence[str]]) -> Complex:
    """Build a complex from facet descriptions.

    Each facet is either a whitespace-separated label string ("a b c") or a
    sequence of labels.  Listed faces that are subsets of other listed faces
    are absorbed into the closure and not kept as facets.
    """
    label_faces = []
    for face in facets:
        labels = tuple(face.split()) if isinstance(face, str) else tuple(face)
        if not labels:
            raise MalformedFaceError("faces must be nonempty")
        if len(set(labels)) != len(labels):
            raise MalformedFaceError(
                f"face {' '.join(labels)!r} repeats a vertex")
        label_faces.append(labels)
    return _build(label_faces)


def parse_sc(text: str) -> Complex:
    """Parse the ".sc" format (see :func:`parse_sc_with_warnings`)."""
    return parse_sc_with_warnings(text)[0]


def parse_sc_with_warnings(text: str) -> tuple[Complex, list[str]]:
    """Parse the ".sc" format, reporting absorbed (non-maximal) input faces.

    Lines starting with "#" are comments; every other nonempty line is one
    facet of whitespace-separated labels.  Labels must match
    ``[A-Za-z0-9_{}|.-]+``.  Malformed input raises :class:`ParseError`
    with the offending 1-based line number.
    """
    listed: list[tuple[int, tuple[str, ...]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        labels = tuple(line.split())
        for lab in labels:
            if not LABEL_RE.match(lab):
                raise ParseError(f"bad vertex label {lab!r}", lineno)
        if len(set(labels)) != len(labels):
            raise ParseError(f"face {line!r} repeats a vertex", lineno)
        if len(labels) > MAX_DIMENSION + 1:
            raise ParseError(
                f"face {line!r} has dimension {len(labels) - 1}; "
                f"the supported maximum is {MAX_DIMENSION}", lineno)
        listed.append((lineno, labels))

    if not listed:
        raise ParseError("no facets found; a complex must have at least one vertex")

    complex_ = _build([labels for _, labels in listed])
    facet_set = {complex_.label_face(f) for f in complex_.facets}
    warnings = []
    seen: set[tuple[str, ...]] = set()
    for lineno, labels in listed:
        canonical = tuple(complex_.label_face(complex_.face_from_labels(labels)))
        if canonical not in facet_set or canonical in seen:
            warnings.append(f"line {lineno}: face {' '.join(labels)!r} absorbed")
        seen.add(canonical)
    return complex_, warnings

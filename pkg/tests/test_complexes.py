"""Core complex representation: construction, predicates, sd, .sc format."""

import random
from itertools import combinations

import pytest

from shellsat import from_facets, parse_sc, parse_sc_with_warnings
from shellsat.complexes import Complex
from shellsat.errors import (
    EmptyComplexError,
    MalformedFaceError,
    NotAFaceError,
    ParseError,
    UnsupportedDimensionError,
)
from shellsat.harness import sample_pure2


# -- construction ---------------------------------------------------------------

def test_single_triangle_closure(triangle):
    assert triangle.f_vector() == (1, 3, 3, 1)
    assert len(triangle.faces) == 8  # empty face included


def test_subset_faces_are_absorbed():
    K = from_facets(["a b", "b"])
    assert K.facets == ((0, 1),)


def test_two_triangles_sharing_edge(two_triangles):
    assert two_triangles.f_vector() == (1, 4, 5, 2)


def test_duplicate_vertex_rejected():
    with pytest.raises(MalformedFaceError):
        from_facets(["a a b"])


def test_empty_input_rejected():
    with pytest.raises(EmptyComplexError):
        from_facets([])
    with pytest.raises(MalformedFaceError):
        from_facets([""])


def test_dimension_cap():
    from_facets(["a b c d"])  # dimension 3 is the cap
    with pytest.raises(UnsupportedDimensionError):
        from_facets(["a b c d e"])


def test_vertex_ids_follow_sorted_labels():
    K = from_facets(["c a", "b"])
    assert K.labels == ("a", "b", "c")
    assert K.facets == ((0, 2), (1,))


# -- skeleton / induced -----------------------------------------------------------

def test_skeleton_drops_triangles(two_triangles):
    G = two_triangles.skeleton(1)
    assert G.f_vector() == (1, 4, 5)
    assert G.dim == 1


def test_skeleton_identity_when_low_dim():
    edge = from_facets(["a b"])
    assert edge.skeleton(1) == edge


def test_skeleton_of_solid_tetrahedron_is_k4():
    K = from_facets(["a b c d"])
    assert K.skeleton(1).f_vector() == (1, 4, 6)


def test_induced_single_face(two_triangles):
    abc = two_triangles.face_from_labels(["a", "b", "c"])
    sub = two_triangles.induced([abc])
    assert sub == from_facets(["a b c"])


def test_induced_all_facets_is_identity(two_triangles):
    assert two_triangles.induced(two_triangles.facets) == two_triangles


def test_induced_absorbs_contained_faces(two_triangles):
    abc = two_triangles.face_from_labels(["a", "b", "c"])
    bc = two_triangles.face_from_labels(["b", "c"])
    assert two_triangles.induced([abc, bc]) == from_facets(["a b c"])


def test_induced_rejects_non_faces(two_triangles):
    with pytest.raises(NotAFaceError):
        two_triangles.induced([(0, 3)])  # ad is not an edge


# -- barycentric subdivision -------------------------------------------------------

def brute_force_chains(K: Complex) -> set[frozenset]:
    """Independent sd oracle: every totally ordered set of nonempty faces."""
    faces = [f for f in K.faces if f]
    chains = set()
    for r in range(1, len(faces) + 1):
        for combo in combinations(faces, r):
            ordered = sorted(combo, key=len)
            if all(set(a) < set(b) for a, b in zip(ordered, ordered[1:])):
                chains.add(frozenset(combo))
    return chains


def sd_faces_as_chains(K: Complex, sd: Complex) -> set[frozenset]:
    """Translate nonempty sd faces back to sets of original faces."""
    out = set()
    for face in sd.faces:
        if not face:
            continue
        labels = sd.label_face(face)
        originals = [K.face_from_labels(lab[1:-1].split("|")) for lab in labels]
        out.add(frozenset(originals))
    return out


def test_sd_point_is_point():
    pt = from_facets(["a"])
    sd = pt.barycentric_subdivision()
    assert sd.f_vector() == (1, 1)
    assert sd.labels == ("{a}",)


def test_sd_edge_is_path_of_two_edges():
    edge = from_facets(["a b"])
    sd = edge.barycentric_subdivision()
    assert sd.f_vector() == (1, 3, 2)
    assert sd_faces_as_chains(edge, sd) == brute_force_chains(edge)


def test_sd_triangle_f_vector(triangle):
    sd = triangle.barycentric_subdivision()
    assert sd.f_vector() == (1, 7, 12, 6)
    assert sd_faces_as_chains(triangle, sd) == brute_force_chains(triangle)


def test_sd_faces_match_chain_oracle(two_triangles, bowtie):
    for K in (two_triangles, bowtie):
        sd = K.barycentric_subdivision()
        assert sd_faces_as_chains(K, sd) == brute_force_chains(K)


def test_sd_serialization_is_frozen(triangle):
    # The brace-and-bar naming scheme is a fixed output contract.
    assert triangle.barycentric_subdivision().to_sc() == (
        "{a|b|c} {a|b} {a}\n"
        "{a|b|c} {a|b} {b}\n"
        "{a|b|c} {a|c} {a}\n"
        "{a|b|c} {a|c} {c}\n"
        "{a|b|c} {b|c} {b}\n"
        "{a|b|c} {b|c} {c}\n")


# -- counting -----------------------------------------------------------------------

def test_reduced_euler_characteristic_point():
    assert from_facets(["a"]).reduced_euler_characteristic() == 0


def test_reduced_euler_characteristic_three_cycle(three_cycle):
    assert three_cycle.reduced_euler_characteristic() == -1


def test_reduced_euler_characteristic_triangle(triangle):
    assert triangle.reduced_euler_characteristic() == 0


def test_f_vector_k4_graph():
    k4 = from_facets(["a b", "a c", "a d", "b c", "b d", "c d"])
    assert k4.f_vector() == (1, 4, 6)


# -- predicates ----------------------------------------------------------------------

def test_purity_and_dimension(two_triangles):
    assert two_triangles.is_pure() and two_triangles.dim == 2
    mixed = from_facets(["a b c", "d e"])
    assert not mixed.is_pure()
    point = from_facets(["a"])
    assert point.is_pure() and point.dim == 0


def test_flagness(two_triangles, three_cycle):
    assert two_triangles.is_flag2()
    assert not three_cycle.is_flag2()  # abc is a clique with no 2-face
    with pytest.raises(UnsupportedDimensionError):
        from_facets(["a b c d"]).is_flag2()


def test_connectivity(bowtie):
    assert bowtie.is_connected()
    assert not from_facets(["a b", "c d"]).is_connected()
    assert from_facets(["a"]).is_connected()


# -- invariants on seeded random instances ---------------------------------------------

def random_corpus(count=25):
    rng = random.Random(1105)
    out = []
    for _ in range(count):
        n = rng.randint(4, 7)
        t = rng.randint(1, 2 * n - 4)
        K, _ = sample_pure2(rng, n, min(t, 10))
        out.append(K)
    return out


def test_from_facets_idempotent_on_facets():
    for K in random_corpus():
        rebuilt = from_facets([K.label_face(f) for f in K.facets])
        assert rebuilt == K


def test_sd_preserves_euler_characteristic():
    for K in random_corpus():
        sd = K.barycentric_subdivision()
        assert sd.reduced_euler_characteristic() == K.reduced_euler_characteristic()


def test_sd_f_vector_law():
    for K in random_corpus():
        _, n, m, t = K.f_vector()
        assert K.barycentric_subdivision().f_vector() == (1, n + m + t, 2 * m + 6 * t, 6 * t)


def test_sd_is_flag():
    for K in random_corpus():
        assert K.barycentric_subdivision().is_flag2()


def test_sd_preserves_connectivity():
    connected = from_facets(["a b c", "c d e"])
    disconnected = from_facets(["a b c", "d e f"])
    for K in (connected, disconnected, *random_corpus(10)):
        assert K.barycentric_subdivision().is_connected() == K.is_connected()


# -- .sc format ---------------------------------------------------------------------------

def test_sc_round_trip(two_triangles):
    text = two_triangles.to_sc()
    assert parse_sc(text) == two_triangles
    for K in random_corpus(8):
        assert parse_sc(K.to_sc()) == K


def test_sc_round_trip_survives_sd_labels(two_triangles):
    # sd labels use the braces and bars admitted by the label alphabet.
    sd2 = two_triangles.barycentric_subdivision().barycentric_subdivision()
    assert parse_sc(sd2.to_sc()) == sd2


def test_sc_comments_and_blank_lines():
    K = parse_sc("# a comment\n\na b c\n# trailing\nb c d\n")
    assert K.f_vector() == (1, 4, 5, 2)


def test_sc_absorbed_face_warning():
    K, warnings = parse_sc_with_warnings("a b\nb\n")
    assert K.facets == ((0, 1),)
    assert warnings and "absorbed" in warnings[0] and "line 2" in warnings[0]


def test_sc_duplicate_listing_warns():
    _, warnings = parse_sc_with_warnings("a b\na b\n")
    assert len(warnings) == 1


def test_sc_bad_label_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_sc("a b\nx y!\n")
    assert exc.value.line == 2


def test_sc_repeated_vertex_reports_line():
    with pytest.raises(ParseError) as exc:
        parse_sc("a a\n")
    assert exc.value.line == 1


def test_sc_oversized_face_reports_line():
    with pytest.raises(ParseError):
        parse_sc("a b c d e\n")


def test_sc_empty_input_rejected():
    with pytest.raises(ParseError):
        parse_sc("# nothing here\n")


def test_fingerprint_stability(two_triangles):
    same = from_facets(["b c d", "a b c"])  # listing order must not matter
    assert same.fingerprint == two_triangles.fingerprint
    other = from_facets(["a b c", "b c e"])
    assert other.fingerprint != two_triangles.fingerprint

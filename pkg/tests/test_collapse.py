"""Elementary collapses: stepping, search, removal decisions, verification."""

import pytest

from shellsat import (
    CollapseCertificate,
    CollapseStep,
    apply_collapse,
    collapsible_after_removing,
    free_faces,
    from_facets,
    is_collapsible,
    verify_collapse,
)
from shellsat.collapse import collapse_violation, format_collapse, parse_collapse
from shellsat.errors import (
    ConnectivityError,
    MalformedCertificateError,
    NotFreeError,
    ParameterError,
    PurityError,
)
from shellsat.harness import enumerate_pure2, enumerate_connected_graphs, oracle_collapsible
from shellsat.outcomes import BudgetExceeded, Impossible, NotCollapsible


def step_of(K, free_labels, facet_labels):
    return CollapseStep(K.face_from_labels(free_labels.split()),
                        K.face_from_labels(facet_labels.split()))


# -- apply ---------------------------------------------------------------------

def test_collapse_triangle_along_edge(triangle):
    K = apply_collapse(triangle, step_of(triangle, "b c", "a b c"))
    assert K == from_facets(["a b", "a c"])


def test_collapse_path_leaf():
    path = from_facets(["a b", "b c"])
    K = apply_collapse(path, step_of(path, "c", "b c"))
    assert K == from_facets(["a b"])


def test_collapse_shared_edge_is_illegal(two_triangles):
    with pytest.raises(NotFreeError) as exc:
        apply_collapse(two_triangles, step_of(two_triangles, "b c", "a b c"))
    assert exc.value.blocking_facet == two_triangles.face_from_labels(["b", "c", "d"])


def test_collapse_empty_face_is_illegal(triangle):
    with pytest.raises(NotFreeError):
        apply_collapse(triangle, CollapseStep((), triangle.facets[0]))


def test_collapse_preserves_euler_characteristic():
    for K in enumerate_pure2(5, 4):
        current = K
        while True:
            steps = free_faces(current)
            if not steps:
                break
            nxt = apply_collapse(current, steps[0])
            assert (nxt.reduced_euler_characteristic()
                    == current.reduced_euler_characteristic())
            if nxt.dim == 0 and nxt.n_vertices == 1:
                break
            current = nxt


# -- free faces --------------------------------------------------------------------

def test_free_faces_of_solid_triangle(triangle):
    # Every proper nonempty face lies in the unique facet abc, so every one
    # of the 3 vertices and 3 edges is free.
    steps = free_faces(triangle)
    assert [s.free_face for s in steps] == [
        (0,), (0, 1), (0, 2), (1,), (1, 2), (2,)]
    assert all(s.facet == (0, 1, 2) for s in steps)


def test_free_faces_of_three_cycle(three_cycle):
    assert free_faces(three_cycle) == []


def test_free_faces_of_single_edge():
    edge = from_facets(["a b"])
    assert [(s.free_face, s.facet) for s in free_faces(edge)] == [
        ((0,), (0, 1)), ((1,), (0, 1))]


# -- collapsibility search ------------------------------------------------------------

def test_trees_are_collapsible():
    for facets in (["a b"], ["a b", "b c"], ["a b", "a c", "a d", "d e"]):
        tree = from_facets(facets)
        cert = is_collapsible(tree)
        assert isinstance(cert, CollapseCertificate)
        assert verify_collapse(tree, cert)


def test_three_cycle_not_collapsible(three_cycle):
    assert is_collapsible(three_cycle) == NotCollapsible()


def test_triangle_collapsible(triangle):
    cert = is_collapsible(triangle)
    assert verify_collapse(triangle, cert)
    assert cert.targets_point()


def test_collapsibility_needs_connected_input():
    with pytest.raises(ConnectivityError):
        is_collapsible(from_facets(["a b", "c d"]))


def test_collapse_budget(two_triangles):
    assert is_collapsible(two_triangles, 0) == BudgetExceeded(stage="collapse")


def test_search_agrees_with_oracle_small_corpus():
    """Exhaustive agreement on every instance with at most 12 nonempty faces."""
    corpus = [K for K in enumerate_pure2(5, 10) if sum(K.f_vector()[1:]) <= 12]
    for n in range(1, 7):
        corpus.extend(G for G in enumerate_connected_graphs(n)
                      if sum(G.f_vector()[1:]) <= 12)
    assert len(corpus) >= 40
    for K in corpus:
        result = is_collapsible(K)
        found = isinstance(result, CollapseCertificate)
        assert found == oracle_collapsible(K), K.facets
        if found:
            assert verify_collapse(K, result)


# -- collapsible after removing k triangles ---------------------------------------------

def test_triangle_removal_zero(triangle):
    removed, cert = collapsible_after_removing(triangle, 0)
    assert removed == frozenset()
    assert verify_collapse(triangle, cert)


def test_triangle_removal_one_impossible(triangle):
    # Euler gate: chi = 0 != 1.
    assert collapsible_after_removing(triangle, 1) == Impossible()


def test_two_triangles_removal_zero(two_triangles):
    removed, cert = collapsible_after_removing(two_triangles, 0)
    assert removed == frozenset()
    assert verify_collapse(two_triangles, cert)
    assert cert.targets_point()


def test_tetra_boundary_removal_one(tetra_boundary):
    assert tetra_boundary.reduced_euler_characteristic() == 1
    removed, cert = collapsible_after_removing(tetra_boundary, 1)
    assert len(removed) == 1
    assert verify_collapse(tetra_boundary, cert)
    assert cert.targets_point()


def test_removal_count_must_match_chi():
    for K in enumerate_pure2(4, 4):
        chi = K.reduced_euler_characteristic()
        result = collapsible_after_removing(K, chi, 200000)
        if isinstance(result, tuple):
            assert len(result[0]) == chi
        for k in (chi - 1, chi + 1):
            if k >= 0:
                assert collapsible_after_removing(K, k) == Impossible()


def test_removal_preconditions(three_cycle, triangle):
    with pytest.raises(PurityError):
        collapsible_after_removing(three_cycle, 0)
    with pytest.raises(ParameterError):
        collapsible_after_removing(triangle, -1)


# -- verification -----------------------------------------------------------------------

def test_verify_triangle_collapse_sequence(triangle):
    cert = CollapseCertificate(
        frozenset(),
        (step_of(triangle, "b c", "a b c"),
         step_of(triangle, "c", "a c"),
         step_of(triangle, "b", "a b")),
        from_facets(["a"]))
    assert verify_collapse(triangle, cert)


def test_verify_same_steps_fail_on_bowtie(bowtie):
    cert = CollapseCertificate(
        frozenset(),
        (step_of(bowtie, "b c", "a b c"),
         step_of(bowtie, "c", "a c"),
         step_of(bowtie, "b", "a b")),
        from_facets(["a"]))
    reason = collapse_violation(bowtie, cert)
    assert reason is not None and reason.startswith("step 1")
    assert not verify_collapse(bowtie, cert)


def test_verify_empty_certificate_is_identity(two_triangles):
    cert = CollapseCertificate(frozenset(), (), two_triangles)
    assert verify_collapse(two_triangles, cert)


def test_verify_wrong_target(triangle):
    cert = CollapseCertificate(
        frozenset(), (step_of(triangle, "b c", "a b c"),), from_facets(["a"]))
    assert not verify_collapse(triangle, cert)


def test_verify_rejects_alien_faces(triangle):
    cert = CollapseCertificate(frozenset(), (CollapseStep((0, 3), (0, 1, 2)),),
                               from_facets(["a"]))
    with pytest.raises(MalformedCertificateError):
        verify_collapse(triangle, cert)
    with pytest.raises(MalformedCertificateError):
        verify_collapse(triangle, CollapseCertificate(
            frozenset({(0, 1)}), (), triangle))


# -- certificate files ---------------------------------------------------------------------

def test_certificate_round_trip(tetra_boundary):
    _, cert = collapsible_after_removing(tetra_boundary, 1)
    text = format_collapse(tetra_boundary, cert)
    parsed = parse_collapse(text, tetra_boundary)
    assert parsed.removed_triangles == cert.removed_triangles
    assert parsed.steps == cert.steps
    assert parsed.target == cert.target
    assert verify_collapse(tetra_boundary, parsed)


def test_certificate_parse_errors(triangle):
    with pytest.raises(MalformedCertificateError):
        parse_collapse("b c  a b c\n# target:\na\n", triangle)  # missing arrow
    with pytest.raises(MalformedCertificateError):
        parse_collapse("# removed:\nb c -> a b c\n", triangle)  # no target
    with pytest.raises(MalformedCertificateError):
        parse_collapse("# removed:\nb z -> a b c\n# target:\na\n", triangle)


def test_certificate_fingerprint_mismatch(triangle, two_triangles):
    cert = is_collapsible(triangle)
    text = format_collapse(triangle, cert)
    with pytest.raises(MalformedCertificateError):
        parse_collapse(text, two_triangles)

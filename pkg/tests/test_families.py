"""Generator families: images, relations, surjectivity, and the span gap.

The bundled graph anchors everything with hand-computed images; the two
construction styles are then compared through their bounded image spans,
reproducing the separation the corrected construction exists to fix.
"""

import random

import pytest

from graphideal import (
    AdmissiblePair,
    CASE_NAMES,
    EdgePool,
    EdgeRef,
    LeavittAlgebra,
    PrimeField,
    QQ,
    build_generator_family,
    build_ideal_graph,
    build_legacy_graph,
    enumerate_admissible_pairs,
    image_span_gap,
    load_fixture,
    nonzero_vertex_images,
    phi_apply,
    preimage_word,
    spanning_descriptors,
    verify_family_relations,
    verify_surjectivity_window,
)
from graphideal.families import star_word
from graphideal.ideals import descriptor_element

from conftest import SEED, random_graph

POOL = EdgePool(omega_cap=2)


def corrected_family(field=QQ, trunc=4):
    g = load_fixture()
    pair = AdmissiblePair.make(g, {"x"}, {"v", "w"})
    A = LeavittAlgebra(g, field)
    built = build_ideal_graph(g, pair, max_len=trunc, pool=POOL)
    return g, pair, A, build_generator_family(A, built, pool=POOL)


def legacy_family(field=QQ, trunc=4):
    g = load_fixture()
    pair = AdmissiblePair.make(g, {"x"}, {"v", "w"})
    A = LeavittAlgebra(g, field)
    built = build_legacy_graph(g, pair, max_len=trunc, pool=POOL)
    return g, pair, A, build_generator_family(A, built, pool=POOL)


# -- image recipe ---------------------------------------------------------------


def test_fixture_vertex_images_match_hand_computation():
    g, pair, A, fam = corrected_family()
    gap_v = A.gap("v", pair.core)
    gap_w = A.gap("w", pair.core)
    assert fam.q["x"] == A.vertex("x")
    assert fam.q["v"] == gap_v
    assert fam.q["w"] == gap_w
    f_walk = A.edge("f")
    assert fam.q["f"] == f_walk * gap_v * f_walk.star()
    ef_walk = A.edge("e") * A.edge("f")
    assert fam.q["e.f"] == ef_walk * gap_v * ef_walk.star()


def test_fixture_edge_images_match_hand_computation():
    g, pair, A, fam = corrected_family()
    gap_v = A.gap("v", pair.core)
    gap_w = A.gap("w", pair.core)
    assert fam.t[EdgeRef("gv", 0)] == A.edge("gv", 0)
    assert fam.t[EdgeRef("gv", 1)] == A.edge("gv", 1)
    assert fam.t[EdgeRef("via(f)", 0)] == A.edge("f") * gap_v
    assert fam.t[EdgeRef("via(e)", 0)] == A.edge("e") * gap_w


def test_legacy_images_keep_direct_edges_out():
    g, pair, A, fam = legacy_family()
    # the legacy graph's proxies stand for single edges e and f
    gap_v = A.gap("v", pair.core)
    gap_w = A.gap("w", pair.core)
    assert fam.q["e"] == A.edge("e") * gap_w * A.edge("e").star()
    assert fam.t[EdgeRef("via(f)", 0)] == A.edge("f") * gap_v


# -- relation verification ---------------------------------------------------------


def test_relations_green_on_fixture_both_styles():
    for maker in (corrected_family, legacy_family):
        _, _, _, fam = maker()
        report = verify_family_relations(fam)
        assert report.ok, [grp.name for grp in report.groups if not grp.ok]


def test_relation_report_group_inventory():
    _, _, _, fam = corrected_family()
    report = verify_family_relations(fam)
    names = [grp.name for grp in report.groups]
    assert names == [
        "vertex-idempotents",
        "vertex-orthogonality",
        "edge-supports",
        "star-products",
        "vertex-expansion",
        "path-families-disjoint",
        "entry-prefix-free",
        "breaker-prefix-products",
        "gap-blocks-outside-edges",
        "image-containment",
    ]
    expansion = report.group("vertex-expansion")
    reasons = {s.reason for s in expansion.skipped}
    assert reasons == {
        "sink: no expansion applies",
        "infinite emitter: expansion not required",
    }


def test_relations_green_over_small_prime_field():
    _, _, _, fam = corrected_family(field=PrimeField(2))
    assert verify_family_relations(fam).ok


def test_relations_green_on_randomized_pairs():
    rng = random.Random(SEED + 40)
    done = 0
    for _ in range(5):
        g = random_graph(rng, max_vertices=4, max_families=4)
        A = LeavittAlgebra(g, QQ)
        for pair in enumerate_admissible_pairs(g):
            built = build_ideal_graph(g, pair, max_len=3, pool=POOL)
            fam = build_generator_family(A, built, pool=POOL)
            report = verify_family_relations(fam)
            assert report.ok, (
                pair.label(),
                [grp.name for grp in report.groups if not grp.ok],
            )
            done += 1
    assert done >= 5


def test_vertex_images_nonzero_conclusion():
    _, _, _, fam = corrected_family()
    report = nonzero_vertex_images(fam)
    assert report.ok
    assert all(flag for _, flag in report.entries)
    assert "graded-uniqueness" in report.conclusion


# -- surjectivity window -------------------------------------------------------------


def test_surjectivity_on_fixture_window():
    g, pair, A, fam = corrected_family()
    report = verify_surjectivity_window(fam, degree_bound=4)
    assert report.ok
    assert report.failures == []
    assert set(report.tallies) == set(CASE_NAMES)
    assert sum(report.tallies.values()) == 2 * report.checked
    assert report.tallies["core_source"] > 0
    assert report.tallies["breaker_entry_edge"] > 0
    assert report.tallies["entry_proxy"] == 0  # no entry paths on this graph
    assert report.tallies["breaker_proxy_then_entry"] > 0
    assert report.tallies["breaker_vertex"] > 0
    assert report.tallies["breaker_proxy"] > 0


def test_surjectivity_rejects_bound_beyond_truncation():
    _, _, _, fam = corrected_family(trunc=2)
    with pytest.raises(ValueError):
        verify_surjectivity_window(fam, degree_bound=3)


def test_single_preimage_word_content():
    g, pair, A, fam = corrected_family()
    e0 = next(e for e in g.pool_edges(POOL) if e.family == "e")
    from graphideal.ideals import Descriptor

    d = Descriptor(g.make_path([e0]), g.empty_path("w"), "w")
    word, case_a, case_b = preimage_word(fam, d)
    assert case_a == "breaker_proxy"
    assert case_b == "breaker_vertex"
    assert word == (("t", "via(e)", 0), ("q", "w"))
    assert phi_apply(fam, word) == A.edge("e") * A.gap("w", pair.core)


def test_phi_words_respect_star():
    g, pair, A, fam = corrected_family()
    rng = random.Random(SEED + 41)
    descs = spanning_descriptors(g, pair, bound=3, pool=POOL)
    rng.shuffle(descs)
    for d in descs[:25]:
        word, _, _ = preimage_word(fam, d)
        assert phi_apply(fam, star_word(word)) == phi_apply(fam, word).star()


def test_phi_rejects_bad_words():
    _, _, _, fam = corrected_family()
    with pytest.raises(ValueError):
        phi_apply(fam, ())
    with pytest.raises(ValueError):
        phi_apply(fam, (("q", "nope"),))
    with pytest.raises(ValueError):
        phi_apply(fam, (("t", "via(e.f.e.f.e)", 0),))
    with pytest.raises(ValueError):
        phi_apply(fam, (("banana", "x"),))


# -- image span gap: the two styles separated ------------------------------------------


def run_gap(style, field=QQ, degree=4, trunc=4):
    g = load_fixture()
    pair = AdmissiblePair.make(g, {"x"}, {"v", "w"})
    A = LeavittAlgebra(g, field)
    builder = build_legacy_graph if style == "legacy" else build_ideal_graph
    built = builder(g, pair, max_len=trunc, pool=POOL)
    return A, pair, image_span_gap(A, built, degree_bound=degree, pool=POOL)


def test_legacy_span_has_a_gap_and_corrected_span_does_not():
    _, _, legacy = run_gap("legacy")
    _, _, corrected = run_gap("corrected")
    assert legacy.relations.ok and corrected.relations.ok
    assert not legacy.gap_empty
    assert corrected.gap_empty
    assert legacy.span_rank < legacy.window_rank
    assert corrected.span_rank >= corrected.window_rank


def test_legacy_gap_contains_certified_witnesses():
    A, pair, legacy = run_gap("legacy")
    by_word = {w.descriptor: w for w in legacy.missing}
    key = "e.f . gap(v) . (v)!"
    assert key in by_word
    assert by_word[key].certified_absent
    ef_gap = A.edge("e") * A.edge("f") * A.gap("v", pair.core)
    assert by_word[key].element == ef_gap


def test_legacy_span_still_contains_the_probe_witness():
    _, _, legacy = run_gap("legacy")
    assert legacy.witness_in_span["via(e)"] is True


def test_legacy_probe_fails_with_exactly_zero_product():
    A, pair, legacy = run_gap("legacy")
    probe = legacy.probe
    assert probe is not None
    assert not probe.is_identity
    assert probe.failure is not None
    assert probe.failure.side == "left"
    assert probe.failure.product.is_zero()
    assert probe.failure.witness == A.edge("e") * A.gap("w", pair.core)


def test_gap_verdicts_stable_across_fields():
    def snapshot(style, field):
        _, _, rep = run_gap(style, field=field)
        return (
            rep.gap_empty,
            tuple(sorted(w.descriptor for w in rep.missing)),
            rep.probe.is_identity if rep.probe else None,
        )

    for style in ("legacy", "corrected"):
        assert snapshot(style, QQ) == snapshot(style, PrimeField(5))


def test_no_breaker_choice_leaves_no_gap_for_either_style():
    rng = random.Random(SEED + 42)
    done = 0
    for _ in range(4):
        g = random_graph(rng, max_vertices=4, max_families=4, allow_omega=False)
        A = LeavittAlgebra(g, QQ)
        for pair in enumerate_admissible_pairs(g):
            for builder in (build_ideal_graph, build_legacy_graph):
                built = builder(g, pair, max_len=3, pool=POOL)
                rep = image_span_gap(A, built, degree_bound=2, pool=POOL)
                assert rep.gap_empty, (pair.label(), builder.__name__)
                assert any("coincide" in n for n in rep.notes)
                done += 1
    assert done >= 8

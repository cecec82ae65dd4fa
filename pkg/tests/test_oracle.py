"""Engine soundness against the bounded-quotient oracle.

The oracle represents classes as coordinate vectors modulo the expansion
relations, reduced in the opposite direction from the engine's rewriting
(its canonical form pushes toward high degree, the engine's toward the
chosen special edges).  Agreement between the two independent canonical
forms on random raw spellings is the soundness check: >= 500 random
elements of degree <= 5 across 5 fixed graphs, plus >= 200 associativity
triples and >= 200 involution pairs, all exact.
"""

import random

import pytest

from graphideal import BoundedQuotient, EdgePool, LeavittAlgebra, QQ, PrimeField

from conftest import SEED, five_graphs, paths_into

POOL = EdgePool(omega_cap=2)
GRAPH_NAMES = sorted(five_graphs())


def raw_terms(A, rng, *, max_alpha=3, max_beta=2, max_terms=3):
    g = A.graph
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        t = rng.choice(g.vertices)
        alpha = rng.choice(paths_into(g, t, max_len=max_alpha))
        beta = rng.choice(paths_into(g, t, max_len=max_beta))
        terms.append((rng.choice([-2, -1, 1, 2, 3]), alpha, beta))
    return terms


def respell(terms, rng):
    """Same class, different spelling: shuffle and split one coefficient."""
    out = list(terms)
    rng.shuffle(out)
    c, a, b = out[0]
    out[0] = (c - 1, a, b)
    out.append((1, a, b))
    return out


@pytest.mark.parametrize("name", GRAPH_NAMES)
def test_oracle_certifies_engine_normal_forms(name):
    """100 random degree<=5 spellings per graph: 5 x 100 = 500 total."""
    g = five_graphs()[name]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=5, pool=POOL)
    rng = random.Random(SEED + 10)
    nonzero_seen = 0
    for _ in range(100):
        raw = raw_terms(A, rng)
        x = A.combination(raw)
        assert oracle.certifies(raw, x)
        assert oracle.certifies(respell(raw, rng), x)
        if not x.is_zero():
            nonzero_seen += 1
            assert not oracle.is_zero(x)
    assert nonzero_seen > 50  # the stream is not degenerate


@pytest.mark.parametrize("name", GRAPH_NAMES)
def test_oracle_accepts_expansion_respellings(name):
    """Expanding a term over its target's edges must not change the class."""
    g = five_graphs()[name]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=5, pool=POOL)
    rng = random.Random(SEED + 11)
    regular = [
        v
        for v in g.vertices
        if g.out_families(v) and not any(f.is_omega for f in g.out_families(v))
    ]
    if not regular:
        pytest.skip("graph has no regular vertex to expand at")
    done = 0
    for _ in range(200):
        t = rng.choice(regular)
        alpha = rng.choice(paths_into(g, t, max_len=1))
        beta = rng.choice(paths_into(g, t, max_len=1))
        coeff = rng.choice([-1, 1, 2])
        expanded = []
        for e in g.pool_edges_from(t, POOL):
            expanded.append(
                (coeff, g.concat(alpha, g.make_path([e])), g.concat(beta, g.make_path([e])))
            )
        x = A.combination([(coeff, alpha, beta)])
        assert oracle.certifies(expanded, x)
        done += 1
        if done >= 40:
            break
    assert done >= 1


def test_oracle_separates_unequal_elements():
    g = five_graphs()["fixture"]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=5, pool=POOL)
    rng = random.Random(SEED + 12)
    disagreements = 0
    for _ in range(100):
        x = A.combination(raw_terms(A, rng))
        y = A.combination(raw_terms(A, rng))
        same_engine = x == y
        same_oracle = oracle.equivalent(x, y)
        assert same_engine == same_oracle
        if not same_engine:
            disagreements += 1
    assert disagreements > 50


def test_oracle_monomial_coordinates_are_injective_on_normal_forms():
    """Distinct engine normal-form monomials stay independent in the oracle."""
    from graphideal import Monomial, RowSpace

    g = five_graphs()["cycle_exit"]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=4, pool=POOL)
    rng = random.Random(SEED + 13)
    space = RowSpace(QQ, key=Monomial.key)
    distinct: set = set()
    for _ in range(300):
        x = A.combination(raw_terms(A, rng, max_alpha=2, max_beta=2, max_terms=1))
        if x.is_zero():
            continue
        for m in x.monomials():
            vec = oracle.coordinates(A.monomial(m.alpha, m.beta))
            fresh = space.insert(vec)
            assert fresh == (m.key() not in distinct)
            distinct.add(m.key())
    assert len(distinct) >= 15
    assert space.rank == len(distinct)


def test_oracle_rejects_overweight_elements():
    g = five_graphs()["two_loops"]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=2, pool=POOL)
    t = "z"
    deep = paths_into(g, t, max_len=3)
    alpha = max(deep, key=len)
    with pytest.raises(ValueError):
        oracle.vector_of([(1, alpha, g.empty_path(alpha.source))])


@pytest.mark.parametrize("name", GRAPH_NAMES)
def test_associativity_on_random_triples(name):
    """40 triples per graph: 5 x 40 = 200 total."""
    g = five_graphs()[name]
    A = LeavittAlgebra(g, QQ)
    rng = random.Random(SEED + 14)
    for _ in range(40):
        x = A.combination(raw_terms(A, rng, max_alpha=2, max_beta=2))
        y = A.combination(raw_terms(A, rng, max_alpha=2, max_beta=2))
        z = A.combination(raw_terms(A, rng, max_alpha=2, max_beta=2))
        assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("name", GRAPH_NAMES)
def test_involution_antihomomorphism_on_random_pairs(name):
    """40 pairs per graph: 5 x 40 = 200 total."""
    g = five_graphs()[name]
    A = LeavittAlgebra(g, QQ)
    rng = random.Random(SEED + 15)
    for _ in range(40):
        x = A.combination(raw_terms(A, rng))
        y = A.combination(raw_terms(A, rng))
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x


def test_oracle_over_prime_field():
    g = five_graphs()["fixture"]
    A = LeavittAlgebra(g, PrimeField(5))
    oracle = BoundedQuotient(A, degree=4, pool=POOL)
    rng = random.Random(SEED + 16)
    for _ in range(50):
        raw = raw_terms(A, rng, max_alpha=2, max_beta=2)
        x = A.combination(raw)
        assert oracle.certifies(raw, x)


def test_oracle_relation_rank_positive_when_regular_vertices_exist():
    g = five_graphs()["chain_parallel"]
    A = LeavittAlgebra(g, QQ)
    oracle = BoundedQuotient(A, degree=4, pool=POOL)
    assert oracle.relation_rank > 0

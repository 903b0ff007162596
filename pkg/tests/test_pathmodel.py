"""Chain enumeration, cuts, partial sums, and the counting rule.

The headline check is a brute-force oracle: enumerate every candidate
(step sequence, cut tuple) pair directly from the orbit poset, with its
own BFS notion of cut-admissible comparability, and compare the full set
against the library's enumeration.
"""

import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lschains.charoracle import tensor_decompose_oracle, weyl_dim
from lschains.errors import InputError
from lschains.pathmodel import (
    LSChain,
    b_order_leq,
    chain_depth,
    chain_endpoint,
    delta_sequence,
    enumerate_ls_chains,
    tensor_decompose,
    tensor_multiplicity,
)
from lschains.ratmat import inverse, matvec
from lschains.rootsys import build_root_system, weyl_orbit_poset


def _brute_leq(poset, xi, yi, b):
    """x < y through covers with b*m integral, by plain BFS (no masks)."""
    ups = {}
    for cov in poset.covers:
        ups.setdefault(cov.upper, []).append(cov)
    seen = {yi}
    stack = [yi]
    while stack:
        cur = stack.pop()
        for cov in ups.get(cur, []):
            if (b * cov.m).denominator == 1 and cov.lower not in seen:
                seen.add(cov.lower)
                stack.append(cov.lower)
    return xi in seen and xi != yi


def brute_chains(R, mu):
    """Every (steps, cuts) pair that satisfies the definition, by exhaustion."""
    poset = weyl_orbit_poset(R, mu)
    n = len(poset.elements)
    bvals = sorted(
        {Q(a, d) for d in range(2, poset.max_pairing + 1) for a in range(1, d)}
    )
    sequences = [[k] for k in range(n)]
    frontier = [[k] for k in range(n)]
    while frontier:
        nxt = []
        for seq in frontier:
            for k in range(n):
                if _brute_leq(poset, seq[-1], k, Q(1)):
                    continue  # only ascend
                if k != seq[-1] and _brute_leq(poset, k, seq[-1], Q(1)):
                    nxt.append(seq + [k])
        sequences.extend(nxt)
        frontier = nxt
    out = set()
    for seq in sequences:
        ell = len(seq) - 1
        rev = list(reversed(seq))  # ascending order mu_0 < ... < mu_l
        for cuts in itertools.combinations(bvals, ell):
            if all(
                _brute_leq(poset, rev[t], rev[t + 1], cuts[t]) for t in range(ell)
            ):
                out.add(
                    (tuple(poset.elements[k] for k in rev), tuple(cuts))
                )
    return out


BRUTE_CASES = [
    ("A1", (0,)), ("A1", (1,)), ("A1", (2,)), ("A1", (3,)), ("A1", (4,)),
    ("A2", (1, 0)), ("A2", (1, 1)), ("A2", (2, 1)),
    ("B2", (1, 0)), ("B2", (0, 1)), ("B2", (1, 1)), ("B2", (0, 2)),
    ("C2", (1, 1)), ("G2", (1, 0)), ("G2", (0, 1)),
    ("A3", (1, 0, 1)),
]


@pytest.mark.parametrize("label,mu", BRUTE_CASES)
def test_enumeration_matches_brute_force(label, mu):
    R = build_root_system(label)
    got = {(c.steps, c.cuts) for c in enumerate_ls_chains(R, mu)}
    assert got == brute_chains(R, mu)


@pytest.mark.parametrize("label,mu", BRUTE_CASES)
def test_chain_count_is_dimension(label, mu):
    R = build_root_system(label)
    assert len(enumerate_ls_chains(R, mu)) == weyl_dim(R, mu)


def test_chain_counts_rank_one():
    R = build_root_system("A1")
    for m in range(7):
        assert len(enumerate_ls_chains(R, (m,))) == m + 1


def test_zero_shape_single_chain():
    R = build_root_system("B2")
    chains = enumerate_ls_chains(R, (0, 0))
    assert len(chains) == 1
    assert chains[0].steps == ((0, 0),)
    assert chains[0].cuts == ()


def test_rank_one_chains_explicit():
    R = build_root_system("A1")
    one = enumerate_ls_chains(R, (1,))
    assert {c.steps for c in one} == {((1,),), ((-1,),)}
    assert all(c.cuts == () for c in one)
    two = enumerate_ls_chains(R, (2,))
    keyed = {(c.steps, c.cuts) for c in two}
    assert keyed == {
        (((2,),), ()),
        (((-2,),), ()),
        (((-2,), (2,)), (Q(1, 2),)),
    }


def test_enumeration_is_sorted_and_duplicate_free():
    # canonical order: orbit-poset indices of the steps, then the cuts
    R = build_root_system("B2")
    P = weyl_orbit_poset(R, (1, 1))
    chains = enumerate_ls_chains(R, (1, 1))
    keys = [(tuple(P.index[s] for s in c.steps), c.cuts) for c in chains]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumeration_rejects_non_dominant():
    R = build_root_system("A2")
    with pytest.raises(InputError):
        enumerate_ls_chains(R, (-1, 0))


def test_chain_needs_matching_cut_count():
    with pytest.raises(InputError):
        LSChain((2,), ((-2,), (2,)), ())


# ---------------------------------------------------------------------------
# the cut order

def test_b_order_is_strict():
    R = build_root_system("B2")
    P = weyl_orbit_poset(R, (1, 1))
    for x in P.elements:
        for b in (Q(1, 2), Q(1)):
            assert not b_order_leq(P, x, x, b)


def test_b_order_rank_one_doubling():
    R = build_root_system("A1")
    P = weyl_orbit_poset(R, (2,))
    for b, expect in [(Q(1, 3), False), (Q(1, 2), True), (Q(2, 3), False), (Q(1), True)]:
        assert b_order_leq(P, (-2,), (2,), b) is expect


def test_b_order_at_one_is_plain_reachability():
    R = build_root_system("B2")
    P = weyl_orbit_poset(R, (2, 1))
    for xi, yi in itertools.product(range(len(P.elements)), repeat=2):
        got = b_order_leq(P, P.elements[xi], P.elements[yi], Q(1))
        assert got is _brute_leq(P, xi, yi, Q(1))


def test_b_order_validates_inputs():
    R = build_root_system("A1")
    P = weyl_orbit_poset(R, (1,))
    with pytest.raises(InputError):
        b_order_leq(P, (1,), (-1,), Q(0))
    with pytest.raises(InputError):
        b_order_leq(P, (1,), (-1,), Q(3, 2))
    with pytest.raises(InputError):
        b_order_leq(P, (5,), (-1,), Q(1, 2))


# ---------------------------------------------------------------------------
# partial sums, endpoint, depth

def test_delta_of_trivial_chain():
    c = LSChain((2, 0), ((2, 0),), ())
    assert delta_sequence(c) == ((0, 0), (2, 0))
    assert chain_endpoint(c) == (2, 0)
    assert chain_depth(c) == (0, 0)


def test_delta_of_folded_rank_one_chain():
    c = LSChain((2,), ((-2,), (2,)), (Q(1, 2),))
    assert delta_sequence(c) == ((0,), (-1,), (0,))
    assert chain_endpoint(c) == (0,)
    assert chain_depth(c) == (-1,)


def test_depth_of_lowest_chain():
    # -mu is the orbit minimum for B2, so the one-step chain there bottoms out
    c = LSChain((1, 1), ((-1, -1),), ())
    assert chain_depth(c) == (-1, -1)
    assert chain_endpoint(c) == (-1, -1)


def test_delta_alternative_expression():
    # delta_t = b_t*mu_{t-1} - sum_{j<t} b_j*(mu_j - mu_{j-1}), pure algebra
    R = build_root_system("G2")
    for chain in enumerate_ls_chains(R, (1, 1)):
        deltas = delta_sequence(chain)
        cuts = (Q(0),) + chain.cuts + (Q(1),)
        for t in range(1, len(chain.steps) + 1):
            direct = tuple(
                cuts[t] * chain.steps[t - 1][i]
                - sum(
                    cuts[j] * (chain.steps[j][i] - chain.steps[j - 1][i])
                    for j in range(1, t)
                )
                for i in range(R.rank)
            )
            assert deltas[t] == direct


@pytest.mark.parametrize("label,mu", [("A2", (1, 1)), ("B2", (1, 1)), ("G2", (1, 0))])
def test_endpoint_congruent_to_shape_mod_root_lattice(label, mu):
    R = build_root_system(label)
    cartan_inv = inverse(tuple(tuple(Q(x) for x in row) for row in R.cartan))
    for chain in enumerate_ls_chains(R, mu):
        diff = tuple(a - b for a, b in zip(chain_endpoint(chain), mu))
        coords = matvec(tuple(zip(*cartan_inv)), diff)
        assert all(x.denominator == 1 for x in coords)


@pytest.mark.parametrize("label,mu", [("B2", (1, 1)), ("G2", (0, 1)), ("C3", (1, 0, 1))])
def test_every_chain_satisfies_definition(label, mu):
    R = build_root_system(label)
    P = weyl_orbit_poset(R, mu)
    for chain in enumerate_ls_chains(R, mu):
        assert chain.shape == mu
        assert all(s in P.index for s in chain.steps)
        assert all(0 < b < 1 for b in chain.cuts)
        assert all(b1 < b2 for b1, b2 in zip(chain.cuts, chain.cuts[1:]))
        for prev, cur, b in zip(chain.steps, chain.steps[1:], chain.cuts):
            assert b_order_leq(P, prev, cur, b)
        # runtime integrality contract
        chain_endpoint(chain)
        chain_depth(chain)


def test_dominant_initial_step_has_zero_depth():
    R = build_root_system("B2")
    for chain in enumerate_ls_chains(R, (2, 1)):
        if chain.steps[-1] == (2, 1) and len(chain.steps) == 1:
            assert chain_depth(chain) == (0, 0)


# ---------------------------------------------------------------------------
# the counting rule

def test_tensor_with_trivial_factor():
    R = build_root_system("B2")
    assert tensor_multiplicity(R, (1, 1), (1, 1), (0, 0)) == 1
    assert tensor_multiplicity(R, (1, 0), (1, 1), (0, 0)) == 0
    dec = tensor_decompose(R, (1, 1), (0, 0))
    assert dec.components == {(1, 1): 1}


def test_rank_one_squares():
    R = build_root_system("A1")
    assert tensor_multiplicity(R, (2,), (1,), (1,)) == 1
    assert tensor_multiplicity(R, (0,), (1,), (1,)) == 1
    assert tensor_multiplicity(R, (1,), (1,), (1,)) == 0


def test_a2_bifundamental_product():
    R = build_root_system("A2")
    dec = tensor_decompose(R, (1, 0), (0, 1))
    assert dec.components == {(1, 1): 1, (0, 0): 1}
    assert 3 * 3 == sum(m * weyl_dim(R, l) for l, m in dec.components.items())


def test_b2_mixed_product_matches_oracle():
    R = build_root_system("B2")
    dec = tensor_decompose(R, (1, 0), (0, 1))
    assert dec.components == tensor_decompose_oracle(R, (1, 0), (0, 1)).components
    assert dec.components == {(1, 1): 1, (0, 1): 1}


def test_g2_fundamental_square_dimension():
    R = build_root_system("G2")
    dec = tensor_decompose(R, (1, 0), (1, 0))
    total = sum(m * weyl_dim(R, l) for l, m in dec.components.items())
    assert total == weyl_dim(R, (1, 0)) ** 2 == 49


@pytest.mark.parametrize("label,bound", [("A1", 3), ("A2", 2), ("B2", 2), ("C2", 2)])
def test_oracle_equivalence_sweep(label, bound):
    R = build_root_system(label)
    pool = list(itertools.product(range(bound + 1), repeat=R.rank))
    for mu, nu in itertools.product(pool, repeat=2):
        assert (
            tensor_decompose(R, mu, nu).components
            == tensor_decompose_oracle(R, mu, nu).components
        )


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_tensor_dimension_consistency(label):
    R = build_root_system(label)
    pool = list(itertools.product(range(3), repeat=2))
    for mu, nu in itertools.combinations_with_replacement(pool, 2):
        dec = tensor_decompose(R, mu, nu)
        total = sum(m * weyl_dim(R, l) for l, m in dec.components.items())
        assert total == weyl_dim(R, mu) * weyl_dim(R, nu)
        assert all(m > 0 for m in dec.components.values())
        assert all(R.is_dominant(l) for l in dec.components)


def test_multiplicity_of_highest_piece():
    # the top component mu+nu always appears exactly once
    R = build_root_system("G2")
    for mu, nu in [((1, 0), (0, 1)), ((2, 0), (1, 1))]:
        top = tuple(a + b for a, b in zip(mu, nu))
        assert tensor_multiplicity(R, top, mu, nu) == 1


@given(st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=25, deadline=None)
def test_rank_one_clebsch_gordan(a, b):
    # V(a) (x) V(b) = sum of V(k) for k = |a-b|, |a-b|+2, ..., a+b
    R = build_root_system("A1")
    dec = tensor_decompose(R, (a,), (b,))
    expected = {(k,): 1 for k in range(abs(a - b), a + b + 1, 2)}
    assert dec.components == expected


def test_tensor_rejects_bad_weights():
    R = build_root_system("A2")
    with pytest.raises(InputError):
        tensor_decompose(R, (1, -1), (0, 0))
    with pytest.raises(InputError):
        tensor_multiplicity(R, (1, 0, 0), (1, 0), (0, 0))

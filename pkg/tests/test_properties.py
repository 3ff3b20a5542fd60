"""Randomized amalgams of cyclic and small permutation groups."""

import math

from hypothesis import given, settings, strategies as st

from rfring.amalgam import make_amalgam, n_p, n_torsion, oracle_agreement, torsion_classes
from rfring.characters import character_table, verify_table
from rfring.groups import from_permutations, hom, make_cyclic
from rfring.kbook import k_ranks
from rfring.repring import check_ring, project, rf_ring, rf_ring_p


@st.composite
def cyclic_amalgams(draw):
    d = draw(st.integers(1, 4))
    a = d * draw(st.integers(1, 3))
    b = d * draw(st.integers(1, 3))
    H, G1, G2 = make_cyclic(d), make_cyclic(a), make_cyclic(b)
    units = [u for u in range(1, d + 1) if math.gcd(u, d) == 1]
    u1, u2 = draw(st.sampled_from(units)), draw(st.sampled_from(units))
    images1 = {"g": f"g^{(a // d) * u1 % a}"} if d > 1 else {}
    images2 = {"g": f"g^{(b // d) * u2 % b}"} if d > 1 else {}
    return make_amalgam(G1, G2, H, hom(H, G1, images1), hom(H, G2, images2))


def orders_primes(A):
    return sorted({p for o in torsion_classes(A).orders for p in range(2, o + 1)
                   if o % p == 0 and all(p % q for q in range(2, p))})


@settings(max_examples=40, deadline=None)
@given(cyclic_amalgams())
def test_rank_matches_torsion_count(A):
    R = rf_ring(A)
    assert R.rank == n_torsion(A)
    assert check_ring(R) == []
    for p in orders_primes(A):
        assert rf_ring_p(A, p).rank == n_p(A, p)
        assert project(R, p).basis == rf_ring_p(A, p).basis


@settings(max_examples=25, deadline=None)
@given(cyclic_amalgams())
def test_fusion_matches_oracle(A):
    assert oracle_agreement(A, 4) == []


@settings(max_examples=25, deadline=None)
@given(cyclic_amalgams())
def test_cyclic_fusion_count(A):
    # abelian factors: classes are elements, and the edge images are identified pairwise
    assert n_torsion(A) == A.left.order + A.right.order - A.edge.order


@settings(max_examples=25, deadline=None)
@given(cyclic_amalgams(), st.sampled_from([2, 3, 5]))
def test_v_p_consistent(A, p):
    r = k_ranks(A, p)
    assert r.v_p == r.n_p_gamma - r.n_p_left - r.n_p_right + r.n_p_edge
    assert r.ok


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["(1 2)", "(1 2 3)", "(1 2)(3 4)", "(1 2 3 4)", "(1 3)"]),
       st.sampled_from(["(1 2 3 4)", "(2 3 4)", "(1 2)", "(3 4)"]))
def test_character_tables_of_subgroups_of_s4(a, b):
    G = from_permutations(4, [a, b])
    assert verify_table(character_table(G)) == []


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["(1 2)", "(1 3)", "(2 3)"]), st.sampled_from(["(1 2)", "(1 3)", "(2 3)"]))
def test_s3_amalgams_over_c2(t1, t2):
    S3 = from_permutations(3, ["(1 2)", "(1 2 3)"])
    C2 = make_cyclic(2)
    A = make_amalgam(S3, S3, C2, hom(C2, S3, {"g": t1}), hom(C2, S3, {"g": t2}))
    assert n_torsion(A) == 4
    assert rf_ring(A).rank == 4
    assert oracle_agreement(A, 4) == []

import pytest
from hypothesis import given, settings, strategies as st

from rfring.amalgam import AmalgamError, make_amalgam
from rfring.groups import direct_product, from_permutations, hom, make_cyclic
from rfring.kbook import (REFERENCE_CLASS_NUMBERS, GLRankInput, GLReport, KBookError, KReport,
                          delta_generator_action, gl_rank_check, invariant_rank, k_ranks)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_sl2z_reports(sl2z):
    r = k_ranks(sl2z, 2)
    assert (r.n_p_gamma, r.n_p_left, r.n_p_right, r.n_p_edge) == (4, 4, 2, 2)
    assert (r.v_p, r.rank_K0, r.rank_K1, r.lattice_rank) == (0, 4, 0, 4)
    assert r.ok
    r = k_ranks(sl2z, 3)
    assert (r.n_p_gamma, r.n_p_left, r.n_p_right, r.n_p_edge, r.v_p) == (3, 1, 3, 1, 0)
    with pytest.raises(AmalgamError):
        k_ranks(sl2z, 9)


def test_excluding_identity(sl2z):
    r = k_ranks(sl2z, 2, include_identity=False)
    assert r.n_p_gamma == 3 and r.v_p == 0 and r.ok
    assert KReport.from_json(r.to_json()) == r


@pytest.mark.parametrize("name", ["degenerate_c2", "degenerate_c3", "degenerate_c4_twisted",
                                  "degenerate_s3", "trivial"])
def test_degenerate_amalgams(doc, name):
    A = doc.amalgam(name)
    for p in (2, 3, 5):
        assert k_ranks(A, p).v_p == 0


def test_free_product_and_s3_edge(doc):
    r = k_ranks(doc.amalgam("c3_free_c3"), 3)
    assert r.v_p == 5 - 3 - 3 + 1 == 0
    r = k_ranks(doc.amalgam("s4_s3_s4"), 2)
    assert r.v_p >= 0 and r.ok


def test_relabeling_invariance(doc):
    A = doc.amalgam("a4_c3_s3")
    S3b = from_permutations(3, ["(1 2 3)", "(2 3)"])
    A4b = from_permutations(4, ["(1 2)(3 4)", "(2 3 4)"])
    C3 = make_cyclic(3)
    B = make_amalgam(A4b, S3b, C3, hom(C3, A4b, {"g": "(2 3 4)"}), hom(C3, S3b, {"g": "(1 2 3)"}))
    for p in (2, 3):
        assert k_ranks(A, p).v_p == k_ranks(B, p).v_p


def test_gl_examples():
    r = gl_rank_check(GLRankInput(5, 1, (1,)))
    assert (r.rk_inv, r.t, r.rk_RF, r.ok) == (2, 1, 2, True)
    r = gl_rank_check(GLRankInput(23, 3, (1, 1, 1)))
    assert (r.rk_inv, r.t, r.rk_RF) == (6, 3, 4)
    r = gl_rank_check(GLRankInput(23, 3, (2, 1)))
    assert (r.rk_inv, r.t, r.rk_RF) == (5, 2, 4)
    assert GLReport.from_json(r.to_json()) == r


def test_gl_input_validation():
    for args in ((4, 1, (1,)), (2, 1, (1,)), (7, 0, ()), (7, 2, (4,)), (7, 3, (1, 1)),
                 (7, 5, (5,))):
        with pytest.raises(KBookError):
            GLRankInput(*args)


def test_delta_action_is_a_permutation():
    inp = GLRankInput(13, 7, (4, 2, 1))
    perm = delta_generator_action(inp)
    assert sorted(perm) == list(range(7 * 13))
    x, steps = 0, 0
    while True:
        x = perm[x]
        steps += 1
        if x == 0:
            break
    # the trivial character of copy 0 cycles through its orbit of 4 copies
    assert steps == 4


def test_reference_table():
    for p, cl in REFERENCE_CLASS_NUMBERS.items():
        assert gl_rank_check(GLRankInput(p, cl, (cl,))).ok


@st.composite
def gl_inputs(draw):
    p = draw(st.sampled_from(PRIMES))
    divisors = [d for d in range(1, p) if (p - 1) % d == 0]
    cl = draw(st.integers(1, 12))
    orbits = []
    while sum(orbits) < cl:
        room = [d for d in divisors if d <= cl - sum(orbits)]
        orbits.append(draw(st.sampled_from(room)))
    return GLRankInput(p, cl, tuple(orbits))


@settings(max_examples=60, deadline=None)
@given(gl_inputs())
def test_rank_identity(inp):
    r = gl_rank_check(inp)
    assert r.rk_RF == 1 + inp.class_number
    # an orbit of size s has stabilizer of order (p - 1) / s, leaving 1 + s invariants
    assert invariant_rank(inp) == inp.t + inp.class_number

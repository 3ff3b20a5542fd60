import itertools
import pytest

from rfring.amalgam import (LEFT, RIGHT, AmalgamError, make_amalgam, n_p, n_torsion,
                            oracle_agreement, oracle_conjugacy, torsion_classes,
                            verify_certificates)
from rfring.groups import hom, identity_hom, make_cyclic

EXPECTED = {
    "sl2z": [1, 2, 3, 3, 4, 4, 6, 6],
    "c2_free_c2": [1, 2, 2],
    "c3_free_c3": [1, 3, 3, 3, 3],
    "s3_free_c4": [1, 2, 2, 3, 4, 4],
    "pgl2z": [1, 2, 2, 2, 3],
    "degenerate_c2": [1, 2],
    "degenerate_s3": [1, 2, 3],
    "trivial": [1],
}


def free_product(n, m):
    C1, A, B = make_cyclic(1), make_cyclic(n), make_cyclic(m)
    return make_amalgam(A, B, C1, hom(C1, A, {}), hom(C1, B, {}))


def test_make_amalgam_validation():
    C2, C4 = make_cyclic(2), make_cyclic(4)
    with pytest.raises(AmalgamError):
        make_amalgam(C2, C2, C4, hom(C4, C2, {"g": "g"}), hom(C4, C2, {"g": "g"}))
    with pytest.raises(AmalgamError):
        make_amalgam(C4, C2, C2, identity_hom(C2), identity_hom(C2))
    A = make_amalgam(C2, C2, C2, identity_hom(C2), identity_hom(C2))
    assert len(torsion_classes(A)) == 2


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_class_counts(doc, name):
    T = torsion_classes(doc.amalgam(name))
    assert sorted(T.orders) == EXPECTED[name]


def test_sl2z_counts(sl2z):
    assert n_torsion(sl2z) == 8
    assert (n_p(sl2z, 2), n_p(sl2z, 3), n_p(sl2z, 5)) == (4, 3, 1)
    assert n_p(sl2z, 2, include_identity=False) == 3
    with pytest.raises(AmalgamError):
        n_p(sl2z, 4)


def test_column_order_and_reps(doc):
    for name in doc.names("amalgams"):
        T = torsion_classes(doc.amalgam(name))
        keys = [(c.order, c.rep) for c in T.classes]
        assert keys == sorted(keys)
        for c in T.classes:
            A = T.amalgam
            reps = [(s, A.factor(s).classes.reps[k]) for s, k in c.members]
            assert c.rep == min(reps)


def test_oracle_examples(sl2z):
    assert oracle_conjugacy(sl2z, (LEFT, 1), (LEFT, 1), 0).conjugate
    h = 1
    x = (LEFT, int(sl2z.embed_left.image[h]))
    y = (RIGHT, int(sl2z.embed_right.image[h]))
    assert oracle_conjugacy(sl2z, x, y).verdict == "conjugate"
    # the order-4 classes g and g^3 are not fused
    assert not oracle_conjugacy(sl2z, (LEFT, 1), (LEFT, 3), 6).conjugate


def test_free_involutions_stay_apart():
    A = free_product(2, 2)
    for L in range(9):
        v = oracle_conjugacy(A, (LEFT, 1), (RIGHT, 1), L)
        assert v.verdict == "not-found-within-bound"


@pytest.mark.parametrize("n,m", [(2, 3), (3, 3), (4, 6), (5, 2)])
def test_free_products_only_fuse_identities(n, m):
    A = free_product(n, m)
    assert n_torsion(A) == n + m - 1
    assert oracle_agreement(A, 4) == []


def test_certificates_and_chains(doc):
    for name in doc.names("amalgams"):
        T = torsion_classes(doc.amalgam(name))
        assert verify_certificates(T)
        for c in T.classes:
            for a, b in itertools.combinations(c.members, 2):
                T.chain(a, b)


def test_chain_replays(sl2z):
    T = torsion_classes(sl2z)
    for c in T.classes:
        lefts = [m for m in c.members if m[0] == LEFT]
        rights = [m for m in c.members if m[0] == RIGHT]
        for a, b in itertools.product(lefts, rights):
            path = T.chain(a, b)
            assert len(path) == 1
            h = path[0]
            cl = sl2z.left.classes.class_of[sl2z.embed_left.image[h]]
            cr = sl2z.right.classes.class_of[sl2z.embed_right.image[h]]
            assert (int(cl), int(cr)) == (a[1], b[1])


@pytest.mark.parametrize("name", ["s3_c2_s3", "c4_c2_c4", "gl2z", "q8_c4_d4"])
def test_oracle_agrees(doc, name):
    assert oracle_agreement(doc.amalgam(name), 6) == []


def test_prime_power_sum(doc):
    for name in doc.names("amalgams"):
        A = doc.amalgam(name)
        T = torsion_classes(A)
        orders = T.orders
        primes = {p for o in orders for p in range(2, o + 1) if o % p == 0 and
                  all(p % q for q in range(2, p))}
        if all(sum(1 for p in primes if o % p == 0) <= 1 for o in orders):
            assert sum(n_p(A, p) - 1 for p in primes) + 1 == len(T)


def test_p_groups_have_all_classes_p_local(doc):
    for name in ("c2_free_c2", "c4_c2_c4", "q8_c4_d4", "degenerate_c4_twisted"):
        A = doc.amalgam(name)
        assert n_p(A, 2) == n_torsion(A)


def test_to_json_is_plain(sl2z):
    js = torsion_classes(sl2z).to_json()
    assert js["count"] == 8
    assert [c["order"] for c in js["classes"]] == [1, 2, 3, 3, 4, 4, 6, 6]
    assert js["classes"][1]["rep"] == {"side": "left", "element": "g^2"}

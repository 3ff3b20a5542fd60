"""Rank bookkeeping for p-adic K-theory of amalgams and of GL_{p-1}(Z).

For an amalgam ``G1 *_H G2`` the K^0 rank is ``n_p`` of the amalgam and the
K^1 rank is ``v_p = n_p(G) - n_p(G1) - n_p(G2) + n_p(H)``. For GL_{p-1}(Z) the
rank of the p-local ring is the rank of the Galois-invariant part of
``Cl(p)`` copies of ``R(Z/p)`` minus ``t(p) - 1``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from . import lattice
from .amalgam import Amalgam, AmalgamError, is_power_of, is_prime, n_p
from .groups import FiniteGroup


class KBookError(ValueError):
    code = "kbook.invalid"


def group_n_p(G: FiniteGroup, p: int, include_identity: bool = True) -> int:
    """Conjugacy classes of a finite group with p-power element order."""
    return sum(1 for o in G.classes.elt_order
               if is_power_of(o, p) and (include_identity or o > 1))


@dataclass(frozen=True)
class KReport:
    p: int
    n_p_gamma: int
    n_p_left: int
    n_p_right: int
    n_p_edge: int
    v_p: int
    rank_K0: int
    rank_K1: int
    lattice_rank: int | None = None
    identity_included: bool = True
    flags: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.flags

    def to_json(self) -> dict:
        d = asdict(self)
        d["flags"] = list(self.flags)
        return d

    @classmethod
    def from_json(cls, obj) -> KReport:
        obj = dict(obj)
        obj["flags"] = tuple(obj.get("flags", ()))
        return cls(**obj)


def k_ranks(A: Amalgam, p: int, include_identity: bool = True,
            cross_check: bool = True) -> KReport:
    if not is_prime(p):
        raise AmalgamError(f"{p} is not prime")
    ng = n_p(A, p, include_identity)
    nl = group_n_p(A.left, p, include_identity)
    nr = group_n_p(A.right, p, include_identity)
    nh = group_n_p(A.edge, p, include_identity)
    v = ng - nl - nr + nh
    flags = []
    if v < 0:
        flags.append(f"v_p is negative ({v})")
    lat = None
    if cross_check:
        from .repring import rf_ring_p
        lat = rf_ring_p(A, p).rank
        expected = ng if include_identity else ng + 1
        if lat != expected:
            flags.append(f"lattice rank {lat} differs from n_p = {expected}")
    return KReport(p, ng, nl, nr, nh, v, ng, v, lat, include_identity, tuple(flags))


@dataclass(frozen=True)
class GLRankInput:
    p: int
    class_number: int
    orbit_sizes: tuple

    def __post_init__(self):
        p, cl, orbits = self.p, self.class_number, self.orbit_sizes
        if not is_prime(p) or p == 2:
            raise KBookError(f"p = {p} must be an odd prime")
        if cl < 1:
            raise KBookError("class number must be positive")
        if any(s < 1 or (p - 1) % s for s in orbits):
            raise KBookError(f"orbit sizes {list(orbits)} must divide p - 1 = {p - 1}")
        if sum(orbits) != cl:
            raise KBookError(f"orbit sizes sum to {sum(orbits)}, class number is {cl}")

    @property
    def t(self) -> int:
        return len(self.orbit_sizes)


@dataclass(frozen=True)
class GLReport:
    p: int
    class_number: int
    orbit_sizes: tuple
    t: int
    rk_inv: int
    rk_RF: int

    @property
    def ok(self) -> bool:
        return self.rk_RF == 1 + self.class_number

    def to_json(self) -> dict:
        d = asdict(self)
        d["orbit_sizes"] = list(self.orbit_sizes)
        d["ok"] = self.ok
        return d

    @classmethod
    def from_json(cls, obj) -> GLReport:
        obj = {k: v for k, v in obj.items() if k != "ok"}
        obj["orbit_sizes"] = tuple(obj["orbit_sizes"])
        return cls(**obj)


def primitive_root(p: int) -> int:
    n = p - 1
    qs = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]
    return next(g for g in range(2, p) if all(pow(g, n // q, p) != 1 for q in qs)) if p > 2 else 1


def delta_generator_action(inp: GLRankInput) -> list:
    """Permutation of the basis ``(copy, a) -> copy * p + a`` by a generator of Delta.

    The generator twists characters ``chi_a -> chi_(g a)`` for a primitive root
    ``g`` and cycles the copies within each orbit.
    """
    p = inp.p
    g = primitive_root(p)
    perm = [0] * (inp.class_number * p)
    start = 0
    for s in inp.orbit_sizes:
        for j in range(start, start + s):
            nj = start + (j - start + 1) % s
            for a in range(p):
                perm[j * p + a] = nj * p + (g * a) % p
        start += s
    return perm


def invariant_rank(inp: GLRankInput) -> int:
    """Rank of the fixed subspace of the Delta-averaging operator, by exact elimination."""
    perm = delta_generator_action(inp)
    order = inp.p - 1
    weight = Fraction(1, order)
    rows = []
    for v in range(len(perm)):
        row: dict = {}
        x = v
        for _ in range(order):
            row[x] = row.get(x, 0) + weight
            x = perm[x]
        rows.append(row)
    return lattice.sparse_rank(rows)


def gl_rank_check(inp: GLRankInput) -> GLReport:
    rk_inv = invariant_rank(inp)
    return GLReport(inp.p, inp.class_number, tuple(inp.orbit_sizes), inp.t, rk_inv,
                    rk_inv - (inp.t - 1))


# Externally known: Q(zeta_p) has class number 1 for every prime p <= 19.
REFERENCE_CLASS_NUMBERS = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1}

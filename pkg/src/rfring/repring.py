"""The reduced representation ring of an amalgam, as an integer lattice.

A representation of ``G1 *_H G2`` is, up to isomorphism on finite
subgroups, a pair of factor representations whose restrictions to ``H``
agree: any such pair can be conjugated to coincide on ``H`` and then glues to
the amalgam. So the ring is the image of the pullback
``R(G1) x_{R(H)} R(G2)`` under evaluation on the torsion classes.

Character vectors over ``Q(z_m)^n`` are flattened to integer vectors of length
``n * phi(m)``; the lattice basis is the row Hermite normal form of the
evaluated pullback basis, which makes every exported matrix canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lattice
from .amalgam import LEFT, RIGHT, SIDE_NAMES, Amalgam, is_power_of, is_prime, torsion_classes
from .characters import ClassFunction, character_table, restrict
from .cyclotomic import CyclotomicNumber, euler_phi


class RepRingError(ArithmeticError):
    code = "repring.failed"


class RankDeficiency(RepRingError):
    code = "repring.rank_deficiency"


class IncompatiblePair(RepRingError):
    code = "repring.incompatible_pair"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PullbackLattice:
    """Integer pairs ``(x, y)`` of irreducible-character coordinates with equal restriction to H."""
    basis: tuple
    rank: int
    k_left: int
    k_right: int

    def split(self, v):
        return v[: self.k_left], v[self.k_left:]


def restriction_matrix(emb) -> list:
    """Row ``i`` decomposes the restriction of the ``i``-th irreducible of the target into H-irreducibles."""
    TH = character_table(emb.source)
    T = character_table(emb.target)
    return [TH.decompose(restrict(chi, emb)) for chi in T.characters]


def pullback_lattice(A: Amalgam) -> PullbackLattice:
    R1 = restriction_matrix(A.embed_left)
    R2 = restriction_matrix(A.embed_right)
    D = [list(r) for r in R1] + [[-v for v in r] for r in R2]
    basis = lattice.left_kernel(D, A.edge.classes.count)
    return PullbackLattice(tuple(basis), len(basis), len(R1), len(R2))


def _pair_functions(A: Amalgam, v, k_left):
    T1, T2 = character_table(A.left), character_table(A.right)
    return T1.combine(v[:k_left]), T2.combine(v[k_left:])


@dataclass(frozen=True)
class Column:
    order: int
    side: int
    rep: int
    label: str
    members: tuple
    fused_index: int

    def to_json(self):
        return {"order": self.order, "side": SIDE_NAMES[self.side], "rep": self.label,
                "members": [[SIDE_NAMES[s], c] for s, c in self.members]}


def _columns(A: Amalgam, p: int | None = None) -> list:
    T = torsion_classes(A)
    cols = []
    for k, c in enumerate(T.classes):
        if p is not None and not is_power_of(c.order, p):
            continue
        side, x = c.rep
        cols.append(Column(c.order, side, x, A.factor(side).labels[x], c.members, k))
    cols.sort(key=lambda c: (c.order, c.side, c.rep))
    return cols


def evaluate_pair(A: Amalgam, columns, chi: ClassFunction, psi: ClassFunction) -> tuple:
    """Values of the pair on each column; fails if the pair disagrees on a fused class."""
    out = []
    for col in columns:
        vals = {(chi if s == LEFT else psi).values[c] for s, c in col.members}
        if len(vals) != 1:
            raise IncompatiblePair(f"pair is not well defined on the fused class of {col.label}")
        out.append(next(iter(vals)))
    return tuple(out)


def flatten(vec, conductor: int) -> list:
    flat = []
    for v in vec:
        flat.extend(v.coords(conductor))
    return flat


def unflatten(flat, conductor: int) -> tuple:
    phi = euler_phi(conductor)
    return tuple(CyclotomicNumber(conductor, flat[i:i + phi]) for i in range(0, len(flat), phi))


class RFRing:
    """A lattice of character vectors on torsion classes with its multiplication.

    ``basis`` rows are the HNF basis of the flattened lattice scaled by
    ``scale`` (character values are algebraic integers, so ``scale`` is 1 in
    practice). ``structure_constants[i, j, k]`` gives ``b_i b_j = sum_k c_ijk b_k``.
    """

    def __init__(self, amalgam, columns, conductor, vectors, prime=None):
        self.amalgam = amalgam
        self.columns = tuple(columns)
        self.conductor = conductor
        self.prime = prime
        flat = [flatten(v, conductor) for v in vectors]
        dens = [Fraction(x).denominator for row in flat for x in row]
        self.scale = math.lcm(*dens) if dens else 1
        ints = [[int(Fraction(x) * self.scale) for x in row] for row in flat]
        ncols = len(self.columns) * euler_phi(conductor)
        self.basis, self.pivots = lattice.hnf(ints, ncols)
        self.rank = len(self.basis)
        if self.rank != len(self.columns):
            raise RankDeficiency(f"lattice rank {self.rank} differs from the number of "
                                 f"torsion classes {len(self.columns)}")
        self.vectors = tuple(unflatten([Fraction(x, self.scale) for x in row], conductor)
                             for row in self.basis)
        one = tuple(CyclotomicNumber.from_rational(1) for _ in self.columns)
        self.unit = self._integral_coords(one, "unit")
        n = self.rank
        sc = np.zeros((n, n, n), dtype=object)
        for i in range(n):
            for j in range(i, n):
                prod = tuple(a * b for a, b in zip(self.vectors[i], self.vectors[j]))
                c = self._integral_coords(prod, f"product b{i}*b{j}")
                sc[i, j, :] = c
                sc[j, i, :] = c
        self.structure_constants = sc

    def _integral_coords(self, vec, what):
        c = self.coords(vec)
        if c is None or any(x.denominator != 1 for x in c):
            raise RepRingError(f"{what} is not in the lattice")
        return tuple(int(x) for x in c)

    def coords(self, vec):
        """Rational coordinates of a character vector in the basis, or ``None`` outside the span."""
        flat = [x * self.scale for x in flatten(vec, self.conductor)]
        return lattice.echelon_solve(self.basis, self.pivots, flat)

    def contains(self, vec) -> bool:
        c = self.coords(vec)
        return c is not None and all(x.denominator == 1 for x in c)

    def element(self, coords) -> tuple:
        vals = [CyclotomicNumber.from_rational(0)] * len(self.columns)
        for c, v in zip(coords, self.vectors):
            if c:
                vals = [a + b * c for a, b in zip(vals, v)]
        return tuple(vals)

    def multiply(self, u, v) -> tuple:
        """Product of two elements given in basis coordinates, via the structure constants."""
        n = self.rank
        out = [0] * n
        sc = self.structure_constants
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        f = u[i] * v[j]
                        for k in range(n):
                            if sc[i, j, k]:
                                out[k] += f * sc[i, j, k]
        return tuple(out)

    def power(self, u, k: int) -> tuple:
        out = self.unit
        for _ in range(k):
            out = self.multiply(out, u)
        return out

    def pair_vector(self, chi: ClassFunction, psi: ClassFunction) -> tuple:
        return evaluate_pair(self.amalgam, self.columns, chi, psi)

    def power_map_permutation(self, k: int) -> list:
        """Column index of ``g^k`` for the representative ``g`` of each column."""
        A = self.amalgam
        T = torsion_classes(A)
        pos = {c.fused_index: i for i, c in enumerate(self.columns)}
        out = []
        for col in self.columns:
            G = A.factor(col.side)
            out.append(pos[T.fused_of_element(col.side, G.power(col.rep, k))])
        return out

    def adams_image(self, vec, k: int) -> tuple:
        perm = self.power_map_permutation(k)
        return tuple(vec[perm[i]] for i in range(len(vec)))

    def to_json(self) -> dict:
        n = self.rank
        sc = self.structure_constants
        triples = [[i, j, k, int(sc[i, j, k])] for i in range(n) for j in range(n)
                   for k in range(n) if sc[i, j, k]]
        return {
            "amalgam": self.amalgam.name,
            "prime": self.prime,
            "rank": n,
            "conductor": self.conductor,
            "scale": self.scale,
            "columns": [c.to_json() for c in self.columns],
            "basis": [[str(x) for x in row] for row in self.basis],
            "unit": list(self.unit),
            "structure_constants": triples,
        }


@dataclass(frozen=True)
class RFRingData:
    """Plain re-parsed form of an exported ring, for round trips and external checks."""
    prime: int | None
    rank: int
    conductor: int
    scale: int
    columns: tuple
    basis: tuple
    unit: tuple
    structure_constants: tuple

    @classmethod
    def from_json(cls, obj):
        return cls(obj["prime"], obj["rank"], obj["conductor"], obj["scale"],
                   tuple((c["order"], c["side"], c["rep"]) for c in obj["columns"]),
                   tuple(tuple(Fraction(x) for x in row) for row in obj["basis"]),
                   tuple(obj["unit"]),
                   tuple(tuple(t) for t in obj["structure_constants"]))

    @classmethod
    def of(cls, R: RFRing):
        return cls.from_json(R.to_json())


def _pullback_vectors(A: Amalgam, columns):
    P = pullback_lattice(A)
    out = []
    for v in P.basis:
        chi, psi = _pair_functions(A, v, P.k_left)
        out.append(evaluate_pair(A, columns, chi, psi))
    return out


def _conductor(A: Amalgam) -> int:
    return math.lcm(A.left.exponent, A.right.exponent)


def rf_ring(A: Amalgam) -> RFRing:
    cached = A.__dict__.get("_rf_ring")
    if cached is None:
        cols = _columns(A)
        cached = RFRing(A, cols, _conductor(A), _pullback_vectors(A, cols))
        A.__dict__["_rf_ring"] = cached
    return cached


def rf_ring_p(A: Amalgam, p: int) -> RFRing:
    if not is_prime(p):
        raise RepRingError(f"{p} is not prime")
    cache = A.__dict__.setdefault("_rf_ring_p", {})
    if p not in cache:
        cols = _columns(A, p)
        cache[p] = RFRing(A, cols, _conductor(A), _pullback_vectors(A, cols), prime=p)
    return cache[p]


def project(R: RFRing, p: int) -> RFRing:
    """Column projection of ``R`` onto its p-power-order classes, rebuilt from R's own basis."""
    keep = [i for i, c in enumerate(R.columns) if is_power_of(c.order, p)]
    vecs = [tuple(v[i] for i in keep) for v in R.vectors]
    return RFRing(R.amalgam, [R.columns[i] for i in keep], R.conductor, vecs, prime=p)


@dataclass(frozen=True)
class EvalResult:
    vector: tuple
    coords: tuple | None
    member: bool
    witness: str | None = None

    def to_json(self):
        return {"vector": [v.to_json() for v in self.vector],
                "coords": None if self.coords is None else [str(c) for c in self.coords],
                "member": self.member, "witness": self.witness}


def check_compatible(A: Amalgam, chi: ClassFunction, psi: ClassFunction):
    """Raise IncompatiblePair with the first H class where the restrictions differ."""
    r1 = restrict(chi, A.embed_left)
    r2 = restrict(psi, A.embed_right)
    for c, (a, b) in enumerate(zip(r1.values, r2.values)):
        if a != b:
            lab = A.edge.classes.label(c)
            raise IncompatiblePair(
                f"restrictions differ on edge class {lab}: {a} vs {b}",
                witness={"edge_class": lab, "left": str(a), "right": str(b)})


def element_eval(A: Amalgam, pair, ring: RFRing | None = None) -> EvalResult:
    chi, psi = pair
    if not isinstance(chi, ClassFunction):
        chi = ClassFunction(A.left.classes, chi)
    if not isinstance(psi, ClassFunction):
        psi = ClassFunction(A.right.classes, psi)
    check_compatible(A, chi, psi)
    R = ring if ring is not None else rf_ring(A)
    vec = R.pair_vector(chi, psi)
    c = R.coords(vec)
    if c is None:
        return EvalResult(vec, None, False, "vector is outside the rational span")
    bad = next((i for i, x in enumerate(c) if x.denominator != 1), None)
    if bad is not None:
        return EvalResult(vec, tuple(c), False, f"coordinate {bad} is {c[bad]}")
    return EvalResult(vec, tuple(int(x) for x in c), True)


def degree_one_pairs(A: Amalgam):
    """Compatible pairs of linear characters, in character-table order."""
    T1, T2 = character_table(A.left), character_table(A.right)
    for i, chi in enumerate(T1.characters):
        if T1.degrees[i] != 1:
            continue
        for j, psi in enumerate(T2.characters):
            if T2.degrees[j] != 1:
                continue
            if restrict(chi, A.embed_left).values == restrict(psi, A.embed_right).values:
                yield (i, j), chi, psi


def check_ring(R: RFRing) -> list:
    """Black-box structural checks on a computed ring; returns failures."""
    problems = []
    n = R.rank
    sc = R.structure_constants
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not isinstance(sc[i, j, k], int):
                    problems.append("non-integral structure constant")
                if sc[i, j, k] != sc[j, i, k]:
                    problems.append(f"asymmetric at {i},{j},{k}")
    e = [tuple(int(a == b) for b in range(n)) for a in range(n)]
    for i in range(n):
        for j in range(n):
            bij = R.multiply(e[i], e[j])
            for k in range(n):
                if R.multiply(bij, e[k]) != R.multiply(e[i], R.multiply(e[j], e[k])):
                    problems.append(f"non-associative at {i},{j},{k}")
    for i in range(n):
        if R.multiply(R.unit, e[i]) != e[i]:
            problems.append(f"unit fails on b{i}")
    return problems

"""Irreducible character tables and class functions.

Tables are computed with the class-algebra (Dixon) method: the class
multiplication operators are simultaneously diagonalized over a prime field
F_p with ``p = 1 mod exp(G)``, and each character value is lifted to its exact
cyclotomic form through the eigenvalue multiplicities of ``rho(g)``, which are
small non-negative integers. The lifted table is then certified exactly by
the orthogonality relations, so the prime field never leaks into the output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cyclotomic import CyclotomicNumber, NotRational
from .groups import FiniteGroup, GroupHom


class CharacterError(ArithmeticError):
    code = "characters.failed"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _dixon_prime(order: int, exponent: int) -> int:
    p = exponent + 1
    while p <= 2 * math.isqrt(order) + 2 or not _is_prime(p):
        p += exponent
    return p


def _primitive_root(p: int) -> int:
    n = p - 1
    factors = {q for q in range(2, n + 1) if n % q == 0 and _is_prime(q)}
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    return 1


def _rref_mod(M, p):
    """Row-reduced echelon form mod p; returns (R, pivot_columns)."""
    R = np.array(M, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def _nullspace_mod(M, p):
    """Columns spanning the right kernel of M mod p."""
    R, pivots = _rref_mod(M, p)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        out[f, t] = 1
        for i, c in enumerate(pivots):
            out[c, t] = (-R[i, f]) % p
    return out


def _charpoly_mod(A, p):
    """Characteristic polynomial mod p (high-to-low coefficients) via Hessenberg reduction."""
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for c in range(n - 2):
        nz = np.nonzero(H[c + 1:, c])[0]
        if len(nz) == 0:
            continue
        k = c + 1 + int(nz[0])
        if k != c + 1:
            H[[k, c + 1]] = H[[c + 1, k]]
            H[:, [k, c + 1]] = H[:, [c + 1, k]]
        inv = pow(int(H[c + 1, c]), -1, p)
        for i in range(c + 2, n):
            u = int(H[i, c]) * inv % p
            if u:
                H[i] = (H[i] - u * H[c + 1]) % p
                H[:, c + 1] = (H[:, c + 1] + u * H[:, i]) % p
    # p_m = (x - h_mm) p_{m-1} - sum_i h_{m-i,m} h_{m,m-1}...h_{m-i+1,m-i} p_{m-i-1}
    polys = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + list(prev)                      # x * p_{m-1}, low-to-high
        h = int(H[m - 1, m - 1])
        for t, c in enumerate(prev):
            cur[t] = (cur[t] - h * c) % p
        prod = 1
        for i in range(1, m):
            prod = prod * int(H[m - i, m - i - 1]) % p
            coef = int(H[m - i - 1, m - 1]) * prod % p
            if coef:
                for t, c in enumerate(polys[m - i - 1]):
                    cur[t] = (cur[t] - coef * c) % p
        polys.append(cur)
    return polys[n][::-1]


def _roots_mod(coeffs, p):
    z = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs:
        acc = (acc * z + c) % p
    return [int(v) for v in np.nonzero(acc == 0)[0]]


def _common_eigenvectors(mats, p):
    """Split F_p^r into common eigenlines of the commuting operators ``mats``."""
    r = mats[0].shape[0]
    spaces = [np.eye(r, dtype=np.int64)]
    for T in mats:
        if all(S.shape[1] == 1 for S in spaces):
            break
        refined = []
        for S in spaces:
            if S.shape[1] == 1:
                refined.append(S)
                continue
            R, piv = _rref_mod(S.T, p)
            B = R.T
            A = (T @ B % p)[piv, :]
            pieces = []
            for z in _roots_mod(_charpoly_mod(A, p), p):
                K = _nullspace_mod((A - z * np.eye(len(piv), dtype=np.int64)) % p, p)
                pieces.append(B @ K % p)
            if sum(P.shape[1] for P in pieces) != S.shape[1]:
                raise CharacterError("class operators are not diagonalizable mod p")
            refined.extend(pieces)
        spaces = refined
    if not all(S.shape[1] == 1 for S in spaces) or len(spaces) != r:
        raise CharacterError("class algebra did not split into eigenlines")
    return [S[:, 0] for S in spaces]


class ClassFunction:
    """A function on the conjugacy classes of a group, with cyclotomic values."""

    __slots__ = ("classes", "values")

    def __init__(self, classes, values):
        values = tuple(v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.from_rational(v)
                       for v in values)
        if len(values) != classes.count:
            raise ValueError("one value per conjugacy class is required")
        self.classes = classes
        self.values = values

    @property
    def group(self) -> FiniteGroup:
        return self.classes.group

    @property
    def degree(self):
        return self.values[0]

    def __add__(self, other):
        return ClassFunction(self.classes, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return ClassFunction(self.classes, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.classes, [-a for a in self.values])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            return ClassFunction(self.classes, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.classes, [a * other for a in self.values])

    __rmul__ = __mul__

    def conj(self) -> ClassFunction:
        return ClassFunction(self.classes, [a.conj() for a in self.values])

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.classes is other.classes and self.values == other.values

    __hash__ = None

    def __call__(self, x: int) -> CyclotomicNumber:
        """Value at element id ``x``."""
        return self.values[self.classes.class_of[x]]

    def __repr__(self):
        return "ClassFunction(" + ", ".join(str(v) for v in self.values) + ")"


def inner_product(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    """``(1/|G|) sum_g chi(g) conj(psi(g))``; raises NotRational for malformed input."""
    if chi.classes is not psi.classes:
        raise ValueError("class functions live on different groups")
    total = CyclotomicNumber.from_rational(0)
    for size, a, b in zip(chi.classes.sizes, chi.values, psi.values):
        total = total + (a * b.conj()) * size
    return total.to_rational() / chi.group.order


def restrict(chi: ClassFunction, f: GroupHom) -> ClassFunction:
    """Pull ``chi`` (on the target of ``f``) back along ``f``."""
    cmap = f.class_map()
    return ClassFunction(f.source.classes, [chi.values[c] for c in cmap])


def trivial_character(classes) -> ClassFunction:
    return ClassFunction(classes, [1] * classes.count)


def regular_character(classes) -> ClassFunction:
    n = classes.group.order
    return ClassFunction(classes, [n] + [0] * (classes.count - 1))


class CharacterTable:
    """Exact irreducible characters; rows are characters, columns are classes."""

    def __init__(self, group: FiniteGroup, rows):
        self.group = group
        self.classes = group.classes
        self.conductor = group.exponent
        self.irreducibles = tuple(tuple(r) for r in rows)
        self.degrees = tuple(int(r[0].to_rational()) for r in self.irreducibles)

    def __len__(self):
        return len(self.irreducibles)

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.classes, self.irreducibles[i])

    @cached_property
    def characters(self) -> tuple:
        return tuple(self.character(i) for i in range(len(self)))

    def decompose(self, chi: ClassFunction) -> list:
        """Multiplicities of the irreducibles in ``chi`` (integers for virtual characters)."""
        out = []
        for psi in self.characters:
            q = inner_product(chi, psi)
            out.append(int(q) if q.denominator == 1 else q)
        return out

    def combine(self, coeffs) -> ClassFunction:
        vals = [CyclotomicNumber.from_rational(0)] * self.classes.count
        for c, row in zip(coeffs, self.irreducibles):
            if c:
                vals = [v + x * c for v, x in zip(vals, row)]
        return ClassFunction(self.classes, vals)

    def to_json(self) -> dict:
        cc = self.classes
        return {
            "group": self.group.name,
            "order": self.group.order,
            "conductor": self.conductor,
            "classes": [{"rep": cc.label(c), "size": cc.sizes[c], "order": cc.elt_order[c]}
                        for c in range(cc.count)],
            "degrees": list(self.degrees),
            "table": [[v.to_json() for v in row] for row in self.irreducibles],
        }

    @classmethod
    def from_json(cls, obj, group: FiniteGroup) -> CharacterTable:
        rows = [[CyclotomicNumber.from_json(v) for v in row] for row in obj["table"]]
        return cls(group, rows)


def _row_key(row, conductor):
    flat = []
    for v in row:
        flat.extend(v.coords(conductor))
    return tuple(-c for c in flat)


def _cyclic_rows(G: FiniteGroup):
    n = G.order
    gen = int(np.nonzero(G.element_orders == n)[0][0])
    # class of g^j is the element itself
    exps = [0] * n
    y = 0
    for j in range(n):
        exps[y] = j
        y = int(G.mul[y, gen])
    reps = G.classes.reps
    return [[CyclotomicNumber.from_exponents(n, [(k * exps[x], 1)]) for x in reps]
            for k in range(n)]


def _dixon_rows(G: FiniteGroup):
    cc = G.classes
    r, n, e = cc.count, G.order, G.exponent
    p = _dixon_prime(n, e)
    a = cc.structure_constants % p
    mats = [a[i] for i in range(1, r)]
    vecs = _common_eigenvectors(mats, p) if r > 1 else [np.ones(1, dtype=np.int64)]
    sizes = np.array(cc.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), -1, p) for s in sizes], dtype=np.int64)
    inv_cls = np.array(cc.inverse_class)

    omega = pow(_primitive_root(p), (p - 1) // e, p)
    # dft[l, k] = omega^(-k l)
    dft = np.array([[pow(omega, (-k * l) % e, p) for k in range(e)] for l in range(e)],
                   dtype=np.int64)
    e_inv = pow(e, -1, p)
    powers = cc.power_map                                   # (r, e)

    rows = []
    for w in vecs:
        w = w * pow(int(w[0]), -1, p) % p                   # central character, w[identity] = 1
        s = int((w * w[inv_cls] % p * inv_sizes % p).sum() % p)
        d2 = n * pow(s, -1, p) % p
        d = next((d for d in range(1, math.isqrt(n) + 1) if d * d % p == d2), None)
        if d is None:
            raise CharacterError("no admissible degree for a central character")
        chi_mod = w * d % p * inv_sizes % p                 # chi(g_j) mod p
        mult = (chi_mod[powers] @ dft) % p * e_inv % p      # (r, e) eigenvalue multiplicities
        if (mult > d).any():
            raise CharacterError("eigenvalue multiplicities failed to lift")
        rows.append([CyclotomicNumber.from_exponents(e, enumerate(int(m) for m in mult[j]))
                     for j in range(r)])
    return rows


def character_table(G: FiniteGroup, verify: bool = True) -> CharacterTable:
    """Complete exact character table, rows ordered trivial first, then by degree
    and descending lexicographic order of the flattened coordinates."""
    cached = G.__dict__.get("_character_table")
    if cached is not None:
        return cached
    if G.order == 1:
        rows = [[CyclotomicNumber.from_rational(1)]]
    elif G.element_orders.max() == G.order:
        rows = _cyclic_rows(G)
    else:
        rows = _dixon_rows(G)
    e = G.exponent
    rows.sort(key=lambda row: (int(row[0].to_rational()),
                               not all(v == 1 for v in row), _row_key(row, e)))
    table = CharacterTable(G, rows)
    if verify:
        problems = verify_table(table, columns=False)
        if problems:
            raise CharacterError("character table failed certification: " + problems[0])
    G.__dict__["_character_table"] = table
    return table


def verify_table(T: CharacterTable, columns: bool = True) -> list:
    """Exact orthogonality checks; returns a list of failures (empty when sound)."""
    problems = []
    cc = T.classes
    n = T.group.order
    if len(T.irreducibles) != cc.count:
        problems.append("row count differs from class count")
    if sum(d * d for d in T.degrees) != n:
        problems.append("sum of squared degrees differs from the group order")
    chars = T.characters
    for i, chi in enumerate(chars):
        for j in range(i, len(chars)):
            try:
                ip = inner_product(chi, chars[j])
            except NotRational:
                ip = None
            if ip != (1 if i == j else 0):
                problems.append(f"rows {i}, {j} have inner product {ip}")
    if columns:
        for a in range(cc.count):
            for b in range(a, cc.count):
                total = sum((row[a] * row[b].conj() for row in T.irreducibles),
                            CyclotomicNumber.from_rational(0))
                want = Fraction(n, cc.sizes[a]) if a == b else 0
                if total != want:
                    problems.append(f"columns {a}, {b} fail orthogonality")
    return problems

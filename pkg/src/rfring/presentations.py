"""Finitely presented commutative rings and isomorphism certificates.

Two presentation kinds are supported, and anything else is rejected:

* univariate-quotient: ``Z[w] / f(w) = 0`` with ``f`` monic, free on ``1, w, ..., w^(d-1)``;
* linear-closed: every product of two generators is rewritten to an affine
  integer combination of ``1`` and the generators, one rule per unordered pair,
  so the ring is spanned by ``{1} u generators``.

Grammar::

    ring Z[g1, ..., gk] / rel ; rel ; ...
    rel  := poly = poly [= poly ...]
    poly := integer polynomial with + - * ^ and parentheses
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

import numpy as np

from . import lattice


class PresentationError(ValueError):
    code = "presentation.invalid"


class PresentationSyntaxError(PresentationError):
    code = "presentation.syntax"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnclassifiablePresentation(PresentationError):
    code = "presentation.unclassifiable"


class ModelError(PresentationError):
    code = "presentation.model"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# polynomials: {exponent tuple: nonzero int}

def _padd(a, b, sign=1):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a, b):
    out: dict = {}
    for (m1, c1), (m2, c2) in itertools.product(a.items(), b.items()):
        m = tuple(x + y for x, y in zip(m1, m2))
        v = out.get(m, 0) + c1 * c2
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _const(c, k):
    return {(0,) * k: c} if c else {}


def poly_str(poly, gens) -> str:
    if not poly:
        return "0"
    parts = []
    for m in sorted(poly, key=lambda m: (-sum(m), [-e for e in m])):
        c = poly[m]
        mon = "*".join(g if e == 1 else f"{g}^{e}" for g, e in zip(gens, m) if e)
        if not mon:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mon
        else:
            body = f"{abs(c)}*{mon}"
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\S))", re.UNICODE)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.gens: list = []

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            got = t[1] if t[0] != "end" else "end of input"
            raise PresentationSyntaxError(f"expected {want!r}, found {got!r}", t[2])
        self.i += 1
        return t

    def header(self):
        self.take("id", "ring")
        self.take("id", "Z")
        self.take("op", "[")
        while True:
            t = self.take("id")
            if t[1] in self.gens:
                raise PresentationSyntaxError(f"duplicate generator {t[1]!r}", t[2])
            self.gens.append(t[1])
            if self.peek()[1] == ",":
                self.take("op", ",")
                continue
            break
        self.take("op", "]")
        self.take("op", "/")

    def relations(self):
        rels = []
        while self.peek()[0] != "end":
            if self.peek()[1] == ";":
                self.take()
                continue
            sides = [self.expr()]
            self.take("op", "=")
            sides.append(self.expr())
            while self.peek()[1] == "=":
                self.take()
                sides.append(self.expr())
            for s in sides[:-1]:
                rels.append(_padd(s, sides[-1], -1))
            if self.peek()[0] != "end":
                self.take("op", ";")
        return rels

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self):
        acc = self.power()
        while True:
            t = self.peek()
            if t[1] == "*":
                self.take()
                acc = _pmul(acc, self.power())
            elif t[0] in ("num", "id") or t[1] == "(":
                acc = _pmul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            e = self.take("num")[1]
            out = _const(1, len(self.gens))
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return _const(t[1], len(self.gens))
        if t[0] == "id":
            self.take()
            if t[1] not in self.gens:
                raise PresentationSyntaxError(f"unknown generator {t[1]!r}", t[2])
            m = [0] * len(self.gens)
            m[self.gens.index(t[1])] = 1
            return {tuple(m): 1}
        if t[1] == "(":
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        got = t[1] if t[0] != "end" else "end of input"
        raise PresentationSyntaxError(f"unexpected {got!r}", t[2])


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple
    relations: tuple            # polynomials normalized to p = 0
    kind: str
    text: str = field(default="", compare=False)

    @property
    def degree(self) -> int:
        """Degree of the defining polynomial (univariate kind)."""
        return max(m[0] for m in self.relations[0])

    def relation_strings(self) -> list:
        return [poly_str(r, self.generators) + " = 0" for r in self.relations]

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "kind": self.kind,
                "relations": self.relation_strings()}


def _linear_rule(poly, k):
    """``(pair, rhs)`` if ``poly = 0`` rewrites one degree-2 monomial affinely, else ``None``."""
    quad = [m for m in poly if sum(m) == 2]
    if len(quad) != 1 or any(sum(m) > 2 for m in poly) or abs(poly[quad[0]]) != 1:
        return None
    m = quad[0]
    c = poly[m]
    pair = tuple(sorted(i for i in range(k) for _ in range(m[i])))
    rhs = [0] * (k + 1)
    for mono, v in poly.items():
        if mono == m:
            continue
        idx = 0 if sum(mono) == 0 else 1 + mono.index(1)
        rhs[idx] -= v * c
    return pair, tuple(rhs)


def classify(gens, relations) -> str:
    k = len(gens)
    if k == 1 and len(relations) == 1 and relations[0]:
        r = relations[0]
        d = max(m[0] for m in r)
        if d >= 1 and r[(d,)] == 1:
            return "univariate-quotient"
    rules = [_linear_rule(r, k) for r in relations]
    if rules and all(rules):
        pairs = {p for p, _ in rules}
        if pairs == {(i, j) for i in range(k) for j in range(i, k)}:
            return "linear-closed"
    raise UnclassifiablePresentation(
        "presentation is neither a monic univariate quotient nor linear-closed")


def parse_presentation(text: str) -> RingPresentation:
    p = _Parser(text)
    p.header()
    rels = [r for r in p.relations()]
    if not rels:
        raise PresentationSyntaxError("no relations", len(text))
    gens = tuple(p.gens)
    return RingPresentation(gens, tuple(rels), classify(gens, rels), text)


class RingModel:
    """A free Z-module with basis ``basis_labels`` and an integral multiplication tensor."""

    def __init__(self, presentation, basis_labels, structure_constants, generator_coords):
        self.presentation = presentation
        self.basis_labels = tuple(basis_labels)
        self.structure_constants = structure_constants
        self.generator_coords = generator_coords
        self.unit_index = 0
        self.rank = len(self.basis_labels)
        problems = verify_model(self)
        if problems:
            kind, witness = problems[0]
            raise ModelError(f"model fails {kind} at {witness}", witness=witness)

    def basis_vector(self, i):
        return tuple(int(i == j) for j in range(self.rank))

    @property
    def unit(self):
        return self.basis_vector(0)

    def multiply(self, u, v):
        out = np.zeros(self.rank, dtype=object)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out = out + a * b * self.structure_constants[i, j]
        return tuple(int(x) for x in out)

    def evaluate(self, poly) -> tuple:
        """Value of a polynomial in the generators."""
        gens = self.presentation.generators
        total = tuple(0 for _ in range(self.rank))
        for mono, c in poly.items():
            term = self.unit
            for g, e in zip(gens, mono):
                for _ in range(e):
                    term = self.multiply(term, self.generator_coords[g])
            total = tuple(x + c * y for x, y in zip(total, term))
        return total

    def to_json(self) -> dict:
        n = self.rank
        sc = self.structure_constants
        return {"kind": self.presentation.kind, "rank": n, "basis": list(self.basis_labels),
                "structure_constants": [[i, j, k, int(sc[i, j, k])] for i in range(n)
                                        for j in range(n) for k in range(n) if sc[i, j, k]]}


def verify_model(M: RingModel) -> list:
    """Commutativity, unit, associativity on basis triples, and vanishing relations."""
    n = M.rank
    sc = M.structure_constants
    e = [M.basis_vector(i) for i in range(n)]
    out = []
    for i in range(n):
        if M.multiply(e[0], e[i]) != e[i]:
            out.append(("unit", (M.basis_labels[i],)))
        for j in range(n):
            if any(sc[i, j, k] != sc[j, i, k] for k in range(n)):
                out.append(("commutativity", (M.basis_labels[i], M.basis_labels[j])))
    for i, j, k in itertools.product(range(n), repeat=3):
        if M.multiply(M.multiply(e[i], e[j]), e[k]) != M.multiply(e[i], M.multiply(e[j], e[k])):
            out.append(("associativity", (M.basis_labels[i], M.basis_labels[j],
                                          M.basis_labels[k])))
    for r in M.presentation.relations:
        if any(M.evaluate(r)):
            out.append(("relation", poly_str(r, M.presentation.generators)))
    return out


def build_model(P: RingPresentation) -> RingModel:
    if P.kind == "univariate-quotient":
        g = P.generators[0]
        f = P.relations[0]
        d = P.degree
        low = [f.get((k,), 0) for k in range(d)]
        # coordinates of w^k for k < 2d - 1, using w^d = -sum low_k w^k
        red = [tuple(int(i == k) for i in range(d)) for k in range(d)]
        for k in range(d, 2 * d - 1):
            prev = red[-1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            red.append(tuple(s - top * c for s, c in zip(shifted, low)))
        sc = np.zeros((d, d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                sc[i, j, :] = red[i + j]
        labels = ["1", g] + [f"{g}^{k}" for k in range(2, d)]
        gc = {g: red[1] if d > 1 else red[0]}
        if d == 1:
            gc = {g: (-low[0],)}
        return RingModel(P, labels[:d], sc, gc)

    k = len(P.generators)
    n = k + 1
    rules: dict = {}
    for r in P.relations:
        pair, rhs = _linear_rule(r, k)
        if pair in rules and rules[pair] != rhs:
            a, b = (P.generators[x] for x in pair)
            raise ModelError(f"inconsistent double rule for {a}*{b}", witness=(a, b))
        rules[pair] = rhs
    sc = np.zeros((n, n, n), dtype=object)
    for i in range(n):
        sc[0, i, i] = 1
        sc[i, 0, i] = 1
    for (a, b), rhs in rules.items():
        sc[a + 1, b + 1, :] = rhs
        sc[b + 1, a + 1, :] = rhs
    gc = {g: tuple(int(i == j + 1) for i in range(n)) for j, g in enumerate(P.generators)}
    return RingModel(P, ("1",) + P.generators, sc, gc)


def charpoly(M: RingModel, g: str) -> list:
    """Characteristic polynomial (high-to-low) of multiplication by generator ``g``."""
    import sympy
    cols = [M.multiply(M.basis_vector(i), M.generator_coords[g]) for i in range(M.rank)]
    mat = sympy.Matrix(M.rank, M.rank, lambda r, c: cols[c][r])
    x = sympy.Symbol("x")
    return [int(c) for c in sympy.Poly(mat.charpoly(x).as_expr(), x).all_coeffs()]


@dataclass
class Certificate:
    ok: bool
    stage: str
    images: dict
    relation_residues: list
    matrix: list
    determinant: int | None
    matrix_rank: int
    target_rank: int
    model_rank: int
    witness: str | None = None
    search: dict | None = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "stage": self.stage,
                "images": {g: list(v) for g, v in self.images.items()},
                "relation_residues": [list(r) for r in self.relation_residues],
                "matrix": [list(r) for r in self.matrix], "determinant": self.determinant,
                "matrix_rank": self.matrix_rank, "target_rank": self.target_rank,
                "model_rank": self.model_rank, "witness": self.witness, "search": self.search}

    @classmethod
    def from_json(cls, obj) -> Certificate:
        return cls(obj["ok"], obj["stage"], {g: tuple(v) for g, v in obj["images"].items()},
                   [tuple(r) for r in obj["relation_residues"]],
                   [tuple(r) for r in obj["matrix"]], obj["determinant"], obj["matrix_rank"],
                   obj["target_rank"], obj["model_rank"], obj["witness"], obj["search"])


def recheck(cert: Certificate) -> bool:
    """Re-verify a successful certificate from its own data."""
    if not cert.ok:
        return False
    if any(any(r) for r in cert.relation_residues):
        return False
    n = len(cert.matrix)
    if n != cert.target_rank or any(len(r) != n for r in cert.matrix):
        return False
    d = lattice.det([list(r) for r in cert.matrix])
    return d == cert.determinant and abs(d) == 1


def _image_coords(R, img):
    from .repring import IncompatiblePair, element_eval

    if isinstance(img, tuple) and len(img) == 2 and not isinstance(img[0], (int, np.integer)):
        try:
            ev = element_eval(R.amalgam, img, ring=R)
        except IncompatiblePair as exc:
            return None, str(exc)
        if not ev.member:
            return None, ev.witness or "image is not in the lattice"
        return ev.coords, None
    coords = tuple(int(x) for x in img)
    if len(coords) != R.rank:
        return None, f"image has {len(coords)} coordinates, ring rank is {R.rank}"
    return coords, None


def certify_isomorphism(M: RingModel, R, images: dict) -> Certificate:
    """Check that generator images define a unital ring isomorphism from ``M`` onto ``R``."""
    P = M.presentation
    coords = {}
    for g in P.generators:
        if g not in images:
            return Certificate(False, "image", {}, [], [], None, 0, R.rank, M.rank,
                               witness=f"no image for generator {g}")
        c, why = _image_coords(R, images[g])
        if c is None:
            return Certificate(False, "image", coords, [], [], None, 0, R.rank, M.rank,
                               witness=f"{g}: {why}")
        coords[g] = c

    def monomial(mono):
        term = R.unit
        for g, e in zip(P.generators, mono):
            for _ in range(e):
                term = R.multiply(term, coords[g])
        return term

    residues = []
    for r in P.relations:
        total = [0] * R.rank
        for mono, c in r.items():
            total = [x + c * y for x, y in zip(total, monomial(mono))]
        residues.append(tuple(total))
    bad = next((i for i, r in enumerate(residues) if any(r)), None)
    if bad is not None:
        return Certificate(False, "relations", coords, residues, [], None, 0, R.rank, M.rank,
                           witness=f"relation {P.relation_strings()[bad]} evaluates to "
                                   f"{list(residues[bad])}")

    if P.kind == "univariate-quotient":
        w = coords[P.generators[0]]
        mapped = [R.unit]
        for _ in range(1, M.rank):
            mapped.append(R.multiply(mapped[-1], w))
    else:
        mapped = [R.unit] + [coords[g] for g in P.generators]
    matrix = [tuple(r) for r in mapped]
    rk = lattice.rank(matrix)
    if M.rank != R.rank or rk < R.rank:
        return Certificate(False, "rank", coords, residues, matrix, None, rk, R.rank, M.rank,
                           witness=f"mapped basis has rank {rk}, target lattice has rank {R.rank}")
    d = int(lattice.det([list(r) for r in matrix]))
    if abs(d) != 1:
        return Certificate(False, "index", coords, residues, matrix, d, rk, R.rank, M.rank,
                           witness=f"image has index {abs(d)} in the lattice")
    return Certificate(True, "ok", coords, residues, matrix, d, rk, R.rank, M.rank)


def search_degree_one(M: RingModel, R, limit: int = 100000) -> Certificate:
    """Try every assignment of compatible linear-character pairs to the generators."""
    from .repring import degree_one_pairs

    pairs = list(degree_one_pairs(R.amalgam))
    gens = M.presentation.generators
    last = None
    tried = 0
    for combo in itertools.product(pairs, repeat=len(gens)):
        tried += 1
        if tried > limit:
            break
        images = {g: (chi, psi) for g, (_, chi, psi) in zip(gens, combo)}
        cert = certify_isomorphism(M, R, images)
        if cert.ok:
            cert.search = {"tried": tried, "pairs": {g: list(ij) for g, (ij, _, _) in
                                                     zip(gens, combo)}}
            return cert
        last = cert
    if last is None:
        last = Certificate(False, "search", {}, [], [], None, 0, R.rank, M.rank)
    last.ok = False
    last.stage = "search"
    last.witness = f"no degree-one assignment succeeded ({tried} tried)"
    last.search = {"tried": tried, "pairs": None}
    return last

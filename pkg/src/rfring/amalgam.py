"""Amalgamated products G1 *_H G2 of finite groups and their torsion classes.

Every finite-order element of an amalgam is conjugate into a factor, and two
factor elements are conjugate in the amalgam exactly when their factor
classes are linked by a chain of edge-group elements. ``torsion_classes``
applies that rule by union-find over the factor class tables.
``oracle_conjugacy`` is an independent check: it does reduced-word arithmetic
in the amalgam and searches conjugators up to a syllable-length bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .groups import FiniteGroup, GroupError, GroupHom

LEFT, RIGHT = 0, 1
SIDE_NAMES = ("left", "right")


class AmalgamError(GroupError):
    code = "amalgam.invalid"


class Amalgam:
    """``left *_edge right`` glued along injective embeddings of ``edge``."""

    def __init__(self, left: FiniteGroup, right: FiniteGroup, edge: FiniteGroup,
                 embed_left: GroupHom, embed_right: GroupHom, name: str | None = None):
        for side, emb, tgt in (("left", embed_left, left), ("right", embed_right, right)):
            if emb.source is not edge or emb.target is not tgt:
                raise AmalgamError(f"{side} embedding must map the edge group into the {side} factor")
            if not emb.injective:
                raise AmalgamError(f"{side} embedding is not injective")
        self.left = left
        self.right = right
        self.edge = edge
        self.embed_left = embed_left
        self.embed_right = embed_right
        self.name = name

    def factor(self, side: int) -> FiniteGroup:
        return self.right if side else self.left

    def embedding(self, side: int) -> GroupHom:
        return self.embed_right if side else self.embed_left

    def __repr__(self):
        nm = self.name or "amalgam"
        return f"<Amalgam {nm}: {self.left!r} *_{self.edge!r} {self.right!r}>"


def make_amalgam(G1, G2, H, e1, e2, name=None) -> Amalgam:
    return Amalgam(G1, G2, H, e1, e2, name=name)


@dataclass(frozen=True)
class FusedClass:
    members: tuple          # sorted (side, factor class id) pairs
    rep: tuple              # (side, element id)
    order: int
    certificate: tuple      # spanning merges (h, left class, right class)


@dataclass
class TorsionClassSet:
    amalgam: Amalgam
    classes: list
    index: dict = field(repr=False)     # (side, factor class) -> fused class index

    def __len__(self):
        return len(self.classes)

    @property
    def orders(self) -> list:
        return [c.order for c in self.classes]

    def fused(self, side: int, cls: int) -> int:
        return self.index[(side, cls)]

    def fused_of_element(self, side: int, x: int) -> int:
        G = self.amalgam.factor(side)
        return self.index[(side, int(G.classes.class_of[x]))]

    def chain(self, a: tuple, b: tuple) -> list:
        """Edge elements linking factor classes ``a`` and ``b`` through the spanning merges."""
        k = self.index[a]
        if self.index[b] != k:
            raise ValueError("classes are not fused")
        adj: dict = {}
        for h, cl, cr in self.classes[k].certificate:
            adj.setdefault((LEFT, cl), []).append(((RIGHT, cr), h))
            adj.setdefault((RIGHT, cr), []).append(((LEFT, cl), h))
        prev = {a: None}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            for v, h in adj.get(u, []):
                if v not in prev:
                    prev[v] = (u, h)
                    queue.append(v)
        path = []
        u = b
        while prev[u] is not None:
            u, h = prev[u]
            path.append(h)
        return path[::-1]

    def to_json(self) -> dict:
        A = self.amalgam
        out = []
        for c in self.classes:
            side, x = c.rep
            G = A.factor(side)
            out.append({
                "rep": {"side": SIDE_NAMES[side], "element": G.labels[x]},
                "order": c.order,
                "members": [{"side": SIDE_NAMES[s], "class": k,
                             "rep": A.factor(s).classes.label(k)} for s, k in c.members],
                "certificates": [{"edge_element": A.edge.labels[h], "left_class": cl,
                                  "right_class": cr} for h, cl, cr in c.certificate],
            })
        return {"amalgam": A.name, "count": len(self.classes), "classes": out}


def torsion_classes(A: Amalgam) -> TorsionClassSet:
    cached = A.__dict__.get("_torsion")
    if cached is not None:
        return cached
    cl_left, cl_right = A.left.classes, A.right.classes
    nodes = [(LEFT, c) for c in range(cl_left.count)] + [(RIGHT, c) for c in range(cl_right.count)]
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merges = []
    for h in range(A.edge.order):
        a = (LEFT, int(cl_left.class_of[A.embed_left.image[h]]))
        b = (RIGHT, int(cl_right.class_of[A.embed_right.image[h]]))
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            merges.append((h, a[1], b[1]))

    groups: dict = {}
    for v in nodes:
        groups.setdefault(find(v), []).append(v)
    classes = []
    for members in groups.values():
        members.sort()
        root = members[0]
        rep = min((s, A.factor(s).classes.reps[c]) for s, c in members)
        order = A.factor(rep[0]).element_orders[rep[1]]
        cert = tuple(m for m in merges if find((LEFT, m[1])) == find(root))
        classes.append(FusedClass(tuple(members), rep, int(order), cert))
    classes.sort(key=lambda c: (c.order, c.rep))
    index = {v: i for i, c in enumerate(classes) for v in c.members}
    out = TorsionClassSet(A, classes, index)
    A.__dict__["_torsion"] = out
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def n_torsion(A: Amalgam) -> int:
    return len(torsion_classes(A))


def n_p(A: Amalgam, p: int, include_identity: bool = True) -> int:
    if not is_prime(p):
        raise AmalgamError(f"{p} is not prime")
    return sum(1 for c in torsion_classes(A).classes
               if is_power_of(c.order, p) and (include_identity or c.order > 1))


def verify_certificates(T: TorsionClassSet) -> bool:
    """Replay each recorded merge and confirm the chains connect every fused class."""
    A = T.amalgam
    for k, c in enumerate(T.classes):
        for h, cl, cr in c.certificate:
            if int(A.left.classes.class_of[A.embed_left.image[h]]) != cl:
                return False
            if int(A.right.classes.class_of[A.embed_right.image[h]]) != cr:
                return False
            if T.index[(LEFT, cl)] != k or T.index[(RIGHT, cr)] != k:
                return False
        first = c.members[0]
        for m in c.members[1:]:
            try:
                T.chain(first, m)
            except (KeyError, TypeError, ValueError):
                return False
        if len(c.certificate) != len(c.members) - 1:
            return False
        if any(A.factor(s).element_orders[A.factor(s).classes.reps[x]] != c.order
               for s, x in c.members):
            return False
    return True


class NormalForms:
    """Reduced words ``t1 t2 ... tn h`` in an amalgam.

    Each ``t_i`` is the minimal-id representative of a nontrivial left coset
    ``t e_s(H)`` in its factor, sides alternate, and ``h`` is an edge-group id.
    A normal form is the hashable pair ``(syllables, h)``.
    """

    def __init__(self, A: Amalgam):
        self.A = A
        self.coset_rep = []
        self.edge_part = []
        self.reps = []
        for side in (LEFT, RIGHT):
            G = A.factor(side)
            emb = A.embedding(side)
            pre = {int(emb.image[h]): h for h in range(A.edge.order)}
            crep = [-1] * G.order
            hpart = [-1] * G.order
            for x in range(G.order):
                if crep[x] >= 0:
                    continue
                coset = [int(G.mul[x, emb.image[h]]) for h in range(A.edge.order)]
                t = min(coset)
                tinv = int(G.inv[t])
                for y in coset:
                    crep[y] = t
                    hpart[y] = pre[int(G.mul[tinv, y])]
            self.coset_rep.append(crep)
            self.edge_part.append(hpart)
            self.reps.append(sorted(set(crep) - {0}))
        self.identity = ((), 0)

    def times_factor(self, w, side: int, x: int):
        """``w * x`` for ``x`` an element of the given factor."""
        A = self.A
        sylls, h = w
        G = A.factor(side)
        y = int(G.mul[A.embedding(side).image[h], x])
        if sylls and sylls[-1][0] == side:
            y = int(G.mul[sylls[-1][1], y])
            sylls = sylls[:-1]
        t = self.coset_rep[side][y]
        if t:
            sylls = sylls + ((side, t),)
        return sylls, self.edge_part[side][y]

    def factor_sequence(self, w):
        sylls, h = w
        return list(sylls) + ([(LEFT, int(self.A.embed_left.image[h]))] if h else [])

    def times(self, u, v):
        for side, x in self.factor_sequence(v):
            u = self.times_factor(u, side, x)
        return u

    def inverse(self, w):
        out = self.identity
        for side, x in reversed(self.factor_sequence(w)):
            out = self.times_factor(out, side, int(self.A.factor(side).inv[x]))
        return out

    def of(self, side: int, x: int):
        return self.times_factor(self.identity, side, x)

    def conjugate(self, c, w):
        """``c w c^-1``."""
        return self.times(self.times(c, w), self.inverse(c))

    def as_factor_element(self, w):
        """``(side, x)`` if ``w`` lies in a factor (edge elements report the left side)."""
        sylls, h = w
        if not sylls:
            return LEFT, int(self.A.embed_left.image[h])
        if len(sylls) == 1:
            side, t = sylls[0]
            G = self.A.factor(side)
            return side, int(G.mul[t, self.A.embedding(side).image[h]])
        return None


@dataclass(frozen=True)
class OracleVerdict:
    conjugate: bool
    bound: int
    conjugator: tuple | None = None

    @property
    def verdict(self) -> str:
        return "conjugate" if self.conjugate else "not-found-within-bound"


def conjugates_within(nf: NormalForms, w, bound: int) -> dict:
    """All ``c w c^-1`` with ``c`` of syllable length at most ``bound``, mapped to one such ``c``.

    Conjugators are built innermost first: ``c = t1 (t2 (... (tn h)))``; states
    reached twice with the same outermost side are pruned.
    """
    A = nf.A
    found = {}
    frontier = {}
    for h in range(A.edge.order):
        c = ((), h)
        y = nf.conjugate(c, w)
        if (y, None) not in frontier:
            frontier[(y, None)] = c
    seen = set(frontier)
    for y, _ in frontier:
        found.setdefault(y, frontier[(y, None)])
    for _ in range(bound):
        nxt = {}
        for (y, last), c in frontier.items():
            for side in (LEFT, RIGHT):
                if side == last:
                    continue
                for t in nf.reps[side]:
                    tt = nf.of(side, t)
                    y2 = nf.conjugate(tt, y)
                    key = (y2, side)
                    if key in seen:
                        continue
                    seen.add(key)
                    c2 = nf.times(tt, c)
                    nxt[key] = c2
                    found.setdefault(y2, c2)
        frontier = nxt
        if not frontier:
            break
    return found


def oracle_conjugacy(A: Amalgam, x: tuple, y: tuple, bound: int = 6,
                     _cache: dict | None = None) -> OracleVerdict:
    """Search conjugators of syllable length <= ``bound`` taking factor element ``x`` to ``y``.

    ``x`` and ``y`` are ``(side, element id)`` pairs.
    """
    nf = A.__dict__.get("_normal_forms")
    if nf is None:
        nf = A.__dict__["_normal_forms"] = NormalForms(A)
    wx, wy = nf.of(*x), nf.of(*y)
    if wx == wy:
        return OracleVerdict(True, bound, nf.identity)
    key = (wx, bound)
    if _cache is not None and key in _cache:
        conj = _cache[key]
    else:
        conj = conjugates_within(nf, wx, bound)
        if _cache is not None:
            _cache[key] = conj
    c = conj.get(wy)
    return OracleVerdict(c is not None, bound, c)


def oracle_agreement(A: Amalgam, bound: int = 6) -> list:
    """Pairs of factor-class representatives where fusion and the oracle disagree."""
    T = torsion_classes(A)
    reps = [((s, c), (s, A.factor(s).classes.reps[c]))
            for s in (LEFT, RIGHT) for c in range(A.factor(s).classes.count)]
    cache: dict = {}
    bad = []
    for i, (ka, xa) in enumerate(reps):
        for kb, xb in reps[i:]:
            fused = T.index[ka] == T.index[kb]
            v = oracle_conjugacy(A, xa, xb, bound, cache)
            if fused != v.conjugate:
                bad.append((ka, kb, fused, v.conjugate))
    return bad

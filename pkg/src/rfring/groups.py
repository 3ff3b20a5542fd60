"""Finite groups as full multiplication tables.

Element ids are integers ``0 .. order-1`` with ``0`` the identity. Every group
is materialized eagerly (closure for permutation groups), so later stages
only ever index into integer tables.
"""

from __future__ import annotations

import math
import re
from collections import deque
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels

DEFAULT_CAP = 2000


class GroupError(ValueError):
    code = "group.invalid"


class SizeCapError(GroupError):
    code = "group.size_cap"


class NotAHomomorphism(GroupError):
    code = "group.not_a_homomorphism"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AmbiguousExtension(GroupError):
    code = "group.ambiguous_extension"


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.int32)
    a.setflags(write=False)
    return a


def _check_cap(n, cap):
    if n > cap:
        raise SizeCapError(f"group of order {n} exceeds the size cap {cap}")


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``mul[x, y]`` is the id of ``x*y``. ``labels`` are display names, and
    ``generators`` is a generating set used for display and for validation.
    """

    def __init__(self, mul, labels: Sequence[str] | None = None,
                 generators: Sequence[int] | None = None, name: str | None = None,
                 perms: Sequence[tuple] | None = None, validate: bool = True,
                 cap: int = DEFAULT_CAP):
        mul = np.asarray(mul)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        _check_cap(mul.shape[0], cap)
        self.mul = _frozen(mul)
        self.order = int(mul.shape[0])
        self.name = name
        if labels is None:
            labels = ["e"] + [f"x{i}" for i in range(1, self.order)]
        if len(labels) != self.order:
            raise GroupError("one label per element is required")
        self.labels = tuple(labels)
        self.perms = tuple(perms) if perms is not None else None
        if validate:
            self._validate_table()
        self.inv = _frozen(np.argmin(self.mul, axis=1))
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(int(g) for g in generators)
        if validate and not kernels.is_associative_light(self.mul, self._spanning_gens()):
            raise GroupError("multiplication table is not associative")

    def _validate_table(self):
        n = self.order
        ids = np.arange(n)
        if self.mul.min() < 0 or self.mul.max() >= n:
            raise GroupError("table entries out of range")
        if not (np.array_equal(self.mul[0], ids) and np.array_equal(self.mul[:, 0], ids)):
            raise GroupError("element 0 is not a two-sided identity")
        srt = np.sort(self.mul, axis=1)
        if not (srt == ids).all() or not (np.sort(self.mul, axis=0) == ids[:, None]).all():
            raise GroupError("table is not a Latin square (missing inverses)")

    def _spanning_gens(self):
        gens = list(self.generators)
        if len(self.subgroup_closure(gens)) != self.order:
            gens = self._greedy_generators()
        return gens

    def _greedy_generators(self):
        gens: list[int] = []
        reached = {0}
        for x in range(1, self.order):
            if x not in reached:
                gens.append(x)
                reached = self.subgroup_closure(gens)
        return gens

    def subgroup_closure(self, gens: Iterable[int]) -> set[int]:
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = int(self.mul[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{nm} of order {self.order}>"

    def __len__(self):
        return self.order

    def element(self, ref) -> int:
        """Resolve an element id or label (cycle strings accepted for permutation groups)."""
        if isinstance(ref, (int, np.integer)):
            if not 0 <= ref < self.order:
                raise GroupError(f"element id {ref} out of range")
            return int(ref)
        ref = str(ref).strip()
        try:
            return self.labels.index(ref)
        except ValueError:
            pass
        if self.perms is not None and ref.startswith("("):
            degree = len(self.perms[0])
            p = perm_from_cycles(degree, parse_cycles(ref))
            try:
                return self.perms.index(p)
            except ValueError:
                raise GroupError(f"permutation {ref} is not in the group") from None
        m = re.fullmatch(r"(\w+)\^(-?\d+)", ref)
        if m and m.group(1) in self.labels:
            return self.power(self.labels.index(m.group(1)), int(m.group(2)))
        raise GroupError(f"unknown element {ref!r}")

    def power(self, x: int, k: int) -> int:
        k %= int(self.element_orders[x])
        y = 0
        for _ in range(k):
            y = int(self.mul[y, x])
        return y

    @cached_property
    def element_orders(self) -> np.ndarray:
        return _frozen(kernels.element_orders(self.mul))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in set(self.element_orders.tolist())))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def classes(self) -> ConjClassTable:
        return ConjClassTable(self)


class ConjClassTable:
    """Conjugacy classes of a finite group, ordered by minimal representative."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        class_of, r = kernels.conjugacy_labels(group.mul, group.inv)
        self.class_of = _frozen(class_of)
        self.count = int(r)
        members: list[list[int]] = [[] for _ in range(r)]
        for x, c in enumerate(self.class_of.tolist()):
            members[c].append(x)
        self.classes = tuple(tuple(m) for m in members)
        self.reps = tuple(m[0] for m in members)
        self.sizes = tuple(len(m) for m in members)
        orders = group.element_orders
        self.elt_order = tuple(int(orders[x]) for x in self.reps)
        e = group.exponent
        pm = np.empty((r, e), dtype=np.int32)
        for c, x in enumerate(self.reps):
            y = 0
            for k in range(e):
                pm[c, k] = self.class_of[y]
                y = int(group.mul[y, x])
        self.power_map = _frozen(pm)
        self.inverse_class = tuple(int(self.class_of[group.inv[x]]) for x in self.reps)

    def __len__(self):
        return self.count

    def power(self, c: int, k: int) -> int:
        """Class of ``rep_c ** k``."""
        return int(self.power_map[c, k % self.power_map.shape[1]])

    @cached_property
    def structure_constants(self) -> np.ndarray:
        """``a[i, j, k]``: number of ways ``rep_k = x*y`` with ``x`` in class ``i``, ``y`` in class ``j``."""
        return kernels.class_constants(self.group.mul, self.group.inv, self.class_of,
                                       self.reps, self.count)

    def label(self, c: int) -> str:
        return self.group.labels[self.reps[c]]


def conjugacy_classes(G: FiniteGroup) -> ConjClassTable:
    return G.classes


def element_order(G: FiniteGroup, x) -> int:
    return int(G.element_orders[G.element(x)])


def make_cyclic(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    _check_cap(n, cap)
    ids = np.arange(n)
    mul = (ids[:, None] + ids[None, :]) % n
    labels = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    return FiniteGroup(mul, labels[:n], generators=(1,) if n > 1 else (),
                       name=f"C{n}", validate=False, cap=cap)


def direct_product(G: FiniteGroup, K: FiniteGroup, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Componentwise product; element ``(a, b)`` has id ``a*|K| + b``."""
    m, k = G.order, K.order
    _check_cap(m * k, cap)
    a = np.repeat(np.arange(m), k)
    b = np.tile(np.arange(k), m)
    mul = G.mul[a[:, None], a[None, :]] * k + K.mul[b[:, None], b[None, :]]
    labels = [f"({G.labels[x]},{K.labels[y]})" for x, y in zip(a.tolist(), b.tolist())]
    gens = [g * k for g in G.generators] + [h for h in K.generators]
    name = f"{G.name}x{K.name}" if G.name and K.name else None
    return FiniteGroup(mul, labels, generators=gens, name=name, validate=False, cap=cap)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """``"(1 2)(3 4 5)"`` -> ``[[1, 2], [3, 4, 5]]``; ``"()"`` is the identity."""
    text = text.strip()
    if _CYCLE_RE.sub("", text).strip():
        raise GroupError(f"bad cycle notation {text!r}")
    return [[int(t) for t in re.split(r"[\s,]+", c.strip())] for c in _CYCLE_RE.findall(text)
            if c.strip()]


def perm_from_cycles(degree: int, cycles) -> tuple:
    img = list(range(degree))
    seen = set()
    for cyc in cycles:
        for p in cyc:
            if not 1 <= p <= degree or p in seen:
                raise GroupError(f"invalid cycle {cyc} for degree {degree}")
            seen.add(p)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def cycle_string(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def from_permutations(degree: int, gens, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Close a set of permutations of ``{1..degree}`` breadth-first from the identity.

    Each generator is a list of cycles, a cycle string, or a 0-based image tuple.
    Composition is left to right: ``x*y`` applies ``x`` first.
    """
    if degree < 1:
        raise GroupError("degree must be positive")
    perms = []
    for g in gens:
        if isinstance(g, str):
            g = perm_from_cycles(degree, parse_cycles(g))
        elif len(g) and not isinstance(g[0], int):
            g = perm_from_cycles(degree, [list(c) for c in g])
        elif len(g) == 0:
            g = tuple(range(degree))
        g = tuple(int(v) for v in g)
        if sorted(g) != list(range(degree)):
            raise GroupError(f"generator {g} is not a bijection of degree {degree}")
        perms.append(g)

    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    parent = [0]
    via = [0]
    actions: list[list[int]] = [[] for _ in perms]
    i = 0
    while i < len(elements):
        x = elements[i]
        for k, g in enumerate(perms):
            y = tuple(g[v] for v in x)
            j = index.get(y)
            if j is None:
                j = len(elements)
                _check_cap(j + 1, cap)
                index[y] = j
                elements.append(y)
                parent.append(i)
                via.append(k)
            actions[k].append(j)
        i += 1

    n = len(elements)
    if perms:
        mul = kernels.fill_mul_table(np.array(actions, dtype=np.int32),
                                     np.array(parent, dtype=np.int32),
                                     np.array(via, dtype=np.int32))
    else:
        mul = np.zeros((1, 1), dtype=np.int32)
    gen_ids = []
    for g in perms:
        j = index[g]
        if j != 0 and j not in gen_ids:
            gen_ids.append(j)
    labels = [cycle_string(p) for p in elements]
    return FiniteGroup(mul, labels, generators=gen_ids, perms=elements, validate=False,
                       cap=max(cap, n))


class GroupHom:
    """A homomorphism given by the image of every source element."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image):
        self.source = source
        self.target = target
        self.image = _frozen(image)

    @cached_property
    def injective(self) -> bool:
        return int(np.count_nonzero(self.image == 0)) == 1

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def __repr__(self):
        return f"<GroupHom {self.source!r} -> {self.target!r}>"

    def class_map(self) -> tuple:
        """Target class of the image of each source class."""
        tgt = self.target.classes.class_of
        return tuple(int(tgt[self.image[x]]) for x in self.source.classes.reps)

    def compose(self, other: GroupHom) -> GroupHom:
        """``other`` after ``self``."""
        return GroupHom(self.source, other.target, other.image[self.image])


def hom(src: FiniteGroup, tgt: FiniteGroup, gen_images: Mapping) -> GroupHom:
    """Extend generator images to a homomorphism, or raise with a witness pair."""
    gimg = {src.element(k): tgt.element(v) for k, v in gen_images.items()}
    image = np.full(src.order, -1, dtype=np.int64)
    image[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, t in gimg.items():
            y = int(src.mul[x, g])
            if image[y] < 0:
                image[y] = tgt.mul[image[x], t]
                queue.append(y)
    if (image < 0).any():
        raise AmbiguousExtension("the given source elements do not generate the source group")
    lhs = image[src.mul]
    rhs = tgt.mul[image[:, None], image[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise NotAHomomorphism(
            f"relation violated at ({src.labels[x]}, {src.labels[y]}): "
            f"image of product is {tgt.labels[lhs[x, y]]}, "
            f"product of images is {tgt.labels[rhs[x, y]]}",
            witness=(src.labels[x], src.labels[y]))
    return GroupHom(src, tgt, image)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order))


def check_group_axioms(G: FiniteGroup, full: bool = False) -> bool:
    """Re-verify identity, inverses and associativity (all triples if ``full``)."""
    n = G.order
    ids = np.arange(n)
    if not (np.array_equal(G.mul[0], ids) and np.array_equal(G.mul[:, 0], ids)):
        return False
    if not (G.mul[ids, G.inv] == 0).all() or not (G.mul[G.inv, ids] == 0).all():
        return False
    if full:
        for x in range(n):
            if not np.array_equal(G.mul[G.mul[x]], G.mul[x][G.mul]):
                return False
        return True
    return kernels.is_associative_light(G.mul, G._spanning_gens())

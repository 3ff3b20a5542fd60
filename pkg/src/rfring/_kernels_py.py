"""Pure-Python (numpy) versions of the table kernels.

Loaded when the compiled ``_kernels`` extension is unavailable or when
``RFRING_PURE_PYTHON=1`` is set. Signatures match ``_kernels.pyx`` exactly.
"""

import numpy as np


def fill_mul_table(right_action, parent, via):
    """Multiplication table from a breadth-first Cayley-graph spanning tree.

    Element ``j > 0`` satisfies ``elt[j] = elt[parent[j]] * gen[via[j]]`` and
    ``right_action[k, i]`` is the id of ``elt[i] * gen[k]``.
    """
    n = len(parent)
    mul = np.empty((n, n), dtype=np.int32)
    mul[:, 0] = np.arange(n, dtype=np.int32)
    for j in range(1, n):
        mul[:, j] = right_action[via[j]][mul[:, parent[j]]]
    return mul


def is_associative_light(mul, gens):
    # Light's test: associativity on (x, g, y) for g in a generating set suffices.
    for g in gens:
        left = mul[mul[:, g]]            # (x*g)*y
        right = mul[:, mul[g]]           # x*(g*y)
        if not np.array_equal(left, right):
            return False
    return True


def conjugacy_labels(mul, inv):
    n = mul.shape[0]
    class_of = np.full(n, -1, dtype=np.int32)
    count = 0
    for x in range(n):
        if class_of[x] >= 0:
            continue
        # g^-1 x g for every g
        orbit = mul[mul[inv, x], np.arange(n)]
        class_of[orbit] = count
        count += 1
    return class_of, count


def class_constants(mul, inv, class_of, reps, nclasses):
    """``a[i, j, k]`` = number of ``x`` in class ``i`` with ``x^-1 * rep_k`` in class ``j``."""
    r = nclasses
    a = np.zeros((r, r, r), dtype=np.int64)
    reps = np.asarray(reps)
    for k in range(r):
        y = mul[inv, reps[k]]
        np.add.at(a, (class_of, class_of[y], k), 1)
    return a


def element_orders(mul):
    n = mul.shape[0]
    orders = np.zeros(n, dtype=np.int32)
    for x in range(n):
        y = x
        k = 1
        while y != 0:
            y = mul[y, x]
            k += 1
        orders[x] = k
    return orders

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled table kernels. Same signatures as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def fill_mul_table(const int[:, :] right_action, const int[:] parent, const int[:] via):
    cdef Py_ssize_t n = parent.shape[0]
    cdef Py_ssize_t i, j
    out = np.empty((n, n), dtype=np.int32)
    cdef int[:, :] mul = out
    for i in range(n):
        mul[i, 0] = <int>i
    for j in range(1, n):
        for i in range(n):
            mul[i, j] = right_action[via[j], mul[i, parent[j]]]
    return out


def is_associative_light(const int[:, :] mul, gens):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, y
    cdef int g
    for gg in gens:
        g = gg
        for x in range(n):
            for y in range(n):
                if mul[mul[x, g], y] != mul[x, mul[g, y]]:
                    return False
    return True


def conjugacy_labels(const int[:, :] mul, const int[:] inv):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, g
    cdef int count = 0
    out = np.full(n, -1, dtype=np.int32)
    cdef int[:] class_of = out
    for x in range(n):
        if class_of[x] >= 0:
            continue
        for g in range(n):
            class_of[mul[mul[inv[g], x], g]] = count
        count += 1
    return out, count


def class_constants(const int[:, :] mul, const int[:] inv, const int[:] class_of,
                    reps, Py_ssize_t nclasses):
    cdef Py_ssize_t r = nclasses
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x, k
    cdef int rep
    out = np.zeros((r, r, r), dtype=np.int64)
    cdef long long[:, :, :] a = out
    cdef int[:] reps_v = np.ascontiguousarray(reps, dtype=np.int32)
    for k in range(r):
        rep = reps_v[k]
        for x in range(n):
            a[class_of[x], class_of[mul[inv[x], rep]], k] += 1
    return out


def element_orders(const int[:, :] mul):
    cdef Py_ssize_t n = mul.shape[0]
    cdef Py_ssize_t x
    cdef int y, k
    out = np.zeros(n, dtype=np.int32)
    cdef int[:] orders = out
    for x in range(n):
        y = <int>x
        k = 1
        while y != 0:
            y = mul[y, x]
            k += 1
        orders[x] = k
    return out

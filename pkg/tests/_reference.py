"""Independent brute-force references used as test oracles.

Everything here is written from the problem definitions, on purpose without
reusing the package's encoders or scanners, so agreement between the two is
evidence rather than tautology.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np


def all_bitvectors(n):
    return itertools.product((0, 1), repeat=n)


def dense_qubo_value(q, offset, gamma, target, x):
    """Direct double-loop evaluation of an upper-triangular QUBO."""
    n = len(x)
    value = offset
    for i in range(n):
        for j in range(i, n):
            value += q[i][j] * x[i] * x[j]
    return value + gamma * (sum(x) - target) ** 2


def brute_force_qubo(matrix):
    """Minimum, count of minima, and the lexicographically smallest argmin."""
    best = None
    argmins = []
    for x in all_bitvectors(matrix.n):
        value = dense_qubo_value(matrix.q, matrix.offset, matrix.reg_gamma, matrix.reg_target, x)
        if best is None or value < best - 1e-9:
            best, argmins = value, [x]
        elif value <= best + 1e-9:
            argmins.append(x)
    return best, len(argmins), min(argmins)


def brute_force_maxcut(n, edges):
    best = -1
    argmaxes = []
    for x in all_bitvectors(n):
        value = sum(1 for a, b in edges if x[a] != x[b])
        if value > best:
            best, argmaxes = value, [x]
        elif value == best:
            argmaxes.append(x)
    return best, len(argmaxes), min(argmaxes)


def reference_cut(edges, x):
    return sum(x[a] + x[b] - 2 * x[a] * x[b] for a, b in edges)


def jssp_penalties(inst, vmap, x):
    """Penalty components evaluated straight from the schedule semantics.

    Returns (one_start, machine_overlap, precedence, completion) where each
    term is the unweighted count/sum its constraint contributes.
    """
    starts = defaultdict(list)
    for i, (j, k, t) in enumerate(vmap.triples):
        if x[i]:
            starts[(j, k)].append(t)

    one_start = 0.0
    for j, ops in enumerate(inst.jobs):
        for k in range(len(ops)):
            one_start += (len(starts[(j, k)]) - 1) ** 2

    machine_overlap = 0.0
    keys = [(j, k) for j, ops in enumerate(inst.jobs) for k in range(len(ops))]
    for a in range(len(keys)):
        j1, k1 = keys[a]
        op1 = inst.jobs[j1][k1]
        for b in range(a + 1, len(keys)):
            j2, k2 = keys[b]
            op2 = inst.jobs[j2][k2]
            if op1.machine != op2.machine:
                continue
            for t1 in starts[(j1, k1)]:
                for t2 in starts[(j2, k2)]:
                    if t1 < t2 + op2.duration and t2 < t1 + op1.duration:
                        machine_overlap += 1.0

    precedence = 0.0
    for j, ops in enumerate(inst.jobs):
        for k in range(len(ops) - 1):
            for t1 in starts[(j, k)]:
                for t2 in starts[(j, k + 1)]:
                    if t2 < t1 + ops[k].duration:
                        precedence += 1.0

    completion = 0.0
    for j, ops in enumerate(inst.jobs):
        k = len(ops) - 1
        for t in starts[(j, k)]:
            completion += (t + ops[k].duration - 1) / inst.t_max

    return one_start, machine_overlap, precedence, completion


def reference_jssp_cost(inst, vmap, weights, gamma, x):
    h1, h2, h3, h4 = jssp_penalties(inst, vmap, x)
    w1, w2, w3, w4 = weights
    regularizer = gamma * (sum(x) - inst.total_operations) ** 2
    return w1 * h1 + w2 * h2 + w3 * h3 + w4 * h4 + regularizer


def random_graph_edges(n, density, rng):
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return tuple(edges)

from itertools import permutations

import numpy as np


def permutation_sign(perm) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def leibniz_det(a):
    """Determinant as the signed sum over all permutations."""
    field = type(a)
    size = a.shape[0]
    total = field(0)
    for perm in permutations(range(size)):
        term = field(1)
        for i, j in enumerate(perm):
            term = term * a[i, j]
        total = total + term if permutation_sign(perm) == 1 else total - term
    return total


def has_nonzero_permutation(a) -> bool:
    """True iff some Leibniz term picks only non-zero entries."""
    support = np.asarray(a) != 0
    size = support.shape[0]
    return any(all(support[i, p[i]] for i in range(size)) for p in permutations(range(size)))


def convolve(code, sources):
    """x_t = sum_i s_{t-i} G_i written out term by term."""
    packets = []
    for t in range(len(sources)):
        x = code.field.Zeros(code.n)
        for i, block in enumerate(code.blocks):
            if t - i >= 0:
                x = x + sources[t - i] @ block
        packets.append(x)
    return packets

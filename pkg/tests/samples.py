"""Shared test data: small groups and randomly generated finite modules."""

import random

from torusclass.groups import cyclic_group, direct_product, klein_four, symmetric_group_s3
from torusclass.modules import module_from_generators

GROUPS = {
    "Z/2": lambda: cyclic_group(2),
    "Z/3": lambda: cyclic_group(3),
    "Z/4": lambda: cyclic_group(4),
    "Z/6": lambda: cyclic_group(6),
    "Z/2xZ/2": klein_four,
    "S3": symmetric_group_s3,
    "Z/2xZ/3": lambda: direct_product(cyclic_group(2), cyclic_group(3)),
}


def _permutation_with_cycle_lengths_dividing(n, k, rng):
    perm = list(range(k))
    start = 0
    while start < k:
        lengths = [d for d in range(1, k - start + 1) if n % d == 0]
        L = rng.choice(lengths)
        block = list(range(start, start + L))
        for i, x in enumerate(block):
            perm[x] = block[(i + 1) % L]
        start += L
    return perm


def random_cyclic_module(rng: random.Random, max_order=6, max_size=64):
    """A finite ``Z/n``-module ``(Z/m)^k`` with a conjugated signed-permutation action."""
    n = rng.randint(2, max_order)
    while True:
        m, k = rng.randint(2, 6), rng.randint(1, 3)
        if m ** k <= max_size:
            break
    perm = _permutation_with_cycle_lengths_dividing(n, k, rng)
    sign = rng.choice([1, -1]) if n % 2 == 0 else 1
    A = [[sign if perm[j] == i else 0 for j in range(k)] for i in range(k)]
    for _ in range(rng.randint(0, 3)):
        if k < 2:
            break
        i, j = rng.sample(range(k), 2)
        c = rng.randint(1, m - 1)
        # conjugate by E = I + c e_ij
        A = [row[:] for row in A]
        for col in range(k):
            A[i][col] += c * A[j][col]
        for row in range(k):
            A[row][j] -= c * A[row][i]
    A = [[x % m for x in row] for row in A]
    G = cyclic_group(n)
    return G, module_from_generators(G, 0, (m,) * k, [G.cyclic_generator()], [A])

"""Brute-force reference computations used to cross-check the library.

Nothing here imports the code under test except for plain data types, so a
bug in the library cannot silently reappear in its own oracle.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import ceil, gcd, lcm

import numpy as np


def ages(m: int, weights) -> list[tuple[list[Fraction], Fraction]]:
    """(coordinates, age) for every nontrivial element j of 1/m(weights)."""
    out = []
    for j in range(1, m):
        coords = [Fraction(j * a % m, m) for a in weights]
        out.append((coords, sum(coords)))
    return out


def _box_mask(m: int, weights, k: int, scale: int = 1):
    """Boolean grid over the search box marking x >= 0 with
    sum_i c_i x_i >= k (1 - age) for every element of age < 1.

    The box has side scale * k * l_i where l_i bounds each coordinate of a
    minimal point at level 1.  Returns None when no element has age < 1.
    """
    n = len(weights)
    cons = [(c, 1 - a) for c, a in ages(m, weights) if a < 1]
    if not cons:
        return None
    bound = []
    for i in range(n):
        li = 1
        for c, gap in cons:
            if c[i]:
                li = max(li, ceil(gap / c[i]))
        bound.append(scale * k * li)
    grid = np.indices([b + 1 for b in bound])
    keep = np.ones(grid.shape[1:], dtype=bool)
    for c, gap in cons:
        den = lcm(*(x.denominator for x in c), gap.denominator)
        total = sum(int(x * den) * grid[i] for i, x in enumerate(c))
        keep &= total >= k * int(gap * den)
    return keep


def box_points(m: int, weights, k: int, scale: int = 1) -> set[tuple[int, ...]]:
    """Lattice points of the search box satisfying every age inequality."""
    keep = _box_mask(m, weights, k, scale)
    if keep is None:
        return {(0,) * len(weights)}
    return {tuple(int(v) for v in row) for row in np.argwhere(keep)}


def box_minimal_points(m: int, weights, k: int, scale: int = 1) -> set[tuple[int, ...]]:
    """Minimal points of the box solution set.

    All inequality coefficients are nonnegative, so the solution set is closed
    upwards inside the box; x is minimal iff no x - e_i is a solution.
    """
    keep = _box_mask(m, weights, k, scale)
    if keep is None:
        return {(0,) * len(weights)}
    minimal = keep.copy()
    for i in range(keep.ndim):
        below = np.zeros_like(keep)
        dst = [slice(None)] * keep.ndim
        src = [slice(None)] * keep.ndim
        dst[i], src[i] = slice(1, None), slice(None, -1)
        below[tuple(dst)] = keep[tuple(src)]
        minimal &= ~below
    return {tuple(int(v) for v in row) for row in np.argwhere(minimal)}


def minimal_elements(points: set[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Elements of an order ideal's complement that no other element divides."""
    pts = sorted(points, key=sum)
    minimal: list[tuple[int, ...]] = []
    for p in pts:
        if not any(all(a <= b for a, b in zip(q, p)) for q in minimal):
            minimal.append(p)
    return set(minimal)


def harvey_cyclic(n: int, mults) -> bool:
    """Existence of a Z_n generating vector of the given type (Harvey's criterion)."""
    mults = list(mults)
    M = lcm(*mults)
    if M != n:
        return False
    for j in range(len(mults)):
        rest = mults[:j] + mults[j + 1 :]
        if lcm(*rest) != M:
            return False
    if n % 2 == 0:
        two = n & -n
        if sum(1 for m in mults if m % two == 0) % 2:
            return False
    return True


def fermat_invariant_pairs(b: int) -> set[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Invariant bicanonical monomials of the Fermat square, from the congruence system.

    Monomials x0^m0 x1^m1 x2^m2 * y0^n0 y1^n1 y2^n2 with m0+m1+m2 = n0+n1+n2 = 2n-6,
    m2, n2 <= n-1, and
        m1 + 4 + 2b + n1 + b n2 = 0 (mod n),  m2 - 2b - b n1 - n2 = 0 (mod n).
    """
    n = b * b
    D = 2 * n - 6
    mons = np.array([(D - m1 - m2, m1, m2) for m2 in range(n) for m1 in range(D - m2 + 1)])
    m1 = mons[:, 1][:, None]
    m2 = mons[:, 2][:, None]
    n1 = mons[:, 1][None, :]
    n2 = mons[:, 2][None, :]
    ok = ((m1 + 4 + 2 * b + n1 + b * n2) % n == 0) & ((m2 - 2 * b - b * n1 - n2) % n == 0)
    i, j = np.nonzero(ok)
    return {(tuple(int(x) for x in mons[a]), tuple(int(x) for x in mons[c])) for a, c in zip(i, j)}


def cyclic_generating_vector(n: int, mults):
    """First generating vector of Z_n in lexicographic order, by exhaustive search."""
    for vec in product(range(n), repeat=len(mults)):
        if sum(vec) % n:
            continue
        if any(n // gcd(h, n) != m for h, m in zip(vec, mults)):
            continue
        g = 0
        for h in vec:
            g = gcd(g, h)
        if gcd(g, n) == 1:
            return vec
    return None

"""
Weyl groups of type A_{n-1} and C_g as (signed) permutation groups.

Elements are one-line tuples: ``w[i-1] = w(i)``, extended to negatives by
``w(-i) = -w(i)``.  A permutation of {1..n} is the same tuple with all entries
positive, so multiplication, length and Bruhat order are shared between the
two families; only the set of simple reflections differs.

Simple reflections: ``s_0`` changes the sign in position 1 (type C only),
``s_i`` for i >= 1 swaps positions i and i+1.  Right multiplication ``w*s_i``
acts on positions, left multiplication ``s_i*w`` acts on values.

>>> length((-2, -1))
3
>>> min_rep((-1, -2), {1})
(-2, -1)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

SignedPermutation = tuple[int, ...]
Permutation = tuple[int, ...]

# limits for exhaustive computations
MAX_BFS_ORDER = 50_000
MAX_RANK = {"A": 8, "C": 8}  # A_8 = S_9
MAX_QUOTIENT_SIZE = 2**20


class RankTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CoxeterDescriptor:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in ("A", "C"):
            raise ValueError(f"unsupported family {self.family!r}")
        if self.rank < 1:
            raise ValueError("rank must be >= 1")

    @property
    def size(self) -> int:
        """Number of positions permuted."""
        return self.rank + 1 if self.family == "A" else self.rank

    @property
    def simple_indices(self) -> frozenset[int]:
        n = self.size
        return frozenset(range(1, n)) if self.family == "A" else frozenset(range(n))

    @property
    def order(self) -> int:
        n = self.size
        return factorial(n) if self.family == "A" else 2**n * factorial(n)

    def identity(self) -> SignedPermutation:
        return identity(self.size)

    def check_element(self, w: SignedPermutation) -> None:
        check_signed(w)
        if len(w) != self.size:
            raise ValueError(f"{w} has the wrong size for {self}")
        if self.family == "A" and any(x < 0 for x in w):
            raise ValueError(f"{w} is not a permutation")

    def check_subset(self, J: Iterable[int]) -> frozenset[int]:
        J = frozenset(J)
        if not J <= self.simple_indices:
            raise ValueError(f"{sorted(J - self.simple_indices)} are not simple indices of {self}")
        return J


def type_A(n: int) -> CoxeterDescriptor:
    """The symmetric group on {1..n}, i.e. A_{n-1}."""
    return CoxeterDescriptor("A", n - 1)


def type_C(g: int) -> CoxeterDescriptor:
    return CoxeterDescriptor("C", g)


def check_signed(values: Iterable[int]) -> SignedPermutation:
    w = tuple(int(x) for x in values)
    if sorted(abs(x) for x in w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a signed permutation")
    return w


def check_perm(values: Iterable[int]) -> Permutation:
    w = tuple(int(x) for x in values)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def identity(n: int) -> SignedPermutation:
    return tuple(range(1, n + 1))


def apply(w: SignedPermutation, i: int) -> int:
    return w[i - 1] if i > 0 else -w[-i - 1]


def multiply(u: SignedPermutation, w: SignedPermutation) -> SignedPermutation:
    """(u*w)(i) = u(w(i))."""
    if len(u) != len(w):
        raise ValueError(f"rank mismatch: {len(u)} vs {len(w)}")
    return tuple(apply(u, x) for x in w)


def inverse(w: SignedPermutation) -> SignedPermutation:
    out = [0] * len(w)
    for i, x in enumerate(w, 1):
        out[abs(x) - 1] = i if x > 0 else -i
    return tuple(out)


def simple_reflection(i: int, n: int) -> SignedPermutation:
    return right_mul_simple(identity(n), i)


def right_mul_simple(w: SignedPermutation, i: int) -> SignedPermutation:
    if i == 0:
        return (-w[0],) + w[1:]
    return w[:i - 1] + (w[i], w[i - 1]) + w[i + 1:]


def left_mul_simple(i: int, w: SignedPermutation) -> SignedPermutation:
    if i == 0:
        return tuple(-x if abs(x) == 1 else x for x in w)
    out = []
    for x in w:
        a = abs(x)
        if a == i:
            x = i + 1 if x > 0 else -(i + 1)
        elif a == i + 1:
            x = i if x > 0 else -i
        out.append(x)
    return tuple(out)


def length(w: SignedPermutation) -> int:
    """Coxeter length: inversions plus the absolute values of the negative entries."""
    n = len(w)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
    return inv - sum(x for x in w if x < 0)


def descents(w: SignedPermutation, side: str = "right", desc: CoxeterDescriptor | None = None) -> frozenset[int]:
    if desc is None:
        desc = type_C(len(w))
    lw = length(w)
    if side == "right":
        return frozenset(i for i in desc.simple_indices if length(right_mul_simple(w, i)) < lw)
    if side == "left":
        return frozenset(i for i in desc.simple_indices if length(left_mul_simple(i, w)) < lw)
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def _has_left_descent_in(w: SignedPermutation, J: Iterable[int]) -> bool:
    lw = length(w)
    return any(length(left_mul_simple(j, w)) < lw for j in J)


def reduced_word(w: SignedPermutation) -> tuple[int, ...]:
    """A reduced word (i_1, ..., i_k) with w = s_{i_1} ... s_{i_k}, by stripping
    the smallest right descent repeatedly."""
    word = []
    lw = length(w)
    while lw:
        for i in range(len(w)):
            u = right_mul_simple(w, i)
            lu = length(u)
            if lu < lw:
                word.append(i)
                w, lw = u, lu
                break
    return tuple(reversed(word))


def from_word(word: Iterable[int], n: int) -> SignedPermutation:
    w = identity(n)
    for i in word:
        w = right_mul_simple(w, i)
    return w


def longest_element(desc: CoxeterDescriptor) -> SignedPermutation:
    n = desc.size
    if desc.family == "C":
        return tuple(-i for i in range(1, n + 1))
    return tuple(range(n, 0, -1))


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def _cayley_distances(desc: CoxeterDescriptor) -> dict[SignedPermutation, int]:
    if desc.order > MAX_BFS_ORDER:
        raise RankTooLarge(f"|W({desc.family}{desc.rank})| = {desc.order} is too large for BFS")
    gens = sorted(desc.simple_indices)
    start = desc.identity()
    dist = {start: 0}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        d = dist[w] + 1
        for i in gens:
            u = right_mul_simple(w, i)
            if u not in dist:
                dist[u] = d
                queue.append(u)
    return dist


def cayley_bfs_length(w: SignedPermutation, desc: CoxeterDescriptor | None = None) -> int:
    """Graph distance from the identity in the Cayley graph; an oracle for :func:`length`."""
    if desc is None:
        desc = type_C(len(w))
    return _cayley_distances(desc)[tuple(w)]


def group_elements(desc: CoxeterDescriptor) -> list[SignedPermutation]:
    return sorted(_cayley_distances(desc), key=_sort_key)


def _sort_key(w: SignedPermutation) -> tuple:
    return (length(w), w)


def parabolic_order(desc: CoxeterDescriptor, J: Iterable[int]) -> int:
    """|W_J|, from the connected components of J in the Dynkin diagram."""
    J = sorted(desc.check_subset(J))
    order = 1
    run: list[int] = []
    for j in J + [None]:
        if run and (j is None or j != run[-1] + 1):
            if desc.family == "C" and run[0] == 0:
                order *= 2 ** len(run) * factorial(len(run))
            else:
                order *= factorial(len(run) + 1)
            run = []
        if j is not None:
            run.append(j)
    return order


def min_coset_reps(desc: CoxeterDescriptor, J: Iterable[int]) -> list[SignedPermutation]:
    """Minimal-length representatives of the left cosets W_J\\W, i.e. the
    elements with no left descent in J, sorted by (length, one-line form).

    Generated by BFS inside the quotient: if w has no left descent in J then
    neither has w*s for any right descent s of w, so the set is connected
    under length-increasing right multiplication.
    """
    J = desc.check_subset(J)
    if desc.rank > MAX_RANK[desc.family]:
        raise RankTooLarge(f"rank {desc.rank} exceeds the supported maximum {MAX_RANK[desc.family]}")
    if desc.order // parabolic_order(desc, J) > MAX_QUOTIENT_SIZE:
        raise RankTooLarge("quotient too large to enumerate")
    gens = sorted(desc.simple_indices)
    start = desc.identity()
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        lw = length(w)
        for i in gens:
            u = right_mul_simple(w, i)
            if u in seen or length(u) < lw or _has_left_descent_in(u, J):
                continue
            seen.add(u)
            queue.append(u)
    return sorted(seen, key=_sort_key)


def min_rep(w: SignedPermutation, J: Iterable[int]) -> SignedPermutation:
    """The unique minimal element of W_J*w, by stripping left descents in J."""
    J = sorted(J)
    lw = length(w)
    changed = True
    while changed:
        changed = False
        for j in J:
            u = left_mul_simple(j, w)
            lu = length(u)
            if lu < lw:
                w, lw, changed = u, lu, True
    return w


def poincare_quotient(desc: CoxeterDescriptor, J: Iterable[int]) -> list[int]:
    """Coefficients of sum over minimal representatives of q^length."""
    coeffs: list[int] = []
    for w in min_coset_reps(desc, J):
        lw = length(w)
        coeffs.extend([0] * (lw + 1 - len(coeffs)))
        coeffs[lw] += 1
    return coeffs


# ---------------------------------------------------------------- Bruhat order


def _subword_products(word: tuple[int, ...], n: int) -> set[SignedPermutation]:
    reach = {identity(n)}
    for i in word:
        reach |= {right_mul_simple(x, i) for x in reach}
    return reach


def bruhat_leq(u: SignedPermutation, w: SignedPermutation) -> bool:
    """u <= w in Bruhat order, by the subword criterion on a reduced word of w."""
    if len(u) != len(w):
        raise ValueError("elements of different groups")
    lu, lw = length(u), length(w)
    if lu > lw:
        return False
    if lu == lw:
        return u == w
    return u in _subword_products(reduced_word(w), len(w))


def reflections(desc: CoxeterDescriptor) -> list[SignedPermutation]:
    """All conjugates of simple reflections."""
    n = desc.size
    simple = [simple_reflection(i, n) for i in sorted(desc.simple_indices)]
    out = {multiply(multiply(x, s), inverse(x)) for x in _cayley_distances(desc) for s in simple}
    return sorted(out, key=_sort_key)


def bruhat_upset_oracle(u: SignedPermutation, desc: CoxeterDescriptor) -> set[SignedPermutation]:
    """{w : u <= w}, as the closure of u under covers x -> x*t with
    l(x*t) = l(x) + 1, t a reflection."""
    refl = reflections(desc)
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        lx = length(x)
        for t in refl:
            y = multiply(x, t)
            if y not in seen and length(y) == lx + 1:
                seen.add(y)
                stack.append(y)
    return seen


def bruhat_leq_oracle(u: SignedPermutation, w: SignedPermutation, desc: CoxeterDescriptor | None = None) -> bool:
    if desc is None:
        desc = type_C(len(w))
    return w in bruhat_upset_oracle(u, desc)


def iter_signed(g: int) -> Iterator[SignedPermutation]:
    """All 2^g g! signed permutations in no particular order (no BFS)."""
    from itertools import permutations, product
    for perm in permutations(range(1, g + 1)):
        for signs in product((1, -1), repeat=g):
            yield tuple(s * x for s, x in zip(signs, perm))

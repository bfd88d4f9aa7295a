"""
Combinatorics of Ekedahl-Oort strata for principally polarized abelian
varieties of dimension g.

A stratum is labelled by an elementary sequence phi, which extends by
duality to a final sequence psi on {0..2g}.  Two permutations of {1..2g} are
read off psi: the Frobenius permutation (where F sends the i-th vector of the
standard final basis) and the coset permutation, which decodes to a signed
permutation whose minimal representative modulo S_g is the Weyl group label
of the stratum.  The stratum dimension is both sum(phi) and the length of
that representative; :func:`stratum` refuses to return a record where the two
disagree.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb

import networkx as nx

from . import weyl
from .weyl import Permutation, SignedPermutation

MAX_POINTWISE_G = 8
MAX_BRUHAT_G = 4


class ConsistencyError(RuntimeError):
    """Two independent computations of the same invariant disagree."""


@dataclass(frozen=True, order=True)
class ElementarySequence:
    phi: tuple[int, ...]

    def __post_init__(self):
        phi = tuple(int(x) for x in self.phi)
        object.__setattr__(self, "phi", phi)
        if not phi:
            raise ValueError("an elementary sequence needs g >= 1")
        prev = 0
        for i, x in enumerate(phi, 1):
            if x < prev:
                raise ValueError(f"phi({i})={x} is smaller than phi({i - 1})={prev}")
            if x > prev + 1:
                raise ValueError(f"phi({i})={x} exceeds phi({i - 1})+1")
            prev = x

    @classmethod
    def parse(cls, text: str) -> "ElementarySequence":
        try:
            values = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
        except ValueError:
            raise ValueError(f"cannot parse {text!r} as a comma-separated integer list") from None
        return cls(tuple(values))

    @property
    def g(self) -> int:
        return len(self.phi)

    def __call__(self, i: int) -> int:
        return self.phi[i - 1] if i else 0

    def __str__(self) -> str:
        return ",".join(map(str, self.phi))

    def sort_key(self) -> tuple:
        return (sum(self.phi), self.phi)


@dataclass(frozen=True)
class FinalSequence:
    """psi(1..n) with psi(0) = 0 implicit and steps of 0 or 1.

    For a polarized module n = 2g and psi is self-dual; that is checked by
    :meth:`is_self_dual`, not on construction, since final types of
    unpolarized modules are final sequences too.
    """
    psi: tuple[int, ...]

    def __post_init__(self):
        psi = tuple(int(x) for x in self.psi)
        object.__setattr__(self, "psi", psi)
        prev = 0
        for i, x in enumerate(psi, 1):
            if x - prev not in (0, 1):
                raise ValueError(f"psi({i})={x} does not follow psi({i - 1})={prev} by a step of 0 or 1")
            prev = x

    @property
    def n(self) -> int:
        return len(self.psi)

    def __call__(self, i: int) -> int:
        return self.psi[i - 1] if i else 0

    def rise(self, i: int) -> bool:
        return self(i) == self(i - 1) + 1

    def is_self_dual(self) -> bool:
        if self.n % 2:
            return False
        g = self.n // 2
        return all(self(2 * g - i) == self(i) + g - i for i in range(g + 1))

    def __str__(self) -> str:
        return ",".join(map(str, self.psi))


@dataclass(frozen=True, order=True)
class KraftWord:
    letters: str
    multiplicity: int = 1

    def __str__(self) -> str:
        return f"{self.letters}^{self.multiplicity}"


@dataclass(frozen=True)
class StratumRecord:
    g: int
    phi: ElementarySequence
    psi: FinalSequence
    frobenius_perm: Permutation
    coset_perm: Permutation
    w_min: SignedPermutation
    dim: int
    a_number: int
    p_rank: int
    kraft: tuple[KraftWord, ...] = field(default=())

    @property
    def reduced_word(self) -> tuple[int, ...]:
        return weyl.reduced_word(self.w_min)

    def sort_key(self) -> tuple:
        return self.phi.sort_key()


def _as_phi(phi) -> ElementarySequence:
    return phi if isinstance(phi, ElementarySequence) else ElementarySequence(tuple(phi))


# ---------------------------------------------------------------- sequences


def enumerate_elementary(g: int) -> list[ElementarySequence]:
    if g < 1:
        raise ValueError("g must be >= 1")
    out = [()]
    for _ in range(g):
        out = [s + (last + step,) for s in out for last in [s[-1] if s else 0] for step in (0, 1)]
    return sorted((ElementarySequence(s) for s in out), key=ElementarySequence.sort_key)


def dimension(phi) -> int:
    return sum(_as_phi(phi).phi)


def a_number(phi) -> int:
    phi = _as_phi(phi)
    return phi.g - phi(phi.g)


def p_rank(phi) -> int:
    phi = _as_phi(phi)
    return max((i for i in range(1, phi.g + 1) if phi(i) == i), default=0)


def final_sequence(phi) -> FinalSequence:
    phi = _as_phi(phi)
    g = phi.g
    psi = [0] + list(phi.phi) + [0] * g
    for j in range(g + 1, 2 * g + 1):
        psi[j] = psi[2 * g - j] + j - g
    out = FinalSequence(tuple(psi[1:]))
    assert out.is_self_dual()
    return out


def frobenius_permutation(psi: FinalSequence) -> Permutation:
    """pi(i) = psi(i) at a rise, psi(n) + i - psi(i) at a flat.

    For a self-dual psi on {1..2g}, psi(2g) = g, so a flat goes to g + i - psi(i).
    """
    top = psi(psi.n)
    return tuple(psi(i) if psi.rise(i) else top + i - psi(i) for i in range(1, psi.n + 1))


def coset_permutation(psi: FinalSequence) -> Permutation:
    """pi'(i) = g + psi(i) at a rise, i - psi(i) at a flat."""
    if not psi.is_self_dual():
        raise ValueError(f"psi=({psi}) is not self-dual")
    g = psi.n // 2
    return tuple(g + psi(i) if psi.rise(i) else i - psi(i) for i in range(1, psi.n + 1))


def to_weyl(pi_prime: Permutation) -> SignedPermutation:
    """Decode a permutation of {1..2g} with pi'(i) + pi'(2g+1-i) = 2g+1 into
    W(C_g) by reading its second half."""
    pi_prime = weyl.check_perm(pi_prime)
    n = len(pi_prime)
    if n % 2:
        raise ValueError("permutation of odd degree")
    g = n // 2
    for i in range(1, n + 1):
        if pi_prime[i - 1] + pi_prime[n - i] != n + 1:
            raise ValueError(f"pi'({i}) + pi'({n + 1 - i}) != {n + 1}")
    return tuple(v - g if v > g else -(g + 1 - v) for v in pi_prime[g:])


# ---------------------------------------------------------------- Kraft words


def canonical_rotation(word: str) -> str:
    return min(word[k:] + word[:k] for k in range(len(word))) if word else word


def _primitive_root(word: str) -> tuple[str, int]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d], n // d
    return word, 1


def kraft_words(pi: Permutation, psi: FinalSequence) -> tuple[KraftWord, ...]:
    """Cyclic words in F (rise) and V (flat) along the cycles of pi.

    A cycle whose word is a proper power w^k contributes k copies of w.
    """
    n = len(pi)
    if n != psi.n:
        raise ValueError("pi and psi have different degrees")
    counts: Counter[str] = Counter()
    seen = [False] * (n + 1)
    for start in range(1, n + 1):
        if seen[start]:
            continue
        letters = []
        i = start
        while not seen[i]:
            seen[i] = True
            letters.append("F" if psi.rise(i) else "V")
            i = pi[i - 1]
        root, k = _primitive_root(canonical_rotation("".join(letters)))
        counts[canonical_rotation(root)] += k
    return tuple(KraftWord(w, m) for w, m in sorted(counts.items()))


# ---------------------------------------------------------------- strata


def stratum(phi) -> StratumRecord:
    phi = _as_phi(phi)
    g = phi.g
    psi = final_sequence(phi)
    pi = frobenius_permutation(psi)
    pi_prime = coset_permutation(psi)
    # J = {1..g-1}; empty for g = 1
    w_min = weyl.min_rep(to_weyl(pi_prime), range(1, g))
    dim = dimension(phi)
    if weyl.length(w_min) != dim:
        raise ConsistencyError(f"phi=({phi}): length({w_min}) = {weyl.length(w_min)} but sum(phi) = {dim}")
    return StratumRecord(
        g=g, phi=phi, psi=psi, frobenius_perm=pi, coset_perm=pi_prime, w_min=w_min,
        dim=dim, a_number=a_number(phi), p_rank=p_rank(phi), kraft=kraft_words(pi, psi),
    )


def all_strata(g: int, jobs: int = 1) -> list[StratumRecord]:
    phis = enumerate_elementary(g)
    if jobs > 1 and len(phis) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(stratum, phis, chunksize=max(1, len(phis) // (4 * jobs))))
    else:
        records = [stratum(phi) for phi in phis]
    return sorted(records, key=StratumRecord.sort_key)


# ---------------------------------------------------------------- posets


@dataclass(frozen=True)
class Poset:
    """Hasse diagram over strata; edges are (i, j) index pairs with
    records[i] covered by records[j]."""
    g: int
    order: str
    records: tuple[StratumRecord, ...]
    edges: tuple[tuple[int, int], ...]


def _hasse(records: list[StratumRecord], leq) -> tuple[tuple[int, int], ...]:
    G = nx.DiGraph()
    G.add_nodes_from(range(len(records)))
    for i, r in enumerate(records):
        for j, s in enumerate(records):
            if i != j and leq(r, s):
                G.add_edge(i, j)
    if not nx.is_directed_acyclic_graph(G):
        raise ConsistencyError("comparison relation is not antisymmetric")
    return tuple(sorted(nx.transitive_reduction(G).edges()))


def pointwise_leq(a: ElementarySequence, b: ElementarySequence) -> bool:
    return all(x <= y for x, y in zip(a.phi, b.phi))


def eo_poset(g: int, order: str = "pointwise", records: list[StratumRecord] | None = None) -> Poset:
    if order == "pointwise":
        limit = MAX_POINTWISE_G
        leq = lambda r, s: pointwise_leq(r.phi, s.phi)  # noqa: E731
    elif order == "bruhat":
        limit = MAX_BRUHAT_G
        leq = lambda r, s: weyl.bruhat_leq(r.w_min, s.w_min)  # noqa: E731
    else:
        raise ValueError(f"order must be 'pointwise' or 'bruhat', not {order!r}")
    if not 1 <= g <= limit:
        raise ValueError(f"g={g} is outside 1..{limit} for the {order} order")
    if records is None:
        records = all_strata(g)
    return Poset(g, order, tuple(records), _hasse(list(records), leq))


@dataclass(frozen=True)
class PosetComparison:
    g: int
    agree: bool
    only_pointwise: tuple[tuple[str, str], ...]
    only_bruhat: tuple[tuple[str, str], ...]

    def report(self) -> str:
        if self.agree:
            return f"g={self.g}: pointwise and bruhat Hasse diagrams agree"
        lines = [f"g={self.g}: pointwise and bruhat Hasse diagrams DISAGREE"]
        lines += [f"  cover only in pointwise: ({a}) < ({b})" for a, b in self.only_pointwise]
        lines += [f"  cover only in bruhat: ({a}) < ({b})" for a, b in self.only_bruhat]
        return "\n".join(lines)


def compare_posets(g: int, records: list[StratumRecord] | None = None) -> PosetComparison:
    """Compare the two Hasse diagrams through the phi <-> w_min bijection.

    Both posets share the same node list, so the bijection is the identity
    on indices and isomorphism means equal edge sets.
    """
    if records is None:
        records = all_strata(g)
    pw = eo_poset(g, "pointwise", records)
    br = eo_poset(g, "bruhat", records)

    def named(edges):
        return {(str(records[i].phi), str(records[j].phi)) for i, j in edges}

    a, b = named(pw.edges), named(br.edges)
    return PosetComparison(g, a == b, tuple(sorted(a - b)), tuple(sorted(b - a)))


# ---------------------------------------------------------------- type A


def grassmannian_strata(n: int, d: int) -> list[tuple[Permutation, int]]:
    """Minimal representatives of (S_d x S_{n-d})\\S_n with their lengths."""
    if not 0 <= d <= n or n < 1:
        raise ValueError(f"need 0 <= d <= n and n >= 1, got n={n}, d={d}")
    if n == 1:
        return [((1,), 0)]
    J = set(range(1, n)) - {d}
    reps = weyl.min_coset_reps(weyl.type_A(n), J)
    return [(w, weyl.length(w)) for w in reps]


def grassmannian_strata_bruteforce(n: int, d: int) -> list[tuple[Permutation, int]]:
    """Same set by filtering all of S_n: w is minimal iff the values 1..d and
    d+1..n each appear in increasing order."""
    out = []
    for w in permutations(range(1, n + 1)):
        pos = weyl.inverse(w)
        if all(pos[i] < pos[i + 1] for i in range(n - 1) if i + 1 != d):
            out.append((w, weyl.length(w)))
    return sorted(out, key=lambda t: (t[1], t[0]))


def gaussian_binomial(n: int, d: int) -> list[int]:
    """Coefficients of [n choose d]_q, counted as d-subsets of {0..n-1} by
    sum of (element - position)."""
    coeffs = [0] * (d * (n - d) + 1)
    for sub in combinations(range(n), d):
        coeffs[sum(x - k for k, x in enumerate(sub))] += 1
    assert sum(coeffs) == comb(n, d)
    return coeffs

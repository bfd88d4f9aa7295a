"""
Dieudonne modules of BT_1 group schemes over a finite field k.

A module is N = k^n with a sigma-linear F and a sigma^-1-linear V, stored as
matrices: ``F(x) = A sigma(x)``, ``V(x) = B sigma^-1(x)``.  An optional
alternating pairing ``<x, y> = x^T P y`` must satisfy
``<F x, y> = sigma(<x, V y>)``, i.e. ``A^T P = sigma(P) sigma(B)``.

Subspaces are kept as reduced row echelon bases so that equality is equality
of tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import fields as la
from .fields import FiniteField, Matrix, Vector
from .strata import (
    ElementarySequence,
    FinalSequence,
    final_sequence,
    frobenius_permutation,
    kraft_words,
)

DEFAULT_CENSUS_BUDGET = 2**26


class ClassificationError(RuntimeError):
    """The module does not have a well-defined final type."""


# ---------------------------------------------------------------- subspaces


@dataclass(frozen=True)
class Subspace:
    n: int
    basis: Matrix  # rref rows

    @classmethod
    def span(cls, K: FiniteField, n: int, vectors: Iterable[Sequence[int]]) -> "Subspace":
        return cls(n, la.rref(K, list(vectors))[0])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, la.identity_matrix(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, K: FiniteField, other: "Subspace") -> bool:
        return la.rank(K, self.basis + other.basis) == self.dim if other.basis else True

    def contains_vector(self, K: FiniteField, v: Sequence[int]) -> bool:
        return la.rank(K, self.basis + (tuple(v),)) == self.dim

    def annihilator(self, K: FiniteField) -> Matrix:
        """Rows c with c . m = 0 for every m in the subspace."""
        return la.nullspace(K, self.basis, self.n)

    def intersect(self, K: FiniteField, other: "Subspace") -> "Subspace":
        eqs = self.annihilator(K) + other.annihilator(K)
        return Subspace.span(K, self.n, la.nullspace(K, eqs, self.n)) if eqs else Subspace.full(self.n)


@dataclass(frozen=True)
class SemilinearMap:
    """T(x) = matrix * sigma^twist(x)."""
    matrix: Matrix
    twist: int

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, K: FiniteField, x: Sequence[int]) -> Vector:
        return la.matvec(K, self.matrix, la.frob_vector(K, x, self.twist))


def semilinear_image(K: FiniteField, T: SemilinearMap, M: Subspace) -> Subspace:
    if M.n != T.n:
        raise ValueError("dimension mismatch")
    return Subspace.span(K, T.n, (T(K, b) for b in M.basis))


def semilinear_preimage(K: FiniteField, T: SemilinearMap, M: Subspace) -> Subspace:
    """{x : T(x) in M}.  With y = sigma^e(x) this is the linear condition
    Q A y = 0, Q the annihilator of M; then x = sigma^-e(y)."""
    if M.n != T.n:
        raise ValueError("dimension mismatch")
    Q = M.annihilator(K)
    if not Q:
        return Subspace.full(T.n)
    ys = la.nullspace(K, la.matmul(K, Q, T.matrix), T.n)
    return Subspace.span(K, T.n, (la.frob_vector(K, y, -T.twist) for y in ys))


def kernel(K: FiniteField, T: SemilinearMap) -> Subspace:
    return semilinear_preimage(K, T, Subspace.zero(T.n))


# ---------------------------------------------------------------- modules


def standard_pairing(g: int) -> Matrix:
    """<e_i, e_{2g+1-i}> = 1 for i <= g and -1 for i > g (stored mod p by the caller)."""
    n = 2 * g
    P = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        P[i - 1][n - i] = 1 if i <= g else -1
    return tuple(tuple(r) for r in P)


def _reduce(K: FiniteField, A) -> Matrix:
    # negative ints are prime-field constants; other entries are already encoded
    return tuple(tuple(x % K.p if K.a == 1 or x < 0 else x for x in row) for row in A)


def derive_V(K: FiniteField, F: Matrix, pairing: Matrix) -> Matrix:
    """The unique B with A^T P = sigma(P) sigma(B), i.e. <x, V y> = sigma^-1(<F x, y>)."""
    sP_inv = la.inverse(K, la.frob_matrix(K, pairing, 1))
    return la.frob_matrix(K, la.matmul(K, sP_inv, la.matmul(K, la.transpose(F), pairing)), -1)


@dataclass(frozen=True)
class BT1Module:
    field: FiniteField
    F: Matrix
    V: Matrix
    pairing: Matrix | None = None

    @property
    def n(self) -> int:
        return len(self.F)

    @property
    def Fmap(self) -> SemilinearMap:
        return SemilinearMap(self.F, 1)

    @property
    def Vmap(self) -> SemilinearMap:
        return SemilinearMap(self.V, -1)

    @classmethod
    def polarized(cls, field: FiniteField, F, pairing=None) -> "BT1Module":
        """Module with V derived from F and the pairing (standard pairing by default)."""
        F = _reduce(field, F)
        n = len(F)
        if pairing is None:
            if n % 2:
                raise ValueError("a polarized module has even dimension")
            pairing = standard_pairing(n // 2)
        pairing = _reduce(field, pairing)
        return cls(field, F, derive_V(field, F, pairing), pairing)


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message} (witness {self.witness})"


def _unit(n: int, j: int) -> Vector:
    return tuple(int(i == j) for i in range(n))


def validate(m: BT1Module) -> list[Violation]:
    """All violated BT_1 axioms, each with a witness; empty means valid."""
    K, n = m.field, m.n
    out: list[Violation] = []
    for name, M in (("F", m.F), ("V", m.V)):
        if len(M) != n or any(len(r) != n for r in M):
            return [Violation("shape", (name,), f"{name} is not {n}x{n}")]
    F, V = m.Fmap, m.Vmap
    # F(V(x)) = A sigma(B) x, V(F(x)) = B sigma^-1(A) x
    FV = la.matmul(K, m.F, la.frob_matrix(K, m.V, 1))
    VF = la.matmul(K, m.V, la.frob_matrix(K, m.F, -1))
    for name, M in (("F∘V", FV), ("V∘F", VF)):
        for j in range(n):
            col = tuple(M[i][j] for i in range(n))
            if any(col):
                out.append(Violation(f"{name}=0", _unit(n, j), f"{name}(e{j + 1}) = {col} != 0"))
                break
    rF, rV = la.rank(K, m.F), la.rank(K, m.V)
    if rF + rV != n:
        kerF = kernel(K, F)
        imV = semilinear_image(K, V, Subspace.full(n))
        kerV = kernel(K, V)
        imF = semilinear_image(K, F, Subspace.full(n))
        if rF + rV < n:
            wit = next(b for b in kerF.basis if not imV.contains_vector(K, b)) if kerF.dim > imV.dim \
                else next(b for b in kerV.basis if not imF.contains_vector(K, b))
            msg = "ker F != im V or ker V != im F"
        else:
            wit = next((b for b in imV.basis if not kerF.contains_vector(K, b)), ())
            msg = "rank F + rank V exceeds n"
        out.append(Violation("rank F + rank V = n", wit, f"rank F = {rF}, rank V = {rV}, n = {n}; {msg}"))
    P = m.pairing
    if P is not None:
        if len(P) != n or any(len(r) != n for r in P):
            return out + [Violation("shape", ("pairing",), f"pairing is not {n}x{n}")]
        if n % 2:
            out.append(Violation("pairing", (), "a pairing needs even dimension"))
        for i in range(n):
            bad = next((j for j in range(i, n) if K.add(P[i][j], P[j][i]) or (i == j and P[i][i])), None)
            if bad is not None:
                out.append(Violation("alternating", (_unit(n, i), _unit(n, bad)),
                                     f"<e{i + 1}, e{bad + 1}> = {P[i][bad]}, <e{bad + 1}, e{i + 1}> = {P[bad][i]}"))
                break
        if la.rank(K, P) != n:
            rad = la.nullspace(K, P)
            out.append(Violation("nondegenerate", rad[0], "pairing has a radical"))
        # <F e_i, e_j> vs sigma(<e_i, V e_j>)
        lhs = la.matmul(K, la.transpose(m.F), P)
        rhs = la.frob_matrix(K, la.matmul(K, P, m.V), 1)
        for i in range(n):
            j = next((j for j in range(n) if lhs[i][j] != rhs[i][j]), None)
            if j is not None:
                out.append(Violation("adjointness", (_unit(n, i), _unit(n, j)),
                                     f"<F e{i + 1}, e{j + 1}> = {lhs[i][j]} but sigma(<e{i + 1}, V e{j + 1}>) = {rhs[i][j]}"))
                break
    return out


# ---------------------------------------------------------------- filtrations


@dataclass(frozen=True)
class Flag:
    members: tuple[Subspace, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(M.dim for M in self.members)


def canonical_filtration(m: BT1Module) -> Flag:
    """Smallest family containing 0 and N, closed under M -> F(M) and M -> V^-1(M)."""
    K, n = m.field, m.n
    F, V = m.Fmap, m.Vmap
    found = {Subspace.zero(n), Subspace.full(n)}
    todo = list(found)
    while todo:
        M = todo.pop()
        for S in (semilinear_image(K, F, M), semilinear_preimage(K, V, M)):
            if S not in found:
                found.add(S)
                todo.append(S)
    chain = sorted(found, key=lambda S: (S.dim, S.basis))
    for lo, hi in zip(chain, chain[1:]):
        if lo.dim == hi.dim or not hi.contains(K, lo):
            raise ClassificationError(f"canonical filtration is not a chain: dims {lo.dim} and {hi.dim} incomparable")
    return Flag(tuple(chain))


@dataclass(frozen=True)
class FinalType:
    psi: FinalSequence
    phi: ElementarySequence | None
    flag_dims: tuple[int, ...]
    f_dims: tuple[int, ...]


def final_type(m: BT1Module, flag: Flag | None = None) -> FinalType:
    K = m.field
    if flag is None:
        flag = canonical_filtration(m)
    dims = flag.dims
    fd = tuple(semilinear_image(K, m.Fmap, M).dim for M in flag.members)
    psi = [0] * (m.n + 1)
    for j in range(len(dims) - 1):
        step, fstep = dims[j + 1] - dims[j], fd[j + 1] - fd[j]
        if fstep not in (0, step):
            raise ClassificationError(
                f"F is neither zero nor injective on the graded piece of dims {dims[j]}..{dims[j + 1]} "
                f"(dim F rises by {fstep})")
        slope = fstep // step
        for k in range(1, step + 1):
            psi[dims[j] + k] = fd[j] + slope * k
    psi_seq = FinalSequence(tuple(psi[1:]))
    phi = None
    if m.pairing is not None:
        if not psi_seq.is_self_dual():
            raise ClassificationError(f"final sequence ({psi_seq}) violates duality")
        phi = ElementarySequence(psi_seq.psi[: m.n // 2])
    return FinalType(psi_seq, phi, dims, fd)


def a_number(m: BT1Module) -> int:
    K = m.field
    return kernel(K, m.Fmap).intersect(K, kernel(K, m.Vmap)).dim


def p_rank(m: BT1Module) -> int:
    """dim of the stable image of F."""
    K = m.field
    M = Subspace.full(m.n)
    while True:
        nxt = semilinear_image(K, m.Fmap, M)
        if nxt == M:
            return M.dim
        M = nxt


def kraft_decomposition(t: FinalType):
    return kraft_words(frobenius_permutation(t.psi), t.psi)


# ---------------------------------------------------------------- constructions


def standard_module(phi, field: FiniteField) -> BT1Module:
    """F(e_i) = e_pi(i) at a rise of psi and 0 at a flat; V derived from the
    standard pairing."""
    phi = phi if isinstance(phi, ElementarySequence) else ElementarySequence(tuple(phi))
    psi = final_sequence(phi)
    pi = frobenius_permutation(psi)
    n = psi.n
    A = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        if psi.rise(i):
            A[pi[i - 1] - 1][i - 1] = 1
    m = BT1Module.polarized(field, A)
    bad = validate(m)
    if bad:
        raise ClassificationError(f"standard module for ({phi}) is invalid: {bad[0]}")
    return m


@dataclass
class CensusReport:
    p: int
    g: int
    candidates: int = 0
    valid: int = 0
    counts: Counter = None
    failures: list = None  # valid modules that could not be classified

    def __post_init__(self):
        self.counts = Counter() if self.counts is None else self.counts
        self.failures = [] if self.failures is None else self.failures

    @property
    def realized(self) -> set[ElementarySequence]:
        return set(self.counts)

    def merge(self, other: "CensusReport") -> None:
        self.candidates += other.candidates
        self.valid += other.valid
        self.counts.update(other.counts)
        self.failures.extend(other.failures)


def _census_chunk(p: int, g: int, start: int, stop: int) -> CensusReport:
    K = la.gf(p)
    n = 2 * g
    P = _reduce(K, standard_pairing(g))
    report = CensusReport(p, g)
    for index in range(start, stop):
        digits, x = [], index
        for _ in range(n * n):
            x, d = divmod(x, p)
            digits.append(d)
        A = tuple(tuple(digits[r * n:(r + 1) * n]) for r in range(n))
        m = BT1Module(K, A, derive_V(K, A, P), P)
        report.candidates += 1
        if validate(m):
            continue
        report.valid += 1
        try:
            t = final_type(m)
        except ClassificationError as exc:
            report.failures.append((A, str(exc)))
            continue
        report.counts[t.phi] += 1
    return report


def brute_force_census(p: int, g: int, budget: int = DEFAULT_CENSUS_BUDGET, jobs: int = 1) -> CensusReport:
    """Classify every F over F_p (V derived from the standard pairing)."""
    total = p ** (4 * g * g)
    if total > budget:
        raise ValueError(f"{total} candidate matrices exceed the budget of {budget}")
    if jobs <= 1:
        return _census_chunk(p, g, 0, total)
    from concurrent.futures import ProcessPoolExecutor
    step = -(-total // (4 * jobs))
    bounds = [(s, min(s + step, total)) for s in range(0, total, step)]
    report = CensusReport(p, g)
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_census_chunk, *zip(*[(p, g, s, e) for s, e in bounds])):
            report.merge(part)
    return report

"""
Finite fields F_q, q = p^a, and dense linear algebra over them.

Elements are plain ints.  For a prime field they are residues in ``range(p)``;
for an extension the int ``x = c0 + c1*p + ... + c_{a-1}*p^(a-1)`` encodes the
residue class of ``c0 + c1*t + ... + c_{a-1}*t^(a-1)`` modulo the defining
polynomial.  Matrices are tuples of row tuples; vectors are tuples and act as
columns when multiplied by a matrix.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

MAX_PRIME = 2**31
# extension fields get full addition/multiplication tables
MAX_EXTENSION_ORDER = 2**10

# monic moduli, coefficients from the constant term up
BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
    (5, 2): (2, 0, 1),  # x^2 + 2
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(f: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of f modulo the monic polynomial m (both low degree first)."""
    f = [c % p for c in f]
    dm = len(m) - 1
    for k in range(len(f) - 1, dm - 1, -1):
        c = f[k]
        if c:
            for j in range(dm + 1):
                f[k - dm + j] = (f[k - dm + j] - c * m[j]) % p
    return f[:dm] + [0] * max(0, dm - len(f))


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    a = len(m) - 1
    for d in range(1, a // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(list(m), list(low) + [1], p)[:d]):
                return False
    return True


class FiniteField:
    """The field with ``p**a`` elements.

    ``modulus`` is required when ``a > 1`` unless a built-in one exists for
    ``(p, a)``; it must be monic and irreducible over F_p.
    """

    def __init__(self, p: int, a: int = 1, modulus: Sequence[int] | None = None):
        if not (2 <= p <= MAX_PRIME) or not is_prime(p):
            raise FieldError(f"p={p} is not a supported prime")
        if a < 1:
            raise FieldError(f"extension degree a={a} must be >= 1")
        self.p = p
        self.a = a
        self.q = p**a
        if a == 1:
            if modulus is not None and len(modulus) not in (0, 2):
                raise FieldError("a prime field takes no modulus")
            self.modulus: tuple[int, ...] | None = None
            return
        if modulus is None:
            modulus = BUILTIN_MODULI.get((p, a))
            if modulus is None:
                raise FieldError(f"no built-in modulus for p={p}, a={a}; supply one")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != a + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {a}: {list(modulus)}")
        if self.q > MAX_EXTENSION_ORDER:
            raise FieldError(f"extension field of order {self.q} is too large")
        if not _is_irreducible(modulus, p):
            raise FieldError(f"modulus {list(modulus)} is reducible over F_{p}")
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, a, q = self.p, self.a, self.q
        polys = [self.to_coeffs(x) for x in range(q)]
        self._add = [[self.from_coeffs([(s + t) % p for s, t in zip(polys[x], polys[y])])
                      for y in range(q)] for x in range(q)]
        self._neg = [self.from_coeffs([-c % p for c in polys[x]]) for x in range(q)]

        def polymul(x: int, y: int) -> int:
            f = [0] * (2 * a - 1)
            for i, s in enumerate(polys[x]):
                if s:
                    for j, t in enumerate(polys[y]):
                        f[i + j] += s * t
            return self.from_coeffs(_poly_mod(f, self.modulus, p))

        for gen in range(2, q):
            powers = [1]
            x = gen
            while x != 1:
                powers.append(x)
                x = polymul(x, gen)
            if len(powers) == q - 1:
                break
        self._exp = powers
        self._log = [0] * q
        for k, x in enumerate(powers):
            self._log[x] = k
        # sigma^e(x) = x^(p^e)
        self._frob = []
        for e in range(a):
            k = p**e
            self._frob.append([0] + [powers[(self._log[x] * k) % (q - 1)] for x in range(1, q)])

    # representation

    def to_coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.a):
            x, c = divmod(x, self.p)
            out.append(c)
        return out

    def from_coeffs(self, coeffs: Iterable[int]) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + c % self.p
        return x

    def element(self, value) -> int:
        """Validate an encoded int (or a coefficient list) and return the int."""
        if isinstance(value, (list, tuple)):
            if len(value) > self.a or any(not (0 <= int(c) < self.p) for c in value):
                raise FieldError(f"{value!r} is not a coefficient vector over F_{self.p}")
            return self.from_coeffs(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldError(f"{value!r} is not a field element")
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is out of range for F_{self.q}")
        return value

    def elements(self) -> range:
        return range(self.q)

    # arithmetic

    def add(self, x: int, y: int) -> int:
        if self.a == 1:
            return (x + y) % self.p
        return self._add[x][y]

    def neg(self, x: int) -> int:
        if self.a == 1:
            return -x % self.p
        return self._neg[x]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if self.a == 1:
            return x * y % self.p
        if x == 0 or y == 0:
            return 0
        return self._exp[(self._log[x] + self._log[y]) % (self.q - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.a == 1:
            return pow(x, -1, self.p)
        return self._exp[-self._log[x] % (self.q - 1)]

    def frob(self, x: int, e: int = 1) -> int:
        """sigma^e(x) where sigma(x) = x^p; e may be negative."""
        if self.a == 1:
            return x
        return self._frob[e % self.a][x]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FiniteField)
                and (self.p, self.a, self.modulus) == (other.p, other.a, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.a, self.modulus))

    def __repr__(self) -> str:
        if self.a == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.a}, {list(self.modulus)})"


@lru_cache(maxsize=None)
def gf(p: int, a: int = 1, modulus: tuple[int, ...] | None = None) -> FiniteField:
    """Cached constructor; tables for extension fields are built once."""
    return FiniteField(p, a, modulus)


# ---------------------------------------------------------------- linear algebra


def zero_matrix(n: int, m: int | None = None) -> Matrix:
    return tuple((0,) * (n if m is None else m) for _ in range(n))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def frob_vector(K: FiniteField, v: Sequence[int], e: int = 1) -> Vector:
    if K.a == 1:
        return tuple(v)
    return tuple(K.frob(x, e) for x in v)


def frob_matrix(K: FiniteField, A: Matrix, e: int = 1) -> Matrix:
    if K.a == 1:
        return A
    return tuple(frob_vector(K, row, e) for row in A)


def matvec(K: FiniteField, A: Matrix, v: Sequence[int]) -> Vector:
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = K.add(s, K.mul(x, y))
        out.append(s)
    return tuple(out)


def matmul(K: FiniteField, A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(matvec(K, Bt, row) for row in A)


def rref(K: FiniteField, rows: Iterable[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    R = [list(r) for r in rows]
    if not R:
        return (), []
    m, n = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = K.inv(R[r][c])
        R[r] = [K.mul(inv, x) for x in R[r]]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return tuple(tuple(row) for row in R[:r]), pivots


def rank(K: FiniteField, A: Matrix) -> int:
    return len(rref(K, A)[1])


def nullspace(K: FiniteField, A: Matrix, n: int | None = None) -> Matrix:
    """Basis (rows) of {x : A x = 0}; ``n`` is the column count when A has no rows."""
    if n is None:
        n = len(A[0])
    R, pivots = rref(K, A) if A else ((), [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * n
        x[fc] = 1
        for row, pc in zip(R, pivots):
            x[pc] = K.neg(row[fc])
        basis.append(tuple(x))
    return tuple(basis)


def inverse(K: FiniteField, A: Matrix) -> Matrix:
    n = len(A)
    aug = [tuple(row) + identity_matrix(n)[i] for i, row in enumerate(A)]
    R, pivots = rref(K, aug)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)

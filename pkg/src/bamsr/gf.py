"""Finite-field arithmetic and dense matrix routines over GF(q).

Field elements are plain ``int`` values in ``[0, q)``. Matrices are lists of
row lists. Two field families are supported:

* prime fields GF(p), arithmetic modulo ``p``;
* binary extension fields GF(2^w), elements are bit-packed polynomials over
  GF(2) reduced modulo an irreducible polynomial given as a bitmask
  (0x11D is x^8 + x^4 + x^3 + x^2 + 1).

Binary fields multiply through log/antilog tables built once per field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

Matrix = list[list[int]]

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    """Invalid field definition or element."""


class SingularMatrixError(ArithmeticError):
    """Raised when elimination meets a rank-deficient matrix."""

    def __init__(self, rank: int, size: int):
        super().__init__(f"matrix is singular: rank {rank} < {size}")
        self.rank = rank
        self.size = size


class DimensionError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: int, b: int) -> int:
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def _is_irreducible_gf2(poly: int) -> bool:
    w = poly.bit_length() - 1
    if w < 1:
        return False
    # trial division by every polynomial of degree 1..w//2
    for cand in range(2, 1 << (w // 2 + 1)):
        if _poly_mod(poly, cand) == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Description of a finite field: ``kind`` is ``"prime"`` or ``"binary"``."""

    kind: str
    p: int = 2
    w: int = 1
    poly: int = 0

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p=p, w=1, poly=0)

    @classmethod
    def binary(cls, w: int = 8, poly: int | None = None) -> "FieldSpec":
        return cls("binary", p=2, w=w, poly=_default_poly(w) if poly is None else poly)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"gf256"``, ``"gf2^8"``, ``"gf2^8:0x11d"`` or ``"gf7"``."""
        s = text.strip().lower()
        if s.startswith("gf"):
            s = s[2:]
        s = s.strip("()")
        poly = None
        if ":" in s:
            s, poly_s = s.split(":", 1)
            poly = int(poly_s, 0)
        if "^" in s:
            base, exp = s.split("^", 1)
            if int(base) != 2:
                raise FieldError(f"only binary extension fields are supported, got {text!r}")
            w = int(exp)
            return cls.binary(w, poly if poly is not None else _default_poly(w))
        q = int(s)
        if q > 2 and q & (q - 1) == 0:
            w = q.bit_length() - 1
            return cls.binary(w, poly if poly is not None else _default_poly(w))
        return cls.prime(q)

    @property
    def order(self) -> int:
        return self.p ** self.w

    def __str__(self) -> str:
        if self.kind == "prime":
            return f"GF({self.p})"
        return f"GF(2^{self.w}):{self.poly:#x}"

    def validate(self) -> None:
        if self.kind == "prime":
            if self.w != 1 or not _is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
        elif self.kind == "binary":
            if self.p != 2 or not 1 <= self.w <= 16:
                raise FieldError(f"binary extension degree must be in 1..16, got {self.w}")
            if self.poly.bit_length() - 1 != self.w or not _is_irreducible_gf2(self.poly):
                raise FieldError(f"{self.poly:#x} is not an irreducible degree-{self.w} polynomial")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.order > MAX_ORDER:
            raise FieldError(f"field order {self.order} exceeds {MAX_ORDER}")


# primitive polynomials; any irreducible mask is accepted through FieldSpec.binary
_DEFAULT_POLYS = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x89, 8: 0x11D,
    9: 0x211, 10: 0x409, 11: 0x805, 12: 0x1053, 13: 0x201B, 14: 0x4443,
    15: 0x8003, 16: 0x1100B,
}


def _default_poly(w: int) -> int:
    try:
        return _DEFAULT_POLYS[w]
    except KeyError:
        raise FieldError(f"no default polynomial for w={w}") from None


@dataclass(frozen=True, eq=False)
class GF:
    """A concrete finite field with scalar and vectorised arithmetic."""

    spec: FieldSpec
    _exp: np.ndarray = field(repr=False, default=None)
    _log: np.ndarray = field(repr=False, default=None)

    @property
    def q(self) -> int:
        return self.spec.order

    @property
    def is_binary(self) -> bool:
        return self.spec.kind == "binary"

    def __post_init__(self):
        self.spec.validate()
        if self.is_binary:
            q = self.q
            exp = np.zeros(2 * q, dtype=np.int64)
            log = np.zeros(q, dtype=np.int64)
            # tables are indexed by the discrete log of a primitive element
            g = self._find_binary_generator()
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._clmul_mod(x, g)
            exp[q - 1:2 * (q - 1)] = exp[:q - 1]
            exp.setflags(write=False)
            log.setflags(write=False)
            object.__setattr__(self, "_exp", exp)
            object.__setattr__(self, "_log", log)
            object.__setattr__(self, "_exp_l", exp.tolist())
            object.__setattr__(self, "_log_l", log.tolist())

    def _clmul_mod(self, a: int, b: int) -> int:
        w, poly = self.spec.w, self.spec.poly
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> w:
                a ^= poly
        return r

    def _find_binary_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(self._slow_pow(g, (q - 1) // f) != 1 for f in factors):
                return g
        raise FieldError("no primitive element found")  # pragma: no cover

    def _slow_pow(self, a: int, t: int) -> int:
        r = 1
        while t:
            if t & 1:
                r = self._clmul_mod(r, a)
            a = self._clmul_mod(a, a)
            t >>= 1
        return r

    # -- scalar arithmetic -------------------------------------------------

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of {self.spec}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.is_binary:
            return a ^ b
        return (a + b) % self.spec.p

    def sub(self, a: int, b: int) -> int:
        if self.is_binary:
            return a ^ b
        return (a - b) % self.spec.p

    def neg(self, a: int) -> int:
        if self.is_binary:
            return a
        return -a % self.spec.p

    def mul(self, a: int, b: int) -> int:
        if self.is_binary:
            if a == 0 or b == 0:
                return 0
            return self._exp_l[self._log_l[a] + self._log_l[b]]
        return a * b % self.spec.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.spec}")
        if self.is_binary:
            return self._exp_l[(self.q - 1 - self._log_l[a]) % (self.q - 1)]
        return pow(a, -1, self.spec.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, t: int) -> int:
        """``a`` raised to integer ``t``; negative ``t`` inverts first."""
        if t < 0:
            return self.pow(self.inv(a), -t)
        if t == 0:
            return 1
        if a == 0:
            return 0
        if self.is_binary:
            return self._exp_l[self._log_l[a] * t % (self.q - 1)]
        return pow(a, t, self.spec.p)

    def generator(self) -> int:
        """Smallest primitive element (generator of the multiplicative group)."""
        return _generator(self)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        for a, b in zip(u, v):
            acc = self.add(acc, self.mul(a, b))
        return acc

    # -- vectorised helpers (numpy int64 arrays) ---------------------------

    def vscale(self, c: int, v: np.ndarray) -> np.ndarray:
        """Multiply every entry of ``v`` by the scalar ``c``."""
        if c == 0:
            return np.zeros_like(v)
        if c == 1:
            return v.copy()
        if self.is_binary:
            out = self._exp[self._log[v] + self._log_l[c]]
            out[v == 0] = 0
            return out
        return v * c % self.spec.p

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.is_binary:
            return a ^ b
        return (a + b) % self.spec.p


@lru_cache(maxsize=None)
def get_field(spec: FieldSpec) -> GF:
    """Shared, table-backed field instance for ``spec``."""
    return GF(spec)


@lru_cache(maxsize=None)
def _generator(F: GF) -> int:
    if F.is_binary:
        return int(F._exp[1]) if F.q > 2 else 1
    p = F.spec.p
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise FieldError("no primitive root")  # pragma: no cover


# -- matrices -----------------------------------------------------------------

def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B)
    return [[F.dot(row, col) for col in Bt] for row in A]


def _elementwise(F: GF, A: Matrix, B: Matrix, op) -> Matrix:
    if shape(A) != shape(B):
        raise DimensionError(f"shape mismatch {shape(A)} vs {shape(B)}")
    return [[op(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(F: GF, A: Matrix, B: Matrix) -> Matrix:
    return _elementwise(F, A, B, F.add)


def mat_sub(F: GF, A: Matrix, B: Matrix) -> Matrix:
    return _elementwise(F, A, B, F.sub)


def mat_scale(F: GF, c: int, A: Matrix) -> Matrix:
    return [[F.mul(c, a) for a in row] for row in A]


def diag(values: Sequence[int]) -> Matrix:
    n = len(values)
    return [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]


def gv_matrix(F: GF, points: Sequence[int], c: int, cols: int) -> Matrix:
    """Generalized Vandermonde matrix, row ``i`` is ``(e_i^(c+1), ..., e_i^(c+cols))``."""
    pts = list(points)
    if any(e == 0 for e in pts):
        raise ValueError("generalized Vandermonde points must be nonzero")
    if len(set(pts)) != len(pts):
        raise ValueError("generalized Vandermonde points must be distinct")
    return [[F.pow(e, c + j + 1) for j in range(cols)] for e in pts]


def solve(F: GF, A: Matrix, B: Matrix) -> Matrix:
    """Return ``X`` with ``A X = B`` by Gauss-Jordan elimination.

    Pivots are the first nonzero entry at or below the diagonal, columns are
    eliminated left to right. Raises :class:`SingularMatrixError` carrying the
    rank reached when ``A`` is singular.
    """
    n, m = shape(A)
    if n != m:
        raise DimensionError(f"coefficient matrix must be square, got {n}x{m}")
    if len(B) != n:
        raise DimensionError(f"right-hand side has {len(B)} rows, expected {n}")
    width = len(B[0]) if B else 0
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if aug[r][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = F.inv(aug[rank][col])
        aug[rank] = [F.mul(inv, v) for v in aug[rank]]
        prow = aug[rank]
        for r in range(n):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(aug[r], prow)]
        rank += 1
    if rank < n:
        raise SingularMatrixError(rank, n)
    return [row[n:n + width] for row in aug]


def inverse(F: GF, A: Matrix) -> Matrix:
    return solve(F, A, identity(len(A)))


def rank(F: GF, A: Matrix) -> int:
    rows = [list(r) for r in A]
    nrows, ncols = shape(rows)
    rk = 0
    for col in range(ncols):
        piv = next((r for r in range(rk, nrows) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = F.inv(rows[rk][col])
        for r in range(rk + 1, nrows):
            if rows[r][col]:
                f = F.mul(rows[r][col], inv)
                rows[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def apply_linear(F: GF, G: Matrix, data: np.ndarray) -> np.ndarray:
    """Apply the ``in x out`` map ``G`` to every row of ``data`` (shape ``(S, in)``).

    Used for bulk striping: one column of output is the field sum of scaled
    input columns, computed with whole-array operations.
    """
    n_in, n_out = shape(G)
    if data.ndim != 2 or data.shape[1] != n_in:
        raise DimensionError(f"data must have shape (S, {n_in}), got {data.shape}")
    data = data.astype(np.int64, copy=False)
    out = np.zeros((data.shape[0], n_out), dtype=np.int64)
    for c in range(n_out):
        acc = out[:, c]
        for u in range(n_in):
            g = G[u][c]
            if g:
                acc = F.vadd(acc, F.vscale(g, data[:, u]))
        out[:, c] = acc
    return out

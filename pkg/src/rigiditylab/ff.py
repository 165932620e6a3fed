"""Exact arithmetic in finite fields F_{p^k} and linear algebra over them.

Elements of F_{p^k} are polynomials of degree < k over F_p, reduced modulo a
monic irreducible polynomial of degree k.  The modulus is chosen canonically:
the monic irreducible whose coefficient vector, read as the base-p integer
c_{k-1} p^{k-1} + ... + c_1 p + c_0, is smallest.  This makes element
serialization reproducible across runs and machines.

Internally an element is a packed integer sum(c_i * p^i); the coefficient
tuple is recovered on demand.  Fields with at most 2**16 elements precompute
discrete log / antilog tables for fast multiplication and inversion; larger
fields fall back to polynomial arithmetic.

Everything here is immutable after construction and safe to share between
worker processes.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError

_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (dense coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _poly_modred(res, mod, p)


def _poly_modred(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    a = list(a)
    k = len(mod) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(k):
                a[i - k + j] = (a[i - k + j] - c * mod[j]) % p
    del a[k:]
    while len(a) < k:
        a.append(0)
    return a


def _poly_powmod(a: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1] + [0] * (len(mod) - 2)
    base = _poly_modred(a, mod, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        # remainder of a by b
        a = list(a)
        while len(a) >= len(b) and a:
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            _poly_trim(a)
        a, b = b, a
    return a


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Monic degree-k polynomial irreducible over F_p.

    Uses the Frobenius criterion: f is irreducible iff x^(p^k) = x mod f and
    gcd(x^(p^(k/t)) - x, f) = 1 for every prime t dividing k.
    """
    k = len(poly) - 1
    if k == 1:
        return True
    x = [0, 1]
    frob = list(x)
    frob_steps = {}
    for i in range(1, k + 1):
        frob = _poly_powmod(frob, p, poly, p)
        frob_steps[i] = list(frob)
    if _poly_trim(list(frob_steps[k])) != x:
        return False
    for t in range(2, k + 1):
        if k % t == 0 and is_prime(t):
            diff = list(frob_steps[k // t])
            diff[1] = (diff[1] - 1) % p
            g = _poly_gcd(diff, list(poly), p)
            if len(g) > 1:
                return False
    return True


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Canonical modulus: minimal packed value among monic irreducibles."""
    if k == 1:
        return (0, 1)
    for packed in range(p**k):
        coeffs = []
        v = packed
        for _ in range(k):
            v, r = divmod(v, p)
            coeffs.append(r)
        poly = coeffs + [1]
        if poly[0] != 0 and _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


# ---------------------------------------------------------------------------
# fields and elements
# ---------------------------------------------------------------------------

class FiniteField:
    """The field F_{p^k} with the canonical modulus polynomial.

    Use :func:`field_create` rather than the constructor; it caches a single
    instance per (p, k) so elements of the same field always share an owner.
    """

    def __init__(self, p: int, k: int):
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if k < 1:
            raise InputError(f"extension degree k = {k} must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus_poly = _least_irreducible(p, k)
        self._pow_p = [p**i for i in range(k + 1)]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._xpow_red: list[list[int]] | None = None
        if k > 1:
            if self.q <= _TABLE_LIMIT:
                self._build_tables()
            else:
                self._build_reductions()
        self.zero = FieldElement(self, 0)
        self.one = FieldElement(self, 1)

    # -- construction helpers ------------------------------------------------

    def element(self, coeffs: int | Iterable[int]) -> FieldElement:
        """Element from an int (k = 1 shortcut, reduced mod p) or a
        coefficient sequence, low degree first."""
        if isinstance(coeffs, int):
            if self.k == 1:
                return FieldElement(self, coeffs % self.p)
            coeffs = [coeffs]
        cs = list(coeffs)
        if len(cs) > self.k:
            raise InputError(f"coefficient sequence longer than k = {self.k}")
        cs += [0] * (self.k - len(cs))
        packed = 0
        for i, c in enumerate(cs):
            packed += (c % self.p) * self._pow_p[i]
        return FieldElement(self, packed)

    def elements(self) -> Iterable[FieldElement]:
        """All q elements in packed order (deterministic)."""
        for v in range(self.q):
            yield FieldElement(self, v)

    def unpack(self, value: int) -> tuple[int, ...]:
        coeffs = []
        for _ in range(self.k):
            value, r = divmod(value, self.p)
            coeffs.append(r)
        return tuple(coeffs)

    # -- packed arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = 0
        w = 1
        for _ in range(self.k):
            out += ((a + b) % self.p) * w
            a //= self.p
            b //= self.p
            w *= self.p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        out = 0
        w = 1
        for _ in range(self.k):
            out += ((-a) % self.p) * w
            a //= self.p
            w *= self.p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is not None:
            return self._exp[(self.q - 1) - self._log[a]]
        # a^(q-2) by square and multiply
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- internal multiplication paths ----------------------------------------

    def _mul_poly(self, a: int, b: int) -> int:
        pa, pb = self.unpack(a), self.unpack(b)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(pa):
            if ai:
                for j, bj in enumerate(pb):
                    prod[i + j] = (prod[i + j] + ai * bj) % self.p
        # reduce degrees k .. 2k-2 with precomputed x^d tables
        for d in range(2 * self.k - 2, self.k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                red = self._xpow_red[d - self.k]
                for j in range(self.k):
                    prod[j] = (prod[j] + c * red[j]) % self.p
        packed = 0
        for i in range(self.k):
            packed += prod[i] * self._pow_p[i]
        return packed

    def _build_reductions(self) -> None:
        # x^(k+i) mod modulus for i = 0 .. k-2
        mod = self.modulus_poly
        cur = [(-mod[j]) % self.p for j in range(self.k)]  # x^k
        reds = [list(cur)]
        for _ in range(self.k - 2):
            nxt = [0] + cur[:-1]
            c = cur[-1]
            if c:
                for j in range(self.k):
                    nxt[j] = (nxt[j] - c * mod[j]) % self.p
            cur = nxt
            reds.append(list(cur))
        self._xpow_red = reds

    def _build_tables(self) -> None:
        self._build_reductions()
        order = self.q - 1
        prime_factors = _prime_factors(order)
        gen = None
        for cand in range(2, self.q):
            if all(self.pow(cand, order // f) != 1 for f in prime_factors):
                gen = cand
                break
        assert gen is not None, "multiplicative group has a generator"
        exp = [0] * (2 * order)
        log = [0] * self.q
        v = 1
        for i in range(order):
            exp[i] = v
            exp[i + order] = v
            log[v] = i
            v = self._mul_poly(v, gen)
        self._exp = exp
        self._log = log

    # -- identity and serialization --------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    def __repr__(self) -> str:
        return f"F({self.p}^{self.k})" if self.k > 1 else f"F({self.p})"

    def __reduce__(self):
        return (field_create, (self.p, self.k))


@lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> FiniteField:
    """The field F_{p^k}; one cached instance per (p, k)."""
    return FiniteField(p, k)


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FieldElement:
    """An element of a :class:`FiniteField`, stored as a packed integer."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Coefficients over F_p, low degree first (the wire format)."""
        return self.field.unpack(self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise InputError(
                    f"mixed-field arithmetic: {self.field} vs {other.field}"
                )
            return other.value
        if isinstance(other, int):
            if self.field.k == 1:
                return other % self.field.p
            return self.field.element(other).value
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(v, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(v)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field == other.field
        if isinstance(other, int):
            return self.value == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.value))

    def __repr__(self) -> str:
        if self.field.k == 1:
            return f"{self.value}_F{self.field.p}"
        return f"{list(self.coeffs)}_F{self.field.p}^{self.field.k}"


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix with entries in a single finite field."""

    __slots__ = ("field", "rows", "cols", "entries", "_key")

    def __init__(self, field: FiniteField, rows: int, cols: int,
                 entries: Sequence[FieldElement]):
        if len(entries) != rows * cols:
            raise InputError("entry count does not match matrix shape")
        for e in entries:
            if e.field != field:
                raise InputError("mixed-field entries in matrix")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = tuple(entries)
        self._key = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: FiniteField, rows: Sequence[Sequence]) -> Matrix:
        """Rows of ints (k = 1 shortcut), coefficient lists, or elements."""
        n = len(rows)
        m = len(rows[0]) if n else 0
        ents = []
        for row in rows:
            if len(row) != m:
                raise InputError("ragged matrix rows")
            for x in row:
                ents.append(x if isinstance(x, FieldElement) else field.element(x))
        return cls(field, n, m, ents)

    @classmethod
    def identity(cls, field: FiniteField, n: int) -> Matrix:
        return cls(field, n, n,
                   [field.one if i == j else field.zero
                    for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, field: FiniteField, rows: int, cols: int) -> Matrix:
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def diagonal(cls, field: FiniteField, diag: Sequence) -> Matrix:
        n = len(diag)
        ents = [field.zero] * (n * n)
        for i, x in enumerate(diag):
            ents[i * n + i] = x if isinstance(x, FieldElement) else field.element(x)
        return cls(field, n, n, ents)

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_values(self) -> list[list[int]]:
        """Packed entries, row major (the fast-path representation)."""
        c = self.cols
        return [[self.entries[i * c + j].value for j in range(c)]
                for i in range(self.rows)]

    def key(self) -> tuple:
        """Hashable canonical key (shape plus packed entries)."""
        if self._key is None:
            self._key = (self.rows, self.cols,
                         tuple(e.value for e in self.entries))
        return self._key

    # -- arithmetic -----------------------------------------------------------

    def _check_same(self, other: Matrix) -> None:
        if self.field != other.field:
            raise InputError("mixed-field matrix arithmetic")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shape mismatch in addition")
        return Matrix(self.field, self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("matrix shape mismatch in subtraction")
        return Matrix(self.field, self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.rows, self.cols,
                      [-a for a in self.entries])

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        if self.cols != other.rows:
            raise InputError("matrix shape mismatch in product")
        f = self.field
        n, m, r = self.rows, other.cols, self.cols
        a = self.entries
        b = other.entries
        mul, add = f.mul, f.add
        out = []
        for i in range(n):
            arow = a[i * r:(i + 1) * r]
            for j in range(m):
                acc = 0
                for t in range(r):
                    v = arow[t].value
                    if v:
                        acc = add(acc, mul(v, b[t * m + j].value))
                out.append(FieldElement(f, acc))
        return Matrix(f, n, m, out)

    __mul__ = __matmul__

    def scale(self, c: FieldElement) -> Matrix:
        return Matrix(self.field, self.rows, self.cols,
                      [c * e for e in self.entries])

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows,
                      [self.entries[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> FieldElement:
        if self.rows != self.cols:
            raise InputError("trace of a non-square matrix")
        t = self.field.zero
        for i in range(self.rows):
            t = t + self[i, i]
        return t

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        f = self.field
        grid = self.row_values()
        n = self.rows
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if grid[r][col]), None)
            if piv is None:
                return f.zero
            if piv != col:
                grid[col], grid[piv] = grid[piv], grid[col]
                det = f.neg(det)
            det = f.mul(det, grid[col][col])
            inv = f.inv(grid[col][col])
            for r in range(col + 1, n):
                c = grid[r][col]
                if c:
                    factor = f.mul(c, inv)
                    grid[r] = [f.sub(x, f.mul(factor, y))
                               for x, y in zip(grid[r], grid[col])]
        return FieldElement(f, det)

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise InputError("inverse of a non-square matrix")
        f = self.field
        n = self.rows
        grid = [row + [1 if i == j else 0 for j in range(n)]
                for i, row in enumerate(self.row_values())]
        for col in range(n):
            piv = next((r for r in range(col, n) if grid[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            grid[col], grid[piv] = grid[piv], grid[col]
            inv = f.inv(grid[col][col])
            grid[col] = [f.mul(inv, x) for x in grid[col]]
            for r in range(n):
                if r != col and grid[r][col]:
                    c = grid[r][col]
                    grid[r] = [f.sub(x, f.mul(c, y))
                               for x, y in zip(grid[r], grid[col])]
        ents = [FieldElement(f, grid[i][n + j])
                for i in range(n) for j in range(n)]
        return Matrix(f, n, n, ents)

    def __pow__(self, e: int) -> Matrix:
        if self.rows != self.cols:
            raise InputError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    # -- predicates -------------------------------------------------------------

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.rows)

    def is_scalar(self) -> bool:
        """Nonzero scalar multiple of the identity."""
        if self.rows != self.cols:
            return False
        d = self[0, 0]
        if d.is_zero():
            return False
        for i in range(self.rows):
            for j in range(self.cols):
                want = d if i == j else self.field.zero
                if self[i, j] != want:
                    return False
        return True

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.field == other.field
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.key()))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.row_values()})"


# ---------------------------------------------------------------------------
# rank computations (packed fast path)
# ---------------------------------------------------------------------------

def rank_of_rows(field: FiniteField, grid: list[list[int]]) -> int:
    """Rank of a list of packed-value rows, by Gaussian elimination."""
    if not grid:
        return 0
    sub, mul, inv = field.sub, field.mul, field.inv
    cols = len(grid[0])
    rk = 0
    nrows = len(grid)
    for col in range(cols):
        piv = next((r for r in range(rk, nrows) if grid[r][col]), None)
        if piv is None:
            continue
        grid[rk], grid[piv] = grid[piv], grid[rk]
        ipiv = inv(grid[rk][col])
        prow = grid[rk]
        for r in range(rk + 1, nrows):
            c = grid[r][col]
            if c:
                factor = mul(c, ipiv)
                row = grid[r]
                for j in range(col, cols):
                    if prow[j]:
                        row[j] = sub(row[j], mul(factor, prow[j]))
        rk += 1
        if rk == nrows:
            break
    return rk


def row_space_basis(field: FiniteField, grid: list[list[int]]) -> list[list[int]]:
    """Reduced row-echelon basis of the row space (deterministic)."""
    if not grid:
        return []
    sub, mul, inv = field.sub, field.mul, field.inv
    cols = len(grid[0])
    rk = 0
    nrows = len(grid)
    for col in range(cols):
        piv = next((r for r in range(rk, nrows) if grid[r][col]), None)
        if piv is None:
            continue
        grid[rk], grid[piv] = grid[piv], grid[rk]
        ipiv = inv(grid[rk][col])
        grid[rk] = [mul(ipiv, x) for x in grid[rk]]
        prow = grid[rk]
        for r in range(nrows):
            if r != rk and grid[r][col]:
                c = grid[r][col]
                row = grid[r]
                for j in range(col, cols):
                    if prow[j]:
                        row[j] = sub(row[j], mul(c, prow[j]))
        rk += 1
        if rk == nrows:
            break
    return grid[:rk]


def rank(m: Matrix) -> int:
    """Rank over the owner field, by exact Gaussian elimination."""
    return rank_of_rows(m.field, m.row_values())


def kernel_dim(m: Matrix) -> int:
    """Dimension of the right kernel (rank-nullity)."""
    return m.cols - rank(m)


def column_space_union(ms: Sequence[Matrix]) -> int:
    """Dimension of the sum of the column spaces of the given matrices."""
    if not ms:
        return 0
    field = ms[0].field
    nrows = ms[0].rows
    stacked: list[list[int]] = []
    for m in ms:
        if m.field != field:
            raise InputError("mixed-field matrices in column space union")
        if m.rows != nrows:
            raise InputError("row-count mismatch in column space union")
        c = m.cols
        vals = m.row_values()
        for j in range(c):
            stacked.append([vals[i][j] for i in range(nrows)])
    return rank_of_rows(field, stacked)


# ---------------------------------------------------------------------------
# field embeddings
# ---------------------------------------------------------------------------

def embedding(small: FiniteField, big: FiniteField):
    """The canonical embedding F_{p^k} -> F_{p^(km)}.

    Sends the generator of the small field to the first root (in packed
    order) of the small modulus inside the big field, which makes the map
    deterministic.  Returns a function on elements.
    """
    if small.p != big.p or big.k % small.k != 0:
        raise InputError(f"no embedding {small} -> {big}")
    if small.k == 1:
        # A prime-field constant c packs to the same integer in any extension.
        return lambda x: FieldElement(big, x.value)
    mod = small.modulus_poly
    root = None
    for v in range(big.q):
        acc = 0
        xp = 1
        for c in mod:
            if c:
                acc = big.add(acc, big.mul(c, xp))
            xp = big.mul(xp, v)
        if acc == 0:
            root = v
            break
    assert root is not None, "splitting field contains a root"
    powers = [1]
    for _ in range(small.k - 1):
        powers.append(big.mul(powers[-1], root))

    def embed(x: FieldElement) -> FieldElement:
        acc = 0
        for c, w in zip(x.coeffs, powers):
            if c:
                acc = big.add(acc, big.mul(c, w))
        return FieldElement(big, acc)

    return embed


def embed_matrix(m: Matrix, big: FiniteField) -> Matrix:
    emb = embedding(m.field, big)
    return Matrix(big, m.rows, m.cols, [emb(e) for e in m.entries])

"""Explicit matrix groups over finite fields.

Provides the generator-tuple input type with its JSON wire format, element
and projective orders, breadth-first closure into a finite group table
(optionally modulo scalars), conjugacy classes, an absolute-irreducibility
test for the natural module, and a deterministic search for standard
generating pairs of SL_n(q).

Group tables index elements by a canonical key.  Working projectively, the
key is the entry tuple after scaling the first nonzero entry to 1, so a
table element stands for a full scalar class while its stored matrix stays
an honest determinant-one representative.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation, WorkCapExceeded
from .ff import FieldElement, FiniteField, Matrix, field_create

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------

def element_order(m: Matrix) -> int:
    """Least e >= 1 with m^e the identity."""
    if not m.is_invertible():
        raise InputError("element_order of a non-invertible matrix")
    ident = Matrix.identity(m.field, m.rows)
    power = m
    e = 1
    while power != ident:
        power = power @ m
        e += 1
    return e


def projective_order(m: Matrix) -> int:
    """Least e >= 1 with m^e a scalar matrix."""
    if not m.is_invertible():
        raise InputError("projective_order of a non-invertible matrix")
    power = m
    e = 1
    while not power.is_scalar():
        power = power @ m
        e += 1
    return e


# ---------------------------------------------------------------------------
# generator tuples and their wire format
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTuple:
    """A tuple (c_1, ..., c_m) of determinant-one matrices with declared
    orders, whose product is a scalar matrix.

    The declared order a_i is the target relator exponent, which the
    projective order of c_i must divide; it need not equal it.
    """

    field: FiniteField
    n: int
    generators: tuple[Matrix, ...]
    declared_orders: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.generators)

    def product(self) -> Matrix:
        out = Matrix.identity(self.field, self.n)
        for g in self.generators:
            out = out @ g
        return out


def group_tuple(generators: Sequence[Matrix],
                declared_orders: Sequence[int]) -> GroupTuple:
    """Validated constructor for :class:`GroupTuple`."""
    if not generators:
        raise InputError("empty generator tuple")
    field = generators[0].field
    n = generators[0].rows
    if len(declared_orders) != len(generators):
        raise InputError("declared_orders length differs from generator count")
    for g in generators:
        if g.field != field or g.rows != n or g.cols != n:
            raise InputError("generators must be square matrices over one field")
        if g.det() != field.one:
            raise InputError("generator determinant is not 1")
    for a in declared_orders:
        if not isinstance(a, int) or a < 1:
            raise InputError(f"declared order {a!r} must be a positive integer")
    t = GroupTuple(field=field, n=n, generators=tuple(generators),
                   declared_orders=tuple(int(a) for a in declared_orders))
    if not t.product().is_scalar():
        raise InputError("product of the generators is not a scalar matrix")
    for g, a in zip(t.generators, t.declared_orders):
        if a % projective_order(g) != 0:
            raise InputError(
                f"projective order {projective_order(g)} does not divide "
                f"the declared order {a}"
            )
    return t


def tuple_from_matrices(generators: Sequence[Matrix]) -> GroupTuple:
    """GroupTuple with declared orders set to the exact projective orders."""
    return group_tuple(generators, [projective_order(g) for g in generators])


def _entry_coeffs(entry, field: FiniteField) -> FieldElement:
    if isinstance(entry, int):
        entry = [entry]
    if not isinstance(entry, list) or not all(isinstance(c, int) for c in entry):
        raise InputError(f"matrix entry {entry!r} is not a coefficient sequence")
    if len(entry) > field.k:
        raise InputError(f"entry {entry!r} has more than k = {field.k} coefficients")
    return field.element(entry)


def tuple_from_json(doc: dict) -> GroupTuple:
    """Parse the wire format.

    Expected shape::

        {"schema": 1, "p": 7, "k": 1, "n": 2,
         "generators": [[[[0],[1]],[[6],[0]]], ...],
         "orders": [2, 3, 7]}

    Each generator is a list of rows; each entry is the coefficient
    sequence of a field element, low degree first (a bare int is accepted
    as shorthand for a length-1 sequence).
    """
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise InputError(f"unsupported schema version {doc.get('schema')!r}")
    for key in ("p", "k", "n", "generators", "orders"):
        if key not in doc:
            raise InputError(f"missing required field {key!r}")
    p, k, n = doc["p"], doc["k"], doc["n"]
    if not (isinstance(p, int) and isinstance(k, int) and isinstance(n, int)):
        raise InputError("fields p, k, n must be integers")
    if n < 1:
        raise InputError(f"matrix size n = {n} must be >= 1")
    field = field_create(p, k)
    if not isinstance(doc["generators"], list):
        raise InputError("generators must be a list of matrices")
    gens = [matrix_from_wire(field, n, rows) for rows in doc["generators"]]
    orders = doc["orders"]
    if not isinstance(orders, list):
        raise InputError("orders must be a list of positive integers")
    return group_tuple(gens, orders)


def matrix_to_wire(m: Matrix) -> list:
    """Rows of coefficient sequences, the JSON shape of one matrix."""
    return [[list(m[i, j].coeffs) for j in range(m.cols)]
            for i in range(m.rows)]


def matrix_from_wire(field: FiniteField, n: int, rows) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"matrix document is not a list of {n} rows")
    ents = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"matrix document has a row of length != {n}")
        ents.extend(_entry_coeffs(e, field) for e in row)
    return Matrix(field, n, n, ents)


def tuple_to_json(t: GroupTuple) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "p": t.field.p,
        "k": t.field.k,
        "n": t.n,
        "generators": [matrix_to_wire(g) for g in t.generators],
        "orders": list(t.declared_orders),
    }


def load_tuple(path: str) -> GroupTuple:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from exc
    return tuple_from_json(doc)


# ---------------------------------------------------------------------------
# group closure
# ---------------------------------------------------------------------------

class FiniteGroupTable:
    """A finite matrix group enumerated element by element.

    Elements are indexed densely in breadth-first discovery order starting
    from the identity (index 0).  With ``projective=True`` two matrices
    differing by a scalar share one index; the stored representative is the
    first determinant-one matrix reached for that scalar class.
    """

    def __init__(self, generators: Sequence[Matrix], cap: int,
                 projective: bool = False):
        if not generators:
            raise InputError("group closure needs at least one generator")
        field = generators[0].field
        n = generators[0].rows
        for g in generators:
            if g.field != field or g.rows != n or g.cols != n:
                raise InputError("closure generators must be square over one field")
            if not g.is_invertible():
                raise InputError("closure generator is not invertible")
        self.field = field
        self.n = n
        self.projective = projective

        ident = Matrix.identity(field, n)
        self.mats: list[Matrix] = [ident]
        self.index: dict[tuple, int] = {self.canonical_key(ident): 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for g in generators:
                    prod = m @ g
                    key = self.canonical_key(prod)
                    if key not in self.index:
                        if len(self.mats) >= cap:
                            raise WorkCapExceeded(
                                f"group closure exceeded the cap of {cap} elements"
                            )
                        self.index[key] = len(self.mats)
                        self.mats.append(prod)
                        nxt.append(prod)
            frontier = nxt
        self.gen_indices = tuple(self.index_of(g) for g in generators)
        self._inverses: list[int] | None = None
        self._orders: list[int] | None = None
        self._classes: tuple[tuple[int, ...], ...] | None = None

    # -- indexing -----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.mats)

    def canonical_key(self, m: Matrix) -> tuple:
        if not self.projective:
            return m.key()
        lead = next(e for e in m.entries if not e.is_zero())
        inv = lead.inverse()
        return tuple((inv * e).value for e in m.entries)

    def index_of(self, m: Matrix) -> int:
        key = self.canonical_key(m)
        idx = self.index.get(key)
        if idx is None:
            raise InputError("matrix does not belong to the enumerated group")
        return idx

    def __contains__(self, m: Matrix) -> bool:
        return self.canonical_key(m) in self.index

    def mul(self, i: int, j: int) -> int:
        return self.index[self.canonical_key(self.mats[i] @ self.mats[j])]

    def inv(self, i: int) -> int:
        if self._inverses is None:
            self._inverses = [
                self.index[self.canonical_key(m.inverse())] for m in self.mats
            ]
        return self._inverses[i]

    def order_of(self, i: int) -> int:
        """Order of element i in the table's group (projective order when
        the table is projective)."""
        if self._orders is None:
            self._orders = [0] * self.size
        if self._orders[i] == 0:
            e = 1
            j = i
            while j != 0:
                j = self.mul(j, i)
                e += 1
            self._orders[i] = e
        return self._orders[i]

    # -- conjugacy classes ---------------------------------------------------

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Partition of the index set into conjugacy classes.

        Each class is a sorted index tuple; classes are ordered by their
        least member, so class 0 is always {identity}.
        """
        if self._classes is not None:
            return self._classes
        seen = [False] * self.size
        classes = []
        gen_inv = [(g, self.inv(g)) for g in self.gen_indices]
        for start in range(self.size):
            if seen[start]:
                continue
            orbit = {start}
            stack = [start]
            seen[start] = True
            while stack:
                x = stack.pop()
                for g, ginv in gen_inv:
                    y = self.mul(self.mul(g, x), ginv)
                    if not seen[y]:
                        seen[y] = True
                        orbit.add(y)
                        stack.append(y)
            classes.append(tuple(sorted(orbit)))
        self._classes = tuple(classes)
        return self._classes

    def class_of(self) -> list[int]:
        """index -> conjugacy class number."""
        out = [0] * self.size
        for cid, members in enumerate(self.conjugacy_classes()):
            for m in members:
                out[m] = cid
        return out


def group_closure(gens: Sequence[Matrix], cap: int,
                  projective: bool = False) -> FiniteGroupTable:
    """Breadth-first closure of the generators under multiplication."""
    return FiniteGroupTable(gens, cap=cap, projective=projective)


# ---------------------------------------------------------------------------
# irreducibility (Burnside span test)
# ---------------------------------------------------------------------------

class _SpanSieve:
    """Incremental reduced-echelon basis of vectors over a finite field."""

    def __init__(self, field: FiniteField, width: int):
        self.field = field
        self.width = width
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def add(self, row: list[int]) -> bool:
        """Reduce row against the basis; absorb it if independent."""
        f = self.field
        for piv, brow in zip(self.pivots, self.rows):
            c = row[piv]
            if c:
                row = [f.sub(x, f.mul(c, y)) for x, y in zip(row, brow)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is None:
            return False
        inv = f.inv(row[lead])
        row = [f.mul(inv, x) for x in row]
        for i, (piv, brow) in enumerate(zip(self.pivots, self.rows)):
            c = brow[lead]
            if c:
                self.rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(brow, row)]
        self.pivots.append(lead)
        self.rows.append(row)
        return True


def is_absolutely_irreducible(gens: Sequence[Matrix]) -> bool:
    """Whether the matrix algebra generated by the tuple is all of n x n.

    Grows the span of words in the generators, starting from the identity
    and the generators themselves and left-multiplying new basis members,
    until the dimension stabilizes; irreducible over every extension field
    exactly when the span reaches n squared.
    """
    if not gens:
        raise InputError("irreducibility test needs at least one matrix")
    field = gens[0].field
    n = gens[0].rows
    if n == 1:
        return True
    target = n * n
    sieve = _SpanSieve(field, target)
    queue = [Matrix.identity(field, n), *gens]
    while queue:
        mat = queue.pop()
        if sieve.add([e.value for e in mat.entries]):
            if sieve.dim == target:
                return True
            queue.extend(g @ mat for g in gens)
    return False


# ---------------------------------------------------------------------------
# SL_n helpers
# ---------------------------------------------------------------------------

def sl_order(q: int, n: int) -> int:
    """|SL_n(q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)."""
    return q ** (n * (n - 1) // 2) * math.prod(q**i - 1 for i in range(2, n + 1))


def psl_order(q: int, n: int) -> int:
    return sl_order(q, n) // math.gcd(n, q - 1)


def _transvection(field: FiniteField, n: int, v: int) -> Matrix:
    ident = Matrix.identity(field, n)
    ents = list(ident.entries)
    ents[1] = FieldElement(field, v)
    return Matrix(field, n, n, ents)


def _companion(field: FiniteField, n: int, coeffs: tuple[int, ...]) -> Matrix:
    """Companion matrix of x^n + c_{n-1} x^(n-1) + ... + c_1 x + (-1)^n,
    which has determinant one by construction."""
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    const = field.one if n % 2 == 0 else -field.one
    rows[0][n - 1] = -const
    m = Matrix.from_rows(field, rows)
    ents = list(m.entries)
    for i, c in enumerate(coeffs):
        ents[(n - 1 - i) * n + (n - 1)] = -FieldElement(field, c)
    ents[n - 1] = -const
    return Matrix(field, n, n, ents)


def _pair_candidates(field: FiniteField, n: int) -> Iterable[tuple[Matrix, Matrix]]:
    upper = _transvection(field, n, 1)
    if n == 2:
        for v in range(1, field.q):
            x = FieldElement(field, v)
            yield upper, Matrix(field, 2, 2, [field.one, field.zero, x, field.one])
    else:
        cycle_rows = [[0] * n for _ in range(n)]
        for i in range(n):
            cycle_rows[i][(i - 1) % n] = 1
        if n % 2 == 0:
            cycle_rows[0][n - 1] = -1
        cycle = Matrix.from_rows(field, cycle_rows)
        for v in range(1, field.q):
            yield _transvection(field, n, v), cycle
    for coeffs in itertools.product(range(field.q), repeat=n - 1):
        yield upper, _companion(field, n, coeffs)
    for v in range(2, field.q):
        for coeffs in itertools.product(range(field.q), repeat=n - 1):
            yield _transvection(field, n, v), _companion(field, n, coeffs)


def generating_pair(field: FiniteField, n: int) -> tuple[Matrix, Matrix]:
    """A deterministic generating pair for SL_n over the given field.

    Tries a fixed candidate stream (transvections against a transvection,
    Weyl element, or signed cycle) and accepts the first pair whose closure
    size matches the SL_n order formula exactly.
    """
    want = sl_order(field.q, n)
    for a, b in _pair_candidates(field, n):
        try:
            table = group_closure([a, b], cap=want + 1)
        except WorkCapExceeded:
            continue
        if table.size == want:
            return a, b
    raise InvariantViolation(
        f"no generating pair found for SL_{n}({field.q}) in the candidate stream"
    )


def random_sl_matrix(field: FiniteField, n: int, rng) -> Matrix:
    """Random determinant-one matrix: draw until invertible, then scale the
    first row by 1/det."""
    while True:
        ents = [FieldElement(field, rng.randrange(field.q)) for _ in range(n * n)]
        m = Matrix(field, n, n, ents)
        d = m.det()
        if not d.is_zero():
            break
    scale = d.inverse()
    fixed = [scale * e if i < n else e for i, e in enumerate(m.entries)]
    return Matrix(field, n, n, fixed)


def random_sl_tuple(field: FiniteField, n: int, length: int, rng) -> GroupTuple:
    """Random tuple with product exactly the identity (last entry solves
    for the product)."""
    if length < 2:
        raise InputError("tuple length must be >= 2")
    mats = [random_sl_matrix(field, n, rng) for _ in range(length - 1)]
    prod = Matrix.identity(field, n)
    for m in mats:
        prod = prod @ m
    mats.append(prod.inverse())
    return tuple_from_matrices(mats)

"""Exact field arithmetic and canonical subspace linear algebra.

Field elements are plain Python values so that the inner loops stay cheap:

* ``Rationals``: ``fractions.Fraction``
* ``PrimeField``: ``int`` in ``[0, p)``
* ``Quadratic``: pair ``(a, b)`` of base elements meaning ``a + b*sqrt(delta)``
* ``F4``: pair ``(a, b)`` of bits meaning ``a + b*x`` with ``x^2 = x + 1``

``Scalar`` and ``Matrix`` wrap these values for the public API.  A subspace
is stored as its reduced row-echelon basis, so equality of subspaces is
structural equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from .errors import ContainmentError, DimensionMismatch, FieldMismatch, NotInvertible


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _is_square_int(n: int) -> bool:
    if n < 0:
        return False
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r * r == n


class Field:
    """Common interface; subclasses are frozen dataclasses and hashable."""

    finite: bool = False
    is_extension: bool = False

    # arithmetic on raw values
    def add(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):  # pragma: no cover - abstract
        raise NotImplementedError

    def mul(self, a, b):  # pragma: no cover - abstract
        raise NotImplementedError

    def inv(self, a):  # pragma: no cover - abstract
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def conj(self, a):
        return a

    def from_int(self, n: int):  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def elements(self) -> list:
        raise ValueError(f"{self} is infinite")

    def order(self) -> int:
        raise ValueError(f"{self} is infinite")

    def base_field(self) -> "Field":
        return self

    def embed(self, a):
        """Embed a base-field value into this field."""
        return a

    def encode(self, a) -> Any:  # pragma: no cover - abstract
        raise NotImplementedError

    def decode(self, x: Any):  # pragma: no cover - abstract
        raise NotImplementedError

    def desc(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def is_zero(self, a) -> bool:
        return a == 0

    def encode(self, a) -> str:
        return str(Fraction(a))

    def decode(self, x: Any):
        if isinstance(x, bool):
            raise ValueError(f"not a rational: {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if not isinstance(x, str):
            raise ValueError(f"rationals are encoded as strings, got {x!r}")
        num, sep, den = x.strip().partition("/")
        try:
            n = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {x!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in {x!r}")
        return Fraction(n, q)

    def desc(self) -> dict:
        return {"kind": "Q"}

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    finite = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self) -> list:
        return list(range(self.p))

    def order(self) -> int:
        return self.p

    def is_square(self, a) -> bool:
        a %= self.p
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def encode(self, a) -> int:
        return int(a)

    def decode(self, x: Any):
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValueError(f"GF({self.p}) elements are integers, got {x!r}")
        return x % self.p

    def desc(self) -> dict:
        return {"kind": "Fp", "p": self.p}

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class Quadratic(Field):
    """``base(sqrt(delta))`` for a non-square ``delta`` of an odd-characteristic base."""

    base: Field
    delta: Any
    is_extension = True

    def __post_init__(self):
        if isinstance(self.base, (Quadratic, F4)):
            raise ValueError("quadratic extensions do not nest")
        if isinstance(self.base, PrimeField):
            if self.base.p == 2:
                raise ValueError("use F4 for the quadratic extension of GF(2)")
            d = self.base.from_int(self.delta)
            object.__setattr__(self, "delta", d)
            if self.base.is_square(d):
                raise ValueError(f"{self.delta} is a square in {self.base}")
        elif isinstance(self.base, Rationals):
            d = Fraction(self.delta)
            object.__setattr__(self, "delta", d)
            if d >= 0 and _is_square_int(d.numerator) and _is_square_int(d.denominator):
                raise ValueError(f"{d} is a square in Q")
        else:
            raise ValueError(f"unsupported base field {self.base!r}")

    @property
    def finite(self):  # type: ignore[override]
        return self.base.finite

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), B.sub(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        re = B.add(B.mul(a[0], b[0]), B.mul(self.delta, B.mul(a[1], b[1])))
        im = B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0]))
        return (re, im)

    def norm(self, a):
        B = self.base
        return B.sub(B.mul(a[0], a[0]), B.mul(self.delta, B.mul(a[1], a[1])))

    def inv(self, a):
        n = self.norm(a)
        if self.base.is_zero(n):
            raise ZeroDivisionError("inverse of zero")
        ni = self.base.inv(n)
        return (self.base.mul(a[0], ni), self.base.neg(self.base.mul(a[1], ni)))

    def conj(self, a):
        return (a[0], self.base.neg(a[1]))

    def from_int(self, n: int):
        return (self.base.from_int(n), self.base.zero)

    def is_zero(self, a) -> bool:
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def elements(self) -> list:
        els = self.base.elements()
        return [(a, b) for b in els for a in els]

    def order(self) -> int:
        return self.base.order() ** 2

    def base_field(self) -> Field:
        return self.base

    def embed(self, a):
        return (a, self.base.zero)

    def sqrt_delta(self):
        return (self.base.zero, self.base.one)

    def encode(self, a) -> list:
        return [self.base.encode(a[0]), self.base.encode(a[1])]

    def decode(self, x: Any):
        if not isinstance(x, (list, tuple)) or len(x) != 2:
            raise ValueError(f"quadratic elements are pairs [a,b], got {x!r}")
        return (self.base.decode(x[0]), self.base.decode(x[1]))

    def desc(self) -> dict:
        d = {"kind": "Quad", "delta": self.base.encode(self.delta)}
        if isinstance(self.base, PrimeField):
            d["p"] = self.base.p
        return d

    def __str__(self) -> str:
        return f"{self.base}(sqrt {self.base.encode(self.delta)})"


@dataclass(frozen=True)
class F4(Field):
    """GF(4) = GF(2)[x]/(x^2+x+1); conjugation is Frobenius a+bx -> (a+b)+bx."""

    finite = True
    is_extension = True

    @property
    def base(self) -> PrimeField:
        return PrimeField(2)

    def add(self, a, b):
        return (a[0] ^ b[0], a[1] ^ b[1])

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        # (a0 + a1 x)(b0 + b1 x) with x^2 = x + 1
        hi = a[1] & b[1]
        return ((a[0] & b[0]) ^ hi, (a[0] & b[1]) ^ (a[1] & b[0]) ^ hi)

    def inv(self, a):
        if a == (0, 0):
            raise ZeroDivisionError("inverse of zero")
        for c in self.elements():
            if self.mul(a, c) == (1, 0):
                return c
        raise AssertionError("unreachable")

    def conj(self, a):
        return (a[0] ^ a[1], a[1])

    def from_int(self, n: int):
        return (n & 1, 0)

    def is_zero(self, a) -> bool:
        return a == (0, 0)

    def elements(self) -> list:
        return [(0, 0), (1, 0), (0, 1), (1, 1)]

    def order(self) -> int:
        return 4

    def base_field(self) -> Field:
        return PrimeField(2)

    def embed(self, a):
        return (a & 1, 0)

    def generator(self):
        return (0, 1)

    def encode(self, a) -> list:
        return [a[0], a[1]]

    def decode(self, x: Any):
        if not isinstance(x, (list, tuple)) or len(x) != 2:
            raise ValueError(f"GF(4) elements are pairs [a,b], got {x!r}")
        return (int(x[0]) & 1, int(x[1]) & 1)

    def desc(self) -> dict:
        return {"kind": "Quad", "p": 2}

    def __str__(self) -> str:
        return "GF(4)"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def quadratic_extension(base: Field, delta: Any = None) -> Field:
    """The degree-2 extension used for Field components of a double cover."""
    if isinstance(base, PrimeField) and base.p == 2:
        if delta is not None:
            raise ValueError("GF(2) has only the Artin-Schreier extension; omit delta")
        return F4()
    if delta is None:
        raise ValueError("delta is required")
    return Quadratic(base, delta)


def field_from_desc(desc: dict) -> Field:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ValueError(f"field descriptor needs a 'kind': {desc!r}")
    kind = desc["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        return PrimeField(int(desc["p"]))
    if kind == "Quad":
        if "p" in desc:
            base: Field = PrimeField(int(desc["p"]))
        else:
            base = QQ
        if isinstance(base, PrimeField) and base.p == 2:
            return F4()
        return Quadratic(base, base.decode(desc["delta"]))
    raise ValueError(f"unknown field kind {kind!r}")


# ---------------------------------------------------------------------------
# scalars and matrices


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: Any

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return Scalar(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return Scalar(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        return Scalar(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        return Scalar(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        return Scalar(self.field, self.field.div(self.value, v))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def conjugate(self) -> "Scalar":
        return Scalar(self.field, self.field.conj(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def encode(self):
        return self.field.encode(self.value)


Row = tuple
Rows = tuple  # tuple of rows


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: Rows
    ncols: int

    @classmethod
    def of(cls, field: Field, rows: Iterable[Iterable[Any]], ncols: int | None = None) -> "Matrix":
        rs = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rs:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = len(rs[0])
        for r in rs:
            if len(r) != ncols:
                raise DimensionMismatch(f"row of length {len(r)} in a {ncols}-column matrix")
        return cls(field, rs, ncols)

    @classmethod
    def from_ints(cls, field: Field, rows: Iterable[Iterable[int]]) -> "Matrix":
        return cls.of(field, [[field.from_int(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, identity_rows(field, n), n)

    @classmethod
    def zeros(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero
        return cls(field, tuple(tuple(z for _ in range(n)) for _ in range(m)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self.field, matmul(self.field, self.rows, other.rows, other.ncols), other.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        F = self.field
        return Matrix(F, tuple(tuple(F.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")
        F = self.field
        return Matrix(F, tuple(tuple(F.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c) -> "Matrix":
        F = self.field
        return Matrix(F, tuple(tuple(F.mul(c, a) for a in r) for r in self.rows), self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, transpose_rows(self.rows, self.ncols), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self) -> "Matrix":
        F = self.field
        return Matrix(F, tuple(tuple(F.conj(a) for a in r) for r in self.rows), self.ncols)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise NotInvertible("non-square matrix")
        return Matrix(self.field, inverse_rows(self.field, self.rows), self.ncols)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(a) for r in self.rows for a in r)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and rank_rows(self.field, self.rows, self.ncols) == self.ncols

    def rank(self) -> int:
        return rank_rows(self.field, self.rows, self.ncols)

    def flatten(self) -> tuple:
        return tuple(a for r in self.rows for a in r)

    def apply(self, v: Sequence) -> tuple:
        F = self.field
        return tuple(_dot(F, r, v) for r in self.rows)

    def encode(self) -> list:
        return [[self.field.encode(a) for a in r] for r in self.rows]


def _dot(F: Field, u: Sequence, v: Sequence):
    acc = F.zero
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def identity_rows(F: Field, n: int) -> Rows:
    z, o = F.zero, F.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def transpose_rows(rows: Rows, ncols: int) -> Rows:
    return tuple(tuple(r[j] for r in rows) for j in range(ncols))


def matmul(F: Field, a: Rows, b: Rows, bcols: int) -> Rows:
    if isinstance(F, PrimeField):
        p = F.p
        bt = transpose_rows(b, bcols)
        return tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in bt) for r in a)
    bt = transpose_rows(b, bcols)
    return tuple(tuple(_dot(F, r, c) for c in bt) for r in a)


def flat_matmul(F: Field, a: tuple, b: tuple, d: int) -> tuple:
    """Product of two d x d matrices stored as flat row-major tuples."""
    out = []
    if isinstance(F, PrimeField):
        p = F.p
        for i in range(d):
            ai = a[i * d:(i + 1) * d]
            for j in range(d):
                out.append(sum(ai[k] * b[k * d + j] for k in range(d)) % p)
        return tuple(out)
    for i in range(d):
        for j in range(d):
            acc = F.zero
            for k in range(d):
                acc = F.add(acc, F.mul(a[i * d + k], b[k * d + j]))
            out.append(acc)
    return tuple(out)


def flat_transpose(a: tuple, d: int) -> tuple:
    return tuple(a[j * d + i] for i in range(d) for j in range(d))


# ---------------------------------------------------------------------------
# row reduction


def _rref_prime(p: int, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c] % p:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        if inv != 1:
            row = [(x * inv) % p for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c] % p
                if f:
                    mi = m[i]
                    m[i] = [(x - f * y) % p for x, y in zip(mi, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rref_generic(F: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if not F.is_zero(m[i][c]):
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        row = [F.mul(inv, x) for x in m[r]]
        m[r] = row
        for i in range(nrows):
            if i != r and not F.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref_rows(F: Field, rows: Iterable[Sequence], ncols: int) -> tuple[Rows, tuple[int, ...]]:
    """Nonzero rows of the reduced row-echelon form plus pivot columns."""
    rows = [list(r) for r in rows]
    if isinstance(F, PrimeField):
        out, piv = _kernel_rref(F.p, rows, ncols)
    else:
        out, piv = _rref_generic(F, rows, ncols)
    return tuple(tuple(r) for r in out), tuple(piv)


def rank_rows(F: Field, rows: Rows, ncols: int) -> int:
    return len(rref_rows(F, rows, ncols)[1])


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form (zero rows dropped) with the same row space."""
    rows, _ = rref_rows(m.field, m.rows, m.ncols)
    return Matrix(m.field, rows, m.ncols)


def inverse_rows(F: Field, rows: Rows) -> Rows:
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity_rows(F, n))]
    red, piv = rref_rows(F, aug, 2 * n)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise NotInvertible("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def nullspace_rows(F: Field, rows: Rows, ncols: int) -> Rows:
    """Basis of {x : A x = 0}."""
    red, piv = rref_rows(F, rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for r, pc in zip(red, piv):
            v[pc] = F.neg(r[free])
        basis.append(tuple(v))
    return tuple(basis)


# The prime-field reducer can be swapped for a compiled kernel; see _kernels.
_kernel_rref = _rref_prime


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    field: Field
    ambient_dim: int
    basis: Rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def _check(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and contains(other, self)

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        return rank_rows(self.field, self.basis + (tuple(v),), self.ambient_dim) == self.dim

    def vectors(self) -> Iterator[tuple]:
        """All vectors of the subspace (finite fields only)."""
        F = self.field
        n = self.ambient_dim
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            v = [F.zero] * n
            for c, b in zip(coeffs, self.basis):
                if not F.is_zero(c):
                    v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
            yield tuple(v)

    def image(self, m: Matrix) -> "Subspace":
        """Image of the subspace under x -> m x (vectors as columns)."""
        F = self.field
        return span(F, m.nrows, [m.apply(b) for b in self.basis])

    def encode(self) -> list:
        return [[self.field.encode(a) for a in r] for r in self.basis]


def span(field: Field, ambient_dim: int, generators: Iterable[Sequence]) -> Subspace:
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != ambient_dim:
            raise DimensionMismatch(f"generator of length {len(g)} in ambient {ambient_dim}")
    rows, _ = rref_rows(field, gens, ambient_dim)
    return Subspace(field, ambient_dim, rows)


def zero_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, ())


def full_space(field: Field, n: int) -> Subspace:
    return Subspace(field, n, identity_rows(field, n))


def sum_(v: Subspace, w: Subspace) -> Subspace:
    v._check(w)
    return span(v.field, v.ambient_dim, v.basis + w.basis)


def dim(v: Subspace) -> int:
    return v.dim


def intersect(v: Subspace, w: Subspace) -> Subspace:
    """Solve a*V = b*W for coefficient rows (a, b); the intersection is a*V."""
    v._check(w)
    F = v.field
    if v.is_zero() or w.is_zero():
        return zero_space(F, v.ambient_dim)
    stacked = v.basis + tuple(tuple(F.neg(x) for x in r) for r in w.basis)
    # columns of stacked^T are the generators; solve stacked^T c = 0
    kern = nullspace_rows(F, transpose_rows(stacked, v.ambient_dim), len(stacked))
    k = v.dim
    gens = []
    for c in kern:
        vec = [F.zero] * v.ambient_dim
        for coeff, b in zip(c[:k], v.basis):
            if not F.is_zero(coeff):
                vec = [F.add(x, F.mul(coeff, y)) for x, y in zip(vec, b)]
        gens.append(vec)
    return span(F, v.ambient_dim, gens)


def contains(v: Subspace, w: Subspace) -> bool:
    """True when w is a subspace of v."""
    v._check(w)
    if w.dim > v.dim:
        return False
    return rank_rows(v.field, v.basis + w.basis, v.ambient_dim) == v.dim


def complement(v: Subspace, w: Subspace) -> Subspace:
    """C with w = v (+) C: extend v's basis greedily by w's basis rows."""
    v._check(w)
    if not contains(w, v):
        raise ContainmentError("complement needs v inside w")
    F = v.field
    current = list(v.basis)
    r = v.dim
    extra = []
    for b in w.basis:
        if rank_rows(F, tuple(current) + (b,), v.ambient_dim) > r:
            current.append(b)
            extra.append(b)
            r += 1
    return span(F, v.ambient_dim, extra)


def orthogonal(v: Subspace) -> Subspace:
    """Annihilator for the standard dot product: {x : x.y = 0 for y in v}."""
    F = v.field
    if v.is_zero():
        return full_space(F, v.ambient_dim)
    return span(F, v.ambient_dim, nullspace_rows(F, v.basis, v.ambient_dim))


def conjugate(x):
    """Entrywise conjugation of a Scalar, Matrix or Subspace (identity off extensions)."""
    if isinstance(x, Scalar):
        return x.conjugate()
    if isinstance(x, Matrix):
        return x.conjugate()
    if isinstance(x, Subspace):
        F = x.field
        return span(F, x.ambient_dim, [tuple(F.conj(a) for a in r) for r in x.basis])
    raise TypeError(f"cannot conjugate {type(x).__name__}")


def all_subspaces(field: Field, n: int, dim: int | None = None) -> Iterator[Subspace]:
    """Every subspace of field^n (finite fields), enumerated as RREF shapes."""
    els = field.elements()
    dims = range(n + 1) if dim is None else [dim]
    for k in dims:
        for pivots in itertools.combinations(range(n), k):
            free_slots = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivots]
            for vals in itertools.product(els, repeat=len(free_slots)):
                rows = [[field.zero] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = field.one
                for (i, j), val in zip(free_slots, vals):
                    rows[i][j] = val
                yield Subspace(field, n, tuple(tuple(r) for r in rows))


def all_matrices(field: Field, m: int, n: int) -> Iterator[Matrix]:
    for vals in itertools.product(field.elements(), repeat=m * n):
        yield Matrix(field, tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(m)), n)


def general_linear(field: Field, n: int) -> list[Matrix]:
    return [g for g in all_matrices(field, n, n) if g.is_invertible()]

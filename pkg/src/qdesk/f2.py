"""Bit-packed linear algebra over F2.

Vectors are stored as a Python int together with a length. Bit 0 of the
vector (qubit 1 in user-facing text) is the *most significant* bit of the
packed integer, so ``F2Vector.from_str("100").value == 4``. This is the same
convention the state-vector module uses for amplitude indices, which lets a
vector double as a basis label.

User-facing indices (``support1``, ``column(i)``, pivot lists in reports)
are 1-based; everything else is 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_SPAN_ROWS = 20


class F2DimensionError(ValueError):
    """Raised when vector or matrix shapes do not line up."""


@dataclass(frozen=True, order=True)
class F2Vector:
    """An element of F2^n, packed MSB-first into ``value``."""

    length: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise F2DimensionError("length must be non-negative")
        if self.value < 0 or self.value >> self.length:
            raise F2DimensionError(f"value {self.value} does not fit in {self.length} bits")

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, n: int) -> F2Vector:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> F2Vector:
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> F2Vector:
        bits = [int(b) for b in bits]
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {b}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def from_str(cls, text: str) -> F2Vector:
        text = text.strip()
        if any(c not in "01" for c in text):
            raise ValueError(f"not a bit-string: {text!r}")
        return cls(len(text), int(text, 2) if text else 0)

    @classmethod
    def unit(cls, n: int, index: int) -> F2Vector:
        """Weight-one vector with a 1 at 0-based ``index``."""
        if not 0 <= index < n:
            raise IndexError(index)
        return cls(n, 1 << (n - 1 - index))

    @classmethod
    def from_support(cls, n: int, indices: Iterable[int]) -> F2Vector:
        value = 0
        for i in indices:
            if not 0 <= i < n:
                raise IndexError(i)
            value |= 1 << (n - 1 - i)
        return cls(n, value)

    # -- access -------------------------------------------------------
    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self.length
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> (self.length - 1 - i)) & 1

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield self[i]

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def bits(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return bin(self.value).count("1")

    def support(self) -> list[int]:
        """0-based positions of the set bits, ascending."""
        return [i for i in range(self.length) if self[i]]

    def support1(self) -> list[int]:
        return [i + 1 for i in self.support()]

    def is_zero(self) -> bool:
        return self.value == 0

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: F2Vector) -> None:
        if self.length != other.length:
            raise F2DimensionError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: F2Vector) -> F2Vector:
        self._check(other)
        return F2Vector(self.length, self.value ^ other.value)

    __xor__ = __add__
    __sub__ = __add__

    def __and__(self, other: F2Vector) -> F2Vector:
        self._check(other)
        return F2Vector(self.length, self.value & other.value)

    def dot(self, other: F2Vector) -> int:
        self._check(other)
        return bin(self.value & other.value).count("1") & 1

    def concat(self, other: F2Vector) -> F2Vector:
        return F2Vector(self.length + other.length, (self.value << other.length) | other.value)


def dot(v: F2Vector, w: F2Vector) -> int:
    """Standard bilinear form ``v1 w1 + ... + vn wn`` over F2."""
    return v.dot(w)


@dataclass(frozen=True)
class F2Matrix:
    """An r x n matrix over F2 stored as a tuple of packed rows."""

    rows: tuple[F2Vector, ...]
    ncols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if r.length != self.ncols:
                raise F2DimensionError("row lengths differ from ncols")

    @classmethod
    def from_rows(cls, rows: Sequence[F2Vector | str | Sequence[int]], ncols: int | None = None) -> F2Matrix:
        packed = []
        for r in rows:
            if isinstance(r, F2Vector):
                packed.append(r)
            elif isinstance(r, str):
                packed.append(F2Vector.from_str(r))
            else:
                packed.append(F2Vector.from_bits(r))
        if ncols is None:
            if not packed:
                raise F2DimensionError("ncols required for an empty matrix")
            ncols = packed[0].length
        return cls(tuple(packed), ncols)

    @classmethod
    def zeros(cls, r: int, n: int) -> F2Matrix:
        return cls(tuple(F2Vector.zeros(n) for _ in range(r)), n)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(tuple(F2Vector.unit(n, i) for i in range(n)), n)

    @classmethod
    def from_text(cls, text: str) -> F2Matrix:
        """Parse one bit-string row per line; blank lines and ``#`` comments ignored."""
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip().replace(" ", "")
            if line:
                rows.append(F2Vector.from_str(line))
        return cls.from_rows(rows)

    def to_text(self) -> str:
        return "\n".join(str(r) for r in self.rows)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> F2Vector:
        return self.rows[i]

    def column(self, j: int) -> F2Vector:
        """0-based column ``j`` as a vector of length ``nrows``."""
        return F2Vector.from_bits(r[j] for r in self.rows)

    def __matmul__(self, v: F2Vector) -> F2Vector:
        if v.length != self.ncols:
            raise F2DimensionError(f"matrix has {self.ncols} columns, vector has length {v.length}")
        return F2Vector.from_bits(r.dot(v) for r in self.rows)

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def rref(self) -> tuple[F2Matrix, list[int]]:
        """Reduced row echelon form (zero rows dropped) and 0-based pivot columns."""
        rows = [r.value for r in self.rows]
        n = self.ncols
        pivots: list[int] = []
        out: list[int] = []
        for col in range(n):
            mask = 1 << (n - 1 - col)
            idx = next((k for k, r in enumerate(rows) if r & mask), None)
            if idx is None:
                continue
            pivot_row = rows.pop(idx)
            rows = [r ^ pivot_row if r & mask else r for r in rows]
            out = [r ^ pivot_row if r & mask else r for r in out]
            out.append(pivot_row)
            pivots.append(col)
        return F2Matrix(tuple(F2Vector(n, r) for r in out), n), pivots

    @property
    def rank(self) -> int:
        return len(self.rref()[1])


def row_span(m: F2Matrix) -> list[F2Vector]:
    """All distinct F2-combinations of the rows, sorted by packed value."""
    if m.nrows > MAX_SPAN_ROWS:
        raise ValueError(f"row_span enumerates 2^r combinations; r={m.nrows} exceeds {MAX_SPAN_ROWS}")
    basis = m.rref()[0].rows
    values = {0}
    for b in basis:
        values |= {v ^ b.value for v in values}
    return [F2Vector(m.ncols, v) for v in sorted(values)]


def orthogonal_complement(m: F2Matrix) -> list[F2Vector]:
    """Every ``v`` in F2^n with ``r . v = 0`` for all rows ``r`` (brute force, n <= 20)."""
    n = m.ncols
    if n > MAX_SPAN_ROWS:
        raise ValueError(f"brute-force complement limited to n <= {MAX_SPAN_ROWS}")
    return [F2Vector(n, v) for v in range(1 << n) if all(r.dot(F2Vector(n, v)) == 0 for r in m.rows)]


def syndrome(p: F2Matrix, e: F2Vector) -> F2Vector:
    """``P e``: one bit per parity check."""
    return p @ e


def pivot_columns(m: F2Matrix) -> list[int]:
    """1-based pivot columns of the row-reduced matrix."""
    return [c + 1 for c in m.rref()[1]]


def single_error_table(p: F2Matrix) -> dict[F2Vector, F2Vector]:
    """Syndrome -> error map over all errors of weight <= 1.

    A syndrome shared by two different weight-one errors is left out, since
    no unique correction exists for it.
    """
    n = p.ncols
    table: dict[F2Vector, F2Vector] = {F2Vector.zeros(p.nrows): F2Vector.zeros(n)}
    ambiguous: set[F2Vector] = set()
    for i in range(n):
        e = F2Vector.unit(n, i)
        s = p @ e
        if s.is_zero() or s in ambiguous:
            continue
        if s in table:
            if table[s] != e:
                ambiguous.add(s)
                del table[s]
            continue
        table[s] = e
    return table


def decode_single_error(p: F2Matrix, s: F2Vector, table: dict[F2Vector, F2Vector] | None = None) -> F2Vector | None:
    """Unique error of weight <= 1 with syndrome ``s``, or ``None`` if there is none."""
    if s.length != p.nrows:
        raise F2DimensionError(f"syndrome length {s.length} != {p.nrows} checks")
    if table is None:
        table = single_error_table(p)
    return table.get(s)


def hamming_p() -> F2Matrix:
    """Parity checks of the [7,4,3] Hamming code; column i is i in binary, low bit on top."""
    return F2Matrix.from_rows(["1010101", "0110011", "0001111"])


def toy_p() -> F2Matrix:
    """Parity checks of the length-3 repetition code."""
    return F2Matrix.from_rows(["110", "011"])


def all_vectors(n: int) -> Iterator[F2Vector]:
    for v in range(1 << n):
        yield F2Vector(n, v)


def vectors_of_weight(n: int, k: int) -> Iterator[F2Vector]:
    for idx in itertools.combinations(range(n), k):
        yield F2Vector.from_support(n, idx)

"""Exact sparse linear algebra over the rationals.

Every dimension computed by this package (homology groups, spectral sequence
pages, cord quotients) comes down to ranks and kernels of sparse matrices
whose entries are small integers or exact rationals.  A rank that is off by
one is worthless, so all arithmetic here uses ``fractions.Fraction`` and no
floating point ever enters.

Matrices store a ``(row, col) -> Fraction`` map with no explicit zeros; row
vectors are plain ``{col: Fraction}`` dicts.  Reduced row echelon form is
canonical for a given row space, which makes every basis produced here
deterministic and reproducible regardless of input order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class ExactLinError(Exception):
    pass


class ContainmentViolation(ExactLinError):
    """Raised when a claimed subspace inclusion fails."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class SparseMatrix:
    """Immutable sparse matrix over Q."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) out of range")
            v = as_fraction(v)
            if v != 0:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, data: Iterable[Iterable]) -> "SparseMatrix":
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if data else 0
        entries = {}
        for i, r in enumerate(data):
            if len(r) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(r):
                v = as_fraction(v)
                if v != 0:
                    entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, {})

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            out[j][i] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}
        )

    def to_dense(self) -> list[list[Fraction]]:
        dense = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            dense[i][j] = v
        return dense

    def apply(self, vec: Mapping[int, Fraction]) -> dict:
        """Matrix times column vector, both sparse."""
        out: dict = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j)
            if c:
                out[i] = out.get(i, Fraction(0)) + v * c
        return {i: v for i, v in out.items() if v != 0}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols_of_other = other.row_dicts()
        entries: dict = {}
        for (i, k), v in self.entries.items():
            for j, w in cols_of_other[k].items():
                key = (i, j)
                entries[key] = entries.get(key, Fraction(0)) + v * w
        return SparseMatrix(self.rows, other.cols, entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


class RowReducer:
    """Incremental Gaussian elimination keeping one pivot row per column.

    ``add`` reduces a row against the current pivots and installs it if a new
    pivot emerges.  ``reduced_rows`` back-substitutes to full RREF, which is
    the canonical basis of the accumulated row space.

    ``col_key`` orders columns for pivot selection (default: natural index
    order).  Ranks restricted to a prefix of that order can be read off the
    pivot positions, which several callers use to slice filtrations.
    """

    def __init__(self, col_key=None):
        self.pivots: dict = {}  # pivot column -> row dict (leading coeff 1)
        self.col_key = col_key if col_key is not None else (lambda c: c)

    def _leading(self, row: dict):
        return min(row, key=self.col_key)

    def reduce(self, row: Mapping) -> dict:
        """Return the residual of ``row`` after reduction, without inserting."""
        row = {c: as_fraction(v) for c, v in row.items() if v != 0}
        while row:
            lead = self._leading(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            coeff = row[lead]
            for c, v in piv.items():
                nv = row.get(c, Fraction(0)) - coeff * v
                if nv == 0:
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row: Mapping) -> bool:
        """Reduce and insert; True if the row enlarged the span."""
        res = self.reduce(row)
        if not res:
            return False
        lead = self._leading(res)
        inv = Fraction(1) / res[lead]
        self.pivots[lead] = {c: v * inv for c, v in res.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Mapping) -> bool:
        return not self.reduce(row)

    def pivot_columns(self) -> list:
        return sorted(self.pivots, key=self.col_key)

    def reduced_rows(self) -> list[dict]:
        """Full RREF rows, sorted by pivot column."""
        cols = self.pivot_columns()
        # Back-substitute from the last pivot upwards.  A fully reduced row
        # has entries only at its own pivot and at non-pivot columns, so one
        # pass over the snapshot suffices.
        final: dict = {}
        for col in reversed(cols):
            row = dict(self.pivots[col])
            for c in [c for c in list(row) if c != col and c in final]:
                coeff = row[c]
                for cc, vv in final[c].items():
                    nv = row.get(cc, Fraction(0)) - coeff * vv
                    if nv == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = nv
            final[col] = row
        return [final[c] for c in cols]


def rref(m: SparseMatrix) -> tuple[SparseMatrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    The row space is preserved and the result is canonical: it depends only
    on the span of the input rows, never on their order.
    """
    red = RowReducer()
    for row in m.row_dicts():
        red.add(row)
    rows = red.reduced_rows()
    entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items()}
    return SparseMatrix(len(rows), m.cols, entries), red.pivot_columns()


def rank(m: SparseMatrix) -> int:
    red = RowReducer()
    for row in m.row_dicts():
        red.add(row)
    return red.rank


class Subspace:
    """Subspace of Q^n held as canonical RREF basis rows."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: list[dict]):
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_vectors(cls, ambient_dim: int, vectors: Iterable[Mapping]) -> "Subspace":
        red = RowReducer()
        for v in vectors:
            for c in v:
                if not 0 <= c < ambient_dim:
                    raise ValueError("coordinate out of range")
            red.add(v)
        return cls(ambient_dim, red.reduced_rows())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: Mapping) -> bool:
        red = RowReducer()
        for row in self.basis:
            red.add(row)
        return red.contains(vec)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel_basis(m: SparseMatrix) -> Subspace:
    """Canonical basis of the right kernel {v : m v = 0}."""
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    rows = reduced.row_dicts()
    vectors = []
    for f in free:
        vec = {f: Fraction(1)}
        for i, p in enumerate(pivots):
            coeff = rows[i].get(f)
            if coeff:
                vec[p] = -coeff
        vectors.append(vec)
    return Subspace.from_vectors(m.cols, vectors)


def quotient_dim(v: Subspace, w: Subspace) -> int:
    """dim(v/w) for w contained in v; raises ContainmentViolation otherwise."""
    if v.ambient_dim != w.ambient_dim:
        raise ContainmentViolation("ambient dimensions differ")
    red = RowReducer()
    for row in v.basis:
        red.add(row)
    for row in w.basis:
        if not red.contains(row):
            raise ContainmentViolation("subspace is not contained in the ambient space")
    return v.dim - w.dim

"""Exact integer linear algebra over labelled index sets.

Everything here works on Python ints, so there is no overflow and no
floating point anywhere.  The Smith decomposition is the single code path
used to decide integer solvability, compute kernels and present cokernels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


@dataclass(frozen=True)
class IntVector:
    """Integer vector indexed by an ordered tuple of labels."""

    labels: tuple[str, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels")

    @classmethod
    def of(cls, values: Iterable[int], labels: Sequence[str] | None = None) -> "IntVector":
        values = tuple(int(x) for x in values)
        labels = _default_labels(len(values)) if labels is None else tuple(labels)
        return cls(labels, values)

    @classmethod
    def from_mapping(cls, labels: Sequence[str], mapping: Mapping[str, int]) -> "IntVector":
        unknown = set(mapping) - set(labels)
        if unknown:
            raise KeyError(f"labels not in index set: {sorted(unknown)}")
        return cls(tuple(labels), tuple(int(mapping.get(k, 0)) for k in labels))

    @classmethod
    def zeros(cls, labels: Sequence[str]) -> "IntVector":
        return cls(tuple(labels), (0,) * len(labels))

    @classmethod
    def delta(cls, labels: Sequence[str], at: str) -> "IntVector":
        return cls.from_mapping(labels, {at: 1})

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, label: str) -> int:
        return self.values[self._index[label]]

    @property
    def _index(self) -> dict[str, int]:
        return {k: i for i, k in enumerate(self.labels)}

    def _check(self, other: "IntVector") -> None:
        if self.labels != other.labels:
            raise ValueError(f"index mismatch: {self.labels} vs {other.labels}")

    def __add__(self, other: "IntVector") -> "IntVector":
        self._check(other)
        return IntVector(self.labels, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "IntVector") -> "IntVector":
        self._check(other)
        return IntVector(self.labels, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "IntVector":
        return IntVector(self.labels, tuple(-a for a in self.values))

    def __mul__(self, k: int) -> "IntVector":
        return IntVector(self.labels, tuple(k * a for a in self.values))

    __rmul__ = __mul__

    def dot(self, other: "IntVector") -> int:
        self._check(other)
        return sum(a * b for a, b in zip(self.values, other.values))

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, x in zip(self.labels, self.values) if x)

    def is_zero(self) -> bool:
        return not any(self.values)

    def nonnegative(self) -> bool:
        return all(x >= 0 for x in self.values)

    def to_dict(self) -> dict[str, int]:
        """Sparse form: zero entries are omitted."""
        return {k: x for k, x in zip(self.labels, self.values) if x}

    def restrict(self, labels: Sequence[str]) -> "IntVector":
        return IntVector(tuple(labels), tuple(self[k] for k in labels))

    def extend(self, labels: Sequence[str]) -> "IntVector":
        """Re-index onto a superset of labels, padding with zeros."""
        return IntVector.from_mapping(labels, dict(zip(self.labels, self.values)))

    def format(self) -> str:
        return "(" + ", ".join(f"{k}={x}" for k, x in zip(self.labels, self.values)) + ")"

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.values) + ")"


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.rows) != len(self.row_labels):
            raise ValueError("row label count does not match row count")
        for r in self.rows:
            if len(r) != len(self.col_labels):
                raise ValueError("ragged matrix or column label mismatch")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]], row_labels: Sequence[str] | None = None,
           col_labels: Sequence[str] | None = None, ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else len(col_labels or ())
        rl = _default_labels(len(rows)) if row_labels is None else tuple(row_labels)
        cl = _default_labels(ncols) if col_labels is None else tuple(col_labels)
        return cls(rows, rl, cl)

    @classmethod
    def identity(cls, labels: Sequence[str]) -> "IntMatrix":
        n = len(labels)
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)),
                   tuple(labels), tuple(labels))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    def entry(self, r: str, c: str) -> int:
        return self.rows[self.row_labels.index(r)][self.col_labels.index(c)]

    def column(self, c: str) -> IntVector:
        j = self.col_labels.index(c)
        return IntVector(self.row_labels, tuple(r[j] for r in self.rows))

    def transpose(self) -> "IntMatrix":
        cols = tuple(zip(*self.rows)) if self.rows else tuple(() for _ in self.col_labels)
        return IntMatrix(tuple(tuple(c) for c in cols), self.col_labels, self.row_labels)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                         self.row_labels, self.col_labels)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
                         self.row_labels, self.col_labels)

    def minus_identity(self) -> "IntMatrix":
        if self.row_labels != self.col_labels:
            raise ValueError("A - I needs identical row and column labels")
        return self - IntMatrix.identity(self.row_labels)

    def __matmul__(self, other):
        if isinstance(other, IntVector):
            if len(other) != self.shape[1]:
                raise ValueError("dimension mismatch")
            return IntVector(self.row_labels,
                             tuple(sum(a * b for a, b in zip(r, other.values)) for r in self.rows))
        if self.shape[1] != other.shape[0]:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.shape[1]
        rows = tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        return IntMatrix(rows, self.row_labels, other.col_labels)

    def select_columns(self, cols: Sequence[str]) -> "IntMatrix":
        idx = [self.col_labels.index(c) for c in cols]
        return IntMatrix(tuple(tuple(r[j] for j in idx) for r in self.rows), self.row_labels, tuple(cols))

    def select(self, rows: Sequence[str], cols: Sequence[str]) -> "IntMatrix":
        ridx = [self.row_labels.index(r) for r in rows]
        cidx = [self.col_labels.index(c) for c in cols]
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in cidx) for i in ridx), tuple(rows), tuple(cols))

    def stack(self, row: IntVector, label: str) -> "IntMatrix":
        """Append one row below the matrix."""
        if row.labels != self.col_labels:
            raise ValueError("row index does not match columns")
        return IntMatrix(self.rows + (row.values,), self.row_labels + (label,), self.col_labels)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def format(self) -> str:
        width = max([len(str(x)) for r in self.rows for x in r] + [1])
        lab = max([len(x) for x in self.row_labels] + [0])
        head = " " * (lab + 2) + " ".join(c.rjust(width) for c in self.col_labels)
        lines = [head]
        for name, r in zip(self.row_labels, self.rows):
            lines.append(f"{name.ljust(lab)} [" + " ".join(str(x).rjust(width) for x in r) + "]")
        return "\n".join(lines)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        m, n = self.D.shape
        return tuple(self.D.rows[i][i] for i in range(min(m, n)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic torsion summands with invariant factors."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(t <= 1 for t in self.torsion):
            raise ValueError("invalid abelian group presentation")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion factors must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith decomposition by elementary unimodular row and column operations.

    The pivot at each stage is the nonzero entry of least absolute value in
    the remaining block, ties broken by (row, column).  Diagonal entries come
    out non-negative and each divides the next.
    """
    m, n = A.shape
    D = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row[dst] += k * row[src]
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col[dst] += k * col[src]
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(
        IntMatrix(tuple(map(tuple, U)), A.row_labels, A.row_labels),
        IntMatrix(tuple(map(tuple, D)), A.row_labels, A.col_labels),
        IntMatrix(tuple(map(tuple, V)), A.col_labels, A.col_labels),
    )


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m, n = A.shape
    if m != n:
        raise ValueError(f"determinant of non-square {m}x{n} matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _hermite_rows(basis: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite form of the lattice spanned by ``basis``.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    rows = [list(r) for r in basis if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                (nxt if r[col] else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for prev in out:
            q = prev[col] // piv[col]
            prev[:] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        rows = [r for r in rest if any(r)]
        col += 1
    return out


def kernel_basis(A: IntMatrix) -> list[IntVector]:
    """Basis of the integer kernel, in Hermite form; empty iff the kernel is 0."""
    snf = smith_normal_form(A)
    r = snf.rank
    n = A.shape[1]
    cols = [[snf.V.rows[i][j] for i in range(n)] for j in range(r, n)]
    return [IntVector(A.col_labels, tuple(v)) for v in _hermite_rows(cols)]


def _reduce_mod_lattice(x: list[int], hermite: list[list[int]]) -> list[int]:
    for row in hermite:
        c = next(i for i, a in enumerate(row) if a)
        q = x[c] // row[c]
        if q:
            x = [a - q * b for a, b in zip(x, row)]
    return x


def image_membership(A: IntMatrix, d: IntVector) -> IntVector | None:
    """Integer x with A @ x == d, or None when no integer solution exists.

    Solvability is read off the Smith decomposition.  Among all solutions the
    one returned is the canonical representative of x + ker A (reduced
    against the Hermite basis of the kernel), so the answer does not depend
    on pivoting details.
    """
    m, n = A.shape
    if len(d) != m:
        raise ValueError(f"right-hand side has length {len(d)}, matrix has {m} rows")
    snf = smith_normal_form(A)
    c = (snf.U @ IntVector(A.row_labels, d.values)).values
    diag = snf.diagonal
    y = [0] * n
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if c[i]:
                return None
        elif c[i] % di:
            return None
        else:
            y[i] = c[i] // di
    x = list((snf.V @ IntVector(A.col_labels, tuple(y))).values)
    kern = _hermite_rows([[snf.V.rows[i][j] for i in range(n)] for j in range(snf.rank, n)])
    return IntVector(A.col_labels, tuple(_reduce_mod_lattice(x, kern)))


def restricted_membership(A: IntMatrix, d: IntVector, support: Iterable[str]) -> IntVector | None:
    """Solve A @ x == d with x supported on the given columns only."""
    keep = set(support)
    unknown = keep - set(A.col_labels)
    if unknown:
        raise ValueError(f"support names unknown columns: {sorted(unknown)}")
    cols = [c for c in A.col_labels if c in keep]
    sub = image_membership(A.select_columns(cols), d)
    if sub is None:
        return None
    return sub.extend(A.col_labels)


def cokernel(A: IntMatrix) -> AbelianGroup:
    """Z^rows / im A as free rank plus invariant factors."""
    snf = smith_normal_form(A)
    return AbelianGroup(A.shape[0] - snf.rank, tuple(d for d in snf.diagonal if d > 1))

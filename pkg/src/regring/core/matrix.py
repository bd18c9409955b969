"""Dense immutable matrices over Q(i) and their text format."""

import re

from ..errors import NotSquareError, ParseError, ShapeError
from .scalar import ONE, ZERO, Scalar


class ExactMatrix:
    """Dense ``rows x cols`` matrix of :class:`Scalar` entries, stored row-major.

    Zero-width and zero-height matrices are allowed; they show up as the
    factors of a rank-zero matrix.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows, cols, entries):
        entries = tuple(e if isinstance(e, Scalar) else Scalar.coerce(e) for e in entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self._set(rows, cols, entries)

    def _set(self, rows, cols, entries):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, cols, entries):
        # entries already a tuple of Scalars
        m = object.__new__(cls)
        m._set(rows, cols, entries)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows, cols=None):
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls._raw(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, n, i, j, cols=None):
        """Matrix unit with a single 1 at (i, j), zero-based."""
        cols = n if cols is None else cols
        entries = [ZERO] * (n * cols)
        entries[i * cols + j] = ONE
        return cls._raw(n, cols, tuple(entries))

    @classmethod
    def diag(cls, values):
        values = [Scalar.coerce(v) for v in values]
        n = len(values)
        return cls._raw(n, n, tuple(values[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def column(cls, values):
        return cls(len(values), 1, values)

    @classmethod
    def hstack(cls, *blocks):
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ShapeError("hstack needs equal row counts")
        cols = sum(b.cols for b in blocks)
        entries = []
        for i in range(rows):
            for b in blocks:
                entries.extend(b.entries[i * b.cols:(i + 1) * b.cols])
        return cls._raw(rows, cols, tuple(entries))

    @classmethod
    def vstack(cls, *blocks):
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ShapeError("vstack needs equal column counts")
        entries = []
        for b in blocks:
            entries.extend(b.entries)
        return cls._raw(sum(b.rows for b in blocks), cols, tuple(entries))

    @classmethod
    def block(cls, grid):
        return cls.vstack(*[cls.hstack(*row) for row in grid])

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column_entries(self, j):
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, row_idx, col_idx):
        row_idx = list(row_idx)
        col_idx = list(col_idx)
        c = self.cols
        e = self.entries
        return ExactMatrix._raw(
            len(row_idx), len(col_idx), tuple(e[i * c + j] for i in row_idx for j in col_idx)
        )

    def select_columns(self, col_idx):
        return self.submatrix(range(self.rows), col_idx)

    def select_rows(self, row_idx):
        return self.submatrix(row_idx, range(self.cols))

    # -- predicates ---------------------------------------------------------

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(e.is_zero() for e in self.entries)

    def is_hermitian(self):
        return self.is_square() and self == self.H

    def is_idempotent(self):
        return self.is_square() and self @ self == self

    def is_real(self):
        return all(e.is_real() for e in self.entries)

    # -- arithmetic ---------------------------------------------------------

    @property
    def T(self):
        r, c, e = self.rows, self.cols, self.entries
        return ExactMatrix._raw(c, r, tuple(e[i * c + j] for j in range(c) for i in range(r)))

    @property
    def H(self):
        """Conjugate transpose."""
        r, c, e = self.rows, self.cols, self.entries
        return ExactMatrix._raw(
            c, r, tuple(e[i * c + j].conjugate() for j in range(c) for i in range(r))
        )

    def conjugate(self):
        return ExactMatrix._raw(self.rows, self.cols, tuple(x.conjugate() for x in self.entries))

    def _check_same_shape(self, other):
        if not isinstance(other, ExactMatrix):
            raise TypeError("expected ExactMatrix")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._raw(
            self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries))
        )

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix._raw(
            self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries))
        )

    def __neg__(self):
        return ExactMatrix._raw(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, s):
        s = Scalar.coerce(s)
        return ExactMatrix._raw(self.rows, self.cols, tuple(s * x for x in self.entries))

    def __mul__(self, s):
        if isinstance(s, ExactMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(s)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            acc = [ZERO] * m
            for t, x in enumerate(arow):
                if x.is_zero():
                    continue
                brow = b[t * m:(t + 1) * m]
                for j, y in enumerate(brow):
                    if not y.is_zero():
                        acc[j] = acc[j] + x * y
            out.extend(acc)
        return ExactMatrix._raw(n, m, tuple(out))

    def __pow__(self, k):
        if not self.is_square():
            raise NotSquareError("power of a non-square matrix")
        result = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        if not self.is_square():
            raise NotSquareError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self[i, i]
        return total

    def kron(self, other):
        r1, c1, r2, c2 = self.rows, self.cols, other.rows, other.cols
        out = []
        for i in range(r1):
            for p in range(r2):
                for j in range(c1):
                    x = self.entries[i * c1 + j]
                    out.extend(x * y for y in other.row(p))
        return ExactMatrix._raw(r1 * r2, c1 * c2, tuple(out))

    def vec(self):
        """Stack the columns into one column vector."""
        return ExactMatrix._raw(self.rows * self.cols, 1, self.T.entries)

    @classmethod
    def unvec(cls, v, rows, cols):
        return cls._raw(cols, rows, tuple(v.entries)).T

    # -- equality and display ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"ExactMatrix.parse({format_matrix(self, row_sep=' / ')!r})"

    @classmethod
    def parse(cls, text):
        return parse_matrix(text)

    def __reduce__(self):
        return (ExactMatrix, (self.rows, self.cols, self.entries))


# -- text format ----------------------------------------------------------

_TOKEN_RE = re.compile(r"\S+")


def parse_matrix(text):
    """Parse the plain-text matrix format.

    Rows are separated by newlines or by a standalone ``/`` token, entries
    by whitespace. ``#`` starts a comment that runs to the end of the line.
    """
    rows = []
    current = []
    current_pos = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(line):
            tok = m.group()
            if tok == "/":
                if not current:
                    raise ParseError("empty row", lineno, m.start() + 1)
                rows.append((current, current_pos))
                current, current_pos = [], None
                continue
            try:
                value = Scalar.parse(tok)
            except ParseError as exc:
                raise ParseError(str(exc), lineno, m.start() + 1) from None
            if current_pos is None:
                current_pos = (lineno, m.start() + 1)
            current.append(value)
        if current:
            rows.append((current, current_pos))
            current, current_pos = [], None
    if not rows:
        raise ParseError("no matrix entries found")
    width = len(rows[0][0])
    for values, (lineno, col) in rows:
        if len(values) != width:
            raise ParseError(
                f"ragged rows: expected {width} entries, found {len(values)}", lineno, col
            )
    return ExactMatrix(len(rows), width, [v for values, _ in rows for v in values])


def format_matrix(m, row_sep="\n"):
    """Inverse of :func:`parse_matrix`; columns are padded to line up."""
    if m.rows == 0 or m.cols == 0:
        return ""
    cells = [[str(x) for x in m.row(i)] for i in range(m.rows)]
    if row_sep != "\n":
        return row_sep.join(" ".join(r) for r in cells)
    widths = [max(len(cells[i][j]) for i in range(m.rows)) for j in range(m.cols)]
    return "\n".join(
        " ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells
    )


def M(text):
    """Shorthand for ``parse_matrix`` used heavily in tests and fixtures."""
    return parse_matrix(text)

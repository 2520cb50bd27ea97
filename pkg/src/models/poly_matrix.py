import logging

from src.models.laurent import LaurentPoly, poly_divexact


class PolyMatrix:
    """
    A dense matrix of Laurent polynomials.

    Args:
        field (ScalarField): Coefficient field shared by all entries.
        num_vars (int): Variable count shared by all entries.
        entries (sequence): Rows of LaurentPoly entries.
        cols (int, optional): Column count, needed when there are no rows.
    """
    __slots__ = ("field", "num_vars", "rows", "cols", "_entries")

    def __init__(self, field, num_vars, entries, cols=None):
        entries = tuple(tuple(row) for row in entries)
        widths = {len(row) for row in entries}
        if len(widths) > 1:
            raise ValueError("Rows of a PolyMatrix must have equal length")
        if entries:
            cols = widths.pop()
        elif cols is None:
            cols = 0
        for row in entries:
            for entry in row:
                if entry.field != field or entry.num_vars != num_vars:
                    raise ValueError("backend/variable-count mismatch in PolyMatrix entry")
        self.field = field
        self.num_vars = num_vars
        self.rows = len(entries)
        self.cols = cols
        self._entries = entries

    @classmethod
    def zeros(cls, field, num_vars, rows, cols):
        zero = LaurentPoly.zero(field, num_vars)
        return cls(field, num_vars, [[zero] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, num_vars, n):
        zero = LaurentPoly.zero(field, num_vars)
        one = LaurentPoly.one(field, num_vars)
        return cls(field, num_vars, [[one if i == j else zero for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_blocks(cls, field, num_vars, blocks, block_size):
        """
        Assembles a matrix from a grid of square blocks.

        Args:
            blocks (list): Rows of PolyMatrix blocks, each ``block_size`` x ``block_size``.
            block_size (int): Side length of every block.
        """
        block_cols = len(blocks[0]) if blocks else 0
        rows = []
        for block_row in blocks:
            if len(block_row) != block_cols:
                raise ValueError("Ragged block grid")
            for i in range(block_size):
                row = []
                for block in block_row:
                    if block.rows != block_size or block.cols != block_size:
                        raise ValueError(f"Block of size {block.rows}x{block.cols}, expected {block_size}")
                    row.extend(block.row(i))
                rows.append(row)
        return cls(field, num_vars, rows, block_cols * block_size)

    @property
    def entries(self):
        return self._entries

    def row(self, i):
        return self._entries[i]

    def __getitem__(self, index):
        i, j = index
        return self._entries[i][j]

    def _check(self, other):
        if (other.rows, other.cols) != (self.rows, self.cols):
            raise ValueError(f"Shape mismatch: {self.rows}x{self.cols} and {other.rows}x{other.cols}")

    def __add__(self, other):
        self._check(other)
        return PolyMatrix(self.field, self.num_vars,
                          [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
                          self.cols)

    def __sub__(self, other):
        self._check(other)
        return PolyMatrix(self.field, self.num_vars,
                          [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
                          self.cols)

    def __neg__(self):
        return PolyMatrix(self.field, self.num_vars, [[-a for a in row] for row in self._entries], self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = LaurentPoly.zero(self.field, self.num_vars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                total = zero
                for k in range(self.cols):
                    a = self._entries[i][k]
                    b = other._entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        total = total + a * b
                row.append(total)
            out.append(row)
        return PolyMatrix(self.field, self.num_vars, out, other.cols)

    def remove_columns(self, start, stop):
        """Drops columns ``start`` (inclusive) to ``stop`` (exclusive)."""
        return PolyMatrix(self.field, self.num_vars,
                          [row[:start] + row[stop:] for row in self._entries],
                          self.cols - (stop - start))

    def substitute_product(self):
        return PolyMatrix(self.field, 1,
                          [[a.substitute_product() for a in row] for row in self._entries], self.cols)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for r1, r2 in zip(self._entries, other._entries) for a, b in zip(r1, r2))

    __hash__ = None

    def determinant(self):
        return determinant(self)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols})"


def determinant(matrix):
    """
    Fraction-free (Bareiss) determinant.

    The pivot of each column is the candidate entry with the fewest terms, lowest row
    first on ties. Each 2x2 update is divided exactly by the previous pivot.

    Args:
        matrix (PolyMatrix): A square matrix.

    Returns:
        LaurentPoly: The determinant.
    """
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    field = matrix.field
    nv = matrix.num_vars
    if n == 0:
        return LaurentPoly.one(field, nv)
    a = [list(row) for row in matrix.entries]
    sign = 1
    previous = None
    swaps = 0
    for k in range(n - 1):
        candidates = [(len(a[i][k]), i) for i in range(k, n) if not a[i][k].is_zero()]
        if not candidates:
            return LaurentPoly.zero(field, nv)
        _, pivot_row = min(candidates)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
            swaps += 1
        pivot = a[k][k]
        for i in range(k + 1, n):
            lower = a[i][k]
            for j in range(k + 1, n):
                value = pivot * a[i][j]
                if not lower.is_zero() and not a[k][j].is_zero():
                    other = lower * a[k][j]
                    scale = max(value.max_magnitude(), other.max_magnitude())
                    value = (value - other).pruned(scale)
                if previous is not None and not value.is_zero():
                    value = poly_divexact(value, previous)
                a[i][j] = value
            a[i][k] = LaurentPoly.zero(field, nv)
        previous = pivot
    logging.debug(f"Bareiss determinant of a {n}x{n} matrix with {swaps} row swaps")
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_determinant(matrix):
    """Determinant by Laplace expansion along the first row."""
    if matrix.rows != matrix.cols:
        raise ValueError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    return _cofactor(matrix.field, matrix.num_vars, [list(row) for row in matrix.entries])


def _cofactor(field, nv, rows):
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(field, nv)
    if n == 1:
        return rows[0][0]
    total = LaurentPoly.zero(field, nv)
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * _cofactor(field, nv, minor)
        total = total - term if j % 2 else total + term
    return total

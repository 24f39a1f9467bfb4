"""Finite truncations of integer matrices.

Finite matrices carry the strictly associative block-diagonal sum; the
infinite ones only admit the interleaving sum, which is associative up to the
index permutation of ``model_nat.alpha_map``.  Everything here is about
truncations: an ``N x N`` truncation of the interleaved sum only depends on
the ``ceil(N/2)`` truncations of its arguments.
"""
from __future__ import annotations

import numpy as np


class InsufficientTruncation(ValueError):
    pass


class TruncMatrix:
    __slots__ = ("entries",)

    def __init__(self, entries):
        a = np.asarray(entries, dtype=np.int64)
        if a.ndim != 2:
            if a.size:
                raise ValueError(f"expected a 2-d array, got shape {a.shape}")
            a = np.zeros((0, 0), dtype=np.int64)
        self.entries = a

    @property
    def n_rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n_cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, xy):
        x, y = xy
        if not (0 <= x < self.n_rows and 0 <= y < self.n_cols):
            raise IndexError(f"entry {xy} outside {self.n_rows}x{self.n_cols}")
        return int(self.entries[x, y])

    def __eq__(self, other):
        return (
            isinstance(other, TruncMatrix)
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __repr__(self):
        return f"TruncMatrix({self.entries.tolist()})"

    def truncate(self, n: int) -> "TruncMatrix":
        return TruncMatrix(self.entries[:n, :n])


def empty() -> TruncMatrix:
    return TruncMatrix(np.zeros((0, 0), dtype=np.int64))


def identity(n: int) -> TruncMatrix:
    return TruncMatrix(np.eye(n, dtype=np.int64))


def block_sum(m: TruncMatrix, n: TruncMatrix) -> TruncMatrix:
    out = np.zeros((m.n_rows + n.n_rows, m.n_cols + n.n_cols), dtype=np.int64)
    out[: m.n_rows, : m.n_cols] = m.entries
    out[m.n_rows :, m.n_cols :] = n.entries
    return TruncMatrix(out)


def interleave_sum(a: TruncMatrix, b: TruncMatrix, size: int) -> TruncMatrix:
    """``size``-truncation of the interleaved sum: ``a`` on even, ``b`` on odd indices."""
    half = (size + 1) // 2
    for name, m in (("left", a), ("right", b)):
        if m.n_rows < half or m.n_cols < half:
            raise InsufficientTruncation(
                f"{name} operand is {m.n_rows}x{m.n_cols}; need {half}x{half} for size {size}"
            )
    out = np.zeros((size, size), dtype=np.int64)
    out[0::2, 0::2] = a.entries[: (size + 1) // 2, : (size + 1) // 2]
    out[1::2, 1::2] = b.entries[: size // 2, : size // 2]
    return TruncMatrix(out)


def compose(m: TruncMatrix, n: TruncMatrix) -> TruncMatrix:
    """Cauchy product ``m`` after ``n``."""
    if m.n_cols != n.n_rows:
        raise ValueError(f"cannot compose {m.n_rows}x{m.n_cols} after {n.n_rows}x{n.n_cols}")
    return TruncMatrix(m.entries @ n.entries)


def random_01(rng: np.random.Generator, size: int) -> TruncMatrix:
    return TruncMatrix(rng.integers(0, 2, size=(size, size), dtype=np.int64))


def nestings(a, b, c, size: int) -> tuple:
    """``((a + b) + c, a + (b + c))`` for the interleaved sum, truncated to ``size``."""
    inner = (size + 1) // 2
    left = interleave_sum(interleave_sum(a, b, inner), c, size)
    right = interleave_sum(a, interleave_sum(b, c, inner), size)
    return left, right


def seeded_triple(seed, size: int) -> tuple:
    rng = np.random.default_rng(seed)
    return tuple(random_01(rng, size) for _ in range(3))


def non_strictness_witness(seed, size: int = 8) -> bool:
    """Whether the two nestings differ for the seeded random 0/1 triple."""
    if size < 8:
        raise ValueError("size must be at least 8")
    left, right = nestings(*seeded_triple(seed, size), size)
    return left != right


def relating_permutation(size: int) -> dict:
    """Index map sending ``a + (b + c)`` positions to ``(a + b) + c`` positions.

    Tags every diagonal entry of the three summands with a distinct label and
    reads off where each label lands in the two nestings.
    """
    labels = [np.diag(np.arange(size, dtype=np.int64) + base) for base in (1000, 2000, 3000)]
    left, right = nestings(*(TruncMatrix(x) for x in labels), size)
    where_left = {int(left.entries[i, i]): i for i in range(size) if left.entries[i, i]}
    return {
        i: where_left[int(right.entries[i, i])]
        for i in range(size)
        if int(right.entries[i, i]) in where_left
    }

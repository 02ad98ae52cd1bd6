"""Sierpinski-type planar fractals carved out by an admissibility matrix.

A point (x, y) of the unit square survives when the paired N-adic digits
satisfy A[x_m, y_m] = 1 at every position: each subdivision round keeps
D = sum_i d_i of the N^2 subsquares (d_i = row sums).  The module reports the
dimension exponent log D / (2 log N) together with the similarity dimension
log D / log N (they disagree; both are printed and the discrepancy is the
caller's to interpret), enumerates and renders depth-k cells, and exposes the
pair-digit shift: its D x D induced matrix over the letter pairs, and the
embedding w -> (w, shift w) of the line Cantor set into the planar one.
Because every pair letter can follow every other in the plane, the natural
operator system on the fractal is the full D-shift, delivered here as the
all-ones D x D matrix ready for the spectral/operator modules.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import AdmissibilityMatrix, validate_matrix
from .errors import CapExceeded, WordTooShort

DEFAULT_CAP = 200000


@dataclass(frozen=True)
class SierpinskiSpec:
    """Derived data of the planar fractal of a matrix.

    letter_map[t] is the t-th allowed digit pair (i, j), row-major, so pair
    letters are 0..D-1.  pair_dimension is the exponent of the pair-digit
    expansion, log D / log N^2; similarity_dimension = log D / log N treats
    each subdivision as a side-length contraction by 1/N and is twice the
    former.
    """

    matrix: AdmissibilityMatrix
    D: int
    pair_dimension: float
    similarity_dimension: float
    letter_map: tuple

    @cached_property
    def pair_index(self):
        return {pair: t for t, pair in enumerate(self.letter_map)}


@dataclass(frozen=True)
class SierpinskiCell:
    """A depth-k subsquare, named by its x- and y-digit words (equal length)."""

    xword: tuple
    yword: tuple


def sierpinski_spec(matrix):
    n = matrix.n
    pairs = tuple((i, j) for i in range(n) for j in range(n)
                  if matrix.rows[i][j])
    d = len(pairs)
    return SierpinskiSpec(
        matrix=matrix,
        D=d,
        pair_dimension=math.log(d) / (2 * math.log(n)),
        similarity_dimension=math.log(d) / math.log(n),
        letter_map=pairs,
    )


def cells(spec, depth, cap=DEFAULT_CAP):
    """All depth-k cells, ordered lexicographically by pair-letter indices.

    Across positions the pair letters are unconstrained (the planar
    subdivision has no memory), so there are exactly D^depth cells.
    """
    if depth < 1:
        raise WordTooShort("depth must be >= 1")
    total = spec.D ** depth
    if cap is not None and total > cap:
        raise CapExceeded("D^%d = %d cells, over the cap of %d"
                          % (depth, total, cap))
    out = []
    for combo in itertools.product(spec.letter_map, repeat=depth):
        out.append(SierpinskiCell(
            xword=tuple(p[0] for p in combo),
            yword=tuple(p[1] for p in combo)))
    return out


def cell_is_valid(spec, cell):
    """The membership test: A[x_m, y_m] = 1 at every position."""
    return (len(cell.xword) == len(cell.yword)
            and all(spec.matrix.rows[i][j]
                    for i, j in zip(cell.xword, cell.yword)))


def induced_matrix(spec):
    """The D x D matrix of the pair-digit shift: (i,j) -> (l,k) iff j = l and A[j,k] = 1.

    Row sums equal d_j (the row sum of the second letter); the diagonal is
    generally not all ones, so the result is non-strict.
    """
    rows = []
    for (_, j) in spec.letter_map:
        rows.append([1 if (j == l and spec.matrix.rows[j][k2]) else 0
                     for (l, k2) in spec.letter_map])
    return validate_matrix(rows, strict=False)


def embed_xi(word):
    """The diagonal embedding of a line word: (w minus last, shift of w).

    For admissible w the image is always a valid cell, since consecutive
    digits of w are exactly the (x_m, y_m) pairs.
    """
    word = tuple(word)
    if len(word) < 2:
        raise WordTooShort("embedding needs a word of length >= 2")
    return SierpinskiCell(xword=word[:-1], yword=word[1:])


def render_pgm(spec, depth, resolution, cap=DEFAULT_CAP):
    """Rasterize the depth-k approximation on a resolution^2 grid.

    Returns a uint8 array, 0 (dark) on surviving cells and 255 elsewhere;
    row 0 is the top of the square (image convention).  Pixels are sampled
    at their centers, so when resolution is a multiple of N^depth every pixel
    lies strictly inside one cell and the dark-area fraction is exactly
    (D/N^2)^depth.  Work is resolution^2 * depth digit lookups, guarded by
    the cap.
    """
    if depth < 1 or resolution < 1:
        raise WordTooShort("depth and resolution must be >= 1")
    if cap is not None and resolution * resolution * depth > cap:
        raise CapExceeded(
            "res^2 * depth = %d, over the cap of %d"
            % (resolution * resolution * depth, cap))
    n = spec.matrix.n
    a = spec.matrix.array.astype(bool)
    xs = (np.arange(resolution) + 0.5) / resolution          # columns
    ys = 1.0 - (np.arange(resolution) + 0.5) / resolution    # rows, top first
    alive = np.ones((resolution, resolution), dtype=bool)
    scale = 1
    for _ in range(depth):
        scale *= n
        dx = (np.floor(xs * scale).astype(np.int64)) % n
        dy = (np.floor(ys * scale).astype(np.int64)) % n
        alive &= a[dx[None, :], dy[:, None]]
    img = np.where(alive, 0, 255).astype(np.uint8)
    return img


def sierpinski_cuntz_rep(spec):
    """The all-ones D x D matrix: the full shift on pair letters.

    Every subdivision map of the planar fractal is everywhere defined, so the
    operator calculus on it is the D-letter full-shift one; feed this matrix
    to the spectral/operator modules (radius D, uniform weights 1/D).
    """
    d = spec.D
    return validate_matrix([[1] * d for _ in range(d)], strict=True)

"""Symbolic dynamics groundwork: admissibility matrices, words, cylinder functions.

An N x N matrix A of zeros and ones cuts a Cantor set out of [0,1]:

    Lambda_A = { x = sum_m a_m N^-m : A[a_m, a_{m+1}] = 1 for all m },

the set of points whose N-adic digit strings walk along the 1-entries of A.
A *word* is a finite admissible digit string, written here as a plain tuple of
ints; the level-k words index the cylinder sets Lambda(a) = {x : x starts with a}.
Everything downstream (measures, operators, wavelets) is expressed in the basis
of cylinder indicators, so a function that is constant on level-k cylinders is
stored as one complex coefficient per level-k word, in lexicographic word order.

All objects here are immutable; per-matrix combinatorial tables (word lists,
index maps) are memoised on the matrix value.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    CapExceeded,
    DeadRow,
    EmptyWord,
    InadmissibleWord,
    LevelTooLow,
    MatrixMismatch,
    MissingDiagonal,
    NonBinaryEntry,
    NotInDomain,
    Reducible,
)


@dataclass(frozen=True)
class AdmissibilityMatrix:
    """A validated 0-1 matrix. `strict` means unit diagonal + irreducible.

    Strict matrices define the geometric Cantor sets; non-strict ones arise
    internally (edge matrices of graphs, induced matrices of fractal pair
    shifts) where the diagonal condition has no reason to hold.
    """

    rows: tuple
    strict: bool = True

    @property
    def n(self):
        return len(self.rows)

    @cached_property
    def array(self):
        a = np.array(self.rows, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def successors(self):
        """successors[i] = sorted digits j with A[i, j] = 1."""
        return tuple(tuple(j for j, v in enumerate(r) if v) for r in self.rows)

    @cached_property
    def predecessors(self):
        """predecessors[j] = sorted digits i with A[i, j] = 1 (column support)."""
        n = self.n
        return tuple(tuple(i for i in range(n) if self.rows[i][j]) for j in range(n))

    @cached_property
    def row_sums(self):
        return tuple(sum(r) for r in self.rows)

    @cached_property
    def col_sums(self):
        return tuple(len(p) for p in self.predecessors)

    def __repr__(self):
        return "AdmissibilityMatrix(n=%d, strict=%s)" % (self.n, self.strict)


def _is_irreducible(rows):
    """Every state reaches every state along 1-entries."""
    n = len(rows)
    a = np.array(rows, dtype=bool)
    reach = np.eye(n, dtype=bool)
    for _ in range(n):
        new = reach | (reach @ a)
        if new.all():
            return True
        if (new == reach).all():
            break
        reach = new
    return bool(reach.all())


def validate_matrix(rows, strict=True):
    """Check a raw 0-1 grid and wrap it as an AdmissibilityMatrix.

    Strict matrices must be square with N >= 2, have every diagonal entry
    equal to 1, and be irreducible.  Non-strict matrices only need to be
    square 0-1 with no zero row (a zero row would strand a digit with no
    continuation, making infinite digit strings through it impossible).
    """
    grid = [list(r) for r in rows]
    n = len(grid)
    if n == 0 or any(len(r) != n for r in grid):
        raise NonBinaryEntry("matrix must be square and nonempty")
    for i, r in enumerate(grid):
        for j, v in enumerate(r):
            if v not in (0, 1):
                raise NonBinaryEntry(
                    "entry (%d, %d) is %r, expected 0 or 1" % (i, j, v))
    for i, r in enumerate(grid):
        if not any(r):
            raise DeadRow("row %d is identically zero" % i)
    if strict:
        if n < 2:
            raise NonBinaryEntry("a strict admissibility matrix needs N >= 2")
        for i in range(n):
            if grid[i][i] != 1:
                raise MissingDiagonal("diagonal entry (%d, %d) is 0" % (i, i))
        if not _is_irreducible(grid):
            raise Reducible("matrix is reducible")
    frozen = tuple(tuple(int(v) for v in r) for r in grid)
    return AdmissibilityMatrix(rows=frozen, strict=strict)


# --- words --------------------------------------------------------------------


def is_admissible(matrix, word):
    """True when every digit is in range and every transition is allowed."""
    n = matrix.n
    for d in word:
        if not 0 <= d < n:
            return False
    return all(matrix.rows[word[m]][word[m + 1]] for m in range(len(word) - 1))


def check_word(matrix, word):
    word = tuple(int(d) for d in word)
    if not is_admissible(matrix, word):
        raise InadmissibleWord("word %r is not admissible" % (word,))
    return word


def shift(word):
    """Drop the leading digit:  sigma(a_1 a_2 ... a_k) = a_2 ... a_k."""
    if len(word) == 0:
        raise EmptyWord("cannot shift the empty word")
    return tuple(word[1:])


def prepend(i, word, matrix):
    """Attach digit i in front of word; requires A[i, word_1] = 1."""
    i = int(i)
    if not 0 <= i < matrix.n:
        raise NotInDomain("digit %d out of range for N = %d" % (i, matrix.n))
    if word and not matrix.rows[i][word[0]]:
        raise NotInDomain(
            "prepend %d to word starting with %d: A[%d, %d] = 0"
            % (i, word[0], i, word[0]))
    return (i,) + tuple(word)


@dataclass(frozen=True)
class Point:
    """A point of the Cantor set with the digit word that produced it."""

    word: tuple
    value: float


def nadic_value(word, n):
    """The point x(a) = sum_m a_m n^-m addressed by a digit word."""
    v = 0.0
    for d in reversed(word):
        v = (v + d) / n
    return Point(word=tuple(word), value=v)


def word_count(matrix, k):
    """|W_k| as an exact integer (number of admissible level-k words).

    Computed with Python ints (no overflow), so it is safe to consult before
    enumerating: counts[i] = number of length-L words starting at digit i.
    """
    if k == 0:
        return 1
    counts = [1] * matrix.n
    for _ in range(k - 1):
        counts = [sum(counts[j] for j in matrix.successors[i])
                  for i in range(matrix.n)]
    return sum(counts)


@lru_cache(maxsize=None)
def _enumerate_words_cached(matrix, k):
    if k == 0:
        return ((),)
    words = [(i,) for i in range(matrix.n)]
    for _ in range(k - 1):
        words = [w + (j,) for w in words for j in matrix.successors[w[-1]]]
    return tuple(words)


def enumerate_words(matrix, k, cap=None):
    """All admissible level-k words in lexicographic order, as a tuple.

    With a cap, the exact count is checked first and CapExceeded raised
    before any enumeration work happens.
    """
    if cap is not None and word_count(matrix, k) > cap:
        raise CapExceeded(
            "level %d has %d words, over the cap of %d"
            % (k, word_count(matrix, k), cap))
    return _enumerate_words_cached(matrix, k)


@lru_cache(maxsize=None)
def word_index(matrix, k):
    """Map word -> position in the lexicographic enumeration of W_k."""
    return {w: m for m, w in enumerate(enumerate_words(matrix, k))}


def _frozen(a):
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def first_digit_array(matrix, k):
    return _frozen(np.array([w[0] for w in enumerate_words(matrix, k)], dtype=np.intp))


@lru_cache(maxsize=None)
def last_digit_array(matrix, k):
    return _frozen(np.array([w[-1] for w in enumerate_words(matrix, k)], dtype=np.intp))


@lru_cache(maxsize=None)
def prefix_index_array(matrix, k, k0):
    """For each level-k word, the position of its level-k0 prefix in W_k0."""
    idx = word_index(matrix, k0)
    return _frozen(np.array(
        [idx[w[:k0]] for w in enumerate_words(matrix, k)], dtype=np.intp))


@lru_cache(maxsize=None)
def shift_index_array(matrix, k):
    """For each level-k word w (k >= 1), the position of shift(w) in W_{k-1}."""
    idx = word_index(matrix, k - 1)
    return _frozen(np.array(
        [idx[w[1:]] for w in enumerate_words(matrix, k)], dtype=np.intp))


@lru_cache(maxsize=None)
def prepend_index_array(matrix, k, i):
    """Positions of i.w in W_{k+1} for each w in W_k; -1 where A[i, w_1] = 0."""
    idx = word_index(matrix, k + 1)
    out = np.empty(len(enumerate_words(matrix, k)), dtype=np.intp)
    for m, w in enumerate(enumerate_words(matrix, k)):
        if k == 0 or matrix.rows[i][w[0]]:
            out[m] = idx[(i,) + w]
        else:
            out[m] = -1
    return _frozen(out)


@lru_cache(maxsize=None)
def value_array(matrix, k):
    """x(a) for every level-k word a, in lexicographic order."""
    n = matrix.n
    return _frozen(np.array(
        [nadic_value(w, n).value for w in enumerate_words(matrix, k)], dtype=float))


# --- cylinder functions ---------------------------------------------------------


class CylinderFunction:
    """A complex function on Lambda_A that is constant on level-k cylinders.

    Stored as one coefficient per level-k word, lexicographic order.  Instances
    are immutable; arithmetic returns new objects, refining to a common level
    when needed.
    """

    __slots__ = ("matrix", "level", "coeffs")

    def __init__(self, matrix, level, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        expected = len(enumerate_words(matrix, level))
        if coeffs.shape != (expected,):
            raise LevelTooLow(
                "level %d needs %d coefficients, got %r"
                % (level, expected, coeffs.shape))
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "level", level)
        c = coeffs.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, *a):
        raise AttributeError("CylinderFunction is immutable")

    @classmethod
    def constant(cls, matrix, value):
        return cls(matrix, 0, np.array([value], dtype=np.complex128))

    @classmethod
    def indicator(cls, matrix, word):
        """chi of the cylinder Lambda(word), at level len(word)."""
        word = check_word(matrix, word)
        k = len(word)
        c = np.zeros(len(enumerate_words(matrix, k)), dtype=np.complex128)
        c[word_index(matrix, k)[word]] = 1.0
        return cls(matrix, k, c)

    def coeff(self, word):
        """The value taken on the cylinder of `word` (word must be level-level)."""
        return complex(self.coeffs[word_index(self.matrix, self.level)[tuple(word)]])

    def __repr__(self):
        return "CylinderFunction(level=%d, n_coeffs=%d)" % (self.level, len(self.coeffs))

    # -- arithmetic (refining to a common level) --

    def _common(self, other):
        if self.matrix != other.matrix:
            raise MatrixMismatch("functions live over different matrices")
        m = max(self.level, other.level)
        return refine(self, m), refine(other, m), m

    def __add__(self, other):
        f, g, m = self._common(other)
        return CylinderFunction(self.matrix, m, f.coeffs + g.coeffs)

    def __sub__(self, other):
        f, g, m = self._common(other)
        return CylinderFunction(self.matrix, m, f.coeffs - g.coeffs)

    def __mul__(self, scalar):
        return CylinderFunction(self.matrix, self.level, self.coeffs * scalar)

    __rmul__ = __mul__


def refine(f, k):
    """Rewrite f at a finer level k >= f.level (coefficients copy to children)."""
    if k < f.level:
        raise LevelTooLow("cannot refine level %d down to %d" % (f.level, k))
    if k == f.level:
        return f
    return CylinderFunction(
        f.matrix, k, f.coeffs[prefix_index_array(f.matrix, k, f.level)])


def multiply(f, g):
    """Pointwise product of two cylinder functions."""
    f2, g2, m = f._common(g)
    return CylinderFunction(f.matrix, m, f2.coeffs * g2.coeffs)


def compose_shift(f):
    """f o sigma, one level finer:  (f o sigma)(x) = f(shift of x)."""
    k = f.level + 1
    return CylinderFunction(
        f.matrix, k, f.coeffs[shift_index_array(f.matrix, k)])

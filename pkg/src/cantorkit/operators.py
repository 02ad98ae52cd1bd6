"""Cuntz-Krieger generators on L2(Lambda_A, mu) and what they buy us.

The N partial isometries

    (S_i f)(x) = sqrt(r) * chi_{R_i}(x) * f(sigma x),
    (S_i* f)(x) = (1/sqrt(r)) * chi_{D_i}(x) * f(sigma_i x),

(r = r(A) = N^delta; sigma the digit shift; sigma_i(x) = (x+i)/N its inverse
branch into R_i; D_i the union of cylinders R_j with A[i,j] = 1) satisfy the
Cuntz-Krieger relations

    sum_i S_i S_i* = 1,        S_i* S_i = sum_j A[i,j] S_j S_j*,

exactly in cylinder coordinates: S_i shifts a level-k coefficient vector to
level k+1 and S_i* back down.  Words of generators give the cylinder
projections P(a) = S_a S_a*, a projection-valued measure on the cylinder
algebra; diagonal matrix elements of that measure produce the spectral measure
mu_f and its Fourier-type transform, and the sum N^{-delta/2} sum_i S_i* is the
transfer (Perron-Frobenius) operator of the shift.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import core, spectral
from .core import CylinderFunction
from .errors import IndexOutOfRange, LevelOutOfRange, MatrixMismatch

# ---------------------------------------------------------------------------
# batched kernels: act on arrays whose axis 0 runs over level-k words, so a
# whole operator matrix can be pushed through in one call.


def _s_arr(i, arr, k, pd):
    """S_i on coefficients at level k -> level k+1."""
    mat = pd.matrix
    fd = core.first_digit_array(mat, k + 1)
    si = core.shift_index_array(mat, k + 1)
    out = np.zeros((len(fd),) + arr.shape[1:], dtype=np.complex128)
    mask = fd == i
    out[mask] = math.sqrt(pd.radius) * arr[si[mask]]
    return out


def _sstar_arr(i, arr, k, pd):
    """S_i* on coefficients at level k >= 1 -> level k-1."""
    mat = pd.matrix
    pia = core.prepend_index_array(mat, k - 1, i)
    out = np.zeros((len(pia),) + arr.shape[1:], dtype=np.complex128)
    valid = pia >= 0
    out[valid] = arr[pia[valid]] / math.sqrt(pd.radius)
    return out


def _check(f, pd):
    if f.matrix != pd.matrix:
        raise MatrixMismatch("function and PerronData use different matrices")


def _check_digit(i, pd):
    if not 0 <= i < pd.matrix.n:
        raise IndexOutOfRange("digit %r out of range for N = %d" % (i, pd.matrix.n))


# ---------------------------------------------------------------------------
# public operators


def apply_S(i, f, pd):
    """S_i f at one level finer: sqrt(r) * f(shifted word) on words starting with i."""
    _check(f, pd)
    _check_digit(i, pd)
    return CylinderFunction(
        f.matrix, f.level + 1, _s_arr(i, f.coeffs, f.level, pd))


def apply_S_star(i, f, pd):
    """S_i* f: value at word b is f(i.b)/sqrt(r) when A[i, b_1] = 1, else 0.

    Level-0/1 inputs are refined to level 2 first so the result always lives
    at level >= 1, where the domain indicator chi_{D_i} is representable.
    """
    _check(f, pd)
    _check_digit(i, pd)
    g = core.refine(f, 2) if f.level <= 1 else f
    return CylinderFunction(
        f.matrix, g.level - 1, _sstar_arr(i, g.coeffs, g.level, pd))


def apply_S_word(a, f, pd, adjoint=False):
    """S_a = S_{a_1} ... S_{a_k} applied to f, or S_a* = S_{a_k}* ... S_{a_1}*.

    In both cases the factor nearest f acts first: S_{a_k} for the forward
    word, S_{a_1}* for the adjoint.
    """
    _check(f, pd)
    a = core.check_word(pd.matrix, a)
    out = f
    if adjoint:
        for d in a:
            out = apply_S_star(d, out, pd)
    else:
        for d in reversed(a):
            out = apply_S(d, out, pd)
    return out


def ck_relations_residual(pd, K):
    """Worst L2 defect of the Cuntz-Krieger relations over the level-K basis.

    Pushes the whole identity matrix through the generators at once and
    measures both relations against every basis vector chi_{Lambda(w)},
    w in W_K, in the L2(mu) norm.
    """
    if K < 2:
        raise LevelOutOfRange("relation check needs K >= 2")
    mat = pd.matrix
    nwords = len(core.enumerate_words(mat, K))
    eye = np.eye(nwords, dtype=np.complex128)
    mu = spectral.measure_array(pd, K)

    def worst(diff):
        # L2(mu) norm per column (each column = image of one basis vector)
        norms_sq = (np.abs(diff) ** 2 * mu[:, None]).sum(axis=0)
        return math.sqrt(float(norms_sq.max()))

    range_proj = []  # S_i S_i* applied to the basis
    for i in range(mat.n):
        down = _sstar_arr(i, eye, K, pd)
        range_proj.append(_s_arr(i, down, K - 1, pd))
    res = worst(sum(range_proj) - eye)
    for i in range(mat.n):
        up = _s_arr(i, eye, K, pd)
        lhs = _sstar_arr(i, up, K + 1, pd)
        rhs = sum(range_proj[j] for j in mat.successors[i])
        res = max(res, worst(lhs - rhs))
    return res


def pf_operator(f, pd):
    """Transfer operator of the shift: (1/sqrt(r)) * sum_i S_i* f.

    Averages f over the admissible preimages of each point with weight 1/r
    per branch; fixes constants on the full shift and, in general, the
    left-eigenvector function of pf_fixed_point.
    """
    _check(f, pd)
    g = core.refine(f, 2) if f.level <= 1 else f
    acc = None
    for i in range(pd.matrix.n):
        term = _sstar_arr(i, g.coeffs, g.level, pd)
        acc = term if acc is None else acc + term
    return CylinderFunction(
        f.matrix, g.level - 1, acc / math.sqrt(pd.radius))


def pf_fixed_point(pd):
    """The level-1 function sum_i omega_i chi_{R_i}, fixed by pf_operator."""
    return CylinderFunction(pd.matrix, 1, pd.omega.astype(np.complex128))


@dataclass(frozen=True)
class StateValue:
    """The canonical state evaluated on a monomial S_a S_b*."""

    a: tuple
    b: tuple
    value: complex


def kms_state(a, b, pd):
    """phi(S_a S_b*): zero unless a = b, in which case the cylinder mass of a."""
    a = core.check_word(pd.matrix, a)
    b = core.check_word(pd.matrix, b)
    if a != b:
        return StateValue(a=a, b=b, value=0j)
    return StateValue(a=a, b=b, value=complex(spectral.cylinder_measure(pd, a)))


def kms_letter_ratio(i, pd):
    """phi(S_i* S_i) / phi(S_i S_i*), which the scaling symmetry pins at r = N^delta.

    The numerator expands through S_i* S_i = sum_j A[i,j] S_j S_j* into
    sum_j A[i,j] phi(S_j S_j*) = sum_j A[i,j] p_j = (A p)_i.
    """
    _check_digit(i, pd)
    num = sum(kms_state((j,), (j,), pd).value.real
              for j in pd.matrix.successors[i])
    den = kms_state((i,), (i,), pd).value.real
    return num / den


@dataclass(frozen=True)
class BorelSet:
    """A finite disjoint union of level-`level` cylinders, listed by word."""

    level: int
    words: tuple


def borel_set(matrix, level, words):
    """Validate, deduplicate, and sort a cylinder union into a BorelSet."""
    seen = set()
    out = []
    for w in words:
        w = core.check_word(matrix, w)
        if len(w) != level:
            raise LevelOutOfRange(
                "word %r has length %d, set has level %d" % (w, len(w), level))
        if w not in seen:
            seen.add(w)
            out.append(w)
    return BorelSet(level=level, words=tuple(sorted(out)))


def measure_mu_f(f, borel, pd):
    """The spectral measure mu_f(B) = <f, E(B) f> on a cylinder union B.

    E(Lambda(a)) is the range projection S_a S_a*, i.e. multiplication by
    chi_{Lambda(a)}, so mu_f(B) is just the |f|^2-mass of B under mu.
    Intended for unit vectors (then mu_f is a probability measure); warns
    when ||f|| strays from 1 by more than 1e-9.
    """
    _check(f, pd)
    nrm = spectral.norm(f, pd)
    if abs(nrm - 1.0) > 1e-9:
        warnings.warn("measure_mu_f: ||f|| = %.12g, not a unit vector" % nrm)
    m = max(f.level, borel.level)
    fr = core.refine(f, m)
    weights = np.abs(fr.coeffs) ** 2 * spectral.measure_array(pd, m)
    prefix = core.prefix_index_array(pd.matrix, m, borel.level)
    widx = core.word_index(pd.matrix, borel.level)
    wanted = np.zeros(len(core.enumerate_words(pd.matrix, borel.level)), dtype=bool)
    for w in borel.words:
        wanted[widx[w]] = True
    return float(weights[wanted[prefix]].sum())


def fourier_approx(f, t, k, pd):
    """Level-k Fourier transform of mu_f:  sum_a e^{i t x(a)} ||S_a* f||^2.

    ||S_a* f||^2 = <f, S_a S_a* f> is the mu_f-mass of the cylinder of a, so
    the sum is computed by binning |f|^2 mu over level-k prefixes — identical
    to composing the operators, without the exponential blow-up.
    """
    _check(f, pd)
    m = max(k, f.level)
    fr = core.refine(f, m)
    weights = (np.abs(fr.coeffs) ** 2 * spectral.measure_array(pd, m)).real
    masses = np.bincount(
        core.prefix_index_array(pd.matrix, m, k), weights=weights,
        minlength=len(core.enumerate_words(pd.matrix, k)))
    phases = np.exp(1j * t * core.value_array(pd.matrix, k))
    return complex(np.sum(phases * masses))


def fourier_tail_bound(t, k, n):
    """Bound on |fourier_approx(f,t,k) - fourier_approx(f,t,k+m)| for unit f.

    Each level of refinement moves every sample point x(a) by at most n^-k,
    so the level-k transform sits within |t| n^-k of the limit and two
    truncations differ by at most twice that.
    """
    return 2.0 * abs(t) * float(n) ** (-k)

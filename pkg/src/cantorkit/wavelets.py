"""Haar-type wavelet bases on Lambda_A, built by weighted Gram-Schmidt.

For each letter k the row support {j : A[k,j] = 1} (size d_k) carries the
weighted inner product <v, w>_k = sum_j A[k,j] conj(v_j) w_j p_j.  The
orthogonal complement of the constant vector u = (1,...,1) in that product
supplies d_k - 1 coefficient vectors c^{l,k}; each becomes a *mother wavelet*

    f^{l,k} = sum_j A[k,j] c^{l,k}_j chi_{Lambda(k j)},

a mean-zero level-2 function supported in R_k, renormalized here to unit
L2(mu) norm.  Moving mothers around with the generators, psi = S_a f^{l,r}
(needs A[a_last, r] = 1), fills in finer and finer detail: the scaling family
mu(R_i)^{-1/2} chi_{R_i}, the mothers, and the translates with |a| <= K-2
together form an orthonormal basis of the level-K cylinder functions, with
dimensions telescoping to |W_K| exactly.  On the full 2x2 shift this is the
classical Haar basis of [0,1].
"""

import math
from dataclasses import dataclass

import numpy as np

from . import core, operators, spectral
from .core import CylinderFunction
from .errors import IndexOutOfRange, MatrixMismatch, NonPositiveWeight, NotComposable


def weighted_complement_basis(weights, support):
    """Orthonormal basis of the complement of u=(1,..,1) on a digit support.

    Modified Gram-Schmidt over [u, e_j1, e_j2, ...] with the support digits
    ascending, in the inner product sum_{j in support} conj(v_j) w_j weights_j.
    The first d-1 standard vectors already complete the span (u has full
    support), so exactly d-1 vectors come back, None of them thresholded —
    the construction is deterministic.  Vectors have full length
    max(support)+1 <= len(weights), zero off the support.
    """
    weights = np.asarray(weights, dtype=float)
    sup = sorted(set(int(j) for j in support))
    if not sup:
        raise NonPositiveWeight("empty support")
    for j in sup:
        if not (0 <= j < len(weights)) or weights[j] <= 0:
            raise NonPositiveWeight(
                "weight at digit %d must be positive on the support" % j)
    n = len(weights)
    mask = np.zeros(n, dtype=bool)
    mask[sup] = True
    w_on = np.where(mask, weights, 0.0)

    def wip(v, x):
        return float(np.sum(v * x * w_on))

    u = mask.astype(float)
    u = u / math.sqrt(wip(u, u))
    basis = [u]
    out = []
    for j in sup[:-1]:
        v = np.zeros(n)
        v[j] = 1.0
        for b in basis:
            v = v - wip(b, v) * b
        nrm = math.sqrt(wip(v, v))
        assert nrm > 0.0, "positive weights keep e_j independent of the span"
        v = v / nrm
        v.setflags(write=False)
        basis.append(v)
        out.append(v)
    return out


@dataclass(frozen=True)
class MotherWaveletSet:
    """Everything needed to span the detail spaces: per-letter coefficient
    vectors c^{l,k} and unit-norm level-2 mother functions f^{l,k}.

    `c[k]` is the tuple of vectors for letter k (length d_k - 1, l = 1-based
    when indexing `funcs[(k, l)]`); `d[k]` is the row sum.
    """

    pd: spectral.PerronData
    d: tuple
    c: tuple
    funcs: dict

    @property
    def matrix(self):
        return self.pd.matrix

    def mother_keys(self):
        """(k, l) pairs in canonical order: letters ascending, l ascending."""
        return [(k, l) for k in range(self.matrix.n)
                for l in range(1, self.d[k])]


def build_mother_wavelets(pd):
    """Run the weighted complement construction for every letter of A."""
    mat = pd.matrix
    c_all = []
    funcs = {}
    for k in range(mat.n):
        vecs = weighted_complement_basis(pd.p, mat.successors[k])
        c_all.append(tuple(vecs))
        idx2 = core.word_index(mat, 2)
        for l, v in enumerate(vecs, start=1):
            coeffs = np.zeros(len(core.enumerate_words(mat, 2)),
                              dtype=np.complex128)
            for j in mat.successors[k]:
                coeffs[idx2[(k, j)]] = v[j]
            f = CylinderFunction(mat, 2, coeffs)
            f = f * (1.0 / spectral.norm(f, pd))
            funcs[(k, l)] = f
    return MotherWaveletSet(pd=pd, d=mat.row_sums, c=tuple(c_all), funcs=funcs)


def scaling_function(pd, i):
    """The normalized cylinder bump mu(R_i)^{-1/2} chi_{R_i}."""
    f = CylinderFunction.indicator(pd.matrix, (i,))
    return f * (1.0 / math.sqrt(pd.p[i]))


def wavelet(a, l, r, mw):
    """The translate psi^{l,r}_a = S_a f^{l,r}; the empty word returns the mother.

    Unit norm at level |a| + 2.  Requires A[a_last, r] = 1: S_{a_last} kills
    anything supported outside D_{a_last}, so an incomposable pair would be
    the zero function, not a basis vector.
    """
    a = core.check_word(mw.matrix, a)
    if (r, l) not in mw.funcs:
        raise IndexOutOfRange("no mother wavelet with letter %r, index %r" % (r, l))
    if a and not mw.matrix.rows[a[-1]][r]:
        raise NotComposable(
            "wavelet letter %d does not follow word ending in %d" % (r, a[-1]))
    return operators.apply_S_word(a, mw.funcs[(r, l)], mw.pd)


def detail_keys(mw, K):
    """(a, l, r) triples for levels |a| = 1 .. K-2, canonical order.

    Order: |a| ascending, then a lexicographic, then r ascending over the
    digits following a_last, then l ascending.
    """
    mat = mw.matrix
    out = []
    for j in range(1, K - 1):
        for a in core.enumerate_words(mat, j):
            for r in mat.successors[a[-1]]:
                for l in range(1, mw.d[r]):
                    out.append((a, l, r))
    return out


def basis_labels(mw, K):
    """Canonical labels of the orthonormal basis of level-K functions.

    ("S", i) scaling, ("M", k, l) mothers, ("D", a, l, r) details.
    """
    labels = [("S", i) for i in range(mw.matrix.n)]
    if K >= 2:
        labels += [("M", k, l) for (k, l) in mw.mother_keys()]
    labels += [("D", a, l, r) for (a, l, r) in detail_keys(mw, K)]
    return labels


def basis_function(mw, label):
    kind = label[0]
    if kind == "S":
        return scaling_function(mw.pd, label[1])
    if kind == "M":
        k, l = label[1], label[2]
        if (k, l) not in mw.funcs:
            raise IndexOutOfRange("no mother wavelet %r" % (label,))
        return mw.funcs[(k, l)]
    if kind == "D":
        a, l, r = label[1], label[2], label[3]
        return wavelet(a, l, r, mw)
    raise IndexOutOfRange("unknown basis label %r" % (label,))


@dataclass(frozen=True)
class WaveletCoefficients:
    """Transform output: scaling layer, mother layer, detail layers.

    scaling[i] pairs with mu(R_i)^{-1/2} chi_{R_i}; mother[(k, l)] with
    f^{l,k}; detail[(a, l, r)] with S_a f^{l,r}.
    """

    scaling: np.ndarray
    mother: dict
    detail: dict

    def energy(self):
        """Sum of |coefficient|^2 over every layer (Parseval mass)."""
        e = float(np.sum(np.abs(self.scaling) ** 2))
        e += sum(abs(v) ** 2 for v in self.mother.values())
        e += sum(abs(v) ** 2 for v in self.detail.values())
        return e


def analyze(f, mw):
    """Expand f over the wavelet basis of its own level (at least 1).

    Coefficient = <basis function, f> in L2(mu), so synthesize recovers f.
    """
    if f.matrix != mw.matrix:
        raise MatrixMismatch("signal and wavelets use different matrices")
    K = max(f.level, 1)
    pd = mw.pd
    scaling = np.array(
        [spectral.inner_product(scaling_function(pd, i), f, pd)
         for i in range(mw.matrix.n)], dtype=np.complex128)
    scaling.setflags(write=False)
    mother = {}
    if K >= 2:
        for (k, l) in mw.mother_keys():
            mother[(k, l)] = spectral.inner_product(mw.funcs[(k, l)], f, pd)
    detail = {}
    for (a, l, r) in detail_keys(mw, K):
        detail[(a, l, r)] = spectral.inner_product(wavelet(a, l, r, mw), f, pd)
    return WaveletCoefficients(scaling=scaling, mother=mother, detail=detail)


def synthesize(coeffs, mw, K):
    """Rebuild the level-K function with the given wavelet coefficients.

    Every coefficient key must denote a basis element of the level-K system:
    detail words no longer than K-2, letters/indices in range.
    """
    mat = mw.matrix
    if len(coeffs.scaling) != mat.n:
        raise IndexOutOfRange(
            "scaling layer has %d entries, need %d" % (len(coeffs.scaling), mat.n))
    out = np.zeros(len(core.enumerate_words(mat, K)), dtype=np.complex128)

    def add(label, alpha):
        if alpha == 0:
            return
        g = core.refine(basis_function(mw, label), K)
        np.add(out, alpha * g.coeffs, out=out)

    for i in range(mat.n):
        add(("S", i), complex(coeffs.scaling[i]))
    valid_mother = set(mw.mother_keys()) if K >= 2 else set()
    for (k, l), alpha in coeffs.mother.items():
        if (k, l) not in valid_mother:
            raise IndexOutOfRange("mother key %r invalid at level %d" % ((k, l), K))
        add(("M", k, l), complex(alpha))
    valid_detail = set(detail_keys(mw, K))
    for (a, l, r), alpha in coeffs.detail.items():
        key = (tuple(a), l, r)
        if key not in valid_detail:
            raise IndexOutOfRange("detail key %r invalid at level %d" % (key, K))
        add(("D",) + key, complex(alpha))
    return CylinderFunction(mat, K, out)

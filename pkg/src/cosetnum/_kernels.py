"""Integer kernels for the hot loops: constraint sweeps and batched products.

Both run on int64 and are exact as long as values stay small, which holds
for the {-1, 0, 1}-style domains and the bounded test coefficients used
here. Each kernel has a numba and a pure-numpy implementation. Set
``COSETNUM_PURE_NUMPY=1`` to force the numpy path (numba is also skipped
when it cannot be imported).
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("COSETNUM_PURE_NUMPY", "").strip().lower()
_DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError("numba disabled by COSETNUM_PURE_NUMPY")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def pad_monomials(monomials, pad_to: int, one_index: int) -> np.ndarray:
    """Rectangular index array; short monomials are padded with ``one_index``."""
    out = np.full((len(monomials), max(pad_to, 1)), one_index, dtype=np.int64)
    for r, mono in enumerate(monomials):
        out[r, :len(mono)] = mono
    return out


# -- constraint sweep over domain**P ------------------------------------------

def _sweep_numpy(domain, n_params, lhs, rhs):
    d = len(domain)
    total = d ** n_params
    codes = np.arange(total, dtype=np.int64)
    vals = np.empty((total, n_params + 1), dtype=np.int64)
    # slot 0 is the most significant digit -> lexicographic order
    for p in range(n_params - 1, -1, -1):
        vals[:, p] = domain[codes % d]
        codes //= d
    vals[:, n_params] = 1
    ok = np.ones(total, dtype=np.bool_)
    for e in range(lhs.shape[0]):
        ok &= vals[:, lhs[e]].prod(axis=1) == vals[:, rhs[e]].prod(axis=1)
    return np.flatnonzero(ok)


@njit(cache=True)
def _sweep_numba(domain, n_params, lhs, rhs):
    d = domain.shape[0]
    total = d ** n_params
    hits = np.empty(total, dtype=np.int64)
    count = 0
    vals = np.empty(n_params + 1, dtype=np.int64)
    vals[n_params] = 1
    for code in range(total):
        c = code
        for p in range(n_params - 1, -1, -1):
            vals[p] = domain[c % d]
            c //= d
        good = True
        for e in range(lhs.shape[0]):
            a = 1
            for q in range(lhs.shape[1]):
                a *= vals[lhs[e, q]]
            b = 1
            for q in range(rhs.shape[1]):
                b *= vals[rhs[e, q]]
            if a != b:
                good = False
                break
        if good:
            hits[count] = code
            count += 1
    return hits[:count]


def decode(codes: np.ndarray, domain: np.ndarray, n_params: int) -> np.ndarray:
    d = len(domain)
    codes = np.asarray(codes, dtype=np.int64).copy()
    out = np.empty((len(codes), n_params), dtype=np.int64)
    for p in range(n_params - 1, -1, -1):
        out[:, p] = domain[codes % d]
        codes //= d
    return out


def sweep(domain, n_params: int, lhs: np.ndarray, rhs: np.ndarray, use_numba: bool | None = None) -> np.ndarray:
    """Rows of ``domain**n_params`` (lexicographic) satisfying every equation.

    ``lhs``/``rhs`` index into the value vector with ``n_params`` meaning 1.
    """
    domain = np.asarray(domain, dtype=np.int64)
    use_numba = HAS_NUMBA if use_numba is None else (use_numba and HAS_NUMBA)
    fn = _sweep_numba if use_numba else _sweep_numpy
    codes = fn(domain, np.int64(n_params), lhs, rhs)
    return decode(codes, domain, n_params)


# -- batched products through structure constants -----------------------------

def _mul_numpy(x, y, target, coef):
    n = x.shape[1]
    out = np.zeros_like(x)
    for i in range(n):
        for j in range(n):
            c = coef[i, j]
            if c != 0:
                out[:, target[i, j]] += c * x[:, i] * y[:, j]
    return out


@njit(cache=True)
def _mul_numba(x, y, target, coef):
    m, n = x.shape
    out = np.zeros_like(x)
    for r in range(m):
        for i in range(n):
            xi = x[r, i]
            if xi == 0:
                continue
            for j in range(n):
                c = coef[i, j]
                if c != 0:
                    out[r, target[i, j]] += c * xi * y[r, j]
    return out


def batch_mul(x: np.ndarray, y: np.ndarray, target: np.ndarray, coef: np.ndarray,
              use_numba: bool | None = None) -> np.ndarray:
    """Row-wise products ``x[r] * y[r]`` for integer coefficient rows."""
    use_numba = HAS_NUMBA if use_numba is None else (use_numba and HAS_NUMBA)
    fn = _mul_numba if use_numba else _mul_numpy
    return fn(np.ascontiguousarray(x, dtype=np.int64), np.ascontiguousarray(y, dtype=np.int64),
              np.ascontiguousarray(target, dtype=np.int64), np.ascontiguousarray(coef, dtype=np.int64))

"""Exact row reduction over a prime field (numpy int64 matrices).

Matrices hold canonical residues in [0, p).  The reduced row echelon
form is canonical, so row spaces compare by array equality.  Matrices
returned here are treated as immutable by the callers.
"""

from __future__ import annotations

import numpy as np


def rref(matrix: np.ndarray, p: int) -> tuple:
    """Reduced row echelon form over F_p.

    Returns (reduced matrix without zero rows, pivot column indices).
    """
    m = np.array(matrix, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        lead = r + int(nz[0])
        if lead != r:
            m[[r, lead]] = m[[lead, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r].copy(), tuple(pivots)


def reduce_vector(vec: np.ndarray, basis: np.ndarray, pivots: tuple, p: int) -> np.ndarray:
    """Residue of vec modulo the row space of an RREF basis."""
    v = np.array(vec, dtype=np.int64) % p
    for row, c in zip(basis, pivots):
        coeff = int(v[c])
        if coeff:
            v = (v - coeff * row) % p
    return v


def in_row_space(vec: np.ndarray, basis: np.ndarray, pivots: tuple, p: int) -> bool:
    return not reduce_vector(vec, basis, pivots, p).any()


def row_space_contains(outer_basis: np.ndarray, outer_pivots: tuple,
                       inner_basis: np.ndarray, p: int) -> bool:
    return all(in_row_space(row, outer_basis, outer_pivots, p)
               for row in inner_basis)


def rank(matrix: np.ndarray, p: int) -> int:
    return rref(matrix, p)[0].shape[0]

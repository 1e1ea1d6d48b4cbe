"""Complex matrix utilities for multiport couplers.

Provides the symmetric DFT multiport constructor, unitarity checking,
matrix permanents (Gray-code Ryser plus a naive reference), completion of
a unitary from a prescribed first column, and the matrix JSON file format.

All matrices are dense ``numpy`` arrays of ``complex128``. Ports are
zero-indexed throughout.
"""
from __future__ import annotations

import json
import math
import os
from itertools import permutations

import numpy as np

UNITARITY_TOL = 1e-10

# 2^k Ryser cost; beyond this the call would silently hang.
PERMANENT_SIZE_CAP = 24


def dft_multiport(n: int) -> np.ndarray:
    """Return the n-port symmetric coupler matrix, entry (j,k) = exp(i*2pi*j*k/n)/sqrt(n).

    For n=3 this is the standard tritter matrix; n=2 gives the balanced
    beam splitter. The result is symmetric and unitary.
    """
    if n < 2:
        raise ValueError(f"port count must be >= 2, got {n}")
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * j * k / n) / math.sqrt(n)


def canonical_quarter() -> np.ndarray:
    """The 4-port symmetric coupler realized as a tree of balanced beam splitters.

    All entries are +-1/2 (the real 4x4 Hadamard). Unlike the 4-point DFT
    matrix this coupler sends the four-photon coincidence branches of the
    polarization scheme to equal amplitudes, which is what the scheme's
    1/16-probability W-state output requires.
    """
    h2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    return np.kron(h2, h2).astype(complex)


def verify_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    """True iff the max-norm of (M†M - I) is at most ``tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    n = m.shape[0]
    return bool(np.max(np.abs(m.conj().T @ m - np.eye(n))) <= tol)


def permanent(m: np.ndarray) -> complex:
    """Permanent of a square complex matrix via Ryser's formula with Gray-code updates.

    Runs in O(2^k * k) for a k x k matrix; k is capped at
    ``PERMANENT_SIZE_CAP``.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > PERMANENT_SIZE_CAP:
        raise ValueError(f"matrix size {n} exceeds permanent cap {PERMANENT_SIZE_CAP}")

    total = 0.0 + 0.0j
    rowsum = np.zeros(n, dtype=complex)
    gray = 0
    popcount = 0
    for i in range(1, 1 << n):
        new_gray = i ^ (i >> 1)
        bit = new_gray ^ gray
        col = bit.bit_length() - 1
        if new_gray & bit:
            rowsum += a[:, col]
            popcount += 1
        else:
            rowsum -= a[:, col]
            popcount -= 1
        gray = new_gray
        prod = np.prod(rowsum)
        total += prod if popcount % 2 == 0 else -prod
    return complex(total) if n % 2 == 0 else -complex(total)


def permanent_naive(m: np.ndarray) -> complex:
    """O(k!) permutation-sum permanent, kept as an independent test oracle."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    n = a.shape[0]
    rows = np.arange(n)
    return complex(sum(np.prod(a[rows, list(perm)]) for perm in permutations(range(n))))


def check_normalized_column(target: np.ndarray, tol: float = UNITARITY_TOL) -> np.ndarray:
    """Validate a complex column vector: finite entries, unit norm within ``tol``."""
    c = np.asarray(target, dtype=complex).ravel()
    if c.size < 2:
        raise ValueError(f"target column must have length >= 2, got {c.size}")
    if not np.all(np.isfinite(c)):
        raise ValueError("target column contains non-finite entries")
    norm_sq = float(np.sum(np.abs(c) ** 2))
    if abs(norm_sq - 1.0) > tol:
        raise ValueError(f"target column is not normalized: sum |c|^2 = {norm_sq!r}")
    return c


def complete_unitary_from_column(target: np.ndarray) -> np.ndarray:
    """Deterministic unitary whose first column equals ``target``.

    Uses a Householder reflection sending the first standard basis vector
    (up to the phase of target[0]) onto the target, composed with a phase
    on the first column. O(n^2), numerically stable.
    """
    c = check_normalized_column(target)
    n = c.size

    # Near-identity target: nothing to reflect.
    if abs(1.0 - c[0]) < 1e-12 and np.all(np.abs(c[1:]) < 1e-12):
        return np.eye(n, dtype=complex)

    phase = c[0] / abs(c[0]) if abs(c[0]) > 0 else 1.0 + 0.0j
    e0 = np.zeros(n, dtype=complex)
    e0[0] = phase
    v = e0 - c
    vnorm_sq = float(np.vdot(v, v).real)
    if vnorm_sq < 1e-24:
        # target is phase * e0 exactly; a diagonal phase suffices
        u = np.eye(n, dtype=complex)
        u[0, 0] = phase
        return u
    h = np.eye(n, dtype=complex) - 2.0 * np.outer(v, v.conj()) / vnorm_sq
    # h maps phase*e0 -> c, so fold the phase into column 0
    u = h.copy()
    u[:, 0] = h[:, 0] * phase
    return u


def write_matrix(path: str | os.PathLike, m: np.ndarray) -> None:
    """Write a square complex matrix as JSON with row-major [re, im] entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    obj = matrix_to_json_obj(a)
    with open(path, "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def matrix_to_json_obj(m: np.ndarray) -> dict:
    a = np.asarray(m, dtype=complex)
    n = a.shape[0]
    entries = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"n": n, "entries": entries}


def matrix_from_json_obj(obj: dict) -> np.ndarray:
    n = obj["n"]
    entries = obj["entries"]
    if not isinstance(n, int) or n < 1 or len(entries) != n * n:
        raise ValueError("matrix JSON is not square")
    flat = np.array([complex(re, im) for re, im in entries])
    if not np.all(np.isfinite(flat)):
        raise ValueError("matrix JSON contains non-finite entries")
    return flat.reshape(n, n)


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    """Read a matrix written by :func:`write_matrix`; rejects non-square or non-finite data."""
    with open(path) as f:
        obj = json.load(f)
    return matrix_from_json_obj(obj)

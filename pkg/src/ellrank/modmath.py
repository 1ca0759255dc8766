"""Exact linear algebra and polynomial arithmetic over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced mod p. Products are
formed in int64 when the magnitudes provably fit, otherwise in Python
integers via object arrays, so results are exact for any prime.
Polynomials are Python lists of ints, ascending degree.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

import numpy as np
from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import InternalInvariantError, ValidationError

PRIME_SEARCH_LIMIT = 1 << 61


@lru_cache(maxsize=4096)
def find_field_prime(order: int, exponent: int, limit: int = PRIME_SEARCH_LIMIT) -> int:
    """Smallest prime p with p > order^2 and p = 1 mod exponent."""
    start = order * order + 1
    p = start + ((1 - start) % exponent)
    if p <= order * order:
        p += exponent
    while p <= limit:
        if p > 1 and isprime(p):
            return p
        p += exponent
    raise ValidationError(f"no suitable prime below 2^61 for order={order}, exponent={exponent}")


def _fits_int64(p: int, inner: int) -> bool:
    return inner * (p - 1) * (p - 1) < (1 << 62)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    inner = a.shape[1]
    if _fits_int64(p, max(inner, 1)):
        return (a.astype(np.int64) @ b.astype(np.int64)) % p
    return ((a.astype(object) @ b.astype(object)) % p).astype(object)


def inv_mod(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref_mod(a: np.ndarray, p: int):
    """Reduced row echelon form over F_p. Returns (rref, pivot_columns)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if m[i, c] % p:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[[r, pivot_row]] = m[[pivot_row, r]]
        m[r] = m[r] * inv_mod(int(m[r, c]), p) % p
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Row basis (in RREF) of {v : a v = 0} over F_p."""
    r, pivots = rref_mod(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    if not free:
        return np.zeros((0, cols), dtype=np.int64)
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for row, fc in enumerate(free):
        basis[row, fc] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = (-int(r[i, fc])) % p
    out, _ = rref_mod(basis, p)
    return out


def _hessenberg_mod(a: np.ndarray, p: int) -> np.ndarray:
    h = np.array(a, dtype=np.int64) % p
    n = h.shape[0]
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if h[i, j]:
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            h[[j + 1, piv]] = h[[piv, j + 1]]
            h[:, [j + 1, piv]] = h[:, [piv, j + 1]]
        inv = inv_mod(int(h[j + 1, j]), p)
        for i in range(j + 2, n):
            f = int(h[i, j]) * inv % p
            if f:
                h[i] = (h[i] - f * h[j + 1]) % p
                h[:, j + 1] = (h[:, j + 1] + f * h[:, i]) % p
    return h


def charpoly_mod(a: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial det(xI - a) over F_p, ascending coefficients.

    Reduces to Hessenberg form by similarity, then applies the standard
    leading-minor recurrence, which is O(n^3) overall.
    """
    n = a.shape[0]
    if n == 0:
        return [1]
    h = _hessenberg_mod(a, p)
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        hk = int(h[k - 1, k - 1])
        prev = polys[k - 1]
        cur = [0] * (k + 1)
        for t, c in enumerate(prev):
            cur[t + 1] = (cur[t + 1] + c) % p
            cur[t] = (cur[t] - hk * c) % p
        beta = 1
        for i in range(k - 1, 0, -1):
            beta = beta * int(h[i, i - 1]) % p
            if beta == 0:
                break
            coef = int(h[i - 1, k - 1]) * beta % p
            if coef:
                low = polys[i - 1]
                for t, c in enumerate(low):
                    cur[t] = (cur[t] - coef * c) % p
        polys.append(cur)
    return polys[n]


# ---------------------------------------------------------------------------
# Polynomials over F_p (lists of ints, ascending degree)

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = inv_mod(g[-1], p)
    while len(f) - 1 >= dg and _ptrim(f):
        shift = len(f) - 1 - dg
        factor = f[-1] * inv_lead % p
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - factor * c) % p
        _ptrim(f)
    return f


def _pmonic(f, p):
    f = _ptrim(list(f))
    if not f:
        return f
    inv = inv_mod(f[-1], p)
    return [c * inv % p for c in f]


def _pgcd(f, g, p):
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, _pmod(f, g, p)
    return _pmonic(f, p)


def _ppowmod(base, exp, modulus, p):
    result = [1]
    base = _pmod(list(base), modulus, p)
    while exp:
        if exp & 1:
            result = _pmod(_pmul(result, base, p), modulus, p)
        base = _pmod(_pmul(base, base, p), modulus, p)
        exp >>= 1
    return result


def _pderiv(f, p):
    return _ptrim([i * c % p for i, c in enumerate(f)][1:])


def distinct_roots_mod(f: list[int], p: int) -> list[int]:
    """All distinct roots of f in F_p, ascending. The caller guarantees f
    splits into linear factors over F_p (its roots may repeat).

    Small fields are scanned directly; otherwise the squarefree part
    f / gcd(f, f') is split deterministically with quadratic-character
    gcds, trying shifts a = 0, 1, 2, ...
    """
    f = _ptrim([c % p for c in f])
    if len(f) <= 1:
        return []
    if p <= 4096:
        roots = []
        for r in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * r + c) % p
            if acc == 0:
                roots.append(r)
        return roots
    deriv = _pderiv(list(f), p)
    squarefree = _pquot(f, _pgcd(f, deriv, p), p) if deriv else _pmonic(f, p)
    roots: list[int] = []
    _split_linear(squarefree, p, roots)
    return sorted(set(roots))


def _split_linear(g, p, out):
    g = _pmonic(g, p)
    deg = len(g) - 1
    if deg <= 0:
        return
    if deg == 1:
        out.append((-g[0]) % p)
        return
    if deg == 2:
        # x^2 + bx + c with both roots in F_p
        b, c = g[1], g[0]
        disc = (b * b - 4 * c) % p
        root = sqrt_mod_prime(disc, p)
        if root is None:
            raise InternalInvariantError("quadratic factor does not split; non-split input")
        half = inv_mod(2, p)
        out.append((-b + root) * half % p)
        out.append((-b - root) * half % p)
        return
    half = (p - 1) // 2
    for a in range(p):
        t = _ppowmod([a, 1], half, g, p)
        t = _ptrim([(c - (1 if i == 0 else 0)) % p for i, c in enumerate(t + [0])])
        h = _pgcd(g, t, p)
        if 0 < len(h) - 1 < deg:
            _split_linear(h, p, out)
            _split_linear(_pquot(g, h, p), p, out)
            return
    raise InternalInvariantError("deterministic root splitting failed to separate factors")


def _pquot(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = inv_mod(g[-1], p)
    quot = [0] * (len(f) - dg)
    while len(f) - 1 >= dg and _ptrim(f):
        shift = len(f) - 1 - dg
        factor = f[-1] * inv_lead % p
        quot[shift] = factor
        for i, c in enumerate(g):
            f[shift + i] = (f[shift + i] - factor * c) % p
        _ptrim(f)
    return _ptrim(quot)


def sqrt_mod_prime(a: int, p: int) -> int | None:
    r = sqrt_mod(a % p, p)
    return None if r is None else int(r)


def lift_small_sqrt(square_residue: int, p: int, bound: int) -> int:
    """The unique d with 0 < d <= bound and d^2 = square_residue mod p,
    assuming p > bound^2 guarantees uniqueness."""
    r = sqrt_mod_prime(square_residue, p)
    if r is None:
        raise InternalInvariantError(f"residue {square_residue} is not a square mod {p}")
    d = min(r, p - r)
    if not 0 < d <= bound or d * d % p != square_residue % p:
        raise InternalInvariantError(f"square-root lift {d} escaped the range (0, {bound}]")
    return d


def int_sqrt_bound(n: int) -> int:
    return isqrt(n)

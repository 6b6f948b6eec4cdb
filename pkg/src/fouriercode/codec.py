"""Encoder and bounded-distance decoder for the designed block codes.

These are evaluation codes, so decoding is classical syndrome decoding:
the inverse-column dot products expose the error spectrum on the unused
exponents, a linear-recurrence solver recovers the error locator, a root
search over the n evaluation points finds the positions and a small
linear solve the magnitudes.  Selections with start a and step k are
reduced to the consecutive case by rescaling position u with w^(-a u)
and replacing the row generator by w^k (gcd(k, n) = 1 keeps it a
generator), which is why the decoder requires an arithmetic-progression
selection.

Up to t = floor((n-r)/2) symbol errors are corrected; anything
inconsistent raises DecodingFailure rather than guessing.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .block import BlockCode
from .field import GF
from .fourier import FourierContext
from .verify import arithmetic_progression


class DecodingFailure(Exception):
    """The received word is not within the guaranteed correction radius."""


def encode(code: BlockCode, message) -> np.ndarray:
    message = np.asarray(message, dtype=np.int64)
    if message.shape != (code.r,):
        raise ValueError(f"message must have length {code.r}")
    return linalg.mat_mul(code.field, message, code.generator)


def syndromes(code: BlockCode, word) -> np.ndarray:
    """Dot products with the complementary inverse columns; identically
    zero exactly on codewords."""
    word = np.asarray(word, dtype=np.int64)
    return linalg.mat_mul(code.field, word, code.check_cols)


def _decoder_context(code: BlockCode):
    """Consecutive-world data: the step-k Fourier context, the position
    rescaling vector, and the message's exponent slots."""
    cached = getattr(code, "_decoder_ctx", None)
    if cached is not None:
        return cached
    n = code.n
    prog = code.progression
    if prog is None:
        prog = arithmetic_progression(code.selection, n)
    if prog is None:
        raise DecodingFailure("decoding needs an arithmetic-progression selection")
    a, k = prog
    F = code.field
    ctx = code.ctx
    if k % n == 1:
        base = ctx
    else:
        base = FourierContext(F, n, F.pow(ctx.omega, k))
    kinv = pow(k, -1, n)
    slots = [((s - a) * kinv) % n for s in code.selection]
    if sorted(slots) != list(range(code.r)):
        raise DecodingFailure("selection is not a single arithmetic run")
    u = np.arange(n)
    descale = np.array([ctx.omega_pow((-a * int(x)) % n) for x in u], dtype=np.int64)
    cached = (base, descale, slots)
    code._decoder_ctx = cached
    return cached


def berlekamp_massey(F: GF, seq: list[int]) -> list[int]:
    """Minimal connection polynomial of the sequence (constant term 1)."""
    C = [1]
    B = [1]
    L, m, b = 0, 1, 1
    for i, s in enumerate(seq):
        d = s
        for j in range(1, L + 1):
            if j < len(C):
                d = F.add(d, F.mul(C[j], seq[i - j]))
        if d == 0:
            m += 1
            continue
        coef = F.mul(d, F.inv(b))
        if 2 * L <= i:
            T = list(C)
            C = C + [0] * (len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] = F.sub(C[j + m], F.mul(coef, bj))
            L = i + 1 - L
            B = T
            b = d
            m = 1
        else:
            C = C + [0] * max(0, len(B) + m - len(C))
            for j, bj in enumerate(B):
                C[j + m] = F.sub(C[j + m], F.mul(coef, bj))
            m += 1
    while len(C) > 1 and C[-1] == 0:
        C.pop()
    return C


def decode(code: BlockCode, received) -> np.ndarray:
    """Recover the message from a word with at most t symbol errors."""
    received = np.asarray(received, dtype=np.int64)
    n, r = code.n, code.r
    if received.shape != (n,):
        raise ValueError(f"received word must have length {n}")
    F = code.field
    base, descale, slots = _decoder_context(code)
    v = F.mul(received, descale)
    # spectrum on the unused exponents r..n-1 (scaled by n; zero iff clean)
    syn = linalg.mat_mul(F, v, base.inv_cols[:, r:])
    if not syn.any():
        return _extract_message(code, base, v, slots)
    t_max = (n - r) // 2
    locator = berlekamp_massey(F, [int(x) for x in syn])
    L = len(locator) - 1
    if L == 0 or L > t_max:
        raise DecodingFailure(f"{L} errors exceed the correction radius {t_max}")
    # root search: position u errs iff locator vanishes at w^u
    positions = []
    for u in range(n):
        x = base.omega_pow(u)
        acc = 0
        power = 1
        for c in locator:
            acc = F.add(acc, F.mul(c, power))
            power = F.mul(power, x)
        if acc == 0:
            positions.append(u)
    if len(positions) != L:
        raise DecodingFailure("error locator does not split over the points")
    # solve for the amplitudes: sum_u A_u X_u^t = syn[t], X_u = w^(-u)
    X = np.array([base.omega_pow(-u) for u in positions], dtype=np.int64)
    V = np.empty((L, L), dtype=np.int64)
    row = np.ones(L, dtype=np.int64)
    for trow in range(L):
        V[trow] = row
        row = F.mul(row, X)
    amps = linalg.solve_right(F, V, syn[:L])
    if amps is None:
        raise DecodingFailure("inconsistent error magnitudes")
    # A_u = e_u X_u^r, so e_u = A_u w^(u r)
    for idx, u in enumerate(positions):
        mag = F.mul(int(amps[idx]), base.omega_pow(u * r))
        v[u] = F.sub(int(v[u]), mag)
    if linalg.mat_mul(F, v, base.inv_cols[:, r:]).any():
        raise DecodingFailure("residual syndrome after correction")
    return _extract_message(code, base, v, slots)


def _extract_message(code: BlockCode, base: FourierContext, v, slots) -> np.ndarray:
    F = code.field
    coeffs = linalg.mat_mul(F, v, base.inv_cols[:, : code.r])
    coeffs = F.mul(coeffs, F.inv(base.n_in_field))
    out = np.array([coeffs[slot] for slot in slots], dtype=np.int64)
    return out

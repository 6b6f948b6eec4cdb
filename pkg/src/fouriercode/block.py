"""Block code designers: MDS, dual-containing (Euclidean and Hermitian),
LCD, design-to-specification sizing and CSS quantum parameter derivation.

Every designed code is a row selection from a Fourier context: the
generator stacks chosen rows e_i, the check columns are the inverse
columns f_j at the complementary indices, so ``A . check_cols = 0``
holds exactly by the Fourier duality.  Type properties (MDS, DC, LCD)
start as *claimed* flags; the verifier module upgrades them to
*certified* by independent checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .field import GF, FieldError, build_field, is_prime, order_mod
from .fourier import FourierContext, build_fourier


class Cert(enum.Enum):
    """Tri-state certification status of a claimed code property."""

    NO = "false"
    CLAIMED = "claimed"
    CERTIFIED = "certified"

    def __bool__(self):  # truthy when the property is at least claimed
        return self is not Cert.NO


@dataclass
class BlockFlags:
    mds: Cert = Cert.NO
    dc_euclidean: Cert = Cert.NO
    dc_hermitian: Cert = Cert.NO
    lcd: Cert = Cert.NO

    def items(self):
        return [
            ("mds", self.mds),
            ("dc_euclidean", self.dc_euclidean),
            ("dc_hermitian", self.dc_hermitian),
            ("lcd", self.lcd),
        ]


class DesignError(ValueError):
    """A requested design violates its construction preconditions."""


@dataclass
class BlockCode:
    """An [n, r, n-r+1] evaluation code given by Fourier row selection."""

    ctx: FourierContext
    selection: tuple[int, ...]
    check_col_indices: tuple[int, ...]
    flags: BlockFlags = dc_field(default_factory=BlockFlags)
    progression: tuple[int, int] | None = None  # (start, step) of the selection set

    def __post_init__(self):
        n = self.ctx.n
        self.generator = self.ctx.rows[list(self.selection)]
        if self.check_col_indices:
            self.check_cols = self.ctx.inv_cols[:, list(self.check_col_indices)]
        else:
            self.check_cols = np.zeros((n, 0), dtype=np.int64)

    @property
    def field(self) -> GF:
        return self.ctx.field

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def r(self) -> int:
        return len(self.selection)

    @property
    def design_distance(self) -> int:
        return self.n - self.r + 1

    @property
    def t(self) -> int:
        """Designed error-correcting capability."""
        return (self.n - self.r) // 2

    def dual_generator_rows(self, hermitian: bool = False) -> np.ndarray:
        """Generator of the dual code: the transposed check columns
        (f_j^T = e_{n-j}), conjugated entrywise for the Hermitian dual."""
        n = self.ctx.n
        rows = self.ctx.rows[[(n - j) % n for j in self.check_col_indices]]
        if hermitian:
            f = self.field
            if f.s % 2 != 0:
                raise DesignError("Hermitian dual needs a field of square order")
            rows = f.frobenius(rows, f.s // 2)
        return rows.reshape(len(self.check_col_indices), n)

    def type_token(self) -> str:
        if self.flags.lcd:
            return "LCD"
        if self.flags.dc_hermitian and not self.flags.dc_euclidean:
            return "HDC"
        if self.flags.dc_euclidean:
            return "DC"
        if self.flags.mds:
            return "MDS"
        return "PLAIN"

    def params(self) -> tuple[int, int, int]:
        return (self.n, self.r, self.design_distance)

    def __repr__(self):
        n, r, d = self.params()
        return f"BlockCode[{n},{r},{d}]({self.type_token()}, {self.field!r})"


@dataclass(frozen=True)
class QeccParams:
    """CSS parameters [[n, 2r-n, d]] derived from a dual-containing code."""

    n: int
    k: int
    d: int
    hermitian: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise DesignError("CSS needs dimension at least n/2 (k = 2r - n >= 0)")

    def __str__(self):
        return f"[[{self.n},{self.k},{self.d}]]"


@dataclass
class DesignRequest:
    """What a caller asks for: rate bound, error capability, type, field shape."""

    rate: Fraction
    t: int
    code_type: str = "plain"  # plain | dc | lcd | hermitian_dc
    characteristic: int | None = None
    prime_field: bool = False

    def __post_init__(self):
        self.rate = Fraction(self.rate)
        if not (0 < self.rate < 1):
            raise DesignError(f"rate must be in (0,1), got {self.rate}")
        if self.t < 0:
            raise DesignError("error capability must be nonnegative")
        if self.code_type not in ("plain", "dc", "lcd", "hermitian_dc"):
            raise DesignError(f"unknown code type {self.code_type!r}")
        if self.code_type in ("dc", "hermitian_dc") and self.rate <= Fraction(1, 2):
            raise DesignError("dual-containing requires rate above one half")
        if self.characteristic is not None and not is_prime(self.characteristic):
            raise DesignError(f"{self.characteristic} is not prime")
        if self.characteristic is not None and self.prime_field:
            raise DesignError("characteristic and prime-field constraints are exclusive")


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def design_mds(ctx: FourierContext, start: int, step: int, r: int) -> BlockCode:
    """Take r rows of the Fourier matrix in arithmetic progression.

    gcd(step, n) = 1 keeps the selection a valid evaluation-code pattern;
    the check matrix is the complementary set of inverse columns.
    """
    n = ctx.n
    if math.gcd(step, n) != 1:
        raise DesignError(f"step {step} shares a factor with n={n}")
    if not (1 <= r <= n):
        raise DesignError(f"dimension {r} out of range for n={n}")
    selection = tuple((start + i * step) % n for i in range(r))
    chosen = set(selection)
    check = tuple(j for j in range(n) if j not in chosen)
    code = BlockCode(ctx, selection, check, progression=(start % n, step % n))
    code.flags.mds = Cert.CLAIMED
    return code


def design_dc(ctx: FourierContext, r: int) -> BlockCode:
    """First r rows e_0..e_{r-1}; dual-containing when r > floor(n/2)."""
    n = ctx.n
    if r <= n // 2:
        raise DesignError("dual-containing requires rate above one half")
    code = design_mds(ctx, 0, 1, r)
    code.flags.dc_euclidean = Cert.CLAIMED
    return code


def design_dc_hermitian(field: GF, n: int, r: int) -> BlockCode:
    """Dual-containing under the Hermitian inner product on GF(p^2s).

    Needs n | p^s - 1 so that l = p^s = 1 (mod n) and conjugation fixes
    every selected row.
    """
    if field.s % 2 != 0:
        raise DesignError("Hermitian designs need an even extension degree")
    ell = field.p ** (field.s // 2)
    if (ell - 1) % n != 0:
        raise DesignError(
            f"Hermitian self-alignment fails: l={ell} is not 1 mod n={n}"
        )
    ctx = build_fourier(field, n)
    code = design_dc(ctx, r)
    code.flags.dc_hermitian = Cert.CLAIMED
    return code


def design_lcd(ctx: FourierContext, r: int) -> BlockCode:
    """Row e_0 plus the r pairs {e_i, e_{n-i}}: an [n, 2r+1, n-2r] code
    whose intersection with its dual is trivial."""
    n = ctx.n
    if r < 0 or 2 * r + 1 > n or r > n // 2:
        raise DesignError(f"pair count {r} too large for n={n}")
    selection = [0]
    for i in range(1, r + 1):
        selection += [i, n - i]
    # dual columns in paired order; for even n the loop meets in the
    # middle and the final f_{n/2} column comes last, for odd n the last
    # two columns form the middle pair
    check: list[int] = []
    lo, hi = r + 1, n - r - 1
    while lo < hi:
        check += [lo, hi]
        lo += 1
        hi -= 1
    if lo == hi:
        check.append(lo)
    code = BlockCode(
        ctx,
        tuple(selection),
        tuple(check),
        progression=((n - r) % n, 1),
    )
    code.flags.mds = Cert.CLAIMED
    code.flags.lcd = Cert.CLAIMED
    return code


# ---------------------------------------------------------------------------
# design to specification
# ---------------------------------------------------------------------------

_FIELD_ORDER_CAP = 2**20
_LENGTH_SEARCH_CAP = 10**6


def smallest_host_field(n: int) -> tuple[int, int]:
    """Smallest prime power q = p^s with n | q - 1; returns (p, s)."""
    if n == 1:
        return (2, 1)
    q = n + 1
    while q <= _FIELD_ORDER_CAP + 1:
        if (q - 1) % n == 0:
            p = _smallest_prime_factor(q)
            s = 0
            m = q
            while m % p == 0:
                m //= p
                s += 1
            if m == 1:
                return (p, s)
        q += 1
    raise DesignError(f"no host field of supported size for n={n}")


def _smallest_prime_factor(q: int) -> int:
    if q % 2 == 0:
        return 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return f
        f += 2
    return q


def _candidate_lengths(req: DesignRequest, n_min: int):
    if req.characteristic is not None:
        # lengths of the form p^i - 1 keep the working field at GF(p^i)
        p = req.characteristic
        i = 1
        while True:
            n = p**i - 1
            if n >= max(n_min, 1):
                yield n, (p, i)
            if p**i > _FIELD_ORDER_CAP:
                return
            i += 1
    elif req.prime_field:
        p = max(2, n_min + 1)
        while p <= _FIELD_ORDER_CAP:
            if is_prime(p):
                yield p - 1, (p, 1)
            p += 1
    else:
        n = max(1, n_min)
        while n <= _LENGTH_SEARCH_CAP:
            yield n, None
            n += 1


def design_to_spec(req: DesignRequest) -> tuple[BlockCode, GF]:
    """Smallest admissible (n, r, field) meeting rate >= R and d >= 2t+1."""
    R = req.rate
    need_d = 2 * req.t + 1
    n_min = max(1, math.ceil(Fraction(2 * req.t, 1) / (1 - R)))
    for n, field_params in _candidate_lengths(req, n_min):
        if field_params is None:
            try:
                field_params = smallest_host_field(n)
            except DesignError:
                continue
        p, s = field_params
        if req.code_type == "lcd":
            pairs = max(0, math.ceil((n * R - 1) / 2))
            dim = 2 * pairs + 1
            if dim > n or pairs > n // 2:
                continue
            if n - 2 * pairs < need_d:
                continue
        else:
            dim = max(1, math.ceil(n * R))
            if req.code_type in ("dc", "hermitian_dc"):
                dim = max(dim, n // 2 + 1)
                if req.characteristic == 2 and dim % 2 == 0:
                    # keep the dimension odd so the paired characteristic-2
                    # machinery (pairs plus e_0) stays applicable
                    dim += 1
            if dim > n:
                continue
            if n - dim + 1 < need_d:
                continue
        if req.code_type == "hermitian_dc":
            p_, s_ = field_params
            field_params = (p_, 2 * s_)
        p, s = field_params
        if p**s > _FIELD_ORDER_CAP:
            continue
        field = build_field(p, s)
        if req.code_type == "hermitian_dc":
            code = design_dc_hermitian(field, n, dim)
        else:
            ctx = build_fourier(field, n)
            if req.code_type == "lcd":
                code = design_lcd(ctx, pairs)
            elif req.code_type == "dc":
                code = design_dc(ctx, dim)
            else:
                code = design_mds(ctx, 0, 1, dim)
        return code, field
    raise DesignError(f"no admissible design found for {req}")


def css_from_dc(code: BlockCode, hermitian: bool | None = None) -> QeccParams:
    """CSS parameter derivation [[n, 2r-n, n-r+1]] from a certified DC code."""
    if hermitian is None:
        hermitian = (
            code.flags.dc_hermitian is Cert.CERTIFIED
            and code.flags.dc_euclidean is not Cert.CERTIFIED
        )
    flag = code.flags.dc_hermitian if hermitian else code.flags.dc_euclidean
    if flag is not Cert.CERTIFIED:
        kind = "Hermitian" if hermitian else "Euclidean"
        raise DesignError(f"{kind} dual containment is not certified for this code")
    n, r, d = code.params()
    return QeccParams(n, 2 * r - n, d, hermitian=hermitian)

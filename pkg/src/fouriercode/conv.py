"""Convolutional code designers built on Fourier row selections.

A memory-1 lifting G[z] = A + Bz reuses the rows a block design left on
the table: A keeps the selected rows, B places the remaining rows in its
trailing positions (leading rows zero).  The same index bookkeeping
yields a control matrix H^T[z] with G[z] H^T[z] = 0 and a constant right
inverse K with G[z] K = n I_r, which certifies non-catastrophicity.
Higher-memory liftings distribute all n rows across several coefficient
matrices; the paper-style example plans ship as named presets.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .block import BlockCode, Cert, DesignError
from .fourier import FourierContext


@dataclass
class ConvFlags:
    mds_conv: Cert = Cert.NO
    dc: Cert = Cert.NO
    lcd: Cert = Cert.NO

    def items(self):
        return [("mds_conv", self.mds_conv), ("dc", self.dc), ("lcd", self.lcd)]


def gsb(n: int, r: int, delta: int) -> int:
    """Generalized Singleton bound (n-r)(floor(delta/r)+1) + delta + 1."""
    if r < 1:
        raise DesignError("rank must be at least 1")
    return (n - r) * (delta // r + 1) + delta + 1


@dataclass
class ConvCode:
    """A rank-r convolutional code with coefficient matrices G_0..G_mu."""

    ctx: FourierContext
    coeffs: list[np.ndarray]
    plan: tuple[tuple[int | None, ...], ...]  # row index per (degree, row slot)
    design_free_distance: int | None = None
    flags: ConvFlags = dc_field(default_factory=ConvFlags)
    kind: str = "higher"  # memory1 | higher

    def __post_init__(self):
        self.n = self.ctx.n
        self.r = self.coeffs[0].shape[0]
        row_deg = []
        for i in range(self.r):
            deg = 0
            for k, G in enumerate(self.coeffs):
                if G[i].any():
                    deg = k
            row_deg.append(deg)
        self.delta = sum(row_deg)
        self.mu = max(row_deg) if row_deg else 0
        if len(self.coeffs) != self.mu + 1:
            self.coeffs = self.coeffs[: self.mu + 1]
        self.control_coeffs: list[np.ndarray] | None = None
        self.right_inverse: tuple[np.ndarray, int] | None = None

    @property
    def field(self):
        return self.ctx.field

    def params(self) -> tuple[int, int, int, int]:
        return (self.n, self.r, self.delta, self.mu)

    @property
    def gsb(self) -> int:
        return gsb(self.n, self.r, self.delta)

    # layout accessors used by the verifier's structural engines ----------

    @property
    def a_selection(self) -> tuple[int, ...]:
        return self.plan[0]

    @property
    def b_selection(self) -> tuple[int, ...]:
        """Row indices of the nonzero rows of G_1 (memory-1 layouts)."""
        if self.mu != 1:
            raise DesignError("b_selection is only defined for memory-1 codes")
        return tuple(i for i in self.plan[1] if i is not None)

    @property
    def zero_rows(self) -> int:
        if self.mu != 1:
            raise DesignError("zero_rows is only defined for memory-1 codes")
        return sum(1 for i in self.plan[1] if i is None)

    def verify_control(self) -> bool:
        if self.control_coeffs is None:
            return False
        prod = poly_mat_mul(self.field, self.coeffs, self.control_coeffs)
        return all(not c.any() for c in prod)

    def verify_right_inverse(self) -> bool:
        if self.right_inverse is None:
            return False
        K, c = self.right_inverse
        want = self.field.mul(linalg.eye(self.r), c)
        prod = [linalg.mat_mul(self.field, G, K) for G in self.coeffs]
        if not np.array_equal(prod[0], want):
            return False
        return all(not p.any() for p in prod[1:])

    def __repr__(self):
        n, r, d, mu = self.params()
        df = self.design_free_distance
        tail = f",{df}" if df is not None else ""
        return f"ConvCode({n},{r},{d};{mu}{tail})"


def poly_mat_mul(F, A_coeffs, B_coeffs) -> list[np.ndarray]:
    """Coefficient list of the product of two matrix polynomials."""
    da, db = len(A_coeffs) - 1, len(B_coeffs) - 1
    out = []
    for d in range(da + db + 1):
        acc = None
        for i in range(max(0, d - db), min(da, d) + 1):
            term = linalg.mat_mul(F, A_coeffs[i], B_coeffs[d - i])
            acc = term if acc is None else F.add(acc, term)
        out.append(acc)
    return out


def _plan_matrices(ctx: FourierContext, plan) -> list[np.ndarray]:
    r = len(plan[0])
    out = []
    for rows in plan:
        G = linalg.zeros((r, ctx.n))
        for slot, idx in enumerate(rows):
            if idx is not None:
                G[slot] = ctx.rows[idx % ctx.n]
        out.append(G)
    return out


def _memory1_code(ctx: FourierContext, a_sel, b_rows_plan, d_f) -> ConvCode:
    plan = (tuple(a_sel), tuple(b_rows_plan))
    code = ConvCode(ctx, _plan_matrices(ctx, plan), plan,
                    design_free_distance=d_f, kind="memory1")
    _attach_memory1_certificates(code)
    return code


def _attach_memory1_certificates(code: ConvCode):
    """Control matrix and right inverse from the index bookkeeping.

    H^T[z] = [f_j]_{j in B-rows} - [f_{a(pos(j))}] z, where a(pos(j)) is
    the A-row sitting in the same row slot as e_j does in B.  The z^2
    term dies because A rows and B rows are disjoint index sets.
    """
    ctx, F = code.ctx, code.field
    a_sel = code.a_selection
    b_sel = code.b_selection
    zero = code.zero_rows
    C0 = ctx.inv_cols[:, list(b_sel)]
    partner = [a_sel[zero + t] for t in range(len(b_sel))]
    C1 = F.neg(ctx.inv_cols[:, partner])
    code.control_coeffs = [C0, C1]
    K = ctx.inv_cols[:, list(a_sel)]
    code.right_inverse = (K, ctx.n_in_field)
    if not (code.verify_control() and code.verify_right_inverse()):
        raise DesignError("internal: memory-1 certificates failed to verify")


def lift_memory1(ctx: FourierContext, r: int) -> ConvCode:
    """G[z] = A + Bz with A = e_0..e_{r-1} and B = zeros then e_r..e_{n-1}.

    An (n, r, n-r; 1) code with designed free distance 2(n-r)+1.
    """
    n = ctx.n
    if r <= n // 2:
        raise DesignError("memory-1 lifting requires rate above one half")
    if r >= n:
        raise DesignError("memory-1 lifting needs unused rows (r < n)")
    a_sel = tuple(range(r))
    b_plan = (None,) * (2 * r - n) + tuple(range(r, n))
    code = _memory1_code(ctx, a_sel, b_plan, 2 * (n - r) + 1)
    code.flags.mds_conv = Cert.CLAIMED
    return code


def lift_conv_lcd(ctx: FourierContext, r: int) -> ConvCode:
    """Same lifting as lift_memory1, claimed LCD via the -C + Dz dual."""
    code = lift_memory1(ctx, r)
    code.flags.lcd = Cert.CLAIMED
    return code


def lift_memory1_lcd_source(lcd_code: BlockCode) -> ConvCode:
    """Lift an LCD block design to a DC convolutional code (char 2 only).

    B carries the unused rows in the dual's paired column order; the
    resulting (n, 2r+1, n-2r-1; 1) code is claimed dual-containing.
    """
    if lcd_code.field.p != 2:
        raise DesignError("LCD-to-DC lifting requires characteristic 2")
    if lcd_code.flags.lcd is Cert.NO:
        raise DesignError("source code is not an LCD design")
    ctx = lcd_code.ctx
    n, dim = ctx.n, lcd_code.r
    unused = lcd_code.check_col_indices  # complement set, paired order
    b_plan = (None,) * (2 * dim - n) + tuple(unused)
    code = _memory1_code(ctx, lcd_code.selection, b_plan, 2 * (n - dim) + 1)
    code.flags.mds_conv = Cert.CLAIMED
    code.flags.dc = Cert.CLAIMED
    return code


def lift_dc_char2(ctx: FourierContext, pairs: int) -> ConvCode:
    """Paired characteristic-2 lifting: A = e_0 plus `pairs` pairs
    {e_i, e_{n-i}}, B = zeros plus the remaining pairs.

    Gives an (n, 2*pairs+1, 2(m-pairs); 1) dual-containing code with
    designed free distance 4(m-pairs)+1, where n = 2m+1.
    """
    n = ctx.n
    if ctx.field.p != 2:
        raise DesignError("paired DC lifting requires characteristic 2")
    if n % 2 == 0:
        raise DesignError("paired DC lifting requires odd length")
    m = n // 2
    if 2 * pairs < m or pairs > m:
        raise DesignError(f"pair count must satisfy m/2 <= pairs <= m, got {pairs}")
    if pairs == m:
        raise DesignError("no rows left for B (pairs = m)")
    a_sel = [0]
    for i in range(1, pairs + 1):
        a_sel += [i, n - i]
    b_rows = []
    for i in range(pairs + 1, m + 1):
        b_rows += [i, n - i]
    b_plan = (None,) * (4 * pairs - 2 * m + 1) + tuple(b_rows)
    code = _memory1_code(ctx, tuple(a_sel), b_plan, 4 * (m - pairs) + 1)
    code.flags.mds_conv = Cert.CLAIMED
    code.flags.dc = Cert.CLAIMED
    return code


# ---------------------------------------------------------------------------
# higher memory
# ---------------------------------------------------------------------------

PRESET_PLANS: dict[str, tuple[tuple[int | None, ...], ...]] = {
    # (7,3,5;2) reaching free distance 14; note the zero rows sit so that
    # every coefficient matrix shares no fully-busy row slot (placing the
    # z^2 zero in the middle slot instead drops the distance to 13)
    "n7_m2_mds": ((0, 1, 2), (None, 3, 4), (5, 6, None)),
    # (7,3,4;2) LCD variant, free distance 7
    "n7_m2_lcd": ((0, 1, 2), (None, 3, 4), (None, 5, 6)),
    # (7,2,5;3) reaching free distance 21 (zero row in the trailing slot)
    "n7_m3": ((0, 1), (2, 3), (4, 5), (6, None)),
    # (7,1,6;6) repetition lifting
    "n7_m6": ((0,), (1,), (2,), (3,), (4,), (5,), (6,)),
}


def lift_higher_memory(ctx: FourierContext, plan) -> ConvCode:
    """Spread all n rows across coefficient matrices per the given plan.

    plan[k][slot] is the Fourier row index placed in row `slot` of G_k,
    or None for a zero row.  G_0 must hold e_0..e_{r-1} and the plan
    must use every row exactly once.
    """
    plan = tuple(tuple(rows) for rows in plan)
    r = len(plan[0])
    if any(len(rows) != r for rows in plan):
        raise DesignError("all coefficient matrices must have the same row count")
    if tuple(plan[0]) != tuple(range(r)):
        raise DesignError("G_0 must consist of rows e_0..e_{r-1}")
    used = [i for rows in plan for i in rows if i is not None]
    if sorted(used) != list(range(ctx.n)):
        raise DesignError("plan must use every Fourier row exactly once")
    code = ConvCode(ctx, _plan_matrices(ctx, plan), plan, kind="higher")
    _attach_higher_certificates(code)
    return code


def lift_preset(ctx: FourierContext, name: str) -> ConvCode:
    if name not in PRESET_PLANS:
        raise DesignError(f"unknown preset {name!r}; have {sorted(PRESET_PLANS)}")
    return lift_higher_memory(ctx, PRESET_PLANS[name])


def _attach_higher_certificates(code: ConvCode):
    """Right inverse from G_0's rows; control matrix by solving the
    banded kernel system for H^T[z] of bounded degree."""
    ctx, F = code.ctx, code.field
    r, n, mu = code.r, code.n, code.mu
    K = ctx.inv_cols[:, list(range(r))]
    code.right_inverse = (K, ctx.n_in_field)
    if not code.verify_right_inverse():
        raise DesignError("internal: right inverse failed to verify")
    for mu_h in range(mu, 2 * mu + 2):
        banded = linalg.zeros(((mu + mu_h + 1) * r, (mu_h + 1) * n))
        for d in range(mu + mu_h + 1):
            for k in range(mu_h + 1):
                if 0 <= d - k <= mu:
                    banded[d * r : (d + 1) * r, k * n : (k + 1) * n] = code.coeffs[d - k]
        basis = linalg.nullspace_right(F, banded)
        if basis.shape[1] >= n - r:
            cols = basis[:, : n - r]
            code.control_coeffs = [
                cols[k * n : (k + 1) * n, :] for k in range(mu_h + 1)
            ]
            if code.verify_control():
                return
    raise DesignError("internal: no control matrix of bounded degree found")


def conv_dual_generator(code: ConvCode) -> list[np.ndarray]:
    """Coefficient matrices of the module-theoretic dual's generator,
    obtained as H[z^{-1}] z^m from the control matrix H^T[z]."""
    if code.control_coeffs is None:
        raise DesignError("control matrix absent")
    return [c.T.copy() for c in reversed(code.control_coeffs)]

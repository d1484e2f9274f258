"""Certification of Cretan matrices and the determinant bound suite.

verify_cretan recomputes everything from the entries: the Gram matrix
(exactly, via indicator decomposition, whenever the levels live in one
quadratic field), the level census, modulus bounds, the strict unit-entry
condition, and the determinant identity |det| = omega^(n/2).  It trusts
none of the metadata on its input and never raises on a failing matrix;
the certificate carries the verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from cretan.scalar import (
    IncompatibleRadicands,
    REFINE_TOL,
    Scalar,
    VERIFY_TOL,
    format_scalar,
)


def _log_big(x: int) -> float:
    """Natural log of a positive integer that may exceed float range."""
    if x <= 0:
        raise ValueError("log of non-positive integer")
    bits = x.bit_length()
    if bits <= 900:
        return math.log(x)
    shift = bits - 64
    return math.log(x >> shift) + shift * math.log(2)


def bareiss_det(rows) -> int:
    """Exact determinant of an integer matrix, fraction-free elimination."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[-1][-1]


_EXACT_DET_MAX_ORDER = 45


def exact_abs_det(S) -> Fraction | None:
    """|det| as an exact Fraction for rational matrices up to order 45."""
    if S.mode != "exact" or S.order > _EXACT_DET_MAX_ORDER:
        return None
    if not all(l.is_rational for l in S.levels):
        return None
    fracs = [l.as_fraction() for l in S.levels]
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // math.gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    lut = np.array(ints, dtype=object)
    M = lut[S.grid]
    d = bareiss_det(M.tolist())
    return abs(Fraction(d, denom ** S.order))


def log_abs_det(S) -> float:
    """log |det S|: exact elimination when the matrix is rational and
    small, float partial-pivot elimination otherwise."""
    exact = exact_abs_det(S)
    if exact is not None:
        if exact == 0:
            return float("-inf")
        return _log_big(exact.numerator) - _log_big(exact.denominator)
    sign, ld = np.linalg.slogdet(S.to_float_array())
    return float(ld)


@dataclass
class DetIdentity:
    residual: float          # relative gap between log|det| and (n/2)log w
    exact_zero: bool         # both sides computed exactly and equal
    log_abs_det: float
    expected_log: float


def check_det_identity(S, omega: Scalar | None = None) -> DetIdentity:
    """|det| = omega^(n/2), checked exactly when possible."""
    n = S.order
    w = omega if omega is not None else S.omega
    wf = w.to_float()
    expected = 0.5 * n * math.log(wf) if wf > 0 else float("-inf")
    exact = exact_abs_det(S)
    if exact is not None and not w.is_float and w.is_rational:
        identical = exact * exact == w.as_fraction() ** n
        ld = (_log_big(exact.numerator) - _log_big(exact.denominator)
              if exact else float("-inf"))
        resid = abs(ld - expected) / max(1.0, abs(ld))
        return DetIdentity(0.0 if identical else resid, identical,
                           ld, expected)
    ld = log_abs_det(S)
    resid = abs(ld - expected) / max(1.0, abs(ld))
    return DetIdentity(resid, False, ld, expected)


# -- determinant bounds -------------------------------------------------------

@dataclass
class BoundReport:
    order: int
    hadamard_log: float
    barba_log: float | None          # odd orders
    wojtas_log: float | None         # orders 2 mod 4
    brent_osborn_log: float | None   # odd orders
    hadamard_exact: int | None
    barba_exact: int | None
    wojtas_exact: int | None
    brent_osborn_exact: int | None
    hadamard_value: float | None
    barba_value: float | None
    wojtas_value: float | None
    brent_osborn_value: float | None


def _linear(log: float | None) -> float | None:
    if log is None or log > 700:
        return None
    return math.exp(log)


def det_bounds(n: int) -> BoundReport:
    """Classical upper bounds on |det| of order-n matrices with entries
    of modulus <= 1, reported in log scale plus exact integers where the
    bound happens to be an integer."""
    if n < 1:
        raise ValueError("order must be positive")
    hadamard_log = 0.5 * n * math.log(n) if n > 1 else 0.0
    hadamard_exact = None
    if n % 2 == 0:
        hadamard_exact = n ** (n // 2)
    else:
        root = math.isqrt(n)
        if root * root == n:
            hadamard_exact = root ** n
    barba_log = barba_exact = None
    brent_log = brent_exact = None
    if n % 2 == 1:
        if n == 1:
            barba_log = 0.0
            barba_exact = 1
        else:
            barba_log = 0.5 * math.log(2 * n - 1) \
                + 0.5 * (n - 1) * math.log(n - 1)
            root = math.isqrt(2 * n - 1)
            if root * root == 2 * n - 1:
                barba_exact = root * (n - 1) ** ((n - 1) // 2)
        brent_exact = (n + 1) ** ((n - 1) // 2)
        brent_log = 0.5 * (n - 1) * math.log(n + 1)
    wojtas_log = wojtas_exact = None
    if n % 4 == 2:
        wojtas_exact = 2 * (n - 1) * (n - 2) ** ((n - 2) // 2)
        wojtas_log = _log_big(wojtas_exact)
    return BoundReport(
        n, hadamard_log, barba_log, wojtas_log, brent_log,
        hadamard_exact, barba_exact, wojtas_exact, brent_exact,
        _linear(hadamard_log), _linear(barba_log), _linear(wojtas_log),
        _linear(brent_log))


# -- the certificate ----------------------------------------------------------

@dataclass
class Certificate:
    order: int
    omega: Scalar                 # recomputed radius
    tau: int
    mode: str                     # exact | float (how Gram was checked)
    gram_exact: bool              # off-diagonals exactly zero
    max_offdiag: float
    moduli_ok: bool
    omega_claim_ok: bool          # input metadata agreed with recomputation
    strict: bool
    relaxed: bool
    det: DetIdentity
    bounds: BoundReport
    method: str
    params: dict
    requested_mode: str

    @property
    def passed(self) -> bool:
        return self.strict if self.requested_mode == "strict" else self.relaxed

    def summary_rows(self) -> list:
        rows = [
            ("order", str(self.order)),
            ("levels", str(self.tau)),
            ("radius", "%s (%.6g)" % (format_scalar(self.omega),
                                      self.omega.to_float())),
            ("gram", "exact zero" if self.gram_exact
             else "max off-diagonal %.3g" % self.max_offdiag),
            ("moduli <= 1", "yes" if self.moduli_ok else "NO"),
            ("strict", "pass" if self.strict else "fail"),
            ("relaxed", "pass" if self.relaxed else "fail"),
            ("det identity", "exact" if self.det.exact_zero
             else "residual %.3g" % self.det.residual),
            ("log |det|", "%.6f" % self.det.log_abs_det),
            ("hadamard bound log", "%.6f" % self.bounds.hadamard_log),
            ("method", self.method or "-"),
        ]
        return rows


def _indicator_grams(grid: np.ndarray, tau: int):
    # float64 matmul is exact here (counts < 2^53) and far faster than
    # numpy's integer paths
    B = [(grid == u).astype(np.float64) for u in range(tau)]
    left = [(B[u] @ B[w].T).astype(np.int64)
            for u in range(tau) for w in range(tau)]
    right = [(B[u].T @ B[w]).astype(np.int64)
             for u in range(tau) for w in range(tau)]
    return np.stack(left), np.stack(right)


def _exact_gram_check(S):
    """Evaluate both Gram products exactly through level-pair counts.

    Returns (ok_offdiag, omega, diag_constant) or raises
    IncompatibleRadicands when the levels span different fields.
    """
    n, tau = S.order, S.tau
    left, right = _indicator_grams(S.grid, tau)
    pair_values = [S.levels[u] * S.levels[w]
                   for u in range(tau) for w in range(tau)]
    omega = None
    for stack in (left, right):
        flat = stack.reshape(tau * tau, n * n)
        uniq, inv = np.unique(flat, axis=1, return_inverse=True)
        evaluated = []
        for col in range(uniq.shape[1]):
            total = Scalar(0)
            for t in range(tau * tau):
                c = int(uniq[t, col])
                if c:
                    total = total + Scalar(c) * pair_values[t]
            evaluated.append(total)
        cell = np.asarray(inv).reshape(n, n)
        off = cell[~np.eye(n, dtype=bool)]
        for pid in set(off.tolist()):
            if not evaluated[pid].is_zero():
                return False, None, False
        # distinct diagonal count patterns may still share one value
        diag_vals = [evaluated[pid] for pid in set(np.diag(cell).tolist())]
        w = diag_vals[0]
        for other in diag_vals[1:]:
            if not (w - other).is_zero():
                return False, None, False
        if omega is None:
            omega = w
        elif not (omega - w).is_zero():
            return False, None, False
    return True, omega, True


def verify_cretan(S, mode: str = "strict",
                  tolerance: float = VERIFY_TOL) -> Certificate:
    """Certify a level matrix against the Cretan definition.

    mode picks which verdict `passed` reports; the certificate always
    carries both.  Only a non-square input raises.
    """
    if mode not in ("strict", "relaxed"):
        raise ValueError("mode must be strict or relaxed")
    n = S.order
    if S.grid.shape != (n, n):
        raise ValueError("matrix is not square")

    moduli_ok = all(l.abs_le_one() for l in S.levels)

    gram_exact = False
    max_offdiag = 0.0
    omega = None
    gram_ok = False
    if S.mode == "exact":
        try:
            gram_ok, omega, _ = _exact_gram_check(S)
            gram_exact = gram_ok
        except IncompatibleRadicands:
            omega = None
    if omega is None:
        A = S.to_float_array()
        resid = 0.0
        for G in (A @ A.T, A.T @ A):
            d = G.diagonal()
            w = float(d.mean())
            resid = max(resid,
                        float(np.abs(G - w * np.eye(n)).max()))
        omega = Scalar.from_float(float((A * A).sum() / n))
        max_offdiag = resid
        gram_ok = resid <= tolerance
        gram_exact = False

    try:
        omega_claim_ok = (S.omega - omega).is_zero() if gram_exact else \
            abs(S.omega.to_float() - omega.to_float()) <= tolerance
    except IncompatibleRadicands:
        omega_claim_ok = abs(S.omega.to_float() - omega.to_float()) \
            <= tolerance

    # census straight from the grid; unused level slots would be a bug
    used = np.unique(S.grid)
    tau = int(used.size)

    unit = np.array([_is_unit(l) for l in S.levels])
    unit_cells = unit[S.grid]
    strict_units = bool(unit_cells.any(axis=1).all()
                        and unit_cells.any(axis=0).all())

    relaxed = bool(moduli_ok and gram_ok and omega_claim_ok)
    strict = bool(relaxed and strict_units)

    det = check_det_identity(S, omega)
    bounds = det_bounds(n)
    return Certificate(n, omega, tau, "exact" if gram_exact else "float",
                       gram_exact, max_offdiag, moduli_ok, omega_claim_ok,
                       strict, relaxed, det, bounds,
                       getattr(S, "method", ""),
                       dict(getattr(S, "params", {})), mode)


def _is_unit(l: Scalar) -> bool:
    if l.is_float:
        return abs(abs(l.f) - 1.0) <= REFINE_TOL
    return (Scalar(1) - abs(l)).is_zero()


def verify_complex(M, tolerance: float = VERIFY_TOL) -> bool:
    """Float-only complex certification: M M* = omega I and moduli <= 1."""
    n = M.order
    gram = M.entries @ M.entries.conj().T
    resid = float(np.abs(gram - M.omega * np.eye(n)).max())
    moduli = float(np.abs(M.entries).max())
    return resid <= tolerance and moduli <= 1 + REFINE_TOL

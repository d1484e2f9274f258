"""Constructions of Cretan matrices.

A Cretan matrix CM(n; tau; omega) is an order-n orthogonal matrix
S S^T = omega I whose entries all have modulus <= 1 and take tau distinct
values (the levels).  The strict variant additionally has a unit-modulus
entry in every row and column.

Real matrices are held as a level list plus an index grid so that exact
scalars are stored once per level.  Exact mode survives any construction
whose levels stay inside one quadratic field; everything else degrades to
float mode, which the verifier checks at 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from cretan.designs import Sbibd
from cretan.fields import make_field, trace_to_prime
from cretan.hadamard import SignMatrix
from cretan.scalar import (
    IncompatibleRadicands,
    REFINE_TOL,
    Scalar,
    ScalarPoly,
    format_scalar,
    solve_quadratic,
)


class ModulusViolation(ValueError):
    """A construction would need a level of modulus > 1."""


# -- real level matrices ------------------------------------------------------

def _level_key(x: Scalar):
    return (x.to_float(), format_scalar(x))


@dataclass
class LevelMatrix:
    order: int
    levels: tuple                # sorted distinct Scalars
    grid: np.ndarray             # int16 indices into levels
    omega: Scalar
    method: str
    params: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def tau(self) -> int:
        return len(self.levels)

    @property
    def mode(self) -> str:
        if self.omega.is_float or any(l.is_float for l in self.levels):
            return "float"
        return "exact"

    def entry(self, i: int, j: int) -> Scalar:
        return self.levels[self.grid[i, j]]

    def to_float_array(self) -> np.ndarray:
        vals = np.array([l.to_float() for l in self.levels])
        return vals[self.grid]

    def transpose(self) -> "LevelMatrix":
        return LevelMatrix(self.order, self.levels,
                           self.grid.T.copy(), self.omega,
                           self.method, dict(self.params), self.notes)

    def __eq__(self, other):
        return (isinstance(other, LevelMatrix)
                and self.order == other.order
                and self.levels == other.levels
                and (self.grid == other.grid).all()
                and self.omega == other.omega)

    def __repr__(self):
        return "LevelMatrix(CM(%d;%d;%s), method=%s, mode=%s)" % (
            self.order, self.tau, format_scalar(self.omega),
            self.method, self.mode)


def from_values(values, omega: Scalar, method: str, params=None,
                notes=()) -> LevelMatrix:
    """Build a LevelMatrix from a square array of Scalars."""
    n = len(values)
    seen: dict = {}
    for row in values:
        if len(row) != n:
            raise ValueError("matrix is not square")
        for x in row:
            seen.setdefault(x, None)
    levels = tuple(sorted(seen, key=_level_key))
    index = {l: i for i, l in enumerate(levels)}
    grid = np.array([[index[x] for x in row] for row in values],
                    dtype=np.int16)
    return LevelMatrix(n, levels, grid, omega, method, params or {},
                       tuple(notes))


def _two_level_from_incidence(incidence: np.ndarray, one: Scalar,
                              b: Scalar, omega: Scalar, method: str,
                              params) -> LevelMatrix:
    # incidence 1 -> level a=1, incidence 0 -> level b
    if b == one:
        raise ValueError("levels coincide")
    if b < one:
        levels = (b, one)
        grid = incidence.astype(np.int16)
    else:
        levels = (one, b)
        grid = (1 - incidence).astype(np.int16)
    return LevelMatrix(incidence.shape[0], levels, grid, omega,
                       method, params)


def basic_family(n: int) -> LevelMatrix:
    """Diagonal 1, off-diagonal -2/(n-2): a two-level CM for every n >= 4.

    The off-diagonal value is forced by the characteristic equation
    2a + (n-2) b = 0, and omega = 1 + 4(n-1)/(n-2)^2.
    """
    if n < 3:
        raise ValueError("order must be at least 3, got %d" % n)
    if n == 3:
        raise ModulusViolation("n = 3 forces b = -2, modulus above 1")
    b = Scalar(-2, 0, 0, n - 2)
    omega = Scalar((n - 2) ** 2 + 4 * (n - 1), 0, 0, (n - 2) ** 2)
    grid = np.eye(n, dtype=np.int16)  # diagonal -> level 1, rest -> b
    return LevelMatrix(n, (b, Scalar(1)), grid, omega, "basic", {"n": n})


def characteristic_roots(v: int, k: int, lam: int) -> list:
    """Off-diagonal level(s) b for a two-level matrix over an SBIBD:
    roots of lam + 2(k-lam) b + (v-2k+lam) b^2 = 0, ascending."""
    return solve_quadratic(lam, 2 * (k - lam), v - 2 * k + lam)


def sbibd_two_level(sb: Sbibd) -> list:
    """Two-level Cretan matrices from a symmetric design: a = 1 on the
    incidence ones, b on the zeros, one output per admissible root.

    Roots with |b| > 1 are dropped; the empty list means the design
    yields nothing (typical for complement designs).
    """
    sb.validate()
    v, k, lam = sb.params
    out = []
    for b in characteristic_roots(v, k, lam):
        if not b.abs_le_one():
            continue
        omega = Scalar(k) + Scalar(v - k) * b * b
        params = {"v": v, "k": k, "lam": lam, "b": format_scalar(b),
                  "design": sb.source}
        out.append(_two_level_from_incidence(sb.incidence, Scalar(1), b,
                                             omega, "sbibd-two-level",
                                             params))
    return out


def regular_hadamard_border(M: SignMatrix) -> LevelMatrix:
    """Border a regular Hadamard matrix of order 4m^2 (row sums 2m) with a
    unit corner and zero borders, scaling the core by 1/2m.

    The result has order 4m^2+1, omega = 1 exactly, and four levels
    {-1/2m, 0, 1/2m, 1}.  Core rows have maximum modulus 1/2m, so the
    matrix is Cretan only in the relaxed sense.
    """
    if M.kind != "hadamard" or not M.excess:
        raise ValueError("core must be a regular Hadamard matrix")
    m2 = M.excess // 2
    if M.order != 4 * m2 * m2:
        raise ValueError("row sums disagree with the order")
    n = M.order + 1
    lo = Scalar(-1, 0, 0, 2 * m2)
    zero = Scalar(0)
    hi = Scalar(1, 0, 0, 2 * m2)
    one = Scalar(1)
    levels = (lo, zero, hi, one)
    grid = np.empty((n, n), dtype=np.int16)
    grid[0, :] = 1
    grid[:, 0] = 1
    grid[0, 0] = 3
    grid[1:, 1:] = np.where(M.entries > 0, 2, 0)
    return LevelMatrix(n, levels, grid, one, "regular-hadamard-border",
                       {"m": m2, "core": M.source},
                       notes=("relaxed",))


def _radius_match_poly(v: int, k: int, lam: int) -> ScalarPoly:
    # corner row norm x^2 + v s^2 minus core row norm s^2 + k + (v-k) b^2,
    # after substituting x = -(k + (v-k) b) and s^2 = -(characteristic)
    c0 = k * k - (v - 1) * lam - k
    c1 = 2 * k * (v - k) - 2 * (v - 1) * (k - lam)
    c2 = (v - k) ** 2 - (v - 1) * (v - 2 * k + lam) - (v - k)
    return ScalarPoly([c0, c1, c2])


def bordered_feasibility(v: int, k: int, lam: int, b: float):
    """(x, s2) for a candidate core level b, or None when infeasible."""
    s2 = -(lam + 2 * (k - lam) * b + (v - 2 * k + lam) * b * b)
    if s2 < -REFINE_TOL:
        return None
    s2 = max(s2, 0.0)
    x = -(k + (v - k) * b)
    if abs(b) > 1 + REFINE_TOL or abs(x) > 1 + REFINE_TOL \
            or s2 > 1 + REFINE_TOL:
        return None
    return x, s2


def bordered_solver(sb: Sbibd) -> list:
    """Bordered Cretan matrices of order v+1 over a symmetric design.

    The layout is corner x, borders s, core levels 1 (incidence ones) and
    b (zeros), subject to x + k + (v-k) b = 0 and
    s^2 = -(lam + 2(k-lam) b + (v-2k+lam) b^2).  The radius-match
    polynomial in b turns out to vanish identically for every valid
    parameter triple, leaving a one-parameter family; we return the
    canonical members (corner saturated at x = +-1, corner zero, border
    maximized, interval endpoints) that satisfy every modulus constraint.
    A sign-change bisection handles any input where the polynomial does
    not collapse.  Output is float mode, sorted by b.
    """
    sb.validate()
    v, k, lam = sb.params
    g = _radius_match_poly(v, k, lam)
    cands: list = []
    if g.is_zero():
        cands += [(1 - k) / (v - k), -(1 + k) / (v - k), -k / (v - k)]
        if v - 2 * k + lam != 0:
            cands.append(-(k - lam) / (v - 2 * k + lam))
        cands += [-1.0, 1.0]
    else:
        # fall back to root isolation on [-1, 1]
        xs = [i / 1000 for i in range(-1000, 1001)]
        vals = [g.evaluate(Scalar.from_float(t)).to_float() for t in xs]
        for t0, t1, f0, f1 in zip(xs, xs[1:], vals, vals[1:]):
            if f0 == 0:
                cands.append(t0)
            elif f0 * f1 < 0:
                lo, hi = t0, t1
                while hi - lo > REFINE_TOL:
                    mid = (lo + hi) / 2
                    fm = g.evaluate(Scalar.from_float(mid)).to_float()
                    if fm == 0:
                        lo = hi = mid
                    elif fm * f0 < 0:
                        hi = mid
                    else:
                        lo = mid
                cands.append((lo + hi) / 2)
        if vals and vals[-1] == 0:
            cands.append(1.0)

    picked: list = []
    for b in sorted(cands):
        feas = bordered_feasibility(v, k, lam, b)
        if feas is None:
            continue
        if any(abs(b - p) <= REFINE_TOL for p, _ in picked):
            continue
        picked.append((b, feas))

    out = []
    n = v + 1
    for b, (x, s2) in picked:
        s = math.sqrt(s2)
        values_scale = max(abs(x), abs(s), 1.0, abs(b))
        fx = Scalar.from_float(x / values_scale)
        fs = Scalar.from_float(s / values_scale)
        fa = Scalar.from_float(1.0 / values_scale)
        fb = Scalar.from_float(b / values_scale)
        omega = Scalar.from_float((x * x + v * s2) / values_scale ** 2)
        values = [[fx] + [fs] * v]
        for i in range(v):
            row = [fs] + [fa if sb.incidence[i, j] else fb
                          for j in range(v)]
            values.append(row)
        out.append(from_values(values, omega, "bordered",
                               {"v": v, "k": k, "lam": lam, "b": b,
                                "x": x, "s": s, "design": sb.source}))
    return out


def kronecker_cretan(A: LevelMatrix, B: LevelMatrix) -> LevelMatrix:
    """Kronecker product: order and radius multiply, levels are the
    pairwise products (recounted, since products can coincide)."""
    ta, tb = A.tau, B.tau
    try:
        prods = [A.levels[u] * B.levels[w]
                 for u in range(ta) for w in range(tb)]
        omega = A.omega * B.omega
    except IncompatibleRadicands:
        prods = [Scalar.from_float(A.levels[u].to_float()
                                   * B.levels[w].to_float())
                 for u in range(ta) for w in range(tb)]
        omega = Scalar.from_float(A.omega.to_float() * B.omega.to_float())
    seen: dict = {}
    for x in prods:
        seen.setdefault(x, None)
    levels = tuple(sorted(seen, key=_level_key))
    index = {l: i for i, l in enumerate(levels)}
    lut = np.array([index[x] for x in prods], dtype=np.int16)
    ga = A.grid.astype(np.int32)
    gb = B.grid.astype(np.int32)
    pair = (ga[:, None, :, None] * tb + gb[None, :, None, :])
    n = A.order * B.order
    grid = lut[pair.reshape(n, n)]
    notes = tuple(sorted(set(A.notes) | set(B.notes)))
    return LevelMatrix(n, levels, grid, omega, "kronecker",
                       {"left": (A.method, A.order),
                        "right": (B.method, B.order)}, notes)


def _sqrt_scalar(x: Scalar) -> Scalar:
    if not x.is_float and x.is_rational:
        return Scalar.sqrt_fraction(x.as_fraction())
    return Scalar.from_float(math.sqrt(x.to_float()))


def direct_sum(A: LevelMatrix, B: LevelMatrix) -> LevelMatrix:
    """Block diagonal sum sharing the smaller radius.

    The larger-radius block is rescaled by sqrt(omega_min/omega_max) so
    both blocks have the same radius; exact when the ratio has a rational
    square root claimable in the levels' field, float otherwise.  The
    scaled block's levels drop below 1, which the notes record.
    """
    try:
        a_is_lo = (A.omega - B.omega).sign() <= 0
    except IncompatibleRadicands:
        a_is_lo = A.omega.to_float() <= B.omega.to_float()
    lo, hi = (A, B) if a_is_lo else (B, A)
    notes = set(lo.notes) | set(hi.notes)
    if lo.omega == hi.omega:
        scaled_hi_levels = hi.levels
    else:
        try:
            ratio = lo.omega / hi.omega
            scale = _sqrt_scalar(ratio)
            scaled_hi_levels = tuple(l * scale for l in hi.levels)
        except IncompatibleRadicands:
            fscale = math.sqrt(lo.omega.to_float() / hi.omega.to_float())
            scaled_hi_levels = tuple(
                Scalar.from_float(l.to_float() * fscale) for l in hi.levels)
        notes.add("not one 1 per row and column")
        notes.add("rescaled-block")
    zero = Scalar(0)
    seen: dict = {zero: None}
    for l in lo.levels:
        seen.setdefault(l, None)
    for l in scaled_hi_levels:
        seen.setdefault(l, None)
    levels = tuple(sorted(seen, key=_level_key))
    index = {l: i for i, l in enumerate(levels)}
    n = lo.order + hi.order
    grid = np.full((n, n), index[zero], dtype=np.int16)
    lo_map = np.array([index[l] for l in lo.levels], dtype=np.int16)
    hi_map = np.array([index[l] for l in scaled_hi_levels], dtype=np.int16)
    grid[: lo.order, : lo.order] = lo_map[lo.grid]
    grid[lo.order:, lo.order:] = hi_map[hi.grid]
    omega = lo.omega
    return LevelMatrix(n, levels, grid, omega, "direct-sum",
                       {"left": (lo.method, lo.order),
                        "right": (hi.method, hi.order)},
                       tuple(sorted(notes)))


def sign_to_level(M: SignMatrix) -> LevelMatrix:
    """View a sign matrix as a level matrix with omega = weight."""
    values = {-1: Scalar(-1), 0: Scalar(0), 1: Scalar(1)}
    present = sorted(set(np.unique(M.entries)))
    levels = tuple(values[v] for v in present)
    remap = {v: i for i, v in enumerate(present)}
    lut = np.zeros(3, dtype=np.int16)
    for v, i in remap.items():
        lut[v + 1] = i
    grid = lut[M.entries.astype(np.int16) + 1]
    return LevelMatrix(M.order, levels, grid, Scalar(M.weight),
                       "sign-matrix", {"kind": M.kind, "core": M.source})


# -- complex level matrices ---------------------------------------------------

@dataclass
class ComplexLevelMatrix:
    order: int
    entries: np.ndarray          # complex128
    omega: float
    method: str
    params: dict = field(default_factory=dict)

    def validate(self, tol: float = 1e-9) -> None:
        n = self.order
        if self.entries.shape != (n, n):
            raise ValueError("entries are not square")
        if (np.abs(self.entries) > 1 + 1e-12).any():
            raise ValueError("entry modulus above 1")
        gram = self.entries @ self.entries.conj().T
        if np.abs(gram - self.omega * np.eye(n)).max() > tol:
            raise ValueError("Gram residual above tolerance")

    def __repr__(self):
        return "ComplexLevelMatrix(CM(%d;..;%s), method=%s)" % (
            self.order, self.omega, self.method)


def conference_complex(W: SignMatrix) -> ComplexLevelMatrix:
    """Put i on the zero diagonal of a symmetric conference matrix.

    Rows then have norm 1 + (n-1) = n and distinct rows stay orthogonal
    because i W_ba - i W_ab vanishes exactly when W is symmetric.
    """
    if W.kind != "conference":
        raise ValueError("input must be a conference matrix")
    if not W.is_symmetric:
        raise ValueError("conference core must be symmetric")
    n = W.order
    entries = W.entries.astype(np.complex128) + 1j * np.eye(n)
    M = ComplexLevelMatrix(n, entries, float(n), "conference-complex",
                           {"core": W.source})
    M.validate()
    return M


# -- group matrices -----------------------------------------------------------

STAR = -1  # placeholder entry: zero value, but not the group's zero


@dataclass
class GroupMatrix:
    order: int
    group_order: int
    entries: np.ndarray          # int16; values in 0..g-1, or STAR
    kind: str                    # "GH" or "GW"
    weight: int = 0              # non-star entries per column, GW only

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.int16)


@dataclass
class GroupCensusReport:
    passed: bool
    kind: str
    uniform_count: int
    message: str


def group_orthogonality_check(G: GroupMatrix) -> GroupCensusReport:
    """Difference census over distinct row pairs.

    GH: each group element must appear exactly n/g times among the
    entrywise differences.  GW: positions where either row has a star are
    skipped, every column must carry exactly `weight` non-star entries,
    and the surviving differences must hit every group element equally
    often.
    """
    E = G.entries
    n, g = G.order, G.group_order
    if G.kind == "GW":
        per_col = (E != STAR).sum(axis=0)
        if not (per_col == G.weight).all():
            return GroupCensusReport(False, G.kind, 0,
                                     "column star counts are uneven")
    expect = n // g if G.kind == "GH" else None
    uniform = expect or 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            mask = (E[i] != STAR) & (E[j] != STAR)
            diffs = (E[i][mask] - E[j][mask]) % g
            counts = np.bincount(diffs, minlength=g)
            want = expect if expect is not None else counts[0]
            if not (counts == want).all():
                return GroupCensusReport(
                    False, G.kind, 0,
                    "rows %d,%d: counts %s" % (i, j, counts.tolist()))
            uniform = int(want)
    return GroupCensusReport(True, G.kind, uniform, "ok")


def gh_from_field(p: int, k: int) -> GroupMatrix:
    """Generalized Hadamard matrix GH(p^k, Z_p) with entries
    Tr(x_i x_j) over GF(p^k), rows and columns in fixed field order."""
    if p ** k > 256:
        raise ValueError("order cap exceeded: %d^%d > 256" % (p, k))
    f = make_field(p, k)
    xs = f.elements()
    n = p ** k
    E = np.zeros((n, n), dtype=np.int16)
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            E[i, j] = trace_to_prime(x * y)
    G = GroupMatrix(n, p, E, "GH")
    rep = group_orthogonality_check(G)
    if not rep.passed:
        raise ValueError("trace table failed the census: " + rep.message)
    return G


def gh_to_complex(G: GroupMatrix) -> ComplexLevelMatrix:
    """Map exponents to p-th roots of unity (stars to 0)."""
    g = G.group_order
    E = G.entries.astype(np.float64)
    M = np.exp(2j * np.pi * E / g)
    M[G.entries == STAR] = 0
    omega = float(G.order if G.kind == "GH" else G.weight)
    C = ComplexLevelMatrix(G.order, M, omega, "group-complex",
                           {"kind": G.kind, "group": g})
    return C


def gh_z3_order6() -> GroupMatrix:
    """A published GH(6, Z3) in additive form."""
    rows = [[0, 0, 0, 0, 0, 0],
            [0, 0, 1, 2, 2, 1],
            [0, 1, 0, 1, 2, 2],
            [0, 2, 1, 0, 1, 2],
            [0, 2, 2, 1, 0, 1],
            [0, 1, 2, 2, 1, 0]]
    return GroupMatrix(6, 3, np.array(rows, dtype=np.int16), "GH")


def gw_z3_order5() -> GroupMatrix:
    """A published additive GW(5, Z3) with a star diagonal (weight 4)."""
    s = STAR
    rows = [[s, 0, 0, 0, 0],
            [0, s, 1, 2, 0],
            [0, 1, s, 0, 2],
            [0, 2, 0, s, 1],
            [0, 0, 2, 1, s]]
    return GroupMatrix(5, 3, np.array(rows, dtype=np.int16), "GW", weight=4)

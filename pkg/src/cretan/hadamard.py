"""Sign matrices: Hadamard, conference, and weighing matrices.

Entries are drawn from {-1, 0, +1} and the Gram matrix is weight * I.
Hadamard matrices have weight n (no zeros), conference matrices weight
n - 1 (zero diagonal), weighing matrices W(n, w) weight w.  A regular
Hadamard matrix additionally has constant row and column sums 2m with
n = 4 m^2; these are the seeds for bordered constructions of odd order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from cretan.designs import Sbibd, fixture_difference_set, load_fixture
from cretan.fields import (
    factor_prime_power,
    is_prime,
    make_field,
    quadratic_character,
    quadratic_character_elem,
)


class NoConstructionAvailable(ValueError):
    """No construction for the requested order is known to this package."""


@dataclass
class SignMatrix:
    order: int
    entries: np.ndarray          # int8, values in {-1, 0, 1}
    kind: str                    # "hadamard" | "conference" | "weighing"
    weight: int                  # Gram matrix is weight * I
    excess: int = 0              # common row sum, for regular Hadamard
    source: str = ""

    def validate(self) -> None:
        n = self.order
        E = self.entries.astype(np.int64)
        if E.shape != (n, n) or not np.isin(E, (-1, 0, 1)).all():
            raise ValueError("entries must be an n x n matrix over {-1,0,1}")
        if not (E @ E.T == self.weight * np.eye(n, dtype=np.int64)).all():
            raise ValueError("Gram matrix is not weight * I")
        if self.kind == "hadamard":
            if self.weight != n or (E == 0).any():
                raise ValueError("Hadamard matrices have no zeros")
            if self.excess:
                m2, r = divmod(n, 4)
                s = round(m2 ** 0.5)
                if r or s * s != m2 or self.excess != 2 * s:
                    raise ValueError("regular Hadamard needs n = 4 m^2, "
                                     "row sums 2m")
                sums = E.sum(axis=1)
                if not (sums == self.excess).all() or \
                        not (E.sum(axis=0) == self.excess).all():
                    raise ValueError("row/column sums are not constant 2m")
        elif self.kind == "conference":
            if self.weight != n - 1:
                raise ValueError("conference weight must be n - 1")
            if (np.diag(E) != 0).any() or (E == 0).sum() != n:
                raise ValueError("conference matrices have zero diagonal "
                                 "and no other zeros")
        elif self.kind == "weighing":
            if not (0 < self.weight <= n):
                raise ValueError("weighing weight out of range")
        else:
            raise ValueError("unknown kind %r" % self.kind)

    @property
    def is_symmetric(self) -> bool:
        return (self.entries == self.entries.T).all()


def sylvester(e: int) -> SignMatrix:
    """Hadamard matrix of order 2^e by repeated doubling; e >= 0."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    H = np.array([[1]], dtype=np.int8)
    for _ in range(e):
        H = np.block([[H, H], [H, -H]]).astype(np.int8)
    n = 2 ** e
    return SignMatrix(n, H, "hadamard", n, source="sylvester(%d)" % e)


def paley_conference(q: int) -> SignMatrix:
    """Symmetric conference matrix of order q + 1, q a prime power 1 mod 4.

    Core is the quadratic character table of GF(q); the border is all
    ones and the diagonal zero.
    """
    if q % 4 != 1:
        raise ValueError("q must be 1 mod 4, got %d" % q)
    if is_prime(q):
        chi = lambda a: quadratic_character(a, q)
        elems = list(range(q))
        sub = lambda a, b: (a - b) % q
    else:
        p, k = factor_prime_power(q)
        f = make_field(p, k)
        chi = quadratic_character_elem
        elems = f.elements()
        sub = lambda a, b: a - b
    n = q + 1
    C = np.zeros((n, n), dtype=np.int8)
    C[0, 1:] = 1
    C[1:, 0] = 1
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            if i != j:
                C[i + 1, j + 1] = chi(sub(a, b))
    M = SignMatrix(n, C, "conference", q, source="paley-conference(%d)" % q)
    M.validate()
    return M


def kronecker_sign(A: SignMatrix, B: SignMatrix) -> SignMatrix:
    """Kronecker product; weight multiplies, kind follows the factors."""
    E = np.kron(A.entries, B.entries).astype(np.int8)
    n = A.order * B.order
    w = A.weight * B.weight
    if A.kind == "hadamard" and B.kind == "hadamard":
        kind = "hadamard"
        excess = 0
        if A.excess and B.excess:
            excess = A.excess * B.excess  # (2m)(2m') = 2 * (2 m m')
    else:
        kind = "weighing"
        excess = 0
    M = SignMatrix(n, E, kind, w, excess=excess,
                   source="kron(%s, %s)" % (A.source, B.source))
    return M


def menon_hadamard_from_design(sb: Sbibd) -> SignMatrix:
    """Regular Hadamard matrix of order 4 m^2 from a (4m^2, 2m^2-m, m^2-m)
    design, mapping incidence 1 -> -1 and 0 -> +1."""
    v = sb.v
    m2, r = divmod(v, 4)
    s = round(m2 ** 0.5)
    if r or s * s != m2:
        raise ValueError("order %d is not 4 m^2" % v)
    if sb.k not in (2 * m2 - s, 2 * m2 + s):
        raise ValueError("design parameters are not Menon type")
    H = (1 - 2 * sb.incidence).astype(np.int8)
    excess = int(H.sum(axis=1)[0])
    M = SignMatrix(v, H, "hadamard", v, excess=abs(excess),
                   source="menon(%s)" % (sb.params,))
    if excess < 0:
        M = SignMatrix(v, (-H).astype(np.int8), "hadamard", v,
                       excess=-excess, source=M.source)
    M.validate()
    return M


_SEED4 = None


def _regular_seed4() -> SignMatrix:
    """J - 2I at order 4: symmetric regular Hadamard with row sums 2."""
    global _SEED4
    if _SEED4 is None:
        E = (np.ones((4, 4), dtype=np.int8) - 2 * np.eye(4, dtype=np.int8))
        _SEED4 = SignMatrix(4, E.astype(np.int8), "hadamard", 4, excess=2,
                            source="regular-seed(4)")
        _SEED4.validate()
    return _SEED4


def regular_hadamard(m: int) -> SignMatrix:
    """Regular Hadamard matrix of order 4 m^2 with row sums 2m.

    Covers m = 2^a and m = 3 * 2^a (the latter seeded by the shipped
    (36,15,6) design).  Other m fall back to a sign-matrix fixture named
    regular-hadamard-<4m^2>; absent that, NoConstructionAvailable.
    """
    if m < 1:
        raise ValueError("m must be positive")
    rest = m
    a = 0
    while rest % 2 == 0:
        rest //= 2
        a += 1
    if rest == 1:
        M = _regular_seed4()
        for _ in range(a):
            M = kronecker_sign(M, _regular_seed4())
        M.validate()
        return M
    if rest == 3:
        M = menon_hadamard_from_design(fixture_difference_set("36-15-6").develop())
        for _ in range(a):
            M = kronecker_sign(M, _regular_seed4())
        M.validate()
        return M
    name = "regular-hadamard-%d" % (4 * m * m)
    try:
        fx = load_fixture(name)
    except FileNotFoundError:
        raise NoConstructionAvailable(
            "no regular Hadamard construction for m=%d; provide a "
            "sign-matrix fixture %r" % (m, name))
    M = sign_matrix_from_fixture(fx, expect_regular=True)
    if M.excess != 2 * m:
        raise ValueError("fixture %r has the wrong row sums" % name)
    return M


def sign_matrix_from_fixture(fx, expect_regular: bool = False) -> SignMatrix:
    """Decode a sign-matrix fixture ('+'/'-'/'0' rows) and validate it."""
    if fx.kind != "sign-matrix":
        raise ValueError("fixture %r is not a sign matrix" % fx.label)
    n = fx.order
    chars = {"+": 1, "-": -1, "0": 0}
    E = np.array([[chars[c] for c in row] for row in fx.rows], dtype=np.int8)
    if E.shape != (n, n):
        raise ValueError("fixture body disagrees with declared order")
    zeros = int((E == 0).sum())
    if zeros == 0:
        sums = E.astype(np.int64).sum(axis=1)
        excess = int(sums[0]) if (sums == sums[0]).all() else 0
        M = SignMatrix(n, E, "hadamard", n, excess=abs(excess),
                       source="fixture:%s" % fx.label)
    elif zeros == n and not np.diag(E).any():
        M = SignMatrix(n, E, "conference", n - 1,
                       source="fixture:%s" % fx.label)
    else:
        w = int((E[0] != 0).sum())
        M = SignMatrix(n, E, "weighing", w, source="fixture:%s" % fx.label)
    if expect_regular and M.excess == 0:
        raise ValueError("fixture %r is not regular" % fx.label)
    M.validate()
    return M

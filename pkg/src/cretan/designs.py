"""Difference sets and the symmetric designs they develop into.

A (v, k, lam) difference set D in an abelian group G of order v is a
k-subset whose ordered differences cover every non-identity element of G
exactly lam times.  Developing D gives a symmetric balanced incomplete
block design: a v x v 0/1 matrix B with B B^T = (k - lam) I + lam J.

Groups are products of cyclic factors; elements are int tuples.  Three
families are constructed directly (quadratic residues, biquadratic
residues, hyperplane-based sets in projective space) and the rest ship as
fixture files validated by the same census used everywhere else.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cretan.fields import (
    factor_prime_power,
    is_prime,
    make_field,
    quadratic_character,
    relative_trace,
)


class NotADifferenceSet(ValueError):
    """Census failed: the candidate set is not a difference set."""


class MissingFixture(FileNotFoundError):
    """A named fixture file is not present in any search directory."""


@dataclass(frozen=True)
class GroupDesc:
    """Finite abelian group given as a product of cyclic factors."""

    orders: tuple

    def __post_init__(self):
        if not self.orders or any(o < 1 for o in self.orders):
            raise ValueError("cyclic factor orders must be positive")

    @property
    def order(self) -> int:
        n = 1
        for o in self.orders:
            n *= o
        return n

    def elements(self) -> list[tuple]:
        """All elements in mixed-radix lexicographic order."""
        return list(itertools.product(*(range(o) for o in self.orders)))

    def identity(self) -> tuple:
        return (0,) * len(self.orders)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple((x + y) % o for x, y, o in zip(a, b, self.orders))

    def sub(self, a: tuple, b: tuple) -> tuple:
        return tuple((x - y) % o for x, y, o in zip(a, b, self.orders))

    def __str__(self):
        return " x ".join("Z%d" % o for o in self.orders)


def cyclic(v: int) -> GroupDesc:
    return GroupDesc((v,))


def difference_census(group: GroupDesc, elements) -> dict:
    """Count ordered differences d1 - d2 over distinct pairs of the set.

    Returns {group element: count} for every non-identity element,
    including zero counts.
    """
    counts = {g: 0 for g in group.elements()}
    els = list(elements)
    for a in els:
        for b in els:
            if a != b:
                counts[group.sub(a, b)] += 1
    del counts[group.identity()]
    return counts


@dataclass(frozen=True)
class DifferenceSet:
    group: GroupDesc
    elements: tuple
    lam: int
    source: str = ""

    @property
    def v(self) -> int:
        return self.group.order

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def params(self) -> tuple:
        return (self.v, self.k, self.lam)

    def complement(self) -> "DifferenceSet":
        inside = set(self.elements)
        comp = tuple(g for g in self.group.elements() if g not in inside)
        v, k = self.v, self.k
        return make_difference_set(self.group, comp, v - 2 * k + self.lam,
                                   source=self.source + " complement")

    def develop(self) -> "Sbibd":
        """Incidence matrix: row g, column h carries 1 iff h - g is in D."""
        els = self.group.elements()
        inside = set(self.elements)
        v = self.v
        B = np.zeros((v, v), dtype=np.int8)
        for i, g in enumerate(els):
            for j, h in enumerate(els):
                if self.group.sub(h, g) in inside:
                    B[i, j] = 1
        return Sbibd(self.v, self.k, self.lam, B, source=self.source)


def make_difference_set(group: GroupDesc, elements, lam: int,
                        source: str = "") -> DifferenceSet:
    """Validate by census and freeze.  Raises NotADifferenceSet."""
    els = tuple(sorted(set(elements)))
    if len(els) != len(tuple(elements)):
        raise NotADifferenceSet("repeated elements in candidate set")
    counts = difference_census(group, els)
    bad = {g: c for g, c in counts.items() if c != lam}
    if bad:
        raise NotADifferenceSet(
            "census mismatch for %s in %s: %d elements deviate from "
            "lambda=%d" % (sorted(els)[:4], group, len(bad), lam))
    k = len(els)
    v = group.order
    if lam * (v - 1) != k * (k - 1):
        raise NotADifferenceSet(
            "parameter identity fails: lambda (v-1) != k (k-1)")
    return DifferenceSet(group, els, lam, source=source)


@dataclass
class Sbibd:
    """Symmetric design: v x v incidence with B B^T = (k-lam) I + lam J."""

    v: int
    k: int
    lam: int
    incidence: np.ndarray
    source: str = ""

    @property
    def params(self) -> tuple:
        return (self.v, self.k, self.lam)

    @property
    def order_term(self) -> int:
        """k - lam, the multiplier of I in the Gram identity."""
        return self.k - self.lam

    def validate(self) -> None:
        v, k, lam = self.v, self.k, self.lam
        if lam * (v - 1) != k * (k - 1):
            raise ValueError("parameter identity fails for %s" % (self.params,))
        B = self.incidence.astype(np.int64)
        if B.shape != (v, v) or not np.isin(B, (0, 1)).all():
            raise ValueError("incidence must be a v x v 0/1 matrix")
        if not (B.sum(axis=1) == k).all() or not (B.sum(axis=0) == k).all():
            raise ValueError("row or column sums differ from k")
        G = B @ B.T
        want = (k - lam) * np.eye(v, dtype=np.int64) + lam
        if not (G == want).all():
            raise ValueError("Gram identity fails for %s" % (self.params,))

    def complement(self) -> "Sbibd":
        return Sbibd(self.v, self.v - self.k, self.v - 2 * self.k + self.lam,
                     1 - self.incidence, source=self.source + " complement")


# -- constructive families ----------------------------------------------------

def qr_difference_set(q: int) -> DifferenceSet:
    """Nonzero squares in GF(q) for a prime power q = 3 (mod 4), q <= 1000.

    Parameters (q, (q-1)/2, (q-3)/4).  For prime q the group is Z_q; for
    a proper prime power p^k it is the additive group (Z_p)^k.
    """
    if q > 1000 or q < 3:
        raise ValueError("q out of range: %d" % q)
    if q % 4 != 3:
        raise ValueError("q must be 3 mod 4, got %d" % q)
    lam = (q - 3) // 4
    if is_prime(q):
        group = cyclic(q)
        els = [(a,) for a in range(1, q) if quadratic_character(a, q) == 1]
        return make_difference_set(group, els, lam, source="qr(%d)" % q)
    p, k = factor_prime_power(q)
    f = make_field(p, k)
    group = GroupDesc((p,) * k)
    els = [f.exp(2 * i).coeffs for i in range((q - 1) // 2)]
    return make_difference_set(group, els, lam, source="qr(%d)" % q)


def biquadratic_difference_set(p: int, with_zero: bool = False) -> DifferenceSet:
    """Fourth powers mod a prime p (optionally together with zero).

    Only special primes work; the census rejects everything else.  Without
    zero the parameters are (p, (p-1)/4, lam); with zero the block is the
    fourth powers plus 0 and k grows by one.
    """
    if not is_prime(p) or p % 4 != 1:
        raise ValueError("p must be a prime 1 mod 4, got %d" % p)
    group = cyclic(p)
    quartics = sorted({pow(a, 4, p) for a in range(1, p)})
    els = [(a,) for a in quartics]
    if with_zero:
        els.append((0,))
    k = len(els)
    lam_num = k * (k - 1)
    if lam_num % (p - 1) != 0:
        raise NotADifferenceSet("k(k-1) not divisible by v-1 for p=%d" % p)
    lam = lam_num // (p - 1)
    tag = "biquadratic(%d%s)" % (p, ", with zero" if with_zero else "")
    return make_difference_set(group, els, lam, source=tag)


def singer_difference_set(n: int, q: int) -> DifferenceSet:
    """Points of a hyperplane in projective n-space over GF(q).

    Cyclic group Z_v with v = (q^(n+1)-1)/(q-1); the set collects the
    generator exponents whose relative trace down to GF(q) vanishes.
    Parameters (v, (q^n-1)/(q-1), (q^(n-1)-1)/(q-1)).
    """
    if n < 2:
        raise ValueError("projective dimension must be >= 2")
    p, j = factor_prime_power(q)
    f = make_field(p, j * (n + 1))
    v = (q ** (n + 1) - 1) // (q - 1)
    k = (q ** n - 1) // (q - 1)
    lam = (q ** (n - 1) - 1) // (q - 1)
    els = [(i,) for i in range(v)
           if relative_trace(f.exp(i), j).is_zero()]
    if len(els) != k:
        raise NotADifferenceSet(
            "trace-zero index count %d differs from k=%d" % (len(els), k))
    return make_difference_set(cyclic(v), els, lam,
                               source="singer(n=%d, q=%d)" % (n, q))


# -- fixtures -----------------------------------------------------------------

_DATA_DIR = Path(__file__).parent / "data"
FIXTURE_DIR_ENV = "CRETAN_FIXTURE_DIR"
FIXTURE_MAGIC = "cretan-fixture 1"


@dataclass
class Fixture:
    kind: str                 # "difference-set" or "sign-matrix"
    label: str
    provenance: str
    group_orders: tuple = ()  # difference-set kind
    params: tuple = ()        # (v, k, lam) for difference sets
    elements: tuple = ()      # difference-set elements
    order: int = 0            # sign-matrix kind
    rows: tuple = ()          # sign-matrix rows as +/- strings


def fixture_search_dirs() -> list[Path]:
    dirs = []
    env = os.environ.get(FIXTURE_DIR_ENV)
    if env:
        dirs.append(Path(env))
    dirs.append(_DATA_DIR)
    return dirs


def fixture_path(name: str) -> Path:
    for d in fixture_search_dirs():
        p = d / (name + ".txt")
        if p.is_file():
            return p
    raise MissingFixture(
        "fixture %r not found (searched %s; set %s to add a directory)"
        % (name, ", ".join(str(d) for d in fixture_search_dirs()),
           FIXTURE_DIR_ENV))


def parse_fixture(text: str) -> Fixture:
    lines = [ln.rstrip() for ln in text.strip().splitlines()]
    if not lines or lines[0].strip() != FIXTURE_MAGIC:
        raise ValueError("missing fixture magic line")
    kind = label = provenance = None
    group_orders: tuple = ()
    params: tuple = ()
    order = 0
    body_at = None
    for idx, ln in enumerate(lines[1:], start=1):
        if ln in ("elements", "rows"):
            body_at = idx + 1
            break
        key, _, rest = ln.partition(" ")
        if key == "kind":
            kind = rest.strip()
        elif key == "label":
            label = rest.strip()
        elif key == "provenance":
            provenance = rest.strip()
        elif key == "group":
            group_orders = tuple(int(t) for t in rest.split())
        elif key == "params":
            params = tuple(int(t) for t in rest.split())
        elif key == "order":
            order = int(rest)
        else:
            raise ValueError("unknown fixture header line: %r" % ln)
    if kind not in ("difference-set", "sign-matrix") or body_at is None:
        raise ValueError("malformed fixture file")
    body = [t for ln in lines[body_at:] for t in ln.split()]
    if kind == "difference-set":
        elements = tuple(tuple(int(x) for x in t.split(",")) for t in body)
        return Fixture(kind, label or "", provenance or "",
                       group_orders=group_orders, params=params,
                       elements=elements)
    return Fixture(kind, label or "", provenance or "",
                   order=order, rows=tuple(body))


def format_fixture(fx: Fixture) -> str:
    out = [FIXTURE_MAGIC, "kind " + fx.kind]
    if fx.label:
        out.append("label " + fx.label)
    if fx.provenance:
        out.append("provenance " + fx.provenance)
    if fx.kind == "difference-set":
        out.append("group " + " ".join(str(o) for o in fx.group_orders))
        out.append("params " + " ".join(str(x) for x in fx.params))
        out.append("elements")
        toks = [",".join(str(x) for x in e) for e in fx.elements]
        for i in range(0, len(toks), 12):
            out.append(" ".join(toks[i:i + 12]))
    else:
        out.append("order %d" % fx.order)
        out.append("rows")
        out.extend(fx.rows)
    return "\n".join(out) + "\n"


def load_fixture(name: str) -> Fixture:
    return parse_fixture(fixture_path(name).read_text())


def fixture_difference_set(name: str) -> DifferenceSet:
    """Load a difference-set fixture and re-validate it by census."""
    fx = load_fixture(name)
    if fx.kind != "difference-set":
        raise ValueError("fixture %r is not a difference set" % name)
    v, k, lam = fx.params
    group = GroupDesc(fx.group_orders)
    if group.order != v or len(fx.elements) != k:
        raise NotADifferenceSet("fixture %r header disagrees with body" % name)
    return make_difference_set(group, fx.elements, lam,
                               source="fixture:%s" % name)


# -- registry of shipped designs ---------------------------------------------

# (v, k, lam, family, kwargs); every row is buildable on this machine
DESIGN_REGISTRY = (
    (13, 4, 1, "singer", {"n": 2, "q": 3}),
    (21, 5, 1, "singer", {"n": 2, "q": 4}),
    (37, 9, 2, "biquadratic", {"p": 37}),
    (45, 12, 3, "fixture", {"name": "45-12-3"}),
    (57, 8, 1, "singer", {"n": 2, "q": 7}),
    (73, 9, 1, "singer", {"n": 2, "q": 8}),
    (85, 21, 5, "singer", {"n": 3, "q": 4}),
    (101, 25, 6, "biquadratic", {"p": 101}),
    (109, 28, 7, "biquadratic", {"p": 109, "with_zero": True}),
    (121, 40, 13, "singer", {"n": 4, "q": 3}),
    (133, 33, 8, "fixture", {"name": "133-33-8"}),
    (197, 49, 12, "biquadratic", {"p": 197}),
)

_FAMILY_BUILDERS = {
    "qr": qr_difference_set,
    "biquadratic": biquadratic_difference_set,
    "singer": singer_difference_set,
    "fixture": fixture_difference_set,
}


def build_family(family: str, **kwargs) -> DifferenceSet:
    try:
        builder = _FAMILY_BUILDERS[family]
    except KeyError:
        raise ValueError("unknown design family %r (have %s)"
                         % (family, sorted(_FAMILY_BUILDERS)))
    return builder(**kwargs)


def registered_designs(v: int | None = None):
    """Registry rows, optionally filtered to one order v."""
    rows = DESIGN_REGISTRY
    if v is not None:
        rows = tuple(r for r in rows if r[0] == v)
    return rows


def build_registered(v: int) -> list[DifferenceSet]:
    return [build_family(fam, **kw) for (_, _, _, fam, kw)
            in registered_designs(v)]

"""
One-parameter degeneration of the diagonal of ``P^r x P^r`` onto a full union ``Q``.

Away from ``z = 0`` the fiber is cut out by
``z^{eps_j} x_i y_j - z^{eps_i} x_j y_i`` (a rescaling ``y_j -> z^{eps_j} y_j``
of the diagonal), where ``eps_j = n - k`` for ``j`` in block ``k``.  The
flat limit is never built; instead we check the two computable certificates:
the ``z = 0`` generators vanish on ``Q``, and every generic point of ``Q`` is
the limit of a moving point of the family.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GenericityError, InputError, ScopeError
from .exactmath import binom_poly, rat, rat_str
from .schemes import UnionSpec, hilbert_union


@dataclass(frozen=True)
class DegenerationFamily:
    spec: UnionSpec
    epsilons: tuple

    def block_of(self, j: int) -> int:
        for k, (p, m) in enumerate(zip(self.spec.p_seq, self.spec.mults)):
            if p <= j <= p + m:
                return k
        raise InputError(f"index {j} outside 0..{self.spec.r}")

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "epsilons": list(self.epsilons),
                "generators": [g.to_json() for g in family_generators(self)]}


def make_family(spec: UnionSpec) -> DegenerationFamily:
    if not spec.full:
        raise ScopeError(f"spec r={spec.r}, mults={list(spec.mults)} is not full")
    eps = []
    for k, m in enumerate(spec.mults):
        eps.extend([spec.n - k] * (m + 1))
    return DegenerationFamily(spec, tuple(eps))


@dataclass(frozen=True)
class FamilyGenerator:
    """``x_i y_j - z^power x_j y_i``, the raw generator divided by ``z^{eps_j}``."""

    i: int
    j: int
    eps_i: int
    eps_j: int

    @property
    def power(self) -> int:
        return self.eps_i - self.eps_j

    def __str__(self) -> str:
        zf = "" if self.power == 0 else ("z*" if self.power == 1 else f"z^{self.power}*")
        return f"x{self.i}*y{self.j} - {zf}x{self.j}*y{self.i}"

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "eps_i": self.eps_i, "eps_j": self.eps_j,
                "z_power": self.power}


def family_generators(fam: DegenerationFamily) -> list[FamilyGenerator]:
    r, eps = fam.spec.r, fam.epsilons
    return [FamilyGenerator(i, j, eps[i], eps[j]) for i in range(r + 1) for j in range(i + 1, r + 1)]


@dataclass(frozen=True)
class Binomial:
    """``c1 * x_i y_j + c2 * x_j y_i`` with exact coefficients; zero terms dropped."""

    terms: tuple  # ((coef, x index, y index), ...)

    def evaluate(self, a: Sequence, b: Sequence) -> Fraction:
        return sum((c * a[xi] * b[yi] for c, xi, yi in self.terms), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for c, xi, yi in self.terms:
            mono = f"x{xi}*y{yi}"
            body = mono if abs(c) == 1 else f"{rat_str(abs(c))}*{mono}"
            if not out:
                out = body if c > 0 else f"-{body}"
            else:
                out += f" + {body}" if c > 0 else f" - {body}"
        return out

    def to_json(self) -> list:
        return [[rat_str(c), xi, yi] for c, xi, yi in self.terms]


def _binomial(c1, i, j, c2) -> Binomial:
    terms = tuple(t for t in ((rat(c1), i, j), (rat(c2), j, i)) if t[0] != 0)
    return Binomial(terms)


def specialize(fam: DegenerationFamily, z0) -> list[Binomial]:
    """Generators at ``z = z0`` (``0^0 = 1``, so same-block minors survive at ``z = 0``)."""
    z0 = rat(z0)
    return [_binomial(1, g.i, g.j, -(z0 ** g.power)) for g in family_generators(fam)]


def diagonal_minors(r: int) -> list[Binomial]:
    return [_binomial(1, i, j, -1) for i in range(r + 1) for j in range(i + 1, r + 1)]


def rescaled_diagonal(fam: DegenerationFamily, z0) -> list[Binomial]:
    """Diagonal minors after ``y_j -> z0^{eps_j} y_j``, each divided by ``z0^{eps_j}``."""
    z0 = rat(z0)
    if z0 == 0:
        raise InputError("the rescaling is only defined for z0 != 0")
    eps = fam.epsilons
    out = []
    for i in range(fam.spec.r + 1):
        for j in range(i + 1, fam.spec.r + 1):
            c1, c2 = z0 ** eps[j], -(z0 ** eps[i])
            out.append(_binomial(1, i, j, c2 / c1))
    return out


def flatness_shadow(fam: DegenerationFamily) -> bool:
    """Hilbert polynomial of ``Q`` equals that of the diagonal, ``binom(s+t+r, r)``."""
    r = fam.spec.r
    return hilbert_union(fam.spec) == binom_poly("s+t", r, r)


# ---------------------------------------------------------------------------
# symbolic vanishing on component parameterizations


def component_parameterization(spec: UnionSpec, k: int) -> tuple[list, list]:
    """Coordinates of a generic point of component ``k`` as monomials in symbols.

    Each coordinate is ``None`` (zero) or a ``Counter`` of symbol exponents:
    free x's are ``a<j>``, free y's ``b<j>``, and the shared block is
    ``lam * w<j>`` on the x side and ``mu * w<j>`` on the y side.
    """
    r, p, m = spec.r, spec.p_seq[k], spec.mults[k]
    xs, ys = [], []
    for j in range(r + 1):
        if j < p:
            xs.append(None)
            ys.append(Counter({f"b{j}": 1}))
        elif j <= p + m:
            xs.append(Counter({"lam": 1, f"w{j}": 1}))
            ys.append(Counter({"mu": 1, f"w{j}": 1}))
        else:
            xs.append(Counter({f"a{j}": 1}))
            ys.append(None)
    return xs, ys


def _substitute(binom: Binomial, xs: list, ys: list) -> dict:
    poly: dict = {}
    for c, xi, yi in binom.terms:
        if xs[xi] is None or ys[yi] is None:
            continue
        key = tuple(sorted((xs[xi] + ys[yi]).items()))
        poly[key] = poly.get(key, 0) + c
    return {key: c for key, c in poly.items() if c}


def symbolic_vanishing(fam: DegenerationFamily) -> list[tuple]:
    """``(component, generator)`` pairs where a ``z = 0`` generator fails to vanish identically."""
    gens = specialize(fam, 0)
    bad = []
    for k in range(fam.spec.n + 1):
        xs, ys = component_parameterization(fam.spec, k)
        for g in gens:
            if _substitute(g, xs, ys):
                bad.append((k, str(g)))
    return bad


# ---------------------------------------------------------------------------
# points


def _canonical(v: Sequence) -> tuple:
    v = tuple(rat(x) for x in v)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise InputError("projective coordinate vector is identically zero")
    return tuple(x / lead for x in v)


@dataclass(frozen=True)
class BiPoint:
    a: tuple
    b: tuple

    @classmethod
    def make(cls, a: Sequence, b: Sequence) -> "BiPoint":
        if len(a) != len(b):
            raise InputError("both coordinate vectors need length r + 1")
        return cls(_canonical(a), _canonical(b))

    def to_json(self) -> dict:
        return {"a": [rat_str(x) for x in self.a], "b": [rat_str(x) for x in self.b]}


def _normalize_on_block(fam: DegenerationFamily, pt: BiPoint, k: int) -> tuple[list, list]:
    """Representatives of ``pt`` with equal block coordinates, or GenericityError."""
    spec = fam.spec
    r, p, m = spec.r, spec.p_seq[k], spec.mults[k]
    if len(pt.a) != r + 1:
        raise InputError(f"point has {len(pt.a)} coordinates, expected {r + 1}")
    if not 0 <= k <= spec.n:
        raise InputError(f"block {k} outside 0..{spec.n}")
    a, b = list(pt.a), list(pt.b)
    if any(a[:p]) or any(b[p + m + 1:]):
        raise GenericityError(f"point is not on component {k}: wrong coordinates vanish")
    ablk, bblk = a[p:p + m + 1], b[p:p + m + 1]
    if not any(ablk) or not any(bblk):
        raise GenericityError("a block coordinate vector is identically zero")
    piv = next(t for t, x in enumerate(ablk) if x != 0)
    if bblk[piv] == 0:
        raise GenericityError(f"point is not on component {k}: block rows are not proportional")
    scale = ablk[piv] / bblk[piv]
    b = [x * scale for x in b]
    if b[p:p + m + 1] != ablk:
        raise GenericityError(f"point is not on component {k}: block rows are not proportional")
    return a, b


def _laurent_limit(terms: list) -> tuple:
    """Limit at ``z = 0`` of ``(coef * z^exp)_j``: keep the entries of minimal exponent."""
    live = [e for c, e in terms if c != 0]
    low = min(live)
    return tuple(c if c != 0 and e == low else Fraction(0) for c, e in terms)


def limit_of_point(fam: DegenerationFamily, pt: BiPoint, block: int) -> BiPoint:
    """Follow the moving point ``((c_j z^{eps_j}), (c_j))`` to ``z = 0``.

    ``c_j = a_j z^{-eps_j}`` for ``j >= p_k`` and ``b_j z^{-eps_{p_k}}``
    below; each side is divided by its lowest power of ``z``.  The limit
    must be the point itself.
    """
    a, b = _normalize_on_block(fam, pt, block)
    eps, p = fam.epsilons, fam.spec.p_seq[block]
    c = []  # (coefficient, z exponent)
    for j in range(fam.spec.r + 1):
        if j >= p:
            c.append((a[j], -eps[j]))
        else:
            c.append((b[j], -eps[p]))
    left = _laurent_limit([(coef, e + eps[j]) for j, (coef, e) in enumerate(c)])
    right = _laurent_limit(c)
    out = BiPoint.make(left, right)
    if out != pt:
        raise AssertionError(f"limit {out.to_json()} differs from the point {pt.to_json()}")
    return out


def check_point(fam: DegenerationFamily, pt: BiPoint) -> list[str]:
    """The ``z = 0`` generators that do not vanish at ``pt``."""
    return [str(g) for g in specialize(fam, 0) if g.evaluate(pt.a, pt.b) != 0]


def random_component_point(rng: random.Random, spec: UnionSpec, k: int) -> BiPoint:
    """A random rational point of component ``k`` meeting the genericity normalization."""
    r, p, m = spec.r, spec.p_seq[k], spec.mults[k]
    nz = lambda: Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 5))
    any_q = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    w = [any_q() for _ in range(m + 1)]
    w[rng.randrange(m + 1)] = nz()
    lam, mu = nz(), nz()
    a = [Fraction(0)] * (r + 1)
    b = [Fraction(0)] * (r + 1)
    for j in range(r + 1):
        if j < p:
            b[j] = any_q()
        elif j <= p + m:
            a[j], b[j] = lam * w[j - p], mu * w[j - p]
        else:
            a[j] = any_q()
    return BiPoint.make(a, b)


@dataclass
class SampleReport:
    seed: int
    count: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"seed": self.seed, "count": self.count,
                "verdict": "PASS" if self.passed else "FAIL", "failures": self.failures}


def sample_containment(fam: DegenerationFamily, seed: int, count: int) -> SampleReport:
    rng = random.Random(seed)
    rep = SampleReport(seed, count)
    for _ in range(count):
        k = rng.randint(0, fam.spec.n)
        pt = random_component_point(rng, fam.spec, k)
        bad = check_point(fam, pt)
        if bad:
            rep.failures.append({"block": k, "point": pt.to_json(), "generators": bad})
            continue
        try:
            limit_of_point(fam, pt, k)
        except (AssertionError, GenericityError) as exc:
            rep.failures.append({"block": k, "point": pt.to_json(), "limit": str(exc)})
    return rep

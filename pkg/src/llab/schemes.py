"""
Determinantal schemes ``Q_{p,q,m}`` and their unions inside ``P^r x P^r``.

``Q_{p,q,m}`` lives in ``P^{m+q} x P^{m+p}``; the first factor has
coordinates ``x_p .. x_{m+p+q}`` and the second ``y_0 .. y_{m+p}``.  The
scheme is cut out by the 2x2 minors ``x_i y_j - x_j y_i`` for
``p <= i < j <= m+p``.  Indices are kept as they are so that the component
embeddings into ``P^r x P^r`` are literal coordinate inclusions.

``m = -1`` is allowed and stands for the full product ``P^{q-1} x P^{p-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError, InvalidSpecError, NoPredecessorError, WrongCaseError
from .exactmath import BivarPoly, binom_poly


def coord_name(kind: str, k: int) -> str:
    return f"{kind}{k}"


def parse_coord(name: str) -> tuple[str, int]:
    if not isinstance(name, str) or len(name) < 2 or name[0] not in "xy" or not name[1:].isdigit():
        raise InputError(f"bad coordinate name {name!r}")
    return name[0], int(name[1:])


@dataclass(frozen=True)
class IdealGenerators:
    """Coordinates set to zero plus 2x2 minors ``x_i y_j - x_j y_i`` (``i < j``)."""

    linear: tuple = ()   # coordinate names such as "x0", "y3"
    minors: tuple = ()   # (i, j) pairs with i < j

    def __post_init__(self):
        for name in self.linear:
            parse_coord(name)
        for i, j in self.minors:
            if not i < j:
                raise InputError(f"minor pair ({i},{j}) must satisfy i < j")
        if len(set(self.minors)) != len(self.minors):
            raise InputError("minor pairs must be listed once")

    def __add__(self, other: "IdealGenerators") -> "IdealGenerators":
        lin = tuple(dict.fromkeys(self.linear + other.linear))
        mins = tuple(dict.fromkeys(self.minors + other.minors))
        return IdealGenerators(lin, mins)

    def to_json(self) -> dict:
        return {"linear": list(self.linear), "minors": [list(p) for p in self.minors]}


@dataclass(frozen=True)
class MinorScheme:
    p: int
    q: int
    m: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.m < -1:
            raise InputError(f"need p, q >= 0 and m >= -1, got {self}")
        if self.m == -1 and (self.p == 0 or self.q == 0):
            raise InputError("m = -1 needs p, q >= 1 (otherwise a factor is empty)")

    @property
    def x_coords(self) -> range:
        return range(self.p, self.m + self.p + self.q + 1)

    @property
    def y_coords(self) -> range:
        return range(0, self.m + self.p + 1)

    @property
    def ambient(self) -> tuple[int, int]:
        """Dimensions of the two projective factors."""
        return self.m + self.q, self.m + self.p

    @property
    def dimension(self) -> int:
        return self.m + self.p + self.q

    @property
    def is_product(self) -> bool:
        return self.m <= 0

    def generators(self) -> IdealGenerators:
        lo, hi = self.p, self.m + self.p
        return IdealGenerators((), tuple((i, j) for i in range(lo, hi + 1) for j in range(i + 1, hi + 1)))

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "m": self.m,
                "ambient": list(self.ambient), "dimension": self.dimension}


def hilbert_product(a: int, b: int) -> BivarPoly:
    """Hilbert polynomial of ``P^a x P^b``."""
    return binom_poly("s", a, a) * binom_poly("t", b, b)


def hilbert_minor(sch: MinorScheme) -> BivarPoly:
    p, q, m = sch.p, sch.q, sch.m
    if m < 0:
        raise WrongCaseError("m = -1 is the full product; use hilbert_product / hilbert_scheme")
    out = BivarPoly.zero()
    for l in range(m + 1):
        out = out + binom_poly("s", q + l, q + l) * binom_poly("t", p + m - l, p + m - l)
    for l in range(m):
        out = out - binom_poly("s", q + l, q + l) * binom_poly("t", p + m - 1 - l, p + m - 1 - l)
    return out


def hilbert_scheme(sch: MinorScheme) -> BivarPoly:
    """Hilbert polynomial of either case of :class:`MinorScheme`."""
    if sch.m == -1:
        return hilbert_product(sch.q - 1, sch.p - 1)
    return hilbert_minor(sch)


# ---------------------------------------------------------------------------
# unions


@dataclass(frozen=True)
class UnionSpec:
    r: int
    mults: tuple
    p_seq: tuple
    q_seq: tuple

    @property
    def n(self) -> int:
        return len(self.mults) - 1

    @property
    def top(self) -> int:
        """``p_n + m_n``, the last y-index used by any component."""
        return self.p_seq[-1] + self.mults[-1]

    @property
    def full(self) -> bool:
        return self.top == self.r

    def to_json(self) -> dict:
        return {"r": self.r, "mults": list(self.mults)}


def make_union_spec(r: int, mults: Sequence[int]) -> UnionSpec:
    mults = tuple(mults)
    if not isinstance(r, int) or r < 0:
        raise InvalidSpecError(f"r must be a nonnegative integer, got {r!r}")
    if not mults:
        raise InvalidSpecError("mults must be nonempty")
    if any(not isinstance(m, int) or m < 0 for m in mults):
        raise InvalidSpecError(f"mults must be nonnegative integers, got {list(mults)}")
    if sum(m + 1 for m in mults) > r + 1:
        raise InvalidSpecError(f"sum of (m_i + 1) = {sum(m + 1 for m in mults)} exceeds r + 1 = {r + 1}")
    p_seq = [0]
    for m in mults[:-1]:
        p_seq.append(p_seq[-1] + m + 1)
    q_seq = tuple(r - m - p for m, p in zip(mults, p_seq))
    return UnionSpec(r, mults, tuple(p_seq), q_seq)


def union_spec_from_json(doc) -> UnionSpec:
    if not isinstance(doc, dict) or "r" not in doc or "mults" not in doc:
        raise InvalidSpecError('union spec needs keys "r" and "mults"')
    return make_union_spec(doc["r"], doc["mults"])


def hilbert_union(spec: UnionSpec) -> BivarPoly:
    r, top = spec.r, spec.top
    out = BivarPoly.zero()
    for l in range(top + 1):
        out = out + binom_poly("s", r - l, r - l) * binom_poly("t", l, l)
    for l in range(top):
        out = out - binom_poly("s", r - 1 - l, r - 1 - l) * binom_poly("t", l, l)
    return out


def component_schemes(spec: UnionSpec) -> list[tuple[MinorScheme, IdealGenerators]]:
    """Each component ``Q_i`` with the coordinate vanishing that places it in ``P^r x P^r``."""
    out = []
    for p, q, m in zip(spec.p_seq, spec.q_seq, spec.mults):
        lin = tuple(coord_name("x", k) for k in range(p)) + \
            tuple(coord_name("y", k) for k in range(m + p + 1, spec.r + 1))
        out.append((MinorScheme(p, q, m), IdealGenerators(lin, ())))
    return out


def component_ideal(spec: UnionSpec, index: int) -> IdealGenerators:
    """Full ideal of component ``index`` inside ``P^r x P^r``."""
    sch, emb = component_schemes(spec)[index]
    return emb + sch.generators()


@dataclass(frozen=True)
class LinearProduct:
    """``V(x_0..x_{p-1}, y_p..y_r)``, a product ``P^{r-p} x P^{p-1}``."""

    r: int
    p: int

    @property
    def vanishing(self) -> tuple:
        return tuple(coord_name("x", k) for k in range(self.p)) + \
            tuple(coord_name("y", k) for k in range(self.p, self.r + 1))

    @property
    def ambient(self) -> tuple[int, int]:
        return self.r - self.p, self.p - 1

    def hilbert(self) -> BivarPoly:
        return hilbert_product(*self.ambient)

    def to_json(self) -> dict:
        return {"vanishing": list(self.vanishing), "ambient": list(self.ambient),
                "hilbert": self.hilbert().to_json()}


def consecutive_intersection(spec: UnionSpec, n_index: int) -> LinearProduct:
    """Intersection of component ``n_index`` with the union of the earlier ones."""
    if n_index < 1:
        raise NoPredecessorError("component 0 has no predecessor")
    if n_index > spec.n:
        raise InputError(f"component index {n_index} out of range 1..{spec.n}")
    return LinearProduct(spec.r, spec.p_seq[n_index])


def hilbert_union_recursive(spec: UnionSpec) -> BivarPoly:
    """Hilbert polynomial rebuilt from components by inclusion-exclusion.

    ``P(Q' u Q_n) = P(Q') + P(Q_n) - P(Q' n Q_n)``, recursing on the number
    of components.  Used as an independent check on :func:`hilbert_union`.
    """
    comps = component_schemes(spec)
    out = hilbert_minor(comps[0][0])
    for k in range(1, len(comps)):
        out = out + hilbert_minor(comps[k][0]) - consecutive_intersection(spec, k).hilbert()
    return out


def all_union_specs(r: int) -> list[UnionSpec]:
    """Every valid spec with this ``r`` (all compositions of at most ``r + 1``)."""
    out = []

    def rec(prefix: list[int], used: int):
        if prefix:
            out.append(make_union_spec(r, prefix))
        for m in range(0, r + 1 - used):
            rec(prefix + [m], used + m + 1)

    rec([], 0)
    return out

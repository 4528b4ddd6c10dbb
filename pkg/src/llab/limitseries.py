"""
Limit linear series on ``X = Y u Z`` as explicit linear-algebra data.

A series of degree ``d`` and dimension ``r`` is stored as coordinatized
section spaces ``Gamma_0 .. Gamma_d`` (``Gamma_i`` standing for the global
sections of the ``i``-th twist), linking maps ``up[i]: Gamma_i -> Gamma_{i+1}``
and ``down[i]: Gamma_{i+1} -> Gamma_i``, the marked subspaces ``Y0[i]`` and
``Z0[i]`` of sections vanishing on ``Y`` resp. ``Z``, and the chosen
``(r+1)``-dimensional subspaces ``V[i]``.

Matrices act on column vectors, so ``up[i]`` has shape ``N_{i+1} x N_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import (DegenerateSeriesError, EmptyStratumError, ExactnessRequiredError,
                     GenerationError, InputError)
from .exactmath import Mat, Subspace, inverse, kernel_basis, rat
from .schemes import MinorScheme, UnionSpec, make_union_spec

FORMAT = "llab/1"


@dataclass(frozen=True)
class ExplicitLimitSeries:
    d: int
    r: int
    dims: tuple
    up: tuple
    down: tuple
    Y0: tuple
    Z0: tuple
    V: tuple

    @cached_property
    def _boundary(self) -> tuple:
        return tuple((self.V[i] & self.Y0[i], self.V[i] & self.Z0[i]) for i in range(self.d + 1))

    def to_json(self) -> dict:
        return {
            "format": FORMAT,
            "kind": "limit-series",
            "d": self.d,
            "r": self.r,
            "dims": list(self.dims),
            "up": [M.to_json() for M in self.up],
            "down": [M.to_json() for M in self.down],
            "Y0": [S.to_json() for S in self.Y0],
            "Z0": [S.to_json() for S in self.Z0],
            "V": [S.to_json() for S in self.V],
        }


def _basis_from_json(data, ambient: int, where: str) -> Subspace:
    if not isinstance(data, list):
        raise InputError(f"{where}: expected a list of basis vectors")
    for k, v in enumerate(data):
        if not isinstance(v, list) or len(v) != ambient:
            raise InputError(f"{where}[{k}]: expected a vector of length {ambient}")
    return Subspace.span([[rat(x) for x in v] for v in data], ambient)


def series_from_json(doc) -> ExplicitLimitSeries:
    """Parse a series document; shape problems raise :class:`InputError` with a location."""
    if not isinstance(doc, dict):
        raise InputError("series document must be an object")
    if doc.get("format") != FORMAT:
        raise InputError(f'format: expected "{FORMAT}", got {doc.get("format")!r}')
    for key in ("d", "r", "dims", "up", "down", "Y0", "Z0", "V"):
        if key not in doc:
            raise InputError(f"{key}: missing")
    d, r = doc["d"], doc["r"]
    if not isinstance(d, int) or d < 0:
        raise InputError("d: expected a nonnegative integer")
    if not isinstance(r, int) or r < 0:
        raise InputError("r: expected a nonnegative integer")
    dims = doc["dims"]
    if not isinstance(dims, list) or len(dims) != d + 1 or \
            any(not isinstance(n, int) or n < 0 for n in dims):
        raise InputError(f"dims: expected {d + 1} nonnegative integers")
    for key, count in (("up", d), ("down", d), ("Y0", d + 1), ("Z0", d + 1), ("V", d + 1)):
        if not isinstance(doc[key], list) or len(doc[key]) != count:
            raise InputError(f"{key}: expected a list of length {count}")
    up, down = [], []
    for i in range(d):
        try:
            up.append(Mat.from_json(doc["up"][i], dims[i + 1], dims[i]))
            down.append(Mat.from_json(doc["down"][i], dims[i], dims[i + 1]))
        except InputError as exc:
            raise InputError(f"up/down[{i}]: {exc}") from exc
    sub = {key: tuple(_basis_from_json(doc[key][i], dims[i], f"{key}[{i}]") for i in range(d + 1))
           for key in ("Y0", "Z0", "V")}
    return ExplicitLimitSeries(d, r, tuple(dims), tuple(up), tuple(down),
                               sub["Y0"], sub["Z0"], sub["V"])


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)  # (kind, message)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def kinds(self) -> set:
        return {k for k, _ in self.violations}

    def to_json(self) -> dict:
        return {"verdict": "PASS" if self.passed else "FAIL",
                "violations": [{"kind": k, "message": m} for k, m in self.violations]}


def validate(series: ExplicitLimitSeries) -> ValidationReport:
    """Check every structural axiom; returns all violations instead of raising."""
    rep = ValidationReport()
    bad = rep.violations.append
    d, r, N = series.d, series.r, series.dims
    if len(N) != d + 1 or len(series.up) != d or len(series.down) != d or \
            any(len(x) != d + 1 for x in (series.Y0, series.Z0, series.V)):
        bad(("shape", "component lists have the wrong lengths"))
        return rep
    for i in range(d):
        if (series.up[i].rows, series.up[i].cols) != (N[i + 1], N[i]):
            bad(("shape", f"up[{i}] is not {N[i + 1]}x{N[i]}"))
        if (series.down[i].rows, series.down[i].cols) != (N[i], N[i + 1]):
            bad(("shape", f"down[{i}] is not {N[i]}x{N[i + 1]}"))
    for key in ("Y0", "Z0", "V"):
        for i, S in enumerate(getattr(series, key)):
            if S.ambient_dim != N[i]:
                bad(("shape", f"{key}[{i}] lives in dimension {S.ambient_dim}, not {N[i]}"))
    if rep.violations:
        return rep

    for i, Vi in enumerate(series.V):
        if Vi.dim != r + 1:
            bad(("dimension", f"dim V[{i}] = {Vi.dim}, expected {r + 1}"))
        if (series.Y0[i] & series.Z0[i]).dim:
            bad(("marked", f"Y0[{i}] and Z0[{i}] intersect"))
    for i in range(d):
        U, D = series.up[i], series.down[i]
        if not series.V[i + 1].contains(series.V[i].image(U)):
            bad(("linkage", f"up[{i}](V[{i}]) is not inside V[{i + 1}]"))
        if not series.V[i].contains(series.V[i + 1].image(D)):
            bad(("linkage", f"down[{i}](V[{i + 1}]) is not inside V[{i}]"))
        if not (D @ U).is_zero():
            bad(("ambient", f"down[{i}] o up[{i}] is not zero"))
        if not (U @ D).is_zero():
            bad(("ambient", f"up[{i}] o down[{i}] is not zero"))
        if kernel_basis(U) != series.Z0[i]:
            bad(("kernel", f"ker up[{i}] differs from Z0[{i}]"))
        if kernel_basis(D) != series.Y0[i + 1]:
            bad(("kernel", f"ker down[{i}] differs from Y0[{i + 1}]"))
        if not series.Y0[i + 1].contains(Subspace.full(N[i]).image(U)):
            bad(("image", f"im up[{i}] is not inside Y0[{i + 1}]"))
        if not series.Z0[i].contains(Subspace.full(N[i + 1]).image(D)):
            bad(("image", f"im down[{i}] is not inside Z0[{i}]"))
    return rep


def boundary_subspaces(series: ExplicitLimitSeries, i: int) -> tuple[Subspace, Subspace]:
    """``(V_i^{Y,0}, V_i^{Z,0})``: sections in ``V_i`` vanishing on ``Y`` resp. ``Z``."""
    if not 0 <= i <= series.d:
        raise InputError(f"index {i} outside [0, {series.d}]")
    return series._boundary[i]


def _quotient_dim(series: ExplicitLimitSeries, i: int) -> int:
    y, z = boundary_subspaces(series, i)
    return series.V[i].dim - y.dim - z.dim


# ---------------------------------------------------------------------------
# exactness


def is_exact_by_subspaces(series: ExplicitLimitSeries) -> bool:
    for i in range(series.d):
        y_next = boundary_subspaces(series, i + 1)[0]
        z_here = boundary_subspaces(series, i)[1]
        if series.V[i].image(series.up[i]) != y_next:
            return False
        if series.V[i + 1].image(series.down[i]) != z_here:
            return False
    return True


def is_exact_by_dimensions(series: ExplicitLimitSeries) -> bool:
    """``dim V_{i+1}^{Y,0} + dim V_i^{Z,0} = r + 1`` for every ``i``."""
    return all(
        boundary_subspaces(series, i + 1)[0].dim + boundary_subspaces(series, i)[1].dim
        == series.r + 1
        for i in range(series.d))


def is_exact(series: ExplicitLimitSeries) -> bool:
    a, b = is_exact_by_subspaces(series), is_exact_by_dimensions(series)
    if a != b:
        raise AssertionError("subspace and dimension exactness tests disagree")
    return a


def _require_exact(series: ExplicitLimitSeries) -> None:
    rep = validate(series)
    if not rep.passed:
        raise ExactnessRequiredError(f"series is not valid: {rep.violations[0][1]}")
    if not is_exact(series):
        raise ExactnessRequiredError("series is not exact")


# ---------------------------------------------------------------------------
# diagonalization


def iterated_image(series: ExplicitLimitSeries, v: Sequence, start: int, target: int) -> tuple:
    """Push ``v`` from ``Gamma_start`` to ``Gamma_target`` along the linking maps."""
    v = tuple(v)
    i = start
    while i < target:
        v = series.up[i].apply(v)
        i += 1
    while i > target:
        v = series.down[i - 1].apply(v)
        i -= 1
    return v


@dataclass(frozen=True)
class Diagonalization:
    jump_indices: tuple
    sections: tuple
    jump_values: tuple
    mults: tuple

    @property
    def n(self) -> int:
        return len(self.mults) - 1

    def to_json(self) -> dict:
        from .exactmath import rat_str
        return {"jump_indices": list(self.jump_indices), "jump_values": list(self.jump_values),
                "mults": list(self.mults),
                "sections": [[rat_str(x) for x in s] for s in self.sections]}


def diagonalize(series: ExplicitLimitSeries) -> Diagonalization:
    """Jump indices and sections whose iterated images give a basis of every ``V_i``.

    At each level the sections extend ``V_i^{Y,0} + V_i^{Z,0}`` to ``V_i``
    using rows of the canonical echelon basis, lowest pivot first.
    """
    _require_exact(series)
    y0 = boundary_subspaces(series, 0)[0]
    zd = boundary_subspaces(series, series.d)[1]
    if y0.dim or zd.dim:
        raise DegenerateSeriesError("V_0 has sections vanishing on Y or V_d has sections vanishing on Z")
    jumps, sections = [], []
    for i in range(series.d + 1):
        y, z = boundary_subspaces(series, i)
        for v in series.V[i].complement_basis(y + z):
            jumps.append(i)
            sections.append(v)
    if len(sections) != series.r + 1:
        raise AssertionError(f"found {len(sections)} sections, expected {series.r + 1}")
    for i in range(series.d + 1):
        imgs = [iterated_image(series, s, j, i) for s, j in zip(sections, jumps)]
        span = Subspace.span(imgs, series.dims[i])
        if span != series.V[i] or span.dim != len(imgs):
            raise AssertionError(f"iterated images do not form a basis of V[{i}]")
    values = tuple(sorted(set(jumps)))
    mults = tuple(jumps.count(v) - 1 for v in values)
    return Diagonalization(tuple(jumps), tuple(sections), values, mults)


def jump_values_by_direct_sum(series: ExplicitLimitSeries) -> dict:
    """``{i: dim V_i / (V_i^{Y,0} + V_i^{Z,0})}`` for the levels where this is nonzero."""
    return {i: q for i in range(series.d + 1) if (q := _quotient_dim(series, i))}


def empty_range(series: ExplicitLimitSeries) -> tuple[int, int]:
    """``(i_low, i_high)``: the levels where ``V_i`` is not ``V_i^{Y,0}`` or ``V_i^{Z,0}``."""
    levels = []
    for i in range(series.d + 1):
        y, z = boundary_subspaces(series, i)
        if y != series.V[i] and z != series.V[i]:
            levels.append(i)
    if not levels:
        raise DegenerateSeriesError("every V_i consists of sections vanishing on Y or on Z")
    lo, hi = levels[0], levels[-1]
    if levels != list(range(lo, hi + 1)):
        raise DegenerateSeriesError(f"nonempty levels {levels} are not an interval")
    if validate(series).passed and is_exact(series):
        if lo > 0 and boundary_subspaces(series, lo)[0].dim:
            raise AssertionError(f"exact series with V_{lo}^(Y,0) != 0 at i_low")
        if hi < series.d and boundary_subspaces(series, hi)[1].dim:
            raise AssertionError(f"exact series with V_{hi}^(Z,0) != 0 at i_high")
    return lo, hi


def pg_component(series: ExplicitLimitSeries, i: int) -> MinorScheme:
    """Descriptor of the stratum at level ``i`` inside ``P(V_i|_Y) x P(V_i|_Z)``."""
    _require_exact(series)
    y, z = boundary_subspaces(series, i)
    if y == series.V[i] or z == series.V[i]:
        raise EmptyStratumError(f"V_{i} has no section vanishing on neither component")
    p, q = y.dim, z.dim
    return MinorScheme(p, q, series.r - p - q)


def pg_union(series: ExplicitLimitSeries) -> UnionSpec:
    diag = diagonalize(series)
    spec = make_union_spec(series.r, diag.mults)
    if not spec.full:
        raise AssertionError("union spec from an exact series must be full")
    return spec


# ---------------------------------------------------------------------------
# fixtures and generation


def worked_fixture() -> ExplicitLimitSeries:
    """Smallest hand-checkable exact series: ``d = 1``, ``r = 0``."""
    up = Mat.from_rows([[0, 0], [1, 0]])    # e1 -> f2, e2 -> 0
    down = Mat.from_rows([[0, 0], [1, 0]])  # f1 -> e2, f2 -> 0
    e1, e2 = (1, 0), (0, 1)
    span = lambda *vs: Subspace.span(vs, 2)
    return ExplicitLimitSeries(
        1, 0, (2, 2), (up,), (down,),
        Y0=(Subspace.zero(2), span(e2)),
        Z0=(span(e2), span(e1)),
        V=(span(e1), span(e2)),
    )


def _random_invertible(rng: random.Random, n: int) -> Mat:
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            c = rng.choice((-2, -1, 1, 2))
            rows[b] = [x + c * y for x, y in zip(rows[b], rows[a])]
    rng.shuffle(rows)
    return Mat.from_rows(rows, n)


def generate_exact(seed: int, r: int, d: int, jump_indices: Sequence[int],
                   padding: int = 2) -> ExplicitLimitSeries:
    """An exact series whose diagonalization has the given jump indices.

    Model: a ``Y``-side space ``F`` filtered by order (``F_i`` = vectors of
    order ``>= i``) and a ``Z``-side space ``G`` filtered the other way
    (``G_i`` = vectors of order ``<= i``); ``Gamma_i = F_i + G_i`` with
    ``up(f, g) = (0, g)`` and ``down(f, g) = (f, 0)``.  Section ``j`` is a pair
    ``(f_j, g_j)`` at level ``i_j``, and ``V_i`` is spanned by the iterated
    images.  Each ``Gamma_i`` is then scrambled by a random change of basis.
    """
    J = list(jump_indices)
    if len(J) != r + 1:
        raise GenerationError(f"need r + 1 = {r + 1} jump indices, got {len(J)}")
    if any(b < a for a, b in zip(J, J[1:])) or (J and (J[0] < 0 or J[-1] > d)):
        raise GenerationError(f"jump indices must be nondecreasing in [0, {d}]: {J}")
    if padding < 0:
        raise GenerationError("padding must be nonnegative")
    rng = random.Random(seed)
    # orders: first r+1 basis vectors belong to the sections, the rest are padding
    oF = J + [rng.randint(0, d) for _ in range(rng.randint(0, padding))]
    oG = J + [rng.randint(0, d) for _ in range(rng.randint(0, padding))]
    nF, nG = len(oF), len(oG)

    def vec(own: int, orders: list, ok) -> list:
        v = [0] * len(orders)
        v[own] = 1
        for k in range(r + 1, len(orders)):
            if ok(orders[k]):
                v[k] = rng.randint(-3, 3)
        return v

    f = [vec(j, oF, lambda o, lv=J[j]: o >= lv) for j in range(r + 1)]
    g = [vec(j, oG, lambda o, lv=J[j]: o <= lv) for j in range(r + 1)]

    Fidx = [[k for k in range(nF) if oF[k] >= i] for i in range(d + 1)]
    Gidx = [[k for k in range(nG) if oG[k] <= i] for i in range(d + 1)]
    dims = tuple(len(Fidx[i]) + len(Gidx[i]) for i in range(d + 1))

    def coords(i: int, fv, gv) -> list:
        return [fv[k] for k in Fidx[i]] + [gv[k] for k in Gidx[i]]

    zF, zG = [0] * nF, [0] * nG
    T = [_random_invertible(rng, n) for n in dims]
    Tinv = [inverse(M) for M in T]

    def plain_map(i: int, target: int, keep_f: bool) -> Mat:
        cols = []
        for k in Fidx[i]:
            fv = [int(a == k) for a in range(nF)]
            cols.append(coords(target, fv if keep_f else zF, zG))
        for k in Gidx[i]:
            gv = [int(a == k) for a in range(nG)]
            cols.append(coords(target, zF, zG if keep_f else gv))
        return Mat.from_rows(list(zip(*cols)) if cols else [[] for _ in range(dims[target])],
                             dims[i])

    up = tuple(T[i + 1] @ plain_map(i, i + 1, False) @ Tinv[i] for i in range(d))
    down = tuple(T[i] @ plain_map(i + 1, i, True) @ Tinv[i + 1] for i in range(d))

    def subspace(i: int, vectors: list) -> Subspace:
        return Subspace.span([T[i].apply(v) for v in vectors], dims[i])

    Y0, Z0, V = [], [], []
    for i in range(d + 1):
        nf, ng = len(Fidx[i]), len(Gidx[i])
        unit = lambda a, n: [int(a == b) for b in range(n)]
        Z0.append(subspace(i, [unit(a, nf + ng) for a in range(nf)]))
        Y0.append(subspace(i, [unit(nf + a, nf + ng) for a in range(ng)]))
        gens = []
        for j in range(r + 1):
            if J[j] == i:
                gens.append(coords(i, f[j], g[j]))
            elif J[j] < i:
                gens.append(coords(i, zF, g[j]))
            else:
                gens.append(coords(i, f[j], zG))
        V.append(subspace(i, gens))
    series = ExplicitLimitSeries(d, r, dims, up, down, tuple(Y0), tuple(Z0), tuple(V))
    if any(Vi.dim != r + 1 for Vi in series.V):
        raise GenerationError("generated sections are dependent")
    return series


def random_jumps(rng: random.Random, r: int, d: int) -> list[int]:
    return sorted(rng.randint(0, d) for _ in range(r + 1))


def refined_series(seed: int, r: int, d: int | None = None) -> ExplicitLimitSeries:
    """An exact series with ``r + 1`` distinct jump values (every quotient of dimension <= 1)."""
    d = r if d is None else d
    if d < r:
        raise GenerationError("a refined series needs d >= r")
    rng = random.Random(seed)
    return generate_exact(seed, r, d, sorted(rng.sample(range(d + 1), r + 1)))

"""
Brute-force bigraded Hilbert functions.

Three routes, none of which touches the closed forms in :mod:`llab.schemes`:

* :func:`hf_minor_combinatorial` counts monomials of ``Q_{p,q,m}`` through
  the bijection with monomials in the free x's, free y's and ``m + 1``
  diagonal variables ``z``.
* :func:`hf_linear_algebra` takes any list of coordinate and 2x2-minor
  generators and returns ``#monomials - rank(generator multiples)``.
* :func:`hf_union` ranks the map from ``(s, t)`` monomials on ``P^r x P^r``
  into the product of the component coordinate rings.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .errors import InputError, ResourceError
from .exactmath import BivarPoly, rat_str, sparse_rank
from .schemes import (IdealGenerators, MinorScheme, UnionSpec, component_schemes,
                      parse_coord)

MONOMIAL_GUARD = 10 ** 5


def n_monomials(degree: int, nvars: int) -> int:
    if degree < 0:
        return 0
    if nvars == 0:
        return int(degree == 0)
    return math.comb(degree + nvars - 1, nvars - 1)


def exponent_vectors(degree: int, nvars: int) -> Iterable[tuple]:
    """All exponent tuples of length ``nvars`` summing to ``degree``."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        yield tuple(e)


def hf_minor_combinatorial(p: int, q: int, m: int, s: int, t: int) -> int:
    """Number of monomials of bidegree ``(s, t)`` in the coordinate ring of ``Q_{p,q,m}``.

    Counts monomials of total degree ``s + t`` in ``q`` free x's, ``p`` free
    y's and ``m + 1`` z's whose x-degree is at most ``s`` and y-degree at most
    ``t``.  ``m = -1`` (no z's) gives the product count.
    """
    if min(p, q, s, t) < 0 or m < -1:
        raise InputError("arguments must be nonnegative (m >= -1)")
    total = 0
    for a in range(s + 1):
        nx = n_monomials(a, q)
        if not nx:
            continue
        for b in range(t + 1):
            ny = n_monomials(b, p)
            if ny:
                total += nx * ny * n_monomials(s + t - a - b, m + 1)
    return total


# ---------------------------------------------------------------------------
# rank oracle


def _generator_polys(gens: IdealGenerators, xs: tuple, ys: tuple):
    """Minors as polynomials in the surviving variables, plus the dead coordinates."""
    dead = set()
    for name in gens.linear:
        dead.add(parse_coord(name))
    xalive = tuple(k for k in xs if ("x", k) not in dead)
    yalive = tuple(k for k in ys if ("y", k) not in dead)
    xset, yset = set(xalive), set(yalive)
    polys = []
    for i, j in gens.minors:
        terms = {}
        # x_i y_j - x_j y_i
        for (xi, yj), c in (((i, j), 1), ((j, i), -1)):
            if xi in xset and yj in yset:
                terms[(xi, yj)] = terms.get((xi, yj), 0) + c
        terms = {k: c for k, c in terms.items() if c}
        if terms:
            polys.append(tuple(sorted(terms.items())))
    return xalive, yalive, tuple(sorted(set(polys)))


@lru_cache(maxsize=None)
def _involved_hf(polys: tuple, xinv: tuple, yinv: tuple, i: int, j: int) -> int:
    """Quotient dimension in bidegree ``(i, j)`` for the variables the minors touch."""
    nx, ny = len(xinv), len(yinv)
    count = n_monomials(i, nx) * n_monomials(j, ny)
    if count > MONOMIAL_GUARD:
        raise ResourceError(f"{count} monomials in bidegree ({i},{j}) exceeds guard {MONOMIAL_GUARD}")
    if not polys or i < 1 or j < 1:
        return count
    xpos = {k: a for a, k in enumerate(xinv)}
    ypos = {k: a for a, k in enumerate(yinv)}
    # rows grouped by the index content of the product (x_k and y_k both carry index k)
    blocks: dict = {}
    for ex in exponent_vectors(i - 1, nx):
        for ey in exponent_vectors(j - 1, ny):
            for poly in polys:
                row = {}
                content = None
                for (xi, yj), c in poly:
                    e1 = list(ex)
                    e1[xpos[xi]] += 1
                    e2 = list(ey)
                    e2[ypos[yj]] += 1
                    key = (tuple(e1), tuple(e2))
                    row[key] = row.get(key, 0) + c
                    if content is None:
                        cnt = {}
                        for k, e in zip(xinv, e1):
                            if e:
                                cnt[k] = cnt.get(k, 0) + e
                        for k, e in zip(yinv, e2):
                            if e:
                                cnt[k] = cnt.get(k, 0) + e
                        content = tuple(sorted(cnt.items()))
                blocks.setdefault(content, []).append(row)
    rank = sum(sparse_rank(rows) for rows in blocks.values())
    return count - rank


def hf_linear_algebra(generators: IdealGenerators, x_coords: Iterable[int],
                      y_coords: Iterable[int], s: int, t: int) -> int:
    """Dimension of the ``(s, t)`` piece of ``k[x, y] / (generators)``.

    Coordinates that are set to zero are removed; variables that no minor
    involves are free and contribute a plain monomial count, so only the
    variables touched by minors go through the rank computation.
    """
    if s < 0 or t < 0:
        raise InputError("bidegree must be nonnegative")
    xs, ys = tuple(sorted(set(x_coords))), tuple(sorted(set(y_coords)))
    xalive, yalive, polys = _generator_polys(generators, xs, ys)
    xinv = tuple(sorted({xi for poly in polys for (xi, _), _ in poly}))
    yinv = tuple(sorted({yj for poly in polys for (_, yj), _ in poly}))
    xfree = len(xalive) - len(xinv)
    yfree = len(yalive) - len(yinv)
    if not xalive and s > 0 or not yalive and t > 0:
        return 0
    total = 0
    for a in range(s + 1):
        fa = n_monomials(s - a, xfree)
        if not fa:
            continue
        for b in range(t + 1):
            fb = n_monomials(t - b, yfree)
            if fb:
                total += fa * fb * _involved_hf(polys, xinv, yinv, a, b)
    return total


def hf_minor_linear_algebra(p: int, q: int, m: int, s: int, t: int) -> int:
    sch = MinorScheme(p, q, m)
    return hf_linear_algebra(sch.generators(), sch.x_coords, sch.y_coords, s, t)


# ---------------------------------------------------------------------------
# unions


def _component_key(spec_entry, ex: tuple, ey: tuple):
    """Image of the monomial ``x^ex y^ey`` in a component's coordinate ring, or None.

    The ring of ``Q_{p,q,m}`` embeds in ``k[x_free, y_free, z_p..z_{p+m}]``
    by ``x_k, y_k -> z_k`` on the shared block, so a monomial maps to a
    single monomial (or to zero when it uses a vanishing coordinate).
    """
    p, m = spec_entry
    r1 = len(ex)
    if any(ex[:p]) or any(ey[p + m + 1:r1]):
        return None
    z = tuple(ex[k] + ey[k] for k in range(p, p + m + 1))
    return (ex[p + m + 1:], ey[:p], z)


def hf_union(spec: UnionSpec, s: int, t: int) -> int:
    """Hilbert function of the reduced union ``Q`` at ``(s, t)``.

    Functions on a reduced union embed in the product of the component
    coordinate rings, so the value is the rank of the restriction map.
    """
    if s < 0 or t < 0:
        raise InputError("bidegree must be nonnegative")
    r1 = spec.r + 1
    count = n_monomials(s, r1) * n_monomials(t, r1)
    if count > MONOMIAL_GUARD:
        raise ResourceError(f"{count} monomials in bidegree ({s},{t}) exceeds guard {MONOMIAL_GUARD}")
    entries = [(sch.p, sch.m) for sch, _ in component_schemes(spec)]
    ys = list(exponent_vectors(t, r1))
    rows = []
    for ex in exponent_vectors(s, r1):
        for ey in ys:
            row = {}
            for c, entry in enumerate(entries):
                key = _component_key(entry, ex, ey)
                if key is not None:
                    row[(c, key)] = 1
            if row:
                rows.append(row)
    return sparse_rank(rows)


# ---------------------------------------------------------------------------
# certification


@dataclass
class CertificationReport:
    scheme: str
    grid: int
    verdict: str
    mismatches: list = field(default_factory=list)
    determining: bool = True  # grid large enough that PASS forces polynomial equality

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict:
        return {"scheme": self.scheme, "grid": self.grid, "verdict": self.verdict,
                "mismatches": [[s, t, rat_str(e), g] for s, t, e, g in self.mismatches],
                "determining": self.determining}


def certify(closed_form: BivarPoly, oracle: Callable[[int, int], int] | Mapping, G: int,
            scheme: str = "", strict: bool = True) -> CertificationReport:
    """Compare a closed form with oracle values on ``[0, G]^2``.

    ``oracle`` is either a callable ``(s, t) -> int`` or a mapping of grid
    values.  Mismatches are listed in row-major order as
    ``(s, t, expected_from_closed_form, oracle_value)``.  With ``strict``
    the grid must be at least the total degree; otherwise a smaller grid is
    allowed and the report says it is not determining.
    """
    determining = G >= closed_form.total_degree()
    if strict and not determining:
        raise InputError(f"grid {G} is smaller than the total degree {closed_form.total_degree()}")
    get = oracle.__getitem__ if isinstance(oracle, Mapping) else None
    mism = []
    for s in range(G + 1):
        for t in range(G + 1):
            got = get((s, t)) if get else oracle(s, t)
            want = closed_form(s, t)
            if want != got:
                mism.append((s, t, want, got))
    return CertificationReport(scheme, G, "FAIL" if mism else "PASS", mism, determining)


def certify_minor(p: int, q: int, m: int, G: int = 5,
                  strict: bool = False) -> list[CertificationReport]:
    """Certify the ``Q_{p,q,m}`` closed form against both oracles."""
    from .schemes import hilbert_minor
    poly = hilbert_minor(MinorScheme(p, q, m))
    label = f"Q_{{{p},{q},{m}}}"
    return [
        certify(poly, lambda s, t: hf_minor_combinatorial(p, q, m, s, t), G, label + " combinatorial", strict),
        certify(poly, lambda s, t: hf_minor_linear_algebra(p, q, m, s, t), G, label + " linear-algebra", strict),
    ]


def certify_union(spec: UnionSpec, G: int = 5) -> CertificationReport:
    from .schemes import hilbert_union
    label = f"Q(r={spec.r}, mults={list(spec.mults)})"
    return certify(hilbert_union(spec), lambda s, t: hf_union(spec, s, t), G, label)

"""
Exact linear algebra and bivariate polynomials over the rationals.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Matrices act on column vectors; subspaces are stored by their
reduced row-echelon basis so that two subspaces are equal exactly when their
bases are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, InputError, InterpolationError

Rat = Fraction
Vector = tuple  # tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Mat:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Mat":
        rows = [tuple(rat(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        z = Fraction(0)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                   tuple(() for _ in range(self.cols)))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for a {self.rows}x{self.cols} map")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0))
                     for r in self.entries)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions differ")
        cols = other.transpose().entries
        return Mat(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols)
            for r in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def to_json(self) -> list:
        return [[rat_str(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data, rows: int, cols: int) -> "Mat":
        if not isinstance(data, list) or len(data) != rows:
            raise InputError(f"expected {rows} matrix rows")
        if any(not isinstance(r, list) or len(r) != cols for r in data):
            raise InputError(f"expected matrix rows of length {cols}")
        return cls.from_rows(data, cols)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    lead = 0
    for c in range(ncols):
        pr = next((i for i in range(lead, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[lead], rows[pr] = rows[pr], rows[lead]
        piv = rows[lead][c]
        if piv != 1:
            rows[lead] = [x / piv for x in rows[lead]]
        prow = rows[lead]
        for i in range(len(rows)):
            if i != lead and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        lead += 1
        if lead == len(rows):
            break
    return rows, pivots


def rref(M: Mat) -> tuple[Mat, int]:
    """Reduced row-echelon form of ``M`` and its rank."""
    rows, pivots = _rref_rows([list(r) for r in M.entries], M.cols)
    return Mat(M.rows, M.cols, tuple(tuple(r) for r in rows)), len(pivots)


def inverse(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise DimensionError("only square matrices are invertible")
    n = M.rows
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.entries)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise DimensionError("matrix is singular")
    return Mat(n, n, tuple(tuple(r[n:]) for r in rows))


def sparse_rank(rows: Iterable[Mapping]) -> int:
    """Rank over Q of sparse rows given as ``{column_key: coefficient}``.

    Column keys only need to be hashable and orderable.
    """
    basis: dict = {}  # pivot key -> reduced row (dict)
    rank = 0
    for row in rows:
        v = {k: Fraction(c) for k, c in row.items() if c}
        while v:
            key = min(v)
            b = basis.get(key)
            if b is None:
                basis[key] = v
                rank += 1
                break
            f = v[key] / b[key]
            for k, c in b.items():
                nc = v.get(k, 0) - f * c
                if nc:
                    v[k] = nc
                else:
                    v.pop(k, None)
    return rank


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Mat  # rref, no zero rows

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [tuple(rat(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        rows, pivots = _rref_rows([list(v) for v in vecs], ambient_dim)
        rows = rows[:len(pivots)]
        return cls(ambient_dim, Mat(len(rows), ambient_dim, tuple(tuple(r) for r in rows)))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat(0, ambient_dim, ()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple:
        return self.basis.entries

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def contains_vector(self, v: Sequence) -> bool:
        return Subspace.span(self.vectors + (tuple(v),), self.ambient_dim).dim == self.dim

    def contains(self, other: "Subspace") -> bool:
        """True when ``other`` is a subspace of ``self``."""
        self._check(other)
        return (self + other).dim == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = Mat(self.dim + other.dim, self.ambient_dim, self.vectors + other.vectors)
        # left kernel of the stacked rows: c.A = c'.B relations
        rel = kernel_basis(stacked.transpose())
        out = []
        for c in rel.vectors:
            coeffs = c[:self.dim]
            out.append(tuple(sum((a * row[k] for a, row in zip(coeffs, self.vectors)), Fraction(0))
                             for k in range(self.ambient_dim)))
        return Subspace.span(out, self.ambient_dim)

    def image(self, M: Mat) -> "Subspace":
        if M.cols != self.ambient_dim:
            raise DimensionError("map domain does not match ambient dimension")
        return Subspace.span([M.apply(v) for v in self.vectors], M.rows)

    def complement_basis(self, sub: "Subspace") -> list[tuple]:
        """Rows of our canonical basis that extend ``sub`` to all of ``self``.

        Rows are tried in order of increasing pivot, so the choice is
        deterministic.
        """
        self._check(sub)
        acc = sub
        chosen = []
        for v in self.vectors:
            if not acc.contains_vector(v):
                chosen.append(v)
                acc = Subspace.span(acc.vectors + (v,), self.ambient_dim)
        return chosen

    def to_json(self) -> list:
        return self.basis.to_json()


def kernel_basis(M: Mat) -> Subspace:
    """Null space of ``M`` as a subspace of the domain (dimension ``M.cols``)."""
    R, _ = rref(M)
    pivots = []
    for r in R.entries:
        c = next((j for j, x in enumerate(r) if x != 0), None)
        if c is not None:
            pivots.append(c)
    free = [j for j in range(M.cols) if j not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for r, pc in zip(R.entries, pivots):
            v[pc] = -r[f]
        vecs.append(v)
    return Subspace.span(vecs, M.cols)


@dataclass(frozen=True)
class SubspaceOps:
    sum: Subspace
    intersection: Subspace
    contains: bool
    direct_sum: bool


def subspace_ops(A: Subspace, B: Subspace) -> SubspaceOps:
    """Sum, intersection, whether ``B`` lies in ``A``, and whether ``A + B`` is direct."""
    inter = A & B
    return SubspaceOps(A + B, inter, A.contains(B), inter.dim == 0)


# ---------------------------------------------------------------------------
# bivariate polynomials in (s, t)


@dataclass(frozen=True)
class BivarPoly:
    terms: tuple  # sorted ((i, j), Fraction) pairs, no zero coefficients

    @classmethod
    def from_dict(cls, terms: Mapping) -> "BivarPoly":
        clean = {}
        for (i, j), c in terms.items():
            c = rat(c)
            if c:
                if i < 0 or j < 0:
                    raise InputError("negative exponent")
                clean[(int(i), int(j))] = c
        return cls(tuple(sorted(clean.items())))

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls.from_dict({(0, 0): c})

    @classmethod
    def zero(cls) -> "BivarPoly":
        return cls(())

    @classmethod
    def s(cls) -> "BivarPoly":
        return cls.from_dict({(1, 0): 1})

    @classmethod
    def t(cls) -> "BivarPoly":
        return cls.from_dict({(0, 1): 1})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest ``i + j`` among stored terms; -1 for the zero polynomial."""
        return max((i + j for (i, j), _ in self.terms), default=-1)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self.as_dict().get((i, j), Fraction(0))

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = self.as_dict()
        for k, c in other.terms:
            out[k] = out.get(k, 0) + c
        return BivarPoly.from_dict(out)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other) -> "BivarPoly":
        if not isinstance(other, BivarPoly):
            c = rat(other)
            return BivarPoly.from_dict({k: v * c for k, v in self.terms})
        out: dict = {}
        for (a, b), c in self.terms:
            for (x, y), d in other.terms:
                k = (a + x, b + y)
                out[k] = out.get(k, 0) + c * d
        return BivarPoly.from_dict(out)

    __rmul__ = __mul__

    def __call__(self, s, t) -> Fraction:
        s, t = rat(s), rat(t)
        return sum((c * s ** i * t ** j for (i, j), c in self.terms), Fraction(0))

    evaluate = __call__

    def swap(self) -> "BivarPoly":
        """The polynomial with ``s`` and ``t`` exchanged."""
        return BivarPoly.from_dict({(j, i): c for (i, j), c in self.terms})

    def to_json(self) -> list:
        return [[i, j, rat_str(c)] for (i, j), c in self.terms]

    @classmethod
    def from_json(cls, data) -> "BivarPoly":
        try:
            return cls.from_dict({(int(i), int(j)): rat(c) for i, j, c in data})
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad polynomial document: {exc}") from exc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms, key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("s", i), ("t", j)) if e)
            coef = rat_str(abs(c))
            if mono:
                body = mono if abs(c) == 1 else f"{coef}*{mono}"
            else:
                body = coef
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]


def binom_poly(var: str, shift: int, k: int) -> BivarPoly:
    """``binom(v + shift, k)`` as a polynomial, with ``v`` one of "s", "t", "s+t"."""
    if k < 0:
        raise InputError("k must be nonnegative")
    if var == "s":
        v = BivarPoly.s()
    elif var == "t":
        v = BivarPoly.t()
    elif var in ("s+t", "t+s"):
        v = BivarPoly.s() + BivarPoly.t()
    else:
        raise InputError(f"unknown variable {var!r}")
    out = BivarPoly.const(1)
    for a in range(k):
        out = out * (v + BivarPoly.const(shift - a))
    return out * Fraction(1, math.factorial(k))


def interpolate_grid(values: Mapping, degree_bound: int) -> BivarPoly:
    """Recover the polynomial of total degree <= ``degree_bound`` through the grid.

    Uses two-variable Newton forward differences at the origin.  Every grid
    value, including points beyond ``[0, degree_bound]^2``, must agree with
    the result; otherwise :class:`InterpolationError` is raised.
    """
    D = degree_bound
    if D < 0:
        raise InputError("degree bound must be nonnegative")
    vals = {(int(s), int(t)): rat(v) for (s, t), v in values.items()}
    missing = [(s, t) for s in range(D + 1) for t in range(D + 1) if (s, t) not in vals]
    if missing:
        raise InputError(f"grid is missing points, e.g. {missing[0]}")
    # table[a][b] = Delta_s^a Delta_t^b f evaluated at (0, 0)
    grid = [[vals[s, t] for t in range(D + 1)] for s in range(D + 1)]
    for s in range(D + 1):
        row = grid[s]
        for b in range(1, D + 1):
            for t in range(D, b - 1, -1):
                row[t] = row[t] - row[t - 1]
    for t in range(D + 1):
        for a in range(1, D + 1):
            for s in range(D, a - 1, -1):
                grid[s][t] = grid[s][t] - grid[s - 1][t]
    poly = BivarPoly.zero()
    for a in range(D + 1):
        for b in range(D + 1):
            c = grid[a][b]
            if not c:
                continue
            if a + b > D:
                raise InterpolationError(
                    f"grid needs a term of total degree {a + b} > {D}")
            poly = poly + binom_poly("s", 0, a) * binom_poly("t", 0, b) * c
    for (s, t), v in sorted(vals.items()):
        if poly(s, t) != v:
            raise InterpolationError(
                f"value {v} at ({s},{t}) disagrees with interpolant {poly(s, t)}")
    return poly

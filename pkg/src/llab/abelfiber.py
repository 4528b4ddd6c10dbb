"""
Vanishing-sequence combinatorics for Abel-map fibers on a two-component curve.

For a bundle of degree ``d`` on ``Y`` and ``0`` on ``Z`` the fiber is the
union over ``ell = 0..d`` of ``P(Gamma^ell_Y) x P(Gamma^{d-ell}_Z)``.  In
terms of the vanishing sequences at the node, the ``Y`` factor has
projective dimension ``#{a^Y >= d - ell} - 1`` and the ``Z`` factor
``#{a^Z >= ell} - 1``; a piece is absent when either count is zero.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from .errors import InputError

NEG_INF = float("-inf")


@dataclass(frozen=True)
class VanishingSequence:
    d: int
    values: tuple

    def __post_init__(self):
        vals = self.values
        if not vals:
            raise InputError("vanishing sequence must be nonempty")
        if any(not isinstance(a, int) or isinstance(a, bool) for a in vals):
            raise InputError(f"vanishing orders must be integers: {list(vals)}")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise InputError(f"vanishing sequence must be strictly increasing: {list(vals)}")
        if vals[0] < 0 or vals[-1] > self.d:
            raise InputError(f"vanishing orders must lie in [0, {self.d}]: {list(vals)}")

    @property
    def top(self) -> int:
        """Largest index (``p`` for ``a_0..a_p``)."""
        return len(self.values) - 1

    def count_at_least(self, threshold: int) -> int:
        return sum(1 for a in self.values if a >= threshold)

    def at(self, i: int):
        """``a_i`` with ``a_{-1} = -inf``."""
        return NEG_INF if i < 0 else self.values[i]


def _seq(d: int, a) -> VanishingSequence:
    return a if isinstance(a, VanishingSequence) else VanishingSequence(d, tuple(a))


@dataclass(frozen=True)
class FiberComponent:
    ell: int
    dim_Y: int
    dim_Z: int
    ells: tuple = ()          # every ell giving this same subset
    witness: tuple | None = None  # (i, j, ell', ell'')

    @property
    def dim(self) -> int:
        return self.dim_Y + self.dim_Z

    def to_json(self) -> dict:
        return {"ell": self.ell, "dimY": self.dim_Y, "dimZ": self.dim_Z, "dim": self.dim,
                "witness": list(self.witness) if self.witness else None}


def piece_dims(aY, aZ, ell: int, d: int | None = None):
    """Projective dimensions of the ``ell``-th piece, or ``None`` if it is empty."""
    if d is None:
        if not isinstance(aY, VanishingSequence):
            raise InputError("degree d required")
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    if aY.d != aZ.d:
        raise InputError(f"sequences have different degrees {aY.d} and {aZ.d}")
    if not 0 <= ell <= aY.d:
        raise InputError(f"ell = {ell} outside [0, {aY.d}]")
    nY = aY.count_at_least(aY.d - ell)
    nZ = aZ.count_at_least(ell)
    if nY == 0 or nZ == 0:
        return None
    return nY - 1, nZ - 1


def _pieces(aY: VanishingSequence, aZ: VanishingSequence) -> dict:
    return {ell: dims for ell in range(aY.d + 1)
            if (dims := piece_dims(aY, aZ, ell)) is not None}


def components_by_maximality(aY, aZ, d: int | None = None) -> list[FiberComponent]:
    """Pieces not contained in any other piece.

    Along each chain the subspaces are nested, so containment of pieces is
    the componentwise order on their dimension pairs, and equal pairs are
    the same subset.
    """
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    pieces = _pieces(aY, aZ)
    groups: dict = {}
    for ell, dims in pieces.items():
        groups.setdefault(dims, []).append(ell)
    out = []
    for dims, ells in groups.items():
        dominated = any(o != dims and o[0] >= dims[0] and o[1] >= dims[1] for o in groups)
        if not dominated:
            out.append(FiberComponent(min(ells), dims[0], dims[1], tuple(sorted(ells))))
    return sorted(out, key=lambda c: c.ell)


def component_witnesses(aY, aZ, ell: int, d: int | None = None) -> list[tuple]:
    """All ``(i, j, ell', ell'')`` satisfying the witness criterion at ``ell``.

    ``ell' <= ell <= ell''``, ``a^Y_i = d - ell'``, ``a^Z_j = ell''``,
    ``a^Y_{i-1} < d - ell''`` and ``a^Z_{j-1} < ell'``, with ``a_{-1} = -inf``.
    """
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    posY = {a: i for i, a in enumerate(aY.values)}
    posZ = {a: j for j, a in enumerate(aZ.values)}
    out = []
    for l1 in range(0, ell + 1):
        i = posY.get(d - l1)
        if i is None:
            continue
        for l2 in range(ell, d + 1):
            j = posZ.get(l2)
            if j is None:
                continue
            if aY.at(i - 1) < d - l2 and aZ.at(j - 1) < l1:
                out.append((i, j, l1, l2))
    return out


def components_by_witness(aY, aZ, d: int | None = None) -> list[FiberComponent]:
    """Components located by the witness criterion; dimension ``p + q - i - j``."""
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    found: dict = {}
    for ell in range(d + 1):
        wits = component_witnesses(aY, aZ, ell, d)
        if not wits:
            continue
        dims = {(aY.top - i, aZ.top - j) for i, j, _, _ in wits}
        if len(dims) != 1:
            raise AssertionError(f"witnesses at ell={ell} disagree on dimensions: {sorted(dims)}")
        found.setdefault(dims.pop(), []).append((ell, min(wits)))
    out = []
    for (dY, dZ), hits in found.items():
        ells = tuple(sorted(e for e, _ in hits))
        out.append(FiberComponent(ells[0], dY, dZ, ells, hits[0][1]))
    return sorted(out, key=lambda c: c.ell)


def components(aY, aZ, d: int | None = None) -> list[FiberComponent]:
    """Irreducible components of the fiber, cross-checked by two methods.

    Raises ``AssertionError`` if maximality and the witness criterion give
    different answers, or if a witnessed dimension disagrees with the
    piece dimensions.
    """
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    if aY.d != aZ.d:
        raise InputError(f"sequences have different degrees {aY.d} and {aZ.d}")
    by_max = components_by_maximality(aY, aZ)
    by_wit = components_by_witness(aY, aZ)
    key = lambda cs: [(c.ells, c.dim_Y, c.dim_Z) for c in cs]
    if key(by_max) != key(by_wit):
        raise AssertionError(f"component methods disagree: {key(by_max)} vs {key(by_wit)}")
    for c in by_wit:
        i, j, _, _ = c.witness
        if piece_dims(aY, aZ, c.ell) != (c.dim_Y, c.dim_Z) or c.dim != aY.top + aZ.top - i - j:
            raise AssertionError(f"witness dimension mismatch at ell={c.ell}")
    return by_wit


# ---------------------------------------------------------------------------
# Eisenbud-Harris existence


def eh_exists_bruteforce(aY, aZ, r: int, d: int | None = None):
    """Search all index subsequences; returns the first witness pair or None."""
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    if r < 0:
        raise InputError("r must be nonnegative")
    if r + 1 > min(len(aY.values), len(aZ.values)):
        return None
    Y, Z = aY.values, aZ.values
    for I in itertools.combinations(range(len(Y)), r + 1):
        # no J can help if even the largest Z entry fails the weakest Y entry
        if Y[I[0]] + Z[-1] < d:
            continue
        for J in itertools.combinations(range(len(Z)), r + 1):
            if all(Y[I[s]] + Z[J[r - s]] >= d for s in range(r + 1)):
                return I, J
    return None


def eh_exists_greedy(aY, aZ, r: int, d: int | None = None):
    """Sweep with the top ``r + 1`` entries of each sequence.

    Replacing any chosen index by a larger one only raises vanishing
    orders, so the top ``r + 1`` indices of both sequences succeed whenever
    anything does.
    """
    if d is None:
        d = aY.d
    aY, aZ = _seq(d, aY), _seq(d, aZ)
    if r < 0:
        raise InputError("r must be nonnegative")
    p, q = aY.top, aZ.top
    if r > min(p, q):
        return None
    I = tuple(range(p - r, p + 1))
    J = tuple(range(q - r, q + 1))
    for s in range(r + 1):
        if aY.values[I[s]] + aZ.values[J[r - s]] < d:
            return None
    return I, J


@dataclass(frozen=True)
class EHResult:
    exists: bool
    witness: tuple | None  # (Y indices, Z indices)

    def to_json(self) -> dict:
        return {"exists": self.exists,
                "witness": None if self.witness is None else
                {"iY": list(self.witness[0]), "jZ": list(self.witness[1])}}


def eh_exists(aY, aZ, r: int, d: int | None = None) -> EHResult:
    """Whether vanishing sequences admit an Eisenbud-Harris ``g^r_d``.

    Brute force and greedy sweep must agree; the witness reported is the
    greedy one (top ``r + 1`` indices of each sequence).
    """
    brute = eh_exists_bruteforce(aY, aZ, r, d)
    greedy = eh_exists_greedy(aY, aZ, r, d)
    if (brute is None) != (greedy is None):
        raise AssertionError("brute-force and greedy existence checks disagree")
    return EHResult(greedy is not None, greedy)


@dataclass(frozen=True)
class NoGrdsReport:
    min_dim: int | None
    eh: bool
    r: int
    components: tuple

    @property
    def below_r(self) -> bool:
        return self.min_dim is not None and self.min_dim < self.r

    @property
    def consistent(self) -> bool:
        """Small components force non-existence (the converse is not claimed)."""
        return not (self.below_r and self.eh)

    @property
    def converse_failure(self) -> bool:
        """Every component has dimension >= r and still no series exists."""
        return self.min_dim is not None and self.min_dim >= self.r and not self.eh

    def to_json(self) -> dict:
        return {"r": self.r, "min_dim": self.min_dim, "eh_exists": self.eh,
                "verdict": "CONSISTENT" if self.consistent else "VIOLATION",
                "converse_failure": self.converse_failure,
                "components": [c.to_json() for c in self.components]}


def no_grds_check(aY, aZ, r: int, d: int | None = None) -> NoGrdsReport:
    comps = components(aY, aZ, d)
    min_dim = min((c.dim for c in comps), default=None)
    return NoGrdsReport(min_dim, eh_exists(aY, aZ, r, d).exists, r, tuple(comps))


def random_sequence(rng: random.Random, d: int) -> VanishingSequence:
    """A random nonempty strictly increasing sequence in ``[0, d]``."""
    k = rng.randint(1, d + 1)
    return VanishingSequence(d, tuple(sorted(rng.sample(range(d + 1), k))))


def random_pairs(seed: int, trials: int, d_max: int) -> list[tuple]:
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        d = rng.randint(0, d_max)
        out.append((random_sequence(rng, d), random_sequence(rng, d)))
    return out


def brute_force_pairs(aY: VanishingSequence, aZ: VanishingSequence, r: int) -> int:
    """Number of subsequence pairs the brute force may visit."""
    return math.comb(len(aY.values), r + 1) * math.comb(len(aZ.values), r + 1)

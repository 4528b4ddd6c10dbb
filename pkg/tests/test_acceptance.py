"""
Acceptance suite: eight criteria, each printing one PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines, or
directly with ``python tests/test_acceptance.py``.
"""

import random
import time

from llab import abelfiber as af
from llab import degeneration as dg
from llab import limitseries as ls
from llab.exactmath import binom_poly
from llab.oracle import certify, hf_minor_combinatorial, hf_minor_linear_algebra, hf_union
from llab.schemes import (MinorScheme, all_union_specs, component_schemes, hilbert_minor,
                          hilbert_union, hilbert_union_recursive)

SEED = 20240601
CORPUS_SIZE = 1000


def _report(n: int, ok: bool, detail: str, started: float, limit: float | None = None) -> bool:
    took = time.perf_counter() - started
    if limit is not None and took > limit:
        ok, detail = False, f"{detail}; took {took:.1f}s > {limit:.0f}s"
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail} ({took:.2f}s)")
    return ok


def _corpus():
    return af.random_pairs(SEED, CORPUS_SIZE, 10)


def criterion_1() -> bool:
    t0 = time.perf_counter()
    bad = []
    for p in range(4):
        for q in range(4):
            for m in range(4):
                poly = hilbert_minor(MinorScheme(p, q, m))
                for name, fn in (("combinatorial", hf_minor_combinatorial),
                                 ("linear-algebra", hf_minor_linear_algebra)):
                    rep = certify(poly, lambda s, t: fn(p, q, m, s, t), 5, strict=False)
                    if not rep.passed:
                        bad.append((p, q, m, name, rep.mismatches[0]))
    return _report(1, not bad, f"64 schemes x 2 oracles on [0,5]^2, {len(bad)} failures", t0, 60)


def criterion_2() -> bool:
    t0 = time.perf_counter()
    bad, count = [], 0
    for r in range(5):
        for spec in all_union_specs(r):
            count += 1
            poly = hilbert_union(spec)
            if not certify(poly, lambda s, t: hf_union(spec, s, t), 5).passed:
                bad.append((r, spec.mults, "oracle"))
            if hilbert_union_recursive(spec) != poly:
                bad.append((r, spec.mults, "recursion"))
    return _report(2, not bad, f"{count} union specs, {len(bad)} failures", t0, 120)


def criterion_3() -> bool:
    t0 = time.perf_counter()
    bad, count = [], 0
    for r in range(9):
        target = binom_poly("s+t", r, r)
        for spec in all_union_specs(r):
            if spec.full:
                count += 1
                if not (hilbert_union(spec) - target).is_zero():
                    bad.append((r, spec.mults))
    return _report(3, not bad, f"{count} full specs with r <= 8, {len(bad)} failures", t0)


def criterion_4() -> bool:
    t0 = time.perf_counter()
    problems = []
    comps = af.components(af.VanishingSequence(2, (0, 2)), af.VanishingSequence(2, (0, 1)))
    if [c.dim for c in comps] != [1]:
        problems.append("(a) components")
    if af.eh_exists(af.VanishingSequence(2, (0, 2)), af.VanishingSequence(2, (0, 1)), 1).exists:
        problems.append("(a) eh")
    comps = af.components(af.VanishingSequence(3, (0, 1, 3)), af.VanishingSequence(3, (0, 1, 2)))
    if sorted(c.dim for c in comps) != [1, 2]:
        problems.append("(b) components")
    for r in range(5):
        series = ls.refined_series(SEED + r, r, r + 2)
        spec = ls.pg_union(series)
        schemes_ = [sch for sch, _ in component_schemes(spec)]
        if len(schemes_) != r + 1:
            problems.append(f"(c) r={r}: {len(schemes_)} components")
        for sch in schemes_:
            # m = 0: Q_{p,q,0} is P^q x P^p with p + q = r
            if sch.m != 0 or sch.ambient != (sch.q, sch.p) or sch.p + sch.q != r:
                problems.append(f"(c) r={r}: component {sch}")
        for i in ls.diagonalize(series).jump_values:
            if ls.pg_component(series, i).m != 0:
                problems.append(f"(c) r={r}: level {i} is not a product")
    return _report(4, not problems, "golden fixtures " + (", ".join(problems) or "all exact"), t0)


def criterion_5() -> bool:
    t0 = time.perf_counter()
    violations = below = 0
    for aY, aZ in _corpus():
        for r in range(1, 5):
            rep = af.no_grds_check(aY, aZ, r)
            below += rep.below_r
            violations += not rep.consistent
    return _report(5, violations == 0,
                   f"{CORPUS_SIZE} pairs x r=1..4, {below} small-component cases, "
                   f"{violations} violations", t0, 60)


def criterion_6() -> bool:
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    bad = []
    for k in range(100):
        r, d = rng.randint(0, 4), rng.randint(0, 8)
        J = ls.random_jumps(rng, r, d)
        series = ls.generate_exact(SEED + k, r, d, J)
        if not ls.validate(series).passed or not ls.is_exact(series):
            bad.append((k, "invalid"))
            continue
        D = ls.diagonalize(series)
        mults = tuple(J.count(v) - 1 for v in sorted(set(J)))
        if list(D.jump_indices) != J or D.mults != mults:
            bad.append((k, J, D.jump_indices))
    return _report(6, not bad, f"100 generated series, {len(bad)} failures", t0)


def criterion_7() -> bool:
    t0 = time.perf_counter()
    bad, count = [], 0
    for r in range(5):
        for spec in all_union_specs(r):
            if not spec.full:
                continue
            count += 1
            fam = dg.make_family(spec)
            if dg.specialize(fam, 1) != dg.diagonal_minors(r):
                bad.append((spec.mults, "z=1"))
            if dg.symbolic_vanishing(fam):
                bad.append((spec.mults, "z=0 vanishing"))
            rep = dg.sample_containment(fam, SEED + count, 200)
            if not rep.passed:
                bad.append((spec.mults, "limit", rep.failures[0]))
    return _report(7, not bad, f"{count} full specs, 200 points each, {len(bad)} failures", t0, 60)


def criterion_8() -> bool:
    t0 = time.perf_counter()
    bad = 0
    for aY, aZ in _corpus():
        by_max = af.components_by_maximality(aY, aZ)
        by_wit = af.components_by_witness(aY, aZ)
        if [(c.ells, c.dim_Y, c.dim_Z) for c in by_max] != [(c.ells, c.dim_Y, c.dim_Z) for c in by_wit]:
            bad += 1
        for r in range(1, 5):
            if (af.eh_exists_bruteforce(aY, aZ, r) is None) != (af.eh_exists_greedy(aY, aZ, r) is None):
                bad += 1
    return _report(8, bad == 0, f"{CORPUS_SIZE} pairs, {bad} disagreements", t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


def test_criterion_3():
    assert criterion_3()


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    raise SystemExit(0 if all(results) else 1)

"""
Command-line front end.  Every verb reads inline flags or a JSON document
(``--input``), runs one library operation and writes a JSON report tagged
``"format": "llab/1"`` that echoes its input.

Exit status: 0 success/PASS, 1 FAIL verdict, 2 input error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import abelfiber, degeneration, limitseries, oracle, schemes
from .errors import InputError, LlabError, ResourceError

FORMAT = "llab/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3

# the two-component example whose fiber is large enough yet carries no series
CONVERSE_EXAMPLE = (2, (0, 2), (0, 1), 1)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _load_input(args) -> dict:
    doc: dict = {}
    if args.input:
        try:
            if args.input == "-":
                doc = json.load(sys.stdin)
            else:
                with open(args.input, encoding="utf-8") as fh:
                    doc = json.load(fh)
        except OSError as exc:
            raise InputError(f"{args.input}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.input}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        if not isinstance(doc, dict):
            raise InputError(f"{args.input}: top level must be an object")
    for key in getattr(args, "_fields", ()):
        val = getattr(args, key, None)
        if val is not None:
            doc[key] = val
    return doc


def _need(doc: dict, key: str, kind=int):
    if key not in doc:
        raise InputError(f"{key}: missing (flag --{key} or input key {key!r})")
    val = doc[key]
    if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise InputError(f"{key}: expected an integer, got {val!r}")
    if kind is list and (not isinstance(val, list) or
                         any(not isinstance(x, int) or isinstance(x, bool) for x in val)):
        raise InputError(f"{key}: expected a list of integers, got {val!r}")
    return val


def _seq(doc: dict, key: str) -> abelfiber.VanishingSequence:
    try:
        return abelfiber.VanishingSequence(_need(doc, "d"), tuple(_need(doc, key, list)))
    except InputError as exc:
        raise InputError(f"{key}: {exc}") from exc


def _spec(doc: dict) -> schemes.UnionSpec:
    return schemes.make_union_spec(_need(doc, "r"), _need(doc, "mults", list))


# ---------------------------------------------------------------------------
# verbs; each returns (report body, passed)


def cmd_hilbert_minor(doc):
    sch = schemes.MinorScheme(_need(doc, "p"), _need(doc, "q"), _need(doc, "m"))
    poly = schemes.hilbert_scheme(sch)
    return {"scheme": sch.to_json(), "terms": poly.to_json(), "polynomial": str(poly)}, True


def cmd_hilbert_union(doc):
    spec = _spec(doc)
    poly = schemes.hilbert_union(spec)
    return {"spec": spec.to_json(), "p_seq": list(spec.p_seq), "q_seq": list(spec.q_seq),
            "full": spec.full, "terms": poly.to_json(), "polynomial": str(poly)}, True


def cmd_certify(doc):
    grid = doc.get("grid", 5)
    if not isinstance(grid, int) or grid < 0:
        raise InputError("grid: expected a nonnegative integer")
    if "mults" in doc:
        reports = [oracle.certify_union(_spec(doc), grid)]
    else:
        reports = oracle.certify_minor(_need(doc, "p"), _need(doc, "q"), _need(doc, "m"), grid)
    passed = all(r.passed for r in reports)
    return {"verdict": "PASS" if passed else "FAIL",
            "reports": [r.to_json() for r in reports]}, passed


def cmd_fiber(doc):
    aY, aZ = _seq(doc, "aY"), _seq(doc, "aZ")
    comps = abelfiber.components(aY, aZ)
    return {"components": [c.to_json() for c in comps]}, True


def cmd_eh(doc):
    aY, aZ = _seq(doc, "aY"), _seq(doc, "aZ")
    return abelfiber.eh_exists(aY, aZ, _need(doc, "r")).to_json(), True


def no_grds_scan(seed: int, trials: int, d_max: int, r_max: int,
                 include_example: bool = False) -> dict:
    """Scan random pairs for violations of "small component => no series"."""
    if trials < 0 or d_max < 0 or r_max < 0:
        raise InputError("trials, d_max and r_max must be nonnegative")
    corpus = [(a, b, None) for a, b in abelfiber.random_pairs(seed, trials, d_max)]
    if include_example:
        d, y, z, _ = CONVERSE_EXAMPLE
        corpus.append((abelfiber.VanishingSequence(d, y), abelfiber.VanishingSequence(d, z),
                       "known-converse-failure"))
    checked = below = converse = 0
    violations, specimens = [], []
    for aY, aZ, label in corpus:
        for r in range(1, r_max + 1):
            rep = abelfiber.no_grds_check(aY, aZ, r)
            checked += 1
            entry = {"d": aY.d, "aY": list(aY.values), "aZ": list(aZ.values), "r": r}
            if rep.below_r:
                below += 1
            if not rep.consistent:
                violations.append(entry)
            if rep.converse_failure:
                converse += 1
                if label:
                    specimens.append(dict(entry, label=label))
    return {"seed": seed, "trials": trials, "d_max": d_max, "r_max": r_max,
            "checked": checked, "below_r": below, "violations": len(violations),
            "violation_cases": violations[:20], "converse_failures": converse,
            "converse_specimens": specimens,
            "verdict": "FAIL" if violations else "PASS"}


def cmd_no_grds_scan(doc):
    body = no_grds_scan(doc.get("seed", 0), _need(doc, "trials"), _need(doc, "d_max"),
                        _need(doc, "r_max"), bool(doc.get("include_example", False)))
    return body, body["verdict"] == "PASS"


def _series(doc) -> limitseries.ExplicitLimitSeries:
    series = doc.get("series", doc)
    return limitseries.series_from_json(series)


def cmd_series_validate(doc):
    series = _series(doc)
    rep = limitseries.validate(series)
    body = rep.to_json()
    body["exact"] = limitseries.is_exact(series) if rep.passed else None
    return body, rep.passed


def cmd_series_diagonalize(doc):
    return limitseries.diagonalize(_series(doc)).to_json(), True


def cmd_series_pg(doc):
    series = _series(doc)
    levels = []
    for i in range(series.d + 1):
        try:
            levels.append({"i": i, "scheme": limitseries.pg_component(series, i).to_json()})
        except limitseries.EmptyStratumError:
            levels.append({"i": i, "scheme": None})
    spec = limitseries.pg_union(series)
    poly = schemes.hilbert_union(spec)
    return {"levels": levels, "union": spec.to_json(), "full": spec.full,
            "terms": poly.to_json()}, True


def cmd_series_generate(doc):
    series = limitseries.generate_exact(doc.get("seed", 0), _need(doc, "r"), _need(doc, "d"),
                                        _need(doc, "jumps", list))
    return {"seed": doc.get("seed", 0), "series": series.to_json()}, True


def cmd_degenerate(doc):
    fam = degeneration.make_family(_spec(doc))
    z0 = doc.get("z0", "0")
    bad = degeneration.symbolic_vanishing(fam)
    ok = not bad and degeneration.flatness_shadow(fam) and \
        degeneration.specialize(fam, 1) == degeneration.diagonal_minors(fam.spec.r)
    return {"family": fam.to_json(), "z0": str(z0),
            "specialized": [str(g) for g in degeneration.specialize(fam, z0)],
            "symbolic_vanishing_failures": [list(x) for x in bad],
            "hilbert_matches_diagonal": degeneration.flatness_shadow(fam),
            "verdict": "PASS" if ok else "FAIL"}, ok


def cmd_sample(doc):
    fam = degeneration.make_family(_spec(doc))
    rep = degeneration.sample_containment(fam, doc.get("seed", 0), doc.get("count", 200))
    return rep.to_json(), rep.passed


VERBS = {
    "hilbert-minor": (cmd_hilbert_minor, ("p", "q", "m")),
    "hilbert-union": (cmd_hilbert_union, ("r", "mults")),
    "certify": (cmd_certify, ("p", "q", "m", "r", "mults", "grid")),
    "fiber": (cmd_fiber, ("d", "aY", "aZ")),
    "eh": (cmd_eh, ("d", "aY", "aZ", "r")),
    "no-grds-scan": (cmd_no_grds_scan, ("seed", "trials", "d_max", "r_max", "include_example")),
    "series-validate": (cmd_series_validate, ()),
    "series-diagonalize": (cmd_series_diagonalize, ()),
    "series-pg": (cmd_series_pg, ()),
    "series-generate": (cmd_series_generate, ("seed", "r", "d", "jumps")),
    "degenerate": (cmd_degenerate, ("r", "mults", "z0")),
    "sample": (cmd_sample, ("r", "mults", "seed", "count")),
}

_FLAG_TYPES = {"mults": _int_list, "aY": _int_list, "aZ": _int_list, "jumps": _int_list,
               "z0": str, "include_example": None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llab", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, (_, fields) in VERBS.items():
        sp = sub.add_parser(verb)
        sp.add_argument("--input", help="JSON input document ('-' for stdin)")
        sp.add_argument("--output", help="write the report here instead of stdout")
        for key in fields:
            flag = "--" + key.replace("_", "-")
            if key == "include_example":
                sp.add_argument(flag, dest=key, action="store_true", default=None)
            else:
                sp.add_argument(flag, dest=key, type=_FLAG_TYPES.get(key, int))
        sp.set_defaults(_fields=fields)
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".llab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    func, _ = VERBS[args.verb]
    try:
        doc = _load_input(args)
        body, passed = func(doc)
    except ResourceError as exc:
        print(f"llab {args.verb}: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (LlabError, ValueError) as exc:
        print(f"llab {args.verb}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = {"format": FORMAT, "command": args.verb, "input": doc}
    report.update(body)
    _write(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""``rm3`` command line: count tables, enumeration, seeds, basis checks, cusp searches."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import admissibility, crossratio, cuspsearch, enumerate as enum
from .exactmath import rank
from .numberfield import NumberFieldError, dual_basis
from .ideals import FieldRecord, IdealError, load_field_table, seed_admissible_basis
from .strata import LatticeContext, make_stratum

EXIT_OK, EXIT_IO, EXIT_PARTIAL, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 3, 64

log = logging.getLogger("rm3")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Config:
    data: Optional[Path]
    max_disc: Optional[int]
    seed: int
    jobs: int
    fmt: str
    embedding: Optional[int]
    rejected: list = field(default_factory=list)

    @classmethod
    def from_args(cls, args) -> "Config":
        jobs = getattr(args, "jobs", 1)
        if jobs < 1:
            raise UsageError("--jobs must be at least 1")
        emb = getattr(args, "embedding", None)
        if emb is not None and emb not in (0, 1, 2):
            raise UsageError("--embedding must be 0, 1 or 2")
        return cls(args.data, getattr(args, "max_disc", None), getattr(args, "seed", 0), jobs,
                   getattr(args, "format", "tsv"), emb)


def _emit(cfg: Config, obj: dict, tsv: str, out) -> None:
    out.write((json.dumps(obj, sort_keys=True) if cfg.fmt == "jsonl" else tsv) + "\n")


def _load(cfg: Config, max_disc: Optional[int] = None) -> list[FieldRecord]:
    records, failures = load_field_table(cfg.data, max_disc=max_disc, strict=False)
    cfg.rejected = list(failures)
    return records


def _report_rejected(cfg: Config, out) -> bool:
    for f in cfg.rejected:
        _emit(cfg, {"field": f.record_id, "status": "rejected", "reason": f.reason},
              f"# rejected {f.record_id}: {f.reason}", out)
    return bool(cfg.rejected)


def _select(cfg: Config, disc: str) -> FieldRecord:
    text, _, idx = disc.partition("#")
    try:
        d, i = int(text), int(idx or 0)
    except ValueError:
        raise UsageError(f"bad field selector {disc!r}; use D or D#i")
    for rec in _load(cfg, d):
        if rec.disc == d and rec.index == i:
            return rec
    raise UsageError(f"no bundled field {d}#{i}")


def _parse_element(field_, text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"element {text!r} needs three comma-separated coordinates")
    try:
        return field_([Fraction(p.strip()) for p in parts])
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"element {text!r} has a malformed coordinate")


def _floats(cfg: Config, elements) -> Optional[list]:
    if cfg.embedding is None:
        return None
    return [x.embeddings()[cfg.embedding] for x in elements]


# ---------------------------------------------------------------- commands


def cmd_table(cfg: Config, out) -> int:
    records = _load(cfg, cfg.max_disc)
    rows = enum.count_table(records, cfg.max_disc, cfg.seed, cfg.jobs)
    if cfg.fmt == "tsv":
        out.write(enum.TABLE_HEADER + "\n")
    for row in rows:
        obj = {"disc": row.disc, "index": row.index, "h": row.h, "log_volume": round(row.log_volume, 6),
               "six": row.six, "total": row.total, "status": row.status}
        if row.error:
            obj["error"] = row.error
        _emit(cfg, obj, row.tsv(), out)
    bad = _report_rejected(cfg, out)
    return EXIT_PARTIAL if bad or any(r.status != "ok" for r in rows) else EXIT_OK


def cmd_enumerate(cfg: Config, disc: str, cls: Optional[int], out) -> int:
    rec = _select(cfg, disc)
    classes = range(rec.h) if cls is None else [cls]
    if any(not 0 <= c < rec.h for c in classes):
        raise UsageError(f"class index out of range 0..{rec.h - 1}")
    for c in classes:
        res = enum.enumerate_2dim(rec.classes[c], rec.units, seed=cfg.seed)
        for key in sorted(res.strata):
            s = res.strata[key]
            obj = {"field": rec.record_id, "class": c, "key": key.decode(), **s.to_dict(),
                   "cone": s.cone_type().kind, "span_codim": s.span_codim()}
            fl = _floats(cfg, s.weights)
            if fl is not None:
                obj["embedding"] = fl
            tsv = f"{rec.record_id}\t{c}\t{s.pattern_code()}\t{s.cone_type().kind}\t{key.decode()}"
            _emit(cfg, obj, tsv, out)
        summary = {"field": rec.record_id, "class": c, "six": res.six_count, "total": res.total_count,
                   "strata": res.stratum_count}
        _emit(cfg, summary, f"# {rec.record_id} class {c}: six={res.six_count} total={res.total_count} "
                            f"strata={res.stratum_count}", out)
    return EXIT_OK


def cmd_seed(cfg: Config, disc: str, out) -> int:
    rec = _select(cfg, disc)
    lat, r = seed_admissible_basis(rec.field, rec.maximal_order)
    obj = {"field": rec.record_id, "lattice": lat.format(), "triple": [x.format() for x in r],
           "c": list(admissibility.admissibility_coefficients(r))}
    fl = _floats(cfg, r)
    if fl is not None:
        obj["embedding"] = fl
    _emit(cfg, obj, f"{rec.record_id}\t{lat.format()}\t{';'.join(obj['triple'])}", out)
    return EXIT_OK


def cmd_check_basis(cfg: Config, disc: str, triples: Sequence[str], out) -> int:
    rec = _select(cfg, disc)
    if len(triples) % 3:
        raise UsageError("give elements in groups of three")
    for k in range(0, len(triples), 3):
        r = tuple(_parse_element(rec.field, t) for t in triples[k:k + 3])
        obj = {"field": rec.record_id, "triple": [x.format() for x in r]}
        try:
            dual_basis(r)
        except NumberFieldError:
            obj["verdict"] = "not-a-basis"
            _emit(cfg, obj, f"{';'.join(obj['triple'])}\tnot-a-basis", out)
            continue
        nhs = admissibility.no_half_space(r)
        rp = admissibility.is_rational_positive(r)
        obj.update({"no_half_space": nhs, "rational_positive": rp,
                    "verdict": "admissible" if nhs else "not-admissible"})
        if nhs != rp:
            obj["verdict"] = "mismatch"
        if nhs and rp:
            obj["c"] = list(admissibility.admissibility_coefficients(r))
            obj["exponents"] = list(crossratio.exponents(r))
        fl = _floats(cfg, r)
        if fl is not None:
            obj["embedding"] = fl
        _emit(cfg, obj, f"{';'.join(obj['triple'])}\t{obj['verdict']}", out)
        if nhs != rp:
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_search_hyp4(cfg: Config, out) -> int:
    records = _load(cfg, cfg.max_disc)
    report = cuspsearch.hyp4_search(records, cfg.max_disc, seed=cfg.seed, jobs=cfg.jobs)
    for ln in report.lines:
        _emit(cfg, ln.to_dict(), ln.tsv(), out)
    bad = _report_rejected(cfg, out)
    n = len(report.hits)
    _emit(cfg, {"hits": n}, f"HITS\t{n}", out)
    return EXIT_PARTIAL if bad or report.failures else EXIT_OK


def cmd_fields_verify(cfg: Config, out) -> int:
    records, failures = load_field_table(cfg.data, strict=False, max_disc=cfg.max_disc)
    for rec in records:
        _emit(cfg, {"field": rec.record_id, "status": "ok"}, f"{rec.record_id}\tok", out)
    for f in failures:
        _emit(cfg, {"field": f.record_id, "status": "rejected", "reason": f.reason},
              f"{f.record_id}\trejected\t{f.reason}", out)
    return EXIT_PARTIAL if failures else EXIT_OK


# ---------------------------------------------------------------- bundled examples


class _Checks:
    def __init__(self, out):
        self.out = out
        self.failed = 0

    def __call__(self, name: str, ok: bool, detail: str = "") -> None:
        self.failed += not ok
        self.out.write(f"{'ok  ' if ok else 'FAIL'}\t{name}{chr(9) + detail if detail else ''}\n")


def verify_veech7(cfg: Config, out) -> int:
    check = _Checks(out)
    rec = _select(cfg, "49")
    F = rec.field
    v = F.gen
    r = cuspsearch.veech_triple(F)
    check("triple admissible", admissibility.no_half_space(r) and admissibility.is_rational_positive(r))
    check("sum 1/r_i = 0", sum((x.inverse() for x in r), F.zero).is_zero())
    check("c = (1,1,1)", admissibility.admissibility_coefficients(r) == (1, 1, 1))
    check("N(r_i) = 1", all(x.norm() == 1 for x in r))
    check("exponents (1,1,1)", crossratio.exponents(r) == (1, 1, 1))
    ctx = LatticeContext(rec.classes[0], rec.units)
    six = make_stratum(ctx, [(0, 0, x) for x in r])
    eq = crossratio.equation_for(six)
    check("cross-ratio equation R1 R2 R3 = 1", eq.exponents == (1, 1, 1) and eq.zeta_order == 1, eq.text())
    res = enum.enumerate_2dim(rec.classes[0], rec.units, seed=cfg.seed)
    check("the unique [6] stratum of O_F is the Veech triple",
          res.six_count == 1 and res.six_strata()[0].key == six.key)
    cands = cuspsearch.hyp4_candidates(r)
    hits = [c for c in cands if c.is_hit]
    check("exactly one root-of-unity solution", len(hits) == 1, f"{len(cands)} candidates")
    if hits:
        h = hits[0]
        check("x = (1, -v^2-v+1, v^2+v-2)",
              h.x[1] == -v * v - v + 1 and h.x[2] == v * v + v - 2,
              ", ".join(cuspsearch.Hyp4Candidate.describe(h)["x"]))
        check("P = 1", h.order == 1 and h.P == 1)
    return EXIT_MISMATCH if check.failed else EXIT_OK


def verify_t234(cfg: Config, out) -> int:
    check = _Checks(out)
    rec = _select(cfg, "81")
    F = rec.field
    v = F.gen
    r = (-v * v - v, v + 1, -2 * v * v - 3 * v + 2)
    x = (F.one, 2 - v * v, v * v - 3)
    cand = cuspsearch.Cusp31Candidate(x, ((3, 1),) * 3, r)
    verdict = cuspsearch.verify31_cusp(cand)
    check("D_i vanish and residues match (route a)", verdict.route_a)
    check("numerator is C z^3 (route b)", verdict.route_b)
    check("torsion x_i^3 = y_i^3", verdict.torsion_order == 3)
    check("on the line x1 + x2 + x3 = 0", verdict.on_line_L)
    line = cuspsearch.line_L_points(F, r)
    check("x1 + x2 + x3 divides D_1, D_2, D_3", all(line.divisible))
    check("the published point is the residue match on L", [tuple(p) for p in line.points] == [x])
    # vertical circumferences from their cosine expressions
    w = (F.one, v * v + v - 3, 3 - v * v, v * v - 2)
    check("widths are the published combinations of circumferences",
          r[0] == -(2 * w[0] + w[1] + w[2] + w[3]) and r[1] == w[0] + w[1] + w[2]
          and r[2] == -(3 * w[0] + 3 * w[1] + 2 * w[2] + w[3]))
    ctx = LatticeContext(rec.classes[0], rec.units)
    vert = make_stratum(ctx, [(0, 0, w[1]), (0, 1, w[0]), (0, 1, -w[2]), (0, 1, -w[3])])
    check("vertical direction [5]x3[3] admissible",
          vert.pattern_code() == "[5]x3[3]" and vert.is_admissible() and vert.cone_type().kind == "A")
    check("residues form a Q-basis of F", rank([x.coords for x in r]) == 3)
    return EXIT_MISMATCH if check.failed else EXIT_OK


EXAMPLES = {"veech7": verify_veech7, "t234": verify_t234}


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data", type=Path, default=None, help="field table (JSON lines); default: bundled")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("tsv", "jsonl"), default="tsv")
    common.add_argument("--embedding", type=int, default=None, help="also print values at this real embedding")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="rm3", description="Boundary strata and cusps of real-multiplication loci in genus three.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", parents=[common], help="count two-dimensional boundary components")
    t.add_argument("--max-disc", type=int, default=350)

    e = sub.add_parser("enumerate", parents=[common], help="list the two-dimensional admissible strata")
    e.add_argument("--disc", required=True, help="D or D#i")
    e.add_argument("--class", dest="cls", type=int, default=None)

    s = sub.add_parser("seed", parents=[common], help="admissible seed basis of a field")
    s.add_argument("--disc", required=True)

    c = sub.add_parser("check-basis", parents=[common], help="admissibility of user triples")
    c.add_argument("--disc", required=True)
    c.add_argument("elements", nargs="+", help="power-basis coordinates a/b,c/d,e/f; put -- before a negative first coordinate")

    h = sub.add_parser("search-hyp4", parents=[common], help="search hyperelliptic cusps")
    h.add_argument("--max-disc", type=int, default=100)

    v = sub.add_parser("verify-example", parents=[common], help="check a bundled example end to end")
    v.add_argument("name", choices=sorted(EXAMPLES))

    f = sub.add_parser("fields", parents=[common], help="field table utilities")
    f.add_argument("action", choices=("verify",))
    f.add_argument("--max-disc", type=int, default=None)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = Config.from_args(args)
        if args.command == "table":
            return cmd_table(cfg, out)
        if args.command == "enumerate":
            return cmd_enumerate(cfg, args.disc, args.cls, out)
        if args.command == "seed":
            return cmd_seed(cfg, args.disc, out)
        if args.command == "check-basis":
            return cmd_check_basis(cfg, args.disc, args.elements, out)
        if args.command == "search-hyp4":
            return cmd_search_hyp4(cfg, out)
        if args.command == "verify-example":
            return EXAMPLES[args.name](cfg, out)
        if args.command == "fields":
            return cmd_fields_verify(cfg, out)
    except UsageError as exc:
        sys.stderr.write(f"rm3: {exc}\n")
        return EXIT_USAGE
    except (OSError, IdealError) as exc:
        sys.stderr.write(f"rm3: {exc}\n")
        return EXIT_IO
    except (crossratio.InternalMismatch, AssertionError) as exc:
        sys.stderr.write(f"rm3: verification mismatch: {exc}\n")
        return EXIT_MISMATCH
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

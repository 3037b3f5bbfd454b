"""Command line entry point ``hexalab``.

Exit status is 0 when the requested verdict holds, 1 when it fails and 2 on
usage or input errors. CSV and text bodies go to stdout (or ``--out``); a
one-line run header with the seed and thread count goes to stderr and is
embedded as ``config`` in JSON output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import constructions, hexcvc, montecarlo, symbolic, tiling, zrelation
from .core import FiniteMetricMeasureSpace, HexalabError, as_fraction, distance_distribution, format_fraction, restricted_distribution, validate_space
from .groups import CyclicProduct, SymmetricGroup

PASS, FAIL, USAGE = 0, 1, 2


class InputError(HexalabError):
    pass


# -- io helpers ---------------------------------------------------------------


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("hexalab") / "fixtures" / name))


def resolve_path(text: str) -> Path:
    """A path as given, falling back to the packaged fixtures for ``fixtures/...``."""
    p = Path(text)
    if p.exists():
        return p
    if p.parts and p.parts[0] == "fixtures":
        q = fixture_path("/".join(p.parts[1:]))
        if q.exists():
            return q
    raise InputError(f"no such file: {text}")


def load_json_arg(text: str):
    """Inline JSON or a JSON file."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    return json.loads(resolve_path(text).read_text(encoding="utf-8"))


def load_space(text: str) -> FiniteMetricMeasureSpace:
    obj = load_json_arg(text)
    if not isinstance(obj, dict):
        raise InputError("a recipe must be a JSON object")
    if "dist" in obj and "kind" not in obj:
        return FiniteMetricMeasureSpace.from_json_obj(obj)
    return constructions.build_space(obj)


def parse_subset(space: FiniteMetricMeasureSpace, text: str):
    """``label;label;...`` or ``run:k`` (consecutive run of a Hamming space)."""
    if text.startswith("run:"):
        return constructions.consecutive_run_subset(space, int(text[4:]))
    labels = [s.strip() for s in text.split(";") if s.strip()]
    return space.subset(labels)


def parse_residues(text: str) -> list[int]:
    text = text.strip().strip("{}[]")
    return [int(x) for x in text.split(",") if x.strip()]


def fr(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else format_fraction(q)


def jsonable(obj):
    if isinstance(obj, Fraction):
        return fr(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, Fraction) else fr(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


class Output:
    def __init__(self, args):
        self.args = args
        self.fmt = args.format
        self.config = {"command": args.command_line, "seed": args.seed, "threads": args.threads}

    def header(self):
        print(f"# hexalab {self.config['command']} seed={self.args.seed} threads={self.args.threads}", file=sys.stderr)

    def write(self, text: str):
        if self.args.out:
            Path(self.args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    def emit(self, payload: dict, text: str | None = None, rows: list[list] | None = None):
        self.header()
        if self.fmt == "json":
            body = dict(payload)
            body["config"] = self.config
            self.write(json.dumps(jsonable(body), ensure_ascii=False, indent=2) + "\n")
        elif self.fmt == "csv" and rows is not None:
            self.write(to_csv(rows))
        else:
            self.write((text if text is not None else json.dumps(jsonable(payload), ensure_ascii=False, indent=2)) + "\n")


def to_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow([fr(c) if isinstance(c, Fraction) else c for c in r])
    return buf.getvalue()


def verdict(ok: bool) -> int:
    return PASS if ok else FAIL


# -- space ----------------------------------------------------------------------


def _law_rows(law, norm=Fraction(1)):
    return [[r, m / norm] for r, m in law.entries]


def cmd_space(args, out: Output) -> int:
    space = load_space(args.recipe)
    action = args.action
    if action == "export":
        out.header()
        out.write(space.to_json(ensure_ascii=False) + "\n")
        return PASS
    if action == "validate":
        rep = validate_space(space, require_triangle=args.strict)
        payload = {"valid": rep.valid, "errors": [v.__dict__ for v in rep.errors], "warnings": [v.__dict__ for v in rep.warnings]}
        lines = [f"  error {v.kind}: {v.witness} {v.detail}" for v in rep.errors] + [f"  warning {v.kind}: {v.witness} {v.detail}" for v in rep.warnings]
        text = "\n".join(["valid" if rep.valid else "invalid"] + lines)
        out.emit(payload, text)
        return verdict(rep.valid)
    if action == "dist":
        if args.subset:
            a = parse_subset(space, args.subset)
            law = restricted_distribution(space, a, a)
            rows = _law_rows(law, a.measure**2)
        else:
            rows = _law_rows(distance_distribution(space))
        payload = {"distribution": {fr(r): m for r, m in rows}, "value_kind": space.value_kind}
        out.emit(payload, "r\tP(D=r)\n" + "\n".join(f"{fr(r)}\t{fr(m)}" for r, m in rows), [["r", "mass"]] + rows)
        return PASS
    if action == "cvc":
        v = hexcvc.check_cvc(space)
        if v.holds:
            rows = [[r, m] for r, m in v.rho.steps]
            payload = {"cvc": True, "rho": {fr(r): m for r, m in rows}}
            text = "CVC holds\nr\trho(r)\n" + "\n".join(f"{fr(r)}\t{fr(m)}" for r, m in rows)
            out.emit(payload, text, [["r", "rho"]] + rows)
        else:
            x, y, r = v.witness
            payload = {"cvc": False, "witness": {"x": space.labels[x], "y": space.labels[y], "r": r}}
            out.emit(payload, f"CVC fails: mu(B({space.labels[x]}, {fr(r)})) != mu(B({space.labels[y]}, {fr(r)}))")
        return verdict(v.holds)
    if action == "hex":
        if not args.subset:
            raise InputError("--subset is required")
        a = parse_subset(space, args.subset)
        v = hexcvc.check_hex(space, a)
        norm = a.measure**2
        la, lc = v.distA.as_dict(), v.distAc.as_dict()
        radii = sorted(set(la) | set(lc))
        rows = [[r, la.get(r, Fraction(0)) / norm, lc.get(r, Fraction(0)) / norm] for r in radii]
        payload = {"hex": v.holds, "first_divergence": v.first_divergence, "table": [{"r": r, "A": p, "Ac": q} for r, p, q in rows]}
        text = ("hexachordal equality holds" if v.holds else f"hexachordal equality fails at r = {fr(v.first_divergence)}") + "\n"
        text += "r\tP_A(D=r)\tP_Ac(D=r)\n" + "\n".join(f"{fr(r)}\t{fr(p)}\t{fr(q)}" for r, p, q in rows)
        out.emit(payload, text, [["r", "A", "Ac"]] + rows)
        return verdict(v.holds)
    if action == "patterson":
        recipe = load_json_arg(args.recipe)
        spec = constructions.cayley_spec_from_recipe(recipe)
        if not args.subset:
            raise InputError("--subset is required")
        members = [spec.group.parse(s.strip()) for s in args.subset.split(";") if s.strip()]
        chk = hexcvc.check_patterson_equality(spec, members)
        pa = hexcvc.patterson(spec, members)
        rows = [[spec.group.label(g), pa[g], chk.difference[g]] for g in spec.group.elements]
        payload = {"holds": chk.holds, "expected": chk.expected, "inverse_symmetric": chk.inverse_symmetric, "patterson": {r[0]: r[1] for r in rows}}
        text = f"Pat_A - Pat_Ac == {fr(chk.expected)}: {chk.holds}\n" + "g\tPat_A\tdiff\n" + "\n".join(f"{g}\t{fr(p)}\t{fr(d)}" for g, p, d in rows)
        out.emit(payload, text, [["g", "pat_A", "difference"]] + rows)
        return verdict(chk.holds)
    if action == "transitive":
        ok = hexcvc.is_transitive(space)
        out.emit({"transitive": ok}, f"transitive: {ok}")
        return verdict(ok)
    raise InputError(f"unknown action {action}")


# -- symbolic ---------------------------------------------------------------------


def parse_group(text: str):
    kind, _, arg = text.partition(":")
    if kind == "cyclic":
        return CyclicProduct(parse_residues(arg))
    if kind == "symmetric":
        return SymmetricGroup(int(arg))
    raise InputError(f"unknown group {text!r} (use cyclic:3,4 or symmetric:3)")


def _tv(v: symbolic.TableVerdict) -> dict:
    return {"holds": v.holds, "witness": list(v.witness) if v.witness else None}


def cmd_symbolic(args, out: Output) -> int:
    if args.action == "group":
        t = symbolic.group_interval_table(parse_group(args.group), args.mode)
    else:
        if not args.table:
            raise InputError("a table file is required")
        t = symbolic.IntervalTable.load(resolve_path(args.table))
    action = args.action
    if action in ("export", "group"):
        out.header()
        if out.fmt == "json":
            out.write(json.dumps(t.to_json_obj(), ensure_ascii=False, indent=2) + "\n")
        else:
            out.write(t.to_csv())
        return PASS
    if action in ("ind", "hexprime", "hexdd"):
        fn = {"ind": symbolic.check_ind, "hexprime": symbolic.check_hex_prime, "hexdd": symbolic.check_hex_doubleprime}[action]
        v = fn(t)
        text = f"{action}: {v.holds}" + (f" (witness {v.witness})" if v.witness else "")
        out.emit({action: _tv(v)}, text)
        return verdict(v.holds)
    if action == "latin":
        latin = symbolic.is_latin_square(t)
        payload = {"latin": latin}
        ok = latin
        if latin:
            payload["ind"] = symbolic.check_ind(t).holds
        if args.group_check:
            payload["group"] = symbolic.loop_is_group(t)
        text = "\n".join(f"{k} = {str(v).lower()}" for k, v in payload.items())
        out.emit(payload, text)
        return verdict(ok)
    if action == "oracle":
        res = symbolic.sample_decomposition_oracle(t, args.trials, args.seed, args.mode_oracle)
        decided = (symbolic.check_hex_prime if args.mode_oracle == "hexprime" else symbolic.check_hex_doubleprime)(t).holds
        payload = {"oracle": res.holds, "trials": res.trials, "decision": decided, "agree": res.holds == decided}
        if res.violation:
            payload["violation"] = {"alpha": list(res.violation[0]), "beta": list(res.violation[1])}
        out.emit(payload, f"oracle ({args.mode_oracle}, {res.trials} trials): {res.holds}; decision procedure: {decided}")
        return verdict(res.holds)
    raise InputError(f"unknown action {action}")


# -- tiling -----------------------------------------------------------------------


def cmd_tiling(args, out: Output) -> int:
    n = args.n
    a = tiling.CyclicSubset.of(n, parse_residues(args.a))
    action = args.action
    base = {"n": n, "a": list(a.elements), "zeros": tiling.zero_set(a).sorted(), "periods": tiling.is_periodic(a)}
    if action == "zeros":
        out.emit(base, "zeros: " + ",".join(map(str, base["zeros"])))
        return PASS
    if action == "check":
        if args.b is None:
            raise InputError("--b is required")
        b = tiling.CyclicSubset.of(n, parse_residues(args.b))
        prop, direct = tiling.is_tiling_pair(a, b), tiling.direct_sum_check(a, b)
        payload = dict(base, b=list(b.elements), zeros_b=tiling.zero_set(b).sorted(), tiling={"zero_sets": prop, "sumset": direct})
        out.emit(payload, f"tiling: zero-set criterion {prop}, sumset check {direct}")
        return verdict(prop and direct)
    if action == "complements":
        comps = tiling.find_complements(a, normalize_zero=not args.all)
        payload = dict(base, complements=[list(c.elements) for c in comps])
        out.emit(payload, "\n".join(str(c) for c in comps) or "no complement")
        return verdict(bool(comps))
    if action == "spectrum":
        s = tiling.find_spectrum(a)
        payload = dict(base, spectrum=None if s is None else list(s.elements))
        out.emit(payload, "spectrum: " + (str(s) if s is not None else "none"))
        return verdict(s is not None)
    if action == "vuza":
        if args.b is not None:
            b = tiling.CyclicSubset.of(n, parse_residues(args.b))
            ok = tiling.is_vuza_pair(a, b)
            out.emit(dict(base, b=list(b.elements), vuza=ok), f"vuza pair: {ok}")
            return verdict(ok)
        hits = tiling.vuza_search([a], max_hits=args.max_hits)
        payload = dict(base, vuza=[list(h.b.elements) for h in hits])
        out.emit(payload, "\n".join(f"{h.a} + {h.b}" for h in hits) or "no aperiodic complement")
        return verdict(bool(hits))
    raise InputError(f"unknown action {action}")


# -- zrelation ------------------------------------------------------------------------


def babbitt_check(n: int) -> dict:
    """Complement identity for all ``n/2``-subsets; for ``n <= 16`` also the exact metric and Patterson checks."""
    comp = zrelation.complement_homometry_check(n)
    result = {"n": n, "subsets": comp.checked, "interval_identity": comp.holds, "difference": list(comp.difference or ())}
    if n <= 16:
        space = constructions.cycle(n)
        spec = constructions.cyclic_cayley([n])
        hex_ok = pat_ok = True
        for m in zrelation.k_subset_masks(n, n // 2).tolist():
            idx = [i for i in range(n) if m >> i & 1]
            hex_ok &= hexcvc.check_hex(space, space.subset(idx)).holds
            pat_ok &= hexcvc.check_patterson_equality(spec, [(i,) for i in idx]).holds
        result.update(hex=hex_ok, patterson=pat_ok)
    return result


def cmd_zrel(args, out: Output) -> int:
    if args.action == "ivec":
        a = tiling.CyclicSubset.of(args.n, parse_residues(args.a))
        v = zrelation.interval_content(a)
        out.emit({"n": args.n, "a": list(a.elements), "interval_vector": list(v.counts)}, ",".join(map(str, v.counts)))
        return PASS
    if args.action == "classes":
        budget = math.inf if args.force else args.budget
        if math.comb(args.n, args.k) > budget:
            raise InputError(f"C({args.n},{args.k}) exceeds the budget {args.budget}; pass --force to run anyway")
        report = zrelation.homometry_classes(args.n, args.k, budget=math.comb(args.n, args.k) if args.force else args.budget)
        rows = [["interval_vector", "class_size", "representatives"]]
        for c in report.classes:
            if c.size >= args.min_size:
                rows.append(["[" + ",".join(map(str, c.vector)) + "]", c.size, " ".join(str(s) for s in c.subsets(args.n))])
        payload = {
            "n": args.n,
            "k": args.k,
            "subsets": report.subsets,
            "ti_classes": report.ti_classes,
            "histogram": {str(k): v for k, v in report.histogram.items()},
            "max_size": report.max_size,
            "classes": [{"interval_vector": r[0], "class_size": r[1], "representatives": r[2].split(" ")} for r in rows[1:]],
        }
        hist = " ".join(f"{k}:{v}" for k, v in report.histogram.items())
        if out.fmt == "json":
            out.emit(payload)
        else:
            print(f"# histogram {hist}", file=sys.stderr)
            out.header()
            out.write(to_csv(rows))
        return PASS
    if args.action == "babbitt":
        if args.n % 2:
            raise InputError("n must be even")
        res = babbitt_check(args.n)
        ok = all(v for k, v in res.items() if k in ("interval_identity", "hex", "patterson"))
        text = "\n".join(f"{k}: {v}" for k, v in res.items())
        out.emit(res, text)
        return verdict(ok)
    raise InputError(f"unknown action {args.action}")


# -- Monte Carlo -------------------------------------------------------------------


def parse_grid(text: str) -> list[float]:
    lo, hi, step = (float(x) for x in text.split(":"))
    if step <= 0 or hi < lo:
        raise InputError("grid needs lo <= hi and a positive step")
    k = int(round((hi - lo) / step))
    return [round(lo + i * step, 12) for i in range(k + 1)]


def read_column(path: str) -> np.ndarray:
    rows = list(csv.reader(resolve_path(path).read_text(encoding="utf-8").splitlines()))
    vals = []
    for r in rows:
        if not r or r[0].startswith("#"):
            continue
        try:
            vals.append(float(r[0]))
        except ValueError:
            continue  # header
    return np.asarray(vals)


def cmd_mc(args, out: Output) -> int:
    workers = args.threads
    if args.action == "sphere-band":
        e = montecarlo.band_experiment(args.n, args.seed, args.r, workers, args.alpha)
        payload = {
            "n": args.n,
            "r": args.r,
            "band_fraction": e.band_fraction.__dict__,
            "caps": e.caps.__dict__,
            "band": e.band.__dict__,
            "caps_within_half": e.caps.within(0.5),
            "ks": {"statistic": e.ks.statistic, "critical": e.ks.critical, "pass": e.ks.passed},
            "three_sample": {"statistic": e.three.ks.statistic, "critical": e.three.ks.critical, "pass": e.three.passed},
        }
        rows = [["stratum", "estimate", "stderr"], ["band_fraction", e.band_fraction.value, e.band_fraction.stderr], ["caps", e.caps.value, e.caps.stderr], ["band", e.band.value, e.band.stderr]]
        text = to_csv(rows) + json.dumps({"verdict": {"caps_half": payload["caps_within_half"], "ks_pass": e.ks.passed, "three_sample_pass": e.three.passed}})
        out.emit(payload, text, rows)
        return verdict(payload["caps_within_half"] and e.ks.passed and e.three.passed)
    if args.action == "volume":
        spec = montecarlo.ContinuousSpaceSpec.parse(args.spec)
        pts = montecarlo.estimate_volume_function(spec, parse_grid(args.grid), args.n, args.seed, workers)
        rows = [["r", "estimate", "stderr"]] + [[p.r, p.estimate.value, p.estimate.stderr] for p in pts]
        checks = [p.agrees for p in pts if p.agrees is not None]
        ok = all(checks)
        payload = {"spec": str(spec), "points": [{"r": p.r, "estimate": p.estimate.value, "stderr": p.estimate.stderr, "closed_form": p.closed_form} for p in pts], "agrees": ok if checks else None}
        out.emit(payload, to_csv(rows) + json.dumps({"verdict": {"closed_form_agreement": payload["agrees"]}}), rows)
        return verdict(ok)
    if args.action == "ks":
        if args.same:
            s1 = s2 = read_column(args.same)
        else:
            if not (args.a and args.b):
                raise InputError("give --same FILE or both --a and --b")
            s1, s2 = read_column(args.a), read_column(args.b)
        res = montecarlo.ks_two_sample(s1, s2, args.alpha)
        payload = {"statistic": res.statistic, "critical": res.critical, "alpha": res.alpha, "pass": res.passed, "sizes": list(res.sizes)}
        out.emit(payload, f"statistic={res.statistic:.6g} critical={res.critical:.6g} pass={res.passed}")
        return verdict(res.passed)
    if args.action == "three-sample":
        spec = montecarlo.ContinuousSpaceSpec.parse(args.spec)
        sample = montecarlo.sample_pairs(spec, args.predicate, args.n, args.seed, workers)
        rep = montecarlo.three_sample_heuristic(sample, args.alpha)
        rows = [["r", "cdf_A_aug", "cdf_Ac_aug"]] + [list(x) for x in zip(rep.grid, rep.cdf_a, rep.cdf_ac)]
        payload = {"spec": str(spec), "predicate": args.predicate, "sizes": [rep.s1, rep.s2, rep.s3], "statistic": rep.ks.statistic, "critical": rep.ks.critical, "pass": rep.passed}
        out.emit(payload, to_csv(rows) + json.dumps({"verdict": {"pass": rep.passed}}), rows)
        return verdict(rep.passed)
    raise InputError(f"unknown action {args.action}")


# -- fixture reproduction ------------------------------------------------------------

Z3Z4_SUBSET = ["1,0", "1,2", "2,0", "2,1", "2,2", "2,3"]
TABLE43_SYMBOLS = ["★", "#", "§", "•"]


def _table43(which: str) -> symbolic.IntervalTable:
    base = symbolic.group_interval_table(CyclicProduct([4]), "product")
    rows = [list(r) for r in base.values]
    if which in ("middle", "right"):
        rows[2], rows[3] = rows[3], rows[2]
    if which == "right":
        rows[0][2], rows[2][0] = rows[2][0], rows[0][2]
    return symbolic.IntervalTable.build(TABLE43_SYMBOLS, rows)


def repro(target: str) -> str:
    """CSV body of a reproducible table."""
    if target == "z3z4-intervals":
        g = CyclicProduct([3, 4])
        t = symbolic.group_interval_table(g, "left_quotient")
        a = t.subset(Z3Z4_SUBSET)
        pa = symbolic.conditional_interval_distribution(t, a)
        pc = symbolic.conditional_interval_distribution(t, a.complement())
        rows = [["value", "A", "Ac"]] + [[v, pa.get(v, Fraction(0)), pc.get(v, Fraction(0))] for v in g.labels]
        return to_csv(rows)
    if target == "z3z4-distances":
        space = constructions.build_space(json.loads(fixture_path("z3z4.json").read_text()))
        a = space.subset(Z3Z4_SUBSET)
        v = hexcvc.check_hex(space, a)
        la, lc = v.distA.as_dict(), v.distAc.as_dict()
        norm = a.measure**2
        rows = [["r", "A", "Ac"]] + [[r, la.get(r, 0) / norm, lc.get(r, 0) / norm] for r in sorted(set(la) | set(lc))]
        return to_csv(rows)
    if target.startswith("table43-"):
        return _table43(target.split("-", 1)[1]).to_csv()
    if target == "table44":
        return symbolic.IntervalTable.load(fixture_path("table44.csv")).to_csv()
    if target == "z7-volume":
        v = hexcvc.check_cvc(constructions.build_space(json.loads(fixture_path("z7_13.json").read_text())))
        return to_csv([["r", "rho"]] + [[r, m] for r, m in v.rho.steps])
    if target == "quartertone-histogram":
        rep = zrelation.homometry_classes(24, 12)
        return to_csv([["class_size", "count"]] + [[k, v] for k, v in rep.histogram.items()])
    raise InputError(f"unknown target {target!r}")


REPRO_TARGETS = ["z3z4-intervals", "z3z4-distances", "table43-left", "table43-middle", "table43-right", "table44", "z7-volume", "quartertone-histogram"]


def cmd_repro(args, out: Output) -> int:
    text = repro(args.target)
    out.header()
    if out.fmt == "json":
        rows = list(csv.reader(io.StringIO(text)))
        out.write(json.dumps({"target": args.target, "rows": rows, "config": out.config}, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write(text)
    return PASS


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; defaults are filled in by main()
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--threads", type=int, help="worker count (default: available cores)")
    common.add_argument("--format", choices=["text", "json", "csv"])
    common.add_argument("--out", help="write the result body to this file")

    p = argparse.ArgumentParser(prog="hexalab", description="Exact hexachordal and homometry checks.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("space", parents=[common], help="finite metric measure spaces")
    sp.add_argument("action", choices=["validate", "dist", "cvc", "hex", "patterson", "transitive", "export"])
    sp.add_argument("--recipe", required=True, help="recipe or space JSON, inline or as a file")
    sp.add_argument("--subset", help="point labels separated by ';', or run:k")
    sp.add_argument("--strict", action="store_true", help="treat triangle violations as errors")

    sy = sub.add_parser("symbolic", parents=[common], help="abstract interval tables")
    sy.add_argument("action", choices=["ind", "hexprime", "hexdd", "latin", "group", "oracle", "export"])
    sy.add_argument("table", nargs="?", help="CSV or JSON table")
    sy.add_argument("--group-check", action="store_true", help="also test associativity of the table")
    sy.add_argument("--group", default="cyclic:4", help="group for the 'group' action, e.g. cyclic:3,4")
    sy.add_argument("--mode", choices=["product", "left_quotient"], default="product")
    sy.add_argument("--trials", type=int, default=1000)
    sy.add_argument("--oracle-mode", dest="mode_oracle", choices=["hexprime", "hexdd"], default="hexprime")

    ti = sub.add_parser("tiling", parents=[common], help="tilings of Z_n")
    ti.add_argument("action", choices=["zeros", "check", "complements", "spectrum", "vuza"])
    ti.add_argument("--n", type=int, required=True)
    ti.add_argument("--a", required=True, help="comma-separated residues")
    ti.add_argument("--b", help="comma-separated residues")
    ti.add_argument("--all", action="store_true", help="complements without fixing 0")
    ti.add_argument("--max-hits", type=int, default=1)

    zr = sub.add_parser("zrel", parents=[common], help="interval content and homometry classes")
    zr.add_argument("action", choices=["ivec", "classes", "babbitt"])
    zr.add_argument("--n", type=int, required=True)
    zr.add_argument("--a", help="comma-separated residues")
    zr.add_argument("--k", type=int)
    zr.add_argument("--min-size", type=int, default=2)
    zr.add_argument("--budget", type=int, default=zrelation.DEFAULT_BUDGET)
    zr.add_argument("--force", action="store_true", help="ignore the enumeration budget")

    mc = sub.add_parser("mc", parents=[common], help="Monte Carlo on continuous spaces")
    mc.add_argument("action", choices=["sphere-band", "volume", "ks", "three-sample"])
    mc.add_argument("--n", type=int, default=100_000, help="number of pairs")
    mc.add_argument("--r", type=float, default=math.sqrt(2))
    mc.add_argument("--spec", default="sphere:2")
    mc.add_argument("--grid", default="0:2:0.2", help="lo:hi:step")
    mc.add_argument("--predicate", default="band")
    mc.add_argument("--alpha", type=float, default=0.01)
    mc.add_argument("--same", help="compare a sample file with itself")
    mc.add_argument("--a", help="first sample file")
    mc.add_argument("--b", help="second sample file")

    rp = sub.add_parser("repro", parents=[common], help="reproduce a fixture table as CSV")
    rp.add_argument("target", choices=REPRO_TARGETS)
    return p


COMMON_DEFAULTS = {"seed": 0, "threads": os.cpu_count() or 1, "format": "text", "out": None}

HANDLERS = {"space": cmd_space, "symbolic": cmd_symbolic, "tiling": cmd_tiling, "zrel": cmd_zrel, "mc": cmd_mc, "repro": cmd_repro}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else PASS
    for name, value in COMMON_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    args.command_line = f"{args.command} {getattr(args, 'action', None) or getattr(args, 'target', '')}".strip()
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return USAGE
    if args.command == "zrel" and args.action == "classes" and args.k is None:
        print("error: --k is required", file=sys.stderr)
        return USAGE
    if args.command in ("zrel",) and args.action == "ivec" and not args.a:
        print("error: --a is required", file=sys.stderr)
        return USAGE
    try:
        return HANDLERS[args.command](args, Output(args))
    except (HexalabError, ValueError, KeyError, IndexError, TypeError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 when every check passed, 1 when a check failed, 2 on a usage
error.  Reports go to stdout; when NOKSTRING_OUTPUT_DIR is set they are also
written to a file in that directory.
"""
import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bott_samelson import (
    derivative_valuation,
    expand_product,
    geometric_valuation,
    main_theorem_batch,
    matrix_coeff_poly,
)
from .hwmodule import DimensionCapError, build_hw_module
from .linalg import fmt_frac
from .nok import (
    IsotypicData,
    a1_toy_datum,
    fibered_count_oracle,
    fibered_polytope,
    flag_datum,
    string_polytope,
)
from .polytope import EmptyPolytopeError
from .rootdata import (
    RootSystemSpec,
    default_word,
    is_dominant,
    longest_element_words,
    positive_roots_simple,
    weyl_dim,
)
from .sagbi import (
    associativity_violations,
    degeneration_family,
    is_sagbi,
    section_ring_generators,
    section_ring_piece,
    section_ring_products,
    section_ring_subduction,
    section_ring_valuation,
    semigroup_algebra,
    subduct,
    ValuedGenerator,
)
from .polyval import MultiPoly, TermValuation
from .strings import _check_longest_word, cached_value_set

OUTPUT_ENV = "NOKSTRING_OUTPUT_DIR"


class UsageError(Exception):
    pass


# --- config ------------------------------------------------------------------

def _int_list(text, what):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"--{what} must be a comma-separated list of integers, got {text!r}")


def resolve_config(args):
    """Validate the shared options and return (spec, config dict)."""
    cfg = {"command": args.command_path}
    try:
        spec = RootSystemSpec(args.family, args.rank)
    except ValueError as err:
        raise UsageError(str(err))
    cfg["family"], cfg["rank"] = spec.family, spec.rank
    if getattr(args, "word", "missing") != "missing":
        if args.word is None:
            word = default_word(spec)
        else:
            word = _int_list(args.word, "word")
            try:
                word = _check_longest_word(spec, word)
            except ValueError as err:
                raise UsageError(str(err))
        cfg["word"] = list(word)
    for name in ("lam", "mu"):
        text = getattr(args, name, None)
        if text is None:
            continue
        lam = _int_list(text, "lambda" if name == "lam" else "mu")
        if len(lam) != spec.rank or not is_dominant(lam):
            raise UsageError(f"{lam} is not a dominant weight of {spec.label}")
        cfg["lambda" if name == "lam" else "mu"] = list(lam)
    for name in ("level_cap", "levels", "random", "seed", "index"):
        if hasattr(args, name) and getattr(args, name) is not None:
            v = getattr(args, name)
            if v < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
            cfg[name] = v
    if hasattr(args, "datum"):
        cfg["datum"] = args.datum
    return spec, cfg


def _module(spec, lam):
    try:
        return build_hw_module(spec, lam)
    except DimensionCapError as err:
        raise UsageError(str(err))


# --- commands ----------------------------------------------------------------

def cmd_roots(spec, cfg, args):
    words = longest_element_words(spec)
    return {
        "cartan_matrix": spec.cartan_matrix,
        "positive_roots_simple_coords": [list(r) for r in positive_roots_simple(spec.cartan)],
        "simple_roots": [list(spec.simple_root(i)) for i in range(1, spec.rank + 1)],
        "num_reduced_words_w0": len(words),
        "default_word": list(default_word(spec)),
    }, True


def cmd_module(spec, cfg, args):
    m = _module(spec, tuple(cfg["lambda"]))
    mult = m.weight_multiplicities()
    out = {
        "dim": m.dim,
        "weyl_dim": weyl_dim(spec, m.lam),
        "rows": [{"weight": list(w), "multiplicity": mult[w]} for w in sorted(mult, reverse=True)],
    }
    if args.export:
        out["module"] = m.to_json()
    return out, m.dim == out["weyl_dim"]


def cmd_value_set(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    _module(spec, lam)
    vs = cached_value_set(spec, lam, word)
    pts = vs.sorted_points()
    return {
        "size": len(pts),
        "weyl_dim": weyl_dim(spec, lam),
        "rows": [{"point": list(p)} for p in pts],
    }, len(pts) == weyl_dim(spec, lam)


def cmd_poly(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    m = _module(spec, lam)
    j = cfg.get("index", 0)
    if j >= m.dim:
        raise UsageError(f"--index must be below {m.dim}")
    f = matrix_coeff_poly(m, word, m.dual_basis()[j]).poly
    lex = geometric_valuation(f)
    der = derivative_valuation(f)
    return {
        "index": j,
        "poly": f.to_json(),
        "lex_max_exponent": list(lex),
        "derivative_exponent": list(der),
    }, lex == der


def cmd_verify(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    _module(spec, lam)
    rows = main_theorem_batch(spec, lam, word, cfg.get("random", 0), cfg.get("seed", 0))
    ok = all(r["match"] for r in rows)
    return {"pairs": len(rows), "mismatches": sum(not r["match"] for r in rows), "rows": rows}, ok


def cmd_expand(spec, cfg, args):
    word, lam, mu = tuple(cfg["word"]), tuple(cfg["lambda"]), tuple(cfg["mu"])
    ml, mm = _module(spec, lam), _module(spec, mu)
    ms = _module(spec, tuple(a + b for a, b in zip(lam, mu)))
    sl = cached_value_set(spec, lam, word).representatives
    sm = cached_value_set(spec, mu, word).representatives
    rows = []
    for a, s in enumerate(sl):
        for b, t in enumerate(sm):
            r = expand_product(ml, mm, ms, word, s, t)
            r["left"], r["right"] = a, b
            rows.append(r)
    return {"products": len(rows), "rows": rows}, all(r["ok"] for r in rows)


def _polytope_report(poly):
    out = poly.to_json()
    out["volume"] = fmt_frac(poly.volume())
    return out


def cmd_string_polytope(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    K = cfg.get("level_cap", 2)
    for k in range(1, K + 1):
        _module(spec, tuple(k * x for x in lam))
    poly = string_polytope(spec, word, lam, K)
    count = poly.lattice_count()
    out = {"polytope": _polytope_report(poly), "lattice_count": count, "weyl_dim": weyl_dim(spec, lam)}
    return out, count == out["weyl_dim"]


def _load_datum(spec, cfg, args):
    levels = cfg.get("levels", 4)
    kind = cfg.get("datum") or "flag"
    if kind == "flag":
        if "lambda" not in cfg:
            raise UsageError("--datum flag needs --lambda")
        return flag_datum(spec, tuple(cfg["lambda"]), levels)
    if kind == "a1-toy":
        if spec.label != "A1":
            raise UsageError("--datum a1-toy needs --family A --rank 1")
        return a1_toy_datum(spec, levels)
    try:
        with open(kind) as fh:
            data = IsotypicData.from_json(json.load(fh))
    except (OSError, ValueError, KeyError) as err:
        raise UsageError(f"cannot read isotypic data from {kind}: {err}")
    if data.spec != spec:
        raise UsageError("isotypic data root system differs from --family/--rank")
    return data


def cmd_fibered(spec, cfg, args):
    word = tuple(cfg["word"])
    data = _load_datum(spec, cfg, args)
    K = cfg.get("level_cap", 2)
    try:
        poly = fibered_polytope(data, word, K)
    except EmptyPolytopeError as err:
        raise UsageError(str(err))
    rows = []
    for k in range(1, cfg.get("levels", 4) + 1):
        got, want = poly.lattice_count(k), fibered_count_oracle(data, k)
        rows.append({"level": k, "lattice_count": got, "expected": want, "match": got == want})
    return {"polytope": _polytope_report(poly), "rows": rows}, all(r["match"] for r in rows)


def cmd_subduct(spec, cfg, args):
    if args.worked_example:
        x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
        val = TermValuation(2, highest=True)
        gens = [ValuedGenerator.make(x + y, val), ValuedGenerator.make(x * y, val)]
        h = x ** 2 + y ** 2
        trace = subduct(h, gens, val)
        ok = trace.complete and trace.replay(gens, MultiPoly.constant(2)) == h
        return {"input": h.to_json(), "trace": trace.to_json()}, ok
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    rows = section_ring_subduction(spec, lam, word, cfg.get("level_cap", 3))
    return {"rows": rows}, all(r["remainder_zero"] and r["replay_ok"] for r in rows)


def cmd_check(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    K = cfg.get("level_cap", 3)
    gens = section_ring_generators(spec, lam, word)
    sample = [section_ring_piece(spec, lam, word, k) for k in range(K + 1)]
    report = is_sagbi(gens, sample, section_ring_valuation(word))
    return report, report["ok"]


def cmd_degenerate(spec, cfg, args):
    word, lam = tuple(cfg["word"]), tuple(cfg["lambda"])
    K = cfg.get("level_cap", 2)
    products, points = section_ring_products(spec, lam, word, K)
    fam = degeneration_family(products)
    table = semigroup_algebra(points, K)
    ok = fam["t0"] == table and not associativity_violations(table)
    return {
        "t0_equals_semigroup_algebra": fam["t0"] == table,
        "constant_in_t": fam["constant_in_t"],
        "rows": fam["report"],
    }, ok


# --- output ------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_frac(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return str(v)


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    result = report["result"]
    rows = result.get("rows")
    if not isinstance(rows, list) or not rows or not isinstance(rows[0], dict):
        rows = [{"key": k, "value": v} for k, v in sorted(result.items())]
    cols = sorted({k for r in rows for k in r})
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()
    cells = [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = [f"# {report['config']['command']}  ok={report['ok']}  version={report['version']}"]
    lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _write_output(text, cfg, fmt):
    out_dir = os.environ.get(OUTPUT_ENV)
    if not out_dir:
        return
    os.makedirs(out_dir, exist_ok=True)
    name = cfg["command"].replace(" ", "-")
    with open(os.path.join(out_dir, f"{name}.{fmt if fmt != 'table' else 'txt'}"), "w") as fh:
        fh.write(text)


# --- parser ------------------------------------------------------------------

def _common(p, word=True, lam=True):
    p.add_argument("--family", required=True, help="A or C")
    p.add_argument("--rank", required=True, type=int)
    if word:
        p.add_argument("--word", help="reduced word for w0, e.g. 1,2,1 (default: lex-minimal)")
    if lam:
        p.add_argument("--lambda", dest="lam", required=True, help="dominant weight, e.g. 1,1")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    parser = _Parser(prog="nokstring", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("roots", help="root system data")
    _common(p, word=False, lam=False)
    p.set_defaults(func=cmd_roots, command_path="roots")

    p = sub.add_parser("module", help="build V_lambda")
    _common(p, word=False)
    p.add_argument("--export", action="store_true", help="include operator matrices")
    p.set_defaults(func=cmd_module, command_path="module")

    p = sub.add_parser("strings", help="string parametrization")
    ssub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = ssub.add_parser("value-set")
    _common(q)
    q.set_defaults(func=cmd_value_set, command_path="strings value-set")

    p = sub.add_parser("poly", help="Bott-Samelson polynomial of a dual basis vector")
    _common(p)
    p.add_argument("--index", type=int, default=0)
    p.set_defaults(func=cmd_poly, command_path="poly")

    p = sub.add_parser("verify-main-theorem", help="string parameters vs highest-term valuation")
    _common(p)
    p.add_argument("--random", type=int, default=0, help="extra random combinations")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify, command_path="verify-main-theorem")

    p = sub.add_parser("expand", help="expand basis products in V_{lambda+mu}")
    _common(p)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_expand, command_path="expand")

    p = sub.add_parser("nok", help="Newton-Okounkov bodies")
    nsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = nsub.add_parser("string-polytope")
    _common(q)
    q.add_argument("--level-cap", type=int, default=2)
    q.set_defaults(func=cmd_string_polytope, command_path="nok string-polytope")
    q = nsub.add_parser("fibered")
    _common(q, lam=False)
    q.add_argument("--lambda", dest="lam", help="weight for the flag datum")
    q.add_argument("--datum", default="flag", help="flag, a1-toy, or a JSON file")
    q.add_argument("--level-cap", type=int, default=2)
    q.add_argument("--levels", type=int, default=4, help="check lattice counts for k <= levels")
    q.set_defaults(func=cmd_fibered, command_path="nok fibered")

    p = sub.add_parser("sagbi", help="subduction and degenerations")
    gsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = gsub.add_parser("subduct")
    _common(q, lam=False)
    q.add_argument("--lambda", dest="lam")
    q.add_argument("--level-cap", type=int, default=3)
    q.add_argument("--worked-example", action="store_true", help="x^2+y^2 against x+y, xy")
    q.set_defaults(func=cmd_subduct, command_path="sagbi subduct")
    q = gsub.add_parser("check")
    _common(q)
    q.add_argument("--level-cap", type=int, default=3)
    q.set_defaults(func=cmd_check, command_path="sagbi check")
    q = gsub.add_parser("degenerate")
    _common(q)
    q.add_argument("--level-cap", type=int, default=2)
    q.set_defaults(func=cmd_degenerate, command_path="sagbi degenerate")
    return parser


def run(argv):
    """Return (exit code, rendered report or error message)."""
    try:
        args = build_parser().parse_args(argv)
        spec, cfg = resolve_config(args)
        if args.func is cmd_subduct and not args.worked_example and "lambda" not in cfg:
            raise UsageError("sagbi subduct needs --lambda unless --worked-example is given")
        result, ok = args.func(spec, cfg, args)
    except UsageError as err:
        return 2, f"usage error: {err}\n"
    except ArithmeticError as err:
        return 1, f"check failed: {err}\n"
    cfg["format"] = args.format
    report = {"config": cfg, "ok": bool(ok), "result": _jsonable(result), "version": __version__}
    text = render(report, args.format)
    _write_output(text, cfg, args.format)
    return (0 if ok else 1), text


def main(argv=None):
    try:
        code, text = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help / --version
        return exc.code or 0
    (sys.stdout if code != 2 else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

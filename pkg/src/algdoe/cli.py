"""Command-line interface.

Subcommands: gb, ideal, est, alias, indicator, classify, addfactors, model,
basis, mctest, exact, doptimal.  Text outputs use the polynomial text format;
structured reports are JSON with a top-level ``"schema": 1`` field.  Exit
codes: 0 success, 2 input error, 3 budget or scale error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .covariates import build_covariate_matrix, parse_model_terms, recode_integer
from .designs import (
    Design,
    design_ideal,
    est_monomials,
    alias_table,
    monomial_name,
    parse_design,
    parse_monomial,
)
from .doptimal import SearchSpec, d_optimal_search
from .errors import AlgdoeError, BudgetError, InputError, ScaleError
from .groebner import Budget, GroebnerBasis, buchberger
from .indicators import (
    FactorRelation,
    IndicatorFunction,
    classify_design,
    indicator_add_factors,
    indicator_from_design,
)
from .markov import markov_basis
from .mcmc import (
    DEFAULT_BURN_IN,
    DEFAULT_SAMPLES,
    ChainConfig,
    exact_p_value,
    mh_sample,
)
from .orders import TermOrder
from .polynomials import PolyRing

SCHEMA = 1


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_design(path: str) -> Design:
    return parse_design(_read(path))


def make_order(name: str, nvars: int, vars_spec: str | None, names) -> TermOrder:
    precedence = None
    if vars_spec:
        listed = [v.strip() for v in vars_spec.split(",") if v.strip()]
        index = {n: i for i, n in enumerate(names)}
        try:
            precedence = tuple(index[v] for v in listed)
        except KeyError as exc:
            raise InputError(f"unknown variable {exc.args[0]!r} in --vars") from exc
        if len(precedence) != nvars:
            raise InputError("--vars must list every variable exactly once")
    if name == "lex":
        return TermOrder.lex(nvars, precedence)
    if name == "grlex":
        return TermOrder.grlex(nvars, precedence)
    if name == "grevlex":
        return TermOrder.grevlex(nvars, precedence)
    if name.startswith("block:"):
        prefixes = [p.strip() for p in name[len("block:"):].split(",") if p.strip()]
        if not prefixes:
            raise InputError("block order needs at least one prefix")
        base = precedence if precedence is not None else tuple(range(nvars))
        blocks = []
        assigned: set[int] = set()
        for prefix in prefixes:
            vars_ = tuple(i for i in base if names[i].startswith(prefix)
                          and i not in assigned)
            if not vars_:
                raise InputError(f"no variables match block prefix {prefix!r}")
            assigned |= set(vars_)
            blocks.append((vars_, "grevlex"))
        if len(assigned) != nvars:
            raise InputError("block prefixes must cover every variable")
        return TermOrder.block(blocks)
    raise InputError(f"unknown order {name!r}")


def order_header(order: TermOrder, names) -> str:
    if order.kind == "block":
        spec = ";".join(
            f"{kind}({','.join(names[i] for i in vars_)})"
            for vars_, kind in order.blocks
        )
        return f"order=block:{spec}"
    prec = ",".join(names[i] for i in order.precedence)
    return f"order={order.kind} vars={prec}"


def print_basis(gb: GroebnerBasis, out) -> None:
    names = gb.ring.names
    print(order_header(gb.order, names), file=out)
    for g in gb.elements:
        print(g.text(gb.order), file=out)


def _budget(args) -> Budget:
    return Budget(max_pairs=args.max_pairs, max_terms=args.max_terms)


def _add_budget_flags(sub):
    sub.add_argument("--max-pairs", type=int, default=Budget().max_pairs)
    sub.add_argument("--max-terms", type=int, default=Budget().max_terms)


def _frac(x: Fraction) -> str:
    return str(x)


def _emit_json(payload: dict, out) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True), file=out)


# -- subcommand implementations -------------------------------------------------


def cmd_gb(args, out) -> int:
    if bool(args.design) == bool(args.gens):
        raise InputError("gb needs exactly one of --design or --gens")
    if args.design:
        d = load_design(args.design)
        order = make_order(args.order, d.m, args.vars, d.var_names)
        gb = design_ideal(d, order, budget=_budget(args))
    else:
        text = _read(args.gens)
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("order="):
            raise InputError("generator file must start with an order header")
        names = tuple(
            v.strip()
            for v in lines[0].split("vars=", 1)[1].split(",")
            if v.strip()
        )
        ring = PolyRing(names)
        order = make_order(args.order, len(names), args.vars, names)
        gens = [ring.parse(ln) for ln in lines[1:]]
        gb = buchberger(gens, order, budget=_budget(args))
    print_basis(gb, out)
    return 0


def cmd_ideal(args, out) -> int:
    d = load_design(args.design)
    order = make_order(args.order, d.m, args.vars, d.var_names)
    gb = design_ideal(d, order, budget=_budget(args))
    print_basis(gb, out)
    return 0


def cmd_est(args, out) -> int:
    d = load_design(args.design)
    order = make_order(args.order, d.m, args.vars, d.var_names)
    monos = list(est_monomials(d, order, budget=_budget(args)))
    # display in reading order: by degree, then by the natural variable order
    monos.sort(key=lambda mo: (sum(mo), tuple(-e for e in mo)))
    print(", ".join(monomial_name(mo, d.var_names) for mo in monos), file=out)
    return 0


def cmd_alias(args, out) -> int:
    d = load_design(args.design)
    classes = alias_table(d, args.max_degree)
    payload = {
        "schema": SCHEMA,
        "m": d.m,
        "n": d.n,
        "max_degree": args.max_degree,
        "classes": [
            [
                {"monomial": monomial_name(mo, d.var_names), "sign": sign}
                for mo, sign in cls
            ]
            for cls in classes
        ],
    }
    _emit_json(payload, out)
    return 0


def cmd_indicator(args, out) -> int:
    d = load_design(args.design)
    f = indicator_from_design(d)
    ring = PolyRing(d.var_names)
    order = TermOrder.grevlex(d.m)
    print(f"m={d.m}", file=out)
    print(f.to_polynomial(ring).text(order), file=out)
    return 0


def cmd_classify(args, out) -> int:
    d = load_design(args.design)
    cls = classify_design(d)
    payload = {
        "schema": SCHEMA,
        "m": d.m,
        "n": d.n,
        "class": cls.tag,
        "witness_words": [
            {"monomial": monomial_name(w.bits, d.var_names), "sign": w.sign}
            for w in cls.words
        ],
    }
    if cls.diagnostic:
        payload["diagnostic"] = cls.diagnostic
    _emit_json(payload, out)
    return 0


def parse_indicator_file(text: str) -> IndicatorFunction:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("m="):
        raise InputError("indicator file needs an 'm=<int>' header and a polynomial")
    try:
        m = int(lines[0][2:])
    except ValueError as exc:
        raise InputError(f"bad indicator header {lines[0]!r}") from exc
    ring = PolyRing(tuple(f"x{j + 1}" for j in range(m)))
    poly = ring.parse(" ".join(lines[1:]))
    return IndicatorFunction.from_polynomial(poly)


def cmd_addfactors(args, out) -> int:
    f1 = parse_indicator_file(_read(args.indicator))
    rel_lines = [
        ln.strip()
        for ln in _read(args.relations).splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    relations = []
    for pos, line in enumerate(rel_lines, start=1):
        body = line
        sign = 1
        if body.startswith("-"):
            sign = -1
            body = body[1:]
        elif body.startswith("+"):
            body = body[1:]
        word = parse_monomial(body.strip(), f1.m)
        relations.append(FactorRelation(pos, sign, word))
    f2 = indicator_add_factors(f1, relations)
    total = f2.m
    # added factors continue the x numbering so the output re-parses as an
    # indicator file
    ring = PolyRing(tuple(f"x{j + 1}" for j in range(total)))
    order = TermOrder.grevlex(total)
    print(f"m={total}", file=out)
    print(f2.to_polynomial(ring).text(order), file=out)
    return 0


def _load_model(args, d: Design):
    terms, contrast = parse_model_terms(_read(args.model), d.m)
    if args.contrast:
        contrast = args.contrast
    return build_covariate_matrix(d, terms, contrast)


def cmd_model(args, out) -> int:
    d = load_design(args.design)
    A = _load_model(args, d)
    recoded = recode_integer(A)
    payload = {
        "schema": SCHEMA,
        "n": A.n,
        "columns": A.ncols,
        "labels": list(A.labels),
        "contrast": A.contrast,
        "entries": [[str(v) for v in row] for row in A.rows()],
        "recoded": [list(col) for col in recoded],
    }
    _emit_json(payload, out)
    return 0


def cmd_basis(args, out) -> int:
    d = load_design(args.design)
    A = _load_model(args, d)
    basis = markov_basis(A, budget=_budget(args))
    payload = {
        "schema": SCHEMA,
        "n": A.n,
        "moves": [list(z) for z in basis.moves],
        "count": len(basis.moves),
    }
    _emit_json(payload, out)
    return 0


def _load_counts(path: str, n: int):
    values = _read(path).split()
    try:
        y = [int(v) for v in values]
    except ValueError as exc:
        raise InputError(f"counts file must hold integers: {exc}") from exc
    if len(y) != n:
        raise InputError(f"expected {n} counts, found {len(y)}")
    if any(v < 0 for v in y):
        raise InputError("counts must be nonnegative")
    return y


def cmd_mctest(args, out) -> int:
    d = load_design(args.design)
    A = _load_model(args, d)
    y0 = _load_counts(args.y, A.n)
    cfg = ChainConfig(
        seed=args.seed,
        burn_in=args.burnin,
        samples=args.samples,
        thinning=args.thin,
    )
    basis = markov_basis(A, budget=_budget(args))
    result = mh_sample(A, y0, basis, args.stat, cfg, chains=args.chains)
    payload = {
        "schema": SCHEMA,
        "method": result.method,
        "stat_kind": args.stat,
        "statistic": result.statistic,
        "p_value": result.p_value,
        "std_error": result.std_error,
        "samples_used": result.samples_used,
        "basis_size": len(basis.moves),
        "chain": {
            "seed": cfg.seed,
            "burn_in": cfg.burn_in,
            "samples": cfg.samples,
            "thinning": cfg.thinning,
            "chains": args.chains,
        },
    }
    _emit_json(payload, out)
    return 0


def cmd_exact(args, out) -> int:
    d = load_design(args.design)
    A = _load_model(args, d)
    y0 = _load_counts(args.y, A.n)
    result = exact_p_value(A, y0, args.stat, max_total=args.max_total)
    payload = {
        "schema": SCHEMA,
        "method": result.method,
        "stat_kind": args.stat,
        "statistic": result.statistic,
        "p_value": result.p_value,
        "p_exact": _frac(result.p_exact),
        "std_error": 0.0,
        "fiber_size": result.samples_used,
    }
    _emit_json(payload, out)
    return 0


def cmd_doptimal(args, out) -> int:
    spec = SearchSpec(
        m=args.m,
        n=args.n,
        mode=args.mode,
        seed=args.seed,
        restarts=args.restarts,
    )
    result = d_optimal_search(spec)
    payload = {
        "schema": SCHEMA,
        "m": spec.m,
        "n": spec.n,
        "mode": spec.mode,
        "exhaustive": result.exhaustive,
        "optimum": result.best_det,
        "optima_count": len(result.optima),
        "class_histogram": result.class_histogram(),
    }
    if len(result.optima) <= args.list_limit:
        payload["optima"] = [
            [list(run) for run in d.runs] for d in result.optima
        ]
    _emit_json(payload, out)
    return 0


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="algdoe",
        description="Exact computational algebra for fractional factorial designs",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    def with_design(sub, order=True):
        sub.add_argument("--design", required=True, help="design file")
        if order:
            sub.add_argument("--order", default="grevlex")
            sub.add_argument("--vars", default=None,
                             help="comma-separated precedence, most significant first")

    sub = subs.add_parser("gb", help="reduced Groebner basis of a design ideal or generator file")
    sub.add_argument("--design")
    sub.add_argument("--gens", help="polynomial file with an order header")
    sub.add_argument("--order", default="grevlex")
    sub.add_argument("--vars", default=None)
    _add_budget_flags(sub)
    sub.set_defaults(func=cmd_gb)

    sub = subs.add_parser("ideal", help="design ideal generators (reduced basis)")
    with_design(sub)
    _add_budget_flags(sub)
    sub.set_defaults(func=cmd_ideal)

    sub = subs.add_parser("est", help="standard monomials of the design ideal")
    with_design(sub)
    _add_budget_flags(sub)
    sub.set_defaults(func=cmd_est)

    sub = subs.add_parser("alias", help="complete-confounding classes")
    with_design(sub, order=False)
    sub.add_argument("--max-degree", type=int, default=2)
    sub.set_defaults(func=cmd_alias)

    sub = subs.add_parser("indicator", help="indicator function of a design")
    with_design(sub, order=False)
    sub.set_defaults(func=cmd_indicator)

    sub = subs.add_parser("classify", help="classify a two-level design")
    with_design(sub, order=False)
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("addfactors", help="indicator after adding defined factors")
    sub.add_argument("--indicator", required=True, help="indicator file")
    sub.add_argument("--relations", required=True,
                     help="file with one signed word per line, e.g. -x1*x2")
    sub.set_defaults(func=cmd_addfactors)

    sub = subs.add_parser("model", help="covariate matrix for a model file")
    with_design(sub, order=False)
    sub.add_argument("--model", required=True)
    sub.add_argument("--contrast", choices=("baseline", "symmetric", "complex"))
    sub.set_defaults(func=cmd_model)

    sub = subs.add_parser("basis", help="Markov basis of a covariate matrix")
    with_design(sub, order=False)
    sub.add_argument("--model", required=True)
    sub.add_argument("--contrast", choices=("baseline", "symmetric", "complex"))
    _add_budget_flags(sub)
    sub.set_defaults(func=cmd_basis)

    sub = subs.add_parser("mctest", help="Metropolis-Hastings conditional test")
    with_design(sub, order=False)
    sub.add_argument("--model", required=True)
    sub.add_argument("--contrast", choices=("baseline", "symmetric", "complex"))
    sub.add_argument("--y", required=True, help="counts file")
    sub.add_argument("--stat", choices=("pearson", "deviance"), default="pearson")
    sub.add_argument("--seed", type=int, required=True)
    sub.add_argument("--burnin", type=int, default=DEFAULT_BURN_IN)
    sub.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sub.add_argument("--thin", type=int, default=1)
    sub.add_argument("--chains", type=int, default=1)
    _add_budget_flags(sub)
    sub.set_defaults(func=cmd_mctest)

    sub = subs.add_parser("exact", help="exact conditional test by enumeration")
    with_design(sub, order=False)
    sub.add_argument("--model", required=True)
    sub.add_argument("--contrast", choices=("baseline", "symmetric", "complex"))
    sub.add_argument("--y", required=True)
    sub.add_argument("--stat", choices=("pearson", "deviance"), default="pearson")
    sub.add_argument("--max-total", type=int, default=30)
    sub.set_defaults(func=cmd_exact)

    sub = subs.add_parser("doptimal", help="D-optimal design search")
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--mode", choices=("exhaustive", "greedy-exchange"),
                     default="exhaustive")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--restarts", type=int, default=20)
    sub.add_argument("--list-limit", type=int, default=16)
    sub.set_defaults(func=cmd_doptimal)

    return parser


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (BudgetError, ScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except AlgdoeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

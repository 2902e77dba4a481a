"""Command-line front end: deterministic text/JSON/CSV reports for every engine.

Exit codes: 0 = success (all checks passed), 1 = a check ran and failed,
2 = usage or input error.  Output is byte-identical across runs for a fixed
configuration and seed; no emitted value is floating point, and rationals
are printed as ``num/den``.  The only environment variable honoured is
``GRASSNEST_OUTPUT_DIR``, which redirects relative ``--output`` paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .chern import (
    factorization_obstruction,
    quadratic_gram_determinant,
    complete_homogeneous,
    smoothness_certificate,
    verify_homogeneous_identities,
)
from .ffield import BadModulusError, MatGF, NotPrimeError, field_make
from .grassmann import (
    AmbientMismatchError,
    TooLargeError,
    enumerate_subspaces,
    gaussian_binomial,
    incidence_graph,
    table_lines,
)
from .nesting import (
    OddDimensionError,
    SingularMatrixError,
    contains,
    find_bijective_nesting,
    hall_check,
    linear_nesting_classifier,
    matching_lines,
    matching_report,
    perp,
    standard_alternating_form,
    symplectic_nesting_map,
)
from .schwarzenberger import (
    ChernCandidate,
    HypothesisViolatedError,
    NotSquarefreeError,
    classify_chern_splits,
    format_rational,
    schwarzenberger_check,
    trace_form_identity,
)

OUTPUT_DIR_ENV = "GRASSNEST_OUTPUT_DIR"

_INPUT_ERRORS = (
    NotPrimeError,
    BadModulusError,
    TooLargeError,
    AmbientMismatchError,
    OddDimensionError,
    SingularMatrixError,
    HypothesisViolatedError,
    NotSquarefreeError,
    ValueError,
)


@dataclass
class RunConfig:
    """Validated run parameters for one subcommand invocation."""

    group: str
    cmd: str
    p: int | None = None
    k: int = 1
    modulus: tuple | None = None
    q: int | None = None
    n: int | None = None
    i: int | None = None
    j: int | None = None
    dim: int = 1
    sid: int | None = None
    d_max: int | None = None
    m: int | None = None
    poly: tuple | None = None
    gram: tuple | None = None
    samples: int = 1000
    seed: int = 0
    fmt: str = "text"
    output: str | None = None
    timing: bool = False

    def field(self):
        if self.q is not None:
            p, k = _factor_prime_power(self.q)
            return field_make(p, k, self.modulus)
        if self.p is None:
            raise ValueError("a field is required: pass -q or -p (with -k)")
        return field_make(self.p, self.k, self.modulus)

    def field_q(self) -> int:
        if self.q is not None:
            _factor_prime_power(self.q)  # reject q that is not a prime power
            return self.q
        if self.p is None:
            raise ValueError("a field is required: pass -q or -p (with -k)")
        return self.p ** self.k


def _factor_prime_power(q: int):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _parse_ints(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _parse_gram(text: str) -> tuple:
    return tuple(_parse_ints(row) for row in text.split(";"))


def _emit(cfg: RunConfig, text_fn=None, json_obj=None, csv_fn=None) -> None:
    if cfg.fmt == "json":
        if json_obj is None:
            raise ValueError("json output not supported for this subcommand")
        payload = json.dumps(json_obj, indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        if csv_fn is None:
            raise ValueError("csv output not supported for this subcommand")
        payload = "\n".join(csv_fn()) + "\n"
    else:
        payload = "\n".join(text_fn()) + "\n"
    if cfg.output:
        path = cfg.output
        out_dir = os.environ.get(OUTPUT_DIR_ENV)
        if out_dir and not os.path.isabs(path):
            path = os.path.join(out_dir, path)
        with open(path, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _bool(b) -> str:
    return "true" if b else "false"


# -- handlers -------------------------------------------------------------------


def _cmd_grassmann_count(cfg: RunConfig) -> int:
    count = gaussian_binomial(cfg.n, cfg.i, cfg.field_q())
    obj = {
        "kind": "grassmann-count",
        "params": {"q": cfg.field_q(), "n": cfg.n, "i": cfg.i},
        "count": count,
    }
    _emit(cfg, lambda: [str(count)], obj)
    return 0


def _cmd_grassmann_enum(cfg: RunConfig) -> int:
    table = enumerate_subspaces(cfg.n, cfg.i, cfg.field())
    obj = {
        "kind": "grassmann-enum",
        "params": {"q": cfg.field_q(), "n": cfg.n, "dim": cfg.i},
        "count": len(table),
        "subspaces": [
            {"id": s.id, "basis": s.basis.to_lists()} for s in table.subspaces
        ],
    }
    _emit(cfg, lambda: list(table_lines(table)), obj)
    return 0


def _cmd_nest_match(cfg: RunConfig) -> int:
    params = {"q": cfg.field_q(), "n": cfg.n, "i": cfg.i, "j": cfg.j}
    t0 = time.monotonic()
    inc = incidence_graph(cfg.i, cfg.j, cfg.n, cfg.field())
    matching = find_bijective_nesting(inc)
    elapsed = int((time.monotonic() - t0) * 1000) if cfg.timing else 0
    report = matching_report(matching, params, elapsed)
    _emit(cfg, lambda: list(matching_lines(matching)), report)
    complementary = cfg.i + cfg.j == cfg.n
    failed = (complementary and not matching.perfect) or not report["verifiedNesting"]
    return 1 if failed else 0


def _cmd_nest_hall(cfg: RunConfig) -> int:
    inc = incidence_graph(cfg.i, cfg.j, cfg.n, cfg.field())
    rep = hall_check(inc, cfg.samples, cfg.seed)
    obj = {
        "kind": "nest-hall",
        "params": {"q": cfg.field_q(), "n": cfg.n, "i": cfg.i, "j": cfg.j,
                   "samples": cfg.samples, "seed": cfg.seed},
        "checkedSubsets": rep.checked_subsets,
        "minSlack": rep.min_slack,
        "doubleCountPairs": rep.double_count_pairs,
        "kN": rep.k_n,
        "doubleCountOk": rep.double_count_ok,
    }
    lines = [
        f"checkedSubsets\t{rep.checked_subsets}",
        f"minSlack\t{rep.min_slack}",
        f"doubleCountPairs\t{rep.double_count_pairs}",
        f"kN\t{rep.k_n}",
        f"doubleCountOk\t{_bool(rep.double_count_ok)}",
    ]
    _emit(cfg, lambda: lines, obj)
    return 0 if rep.min_slack >= 0 and rep.double_count_ok else 1


def _cmd_nest_perp(cfg: RunConfig) -> int:
    field = cfg.field()
    form = standard_alternating_form(field, cfg.n)
    if cfg.sid is not None:
        table = enumerate_subspaces(cfg.n, cfg.dim, field)
        image = perp(table[cfg.sid], form)
        obj = {
            "kind": "nest-perp",
            "params": {"q": cfg.field_q(), "n": cfg.n, "dim": cfg.dim, "id": cfg.sid},
            "perpId": image.id,
            "perpDim": image.dim,
            "basis": image.basis.to_lists(),
        }
        lines = [f"perpId\t{image.id}", f"perpDim\t{image.dim}"] + [
            "\t".join(str(e) for e in row) for row in image.basis.to_lists()
        ]
        _emit(cfg, lambda: lines, obj)
        return 0
    t0 = time.monotonic()
    matching = symplectic_nesting_map(form)
    involution = all(
        perp(matching.right[rid], form).id == lid
        for lid, rid in matching.pairs.items()
    )
    nesting_ok = all(
        contains(matching.left[lid], matching.right[rid])
        for lid, rid in matching.pairs.items()
    )
    elapsed = int((time.monotonic() - t0) * 1000) if cfg.timing else 0
    obj = {
        "kind": "nest-perp-map",
        "params": {"q": cfg.field_q(), "n": cfg.n},
        "pairs": [[l, matching.pairs[l]] for l in sorted(matching.pairs)],
        "perfect": matching.perfect,
        "involution": involution,
        "verifiedNesting": nesting_ok,
        "elapsedMs": elapsed,
    }
    _emit(cfg, lambda: list(matching_lines(matching)), obj)
    return 0 if matching.perfect and involution and nesting_ok else 1


def _cmd_nest_linear_check(cfg: RunConfig) -> int:
    field = cfg.field()
    gram = MatGF.from_rows(field, [list(r) for r in cfg.gram])
    verdict = linear_nesting_classifier(gram)
    obj = {
        "kind": "nest-linear-check",
        "params": {"q": cfg.field_q(), "n": gram.rows},
        "gram": gram.to_lists(),
        "isAlternating": verdict.is_alternating,
        "isNestingExhaustive": verdict.is_nesting_exhaustive,
        "agree": verdict.agree,
    }
    lines = [
        f"isAlternating\t{_bool(verdict.is_alternating)}",
        f"isNestingExhaustive\t{_bool(verdict.is_nesting_exhaustive)}",
        f"agree\t{_bool(verdict.agree)}",
    ]
    _emit(cfg, lambda: lines, obj)
    return 0 if verdict.agree else 1


def _cmd_chern_verify(cfg: RunConfig) -> int:
    report = verify_homogeneous_identities(cfg.d_max)
    obj = {
        "kind": "chern-verify",
        "params": {"dMax": cfg.d_max},
        "ok": report.ok,
        "failures": [
            {"identity": name, "d": d, "term": term}
            for name, d, term in report.failures
        ],
    }
    lines = [f"identities d=2..{cfg.d_max}\t{_bool(report.ok)}"] + [
        f"failure\t{name}\td={d}\t{term}" for name, d, term in report.failures
    ]
    _emit(cfg, lambda: lines, obj)
    return 0 if report.ok else 1


def _cmd_chern_certificate(cfg: RunConfig) -> int:
    chain = smoothness_certificate(cfg.d_max)
    gram_det = quadratic_gram_determinant(complete_homogeneous(2, 3, 2))
    obj = {"kind": "chern-certificate", "params": {"dMax": cfg.d_max}}
    obj.update(chain.to_json())
    obj["quadricGramDet"] = f"{gram_det.numerator}/{gram_det.denominator}"
    lines = [f"d={e.d}\tgcdDegree={e.gcd.degree}" for e in chain.entries]
    lines.append(f"pass\t{_bool(chain.passed)}")
    lines.append(f"quadricGramDet\t{gram_det.numerator}/{gram_det.denominator}")
    _emit(cfg, lambda: lines, obj)
    return 0 if chain.passed else 1


def _cmd_chern_obstruction(cfg: RunConfig) -> int:
    verdict = factorization_obstruction(cfg.n, cfg.i, cfg.j)
    obj = {
        "kind": "chern-obstruction",
        "params": {"n": cfg.n, "i": cfg.i, "j": cfg.j},
        "noFactorization": verdict.no_factorization,
        "certificate": verdict.certificate.to_json() if verdict.certificate else None,
        "survivingJ": list(verdict.surviving_j) if verdict.surviving_j is not None else None,
    }
    lines = [f"noFactorization\t{_bool(verdict.no_factorization)}"]
    if verdict.surviving_j is not None:
        lines.append("survivingJ\t" + ",".join(str(j) for j in verdict.surviving_j))
    _emit(cfg, lambda: lines, obj)
    if verdict.certificate is not None and not verdict.certificate.passed:
        return 1
    return 0


def _cmd_schw_check(cfg: RunConfig) -> int:
    candidate = ChernCandidate.from_coeffs(cfg.poly)
    report = schwarzenberger_check(candidate, cfg.m)
    obj = {"kind": "schw-check", "params": {"poly": list(candidate.coeffs), "m": cfg.m}}
    obj.update(report.to_json())
    lines = [
        f"B_{s}_{cfg.m}\t{format_rational(v)}"
        for s, v in zip(report.s_values, report.values)
    ]
    lines.append(f"pass\t{_bool(report.passed)}")
    _emit(cfg, lambda: lines, obj)
    return 0 if report.passed else 1


def _cmd_schw_classify(cfg: RunConfig) -> int:
    table = classify_chern_splits(cfg.n)
    obj = table.to_json()

    def text():
        out = []
        for e in table.entries:
            out.append(
                "\t".join([
                    f"j={e.j}",
                    "p=" + ",".join(str(c) for c in e.p_coeffs),
                    "q=" + ",".join(str(c) for c in e.q_coeffs),
                    f"validJ={_bool(e.valid_j)}",
                    f"survivor={_bool(e.survivor)}",
                ]) + (f"\tnote={e.annotation}" if e.annotation else "")
            )
        out.append("survivors\t" + ",".join(str(e.j) for e in table.survivors))
        return out

    _emit(cfg, text, obj, table.csv_rows)
    return 0


def _cmd_schw_trace(cfg: RunConfig) -> int:
    candidate = ChernCandidate.from_coeffs(cfg.poly)
    report = trace_form_identity(candidate, cfg.m)
    obj = {
        "kind": "schw-trace",
        "params": {"poly": list(candidate.coeffs), "m": cfg.m},
        "ok": report.ok,
        "checks": [
            {"i": i, "trace": lhs, "scaledBinomialSum": format_rational(rhs)}
            for i, lhs, rhs in report.rows
        ],
    }
    lines = [
        f"i={i}\ttrace={lhs}\tscaledBinomialSum={format_rational(rhs)}"
        for i, lhs, rhs in report.rows
    ]
    lines.append(f"ok\t{_bool(report.ok)}")
    _emit(cfg, lambda: lines, obj)
    return 0 if report.ok else 1


# -- parser -----------------------------------------------------------------------


def _add_field_args(sp, count_only=False):
    sp.add_argument("-q", type=int, help="field size (prime power)")
    if not count_only:
        sp.add_argument("-p", type=int, help="characteristic (alternative to -q)")
        sp.add_argument("-k", type=int, default=1, help="extension degree")
        sp.add_argument("--modulus", type=str,
                        help="comma-separated modulus coefficients, constant first")


def _add_output_args(sp, formats=("text", "json")):
    sp.add_argument("--format", "-f", choices=formats, default="text")
    sp.add_argument("--output", "-o", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="grassnest",
        description="Exact nesting maps of finite Grassmannians, truncated "
                    "Chern-class calculus, and Schwarzenberger integrality checks.",
    )
    groups = ap.add_subparsers(dest="group", required=True)

    g = groups.add_parser("grassmann", help="Grassmannian counts and tables")
    gs = g.add_subparsers(dest="cmd", required=True)
    sp = gs.add_parser("count", help="number of i-subspaces of F_q^n")
    _add_field_args(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_grassmann_count)
    sp = gs.add_parser("enum", help="materialize Gr(i, F_q^n)")
    _add_field_args(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_grassmann_enum)

    g = groups.add_parser("nest", help="nesting maps and matchings")
    gs = g.add_subparsers(dest="cmd", required=True)
    sp = gs.add_parser("match", help="maximum nesting matching Gr(i) -> Gr(j)")
    _add_field_args(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("--timing", action="store_true",
                    help="report real elapsed ms (breaks byte-identical output)")
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_nest_match)
    sp = gs.add_parser("hall", help="sampled marriage-condition diagnostics")
    _add_field_args(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_nest_hall)
    sp = gs.add_parser("perp", help="orthogonal-complement nesting map")
    _add_field_args(sp)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--dim", type=int, default=1, help="subspace dimension for --id")
    sp.add_argument("--id", dest="sid", type=int,
                    help="perp of one table entry instead of the whole line map")
    sp.add_argument("--timing", action="store_true")
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_nest_perp)
    sp = gs.add_parser("linear-check",
                       help="alternating <-> nesting classifier for a Gram matrix")
    _add_field_args(sp)
    sp.add_argument("--gram", required=True,
                    help="rows separated by ';', entries by ',' (e.g. '0,1;1,0')")
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_nest_linear_check)

    g = groups.add_parser("chern", help="truncated Chern-class calculus")
    gs = g.add_subparsers(dest="cmd", required=True)
    sp = gs.add_parser("verify", help="exact identities of the homogeneous sums")
    sp.add_argument("--dmax", dest="d_max", type=int, default=12)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_chern_verify)
    sp = gs.add_parser("certificate", help="boundary gcd certificate chain")
    sp.add_argument("--dmax", dest="d_max", type=int, default=50)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_chern_certificate)
    sp = gs.add_parser("obstruction", help="factorization obstruction for (n, i, j)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-i", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_chern_obstruction)

    g = groups.add_parser("schw", help="Schwarzenberger integrality engine")
    gs = g.add_subparsers(dest="cmd", required=True)
    sp = gs.add_parser("check", help="integrality of the binomial sums on P^m")
    sp.add_argument("--poly", required=True, help="Chern polynomial, constant first")
    sp.add_argument("-m", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_schw_check)
    sp = gs.add_parser("classify", help="cyclotomic splits of 1 + t + ... + t^(n-1)")
    sp.add_argument("-n", type=int, required=True)
    _add_output_args(sp, formats=("text", "json", "csv"))
    sp.set_defaults(handler=_cmd_schw_classify)
    sp = gs.add_parser("trace", help="trace-form cross-check of the binomial sums")
    sp.add_argument("--poly", required=True)
    sp.add_argument("-m", type=int, required=True)
    _add_output_args(sp)
    sp.set_defaults(handler=_cmd_schw_trace)

    return ap


def _config_from_args(args) -> RunConfig:
    cfg = RunConfig(group=args.group, cmd=args.cmd)
    for name in ("p", "q", "n", "i", "j", "sid", "d_max", "m", "samples", "seed"):
        if getattr(args, name, None) is not None:
            setattr(cfg, name, getattr(args, name))
    cfg.k = getattr(args, "k", 1) or 1
    if getattr(args, "modulus", None):
        cfg.modulus = _parse_ints(args.modulus)
    if getattr(args, "poly", None):
        cfg.poly = _parse_ints(args.poly)
    if getattr(args, "gram", None):
        cfg.gram = _parse_gram(args.gram)
    cfg.dim = getattr(args, "dim", 1) or 1
    cfg.fmt = getattr(args, "format", "text")
    cfg.output = getattr(args, "output", None)
    cfg.timing = bool(getattr(args, "timing", False))
    return cfg


def dispatch(argv) -> int:
    """Parse ``argv`` and run the selected subcommand, returning the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed its diagnostic
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _config_from_args(args)
        return args.handler(cfg)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

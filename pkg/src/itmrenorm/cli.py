"""Command-line front end and lemma-verification driver.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
Rational parameters are accepted as "p/q" strings (or decimals, converted
exactly).  A flat key=value config file may supply defaults; explicit
flags override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import dimension, gasket, simplicial, spectrum
from .alphabet import Letter, Perm, word_to_string
from .cocycle import cylinder, hole_triangle, product
from .exact import format_fraction, mat_mul, parse_fraction
from .itm import BtParams, classify
from .renorm import (
    InductionState,
    gauss_step,
    gauss_via_induction,
    run_induction,
    trace_csv,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _parse_policy(text: str):
    if text == "uniform":
        return "uniform"
    return float(text)


# ---------------------------------------------------------------------------
# Verification suites (each returns a list of (check name, ok, detail))

Check = Tuple[str, bool, str]


def _suite_table1() -> List[Check]:
    rows = spectrum.table1_reproduce()
    checks = [("table rows = 21", len(rows) == 21, str(len(rows)))]
    first, last = rows[0], rows[-1]
    checks.append(
        (
            "first row (Me1, Me2)",
            (first.u_label, first.v_label, first.z, first.mtz, first.z_dnorm, first.mtz_dnorm)
            == ("Me1", "Me2", (-1, 0, 3), (0, 0, 1), 4, 1),
            repr(first),
        )
    )
    checks.append(
        (
            "last row (Me3, M(e1-e3))",
            (last.u_label, last.v_label, last.z, last.mtz, last.z_dnorm, last.mtz_dnorm)
            == ("Me3", "M(e1-e3)", (0, 1, -1), (0, 1, 0), 2, 1),
            repr(last),
        )
    )
    best = max(r.ratio for r in rows)
    checks.append(("max ratio = 4/5", best == Fraction(4, 5), str(best)))
    return checks


def _suite_norms() -> List[Check]:
    checks = []
    a, ca, b, cb = Letter.A, Letter.CA, Letter.B, Letter.CB
    for k in range(11):
        m = product([a] * k + [ca])
        r = spectrum.cone_sup_dnorm(m)
        checks.append(("A^%dCA norm 1" % k, r.value == 1, str(r.value)))
        m = product([b] * k + [cb])
        r = spectrum.cone_sup_dnorm(m)
        checks.append(("B^%dCB norm 1" % k, r.value == 1, str(r.value)))
    for word, name in (((a, ca, b, cb), "ACABCB"), ((b, cb, a, ca), "BCBACA")):
        r = spectrum.cone_sup_dnorm(product(word))
        checks.append((name + " norm 4/5", r.value == Fraction(4, 5), str(r.value)))
    return checks


def _suite_gamma(sample_size: int = 2000, seed: int = 0) -> List[Check]:
    rep = dimension.verify_gamma_lemmas(sample_size, 30, seed)
    return [
        ("sub-simplex preservation", rep.simplex_preservation_ok, ""),
        ("nesting of transposed images", rep.nesting_ok, ""),
        ("epsilon_2 > 0", rep.epsilon2 > 0, "%.4g" % rep.epsilon2),
        (
            "distortion constants finite",
            np.isfinite(rep.distortion_diam) and np.isfinite(rep.distortion_area),
            "diam %.4g area %.4g" % (rep.distortion_diam, rep.distortion_area),
        ),
    ]


def _suite_zariski() -> List[Check]:
    return [("Lie-algebra rank 8", dimension.zariski_rank_check(), "")]


def _suite_simplicial() -> List[Check]:
    g = simplicial.arc_graph()
    prods11 = simplicial.first_return_products(g, "11", ("11", "13"))
    prods13 = simplicial.first_return_products(g, "13", ("11", "13"))
    ma = product([Letter.A])
    mca = product([Letter.CA])
    mb = product([Letter.B])
    mcb = product([Letter.CB])
    ok11 = {m for _, m in prods11} == {ma, mca}
    ok13 = {m for _, m in prods13} == {mb, mcb}
    cond, witness = simplicial.check_strong_nondegeneracy_cond2(g)
    return [
        ("first returns at 11 = {A, CA}", ok11, str(prods11)),
        ("first returns at 13 = {B, CB}", ok13, str(prods13)),
        ("strong non-degeneracy condition", cond, str(witness)),
    ]


def _suite_gauss(samples: int = 500, seed: int = 1) -> List[Check]:
    import random

    rng = random.Random(seed)
    ok = True
    detail = ""
    for _ in range(samples):
        q = rng.randint(5, 9999)
        k = rng.randint(2, q - 1)
        alpha = Fraction(k, q)
        beta = Fraction(rng.randint(1, k - 1), q)
        if not 0 < beta < alpha < 1:
            continue
        via = gauss_via_induction(alpha, beta)
        direct = gauss_step(alpha, beta)
        # applicable iff the image stays in the open parameter region
        applicable = 0 < direct[1] < direct[0]
        if applicable != (via is not None):
            ok = False
            detail = "alpha=%s beta=%s" % (alpha, beta)
            break
        if via is not None and via != direct:
            ok = False
            detail = "alpha=%s beta=%s via=%s direct=%s" % (alpha, beta, via, direct)
            break
    return [("Gauss map via induction", ok, detail)]


def _triangle_area(verts) -> Fraction:
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = verts
    det = (
        a1 * (b2 * c3 - b3 * c2)
        - b1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * b3 - a3 * b2)
    )
    return abs(det)


def _suite_partition() -> List[Check]:
    checks = []
    for perm, stay, swap in (
        (Perm.P123, Letter.A, Letter.CA),
        (Perm.P213, Letter.B, Letter.CB),
    ):
        tri_stay = _anchored_cylinder(perm, stay)
        tri_swap = _anchored_cylinder(perm, swap)
        hole = hole_triangle(perm)
        total = (
            _triangle_area(tri_stay) + _triangle_area(tri_swap) + _triangle_area(hole)
        )
        checks.append(
            ("partition areas sum to 1 at %s" % perm.name, total == 1, str(total))
        )
    p123_hole = hole_triangle(Perm.P123)
    expected = (
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(1, 2), Fraction(1, 2), Fraction(0)),
        (Fraction(1, 2), Fraction(0), Fraction(1, 2)),
    )
    checks.append(
        ("hole vertices at P123", tuple(p123_hole) == expected, str(p123_hole))
    )
    return checks


def _anchored_cylinder(perm: Perm, letter: Letter):
    if perm is Perm.P123:
        return cylinder([letter])
    # the P213 picture is the mirror one: normalize columns of the matrix
    from .alphabet import matrix_of
    from .exact import normalize_simplex

    m = matrix_of(letter)
    return tuple(
        normalize_simplex(tuple(m[i][j] for i in range(3))) for j in range(3)
    )


_SUITES: Dict[str, Callable[[], List[Check]]] = {
    "table1": _suite_table1,
    "norms": _suite_norms,
    "gamma": _suite_gamma,
    "zariski": _suite_zariski,
    "simplicial": _suite_simplicial,
    "gauss": _suite_gauss,
    "partition": _suite_partition,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    report = {}
    failed = False
    for name in names:
        checks = _SUITES[name]()
        report[name] = [
            {"check": c, "ok": ok, "detail": detail} for c, ok, detail in checks
        ]
        for c, ok, detail in checks:
            line = "%s: %s %s" % (name, "PASS" if ok else "FAIL", c)
            if detail and not ok:
                line += " (%s)" % detail
            print(line)
            failed |= not ok
    if args.format == "json":
        print(json.dumps(report, indent=2, default=str))
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Other commands


def _params_from_args(args) -> BtParams:
    if args.alpha is not None and args.beta is not None:
        return BtParams(parse_fraction(args.alpha), parse_fraction(args.beta))
    if args.a is not None and args.b is not None and args.c is not None:
        a, b, c = (parse_fraction(x) for x in (args.a, args.b, args.c))
        return BtParams.from_lengths(a, b, c)
    raise SystemExit(EXIT_USAGE)


def cmd_classify(args) -> int:
    try:
        params = _params_from_args(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    result = classify(params, args.max_steps)
    run = run_induction(
        InductionState(Perm.P123, params.lengths), min(args.max_steps, 32)
    )
    verdict = {
        "finite": "FiniteType",
        "degenerate": "Degenerate",
        "infinite_up_to": "InfiniteUpTo(%d)" % args.max_steps,
    }[result.kind]
    print(
        json.dumps(
            {
                "verdict": verdict,
                "steps": result.step,
                "word_prefix": word_to_string(run.word),
            }
        )
    )
    return EXIT_OK


def cmd_induce(args) -> int:
    try:
        params = _params_from_args(args)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    run = run_induction(InductionState(Perm.P123, params.lengths), args.max_steps)
    sys.stdout.write(trace_csv(run))
    return EXIT_OK


def cmd_gauss(args) -> int:
    alpha = parse_fraction(args.alpha)
    beta = parse_fraction(args.beta)
    try:
        direct = gauss_step(alpha, beta)
        via = gauss_via_induction(alpha, beta)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    print(
        json.dumps(
            {
                "gauss_step": [format_fraction(x) for x in direct],
                "via_induction": (
                    [format_fraction(x) for x in via] if via is not None else None
                ),
                "applicable": via is not None,
            }
        )
    )
    return EXIT_OK


def cmd_simplicial_check(args) -> int:
    checks = _suite_simplicial()
    for c, ok, detail in checks:
        print("%s: %s" % ("PASS" if ok else "FAIL", c))
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_VERIFY


def cmd_lyapunov(args) -> int:
    result = spectrum.lyapunov_estimate(
        policy=_parse_policy(args.policy),
        steps=args.steps,
        trials=args.trials,
        seed=args.seed,
        renorm_every=args.renorm_every,
    )
    if args.format == "json":
        print(json.dumps(result.as_dict(), sort_keys=True))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["exponent", "value", "stderr"])
        writer.writerow(["lambda1", result.lambda1, result.stderr1])
        writer.writerow(["lambda2", result.lambda2, result.stderr2])
        writer.writerow(["lambda3", result.lambda3, result.stderr3])
    return EXIT_OK


def cmd_dimension(args) -> int:
    if args.what == "affinity":
        est = dimension.affinity_dimension_estimate(args.depth, args.tol)
        if args.format == "json":
            print(
                json.dumps(
                    {
                        "s_star": est.s_star,
                        "per_depth_roots": est.per_depth_roots,
                        "depth": est.n_max,
                        "tol": est.tol,
                    }
                )
            )
        else:
            writer = csv.writer(sys.stdout)
            writer.writerow(["depth", "root"])
            for n, root in enumerate(est.per_depth_roots, start=1):
                writer.writerow([n, "" if root is None else root])
        return EXIT_OK
    if args.what == "gamma0":
        levels = dimension.gamma0_series(args.ell_max)
        writer = csv.writer(sys.stdout)
        writer.writerow(["ell", "count", "s_sum", "s_sum_distinct", "min_arc", "max_arc"])
        for lv in levels:
            writer.writerow(
                [lv.ell, lv.count, lv.s_sum, lv.s_sum_distinct, lv.min_arc, lv.max_arc]
            )
        return EXIT_OK
    ok = dimension.zariski_rank_check()
    print("PASS rank 8" if ok else "FAIL rank 8")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gasket(args) -> int:
    try:
        if args.action == "render":
            config = gasket.RenderConfig(
                depth=args.depth,
                resolution=args.size,
                chart=args.chart,
                mode=args.mode,
            )
            img = gasket.render(config)
            gasket.write_image(img, args.out)
            print("wrote %s (%d occupied pixels)" % (args.out, int(img.sum())))
            return EXIT_OK
        points = gasket.sample_points(args.depth, args.per_cylinder, args.seed)
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["a", "b", "c"])
            writer.writerows(points.tolist())
        print("wrote %s (%d points)" % (args.out, len(points)))
        return EXIT_OK
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO


def cmd_report(args) -> int:
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        img = gasket.render(gasket.RenderConfig(depth=10, resolution=512))
        gasket.write_ppm(img, os.path.join(args.out_dir, "gasket.ppm"))
        result = spectrum.lyapunov_estimate(
            policy="uniform", steps=20000, trials=8, seed=args.seed
        )
        with open(os.path.join(args.out_dir, "lyapunov.json"), "w") as fh:
            json.dump(result.as_dict(), fh, sort_keys=True, indent=2)
        est = dimension.affinity_dimension_estimate(10, 1e-4)
        with open(os.path.join(args.out_dir, "dimension.csv"), "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["depth", "root"])
            for n, root in enumerate(est.per_depth_roots, start=1):
                writer.writerow([n, "" if root is None else root])
        print("report written to %s" % args.out_dir)
        return EXIT_OK
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_IO


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itmrenorm",
        description="Three-interval translation maps: renormalization, "
        "Lyapunov spectrum, and gasket dimension.",
    )
    parser.add_argument("--config", help="flat key=value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("--alpha")
        p.add_argument("--beta")
        p.add_argument("--a")
        p.add_argument("--b")
        p.add_argument("--c")

    p = sub.add_parser("classify", help="finite/infinite-type verdict")
    add_params(p)
    p.add_argument("--max-steps", type=int, default=100)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("induce", help="CSV induction trace")
    add_params(p)
    p.add_argument("--max-steps", type=int, default=50)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("gauss", help="one Gauss-map step, two ways")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("simplicial-check", help="graph-formalism checks")
    p.set_defaults(func=cmd_simplicial_check)

    p = sub.add_parser("lyapunov", help="Monte Carlo Lyapunov spectrum")
    p.add_argument("--policy", default="uniform")
    p.add_argument("--steps", type=int, default=10**5)
    p.add_argument("--trials", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--renorm-every", type=int, default=20)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_lyapunov)

    p = sub.add_parser("dimension", help="dimension estimates")
    p.add_argument(
        "what", nargs="?", choices=("affinity", "gamma0", "zariski"), default="affinity"
    )
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--ell-max", type=int, default=12)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("gasket", help="render or sample the gasket")
    p.add_argument("action", choices=("render", "sample"))
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--size", type=int, default=1024)
    p.add_argument("--chart", choices=("simplex", "alphabeta"), default="simplex")
    p.add_argument("--mode", choices=("fill", "carve"), default="fill")
    p.add_argument("--per-cylinder", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="gasket.ppm")
    p.set_defaults(func=cmd_gasket)

    p = sub.add_parser("verify", help="lemma verification suites")
    p.add_argument(
        "suite",
        choices=tuple(_SUITES) + ("all",),
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="artifact bundle")
    p.add_argument("--out-dir", default="report")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_report)

    return parser


def _apply_config(argv: List[str]) -> List[str]:
    """Insert config-file key=value pairs as flags right after the
    subcommand, so explicit flags (later in argv) win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    path = argv[idx + 1]
    try:
        with open(path) as fh:
            pairs = []
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, _, value = line.partition("=")
                pairs.extend(["--" + key.strip().replace("_", "-"), value.strip()])
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        raise SystemExit(EXIT_IO)
    rest = argv[:idx] + argv[idx + 2 :]
    for i, token in enumerate(rest):
        if not token.startswith("-"):
            return rest[: i + 1] + pairs + rest[i + 1 :]
    return rest + pairs


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = _apply_config(argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

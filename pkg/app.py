"""
Command-line entry point.

    python app.py ila --lambda 2,1 --format text
    python app.py verify --suite qkz --nmax 4
    python app.py joseph --shape 2,2 --family tworow
    python app.py residue --shape 2,1 --a 2
    python app.py selberg --check barnes
    python app.py yangbaxter --N 3

JSON goes to stdout; logs and failure diagnostics go to stderr.
Exit status: 0 success, 1 failed check or computation error, 2 usage error.
"""
import argparse
import logging
import sys
from dataclasses import replace
from itertools import combinations

from models.blocks import SUITES, BlockVerifier
from models.joseph import (
    check_cyclicity,
    check_exchange,
    check_exchbis,
    check_identification,
    joseph_family,
)
from models.combinat import exchange_matrices
from models.minimal import build_Ilambda, h0_sign_table, specialize_h0
from models.residue import CONVENTIONS, build_integrand, component_index, iterated_residue
from models.selberg import (
    SelbergQuadrature,
    barnes_check,
    check_constant,
    default_samples,
    random_barnes_points,
)
from models.tensor import WeightLambda, check_yang_baxter
from utils.exactalg import QcbError, UsageError
from utils.reports import to_json
from utils.settings import load_settings, validate

logger = logging.getLogger("app")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
BARNES_TOLERANCE = 1e-8


def configure_logging(level):
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
    root.setLevel(level.upper())


def parse_ints(text, what="value"):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError as exc:
        raise UsageError(f"cannot parse {what} {text!r}") from exc


def parse_shape(text):
    return tuple(p for p in parse_ints(text, "shape") if p)


def build_parser():
    parser = argparse.ArgumentParser(prog="app.py", description="Minimal polynomials, q-conformal blocks and qKZ checks")
    parser.add_argument("--config", help="alternative config.toml")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--threads", type=int, help="worker count (overrides QCB_THREADS)")
    sub = parser.add_subparsers(dest="verb", required=True)

    ila = sub.add_parser("ila", help="print I_λ")
    ila.add_argument("--lambda", dest="lam", required=True, help="comma separated weight, e.g. 2,1")
    ila.add_argument("--h0", action="store_true", help="specialize to h = 0")
    ila.add_argument("--descent", choices=("leftmost", "rightmost"), default="leftmost")
    ila.add_argument("--format", choices=("json", "text"), default="json")

    verify = sub.add_parser("verify", help="run block verification suites")
    verify.add_argument("--suite", nargs="+", choices=SUITES + ("all",), default=["all"])
    verify.add_argument("--nmax", type=int)
    verify.add_argument("--format", choices=("json", "text"), default="json")

    joseph = sub.add_parser("joseph", help="extended Joseph polynomials")
    joseph.add_argument("--shape", required=True)
    joseph.add_argument("--family", choices=("tworow", "twocol"), default="tworow")
    joseph.add_argument("--check", nargs="*", choices=("identification", "exchange", "cyclicity"), default=[])
    joseph.add_argument("--format", choices=("json", "text"), default="json")

    residue = sub.add_parser("residue", help="components of I_λ by iterated residues")
    residue.add_argument("--shape", required=True, help="two-row shape n-p,p, e.g. 2,1")
    residue.add_argument("--a", help="positions of the letters 2; all index sets when omitted")
    residue.add_argument("--convention", choices=CONVENTIONS + ("both",), default="both")

    selberg = sub.add_parser("selberg", help="numerical q-Selberg checks at h = 1")
    selberg.add_argument("--check", choices=("barnes", "c2", "c3"), required=True)

    yb = sub.add_parser("yangbaxter", help="Yang-Baxter and unitarity of R(u)")
    yb.add_argument("--N", type=int, choices=(2, 3), required=True)
    return parser


# ----------------------------------------------------------------------
# verbs; each returns (payload, passed, diagnostic)


def cmd_ila(args, settings):
    lam = WeightLambda.of(parse_ints(args.lam, "weight"))
    if not lam.is_partition():
        raise UsageError(f"{args.lam} is not a partition")
    ilam = build_Ilambda(lam, args.descent)
    if args.h0:
        table = h0_sign_table(lam, ilam)
        ilam = specialize_h0(ilam)
    if args.format == "text":
        return ilam.render(), True, None
    payload = ilam.to_json_obj()
    payload["text"] = ilam.render()
    if args.h0:
        payload["h0_signs"] = {"".join(map(str, L)): s for L, s in sorted(table.items())}
    return payload, True, None


def cmd_verify(args, settings):
    report = BlockVerifier(settings).run(args.suite, args.nmax)
    diagnostic = None
    failure = report.first_failure()
    if failure is not None:
        diagnostic = {
            "error": "VerificationFailure",
            "suite": failure.suite,
            "subject": failure.subject,
            "check": failure.check,
            "detail": failure.detail,
        }
    if args.format == "text":
        return report.summary().to_string(index=False), report.passed, diagnostic
    return report, report.passed, diagnostic


def cmd_joseph(args, settings):
    shape = parse_shape(args.shape)
    family = joseph_family(shape, args.family)
    checks = {}
    details = {}
    if "identification" in args.check:
        report = check_identification(shape, args.family)
        checks["identification"] = report.passed
        details["identification"] = report.to_json_obj()
    if "exchange" in args.check:
        matrices = exchange_matrices(shape, args.family)
        checks["exchange"] = check_exchange(family, matrices)
        checks["exchbis"] = check_exchbis(family, matrices)
    if "cyclicity" in args.check:
        checks["cyclicity"] = check_cyclicity(shape, args.family)
    passed = all(checks.values())
    diagnostic = None
    if not passed:
        first = next(name for name, ok in checks.items() if not ok)
        diagnostic = {"error": "VerificationFailure", "shape": list(shape), "family": args.family, "check": first}
    if args.format == "text":
        lines = [f"J_{t.label()} = {family[t].render()}" for t in family.basis]
        lines += [f"{name}: {'ok' if ok else 'FAILED'}" for name, ok in checks.items()]
        return "\n".join(lines), passed, diagnostic
    payload = family.to_json_obj()
    if checks:
        payload["checks"] = checks
        payload.update(details)
    return payload, passed, diagnostic


def cmd_residue(args, settings):
    shape = parse_shape(args.shape)
    if not shape or len(shape) > 2 or shape != tuple(sorted(shape, reverse=True)):
        raise UsageError(f"{args.shape} is not a two-row shape")
    shape = (shape + (0,))[:2]
    n, p = sum(shape), shape[1]
    index_sets = [parse_ints(args.a, "index set")] if args.a else list(combinations(range(1, n + 1), p))
    conventions = CONVENTIONS if args.convention == "both" else (args.convention,)
    ilam = build_Ilambda(WeightLambda(shape))
    rows = []
    for a in index_sets:
        L = component_index(n, a)
        expected = ilam.coefficient(L)
        for convention in conventions:
            value = iterated_residue(build_integrand(shape, a), convention)
            rows.append({
                "a": list(a),
                "convention": convention,
                "component": value.render(),
                "I_lambda": expected.render(),
                "match": value == expected,
            })
    passed = all(r["match"] for r in rows)
    diagnostic = None
    if not passed:
        bad = next(r for r in rows if not r["match"])
        diagnostic = {"error": "VerificationFailure", "check": "residue", "a": bad["a"], "convention": bad["convention"]}
    return {"shape": list(shape), "components": rows}, passed, diagnostic


def cmd_selberg(args, settings):
    quadrature = SelbergQuadrature(settings)
    if args.check == "barnes":
        results = barnes_check(random_barnes_points(20, settings.seed), quadrature)
        worst = max(err for _, err in results)
        payload = {
            "check": "barnes",
            "max_relative_error": worst,
            "errors": [err for _, err in results],
        }
        passed = worst <= BARNES_TOLERANCE
    else:
        n = 2 if args.check == "c2" else 3
        report = check_constant(default_samples(n), n, quadrature)
        payload = {"check": args.check, **report.to_json_obj()}
        passed = report.passed
    diagnostic = None if passed else {"error": "VerificationFailure", "check": args.check}
    return payload, passed, diagnostic


def cmd_yangbaxter(args, settings):
    report = check_yang_baxter(args.N)
    payload = {"N": report.N, "passed": report.passed, "counterexample": report.counterexample}
    diagnostic = None if report.passed else {"error": "VerificationFailure", "check": "yang-baxter", "detail": report.counterexample}
    return payload, report.passed, diagnostic


COMMANDS = {
    "ila": cmd_ila,
    "verify": cmd_verify,
    "joseph": cmd_joseph,
    "residue": cmd_residue,
    "selberg": cmd_selberg,
    "yangbaxter": cmd_yangbaxter,
}


def _emit(payload, stream):
    if isinstance(payload, str):
        text = payload
    elif hasattr(payload, "to_json"):
        text = payload.to_json()
    else:
        text = to_json(payload)
    stream.write(text + "\n")


def run(argv=None, stdout=None, stderr=None):
    """
    Parse ``argv``, run one verb and write its output.

    Returns:
    --------
    int
        Exit status
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    try:
        settings = load_settings(args.config)
        configure_logging(args.log_level or settings.log_level)
        if args.threads is not None:
            settings = replace(settings, threads=args.threads)
            validate(settings)
        payload, passed, diagnostic = COMMANDS[args.verb](args, settings)
    except QcbError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        _emit({"error": type(exc).__name__, "message": str(exc)}, stderr)
        return 2 if isinstance(exc, UsageError) else 1

    _emit(payload, stdout)
    if not passed:
        _emit(diagnostic, stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(run())

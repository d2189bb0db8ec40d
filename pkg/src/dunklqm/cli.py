"""Command-line interface: family tables, verification suites, grid spectra,
and the errata report.

Exit codes: 0 success, 1 verification failure, 2 usage error. Rational
parameters are passed as exact "p/q" strings. All output is deterministic
for a fixed invocation; floats print at 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import tempfile
from fractions import Fraction

from .exact import hyp2f1, hyp3f2, pochhammer

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r} ({exc})")


def _grid_list(text: str) -> list:
    try:
        out = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid list: {text!r}")
    if len(out) < 3 or sorted(out) != out:
        raise argparse.ArgumentTypeError("need >= 3 ascending grid sizes")
    return out


def _write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-dunklqm-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        _write_atomic(out, text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------

def cmd_family(args) -> int:
    from . import gegenbauer as geg
    from . import jacobi as jac

    try:
        if args.kind == "jacobi-m1":
            params = jac.Jacobi1Params(args.alpha, args.beta)
        else:
            params = geg.GegParams(args.mu, args.alpha)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rows = []
    if args.kind == "jacobi-m1":
        moments = jac.MomentFunctional(params)
        for n in range(args.degree + 1):
            p = jac.construct_oracle(n, params)
            rows.append((n, p.pretty(), str(jac.eigenvalue(n, params)),
                         str(jac.inner(p, p, moments))))
        report = jac.verify_family(params, max(args.degree, 2)).as_json_dict()
    else:
        gm = geg.GegMoments(params)
        for n in range(args.degree + 1):
            p = geg.construct_geg(n, params)
            rows.append((n, p.pretty(), str(geg.eigenvalue_geg(n, params)),
                         str(geg.inner_geg(p, p, gm))))
        report = geg.verify_family_geg(params, max(args.degree, 2)).as_json_dict()

    if args.format == "json":
        payload = {"kind": args.kind, "params": report["params"],
                   "table": [{"n": n, "polynomial": poly, "eigenvalue": ev,
                              "norm_sq": nn} for n, poly, ev, nn in rows],
                   "report": report}
        _emit(json.dumps(payload, indent=2), args.out)
    elif args.format == "csv":
        lines = ["n,polynomial,eigenvalue,norm_sq"]
        lines += [f'{n},"{poly}",{ev},{nn}' for n, poly, ev, nn in rows]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"{args.kind} family, {report['params']}"]
        for n, poly, ev, nn in rows:
            lines.append(f"  n={n:<3d} eigenvalue={ev:<12s} norm^2={nn:<16s} "
                         f"P_{n} = {poly}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _suite_exact(log) -> tuple[bool, int]:
    rng = random.Random(20260810)
    for _ in range(60):
        n = rng.randint(0, 12)
        b = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        c = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        if c.denominator == 1 and -n < c <= 0:
            continue
        if hyp2f1(-n, b, c, 1) != pochhammer(c - b, n) / pochhammer(c, n):
            log("exact: Chu-Vandermonde FAILED at "
                f"n={n}, b={b}, c={c}")
            return False, 0
        a0 = Fraction(rng.randint(1, 8))
        m, k = rng.randint(0, 6), rng.randint(0, 6)
        if pochhammer(b, m + k) != pochhammer(b, k) * pochhammer(b + k, m):
            log("exact: Pochhammer splitting FAILED")
            return False, 0
    import math as _m
    for _ in range(60):
        k = rng.randint(1, 8)
        b = Fraction(rng.randint(-10, 10), rng.randint(1, 5))
        c = Fraction(rng.randint(-10, 10), rng.randint(1, 5))
        if (b.denominator == 1 and -k < b <= 0) or \
           (c.denominator == 1 and -(2 * k) < c <= 0) or \
           ((b + 1).denominator == 1 and -(k - 1) < b + 1 <= 0):
            continue
        lhs = hyp3f2(1 - k, b, c + k, b + 1, c, 1)
        rhs = (pochhammer(1, k - 1) / pochhammer(b + 1, k - 1)) * sum(
            pochhammer(b, l) / _m.factorial(l) * hyp2f1(-l, c + k, c, 1)
            for l in range(k))
        if lhs != rhs:
            log(f"exact: 3F2 summation FAILED at k={k}, b={b}, c={c}")
            return False, 0
    log("exact: hypergeometric identities pass (randomized, exact)")
    return True, 0


def _suite_jacobi(log, degree: int) -> tuple[bool, int]:
    from .jacobi import FUZZ_PARAMS, Jacobi1Params, verify_family

    ok, findings = True, 0
    for a, b in FUZZ_PARAMS:
        rep = verify_family(Jacobi1Params(a, b), degree)
        findings += rep.discrepancy_count()
        ok = ok and rep.all_oracle_checks_passed
        log(f"jacobi ({a},{b}): oracle checks "
            f"{'pass' if rep.all_oracle_checks_passed else 'FAIL'}, "
            f"{rep.discrepancy_count()} printed-form discrepancies")
    return ok, findings


def _suite_gegenbauer(log, degree: int) -> tuple[bool, int]:
    from .gegenbauer import (GEG_FUZZ_PARAMS, GegParams,
                             csm_two_particle_check, verify_family_geg)

    ok = True
    for mu, al in GEG_FUZZ_PARAMS:
        rep = verify_family_geg(GegParams(mu, al), degree)
        ok = ok and rep.all_oracle_checks_passed
        log(f"gegenbauer ({mu},{al}): oracle checks "
            f"{'pass' if rep.all_oracle_checks_passed else 'FAIL'}")
    res = max(csm_two_particle_check(Fraction(1), 0.9, 0.1),
              csm_two_particle_check(Fraction(1, 2), 1.0, -0.3))
    ok = ok and res < 1e-12
    log(f"gegenbauer: two-particle CSM reduction residual {res:.3e}")
    return ok, 0


def _suite_oscillator(log) -> tuple[bool, int]:
    import math as _m

    from .susyqm import (FockVector, osc_energy, osc_h_apply, osc_mixed_state,
                         osc_q_apply)

    ok = True
    for n in range(13):
        v = FockVector.basis(n)
        if osc_q_apply(osc_q_apply(v)).distance(osc_h_apply(v)) > 1e-12:
            ok = False
        if osc_h_apply(v).distance(v.scale(osc_energy(n))) > 1e-12:
            ok = False
    log(f"oscillator: Q^2 = H and spectrum {[osc_energy(n) for n in range(6)]} "
        f"on number states n<=12: {'pass' if ok else 'FAIL'}")
    for n in range(6):
        for eps in (1, -1):
            st = osc_mixed_state(n, eps)
            if osc_q_apply(st).distance(
                    st.scale(eps * _m.sqrt(2 * n + 2))) > 1e-12:
                ok = False
    log("oscillator: mixed states are Q-eigenvectors with eigenvalue "
        "eps sqrt(2n+2): " + ("pass" if ok else "FAIL"))
    return ok, 0


def _suite_intertwiners(log, variant: str) -> tuple[bool, int]:
    from .jacobi import FUZZ_PARAMS
    from .susyqm import ScarfParams, verify_lowering, verify_raising

    ok, findings = True, 0
    for a, b in FUZZ_PARAMS:
        p = ScarfParams(a, b)
        low = verify_lowering(p, 12)
        ok = ok and all(low)
        raised = [r for r in verify_raising(p, 12, "corrected") if r is not None]
        ok = ok and all(raised)
        if variant in ("printed", "both"):
            bad = [r for r in verify_raising(p, 6, "printed") if r is False]
            findings += len(bad)
    log(f"intertwiners: corrected lowering/raising maps exact on all pairs: "
        f"{'pass' if ok else 'FAIL'}"
        + (f"; printed-scalar mismatches recorded: {findings}"
           if variant in ("printed", "both") else ""))
    return ok, findings


def _suite_relations(log, variant: str) -> tuple[bool, int]:
    from .susyqm import ScarfParams, verify_operator_relations

    variants = {"corrected": ("corrected",), "printed": ("printed",),
                "both": ("corrected", "printed")}[variant]
    rep = verify_operator_relations(ScarfParams(Fraction(0), Fraction(1)),
                                    grids=(512, 1024, 2048), variants=variants)
    ok, findings = True, 0
    for r in rep:
        tag = f"{r['relation']}[{r['variant']}]"
        log(f"relations: {tag}: residual {r['residual']:.3e}, "
            f"fd order {r['order']:.2f}")
        expected_zero = (
            r["variant"] == "n/a"
            or (r["variant"] == "corrected"
                and r["relation"] != "product_typeset_indices")
            or (r["variant"] == "printed"
                and r["relation"] == "product_typeset_indices"))
        if expected_zero and r["residual"] > 1e-8:
            ok = False
        if not expected_zero and r["residual"] > 1e-8:
            findings += 1
    return ok, findings


def cmd_verify(args) -> int:
    lines = []

    def log(msg):
        lines.append(msg)
        print(msg)

    suites = (["exact", "jacobi", "gegenbauer", "oscillator", "intertwiners",
               "relations"] if args.suite == "all" else [args.suite])
    all_ok, findings = True, 0
    for s in suites:
        if s == "exact":
            ok, f = _suite_exact(log)
        elif s == "jacobi":
            ok, f = _suite_jacobi(log, args.degree)
        elif s == "gegenbauer":
            ok, f = _suite_gegenbauer(log, min(args.degree, 16))
        elif s == "oscillator":
            ok, f = _suite_oscillator(log)
        elif s == "intertwiners":
            ok, f = _suite_intertwiners(log, args.variant)
        else:
            ok, f = _suite_relations(log, args.variant)
        all_ok, findings = all_ok and ok, findings + f
    print(f"oracle checks: {'pass' if all_ok else 'FAIL'}; "
          f"printed-formula discrepancies: {findings} found")
    if args.out:
        _write_atomic(args.out, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    from . import grid as gridmod
    from .spectra import (SYSTEM_TOLERANCES, gegenbauer_problem,
                          oscillator_problem, scarf_problem)

    try:
        if args.system == "scarf":
            from .susyqm import ScarfParams
            if args.alpha < 0:
                raise ValueError("grid spectra require alpha >= 0")
            prob = scarf_problem(ScarfParams(args.alpha, args.beta), args.levels)
        elif args.system == "oscillator":
            prob = oscillator_problem(args.levels)
        else:
            from .gegenbauer import GegParams
            prob = gegenbauer_problem(GegParams(args.mu, args.alpha), args.levels)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    rep = gridmod.convergence_study(prob, args.grids, args.levels)
    tol = args.tol if args.tol is not None else SYSTEM_TOLERANCES[args.system]
    for lv in rep.levels:
        print(f"level {lv['level']}: extrapolated {lv['extrapolated']:.12g} "
              f"target {lv['target']:.12g} abs_error {lv['abs_error']:.3e}")
    if args.format == "csv":
        _emit(rep.to_csv(), args.out)
    else:
        _emit(rep.to_json(), args.out)
    if not rep.all_within_tolerance(tol):
        print(f"spectrum check FAILED tolerance {tol:g}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# errata
# ---------------------------------------------------------------------------

def cmd_errata(args) -> int:
    from .errata import errata_json

    _emit(errata_json(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dunklqm",
        description="Exact and numerical verification toolkit for 1D "
                    "supersymmetric quantum mechanics with reflections.")
    sub = ap.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="print an orthogonal family table")
    fam.add_argument("--kind", choices=["jacobi-m1", "gegenbauer"],
                     required=True)
    fam.add_argument("--alpha", type=_rat, default=Fraction(0))
    fam.add_argument("--beta", type=_rat, default=Fraction(0))
    fam.add_argument("--mu", type=_rat, default=Fraction(1, 2))
    fam.add_argument("--degree", type=int, default=6)
    fam.add_argument("--format", choices=["text", "json", "csv"],
                     default="text")
    fam.add_argument("--out")
    fam.set_defaults(fn=cmd_family)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("--suite", default="all",
                     choices=["all", "exact", "jacobi", "gegenbauer",
                              "oscillator", "intertwiners", "relations"])
    ver.add_argument("--variant", default="both",
                     choices=["printed", "corrected", "both"])
    ver.add_argument("--degree", type=int, default=12)
    ver.add_argument("--out")
    ver.set_defaults(fn=cmd_verify)

    spec = sub.add_parser("spectrum", help="grid spectra vs closed forms")
    spec.add_argument("--system", choices=["scarf", "oscillator", "gegenbauer"],
                      required=True)
    spec.add_argument("--alpha", type=_rat, default=Fraction(0))
    spec.add_argument("--beta", type=_rat, default=Fraction(2))
    spec.add_argument("--mu", type=_rat, default=Fraction(1, 2))
    spec.add_argument("--levels", type=int, default=3)
    spec.add_argument("--grids", type=_grid_list, default=[1024, 2048, 4096])
    spec.add_argument("--tol", type=float, default=None)
    spec.add_argument("--format", choices=["json", "csv"], default="json")
    spec.add_argument("--out")
    spec.set_defaults(fn=cmd_spectrum)

    err = sub.add_parser("errata", help="emit the consolidated errata report")
    err.add_argument("--out")
    err.set_defaults(fn=cmd_errata)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())

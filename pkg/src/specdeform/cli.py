"""Command-line front end: fusion tables, cocycle verification, sphere
triples, and a bundled verification report.

Exit codes: 0 all checks pass, 1 usage or IO problem, 2 a mathematical
check failed, 3 an input constraint was violated.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import jsonio
from ._scalars import as_fraction

USAGE_ERROR, MATH_ERROR, CONSTRAINT_ERROR = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def build_parser() -> _Parser:
    p = _Parser(prog="specdeform")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fusion", help="dimension and fusion tables")
    f.add_argument("--m", type=int, help="classical dimension parameter")
    f.add_argument("--q", type=str, help="deformation parameter p/r")
    f.add_argument("--max-k", type=int, default=6)
    f.add_argument("--csv", type=str, help="write CSV here (default stdout)")
    f.add_argument("--json", type=str, help="also write a JSON table")

    t = sub.add_parser("twist", help="verify a Hopf algebra and cocycle")
    t.add_argument("--hopf", required=True)
    t.add_argument("--sigma", required=True)
    t.add_argument("--triple", help="finite equivariant triple JSON")
    t.add_argument("--out", help="write the JSON report here")

    pod = sub.add_parser("podles", help="sphere triple operations")
    pod.add_argument("action", choices=["build", "verify", "deform"])
    pod.add_argument("--q", default="1/2")
    pod.add_argument("--t", default="1/2")
    pod.add_argument("--c1", default="1")
    pod.add_argument("--c2", default="0")
    pod.add_argument("--N", default="5/2")
    pod.add_argument("--F", help="partner F-matrix JSON (deform)")
    pod.add_argument("--out", help="output path")
    pod.add_argument("--csv", help="spectrum CSV path (deform)")
    pod.add_argument("--tolerance", type=float, default=1e-9)

    r = sub.add_parser("report", help="run the bundled verification battery")
    r.add_argument("--out", help="write the JSON report here")
    r.add_argument("--seed", type=int, default=20240809)
    return p


def _emit(data, path):
    text = jsonio.canonical_dumps(data)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_fusion(args) -> int:
    from . import repcat
    if args.m is None and args.q is None:
        print("fusion: provide --m or --q", file=sys.stderr)
        return USAGE_ERROR
    try:
        q = as_fraction(args.q) if args.q else None
        if args.m is not None:
            ring = repcat.aof_ring(args.m, q)
        else:
            ring = repcat.suq2_ring(q)
    except ValueError as exc:
        print(f"fusion: {exc}", file=sys.stderr)
        return USAGE_ERROR
    rows = repcat.dimension_table(ring, args.max_k, q)
    csv = jsonio.dimension_table_csv(rows)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    if args.json:
        _emit({"family": ring.family, "m": ring.m,
               "q": str(q) if q is not None else None,
               "rows": [{"label": str(l), "classical": c,
                         "quantum": str(qd) if qd is not None else None}
                        for l, c, qd in rows]}, args.json)
    return 0


def cmd_twist(args) -> int:
    from .hopf_twist import (
        Report, check_dual_cocycle, reconstruct_hopf, smash_left,
        smash_right, verify_cocycle_equivalence,
    )
    try:
        H = jsonio.load_hopf(args.hopf)
        sigma = jsonio.load_cocycle(args.sigma, H)
    except (OSError, ValueError, KeyError) as exc:
        print(f"twist: cannot read inputs: {exc}", file=sys.stderr)
        return USAGE_ERROR

    report = Report()
    hop = H.verify_hopf()
    report.add("hopf axioms", hop.ok,
               "" if hop.ok else hop.first_failure().name)
    coc = check_dual_cocycle(H, sigma)
    report.extend(coc)
    out = {"hopf": hop.as_dict(), "cocycle": coc.as_dict()}
    if coc.ok:
        try:
            gal = smash_left(H, sigma)
            report.add("twisted Hopf algebra and Galois object", True)
            out["galois"] = gal.verify().as_dict()
            smash_right(H, sigma)
            report.add("right smash algebra", True)
            rec = reconstruct_hopf(H, sigma)
            report.add("bi-Galois reconstruction", rec.ok,
                       "" if rec.ok else rec.first_failure().name)
            out["reconstruction"] = rec.as_dict()
        except ArithmeticError as exc:
            report.add("twisted structures", False, str(exc))
    if args.triple:
        try:
            T = jsonio.load_triple(args.triple)
        except (OSError, ValueError, KeyError) as exc:
            print(f"twist: cannot read triple: {exc}", file=sys.stderr)
            return USAGE_ERROR
        tri = T.verify()
        report.add("triple axioms", tri.ok,
                   "" if tri.ok else tri.first_failure().name)
        if tri.ok and coc.ok:
            eq = verify_cocycle_equivalence(T, sigma)
            report.extend(eq)
            out["cocycle_equivalence"] = eq.as_dict()
            from .hopf_twist import deform_triple_finite
            res = deform_triple_finite(T, sigma)
            out["isospectrality"] = {
                "original": {str(k): v for k, v in sorted(T.spectrum().items())},
                "deformed": {str(k): v for k, v in sorted(res.spectrum.items())},
            }
            report.add("isospectrality",
                       T.spectrum() == res.spectrum)
    out["summary"] = report.as_dict()
    _emit(out, args.out)
    return 0 if report.ok else MATH_ERROR


def _podles_params(args):
    q = as_fraction(args.q)
    t = as_fraction(args.t)
    c1 = as_fraction(args.c1)
    c2 = as_fraction(args.c2)
    N = Fraction(args.N)
    return q, t, c1, c2, N


def cmd_podles(args) -> int:
    from .suq2.podles import truncated_podles_triple
    try:
        q, t, c1, c2, N = _podles_params(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"podles: bad parameters: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.action == "deform":
        return _podles_deform(args, q, c1, c2, N)

    try:
        T = truncated_podles_triple(q, t, c1, c2, N)
    except ValueError as exc:
        print(f"podles: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.action == "build":
        _emit(_bundle_json(T), args.out)
        return 0

    # verify
    from .triple import check_equivariance, check_spectral_triple
    res = T.relation_residuals(interior=True)
    st = check_spectral_triple([T.A_mat, T.B_mat], T.D_mat)
    eq = check_equivariance(T.labels, [T.A_mat, T.B_mat], T.D_mat)
    ok = (all(v < args.tolerance for v in res.values()) and st["ok"]
          and eq["ok"] and T.closure_residual < args.tolerance)
    out = {
        "relation_residuals_interior": res,
        "closure_residual": T.closure_residual,
        "spectral_triple": st,
        "equivariance": eq,
        "commutator_norms": T.commutator_norms(),
        "r_twisted_volume": _podles_r_volume(q, c1, c2, N),
        "ok": ok,
    }
    _emit(out, args.out)
    return 0 if ok else MATH_ERROR


def _podles_r_volume(q, c1, c2, N):
    from .triple import check_r_twisted_volume, podles_profile
    return check_r_twisted_volume(podles_profile(q, c1, c2, N), q=q)


def _bundle_json(T):
    return {
        "q": str(T.data.q),
        "t": str(T.data.t),
        "c": str(T.data.c),
        "N": str(T.N),
        "basis": [{"n": str(n), "mu": str(mu), "l": str(l)}
                  for (n, mu, l) in T.labels],
        "A": [[_c(v) for v in row] for row in T.A_mat.tolist()],
        "B": [[_c(v) for v in row] for row in T.B_mat.tolist()],
        "D": [[float(v) for v in row] for row in T.D_mat.tolist()],
        "isotypic": [{"n": str(n),
                      "eigenvalue": str(T.c1 * n + T.c2),
                      "dim": int(2 * n + 1)} for n in T.spins],
        "closure_residual": T.closure_residual,
    }


def _c(v):
    v = complex(v)
    return [v.real, v.imag]


def _podles_deform(args, q, c1, c2, N) -> int:
    from . import repcat
    from .triple import (
        check_r_twisted_volume, deform_profile, podles_profile, qiso_deform,
        spectrum_table,
    )
    if not args.F:
        print("podles deform: --F is required", file=sys.stderr)
        return USAGE_ERROR
    try:
        rep = jsonio.load_f_matrix(args.F)
    except (OSError, ValueError, KeyError) as exc:
        print(f"podles deform: cannot read F: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if not rep.admissible:
        print(f"podles deform: F inadmissible: {rep.reason}", file=sys.stderr)
        return CONSTRAINT_ERROR
    try:
        desc = repcat.validate_partner(q, rep.spec)
    except repcat.PartnerRejected as exc:
        print(f"podles deform: partner rejected: {exc} "
              f"(residual {exc.residual})", file=sys.stderr)
        return CONSTRAINT_ERROR

    profile = podles_profile(q, c1, c2, N)
    sub = repcat.even_subcategory(desc.source)
    restricted = repcat.restrict_equivalence(desc, sub)
    from .triple import QisoLabels
    labels = QisoLabels("QISO+(SU_q(2))", sub, "SO_q(3)")
    new_labels, line = qiso_deform(labels, restricted)

    # spinor blocks live on odd labels; deform with the full descriptor
    deformed = deform_profile(profile, desc)
    table = spectrum_table(deformed)
    rvol = check_r_twisted_volume(deformed)
    out = {
        "descriptor": {
            "q": str(q),
            "dim_F": desc.f_spec.n,
            "dimension_preserving": desc.dimension_preserving,
            "residual": desc.residual,
        },
        "profile": jsonio.profile_json(deformed),
        "spectrum": jsonio.spectrum_json(table)["spectrum"],
        "qiso": line,
        "r_twisted_volume": rvol,
    }
    print(line)
    _emit(out, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(jsonio.spectrum_csv(table))
    return 0 if rvol["ok"] else MATH_ERROR


def cmd_report(args) -> int:
    """Bundled verification battery over the stock instances."""
    import random

    from . import repcat
    from .hopf_twist import (
        check_dual_cocycle, cyclic_group_algebra, deform_triple_finite,
        verify_cocycle_equivalence,
    )
    from .hopf_twist.examples import (
        toy_triple_z2z2, z2z2_bicharacter, z3z3_bicharacter,
    )
    from .triple import podles_profile, random_profile, round_trip

    checks = {}
    H22 = cyclic_group_algebra([2, 2])
    sig = z2z2_bicharacter(H22)
    checks["cocycle Z2xZ2"] = check_dual_cocycle(H22, sig).ok
    H33 = cyclic_group_algebra([3, 3])
    checks["cocycle Z3xZ3"] = check_dual_cocycle(
        H33, z3z3_bicharacter(H33)).ok
    toy = toy_triple_z2z2()
    res = deform_triple_finite(toy, sig)
    checks["toy deformation"] = res.report.ok
    checks["toy isospectral"] = res.spectrum == toy.spectrum()
    checks["cocycle equivalence"] = verify_cocycle_equivalence(toy, sig).ok

    rng = random.Random(args.seed)
    lam = (7 - 13 ** 0.5) / 6
    spec = repcat.canonical_f_matrix([lam ** 0.5], 3, +1)
    desc = repcat.validate_partner(Fraction(-1, 3), spec)
    ok = all(round_trip(random_profile(desc.source, rng), desc)["ok"]
             for _ in range(100))
    checks["100 random round trips"] = ok
    prof = podles_profile(Fraction(1, 2), 1, 0, Fraction(5, 2))
    from .triple import deform_profile, spectrum_table
    table = spectrum_table(deform_profile(prof, desc))
    checks["deformed sphere multiplicities"] = \
        table.as_dict() == {"-5/2": 144, "-3/2": 21, "-1/2": 3,
                            "1/2": 3, "3/2": 21, "5/2": 144}
    out = {"checks": checks, "ok": all(checks.values())}
    _emit(out, args.out)
    return 0 if out["ok"] else MATH_ERROR


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "fusion":
            return cmd_fusion(args)
        if args.command == "twist":
            return cmd_twist(args)
        if args.command == "podles":
            return cmd_podles(args)
        if args.command == "report":
            return cmd_report(args)
    except OSError as exc:
        print(f"specdeform: IO error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())

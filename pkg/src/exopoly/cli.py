"""Command-line front end: gen, admissible, verify, sample."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import classical, x1_families as x1, xm_jacobi as xm
from .diffop import preserves_flag, reconstruct_operator, real_pole_count
from .flags import example
from .quadrature import WeightedInterval, gram_matrix, inner_product, max_normalized_offdiag
from .quasirational import DomainError
from .ratpoly import as_rat, rat_str

FAMILIES = ("classical-jacobi", "x1-jacobi", "x1-laguerre", "xm-jacobi")
SUITES = ("identities", "factorizations", "orthogonality", "norms", "flags", "all")


class UsageError(Exception):
    pass


def parse_rat(text: str) -> Fraction:
    try:
        return as_rat(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from exc
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_float_range(text: str) -> tuple[float, float]:
    try:
        a, b = text.split("..", 1)
        return float(a), float(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from exc


# -- family dispatch ----------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    alpha: Fraction | None = None
    beta: Fraction | None = None
    k: Fraction | None = None
    m: int | None = None

    def params(self) -> dict[str, str]:
        out = {}
        for name in ("alpha", "beta", "k", "m"):
            v = getattr(self, name)
            if v is not None:
                out[name] = rat_str(as_rat(v))
        return out

    def _need(self, *names):
        missing = [f"--{n}" for n in names if getattr(self, n) is None]
        if missing:
            raise UsageError(f"{self.kind} needs {' '.join(missing)}")

    def min_index(self) -> int:
        if self.kind == "classical-jacobi":
            return 0
        if self.kind == "xm-jacobi":
            self._need("m")
            return self.m
        return 1

    def row(self, n: int):
        """(polynomial, eigenvalue, value at 1)."""
        if self.kind == "classical-jacobi":
            self._need("alpha", "beta")
            p = classical.jacobi(n, self.alpha, self.beta)
            return p, classical.classical_eigenvalue(n, self.alpha, self.beta), p(Fraction(1))
        if self.kind == "x1-jacobi":
            self._need("alpha", "beta")
            prm = x1.X1JacobiParams(self.alpha, self.beta)
            p = x1.x1_jacobi_poly(prm, n)
            return p, x1.x1_jacobi_eigenvalue(prm, n), p(Fraction(1))
        if self.kind == "x1-laguerre":
            self._need("k")
            prm = x1.X1LaguerreParams(self.k)
            p = x1.x1_laguerre_poly(prm, n)
            return p, x1.x1_laguerre_eigenvalue(prm, n), p(Fraction(1))
        self._need("alpha", "beta", "m")
        prm = xm.XmParams(self.alpha, self.beta, self.m)
        p = xm.xm_poly(prm, n)
        return p, xm.xm_eigenvalue(prm, n), p(Fraction(1))

    def weighted_interval(self) -> WeightedInterval:
        if self.kind == "classical-jacobi":
            self._need("alpha", "beta")
            return WeightedInterval(classical.classical_weight(self.alpha, self.beta), (-1, 1))
        if self.kind == "x1-jacobi":
            self._need("alpha", "beta")
            return WeightedInterval(x1.x1_jacobi_weight(x1.X1JacobiParams(self.alpha, self.beta)), (-1, 1))
        if self.kind == "x1-laguerre":
            self._need("k")
            return WeightedInterval(x1.x1_laguerre_weight(x1.X1LaguerreParams(self.k)), (0, math.inf))
        self._need("alpha", "beta", "m")
        return WeightedInterval(xm.xm_weight(xm.XmParams(self.alpha, self.beta, self.m)), (-1, 1))


def _spec(args, kind: str) -> FamilySpec:
    return FamilySpec(kind, args.alpha, args.beta, args.k, args.m)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------------


def cmd_gen(args) -> int:
    spec = _spec(args, args.family)
    lo, hi = args.n if args.n else (spec.min_index(), spec.min_index() + 5)
    if lo < spec.min_index():
        raise UsageError(f"{spec.kind} starts at n = {spec.min_index()}")
    rows = []
    for n in range(lo, hi + 1):
        p, lam, v1 = spec.row(n)
        rows.append({"n": n, "eigenvalue": rat_str(lam), "coeffs": [rat_str(c) for c in p.coeffs], "value_at_1": rat_str(v1)})
    if args.format == "json":
        text = json.dumps({"family": spec.kind, "params": spec.params(), "rows": rows}, indent=2) + "\n"
    else:
        width = max(len(r["coeffs"]) for r in rows)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "eigenvalue", "value_at_1"] + [f"c{i}" for i in range(width)])
        for r in rows:
            w.writerow([r["n"], r["eigenvalue"], r["value_at_1"]] + r["coeffs"] + [""] * (width - len(r["coeffs"])))
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


def cmd_admissible(args) -> int:
    if args.alpha is None or args.beta is None or args.m is None:
        raise UsageError("admissible needs --alpha --beta --m")
    prm = xm.XmParams(args.alpha, args.beta, args.m)
    v = xm.admissible(prm)
    lines = [f"alpha={rat_str(prm.alpha)} beta={rat_str(prm.beta)} m={prm.m}: {v.verdict}"]
    lines += [f"  reason: {r}" for r in v.reasons]
    lines.append(f"  denominator: {xm.denominator(prm)} (degree {v.degree}, {v.interior_roots} root(s) in (-1, 1))")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if v.ok else 1


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.failed = 0

    def check(self, name: str, ok: bool, detail: str = ""):
        self.lines.append(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
        self.failed += not ok


def _xm_params(args) -> xm.XmParams:
    return xm.XmParams(
        args.alpha if args.alpha is not None else Fraction(5, 4),
        args.beta if args.beta is not None else Fraction(1, 2),
        args.m if args.m is not None else 2,
    )


def _suite_identities(args, rep: Report):
    prm = _xm_params(args)
    a, b = prm.alpha, prm.beta
    for n in range(0, 11):
        res = classical.identity_suite(a, b, n, n)
        bad = [k for k, v in res.items() if not v.is_zero()]
        rep.check(f"classical identities n={n}", not bad, ", ".join(bad))
        rep.check(f"rodrigues n={n}", classical.rodrigues(n, a, b) == classical.jacobi(n, a, b))
    T = xm.xm_operator(prm)
    for n in range(prm.m, prm.m + 11):
        y = xm.xm_poly(prm, n, check=False)
        ok = T.apply_numerator(y) == y * xm.xm_eigenvalue(prm, n) * T.common_form[0]
        rep.check(f"xm eigenvalue n={n}", ok)


def _suite_factorizations(args, rep: Report):
    prm = _xm_params(args)
    a, b, m = prm.alpha, prm.beta, prm.m
    f = xm.classical_factorization(a + 1, b - 1, m)
    rep.check("classical (alpha+1, beta-1) = B A + lambda0", (f.B @ f.A) + f.lambda0 == f.T)
    rep.check("partner A B + lambda0 = Xm operator", f.partner == xm.xm_displayed_operator(prm))
    g = classical.state_deleting_factorization(a, b)
    rep.check("classical state-deleting B A = T", (g.B @ g.A) + g.lambda0 == g.T, g.kind.value)
    rep.check("classical partner = T(alpha+1, beta+1) - (alpha + beta + 2)",
              g.partner == classical.classical_jacobi_op(a + 1, b + 1) - (a + b + 2))
    BA, AB = xm.shape_invariance(prm)
    rep.check("shape invariance B A = T(alpha, beta, m)", BA == xm.xm_operator(prm))
    up = xm.XmParams(a + 1, b + 1, m)
    rep.check("shape invariance A B + alpha + beta + 2 = T(alpha+1, beta+1, m)", AB == xm.xm_operator(up))


def _suite_orthogonality(args, rep: Report):
    specs = [
        FamilySpec("classical-jacobi", args.alpha or Fraction(1, 2), args.beta or Fraction(1, 3)),
        FamilySpec("x1-jacobi", Fraction(1), Fraction(2)),
        FamilySpec("x1-laguerre", k=args.k or Fraction(2)),
        FamilySpec("xm-jacobi", *(lambda p: (p.alpha, p.beta, None, p.m))(_xm_params(args))),
    ]
    for spec in specs:
        polys = [spec.row(n)[0] for n in range(spec.min_index(), spec.min_index() + 12)]
        off = max_normalized_offdiag(gram_matrix(polys, spec.weighted_interval()))
        rep.check(f"{spec.kind} {spec.params()} Gram off-diagonal", off < args.tol, f"{off:.2e}")


def _suite_norms(args, rep: Report):
    prm = _xm_params(args)
    wi = WeightedInterval(xm.xm_weight(prm), (-1, 1))
    for k in range(0, 9):
        n = prm.m + k
        y = xm.xm_poly(prm, n, check=False)
        got = inner_product(y, y, wi)
        want = xm.xm_norm(prm, n)
        rel = abs(got - want) / abs(want)
        rep.check(f"xm norm k={k}", rel < 1e-8, f"quadrature {got:.15g} closed form {want:.15g} rel {rel:.1e}")


def _suite_flags(args, rep: Report):
    numbers = [args.example] if args.example else [1, 2, 3, 4, 5]
    for num in numbers:
        F, ops = example(num)
        for name, T in ops.items():
            cert = preserves_flag(T, F, args.kmax)
            rep.check(f"example {num} {name} preserves {F.name} to k={args.kmax}", cert.ok,
                      "" if cert.ok else f"fails at k={cert.failing_k}")
            if not T.is_polynomial():
                rep.check(f"example {num} {name} pole count", real_pole_count(T) >= 1, str(real_pole_count(T)))
            basis = F.basis(3)
            gs = [T.apply(y).as_poly() for y in basis]
            try:
                rebuilt = reconstruct_operator(basis, gs)
                rep.check(f"example {num} {name} Cramer reconstruction", rebuilt == T)
            except ValueError as exc:
                rep.check(f"example {num} {name} Cramer reconstruction", False, str(exc))


SUITE_FUNCS = {
    "identities": _suite_identities,
    "factorizations": _suite_factorizations,
    "orthogonality": _suite_orthogonality,
    "norms": _suite_norms,
    "flags": _suite_flags,
}


def cmd_verify(args) -> int:
    rep = Report()
    names = list(SUITE_FUNCS) if args.suite == "all" else [args.suite]
    for name in names:
        rep.lines.append(f"# {name}")
        SUITE_FUNCS[name](args, rep)
    rep.lines.append(f"{'all passed' if not rep.failed else f'{rep.failed} failed'}")
    _emit("\n".join(rep.lines) + "\n", args.out)
    return 0 if not rep.failed else 1


def cmd_sample(args) -> int:
    spec = _spec(args, args.family)
    lo, hi = args.x_range if args.x_range else ((0.0, 20.0) if spec.kind == "x1-laguerre" else (-1.0, 1.0))
    xs = [args.x] if args.x is not None else list(np.linspace(lo, hi, args.points))
    if args.what == "weight":
        wi = spec.weighted_interval()
        lo_d, hi_d = (float(v) for v in wi.interval)
        bad = [x for x in xs if not lo_d <= x <= hi_d]
        if bad:
            raise DomainError(f"x = {bad[0]} outside the weight's interval [{lo_d}, {hi_d}]")
        vals = [wi.weight(x) for x in xs]
    else:
        if args.n is None or args.n[0] != args.n[1]:
            raise UsageError("sample poly needs a single --n")
        p = spec.row(args.n[0])[0]
        vals = [p(float(x)) for x in xs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value"])
    for x, v in zip(xs, vals):
        w.writerow([repr(float(x)), repr(float(v))])
    _emit(buf.getvalue(), args.out)
    return 0


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="exopoly", description="Exceptional orthogonal polynomial toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=parse_rat)
    common.add_argument("--beta", type=parse_rat)
    common.add_argument("--k", type=parse_rat)
    common.add_argument("--m", type=int)
    common.add_argument("--out", metavar="FILE")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="tabulate exact polynomials")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=parse_range)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("admissible", parents=[common], help="Xm-Jacobi parameter check")
    a.set_defaults(func=cmd_admissible)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--kmax", type=int, default=12)
    v.add_argument("--example", type=int, choices=range(1, 6))
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", parents=[common], help="float samples for plotting")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("what", choices=("weight", "poly"))
    s.add_argument("--n", type=parse_range)
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--x-range", type=parse_float_range)
    s.add_argument("--x", type=float, help="single evaluation point")
    s.set_defaults(func=cmd_sample)
    return ap


def _glue_negative_values(argv: list[str]) -> list[str]:
    """argparse reads "-1/2" as an option; rewrite "--beta -1/2" as "--beta=-1/2"."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and re.match(r"^-[\d.]", tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    ap = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "reason": str(exc)}), file=sys.stderr)
        return 2
    except (x1.ParameterError, xm.ParameterError, DomainError, classical.DomainError) as exc:
        print(json.dumps({"error": type(exc).__name__, "reason": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

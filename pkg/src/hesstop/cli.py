"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed or a hypothesis
is unmet, 2 usage or input error.  Reports go to ``--out`` files, a short
human summary to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, Sequence

from . import diffgeo, identities, topo
from .exact import DomainError, format_rat
from .poly import HPoly, r2_power

IDENTITY_M_CAP = 1000
GEOMETRY_M_CAP = 30
GEOMETRY_K_CAP = 30


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b or a single integer") from None
    return a, b


def _check_range(name: str, r: tuple[int, int], lo: int, cap: int) -> range:
    a, b = r
    if a > b:
        raise UsageError(f"--{name} {a}..{b}: empty (inverted) range")
    if a < lo or b > cap:
        raise UsageError(f"--{name} {a}..{b}: must lie within {lo}..{cap}")
    return range(a, b + 1)


def _workers(args) -> int:
    if args.workers is not None:
        n = args.workers
    else:
        env = os.environ.get("HESSTOP_WORKERS")
        try:
            n = int(env) if env else 1
        except ValueError:
            raise UsageError(f"HESSTOP_WORKERS={env!r} is not an integer") from None
    if n < 1:
        raise UsageError("worker count must be >= 1")
    return n


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: Optional[str], obj) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dump(obj))


def _read_poly(path: str) -> HPoly:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read polynomial file {path}: {exc}") from None
    try:
        return HPoly.from_json(obj)
    except DomainError as exc:
        raise UsageError(f"malformed polynomial file {path}: {exc}") from None


def _pmap(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


# -- subcommands -----------------------------------------------------------------

def cmd_identities(args) -> int:
    ms = _check_range("m", args.m, 1, IDENTITY_M_CAP)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    if not which:
        raise UsageError("--which is empty")
    if "all" in (w.lower() for w in which):
        ids = list(identities.IdentityId)
    else:
        try:
            ids = [identities.IdentityId.parse(w) for w in which]
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    workers = _workers(args)
    reports = [identities.sweep(i, ms.start, ms.stop - 1, workers=workers) for i in ids]
    for r in reports:
        line = f"{r.identity.value:9s} m={r.m_lo}..{r.m_hi} checked={r.checked} {r.status}"
        if r.first_failure is not None:
            f = r.first_failure
            line += f" first failure m={f.m} j={f.j} lhs={format_rat(f.lhs)} rhs={format_rat(f.rhs)}"
        print(line)
    _write(args.out, [r.to_json() for r in reports])
    return 0 if all(r.passed for r in reports) else 1


def cmd_hyperbolic(args) -> int:
    f = _read_poly(args.file)
    if f.degree < 2:
        raise UsageError(f"polynomial has degree {f.degree}; need >= 2")
    v = topo.classify(f)
    out = v.to_json()
    sys.stdout.write(_dump(out))
    _write(args.out, out)
    return 0 if v.verdict is topo.Verdict.HYPERBOLIC else 1


def cmd_arnold(args) -> int:
    m, n = args.m, args.n
    if m < 2:
        raise UsageError(f"hypothesis m >= 2 violated (m={m})")
    if n < m:
        raise UsageError(f"hypothesis m <= n violated (m={m}, n={n})")
    if (n - m) % 2:
        raise UsageError(f"hypothesis n - m even violated (m={m}, n={n})")
    if n >= m * m and not args.unchecked:
        raise UsageError(f"hypothesis n < m^2 violated (m={m}, n={n}); pass --unchecked to emit anyway")
    f = diffgeo.arnold_family(m, n)
    if args.out:
        _write(args.out, f.to_json())
        print(f"wrote degree-{f.degree} polynomial to {args.out}")
    else:
        sys.stdout.write(_dump(f.to_json()))
    return 0


def cmd_index(args) -> int:
    f = _read_poly(args.file)
    if f.degree < 2:
        raise UsageError(f"polynomial has degree {f.degree}; need >= 2")
    v = topo.classify(f)
    if v.verdict is not topo.Verdict.HYPERBOLIC:
        print(f"not hyperbolic ({v.verdict.value}); index undefined", file=sys.stderr)
        return 1
    res = topo.index_at_origin(diffgeo.second_form(f), args.samples)
    out = res.to_json()
    sys.stdout.write(_dump(out))
    _write(args.out, out)
    if not res.converged:
        print(f"index did not converge within {res.samples_used} samples", file=sys.stderr)
        return 1
    return 0


def _isotopy_pair(job: tuple[int, int, int, int]) -> list[dict]:
    m, k, ts, ths = job
    P, Q = diffgeo.arnold_P(m), r2_power(k)
    return [
        topo.isotopy_phi_certify(P, Q, ts, ths, m=m, k=k).to_json(),
        topo.isotopy_psi_certify(P, Q, ts, ths, m=m, k=k).to_json(),
    ]


def cmd_isotopy(args) -> int:
    ms = _check_range("m", args.m, 2, GEOMETRY_M_CAP)
    ks = _check_range("k", args.k, 1, GEOMETRY_K_CAP)
    if args.t_samples < 1 or args.theta_samples < 1:
        raise UsageError("sample counts must be >= 1")
    jobs = [(m, k, args.t_samples, args.theta_samples) for m in ms for k in ks]
    reports = [r for pair in _pmap(_isotopy_pair, jobs, _workers(args)) for r in pair]
    in_scope = [r for r in reports if not r["hypothesis_violated"]]
    for r in reports:
        tag = "skipped (hypothesis m <= m+2k < m^2 unmet)" if r["hypothesis_violated"] else ("pass" if r["passed"] else "FAIL")
        print(f"{r['path']} m={r['m']} k={r['k']} {tag}")
    _write(args.out, reports)
    if not in_scope:
        print("no (m, k) pair in range satisfies the hypothesis", file=sys.stderr)
        return 1
    return 0 if all(r["passed"] for r in in_scope) else 1


def _lemma_job(job: tuple[int, int]) -> dict:
    m, k = job
    c = diffgeo.euler_route_check(m, k)
    return {
        "m": m,
        "k": k,
        "lemma3": diffgeo.lemma3_check(m, k),
        "euler_constant": format_rat(c),
        "euler_constant_times_m_minus_1": format_rat(c * (m - 1)),
        "euler_constant_is_minus_degQ_over_m_minus_1": c * (m - 1) == -2 * k,
    }


def _bridge(m: int) -> dict:
    """Compare the bracket coefficients with the left sides of the A, B, C identities."""
    b = diffgeo.lemma3_bracket(m).coeffs  # index i <-> x^(2m-2-i) y^i
    h = m // 2
    ok = b[0] == 1 and b[2 * m - 2] == 1
    ok &= all(b[2 * j] == identities.eq1_sides(m, j)[0] for j in range(1, h))
    ok &= b[m] == identities.eq3_sides(m)[0]
    ok &= all(b[m + 2 * j - 2] == identities.eq2_sides(m, j)[0] for j in range(2, h))
    return {"m": m, "bridge": bool(ok)}


def cmd_lemma(args) -> int:
    ms = _check_range("m", args.m, 2, GEOMETRY_M_CAP)
    ks = _check_range("k", args.k, 1, GEOMETRY_K_CAP)
    workers = _workers(args)
    rows = _pmap(_lemma_job, [(m, k) for m in ms for k in ks], workers)
    bridges = _pmap(_bridge, [m for m in ms if m % 2 == 0], workers)
    ok = all(r["lemma3"] and r["euler_constant_is_minus_degQ_over_m_minus_1"] for r in rows)
    ok &= all(b["bridge"] for b in bridges)
    for r in rows:
        print(f"m={r['m']} k={r['k']} lemma3={'pass' if r['lemma3'] else 'FAIL'} euler c={r['euler_constant']}")
    for b in bridges:
        print(f"m={b['m']} coefficient bridge {'pass' if b['bridge'] else 'FAIL'}")
    _write(args.out, {"lemma": rows, "bridge": bridges})
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hesstop", description="Exact checks for binomial identities and hyperbolic polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def workers(sp):
        sp.add_argument("--workers", type=int, default=None, help="worker processes (env HESSTOP_WORKERS)")

    s = sub.add_parser("identities", help="sweep the binomial identities")
    s.add_argument("--which", default="all", help="comma list of eq1,eq2,eq3,eq5,eq6,eq7,eq10,t_closed,f_closed or 'all'")
    s.add_argument("--m", type=parse_range, default=(2, 300))
    s.add_argument("--out", "-o")
    workers(s)
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("hyperbolic", help="classify a polynomial file")
    s.add_argument("file")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_hyperbolic)

    s = sub.add_parser("arnold", help="write (x^2+y^2)^((n-m)/2) Re(x+iy)^m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", "-o")
    s.add_argument("--unchecked", action="store_true", help="emit even if n >= m^2")
    s.set_defaults(func=cmd_arnold)

    s = sub.add_parser("index", help="index of the asymptotic line field at the origin")
    s.add_argument("file")
    s.add_argument("--samples", type=int, default=64)
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_index)

    s = sub.add_parser("isotopy", help="certify both isotopy paths for Arnold pairs")
    s.add_argument("--m", type=parse_range, default=(2, 8))
    s.add_argument("--k", type=parse_range, default=(1, 3))
    s.add_argument("--t-samples", type=int, default=11)
    s.add_argument("--theta-samples", type=int, default=360)
    s.add_argument("--out", "-o")
    workers(s)
    s.set_defaults(func=cmd_isotopy)

    s = sub.add_parser("lemma", help="gradient-pairing identity and Euler-route constant sweeps")
    s.add_argument("--m", type=parse_range, default=(2, 12))
    s.add_argument("--k", type=parse_range, default=(1, 4))
    s.add_argument("--out", "-o")
    workers(s)
    s.set_defaults(func=cmd_lemma)
    return p


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:  # argparse: --help or bad flags
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hesstop: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hesstop: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

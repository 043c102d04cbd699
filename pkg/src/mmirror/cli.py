"""Command line for the package: matrix dumps, series, potentials, and a
one-shot verification runner.

Every command prints JSON carrying a top-level ``"schema": "mm/1"`` key;
rationals are rendered canonically as ``num/den`` strings (integers drop
the denominator).  Output is deterministic: identical invocations produce
byte-identical bytes.  ``verify`` exits nonzero when any check fails, so
it can gate a release.

Cases are named by Cartan type plus marked node, e.g. ``A3 --node 2``.
Supported cases are the minuscule (type, node) pairs and the odd quadrics
``B_n --node 1``; the list driven by ``verify --all`` is pinned in
``data/verify_cases.json``.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources
from math import factorial

from .crystal_potential import (
    BudgetExceeded,
    constant_term_power,
    gw_from_constant_term,
    potential_to_json,
    potential_typeA,
)
from .minrep import build_rep, equivariant_fg, fg_connection
from .period_gw import (
    RatFunc,
    bessel_numeric_checks,
    bruhat_path_count,
    cyclic_scalar_operator,
    d4_split,
    operator_annihilates,
    quantum_period,
    series_to_json,
)
from .qchev import (
    LaurentPoly,
    check_homogeneous,
    fw_matrix,
    matrix_relation,
    mihalcea_equivariant,
    poincare_self_adjoint,
    quantum_chevalley_minuscule,
)
from .rootsys import (
    CartanType,
    build_root_datum,
    datum_to_json,
    levi_data,
    minuscule_nodes,
)
from .weyl import minuscule_coset_reps, pd, special_elements, w_gamma_set

WRONSKIAN_TOL = 1e-8

# cases whose quantum-column count is pinned exactly
_WGAMMA_PINNED = {("E6", 6): 6, ("E7", 7): 12, ("D4", 1): 2}


class CheckFailure(Exception):
    """A verification check found a wrong value."""


# --------------------------------------------------------------------------
# case plumbing
# --------------------------------------------------------------------------

def _default_params(family: str, rank: int, node: int) -> dict:
    """Depth defaults used both by the pinned case list and by ad-hoc
    single-case runs: period depth 3 everywhere; constant-term depth for
    the type-A potentials graded by the number of Lusztig variables."""
    params = {"max_degree": 3}
    if family == "A":
        v = node * (rank + 1 - node)
        if v <= 4:
            params["ct_degree"] = 3
        elif v <= 6:
            params["ct_degree"] = 2
        elif v <= 12:
            params["ct_degree"] = 1
    return params


class Case:
    """One (cartan, node) context with the shared objects the checks
    need, built lazily and at most once."""

    def __init__(self, cartan: str, node: int, params=None):
        self.ct = CartanType.parse(cartan)
        self.cartan = str(self.ct)
        self.node = int(node)
        if not 1 <= self.node <= self.ct.rank:
            raise ValueError(f"node {node} out of range for {self.cartan}")
        self.minuscule = self.node in minuscule_nodes(self.ct)
        self.quadric = (not self.minuscule
                        and self.ct.family == "B" and self.node == 1)
        if not (self.minuscule or self.quadric):
            raise ValueError(
                f"unsupported case {self.cartan} node {self.node}: "
                "need a minuscule node or an odd quadric B_n node 1"
            )
        merged = _default_params(self.ct.family, self.ct.rank, self.node)
        merged.update(params or {})
        if self.quadric:
            merged.pop("ct_degree", None)
        self.params = merged
        self.d = build_root_datum(self.ct)
        self._reps = None
        self._matrix = None

    @property
    def reps(self):
        if self._reps is None:
            self._reps = minuscule_coset_reps(self.d, self.node)
        return self._reps

    @property
    def matrix(self):
        if self._matrix is None:
            if self.quadric:
                self._matrix = fw_matrix(self.d, self.reps, self.node)
            else:
                self._matrix = quantum_chevalley_minuscule(
                    self.d, self.reps, self.node
                )
        return self._matrix

    def is_projective_space(self) -> bool:
        fam, n = self.ct.family, self.ct.rank
        return (fam == "A" and self.node in (1, n)) or (
            fam == "C" and self.node == 1
        )

    def check_names(self):
        if self.quadric:
            names = ["fw_products", "homogeneous", "period_positive"]
            if self.ct.rank == 3:
                names.append("x6_relation")
            return names
        names = ["mirror", "equivariant", "homogeneous", "poincare", "period"]
        if self.is_projective_space():
            names.append("projective_period")
        if "ct_degree" in self.params:
            names.append("constant_term")
        if (self.cartan, self.node) in _WGAMMA_PINNED:
            names.append("wgamma")
        if (self.cartan, self.node) == ("A3", 2):
            names.append("gr24_products")
        if (self.cartan, self.node) == ("D4", 1):
            names.extend(["d4_kernel", "d4_scalar"])
        return names


# --------------------------------------------------------------------------
# verification checks: each returns a detail string or raises CheckFailure
# --------------------------------------------------------------------------

def _check_mirror(case, D, budget):
    F = fg_connection(build_rep(case.d, case.node))
    if case.matrix != F:
        raise CheckFailure("quantum Chevalley matrix != canonical-basis "
                           "connection")
    return f"{case.matrix.size}x{case.matrix.size} matrices equal"


def _check_equivariant(case, D, budget):
    M = mihalcea_equivariant(case.d, case.reps, case.node)
    F = equivariant_fg(build_rep(case.d, case.node))
    if M != F:
        raise CheckFailure("equivariant matrices differ")
    return f"equal over {len(M.variables)} variables"


def _check_homogeneous(case, D, budget):
    if not check_homogeneous(case.d, case.matrix, case.node):
        raise CheckFailure("matrix entries are not degree-homogeneous")
    return "degree-homogeneous"


def _check_poincare(case, D, budget):
    p = case.reps.parabolic
    se = special_elements(case.d, p)
    if not poincare_self_adjoint(case.d, case.matrix,
                                 lambda w: pd(case.d, p, se, w)):
        raise CheckFailure("matrix is not self-adjoint for the Poincare "
                           "pairing")
    return "self-adjoint"


def _check_period(case, D, budget):
    series = quantum_period(case.matrix, D)
    paths = bruhat_path_count(case.d, case.reps, case.node)
    c1 = series.coefficients[1]
    if c1 != paths:
        raise CheckFailure(f"c1 = {c1} but saturated-chain count = {paths}")
    if c1 <= 0:
        raise CheckFailure(f"c1 = {c1} is not positive")
    return f"c1 = {c1} = chain count; c_0..c_{D} nonnegative"


def _check_period_positive(case, D, budget):
    series = quantum_period(case.matrix, D)
    c1 = series.coefficients[1]
    if c1 != 2:
        raise CheckFailure(f"quadric c1 = {c1}, expected 2")
    return f"c1 = 2; c_0..c_{D} nonnegative"


def _check_projective_period(case, D, budget):
    series = quantum_period(case.matrix, D)
    size = len(case.reps)
    for d, c in enumerate(series.coefficients):
        want = Fraction(1, factorial(d) ** size)
        if c != want:
            raise CheckFailure(f"c_{d} = {c}, expected 1/(d!)^{size}")
    return f"c_d = 1/(d!)^{size} up to degree {D}"


def _check_constant_term(case, D, budget):
    k, n = case.node, case.ct.rank + 1
    depth = case.params["ct_degree"] if D is None else D
    pot = potential_typeA(k, n)
    series = quantum_period(case.matrix, depth)
    values = []
    for d in range(1, depth + 1):
        got = gw_from_constant_term(pot, d, budget)
        want = series.coefficients[d]
        if got != want:
            raise CheckFailure(
                f"degree {d}: constant-term value {got} != period {want}"
            )
        values.append(str(got))
    return f"Gr({k},{n}) degrees 1..{depth}: " + ", ".join(values)


def _check_wgamma(case, D, budget):
    want = _WGAMMA_PINNED[(case.cartan, case.node)]
    got = len(w_gamma_set(case.d, case.reps))
    if got != want:
        raise CheckFailure(f"|W(gamma)| = {got}, expected {want}")
    return f"|W(gamma)| = {want}"


def _check_gr24_products(case, D, budget):
    m = case.matrix
    q = LaurentPoly.var(m.variables, "q")
    one = LaurentPoly.const(m.variables, 1)

    def col(c):
        return {r: e for r, e in enumerate(m.column(c)) if not e.is_zero()}

    golden = {
        1: {2: one, 3: one},   # s1*s1 = s11 + s2
        2: {4: one},           # s1*s11 = s21
        3: {4: one},           # s1*s2 = s21
        4: {5: one, 0: q},     # s1*s21 = s22 + q
        5: {1: q},             # s1*s22 = q s1
    }
    for c, want in golden.items():
        if col(c) != want:
            raise CheckFailure(f"column {c} differs from the golden product")
    return "five golden columns match"


def _check_d4_kernel(case, D, budget):
    split = d4_split(case.matrix)
    full = quantum_period(case.matrix, 3)
    restricted = quantum_period(split.restricted, 3)
    if full.coefficients != restricted.coefficients:
        raise CheckFailure("period changes under restriction to the "
                           "invariant block")
    return "one-line kernel; rank-7 block carries the period"


def _check_d4_scalar(case, D, budget):
    split = d4_split(case.matrix)
    op = cyclic_scalar_operator(split.restricted, 6)
    want = (RatFunc.make((0, -2)), RatFunc.make((0, -4)))
    want += (RatFunc.make(()),) * 5 + (RatFunc.make((1,)),)
    if op.coefficients != want:
        raise CheckFailure("operator differs from theta^7 - 4q theta - 2q")
    if not operator_annihilates(op, quantum_period(split.restricted, 8)):
        raise CheckFailure("operator does not annihilate the period")
    return "theta^7 - 4q*theta - 2q; annihilates the period to degree 8"


def _check_fw_products(case, D, budget):
    m = case.matrix
    n = case.ct.rank
    one = LaurentPoly.const(m.variables, 1)
    two = LaurentPoly.const(m.variables, 2)
    q = LaurentPoly.var(m.variables, "q")
    if m.entry(n, n - 1) != two:
        raise CheckFailure("middle product is not doubled")

    def col(c):
        return {r: e for r, e in enumerate(m.column(c)) if not e.is_zero()}

    if col(2 * n - 2) != {2 * n - 1: one, 0: q}:
        raise CheckFailure("penultimate column misses sigma_top + q")
    if col(2 * n - 1) != {1: q}:
        raise CheckFailure("top column is not q sigma_1")
    return "doubling, +q, and wrap products match"


def _check_x6_relation(case, D, budget):
    X = LaurentPoly.var(("X", "q"), "X")
    q = LaurentPoly.var(("X", "q"), "q")
    if not matrix_relation(case.matrix, X ** 6 - 4 * q * X):
        raise CheckFailure("X^6 - 4qX does not annihilate the matrix")
    return "X^6 - 4qX = 0"


_CHECKS = {
    "mirror": _check_mirror,
    "equivariant": _check_equivariant,
    "homogeneous": _check_homogeneous,
    "poincare": _check_poincare,
    "period": _check_period,
    "period_positive": _check_period_positive,
    "projective_period": _check_projective_period,
    "constant_term": _check_constant_term,
    "wgamma": _check_wgamma,
    "gr24_products": _check_gr24_products,
    "d4_kernel": _check_d4_kernel,
    "d4_scalar": _check_d4_scalar,
    "fw_products": _check_fw_products,
    "x6_relation": _check_x6_relation,
}


def _run_case(entry, max_degree, budget):
    cartan, node = entry["cartan"], entry["node"]
    params = {k: v for k, v in entry.items() if k not in ("cartan", "node")}
    try:
        case = Case(cartan, node, params)
    except ValueError as exc:
        return {
            "cartan": cartan, "node": node, "pass": False,
            "checks": [{"name": "setup", "pass": False, "detail": str(exc)}],
        }
    period_D = max_degree or case.params.get("max_degree", 3)
    ct_D = max_degree  # None -> per-case default depth
    checks = []
    for name in case.check_names():
        depth = ct_D if name == "constant_term" else period_D
        try:
            detail = _CHECKS[name](case, depth, budget)
            checks.append({"name": name, "pass": True, "detail": detail})
        except CheckFailure as exc:
            checks.append({"name": name, "pass": False, "detail": str(exc)})
        except BudgetExceeded as exc:
            checks.append({"name": name, "pass": False,
                           "detail": f"enumeration budget exceeded: {exc}"})
    return {
        "cartan": case.cartan,
        "node": case.node,
        "dim": len(case.reps),
        "pass": all(c["pass"] for c in checks),
        "checks": checks,
    }


def _load_case_list():
    text = resources.files("mmirror.data").joinpath(
        "verify_cases.json").read_text()
    return json.loads(text)["cases"]


# --------------------------------------------------------------------------
# serialization helpers
# --------------------------------------------------------------------------

def _termlist(poly: LaurentPoly) -> list:
    return [[list(exps), str(poly.terms[exps])] for exps in sorted(poly.terms)]


def _matrix_payload(case: Case, M) -> dict:
    return {
        "schema": "mm/1",
        "case": case.cartan,
        "node": case.node,
        "size": M.size,
        "variables": list(M.variables),
        "basis": [
            {"word": list(w.word), "length": w.length}
            for w in case.reps.reps
        ],
        "entries": [[_termlist(e) for e in row] for row in M.entries],
    }


def _matrix_csv(M) -> str:
    lines = [",".join(e.render() for e in row) for row in M.entries]
    return "\n".join(lines) + "\n"


def _ratfunc_payload(rf: RatFunc) -> dict:
    return {"num": [str(c) for c in rf.num], "den": [str(c) for c in rf.den]}


def _emit(text: str, output) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, output) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", output)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_roots(args) -> int:
    ct = CartanType.parse(args.case)
    d = build_root_datum(ct)
    parabolic = levi_data(d, node=args.node) if args.node else None
    payload = datum_to_json(d, parabolic)
    payload["case"] = str(ct)
    _emit_json(payload, args.output)
    return 0


def cmd_chevalley(args) -> int:
    case = Case(args.case, args.node)
    if args.equivariant:
        if not case.minuscule:
            raise ValueError("equivariant matrix needs a minuscule node")
        if args.format == "csv":
            raise ValueError("csv output is limited to the single-variable "
                             "matrix; use json for the equivariant one")
        M = mihalcea_equivariant(case.d, case.reps, case.node)
    else:
        M = case.matrix
    if args.format == "csv":
        _emit(_matrix_csv(M), args.output)
    else:
        payload = _matrix_payload(case, M)
        payload["equivariant"] = bool(args.equivariant)
        _emit_json(payload, args.output)
    return 0


def cmd_verify(args) -> int:
    if args.all:
        entries = _load_case_list()
    elif args.case:
        if not args.node:
            raise ValueError("single-case verify needs --node")
        wanted = (str(CartanType.parse(args.case)), args.node)
        entries = [e for e in _load_case_list()
                   if (e["cartan"], e["node"]) == wanted]
        if not entries:
            entries = [{"cartan": wanted[0], "node": wanted[1]}]
    else:
        raise ValueError("verify needs a case or --all")

    if args.jobs and args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(
                lambda e: _run_case(e, args.max_degree, args.budget), entries
            ))
    else:
        reports = [_run_case(e, args.max_degree, args.budget)
                   for e in entries]

    total = sum(len(r["checks"]) for r in reports)
    failed = sum(1 for r in reports for c in r["checks"] if not c["pass"])
    payload = {
        "schema": "mm/1",
        "command": "verify",
        "cases": reports,
        "counts": {"cases": len(reports), "checks": total, "failed": failed},
        "pass": failed == 0,
    }
    _emit_json(payload, args.output)
    return 0 if failed == 0 else 1


def cmd_potential(args) -> int:
    pot = potential_typeA(args.k, args.n)
    payload = potential_to_json(pot)
    payload["schema"] = "mm/1"
    payload["k"] = args.k
    payload["n"] = args.n
    _emit_json(payload, args.output)
    return 0


def cmd_period(args) -> int:
    case = Case(args.case, args.node)
    D = args.max_degree or 6
    series = quantum_period(case.matrix, D)
    payload = {
        "schema": "mm/1",
        "case": case.cartan,
        "node": case.node,
        "max_degree": D,
        "coefficients": series_to_json(series),
    }
    _emit_json(payload, args.output)
    return 0


def cmd_gw(args) -> int:
    pot = potential_typeA(args.k, args.n)
    m = pot.coxeter * args.d
    ct = constant_term_power(pot, m, args.budget)
    payload = {
        "schema": "mm/1",
        "k": args.k,
        "n": args.n,
        "degree": args.d,
        "power": m,
        "constant_term": str(ct),
        "value": str(ct / factorial(m)),
    }
    _emit_json(payload, args.output)
    return 0


def cmd_scalar_ode(args) -> int:
    case = Case(args.case, args.node)
    M = case.matrix
    if (case.cartan, case.node) == ("D4", 1):
        M = d4_split(M).restricted
        start = M.size - 1
        block = "rank-7 invariant complement"
    else:
        start = M.size - 1
        block = "full matrix"
    op = cyclic_scalar_operator(M, start)
    payload = {
        "schema": "mm/1",
        "case": case.cartan,
        "node": case.node,
        "block": block,
        "size": M.size,
        "order": op.order,
        "coefficients": [_ratfunc_payload(c) for c in op.coefficients],
    }
    _emit_json(payload, args.output)
    return 0


def cmd_bessel(args) -> int:
    report = bessel_numeric_checks(args.y, args.nu)
    ok = report["wronskian_error"] < WRONSKIAN_TOL
    payload = {
        "schema": "mm/1",
        "y": args.y,
        "nu": args.nu,
        "tolerance": WRONSKIAN_TOL,
        "pass": ok,
    }
    payload.update(report)
    _emit_json(payload, args.output)
    return 0 if ok else 1


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmirror",
        description="Exact mirror-identity computations for minuscule "
                    "flag varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", metavar="FILE",
                       help="write the payload to FILE instead of stdout")

    p = sub.add_parser("roots", help="dump the root datum and parabolic")
    p.add_argument("case")
    p.add_argument("--node", type=int)
    add_output(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("chevalley", help="dump a connection matrix")
    p.add_argument("case")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--equivariant", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    add_output(p)
    p.set_defaults(func=cmd_chevalley)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("case", nargs="?")
    p.add_argument("--node", type=int)
    p.add_argument("--all", action="store_true",
                   help="run every pinned case")
    p.add_argument("--max-degree", type=int,
                   help="override the per-case series depth")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="constant-term enumeration node budget")
    p.add_argument("--jobs", type=int, default=1,
                   help="run cases concurrently (output order is fixed)")
    add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("potential", help="dump a Grassmannian potential")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    add_output(p)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("period", help="quantum period coefficients")
    p.add_argument("case")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--max-degree", type=int)
    add_output(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("gw", help="Gromov-Witten number from the "
                                  "constant-term formula")
    p.add_argument("k", type=int)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("--budget", type=int, default=10_000_000)
    add_output(p)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("scalar-ode", help="cyclic-vector scalar operator")
    p.add_argument("case")
    p.add_argument("--node", type=int, required=True)
    add_output(p)
    p.set_defaults(func=cmd_scalar_ode)

    p = sub.add_parser("bessel", help="Wronskian check for the rank-one "
                                      "equivariant periods")
    p.add_argument("y", type=float)
    p.add_argument("nu", type=float)
    add_output(p)
    p.set_defaults(func=cmd_bessel)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, BudgetExceeded) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

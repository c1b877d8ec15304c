"""The identity suite behind ``colored-eulerian verify``.

Every check takes (n, alpha, budget) and returns (status, witness), where
status is "pass", "fail" or "skipped" and witness holds the exact values
that disagreed (or why the check was skipped). Checks are module-level
functions so they can be shipped to worker processes.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .arith import egf_colored_fubini, truncation_for
from .errors import BudgetExceeded
from .eulerian import (
    ROUTES,
    classical_eulerian,
    coefficient_by_descent_sum,
    coefficient_sum_check,
    colored_eulerian,
    colored_eulerian_descents,
    colored_eulerian_recurrence,
    colored_fubini,
    log_concavity_check,
    real_rootedness_report,
    verify_euler_char_of_Pn,
    verify_fubini_half,
    verify_power_sum_corollary,
    verify_theorem_main,
)
from .permutohedron import (
    count_components,
    count_connected_components,
    euler_characteristic,
    f_dim_formula,
    q_size,
    verify_components_equal_faces,
    verify_f_scaling,
    verify_face_lattice,
)
from .structures import alternating_fiber_size, enumerate_Q, fiber_size, forget_map, is_alternating

# enumeration-heavy checks run only below these sizes
FIBER_LIMIT = 2_000_000
HASSE_LIMIT = 100_000
POWER_SUM_EPS = Fraction(1, 10**6)


def _ok(flag: bool, witness=None):
    return ("pass", None) if flag else ("fail", witness)


def check_route_agreement(n, alpha, budget):
    polys = {}
    for route in ROUTES:
        try:
            if route == "descents":
                polys[route] = colored_eulerian_descents(n, alpha, budget=budget).coefficients
            else:
                polys[route] = colored_eulerian(n, alpha, route).coefficients
        except BudgetExceeded as exc:
            polys[route] = f"skipped: {exc}"
    values = [v for v in polys.values() if isinstance(v, list)]
    return _ok(all(v == values[0] for v in values), polys)


def check_descent_sum_coefficients(n, alpha, budget):
    want = colored_eulerian(n, alpha).coefficients
    got = [coefficient_by_descent_sum(n, m, alpha) for m in range(n)]
    return _ok(got == want, {"descent_sum": got, "closed": want})


def check_coefficient_sum(n, alpha, budget):
    return _ok(coefficient_sum_check(n, alpha), {"poly": colored_eulerian(n, alpha).coefficients})


def check_log_concavity(n, alpha, budget):
    if n < 3:
        return "skipped", "needs n >= 3"
    return _ok(log_concavity_check(n, alpha), {"poly": colored_eulerian(n, alpha).coefficients})


def check_real_roots(n, alpha, budget):
    if n < 2:
        return "skipped", "needs n >= 2"
    sqf, count = real_rootedness_report(n, alpha)
    return _ok(sqf and count == n - 1, {"squarefree": sqf, "distinct_real_roots": count})


def check_q_count(n, alpha, budget):
    size = q_size(n, alpha)
    if size > min(budget, FIBER_LIMIT):
        return "skipped", f"|Q| = {size} over enumeration limit"
    streamed = sum(1 for _ in enumerate_Q(n, alpha))
    egf_count = egf_colored_fubini(alpha, n)[n] * factorial(n)
    values = {"stream": streamed, "formula": colored_fubini(n, alpha), "egf": egf_count}
    return _ok(len(set(values.values())) == 1, {k: str(v) for k, v in values.items()})


def check_fibers(n, alpha, budget):
    """Brute-force fibers of the forgetful map against both fiber formulas."""
    size = q_size(n, alpha)
    if size > min(budget, FIBER_LIMIT):
        return "skipped", f"|Q| = {size} over enumeration limit"
    fibers, alt_fibers = Counter(), Counter()
    for tau in enumerate_Q(n, alpha):
        pi = forget_map(tau)
        fibers[pi] += 1
        if is_alternating(tau):
            alt_fibers[pi] += 1
    bad = []
    for pi in permutations(range(1, n + 1)):
        want = fiber_size(pi, alpha)
        want_alt = alternating_fiber_size(pi, alpha)
        if fibers[pi] != want or alt_fibers[pi] != want_alt:
            bad.append({"pi": list(pi), "fiber": [fibers[pi], want], "alternating": [alt_fibers[pi], want_alt]})
    return _ok(not bad, bad[:5])


def check_euler_characteristic(n, alpha, budget):
    chi = euler_characteristic(n, alpha)
    return _ok(chi.consistent, {"alternating_sum": chi.alternating_sum, "components": chi.components,
                                "eulerian_formula": str(chi.eulerian_formula)})


def check_components_equal_faces(n, alpha, budget):
    if alpha < 2:
        return "skipped", "needs alpha >= 2"
    return _ok(verify_components_equal_faces(n, alpha),
               {"components": count_components(n, alpha), "faces": sum(f_dim_formula(n, alpha - 1))})


def check_hasse_components(n, alpha, budget):
    size = q_size(n, alpha)
    if size > min(budget, HASSE_LIMIT):
        return "skipped", f"|Q| = {size} over union-find limit"
    found = count_connected_components(n, alpha)
    return _ok(found == count_components(n, alpha), {"union_find": found, "formula": count_components(n, alpha)})


def check_face_lattice(n, alpha, budget):
    if n > 5 or alpha > 3:
        return "skipped", "face lattice audit limited to n <= 5, alpha <= 3"
    return _ok(verify_face_lattice(n, alpha))


def check_f_scaling(n, alpha, budget):
    return _ok(verify_f_scaling(n, alpha))


def check_amended_recurrence(n, alpha, budget):
    if n < 2:
        return "skipped", "recurrence rows start at n = 2"
    _, report = colored_eulerian_recurrence(n, alpha, n_min=n, variant="amended")
    return _ok(not report.discrepancies, [d.to_json() for d in report.discrepancies])


def check_power_sum(n, alpha, budget):
    x = Fraction(alpha, alpha + 1)
    K = truncation_for(n, x, POWER_SUM_EPS)
    lhs, rhs, tail = verify_power_sum_corollary(n, alpha, K)
    return _ok(abs(lhs - rhs) <= tail <= POWER_SUM_EPS, {"K": K, "rhs": str(rhs), "gap": str(abs(lhs - rhs))})


def check_theorem_main(n, alpha, budget):
    return _ok(verify_theorem_main(n))


def check_fubini_half(n, alpha, budget):
    return _ok(verify_fubini_half(n))


def check_euler_char_Pn(n, alpha, budget):
    return _ok(verify_euler_char_of_Pn(n))


def check_classical_palindrome(n, alpha, budget):
    c = classical_eulerian(n).poly.int_coeffs()
    return _ok(c[0] == 0 and c[1:] == c[1:][::-1], {"poly": c})


PER_PAIR = {
    "amended_recurrence": check_amended_recurrence,
    "coefficient_sum": check_coefficient_sum,
    "components_equal_faces": check_components_equal_faces,
    "descent_sum_coefficients": check_descent_sum_coefficients,
    "euler_characteristic": check_euler_characteristic,
    "f_scaling": check_f_scaling,
    "face_lattice": check_face_lattice,
    "fibers": check_fibers,
    "hasse_components": check_hasse_components,
    "log_concavity": check_log_concavity,
    "power_sum": check_power_sum,
    "q_count": check_q_count,
    "real_roots": check_real_roots,
    "route_agreement": check_route_agreement,
}

PER_N = {
    "classical_palindrome": check_classical_palindrome,
    "euler_char_Pn": check_euler_char_Pn,
    "fubini_half": check_fubini_half,
    "theorem_main": check_theorem_main,
}

ALL_CHECKS = {**PER_PAIR, **PER_N}


def plan(ns, alphas) -> list[tuple[str, int, int | None]]:
    tasks = [(name, n, a) for name in PER_PAIR for n in ns for a in alphas]
    tasks += [(name, n, None) for name in PER_N for n in ns]
    return tasks


def run_task(task) -> dict:
    name, n, alpha, budget = task
    status, witness = ALL_CHECKS[name](n, alpha, budget)
    params = {"n": n} if alpha is None else {"n": n, "alpha": alpha}
    record = {"check": name, "params": params, "status": status}
    if status != "pass" and witness is not None:
        record["witness"] = witness
    return record


@dataclass
class VerificationReport:
    records: list[dict]

    @property
    def passed(self) -> bool:
        return not any(r["status"] == "fail" for r in self.records)

    def sorted_records(self) -> list[dict]:
        return sorted(self.records, key=lambda r: (r["check"], r["params"]["n"], r["params"].get("alpha", 0)))

    def to_json(self) -> dict:
        return {"checks": self.sorted_records(), "passed": self.passed}

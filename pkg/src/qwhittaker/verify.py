"""Verification suites: named groups of exact checks with reproducible counterexamples.

Each check yields a :class:`CheckResult`; a failing result carries the
inputs and both sides in canonical serialized form.  Reports list checks
sorted by name, so identical jobs give identical output.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import cterm, demazure, macdonald, qtoda, qtorus
from .corealg import QLaurent, partitions_in_box
from .serialize import to_obj

__all__ = ["SUITES", "CheckResult", "Report", "run_suite", "run_suites"]

SUITES = ("eiglat", "modpsi", "selfdual", "corSan", "noncomm", "reclimt0")


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: dict | None = None
    seconds: float = 0.0

    def to_obj(self) -> dict:
        out = {"name": self.name, "status": "pass" if self.passed else "fail", "cases": self.cases}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class Report:
    suite: str
    rank: int
    box: tuple
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "suite": self.suite,
            "rank": self.rank,
            "box": list(self.box),
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_obj() for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} rank {self.rank} box {self.box[0]}..{self.box[1]}"]
        for c in sorted(self.checks, key=lambda c: c.name):
            lines.append(f"  {'PASS' if c.passed else 'FAIL'} {c.name} ({c.cases} cases)")
            if c.counterexample is not None:
                lines.append(f"    counterexample: {c.counterexample.get('inputs')}")
        lines.append("all pass" if self.passed else "FAILURES")
        return "\n".join(lines)


def _cx(inputs: dict, lhs, rhs) -> dict:
    return {"inputs": inputs, "lhs": to_obj(lhs), "rhs": to_obj(rhs)}


def _timed(name, fn) -> CheckResult:
    start = time.perf_counter()
    res = fn()
    res.name = name
    res.seconds = time.perf_counter() - start
    return res


def _dominant(n, lo, hi):
    return [p for p in qtoda.box_points(n, lo, hi) if qtoda.is_dominant(p)]


def _compare_all(cases, inputs_of):
    """cases yields (key, lhs, rhs); stop at the first mismatch."""
    count = 0
    for key, lhs, rhs in cases:
        count += 1
        if lhs != rhs:
            return CheckResult("", False, count, _cx(inputs_of(key), lhs, rhs))
    return CheckResult("", True, count)


# suites


def _eiglat(n, lo, hi):
    def eigen():
        ok, failures = qtoda.toda_eigen_check(n, lo, hi)
        cases = n * len(qtoda.box_points(n, lo, hi - 1))
        if ok:
            return CheckResult("", True, cases)
        r, p, lhs, rhs = failures[0]
        return CheckResult("", False, cases, _cx({"r": r, "p": list(p)}, lhs, rhs))

    def recursive():
        pts = _dominant(n, lo, hi)
        return _compare_all(((p, qtoda.whittaker_gz(p), qtoda.whittaker_recursive(p)) for p in pts),
                            lambda p: {"p": list(p)})

    return [_timed("eiglat.eigen", eigen), _timed("eiglat.gz_vs_recursive", recursive)]


def _modpsi(n, lo, hi):
    lo0 = max(lo, 0)

    def eigen():
        ok, failures = qtoda.modpsi_check(n, hi)
        cases = 2 * n * len(list(partitions_in_box(n, 0, hi)))
        if ok:
            return CheckResult("", True, cases)
        kind, r, lam, lhs, rhs = failures[0]
        return CheckResult("", False, cases, _cx({"operator": kind, "r": r, "lambda": list(lam)}, lhs, rhs))

    def identities():
        ok, failures = qtoda.operator_identity_check(n, trials=20, seed=0, box=(lo0, hi))
        if ok:
            return CheckResult("", True, 20)
        ident, trial, r, p, lhs, rhs = failures[0]
        inputs = {"identity": ident, "trial": trial, "seed": 0, "r": r, "p": list(p)}
        return CheckResult("", False, 20, _cx(inputs, lhs, rhs))

    return [_timed("modpsi.eigen", eigen), _timed("modpsi.identities", identities)]


def _selfdual(n, lo, hi):
    lams = list(partitions_in_box(n, 0, max(hi, 0)))

    def check():
        count = 0
        for k in (1, 2):
            for i, lam in enumerate(lams):
                for mu in lams[i + 1:]:
                    count += 1
                    ok, detail = macdonald.self_duality_check(lam, mu, k, n, detail=True)
                    if not ok:
                        q0, _, lv, rv = next(d for d in detail if not (d[1] and d[2] == d[3]))
                        inputs = {"lambda": list(lam), "mu": list(mu), "k": k, "q": str(q0)}
                        return CheckResult("", False, count, _cx(inputs, QLaurent(lv), QLaurent(rv)))
        return CheckResult("", True, count)

    return [_timed("selfdual", check)]


def _corsan(n, lo, hi):
    pts = _dominant(n, lo, hi)

    def literal():
        count = 0
        for p in pts:
            count += 1
            ok, d = demazure.sanderson_corsan_check(p, detail=True)
            if not ok:
                a = d["exponent"]
                inputs = {"p": list(p), "orbit": [d["orbit"][0], d["orbit"][1], list(d["orbit"][2])],
                          "prefactor_exponent": str(a)}
                return CheckResult("", False, count, _cx(inputs, d["pi_ch"], d["P"] * QLaurent.q(a)))
        return CheckResult("", True, count)

    def graded():
        return _compare_all(((p, demazure.whittaker_from_demazure(p, corrected=True), qtoda.whittaker_tilde(p))
                             for p in pts), lambda p: {"p": list(p)})

    return [_timed("corSan.literal", literal), _timed("corSan.graded", graded)]


def _noncomm(n, lo, hi):
    pts = [p for p in _dominant(n, max(lo, 0), hi)]

    def matrix():
        return _compare_all(((p, qtorus.whittaker_matrix_element(p), qtoda.whittaker_tilde(p)) for p in pts),
                            lambda p: {"p": list(p)})

    def binomial():
        count = 0
        for m in range(7):
            count += 1
            if not qtorus.q_binomial_identity_check(m):
                return CheckResult("", False, count, {"inputs": {"n": m}})
        return CheckResult("", True, count)

    out = [_timed("noncomm.matrix_element", matrix), _timed("noncomm.q_binomial", binomial)]
    if n >= 2:
        ell = n - 1

        def conversion():
            count = 0
            for k in range(1, ell + 1):
                for c in range(4):
                    for a in range(c + 1):
                        for b in range(a + 1):
                            count += 1
                            if not qtorus.conversion_identity_check(ell, k, a, b, c):
                                inputs = {"l": ell, "k": k, "a": a, "b": b, "c": c}
                                return CheckResult("", False, count, {"inputs": inputs})
            return CheckResult("", True, count)

        out.append(_timed("noncomm.conversion", conversion))
    return out


RECLIMT0_ORDER = 8


def _reclimt0(n, lo, hi, N=RECLIMT0_ORDER):
    ell = n - 1
    top = min(max(hi, 0), 4)
    lams = list(partitions_in_box(ell, 0, top)) if ell else [()]

    def recursion():
        count = 0
        for lam in lams:
            count += 1
            ok, lhs, rhs = cterm.verify_t0_recursion(lam, N, detail=True)
            if not ok:
                return CheckResult("", False, count, _cx({"lambda": list(lam), "N": N},
                                                         lhs.to_poly(), rhs.to_poly()))
        return CheckResult("", True, count)

    def budget():
        count = 0
        for lam in lams:
            count += 1
            a = cterm.t0_recursion_rhs(lam, N)
            b = cterm.t0_recursion_rhs(lam, N, extra_budget=2)
            if a != b:
                return CheckResult("", False, count, _cx({"lambda": list(lam), "extra_budget": 2},
                                                         a.to_poly(), b.to_poly()))
        return CheckResult("", True, count)

    def norm():
        ok = cterm.constant_term_norm_check(n, N)
        return CheckResult("", ok, 1, None if ok else {"inputs": {"nvars": n, "N": N}})

    return [_timed("reclimt0.recursion", recursion), _timed("reclimt0.budget_stable", budget),
            _timed("reclimt0.norm_constant_term", norm)]


_RUNNERS = {
    "eiglat": _eiglat,
    "modpsi": _modpsi,
    "selfdual": _selfdual,
    "corSan": _corsan,
    "noncomm": _noncomm,
    "reclimt0": _reclimt0,
}


def run_suite(name: str, rank: int, box=(0, 3), trunc: int | None = None) -> Report:
    """Run one suite; ``trunc`` sets the q-adic order of the constant-term checks."""
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    lo, hi = box
    report = Report(name, rank, (lo, hi))
    if name == "reclimt0" and trunc is not None:
        report.checks = _reclimt0(rank, lo, hi, trunc)
    else:
        report.checks = _RUNNERS[name](rank, lo, hi)
    return report


def run_suites(names, rank: int, box=(0, 3), trunc: int | None = None) -> list:
    return [run_suite(name, rank, box, trunc) for name in names]

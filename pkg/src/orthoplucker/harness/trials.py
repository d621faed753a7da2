"""Seeded randomized trials over ansatz cases and the two conjecture directions."""
from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import sympy as sp

from .. import linalg
from ..decomposition import Decomposition, Indeterminate, SimplePart, decompose, verify_orthogonal_sum
from ..errors import SamplingExhausted
from ..exterior import Form, MetricSpace, blades, support_plane, wedge
from ..lie import form_from_bracket, jacobi_residual, so3, su3, su3_form
from ..plucker import is_simple, orthogonal_relation_check, relation_holds
from .cases import AnsatzCase, Branch, complete, evaluate, instantiate, split_parts

__all__ = [
    "TrialConfig",
    "CaseReport",
    "trial_seed",
    "random_rational",
    "sample_branch",
    "sample_violating",
    "run_case",
    "run_probe",
    "run_split_checks",
    "run_conjecture_direction",
    "su3_counterexample",
    "check_candidate",
]

MAX_RESAMPLES = 200


@dataclass(frozen=True)
class TrialConfig:
    dim: int
    time_dims: int
    degree: int
    trials: int = 100
    seed: int = 0
    coefficient_height: int = 10

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.coefficient_height < 1:
            raise ValueError("coefficient_height must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @classmethod
    def for_case(cls, case: AnsatzCase, trials: int = 100, seed: int = 0, coefficient_height: int = 10):
        return cls(case.dim, case.time_dims, case.degree, trials, seed, coefficient_height)


@dataclass
class CaseReport:
    case: str
    citation: str
    trials: int
    satisfied_and_decomposed: int = 0
    constraint_violated_and_relation_failed: int = 0
    failures: list = field(default_factory=list)  # (trial seed, reason)
    flags: list = field(default_factory=list)  # findings that are not failures
    details: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "case": self.case,
            "citation": self.citation,
            "trials": self.trials,
            "satisfied_and_decomposed": self.satisfied_and_decomposed,
            "constraint_violated_and_relation_failed": self.constraint_violated_and_relation_failed,
            "verdict": self.verdict,
            "failures": [{"seed": s, "reason": r} for s, r in self.failures],
        }
        if self.flags:
            out["flags"] = list(self.flags)
        if self.details:
            out["details"] = self.details
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def trial_seed(master: int, name: str, index: int) -> int:
    """64-bit seed of one trial, independent of execution order."""
    h = hashlib.blake2b(f"{master}:{name}:{index}".encode(), digest_size=8)
    return int.from_bytes(h.digest(), "big")


def random_rational(rng: random.Random, height: int, nonzero: bool = True) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q or not nonzero:
            return q


# ---------------------------------------------------------------- ansatz cases


def _branch_symbols(case: AnsatzCase, branch: Branch) -> list:
    assigned = {s for s, _ in branch.assign}
    free = set(case.parameters) - assigned
    for _, e in branch.assign:
        free |= sp.sympify(e).free_symbols
    return sorted(free, key=lambda s: s.name)


def sample_branch(case: AnsatzCase, branch: Branch, rng: random.Random, height: int) -> dict:
    """Parameter values on ``branch``; resamples when a denominator vanishes."""
    free = _branch_symbols(case, branch)
    for _ in range(MAX_RESAMPLES):
        env = {s: random_rational(rng, height) for s in free}
        try:
            for s, e in branch.assign:
                env[s] = evaluate(sp.sympify(e), env)
            full = complete(case, env)
        except ZeroDivisionError:
            continue
        if all(evaluate(sp.sympify(c), full) == 0 for c in case.constraints):
            return env
    raise SamplingExhausted(f"{case.name}/{branch.label}: no admissible sample in {MAX_RESAMPLES} draws")


def sample_violating(case: AnsatzCase, rng: random.Random, height: int) -> dict:
    """Nonzero parameter values at which every constraint is nonzero."""
    params = case.parameters
    for _ in range(MAX_RESAMPLES):
        env = {s: random_rational(rng, height) for s in params}
        try:
            full = complete(case, env)
        except ZeroDivisionError:
            continue
        if all(evaluate(sp.sympify(c), full) != 0 for c in case.constraints):
            return env
    raise SamplingExhausted(f"{case.name}: no constraint-violating sample in {MAX_RESAMPLES} draws")


def _split_decomposition(case, branch, env):
    parts = []
    for form, factors in split_parts(case, branch, env):
        if form.is_zero():
            continue
        parts.append(SimplePart(factors, form, support_plane(form)))
    return Decomposition(tuple(parts), "closed-form")


def _run_trials(case: AnsatzCase, cfg: TrialConfig, report: CaseReport, divergence_only: bool):
    for i in range(cfg.trials):
        seed = trial_seed(cfg.seed, case.name, i)
        rng = random.Random(seed)
        branch = case.branches[i % len(case.branches)]
        env = sample_branch(case, branch, rng, cfg.coefficient_height)
        F = instantiate(case, env)
        ok = relation_holds(F)
        reason = None
        if not ok:
            reason = f"relation fails on branch '{branch.label}'"
        elif branch.split is not None and not verify_orthogonal_sum(F, _split_decomposition(case, branch, env)):
            reason = f"closed-form split rejected on branch '{branch.label}'"
        if reason is None:
            report.satisfied_and_decomposed += 1
        elif divergence_only:
            report.flags.append(f"seed {seed}: {reason}")
        else:
            report.failures.append((seed, reason))

        env = sample_violating(case, rng, cfg.coefficient_height)
        if not relation_holds(instantiate(case, env)):
            report.constraint_violated_and_relation_failed += 1
        elif divergence_only:
            report.flags.append(f"seed {seed}: relation holds with every constraint violated")
        else:
            report.failures.append((seed, "relation holds with every constraint violated"))


def run_case(case: AnsatzCase, cfg: TrialConfig) -> CaseReport:
    """Constraint-satisfying samples pass (and split); violating samples fail."""
    if (cfg.dim, cfg.time_dims, cfg.degree) != (case.dim, case.time_dims, case.degree):
        raise ValueError(
            f"{case.name} lives in d={case.dim}, t={case.time_dims}, p={case.degree}; "
            f"got d={cfg.dim}, t={cfg.time_dims}, p={cfg.degree}"
        )
    start = time.perf_counter()
    report = CaseReport(case.name, case.citation, cfg.trials)
    _run_trials(case, cfg, report, divergence_only=case.probe)
    if case.probe and report.flags:
        report.flags.insert(0, "euclidean rerun diverges from the lorentzian family")
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def run_probe(case: AnsatzCase, cfg: TrialConfig) -> CaseReport:
    """Alias of :func:`run_case` for euclidean reruns; divergences become flags."""
    return run_case(case, cfg)


def run_split_checks(case: AnsatzCase, cfg: TrialConfig) -> CaseReport:
    """Closed-form splits only: every trial uses a branch that carries one."""
    branches = [b for b in case.branches if b.split is not None]
    if not branches:
        raise ValueError(f"{case.name} has no closed-form split")
    start = time.perf_counter()
    report = CaseReport(case.name, case.citation, cfg.trials)
    for i in range(cfg.trials):
        seed = trial_seed(cfg.seed, case.name + "/split", i)
        branch = branches[i % len(branches)]
        env = sample_branch(case, branch, random.Random(seed), cfg.coefficient_height)
        if verify_orthogonal_sum(instantiate(case, env), _split_decomposition(case, branch, env)):
            report.satisfied_and_decomposed += 1
        else:
            report.failures.append((seed, f"closed-form split rejected on branch '{branch.label}'"))
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


# ---------------------------------------------------------------- conjecture directions


def _random_vectors(rng, count, d, height):
    return [[random_rational(rng, height, nonzero=False) for _ in range(d)] for _ in range(count)]


def _random_int_vectors(rng, count, d, height):
    return [[rng.randint(-height, height) for _ in range(d)] for _ in range(count)]


def _primitive(v) -> list:
    """Integer vector on the same line as the rational vector ``v``."""
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // (g or 1) for x in ints]


def _wedge_all(space, vectors) -> Form:
    """Wedge of coordinate vectors; integer vectors stay in Python ints."""
    if not all(isinstance(c, int) for v in vectors for c in v):
        acc = Form.from_vector(space, vectors[0])
        for v in vectors[1:]:
            acc = wedge(acc, Form.from_vector(space, v))
        return acc
    acc = {(): 1}
    for v in vectors:
        nxt: dict = {}
        for key, c in acc.items():
            for j, x in enumerate(v, start=1):
                if not x or j in key:
                    continue
                # moving e_j past the larger indices of key
                pos = sum(1 for y in key if y > j)
                k = tuple(sorted(key + (j,)))
                nxt[k] = nxt.get(k, 0) + (-c * x if pos & 1 else c * x)
        acc = nxt
    return Form(space, len(vectors), {k: c for k, c in acc.items() if c})


def _orthogonal_complement(space: MetricSpace, vectors):
    """Integer basis of the vectors orthogonal to all of ``vectors``."""
    rows = [[space.g(j + 1) * c for j, c in enumerate(v)] for v in vectors]
    return [_primitive(b) for b in linalg.nullspace(rows, space.dim)]


def random_orthogonal_sum(space: MetricSpace, p: int, rng: random.Random, height: int):
    """F1 + c F2 with F1, F2 simple on orthogonal random planes.

    The planes are spanned by integer vectors: rescaling a spanning vector
    does not change the plane and keeps the exact arithmetic small.
    """
    d = space.dim
    for _ in range(MAX_RESAMPLES):
        P1 = _random_int_vectors(rng, p, d, height)
        F1 = _wedge_all(space, P1)
        if F1.is_zero():
            continue
        comp = _orthogonal_complement(space, P1)
        coeffs = _random_int_vectors(rng, p, len(comp), height)
        P2 = [[sum(c * b[j] for c, b in zip(row, comp)) for j in range(d)] for row in coeffs]
        F2 = _wedge_all(space, P2)
        if F2.is_zero():
            continue
        c = random_rational(rng, height)
        return F1 + F2 * c, F1, F2 * c
    raise SamplingExhausted("no nondegenerate pair of orthogonal planes")


def random_simple(space: MetricSpace, p: int, rng: random.Random, height: int) -> Form:
    for _ in range(MAX_RESAMPLES):
        F = _wedge_all(space, _random_int_vectors(rng, p, space.dim, height))
        if not F.is_zero():
            return F
    raise SamplingExhausted("random vectors kept being dependent")


def random_form(space: MetricSpace, p: int, rng: random.Random, height: int) -> Form:
    """Every basis blade with a random nonzero coefficient."""
    return Form(space, p, {k: random_rational(rng, height) for k in blades(space.dim, p)})


def run_conjecture_direction(cfg: TrialConfig) -> CaseReport:
    """Part (i) sampling for d >= 2p, part (ii) sampling for p <= d < 2p.

    A generic sample that satisfies the relation without being simple is
    flagged as a finding; it is never counted as a failure.
    """
    d, t, p = cfg.dim, cfg.time_dims, cfg.degree
    if p < 2 or d < p:
        raise ValueError(f"need 2 <= p <= d, got d={d}, p={p}")
    space = MetricSpace(d, t)
    name = f"conjecture-d{d}-p{p}-t{t}"
    start = time.perf_counter()
    if d >= 2 * p:
        report = CaseReport(name, "sums of two simple forms on orthogonal planes", cfg.trials)
        for i in range(cfg.trials):
            seed = trial_seed(cfg.seed, name, i)
            F, _, _ = random_orthogonal_sum(space, p, random.Random(seed), cfg.coefficient_height)
            if relation_holds(F):
                report.satisfied_and_decomposed += 1
            else:
                report.failures.append((seed, "orthogonal sum violates the relation"))
        report.details["part"] = "i"
    else:
        report = CaseReport(name, "simple forms satisfy, generic forms violate", cfg.trials)
        simple_found = 0
        for i in range(cfg.trials):
            seed = trial_seed(cfg.seed, name, i)
            rng = random.Random(seed)
            F = random_simple(space, p, rng, cfg.coefficient_height)
            if relation_holds(F):
                report.satisfied_and_decomposed += 1
            else:
                report.failures.append((seed, "simple form violates the relation"))
            G = random_form(space, p, rng, cfg.coefficient_height)
            if not relation_holds(G):
                report.constraint_violated_and_relation_failed += 1
            elif is_simple(G):
                simple_found += 1
            else:
                report.flags.append(f"seed {seed}: generic form satisfies the relation but is not simple")
        report.details["part"] = "ii"
        report.details["generic_simple"] = simple_found
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report


def check_candidate(F: Form) -> dict:
    """Classify a user form against the conjecture.

    ``counterexample`` is set when the relation holds but the support
    plane is too large for two orthogonal simple p-forms.
    """
    holds = orthogonal_relation_check(F, "auto" if _rational(F) else "sparse").is_zero
    rank = support_plane(F).rank
    out = {"relation_holds": holds, "support_rank": rank, "counterexample": False}
    if holds:
        result = decompose(F, _check_relation=False)
        if isinstance(result, Indeterminate):
            out["counterexample"] = result.dimension_bound
            out["decomposition"] = "indeterminate"
        else:
            out["decomposition"] = f"{len(result.parts)} part(s)"
    return out


def _rational(F: Form) -> bool:
    return all(type(v) is Fraction for _, v in F.items())


# ---------------------------------------------------------------- su(3)


def su3_counterexample() -> CaseReport:
    """su(3) and su(3) + R^k: metric Lie, relation holds, support too large."""
    start = time.perf_counter()
    report = CaseReport("su3-counterexample", "su(3) with its invariant form, plus abelian factors", 3)
    for extra in (0, 1, 2):
        label = "su(3)" if extra == 0 else f"su(3)+R^{extra}"
        L = su3(extra)
        F = su3_form(extra)
        jac = jacobi_residual(L)
        rel = orthogonal_relation_check(F, "sparse").is_zero
        rank = support_plane(F).rank
        bound = 2 * F.degree
        entry = {"dim": F.space.dim, "jacobi_empty": not jac, "relation_holds": rel, "support_rank": rank}
        report.details[label] = entry
        if jac:
            report.failures.append((extra, f"{label}: Jacobi identity fails"))
        if not rel:
            report.failures.append((extra, f"{label}: relation fails"))
        if rank != 8 or rank <= bound:
            report.failures.append((extra, f"{label}: support rank {rank} does not exceed {bound}"))
        if not report.failures:
            report.satisfied_and_decomposed += 1
    # so(3) is simple, so it is not a counterexample
    F = form_from_bracket(so3())
    report.details["so(3)"] = {"support_rank": support_plane(F).rank, "simple": is_simple(F)}
    if not is_simple(F):
        report.failures.append((3, "so(3) form is not simple"))
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report

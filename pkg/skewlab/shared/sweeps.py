"""
Named acceptance suites.

Each suite runs one family of exact checks over the enumerated braces (or
solutions, or family windows) and returns a SweepResult. Keyword arguments
scale the suites down for tests; the defaults are the full-scale runs.
"""

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from skewlab.shared import config
from skewlab.shared.brace import (
    FiniteSkewBrace,
    brace_identity_failures,
    is_two_sided,
    ker_lambda,
    lambda_orbit,
    stab_lambda,
    stab_theta_size,
    theta_orbit,
)
from skewlab.shared.constructions import small_groups_of_order_8
from skewlab.shared.elementset import ElementSet
from skewlab.shared.enumeration import brace_isomorphic, enumerate_braces_on_group, enumerate_groups
from skewlab.shared.errors import SkewLabError
from skewlab.shared.families import FAMILIES, cross_check, fam_window_check
from skewlab.shared.groups import is_subgroup, minimal_generators
from skewlab.shared.solutions import (
    FiniteSolution,
    atoms_from_factors,
    brace_to_solution,
    brute_force_factors,
    decomposition_atoms,
    delta_f,
    derived_solution,
    enumerate_solutions,
    is_decomposition_factor,
    is_solution_morphism,
    minimal_factor,
    random_solution,
    retract,
    retract_tower,
    retract_tower_by_merging,
)
from skewlab.shared.substructures import (
    add_closure,
    b2_coset_generators,
    dietzmann_closure,
    enumerate_subbraces,
    gens_to_group_gens,
    ideal_in_subbrace_two_sided,
    index_add,
    index_mul,
    is_ideal,
    is_left_ideal,
    is_strong_left_ideal,
    is_subbrace,
    left_ideal_cosets_agree,
    mul_closure,
    pstab,
    quotient_embedding_check,
    sli_in_subbrace,
    stab_lambda_set,
    strong_left_ideal_closure,
    subbrace_closure,
    subsets_of_size_at_most,
    verify_bfc_exponent,
    verify_lambda_order_bound,
    verify_lamf_bound,
    verify_oversoc_bound,
    verify_thetafg_bound,
)

logger = logging.getLogger(__name__)

SWEEP_SCHEMA = 'skewlab.sweep/1'
PRIMES = (2, 3, 5, 7)


@dataclass
class SweepResult:
    suite: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> None:
        self.cases += 1
        if not condition:
            self.failures.append(message)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema': SWEEP_SCHEMA,
            'suite': self.suite,
            'passed': self.passed,
            'cases': self.cases,
            'failures': self.failures[:50],
            'failure_count': len(self.failures),
            'details': self.details,
            'seconds': round(self.seconds, 3),
        }


@lru_cache(maxsize=None)
def sweep_braces(max_order: int = 8) -> Tuple[Tuple[str, FiniteSkewBrace], ...]:
    """Every brace class of order ≤ max_order, labelled 'order:index'."""
    braces = []
    for n in range(1, max_order + 1):
        groups = enumerate_groups(n) if n < 8 else [G for _, G in small_groups_of_order_8()]
        count = 0
        for G in groups:
            for B in enumerate_braces_on_group(G, 'lambda'):
                count += 1
                braces.append((f"{n}:{count}", B))
    return tuple(braces)


# =============================================================================
# Brace suites
# =============================================================================

def sweep_axioms(max_order: int = 8) -> SweepResult:
    result = SweepResult('axioms')
    for label, B in sweep_braces(max_order):
        failures = brace_identity_failures(B)
        result.check(not failures, f"{label}: {failures}")
    return result


def sweep_orbit_stabilizer(max_order: int = 8) -> SweepResult:
    result = SweepResult('orbit-stabilizer')
    for label, B in sweep_braces(max_order):
        n = B.order
        for x in range(n):
            result.check(len(lambda_orbit(B, x)) * len(stab_lambda(B, x)) == n, f"{label}: λ at {x}")
            result.check(len(theta_orbit(B, x)) * stab_theta_size(B, x) == n * n, f"{label}: θ at {x}")
    return result


def sweep_index(max_order: int = 8) -> SweepResult:
    result = SweepResult('index')
    for label, B in sweep_braces(max_order):
        for A in enumerate_subbraces(B):
            result.check(index_add(B, A) == index_mul(B, A), f"{label}: index differs on {A.members}")
    return result


def sweep_sli(max_order: int = 8) -> SweepResult:
    result = SweepResult('sli')
    for label, B in sweep_braces(max_order):
        two_sided = is_two_sided(B)
        for A in enumerate_subbraces(B):
            L = sli_in_subbrace(B, A)
            result.check(is_strong_left_ideal(B, L) and L <= A.members, f"{label}: {L} in {A.members}")
            result.check(sli_in_subbrace(B, L) == L, f"{label}: not idempotent at {L}")
            if two_sided:
                I = ideal_in_subbrace_two_sided(B, A)  # noqa: E741
                result.check(is_ideal(B, I) and I <= A.members, f"{label}: ideal {I} in {A.members}")
    return result


def sweep_dietzmann(max_order: int = 8) -> SweepResult:
    result = SweepResult('dietzmann')
    for label, B in sweep_braces(max_order):
        for x in range(B.order):
            X = ElementSet.from_iterable(B.order, [x])
            D = dietzmann_closure(B, X)
            result.check(D == strong_left_ideal_closure(B, X) and is_strong_left_ideal(B, D), f"{label}: {x}")
    return result


def sweep_bounds(max_order: int = 8) -> SweepResult:
    result = SweepResult('bounds')
    for label, B in sweep_braces(max_order):
        gens = ElementSet.from_iterable(B.order, minimal_generators(B.add))
        reports = [
            verify_lamf_bound(B, gens),
            verify_thetafg_bound(B, gens),
            verify_oversoc_bound(B),
            verify_lambda_order_bound(B),
            verify_bfc_exponent(B.add),
            verify_bfc_exponent(B.mul),
        ]
        for r in reports:
            result.check(r.holds, f"{label}: {r.name} value {r.value} bound {r.bound}")
    return result


def sweep_closures(max_order: int = 6) -> SweepResult:
    """Closure laws, the ideal hierarchy and θ-invariance over every subset."""
    result = SweepResult('closures')
    for label, B in sweep_braces(max_order):
        subbraces = [A.members for A in enumerate_subbraces(B)]
        theta = [theta_orbit(B, x) for x in range(B.order)]
        subsets = list(subsets_of_size_at_most(B.order, B.order))
        sli = {S: strong_left_ideal_closure(B, S) for S in subsets}
        sub = {S: subbrace_closure(B, S).members for S in subsets}
        for S in subsets:
            where = f"{label}: {S.to_list()}"
            C = sli[S]
            result.check(S <= C and sli[C] == C and is_strong_left_ideal(B, C), f"{where} strong left ideal closure")
            for x in range(B.order):
                if x not in S:
                    result.check(C <= sli[S | ElementSet.from_iterable(B.order, [x])], f"{where} not monotone at {x}")

            D = sub[S]
            least = ElementSet.full(B.order)
            for A in subbraces:
                if S <= A:
                    least = least & A
            result.check(is_subbrace(B, D) and D == least, f"{where} subbrace closure {D.to_list()}")
            result.check((D == S) == is_subbrace(B, S), f"{where} subbrace fixpoint")

            ideal, strong, left = is_ideal(B, S), is_strong_left_ideal(B, S), is_left_ideal(B, S)
            result.check((not ideal or strong) and (not strong or left) and (not left or is_subbrace(B, S)),
                         f"{where} ideal hierarchy")
            theta_invariant = is_subgroup(B.add, S) and all(theta[x] <= S for x in S)
            result.check(strong == theta_invariant, f"{where} θ-invariance")
            if left:
                result.check(left_ideal_cosets_agree(B, S), f"{where} a∘L differs from a+L")
    return result


def sweep_gens(max_order: int = 8) -> SweepResult:
    """Every brace generating set of size ≤ 2 yields generators of both groups."""
    result = SweepResult('gens')
    for label, B in sweep_braces(max_order):
        for T in subsets_of_size_at_most(B.order, 2):
            if not subbrace_closure(B, T).members.is_full():
                continue
            try:
                U = gens_to_group_gens(B, T)
            except SkewLabError as e:
                result.check(False, f"{label}: T={T.to_list()}: {e}")
                continue
            result.check(
                T <= U and add_closure(B, U).is_full() and mul_closure(B, U).is_full(),
                f"{label}: T={T.to_list()} gives U={U.to_list()}",
            )
    return result


def _add_subgroups(B: FiniteSkewBrace) -> List[ElementSet]:
    # every subgroup of a group of order ≤ 8 other than the whole group is 2-generated
    found = {add_closure(B, T) for T in subsets_of_size_at_most(B.order, 2)}
    found.add(ElementSet.full(B.order))
    return sorted(found, key=lambda H: (len(H), H.bits))


def sweep_quotient(max_order: int = 8) -> SweepResult:
    """Stab_λ(H)/PStab(H) embeds in Aut(H,+) for every additive subgroup H."""
    result = SweepResult('quotient')
    limit = config.aut_limit()
    skipped = 0
    for label, B in sweep_braces(max_order):
        kernel = ker_lambda(B)
        for H in _add_subgroups(B):
            if len(H) > limit:
                skipped += 1
                continue
            report = quotient_embedding_check(B, H)
            result.check(report.holds, f"{label}: H={H.to_list()} quotient {report.value} vs {report.bound}")
            if len(H) == 1:
                result.check(report.value == 1 and stab_lambda_set(B, H).is_full(), f"{label}: trivial H")
            if H.is_full():
                result.check(pstab(B, H) == kernel and report.value == B.order // len(kernel), f"{label}: H = B")
    result.details['skipped'] = skipped
    return result


def sweep_b2(max_order: int = 8, random_transversals: int = 5, seed: int = 0) -> SweepResult:
    result = SweepResult('b2')
    rng = np.random.default_rng(seed)
    for label, B in sweep_braces(max_order):
        result.check(b2_coset_generators(B).holds, f"{label}: least transversal")
        for i in range(random_transversals):
            result.check(b2_coset_generators(B, rng).holds, f"{label}: random transversal {i}")
    return result


def _check_solution_maps(result: SweepResult, label: str, X: FiniteSolution) -> None:
    derived_solution(X)
    Y, projection = retract(X)
    result.check(is_solution_morphism(X, Y, projection), f"{label}: retract projection")
    image = {int(projection[x]) for x in delta_f(X)}
    result.check(image <= set(delta_f(Y)), f"{label}: Δ_f image")
    result.check(retract_tower(X) == retract_tower_by_merging(X), f"{label}: retract tower")


def sweep_solutions(max_order: int = 8) -> SweepResult:
    result = SweepResult('solutions')
    for label, B in sweep_braces(max_order):
        try:
            _check_solution_maps(result, label, brace_to_solution(B))
        except SkewLabError as e:
            result.check(False, f"{label}: {e}")
    return result


def _compare_atoms(result: SweepResult, label: str, X: FiniteSolution) -> None:
    oracle = atoms_from_factors(X.size, brute_force_factors(X))
    atoms = decomposition_atoms(X)
    result.check(atoms == oracle, f"{label}: atoms {atoms.block_id} vs {oracle.block_id}")
    for x in range(X.size):
        factor = minimal_factor(X, x)
        result.check(is_decomposition_factor(X, factor.members), f"{label}: minimal factor of {x}")


def sweep_decomposition(exhaustive_size: int = 4, random_count: int = 200, sizes=(5, 10), seed: int = 0) -> SweepResult:
    result = SweepResult('decomposition')
    for n in range(1, exhaustive_size + 1):
        solutions = enumerate_solutions(n)
        result.details[f"solutions_{n}"] = len(solutions)
        for i, X in enumerate(solutions):
            _compare_atoms(result, f"size {n} #{i}", X)
    rng = np.random.default_rng(seed)
    for i in range(random_count):
        n = int(rng.integers(sizes[0], sizes[1] + 1))
        _compare_atoms(result, f"random {i}", random_solution(n, seed + i))
    return result


# =============================================================================
# Family and enumeration suites
# =============================================================================

FAMILY_CLAIMS = [
    ('cdinf', 'cdinf-soc', 1000),
    ('cdinf', 'cdinf-torsion', 1000),
    ('free2', 'free-orbit', 8),
    ('rosita', 'rosita-lambda-f', 20),
    ('rosita', 'rosita-ann', 20),
]


def sweep_families(scale: float = 1.0) -> SweepResult:
    result = SweepResult('families')
    for family, claim_id, radius in FAMILY_CLAIMS:
        r = max(1, int(radius * scale))
        report = fam_window_check(FAMILIES[family], claim_id, r)
        result.details[claim_id] = report.to_dict()
        result.check(report.holds, f"{claim_id}: {report.counterexamples[:5]}")
    return result


def sweep_closed_form(samples: int = 1000, seed: int = 0) -> SweepResult:
    result = SweepResult('closed-form')
    for name, fam in FAMILIES.items():
        failures = cross_check(fam, samples, seed)
        result.details[name] = failures
        for kind, count in failures.items():
            result.check(count == 0, f"{name}: {count} {kind} disagreements")
    return result


def sweep_enumeration(max_order: int = 8) -> SweepResult:
    result = SweepResult('enumeration')
    for n in range(1, max_order + 1):
        groups = enumerate_groups(n)
        result.details[f"groups_{n}"] = len(groups)
        classes = []
        for G in groups:
            try:
                classes.extend(enumerate_braces_on_group(G, 'both'))
            except SkewLabError as e:
                result.check(False, f"order {n}: {e}")
        result.details[f"braces_{n}"] = len(classes)
        if n in PRIMES:
            result.check(len(classes) == 1, f"order {n}: {len(classes)} classes")
        for i, B in enumerate(classes):
            result.check(brace_isomorphic(B, B), f"order {n}: class {i} not self-isomorphic")
            for C in classes[i + 1:]:
                result.check(not brace_isomorphic(B, C), f"order {n}: duplicate class")
    return result


SUITES: Dict[str, Callable[..., SweepResult]] = {
    'axioms': sweep_axioms,
    'orbit-stabilizer': sweep_orbit_stabilizer,
    'index': sweep_index,
    'sli': sweep_sli,
    'dietzmann': sweep_dietzmann,
    'closures': sweep_closures,
    'gens': sweep_gens,
    'bounds': sweep_bounds,
    'quotient': sweep_quotient,
    'b2': sweep_b2,
    'solutions': sweep_solutions,
    'decomposition': sweep_decomposition,
    'families': sweep_families,
    'enumeration': sweep_enumeration,
    'closed-form': sweep_closed_form,
}


def run_sweep(name: str, **params) -> List[SweepResult]:
    """
    Run one suite, or every suite for 'all'.

    Brace suites accept max_order; other parameters are passed to the suites
    that declare them.
    """
    names = list(SUITES) if name == 'all' else [name]
    results = []
    for suite in names:
        if suite not in SUITES:
            raise KeyError(suite)
        fn = SUITES[suite]
        accepted = fn.__code__.co_varnames[:fn.__code__.co_argcount]
        kwargs = {k: v for k, v in params.items() if k in accepted and v is not None}
        start = time.perf_counter()
        outcome = fn(**kwargs)
        outcome.seconds = time.perf_counter() - start
        logger.info(f"Sweep {suite}: {outcome.cases} cases, {len(outcome.failures)} failures in {outcome.seconds:.1f}s")
        results.append(outcome)
    return results

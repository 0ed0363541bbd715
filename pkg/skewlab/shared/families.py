"""
Four infinite skew braces with closed-form operations.

Purpose: exact arithmetic on infinite examples and windowed verification of their invariant sets
- cdinf: ℤ with n∘m = n+m (n even), n−m (n odd); (ℤ,∘) is the infinite dihedral group
- optriv-dinf: opTriv(D∞), where λ and θ act by conjugation
- rosita: ℤ/3 × ℚ × ℤ with (a,x,k)∘(b,y,l) = (a+(−1)^k b, x+2^k y, k+l)
- free2: free group on a, b with u∘v = u + λ^{ε(u)}(v), λ swapping a and b

Orbits are closures under a finite generating set of λ (or θ) maps, capped;
exceeding the cap yields Overflow. Claims are checked on bounded windows.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterator, List, Sequence, Tuple, Union

import numpy as np

from skewlab.shared.errors import ParseError, UnknownClaim, UnsupportedQuery

logger = logging.getLogger(__name__)

SET_NAMES = ('ker_lambda', 'fix', 'soc', 'ann', 'lambda_f', 'theta_f', 'torsion_mul')


# =============================================================================
# Element types
# =============================================================================

@dataclass(frozen=True, order=True)
class CDInfElem:
    value: int


@dataclass(frozen=True, order=True)
class DInfElem:
    """a^shift · b^flip in D∞ = ⟨a, b | b², (ba)²⟩."""

    shift: int
    flip: int = 0


@dataclass(frozen=True)
class RositaElem:
    a: int
    x: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'a', self.a % 3)
        object.__setattr__(self, 'x', Fraction(self.x))


@dataclass(frozen=True, order=True)
class FreeWord:
    """Freely reduced word; letters are 1 = a, 2 = b and their negatives for inverses."""

    letters: Tuple[int, ...] = ()

    @classmethod
    def reduce(cls, letters: Sequence[int]) -> 'FreeWord':
        out: List[int] = []
        for letter in letters:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        return cls(tuple(out))

    @property
    def exponent_sum(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)


Element = Union[CDInfElem, DInfElem, RositaElem, FreeWord]


@dataclass(frozen=True)
class Overflow:
    """An orbit closure that exceeded its cap."""

    cap: int

    def to_dict(self) -> Dict[str, Any]:
        return {'overflow': True, 'cap': self.cap}


# =============================================================================
# Families
# =============================================================================

class Family:
    """
    Closed-form skew brace on an infinite carrier.

    Subclasses provide the group laws, the closed forms for λ and θ, finite
    generating sets for the λ- and θ-actions, and membership predicates.
    """

    name = ''
    zero: Element

    def add(self, g, h):
        raise NotImplementedError

    def neg(self, g):
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def bar(self, g):
        raise NotImplementedError

    def lam(self, g, x):
        raise NotImplementedError

    def theta(self, a, b, x):
        raise NotImplementedError

    def lambda_generators(self) -> List[Element]:
        raise NotImplementedError

    def theta_generators(self) -> List[Tuple[Element, Element]]:
        raise NotImplementedError

    def predicates(self) -> Dict[str, Callable[[Any], bool]]:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, g) -> str:
        raise NotImplementedError

    def window(self, radius: int) -> Iterator:
        raise NotImplementedError

    def magnitude(self, g) -> int:
        raise NotImplementedError

    def random_element(self, rng: np.random.Generator, radius: int):
        raise NotImplementedError

    def sample_elements(self) -> List[Element]:
        """A finite set of arguments containing generators of both groups."""
        raise NotImplementedError

    # generic definitions, used to cross-check the closed forms
    def minus(self, g, h):
        return self.add(g, self.neg(h))

    def lam_generic(self, g, x):
        return self.add(self.neg(g), self.mul(g, x))

    def theta_generic(self, a, b, x):
        return self.minus(self.add(a, self.lam_generic(b, x)), a)


class CDInfFamily(Family):
    name = 'cdinf'
    zero = CDInfElem(0)

    def add(self, g, h):
        return CDInfElem(g.value + h.value)

    def neg(self, g):
        return CDInfElem(-g.value)

    def mul(self, g, h):
        return CDInfElem(g.value + h.value if g.value % 2 == 0 else g.value - h.value)

    def bar(self, g):
        return CDInfElem(-g.value) if g.value % 2 == 0 else g

    def lam(self, g, x):
        return x if g.value % 2 == 0 else CDInfElem(-x.value)

    def theta(self, a, b, x):
        return self.lam(b, x)

    def lambda_generators(self):
        return [CDInfElem(1)]

    def theta_generators(self):
        return [(self.zero, CDInfElem(1))]

    def predicates(self):
        even = lambda g: g.value % 2 == 0  # noqa: E731
        return {
            'ker_lambda': even,
            'fix': lambda g: g.value == 0,
            'soc': even,
            'ann': lambda g: g.value == 0,
            'lambda_f': lambda g: True,
            'theta_f': lambda g: True,
            'torsion_mul': lambda g: g.value == 0 or g.value % 2 == 1,
        }

    def parse(self, text):
        try:
            return CDInfElem(int(text.strip()))
        except ValueError:
            raise ParseError(None, f"not an integer: {text!r}")

    def format(self, g):
        return str(g.value)

    def window(self, radius):
        return (CDInfElem(v) for v in range(-radius, radius + 1))

    def magnitude(self, g):
        return abs(g.value)

    def random_element(self, rng, radius):
        return CDInfElem(int(rng.integers(-radius, radius + 1)))

    def sample_elements(self):
        return [CDInfElem(v) for v in range(-3, 4)]


class OpTrivDInfFamily(Family):
    """opTriv(D∞): g + h = g·h and g∘h = h·g."""

    name = 'optriv-dinf'
    zero = DInfElem(0, 0)

    @staticmethod
    def dot(g: DInfElem, h: DInfElem) -> DInfElem:
        sign = -1 if g.flip else 1
        return DInfElem(g.shift + sign * h.shift, g.flip ^ h.flip)

    @staticmethod
    def inverse(g: DInfElem) -> DInfElem:
        return g if g.flip else DInfElem(-g.shift, 0)

    def add(self, g, h):
        return self.dot(g, h)

    def neg(self, g):
        return self.inverse(g)

    def mul(self, g, h):
        return self.dot(h, g)

    def bar(self, g):
        return self.inverse(g)

    def conjugate(self, c: DInfElem, x: DInfElem) -> DInfElem:
        """c·x·c⁻¹."""
        return self.dot(self.dot(c, x), self.inverse(c))

    def lam(self, g, x):
        return self.conjugate(self.inverse(g), x)

    def theta(self, a, b, x):
        return self.conjugate(self.dot(a, self.inverse(b)), x)

    def lambda_generators(self):
        return [DInfElem(1, 0), DInfElem(0, 1)]

    def theta_generators(self):
        return [(DInfElem(1, 0), self.zero), (DInfElem(0, 1), self.zero)]

    def predicates(self):
        identity = lambda g: g == self.zero  # noqa: E731
        rotation = lambda g: g.flip == 0  # noqa: E731
        return {
            'ker_lambda': identity,
            'fix': identity,
            'soc': identity,
            'ann': identity,
            'lambda_f': rotation,
            'theta_f': rotation,
            'torsion_mul': lambda g: g.flip == 1 or g.shift == 0,
        }

    _PATTERN = re.compile(r'^(?:a(?:\^(-?\d+))?)?\s*(b)?$')

    def parse(self, text):
        text = text.strip()
        if text == 'e':
            return self.zero
        match = self._PATTERN.match(text)
        if not text or not match:
            raise ParseError(None, f"expected a^i, a^i b, b or e: {text!r}")
        rotation, reflection = match.groups()
        shift = int(rotation) if rotation is not None else (1 if text.startswith('a') else 0)
        return DInfElem(shift, 1 if reflection else 0)

    def format(self, g):
        if g == self.zero:
            return 'e'
        parts = []
        if g.shift:
            parts.append('a' if g.shift == 1 else f"a^{g.shift}")
        if g.flip:
            parts.append('b')
        return ' '.join(parts)

    def window(self, radius):
        return (DInfElem(s, f) for f in (0, 1) for s in range(-radius, radius + 1))

    def magnitude(self, g):
        return abs(g.shift)

    def random_element(self, rng, radius):
        return DInfElem(int(rng.integers(-radius, radius + 1)), int(rng.integers(0, 2)))

    def sample_elements(self):
        return [DInfElem(s, f) for f in (0, 1) for s in (-1, 0, 1, 2)]


class RositaFamily(Family):
    name = 'rosita'
    zero = RositaElem(0, Fraction(0), 0)

    def add(self, g, h):
        return RositaElem(g.a + h.a, g.x + h.x, g.k + h.k)

    def neg(self, g):
        return RositaElem(-g.a, -g.x, -g.k)

    def mul(self, g, h):
        return RositaElem(g.a + (-1) ** (g.k % 2) * h.a, g.x + Fraction(2) ** g.k * h.x, g.k + h.k)

    def bar(self, g):
        # ((−1)^{k+1} a, −2^{−k} x, −k)
        return RositaElem((-1) ** ((g.k + 1) % 2) * g.a, -g.x / Fraction(2) ** g.k, -g.k)

    def lam(self, g, x):
        return RositaElem((-1) ** (g.k % 2) * x.a, Fraction(2) ** g.k * x.x, x.k)

    def theta(self, a, b, x):
        return self.lam(b, x)

    def lambda_generators(self):
        return [RositaElem(0, Fraction(0), 1), RositaElem(0, Fraction(0), -1)]

    def theta_generators(self):
        return [(self.zero, g) for g in self.lambda_generators()]

    def predicates(self):
        return {
            'ker_lambda': lambda g: g.k == 0,
            'fix': lambda g: g.a == 0 and g.x == 0,
            'soc': lambda g: g.k == 0,
            'ann': lambda g: g == self.zero,
            'lambda_f': lambda g: g.x == 0,
            'theta_f': lambda g: g.x == 0,
            'torsion_mul': lambda g: g.x == 0 and g.k == 0,
        }

    _PATTERN = re.compile(r'^\(\s*(-?\d+)\s*,\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+)\s*\)$')

    def parse(self, text):
        match = self._PATTERN.match(text.strip())
        if not match:
            raise ParseError(None, f"expected (a,x,k) with x an integer or p/q: {text!r}")
        a, x, k = match.groups()
        return RositaElem(int(a), Fraction(x), int(k))

    def format(self, g):
        return f"({g.a},{g.x},{g.k})"

    @staticmethod
    def rationals(radius: int) -> List[Fraction]:
        values = {Fraction(p, q) for p in range(-radius, radius + 1) for q in range(1, radius + 1)}
        return sorted(values)

    def window(self, radius):
        xs = self.rationals(radius)
        return (RositaElem(a, x, k) for a in range(3) for x in xs for k in range(-radius, radius + 1))

    def magnitude(self, g):
        return max(abs(g.x.numerator), g.x.denominator, abs(g.k))

    def random_element(self, rng, radius):
        return RositaElem(
            int(rng.integers(0, 3)),
            Fraction(int(rng.integers(-radius, radius + 1)), int(rng.integers(1, radius + 1))),
            int(rng.integers(-radius, radius + 1)),
        )

    def sample_elements(self):
        return [
            RositaElem(a, Fraction(x), k)
            for a, x, k in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1), (2, Fraction(1, 2), 1))
        ]


class FreeFamily(Family):
    name = 'free2'
    zero = FreeWord()
    _LETTERS = {'a': 1, 'A': -1, 'b': 2, 'B': -2}
    _NAMES = {v: k for k, v in _LETTERS.items()}

    @staticmethod
    def swap(w: FreeWord) -> FreeWord:
        return FreeWord(tuple((3 - abs(c)) * (1 if c > 0 else -1) for c in w.letters))

    def add(self, g, h):
        return FreeWord.reduce(g.letters + h.letters)

    def neg(self, g):
        return FreeWord(tuple(-c for c in reversed(g.letters)))

    def mul(self, g, h):
        return self.add(g, self.lam(g, h))

    def bar(self, g):
        return self.swap(self.neg(g)) if g.exponent_sum % 2 else self.neg(g)

    def lam(self, g, x):
        return self.swap(x) if g.exponent_sum % 2 else x

    def theta(self, a, b, x):
        return self.minus(self.add(a, self.lam(b, x)), a)

    def lambda_generators(self):
        return [FreeWord((1,))]

    def theta_generators(self):
        a, b = FreeWord((1,)), FreeWord((2,))
        return [(self.zero, a), (a, self.zero), (b, self.zero)]

    def predicates(self):
        identity = lambda g: g == self.zero  # noqa: E731
        return {
            'ker_lambda': lambda g: g.exponent_sum % 2 == 0,
            'fix': identity,
            'soc': identity,
            'ann': identity,
            'lambda_f': lambda g: True,
            'theta_f': identity,
        }

    def parse(self, text):
        text = text.strip()
        if text in ('', 'e'):
            return self.zero
        try:
            return FreeWord.reduce([self._LETTERS[c] for c in text])
        except KeyError as e:
            raise ParseError(None, f"unexpected letter {e.args[0]!r}; use a, b and A, B for inverses")

    def format(self, g):
        return ''.join(self._NAMES[c] for c in g.letters) or 'e'

    def window(self, radius):
        yield self.zero
        frontier = [self.zero]
        for _ in range(radius):
            grown = []
            for w in frontier:
                for c in (1, -1, 2, -2):
                    if not w.letters or w.letters[-1] != -c:
                        grown.append(FreeWord(w.letters + (c,)))
            yield from grown
            frontier = grown

    def magnitude(self, g):
        return len(g)

    def random_element(self, rng, radius):
        length = int(rng.integers(0, radius + 1))
        return FreeWord.reduce([int(c) for c in rng.choice([1, -1, 2, -2], size=length)])

    def sample_elements(self):
        return [FreeWord((1,)), FreeWord((2,)), FreeWord((1, 2)), FreeWord((-2, 1, 1))]


FAMILIES: Dict[str, Family] = {
    f.name: f for f in (CDInfFamily(), OpTrivDInfFamily(), RositaFamily(), FreeFamily())
}


def get_family(name: str) -> Family:
    if name not in FAMILIES:
        raise UnsupportedQuery(name, 'family')
    return FAMILIES[name]


# =============================================================================
# Operations
# =============================================================================

def fam_add(fam: Family, g, h):
    return fam.add(g, h)


def fam_neg(fam: Family, g):
    return fam.neg(g)


def fam_mul(fam: Family, g, h):
    return fam.mul(g, h)


def fam_bar(fam: Family, g):
    return fam.bar(g)


def fam_lambda(fam: Family, g, x):
    return fam.lam(g, x)


def fam_theta(fam: Family, a, b, x):
    return fam.theta(a, b, x)


def _closure(start: Hashable, maps: Sequence[Callable], cap: int) -> Union[FrozenSet, Overflow]:
    # forward closure under bijections: finite iff the orbit is finite, and then equal to it
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for f in maps:
            w = f(v)
            if w not in seen:
                seen.add(w)
                if len(seen) > cap:
                    return Overflow(cap)
                queue.append(w)
    return frozenset(seen)


def fam_lambda_orbit(fam: Family, x, cap: int) -> Union[FrozenSet, Overflow]:
    maps = [lambda v, g=g: fam.lam(g, v) for g in fam.lambda_generators()]
    return _closure(x, maps, cap)


def fam_theta_orbit(fam: Family, x, cap: int) -> Union[FrozenSet, Overflow]:
    maps = [lambda v, a=a, b=b: fam.theta(a, b, v) for a, b in fam.theta_generators()]
    return _closure(x, maps, cap)


def fam_membership(fam: Family, set_name: str, x) -> bool:
    predicate = fam.predicates().get(set_name)
    if predicate is None:
        raise UnsupportedQuery(fam.name, set_name)
    return bool(predicate(x))


def orbit_to_dict(fam: Family, orbit: Union[FrozenSet, Overflow]) -> Dict[str, Any]:
    if isinstance(orbit, Overflow):
        return {'schema': 'skewlab.orbit/1', 'family': fam.name, **orbit.to_dict()}
    members = sorted(fam.format(g) for g in orbit)
    return {'schema': 'skewlab.orbit/1', 'family': fam.name, 'overflow': False, 'size': len(members), 'members': members}


# =============================================================================
# Closed-form cross-checks
# =============================================================================

def cross_check(fam: Family, samples: int, seed: int, radius: int = 50) -> Dict[str, int]:
    """
    Compare closed forms with the defining formulas on random elements.

    Returns failure counts for λ, θ, skew distributivity, the λ homomorphism
    property and g∘bar(g) = 0.
    """
    rng = np.random.default_rng(seed)
    failures = {'lambda': 0, 'theta': 0, 'distributivity': 0, 'homomorphism': 0, 'inverse': 0}
    for _ in range(samples):
        g, h, x = (fam.random_element(rng, radius) for _ in range(3))
        if fam.lam(g, x) != fam.lam_generic(g, x):
            failures['lambda'] += 1
        if fam.theta(g, h, x) != fam.theta_generic(g, h, x):
            failures['theta'] += 1
        lhs = fam.mul(g, fam.add(h, x))
        rhs = fam.add(fam.minus(fam.mul(g, h), g), fam.mul(g, x))
        if lhs != rhs:
            failures['distributivity'] += 1
        if fam.lam(fam.mul(g, h), x) != fam.lam(g, fam.lam(h, x)):
            failures['homomorphism'] += 1
        if fam.mul(g, fam.bar(g)) != fam.zero or fam.mul(fam.bar(g), g) != fam.zero:
            failures['inverse'] += 1
    return failures


# =============================================================================
# Windowed claims
# =============================================================================

@dataclass
class ClaimReport:
    claim_id: str
    family: str
    radius: int
    checked: int = 0
    sampled: int = 0
    counterexamples: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> Dict[str, Any]:
        return {
            'claim_id': self.claim_id,
            'family': self.family,
            'radius': self.radius,
            'checked': self.checked,
            'sampled': self.sampled,
            'counterexamples': self.counterexamples[:20],
            'counterexample_count': len(self.counterexamples),
            'holds': self.holds,
        }


@dataclass(frozen=True)
class Claim:
    claim_id: str
    family: str
    description: str
    check: Callable[['Family', 'ClaimReport', int], None]


def _acts_trivially(fam: Family, g) -> bool:
    return all(fam.lam_generic(g, p) == p for p in fam.sample_elements())


def _central(op: Callable, g, sample_elements) -> bool:
    return all(op(g, p) == op(p, g) for p in sample_elements)


def _finite_mul_order(fam: Family, g, bound: int) -> bool:
    """True if g has finite ∘-order, False once powers leave the bound."""
    power = g
    while power != fam.zero:
        power = fam.mul(power, g)
        if fam.magnitude(power) > bound:
            return False
    return True


def _compare(fam: Family, report: ClaimReport, g, defined: bool, closed: bool) -> None:
    report.checked += 1
    if defined != closed:
        report.counterexamples.append(fam.format(g))


def _check_cdinf_soc(fam, report, radius):
    for g in fam.window(radius):
        defined = _acts_trivially(fam, g) and _central(fam.add, g, fam.sample_elements())
        _compare(fam, report, g, defined, fam_membership(fam, 'soc', g))


def _check_cdinf_torsion(fam, report, radius):
    for g in fam.window(radius):
        _compare(fam, report, g, _finite_mul_order(fam, g, 4 * radius), fam_membership(fam, 'torsion_mul', g))


def _check_ann(set_name):
    def check(fam, report, radius):
        sample_elements = fam.sample_elements()
        for g in fam.window(radius):
            defined = _acts_trivially(fam, g) and _central(fam.add, g, sample_elements) and _central(fam.mul, g, sample_elements)
            _compare(fam, report, g, defined, fam_membership(fam, set_name, g))
    return check


def _check_rosita_soc(fam, report, radius):
    for g in fam.window(radius):
        defined = _acts_trivially(fam, g) and _central(fam.add, g, fam.sample_elements())
        _compare(fam, report, g, defined, fam_membership(fam, 'soc', g))


def _check_free_orbit(fam, report, radius):
    for g in fam.window(radius):
        report.checked += 1
        orbit = fam_lambda_orbit(fam, g, 2)
        if isinstance(orbit, Overflow) or not fam_membership(fam, 'lambda_f', g):
            report.counterexamples.append(fam.format(g))


def _check_free_kernel(fam, report, radius):
    for g in fam.window(radius):
        _compare(fam, report, g, _acts_trivially(fam, g), fam_membership(fam, 'ker_lambda', g))


def _check_finite_lambda_orbits(screen_cap: int, cap: int, samples: int):
    """
    Members must have finite orbits; every non-member must overflow a small
    screening cap; a deterministic sample of non-members must overflow both
    `cap` and `2·cap`.
    """
    def check(fam, report, radius):
        outsiders = []
        for g in fam.window(radius):
            report.checked += 1
            member = fam_membership(fam, 'lambda_f', g)
            orbit = fam_lambda_orbit(fam, g, cap if member else screen_cap)
            if member == isinstance(orbit, Overflow):
                report.counterexamples.append(fam.format(g))
            elif not member:
                outsiders.append(g)
        stride = max(1, len(outsiders) // max(samples, 1))
        for g in outsiders[::stride][:samples]:
            report.sampled += 1
            for c in (cap, 2 * cap):
                if not isinstance(fam_lambda_orbit(fam, g, c), Overflow):
                    report.counterexamples.append(fam.format(g))
                    break
    return check


CLAIM_SETTINGS = {'orbit_cap': 10_000, 'overflow_samples': 8}

_CLAIMS: List[Claim] = [
    Claim('cdinf-soc', 'cdinf', 'Soc(CD∞) = ker λ = 2ℤ', _check_cdinf_soc),
    Claim('cdinf-torsion', 'cdinf', 'torsion of (ℤ,∘) = {0} ∪ (2ℤ+1)', _check_cdinf_torsion),
    Claim('cdinf-ann', 'cdinf', 'Ann(CD∞) = Z(ℤ,∘) ∩ Soc = {0}', _check_ann('ann')),
    Claim('free-orbit', 'free2', 'every λ-orbit of the free family has at most 2 elements', _check_free_orbit),
    Claim('free-kerlambda', 'free2', 'ker λ = words of even exponent sum', _check_free_kernel),
    Claim(
        'rosita-lambda-f', 'rosita', 'λ_f = ℤ/3 × {0} × ℤ',
        lambda fam, report, radius: _check_finite_lambda_orbits(
            16, CLAIM_SETTINGS['orbit_cap'], CLAIM_SETTINGS['overflow_samples'])(fam, report, radius),
    ),
    Claim('rosita-ann', 'rosita', 'Ann = Z(B,∘) ∩ Soc = {(0,0,0)}', _check_ann('ann')),
    Claim('rosita-soc', 'rosita', 'Soc = ker λ = ℤ/3 × ℚ × {0}', _check_rosita_soc),
    Claim(
        'optriv-dinf-fc', 'optriv-dinf', 'λ_f(opTriv(D∞)) = FC(D∞) = rotations',
        lambda fam, report, radius: _check_finite_lambda_orbits(64, 256, 16)(fam, report, radius),
    ),
]
CLAIMS: Dict[str, Claim] = {c.claim_id: c for c in _CLAIMS}


def list_claims() -> List[Dict[str, str]]:
    return [{'claim_id': c.claim_id, 'family': c.family, 'description': c.description} for c in _CLAIMS]


def fam_window_check(fam: Family, claim_id: str, radius: int) -> ClaimReport:
    """
    Verify a registered claim on every family element within the window.

    Raises:
        UnknownClaim: the id is not registered for this family
    """
    claim = CLAIMS.get(claim_id)
    if claim is None or claim.family != fam.name:
        raise UnknownClaim(claim_id)
    report = ClaimReport(claim_id=claim_id, family=fam.name, radius=radius)
    claim.check(fam, report, radius)
    logger.info(
        f"Claim {claim_id} at radius {radius}: {report.checked} checked, "
        f"{len(report.counterexamples)} counterexamples"
    )
    return report

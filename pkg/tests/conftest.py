import random
import sys
from fractions import Fraction
from pathlib import Path
from types import SimpleNamespace

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from marked_bases import (
    FreeModuleLayout,
    MarkedElement,
    MarkedSet,
    ModuleElement,
    ModuleTerm,
    PommaretBasis,
)

LAY3 = FreeModuleLayout(2)  # x0, x1, x2


def T(exp, comp=1):
    return ModuleTerm(tuple(exp), comp)


def E(layout, terms):
    return ModuleElement(layout, {t: Fraction(c) for t, c in terms.items()})


def build_twisted_example():
    """P(J) = {x2^3, x2^2x1, x2x1, x1x0, x1^2} with the one non-trivial tail
    x1x0 + x2^2; paper-order numbering g1..g5."""
    heads = [T((0, 0, 3)), T((0, 1, 2)), T((0, 1, 1)), T((1, 1, 0)), T((0, 2, 0))]
    basis = PommaretBasis(LAY3, frozenset(heads), certified=True)
    bodies = [
        E(LAY3, {heads[0]: 1}),
        E(LAY3, {heads[1]: 1}),
        E(LAY3, {heads[2]: 1}),
        E(LAY3, {heads[3]: 1, T((0, 0, 2)): 1}),
        E(LAY3, {heads[4]: 1}),
    ]
    marked = MarkedSet(basis, [MarkedElement(b, h) for b, h in zip(bodies, heads)])
    return SimpleNamespace(layout=LAY3, heads=heads, basis=basis, marked=marked)


def build_non_groebner_example():
    """P(J) = {x2x1, x2^2x1, x2^3, x1^3, x2^2x0, x1^2x0}; the first element
    x2x1 - x2^2 - x1^2 is not a Groebner leading form for any term order."""
    heads = [
        T((0, 1, 1)),
        T((0, 1, 2)),
        T((0, 0, 3)),
        T((0, 3, 0)),
        T((1, 0, 2)),
        T((1, 2, 0)),
    ]
    basis = PommaretBasis(LAY3, frozenset(heads), certified=True)
    bodies = [E(LAY3, {heads[0]: 1, T((0, 0, 2)): -1, T((0, 2, 0)): -1})]
    bodies += [E(LAY3, {h: 1}) for h in heads[1:]]
    marked = MarkedSet(basis, [MarkedElement(b, h) for b, h in zip(bodies, heads)])
    return SimpleNamespace(layout=LAY3, heads=heads, basis=basis, marked=marked)


TWISTED_DOC = """\
ring 3
ideal J = x2^3, x2^2*x1, x2*x1, x1*x0, x1^2
marked G = [x2^3], [x2^2*x1], [x2*x1], [x1*x0] + x2^2, [x1^2]
"""

NON_GROEBNER_DOC = """\
ring 3
ideal J = x2*x1, x2^2*x1, x2^3, x1^3, x2^2*x0, x1^2*x0
marked G = [x2*x1] - x2^2 - x1^2, [x2^2*x1], [x2^3], [x1^3], [x2^2*x0], [x1^2*x0]
"""


@pytest.fixture
def twisted():
    return build_twisted_example()


@pytest.fixture
def non_groebner():
    return build_non_groebner_example()


@pytest.fixture
def rng():
    return random.Random(20260809)

import random

import pytest

from marked_bases import (
    FreeModuleLayout,
    MonomialModule,
    NotQuasiStable,
    PommaretBasis,
    StabilityClass,
    basis_invariants,
    colon_saturation_basis,
    complement_rank,
    complement_terms,
    cone_divisor,
    hilbert_function,
    is_pommaret_basis,
    multiplicative_variables,
    pommaret_completion,
    quasi_stability_witness,
    rho,
    saturate,
    stability_class,
    truncate_basis,
)
from marked_bases.monom import minimalize, module_terms_of_degree
from marked_bases.randgen import random_quasi_stable_basis, random_quasi_stable_module
from conftest import LAY3, T
from oracles import brute_hilbert, ideal_slice

LAY2 = FreeModuleLayout(1)


class TestMultiplicativeVariables:
    def test_mixed_term(self):
        assert multiplicative_variables(T((1, 1, 0)), 2) == {0}

    def test_top_power(self):
        assert multiplicative_variables(T((0, 0, 3)), 2) == {0, 1, 2}

    def test_smallest_variable(self):
        assert multiplicative_variables(T((1, 0, 0)), 2) == {0}

    def test_constant_has_all(self):
        assert multiplicative_variables(T((0, 0, 0)), 2) == {0, 1, 2}


class TestConeDivisor:
    def test_multiplicative_multiple(self, twisted):
        assert cone_divisor(twisted.basis, T((0, 1, 3))) == T((0, 0, 3))

    def test_outside_module(self, twisted):
        assert cone_divisor(twisted.basis, T((2, 0, 0))) is None

    def test_deep_in_cone(self, twisted):
        assert cone_divisor(twisted.basis, T((5, 1, 0))) == T((1, 1, 0))

    def test_unique_divisor_on_slices(self, twisted):
        for s in range(2, 7):
            for t in module_terms_of_degree(twisted.basis, s):
                hits = [
                    g
                    for g in twisted.basis.terms
                    if g.comp == t.comp
                    and cone_divisor(
                        PommaretBasis(LAY3, frozenset({g}), certified=True), t
                    )
                ]
                assert len(hits) == 1


class TestIsPommaretBasis:
    def test_twisted_heads(self, twisted):
        assert is_pommaret_basis(twisted.heads, LAY3)

    def test_single_mixed_term_fails(self):
        assert not is_pommaret_basis([T((1, 1))], LAY2)

    def test_irrelevant_ideal(self):
        assert is_pommaret_basis([T((1, 0, 0)), T((0, 1, 0)), T((0, 0, 1))], LAY3)


class TestCompletion:
    def test_twisted_minimal_generators(self, twisted):
        module = MonomialModule(
            LAY3, [T((0, 1, 1)), T((1, 1, 0)), T((0, 2, 0)), T((0, 0, 3))]
        )
        basis = pommaret_completion(module)
        assert basis.terms == frozenset(twisted.heads)
        assert basis.certified

    def test_not_quasi_stable(self):
        with pytest.raises(NotQuasiStable) as err:
            pommaret_completion(MonomialModule(LAY2, [T((1, 1))]))
        assert err.value.witness == T((1, 1))
        assert err.value.variable == 1

    def test_principal_top_variable(self):
        basis = pommaret_completion(MonomialModule(LAY3, [T((0, 0, 1))]))
        assert basis.terms == frozenset({T((0, 0, 1))})

    def test_generates_same_module(self, rng):
        for _ in range(10):
            basis = random_quasi_stable_basis(rng, 2, max_deg=3)
            gens = minimalize(e for e, _ in basis.terms)
            reg = basis.max_degree()
            for s in range(reg + 3):
                assert {t.exp for t in module_terms_of_degree(basis, s)} == ideal_slice(
                    gens, 3, s
                )

    def test_completion_output_is_basis(self, rng):
        for _ in range(10):
            basis = random_quasi_stable_basis(rng, 3, max_deg=3)
            assert is_pommaret_basis(basis.terms, basis.layout)


class TestStabilityClass:
    def test_not_quasi_stable(self):
        module = MonomialModule(LAY2, [T((1, 1))])
        assert stability_class(module) == StabilityClass.NOT_QUASI_STABLE
        assert quasi_stability_witness(module) is not None

    def test_twisted_is_quasi_stable_not_stable(self):
        module = MonomialModule(
            LAY3, [T((0, 1, 1)), T((1, 1, 0)), T((0, 2, 0)), T((0, 0, 3))]
        )
        assert stability_class(module) == StabilityClass.QUASI_STABLE

    def test_irrelevant_ideal_stable(self):
        module = MonomialModule(LAY3, [T((1, 0, 0)), T((0, 1, 0)), T((0, 0, 1))])
        assert stability_class(module) == StabilityClass.STABLE

    def test_stable_iff_completion_adds_nothing(self, rng):
        for _ in range(8):
            basis = random_quasi_stable_basis(rng, 2, max_deg=3)
            gens = minimalize(e for e, _ in basis.terms)
            module = MonomialModule(LAY3, [T(g) for g in gens])
            cls = stability_class(module)
            added = basis.terms != frozenset(T(g) for g in gens)
            assert (cls == StabilityClass.STABLE) == (not added)


class TestInvariants:
    def test_twisted(self, twisted):
        inv = basis_invariants(twisted.basis)
        assert inv.regularity == 3
        assert inv.satiety == 2
        assert inv.projective_dimension == 2
        assert inv.D == 0
        assert not inv.saturated

    def test_principal_power(self):
        basis = pommaret_completion(MonomialModule(LAY3, [T((0, 0, 4))]))
        inv = basis_invariants(basis)
        assert inv.regularity == 4
        assert inv.projective_dimension == 0
        assert inv.satiety == 0 and inv.saturated

    def test_non_groebner_regularity(self, non_groebner):
        assert basis_invariants(non_groebner.basis).regularity == 3


class TestColonSaturation:
    def test_twisted_saturation(self, twisted):
        weak = colon_saturation_basis(twisted.basis, 0)
        assert weak == frozenset(
            {(0, 1, 0), (0, 0, 3), (0, 1, 2), (0, 1, 1), (0, 2, 0)}
        )
        assert minimalize(weak) == frozenset({(0, 1, 0), (0, 0, 3)})
        sat = saturate(twisted.basis)
        assert minimalize(e for e, _ in sat.terms) == frozenset(
            {(0, 1, 0), (0, 0, 3)}
        )

    def test_saturated_ideal_unchanged(self):
        basis = pommaret_completion(MonomialModule(LAY3, [T((0, 1, 0)), T((0, 0, 3))]))
        weak = colon_saturation_basis(basis, 0)
        assert weak == frozenset(e for e, _ in basis.terms)

    def test_full_colon_gives_unit(self):
        basis = pommaret_completion(MonomialModule(LAY3, [T((0, 0, 1))]))
        assert colon_saturation_basis(basis, 2) == frozenset({(0, 0, 0)})


class TestTruncate:
    def test_principal_line(self):
        basis = pommaret_completion(MonomialModule(LAY2, [T((0, 1))]))
        cut = truncate_basis(basis, 2)
        assert cut.terms == frozenset({T((0, 2)), T((1, 1))})

    def test_degree_zero_keeps_everything(self, twisted):
        assert truncate_basis(twisted.basis, 0).terms == twisted.basis.terms

    def test_twisted_at_regularity(self, twisted):
        cut = truncate_basis(twisted.basis, 3)
        expected = {t for t in module_terms_of_degree(twisted.basis, 3)}
        assert cut.terms == frozenset(expected)
        assert len(cut.terms) == 7

    def test_truncation_stays_certified(self, rng):
        for _ in range(8):
            basis = random_quasi_stable_basis(rng, 2, max_deg=3)
            m = rng.randint(0, basis.max_degree() + 1)
            cut = truncate_basis(basis, m)
            assert is_pommaret_basis(cut.terms, basis.layout)
            reg = basis.max_degree()
            if m >= reg:
                # at or past the regularity the basis is the full slice
                assert cut.terms == frozenset(module_terms_of_degree(basis, m))
            for s in range(m, reg + 2):
                assert {t for t in module_terms_of_degree(cut, s)} == {
                    t for t in module_terms_of_degree(basis, s)
                }


class TestRho:
    def test_twisted_values(self, twisted):
        assert rho(twisted.basis, 1) == 3  # x2^2*x1
        assert rho(twisted.basis, 2) == 3  # x2^3

    def test_missing_variable(self):
        basis = pommaret_completion(MonomialModule(LAY3, [T((0, 0, 4))]))
        assert rho(basis, 1) == 0


class TestHilbert:
    def test_twisted_degree_three(self, twisted):
        assert hilbert_function(twisted.basis, 3) == 7

    def test_below_generators(self, twisted):
        assert hilbert_function(twisted.basis, 1) == 0

    def test_irrelevant_ideal(self):
        basis = pommaret_completion(
            MonomialModule(LAY3, [T((1, 0, 0)), T((0, 1, 0)), T((0, 0, 1))])
        )
        assert hilbert_function(basis, 1) == 3

    def test_matches_enumeration(self, rng):
        for _ in range(8):
            basis = random_quasi_stable_basis(rng, 2, max_deg=4)
            for s in range(basis.max_degree() + 4):
                assert hilbert_function(basis, s) == brute_hilbert(
                    basis.terms, basis.layout, s
                )
                assert complement_rank(basis, s) == len(complement_terms(basis, s))

    def test_module_case(self, rng):
        basis = random_quasi_stable_module(rng, 2, rank=2, max_deg=2)
        for s in range(basis.max_degree() + 3):
            assert hilbert_function(basis, s) == brute_hilbert(
                basis.terms, basis.layout, s
            )


def test_unit_ideal_is_its_own_basis():
    basis = pommaret_completion(MonomialModule(LAY2, [T((0, 0))]))
    assert basis.terms == frozenset({T((0, 0))})
    assert hilbert_function(basis, 3) == 4  # the whole degree-3 slice
    assert complement_terms(basis, 3) == []


def test_disjoint_cover_on_random_inputs(rng):
    for _ in range(6):
        basis = random_quasi_stable_basis(rng, 2, max_deg=3)
        reg = basis.max_degree()
        for s in range(reg + 4):
            for t in module_terms_of_degree(basis, s):
                assert cone_divisor(basis, t) is not None
            for t in complement_terms(basis, s):
                assert cone_divisor(basis, t) is None

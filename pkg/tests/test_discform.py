"""Discriminant groups, exact Gauss sums and form equivalence."""

import cmath
import math
import random
from fractions import Fraction

import pytest

from og10lat import (
    Degenerate,
    OddLattice,
    discriminant_group,
    forms_equivalent,
    genus_tag,
    make_lattice,
    milgram_residue,
    prime_residues,
    standard,
)
from og10lat.discform import gauss_sum_residue


def rand_even_lattice(rng, max_rank=4, spread=3):
    while True:
        n = rng.randint(1, max_rank)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randint(-spread, spread)
            for j in range(i + 1, n):
                g[i][j] = g[j][i] = rng.randint(-spread, spread)
        try:
            return make_lattice(g)
        except Degenerate:
            continue


FIXTURES = [
    "U", "U(2)", "U(3)", "A2", "A2(-1)", "A3", "D4", "D4(-1)", "E6", "E6(-2)",
    "E8(-1)", "E8(-2)", "[2]", "[-2]", "[6]", "[-6]", "[4]", "[-12]",
    "U^3 + E8(-1)^2 + A2(-1)", "U^3 + E8(-1)^2 + [-2]", "U^4 + E8(-1)^2",
    "U^3 + E8(-2) + A2(-1)", "A2 + [-42]", "A2 + [-4]",
]


class TestDiscriminantGroup:
    def test_unimodular_trivial(self):
        form = discriminant_group(standard("U"))
        assert form.invariant_factors == ()
        assert form.order == 1

    def test_og10_group(self):
        form = discriminant_group(standard("U^3 + E8(-1)^2 + A2(-1)"))
        assert form.invariant_factors == (3,)
        # -2/3 mod 2Z, canonically 4/3
        assert form.q((1,)) == Fraction(4, 3)

    def test_e8_minus2(self):
        form = discriminant_group(standard("E8(-2)"))
        assert form.invariant_factors == (2,) * 8

    def test_odd_rejected(self):
        with pytest.raises(OddLattice):
            discriminant_group(make_lattice(((1,),)))

    def test_order_equals_det_random(self):
        rng = random.Random(71)
        for _ in range(200):
            lat = rand_even_lattice(rng)
            assert discriminant_group(lat).order == abs(lat.det)

    def test_lifts_are_dual_vectors(self):
        rng = random.Random(73)
        for _ in range(50):
            lat = rand_even_lattice(rng)
            form = discriminant_group(lat)
            for gen in form.generators:
                for row in lat.gram:
                    val = sum(Fraction(a) * b for a, b in zip(row, gen))
                    assert val.denominator == 1

    def test_twist_order_scaling(self):
        # disc(L(n)) has order |n^rank * det L| for unimodular L
        for expr, n in [("U", 2), ("U", 5), ("E8(-1)", 2), ("E8(-1)", 3)]:
            lat = standard(expr)
            twisted = standard(f"{expr[:len(expr)]}({n})" if "(" not in expr
                               else expr.replace("(-1)", f"(-{n})"))
            form = discriminant_group(twisted)
            assert form.order == abs(n ** lat.rank * lat.det)

    def test_direct_sum_additive(self):
        a = discriminant_group(standard("A2(-1)"))
        b = discriminant_group(standard("U(2)"))
        both = discriminant_group(standard("A2(-1) + U(2)"))
        combined = a.direct_sum(b)
        assert forms_equivalent(both, combined).equivalent


def float_gauss_oracle(form):
    """Numerical check of the Gauss sum identity, independent of the
    cyclotomic path."""
    total = 0j
    for c in form.elements():
        total += cmath.exp(1j * math.pi * float(form.q(c)))
    best = min(range(8), key=lambda s: abs(
        total - math.sqrt(form.order) * cmath.exp(2j * math.pi * s / 8)))
    err = abs(total - math.sqrt(form.order)
              * cmath.exp(2j * math.pi * best / 8))
    assert err < 1e-6
    return best


class TestMilgram:
    def test_examples(self):
        assert milgram_residue(discriminant_group(standard("U"))) == 0
        assert milgram_residue(discriminant_group(standard("A2(-1)"))) == 6
        assert milgram_residue(discriminant_group(standard("[2]"))) == 1

    def test_fixture_set_matches_signature(self):
        for expr in FIXTURES:
            lat = standard(expr)
            sig = lat.signature
            res = milgram_residue(discriminant_group(lat))
            assert (sig.positive - sig.negative - res) % 8 == 0, expr

    def test_random_lattices_match_signature(self):
        rng = random.Random(79)
        done = 0
        while done < 60:
            lat = rand_even_lattice(rng)
            if abs(lat.det) > 200:
                continue
            done += 1
            sig = lat.signature
            res = milgram_residue(discriminant_group(lat))
            assert (sig.positive - sig.negative - res) % 8 == 0

    def test_exact_path_matches_float_oracle(self):
        rng = random.Random(83)
        done = 0
        while done < 40:
            lat = rand_even_lattice(rng, max_rank=3)
            if abs(lat.det) > 80:
                continue
            done += 1
            form = discriminant_group(lat)
            assert milgram_residue(form) == float_gauss_oracle(form)

    def test_prime_residues_sum(self):
        for expr in ("A2 + [-42]", "U(3) + [2]", "E6(-2)", "[-12]"):
            form = discriminant_group(standard(expr))
            total = sum(prime_residues(form).values()) % 8
            assert total == milgram_residue(form)

    def test_gauss_sum_residue_public(self):
        # Z/2 with q = 1/2 (from [2]): 1 + i = sqrt(2) zeta_8
        assert gauss_sum_residue([Fraction(0), Fraction(1, 2)], 2) == 1


class TestGenusTag:
    def test_permutation_invariant(self):
        t1 = genus_tag(standard("U^3 + E8(-1)^2 + A2(-1)"))
        t2 = genus_tag(standard("A2(-1) + E8(-1) + U^2 + E8(-1) + U"))
        assert t1 == t2

    def test_u2_vs_split_squares(self):
        u2 = genus_tag(standard("U(2)"))
        pm = genus_tag(standard("[2] + [-2]"))
        assert u2 != pm
        assert u2.invariant_factors == pm.invariant_factors
        assert u2.q_values != pm.q_values
        assert u2.q_values == (0, 0, 0, 1)
        assert pm.q_values == (0, 0, Fraction(1, 2), Fraction(3, 2))

    def test_odd_rejected(self):
        with pytest.raises(OddLattice):
            genus_tag(make_lattice(((1,),)))

    def test_scope_label(self):
        assert genus_tag(standard("U^3 + E8(-1)^2 + A2(-1)")).assumed_sufficient
        assert not genus_tag(standard("E8(-2)")).assumed_sufficient


class TestFormsEquivalent:
    def test_exact_positive(self):
        a = discriminant_group(standard("A2(-1)"))
        b = discriminant_group(standard("A2(-1)"))
        res = forms_equivalent(a, b)
        assert res.equivalent and res.level == "exact"

    def test_opposite_signs_differ(self):
        a = discriminant_group(standard("[2]"))
        b = discriminant_group(standard("[-2]"))
        res = forms_equivalent(a, b)
        assert not res.equivalent and res.level == "exact"

    def test_large_group_invariant_level(self):
        form = discriminant_group(standard("E8(-2)"))
        res = forms_equivalent(form, form)
        assert res.equivalent and res.level == "invariant-level"

    def test_exact_search_distinguishes_glue_types(self):
        a = discriminant_group(standard("U(2)"))
        b = discriminant_group(standard("[2] + [-2]"))
        res = forms_equivalent(a, b)
        assert not res.equivalent and res.level == "exact"

    def test_exact_positive_across_bases(self):
        a = discriminant_group(standard("A2(-1) + U"))
        b = discriminant_group(standard("U + A2(-1)"))
        res = forms_equivalent(a, b)
        assert res.equivalent and res.level == "exact"

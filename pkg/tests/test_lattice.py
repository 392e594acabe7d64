"""Lattice construction, invariants, sublattices and enumeration."""

import itertools
import random

import pytest

from og10lat import (
    BudgetExceeded,
    Degenerate,
    DimensionMismatch,
    NotDefinite,
    NotSymmetric,
    ParseError,
    RankTooLarge,
    UnknownToken,
    ZeroVector,
    direct_sum,
    divisibility,
    enumerate_vectors,
    full_sublattice,
    genus_tag,
    intersect,
    is_isometric_definite,
    is_primitive,
    is_saturated,
    lattice_invariants,
    make_lattice,
    orthogonal_complement,
    pair,
    read_lattice,
    saturation,
    short_vectors,
    span,
    square,
    standard,
    twist,
    write_lattice,
)

U = standard("U")
OG10 = standard("U^3 + E8(-1)^2 + A2(-1)")
DELTA = make_lattice(((-6, 3), (3, -2)), "Delta")


def rand_even_lattice(rng, max_rank=6, spread=4):
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


class TestMakeLattice:
    def test_hyperbolic_plane(self):
        lat = make_lattice(((0, 1), (1, 0)))
        assert lat.is_even
        assert lat.det == -1

    def test_rapagnetta_block(self):
        # restriction of the BBF form to the exceptional pair
        assert DELTA.is_even
        assert DELTA.det == 3

    def test_degenerate_rejected(self):
        with pytest.raises(Degenerate):
            make_lattice(((1, 1), (1, 1)))

    def test_asymmetric_rejected(self):
        with pytest.raises(NotSymmetric):
            make_lattice(((0, 1), (2, 0)))
        with pytest.raises(NotSymmetric):
            make_lattice(((0, 1, 2), (1, 0, 0)))


class TestStandard:
    def test_og10_lattice(self):
        rank, det, parity, sig = lattice_invariants(OG10)
        assert (rank, abs(det), parity) == (24, 3, "even")
        assert sig.as_tuple() == (3, 21)

    def test_mukai_lattice(self):
        lat = standard("U^4 + E8(-1)^2")
        rank, det, parity, sig = lattice_invariants(lat)
        assert (rank, det, parity) == (24, 1, "even")
        assert sig.as_tuple() == (4, 20)

    def test_rank_one(self):
        assert standard("[2]").gram == ((2,),)
        assert standard("[-6]").gram == ((-6,),)

    def test_ade_determinants(self):
        for n in range(1, 9):
            assert standard(f"A{n}").det == n + 1
        for n in range(2, 10):
            assert standard(f"D{n}").det == 4
        assert standard("E6").det == 3
        assert standard("E7").det == 2
        assert standard("E8").det == 1

    def test_bourbaki_e8_pinned(self):
        # golden copy of the pinned convention
        assert standard("E8").gram == (
            (2, 0, -1, 0, 0, 0, 0, 0),
            (0, 2, 0, -1, 0, 0, 0, 0),
            (-1, 0, 2, -1, 0, 0, 0, 0),
            (0, -1, -1, 2, -1, 0, 0, 0),
            (0, 0, 0, -1, 2, -1, 0, 0),
            (0, 0, 0, 0, -1, 2, -1, 0),
            (0, 0, 0, 0, 0, -1, 2, -1),
            (0, 0, 0, 0, 0, 0, -1, 2),
        )

    def test_parse_errors(self):
        with pytest.raises(UnknownToken):
            standard("Q3")
        with pytest.raises(UnknownToken):
            standard("U3")
        with pytest.raises(ParseError):
            standard("U +")
        with pytest.raises(ParseError):
            standard("[2")
        with pytest.raises(ParseError):
            standard("")


class TestInvariants:
    def test_u(self):
        rank, det, parity, sig = lattice_invariants(U)
        assert (rank, det, parity, sig.as_tuple()) == (2, -1, "even", (1, 1))

    def test_e8_negated(self):
        rank, det, parity, sig = lattice_invariants(standard("E8(-1)"))
        assert (rank, det, parity, sig.as_tuple()) == (8, 1, "even", (0, 8))

    def test_sign_of_det(self):
        rng = random.Random(41)
        for _ in range(60):
            lat = rand_even_lattice(rng)
            sig = lat.signature
            assert sig.positive + sig.negative == lat.rank
            assert (1 if lat.det > 0 else -1) == (-1) ** sig.negative


class TestPairing:
    def test_u_pairing(self):
        assert pair(U, (1, 0), (0, 1)) == 1

    def test_delta_square(self):
        assert square(DELTA, (1, 0)) == -6

    def test_zero_vector(self):
        assert pair(U, (0, 0), (1, 1)) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pair(U, (1, 0, 0), (0, 1))


class TestDivisibility:
    def test_examples(self):
        assert divisibility(U, (1, 0)) == 1
        assert divisibility(DELTA, (1, 0)) == 3
        e8m2 = standard("E8(-2)")
        for i in range(8):
            v = tuple(int(j == i) for j in range(8))
            assert divisibility(e8m2, v) == 2

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            divisibility(U, (0, 0))

    def test_brute_force_oracle(self):
        # gcd over pairings with the basis equals the Gram-column gcd, and
        # every pairing with a random vector is a multiple of it
        from math import gcd
        rng = random.Random(43)
        for _ in range(200):
            lat = rand_even_lattice(rng)
            v = tuple(rng.randint(-5, 5) for _ in range(lat.rank))
            if not any(v):
                continue
            d = divisibility(lat, v)
            basis_gcd = 0
            for i in range(lat.rank):
                b = tuple(int(j == i) for j in range(lat.rank))
                basis_gcd = gcd(basis_gcd, pair(lat, v, b))
            assert d == basis_gcd
            for _ in range(10):
                w = tuple(rng.randint(-7, 7) for _ in range(lat.rank))
                assert pair(lat, v, w) % d == 0

    def test_divisibility_divides_square(self):
        rng = random.Random(47)
        for _ in range(200):
            lat = rand_even_lattice(rng)
            v = tuple(rng.randint(-4, 4) for _ in range(lat.rank))
            if not any(v):
                continue
            assert square(lat, v) % divisibility(lat, v) == 0


class TestPrimitive:
    def test_examples(self):
        assert not is_primitive(U, (2, 4))
        assert is_primitive(U, (1, 0))
        assert is_primitive(U, (3, 5))

    def test_zero(self):
        with pytest.raises(ZeroVector):
            is_primitive(U, (0, 0))


class TestSaturation:
    def test_double_vector(self):
        sat, index = saturation(span(U, [(2, 0)]))
        assert sat.basis == ((1, 0),)
        assert index == 2

    def test_already_saturated(self):
        sub = span(U, [(1, 0)])
        sat, index = saturation(sub)
        assert index == 1
        assert sat.basis == sub.basis

    def test_index_two_plane(self):
        sat, index = saturation(span(U, [(1, 1), (1, -1)]))
        assert index == 2
        assert sat.basis == ((1, 0), (0, 1))

    def test_idempotent(self):
        rng = random.Random(53)
        for _ in range(100):
            lat = rand_even_lattice(rng, max_rank=5)
            k = rng.randint(1, lat.rank)
            rows = [tuple(rng.randint(-3, 3) for _ in range(lat.rank))
                    for _ in range(k)]
            try:
                sub = span(lat, rows)
            except DimensionMismatch:
                continue
            sat1, _ = saturation(sub)
            sat2, idx = saturation(sat1)
            assert idx == 1
            assert sat1.basis == sat2.basis


class TestOrthogonalComplement:
    def test_isotropic_line(self):
        comp = orthogonal_complement(span(U, [(1, 0)]))
        assert comp.basis == ((1, 0),)

    def test_sigma_perp_invariants(self):
        sigma = tuple([0] * 22 + [1, -1])
        comp = orthogonal_complement(span(OG10, [sigma]))
        lat = comp.as_lattice()
        rank, det, parity, sig = lattice_invariants(lat)
        assert (rank, det, parity, sig.as_tuple()) == (23, 2, "even", (3, 20))
        assert genus_tag(lat) == genus_tag(standard("U^3 + E8(-1)^2 + [-2]"))

    def test_full_lattice(self):
        comp = orthogonal_complement(full_sublattice(U))
        assert comp.rank == 0

    def test_rank_additivity_and_saturation(self):
        rng = random.Random(59)
        for _ in range(100):
            lat = rand_even_lattice(rng, max_rank=5)
            v = tuple(rng.randint(-3, 3) for _ in range(lat.rank))
            if not any(v) or square(lat, v) == 0:
                continue
            sub = span(lat, [v])
            comp = orthogonal_complement(sub)
            assert comp.rank == lat.rank - 1
            assert is_saturated(comp)


class TestIntersect:
    def test_block_planes(self):
        lat = standard("U + U")
        a = span(lat, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
        b = span(lat, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
        mid = intersect(a, b)
        assert mid.basis == ((0, 1, 0, 0), (0, 0, 1, 0))


class TestTwistAndSums:
    def test_twist_scales_pairing(self):
        rng = random.Random(61)
        for _ in range(100):
            lat = rand_even_lattice(rng, max_rank=4)
            n = rng.choice([-3, -2, -1, 2, 3])
            tw = twist(lat, n)
            v = tuple(rng.randint(-4, 4) for _ in range(lat.rank))
            w = tuple(rng.randint(-4, 4) for _ in range(lat.rank))
            assert pair(tw, v, w) == n * pair(lat, v, w)

    def test_cross_block_pairing_zero(self):
        rng = random.Random(67)
        for _ in range(50):
            a = rand_even_lattice(rng, max_rank=3)
            b = rand_even_lattice(rng, max_rank=3)
            s = direct_sum(a, b)
            v = tuple(rng.randint(-3, 3) for _ in range(a.rank)) + (0,) * b.rank
            w = (0,) * a.rank + tuple(rng.randint(-3, 3) for _ in range(b.rank))
            assert pair(s, v, w) == 0


class TestEnumeration:
    def test_e8_minus2_roots(self):
        roots = enumerate_vectors(standard("E8(-2)"), square=-4, radius=1)
        assert len(roots) == 240

    def test_e8_root_count_euclidean_oracle(self):
        # independent count in the even-coordinate model of the root system
        count = 0
        for i in range(8):
            for j in range(i + 1, 8):
                count += 4  # +-e_i +- e_j
        for signs in itertools.product((1, -1), repeat=8):
            if signs.count(-1) % 2 == 0:
                count += 1  # all-half-integer vectors with even sign count
        assert count == 240

    def test_u_isotropic(self):
        vecs = enumerate_vectors(U, square=0, primitive=True, radius=1)
        assert set(vecs) == {(1, 0), (-1, 0), (0, 1), (0, -1)}

    def test_a2_negated_contains_sigma(self):
        vecs = enumerate_vectors(standard("A2(-1)"), square=-6,
                                 divisibility=3, radius=2)
        assert (1, -1) in vecs and (-1, 1) in vecs

    def test_symmetric_and_deterministic(self):
        vecs = enumerate_vectors(DELTA, square=-6, radius=3)
        assert vecs == enumerate_vectors(DELTA, square=-6, radius=3)
        assert set(vecs) == {tuple(-x for x in v) for v in vecs}
        assert list(vecs) == sorted(vecs)

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_vectors(OG10, radius=3, cap=1000)

    def test_norm_enumeration_matches_box(self):
        # on a definite lattice the norm-complete path agrees with a large box
        lat = standard("A2")
        by_norm = enumerate_vectors(lat, square=4)
        box = [v for v in itertools.product(range(-5, 6), repeat=2)
               if any(v) and pair(lat, v, v) == 4]
        assert set(by_norm) == set(box)

    def test_short_vectors_requires_definite(self):
        with pytest.raises(NotDefinite):
            short_vectors(U, 2)


class TestDefiniteIsometry:
    def test_e8_self(self):
        e8m2 = standard("E8(-2)")
        w = is_isometric_definite(e8m2, e8m2)
        assert w is not None

    def test_e8_vs_d8(self):
        assert is_isometric_definite(standard("E8(-2)"), standard("D8(-2)")) is None

    def test_squares_vs_hexagonal(self):
        assert is_isometric_definite(standard("[2] + [2]"), standard("A2")) is None

    def test_requires_definite(self):
        with pytest.raises(NotDefinite):
            is_isometric_definite(U, U)

    def test_rank_cap(self):
        big = standard("[2]^13")
        with pytest.raises(RankTooLarge):
            is_isometric_definite(big, big)

    def test_witness_on_permuted_basis(self):
        a2 = standard("A2")
        other = make_lattice(((2, -1), (-1, 2)))
        w = is_isometric_definite(a2, other)
        assert w is not None


class TestSerialization:
    def test_round_trip_byte_exact(self):
        for lat in (U, DELTA, OG10, standard("E6(-2) + U(2)^2 + [2] + [-2]")):
            text = write_lattice(lat)
            again = read_lattice(text)
            assert again.gram == lat.gram
            assert write_lattice(again) == text

    def test_parse_diagnostics_name_line_and_token(self):
        with pytest.raises(ParseError, match="line 1"):
            read_lattice("nonsense here")
        with pytest.raises(ParseError, match="line 3"):
            read_lattice("lattice L rank 2\n0 1\n1 x")

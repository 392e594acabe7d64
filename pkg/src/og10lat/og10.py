"""Moduli-style criteria for the rank-24 O'Grady-10 lattice.

The fixed ambient lattice is U^3 + E8(-1)^2 + A2(-1) with a designated
saturated "NS" sublattice standing for the integral (1,1) part.  The checks
decide, with explicit certificates:

  * numerical moduli space: a primitive NS class sigma with sigma^2 = -6 and
    divisibility 3 whose complement embeds into the rank-24 Mukai lattice
    with a copy of U inside the induced (1,1) part (U(n) in the twisted
    variant, with the rational B-field recovered from the certificate);
  * the Hassett conditions (**) and (**') for a discriminant d, and the
    saturated rank-3 lattices L_d that realize them;
  * whether a symplectic birational involution acts like one induced from a
    K3 automorphism (invariant lattice U^3 + E8(-2) + A2(-1), coinvariant
    E8(-2), trivial discriminant action, plus the certificate chain).

Existence searches are radius-bounded and three-valued: yes, no (only under
a definiteness or parity proof), or inconclusive-at-radius.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .discform import OddLattice, discriminant_group, genus_tag
from .glue import (
    CertificateSearch,
    GlueData,
    HyperbolicCertificate,
    MUKAI_EXPR,
    SIGMA_PERP_EXPR,
    SigmaPerpEmbedding,
    WrongInvariants,
    _solve_pairing_one,
    _u_search_raw,
    canonical_sigma_perp_embedding,
    overlattice_from_glue,
    u_summand_certificate,
    un_summand_certificate,
)
from .intlinalg import (
    freeze,
    identity,
    inertia,
    integer_kernel,
    hermite_row_basis,
    mat_mul,
    mat_vec,
    rational_inverse,
    transpose,
)
from .lattice import (
    Isometry,
    Lattice,
    LatticeError,
    NotIsometry,
    Signature,
    Sublattice,
    divisibility,
    intersect,
    is_isometric_definite,
    is_primitive,
    make_lattice,
    orthogonal_complement,
    pair,
    saturation,
    sign_normalized,
    span,
    square,
    standard,
)


class MismatchedNSLattice(LatticeError):
    pass


class OddSquare(LatticeError):
    pass


class NotProjective(LatticeError):
    pass


class WrongDeterminant(LatticeError):
    pass


class NotInvolution(LatticeError):
    pass


class NSNotPreserved(LatticeError):
    pass


class InfiniteOrderSuspected(LatticeError):
    pass


OG10_EXPR = "U^3 + E8(-1)^2 + A2(-1)"
INDUCED_INVARIANT_EXPR = "U^3 + E8(-2) + A2(-1)"
INDUCED_COINVARIANT_EXPR = "E8(-2)"
EXCLUDED_INVARIANT_EXPR = "E6(-2) + U(2)^2 + [2] + [-2]"


@lru_cache(maxsize=None)
def og10_lattice() -> Lattice:
    return standard(OG10_EXPR)


@lru_cache(maxsize=None)
def mukai_lattice() -> Lattice:
    return standard(MUKAI_EXPR)


# ---------------------------------------------------------------------------
# Mukai vectors

@dataclass(frozen=True)
class MukaiVector:
    """(r, l, s) with l in a designated K3 Neron-Severi lattice."""

    r: int
    l: tuple
    s: int
    ns: Lattice

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0 and not any(self.l)


def mukai_pair(v: MukaiVector, w: MukaiVector) -> int:
    """-r1 s2 + l1 . l2 - r2 s1."""
    if v.ns.gram != w.ns.gram:
        raise MismatchedNSLattice("vectors live over different NS lattices")
    return -v.r * w.s + pair(v.ns, v.l, w.l) - w.r * v.s


def mukai_square(v: MukaiVector) -> int:
    return mukai_pair(v, v)


def mukai_vector_of_sheaf(r: int, c1, c2: int, ns: Lattice) -> MukaiVector:
    """(rank, c1, c1^2/2 - c2 + rank) of a sheaf with those Chern data."""
    c1 = tuple(c1)
    sq = pair(ns, c1, c1)
    if sq % 2:
        raise OddSquare("c1^2 must be even")
    return MukaiVector(r, c1, sq // 2 - c2 + r, ns)


def is_positive_mukai(v: MukaiVector, effective) -> bool:
    """Square at least 2 plus one of the positivity clauses.

    `effective` is a caller-supplied predicate on NS classes; effectivity is
    geometric input, not lattice data.
    """
    if v.is_zero():
        raise ValueError("positivity of the zero vector is undefined")
    if mukai_square(v) < 2:
        return False
    if v.r > 0:
        return True
    if v.r == 0 and any(v.l):
        return bool(effective(v.l))
    return v.r == 0 and not any(v.l) and v.s > 0


def is_ols_vector(v: MukaiVector, effective) -> bool:
    """v = 2w with w primitive of square 2; rank 0 needs an effective l.

    Polarization genericity is the caller's assertion and not checked here.
    """
    if v.is_zero():
        return False
    if v.r % 2 or v.s % 2 or any(c % 2 for c in v.l):
        return False
    w = MukaiVector(v.r // 2, tuple(c // 2 for c in v.l), v.s // 2, v.ns)
    g = abs(w.r)
    for c in w.l:
        g = gcd(g, c)
    g = gcd(g, w.s)
    if g != 1:
        return False
    if mukai_square(w) != 2:
        return False
    if w.r < 0:
        return False
    if w.r == 0 and not bool(effective(w.l)):
        return False
    return True


# ---------------------------------------------------------------------------
# the index-2 overlattice that rebuilds the ambient rank-24 lattice

def gamma_v(v_perp: Lattice) -> GlueData:
    """Overlattice of v_perp + [-6] glued by (t/2, sigma/2).

    v_perp must be even with |det| = 2; t generates its discriminant group.
    The output is even of rank rank(v_perp) + 1, and for the standard
    complement it lands in the O'Grady-10 genus with the [-6] generator
    acquiring divisibility 3.
    """
    if abs(v_perp.det) != 2:
        raise WrongDeterminant(f"|det| must be 2, got {abs(v_perp.det)}")
    if not v_perp.is_even:
        raise OddLattice("v_perp must be even")
    form = discriminant_group(v_perp)
    lift = form.generators[0]
    minus_six = standard("[-6]")
    return overlattice_from_glue(v_perp, minus_six,
                                 [(lift, (Fraction(1, 2),))])


# ---------------------------------------------------------------------------
# marked lattices and verdicts

@dataclass(frozen=True)
class MarkedHodgeLattice:
    """The O'Grady-10 lattice with a designated saturated NS sublattice."""

    lattice: Lattice
    ns: Sublattice
    projective: bool = True


def mark_og10(ns_rows, projective: bool = True) -> MarkedHodgeLattice:
    """Build a marked lattice over the standard rank-24 Gram matrix.

    ns_rows must span a saturated sublattice; a projective marking needs the
    restricted form to have exactly one positive direction.
    """
    lat = og10_lattice()
    ns = span(lat, ns_rows)
    _, sat_index = saturation(ns)
    if sat_index != 1:
        raise LatticeError("the designated NS sublattice must be saturated")
    if projective:
        pos, _, _ = inertia(ns.gram())
        if pos != 1:
            raise NotProjective(
                f"projective marking needs one positive NS direction, got {pos}")
    return MarkedHodgeLattice(lat, ns, projective)


@dataclass(frozen=True)
class TwistedData:
    n: int
    gamma: tuple
    b_field: tuple  # rational vector, -gamma/n
    e: tuple
    f: tuple
    k: int


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "yes" | "no" | "inconclusive"
    sigma: tuple | None
    certificate: HyperbolicCertificate | None
    w: tuple | None
    twisted: TwistedData | None
    radius: int
    chart: str | None
    assumptions: tuple
    notes: tuple

    @property
    def is_yes(self) -> bool:
        return self.outcome == "yes"


_BASE_ASSUMPTIONS = (
    "marking fixed: ambient Gram pinned to the standard block model",
    "projectivity asserted by the caller through the projective flag",
)


def _box_coeffs(rank: int, radius: int):
    seen = set()
    for v in itertools.product(range(-radius, radius + 1), repeat=rank):
        if not any(v):
            continue
        v = sign_normalized(v)
        if v not in seen:
            seen.add(v)
    # short candidates first, lexicographic tie-break
    return sorted(seen, key=lambda v: (sum(abs(x) for x in v), v))


def _sigma_candidates(x: MarkedHodgeLattice, radius: int, fixed_by=None):
    lat = x.lattice
    out = []
    for coeffs in _box_coeffs(x.ns.rank, radius):
        v = x.ns.vector_from_coords(coeffs)
        if fixed_by is not None and mat_vec(fixed_by, v) != tuple(v):
            continue
        if square(lat, v) != -6:
            continue
        if not is_primitive(lat, v):
            continue
        if divisibility(lat, v) != 3:
            continue
        out.append(tuple(v))
    return out


def _validate_sigma(x: MarkedHodgeLattice, sigma):
    lat = x.lattice
    sigma = tuple(sigma)
    if not x.ns.contains(sigma):
        raise ValueError("sigma does not lie in the designated NS sublattice")
    if square(lat, sigma) != -6 or not is_primitive(lat, sigma) \
            or divisibility(lat, sigma) != 3:
        raise ValueError("sigma must be primitive of square -6 and divisibility 3")
    return sigma


@dataclass(frozen=True)
class SigmaChart:
    """sigma, its complement, the Mukai-lattice model and the (1,1) part."""

    sigma: tuple
    sigma_perp: Sublattice
    embedding: SigmaPerpEmbedding
    one_one: Sublattice      # saturated sublattice of the ambient model
    one_one_gram: tuple      # restricted Gram (can be degenerate)


def sigma_chart(x: MarkedHodgeLattice, sigma) -> SigmaChart:
    """Embed sigma-perp into the Mukai model and cut out the (1,1) part.

    The induced (1,1) part is the saturation of (ns intersect sigma-perp)
    plus Z w, with w the square-2 complement generator.
    """
    lat = x.lattice
    sperp = orthogonal_complement(span(lat, [sigma]))
    emb = canonical_sigma_perp_embedding(sperp.as_lattice("sigma-perp"))
    pair_row = tuple(pair(lat, b, sigma) for b in x.ns.basis)
    kern = integer_kernel((pair_row,), x.ns.rank)
    inside = hermite_row_basis(
        [x.ns.vector_from_coords(c) for c in kern], lat.rank)
    o_rows = []
    for v in inside:
        coords = sperp.express(v)
        assert coords is not None and all(c.denominator == 1 for c in coords)
        row = [0] * emb.ambient.rank
        for c, img in zip(coords, emb.images):
            for j in range(emb.ambient.rank):
                row[j] += int(c) * img[j]
        o_rows.append(tuple(row))
    n_raw = span(emb.ambient, tuple(o_rows) + (emb.w,))
    n_sub, _ = saturation(n_raw)
    return SigmaChart(tuple(sigma), sperp, emb, n_sub, n_sub.gram())


def _conclusive_negative(x: MarkedHodgeLattice):
    """A sigma-independent proof that no certificate can exist, if any.

    The induced (1,1) part has signature (2, neg(ns) - 1) for every
    admissible sigma, so neg(ns) <= 1 makes it (semi)definite; an all-even
    pairing between ns and the ambient lattice rules out divisibility 3.
    """
    pos, neg, zero = inertia(x.ns.gram())
    if neg <= 1:
        return ("the induced (1,1) part is (semi)definite for every "
                "admissible sigma: sig(ns) = "
                f"({pos},{neg},{zero})")
    lat = x.lattice
    all_even = all(
        pair(lat, b, tuple(row)) % 2 == 0
        for b in x.ns.basis
        for row in identity(lat.rank))
    if all_even:
        return ("every NS class has even divisibility, so no "
                "divisibility-3 sigma exists")
    return None


def _map_certificate(chart: SigmaChart, cert: HyperbolicCertificate):
    e = chart.one_one.vector_from_coords(cert.e)
    f = chart.one_one.vector_from_coords(cert.f)
    return HyperbolicCertificate(e, f, cert.n, cert.summand)


def is_numerical_moduli_space(x: MarkedHodgeLattice, sigma=None,
                              radius: int = 3) -> Verdict:
    """Decide the untwisted criterion with a full certificate chain.

    With sigma supplied the verdict concerns that class; otherwise primitive
    square -6, divisibility 3 classes are searched in ns within the radius
    and each candidate is tried.
    """
    if not x.projective:
        raise NotProjective("the criterion is stated for projective markings")
    if sigma is not None:
        sigma = _validate_sigma(x, sigma)
    obstruction = _conclusive_negative(x)
    if obstruction is not None:
        return Verdict("no", None, None, None, None, radius, None,
                       _BASE_ASSUMPTIONS, (obstruction,))
    candidates = [sigma] if sigma is not None else _sigma_candidates(x, radius)
    notes = []
    for cand in candidates:
        chart = sigma_chart(x, cand)
        search = _u_search_raw(chart.one_one_gram, radius, 2_000_000)
        if search.found:
            return Verdict("yes", cand, _map_certificate(chart, search.certificate),
                           chart.embedding.w, None, radius,
                           chart.embedding.chart, _BASE_ASSUMPTIONS,
                           (f"certificate coordinates live in the {chart.embedding.chart} model",))
        if search.conclusive and sigma is not None:
            return Verdict("no", cand, None, chart.embedding.w, None, radius,
                           chart.embedding.chart, _BASE_ASSUMPTIONS,
                           (f"for the supplied sigma the (1,1) part admits no U: {search.reason}",))
        notes.append(f"sigma {cand}: {search.reason}")
    if not candidates:
        notes.append(f"no sigma of square -6 and divisibility 3 found at radius {radius}")
    return Verdict("inconclusive", None, None, None, None, radius, None,
                   _BASE_ASSUMPTIONS, tuple(notes))


def _twisted_data(chart: SigmaChart, cert: HyperbolicCertificate) -> TwistedData:
    """Recover the rational B-field from a U(n) certificate.

    e is primitive in the unimodular ambient model, so it completes to a
    hyperbolic pair (e, f); writing f_n = gamma + n f + k e with gamma
    orthogonal to both, the B-field is -gamma/n.
    """
    amb = chart.embedding.ambient
    e = chart.one_one.vector_from_coords(cert.e)
    f_n = chart.one_one.vector_from_coords(cert.f)
    n = cert.n
    if n == 1:
        f = f_n
    else:
        yp = _solve_pairing_one(amb.gram, e)
        assert yp is not None  # primitive in a unimodular lattice
        sq = pair(amb, yp, yp)
        f = tuple(a - (sq // 2) * b for a, b in zip(yp, e))
    k = pair(amb, f, f_n)
    gamma = tuple(a - n * b - k * c for a, b, c in zip(f_n, f, e))
    assert pair(amb, gamma, e) == 0 and pair(amb, gamma, f) == 0
    b_field = tuple(Fraction(-g, n) for g in gamma)
    return TwistedData(n, gamma, b_field, e, f, k)


def is_twisted_numerical_moduli_space(x: MarkedHodgeLattice, sigma=None,
                                      radius: int = 3,
                                      require_summand: bool = True) -> Verdict:
    """Twisted variant: a U(n) summand in the (1,1) part, any n > 0.

    On success the verdict carries (n, gamma, B) with B = -gamma/n the
    rational B-field lift of the Brauer class.
    """
    if not x.projective:
        raise NotProjective("the criterion is stated for projective markings")
    if sigma is not None:
        sigma = _validate_sigma(x, sigma)
    obstruction = _conclusive_negative(x)
    if obstruction is not None:
        return Verdict("no", None, None, None, None, radius, None,
                       _BASE_ASSUMPTIONS, (obstruction,))
    mode_note = ("U(n) must split off orthogonally" if require_summand
                 else "U(n) embedding only; no summand requirement")
    candidates = [sigma] if sigma is not None else _sigma_candidates(x, radius)
    notes = [mode_note]
    for cand in candidates:
        chart = sigma_chart(x, cand)
        one_one = make_lattice(chart.one_one_gram) if _nondegenerate(chart.one_one_gram) else None
        if one_one is None:
            notes.append(f"sigma {cand}: degenerate (1,1) part, skipped")
            continue
        search = un_summand_certificate(one_one, radius=radius,
                                        require_summand=require_summand)
        if search.found:
            mapped = _map_certificate(chart, search.certificate)
            twisted = _twisted_data(chart, search.certificate)
            return Verdict("yes", cand, mapped, chart.embedding.w, twisted,
                           radius, chart.embedding.chart, _BASE_ASSUMPTIONS,
                           (mode_note,
                            f"certificate coordinates live in the {chart.embedding.chart} model"))
        if search.conclusive and sigma is not None:
            return Verdict("no", cand, None, chart.embedding.w, None, radius,
                           chart.embedding.chart, _BASE_ASSUMPTIONS,
                           (mode_note,
                            f"for the supplied sigma the (1,1) part admits no U(n): {search.reason}"))
        notes.append(f"sigma {cand}: {search.reason}")
    if not candidates:
        notes.append(f"no sigma of square -6 and divisibility 3 found at radius {radius}")
    return Verdict("inconclusive", None, None, None, None, radius, None,
                   _BASE_ASSUMPTIONS, tuple(notes))


def _nondegenerate(gram) -> bool:
    _, _, zero = inertia(gram)
    return zero == 0


# ---------------------------------------------------------------------------
# Hassett conditions

def hassett_admissible(d: int) -> bool:
    """d > 6 and d = 0 or 2 mod 6."""
    if d < 1:
        raise ValueError("d must be positive")
    return d > 6 and d % 6 in (0, 2)


def hassett_star(d: int):
    """(**): d divides 2n^2 + 2n + 2 for some n; returns (bool, witness)."""
    if d < 1:
        raise ValueError("d must be positive")
    for n in range(d):
        if (2 * n * n + 2 * n + 2) % d == 0:
            return True, n
    return False, None


def hassett_star_prime(d: int) -> bool:
    """(**'): in d/2, primes p = 2 mod 3 appear with even exponents.

    Odd d is outside the domain and returns False.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d % 2:
        return False
    m = d // 2
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if p % 3 == 2 and e % 2:
                return False
        p += 1
    if m > 1 and m % 3 == 2:
        return False
    return True


def hassett_row(d: int) -> dict:
    star, witness = hassett_star(d)
    row = {
        "d": d,
        "admissible": hassett_admissible(d),
        "star": star,
        "star_witness": witness,
        "star_prime": hassett_star_prime(d),
    }
    if d % 2:
        row["note"] = "odd d: (**') requires d/2 integral, reported False"
    return row


# ---------------------------------------------------------------------------
# the saturated rank-3 lattices L_d

@dataclass(frozen=True)
class LdReport:
    lattice: Lattice
    index: int
    det: int
    candidate_d: int
    u_search: CertificateSearch
    un_search: CertificateSearch


def build_ld(vd_square: int, glue="trivial", radius: int = 4) -> LdReport:
    """Saturation-style overlattice of A2 + [vd_square] with a U test.

    The hexagonal block is positive definite and the extra generator has
    negative even square (primitive middle cohomology is negative in this
    convention).  glue may be "trivial", "a2" (the order-3 glue through the
    hexagonal discriminant group), or an explicit list of lifts.  |det| is
    the candidate discriminant d; the U certificate search mirrors (**) and
    the embedding-mode U(n) search mirrors (**').
    """
    if vd_square >= 0 or vd_square % 2:
        raise ValueError("vd_square must be negative and even")
    a2 = standard("A2")
    kv = make_lattice(((vd_square,),), f"[{vd_square}]")
    if glue == "trivial":
        data = overlattice_from_glue(a2, kv, [])
    elif glue == "a2":
        form = discriminant_group(a2)
        data = overlattice_from_glue(a2, kv,
                                     [(form.generators[0], (Fraction(1, 3),))])
    else:
        data = overlattice_from_glue(a2, kv, glue)
    lat = data.overlattice
    u = u_summand_certificate(lat, radius=radius)
    un = un_summand_certificate(lat, radius=radius, require_summand=False)
    return LdReport(lat, data.index, lat.det, abs(lat.det), u, un)


# ---------------------------------------------------------------------------
# isometries of the marked lattice

def _as_matrix(lat: Lattice, g):
    m = g.matrix if isinstance(g, Isometry) else freeze(g)
    if len(m) != lat.rank or any(len(row) != lat.rank for row in m):
        raise NotIsometry("matrix size does not match the lattice")
    mt = transpose(m)
    if mat_mul(mat_mul(mt, lat.gram), m) != lat.gram:
        raise NotIsometry("matrix does not preserve the Gram form")
    return m


def invariant_coinvariant(lat: Lattice, g, order_bound: int = 200):
    """Invariant sublattice (kernel of g - id, saturated) and its complement."""
    m = _as_matrix(lat, g)
    ident = identity(lat.rank)
    power = m
    for _ in range(order_bound):
        if power == ident:
            break
        power = mat_mul(m, power)
    else:
        raise InfiniteOrderSuspected(
            f"no power up to {order_bound} is the identity")
    diff = tuple(tuple(m[i][j] - ident[i][j] for j in range(lat.rank))
                 for i in range(lat.rank))
    inv_rows = integer_kernel(diff, lat.rank)
    inv = Sublattice(lat, inv_rows)
    return inv, orthogonal_complement(inv)


def disc_action_trivial(lat: Lattice, g) -> bool:
    """Does g fix every class of the discriminant group?"""
    m = _as_matrix(lat, g)
    form = discriminant_group(lat)
    for lift in form.generators:
        image = tuple(sum(Fraction(m[i][j]) * lift[j] for j in range(lat.rank))
                      for i in range(lat.rank))
        if any((a - b).denominator != 1 for a, b in zip(image, lift)):
            return False
    return True


def all_even_divisibility(lat: Lattice) -> bool:
    """Every vector has even divisibility iff every Gram entry is even."""
    return all(x % 2 == 0 for row in lat.gram for x in row)


# ---------------------------------------------------------------------------
# symplectic involutions

@dataclass(frozen=True)
class InvolutionReport:
    outcome: str  # "INDUCED_TYPE" | "EXCLUDED_EVEN_DIV" | "OTHER"
    invariant: Sublattice
    coinvariant: Sublattice
    coinvariant_witness: Isometry | None
    disc_trivial: bool
    sigma: tuple | None
    certificate: HyperbolicCertificate | None
    even_divisibility_obstruction: bool | None
    radius: int
    notes: tuple


def classify_invariant_pair(invariant_lat: Lattice) -> str:
    """Tag-level branch of the involution classifier.

    "induced-candidate" and "excluded-even-divisibility" name the two
    invariant-lattice genera a symplectic birational involution with trivial
    discriminant action can have; anything else is "other".
    """
    tag = genus_tag(invariant_lat)
    if tag == genus_tag(standard(INDUCED_INVARIANT_EXPR)):
        return "induced-candidate"
    if tag == genus_tag(standard(EXCLUDED_INVARIANT_EXPR)):
        return "excluded-even-divisibility"
    return "other"


def _extend_action_to_model(chart: SigmaChart, x: MarkedHodgeLattice, m):
    """Push the ambient action through sigma-perp into the Mukai model.

    The action fixes w (the complement is rank 1 and the discriminant group
    of sigma-perp has order 2, so the glue is automatically preserved).
    Returns the integer action matrix on the model.
    """
    sperp = chart.sigma_perp
    cols = []
    for b in sperp.basis:
        img = mat_vec(m, b)
        coords = sperp.express(img)
        assert coords is not None and all(c.denominator == 1 for c in coords)
        cols.append(tuple(int(c) for c in coords))
    p = transpose(cols)  # columns are images in sigma-perp coordinates
    r = len(sperp.basis)
    big = [[0] * (r + 1) for _ in range(r + 1)]
    for i in range(r):
        for j in range(r):
            big[i][j] = p[i][j]
    big[r][r] = 1
    stack_rows = tuple(chart.embedding.images) + (chart.embedding.w,)
    e_t = transpose(stack_rows)
    e_t_inv = rational_inverse(e_t)
    t_frac = mat_mul(mat_mul(e_t, big), e_t_inv)
    t = []
    for row in t_frac:
        assert all(x.denominator == 1 for x in row)
        t.append(tuple(int(x) for x in row))
    amb = chart.embedding.ambient
    return _as_matrix(amb, tuple(t))


def classify_symplectic_involution(x: MarkedHodgeLattice, g,
                                   radius: int = 3) -> InvolutionReport:
    """Classify a symplectic birational involution by its lattice action.

    INDUCED_TYPE needs the invariant genus U^3 + E8(-2) + A2(-1), an explicit
    coinvariant isometry onto E8(-2), and the numerically-induced witness:
    an invariant sigma of square -6 and divisibility 3 plus a U certificate
    in the invariant part of the induced (1,1) lattice.
    """
    lat = x.lattice
    m = _as_matrix(lat, g)
    ident = identity(lat.rank)
    if m == ident:
        raise NotInvolution("the identity is not an involution")
    if mat_mul(m, m) != ident:
        raise NotInvolution("the action does not square to the identity")
    for b in x.ns.basis:
        if not x.ns.contains(mat_vec(m, b)):
            raise NSNotPreserved("the action does not preserve the NS sublattice")

    inv, coinv = invariant_coinvariant(lat, m)
    inv_lat = inv.as_lattice("invariant")
    branch = classify_invariant_pair(inv_lat)
    disc_trivial = disc_action_trivial(lat, m)
    notes = [f"invariant tag branch: {branch}",
             f"discriminant action trivial: {disc_trivial}"]

    if branch == "excluded-even-divisibility":
        obstruction = all_even_divisibility(inv_lat)
        notes.append("even divisibility contradicts an invariant "
                     "divisibility-3 class")
        return InvolutionReport("EXCLUDED_EVEN_DIV", inv, coinv, None,
                                disc_trivial, None, None, obstruction,
                                radius, tuple(notes))
    if branch != "induced-candidate":
        return InvolutionReport("OTHER", inv, coinv, None, disc_trivial,
                                None, None, None, radius, tuple(notes))

    coinv_lat = coinv.as_lattice("coinvariant")
    witness = is_isometric_definite(coinv_lat, standard(INDUCED_COINVARIANT_EXPR))
    if witness is None:
        notes.append("coinvariant lattice is not isometric to E8(-2)")
        return InvolutionReport("OTHER", inv, coinv, None, disc_trivial,
                                None, None, None, radius, tuple(notes))

    for cand in _sigma_candidates(x, radius, fixed_by=m):
        chart = sigma_chart(x, cand)
        t = _extend_action_to_model(chart, x, m)
        diff = tuple(tuple(t[i][j] - int(i == j)
                           for j in range(chart.embedding.ambient.rank))
                     for i in range(chart.embedding.ambient.rank))
        inv_model = Sublattice(chart.embedding.ambient,
                               integer_kernel(diff, chart.embedding.ambient.rank))
        fixed_part = intersect(inv_model, chart.one_one)
        search = _u_search_raw(fixed_part.gram(), radius, 2_000_000)
        if search.found:
            cert = search.certificate
            mapped = HyperbolicCertificate(
                fixed_part.vector_from_coords(cert.e),
                fixed_part.vector_from_coords(cert.f), 1, True)
            notes.append(f"certificate found in the {chart.embedding.chart} model")
            return InvolutionReport("INDUCED_TYPE", inv, coinv, witness,
                                    disc_trivial, cand, mapped, None,
                                    radius, tuple(notes))
        notes.append(f"invariant sigma {cand}: {search.reason}")
    notes.append("invariant/coinvariant genera match the induced type but no "
                 f"certificate chain completed at radius {radius}")
    return InvolutionReport("OTHER", inv, coinv, witness, disc_trivial,
                            None, None, None, radius, tuple(notes))


def e8_block_swap() -> tuple:
    """The involution of the standard model swapping the two E8(-1) blocks."""
    n = 24
    m = [[0] * n for _ in range(n)]
    for i in range(6):
        m[i][i] = 1
    for i in range(8):
        m[6 + i][14 + i] = 1
        m[14 + i][6 + i] = 1
    for i in range(22, 24):
        m[i][i] = 1
    return freeze(m)

"""Finite-index overlattices from glue groups, isometry extension, and
hyperbolic-summand certificates.

A glue group is an isotropic subgroup of A_S + A_K given by explicit rational
lifts; adjoining the lifts to S + K produces the even overlattice whose index
is the subgroup order.  Certificates locate copies of U (or U(n)) inside an
even lattice; absence is only ever reported as radius-qualified unless
definiteness or an all-even pairing proves it outright.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .discform import OddLattice, discriminant_group, genus_tag
from .intlinalg import (
    freeze,
    hermite_row_basis,
    identity,
    inertia,
    mat_vec,
    rational_inverse,
    rational_row_solve,
    transpose,
    xgcd,
)
from .lattice import (
    BudgetExceeded,
    Isometry,
    Lattice,
    LatticeError,
    Sublattice,
    direct_sum,
    is_primitive,
    make_isometry,
    make_lattice,
    orthogonal_complement,
    pair,
    saturation,
    sign_normalized,
    span,
    standard,
)


class NotIsotropic(LatticeError):
    pass


class GlueMismatch(LatticeError):
    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class WrongInvariants(LatticeError):
    pass


@dataclass(frozen=True)
class GlueData:
    """An even overlattice of S + K together with its glue bookkeeping.

    `basis` holds the overlattice basis as rational rows in S + K
    coordinates; `embed` expresses each S + K basis vector in overlattice
    coordinates (integer rows).  det(overlattice) * index^2 = det(S) * det(K).
    """

    s: Lattice
    k: Lattice
    glue_generators: tuple
    overlattice: Lattice
    basis: tuple
    embed: tuple
    index: int

    def embed_s_vector(self, v):
        """Overlattice coordinates of a vector of S."""
        full = tuple(v) + (0,) * self.k.rank
        return tuple(sum(c * self.embed[i][j] for i, c in enumerate(full))
                     for j in range(self.overlattice.rank))

    def embed_k_vector(self, v):
        full = (0,) * self.s.rank + tuple(v)
        return tuple(sum(c * self.embed[i][j] for i, c in enumerate(full))
                     for j in range(self.overlattice.rank))


def _class_order(lift) -> int:
    out = 1
    for x in lift:
        out = out * x.denominator // gcd(out, x.denominator)
    return out


def _det_fraction(rows) -> Fraction:
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def overlattice_from_glue(s: Lattice, k: Lattice, glue) -> GlueData:
    """Even overlattice of s + k generated by the given glue lifts.

    `glue` is a list of (lift_in_s, lift_in_k) pairs of rational vectors, each
    lift pairing integrally with its lattice.  The subgroup they generate must
    be isotropic for q_s + q_k (all q-values 0 mod 2Z), which is exactly the
    condition for the overlattice to be even and integral.
    """
    if not s.is_even or not k.is_even:
        raise OddLattice("glue construction requires even summands")
    gens = []
    for lift_s, lift_k in glue:
        ls = tuple(Fraction(x) for x in lift_s)
        lk = tuple(Fraction(x) for x in lift_k)
        if len(ls) != s.rank or len(lk) != k.rank:
            raise NotIsotropic("glue lift has the wrong length")
        for lat, lift in ((s, ls), (k, lk)):
            for row in lat.gram:
                val = sum(a * b for a, b in zip(row, lift))
                if val.denominator != 1:
                    raise NotIsotropic(
                        f"lift {lift} does not pair integrally with the lattice")
        gens.append((ls, lk))

    def q_of(ls, lk):
        qs = sum(ls[i] * s.gram[i][j] * ls[j]
                 for i in range(s.rank) for j in range(s.rank))
        qk = sum(lk[i] * k.gram[i][j] * lk[j]
                 for i in range(k.rank) for j in range(k.rank))
        total = qs + qk
        return total - 2 * (total / 2).__floor__()

    orders = [_class_order(ls + lk) for ls, lk in gens]
    for combo in itertools.product(*(range(o) for o in orders)):
        ls = tuple(sum(c * g[0][i] for c, g in zip(combo, gens))
                   for i in range(s.rank))
        lk = tuple(sum(c * g[1][i] for c, g in zip(combo, gens))
                   for i in range(k.rank))
        qv = q_of(ls, lk)
        if qv != 0:
            raise NotIsotropic(
                f"glue element {combo} has q = {qv} != 0 mod 2Z; "
                "the overlattice would not be even")

    n = s.rank + k.rank
    rows = [tuple(Fraction(x) for x in row) for row in identity(n)]
    for ls, lk in gens:
        rows.append(ls + lk)
    denom = 1
    for row in rows:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    int_rows = [tuple(int(x * denom) for x in row) for row in rows]
    red = hermite_row_basis(int_rows, n)
    basis = freeze(tuple(tuple(Fraction(x, denom) for x in row) for row in red))
    det_b = _det_fraction(basis)
    index = int(1 / abs(det_b))

    big = direct_sum(s, k)
    gram_rows = []
    for bi in basis:
        row = []
        for bj in basis:
            val = sum(bi[a] * big.gram[a][b] * bj[b]
                      for a in range(n) for b in range(n))
            assert val.denominator == 1
            row.append(int(val))
        gram_rows.append(tuple(row))
    over = make_lattice(gram_rows, f"glue({s.name or 'S'},{k.name or 'K'})")
    assert over.is_even

    binv = rational_inverse(basis)
    embed = []
    for i in range(n):
        row = binv[i]  # e_i = row . basis
        assert all(x.denominator == 1 for x in row)
        embed.append(tuple(int(x) for x in row))
    return GlueData(s, k, freeze(tuple(ls + lk for ls, lk in gens)),
                    over, basis, freeze(embed), index)


def extend_isometry(m1: GlueData, m2: GlueData, phi_s: Isometry,
                    phi_k: Isometry) -> Isometry:
    """Extend phi_s + phi_k across the glued overlattices.

    The extension exists iff the induced maps on discriminant forms carry the
    glue subgroup of m1 onto that of m2; otherwise GlueMismatch reports an
    offending glue generator.
    """
    if phi_s.source.gram != m1.s.gram or phi_s.target.gram != m2.s.gram:
        raise GlueMismatch("phi_s does not match the S summands")
    if phi_k.source.gram != m1.k.gram or phi_k.target.gram != m2.k.gram:
        raise GlueMismatch("phi_k does not match the K summands")
    n = m1.s.rank + m1.k.rank
    phi = [[0] * n for _ in range(n)]
    for i in range(m1.s.rank):
        for j in range(m1.s.rank):
            phi[i][j] = phi_s.matrix[i][j]
    for i in range(m1.k.rank):
        for j in range(m1.k.rank):
            phi[m1.s.rank + i][m1.s.rank + j] = phi_k.matrix[i][j]

    rows = []
    for b in m1.basis:
        image = [sum(Fraction(phi[i][j]) * b[j] for j in range(n))
                 for i in range(n)]
        coords = rational_row_solve(m2.basis, tuple(image))
        if coords is None or any(c.denominator != 1 for c in coords):
            # name a glue generator that leaves the target overlattice
            for g in m1.glue_generators:
                img = [sum(Fraction(phi[i][j]) * g[j] for j in range(n))
                       for i in range(n)]
                c2 = rational_row_solve(m2.basis, tuple(img))
                if c2 is None or any(c.denominator != 1 for c in c2):
                    raise GlueMismatch(
                        f"glue generator {g} is not carried into the target glue",
                        generator=g)
            raise GlueMismatch("overlattices are incompatible under phi")
        rows.append(tuple(int(c) for c in coords))
    matrix = transpose(rows)
    return make_isometry(m1.overlattice, m2.overlattice, matrix)


# ---------------------------------------------------------------------------
# the canonical embedding of a sigma-complement into the rank-24 Mukai lattice

SIGMA_PERP_EXPR = "U^3 + E8(-1)^2 + [-2]"
MUKAI_EXPR = "U^4 + E8(-1)^2"


@dataclass(frozen=True)
class SigmaPerpEmbedding:
    source: Lattice
    ambient: Lattice        # a lattice in the Mukai genus
    images: tuple           # per-basis-vector image rows in ambient coordinates
    w: tuple                # generator of the rank-1 complement, w^2 = 2
    chart: str              # "standard-block" or "glue-overlattice"


def canonical_sigma_perp_embedding(sigma_perp: Lattice) -> SigmaPerpEmbedding:
    """Primitively embed a sigma-complement into the rank-24 Mukai lattice.

    The input must have the invariants of U^3 + E8(-1)^2 + [-2] (rank 23,
    even, determinant 2, signature (3,20)).  A literal standard-block Gram is
    sent by the explicit chart: unimodular part onto itself and the square -2
    generator to e - f in the spare U, with complement generator w = e + f.
    Any other basis is embedded through the unique index-2 even unimodular
    overlattice of sigma_perp + [2]; the complement generator is the image of
    the [2] summand.  Either way w^2 = 2 and the image has corank 1.
    """
    reference = standard(SIGMA_PERP_EXPR)
    if (sigma_perp.rank != reference.rank or not sigma_perp.is_even
            or sigma_perp.det != reference.det
            or sigma_perp.signature != reference.signature
            or genus_tag(sigma_perp) != genus_tag(reference)):
        raise WrongInvariants(
            "input lacks the invariants of " + SIGMA_PERP_EXPR)
    if sigma_perp.gram == reference.gram:
        mukai = standard(MUKAI_EXPR)
        images = []
        for i in range(23):
            row = [0] * 24
            if i < 6:
                row[i] = 1          # three hyperbolic planes onto themselves
            elif i < 22:
                row[i + 2] = 1      # both E8(-1) blocks, shifted past the spare U
            else:
                row[6] = 1          # the [-2] generator lands on e - f
                row[7] = -1
            images.append(tuple(row))
        w = tuple([0] * 6 + [1, 1] + [0] * 16)
        return SigmaPerpEmbedding(sigma_perp, mukai, freeze(images), w,
                                  "standard-block")
    two = standard("[2]")
    form = discriminant_group(sigma_perp)
    lift = form.generators[0]
    data = overlattice_from_glue(sigma_perp, two, [(lift, (Fraction(1, 2),))])
    images = tuple(data.embed_s_vector(tuple(int(i == j) for j in range(23)))
                   for i in range(23))
    w = data.embed_k_vector((1,))
    assert genus_tag(data.overlattice) == genus_tag(standard(MUKAI_EXPR))
    return SigmaPerpEmbedding(sigma_perp, data.overlattice, freeze(images), w,
                              "glue-overlattice")


# ---------------------------------------------------------------------------
# hyperbolic certificates

@dataclass(frozen=True)
class HyperbolicCertificate:
    e: tuple
    f: tuple
    n: int
    summand: bool


@dataclass(frozen=True)
class CertificateSearch:
    certificate: HyperbolicCertificate | None
    conclusive: bool
    radius: int
    reason: str
    mode: str = "unimodular"

    @property
    def found(self) -> bool:
        return self.certificate is not None


def _gram_pair(gram, v, w):
    return sum(v[i] * gram[i][j] * w[j]
               for i in range(len(gram)) for j in range(len(gram)))


def _gram_div(gram, v):
    g = 0
    for row in gram:
        g = gcd(g, sum(a * b for a, b in zip(row, v)))
    return g


def _all_even(gram) -> bool:
    return all(x % 2 == 0 for row in gram for x in row)


def _box_candidates(rank, radius, cap):
    total = (2 * radius + 1) ** rank
    if total > cap:
        raise BudgetExceeded(f"{total} candidates exceed the cap {cap}")
    seen = set()
    for v in itertools.product(range(-radius, radius + 1), repeat=rank):
        if not any(v):
            continue
        v = sign_normalized(v)
        if v not in seen:
            seen.add(v)
    return sorted(seen)


def _solve_pairing_one(gram, e):
    """y with (gram . e) . y == 1, via iterated xgcd; None if gcd != 1."""
    c = mat_vec(gram, e)
    n = len(c)
    g = 0
    coeff = [0] * n
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        if g == 0:
            g = abs(ci)
            coeff = [0] * n
            coeff[i] = 1 if ci > 0 else -1
        else:
            g2, x, y = xgcd(g, ci)
            coeff = [x * t for t in coeff]
            coeff[i] += y
            g = g2
    if g != 1:
        return None
    return tuple(coeff)


def _isotropic_primitive(gram, radius, cap):
    out = []
    for v in _box_candidates(len(gram), radius, cap):
        if _gram_pair(gram, v, v) != 0:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 1:
            out.append(v)
    return out


def _semidefinite(gram) -> bool:
    pos, neg, _ = inertia(gram)
    return pos == 0 or neg == 0


def u_summand_certificate(m: Lattice, designated: Sublattice | None = None,
                          radius: int = 3, cap: int = 2_000_000) -> CertificateSearch:
    """Certificate that U embeds in m (automatically a direct summand).

    Searches the coordinate box for a primitive isotropic e of divisibility 1
    and completes it to a hyperbolic pair via f = f' - (f'^2/2) e.  Absence is
    conclusive when the search domain is (semi)definite or when every pairing
    is even; otherwise it is only "not found at this radius".
    """
    if not m.is_even:
        raise OddLattice("certificate search requires an even lattice")
    gram = designated.gram() if designated is not None else m.gram
    result = _u_search_raw(gram, radius, cap)
    if result.certificate is not None and designated is not None:
        cert = result.certificate
        e = designated.vector_from_coords(cert.e)
        f = designated.vector_from_coords(cert.f)
        result = CertificateSearch(HyperbolicCertificate(e, f, 1, True),
                                   True, radius, result.reason, result.mode)
    return result


def _u_search_raw(gram, radius, cap) -> CertificateSearch:
    if _semidefinite(gram):
        return CertificateSearch(None, True, radius, "definite")
    if _all_even(gram):
        return CertificateSearch(None, True, radius, "even-pairing")
    for e in _isotropic_primitive(gram, radius, cap):
        if _gram_div(gram, e) != 1:
            continue
        fp = _solve_pairing_one(gram, e)
        if fp is None:
            continue
        fp_sq = _gram_pair(gram, fp, fp)
        assert fp_sq % 2 == 0
        f = tuple(a - (fp_sq // 2) * b for a, b in zip(fp, e))
        assert _gram_pair(gram, f, f) == 0 and _gram_pair(gram, e, f) == 1
        return CertificateSearch(HyperbolicCertificate(e, f, 1, True),
                                 True, radius, "found")
    return CertificateSearch(None, False, radius, "not-found-at-radius")


def un_summand_certificate(m: Lattice, designated: Sublattice | None = None,
                           radius: int = 3, require_summand: bool = True,
                           cap: int = 2_000_000) -> CertificateSearch:
    """Certificate that U(n) embeds in m, n > 0 minimal with e primitive.

    In summand mode the pair must additionally split off orthogonally
    (span saturated and m = span + complement); in embedding mode any
    hyperbolic pair qualifies and the flag reports whether it happens to
    split.  The mode used is recorded in the result.
    """
    if not m.is_even:
        raise OddLattice("certificate search requires an even lattice")
    mode = "summand" if require_summand else "embedding"
    gram = designated.gram() if designated is not None else m.gram
    if _semidefinite(gram):
        return CertificateSearch(None, True, radius, "definite", mode)
    rank = len(gram)
    isotropic = []
    for v in _box_candidates(rank, radius, cap):
        if _gram_pair(gram, v, v) == 0:
            isotropic.append(v)
    primitive = [v for v in isotropic if _is_prim(v)]
    pairs = []
    for e in primitive:
        for f in isotropic:
            nval = _gram_pair(gram, e, f)
            if nval == 0:
                continue
            if nval < 0:
                f = tuple(-x for x in f)
                nval = -nval
            pairs.append((nval, e, f))
    pairs.sort()
    seen = set()
    for nval, e, f in pairs:
        if (nval, e, f) in seen:
            continue
        seen.add((nval, e, f))
        summand = _is_orthogonal_summand(gram, e, f)
        if require_summand and not summand:
            continue
        if nval == 1:
            summand = True
        cert = HyperbolicCertificate(e, f, nval, summand)
        if designated is not None:
            cert = HyperbolicCertificate(
                designated.vector_from_coords(e),
                designated.vector_from_coords(f), nval, summand)
        return CertificateSearch(cert, True, radius, "found", mode)
    return CertificateSearch(None, False, radius, "not-found-at-radius", mode)


def _is_prim(v) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _is_orthogonal_summand(gram, e, f) -> bool:
    """Does <e, f> split off m orthogonally?

    True iff the span is saturated and, together with its orthogonal
    complement, generates the whole coordinate lattice (index 1).
    """
    from .intlinalg import det_int, integer_kernel, smith_normal_form
    d, _, _ = smith_normal_form((tuple(e), tuple(f)))
    if d[0][0] * d[1][1] != 1:
        return False
    rows = tuple(mat_vec(gram, v) for v in (e, f))
    comp = integer_kernel(rows, len(gram))
    stacked = (tuple(e), tuple(f)) + tuple(comp)
    if len(stacked) != len(gram):
        return False
    return abs(det_int(stacked)) == 1

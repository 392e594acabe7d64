"""Discriminant groups of even lattices as finite quadratic forms.

For an even lattice L the quotient A_L = L^dual / L is finite of order
|det L| and carries q: A_L -> Q/2Z and a pairing b: A_L x A_L -> Q/Z.
q-values are stored as exact rationals reduced into [0, 2); pairings into
[0, 1).  The Gauss-sum residue is evaluated exactly over cyclotomic
integers, never with floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .intlinalg import smith_normal_form, squarefree_part
from .lattice import Lattice, LatticeError, make_lattice, standard


class OddLattice(LatticeError):
    pass


class GroupTooLarge(LatticeError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _q_mod2(value: Fraction) -> Fraction:
    return value - 2 * (value / 2).__floor__()


def _b_mod1(value: Fraction) -> Fraction:
    return value - value.__floor__()


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """A_L with generator lifts in L tensor Q (source-basis coordinates).

    invariant_factors[i] is the order of generators[i]; discriminant_group
    produces a divisor chain d1 | d2 | ..., direct sums may not.
    """

    invariant_factors: tuple
    generators: tuple  # rows of Fractions
    gram: tuple        # Gram matrix of the source lattice

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def lift(self, coeffs):
        """A rational vector representing sum coeffs[i] * generators[i]."""
        n = len(self.gram)
        out = [Fraction(0)] * n
        for c, g in zip(coeffs, self.generators):
            for j in range(n):
                out[j] += c * g[j]
        return tuple(out)

    def q(self, coeffs) -> Fraction:
        """Quadratic value of the class, reduced into [0, 2)."""
        denom, qn, bn = _pairing_table(self)
        val = sum(c * c * qn[i] for i, c in enumerate(coeffs))
        val += 2 * sum(coeffs[i] * coeffs[j] * bn[i][j]
                       for i in range(len(coeffs))
                       for j in range(i + 1, len(coeffs)))
        return Fraction(val % (2 * denom), denom)

    def b(self, c1, c2) -> Fraction:
        """Pairing of two classes, reduced into [0, 1)."""
        denom, qn, bn = _pairing_table(self)
        val = sum(c1[i] * c2[j] * (bn[i][j] if i != j else qn[i])
                  for i in range(len(c1)) for j in range(len(c2)))
        return Fraction(val % denom, denom)

    def elements(self):
        """Coefficient tuples of every class, zero included."""
        ranges = [range(d) for d in self.invariant_factors]
        return itertools.product(*ranges)

    def element_order(self, coeffs) -> int:
        out = 1
        for c, d in zip(coeffs, self.invariant_factors):
            out = _lcm(out, d // gcd(d, c))
        return out

    def q_values(self, cap: int = 100_000):
        """Sorted multiset of q over all classes."""
        if self.order > cap:
            raise GroupTooLarge(f"group order {self.order} exceeds cap {cap}")
        denom = _pairing_table(self)[0]
        return tuple(Fraction(n, denom)
                     for n in sorted(_q_numerators(self)))

    def canonical_factors(self):
        """Invariant factors of the underlying group as a divisor chain."""
        return _canonical_chain(self.invariant_factors)

    def direct_sum(self, other: "FiniteQuadraticForm") -> "FiniteQuadraticForm":
        n1 = len(self.gram)
        n2 = len(other.gram)
        gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
        for i in range(n1):
            for j in range(n1):
                gram[i][j] = self.gram[i][j]
        for i in range(n2):
            for j in range(n2):
                gram[n1 + i][n1 + j] = other.gram[i][j]
        gens = tuple(tuple(g) + (Fraction(0),) * n2 for g in self.generators)
        gens += tuple((Fraction(0),) * n1 + tuple(g) for g in other.generators)
        return FiniteQuadraticForm(
            self.invariant_factors + other.invariant_factors,
            gens,
            tuple(tuple(row) for row in gram),
        )


@lru_cache(maxsize=None)
def _pairing_table(form: FiniteQuadraticForm):
    """(denominator, q numerators, pairing numerators) of the generators.

    All subsequent q/b evaluations reduce to integer arithmetic mod 2*denom.
    """
    k = len(form.invariant_factors)
    n = len(form.gram)
    pairings = [[Fraction(0)] * k for _ in range(k)]
    lifted = [form.generators[i] for i in range(k)]
    gx = []
    for x in lifted:
        gx.append(tuple(sum(Fraction(form.gram[a][b]) * x[b] for b in range(n))
                        for a in range(n)))
    for i in range(k):
        for j in range(i, k):
            val = sum(lifted[i][a] * gx[j][a] for a in range(n))
            pairings[i][j] = val
            pairings[j][i] = val
    denom = 1
    for i in range(k):
        for j in range(k):
            denom = _lcm(denom, pairings[i][j].denominator)
    qn = tuple(int(pairings[i][i] * denom) % (2 * denom) for i in range(k))
    bn = tuple(tuple(int(pairings[i][j] * denom) % (2 * denom) for j in range(k))
               for i in range(k))
    return denom, qn, bn


def _q_numerators(form: FiniteQuadraticForm):
    """q numerators over the common denominator, one per class, mod 2*denom."""
    denom, qn, bn = _pairing_table(form)
    k = len(form.invariant_factors)
    mod = 2 * denom
    out = []
    for coeffs in form.elements():
        val = 0
        for i in range(k):
            ci = coeffs[i]
            if not ci:
                continue
            val += ci * ci * qn[i]
            for j in range(i + 1, k):
                if coeffs[j]:
                    val += 2 * ci * coeffs[j] * bn[i][j]
        out.append(val % mod)
    return out


def _canonical_chain(factors) -> tuple:
    primary = {}
    for d in factors:
        rest = d
        p = 2
        while p * p <= rest:
            while rest % p == 0:
                primary.setdefault(p, []).append(p)
                e = 1
                rest //= p
                while rest % p == 0:
                    primary[p][-1] *= p
                    rest //= p
                break
            p += 1
        if rest > 1:
            primary.setdefault(rest, []).append(rest)
    # recombine prime powers into a divisor chain
    for p in primary:
        primary[p].sort()
    chain = []
    while any(primary.values()):
        d = 1
        for p in list(primary):
            if primary[p]:
                d *= primary[p].pop()
        chain.append(d)
    chain.reverse()
    return tuple(chain)


def discriminant_group(lat: Lattice) -> FiniteQuadraticForm:
    """A_L = L^dual / L with generator lifts from the Smith normal form.

    Only defined for even lattices (q needs values mod 2Z).
    """
    if not lat.is_even:
        raise OddLattice("discriminant form requires an even lattice")
    n = lat.rank
    if n == 0:
        return FiniteQuadraticForm((), (), ())
    d, u, v = smith_normal_form(lat.gram)
    factors = []
    gens = []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            factors.append(di)
            lift = tuple(Fraction(v[j][i], di) for j in range(n))
            # reduce mod Z for a canonical representative; L is inside L^dual
            gens.append(tuple(x - x.__floor__() for x in lift))
    form = FiniteQuadraticForm(tuple(factors), tuple(gens), lat.gram)
    assert form.order == abs(lat.det)
    return form


# ---------------------------------------------------------------------------
# exact Gauss sums over cyclotomic integers

@lru_cache(maxsize=None)
def _cyclotomic_poly(n: int):
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # X^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, _cyclotomic_poly(d))
    return tuple(poly)


def _poly_divexact(num, den):
    """Exact division of integer polynomials, low-degree-first coefficients."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1]:
            raise ValueError("division is not exact")
        q = c // den[-1]
        out[i] = q
        if q:
            for j, dcoef in enumerate(den):
                num[i + j] -= q * dcoef
    if any(num):
        raise ValueError("division is not exact")
    return tuple(out)


def _poly_rem(num, den):
    num = list(num)
    dn = len(den)
    for i in range(len(num) - dn, -1, -1):
        c = num[i + dn - 1]
        if c:
            q = c // den[-1]  # den is monic here
            for j, dcoef in enumerate(den):
                num[i + j] -= q * dcoef
    return num


def _is_zero_at_root_of_unity(coeffs, m: int) -> bool:
    """Does sum coeffs[k] * zeta_m^k vanish? True iff Phi_m divides it."""
    rem = _poly_rem(list(coeffs), list(_cyclotomic_poly(m)))
    return not any(rem)


def _cyclic_conv(a, b, m: int):
    out = [0] * m
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % m] += x * y
    return out


def _sqrt_vector(m_squarefree: int, m_root: int):
    """sqrt(m_squarefree) as exponent coefficients over zeta_{m_root}."""
    vec = [0] * m_root
    vec[0] = 1
    m = m_squarefree
    if m % 2 == 0:
        two = [0] * m_root
        two[m_root // 8] = 1
        two[7 * m_root // 8] = 1  # zeta_8 + zeta_8^-1 = sqrt(2)
        vec = _cyclic_conv(vec, two, m_root)
        m //= 2
    if m > 1:
        gauss = [0] * m_root
        step = m_root // m
        for k in range(m):
            gauss[(k * k * step) % m_root] += 1
        vec = _cyclic_conv(vec, gauss, m_root)
        if m % 4 == 3:
            # the odd Gauss sum is i*sqrt(m); multiply by zeta_4^3 = -i
            shifted = [0] * m_root
            for i, x in enumerate(vec):
                shifted[(i + 3 * m_root // 4) % m_root] = x
            vec = shifted
    return vec


def gauss_sum_residue(q_values, size: int) -> int:
    """s in Z/8 with sum exp(pi i q(x)) = sqrt(size) * zeta_8^s, exactly.

    q_values are the q's of every class of a nondegenerate finite quadratic
    form of the given order; the identity is Milgram's theorem.
    """
    denom = 1
    for q in q_values:
        denom = _lcm(denom, q.denominator)
    nums = [int(q * denom) for q in q_values]
    return _gauss_core(nums, denom, size)


def _gauss_core(nums, denom: int, size: int) -> int:
    if size == 1:
        return 0
    f, m = squarefree_part(size)
    m_root = _lcm(2 * denom, 8)
    modd = m // 2 if m % 2 == 0 else m
    if modd > 1:
        m_root = _lcm(m_root, modd if modd % 4 == 1 else 4 * modd)
    gvec = [0] * m_root
    scale = m_root // (2 * denom)
    for num in nums:
        gvec[(num * scale) % m_root] += 1
    sqrt_vec = _sqrt_vector(m, m_root)
    matches = []
    eighth = m_root // 8
    for s in range(8):
        target = [0] * m_root
        for i, x in enumerate(sqrt_vec):
            if x:
                target[(i + s * eighth) % m_root] += f * x
        diff = [g - t for g, t in zip(gvec, target)]
        if _is_zero_at_root_of_unity(diff, m_root):
            matches.append(s)
    if len(matches) != 1:
        raise ArithmeticError(
            f"Gauss sum did not resolve to a unique eighth root: {matches}")
    return matches[0]


def milgram_residue(form: FiniteQuadraticForm, cap: int = 100_000) -> int:
    """The signature mod 8 of the form, from its exact Gauss sum."""
    if form.order == 1:
        return 0
    if form.order > cap:
        raise GroupTooLarge(f"group order {form.order} exceeds cap {cap}")
    denom = _pairing_table(form)[0]
    return _gauss_core(_q_numerators(form), denom, form.order)


def prime_residues(form: FiniteQuadraticForm, cap: int = 100_000) -> dict:
    """Gauss-sum residue of each p-primary component, keyed by p."""
    if form.order > cap:
        raise GroupTooLarge(f"group order {form.order} exceeds cap {cap}")
    primes = set()
    for d in form.invariant_factors:
        rest = d
        p = 2
        while p * p <= rest:
            if rest % p == 0:
                primes.add(p)
                while rest % p == 0:
                    rest //= p
            p += 1
        if rest > 1:
            primes.add(rest)
    denom = _pairing_table(form)[0]
    nums_all = _q_numerators(form)
    orders = [form.element_order(c) for c in form.elements()]
    out = {}
    for p in sorted(primes):
        nums = []
        for o, num in zip(orders, nums_all):
            # p-primary part: classes of p-power order
            while o % p == 0:
                o //= p
            if o == 1:
                nums.append(num)
        out[p] = _gauss_core(nums, denom, len(nums))
    return out


# ---------------------------------------------------------------------------
# genus fingerprint and form equivalence

@dataclass(frozen=True)
class GenusTag:
    """Equality is necessary for isometry; for the indefinite rank >= 3
    lattices this library works with it is treated as sufficient, and
    `assumed_sufficient` records that scope limitation."""

    rank: int
    signature: tuple
    parity: str
    invariant_factors: tuple
    q_values: tuple
    milgram: int
    assumed_sufficient: bool


@lru_cache(maxsize=None)
def genus_tag(lat: Lattice, cap: int = 100_000) -> GenusTag:
    if not lat.is_even:
        raise OddLattice("genus tag requires an even lattice")
    form = discriminant_group(lat)
    sig = lat.signature
    return GenusTag(
        rank=lat.rank,
        signature=sig.as_tuple(),
        parity="even",
        invariant_factors=form.canonical_factors(),
        q_values=form.q_values(cap),
        milgram=milgram_residue(form, cap),
        assumed_sufficient=lat.rank >= 3 and sig.positive > 0 and sig.negative > 0,
    )


@dataclass(frozen=True)
class FormsEquivalence:
    equivalent: bool
    level: str  # "exact" or "invariant-level"

    def __bool__(self) -> bool:
        return self.equivalent


def forms_equivalent(a: FiniteQuadraticForm, b: FiniteQuadraticForm,
                     exact_bound: int = 64, node_cap: int = 1_000_000) -> FormsEquivalence:
    """Test isomorphism of finite quadratic forms.

    Up to `exact_bound` group order this is an exhaustive search for a group
    isomorphism preserving q; above the bound, the invariant comparison
    (canonical factors, q multiset, per-prime residues) decides, and a
    positive answer is labeled invariant-level.
    """
    if a.canonical_factors() != b.canonical_factors():
        return FormsEquivalence(False, "exact")
    fa = tuple(sorted((a.element_order(c), a.q(c)) for c in a.elements()))
    fb = tuple(sorted((b.element_order(c), b.q(c)) for c in b.elements()))
    if fa != fb:
        return FormsEquivalence(False, "exact")
    if a.order <= exact_bound:
        found = _exact_isomorphism_exists(a, b, node_cap)
        if found is not None:
            return FormsEquivalence(found, "exact")
    if prime_residues(a) != prime_residues(b):
        return FormsEquivalence(False, "exact")
    return FormsEquivalence(True, "invariant-level")


def _exact_isomorphism_exists(a, b, node_cap):
    """True/False by exhaustive search, None when the node cap is hit."""
    k = len(a.invariant_factors)
    if k == 0:
        return True
    b_elems = list(b.elements())
    gens_a = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    qa = [a.q(g) for g in gens_a]
    ba = [[a.b(gens_a[i], gens_a[j]) for j in range(k)] for i in range(k)]
    chosen = []
    nodes = 0

    def generates_all(images):
        seen = {tuple([0] * len(b.invariant_factors))}
        frontier = [tuple([0] * len(b.invariant_factors))]
        while frontier:
            cur = frontier.pop()
            for img in images:
                nxt = tuple((x + y) % d for x, y, d in
                            zip(cur, img, b.invariant_factors))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return len(seen) == b.order

    def rec(i):
        nonlocal nodes
        if i == k:
            return generates_all(chosen)
        for cand in b_elems:
            nodes += 1
            if nodes > node_cap:
                raise GroupTooLarge("search budget exhausted")
            d = a.invariant_factors[i]
            if b.element_order(cand) > d or d % b.element_order(cand):
                continue
            if b.q(cand) != qa[i]:
                continue
            if any(b.b(cand, chosen[j]) != ba[i][j] for j in range(i)):
                continue
            chosen.append(cand)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    try:
        return rec(0)
    except GroupTooLarge:
        return None

"""Integer lattices with a non-degenerate symmetric pairing, exactly.

A lattice is stored as its Gram matrix in a fixed basis; vectors are integer
coordinate tuples in that basis.  Invariants (determinant, signature,
divisibility), sublattice operations (saturation, orthogonal complements) and
vector enumeration all run over exact integers and rationals.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

from .intlinalg import (
    ceildiv,
    det_int,
    freeze,
    hermite_row_basis,
    identity,
    inertia,
    integer_kernel,
    mat_mul,
    mat_vec,
    rational_rank,
    rational_row_solve,
    smith_normal_form,
    transpose,
    xgcd,
)


class LatticeError(Exception):
    """Base class for lattice-layer failures."""


class NotSymmetric(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class DimensionMismatch(LatticeError):
    pass


class ZeroVector(LatticeError):
    pass


class ParseError(LatticeError):
    pass


class UnknownToken(ParseError):
    pass


class BudgetExceeded(LatticeError):
    pass


class NotDefinite(LatticeError):
    pass


class RankTooLarge(LatticeError):
    pass


class NotIsometry(LatticeError):
    pass


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int

    def as_tuple(self) -> tuple[int, int]:
        return (self.positive, self.negative)

    def __str__(self) -> str:
        return f"({self.positive},{self.negative})"


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    name: str = field(default="", compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return det_int(self.gram)

    @cached_property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def signature(self) -> Signature:
        pos, neg, zero = inertia(self.gram)
        if zero:
            raise Degenerate("degenerate Gram matrix")
        return Signature(pos, neg)

    @property
    def is_definite(self) -> bool:
        s = self.signature
        return s.positive == 0 or s.negative == 0

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"Lattice({label}, rank={self.rank})"


def make_lattice(gram, name: str = "") -> Lattice:
    """Validate a Gram matrix and wrap it as a Lattice.

    Raises NotSymmetric for non-square or asymmetric input and Degenerate
    when the determinant vanishes.
    """
    rows = freeze(gram)
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise NotSymmetric("Gram matrix is not square")
        for x in row:
            if not isinstance(x, int):
                raise NotSymmetric("Gram entries must be integers")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(f"Gram[{i}][{j}] != Gram[{j}][{i}]")
    lat = Lattice(rows, name)
    if n and lat.det == 0:
        raise Degenerate("Gram matrix has determinant 0")
    return lat


def lattice_invariants(lat: Lattice):
    """(rank, determinant, parity, Signature) of a lattice, all exact."""
    parity = "even" if lat.is_even else "odd"
    return lat.rank, lat.det, parity, lat.signature


# ---------------------------------------------------------------------------
# standard blocks and the expression mini-language

_U_GRAM = ((0, 1), (1, 0))


def _chain_adjacency(n, extra=()):
    adj = {(i, i + 1) for i in range(n - 1)}
    adj.update(extra)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = 2
    for i, j in adj:
        out[i][j] = -1
        out[j][i] = -1
    return freeze(out)


def _cartan(family: str, n: int):
    if family == "A" and n >= 1:
        return _chain_adjacency(n)
    if family == "D" and n >= 2:
        # chain on nodes 0..n-3, both end nodes n-2 and n-1 hang off node n-3
        adj = {(i, i + 1) for i in range(n - 3)}
        if n >= 3:
            adj.add((n - 3, n - 2))
            adj.add((n - 3, n - 1))
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = 2
        for i, j in adj:
            out[i][j] = -1
            out[j][i] = -1
        return freeze(out)
    if family == "E" and n in (6, 7, 8):
        # Bourbaki ordering: node 2 hangs off node 4 of the chain 1-3-4-5-...
        chain = [(0, 2), (2, 3), (3, 4), (4, 5)] + [(i, i + 1) for i in range(5, n - 1)]
        adj = set(chain) | {(1, 3)}
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            out[i][i] = 2
        for i, j in adj:
            out[i][j] = -1
            out[j][i] = -1
        return freeze(out)
    raise UnknownToken(f"no standard lattice {family}{n}")


def twist(lat: Lattice, n: int) -> Lattice:
    """The same module with the pairing multiplied by n."""
    if n == 0:
        raise Degenerate("twist by 0 is degenerate")
    gram = freeze(tuple(tuple(n * x for x in row) for row in lat.gram))
    label = f"{lat.name}({n})" if lat.name else ""
    return Lattice(gram, label)


def direct_sum(*lats: Lattice, name: str = "") -> Lattice:
    """Orthogonal direct sum; blocks pair to zero across each other."""
    total = sum(l.rank for l in lats)
    out = [[0] * total for _ in range(total)]
    off = 0
    for l in lats:
        r = l.rank
        for i in range(r):
            for j in range(r):
                out[off + i][off + j] = l.gram[i][j]
        off += r
    return Lattice(freeze(out), name)


_TOKEN_RE = re.compile(r"\s*([UADE]\d*|\[|\]|\(|\)|\+|\^|-?\d+)")


def _tokenize(expr: str):
    tokens = []
    pos = 0
    while pos < len(expr):
        m = _TOKEN_RE.match(expr, pos)
        if not m:
            bad = expr[pos:].split()[0] if expr[pos:].split() else expr[pos:]
            if bad and bad[0].isalpha():
                raise UnknownToken(f"unknown lattice token {bad!r} at position {pos}")
            raise ParseError(f"cannot tokenize {bad!r} at position {pos}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def standard(expr: str) -> Lattice:
    """Build a lattice from an expression like "U^3 + E8(-1)^2 + A2(-1)".

    Tokens: U, An, Dn, En, [m]; a block may carry a twist "(k)" and a
    repetition "^j"; blocks are joined with "+" in written order.  ADE Gram
    matrices are the Cartan matrices in Bourbaki ordering.
    """
    tokens = _tokenize(expr)
    if not tokens:
        raise ParseError("empty lattice expression")
    blocks = []
    i = 0

    def expect_int(i, what):
        if i >= len(tokens) or not re.fullmatch(r"-?\d+", tokens[i]):
            raise ParseError(f"expected an integer for {what}, got "
                             f"{tokens[i] if i < len(tokens) else 'end of input'!r}")
        return int(tokens[i]), i + 1

    while True:
        tok = tokens[i] if i < len(tokens) else None
        if tok is None:
            raise ParseError("expected a lattice block, got end of input")
        if tok == "[":
            m, i = expect_int(i + 1, "[m]")
            if i >= len(tokens) or tokens[i] != "]":
                raise ParseError("unclosed [m] block")
            i += 1
            gram = ((m,),)
        elif re.fullmatch(r"[UADE]\d*", tok):
            fam, digits = tok[0], tok[1:]
            if fam == "U":
                if digits:
                    raise UnknownToken(f"unknown lattice token {tok!r} (use U^n for powers)")
                gram = _U_GRAM
            else:
                if not digits:
                    raise UnknownToken(f"unknown lattice token {tok!r}")
                gram = _cartan(fam, int(digits))
            i += 1
        else:
            raise UnknownToken(f"unknown lattice token {tok!r}")
        if i < len(tokens) and tokens[i] == "(":
            k, i = expect_int(i + 1, "twist")
            if i >= len(tokens) or tokens[i] != ")":
                raise ParseError("unclosed twist")
            i += 1
            if k == 0:
                raise Degenerate("twist by 0 is degenerate")
            gram = freeze(tuple(tuple(k * x for x in row) for row in gram))
        power = 1
        if i < len(tokens) and tokens[i] == "^":
            power, i = expect_int(i + 1, "power")
            if power < 1:
                raise ParseError("power must be >= 1")
        blocks.extend([gram] * power)
        if i >= len(tokens):
            break
        if tokens[i] != "+":
            raise ParseError(f"expected '+', got {tokens[i]!r}")
        i += 1
    pieces = [Lattice(g) for g in blocks]
    out = direct_sum(*pieces, name=re.sub(r"\s+", "", expr))
    return make_lattice(out.gram, out.name)


# ---------------------------------------------------------------------------
# vectors

def _check_vector(lat: Lattice, v):
    if len(v) != lat.rank:
        raise DimensionMismatch(f"vector length {len(v)} != rank {lat.rank}")
    return tuple(v)


def pair(lat: Lattice, v, w) -> int:
    """The integral pairing v . w; pair(L, v, v) is the square of v."""
    v = _check_vector(lat, v)
    w = _check_vector(lat, w)
    return sum(v[i] * lat.gram[i][j] * w[j]
               for i in range(lat.rank) for j in range(lat.rank))


def square(lat: Lattice, v) -> int:
    return pair(lat, v, v)


def divisibility(lat: Lattice, v) -> int:
    """gcd of the pairings of v with the whole lattice.

    Equals the gcd of the entries of Gram . v since the basis generates.
    """
    v = _check_vector(lat, v)
    if not any(v):
        raise ZeroVector("divisibility of the zero vector is undefined")
    g = 0
    for row in lat.gram:
        g = gcd(g, sum(a * b for a, b in zip(row, v)))
    return g


def is_primitive(lat: Lattice, v) -> bool:
    """True when v is not a proper multiple of a lattice vector."""
    v = _check_vector(lat, v)
    if not any(v):
        raise ZeroVector("primitivity of the zero vector is undefined")
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


# ---------------------------------------------------------------------------
# sublattices

@dataclass(frozen=True)
class Sublattice:
    ambient: Lattice
    basis: tuple  # rows of coordinate vectors, linearly independent

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self):
        """Restricted Gram matrix (may be degenerate)."""
        b = self.basis
        amb = self.ambient
        return freeze(tuple(tuple(pair(amb, v, w) for w in b) for v in b))

    def as_lattice(self, name: str = "") -> Lattice:
        """The sublattice as an abstract lattice in its own basis."""
        return make_lattice(self.gram(), name)

    def express(self, v):
        """Rational coordinates of v in this basis, or None if outside the span."""
        _check_vector(self.ambient, v)
        if self.rank == 0:
            return () if not any(v) else None
        return rational_row_solve(self.basis, v)

    def contains(self, v) -> bool:
        coords = self.express(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def vector_from_coords(self, coords):
        n = self.ambient.rank
        out = [0] * n
        for c, row in zip(coords, self.basis):
            for j in range(n):
                out[j] += c * row[j]
        return tuple(out)


def span(lat: Lattice, vectors, *, expect_rank: int | None = None) -> Sublattice:
    """Sublattice spanned by the given coordinate vectors (must be independent)."""
    vs = freeze(vectors)
    for v in vs:
        _check_vector(lat, v)
    if vs and rational_rank(vs) != len(vs):
        raise DimensionMismatch("sublattice basis is linearly dependent")
    if expect_rank is not None and len(vs) != expect_rank:
        raise DimensionMismatch(f"expected rank {expect_rank}, got {len(vs)}")
    return Sublattice(lat, vs)


def full_sublattice(lat: Lattice) -> Sublattice:
    return Sublattice(lat, identity(lat.rank))


def saturation(sub: Sublattice) -> tuple[Sublattice, int]:
    """Smallest saturated sublattice containing sub, with the index [sat : sub].

    Computed from the Smith normal form of the basis matrix: the saturation is
    generated by the first k rows of V^{-1}, and the index is the product of
    the elementary divisors.
    """
    if sub.rank == 0:
        return sub, 1
    b = sub.basis
    n = sub.ambient.rank
    d, _, v = smith_normal_form(b)
    k = len(b)
    index = 1
    for i in range(k):
        index *= d[i][i]
    vinv = _int_inverse_unimodular(v)
    sat_rows = hermite_row_basis(vinv[:k], n)
    return Sublattice(sub.ambient, sat_rows), index


def _int_inverse_unimodular(v):
    from .intlinalg import integer_inverse
    return integer_inverse(v)


def is_saturated(sub: Sublattice) -> bool:
    return saturation(sub)[1] == 1


def orthogonal_complement(sub: Sublattice) -> Sublattice:
    """{x in the ambient lattice : x . s = 0 for all s in sub}; always saturated."""
    lat = sub.ambient
    n = lat.rank
    if sub.rank == 0:
        return full_sublattice(lat)
    rows = tuple(mat_vec(lat.gram, v) for v in sub.basis)  # pairing conditions
    kern = integer_kernel(rows, n)
    return Sublattice(lat, kern)


def intersect(sub1: Sublattice, sub2: Sublattice) -> Sublattice:
    """Intersection of two sublattices of the same ambient lattice."""
    if sub1.ambient.gram != sub2.ambient.gram:
        raise DimensionMismatch("sublattices live in different ambient lattices")
    if sub1.rank == 0 or sub2.rank == 0:
        return Sublattice(sub1.ambient, ())
    a = list(sub1.basis)
    b = list(sub2.basis)
    # left kernel of the stacked matrix [A; -B]: coefficients (u, v) with uA = vB
    stacked_rows = tuple(a) + tuple(tuple(-x for x in row) for row in b)
    kern = integer_kernel(transpose(stacked_rows), len(stacked_rows))
    vecs = []
    for coeffs in kern:
        u = coeffs[:len(a)]
        vec = [0] * sub1.ambient.rank
        for c, row in zip(u, a):
            for j in range(len(vec)):
                vec[j] += c * row[j]
        if any(vec):
            vecs.append(tuple(vec))
    return Sublattice(sub1.ambient, hermite_row_basis(vecs, sub1.ambient.rank))


# ---------------------------------------------------------------------------
# enumeration

def sign_normalized(v):
    """v or -v, whichever has a positive leading nonzero coordinate."""
    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return tuple(-y for y in v)
    return tuple(v)


def _box_vectors(rank: int, radius: int, cap: int):
    total = (2 * radius + 1) ** rank
    if total > cap:
        raise BudgetExceeded(
            f"{total} candidate vectors exceed the enumeration cap {cap}")
    return itertools.product(range(-radius, radius + 1), repeat=rank)


def _ldl(gram):
    """LDL^T data for a positive definite rational Gram matrix."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i] - sum(d[k] * l[k][i] * l[k][i] for k in range(i))
        if d[i] <= 0:
            raise NotDefinite("matrix is not positive definite")
        for j in range(i + 1, n):
            l[i][j] = (a[i][j] - sum(d[k] * l[k][i] * l[k][j] for k in range(i))) / d[i]
    return d, l


def _sq_interval(c: Fraction, r: Fraction):
    """Integers x with (x + c)^2 <= r, as a range object."""
    if r < 0:
        return range(0)
    b = c.denominator
    a = c.numerator
    t = isqrt((r.numerator * b * b) // r.denominator)
    return range(ceildiv(-t - a, b), (t - a) // b + 1)


def short_vectors(lat: Lattice, norm: int):
    """All vectors of the given square in a definite lattice, sorted.

    Exact Fincke-Pohst enumeration; complete regardless of coordinate size.
    """
    sig = lat.signature
    if sig.positive and sig.negative:
        raise NotDefinite("short-vector enumeration needs a definite lattice")
    flip = sig.positive == 0
    target = -norm if flip else norm
    if target < 0 or (target == 0):
        return ()
    gram = tuple(tuple(-x for x in row) for row in lat.gram) if flip else lat.gram
    n = lat.rank
    d, l = _ldl(gram)
    out = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0 and any(x):
                out.append(tuple(x))
            return
        c = sum(l[i][j] * x[j] for j in range(i + 1, n))
        for xi in _sq_interval(c, remaining / d[i]):
            x[i] = xi
            rec(i - 1, remaining - d[i] * (xi + c) ** 2)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return tuple(sorted(out))


_divisibility_fn = divisibility
_is_primitive_fn = is_primitive


def enumerate_vectors(lat: Lattice, *, square=None, divisibility=None,
                      primitive=None, radius: int = 3, cap: int = 2_000_000):
    """Enumerate vectors satisfying the supplied constraints, sorted lexicographically.

    For a definite lattice with a square constraint the enumeration is
    norm-complete (every vector of that square, whatever its coordinates).
    Otherwise it scans the coordinate box [-radius, radius]^rank and raises
    BudgetExceeded past the candidate cap.  The zero vector is never reported.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    if square is not None and lat.rank and lat.is_definite:
        candidates = short_vectors(lat, square)
    else:
        candidates = (v for v in _box_vectors(lat.rank, radius, cap) if any(v))
    out = []
    for v in candidates:
        if square is not None and pair(lat, v, v) != square:
            continue
        if divisibility is not None and _divisibility_fn(lat, v) != divisibility:
            continue
        if primitive is not None and _is_primitive_fn(lat, v) != primitive:
            continue
        out.append(tuple(v))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# isometries

@dataclass(frozen=True)
class Isometry:
    source: Lattice
    target: Lattice
    matrix: tuple  # columns are the images of the source basis vectors

    def apply(self, v):
        _check_vector(self.source, v)
        return mat_vec(self.matrix, v)


def make_isometry(source: Lattice, target: Lattice, matrix) -> Isometry:
    m = freeze(matrix)
    if len(m) != target.rank or any(len(row) != source.rank for row in m):
        raise NotIsometry("matrix shape does not match the lattices")
    mt = transpose(m)
    if mat_mul(mat_mul(mt, target.gram), m) != source.gram:
        raise NotIsometry("matrix does not carry one Gram form to the other")
    return Isometry(source, target, m)


def is_isometric_definite(lat: Lattice, other: Lattice):
    """Search for an exact isometry between definite lattices of rank <= 12.

    Backtracking over short-vector images with norm and pairing pruning.
    Returns an Isometry witness or None; None is a proof of absence because
    the candidate lists are norm-complete.
    """
    for l in (lat, other):
        s = l.signature
        if s.positive and s.negative:
            raise NotDefinite("both lattices must be definite")
    if lat.rank > 12 or other.rank > 12:
        raise RankTooLarge("witness search is limited to rank <= 12")
    if lat.rank != other.rank or lat.det != other.det:
        return None
    if lat.signature != other.signature:
        return None
    norms = [lat.gram[i][i] for i in range(lat.rank)]
    cands = {}
    for nm in set(norms):
        cands[nm] = short_vectors(other, nm)
        if not cands[nm]:
            return None
    chosen = []

    def ok(v):
        i = len(chosen)
        return all(pair(other, v, w) == lat.gram[i][j] for j, w in enumerate(chosen))

    def rec():
        i = len(chosen)
        if i == lat.rank:
            return True
        for v in cands[norms[i]]:
            if ok(v):
                chosen.append(v)
                if rec():
                    return True
                chosen.pop()
        return False

    if not rec():
        return None
    cols = freeze(transpose(chosen))
    return make_isometry(lat, other, cols)


# ---------------------------------------------------------------------------
# text serialization

def write_lattice(lat: Lattice, extras: dict | None = None) -> str:
    """Text form: a header line, then the Gram rows; optional marked sections."""
    name = re.sub(r"\s+", "_", lat.name) or "L"
    lines = [f"lattice {name} rank {lat.rank}"]
    for row in lat.gram:
        lines.append(" ".join(str(x) for x in row))
    if extras:
        ns = extras.get("ns")
        if ns is not None:
            lines.append(f"ns {len(ns)}")
            for row in ns:
                lines.append(" ".join(str(x) for x in row))
        if "projective" in extras:
            lines.append(f"projective {int(extras['projective'])}")
    return "\n".join(lines) + "\n"


def read_lattice_document(text: str):
    """Parse the text format; returns (Lattice, extras dict).

    Parse failures raise ParseError naming the line and the offending token.
    """
    lines = text.splitlines()
    idx = 0

    def next_line():
        nonlocal idx
        while idx < len(lines) and not lines[idx].strip():
            idx += 1
        if idx >= len(lines):
            return None, idx
        idx += 1
        return lines[idx - 1].strip(), idx

    def int_row(line, lineno, n):
        parts = line.split()
        if len(parts) != n:
            raise ParseError(f"line {lineno}: expected {n} integers, got {len(parts)}")
        out = []
        for tok in parts:
            try:
                out.append(int(tok))
            except ValueError:
                raise ParseError(f"line {lineno}: bad integer {tok!r}") from None
        return tuple(out)

    header, lineno = next_line()
    if header is None:
        raise ParseError("line 1: empty document")
    m = re.fullmatch(r"lattice\s+(\S+)\s+rank\s+(\d+)", header)
    if not m:
        bad = header.split()[0] if header.split() else header
        raise ParseError(f"line {lineno}: bad header token {bad!r}")
    name, rank = m.group(1), int(m.group(2))
    gram = []
    for _ in range(rank):
        line, lineno = next_line()
        if line is None:
            raise ParseError(f"line {lineno}: missing Gram row")
        gram.append(int_row(line, lineno, rank))
    lat = make_lattice(gram, name)
    extras = {}
    while True:
        line, lineno = next_line()
        if line is None:
            break
        if line.startswith("ns "):
            try:
                count = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError(f"line {lineno}: bad ns header {line!r}") from None
            rows = []
            for _ in range(count):
                row_line, lineno = next_line()
                if row_line is None:
                    raise ParseError(f"line {lineno}: missing ns row")
                rows.append(int_row(row_line, lineno, rank))
            extras["ns"] = tuple(rows)
        elif line.startswith("projective"):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("0", "1"):
                raise ParseError(f"line {lineno}: bad projective flag {line!r}")
            extras["projective"] = parts[1] == "1"
        else:
            bad = line.split()[0]
            raise ParseError(f"line {lineno}: unknown section token {bad!r}")
    return lat, extras


def read_lattice(text: str) -> Lattice:
    lat, _ = read_lattice_document(text)
    return lat

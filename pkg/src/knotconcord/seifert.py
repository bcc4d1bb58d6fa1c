"""Seifert matrices and the invariants read off from them.

A knot is presented either by an explicit integer Seifert matrix or by a
constructor (torus knot, twisted double, companion infection, connected
sum).  Construction produces a KnotModel: a list of summands, each an
integer Seifert matrix plus an optional record of bands carrying
companion knots.  All abelian invariants (Alexander polynomial,
signatures, cover homology, linking forms) depend only on the block sum
of the matrices, because tying a 0-framed companion into a band changes
no pairwise linking number of the spine curves.  The companion data only
feeds the slice-obstruction drivers.
"""

from fractions import Fraction
from math import gcd

from . import linalg
from .cyclo import CyclotomicField, RatLaurent
from .errors import PreconditionError, SingularAtT, UnsupportedGenus
from .kernels import hermitian_inertia


class SeifertMatrix:
    """Square integer matrix V with det(V - V^T) = 1."""

    def __init__(self, entries):
        rows = [list(r) for r in entries]
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise PreconditionError("Seifert matrix must be square")
            for x in r:
                if not isinstance(x, int):
                    raise PreconditionError("Seifert matrix entries must be integers")
        skew = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if linalg.det_bareiss(skew) != 1:
            raise PreconditionError("det(V - V^T) must equal 1")
        self.entries = rows
        self.size = n

    @property
    def genus(self):
        return self.size // 2

    def transpose(self):
        return SeifertMatrix(linalg.transpose(self.entries))

    def mirror(self):
        # mirror image: negate the transposed matrix
        return SeifertMatrix([[-x for x in row] for row in linalg.transpose(self.entries)])

    def block_sum(self, other):
        n, m = self.size, other.size
        out = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                out[i][j] = self.entries[i][j]
        for i in range(m):
            for j in range(m):
                out[n + i][n + j] = other.entries[i][j]
        return SeifertMatrix(out)

    def symmetrized(self):
        return [[self.entries[i][j] + self.entries[j][i] for j in range(self.size)]
                for i in range(self.size)]

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self.entries == other.entries

    def __repr__(self):
        return "SeifertMatrix(%r)" % (self.entries,)


def alexander(V):
    """Alexander polynomial det(V - t V^T), normalized to lowest exponent 0
    and positive leading coefficient."""
    if isinstance(V, KnotModel):
        V = V.matrix
    n = V.size
    if n == 0:
        return RatLaurent({0: Fraction(1)})
    # degree <= n, so n+1 integer sample points determine the polynomial
    samples = []
    for k in range(n + 1):
        M = [[V.entries[i][j] - k * V.entries[j][i] for j in range(n)] for i in range(n)]
        samples.append(linalg.det_bareiss(M))
    coeffs = _interpolate_integer_poly(samples)
    return RatLaurent({e: Fraction(c) for e, c in enumerate(coeffs) if c}).normalized()


def _interpolate_integer_poly(values):
    # values[k] = f(k); Lagrange over Q, result must be integral
    n = len(values)
    coeffs = [Fraction(0)] * n
    for k, v in enumerate(values):
        basis = [Fraction(1)]
        denom = 1
        for m in range(n):
            if m == k:
                continue
            denom *= (k - m)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, c in enumerate(basis):
                nxt[i] += c * (-m)
                nxt[i + 1] += c
            basis = nxt
        for i, c in enumerate(basis):
            coeffs[i] += Fraction(v, denom) * c
    out = []
    for c in coeffs:
        assert c.denominator == 1
        out.append(c.numerator)
    while out and out[-1] == 0:
        out.pop()
    return out


def lt_signature(V, t):
    """Signature of (1-w)V + (1-conj(w))V^T at w = exp(2*pi*i*t), t in (0,1).

    Computed exactly over the cyclotomic field of the reduced denominator.
    Raises SingularAtT when the form is singular there, which happens
    exactly when w is a root of the Alexander polynomial.
    """
    if isinstance(V, KnotModel):
        V = V.matrix
    t = Fraction(t)
    if not 0 < t < 1:
        raise PreconditionError("t must lie strictly between 0 and 1")
    a, d = t.numerator, t.denominator
    if V.size == 0:
        return 0
    F = CyclotomicField(d)
    one = F.one()
    c1 = F.sub(one, F.zeta_elt(a))          # 1 - w
    c2 = F.sub(one, F.zeta_elt(d - a))      # 1 - conj(w)
    n = V.size
    B = [[F.add(F.scale(c1, V.entries[r][c]), F.scale(c2, V.entries[c][r]))
          for c in range(n)] for r in range(n)]
    plus, minus, zero = hermitian_inertia(F, B)
    if zero:
        raise SingularAtT("form singular at t = %s" % (t,))
    return plus - minus


def signature_profile(V, points):
    """lt_signature at each point of an iterable of rationals."""
    return [(Fraction(pt), lt_signature(V, pt)) for pt in points]


class FoxMilnorResult:
    def __init__(self, passes, pairing, failures):
        self.passes = passes
        self.pairing = pairing      # list of (factor, reciprocal factor, multiplicity)
        self.failures = failures    # human-readable reasons
    def __repr__(self):
        return "FoxMilnorResult(passes=%r)" % (self.passes,)


def fox_milnor(V):
    """Test whether the Alexander polynomial factors as f(t) f(1/t) up to
    units over Q: every irreducible factor must pair with its reciprocal
    at equal multiplicity, and self-reciprocal factors must occur to even
    powers."""
    delta = alexander(V)
    factors = _rational_factors(delta)
    mult = {}
    for coeffs, e in factors:
        mult[coeffs] = mult.get(coeffs, 0) + e
    pairing = []
    failures = []
    seen = set()
    for coeffs in sorted(mult):
        if coeffs in seen:
            continue
        rec = _reciprocal_coeffs(coeffs)
        if rec == coeffs:
            seen.add(coeffs)
            if mult[coeffs] % 2:
                failures.append("self-reciprocal factor %r has odd multiplicity %d"
                                % (list(coeffs), mult[coeffs]))
            else:
                pairing.append((coeffs, coeffs, mult[coeffs]))
        else:
            seen.add(coeffs)
            seen.add(rec)
            if mult.get(rec, 0) != mult[coeffs]:
                failures.append("factor %r (multiplicity %d) does not match "
                                "reciprocal %r (multiplicity %d)"
                                % (list(coeffs), mult[coeffs], list(rec), mult.get(rec, 0)))
            else:
                pairing.append((coeffs, rec, mult[coeffs]))
    return FoxMilnorResult(not failures, pairing, failures)


def _rational_factors(poly):
    """Irreducible factors of a Laurent polynomial over Q, as primitive
    integer coefficient tuples (ascending, positive leading coefficient)
    with multiplicities.  Unit content is dropped."""
    from sympy import Poly, Symbol, factor_list

    norm = poly.normalized()
    deg = max(norm.coeffs) if norm.coeffs else 0
    ints = [0] * (deg + 1)
    for e, c in norm.coeffs.items():
        assert c.denominator == 1
        ints[e] = c.numerator
    if deg == 0:
        return []
    x = Symbol("x")
    expr = sum(c * x ** e for e, c in enumerate(ints))
    _, facs = factor_list(Poly(expr, x))
    out = []
    for f, e in facs:
        cs = [int(c) for c in reversed(f.all_coeffs())]
        out.append((_canonical_coeffs(cs), int(e)))
    return out


def _canonical_coeffs(cs):
    while cs and cs[-1] == 0:
        cs = cs[:-1]
    lo = 0
    while lo < len(cs) and cs[lo] == 0:
        lo += 1
    cs = cs[lo:]
    g = 0
    for c in cs:
        g = gcd(g, abs(c))
    if g:
        cs = [c // g for c in cs]
    if cs and cs[-1] < 0:
        cs = [-c for c in cs]
    return tuple(cs)


def _reciprocal_coeffs(coeffs):
    return _canonical_coeffs(list(reversed(coeffs)))


def metabolizing_vectors(V, bound=10):
    """Primitive integer vectors v with v^T V v = 0, for 2x2 matrices,
    searched over |components| <= bound and normalized so the first
    nonzero component is positive."""
    if isinstance(V, KnotModel):
        V = V.matrix
    if V.size != 2:
        raise UnsupportedGenus("isotropic vector search implemented for genus 1 only")
    found = set()
    for x in range(0, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) == (0, 0) or gcd(x, abs(y)) != 1:
                continue
            if x == 0 and y < 0:
                continue
            row0 = V.entries[0][0] * x + V.entries[0][1] * y
            row1 = V.entries[1][0] * x + V.entries[1][1] * y
            if x * row0 + y * row1 == 0:
                found.add((x, y))
    return sorted(found)


# ---------------------------------------------------------------------------
# Braid fence surfaces for torus knots.
#
# The closure of a positive braid word bounds the fence surface: one disk
# per strand, one half-twisted band per letter.  H_1 is generated by one
# ladder circle for each pair of consecutive bands in the same column.
# Same-column linking is normalized so that torus(2,3) yields exactly
# [[-1, 1], [0, -1]].  The adjacent-column constants below were pinned by
# matching Alexander polynomials (cyclotomic product formula) and
# signatures (Murasugi values) for T(3,4), T(3,5), T(4,5) and T(2,7).
# ---------------------------------------------------------------------------

# (V[x][y], V[y][x]) for x in column c, y in column c+1
_CROSS_LATER = (0, -1)   # x starts first:  x.start < y.start < x.end < y.end
_CROSS_EARLIER = (0, 1)  # y starts first:  y.start < x.start < y.end < x.end


def _braid_fence_matrix(word, strands):
    occurrences = {}
    for pos, col in enumerate(word):
        if not 1 <= col < strands:
            raise PreconditionError("braid letter out of range")
        occurrences.setdefault(col, []).append(pos)
    gens = []
    for col in sorted(occurrences):
        ts = occurrences[col]
        for k in range(len(ts) - 1):
            gens.append((col, ts[k], ts[k + 1]))
    g = len(gens)
    V = [[0] * g for _ in range(g)]
    for i in range(g):
        V[i][i] = -1
    for i in range(g):
        ci, ai, bi = gens[i]
        for j in range(i + 1, g):
            cj, aj, bj = gens[j]
            if ci == cj and bi == aj:
                V[i][j] = 1          # consecutive ladder rungs share a band
            elif cj == ci + 1:
                if ai < aj < bi < bj:
                    V[i][j], V[j][i] = _CROSS_LATER
                elif aj < ai < bj < bi:
                    V[i][j], V[j][i] = _CROSS_EARLIER
            elif cj == ci - 1:
                if aj < ai < bj < bi:
                    V[j][i], V[i][j] = _CROSS_LATER
                elif ai < aj < bi < bj:
                    V[j][i], V[i][j] = _CROSS_EARLIER
    return SeifertMatrix(V)


def torus_matrix(p, q):
    """Seifert matrix of the (p,q) torus knot from its fence surface.
    Negative parameters give the mirror image."""
    if gcd(abs(p), abs(q)) != 1:
        raise PreconditionError("torus knot parameters must be coprime")
    if abs(p) < 2 or abs(q) < 2:
        raise PreconditionError("torus knot parameters must exceed 1 in magnitude")
    mirror = (p < 0) != (q < 0)
    p, q = abs(p), abs(q)
    if p > q:
        p, q = q, p
    word = list(range(1, p)) * q
    V = _braid_fence_matrix(word, p)
    return V.mirror() if mirror else V


def twisted_double_matrix(a):
    """Genus-1 double of the unknot with a(a+1) full twists in one band."""
    if not isinstance(a, int) or a < 1:
        raise PreconditionError("twist parameter must be a positive integer")
    return SeifertMatrix([[-1, 1], [0, a * (a + 1)]])


# base surface used for companion-carrying genus-1 knots: figure-eight
_GENUS1_BASE = [[1, 1], [0, -1]]


class Infection:
    """A companion knot tied into a named band of the base surface."""

    __slots__ = ("curve", "companion", "pattern", "param")

    def __init__(self, curve, companion, pattern, param):
        if pattern not in ("double_lift", "triple_lift"):
            raise PreconditionError("unknown infection pattern %r" % (pattern,))
        if pattern == "double_lift":
            if not isinstance(param, int) or param < 1:
                raise PreconditionError("double_lift parameter must be a positive integer")
        else:
            if param not in (1, -1):
                raise PreconditionError("triple_lift parameter must be +1 or -1")
        if not companion.matrix_only:
            raise PreconditionError("companion knots must be matrix-presented")
        self.curve = str(curve)
        self.companion = companion
        self.pattern = pattern
        self.param = param


class Summand:
    __slots__ = ("matrix", "token", "infections")

    def __init__(self, matrix, token=None, infections=()):
        self.matrix = matrix
        self.token = token
        self.infections = tuple(infections)


class KnotModel:
    """A knot built from summands; see the module docstring."""

    def __init__(self, summands, spec=None):
        self.summands = list(summands)
        self.spec = spec

    @property
    def matrix(self):
        out = SeifertMatrix([])
        for s in self.summands:
            out = out.block_sum(s.matrix)
        return out

    @property
    def matrix_only(self):
        return all(not s.infections and s.token is None for s in self.summands)

    @property
    def infections(self):
        out = []
        for s in self.summands:
            out.extend(s.infections)
        return out

    @property
    def tokens(self):
        return [s.token for s in self.summands if s.token is not None]

    def mirror(self):
        if not self.matrix_only:
            raise PreconditionError("mirroring implemented for matrix-presented knots only")
        return KnotModel([Summand(s.matrix.mirror()) for s in self.summands])


def build(spec):
    """Build a KnotModel from a plain-dict description.

    Kinds:
      {"kind": "matrix", "entries": [[...], ...]}
      {"kind": "torus", "p": int, "q": int}
      {"kind": "twisted_double", "a": int}
      {"kind": "mirror", "knot": spec}
      {"kind": "sum", "summands": [{"sign": +-1, "knot": spec}, ...]}
      {"kind": "order_two", "companion": spec}
      {"kind": "satellite", "base": spec, "base_token": str or None,
       "infections": [{"curve": str, "companion": spec,
                       "pattern": "double_lift"|"triple_lift", "param": int}, ...]}
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise PreconditionError("knot description must be a dict with a 'kind' field")
    kind = spec["kind"]
    if kind == "matrix":
        return KnotModel([Summand(SeifertMatrix(spec["entries"]))], spec)
    if kind == "torus":
        return KnotModel([Summand(torus_matrix(int(spec["p"]), int(spec["q"])))], spec)
    if kind == "twisted_double":
        return KnotModel([Summand(twisted_double_matrix(int(spec["a"]))) ], spec)
    if kind == "mirror":
        return KnotModel(build(spec["knot"]).mirror().summands, spec)
    if kind == "sum":
        summands = []
        for item in spec["summands"]:
            sign = int(item.get("sign", 1))
            if sign not in (1, -1):
                raise PreconditionError("summand sign must be +1 or -1")
            part = build(item["knot"])
            if sign == -1:
                part = part.mirror()
            summands.extend(part.summands)
        return KnotModel(summands, spec)
    if kind == "order_two":
        companion = build(spec["companion"])
        if not companion.matrix_only:
            raise PreconditionError("companion knots must be matrix-presented")
        base = SeifertMatrix(_GENUS1_BASE)
        inf = [Infection("B1", companion, "double_lift", 1),
               Infection("B2", companion.mirror(), "double_lift", 2)]
        return KnotModel([Summand(base, None, inf)], spec)
    if kind == "satellite":
        base = build(spec["base"])
        if not base.matrix_only:
            raise PreconditionError("satellite base must be matrix-presented")
        token = spec.get("base_token")
        infections = [Infection(i["curve"], build(i["companion"]), i["pattern"], i["param"])
                      for i in spec.get("infections", ())]
        return KnotModel([Summand(base.matrix, token, infections)], spec)
    raise PreconditionError("unknown knot kind %r" % (kind,))

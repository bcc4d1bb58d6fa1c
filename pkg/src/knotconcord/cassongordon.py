"""Signature-growth and discriminant obstruction calculus.

Two algebraic carriers feed the slice-obstruction drivers.  A SigGrowth is
the class of a signature-defect sequence (c * 2^k) modulo bounded sequences;
only the rational growth coefficient c survives, and nonvanishing of c is
the obstruction.  A DiscExpr is a formal product of shifted Alexander
polynomial factors f(zeta^a t) over p-th roots of unity, together with
opaque self-conjugate residual tokens for base knots whose discriminant is
not presentable; the norm test decides membership in the subgroup of norms
g(t) * conj(g)(t) by multiplicity parity, under genericity hypotheses that
are checked exactly where checkable.

Satellite rules translate a character's values on the lifts of an infection
curve into signature shifts and discriminant factors.  Three drivers
assemble end-to-end reports: the doubled-unknot family over its 2-fold
cover, the order-two satellite family over Z_5 + Z_5, and mutated-satellite
sums over the 3-fold cover with its mod-7 eigencharacter calculus.
"""

import itertools
from fractions import Fraction
from math import gcd, isqrt

from . import linalg
from .cover import linking_form, direct_sum
from .cyclo import RatLaurent, poly_gcd_q, _is_prime
from .errors import (PreconditionError, UnsupportedShape, HypothesisUnverified,
                     BudgetExceeded, InternalInvariantViolation)
from .metabolizers import (DEFAULT_BUDGET, enumerate_metabolizers,
                           vanishing_chars, find_odd_char, admissible_pair)
from .seifert import (SeifertMatrix, KnotModel, build, alexander, lt_signature,
                      torus_matrix, twisted_double_matrix)

NORM = "NORM"
NOT_NORM = "NOT_NORM"
UNKNOWN = "UNKNOWN"

# genus-2 carrier surface for the mutated-satellite family; its Alexander
# polynomial is the square (2t^2-5t+2)^2 and its 3-fold cover is (Z_49)^2
# with deck eigenvalues 2 and 4 on the mod-7 character space
_SATELLITE_BASE = [[-1, 1, 1, 1],
                   [0, 2, 0, 0],
                   [1, 0, -1, 1],
                   [1, 0, 0, 2]]

_MODELING_NOTE = ("character values on companion lifts are taken nonzero "
                  "where the construction requires it; this is a modeling "
                  "assumption, not a computed fact")


def satellite_base_matrix():
    return SeifertMatrix([row[:] for row in _SATELLITE_BASE])


def mutant_family_spec(companion_spec, mutated=True):
    """Build description of the genus-2 satellite with the companion tied
    into both bands.  The positive mutant flips the sign pattern of the
    character values on the second band's lifts; the plain satellite keeps
    both positive."""
    return {"kind": "satellite",
            "base": {"kind": "matrix",
                     "entries": [row[:] for row in _SATELLITE_BASE]},
            "base_token": "K",
            "infections": [
                {"curve": "B1", "companion": companion_spec,
                 "pattern": "triple_lift", "param": 1},
                {"curve": "B2", "companion": companion_spec,
                 "pattern": "triple_lift", "param": -1 if mutated else 1}]}


# ---------------------------------------------------------------------------
# carriers


class SigGrowth:
    """Growth class of a signature sequence (c * 2^k) modulo bounded
    sequences; c is the whole invariant."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient=0):
        self.coefficient = Fraction(coefficient)

    def is_zero(self):
        return self.coefficient == 0

    def __eq__(self, other):
        return isinstance(other, SigGrowth) and self.coefficient == other.coefficient

    def __repr__(self):
        return "SigGrowth(%s)" % (self.coefficient,)

    def to_json(self):
        c = self.coefficient
        return {"coefficient": int(c) if c.denominator == 1 else str(c)}


def sig_add(x, y):
    """Growth coefficients add under connected sum with a split character."""
    return SigGrowth(x.coefficient + y.coefficient)


class DiscExpr:
    """Formal discriminant class modulo norms.

    factors maps (polynomial key, shift mod p) to an integer multiplicity;
    tokens maps opaque residual symbols to multiplicities.  Every factor
    class here is fixed by conjugation (the polynomials are symmetric, so
    conj f(zeta^a t) is a unit times f(zeta^a t)), and tokens are declared
    self-conjugate, so inverses agree with the class itself modulo norms
    and only multiplicity parity matters to the norm test.
    """

    __slots__ = ("p", "factors", "tokens")

    def __init__(self, p=7, factors=None, tokens=None):
        self.p = int(p)
        if self.p < 2:
            raise PreconditionError("root-of-unity modulus must be at least 2")
        self.factors = {}
        for (key, shift), mult in (factors or {}).items():
            if mult:
                self.factors[(tuple(int(c) for c in key), int(shift) % self.p)] = int(mult)
        self.tokens = {k: int(m) for k, m in (tokens or {}).items() if m}

    def times_factor(self, key, shift, mult=1):
        factors = dict(self.factors)
        k = (tuple(int(c) for c in key), int(shift) % self.p)
        factors[k] = factors.get(k, 0) + int(mult)
        return DiscExpr(self.p, factors, self.tokens)

    def times_token(self, token, mult=1):
        tokens = dict(self.tokens)
        tokens[token] = tokens.get(token, 0) + int(mult)
        return DiscExpr(self.p, self.factors, tokens)

    def is_trivial(self):
        return not self.factors and not self.tokens

    def shift_multiset(self, key):
        """Sorted multiset of shifts carried by one polynomial, with
        multiplicity; handy against the exponent-set helpers."""
        out = []
        for (k, shift), mult in self.factors.items():
            if k == tuple(key):
                out.extend([shift] * mult)
        return tuple(sorted(out))

    def __eq__(self, other):
        return (isinstance(other, DiscExpr) and self.p == other.p
                and self.factors == other.factors and self.tokens == other.tokens)

    def __repr__(self):
        return "DiscExpr(p=%d, %d factor classes, %d tokens)" % (
            self.p, len(self.factors), len(self.tokens))

    def to_json(self):
        facs = [{"poly": list(key), "shift": shift, "multiplicity": mult}
                for (key, shift), mult in sorted(self.factors.items())]
        toks = [{"token": _token_json(tok), "multiplicity": mult}
                for tok, mult in sorted(self.tokens.items())]
        return {"p": self.p, "factors": facs, "tokens": toks}


def _token_json(token):
    if isinstance(token, tuple):
        return [_token_json(t) for t in token]
    return token


def disc_mul(x, y):
    """Discriminants multiply under connected sum with a split character."""
    if x.p != y.p:
        raise PreconditionError("cannot multiply expressions over different moduli")
    factors = dict(x.factors)
    for k, m in y.factors.items():
        factors[k] = factors.get(k, 0) + m
    tokens = dict(x.tokens)
    for k, m in y.tokens.items():
        tokens[k] = tokens.get(k, 0) + m
    return DiscExpr(x.p, factors, tokens)


def residual_token(base_id, char_id):
    """Opaque self-conjugate discriminant symbol for an unpresentable base
    knot at a character, keyed up to deck translation and conjugation."""
    return ("delta", str(base_id), char_id)


def _canonical_char_token(a, b, p=7):
    # deck translates scale the two eigencoordinates by 2 and 4, and the
    # conjugate character negates both; all of them share one residual class
    orb = []
    x, y = a % p, b % p
    for _ in range(3):
        orb.append((x, y))
        orb.append(((-x) % p, (-y) % p))
        x, y = (2 * x) % p, (4 * y) % p
    return min(orb)


# ---------------------------------------------------------------------------
# polynomial keys and genericity hypotheses


def _companion_matrix(J):
    if isinstance(J, (list, tuple)) and J and isinstance(J[0], (list, tuple)):
        return SeifertMatrix([list(r) for r in J])
    if isinstance(J, SeifertMatrix):
        return J
    if isinstance(J, KnotModel):
        if not J.matrix_only:
            raise PreconditionError("companion knots must be matrix-presented")
        return J.matrix
    if isinstance(J, dict):
        return _companion_matrix(build(J))
    raise PreconditionError(
        "companion must be a Seifert matrix, a knot model, or a build() description")


def _poly_key(poly):
    """Canonical integer coefficient tuple (ascending, lowest exponent 0,
    positive leading coefficient) identifying a polynomial factor."""
    norm = poly.normalized()
    if norm.is_zero():
        raise PreconditionError("zero polynomial cannot be a discriminant factor")
    lo, hi = norm.degree_span()
    out = []
    for e in range(hi + 1):
        c = norm.coeffs.get(e, Fraction(0))
        if c.denominator != 1:
            raise PreconditionError("factor polynomials must have integer coefficients")
        out.append(int(c))
    return tuple(out)


def _poly_from_key(key):
    return RatLaurent.from_list([Fraction(c) for c in key])


def _resolve_poly(J):
    if isinstance(J, RatLaurent):
        return J
    if isinstance(J, (list, tuple)) and not (J and isinstance(J[0], (list, tuple))):
        return _poly_from_key(J)
    return alexander(_companion_matrix(J))


def _squarefree_part(n):
    # signed squarefree kernel by trial division; inputs here are tiny
    if n == 0:
        return 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * n


class PolyHypotheses:
    """Genericity report for one companion polynomial."""

    def __init__(self, coefficients, family, corrected, symmetric,
                 discriminant, q_irreducible, zeta7_irreducible,
                 not_seventh_power_composition, notes):
        self.coefficients = tuple(coefficients)
        self.family = family
        self.corrected = corrected
        self.symmetric = symmetric
        self.discriminant = discriminant
        self.q_irreducible = q_irreducible
        self.zeta7_irreducible = zeta7_irreducible
        self.not_seventh_power_composition = not_seventh_power_composition
        self.notes = list(notes)
        self.passes = bool(symmetric and q_irreducible and zeta7_irreducible
                           and not_seventh_power_composition)

    def failures(self):
        out = []
        if not self.symmetric:
            out.append("not symmetric")
        if not self.q_irreducible:
            out.append("reducible over Q (discriminant %d is a square)"
                       % self.discriminant)
        elif not self.zeta7_irreducible:
            out.append("splits over the 7th cyclotomic field "
                       "(discriminant has squarefree part -7)")
        if not self.not_seventh_power_composition:
            out.append("is a monomial times a polynomial in t^7")
        return out

    def __repr__(self):
        return "PolyHypotheses(%r, passes=%r)" % (self.coefficients, self.passes)

    def to_json(self):
        return {"coefficients": list(self.coefficients),
                "family": self.family,
                "corrected": self.corrected,
                "symmetric": self.symmetric,
                "discriminant": self.discriminant,
                "q_irreducible": self.q_irreducible,
                "zeta7_irreducible": self.zeta7_irreducible,
                "not_seventh_power_composition": self.not_seventh_power_composition,
                "passes": self.passes,
                "notes": self.notes}


def check_poly_hypotheses(f):
    """Decide the checkable genericity hypotheses for a quadratic factor.

    Checks: symmetry; irreducibility over Q (integer quadratic, so exactly
    when the discriminant is not a perfect square); irreducibility over the
    7th cyclotomic field, which for a Q-irreducible quadratic fails only
    when its splitting field is the unique quadratic subfield Q(sqrt(-7)) --
    a real splitting field passes outright, otherwise compare squarefree
    parts; and not being a monomial times a polynomial in t^7 (no quadratic
    span is).  The doubled-unknot family m t^2 - (2m+1) t + m is recognized
    with its common sign slip (constant term printed as -m) repaired.

    Raises UnsupportedShape for anything that is not a quadratic.
    """
    poly = _resolve_poly(f)
    norm = poly.normalized()
    lo, hi = norm.degree_span()
    if norm.is_zero() or hi != 2:
        raise UnsupportedShape("hypothesis checks cover quadratics only")
    c0, c1, c2 = _poly_key(norm)
    notes = []
    corrected = False
    if c0 == -c2 and c1 == -(2 * c2 + 1):
        corrected = True
        c0 = c2
        notes.append("constant term sign repaired to +%d to match the "
                     "doubled-unknot family m*t^2-(2m+1)*t+m" % c2)
    symmetric = (c0 == c2)
    family = None
    if symmetric and c1 == -(2 * c2 + 1):
        family = "negative_clasp_double"
    elif symmetric and c1 == 1 - 2 * c2:
        family = "positive_clasp_double"
    disc = c1 * c1 - 4 * c0 * c2
    q_irreducible = disc < 0 or isqrt(disc) ** 2 != disc
    if not q_irreducible:
        zeta7 = False
    elif disc > 0:
        zeta7 = True
        notes.append("real splitting field; the only quadratic subfield of "
                     "the 7th cyclotomic field is imaginary")
    else:
        zeta7 = _squarefree_part(disc) != -7
        notes.append("imaginary splitting field compared with Q(sqrt(-7)) "
                     "by squarefree part %d" % _squarefree_part(disc))
    exps = sorted(e for e, c in norm.coeffs.items() if c)
    egcd = 0
    for e in exps[1:]:
        egcd = gcd(egcd, e - exps[0])
    not_t7 = egcd % 7 != 0 or egcd == 0
    return PolyHypotheses((c0, c1, c2), family, corrected, symmetric, disc,
                          q_irreducible, zeta7, not_t7, notes)


class HypothesisRecord:
    """Checked genericity facts for a collection of factor polynomials.

    Each registered polynomial carries its own report; distinct registered
    polynomials are verified pairwise coprime over Q.  Coprimality of the
    residual tokens with the factors is not checkable from a token and is
    carried as a standing assumption."""

    def __init__(self):
        self.reports = {}
        self.noncoprime = []
        self.assumes_token_coprimality = True

    @classmethod
    def for_polys(cls, polys):
        rec = cls()
        for poly in polys:
            rec.register(poly)
        return rec

    def register(self, poly):
        poly = _resolve_poly(poly)
        key = _poly_key(poly)
        if key in self.reports:
            return self.reports[key]
        report = check_poly_hypotheses(poly)
        for other in self.reports:
            g = poly_gcd_q(_poly_from_key(other), poly)
            if g.degree_span() != (0, 0) or g.is_zero():
                self.noncoprime.append((other, key))
        self.reports[key] = report
        return report

    def require(self, keys):
        """Raise HypothesisUnverified unless every key has a passing report
        and the keys are pairwise coprime."""
        keys = [tuple(k) for k in keys]
        for key in keys:
            report = self.reports.get(key)
            if report is None:
                raise HypothesisUnverified("no genericity record for factor %s" % (key,))
            if not report.passes:
                raise HypothesisUnverified("factor %s fails genericity: %s"
                                           % (key, "; ".join(report.failures())))
        wanted = set(keys)
        for a, b in self.noncoprime:
            if a in wanted and b in wanted:
                raise HypothesisUnverified(
                    "factors %s and %s share a factor over Q" % (a, b))

    def to_json(self):
        return {"polynomials": [r.to_json() for _, r in sorted(self.reports.items())],
                "noncoprime_pairs": [[list(a), list(b)] for a, b in self.noncoprime],
                "assumes_token_coprimality": self.assumes_token_coprimality}


# ---------------------------------------------------------------------------
# satellite rules and exponent multisets


def satellite_sigma(base, J, a, p):
    """Signature-growth shift from one infection: the companion's signature
    at (a mod p)/p is added to the growth coefficient.  Value 0 contributes
    nothing; a singular evaluation point propagates SingularAtT."""
    a = int(a) % int(p)
    if a == 0:
        return SigGrowth(base.coefficient)
    V = _companion_matrix(J)
    return SigGrowth(base.coefficient + lt_signature(V, Fraction(a, p)))


def satellite_delta(base, J, lift_values, p=None):
    """Discriminant factors from one infection: one shifted copy of the
    companion's Alexander polynomial per lift of the infection curve.
    Orientation reversal of a lift is absorbed by the symmetry of the
    polynomial, so the shift is all that is recorded."""
    if p is not None and int(p) != base.p:
        raise PreconditionError("lift values are modulo %d but the expression "
                                "is over %d" % (int(p), base.p))
    poly = _resolve_poly(J)
    key = _poly_key(poly)
    out = base
    for v in lift_values:
        out = out.times_factor(key, int(v) % base.p)
    return out


def orbit_exponents(a):
    """Exponent multiset contributed by a pure eigencharacter value a mod 7:
    the doubling orbit {a, 2a, 4a} and its negatives, sorted."""
    a = int(a) % 7
    vals = [a, 2 * a, 4 * a]
    return tuple(sorted([v % 7 for v in vals] + [(-v) % 7 for v in vals]))


def mixed_exponents(c, eps):
    """Exponent multiset for the paired even-case character at coupling
    unit c with sign eps: {c - e/c, 2c - 4e/c, 4c - 2e/c} and negatives
    mod 7, sorted.  For eps = +1 this is {0,0,2,2,5,5} for every unit c."""
    c = int(c) % 7
    if c == 0:
        raise PreconditionError("coupling value must be a unit mod 7")
    if eps not in (1, -1):
        raise PreconditionError("sign must be +1 or -1")
    cbar = pow(c, -1, 7)
    vals = [c - eps * cbar, 2 * c - 4 * eps * cbar, 4 * c - 2 * eps * cbar]
    return tuple(sorted([v % 7 for v in vals] + [(-v) % 7 for v in vals]))


def _lift_values(a, b, sign, p=7):
    # values of the character on the three lifts of a band curve, at
    # eigencoordinates (a, b); the mutated band carries the negatives
    return [(sign * (a + b)) % p,
            (sign * (2 * a + 4 * b)) % p,
            (sign * (4 * a + 2 * b)) % p]


# ---------------------------------------------------------------------------
# norm test


def norm_test(e, hypotheses=None):
    """Decide whether a DiscExpr lies in the subgroup of norms g * conj(g).

    Under verified genericity of the factor polynomials, a product of
    shifted symmetric factors is a norm exactly when every (polynomial,
    shift) class has even multiplicity.  Residual tokens are self-conjugate,
    so they square to norms; an odd token multiplicity leaves the verdict
    open.  Returns NOT_NORM on any odd factor class, else UNKNOWN on any
    odd token, else NORM.

    When no hypothesis record is supplied one is built from the factors
    themselves; an unverifiable factor raises HypothesisUnverified.
    """
    keys = sorted({key for (key, _shift) in e.factors})
    if hypotheses is None:
        hypotheses = HypothesisRecord()
        for key in keys:
            try:
                hypotheses.register(_poly_from_key(key))
            except UnsupportedShape:
                raise HypothesisUnverified(
                    "factor %s is outside the checkable quadratic family" % (key,))
    hypotheses.require(keys)
    if any(mult % 2 for mult in e.factors.values()):
        return NOT_NORM
    if any(mult % 2 for mult in e.tokens.values()):
        return UNKNOWN
    return NORM


# ---------------------------------------------------------------------------
# character plumbing shared by the drivers

_sig_cache = {}


def _cached_sigma(V, a, p):
    key = (tuple(tuple(r) for r in V.entries), int(a) % int(p), int(p))
    if key not in _sig_cache:
        _sig_cache[key] = satellite_sigma(SigGrowth(0), V, a, p).coefficient
    return _sig_cache[key]


def _span_vectors(basis, p, budget, include_zero=False):
    """All vectors in the row span of an independent basis mod p."""
    dim = len(basis)
    if p ** dim > budget:
        raise BudgetExceeded("character space of dimension %d exceeds the "
                             "budget" % dim, budget)
    n = len(basis[0]) if basis else 0
    out = []
    for coeffs in itertools.product(range(p), repeat=dim):
        if not include_zero and not any(coeffs):
            continue
        vec = tuple(sum(c * row[i] for c, row in zip(coeffs, basis)) % p
                    for i in range(n))
        out.append(vec)
    return out


def _block_pairing_unit(form, u, v, p=7):
    """Linking pairing transported to mod-p characters of one block.

    A mod-p character row u corresponds under the form to the p-torsion
    element x_u = p * y_u with lk(x_u, .) = u/p; since the linking form is
    trivial on the p-torsion itself, the surviving pairing is
    B(u, v) = lk(y_u, x_v), well defined in (1/p)Z/Z because changing u by
    a multiple of p moves y_u by a p-torsion element.  Returns p * B(u, v)
    as an element of Z_p; it is symmetric and vanishes on each deck
    eigenspace, pairing the two eigenspaces with each other."""
    pe = form.group[0]
    if any(f != pe for f in form.group) or pe != p * p:
        raise InternalInvariantViolation("block must be homogeneous of height two")
    k = len(form.group)
    mint = []
    for row in form.gram:
        out = []
        for x in row:
            scaled = x * pe
            if scaled.denominator != 1:
                raise InternalInvariantViolation("pairing is finer than the block")
            out.append(int(scaled) % pe)
        mint.append(out)
    minv = linalg.modm_inverse(mint, pe)
    y = [sum(u[t] * minv[t][i] for t in range(k)) % pe for i in range(k)]
    x = [p * sum(v[t] * minv[t][i] for t in range(k)) % pe for i in range(k)]
    total = sum(y[i] * mint[i][j] * x[j] for i in range(k) for j in range(k))
    if total % p:
        raise InternalInvariantViolation("character pairing misses the 1/p grid")
    return (total // p) % p


def _dual_eigenpair(form, sign=1, p=7):
    """For a 2-generator block whose deck acts with eigenvalues 2 and 4 on
    the mod-p character space: the dual eigenvectors and the matrix taking
    ambient character coordinates to eigencoordinates.

    The right eigenvector is rescaled so that the transported pairing
    between the two eigenvectors equals sign/p; with that normalization the
    vanishing constraint on a character with eigencoordinates (a_s, b_s)
    per summand is exactly sum(sign_s * a_s * b_s) = 0 mod p."""
    act = [[form.deck[i][j] % p for i in range(2)] for j in range(2)]
    vecs = {}
    for lam in (2, 4):
        shifted = [[(act[i][j] - (lam if i == j else 0)) % p for j in range(2)]
                   for i in range(2)]
        kern = linalg.modp_kernel(shifted, p)
        if len(kern) != 1:
            raise InternalInvariantViolation(
                "block does not carry the split 2/4 eigencharacter calculus")
        vecs[lam] = tuple(x % p for x in kern[0])
    w2, w4 = vecs[2], vecs[4]
    unit = _block_pairing_unit(form, list(w2), list(w4), p)
    if unit == 0:
        raise InternalInvariantViolation(
            "dual eigenvectors pair degenerately")
    scale = (sign % p) * pow(unit, -1, p) % p
    w4 = tuple(scale * x % p for x in w4)
    if _block_pairing_unit(form, list(w2), list(w4), p) != sign % p:
        raise InternalInvariantViolation("pairing normalization failed")
    det = (w2[0] * w4[1] - w4[0] * w2[1]) % p
    if det == 0:
        raise InternalInvariantViolation("dual eigenvectors are dependent")
    dinv = pow(det, -1, p)
    # rows of the inverse of the column matrix (w2 | w4)
    to_eigen = [[w4[1] * dinv % p, (-w4[0]) * dinv % p],
                [(-w2[1]) * dinv % p, w2[0] * dinv % p]]
    return (w2, w4), to_eigen


def _char_blocks(vec, to_eigen_list, p=7):
    """Ambient character coordinates (2 per summand) -> eigencoordinate
    pairs (a_s, b_s)."""
    out = []
    for s, te in enumerate(to_eigen_list):
        u = (vec[2 * s], vec[2 * s + 1])
        a = (te[0][0] * u[0] + te[0][1] * u[1]) % p
        b = (te[1][0] * u[0] + te[1][1] * u[1]) % p
        out.append((a, b))
    return out


def _case_expression(a_vec, b_vec, signs, model_summands, p=7):
    """DiscExpr of a sum of carrier satellites at the character whose
    per-summand eigencoordinates are (a_vec, b_vec).

    Mirrored summands contribute the inverse discriminant class; every
    class here is self-conjugate, hence equal to its inverse modulo norms,
    so the multiplicities are recorded positively throughout."""
    expr = DiscExpr(p)
    for s, summand in enumerate(model_summands):
        a, b = a_vec[s] % p, b_vec[s] % p
        if summand.token is not None:
            expr = expr.times_token(
                residual_token(summand.token, _canonical_char_token(a, b, p)))
        for inf in summand.infections:
            if inf.pattern != "triple_lift":
                raise PreconditionError("discriminant assembly expects "
                                        "triple_lift infections")
            expr = satellite_delta(expr, inf.companion,
                                   _lift_values(a, b, inf.param, p))
    return expr


def _paired_character(rows2, rows4, n, signs, p=7):
    """Even-case character from eigen-split bases with no odd vectors:
    both sides reduce to half-dimensional echelon bases whose first rows
    couple through a single shared column; the emitted character adds the
    first-summand-signed right row to the left row."""
    red2, piv2 = linalg.modp_rref([list(r) for r in rows2], p)
    red2 = [r for r in red2 if any(r)]
    red4, piv4 = linalg.modp_rref([list(r) for r in rows4], p)
    red4 = [r for r in red4 if any(r)]
    if 2 * len(red2) != n or 2 * len(red4) != n:
        raise InternalInvariantViolation(
            "no-odd character spaces must have exactly half dimension")
    alpha2 = red2[0]
    p0 = piv2[0]
    support2 = [k for k in range(n) if k != p0 and alpha2[k]]
    if len(support2) != 1:
        raise InternalInvariantViolation(
            "echelon row without odd vectors must couple one pair of summands")
    q0 = support2[0]
    if p0 not in piv4:
        raise InternalInvariantViolation(
            "right eigenspace does not pair with the left pivot")
    alpha4 = red4[piv4.index(p0)]
    support4 = [k for k in range(n) if k != p0 and alpha4[k]]
    if support4 != [q0]:
        raise InternalInvariantViolation(
            "eigen-split bases do not couple the same summand pair")
    a = [x % p for x in alpha2]
    b = [(signs[0] * x) % p for x in alpha4]
    return a, b


def _charspace_case(rows2, rows4, n, signs, p=7):
    """Decision tree on an eigen-split character space: take an odd-weight
    vector in either eigenspace if one exists, else the paired even-case
    character.  Returns (branch, a_vec, b_vec)."""
    v = find_odd_char(rows2, n, p)
    if v is not None:
        return "odd_left", [x % p for x in v], [0] * n
    v = find_odd_char(rows4, n, p)
    if v is not None:
        return "odd_right", [0] * n, [x % p for x in v]
    a, b = _paired_character(rows2, rows4, n, signs, p)
    return "paired", a, b


# ---------------------------------------------------------------------------
# driver: doubled-unknot family over the 2-fold cover


def twisted_double_obstruction(a, n=1, budget=DEFAULT_BUDGET):
    """Slice obstruction for the n-fold sum of the doubled unknot with
    clasp parameter a (2a+1 prime).

    The 2-fold cover carries (Z_{(2a+1)^2})^n; for every deck-invariant
    metabolizer and every nonzero vanishing character, the signature growth
    coefficient is a sum of companion torus-knot signatures at nonzero
    fractions j/(2a+1), each certified positive.  The companion is the
    (-a, a+1) torus knot.  For a = 1 the family gives no claim.
    """
    if not isinstance(a, int) or a < 1:
        raise PreconditionError("clasp parameter must be a positive integer")
    if not isinstance(n, int) or n < 1:
        raise PreconditionError("summand count must be a positive integer")
    p = 2 * a + 1
    if not _is_prime(p):
        raise PreconditionError("2a+1 = %d must be prime" % p)
    single = {"kind": "twisted_double", "a": a}
    spec = single if n == 1 else {
        "kind": "sum", "summands": [{"knot": dict(single)} for _ in range(n)]}
    report = {"operation": "twisted_double_obstruction",
              "knot": spec, "a": a, "p": p, "n": n,
              "assumption": _MODELING_NOTE}
    if a == 1:
        report.update({"claim": None, "obstructed": False,
                       "note": "clasp parameter 1 lies outside the obstructed "
                               "family; no claim is made"})
        return report
    companion = torus_matrix(-a, a + 1)
    sig = {j: _cached_sigma(companion, j, p) for j in range(1, p)}
    all_positive = all(v > 0 for v in sig.values())
    V = twisted_double_matrix(a)
    one = linking_form(V, 2)
    form = one if n == 1 else direct_sum(*[linking_form(V, 2) for _ in range(n)])
    mets = enumerate_metabolizers(form, invariant_only=True, budget=budget)
    cases = []
    obstructed = all_positive and bool(mets)
    for A in mets:
        S = vanishing_chars(form, A, p)
        chars = _span_vectors(S.basis, p, budget)
        coeffs = {}
        for u in chars:
            coeffs[u] = sum(sig[x] for x in u if x)
        witness = min(chars)
        acc = SigGrowth(0)
        for x in witness:
            acc = satellite_sigma(acc, companion, x, p)
        if acc.coefficient != coeffs[witness]:
            raise InternalInvariantViolation(
                "satellite rule disagrees with the tabulated coefficients")
        positive = all(c > 0 for c in coeffs.values())
        obstructed = obstructed and positive
        cases.append({"metabolizer": A.to_json(),
                      "character_dim": S.dim,
                      "characters_checked": len(chars),
                      "all_coefficients_positive": positive,
                      "min_coefficient": min(int(c) for c in coeffs.values()),
                      "witness": {"character": list(witness),
                                  "growth": acc.to_json()}})
    report.update({
        "companion": {"kind": "torus", "p": -a, "q": a + 1},
        "companion_signatures": {str(j): int(v) for j, v in sorted(sig.items())},
        "all_signatures_positive": all_positive,
        "metabolizer_count": len(mets),
        "cases": cases,
        "obstructed": obstructed,
        "claim": "not cg-slice" if obstructed else None})
    return report


# ---------------------------------------------------------------------------
# driver: order-two satellite family over Z_5 + Z_5


def order2_obstruction(i, j, budget=DEFAULT_BUDGET):
    """Slice obstruction for the sum of two order-two satellites whose
    companions are the i- and j-fold sums of the (2,7) torus knot.

    Each satellite ties the companion into one band and its mirror into the
    other, with lift multipliers 1 and 2 on the 2-fold cover Z_5.  For every
    metabolizer of the sum form, the vanishing characters give growth
    coefficient +-4(i-j); the obstruction vanishes exactly when i = j.
    """
    if not isinstance(i, int) or not isinstance(j, int) or i < 1 or j < 1:
        raise PreconditionError("companion multiplicities must be positive integers")
    p = 5
    torus = {"kind": "torus", "p": 2, "q": 7}

    def companion_spec(m):
        if m == 1:
            return dict(torus)
        return {"kind": "sum", "summands": [{"knot": dict(torus)} for _ in range(m)]}

    spec = {"kind": "sum", "summands": [
        {"knot": {"kind": "order_two", "companion": companion_spec(i)}},
        {"knot": {"kind": "order_two", "companion": companion_spec(j)}}]}
    model = build(spec)
    forms = [linking_form(s.matrix, 2) for s in model.summands]
    form = direct_sum(*forms)
    mets = enumerate_metabolizers(form, invariant_only=True, budget=budget)
    # per summand and infection, the signature shift at each character value
    tables = []
    for s in model.summands:
        per = []
        for inf in s.infections:
            if inf.pattern != "double_lift":
                raise PreconditionError("order-two driver expects double_lift "
                                        "infections")
            V = inf.companion.matrix
            per.append({u: (Fraction(0) if (inf.param * u) % p == 0
                            else _cached_sigma(V, inf.param * u, p))
                        for u in range(p)})
        tables.append(per)

    def coefficient(u_vec):
        total = Fraction(0)
        for s, per in enumerate(tables):
            for table in per:
                total += table[u_vec[s] % p]
        return total

    cases = []
    obstructed = bool(mets)
    canonical = None
    for A in mets:
        S = vanishing_chars(form, A, p)
        chars = _span_vectors(S.basis, p, budget)
        entries = []
        nonzero_found = False
        for u in sorted(chars):
            c = coefficient(u)
            entries.append({"character": list(u), "coefficient": int(c)})
            if c != 0:
                nonzero_found = True
            if u[0] == 1 and canonical is None:
                canonical = c
                # replay the same character through the satellite rule
                acc = SigGrowth(0)
                for s, summand in enumerate(model.summands):
                    for inf in summand.infections:
                        acc = satellite_sigma(acc, inf.companion,
                                              inf.param * u[s], p)
                if acc.coefficient != c:
                    raise InternalInvariantViolation(
                        "satellite rule disagrees with the tabulated coefficients")
        obstructed = obstructed and (nonzero_found or i == j) and i != j
        cases.append({"metabolizer": A.to_json(),
                      "characters": entries,
                      "has_nonzero": nonzero_found})
    if canonical is None:
        raise InternalInvariantViolation("no vanishing character with leading "
                                         "value 1 was found")
    return {"operation": "order2_obstruction",
            "knot": spec, "p": p,
            "summand_multiplicities": [i, j],
            "cover_group": list(form.group),
            "metabolizer_count": len(mets),
            "coefficient": int(canonical),
            "cases": cases,
            "obstructed": obstructed,
            "claim": "not cg-slice" if obstructed else None,
            "assumption": _MODELING_NOTE}


# ---------------------------------------------------------------------------
# driver: mutated satellite sums over the 3-fold cover


def _rref_shapes(n, m, p=7):
    """Echelon bases of all dimension-m subspaces of Z_p^n, each exactly once."""
    for pivots in itertools.combinations(range(n), m):
        free = [(r, c) for r in range(m) for c in range(n)
                if c > pivots[r] and c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(m)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield [tuple(r) for r in rows]


def _count_rref_shapes(n, m, p=7):
    total = 0
    for pivots in itertools.combinations(range(n), m):
        k = sum(1 for r in range(m) for c in range(n)
                if c > pivots[r] and c not in pivots)
        total += p ** k
    return total


def _cross_admissible(rows2, rows4, signs, p=7):
    # bilinearity: the constraint on sums of left and right characters
    # reduces to all basis cross pairs
    return all(admissible_pair(a, b, signs, p)
               for a in rows2 for b in rows4)


def mutant_sum_obstruction(companions, signs=None, budget=DEFAULT_BUDGET,
                           mode=None):
    """Slice obstruction for a signed sum of mutated genus-2 satellites.

    Each summand ties one companion J_i into both bands of the carrier
    surface and mutates the second band, so a character with per-summand
    eigencoordinates (a_i, b_i) meets factors of the companion Alexander
    polynomial at the shifts {a+b, 2a+4b, 4a+2b} and their negatives.  For
    every deck-invariant metabolizer of the 3-fold-cover linking form (mode
    "enumerate"), or for every admissible abstract eigen-split character
    space shape (mode "abstract", the default for three or more summands),
    the driver emits a character whose discriminant expression fails the
    norm test.

    Preconditions: every companion passes check_poly_hypotheses; equal
    companions carry equal signs; the first sign is +1 (mirror the whole
    sum otherwise).  HypothesisUnverified propagates from the record.
    """
    if not companions:
        raise PreconditionError("at least one companion is required")
    n = len(companions)
    signs = [1] * n if signs is None else [int(s) for s in signs]
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise PreconditionError("signs must be +1/-1, one per companion")
    if signs[0] != 1:
        raise PreconditionError("the leading sign must be +1; mirror the "
                                "whole sum to arrange it")
    polys = [_resolve_poly(J) for J in companions]
    keys = [_poly_key(f) for f in polys]
    for s in range(n):
        for t in range(s + 1, n):
            if keys[s] == keys[t] and signs[s] != signs[t]:
                raise PreconditionError("equal companions must carry equal signs")
    record = HypothesisRecord.for_polys(polys)
    record.require(keys)

    def companion_spec(J, idx):
        if isinstance(J, dict):
            return J
        return {"kind": "matrix",
                "entries": [list(r) for r in _companion_matrix(J).entries]}

    member_specs = [mutant_family_spec(companion_spec(J, s))
                    for s, J in enumerate(companions)]
    models = [build(ms) for ms in member_specs]
    summands = [m.summands[0] for m in models]

    base = satellite_base_matrix()
    forms = [linking_form(base if signs[s] == 1 else base.mirror(), 3)
             for s in range(n)]
    eigen_data = [_dual_eigenpair(f, signs[s]) for s, f in enumerate(forms)]
    to_eigen = [d[1] for d in eigen_data]

    if mode is None:
        mode = "enumerate" if n <= 2 else "abstract"
    if mode not in ("enumerate", "abstract"):
        raise PreconditionError("mode must be 'enumerate' or 'abstract'")

    cases = []
    all_not_norm = True

    def run_case(rows2, rows4, where):
        branch, a_vec, b_vec = _charspace_case(rows2, rows4, n, signs)
        if not admissible_pair(a_vec, b_vec, signs):
            raise InternalInvariantViolation(
                "emitted character violates the metabolizer pairing constraint")
        expr = _case_expression(a_vec, b_vec, signs, summands)
        verdict = norm_test(expr, record)
        case = dict(where)
        case.update({"branch": branch,
                     "character": {"a": list(a_vec), "b": list(b_vec)},
                     "admissible": True,
                     "expression": expr.to_json(),
                     "verdict": verdict})
        cases.append(case)
        return verdict

    if mode == "enumerate":
        form = direct_sum(*forms) if n > 1 else forms[0]
        mets = enumerate_metabolizers(form, invariant_only=True, budget=budget)
        for A in mets:
            S = vanishing_chars(form, A, 7)
            if not S.split:
                raise InternalInvariantViolation(
                    "vanishing characters do not split under the deck action")
            rows = {2: [], 4: []}
            for lam in (2, 4):
                for vec in S.eigen.get(lam, ()):
                    blocks = _char_blocks(vec, to_eigen)
                    for (a, b) in blocks:
                        if (lam == 2 and b) or (lam == 4 and a):
                            raise InternalInvariantViolation(
                                "eigenvector mixes the two eigencoordinates")
                    rows[lam].append([blk[0 if lam == 2 else 1]
                                      for blk in blocks])
            verdict = run_case(rows[2], rows[4],
                               {"metabolizer": A.to_json(),
                                "charspace": {"dim": S.dim,
                                              "dim_left": len(rows[2]),
                                              "dim_right": len(rows[4])}})
            all_not_norm = all_not_norm and verdict == NOT_NORM
        scope = {"mode": "enumerate", "metabolizer_count": len(mets)}
    else:
        shape_count = 0
        for m in range(n // 2 + 1, n + 1):
            shape_count += 2 * _count_rref_shapes(n, m)
        if n % 2 == 0:
            shape_count += _count_rref_shapes(n, n // 2) ** 2
        if shape_count > budget:
            raise BudgetExceeded("abstract character-space enumeration needs "
                                 "%d shapes" % shape_count, budget)
        for m in range(n // 2 + 1, n + 1):
            for shape in _rref_shapes(n, m):
                for side in ("left", "right"):
                    rows2 = [list(r) for r in shape] if side == "left" else []
                    rows4 = [list(r) for r in shape] if side == "right" else []
                    verdict = run_case(rows2, rows4,
                                       {"shape": {"side": side, "dim": m,
                                                  "basis": [list(r) for r in shape]}})
                    all_not_norm = all_not_norm and verdict == NOT_NORM
        if n % 2 == 0:
            half = n // 2
            no_odd = [shape for shape in _rref_shapes(n, half)
                      if find_odd_char([list(r) for r in shape], n, 7) is None]
            for s2 in no_odd:
                for s4 in no_odd:
                    if not _cross_admissible(s2, s4, signs):
                        continue
                    verdict = run_case([list(r) for r in s2],
                                       [list(r) for r in s4],
                                       {"shape": {"side": "paired",
                                                  "basis_left": [list(r) for r in s2],
                                                  "basis_right": [list(r) for r in s4]}})
                    all_not_norm = all_not_norm and verdict == NOT_NORM
        scope = {"mode": "abstract", "shape_cases": len(cases)}

    report = {"operation": "mutant_sum_obstruction",
              "members": [{"sign": signs[s], "knot": member_specs[s],
                           "companion_poly": list(keys[s])}
                          for s in range(n)],
              "n": n,
              "hypotheses": record.to_json(),
              "cases": cases,
              "all_not_norm": all_not_norm,
              "obstructed": all_not_norm and bool(cases),
              "growth": None,
              "notes": ["mirrored summands contribute inverse discriminant "
                        "classes; all classes here are self-conjugate, so "
                        "parity and verdicts are unaffected",
                        _MODELING_NOTE]}
    report.update(scope)
    return report

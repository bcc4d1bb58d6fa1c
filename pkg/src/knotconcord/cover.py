"""Cyclic branched cover invariants computed from Seifert matrices.

Two integer presentations of the first homology of the d-fold branched
cover are built independently and must agree:

* a compact one, coker(G^d - (G - 1)^d) with G = (V - V^t)^{-1} V;
* a layered one, the block tridiagonal intersection matrix on d - 1
  copies of the surface lattice (V + V^t on the diagonal, -V above,
  -V^t below), which carries an explicit deck rotation and the linking
  form lk(x, y) = -x^t L^{-1} y mod Z.

The group order is cross-checked against the product of Alexander
values at the nontrivial d-th roots of unity, evaluated exactly as a
resultant.  Disagreements raise InternalInvariantViolation; an infinite
group raises InfiniteHomology.
"""

from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (InfiniteHomology, InhomogeneousGroup,
                     InternalInvariantViolation, UnsupportedShape)
from .seifert import SeifertMatrix, alexander


def unit_roots_mod(d, m):
    """Sorted solutions of x^d = 1 in Z_m."""
    return [x for x in range(1, m) if gcd(x, m) == 1 and pow(x, d, m) == 1]


def _alexander_root_order(V, d):
    # |prod_{i=1..d-1} Delta(zeta_d^i)| as the resultant of Delta with
    # 1 + x + ... + x^{d-1}; integer Sylvester determinant, no floats.
    delta = alexander(V)
    lo, hi = delta.degree_span()
    assert lo == 0, "alexander() must return the normalised polynomial"
    f = [int(delta.coeffs.get(e, 0)) for e in range(hi + 1)]
    n = len(f) - 1
    if n == 0:
        return abs(f[0]) ** (d - 1)
    g = [1] * d
    m = d - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + f[::-1] + [0] * (m - 1 - i))
    for i in range(n):
        rows.append([0] * i + g[::-1] + [0] * (n - 1 - i))
    assert all(len(r) == size for r in rows)
    return abs(linalg.det_bareiss(rows))


def _layer_matrix(V, d):
    # (d-1) x (d-1) blocks; row i: -V^t, V+V^t, -V around the diagonal.
    n = len(V)
    k = d - 1
    Vt = linalg.transpose(V)
    B = linalg.mat_add(V, Vt)
    L = linalg.zeros(n * k, n * k)
    for i in range(k):
        for a in range(n):
            for b in range(n):
                L[i * n + a][i * n + b] = B[a][b]
                if i + 1 < k:
                    L[i * n + a][(i + 1) * n + b] = -V[a][b]
                    L[(i + 1) * n + a][i * n + b] = -Vt[a][b]
    return L


def _deck_matrix(n, d):
    # rotation of the layers; the last layer maps to minus the sum of all,
    # which is the relation x_0 + x_1 + ... + x_{d-1} = 0 upstairs.
    k = d - 1
    S = linalg.zeros(n * k, n * k)
    for i in range(k - 1):
        for a in range(n):
            S[(i + 1) * n + a][i * n + a] = 1
    for i in range(k):
        for a in range(n):
            S[i * n + a][(k - 1) * n + a] -= 1
    return S


def _congruence_kernel_count(M, col_moduli, row_moduli):
    """Number of c in prod Z/col_moduli[j] with (M c)_i = 0 mod row_moduli[i].

    Requires that the diagonal lattice diag(col_moduli) consists of
    solutions, which holds whenever M descends to the quotient groups.
    """
    k = len(col_moduli)
    if k == 0:
        return 1
    m = len(M)
    stacked = [list(M[i]) + [-row_moduli[i] if j == i else 0 for j in range(m)]
               for i in range(m)]
    ker = linalg.integer_kernel(stacked)
    rows = [v[:k] for v in ker]
    rows += [[col_moduli[j] if i == j else 0 for i in range(k)] for j in range(k)]
    hnf = linalg.hermite_normal_form(rows)
    det = 1
    for r in hnf:
        p = next((x for x in r if x != 0), None)
        if p is None:
            raise InternalInvariantViolation("solution lattice lost rank")
        det *= abs(p)
    total = 1
    for f in col_moduli:
        total *= f
    if total % det:
        raise InternalInvariantViolation("solution lattice index not integral")
    return total // det


class CoverHomology:
    """First homology of the d-fold branched cyclic cover, with deck action.

    factors are the nontrivial invariant factors; deck[i][j] gives the
    coefficient of generator i in the image of generator j, reduced mod
    factors[i].
    """

    def __init__(self, degree, presentation, factors, deck, gens, layer):
        self.degree = degree
        self.presentation = presentation
        self.factors = tuple(int(f) for f in factors)
        self.deck = tuple(tuple(int(x) for x in row) for row in deck)
        self._gens = gens
        self._layer = layer
        self._layer_inv = None
        order = 1
        for f in self.factors:
            order *= f
        self.order = order

    @property
    def rank(self):
        return len(self.factors)

    def deck_power(self, e):
        k = self.rank
        out = linalg.identity(k)
        for _ in range(e):
            out = [[sum(self.deck[i][l] * out[l][j] for l in range(k)) % self.factors[i]
                    for j in range(k)] for i in range(k)]
        return out

    def reduce(self, coords):
        return tuple(int(c) % f for c, f in zip(coords, self.factors))

    def to_json(self):
        return {"degree": self.degree,
                "invariant_factors": list(self.factors),
                "order": self.order,
                "deck": [list(r) for r in self.deck]}


def branched_cover(V, d):
    """Homology and deck action of the d-fold branched cover, d >= 2."""
    if not isinstance(V, SeifertMatrix):
        V = SeifertMatrix(V)
    if d < 2:
        raise ValueError("cover degree must be at least 2")
    M = V.entries
    n = len(M)

    expected = _alexander_root_order(V, d)
    if expected == 0:
        raise InfiniteHomology(
            "Alexander polynomial vanishes at a %d-th root of unity" % d)

    skew_inv = linalg.invert_integer(linalg.mat_sub(M, linalg.transpose(M)))
    G = linalg.mat_mul(skew_inv, M)
    G1 = linalg.mat_sub(G, linalg.identity(n))
    compact = linalg.mat_sub(linalg.mat_pow(G, d), linalg.mat_pow(G1, d))
    compact_factors = tuple(f for f in linalg.smith_diagonal(compact) if f != 1)

    L = _layer_matrix(M, d)
    S = _deck_matrix(n, d)
    if linalg.mat_mul(linalg.mat_mul(linalg.transpose(S), L), S) != L:
        raise InternalInvariantViolation("deck rotation is not an isometry")
    # the quotient H_1 lives on the dual of the layer lattice, so the
    # rotation acts there through the inverse transpose; the isometry
    # identity gives Sd L = L S, hence Sd preserves the relation lattice
    Sd = linalg.transpose(linalg.invert_integer(S))
    if linalg.mat_mul(Sd, L) != linalg.mat_mul(L, S):
        raise InternalInvariantViolation(
            "deck rotation does not preserve the relation lattice")

    D, U, W, Uinv, Winv = linalg.smith_normal_form(L)
    m = len(L)
    diag = [D[i][i] for i in range(m)]
    if any(x == 0 for x in diag):
        raise InfiniteHomology("layered presentation has free rank")
    keep = [i for i in range(m) if diag[i] != 1]
    factors = tuple(diag[i] for i in keep)
    if factors != compact_factors:
        raise InternalInvariantViolation(
            "presentations disagree: %r vs %r" % (factors, compact_factors))

    # deck map in canonical coordinates: conjugate by the Smith transform
    US = linalg.mat_mul(U, linalg.mat_mul(Sd, Uinv))
    deck = [[US[i][j] % diag[i] for j in keep] for i in keep]
    gens = [[Uinv[r][j] for r in range(m)] for j in keep]

    H = CoverHomology(d, compact, factors, deck, gens, L)
    if H.order != expected:
        raise InternalInvariantViolation(
            "group order %d does not match Alexander product %d"
            % (H.order, expected))
    k = H.rank
    if H.deck_power(d) != linalg.identity(k):
        raise InternalInvariantViolation("deck action has wrong order")
    if gcd(H.order, d) == 1 and k:
        TmI = [[(H.deck[i][j] - (1 if i == j else 0)) for j in range(k)]
               for i in range(k)]
        fixed = _congruence_kernel_count(TmI, list(factors), list(factors))
        if fixed != 1:
            raise InternalInvariantViolation("deck action has fixed points")
    return H


class LinkingForm:
    """Finite symmetric bilinear form with values in Q/Z.

    group: invariant factors (f_1 | f_2 | ...); gram[i][j] is the value
    on the i-th and j-th generators as a Fraction in [0, 1); deck is an
    isometry in the same coordinates (identity when absent).
    """

    def __init__(self, group, gram, deck=None, homology=None):
        self.group = tuple(int(f) for f in group)
        k = len(self.group)
        self.gram = tuple(tuple(Fraction(x) % 1 for x in row) for row in gram)
        if deck is None:
            deck = linalg.identity(k)
        self.deck = tuple(tuple(int(x) % self.group[i] for x in row)
                          for i, row in enumerate(deck))
        self.homology = homology
        if len(self.gram) != k or any(len(r) != k for r in self.gram):
            raise ValueError("gram size does not match the group")
        for i in range(k):
            for j in range(k):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram matrix is not symmetric")
                v = self.gram[i][j] * gcd(self.group[i], self.group[j])
                if v.denominator != 1:
                    raise ValueError("form not defined on the quotient group")

    @property
    def order(self):
        n = 1
        for f in self.group:
            n *= f
        return n

    def evaluate(self, x, y):
        """Value of the form on elements given in generator coordinates."""
        total = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        total += a * b * self.gram[i][j]
        return total % 1

    def is_nonsingular(self):
        k = len(self.group)
        if k == 0:
            return True
        den = 1
        for row in self.gram:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        M = [[int(self.gram[i][j] * den) for i in range(k)] for j in range(k)]
        count = _congruence_kernel_count(M, list(self.group), [den] * k)
        return count == 1

    def deck_is_isometry(self):
        k = len(self.group)
        for i in range(k):
            for j in range(k):
                ti = [self.deck[r][i] for r in range(k)]
                tj = [self.deck[r][j] for r in range(k)]
                if self.evaluate(ti, tj) != self.gram[i][j]:
                    return False
        return True

    def to_json(self):
        return {"group": list(self.group),
                "gram": [["%d/%d" % (x.numerator, x.denominator) for x in row]
                         for row in self.gram],
                "deck": [list(r) for r in self.deck]}


def linking_form(V, d):
    """Linking form of the d-fold branched cover, from the layered
    presentation: lk(x, y) = -x^t L^{-1} y mod Z on cokernel generators."""
    H = branched_cover(V, d)
    k = H.rank
    if k == 0:
        return LinkingForm((), (), (), homology=H)
    Linv = linalg.invert_rational(H._layer)
    gram = []
    for i in range(k):
        row = []
        gi = H._gens[i]
        for j in range(k):
            gj = H._gens[j]
            acc = Fraction(0)
            for r, a in enumerate(gi):
                if a:
                    for s, b in enumerate(gj):
                        if b:
                            acc += a * b * Linv[r][s]
            row.append((-acc) % 1)
        gram.append(row)
    form = LinkingForm(H.factors, gram, H.deck, homology=H)
    if not form.is_nonsingular():
        raise InternalInvariantViolation("linking form is singular")
    if not form.deck_is_isometry():
        raise InternalInvariantViolation("deck action does not preserve lk")
    return form


def direct_sum(*forms):
    """Orthogonal sum of linking forms, coordinates concatenated in order."""
    group = []
    for L in forms:
        group.extend(L.group)
    k = len(group)
    gram = [[Fraction(0)] * k for _ in range(k)]
    deck = [[0] * k for _ in range(k)]
    off = 0
    for L in forms:
        r = len(L.group)
        for i in range(r):
            for j in range(r):
                gram[off + i][off + j] = L.gram[i][j]
                deck[off + i][off + j] = L.deck[i][j]
        off += r
    return LinkingForm(group, gram, deck)


class CharSpace:
    """A space of Z_p characters with the induced deck action.

    Coordinates are dual to the homology generators whose invariant
    factor p divides; action is the transpose deck matrix mod p.  basis
    spans the subspace at hand (the whole dual space by default, or the
    characters vanishing on a metabolizer).
    """

    def __init__(self, p, degree, indices, action, eigen, split, basis=None):
        self.p = p
        self.degree = degree
        self.indices = tuple(indices)
        self.action = tuple(tuple(r) for r in action)
        if basis is None:
            k = len(self.indices)
            basis = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        self.basis = tuple(tuple(v) for v in basis)
        self.dim = len(self.basis)
        self.eigen = {lam: tuple(tuple(v) for v in basis_)
                      for lam, basis_ in eigen.items()}
        self.split = split

    def eigenvalues(self):
        return sorted(l for l, b in self.eigen.items() if b)

    def to_json(self):
        return {"p": self.p, "dim": self.dim,
                "eigenspaces": {str(l): [list(v) for v in b]
                                for l, b in self.eigen.items()}}


def char_space(H, p):
    """Mod-p character space of a cover with its deck eigenspaces."""
    if gcd(p, H.degree) != 1:
        raise ValueError("character modulus must be coprime to the degree")
    idx = [i for i, f in enumerate(H.factors) if f % p == 0]
    k = len(idx)
    action = [[H.deck[i][j] % p for i in idx] for j in idx]
    eigen = {}
    covered = 0
    for lam in unit_roots_mod(H.degree, p):
        A = [[(action[i][j] - (lam if i == j else 0)) % p for j in range(k)]
             for i in range(k)]
        basis = linalg.modp_kernel(A, p)
        eigen[lam] = basis
        covered += len(basis)
    return CharSpace(p, H.degree, idx, action, eigen, covered == k)


class DualLinking:
    """Linking pairing transported to mod-p^e characters, in an
    eigencharacter basis; matrix entries live in Z_{p^e}."""

    def __init__(self, modulus, eigenvalues, basis, matrix):
        self.modulus = modulus
        self.eigenvalues = tuple(eigenvalues)
        self.basis = tuple(tuple(v) for v in basis)
        self.matrix = tuple(tuple(int(x) % modulus for x in row)
                            for row in matrix)

    def to_json(self):
        return {"modulus": self.modulus,
                "eigenvalues": list(self.eigenvalues),
                "matrix": [list(r) for r in self.matrix]}


def _matrix_order_mod(T, m, cap=512):
    k = len(T)
    ident = linalg.identity(k)
    out = ident
    for e in range(1, cap + 1):
        out = linalg.modm_mat_mul(out, T, m)
        if out == ident:
            return e
    raise UnsupportedShape("automorphism order exceeds %d" % cap)


def _p_primary_exponent(factors, p):
    exps = set()
    for f in factors:
        e = 0
        while f % p == 0:
            f //= p
            e += 1
        if e:
            exps.add(e)
    if not exps:
        return 0
    if len(exps) > 1:
        raise InhomogeneousGroup(
            "p-primary part has mixed exponents %s" % sorted(exps))
    return exps.pop()


def dual_linking(L, p):
    """Gram matrix of the character pairing on the p-primary part.

    The p-part must be homogeneous, (Z_{p^e})^k.  Characters are paired
    through the inverse of the integral Gram matrix of the p-part; the
    basis is reorganised into deck eigencharacters, and eigenvalue pairs
    whose product is not 1 mod p^e must pair to zero.
    """
    e = _p_primary_exponent(L.group, p)
    if e == 0:
        return DualLinking(1, (), (), ())
    q = p ** e
    idx = [i for i, f in enumerate(L.group) if f % p == 0]
    cof = [L.group[i] // q for i in idx]
    k = len(idx)
    # h_i = cof_i * g_i generate the p-part; N is q times their Gram matrix
    N = [[int(L.gram[idx[a]][idx[b]] * cof[a] * cof[b] * q) % q
          for b in range(k)] for a in range(k)]
    Ninv = linalg.modm_inverse(N, q)
    # deck restricted to the p-part in the h basis
    T = [[L.deck[idx[a]][idx[b]] * cof[b] * pow(cof[a], -1, q) % q
          for b in range(k)] for a in range(k)]
    Tt = linalg.transpose(T)
    if L.homology is not None:
        degree = L.homology.degree
    else:
        degree = _matrix_order_mod(T, q)
    roots = unit_roots_mod(degree, q) or [1]
    basis = []
    labels = []
    total = linalg.zeros(k, k)
    for lam in roots:
        proj = linalg.identity(k)
        for mu in roots:
            if mu == lam:
                continue
            A = [[(Tt[i][j] - (mu if i == j else 0)) for j in range(k)]
                 for i in range(k)]
            c = pow((lam - mu) % q, -1, q)
            proj = [[sum(a * b for a, b in zip(row, col)) * c % q
                     for col in zip(*A)] for row in proj]
        total = [[(x + y) % q for x, y in zip(r1, r2)]
                 for r1, r2 in zip(total, proj)]
        for v in linalg.modm_image_basis(proj, q):
            basis.append(v)
            labels.append(lam)
    if total != linalg.identity(k):
        raise UnsupportedShape("deck eigenvalues do not split mod %d" % q)
    out = []
    for u in basis:
        row = []
        for v in basis:
            acc = 0
            for a in range(k):
                if u[a]:
                    for b in range(k):
                        if v[b]:
                            acc += u[a] * Ninv[a][b] * v[b]
            row.append(acc % q)
        out.append(row)
    for a in range(len(basis)):
        for b in range(len(basis)):
            # invariance forces (lam*mu - 1) * pairing = 0 mod q
            if (labels[a] * labels[b] - 1) * out[a][b] % q:
                raise InternalInvariantViolation(
                    "character pairing breaks deck invariance")
    return DualLinking(q, labels, basis, out)

"""Metabolizers of finite linking forms and their character spaces.

A metabolizer is a subgroup equal to its own annihilator under the
pairing; for a nonsingular form that is the same as a self-annihilating
subgroup whose order squares to the group order.  Subgroups are handled
as integer lattices between diag(group) and Z^k, written in Hermite
normal form so equality is syntactic.

Enumeration walks candidate Hermite bases row by row from the bottom,
pruning branches as soon as a partial basis pairs nontrivially with
itself or fails to contain the relation vector of its pivot column; the
walk is exhaustive within a node budget.
"""

from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from . import linalg
from .cover import CharSpace, LinkingForm, _matrix_order_mod, unit_roots_mod
from .errors import BudgetExceeded, InternalInvariantViolation

DEFAULT_BUDGET = 10 ** 6


class Metabolizer:
    """Self-annihilating half-order subgroup, canonical generator rows."""

    def __init__(self, group, basis):
        self.group = tuple(int(f) for f in group)
        self.basis = tuple(tuple(int(x) for x in row) for row in basis)
        order = 1
        for i, row in enumerate(self.basis):
            order *= self.group[i] // row[i]
        self.order = order

    @property
    def generators(self):
        """Basis rows that are nonzero in the group."""
        out = []
        for row in self.basis:
            if any(x % f for x, f in zip(row, self.group)):
                out.append(tuple(x % f for x, f in zip(row, self.group)))
        return tuple(out)

    def contains(self, vec):
        lifted = [int(x) for x in vec]
        return linalg.lattice_contains([list(r) for r in self.basis], lifted)

    def __eq__(self, other):
        return (isinstance(other, Metabolizer)
                and self.group == other.group and self.basis == other.basis)

    def __hash__(self):
        return hash((self.group, self.basis))

    def __repr__(self):
        return "Metabolizer(%r)" % (list(self.generators),)

    def to_json(self):
        return {"group": list(self.group),
                "generators": [list(g) for g in self.generators],
                "order": self.order}


def _canonical_basis(rows, group):
    """Hermite basis of the lattice spanned by rows and diag(group)."""
    k = len(group)
    full = [list(r) for r in rows]
    full += [[group[i] if j == i else 0 for j in range(k)] for i in range(k)]
    hnf = linalg.hermite_normal_form(full)
    if len(hnf) != k:
        raise InternalInvariantViolation("subgroup lattice lost full rank")
    return hnf


def _integral_gram(L):
    den = 1
    for row in L.gram:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    N = [[int(x * den) for x in row] for row in L.gram]
    return N, den


def _pairs_to_zero(N, den, r, s):
    acc = 0
    for a, x in enumerate(r):
        if x:
            row = N[a]
            for b, y in enumerate(s):
                if y:
                    acc += x * row[b] * y
    return acc % den == 0


def is_metabolizer(L, generators):
    """Order and self-annihilation test against the defining conditions."""
    group = L.group
    k = len(group)
    rows = [list(g) for g in generators]
    basis = _canonical_basis(rows, group)
    order = 1
    for i in range(k):
        order *= group[i] // basis[i][i]
    if order * order != L.order:
        return False
    N, den = _integral_gram(L)
    for i in range(k):
        for j in range(i, k):
            if not _pairs_to_zero(N, den, basis[i], basis[j]):
                return False
    return True


def _deck_image(deck, vec):
    k = len(vec)
    return [sum(deck[i][j] * vec[j] for j in range(k)) for i in range(k)]


def enumerate_metabolizers(L, invariant_only=False, budget=DEFAULT_BUDGET):
    """All metabolizers of L, optionally only the deck-invariant ones.

    Complete within the budget: every subgroup Hermite basis compatible
    with the half-order condition is visited unless pruned by a pairing
    or containment failure that already rules out its extensions.
    """
    group = list(L.group)
    k = len(group)
    if k == 0:
        return [Metabolizer((), ())]
    total = L.order
    root = isqrt(total)
    if root * root != total:
        return []
    N, den = _integral_gram(L)
    divisors = [[d for d in range(1, f + 1) if f % d == 0] for f in group]

    diag_choices = []

    def collect(i, prod, acc):
        if prod > root or root % prod:
            return
        if i == k:
            if prod == root:
                diag_choices.append(tuple(acc))
            return
        for d in divisors[i]:
            acc.append(d)
            collect(i + 1, prod * d, acc)
            acc.pop()

    collect(0, 1, [])

    found = []
    nodes = 0

    for diag in diag_choices:
        rows = [None] * k

        def fill(i):
            nonlocal nodes
            if i < 0:
                basis = [list(r) for r in rows]
                if invariant_only:
                    for r in basis:
                        image = _deck_image(L.deck, r)
                        if not _suffix_member(basis, diag, image, 0):
                            return
                found.append(Metabolizer(group, basis))
                return
            ranges = [range(diag[j]) for j in range(i + 1, k)]
            for tail in product(*ranges):
                nodes += 1
                if nodes > budget:
                    raise BudgetExceeded(
                        "metabolizer search visited more than %d candidates"
                        % budget, budget)
                row = [0] * i + [diag[i]] + list(tail)
                if not _pairs_to_zero(N, den, row, row):
                    continue
                bad = False
                for j in range(i + 1, k):
                    if not _pairs_to_zero(N, den, row, rows[j]):
                        bad = True
                        break
                if bad:
                    continue
                rows[i] = row
                # the relation f_i e_i must lie in the span of rows i..k-1
                rel = [0] * k
                rel[i] = group[i]
                if _suffix_member(rows, diag, rel, i):
                    fill(i - 1)
                rows[i] = None

        fill(k - 1)

    found.sort(key=lambda m: m.basis)
    return found


def _suffix_member(rows, diag, vec, start):
    v = list(vec)
    k = len(v)
    for i in range(start, k):
        if rows[i] is None:
            return not any(v)
        if v[i] % diag[i]:
            return False
        q = v[i] // diag[i]
        if q:
            v = [a - q * b for a, b in zip(v, rows[i])]
    return not any(v)


def project_metabolizer(L1, L2, A, A1):
    """Push a metabolizer of the sum form through one of the first factor.

    Returns {g in G2 : (g1, g) in A for some g1 in A1}, which is again a
    metabolizer of L2; a failed check is an internal error, not an input
    condition.
    """
    k1 = len(L1.group)
    k2 = len(L2.group)
    if len(A.group) != k1 + k2 or A.group != L1.group + L2.group:
        raise ValueError("A does not live on the direct sum of L1 and L2")
    if A1.group != L1.group:
        raise ValueError("A1 does not live on L1")
    from .cover import direct_sum
    if not is_metabolizer(direct_sum(L1, L2), A.basis):
        raise ValueError("A is not a metabolizer of the sum form")
    if not is_metabolizer(L1, A1.basis):
        raise ValueError("A1 is not a metabolizer of L1")

    # lattice of pairs (g1, g) with g1 in A1: intersect the lattice of A
    # with (lattice of A1) + Z^{k2}
    other = [list(r) + [0] * k2 for r in A1.basis]
    other += [[0] * (k1 + j) + [1] + [0] * (k2 - j - 1) for j in range(k2)]
    mine = [list(r) for r in A.basis]
    stacked = [[mine[a][i] for a in range(len(mine))]
               + [-other[b][i] for b in range(len(other))]
               for i in range(k1 + k2)]
    ker = linalg.integer_kernel(stacked)
    meet = []
    for w in ker:
        u = w[:len(mine)]
        vec = [sum(u[a] * mine[a][i] for a in range(len(mine)))
               for i in range(k1 + k2)]
        meet.append(vec)
    projected = [v[k1:] for v in meet]
    basis = _canonical_basis(projected, L2.group)
    out = Metabolizer(L2.group, basis)
    if not is_metabolizer(L2, out.basis):
        raise InternalInvariantViolation(
            "projection failed the metabolizer conditions")
    return out


def vanishing_chars(L, A, p):
    """Z_p characters vanishing on A, with the deck eigenspace split."""
    group = L.group
    idx = [i for i, f in enumerate(group) if f % p == 0]
    k = len(idx)
    constraints = [[row[i] % p for i in idx] for row in A.basis]
    basis = linalg.modp_kernel(constraints, p)
    action = [[L.deck[i][j] % p for i in idx] for j in idx]
    if L.homology is not None:
        degree = L.homology.degree
    else:
        degree = _matrix_order_mod([[L.deck[i][j] for j in idx] for i in idx],
                                   p) if k else 1
    eigen = {}
    covered = 0
    for lam in unit_roots_mod(degree, p):
        stacked = [list(r) for r in constraints]
        stacked += [[(action[i][j] - (lam if i == j else 0)) % p
                     for j in range(k)] for i in range(k)]
        vecs = linalg.modp_kernel(stacked, p)
        eigen[lam] = vecs
        covered += len(vecs)
    return CharSpace(p, degree, idx, action, eigen, covered == len(basis),
                     basis=basis)


def _weight(vec):
    return sum(1 for x in vec if x)


def find_odd_char(basis, n, p=7, budget=DEFAULT_BUDGET):
    """A vector with an odd number of nonzero entries in the span, or None.

    None comes with an exhaustive certificate; spans wider than half the
    ambient dimension always produce a vector constructively.
    """
    rows = [[x % p for x in row] for row in basis]
    for row in rows:
        if len(row) != n:
            raise ValueError("basis width does not match the summand count")
    if rows:
        red, pivots = linalg.modp_rref(rows, p)
        red = [r for r in red if any(r)]
    else:
        red, pivots = [], []
    m = len(red)
    if m == 0:
        return None
    for row in red:
        if _weight(row) % 2:
            return tuple(row)
    # all reduced rows even, so every non-pivot block has odd weight and
    # in particular is nonzero
    free = [j for j in range(n) if j not in pivots]
    if not free:
        raise InternalInvariantViolation("even pivot rows must have free part")
    B = [[row[j] for j in free] for row in red]
    dep = linalg.modp_kernel(linalg.transpose(B), p)
    if dep:
        s = list(dep[0])
        combo = [sum(s[i] * red[i][j] for i in range(m)) % p for j in range(n)]
        if _weight(s) % 2:
            if _weight(combo) % 2 == 0:
                raise InternalInvariantViolation("parity argument failed")
            return tuple(combo)
        j = next(i for i in range(m) if s[i])
        f = next(c for c in range(1, p) if c != s[j])
        vec = [(combo[c] - f * red[j][c]) % p for c in range(n)]
        if _weight(vec) % 2 == 0:
            raise InternalInvariantViolation("parity argument failed")
        return tuple(vec)
    # square nonsingular reduced block: certify by exhausting the span
    if p ** m > budget:
        raise BudgetExceeded(
            "span of dimension %d exceeds the certificate budget" % m, budget)
    for coeffs in product(range(p), repeat=m):
        if not any(coeffs):
            continue
        vec = [sum(c * row[j] for c, row in zip(coeffs, red)) % p
               for j in range(n)]
        if _weight(vec) % 2:
            return tuple(vec)
    return None


def check_diagonal_lemma(p, k, budget=DEFAULT_BUDGET):
    """Exhaustive check that no-odd-vector row spans (I E) force E to be
    a column-permuted diagonal matrix; returns the tally."""
    if p ** (k * k) > budget:
        raise BudgetExceeded("p^(k*k) = %d matrices" % p ** (k * k), budget)
    nonsingular = 0
    without_odd = 0
    permuted_diagonal = 0
    mismatches = []
    for flat in product(range(p), repeat=k * k):
        E = [list(flat[i * k:(i + 1) * k]) for i in range(k)]
        red, piv = linalg.modp_rref(E, p)
        if len(piv) != k:
            continue
        nonsingular += 1
        rows = [[1 if j == i else 0 for j in range(k)] + E[i]
                for i in range(k)]
        has_odd = False
        for coeffs in product(range(p), repeat=k):
            if not any(coeffs):
                continue
            vec = [sum(c * row[j] for c, row in zip(coeffs, rows)) % p
                   for j in range(2 * k)]
            if _weight(vec) % 2:
                has_odd = True
                break
        if has_odd:
            continue
        without_odd += 1
        ok = all(_weight(row) == 1 for row in E)
        ok = ok and all(_weight(col) == 1 for col in zip(*E))
        if ok:
            permuted_diagonal += 1
        else:
            mismatches.append(E)
    return {"p": p, "k": k,
            "nonsingular": nonsingular,
            "without_odd": without_odd,
            "permuted_diagonal": permuted_diagonal,
            "confirmed": without_odd == permuted_diagonal,
            "mismatches": mismatches}


def admissible_pair(a, b, signs, p=7):
    """Orthogonality constraint binding the two eigenspace halves of a
    vanishing character: sum of sign-weighted products is zero mod p."""
    if not (len(a) == len(b) == len(signs)):
        raise ValueError("coordinate vectors and signs must align")
    return sum(e * x * y for e, x, y in zip(signs, a, b)) % p == 0

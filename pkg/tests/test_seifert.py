import random
from fractions import Fraction

import pytest

from knotconcord import seifert
from knotconcord.cyclo import RatLaurent, cyclotomic_polynomial
from knotconcord.errors import PreconditionError, SingularAtT, UnsupportedGenus
from knotconcord.seifert import (
    KnotModel,
    SeifertMatrix,
    alexander,
    build,
    fox_milnor,
    lt_signature,
    metabolizing_vectors,
    torus_matrix,
    twisted_double_matrix,
)


TREFOIL = SeifertMatrix([[-1, 1], [0, -1]])
FIG8 = SeifertMatrix([[1, 1], [0, -1]])


def laurent(coeffs):
    return RatLaurent.from_list([Fraction(c) for c in coeffs]).normalized()


def test_matrix_validation():
    with pytest.raises(PreconditionError):
        SeifertMatrix([[0, 1], [1, 0]])           # det(V - V^T) = 0
    with pytest.raises(PreconditionError):
        SeifertMatrix([[1, 2, 3], [4, 5, 6]])     # not square
    with pytest.raises(PreconditionError):
        SeifertMatrix([[Fraction(1, 2)]])         # not integral
    with pytest.raises(PreconditionError):
        SeifertMatrix([[1]])                      # odd size


def test_alexander_known_polynomials():
    assert alexander(TREFOIL).coeffs == laurent([1, -1, 1]).coeffs
    assert alexander(FIG8).coeffs == laurent([1, -3, 1]).coeffs
    assert alexander(twisted_double_matrix(1)).coeffs == laurent([2, -5, 2]).coeffs
    assert alexander(twisted_double_matrix(2)).coeffs == laurent([6, -13, 6]).coeffs
    assert alexander(SeifertMatrix([])).coeffs == {0: Fraction(1)}


def test_alexander_determinant_at_one_is_unit():
    rng = random.Random(401)
    for _ in range(20):
        # random genus 1 and 2 matrices with the right skew part
        V = random_seifert(rng, rng.choice([1, 2]))
        d = alexander(V)
        assert abs(d.eval_fraction(Fraction(1))) == 1
        # Alexander polynomials are symmetric
        assert d.is_symmetric()


def random_seifert(rng, genus):
    # random V with V - V^T forced to the standard symplectic form
    n = 2 * genus
    V = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    sympl = {(2 * g, 2 * g + 1) for g in range(genus)}
    for i in range(n):
        for j in range(i + 1, n):
            V[j][i] = V[i][j] - 1 if (i, j) in sympl else V[i][j]
    return SeifertMatrix(V)


def torus_alexander_oracle(p, q):
    # product of cyclotomic polynomials Phi_d over d | pq with d !| p, d !| q
    out = RatLaurent({0: Fraction(1)})
    for d in range(2, p * q + 1):
        if p * q % d == 0 and p % d != 0 and q % d != 0:
            phi = cyclotomic_polynomial(d)
            out = out * RatLaurent({e: Fraction(c) for e, c in enumerate(phi) if c})
    return out.normalized()


def test_torus_matrix_pinned_trefoil():
    assert torus_matrix(2, 3).entries == [[-1, 1], [0, -1]]


def test_torus_alexander_matches_cyclotomic_product():
    for p, q in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]:
        got = alexander(torus_matrix(p, q)).coeffs
        assert got == torus_alexander_oracle(p, q).coeffs


def test_torus_validation():
    with pytest.raises(PreconditionError):
        torus_matrix(2, 4)
    with pytest.raises(PreconditionError):
        torus_matrix(1, 5)


def litherland_count(p, q, t):
    c = 0
    for a in range(1, p):
        for b in range(1, q):
            if t < Fraction(a, p) + Fraction(b, q) < 1 + t:
                c += 1
    return -2 * c + (p - 1) * (q - 1)


def test_signature_frozen_classical_values():
    assert lt_signature(torus_matrix(2, 3), Fraction(1, 2)) == -2
    assert lt_signature(torus_matrix(2, 5), Fraction(1, 2)) == -4
    assert lt_signature(torus_matrix(2, 7), Fraction(1, 2)) == -6
    assert lt_signature(torus_matrix(3, 4), Fraction(1, 2)) == -6
    assert lt_signature(torus_matrix(3, 5), Fraction(1, 2)) == -8
    assert lt_signature(torus_matrix(2, 7), Fraction(1, 5)) == -2
    assert lt_signature(torus_matrix(2, 7), Fraction(2, 5)) == -6
    assert lt_signature(FIG8, Fraction(1, 2)) == 0


def test_signature_matches_lattice_count():
    rng = random.Random(402)
    cases = [(2, 5), (3, 4), (4, 5)]
    for p, q in cases:
        V = torus_matrix(p, q)
        for _ in range(3):
            den = rng.randint(5, 12)
            num = rng.randint(1, den - 1)
            t = Fraction(num, den)
            try:
                got = lt_signature(V, t)
            except SingularAtT:
                continue
            assert got == litherland_count(p, q, t)


def test_signature_mirror_negates():
    V = torus_matrix(2, 5)
    W = V.mirror()
    for t in (Fraction(1, 2), Fraction(1, 3)):
        assert lt_signature(W, t) == -lt_signature(V, t)


def test_signature_singular_at_alexander_root():
    # trefoil Alexander vanishes at exp(2 pi i / 6)
    with pytest.raises(SingularAtT):
        lt_signature(TREFOIL, Fraction(1, 6))
    with pytest.raises(PreconditionError):
        lt_signature(TREFOIL, Fraction(3, 2))


def test_fox_milnor_verdicts():
    assert fox_milnor(twisted_double_matrix(1)).passes      # (2t-1)(t-2)
    assert not fox_milnor(TREFOIL).passes                   # t^2 - t + 1
    doubled = FIG8.block_sum(FIG8)                          # (t^2-3t+1)^2
    assert fox_milnor(doubled).passes
    assert not fox_milnor(FIG8).passes                      # odd power of self-reciprocal
    assert fox_milnor(SeifertMatrix([])).passes


def test_metabolizing_vectors():
    assert metabolizing_vectors(twisted_double_matrix(1)) == [(1, -1), (2, 1)]
    with pytest.raises(UnsupportedGenus):
        metabolizing_vectors(torus_matrix(3, 4))
    # trefoil has no isotropic vector: its quadratic form -x^2 + xy - y^2 is definite
    assert metabolizing_vectors(TREFOIL) == []


def test_build_matrix_and_torus():
    m = build({"kind": "matrix", "entries": [[-1, 1], [0, -1]]})
    assert m.matrix.entries == [[-1, 1], [0, -1]]
    assert m.matrix_only
    t = build({"kind": "torus", "p": 2, "q": 3})
    assert t.matrix.entries == [[-1, 1], [0, -1]]


def test_build_sum_multiplies_alexander():
    s = build({"kind": "sum", "summands": [
        {"sign": 1, "knot": {"kind": "torus", "p": 2, "q": 3}},
        {"sign": -1, "knot": {"kind": "twisted_double", "a": 1}},
    ]})
    prod = alexander(torus_matrix(2, 3)) * alexander(twisted_double_matrix(1))
    assert alexander(s).coeffs == prod.normalized().coeffs


def test_build_order_two_structure():
    m = build({"kind": "order_two", "companion": {"kind": "torus", "p": 2, "q": 3}})
    assert not m.matrix_only
    assert alexander(m.matrix).coeffs == laurent([1, -3, 1]).coeffs
    infs = m.infections
    assert [i.curve for i in infs] == ["B1", "B2"]
    assert [i.pattern for i in infs] == ["double_lift", "double_lift"]
    assert [i.param for i in infs] == [1, 2]
    # second band carries the mirror companion
    assert infs[0].companion.matrix.entries == [[-1, 1], [0, -1]]
    assert infs[1].companion.matrix.entries == [[1, 0], [-1, 1]]


def test_build_satellite_with_token():
    base = {"kind": "sum", "summands": [
        {"sign": 1, "knot": {"kind": "twisted_double", "a": 1}},
        {"sign": 1, "knot": {"kind": "twisted_double", "a": 1}},
    ]}
    m = build({"kind": "satellite", "base": base, "base_token": "core",
               "infections": [
                   {"curve": "B1", "companion": {"kind": "torus", "p": 2, "q": 3},
                    "pattern": "triple_lift", "param": 1},
                   {"curve": "B2", "companion": {"kind": "mirror",
                                                 "knot": {"kind": "torus", "p": 2, "q": 3}},
                    "pattern": "triple_lift", "param": -1},
               ]})
    assert m.tokens == ["core"]
    assert len(m.infections) == 2
    assert m.matrix.size == 4
    sq = laurent([2, -5, 2]) * laurent([2, -5, 2])
    assert alexander(m).coeffs == sq.normalized().coeffs


def test_build_rejects_bad_input():
    with pytest.raises(PreconditionError):
        build({"kind": "nonsense"})
    with pytest.raises(PreconditionError):
        build({"kind": "twisted_double", "a": 0})
    with pytest.raises(PreconditionError):
        build({"kind": "sum", "summands": [{"sign": 2, "knot": {"kind": "torus", "p": 2, "q": 3}}]})
    # infected summands cannot be mirrored
    with pytest.raises(PreconditionError):
        build({"kind": "sum", "summands": [
            {"sign": -1, "knot": {"kind": "order_two",
                                  "companion": {"kind": "torus", "p": 2, "q": 3}}}]})

# cython: language_level=3
"""Hermitian pivot reduction over a cyclotomic field, compiled kernel.

A Cython transcription of _inertia_py.py: the algorithm, the packed entry
format (coefficient list, denominator) and the return contract are
identical; only loop indices and list handling are typed.  Coefficients
stay Python integers since exact congruence reduction grows them without
bound.
"""

from math import gcd

BACKEND = "cython"


cdef tuple _norm(list nums, object den):
    cdef Py_ssize_t i, n = len(nums)
    cdef object g, x
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = den
    for i in range(n):
        x = nums[i]
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        nums = [x // g for x in nums]
        den = den // g
    return nums, den


cdef tuple _mul(tuple a, tuple b, list red, Py_ssize_t deg):
    cdef list an = a[0], bn = b[0]
    cdef object ad = a[1], bd = b[1]
    cdef Py_ssize_t i, j
    cdef object ai, bj, c
    cdef list raw, out, row
    if deg == 1:
        return _norm([an[0] * bn[0]], ad * bd)
    raw = [0] * (2 * deg - 1)
    for i in range(deg):
        ai = an[i]
        if ai:
            for j in range(deg):
                bj = bn[j]
                if bj:
                    raw[i + j] = raw[i + j] + ai * bj
    out = raw[:deg]
    for i in range(deg, 2 * deg - 1):
        c = raw[i]
        if c:
            row = red[i - deg]
            for j in range(deg):
                out[j] = out[j] + c * row[j]
    return _norm(out, ad * bd)


cdef tuple _sub(tuple a, tuple b, Py_ssize_t deg):
    cdef list an = a[0], bn = b[0]
    cdef object ad = a[1], bd = b[1]
    cdef object g = gcd(ad, bd)
    cdef object la = bd // g, lb = ad // g
    cdef Py_ssize_t i
    return _norm([an[i] * la - bn[i] * lb for i in range(deg)], ad * la)


cdef tuple _add(tuple a, tuple b, Py_ssize_t deg):
    cdef list an = a[0], bn = b[0]
    cdef object ad = a[1], bd = b[1]
    cdef object g = gcd(ad, bd)
    cdef object la = bd // g, lb = ad // g
    cdef Py_ssize_t i
    return _norm([an[i] * la + bn[i] * lb for i in range(deg)], ad * la)


cdef tuple _apply(list basis_images, tuple a, Py_ssize_t deg):
    cdef list an = a[0]
    cdef object ad = a[1]
    cdef list out = [0] * deg
    cdef list img
    cdef Py_ssize_t i, j
    cdef object c
    for j in range(deg):
        c = an[j]
        if c:
            img = basis_images[j]
            for i in range(deg):
                out[i] = out[i] + c * img[i]
    return _norm(out, ad)


cdef tuple _inv(tuple a, list red, list conjmat, list sigmas, Py_ssize_t deg):
    cdef list an = a[0]
    cdef object ad = a[1]
    cdef tuple adj = ([1] + [0] * (deg - 1), 1)
    cdef tuple nrm
    cdef list nn
    cdef Py_ssize_t i
    cdef object x
    for sg in sigmas:
        adj = _mul(adj, _apply(sg, (an, 1), deg), red, deg)
    nrm = _mul((an, 1), adj, red, deg)
    nn = nrm[0]
    for i in range(1, deg):
        assert nn[i] == 0, "field norm must be rational"
    assert nn[0] != 0
    return _norm([x * ad * nrm[1] for x in adj[0]], adj[1] * nn[0])


def hermitian_pivots(Py_ssize_t size, Py_ssize_t deg, list red, list conjmat,
                     list sigmas, list nums, list dens):
    """Reduce a Hermitian matrix, returning (pivots, two_blocks, zero_dim).

    Same contract as the pure implementation: flattened row-major packed
    entries in, nonzero diagonal pivots plus hyperbolic block count plus
    radical dimension out.
    """
    cdef list A = [[(list(nums[i * size + j]), dens[i * size + j])
                    for j in range(size)] for i in range(size)]
    cdef list active = list(range(size))
    cdef list pivots = []
    cdef Py_ssize_t two_blocks = 0
    cdef Py_ssize_t pi, fi, fj, ri, ci, m, ii, jj, r, c, i
    cdef tuple p, ip, b, ib, ibc, wr, ur, vr, upd, t
    cdef list rest, w, u, v
    while active:
        pi = -1
        for i in active:
            if any((<tuple>A[i][i])[0]):
                pi = i
                break
        if pi >= 0:
            p = A[pi][pi]
            pivots.append((list(p[0]), p[1]))
            ip = _inv(p, red, conjmat, sigmas, deg)
            rest = [i for i in active if i != pi]
            m = len(rest)
            w = [_mul(A[r][pi], ip, red, deg) for r in rest]
            for ri in range(m):
                r = rest[ri]
                wr = w[ri]
                for ci in range(ri, m):
                    c = rest[ci]
                    upd = _sub(A[r][c], _mul(wr, A[pi][c], red, deg), deg)
                    A[r][c] = upd
                    if ci != ri:
                        A[c][r] = _apply(conjmat, upd, deg)
            active = rest
            continue
        fi = fj = -1
        for ii in range(len(active)):
            for jj in range(ii + 1, len(active)):
                if any((<tuple>A[active[ii]][active[jj]])[0]):
                    fi = active[ii]
                    fj = active[jj]
                    break
            if fi >= 0:
                break
        if fi < 0:
            return pivots, two_blocks, len(active)
        two_blocks += 1
        b = A[fi][fj]
        ib = _inv(b, red, conjmat, sigmas, deg)
        ibc = _apply(conjmat, ib, deg)
        rest = [i for i in active if i != fi and i != fj]
        m = len(rest)
        # A[r][c] -= A[r][fj]*(1/b)*A[fi][c] + A[r][fi]*(1/conj(b))*A[fj][c]
        u = [_mul(A[r][fj], ib, red, deg) for r in rest]
        v = [_mul(A[r][fi], ibc, red, deg) for r in rest]
        for ri in range(m):
            r = rest[ri]
            ur = u[ri]
            vr = v[ri]
            for ci in range(ri, m):
                c = rest[ci]
                t = _add(_mul(ur, A[fi][c], red, deg),
                         _mul(vr, A[fj][c], red, deg), deg)
                upd = _sub(A[r][c], t, deg)
                A[r][c] = upd
                if ci != ri:
                    A[c][r] = _apply(conjmat, upd, deg)
        active = rest
    return pivots, two_blocks, 0

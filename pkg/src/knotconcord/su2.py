"""Torus-knot signatures by counting representation arcs.

Irreducible SU(2) representations of the (-a, a+1) torus knot group come in
one-parameter arcs indexed by integer pairs (m, n) with 0 < m < a,
0 < n < a+1 and m = n mod 2.  Along each arc the meridian eigenvalue angle
sweeps an open interval whose endpoints are the rational angles
|m/a - n/(a+1)| and m/a + n/(a+1), the latter reduced into [0, 1] by
reflecting past a half turn.  The signature at parameter t is twice the
count of arcs whose interval contains t; for this orientation every arc
contributes with the same positive sign, so no perturbation bookkeeping is
needed.  All comparisons are exact on fractions of a half turn; no
floating-point trace values appear anywhere.
"""

from fractions import Fraction

from .errors import EndpointCollision, PreconditionError


class RepArc:
    """One arc of irreducible representations with its meridian angle
    interval (lo, hi), both exact fractions of a half turn."""

    __slots__ = ("m", "n", "lo", "hi", "folded")

    def __init__(self, a, m, n):
        self.m = m
        self.n = n
        lo = abs(Fraction(m, a) - Fraction(n, a + 1))
        hi = Fraction(m, a) + Fraction(n, a + 1)
        self.folded = hi > 1
        if self.folded:
            hi = 2 - hi
        self.lo = lo
        self.hi = hi

    def contains(self, t):
        return self.lo < t < self.hi

    def hits_endpoint(self, t):
        return t == self.lo or t == self.hi

    def __repr__(self):
        return "RepArc(m=%d, n=%d, (%s, %s))" % (self.m, self.n, self.lo, self.hi)

    def to_json(self):
        return {"m": self.m, "n": self.n,
                "interval": [str(self.lo), str(self.hi)],
                "folded": self.folded}


def rep_arcs(a):
    """Complete arc list for the (-a, a+1) torus knot group, ordered by
    (m, n).  Empty for a = 1: no interior m exists."""
    if not isinstance(a, int) or a < 1:
        raise PreconditionError("torus parameter must be a positive integer")
    arcs = []
    for m in range(1, a):
        for n in range(1, a + 1):
            if (m - n) % 2 == 0:
                arcs.append(RepArc(a, m, n))
    return arcs


def count_signature(a, t):
    """Signature of the (-a, a+1) torus knot at t by arc counting: twice
    the number of arcs whose open angle interval contains t.  Requires
    0 < t < 1; raises EndpointCollision when t is an arc endpoint, where
    the count is ill defined."""
    t = Fraction(t)
    if not 0 < t < 1:
        raise PreconditionError("parameter must satisfy 0 < t < 1")
    arcs = rep_arcs(a)
    for arc in arcs:
        if arc.hits_endpoint(t):
            raise EndpointCollision(
                "t = %s is an endpoint of the (m, n) = (%d, %d) arc"
                % (t, arc.m, arc.n))
    return 2 * sum(1 for arc in arcs if arc.contains(t))


def _covers_window(intervals, lo, hi):
    # greedy chain of open intervals over the open window (lo, hi)
    ivs = sorted(iv for iv in intervals)
    reach = lo
    for l, h in ivs:
        if l > reach:
            return False
        reach = max(reach, h)
        if reach >= hi:
            return True
    return reach >= hi


def verify_herald(a, grid=100):
    """Positivity of the arc-count signature strictly inside the window
    (1/(a(a+1)), 1 - 1/(a(a+1))).

    Samples grid rational points inside the window, skipping arc endpoints,
    and checks the count is positive at each.  Also certifies the covering
    argument behind the positivity claim: the arcs with (m, n) = (1, odd)
    already cover the window."""
    if not isinstance(a, int) or a < 2:
        raise PreconditionError("window check needs a >= 2")
    if not isinstance(grid, int) or grid < 1:
        raise PreconditionError("sample count must be a positive integer")
    w_lo = Fraction(1, a * (a + 1))
    w_hi = 1 - w_lo
    checked = 0
    skipped = 0
    min_count = None
    failures = []
    for k in range(1, grid + 1):
        t = w_lo + (w_hi - w_lo) * Fraction(k, grid + 1)
        try:
            c = count_signature(a, t)
        except EndpointCollision:
            skipped += 1
            continue
        checked += 1
        if min_count is None or c < min_count:
            min_count = c
        if c <= 0:
            failures.append(str(t))
    family = [arc for arc in rep_arcs(a) if arc.m == 1 and arc.n % 2 == 1]
    # the count is symmetric under t -> 1-t, so covering the window only
    # needs the family together with its mirror images; the first arc
    # starts exactly at the window edge and consecutive arcs overlap
    pieces = [(arc.lo, arc.hi) for arc in family]
    pieces += [(1 - hi, 1 - lo) for lo, hi in pieces]
    covers = _covers_window(pieces, w_lo, w_hi)
    return {"a": a,
            "window": [str(w_lo), str(w_hi)],
            "grid": grid,
            "samples_checked": checked,
            "skipped_endpoints": skipped,
            "min_count": min_count,
            "all_positive": not failures and checked > 0,
            "failures": failures,
            "cover_family": [[arc.m, arc.n] for arc in family],
            "cover_intervals": [[str(arc.lo), str(arc.hi)] for arc in family],
            "cover_uses_symmetry": True,
            "covers_window": covers}

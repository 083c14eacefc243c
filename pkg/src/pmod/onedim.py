"""One-parameter pipeline: barcodes and bottleneck distance.

Over a single parameter every finitely presented module splits as a
finite sum of interval modules C[b, d), so the whole isomorphism type
is a persistence diagram. The barcode comes out of the standard graded
column reduction of the presentation matrix; the bottleneck distance
comes from bipartite matching over a finite candidate list.

Extended values: deaths and distances may be +infinity, represented by
math.inf. Mixed comparisons and sums with Fraction behave correctly;
the one convention that needs code is inf - inf = 0 when comparing two
deaths (two essential classes cost nothing to match).
"""

import math
from collections import Counter, deque
from fractions import Fraction

from .scalars import inv

INF = math.inf


class NotOneParameter(Exception):
    pass


def format_extended(x):
    return "inf" if x == INF else str(x)


class Interval:
    """Half-open [birth, death), death possibly infinite.

    birth == death (an empty interval) is allowed for degenerate
    diagrams fed to the bottleneck routines; barcode never emits one.
    """

    __slots__ = ("birth", "death")

    def __init__(self, birth, death):
        self.birth = Fraction(birth)
        self.death = INF if death == INF else Fraction(death)
        if not self.birth <= self.death:
            raise ValueError(f"interval with birth {birth} > death {death}")

    def halfwidth(self):
        return (self.death - self.birth) / 2

    def __eq__(self, other):
        return (isinstance(other, Interval)
                and self.birth == other.birth and self.death == other.death)

    def __hash__(self):
        return hash((self.birth, self.death))

    def __repr__(self):
        return f"[{self.birth}, {format_extended(self.death)})"

    def sort_key(self):
        return (self.birth, self.death)


class PersistenceDiagram:
    """Finite multiset of intervals."""

    __slots__ = ("mult",)

    def __init__(self, pairs=()):
        mult = Counter()
        for interval, m in pairs:
            assert m >= 0
            mult[interval] += m
        self.mult = {i: m for i, m in mult.items() if m > 0}

    def support(self):
        return sorted(self.mult, key=Interval.sort_key)

    def pairs(self):
        return [(i, self.mult[i]) for i in self.support()]

    def total(self):
        return sum(self.mult.values())

    def __eq__(self, other):
        return isinstance(other, PersistenceDiagram) and self.mult == other.mult

    def __repr__(self):
        inside = ", ".join(f"{i} x {m}" for i, m in self.pairs())
        return f"Diagram{{{inside}}}"


def diagram_of(intervals):
    return PersistenceDiagram((i, 1) for i in intervals)


class Multibijection:
    """A matching witness between two diagrams.

    matched maps (I, J) pairs to multiplicities; unmatched1/unmatched2
    count the intervals on each side sent to the diagonal. Row and
    column sums reproduce the diagrams exactly.
    """

    __slots__ = ("matched", "unmatched1", "unmatched2")

    def __init__(self, matched, unmatched1, unmatched2):
        self.matched = dict(matched)
        self.unmatched1 = dict(unmatched1)
        self.unmatched2 = dict(unmatched2)

    def check_against(self, D1, D2):
        row = Counter()
        col = Counter()
        for (i, j), m in self.matched.items():
            row[i] += m
            col[j] += m
        for i, m in self.unmatched1.items():
            row[i] += m
        for j, m in self.unmatched2.items():
            col[j] += m
        return dict(row) == D1.mult and dict(col) == D2.mult


# ----------------------------------------------------------------------
# barcode
# ----------------------------------------------------------------------

def barcode(P):
    """Persistence diagram of a one-parameter presentation.

    Standard graded column reduction: generators are ordered by (grade,
    index) and each relation column, in grade order, is reduced against
    the previously kept columns by cancelling its lowest nonzero row. A
    column surviving with low row g pairs gr(g) with the relation's
    grade; generators never chosen as a low stay alive forever.
    Zero-length intervals are dropped (they are how non-minimality of
    the input shows up, and present no bar).
    """
    if P.n != 1:
        raise NotOneParameter(f"barcode needs n=1, got n={P.n}")
    gens = P.generators
    order = sorted(range(len(gens)),
                   key=lambda i: (gens.grades[i].coords[0], i))

    reduced = {}   # low row -> column vector (in sorted-row coordinates)
    death_of = {}  # low row -> death coordinate
    for el in P.relations:
        vec = [el.coeffs[order[r]] for r in range(len(gens))]
        while True:
            low = None
            for r in range(len(vec) - 1, -1, -1):
                if not vec[r].is_zero():
                    low = r
                    break
            if low is None:
                break
            if low in reduced:
                other = reduced[low]
                f = vec[low] * inv(other[low])
                vec = [a - (f * b) for a, b in zip(vec, other)]
            else:
                reduced[low] = vec
                death_of[low] = el.grade.coords[0]
                break

    intervals = []
    for r in range(len(gens)):
        b = gens.grades[order[r]].coords[0]
        if r in death_of:
            d = death_of[r]
            if b < d:
                intervals.append(Interval(b, d))
        else:
            intervals.append(Interval(b, INF))
    return diagram_of(intervals)


# ----------------------------------------------------------------------
# bottleneck distance
# ----------------------------------------------------------------------

def interval_bottleneck(I1, I2):
    """max of endpoint distances, with inf - inf = 0."""
    db = abs(I1.birth - I2.birth)
    if I1.death == INF and I2.death == INF:
        dd = Fraction(0)
    else:
        dd = abs(I1.death - I2.death)
    return max(db, dd)


def _hopcroft_karp(adj, nleft, nright):
    """Maximum bipartite matching. Returns (size, left_match)."""
    match_l = [-1] * nleft
    match_r = [-1] * nright
    while True:
        dist = [-1] * nleft
        queue = deque()
        for i in range(nleft):
            if match_l[i] == -1:
                dist[i] = 0
                queue.append(i)
        reachable_free = False
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                w = match_r[j]
                if w == -1:
                    reachable_free = True
                elif dist[w] == -1:
                    dist[w] = dist[i] + 1
                    queue.append(w)
        if not reachable_free:
            break

        def augment(i):
            for j in adj[i]:
                w = match_r[j]
                if w == -1 or (dist[w] == dist[i] + 1 and augment(w)):
                    match_l[i] = j
                    match_r[j] = i
                    return True
            dist[i] = -1
            return False

        for i in range(nleft):
            if match_l[i] == -1:
                augment(i)
    size = sum(1 for j in match_l if j != -1)
    return size, match_l


def matching_feasible(D1, D2, e):
    """Is there a multibijection moving no interval by more than e?

    Matched pairs must have interval_bottleneck <= e; an interval may
    instead go unmatched (to the diagonal) when its halfwidth <= e.
    Decided by perfect matching on the dummy-augmented bipartite graph:
    side 1 holds the intervals of D1 plus one dummy per interval of D2,
    side 2 symmetrically; dummies accept any diagonal-eligible interval
    and each other. Returns (feasible, Multibijection or None).
    """
    if e != INF and e < 0:
        raise ValueError(f"negative tolerance {e}")
    L1 = [i for i, m in D1.pairs() for _ in range(m)]
    L2 = [j for j, m in D2.pairs() for _ in range(m)]
    m, k = len(L1), len(L2)
    # left nodes: 0..m-1 real, m..m+k-1 dummy
    # right nodes: 0..k-1 real, k..k+m-1 dummy
    adj = [[] for _ in range(m + k)]
    for a, I in enumerate(L1):
        for b, J in enumerate(L2):
            if interval_bottleneck(I, J) <= e:
                adj[a].append(b)
        if I.halfwidth() <= e:
            adj[a].extend(range(k, k + m))
    diag2 = [b for b, J in enumerate(L2) if J.halfwidth() <= e]
    for t in range(k):
        adj[m + t].extend(diag2)
        adj[m + t].extend(range(k, k + m))

    size, match_l = _hopcroft_karp(adj, m + k, k + m)
    if size < m + k:
        return False, None

    matched = Counter()
    un1 = Counter()
    un2 = Counter()
    for a in range(m):
        j = match_l[a]
        if j < k:
            matched[(L1[a], L2[j])] += 1
        else:
            un1[L1[a]] += 1
    for t in range(k):
        j = match_l[m + t]
        if j < k:
            un2[L2[j]] += 1
    witness = Multibijection(matched, un1, un2)
    assert witness.check_against(D1, D2)
    return True, witness


def bottleneck_candidates(D1, D2):
    cands = {Fraction(0), INF}
    for I in D1.support():
        cands.add(I.halfwidth())
    for J in D2.support():
        cands.add(J.halfwidth())
    for I in D1.support():
        for J in D2.support():
            cands.add(interval_bottleneck(I, J))
    return sorted(cands)


def diagram_bottleneck(D1, D2):
    """Least e at which a feasible multibijection exists.

    The optimum is always one of: 0, an endpoint distance between two
    intervals, or a halfwidth; scanning that finite list in order gives
    the exact infimum.
    """
    for c in bottleneck_candidates(D1, D2):
        ok, _ = matching_feasible(D1, D2, c)
        if ok:
            return c
    raise AssertionError("infinite tolerance must always be feasible")

"""Shared generators and brute-force oracles for the test suite.

The oracles here are deliberately independent of the library internals:
dimension counts and rank are recomputed with a local Gaussian
elimination over int residues, bottleneck costs with inline interval
arithmetic, and exported polynomial systems are re-parsed from text and
solved by exhaustive assignment. Tests compare library answers against
these, never against the library's own helpers.
"""

import math
import random
from fractions import Fraction
from itertools import product

from pmod import (FieldSpec, Grade, GradedSet, Interval, Presentation,
                  diagram_of, grade_leq, make_element)

F2 = FieldSpec(2)
F3 = FieldSpec(3)
F5 = FieldSpec(5)


# ----------------------------------------------------------------------
# random instances
# ----------------------------------------------------------------------

def rand_coord(rng, span=4, denom=4):
    d = rng.randint(1, denom)
    return Fraction(rng.randint(0, span * d), d)


def rand_grade(rng, n, span=4, denom=4):
    return Grade([rand_coord(rng, span, denom) for _ in range(n)])


def random_presentation(rng, field, n, max_gens=3, max_rels=3,
                        min_gens=0, min_rels=0, name="M", span=4, denom=4):
    """A random presentation with small rational grades.

    Relation grades sit at the join of a random subset of generator
    grades, optionally bumped, so the admissibility pattern is usually
    nontrivial. Zero relations can occur and are legitimate input.
    """
    ngens = rng.randint(min_gens, max_gens)
    items = [(f"g{i + 1}", rand_grade(rng, n, span, denom))
             for i in range(ngens)]
    gens = GradedSet(items)
    rels = []
    nrels = rng.randint(min_rels, max_rels) if ngens else 0
    for k in range(nrels):
        picks = rng.sample(range(ngens), rng.randint(1, ngens))
        coords = [max(gens.grades[i].coords[t] for i in picks)
                  for t in range(n)]
        bump = rng.choice([0, 0, Fraction(1, 2), 1])
        u = Grade([c + bump for c in coords])
        coeffs = [field.scalar(rng.randrange(field.p))
                  if grade_leq(g, u) else field.zero()
                  for g in gens.grades]
        rels.append((f"r{k + 1}", make_element(gens, u, coeffs, field)))
    return Presentation(field, n, gens, rels, name=name)


def random_diagram(rng, max_intervals=3, span=4, denom=4, inf_prob=0.2):
    ivals = []
    for _ in range(rng.randint(0, max_intervals)):
        b = rand_coord(rng, span, denom)
        if rng.random() < inf_prob:
            d = math.inf
        else:
            d = b + Fraction(rng.randint(1, span * denom), denom)
        ivals.append(Interval(b, d))
        if rng.random() < 0.3:
            ivals.append(Interval(b, d))
    return diagram_of(ivals)


# ----------------------------------------------------------------------
# dimension oracle (local Gauss over F_p, independent of pmod.freemod)
# ----------------------------------------------------------------------

def local_rank_mod_p(rows, width, p):
    rows = [list(r) for r in rows]
    rank = 0
    for c in range(width):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p),
                   None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        fac = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * fac) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def dim_at(P, t):
    """dim of the presented 1-parameter module at t, by direct count."""
    assert P.n == 1
    alive = [i for i, g in enumerate(P.generators.grades)
             if g.coords[0] <= t]
    rows = [[el.coeffs[i].value for i in alive]
            for el in P.relations if el.grade.coords[0] <= t]
    return len(alive) - local_rank_mod_p(rows, len(alive), P.field.p)


# ----------------------------------------------------------------------
# bottleneck oracle (exhaustive over partial injections)
# ----------------------------------------------------------------------

def _pair_cost(i1, i2):
    db = abs(i1.birth - i2.birth)
    if i1.death == math.inf and i2.death == math.inf:
        dd = 0
    elif i1.death == math.inf or i2.death == math.inf:
        return math.inf
    else:
        dd = abs(i1.death - i2.death)
    return max(db, dd)


def _solo_cost(iv):
    if iv.death == math.inf:
        return math.inf
    return (iv.death - iv.birth) / 2


def brute_bottleneck(D1, D2):
    L1 = [iv for iv, m in D1.pairs() for _ in range(m)]
    L2 = [iv for iv, m in D2.pairs() for _ in range(m)]
    k = len(L2)
    best = [math.inf]

    def rec(i, used, cur):
        if cur > best[0]:
            return
        if i == len(L1):
            rest = max((_solo_cost(L2[t]) for t in range(k)
                        if not (used >> t) & 1), default=0)
            best[0] = min(best[0], max(cur, rest))
            return
        for t in range(k):
            if not (used >> t) & 1:
                rec(i + 1, used | (1 << t),
                    max(cur, _pair_cost(L1[i], L2[t])))
        rec(i + 1, used, max(cur, _solo_cost(L1[i])))

    rec(0, 0, 0)
    return best[0]


# ----------------------------------------------------------------------
# exported-system oracle (re-parse the text, try every assignment)
# ----------------------------------------------------------------------

def parse_system(text):
    lines = text.strip().splitlines()
    assert lines[0].startswith("field ")
    assert lines[1].startswith("vars ")
    assert lines[2].startswith("eqs ")
    nvars = int(lines[1].split()[1])
    neqs = int(lines[2].split()[1])
    eqs = []
    names = []
    seen = set()
    for line in lines[3:]:
        terms = []
        for piece in line.split(" + "):
            parts = piece.split("*")
            coeff = int(parts[0])
            vs = parts[1:]
            for v in vs:
                if v not in seen:
                    seen.add(v)
                    names.append(v)
            terms.append((coeff, vs))
        eqs.append(terms)
    assert len(eqs) == neqs
    assert len(names) <= nvars
    return names, nvars, eqs


def brute_system_solvable(text, p, all_var_count=None):
    """Exhaustive satisfiability of an exported system over F_p.

    Variables that never appear in an equation are unconstrained, so
    only the appearing ones are enumerated.
    """
    names, nvars, eqs = parse_system(text)
    if all_var_count is not None:
        assert nvars == all_var_count
    for vals in product(range(p), repeat=len(names)):
        env = dict(zip(names, vals))
        ok = True
        for terms in eqs:
            acc = 0
            for coeff, vs in terms:
                m = coeff
                for v in vs:
                    m *= env[v]
                acc += m
            if acc % p:
                ok = False
                break
        if ok:
            return True
    return False


# ----------------------------------------------------------------------
# redundancy injection (for minimal-grade uniqueness checks)
# ----------------------------------------------------------------------

def inject_redundancy(rng, P, tag):
    """Add a generator equal to the image of a random admissible element.

    The new generator g' sits at a grade u above some existing ones and
    comes with the defining relation g' - v at u, so the presented
    module is unchanged while the presentation grows.
    """
    gens = list(zip(P.generators.names, P.generators.grades))
    if not gens:
        return P
    field = P.field
    picks = rng.sample(range(len(gens)), rng.randint(1, len(gens)))
    coords = [max(gens[i][1].coords[t] for i in picks)
              for t in range(P.n)]
    bump = rng.choice([0, Fraction(1, 2), 1])
    u = Grade([c + bump for c in coords])
    new_name = f"h{tag}"
    items = gens + [(new_name, u)]
    big = GradedSet(items)
    coeffs = []
    for name, g in gens:
        if grade_leq(g, u):
            coeffs.append(field.scalar(rng.randrange(field.p)))
        else:
            coeffs.append(field.zero())
    coeffs.append(field.scalar(-1))
    old_rels = [(nm, make_element(big, el.grade,
                                  list(el.coeffs) + [field.zero()], field))
                for nm, el in P.rel_pairs()]
    new_rel = (f"q{tag}", make_element(big, u, coeffs, field))
    return Presentation(field, P.n, big, old_rels + [new_rel], name=P.name)


def rng_for(seed):
    return random.Random(seed)

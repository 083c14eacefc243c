"""Compatible presentation pairs from an interleaving witness.

Two modules are e-interleaved iff they admit presentations built from
shared graded sets W1, W2 and shared relation lists Y1, Y2:

    M = < W1, W2(-e) | Y1, Y2(-e) >      N = < W1(-e), W2 | Y1(-e), Y2 >

Given presentations of M and N and a witness pair (A, B), the
construction takes W1 = G_M, W2 = G_N, keeps the original relations,
and adds one mixed relation per opposite generator: for y in G_N the
element y - (B's column at y), placed at grade gr(y) + e, and
symmetrically for y in G_M against A.

Mixed relations are stored over the plain combined basis W1 ++ W2; the
shift lives in the element's grade (a W2 coefficient in Y1 is only
legitimate when gr(w) + e <= gr(element), since w exists in W2(-e)
only from grade gr(w) + e onward).
"""

from .grading import grade_shift, grade_leq, check_epsilon
from .freemod import GradedSet, make_element, span_membership, apply
from .presentation import Presentation
from .interleave import InterleavingProblem, check_closure, DEFAULT_BUDGET
from .distance import is_isomorphic


class InvalidWitness(Exception):
    pass


def combined_basis(W1, W2):
    """W1 ++ W2 as one graded set, suffixing W2 names that clash.

    Returns (basis, w2_names) with w2_names the possibly renamed W2
    entries, in W2 order.
    """
    used = set(W1.names)
    items = list(W1)
    w2_names = []
    for name, g in W2:
        nm = name
        while nm in used:
            nm = nm + "_2"
        used.add(nm)
        w2_names.append(nm)
        items.append((nm, g))
    return GradedSet(items), tuple(w2_names)


def _unique(name, used):
    while name in used:
        name = name + "_2"
    used.add(name)
    return name


class CompatiblePair:
    """(W1, W2, Y1, Y2, e) with Y-lists as (name, element) pairs.

    Elements live over combined_basis(W1, W2); each Y-list is stored
    sorted by grade (stable). The shifted-grade invariants are not
    enforced here; verify_compatible checks them.
    """

    __slots__ = ("W1", "W2", "Y1", "Y2", "e", "basis", "w2_names")

    def __init__(self, W1, W2, Y1, Y2, e):
        self.W1 = W1
        self.W2 = W2
        self.e = check_epsilon(e)
        self.basis, self.w2_names = combined_basis(W1, W2)
        for nm, el in list(Y1) + list(Y2):
            if el.basis != self.basis:
                raise ValueError(f"element {nm} is not over W1 ++ W2")
        self.Y1 = tuple(sorted(Y1, key=lambda p: p[1].grade.coords))
        self.Y2 = tuple(sorted(Y2, key=lambda p: p[1].grade.coords))

    def __repr__(self):
        return (f"CompatiblePair(|W1|={len(self.W1)}, |W2|={len(self.W2)}, "
                f"|Y1|={len(self.Y1)}, |Y2|={len(self.Y2)}, e={self.e})")


def compatible_presentations(P_M, P_N, witness, e):
    """Build the pair and the two induced presentations.

    The witness is revalidated from scratch (shapes, shift, pattern
    spaces, closure); InvalidWitness on any failure. Returns
    (pair, induced_M, induced_N).
    """
    e = check_epsilon(e)
    prob = InterleavingProblem(P_M, P_N, e)
    A, B = witness.A, witness.B
    if A.domain != P_M.generators or A.codomain != P_N.generators:
        raise InvalidWitness("A does not map M's generators to N's")
    if B.domain != P_N.generators or B.codomain != P_M.generators:
        raise InvalidWitness("B does not map N's generators to M's")
    if A.shift != e or B.shift != e:
        raise InvalidWitness(f"witness shift ({A.shift}, {B.shift}) != {e}")
    for mat in (A, B):
        if mat.field is not None and mat.field != P_M.field:
            raise InvalidWitness("witness over the wrong field")
    for w in P_M.relations:
        inside, _ = span_membership(apply(A, w), P_N.relations)
        if not inside:
            raise InvalidWitness(
                f"A carries a relation of {P_M.name} outside the "
                f"relations of {P_N.name}")
    for w in P_N.relations:
        inside, _ = span_membership(apply(B, w), P_M.relations)
        if not inside:
            raise InvalidWitness(
                f"B carries a relation of {P_N.name} outside the "
                f"relations of {P_M.name}")
    if not check_closure(A, B, prob):
        raise InvalidWitness("round trips are not identity up to relations")

    field = P_M.field
    W1, W2 = P_M.generators, P_N.generators
    basis, _ = combined_basis(W1, W2)
    gm, gn = len(W1), len(W2)
    zero, one = field.zero(), field.one()

    used1 = set()
    Y1 = [(_unique(nm, used1),
           make_element(basis, el.grade, list(el.coeffs) + [zero] * gn,
                        field))
          for nm, el in P_M.rel_pairs()]
    for j, (yname, ygrade) in enumerate(W2):
        coeffs = [-B.entries[i][j] for i in range(gm)] \
            + [one if t == j else zero for t in range(gn)]
        el = make_element(basis, grade_shift(ygrade, e), coeffs, field)
        Y1.append((_unique(f"m_{yname}", used1), el))

    used2 = set()
    Y2 = [(_unique(nm, used2),
           make_element(basis, el.grade, [zero] * gm + list(el.coeffs),
                        field))
          for nm, el in P_N.rel_pairs()]
    for j, (yname, ygrade) in enumerate(W1):
        coeffs = [one if t == j else zero for t in range(gm)] \
            + [-A.entries[i][j] for i in range(gn)]
        el = make_element(basis, grade_shift(ygrade, e), coeffs, field)
        Y2.append((_unique(f"m_{yname}", used2), el))

    pair = CompatiblePair(W1, W2, Y1, Y2, e)
    ind_M, ind_N = induced_presentations(pair, field, P_M.n,
                                         (P_M.name, P_N.name))
    return pair, ind_M, ind_N


def induced_presentations(pair, field, n, names=("M", "N")):
    """The two quotients presented by a compatible pair.

    For M: generators W1 at their own grades and W2 raised by e;
    relations Y1 at their own grades and Y2 raised by e. For N the
    roles swap. Relations are renamed r1..rk in grade order.
    """
    e = pair.e
    w1_items = list(pair.W1)
    w2_items = [(nm, g) for nm, (_, g) in zip(pair.w2_names, pair.W2)]

    def build(gens_items, rel_data, name):
        gens = GradedSet(gens_items)
        rel_data = sorted(rel_data, key=lambda t: t[0].coords)
        pairs = [(f"r{k + 1}", make_element(gens, grade, coeffs, field))
                 for k, (grade, coeffs) in enumerate(rel_data)]
        return Presentation(field, n, gens, pairs, name)

    gens_M = w1_items + [(nm, grade_shift(g, e)) for nm, g in w2_items]
    rels_M = [(el.grade, el.coeffs) for _, el in pair.Y1] \
        + [(grade_shift(el.grade, e), el.coeffs) for _, el in pair.Y2]
    gens_N = [(nm, grade_shift(g, e)) for nm, g in w1_items] + w2_items
    rels_N = [(el.grade, el.coeffs) for _, el in pair.Y2] \
        + [(grade_shift(el.grade, e), el.coeffs) for _, el in pair.Y1]
    return (build(gens_M, rels_M, names[0]),
            build(gens_N, rels_N, names[1]))


def verify_compatible(pair, P_M, P_N, budget=DEFAULT_BUDGET, threads=1):
    """Self-check of a pair against the two original presentations.

    (a) grade bookkeeping: W1/W2 reproduce the generator data, and
    every mixed coefficient respects the shifted reading (a W2
    coefficient in Y1 needs gr(w) + e <= gr(element), symmetrically
    for Y2); (b) the induced presentations are isomorphic to the
    originals (decided by the 0-interleaving search).
    """
    e = pair.e
    gm = len(pair.W1)
    if pair.W1 != P_M.generators or pair.W2 != P_N.generators:
        return False
    for y_list, shifted_block in ((pair.Y1, "W2"), (pair.Y2, "W1")):
        for _, el in y_list:
            for t, c in enumerate(el.coeffs):
                if c.is_zero():
                    continue
                in_w2 = t >= gm
                shifted = (shifted_block == "W2") == in_w2
                g = el.basis.grades[t]
                bound = grade_shift(g, e) if shifted else g
                if not grade_leq(bound, el.grade):
                    return False
    ind_M, ind_N = induced_presentations(pair, P_M.field, P_M.n,
                                         (P_M.name, P_N.name))
    return (is_isomorphic(ind_M, P_M, budget, threads)
            and is_isomorphic(ind_N, P_N, budget, threads))


def serialize_pair(pair):
    """Text form: presentation-format lines tagged W1/W2 and Y1/Y2."""
    from .grading import format_grade
    field = None
    for _, el in list(pair.Y1) + list(pair.Y2):
        if el.field is not None:
            field = el.field
            break
    n = len(pair.W1.grades[0]) if len(pair.W1) else (
        len(pair.W2.grades[0]) if len(pair.W2) else 1)
    out = []
    if field is not None:
        out.append(f"field {field}")
    out.append(f"params {n}")
    out.append(f"eps {pair.e}")
    for nm, g in pair.W1:
        out.append(f"gen W1 {nm} @ {format_grade(g)}")
    for nm, (_, g) in zip(pair.w2_names, pair.W2):
        out.append(f"gen W2 {nm} @ {format_grade(g)}")
    for tag, y_list in (("Y1", pair.Y1), ("Y2", pair.Y2)):
        for nm, el in y_list:
            terms = [f"{c}*{bn}" for c, bn
                     in zip(el.coeffs, el.basis.names) if not c.is_zero()]
            rhs = " + ".join(terms) if terms else "0"
            out.append(f"rel {tag} {nm} @ {format_grade(el.grade)} = {rhs}")
    return "\n".join(out) + "\n"

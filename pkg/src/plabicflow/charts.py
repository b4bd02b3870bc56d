"""Network-chart coordinates: partition functions, flow polynomials,
valuations, the birational X-mutation, and Plucker-relation checks.

Partition functions live in edge variables (one coordinate per edge of the
model); flow polynomials live in face variables away from the star face.
The two are tied together matching by matching: the face weight of a
matching is computed both from the dual-arrow linear system and from the
flow decomposition, and the two must agree.
"""

from __future__ import annotations

from itertools import combinations

from .combinat import KSubset, format_ksubset, ksubsets
from .laurent import (
    LaurentPoly,
    lp_add,
    lp_equal,
    lp_exact_div,
    lp_min_exponent,
    lp_max_exponent,
    lp_mul,
    lp_pow,
)
from .plabic import (
    ModelInvariantError,
    PlabicModel,
    analyze,
    boundary_value,
    enumerate_matchings,
    flow_weight,
    positroid,
)
from .seeds import Quiver, quiver_b_entries


def edge_lattice(model: PlabicModel) -> tuple[str, ...]:
    return tuple(sorted(model.edges))


def face_lattice(model: PlabicModel) -> tuple[str, ...]:
    """Face labels in canonical order, star face omitted."""
    an = analyze(model)
    star_name = format_ksubset(an.faces[an.star].label, model.n)
    return tuple(x for x in an.lattice if x != star_name)


def partition_function(model: PlabicModel, I: KSubset) -> LaurentPoly:
    """Generating function of matchings with boundary value I, in edge
    variables; zero when I is not in the positroid."""
    I = tuple(I)
    lattice = edge_lattice(model)
    pos = {}
    for m in enumerate_matchings(model):
        if boundary_value(model, m) != I:
            continue
        exp = tuple(1 if e in m else 0 for e in lattice)
        pos[exp] = pos.get(exp, 0) + 1
    return LaurentPoly.make(lattice, pos)


def flow_polynomial(model: PlabicModel, I: KSubset) -> LaurentPoly:
    """Generating function of flows from I to the base boundary value, in
    face variables.

    Each matching with boundary value I contributes the monomial of its
    face weight; the weight is independently recomputed from the flow
    decomposition (left-face counts), and the polynomial must have unique
    minimal and maximal exponents, both with coefficient 1.
    """
    I = tuple(I)
    lattice = face_lattice(model)
    terms: dict[tuple, int] = {}
    found = False
    for m in enumerate_matchings(model):
        if boundary_value(model, m) != I:
            continue
        found = True
        w = flow_weight(model, m)
        wn = {format_ksubset(J, model.n): c for J, c in w.items()}
        exp = tuple(wn[x] for x in lattice)
        if min(exp, default=0) < 0:
            raise ModelInvariantError("weight-negative", f"{I}: {wn}")
        terms[exp] = terms.get(exp, 0) + 1
    f = LaurentPoly.make(lattice, terms)
    if not found:
        return f
    for which, (exp, unique) in (
        ("min", lp_min_exponent(f)),
        ("max", lp_max_exponent(f)),
    ):
        if not unique or f.coeff_of(exp) != 1:
            raise ModelInvariantError(
                "flow-extremes", f"{which} term of flow polynomial at {I}"
            )
    return f


def valuation(model: PlabicModel, f: LaurentPoly) -> dict[str, int]:
    """Coordinatewise-minimal exponent of f, lex tiebreak in face order."""
    exp, _unique = lp_min_exponent(f, tiebreak=list(f.lattice))
    return dict(zip(f.lattice, exp))


# ------------------------------------------------------------ X-mutation


def x_mutate(q: Quiver, j: str, f: LaurentPoly) -> LaurentPoly:
    """Pull a Laurent polynomial on the seed mutated at j back to the seed
    of quiver q.

    The coordinate at the mutated vertex inverts, every other coordinate i
    picks up a factor (1 + x_j)^{b_ij} after clearing the monomial
    x_j^{max(-b_ij, 0)}; the transform is applied termwise with one global
    clearing power so all arithmetic stays polynomial.
    """
    vset = set(q.vertices)
    if j not in vset:
        raise ModelInvariantError("unknown-node", f"no vertex {j}")
    old = [x for x in q.vertices if x != q.star]
    incoming = [x for x in f.lattice]
    extra = [x for x in incoming if x not in vset]
    missing = [x for x in old if x not in set(incoming)]
    if not extra and not missing:
        rename = {x: x for x in incoming}
    elif len(extra) == 1 and missing == [j]:
        rename = {x: (j if x == extra[0] else x) for x in incoming}
    else:
        raise ModelInvariantError(
            "quiver-fz-mismatch",
            f"lattice {incoming} does not match quiver vertices at {j}",
        )
    lattice = tuple(sorted(rename[x] for x in incoming))
    col = {x: i for i, x in enumerate(lattice)}
    b = quiver_b_entries(q)

    terms = []  # (sigma exponent as list, E)
    emin = 0
    for exp, coeff in f.terms:
        m = {rename[x]: e for x, e in zip(f.lattice, exp)}
        E = sum(b.get((i, j), 0) * m[i] for i in lattice if i != j)
        sig = [0] * len(lattice)
        for i in lattice:
            if i == j:
                continue
            sig[col[i]] = m[i]
        sig[col[j]] = -m[j] + sum(
            max(-b.get((i, j), 0), 0) * m[i] for i in lattice if i != j
        )
        emin = min(emin, E)
        terms.append((tuple(sig), E, coeff))

    D = -emin
    one_plus_xj = LaurentPoly.make(
        lattice,
        {
            tuple(0 for _ in lattice): 1,
            tuple(1 if x == j else 0 for x in lattice): 1,
        },
    )
    total = LaurentPoly.zero(lattice)
    for sig, E, coeff in terms:
        piece = lp_mul(
            LaurentPoly.monomial(lattice, sig, coeff), lp_pow(one_plus_xj, E + D)
        )
        total = lp_add(total, piece)
    if D:
        total = lp_exact_div(total, lp_pow(one_plus_xj, D))
    return total


# ------------------------------------------------------ Plucker relations


def three_term_relations(k: int, n: int):
    """All (a, b, c, d, S) with S a (k-2)-subset and a<b<c<d outside S."""
    for S in ksubsets(n, k - 2):
        rest = [x for x in range(1, n + 1) if x not in S]
        for a, b, c, d in combinations(rest, 4):
            yield (a, b, c, d, S)


def _with(S, x, y):
    return tuple(sorted(set(S) | {x, y}))


def plucker_verify(model: PlabicModel, rel, chart: str = "both") -> bool:
    """Check one three-term relation in the requested chart(s).

    The relation on (a, b, c, d, S) is
    D(Sac) D(Sbd) = D(Sab) D(Scd) + D(Sad) D(Sbc),
    with coordinates taken to be partition functions ("partition"), flow
    polynomials ("flow"), or both; subsets outside the positroid contribute
    zero.
    """
    a, b, c, d, S = rel
    charts = ("partition", "flow") if chart == "both" else (chart,)
    for ch in charts:
        coord = partition_function if ch == "partition" else flow_polynomial
        ac, bd = coord(model, _with(S, a, c)), coord(model, _with(S, b, d))
        ab, cd = coord(model, _with(S, a, b)), coord(model, _with(S, c, d))
        ad, bc = coord(model, _with(S, a, d)), coord(model, _with(S, b, c))
        lhs = lp_mul(ac, bd)
        rhs = lp_add(lp_mul(ab, cd), lp_mul(ad, bc))
        if not lp_equal(lhs, rhs):
            return False
    return True

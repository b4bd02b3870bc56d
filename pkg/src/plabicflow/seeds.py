"""Quivers, labelled seeds, kappa vectors, and tropical mutation.

A quiver is the dual graph of a plabic model: one vertex per face (named by
the face's label string), one arrow per edge, boundary faces frozen.  A seed
adds the k-subset labels.  Mutation comes in three flavors: ``fz_mutate``
(matrix mutation of the quiver alone), ``mutate_labels`` (seed-level, with
the Plucker exchange of the mutated label), and ``trop_a_mutate`` (the
piecewise-linear action on integer vectors).

Entries of the exchange matrix between two frozen vertices need care:
``fz_mutate`` is the plain matrix rule and copies frozen-frozen arrows
through unchanged (matrix mutation does not define them), so comparisons of
its output restrict to entries touching at least one mutable vertex.
``mutate_labels`` additionally applies the dimer corner rule -- each 2-path
u -> j -> v between frozen vertices reverses the corner arrow v -> u --
which keeps the quiver equal to the dual of the square-moved model whenever
the move contracts no node (true for every seed reachable from a rectangles
seed), so the exact-sequence identities survive mutation there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinat import (
    KSubset,
    format_ksubset,
    max_diag,
    pairwise_weakly_separated,
)
from .plabic import ModelInvariantError, NotPlabicMutable, PlabicModel, analyze


class NotMutable(Exception):
    """Raised when a mutation is requested at a frozen vertex."""


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    frozen: frozenset[str]
    star: str
    arrows: tuple[tuple[str, str, int], ...]  # (source, target, multiplicity)


def make_quiver(vertices, frozen, star, arrow_counts: dict) -> Quiver:
    """Canonicalize and sanity-check quiver data.

    ``arrow_counts`` maps ordered pairs (source, target) to positive
    multiplicities.  Two-cycles with a mutable endpoint are rejected: an
    exchange matrix cannot carry an arrow in both directions between such a
    pair.  Frozen-frozen two-cycles are allowed (they occur in degenerate
    duals, e.g. the two-face disc) and are never consulted by mutation.
    """
    vertices = tuple(sorted(vertices))
    vset = set(vertices)
    if len(vset) != len(vertices):
        raise ModelInvariantError("duplicate-label", "repeated quiver vertex")
    frozen = frozenset(frozen)
    if not frozen <= vset or star not in frozen:
        raise ModelInvariantError("unknown-node", "frozen/star not among vertices")
    arrows = []
    for (u, v), mult in arrow_counts.items():
        if u not in vset or v not in vset:
            raise ModelInvariantError("unknown-node", f"arrow {u}->{v}")
        if u == v:
            raise ModelInvariantError("bad-label", f"loop at {u}")
        if mult <= 0:
            continue
        if (
            (u not in frozen or v not in frozen)
            and (v, u) in arrow_counts
            and arrow_counts[(v, u)] > 0
        ):
            raise ModelInvariantError(
                "exchange-mismatch", f"two-cycle between {u} and {v}"
            )
        arrows.append((u, v, mult))
    return Quiver(vertices, frozen, star, tuple(sorted(arrows)))


def quiver_of_model(model: PlabicModel) -> Quiver:
    """Dual quiver of a plabic model; faces are named by their label strings."""
    an = analyze(model)
    name = {f.index: format_ksubset(f.label, model.n) for f in an.faces}
    counts: dict[tuple[str, str], int] = {}
    for _e, s, t in an.arrows:
        key = (name[s], name[t])
        counts[key] = counts.get(key, 0) + 1
    frozen = frozenset(name[f.index] for f in an.faces if f.gap is not None)
    return make_quiver(name.values(), frozen, name[an.star], counts)


def mutable_vertices(q: Quiver) -> list[str]:
    return [v for v in q.vertices if v not in q.frozen]


def quiver_b_entries(q: Quiver) -> dict[tuple[str, str], int]:
    """Signed exchange-matrix entries, both orientations of every pair.

    Accumulated, so a frozen-frozen two-cycle nets out; entries of zero net
    multiplicity are dropped.
    """
    b: dict[tuple[str, str], int] = {}
    for u, v, mult in q.arrows:
        b[(u, v)] = b.get((u, v), 0) + mult
        b[(v, u)] = b.get((v, u), 0) - mult
    return {pair: bb for pair, bb in b.items() if bb != 0}


def mutation_entries(q: Quiver) -> dict[tuple[str, str], int]:
    """Exchange-matrix entries with at least one mutable endpoint.

    This is the part of the quiver that mutation tracks; frozen-frozen
    entries are never consulted.
    """
    return {
        (u, v): bb
        for (u, v), bb in quiver_b_entries(q).items()
        if u not in q.frozen or v not in q.frozen
    }


def fz_mutate(q: Quiver, j: str) -> Quiver:
    """Matrix mutation at a mutable vertex j.

    b'_{uv} = -b_{uv} when j is an endpoint, else
    b'_{uv} = b_{uv} + sgn(b_{uj}) * max(b_{uj} b_{jv}, 0).
    Frozen-frozen arrows are copied through unchanged.
    """
    if j not in set(q.vertices):
        raise ModelInvariantError("unknown-node", f"no vertex {j}")
    if j in q.frozen:
        raise NotMutable(f"vertex {j} is frozen")
    b = quiver_b_entries(q)
    counts: dict[tuple[str, str], int] = {}
    for u in q.vertices:
        for v in q.vertices:
            if u == v or (u in q.frozen and v in q.frozen):
                continue
            buv = b.get((u, v), 0)
            if u == j or v == j:
                nb = -buv
            else:
                buj = b.get((u, j), 0)
                bjv = b.get((j, v), 0)
                sgn = (buj > 0) - (buj < 0)
                nb = buv + sgn * max(buj * bjv, 0)
            if nb > 0:
                counts[(u, v)] = nb
    for u, v, mult in q.arrows:
        if u in q.frozen and v in q.frozen:
            counts[(u, v)] = mult
    return make_quiver(q.vertices, q.frozen, q.star, counts)


def _dimer_mutate(q: Quiver, j: str) -> Quiver:
    """Matrix mutation at j plus the dimer update of frozen-frozen arrows.

    Each 2-path u -> j -> v with both u and v frozen sits at a corner of
    the quadrilateral face dual to j, and the square move reverses the
    corner's third arrow v -> u to u -> v.  Seeds reachable from the
    rectangles seed always carry that arrow; its absence means the quiver
    is not the dual of a plabic model.
    """
    base = fz_mutate(q, j)
    counts = {(u, v): m for u, v, m in base.arrows}
    ins = [(u, m) for u, v, m in q.arrows if v == j and u in q.frozen]
    outs = [(v, m) for u, v, m in q.arrows if u == j and v in q.frozen]
    for u, mu in ins:
        for v, mv in outs:
            c = mu * mv
            have = counts.get((v, u), 0)
            if have < c:
                raise ModelInvariantError(
                    "corner-structure",
                    f"no arrow {v} -> {u} at a corner of {j}",
                )
            counts[(v, u)] = have - c
            counts[(u, v)] = counts.get((u, v), 0) + c
    counts = {e: m for e, m in counts.items() if m > 0}
    return make_quiver(q.vertices, q.frozen, q.star, counts)


def _rename_vertex(q: Quiver, old: str, new: str) -> Quiver:
    if new in set(q.vertices) and new != old:
        raise ModelInvariantError("duplicate-label", f"vertex {new} already present")
    rn = lambda x: new if x == old else x
    counts = {(rn(u), rn(v)): m for u, v, m in q.arrows}
    return make_quiver(
        [rn(v) for v in q.vertices],
        [rn(v) for v in q.frozen],
        rn(q.star),
        counts,
    )


@dataclass
class Seed:
    k: int
    n: int
    quiver: Quiver
    labels: dict[str, KSubset]  # vertex name -> k-subset


def seed_of_model(model: PlabicModel) -> Seed:
    an = analyze(model)
    q = quiver_of_model(model)
    labels = {format_ksubset(f.label, model.n): f.label for f in an.faces}
    return Seed(model.k, model.n, q, labels)


@lru_cache(maxsize=None)
def rectangles_seed(k: int, n: int) -> Seed:
    from .plabic import build_rectangles_model

    return seed_of_model(build_rectangles_model(k, n))


def exchange_label(q: Quiver, labels: dict[str, KSubset], j: str) -> KSubset:
    """The Plucker exchange partner of label j in its quiver neighborhood.

    The two in-neighbors must carry S+{a,b} and S+{c,d}, the two
    out-neighbors S+{a,d} and S+{b,c} (or the roles swapped), and j itself
    S plus two of {a,b,c,d}; the exchange partner is S plus the other two.
    Raises NotPlabicMutable when the neighborhood does not have this shape.
    """
    ins: list[KSubset] = []
    outs: list[KSubset] = []
    for u, v, mult in q.arrows:
        if v == j:
            ins.extend([labels[u]] * mult)
        if u == j:
            outs.extend([labels[v]] * mult)
    if len(ins) != 2 or len(outs) != 2:
        raise NotPlabicMutable(
            f"vertex {j} has {len(ins)} in-arrows and {len(outs)} out-arrows"
        )
    S = set(ins[0]) & set(ins[1])
    quad = (set(ins[0]) | set(ins[1])) - S
    if set(outs[0]) & set(outs[1]) != S or (set(outs[0]) | set(outs[1])) - S != quad:
        raise NotPlabicMutable(f"neighbor labels of {j} do not share a quadruple")
    pair = set(labels[j]) - S
    if len(quad) != 4 or len(pair) != 2 or not pair <= quad or set(labels[j]) != S | pair:
        raise NotPlabicMutable(f"label of {j} does not match its neighborhood")
    return tuple(sorted(S | (quad - pair)))


def mutate_labels(s: Seed, j: str) -> Seed:
    """Seed mutation: quiver mutation plus the Plucker label exchange at j."""
    if j in s.quiver.frozen:
        raise NotMutable(f"vertex {j} is frozen")
    new_label = exchange_label(s.quiver, s.labels, j)
    new_name = format_ksubset(new_label, s.n)
    others = [lab for v, lab in s.labels.items() if v != j]
    if new_label in others:
        raise ModelInvariantError("duplicate-label", f"{new_label} already a label")
    if not pairwise_weakly_separated(others + [new_label], s.n):
        raise ModelInvariantError(
            "labels-not-weakly-separated", f"after exchanging {j} -> {new_name}"
        )
    q2 = _rename_vertex(_dimer_mutate(s.quiver, j), j, new_name)
    labels2 = {v: lab for v, lab in s.labels.items() if v != j}
    labels2[new_name] = new_label
    return Seed(s.k, s.n, q2, labels2)


# ------------------------------------------------------------- invariants


def kappa_vector(s: Seed, I: KSubset) -> dict[str, int]:
    """MaxDiag vector of I with respect to the seed's labels.

    Coordinate at vertex J is the longest diagonal of the set difference
    of Young diagrams young(label(J)) minus young(I); the star coordinate
    is always 0.
    """
    out = {v: max_diag(s.labels[v], I, s.n) for v in s.quiver.vertices}
    if out[s.quiver.star] != 0:
        raise ModelInvariantError(
            "bad-label", f"star label {s.labels[s.quiver.star]} has nonzero kappa"
        )
    return out


def beta_matrix(s: Seed) -> dict[tuple[str, str], int]:
    """Boundary map from vertex simples to vertex projectives.

    Column at an interior vertex v is (sum of in-neighbors) - (sum of
    out-neighbors); at a boundary vertex v it is e_v - (sum of
    out-neighbors) + (sum of interior in-neighbors).  Entries are returned
    as a sparse (row, column) map.
    """
    q = s.quiver
    cols: dict[str, dict[str, int]] = {v: {} for v in q.vertices}

    def bump(col: dict[str, int], row: str, c: int):
        col[row] = col.get(row, 0) + c
        if col[row] == 0:
            del col[row]

    for u, v, mult in q.arrows:
        bump(cols[u], v, -mult)
        if v not in q.frozen or u not in q.frozen:
            bump(cols[v], u, mult)
    for v in q.frozen:
        bump(cols[v], v, 1)
    rowsum: dict[str, int] = {}
    for colmap in cols.values():
        for row, c in colmap.items():
            rowsum[row] = rowsum.get(row, 0) + c
    if any(rowsum.values()):
        raise ModelInvariantError(
            "beta-unbalanced",
            "all-ones vector not annihilated; seed outside the supported class",
        )
    return {
        (row, col): c for col, colmap in cols.items() for row, c in colmap.items()
    }


def wt_matrix(s: Seed) -> dict[tuple[str, str], int]:
    """Matrix whose column at vertex u is the kappa vector of label(u)."""
    out = {}
    for u in s.quiver.vertices:
        kv = kappa_vector(s, s.labels[u])
        for v, c in kv.items():
            if c:
                out[(v, u)] = c
    return out


def exact_sequence_checks(s: Seed) -> bool:
    """Three matrix identities tying beta, rank, and weight together.

    beta of the all-ones vector is 0; every column of beta sums to 0
    (rank of beta is 0); and wt composed with beta is minus the identity
    away from the star coordinate.
    """
    q = s.quiver
    beta = beta_matrix(s)
    # beta(all-ones): sum of columns, per row
    rowsum: dict[str, int] = {}
    colsum: dict[str, int] = {}
    for (row, col), c in beta.items():
        rowsum[row] = rowsum.get(row, 0) + c
        colsum[col] = colsum.get(col, 0) + c
    if any(c != 0 for c in rowsum.values()):
        return False
    if any(c != 0 for c in colsum.values()):
        return False
    wt = wt_matrix(s)
    for v in q.vertices:  # column of the product, restricted away from star
        if v == q.star:
            continue
        for i in q.vertices:  # row of the product
            if i == q.star:
                continue
            tot = 0
            for w in q.vertices:
                tot += wt.get((i, w), 0) * beta.get((w, v), 0)
            if tot != (-1 if i == v else 0):
                return False
    return True


# ------------------------------------------------------ tropical mutation


def trop_a_mutate(q: Quiver, j: str, v: dict[str, int]) -> dict[str, int]:
    """Piecewise-linear mutation of an integer vector at vertex j.

    v'_j = min(sum over in-arrows, sum over out-arrows) - v_j with arrow
    multiplicities; all other coordinates are unchanged.
    """
    if j in q.frozen:
        raise NotMutable(f"vertex {j} is frozen")
    s_in = 0
    s_out = 0
    for u, w, mult in q.arrows:
        if w == j:
            s_in += mult * v[u]
        if u == j:
            s_out += mult * v[w]
    out = dict(v)
    out[j] = min(s_in, s_out) - v[j]
    return out

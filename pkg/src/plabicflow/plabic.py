"""Bipartite graphs on the disc: faces, dual quivers, matchings, flows, moves.

A model is a bicolored plane graph embedded in a disc, given combinatorially
by rotation systems (counterclockwise edge order at each internal node) plus
``n`` boundary stubs whose endpoints sit on the disc boundary, labelled
1..n clockwise.  Faces are recovered by closing the disc with virtual
boundary arcs and tracing dart orbits; every face carries a k-subset label
and one face is distinguished (the base face, written ``*`` informally).

The module provides the dimer-model layer: perfect matchings (internal
nodes covered exactly once), their boundary values and face weights, the
equivalent flow picture, the quadrilateral move, and a builder for the
rectangles model of the (k, n) grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combinat import (
    KSubset,
    check_ksubset,
    cyclic_interval,
    format_ksubset,
    ksubsets,
    lex_max,
    necklace_of_positroid,
    pairwise_weakly_separated,
    parse_ksubset,
    rectangle_label,
)

BLACK = "black"
WHITE = "white"


class ModelInvariantError(Exception):
    """A named structural invariant of a model failed."""

    def __init__(self, violation: str, detail: str = ""):
        self.violation = violation
        super().__init__(f"{violation}: {detail}" if detail else violation)


class ParseError(Exception):
    """Malformed model text; carries the 1-based line number."""

    def __init__(self, line_no: int, detail: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {detail}")


class NotPlabicMutable(Exception):
    """The requested move is not available at this face."""


# An edge end is ("n", node_id) or ("t", boundary_label:int).
End = tuple[str, object]
# A dart is (edge_key, direction); direction 0 runs ends[0] -> ends[1].
# Edge keys are ("e", edge_id) for real edges, ("a", l) for boundary arcs.


@dataclass
class PlabicModel:
    k: int
    n: int
    colors: dict[str, str]  # internal node id -> BLACK | WHITE
    edges: dict[str, tuple[End, End]]
    rot: dict[str, tuple[str, ...]]  # node id -> CCW incident edge ids
    label_specs: dict[frozenset, KSubset]  # bounding edge-id set -> label
    star_spec: frozenset
    _analysis: object = field(default=None, repr=False, compare=False)

    def copy_raw(self) -> "PlabicModel":
        return PlabicModel(
            self.k,
            self.n,
            dict(self.colors),
            {e: ends for e, ends in self.edges.items()},
            {v: tuple(r) for v, r in self.rot.items()},
            dict(self.label_specs),
            self.star_spec,
        )


@dataclass
class Face:
    index: int
    darts: frozenset  # darts whose right side is this face
    edge_ids: frozenset  # real edges on the boundary of the face
    label: KSubset | None
    gap: int | None  # l when this is the gap face between stubs l, l+1


@dataclass
class Analysis:
    faces: list[Face]
    face_of_dart: dict  # dart -> face index (outer face excluded)
    label_to_face: dict
    star: int
    arrows: list[tuple[str, int, int]]  # (edge id, source face, target face)
    stub: dict[int, str]  # boundary label -> edge id
    gap_face: dict[int, int]
    anticlockwise: set[int]
    lattice_subsets: tuple[KSubset, ...]
    lattice: tuple[str, ...]


def _other_end(ends: tuple[End, End], here: End) -> End:
    if ends[0] == here:
        return ends[1]
    if ends[1] == here:
        return ends[0]
    raise ValueError(f"{here} not an end of {ends}")


def _end_color(model: PlabicModel, ends: tuple[End, End], end: End) -> str:
    """Color of an end; a boundary tip takes the color opposite its partner."""
    kind, val = end
    if kind == "n":
        return model.colors[val]
    inner = _other_end(ends, end)
    if inner[0] != "n":
        raise ModelInvariantError("edge-both-boundary", f"edge {ends}")
    return WHITE if model.colors[inner[1]] == BLACK else BLACK


def _closed_rotation_system(model: PlabicModel):
    """Rotations for the disc closed up with virtual tips and arcs.

    Returns (rots, ends) over vertex keys ("n", id) / ("t", l) and edge keys
    ("e", id) / ("a", l), where arc l joins tips l and l+1 (cyclically).
    """
    n = model.n
    ends: dict = {}
    for e, (a, b) in model.edges.items():
        ka = ("n", a[1]) if a[0] == "n" else ("t", a[1])
        kb = ("n", b[1]) if b[0] == "n" else ("t", b[1])
        ends[("e", e)] = (ka, kb)
    for l in range(1, n + 1):
        nxt = 1 if l == n else l + 1
        ends[("a", l)] = (("t", l), ("t", nxt))

    rots: dict = {}
    for v, r in model.rot.items():
        rots[("n", v)] = [("e", e) for e in r]
    stub_of: dict[int, str] = {}
    for e, (a, b) in model.edges.items():
        for end in (a, b):
            if end[0] == "t":
                if end[1] in stub_of:
                    raise ModelInvariantError(
                        "duplicate-boundary-label", f"label {end[1]}"
                    )
                stub_of[end[1]] = e
    if set(stub_of) != set(range(1, n + 1)):
        raise ModelInvariantError(
            "bad-boundary-labels",
            f"have {sorted(stub_of)}, expected 1..{n}",
        )
    for l in range(1, n + 1):
        prev = n if l == 1 else l - 1
        rots[("t", l)] = [("a", prev), ("e", stub_of[l]), ("a", l)]
    return rots, ends, stub_of


def _dart_ends(ends, dart):
    ekey, d = dart
    a, b = ends[ekey]
    return (a, b) if d == 0 else (b, a)


def _next_dart(rots, ends, dart):
    _, head = _dart_ends(ends, dart)
    r = rots[head]
    i = r.index(dart[0])
    ekey = r[(i + 1) % len(r)]
    a, b = ends[ekey]
    return (ekey, 0) if a == head else (ekey, 1)


def _trace_faces(model: PlabicModel):
    """All dart orbits of the closed surface; the all-arc orbit is dropped.

    Returns (orbits, stub_of) where each orbit is the ordered dart list of
    one face (the face lies on the right of each of its darts).
    """
    rots, ends, stub_of = _closed_rotation_system(model)
    for vk, r in rots.items():
        if len(set(r)) != len(r):
            raise ModelInvariantError("rotation-repeat", f"at {vk}")
    all_darts = [(ek, d) for ek in sorted(ends, key=str) for d in (0, 1)]
    seen = set()
    orbits = []
    outer = None
    for start in all_darts:
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        cur = _next_dart(rots, ends, start)
        while cur != start:
            if cur in seen:
                raise ModelInvariantError("face-trace", f"orbit collision at {cur}")
            orbit.append(cur)
            seen.add(cur)
            cur = _next_dart(rots, ends, cur)
        if all(ek[0] == "a" for ek, _ in orbit):
            if outer is not None:
                raise ModelInvariantError("outer-face", "more than one all-arc face")
            outer = orbit
        else:
            orbits.append(orbit)
    if outer is None:
        raise ModelInvariantError("outer-face", "no all-arc face found")
    return orbits, stub_of, ends


def _validate_raw(model: PlabicModel):
    for v, c in model.colors.items():
        if c not in (BLACK, WHITE):
            raise ModelInvariantError("bad-color", f"node {v}: {c}")
    if set(model.rot) != set(model.colors):
        raise ModelInvariantError("rotation-coverage", "rot keys != node set")
    incident: dict[str, list[str]] = {v: [] for v in model.colors}
    for e, (a, b) in model.edges.items():
        for end in (a, b):
            if end[0] == "n":
                if end[1] not in model.colors:
                    raise ModelInvariantError("unknown-node", f"edge {e}: {end[1]}")
                incident[end[1]].append(e)
            elif end[0] == "t":
                if not (1 <= end[1] <= model.n):
                    raise ModelInvariantError(
                        "bad-boundary-labels", f"edge {e}: label {end[1]}"
                    )
            else:
                raise ModelInvariantError("bad-end", f"edge {e}: {end}")
        if a[0] == "n" and b[0] == "n":
            if model.colors[a[1]] == model.colors[b[1]]:
                raise ModelInvariantError("bipartite", f"edge {e} joins equal colors")
        if a[0] == "t" and b[0] == "t":
            raise ModelInvariantError("edge-both-boundary", f"edge {e}")
    for v in model.colors:
        if sorted(model.rot[v]) != sorted(incident[v]):
            raise ModelInvariantError(
                "rotation-mismatch",
                f"node {v}: rot {model.rot[v]} vs incident {sorted(incident[v])}",
            )
    # connectivity over internal nodes and tips
    adj: dict = {}
    for e, (a, b) in model.edges.items():
        ka = (a[0], a[1])
        kb = (b[0], b[1])
        adj.setdefault(ka, set()).add(kb)
        adj.setdefault(kb, set()).add(ka)
    if adj:
        start = next(iter(sorted(adj, key=str)))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        want = set(adj) | {("n", v) for v in model.colors}
        if seen != want:
            raise ModelInvariantError("disconnected", f"missing {want - seen}")


def analyze(model: PlabicModel) -> Analysis:
    if model._analysis is not None:
        return model._analysis
    _validate_raw(model)
    orbits, stub_of, ends = _trace_faces(model)

    faces: list[Face] = []
    face_of_dart: dict = {}
    for i, orbit in enumerate(orbits):
        edge_ids = frozenset(ek[1] for ek, _ in orbit if ek[0] == "e")
        gap = None
        for ek, d in orbit:
            if ek[0] == "a":
                if gap is not None and gap != ek[1]:
                    raise ModelInvariantError(
                        "gap-structure", f"face with two arcs {gap},{ek[1]}"
                    )
                gap = ek[1]
        faces.append(Face(i, frozenset(orbit), edge_ids, None, gap))
        for dart in orbit:
            face_of_dart[dart] = i

    gap_face = {f.gap: f.index for f in faces if f.gap is not None}
    if set(gap_face) != set(range(1, model.n + 1)):
        raise ModelInvariantError("gap-structure", f"gap faces {sorted(gap_face)}")

    # resolve labels; a spec is either a face's bounding edge-id set (the
    # text-format identity) or a single ("gap", l) token naming the gap face
    # along boundary arc l — needed when tiny models have two faces with
    # identical edge sets, where edge sets cannot tell them apart
    by_edges: dict = {}
    ambiguous = set()
    for f in faces:
        if f.edge_ids in by_edges:
            ambiguous.add(f.edge_ids)
        by_edges[f.edge_ids] = f.index

    def resolve(spec, what: str) -> int:
        gaps = [x for x in spec if isinstance(x, tuple) and x[:1] == ("gap",)]
        if gaps:
            if len(spec) != 1:
                raise ModelInvariantError(what, f"mixed face spec {sorted(map(str, spec))}")
            l = gaps[0][1]
            if l not in gap_face:
                raise ModelInvariantError(what, f"no gap face {l}")
            return gap_face[l]
        if spec in ambiguous:
            raise ModelInvariantError(
                "ambiguous-face-spec", f"two faces bounded by {sorted(spec)}"
            )
        if spec not in by_edges:
            raise ModelInvariantError(what, f"{sorted(spec)}")
        return by_edges[spec]

    seen_labels = set()
    for spec, label in model.label_specs.items():
        idx = resolve(spec, "label-spec-unmatched")
        check_ksubset(label, model.n)
        if len(label) != model.k:
            raise ModelInvariantError(
                "bad-label", f"{label} is not a {model.k}-subset"
            )
        if label in seen_labels:
            raise ModelInvariantError("duplicate-label", format_ksubset(label, model.n))
        seen_labels.add(label)
        faces[idx].label = label
    for f in faces:
        if f.label is None:
            raise ModelInvariantError(
                "unlabeled-face", f"face bounded by {sorted(f.edge_ids)}"
            )
    star = resolve(model.star_spec, "star-unmatched")
    label_to_face = {f.label: f.index for f in faces}

    # dual arrows: one per real edge, pointing white-on-right
    arrows = []
    for e in sorted(model.edges):
        e_ends = model.edges[e]
        c0 = _end_color(model, e_ends, e_ends[0])
        c1 = _end_color(model, e_ends, e_ends[1])
        if c0 == c1:
            raise ModelInvariantError("bipartite", f"edge {e}")
        d_bw = (("e", e), 0) if c0 == BLACK else (("e", e), 1)
        d_wb = (("e", e), 1) if c0 == BLACK else (("e", e), 0)
        arrows.append((e, face_of_dart[d_bw], face_of_dart[d_wb]))

    # orientation class per boundary edge
    anticlockwise = set()
    arrow_of = {e: (s, t) for e, s, t in arrows}
    for l in range(1, model.n + 1):
        prev = model.n if l == 1 else l - 1
        s, t = arrow_of[stub_of[l]]
        if (s, t) == (gap_face[l], gap_face[prev]):
            anticlockwise.add(l)
        elif (s, t) == (gap_face[prev], gap_face[l]):
            pass
        else:
            raise ModelInvariantError(
                "boundary-arrow", f"stub {l} arrow {s}->{t} not between gap faces"
            )

    subsets = tuple(sorted(f.label for f in faces))
    lattice = tuple(format_ksubset(I, model.n) for I in subsets)
    analysis = Analysis(
        faces,
        face_of_dart,
        label_to_face,
        star,
        arrows,
        stub_of,
        gap_face,
        anticlockwise,
        subsets,
        lattice,
    )
    model._analysis = analysis
    return analysis


# ----------------------------------------------------------------- text I/O


def _format_end(end: End) -> str:
    return f"n:{end[1]}" if end[0] == "n" else f"b:{end[1]}"


def _parse_end(tok: str, line_no: int) -> End:
    if tok.startswith("n:"):
        return ("n", tok[2:])
    if tok.startswith("b:"):
        try:
            return ("t", int(tok[2:]))
        except ValueError:
            raise ParseError(line_no, f"bad boundary label in {tok!r}") from None
    raise ParseError(line_no, f"bad edge end {tok!r} (want n:<node> or b:<label>)")


def save_model(model: PlabicModel) -> str:
    an = analyze(model)
    seen_specs = set()
    for f in an.faces:
        if f.edge_ids in seen_specs:
            raise ModelInvariantError(
                "unrepresentable",
                f"two faces share the bounding edge set {sorted(f.edge_ids)}; "
                "the text format identifies faces by that set",
            )
        seen_specs.add(f.edge_ids)
    out = ["plabic v1", f"kn {model.k} {model.n}"]
    for v in sorted(model.colors):
        out.append(f"node {v} {model.colors[v]}")
    for e in sorted(model.edges):
        a, b = model.edges[e]
        out.append(f"edge {e} {_format_end(a)} {_format_end(b)}")
    for v in sorted(model.rot):
        out.append(f"rot {v} " + " ".join(model.rot[v]))
    for f in sorted(an.faces, key=lambda f: sorted(f.edge_ids)):
        lab = format_ksubset(f.label, model.n)
        out.append(f"label {','.join(sorted(f.edge_ids))} {lab}")
    out.append(f"star {','.join(sorted(an.faces[an.star].edge_ids))}")
    return "\n".join(out) + "\n"


def load_model(text: str) -> PlabicModel:
    k = n = None
    colors: dict[str, str] = {}
    edges: dict[str, tuple[End, End]] = {}
    rot: dict[str, tuple[str, ...]] = {}
    label_specs: dict[frozenset, KSubset] = {}
    star_spec = None
    saw_header = False
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not saw_header:
            if parts != ["plabic", "v1"]:
                raise ParseError(line_no, "expected header 'plabic v1'")
            saw_header = True
            continue
        cmd = parts[0]
        if cmd == "kn":
            if len(parts) != 3:
                raise ParseError(line_no, "kn wants two integers")
            try:
                k, n = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, "kn wants two integers") from None
            if not (1 <= k <= n - 1):
                raise ParseError(line_no, f"need 1 <= k <= n-1, got k={k} n={n}")
        elif cmd == "node":
            if len(parts) != 3 or parts[2] not in (BLACK, WHITE):
                raise ParseError(line_no, "node wants <id> black|white")
            if parts[1] in colors:
                raise ParseError(line_no, f"duplicate node {parts[1]}")
            colors[parts[1]] = parts[2]
        elif cmd == "edge":
            if len(parts) != 4:
                raise ParseError(line_no, "edge wants <id> <end> <end>")
            if parts[1] in edges:
                raise ParseError(line_no, f"duplicate edge {parts[1]}")
            edges[parts[1]] = (
                _parse_end(parts[2], line_no),
                _parse_end(parts[3], line_no),
            )
        elif cmd == "rot":
            if len(parts) < 2:
                raise ParseError(line_no, "rot wants <node> <edges...>")
            if parts[1] in rot:
                raise ParseError(line_no, f"duplicate rot for {parts[1]}")
            rot[parts[1]] = tuple(parts[2:])
        elif cmd == "label":
            if len(parts) != 3:
                raise ParseError(line_no, "label wants <edge-set> <ksubset>")
            if n is None:
                raise ParseError(line_no, "label before kn line")
            spec = frozenset(parts[1].split(","))
            try:
                lab = parse_ksubset(parts[2], n)
            except ValueError as exc:
                raise ParseError(line_no, str(exc)) from None
            if spec in label_specs:
                raise ParseError(line_no, "duplicate face spec")
            label_specs[spec] = lab
        elif cmd == "star":
            if len(parts) != 2:
                raise ParseError(line_no, "star wants <edge-set>")
            if star_spec is not None:
                raise ParseError(line_no, "duplicate star line")
            star_spec = frozenset(parts[1].split(","))
        else:
            raise ParseError(line_no, f"unknown directive {cmd!r}")
    if not saw_header:
        raise ParseError(1, "empty input")
    if k is None:
        raise ParseError(1, "missing kn line")
    if star_spec is None:
        raise ParseError(1, "missing star line")
    model = PlabicModel(k, n, colors, edges, rot, label_specs, star_spec)
    analyze(model)
    return model


# ------------------------------------------------------------- matchings


def enumerate_matchings(model: PlabicModel) -> list[frozenset]:
    """All edge sets covering every internal node exactly once."""
    nodes = sorted(model.colors)
    incident: dict[str, list[str]] = {v: [] for v in nodes}
    for e in sorted(model.edges):
        for end in model.edges[e]:
            if end[0] == "n":
                incident[end[1]].append(e)
    results: list[frozenset] = []

    def extend(covered: set, chosen: list):
        free = [v for v in nodes if v not in covered]
        if not free:
            results.append(frozenset(chosen))
            return
        v = min(free, key=lambda u: (len(incident[u]), u))
        for e in incident[v]:
            other = _other_end(model.edges[e], ("n", v))
            if other[0] == "n" and other[1] in covered:
                continue
            newly = {v} | ({other[1]} if other[0] == "n" else set())
            covered |= newly
            chosen.append(e)
            extend(covered, chosen)
            chosen.pop()
            covered -= newly

    extend(set(), [])
    results.sort(key=lambda m: tuple(sorted(m)))
    return results


def boundary_value(model: PlabicModel, m) -> KSubset:
    """The k-subset cut out on the boundary by a matching."""
    an = analyze(model)
    m = set(m)
    out = []
    for l in range(1, model.n + 1):
        used = an.stub[l] in m
        if (l in an.anticlockwise) == used:
            out.append(l)
    value = tuple(out)
    if len(value) != model.k:
        raise ModelInvariantError(
            "boundary-size", f"matching boundary {value} has size != k"
        )
    return value


def positroid(model: PlabicModel) -> tuple[KSubset, ...]:
    return tuple(sorted({boundary_value(model, m) for m in enumerate_matchings(model)}))


def base_matching(model: PlabicModel) -> frozenset:
    """The unique matching whose boundary value is lex-maximal."""
    target = lex_max(positroid(model))
    hits = [m for m in enumerate_matchings(model) if boundary_value(model, m) == target]
    if len(hits) != 1:
        raise ModelInvariantError(
            "base-matching-not-unique", f"{len(hits)} matchings reach {target}"
        )
    return hits[0]


def weight_of_matching(model: PlabicModel, m, mstar=None) -> dict[KSubset, int]:
    """Face weights of a matching relative to the base matching.

    Solved from w(target) - w(source) = [e in base] - [e in m] over the dual
    arrows, normalized by w = 0 on the star face; the solution must be
    consistent and nonnegative.
    """
    an = analyze(model)
    if mstar is None:
        mstar = base_matching(model)
    m, mstar = set(m), set(mstar)
    adj: dict[int, list[tuple[int, int]]] = {f.index: [] for f in an.faces}
    for e, s, t in an.arrows:
        rhs = (1 if e in mstar else 0) - (1 if e in m else 0)
        adj[s].append((t, rhs))
        adj[t].append((s, -rhs))
    w = {an.star: 0}
    queue = [an.star]
    while queue:
        u = queue.pop()
        for v, d in adj[u]:
            val = w[u] + d
            if v in w:
                if w[v] != val:
                    raise ModelInvariantError(
                        "weight-inconsistent", f"face {v}: {w[v]} vs {val}"
                    )
            else:
                w[v] = val
                queue.append(v)
    if len(w) != len(an.faces):
        raise ModelInvariantError("disconnected", "face graph not connected")
    if min(w.values()) < 0:
        raise ModelInvariantError("weight-negative", f"{w}")
    return {an.faces[i].label: wi for i, wi in w.items()}


def flow_of_matching(model: PlabicModel, m, mstar=None):
    """The oriented symmetric difference with the base matching.

    Edges of the base matching run black to white, all others white to
    black; the difference then decomposes into vertex-disjoint directed
    boundary-to-boundary paths and internal cycles.  Returns a list of
    components, each an ordered list of darts (edge_id, tail_end, head_end).
    """
    if mstar is None:
        mstar = base_matching(model)
    m, mstar = set(m), set(mstar)
    diff = sorted(m ^ mstar)
    darts = {}
    out_of: dict = {}
    for e in diff:
        ends = model.edges[e]
        c0 = _end_color(model, ends, ends[0])
        if e in mstar:
            tail, head = (ends[0], ends[1]) if c0 == BLACK else (ends[1], ends[0])
        else:
            tail, head = (ends[0], ends[1]) if c0 == WHITE else (ends[1], ends[0])
        dart = (e, tail, head)
        darts[e] = dart
        if tail in out_of:
            raise ModelInvariantError("flow-degree", f"two darts leave {tail}")
        out_of[tail] = dart
    components = []
    used = set()
    # boundary-to-boundary paths first
    for e in diff:
        dart = darts[e]
        if dart[1][0] != "t" or e in used:
            continue
        comp = [dart]
        used.add(e)
        while comp[-1][2][0] != "t":
            nxt = out_of.get(comp[-1][2])
            if nxt is None or nxt[0] in used:
                raise ModelInvariantError("flow-degree", "broken path")
            comp.append(nxt)
            used.add(nxt[0])
        components.append(comp)
    # remaining darts form cycles
    for e in diff:
        if e in used:
            continue
        comp = [darts[e]]
        used.add(e)
        while True:
            nxt = out_of.get(comp[-1][2])
            if nxt is None:
                raise ModelInvariantError("flow-degree", "broken cycle")
            if nxt[0] == comp[0][0]:
                break
            if nxt[0] in used:
                raise ModelInvariantError("flow-degree", "cycle collision")
            comp.append(nxt)
            used.add(nxt[0])
        components.append(comp)
    return components


def flow_weight(model: PlabicModel, m, mstar=None) -> dict[KSubset, int]:
    """Face weights computed from the flow picture.

    Each component contributes 1 to every face enclosed on its left: the
    faces immediately left of its darts are flooded through face adjacency,
    blocked on the component's own edges.  The result must agree with the
    matching-weight computation, which is asserted.
    """
    an = analyze(model)
    if mstar is None:
        mstar = base_matching(model)
    comps = flow_of_matching(model, m, mstar)
    adj: dict[int, list[tuple[int, str]]] = {f.index: [] for f in an.faces}
    for e, s, t in an.arrows:
        adj[s].append((t, e))
        adj[t].append((s, e))
    total = {f.index: 0 for f in an.faces}
    for comp in comps:
        blocked = {d[0] for d in comp}
        seeds = set()
        for e, tail, head in comp:
            ends = model.edges[e]
            rev = (("e", e), 1) if (tail, head) == ends else (("e", e), 0)
            seeds.add(an.face_of_dart[rev])
        region = set(seeds)
        stack = list(seeds)
        while stack:
            u = stack.pop()
            for v, e in adj[u]:
                if e in blocked or v in region:
                    continue
                region.add(v)
                stack.append(v)
        for f in region:
            total[f] += 1
    weights = {an.faces[i].label: wi for i, wi in total.items()}
    check = weight_of_matching(model, m, mstar)
    if weights != check:
        raise ModelInvariantError(
            "flow-weight-mismatch", f"flow {weights} vs matching {check}"
        )
    return weights


def check_model(model: PlabicModel) -> None:
    """Heavyweight consistency checks (enumerates all matchings)."""
    an = analyze(model)
    pos = positroid(model)
    if not pos:
        raise ModelInvariantError("no-matchings")
    neck = necklace_of_positroid(pos, model.n)
    for l in range(1, model.n + 1):
        nxt = 1 if l == model.n else l + 1
        got = an.faces[an.gap_face[l]].label
        if got != neck[nxt - 1]:
            raise ModelInvariantError(
                "gap-necklace-mismatch",
                f"gap face {l} labelled {got}, necklace says {neck[nxt - 1]}",
            )
    if not pairwise_weakly_separated([f.label for f in an.faces], model.n):
        raise ModelInvariantError("labels-not-weakly-separated")
    mstar = base_matching(model)
    for m in enumerate_matchings(model):
        flow_weight(model, m, mstar)


# ------------------------------------------------------------ square move


def _fresh(base: str, taken) -> str:
    if base not in taken:
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def square_move(model: PlabicModel, face_label: KSubset, validate: bool = True) -> PlabicModel:
    """Urban renewal at an internal quadrilateral face.

    Four new nodes of opposite colors are placed inside the face, joined in
    a square and tied to the old corners by legs; the old face edges are
    removed and any corner left with degree two is contracted away (its two
    same-colored neighbors are identified, splicing rotations; a boundary
    stub reattaches directly).  The face's label is replaced by its exchange
    partner; every other face keeps its label.
    """
    an = analyze(model)
    face_label = tuple(face_label)
    if face_label not in an.label_to_face:
        raise NotPlabicMutable(f"no face labelled {face_label}")
    fi = an.label_to_face[face_label]
    face = an.faces[fi]
    if face.gap is not None:
        raise NotPlabicMutable(f"face {face_label} touches the boundary")
    orbit = sorted(face.darts)[:1]
    rots, ends_all, _ = _closed_rotation_system(model)
    cur = _next_dart(rots, ends_all, orbit[0])
    while cur != orbit[0]:
        orbit.append(cur)
        cur = _next_dart(rots, ends_all, cur)
    if len(orbit) != 4:
        raise NotPlabicMutable(
            f"face {face_label} has {len(orbit)} sides, need 4"
        )
    sq_edges = [ek[1] for ek, _ in orbit]
    if len(set(sq_edges)) != 4:
        raise NotPlabicMutable(f"face {face_label} has a repeated edge")
    corners = []
    for dart in orbit:
        _, head = _dart_ends(ends_all, dart)
        if head[0] != "n":
            raise NotPlabicMutable(f"face {face_label} has a boundary corner")
        corners.append(head[1])
    if len(set(corners)) != 4:
        raise NotPlabicMutable(f"face {face_label} has a repeated corner")
    cols = [model.colors[c] for c in corners]
    if cols[0] == cols[1] or cols[1] == cols[2]:
        raise NotPlabicMutable(f"face {face_label} corners do not alternate")

    # exchange label from the quiver around the face
    ins = [an.faces[s].label for e, s, t in an.arrows if t == fi]
    outs = [an.faces[t].label for e, s, t in an.arrows if s == fi]
    if len(ins) != 2 or len(outs) != 2:
        raise ModelInvariantError(
            "exchange-mismatch", f"face {face_label}: in {ins}, out {outs}"
        )
    S = set(ins[0]) & set(ins[1])
    quad = (set(ins[0]) | set(ins[1])) - S
    if set(outs[0]) & set(outs[1]) != S or (set(outs[0]) | set(outs[1])) - S != quad:
        raise ModelInvariantError(
            "exchange-mismatch", f"in/out faces disagree: {ins} vs {outs}"
        )
    pair = set(face_label) - S
    if len(quad) != 4 or not pair <= quad or len(pair) != 2 or set(face_label) != S | pair:
        raise ModelInvariantError(
            "exchange-mismatch", f"label {face_label} not S+pair with S={sorted(S)}"
        )
    new_label = tuple(sorted(S | (quad - pair)))

    # --- surgery on copies
    colors = dict(model.colors)
    edges = {e: ends for e, ends in model.edges.items()}
    rot = {v: list(r) for v, r in model.rot.items()}

    taken_nodes = set(colors)
    taken_edges = set(edges)
    new_corner = {}
    legs = {}
    for c in corners:
        nc = _fresh(f"{c}x", taken_nodes)
        taken_nodes.add(nc)
        new_corner[c] = nc
        colors[nc] = WHITE if model.colors[c] == BLACK else BLACK
        lg = _fresh(f"leg_{c}", taken_edges)
        taken_edges.add(lg)
        legs[c] = lg
        edges[lg] = (("n", c), ("n", nc))
    square = {}
    for i in range(4):
        a, b = corners[i], corners[(i + 1) % 4]
        se = _fresh(f"sq_{a}_{b}", taken_edges)
        taken_edges.add(se)
        square[i] = se
        edges[se] = (("n", new_corner[a]), ("n", new_corner[b]))
    for e in sq_edges:
        del edges[e]

    # corner rotations: the face's (incoming, outgoing) pair becomes the leg
    for i, c in enumerate(corners):
        e_in = sq_edges[i]  # dart i ends at corner i... see below
        e_out = sq_edges[(i + 1) % 4]
        r = rot[c]
        p = r.index(e_in)
        r2 = r[p:] + r[:p]
        if r2[1] != e_out:
            raise ModelInvariantError(
                "rotation-face-mismatch",
                f"at {c}: {e_in} then {r2[1]}, expected {e_out}",
            )
        rot[c] = [legs[c]] + r2[2:]
    # new corner rotations: [leg, previous square edge, next square edge]
    for i, c in enumerate(corners):
        nc = new_corner[c]
        rot[nc] = [legs[c], square[(i - 1) % 4], square[i]]

    # contract corners left with degree two
    corner_set = set(corners)
    for c in corners:
        if len(rot[c]) != 2:
            continue
        g = next(e for e in rot[c] if e != legs[c])
        z_end = _other_end(edges[g], ("n", c))
        nc = new_corner[c]
        if z_end[0] == "t":
            # boundary stub reattaches to the new corner
            a, b = edges[g]
            edges[g] = tuple(("n", nc) if x == ("n", c) else x for x in (a, b))
            rc = rot[nc]
            rot[nc] = [g if x == legs[c] else x for x in rc]
        else:
            z = z_end[1]
            if z in corner_set or z in new_corner.values():
                raise ModelInvariantError(
                    "contracted-into-corner", f"corner {c} contracts into {z}"
                )
            rnc = rot[nc]
            p = rnc.index(legs[c])
            seq = rnc[p + 1 :] + rnc[:p]
            q = rot[z].index(g)
            rot[z] = rot[z][:q] + seq + rot[z][q + 1 :]
            for se in seq:
                a, b = edges[se]
                edges[se] = tuple(
                    ("n", z) if x == ("n", nc) else x for x in (a, b)
                )
            del edges[g]
            del colors[nc]
            del rot[nc]
        del colors[c]
        del rot[c]
        del edges[legs[c]]

    raw = PlabicModel(model.k, model.n, colors, edges, {v: tuple(r) for v, r in rot.items()}, {}, frozenset())
    orbits, _, new_ends = _trace_faces(raw)

    # match new faces to old ones through surviving darts
    old_dart_face = {}
    for f in an.faces:
        if f.index == fi:
            continue
        for ek, d in f.darts:
            if ek[0] == "e" and ek[1] in edges:
                old_dart_face[(ek, d)] = f.index
    new_square_edges = set(square.values())
    label_specs: dict[frozenset, KSubset] = {}
    star_spec = None
    matched_old = set()
    for orbit2 in orbits:
        eids = frozenset(ek[1] for ek, _ in orbit2 if ek[0] == "e")
        hit = {old_dart_face[d] for d in orbit2 if d in old_dart_face}
        if not hit:
            if not eids <= new_square_edges or len(eids) != 4:
                raise ModelInvariantError(
                    "face-correspondence", f"orphan face {sorted(eids)}"
                )
            label_specs[eids] = new_label
            continue
        if len(hit) != 1:
            raise ModelInvariantError(
                "face-correspondence", f"face {sorted(eids)} matches {hit}"
            )
        old = hit.pop()
        if old in matched_old:
            raise ModelInvariantError(
                "face-correspondence", f"old face {old} matched twice"
            )
        matched_old.add(old)
        label_specs[eids] = an.faces[old].label
        if old == an.star:
            star_spec = eids
    if len(label_specs) != len(an.faces):
        raise ModelInvariantError(
            "face-correspondence",
            f"{len(label_specs)} new faces vs {len(an.faces)} old",
        )
    if star_spec is None:
        raise ModelInvariantError("face-correspondence", "star face lost")

    result = PlabicModel(
        model.k, model.n, colors, edges,
        {v: tuple(r) for v, r in rot.items()}, label_specs, star_spec,
    )
    analyze(result)

    if validate:
        if positroid(result) != positroid(model):
            raise ModelInvariantError("positroid-changed")
        from . import seeds

        j_old = format_ksubset(face_label, model.n)
        j_new = format_ksubset(new_label, model.n)
        q_new = seeds.quiver_of_model(result)
        expect = seeds.fz_mutate(seeds.quiver_of_model(model), j_old)
        got = {
            (j_old if u == j_new else u, j_old if v == j_new else v): b
            for (u, v), b in seeds.mutation_entries(q_new).items()
        }
        want = seeds.mutation_entries(expect)
        if got != want:
            diff = {kk for kk in set(got) | set(want) if got.get(kk) != want.get(kk)}
            raise ModelInvariantError(
                "quiver-fz-mismatch", f"entries differ at {sorted(diff)}"
            )
    return result


# --------------------------------------------------------- builtin models


SHARK_TEXT = """\
plabic v1
kn 2 5
node B1 white
node B2 black
node B3 black
node B4 white
node B5 black
edge B1B2 n:B1 n:B2
edge B1B3 n:B1 n:B3
edge B1B5 n:B1 n:B5
edge B3B4 n:B3 n:B4
edge B4B5 n:B4 n:B5
edge E1 n:B5 b:1
edge E2 n:B4 b:2
edge E3 n:B3 b:3
edge E4 n:B2 b:4
edge E5 n:B2 b:5
rot B1 B1B5 B1B2 B1B3
rot B2 B1B2 E5 E4
rot B3 B3B4 B1B3 E3
rot B4 E2 B4B5 B3B4
rot B5 E1 B1B5 B4B5
label B1B2,B1B5,E1,E5 12
label B4B5,E1,E2 23
label B3B4,E2,E3 34
label B1B2,B1B3,E3,E4 14
label E4,E5 15
label B1B3,B1B5,B3B4,B4B5 24
star B1B2,B1B5,E1,E5
"""


def shark_model() -> PlabicModel:
    return load_model(SHARK_TEXT)


def _star_model(k: int, n: int) -> PlabicModel:
    color = BLACK if k == 1 else WHITE
    colors = {"C": color}
    edges = {f"E{l}": (("n", "C"), ("t", l)) for l in range(1, n + 1)}
    rot = {"C": tuple(f"E{l}" for l in range(n, 0, -1))}
    # every face is a gap face here, so name them by gap index (edge sets
    # collide at n = 2: both faces are bounded by the same two edges)
    label_specs = {}
    for l in range(1, n + 1):
        nxt = 1 if l == n else l + 1
        label_specs[frozenset({("gap", l)})] = tuple(
            sorted(cyclic_interval(nxt, (nxt + k - 2) % n + 1, n))
        )
    star_spec = frozenset({("gap", n)})
    model = PlabicModel(k, n, colors, edges, rot, label_specs, star_spec)
    analyze(model)
    if positroid(model) != tuple(ksubsets(n, k)):
        raise ModelInvariantError("positroid-mismatch", f"star model ({k},{n})")
    return model


def build_rectangles_model(k: int, n: int) -> PlabicModel:
    """The rectangles model for the (k, n) grid.

    Planar dual of the grid quiver whose vertices are the rectangle labels:
    each closed quiver face becomes one graph node (clockwise faces white,
    counterclockwise black), each arrow one edge, and the quiver vertices
    come back as the faces of the result, carrying their labels.
    """
    if not (1 <= k <= n - 1):
        raise ValueError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    if k == 1 or k == n - 1:
        return _star_model(k, n)
    w = n - k  # grid width

    def r_id(t, s):
        return f"r{t}_{s}"

    def c_id(t, s):
        return f"c{t}_{s}"

    def d_id(t, s):
        return f"d{t}_{s}"

    # node cycles, as drawn: white faces listed clockwise, black ones
    # counterclockwise, so reversing the white ones makes all rotations CCW
    cycles: dict[str, tuple[str, list[str]]] = {}
    for t in range(1, k):
        for s in range(1, w):
            cycles[f"A{t}_{s}"] = (WHITE, [d_id(t, s), c_id(t, s + 1), r_id(t, s)])
            cycles[f"B{t}_{s}"] = (BLACK, [d_id(t, s), r_id(t + 1, s), c_id(t, s)])
    cycles["L"] = (WHITE, ["scol"] + [c_id(t, 1) for t in range(k - 1, 0, -1)] + ["istar"])
    cycles["Bo"] = (BLACK, ["srow"] + [r_id(1, s) for s in range(w - 1, 0, -1)] + ["istar"])

    arrow_ids = (
        [r_id(t, s) for t in range(1, k + 1) for s in range(1, w)]
        + [c_id(t, s) for t in range(1, k) for s in range(1, w + 1)]
        + [d_id(t, s) for t in range(1, k) for s in range(1, w)]
        + ["istar", "scol", "srow"]
    )
    boundary_label = {"scol": 1, "srow": n}
    for l in range(2, w + 1):
        boundary_label[r_id(k, l - 1)] = l
    for l in range(w + 1, n):
        boundary_label[c_id(n - l, w)] = l

    colors = {}
    rot = {}
    carriers: dict[str, list[str]] = {a: [] for a in arrow_ids}
    for node in sorted(cycles):
        col, cyc = cycles[node]
        colors[node] = col
        rot[node] = tuple(reversed(cyc)) if col == WHITE else tuple(cyc)
        for a in cyc:
            carriers[a].append(node)

    edges: dict[str, tuple[End, End]] = {}
    for a in arrow_ids:
        nodes = sorted(carriers[a])
        if len(nodes) == 2:
            if a in boundary_label:
                raise ModelInvariantError(
                    "rect-build", f"arrow {a} is internal but labelled"
                )
            edges[a] = (("n", nodes[0]), ("n", nodes[1]))
        elif len(nodes) == 1:
            if a not in boundary_label:
                raise ModelInvariantError("rect-build", f"arrow {a} has one face, no label")
            edges[a] = (("n", nodes[0]), ("t", boundary_label[a]))
        else:
            raise ModelInvariantError("rect-build", f"arrow {a} in {len(nodes)} cycles")

    # faces of the graph = vertices of the quiver; bounding edges = incident arrows
    def incident(t, s) -> set[str]:
        out = set()
        if s <= w - 1:
            out.add(r_id(t, s))
        if s >= 2:
            out.add(r_id(t, s - 1))
        if t <= k - 1:
            out.add(c_id(t, s))
        if t >= 2:
            out.add(c_id(t - 1, s))
        if t <= k - 1 and s <= w - 1:
            out.add(d_id(t, s))
        if t >= 2 and s >= 2:
            out.add(d_id(t - 1, s - 1))
        if (t, s) == (1, 1):
            out.add("istar")
        if (t, s) == (k, 1):
            out.add("scol")
        if (t, s) == (1, w):
            out.add("srow")
        return out

    label_specs: dict[frozenset, KSubset] = {}
    for t in range(1, k + 1):
        for s in range(1, w + 1):
            label_specs[frozenset(incident(t, s))] = rectangle_label(k, n, t, s)
    star_spec = frozenset({"istar", "scol", "srow"})
    label_specs[star_spec] = tuple(range(1, k + 1))

    model = PlabicModel(k, n, colors, edges, rot, label_specs, star_spec)
    an = analyze(model)
    # the boundary gap faces must carry the cyclic-interval labels
    for l in range(1, n + 1):
        nxt = 1 if l == n else l + 1
        want = tuple(sorted(cyclic_interval(nxt, (nxt + k - 2) % n + 1, n)))
        got = an.faces[an.gap_face[l]].label
        if got != want:
            raise ModelInvariantError(
                "gap-necklace-mismatch", f"rect({k},{n}) gap {l}: {got} != {want}"
            )
    return model


def builtin_model(name: str) -> PlabicModel:
    """Resolve a builtin model name: "shark" or "rect:k,n"."""
    if name == "shark":
        return shark_model()
    if name.startswith("rect:"):
        body = name[len("rect:"):]
        try:
            k_s, n_s = body.split(",")
            return build_rectangles_model(int(k_s), int(n_s))
        except ValueError as exc:
            raise ValueError(f"bad rect spec {name!r}: {exc}") from None
    raise ValueError(f"unknown builtin model {name!r}")

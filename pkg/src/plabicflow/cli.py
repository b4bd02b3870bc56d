"""Command-line surface.

Subcommands operate either on a model (a file path, the builtin ``shark``
fixture, or ``rect:k,n``) or on a Grassmannian instance given as ``--kn k,n``:

* ``matchings`` — enumerate perfect matchings with boundary values
* ``partition`` / ``flow`` / ``valuation`` — boundary-value polynomials and
  their exponent valuations
* ``kappa`` — the MaxDiag vector of a k-subset on the model's seed
* ``mutate`` — mutate the seed along a vertex path
* ``xcheck`` — flow polynomials versus cluster mutation, one move at a time
* ``gt-cone`` — the Gelfand-Tsetlin cone, or its lattice points at a level
* ``no-body`` — level-1 body points of a seed
* ``superpotential`` / ``wx`` — the potential in cluster or simples variables
* ``verify`` — named verification suites with pass/fail reporting

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 model
invariant violation.  Output is byte-deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import charts, cones, plabic, seeds, superpot
from .combinat import format_ksubset, ksubsets, parse_ksubset
from .laurent import LaurentPoly, lp_equal
from .plabic import ModelInvariantError, NotPlabicMutable, ParseError, PlabicModel
from .seeds import NotMutable

FORMATS = ("pretty", "json", "csv")


class UsageError(Exception):
    pass


def load_any_model(spec: str) -> PlabicModel:
    """Resolve a model argument: ``shark``, ``rect:k,n``, or a file path."""
    if spec == "shark":
        return plabic.shark_model()
    if spec.startswith("rect:"):
        k, n = _parse_kn(spec[len("rect:"):])
        return plabic.build_rectangles_model(k, n)
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read model {spec!r}: {exc}") from None
    return plabic.load_model(text)


def _parse_kn(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected k,n — got {text!r}")
    try:
        k, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(f"expected integers k,n — got {text!r}") from None
    if not 1 <= k <= n - 1:
        raise UsageError(f"need 1 <= k <= n-1, got k={k}, n={n}")
    return k, n


def _parse_mutations(text: str | None) -> list[str]:
    if not text:
        return []
    return [p.strip() for p in text.split(",") if p.strip()]


def _reorder(poly: LaurentPoly, order: str | None) -> LaurentPoly:
    """Rebuild a polynomial over a user-supplied permutation of its lattice."""
    if not order:
        return poly
    labels = tuple(p.strip() for p in order.split(",") if p.strip())
    if sorted(labels) != sorted(poly.lattice):
        raise UsageError(
            f"--order must be a permutation of {','.join(poly.lattice)}"
        )
    return LaurentPoly.make(
        labels, {tuple(poly.exp_as_dict(e).get(l, 0) for l in labels): c
                 for e, c in poly.terms},
    )


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _emit_poly(poly: LaurentPoly, fmt: str, prefix: str) -> None:
    if fmt == "pretty":
        print(poly.pretty(prefix))
    elif fmt == "json":
        _emit_json(poly.to_json_obj())
    else:  # csv
        print(",".join(list(poly.lattice) + ["coeff"]))
        for exp, c in poly.terms:
            print(",".join(str(e) for e in exp) + f",{c}")


def _emit_vector(vec: dict[str, int], fmt: str) -> None:
    items = sorted(vec.items())
    if fmt == "pretty":
        print(" ".join(f"{lab}={v}" for lab, v in items))
    elif fmt == "json":
        _emit_json(vec)
    else:
        print("label,value")
        for lab, v in items:
            print(f"{lab},{v}")


# ---------------------------------------------------------------- commands


def cmd_matchings(args) -> int:
    model = load_any_model(args.model)
    rows = []
    for m in plabic.enumerate_matchings(model):
        bv = format_ksubset(plabic.boundary_value(model, m), model.n)
        rows.append((bv, sorted(m)))
    if args.format == "pretty":
        for bv, eds in rows:
            print(f"{bv}: {' '.join(eds)}")
    elif args.format == "json":
        _emit_json([{"boundary": bv, "edges": eds} for bv, eds in rows])
    else:
        print("boundary,edges")
        for bv, eds in rows:
            print(f"{bv},{';'.join(eds)}")
    return 0


def _model_and_subset(args) -> tuple[PlabicModel, tuple[int, ...]]:
    model = load_any_model(args.model)
    try:
        I = parse_ksubset(args.subset, model.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(I) != model.k:
        raise UsageError(f"{args.subset!r} is not a {model.k}-subset")
    return model, I


def cmd_partition(args) -> int:
    model, I = _model_and_subset(args)
    poly = _reorder(charts.partition_function(model, I), args.order)
    _emit_poly(poly, args.format, "")
    return 0


def cmd_flow(args) -> int:
    model, I = _model_and_subset(args)
    poly = _reorder(charts.flow_polynomial(model, I), args.order)
    _emit_poly(poly, args.format, "y")
    return 0


def cmd_valuation(args) -> int:
    model, I = _model_and_subset(args)
    f = _reorder(charts.flow_polynomial(model, I), args.order)
    _emit_vector(charts.valuation(model, f), args.format)
    return 0


def cmd_kappa(args) -> int:
    model, I = _model_and_subset(args)
    seed = seeds.seed_of_model(model)
    _emit_vector(seeds.kappa_vector(seed, I), args.format)
    return 0


def cmd_mutate(args) -> int:
    model = load_any_model(args.model)
    s = seeds.seed_of_model(model)
    for j in _parse_mutations(args.mutations):
        s = seeds.mutate_labels(s, j)
    q = s.quiver
    labels = {v: format_ksubset(s.labels[v], s.n) for v in q.vertices}
    if args.format == "pretty":
        for v in q.vertices:
            mark = " (frozen)" if v in q.frozen else ""
            star = " (star)" if v == q.star else ""
            print(f"{v}: {labels[v]}{mark}{star}")
        for u, v, mult in q.arrows:
            print(f"{u} -> {v}" + (f" x{mult}" if mult > 1 else ""))
    elif args.format == "json":
        _emit_json({
            "labels": labels,
            "frozen": sorted(q.frozen),
            "star": q.star,
            "arrows": [list(a) for a in q.arrows],
        })
    else:
        print("vertex,label,frozen")
        for v in q.vertices:
            print(f"{v},{labels[v]},{int(v in q.frozen)}")
    return 0


def _xcheck_one(model: PlabicModel, j: str) -> tuple[PlabicModel, int]:
    """One square move at the face named j; returns (new model, #boundaries).

    The identity checked: mutation at j carries each flow polynomial of the
    moved model back to the one computed on the original model.
    """
    an = plabic.analyze(model)
    face = next(
        f for f in an.faces if format_ksubset(f.label, model.n) == j
    )
    model2 = plabic.square_move(model, face.label)
    q = seeds.quiver_of_model(model)
    checked = 0
    for I in plabic.positroid(model):
        f_old = charts.flow_polynomial(model, I)
        image = charts.x_mutate(q, j, charts.flow_polynomial(model2, I))
        if not lp_equal(image, f_old):
            raise ModelInvariantError(
                "xcheck",
                f"mutation at {j} disagrees with flows at "
                f"I={format_ksubset(I, model.n)}",
            )
        checked += 1
    return model2, checked


def cmd_xcheck(args) -> int:
    model = load_any_model(args.model)
    path = _parse_mutations(args.mutations)
    if not path:
        q = seeds.quiver_of_model(model)
        path = seeds.mutable_vertices(q)[:1]
        if not path:
            raise UsageError("model has no mutable faces")
    cur = model
    for j in path:
        try:
            cur, nb = _xcheck_one(cur, j)
        except ModelInvariantError as exc:
            if exc.args and exc.args[0] == "xcheck":
                print(f"FAIL xcheck {j}: {exc.args[-1]}")
                return 1
            raise
        print(f"PASS xcheck {j} ({nb} boundary values)")
    return 0


def cmd_gt_cone(args) -> int:
    k, n = _parse_kn(args.kn)
    cone = cones.gt_inequalities(k, n)
    if args.level is None:
        if args.format == "json":
            _emit_json(cones.cone_to_json_obj(cone))
        elif args.format == "pretty":
            for cov in cone.ineqs:
                parts = [
                    f"{'+' if c > 0 else '-'}{'' if abs(c) == 1 else abs(c)}{lab}"
                    for lab, c in zip(cone.ambient, cov) if c
                ]
                print(" ".join(parts) + " >= 0")
        else:
            print(",".join(cone.ambient))
            for cov in cone.ineqs:
                print(",".join(str(c) for c in cov))
        return 0
    pts = cones.lattice_points(cone, args.level)
    rows = sorted(
        (args.level,) + tuple(p[l] for l in cone.ambient[1:]) for p in pts
    )
    if args.format == "json":
        _emit_json({
            "ambient": list(cone.ambient),
            "count": len(rows),
            "points": [list(r) for r in rows],
        })
    else:
        print(",".join(cone.ambient))
        for r in rows:
            print(",".join(str(x) for x in r))
        if args.format == "pretty":
            print(f"# {len(rows)} points")
    return 0


def cmd_no_body(args) -> int:
    model = load_any_model(args.model)
    s = seeds.seed_of_model(model)
    pts = cones.no_body_level1(s)
    labels = sorted({l for p in pts for l in p})
    if args.format == "json":
        _emit_json([{l: p.get(l, 0) for l in labels} for p in pts])
    else:
        print(",".join(labels))
        for p in pts:
            print(",".join(str(p.get(l, 0)) for l in labels))
        if args.format == "pretty":
            print(f"# {len(pts)} points")
    return 0


def cmd_superpotential(args) -> int:
    k, n = _parse_kn(args.kn)
    s = seeds.rectangles_seed(k, n)
    W = superpot.w_rectangles(k, n)
    for j in _parse_mutations(args.mutations):
        W = superpot.a_mutate_w(s, W, j)
        s = seeds.mutate_labels(s, j)
    _emit_poly(_reorder(W.poly, args.order), args.format, "p")
    return 0


def cmd_wx(args) -> int:
    k, n = _parse_kn(args.kn)
    W = superpot.w_x_rectangles(k, n)
    _emit_poly(_reorder(W.poly, args.order), args.format, "x")
    return 0


# ------------------------------------------------------------------ verify


def _suite_plucker(k: int, n: int):
    model = plabic.build_rectangles_model(k, n)
    for rel in charts.three_term_relations(k, n):
        if not charts.plucker_verify(model, rel, chart="both"):
            a, b, c, d, S = rel
            yield False, f"relation ({a},{b},{c},{d};S={S}) fails on rect:{k},{n}"
            return
    yield True, f"rect:{k},{n} all three-term relations, both charts"


def _val_kappa_all(model: PlabicModel, tag: str):
    s = seeds.seed_of_model(model)
    for I in plabic.positroid(model):
        f = charts.flow_polynomial(model, I)
        v = charts.valuation(model, f)
        kv = {a: b for a, b in seeds.kappa_vector(s, I).items()
              if a != s.quiver.star}
        if v != kv:
            return False, f"{tag}: I={format_ksubset(I, model.n)} valuation {v} != kappa {kv}"
    return True, tag


def _suite_valuation_kappa(k: int, n: int):
    model = plabic.build_rectangles_model(k, n)
    ok, detail = _val_kappa_all(model, f"rect:{k},{n}")
    if not ok:
        yield ok, detail
        return
    moves = []
    for j in seeds.mutable_vertices(seeds.quiver_of_model(model)):
        an = plabic.analyze(model)
        face = next(f for f in an.faces if format_ksubset(f.label, n) == j)
        try:
            m2 = plabic.square_move(model, face.label)
        except NotPlabicMutable:
            continue
        ok, detail = _val_kappa_all(m2, f"rect:{k},{n} after move {j}")
        if not ok:
            yield ok, detail
            return
        moves.append(j)
    yield True, f"rect:{k},{n} base and after moves [{','.join(moves)}]"


def _suite_xflow(k: int, n: int):
    model = plabic.build_rectangles_model(k, n)
    done = []
    for j in seeds.mutable_vertices(seeds.quiver_of_model(model)):
        try:
            _xcheck_one(model, j)
        except NotPlabicMutable:
            continue
        except ModelInvariantError as exc:
            yield False, str(exc)
            return
        done.append(j)
    yield True, f"rect:{k},{n} flow/mutation agree at [{','.join(done)}]"


def _suite_trop_a(k: int, n: int):
    s = seeds.rectangles_seed(k, n)
    q = s.quiver
    for j in seeds.mutable_vertices(q):
        try:
            s2 = seeds.mutate_labels(s, j)
        except NotPlabicMutable:
            continue
        j2 = next(iter(set(s2.labels) - set(s.labels)))
        for I in ksubsets(n, k):
            kv = seeds.kappa_vector(s, I)
            moved = seeds.trop_a_mutate(q, j, kv)
            want = seeds.kappa_vector(s2, I)
            want = {j if a == j2 else a: b for a, b in want.items()}
            if moved != want:
                yield False, (
                    f"rect:{k},{n} at {j}, I={format_ksubset(I, n)}: "
                    f"{moved} != {want}"
                )
                return
        rng = random.Random(0)
        for _ in range(50):
            v = {x: rng.randint(-5, 5) for x in q.vertices}
            v[q.star] = 0
            if seeds.trop_a_mutate(q, j, seeds.trop_a_mutate(q, j, v)) != v:
                yield False, f"rect:{k},{n} at {j}: double mutation moved {v}"
                return
    yield True, f"rect:{k},{n} kappa-compatibility and involution"


def _suite_gt_trop(k: int, n: int):
    s = seeds.rectangles_seed(k, n)
    cw = cones.cone_from_tropical(superpot.w_rectangles(k, n).poly, s.quiver.star)
    cg = cones.gt_inequalities(k, n)
    if cw != cg:
        yield False, f"rect:{k},{n}: tropical cone differs from inequality cone"
        return
    yield True, f"rect:{k},{n} tropicalized potential equals the pattern cone"


def _suite_wformula(k: int, n: int):
    if superpot.verify_wformula(k, n):
        yield True, f"rect:{k},{n} boundary-module expansion equals the potential"
    else:
        lhs, rhs = superpot.wformula_sides(k, n)
        yield False, f"rect:{k},{n}: {lhs.pretty('p')} != {rhs.pretty('p')}"


def _suite_weyl_count(k: int, n: int, level: int):
    cone = cones.gt_inequalities(k, n)
    for r in range(level + 1):
        got = len(cones.lattice_points(cone, r))
        want = cones.weyl_dim(k, n, r)
        if got != want:
            yield False, f"rect:{k},{n} level {r}: {got} points != dimension {want}"
            return
    yield True, f"rect:{k},{n} point counts match dimensions for levels 0..{level}"


SUITES = ("plucker", "valuation-kappa", "xflow", "trop-a", "gt-trop",
          "wformula", "weyl-count")


def cmd_verify(args) -> int:
    if args.suite == "all":
        chosen = SUITES
    elif args.suite in SUITES:
        chosen = (args.suite,)
    else:
        raise UsageError(
            f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all"
        )
    k, n = _parse_kn(args.kn) if args.kn else (2, 4)
    level = args.level if args.level is not None else 2
    all_ok = True
    for suite in chosen:
        if suite == "plucker":
            results = _suite_plucker(k, n)
        elif suite == "valuation-kappa":
            results = _suite_valuation_kappa(k, n)
        elif suite == "xflow":
            results = _suite_xflow(k, n)
        elif suite == "trop-a":
            results = _suite_trop_a(k, n)
        elif suite == "gt-trop":
            results = _suite_gt_trop(k, n)
        elif suite == "wformula":
            results = _suite_wformula(k, n)
        else:
            results = _suite_weyl_count(k, n, level)
        for ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'} {suite}: {detail}")
            all_ok = all_ok and ok
    return 0 if all_ok else 1


# ------------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plabicflow",
        description="Exact partition functions, flows, and cones on plabic models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--format", choices=FORMATS, default="pretty")
        p.set_defaults(func=func)
        return p

    p = add("matchings", cmd_matchings, help="enumerate perfect matchings")
    p.add_argument("model", help="model file, 'shark', or 'rect:k,n'")

    for name, func, hlp in [
        ("partition", cmd_partition, "partition polynomial of a boundary value"),
        ("flow", cmd_flow, "flow polynomial of a boundary value"),
        ("valuation", cmd_valuation, "exponent valuation of the flow polynomial"),
        ("kappa", cmd_kappa, "MaxDiag vector of a k-subset on the model's seed"),
    ]:
        p = add(name, func, help=hlp)
        p.add_argument("model", help="model file, 'shark', or 'rect:k,n'")
        p.add_argument("subset", help="k-subset, e.g. 25 or 1,4,5,7")
        p.add_argument("--order", help="comma-separated variable order override")

    p = add("mutate", cmd_mutate, help="mutate the seed along a vertex path")
    p.add_argument("model", help="model file, 'shark', or 'rect:k,n'")
    p.add_argument("--mutations", help="comma-separated vertex names")

    p = add("xcheck", cmd_xcheck,
            help="check flow polynomials against cluster mutation")
    p.add_argument("model", help="model file, 'shark', or 'rect:k,n'")
    p.add_argument("--mutations", help="comma-separated face names to move at")

    p = add("gt-cone", cmd_gt_cone, help="pattern cone or its lattice points")
    p.add_argument("--kn", required=True, help="instance, e.g. 2,4")
    p.add_argument("--level", type=int, help="enumerate points at this level")

    p = add("no-body", cmd_no_body, help="level-1 body points of the seed")
    p.add_argument("model", help="model file, 'shark', or 'rect:k,n'")

    p = add("superpotential", cmd_superpotential,
            help="potential in cluster variables, optionally mutated")
    p.add_argument("--kn", required=True, help="instance, e.g. 2,4")
    p.add_argument("--mutations", help="comma-separated vertex names")
    p.add_argument("--order", help="comma-separated variable order override")

    p = add("wx", cmd_wx, help="potential in simples variables")
    p.add_argument("--kn", required=True, help="instance, e.g. 2,4")
    p.add_argument("--order", help="comma-separated variable order override")

    p = add("verify", cmd_verify, help="run a verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}, all")
    p.add_argument("--kn", help="instance, e.g. 2,4 (default 2,4)")
    p.add_argument("--level", type=int,
                   help="max level for weyl-count (default 2)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotMutable, NotPlabicMutable) as exc:
        print(f"error: not mutable: {exc}", file=sys.stderr)
        return 2
    except cones.Unbounded as exc:
        print(f"error: unbounded enumeration: {exc}", file=sys.stderr)
        return 2
    except ModelInvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Labelled integer lattices and exact Laurent-polynomial arithmetic.

A lattice is an ordered tuple of distinct string labels.  Vectors and
polynomial exponents are stored densely as int tuples aligned with the
label order.  Coefficients are plain Python ints, so everything is exact.

JSON wire format for a polynomial:

    {"lattice": [labels...],
     "terms": [{"coeff": int, "exp": {label: int, ...}}, ...]}

with zero exponents omitted from each "exp" map.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class NotLaurent(ArithmeticError):
    """Division or substitution result is not a Laurent polynomial."""


class NotInvertible(ArithmeticError):
    """A negative power of a non-invertible image was requested."""


Exponent = tuple[int, ...]


def check_lattice(labels) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError(f"lattice labels not distinct: {labels}")
    return labels


def vec_add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(a: Exponent, c: int) -> Exponent:
    return tuple(c * x for x in a)


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial over a labelled lattice."""

    lattice: tuple[str, ...]
    terms: tuple[tuple[Exponent, int], ...]  # sorted by exponent, no zeros

    @staticmethod
    def make(lattice, term_map: dict[Exponent, int]) -> "LaurentPoly":
        lattice = check_lattice(lattice)
        terms = tuple(
            (e, c) for e, c in sorted(term_map.items()) if c != 0
        )
        for e, _ in terms:
            if len(e) != len(lattice):
                raise ValueError(f"exponent {e} does not fit lattice {lattice}")
        return LaurentPoly(lattice, terms)

    @staticmethod
    def zero(lattice) -> "LaurentPoly":
        return LaurentPoly.make(lattice, {})

    @staticmethod
    def one(lattice) -> "LaurentPoly":
        lattice = check_lattice(lattice)
        return LaurentPoly.make(lattice, {(0,) * len(lattice): 1})

    @staticmethod
    def monomial(lattice, exp: dict[str, int] | Exponent, coeff: int = 1) -> "LaurentPoly":
        lattice = check_lattice(lattice)
        if isinstance(exp, dict):
            unknown = set(exp) - set(lattice)
            if unknown:
                raise ValueError(f"labels {sorted(unknown)} not in lattice")
            exp = tuple(exp.get(lab, 0) for lab in lattice)
        return LaurentPoly.make(lattice, {tuple(exp): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def num_terms(self) -> int:
        return len(self.terms)

    def coeff_of(self, exp: Exponent) -> int:
        for e, c in self.terms:
            if e == exp:
                return c
        return 0

    def exp_as_dict(self, exp: Exponent) -> dict[str, int]:
        return {lab: e for lab, e in zip(self.lattice, exp) if e != 0}

    def to_json_obj(self) -> dict:
        return {
            "lattice": list(self.lattice),
            "terms": [
                {"coeff": c, "exp": self.exp_as_dict(e)} for e, c in self.terms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @staticmethod
    def from_json_obj(obj) -> "LaurentPoly":
        lattice = check_lattice(obj["lattice"])
        index = {lab: i for i, lab in enumerate(lattice)}
        term_map: dict[Exponent, int] = {}
        for t in obj["terms"]:
            e = [0] * len(lattice)
            for lab, v in t["exp"].items():
                e[index[lab]] = int(v)
            e = tuple(e)
            term_map[e] = term_map.get(e, 0) + int(t["coeff"])
        return LaurentPoly.make(lattice, term_map)

    def pretty(self, var_prefix: str = "y") -> str:
        """Human form; factors out the coordinatewise-min monomial.

        >>> L = ("24", "34")
        >>> f = lp_add(LaurentPoly.monomial(L, {"34": 1}),
        ...            LaurentPoly.monomial(L, {"24": 1, "34": 1}))
        >>> f.pretty()
        'y34*(1+y24)'
        """
        if self.is_zero():
            return "0"
        gcd_exp = tuple(
            min(e[i] for e, _ in self.terms) for i in range(len(self.lattice))
        )
        rest = LaurentPoly.make(
            self.lattice, {vec_sub(e, gcd_exp): c for e, c in self.terms}
        )
        mono = _pretty_monomial(self.lattice, gcd_exp, var_prefix)
        body = "+".join(
            _pretty_term(self.lattice, e, c, var_prefix) for e, c in rest.terms
        ).replace("+-", "-")
        if any(gcd_exp):
            if rest.is_monomial() and rest.terms[0][0] == (0,) * len(self.lattice):
                c = rest.terms[0][1]
                if c == 1:
                    return mono
                return f"-{mono}" if c == -1 else f"{c}*{mono}"
            return f"{mono}*({body})"
        return body


def _pretty_monomial(lattice, exp, var_prefix) -> str:
    parts = []
    for lab, e in zip(lattice, exp):
        if e == 0:
            continue
        name = lab if lab == "q" else f"{var_prefix}{lab}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _pretty_term(lattice, exp, coeff, var_prefix) -> str:
    mono = _pretty_monomial(lattice, exp, var_prefix)
    if coeff == 1:
        return mono
    if mono == "1":
        return str(coeff)
    if coeff == -1:
        return f"-{mono}"
    return f"{coeff}*{mono}"


def _require_same_lattice(f: LaurentPoly, g: LaurentPoly):
    if f.lattice != g.lattice:
        raise ValueError(f"lattice mismatch: {f.lattice} vs {g.lattice}")


def lp_add(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    _require_same_lattice(f, g)
    out = dict(f.terms)
    for e, c in g.terms:
        out[e] = out.get(e, 0) + c
    return LaurentPoly.make(f.lattice, out)


def lp_neg(f: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.make(f.lattice, {e: -c for e, c in f.terms})


def lp_sub(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    return lp_add(f, lp_neg(g))


def lp_mul(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    _require_same_lattice(f, g)
    out: dict[Exponent, int] = {}
    for e1, c1 in f.terms:
        for e2, c2 in g.terms:
            e = vec_add(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return LaurentPoly.make(f.lattice, out)


def lp_pow(f: LaurentPoly, e: int) -> LaurentPoly:
    if e < 0:
        if f.is_monomial():
            (m, c) = f.terms[0]
            if abs(c) != 1:
                raise NotInvertible(f"coefficient {c} not invertible")
            return LaurentPoly.make(f.lattice, {vec_scale(m, e): c**e})
        raise NotInvertible("negative power of a non-monomial")
    out = LaurentPoly.one(f.lattice)
    base = f
    while e:
        if e & 1:
            out = lp_mul(out, base)
        base = lp_mul(base, base) if e > 1 else base
        e >>= 1
    return out


def lp_equal(f: LaurentPoly, g: LaurentPoly) -> bool:
    _require_same_lattice(f, g)
    return f.terms == g.terms


def lp_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient f/g, or NotLaurent.

    Both operands are shifted to plain-polynomial support (their
    coordinatewise-min exponents factored off; lowest graded parts are
    multiplicative in a domain, so an exact Laurent quotient exists iff the
    shifted polynomial quotient does).  Then leading-term division under the
    lex order, which terminates because lex well-orders N^d.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    _require_same_lattice(f, g)
    if f.is_zero():
        return f
    d = len(f.lattice)
    fmin = tuple(min(e[i] for e, _ in f.terms) for i in range(d))
    gmin = tuple(min(e[i] for e, _ in g.terms) for i in range(d))
    shift = vec_sub(fmin, gmin)
    rem = {vec_sub(e, fmin): c for e, c in f.terms}
    div = {vec_sub(e, gmin): c for e, c in g.terms}
    glead = max(div)
    gc = div[glead]
    quot: dict[Exponent, int] = {}
    while rem:
        flead = max(rem)
        fc = rem[flead]
        qe = vec_sub(flead, glead)
        if any(x < 0 for x in qe) or fc % gc != 0:
            raise NotLaurent("division is not exact")
        qc = fc // gc
        quot[qe] = qc
        for e, c in div.items():
            key = vec_add(qe, e)
            nc = rem.get(key, 0) - qc * c
            if nc:
                rem[key] = nc
            else:
                rem.pop(key, None)
    return LaurentPoly.make(f.lattice, {vec_add(e, shift): c for e, c in quot.items()})


def lp_substitute(f: LaurentPoly, images: dict[str, LaurentPoly], codomain) -> LaurentPoly:
    """Homomorphic image of f under label -> LaurentPoly images.

    Every label of f's lattice needs an image over the codomain lattice.
    Negative powers are exact for monomial images; for a non-monomial image
    u = x^m * u0 (u0 unit-normalized by factoring the min exponent) the
    negative powers are handled globally: multiply through by u0^D and
    exact-divide at the end.  A non-exact division raises NotInvertible.
    """
    codomain = check_lattice(codomain)
    for lab in f.lattice:
        if lab not in images:
            raise ValueError(f"no image for label {lab!r}")
        if images[lab].lattice != codomain:
            raise ValueError(f"image of {lab!r} not over codomain lattice")
    if f.is_zero():
        return LaurentPoly.zero(codomain)

    d = len(codomain)
    # split each image u = x^m * u0 with u0's min exponent at the origin
    mono_part: dict[str, Exponent] = {}
    unit_part: dict[str, LaurentPoly] = {}  # only non-monomial u0 kept here
    const_part: dict[str, int] = {}  # coefficient of a pure-monomial image
    for lab in f.lattice:
        u = images[lab]
        if u.is_zero():
            raise ValueError(f"image of {lab!r} is zero")
        umin = tuple(min(e[j] for e, _ in u.terms) for j in range(d))
        u0 = LaurentPoly.make(codomain, {vec_sub(e, umin): c for e, c in u.terms})
        mono_part[lab] = umin
        if u0.is_monomial():
            const_part[lab] = u0.terms[0][1]
        else:
            unit_part[lab] = u0

    # required clearing power per non-monomial image
    clear: dict[str, int] = {}
    for lab in unit_part:
        i = f.lattice.index(lab)
        low = min(e[i] for e, _ in f.terms)
        if low < 0:
            clear[lab] = -low

    acc = LaurentPoly.zero(codomain)
    for e, c in f.terms:
        base = (0,) * d
        coeff = c
        for i, lab in enumerate(f.lattice):
            base = vec_add(base, vec_scale(mono_part[lab], e[i]))
            cc = const_part.get(lab, 1)
            if cc != 1:
                if e[i] >= 0:
                    coeff *= cc ** e[i]
                elif abs(cc) == 1:
                    coeff *= cc ** (e[i] % 2)  # (+-1)^e depends only on parity
                else:
                    raise NotInvertible(f"coefficient {cc} not invertible")
        term = LaurentPoly.make(codomain, {base: coeff})
        for lab, u0 in unit_part.items():
            i = f.lattice.index(lab)
            p = e[i] + clear.get(lab, 0)
            term = lp_mul(term, lp_pow(u0, p))
        acc = lp_add(acc, term)
    for lab, Dp in clear.items():
        if Dp:
            try:
                acc = lp_exact_div(acc, lp_pow(unit_part[lab], Dp))
            except NotLaurent as exc:
                raise NotInvertible(str(exc)) from exc
    return acc


def lp_min_exponent(f: LaurentPoly, tiebreak: list[str] | None = None):
    """Minimal exponent under the coordinatewise partial order.

    Returns (exponent tuple, unique flag).  When no unique minimum exists the
    lex-minimal exponent is returned (coordinates ordered per `tiebreak`
    labels, default = lattice order) with flag False.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no minimal exponent")
    exps = [e for e, _ in f.terms]
    minimal = [
        e
        for e in exps
        if not any(o != e and all(x <= y for x, y in zip(o, e)) for o in exps)
    ]
    dominated_all = [
        e for e in minimal if all(all(x <= y for x, y in zip(e, o)) for o in exps)
    ]
    if len(minimal) == 1 and dominated_all:
        return minimal[0], True
    perm = list(range(len(f.lattice)))
    if tiebreak is not None:
        perm = [f.lattice.index(lab) for lab in tiebreak]
    key = lambda e: tuple(e[i] for i in perm)
    return min(minimal, key=key), False


def lp_max_exponent(f: LaurentPoly):
    """Maximal exponent under the coordinatewise partial order, with flag."""
    if f.is_zero():
        raise ValueError("zero polynomial has no maximal exponent")
    neg = LaurentPoly.make(f.lattice, {vec_scale(e, -1): c for e, c in f.terms})
    m, unique = lp_min_exponent(neg)
    return vec_scale(m, -1), unique


def tropicalize(f: LaurentPoly) -> list[Exponent]:
    """The deduplicated exponent list; Trop(f)(v) = min over it of <m, v>."""
    if f.is_zero():
        raise ValueError("tropicalization of 0 undefined")
    return [e for e, _ in f.terms]

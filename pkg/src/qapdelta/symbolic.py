"""Exact sparse multivariate polynomials and the identity checks built on them.

A :class:`Poly` is a map from monomials to integer coefficients. Monomials
are tuples of ``(variable, exponent)`` sorted by a global variable order, so
two polynomials are equal exactly when their term maps are.

The triple variables are ``d_xy`` and ``f_xy`` for ``x, y`` in ``i, j, k``,
where ``f_xy`` stands for the flow between the facilities at locations
``x`` and ``y`` before the swap of ``i`` and ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping

from .delta import R_VARIANTS, RTerms, pair_part

_ORDER: dict[str, int] = {}


def _register(name: str) -> int:
    if name not in _ORDER:
        _ORDER[name] = len(_ORDER)
    return _ORDER[name]


TRIPLE = "ijk"
for _kind in "df":
    for _x, _y in product(TRIPLE, repeat=2):
        _register(f"{_kind}_{_x}{_y}")
for _kind in "df":
    for _x in TRIPLE:
        _register(f"{_kind}_{_x}g")
    for _x in TRIPLE:
        _register(f"{_kind}_g{_x}")


def _mono_mul(a: tuple, b: tuple) -> tuple:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: _ORDER[ve[0]]))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name: str) -> "Poly":
        _register(name)
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(): c})

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def coeff(self, *names: str) -> int:
        """Coefficient of the monomial that is the product of ``names``."""
        m: tuple = ()
        for name in names:
            m = _mono_mul(m, ((name, 1),))
        return self.terms.get(m, 0)

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def evaluate(self, point: Mapping[str, int]) -> int:
        total = 0
        for m, c in self.terms.items():
            for v, e in m:
                c *= point[v] ** e
            total += c
        return total

    def substitute(self, mapping: Mapping[str, "Poly | int"]) -> "Poly":
        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                rep = mapping.get(v)
                base = Poly.var(v) if rep is None else Poly._lift(rep)
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def sorted_terms(self) -> list[tuple[tuple, int]]:
        return sorted(
            self.terms.items(), key=lambda mc: [(_ORDER[v], e) for v, e in mc[0]]
        )

    def monomial_strings(self) -> list[tuple[str, int]]:
        return [(_mono_str(m), c) for m, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.monomial_strings():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            parts.append(f"{sign} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Poly({self})"


def _mono_str(m: tuple) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def d(x: str, y: str) -> Poly:
    return Poly.var(f"d_{x}{y}")


def f(x: str, y: str) -> Poly:
    return Poly.var(f"f_{x}{y}")


def _r_terms_script() -> RTerms:
    # Straight transcription of the symbolic script (its `djc` is d_jk).
    dii, djj, dkk = d("i", "i"), d("j", "j"), d("k", "k")
    dij, dji, dik, dki, djk, dkj = (
        d("i", "j"), d("j", "i"), d("i", "k"), d("k", "i"), d("j", "k"), d("k", "j"),
    )
    fii, fjj, fkk = f("i", "i"), f("j", "j"), f("k", "k")
    fij, fji, fik, fki, fjk, fkj = (
        f("i", "j"), f("j", "i"), f("i", "k"), f("k", "i"), f("j", "k"), f("k", "j"),
    )
    Rij = (dik - djk) * (fik - fjk) + (dki - dkj) * (fki - fkj) + (dii - djj) * (
        fii - fjj
    ) + (dij - dji) * (fij - fji)
    Rik = (dij - dkj) * (fki - fji) + (dji - djk) * (fik - fij) + (dii - dkk) * (
        fkk - fjj
    ) + (dki - dik) * (fjk - fkj)
    Rjk = (dki - dji) * (fij - fkj) + (dik - dij) * (fji - fjk) + (djj - dkk) * (
        fkk - fii
    ) + (dkj - djk) * (fik - fki)
    R_ik = (dij - dkj) * (fkj - fij) + (dji - djk) * (fjk - fji) + (dii - dkk) * (
        fkk - fii
    ) + (dik - dki) * (fki - fik)
    R_jk = (dji - dki) * (fki - fji) + (dij - dik) * (fik - fij) + (djj - dkk) * (
        fkk - fjj
    ) + (djk - dkj) * (fkj - fjk)
    return RTerms(Rij, Rik, Rjk, R_ik, R_jk)


def _r_terms_pattern() -> RTerms:
    swap = {"i": "j", "j": "i", "k": "k"}

    def fs(x, y):
        return f(swap[x], swap[y])

    return RTerms(
        r_ij=pair_part(d, f, "i", "j", "k"),
        r_ik=pair_part(d, f, "i", "k", "j"),
        r_jk=pair_part(d, f, "j", "k", "i"),
        r_ik_star=pair_part(d, fs, "i", "k", "j"),
        r_jk_star=pair_part(d, fs, "j", "k", "i"),
    )


def r_terms_poly(variant: str = "literal") -> RTerms:
    """The five R terms as polynomials in the triple variables."""
    if variant == "literal":
        return _r_terms_script()
    if variant == "pattern_consistent":
        return _r_terms_pattern()
    raise ValueError(f"unknown R variant {variant!r}; expected one of {R_VARIANTS}")


def expand_r_combination(variant: str = "literal") -> Poly:
    """Expansion of ``-R_ik - R_jk + R_ij + R*_ik + R*_jk``."""
    return r_terms_poly(variant).combination()


def bracket_d() -> Poly:
    return d("i", "j") - d("i", "k") - d("j", "i") + d("j", "k") + d("k", "i") - d("k", "j")


def bracket_f() -> Poly:
    return f("i", "j") - f("i", "k") - f("j", "i") + f("j", "k") + f("k", "i") - f("k", "j")


def simplified_product() -> Poly:
    """Expansion of ``-(distance bracket) * (flow bracket)``: 36 monomials."""
    return -(bracket_d() * bracket_f())


def symmetric_quotient(p: Poly) -> Poly:
    """Identify ``v_xy`` with ``v_yx`` and zero every diagonal ``v_xx``."""
    mapping: dict[str, Poly | int] = {}
    for kind in "df":
        for x, y in product(TRIPLE, repeat=2):
            name = f"{kind}_{x}{y}"
            if x == y:
                mapping[name] = 0
            elif TRIPLE.index(x) > TRIPLE.index(y):
                mapping[name] = Poly.var(f"{kind}_{y}{x}")
    return p.substitute(mapping)


def _monomial_list(p: Poly) -> list[dict]:
    return [{"monomial": m, "coeff": c} for m, c in p.monomial_strings()]


@dataclass
class SimplificationReport:
    variant: str
    holds: bool
    difference: Poly
    holds_on_symmetric_quotient: bool

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "holds": self.holds,
            "holds_on_symmetric_quotient": self.holds_on_symmetric_quotient,
            "surviving_monomials": _monomial_list(self.difference),
        }

    def __str__(self):
        status = "holds" if self.holds else "FAILS"
        lines = [
            f"R-combination == simplified product [{self.variant}]: {status}"
            f" (symmetric zero-diagonal quotient: "
            f"{'holds' if self.holds_on_symmetric_quotient else 'FAILS'})"
        ]
        if not self.holds:
            lines.append(f"  difference ({len(self.difference)} monomials): {self.difference}")
        return "\n".join(lines)


def verify_simplification(
    variant: str = "literal", product_poly: Poly | None = None
) -> SimplificationReport:
    """Check that the R combination expands to the simplified product.

    ``product_poly`` replaces :func:`simplified_product` (used for mutation
    checks).
    """
    target = simplified_product() if product_poly is None else product_poly
    diff = expand_r_combination(variant) - target
    return SimplificationReport(
        variant=variant,
        holds=diff.is_zero(),
        difference=diff,
        holds_on_symmetric_quotient=symmetric_quotient(diff).is_zero(),
    )


# Per-g terms. "out" uses d_xg / f_xg (x -> g), "in" the mirrored d_gx / f_gx.
def _g_vars(direction: str) -> tuple[Callable[[str], Poly], Callable[[str], Poly]]:
    if direction == "out":
        return (lambda x: Poly.var(f"d_{x}g")), (lambda x: Poly.var(f"f_{x}g"))
    if direction == "in":
        return (lambda x: Poly.var(f"d_g{x}")), (lambda x: Poly.var(f"f_g{x}"))
    raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")


def small_deltas(direction: str = "out") -> dict[str, Poly]:
    """The per-g contributions to delta_ij, delta_ik, delta_jk before and after swapping i, j."""
    D, F = _g_vars(direction)
    di, dj, dk = D("i"), D("j"), D("k")
    fi, fj, fk = F("i"), F("j"), F("k")
    return {
        "ij": -di * fi - dj * fj + di * fj + dj * fi,
        "ik": -di * fi - dk * fk + di * fk + dk * fi,
        "jk": -dj * fj - dk * fk + dj * fk + dk * fj,
        "ik_star": -di * fj - dk * fk + di * fk + dk * fj,
        "jk_star": -dj * fi - dk * fk + dj * fk + dk * fi,
    }


def eq3_residual(direction: str = "out", include_ij: bool = True) -> Poly:
    """``delta*_ik + delta*_jk - delta_ik - delta_jk + delta_ij`` for one direction.

    ``direction="both"`` sums the two. ``include_ij=False`` drops the
    ``delta_ij`` term, which must break the identity.
    """
    if direction == "both":
        return eq3_residual("out", include_ij) + eq3_residual("in", include_ij)
    s = small_deltas(direction)
    r = s["ik_star"] + s["jk_star"] - s["ik"] - s["jk"]
    return r + s["ij"] if include_ij else r


@dataclass
class Eq3Report:
    holds: bool
    by_direction: dict[str, bool] = field(default_factory=dict)
    residuals: dict[str, Poly] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "by_direction": self.by_direction,
            "residuals": {k: _monomial_list(v) for k, v in self.residuals.items()},
        }

    def __str__(self):
        parts = ", ".join(f"{k}: {'holds' if v else 'FAILS'}" for k, v in self.by_direction.items())
        return f"per-g correlation identity: {'holds' if self.holds else 'FAILS'} ({parts})"


def verify_eq3_per_g(include_ij: bool = True) -> Eq3Report:
    """The per-g identity ``d*_ik + d*_jk = d_ik + d_jk - d_ij``, checked per direction and summed."""
    residuals = {k: eq3_residual(k, include_ij) for k in ("out", "in", "both")}
    by_dir = {k: v.is_zero() for k, v in residuals.items()}
    return Eq3Report(holds=all(by_dir.values()), by_direction=by_dir, residuals=residuals)


def post_swap_product(product_poly: Poly | None = None) -> Poly:
    """:func:`simplified_product` with every flow symbol read after swapping i and j."""
    swap = {"i": "j", "j": "i", "k": "k"}
    mapping = {
        f"f_{x}{y}": Poly.var(f"f_{swap[x]}{swap[y]}") for x, y in product(TRIPLE, repeat=2)
    }
    base = simplified_product() if product_poly is None else product_poly
    return base.substitute(mapping)


def verify_post_swap_reading(product_poly: Poly | None = None) -> SimplificationReport:
    """Pattern-derived R combination (pre-swap flows) equals the product at post-swap flows."""
    diff = expand_r_combination("pattern_consistent") - post_swap_product(product_poly)
    return SimplificationReport(
        variant="pattern_consistent vs product at post-swap flows",
        holds=diff.is_zero(),
        difference=diff,
        holds_on_symmetric_quotient=symmetric_quotient(diff).is_zero(),
    )

"""Rota-Baxter targets, characters, and Birkhoff factorization.

The target algebra is Laurent polynomials with exact rational coefficients
(finite support; every character in scope produces finitely many terms per
basis key, so no series truncation policy is needed).  The pole-part
projector keeps the strictly negative exponents and satisfies the weight -1
Rota-Baxter identity, which is checked by fuzzing rather than assumed.

Characters are rule sets evaluated multiplicatively over the canonical
factorization of a basis key (per vertex for forests, per edge/loop/merge
for aggregates, per grouplike generator).  The factorization recursion is
the standard subtraction scheme: the counterterm is minus the projected
preparation, and the identity phi = phi_minus^{-1} * phi_plus is verified
key by key through the convolution engine rather than trusted.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ConfigurationError, InputError, RuleNotFound, UnsupportedError
from .linear import BasisKey
from .scalars import render_scalar
from .specs import BialgebraSpec, ConvMap, ValidationReport, convolve
from .structure import filtration_from_grading, find_grouplikes
from .inversion import convolution_inverse
from .constructions import split_q_key
from .graphs import degree_of


class LaurentPoly:
    """A finite rational combination of integer powers of one variable."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None, _clean: bool = False):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {e: Fraction(c) for e, c in terms.items() if c}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({}, _clean=True)

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, exponent: int, coeff=Fraction(1)) -> "LaurentPoly":
        coeff = Fraction(coeff)
        return cls({exponent: coeff} if coeff else {}, _clean=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return LaurentPoly(out, _clean=True)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + other.scale(Fraction(-1))

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return LaurentPoly(out, _clean=True)

    def scale(self, c) -> "LaurentPoly":
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly({e: c * v for e, v in self.terms.items()}, _clean=True)

    def is_unit(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ConfigurationError(f"{self.render()} is not a unit")
        (e, c), = self.terms.items()
        return LaurentPoly({-e: 1 / c}, _clean=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(render_scalar(c))
            else:
                mono = "z" if e == 1 else f"z^{e}"
                parts.append(f"{render_scalar(c)}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<LaurentPoly {self.render()}>"


_TERM_RE = re.compile(
    r"(?P<sign>[+-])?(?P<coeff>\d+(?:/\d+)?)?(?:\*?(?P<var>z)(?:\^(?P<exp>-?\d+))?)?"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse '3z^-2+5+7z' style literals with rational coefficients."""
    compact = text.replace(" ", "")
    if not compact:
        raise InputError("empty Laurent literal")
    out = LaurentPoly.zero()
    pos = 0
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if not m or m.end() == pos or (m.group("coeff") is None and m.group("var") is None):
            raise InputError(f"bad Laurent literal {text!r} at offset {pos}")
        c = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = int(m.group("exp") or 1) if m.group("var") else 0
        out = out + LaurentPoly.monomial(e, c)
        pos = m.end()
    return out


class LaurentTarget:
    name = "laurent"

    def zero(self):
        return LaurentPoly.zero()

    def one(self):
        return LaurentPoly.one()

    def add(self, a, b):
        return a + b

    def scale(self, c, a):
        return a.scale(c)

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def try_inverse(self, v: LaurentPoly):
        return v.inverse() if v.is_unit() else None

    def render(self, v):
        return v.render()


LAURENT = LaurentTarget()


# ---------------------------------------------------------------------------
# Rota-Baxter operators


@dataclass(frozen=True)
class RBOperator:
    """A linear operator on Laurent polynomials given by an exponent filter.

    ``keep`` selects the exponents that survive; ``factor`` scales the
    output, so ``factor * pole_part`` has weight ``-factor`` by the scaling
    rule.  ``projector`` records whether keep-filtering is idempotent (it is,
    unless a factor != 1 spoils it).
    """

    keep: Callable[[int], bool]
    weight: Fraction
    factor: Fraction = Fraction(1)
    name: str = "T"

    def __call__(self, p: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(
            {e: self.factor * c for e, c in p.terms.items() if self.keep(e)}
        )

    def complement(self, p: LaurentPoly) -> LaurentPoly:
        return p - self(p)

    @property
    def is_projector(self) -> bool:
        return self.factor == 1

    def scaled(self, mu) -> "RBOperator":
        mu = Fraction(mu)
        return RBOperator(self.keep, self.weight * mu, self.factor * mu,
                          f"{mu}*{self.name}")


def pole_part_operator() -> RBOperator:
    return RBOperator(lambda e: e < 0, Fraction(-1), name="polepart")


def pole_part(p: LaurentPoly) -> LaurentPoly:
    """Strictly negative exponent part of a Laurent polynomial."""
    return pole_part_operator()(p)


def random_laurent(rng: random.Random, max_abs_exp: int = 6,
                   max_num: int = 127, terms: int = 4) -> LaurentPoly:
    out: dict = {}
    for _ in range(rng.randint(0, terms)):
        e = rng.randint(-max_abs_exp, max_abs_exp)
        c = Fraction(rng.randint(-max_num, max_num))
        if c:
            out[e] = out.get(e, 0) + c
    return LaurentPoly(out)


def check_rota_baxter(T: RBOperator, samples: int = 200, seed: int = 0) -> ValidationReport:
    """The weight identity on random pairs, plus image-subalgebra closure."""
    report = ValidationReport(f"Rota-Baxter identity for {T.name}")
    rng = random.Random(seed)
    lam = T.weight
    for _ in range(samples):
        x = random_laurent(rng)
        y = random_laurent(rng)
        report.checked += 1
        lhs = T(x) * T(y)
        rhs = T(T(x) * y) + T(x * T(y)) + T(x * y).scale(lam)
        if lhs != rhs:
            report.fail((x.render(), y.render()), "weight identity fails")
        if T.is_projector:
            report.checked += 1
            if T(T(x)) != T(x):
                report.fail(x.render(), "operator is not idempotent")
            minus = T(x) * T(y)
            plus = T.complement(x) * T.complement(y)
            report.checked += 1
            if T.complement(minus) != LaurentPoly.zero():
                report.fail((x.render(), y.render()), "image of T not closed")
            report.checked += 1
            if T(plus) != LaurentPoly.zero():
                report.fail((x.render(), y.render()), "image of 1-T not closed")
    return report


def atkinson_split(T: RBOperator, samples: int = 100, seed: int = 0):
    """Subalgebra closure and unique-splitting checks for a weight -1 projector."""
    if T.weight != Fraction(-1):
        raise UnsupportedError("subdirect splitting needs weight -1")
    if not T.is_projector:
        raise UnsupportedError("subdirect splitting needs a projector")
    report = ValidationReport(f"subdirect sum for {T.name}")
    rng = random.Random(seed)
    for _ in range(samples):
        a = random_laurent(rng)
        minus, plus = T(a), T.complement(a)
        report.checked += 1
        if minus + plus != a:
            report.fail(a.render(), "split does not recompose")
        report.checked += 1
        if T(plus) != LaurentPoly.zero() or T(minus) != minus:
            report.fail(a.render(), "split not unique for the projector")
        b = random_laurent(rng)
        report.checked += 1
        if T.complement(T(a) * T(b)) != LaurentPoly.zero():
            report.fail((a.render(), b.render()), "A- not closed under product")
        report.checked += 1
        if T(T.complement(a) * T.complement(b)) != LaurentPoly.zero():
            report.fail((a.render(), b.render()), "A+ not closed under product")
    minus_desc = "span{z^k : k kept by T}"
    plus_desc = "span{z^k : k dropped by T}"
    return minus_desc, plus_desc, report


# ---------------------------------------------------------------------------
# Characters


@dataclass
class CharacterSpec:
    """A multiplicative rule set assigning target values to generators.

    Supported rules: ``vertex`` (per forest vertex), ``edge`` (per non-loop
    ghost edge), ``loop`` (per ghost loop, defaults to the edge rule),
    ``merger`` (per corolla-count drop, defaults to one), ``grouplike`` (per
    grouplike generator: bare line, identity corolla, or deformation
    parameter unit; defaults to one).
    """

    target: object = field(default_factory=lambda: LAURENT)
    rules: dict = field(default_factory=dict)

    @classmethod
    def from_doc(cls, doc: dict) -> "CharacterSpec":
        try:
            target_name = doc.get("target", "laurent")
            rules_doc = doc["rules"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad character document: {exc}") from exc
        if target_name != "laurent":
            raise InputError(f"unsupported character target {target_name!r}")
        rules = {name: parse_laurent(text) for name, text in rules_doc.items()}
        return cls(LAURENT, rules)

    def _rule(self, name: str, default=None):
        value = self.rules.get(name, default)
        if value is None:
            raise RuleNotFound(name)
        return value

    def _power(self, value, n: int):
        acc = self.target.one()
        if n < 0:
            inv = self.target.try_inverse(value)
            if inv is None:
                raise ConfigurationError("negative power of a non-unit rule value")
            value, n = inv, -n
        for _ in range(n):
            acc = self.target.mul(acc, value)
        return acc

    def __call__(self, key: BasisKey):
        T = self.target
        if key.tag == "q":
            base, exps = split_q_key(key)
            value = self(base)
            total = sum(exps.values())
            if total:
                value = T.mul(value, self._power(self._rule("grouplike"), total))
            return value
        if key.tag == "forest":
            from .trees import forest_grading, strip_lines

            _, exps = strip_lines(key)
            lines = exps.get("q", 0)
            nvertices = forest_grading(key)
            value = T.one()
            if lines:
                value = T.mul(value, self._power(self._rule("grouplike", T.one()), lines))
            if nvertices:
                value = T.mul(value, self._power(self._rule("vertex"), nvertices))
            return value
        if key.tag == "graph":
            from .graphs import strip_identity_corollas

            _, sizes, edges, blocks = key.payload
            _, exps = strip_identity_corollas(key)
            idents = sum(exps.values())
            loops = sum(1 for a, b in edges if a == b)
            plain = len(edges) - loops
            drop = degree_of(key).word_drop
            value = T.one()
            if idents:
                value = T.mul(value, self._power(self._rule("grouplike", T.one()), idents))
            if plain:
                value = T.mul(value, self._power(self._rule("edge"), plain))
            if loops:
                value = T.mul(value, self._power(self._rule("loop", self.rules.get("edge")), loops))
            if drop:
                value = T.mul(value, self._power(self._rule("merger", T.one()), drop))
            return value
        raise RuleNotFound(key.tag)

    def as_conv_map(self, B: BialgebraSpec, name: str = "phi") -> ConvMap:
        return ConvMap(B.coalgebra, self.target, self, name)


def eval_character(phi: CharacterSpec, key: BasisKey):
    return phi(key)


# ---------------------------------------------------------------------------
# Birkhoff factorization


@dataclass
class BirkhoffPair:
    minus: ConvMap
    plus: ConvMap
    report: ValidationReport


def birkhoff(phi, B: BialgebraSpec, T: RBOperator, verify: bool = True) -> BirkhoffPair:
    """Split a character on a connected quotient along the Rota-Baxter operator.

    The recursion prepares phibar(x) = phi(x) + sum phi_minus(x') phi(x'')
    over the reduced coproduct, then projects: the counterterm is
    -T(phibar) and the renormalized part is (1-T)(phibar).  The factorization
    identity is re-derived through the convolution engine when verify is on.
    """
    if isinstance(phi, CharacterSpec):
        phi = phi.as_conv_map(B)
    C = B.coalgebra
    gpl, sgpl = find_grouplikes(C)
    unit_terms = list(B.unit)
    if len(unit_terms) != 1 or sgpl != {unit_terms[0][0]} or gpl != sgpl:
        raise ConfigurationError(
            "factorization needs a connected quotient (single grouplike); "
            "take the normalized quotient first"
        )
    unit_key = unit_terms[0][0]
    if T.weight != Fraction(-1):
        raise ConfigurationError("factorization needs a weight -1 operator")
    target = phi.target
    if not target.eq(phi(unit_key), target.one()):
        raise ConfigurationError("character must send the unit to one")

    memo_minus: dict = {unit_key: target.one()}

    def prepared(key: BasisKey):
        acc = phi(key)
        for (a, b), c in C.delta(key):
            if a == unit_key or b == unit_key:
                continue
            acc = target.add(acc, target.scale(c, target.mul(minus(a), phi(b))))
        return acc

    def minus(key: BasisKey):
        out = memo_minus.get(key)
        if out is None:
            out = target.scale(Fraction(-1), T(prepared(key)))
            memo_minus[key] = out
        return out

    def plus(key: BasisKey):
        if key == unit_key:
            return target.one()
        return T.complement(prepared(key))

    minus_map = ConvMap(C, target, minus, "phi-")
    plus_map = ConvMap(C, target, plus, "phi+")
    report = ValidationReport(f"factorization of {phi.name} on {B.name}")
    if verify:
        filt = filtration_from_grading(C)
        inv_minus = convolution_inverse(minus_map, filt=filt)
        recomposed = convolve(inv_minus, plus_map, "phi-^-1*phi+")
        for k in C.keys:
            report.checked += 1
            if not target.eq(recomposed(k), phi(k)):
                report.fail(k, "phi != phi-^-1 * phi+")
            if not target.eq(T(plus_map(k)), target.zero()):
                report.fail(k, "renormalized part not in the plus subalgebra")
        if not report.ok:
            raise ConfigurationError(
                f"factorization verification failed:\n{report.render()}"
            )
    return BirkhoffPair(minus_map, plus_map, report)

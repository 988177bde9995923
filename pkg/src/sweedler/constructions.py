"""Universal constructions on combinatorial bialgebras.

Quotients (normalized, commutator, central), the central q-deformation with
grouplike exponent bookkeeping, the coaction of the deformed quotient on the
connected quotient, and localization of the grouplike monoid.

All quotients are presented by an idempotent normal form on basis keys; the
kernel ideal is the span of ``k - nf(k)``, so membership of a coproduct in
``I (x) B + B (x) I`` is decided exactly by pushing both tensor legs through
the normal form.  The deformed algebras assume the grouplike monoid is free
on the basic-object classes (true for the tree and graph instances); inputs
with other relations are rejected rather than guessed at.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import ConfigurationError, UnsupportedError
from .linear import BasisKey, FormalSum, TensorSum, _addto, key_literal, register_literal
from .specs import (
    AlgebraSpec,
    BialgebraSpec,
    CoalgebraSpec,
    ValidationReport,
)
from .structure import find_grouplikes


@dataclass
class QuotientSpec:
    parent: BialgebraSpec
    kind: str
    normal_form: Callable[[BasisKey], BasisKey]
    bialgebra: BialgebraSpec

    def reduce_sum(self, s: FormalSum) -> FormalSum:
        return s.map_keys(lambda k: FormalSum.basis(self.normal_form(k)))


def _quotient_bialgebra(B: BialgebraSpec, nf, name: str,
                        hooks: dict | None = None) -> BialgebraSpec:
    keys = sorted({nf(k) for k in B.keys})

    def delta(key: BasisKey) -> TensorSum:
        out: dict = {}
        for (a, b), c in B.delta(key):
            _addto(out, (nf(a), nf(b)), c)
        return TensorSum(out, _clean=True)

    coalg = CoalgebraSpec(name, keys, delta, B.counit, B.grading)

    def product(a: BasisKey, b: BasisKey) -> FormalSum:
        return B.product(a, b).map_keys(lambda k: FormalSum.basis(nf(k)))

    unit = B.unit.map_keys(lambda k: FormalSum.basis(nf(k)))
    alg = AlgebraSpec(name, product, unit, key_inverse=B.algebra.key_inverse)
    merged = dict(B.hooks)
    merged.update(hooks or {})
    return BialgebraSpec(coalg, alg, merged)


def normalized_quotient(B: BialgebraSpec) -> QuotientSpec:
    """Quotient by the ideal spanned by 1 - g over the grouplikes.

    Every grouplike factor of a key is deleted; the result has a single
    grouplike (the unit) and is connected, which is what makes its antipode
    unconditional.
    """
    strip = B.hooks.get("strip_grouplikes")
    if strip is None:
        raise UnsupportedError(f"{B.name} has no grouplike factorization hook")

    def nf(key: BasisKey) -> BasisKey:
        return strip(key)[0]

    unit_key, = B.unit.terms
    name = f"{B.name}/norm"

    def key_inverse(key: BasisKey):
        return key if key == nf(unit_key) else None

    quotient = _quotient_bialgebra(B, nf, name)
    quotient.algebra.key_inverse = key_inverse
    return QuotientSpec(B, "normalized", nf, quotient)


def abelianized_quotient(B: BialgebraSpec, kind: str) -> QuotientSpec:
    """Commutator quotient (sort all factors) or central quotient (grouplikes only)."""
    hook_name = {"commutator": "commutator_sort", "central": "central_sort"}.get(kind)
    if hook_name is None:
        raise ConfigurationError(f"unknown quotient kind {kind!r}")
    nf = B.hooks.get(hook_name)
    if nf is None:
        raise UnsupportedError(f"{B.name} has no {kind} reordering hook")
    quotient = _quotient_bialgebra(B, nf, f"{B.name}/{kind}")
    return QuotientSpec(B, kind, nf, quotient)


def validate_coideal(q: QuotientSpec, sample_budget: int = 40, seed: int = 0) -> ValidationReport:
    """Check eps(I) = 0 and delta(I) in I (x) B + B (x) I on ideal generators."""
    report = ValidationReport(f"coideal check for {q.bialgebra.name}")
    B = q.parent
    C = B.coalgebra
    rng = random.Random(seed)
    gpl, _ = find_grouplikes(C)
    unit_key, = B.unit.terms
    gens: list[FormalSum] = []
    if q.kind == "normalized":
        gens = [
            FormalSum.basis(unit_key) - FormalSum.basis(g)
            for g in sorted(gpl)
        ]
    else:
        keys = list(B.keys)
        for _ in range(sample_budget):
            a, b = rng.choice(keys), rng.choice(keys)
            if q.kind == "central" and b not in gpl:
                b = rng.choice(sorted(gpl))
            gens.append(B.product(a, b) - B.product(b, a))
    nf = q.normal_form
    for i, gen in enumerate(gens):
        report.checked += 1
        if q.reduce_sum(gen) != FormalSum.zero():
            report.fail(f"generator {i}", "not in the kernel of the normal form")
            continue
        if C.counit_sum(gen) != 0:
            report.fail(f"generator {i}", "counit does not vanish")
        image: dict = {}
        for k, c in gen:
            for (a, b), c2 in C.delta(k):
                _addto(image, (nf(a), nf(b)), c * c2)
        if TensorSum(image, _clean=True) != TensorSum.zero():
            report.fail(f"generator {i}", "coproduct not inside I(x)B + B(x)I")
    return report


# ---------------------------------------------------------------------------
# q-deformation


def q_key(base: BasisKey, exps: dict) -> BasisKey:
    cleaned = tuple(sorted((g, e) for g, e in exps.items() if e))
    return BasisKey("q", (base.tag, base.payload, cleaned))


def _q_literal(key: BasisKey) -> str:
    base, exps = split_q_key(key)
    base_lit = key_literal(base)
    parts = [f"{g}^{e}" for g, e in sorted(exps.items())]
    if not parts:
        return base_lit
    suffix = "*".join(parts)
    return suffix if base_lit == "1" else f"{base_lit}*{suffix}"


register_literal("q", _q_literal)


def split_q_key(key: BasisKey):
    tag, payload, exps = key.payload
    return BasisKey(tag, payload), dict(exps)


def _merge_exps(a: dict, b: dict) -> dict:
    out = dict(a)
    for g, e in b.items():
        out[g] = out.get(g, 0) + e
        if not out[g]:
            del out[g]
    return out


@dataclass
class QDeformedBialgebra:
    """The central deformation of B with one parameter per grouplike generator.

    Keys are pairs (reduced class, exponent vector); the quotient relation
    identifying each grouplike with its parameter is built in, so this is
    the deformed quotient, isomorphic as a module to reduced (x) parameters.
    """

    parent: BialgebraSpec
    laurent: bool
    bialgebra: BialgebraSpec
    exponent_window: int

    def reduce_key(self, key: BasisKey) -> BasisKey:
        """Image of a parent basis key under the deformation quotient."""
        strip = self.parent.hooks["strip_grouplikes"]
        base, exps = strip(key)
        return q_key(base, exps)

    def specialize_key(self, key: BasisKey) -> BasisKey:
        """Set every parameter to one: the connected-quotient image."""
        base, _ = split_q_key(key)
        return base

    def single_parameter_exponent(self, key: BasisKey) -> int:
        weights = self.parent.hooks.get("generator_weights", {})
        _, exps = split_q_key(key)
        return sum(weights.get(g, 1) * e for g, e in exps.items())


def q_deform(B: BialgebraSpec, laurent: bool = False,
             exponent_window: int = 2) -> QDeformedBialgebra:
    strip = B.hooks.get("strip_grouplikes")
    if strip is None:
        raise UnsupportedError(f"{B.name} has no grouplike factorization hook")
    gpl, sgpl = find_grouplikes(B.coalgebra)
    if sgpl - gpl:
        raise UnsupportedError("deformation needs all semigrouplikes grouplike")
    # the grouplike monoid must be free on the generator labels: every
    # grouplike key must round-trip through its exponent vector
    rebuild = B.hooks.get("grouplike_key")
    for g in gpl:
        base, exps = strip(g)
        if base.tag == "q":
            raise ConfigurationError("cannot deform an already deformed instance")
        if rebuild is None or rebuild(exps) != g or exps and base != B.hooks["unit_key"]:
            raise UnsupportedError(
                f"grouplike monoid is not free on generators at {g}"
            )
    labels = sorted({lab for g in gpl for lab in strip(g)[1]})
    reduced = sorted({strip(k)[0] for k in B.keys})
    lo = -exponent_window if laurent else 0
    exp_range = [e for e in range(lo, exponent_window + 1) if e]
    # one exponent axis per generator keeps the window linear in the number
    # of generators; delta and product are total far beyond the window
    keys = set()
    for base in reduced:
        keys.add(q_key(base, {}))
        for lab in labels:
            for e in exp_range:
                keys.add(q_key(base, {lab: e}))
    keys = sorted(keys)

    def delta(key: BasisKey) -> TensorSum:
        base, exps = split_q_key(key)
        out: dict = {}
        for (a, b), c in B.delta(base):
            ra, ea = strip(a)
            rb, eb = strip(b)
            _addto(out, (q_key(ra, _merge_exps(exps, ea)),
                         q_key(rb, _merge_exps(exps, eb))), c)
        return TensorSum(out, _clean=True)

    def counit(key: BasisKey) -> Fraction:
        base, _ = split_q_key(key)
        return B.counit(base)

    def grading(key: BasisKey) -> int:
        base, _ = split_q_key(key)
        return B.grading(base)

    suffix = "laurent" if laurent else "poly"
    name = f"{B.name}/q[{suffix}]"
    coalg = CoalgebraSpec(name, keys, delta, counit, grading,
                          finite_universe=False)

    def product(k1: BasisKey, k2: BasisKey) -> FormalSum:
        b1, e1 = split_q_key(k1)
        b2, e2 = split_q_key(k2)
        exps = _merge_exps(e1, e2)
        out: dict = {}
        for k, c in B.product(b1, b2):
            rk, ek = strip(k)
            _addto(out, q_key(rk, _merge_exps(exps, ek)), c)
        return FormalSum(out, _clean=True)

    unit_base = strip(B.hooks["unit_key"])[0]
    unit = FormalSum.basis(q_key(unit_base, {}))

    def key_inverse(key: BasisKey):
        base, exps = split_q_key(key)
        if base != unit_base:
            return None
        if not laurent and any(e > 0 for e in exps.values()):
            return None
        return q_key(base, {g: -e for g, e in exps.items()})

    alg = AlgebraSpec(name, product, unit, key_inverse=key_inverse)
    hooks = dict(B.hooks)
    hooks["graded_filtration"] = True
    hooks["strip_grouplikes"] = lambda k: (k, {})
    bialg = BialgebraSpec(coalg, alg, hooks)
    return QDeformedBialgebra(B, laurent, bialg, exponent_window)


def localize_central(B: BialgebraSpec, exponent_window: int = 2) -> QDeformedBialgebra:
    """Adjoin inverse grouplike exponents; needs central grouplikes upstream."""
    gpl, _ = find_grouplikes(B.coalgebra)
    rng = random.Random(0)
    keys = list(B.keys)
    for g in sorted(gpl):
        for _ in range(20):
            a = rng.choice(keys)
            if B.product(g, a) != B.product(a, g):
                raise UnsupportedError(
                    f"grouplike {g} is not central; take the central or "
                    f"commutator quotient first"
                )
    return q_deform(B, laurent=True, exponent_window=exponent_window)


# ---------------------------------------------------------------------------
# Coaction of the deformed quotient on the connected quotient


@dataclass
class CoactionMap:
    deformed: QDeformedBialgebra
    reduced: BialgebraSpec

    def __call__(self, key: BasisKey) -> TensorSum:
        """x maps to sum of x1 (x) pi(x2) with pi setting the parameters to 1."""
        out: dict = {}
        for (a, b), c in self.deformed.bialgebra.delta(key):
            _addto(out, (a, self.deformed.specialize_key(b)), c)
        return TensorSum(out, _clean=True)


def brown_coaction(deformed: QDeformedBialgebra) -> CoactionMap:
    reduced = normalized_quotient(deformed.parent).bialgebra
    return CoactionMap(deformed, reduced)


def validate_coaction(coaction: CoactionMap, max_degree: int | None = None) -> ValidationReport:
    """Both coassociativity iterates and the counit collapse, exactly."""
    report = ValidationReport("coaction axioms")
    D = coaction.deformed.bialgebra
    R = coaction.reduced
    for key in D.keys:
        if max_degree is not None and D.grading(key) > max_degree:
            continue
        report.checked += 1
        left: dict = {}
        for (a, b), c in coaction(key):
            for (x, y), c2 in coaction(a):
                _addto(left, (x, y, b), c * c2)
        right: dict = {}
        for (a, b), c in coaction(key):
            for (x, y), c2 in R.delta(b):
                _addto(right, (a, x, y), c * c2)
        if left != right:
            report.fail(key, "coaction iterates disagree")
        collapsed: dict = {}
        for (a, b), c in coaction(key):
            eb = R.counit(b)
            if eb:
                _addto(collapsed, a, c * eb)
        if collapsed != {key: Fraction(1)}:
            report.fail(key, "counit collapse fails")
        if any(b.tag == "q" for (_, b), _c in coaction(key)):
            report.fail(key, "right factor carries a deformation parameter")
    return report

"""Coalgebra, algebra and bialgebra interfaces plus the convolution algebra.

A :class:`CoalgebraSpec` packages an enumerable (truncated) basis universe
together with total functions ``delta`` and ``counit`` on keys; linearity is
supplied by the engine.  Structural axioms are *validated*, never assumed:
the validators return reports listing offending keys so that negative
controls stay observable.

Convolution maps can land in the bialgebra itself (formal sums), in the
rationals, or in an external exact algebra such as Laurent polynomials; the
small target-algebra wrappers below give all three a uniform surface.
Values are immutable and memo caches are pure, so concurrent reads of the
same :class:`ConvMap` always return identical results.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ConfigurationError, UnsupportedError
from .linear import BasisKey, FormalSum, TensorSum, _addto


class CoalgebraSpec:
    def __init__(
        self,
        name: str,
        keys,
        delta: Callable[[BasisKey], TensorSum],
        counit: Callable[[BasisKey], Fraction],
        grading: Callable[[BasisKey], int],
        finite_universe: bool = True,
    ):
        self.name = name
        self.keys = tuple(sorted(keys))
        self._delta = delta
        self._counit = counit
        self.grading = grading
        self.finite_universe = finite_universe
        self._delta_memo: dict = {}
        self._key_set = set(self.keys)

    def delta(self, key: BasisKey) -> TensorSum:
        out = self._delta_memo.get(key)
        if out is None:
            out = self._delta(key)
            self._delta_memo[key] = out
        return out

    def counit(self, key: BasisKey) -> Fraction:
        return self._counit(key)

    def counit_sum(self, s: FormalSum) -> Fraction:
        return sum((c * self._counit(k) for k, c in s), Fraction(0))

    def delta_sum(self, s: FormalSum) -> TensorSum:
        out = TensorSum.zero()
        for k, c in s:
            out = out + self.delta(k).scale(c)
        return out

    def keys_of_degree(self, d: int):
        return [k for k in self.keys if self.grading(k) == d]

    def max_degree(self) -> int:
        return max((self.grading(k) for k in self.keys), default=0)

    def __repr__(self) -> str:
        return f"<CoalgebraSpec {self.name}: {len(self.keys)} keys>"


class AlgebraSpec:
    def __init__(
        self,
        name: str,
        product: Callable[[BasisKey, BasisKey], FormalSum],
        unit: FormalSum,
        key_inverse: Callable[[BasisKey], BasisKey | None] | None = None,
    ):
        self.name = name
        self._product = product
        self.unit = unit
        self.key_inverse = key_inverse
        self._memo: dict = {}

    def product(self, a: BasisKey, b: BasisKey) -> FormalSum:
        out = self._memo.get((a, b))
        if out is None:
            out = self._product(a, b)
            self._memo[(a, b)] = out
        return out

    def mul(self, s1: FormalSum, s2: FormalSum) -> FormalSum:
        out: dict = {}
        for k1, c1 in s1:
            for k2, c2 in s2:
                for k, c in self.product(k1, k2):
                    _addto(out, k, c1 * c2 * c)
        return FormalSum(out, _clean=True)

    def __repr__(self) -> str:
        return f"<AlgebraSpec {self.name}>"


class BialgebraSpec:
    """A coalgebra and an algebra over the same key universe.

    ``hooks`` carries instance-specific structure used by the universal
    constructions (grouplike stripping for quotients, commutative reordering,
    q-exponent bookkeeping); engines must work without them.
    """

    def __init__(
        self,
        coalgebra: CoalgebraSpec,
        algebra: AlgebraSpec,
        hooks: dict | None = None,
    ):
        self.coalgebra = coalgebra
        self.algebra = algebra
        self.hooks = hooks or {}
        self.name = coalgebra.name

    @property
    def keys(self):
        return self.coalgebra.keys

    def delta(self, key):
        return self.coalgebra.delta(key)

    def counit(self, key):
        return self.coalgebra.counit(key)

    def grading(self, key):
        return self.coalgebra.grading(key)

    def product(self, a, b):
        return self.algebra.product(a, b)

    @property
    def unit(self) -> FormalSum:
        return self.algebra.unit

    def __repr__(self) -> str:
        return f"<BialgebraSpec {self.name}: {len(self.keys)} keys>"


# ---------------------------------------------------------------------------
# Target algebras for convolution values


class FormalSumTarget:
    """Formal sums under an AlgebraSpec product."""

    def __init__(self, algebra: AlgebraSpec):
        self.algebra = algebra
        self.name = algebra.name

    def zero(self):
        return FormalSum.zero()

    def one(self):
        return self.algebra.unit

    def add(self, a, b):
        return a + b

    def scale(self, c, a):
        return a.scale(c)

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def try_inverse(self, v: FormalSum):
        """Invert a scalar multiple of the unit or of an invertible basis key."""
        unit = self.algebra.unit
        # scalar multiple of the unit sum
        if len(v) == len(unit) and len(unit) > 0:
            k0, c0 = next(iter(unit))
            ratio = v.coeff(k0) / c0 if c0 else None
            if ratio and v == unit.scale(ratio):
                return unit.scale(1 / ratio)
        if len(v) == 1:
            (k, c), = v
            inv = self.algebra.key_inverse(k) if self.algebra.key_inverse else None
            if inv is not None and self.algebra.product(k, inv) == unit \
                    and self.algebra.product(inv, k) == unit:
                return FormalSum.basis(inv, 1 / c)
        return None

    def render(self, v):
        return v.render()


class RationalTarget:
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def scale(self, c, a):
        return c * a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def try_inverse(self, v):
        return None if v == 0 else 1 / v

    def render(self, v):
        from .scalars import render_scalar

        return render_scalar(v)


# ---------------------------------------------------------------------------
# Convolution


class ConvMap:
    """A memoized linear map from a coalgebra into a target algebra."""

    def __init__(self, source: CoalgebraSpec, target, fn, name: str = ""):
        self.source = source
        self.target = target
        self._fn = fn
        self.name = name
        self._memo: dict = {}

    def __call__(self, key: BasisKey):
        out = self._memo.get(key)
        if out is None:
            out = self._fn(key)
            self._memo[key] = out
        return out

    def evaluate(self, s: FormalSum):
        acc = self.target.zero()
        for k, c in s:
            acc = self.target.add(acc, self.target.scale(c, self(k)))
        return acc

    def __repr__(self) -> str:
        return f"<ConvMap {self.name or '?'}: {self.source.name} -> {self.target.name}>"


def _same_target(a, b) -> bool:
    if a is b:
        return True
    if isinstance(a, FormalSumTarget) and isinstance(b, FormalSumTarget):
        return a.algebra is b.algebra
    return type(a) is type(b)


def convolve(f: ConvMap, g: ConvMap, name: str = "") -> ConvMap:
    """The convolution product: key -> sum of f(left) * g(right) over delta."""
    if f.source is not g.source:
        raise ConfigurationError(
            f"convolution sources differ: {f.source.name} vs {g.source.name}"
        )
    if not _same_target(f.target, g.target):
        raise ConfigurationError(
            f"convolution targets differ: {f.target.name} vs {g.target.name}"
        )
    C, T = f.source, f.target

    def fn(key):
        acc = T.zero()
        for (a, b), c in C.delta(key):
            acc = T.add(acc, T.scale(c, T.mul(f(a), g(b))))
        return acc

    return ConvMap(C, T, fn, name or f"({f.name}*{g.name})")


def convolution_unit(C: CoalgebraSpec, target, name: str = "eta.eps") -> ConvMap:
    return ConvMap(C, target, lambda k: target.scale(C.counit(k), target.one()), name)


def identity_map(B: BialgebraSpec) -> ConvMap:
    target = FormalSumTarget(B.algebra)
    return ConvMap(B.coalgebra, target, FormalSum.basis, "id")


def conv_maps_equal(f: ConvMap, g: ConvMap, keys=None) -> bool:
    keys = f.source.keys if keys is None else keys
    return all(f.target.eq(f(k), g(k)) for k in keys)


# ---------------------------------------------------------------------------
# Dual algebra of a finite coalgebra


def dual_algebra_product(f: dict, g: dict, C: CoalgebraSpec) -> dict:
    """Product of functionals on a finite coalgebra: (fg)(c) = (f (x) g)(delta c).

    Functionals are dicts key -> coefficient of the dual basis element.
    """
    if not C.finite_universe:
        raise UnsupportedError("dual algebra needs a finite key universe")
    out: dict = {}
    for k in C.keys:
        val = None  # typed by the coefficient field of the inputs
        for (a, b), c in C.delta(k):
            fa = f.get(a)
            gb = g.get(b)
            if fa and gb:
                term = c * fa * gb
                val = term if val is None else val + term
        if val is not None and val:
            out[k] = val
    return out


def counit_functional(C: CoalgebraSpec) -> dict:
    return {k: C.counit(k) for k in C.keys if C.counit(k)}


# ---------------------------------------------------------------------------
# Validators


@dataclass
class ValidationReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, context, detail: str) -> None:
        self.failures.append((str(context), detail))

    def render(self) -> str:
        head = f"{self.name}: {'PASS' if self.ok else 'FAIL'} ({self.checked} checks)"
        if self.ok:
            return head
        lines = [head]
        for ctx, detail in sorted(self.failures):
            lines.append(f"  {ctx}: {detail}")
        return "\n".join(lines)


def _triple_left(C: CoalgebraSpec, key: BasisKey) -> dict:
    out: dict = {}
    for (a, b), c in C.delta(key):
        for (x, y), c2 in C.delta(a):
            _addto(out, (x, y, b), c * c2)
    return out


def _triple_right(C: CoalgebraSpec, key: BasisKey) -> dict:
    out: dict = {}
    for (a, b), c in C.delta(key):
        for (x, y), c2 in C.delta(b):
            _addto(out, (a, x, y), c * c2)
    return out


def validate_coalgebra(C: CoalgebraSpec, max_degree: int | None = None) -> ValidationReport:
    """Check coassociativity and both counit laws key by key."""
    report = ValidationReport(f"coalgebra axioms for {C.name}")
    for k in C.keys:
        if max_degree is not None and C.grading(k) > max_degree:
            continue
        report.checked += 1
        if _triple_left(C, k) != _triple_right(C, k):
            report.fail(k, "coassociativity fails")
        left: dict = {}
        right: dict = {}
        for (a, b), c in C.delta(k):
            ea = C.counit(a)
            if ea:
                _addto(left, b, c * ea)
            eb = C.counit(b)
            if eb:
                _addto(right, a, c * eb)
        if left != {k: Fraction(1)}:
            report.fail(k, "left counit law fails")
        if right != {k: Fraction(1)}:
            report.fail(k, "right counit law fails")
        if C.grading(k) == 0:
            for (a, b), _ in C.delta(k):
                if C.grading(a) != 0 or C.grading(b) != 0:
                    report.fail(k, "degree-0 keys not closed under delta")
                    break
    return report


def validate_algebra(A: AlgebraSpec, keys, sample_budget: int = 100, seed: int = 0) -> ValidationReport:
    """Spot-check associativity and the unit laws on sampled tuples."""
    report = ValidationReport(f"algebra axioms for {A.name}")
    rng = random.Random(seed)
    keys = list(keys)
    if not keys:
        return report
    for _ in range(sample_budget):
        a, b, c = (rng.choice(keys) for _ in range(3))
        report.checked += 1
        left = A.mul(A.product(a, b), FormalSum.basis(c))
        right = A.mul(FormalSum.basis(a), A.product(b, c))
        if left != right:
            report.fail((a, b, c), "associativity fails")
    for _ in range(min(sample_budget, len(keys))):
        a = rng.choice(keys)
        report.checked += 1
        s = FormalSum.basis(a)
        if A.mul(A.unit, s) != s or A.mul(s, A.unit) != s:
            report.fail(a, "unit law fails")
    return report


def validate_bialgebra(B: BialgebraSpec, sample_budget: int = 200, seed: int = 0,
                       exhaustive_degree: int | None = None) -> ValidationReport:
    """Check the compatibility axioms on sampled (or degree-bounded) pairs."""
    report = ValidationReport(f"bialgebra axioms for {B.name}")
    C = B.coalgebra
    rng = random.Random(seed)
    unit_delta = C.delta_sum(B.unit)
    expected: dict = {}
    for k1, c1 in B.unit:
        for k2, c2 in B.unit:
            _addto(expected, (k1, k2), c1 * c2)
    report.checked += 1
    if unit_delta != TensorSum(expected):
        report.fail("1", "delta(1) != 1 (x) 1")
    report.checked += 1
    if C.counit_sum(B.unit) != 1:
        report.fail("1", "eps(1) != 1")

    if exhaustive_degree is not None:
        pairs = [
            (a, b)
            for a in C.keys
            for b in C.keys
            if C.grading(a) + C.grading(b) <= exhaustive_degree
        ]
    else:
        keys = list(C.keys)
        pairs = [(rng.choice(keys), rng.choice(keys)) for _ in range(sample_budget)]
    for a, b in pairs:
        report.checked += 1
        ab = B.product(a, b)
        lhs = C.delta_sum(ab)
        rhs = C.delta(a).tensor_mul(C.delta(b), B.product)
        if lhs != rhs:
            report.fail((a, b), "delta is not multiplicative")
        if C.counit_sum(ab) != C.counit(a) * C.counit(b):
            report.fail((a, b), "counit is not multiplicative")
    return report

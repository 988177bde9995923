"""Convolution inverses and antipodes.

Three routes to the inverse of a map out of a coalgebra:

* the geometric series over a filtration: after pre-composing with the
  degree-0 inverse the series for a key of filtration degree r truncates
  after r+1 terms, because every (r+1)-fold reduced product hits the base;
* the colored recursion, peeling the unique left-flank term off the
  coproduct of each key, valid on color-decomposable instances;
* an exact sparse linear solve on finite-dimensional instances, which needs
  no filtration at all (the route used for the group-double examples).

All routes are gated the same way: the map must send every (semi)grouplike
basis key to an invertible target value, and that is the only obstruction
for the instances in scope.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    ConfigurationError,
    FiltrationNotExhaustive,
    GrouplikeNotInvertible,
    MathError,
)
from .linalg import solve_sparse
from .linear import BasisKey, FormalSum, TensorSum
from .specs import (
    BialgebraSpec,
    ConvMap,
    FormalSumTarget,
    ValidationReport,
    convolution_unit,
    convolve,
    identity_map,
)
from .structure import (
    FiltrationTable,
    bivariate_filtration,
    color_decompose,
    filtration_from_grading,
    find_grouplikes,
)


def _gate_grouplikes(f: ConvMap) -> None:
    """Raise unless f inverts every (semi)grouplike of the enumerated universe."""
    gpl, sgpl = find_grouplikes(f.source)
    if sgpl - gpl:
        bad = sorted(sgpl - gpl)[0]
        raise ConfigurationError(
            f"semigrouplike {bad} is not grouplike; degree-0 inversion undefined"
        )
    for g in sorted(sgpl):
        value = f(g)
        if f.target.try_inverse(value) is None:
            raise GrouplikeNotInvertible(g, value)


def _is_grouplike_key(C, key: BasisKey) -> bool:
    # intrinsic test: keys outside the enumerated window still qualify
    return C.counit(key) == 1 and C.delta(key) == TensorSum.pure(key, key)


def _read_flanks(C, key: BasisKey):
    delta = C.delta(key)
    lefts = [a for (a, b), c in delta if b == key and c == 1 and _is_grouplike_key(C, a)]
    rights = [b for (a, b), c in delta if a == key and c == 1 and _is_grouplike_key(C, b)]
    if len(lefts) == 1 and len(rights) == 1:
        return lefts[0], rights[0]
    return None


def base_inverse_extension(f: ConvMap) -> ConvMap:
    """Extend the degree-0 inverse of f by zero on all other basis keys."""
    _gate_grouplikes(f)
    C, T = f.source, f.target

    def fn(key):
        if _is_grouplike_key(C, key):
            inv = T.try_inverse(f(key))
            if inv is None:
                raise GrouplikeNotInvertible(key, f(key))
            return inv
        return T.zero()

    return ConvMap(C, T, fn, name="f0inv")


def takeuchi_inverse(f: ConvMap, filt: FiltrationTable) -> ConvMap:
    """Two-sided convolution inverse via the truncated geometric series."""
    C, T = f.source, f.target
    g0 = base_inverse_extension(f)
    fp = convolve(f, g0, name="fnorm")
    eta_eps = convolution_unit(C, T)

    def u_fn(key):
        return T.add(T.scale(C.counit(key), T.one()), T.scale(Fraction(-1), fp(key)))

    u = ConvMap(C, T, u_fn, name="unit-minus-f")
    powers = [eta_eps]

    def ensure_power(i: int):
        while len(powers) <= i:
            powers.append(convolve(powers[-1], u, name=f"u^{len(powers)}"))

    def h_fn(key):
        d = filt.degree(key)
        if d is None:
            raise FiltrationNotExhaustive(key)
        ensure_power(d)
        acc = T.zero()
        for i in range(d + 1):
            acc = T.add(acc, powers[i](key))
        return acc

    h = ConvMap(C, T, h_fn, name="series")
    return convolve(g0, h, name=f"{f.name}^-1")


def recursive_inverse(f: ConvMap) -> ConvMap:
    """Convolution inverse by the flank-peeling recursion on a colored source."""
    C, T = f.source, f.target
    blocks, uncolorable = color_decompose(C)
    if uncolorable:
        key, reason = uncolorable[0]
        raise ConfigurationError(f"source is not colored: {key} ({reason})")
    flank_of: dict = {}
    for (g, h), keys in blocks.items():
        for k in keys:
            flank_of[k] = (g, h)
    _gate_grouplikes(f)
    memo: dict = {}
    in_progress: set = set()

    def h_fn(key: BasisKey):
        if key in memo:
            return memo[key]
        if _is_grouplike_key(C, key):
            inv = T.try_inverse(f(key))
            if inv is None:
                raise GrouplikeNotInvertible(key, f(key))
            memo[key] = inv
            return inv
        if key in in_progress:
            raise ConfigurationError(f"colored recursion cycles at {key}")
        in_progress.add(key)
        pair = flank_of.get(key)
        if pair is None:
            pair = _read_flanks(C, key)
            if pair is None:
                raise ConfigurationError(f"key {key} has no well-defined flanks")
        g, _y = pair
        finv_g = T.try_inverse(f(g))
        if finv_g is None:
            raise GrouplikeNotInvertible(g, f(g))
        rest = T.zero()
        for (a, b), c in C.delta(key):
            if a == g and b == key:
                continue
            rest = T.add(rest, T.scale(c, T.mul(f(a), h_fn(b))))
        value = T.mul(
            finv_g,
            T.add(T.scale(C.counit(key), T.one()), T.scale(Fraction(-1), rest)),
        )
        in_progress.discard(key)
        memo[key] = value
        return value

    return ConvMap(C, T, h_fn, name=f"{f.name}^-1")


def finite_convolution_inverse(f: ConvMap, B: BialgebraSpec) -> ConvMap:
    """Inverse on a finite-dimensional instance by exact sparse solving.

    Solves S * f = unit over the full basis and then checks the other side,
    so no filtration or connectivity is required.  The enumerated universe
    must contain the support of the inverse (true for honestly finite
    instances like the group doubles; truncations of infinite families need
    enough headroom).
    """
    C = B.coalgebra
    if not C.finite_universe:
        raise ConfigurationError("finite solve needs a finite key universe")
    T = f.target
    if not isinstance(T, FormalSumTarget):
        raise ConfigurationError("finite solve targets the bialgebra itself")
    keys = list(C.keys)
    col_index = {}

    def col(a, m):
        idx = col_index.get((a, m))
        if idx is None:
            idx = len(col_index)
            col_index[(a, m)] = idx
        return idx

    rows: dict = {}
    rhs: dict = {}
    unit = B.unit
    for k in keys:
        eps = C.counit(k)
        for o, c in unit:
            if eps:
                rhs[(k, o)] = rhs.get((k, o), Fraction(0)) + eps * c
        for (a, b), c in C.delta(k):
            fb = f(b)
            if fb.is_zero():
                continue
            for m in keys:
                prod = B.algebra.mul(FormalSum.basis(m), fb)
                for o, co in prod:
                    row = rows.setdefault((k, o), {})
                    j = col(a, m)
                    row[j] = row.get(j, Fraction(0)) + c * co
    row_keys = sorted(set(rows) | set(rhs), key=lambda ko: (ko[0], ko[1]))
    matrix = [rows.get(ko, {}) for ko in row_keys]
    vector = [rhs.get(ko, Fraction(0)) for ko in row_keys]
    solution = solve_sparse(matrix, vector)
    if solution is None:
        raise MathError(f"{f.name} has no convolution inverse on {C.name}")
    values: dict = {k: {} for k in keys}
    for (a, m), idx in col_index.items():
        v = solution.get(idx, Fraction(0))
        if v:
            values[a][m] = v
    table = {k: FormalSum(values[k]) for k in keys}
    inv = ConvMap(C, T, lambda k: table[k], name=f"{f.name}^-1")
    eta_eps = convolution_unit(C, T)
    for side in (convolve(inv, f), convolve(f, inv)):
        for k in keys:
            if not T.eq(side(k), eta_eps(k)):
                raise MathError(
                    f"{f.name} is left- but not two-sided invertible at {k}"
                )
    return inv


def convolution_inverse(
    f: ConvMap,
    filt: FiltrationTable | None = None,
    method: str = "auto",
    bialgebra: BialgebraSpec | None = None,
) -> ConvMap:
    """Dispatch to a suitable inversion route; grouplike gate applies first."""
    _gate_grouplikes(f)
    if method == "recursion":
        return recursive_inverse(f)
    if method == "solve":
        if bialgebra is None:
            raise ConfigurationError("finite solve needs the ambient bialgebra")
        return finite_convolution_inverse(f, bialgebra)
    if filt is None:
        filt = bivariate_filtration(f.source)
    if method == "series":
        return takeuchi_inverse(f, filt)
    if filt.exhaustive:
        return takeuchi_inverse(f, filt)
    if (
        bialgebra is not None
        and f.source.finite_universe
        and isinstance(f.target, FormalSumTarget)
    ):
        return finite_convolution_inverse(f, bialgebra)
    raise FiltrationNotExhaustive(sorted(filt.unreached)[0])


def antipode(B: BialgebraSpec, filt: FiltrationTable | None = None,
             method: str = "auto", validate: bool = True) -> ConvMap:
    """The convolution inverse of the identity map of a bialgebra.

    Raises GrouplikeNotInvertible when a grouplike basis key has no product
    inverse; for pathlike instances that is exactly the Hopf obstruction.
    """
    if filt is None and B.hooks.get("graded_filtration"):
        filt = filtration_from_grading(B.coalgebra)
    ident = identity_map(B)
    S = convolution_inverse(ident, filt=filt, method=method, bialgebra=B)
    S.name = "S"
    if validate:
        report = validate_antipode(B, S)
        if not report.ok:
            raise MathError(f"antipode validation failed:\n{report.render()}")
    return S


def validate_antipode(B: BialgebraSpec, S: ConvMap,
                      sample_budget: int = 50, seed: int = 0) -> ValidationReport:
    """Both antipode identities on every key, antihomomorphism on samples."""
    report = ValidationReport(f"antipode axioms for {B.name}")
    C = B.coalgebra
    alg = B.algebra
    for k in C.keys:
        report.checked += 1
        left = FormalSum.zero()
        right = FormalSum.zero()
        for (a, b), c in C.delta(k):
            left = left + alg.mul(S(a), FormalSum.basis(b)).scale(c)
            right = right + alg.mul(FormalSum.basis(a), S(b)).scale(c)
        expected = B.unit.scale(C.counit(k))
        if left != expected:
            report.fail(k, "S*id != unit.counit")
        if right != expected:
            report.fail(k, "id*S != unit.counit")
    rng = random.Random(seed)
    keys = list(C.keys)
    key_set = set(keys)
    tried = 0
    done = 0
    while done < sample_budget and tried < 20 * sample_budget:
        tried += 1
        a, b = rng.choice(keys), rng.choice(keys)
        ab = B.algebra.mul(FormalSum.basis(a), FormalSum.basis(b))
        # products leaving the truncated universe have no antipode table entry
        if any(k not in key_set for k, _ in ab):
            continue
        done += 1
        report.checked += 1
        if ab.map_keys(S) != B.algebra.mul(S(b), S(a)):
            report.fail((a, b), "S is not an antihomomorphism")
    return report


def invert_character(phi: ConvMap, B: BialgebraSpec,
                     filt: FiltrationTable | None = None,
                     sample_budget: int = 30, seed: int = 0) -> ConvMap:
    """Convolution inverse of a character, after a multiplicativity spot-check."""
    C = B.coalgebra
    if filt is None and B.hooks.get("graded_filtration"):
        filt = filtration_from_grading(C)
    rng = random.Random(seed)
    keys = list(C.keys)
    T = phi.target
    for _ in range(min(sample_budget, len(keys) ** 2)):
        a, b = rng.choice(keys), rng.choice(keys)
        lhs = phi.evaluate(B.product(a, b))
        rhs = T.mul(phi(a), phi(b))
        if not T.eq(lhs, rhs):
            raise ConfigurationError(
                f"rules are not multiplicative at ({a}, {b})"
            )
    if not T.eq(phi.evaluate(B.unit), T.one()):
        raise ConfigurationError("character does not preserve the unit")
    return convolution_inverse(phi, filt=filt, bialgebra=None if filt else B)

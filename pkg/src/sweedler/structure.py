"""Grouplike/skew-primitive detection and the filtration machinery.

Basis-level analysis of a truncated coalgebra: which basis keys are
(semi)grouplike, which are skew primitive between a pair of grouplikes, the
color block of every key read off from the flanking terms of its coproduct,
and the inductive two-sided filtration built from reduced coproducts.  The
filtration degree of a key is the engine behind geometric-series inversion:
a key of degree r is annihilated by any (r+1)-fold product of maps vanishing
on the degree-0 base.

Membership of a coproduct term in a filtration stratum is decided per term
on the canonical coproduct output.  Over a field with a canonical basis this
matches the span-level definition for every instance in the gallery; exotic
rewritings are out of scope.  Full linear-span primitive computation (kernel
of the reduced coproduct) is available separately for finite truncations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigurationError
from .linalg import nullspace_sparse
from .linear import BasisKey, FormalSum, TensorSum
from .specs import CoalgebraSpec


def find_grouplikes(C: CoalgebraSpec):
    """Basis keys k with delta(k) = k (x) k, split by the counit condition.

    Returns (grouplikes, semigrouplikes); the first set is contained in the
    second, which also collects semigrouplikes with counit value != 1.
    The scan is cached on the spec (universes are immutable).
    """
    cached = getattr(C, "_grouplike_cache", None)
    if cached is not None:
        return cached
    grouplikes = set()
    semigrouplikes = set()
    for k in C.keys:
        if C.delta(k) == TensorSum.pure(k, k):
            semigrouplikes.add(k)
            if C.counit(k) == 1:
                grouplikes.add(k)
    C._grouplike_cache = (grouplikes, semigrouplikes)
    return grouplikes, semigrouplikes


def reduced_coproduct(C: CoalgebraSpec, key: BasisKey, g: BasisKey, h: BasisKey) -> TensorSum:
    """delta(x) - g (x) x - x (x) h, the two-sided reduction at a flank pair."""
    return C.delta(key) - TensorSum.pure(g, key) - TensorSum.pure(key, h)


def find_skew_primitives(C: CoalgebraSpec, g: BasisKey, h: BasisKey) -> set:
    """Basis keys k with delta(k) = g (x) k + k (x) h exactly.

    Flank order is (left, right): a quiver edge v -> w is reported for the
    pair (v, w).  Linear combinations such as g - h are handled separately by
    :func:`skew_primitive_space`.
    """
    gpl, _ = find_grouplikes(C)
    if g not in gpl or h not in gpl:
        raise ConfigurationError(f"flanks must be grouplike basis keys: {g}, {h}")
    out = set()
    for k in C.keys:
        if k in (g, h):
            continue
        if reduced_coproduct(C, k, g, h).is_zero():
            out.add(k)
    return out


def skew_primitive_space(C: CoalgebraSpec, g: BasisKey, h: BasisKey,
                         max_degree: int | None = None) -> list[FormalSum]:
    """Basis of the full space {x : delta(x) = g (x) x + x (x) h} by exact solving."""
    keys = [k for k in C.keys
            if max_degree is None or C.grading(k) <= max_degree]
    cols = {k: i for i, k in enumerate(keys)}
    rows: dict = {}
    for k in keys:
        for (a, b), c in reduced_coproduct(C, k, g, h):
            rows.setdefault((a, b), {})[cols[k]] = c
    basis = nullspace_sparse(list(rows.values()), list(range(len(keys))))
    out = []
    for vec in basis:
        out.append(FormalSum({keys[i]: c for i, c in vec.items()}))
    return out


@dataclass
class FiltrationTable:
    """Key -> filtration degree, plus the keys that never entered.

    Grading-backed tables carry a total fallback function so maps stay
    evaluable on keys outside the enumerated sweep window.
    """

    degrees: dict
    bound: int
    unreached: frozenset
    stratum_exhausted: dict = field(default_factory=dict)
    fallback: object = None

    def degree(self, key: BasisKey):
        """The degree of a key, or None when it is not reached."""
        d = self.degrees.get(key)
        if d is None and key not in self.unreached and self.fallback is not None:
            return self.fallback(key)
        return d

    @property
    def exhaustive(self) -> bool:
        return not self.unreached

    def histogram(self) -> dict:
        out: dict = {}
        for d in self.degrees.values():
            out[d] = out.get(d, 0) + 1
        return out


def filtration_from_grading(C: CoalgebraSpec) -> FiltrationTable:
    """Use the grading as the filtration; valid when degree 0 is grouplike.

    The grading of a graded coalgebra is always an admissible filtration for
    series inversion provided the degree-0 stratum is spanned by grouplikes,
    which is checked here.
    """
    gpl, sgpl = find_grouplikes(C)
    degrees = {}
    for k in C.keys:
        d = C.grading(k)
        if d == 0 and k not in sgpl:
            raise ConfigurationError(
                f"degree-0 key {k} is not semigrouplike; grading filtration invalid"
            )
        degrees[k] = d
    return FiltrationTable(degrees, C.max_degree(), frozenset(), fallback=C.grading)


def bivariate_filtration(C: CoalgebraSpec, max_n: int | None = None) -> FiltrationTable:
    """Inductive sweep assigning each basis key its two-sided reduction depth.

    Degree 0 is the semigrouplike base.  A key enters degree n when for some
    pair of semigrouplike flanks every term of its reduced coproduct has both
    tensor factors already at degree <= n-1.
    """
    if max_n is None:
        max_n = max(C.max_degree(), 1)
    gpl, sgpl = find_grouplikes(C)
    degrees = {k: 0 for k in sgpl}
    pending = [k for k in C.keys if k not in sgpl]

    # Only flank pairs whose reduction removes every term involving the key
    # itself can ever assign it a degree; precompute those and the reduced
    # terms once per key.
    candidates: dict = {}
    for k in pending:
        delta = C.delta(k)
        lefts = [a for (a, b), c in delta if b == k and a in sgpl and c == 1]
        rights = [b for (a, b), c in delta if a == k and b in sgpl and c == 1]
        cand = []
        for g in lefts:
            for h in rights:
                reduced = reduced_coproduct(C, k, g, h)
                if any(a == k or b == k for (a, b), _ in reduced):
                    continue
                cand.append(tuple(reduced.terms))
        candidates[k] = cand

    stratum_exhausted = {0: True}
    for n in range(1, max_n + 1):
        new = []
        for k in pending:
            assigned = False
            for terms in candidates[k]:
                ok = True
                for a, b in terms:
                    da = degrees.get(a)
                    db = degrees.get(b)
                    if da is None or db is None or da > n - 1 or db > n - 1:
                        ok = False
                        break
                if ok:
                    assigned = True
                    break
            if assigned:
                new.append(k)
        for k in new:
            degrees[k] = n
        pending = [k for k in pending if k not in degrees]
        stratum_exhausted[n] = not pending
        if not pending:
            break
    return FiltrationTable(degrees, max_n, frozenset(pending), stratum_exhausted)


def bivariate_quillen_degree(C: CoalgebraSpec, key: BasisKey, max_n: int) -> int | None:
    """Smallest filtration degree of a key, or None when max_n is exceeded."""
    table = bivariate_filtration(C, max_n)
    return table.degree(key)


@dataclass
class PathlikeVerdict:
    is_pathlike: bool
    witnesses: list

    def render(self) -> str:
        if self.is_pathlike:
            return "pathlike: yes"
        lines = ["pathlike: no"]
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        return "\n".join(lines)


def verify_pathlike(C: CoalgebraSpec, max_n: int | None = None) -> PathlikeVerdict:
    """Check the two pathlike conditions on the truncated basis.

    (1) every semigrouplike basis key is grouplike; (2) the filtration based
    on the grouplikes reaches every basis key within the bound, so that its
    degree-0 part is exactly the span of the grouplikes.
    """
    gpl, sgpl = find_grouplikes(C)
    witnesses = []
    for k in sorted(sgpl - gpl):
        witnesses.append(f"semigrouplike {k} has counit {C.counit(k)} != 1")
    table = bivariate_filtration(C, max_n)
    for k in sorted(table.unreached):
        witnesses.append(f"key {k} not reached by the filtration (bound {table.bound})")
    return PathlikeVerdict(not witnesses, witnesses)


@dataclass
class StructureReport:
    grouplikes: set
    semigrouplikes: set
    skew_primitive_pairs: dict
    color_blocks: dict
    uncolorable: list

    def render(self) -> str:
        lines = [f"grouplikes ({len(self.grouplikes)}):"]
        for k in sorted(self.grouplikes):
            lines.append(f"  {k}")
        extra = self.semigrouplikes - self.grouplikes
        if extra:
            lines.append(f"semigrouplikes with counit != 1 ({len(extra)}):")
            for k in sorted(extra):
                lines.append(f"  {k}")
        lines.append("skew primitives:")
        for (g, h) in sorted(self.skew_primitive_pairs):
            for k in sorted(self.skew_primitive_pairs[(g, h)]):
                lines.append(f"  ({g},{h}): {k}")
        lines.append("color blocks:")
        for (g, h) in sorted(self.color_blocks):
            names = ", ".join(str(k) for k in sorted(self.color_blocks[(g, h)]))
            lines.append(f"  ({g},{h}): {names}")
        for k, reason in self.uncolorable:
            lines.append(f"uncolorable: {k} ({reason})")
        return "\n".join(lines)


def color_decompose(C: CoalgebraSpec):
    """Assign each key its (left, right) grouplike flank pair.

    The flanks are read off from the coproduct: the unique terms g (x) k and
    k (x) h with grouplike g, h and coefficient 1.  The remainder of the
    coproduct must have both tensor factors outside the grouplike span; keys
    violating this are reported as uncolorable.
    """
    memo: dict = {}

    def gpl(k: BasisKey) -> bool:
        v = memo.get(k)
        if v is None:
            v = C.counit(k) == 1 and C.delta(k) == TensorSum.pure(k, k)
            memo[k] = v
        return v

    blocks: dict = {}
    uncolorable = []
    for k in C.keys:
        if gpl(k):
            blocks.setdefault((k, k), set()).add(k)
            continue
        delta = C.delta(k)
        lefts = [a for (a, b), c in delta if b == k and gpl(a) and c == 1]
        rights = [b for (a, b), c in delta if a == k and gpl(b) and c == 1]
        if len(lefts) != 1 or len(rights) != 1:
            uncolorable.append((k, "flanking grouplikes not unique"))
            continue
        g, h = lefts[0], rights[0]
        rest = delta - TensorSum.pure(g, k) - TensorSum.pure(k, h)
        bad = False
        for (a, b), _ in rest:
            if gpl(a) or gpl(b):
                bad = True
                break
        if bad:
            uncolorable.append((k, "reduced part touches the grouplike span"))
            continue
        blocks.setdefault((g, h), set()).add(k)
    return blocks, uncolorable


def analyze_structure(C: CoalgebraSpec) -> StructureReport:
    gpl, sgpl = find_grouplikes(C)
    skew: dict = {}
    for g in sorted(gpl):
        for h in sorted(gpl):
            found = find_skew_primitives(C, g, h)
            if found:
                skew[(g, h)] = found
    blocks, uncolorable = color_decompose(C)
    return StructureReport(gpl, sgpl, skew, blocks, uncolorable)

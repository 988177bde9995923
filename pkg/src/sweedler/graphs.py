"""Aggregates of corollas, contraction morphisms, and the graph bialgebra.

A morphism out of an aggregate of flag-labeled corollas is recorded by its
ghost structure: one ghost edge per contracted flag pair (an edge between
two corollas, or a loop on one) plus a partition of the corollas into target
groups.  Corolla flags are an unstructured set, so the isomorphism class of
a morphism is exactly: the multigraph of ghost edges on size-attributed
corollas together with the partition.  Class keys store the lexicographically
minimal relabeling; minimization runs over attribute-preserving permutations
only, which is sound because attributes are isomorphism-invariant (and the
test suite cross-checks against the all-permutations brute force).

In connected mode every target group must be connected by its ghost edges
(mergers are forbidden) and the partition is forced to the edge components;
in non-connected mode target groups may merge disconnected pieces.

Class literal: ``g(sizes|edges|groups)``, e.g. a single edge contraction
between two 2-flag corollas is ``g(2,2|0-1|0.1)``; the empty aggregate
renders as ``1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InputError
from .linear import BasisKey, FormalSum, TensorSum, register_literal
from .specs import AlgebraSpec, BialgebraSpec, CoalgebraSpec, ValidationReport


# ---------------------------------------------------------------------------
# Class keys

def _components(n: int, edges) -> list:
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    comps: dict = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return [tuple(sorted(c)) for c in comps.values()]


def _normalize(sizes, edges, blocks, perm):
    """Relabel by perm (old index -> new index) and sort each section."""
    new_sizes = [0] * len(sizes)
    for old, new in enumerate(perm):
        new_sizes[new] = sizes[old]
    new_edges = sorted(
        (min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges
    )
    new_blocks = sorted(tuple(sorted(perm[c] for c in blk)) for blk in blocks)
    return tuple(new_sizes), tuple(new_edges), tuple(new_blocks)


def _canonical(sizes, edges, blocks):
    n = len(sizes)
    if n == 0:
        return (), (), ()
    loops = [0] * n
    degree = [0] * n
    for a, b in edges:
        if a == b:
            loops[a] += 1
        else:
            degree[a] += 1
            degree[b] += 1
    block_of = {}
    for blk in blocks:
        for c in blk:
            block_of[c] = len(blk)
    attr = [(sizes[i], loops[i], degree[i], block_of[i]) for i in range(n)]
    groups: dict = {}
    for i in range(n):
        groups.setdefault(attr[i], []).append(i)
    ordered_groups = [groups[a] for a in sorted(groups)]
    best = None
    for arrangement in itertools.product(
        *(itertools.permutations(g) for g in ordered_groups)
    ):
        order = [i for g in arrangement for i in g]
        perm = [0] * n
        for new, old in enumerate(order):
            perm[old] = new
        cand = _normalize(sizes, edges, blocks, perm)
        if best is None or cand < best:
            best = cand
    return best


def graph_class_key(sizes, edges, blocks, mode: str) -> BasisKey:
    """Canonical class of a morphism given by sizes, ghost edges, groups."""
    if mode not in ("c", "n"):
        raise InputError(f"graph mode must be 'c' or 'n', got {mode!r}")
    n = len(sizes)
    used = [0] * n
    for a, b in edges:
        if not (0 <= a < n and 0 <= b < n):
            raise InputError(f"edge ({a},{b}) out of range")
        used[a] += 1
        used[b] += 1
    for i in range(n):
        if used[i] > sizes[i]:
            raise InputError(f"corolla {i} has {sizes[i]} flags, {used[i]} used")
    seen = set()
    for blk in blocks:
        for c in blk:
            if c in seen:
                raise InputError("target groups overlap")
            seen.add(c)
    if seen != set(range(n)):
        raise InputError("target groups must partition the corollas")
    block_of = {}
    for bi, blk in enumerate(blocks):
        for c in blk:
            block_of[c] = bi
    for a, b in edges:
        if block_of[a] != block_of[b]:
            raise InputError(f"ghost edge ({a},{b}) crosses target groups")
    if mode == "c":
        comps = sorted(_components(n, edges))
        if comps != sorted(tuple(sorted(blk)) for blk in blocks):
            raise InputError("connected mode: target groups must be edge components")
    c_sizes, c_edges, c_blocks = _canonical(tuple(sizes), tuple(edges), tuple(blocks))
    return BasisKey("graph", (mode, c_sizes, c_edges, c_blocks))


def identity_class(sizes, mode: str) -> BasisKey:
    return graph_class_key(sizes, (), [(i,) for i in range(len(sizes))], mode)


def graph_unit_key(mode: str) -> BasisKey:
    return identity_class((), mode)


def _graph_literal(key: BasisKey) -> str:
    mode, sizes, edges, blocks = key.payload
    if not sizes:
        return "1"
    s = ",".join(str(x) for x in sizes)
    e = ",".join(f"{a}-{b}" for a, b in edges)
    g = ",".join(
        ".".join(str(c) for c in blk) for blk in blocks if len(blk) > 1
    )
    return f"g({s}|{e}|{g})"


register_literal("graph", _graph_literal)


# ---------------------------------------------------------------------------
# Degrees

@dataclass(frozen=True)
class DegreeTriple:
    word_drop: int     # corolla count minus target group count
    edge_count: int
    weight: int        # sum of the two


def degree_of(key: BasisKey) -> DegreeTriple:
    _, sizes, edges, blocks = key.payload
    drop = len(sizes) - len(blocks)
    return DegreeTriple(drop, len(edges), drop + len(edges))


def ghost_invariants(key: BasisKey) -> dict:
    """Component/cycle counts of the ghost graph, with the Euler identity.

    components - cycles always equals vertices - edges; both sides are
    reported so the relation can be asserted exactly.
    """
    _, sizes, edges, blocks = key.payload
    n = len(sizes)
    comps = _components(n, edges)
    b0 = len(comps)
    b1 = len(edges) - n + b0
    return {
        "vertices": n,
        "edges": len(edges),
        "components": b0,
        "cycles": b1,
        "chi": b0 - b1,
    }


# ---------------------------------------------------------------------------
# Coproduct

def _set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


@lru_cache(maxsize=None)
def graph_coproduct(key: BasisKey) -> TensorSum:
    """Sum over ghost-edge subsets (and group refinements) of subgraph (x) residue.

    The left factor keeps all corollas with the chosen edges; its groups are
    the edge components (connected mode) or any coarsening inside the
    morphism's groups (non-connected mode, which distributes mergers).  The
    right factor lives on the left factor's target corollas and carries the
    remaining edges and the residual grouping.
    """
    mode, sizes, edges, blocks = key.payload
    n = len(sizes)
    block_id = {}
    for bi, blk in enumerate(blocks):
        for c in blk:
            block_id[c] = bi
    terms = []
    for bits in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if bits & (1 << i)]
        rest = [edges[i] for i in range(len(edges)) if not bits & (1 << i)]
        comps = _components(n, chosen)
        if mode == "c":
            refinements = [comps]
        else:
            by_block: dict = {}
            for comp in comps:
                by_block.setdefault(block_id[comp[0]], []).append(comp)
            per_block = []
            for bi in sorted(by_block):
                per_block.append(list(_set_partitions(by_block[bi])))
            refinements = []
            for combo in itertools.product(*per_block):
                groups = []
                for part in combo:
                    for cell in part:
                        groups.append(
                            tuple(sorted(c for comp in cell for c in comp))
                        )
                refinements.append(groups)
        for groups in refinements:
            groups = sorted(groups)
            left = graph_class_key(sizes, chosen, groups, mode)
            tgt_index = {}
            tgt_sizes = []
            for gi, grp in enumerate(groups):
                for c in grp:
                    tgt_index[c] = gi
                inside = sum(1 for a, b in chosen if a in grp and b in grp)
                tgt_sizes.append(sum(sizes[c] for c in grp) - 2 * inside)
            res_edges = [(tgt_index[a], tgt_index[b]) for a, b in rest]
            res_groups: dict = {}
            for gi, grp in enumerate(groups):
                res_groups.setdefault(block_id[grp[0]], []).append(gi)
            right = graph_class_key(
                tgt_sizes, res_edges, [tuple(sorted(v)) for v in res_groups.values()],
                mode,
            )
            terms.append((left, right))
    return TensorSum.of(terms)


def graph_coproduct_channels(key: BasisKey) -> TensorSum:
    """Diagnostic variant: every distinct class pair with coefficient one."""
    return TensorSum({pair: Fraction(1) for pair, _ in graph_coproduct(key)})


def graph_product(k1: BasisKey, k2: BasisKey) -> FormalSum:
    mode, s1, e1, b1 = k1.payload
    _, s2, e2, b2 = k2.payload
    off = len(s1)
    sizes = s1 + s2
    edges = list(e1) + [(a + off, b + off) for a, b in e2]
    blocks = list(b1) + [tuple(c + off for c in blk) for blk in b2]
    return FormalSum.basis(graph_class_key(sizes, edges, blocks, mode))


def graph_counit(key: BasisKey) -> Fraction:
    _, sizes, edges, blocks = key.payload
    ok = not edges and all(len(b) == 1 for b in blocks)
    return Fraction(1) if ok else Fraction(0)


def graph_grading(key: BasisKey) -> int:
    return degree_of(key).weight


# ---------------------------------------------------------------------------
# Universe enumeration

def all_graph_classes(max_corollas: int, max_edges: int, max_flags: int, mode: str):
    """All classes within the budgets, closed under coproduct factors.

    Residue factors merge corollas, so their targets can exceed the flag
    budget; the closure pass adds those keys (mostly identity aggregates) to
    keep the enumerated universe an honest subcoalgebra.
    """
    keys = set()
    for n in range(max_corollas + 1):
        for sizes in itertools.combinations_with_replacement(
            range(max_flags + 1), n
        ):
            pairs = [(i, j) for i in range(n) for j in range(i, n)]
            for count in range(max_edges + 1):
                for edges in itertools.combinations_with_replacement(pairs, count):
                    used = [0] * n
                    ok = True
                    for a, b in edges:
                        used[a] += 1
                        used[b] += 1
                    for i in range(n):
                        if used[i] > sizes[i]:
                            ok = False
                            break
                    if not ok:
                        continue
                    comps = _components(n, edges)
                    if mode == "c":
                        keys.add(graph_class_key(sizes, edges, comps, mode))
                        continue
                    for part in _set_partitions(comps):
                        blocks = [
                            tuple(sorted(c for comp in cell for c in comp))
                            for cell in part
                        ]
                        keys.add(graph_class_key(sizes, edges, blocks, mode))
    frontier = list(keys)
    while frontier:
        new = []
        for k in frontier:
            for (a, b), _ in graph_coproduct(k):
                for f in (a, b):
                    if f not in keys:
                        keys.add(f)
                        new.append(f)
        frontier = new
    return sorted(keys)


# ---------------------------------------------------------------------------
# Labeled morphisms (documents, generators, relation checks)

@dataclass
class GraphMorphism:
    """A labeled aggregate morphism: named corollas, ghost edges, groups."""

    corollas: list          # (name, list of flag names)
    edges: list             # ((corolla index, flag), (corolla index, flag))
    merge_pairs: list       # (corolla index, corolla index)

    def flag_owner(self, flag: str) -> tuple:
        for ci, (_, flags) in enumerate(self.corollas):
            if flag in flags:
                return ci, flag
        raise InputError(f"unknown flag {flag!r}")

    def check(self) -> None:
        names = [n for n, _ in self.corollas]
        if len(set(names)) != len(names):
            raise InputError("duplicate corolla names")
        all_flags: list = []
        for _, flags in self.corollas:
            if len(set(flags)) != len(flags):
                raise InputError("duplicate flag within a corolla")
            all_flags.extend(flags)
        if len(set(all_flags)) != len(all_flags):
            raise InputError("flag names must be globally unique")
        seen = set()
        for (ci, fi), (cj, fj) in self.edges:
            for c, f in ((ci, fi), (cj, fj)):
                if f not in self.corollas[c][1]:
                    raise InputError(f"flag {f!r} not on corolla {c}")
                if f in seen:
                    raise InputError(f"flag {f!r} used by two ghost edges")
                seen.add(f)

    def blocks(self) -> list:
        n = len(self.corollas)
        pairs = [(a[0], b[0]) for a, b in self.edges] + list(self.merge_pairs)
        return _components(n, pairs)

    def class_key(self, mode: str) -> BasisKey:
        self.check()
        sizes = [len(flags) for _, flags in self.corollas]
        edges = [(a[0], b[0]) for a, b in self.edges]
        if mode == "c" and self.merge_pairs:
            raise InputError("connected mode forbids mergers")
        return graph_class_key(sizes, edges, self.blocks(), mode)

    # generator application (composition at the target level)

    def contract(self, flag_a: str, flag_b: str) -> "GraphMorphism":
        ca, fa = self.flag_owner(flag_a)
        cb, fb = self.flag_owner(flag_b)
        if fa == fb:
            raise InputError("a ghost edge needs two distinct flags")
        used = {f for e in self.edges for _, f in (e[0], e[1])}
        if flag_a in used or flag_b in used:
            raise InputError("flag already contracted")
        return GraphMorphism(
            self.corollas,
            self.edges + [((ca, fa), (cb, fb))],
            self.merge_pairs,
        )

    def merge(self, name_a: str, name_b: str) -> "GraphMorphism":
        names = [n for n, _ in self.corollas]
        return GraphMorphism(
            self.corollas,
            self.edges,
            self.merge_pairs + [(names.index(name_a), names.index(name_b))],
        )

    @classmethod
    def identity(cls, corollas) -> "GraphMorphism":
        return cls([(n, list(f)) for n, f in corollas], [], [])

    @classmethod
    def from_doc(cls, doc: dict) -> "GraphMorphism":
        try:
            corollas = [(c["name"], list(c["flags"])) for c in doc["corollas"]]
            names = [n for n, _ in corollas]
            edges = []
            for a, b in doc.get("edges", ()):
                ca, fa = a.split(".", 1)
                cb, fb = b.split(".", 1)
                edges.append(((names.index(ca), fa), (names.index(cb), fb)))
            merges = []
            for grp in doc.get("merge", ()):
                for x, y in zip(grp, grp[1:]):
                    merges.append((names.index(x), names.index(y)))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"bad graph document: {exc}") from exc
        m = cls(corollas, edges, merges)
        m.check()
        return m


def _random_aggregate(rng: random.Random, n: int, max_flags: int) -> GraphMorphism:
    corollas = []
    fid = 0
    for i in range(n):
        nflags = rng.randint(2, max_flags)
        flags = [f"f{fid + j}" for j in range(nflags)]
        fid += nflags
        corollas.append((f"c{i}", flags))
    return GraphMorphism.identity(corollas)


def check_graph_relations(budget: int = 50, seed: int = 0) -> ValidationReport:
    """Generator pairs applied in both orders must give equal class keys."""
    report = ValidationReport("aggregate generator relations")
    rng = random.Random(seed)
    for trial in range(budget):
        agg = _random_aggregate(rng, 4, 4)
        flags = [f for _, fl in agg.corollas for f in fl]
        f = {i: flags[i] for i in range(len(flags))}
        # free flags per corolla: c0 has >= 2, etc.
        c0 = agg.corollas[0][1]
        c1 = agg.corollas[1][1]
        c2 = agg.corollas[2][1]
        c3 = agg.corollas[3][1]
        cases = [
            # disjoint edge contractions commute
            (lambda m: m.contract(c0[0], c1[0]).contract(c2[0], c3[0]),
             lambda m: m.contract(c2[0], c3[0]).contract(c0[0], c1[0]), "c"),
            # loop contractions commute
            (lambda m: m.contract(c0[0], c0[1]).contract(c1[0], c1[1]),
             lambda m: m.contract(c1[0], c1[1]).contract(c0[0], c0[1]), "c"),
            # loop and edge contractions commute
            (lambda m: m.contract(c0[0], c0[1]).contract(c1[0], c2[0]),
             lambda m: m.contract(c1[0], c2[0]).contract(c0[0], c0[1]), "c"),
            # cycle case: second contraction is the loop, either order
            (lambda m: m.contract(c0[0], c1[0]).contract(c0[1], c1[1]),
             lambda m: m.contract(c0[1], c1[1]).contract(c0[0], c1[0]), "c"),
            # mergers commute
            (lambda m: m.merge("c0", "c1").merge("c2", "c3"),
             lambda m: m.merge("c2", "c3").merge("c0", "c1"), "n"),
            # edge contraction = loop contraction after merger
            (lambda m: m.contract(c0[0], c1[0]),
             lambda m: m.merge("c0", "c1").contract(c0[0], c1[0]), "n"),
            # mergers and contractions on different sets commute
            (lambda m: m.merge("c0", "c1").contract(c2[0], c3[0]),
             lambda m: m.contract(c2[0], c3[0]).merge("c0", "c1"), "n"),
        ]
        for idx, (left, right, mode) in enumerate(cases):
            report.checked += 1
            lk = left(agg).class_key(mode)
            rk = right(agg).class_key(mode)
            if lk != rk:
                report.fail(f"trial {trial} case {idx}", f"{lk} != {rk}")
    return report


# ---------------------------------------------------------------------------
# The bialgebra

@lru_cache(maxsize=None)
def strip_identity_corollas(key: BasisKey):
    """Drop isolated identity corollas; returns (reduced key, exponents)."""
    mode, sizes, edges, blocks = key.payload
    touched = {c for a, b in edges for c in (a, b)}
    removable = set()
    exps: dict = {}
    for blk in blocks:
        if len(blk) == 1 and blk[0] not in touched:
            c = blk[0]
            removable.add(c)
            label = f"q{sizes[c]}"
            exps[label] = exps.get(label, 0) + 1
    if not removable:
        return key, {}
    keep = [c for c in range(len(sizes)) if c not in removable]
    remap = {c: i for i, c in enumerate(keep)}
    new_sizes = [sizes[c] for c in keep]
    new_edges = [(remap[a], remap[b]) for a, b in edges]
    new_blocks = [
        tuple(remap[c] for c in blk)
        for blk in blocks
        if blk[0] not in removable or len(blk) > 1
    ]
    return graph_class_key(new_sizes, new_edges, new_blocks, mode), exps


def grouplike_class(exps: dict, mode: str) -> BasisKey:
    sizes = []
    for label, count in sorted(exps.items()):
        size = int(label[1:])
        sizes.extend([size] * count)
    return identity_class(tuple(sizes), mode)


def build_graph_bialgebra(max_corollas: int, max_edges: int,
                          max_flags: int = 3, connected: bool = True) -> BialgebraSpec:
    mode = "c" if connected else "n"
    keys = all_graph_classes(max_corollas, max_edges, max_flags, mode)
    coalg = CoalgebraSpec(
        f"graphs({mode},{max_corollas}c,{max_edges}e,{max_flags}f)",
        keys,
        graph_coproduct,
        graph_counit,
        graph_grading,
    )
    alg = AlgebraSpec(coalg.name, graph_product, FormalSum.basis(graph_unit_key(mode)))
    max_size = max(
        (s for k in keys for s in k.payload[1]), default=0
    )
    hooks = {
        "family": "graph",
        "mode": mode,
        "graded_filtration": True,
        "unit_key": graph_unit_key(mode),
        "strip_grouplikes": strip_identity_corollas,
        "grouplike_key": lambda exps: grouplike_class(exps, mode),
        "commutator_sort": lambda k: k,
        "central_sort": lambda k: k,
        "generator_weights": {f"q{s}": s for s in range(max_size + 1)},
    }
    return BialgebraSpec(coalg, alg, hooks)


# convenience builders for the closed-form antipode checks

def edge_contraction_class(n: int, m: int, mode: str = "c") -> BasisKey:
    """Contraction of one edge between an n-flag and an m-flag corolla."""
    if n < 1 or m < 1:
        raise InputError("edge contraction needs a flag on each corolla")
    return graph_class_key((n, m), ((0, 1),), ((0, 1),), mode)


def loop_contraction_class(n: int, mode: str = "c") -> BasisKey:
    """Contraction of a loop on an n-flag corolla (n >= 2)."""
    if n < 2:
        raise InputError("loop contraction needs two flags")
    return graph_class_key((n,), ((0, 0),), ((0,),), mode)


def merger_class(n: int, m: int) -> BasisKey:
    """Simple merger of an n-flag and an m-flag corolla (non-connected)."""
    return graph_class_key((n, m), (), ((0, 1),), "n")

import itertools
import random

import pytest

from sweedler.errors import InputError
from sweedler.graphs import (
    GraphMorphism,
    all_graph_classes,
    check_graph_relations,
    degree_of,
    edge_contraction_class,
    ghost_invariants,
    graph_class_key,
    graph_coproduct,
    graph_coproduct_channels,
    graph_product,
    graph_unit_key,
    identity_class,
    loop_contraction_class,
    merger_class,
    strip_identity_corollas,
)
from sweedler.linear import TensorSum
from sweedler.specs import validate_bialgebra, validate_coalgebra
from sweedler.structure import find_grouplikes, verify_pathlike


def test_canonical_invariance_under_relabeling():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(1, 5)
        sizes = [rng.randint(0, 4) for _ in range(n)]
        edges = []
        capacity = list(sizes)
        for _ in range(rng.randint(0, 4)):
            i, j = rng.randrange(n), rng.randrange(n)
            need = 2 if i == j else 1
            if capacity[i] >= need and (i != j and capacity[j] >= 1 or i == j):
                edges.append((min(i, j), max(i, j)))
                capacity[i] -= need
                if i != j:
                    capacity[j] -= 1
        comps = {}
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                i = parent[i]
            return i

        for a, b in edges:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        blocks = {}
        for i in range(n):
            blocks.setdefault(find(i), []).append(i)
        blocks = [tuple(sorted(b)) for b in blocks.values()]
        base = graph_class_key(sizes, edges, blocks, "c")
        perm = list(range(n))
        rng.shuffle(perm)
        p_sizes = [0] * n
        for old, new in enumerate(perm):
            p_sizes[new] = sizes[old]
        p_edges = [(min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges]
        p_blocks = [tuple(sorted(perm[c] for c in blk)) for blk in blocks]
        assert graph_class_key(p_sizes, p_edges, p_blocks, "c") == base


def _random_structure(rng, n):
    sizes = tuple(rng.randint(0, 3) for _ in range(n))
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    edges = []
    capacity = list(sizes)
    for _ in range(rng.randint(0, 4)):
        i, j = rng.choice(pairs)
        need_i = 2 if i == j else 1
        if capacity[i] >= need_i and (i == j or capacity[j] >= 1):
            edges.append((i, j))
            capacity[i] -= need_i
            if i != j:
                capacity[j] -= 1
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    return sizes, tuple(edges), tuple(tuple(sorted(b)) for b in blocks.values())


def _isomorphic_bruteforce(s1, s2):
    sizes1, edges1, blocks1 = s1
    sizes2, edges2, blocks2 = s2
    n = len(sizes1)
    if n != len(sizes2):
        return False
    e2 = sorted(edges2)
    b2 = sorted(tuple(sorted(b)) for b in blocks2)
    for perm in itertools.permutations(range(n)):
        if any(sizes2[perm[i]] != sizes1[i] for i in range(n)):
            continue
        pe = sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges1)
        pb = sorted(tuple(sorted(perm[c] for c in blk)) for blk in blocks1)
        if pe == e2 and pb == b2:
            return True
    return False


def test_canonical_agrees_with_all_permutations_bruteforce():
    # full-permutation isomorphism testing agrees with key equality
    rng = random.Random(11)
    structures = [_random_structure(rng, rng.randint(2, 6)) for _ in range(28)]
    keys = [graph_class_key(s[0], s[1], s[2], "c") for s in structures]
    for i in range(len(structures)):
        for j in range(i, len(structures)):
            expected = _isomorphic_bruteforce(structures[i], structures[j])
            assert (keys[i] == keys[j]) == expected, (structures[i], structures[j])


def test_edge_contraction_skew_primitive_connected():
    key = edge_contraction_class(2, 2)
    d = graph_coproduct(key)
    assert d == TensorSum.of([
        (identity_class((2, 2), "c"), key),
        (key, identity_class((2,), "c")),
    ])


def test_loop_contraction_coproduct():
    key = loop_contraction_class(2)
    d = graph_coproduct(key)
    assert d == TensorSum.of([
        (identity_class((2,), "c"), key),
        (key, identity_class((0,), "c")),
    ])


def test_two_edge_path_coproduct_count():
    # three corollas in a path of two contractions: 2^2 labeled subsets
    key = graph_class_key((1, 2, 1), ((0, 1), (1, 2)), ((0, 1, 2),), "c")
    d = graph_coproduct(key)
    assert sum(c for _, c in d) == 4


def test_merger_distributes_in_nonconnected_mode():
    key = edge_contraction_class(2, 2, "n")
    d = graph_coproduct(key)
    merger = merger_class(2, 2)
    loop = graph_class_key((4,), ((0, 0),), ((0,),), "n")
    assert d.coeff(merger, loop) == 1
    assert len(d) == 3


def test_coproduct_channels_diagnostic():
    k = graph_product(edge_contraction_class(2, 2), edge_contraction_class(2, 2))
    (key, _), = k
    multi = graph_coproduct(key)
    channels = graph_coproduct_channels(key)
    assert set(multi.terms) == set(channels.terms)
    assert any(c > 1 for _, c in multi)
    assert all(c == 1 for _, c in channels)


def test_degree_triples():
    assert degree_of(merger_class(2, 3)) == degree_of(merger_class(2, 3)).__class__(1, 0, 1)
    m = degree_of(merger_class(2, 3))
    assert (m.word_drop, m.edge_count, m.weight) == (1, 0, 1)
    e = degree_of(edge_contraction_class(2, 2))
    assert (e.word_drop, e.edge_count, e.weight) == (1, 1, 2)
    l = degree_of(loop_contraction_class(2))
    assert (l.word_drop, l.edge_count, l.weight) == (0, 1, 1)


def test_ghost_euler_identity():
    # components - cycles = vertices - edges, exactly, on random classes
    for key in all_graph_classes(3, 3, 3, "c")[::7]:
        inv = ghost_invariants(key)
        assert inv["components"] - inv["cycles"] == inv["vertices"] - inv["edges"]
        d = degree_of(key)
        assert d.weight - d.word_drop == inv["edges"]


def test_weight_additive_under_product():
    a = edge_contraction_class(2, 2)
    b = loop_contraction_class(3)
    (ab, _), = graph_product(a, b)
    assert degree_of(ab).weight == degree_of(a).weight + degree_of(b).weight


def test_relations_hold():
    report = check_graph_relations(budget=30, seed=2)
    assert report.ok, report.render()


def test_coproduct_representative_independence():
    # enumerate edge subsets of a permuted labeled representative, push to
    # classes, and compare with the coproduct of the canonical class key
    import itertools as it

    from sweedler.graphs import _components

    rng = random.Random(21)
    for _ in range(12):
        sizes, edges, blocks = _random_structure(rng, rng.randint(2, 4))
        n = len(sizes)
        key = graph_class_key(sizes, edges, blocks, "c")
        perm = list(range(n))
        rng.shuffle(perm)
        p_sizes = [0] * n
        for old, new in enumerate(perm):
            p_sizes[new] = sizes[old]
        p_edges = [(min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges]
        terms = []
        for bits in range(1 << len(p_edges)):
            chosen = [p_edges[i] for i in range(len(p_edges)) if bits & (1 << i)]
            rest = [p_edges[i] for i in range(len(p_edges)) if not bits & (1 << i)]
            comps = _components(n, chosen)
            left = graph_class_key(p_sizes, chosen, comps, "c")
            tgt_index = {}
            tgt_sizes = []
            for gi, grp in enumerate(sorted(comps)):
                for c in grp:
                    tgt_index[c] = gi
                inside = sum(1 for a, b in chosen if a in grp and b in grp)
                tgt_sizes.append(sum(p_sizes[c] for c in grp) - 2 * inside)
            r_edges = [(tgt_index[a], tgt_index[b]) for a, b in rest]
            right = graph_class_key(
                tgt_sizes, r_edges, _components(len(tgt_sizes), r_edges), "c"
            )
            terms.append((left, right))
        assert TensorSum.of(terms) == graph_coproduct(key)


def test_graph_morphism_document():
    doc = {
        "corollas": [
            {"name": "u", "flags": ["a", "b"]},
            {"name": "v", "flags": ["c", "d"]},
        ],
        "edges": [["u.a", "v.c"]],
        "merge": [],
    }
    m = GraphMorphism.from_doc(doc)
    assert m.class_key("c") == edge_contraction_class(2, 2)
    doc_bad = {
        "corollas": [{"name": "u", "flags": ["a", "a"]}],
        "edges": [],
    }
    with pytest.raises(InputError):
        GraphMorphism.from_doc(doc_bad)


def test_merge_document():
    doc = {
        "corollas": [
            {"name": "u", "flags": ["a", "b"]},
            {"name": "v", "flags": ["c"]},
        ],
        "edges": [],
        "merge": [["u", "v"]],
    }
    m = GraphMorphism.from_doc(doc)
    assert m.class_key("n") == merger_class(2, 1)
    with pytest.raises(InputError):
        m.class_key("c")


def test_flag_capacity_enforced():
    with pytest.raises(InputError):
        graph_class_key((1,), ((0, 0),), ((0,),), "c")


def test_validate_graph_bialgebras(graphs_c33, graphs_n33):
    for B in (graphs_c33, graphs_n33):
        assert validate_coalgebra(B.coalgebra).ok
        assert validate_bialgebra(B, sample_budget=150, seed=4).ok


def test_graph_grouplikes_are_identity_classes(graphs_c33):
    gpl, sgpl = find_grouplikes(graphs_c33.coalgebra)
    assert gpl == sgpl
    for k in gpl:
        _, sizes, edges, blocks = k.payload
        assert not edges and all(len(b) == 1 for b in blocks)
    assert graph_unit_key("c") in gpl


def test_graph_pathlike(graphs_c33, graphs_n33):
    for B in (graphs_c33, graphs_n33):
        verdict = verify_pathlike(B.coalgebra)
        assert verdict.is_pathlike, verdict.render()


def test_strip_identity_corollas():
    k = graph_product(identity_class((2, 3), "c"), loop_contraction_class(2))
    (key, _), = k
    reduced, exps = strip_identity_corollas(key)
    assert reduced == loop_contraction_class(2)
    assert exps == {"q2": 1, "q3": 1}


def test_wt_homogeneous_coproduct(graphs_c33):
    C = graphs_c33.coalgebra
    for k in C.keys:
        w = C.grading(k)
        for (a, b), _ in C.delta(k):
            assert C.grading(a) + C.grading(b) == w

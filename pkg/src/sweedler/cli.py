"""Command-line front end.

Subcommands parse structured-text inputs (JSON documents or the tree/path
literals), dispatch to the engines, and print canonical renderings: terms
sorted by key encoding, byte-identical across runs.  Exit codes: 0 success,
1 mathematical obstruction (e.g. a grouplike without an inverse), 2 input or
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import (
    abelianized_quotient,
    brown_coaction,
    normalized_quotient,
    q_deform,
    validate_coaction,
    validate_coideal,
)
from .errors import InputError, MathError, SweedlerError
from .gallery import (
    Poset,
    Quiver,
    build_drinfeld_double,
    build_incidence_coalgebra,
    build_path_coalgebra,
    build_word_coalgebra,
    cyclic_group,
    interval_key,
    path_key,
    symmetric_group_3,
    vertex_key,
    word_key,
)
from .graphs import GraphMorphism, build_graph_bialgebra, check_graph_relations
from .inversion import antipode, invert_character
from .renorm import CharacterSpec, birkhoff, check_rota_baxter, pole_part_operator
from .specs import validate_bialgebra, validate_coalgebra
from .structure import analyze_structure, bivariate_filtration, verify_pathlike
from .trees import build_tree_bialgebra, parse_forest


def _load_doc(text: str) -> dict:
    if text.lstrip().startswith("{"):
        raw = text
    else:
        try:
            with open(text, "r", encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {text}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON document: {exc}") from exc


def _build_bialgebra(args):
    name = args.bialgebra
    trunc = args.truncation
    mode = "s" if args.mode == "symmetric" else "p"
    if name == "trees":
        return build_tree_bialgebra(trunc, trunc, mode)
    if name == "graphs":
        return build_graph_bialgebra(min(trunc, 4), trunc, max_flags=3, connected=True)
    if name == "graphs-nc":
        return build_graph_bialgebra(min(trunc, 4), trunc, max_flags=3, connected=False)
    if name == "double-z2":
        return build_drinfeld_double(cyclic_group(2))
    if name == "double-z3":
        return build_drinfeld_double(cyclic_group(3))
    if name == "double-s3":
        return build_drinfeld_double(symmetric_group_3())
    raise InputError(f"unknown bialgebra {name!r}")


def _maybe_quotient(B, args):
    kind = getattr(args, "quotient", None)
    if not kind:
        return B
    if kind == "normalized":
        return normalized_quotient(B).bialgebra
    return abelianized_quotient(B, kind).bialgebra


def _emit(lines, fmt: str):
    if fmt == "json":
        text = json.dumps({"lines": lines}, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    sys.stdout.buffer.write(text.encode("utf-8"))
    sys.stdout.buffer.flush()


def _cmd_coproduct(args) -> int:
    lines = []
    if args.tree is not None:
        mode = "s" if args.mode == "symmetric" else "p"
        key = parse_forest(args.tree, mode)
        from .trees import tree_coproduct

        lines.append(f"delta({key}) = {tree_coproduct(key).render()}")
    elif args.graph is not None:
        doc = _load_doc(args.graph)
        morphism = GraphMorphism.from_doc(doc)
        gmode = "n" if args.nonconnected else "c"
        key = morphism.class_key(gmode)
        from .graphs import graph_coproduct

        lines.append(f"delta({key}) = {graph_coproduct(key).render()}")
    elif args.word is not None:
        doc = _load_doc(args.word)
        try:
            key = word_key(doc["left"], tuple(doc["letters"]), doc["right"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad word document: {exc}") from exc
        from .gallery import goncharov_coproduct

        lines.append(f"delta({key}) = {goncharov_coproduct(key).render()}")
    elif args.quiver is not None:
        quiver = Quiver.from_doc(_load_doc(args.quiver))
        C = build_path_coalgebra(quiver, args.truncation)
        if args.path is None:
            raise InputError("--quiver needs --path EDGE.EDGE... or --path VERTEX")
        name = args.path.replace(" ", "")
        emap = quiver.edge_map()
        if name in quiver.vertices:
            key = vertex_key(name)
        else:
            edges = tuple(p for p in name.split(".") if p)
            if not edges or any(e not in emap for e in edges):
                raise InputError(f"unknown path literal {args.path!r}")
            key = path_key(edges)
        lines.append(f"delta({key}) = {C.delta(key).render()}")
    elif args.poset is not None:
        poset = Poset.from_doc(_load_doc(args.poset))
        C = build_incidence_coalgebra(poset)
        if args.interval is None:
            raise InputError("--poset needs --interval X,Y")
        x, _, y = args.interval.partition(",")
        key = interval_key(x.strip(), y.strip())
        lines.append(f"delta({key}) = {C.delta(key).render()}")
    else:
        raise InputError("coproduct needs one of --tree/--graph/--word/--quiver/--poset")
    _emit(lines, args.format)
    return 0


def _cmd_antipode(args) -> int:
    B = _build_bialgebra(args)
    B = _maybe_quotient(B, args)
    if args.qdeform:
        deformed = q_deform(B, laurent=args.laurent, exponent_window=1)
        B = deformed.bialgebra
    S = antipode(B, validate=not args.no_validate)
    lines = []
    for k in B.keys:
        if B.grading(k) > args.truncation:
            continue
        if args.key is not None and str(k) != args.key:
            continue
        lines.append(f"S({k}) = {S(k).render()}")
    _emit(lines, args.format)
    return 0


def _cmd_inverse(args) -> int:
    B = _build_bialgebra(args)
    B = _maybe_quotient(B, args)
    phi = CharacterSpec.from_doc(_load_doc(args.character))
    inv = invert_character(phi.as_conv_map(B), B)
    lines = []
    for k in B.keys:
        if B.grading(k) > args.truncation:
            continue
        lines.append(f"phi^-1({k}) = {inv.target.render(inv(k))}")
    _emit(lines, args.format)
    return 0


def _cmd_birkhoff(args) -> int:
    B = _build_bialgebra(args)
    quotient = normalized_quotient(B)
    phi = CharacterSpec.from_doc(_load_doc(args.character))
    pair = birkhoff(phi, quotient.bialgebra, pole_part_operator())
    lines = []
    for k in quotient.bialgebra.keys:
        if quotient.bialgebra.grading(k) > args.truncation:
            continue
        minus = pair.minus.target.render(pair.minus(k))
        plus = pair.plus.target.render(pair.plus(k))
        lines.append(f"{k} | {minus} | {plus}")
    _emit(lines, args.format)
    return 0


def _cmd_quotient(args) -> int:
    B = _build_bialgebra(args)
    if args.kind == "normalized":
        q = normalized_quotient(B)
    else:
        q = abelianized_quotient(B, args.kind)
    report = validate_coideal(q, seed=args.seed)
    lines = [report.render()]
    for k in B.keys:
        if B.grading(k) > args.truncation:
            continue
        nf = q.normal_form(k)
        if nf != k:
            lines.append(f"{k} -> {nf}")
    _emit(lines, args.format)
    return 0


def _cmd_qdeform(args) -> int:
    B = _build_bialgebra(args)
    deformed = q_deform(B, laurent=args.laurent, exponent_window=1)
    lines = []
    for k in B.keys:
        if B.grading(k) > args.truncation:
            continue
        lines.append(f"{k} -> {deformed.reduce_key(k)}")
    _emit(lines, args.format)
    return 0


def _cmd_coaction(args) -> int:
    B = _build_bialgebra(args)
    deformed = q_deform(B, laurent=True, exponent_window=1)
    coaction = brown_coaction(deformed)
    report = validate_coaction(coaction, max_degree=args.truncation)
    lines = [report.render()]
    for k in deformed.bialgebra.keys:
        if deformed.bialgebra.grading(k) > min(args.truncation, 2):
            continue
        base, exps = k.payload[1], k.payload[2]
        if exps:
            continue
        lines.append(f"coaction({k}) = {coaction(k).render()}")
    _emit(lines, args.format)
    return 0


def _build_coalgebra_for_analysis(args):
    if args.quiver is not None:
        return build_path_coalgebra(Quiver.from_doc(_load_doc(args.quiver)), args.truncation)
    if args.poset is not None:
        return build_incidence_coalgebra(Poset.from_doc(_load_doc(args.poset)))
    if args.words is not None:
        alphabet = tuple(args.words.split(","))
        return build_word_coalgebra(alphabet, args.truncation)
    if args.bialgebra is not None:
        return _build_bialgebra(args).coalgebra
    raise InputError("need one of --quiver/--poset/--words/--bialgebra")


def _cmd_filtration(args) -> int:
    C = _build_coalgebra_for_analysis(args)
    table = bivariate_filtration(C)
    lines = [f"universe: {len(C.keys)} keys"]
    for degree, count in sorted(table.histogram().items()):
        lines.append(f"degree {degree}: {count}")
    if not table.exhaustive:
        lines.append(f"not reached: {len(table.unreached)}")
    _emit(lines, args.format)
    return 0


def _cmd_structure(args) -> int:
    C = _build_coalgebra_for_analysis(args)
    report = analyze_structure(C)
    verdict = verify_pathlike(C)
    _emit([report.render(), verdict.render()], args.format)
    return 0


def _cmd_check(args) -> int:
    lines = []
    failures = 0

    def run(report):
        nonlocal failures
        lines.append(report.render().splitlines()[0])
        if not report.ok:
            failures += 1

    t = min(args.truncation, 6)
    suites = args.suite.split(",") if args.suite != "all" else [
        "coassoc", "bialgebra", "antipode", "relations", "rb", "birkhoff",
    ]
    if "coassoc" in suites:
        trees = build_tree_bialgebra(t, t, "s")
        run(validate_coalgebra(trees.coalgebra))
        graphs = build_graph_bialgebra(min(t, 3), min(t, 3), 3, connected=True)
        run(validate_coalgebra(graphs.coalgebra))
        words = build_word_coalgebra(("a", "b"), min(t, 4))
        run(validate_coalgebra(words))
    if "bialgebra" in suites:
        trees = build_tree_bialgebra(t, t, "s")
        run(validate_bialgebra(trees, exhaustive_degree=min(t, 4)))
        graphs = build_graph_bialgebra(min(t, 3), min(t, 3), 3, connected=True)
        run(validate_bialgebra(graphs, sample_budget=150, seed=args.seed))
    if "antipode" in suites:
        from .inversion import validate_antipode

        trees = build_tree_bialgebra(t, t, "s")
        quotient = normalized_quotient(trees).bialgebra
        run(validate_antipode(quotient, antipode(quotient, validate=False),
                              sample_budget=20, seed=args.seed))
    if "relations" in suites:
        run(check_graph_relations(budget=20, seed=args.seed))
    if "rb" in suites:
        run(check_rota_baxter(pole_part_operator(), samples=200, seed=args.seed))
    if "birkhoff" in suites:
        from .renorm import LAURENT, parse_laurent

        trees = build_tree_bialgebra(t, t, "s")
        quotient = normalized_quotient(trees).bialgebra
        phi = CharacterSpec(LAURENT, {"vertex": parse_laurent("z^-1")})
        pair = birkhoff(phi, quotient, pole_part_operator())
        run(pair.report)
    lines.append(f"suites failed: {failures}")
    _emit(lines, args.format)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sweedler",
        description="Exact engine for combinatorial co-, bi- and Hopf algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bialgebra=True):
        p.add_argument("--truncation", type=int, default=4)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--mode", choices=("planar", "symmetric"), default="symmetric")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if bialgebra:
            p.add_argument("--bialgebra", default="trees")

    p = sub.add_parser("coproduct", help="coproduct of one basis element")
    common(p, bialgebra=False)
    p.add_argument("--tree")
    p.add_argument("--graph")
    p.add_argument("--nonconnected", action="store_true")
    p.add_argument("--word")
    p.add_argument("--quiver")
    p.add_argument("--path")
    p.add_argument("--poset")
    p.add_argument("--interval")
    p.set_defaults(fn=_cmd_coproduct)

    p = sub.add_parser("antipode", help="antipode table")
    common(p)
    p.add_argument("--quotient", choices=("normalized", "commutator", "central"))
    p.add_argument("--qdeform", action="store_true")
    p.add_argument("--laurent", action="store_true")
    p.add_argument("--key")
    p.add_argument("--no-validate", action="store_true")
    p.set_defaults(fn=_cmd_antipode)

    p = sub.add_parser("inverse", help="convolution inverse of a character")
    common(p)
    p.add_argument("--character", required=True)
    p.add_argument("--quotient", choices=("normalized", "commutator", "central"))
    p.set_defaults(fn=_cmd_inverse)

    p = sub.add_parser("birkhoff", help="factorization table (key | minus | plus)")
    common(p)
    p.add_argument("--character", required=True)
    p.set_defaults(fn=_cmd_birkhoff)

    p = sub.add_parser("quotient", help="normal-form table of a quotient")
    common(p)
    p.add_argument("--kind", choices=("normalized", "commutator", "central"),
                   required=True)
    p.set_defaults(fn=_cmd_quotient)

    p = sub.add_parser("qdeform", help="deformation classes of basis keys")
    common(p)
    p.add_argument("--laurent", action="store_true")
    p.set_defaults(fn=_cmd_qdeform)

    p = sub.add_parser("coaction", help="coaction table on the deformed quotient")
    common(p)
    p.set_defaults(fn=_cmd_coaction)

    p = sub.add_parser("filtration", help="filtration degree histogram")
    common(p, bialgebra=False)
    p.add_argument("--bialgebra")
    p.add_argument("--quiver")
    p.add_argument("--poset")
    p.add_argument("--words")
    p.set_defaults(fn=_cmd_filtration)

    p = sub.add_parser("structure", help="grouplike/skew-primitive report")
    common(p, bialgebra=False)
    p.add_argument("--bialgebra")
    p.add_argument("--quiver")
    p.add_argument("--poset")
    p.add_argument("--words")
    p.set_defaults(fn=_cmd_structure)

    p = sub.add_parser("check", help="run validation suites")
    common(p, bialgebra=False)
    p.add_argument("--suite", default="all")
    p.set_defaults(fn=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except MathError as exc:
        sys.stderr.write(f"mathematical obstruction: {exc}\n")
        return 1
    except SweedlerError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

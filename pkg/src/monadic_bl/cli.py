"""Command-line interface.

Exit codes: 0 success (or formula valid), 1 a checked property failed or a
countermodel was found, 2 bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import serialize
from .algebra import FiniteBLAlgebra, check_bl_axioms, ordinal_sum
from .chains import IndexChainSpec, build_chain, decompose_chain
from .corpus import monadic_family
from .filters import (
    all_monadic_filters,
    check_lattice_isomorphisms,
    is_simple,
    is_subdirectly_irreducible,
    quotient,
)
from .logic.formula import parse_formula
from .logic.semantics import eval_algebraic, eval_kripke_worlds
from .logic.validity import axiom_suite, check_validity
from .monadic import (
    DEFAULT_BRUTE_BOUND,
    MonadicBLAlgebra,
    brute_force_monadic_structures,
    check_derived_identities,
    check_mbl_axioms,
    enumerate_monadic_structures,
)
from .report import MBLError

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(args, monadic: bool | None = None):
    """Algebra from --algebra or --ordinal-sum/--fixed.

    ``monadic=True`` demands quantifiers, ``False`` strips them.
    """
    if args.algebra and args.ordinal_sum:
        raise UsageError("give either --algebra or --ordinal-sum, not both")
    if args.algebra:
        A = serialize.load_algebra(args.algebra)
    elif args.ordinal_sum:
        blocks = serialize.parse_int_list(args.ordinal_sum, "--ordinal-sum")
        if getattr(args, "fixed", None):
            A = build_chain(IndexChainSpec(tuple(blocks), frozenset(serialize.parse_int_list(args.fixed, "--fixed"))))
        else:
            A = ordinal_sum(blocks)
    else:
        raise UsageError("an algebra is required (--algebra FILE or --ordinal-sum k1,k2,...)")
    if monadic is True and not isinstance(A, MonadicBLAlgebra):
        raise UsageError("this command needs quantifiers (forall/exists in the JSON, or --fixed)")
    if monadic is False and isinstance(A, MonadicBLAlgebra):
        A = A.base
    return A


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _fixed_or_image(A: FiniteBLAlgebra, q) -> str:
    if A.is_chain and A.size > 1:
        return "S=" + _set(sorted(decompose_chain(MonadicBLAlgebra(A, q)).spec.fixed))
    return "image=" + _set(A.label(e) for e in sorted(q.image))


def _set(items) -> str:
    return "{" + ",".join(map(str, items)) + "}"


# ---------------------------------------------------------------------------
# verbs


def cmd_build(args) -> int:
    A = _load(args)
    if args.dot:
        Path(args.dot).write_text(serialize.hasse_dot(A))
    print(serialize.dump_json(serialize.algebra_to_dict(A)))
    return OK


def cmd_verify(args) -> int:
    A = _load(args)
    if isinstance(A, MonadicBLAlgebra):
        reps = [check_mbl_axioms(A), check_derived_identities(A)]
    else:
        reps = [check_bl_axioms(A)]
    ok = all(r.ok for r in reps)
    if args.json:
        print(json.dumps([r.to_dict() for r in reps], indent=2))
    else:
        print("; ".join(r.summary() for r in reps))
        for r in reps:
            if not r.ok:
                print(str(r).split("\n", 1)[1])
    return OK if ok else FAIL


def _list_structures(args, found, A) -> int:
    lines = [f"{len(found)} monadic structure{'s' if len(found) != 1 else ''}"]
    data = []
    for q in found:
        tag = _fixed_or_image(A, q)
        lines.append(
            f"  {tag}  forall=[{', '.join(A.label(e) for e in q.forall)}]"
            f"  exists=[{', '.join(A.label(e) for e in q.exists)}]"
        )
        data.append({"forall": list(q.forall), "exists": list(q.exists), "tag": tag})
    _emit(args, "\n".join(lines), {"count": len(found), "structures": data})
    return OK


def cmd_enumerate(args) -> int:
    A = _load(args, monadic=False)
    return _list_structures(args, enumerate_monadic_structures(A), A)


def cmd_brute(args) -> int:
    A = _load(args, monadic=False)
    bound = args.max_size or DEFAULT_BRUTE_BOUND
    found = brute_force_monadic_structures(A, bound=bound, jobs=args.jobs)
    return _list_structures(args, found, A)


def _elements(A: FiniteBLAlgebra, text: str) -> list[int]:
    return [A.element(t.strip()) for t in text.split(",") if t.strip()]


def cmd_quotient(args) -> int:
    M = _load(args)
    if not args.filter:
        raise UsageError("quotient needs --filter with the filter's elements")
    base = M.base if isinstance(M, MonadicBLAlgebra) else M
    Q = quotient(M, _elements(base, args.filter))
    rep = check_mbl_axioms(Q) if isinstance(Q, MonadicBLAlgebra) else check_bl_axioms(Q)
    if args.json:
        print(json.dumps({"quotient": serialize.algebra_to_dict(Q), "axioms": rep.to_dict()}, indent=2))
    else:
        qb = Q.base if isinstance(Q, MonadicBLAlgebra) else Q
        print(f"quotient has {qb.size} element(s): {' '.join(qb.names)}")
        print(rep.summary())
    return OK if rep.ok else FAIL


def cmd_filters(args) -> int:
    M = _load(args, monadic=True)
    fs = all_monadic_filters(M)
    iso = check_lattice_isomorphisms(M)
    si, simple = is_subdirectly_irreducible(M), is_simple(M)
    if args.dot:
        Path(args.dot).write_text(serialize.lattice_dot(fs, M.size, "monadic filters"))
    lines = [f"{len(fs)} monadic filter(s)"]
    lines += ["  " + _set(M.label(e) for e in sorted(F.elements)) for F in fs]
    lines.append(str(iso))
    lines.append(f"subdirectly irreducible: {si}; simple: {simple}")
    data = {
        "filters": [sorted(F.elements) for F in fs],
        "isomorphisms": iso.to_dict(),
        "subdirectly_irreducible": si,
        "simple": simple,
    }
    _emit(args, "\n".join(lines), data)
    return OK if iso.ok else FAIL


def cmd_decompose(args) -> int:
    M = _load(args, monadic=True)
    d = decompose_chain(M)
    text = (
        f"blocks={list(d.spec.blocks)} fixed={_set(sorted(d.spec.fixed))}\n"
        f"psi={list(d.psi)}\n"
        "classes: " + " < ".join(_set(M.label(e) for e in C) for C in d.classes)
    )
    _emit(args, text, d.to_dict())
    return OK


def _parse_assignment(A: FiniteBLAlgebra, text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"assignment {part!r} is not of the form var=element")
        k, v = part.split("=", 1)
        v = v.strip()
        out[k.strip()] = A.element(int(v) if v.isdigit() and v not in A.names else v)
    return out


def cmd_eval(args) -> int:
    if not args.formula:
        raise UsageError("eval needs --formula")
    f = parse_formula(args.formula)
    if args.kripke:
        K = serialize.kripke_from_dict(serialize.load_json(args.kripke), Path(args.kripke).parent)
        vals = eval_kripke_worlds(K, f)
        labels = [K.chain.label(v) for v in vals]
        _emit(args, "values by world: " + " ".join(labels), {"formula": str(f), "values": labels})
        return OK if all(v == K.chain.top for v in vals) else FAIL
    M = _load(args, monadic=True)
    if args.assign:
        v = _parse_assignment(M.base, args.assign)
        val = eval_algebraic(M, f, v)
        _emit(args, M.label(val), {"formula": str(f), "value": M.label(val)})
        return OK
    res = check_validity(f, [M])
    _emit(args, res.describe(), res.to_dict())
    return OK if res.valid else FAIL


def _describe_algebra(M: MonadicBLAlgebra) -> list[str]:
    B = M.base
    return [
        "elements: " + " ".join(B.names),
        "forall:   " + " ".join(B.label(e) for e in M.forall),
        "exists:   " + " ".join(B.label(e) for e in M.exists),
    ]


def cmd_countermodel(args) -> int:
    if not args.formula:
        raise UsageError("countermodel needs --formula")
    f = parse_formula(args.formula)
    if args.algebra or args.ordinal_sum:
        family = [("given", _load(args, monadic=True))]
    else:
        size = args.max_size or 4
        family = [(m.name, m.algebra) for m in monadic_family(size)]
    res = check_validity(f, [M for _, M in family], jobs=args.jobs)
    if res.valid:
        _emit(args, f"no countermodel: {res.describe()}", res.to_dict())
        return OK
    name = family[res.algebra_index][0]
    M = res.algebra
    lines = [f"countermodel: {name} (size {M.size})", *_describe_algebra(M)]
    lines += [f"v({k}) = {M.label(v)}" for k, v in res.assignment.items()]
    lines.append(f"value: {M.label(res.value)}")
    data = res.to_dict()
    data["algebra_name"] = name
    data["algebra"] = serialize.algebra_to_dict(M)
    _emit(args, "\n".join(lines), data)
    return FAIL


def cmd_axioms(args) -> int:
    if args.algebra or args.ordinal_sum:
        family = [_load(args, monadic=True)]
    else:
        family = [m.algebra for m in monadic_family(args.max_size or 3)]
    rep = axiom_suite(family)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=2))
    else:
        print(f"{rep.summary()} over {len(family)} algebra(s), {rep.info['instances']} instances")
        if not rep.ok:
            print(str(rep).split("\n", 1)[1])
    return OK if rep.ok else FAIL


def cmd_export(args) -> int:
    A = _load(args)
    if args.dot:
        Path(args.dot).write_text(serialize.hasse_dot(A))
    if args.json or not args.dot:
        print(serialize.dump_json(serialize.algebra_to_dict(A)))
    return OK


VERBS = {
    "build": (cmd_build, "build an algebra and print it as JSON"),
    "verify": (cmd_verify, "check the axioms (and derived identities if monadic)"),
    "enumerate": (cmd_enumerate, "list all monadic structures via subalgebras"),
    "brute": (cmd_brute, "list all monadic structures by exhaustive search"),
    "quotient": (cmd_quotient, "quotient by a (monadic) filter"),
    "filters": (cmd_filters, "monadic filters, lattice isomorphisms, irreducibility"),
    "decompose": (cmd_decompose, "decompose a monadic chain into blocks and fixed indices"),
    "eval": (cmd_eval, "evaluate a formula in an algebra or a Kripke model"),
    "countermodel": (cmd_countermodel, "search small algebras for a countermodel"),
    "axioms": (cmd_axioms, "check all bounded modal axiom instances"),
    "export": (cmd_export, "write the Hasse diagram as DOT and/or the algebra as JSON"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", metavar="FILE", help="algebra JSON file")
    common.add_argument("--ordinal-sum", metavar="K1,K2,...", help="ordinal sum of MV-chain sizes")
    common.add_argument("--fixed", metavar="I,J,...", help="fixed block indices (with --ordinal-sum)")
    common.add_argument("--formula", metavar="STR", help="formula in ASCII syntax")
    common.add_argument("--max-size", type=int, metavar="N", help="size bound for searches")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads")
    common.add_argument("--dot", metavar="FILE", help="write a DOT diagram")
    common.add_argument("--filter", metavar="E1,E2,...", help="filter elements (quotient)")
    common.add_argument("--assign", metavar="p=a,q=b", help="variable assignment (eval)")
    common.add_argument("--kripke", metavar="FILE", help="Kripke model JSON (eval)")

    parser = argparse.ArgumentParser(prog="monadic-bl", description="Finite monadic BL-algebra workbench.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb, (fn, helptext) in VERBS.items():
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.set_defaults(func=fn)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (MBLError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

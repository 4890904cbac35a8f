"""Command-line interface: build, enum, classify, verify.

All commands are deterministic; identical inputs and budgets produce
byte-identical structured output.  Exit code 0 iff every check passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .poset import Poset, PosetError, all_posets, load_poset, reverse, j_lattice, lattice_isomorphic
from .relalg import product_expand
from .essential import (EssentialAlgebra, build_R_leq, canonical_generators,
                        clone_generators, componentwise_nand,
                        essentiality_check, recover_order)
from .nbhd import congruences, enumerate_neighbourhoods, m_of
from .classify import enumerate_cminimal, nonindexed_isomorphic, verify_theorems
from . import oracle
from .poset import birkhoff_roundtrip


def _read_poset(path: str) -> Poset:
    with open(path) as fh:
        text = fh.read()
    try:
        return load_poset(text)
    except (PosetError, KeyError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: invalid poset file {path}: {exc}")


def _emit(doc: dict, fmt: str, lines: list) -> None:
    if fmt == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def cmd_build(args) -> int:
    P = _read_poset(args.poset)
    rels = build_R_leq(P, 2)
    es, diag = canonical_generators(P)
    rep = essentiality_check(P)
    doc = {
        "command": "build",
        "config": {"poset": args.poset, "format": args.format,
                   "threads": args.threads},
        "n": P.n,
        "pairs": P.strict_pairs(),
        "R_leq_2": [json.loads(r.to_json()) for r in rels],
        "generators": {"e": [json.loads(e.to_json()) for e in es],
                       "d": json.loads(diag.to_json())},
        "nand": json.loads(componentwise_nand(P).to_json()),
        "essentiality_pass": rep["pass"],
    }
    lines = [f"poset: n={P.n} pairs={P.strict_pairs()}",
             f"R_leq,2: {len(rels)} relations"]
    lines += [f"  {r.key()}" for r in rels]
    lines += [f"essentiality: {'pass' if rep['pass'] else 'FAIL'}"]
    _emit(doc, args.format, lines)
    return 0 if rep["pass"] else 1


def cmd_enum(args) -> int:
    P = _read_poset(args.poset)
    if args.kind == "neighbourhoods":
        nb = list(enumerate_neighbourhoods(P, args.l, budget=args.budget_tuples))
        doc = {"command": "enum", "kind": "neighbourhoods",
               "config": {"poset": args.poset, "l": args.l,
                          "format": args.format, "threads": args.threads},
               "count": len(nb),
               "neighbourhoods": [n.tuples() for n in nb]}
        lines = [f"neighbourhoods of E_P^[{args.l}] (n={P.n}): {len(nb)}"]
        lines += [f"  {n.tuples()}" for n in nb]
        _emit(doc, args.format, lines)
        return 0
    cat = enumerate_cminimal(P, budget_n=args.bound)
    doc = {"command": "enum", "kind": "cminimal",
           "config": {"poset": args.poset, "format": args.format,
                      "threads": args.threads},
           "classes": [{"representative": r.tuples(),
                        "cardinality": len(r.elements),
                        "members": len(cat.members[ci]),
                        "is_mp_class": ci == cat.mp_class}
                       for ci, r in enumerate(cat.representatives)]}
    lines = [f"c-minimal classes of type P (n={P.n}): "
             f"{len(cat.representatives)}"]
    for ci, r in enumerate(cat.representatives):
        mark = " [M(P)]" if ci == cat.mp_class else ""
        lines.append(f"  class {ci}: |A|={len(r.elements)} "
                     f"rep={r.tuples()}{mark}")
    _emit(doc, args.format, lines)
    return 0


def cmd_classify(args) -> int:
    args.kind = "cminimal"
    return cmd_enum(args)


def _verify_bijection(bound: int) -> list:
    fails = []
    for n in range(bound + 1):
        for P in all_posets(n):
            if recover_order(build_R_leq(P, 2), P.n).leq != P.leq:
                fails.append({"n": n, "pairs": P.strict_pairs()})
    return fails


def _verify_birkhoff(bound: int) -> list:
    fails = []
    for n in range(bound + 1):
        for P in all_posets(n):
            w1, w2 = birkhoff_roundtrip(P)
            if w1 is None or w2 is None:
                fails.append({"n": n, "pairs": P.strict_pairs()})
    return fails


def _verify_congruence(bound: int) -> list:
    fails = []
    for n in range(bound + 1):
        for P in all_posets(n):
            con = congruences(EssentialAlgebra(P, 1))
            target = j_lattice(reverse(P))
            if lattice_isomorphic(con.lattice, target) is None:
                fails.append({"n": n, "pairs": P.strict_pairs()})
    return fails


def _verify_theorems(bound: int) -> list:
    fails = []
    for n in range(bound + 1):
        for P in all_posets(n):
            rep = verify_theorems(P)
            if not rep["pass"]:
                fails.append({"n": n, "pairs": P.strict_pairs(),
                              "sizes": rep["class_sizes"]})
    return fails


def _verify_oracle(bound: int) -> list:
    fails = []
    for n in range(min(bound, 2) + 1):
        for P in all_posets(n):
            gens = [g.as_optable() for g in clone_generators(P)]
            d = 2 ** P.n
            dense = oracle.brute_inv(gens, 2, d)
            expected = sorted(product_expand(r, 1).codes
                              for r in build_R_leq(P, 2))
            got = sorted(r.codes for r in dense)
            if got != expected:
                fails.append({"n": n, "pairs": P.strict_pairs()})
    return fails


def cmd_verify(args) -> int:
    scopes = {
        "bijection": _verify_bijection,
        "birkhoff": _verify_birkhoff,
        "congruence": _verify_congruence,
        "theorems": _verify_theorems,
        "oracle-crosscheck": _verify_oracle,
    }
    fails = scopes[args.scope](args.bound)
    doc = {"command": "verify", "scope": args.scope,
           "config": {"bound": args.bound, "format": args.format,
                      "threads": args.threads},
           "pass": not fails, "failures": fails}
    lines = [f"verify {args.scope} (n <= {args.bound}): "
             f"{'pass' if not fails else 'FAIL'}"]
    lines += [f"  failure: {f}" for f in fails]
    _emit(doc, args.format, lines)
    return 0 if not fails else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="essalg",
        description="Essential algebras of finite posets: construction, "
                    "neighbourhood enumeration, c-minimal classification, "
                    "and brute-force theorem verification.")
    ap.add_argument("--format", choices=["text", "structured"], default="text")
    ap.add_argument("--threads", type=int, default=1,
                    help="accepted for configuration echo; execution is "
                         "sequential and output is thread-count independent")
    ap.add_argument("--budget-tuples", type=int, default=1 << 20)
    sub = ap.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct E_P and verify essentiality")
    p_build.add_argument("--poset", required=True)
    p_build.set_defaults(func=cmd_build)

    p_enum = sub.add_parser("enum", help="enumerate neighbourhoods or classes")
    p_enum.add_argument("kind", choices=["neighbourhoods", "cminimal"])
    p_enum.add_argument("--poset", required=True)
    p_enum.add_argument("--l", type=int, default=1)
    p_enum.add_argument("--bound", type=int, default=5)
    p_enum.set_defaults(func=cmd_enum)

    p_cls = sub.add_parser("classify", help="c-minimal class catalogue")
    p_cls.add_argument("--poset", required=True)
    p_cls.add_argument("--l", type=int, default=1)
    p_cls.add_argument("--bound", type=int, default=5)
    p_cls.set_defaults(func=cmd_classify)

    p_ver = sub.add_parser("verify", help="batch theorem verification")
    p_ver.add_argument("scope", choices=["bijection", "birkhoff", "congruence",
                                         "theorems", "oracle-crosscheck"])
    p_ver.add_argument("--bound", type=int, default=4)
    p_ver.set_defaults(func=cmd_verify)

    args = ap.parse_args(argv)
    if args.threads < 1 or args.budget_tuples < 1:
        ap.error("budgets and thread count must be positive")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

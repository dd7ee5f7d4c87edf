"""Command-line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 success (including Unverified/Exhausted/Overflow results, which
are reported as data), 1 Refuted under ``--require-verified``, 2 invalid
input, 3 budget exhaustion under ``--require-verified``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .classify import FULL, PURE, BraidGroupId, classify, table
from .errors import (
    BudgetTooLarge,
    ClosedSurfaceUnsupported,
    Exhausted,
    InvalidParams,
    NonOrientableUnsupported,
    NotHomomorphism,
    NotSquare,
    NotSupported,
    Overflow,
    TooLarge,
)
from .families import SurfaceSpec, braid_presentation, surface_group
from .goldberg import (
    REFUTED,
    VERIFIED,
    goldberg_quotient,
    strand_order,
    survivors_census,
    verify_goldberg,
)
from .presentations import Presentation, abelian_invariants
from .rewrite import Budget, kb_complete
from .smith import IntMatrix
from .todd_coxeter import to_finite_group, todd_coxeter
from .twisted import (
    FiniteEndo,
    FiniteGroup,
    FreeEndo,
    abelianization_certificate,
    bounded_census_free,
    min_reidemeister_finite,
    reidemeister_abelian,
    reidemeister_finite,
    reidemeister_finite_burnside,
    twisted_classes_finite,
)
from .words import parse_symbol, parse_word

EXIT_OK, EXIT_REFUTED, EXIT_INVALID, EXIT_EXHAUSTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _surface(text: str) -> SurfaceSpec:
    return SurfaceSpec.parse(text)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from None


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None


def _budget(args) -> Budget:
    return Budget(args.kb_max_rules, args.kb_max_length, args.kb_max_steps)


# ---------------------------------------------------------------------------
# commands


def cmd_present(args):
    s = _surface(args.surface)
    if args.pi1:
        return surface_group(s).to_json(), EXIT_OK
    if args.quotient:
        return goldberg_quotient(s.family, s.g, s.p, args.strands).to_json(), EXIT_OK
    return braid_presentation(s.family, s.g, s.p, args.strands).to_json(), EXIT_OK


def cmd_goldberg_verify(args):
    s = _surface(args.surface)
    cert = verify_goldberg(s.family, s.g, s.p, args.strands, _budget(args))
    code = EXIT_OK
    if args.require_verified and cert.status != VERIFIED:
        code = EXIT_REFUTED if cert.status == REFUTED else EXIT_EXHAUSTED
    return cert.to_json(), code


def cmd_census(args):
    s = _surface(args.surface)
    q = goldberg_quotient(s.family, s.g, s.p, args.strands)
    return {"quotient": q.to_json(), **survivors_census(q).to_json()}, EXIT_OK


def cmd_classify(args):
    s = _surface(args.surface)
    return classify(BraidGroupId(s, args.strands, args.flavor)).to_json(), EXIT_OK


def cmd_table(args):
    return table(args.max_g, args.max_p, args.max_n), EXIT_OK


def cmd_abelianize(args):
    p = Presentation.from_json(_read_json(args.input))
    rank, torsion = abelian_invariants(p)
    return {"free_rank": rank, "torsion": torsion}, EXIT_OK


def cmd_kb_complete(args):
    p = Presentation.from_json(_read_json(args.input))
    if args.order == "strand":
        order = strand_order(p.generators)
    elif args.order:
        order = [parse_symbol(t) for t in args.order.split()]
    else:
        order = None
    try:
        rs = kb_complete(p.relators, _budget(args), generators=p.generators, order=order)
    except Exhausted as exc:
        code = EXIT_EXHAUSTED if args.require_verified else EXIT_OK
        return {"status": "Exhausted", "dimension": exc.dimension, "detail": str(exc)}, code
    return {"status": "Confluent", **rs.to_json()}, EXIT_OK


def cmd_enumerate(args):
    p = Presentation.from_json(_read_json(args.input))
    try:
        t = todd_coxeter(p, args.max_cosets)
    except Overflow as exc:
        code = EXIT_EXHAUSTED if args.require_verified else EXIT_OK
        return {"status": "Overflow", "max_cosets": exc.max_cosets}, code
    out = {"status": "Closed", "order": len(t), "coset_table": t.to_json()}
    if args.group:
        out["group"] = to_finite_group(t).to_json()
    return out, EXIT_OK


def _json_file_or_text(text: str, what: str):
    if os.path.exists(text):
        return _read_json(text)
    return _json_arg(text, what)


def cmd_reidemeister(args):
    if args.matrix is not None:
        rows = _json_arg(args.matrix, "--matrix")
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise UsageError("--matrix must be a non-empty rectangular list of rows")
        M = IntMatrix.from_rows(rows, len(rows[0]))
        return {"R": reidemeister_abelian(M).to_json(), "method": "abelian"}, EXIT_OK
    if args.presentation is not None:
        if args.images is None:
            raise UsageError("--presentation needs --images")
        p = Presentation.from_json(_read_json(args.presentation))
        raw = _json_file_or_text(args.images, "--images")
        if not isinstance(raw, dict):
            raise UsageError("--images must map generator names to words")
        images = {parse_symbol(k): parse_word(v) for k, v in raw.items()}
        cert = abelianization_certificate(p, images)
        return {"R": cert.bound.to_json(), "method": "certificate", **cert.to_json()}, EXIT_OK
    if args.free is not None:
        gens, images = [], []
        for part in args.free.split(";"):
            lhs, sep, rhs = part.partition("=")
            if not sep:
                raise UsageError("--free expects 'x=WORD; y=WORD'")
            gens.append(parse_symbol(lhs.strip()))
            images.append(parse_word(rhs))
        census = bounded_census_free(FreeEndo(tuple(gens), tuple(images)), args.max_len, args.witness_len)
        return {"method": "census", "max_len": args.max_len, "witness_len": args.witness_len,
                "classes_upper_bound": census.classes, "words": census.words,
                "witnesses": census.witnesses}, EXIT_OK
    if args.group is None:
        raise UsageError("give one of --matrix, --presentation, --free or --group")
    G = FiniteGroup.from_json(_read_json(args.group))
    if args.endo is None:
        r, f = min_reidemeister_finite(G)
        return {"R": r.to_json(), "method": "orbit", "minimised_over": "Aut",
                "order": G.order, "automorphism": f.to_json()}, EXIT_OK
    f = FiniteEndo(G, _json_file_or_text(args.endo, "--endo"))
    out = {"R": reidemeister_finite(G, f).to_json(), "method": "orbit", "order": G.order,
           "R_burnside": reidemeister_finite_burnside(G, f).to_json()}
    if args.classes:
        out["classes"] = twisted_classes_finite(G, f)
    return out, EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps the later
    # parser from resetting a value given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-indent", type=int, default=argparse.SUPPRESS,
                        help="indent JSON output (default: compact)")

    kb = argparse.ArgumentParser(add_help=False)
    d = Budget()
    kb.add_argument("--kb-max-rules", type=int, default=d.max_rules)
    kb.add_argument("--kb-max-length", type=int, default=d.max_rule_length)
    kb.add_argument("--kb-max-steps", type=int, default=d.max_steps)

    ap = argparse.ArgumentParser(prog="surfbraid", parents=[common],
                                 description="Surface braid group presentations and twisted conjugacy.")
    sub = ap.add_subparsers(dest="command", required=True)

    def surface_cmd(name, help_text, parents=()):
        sp = sub.add_parser(name, parents=[common, *parents], help=help_text)
        sp.add_argument("--surface", required=True, help="sphere:p, o:g,p or n:g,p")
        sp.add_argument("--strands", type=int, required=True)
        return sp

    sp = surface_cmd("present", "print a pure braid group presentation")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--quotient", action="store_true", help="kill the Artin generators")
    grp.add_argument("--pi1", action="store_true", help="fundamental group of the surface")
    sp.set_defaults(func=cmd_present)

    sp = surface_cmd("goldberg-verify", "certify the quotient is a direct power of pi_1", [kb])
    sp.add_argument("--require-verified", action="store_true")
    sp.set_defaults(func=cmd_goldberg_verify)

    sp = surface_cmd("census", "classify the relators surviving in the quotient")
    sp.set_defaults(func=cmd_census)

    sp = surface_cmd("classify", "R-infinity status of P_n or B_n")
    sp.add_argument("--flavor", choices=[PURE, FULL], default=PURE)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("table", parents=[common], help="verdict matrix over a grid")
    sp.add_argument("--max-g", type=int, default=2)
    sp.add_argument("--max-p", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=6)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("abelianize", parents=[common], help="abelian invariants of a presentation")
    sp.add_argument("--input", default="-", help="presentation JSON file (default stdin)")
    sp.set_defaults(func=cmd_abelianize)

    sp = sub.add_parser("kb-complete", parents=[common, kb], help="shortlex Knuth-Bendix completion")
    sp.add_argument("--input", default="-")
    sp.add_argument("--order", help="shortlex generator order: 'strand' (grouped by strand) "
                    "or an explicit space-separated list; default natural order")
    sp.add_argument("--require-verified", action="store_true")
    sp.set_defaults(func=cmd_kb_complete)

    sp = sub.add_parser("enumerate", parents=[common], help="Todd-Coxeter coset enumeration")
    sp.add_argument("--input", default="-")
    sp.add_argument("--max-cosets", type=int, default=100_000)
    sp.add_argument("--group", action="store_true", help="include the multiplication table")
    sp.add_argument("--require-verified", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("reidemeister", parents=[common], help="Reidemeister numbers")
    sp.add_argument("--matrix", help="integer matrix (JSON) of an endomorphism of Z^k")
    sp.add_argument("--group", help="finite group JSON file")
    sp.add_argument("--endo", help="images of every element: JSON list or a file holding one; "
                    "default: minimise over Aut")
    sp.add_argument("--presentation", help="presentation JSON file; bound R from the abelianization")
    sp.add_argument("--images", help="generator images for --presentation, e.g. "
                    "'{\"x\": \"y\", \"y\": \"y^-1 x y\"}' (JSON or a file)")
    sp.add_argument("--classes", action="store_true", help="list the twisted classes")
    sp.add_argument("--free", help="free endomorphism, e.g. 'x=y; y=y^-1 x y'")
    sp.add_argument("--max-len", type=int, default=4)
    sp.add_argument("--witness-len", type=int, default=2)
    sp.set_defaults(func=cmd_reidemeister)
    return ap


INVALID = (UsageError, InvalidParams, ClosedSurfaceUnsupported, NonOrientableUnsupported,
           NotSquare, NotSupported, NotHomomorphism, BudgetTooLarge, TooLarge, ValueError,
           KeyError)


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        out, code = args.func(args)
    except INVALID as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"surfbraid {args.command}: {msg}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(out, indent=getattr(args, "json_indent", None)))
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 on success, 1 for malformed input, 2 when a mathematical check
fails (rank mismatch, failed certificate, flagged report).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .amalgam import AmalgamError, oracle_agreement, torsion_classes
from .characters import CharacterError, character_table, verify_table
from .document import DocumentError, WorkspaceDoc
from .groups import GroupError
from .kbook import GLRankInput, KBookError, gl_rank_check, group_n_p, k_ranks
from .presentations import (PresentationError, build_model, certify_isomorphism,
                            search_degree_one)
from .repring import RepRingError, check_ring, rf_ring, rf_ring_p

INPUT_ERRORS = (DocumentError, GroupError, AmalgamError, PresentationError, KBookError)
MATH_ERRORS = (RepRingError, CharacterError)


class CheckFailed(Exception):
    code = "check.failed"

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


def _primes_of(orders):
    ps = set()
    for o in orders:
        q = 2
        while o > 1:
            while o % q == 0:
                ps.add(q)
                o //= q
            q += 1
    return sorted(ps)


def _load(args):
    return WorkspaceDoc.load(args.document, cap=args.cap)


def cmd_classes(args):
    doc = _load(args)
    A = doc.amalgam(args.amalgam)
    T = torsion_classes(A)
    include = not args.exclude_identity_np
    out = T.to_json()
    out["n_p"] = {str(p): sum(1 for o in T.orders if _is_pow(o, p) and (include or o > 1))
                  for p in _primes_of(T.orders)}
    out["identity_included"] = include
    summary = f"{A.name}: {len(T)} torsion classes, orders {sorted(T.orders)}"
    return out, summary


def _is_pow(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def cmd_ring(args):
    doc = _load(args)
    A = doc.amalgam(args.amalgam)
    R = rf_ring_p(A, args.prime) if args.prime else rf_ring(A)
    out = R.to_json()
    problems = check_ring(R)
    out["checks"] = problems
    tag = f" at p={args.prime}" if args.prime else ""
    if problems:
        raise CheckFailed(f"ring of {A.name}{tag} failed structural checks", out)
    return out, f"{A.name}{tag}: ring of rank {R.rank}, unit {list(R.unit)}"


def _parse_map(items, A):
    T1, T2 = character_table(A.left), character_table(A.right)
    images = {}
    for item in items:
        if "=" not in item:
            raise DocumentError(f"--map expects gen=spec, got {item!r}")
        gen, spec = item.split("=", 1)
        spec = spec.strip()
        if spec.startswith("["):
            images[gen.strip()] = tuple(json.loads(spec))
        else:
            try:
                i, j = (int(s) for s in spec.split(","))
                images[gen.strip()] = (T1.character(i), T2.character(j))
            except (ValueError, IndexError):
                raise DocumentError(f"bad --map image {spec!r}: use i,j or [coords]") from None
    return images


def cmd_verify(args):
    doc = _load(args)
    P, meta = doc.presentation(args.presentation)
    M = build_model(P)
    out = {"presentation": args.presentation, "parsed": P.to_json(), "model": M.to_json()}
    if not args.against:
        out["verification"] = "presentation-only"
        expected = meta.get("expected_rank")
        out["expected_rank"] = expected
        out["rank_matches"] = None if expected is None else M.rank == expected
        if meta.get("note"):
            out["note"] = meta["note"]
        summary = (f"{args.presentation}: consistent {P.kind} model of rank {M.rank} "
                   "(presentation-only verification)")
        if expected is not None and M.rank != expected:
            raise CheckFailed(f"model rank {M.rank} differs from expected {expected}", out)
        return out, summary
    A = doc.amalgam(args.against)
    R = rf_ring_p(A, args.prime) if args.prime else rf_ring(A)
    if args.search_degree_one:
        cert = search_degree_one(M, R)
    else:
        if not args.map:
            raise DocumentError("verify --against needs --map or --search-degree-one")
        cert = certify_isomorphism(M, R, _parse_map(args.map, A))
    out["verification"] = "isomorphism"
    out["against"] = {"amalgam": A.name, "prime": args.prime, "rank": R.rank}
    out["certificate"] = cert.to_json()
    if not cert.ok:
        raise CheckFailed(f"certificate failed at stage {cert.stage}: {cert.witness}", out)
    return out, f"{args.presentation} ~= R_F({A.name}): certificate ok, determinant {cert.determinant}"


def cmd_ktheory(args):
    doc = _load(args)
    A = doc.amalgam(args.amalgam)
    rep = k_ranks(A, args.prime, include_identity=not args.exclude_identity_np)
    out = rep.to_json()
    if not rep.ok:
        raise CheckFailed("; ".join(rep.flags), out)
    return out, (f"{A.name} p={args.prime}: n_p=({rep.n_p_gamma},{rep.n_p_left},{rep.n_p_right},"
                 f"{rep.n_p_edge}) v_p={rep.v_p} rank K0={rep.rank_K0} rank K1={rep.rank_K1}")


def cmd_glrank(args):
    try:
        orbits = tuple(int(s) for s in args.orbits.split(",") if s.strip())
    except ValueError:
        raise KBookError(f"bad --orbits {args.orbits!r}") from None
    rep = gl_rank_check(GLRankInput(args.p, args.class_number, orbits))
    out = rep.to_json()
    if not rep.ok:
        raise CheckFailed(f"rank {rep.rk_RF} differs from 1 + Cl = {1 + rep.class_number}", out)
    return out, f"p={rep.p} Cl={rep.class_number} t={rep.t}: rk_inv={rep.rk_inv}, rank={rep.rk_RF}"


def cmd_chartab(args):
    doc = _load(args)
    G = doc.group(args.group)
    T = character_table(G)
    out = T.to_json()
    problems = verify_table(T)
    out["checks"] = problems
    if problems:
        raise CheckFailed("character table failed orthogonality", out)
    return out, f"{args.group}: {len(T)} irreducibles, degrees {list(T.degrees)}"


def cmd_oracle(args):
    doc = _load(args)
    A = doc.amalgam(args.amalgam)
    bound = args.oracle_bound
    bad = oracle_agreement(A, bound)
    out = {"amalgam": A.name, "bound": bound,
           "disagreements": [{"a": list(a), "b": list(b), "fused": f, "oracle": o}
                             for a, b, f, o in bad]}
    if bad:
        raise CheckFailed(f"{len(bad)} disagreements between fusion and the oracle", out)
    return out, f"{A.name}: fusion agrees with the bounded-word oracle at bound {bound}"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON to FILE instead of stdout")
    common.add_argument("--cap", type=int, default=None, help="group size cap (default 2000)")
    common.add_argument("--oracle-bound", type=int, default=6)
    common.add_argument("--exclude-identity-np", action="store_true",
                        help="leave the identity class out of n_p counts")

    parser = argparse.ArgumentParser(prog="rfring", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", parents=[common], help="torsion conjugacy classes")
    p.add_argument("document")
    p.add_argument("amalgam")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("ring", parents=[common], help="reduced representation ring")
    p.add_argument("document")
    p.add_argument("amalgam")
    p.add_argument("--prime", type=int)
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("verify", parents=[common], help="check a ring presentation")
    p.add_argument("document")
    p.add_argument("presentation")
    p.add_argument("--against", help="amalgam whose ring the presentation should match")
    p.add_argument("--prime", type=int)
    p.add_argument("--map", action="append", default=[],
                   help="generator image: gen=i,j (irreducible indices) or gen=[coords]")
    p.add_argument("--search-degree-one", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ktheory", parents=[common], help="K-theory rank bookkeeping")
    p.add_argument("document")
    p.add_argument("amalgam")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_ktheory)

    p = sub.add_parser("glrank", parents=[common], help="rank identity for GL_{p-1}(Z)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--class-number", type=int, required=True)
    p.add_argument("--orbits", required=True, help="comma-separated Delta-orbit sizes")
    p.set_defaults(func=cmd_glrank)

    p = sub.add_parser("chartab", parents=[common], help="character table of a group")
    p.add_argument("document")
    p.add_argument("group")
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("oracle", parents=[common], help="cross-check fusion with the word oracle")
    p.add_argument("document")
    p.add_argument("amalgam")
    p.set_defaults(func=cmd_oracle)
    return parser


def _emit(obj, args):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, summary = args.func(args)
    except CheckFailed as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}, "report": exc.payload}, args)
        print(f"check failed: {exc}", file=sys.stderr)
        return 2
    except MATH_ERRORS as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, args)
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, args)
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    _emit(out, args)
    print(summary, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success / valid / YES, 1 invalid / NO, 2 usage, 3 resource
budget exhausted, 4 capacity exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds, certificates, embedding, generators, oracle, permdec
from .errors import HyperminorError, InvalidInputError, UsageError
from .graph import format_edge_list, make_family, parse_product_descriptor, read_edge_list, to_dot


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_graph(arg: str):
    if ":" in arg and not Path(arg).exists():
        return make_family(arg)
    return read_edge_list(arg)


def _emit_model(m: embedding.MinorModel, args) -> None:
    if args.format == "dot":
        _write(to_dot(m.guest, None, "guest") if m.host.n > 5000 else
               to_dot(m.host, m.branch_sets, "model"), args.output)
    else:
        _write(certificates.dumps(certificates.model_certificate(m)), args.output)


def cmd_embed(args) -> int:
    guest = _load_graph(args.guest)
    text = args.factors
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    factors = parse_product_descriptor(text)
    m = embedding.minor_universal_embed(guest, make_family(args.h4), make_family(args.hk),
                                        factors, budget=args.budget_mode)
    _emit_model(m, args)
    return 0


def cmd_embed_hypercube(args) -> int:
    guest = _load_graph(args.guest)
    m = embedding.hypercube_embed(guest, args.d, budget=args.budget_mode)
    _emit_model(m, args)
    return 0


def cmd_decompose(args) -> int:
    try:
        text = Path(args.perm).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.perm}: {exc}") from None
    sigma = certificates.parse_permutation(text)
    factors = permdec.decompose(sigma)
    _write(certificates.dumps(certificates.decomposition_certificate(sigma, factors)), args.output)
    return 0


def cmd_verify(args) -> int:
    doc = certificates.read_certificate(args.certificate)
    rep = certificates.verify_certificate(doc)
    print(f"{doc['type']}: {rep.summary()}")
    return 0 if rep.valid else 1


def cmd_minor_test(args) -> int:
    h, g = _load_graph(args.guest), _load_graph(args.host)
    m = oracle.is_minor_bruteforce(h, g, budget=args.budget)
    if m is None:
        print("NO")
        return 1
    _emit_model(m, args)
    return 0


def cmd_universality(args) -> int:
    g = _load_graph(args.host)
    res = oracle.universality_number(g, args.max, budget=args.budget)
    print(f"m: {res.m}")
    print(f"saturated: {'true' if res.saturated else 'false'}")
    if res.falsifier is not None:
        print("falsifier:")
        sys.stdout.write(format_edge_list(res.falsifier))
    return 0


def cmd_bounds(args) -> int:
    if args.what == "spheres":
        sizes = bounds.sphere_sizes(args.d)
        mx, rhs, holds = bounds.sphere_inequality(args.d) if args.d >= 1 else (1, None, True)
        rep = bounds.BoundsReport("spheres", {
            "d": args.d, "sphere_sizes": sizes, "total": sum(sizes), "max": mx,
            "sphere_bound": None if rhs is None else bounds.round_sig(rhs), "holds": holds})
    elif args.what == "cheeger":
        g = _load_graph(args.graph)
        h, cut = bounds.cheeger_exact(g, estimate=args.estimate)
        vals = {"n": g.n, "h": str(h), "exact": cut is not None}
        if cut is not None:
            vals.update(subset=sorted(cut.subset), boundary=cut.boundary)
        rep = bounds.BoundsReport("cheeger", vals)
    elif args.what == "audit":
        doc = certificates.read_certificate(args.certificate)
        if doc["type"] == "embedding":
            emb = certificates.embedding_from_certificate(doc)
        elif doc["type"] == "model":
            emb = embedding.model_to_embedding(certificates.model_from_certificate(doc))
        else:
            raise UsageError("audit needs an embedding or model certificate")
        rep = bounds.separation_audit(emb)
    else:
        rep = bounds.nonuniversality_constants(args.d, args.h, k=args.k, kprime=args.kprime)
    _write(rep.to_text(), args.output)
    return 0


def cmd_gen(args) -> int:
    if args.what == "guest":
        _write(format_edge_list(generators.random_guest(args.edges, args.seed, args.max_vertices)),
               args.output)
    elif args.what == "regular3":
        _write(format_edge_list(generators.random_3_regular(args.n, args.seed)), args.output)
    else:
        p = generators.random_permutation(tuple(args.shape), args.seed)
        _write(certificates.format_permutation(p), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperminor",
                                description="Minor-universality constructions, verifiers and bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp, fmt=False):
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=["json", "dot"], default="json")

    sp = sub.add_parser("embed", help="guest + product host -> model certificate")
    sp.add_argument("guest", help="edge-list file or family descriptor")
    sp.add_argument("--factors", required=True,
                    help="factor descriptors, e.g. 'cycle:4,cycle:4' (or @file)")
    sp.add_argument("--h4", default="cycle:4")
    sp.add_argument("--hk", default="path:4")
    sp.add_argument("--budget-mode", choices=["theorem", "capacity"], default="theorem")
    out(sp, True)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("embed-hypercube", help="guest + d -> model certificate in Q_d")
    sp.add_argument("guest")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--budget-mode", choices=["theorem", "capacity"], default="capacity")
    out(sp, True)
    sp.set_defaults(func=cmd_embed_hypercube)

    sp = sub.add_parser("decompose", help="permutation table -> decomposition certificate")
    sp.add_argument("perm")
    out(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="check any certificate")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("minor-test", help="brute-force minor test")
    sp.add_argument("guest")
    sp.add_argument("host")
    sp.add_argument("--budget", type=int, default=10**7, help="search node budget")
    out(sp, True)
    sp.set_defaults(func=cmd_minor_test)

    sp = sub.add_parser("universality", help="exact m(G) for a small host")
    sp.add_argument("host")
    sp.add_argument("--max", type=int, default=5)
    sp.add_argument("--budget", type=int, default=10**7)
    sp.set_defaults(func=cmd_universality)

    sp = sub.add_parser("bounds", help="counting reports")
    bsub = sp.add_subparsers(dest="what", required=True)
    b = bsub.add_parser("spheres")
    b.add_argument("--d", type=int, required=True)
    out(b)
    b = bsub.add_parser("cheeger")
    b.add_argument("graph")
    b.add_argument("--estimate", action="store_true", help="spectral lower bound for large graphs")
    out(b)
    b = bsub.add_parser("audit")
    b.add_argument("certificate")
    out(b)
    b = bsub.add_parser("constants")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--h", default="1", help="Cheeger constant, rational such as 1/2")
    b.add_argument("--k", type=int)
    b.add_argument("--kprime")
    out(b)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("gen", help="seeded random inputs")
    gsub = sp.add_subparsers(dest="what", required=True)
    g = gsub.add_parser("guest")
    g.add_argument("--edges", type=int, required=True)
    g.add_argument("--max-vertices", type=int)
    g = gsub.add_parser("regular3")
    g.add_argument("--n", type=int, required=True)
    g = gsub.add_parser("perm")
    g.add_argument("--shape", type=int, nargs="+", required=True)
    for g in gsub.choices.values():
        g.add_argument("--seed", type=int, default=generators.DEFAULT_SEED)
        out(g)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HyperminorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return InvalidInputError.exit_code


if __name__ == "__main__":
    sys.exit(main())

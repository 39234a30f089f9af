"""Command-line workbench.

Every command prints one JSON report (schema_version, command, params,
result). Exit codes: 0 success or witness found, 1 input or parse error,
2 hypotheses fail, 3 search exhausted, 4 budget hit.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .axioms import (AxiomInstance, diagonal_instance, find_witness, norm_instance,
                     univariate_ring)
from .closure import (ClosureTower, certify_gclosed, closure_degree, constants_degree,
                      galois_kernel_data)
from .cyclotomic import (CycloField, cyclic_rho, extend_action, norm_solvable,
                         parse_rational)
from .errors import GTransformalError, NotAHomomorphism
from .ff import ExtField, field_from_descriptor, field_from_order
from .groebner import Ideal
from .groups import (GroupHom, cyclic_group, cyclic_universal_frattini_cover,
                     from_cayley_table, is_frattini_cover, is_frattini_cover_direct, preset)
from .gtf import GTransformalField
from .poly import PolyRing
from .session import Session, default_session_path

SCHEMA_VERSION = 1

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESES, EXIT_EXHAUSTED, EXIT_BUDGET = 0, 1, 2, 3, 4
OUTCOME_EXIT = {"Witness": EXIT_OK, "HypothesesFail": EXIT_HYPOTHESES,
                "Exhausted": EXIT_EXHAUSTED, "BudgetHit": EXIT_BUDGET}


@dataclass
class RunConfig:
    budget: Optional[int] = None
    seed: int = 0
    workers: int = 1
    order: str = "grevlex"
    pretty: bool = False
    session: Optional[str] = None


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "UsageError", "message": message}), file=sys.stderr)
        sys.exit(EXIT_INPUT)


# -- parsing helpers ------------------------------------------------------------

def parse_field(spec):
    """'9', 'F9', 'GF(9)', '3^2', 'Q(i)', 'cyclo:8', or a JSON descriptor."""
    if isinstance(spec, dict):
        if "cyclotomic" in spec:
            return CycloField(int(spec["cyclotomic"]))
        return field_from_descriptor(spec)
    s = str(spec).strip().replace(" ", "")
    if s.startswith("{"):
        return parse_field(json.loads(s))
    if s in ("Q(i)", "QQ(i)"):
        return CycloField(4)
    if s.startswith("cyclo:"):
        return CycloField(int(s[6:]))
    for pre in ("GF(", "F"):
        if s.startswith(pre):
            s = s[len(pre):].rstrip(")")
    if "^" in s:
        p, k = s.split("^")
        return field_from_order(int(p) ** int(k))
    try:
        return field_from_order(int(s))
    except ValueError as ex:
        raise InputError(f"bad field spec {spec!r}: {ex}") from None


def parse_group(spec):
    if isinstance(spec, list):
        return from_cayley_table(spec)
    s = str(spec)
    if s.endswith(".json"):
        return from_cayley_table(json.loads(Path(s).read_text()))
    if s.strip().startswith("["):
        return from_cayley_table(json.loads(s))
    return preset(s)


def build_gtf(F, G, action=None):
    """Frobenius exponents per group element, or cyclotomic exponents.

    With no action given, a cyclic G acts through its generator by the
    Frobenius power of order |G| (x -> x^(p^(k/|G|))), and Z/2 acts on Q(zeta_n) by
    complex conjugation.
    """
    if isinstance(F, CycloField):
        if action is None:
            if G.order == 2:
                action = [1, -1]
            elif G.order == 1:
                action = [1]
            else:
                raise InputError("give cyclotomic exponents for this group")
        return GTransformalField.cyclotomic(F, G, action)
    if action is None:
        if not G.is_cyclic() or F.k % G.order:
            raise InputError(f"give Frobenius exponents: no default action of {G.name} on F_{F.q}")
        step = F.k // G.order
        if G.name and G.name.startswith("Z/"):
            return GTransformalField.cyclic_frobenius(F, G.order, step)
        gen = next(a for a in G.elements() if G.element_order(a) == G.order)
        exps = [0] * G.order
        x = 0
        for i in range(G.order):
            exps[x] = (i * step) % F.k
            x = G.mul(x, gen)
        return GTransformalField.frobenius(F, G, exps)
    return GTransformalField.frobenius(F, G, action)


def load_instance(data, cfg, field=None, group=None, action=None):
    """Instance JSON: {field, group, action?, e?, n, order?, I: [...], J: [...] | null, provenance?}."""
    F = parse_field(field if field is not None else data["field"])
    G = parse_group(group if group is not None else data.get("group", "Z/2"))
    Ks = build_gtf(F, G, action if action is not None else data.get("action"))
    n = int(data.get("n", 1))
    e = int(data.get("e", G.order))
    if e != G.order:
        raise InputError(f"instance has e={e} but the group has order {G.order}")
    order = data.get("order", cfg.order)
    ring = PolyRing(F, e, n, order)
    I = Ideal(ring, [ring.parse(s) for s in data["I"]])
    Jg = data.get("J")
    J = I + ([ring.one()] if not Jg else [ring.parse(s) for s in Jg])
    return Ks, AxiomInstance(n, I, J, data.get("provenance", ""))


# -- output ------------------------------------------------------------------------

def _envelope(command, params, result):
    return {"schema_version": SCHEMA_VERSION, "command": command,
            "params": params, "result": result}


def _render_pretty(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def emit(report, cfg, out=None):
    out = out or sys.stdout
    if cfg.pretty:
        out.write("\n".join(_render_pretty(report)) + "\n")
    else:
        out.write(json.dumps(report, sort_keys=True) + "\n")


def _store(cfg, name, kind, data):
    path = cfg.session or default_session_path()
    if not path:
        return
    s = Session.open(path)
    s.put(name, kind, data)
    s.save()


# -- commands --------------------------------------------------------------------

def cmd_axiom_check(args, cfg):
    if args.instance:
        try:
            data = json.loads(Path(args.instance).read_text())
        except (OSError, ValueError) as ex:
            raise InputError(f"cannot read instance file: {ex}") from None
    elif args.norm is not None or args.diagonal is not None:
        data = None
    else:
        raise InputError("give an instance file, --norm C or --diagonal POLY")
    action = json.loads(args.action) if args.action else None
    if data is not None:
        Ks, inst = load_instance(data, cfg, args.field, args.group, action)
    else:
        F = parse_field(args.field or "9")
        G = parse_group(args.group or "Z/2")
        Ks = build_gtf(F, G, action)
        if args.norm is not None:
            c = _parse_constant(F, args.norm)
            inst = norm_instance(Ks, c, order=cfg.order)
        else:
            U = univariate_ring(F, cfg.order)
            inst = diagonal_instance(Ks, [U.parse(args.diagonal)], order=cfg.order)
    report = find_witness(Ks, inst, budget=cfg.budget, seed=cfg.seed if args.random else None,
                          workers=cfg.workers, force=args.force)
    F = Ks.field
    params = {"instance": inst.to_json(Ks), "action": Ks.to_json()["exponents"],
              "budget": cfg.budget, "seed": cfg.seed, "workers": cfg.workers,
              "force": args.force}
    result = report.to_json(F)
    if report.witness is not None:
        from .poly import format_coeff
        result["witness_text"] = [format_coeff(F, x) for x in report.witness]
    env = _envelope("axiom-check", params, result)
    _store(cfg, "axiom_report", "report", env)
    return env, OUTCOME_EXIT[report.outcome]


def _parse_constant(F, text):
    ring = PolyRing(F, 1, 1)
    f = ring.parse(text)
    if not f.is_constant():
        raise InputError(f"{text!r} is not a constant")
    return f.terms.get((0,), F.zero)


def cmd_closure(args, cfg):
    T = ClosureTower(args.q, args.n)
    avail = T.available_levels()
    levels = avail if args.levels is None else list(range(args.levels))
    for L in levels:
        T.level(L)
    result = {
        "closure_degree": closure_degree(args.q, args.n).to_json(),
        "constants_degree": constants_degree(args.q, args.n).to_json(),
        "levels": [dict(T.level(L).to_json(args.q), strict=T.check_level(L),
                        probe=T.probe(L)) for L in levels],
        "embeddings_commute": [T.check_commuting(L) for L in levels[:-1]],
    }
    if args.n == 1:
        result["note"] = "trivial group: the closure is the algebraic closure (ACF case)"
    if args.certify_degree is not None:
        budget = levels[-1] if levels else 0
        rep = _cached_certification(cfg, T, args.certify_degree, budget)
        result["certification"] = rep
    env = _envelope("closure", {"q": args.q, "n": args.n, "levels": args.levels,
                                "certify_degree": args.certify_degree, "seed": cfg.seed},
                    result)
    _store(cfg, f"tower_q{args.q}_n{args.n}", "tower", T.to_json())
    return env, EXIT_OK


def _cached_certification(cfg, T, D, B):
    key = f"cert_q{T.q}_n{T.n}_D{D}_B{B}_s{cfg.seed}"
    path = cfg.session or default_session_path()
    if path:
        s = Session.open(path)
        if key in s.names("certification"):
            return s.get(key)
    rep = certify_gclosed(T, D, B, seed=cfg.seed, workers=cfg.workers).to_json()
    _store(cfg, key, "certification", rep)
    return rep


def cmd_frattini(args, cfg):
    S = parse_group(args.source)
    Tg = parse_group(args.target)
    if args.map:
        images = tuple(int(x) - 1 for x in args.map.split(","))
    else:
        images = _default_projection(S, Tg)
    pi = GroupHom(S, Tg, images)
    verdict = is_frattini_cover(pi)
    result = {"frattini_cover": verdict, "kernel_order": len(pi.kernel()),
              "direct_check": is_frattini_cover_direct(pi)}
    env = _envelope("frattini", {"source": args.source, "target": args.target,
                                 "map": [x + 1 for x in images]}, result)
    return env, EXIT_OK


def _default_projection(S, T):
    """Reduction Z/m -> Z/n, or the first-factor projection of a direct product."""
    if S.labels and isinstance(S.labels[0], tuple):
        images = tuple(t[0] % T.order for t in S.labels)
    elif S.order % T.order == 0:
        images = tuple(a % T.order for a in S.elements())
    else:
        images = None
    if images is not None:
        try:
            GroupHom(S, T, images)
            return images
        except NotAHomomorphism:
            pass
    raise InputError("give --map for this pair of groups")


def cmd_ufc(args, cfg):
    cover = cyclic_universal_frattini_cover(args.n, args.k)
    kernel = [{"p": p, "a": a, "k": k, "order": p ** (k - a),
               "text": f"{p}^{a}Z/{p}^{k}"} for p, a, k in cover.kernel_factors()]
    tower = [{"p": p, "a": a, "k": k, "order": o} for p, a, k, o in galois_kernel_data(args.n, args.k)]
    result = {"source": cover.hom.source.name, "target": f"Z/{args.n}",
              "frattini_cover": is_frattini_cover(cover.hom),
              "kernel": kernel, "kernel_text": cover.describe(),
              "kernel_order": cover.kernel_order(),
              "closure_galois_data": tower,
              "matches_closure": [(x["p"], x["order"]) for x in kernel]
              == [(x["p"], x["order"]) for x in tower]}
    return _envelope("ufc", {"n": args.n, "k": args.k}, result), EXIT_OK


def cmd_cyclo_extend(args, cfg):
    G = cyclic_group(args.group_order)
    rho = cyclic_rho(args.group_order, args.rho, args.n)
    rep = extend_action(G, rho, args.n, args.m)
    return _envelope("cyclo-extend", {"n": args.n, "m": args.m, "rho": args.rho,
                                      "group_order": args.group_order}, rep.to_json()), EXIT_OK


def cmd_norm_demo(args, cfg):
    r = parse_rational(args.r)
    v = norm_solvable(r)
    return _envelope("norm-demo", {"r": args.r}, v.to_json()), EXIT_OK


# -- entry point -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="search cap")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--order", choices=("lex", "grevlex"), default="grevlex")
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--session", default=None, metavar="DIR")

    p = _Parser(prog="gtransformal", description="Fields with a finite group action: workbench")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("axiom-check", parents=[common], help="check one axiom instance")
    a.add_argument("instance", nargs="?", help="instance JSON file")
    a.add_argument("--field", help="carrier, e.g. 9, F4, 2^6, Q(i)")
    a.add_argument("--group", help="group preset or 1-based Cayley table JSON")
    a.add_argument("--action", help="JSON list of Frobenius (or cyclotomic) exponents")
    a.add_argument("--norm", help="build the norm instance x*sigma(x) = C")
    a.add_argument("--diagonal", help="build the diagonal instance of a polynomial in x[1][1]")
    a.add_argument("--force", action="store_true", help="search even if hypotheses fail")
    a.add_argument("--random", action="store_true", help="seeded random probes before the scan")
    a.set_defaults(func=cmd_axiom_check)

    c = sub.add_parser("closure", parents=[common], help="Z/n-closure tower of F_q")
    c.add_argument("q", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--levels", type=int, default=None)
    c.add_argument("--certify-degree", type=int, default=None)
    c.set_defaults(func=cmd_closure)

    f = sub.add_parser("frattini", parents=[common], help="Frattini-cover predicate")
    f.add_argument("source")
    f.add_argument("target")
    f.add_argument("--map", help="1-based images of source elements, comma separated")
    f.set_defaults(func=cmd_frattini)

    u = sub.add_parser("ufc", parents=[common], help="truncated universal Frattini cover of Z/n")
    u.add_argument("n", type=int)
    u.add_argument("k", type=int)
    u.set_defaults(func=cmd_ufc)

    y = sub.add_parser("cyclo-extend", parents=[common], help="lift Z/k -> (Z/n)^* to (Z/m)^*")
    y.add_argument("n", type=int)
    y.add_argument("m", type=int)
    y.add_argument("rho", type=int, help="image of the generator")
    y.add_argument("--group-order", type=int, default=2)
    y.set_defaults(func=cmd_cyclo_extend)

    r = sub.add_parser("norm-demo", parents=[common], help="solve x * conj(x) = r in Q(i)")
    r.add_argument("r")
    r.set_defaults(func=cmd_norm_demo)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(budget=args.budget, seed=args.seed, workers=args.workers,
                    order=args.order, pretty=args.pretty, session=args.session)
    try:
        report, code = args.func(args, cfg)
    except (GTransformalError, InputError, ValueError, KeyError, ZeroDivisionError) as ex:
        err = {"schema_version": SCHEMA_VERSION, "command": args.command,
               "error": type(ex).__name__, "message": str(ex)}
        line = getattr(ex, "line", None)
        if line is not None:
            err["line"], err["column"] = ex.line, ex.column
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    emit(report, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())

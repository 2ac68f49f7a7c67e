"""Command-line front end: ``hess-arr <command> --family B --rank 3 --hess 3,5,4``."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import arrangement, derivbasis, fixedpoints, gkm, gradedring, volume
from .lowerideal import (
    InvalidHessenberg,
    LowerIdeal,
    NotLowerIdeal,
    enumerate_lower_ideals,
    exponents,
    hessenberg_from_ideal,
    ideal_from_hessenberg,
    validate_lower_ideal,
)
from .polyalg import Polynomial, parse_polynomial, to_text
from .rootsystem import RootSystem, WeylBoundExceeded

SCHEMA = 1

COMMANDS = (
    "roots",
    "exponents",
    "poincare",
    "hilbert",
    "presentation",
    "saito-check",
    "chambers",
    "weyl-type",
    "gkm-dot",
    "gkm-dims",
    "volume",
    "ann-check",
    "lefschetz",
    "verify-all",
)


class UsageError(Exception):
    pass


def _num(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _members(ideal: LowerIdeal) -> list[str]:
    return [to_text(r.linear_form()) for r in ideal.members]


# ------------------------------------------------------------ ideal parsing

def parse_root_list(rs: RootSystem, text: str) -> LowerIdeal:
    text = text.strip()
    if not text:
        return validate_lower_ideal(rs, 0)
    mask = 0
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if "a" in item:
                p = parse_polynomial(item, rs.rank, prefix="a")
                coords = tuple(p.linear_coeffs())
                root = rs.root_of_simple_coords(coords)
                if p.homogeneous_degree() != 1 or root is None:
                    raise UsageError(f"{item!r} is not a positive root")
            else:
                p = parse_polynomial(item, rs.ambient_dim)
                if p.homogeneous_degree() != 1:
                    raise UsageError(f"{item!r} is not a linear form")
                hit = rs.root_of_vector(p.linear_coeffs())
                if hit is None or hit[1] < 0:
                    raise UsageError(f"{item!r} is not a positive root")
                root = hit[0]
        except ValueError as exc:
            raise UsageError(f"cannot parse root {item!r}: {exc}") from exc
        mask |= 1 << root.index
    return validate_lower_ideal(rs, mask)


def resolve_ideals(rs: RootSystem, args) -> list[LowerIdeal]:
    given = [x is not None for x in (args.hess, args.roots, args.ideal)]
    if sum(given) > 1:
        raise UsageError("give at most one of --hess, --roots, --ideal")
    if args.hess is not None:
        try:
            values = [int(v) for v in args.hess.split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --hess value {args.hess!r}") from exc
        return [ideal_from_hessenberg(values, rs)]
    if args.roots is not None:
        return [parse_root_list(rs, args.roots)]
    spec = args.ideal or "full"
    if spec == "all":
        return enumerate_lower_ideals(rs)
    if spec == "full":
        return [validate_lower_ideal(rs, rs.full_mask)]
    if spec == "empty":
        return [validate_lower_ideal(rs, 0)]
    raise UsageError(f"unknown --ideal value {spec!r} (use all, full or empty)")


def _hess_text(ideal: LowerIdeal):
    if ideal.rs.family == "D":
        return None
    return list(hessenberg_from_ideal(ideal).values)


# ------------------------------------------------------------ commands

def cmd_exponents(ideal, args):
    return {"exponents": exponents(ideal)}, True


def cmd_poincare(ideal, args):
    arr = arrangement.IdealArrangement.from_ideal(ideal)
    pi = arrangement.poincare_polynomial(arr)
    exps = exponents(ideal)
    return {
        "arrangement": pi.coefficients,
        "method": pi.method,
        "terao": arrangement.terao_check(arr, exps),
        "nilpotent": fixedpoints.nilpotent_poincare(ideal),
        "semisimple": fixedpoints.semisimple_poincare(ideal),
        "height_product": fixedpoints.height_product(ideal),
    }, True


def cmd_hilbert(ideal, args):
    q = gradedring.quotient_for(ideal)
    dims = q.graded_dims
    predicted = gradedring.product_series(exponents(ideal))
    ok = dims == predicted and dims == dims[::-1] and q.socle_degree == len(ideal)
    return {"hilbert": dims, "socle_degree": q.socle_degree, "product": predicted, "passed": ok}, ok


def cmd_presentation(ideal, args):
    gens = derivbasis.ideal_generators(ideal)
    return {
        "hessenberg": _hess_text(ideal),
        "generators": [to_text(g) for g in gens],
        "degrees": [g.homogeneous_degree() for g in gens],
        "relation": "x1 + ... + x%d" % ideal.rs.ambient_dim if ideal.rs.trace_zero else None,
    }, True


def cmd_saito(ideal, args):
    basis = derivbasis.psi_basis(ideal)
    cert = derivbasis.saito_certificate(basis, ideal)
    logs = [derivbasis.is_logarithmic(t, ideal) for t in basis]
    ok = cert.passed and all(logs)
    return {
        "passed": ok,
        "logarithmic": logs,
        "degrees": [t.degree for t in basis],
        "constant": _num(cert.constant) if cert.constant is not None else None,
        "summary": cert.summary(),
    }, ok


def cmd_chambers(ideal, args):
    arr = arrangement.IdealArrangement.from_ideal(ideal)
    pi1 = arrangement.poincare_polynomial(arr).at(1)
    signs = arrangement.sign_vector_chambers(ideal)
    ok = pi1 == signs
    return {"chambers": signs, "poincare_at_1": pi1, "passed": ok}, ok


def cmd_weyl_type(ideal, args):
    subsets = fixedpoints.weyl_type_subsets(ideal)
    rs = ideal.rs
    ok = fixedpoints.eta_bijection_check(ideal)
    return {
        "count": len(subsets),
        "series": fixedpoints.weyl_type_series(ideal),
        "subsets": [[to_text(r.linear_form()) for r in rs.roots if y >> r.index & 1] for y in subsets],
        "fixed_points": [w.word_text() for w in fixedpoints.nilpotent_fixed_points(ideal)],
        "eta_bijection": ok,
    }, ok


def cmd_gkm_dot(ideal, args):
    g = gkm.build_gkm_graph(ideal, args.max_weyl)
    rec = {
        "vertices": [w.word_text() for w in g.vertices],
        "edges": [[g.vertices[e.u].word_text(), g.vertices[e.v].word_text(), to_text(e.label)] for e in g.edges],
        "dot": g.to_dot(),
    }
    return rec, True


def cmd_gkm_dims(ideal, args):
    g = gkm.build_gkm_graph(ideal, args.max_weyl)
    b = fixedpoints.semisimple_poincare(ideal)
    rows = []
    ok = True
    q = None
    if ideal.rs.family != "D" and ideal.rs.rank == 2:
        q = gradedring.quotient_for(ideal)
    for d in range(args.max_degree + 1):
        dim = gkm.gkm_space_dim(g, d, args.max_degree)
        pred = gkm.free_module_prediction(b, ideal.rs.nvars, d)
        row = {"degree": d, "gkm_dim": dim, "free_module": pred}
        ok = ok and dim == pred
        if q is not None:
            inv = gkm.invariant_cohomology_dim(g, d)
            row["invariant_dim"] = inv
            row["quotient_dim"] = q.dim(d)
            ok = ok and inv == q.dim(d)
        rows.append(row)
    return {"semisimple": b, "degrees": rows, "passed": ok}, ok


def cmd_volume(ideal, args):
    v = volume.volume_polynomial(ideal)
    return {
        "volume": to_text(v.reduced),
        "simple_roots": to_text(ideal.rs.in_simple_root_basis(v.reduced), prefix="a"),
        "raw_sign": v.sign,
        "rho_pairing": _num(v.rho_value),
    }, True


def _parse_kill(rs: RootSystem, texts) -> list[Polynomial]:
    out = []
    for t in texts or []:
        try:
            if "a" in t:
                p = parse_polynomial(t, rs.rank, prefix="a")
                simple = [rs.reduced_form(r) for r in rs.simple]
                out.append(p.compose(simple))
            else:
                out.append(parse_polynomial(t, rs.nvars))
        except ValueError as exc:
            raise UsageError(f"cannot parse polynomial {t!r}: {exc}") from exc
    return out


def cmd_ann(ideal, args):
    kill = _parse_kill(ideal.rs, args.kill)
    rep = volume.annihilator_check(ideal, kill=kill)
    return rep.to_json(), rep.passed


def cmd_lefschetz(ideal, args):
    rs = ideal.rs
    ell = None
    if args.ell:
        ell = _parse_kill(rs, [args.ell])[0]
        if ell.homogeneous_degree() != 1:
            raise UsageError("--ell must be a linear form")
    rep = gradedring.lefschetz_check(ideal, ell)
    return {
        "verdict": rep.verdict,
        "ell": to_text(rep.ell),
        "rho_pairing": _num(rep.rho_value),
        "degrees": [
            {
                "q": r.q,
                "dim": r.dim,
                "hl_rank": r.hl_rank,
                "primitive_dim": r.primitive_dim,
                "hr_minors": [_num(m) for m in r.minors],
            }
            for r in rep.degrees
        ],
    }, rep.passed


def verify_ideal(ideal: LowerIdeal, args, rng: random.Random) -> dict:
    rs = ideal.rs
    checks: dict[str, bool] = {}
    exps = exponents(ideal)
    product = gradedring.product_series(exps)
    arr = arrangement.IdealArrangement.from_ideal(ideal)
    pi = arrangement.poincare_polynomial(arr)
    checks["terao"] = pi.coefficients == arrangement.product_poincare(exps)
    if len(arr) <= arrangement.WHITNEY_MAX and rs.rank <= arrangement.LATTICE_MAX_RANK:
        checks["poincare_paths"] = arrangement.poincare_whitney(arr) == arrangement.poincare_lattice(arr)
    chambers = arrangement.sign_vector_chambers(ideal)
    checks["chambers"] = chambers == pi.at(1) == sum(product)
    nil = fixedpoints.nilpotent_poincare(ideal)
    checks["fixed_point_sum"] = nil == product == fixedpoints.height_product(ideal)
    checks["weyl_type"] = fixedpoints.weyl_type_series(ideal) == product
    checks["eta_bijection"] = fixedpoints.eta_bijection_check(ideal)
    checks["chamber_bijection"] = fixedpoints.chamber_bijection_check(ideal)
    checks["separation"] = fixedpoints.separation_series(ideal) == product
    if rs.family != "D":
        basis = derivbasis.psi_basis(ideal)
        checks["logarithmic"] = all(derivbasis.is_logarithmic(t, ideal) for t in basis)
        checks["saito"] = derivbasis.saito_certificate(basis, ideal).passed
        q = gradedring.quotient_for(ideal)
        checks["hilbert"] = q.graded_dims == product and q.socle_degree == len(ideal)
        vol = volume.volume_polynomial(ideal)
        checks["pd_pairing"] = gradedring.pd_pairing_check(q, vol)
        checks["annihilator"] = volume.annihilator_check(ideal, gens=q.gens, vol=vol).passed
        checks["lefschetz"] = gradedring.lefschetz_check(ideal, q=q).passed
        checks["colon"] = all(gradedring.colon_check(ideal, r).passed for r in ideal.addable_roots())
    checks["stepwise_volume"] = all(volume.stepwise_check(ideal, r) for r in ideal.addable_roots())
    if rs.rank <= 3:
        g = gkm.build_gkm_graph(ideal, args.max_weyl)
        b = fixedpoints.semisimple_poincare(ideal)
        top = min(args.max_degree, 2)
        checks["gkm_dims"] = all(
            gkm.gkm_space_dim(g, d) == gkm.free_module_prediction(b, rs.nvars, d) for d in range(top + 1)
        )
        W = g.vertices
        u, v = rng.choice(W), rng.choice(W)
        form = rs.reduced_form(rng.choice(rs.roots))
        cls = gkm.euler_class(g, form)
        checks["dot_action"] = gkm.dot_action(g, u, cls) == cls and gkm.dot_action(
            g, rs.multiply(u, v), cls
        ) == gkm.dot_action(g, u, gkm.dot_action(g, v, cls))
    return checks


def cmd_verify(ideal, args, rng=None):
    checks = verify_ideal(ideal, args, rng or random.Random(args.seed))
    ok = all(checks.values())
    return {"checks": checks, "passed": ok}, ok


HANDLERS = {
    "exponents": cmd_exponents,
    "poincare": cmd_poincare,
    "hilbert": cmd_hilbert,
    "presentation": cmd_presentation,
    "saito-check": cmd_saito,
    "chambers": cmd_chambers,
    "weyl-type": cmd_weyl_type,
    "gkm-dot": cmd_gkm_dot,
    "gkm-dims": cmd_gkm_dims,
    "volume": cmd_volume,
    "ann-check": cmd_ann,
    "lefschetz": cmd_lefschetz,
}


# ------------------------------------------------------------ rendering

def _render_text(command: str, rs: RootSystem, records: list[dict]) -> str:
    lines = [f"# {command} {rs.type}"]
    for rec in records:
        lines.append(f"ideal: {{{', '.join(rec['ideal'])}}}")
        for key, val in rec.items():
            if key in ("ideal", "dot"):
                continue
            if isinstance(val, list) and val and isinstance(val[0], dict):
                lines.append(f"  {key}:")
                for row in val:
                    lines.append("    " + ", ".join(f"{k}={v}" for k, v in row.items()))
            elif isinstance(val, dict):
                lines.append(f"  {key}:")
                for k, v in val.items():
                    lines.append(f"    {k}: {v}")
            elif isinstance(val, list) and key in ("generators", "subsets", "edges", "logarithmic"):
                lines.append(f"  {key}:")
                for item in val:
                    lines.append(f"    {item}")
            else:
                lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hess-arr", description="Ideal arrangements and Hessenberg cohomology")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--family", required=True, choices=["A", "B", "C", "D", "G"])
    parser.add_argument("--rank", required=True, type=int)
    parser.add_argument("--hess", help="Hessenberg function, e.g. 3,5,4")
    parser.add_argument("--roots", help='comma-separated roots, e.g. "x1-x2,x2" or "a1,a1+a2"')
    parser.add_argument("--ideal", help="all, full (default) or empty")
    parser.add_argument("--format", choices=["json", "text", "dot"], default="text")
    parser.add_argument("--max-weyl", type=int, default=None)
    parser.add_argument("--max-degree", type=int, default=gkm.DEFAULT_MAX_DEGREE)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--kill", action="append", help="extra polynomial to test against P_I (repeatable)")
    parser.add_argument("--ell", help="degree-one class for lefschetz (default: rho)")
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("HESSARR_MAX_WEYL")
    if args.max_weyl is not None:
        os.environ["HESSARR_MAX_WEYL"] = str(args.max_weyl)
    try:
        return _run(args, out)
    finally:
        if saved is None:
            os.environ.pop("HESSARR_MAX_WEYL", None)
        else:
            os.environ["HESSARR_MAX_WEYL"] = saved


def _run(args, out) -> int:
    try:
        rs = RootSystem.build(args.family, args.rank)
        ideals = resolve_ideals(rs, args)
        if args.format == "dot" and args.command != "gkm-dot":
            raise UsageError("--format dot is only available for gkm-dot")
        rng = random.Random(args.seed)
        records = []
        ok = True
        for ideal in ideals:
            if args.command == "roots":
                rec, good = {}, True
            elif args.command == "verify-all":
                rec, good = cmd_verify(ideal, args, rng)
            else:
                rec, good = HANDLERS[args.command](ideal, args)
            records.append({"ideal": _members(ideal), **rec})
            ok = ok and good
    except (UsageError, InvalidHessenberg, NotLowerIdeal, derivbasis.UnsupportedType, ValueError) as exc:
        print(f"hess-arr: error: {exc}", file=sys.stderr)
        return 2
    except WeylBoundExceeded as exc:
        print(f"hess-arr: error: {exc}", file=sys.stderr)
        return 2

    if args.command == "roots":
        payload = {"schema": SCHEMA, "command": "roots", **rs.to_json()}
        out.write(json.dumps(payload, indent=2) + "\n")
        return 0
    if args.format == "dot":
        for rec in records:
            out.write(rec["dot"])
    elif args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": args.command,
            "type": str(rs.type),
            "results": records,
            "passed": ok,
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(_render_text(args.command, rs, records))
        if args.command == "verify-all":
            out.write(f"{len(records)} ideals verified: {'pass' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line interface: every check with file I/O and certificate output.

Exit codes: 0 yes/success, 1 no, 2 inconclusive-at-radius, 3 input error.
`--json` emits a machine-readable mirror carrying exactly the fields of the
text report.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .discform import discriminant_group, forms_equivalent, genus_tag, milgram_residue
from .glue import (
    CertificateSearch,
    GlueMismatch,
    NotIsotropic,
    canonical_sigma_perp_embedding,
    extend_isometry,
    overlattice_from_glue,
    u_summand_certificate,
    un_summand_certificate,
)
from .lattice import (
    Lattice,
    LatticeError,
    ParseError,
    enumerate_vectors,
    lattice_invariants,
    make_isometry,
    orthogonal_complement,
    read_lattice_document,
    saturation,
    span,
    standard,
    write_lattice,
)
from .og10 import (
    Verdict,
    build_ld,
    classify_symplectic_involution,
    gamma_v,
    hassett_row,
    is_numerical_moduli_space,
    is_twisted_numerical_moduli_space,
    mark_og10,
    og10_lattice,
)


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def render_text(report: dict, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                lines.append(f"{pad}{key}[{i}]:")
                lines.extend(render_text(item, indent + 1))
        elif isinstance(value, (list, tuple)):
            lines.append(f"{pad}{key}: " + " ".join(str(v) for v in value))
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def emit(report: dict, as_json: bool) -> None:
    report = _jsonable(report)
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print("\n".join(render_text(report)))


# ---------------------------------------------------------------------------
# argument parsing helpers

def load_lattice(arg: str) -> Lattice:
    """A path to a lattice document, or an expression like "U^3 + [2]"."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            lat, _ = read_lattice_document(fh.read())
        return lat
    return standard(arg)


def load_marked(arg: str, ns_spec, sigma_unused=None):
    if os.path.exists(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            lat, extras = read_lattice_document(fh.read())
        if lat.gram != og10_lattice().gram:
            raise ParseError(
                "marked checks need the standard rank-24 block Gram matrix")
        rows = extras.get("ns")
        if ns_spec:
            rows = parse_matrix(ns_spec)
        if rows is None:
            raise ParseError("no ns section in the file and no --ns given")
        return mark_og10(rows, extras.get("projective", True))
    lat = standard(arg)
    if lat.gram != og10_lattice().gram:
        raise ParseError(
            "marked checks need the standard rank-24 block Gram matrix")
    if not ns_spec:
        raise ParseError("--ns is required when the lattice is an expression")
    return mark_og10(parse_matrix(ns_spec))


def parse_vector(spec: str):
    try:
        return tuple(int(tok) for tok in spec.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"bad vector token in {spec!r}") from None


def parse_matrix(spec: str):
    return tuple(parse_vector(row) for row in spec.split(";") if row.strip())


def parse_rational_vector(spec: str):
    try:
        return tuple(Fraction(tok) for tok in spec.replace(",", " ").split())
    except ValueError:
        raise ParseError(f"bad rational token in {spec!r}") from None


def parse_glue(spec: str):
    """Generators separated by ';', each "s-lift : k-lift" in rationals."""
    gens = []
    for part in spec.split(";"):
        if not part.strip():
            continue
        if ":" not in part:
            raise ParseError(f"glue generator {part!r} needs an s:k separator")
        s_part, k_part = part.split(":", 1)
        gens.append((parse_rational_vector(s_part), parse_rational_vector(k_part)))
    return gens


def parse_range(spec: str):
    if ".." not in spec:
        raise ParseError(f"range must look like a..b, got {spec!r}")
    a, b = spec.split("..", 1)
    try:
        return int(a), int(b)
    except ValueError:
        raise ParseError(f"bad range bound in {spec!r}") from None


# ---------------------------------------------------------------------------
# per-verb reports

def lattice_report(lat: Lattice) -> dict:
    rank, det, parity, sig = lattice_invariants(lat)
    report = {
        "name": lat.name or "L",
        "rank": rank,
        "det": det,
        "abs_det": abs(det),
        "parity": parity,
        "signature": list(sig.as_tuple()),
    }
    if lat.is_even:
        form = discriminant_group(lat)
        report["disc_group"] = disc_group_label(form.invariant_factors)
        report["milgram"] = milgram_residue(form)
    return report


def disc_group_label(factors) -> str:
    if not factors:
        return "trivial"
    return " + ".join(f"Z/{d}" for d in factors)


def disc_report(lat: Lattice) -> dict:
    form = discriminant_group(lat)
    k = len(form.invariant_factors)
    gens = []
    for j in range(k):
        unit = tuple(int(i == j) for i in range(k))
        gens.append({
            "lift": [str(c) for c in form.generators[j]],
            "order": form.invariant_factors[j],
            "q": str(form.q(unit)),
        })
    return {
        "group": disc_group_label(form.invariant_factors),
        "order": form.order,
        "milgram": milgram_residue(form),
        "generators": gens,
    }


def cert_report(search: CertificateSearch) -> dict:
    out = {
        "found": search.found,
        "conclusive": search.conclusive,
        "radius": search.radius,
        "reason": search.reason,
        "mode": search.mode,
    }
    if search.certificate is not None:
        cert = search.certificate
        out["e"] = list(cert.e)
        out["f"] = list(cert.f)
        out["n"] = cert.n
        out["summand"] = cert.summand
    return out


def verdict_report(verdict: Verdict) -> dict:
    out = {"verdict": verdict.outcome, "radius": verdict.radius}
    if verdict.sigma is not None:
        out["sigma"] = list(verdict.sigma)
    if verdict.w is not None:
        out["w"] = list(verdict.w)
    if verdict.chart:
        out["chart"] = verdict.chart
    if verdict.certificate is not None:
        cert = verdict.certificate
        out["certificate"] = {
            "e": list(cert.e), "f": list(cert.f),
            "n": cert.n, "summand": cert.summand,
        }
    if verdict.twisted is not None:
        td = verdict.twisted
        out["twisted"] = {
            "n": td.n,
            "gamma": list(td.gamma),
            "b_field": [str(c) for c in td.b_field],
            "k": td.k,
        }
    out["assumptions"] = list(verdict.assumptions)
    out["notes"] = list(verdict.notes)
    return out


_VERDICT_EXIT = {"yes": 0, "no": 1, "inconclusive": 2}


def _search_exit(search: CertificateSearch) -> int:
    if search.found:
        return 0
    return 1 if search.conclusive else 2


# ---------------------------------------------------------------------------
# verbs

def cmd_info(args) -> int:
    emit(lattice_report(load_lattice(args.lattice)), args.json)
    return 0


def cmd_disc(args) -> int:
    emit(disc_report(load_lattice(args.lattice)), args.json)
    return 0


def cmd_complement(args) -> int:
    lat = load_lattice(args.lattice)
    sub = span(lat, parse_matrix(args.span))
    comp = orthogonal_complement(sub)
    report = {
        "rank": comp.rank,
        "basis": [list(v) for v in comp.basis],
        "gram": [list(row) for row in comp.gram()],
    }
    emit(report, args.json)
    return 0


def cmd_saturate(args) -> int:
    lat = load_lattice(args.lattice)
    sub = span(lat, parse_matrix(args.span))
    sat, index = saturation(sub)
    report = {
        "rank": sat.rank,
        "index": index,
        "basis": [list(v) for v in sat.basis],
    }
    emit(report, args.json)
    return 0


def cmd_enumerate(args) -> int:
    lat = load_lattice(args.lattice)
    vecs = enumerate_vectors(
        lat, square=args.square, divisibility=args.divisibility,
        primitive=True if args.primitive else None, radius=args.radius)
    report = {
        "count": len(vecs),
        "vectors": [list(v) for v in vecs],
    }
    emit(report, args.json)
    return 0


def cmd_gamma_v(args) -> int:
    lat = load_lattice(args.lattice)
    data = gamma_v(lat)
    over = data.overlattice
    sig_img = data.embed_k_vector((1,))
    from .lattice import divisibility as div_fn, pair as pair_fn
    report = {
        "rank": over.rank,
        "det": over.det,
        "index": data.index,
        "parity": "even" if over.is_even else "odd",
        "tag_matches_og10": genus_tag(over) == genus_tag(og10_lattice()),
        "exceptional_image": list(sig_img),
        "exceptional_square": pair_fn(over, sig_img, sig_img),
        "exceptional_divisibility": div_fn(over, sig_img),
    }
    emit(report, args.json)
    return 0


def cmd_nms(args) -> int:
    marked = load_marked(args.lattice, args.ns)
    sigma = parse_vector(args.sigma) if args.sigma else None
    verdict = is_numerical_moduli_space(marked, sigma=sigma, radius=args.radius)
    emit(verdict_report(verdict), args.json)
    return _VERDICT_EXIT[verdict.outcome]


def cmd_nms_twisted(args) -> int:
    marked = load_marked(args.lattice, args.ns)
    sigma = parse_vector(args.sigma) if args.sigma else None
    verdict = is_twisted_numerical_moduli_space(
        marked, sigma=sigma, radius=args.radius,
        require_summand=not args.embedding_only)
    emit(verdict_report(verdict), args.json)
    return _VERDICT_EXIT[verdict.outcome]


def cmd_hassett(args) -> int:
    if args.range:
        lo, hi = parse_range(args.range)
        rows = [hassett_row(d) for d in range(lo, hi + 1)]
    elif args.d is not None:
        rows = [hassett_row(args.d)]
    else:
        raise ParseError("hassett needs a discriminant or --range a..b")
    report = {"rows": rows}
    emit(report, args.json)
    return 0


def cmd_build_ld(args) -> int:
    glue = args.glue
    if glue not in ("trivial", "a2"):
        glue = parse_glue(glue)
    result = build_ld(args.square, glue, radius=args.radius)
    report = {
        "gram": [list(row) for row in result.lattice.gram],
        "det": result.det,
        "candidate_d": result.candidate_d,
        "index": result.index,
        "u_certificate": cert_report(result.u_search),
        "un_certificate": cert_report(result.un_search),
    }
    emit(report, args.json)
    return _search_exit(result.u_search)


def cmd_involution(args) -> int:
    marked = load_marked(args.lattice, args.ns)
    matrix = parse_matrix(args.matrix)
    report_obj = classify_symplectic_involution(marked, matrix, radius=args.radius)
    report = {
        "outcome": report_obj.outcome,
        "invariant_rank": report_obj.invariant.rank,
        "coinvariant_rank": report_obj.coinvariant.rank,
        "disc_action_trivial": report_obj.disc_trivial,
        "coinvariant_witness": report_obj.coinvariant_witness is not None,
        "notes": list(report_obj.notes),
    }
    if report_obj.sigma is not None:
        report["sigma"] = list(report_obj.sigma)
    if report_obj.certificate is not None:
        cert = report_obj.certificate
        report["certificate"] = {"e": list(cert.e), "f": list(cert.f),
                                 "n": cert.n, "summand": cert.summand}
    if report_obj.even_divisibility_obstruction is not None:
        report["even_divisibility_obstruction"] = \
            report_obj.even_divisibility_obstruction
    emit(report, args.json)
    return {"INDUCED_TYPE": 0, "EXCLUDED_EVEN_DIV": 1, "OTHER": 2}[report_obj.outcome]


def cmd_glue(args) -> int:
    s = load_lattice(args.s)
    k = load_lattice(args.k)
    try:
        data = overlattice_from_glue(s, k, parse_glue(args.glue) if args.glue else [])
    except NotIsotropic as exc:
        emit({"glued": False, "reason": str(exc)}, args.json)
        return 1
    report = {
        "glued": True,
        "rank": data.overlattice.rank,
        "det": data.overlattice.det,
        "index": data.index,
        "gram": [list(row) for row in data.overlattice.gram],
    }
    emit(report, args.json)
    return 0


def cmd_extend_isometry(args) -> int:
    s = load_lattice(args.s)
    k = load_lattice(args.k)
    glue = parse_glue(args.glue) if args.glue else []
    m1 = overlattice_from_glue(s, k, glue)
    s2 = load_lattice(args.s2) if args.s2 else s
    k2 = load_lattice(args.k2) if args.k2 else k
    glue2 = parse_glue(args.glue2) if args.glue2 else glue
    m2 = overlattice_from_glue(s2, k2, glue2)
    phi_s = make_isometry(s, s2, parse_matrix(args.phi_s))
    phi_k = make_isometry(k, k2, parse_matrix(args.phi_k))
    try:
        beta = extend_isometry(m1, m2, phi_s, phi_k)
    except GlueMismatch as exc:
        emit({"extends": False, "reason": str(exc)}, args.json)
        return 1
    emit({"extends": True,
          "matrix": [list(row) for row in beta.matrix]}, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="og10lat",
        description="Exact lattice checks for O'Grady-10 moduli criteria")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true",
                       help="machine-readable mirror of the text report")
        p.set_defaults(fn=fn)
        return p

    p = add("info", cmd_info, help="rank, signature, determinant, parity, disc group")
    p.add_argument("lattice", help="lattice file or expression")

    p = add("disc", cmd_disc, help="discriminant group with q-values")
    p.add_argument("lattice")

    p = add("complement", cmd_complement, help="orthogonal complement of a span")
    p.add_argument("lattice")
    p.add_argument("--span", required=True, help="rows like '1,0;0,1'")

    p = add("saturate", cmd_saturate, help="saturation of a span, with index")
    p.add_argument("lattice")
    p.add_argument("--span", required=True)

    p = add("enumerate", cmd_enumerate, help="vectors under square/divisibility constraints")
    p.add_argument("lattice")
    p.add_argument("--square", type=int, default=None)
    p.add_argument("--divisibility", type=int, default=None)
    p.add_argument("--primitive", action="store_true")
    p.add_argument("--radius", type=int, default=3)

    p = add("gamma-v", cmd_gamma_v, help="index-2 overlattice of v-perp + [-6]")
    p.add_argument("lattice")

    p = add("nms", cmd_nms, help="numerical moduli space check")
    p.add_argument("lattice", help="marked lattice file or expression with --ns")
    p.add_argument("--ns", default=None, help="NS rows like '0,...,1,-1;1,0,...'")
    p.add_argument("--sigma", default=None, help="coordinates of sigma")
    p.add_argument("--radius", type=int, default=3)

    p = add("nms-twisted", cmd_nms_twisted, help="twisted variant with B-field recovery")
    p.add_argument("lattice")
    p.add_argument("--ns", default=None)
    p.add_argument("--sigma", default=None)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--embedding-only", action="store_true",
                   help="drop the direct-summand requirement on U(n)")

    p = add("hassett", cmd_hassett, help="(**) and (**') with witnesses")
    p.add_argument("d", nargs="?", type=int, default=None)
    p.add_argument("--range", default=None, help="a..b")

    p = add("build-ld", cmd_build_ld, help="A2 + [v^2] overlattice and its U test")
    p.add_argument("--square", type=int, required=True, help="negative even v^2")
    p.add_argument("--glue", default="trivial", help="trivial, a2, or explicit lifts")
    p.add_argument("--radius", type=int, default=4)

    p = add("involution", cmd_involution, help="classify a symplectic involution")
    p.add_argument("lattice")
    p.add_argument("--ns", default=None)
    p.add_argument("--matrix", required=True, help="24 rows like '1,0,...;...'")
    p.add_argument("--radius", type=int, default=3)

    p = add("glue", cmd_glue, help="even overlattice from explicit glue lifts")
    p.add_argument("s")
    p.add_argument("k")
    p.add_argument("--glue", default="", help="'s-lift:k-lift;...' in rationals")

    p = add("extend-isometry", cmd_extend_isometry,
            help="extend phi_s + phi_k across glued overlattices")
    p.add_argument("--s", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--glue", default="")
    p.add_argument("--s2", default=None)
    p.add_argument("--k2", default=None)
    p.add_argument("--glue2", default=None)
    p.add_argument("--phi-s", required=True, dest="phi_s")
    p.add_argument("--phi-k", required=True, dest="phi_k")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

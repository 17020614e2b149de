"""Command-line front end.

Every subcommand prints one JSON (or plain table) report.  Exit status is 0
on success, 2 when the mathematics says no (a witness is included) and 1
for bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chain import (
    InvariantViolation,
    chain_polynomials,
    flag_h,
    interlacing_certificate,
    mobius_rank_selected,
    subdivision,
    zeta_is_pf,
    zeta_polynomial,
)
from .cubical import (
    CubicalComplex,
    adin_h,
    complex_h,
    cubical_shelling_check,
    r_cubical_h,
)
from .families import FamilySpec, family_lambda_table, family_matrix, family_rnk
from .partition import (
    PartitionComplex,
    SetPartition,
    SimpleGraph,
    chromatic_poly,
    falling_basis_expansion,
    is_chordal,
    partition_shelling_check,
    sigma_poly,
)
from .pfseq import PFGenFun, forgacs_tran, is_pf_polynomial_values, pft_family
from .poly import Polynomial, frac_str
from .poset import FinitePoset, NonUniformError, NotFamilyPoset, h_vector
from .qarr import FqArrangement, arrangement_theta, critical_count
from .qposet import QMatroid, QPoset, find_shelling, independent_spaces, is_shelling, q_h_vector
from .tnmat import LowerTriMatrix, WhitneyFailure, whitney_reduce


class InputError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load(text: str):
    """Inline JSON or a path to a JSON file."""
    if text is None:
        raise InputError("--input is required")
    p = Path(text)
    try:
        if not text.lstrip().startswith(("{", "[")) and p.exists():
            return json.loads(p.read_text())
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON: {e}") from None


def _poly(text: str) -> Polynomial:
    obj = _load(text)
    return Polynomial.from_json(obj)


def _rank_set(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad rank set {text!r}") from None


def _cap(value: int, cap: int, what: str) -> None:
    if value > cap:
        raise InputError(f"{what} = {value} exceeds cap {cap}; raise it with the matching --cap flag")


def _matrix(args) -> LowerTriMatrix:
    if args.input is not None:
        R = LowerTriMatrix.from_json(_load(args.input))
        _cap(R.N, args.cap_order, "matrix order")
        return R
    if args.family is None or args.n is None:
        raise InputError("give --input or both --family and --n")
    _cap(args.n, args.cap_order, "matrix order")
    return family_matrix(FamilySpec.parse(args.family, args.n))


def _resolve(R: LowerTriMatrix):
    try:
        return whitney_reduce(R)
    except WhitneyFailure as e:
        raise MathFailure("matrix is not totally nonnegative", e.to_json()) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_tn_check(args):
    R = _matrix(args)
    cert = _resolve(R)
    return {"tn": True, "lambda": cert.to_json()["lambda"]}


def cmd_resolve(args):
    return _resolve(_matrix(args)).to_json()


def cmd_chain(args):
    return chain_polynomials(_matrix(args)).to_json()


def cmd_subdivide(args):
    R = _matrix(args)
    f = _poly(args.poly)
    return {"f": str(f), "E(f)": str(subdivision(R, f)), "coeffs": subdivision(R, f).to_json()["coeffs"]}


def cmd_zeta(args):
    R = _matrix(args)
    i = R.N if args.i is None else args.i
    j = 0 if args.j is None else args.j
    Z = zeta_polynomial(R, i, j)
    return {"i": i, "j": j, "Z": str(Z), "coeffs": Z.to_json()["coeffs"]}


def cmd_mobius(args):
    R = _matrix(args)
    S = _rank_set(args.S)
    n = args.k if args.k is not None else (len(S) - 1 if S and S[0] == 0 else len(S or []) or R.N)
    return {"S": S, "n": n, "mu": frac_str(mobius_rank_selected(R, S, n))}


def cmd_flag_h(args):
    R = _matrix(args)
    S = _rank_set(args.S) or []
    n = args.k if args.k is not None else R.N
    return {"S": S, "n": n, "beta": frac_str(flag_h(R, S, n))}


def cmd_pf(args):
    if args.poly is not None:
        ok, h = is_pf_polynomial_values(_poly(args.poly))
        out = {"pf": ok, "h": str(h), "h_coeffs": h.to_json()["coeffs"]}
    else:
        R = _matrix(args)
        fam = chain_polynomials(R)
        rows = []
        ok = True
        for i in range(R.N + 1):
            v, h = zeta_is_pf(R, i, fam)
            ok &= v
            rows.append({"i": i, "pf": v, "h": str(h)})
        out = {"pf": ok, "rows": rows}
    if not out["pf"]:
        raise MathFailure("not a Pólya frequency sequence", out)
    return out


def cmd_pft(args):
    f = PFGenFun.from_json(_load(args.input))
    n = args.n if args.n is not None else 8
    _cap(n, args.cap_order * 4, "order")
    polys, cert = pft_family(f, n)
    return {"r": [str(p) for p in polys], "certificate": cert.to_json()}


def cmd_forgacs_tran(args):
    Q = _poly(args.poly)
    n = args.n if args.n is not None else 8
    polys, cert = forgacs_tran(Q, args.r if args.r is not None else 1, n)
    return {"q": [str(p) for p in polys], "certificate": cert.to_json()}


def cmd_family(args):
    if args.family is None or args.n is None:
        raise InputError("family needs --family and --n")
    _cap(args.n, args.cap_order, "matrix order")
    spec = FamilySpec.parse(args.family, args.n)
    return {
        "family": spec.label(),
        "matrix": family_matrix(spec).to_json()["rows"],
        "lambda": [[frac_str(x) for x in row] for row in family_lambda_table(spec)],
        "R": [[str(family_rnk(spec, n, k)) for k in range(n + 1)] for n in range(spec.N + 1)],
    }


def cmd_h_vector(args):
    obj = _load(args.input)
    P = FinitePoset.from_json(obj)
    if args.family is None:
        raise InputError("h-vector needs --family")
    spec = FamilySpec.parse(args.family, P.height)
    cert = whitney_reduce(family_matrix(spec))
    try:
        h = h_vector(P, cert)
    except NotFamilyPoset as e:
        raise MathFailure("poset does not belong to the family", {"element": e.y, "message": str(e)}) from None
    out = h.to_json()
    out["nonnegative"] = h.nonnegative
    return out


def cmd_theta(args):
    A = FqArrangement.from_json(_load(args.input))
    return arrangement_theta(A).to_json()


def cmd_critical(args):
    A = FqArrangement.from_json(_load(args.input))
    m = args.m if args.m is not None else 1
    _cap(A.q ** (A.n * m), args.cap_hom, "hom-set size")
    from .qarr import char_poly

    return {"m": m, "count": critical_count(A, m), "chi(q^m)": frac_str(char_poly(A)(A.q**m))}


def cmd_q_shelling(args):
    if args.uniform is not None:
        try:
            n, r, q = (int(x) for x in args.uniform.split(","))
        except ValueError:
            raise InputError("--uniform expects n,r,q") from None
        P = independent_spaces(QMatroid.uniform(n, r, q))
    else:
        P = QPoset.from_json(_load(args.input))
    res = find_shelling(P)
    out = res.to_json()
    if not res.ok:
        raise MathFailure("no shelling found", out)
    out["h"] = q_h_vector(P).to_json()["h"]
    return out


def _cubical_input(args):
    obj = _load(args.input)
    return CubicalComplex.from_json(obj)


def cmd_cubical_h(args):
    if args.poly is not None:
        f = _poly(args.poly)
        n = args.n if args.n is not None else f.degree
        r = int(args.r) if args.r is not None else 2
    else:
        P = _cubical_input(args)
        f, n, r = P.f_polynomial(), P.n, P.r
        complex_h(P)
    out = {"f": str(f), "n": n, "r": r, "h": r_cubical_h(f, n, r).to_json()["h"]}
    if r == 2:
        out["adin_h"] = [frac_str(x) for x in adin_h(f, n)]
    return out


def cmd_cubical_shelling(args):
    P = _cubical_input(args)
    order = _rank_set(args.order)
    res = cubical_shelling_check(P, order)
    if not res.ok:
        raise MathFailure("not a shelling", res.to_json())
    return res.to_json()


def cmd_partition_shelling(args):
    if args.input is not None:
        P = PartitionComplex.from_json(_load(args.input))
    else:
        if args.n is None or args.k is None:
            raise InputError("give --input or --n and --k")
        _cap(args.n, 7, "ground set size")
        P = PartitionComplex.pi_nk(args.n, args.k)
    res = partition_shelling_check(P)
    if not res.ok:
        raise MathFailure("not a shelling", res.to_json())
    return res.to_json()


def cmd_chromatic_expand(args):
    G = SimpleGraph.from_json(_load(args.input))
    _cap(G.n, args.cap_vertices, "vertex count")
    chi = chromatic_poly(G)
    coef, status = falling_basis_expansion(chi, G.n, args.variant)
    chordal, wit = is_chordal(G)
    return {
        "chi": str(chi),
        "sigma": str(sigma_poly(G)),
        "variant": args.variant,
        "expansion": [frac_str(c) for c in coef] if coef is not None else None,
        "status": status,
        "nonnegative": coef is not None and all(c >= 0 for c in coef),
        "chordal": chordal,
        "chordless_cycle": None if chordal else wit,
    }


def _certify_one(payload):
    rows, n = payload
    R = LowerTriMatrix(rows)
    return interlacing_certificate(R, n).to_json()


def cmd_certify(args):
    R = _matrix(args)
    _resolve(R)
    jobs = [(R.to_json()["rows"], n) for n in range(R.N + 1)]
    threads = int(os.environ.get("CHAINPOLY_THREADS", "1") or 1)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            certs = list(ex.map(_certify_one, jobs))
    else:
        certs = [_certify_one(j) for j in jobs]
    return {"certificates": certs}


COMMANDS = {
    "tn-check": (cmd_tn_check, "check total nonnegativity by Whitney reduction"),
    "resolve": (cmd_resolve, "weights lambda and the R_{n,k} triangle"),
    "chain": (cmd_chain, "chain polynomials p_0..p_N"),
    "subdivide": (cmd_subdivide, "apply E(t^n) = p_n to --poly"),
    "zeta": (cmd_zeta, "zeta polynomial of entry (--i, --j)"),
    "mobius": (cmd_mobius, "rank-selected Möbius value for --S"),
    "flag-h": (cmd_flag_h, "flag h-number beta(S) for rank --k"),
    "pf": (cmd_pf, "Pólya frequency checks"),
    "pft": (cmd_pft, "polynomials from a PF generating function"),
    "forgacs-tran": (cmd_forgacs_tran, "polynomials from 1/(Q(x) - t x^r)"),
    "family": (cmd_family, "closed forms for a standard family"),
    "h-vector": (cmd_h_vector, "h-vector of a poset in a family basis"),
    "theta": (cmd_theta, "theta expansion of an F_q arrangement"),
    "critical": (cmd_critical, "critical problem count"),
    "q-shelling": (cmd_q_shelling, "shelling of a q-poset"),
    "cubical-h": (cmd_cubical_h, "cubical h-vectors"),
    "cubical-shelling": (cmd_cubical_shelling, "check a cubical shelling"),
    "partition-shelling": (cmd_partition_shelling, "check a partition-poset shelling"),
    "chromatic-expand": (cmd_chromatic_expand, "chromatic polynomial in the falling basis"),
    "certify": (cmd_certify, "interlacing certificates for every n"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", help="boolean | gaussian:q | cubical:r | partition")
    common.add_argument("--n", type=int, help="truncation order")
    common.add_argument("--S", help="comma-separated rank set")
    common.add_argument("--input", help="inline JSON or a JSON file")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--poly", help="polynomial as JSON coefficient list")
    common.add_argument("--i", type=int)
    common.add_argument("--j", type=int)
    common.add_argument("--k", type=int, help="rank n for mobius/flag-h, block count for partitions")
    common.add_argument("--m", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--order", help="comma-separated facet order")
    common.add_argument("--uniform", help="n,r,q for a uniform q-matroid")
    common.add_argument("--variant", choices=("k", "k_plus_one"), default="k_plus_one")
    common.add_argument("--cap-order", type=int, default=12)
    common.add_argument("--cap-vertices", type=int, default=16)
    common.add_argument("--cap-hom", type=int, default=1 << 24)
    p = _Parser(prog="chainpoly", description="Chain polynomials of totally nonnegative matrices.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_)
    return p


def _table(obj, indent: str = "") -> str:
    lines = []
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_table(v, indent + "  "))
        elif isinstance(v, list):
            lines.append(f"{indent}{k}:")
            for x in v:
                lines.append(f"{indent}  {json.dumps(x, sort_keys=True)}")
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _emit(report: dict, fmt: str, stream) -> None:
    if fmt == "table":
        stream.write(_table(report) + "\n")
    else:
        stream.write(json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        if args.command is None:
            raise InputError("missing subcommand; choose one of: " + ", ".join(COMMANDS))
        result = COMMANDS[args.command][0](args)
        _emit(dict(result, version=__version__), fmt, stdout)
        return 0
    except MathFailure as e:
        _emit({"error": str(e), "witness": e.witness, "version": __version__}, fmt, stdout)
        return 2
    except WhitneyFailure as e:
        _emit({"error": "matrix is not totally nonnegative", "witness": e.to_json(), "version": __version__}, fmt, stdout)
        return 2
    except NonUniformError as e:
        _emit({"error": "poset is not quasi-rank uniform", "witness": str(e), "version": __version__}, fmt, stdout)
        return 2
    except InvariantViolation as e:
        stderr.write(f"internal invariant violated: {e}\n")
        return 2
    except InputError as e:
        stderr.write(f"input error: {e}\n")
        return 1
    except (ValueError, KeyError, TypeError, ZeroDivisionError, ArithmeticError) as e:
        stderr.write(f"input error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

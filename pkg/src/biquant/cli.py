"""Command-line driver. Every command prints a deterministic text report and exits 0 iff all checks hold."""

import argparse
import json
import sys

from .associator import UnsupportedOrder
from .liebialg import AxiomError, build_double, check_axioms, load_json, restriction_report, t_invariance_witness, to_document


class CliError(Exception):
    pass


def _load(path):
    try:
        return load_json(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot parse {path}: {exc}") from exc


def _emit(out, lines):
    for line in lines:
        out.write(line + "\n")


def cmd_check(args, out):
    rep = check_axioms(_load(args.file))
    _emit(out, rep.lines())
    return rep.ok


def cmd_double(args, out):
    dd = build_double(_load(args.file))
    out.write(json.dumps(to_document(dd.double), indent=2) + "\n")
    rep = check_axioms(dd.double)
    _emit(out, rep.lines())
    res = restriction_report(dd)
    _emit(out, res.lines())
    w = t_invariance_witness(dd)
    _emit(out, ["PASS t-invariance" if w is None else f"FAIL t-invariance at {w}"])
    return rep.ok and res.ok and w is None


def cmd_bch(args, out):
    from .cbh import bch, bch_reexpansion_residual

    S = bch(args.order)
    _emit(out, ["deg  coeff word"] + S.lines())
    res = bch_reexpansion_residual(args.order)
    _emit(out, [f"{'PASS' if not res else 'FAIL'} re-expansion matches log(e^X e^Y) through degree {args.order}"])
    return not res


def cmd_pair(args, out):
    from .pairing import gram_triangularity

    L = _load(args.file)
    rep = gram_triangularity(L, args.max_degree, args.order)
    _emit(out, rep.table())
    _emit(out, rep.lines())
    return rep.ok


def cmd_quantize(args, out):
    from .ekquant import QuantizationBundle

    B = QuantizationBundle(_load(args.file), args.order)
    _emit(out, ["J ="] + B.J.render().split("\n"))
    _emit(out, ["R ="] + B.R.render().split("\n"))
    names = B.double.double.names
    for i in range(2 * B.n):
        _emit(out, [f"Delta_h({names[i]}) ="] + B.coproduct_h(B.generator(i)).render().split("\n"))
    rep = B.identity_report()
    _emit(out, rep.lines())
    return rep.ok


def cmd_biquant(args, out):
    from .ekquant import biquant_square_check
    from .envelope import monomials

    rep, B = biquant_square_check(_load(args.file), args.order)
    for j in monomials(B.n, args.order, 1):
        _emit(out, [f"psi+{_idx(j)} ="] + B.psi_plus(j).render().split("\n"))
    for k in monomials(B.n, args.order, 1):
        _emit(out, [f"psi-{_idx(k)} ="] + B.psi_minus(k).render().split("\n"))
    _emit(out, rep.lines())
    return rep.ok


def _idx(j):
    return "(" + ",".join(str(a) for a in j) + ")"


def cmd_oracle(args, out):
    from .oracle_trivial import cross_check

    lines, ok = cross_check(args.dim, args.order)
    _emit(out, lines)
    _emit(out, ["all closed-form checks passed" if ok else "closed-form checks failed"])
    return ok


def _nonneg(text):
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser():
    p = argparse.ArgumentParser(prog="biquant", description="Exact checks for quantized Lie bialgebras.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("check", help="Lie bialgebra axiom report")
    s.add_argument("file")
    s.set_defaults(run=cmd_check)
    s = sub.add_parser("double", help="structure constants of the double")
    s.add_argument("file")
    s.set_defaults(run=cmd_double)
    s = sub.add_parser("bch", help="Campbell-Hausdorff coefficients")
    s.add_argument("--order", type=_positive, default=3)
    s.set_defaults(run=cmd_bch)
    s = sub.add_parser("pair", help="Gram matrix of the E_v pairing")
    s.add_argument("file")
    s.add_argument("--max-degree", type=_nonneg, default=2)
    s.add_argument("--order", type=_nonneg, default=2)
    s.set_defaults(run=cmd_pair)
    s = sub.add_parser("quantize", help="twist, R-matrix and quantized coproduct")
    s.add_argument("file")
    s.add_argument("--order", type=_positive, default=2)
    s.set_defaults(run=cmd_quantize)
    s = sub.add_parser("biquant", help="biquantization square report")
    s.add_argument("file")
    s.add_argument("--order", type=_positive, default=2)
    s.set_defaults(run=cmd_biquant)
    s = sub.add_parser("oracle", help="closed-form cross-check for the trivial bialgebra")
    s.add_argument("--dim", type=_positive, default=2)
    s.add_argument("--order", type=_nonneg, default=3)
    s.set_defaults(run=cmd_oracle)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        ok = args.run(args, out)
    except (CliError, AxiomError, UnsupportedOrder, ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())

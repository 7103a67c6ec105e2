"""``twyb`` command-line entry point.

Every command prints a short human-readable report followed by a JSON block
(the machine-readable part), and embeds SHA-256 digests of its input files.
Output on stdout is deterministic; elapsed time goes to stderr.
Exit codes: 0 ok, 1 mathematical failure, 2 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import cochain as cc
from .diagram import (PDError, alexander_numbering, brute_force_colorings,
                      enumerate_colorings, parse_pd)
from .extension import ExtensionData, build_extension, extension_cocycle
from .formats import (FormatError, read_cochain, read_structure, read_triple_points,
                      write_cochain, write_cochains, write_structure)
from .statesum import (InvalidCocycleError, StateSumSpec, UNDEFINED, mod_p_state_sum,
                       normalize_up_to_T, state_sum, surface_state_sum)
from .yb import (EquivarianceError, classify, equivariance_witness, twisted_operator,
                 ybe_witness)

EXIT_OK, EXIT_MATH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class Report:
    def __init__(self, command, argv):
        self.command = command
        self.argv = list(argv)
        self.digests = {}
        self.lines = []
        self.result = {}

    def read(self, path):
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.digests[path] = hashlib.sha256(data).hexdigest()
        return data.decode()

    def text_or_file(self, arg):
        """Inline text, or the contents of ``arg`` when it names a file."""
        if os.path.isfile(arg):
            return self.read(arg)
        self.digests["<inline>"] = hashlib.sha256(arg.encode()).hexdigest()
        return arg

    def say(self, line):
        self.lines.append(line)

    def render(self):
        block = {"command": self.command, "argv": self.argv,
                 "inputs": dict(sorted(self.digests.items())), "result": self.result}
        return "\n".join(self.lines + ["--- json", json.dumps(block, indent=2, sort_keys=True)]) + "\n"


def _module(text):
    try:
        n, u = (int(v) for v in text.split(","))
        return cc.CoefficientModule(n, u)
    except ValueError as exc:
        raise InputError(f"--module expects N,u with u a unit mod N ({exc})") from None


def _twist(text):
    try:
        t, m1, m2 = (int(v) for v in text.split(","))
    except ValueError:
        raise InputError("--twist expects t,m1,m2") from None
    return t, m1, m2


def _params(args, variant=None):
    t, m1, m2 = _twist(args.twist)
    mode = cc.TwistMode(args.mode)
    try:
        return cc.TwistParams(t, m1, m2, variant or cc.Variant(args.variant), mode)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _structure(rep, path):
    return read_structure(rep.read(path))


def _yesno(flag):
    return "yes" if flag else "no"


# --------------------------------------------------------------------------
# commands

def cmd_verify(args, rep):
    sf = _structure(rep, args.structure)
    w = ybe_witness(sf.op)
    rep.say(f"ybe: {_yesno(w is None)}" + (f" (witness {w})" if w else ""))
    rep.result["ybe"] = w is None
    if w is not None:
        rep.result["witness"] = list(w)
        return EXIT_MATH
    cls = classify(sf.op)
    rep.say(f"birack: {_yesno(cls.is_birack)}")
    rep.say(f"biquandle: {_yesno(cls.is_biquandle)}")
    rep.result.update(birack=cls.is_birack, biquandle=cls.is_biquandle)
    # without a twist line the identity twist is checked (always passes)
    perm = sf.twist.perm if sf.twist is not None else list(range(sf.op.size))
    tw_w = equivariance_witness(sf.op, perm)
    rep.say(f"twist: {_yesno(tw_w is None)}" + (f" (witness {tw_w})" if tw_w else ""))
    rep.result["twist"] = tw_w is None
    if tw_w is not None:
        rep.result["twist_witness"] = list(tw_w)
        return EXIT_MATH
    return EXIT_OK


def cmd_twist_op(args, rep):
    sf = _structure(rep, args.structure)
    try:
        tw = sf.twisted()
    except EquivarianceError as exc:
        rep.say(f"twist: no ({exc})")
        return EXIT_MATH
    op = twisted_operator(tw, args.t) if args.t else tw.op
    text = write_structure(op, sf.twist)
    rep.say(f"twisted operator t={args.t}: {classify(op)}")
    rep.say(text.rstrip())
    rep.result.update(t=args.t, ybe=ybe_witness(op) is None, r1=op.r1.tolist(), r2=op.r2.tolist())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return EXIT_OK


def _twisted(rep, path):
    sf = _structure(rep, path)
    try:
        return sf, sf.twisted()
    except EquivarianceError as exc:
        raise InputError(str(exc)) from None


def _orders(res, what):
    orders = getattr(res, f"{what}_orders")
    return "0" if not orders else " x ".join(f"Z_{o}" if o else "Z" for o in orders)


def cmd_cocycles(args, rep):
    _, tw = _twisted(rep, args.structure)
    M = _module(args.module)
    params = _params(args)
    try:
        res = cc.cohomology(tw, params, args.degree, M)
    except cc.SizeGuardError as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    n = args.degree
    rep.say(f"module: {M}; twist (t,m1,m2) = {params.t},{params.m1},{params.m2}; "
            f"variant {params.variant.value}; mode {params.mode.value}")
    if M.is_prime:
        rep.say(f"dim Z^{n} = {res.dim_cocycles}")
        rep.say(f"dim B^{n} = {res.dim_coboundaries}")
        rep.say(f"dim H^{n} = {res.betti}")
    rep.say(f"Z^{n} = {_orders(res, 'cycle')}")
    rep.say(f"B^{n} = {_orders(res, 'boundary')}")
    rep.say(f"H^{n} = {_orders(res, 'homology')}")
    zero = cc.Cochain.zero(tw.size, n, M.modulus)
    rep.say(f"zero cochain is a cocycle: {_yesno(cc.cocycle_check(tw, params, zero, M).ok)}")
    rep.say(f"basis: {len(res.basis)} generators")
    rep.result.update(degree=n, cocycle_orders=res.cycle_orders,
                      coboundary_orders=res.boundary_orders,
                      cohomology_orders=res.homology_orders)
    text = write_cochains(res.basis, M)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        rep.say(text.rstrip())
    return EXIT_OK


def cmd_homology(args, rep):
    _, tw = _twisted(rep, args.structure)
    M = _module(args.module)
    params = _params(args)
    try:
        hom, coh = cc.homology_dims(tw, params, args.degree, M)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    n = args.degree
    rep.say(f"H_{n} = {_orders(hom, 'homology')}")
    rep.result["homology_orders"] = hom.homology_orders
    if coh is not None:
        rep.say(f"H^{n} = {_orders(coh, 'homology')}")
        rep.result["cohomology_orders"] = coh.homology_orders
    if M.is_prime:
        rep.say(f"betti_{n} = {hom.betti}")
        rep.result["betti"] = hom.betti
    return EXIT_OK


def _diagram(rep, arg, normal=None):
    try:
        return parse_pd(rep.text_or_file(arg), normal=normal)
    except PDError as exc:
        raise InputError(f"PD code: {exc}") from None


def cmd_color(args, rep):
    sf, tw = _twisted(rep, args.structure)
    d = _diagram(rep, args.diagram)
    if not classify(tw.op).is_biquandle:
        raise InputError("coloring needs a biquandle")
    cols = brute_force_colorings(d, tw) if args.brute_force else enumerate_colorings(d, tw)
    rep.say(f"crossings: {d.n_crossings}; signs: {' '.join('+' if s > 0 else '-' for s in d.signs)}")
    rep.say(f"colorings: {len(cols)}")
    for col in cols:
        rep.say("  " + " ".join(f"{k}={sf.labels[v]}" for k, v in col.items()))
    rep.result.update(count=len(cols), colorings=[list(c.values()) for c in cols])
    return EXIT_OK


def _spec(rep, args, tw, degree):
    c, M = read_cochain(rep.read(args.cocycle), tw.size)
    if c.degree != degree:
        raise InputError(f"cocycle must have degree {degree}, got {c.degree}")
    return StateSumSpec(c, args.n, M, mode=cc.TwistMode(args.mode))


def cmd_invariant(args, rep):
    _, tw = _twisted(rep, args.structure)
    d = _diagram(rep, args.diagram)
    spec = _spec(rep, args, tw, 2)
    try:
        if args.mod_p:
            numbering = None
            if args.numbering == "undefined":
                numbering = UNDEFINED
            elif args.numbering:
                numbering = [int(v) for v in args.numbering.split(",")]
            phi = mod_p_state_sum(d, tw, spec, tw.twist.order, numbering)
        else:
            phi = state_sum(d, tw, spec)
    except InvalidCocycleError as exc:
        rep.say(f"rejected: {exc}")
        return EXIT_MATH
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.say(f"phi = {phi}")
    rep.result["phi"] = {str(k): v for k, v in phi.coeffs.items()}
    if args.normalize_T:
        norm = normalize_up_to_T(phi, spec.module)
        rep.say(f"phi up to T = {norm}")
        rep.result["phi_up_to_T"] = {str(k): v for k, v in norm.coeffs.items()}
    if d.crossings:
        rm = alexander_numbering(d)
        rep.result["crossing_numbers"] = rm.crossing_numbering
    return EXIT_OK


def cmd_surface_invariant(args, rep):
    _, tw = _twisted(rep, args.structure)
    try:
        data = read_triple_points(rep.read(args.triples))
    except FormatError as exc:
        raise InputError(str(exc)) from None
    spec = _spec(rep, args, tw, 3)
    try:
        phi = surface_state_sum(data, tw, spec)
    except InvalidCocycleError as exc:
        rep.say(f"rejected: {exc}")
        return EXIT_MATH
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.say(f"phi = {phi}")
    rep.result["phi"] = {str(k): v for k, v in phi.coeffs.items()}
    return EXIT_OK


def cmd_extension(args, rep):
    _, tw = _twisted(rep, args.structure)
    M = _module(args.module)
    maps = []
    for path in (args.phi1, args.phi2):
        c, m = read_cochain(rep.read(path), tw.size)
        if c.degree != 2 or m.modulus != M.modulus:
            raise InputError(f"{path}: expected a degree-2 cochain into Z_{M.modulus}")
        maps.append(c)
    try:
        ext = ExtensionData(tw, M, maps[0], maps[1], args.m1, args.m2)
        built = build_extension(ext)
        res = extension_cocycle(ext, built)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.say(f"S is YB: {_yesno(built.is_yb)}")
    rep.say(f"cocycle: {_yesno(res.is_cocycle)}")
    rep.result.update(S_is_yb=built.is_yb, cocycle=res.is_cocycle)
    if res.shifted_claim is not None:
        rep.say(f"cocycle for shift ({args.m1},{args.m2}): {_yesno(res.shifted_claim)}")
        rep.result["shifted_cocycle"] = res.shifted_claim
    text = write_cochain(res.cochain, M)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        rep.say(text.rstrip())
    return EXIT_OK


# --------------------------------------------------------------------------

def _add_complex_flags(p, variants):
    p.add_argument("structure")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--module", default="2,1", help="N,u")
    p.add_argument("--twist", default="0,0,0", help="t,m1,m2")
    p.add_argument("--variant", choices=variants, default="tyb")
    p.add_argument("--mode", choices=["coord", "scalar"], default="coord")


def build_parser():
    parser = argparse.ArgumentParser(prog="twyb", description=__doc__.splitlines()[0])
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker bound (computations run single-threaded)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check YBE, birack/biquandle axioms and twist")
    p.add_argument("structure")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("twist-op", help="print the twisted operator")
    p.add_argument("structure")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_twist_op)

    p = sub.add_parser("cocycles", help="cocycle basis and cohomology in one degree")
    _add_complex_flags(p, ["tyb", "tbq"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_cocycles)

    p = sub.add_parser("homology", help="homology and cohomology in one degree")
    _add_complex_flags(p, ["tyb", "tbq", "td"])
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("color", help="colorings of a PD diagram")
    p.add_argument("--diagram", required=True, help="PD file or inline code")
    p.add_argument("--structure", required=True)
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_color)

    for name, func, needs in (("invariant", cmd_invariant, "--diagram"),
                              ("surface-invariant", cmd_surface_invariant, "--triples")):
        p = sub.add_parser(name, help=f"cocycle state sum ({name})")
        p.add_argument(needs, required=True)
        p.add_argument("--structure", required=True)
        p.add_argument("--cocycle", required=True)
        p.add_argument("--n", type=int, default=1)
        p.add_argument("--mode", choices=["coord", "scalar"], default="coord")
        if name == "invariant":
            p.add_argument("--mod-p", action="store_true")
            p.add_argument("--numbering", help="comma-separated residues or 'undefined'")
            p.add_argument("--normalize-T", dest="normalize_T", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("extension", help="abelian extension by two maps")
    p.add_argument("--structure", required=True)
    p.add_argument("--module", required=True)
    p.add_argument("--phi1", required=True)
    p.add_argument("--phi2", required=True)
    p.add_argument("--m1", type=int, default=0)
    p.add_argument("--m2", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extension)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(args.command, argv)
    start = time.perf_counter()
    try:
        status = args.func(args, rep)
    except (InputError, FormatError, PDError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render())
    print(f"elapsed: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
FDQ Workbench - Main Orchestrator
Exact deformation quantization of polynomial field symbols, normal forms of
differential operators and desk-scale lattice Schrodinger dynamics
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Import project modules
from enveloping.rewriting import LEFTMOST, RANDOM, normal_form
from enveloping.words import involution
from expr.evaluate import parse_symbol, parse_word
from expr.printer import print_symbol
from lattice.config import LatticeConfig
from lattice.dyson import dyson, dyson_sum, exact_s_matrix, s_matrix, series_distance, vacuum_persistence
from lattice.evolution import INTERACTION, PICTURES, SCHRODINGER, evolve
from lattice.flow import METHODS, PhasePoint, classical_flow
from lattice.hamiltonian import LatticeHamiltonian, lattice_symbol
from lattice.output import run_document, write_json
from star.context import DiffContext
from star.products import NORMAL_TO_WEYL, WEYL_TO_NORMAL, normal_star, ordering_transform, weyl_star
from star.wick import wick_transform
from symbols.calculus import bidegree_decompose, functional_derivative, poisson_bracket
from symbols.serialization import symbol_to_json
from symbols.symbol import ModeSpace
from utils.errors import FDQError, ParseError, ValidationError
from utils.logger import logger

EXIT_OK = 0


@dataclass
class CliResult:
    """Exit code plus what goes to stdout"""

    exit_code: int = EXIT_OK
    text: str = ""
    payload: object = None


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors become validation errors instead of exiting"""

    def error(self, message):
        raise ValidationError(f"{self.prog}: {message}")


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"Expected a rational number, got {text!r}")


class Workbench:
    """Dispatches each subcommand to the algebra and dynamics packages"""

    def _symbol_result(self, symbol):
        return CliResult(text=print_symbol(symbol), payload=symbol_to_json(symbol))

    def bracket(self, a, b, modes):
        space = ModeSpace(modes)
        return self._symbol_result(poisson_bracket(parse_symbol(a, space), parse_symbol(b, space)))

    def star(self, kind, a, b, modes, lam):
        ctx = DiffContext.from_label(modes, lam)
        product = normal_star if kind == "normal" else weyl_star
        return self._symbol_result(product(parse_symbol(a, ctx.space), parse_symbol(b, ctx.space), ctx))

    def renorm(self, a, direction, modes, lam):
        ctx = DiffContext.from_label(modes, lam)
        direction = WEYL_TO_NORMAL if direction == "weyl-to-normal" else NORMAL_TO_WEYL
        return self._symbol_result(ordering_transform(parse_symbol(a, ctx.space), ctx, direction))

    def nf(self, word, modes, lam, strategy=LEFTMOST, seed=None):
        ctx = DiffContext.from_label(modes, lam)
        element = normal_form(parse_word(word, ctx.space), ctx, strategy, seed)
        return self._symbol_result(element.nf)

    def involution(self, word, modes, lam):
        ctx = DiffContext.from_label(modes, lam)
        image = involution(parse_word(word, ctx.space), ctx)
        return self._symbol_result(normal_form(image, ctx).nf)

    def wick(self, a, omega, modes, lam):
        ctx = DiffContext.from_label(modes, lam)
        if len(omega) == 1 and modes > 1:
            omega = omega * modes
        result = wick_transform(parse_symbol(a, ctx.space), omega, ctx)
        payload = symbol_to_json(result.symbol)
        payload["omega"] = [str(w) for w in result.omega]
        return CliResult(text=print_symbol(result.symbol), payload=payload)

    def decompose(self, a, modes):
        components = bidegree_decompose(parse_symbol(a, ModeSpace(modes)))
        lines = [f"({k},{l}): {print_symbol(part)}" for k, l, part in components]
        payload = [{"k": k, "l": l, "symbol": symbol_to_json(part)} for k, l, part in components]
        return CliResult(text="\n".join(lines) if lines else "0", payload=payload)

    def derive(self, a, var, mode, modes):
        symbol = parse_symbol(a, ModeSpace(modes))
        return self._symbol_result(functional_derivative(symbol, var, mode))

    def evolve(self, config, order, out, picture):
        cfg = LatticeConfig.load(config)
        lattice = LatticeHamiltonian(cfg)
        exact = evolve(cfg, picture=picture, lattice=lattice)
        matrices = {"U": exact}
        residuals = {}
        if order is not None:
            terms = dyson(cfg, order, lattice)
            for n, term in enumerate(terms):
                matrices[f"dyson_{n}"] = term
            interaction = exact if picture == INTERACTION else evolve(cfg, picture=INTERACTION, lattice=lattice)
            residuals["dyson_sum_vs_exact"] = series_distance(dyson_sum(terms), interaction, cfg)
            logger.log_residual(f"Dyson sum vs exact (order {order})", residuals["dyson_sum_vs_exact"])
        document = run_document(cfg, "evolve", order, matrices, residuals,
                                exact.meta.get("unitarity_defect"), {"picture": picture})
        if out:
            write_json(out, document)
        return CliResult(text=self._summary(document["meta"]), payload=document["meta"])

    def smatrix(self, config, order, out):
        cfg = LatticeConfig.load(config)
        lattice = LatticeHamiltonian(cfg)
        series = s_matrix(cfg, order, lattice)
        exact = exact_s_matrix(cfg, lattice)
        residuals = {"series_vs_exact": series_distance(series, exact, cfg)}
        logger.log_residual(f"S-series vs exact (order {order})", residuals["series_vs_exact"])
        vacuum = vacuum_persistence(cfg, order, lattice)
        document = run_document(cfg, "smatrix", order, {"S": series, "S_exact": exact}, residuals,
                                series.meta["unitarity_defect"],
                                {"vacuum_persistence": [vacuum.real, vacuum.imag]})
        if out:
            write_json(out, document)
        return CliResult(text=self._summary(document["meta"]), payload=document["meta"])

    def flow(self, config, hamiltonian, t, dt, method, phi, pi, out):
        cfg = LatticeConfig.load(config)
        space = ModeSpace(cfg.sites)
        symbol = parse_symbol(hamiltonian, space) if hamiltonian else lattice_symbol(cfg, cfg.t0)
        start = PhasePoint(phi or [0.0] * cfg.sites, pi or [0.0] * cfg.sites)
        if start.modes != cfg.sites:
            raise ValidationError(f"Initial point has {start.modes} modes, configuration has {cfg.sites} sites")
        trajectory = classical_flow(symbol, start, t, cfg.dt if dt is None else dt, method, h=cfg.hbar)
        document = trajectory.to_json()
        if out:
            write_json(out, document)
        final = trajectory.final
        text = "\n".join([
            f"method: {trajectory.method}",
            "phi: " + " ".join(f"{x:.12g}" for x in final.phi),
            "pi: " + " ".join(f"{x:.12g}" for x in final.pi),
            f"energy_drift: {trajectory.energy_drift:.6e}",
        ])
        summary = {"method": trajectory.method, "final": final.to_json(), "energy_drift": trajectory.energy_drift}
        return CliResult(text=text, payload=summary)

    @staticmethod
    def _summary(meta):
        lines = []
        for key in sorted(meta):
            value = meta[key]
            if isinstance(value, float):
                value = f"{value:.6e}"
            elif isinstance(value, dict):
                value = ", ".join(f"{k}={v:.6e}" for k, v in sorted(value.items())) or "-"
            lines.append(f"{key}: {value}")
        return "\n".join(lines)


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('--modes', type=int, default=1, help='Number of field modes (default: 1)')
    common.add_argument('--json', action='store_true', help='Print canonical JSON instead of text')
    algebra = _ArgumentParser(add_help=False, parents=[common])
    algebra.add_argument('--lambda', dest='lam', default='-ih', help='Deformation scalar: h, -h, ih or -ih (default: -ih)')

    parser = _ArgumentParser(prog='fdq', description='Exact deformation quantization workbench')
    commands = parser.add_subparsers(dest='command', required=True, parser_class=_ArgumentParser)

    bracket = commands.add_parser('bracket', parents=[common], help='Poisson bracket {A, B}')
    bracket.add_argument('a')
    bracket.add_argument('b')

    star = commands.add_parser('star', parents=[algebra], help='Star product A * B')
    star.add_argument('--kind', choices=['normal', 'weyl'], default='normal')
    star.add_argument('a')
    star.add_argument('b')

    renorm = commands.add_parser('renorm', parents=[algebra], help='Ordering transition between Weyl and normal symbols')
    renorm.add_argument('a')
    renorm.add_argument('--direction', choices=['weyl-to-normal', 'normal-to-weyl'], default='weyl-to-normal')

    nf = commands.add_parser('nf', parents=[algebra], help='Normal form of a word of first-order symbols')
    nf.add_argument('word')
    nf.add_argument('--strategy', choices=[LEFTMOST, RANDOM], default=LEFTMOST)
    nf.add_argument('--seed', type=int, default=None)

    invol = commands.add_parser('involution', parents=[algebra], help='Normal form of the involution of a word')
    invol.add_argument('word')

    wick = commands.add_parser('wick', parents=[algebra], help='Rewrite a symbol in Wick variables')
    wick.add_argument('a')
    wick.add_argument('--omega', nargs='+', type=_rational, default=[Fraction(1)],
                      help='Positive rational frequency per mode (one value applies to all modes)')

    decompose = commands.add_parser('decompose', parents=[common], help='Bidegree components of a symbol')
    decompose.add_argument('a')

    derive = commands.add_parser('derive', parents=[common], help='Functional derivative of a symbol')
    derive.add_argument('a')
    derive.add_argument('--var', choices=['phi', 'pi'], required=True)
    derive.add_argument('--mode', type=int, required=True)

    for name, text in (('evolve', 'Evolution operator and Dyson terms'), ('smatrix', 'Truncated S-matrix')):
        run = commands.add_parser(name, parents=[common], help=text)
        run.add_argument('--config', required=True, help='Lattice configuration JSON file')
        run.add_argument('--order', type=int, default=None if name == 'evolve' else 2)
        run.add_argument('--out', default=None, help='Output JSON file')
        if name == 'evolve':
            run.add_argument('--picture', choices=list(PICTURES), default=SCHRODINGER)

    flow = commands.add_parser('flow', parents=[common], help='Classical Hamiltonian flow')
    flow.add_argument('--config', required=True)
    flow.add_argument('--hamiltonian', default=None, help='Symbol expression (default: the lattice Hamiltonian at t0)')
    flow.add_argument('--t', type=float, required=True, help='Flow time')
    flow.add_argument('--dt', type=float, default=None)
    flow.add_argument('--method', choices=list(METHODS), default=METHODS[0])
    flow.add_argument('--phi', type=float, nargs='+', default=None)
    flow.add_argument('--pi', type=float, nargs='+', default=None)
    flow.add_argument('--out', default=None)
    return parser


def _dispatch(workbench, args):
    if args.command == 'bracket':
        return workbench.bracket(args.a, args.b, args.modes)
    if args.command == 'star':
        return workbench.star(args.kind, args.a, args.b, args.modes, args.lam)
    if args.command == 'renorm':
        return workbench.renorm(args.a, args.direction, args.modes, args.lam)
    if args.command == 'nf':
        return workbench.nf(args.word, args.modes, args.lam, args.strategy, args.seed)
    if args.command == 'involution':
        return workbench.involution(args.word, args.modes, args.lam)
    if args.command == 'wick':
        return workbench.wick(args.a, args.omega, args.modes, args.lam)
    if args.command == 'decompose':
        return workbench.decompose(args.a, args.modes)
    if args.command == 'derive':
        return workbench.derive(args.a, args.var, args.mode, args.modes)
    if args.command == 'evolve':
        return workbench.evolve(args.config, args.order, args.out, args.picture)
    if args.command == 'smatrix':
        return workbench.smatrix(args.config, args.order, args.out)
    return workbench.flow(args.config, args.hamiltonian, args.t, args.dt, args.method, args.phi, args.pi, args.out)


def _attach_option_values(argv):
    """Glue '--lambda -ih' into '--lambda=-ih' so argparse does not read the value as a flag"""
    joined = []
    items = list(argv)
    index = 0
    while index < len(items):
        if items[index] == '--lambda' and index + 1 < len(items):
            joined.append(f"--lambda={items[index + 1]}")
            index += 2
        else:
            joined.append(items[index])
            index += 1
    return joined


def run(argv=None):
    """Parse argv and execute one subcommand; expected failures become exit codes"""
    try:
        argv = sys.argv[1:] if argv is None else argv
        args = build_parser().parse_args(_attach_option_values(argv))
        if args.modes < 1:
            raise ValidationError(f"--modes must be at least 1, got {args.modes}")
        workbench = Workbench()
        logger.debug(f"Running {args.command}")
        result = _dispatch(workbench, args)
        if args.json:
            result.text = json.dumps(result.payload, sort_keys=True, separators=(",", ":"))
        return result
    except ParseError as e:
        logger.error(f"Parse error: {e.message}")
        return CliResult(e.exit_code, "", {"error": e.message, "detail": e.caret()})
    except FDQError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return CliResult(e.exit_code, "", {"error": str(e)})


def main(argv=None):
    """Main entry point"""
    result = run(argv)
    if result.exit_code == EXIT_OK:
        print(result.text)
    else:
        print(f"error: {result.payload['error']}", file=sys.stderr)
        detail = result.payload.get('detail')
        if detail and detail != result.payload['error']:
            print(detail, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())

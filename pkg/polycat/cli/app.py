import argparse
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv

from polycat.cli import codec, engine
from polycat.finset.finite_sets import PolycatError, ValidationError
from polycat.monoidal.composition import DEFAULT_BUDGET, BudgetExceeded
from polycat.simplex.delta import MAX_BOUND

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Raises instead of exiting so that usage errors also end up as a JSON error object"""

    def error(self, message):
        raise UsageError(message)


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {value!r}") from None


def _env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes", "on")


def _values(text: str) -> List[int]:
    """Monotone map values, as ``1,3`` or as a JSON integer array ``[1, 3]``"""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1].strip()
    if text == "":
        return []
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> ArgumentParser:
    # Create parser
    parser = ArgumentParser(prog="polycat", description="Polynomial functors over finite sets")
    parser.add_argument(
        "--budget",
        type=int,
        help="Largest intermediate set any operation may build",
        default=_env_int("POLYCAT_BUDGET", DEFAULT_BUDGET),
    )
    parser.add_argument(
        "--debug",
        action="store_true",
        help="Whether to log at debug level",
        default=_env_flag("POLYCAT_DEBUG"),
    )
    commands = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    commands.required = True

    cmd = commands.add_parser("eval", help="Evaluate a polynomial on a finite set")
    cmd.add_argument("--poly", required=True, help="Polynomial JSON file")
    cmd.add_argument("--set", required=True, help="Set JSON file")

    cmd = commands.add_parser("hom", help="Count (and optionally list) the maps between two polynomials")
    cmd.add_argument("--poly", required=True, nargs=2, metavar=("SRC", "DST"))
    cmd.add_argument("--list", action="store_true", help="List every map by label")

    cmd = commands.add_parser("compose", help="Composition product p1 ∘ p2")
    cmd.add_argument("--poly", required=True, nargs=2, metavar=("P1", "P2"))

    cmd = commands.add_parser("iterate", help="Sizes of the iterated self-composites")
    cmd.add_argument("--poly", required=True)
    cmd.add_argument("--levels", "--n", dest="levels", type=int, required=True)

    cmd = commands.add_parser("coclosure", help="The coclosure [p ⟦ p1] and its unit")
    cmd.add_argument("--poly", required=True, nargs=2, metavar=("P", "P1"))

    cmd = commands.add_parser("product", help="Binary product of polynomials")
    cmd.add_argument("--poly", required=True, nargs=2, metavar=("P1", "P2"))

    cmd = commands.add_parser("coproduct", help="Coproduct of polynomials")
    cmd.add_argument("--poly", required=True, nargs="+")

    cmd = commands.add_parser("coequalizer", help="Coequalizer of two parallel maps")
    cmd.add_argument("--input", required=True, help='JSON object {"f": map, "g": map}, optionally with shared "src" and "dst"')

    for name in ("limit", "colimit"):
        cmd = commands.add_parser(name, help=f"The {name} of a diagram of sets or polynomials")
        cmd.add_argument("--input", required=True, help="Diagram JSON file")

    comonad = commands.add_parser("comonad", help="Polynomial comonoids")
    comonad_commands = comonad.add_subparsers(dest="action", parser_class=ArgumentParser)
    comonad_commands.required = True
    for name in ("check", "to-category"):
        cmd = comonad_commands.add_parser(name)
        cmd.add_argument("--input", required=True, help="Comonoid JSON file")

    category = commands.add_parser("category", help="Small categories")
    category_commands = category.add_subparsers(dest="action", parser_class=ArgumentParser)
    category_commands.required = True
    for name in ("check", "to-comonad"):
        cmd = category_commands.add_parser(name)
        cmd.add_argument("--input", required=True, help="Category JSON file")

    retro = commands.add_parser("retrofunctor", help="Retrofunctors between comonoids")
    retro_commands = retro.add_subparsers(dest="action", parser_class=ArgumentParser)
    retro_commands.required = True
    cmd = retro_commands.add_parser("check")
    cmd.add_argument("--input", required=True, help='JSON object {"src": comonoid, "dst": comonoid, "map": polymap}')

    simplex = commands.add_parser("simplex", help="The functors e and e₊ between simplex categories")
    simplex_commands = simplex.add_subparsers(dest="action", parser_class=ArgumentParser)
    simplex_commands.required = True
    cmd = simplex_commands.add_parser("e", help="e on a Δ^op morphism given as a monotone {1..n} -> {1..m}")
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--m", type=int, required=True)
    cmd.add_argument("--map", "--values", dest="values", type=_values, required=True)
    cmd = simplex_commands.add_parser("e-plus", help="e₊ on a monotone map [m] -> [n]")
    cmd.add_argument("--m", type=int, required=True)
    cmd.add_argument("--n", type=int, required=True)
    cmd.add_argument("--map", "--values", dest="values", type=_values, required=True)
    cmd = simplex_commands.add_parser("verify", help="Exhaustive checks of e up to a bound")
    cmd.add_argument(
        "--bound",
        type=int,
        default=_env_int("POLYCAT_SIMPLEX_BOUND", MAX_BOUND),
    )

    nerve = commands.add_parser("nerve", help="The cosimplicial set of a comonoid and the nerve oracle")
    nerve_commands = nerve.add_subparsers(dest="action", parser_class=ArgumentParser)
    nerve_commands.required = True
    cmd = nerve_commands.add_parser("build")
    cmd.add_argument("--input", required=True, help="Comonoid JSON file")
    cmd.add_argument("--levels", type=int, default=2)
    cmd.add_argument("--check", default="segal", help="Comma separated: " + ",".join(engine.NERVE_CHECKS))
    cmd = nerve_commands.add_parser("oracle")
    cmd.add_argument("--input", required=True, help="Category JSON file")
    cmd.add_argument("--levels", type=int, default=2)
    return parser


def _pair(path: str, first: str, second: str):
    data = codec.load_json(path)
    if not isinstance(data, dict) or first not in data or second not in data:
        raise ValidationError(f"Expected fields {first!r} and {second!r}", code="malformed-json", location=path)
    return data[first], data[second]


def dispatch(args: argparse.Namespace, poly_engine: engine.PolyEngine) -> dict:
    def polys(paths):
        return [codec.decode_polynomial(codec.load_json(p), p) for p in paths]

    command = args.command
    if command == "eval":
        return poly_engine.evaluate(*polys([args.poly]), codec.decode_set(codec.load_json(args.set), args.set))
    if command == "hom":
        return poly_engine.hom(*polys(args.poly), list_maps=args.list)
    if command == "compose":
        return poly_engine.compose(*polys(args.poly))
    if command == "iterate":
        return poly_engine.iterate(*polys([args.poly]), args.levels)
    if command == "coclosure":
        return poly_engine.coclosure(*polys(args.poly))
    if command == "product":
        return poly_engine.product(*polys(args.poly))
    if command == "coproduct":
        return poly_engine.coproduct(polys(args.poly))
    if command == "coequalizer":
        return poly_engine.coequalizer(*codec.decode_parallel(codec.load_json(args.input), args.input))
    if command == "limit":
        return poly_engine.limit(codec.decode_diagram(codec.load_json(args.input)))
    if command == "colimit":
        return poly_engine.colimit(codec.decode_diagram(codec.load_json(args.input)))
    if command == "comonad":
        c = codec.decode_comonoid(codec.load_json(args.input))
        if args.action == "check":
            return poly_engine.comonad_check(c)
        return poly_engine.comonad_to_category(c)
    if command == "category":
        c = codec.decode_category(codec.load_json(args.input))
        if args.action == "check":
            return poly_engine.category_check(c)
        return poly_engine.category_to_comonad(c)
    if command == "retrofunctor":
        data = codec.load_json(args.input)
        src, dst = _pair(args.input, "src", "dst")
        src, dst = codec.decode_comonoid(src, "src"), codec.decode_comonoid(dst, "dst")
        if "map" not in data:
            raise ValidationError("Expected field 'map'", code="malformed-json", location=args.input)
        return poly_engine.retrofunctor_check(src, dst, codec.decode_polymap(data["map"], src.carrier, dst.carrier, "map"))
    if command == "simplex":
        if args.action == "e":
            return poly_engine.simplex_e(args.n, args.m, args.values)
        if args.action == "e-plus":
            return poly_engine.simplex_e_plus(args.m, args.n, args.values)
        return poly_engine.simplex_verify(args.bound)
    if command == "nerve":
        if args.action == "build":
            c = codec.decode_comonoid(codec.load_json(args.input))
            return poly_engine.nerve_build(c, args.levels, engine.parse_checks(args.check))
        return poly_engine.nerve_oracle(codec.decode_category(codec.load_json(args.input)), args.levels)
    raise UsageError(f"Unknown command {command!r}")


def _error(code: str, message: str, location: Optional[str] = None) -> str:
    return codec.dumps({"error": {"code": code, "message": message, "location": location}})


def run(argv: Optional[List[str]] = None) -> int:
    """Parses ``argv``, runs the command and prints one JSON document; returns the exit code"""
    load_dotenv()
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(_error("usage", str(e)))
        return EXIT_USAGE

    # Setup logging
    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s %(threadName)s : %(message)s",
        stream=sys.stderr,
    )
    logger = logging.getLogger(__name__)

    poly_engine = engine.PolyEngine(
        budget=args.budget,
        max_bound=_env_int("POLYCAT_SIMPLEX_BOUND", MAX_BOUND),
        debug=args.debug,
    )
    try:
        result = dispatch(args, poly_engine)
    except UsageError as e:
        print(_error("usage", str(e)))
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(codec.dumps({"error": e.to_dict()}))
        return EXIT_BUDGET
    except ValidationError as e:
        logger.info("Rejected input: %s", e)
        print(codec.dumps({"error": e.to_dict()}))
        return EXIT_VALIDATION
    except PolycatError as e:
        print(codec.dumps({"error": e.to_dict()}))
        return EXIT_INTERNAL
    except Exception as e:
        logger.exception("Internal error")
        print(_error("internal", f"{type(e).__name__}: {e}"))
        return EXIT_INTERNAL
    print(codec.dumps(result))
    return EXIT_OK


def main():
    sys.exit(run())

"""Batch command-line front end. JSON in, JSON or one status line out.

Exit status: 0 on success, 1 when a check fails or a module raises, 2 when an
input file cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import classes, contraction, curves, degeneration, serialize, trees
from .errors import ChowTreesError, MalformedInput

SUBCOMMANDS = (
    "validate",
    "contract",
    "cycle",
    "class",
    "limit",
    "check-limit",
    "forget",
    "separate",
    "chowform",
    "all-ones",
)


class _Fail(Exception):
    """A check ran and came out negative; carries the text to print."""


def _read(path, kind):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise MalformedInput(f"cannot read {kind} file: {e.strerror}", path) from None
    return serialize.parse_json(text, path)


def _one(values, flag):
    if not values:
        raise MalformedInput(f"{flag} is required")
    if len(values) > 1:
        raise MalformedInput(f"{flag} given {len(values)} times, expected once")
    return values[0]


def _tree(args, index=None):
    paths = args.tree or []
    path = _one(paths, "--tree") if index is None else paths[index]
    return serialize.load_tree(_read(path, "tree"), path)


def _config(args):
    return serialize.load_configuration(_read(args.config, "config"), args.config)


def _cycle(args):
    return serialize.load_cycle(_read(args.cycle, "cycle"), args.cycle)


def _family(args):
    if not args.family:
        raise MalformedInput("--family is required")
    return serialize.load_family(_read(args.family, "family"), args.family)


def _require_valid(tree):
    problems = trees.validate(tree)
    if problems:
        raise _Fail("Invalid\n" + "\n".join(problems))
    return tree


def _vertex_arg(text):
    if text is None:
        raise MalformedInput("--vertex is required")
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        return text
    return value if isinstance(value, (int, str)) and not isinstance(value, bool) else text


def _triple_arg(text):
    if text is None:
        raise MalformedInput("--triple is required")
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise MalformedInput(f"expected a,b,c with integer labels, got {text!r}", "--triple") from None


def cmd_validate(args):
    _require_valid(_tree(args))
    return "Valid\n"


def cmd_contract(args):
    tree = _require_valid(_tree(args))
    cc = contraction.contract(tree, _vertex_arg(args.vertex))
    return serialize.to_json({"vertex": cc.vertex, **serialize.dump_configuration(cc.config)})


def cmd_cycle(args):
    tree = _require_valid(_tree(args))
    return serialize.to_json(serialize.dump_cycle(contraction.configuration_cycle(tree)))


def cmd_class(args):
    if args.config:
        k = classes.orbit_class(_config(args), args.trials, args.seed)
    elif args.cycle:
        k = classes.cycle_class(_cycle(args), args.trials, args.seed)
    else:
        k = classes.tree_class(_require_valid(_tree(args)), args.trials, args.seed)
    return serialize.to_json(serialize.dump_class(k))


def cmd_limit(args):
    return serialize.to_json(serialize.dump_tree(degeneration.limit_tree(_family(args))))


def cmd_check_limit(args):
    if not degeneration.check_limit_compatibility(_family(args)):
        raise _Fail("Incompatible\n")
    return "Compatible\n"


def cmd_forget(args):
    tree = _require_valid(_tree(args))
    triple = _triple_arg(args.triple)
    value = curves.triple_invariant(tree, triple)
    return serialize.to_json({"triple": list(triple), "value": serialize.dump_cross_ratio(value)})


def cmd_separate(args):
    if not args.tree or len(args.tree) != 2:
        raise MalformedInput("separate needs --tree twice")
    t1, t2 = (_require_valid(_tree(args, i)) for i in range(2))
    if t1.d == 1 and t2.d == 1:
        result = curves.separates(t1, t2)
    else:
        result = classes.separates_boundary(t1, t2)
    return "true\n" if result else "false\n"


def cmd_chowform(args):
    if args.config:
        form = curves.chow_form_111(_config(args))
    elif args.cycle:
        form = curves.chow_form_of_cycle(_cycle(args))
    else:
        tree = _require_valid(_tree(args))
        form = curves.chow_form_of_cycle(contraction.configuration_cycle(tree))
    return serialize.to_json(serialize.dump_form(form))


def all_ones_run(d, n, count, seed=0, trials=classes.DEFAULT_TRIALS):
    """Generate ``count`` random trees and count those whose class is all ones."""
    rng = random.Random(f"all-ones|{d}|{n}|{seed}")
    passed = 0
    for i in range(count):
        shape = trees.random_shape(range(1, n + 1), rng)
        tree = trees.random_tree(d, n, shape, f"{seed}|{i}")
        if classes.tree_class(tree, trials, f"{seed}|{i}").is_all_ones():
            passed += 1
    return passed


def cmd_all_ones(args):
    if args.d is None or args.n is None:
        raise MalformedInput("all-ones needs --d and --n")
    if args.d < 1 or args.n < 2 or args.count < 0:
        raise MalformedInput("need d >= 1, n >= 2 and a nonnegative count")
    passed = all_ones_run(args.d, args.n, args.count, args.seed, args.trials)
    line = f"{passed}/{args.count} pass\n"
    if passed != args.count:
        raise _Fail(line)
    return line


HANDLERS = {
    "validate": cmd_validate,
    "contract": cmd_contract,
    "cycle": cmd_cycle,
    "class": cmd_class,
    "limit": cmd_limit,
    "check-limit": cmd_check_limit,
    "forget": cmd_forget,
    "separate": cmd_separate,
    "chowform": cmd_chowform,
    "all-ones": cmd_all_ones,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message, "arguments")


def build_parser():
    parser = _Parser(prog="chowtrees", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=SUBCOMMANDS)
    parser.add_argument("--tree", action="append", help="tree file (repeat for separate)")
    parser.add_argument("--config", help="configuration file")
    parser.add_argument("--family", help="polynomial family file")
    parser.add_argument("--cycle", help="configuration cycle file")
    parser.add_argument("--triple", help="three labels a,b,c")
    parser.add_argument("--vertex", help="vertex id")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=classes.DEFAULT_TRIALS)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--d", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--out", help="write output here instead of stdout")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        text, status = HANDLERS[args.command](args), 0
    except MalformedInput as e:
        print(f"MalformedInput: {e}", file=stderr)
        return 2
    except _Fail as e:
        text, status = str(e), 1
    except ChowTreesError as e:
        print(f"{type(e).__name__}: {e}", file=stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status

"""Command-line entry point: JSON pipelines and seeded experiments.

Exit codes: 0 success, 1 usage or parameter error, 2 violated invariant.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import experiments as ex
from .algebra import Polynomial
from .bounds import bound_report, to_fraction
from .codes import Codeword, FrsParams, RecoverySets, corrupt, encode, params_from_json
from .decoder import frs_list_recover, list_decode
from .errors import InvariantViolation, ParameterError
from .prune import DEFAULT_BUDGET, PruneConfig, enumerate_list, prune

CONFIGS = {"tiny", "medium", "medium_mult", "singleton2"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_json(path: str) -> dict:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParameterError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParameterError(f"{path} must hold a JSON object")
    return obj


def _load_params(args, default: str):
    src = args.params or default
    if src in CONFIGS:
        return ex.load_config(src)
    try:
        return params_from_json(_read_json(src))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"malformed params: {exc}") from None


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _message(params, obj: dict) -> Polynomial:
    msgs = obj.get("messages")
    if not isinstance(msgs, list) or len(msgs) != 1:
        raise ParameterError('message file must be {"messages": [[coefficients]]} with exactly one entry')
    f = Polynomial(params.field, [int(c) for c in msgs[0]])
    params.check_message(f)
    return f


def _padded_messages(params, fs) -> dict:
    return {"messages": [list(f.padded(params.d + 1)) for f in fs]}


def _list_or_space(args, params, space, S) -> dict:
    if args.rho is None:
        return space.to_json()
    if space.is_empty:
        return {"messages": []}
    if args.prune:
        cfg = PruneConfig(args.epsilon, args.eta, args.iterations, args.seed)
        found = prune(space, S, args.rho, cfg)
    else:
        found = enumerate_list(space, S, args.rho, args.budget)
    return _padded_messages(params, found)


def cmd_encode(args) -> dict:
    params = _load_params(args, "tiny")
    if args.message:
        f = _message(params, _read_json(args.message))
        return encode(params, f).to_json()
    f = params.random_message(np.random.default_rng(args.seed))
    out = encode(params, f).to_json()
    out["message"] = list(f.padded(params.d + 1))
    return out


def cmd_corrupt(args) -> dict:
    params = _load_params(args, "tiny")
    y = Codeword.from_json(_read_json(args.word))
    y.check_against(params)
    return corrupt(y, args.errors, np.random.default_rng(args.seed), params.q).to_json()


def cmd_decode(args) -> dict:
    params = _load_params(args, "tiny")
    y = Codeword.from_json(_read_json(args.word))
    y.check_against(params)
    space = list_decode(params, y, args.m)
    return _list_or_space(args, params, space, RecoverySets.from_codeword(y))


def cmd_recover(args) -> dict:
    params = _load_params(args, "tiny")
    if not isinstance(params, FrsParams):
        raise ParameterError("list recovery is implemented for folded Reed-Solomon codes only")
    S = RecoverySets.from_json(_read_json(args.sets))
    S.check_against(params)
    space = frs_list_recover(params, S, args.m)
    return _list_or_space(args, params, space, S)


def cmd_bounds(args) -> dict:
    return bound_report(m=args.m, s=args.s, R=args.R, eps=args.eps, ell=args.ell,
                        delta=args.delta, d=args.d, p=args.p).to_json()


def cmd_exp_singleton2(args) -> dict:
    return ex.run_singleton2(_load_params(args, "singleton2"), args.trials or 1000, args.seed, args.errors)


def cmd_exp_listsize(args) -> dict:
    return ex.run_listsize(_load_params(args, "medium"), args.m, args.trials or 500, args.seed)


def cmd_exp_prune(args) -> dict:
    return ex.run_prune(_load_params(args, "tiny"), args.trials or 200, args.seed, args.m, args.epsilon, args.eta)


def cmd_exp_subspace(args) -> dict:
    return ex.run_subspace(_load_params(args, "medium"), args.trials or 100, args.seed, args.m)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="frslist", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="params JSON file or a bundled config name "
                        f"({', '.join(sorted(CONFIGS))})")
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--trials", type=_positive)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="largest q^r the exhaustive lister may enumerate")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, extra=(), **kw):
        p = sub.add_parser(name, parents=[common, *extra], **kw)
        p.set_defaults(func=fn)
        return p

    p = add("encode", cmd_encode, help="encode a message (random from --seed if none given)")
    p.add_argument("--message", help='JSON {"messages": [[coefficients]]}')

    p = add("corrupt", cmd_corrupt, help="overwrite columns of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--errors", type=int, required=True)

    listing = argparse.ArgumentParser(add_help=False)
    listing.add_argument("--m", type=int, required=True)
    listing.add_argument("--rho", type=_rational, help="output the list within this radius instead of the space")
    listing.add_argument("--prune", action="store_true", help="use randomized pruning for the list")
    listing.add_argument("--epsilon", type=_rational, default=Fraction(1, 12))
    listing.add_argument("--eta", type=_rational, default=Fraction(1, 100))
    listing.add_argument("--iterations", type=_positive)

    p = add("decode", cmd_decode, [listing], help="list decode a received word")
    p.add_argument("--word", required=True)
    p = add("recover", cmd_recover, [listing], help="list recover from candidate sets")
    p.add_argument("--sets", required=True)

    p = add("bounds", cmd_bounds, help="evaluate every applicable bound")
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--R", type=_rational)
    p.add_argument("--eps", type=_rational)
    p.add_argument("--ell", type=_positive, default=1)
    p.add_argument("--delta", type=_rational)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=int)

    p = add("exp-singleton2", cmd_exp_singleton2, help="list size at most 2 for m = 2")
    p.add_argument("--errors", type=int, default=18)
    p = add("exp-listsize", cmd_exp_listsize, help="observed list size against the fixed-m bound")
    p.add_argument("--m", type=int, default=3)
    p = add("exp-prune", cmd_exp_prune, help="randomized pruning against exhaustive listing")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 12))
    p.add_argument("--eta", type=_rational, default=Fraction(1, 100))
    p = add("exp-subspace", cmd_exp_subspace, help="column statistics of recovered spaces")
    p.add_argument("--m", type=int, default=3)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _emit(args.func(args), args.out)
    except InvariantViolation as exc:
        report = getattr(exc, "report", None)
        if report is not None:
            _emit(report, args.out)
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line interface.

Subcommands mirror the library: signature evaluation, word-algebra products,
Lyndon machinery, core tensors, the tensor exponential, the adjoint map, and
the variety layer (maps, dimensions, ideal counts, export). Tensor and word
literals use the bracket-array grammar; paths and polynomial maps travel as
JSON. Output is deterministic: identical argv and seed give identical bytes.

Exit codes: 0 on success, 1 on domain errors (bad input values, parse
errors), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path as FilePath

from .algebra import RATIONALS, VariableTable
from .lyndon import lie_basis, lyndon_shuffle, lyndon_words
from .paths import path_from_json
from .signature import (
    adjoint_word,
    caxis_tensor,
    cmon_tensor,
    sig_word,
    signature_result,
    tensor_exp,
    tensor_exp_series,
)
from .varieties import (
    affine_image_dimension,
    export_map,
    low_degree_ideal_counts,
    polynomial_map_to_json,
    variety_map,
)
from .words import (
    concat_product,
    format_tensor,
    half_shuffle,
    parse_tensor,
    parse_word,
    shuffle,
    tensor_to_json,
    word_text,
)

SEED_ENV_VAR = "PATHSIG_SEED"


@dataclass(frozen=True)
class CliConfig:
    """Resolved run configuration; defaults are part of the CLI contract."""

    seed: int = 0
    output_format: str = "text"
    rank_trials: int = 3
    sample_count: int | str = "auto"


def _resolve_config(args) -> CliConfig:
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = int(os.environ.get(SEED_ENV_VAR, "0"))
    samples = getattr(args, "samples", None)
    if samples is None:
        samples = "auto"
    return CliConfig(
        seed=seed,
        output_format=getattr(args, "format", "text") or "text",
        rank_trials=getattr(args, "trials", None) or 3,
        sample_count=samples,
    )


def _variable_table(args) -> VariableTable:
    names = getattr(args, "vars", None)
    if not names:
        return RATIONALS
    return VariableTable(tuple(n.strip() for n in names.split(",") if n.strip()))


def _load_path(source: str):
    text = source.strip()
    if not text.startswith("{"):
        text = FilePath(source).read_text()
    return path_from_json(json.loads(text))


def _tensor_output(tensor, config: CliConfig) -> str:
    if config.output_format == "json":
        return json.dumps(tensor_to_json(tensor), indent=2)
    return format_tensor(tensor)


# -- handlers -----------------------------------------------------------------


def _cmd_sig(args) -> str:
    config = _resolve_config(args)
    path = _load_path(args.path)
    if (args.word is None) == (args.level is None):
        raise ValueError("pass exactly one of --word or --level")
    if args.word is not None:
        value = sig_word(path, parse_word(args.word))
        if config.output_format == "json":
            return json.dumps({"coefficient": str(value)})
        return str(value)
    result = signature_result(path, args.level)
    if config.output_format == "json":
        return json.dumps(result.to_json(), indent=2)
    return format_tensor(result.tensor)


def _binary_word_op(args, operation) -> str:
    config = _resolve_config(args)
    table = _variable_table(args)
    a = parse_tensor(args.left, args.alphabet, table)
    b = parse_tensor(args.right, args.alphabet, table)
    return _tensor_output(operation(a, b), config)


def _cmd_shuffle(args) -> str:
    return _binary_word_op(args, shuffle)


def _cmd_half_shuffle(args) -> str:
    return _binary_word_op(args, half_shuffle)


def _cmd_concat(args) -> str:
    return _binary_word_op(args, concat_product)


def _cmd_lyndon_words(args) -> str:
    config = _resolve_config(args)
    words = lyndon_words(args.alphabet, args.max_len)
    if config.output_format == "json":
        return json.dumps([list(w) for w in words])
    return " ".join(word_text(w, compact=True) for w in words)


def _cmd_lyndon_basis(args) -> str:
    config = _resolve_config(args)
    return _tensor_output(lie_basis(parse_word(args.word), args.alphabet), config)


def _cmd_lyndon_decompose(args) -> str:
    config = _resolve_config(args)
    tensor = parse_tensor(args.tensor, args.alphabet)
    decomposition = lyndon_shuffle(tensor)
    if config.output_format == "json":
        return json.dumps(decomposition.to_json(), indent=2)
    return str(decomposition)


def _cmd_core(args) -> str:
    config = _resolve_config(args)
    core = caxis_tensor if args.kind == "axis" else cmon_tensor
    return _tensor_output(core(args.dim, args.level), config)


def _cmd_exp(args) -> str:
    config = _resolve_config(args)
    tensor = parse_tensor(args.tensor, args.alphabet)
    compute = tensor_exp if args.project else tensor_exp_series
    return _tensor_output(compute(tensor, args.level), config)


def _cmd_adjoint(args) -> str:
    from .algebra import parse_poly

    config = _resolve_config(args)
    data = json.loads(FilePath(args.polys).read_text())
    table = VariableTable(tuple(data["variables"]))
    if len(table) != args.source_dim:
        raise ValueError(
            f"--source-dim {args.source_dim} does not match the {len(table)} "
            "declared variables"
        )
    polys = [parse_poly(text, table) for text in data["polynomials"]]
    result = adjoint_word(parse_word(args.word), polys)
    return _tensor_output(result, config)


def _make_map(args):
    return variety_map(args.family, args.dim, args.level, getattr(args, "pieces", None))


def _cmd_variety_map(args) -> str:
    config = _resolve_config(args)
    f = _make_map(args)
    if config.output_format == "json":
        return json.dumps(polynomial_map_to_json(f), indent=2, sort_keys=True)
    lines = [
        f"parameters: {', '.join(f.parameters.names)}",
        f"weights: {', '.join(str(w) for w in f.weights)}",
    ]
    for word, entry in zip(f.coordinates, f.entries):
        lines.append(f"{word_text(word, compact=True)}: {entry}")
    return "\n".join(lines)


def _cmd_variety_dim(args) -> str:
    config = _resolve_config(args)
    dim = affine_image_dimension(_make_map(args), trials=config.rank_trials, seed=config.seed)
    projective = dim - 1 if dim >= 1 else None
    if config.output_format == "json":
        return json.dumps({"affine": dim, "projective": projective})
    if projective is None:
        return f"affine: {dim}"
    return f"affine: {dim}, projective: {projective}"


def _cmd_variety_ideal_counts(args) -> str:
    config = _resolve_config(args)
    counts = low_degree_ideal_counts(
        _make_map(args),
        max_degree=args.max_degree,
        samples=config.sample_count,
        seed=config.seed,
    )
    if config.output_format == "json":
        return json.dumps({"linear": counts.linear, "quadrics": counts.quadrics})
    if counts.quadrics is None:
        return f"linear: {counts.linear}"
    return f"linear: {counts.linear}, quadrics: {counts.quadrics}"


def _cmd_variety_export(args) -> str:
    return export_map(_make_map(args), args.format)


# -- parser ---------------------------------------------------------------------


def _add_format(parser, choices=("text", "json")):
    parser.add_argument("--format", choices=choices, default="text")


def _add_family_options(parser, family_positional: bool):
    if family_positional:
        parser.add_argument("family", choices=("universal", "pl", "poly"))
    else:
        parser.add_argument("--family", required=True, choices=("universal", "pl", "poly"))
    parser.add_argument("--dim", type=int, required=True)
    parser.add_argument("--level", type=int, required=True)
    parser.add_argument("--pieces", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathsig",
        description="Exact signature tensors of piecewise polynomial paths and their varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sig", help="evaluate a path signature at a word or level")
    p.add_argument("--path", required=True, help="path JSON file, or inline JSON")
    p.add_argument("--word", help='bracket word, e.g. "[1,2]"')
    p.add_argument("--level", type=int)
    _add_format(p)
    p.set_defaults(handler=_cmd_sig)

    for name, handler in (
        ("shuffle", _cmd_shuffle),
        ("half-shuffle", _cmd_half_shuffle),
        ("concat", _cmd_concat),
    ):
        p = sub.add_parser(name, help=f"{name} product of two tensors")
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--alphabet", type=int, required=True)
        p.add_argument("--vars", help="comma-separated coefficient variables")
        _add_format(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("lyndon", help="Lyndon word machinery")
    lyndon_sub = p.add_subparsers(dest="lyndon_command", required=True)
    q = lyndon_sub.add_parser("words", help="all Lyndon words up to a length")
    q.add_argument("--alphabet", type=int, required=True)
    q.add_argument("--max-len", type=int, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_lyndon_words)
    q = lyndon_sub.add_parser("basis", help="Lie bracketing of a Lyndon word")
    q.add_argument("word")
    q.add_argument("--alphabet", type=int, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_lyndon_basis)
    q = lyndon_sub.add_parser("decompose", help="shuffle polynomial in Lyndon words")
    q.add_argument("tensor")
    q.add_argument("--alphabet", type=int, required=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_lyndon_decompose)

    p = sub.add_parser("core", help="core tensors of the canonical paths")
    p.add_argument("kind", choices=("axis", "monomial"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_core)

    p = sub.add_parser("exp", help="truncated tensor exponential")
    p.add_argument("tensor")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--alphabet", type=int, required=True)
    p.add_argument("--project", action="store_true", help="level-k part only")
    _add_format(p)
    p.set_defaults(handler=_cmd_exp)

    p = sub.add_parser("adjoint", help="half-shuffle adjoint of a polynomial map")
    p.add_argument("--word", required=True)
    p.add_argument("--polys", required=True, help="JSON file: variables + polynomials")
    p.add_argument("--source-dim", type=int, required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_adjoint)

    p = sub.add_parser("variety", help="variety parametrizations and invariants")
    variety_sub = p.add_subparsers(dest="variety_command", required=True)
    q = variety_sub.add_parser("map", help="print the polynomial parametrization")
    _add_family_options(q, family_positional=True)
    _add_format(q)
    q.set_defaults(handler=_cmd_variety_map)
    q = variety_sub.add_parser("dim", help="affine and projective image dimension")
    _add_family_options(q, family_positional=False)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--trials", type=int, default=None)
    _add_format(q)
    q.set_defaults(handler=_cmd_variety_dim)
    q = variety_sub.add_parser("ideal-counts", help="degree 1 and 2 generator counts")
    _add_family_options(q, family_positional=False)
    q.add_argument("--max-degree", type=int, choices=(1, 2), default=2)
    q.add_argument("--samples", type=int, default=None)
    q.add_argument("--seed", type=int, default=None)
    _add_format(q)
    q.set_defaults(handler=_cmd_variety_ideal_counts)
    q = variety_sub.add_parser("export", help="export for external verification")
    _add_family_options(q, family_positional=False)
    q.add_argument("--format", choices=("cas-script", "json"), default="cas-script")
    q.set_defaults(handler=_cmd_variety_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_info:
        return int(exit_info.code or 0)
    try:
        output = args.handler(args)
    except (ValueError, ArithmeticError, OSError, KeyError, json.JSONDecodeError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    if not output.endswith("\n"):
        output += "\n"
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())

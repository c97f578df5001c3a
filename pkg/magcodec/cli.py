"""Command line entry point: experiments plus encode/decode/recover helpers."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from . import textio
from .codec import (
    decode_characteristic,
    decode_edge_set_string,
    decode_tau,
    encode_characteristic,
    encode_edge_set_string,
    encode_tau,
)
from .complexity import available_compressors
from .core.config import get_settings
from .core.errors import EXIT_OK, EXIT_VALIDATION, MagcodecError, MagValidationError, exit_code_for
from .experiments.report import load_report, render_csv
from .experiments.sweep import run_experiment
from .isomorphism import mag_to_graph
from .mag import CompanionTuple
from .recovery import recover_signature
from .schemas import DEFAULT_SWEEP_P, DEFAULT_UNIFORM_P, DistortionReport, ExperimentConfig

LOGGER = logging.getLogger("magcodec.cli")

load_dotenv()

FORMAT_SUFFIX = {"char": ".charbits", "edgeset": ".mages", "tau": ".taubits"}


def parse_orders(text: str) -> List[int]:
    try:
        return [int(token) for token in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--p expects comma separated integers, got {text!r}") from exc


def _add_experiment_arguments(parser: argparse.ArgumentParser, default_p: Sequence[int]) -> None:
    settings = get_settings()
    parser.add_argument("--seed", type=int, default=settings.default_seed, help="Base seed of the bit stream w")
    parser.add_argument(
        "--p",
        dest="p_values",
        type=parse_orders,
        default=list(default_p),
        help="Comma separated orders p (default: %(default)s)",
    )
    parser.add_argument(
        "--compressor",
        default=settings.default_compressor,
        help=f"Compressor used as complexity proxy ({', '.join(available_compressors())})",
    )
    parser.add_argument("--topology", choices=("trivial", "random_density"), default="trivial")
    parser.add_argument("--density", type=float, default=0.5, help="Edge density for random_density")
    parser.add_argument("--out", default=settings.output_dir, help="Output directory for CSV/JSON/SVG")
    parser.add_argument("--workers", type=int, default=settings.workers, help="Rows measured in parallel")
    parser.add_argument("--max-ones", type=int, default=settings.max_ones, help="Upper bound on ones(w) for seed selection")
    parser.add_argument(
        "--no-growth",
        dest="require_growth",
        action="store_false",
        help="Accept seeds whose ones count does not grow strictly with p",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magcodec", description="Multiaspect graph encodings and distortion experiments")
    commands = parser.add_subparsers(dest="command", required=True)

    _add_experiment_arguments(commands.add_parser("sweep", help="Worst-case distortion sweep"), DEFAULT_SWEEP_P)
    _add_experiment_arguments(
        commands.add_parser("control-uniform", help="Uniform-space control sweep"), DEFAULT_UNIFORM_P
    )
    _add_experiment_arguments(
        commands.add_parser("lemma", help="Compare characteristic and edge set strings modulo <tau>"), DEFAULT_SWEEP_P
    )

    recover = commands.add_parser("recover", help="Recover the aspect signature from a .mages file")
    recover.add_argument("file", type=Path)

    for name, help_text in (("encode", "Encode a .magtxt file"), ("decode", "Decode an encoded file")):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("file", type=Path)
        sub.add_argument("--format", choices=tuple(FORMAT_SUFFIX), required=True)
        sub.add_argument("-o", "--output", type=Path, default=None)
        if name == "decode":
            sub.add_argument("--tau", default=None, help="Companion tuple, required to decode --format char")

    to_graph = commands.add_parser("to-graph", help="Write the isomorphic classical graph of a .magtxt file")
    to_graph.add_argument("file", type=Path)
    to_graph.add_argument("-o", "--output", type=Path, default=None)

    validate = commands.add_parser("validate", help="Validate a JSON report against the report schema")
    validate.add_argument("file", type=Path)
    return parser


def _experiment(kind: str) -> Callable[[argparse.Namespace], int]:
    def run(args: argparse.Namespace) -> int:
        cfg = ExperimentConfig(
            seed=args.seed,
            p_values=args.p_values,
            topology=args.topology,
            density=args.density,
            compressor=args.compressor,
            out_dir=args.out,
            max_ones=args.max_ones,
            workers=args.workers,
            require_growth=args.require_growth,
        )
        report = run_experiment(kind, cfg)  # type: ignore[arg-type]
        _print_report(report)
        return EXIT_OK

    return run


def _print_report(report: DistortionReport) -> None:
    print(f"# {report.kind} seed={report.seed} effective_seed={report.effective_seed} compressor={report.compressor}")
    if report.rows:
        sys.stdout.write(render_csv(report.rows))
    for row in report.lemma_rows:
        print(row.model_dump_json())
    if report.trend is not None:
        trend = report.trend
        print(f"# distortion strictly increasing: {trend.distortion_strictly_increasing}")
        print(f"# distortion spearman: {trend.distortion_spearman}")
        print(f"# distortion slope: {trend.distortion_slope}")
        print(f"# gap strictly increasing: {trend.gap_strictly_increasing}")
        print(f"# C(<E>|x) / C(<tau>): {trend.conditional_ratio}")


def _recover(args: argparse.Namespace) -> int:
    result = recover_signature(textio.iter_chunks(args.file))
    print(f"p: {result.order}")
    print(f"sizes: {' '.join(str(z) for z in result.sizes)}")
    print(f"signature: {result.signature}")
    return EXIT_OK


def _encode(args: argparse.Namespace) -> int:
    mag = textio.read_magtxt(args.file)
    output = args.output or args.file.with_suffix(FORMAT_SUFFIX[args.format])
    if args.format == "char":
        textio.write_charbits(output, encode_characteristic(mag))
    elif args.format == "edgeset":
        textio.write_mages(output, encode_edge_set_string(mag))
    else:
        textio.write_taubits(output, encode_tau(mag.tau))
    print(output)
    return EXIT_OK


def _decode(args: argparse.Namespace) -> int:
    if args.format == "tau":
        tau = decode_tau(textio.read_taubits(args.file))
        text = f"tau: {tau}\n"
    else:
        if args.format == "char":
            if args.tau is None:
                raise MagValidationError("decoding a characteristic string needs --tau")
            mag = decode_characteristic(CompanionTuple.parse(args.tau), textio.read_charbits(args.file))
        else:
            mag = decode_edge_set_string(textio.read_mages(args.file))
        text = textio.format_magtxt(mag)
    if args.output is None:
        sys.stdout.write(text)
    else:
        textio.write_text(args.output, text)
    return EXIT_OK


def _to_graph(args: argparse.Namespace) -> int:
    graph = mag_to_graph(textio.read_magtxt(args.file))
    text = textio.format_graph_txt(graph)
    if args.output is None:
        sys.stdout.write(text)
    else:
        textio.write_text(args.output, text)
    return EXIT_OK


def _validate(args: argparse.Namespace) -> int:
    report = load_report(args.file)
    print(f"ok: {report.kind} status={report.status} rows={len(report.rows) + len(report.lemma_rows)}")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "sweep": _experiment("sweep"),
    "control-uniform": _experiment("control-uniform"),
    "lemma": _experiment("lemma"),
    "recover": _recover,
    "encode": _encode,
    "decode": _decode,
    "to-graph": _to_graph,
    "validate": _validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=get_settings().log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        LOGGER.error("invalid input: %s", exc)
        return EXIT_VALIDATION
    except (MagcodecError, OSError) as exc:
        LOGGER.error("%s", exc)
        return exit_code_for(exc)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

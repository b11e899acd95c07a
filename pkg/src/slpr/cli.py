"""
Command-line frontend: ``slpr <subcommand> ...``.

Exit codes: 0 on success, 1 when any file or region failed, 2 on usage
errors. Logs go to standard error, reports to standard output.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from config.settings import settings

from .core.format_registry import format_registry
from .core.loss import run_gradient_check
from .core.pipeline import BatchProcessor
from .core.synth import expand_specs, sample_corpus
from .exceptions import SlprError
from .models.config import LossConfig, RestoreConfig
from .models.shape import ShapeKind, ShapeSpec

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2


def _open_unit(value: str) -> float:
    number = float(value)
    if not 0.0 < number < 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {value}")
    return number


def _half_open_unit(value: str) -> float:
    number = float(value)
    if not 0.0 < number <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {value}")
    return number


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return number


def _non_negative_int(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=settings.log_level,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], type=str.upper)
    common.add_argument("--threads", type=_non_negative_int, default=None,
                        help="worker threads (0 = one per CPU; default SLPR_THREADS)")

    formats = format_registry.list_formats()
    parser = argparse.ArgumentParser(prog="slpr", description="Sliding Line Point Regression toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    encode = sub.add_parser("encode", parents=[common], help="annotation files -> target files")
    encode.add_argument("--format", choices=formats, default=None, help="input grammar (sniffed if omitted)")
    encode.add_argument("--in", dest="in_dir", type=Path, required=True)
    encode.add_argument("--out", dest="out_dir", type=Path, required=True)
    encode.add_argument("--n", type=_positive_int, default=settings.num_lines)

    decode = sub.add_parser("decode", parents=[common], help="target files -> decoded point files")
    decode.add_argument("--in", dest="in_dir", type=Path, required=True)
    decode.add_argument("--out", dest="out_dir", type=Path, required=True)

    restore = sub.add_parser("restore", parents=[common], help="target files -> detection files")
    restore.add_argument("--method", choices=["pls", "bhvp"], default=settings.restore_method)
    restore.add_argument("--k", type=_half_open_unit, default=settings.aspect_threshold)
    restore.add_argument("--format", choices=formats, default="polygon_json", help="output grammar")
    restore.add_argument("--in", dest="in_dir", type=Path, required=True)
    restore.add_argument("--out", dest="out_dir", type=Path, required=True)
    restore.add_argument("--dump-svg", type=Path, default=None)

    nms = sub.add_parser("nms", parents=[common], help="suppress duplicate detections")
    nms.add_argument("--mode", choices=["nms", "pnms"], default="nms")
    nms.add_argument("--threshold", type=_open_unit, default=settings.nms_threshold)
    nms.add_argument("--format", choices=formats, default=None, help="detection grammar (sniffed if omitted)")
    nms.add_argument("--in", dest="in_dir", type=Path, required=True)
    nms.add_argument("--out", dest="out_dir", type=Path, required=True)
    nms.add_argument("--dump-svg", type=Path, default=None)

    evaluate = sub.add_parser("eval", parents=[common], help="score detections against ground truth")
    evaluate.add_argument("--gt", type=Path, required=True)
    evaluate.add_argument("--det", type=Path, required=True)
    evaluate.add_argument("--iou", type=_open_unit, default=settings.eval_iou_threshold)
    evaluate.add_argument("--gt-format", choices=formats, default=None)
    evaluate.add_argument("--det-format", choices=formats, default=None)
    evaluate.add_argument("--report", type=Path, default=None, help="write the JSON report here")

    synth = sub.add_parser("synth", parents=[common], help="generate a synthetic ground-truth corpus")
    synth.add_argument("--spec", type=Path, default=None, help="file of key=value spec records")
    synth.add_argument("--count", type=_non_negative_int, required=True)
    synth.add_argument("--seed", type=_non_negative_int, default=0)
    synth.add_argument("--kinds", nargs="+", choices=[k.value for k in ShapeKind], default=None)
    synth.add_argument("--format", choices=formats, default="polygon_json")
    synth.add_argument("--out", dest="out_dir", type=Path, required=True)

    check = sub.add_parser("loss-check", parents=[common], help="finite-difference check of the loss kernels")
    check.add_argument("--samples", type=_positive_int, default=1000)
    check.add_argument("--seed", type=_non_negative_int, default=0)
    check.add_argument("--tolerance", type=float, default=1e-5)
    check.add_argument("--n", type=_positive_int, default=settings.num_lines)
    return parser


def _summarise(command: str, results: Dict[str, Any]) -> int:
    print(f"{command}: {results['processed_files']} files, {results['regions']} regions read, "
          f"{results['written']} written, {results['errors']} errors")
    for entry in results["failed_entries"]:
        where = entry["file"] if entry["line"] is None else f"{entry['file']}:{entry['line']}"
        print(f"{entry['stage']} error at {where}: {entry['error']}", file=sys.stderr)
    return EXIT_DATA_ERROR if results["errors"] else EXIT_OK


def _read_templates(path: Path) -> List[ShapeSpec]:
    templates = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            templates.append(ShapeSpec.from_record(line))
    return templates


def _with_samples(spec: ShapeSpec) -> ShapeSpec:
    if spec.kind is ShapeKind.SINE_BAND and "samples" not in spec.params:
        return ShapeSpec(kind=spec.kind, seed=spec.seed, params={**spec.params, "samples": settings.synth_samples})
    return spec


def _run_synth(args, processor: BatchProcessor) -> int:
    if args.spec is not None:
        templates = [_with_samples(t) for t in _read_templates(args.spec)]
        specs = expand_specs(templates, args.count)
    else:
        specs = sample_corpus(args.count, args.seed, args.kinds, params={"samples": settings.synth_samples})
    return _summarise("synth", processor.synth_dir(specs, args.out_dir, args.format))


def _run_eval(args, processor: BatchProcessor) -> int:
    report, results = processor.evaluate_dirs(args.gt, args.det, args.iou, args.gt_format, args.det_format)
    for line in report.summary_lines():
        print(line)
    if args.report is not None:
        args.report.parent.mkdir(parents=True, exist_ok=True)
        args.report.write_text(report.model_dump_json(indent=2), encoding="utf-8")
        logger.info(f"Report written to {args.report}")
    for entry in results["failed_entries"]:
        print(f"{entry['stage']} error at {entry['file']}: {entry['error']}", file=sys.stderr)
    return EXIT_DATA_ERROR if results["errors"] else EXIT_OK


def _run_loss_check(args) -> int:
    cfg = LossConfig(**{**settings.loss_config_kwargs(), "n": args.n})
    report = run_gradient_check(samples=args.samples, seed=args.seed, tolerance=args.tolerance, cfg=cfg)
    print(f"checked: {report.checked}")
    print(f"skipped: {report.skipped}")
    print(f"max_error: {report.max_error:.3e}")
    for name, ok in report.value_checks.items():
        print(f"{name}: {'ok' if ok else 'FAILED'}")
    print(f"passed: {report.passed}")
    return EXIT_OK if report.passed else EXIT_DATA_ERROR


def run(args: argparse.Namespace) -> int:
    processor = BatchProcessor(workers=args.threads)
    if args.command == "encode":
        return _summarise("encode", processor.encode_dir(args.in_dir, args.out_dir, args.format, args.n))
    if args.command == "decode":
        return _summarise("decode", processor.decode_dir(args.in_dir, args.out_dir))
    if args.command == "restore":
        cfg = RestoreConfig(**{**settings.restore_config_kwargs(), "method": args.method, "k": args.k})
        return _summarise("restore", processor.restore_dir(args.in_dir, args.out_dir, cfg, args.format, args.dump_svg))
    if args.command == "nms":
        results = processor.nms_dir(args.in_dir, args.out_dir, args.mode, args.threshold, args.format, args.dump_svg)
        return _summarise("nms", results)
    if args.command == "eval":
        return _run_eval(args, processor)
    if args.command == "synth":
        return _run_synth(args, processor)
    return _run_loss_check(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    try:
        return run(args)
    except (SlprError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())

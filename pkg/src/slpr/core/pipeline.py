"""
Directory-level workflows behind the command line: encode, decode, restore,
suppress, evaluate and synthesise.

Each workflow processes files on the worker pool and returns a results
dictionary; per-region and per-file failures are recorded as structured
entries instead of aborting the run.
"""
import logging
import traceback
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..exceptions import SlprError
from ..models.config import RestoreConfig
from ..models.detection import AnnotationRecord, Detection, GroundTruth
from ..models.geometry import Polygon
from ..models.report import EvalReport
from ..models.shape import ShapeSpec
from ..parsers.target_parser import format_points_line, format_target_document, parse_target_document
from .codec import DEFAULT_NUM_LINES, decoded_points, encode
from .evaluator import DEFAULT_IOU_THRESHOLD, evaluate_corpus
from .format_registry import format_registry, gt_filename, image_id, read_records, res_filename, tgt_filename
from .geom import to_shapely, to_svg_path
from .resample import fit_vertex_count
from .restore import restore
from .suppress import suppress
from .synth import generate
from .workers import parallel_map

logger = logging.getLogger(__name__)


def _text_files(directory: Path) -> List[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"Input directory not found: {directory}")
    return sorted(p for p in directory.iterdir() if p.is_file() and p.suffix == ".txt")


def _new_results() -> Dict[str, Any]:
    return {"processed_files": 0, "regions": 0, "written": 0, "errors": 0, "failed_entries": [], "outputs": []}


def write_svg(path: Path, polygons: Sequence[Polygon]):
    """Diagnostic dump of polygons as one SVG document."""
    if not polygons:
        return
    bounds = [to_shapely(p).bounds for p in polygons]
    x_min = min(b[0] for b in bounds)
    y_min = min(b[1] for b in bounds)
    width = max(b[2] for b in bounds) - x_min
    height = max(b[3] for b in bounds) - y_min
    paths = "\n".join(to_svg_path(p) for p in polygons)
    Path(path).write_text(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x_min} {y_min} {width} {height}">\n{paths}\n</svg>\n',
        encoding="utf-8",
    )


class BatchProcessor:
    """Runs the file-in / file-out workflows with per-file fault isolation."""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers
        self.format_registry = format_registry

    def _build_failed_entry(self, file: Path, line: Optional[int], error: str, stage: str,
                            tb: Optional[str] = None) -> Dict[str, Any]:
        entry = {"file": str(file), "line": line, "error": error, "stage": stage}
        if tb:
            entry["traceback"] = tb
        return entry

    def _run(self, files: Sequence[Path], handler, stage: str) -> Dict[str, Any]:
        """Apply ``handler(path) -> partial results`` to every file and merge in input order."""

        def guarded(path: Path) -> Dict[str, Any]:
            try:
                return handler(path)
            except (SlprError, OSError, UnicodeDecodeError) as e:
                entry = self._build_failed_entry(path, None, str(e), stage)
            except Exception as e:
                entry = self._build_failed_entry(path, None, str(e), stage, traceback.format_exc())
            logger.error(f"{stage} failed for {path}: {entry['error']}")
            partial = _new_results()
            partial["errors"] = 1
            partial["failed_entries"].append(entry)
            return partial

        results = _new_results()
        for partial in parallel_map(guarded, files, self.workers):
            results["processed_files"] += 1
            for key in ("regions", "written", "errors"):
                results[key] += partial[key]
            results["failed_entries"].extend(partial["failed_entries"])
            results["outputs"].extend(partial["outputs"])
        logger.info(f"{stage}: {results['processed_files']} files, {results['written']} regions written, "
                    f"{results['errors']} errors")
        return results

    def encode_dir(self, in_dir: Path, out_dir: Path, format_name: Optional[str] = None,
                   n: int = DEFAULT_NUM_LINES) -> Dict[str, Any]:
        """Annotation / detection files -> target files (don't-care regions are skipped)."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def handle(path: Path) -> Dict[str, Any]:
            partial = _new_results()
            scored = []
            for index, record in enumerate(read_records(path, format_name), start=1):
                partial["regions"] += 1
                if record.dont_care:
                    continue
                try:
                    target = encode(record.polygon, n)
                except SlprError as e:
                    partial["errors"] += 1
                    partial["failed_entries"].append(self._build_failed_entry(path, index, str(e), "encode"))
                    logger.warning(f"{path.name}:{index} not encoded: {e}")
                    continue
                scored.append((target, record.score(default=None)))
            output = out_dir / tgt_filename(image_id(path))
            output.write_text(format_target_document(scored), encoding="utf-8")
            partial["written"] = len(scored)
            partial["outputs"].append(str(output))
            logger.info(f"Encoded {len(scored)} regions from {path.name}")
            return partial

        return self._run(_text_files(in_dir), handle, "encode")

    def decode_dir(self, in_dir: Path, out_dir: Path) -> Dict[str, Any]:
        """Target files -> decoded point files, one line of x y pairs per region."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def handle(path: Path) -> Dict[str, Any]:
            partial = _new_results()
            targets = parse_target_document(path.read_text(encoding="utf-8"))
            lines = [format_points_line(decoded_points(t)) for t, _ in targets]
            output = out_dir / f"pts_{image_id(path)}.txt"
            output.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
            partial["regions"] = partial["written"] = len(lines)
            partial["outputs"].append(str(output))
            return partial

        return self._run(_text_files(in_dir), handle, "decode")

    def restore_dir(self, in_dir: Path, out_dir: Path, cfg: Optional[RestoreConfig] = None,
                    format_name: str = "polygon_json", svg_dir: Optional[Path] = None) -> Dict[str, Any]:
        """Target files -> detection files (``res_<id>.txt``)."""
        cfg = cfg or RestoreConfig()
        parser = self.format_registry.get_parser(format_name)
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def handle(path: Path) -> Dict[str, Any]:
            partial = _new_results()
            dets = []
            for index, (target, score) in enumerate(parse_target_document(path.read_text(encoding="utf-8"))):
                partial["regions"] += 1
                try:
                    polygon = fit_vertex_count(restore(target, cfg), format_name)
                    dets.append(Detection(polygon=polygon, score=1.0 if score is None else score, id=index))
                except SlprError as e:
                    partial["errors"] += 1
                    partial["failed_entries"].append(self._build_failed_entry(path, index + 1, str(e), "restore"))
                    logger.warning(f"{path.name}:{index + 1} not restored: {e}")
            self._write_detections(path, out_dir, dets, parser.format_name, svg_dir, partial)
            return partial

        return self._run(_text_files(in_dir), handle, "restore")

    def nms_dir(self, in_dir: Path, out_dir: Path, mode: str, threshold: float,
                format_name: Optional[str] = None, svg_dir: Optional[Path] = None) -> Dict[str, Any]:
        """Detection files -> suppressed detection files in the same grammar."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        def handle(path: Path) -> Dict[str, Any]:
            partial = _new_results()
            # raises FormatError when the grammar of a non-empty file is not recognised
            records = read_records(path, format_name)
            out_format = format_name
            if out_format is None:
                sniffed = self.format_registry.find_parser_for_text(path.read_text(encoding="utf-8-sig"))
                out_format = sniffed.format_name if sniffed else "polygon_json"
            dets = [Detection(polygon=r.polygon, score=r.score(), id=i) for i, r in enumerate(records)]
            partial["regions"] = len(dets)
            kept = suppress(dets, threshold, mode)
            logger.info(f"{path.name}: kept {len(kept)} of {len(dets)} ({mode}@{threshold})")
            self._write_detections(path, out_dir, kept, out_format, svg_dir, partial)
            return partial

        return self._run(_text_files(in_dir), handle, "nms")

    def _write_detections(self, source: Path, out_dir: Path, dets: List[Detection], format_name: str,
                          svg_dir: Optional[Path], partial: Dict[str, Any]):
        image = image_id(source)
        output = out_dir / res_filename(image)
        output.write_bytes(self.format_registry.get_parser(format_name).write_detections(dets))
        partial["written"] += len(dets)
        partial["outputs"].append(str(output))
        if svg_dir is not None:
            Path(svg_dir).mkdir(parents=True, exist_ok=True)
            write_svg(Path(svg_dir) / f"{image}.svg", [d.polygon for d in dets])

    def _load_dir(self, directory: Path, format_name: Optional[str], stage: str,
                  results: Dict[str, Any]) -> Dict[str, list]:
        by_image: Dict[str, list] = {}

        def load(path: Path) -> Tuple[Path, Optional[list], Optional[Dict[str, Any]]]:
            try:
                return path, read_records(path, format_name), None
            except (SlprError, OSError, UnicodeDecodeError) as e:
                return path, None, self._build_failed_entry(path, None, str(e), stage)

        for path, records, failure in parallel_map(load, _text_files(directory), self.workers):
            results["processed_files"] += 1
            if failure is not None:
                logger.error(f"{stage} failed for {path}: {failure['error']}")
                results["errors"] += 1
                results["failed_entries"].append(failure)
                continue
            by_image[image_id(path)] = records
            results["regions"] += len(records)
        return by_image

    def evaluate_dirs(self, gt_dir: Path, det_dir: Path, iou_threshold: float = DEFAULT_IOU_THRESHOLD,
                      gt_format: Optional[str] = None,
                      det_format: Optional[str] = None) -> Tuple[EvalReport, Dict[str, Any]]:
        """Score a detection directory against a ground-truth directory."""
        results = _new_results()
        gt_records = self._load_dir(gt_dir, gt_format, "load-gt", results)
        det_records = self._load_dir(det_dir, det_format, "load-det", results)
        gts = {image: [GroundTruth(r.polygon, r.dont_care) for r in records]
               for image, records in gt_records.items()}
        dets = {image: [Detection(polygon=r.polygon, score=r.score(), id=i) for i, r in enumerate(records)]
                for image, records in det_records.items()}
        report = evaluate_corpus(gts, dets, iou_threshold, self.workers)
        return report, results

    def synth_dir(self, specs: Sequence[ShapeSpec], out_dir: Path, format_name: str = "polygon_json",
                  prefix: str = "synth") -> Dict[str, Any]:
        """One ground-truth file per spec plus a ``specs.lst`` record file."""
        parser = self.format_registry.get_parser(format_name)
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        width = max(5, len(str(len(specs))))

        def handle(item: Tuple[int, ShapeSpec]) -> Dict[str, Any]:
            index, spec = item
            partial = _new_results()
            polygon = fit_vertex_count(generate(spec), format_name)
            output = out_dir / gt_filename(f"{prefix}_{index:0{width}d}")
            output.write_bytes(parser.write_records([AnnotationRecord(polygon=polygon)]))
            partial["regions"] = partial["written"] = 1
            partial["outputs"].append(str(output))
            return partial

        results = self._run(list(enumerate(specs)), handle, "synth")
        (out_dir / "specs.lst").write_text("".join(s.to_record() + "\n" for s in specs), encoding="utf-8")
        return results

"""
End-to-end tests for the ``slpr`` command line.
"""
import json

from slpr.cli import EXIT_DATA_ERROR, EXIT_OK, EXIT_USAGE, main


class TestPipeline:
    """End-to-end runs over synthetic corpora."""

    def run_corpus(self, tmp_path, *synth_args, restore_args=(), count=6):
        gt, tgt, det = tmp_path / "gt", tmp_path / "tgt", tmp_path / "det"
        assert main(["synth", "--count", str(count), "--seed", "3", "--out", str(gt), *synth_args]) == EXIT_OK
        assert main(["encode", "--in", str(gt), "--out", str(tgt), "--threads", "2"]) == EXIT_OK
        assert main(["restore", "--in", str(tgt), "--out", str(det), *restore_args]) == EXIT_OK
        return gt, tgt, det

    def test_rect_corpus_icdar15(self, tmp_path, capsys):
        """Test a rectangle corpus written and restored as ICDAR 2015 files."""
        gt, tgt, det = self.run_corpus(tmp_path, "--kinds", "rect", "--format", "icdar15",
                                       restore_args=("--format", "icdar15"))
        assert len(list(gt.glob("gt_synth_*.txt"))) == 6
        assert (gt / "specs.lst").read_text(encoding="utf-8").count("kind=rect") == 6
        assert len(list(det.glob("res_synth_*.txt"))) == 6
        capsys.readouterr()

        report = tmp_path / "report.json"
        assert main(["eval", "--gt", str(gt), "--det", str(det), "--report", str(report)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "hmean: 1.000" in out
        assert json.loads(report.read_text(encoding="utf-8"))["matched"] == 6

    def test_band_corpus_polygon_json(self, tmp_path, capsys):
        """Test rectangles and sine bands through PLS."""
        gt, tgt, det = self.run_corpus(tmp_path, "--kinds", "rect", "sine_band",
                                       restore_args=("--method", "pls"))
        capsys.readouterr()
        assert main(["eval", "--gt", str(gt), "--det", str(det), "--iou", "0.5"]) == EXIT_OK
        assert "hmean: 1.000" in capsys.readouterr().out

    def test_mixed_corpus_of_200_shapes(self, tmp_path, capsys):
        """Test the full synth, encode, restore and eval chain on 200 mixed shapes."""
        gt, tgt, det = self.run_corpus(tmp_path, "--threads", "4", restore_args=("--method", "pls"), count=200)
        assert len(list(tgt.glob("tgt_*.txt"))) == 200
        capsys.readouterr()
        report = tmp_path / "report.json"
        assert main(["eval", "--gt", str(gt), "--det", str(det), "--report", str(report)]) == EXIT_OK
        summary = json.loads(report.read_text(encoding="utf-8"))
        assert summary["total_gt"] == 200
        assert summary["hmean"] >= 0.99

    def test_decode_and_nms(self, tmp_path, capsys):
        """Test decoding targets and suppressing restored detections."""
        gt, tgt, det = self.run_corpus(tmp_path, "--kinds", "rect")
        pts = tmp_path / "pts"
        assert main(["decode", "--in", str(tgt), "--out", str(pts)]) == EXIT_OK
        line = (pts / "pts_synth_00000.txt").read_text(encoding="utf-8").splitlines()[0]
        assert len(line.split()) == 56

        kept, svg = tmp_path / "kept", tmp_path / "svg"
        args = ["nms", "--mode", "pnms", "--threshold", "0.3", "--in", str(det), "--out", str(kept),
                "--dump-svg", str(svg)]
        assert main(args) == EXIT_OK
        assert len(list(kept.glob("res_*.txt"))) == 6
        assert (svg / "synth_00000.svg").read_text(encoding="utf-8").startswith("<svg")

    def test_bad_region_is_reported(self, tmp_path, capsys):
        """Test that a degenerate region fails its file but not the run."""
        gt, out = tmp_path / "gt", tmp_path / "tgt"
        gt.mkdir()
        (gt / "gt_good.txt").write_text("0,0,4,0,4,2,0,2,a\n", encoding="utf-8")
        (gt / "gt_bad.txt").write_text("0,0,4,0,8,0,2,0,a\n", encoding="utf-8")
        assert main(["encode", "--in", str(gt), "--out", str(out)]) == EXIT_DATA_ERROR
        assert (out / "tgt_good.txt").read_text(encoding="utf-8").count("\n") == 1
        assert "gt_bad.txt" in capsys.readouterr().err

    def test_nms_unrecognised_first_line(self, tmp_path, capsys):
        """Test that nms fails a file whose grammar cannot be recognised."""
        det, kept = tmp_path / "det", tmp_path / "kept"
        det.mkdir()
        (det / "res_good.txt").write_text("0,0,4,0,4,2,0,2,0.9\n", encoding="utf-8")
        (det / "res_mixed.txt").write_text("this is not a detection file\n0,0,4,0,4,2,0,2,0.9\n",
                                          encoding="utf-8")
        assert main(["nms", "--in", str(det), "--out", str(kept)]) == EXIT_DATA_ERROR
        assert "res_mixed.txt" in capsys.readouterr().err
        assert not (kept / "res_mixed.txt").exists()
        assert (kept / "res_good.txt").read_text(encoding="utf-8") == "0,0,4,0,4,2,0,2,0.9\n"


class TestUsage:
    """Test cases for usage errors."""

    def test_missing_arguments(self):
        """Test a command without its required options."""
        assert main(["eval"]) == EXIT_USAGE

    def test_threshold_out_of_range(self, tmp_path):
        """Test rejection of a threshold outside (0, 1)."""
        args = ["nms", "--threshold", "1.5", "--in", str(tmp_path), "--out", str(tmp_path / "o")]
        assert main(args) == EXIT_USAGE

    def test_unknown_format(self, tmp_path):
        """Test rejection of an unregistered grammar."""
        assert main(["encode", "--format", "totaltext", "--in", str(tmp_path), "--out", str(tmp_path)]) == EXIT_USAGE

    def test_missing_input_dir(self, tmp_path):
        """Test a missing input directory."""
        assert main(["decode", "--in", str(tmp_path / "nope"), "--out", str(tmp_path / "o")]) == EXIT_DATA_ERROR


class TestLossCheck:
    """Test cases for the loss-check command."""

    def test_passes(self, capsys):
        """Test the gradient check report on stdout."""
        assert main(["loss-check", "--samples", "20", "--seed", "4"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "passed: True" in out
        assert "smooth_l1_points: ok" in out

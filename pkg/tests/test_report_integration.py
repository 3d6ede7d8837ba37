from __future__ import annotations

from pathlib import Path

from sphinx.application import Sphinx


def _build_sphinx(*, srcdir: Path, confdir: Path, outdir: Path, doctreedir: Path, strict: bool = True) -> None:
	app = Sphinx(
		srcdir=str(srcdir),
		confdir=str(confdir),
		outdir=str(outdir),
		doctreedir=str(doctreedir),
		buildername="html",
		freshenv=True,
		warningiserror=strict,
	)
	app.build(force_all=True)


def _project(root: Path, index: str) -> dict:
	# Layout:
	# tmp/
	#   docs/ (Sphinx srcdir)
	#   graphs/ (graph files)
	#   _out/ (html)
	#   _doctrees/
	dirs = {name: root / name for name in ("docs", "graphs", "_out", "_doctrees")}
	for d in dirs.values():
		d.mkdir(parents=True, exist_ok=True)

	(dirs["graphs"] / "tri.graph").write_text(
		"graph undirected\nv a\nv b\nv c\ne a b\ne b c\ne c a\n",
		encoding="utf-8",
	)

	src_dir = Path(__file__).resolve().parents[1] / "src"
	(dirs["docs"] / "conf.py").write_text(
		"""import os
import sys

sys.path.insert(0, os.path.abspath(r"{src_dir}"))

extensions = ["orientk"]

orientk_graphs = [r"{graphs}"]

master_doc = "index"
""".format(src_dir=str(src_dir), graphs=str(dirs["graphs"])),
		encoding="utf-8",
	)
	(dirs["docs"] / "index.rst").write_text(index, encoding="utf-8")
	return dirs


def test_report_directive_end_to_end(tmp_path: Path) -> None:
	dirs = _project(
		tmp_path,
		"""Orientation Reports
===============================================================================

See :orientk:graph:`tri`.

.. orientk:report:: tri
   :k: 1
   :checks: euler, weak, orientation
""",
	)
	_build_sphinx(srcdir=dirs["docs"], confdir=dirs["docs"], outdir=dirs["_out"], doctreedir=dirs["_doctrees"])

	index_html = (dirs["_out"] / "index.html").read_text(encoding="utf-8", errors="replace")
	assert "tri (graph)" in index_html
	assert "weakly 2-connected" in index_html
	assert "1-connected orientation" in index_html
	assert "found" in index_html
	assert 'href="#orientk-graph-tri"' in index_html


def test_report_directive_weak_failure_and_missing_graph(tmp_path: Path) -> None:
	dirs = _project(
		tmp_path,
		"""Orientation Reports
===============================================================================

.. orientk:report:: tri
   :k: 2

.. orientk:report:: nowhere
   :k: 1
""",
	)
	_build_sphinx(
		srcdir=dirs["docs"],
		confdir=dirs["docs"],
		outdir=dirs["_out"],
		doctreedir=dirs["_doctrees"],
		strict=False,
	)

	index_html = (dirs["_out"] / "index.html").read_text(encoding="utf-8", errors="replace")
	assert "weakly 4-connected" in index_html
	assert "MIXEDCUT" in index_html
	assert "graph &#39;nowhere&#39; not found" in index_html or "graph 'nowhere' not found" in index_html

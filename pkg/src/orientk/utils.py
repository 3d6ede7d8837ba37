from __future__ import annotations

import glob
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, List, Mapping, Optional, Sequence, TypeVar


T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "ORIENTK_THREADS"

_WILDCARDS = "*?["


def as_list(value) -> list[str]:
	"""Normalize a config value into a list of strings."""
	if value is None:
		return []
	if isinstance(value, (str, Path)):
		return [str(value)]
	return [str(v) for v in value]


def read_text_utf8(path: str | Path) -> str:
	return Path(path).read_text(encoding="utf-8")


def write_text_utf8(path: str | Path, text: str) -> None:
	Path(path).write_text(text, encoding="utf-8")


def resolve_threads(value: Optional[int], environ: Optional[Mapping[str, str]] = None) -> int:
	"""Thread count from an explicit value, else ``ORIENTK_THREADS``, else 1.

	``0`` means one thread per core.
	"""
	environ = os.environ if environ is None else environ
	if value is None:
		raw = environ.get(THREADS_ENV, "").strip()
		if not raw:
			return 1
		try:
			value = int(raw)
		except ValueError:
			raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
	if value < 0:
		raise ValueError(f"thread count must be >= 0, got {value}")
	if value == 0:
		return os.cpu_count() or 1
	return value


def map_ordered(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> List[R]:
	"""``[fn(x) for x in items]``, evaluated on a thread pool when ``threads > 1``."""
	if threads <= 1 or len(items) < 2:
		return [fn(x) for x in items]
	with ThreadPoolExecutor(max_workers=threads) as pool:
		return list(pool.map(fn, items))


def first_hit(fn: Callable[[T], Optional[R]], items: Sequence[T], threads: int = 1) -> Optional[R]:
	"""First non-``None`` ``fn(x)`` in item order.

	Sequential runs stop at the first hit; threaded runs evaluate in chunks.
	"""
	if threads <= 1:
		for x in items:
			hit = fn(x)
			if hit is not None:
				return hit
		return None
	chunk = max(threads * 4, 1)
	for start in range(0, len(items), chunk):
		for hit in map_ordered(fn, items[start : start + chunk], threads):
			if hit is not None:
				return hit
	return None


def _norm_path(path: str) -> str:
	try:
		return os.path.normcase(str(Path(path).resolve()))
	except OSError:
		return os.path.normcase(str(Path(path)))


def collect_files(
	*,
	confdir: Path,
	roots: Iterable[str],
	extensions: Iterable[str],
	excludes: Iterable[str] = (),
) -> list[str]:
	"""Files under ``roots`` (files, directories or globs relative to ``confdir``).

	``excludes`` takes the same forms. An empty ``extensions`` accepts any suffix.
	Returns a sorted, de-duplicated list.
	"""
	confdir = Path(confdir)
	suffixes = {e.lower() for e in extensions}

	def accept(p: Path) -> bool:
		return p.is_file() and (not suffixes or p.suffix.lower() in suffixes)

	def expand(entry: str) -> list[Path]:
		if any(ch in entry for ch in _WILDCARDS):
			return [Path(m) for m in glob.glob(str(confdir / entry), recursive=True)]
		p = Path(entry)
		return [p if p.is_absolute() else confdir / p]

	def walk(entries: Iterable[str]) -> list[str]:
		found: list[str] = []
		for entry in entries:
			for p in expand(str(entry)):
				if p.is_dir():
					found.extend(str(c) for c in p.rglob("*") if accept(c))
				elif accept(p):
					found.append(str(p))
		return found

	files = walk(roots)
	dropped = {_norm_path(f) for f in walk(excludes)}
	return sorted({f for f in files if _norm_path(f) not in dropped})

"""Spectrum cache for the CLI.

Records are keyed by the canonicalized quadrilateral, the representation
and the tool version, and stored as one JSON file each (full precision:
floats are written with 17 significant digits, which round-trips float64
exactly).  Writes go through a temp file and an atomic rename so
concurrent readers never see a partial record.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .quadrilateral import Quadrilateral, canonicalize
from .serialize import dumps_stable
from .volume import VolumeSpectrum, build_matrix, record_to_spectrum, spectrum, spectrum_record

__all__ = ["default_cache_dir", "SpectrumCache"]

ENV_CACHE_DIR = "SPINVOL_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "spinvol"


class SpectrumCache:
    """Read-through cache of canonical-quadrilateral spectra."""

    def __init__(self, directory: Path | str | None = None, enabled: bool = True):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.enabled = enabled

    def _path(self, canon: Quadrilateral, representation: str) -> Path:
        ta, tb, tc, td = canon.twice_tuple()
        rep = "sym" if representation == "real-symmetric" else "antisym"
        name = f"spectrum_{ta}_{tb}_{tc}_{td}_{rep}_v{__version__}.json"
        return self.directory / name

    def load_record(self, q: Quadrilateral, representation: str) -> dict | None:
        if not self.enabled:
            return None
        canon, _ = canonicalize(q)
        path = self._path(canon, representation)
        if not path.is_file():
            return None
        try:
            record = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None
        if record.get("tool_version") != __version__:
            return None
        return record

    def store(self, spec: VolumeSpectrum) -> Path | None:
        if not self.enabled:
            return None
        canon = spec.matrix.quad
        path = self._path(canon, spec.matrix.representation)
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = dumps_stable(spectrum_record(spec, __version__)) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as handle:
                handle.write(payload)
            os.replace(tmp, path)
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            return None
        return path

    def spectrum_for(self, q: Quadrilateral, representation: str, tol: float) -> tuple[VolumeSpectrum, bool]:
        """Spectrum of the canonical representative of q; second element
        tells whether it was served from the cache."""
        record = self.load_record(q, representation)
        if record is not None:
            return record_to_spectrum(record), True
        canon, _ = canonicalize(q)
        spec = spectrum(build_matrix(canon, representation), tol)
        self.store(spec)
        return spec, False

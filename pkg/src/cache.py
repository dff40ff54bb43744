"""
On-disk cache of counting-series coefficient tables.

One file per (ell, modulus). A file holds the longest table computed so far;
a request for a shorter truncation is served by truncating it.

File layout (little endian):

    magic   5 bytes  b"QSER1"
    version u8
    key     32 bytes sha256 of the (ell, modulus) descriptor
    modulus u64      0 for integer coefficients
    trunc   u64
    length  u64      payload length in bytes
    payload          u64 residues in word mode; otherwise, per coefficient,
                     a u32 byte count followed by the signed big-endian integer

Files are written to a temporary name and moved into place, so readers
never see a partial file. A file that fails validation is logged and
treated as a miss.
"""

import hashlib
import logging
import os
import struct
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from . import series as S
from .config import WORD_MODULUS_LIMIT
from .series import Series

logger = logging.getLogger(__name__)

MAGIC = b"QSER1"
VERSION = 1
_HEADER = struct.Struct("<5sB32sQQQ")
_LENGTH = struct.Struct("<I")


class CacheError(OSError):
    """Raised when the cache directory cannot be read or written."""
    pass


def cache_key(ell: int, modulus: Optional[int]) -> bytes:
    descriptor = f"rast|ell={ell}|modulus={modulus or 0}".encode("ascii")
    return hashlib.sha256(descriptor).digest()


def _encode(values: Series) -> bytes:
    if values.modulus is not None and values.modulus <= WORD_MODULUS_LIMIT:
        return np.asarray(values.coeffs, dtype="<u8").tobytes()
    chunks: List[bytes] = []
    for c in values.coeffs:
        c = int(c)
        raw = c.to_bytes((c.bit_length() + 8) // 8, "big", signed=True)
        chunks.append(_LENGTH.pack(len(raw)))
        chunks.append(raw)
    return b"".join(chunks)


def _decode(payload: bytes, trunc: int, modulus: Optional[int]) -> Series:
    if modulus is not None and modulus <= WORD_MODULUS_LIMIT:
        values = np.frombuffer(payload, dtype="<u8").astype(np.int64)
        if len(values) != trunc + 1:
            raise ValueError(f"expected {trunc + 1} residues, found {len(values)}")
        return Series(trunc, modulus, values)
    items = []
    offset = 0
    while offset < len(payload):
        (size,) = _LENGTH.unpack_from(payload, offset)
        offset += _LENGTH.size
        if offset + size > len(payload):
            raise ValueError("truncated integer record")
        items.append(int.from_bytes(payload[offset:offset + size], "big", signed=True))
        offset += size
    if len(items) != trunc + 1:
        raise ValueError(f"expected {trunc + 1} coefficients, found {len(items)}")
    return Series.from_coefficients(items, modulus, trunc)


class CoefficientCache:
    """
    Cache of sum R*_ell(n) q^n tables keyed by (ell, modulus).

    Example:
        >>> cache = CoefficientCache(Path("/tmp/qser"))
        >>> values = cache.rast_series(3, 1000, 8)
    """

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0

    def path_for(self, ell: int, modulus: Optional[int]) -> Path:
        return self.directory / f"rast-{ell}-{modulus or 'Z'}.qser"

    def get(self, ell: int, trunc: int, modulus: Optional[int]) -> Optional[Series]:
        """The cached table cut to `trunc`, or None on a miss."""
        path = self.path_for(ell, modulus)
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            self.misses += 1
            logger.info("cache miss for R*_%d mod %s", ell, modulus or "Z")
            return None
        except OSError as exc:
            raise CacheError(f"cannot read {path}: {exc}") from exc

        try:
            stored = self._parse(data, ell, modulus)
        except (ValueError, struct.error) as exc:
            logger.warning("ignoring corrupt cache file %s: %s", path, exc)
            self.misses += 1
            return None
        if stored.trunc < trunc:
            self.misses += 1
            logger.info("cache for R*_%d mod %s stops at q^%d, need q^%d",
                        ell, modulus or "Z", stored.trunc, trunc)
            return None
        self.hits += 1
        logger.info("cache hit for R*_%d mod %s", ell, modulus or "Z")
        return stored.truncate(trunc) if stored.trunc > trunc else stored

    def _parse(self, data: bytes, ell: int, modulus: Optional[int]) -> Series:
        if len(data) < _HEADER.size:
            raise ValueError("file shorter than the header")
        magic, version, key, stored_mod, trunc, length = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ValueError(f"unsupported version {version}")
        if key != cache_key(ell, modulus):
            raise ValueError("key does not match the file name")
        if stored_mod != (modulus or 0):
            raise ValueError(f"stored modulus {stored_mod} != {modulus or 0}")
        payload = data[_HEADER.size:]
        if len(payload) != length:
            raise ValueError(f"payload is {len(payload)} bytes, header says {length}")
        return _decode(payload, trunc, modulus)

    def put(self, ell: int, values: Series) -> Path:
        """
        Store a table, replacing any file for the same (ell, modulus).

        Raises:
            CacheError: If the file cannot be written
        """
        path = self.path_for(ell, values.modulus)
        payload = _encode(values)
        header = _HEADER.pack(MAGIC, VERSION, cache_key(ell, values.modulus),
                              values.modulus or 0, values.trunc, len(payload))
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as handle:
                    handle.write(header)
                    handle.write(payload)
                os.replace(tmp_name, path)
            except BaseException:
                Path(tmp_name).unlink(missing_ok=True)
                raise
        except OSError as exc:
            raise CacheError(f"cannot write {path}: {exc}") from exc
        logger.info("cached R*_%d mod %s to q^%d", ell, values.modulus or "Z", values.trunc)
        return path

    def rast_series(self, ell: int, trunc: int, modulus: Optional[int] = None) -> Series:
        """Cached drop-in for series.rast_series."""
        cached = self.get(ell, trunc, modulus)
        if cached is not None:
            return cached
        values = S.rast_series(ell, trunc, modulus)
        self.put(ell, values)
        return values

    def entries(self) -> List[Path]:
        if not self.directory.is_dir():
            return []
        return sorted(self.directory.glob("*.qser"))

    def info(self) -> Dict[str, object]:
        files = self.entries()
        return {
            "directory": str(self.directory),
            "entries": len(files),
            "bytes": sum(p.stat().st_size for p in files),
            "files": [p.name for p in files],
        }

    def clear(self) -> int:
        """Delete every cache file; returns how many were removed."""
        removed = 0
        for path in self.entries():
            try:
                path.unlink()
            except OSError as exc:
                raise CacheError(f"cannot remove {path}: {exc}") from exc
            removed += 1
        logger.info("removed %d cache files from %s", removed, self.directory)
        return removed

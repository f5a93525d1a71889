"""Flat-file persistence for sieved Moebius tables.

File layout: magic b"MU01", little-endian uint64 limit, then one signed byte
mu(n) for n = 1..limit.
"""

import re
import struct
from pathlib import Path
from typing import Optional, Union

import numpy as np

from app.config import settings
from app.exceptions import SieveCacheError
from app.logging_config import get_logger
from app.models import MoebiusTable
from app.services.numtheory import moebius_sieve

logger = get_logger(__name__)

MAGIC = b"MU01"
HEADER = struct.Struct("<4sQ")

_NAME_PATTERN = re.compile(r"^moebius_(\d+)\.mu$")


class SieveCache:
    """
    Directory of cached Moebius tables.

    A request for limit N is served by the smallest cached table with
    limit >= N, sliced down; otherwise the table is sieved and stored.
    """

    def __init__(self, cache_dir: Optional[Union[str, Path]] = None):
        self.cache_dir = Path(cache_dir or settings.cache_dir)

    def path_for(self, limit: int) -> Path:
        return self.cache_dir / f"moebius_{limit}.mu"

    def save(self, table: MoebiusTable, path: Optional[Path] = None) -> Path:
        """
        Write a table to disk.

        Raises:
            SieveCacheError: If the file cannot be written
        """
        path = Path(path or self.path_for(table.limit))
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "wb") as handle:
                handle.write(HEADER.pack(MAGIC, table.limit))
                handle.write(table.values[1:].astype("<i1").tobytes())
            logger.info(f"Sieve cached: limit={table.limit}, path={path}")
            return path
        except OSError as e:
            logger.error(f"Failed to write sieve cache {path}: {e}")
            raise SieveCacheError(f"Failed to write sieve cache: {e}", path)

    def load(self, path: Union[str, Path]) -> MoebiusTable:
        """
        Read a table from disk.

        Raises:
            SieveCacheError: If the file is missing, truncated or corrupt
        """
        path = Path(path)
        try:
            with open(path, "rb") as handle:
                header = handle.read(HEADER.size)
            if len(header) != HEADER.size:
                raise SieveCacheError("Sieve cache header truncated", path)
            magic, limit = HEADER.unpack(header)
            if magic != MAGIC:
                raise SieveCacheError(
                    f"Bad sieve cache magic {magic!r}", path
                )
            data = np.fromfile(path, dtype="<i1", offset=HEADER.size)
        except OSError as e:
            logger.error(f"Failed to read sieve cache {path}: {e}")
            raise SieveCacheError(f"Failed to read sieve cache: {e}", path)

        if data.size != limit:
            raise SieveCacheError(
                f"Sieve cache holds {data.size} entries, header says {limit}",
                path,
            )
        if limit < 1 or data[0] != 1 or np.any(np.abs(data) > 1):
            raise SieveCacheError("Sieve cache values out of range", path)

        values = np.empty(limit + 1, dtype=np.int8)
        values[0] = 0
        values[1:] = data
        logger.debug(f"Sieve loaded: limit={limit}, path={path}")
        return MoebiusTable(limit=int(limit), values=values)

    def find(self, limit: int) -> Optional[Path]:
        """Smallest cached file covering ``limit``, if any."""
        if not self.cache_dir.is_dir():
            return None
        best = None
        for path in self.cache_dir.iterdir():
            match = _NAME_PATTERN.match(path.name)
            if not match:
                continue
            cached = int(match.group(1))
            if cached >= limit and (best is None or cached < best[0]):
                best = (cached, path)
        return None if best is None else best[1]

    def get_or_build(self, limit: int, persist: bool = True) -> MoebiusTable:
        """
        Return mu(n) for n <= limit from cache, sieving on a miss.

        Args:
            limit: Largest n required
            persist: Store a freshly sieved table
        """
        path = self.find(limit)
        if path is not None:
            table = self.load(path)
            return table if table.limit == limit else table.truncated(limit)
        table = moebius_sieve(limit)
        if persist:
            self.save(table)
        return table


__all__ = ["MAGIC", "HEADER", "SieveCache"]

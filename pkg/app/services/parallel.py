"""Block-partitioned worker pool for per-point kernels."""

from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, List, Optional, Tuple

import numpy as np

from app.config import settings
from app.logging_config import get_logger
from app.validators import Validator

logger = get_logger(__name__)

Kernel = Callable[[np.ndarray], np.ndarray]


class BlockExecutor:
    """
    Evaluate a kernel over fixed index blocks of a point array.

    Features:
    - Block boundaries depend only on block_size, never on worker count
    - Each block writes its own slice of the output, so results are
      bit-identical for any number of workers
    - Kernel failures propagate to the caller after logging
    """

    def __init__(
        self,
        max_workers: Optional[int] = None,
        block_size: Optional[int] = None,
    ):
        """
        Initialize executor.

        Args:
            max_workers: Worker threads (MAX_CONCURRENT_WORKERS by default)
            block_size: Points per block (BLOCK_SIZE by default)
        """
        self.max_workers = Validator.validate_positive_int(
            max_workers or settings.max_concurrent_workers, "max_workers"
        )
        self.block_size = Validator.validate_positive_int(
            block_size or settings.block_size, "block_size"
        )
        self.blocks_run = 0

    def blocks(self, count: int) -> List[Tuple[int, int]]:
        return [
            (start, min(start + self.block_size, count))
            for start in range(0, count, self.block_size)
        ]

    def map_blocks(
        self, kernel: Kernel, points: np.ndarray, dtype=np.float64
    ) -> np.ndarray:
        """
        Apply ``kernel`` to consecutive blocks of ``points``.

        Args:
            kernel: Maps a 1-d block of points to an equally long array
            points: Points to evaluate
            dtype: Output dtype

        Returns:
            Concatenated kernel output, in point order
        """
        out = np.empty(points.shape[0], dtype=dtype)
        blocks = self.blocks(points.shape[0])

        if self.max_workers == 1 or len(blocks) <= 1:
            for start, stop in blocks:
                out[start:stop] = kernel(points[start:stop])
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                futures = {
                    pool.submit(kernel, points[start:stop]): (start, stop)
                    for start, stop in blocks
                }
                for future in as_completed(futures):
                    start, stop = futures[future]
                    try:
                        out[start:stop] = future.result()
                    except Exception as e:
                        logger.error(
                            f"Block [{start}, {stop}) failed: {e}"
                        )
                        raise

        self.blocks_run += len(blocks)
        logger.debug(
            f"Evaluated {points.shape[0]} points in {len(blocks)} blocks "
            f"with {self.max_workers} workers"
        )
        return out


__all__ = ["BlockExecutor"]

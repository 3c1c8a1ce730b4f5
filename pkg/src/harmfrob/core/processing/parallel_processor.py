#!/usr/bin/env python3
"""
Parallel execution of identity checks and parameter sweeps.

Jobs run on a thread pool; results are returned in submission order so
reports and tables do not depend on completion order.
"""

import logging
import sys
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence

from tqdm import tqdm

from harmfrob.models import CheckStatus, IdentityCheck, Report

logger = logging.getLogger(__name__)


class ParallelProcessor:
    """
    Handles parallel processing of checks and sweeps.
    """

    def __init__(self, max_workers: int = 4, show_progress: Optional[bool] = None):
        """
        Initialize the parallel processor.

        Args:
            max_workers: Maximum number of parallel workers
            show_progress: Draw a tqdm bar; by default only when stderr is a TTY
        """
        if max_workers < 1:
            raise ValueError("max_workers must be positive")
        self.max_workers = max_workers
        self.show_progress = sys.stderr.isatty() if show_progress is None else show_progress

    def _progress(self, total: int, desc: str):
        return tqdm(total=total, desc=desc, disable=not self.show_progress, file=sys.stderr)

    def run_checks(self, checks: Sequence[IdentityCheck],
                   runner: Callable[[IdentityCheck], Report]) -> List[Report]:
        """
        Run identity checks in parallel.

        Args:
            checks: Checks to run
            runner: Callable turning one check into a Report

        Returns:
            Reports in the order of checks; a job that raised becomes an error report
        """
        reports: List[Optional[Report]] = [None] * len(checks)

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_position = {
                executor.submit(runner, check): position for position, check in enumerate(checks)
            }
            with self._progress(len(checks), "checks") as bar:
                for future in as_completed(future_to_position):
                    position = future_to_position[future]
                    check = checks[position]
                    try:
                        reports[position] = future.result()
                    except Exception as e:
                        logger.error("check %s crashed: %s", check.name, e, exc_info=True)
                        reports[position] = Report(check.name, dict(check.params),
                                                   CheckStatus.ERROR, message=str(e))
                    bar.update(1)

        return reports

    def map_parallel(self, func: Callable, items: Sequence[Any], *args,
                     desc: str = "items", **kwargs) -> List[Any]:
        """
        Apply a function to a list of items in parallel.

        Args:
            func: Function to apply to each item
            items: Items to process
            *args: Additional arguments to pass to func
            desc: Progress bar label
            **kwargs: Keyword arguments to pass to func

        Returns:
            Results in the order of items

        Raises:
            Exception: the first exception raised by any job, after all jobs finish
        """
        results: List[Any] = [None] * len(items)
        first_error: Optional[BaseException] = None

        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_position = {
                executor.submit(func, item, *args, **kwargs): position
                for position, item in enumerate(items)
            }
            with self._progress(len(items), desc) as bar:
                for future in as_completed(future_to_position):
                    position = future_to_position[future]
                    try:
                        results[position] = future.result()
                    except Exception as e:
                        logger.error("error processing item %r: %s", items[position], e)
                        if first_error is None:
                            first_error = e
                    bar.update(1)

        if first_error is not None:
            raise first_error
        return results

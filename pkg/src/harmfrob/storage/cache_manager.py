#!/usr/bin/env python3
"""
Cache management for computed harmonic sums and adjoint values.

Values are stored as CacheRecord lines in one append-only text file per
(kind, prime). Appends hold an exclusive advisory lock on the file; reads
go through an in-process table loaded once per file.
"""

import fcntl
import logging
import os
import threading
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from harmfrob.core.arith import PAdic
from harmfrob.core.words.word import CompositionIndex
from harmfrob.errors import CorruptRecordError
from harmfrob.models import CacheRecord, RecordKind

logger = logging.getLogger(__name__)

RecordKey = Tuple[str, int, int, str, Optional[int]]


class CacheManager:
    """
    Manages the persistent value cache.

    Lookups return the highest-precision record for a key, and only when it
    reaches the requested absolute precision.
    """

    def __init__(self, cache_dir: Path):
        """
        Initialize the cache manager.

        Args:
            cache_dir: Directory holding the record files; created if missing
        """
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self._records: Dict[RecordKey, CacheRecord] = {}
        self._loaded: set = set()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def _file_for(self, kind: RecordKind, prime: int) -> Path:
        return self.cache_dir / f"{kind.value}_p{prime}.txt"

    def _read_file(self, path: Path) -> Tuple[List[CacheRecord], int]:
        """Parse a record file, skipping corrupt lines with a warning."""
        records = []
        corrupt = 0
        if not path.exists():
            return records, corrupt
        with open(path, 'r') as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    records.append(CacheRecord.from_line(line))
                except CorruptRecordError as e:
                    corrupt += 1
                    logger.warning("skipping corrupt cache line %s:%d: %s", path.name, number, e)
        return records, corrupt

    def _remember(self, record: CacheRecord) -> None:
        current = self._records.get(record.key)
        if current is None or record.absolute_precision() > current.absolute_precision():
            self._records[record.key] = record

    def _ensure_loaded(self, kind: RecordKind, prime: int) -> None:
        with self._lock:
            if (kind, prime) in self._loaded:
                return
            records, _ = self._read_file(self._file_for(kind, prime))
            for record in records:
                self._remember(record)
            self._loaded.add((kind, prime))

    # ------------------------------------------------------------------
    # Records
    # ------------------------------------------------------------------

    def put(self, record: CacheRecord) -> None:
        """
        Append a record to its file.

        Args:
            record: Record to store
        """
        self._ensure_loaded(record.kind, record.prime)
        path = self._file_for(record.kind, record.prime)
        line = record.to_line() + "\n"
        with self._lock:
            with open(path, 'a') as f:
                fcntl.flock(f.fileno(), fcntl.LOCK_EX)
                try:
                    f.write(line)
                    f.flush()
                    os.fsync(f.fileno())
                finally:
                    fcntl.flock(f.fileno(), fcntl.LOCK_UN)
            self._remember(record)
        logger.debug("cached %s p=%d alpha=%d %s b=%s", record.kind.value, record.prime,
                     record.alpha, record.index, record.b)

    def get(self, kind: RecordKind, prime: int, alpha: int, index: CompositionIndex,
            min_precision: int, b: Optional[int] = None) -> Optional[CacheRecord]:
        """
        Best record for a key, if it reaches min_precision.

        Returns:
            CacheRecord, or None on a miss
        """
        self._ensure_loaded(kind, prime)
        key = (kind.value, prime, alpha, str(index), b)
        with self._lock:
            record = self._records.get(key)
            if record is None or record.absolute_precision() < min_precision:
                self.misses += 1
                return None
            self.hits += 1
        return record

    def put_har(self, prime: int, alpha: int, index: CompositionIndex, value: PAdic) -> None:
        if value.is_exact_zero():
            return
        self.put(CacheRecord.from_padic(RecordKind.HAR, alpha, index, value))

    def get_har(self, prime: int, alpha: int, index: CompositionIndex,
                min_precision: int) -> Optional[PAdic]:
        record = self.get(RecordKind.HAR, prime, alpha, index, min_precision)
        return None if record is None else record.to_padic()

    def put_adjoint(self, prime: int, alpha: int, b: int, index: CompositionIndex,
                    value: PAdic) -> None:
        if value.is_exact_zero():
            return
        self.put(CacheRecord.from_padic(RecordKind.ADJOINT, alpha, index, value, b=b))

    def get_adjoint(self, prime: int, alpha: int, b: int, index: CompositionIndex,
                    min_precision: int) -> Optional[PAdic]:
        record = self.get(RecordKind.ADJOINT, prime, alpha, index, min_precision, b=b)
        return None if record is None else record.to_padic()

    # ------------------------------------------------------------------
    # Maintenance
    # ------------------------------------------------------------------

    def _record_files(self) -> List[Path]:
        return sorted(self.cache_dir.glob("*_p*.txt"))

    def list_records(self, kind: Optional[RecordKind] = None,
                     prime: Optional[int] = None) -> List[CacheRecord]:
        """
        All records on disk, optionally filtered, in file order.
        """
        out = []
        for path in self._record_files():
            records, _ = self._read_file(path)
            for record in records:
                if kind is not None and record.kind is not kind:
                    continue
                if prime is not None and record.prime != prime:
                    continue
                out.append(record)
        return out

    def get_cache_stats(self) -> Dict[str, Any]:
        """
        Get cache statistics.

        Returns:
            Dictionary containing cache statistics
        """
        files = self._record_files()
        lines = 0
        corrupt = 0
        keys = set()
        for path in files:
            records, bad = self._read_file(path)
            lines += len(records)
            corrupt += bad
            keys.update(r.key for r in records)
        return {
            "cache_directory": str(self.cache_dir),
            "files": len(files),
            "records": lines,
            "distinct_keys": len(keys),
            "corrupt_lines": corrupt,
            "bytes": sum(p.stat().st_size for p in files),
            "session_hits": self.hits,
            "session_misses": self.misses,
        }

    def garbage_collect(self) -> Dict[str, int]:
        """
        Rewrite every record file keeping the best record per key.

        Corrupt lines and superseded records are dropped.

        Returns:
            Counts of kept and removed lines
        """
        kept = 0
        removed = 0
        with self._lock:
            for path in self._record_files():
                with open(path, 'r+') as f:
                    fcntl.flock(f.fileno(), fcntl.LOCK_EX)
                    try:
                        best: Dict[RecordKey, CacheRecord] = {}
                        total = 0
                        for line in f:
                            if not line.strip():
                                continue
                            total += 1
                            try:
                                record = CacheRecord.from_line(line)
                            except CorruptRecordError as e:
                                logger.warning("dropping corrupt line in %s: %s", path.name, e)
                                continue
                            current = best.get(record.key)
                            if current is None or \
                                    record.absolute_precision() > current.absolute_precision():
                                best[record.key] = record
                        ordered = sorted(best.values(), key=lambda r: (r.kind.value, r.alpha,
                                                                       r.index, r.b or 0))
                        f.seek(0)
                        f.truncate()
                        f.writelines(r.to_line() + "\n" for r in ordered)
                        f.flush()
                        os.fsync(f.fileno())
                    finally:
                        fcntl.flock(f.fileno(), fcntl.LOCK_UN)
                kept += len(best)
                removed += total - len(best)
            self._records.clear()
            self._loaded.clear()
        logger.info("cache gc: kept %d records, removed %d lines", kept, removed)
        return {"kept": kept, "removed": removed}

    def clear(self) -> int:
        """
        Delete every record file.

        Returns:
            Number of files removed
        """
        count = 0
        with self._lock:
            for path in self._record_files():
                path.unlink()
                count += 1
            self._records.clear()
            self._loaded.clear()
        logger.info("cleared %d cache files", count)
        return count

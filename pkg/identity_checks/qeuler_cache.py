#!/usr/bin/env python3
"""
Q-SYMMETRY q-Euler Table - memoized q-Euler numbers with optional JSON cache

The closed form of E_{n,q}^{(r)} is the most expensive value in the
project and every identity check asks for the same few (n, r) pairs, so
results are kept in a lock-guarded table. A JSON file of canonical strings
can persist the table between runs.
"""

import os
import json
import logging
import threading
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

from exact import RatFunc, parse_ratfunc, InvalidInputError

# Setup logging
logger = logging.getLogger('qsym-cache')

# Configuration
CACHE_FILE_ENV = 'QSYM_CACHE_FILE'


class QEulerTable:
    """Thread-safe table of canonical q-Euler numbers keyed by (n, r)"""

    def __init__(self, cache_file: Optional[str] = None):
        """Initialize the table, loading the cache file if one is given

        Args:
            cache_file: Path to a JSON cache of canonical strings, or None
                for a purely in-memory table
        """
        self.cache_file = Path(cache_file) if cache_file else None
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.table: Dict[Tuple[int, int], RatFunc] = self._load_cache()

    @staticmethod
    def _cache_key(n: int, r: int) -> str:
        return f"{n},{r}"

    def _load_cache(self) -> Dict[Tuple[int, int], RatFunc]:
        """Load canonical values from the cache file, skipping bad entries"""
        table: Dict[Tuple[int, int], RatFunc] = {}
        if not self.cache_file or not self.cache_file.exists():
            return table
        try:
            with open(self.cache_file, 'r', encoding='utf-8') as f:
                raw = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"⚠️ Failed to load q-Euler cache {self.cache_file}: {e}")
            return table

        for key, entry in raw.items():
            try:
                n_text, r_text = key.split(',')
                # re-parsing re-canonicalizes, so a hand-edited file cannot
                # introduce a second form for the same key
                table[(int(n_text), int(r_text))] = parse_ratfunc(entry['value'])
            except (ValueError, KeyError, TypeError, InvalidInputError) as e:
                logger.warning(f"⚠️ Skipping cache entry {key!r}: {e}")
        logger.info(f"📚 Loaded {len(table)} cached q-Euler numbers")
        return table

    def save_cache(self) -> None:
        """Write the table to the cache file (no-op for in-memory tables)"""
        if not self.cache_file:
            return
        with self._lock:
            payload = {
                self._cache_key(n, r): {'value': value.render(), 'n': n, 'r': r}
                for (n, r), value in sorted(self.table.items())
            }
        try:
            self.cache_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.cache_file, 'w', encoding='utf-8') as f:
                json.dump(payload, f, indent=2)
            logger.debug(f"💾 Saved {len(payload)} q-Euler numbers to {self.cache_file}")
        except OSError as e:
            logger.error(f"❌ Failed to save q-Euler cache: {e}")

    def lookup(self, n: int, r: int, compute: Callable[[int, int], RatFunc]) -> RatFunc:
        """Return the cached value for (n, r), computing it once on a miss"""
        key = (n, r)
        with self._lock:
            cached = self.table.get(key)
            if cached is not None:
                self.hits += 1
                return cached
        value = compute(n, r)
        with self._lock:
            # a concurrent miss may have stored first; keep the first value
            stored = self.table.setdefault(key, value)
            self.misses += 1
        return stored

    def prune(self, keep: Callable[[int, int, RatFunc], bool]) -> int:
        """Drop every entry for which keep(n, r, value) is false

        Returns:
            Number of entries removed
        """
        with self._lock:
            rejected = [key for key, value in self.table.items() if not keep(*key, value)]
            for key in rejected:
                del self.table[key]
        for n, r in rejected:
            logger.warning(f"⚠️ Dropping inconsistent cache entry {self._cache_key(n, r)!r}")
        return len(rejected)

    def clear(self) -> None:
        with self._lock:
            self.table.clear()
            self.hits = 0
            self.misses = 0

    def get_cache_stats(self) -> Dict:
        """Get table statistics

        Returns:
            Dictionary with entry count, hit/miss counters and file info
        """
        with self._lock:
            entries = len(self.table)
            hits, misses = self.hits, self.misses
        file_exists = bool(self.cache_file and self.cache_file.exists())
        return {
            'total_entries': entries,
            'hits': hits,
            'misses': misses,
            'cache_file': str(self.cache_file) if self.cache_file else None,
            'cache_size_kb': self.cache_file.stat().st_size / 1024 if file_exists else 0,
        }


def table_from_environment() -> QEulerTable:
    """Build the default table, honouring QSYM_CACHE_FILE"""
    return QEulerTable(os.getenv(CACHE_FILE_ENV))

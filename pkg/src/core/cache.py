"""In-memory TTL cache for certificates and witness searches."""

import logging
import time
from collections import OrderedDict
from functools import wraps
from threading import Lock
from typing import Any, Callable, Dict, Optional, Tuple

logger = logging.getLogger(__name__)


class InMemoryCache:
    """Thread-safe TTL cache, bounded by evicting the least recently used entry."""

    def __init__(self, default_ttl: int = 300, max_entries: int = 4096):
        self.default_ttl = default_ttl
        self.max_entries = max_entries
        self._entries: "OrderedDict[str, Tuple[Any, float]]" = OrderedDict()
        self._lock = Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> Optional[Any]:
        """Value for key, or None if absent or expired."""
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None and time.monotonic() < entry[1]:
                self._entries.move_to_end(key)
                self.hits += 1
                return entry[0]
            if entry is not None:
                del self._entries[key]
            self.misses += 1
            return None

    def set(self, key: str, value: Any, ttl: Optional[int] = None) -> None:
        with self._lock:
            self._entries[key] = (value, time.monotonic() + (ttl or self.default_ttl))
            self._entries.move_to_end(key)
            while len(self._entries) > self.max_entries:
                evicted, _ = self._entries.popitem(last=False)
                logger.debug(f"Evicted {evicted}")

    def delete(self, key: str) -> bool:
        with self._lock:
            return self._entries.pop(key, None) is not None

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def size(self) -> int:
        with self._lock:
            return len(self._entries)

    def cleanup_expired(self) -> int:
        """Drop expired entries; returns how many were removed."""
        now = time.monotonic()
        with self._lock:
            stale = [key for key, (_, expiry) in self._entries.items() if expiry <= now]
            for key in stale:
                del self._entries[key]
        if stale:
            logger.debug(f"Cleaned up {len(stale)} expired cache entries")
        return len(stale)

    def stats(self) -> Dict[str, int]:
        with self._lock:
            return {"size": len(self._entries), "hits": self.hits, "misses": self.misses}


certificate_cache = InMemoryCache(default_ttl=3600)
witness_cache = InMemoryCache(default_ttl=600, max_entries=512)


def cache_result(cache_instance: InMemoryCache, key_func: Callable[..., str], ttl: Optional[int] = None):
    """Memoize non-None results under key_func(*args, **kwargs)."""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            key = key_func(*args, **kwargs)
            cached = cache_instance.get(key)
            if cached is not None:
                logger.debug(f"Cache hit for {func.__name__}: {key!r}")
                return cached
            result = func(*args, **kwargs)
            if result is not None:
                cache_instance.set(key, result, ttl)
            return result
        return wrapper
    return decorator


def word_key_func(prefix: str):
    """Key builder for methods taking (self, word, ...): the printed word plus the other arguments."""
    from .words import format_word

    def key(_self, w, *args, **kwargs) -> str:
        extra = ":".join(str(a) for a in args) + str(sorted(kwargs.items()))
        return f"{prefix}:{format_word(w)}:{extra}"
    return key

"""Capacity-bounded chromosome-to-fitness store with FIFO or LRU eviction.

Layout: a fixed-size chained hash table over each chromosome's packed bytes
gives O(1) average lookup, and every stored entry is also threaded onto a
doubly linked eviction list whose front is the next victim and whose rear is
the newest (FIFO) or most recently used (LRU) entry. FIFO lookups never
reorder the list; an LRU hit moves the entry to the rear.

The slot count is the smallest power of two >= 2 * max(capacity, 1), fixed
at construction. Capacity never changes, so the load factor stays <= 1/2
and no rehashing is ever needed. Slot indexing uses CRC-32 of the packed
bit words: well distributed, cheap, and stable across processes (Python's
builtin ``hash`` is salted per process).
"""

from __future__ import annotations

import enum
import zlib
from typing import Iterator

from .chromosome import Chromosome


class CachePolicy(enum.Enum):
    """Eviction order: insertion order (FIFO) or recency order (LRU)."""

    FIFO = "fifo"
    LRU = "lru"


class _Node:
    __slots__ = ("key", "value", "prev", "next")

    def __init__(self, key, value):
        self.key = key
        self.value = value
        self.prev = None
        self.next = None


class FitnessCache:
    """Bounded key-value store with exact hit/miss accounting.

    ``hits`` and ``misses`` together count every lookup exactly once. Two
    distinct keys with equal values are stored as separate entries; values
    are never deduplicated. Membership tests via ``in`` touch neither the
    counters nor the recency order.
    """

    def __init__(self, capacity: int, policy: CachePolicy | str = CachePolicy.FIFO):
        if capacity < 0:
            raise ValueError(f"capacity must be non-negative, got {capacity}")
        self.capacity = capacity
        self.policy = CachePolicy(policy)
        self.hits = 0
        self.misses = 0
        nslots = 1 << (2 * max(capacity, 1) - 1).bit_length()
        self._slots: list[list[_Node]] = [[] for _ in range(nslots)]
        self._mask = nslots - 1
        self._lru = self.policy is CachePolicy.LRU
        self._len = 0
        # circular sentinel: front = _root.next, rear = _root.prev
        root = _Node(None, None)
        root.prev = root.next = root
        self._root = root

    # -- internal plumbing -------------------------------------------------

    def _find(self, key: Chromosome) -> _Node | None:
        for node in self._slots[zlib.crc32(key.packed) & self._mask]:
            if node.key == key:
                return node
        return None

    def _move_to_rear(self, node: _Node) -> None:
        root = self._root
        if root.prev is node:
            return
        node.prev.next = node.next
        node.next.prev = node.prev
        last = root.prev
        last.next = node
        node.prev = last
        node.next = root
        root.prev = node

    def _insert(self, key: Chromosome, value) -> None:
        """Store a key known to be absent, evicting the front entry if full."""
        if self.capacity == 0:
            return
        if self._len == self.capacity:
            self.evict_front()
        node = _Node(key, value)
        self._slots[zlib.crc32(key.packed) & self._mask].append(node)
        root = self._root
        last = root.prev
        last.next = node
        node.prev = last
        node.next = root
        root.prev = node
        self._len += 1

    # -- public interface --------------------------------------------------

    def get(self, key: Chromosome):
        """Stored value for a hit (refreshing recency under LRU), else None.

        Counts one hit or one miss per call.
        """
        node = self._find(key)
        if node is None:
            self.misses += 1
            return None
        self.hits += 1
        if self._lru:
            self._move_to_rear(node)
        return node.value

    def put(self, key: Chromosome, value) -> None:
        """Insert a new entry at the rear; no-op when capacity is 0."""
        if self._find(key) is not None:
            raise ValueError(f"key already cached: {key}")
        self._insert(key, value)

    def evict_front(self) -> Chromosome:
        """Remove the entry next in eviction order and return its key."""
        node = self._root.next
        if node is self._root:
            raise IndexError("evict_front on an empty cache")
        node.prev.next = node.next
        node.next.prev = node.prev
        self._slots[zlib.crc32(node.key.packed) & self._mask].remove(node)
        self._len -= 1
        return node.key

    def touch(self, key: Chromosome) -> None:
        """Move an existing entry to the rear (no-op if already rearmost)."""
        node = self._find(key)
        if node is None:
            raise KeyError(key)
        self._move_to_rear(node)

    def counters(self) -> tuple[int, int]:
        """(hits, misses) so far."""
        return self.hits, self.misses

    def keys(self) -> Iterator[Chromosome]:
        """Keys in eviction order, front (next victim) to rear (newest)."""
        node = self._root.next
        while node is not self._root:
            yield node.key
            node = node.next

    def dump(self) -> str:
        """One '<bits>,<fitness>' line per entry, front to rear."""
        lines = []
        node = self._root.next
        while node is not self._root:
            lines.append(f"{node.key},{node.value}")
            node = node.next
        return "\n".join(lines)

    def __len__(self) -> int:
        return self._len

    def __contains__(self, key: Chromosome) -> bool:
        return self._find(key) is not None

    # -- diagnostics -------------------------------------------------------

    def chain_lengths(self) -> list[int]:
        """Current length of every hash chain."""
        return [len(chain) for chain in self._slots]

    def check_consistency(self) -> None:
        """Verify the table and the eviction list describe the same entries."""
        list_keys = list(self.keys())
        if len(list_keys) != self._len:
            raise AssertionError("eviction list length disagrees with entry count")
        if self._len > self.capacity:
            raise AssertionError("entry count exceeds capacity")
        chain_keys = [node.key for chain in self._slots for node in chain]
        if len(chain_keys) != self._len:
            raise AssertionError("hash chains hold a different number of entries")
        if set(chain_keys) != set(list_keys):
            raise AssertionError("hash chains and eviction list disagree on keys")
        for i, chain in enumerate(self._slots):
            for node in chain:
                if zlib.crc32(node.key.packed) & self._mask != i:
                    raise AssertionError("entry stored in the wrong slot")


class CachedEvaluator:
    """Fitness source that answers from a cache and evaluates only on a miss.

    ``eval_count`` tracks true fitness-function invocations and always equals
    the cache's miss counter. If the fitness function raises, the error
    propagates and neither the cache nor any counter is modified.
    """

    def __init__(self, fitness_fn, cache: FitnessCache):
        self.fitness_fn = fitness_fn
        self.cache = cache
        self.eval_count = 0

    @classmethod
    def uncached(cls, fitness_fn, policy: CachePolicy | str = CachePolicy.FIFO):
        """Evaluator with a zero-capacity cache: every lookup evaluates."""
        return cls(fitness_fn, FitnessCache(0, policy))

    def lookup_or_evaluate(self, chromosome: Chromosome):
        """Fitness of `chromosome`, from cache when possible."""
        cache = self.cache
        node = cache._find(chromosome)
        if node is not None:
            cache.hits += 1
            if cache._lru:
                cache._move_to_rear(node)
            return node.value
        value = self.fitness_fn(chromosome)
        cache.misses += 1
        self.eval_count += 1
        cache._insert(chromosome, value)
        return value

    __call__ = lookup_or_evaluate

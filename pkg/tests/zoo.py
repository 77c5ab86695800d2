"""Exhaustive catalogue of small posets, one representative per isomorphism
class, for the correspondence tests that quantify over "all posets up to k".

Posets are built in up-row form (bit j of row i set iff element i <= j) and
deduplicated by a canonical relabeling, so the catalogue is deterministic.
"""

import itertools

from medlog.poset import Poset


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _transpose(rows):
    out = [0] * len(rows)
    for i, row in enumerate(rows):
        for j in _bits(row):
            out[j] |= 1 << i
    return out


def _naturally_labeled(k):
    """Down-row tuples of every poset on 0..k-1 whose labels extend the order.

    Element i is inserted above a down-closed subset of 0..i-1, so every
    poset shows up once per admissible labeling; callers deduplicate.
    """
    out = []
    down = []

    def grow():
        i = len(down)
        if i == k:
            out.append(tuple(down))
            return
        for m in range(1 << i):
            closed = 0
            for j in _bits(m):
                closed |= down[j]
            if closed == m:
                down.append((1 << i) | m)
                grow()
                down.pop()

    grow()
    return out


def _profiles(up, down):
    k = len(up)
    prof = [(up[i].bit_count(), down[i].bit_count()) for i in range(k)]
    for _ in range(2):
        prof = [
            (
                prof[i],
                tuple(sorted(prof[j] for j in _bits(up[i] & ~(1 << i)))),
                tuple(sorted(prof[j] for j in _bits(down[i] & ~(1 << i)))),
            )
            for i in range(k)
        ]
    return prof


def canonical_key(up_rows):
    """Lexicographically least relabeling of the up-row matrix.

    Only permutations preserving a refinement-stable invariant profile are
    tried; the profile is itself isomorphism-invariant, so equality of keys
    is exactly isomorphism.
    """
    k = len(up_rows)
    prof = _profiles(up_rows, _transpose(up_rows))
    groups = {}
    for i, p in enumerate(prof):
        groups.setdefault(p, []).append(i)
    blocks = []
    start = 0
    for key in sorted(groups, key=repr):
        blocks.append((groups[key], start))
        start += len(groups[key])
    best = None
    for choice in itertools.product(
        *(itertools.permutations(members) for members, _ in blocks)
    ):
        perm = [0] * k
        for (members, st), order in zip(blocks, choice):
            for off, old in enumerate(order):
                perm[old] = st + off
        new = [0] * k
        for i in range(k):
            m = 0
            for j in _bits(up_rows[i]):
                m |= 1 << perm[j]
            new[perm[i]] = m
        t = tuple(new)
        if best is None or t < best:
            best = t
    return best


_ALL = {}
_ROOTED = {}


def all_posets(k):
    """One Poset per isomorphism class on k elements, canonical rows."""
    if k not in _ALL:
        seen = []
        keys = set()
        for down in _naturally_labeled(k):
            key = canonical_key(_transpose(down))
            if key not in keys:
                keys.add(key)
                seen.append(key)
        _ALL[k] = tuple(Poset(tuple(range(k)), list(rows)) for rows in seen)
    return _ALL[k]


def rooted_posets(k):
    """One rooted Poset per isomorphism class on k elements.

    A rooted poset is a fresh bottom under an arbitrary poset, and removing
    the bottom inverts that, so the classes are in bijection with all_posets
    on one element fewer.  The root gets the last index.
    """
    if k not in _ROOTED:
        if k == 1:
            _ROOTED[k] = (Poset((0,), [1]),)
        else:
            built = []
            for Q in all_posets(k - 1):
                rows = [Q.up_row(i) for i in range(k - 1)]
                rows.append((1 << k) - 1)
                built.append(Poset(tuple(range(k)), rows))
            _ROOTED[k] = tuple(built)
    return _ROOTED[k]


def up_rows(P):
    return [P.up_row(i) for i in range(len(P))]

"""Finite posets as packed reachability rows.

A poset over k elements keeps one integer per element whose bit j is set
iff element j lies (weakly) above element i.  All order queries reduce to
bit tests on these rows, which keeps the model checker free of per-pair
Python overhead.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import VerificationError


class PosetError(ValueError):
    pass


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    def __init__(self, elements, up_rows=None):
        elements = tuple(elements)
        if not elements:
            raise PosetError("a poset needs at least one element")
        self.elements = elements
        self._up = list(up_rows) if up_rows is not None else None

    @cached_property
    def _index(self):
        idx = {}
        for i, e in enumerate(self.elements):
            if e in idx:
                raise PosetError(f"duplicate element {e!r}")
            idx[e] = i
        return idx

    @classmethod
    def from_dict(cls, data):
        """Load from {"elements": [...], "leq": [[lo, hi], ...]}."""
        try:
            elements = data["elements"]
            pairs = data["leq"]
        except (TypeError, KeyError):
            raise PosetError("poset data needs 'elements' and 'leq' keys") from None
        return cls.from_relation(elements, [tuple(p) for p in pairs])

    @classmethod
    def from_relation(cls, elements, pairs):
        """Build from (lower, upper) pairs; reflexive-transitive closure is taken."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise PosetError("duplicate elements")
        rows = [1 << i for i in range(len(elements))]
        for lo, hi in pairs:
            if lo not in index or hi not in index:
                raise PosetError(f"pair ({lo!r}, {hi!r}) mentions an unknown element")
            rows[index[lo]] |= 1 << index[hi]
        for k in range(len(elements)):
            bit = 1 << k
            for i in range(len(elements)):
                if rows[i] & bit:
                    rows[i] |= rows[k]
        for i in range(len(elements)):
            for j in _bits(rows[i] & ~(1 << i)):
                if rows[j] & (1 << i):
                    raise PosetError(
                        f"{elements[i]!r} and {elements[j]!r} reach each other; not antisymmetric"
                    )
        return cls(elements, rows)

    def _build_rows(self):
        raise PosetError("no order relation given")

    def _rows(self):
        if self._up is None:
            self._up = self._build_rows()
        return self._up

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return e in self._index

    def __repr__(self):
        return f"<poset on {len(self.elements)} elements>"

    def index(self, e):
        try:
            return self._index[e]
        except KeyError:
            raise PosetError(f"{e!r} is not an element") from None

    @property
    def full_mask(self):
        return (1 << len(self.elements)) - 1

    def up_row(self, i):
        return self._rows()[i]

    @cached_property
    def _down(self):
        rows = self._rows()
        down = [0] * len(rows)
        for i, row in enumerate(rows):
            bit = 1 << i
            for j in _bits(row):
                down[j] |= bit
        return down

    def down_row(self, i):
        return self._down[i]

    def leq(self, a, b) -> bool:
        return bool(self.up_row(self.index(a)) & (1 << self.index(b)))

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def up_set(self, e):
        return frozenset(self.elements[j] for j in _bits(self.up_row(self.index(e))))

    def down_set(self, e):
        return frozenset(self.elements[j] for j in _bits(self.down_row(self.index(e))))

    def root(self):
        """The least element, or None if there is none."""
        full = self.full_mask
        for i, row in enumerate(self._rows()):
            if row == full:
                return self.elements[i]
        return None

    @cached_property
    def _end_mask(self):
        mask = 0
        for i, row in enumerate(self._rows()):
            if row == (1 << i):
                mask |= 1 << i
        return mask

    def end_points(self):
        """Maximal elements."""
        return tuple(self.elements[j] for j in _bits(self._end_mask))

    def end_mask_of(self, e):
        """Bit mask of maximal elements above e."""
        return self.up_row(self.index(e)) & self._end_mask

    def end_of(self, e):
        return frozenset(self.elements[j] for j in _bits(self.end_mask_of(e)))

    @cached_property
    def _heights(self):
        # longest strict chain upward, computed in an order where every
        # proper successor is done first
        rows = self._rows()
        order = sorted(range(len(rows)), key=lambda i: rows[i].bit_count())
        heights = [0] * len(rows)
        for i in order:
            above = rows[i] & ~(1 << i)
            best = 0
            for j in _bits(above):
                if heights[j] + 1 > best:
                    best = heights[j] + 1
            heights[i] = best
        return heights

    def longest_chain_from(self, e):
        """Number of elements on the longest chain starting at e going up."""
        return self._heights[self.index(e)] + 1

    def covering_pairs(self):
        rows = self._rows()
        out = []
        for i, row in enumerate(rows):
            strict = row & ~(1 << i)
            for j in _bits(strict):
                between = strict & self._down[j] & ~(1 << j)
                if between == 0:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def label(self, e) -> str:
        return str(e)

    def to_dict(self):
        # the covering pairs are a generating relation; loaders take the closure
        return {
            "elements": [self.label(e) for e in self.elements],
            "leq": [[self.label(a), self.label(b)] for a, b in self.covering_pairs()],
        }

    def to_dot(self, annotate=None, mark=None):
        """Graphviz source; covers point upward.  annotate maps element to
        an extra label line, mark singles out one element."""
        lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=box];"]
        for e in self.elements:
            text = self.label(e)
            if annotate and e in annotate and annotate[e]:
                text += "\\n" + annotate[e]
            extra = ' style="bold"' if mark is not None and e == mark else ""
            lines.append(f'  n{self.index(e)} [label="{text}"{extra}];')
        for a, b in self.covering_pairs():
            lines.append(f"  n{self.index(a)} -> n{self.index(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    @cached_property
    def _down_table(self):
        if len(self.elements) > 16:
            return None
        down = self._down
        size = 1 << len(self.elements)
        table = [0] * size
        for s in range(1, size):
            low = s & -s
            table[s] = table[s & (s - 1)] | down[low.bit_length() - 1]
        return table

    def down_closure_fn(self):
        """mask -> mask of everything below (weakly) some member."""
        table = self._down_table
        if table is not None:
            return table.__getitem__
        down = self._down

        def close(mask):
            out = 0
            for j in _bits(mask):
                out |= down[j]
            return out

        return close


@dataclass
class ConditionsReport:
    chain_le: bool
    uni: bool
    end_ge: bool
    longest_chain: int
    end_count: int

    def all_hold(self) -> bool:
        return self.chain_le and self.uni and self.end_ge


def check_uni(P: Poset) -> bool:
    """For every w <= u, v there is z >= w whose endpoint set is exactly
    end(u) union end(v).  Degenerate u = v triples are included; they are
    witnessed by u itself."""
    rows = P._rows()
    emask = [row & P._end_mask for row in rows]
    for w in range(len(rows)):
        above = rows[w]
        targets = {emask[u] | emask[v] for u in _bits(above) for v in _bits(above)}
        have = {emask[z] for z in _bits(above)}
        if targets - have:
            return False
    return True


def check_weak_uni(P: Poset) -> bool:
    """The first-order condition matched by the kp axiom: for all x <= y,
    x <= z with y, z incomparable there is u >= x below both y and z such
    that every v >= u has some w >= v above y or above z.

    On posets where every element sits below an endpoint this implies the
    endpoint-union condition of check_uni."""
    rows = P._rows()
    for x in range(len(rows)):
        above_x = rows[x]
        for y in _bits(above_x):
            for z in _bits(above_x):
                if y == z:
                    continue
                if rows[y] & (1 << z) or rows[z] & (1 << y):
                    continue
                reach = rows[y] | rows[z]
                found = False
                for u in _bits(above_x & P._down[y] & P._down[z]):
                    if all(rows[v] & reach for v in _bits(rows[u])):
                        found = True
                        break
                if not found:
                    return False
    return True


def check_conditions(P: Poset, n: int) -> ConditionsReport:
    longest = max(P.longest_chain_from(e) for e in P.elements)
    return ConditionsReport(
        chain_le=longest <= n,
        uni=check_uni(P),
        end_ge=P._end_mask.bit_count() >= n,
        longest_chain=longest,
        end_count=P._end_mask.bit_count(),
    )


def _verify_frame_iso(P: Poset, n: int, iso) -> None:
    if len(P.elements) != (1 << n) - 1:
        raise VerificationError(
            f"conditions hold for n={n} but |P|={len(P.elements)} != 2^n - 1"
        )
    masks = [iso[e] for e in P.elements]
    if len(set(masks)) != len(masks):
        raise VerificationError("endpoint map is not injective")
    top = (1 << n) - 1
    if any(not 1 <= m <= top for m in masks):
        raise VerificationError("endpoint map leaves the nonempty-subset range")
    for i in range(len(masks)):
        for j in range(len(masks)):
            src = bool(P.up_row(i) & (1 << j))
            tgt = masks[i] & masks[j] == masks[j]
            if src != tgt:
                raise VerificationError("endpoint map is not an order isomorphism")


def characterize(P: Poset):
    """If P is rooted and satisfies the three conditions at n = number of
    endpoints, return (n, iso) where iso maps each element to the bitmask
    of endpoints above it; else None.

    By the characterization theorem the returned map is an order isomorphism
    onto the reverse-inclusion frame of nonempty subsets of an n-set; this is
    re-verified before returning, and a failure raises VerificationError
    because it would contradict the theorem.
    """
    if P.root() is None:
        return None
    n = P._end_mask.bit_count()
    if not check_conditions(P, n).all_hold():
        return None
    ends = P.end_points()
    end_bit = {P.index(e): 1 << k for k, e in enumerate(ends)}
    iso = {}
    for e in P.elements:
        iso[e] = sum(end_bit[j] for j in _bits(P.end_mask_of(e)))
    _verify_frame_iso(P, n, iso)
    return n, iso


def generated_subframe(P: Poset, e):
    """The restriction of P to the up-set of e, plus the element renumbering."""
    keep = list(_bits(P.up_row(P.index(e))))
    pos = {j: k for k, j in enumerate(keep)}
    rows = []
    for j in keep:
        row = 0
        for t in _bits(P.up_row(j)):
            row |= 1 << pos[t]
        rows.append(row)
    sub = Poset(tuple(P.elements[j] for j in keep), rows)
    return sub


@dataclass(frozen=True)
class PMorphism:
    """A monotone map where every step upward in the target lifts to the source."""

    source: Poset
    target: Poset
    mapping: dict

    def __post_init__(self):
        src, tgt, fm = self.source, self.target, self.mapping
        if set(fm) != set(src.elements):
            raise PosetError("mapping must cover exactly the source elements")
        img = [tgt.index(fm[e]) for e in src.elements]
        for i, e in enumerate(src.elements):
            # forth: everything above e must land above f(e)
            for j in _bits(src.up_row(i)):
                if not tgt.up_row(img[i]) & (1 << img[j]):
                    raise PosetError(f"not monotone at {e!r}")
            # back: everything above f(e) must be hit from above e
            hit = 0
            for j in _bits(src.up_row(i)):
                hit |= 1 << img[j]
            if tgt.up_row(img[i]) & ~hit:
                raise PosetError(f"back condition fails at {e!r}")

    def __call__(self, e):
        return self.mapping[e]


def induced_pmorphism(n: int, j: int, g) -> PMorphism:
    """The map X -> g[X] between the reverse-inclusion subset frames on n
    and j elements, where g is a surjection {0..n-1} -> {0..j-1}.

    g may be a dict or a sequence indexed by 0..n-1.  The result is checked
    to be a surjective p-morphism sending root to root; those checks hold by
    theorem once g is onto, so their failure aborts.
    """
    from .medvedev import frame

    if n < j or j < 1:
        raise ValueError("need n >= j >= 1")
    table = [g[i] for i in range(n)]
    if any(not 0 <= v < j for v in table):
        raise ValueError("g must map into {0..j-1}")
    if len(set(table)) != j:
        raise ValueError("g must be onto {0..j-1}")
    src, tgt = frame(n), frame(j)
    mapping = {}
    for world in src.elements:
        image = 0
        for i in _bits(world):
            image |= 1 << table[i]
        mapping[world] = image
    try:
        f = PMorphism(src, tgt, mapping)
    except PosetError as exc:
        raise VerificationError(f"induced map is not a p-morphism: {exc}") from exc
    if set(mapping.values()) != set(tgt.elements):
        raise VerificationError("induced map is not surjective")
    if mapping[src.root_world] != tgt.root_world:
        raise VerificationError("induced map does not send root to root")
    return f


def incompatible(P: Poset, a, b) -> bool:
    """No common upper bound."""
    return P.up_row(P.index(a)) & P.up_row(P.index(b)) == 0


def max_incompatible_family(P: Poset):
    """A largest family of pairwise incompatible elements.

    For every finite poset the maximal elements already form such a family
    of the largest possible size, but the search below does not assume that;
    it is capped by it, which keeps the backtracking shallow.
    """
    rows = P._rows()
    k = len(rows)
    limit = P._end_mask.bit_count()
    compat = []
    for i in range(k):
        c = 0
        for j in range(k):
            if rows[i] & rows[j]:
                c |= 1 << j
        compat.append(c)
    best = []

    def grow(cands, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen[:]
            if len(best) == limit:
                return True
        if len(chosen) + cands.bit_count() <= len(best):
            return False
        for i in _bits(cands):
            chosen.append(i)
            if grow(cands & ~compat[i] & ~((1 << (i + 1)) - 1), chosen):
                return True
            chosen.pop()
        return False

    grow((1 << k) - 1, [])
    return tuple(P.elements[i] for i in best)


def max_pairwise_incompatible(P: Poset) -> int:
    return len(max_incompatible_family(P))

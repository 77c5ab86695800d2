"""Kripke semantics on finite posets: forcing, validity, consequence.

Denotations are computed frame-wide as bitmasks (bit i = element i forces
the formula), so one pass over a formula's subterms settles every world at
once.  Validity search enumerates upset assignments for the variables in
odometer order and only recomputes the subterms a changed variable reaches.

The work accounting is explicit: one unit = one subterm denotation sweep.
Searches compute their exact full-enumeration price upfront and refuse to
start when it exceeds the cap, instead of timing out halfway.
"""

from dataclasses import dataclass, field

from .errors import WorkCapExceeded
from .formula import And, Bottom, Formula, Implies, Or, Var, subformulas, variables
from .poset import Poset, _bits

DEFAULT_WORK_CAP = 10**8
DEFAULT_UPSET_CAP = 2**20


@dataclass(frozen=True)
class UpSet:
    """Upward-closed subset of a poset, stored as an element-index bitmask."""

    poset: Poset
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= self.poset.full_mask:
            raise ValueError("mask out of range for the poset")
        for i in _bits(self.mask):
            if self.poset.up_row(i) & ~self.mask:
                raise ValueError(
                    f"not upward closed at {self.poset.label(self.poset.elements[i])}"
                )

    @classmethod
    def of(cls, poset, members):
        mask = 0
        for e in members:
            mask |= 1 << poset.index(e)
        return cls(poset, mask)

    @classmethod
    def closure(cls, poset, members):
        """Smallest upset containing the given elements."""
        mask = 0
        for e in members:
            mask |= poset.up_row(poset.index(e))
        return cls(poset, mask)

    @property
    def members(self):
        return frozenset(self.poset.elements[i] for i in _bits(self.mask))

    def __contains__(self, e):
        return bool(self.mask >> self.poset.index(e) & 1)

    def __iter__(self):
        return (self.poset.elements[i] for i in _bits(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __repr__(self):
        inner = ", ".join(self.poset.label(e) for e in self)
        return "<upset {" + inner + "}>"


class Valuation:
    """Map from variable names to upsets of one poset.

    Unassigned variables denote the empty set.
    """

    def __init__(self, poset, assignment=None):
        self.poset = poset
        self.assignment = {}
        if assignment:
            for name, up in assignment.items():
                if not isinstance(up, UpSet):
                    raise TypeError(f"value for {name!r} is not an UpSet")
                if up.poset is not poset:
                    raise ValueError(f"upset for {name!r} lives on a different poset")
                self.assignment[name] = up

    @classmethod
    def of(cls, poset, sets):
        """Convenience: sets maps names to element collections (validated as upsets)."""
        return cls(poset, {nm: UpSet.of(poset, members) for nm, members in sets.items()})

    def up(self, name) -> UpSet:
        got = self.assignment.get(name)
        return got if got is not None else UpSet(self.poset, 0)

    def mask(self, name) -> int:
        got = self.assignment.get(name)
        return got.mask if got is not None else 0

    def names(self):
        return sorted(self.assignment)

    def items(self):
        return sorted(self.assignment.items())

    def __repr__(self):
        pairs = ", ".join(f"{nm}={up!r}" for nm, up in self.items())
        return f"<valuation {pairs}>"


class Model:
    def __init__(self, poset, valuation: Valuation):
        if valuation.poset is not poset:
            raise ValueError("valuation lives on a different poset")
        self.poset = poset
        self.valuation = valuation

    def __repr__(self):
        return f"<model on {len(self.poset)} elements, {self.valuation!r}>"


def upset_masks(P: Poset, cap=DEFAULT_UPSET_CAP):
    """All upset bitmasks of P, ascending.  Cached on the poset."""
    masks = getattr(P, "_upset_masks", None)
    if masks is None:
        rows = P._rows()
        # handle each element only after everything strictly above it
        order = sorted(range(len(rows)), key=lambda i: rows[i].bit_count())
        masks = [0]
        for i in order:
            need = rows[i] & ~(1 << i)
            bit = 1 << i
            fresh = [m | bit for m in masks if m & need == need]
            if len(masks) + len(fresh) > cap:
                raise WorkCapExceeded(
                    f"more than {cap} upsets; raise the cap to enumerate them",
                    required=len(masks) + len(fresh),
                )
            masks.extend(fresh)
        masks.sort()
        masks = tuple(masks)
        P._upset_masks = masks
    if len(masks) > cap:
        raise WorkCapExceeded(
            f"{len(masks)} upsets exceed the cap of {cap}", required=len(masks)
        )
    return masks


def upsets(P: Poset, cap=DEFAULT_UPSET_CAP):
    return [UpSet(P, m) for m in upset_masks(P, cap)]


_BOT, _VAR, _AND, _OR, _IMP = range(5)

_KIND = {Bottom: _BOT, Var: _VAR, And: _AND, Or: _OR, Implies: _IMP}


@dataclass
class _Prog:
    ops: tuple          # (kind, a, b) triples, children before parents
    roots: tuple        # op index of each input formula
    names: tuple        # variable names, sorted; ordinal = position
    sched: tuple        # sched[p] = op indices to redo when variable p changes
    levels: tuple = field(repr=False, default=())


def _compile(formulas, names):
    ordinal = {nm: i for i, nm in enumerate(names)}
    index = {}
    ops = []
    levels = []
    for f in formulas:
        for sub in subformulas(f):
            if sub in index:
                continue
            kind = _KIND[type(sub)]
            if kind == _BOT:
                a = b = 0
                lvl = -1
            elif kind == _VAR:
                a, b = ordinal[sub.name], 0
                lvl = a
            else:
                a, b = index[sub.left], index[sub.right]
                lvl = max(levels[a], levels[b])
            index[sub] = len(ops)
            ops.append((kind, a, b))
            levels.append(lvl)
    roots = tuple(index[f] for f in formulas)
    sched = tuple(
        tuple(i for i, lvl in enumerate(levels) if lvl >= p) for p in range(len(names))
    )
    return _Prog(tuple(ops), roots, tuple(names), sched, tuple(levels))


def _run(den, ops, indices, assign, full, down):
    for i in indices:
        kind, a, b = ops[i]
        if kind == _IMP:
            bad = den[a] & ~den[b]
            den[i] = full & ~down(bad) if bad else full
        elif kind == _AND:
            den[i] = den[a] & den[b]
        elif kind == _OR:
            den[i] = den[a] | den[b]
        elif kind == _VAR:
            den[i] = assign[a]
        else:
            den[i] = 0


def _sweep_cost(nops, sched, count):
    total = nops
    for p, indices in enumerate(sched):
        total += (count - 1) * count**p * len(indices)
    return total


def _sweep(P, premises, conclusion, world, work_cap, upset_cap, collect=False):
    """Enumerate valuations over the variables of the sequent.

    world given: look for a valuation forcing every premise but not the
    conclusion there (first in order).  world None: look for such a world
    under any valuation.  collect: no early exit; gather the mask of all
    elements where some valuation forces the premises but not the conclusion.

    Returns (witness assignment or None, spent units, bad-world mask).
    """
    names = sorted(set(variables(conclusion)).union(*map(variables, premises)))
    prog = _compile(list(premises) + [conclusion], names)
    U = upset_masks(P, upset_cap)
    k = len(names)
    total = _sweep_cost(len(prog.ops), prog.sched, len(U)) if k else len(prog.ops)
    if total > work_cap:
        raise WorkCapExceeded(
            f"full search needs {total} unit sweeps, over the cap of {work_cap}",
            required=total,
        )
    full = P.full_mask
    down = P.down_closure_fn()
    den = [0] * len(prog.ops)
    prem_roots = prog.roots[:-1]
    concl_root = prog.roots[-1]
    wbit = 0 if world is None else 1 << P.index(world)

    def bad_mask_now():
        m = full & ~den[concl_root]
        for r in prem_roots:
            if not m:
                break
            m &= den[r]
        return m

    idx = [0] * k
    assign = [U[0]] * k
    spent = 0
    bad_total = 0
    _run(den, prog.ops, range(len(prog.ops)), assign, full, down)
    spent += len(prog.ops)
    last = len(U) - 1
    while True:
        bad = bad_mask_now()
        if world is not None:
            bad &= wbit
        if bad:
            if collect:
                bad_total |= bad
            else:
                witness = {nm: assign[p] for p, nm in enumerate(names)}
                return witness, spent, bad
        p = k - 1
        while p >= 0 and idx[p] == last:
            p -= 1
        if p < 0:
            return None, spent, bad_total
        idx[p] += 1
        assign[p] = U[idx[p]]
        for q in range(p + 1, k):
            idx[q] = 0
            assign[q] = U[0]
        _run(den, prog.ops, prog.sched[p], assign, full, down)
        spent += len(prog.sched[p])


def _to_valuation(P, witness):
    if witness is None:
        return None
    return Valuation(P, {nm: UpSet(P, m) for nm, m in witness.items()})


def valid_at(P, w, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP) -> bool:
    witness, _, _ = _sweep(P, (), f, w, work_cap, upset_cap)
    return witness is None


def falsify_at(P, w, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP):
    """First valuation (in enumeration order) not forcing f at w, or None."""
    witness, _, _ = _sweep(P, (), f, w, work_cap, upset_cap)
    return _to_valuation(P, witness)


def consequence(P, w, premises, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP) -> bool:
    """Do all valuations forcing every premise at w also force f at w?"""
    witness, _, _ = _sweep(P, tuple(premises), f, w, work_cap, upset_cap)
    return witness is None


def consequence_witness(P, w, premises, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP):
    """(valuation or None, units spent) for the consequence check at w."""
    witness, spent, _ = _sweep(P, tuple(premises), f, w, work_cap, upset_cap)
    return _to_valuation(P, witness), spent


def consequence_all(P, premises, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP) -> bool:
    """Consequence holding at every element of P under every valuation."""
    witness, _, _ = _sweep(P, tuple(premises), f, None, work_cap, upset_cap)
    return witness is None


def falsifiable_worlds(P, f, work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP) -> int:
    """Bitmask of elements where some valuation does not force f.

    One full sweep; element i is clear in the result iff valid_at holds there.
    """
    _, _, bad = _sweep(P, (), f, None, work_cap, upset_cap, collect=True)
    return bad


def denotation(model: Model, f: Formula) -> UpSet:
    """The set of elements forcing f; upward closure is revalidated on wrap."""
    names = sorted(variables(f))
    prog = _compile([f], names)
    assign = [model.valuation.mask(nm) for nm in names]
    den = [0] * len(prog.ops)
    _run(den, prog.ops, range(len(prog.ops)), assign, model.poset.full_mask,
         model.poset.down_closure_fn())
    return UpSet(model.poset, den[prog.roots[0]])


def forces(model: Model, w, f: Formula) -> bool:
    return bool(denotation(model, f).mask >> model.poset.index(w) & 1)


def _remap_mask(mask, keep):
    out = 0
    for new, old in enumerate(keep):
        if mask >> old & 1:
            out |= 1 << new
    return out


def generated_submodel(model: Model, w):
    """Restriction of the model to the up-set of w (same element ids)."""
    from .poset import generated_subframe

    P = model.poset
    keep = list(_bits(P.up_row(P.index(w))))
    sub = generated_subframe(P, w)
    assignment = {
        nm: UpSet(sub, _remap_mask(up.mask, keep))
        for nm, up in model.valuation.assignment.items()
    }
    return Model(sub, Valuation(sub, assignment))


def pullback(valuation: Valuation, pmorphism) -> Valuation:
    """Valuation on the p-morphism's source: preimages of the target's upsets."""
    src, tgt = pmorphism.source, pmorphism.target
    if valuation.poset is not tgt:
        raise ValueError("valuation lives on a different poset than the target")
    assignment = {}
    for nm, up in valuation.assignment.items():
        mask = 0
        for i, e in enumerate(src.elements):
            if up.mask >> tgt.index(pmorphism.mapping[e]) & 1:
                mask |= 1 << i
        assignment[nm] = UpSet(src, mask)
    return Valuation(src, assignment)

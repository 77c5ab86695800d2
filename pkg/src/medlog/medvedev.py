"""The reverse-inclusion subset frames, their decision procedure, and the
demonstrations that separate the logics of neighbouring frames.

Worlds of the n-element frame are the nonzero bitmasks over n bits, read as
nonempty subsets of {0..n-1}; X <= Y holds when Y's bits are a subset of
X's.  The root is the full mask and the endpoints are the singletons.
"""

from dataclasses import dataclass

from .errors import VerificationError
from .formula import (
    BOT,
    Formula,
    Implies,
    Or,
    Var,
    bd,
    big_or,
    fresh,
    lam,
    neg,
    render,
    top,
)
from .poset import Poset, PosetError, _bits, max_incompatible_family
from .semantics import (
    DEFAULT_UPSET_CAP,
    DEFAULT_WORK_CAP,
    Model,
    UpSet,
    Valuation,
    consequence,
    consequence_witness,
    forces,
    valid_at,
)


class MedvedevFrame(Poset):
    def __init__(self, n: int):
        if not 1 <= n <= 19:
            raise ValueError("frame size must be between 1 and 19")
        self.n = n
        self.root_world = (1 << n) - 1
        super().__init__(range(1, 1 << n))

    def index(self, w):
        if not (isinstance(w, int) and 1 <= w <= self.root_world):
            raise PosetError(f"{w!r} is not a world of this frame")
        return w - 1

    def leq(self, a, b) -> bool:
        self.index(a)
        self.index(b)
        return a & b == b

    def _build_rows(self):
        rows = []
        for w in self.elements:
            m = 0
            s = w
            while s:
                m |= 1 << (s - 1)
                s = (s - 1) & w
            rows.append(m)
        return rows

    @property
    def _end_mask(self):
        return sum(1 << ((1 << i) - 1) for i in range(self.n))

    def root(self):
        return self.root_world

    def end_points(self):
        return tuple(1 << i for i in range(self.n))

    def covering_pairs(self):
        out = []
        for w in self.elements:
            if w.bit_count() < 2:
                continue
            below = sorted(w & ~(1 << b) for b in _bits(w))
            out.extend((w, y) for y in below)
        return out

    def label(self, w) -> str:
        return "{" + ",".join(str(b) for b in _bits(w)) + "}"

    def parse_world(self, text: str) -> int:
        """Read a world from '{0,1}' or '0,1' notation."""
        body = text.strip().removeprefix("{").removesuffix("}")
        mask = 0
        for part in body.split(","):
            part = part.strip()
            if not part.isdigit():
                raise PosetError(f"cannot read a world from {text!r}")
            b = int(part)
            if not 0 <= b < self.n:
                raise PosetError(f"{b} is outside 0..{self.n - 1}")
            mask |= 1 << b
        if mask == 0:
            raise PosetError("a world must be a nonempty subset")
        return mask

    def __repr__(self):
        return f"<frame on subsets of a {self.n}-set, {len(self.elements)} worlds>"


_frames: dict = {}


def frame(n: int) -> MedvedevFrame:
    got = _frames.get(n)
    if got is None:
        got = _frames[n] = MedvedevFrame(n)
    return got


def _upset_labels(up: UpSet):
    return [up.poset.label(e) for e in up]


@dataclass
class Countermodel:
    model: Model
    world: object
    premises: tuple
    conclusion: Formula

    def to_json_dict(self):
        P = self.model.poset
        return {
            "schema": "medlog.countermodel/1",
            "poset": P.to_dict(),
            "world": P.label(self.world),
            "premises": [render(g) for g in self.premises],
            "formula": render(self.conclusion),
            "valuation": {
                nm: _upset_labels(up) for nm, up in self.model.valuation.items()
            },
        }

    def to_text(self):
        P = self.model.poset
        lines = [f"countermodel on {len(P)} worlds"]
        lines.append(f"world: {P.label(self.world)}")
        if self.premises:
            lines.append("premises: " + "; ".join(render(g) for g in self.premises))
        lines.append(f"formula: {render(self.conclusion)}")
        lines.append("valuation:")
        items = self.model.valuation.items()
        if not items:
            lines.append("  (empty)")
        for nm, up in items:
            lines.append(f"  {nm} = {{" + ", ".join(_upset_labels(up)) + "}")
        return "\n".join(lines) + "\n"

    def to_dot(self):
        P = self.model.poset
        annotate = {}
        for e in P.elements:
            names = [nm for nm, up in self.model.valuation.items() if e in up]
            if names:
                annotate[e] = " ".join(names)
        return P.to_dot(annotate=annotate, mark=self.world)


@dataclass
class Verdict:
    valid: bool
    witness: Countermodel | None
    budget: int

    def __post_init__(self):
        if self.valid != (self.witness is None):
            raise ValueError("witness must be present exactly when invalid")

    def to_json_dict(self):
        return {
            "schema": "medlog.verdict/1",
            "valid": self.valid,
            "budget": self.budget,
            "countermodel": None if self.valid else self.witness.to_json_dict(),
        }

    def to_text(self):
        if self.valid:
            return "valid\n"
        return "invalid\n" + self.witness.to_text()


def decide(n: int, premises, conclusion: Formula,
           work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP) -> Verdict:
    """Does the premise set entail the conclusion at the root of the n-frame?"""
    P = frame(n)
    premises = tuple(premises)
    valuation, spent = consequence_witness(
        P, P.root_world, premises, conclusion, work_cap, upset_cap
    )
    if valuation is None:
        return Verdict(True, None, spent)
    cm = Countermodel(Model(P, valuation), P.root_world, premises, conclusion)
    return Verdict(False, cm, spent)


def edn_root_check(P: Poset, n: int) -> bool:
    """Semantic side of the endpoint rule: at least n pairwise incompatible
    elements exist (for rooted P this is what validating the rule means)."""
    return len(max_incompatible_family(P)) >= n


def edn_falsifier(P: Poset, n: int,
                  work_cap=DEFAULT_WORK_CAP, upset_cap=DEFAULT_UPSET_CAP):
    """None when the rule holds at the root (after verifying the witness
    valuation forcing each lam_i at its incompatible element); otherwise the
    rule instance whose premise is root-valid while its conclusion is not,
    paired with a valuation falsifying that conclusion.
    """
    root = P.root()
    if root is None:
        raise PosetError("the rule check needs a rooted poset")
    family = max_incompatible_family(P)
    names = fresh((), n)
    lams = [lam(i, n, names) for i in range(1, n + 1)]
    if len(family) >= n:
        picks = family[:n]
        vprime = Valuation(
            P, {names[i]: UpSet(P, P.up_row(P.index(u))) for i, u in enumerate(picks)}
        )
        model = Model(P, vprime)
        for i, u in enumerate(picks):
            if not forces(model, u, lams[i]):
                raise VerificationError(
                    f"upset valuation fails to force lam_{i + 1} at its own element"
                )
        return None
    disj = big_or([neg(l) for l in lams])
    if not valid_at(P, root, disj, work_cap, upset_cap):
        raise VerificationError(
            "fewer than n pairwise incompatible elements, yet the negated-lam "
            "disjunction is not root-valid"
        )
    conclusion = Implies(top(), BOT)
    nothing = Valuation(P, {})
    if forces(Model(P, nothing), root, conclusion):
        raise VerificationError("the root forces top -> bot")
    premise = Implies(top(), big_or([BOT] + [neg(l) for l in lams]))
    return premise, nothing


def separation_witness(n: int, work_cap=DEFAULT_WORK_CAP) -> Formula:
    """bd(n), verified to hold on the n-frame and fail on the (n+1)-frame."""
    f = bd(n)
    if not decide(n, (), f, work_cap).valid:
        raise VerificationError(f"bd({n}) is not valid on the {n}-frame")
    if decide(n + 1, (), f, work_cap).valid:
        raise VerificationError(f"bd({n}) did not fail on the {n + 1}-frame")
    return f


def _dp_fallback(n: int, work_cap):
    # bounded search over small disjunctions; the primary witness choice
    # failing would already be a refutation of the proposition, so this
    # only exists to keep the operation total
    p, q = Var("p"), Var("q")
    pool = [p, q, neg(p), neg(q), neg(neg(p)), Implies(p, q), Implies(q, p)]
    for i, a in enumerate(pool):
        for b in pool[i + 1:]:
            both = Or(a, b)
            if (
                decide(n, (), both, work_cap).valid
                and not decide(n, (), a, work_cap).valid
                and not decide(n, (), b, work_cap).valid
            ):
                return a, b
    raise VerificationError("no small disjunction witnesses the failure")


def dp_failure_witness(n: int, work_cap=DEFAULT_WORK_CAP):
    """A pair (a, b) with a | b valid on the n-frame while neither disjunct is.

    The first candidate is the top-level split of bd(n) itself; a bounded
    search over small disjunctions is the fallback.
    """
    b = bd(n)
    left, right = b.left, b.right
    if (
        decide(n, (), b, work_cap).valid
        and not decide(n, (), left, work_cap).valid
        and not decide(n, (), right, work_cap).valid
    ):
        return left, right
    return _dp_fallback(n, work_cap)


def _cardinality_upset(P: MedvedevFrame, k: int) -> UpSet:
    mask = 0
    for w in P.elements:
        if w.bit_count() <= k:
            mask |= 1 << (w - 1)
    return UpSet(P, mask)


def compactness_witness(i: int) -> Model:
    """A model on the (i+1)-frame whose root forces bd(j) -> p0 for every
    j <= i but not p0, so the finite premise family up to i entails nothing."""
    if i < 1:
        raise ValueError("need i >= 1")
    P = frame(i + 1)
    assignment = {f"p{k}": _cardinality_upset(P, k) for k in range(1, i + 1)}
    assignment["p0"] = _cardinality_upset(P, i)
    model = Model(P, Valuation(P, assignment))
    root = P.root_world
    for j in range(1, i + 1):
        if not forces(model, root, Implies(bd(j), Var("p0"))):
            raise VerificationError(f"root fails bd({j}) -> p0 on the witness model")
    if forces(model, root, Var("p0")):
        raise VerificationError("root forces p0 on the witness model")
    return model


def compactness_entailment(n: int, work_cap=DEFAULT_WORK_CAP) -> bool:
    """On the n-frame the premises bd(j) -> p0 for j <= n do entail p0 at the
    root (the j = n premise already fires there)."""
    P = frame(n)
    premises = [Implies(bd(j), Var("p0")) for j in range(1, n + 1)]
    return consequence(P, P.root_world, premises, Var("p0"), work_cap)

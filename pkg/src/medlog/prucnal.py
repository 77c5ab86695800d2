"""Structural completeness machinery for the subset-frame logics.

The substitution sending each variable to a formula that characterizes its
upset turns any root countermodel of phi -> psi into a substitution under
which phi becomes valid while psi stays invalid.  The base formulas doing
the characterizing are built here from binary patterns of double-negated
variables: with m = ceil(log2 n) variables q1..qm, the pattern for index i
takes ~~qk where bit k-1 of i is set and ~qk where it is clear, and the
last base formula absorbs the patterns of the unused indices.  The three
defining conditions are machine-checked at construction instead of being
imported from anywhere.
"""

from dataclasses import dataclass

from .errors import VerificationError
from .formula import (
    And,
    Bottom,
    Formula,
    Implies,
    Or,
    Var,
    big_and,
    big_or,
    neg,
    render,
    subformulas,
    substitute,
    variables,
)
from .medvedev import MedvedevFrame, Verdict, decide, frame
from .poset import _bits
from .semantics import (
    DEFAULT_WORK_CAP,
    Model,
    UpSet,
    Valuation,
    consequence_witness,
    denotation,
)

MAX_BASE = 4
TAUT_VAR_CAP = 24


def classical_taut(f: Formula) -> bool:
    """Truth-table validity, reading the arrow classically."""
    names = sorted(variables(f))
    if len(names) > TAUT_VAR_CAP:
        raise ValueError(f"more than {TAUT_VAR_CAP} variables")
    rows = 1 << len(names)
    full = (1 << rows) - 1
    # column c of variable k = truth of qk in assignment c
    cols = {}
    for k, nm in enumerate(names):
        col = 0
        for c in range(rows):
            if c >> k & 1:
                col |= 1 << c
        cols[nm] = col
    val = {}
    for sub in subformulas(f):
        if isinstance(sub, Var):
            val[sub] = cols[sub.name]
        elif isinstance(sub, Bottom):
            val[sub] = 0
        elif isinstance(sub, And):
            val[sub] = val[sub.left] & val[sub.right]
        elif isinstance(sub, Or):
            val[sub] = val[sub.left] | val[sub.right]
        else:
            val[sub] = ~val[sub.left] & full | val[sub.right]
    return val[f] == full


def _pattern(i: int, m: int, names) -> Formula:
    if m == 0:
        q = Var(names[0])
        return Implies(q, q)
    parts = []
    for k in range(m):
        q = Var(names[k])
        parts.append(neg(neg(q)) if i >> k & 1 else neg(q))
    return big_and(parts)


@dataclass(frozen=True)
class BaseSystem:
    n: int
    alphas: tuple
    v0: Valuation

    @property
    def frame(self) -> MedvedevFrame:
        return self.v0.poset


def base(n: int) -> BaseSystem:
    """n base formulas plus their valuation, with the three conditions
    (pairwise classical inconsistency, classical covering under double
    negation, endpoint discrimination) verified before returning."""
    if not 1 <= n <= MAX_BASE:
        raise ValueError(f"base size must be between 1 and {MAX_BASE}")
    m = (n - 1).bit_length()
    names = [f"q{k}" for k in range(1, max(m, 1) + 1)]
    patterns = [_pattern(i, m, names) for i in range(1 << m)]
    alphas = patterns[: n - 1]
    alphas.append(big_or(patterns[n - 1:]))
    P = frame(n)
    assignment = {}
    for k in range(m):
        mask = 0
        for j in range(n):
            if j >> k & 1:
                mask |= 1 << ((1 << j) - 1)
        assignment[names[k]] = UpSet(P, mask)
    v0 = Valuation(P, assignment)
    sys = BaseSystem(n, tuple(alphas), v0)
    _verify_base(sys)
    return sys


def _verify_base(sys: BaseSystem) -> None:
    al = sys.alphas
    for i in range(sys.n):
        for j in range(i + 1, sys.n):
            if not classical_taut(neg(big_and([al[i], al[j]]))):
                raise VerificationError(f"base formulas {i} and {j} are compatible")
    if not classical_taut(neg(neg(big_or(al)))):
        raise VerificationError("base formulas do not cover classically")
    model = Model(sys.frame, sys.v0)
    dens = [denotation(model, a).mask for a in al]
    for i in range(sys.n):
        for j in range(sys.n):
            endpoint_bit = (1 << j) - 1
            forced = bool(dens[i] >> endpoint_bit & 1)
            if forced != (i == j):
                raise VerificationError(
                    f"base formula {i} at endpoint {j}: forced={forced}"
                )


def alpha_upset(S: UpSet, sys: BaseSystem) -> Formula:
    """A formula forced under the base valuation exactly on S.

    Each world W in S contributes ~~(the disjunction of the base formulas
    indexed by W's members); the upset is their disjunction, empty to bot.
    """
    if S.poset is not sys.frame:
        raise ValueError("upset lives on a different frame than the base system")
    parts = []
    for w in S.poset.elements:
        if S.mask >> (w - 1) & 1:
            parts.append(neg(neg(big_or([sys.alphas[i] for i in _bits(w)]))))
    return big_or(parts)


def prucnal_subst(V: Valuation, sys: BaseSystem) -> dict:
    """The substitution sending each assigned variable to the formula
    characterizing its upset."""
    return {nm: alpha_upset(up, sys) for nm, up in V.items()}


def substitution_agrees(f: Formula, sigma: dict, V: Valuation, sys: BaseSystem) -> bool:
    """Whether sigma moves f and each of its subterms from V to the base
    valuation without changing any denotation."""
    mv = Model(sys.frame, V)
    m0 = Model(sys.frame, sys.v0)
    for sub in subformulas(f):
        if denotation(mv, sub).mask != denotation(m0, substitute(sub, sigma)).mask:
            return False
    return True


@dataclass
class DemoReport:
    n: int
    phi: Formula
    psi: Formula
    vacuous: bool
    witness: Valuation | None = None
    sigma: dict | None = None
    premise_verdict: Verdict | None = None
    conclusion_verdict: Verdict | None = None

    def to_json_dict(self):
        out = {
            "schema": "medlog.prucnal/1",
            "n": self.n,
            "phi": render(self.phi),
            "psi": render(self.psi),
            "vacuous": self.vacuous,
        }
        if not self.vacuous:
            out["witness"] = {
                nm: [self.witness.poset.label(e) for e in up]
                for nm, up in self.witness.items()
            }
            out["sigma"] = {nm: render(f) for nm, f in sorted(self.sigma.items())}
            out["sigma_phi_valid"] = self.premise_verdict.valid
            out["sigma_psi_valid"] = self.conclusion_verdict.valid
        return out

    def to_text(self):
        lines = [f"rule: {render(self.phi)} / {render(self.psi)} on the {self.n}-frame"]
        if self.vacuous:
            lines.append("the implication is valid; nothing to demonstrate")
            return "\n".join(lines) + "\n"
        lines.append("witness valuation:")
        for nm, up in self.witness.items():
            labels = ", ".join(self.witness.poset.label(e) for e in up)
            lines.append(f"  {nm} = {{{labels}}}")
        lines.append("substitution:")
        for nm, f in sorted(self.sigma.items()):
            lines.append(f"  {nm} -> {render(f)}")
        lines.append(f"substituted premise valid: {self.premise_verdict.valid}")
        lines.append(f"substituted conclusion valid: {self.conclusion_verdict.valid}")
        return "\n".join(lines) + "\n"


def structural_demo(n: int, phi: Formula, psi: Formula,
                    work_cap=DEFAULT_WORK_CAP) -> DemoReport:
    """Exhibit a substitution proving phi / psi non-admissible on the n-frame
    whenever phi -> psi fails there.

    sigma comes from a valuation V that forces phi at the root but not psi.
    V must separate them at the root itself: a valuation merely falsifying
    phi -> psi somewhere above would leave sigma(phi) unforced at the root
    under the base valuation, and nothing valid comes out.  The report
    carries V, sigma, and the two re-checked verdicts: sigma(phi) valid,
    sigma(psi) invalid.  Every step that must hold by theorem is verified.
    """
    P = frame(n)
    V, _ = consequence_witness(P, P.root_world, (phi,), psi, work_cap)
    if V is None:
        return DemoReport(n, phi, psi, vacuous=True)
    sys = base(n)
    sigma = prucnal_subst(V, sys)
    for f in (phi, psi):
        if not substitution_agrees(f, sigma, V, sys):
            raise VerificationError(
                f"substitution changes the denotation of {render(f)}"
            )
    prem = decide(n, (), substitute(phi, sigma), work_cap)
    if not prem.valid:
        raise VerificationError("substituted premise is not valid")
    concl = decide(n, (), substitute(psi, sigma), work_cap)
    if concl.valid:
        raise VerificationError("substituted conclusion did not fail")
    return DemoReport(
        n, phi, psi, vacuous=False, witness=V, sigma=sigma,
        premise_verdict=prem, conclusion_verdict=concl,
    )

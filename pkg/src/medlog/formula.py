"""Propositional formulas over ->, &, |, ~ and bottom.

Formulas are immutable trees.  Negation is sugar: ~a is stored as a -> bot,
and the renderer prints it back as ~a.  The concrete syntax accepted by
parse() is

    formula ::= junct ('->' formula)?          right associative
    junct   ::= unary (('&' unary)* | ('|' unary)*)
    unary   ::= '~' unary | '(' formula ')' | 'bot' | ident

'&' and '|' bind equally tightly and may not be mixed without parentheses.
"""

import re
from dataclasses import dataclass


class ParseError(ValueError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class AmbiguityError(ParseError):
    """Raised for '&' / '|' mixed at the same level without parentheses."""


class Formula:
    __slots__ = ()

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"<formula {render(self)}>"


@dataclass(frozen=True, slots=True, repr=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, slots=True, repr=False)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


BOT = Bottom()


def neg(f: Formula) -> Formula:
    return Implies(f, BOT)


def top() -> Formula:
    return Implies(BOT, BOT)


_TOKEN = re.compile(r"->|\|-|[~&|();]|[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}", pos)
        tokens.append((m.group(), pos))
        pos = m.end()
    # sentinel: the empty string is not a real token, so it can't be confused
    # with input and repeated next() calls stay parked on it
    tokens.append(("", len(text)))
    return tokens


def _show(tok):
    return "end of input" if tok == "" else repr(tok)


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def next(self):
        tok = self.tokens[self.i]
        if self.i + 1 < len(self.tokens):
            self.i += 1
        return tok

    def expect(self, want):
        tok, pos = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r} but found {_show(tok)} at position {pos}", pos)

    def formula(self):
        left = self.junct()
        if self.peek() == "->":
            self.next()
            return Implies(left, self.formula())
        return left

    def junct(self):
        left = self.unary()
        op = self.peek()
        if op not in ("&", "|"):
            return left
        while True:
            tok = self.peek()
            if tok not in ("&", "|"):
                return left
            if tok != op:
                _, pos = self.next()
                raise AmbiguityError(
                    f"'&' and '|' bind equally tightly; parenthesize to mix them (position {pos})",
                    pos,
                )
            self.next()
            right = self.unary()
            left = And(left, right) if op == "&" else Or(left, right)

    def unary(self):
        tok, pos = self.next()
        if tok == "~":
            return neg(self.unary())
        if tok == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if tok == "bot":
            return BOT
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            return Var(tok)
        raise ParseError(f"expected a formula but found {_show(tok)} at position {pos}", pos)


def parse(text: str) -> Formula:
    parser = _Parser(_tokenize(text))
    f = parser.formula()
    tok, pos = parser.next()
    if tok != "":
        raise ParseError(f"trailing input starting with {tok!r} at position {pos}", pos)
    return f


def parse_sequent(text: str):
    """Parse 'a1; a2; ...; ak |- b' into (premises, conclusion).

    The premise list may be empty: '|- b' is a plain validity query.
    """
    parser = _Parser(_tokenize(text))
    premises = []
    if parser.peek() != "|-":
        premises.append(parser.formula())
        while parser.peek() == ";":
            parser.next()
            premises.append(parser.formula())
    parser.expect("|-")
    conclusion = parser.formula()
    tok, pos = parser.next()
    if tok != "":
        raise ParseError(f"trailing input starting with {tok!r} at position {pos}", pos)
    return tuple(premises), conclusion


def _junct(f, sym, cls):
    # Same-operator chains print flat when they lean left; anything else
    # in an operand position gets parentheses.
    parts = []
    node = f
    while isinstance(node, cls):
        parts.append(node.right)
        node = node.left
    parts.append(node)
    parts.reverse()
    out = []
    for part in parts:
        text, kind = _rend(part)
        if kind in ("and", "or", "imp"):
            text = f"({text})"
        out.append(text)
    return f" {sym} ".join(out)


def _rend(f):
    if isinstance(f, Bottom):
        return "bot", "atom"
    if isinstance(f, Var):
        return f.name, "atom"
    if isinstance(f, Implies):
        if isinstance(f.right, Bottom):
            inner, kind = _rend(f.left)
            if kind != "atom" and kind != "neg":
                inner = f"({inner})"
            return f"~{inner}", "neg"
        lt, lk = _rend(f.left)
        if lk in ("and", "or", "imp"):
            lt = f"({lt})"
        rt, rk = _rend(f.right)
        if rk in ("and", "or"):
            rt = f"({rt})"
        return f"{lt} -> {rt}", "imp"
    if isinstance(f, And):
        return _junct(f, "&", And), "and"
    if isinstance(f, Or):
        return _junct(f, "|", Or), "or"
    raise TypeError(f"not a formula: {f!r}")


def render(f: Formula) -> str:
    text, _ = _rend(f)
    return text


def substitute(f: Formula, mapping) -> Formula:
    match f:
        case Var(name):
            return mapping.get(name, f)
        case And(a, b):
            return And(substitute(a, mapping), substitute(b, mapping))
        case Or(a, b):
            return Or(substitute(a, mapping), substitute(b, mapping))
        case Implies(a, b):
            return Implies(substitute(a, mapping), substitute(b, mapping))
        case _:
            return f


def variables(f: Formula) -> frozenset:
    names = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, (And, Or, Implies)):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(names)


def subformulas(f: Formula) -> tuple:
    """All distinct subformulas, children before parents."""
    seen = {}

    def walk(node):
        if node in seen:
            return
        if isinstance(node, (And, Or, Implies)):
            walk(node.left)
            walk(node.right)
        seen[node] = None

    walk(f)
    return tuple(seen)


def fresh(avoid, count=1):
    """count variable names p1, p2, ... not colliding with avoid."""
    avoid = set(avoid)
    out = []
    i = 1
    while len(out) < count:
        name = f"p{i}"
        if name not in avoid:
            out.append(name)
        i += 1
    return out


def big_and(formulas) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return top()
    acc = formulas[0]
    for f in formulas[1:]:
        acc = And(acc, f)
    return acc


def big_or(formulas) -> Formula:
    formulas = list(formulas)
    if not formulas:
        return BOT
    acc = formulas[0]
    for f in formulas[1:]:
        acc = Or(acc, f)
    return acc


def kp() -> Formula:
    p, q, r = Var("p"), Var("q"), Var("r")
    np = neg(p)
    return Implies(Implies(np, Or(q, r)), Or(Implies(np, q), Implies(np, r)))


def bd(n: int) -> Formula:
    """Bounded-depth axiom: bd(1) = p1 | ~p1, bd(k+1) = p_{k+1} | (p_{k+1} -> bd(k))."""
    if n < 1:
        raise ValueError("bd(n) needs n >= 1")
    f = Or(Var("p1"), neg(Var("p1")))
    for k in range(2, n + 1):
        v = Var(f"p{k}")
        f = Or(v, Implies(v, f))
    return f


def lam(i: int, n: int, names=None) -> Formula:
    """lam(i, n) = p_i & AND_{j != i} ~p_j over n variables."""
    if not 1 <= i <= n:
        raise ValueError("lam(i, n) needs 1 <= i <= n")
    if names is None:
        names = [f"p{j}" for j in range(1, n + 1)]
    if len(names) != n:
        raise ValueError("names must list one name per variable")
    conj = [Var(names[i - 1])]
    conj.extend(neg(Var(names[j - 1])) for j in range(1, n + 1) if j != i)
    return big_and(conj)


def edn_premise(alpha: Formula, beta: Formula, n: int) -> Formula:
    """alpha -> (beta | OR_i ~lam_i), the lam variables fresh for alpha, beta."""
    if n < 1:
        raise ValueError("edn_premise needs n >= 1")
    names = fresh(variables(alpha) | variables(beta), n)
    lams = [lam(i, n, names) for i in range(1, n + 1)]
    return Implies(alpha, big_or([beta] + [neg(l) for l in lams]))


_SCHEME = re.compile(r"^\s*([A-Za-z]+)\s*(?:\(?\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)?)?\s*$")


def scheme(name: str) -> Formula:
    """Named formula families: 'kp', 'bd3' or 'bd(3)', 'lambda(1,3)'."""
    m = _SCHEME.match(name)
    if m is None:
        raise ParseError(f"not a scheme name: {name!r}")
    head, a, b = m.group(1).lower(), m.group(2), m.group(3)
    if head == "kp" and a is None:
        return kp()
    if head == "bd" and a is not None and b is None:
        return bd(int(a))
    if head in ("lam", "lambda") and a is not None and b is not None:
        return lam(int(a), int(b))
    raise ParseError(f"not a scheme name: {name!r}")

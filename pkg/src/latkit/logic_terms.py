"""Terms, sentences, a small textual DSL, model checking and the Pre transform.

Grammar (ASCII)::

    sentence   := premises '=>' atom | atom ('|' atom)*
    premises   := [atom ('&' atom)*]
    atom       := term ('<=' | '>=' | '=') term
    term       := join ; join := meet ('v' meet)* ; meet := div ('^' div)*
    div        := mul (('\\' | '/') mul)* ; mul := prim ('*' prim)*
    prim       := VAR | '1' | '(' term ')'

Variables match ``[a-z][a-z0-9]*`` except the bare word ``v`` (join).
``t >= u`` is read as ``u <= t``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional, Union

from .errors import (CapacityExceeded, NotPositiveUniversal, SentenceSyntaxError,
                     SignatureError, UnboundVariable, UnsupportedOperation)

MAX_VARIABLES = 6

LATTICE_OPS = ("meet", "join")
RL_OPS = ("mul", "ldiv", "rdiv")

_SYMBOL = {"meet": "^", "join": "v", "mul": "*", "ldiv": "\\", "rdiv": "/"}
_PREC = {"join": 1, "meet": 2, "ldiv": 3, "rdiv": 3, "mul": 4}


@dataclass(frozen=True)
class Var:
    name: str
    index: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"


Term = Union[Var, Unit, BinOp]

ONE = Unit()


def meet(a, b):
    return BinOp("meet", a, b)


def join(a, b):
    return BinOp("join", a, b)


def mul(a, b):
    return BinOp("mul", a, b)


def ldiv(a, b):
    return BinOp("ldiv", a, b)


def rdiv(a, b):
    return BinOp("rdiv", a, b)


@dataclass(frozen=True)
class Atom:
    lhs: Term
    rel: str  # "<=" or "="
    rhs: Term


@dataclass(frozen=True)
class Sentence:
    """``kind`` is ``positive_universal``, ``quasi_equation`` or ``equation``.

    For ``positive_universal`` the atoms are disjuncts; for ``quasi_equation``
    they are the premises and ``conclusion`` is set; an ``equation`` has one atom.
    """

    kind: str
    atoms: tuple[Atom, ...]
    conclusion: Optional[Atom] = None

    def __post_init__(self):
        if self.kind == "positive_universal" and not self.atoms:
            raise ValueError("positive universal sentence needs at least one disjunct")
        if self.kind == "equation" and len(self.atoms) != 1:
            raise ValueError("equation has exactly one atom")
        if self.kind == "quasi_equation" and self.conclusion is None:
            raise ValueError("quasi-equation needs a conclusion")

    @property
    def all_atoms(self) -> tuple[Atom, ...]:
        return self.atoms + ((self.conclusion,) if self.conclusion else ())

    def variables(self) -> list[str]:
        seen: list[str] = []
        for at in self.all_atoms:
            for t in (at.lhs, at.rhs):
                for v in term_variables(t):
                    if v not in seen:
                        seen.append(v)
        return seen

    def __str__(self):
        return print_sentence(self)


def term_variables(t: Term) -> list[str]:
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, BinOp):
        out = term_variables(t.left)
        out += [v for v in term_variables(t.right) if v not in out]
        return out
    return []


def term_ops(t: Term) -> set[str]:
    if isinstance(t, BinOp):
        return {t.op} | term_ops(t.left) | term_ops(t.right)
    return set()


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(<=|>=|=>|[=|&^*\\/()1])|([a-z][a-z0-9]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            j = pos
            while j < len(text) and text[j].isspace():
                j += 1
            raise SentenceSyntaxError(f"unexpected character {text[j]!r}", j)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            toks.append(("sym", m.group(1), start))
        elif m.group(2) == "v":
            toks.append(("sym", "v", start))
        else:
            toks.append(("var", m.group(2), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    _LEVELS = [("join", ("v",)), ("meet", ("^",)), ("div", ("\\", "/")), ("mul", ("*",))]
    _OPNAME = {"v": "join", "^": "meet", "\\": "ldiv", "/": "rdiv", "*": "mul"}

    def __init__(self, text, signature):
        self.toks = _tokenize(text)
        self.i = 0
        self.signature = signature
        self.var_index: dict[str, int] = {}

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise SentenceSyntaxError(f"expected {value!r}, found {tok[1] or 'end of input'!r}",
                                      tok[2])
        self.i += 1
        return tok

    def term(self, level=0):
        if level == len(self._LEVELS):
            return self.primary()
        _, symbols = self._LEVELS[level]
        left = self.term(level + 1)
        while self.peek()[0] == "sym" and self.peek()[1] in symbols:
            tok = self.take()
            op = self._OPNAME[tok[1]]
            if op in RL_OPS and self.signature != "rl":
                raise SignatureError(f"operation {tok[1]!r} at position {tok[2]} "
                                     "is not in the pointed-lattice signature")
            right = self.term(level + 1)
            left = BinOp(op, left, right)
        return left

    def primary(self):
        kind, value, pos = self.peek()
        if kind == "var":
            self.take()
            idx = self.var_index.setdefault(value, len(self.var_index))
            return Var(value, idx)
        if value == "1":
            self.take()
            return ONE
        if value == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        raise SentenceSyntaxError(f"expected a term, found {value or 'end of input'!r}", pos)

    def atom(self):
        lhs = self.term()
        kind, value, pos = self.peek()
        if value not in ("<=", ">=", "="):
            raise SentenceSyntaxError(f"expected a relation, found {value or 'end of input'!r}", pos)
        self.take()
        rhs = self.term()
        if value == ">=":
            return Atom(rhs, "<=", lhs)
        return Atom(lhs, value, rhs)

    def sentence(self):
        if self.peek()[1] == "=>":
            self.take()
            concl = self.atom()
            self.take("")
            return Sentence("quasi_equation", (), concl)
        first = self.atom()
        atoms = [first]
        sep = self.peek()[1]
        if sep == "&" or sep == "=>":
            while self.peek()[1] == "&":
                self.take()
                atoms.append(self.atom())
            self.take("=>")
            concl = self.atom()
            self._end()
            return Sentence("quasi_equation", tuple(atoms), concl)
        while self.peek()[1] == "|":
            self.take()
            atoms.append(self.atom())
        self._end()
        if len(atoms) == 1 and first.rel == "=":
            return Sentence("equation", (first,))
        return Sentence("positive_universal", tuple(atoms))

    def _end(self):
        kind, value, pos = self.peek()
        if kind != "end":
            raise SentenceSyntaxError(f"unexpected token {value!r}", pos)


def parse_sentence(text: str, signature: str = "rl") -> Sentence:
    if signature not in ("lattice", "rl"):
        raise ValueError(f"signature must be 'lattice' or 'rl', got {signature!r}")
    return _Parser(text, signature).sentence()


def parse_term(text: str, signature: str = "rl") -> Term:
    p = _Parser(text, signature)
    t = p.term()
    p._end()
    return t


# ---------------------------------------------------------------------------
# printing


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Unit):
        return "1"
    op = t.op
    if op in ("ldiv", "rdiv"):
        # compound operands of divisions are always bracketed
        l = print_term(t.left)
        r = print_term(t.right)
        if isinstance(t.left, BinOp):
            l = f"({l})"
        if isinstance(t.right, BinOp):
            r = f"({r})"
        return f"{l}{_SYMBOL[op]}{r}"
    return f"{_child(t.left, op, False)} {_SYMBOL[op]} {_child(t.right, op, True)}"


def _child(c: Term, parent: str, right: bool) -> str:
    s = print_term(c)
    if not isinstance(c, BinOp):
        return s
    if c.op in ("ldiv", "rdiv") and parent != "mul":
        return s
    if _PREC[c.op] < _PREC[parent] or (c.op == parent and right):
        return f"({s})"
    if parent in LATTICE_OPS and c.op in LATTICE_OPS and c.op != parent:
        # meets under joins (and vice versa) are bracketed for readability
        return f"({s})"
    return s


def print_atom(a: Atom) -> str:
    return f"{print_term(a.lhs)} {a.rel} {print_term(a.rhs)}"


def print_sentence(s: Sentence) -> str:
    if s.kind == "quasi_equation":
        prem = " & ".join(print_atom(a) for a in s.atoms)
        return (prem + " => " if prem else "=> ") + print_atom(s.conclusion)
    return " | ".join(print_atom(a) for a in s.atoms)


# ---------------------------------------------------------------------------
# evaluation


def _tables(alg):
    """(meet, join, mul, ldiv, rdiv, unit, leq, size) for a pointed lattice or RL."""
    if hasattr(alg, "mul"):
        base = alg.base
        return base.meet, base.join, alg.mul, alg.ldiv, alg.rdiv, base.unit, base.lattice.leq, base.size
    return alg.meet, alg.join, None, None, None, alg.unit, alg.lattice.leq, alg.size


def compile_term(alg, t: Term, var_pos: dict[str, int]) -> Callable[[tuple], int]:
    """Compile ``t`` into a function of an assignment tuple (ordered by ``var_pos``)."""
    m, j, mu, ld, rd, unit, _, _ = _tables(alg)
    tabs = {"meet": m, "join": j, "mul": mu, "ldiv": ld, "rdiv": rd}

    def build(t):
        if isinstance(t, Var):
            if t.name not in var_pos:
                raise UnboundVariable(f"variable {t.name!r} is not bound")
            k = var_pos[t.name]
            return lambda env: env[k]
        if isinstance(t, Unit):
            return lambda env: unit
        tab = tabs[t.op]
        if tab is None:
            raise UnsupportedOperation(f"operation {t.op!r} needs a residuated lattice")
        f, g = build(t.left), build(t.right)
        return lambda env: tab[f(env)][g(env)]

    return build(t)


def eval_term(alg, t: Term, env: dict[str, int]) -> int:
    names = list(env)
    f = compile_term(alg, t, {v: i for i, v in enumerate(names)})
    return f(tuple(env[v] for v in names))


def _compile_atom(alg, a: Atom, var_pos):
    leq = _tables(alg)[6]
    f, g = compile_term(alg, a.lhs, var_pos), compile_term(alg, a.rhs, var_pos)
    if a.rel == "=":
        return lambda env: f(env) == g(env)
    return lambda env: leq(f(env), g(env))


@dataclass
class HoldsResult:
    holds: bool
    witness: Optional[dict[str, int]] = None

    def __bool__(self):
        return self.holds


def holds(alg, s: Sentence) -> HoldsResult:
    """Exhaustively check ``s`` over all assignments; report a falsifying one."""
    vs = s.variables()
    if len(vs) > MAX_VARIABLES:
        raise CapacityExceeded(f"sentence has {len(vs)} variables (cap {MAX_VARIABLES})")
    pos = {v: i for i, v in enumerate(vs)}
    n = _tables(alg)[7]
    atoms = [_compile_atom(alg, a, pos) for a in s.atoms]
    if s.kind == "quasi_equation":
        concl = _compile_atom(alg, s.conclusion, pos)
        for env in product(range(n), repeat=len(vs)):
            if all(p(env) for p in atoms) and not concl(env):
                return HoldsResult(False, dict(zip(vs, env)))
    else:
        for env in product(range(n), repeat=len(vs)):
            if not any(p(env) for p in atoms):
                return HoldsResult(False, dict(zip(vs, env)))
    return HoldsResult(True)


def holds_all(alg, sentences) -> bool:
    return all(holds(alg, s) for s in sentences)


# ---------------------------------------------------------------------------
# Pre transform


def _as_inequality(a: Atom) -> tuple[Term, Term]:
    if a.rel == "<=":
        return a.lhs, a.rhs
    # t = u  iff  t v u <= t ^ u
    return join(a.lhs, a.rhs), meet(a.lhs, a.rhs)


def pre_transform(s: Sentence) -> Sentence:
    """The RL equation ``(1 ^ t1\\u1) v ... v (1 ^ tk\\uk) = 1`` for a positive universal ``s``."""
    if s.kind == "quasi_equation":
        raise NotPositiveUniversal("Pre is only defined for positive universal sentences")
    for a in s.atoms:
        if (term_ops(a.lhs) | term_ops(a.rhs)) - set(LATTICE_OPS):
            raise NotPositiveUniversal("Pre needs sentences over the pointed-lattice signature")
    parts = []
    for a in s.atoms:
        t, u = _as_inequality(a)
        residual = u if isinstance(t, Unit) else ldiv(t, u)
        parts.append(meet(ONE, residual))
    lhs = parts[0]
    for p in parts[1:]:
        lhs = join(lhs, p)
    return Sentence("equation", (Atom(lhs, "=", ONE),))


# ---------------------------------------------------------------------------
# classes of pointed lattices


@dataclass(frozen=True)
class KClass:
    name: str
    axioms: tuple[Sentence, ...]

    def __post_init__(self):
        for ax in self.axioms:
            if ax.kind == "quasi_equation":
                raise NotPositiveUniversal(f"axiom {ax} of {self.name} is not positive universal")

    def contains(self, A) -> bool:
        return holds_all(A, self.axioms)


def make_kclass(name: str, axioms: list[str]) -> KClass:
    return KClass(name, tuple(parse_sentence(a, "lattice") for a in axioms))


BUILTIN_AXIOMS = {
    "all": [],
    "integral": ["x <= 1"],
    "dually_integral": ["1 <= x"],
    "conic": ["x <= 1 | 1 <= x"],
    "linear": ["x <= y | y <= x"],
    "distributive": ["x ^ (y v z) = (x ^ y) v (x ^ z)"],
}


def builtin_kclass(name: str) -> KClass:
    if name not in BUILTIN_AXIOMS:
        raise KeyError(f"unknown class {name!r}; built-ins are {sorted(BUILTIN_AXIOMS)}")
    return make_kclass(name, BUILTIN_AXIOMS[name])

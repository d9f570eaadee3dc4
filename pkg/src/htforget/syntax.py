"""Extended logic programs over an explicit propositional signature.

A rule has the shape

    a1 | ... | ak :- b1, ..., bl, not c1, ..., not cm, not not d1, ..., not not dn.

where every component is a set of atoms.  An empty head is a constraint and
is written ``bot`` when the body is empty too.  Programs are finite sets of
rules, optionally carrying a declared signature (``#atoms a, b, c.``) that
fixes the ambient alphabet and the atom-to-bit-index order.

Atoms match ``[a-z][a-zA-Z0-9_]*``; ``not`` and ``bot`` are reserved words.
``%`` starts a line comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

_KEYWORDS = frozenset({"not", "bot"})


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


class SignatureError(ValueError):
    pass


def _check_atom_name(name: str) -> str:
    if name in _KEYWORDS or not ATOM_RE.match(name):
        raise SignatureError(f"invalid atom name {name!r}")
    return name


@dataclass(frozen=True)
class Signature:
    """Ordered alphabet; atom i maps to bit i of interpretation masks."""

    atoms: tuple[str, ...]

    def __post_init__(self):
        seen = set()
        for a in self.atoms:
            _check_atom_name(a)
            if a in seen:
                raise SignatureError(f"duplicate atom {a!r} in signature")
            seen.add(a)

    @classmethod
    def of(cls, atoms: Iterable[str]) -> "Signature":
        return cls(tuple(atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, name: object) -> bool:
        return name in self.atoms

    def index(self, name: str) -> int:
        try:
            return self.atoms.index(name)
        except ValueError:
            raise SignatureError(f"atom {name!r} not in signature {self.atoms}") from None

    def mask(self, names: Iterable[str]) -> int:
        """Encode a set of atom names as a bit vector."""
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        """Decode a bit vector to atom names, in signature order."""
        if mask < 0 or mask >> len(self.atoms):
            raise SignatureError(f"mask {mask:#x} out of range for {len(self.atoms)} atoms")
        return tuple(a for i, a in enumerate(self.atoms) if (mask >> i) & 1)

    def restrict(self, keep: Iterable[str]) -> "Signature":
        """Sub-signature with the given atoms, preserving this order."""
        keepset = set(keep)
        return Signature(tuple(a for a in self.atoms if a in keepset))

    def union(self, other: "Signature") -> "Signature":
        extra = tuple(a for a in other.atoms if a not in self.atoms)
        return Signature(self.atoms + extra)


class ProgramClass(Enum):
    """Nested syntactic classes: fact-only < horn < normal < disjunctive < extended."""

    FACTS = "fact-only"
    HORN = "horn"
    NORMAL = "normal"
    DISJUNCTIVE = "disjunctive"
    EXTENDED = "extended"

    @property
    def rank(self) -> int:
        return _CLASS_RANK[self]

    def __le__(self, other: "ProgramClass") -> bool:
        return self.rank <= other.rank


_CLASS_RANK = {
    ProgramClass.FACTS: 0,
    ProgramClass.HORN: 1,
    ProgramClass.NORMAL: 2,
    ProgramClass.DISJUNCTIVE: 3,
    ProgramClass.EXTENDED: 4,
}


@dataclass(frozen=True, order=True)
class Rule:
    """One rule; components are frozensets of atom names.

    head: disjunctive head atoms (empty = constraint)
    pos:  positive body atoms
    neg:  atoms under single negation
    nneg: atoms under double negation
    """

    head: frozenset = field(compare=False)
    pos: frozenset = field(compare=False)
    neg: frozenset = field(compare=False)
    nneg: frozenset = field(compare=False)
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        for part in (self.head, self.pos, self.neg, self.nneg):
            for a in part:
                _check_atom_name(a)
        object.__setattr__(
            self,
            "_key",
            (tuple(sorted(self.head)), tuple(sorted(self.pos)),
             tuple(sorted(self.neg)), tuple(sorted(self.nneg))),
        )

    @classmethod
    def make(cls, head=(), pos=(), neg=(), nneg=()) -> "Rule":
        return cls(frozenset(head), frozenset(pos), frozenset(neg), frozenset(nneg))

    @property
    def atoms(self) -> frozenset:
        return self.head | self.pos | self.neg | self.nneg

    @property
    def rule_class(self) -> ProgramClass:
        if self.nneg:
            return ProgramClass.EXTENDED
        if len(self.head) > 1:
            return ProgramClass.DISJUNCTIVE
        if self.neg:
            return ProgramClass.NORMAL
        if self.pos:
            return ProgramClass.HORN
        return ProgramClass.FACTS

    def render(self, signature: Optional[Signature] = None) -> str:
        """Deterministic text form; atoms ordered by signature (or sorted)."""
        if signature is None:
            order = sorted
        else:
            sig = signature

            def order(part):
                return [a for a in sig.atoms if a in part]

        body = [*order(self.pos)]
        body += [f"not {a}" for a in order(self.neg)]
        body += [f"not not {a}" for a in order(self.nneg)]
        head = " | ".join(order(self.head))
        if not head and not body:
            return "bot."
        if not body:
            return f"{head}."
        if not head:
            return f":- {', '.join(body)}."
        return f"{head} :- {', '.join(body)}."

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Program:
    """A finite set of rules, with an optional declared signature."""

    rules: frozenset
    signature: Optional[Signature] = None

    def __post_init__(self):
        if self.signature is not None:
            missing = self.atom_set() - set(self.signature.atoms)
            if missing:
                raise SignatureError(
                    f"atoms {sorted(missing)} outside declared signature {self.signature.atoms}"
                )

    @classmethod
    def of(cls, rules: Iterable[Rule], signature: Optional[Signature] = None) -> "Program":
        return cls(frozenset(rules), signature)

    def atom_set(self) -> frozenset:
        s = frozenset()
        for r in self.rules:
            s |= r.atoms
        return s

    def atoms(self) -> Signature:
        """Signature of exactly the occurring atoms (sorted when undeclared)."""
        return Signature(tuple(sorted(self.atom_set())))

    def effective_signature(self) -> Signature:
        return self.signature if self.signature is not None else self.atoms()

    def program_class(self) -> ProgramClass:
        cls = ProgramClass.FACTS
        for r in self.rules:
            rc = r.rule_class
            if rc.rank > cls.rank:
                cls = rc
        return cls

    def union(self, other: "Program") -> "Program":
        sig = None
        if self.signature is not None or other.signature is not None:
            a = self.signature or self.atoms()
            b = other.signature or other.atoms()
            sig = a.union(b)
        return Program(self.rules | other.rules, sig)

    def without(self, rule: Rule) -> "Program":
        return Program(self.rules - {rule}, self.signature)

    def sorted_rules(self, signature: Optional[Signature] = None) -> list:
        sig = signature or self.effective_signature()
        return sorted(self.rules, key=lambda r: (
            sig.mask(r.head), sig.mask(r.pos), sig.mask(r.neg), sig.mask(r.nneg)))

    def render(self) -> str:
        out = []
        if self.signature is not None:
            out.append(f"#atoms {', '.join(self.signature.atoms)}.")
        sig = self.effective_signature()
        out.extend(r.render(sig) for r in self.sorted_rules(sig))
        return "\n".join(out) + ("\n" if out else "")

    def __str__(self) -> str:
        return self.render()

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.sorted_rules())


def classify(program: Program) -> ProgramClass:
    return program.program_class()


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>%[^\n]*)
      | (?P<nl>\n)
      | (?P<arrow>:-)
      | (?P<dot>\.)
      | (?P<comma>,)
      | (?P<pipe>\|)
      | (?P<directive>\#atoms\b)
      | (?P<name>[a-z][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind not in ("ws", "comment"):
            yield kind, value, line, col
            col += len(value)
        else:
            col += len(value)
        pos = m.end()
    yield "eof", "", line, col


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what}, found {tok[1] or 'end of input'!r}", tok[2], tok[3])
        return tok

    def atom(self) -> str:
        kind, value, line, col = self.next()
        if kind != "name":
            raise ParseError(f"expected atom, found {value or 'end of input'!r}", line, col)
        if value in _KEYWORDS:
            raise ParseError(f"keyword {value!r} cannot be used as an atom", line, col)
        return value

    def parse(self) -> Program:
        rules = []
        sig_atoms: list[str] = []
        declared = False
        while True:
            kind, value, line, col = self.peek()
            if kind == "eof":
                break
            if kind == "directive":
                self.next()
                declared = True
                sig_atoms.append(self.atom())
                while self.peek()[0] == "comma":
                    self.next()
                    sig_atoms.append(self.atom())
                self.expect("dot", "'.'")
                continue
            rules.append(self.rule())
        signature = None
        if declared:
            try:
                signature = Signature(tuple(sig_atoms))
            except SignatureError as e:
                raise ParseError(str(e), 1, 1) from None
        program = Program(frozenset(rules), None)
        if signature is not None:
            missing = program.atom_set() - set(signature.atoms)
            if missing:
                raise ParseError(
                    f"atoms {sorted(missing)} outside declared signature", 1, 1)
            program = Program(program.rules, signature)
        return program

    def rule(self) -> Rule:
        head: list[str] = []
        kind, value, line, col = self.peek()
        if kind == "name" and value == "bot":
            self.next()
        elif kind == "name":
            head.append(self.atom())
            while self.peek()[0] == "pipe":
                self.next()
                head.append(self.atom())
        pos: list[str] = []
        neg: list[str] = []
        nneg: list[str] = []
        if self.peek()[0] == "arrow":
            self.next()
            self.literal(pos, neg, nneg)
            while self.peek()[0] == "comma":
                self.next()
                self.literal(pos, neg, nneg)
        self.expect("dot", "'.'")
        return Rule.make(head, pos, neg, nneg)

    def literal(self, pos: list, neg: list, nneg: list):
        kind, value, line, col = self.peek()
        if kind == "name" and value == "not":
            self.next()
            kind2, value2, l2, c2 = self.peek()
            if kind2 == "name" and value2 == "not":
                self.next()
                nneg.append(self.atom())
            else:
                neg.append(self.atom())
        else:
            pos.append(self.atom())


def parse_program(text: str) -> Program:
    """Parse program text; raises ParseError with line:col on bad input."""
    return _Parser(text).parse()


def parse_rule(text: str) -> Rule:
    """Parse a single rule (convenience for tests and witnesses)."""
    program = parse_program(text)
    if len(program.rules) != 1:
        raise ValueError(f"expected exactly one rule, got {len(program.rules)}")
    return next(iter(program.rules))


def render_program(program: Program) -> str:
    return program.render()

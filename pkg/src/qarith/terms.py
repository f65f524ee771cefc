"""Composed arithmetic operations built from the adder and multiplier.

A term is either the free leaf (one unconstrained integer argument) or a
binary node applying plus or times to two sub-terms.  Terms are graded
into classes: the leaf and the two elementary patterns plus(leaf, leaf)
and times(leaf, leaf) form class 0, and a node belongs to class k >= 1
when the deepest non-leaf structure among its children sits in class
k - 1.  Every term gets a global index: class-major, and within a class
ordered by (operation, left child index, right child index).

Within class k the child index pair (x, y) ranges over the L-shaped
region [0, A) x [0, A) minus [0, B) x [0, B), where A counts terms of
class <= k - 1 and B counts terms of class <= k - 2 (B = 1 for k = 1,
excluding only the leaf/leaf pair, which stays elementary).  Ranking and
unranking over that region are closed-form, so term_of runs without
enumerating anything.

Evaluation is dual: an exact integer recursion, and compilation to a
gate program over basis states whose results must agree.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

from .gates import GateKind, GateProgram, GateStep, run_program
from .states import basis_ket


class BinOp(IntEnum):
    PLUS = 1
    TIMES = 2


@dataclass(frozen=True)
class FreeVar:
    """Leaf standing for one integer argument."""

    __slots__ = ()


@dataclass(frozen=True)
class Node:
    op: BinOp
    left: "Term"
    right: "Term"


Term = FreeVar | Node

FREE = FreeVar()


class ArityError(ValueError):
    """Argument count does not match the term's leaf count."""


def arity(term: Term) -> int:
    if isinstance(term, FreeVar):
        return 1
    return arity(term.left) + arity(term.right)


def class_of(term: Term) -> int:
    if isinstance(term, FreeVar):
        return 0
    levels = [class_of(c) for c in (term.left, term.right) if isinstance(c, Node)]
    if not levels:
        return 0
    return 1 + max(levels)


@lru_cache(maxsize=None)
def class_size(k: int) -> int:
    if k < 0:
        raise ValueError(f"class must be non-negative, got {k}")
    if k == 0:
        return 3
    a = cumulative_size(k - 1)
    b = cumulative_size(k - 2) if k >= 2 else 1
    return 2 * (a * a - b * b)


@lru_cache(maxsize=None)
def cumulative_size(k: int) -> int:
    """Number of terms of class <= k."""
    if k == 0:
        return 3
    return cumulative_size(k - 1) + class_size(k)


def _region_bounds(k: int) -> tuple[int, int]:
    a = cumulative_size(k - 1)
    b = cumulative_size(k - 2) if k >= 2 else 1
    return a, b


def _pair_rank(x: int, y: int, a: int, b: int) -> int:
    # Rows x < b contribute only columns y >= b; rows x >= b are full.
    if x < b:
        return x * (a - b) + (y - b)
    return b * (a - b) + (x - b) * a + y


def _pair_unrank(r: int, a: int, b: int) -> tuple[int, int]:
    top = b * (a - b)
    if r < top:
        x, off = divmod(r, a - b)
        return x, b + off
    x, y = divmod(r - top, a)
    return b + x, y


@lru_cache(maxsize=None)
def index_of(term: Term) -> int:
    if isinstance(term, FreeVar):
        return 0
    k = class_of(term)
    if k == 0:
        return int(term.op)
    a, b = _region_bounds(k)
    pairs = a * a - b * b
    rank = (int(term.op) - 1) * pairs + _pair_rank(index_of(term.left), index_of(term.right), a, b)
    return cumulative_size(k - 1) + rank


@lru_cache(maxsize=None)
def term_of(delta: int) -> Term:
    if not isinstance(delta, int) or isinstance(delta, bool) or delta < 0:
        raise ValueError(f"index must be a non-negative integer, got {delta!r}")
    if delta == 0:
        return FREE
    if delta <= 2:
        return Node(BinOp(delta), FREE, FREE)
    k = 1
    while cumulative_size(k) <= delta:
        k += 1
    a, b = _region_bounds(k)
    pairs = a * a - b * b
    op, r = divmod(delta - cumulative_size(k - 1), pairs)
    x, y = _pair_unrank(r, a, b)
    return Node(BinOp(op + 1), term_of(x), term_of(y))


def decompose_index(delta: int) -> tuple[int, int, int] | None:
    """Split an index into (operation, left index, right index); None for the leaf."""
    term = term_of(delta)
    if isinstance(term, FreeVar):
        return None
    return (int(term.op), index_of(term.left), index_of(term.right))


@dataclass(frozen=True)
class IndexedTerm:
    term: Term
    klass: int
    delta: int


def enumerate_class(k: int, limit: int | None = None) -> list[IndexedTerm]:
    """Terms of class k in index order, optionally truncated to ``limit``."""
    if k < 0:
        raise ValueError(f"class must be non-negative, got {k}")
    size = class_size(k)
    count = size if limit is None else max(0, min(limit, size))
    base = 0 if k == 0 else cumulative_size(k - 1)
    return [IndexedTerm(term_of(base + r), k, base + r) for r in range(count)]


# --- text forms ------------------------------------------------------------

_VAR_NAMES = "nmklpqrsabcdefgh"


def render_term(term: Term) -> str:
    """Prefix form: M0, P(a,b), T(a,b)."""
    if isinstance(term, FreeVar):
        return "M0"
    tag = "P" if term.op is BinOp.PLUS else "T"
    return f"{tag}({render_term(term.left)},{render_term(term.right)})"


def render_infix(term: Term) -> str:
    """Infix form with fresh single-letter arguments, products by juxtaposition."""
    counter = [0]

    def next_name() -> str:
        i = counter[0]
        counter[0] += 1
        return _VAR_NAMES[i] if i < len(_VAR_NAMES) else f"x{i}"

    def wrap(text: str, child: Term) -> str:
        return text if isinstance(child, FreeVar) and len(text) == 1 else f"({text})"

    def go(t: Term) -> str:
        if isinstance(t, FreeVar):
            return next_name()
        lhs, rhs = go(t.left), go(t.right)
        if t.op is BinOp.PLUS:
            return f"{wrap(lhs, t.left)}+{wrap(rhs, t.right)}"
        return f"{wrap(lhs, t.left)}{wrap(rhs, t.right)}"

    return go(term)


class TermSyntaxError(ValueError):
    """Unparseable term text."""


# P and T are prefix operators only when a parenthesis follows; otherwise a
# single letter is a variable leaf.
_TOKEN = re.compile(r"\s*(?:(?P<op>[PT])\(|(?P<m0>M0)|(?P<var>x\d+|[A-Za-z])|(?P<punct>[+*(),]))")


class _Parser:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise TermSyntaxError(f"bad character at position {pos}: {text[pos:]!r}")
            if m.lastgroup == "op":
                self.tokens.append(("op", m.group("op")))
                self.tokens.append(("punct", "("))
            else:
                self.tokens.append((m.lastgroup, m.group(m.lastgroup)))  # type: ignore[arg-type]
            pos = m.end()
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, punct: str | None = None) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of term")
        if punct is not None and tok != ("punct", punct):
            raise TermSyntaxError(f"expected {punct!r}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def parse(self) -> Term:
        term = self.sum()
        if self.peek() is not None:
            raise TermSyntaxError(f"trailing input from token {self.peek()[1]!r}")
        return term

    def sum(self) -> Term:
        term = self.product()
        while self.peek() == ("punct", "+"):
            self.take()
            term = Node(BinOp.PLUS, term, self.product())
        return term

    def product(self) -> Term:
        term = self.factor()
        while True:
            tok = self.peek()
            if tok == ("punct", "*"):
                self.take()
                term = Node(BinOp.TIMES, term, self.factor())
            elif tok is not None and tok[1] not in ("+", ")", ","):
                term = Node(BinOp.TIMES, term, self.factor())
            else:
                return term

    def factor(self) -> Term:
        kind, text = self.take()
        if kind == "m0":
            return FREE
        if kind == "var":
            # Variable names are decorative: every occurrence is a fresh leaf.
            return FREE
        if kind == "op":
            op = BinOp.PLUS if text == "P" else BinOp.TIMES
            self.take("(")
            left = self.sum()
            self.take(",")
            right = self.sum()
            self.take(")")
            return Node(op, left, right)
        if (kind, text) == ("punct", "("):
            term = self.sum()
            self.take(")")
            return term
        raise TermSyntaxError(f"unexpected token {text!r}")


def parse_term(text: str) -> Term:
    if not isinstance(text, str) or not text.strip():
        raise TermSyntaxError("empty term")
    return _Parser(text).parse()


# --- evaluation ------------------------------------------------------------


def evaluate_oracle(term: Term, args: tuple[int, ...]) -> int:
    """Exact integer value with arguments bound to leaves left to right."""
    n = arity(term)
    if len(args) != n:
        raise ArityError(f"term takes {n} argument(s), got {len(args)}")
    for v in args:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"arguments must be integers, got {v!r}")
    it = iter(args)

    def go(t: Term) -> int:
        if isinstance(t, FreeVar):
            return next(it)
        lhs = go(t.left)
        rhs = go(t.right)
        return lhs + rhs if t.op is BinOp.PLUS else lhs * rhs

    return go(term)


@dataclass(frozen=True)
class CompiledTerm:
    """Gate program computing a term on basis states.

    Inputs occupy the first ``arity`` registers; every multiplication
    node owns one ancilla register that must start at 0.  The value
    appears on ``result_register``.
    """

    program: GateProgram
    arity: int
    registers: int
    result_register: int

    def initial_state(self, args: tuple[int, ...]):
        return basis_ket(*args, *([0] * (self.registers - self.arity)))


@lru_cache(maxsize=None)
def compile_term(term: Term) -> CompiledTerm:
    n = arity(term)
    steps: list[GateStep] = []
    next_leaf = [0]
    next_ancilla = [n]

    def emit(t: Term) -> int:
        if isinstance(t, FreeVar):
            reg = next_leaf[0]
            next_leaf[0] += 1
            return reg
        lhs = emit(t.left)
        rhs = emit(t.right)
        if t.op is BinOp.PLUS:
            # Target keeps the sum; the source register stays intact.
            steps.append(GateStep(GateKind.PLUS, (lhs, rhs)))
            return rhs
        out = next_ancilla[0]
        next_ancilla[0] += 1
        steps.append(GateStep(GateKind.TIMES_REVERSIBLE, (lhs, rhs, out)))
        return out

    result = emit(term)
    return CompiledTerm(
        program=GateProgram(tuple(steps)),
        arity=n,
        registers=next_ancilla[0],
        result_register=result,
    )


@dataclass(frozen=True)
class EvalReport:
    term: Term
    args: tuple[int, ...]
    gate_result: int
    oracle_result: int

    @property
    def agree(self) -> bool:
        return self.gate_result == self.oracle_result

    def to_json_dict(self) -> dict:
        return {
            "term": render_term(self.term),
            "index": index_of(self.term),
            "args": list(self.args),
            "gates": self.gate_result,
            "oracle": self.oracle_result,
            "agree": self.agree,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def evaluate_gates(term: Term, args: tuple[int, ...]) -> EvalReport:
    """Run the compiled program and compare against the integer recursion."""
    compiled = compile_term(term)
    if len(args) != compiled.arity:
        raise ArityError(f"term takes {compiled.arity} argument(s), got {len(args)}")
    final = run_program(compiled.program, compiled.initial_state(tuple(args)))
    items = list(final.items())
    if len(items) != 1:
        raise RuntimeError(f"expected a single component, found {len(items)}")
    gate_value = items[0][0][compiled.result_register]
    return EvalReport(
        term=term,
        args=tuple(args),
        gate_result=gate_value,
        oracle_result=evaluate_oracle(term, args),
    )


# --- indexing self-check ---------------------------------------------------


@dataclass(frozen=True)
class BijectionReport:
    max_class: int
    counts: tuple[int, ...]
    total: int
    failures: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_dict(self) -> dict:
        return {
            "max_class": self.max_class,
            "counts": {str(k): c for k, c in enumerate(self.counts)},
            "total": self.total,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def bijection_report(max_class: int) -> BijectionReport:
    """Exhaustively check index_of/term_of agree up to a class bound.

    Class sizes explode combinatorially, so the bound is capped at 3.
    Any failure is recorded with the index, the term, and the clashing
    partner, so a broken scheme is directly inspectable.
    """
    if max_class < 0 or max_class > 3:
        raise ValueError(f"class bound must be in 0..3, got {max_class}")
    seen: dict[Term, int] = {}
    failures: list[dict] = []
    counts = []
    for k in range(max_class + 1):
        base = 0 if k == 0 else cumulative_size(k - 1)
        n = class_size(k)
        counts.append(n)
        for r in range(n):
            delta = base + r
            term = term_of(delta)
            if term in seen:
                failures.append(
                    {
                        "kind": "collision",
                        "index": delta,
                        "term": render_term(term),
                        "partner_index": seen[term],
                    }
                )
                continue
            seen[term] = delta
            if class_of(term) != k:
                failures.append(
                    {
                        "kind": "class",
                        "index": delta,
                        "term": render_term(term),
                        "expected_class": k,
                        "actual_class": class_of(term),
                    }
                )
            back = index_of(term)
            if back != delta:
                failures.append(
                    {
                        "kind": "roundtrip",
                        "index": delta,
                        "term": render_term(term),
                        "index_of": back,
                    }
                )
            parts = decompose_index(delta)
            expect = (
                None
                if isinstance(term, FreeVar)
                else (term.op, index_of(term.left), index_of(term.right))
            )
            if parts != expect:
                failures.append(
                    {
                        "kind": "decomposition",
                        "index": delta,
                        "term": render_term(term),
                        "decomposed": parts,
                        "expected": expect,
                    }
                )
    return BijectionReport(
        max_class=max_class,
        counts=tuple(counts),
        total=sum(counts),
        failures=tuple(failures),
    )

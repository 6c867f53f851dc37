"""The intention query language: tokenizer, recursive-descent parser, AST
dataclasses, and a canonical renderer satisfying parse(render(x)) == x.

Two statement forms exist:
  - intentions:   with <cube> describe|assess|explain|predict|suggest ...
  - cube queries: cube <name> [where <cond>] group <levels> agg <fn(m)>, ...

A session script line may prefix either with `name = ` to bind the result.
Keywords are case-insensitive; identifiers are case-sensitive; member
constants are single-quoted strings.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ParseError
from .mdcore import AGGREGATES, And, Atom, FalseCond, Not, Or, TrueCond

KEYWORDS = {
    "with", "describe", "assess", "explain", "predict", "suggest",
    "for", "by", "size", "using", "against", "next", "points", "of", "over",
    "and", "or", "not", "true", "false",
    "cube", "where", "group", "agg",
}

OPERATORS = ("<=", ">=", "!=", "=", "<", ">", "(", ")", ",", ".")


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class LevelRef:
    dimension: str
    level: str

    def render(self):
        return f"{self.dimension}.{self.level}"


@dataclass(frozen=True)
class ModelCall:
    name: str
    args: tuple = ()

    def render(self):
        return f"{self.name}({', '.join(self.args)})"


@dataclass
class CubeQuerySpec:
    source: str
    where: object  # Condition or None
    group: list
    aggs: list  # [(fn, measure)]


@dataclass
class Describe:
    source: str
    measures: list
    cond: object = None
    by_levels: list = None
    by_size: int = None


@dataclass
class Assess:
    source: str
    measures: list
    benchmarks: list
    cond: object = None


@dataclass
class Explain:
    source: str
    measure: str
    models: list
    cond: object = None
    against: str = None


@dataclass
class Predict:
    source: str
    k: int
    measure: str
    over: str
    model: str
    cond: object = None


@dataclass
class Suggest:
    source: str
    model: str = None


@dataclass
class Statement:
    target: str  # binding name or None
    node: object


INTENTION_TYPES = (Describe, Assess, Explain, Predict, Suggest)


# ---------------------------------------------------------------------------
# Tokenizer

@dataclass(frozen=True)
class Token:
    kind: str  # id / int / string / op / keyword / eof
    text: str
    pos: int


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "'":
            j = text.find("'", i + 1)
            if j < 0:
                raise ParseError("unterminated string", position=i)
            tokens.append(Token("string", text[i + 1:j], i))
            i = j + 1
            continue
        matched = False
        for op in OPERATORS:
            if text.startswith(op, i):
                tokens.append(Token("op", op, i))
                i += len(op)
                matched = True
                break
        if matched:
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            word = text[i:j]
            # A trailing '-' would eat into operators; identifiers may contain
            # hyphens only internally (member-style names are quoted anyway).
            kind = "keyword" if word.lower() in KEYWORDS else "id"
            tokens.append(Token(kind, word.lower() if kind == "keyword" else word, i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", position=i)
    tokens.append(Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        tok = self.peek()
        got = tok.text or "end of input"
        raise ParseError(f"expected {expected}, got {got!r}", position=tok.pos)

    def accept_kw(self, word):
        tok = self.peek()
        if tok.kind == "keyword" and tok.text == word:
            self.next()
            return True
        return False

    def expect_kw(self, word):
        if not self.accept_kw(word):
            self.fail(f"keyword '{word}'")

    def accept_op(self, op):
        tok = self.peek()
        if tok.kind == "op" and tok.text == op:
            self.next()
            return True
        return False

    def expect_op(self, op):
        if not self.accept_op(op):
            self.fail(f"'{op}'")

    def expect_id(self, what="identifier"):
        tok = self.peek()
        if tok.kind != "id":
            self.fail(what)
        return self.next().text

    def expect_int(self):
        tok = self.peek()
        if tok.kind != "int":
            self.fail("integer")
        return int(self.next().text)

    def expect_eof(self):
        if self.peek().kind != "eof":
            self.fail("end of statement")

    # -- statements ---------------------------------------------------------

    def statement(self):
        target = None
        if (self.peek().kind == "id" and self.tokens[self.i + 1].kind == "op"
                and self.tokens[self.i + 1].text == "="):
            target = self.next().text
            self.next()
        tok = self.peek()
        if tok.kind == "keyword" and tok.text == "with":
            node = self.intention()
        elif tok.kind == "keyword" and tok.text == "cube":
            node = self.cube_query()
        else:
            self.fail("'with' or 'cube'")
        self.expect_eof()
        return Statement(target, node)

    def intention(self):
        self.expect_kw("with")
        source = self.expect_id("cube name")
        tok = self.peek()
        verbs = {"describe": self.describe, "assess": self.assess,
                 "explain": self.explain, "predict": self.predict,
                 "suggest": self.suggest}
        if tok.kind == "keyword" and tok.text in verbs:
            self.next()
            return verbs[tok.text](source)
        self.fail("an intention verb (describe/assess/explain/predict/suggest)")

    def describe(self, source):
        measures = self.id_list("measure name")
        cond = self.cond_clause()
        by_levels = by_size = None
        if self.accept_kw("by"):
            if self.accept_kw("size"):
                by_size = self.expect_int()
            else:
                by_levels = self.level_list()
        return Describe(source, measures, cond, by_levels, by_size)

    def assess(self, source):
        measures = self.id_list("measure name")
        cond = self.cond_clause()
        self.expect_kw("using")
        benchmarks = self.id_list("benchmark name")
        return Assess(source, measures, benchmarks, cond)

    def explain(self, source):
        measure = self.expect_id("measure name")
        cond = self.cond_clause()
        self.expect_kw("using")
        models = [self.model_call()]
        while self.accept_op(","):
            models.append(self.model_call())
        against = None
        if self.accept_kw("against"):
            against = self.expect_id("cube name")
        return Explain(source, measure, models, cond, against)

    def predict(self, source):
        self.expect_kw("next")
        k = self.expect_int()
        self.expect_kw("points")
        self.expect_kw("of")
        measure = self.expect_id("measure name")
        cond = self.cond_clause()
        self.expect_kw("over")
        over = self.expect_id("time dimension")
        self.expect_kw("using")
        model = self.expect_id("model name")
        return Predict(source, k, measure, over, model, cond)

    def suggest(self, source):
        model = None
        if self.accept_kw("using"):
            model = self.expect_id("model name")
        return Suggest(source, model)

    def cube_query(self):
        self.expect_kw("cube")
        source = self.expect_id("cube name")
        where = None
        if self.accept_kw("where"):
            where = self.condition()
        self.expect_kw("group")
        group = self.level_list()
        self.expect_kw("agg")
        aggs = [self.agg_item()]
        while self.accept_op(","):
            aggs.append(self.agg_item())
        return CubeQuerySpec(source, where, group, aggs)

    def agg_item(self):
        fn = self.expect_id("aggregate function")
        if fn not in AGGREGATES:
            raise ParseError(f"unknown aggregate {fn!r}",
                             position=self.tokens[self.i - 1].pos)
        self.expect_op("(")
        measure = self.expect_id("measure name")
        self.expect_op(")")
        return (fn, measure)

    def model_call(self):
        name = self.expect_id("model name")
        self.expect_op("(")
        args = []
        if not self.accept_op(")"):
            args.append(self.expect_id("attribute name"))
            while self.accept_op(","):
                args.append(self.expect_id("attribute name"))
            self.expect_op(")")
        return ModelCall(name, tuple(args))

    def id_list(self, what):
        out = [self.expect_id(what)]
        while self.accept_op(","):
            out.append(self.expect_id(what))
        return out

    def level_list(self):
        out = [self.level_ref()]
        while self.accept_op(","):
            out.append(self.level_ref())
        return out

    def level_ref(self):
        dim = self.expect_id("dimension name")
        self.expect_op(".")
        level = self.expect_id("level name")
        return LevelRef(dim, level)

    def cond_clause(self):
        if self.accept_kw("for"):
            return self.condition()
        return None

    # -- conditions ---------------------------------------------------------

    def condition(self):
        node = self.cond_and()
        while self.accept_kw("or"):
            node = Or(node, self.cond_and())
        return node

    def cond_and(self):
        node = self.cond_unary()
        while self.accept_kw("and"):
            node = And(node, self.cond_unary())
        return node

    def cond_unary(self):
        if self.accept_kw("not"):
            return Not(self.cond_unary())
        if self.accept_op("("):
            node = self.condition()
            self.expect_op(")")
            return node
        if self.accept_kw("true"):
            return TrueCond()
        if self.accept_kw("false"):
            return FalseCond()
        ref = self.level_ref()
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("=", "!=", "<", "<=", ">", ">="):
            op = self.next().text
        else:
            self.fail("a comparison operator")
        val = self.peek()
        if val.kind != "string":
            self.fail("a quoted member value")
        self.next()
        return Atom(ref.dimension, ref.level, op, val.text)


# ---------------------------------------------------------------------------
# Public API

def parse_statement(text):
    return _Parser(text).statement()


def parse_intention(text):
    p = _Parser(text)
    node = p.intention()
    p.expect_eof()
    return node


def parse_cube_query(text):
    p = _Parser(text)
    node = p.cube_query()
    p.expect_eof()
    return node


def render(node):
    """Canonical text for any AST node; parse(render(x)) == x."""
    if isinstance(node, Statement):
        body = render(node.node)
        return f"{node.target} = {body}" if node.target else body
    if isinstance(node, CubeQuerySpec):
        parts = [f"cube {node.source}"]
        if node.where is not None:
            parts.append(f"where {render_condition(node.where)}")
        parts.append("group " + ", ".join(r.render() for r in node.group))
        parts.append("agg " + ", ".join(f"{fn}({m})" for fn, m in node.aggs))
        return " ".join(parts)
    if isinstance(node, Describe):
        parts = [f"with {node.source} describe " + ", ".join(node.measures)]
        if node.cond is not None:
            parts.append(f"for {render_condition(node.cond)}")
        if node.by_size is not None:
            parts.append(f"by size {node.by_size}")
        elif node.by_levels:
            parts.append("by " + ", ".join(r.render() for r in node.by_levels))
        return " ".join(parts)
    if isinstance(node, Assess):
        parts = [f"with {node.source} assess " + ", ".join(node.measures)]
        if node.cond is not None:
            parts.append(f"for {render_condition(node.cond)}")
        parts.append("using " + ", ".join(node.benchmarks))
        return " ".join(parts)
    if isinstance(node, Explain):
        parts = [f"with {node.source} explain {node.measure}"]
        if node.cond is not None:
            parts.append(f"for {render_condition(node.cond)}")
        parts.append("using " + ", ".join(m.render() for m in node.models))
        if node.against:
            parts.append(f"against {node.against}")
        return " ".join(parts)
    if isinstance(node, Predict):
        parts = [f"with {node.source} predict next {node.k} points of {node.measure}"]
        if node.cond is not None:
            parts.append(f"for {render_condition(node.cond)}")
        parts.append(f"over {node.over} using {node.model}")
        return " ".join(parts)
    if isinstance(node, Suggest):
        out = f"with {node.source} suggest"
        if node.model:
            out += f" using {node.model}"
        return out
    raise TypeError(f"cannot render {type(node).__name__}")


def render_condition(cond):
    if isinstance(cond, TrueCond):
        return "true"
    if isinstance(cond, FalseCond):
        return "false"
    if isinstance(cond, Atom):
        return f"{cond.dimension}.{cond.level} {cond.op} '{cond.value}'"
    if isinstance(cond, Not):
        return f"not {_wrap(cond.operand, atom_only=True)}"
    if isinstance(cond, And):
        return f"{_wrap(cond.left, Or)} and {_wrap(cond.right, Or, And)}"
    if isinstance(cond, Or):
        return f"{_wrap(cond.left)} or {_wrap(cond.right, Or)}"
    raise TypeError(f"cannot render condition {type(cond).__name__}")


def _wrap(cond, *paren_types, atom_only=False):
    """Parenthesize operands whose type would re-associate differently."""
    text = render_condition(cond)
    if atom_only and isinstance(cond, (And, Or)):
        return f"({text})"
    if isinstance(cond, paren_types):
        return f"({text})"
    return text

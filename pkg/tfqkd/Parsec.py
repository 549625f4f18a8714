"""Core types of the small parser combinator engine behind the config-file reader.

- :class:`SourcePos` -- line/column position in the text being read
- :class:`State` -- the text, the index reached, and the position
- :class:`ParseError` -- positioned diagnostics, merged at the furthest position
- :class:`Ok` / :class:`Error` / :class:`ParseResult` -- parse outcomes
- :class:`Parsec` -- the composable parser type

Parsers distinguish failures that consumed input from failures that did
not: ``p | q`` only tries ``q`` when ``p`` failed without consuming, so
diagnostics point at the token that actually broke the line.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Generic, TypeVar, Union

T = TypeVar("T")
U = TypeVar("U")


@dataclass(frozen=True)
class SourcePos:
    """A 1-based line/column position, optionally tagged with a source name.

    Example::

        >>> from tfqkd.Parsec import SourcePos
        >>> str(SourcePos(3, 7, "pulse.cfg"))
        '"pulse.cfg" (line 3, column 7)'
    """

    line: int = 1
    column: int = 1
    name: str = ""

    def __str__(self) -> str:
        prefix = f'"{self.name}" ' if self.name else ""
        return f"{prefix}(line {self.line}, column {self.column})"

    def key(self) -> tuple[int, int]:
        return (self.line, self.column)

    def advance(self, text: str) -> "SourcePos":
        """Return the position after reading *text* from here."""
        newlines = text.count("\n")
        if newlines == 0:
            return SourcePos(self.line, self.column + len(text), self.name)
        return SourcePos(self.line + newlines, len(text) - text.rfind("\n"), self.name)


@dataclass(frozen=True)
class State:
    """Input text plus the index and position reached so far."""

    text: str
    index: int
    pos: SourcePos

    @property
    def at_end(self) -> bool:
        return self.index >= len(self.text)

    def peek(self) -> str:
        return self.text[self.index] if self.index < len(self.text) else ""

    def skip(self, count: int) -> "State":
        chunk = self.text[self.index : self.index + count]
        return State(self.text, self.index + len(chunk), self.pos.advance(chunk))


@dataclass
class ParseError:
    """Diagnostics attached to a position.

    Attributes:
        pos: Where the problem was found.
        expected: Descriptions of what would have been accepted.
        unexpected: What was found instead (``""`` means end of input).
        messages: Free-form messages from :func:`~tfqkd.Prim.fail`.
    """

    pos: SourcePos
    expected: list[str] = field(default_factory=list)
    unexpected: Union[str, None] = None
    messages: list[str] = field(default_factory=list)

    def is_unknown(self) -> bool:
        return not self.expected and self.unexpected is None and not self.messages

    def __str__(self) -> str:
        if self.is_unknown():
            return f"unknown parse error at {self.pos}"
        parts = []
        if self.unexpected is not None:
            shown = "end of input" if self.unexpected == "" else repr(self.unexpected)
            parts.append(f"unexpected {shown}")
        if self.expected:
            parts.append("expecting " + ", or ".join(sorted(set(self.expected))))
        parts.extend(sorted(set(self.messages)))
        return f"{self.pos}: {'; '.join(parts)}"

    @staticmethod
    def unknown(pos: SourcePos) -> "ParseError":
        return ParseError(pos)

    @staticmethod
    def merge(a: "ParseError", b: "ParseError") -> "ParseError":
        """Keep the error that got further; combine the two at equal positions."""
        if a.is_unknown():
            return b
        if b.is_unknown():
            return a
        if a.pos.key() != b.pos.key():
            return a if a.pos.key() > b.pos.key() else b
        return ParseError(
            a.pos,
            a.expected + [e for e in b.expected if e not in a.expected],
            a.unexpected if a.unexpected is not None else b.unexpected,
            a.messages + [m for m in b.messages if m not in a.messages],
        )


@dataclass
class Ok(Generic[T]):
    """Success: the value, the state after it, and errors of alternatives not taken."""

    value: T
    state: State
    error: ParseError


@dataclass
class Error:
    """Failure with its diagnostics."""

    error: ParseError


@dataclass(frozen=True)
class ParseResult(Generic[T]):
    """A reply plus whether any input was consumed producing it."""

    reply: Union[Ok[T], Error]
    consumed: bool

    @property
    def ok(self) -> bool:
        return isinstance(self.reply, Ok)

    @property
    def error(self) -> ParseError:
        return self.reply.error


class Parsec(Generic[T]):
    """A parser: a function from :class:`State` to :class:`ParseResult`.

    Operators:
        ``p >> q``: run ``p`` then ``q``, keep ``q``'s value; ``p >> f`` binds.
        ``p < q``: run ``p`` then ``q``, keep ``p``'s value.
        ``p & q``: run both, keep ``(p_value, q_value)``.
        ``p | q``: ``q`` is tried only if ``p`` failed without consuming.

    Example::

        >>> from tfqkd.Prim import char, run_parser
        >>> run_parser(char("a") >> char("b"), "ab")
        ('b', None)
    """

    def __init__(self, parse_fn: Callable[[State], ParseResult[T]]):
        self.parse_fn = parse_fn

    def __call__(self, state: State) -> ParseResult[T]:
        return self.parse_fn(state)

    def bind(self, f: Callable[[T], "Parsec[U]"]) -> "Parsec[U]":
        """Feed this parser's value to *f* and run the parser it returns."""

        def parse(state: State) -> ParseResult[U]:
            first = self(state)
            if not isinstance(first.reply, Ok):
                return ParseResult(first.reply, first.consumed)
            second = f(first.reply.value)(first.reply.state)
            consumed = first.consumed or second.consumed
            # An empty second step keeps the first step's ghost errors in play.
            if second.consumed:
                err = second.error
            else:
                err = ParseError.merge(first.reply.error, second.error)
            if isinstance(second.reply, Ok):
                return ParseResult(Ok(second.reply.value, second.reply.state, err), consumed)
            return ParseResult(Error(err), consumed)

        return Parsec(parse)

    def map(self, f: Callable[[T], U]) -> "Parsec[U]":
        def parse(state: State) -> ParseResult[U]:
            res = self(state)
            if isinstance(res.reply, Ok):
                ok = res.reply
                return ParseResult(Ok(f(ok.value), ok.state, ok.error), res.consumed)
            return ParseResult(res.reply, res.consumed)

        return Parsec(parse)

    def label(self, what: str) -> "Parsec[T]":
        """Report *what* as the expectation when this parser fails without consuming."""

        def parse(state: State) -> ParseResult[T]:
            res = self(state)
            if res.consumed or res.ok:
                return res
            err = res.error
            relabelled = ParseError(state.pos, [what], err.unexpected, err.messages)
            return ParseResult(Error(relabelled), False)

        return Parsec(parse)

    def __or__(self, other: "Parsec[U]") -> "Parsec[Union[T, U]]":
        def parse(state: State) -> ParseResult[Any]:
            first = self(state)
            if first.ok or first.consumed:
                return first
            second = other(state)
            if second.ok or second.consumed:
                return second
            return ParseResult(Error(ParseError.merge(first.error, second.error)), False)

        return Parsec(parse)

    def __rshift__(self, other: Union["Parsec[U]", Callable[[T], "Parsec[U]"]]) -> "Parsec[U]":
        if isinstance(other, Parsec):
            return self.bind(lambda _: other)
        return self.bind(other)

    def __lt__(self, other: "Parsec[Any]") -> "Parsec[T]":
        return self.bind(lambda v: other.map(lambda _: v))

    def __and__(self, other: "Parsec[U]") -> "Parsec[tuple[T, U]]":
        return self.bind(lambda a: other.map(lambda b: (a, b)))

"""Primitive parsers and the ``run_parser`` entry point.

- :func:`pure` / :func:`fail` -- trivial success and failure
- :func:`satisfy` / :func:`char` / :func:`one_of` -- single characters
- :func:`take_while` / :func:`take_while1` / :func:`skip_while` -- bulk scans
- :func:`try_parse` -- backtracking
- :func:`many` / :func:`option` -- repetition and defaults
- :func:`eof` / :func:`position` -- end of input and the current position
- :func:`run_parser` -- running a parser over a string
"""
from collections.abc import Sequence
from typing import Any, Callable, Optional, TypeVar

from .Parsec import Error, Ok, Parsec, ParseError, ParseResult, SourcePos, State

T = TypeVar("T")


def _unknown(state: State) -> ParseError:
    return ParseError.unknown(state.pos)


def pure(value: T) -> Parsec[T]:
    """Return a parser that succeeds with *value* without consuming input.

    Example::

        >>> from tfqkd.Prim import pure, run_parser
        >>> run_parser(pure(42), "anything")
        (42, None)
    """
    return Parsec(lambda state: ParseResult(Ok(value, state, _unknown(state)), False))


def fail(msg: str) -> Parsec[Any]:
    """Return a parser that fails with *msg* without consuming input."""
    return Parsec(lambda state: ParseResult(Error(ParseError(state.pos, messages=[msg])), False))


def satisfy(predicate: Callable[[str], bool]) -> Parsec[str]:
    """Accept one character for which *predicate* holds."""

    def parse(state: State) -> ParseResult[str]:
        c = state.peek()
        if c and predicate(c):
            nxt = state.skip(1)
            return ParseResult(Ok(c, nxt, _unknown(nxt)), True)
        return ParseResult(Error(ParseError(state.pos, unexpected=c)), False)

    return Parsec(parse)


def char(c: str) -> Parsec[str]:
    """Accept exactly the character *c*."""
    return satisfy(lambda s: s == c).label(repr(c))


def one_of(cs: Sequence[str]) -> Parsec[str]:
    """Accept any single character contained in *cs*."""
    return satisfy(lambda s: s in cs).label("one of " + repr("".join(cs)))


def take_while(predicate: Callable[[str], bool]) -> Parsec[str]:
    """Scan zero or more characters matching *predicate* in one step.

    Example::

        >>> from tfqkd.Prim import run_parser, take_while
        >>> run_parser(take_while(str.isdigit), "123abc")
        ('123', None)
    """

    def parse(state: State) -> ParseResult[str]:
        text, start = state.text, state.index
        end = start
        while end < len(text) and predicate(text[end]):
            end += 1
        if end == start:
            return ParseResult(Ok("", state, _unknown(state)), False)
        nxt = state.skip(end - start)
        return ParseResult(Ok(text[start:end], nxt, _unknown(nxt)), True)

    return Parsec(parse)


def take_while1(predicate: Callable[[str], bool], what: str) -> Parsec[str]:
    """Like :func:`take_while` but require at least one character, labelled *what*."""

    def parse(state: State) -> ParseResult[str]:
        res = take_while(predicate)(state)
        if res.consumed:
            return res
        return ParseResult(Error(ParseError(state.pos, [what], state.peek())), False)

    return Parsec(parse)


def skip_while(predicate: Callable[[str], bool]) -> Parsec[None]:
    """Skip zero or more characters matching *predicate*."""
    return take_while(predicate).map(lambda _: None)


def try_parse(parser: Parsec[T]) -> Parsec[T]:
    """Turn a failure after consuming input into an empty failure, so ``|`` can backtrack."""

    def parse(state: State) -> ParseResult[T]:
        res = parser(state)
        if isinstance(res.reply, Error) and res.consumed:
            return ParseResult(res.reply, False)
        return res

    return Parsec(parse)


def many(p: Parsec[T]) -> Parsec[list[T]]:
    """Apply *p* until it fails without consuming; collect the values.

    The loop is iterative, so long inputs do not grow the Python stack.

    Raises:
        ValueError: At parse time, if *p* succeeds without consuming input.
    """

    def parse(state: State) -> ParseResult[list[T]]:
        values: list[T] = []
        current = state
        consumed = False
        last_err = _unknown(state)
        while True:
            res = p(current)
            if isinstance(res.reply, Error):
                if res.consumed:
                    return ParseResult(res.reply, True)
                err = ParseError.merge(last_err, res.reply.error)
                return ParseResult(Ok(values, current, err), consumed)
            if not res.consumed:
                raise ValueError("many: parser accepted empty input")
            values.append(res.reply.value)
            current = res.reply.state
            last_err = res.reply.error
            consumed = True

    return Parsec(parse)


def option(default: T, p: Parsec[T]) -> Parsec[T]:
    """Run *p*; if it fails without consuming, succeed with *default*."""
    return p | pure(default)


def eof() -> Parsec[None]:
    """Succeed only at the end of input."""

    def parse(state: State) -> ParseResult[None]:
        if state.at_end:
            return ParseResult(Ok(None, state, _unknown(state)), False)
        return ParseResult(Error(ParseError(state.pos, ["end of input"], state.peek())), False)

    return Parsec(parse)


def position() -> Parsec[SourcePos]:
    """Return the current :class:`~tfqkd.Parsec.SourcePos` without consuming."""
    return Parsec(lambda state: ParseResult(Ok(state.pos, state, _unknown(state)), False))


def run_parser(
    parser: Parsec[T], text: str, source_name: str = ""
) -> tuple[Optional[T], Optional[ParseError]]:
    """Run *parser* on *text*; return ``(value, None)`` or ``(None, error)``.

    Example::

        >>> from tfqkd.Prim import char, run_parser
        >>> value, err = run_parser(char("a"), "xyz")
        >>> value is None, str(err)
        (True, "(line 1, column 1): unexpected 'x'; expecting 'a'")
    """
    res = parser(State(text, 0, SourcePos(1, 1, source_name)))
    if isinstance(res.reply, Ok):
        return res.reply.value, None
    return None, res.reply.error

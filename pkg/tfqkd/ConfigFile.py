"""Reader for the flat ``key = value`` pulse configuration format.

One assignment per line, SI units, ``#`` starts a comment, blank lines are
ignored. Every key of :class:`~tfqkd.PulseModel.PhysicalConfig` must appear
exactly once::

    # operating point, sigma_t = 1 ns
    t0          = 0
    dt_sep      = 4.6669e-9
    sigma_t     = 1e-9
    sigma_T     = 2.5e-9
    nu0         = 1.93e14
    dnu_sep     = 1e9
    sigma_nu    = 1e9
    sigma_omega = 1e9
    n_symbols   = 2

Syntax problems and key problems (unknown, duplicated, missing, a
non-integral ``n_symbols``) are reported with line and column through
:class:`~tfqkd.Errors.ConfigFileError`, as are literals that overflow a
float. Value ranges are not checked here; that is
:func:`~tfqkd.PulseModel.validate`'s job.
"""
import logging
import math
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .Errors import ConfigFileError
from .Parsec import Parsec, SourcePos
from .Prim import (
    char,
    eof,
    fail,
    many,
    one_of,
    option,
    position,
    pure,
    run_parser,
    skip_while,
    take_while,
    take_while1,
    try_parse,
)
from .PulseModel import PhysicalConfig

logger = logging.getLogger(__name__)


class Entry(NamedTuple):
    """One parsed assignment with the positions of its key and value."""

    key: str
    key_pos: SourcePos
    value: float
    value_pos: SourcePos


def _is_key_char(c: str) -> bool:
    return c.isalnum() or c == "_"


def _is_digit(c: str) -> bool:
    return "0" <= c <= "9"


def _digits(what: str = "digit") -> Parsec[str]:
    return take_while1(_is_digit, what)


def _concat(*parts: str) -> str:
    return "".join(parts)


def _concat2(t: tuple[str, str]) -> str:
    return _concat(*t)


def _concat3(t: tuple[tuple[str, str], str]) -> str:
    return _concat(t[0][0], t[0][1], t[1])


hspace = skip_while(lambda c: c in " \t\r")

comment = char("#") >> skip_while(lambda c: c != "\n")

sign = option("", one_of("+-"))

_fraction = option("", (char(".") & take_while(_is_digit)).map(_concat2))

mantissa = (_digits() & _fraction).map(_concat2) | (char(".") & _digits()).map(_concat2)

exponent = option("", (one_of("eE") & sign & _digits("exponent digit")).map(_concat3))


def _finite(v: float) -> Parsec[float]:
    return pure(v) if math.isfinite(v) else fail("number out of range")


number: Parsec[float] = (
    (sign & mantissa & exponent).map(lambda t: float(_concat3(t))).label("number").bind(_finite)
)

key = take_while1(_is_key_char, "key")


def _entry() -> Parsec[Entry]:
    return position().bind(
        lambda kpos: key.bind(
            lambda k: (hspace >> char("=") >> hspace >> position()).bind(
                lambda vpos: number.map(lambda v: Entry(k, kpos, v, vpos))
            )
        )
    )


entry = _entry()

# Parenthesised: a bare ``a < b < c`` is a chained comparison.
line: Parsec[Optional[Entry]] = ((hspace >> option(None, entry)) < hspace) < option(None, comment)

config_file: Parsec[list[Entry]] = many(try_parse(line < char("\n"))).bind(
    lambda lines: (line < eof()).bind(
        lambda last: pure([e for e in [*lines, last] if e is not None])
    )
)


def _check_entries(entries: list[Entry], source: str) -> tuple[dict[str, float], list[str]]:
    known = PhysicalConfig.keys()
    values: dict[str, float] = {}
    first_seen: dict[str, SourcePos] = {}
    problems: list[str] = []
    for e in entries:
        if e.key not in known:
            problems.append(f"{e.key_pos}: unknown key {e.key!r} (known: {', '.join(known)})")
            continue
        if e.key in first_seen:
            problems.append(
                f"{e.key_pos}: duplicate key {e.key!r} (first set on line {first_seen[e.key].line})"
            )
            continue
        first_seen[e.key] = e.key_pos
        if e.key == "n_symbols" and not float(e.value).is_integer():
            problems.append(f"{e.value_pos}: n_symbols must be an integer, got {e.value!r}")
            continue
        values[e.key] = e.value
    missing = [k for k in known if k not in first_seen]
    if missing:
        problems.append(f'"{source}": missing keys: ' + ", ".join(missing))
    return values, problems


def parse_physical_config(text: str, source: str = "<string>") -> PhysicalConfig:
    """Parse configuration *text*; *source* names it in diagnostics.

    Raises:
        ConfigFileError: On any syntax or key problem; all key problems are
            collected before raising.

    Example::

        >>> from tfqkd.ConfigFile import parse_physical_config
        >>> text = "\\n".join(f"{k} = 1" for k in
        ...     ["t0", "dt_sep", "sigma_t", "sigma_T", "nu0", "dnu_sep",
        ...      "sigma_nu", "sigma_omega"]) + "\\nn_symbols = 3\\n"
        >>> parse_physical_config(text).n_symbols
        3
    """
    entries, err = run_parser(config_file, text, source)
    if err is not None:
        raise ConfigFileError(source, [str(err)])
    values, problems = _check_entries(entries or [], source)
    if problems:
        raise ConfigFileError(source, problems)
    logger.debug("parsed %d keys from %s", len(values), source)
    n = int(values.pop("n_symbols"))
    return PhysicalConfig(**values, n_symbols=n)


def load_physical_config(path: Union[str, Path]) -> PhysicalConfig:
    """Read and parse the configuration file at *path*.

    Raises:
        ConfigFileError: If the file cannot be read or does not parse.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigFileError(str(path), [f'"{path}": cannot read file: {exc}'], exc) from exc
    return parse_physical_config(text, str(path))

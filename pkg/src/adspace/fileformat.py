"""Line-oriented text formats for instances and schedules.

Instance::

    maxspace-rd 1          # magic + format version
    K 5
    L 3/2
    ads 2
    0 s=1/3 w=2 r=1 d=4
    1 s=7/10 w=1 r=2 d=5

Sizes in the file are raw (at most L); they are divided by L on reading.
``maxspace-r`` files omit ``d=``, ``maxspace`` files omit ``r=`` and ``d=``.

Schedule::

    slot 1: 0 2
    slot 2: 0
    value 1/2
"""

from __future__ import annotations

from fractions import Fraction

from .core import Ad, Instance, Schedule, Variant, format_rational, parse_rational
from .errors import ParseError, ValidationError

__all__ = ["FORMAT_VERSION", "parse_instance", "serialize_instance", "parse_schedule", "format_schedule"]

FORMAT_VERSION = 1


def _lines(text: str):
    """Yield (line number, column offset, stripped content) for non-blank lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if stripped:
            yield lineno, len(body) - len(body.lstrip()), stripped


def _tokens(lineno, offset, line):
    """Split on whitespace, keeping 1-based columns."""
    out = []
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, offset + col + 1))
        col += len(tok)
    return out


def _int(tok, lineno, col, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, col, f"expected integer {what}, got {tok!r}") from None


def _rational(tok, lineno, col, what):
    try:
        return parse_rational(tok)
    except ValueError:
        raise ParseError(lineno, col, f"expected exact rational {what} (p/q or integer), got {tok!r}") from None


def _keyword(lines, keyword, last_line):
    try:
        lineno, offset, line = next(lines)
    except StopIteration:
        raise ParseError(last_line + 1, 1, f"missing {keyword!r} line") from None
    toks = _tokens(lineno, offset, line)
    if toks[0][0] != keyword or len(toks) != 2:
        raise ParseError(lineno, toks[0][1], f"expected '{keyword} <value>'")
    return lineno, toks[1]


def parse_instance(text: str) -> Instance:
    lines = _lines(text)
    try:
        lineno, offset, line = next(lines)
    except StopIteration:
        raise ParseError(1, 1, "empty instance file") from None
    toks = _tokens(lineno, offset, line)
    try:
        variant = Variant(toks[0][0])
    except ValueError:
        raise ParseError(lineno, toks[0][1], f"unknown format magic {toks[0][0]!r}") from None
    if len(toks) != 2 or _int(toks[1][0], lineno, toks[1][1], "version") != FORMAT_VERSION:
        raise ParseError(lineno, toks[-1][1], f"expected format version {FORMAT_VERSION}")

    lineno, (tok, col) = _keyword(lines, "K", lineno)
    K = _int(tok, lineno, col, "K")
    if K < 1:
        raise ParseError(lineno, col, "K must be at least 1")
    lineno, (tok, col) = _keyword(lines, "L", lineno)
    L = _rational(tok, lineno, col, "L")
    if L <= 0:
        raise ParseError(lineno, col, "L must be positive")
    lineno, (tok, col) = _keyword(lines, "ads", lineno)
    n = _int(tok, lineno, col, "ad count")
    if n < 0:
        raise ParseError(lineno, col, "ad count must be non-negative")

    allowed = {"s", "w", "r", "d"}
    if variant is Variant.MAXSPACE_R:
        allowed.discard("d")
    elif variant is Variant.MAXSPACE:
        allowed -= {"r", "d"}

    ads = []
    for expected_id in range(n):
        try:
            lineno, offset, line = next(lines)
        except StopIteration:
            raise ParseError(lineno + 1, 1, f"expected {n} ads, found {expected_id}") from None
        toks = _tokens(lineno, offset, line)
        ad_id = _int(toks[0][0], lineno, toks[0][1], "ad id")
        if ad_id != expected_id:
            raise ParseError(lineno, toks[0][1], f"ad ids must be 0..{n - 1} in order, got {ad_id}")
        fields = {}
        for tok, col in toks[1:]:
            key, sep, value = tok.partition("=")
            if not sep:
                raise ParseError(lineno, col, f"expected key=value, got {tok!r}")
            if key not in allowed:
                raise ParseError(lineno, col, f"field {key!r} not allowed for {variant.value}")
            if key in fields:
                raise ParseError(lineno, col, f"duplicate field {key!r}")
            vcol = col + len(key) + 1
            fields[key] = _rational(value, lineno, vcol, key) if key == "s" else _int(value, lineno, vcol, key)
        for key in sorted(allowed):
            if key not in fields:
                raise ParseError(lineno, toks[0][1], f"missing field {key}=")
        raw = fields["s"]
        if not 0 < raw <= L:
            raise ValidationError(ad_id, "0 < s <= L", f"s={format_rational(raw)}, L={format_rational(L)}")
        ads.append(Ad(ad_id, raw / L, fields["w"], fields.get("r", 1), fields.get("d", K)))

    for lineno, offset, line in lines:
        raise ParseError(lineno, offset + 1, "unexpected content after the last ad")
    return Instance(K=K, ads=tuple(ads), L=L, variant=variant)


def serialize_instance(instance: Instance) -> str:
    v = instance.variant
    out = [
        f"{v.value} {FORMAT_VERSION}",
        f"K {instance.K}",
        f"L {format_rational(instance.L)}",
        f"ads {instance.n}",
    ]
    for ad in instance.ads:
        parts = [str(ad.id), f"s={format_rational(ad.size * instance.L)}", f"w={ad.frequency}"]
        if v is not Variant.MAXSPACE:
            parts.append(f"r={ad.release}")
        if v is Variant.MAXSPACE_RD:
            parts.append(f"d={ad.deadline}")
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def format_schedule(schedule: Schedule, value) -> str:
    lines = []
    for j, contents in enumerate(schedule.slots, start=1):
        ids = " ".join(str(i) for i in contents)
        lines.append(f"slot {j}: {ids}".rstrip())
    lines.append(f"value {format_rational(Fraction(value))}")
    return "\n".join(lines) + "\n"


def parse_schedule(text: str) -> tuple[Schedule, Fraction | None]:
    """Read a schedule; returns it with the recorded value, if any."""
    slots: dict[int, tuple[int, ...]] = {}
    value = None
    for lineno, offset, line in _lines(text):
        if line.startswith("value"):
            toks = _tokens(lineno, offset, line)
            if len(toks) != 2:
                raise ParseError(lineno, offset + 1, "expected 'value <rational>'")
            value = _rational(toks[1][0], lineno, toks[1][1], "value")
            continue
        head, sep, rest = line.partition(":")
        htoks = head.split()
        if not sep or len(htoks) != 2 or htoks[0] != "slot":
            raise ParseError(lineno, offset + 1, "expected 'slot <j>: <id> ...'")
        j = _int(htoks[1], lineno, offset + 6, "slot index")
        if j in slots:
            raise ParseError(lineno, offset + 1, f"slot {j} listed twice")
        rest_col = offset + len(head) + 2
        ids = []
        for tok, col in _tokens(lineno, rest_col - 1, rest):
            ids.append(_int(tok, lineno, col, "ad id"))
        slots[j] = tuple(ids)
    K = max(slots, default=0)
    if sorted(slots) != list(range(1, K + 1)):
        raise ParseError(1, 1, f"slots must be numbered 1..{K} without gaps")
    return Schedule(tuple(slots[j] for j in range(1, K + 1))), value

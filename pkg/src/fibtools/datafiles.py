"""OHLC CSV ingestion and renderer-agnostic plot data (TSV)."""
from __future__ import annotations

import csv
import datetime as dt
import io
from collections.abc import Sequence
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import IO

from .errors import FibError
from .ta import Bar, FibBox, Level, Series, Swing, quantize

OHLC_COLUMNS = ("date", "open", "high", "low", "close")
CLOSE_COLUMNS = ("date", "close")


class CsvFormatError(FibError):
    """Malformed price file; message names the offending data row."""


def _parse_price(text: str, row: int, column: str) -> Decimal:
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise CsvFormatError(f"row {row}: cannot parse {column} {text!r}") from None
    if not value.is_finite() or value <= 0:
        raise CsvFormatError(f"row {row}: {column} must be a positive number, got {text!r}")
    return value


def parse_ohlc_csv(source: IO[str] | IO[bytes] | str) -> Series:
    """Read a headed CSV with ``date,open,high,low,close[,volume]`` or ``date,close``.

    ``source`` is a text or binary stream, or the CSV text itself.  Rows are
    numbered from 1, counting data rows only.
    """
    if isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or not any(h.strip() for h in header):
        raise CsvFormatError("empty file")
    cols = tuple(h.strip().lower() for h in header)
    if cols in (OHLC_COLUMNS, OHLC_COLUMNS + ("volume",)):
        ohlc = True
    elif cols == CLOSE_COLUMNS:
        ohlc = False
    else:
        raise CsvFormatError(
            f"header {','.join(cols)!r} matches neither "
            f"{','.join(OHLC_COLUMNS)}[,volume] nor {','.join(CLOSE_COLUMNS)}"
        )

    bars: list[Bar] = []
    for row_no, fields in enumerate(reader, 1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != len(cols):
            raise CsvFormatError(f"row {row_no}: expected {len(cols)} fields, got {len(fields)}")
        try:
            day = dt.date.fromisoformat(fields[0].strip())
        except ValueError:
            raise CsvFormatError(f"row {row_no}: cannot parse date {fields[0]!r}") from None
        if bars and day <= bars[-1].date:
            raise CsvFormatError(
                f"row {row_no}: date {day.isoformat()} does not follow {bars[-1].date.isoformat()}"
            )
        values = {c: _parse_price(f, row_no, c) for c, f in zip(cols[1:], fields[1:])}
        if ohlc and not values["low"] <= min(values["open"], values["close"]) <= max(
            values["open"], values["close"]
        ) <= values["high"]:
            raise CsvFormatError(f"row {row_no}: inconsistent OHLC values")
        bars.append(Bar(date=day, **values))
    if not bars:
        raise CsvFormatError("file has a header but no data rows")
    return Series(tuple(bars))


def _fmt(value: Decimal | None) -> str:
    return "" if value is None else str(value)


def serialize_csv(series: Series) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    with_volume = any(b.volume is not None for b in series.bars)
    if series.has_ohlc:
        writer.writerow(OHLC_COLUMNS + (("volume",) if with_volume else ()))
        for b in series.bars:
            values = [b.open, b.high, b.low, b.close] + ([b.volume] if with_volume else [])
            writer.writerow([b.date.isoformat(), *map(_fmt, values)])
    else:
        writer.writerow(CLOSE_COLUMNS)
        for b in series.bars:
            writer.writerow([b.date.isoformat(), _fmt(b.close)])
    return buf.getvalue()


@dataclass(frozen=True)
class RetracementGrid:
    swing: Swing
    levels: tuple[Level, ...]


@dataclass(frozen=True)
class TimeZoneSet:
    pivot: dt.date
    dates: tuple[dt.date, ...]
    price_min: Decimal | None = None
    price_max: Decimal | None = None


PLOT_HEADER = "#fibtools-plot\tv1"


def _section(name: str, columns: Sequence[str], rows: list[list[str]]) -> list[str]:
    if not rows:
        return []
    return [f"[{name}]", "\t".join(columns), *("\t".join(r) for r in rows)]


def emit_plot_data(record, places: int = 3) -> str:
    """Render a grid or series as TSV, one section per line family.

    Sections: ``[vertical]`` rows ``date, price_min, price_max``;
    ``[horizontal]`` rows ``date_start, date_end, price``; ``[diagonal]`` rows
    ``date_start, price_start, date_end, price_end``; ``[series]`` for bars.
    Empty sections are omitted, so an empty record yields only the header.
    """
    q = lambda v: str(quantize(v, places))  # noqa: E731
    lines = [PLOT_HEADER]
    if isinstance(record, FibBox):
        s = record.swing
        lo, hi = sorted((s.start.price, s.end.price))
        t4 = record.time_targets[-1]
        lines += _section(
            "vertical",
            ("date", "price_min", "price_max"),
            [[d.isoformat(), q(lo), q(hi)] for d in record.time_targets],
        )
        lines += _section(
            "horizontal",
            ("date_start", "date_end", "price"),
            [[s.end.date.isoformat(), t4.isoformat(), q(lv.price)] for lv in record.price_targets],
        )
        lines += _section(
            "diagonal",
            ("date_start", "price_start", "date_end", "price_end"),
            [
                [t.start_date.isoformat(), q(t.start_price), t.end_date.isoformat(), q(t.end_price)]
                for t in record.trendlines
            ],
        )
    elif isinstance(record, RetracementGrid):
        s = record.swing
        lines += _section(
            "horizontal",
            ("date_start", "date_end", "price"),
            [[s.start.date.isoformat(), s.end.date.isoformat(), q(lv.price)] for lv in record.levels],
        )
    elif isinstance(record, TimeZoneSet):
        lo = "" if record.price_min is None else q(record.price_min)
        hi = "" if record.price_max is None else q(record.price_max)
        lines += _section(
            "vertical",
            ("date", "price_min", "price_max"),
            [[d.isoformat(), lo, hi] for d in record.dates],
        )
    elif isinstance(record, Series):
        lines += _section(
            "series",
            ("date", "open", "high", "low", "close"),
            [[b.date.isoformat(), _fmt(b.open), _fmt(b.high), _fmt(b.low), _fmt(b.close)] for b in record.bars],
        )
    else:
        raise TypeError(f"cannot plot {type(record).__name__}")
    return "\n".join(lines) + "\n"

"""Machine-readable output: JSON lines, CSV and plain text.

Numbers leave the package as decimal strings so that consumers never lose
precision to binary floats.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, fields
from typing import IO, Iterable, Optional, Sequence

import mpmath

from .kloosterman import KloostermanValue
from .partitions import CertifiedCount
from .poincare import CoefficientResult, SeriesTerm

LOG10_2 = 0.30102999566398120


def decimal(value, bits: int) -> str:
    """``value`` with as many significant digits as ``bits`` carry."""
    with mpmath.workprec(bits):
        return mpmath.nstr(mpmath.mpf(value), max(15, int(bits * LOG10_2)))


def _elapsed(ms: float) -> str:
    return f"{ms:.3f}"


@dataclass(frozen=True)
class ReportRecord:
    """One p_r(n) result as emitted by ``partitions``.

    The JSON keys are exactly the field names.
    """

    cmd: str
    r: int
    n: int
    analytic_re: Optional[str]
    analytic_im: Optional[str]
    rounded: str
    margin: Optional[str]
    c_max: Optional[int]
    certified: Optional[bool]
    ms: str

    @classmethod
    def from_count(cls, cmd: str, count: CertifiedCount, ms: float) -> ReportRecord:
        return cls(
            cmd=cmd,
            r=count.r,
            n=count.n,
            analytic_re=decimal(mpmath.re(count.analytic), count.bits),
            analytic_im=decimal(mpmath.im(count.analytic), count.bits),
            rounded=str(count.rounded),
            margin=f"{count.margin:.6g}",
            c_max=count.c_max,
            certified=count.certified,
            ms=_elapsed(ms),
        )

    @classmethod
    def exact(cls, cmd: str, r: int, n: int, value: int, ms: float) -> ReportRecord:
        return cls(cmd, r, n, None, None, str(value), None, None, None, _elapsed(ms))

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> ReportRecord:
        data = json.loads(line)
        names = {f.name for f in fields(cls)}
        if set(data) != names:
            raise ValueError(f"record keys {sorted(data)} do not match {sorted(names)}")
        return cls(**data)

    def to_text(self) -> str:
        text = f"p_{self.r}({self.n}) = {self.rounded}"
        if self.analytic_re is not None:
            text += f"  analytic {self.analytic_re}  margin {self.margin}  c_max {self.c_max}"
        if self.certified is not None:
            text += "  certified" if self.certified else "  MISMATCH"
        return text


@dataclass(frozen=True)
class KloostermanRecord:
    """A(m, n; c) as emitted by ``kloosterman``; ``phi`` is the number of terms."""

    cmd: str
    m24: int
    n24: int
    c: int
    value_re: str
    value_im: str
    phi: int
    ms: str

    @classmethod
    def from_value(cls, cmd: str, m24: int, n24: int, value: KloostermanValue, bits: int, ms: float) -> KloostermanRecord:
        return cls(
            cmd=cmd,
            m24=m24,
            n24=n24,
            c=value.c,
            value_re=decimal(mpmath.re(value.value), bits),
            value_im=decimal(mpmath.im(value.value), bits),
            phi=value.term_count,
            ms=_elapsed(ms),
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    def to_text(self) -> str:
        return f"A({self.m24}/24, {self.n24}/24; {self.c}) = {self.value_re} + {self.value_im}i  (phi = {self.phi})"


@dataclass(frozen=True)
class CoefficientRecord:
    """A raw Poincare coefficient as emitted by ``coeff``."""

    cmd: str
    two_k: int
    m24: int
    n24: int
    value_re: str
    value_im: str
    c_max: int
    tail_estimate: str
    ms: str

    @classmethod
    def from_result(
        cls, cmd: str, two_k: int, m24: int, n24: int, result: CoefficientResult, bits: int, ms: float
    ) -> CoefficientRecord:
        return cls(
            cmd=cmd,
            two_k=two_k,
            m24=m24,
            n24=n24,
            value_re=decimal(mpmath.re(result.value), bits),
            value_im=decimal(mpmath.im(result.value), bits),
            c_max=result.c_max,
            tail_estimate=mpmath.nstr(result.tail_estimate, 6),
            ms=_elapsed(ms),
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    def to_text(self) -> str:
        return (
            f"c_({self.n24}/24) of P_({self.two_k}/2, {self.m24}/24) = {self.value_re} + {self.value_im}i"
            f"  c_max {self.c_max}  tail {self.tail_estimate}"
        )


TERM_FIELDS = ("c", "term_re", "term_im", "partial_re", "partial_im")


def term_rows(terms: Sequence[SeriesTerm], bits: int) -> Iterable[dict]:
    for row in terms:
        yield {
            "c": row.c,
            "term_re": decimal(mpmath.re(row.term), bits),
            "term_im": decimal(mpmath.im(row.term), bits),
            "partial_re": decimal(mpmath.re(row.partial), bits),
            "partial_im": decimal(mpmath.im(row.partial), bits),
        }


def write_terms_csv(terms: Sequence[SeriesTerm], bits: int, stream: IO[str]) -> None:
    """The per-c table (term and running partial sum)."""
    writer = csv.DictWriter(stream, fieldnames=list(TERM_FIELDS))
    writer.writeheader()
    writer.writerows(term_rows(terms, bits))


def write_records_csv(records: Sequence[ReportRecord], stream: IO[str]) -> None:
    writer = csv.DictWriter(stream, fieldnames=[f.name for f in fields(ReportRecord)])
    writer.writeheader()
    for record in records:
        writer.writerow(asdict(record))

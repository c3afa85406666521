"""Published values for the minimal-cover and acoptic-rank tables.

Orders are stored exactly as printed.  Rows whose printed values are known
to be internally inconsistent carry ``suspect=True``; a comparison reports
them as DISCREPANT instead of FAIL.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .flagcore import VertexSymbol
from .permgrp import BigCount
from .quotient import CoverReport, SchlafliType


@dataclass(frozen=True)
class CoverRow:
    name: str
    vertex_symbol: str
    schlafli: str
    cover_order: int
    stabilizer_order: int
    suspect: bool = False


def _f(**exps: int) -> int:
    return BigCount.from_factors({int(p[1:]): e for p, e in exps.items()}).value


COVER_TABLE: tuple[CoverRow, ...] = (
    CoverRow("truncated tetrahedron", "3.6.6", "{6,3}", 144, 2),
    CoverRow("truncated octahedron", "4.6.6", "{8,3}", 6912, 48),
    CoverRow("cuboctahedron", "3.4.3.4", "{12,4}", 2304, 24),
    CoverRow("truncated cube", "3.8.8", "{24,3}", 82944, 576),
    CoverRow("icosidodecahedron", "3.5.3.5", "{15,4}", 14400, 120, suspect=True),
    CoverRow("truncated icosahedron", "5.6.6", "{30,3}", 2592000, 7200),
    CoverRow("small rhombicuboctahedron", "3.4.4.4", "{12,4}", 1327104, 6912),
    CoverRow("pseudorhombicuboctahedron", "3.4.4.4", "{12,4}",
             _f(p2=35, p3=5, p5=2, p7=1, p11=1), _f(p2=29, p3=4, p5=2, p7=1, p11=1)),
    CoverRow("snub cube", "3.3.3.3.4", "{12,5}", _f(p2=32, p3=11, p5=1), _f(p2=28, p3=10)),
    CoverRow("small rhombicosidodecahedron", "3.4.5.4", "{60,4}", 207360000, 432000),
    CoverRow("great rhombicosidodecahedron", "4.6.10", "{60,3}", 559872000000, 777600000),
    CoverRow("snub dodecahedron", "3.3.3.3.5", "{15,5}",
             _f(p2=23, p3=11, p5=11), _f(p2=20, p3=10, p5=9)),
    CoverRow("truncated dodecahedron", "3.10.10", "{30,3}", 2592000, 7200),
    CoverRow("great rhombicuboctahedron", "4.6.4.8", "{24,4}", 5308416, 18432, suspect=True),
)

ACOPTIC_TABLE: dict[str, frozenset[int]] = {
    "cuboctahedron": frozenset({0, 1, 2}),
    "great rhombicosidodecahedron": frozenset({0, 1, 2}),
    "great rhombicuboctahedron": frozenset({0, 1, 2}),
    "icosidodecahedron": frozenset({0, 1, 2}),
    "small rhombicosidodecahedron": frozenset({0, 1, 2}),
    "small rhombicuboctahedron": frozenset({0, 1, 2}),
    "pseudorhombicuboctahedron": frozenset(),
    "snub cube": frozenset(),
    "snub dodecahedron": frozenset(),
    "truncated cube": frozenset({0, 1}),
    "truncated dodecahedron": frozenset({0, 1}),
    "truncated icosahedron": frozenset({0, 1, 2}),
    "truncated octahedron": frozenset({0, 1, 2}),
    "truncated tetrahedron": frozenset({0, 1}),
}

COVER_ROWS = {row.name: row for row in COVER_TABLE}


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    DISCREPANT = "DISCREPANT"


@dataclass(frozen=True)
class RowComparison:
    name: str
    verdict: Verdict
    mismatches: tuple[str, ...]
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "mismatches": list(self.mismatches),
            "internally_consistent": self.consistent,
        }


def compare_cover(report: CoverReport, row: CoverRow) -> RowComparison:
    """Field-by-field comparison of a computed report with a printed row.

    ``consistent`` checks the computed values only: cover order equals
    stabilizer order times flag count.
    """
    mismatches = []
    if report.vertex_symbol != VertexSymbol.parse(row.vertex_symbol):
        mismatches.append(f"vertex symbol {report.vertex_symbol} vs {row.vertex_symbol}")
    if report.schlafli != SchlafliType.parse(row.schlafli):
        mismatches.append(f"type {report.schlafli} vs {row.schlafli}")
    if report.cover_order.value != row.cover_order:
        mismatches.append(f"|W| {report.cover_order.value} vs {row.cover_order}")
    if report.stabilizer_order.value != row.stabilizer_order:
        mismatches.append(f"|N| {report.stabilizer_order.value} vs {row.stabilizer_order}")
    consistent = report.cover_order.value == report.stabilizer_order.value * report.n_flags
    if not mismatches:
        verdict = Verdict.PASS
    elif row.suspect:
        verdict = Verdict.DISCREPANT
    else:
        verdict = Verdict.FAIL
    return RowComparison(row.name, verdict, tuple(mismatches), consistent)


def compare_acoptic(name: str, ranks: frozenset[int]) -> RowComparison:
    want = ACOPTIC_TABLE[name]
    if ranks == want:
        return RowComparison(name, Verdict.PASS, (), True)
    return RowComparison(name, Verdict.FAIL,
                         (f"ranks {format_ranks(ranks)} vs {format_ranks(want)}",), True)


def format_ranks(ranks) -> str:
    return "{" + ",".join(str(i) for i in sorted(ranks)) + "}" if ranks else "{}"

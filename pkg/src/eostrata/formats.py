"""
Serialization: stratum tables (CSV, JSON, aligned text), Hasse diagrams as
DOT, BT_1 module documents (JSON), and census reports.

Every emitter returns bytes and is deterministic in its input.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from .dieudonne import BT1Module, CensusReport
from .fields import FieldError, FiniteField, gf
from .strata import Poset, StratumRecord
from .weyl import reduced_word

CSV_HEADER = ["g", "phi", "dim", "a", "f", "w", "word", "kraft"]
TABLE_FORMATS = ("csv", "structured", "table")


class FormatError(ValueError):
    pass


def signed_text(w) -> str:
    return ",".join(str(x) for x in w)


def word_text(word) -> str:
    return "-".join(str(i) for i in word)


@dataclass(frozen=True)
class StratumTableRow:
    g: int
    phi: str
    dim: int
    a: int
    f: int
    w: str
    word: str
    kraft: str

    @classmethod
    def from_record(cls, r: StratumRecord) -> "StratumTableRow":
        return cls(
            g=r.g, phi=str(r.phi), dim=r.dim, a=r.a_number, f=r.p_rank,
            w=signed_text(r.w_min), word=word_text(reduced_word(r.w_min)),
            kraft=";".join(str(k) for k in r.kraft),
        )

    @classmethod
    def from_dict(cls, d: dict) -> "StratumTableRow":
        return cls(**{k: d[k] for k in CSV_HEADER})


def _sorted_rows(records) -> list[StratumTableRow]:
    records = sorted(records, key=lambda r: r.sort_key())
    return [StratumTableRow.from_record(r) for r in records]


def emit_table(records, format: str = "table") -> bytes:
    if not records:
        raise FormatError("no records to emit")
    if format not in TABLE_FORMATS:
        raise FormatError(f"unsupported table format {format!r}")
    rows = _sorted_rows(records)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([getattr(row, k) for k in CSV_HEADER])
        return buf.getvalue().encode()
    if format == "structured":
        return (json.dumps([asdict(r) for r in rows], indent=1) + "\n").encode()
    cells = [CSV_HEADER] + [[str(getattr(r, k)) for k in CSV_HEADER] for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(CSV_HEADER))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return ("\n".join(lines) + "\n").encode()


def parse_table(data: bytes, format: str = "structured") -> list[StratumTableRow]:
    """Inverse of :func:`emit_table` for the csv and structured forms."""
    text = data.decode()
    if format == "structured":
        return [StratumTableRow.from_dict(d) for d in json.loads(text)]
    if format == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        return [StratumTableRow(g=int(d["g"]), phi=d["phi"], dim=int(d["dim"]), a=int(d["a"]),
                                f=int(d["f"]), w=d["w"], word=d["word"], kraft=d["kraft"]) for d in rows]
    raise FormatError(f"cannot parse table format {format!r}")


def emit_dot(poset: Poset) -> bytes:
    lines = [f"digraph eo_g{poset.g}_{poset.order} {{", "  rankdir=BT;"]
    for i, r in enumerate(poset.records):
        lines.append(f'  n{i} [label="{r.phi} | {r.dim}"];')
    for i, j in poset.edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def emit_census(report: CensusReport) -> bytes:
    lines = [
        f"census p={report.p} g={report.g}",
        f"candidates {report.candidates}",
        f"valid {report.valid}",
    ]
    for phi in sorted(report.counts, key=lambda s: s.sort_key()):
        lines.append(f"phi={phi} count={report.counts[phi]}")
    lines.append(f"unclassified {len(report.failures)}")
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------- module documents


def _matrix(doc: dict, key: str, n: int, K: FiniteField):
    M = doc[key]
    if not isinstance(M, list) or len(M) != n or any(not isinstance(r, list) or len(r) != n for r in M):
        shape = f"{len(M)}x{len(M[0]) if M and isinstance(M[0], list) else '?'}" if isinstance(M, list) else type(M).__name__
        raise FormatError(f"field {key!r}: expected a {n}x{n} matrix, got {shape}")
    out = []
    for i, row in enumerate(M):
        new = []
        for j, x in enumerate(row):
            try:
                new.append(K.element(x))
            except FieldError as exc:
                raise FormatError(f"field {key!r}, row {i}, column {j}: {exc}") from None
        out.append(tuple(new))
    return tuple(out)


def _int_field(doc: dict, key: str, default=None) -> int:
    if key not in doc:
        if default is None:
            raise FormatError(f"missing field {key!r}")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"field {key!r} must be an integer, got {v!r}")
    return v


def read_module(data: bytes | str) -> BT1Module:
    text = data.decode() if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError("document must be an object")
    unknown = set(doc) - {"p", "a", "modulus", "n", "F", "V", "pairing"}
    if unknown:
        raise FormatError(f"unknown fields {sorted(unknown)}")
    p = _int_field(doc, "p")
    a = _int_field(doc, "a", 1)
    modulus = doc.get("modulus")
    if a > 1 and modulus is None:
        raise FormatError("field 'modulus' is required when a > 1")
    if modulus is not None and (not isinstance(modulus, list) or not all(isinstance(c, int) for c in modulus)):
        raise FormatError("field 'modulus' must be a list of integers")
    try:
        K = gf(p, a, tuple(modulus) if a > 1 else None)
    except FieldError as exc:
        raise FormatError(f"invalid field: {exc}") from None
    n = _int_field(doc, "n")
    if n < 1:
        raise FormatError("field 'n' must be positive")
    F = _matrix(doc, "F", n, K)
    pairing = _matrix(doc, "pairing", n, K) if "pairing" in doc else None
    if "V" in doc:
        V = _matrix(doc, "V", n, K)
        return BT1Module(K, F, V, pairing)
    if pairing is None:
        raise FormatError("field 'V' is required when there is no pairing")
    try:
        return BT1Module.polarized(K, F, pairing)
    except ZeroDivisionError:
        raise FormatError("pairing is degenerate, cannot derive V") from None


def _matrix_text(M) -> str:
    rows = ",\n".join("    [" + ", ".join(str(x) for x in row) + "]" for row in M)
    return "[\n" + rows + "\n  ]"


def write_module(m: BT1Module) -> bytes:
    """Canonical document: fixed key order, one matrix row per line, V always written."""
    K = m.field
    parts = [f'  "p": {K.p}', f'  "a": {K.a}']
    if K.modulus is not None:
        parts.append(f'  "modulus": [{", ".join(map(str, K.modulus))}]')
    parts.append(f'  "n": {m.n}')
    parts.append(f'  "F": {_matrix_text(m.F)}')
    parts.append(f'  "V": {_matrix_text(m.V)}')
    if m.pairing is not None:
        parts.append(f'  "pairing": {_matrix_text(m.pairing)}')
    return ("{\n" + ",\n".join(parts) + "\n}\n").encode()

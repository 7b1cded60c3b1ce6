"""Single-tuple checks and symmetry-reduced scans over integer edge tuples."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, Iterator, Sequence

from .bounds import face_minor_bound_holds
from .dehn import DEFAULT_FILTER_PRIMES, dehn_invariant_is_zero, numeric_dehn_check
from .geometry import EDGE_LABELS, is_nondegenerate
from .padic import valuation_matrix
from .symmetry import canonical_form, is_canonical, opposite_sum_multiset, orbit

log = logging.getLogger(__name__)

LEX_LABELS = ("12", "13", "14", "23", "24", "34")

REPORT_FIELDS = (
    "edges",
    "valid",
    "dehn_zero",
    "matched_root",
    "dimension",
    "canonical_form",
    "opposite_sums",
    "regge_orbit_size",
)


class VerificationFailure(RuntimeError):
    """Two independent routes disagreed, or an invariant check failed."""


def from_lex_order(values: Sequence[int]) -> tuple:
    """Reorder a tuple given as (12, 13, 14, 23, 24, 34) into (12, 34, 13, 24, 14, 23)."""
    by_label = dict(zip(LEX_LABELS, values))
    return tuple(by_label[label] for label in EDGE_LABELS)


@dataclass
class TetraReport:
    edges: tuple
    valid: bool
    dehn_zero: bool | None = None
    matched_root: tuple | None = None
    dimension: int | None = None
    canonical_form: tuple = ()
    opposite_sums: tuple = ()
    regge_orbit_size: int | None = None
    valuation_rows: list = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        return {
            "edges": list(self.edges),
            "valid": self.valid,
            "dehn_zero": self.dehn_zero,
            "matched_root": list(self.matched_root) if self.matched_root else None,
            "dimension": self.dimension,
            "canonical_form": list(self.canonical_form) if self.canonical_form else None,
            "opposite_sums": list(self.opposite_sums) if self.opposite_sums else None,
            "regge_orbit_size": self.regge_orbit_size,
        }


def _symmetry_fields(edges) -> dict:
    orb = orbit(edges, "both", up_to_s4=True)
    return {
        "canonical_form": canonical_form(edges),
        "opposite_sums": opposite_sum_multiset(edges),
        "regge_orbit_size": len(orb),
    }


def check_tuple(
    edges: Sequence[int],
    filter_primes: Sequence[int] = DEFAULT_FILTER_PRIMES,
    cross_check: bool = False,
    with_dimension: bool = True,
    with_symmetry: bool = True,
) -> TetraReport:
    """Validity, mod-p filter, exact Dehn test, dimension and symmetry data."""
    edges = tuple(int(e) for e in edges)
    if not is_nondegenerate(edges):
        return TetraReport(edges, False)
    if not face_minor_bound_holds(edges, max(edges)):
        raise VerificationFailure(f"face minor exceeds 3 N^4 on {edges}")

    verdict = dehn_invariant_is_zero(edges, filter_primes)
    if cross_check:
        numeric = numeric_dehn_check(edges)
        if numeric.is_zero != verdict.is_zero:
            raise VerificationFailure(
                f"exact test says {verdict.is_zero}, numeric oracle says {numeric.is_zero} on {edges}"
            )
    report = TetraReport(edges, True, verdict.is_zero)
    if verdict.matched_root:
        report.matched_root = (verdict.matched_root.order, verdict.matched_root.power)
    if with_dimension:
        vm = valuation_matrix(edges)
        report.dimension = vm.rank()
        report.valuation_rows = [{"p": b.p, "branch": b.base, "row": list(v)} for b, v in vm.rows]
    if with_symmetry:
        for k, v in _symmetry_fields(edges).items():
            setattr(report, k, v)
    return report


# --- enumeration ---------------------------------------------------------

def canonical_tuples(max_edge: int) -> list[tuple]:
    """S4-canonical tuples with entries in 1..max_edge, ordered by (max entry, tuple)."""
    out = []
    rng = range
    n = max_edge
    for a in rng(1, n + 1):
        for e34 in rng(a, n + 1):
            for e13 in rng(a, n + 1):
                # stabilizer of edge 12 forces e13 <= e24, e14, e23
                for e24 in rng(e13, n + 1):
                    for e14 in rng(e13, n + 1):
                        for e23 in rng(e13, n + 1):
                            t = (a, e34, e13, e24, e14, e23)
                            if is_canonical(t):
                                out.append(t)
    out.sort(key=lambda t: (max(t), t))
    return out


def _faces_ok(t) -> bool:
    # cheap strict triangle inequality screen before the determinant
    e12, e34, e13, e24, e14, e23 = t
    for a, b, c in ((e12, e23, e13), (e12, e24, e14), (e13, e34, e14), (e23, e34, e24)):
        if a >= b + c or b >= a + c or c >= a + b:
            return False
    return True


@dataclass(frozen=True)
class ScanConfig:
    max_edge: int
    filter_primes: tuple = DEFAULT_FILTER_PRIMES
    workers: int = 1
    dedupe: str = "s4"
    output_format: str = "json"
    cross_check: bool = False
    emit_all: bool = False

    def __post_init__(self):
        if self.max_edge < 1:
            raise ValueError("max_edge must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.dedupe not in ("none", "s4", "s4+regge"):
            raise ValueError(f"unknown dedupe mode {self.dedupe!r}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown format {self.output_format!r}")


def _candidates(config: ScanConfig) -> list[tuple]:
    if config.dedupe == "none":
        from itertools import product

        tuples = sorted(product(range(1, config.max_edge + 1), repeat=6), key=lambda t: (max(t), t))
    else:
        tuples = canonical_tuples(config.max_edge)
    return tuples


def _run_chunk(args) -> list[dict]:
    chunk, config = args
    out = []
    for t in chunk:
        if not _faces_ok(t) or not is_nondegenerate(t):
            if config.emit_all:
                out.append(TetraReport(t, False).as_dict())
            continue
        if not config.emit_all and not config.cross_check:
            # filter-rejected tuples are never reported; skip the rest of the pipeline
            verdict = dehn_invariant_is_zero(t, config.filter_primes)
            if not verdict.is_zero:
                continue
        report = check_tuple(t, config.filter_primes, config.cross_check)
        if report.dehn_zero or config.emit_all:
            out.append(report.as_dict())
    return out


def _chunks(items: list, size: int) -> Iterator[list]:
    for i in range(0, len(items), size):
        yield items[i : i + size]


def scan(config: ScanConfig) -> Iterator[dict]:
    """Yield report dicts in enumeration order; identical for any worker count."""
    tuples = _candidates(config)
    log.info("scan: %d candidate tuples up to max edge %d", len(tuples), config.max_edge)
    jobs = [(c, config) for c in _chunks(tuples, 2000)]
    if config.workers == 1:
        results: Iterable[list[dict]] = map(_run_chunk, jobs)
        yield from _dedupe(results, config)
    else:
        with Pool(config.workers) as pool:
            yield from _dedupe(pool.imap(_run_chunk, jobs), config)


def _dedupe(results: Iterable[list[dict]], config: ScanConfig) -> Iterator[dict]:
    seen: set = set()
    for batch in results:
        for rec in batch:
            if config.dedupe == "s4+regge" and rec["valid"]:
                key = tuple(orbit(rec["edges"], "both", up_to_s4=True))
                if key in seen:
                    continue
                seen.add(key)
            yield rec


def format_records(records: Iterable[dict], fmt: str = "json") -> str:
    if fmt == "json":
        return "".join(json.dumps(r, separators=(", ", ": ")) + "\n" for r in records)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for r in records:
        row = []
        for k in REPORT_FIELDS:
            v = r[k]
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            elif v is None:
                v = ""
            row.append(v)
        writer.writerow(row)
    return buf.getvalue()

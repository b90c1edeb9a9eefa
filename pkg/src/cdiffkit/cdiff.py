"""c-derivatives, difference distribution tables and c-differential uniformity.

The c-derivative of F at shift a is the map x -> F(x + a) - c*F(x).  Its
difference counts over (a, b) drive everything else here: uniformity,
PcN/APcN classification, and full spectra over sets of c values.

Two admissible ranges for the shift a are supported and must be chosen
explicitly (AConvention): INCLUDE_A_ZERO admits a = 0 whenever c != 1
(the a = 0 row measures how far F is from a permutation), NONZERO_ONLY
never does.  Every report records the convention that produced it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCs, SizeGuardExceeded
from .field import FieldSpec
from .functions import FunctionTable

DDT_DENSE_BOUND = 4096   # materialize the dense q x q count matrix up to this q
_A_CHUNK = 128           # rows per vectorized block in the uniformity kernel


class AConvention(enum.Enum):
    """Admissible shifts a in the uniformity maximum."""

    INCLUDE_A_ZERO = "include-zero"   # all a when c != 1, nonzero a when c = 1
    NONZERO_ONLY = "nonzero"          # nonzero a for every c

    def admits_zero_shift(self, c: int) -> bool:
        return self is AConvention.INCLUDE_A_ZERO and c != 1


@dataclass(frozen=True)
class UniformityResult:
    c: int
    value: int
    witness_a: int
    witness_b: int
    solutions: tuple
    convention: AConvention

    @property
    def classification(self) -> str:
        return {1: "PcN", 2: "APcN"}.get(self.value, "higher")


@dataclass(frozen=True)
class SpectrumReport:
    field: dict
    origin: dict
    convention: str
    c_set: str
    results: tuple  # of UniformityResult
    overall_max: int | None

    def to_json_dict(self) -> dict:
        return {
            "field": self.field,
            "origin": self.origin,
            "a_convention": self.convention,
            "c_set": self.c_set,
            "overall_max": self.overall_max,
            "results": [
                {
                    "c_rank": r.c,
                    "uniformity": r.value,
                    "witness_a": r.witness_a,
                    "witness_b": r.witness_b,
                    "solutions": list(r.solutions),
                    "classification": r.classification,
                }
                for r in self.results
            ],
        }

    def to_csv(self) -> str:
        lines = ["c_rank,uniformity,witness_a,witness_b,classification"]
        for r in self.results:
            lines.append(f"{r.c},{r.value},{r.witness_a},{r.witness_b},{r.classification}")
        return "\n".join(lines) + "\n"


def c_derivative(F: FunctionTable, c: int, a: int) -> FunctionTable:
    """Table of x -> F(x + a) - c*F(x)."""
    spec = F.spec
    shifted = F.values[spec.add_row(a)]
    return FunctionTable(spec, spec.sub_arrays(shifted, spec.scale_array(c, F.values)),
                         {"kind": "raw"})


def ddt_c(F: FunctionTable, c: int) -> np.ndarray:
    """Dense difference distribution table: entry (a, b) counts solutions x
    of F(x + a) - c*F(x) = b.  Guarded to q <= DDT_DENSE_BOUND."""
    spec = F.spec
    q = spec.q
    if q > DDT_DENSE_BOUND:
        raise SizeGuardExceeded(
            f"dense DDT needs q <= {DDT_DENSE_BOUND}; q = {q}. "
            "Use uniformity()/spectrum(), which stream per-a histograms.")
    out = np.zeros((q, q), dtype=np.int32)
    ncf = spec.neg_array(spec.scale_array(c, F.values))
    for a in range(q):
        d = spec.add_arrays(F.values[spec.add_row(a)], ncf)
        out[a] = np.bincount(d, minlength=q)
    return out


def _row_block(spec: FieldSpec, values, ncf, a_list):
    """Derivative values for a block of shifts: row i is D_{a_list[i]}."""
    if spec._add is not None:
        shifted = values[spec._add[a_list]]
    else:
        shifted = values[np.stack([spec.add_row(int(a)) for a in a_list])]
    return spec.add_arrays(shifted, ncf[np.newaxis, :])


def _scan_c(spec: FieldSpec, values, c: int):
    """One pass over all shifts for a fixed c.

    Returns (max over all a, witness, max over a != 0, witness), each witness
    being the lexicographically smallest (a, b) attaining the maximum.
    """
    q = spec.q
    ncf = spec.neg_array(spec.scale_array(c, values))
    best_all = 0
    wit_all = (0, 0)
    best_nz = 0
    wit_nz = (0, 0)
    offsets = None
    for start in range(0, q, _A_CHUNK):
        a_list = np.arange(start, min(start + _A_CHUNK, q))
        block = _row_block(spec, values, ncf, a_list)
        rows = len(a_list)
        if offsets is None or len(offsets) != rows:
            offsets = (np.arange(rows, dtype=np.int64) * q)[:, None]
        counts = np.bincount((block.astype(np.int64) + offsets).ravel(),
                             minlength=rows * q).reshape(rows, q)
        row_max = counts.max(axis=1)
        for i in np.nonzero(row_max > min(best_all, best_nz))[0]:
            a = int(a_list[i])
            m = int(row_max[i])
            if m > best_all:
                best_all = m
                wit_all = (a, int(np.argmax(counts[i])))
            if a != 0 and m > best_nz:
                best_nz = m
                wit_nz = (a, int(np.argmax(counts[i])))
    return best_all, wit_all, best_nz, wit_nz


def _solutions(spec: FieldSpec, values, c: int, a: int, b: int):
    d = spec.add_arrays(values[spec.add_row(a)],
                        spec.neg_array(spec.scale_array(c, values)))
    return tuple(int(x) for x in np.nonzero(d == b)[0])


def uniformity(F: FunctionTable, c: int, conv: AConvention) -> UniformityResult:
    """Maximum difference count over the convention's admissible (a, b),
    with the lexicographically smallest witness and its solution set."""
    spec = F.spec
    best_all, wit_all, best_nz, wit_nz = _scan_c(spec, F.values, c)
    if conv.admits_zero_shift(c):
        value, (wa, wb) = best_all, wit_all
    else:
        value, (wa, wb) = best_nz, wit_nz
    sols = _solutions(spec, F.values, c, wa, wb)
    assert len(sols) == value
    return UniformityResult(c, value, wa, wb, sols, conv)


def admissible_c(spec: FieldSpec, c_filter) -> list:
    """Resolve a c-set descriptor: 'all', 'nonzero', 'exclude_0_1' or an
    explicit iterable of ranks."""
    if isinstance(c_filter, str):
        if c_filter == "all":
            return list(range(spec.q))
        if c_filter == "nonzero":
            return list(range(1, spec.q))
        if c_filter in ("exclude_0_1", "no01"):
            return [c for c in range(spec.q) if c not in (0, 1)]
        raise ValueError(f"unknown c filter {c_filter!r}")
    cs = sorted({int(c) for c in c_filter})
    for c in cs:
        if not 0 <= c < spec.q:
            raise ValueError(f"c rank {c} outside [0, q)")
    return cs


def _spectrum_worker(c):
    spec, values, conv = _PAR_CTX
    best_all, wit_all, best_nz, wit_nz = _scan_c(spec, values, c)
    if conv is _DUAL:
        return (c, best_all, wit_all, best_nz, wit_nz)
    if conv.admits_zero_shift(c):
        value, (wa, wb) = best_all, wit_all
    else:
        value, (wa, wb) = best_nz, wit_nz
    sols = _solutions(spec, values, c, wa, wb)
    return (c, value, wa, wb, sols)


_PAR_CTX = None


def spectrum(F: FunctionTable, c_filter, conv: AConvention,
             threads: int = 1) -> SpectrumReport:
    """Per-c uniformity over a set of c values, plus the overall maximum.

    With threads > 1 the c values are distributed over worker processes
    (fork start method); results are merged in c order, so the report is
    identical for every thread count.
    """
    spec = F.spec
    cs = admissible_c(spec, c_filter)
    rows = _run_per_c(spec, F.values, conv, cs, threads)
    results = tuple(
        UniformityResult(c, value, wa, wb, sols, conv)
        for (c, value, wa, wb, sols) in rows
    )
    c_desc = c_filter if isinstance(c_filter, str) else ",".join(map(str, cs))
    return SpectrumReport(
        field=spec.to_json_dict(),
        origin=dict(F.origin),
        convention=conv.value,
        c_set=c_desc,
        results=results,
        overall_max=max((r.value for r in results), default=None),
    )


def _run_per_c(spec, values, conv, cs, threads):
    global _PAR_CTX
    ctx = None
    if threads > 1 and len(cs) > 1:
        import multiprocessing as mp
        try:
            ctx = mp.get_context("fork")   # workers inherit _PAR_CTX
        except ValueError:
            ctx = None
    _PAR_CTX = (spec, values, conv)
    try:
        if ctx is None:
            return [_spectrum_worker(c) for c in cs]
        chunk = max(1, len(cs) // (threads * 8))
        with ctx.Pool(processes=threads) as pool:
            return pool.map(_spectrum_worker, cs, chunksize=chunk)
    finally:
        _PAR_CTX = None


def dual_convention_max(F: FunctionTable, c_filter, threads: int = 1):
    """Overall maxima under both conventions in a single sweep.

    Returns {"include-zero": (max, witness), "nonzero": (max, witness)} over
    the given c-set, where each witness is (c, a, b).
    """
    spec = F.spec
    cs = admissible_c(spec, c_filter)
    rows = _run_per_c(spec, F.values, _DUAL, cs, threads)
    best = {"include-zero": (0, None), "nonzero": (0, None)}
    for (c, best_all, wit_all, best_nz, wit_nz) in rows:
        if c != 1 and best_all > best["include-zero"][0]:
            best["include-zero"] = (best_all, (c,) + wit_all)
        if c == 1 and best_nz > best["include-zero"][0]:
            best["include-zero"] = (best_nz, (c,) + wit_nz)
        if best_nz > best["nonzero"][0]:
            best["nonzero"] = (best_nz, (c,) + wit_nz)
    return best


class _DualMarker:
    pass


_DUAL = _DualMarker()


def cross_solution_check(F: FunctionTable, a: int, b1: int, b2: int,
                         c1: int, c2: int) -> list:
    """For every x0 solving F(x0+a) - c1*F(x0) = b1, compare
    'x0 also solves the (c2, b2) equation' against
    'F(x0) = (b1 - b2)/(c2 - c1)'; the two must agree.

    Returns [(x0, predicted, actual), ...].
    """
    if c1 == c2 or c1 == 0 or c2 == 0:
        raise DegenerateCs("need two distinct nonzero c values")
    spec = F.spec
    sols = _solutions(spec, F.values, c1, a, b1)
    ratio = spec.mul(spec.sub(b1, b2), spec.inv(spec.sub(c2, c1)))
    out = []
    for x0 in sols:
        actual = spec.sub(F[spec.add(x0, a)], spec.mul(c2, F[x0])) == b2
        predicted = F[x0] == ratio
        out.append((x0, predicted, actual))
    return out

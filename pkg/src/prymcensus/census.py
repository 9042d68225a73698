"""Census scans and witness searches over curve parameter spaces.

Genus 2 sweeps y^2 = x(x-1)(x-lam)(x-t1)(x-t2) over lam, t1, t2 with the
degenerate tuples (values in {0,1}, collisions) excluded; genus 3 fixes
branch points {0, 1, infinity} and sweeps five free affine parameters.
Counting is cover-wise (one increment per unramified double cover); a
curve-wise view (curves whose profile contains a pair) rides along for
growth diagnostics.  Everything is deterministic: exhaustive scans run in
ascending tuple order and random scans require an explicit seed.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .gf import CapExceeded, FieldCtx, build_field, field_spec_str
from .poly import Poly
from .cartier import (HyperellipticCurve, deuring_polynomial,
                      is_supersingular_lambda, p_rank)
from .covers import (INF, CoverDatum, EvenPartition, cover_datum_from_json,
                     cover_profile, subcurve_from_part)
from . import fastscan
from .zeta import DEFAULT_COUNT_CAP, p_rank_zeta

DEFAULT_TUPLE_CAP = 1 << 23
CHUNK = 1 << 16


@dataclass(frozen=True)
class ScanSpec:
    p: int
    k: int
    genus: int
    mode: str = "exhaustive"  # or "random"
    seed: Optional[int] = None
    samples: Optional[int] = None
    tuple_cap: int = DEFAULT_TUPLE_CAP

    def __post_init__(self):
        if self.genus not in (2, 3):
            raise ValueError("census scans support genus 2 and 3")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown scan mode {self.mode!r}")
        if self.mode == "random":
            if self.seed is None:
                raise ValueError("random mode requires an explicit seed")
            if not self.samples or self.samples <= 0:
                raise ValueError("random mode requires a positive sample count")


@dataclass
class StratumTable:
    q: int
    genus: int
    mode: str
    seed: Optional[int]
    counts: dict = field(default_factory=dict)        # (f, f') -> cover-wise count
    curve_counts: dict = field(default_factory=dict)  # (f, f') -> curves whose
    total_scanned: int = 0                            # profile contains the pair

    def pairs(self) -> list[tuple[int, int]]:
        g = self.genus
        return [(f, fp) for f in range(g + 1) for fp in range(g)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["q", "genus", "f", "f_prime", "count", "mode", "seed"])
        seed = "" if self.seed is None else self.seed
        for f, fp in self.pairs():
            w.writerow([self.q, self.genus, f, fp, self.counts.get((f, fp), 0),
                        self.mode, seed])
        return buf.getvalue()

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "genus": self.genus,
            "mode": self.mode,
            "seed": self.seed,
            "total_scanned": self.total_scanned,
            "counts": [{"f": f, "f_prime": fp, "count": self.counts.get((f, fp), 0)}
                       for f, fp in self.pairs()],
            "curve_counts": [{"f": f, "f_prime": fp,
                              "count": self.curve_counts.get((f, fp), 0)}
                             for f, fp in self.pairs()],
        }


def _allowed_codes(ctx: FieldCtx) -> np.ndarray:
    # every element except 0 and 1 (codes 0 and 1 in the fixed encoding)
    return np.arange(2, ctx.q, dtype=np.int64)


def _decode_tuples(idx: np.ndarray, allowed: np.ndarray, arity: int) -> list[np.ndarray]:
    n = len(allowed)
    out = []
    rem = idx
    for _ in range(arity):
        out.append(allowed[rem % n])
        rem = rem // n
    return out


def _distinct_mask(cols: list[np.ndarray]) -> np.ndarray:
    mask = np.ones(cols[0].shape, dtype=bool)
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            mask &= cols[i] != cols[j]
    return mask


def _index_stream(spec: ScanSpec, total: int):
    """Yield ascending index blocks (exhaustive) or seeded batches (random)."""
    if spec.mode == "exhaustive":
        if total > spec.tuple_cap:
            raise CapExceeded(
                f"parameter space of {total} tuples exceeds cap {spec.tuple_cap}")
        for lo in range(0, total, CHUNK):
            yield np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
    else:
        rng = np.random.default_rng(spec.seed)
        remaining = spec.samples
        while remaining > 0:
            take = min(remaining, CHUNK)
            yield rng.integers(0, total, size=take, dtype=np.int64)
            remaining -= take


def scan(spec: ScanSpec) -> StratumTable:
    """Sweep the parameter space, computing every cover's (f, f') pair."""
    ctx = build_field(spec.p, spec.k)
    vf = fastscan.vf_for(ctx)
    allowed = _allowed_codes(ctx)
    arity = 3 if spec.genus == 2 else 5
    total = len(allowed) ** arity
    g = spec.genus
    n_pairs = (g + 1) * g
    cover_hist = np.zeros(n_pairs, dtype=np.int64)
    curve_hist = np.zeros(n_pairs, dtype=np.int64)
    scanned = 0
    for idx in _index_stream(spec, total):
        cols = _decode_tuples(idx, allowed, arity)
        mask = _distinct_mask(cols)
        if not mask.any():
            continue
        cols = [c[mask] for c in cols]
        scanned += len(cols[0])
        digits = [vf.from_codes(c) for c in cols]
        if g == 2:
            f_arr, fp_arr = fastscan.genus2_pranks(vf, digits[0], digits[1], digits[2])
        else:
            f_arr, fp_arr = fastscan.genus3_pranks(vf, digits)
        base = f_arr.astype(np.int64) * g
        for row in fp_arr:
            cover_hist += np.bincount(base + row, minlength=n_pairs)
        for fp in range(g):
            has = (fp_arr == fp).any(axis=0)
            curve_hist += np.bincount(base[has] + fp, minlength=n_pairs)
    table = StratumTable(ctx.q, g, spec.mode, spec.seed)
    table.total_scanned = scanned
    for f in range(g + 1):
        for fp in range(g):
            c = int(cover_hist[f * g + fp])
            cc = int(curve_hist[f * g + fp])
            if c:
                table.counts[(f, fp)] = c
            if cc:
                table.curve_counts[(f, fp)] = cc
    return table


# ---------------------------------------------------------------------------
# witness search


@dataclass
class WitnessCertificate:
    cover: CoverDatum
    scan_info: dict

    def to_json_dict(self) -> dict:
        d = self.cover.to_json_dict()
        d["scan"] = self.scan_info
        return d


@dataclass
class SearchExhausted:
    target: tuple[int, int]
    p: int
    genus: int
    max_k: int
    tuples_examined: int

    def to_json_dict(self) -> dict:
        return {"exhausted": True, "target": list(self.target), "p": self.p,
                "genus": self.genus, "max_k": self.max_k,
                "tuples_examined": self.tuples_examined}


def _supersingular_codes(ctx: FieldCtx) -> list[int]:
    h = deuring_polynomial(ctx.p)
    return sorted(r.code for r in h.roots_in(ctx))


def _genus2_certificate(ctx, lam_code, t1_code, t2_code, scan_info) -> WitnessCertificate:
    lam = ctx.from_code(int(lam_code))
    t1 = ctx.from_code(int(t1_code))
    t2 = ctx.from_code(int(t2_code))
    curve = HyperellipticCurve(
        Poly.from_roots(ctx, [ctx.zero(), ctx.one(), lam, t1, t2]))
    partition = EvenPartition.make([ctx.zero(), ctx.one(), lam, INF], [t1, t2])
    q1 = subcurve_from_part(partition.part1, ctx)
    q2 = subcurve_from_part(partition.part2, ctx)
    f = p_rank(curve)
    fp = (p_rank(q1) if q1 else 0) + (p_rank(q2) if q2 else 0)
    return WitnessCertificate(CoverDatum(curve, partition, q1, q2, f, fp), scan_info)


def witness_search(p: int, genus: int, target: tuple[int, int],
                   max_k: int = 4, budget: int = 1 << 24,
                   tuple_cap: int = DEFAULT_TUPLE_CAP):
    """Deterministic search for a cover with the given (f, f'), extending the
    field degree k = 1, 2, ... in turn; returns the first hit in scan order
    or SearchExhausted.

    Genus-2 searches are target-aware: any curve whose profile contains
    (f, 0) has a model in the standard family with supersingular lam (a
    coordinate change moves the supersingular quotient's branch quadruple
    to {0, 1, lam, inf}), so f' = 0 targets only sweep supersingular lam,
    and f' = 1 targets only ordinary lam.  Genus-3 searches sweep the
    5-parameter family and inspect all 63 covers of matching curves.
    """
    tf, tfp = target
    if not (0 <= tf <= genus and 0 <= tfp <= genus - 1):
        raise ValueError(f"target {target} outside 0<=f<={genus}, 0<=f'<={genus-1}")
    if genus == 2:
        return _witness_search_g2(p, tf, tfp, max_k, budget)
    if genus == 3:
        return _witness_search_g3(p, tf, tfp, max_k, budget)
    raise ValueError("witness search supports genus 2 and 3")


def _witness_search_g2(p, tf, tfp, max_k, budget):
    examined = 0
    for k in range(1, max_k + 1):
        ctx = build_field(p, k)
        vf = fastscan.vf_for(ctx)
        allowed = _allowed_codes(ctx)
        n = len(allowed)
        if tfp == 0:
            lam_codes = [c for c in _supersingular_codes(ctx) if c >= 2]
        else:
            ss = set(_supersingular_codes(ctx))
            lam_codes = [int(c) for c in allowed if int(c) not in ss]
        for lam_code in lam_codes:
            lam_digits = vf.from_codes(np.array(lam_code, dtype=np.int64))
            total = n * n
            for lo in range(0, total, CHUNK):
                if examined >= budget:
                    return SearchExhausted((tf, tfp), p, 2, max_k, examined)
                idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
                t1c = allowed[idx % n]
                t2c = allowed[idx // n]
                mask = (t1c != t2c) & (t1c != lam_code) & (t2c != lam_code)
                if not mask.any():
                    continue
                idx, t1c, t2c = idx[mask], t1c[mask], t2c[mask]
                examined += len(idx)
                f_arr = fastscan.genus2_f(
                    vf, lam_digits, vf.from_codes(t1c), vf.from_codes(t2c))
                hits = np.nonzero(f_arr == tf)[0]
                if len(hits):
                    h = int(hits[0])
                    info = {"k": k, "lambda_code": int(lam_code),
                            "tuple_index": int(idx[h]),
                            "strategy": "supersingular-lambda" if tfp == 0
                                        else "ordinary-lambda"}
                    cert = _genus2_certificate(ctx, lam_code, t1c[h], t2c[h], info)
                    assert (cert.cover.f, cert.cover.f_prime) == (tf, tfp)
                    return cert
    return SearchExhausted((tf, tfp), p, 2, max_k, examined)


def _witness_search_g3(p, tf, tfp, max_k, budget):
    examined = 0
    for k in range(1, max_k + 1):
        ctx = build_field(p, k)
        vf = fastscan.vf_for(ctx)
        allowed = _allowed_codes(ctx)
        n = len(allowed)
        if n < 5:
            continue
        total = n ** 5
        for lo in range(0, total, CHUNK):
            if examined >= budget:
                return SearchExhausted((tf, tfp), p, 3, max_k, examined)
            idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
            cols = _decode_tuples(idx, allowed, 5)
            mask = _distinct_mask(cols)
            if not mask.any():
                continue
            idx = idx[mask]
            cols = [c[mask] for c in cols]
            examined += len(idx)
            digits = [vf.from_codes(c) for c in cols]
            f_arr = fastscan.genus3_f(vf, digits)
            f_hits = np.nonzero(f_arr == tf)[0]
            hit = None
            # inspect covers in slices so rare base ranks stay cheap
            for lo2 in range(0, len(f_hits), 1024):
                sl = f_hits[lo2:lo2 + 1024]
                sub = [d[sl] for d in digits]
                fp_arr = fastscan.genus3_covers(vf, sub)
                rows = np.nonzero((fp_arr == tfp).any(axis=0))[0]
                if len(rows):
                    r = int(rows[0])
                    hit = (int(sl[r]), int(np.nonzero(fp_arr[:, r] == tfp)[0][0]))
                    break
            if hit is not None:
                h, part_idx = hit
                bs = [ctx.from_code(int(c[h])) for c in cols]
                labels = [ctx.zero(), ctx.one()] + bs + [INF]
                part = fastscan.G3_PARTS[part_idx]
                part_a = [labels[i] for i in part]
                part_b = [labels[i] for i in range(8) if i not in part]
                curve = HyperellipticCurve(
                    Poly.from_roots(ctx, [ctx.zero(), ctx.one()] + bs))
                partition = EvenPartition.make(part_a, part_b)
                q1 = subcurve_from_part(partition.part1, ctx)
                q2 = subcurve_from_part(partition.part2, ctx)
                f = p_rank(curve)
                fp = (p_rank(q1) if q1 else 0) + (p_rank(q2) if q2 else 0)
                cert = WitnessCertificate(
                    CoverDatum(curve, partition, q1, q2, f, fp),
                    {"k": k, "tuple_index": int(idx[h]), "strategy": "sweep"})
                assert (f, fp) == (tf, tfp)
                return cert
    return SearchExhausted((tf, tfp), p, 3, max_k, examined)


def verify_certificate(cert_dict: dict, count_cap: int = DEFAULT_COUNT_CAP) -> dict:
    """Re-derive a certificate's (f, f') through both the Cartier path and
    the point-counting oracle; reports per-path agreement."""
    cd = cover_datum_from_json(cert_dict)
    f_cartier = p_rank(cd.base)
    fp_cartier = sum(p_rank(q) for q in (cd.quotient1, cd.quotient2) if q)
    result = {
        "cartier_f": f_cartier,
        "cartier_f_prime": fp_cartier,
        "cartier_ok": (f_cartier, fp_cartier) == (cd.f, cd.f_prime),
    }
    try:
        f_zeta = p_rank_zeta(cd.base, count_cap)
        fp_zeta = sum(p_rank_zeta(q, count_cap)
                      for q in (cd.quotient1, cd.quotient2) if q)
        result["zeta_f"] = f_zeta
        result["zeta_f_prime"] = fp_zeta
        result["zeta_ok"] = (f_zeta, fp_zeta) == (cd.f, cd.f_prime)
    except CapExceeded:
        result["zeta_ok"] = None
        result["zeta_note"] = "counting cap exceeded; oracle path skipped"
    result["ok"] = bool(result["cartier_ok"] and result.get("zeta_ok", True))
    return result


# ---------------------------------------------------------------------------
# growth diagnostics and open-ended exploration


def growth_exponent(p: int, genus: int, target: tuple[int, int],
                    k_list: tuple[int, ...],
                    tuple_cap: int = DEFAULT_TUPLE_CAP) -> list[dict]:
    """Fitted growth exponents log(N'/N)/log(q'/q) of curve-wise stratum
    counts between consecutive exhaustive scans.  Purely descriptive."""
    tables = [scan(ScanSpec(p, k, genus, tuple_cap=tuple_cap)) for k in k_list]
    out = []
    for t0, t1 in zip(tables, tables[1:]):
        n0 = t0.curve_counts.get(target, 0)
        n1 = t1.curve_counts.get(target, 0)
        entry = {"q_from": t0.q, "q_to": t1.q, "count_from": n0, "count_to": n1}
        if n0 > 0 and n1 > 0:
            entry["exponent"] = float(np.log(n1 / n0) / np.log(t1.q / t0.q))
        else:
            entry["exponent"] = None
        out.append(entry)
    return out


QUESTION_PRYM_ZERO_G3 = "prym-zero-genus3"
QUESTION_TABLE_G3 = "stratum-table-genus3"
_SLICE_NOTE = ("hyperelliptic slice only -- non-hyperelliptic genus-3 curves "
               "not searched; absence here settles nothing")


def explore_question(question: str, p: int, max_k: int = 2,
                     budget: int = 1 << 22, seed: int = 0) -> dict:
    """Open-ended searches; reports findings only, never emptiness claims."""
    if question == QUESTION_PRYM_ZERO_G3:
        return _explore_prym_zero(p, max_k, budget)
    if question == QUESTION_TABLE_G3:
        return _explore_table(p, max_k, budget, seed)
    raise ValueError(f"unknown question id {question!r}; expected "
                     f"{QUESTION_PRYM_ZERO_G3!r} or {QUESTION_TABLE_G3!r}")


def _explore_prym_zero(p: int, max_k: int, budget: int) -> dict:
    best = None
    best_witness = None
    examined = 0
    for k in range(1, max_k + 1):
        ctx = build_field(p, k)
        vf = fastscan.vf_for(ctx)
        allowed = _allowed_codes(ctx)
        n = len(allowed)
        if n < 5:
            continue
        total = n ** 5
        for lo in range(0, total, CHUNK):
            if examined >= budget:
                break
            idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
            cols = _decode_tuples(idx, allowed, 5)
            mask = _distinct_mask(cols)
            if not mask.any():
                continue
            cols = [c[mask] for c in cols]
            examined += len(cols[0])
            digits = [vf.from_codes(c) for c in cols]
            f_arr, fp_arr = fastscan.genus3_pranks(vf, digits)
            fy = f_arr[None, :] + fp_arr
            score = f_arr.astype(np.int64) * 16 + fy.min(axis=0)
            pos = int(score.argmin())
            cand = (int(f_arr[pos]), int(fy[:, pos].min()))
            if best is None or cand < best:
                best = cand
                part_idx = int(fy[:, pos].argmin())
                bs = [ctx.from_code(int(c[pos])) for c in cols]
                labels = [ctx.zero(), ctx.one()] + bs + [INF]
                part = fastscan.G3_PARTS[part_idx]
                curve = HyperellipticCurve(
                    Poly.from_roots(ctx, [ctx.zero(), ctx.one()] + bs))
                partition = EvenPartition.make(
                    [labels[i] for i in part],
                    [labels[i] for i in range(8) if i not in part])
                q1 = subcurve_from_part(partition.part1, ctx)
                q2 = subcurve_from_part(partition.part2, ctx)
                fval = p_rank(curve)
                fpval = (p_rank(q1) if q1 else 0) + (p_rank(q2) if q2 else 0)
                best_witness = CoverDatum(curve, partition, q1, q2,
                                          fval, fpval).to_json_dict()
            if best == (0, 0):
                break
        if best == (0, 0) or examined >= budget:
            break
    return {
        "question": QUESTION_PRYM_ZERO_G3,
        "p": p,
        "tuples_examined": examined,
        "best_f_fY": list(best) if best else None,
        "witness": best_witness,
        "found_zero_zero": best == (0, 0),
        "note": _SLICE_NOTE,
    }


def _explore_table(p: int, max_k: int, budget: int, seed: int) -> dict:
    ctx = build_field(p, max_k)
    n = ctx.q - 2
    total = n ** 5
    if total <= budget:
        spec = ScanSpec(p, max_k, 3, "exhaustive", tuple_cap=max(total, 1))
    else:
        spec = ScanSpec(p, max_k, 3, "random", seed=seed, samples=budget)
    table = scan(spec)
    return {
        "question": QUESTION_TABLE_G3,
        "p": p,
        "table": table.to_json_dict(),
        "note": _SLICE_NOTE,
    }

"""Norm-growth experiments, inequality checks and report serialization.

Every experiment returns an ExperimentReport whose rows are plain dicts.  The
``columns`` list fixes the CSV layout; JSON output carries the full row dicts
plus the metadata block.  Wall-clock timings are kept out of the serialized
report unless explicitly requested, so reruns are byte-identical.
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .approx import GENERATOR_TAG, RelaxationConfig
from .exact import (DEFAULT_CAP, cut_norm_bracket, cut_norm_exact, inf_one_norm_exact,
                    operator_norm)
from .graphon import (StepGraphon, as_fraction, banded_cut,
                      corner_embed_symmetric, graphon_cut_norm, refine, tensor_graphon,
                      triangular_cut_graphon)
from .matrix import (K_G_HIGH, PI, closed_form_tri_cut_norm, harmonic, kronecker, make_An,
                     schur, triangular_cut, triangular_mask)

KINDS = ("tri-cut-box", "tri-sym-box", "tri-sym-opr", "banded-box")
EXACT_TOL = 1e-12
INEQ_TOL = 1e-9
TEST_VECTOR_MIN_N = 256

COLUMNS = {
    "tri-cut-box": ["n", "closed_form", "tri_exact", "base_lo", "base_hi", "ratio_lo",
                    "paper_floor", "paper_floor_printed", "pass"],
    "tri-sym-box": ["n", "side", "tri_lo", "tri_hi", "base_lo", "base_hi", "ratio_lo",
                    "ratio_hi", "analytic_floor", "upper_chain_ok", "lower_chain_ok", "pass"],
    "tri-sym-opr": ["n", "side", "route", "tri_opr", "base_opr", "ratio", "test_vector",
                    "ref_ln", "ref_log2", "pass"],
    "banded-box": ["n", "lambda", "side", "embedded_norm", "banded_norm", "ratio",
                   "tri_sym_ratio", "scaled_embedded", "scaled_banded", "display_matches", "pass"],
    "inequalities": ["kind", "index", "n", "cut_norm", "inf_one", "opr", "kron_inf_one",
                     "slack_a", "slack_b_lower", "slack_b_upper", "slack_c_lower",
                     "slack_c_upper", "pass"],
    "invariants": ["check", "instances", "violations", "worst", "pass"],
    "norms": ["norm", "lower", "upper", "method", "witness", "pass"],
    "graphon": ["m", "symmetric", "l1_norm", "cut_lo", "cut_hi", "method", "pass"],
}


@dataclass
class ExperimentReport:
    experiment: str
    columns: list
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(bool(r.get("pass", True)) for r in self.rows)


@dataclass(frozen=True)
class ExperimentConfig:
    cap: int = DEFAULT_CAP
    relaxation: RelaxationConfig = RelaxationConfig()
    lam: Fraction = Fraction(1, 2)
    opr_tol: float = 1e-10
    opr_side_cap: int = 1024
    threads: int | None = None


def _metadata(cfg: ExperimentConfig, **extra) -> dict:
    meta = {
        "package_version": __version__,
        "seed": cfg.relaxation.seed,
        "cap": cfg.cap,
        "generator": GENERATOR_TAG,
        "tolerances": {"exact": EXACT_TOL, "inequality": INEQ_TOL, "operator_norm": cfg.opr_tol},
        "K_G": K_G_HIGH,
        "log_base": "natural (log2 column reported alongside)",
    }
    meta.update(extra)
    return meta


# -- test vector for the triangular operator norm ----------------------------

def tri_test_vector_norm(n: int, block: int = 512) -> float:
    """``||(T_n o A_n) v||_2`` with ``v = (n-1)^{-1/2} (0, 1, ..., 1)``.

    Rows of the lower-triangular part are generated in blocks, so memory stays
    ``O(block * n)``.
    """
    if n < 2:
        raise ValueError("test vector needs n >= 2")
    v = np.full(n, 1.0 / math.sqrt(n - 1))
    v[0] = 0.0
    j = np.arange(n)
    total = 0.0
    for start in range(0, n, block):
        i = np.arange(start, min(start + block, n))
        diff = (i[:, None] - j[None, :]).astype(float)
        M = np.zeros_like(diff)
        pos = diff > 0
        M[pos] = 1.0 / diff[pos]
        total += float(np.sum((M @ v) ** 2))
    return math.sqrt(total)


# -- growth rows -----------------------------------------------------------

def _tri_cut_box_row(n, cfg):
    A = make_An(n)
    cf = closed_form_tri_cut_norm(n)
    tri_exact = cut_norm_exact(triangular_cut(A), cap=cfg.cap, threads=cfg.threads)[0] \
        if n <= cfg.cap else None
    base = cut_norm_bracket(A, cap=cfg.cap, cfg=cfg.relaxation, threads=cfg.threads)
    tri = tri_exact if tri_exact is not None else cf
    H = harmonic(n - 1)
    floor = (n * (H - 1) + 1) / (PI * n)
    printed = (n**2 * (H - 1) + n) / n**2
    ratio_lo = tri / base.upper
    ok = (tri_exact is None or abs(tri_exact - cf) <= EXACT_TOL) and ratio_lo >= floor - EXACT_TOL
    return {
        "n": n, "closed_form": cf, "tri_exact": tri_exact,
        "base_lo": base.lower, "base_hi": base.upper, "ratio_lo": ratio_lo,
        "paper_floor": floor, "paper_floor_printed": printed, "pass": ok,
        "tri_norm": tri, "base_norm_lo": base.lower, "base_norm_hi": base.upper,
        "base_method": base.method,
    }


def _chain_ok(values, increasing=True):
    pairs = zip(values, values[1:])
    if increasing:
        return all(a <= b * (1 + INEQ_TOL) + INEQ_TOL for a, b in pairs)
    return all(a >= b * (1 - INEQ_TOL) - INEQ_TOL for a, b in pairs)


def _tri_sym_chains(n, cfg, K, L, cutK, cutL):
    """Intermediate inequalities of the symmetric-growth argument, all sides exact."""
    A = make_An(n)
    TA = triangular_cut(A)
    kg2 = K_G_HIGH**2
    infA = inf_one_norm_exact(A, cap=cfg.cap, threads=cfg.threads)[0]
    cutA = cut_norm_exact(A, cap=cfg.cap, threads=cfg.threads)[0]
    infK = inf_one_norm_exact(K, cap=cfg.cap, threads=cfg.threads)[0]
    infL = inf_one_norm_exact(L, cap=cfg.cap, threads=cfg.threads)[0]
    infTA = inf_one_norm_exact(TA, cap=cfg.cap, threads=cfg.threads)[0]
    cutTA = cut_norm_exact(TA, cap=cfg.cap, threads=cfg.threads)[0]
    upper = [n**4 * cutK, infK, PI / 2 * kg2 * infA**2,
             2 * PI * kg2 * n**2 * cutA * infA, 2 * PI**2 * kg2 * n * infA]
    lower = [4 * n**4 * cutL, infL, infTA * infA, n**2 * cutTA * infA]
    last = (n * (harmonic(n - 1) - 1) + 1) * infA
    mask_ok = L.equals(kronecker(TA, A))
    lower_ok = _chain_ok(lower, increasing=False) and mask_ok \
        and abs(lower[-1] - last) <= INEQ_TOL * max(1.0, abs(last))
    return _chain_ok(upper), lower_ok, upper, lower + [last]


def _tri_sym_box_row(n, cfg):
    K = kronecker(make_An(n), make_An(n))
    L = triangular_cut(K)
    side = n * n
    tri = cut_norm_bracket(L, cap=cfg.cap, cfg=cfg.relaxation, threads=cfg.threads)
    base = cut_norm_bracket(K, cap=cfg.cap, cfg=cfg.relaxation, threads=cfg.threads)
    floor = (n * (harmonic(n - 1) - 1) + 1) / (8 * PI**2 * K_G_HIGH**2 * n)
    row = {
        "n": n, "side": side, "tri_lo": tri.lower, "tri_hi": tri.upper,
        "base_lo": base.lower, "base_hi": base.upper,
        "ratio_lo": tri.lower / base.upper,
        "ratio_hi": tri.upper / base.lower if base.lower > 0 else None,
        "analytic_floor": floor, "upper_chain_ok": None, "lower_chain_ok": None,
        "tri_method": tri.method, "base_method": base.method,
    }
    if side <= cfg.cap:
        up_ok, lo_ok, up, lo = _tri_sym_chains(n, cfg, K, L, base.lower, tri.lower)
        row.update(upper_chain_ok=up_ok, lower_chain_ok=lo_ok, upper_chain=up, lower_chain=lo)
    row["pass"] = bool(row["ratio_lo"] >= floor and row["upper_chain_ok"] is not False
                       and row["lower_chain_ok"] is not False)
    return row


def _tri_sym_opr_row(n, cfg):
    A = make_An(n)
    TA = triangular_cut(A)
    side = n * n
    if side <= cfg.opr_side_cap:
        K = kronecker(A, A)
        tri = operator_norm(triangular_cut(K), tol=cfg.opr_tol)
        base = operator_norm(K, tol=cfg.opr_tol)
        route = "direct"
    else:
        # ||X (x) Y||_2 = ||X||_2 ||Y||_2
        a = operator_norm(A, tol=cfg.opr_tol)
        tri = operator_norm(TA, tol=cfg.opr_tol) * a
        base = a * a
        route = "kronecker-factors"
    tv = tri_test_vector_norm(n) if n >= 2 else 0.0
    ratio = tri / base if base > 0 else None
    ref_ln = 0.8 * math.log(n)
    ok = base <= PI**2 + INEQ_TOL
    if ratio is not None:
        ok = ok and ratio >= tv / PI * (1 - INEQ_TOL)
    if n >= TEST_VECTOR_MIN_N:
        ok = ok and tv >= ref_ln
    return {
        "n": n, "side": side, "route": route, "tri_opr": tri, "base_opr": base,
        "ratio": ratio, "test_vector": tv, "ref_ln": ref_ln,
        "ref_log2": 0.8 * math.log2(n), "pass": bool(ok),
    }


def _banded_box_row(n, cfg):
    lam = as_fraction(cfg.lam)
    if n * n > cfg.cap:
        raise ValueError(f"banded-box needs exact enumeration at side n^2={n * n} > cap {cfg.cap}")
    K = kronecker(make_An(n), make_An(n))
    cutK = cut_norm_exact(K, cap=cfg.cap, threads=cfg.threads)[0]
    cutL = cut_norm_exact(triangular_cut(K), cap=cfg.cap, threads=cfg.threads)[0]
    w = tensor_graphon(n)
    emb = corner_embed_symmetric(w, lam)
    band = banded_cut(emb, lam)
    e_norm = graphon_cut_norm(emb, cap=cfg.cap, threads=cfg.threads)[0]
    b_norm = graphon_cut_norm(band, cap=cfg.cap, threads=cfg.threads)[0]
    l2 = float(lam) ** 2
    ratio = b_norm / e_norm
    tri_sym = cutL / cutK
    scaled_e = 2 * l2 * cutK
    scaled_b = 2 * l2 * cutL
    ok = (abs(ratio - tri_sym) <= EXACT_TOL and abs(e_norm - scaled_e) <= EXACT_TOL
          and abs(b_norm - scaled_b) <= EXACT_TOL)
    return {
        "n": n, "lambda": str(lam), "side": emb.m, "embedded_norm": e_norm,
        "banded_norm": b_norm, "ratio": ratio, "tri_sym_ratio": tri_sym,
        "scaled_embedded": scaled_e, "scaled_banded": scaled_b,
        "display_matches": abs(b_norm - scaled_e) <= EXACT_TOL, "pass": bool(ok),
    }


_ROWS = {
    "tri-cut-box": _tri_cut_box_row,
    "tri-sym-box": _tri_sym_box_row,
    "tri-sym-opr": _tri_sym_opr_row,
    "banded-box": _banded_box_row,
}


def run_growth(kind: str, n_range, cfg: ExperimentConfig = ExperimentConfig()) -> ExperimentReport:
    if kind not in _ROWS:
        raise ValueError(f"unknown growth kind {kind!r}; choose from {', '.join(KINDS)}")
    ns = sorted(set(int(n) for n in n_range))
    if ns and ns[0] < (1 if kind == "tri-sym-opr" else 2):
        raise ValueError(f"{kind} needs n >= 2" if kind != "tri-sym-opr" else "n must be >= 1")
    t0 = time.perf_counter()
    rows = [_ROWS[kind](n, cfg) for n in ns]
    extra = {"lambda": str(as_fraction(cfg.lam))} if kind == "banded-box" else {}
    return ExperimentReport(kind, list(COLUMNS[kind]), rows, _metadata(cfg, **extra),
                            {"wall_clock_s": time.perf_counter() - t0})


# -- inequality suite --------------------------------------------------------

def check_tensor_inequality(A, B, cap: int = DEFAULT_CAP, threads=None) -> dict:
    """Both sides of ``|A| |B| <= |A (x) B| <= (pi/2) K_G^2 |A| |B|`` in the (inf,1)-norm."""
    a = inf_one_norm_exact(A, cap=cap, threads=threads)[0]
    b = inf_one_norm_exact(B, cap=cap, threads=threads)[0]
    k = inf_one_norm_exact(kronecker(A, B), cap=cap, threads=threads)[0]
    prod = a * b
    return {"product": prod, "kron": k, "slack_lower": k - prod,
            "slack_upper": PI / 2 * K_G_HIGH**2 * prod - k}


def run_inequality_suite(count: int, n_max: int, seed: int = 0, pairs: int | None = None,
                         pair_side_max: int = 4, cap: int = DEFAULT_CAP,
                         threads=None) -> ExperimentReport:
    """Random checks of ``n|A|_cut <= |A|_opr`` and ``n^2|A|_cut <= |A|_inf1 <= 4n^2|A|_cut``
    (``count`` matrices, sides 2..n_max) and of the tensor bound (``pairs`` pairs)."""
    if n_max > cap:
        raise ValueError(f"n_max={n_max} exceeds the enumeration cap {cap}")
    if pair_side_max**2 > cap:
        raise ValueError(f"pair side {pair_side_max} gives Kronecker side above cap {cap}")
    pairs = count if pairs is None else pairs
    rng = np.random.Generator(np.random.PCG64(seed))
    t0 = time.perf_counter()
    rows = []
    for idx in range(count):
        n = int(rng.integers(min(2, n_max), n_max + 1))
        A = rng.uniform(-1.0, 1.0, (n, n))
        cut = cut_norm_exact(A, cap=cap, threads=threads)[0]
        inf1 = inf_one_norm_exact(A, cap=cap, threads=threads)[0]
        opr = operator_norm(A)
        sa, sbl, sbu = opr - n * cut, inf1 - n**2 * cut, 4 * n**2 * cut - inf1
        rows.append({"kind": "ab", "index": idx, "n": n, "cut_norm": cut, "inf_one": inf1,
                     "opr": opr, "kron_inf_one": None, "slack_a": sa, "slack_b_lower": sbl,
                     "slack_b_upper": sbu, "slack_c_lower": None, "slack_c_upper": None,
                     "pass": min(sa, sbl, sbu) >= -INEQ_TOL})
    for idx in range(pairs):
        n = int(rng.integers(min(2, pair_side_max), pair_side_max + 1))
        A = rng.uniform(-1.0, 1.0, (n, n))
        B = rng.uniform(-1.0, 1.0, (n, n))
        c = check_tensor_inequality(A, B, cap=cap, threads=threads)
        rows.append({"kind": "c", "index": idx, "n": n, "cut_norm": None,
                     "inf_one": c["product"], "opr": None, "kron_inf_one": c["kron"],
                     "slack_a": None, "slack_b_lower": None, "slack_b_upper": None,
                     "slack_c_lower": c["slack_lower"], "slack_c_upper": c["slack_upper"],
                     "pass": min(c["slack_lower"], c["slack_upper"]) >= -INEQ_TOL})
    worst = {}
    for key in ("slack_a", "slack_b_lower", "slack_b_upper", "slack_c_lower", "slack_c_upper"):
        vals = [r[key] for r in rows if r[key] is not None]
        worst[key] = min(vals) if vals else None
    meta = _metadata(ExperimentConfig(cap=cap), seed=seed, count=count, pairs=pairs,
                     n_max=n_max, pair_side_max=pair_side_max, worst_slack=worst,
                     violations=sum(not r["pass"] for r in rows))
    return ExperimentReport("inequalities", list(COLUMNS["inequalities"]), rows, meta,
                            {"wall_clock_s": time.perf_counter() - t0})


def summarize_inequalities(report: ExperimentReport) -> list:
    """One invariants-style row per inequality."""
    out = []
    for key in ("slack_a", "slack_b_lower", "slack_b_upper", "slack_c_lower", "slack_c_upper"):
        vals = [r[key] for r in report.rows if r[key] is not None]
        bad = sum(v < -INEQ_TOL for v in vals)
        out.append({"check": f"inequality_{key[len('slack_'):]}", "instances": len(vals),
                    "violations": bad, "worst": min(vals) if vals else None, "pass": bad == 0})
    return out


# -- invariant suite ---------------------------------------------------------

def _random_zero_diag(rng, n, low=-1.0, high=1.0, symmetric=False):
    A = rng.uniform(low, high, (n, n))
    if symmetric:
        A = np.triu(A, 1)
        A = A + A.T
    np.fill_diagonal(A, 0.0)
    return A


def _check(name, deviations, limit, larger_is_worse=True):
    """Row for a list of deviations; a violation is a deviation past ``limit``."""
    if larger_is_worse:
        bad = sum(d > limit for d in deviations)
        worst = max(deviations) if deviations else None
    else:
        bad = sum(d < limit for d in deviations)
        worst = min(deviations) if deviations else None
    return {"check": name, "instances": len(deviations), "violations": bad,
            "worst": worst, "pass": bad == 0}


def check_closed_form(ns=range(2, 13), cap=DEFAULT_CAP, threads=None):
    return [abs(cut_norm_exact(triangular_cut(make_An(n)), cap=cap, threads=threads)[0]
                - closed_form_tri_cut_norm(n)) for n in ns]


def mask_identity_holds(A) -> bool:
    n = np.asarray(A).shape[0]
    return schur(triangular_mask(n * n), kronecker(A, A)).equals(kronecker(triangular_cut(A), A))


def check_tensor_graphon_equalities(n, cap=DEFAULT_CAP, threads=None):
    """Deviations for the two step-graphon equalities built on ``w_n``."""
    K = kronecker(make_An(n), make_An(n))
    w = tensor_graphon(n)
    tri_w = graphon_cut_norm(triangular_cut_graphon(w), cap=cap, threads=threads)[0]
    tri_m = cut_norm_exact(triangular_cut(K), cap=cap, threads=threads)[0]
    base_w = graphon_cut_norm(w, cap=cap, threads=threads)[0]
    base_m = cut_norm_exact(K, cap=cap, threads=threads)[0]
    return abs(tri_w - tri_m), abs(base_w - base_m)


def check_corner_embedding(w: StepGraphon, lam, cap=DEFAULT_CAP, threads=None):
    lhs = graphon_cut_norm(corner_embed_symmetric(w, lam), cap=cap, threads=threads)[0]
    rhs = 2 * float(as_fraction(lam)) ** 2 * graphon_cut_norm(w, cap=cap, threads=threads)[0]
    return abs(lhs - rhs)


def run_invariant_suite(seed: int = 0, cap: int = DEFAULT_CAP, threads=None) -> ExperimentReport:
    rng = np.random.Generator(np.random.PCG64(seed))
    t0 = time.perf_counter()
    rows = [_check("closed_form", check_closed_form(cap=cap, threads=threads), EXACT_TOL)]

    fails = [0.0 if mask_identity_holds(_random_zero_diag(rng, int(rng.integers(1, 7))))
             else 1.0 for _ in range(100)]
    rows.append(_check("mask_identity_zero_diagonal", fails, 0.0))
    found = 0
    for _ in range(20):
        n = int(rng.integers(2, 7))
        found += not mask_identity_holds(rng.uniform(-1, 1, (n, n)))
    rows.append({"check": "mask_identity_counterexample", "instances": 20,
                 "violations": 0 if found else 1, "worst": found, "pass": found > 0})

    devs = []
    for _ in range(20):
        A, B, C, D = (rng.uniform(-1, 1, (3, 3)) for _ in range(4))
        lhs = kronecker(schur(A, B), schur(C, D)).entries
        rhs = schur(kronecker(A, C), kronecker(B, D)).entries
        devs.append(float(np.abs(lhs - rhs).max()))
    rows.append(_check("mixed_product", devs, EXACT_TOL))

    devs = [d for n in (2, 3) for d in check_tensor_graphon_equalities(n, cap=cap, threads=threads)]
    rows.append(_check("tensor_graphon_equalities", devs, EXACT_TOL))

    devs = []
    for lam in (Fraction(1, 2), Fraction(1, 4)):
        for _ in range(20):
            m = int(rng.integers(1, 7))
            devs.append(check_corner_embedding(StepGraphon(rng.uniform(-1, 1, (m, m))), lam, cap, threads))
    devs.append(check_corner_embedding(StepGraphon([[1.0]]), Fraction(1, 2), cap, threads))
    rows.append(_check("corner_embedding", devs, INEQ_TOL))

    slack = []
    for _ in range(200):
        w = StepGraphon(_random_zero_diag(rng, int(rng.integers(1, 9)), -2, 2, symmetric=True))
        c = graphon_cut_norm(w, cap=cap, threads=threads)[0]
        ct = graphon_cut_norm(triangular_cut_graphon(w), cap=cap, threads=threads)[0]
        slack.append(2 * math.sqrt(c) - ct)
    rows.append(_check("sqrt_bound", slack, -INEQ_TOL, larger_is_worse=False))

    slack = []
    for _ in range(50):
        m = int(rng.integers(1, 9))
        adj = (rng.uniform(0, 1, (m, m)) < 0.4).astype(float)
        adj = np.triu(adj, 1)
        w = StepGraphon(adj + adj.T)
        c = graphon_cut_norm(w, cap=cap, threads=threads)[0]
        ct = graphon_cut_norm(triangular_cut_graphon(w), cap=cap, threads=threads)[0]
        slack.append(0.5 * c - ct)
    rows.append(_check("nonnegative_halving", slack, -INEQ_TOL, larger_is_worse=False))

    devs = []
    for _ in range(20):
        w = StepGraphon(rng.uniform(-1, 1, (int(rng.integers(1, 5)),) * 2))
        k = int(rng.integers(2, 5))
        devs.append(abs(graphon_cut_norm(refine(w, k), cap=cap, threads=threads)[0]
                        - graphon_cut_norm(w, cap=cap, threads=threads)[0]))
    rows.append(_check("refinement", devs, EXACT_TOL))

    meta = _metadata(ExperimentConfig(cap=cap), seed=seed)
    return ExperimentReport("invariants", list(COLUMNS["invariants"]), rows, meta,
                            {"wall_clock_s": time.perf_counter() - t0})


# -- serialization -----------------------------------------------------------

def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "" if not math.isfinite(v) else repr(v)
    return str(v)


def _json_clean(v):
    if isinstance(v, dict):
        return {str(k): _json_clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_clean(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, Fraction):
        return str(v)
    return v


def format_report(r: ExperimentReport, fmt: str = "json", include_timing: bool = False) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(r.columns)
        for row in r.rows:
            writer.writerow([_csv_cell(row.get(c)) for c in r.columns])
        return buf.getvalue()
    if fmt == "json":
        obj = {"experiment": r.experiment, "columns": r.columns, "rows": r.rows,
               "metadata": r.metadata}
        if include_timing:
            obj["timing"] = r.timing
        return json.dumps(_json_clean(obj), indent=2, allow_nan=False) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; use json or csv")


def emit_report(r: ExperimentReport, fmt: str = "json", destination=None,
                include_timing: bool = False) -> None:
    """Write the report to ``destination`` (path, open file, or stdout for None/'-')."""
    text = format_report(r, fmt, include_timing)
    if destination is None or destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text)


def merge_reports(experiment: str, *reports: ExperimentReport) -> ExperimentReport:
    """Concatenate rows of reports sharing a column layout."""
    cols = reports[0].columns
    rows = [row for r in reports for row in r.rows]
    meta = dict(reports[0].metadata)
    return ExperimentReport(experiment, list(cols), rows, meta,
                            {"wall_clock_s": sum(r.timing.get("wall_clock_s", 0.0) for r in reports)})


__all__ = [
    "ExperimentConfig", "ExperimentReport", "run_growth", "run_inequality_suite",
    "run_invariant_suite", "summarize_inequalities", "emit_report", "format_report",
    "check_tensor_inequality", "tri_test_vector_norm",
]

"""Named verification suites over deterministic parameter grids.

Each suite expands to a list of :class:`Task` records (one identity at one
parameter point).  Tasks carry a contract:

* ``exact``     -- the residual must be identically zero when run in the
  exact backend (the default); under a floating backend the tolerance
  applies instead;
* ``certified`` -- the check involves certified truncation of infinite
  sums/products, always runs in the float backend, and passes when the
  residual is within tolerance.

Task execution is a pure function of the task, so suites can run in a
process pool; results stream in deterministic task order either way.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterator, List, Optional

from . import multivar, orthopoly, qseries, ratfun, uqsl2
from .errors import QRacahError
from .report import CheckReport, residual_string
from .scalar import QBase, as_exponent

DEFAULT_PS = (Fraction(1, 2), Fraction(2, 3))  # q = 1/4 and 4/9
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Task:
    suite: str
    check: str
    fn: str
    params: dict
    contract: str = "exact"  # "exact" | "certified"


@dataclass
class RunConfig:
    """Options shared by the front-end commands."""

    mode: str = "exact"
    p: Optional[Fraction] = None
    tolerance: Optional[float] = None
    n_max: Optional[int] = None
    trunc: Optional[int] = None
    jobs: int = 1
    max_terms: Optional[int] = None

    def ps(self):
        return (self.p,) if self.p is not None else DEFAULT_PS

    def tol(self) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOL

    def tail(self) -> qseries.TailBound:
        tol = min(self.tol() * 1e-3, 1e-12)
        return qseries.TailBound(tolerance=tol, max_terms=self.max_terms or 20000)


# ---------------------------------------------------------------------------
# check functions (all top-level so tasks can cross process boundaries)
# ---------------------------------------------------------------------------


def _qb(params, mode):
    return QBase(params["p"], mode)


def _tb(params):
    return qseries.TailBound(
        tolerance=params.get("tb_tol", 1e-12),
        max_terms=params.get("tb_max_terms", 20000),
    )


def chk_summation(mode, params):
    qb = _qb(params, mode)
    lhs, rhs = qseries.summation_pair_qracah(
        qb, params["N"], params["s"], params["t"], params["v"], params["x"], params["y"]
    )
    return lhs - rhs


def chk_relations(mode, params):
    rs = _repspec(params, mode)
    res = uqsl2.relation_residuals(rs)
    rows = rs.interior(1)
    return sum(m.abs_sum(rows) for m in res.values())


def chk_star(mode, params):
    rs = _repspec(params, mode)
    K, Ki, E, F = uqsl2.gens(rs)
    sgn = 1 if rs.kind == "su2" else -1
    pairs = [(K, K), (E, sgn * F), (F, sgn * E)]
    return sum(uqsl2.star_residual(rs, A, As).abs_sum() for A, As in pairs)


def chk_twist_rewrite(mode, params):
    rs = _repspec(params, mode)
    res = uqsl2.twist_rewrite_residual(rs, params["u"], params["v"], params["s"], params["t"])
    return res.abs_sum(rs.interior(2))


def chk_gevp_rewrite(mode, params):
    rs = _repspec(params, mode)
    return uqsl2.gevp_rewrite_residual(rs, params["s"]).abs_sum(rs.interior(2))


def chk_eigen(mode, params):
    rs = _repspec(params, mode)
    res = uqsl2.eigen_residual(rs, params["u"], params["s"], params["x"])
    rows = rs.interior(1)
    total = None
    for r in res[:rows]:
        total = abs(r) if total is None else total + abs(r)
    return 0 if total is None else total


def chk_prop33(mode, params):
    qb = _qb(params, mode)
    rp = ratfun.RrParams(params["s"], params["t"], params["v"], params["N"], qb)
    return ratfun.rr_closed(rp, params["x"], params["y"]) - ratfun.rr_inner(
        rp, params["x"], params["y"]
    )


def chk_rr_biorth(mode, params):
    qb = _qb(params, mode)
    rp = ratfun.RrParams(params["s"], params["t"], params["v"], params["N"], qb)
    return ratfun.rr_biorth_residual(rp, params["relation"], params["i"], params["j"])


def chk_rr_gevp(mode, params):
    qb = _qb(params, mode)
    rp = ratfun.RrParams(params["s"], params["t"], params["v"], params["N"], qb)
    return ratfun.rr_gevp_residual(rp, params["x"], params["y"])


def chk_kraw_transfer(mode, params):
    # single-site three-term transfer, both the diagonal symbol and the
    # twisted action, checked for every n at once
    qb = _qb(params, mode)
    acc = multivar.transfer_check_k2(qb, 1, [params["y"]], params["t"], params["v"], [params["N"]])
    acc += multivar.transfer_check_x(
        qb, 1, [params["y"]], params["t"], params["v"], params["s"], [params["N"]]
    )
    return acc


def chk_kraw_dyn(mode, params):
    qb = _qb(params, mode)
    N, y, t, v = params["N"], params["y"], params["t"], params["v"]
    kp = orthopoly.KrawParams(v, t, N, qb)
    acc = qb.zero()
    for direction in (2, -2):
        coeffs = orthopoly.kraw_dyn_coeffs(qb, N, y, t, direction)
        offsets = (-2, -1, 0) if direction == 2 else (0, 1, 2)
        shifted = orthopoly.KrawParams(v, _shift(t, direction), N, qb)
        for n in range(N + 1):
            lhs = qb.qpow(2 * n - N) * orthopoly.kraw(kp, n, y)
            rhs = qb.zero()
            for c, e in zip(coeffs, offsets):
                if 0 <= y + e <= N:
                    rhs += c * orthopoly.kraw(shifted, n, y + e)
                elif c != 0:
                    raise QRacahError("nonzero coefficient at out-of-range shift")
            acc += abs(lhs - rhs)
    return acc


def _shift(t, delta):
    return as_exponent(t) + delta


def chk_asc_transfer(mode, params):
    # single-site ASC transfer: diagonal symbol and twisted action on a
    # truncated window, interior rows
    qb = _qb(params, mode)
    k, y, t, v, s, T = (params["k"], params["y"], params["t"], params["v"],
                        params["s"], params["trunc"])
    ap = orthopoly.ASCParams(v, t, k, qb)
    rs = uqsl2.RepSpec.su11(k, T, qb)
    Y0s = uqsl2.twist_y(rs, 0, s, tilde=False)
    cm1, c0, c1 = orthopoly.asc_diff_coeffs(qb, k, y, t)
    dm1, d0, d1 = orthopoly.asc_d_coeffs(qb, k, y, t, v)
    vec = [orthopoly.asc(ap, n, y) for n in range(T + 1)]
    out = Y0s.apply(vec)
    acc = qb.zero()
    for n in range(T):
        lhs_k2 = qb.qpow(2 * n + as_exponent(k)) * vec[n]
        rhs_k2 = c0 * vec[n]
        rhs_y = (d0 + qb.brace(s)) * vec[n]
        if y > 0:
            val = orthopoly.asc(ap, n, y - 1)
            rhs_k2 += cm1 * val
            rhs_y += dm1 * val
        val = orthopoly.asc(ap, n, y + 1)
        rhs_k2 += c1 * val
        rhs_y += d1 * val
        acc += abs(lhs_k2 - rhs_k2) + abs(out[n] - rhs_y)
    return acc


def chk_asc_dyn(mode, params):
    qb = _qb(params, mode)
    k, y, t, v, T = params["k"], params["y"], params["t"], params["v"], params["trunc"]
    ap = orthopoly.ASCParams(v, t, k, qb)
    acc = qb.zero()
    for direction in (2, -2):
        coeffs = orthopoly.asc_dyn_coeffs(qb, k, y, t, direction)
        offsets = (-2, -1, 0) if direction == 2 else (0, 1, 2)
        shifted = orthopoly.ASCParams(v, _shift(t, direction), k, qb)
        for n in range(T + 1):
            lhs = qb.qpow(2 * n + as_exponent(k)) * orthopoly.asc(ap, n, y)
            rhs = qb.zero()
            for c, e in zip(coeffs, offsets):
                if y + e >= 0:
                    rhs += c * orthopoly.asc(shifted, n, y + e)
                elif c != 0:
                    raise QRacahError("nonzero coefficient at out-of-range shift")
            acc += abs(lhs - rhs)
    return acc


def chk_nested_eigen(mode, params):
    qb = _qb(params, mode)
    return multivar.nested_eigen_residual(
        qb,
        params["side"],
        params["j"],
        params["v"],
        params["base"],
        params["sizes"],
        params["ys"],
        su11=params.get("su11", False),
        trunc=params.get("trunc"),
    )


def chk_multi_transfer(mode, params):
    qb = _qb(params, mode)
    acc = multivar.transfer_check_k2(
        qb, params["j"], params["ys"], params["t"], params["v"], params["Ns"]
    )
    acc += multivar.transfer_check_x(
        qb, params["j"], params["ys"], params["t"], params["v"], params["sigma"], params["Ns"]
    )
    return acc


def chk_multi_transfer_asc(mode, params):
    qb = _qb(params, mode)
    acc = multivar.transfer_check_k2_asc(
        qb, params["j"], params["ys"], params["t"], params["v"], params["ks"], params["trunc"]
    )
    acc += multivar.transfer_check_y(
        qb, params["j"], params["ys"], params["t"], params["v"], params["sigma"],
        params["ks"], params["trunc"]
    )
    return acc


def chk_multi_gevp(mode, params):
    qb = _qb(params, mode)
    return multivar.multi_gevp_residual(
        qb, params["j"], params["xs"], params["ys"],
        params["s"], params["t"], params["v"], params["Ns"]
    )


def chk_multi_gevp_asc(mode, params):
    qb = _qb(params, mode)
    return multivar.multi_gevp_residual_asc(
        qb, params["j"], params["xs"], params["ys"],
        params["s"], params["t"], params["v"], params["ks"], _tb(params)
    )


def chk_cor43(mode, params):
    # scale-normalized: the function values grow without bound across the
    # grid while the certificates control relative precision
    qb = _qb(params, mode)
    pp = ratfun.PrParams(params["s"], params["t"], params["v"], params["k"], qb, _tb(params))
    inner = ratfun.pr_inner(pp, params["x"], params["y"])
    closed = ratfun.pr_closed(pp, params["x"], params["y"])
    return (closed - inner) / (1 + abs(inner))


def chk_pr_biorth(mode, params):
    # normalized by the diagonal target 1/W on diagonal entries
    qb = _qb(params, mode)
    tb = _tb(params)
    pp = ratfun.PrParams(params["s"], params["t"], params["v"], params["k"], qb, tb)
    raw = ratfun.pr_biorth_residual(pp, params["relation"], params["i"], params["j"])
    if params["i"] == params["j"]:
        diag_s = params["t"] if params["relation"] == "x" else params["s"]
        scale = abs(1 / orthopoly.asc_W(qb, diag_s, params["k"], params["i"], tb))
        return raw / (1 + scale)
    return raw


def chk_pr_gevp(mode, params):
    qb = _qb(params, mode)
    pp = ratfun.PrParams(params["s"], params["t"], params["v"], params["k"], qb, _tb(params))
    return ratfun.pr_gevp_residual(pp, params["x"], params["y"])


def _repspec(params, mode):
    qb = _qb(params, mode)
    if "N" in params:
        return uqsl2.RepSpec.su2(params["N"], qb)
    return uqsl2.RepSpec.su11(params["k"], params["trunc"], qb)


CHECKS = {
    "summation": chk_summation,
    "relations": chk_relations,
    "star": chk_star,
    "twist_rewrite": chk_twist_rewrite,
    "gevp_rewrite": chk_gevp_rewrite,
    "eigen": chk_eigen,
    "prop33": chk_prop33,
    "rr_biorth": chk_rr_biorth,
    "rr_gevp": chk_rr_gevp,
    "kraw_transfer": chk_kraw_transfer,
    "kraw_dyn": chk_kraw_dyn,
    "asc_transfer": chk_asc_transfer,
    "asc_dyn": chk_asc_dyn,
    "nested_eigen": chk_nested_eigen,
    "multi_transfer": chk_multi_transfer,
    "multi_transfer_asc": chk_multi_transfer_asc,
    "multi_gevp": chk_multi_gevp,
    "multi_gevp_asc": chk_multi_gevp_asc,
    "cor43": chk_cor43,
    "pr_biorth": chk_pr_biorth,
    "pr_gevp": chk_pr_gevp,
}


# ---------------------------------------------------------------------------
# suite builders
# ---------------------------------------------------------------------------

_STV = ((0, 0, 0), (1, 0, 0), (1, 2, 1), (2, 1, -1), (0, 1, -2))
_UVST = ((0, 0, 0, 0), (1, 0, 2, 1), (0, 1, 1, 2), (2, 1, 0, 2))


def _point(p, **kw):
    kw["p"] = p
    return kw


def suite_lemma21(cfg: RunConfig) -> List[Task]:
    n_max = min(cfg.n_max or 4, 4)
    tasks = []
    for p in cfg.ps():
        for N in range(n_max + 1):
            for s, t, v in _STV:
                for x in range(N + 1):
                    for y in range(N + 1):
                        # the product side shares the closed forms' pole locus
                        if not ratfun.rr_valid(
                            ratfun.RrParams(s, t, v, N, QBase(p)), x, y
                        ):
                            continue
                        tasks.append(Task(
                            "lemma2.1", f"sum_identity[N={N},s={s},t={t},v={v},x={x},y={y}]",
                            "summation", _point(p, N=N, s=s, t=t, v=v, x=x, y=y)))
    return tasks


def suite_relations(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 4, 6) + 1):
            tasks.append(Task("relations", f"su2[N={N}]", "relations", _point(p, N=N)))
        for k in (1, 2):
            tasks.append(Task(
                "relations", f"su11[k={k}]", "relations",
                _point(p, k=k, trunc=cfg.trunc or 10)))
    return tasks


def suite_star(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 4, 6) + 1):
            tasks.append(Task("star", f"su2[N={N}]", "star", _point(p, N=N)))
        for k in (1, 2):
            tasks.append(Task(
                "star", f"su11[k={k}]", "star", _point(p, k=k, trunc=cfg.trunc or 10)))
    return tasks


def suite_lemma31(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 5, 5) + 1):
            for u, v, s, t in _UVST:
                tasks.append(Task(
                    "lemma3.1", f"su2[N={N},u={u},v={v},s={s},t={t}]",
                    "twist_rewrite", _point(p, N=N, u=u, v=v, s=s, t=t)))
        tasks.append(Task("lemma3.1", "gevp_rewrite_su2[N=4,s=2]",
                          "gevp_rewrite", _point(p, N=4, s=2)))
    return tasks


def suite_cor41(cfg: RunConfig) -> List[Task]:
    tasks = []
    trunc = cfg.trunc or 10
    for p in cfg.ps():
        for k in (1, 2):
            for u, v, s, t in _UVST:
                tasks.append(Task(
                    "cor4.1", f"su11[k={k},u={u},v={v},s={s},t={t}]",
                    "twist_rewrite", _point(p, k=k, trunc=trunc, u=u, v=v, s=s, t=t)))
            tasks.append(Task("cor4.1", f"gevp_rewrite_su11[k={k},s=1]",
                              "gevp_rewrite", _point(p, k=k, trunc=trunc, s=1)))
    return tasks


def suite_ev3(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 4, 4) + 1):
            for u in (0, 1):
                for s in (0, 1, 2):
                    for x in range(N + 1):
                        tasks.append(Task(
                            "ev3.x", f"su2[N={N},u={u},s={s},x={x}]",
                            "eigen", _point(p, N=N, u=u, s=s, x=x)))
    return tasks


def suite_ev4(cfg: RunConfig) -> List[Task]:
    tasks = []
    trunc = cfg.trunc or 12
    for p in cfg.ps():
        for k in (1, 2):
            for u in (0, 1):
                for s in (0, 1):
                    for x in (0, 1, 2):
                        tasks.append(Task(
                            "ev4.x", f"su11[k={k},u={u},s={s},x={x}]",
                            "eigen", _point(p, k=k, trunc=trunc, u=u, s=s, x=x)))
    return tasks


def suite_prop33(cfg: RunConfig) -> List[Task]:
    tasks = []
    n_max = min(cfg.n_max or 4, 5)
    for p in cfg.ps():
        for N in range(n_max + 1):
            for s, t, v in _STV:
                for x in range(N + 1):
                    for y in range(N + 1):
                        qb = QBase(p)
                        if not ratfun.rr_valid(ratfun.RrParams(s, t, v, N, qb), x, y):
                            continue
                        tasks.append(Task(
                            "prop3.3", f"closed_vs_inner[N={N},s={s},t={t},v={v},x={x},y={y}]",
                            "prop33", _point(p, N=N, s=s, t=t, v=v, x=x, y=y)))
    return tasks


def suite_prop34(cfg: RunConfig) -> List[Task]:
    tasks = []
    n_max = min(cfg.n_max or 3, 4)
    for p in cfg.ps()[:1]:
        for N in range(n_max + 1):
            for s, t in ((0, 0), (1, 2), (2, 1)):
                for v in (-2, -1, 0, 1):
                    for relation in ("x", "y"):
                        for i in range(N + 1):
                            for jj in range(N + 1):
                                tasks.append(Task(
                                    "prop3.4",
                                    f"biorth_{relation}[N={N},s={s},t={t},v={v},{i},{jj}]",
                                    "rr_biorth",
                                    _point(p, N=N, s=s, t=t, v=v, relation=relation, i=i, j=jj)))
    return tasks


def suite_lemma35(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 3, 4) + 1):
            for s, t, v in _STV:
                for y in range(N + 1):
                    tasks.append(Task(
                        "lemma3.5", f"transfer[N={N},s={s},t={t},v={v},y={y}]",
                        "kraw_transfer", _point(p, N=N, s=s, t=t, v=v, y=y)))
    return tasks


def suite_lemma38(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(1, min(cfg.n_max or 3, 4) + 1):
            for t in (0, 1, 2):
                for v in (0, 1):
                    for y in range(N + 1):
                        tasks.append(Task(
                            "lemma3.8", f"dyn[N={N},t={t},v={v},y={y}]",
                            "kraw_dyn", _point(p, N=N, t=t, v=v, y=y)))
    return tasks


def suite_cor36(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps():
        for N in range(min(cfg.n_max or 3, 4) + 1):
            for s, t, v in _STV:
                for x in range(N + 1):
                    for y in range(N + 1):
                        tasks.append(Task(
                            "cor3.6", f"gevp[N={N},s={s},t={t},v={v},x={x},y={y}]",
                            "rr_gevp", _point(p, N=N, s=s, t=t, v=v, x=x, y=y)))
    return tasks


def suite_prop37(cfg: RunConfig) -> List[Task]:
    tasks = []
    chains = ([1], [2], [1, 1], [2, 2], [1, 1, 1])
    for p in cfg.ps()[:1]:
        for sizes in chains:
            M = len(sizes)
            for j in range(1, M + 1):
                for v, base in ((0, 1), (1, 0)):
                    for ys in iproduct(*[range(N + 1) for N in sizes]):
                        for side in ("L", "R"):
                            tasks.append(Task(
                                "prop3.7",
                                f"nested_ev_{side}[Ns={sizes},j={j},v={v},t={base},ys={list(ys)}]",
                                "nested_eigen",
                                _point(p, side=side, j=j, v=v, base=base,
                                       sizes=tuple(sizes), ys=ys)))
    return tasks


def suite_lemma39(cfg: RunConfig) -> List[Task]:
    tasks = []
    chains = ([2], [2, 2], [1, 1, 1])
    for p in cfg.ps()[:1]:
        for sizes in chains:
            M = len(sizes)
            for j in range(1, M + 1):
                for t, v, sigma in ((0, 1, 1), (1, 0, 2)):
                    for ys in iproduct(*[range(N + 1) for N in sizes]):
                        tasks.append(Task(
                            "lemma3.9",
                            f"transfer[Ns={sizes},j={j},t={t},v={v},ys={list(ys)}]",
                            "multi_transfer",
                            _point(p, j=j, ys=ys, t=t, v=v, sigma=sigma, Ns=tuple(sizes))))
    return tasks


def suite_cor310(cfg: RunConfig) -> List[Task]:
    tasks = []
    chains = ([2, 2], [1, 1, 1])
    for p in cfg.ps()[:1]:
        for sizes in chains:
            M = len(sizes)
            for j in range(1, M + 1):
                for s, t, v in ((1, 0, 1), (0, 1, 0)):
                    grid = list(iproduct(*[range(N + 1) for N in sizes]))
                    for xs in grid:
                        for ys in grid:
                            tasks.append(Task(
                                "cor3.10",
                                f"gevp[Ns={sizes},j={j},s={s},t={t},v={v},xs={list(xs)},ys={list(ys)}]",
                                "multi_gevp",
                                _point(p, j=j, xs=xs, ys=ys, s=s, t=t, v=v, Ns=tuple(sizes))))
    return tasks


def suite_lemma45(cfg: RunConfig) -> List[Task]:
    tasks = []
    trunc = cfg.trunc or 8
    for p in cfg.ps():
        for k in (1, 2):
            for s, t, v in _STV:
                for y in range(4):
                    tasks.append(Task(
                        "lemma4.5", f"transfer[k={k},s={s},t={t},v={v},y={y}]",
                        "asc_transfer", _point(p, k=k, s=s, t=t, v=v, y=y, trunc=trunc)))
    return tasks


def suite_lemma48(cfg: RunConfig) -> List[Task]:
    tasks = []
    trunc = cfg.trunc or 8
    for p in cfg.ps()[:1]:
        for k in (1, 2):
            for t in (1, 2, 3):
                for v in (0, 1):
                    for y in range(4):
                        tasks.append(Task(
                            "lemma4.8", f"dyn[k={k},t={t},v={v},y={y}]",
                            "asc_dyn", _point(p, k=k, t=t, v=v, y=y, trunc=trunc)))
        for j in (1, 2):
            for ys in iproduct(range(3), range(3)):
                tasks.append(Task(
                    "lemma4.8", f"transfer[ks=(1,1),j={j},ys={list(ys)}]",
                    "multi_transfer_asc",
                    _point(p, j=j, ys=ys, t=0, v=0, sigma=1, ks=(1, 1),
                           trunc=min(trunc, 6))))
    return tasks


def suite_prop46(cfg: RunConfig) -> List[Task]:
    tasks = []
    trunc = cfg.trunc or 8
    for p in cfg.ps()[:1]:
        for ks in ((1, 1), (1, 2)):
            M = len(ks)
            for j in range(1, M + 1):
                for v, base in ((0, 1), (1, 0)):
                    for ys in iproduct(range(2), range(2)):
                        for side in ("L", "R"):
                            tasks.append(Task(
                                "prop4.6",
                                f"nested_ev_{side}[ks={ks},j={j},v={v},t={base},ys={list(ys)}]",
                                "nested_eigen",
                                _point(p, side=side, j=j, v=v, base=base,
                                       sizes=ks, ys=ys, su11=True, trunc=trunc)))
    return tasks


def suite_cor43(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps()[:1]:
        for k in (1, 2):
            for s, t, v in ((0, 0, -1), (1, 1, 0), (1, 2, 1)):
                for x in range(4):
                    for y in range(4):
                        if not ratfun.pr_valid(
                            ratfun.PrParams(s, t, v, k, QBase(float(p), "float")), x, y
                        ):
                            continue
                        tasks.append(Task(
                            "cor4.3", f"closed_vs_inner[k={k},s={s},t={t},v={v},x={x},y={y}]",
                            "cor43", _point(p, k=k, s=s, t=t, v=v, x=x, y=y,
                                            tb_tol=cfg.tail().tolerance,
                                            tb_max_terms=cfg.tail().max_terms),
                            contract="certified"))
    return tasks


def suite_prop44(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps()[:1]:
        for k, s, t, v in ((1, 0, 0, -1), (2, 1, 1, 0)):
            for relation in ("x", "y"):
                for i in range(3):
                    for jj in range(3):
                        tasks.append(Task(
                            "prop4.4",
                            f"biorth_{relation}[k={k},s={s},t={t},v={v},{i},{jj}]",
                            "pr_biorth",
                            _point(p, k=k, s=s, t=t, v=v, relation=relation, i=i, j=jj,
                                   tb_tol=cfg.tail().tolerance,
                                   tb_max_terms=cfg.tail().max_terms),
                            contract="certified"))
    return tasks


def suite_prop45(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps()[:1]:
        for k, s, t, v in ((1, 0, 1, 0), (2, 1, 0, -1)):
            for x in range(4):
                for y in range(4):
                    tasks.append(Task(
                        "prop4.5", f"gevp[k={k},s={s},t={t},v={v},x={x},y={y}]",
                        "pr_gevp", _point(p, k=k, s=s, t=t, v=v, x=x, y=y,
                                          tb_tol=cfg.tail().tolerance,
                                          tb_max_terms=cfg.tail().max_terms),
                        contract="certified"))
    return tasks


def suite_cor49(cfg: RunConfig) -> List[Task]:
    tasks = []
    for p in cfg.ps()[:1]:
        ks = (1, 1)
        for j in (1, 2):
            for s, t, v in ((1, 0, 0), (0, 1, -1)):
                for xs in iproduct(range(2), range(2)):
                    for ys in iproduct(range(2), range(2)):
                        tasks.append(Task(
                            "cor4.9",
                            f"gevp[ks={ks},j={j},s={s},t={t},v={v},xs={list(xs)},ys={list(ys)}]",
                            "multi_gevp_asc",
                            _point(p, j=j, xs=xs, ys=ys, s=s, t=t, v=v, ks=ks,
                                   tb_tol=cfg.tail().tolerance,
                                   tb_max_terms=cfg.tail().max_terms),
                            contract="certified"))
    return tasks


SUITES = {
    "lemma2.1": suite_lemma21,
    "relations": suite_relations,
    "star": suite_star,
    "lemma3.1": suite_lemma31,
    "ev3.x": suite_ev3,
    "prop3.3": suite_prop33,
    "prop3.4": suite_prop34,
    "lemma3.5": suite_lemma35,
    "cor3.6": suite_cor36,
    "prop3.7": suite_prop37,
    "lemma3.8": suite_lemma38,
    "lemma3.9": suite_lemma39,
    "cor3.10": suite_cor310,
    "cor4.1": suite_cor41,
    "ev4.x": suite_ev4,
    "cor4.3": suite_cor43,
    "prop4.4": suite_prop44,
    "lemma4.5": suite_lemma45,
    "prop4.5": suite_prop45,
    "prop4.6": suite_prop46,
    "lemma4.8": suite_lemma48,
    "cor4.9": suite_cor49,
}

SUITE_IDS = tuple(SUITES) + ("all",)


def build_tasks(suite_id: str, cfg: RunConfig) -> List[Task]:
    if suite_id == "all":
        tasks = []
        for sid in SUITES:
            tasks.extend(SUITES[sid](cfg))
        return tasks
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; choose from {sorted(SUITE_IDS)}")
    return SUITES[suite_id](cfg)


def run_task(task: Task, mode: str, tol: float) -> CheckReport:
    """Execute one task; errors become failing reports, never crashes.

    Certified tasks run their scalar arithmetic in the exact backend (so the
    only error is the certified truncation, never float cancellation) and
    are labeled "certified": they pass by tolerance, not by exact zero.
    """
    certified = task.contract == "certified"
    scalar_mode = "exact" if certified else mode
    label = "certified" if certified else mode
    start = time.perf_counter()
    try:
        residual = CHECKS[task.fn](scalar_mode, task.params)
        err = ""
    except QRacahError as exc:
        residual = None
        err = f"{type(exc).__name__}: {exc}"
    elapsed = (time.perf_counter() - start) * 1000.0
    if residual is None:
        passed = False
        res_str = "error"
    else:
        if label == "exact":
            passed = residual == 0
            res_str = residual_string(residual)
        else:
            passed = float(abs(residual)) <= tol
            # tolerance-contract residuals serialize as plain decimals
            res_str = residual_string(
                residual if isinstance(residual, complex) else float(residual)
            )
    return CheckReport(
        suite=task.suite,
        check=task.check,
        params=task.params,
        residual=res_str,
        passed=passed,
        backend=label,
        elapsed_ms=elapsed,
        error=err,
    )


def _run_task_star(args):
    return run_task(*args)


def run_suite(suite_id: str, cfg: RunConfig) -> Iterator[CheckReport]:
    """Execute a suite, yielding reports in deterministic task order."""
    tasks = build_tasks(suite_id, cfg)
    tol = cfg.tol()
    if cfg.jobs <= 1:
        for task in tasks:
            yield run_task(task, cfg.mode, tol)
        return
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        args = [(task, cfg.mode, tol) for task in tasks]
        for report in pool.map(_run_task_star, args, chunksize=8):
            yield report

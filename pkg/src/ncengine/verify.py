"""Independent numerical oracles and paper-vs-exact discrepancy reports.

Every check produces :class:`DiscrepancyReport` rows. A row is either
*asserted* (it has a tolerance and a pass/fail verdict) or *reported only*
(a documented deviation that never fails a run). ``strict=True`` on a check
turns the first failed assertion into :class:`VerificationFailed`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .cycles import (
    OttoSpec,
    StirlingSpec,
    StrokeLedger,
    carnot_efficiency,
    otto_cycle,
    stirling_cycle,
)
from .errors import (
    DomainConditionViolated,
    EngineError,
    InvalidParameter,
    VerificationFailed,
    ZeroHeatInput,
)
from .spectra import ReducedParams, SpaceConfig, mode_spectrum
from .thermo import (
    Mode,
    PartitionModel,
    log_partition_exact,
    log_partition_paper,
    paper_condition,
    partition_bruteforce,
)

REL_FLOOR = 1e-300
FD_STEP = 1e-5
FD_RTOL = 1e-6
FIRST_LAW_ATOL = 1e-10
MODE_EQUIV_RTOL = 1e-10
REDUCTION_RTOL = 1e-10


@dataclass(frozen=True)
class DiscrepancyReport:
    check: str
    quantity: str
    context: dict
    paper_value: float
    exact_value: float
    tolerance: float | None = None
    metric: str = "rel"
    flags: dict = field(default_factory=dict)

    @property
    def abs_diff(self) -> float:
        return abs(self.paper_value - self.exact_value)

    @property
    def rel_diff(self) -> float:
        return self.abs_diff / max(abs(self.exact_value), REL_FLOOR)

    @property
    def asserted(self) -> bool:
        return self.tolerance is not None

    @property
    def passed(self) -> bool | None:
        if not self.asserted:
            return None
        value = self.rel_diff if self.metric == "rel" else self.abs_diff
        # nan never passes
        return bool(value <= self.tolerance)

    def as_row(self) -> dict:
        return {
            "check": self.check,
            "quantity": self.quantity,
            "context": ";".join(f"{k}={_fmt(v)}" for k, v in sorted(self.context.items())),
            "paper_value": self.paper_value,
            "exact_value": self.exact_value,
            "abs_diff": self.abs_diff,
            "rel_diff": self.rel_diff,
            "metric": self.metric if self.asserted else "",
            "tolerance": self.tolerance if self.asserted else "",
            "status": {None: "reported", True: "pass", False: "FAIL"}[self.passed],
            "flags": ";".join(f"{k}={_fmt(v)}" for k, v in sorted(self.flags.items())),
        }


@dataclass(frozen=True)
class _MarginReport(DiscrepancyReport):
    """Passes when paper_value strictly exceeds exact_value."""

    @property
    def passed(self) -> bool | None:
        return bool(self.paper_value - self.exact_value > self.tolerance)


REPORT_FIELDS = (
    "check", "quantity", "context", "paper_value", "exact_value", "abs_diff",
    "rel_diff", "metric", "tolerance", "status", "flags",
)


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _enforce(reports, strict):
    if strict:
        for r in reports:
            if r.passed is False:
                raise VerificationFailed(
                    f"{r.check} failed on {r.quantity}: {r.as_row()['context']} "
                    f"({r.metric} diff {r.rel_diff if r.metric == 'rel' else r.abs_diff:.3e} "
                    f"> {r.tolerance:.1e})",
                    r,
                )
    return reports


def _space_context(space: SpaceConfig, params: ReducedParams, beta=None) -> dict:
    ctx = {**space.as_dict(), "omega": params.omega, "zeta": params.zeta, "K": params.K}
    if beta is not None:
        ctx["beta"] = beta
    return ctx


def check_partition(space: SpaceConfig, params: ReducedParams, beta: float,
                    n_max: int = 200, strict: bool = True) -> list[DiscrepancyReport]:
    """Closed form vs exact resummation (reported) and exact vs brute force (asserted).

    The exact-vs-brute-force row uses the brute-force tail bound as an
    absolute tolerance.
    """
    spec = mode_spectrum(space, params)
    ctx = _space_context(space, params, beta)
    exact = math.exp(log_partition_exact(spec, beta))
    brute = partition_bruteforce(spec, beta, n_max)

    flags = {"condition": paper_condition(space, params.omega, params.zeta, params.K, beta)}
    try:
        paper = math.exp(log_partition_paper(space, params.omega, params.zeta, params.K, beta))
        flags["valid"] = True
    except DomainConditionViolated as exc:
        paper = math.nan
        flags["valid"] = False
        flags["reason"] = type(exc).__name__
    flags["beta_omega_ezeta"] = beta * params.omega * math.exp(params.zeta)

    reports = [
        DiscrepancyReport("check_partition", "Z paper vs exact", ctx, paper, exact, flags=flags),
        DiscrepancyReport("check_partition", "Z exact vs bruteforce", {**ctx, "n_max": n_max},
                          brute.value, exact, tolerance=brute.tail_bound, metric="abs"),
    ]
    return _enforce(reports, strict)


def finite_difference_energy(model: PartitionModel, beta: float, step: float = FD_STEP) -> float:
    """Central difference -[ln Z(beta+h) - ln Z(beta-h)] / 2h."""
    if not beta - step > 0:
        raise DomainConditionViolated(f"stencil [{beta - step}, {beta + step}] leaves beta > 0")
    try:
        return -(model.log_z(beta + step) - model.log_z(beta - step)) / (2.0 * step)
    except InvalidParameter as exc:
        raise DomainConditionViolated(str(exc)) from exc


def check_internal_energy(model: PartitionModel, beta: float, step: float = FD_STEP,
                          rtol: float = FD_RTOL, strict: bool = True) -> DiscrepancyReport:
    """Analytic U against the finite-difference oracle.

    ``paper_value`` holds the analytic derivative, ``exact_value`` the
    finite difference.
    """
    analytic = model.internal_energy(beta)
    fd = finite_difference_energy(model, beta, step)
    if model.mode is Mode.EXACT:
        s = model.spectrum
        ctx = {"model": "exact", "f1": s.f1, "f2": s.f2, "e0": s.e0, "beta": beta}
    else:
        ctx = {"model": "paper", **_space_context(model.space, model.params, beta)}
    ctx["step"] = step
    report = DiscrepancyReport("check_internal_energy", "U analytic vs finite difference",
                               ctx, analytic, fd, tolerance=rtol)
    return _enforce([report], strict)[0]


def check_first_law(ledger: StrokeLedger) -> float:
    """|W - sum of stroke heats|, summed without cancellation loss."""
    return abs(ledger.w_total - math.fsum((ledger.q_AB, ledger.q_BC, ledger.q_CD, ledger.q_DA)))


def stirling_work_from_free_energy(spec: StirlingSpec) -> float:
    """Exact-mode Stirling work via isothermal free-energy drops.

    Isochores exchange no work, so W = [F(A) - F(B)] + [F(C) - F(D)]. This
    route never touches entropies or stroke heats.
    """
    if spec.mode is not Mode.EXACT:
        raise InvalidParameter("free-energy work oracle applies to exact mode only")

    def F(omega, beta):
        s = mode_spectrum(spec.space, spec.params(omega))
        return -log_partition_exact(s, beta) / beta

    bh, bc = spec.baths.beta_hot, spec.baths.beta_cold
    return (F(spec.omega_A, bh) - F(spec.omega_B, bh)) + (F(spec.omega_B, bc) - F(spec.omega_A, bc))


def check_stirling_first_law(spec: StirlingSpec, strict: bool = True) -> list[DiscrepancyReport]:
    """Ledger closure and agreement with the free-energy work oracle.

    Asserted in exact mode; reported only in paper mode.
    """
    asserted = spec.mode is Mode.EXACT
    ctx = {**spec.space.as_dict(), "mode": spec.mode.value, "omega_A": spec.omega_A,
           "omega_B": spec.omega_B, "zeta": spec.zeta, "K": spec.K,
           "t_hot": spec.baths.t_hot, "t_cold": spec.baths.t_cold}
    try:
        ledger = stirling_cycle(spec).ledger
    except ZeroHeatInput as exc:
        ledger = exc.result.ledger
    residual = check_first_law(ledger)
    reports = [DiscrepancyReport("check_first_law", "|W - sum Q|", ctx, residual, 0.0,
                                 tolerance=FIRST_LAW_ATOL if asserted else None, metric="abs")]
    if asserted:
        reports.append(DiscrepancyReport(
            "check_first_law", "W ledger vs free-energy route", ctx, ledger.w_total,
            stirling_work_from_free_energy(spec), tolerance=FIRST_LAW_ATOL, metric="abs"))
    return _enforce(reports, strict)


def check_otto_mode_equivalence(spec: OttoSpec, rtol: float = MODE_EQUIV_RTOL,
                                strict: bool = True) -> list[DiscrepancyReport]:
    """Paper coth sums vs Bose-occupation bookkeeping for one Otto spec."""
    paper = otto_cycle(replace(spec, mode=Mode.PAPER))
    exact = otto_cycle(replace(spec, mode=Mode.EXACT))
    ctx = {**spec.space.as_dict(), "omega_hot": spec.omega_hot, "omega_cold": spec.omega_cold,
           "zeta": spec.zeta, "K": spec.K, "m": spec.m,
           "t_hot": spec.baths.t_hot, "t_cold": spec.baths.t_cold}
    reports = [
        DiscrepancyReport("check_otto_mode_equivalence", name, ctx,
                          getattr(paper, attr), getattr(exact, attr), tolerance=rtol)
        for name, attr in (("Q_in", "heat_in"), ("W", "work"), ("efficiency", "efficiency"))
    ]
    return _enforce(reports, strict)


def check_reduction(params: ReducedParams, omega_pair_otto=(4.0, 3.0),
                    omega_pair_stirling=(4.0, 2.0), baths=None,
                    rtol: float = REDUCTION_RTOL, strict: bool = True) -> list[DiscrepancyReport]:
    """GNC with gamma = xi = 0 against the commutative results."""
    comm, gnc = SpaceConfig.commutative(), SpaceConfig.gnc(0.0, 0.0)
    kw = {"zeta": params.zeta, "K": params.K, "m": params.m}
    if baths is not None:
        kw["baths"] = baths
    ctx = {"zeta": params.zeta, "K": params.K, "m": params.m, "omega": params.omega}
    reports = []
    sc, sg = mode_spectrum(comm, params), mode_spectrum(gnc, params)
    for name in ("f1", "f2", "e0"):
        reports.append(DiscrepancyReport("check_reduction", f"spectrum {name}", ctx,
                                         getattr(sg, name), getattr(sc, name), tolerance=rtol))
    wh, wc = omega_pair_otto
    oc = otto_cycle(OttoSpec(comm, wh, wc, **kw))
    og = otto_cycle(OttoSpec(gnc, wh, wc, **kw))
    wa, wb = omega_pair_stirling
    stc = stirling_cycle(StirlingSpec(comm, wa, wb, mode=Mode.EXACT, **kw))
    stg = stirling_cycle(StirlingSpec(gnc, wa, wb, mode=Mode.EXACT, **kw))
    for engine, g, c in (("otto", og, oc), ("stirling", stg, stc)):
        for attr in ("heat_in", "work", "efficiency"):
            reports.append(DiscrepancyReport("check_reduction", f"{engine} {attr}", ctx,
                                             getattr(g, attr), getattr(c, attr), tolerance=rtol))
    return _enforce(reports, strict)


def check_carnot(result, strict: bool = True) -> DiscrepancyReport:
    """Asserts efficiency <= Carnot for an exact-mode result (metric: excess over the bound)."""
    ctx = {"engine": result.engine, **result.space.as_dict(), "mode": result.mode.value}
    excess = max(result.efficiency - result.carnot, 0.0)
    report = DiscrepancyReport("check_carnot", "efficiency above Carnot", ctx, excess, 0.0,
                               tolerance=0.0, metric="abs",
                               flags={"efficiency": result.efficiency, "carnot": result.carnot})
    return _enforce([report], strict)[0]


def check_stirling_beats_otto(zeta: float = 2.0, K: float = 0.25, baths=None,
                              strict: bool = True) -> DiscrepancyReport:
    """Exact-mode Stirling (omega 4 -> 2) vs Otto (omega 4 -> 3), commutative medium.

    ``paper_value`` is the Stirling efficiency, ``exact_value`` the Otto one;
    the metric is the Otto-minus-Stirling margin, asserted to be negative.
    """
    kw = {"zeta": zeta, "K": K}
    if baths is not None:
        kw["baths"] = baths
    st = stirling_cycle(StirlingSpec(omega_A=4.0, omega_B=2.0, mode=Mode.EXACT, **kw))
    ot = otto_cycle(OttoSpec(omega_hot=4.0, omega_cold=3.0, mode=Mode.EXACT, **kw))
    report = _MarginReport("check_stirling_beats_otto", "eta_stirling vs eta_otto",
                           {"zeta": zeta, "K": K}, st.efficiency, ot.efficiency,
                           tolerance=0.0, metric="margin")
    return _enforce([report], strict)[0]


def check_nc_paper_theta_independence(thetas, omega_A=4.0, omega_B=2.0, K=0.25, zeta=2.0,
                                      baths=None, strict: bool = True) -> list[DiscrepancyReport]:
    """ln(Z(omega_A)/Z(omega_B)) of the NC closed form does not depend on theta.

    One row per theta compares the log-ratio with its value at the first
    theta (asserted); the paper-mode Stirling efficiency is reported
    alongside, or marked undefined.
    """
    spec0 = StirlingSpec(SpaceConfig.nc(thetas[0]), omega_A, omega_B, zeta=zeta, K=K,
                         mode=Mode.PAPER, **({"baths": baths} if baths else {}))
    bh = spec0.baths.beta_hot

    def log_ratio(theta):
        sp = SpaceConfig.nc(theta)
        return (log_partition_paper(sp, omega_A, zeta, K, bh)
                - log_partition_paper(sp, omega_B, zeta, K, bh))

    ref = log_ratio(thetas[0])
    reports = []
    for theta in thetas:
        spec = replace(spec0, space=SpaceConfig.nc(theta))
        flags = {}
        try:
            res = stirling_cycle(spec)
            flags["efficiency"] = res.efficiency
            flags["heat_in"] = res.heat_in
        except ZeroHeatInput as exc:
            flags["efficiency"] = "undefined"
            flags["heat_in"] = exc.result.heat_in
        except EngineError as exc:
            flags["efficiency"] = type(exc).__name__
        reports.append(DiscrepancyReport(
            "check_nc_paper_theta_independence", "ln(Z_A/Z_B) at beta_hot",
            {"theta": theta, "omega_A": omega_A, "omega_B": omega_B, "K": K},
            log_ratio(theta), ref, tolerance=1e-12, metric="abs", flags=flags))
    return _enforce(reports, strict)


def verification_suite(base: dict | None = None, zetas=None, thetas=None, gnc_points=None,
                       step: float = FD_STEP, n_max: int = 200,
                       strict: bool = False) -> list[DiscrepancyReport]:
    """Run every check over a small parameter grid.

    ``base`` holds omega_hot, omega_cold (Otto), omega_A, omega_B (Stirling),
    t_hot, t_cold, K and m. With ``strict=False`` failures are returned as
    FAIL rows instead of raising.
    """
    from .thermo import BathPair

    b = {"omega_hot": 4.0, "omega_cold": 3.0, "omega_A": 4.0, "omega_B": 2.0,
         "t_hot": 2.0, "t_cold": 1.0, "K": 0.25, "m": 1.0}
    b.update(base or {})
    baths = BathPair(b["t_hot"], b["t_cold"])
    zetas = list(np.linspace(0.0, 5.0, 6)) if zetas is None else list(zetas)
    thetas = [0.5, 1.0, 2.0] if thetas is None else list(thetas)
    gnc_points = [(0.1, 0.1), (-0.5, 0.5)] if gnc_points is None else list(gnc_points)

    spaces = ([SpaceConfig.commutative()] + [SpaceConfig.nc(t) for t in thetas]
              + [SpaceConfig.gnc(g, x) for g, x in gnc_points])
    out: list[DiscrepancyReport] = []

    def run(fn, *args, **kw):
        try:
            res = fn(*args, strict=strict, **kw)
        except VerificationFailed:
            raise
        except EngineError as exc:
            out.append(DiscrepancyReport(fn.__name__, "evaluation", {"args": repr(args)},
                                         math.nan, math.nan,
                                         flags={"error": f"{type(exc).__name__}: {exc}"}))
            return
        out.extend(res if isinstance(res, list) else [res])

    for z in zetas:
        z = float(z)
        for space in spaces:
            for omega, beta in ((b["omega_hot"], baths.beta_hot), (b["omega_cold"], baths.beta_cold)):
                params = ReducedParams(omega, z, b["K"], b["m"])
                run(check_partition, space, params, beta, n_max=n_max)
                run(check_internal_energy,
                    PartitionModel.exact(mode_spectrum(space, params), space), beta, step)
                run(check_internal_energy, PartitionModel.paper(space, params), beta, step)
            kw = {"zeta": z, "K": b["K"], "m": b["m"], "baths": baths}
            run(check_otto_mode_equivalence,
                OttoSpec(space, b["omega_hot"], b["omega_cold"], **kw))
            for mode in (Mode.EXACT, Mode.PAPER):
                run(check_stirling_first_law,
                    StirlingSpec(space, b["omega_A"], b["omega_B"], mode=mode, **kw))
            try:
                res = stirling_cycle(StirlingSpec(space, b["omega_A"], b["omega_B"],
                                                  mode=Mode.EXACT, **kw))
                run(check_carnot, res)
            except EngineError:
                pass
        run(check_reduction, ReducedParams(b["omega_hot"], z, b["K"], b["m"]),
            (b["omega_hot"], b["omega_cold"]), (b["omega_A"], b["omega_B"]), baths)

    run(check_stirling_beats_otto, 2.0, b["K"], baths)
    run(check_nc_paper_theta_independence, thetas, b["omega_A"], b["omega_B"], b["K"], 2.0, baths)
    carnot = carnot_efficiency(baths)
    out.append(DiscrepancyReport("carnot_efficiency", "1 - Tc/Th", {"t_hot": baths.t_hot,
                                 "t_cold": baths.t_cold}, carnot, carnot))
    return out


def first_failure(reports) -> DiscrepancyReport | None:
    return next((r for r in reports if r.passed is False), None)

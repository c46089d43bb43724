"""Vector-field and flow-level checks of the canonical transformations.

For each equation the map Phi: (q, p, T) -> (lambda, mu, t) must push the
Calogero canonical vector field forward onto the Painleve one.  The total
derivative of Phi is taken by central finite differences (step 1e-6) in
every phase coordinate and in T; the Calogero field is reparametrized by
the Painleve time before comparison, so the pushed-forward time component
is identically 1 and the phase components must match (dH/dmu, -dH/dlambda)
at the image point.

``run_dynamic_correspondence`` restates the same content at flow level:
integrate on the Calogero side and map the endpoint, versus mapping the
initial point and integrating on the Painleve side.
"""

from __future__ import annotations

from .. import transforms
from ..dynamics import integrate
from ..elliptic import EllipticContext
from ..params import AuxParams
from ..systems import PhaseState, SystemDescriptor, canonical_field, hamiltonian_gradients
from .report import CheckReport, cbox, rng_for

FD_STEP = 1e-6
TOL_PUSHFORWARD = 1e-5
TOL_DYNAMIC = 1e-6

# default auxiliary constants for parameter draws (fixed, generic, complex)
DEFAULT_AUX = {
    "VI": dict(kappa0=0.31 + 0.12j, kappa1=0.27 - 0.08j, theta=0.43 + 0.05j, kappa=0.17 + 0.09j),
    "V": dict(kappa0=0.31 + 0.12j, theta1=0.22 - 0.11j, eta1=0.35 + 0.07j, kappa=0.17 + 0.09j),
    "IV": dict(theta_inf=0.19 + 0.14j, kappa0=0.31 + 0.12j),
    "III": dict(eta_inf=0.41 - 0.06j, theta_inf=0.19 + 0.14j, eta0=0.28 + 0.1j, theta0=0.33 - 0.04j),
    "II": dict(alpha=0.37 + 0.21j),
    "I": dict(),
}

# Calogero-side base times: tau for VI, t otherwise
BASE_TIME = {
    "VI": 0.13 + 1.17j,
    "V": 0.83 + 0.21j,
    "IV": 0.62 + 0.18j,
    "III": 0.91 + 0.24j,
    "II": 0.54 + 0.13j,
    "I": 0.47 + 0.22j,
}


def default_aux(eq: str, overrides: dict | None = None) -> AuxParams:
    kw = dict(DEFAULT_AUX[eq])
    if overrides:
        kw.update(overrides)
    return AuxParams(eq, **kw)


def sample_calogero_state(eq: str, rank: int, rng, time=None) -> PhaseState:
    """A generic Calogero phase point away from the documented singular sets.

    Component offsets keep pairwise separations >= 0.05 (both q_j - q_k
    and, where the potential is even, q_j + q_k stay off the poles).
    """
    T = BASE_TIME[eq] if time is None else time
    qs, ps = [], []
    for j in range(rank):
        if eq == "VI":
            tau = T
            a = 0.10 + 0.09 * j + 0.04 * rng.uniform(0, 1)
            b = 0.12 + 0.08 * j + 0.04 * rng.uniform(0, 1)
            qs.append(complex(a + b * tau.real, b * tau.imag))
        elif eq == "V":
            qs.append(complex(0.45 + 0.5 * j + 0.1 * rng.uniform(0, 1),
                              0.15 + 0.1 * rng.uniform(0, 1)))
        elif eq == "IV":
            qs.append(complex(0.6 + 0.55 * j + 0.1 * rng.uniform(0, 1),
                              0.12 + 0.1 * rng.uniform(0, 1)))
        else:  # III, II, I: only pair differences matter
            qs.append(complex(-0.4 + 0.5 * j + 0.1 * rng.uniform(0, 1),
                              0.1 + 0.15 * rng.uniform(0, 1)))
        ps.append(cbox(rng, 0.25, 0.75, -0.3, 0.3))
    return PhaseState(tuple(qs), tuple(ps), T)


def _pushforward_error(eq: str, rank: int, aux: AuxParams, state: PhaseState,
                       g4sq: complex, step: float = FD_STEP) -> float:
    """Max componentwise relative defect of the pushed-forward field."""
    cal = SystemDescriptor(eq, "calogero", rank, g4sq, aux)
    pain = SystemDescriptor(eq, "painleve", rank, g4sq, aux)
    T = state.time
    ctx = EllipticContext(T) if eq == "VI" else None

    qdot, pdot = canonical_field(cal, state, ctx)
    if eq == "VI":
        dT_dt = transforms.jacobian_dtau_dt(T, ctx)
    else:
        dT_dt = 1.0 + 0j
    vel = [v * dT_dt for v in qdot] + [v * dT_dt for v in pdot] + [dT_dt]

    def phi_flat(x):
        st = PhaseState(tuple(x[:rank]), tuple(x[rank:2 * rank]), x[2 * rank])
        c = EllipticContext(st.time, ctx.lattice_order, ctx.theta_order) if eq == "VI" else None
        img = transforms.multi_transform(eq, "to_painleve", st, aux, c)
        return list(img.coords) + list(img.momenta) + [img.time]

    x0 = list(state.coords) + list(state.momenta) + [T]
    n = 2 * rank + 1
    pushed = [0j] * n
    for i in range(n):
        xp, xm = list(x0), list(x0)
        xp[i] += step
        xm[i] -= step
        fp, fm = phi_flat(xp), phi_flat(xm)
        for c_ in range(n):
            pushed[c_] += (fp[c_] - fm[c_]) / (2 * step) * vel[i]

    img = transforms.multi_transform(eq, "to_painleve", state, aux, ctx)
    dH_dlam, dH_dmu = hamiltonian_gradients(pain, img)
    worst = 0.0
    for j in range(rank):
        worst = max(worst, abs(pushed[j] - dH_dmu[j]) / max(1.0, abs(dH_dmu[j])))
        worst = max(worst, abs(pushed[rank + j] + dH_dlam[j]) / max(1.0, abs(dH_dlam[j])))
    worst = max(worst, abs(pushed[2 * rank] - 1.0))
    return worst


def run_correspondence_suite(eq: str, rank: int, aux: AuxParams | None = None,
                             n_points: int = 100, seed: int = 7,
                             g4sq: complex = 0j) -> CheckReport:
    """Pushforward equality at n_points random generic points."""
    aux = aux or default_aux(eq)
    check_id = f"correspondence.{eq}.rank{rank}"
    rng = rng_for(seed, check_id)
    worst = 0.0
    for _ in range(n_points):
        state = sample_calogero_state(eq, rank, rng)
        worst = max(worst, _pushforward_error(eq, rank, aux, state, g4sq))
    return CheckReport(check_id, worst, TOL_PUSHFORWARD, n_points,
                       metadata={"equation": eq, "rank": str(rank),
                                 "g4sq": format(complex(g4sq), "g"), "seed": str(seed)})


def run_dynamic_correspondence(eq: str, rank: int = 1, aux: AuxParams | None = None,
                               initial: PhaseState | None = None,
                               arc_length: float = 0.3, seed: int = 7,
                               g4sq: complex = 0j,
                               rel_tol: float = 1e-10, abs_tol: float = 1e-12) -> CheckReport:
    """Two-path endpoint comparison over a Painleve-side arc of given length.

    Path A: integrate the Calogero flow, then map the endpoint.  Path B:
    map the initial point, then integrate the Painleve flow over the
    corresponding t-arc.  For VI the tau-interval matching the t-arc is
    found through the inverse time map.
    """
    aux = aux or default_aux(eq)
    check_id = f"dynamic.{eq}.rank{rank}"
    rng = rng_for(seed, check_id)
    if initial is None:
        initial = sample_calogero_state(eq, rank, rng)
    cal = SystemDescriptor(eq, "calogero", rank, g4sq, aux)
    pain = SystemDescriptor(eq, "painleve", rank, g4sq, aux)
    ctx = EllipticContext(initial.time) if eq == "VI" else None

    start_pain = transforms.multi_transform(eq, "to_painleve", initial, aux, ctx)
    t_start = start_pain.time
    t_end = t_start + arc_length * (1 + 0.2j) / abs(1 + 0.2j)
    if eq == "VI":
        T_end = transforms.time_map_pvi_inverse(t_end, initial.time, ctx)
    else:
        T_end = t_end

    traj_cal = integrate(cal, initial, T_end, rel_tol, abs_tol, ctx=ctx)
    traj_pain = integrate(pain, start_pain, t_end, rel_tol, abs_tol)
    meta = {"equation": eq, "rank": str(rank), "arc": str(arc_length), "seed": str(seed),
            "cal_termination": traj_cal.termination, "pain_termination": traj_pain.termination}
    if not (traj_cal.completed and traj_pain.completed):
        return CheckReport(check_id, float("inf"), TOL_DYNAMIC, 1, metadata=meta)

    end_cal = traj_cal.samples[-1][1]
    ctx_end = EllipticContext(T_end) if eq == "VI" else None
    mapped = transforms.multi_transform(eq, "to_painleve", end_cal, aux, ctx_end)
    end_pain = traj_pain.samples[-1][1]
    err = max(
        max(abs(a - b) for a, b in zip(mapped.coords, end_pain.coords)),
        max(abs(a - b) for a, b in zip(mapped.momenta, end_pain.momenta)),
        abs(mapped.time - end_pain.time),
    )
    return CheckReport(check_id, err, TOL_DYNAMIC, len(traj_cal.samples), metadata=meta)

"""Rail-closure constraint solver for the mirror-symmetric subgraph templates.

The flexible subgraph is modelled on its upper half: every half vertex
contributes free coordinates (the gauge pins vertex B at the origin and the
mirror axis along x), the apex of the two rails contributes one unknown, and
the residual vector stacks unit-edge equations, axis incidences and signed
rail distances.  A float64 Levenberg-Marquardt pass supplies the basin, then
full-precision Newton iterations polish the root far below the requested
tolerance so downstream seam merges stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from mpmath import atan2, cos, degrees, lu_solve, matrix, mp, mpf, pi, qr_solve, sin, tan

from .errors import (
    AsymmetricFixture,
    DimensionMismatch,
    MissingLabels,
    NoConvergence,
    NoPassingN,
    StepCollapse,
)
from .geometry import Point, distance
from .graph import UnitGraph
from .precision import tol

MIRROR_CHECK_TOLERANCE = mpf("1e-12")
HALF_BAND = mpf("1e-9")  # |y| below this counts as on-axis in template frame

MAX_ITERATIONS = 200
DAMPING_FACTOR = 10.0
RANK_THRESHOLD = 1e-12
MAX_STEP_DEGREES = 0.05


@dataclass(frozen=True)
class RingSpec:
    """Rotational-assembly parameters: n copies at the full angle 2*pi/n."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("ring order n must be at least 3")

    @property
    def omega(self) -> mpf:
        return 2 * pi / self.n

    @property
    def omega_degrees(self) -> mpf:
        return mpf(360) / self.n


@dataclass(frozen=True)
class LinkageTemplate:
    """Upper half of a merged fixture in the gauge frame, ready to solve."""

    source: str
    points0: dict  # vertex -> Point, template frame, axis snapped to y=0
    half: tuple  # sorted vertex ids (upper + axis)
    axis: tuple
    upper: tuple
    rails: tuple  # degree-2 vertices of the half, on the upper rail
    mirror: dict  # upper id -> lower id in the source graph
    edges_plain: tuple  # (a, b) with both ends in the half
    edges_crossed: tuple  # (u, w): edge between u and the mirror image of w
    labels: dict
    angle_triples: dict  # name -> ((i, j, k), ...) within the half
    anchor_n: int | None
    var_of: dict  # vertex -> (ix, iy) or None for the pinned gauge vertex
    n_vars: int
    graph: UnitGraph

    @property
    def n_residuals(self) -> int:
        return len(self.edges_plain) + len(self.edges_crossed) + (len(self.axis) - 1) + len(self.rails)

    def initial_state(self, spec: RingSpec) -> tuple:
        """Fixture coordinates plus a rail-fit estimate of the apex."""
        state = [mpf(0)] * self.n_vars
        for v in self.half:
            slot = self.var_of[v]
            if slot is not None:
                state[slot[0]] = self.points0[v].x
                state[slot[1]] = self.points0[v].y
        t = tan(spec.omega / 2)
        est = [self.points0[v].x + self.points0[v].y / t for v in self.rails]
        state[self.n_vars - 1] = sum(est) / len(est)
        return tuple(state)

    def state_points(self, state) -> dict:
        """Vertex -> Point mapping for a state vector."""
        pts = {}
        for v in self.half:
            slot = self.var_of[v]
            if slot is None:
                pts[v] = Point(mpf(0), mpf(0))
            else:
                pts[v] = Point(state[slot[0]], state[slot[1]])
        return pts


@dataclass(frozen=True)
class SolveResult:
    spec: RingSpec
    state: tuple
    coords: dict  # vertex -> Point at the solution (template frame)
    apex_x: mpf
    residual_inf: mpf
    iterations: int
    min_singular: float
    converged: bool


@dataclass(frozen=True)
class AngleReadout:
    """Observables measured at the annotated vertex triples (degrees)."""

    alpha: mpf | None
    beta: mpf | None
    gamma: mpf | None
    delta: mpf | None
    gh: mpf | None
    omega_check: mpf  # angle between the F->A and D->C directions
    instances: dict  # name -> tuple of per-triple values


def build_template(g: UnitGraph) -> LinkageTemplate:
    """Gauge-fix a merged mirror-symmetric fixture into a solvable template."""
    for need in ("B", "E"):
        if need not in g.labels:
            raise MissingLabels(f"label {need} required to fix the gauge")
    b, e = g.labels["B"], g.labels["E"]
    pb, pe = g.vertices[b], g.vertices[e]
    theta = atan2(pe.y - pb.y, pe.x - pb.x)
    c, s = cos(-theta), sin(-theta)
    pts = {}
    for v, p in enumerate(g.vertices):
        x, y = p.x - pb.x, p.y - pb.y
        pts[v] = Point(x * c - y * s, x * s + y * c)

    axis = sorted(v for v, p in pts.items() if abs(p.y) <= HALF_BAND)
    upper = sorted(v for v, p in pts.items() if p.y > HALF_BAND)
    lower = sorted(v for v, p in pts.items() if p.y < -HALF_BAND)
    for v in axis:
        pts[v] = Point(pts[v].x, mpf(0))

    if len(upper) != len(lower):
        raise AsymmetricFixture(f"halves differ in size ({len(upper)} vs {len(lower)})")
    mirror = {}
    lower_left = set(lower)
    for u in upper:
        target = pts[u].conj()
        match = min(lower_left, key=lambda w: distance(pts[w], target), default=None)
        if match is None or distance(pts[match], target) > MIRROR_CHECK_TOLERANCE:
            raise AsymmetricFixture(f"no mirror partner for vertex {u}")
        mirror[u] = match
        lower_left.remove(match)

    # The mirrored edge set must reproduce the original edge set exactly.
    reflect_id = {v: v for v in axis}
    reflect_id.update(mirror)
    reflect_id.update({w: u for u, w in mirror.items()})
    eset = set(g.edges)
    for a, bb in g.edges:
        m = (min(reflect_id[a], reflect_id[bb]), max(reflect_id[a], reflect_id[bb]))
        if m not in eset:
            raise AsymmetricFixture(f"edge {(a, bb)} has no mirror edge {m}")

    halfset = set(upper) | set(axis)
    lowerset = set(lower)
    plain = []
    crossed = set()
    for a, bb in g.edges:
        ina, inb = a in halfset, bb in halfset
        if ina and inb:
            plain.append((a, bb))
        elif ina != inb:
            u = a if ina else bb
            l = bb if ina else a
            if u in axis:
                continue  # mirror image of an axis-to-upper edge, already counted
            w = reflect_id[l]
            crossed.add((min(u, w), max(u, w)))
        # lower-lower edges are mirror images of upper-upper ones

    deg = [0] * len(g.vertices)
    for a, bb in g.edges:
        deg[a] += 1
        deg[bb] += 1
    rails = tuple(v for v in upper if deg[v] == 2)
    if not rails:
        raise AsymmetricFixture("no degree-2 rail vertices in the upper half")

    half = tuple(sorted(halfset))
    var_of = {}
    k = 0
    for v in half:
        if v == b:
            var_of[v] = None
        else:
            var_of[v] = (k, k + 1)
            k += 2
    n_vars = k + 1

    triples = {}
    for name, tris in g.meta.get("angles", {}).items():
        kept = tuple(tuple(t) for t in tris if all(i in halfset for i in t))
        if kept:
            triples[name] = kept

    return LinkageTemplate(
        source=str(g.meta.get("fixture", "unnamed")),
        points0=pts,
        half=half,
        axis=tuple(axis),
        upper=tuple(upper),
        rails=rails,
        mirror=mirror,
        edges_plain=tuple(sorted(plain)),
        edges_crossed=tuple(sorted(crossed)),
        labels=dict(g.labels),
        angle_triples=triples,
        anchor_n=g.meta.get("n"),
        var_of=var_of,
        n_vars=n_vars,
        graph=g,
    )


# -- residual evaluation ----------------------------------------------------


def _slots(t: LinkageTemplate):
    """Index arrays for the float64 evaluator; gauge vertex reads constants."""
    nv = t.n_vars
    bslot = (nv, nv + 1)

    def slot(v):
        return t.var_of[v] if t.var_of[v] is not None else bslot

    ea = []
    for a, b in t.edges_plain:
        sa, sb = slot(a), slot(b)
        ea.append((sa[0], sa[1], sb[0], sb[1], 1.0))
    for u, w in t.edges_crossed:
        su, sw = slot(u), slot(w)
        ea.append((su[0], su[1], sw[0], sw[1], -1.0))
    axis_iy = [slot(v)[1] for v in t.axis if t.var_of[v] is not None]
    rail_ix = [slot(v)[0] for v in t.rails]
    rail_iy = [slot(v)[1] for v in t.rails]
    return np.array(ea), np.array(axis_iy, np.int64), np.array(rail_ix, np.int64), np.array(rail_iy, np.int64)


def residuals(t: LinkageTemplate, spec: RingSpec, state) -> list:
    """Full-precision residual vector (unit edges, axis, rails) in fixed order."""
    return _residuals_mp(t, spec.omega, state)


def _residuals_mp(t: LinkageTemplate, omega, state) -> list:
    if len(state) != t.n_vars:
        raise DimensionMismatch(f"state has {len(state)} entries, expected {t.n_vars}")
    pts = t.state_points(state)
    xo = state[t.n_vars - 1]
    so, co = sin(omega / 2), cos(omega / 2)
    res = []
    for a, b in t.edges_plain:
        dx = pts[a].x - pts[b].x
        dy = pts[a].y - pts[b].y
        res.append(dx * dx + dy * dy - 1)
    for u, w in t.edges_crossed:
        dx = pts[u].x - pts[w].x
        dy = pts[u].y + pts[w].y
        res.append(dx * dx + dy * dy - 1)
    for v in t.axis:
        if t.var_of[v] is not None:
            res.append(pts[v].y)
    for v in t.rails:
        res.append((pts[v].x - xo) * so + pts[v].y * co)
    return res


def _jacobian_rows_mp(t: LinkageTemplate, omega, state) -> list:
    """Sparse rows as {column: value} mirroring ``_residuals_mp`` order."""
    pts = t.state_points(state)
    so, co = sin(omega / 2), cos(omega / 2)
    ixo = t.n_vars - 1
    rows = []
    for kind, pairs in (("plain", t.edges_plain), ("crossed", t.edges_crossed)):
        sign = 1 if kind == "plain" else -1
        for a, b in pairs:
            dx = pts[a].x - pts[b].x
            dy = pts[a].y - sign * pts[b].y
            row = {}
            sa, sb = t.var_of[a], t.var_of[b]
            if sa is not None:
                row[sa[0]] = 2 * dx
                row[sa[1]] = 2 * dy
            if sb is not None:
                row[sb[0]] = row.get(sb[0], mpf(0)) - 2 * dx
                row[sb[1]] = row.get(sb[1], mpf(0)) - 2 * sign * dy
            rows.append(row)
    for v in t.axis:
        if t.var_of[v] is not None:
            rows.append({t.var_of[v][1]: mpf(1)})
    for v in t.rails:
        sv = t.var_of[v]
        rows.append({sv[0]: so, sv[1]: co, ixo: -so})
    return rows


def _residuals_f64(arrays, omega, ext):
    ea, axis_iy, rail_ix, rail_iy = arrays
    so, co = math.sin(omega / 2), math.cos(omega / 2)
    xo = ext[-3]
    dx = ext[ea[:, 0].astype(np.int64)] - ext[ea[:, 2].astype(np.int64)]
    dy = ext[ea[:, 1].astype(np.int64)] - ea[:, 4] * ext[ea[:, 3].astype(np.int64)]
    r_edges = dx * dx + dy * dy - 1.0
    r_axis = ext[axis_iy]
    r_rail = (ext[rail_ix] - xo) * so + ext[rail_iy] * co
    return np.concatenate([r_edges, r_axis, r_rail])


def _jacobian_f64(arrays, omega, ext, nv):
    ea, axis_iy, rail_ix, rail_iy = arrays
    so, co = math.sin(omega / 2), math.cos(omega / 2)
    ne = ea.shape[0]
    nres = ne + axis_iy.size + rail_ix.size
    J = np.zeros((nres, nv + 2))
    ia = ea[:, 0].astype(np.int64)
    ja = ea[:, 1].astype(np.int64)
    ib = ea[:, 2].astype(np.int64)
    jb = ea[:, 3].astype(np.int64)
    sg = ea[:, 4]
    dx = ext[ia] - ext[ib]
    dy = ext[ja] - sg * ext[jb]
    rows = np.arange(ne)
    np.add.at(J, (rows, ia), 2 * dx)
    np.add.at(J, (rows, ja), 2 * dy)
    np.add.at(J, (rows, ib), -2 * dx)
    np.add.at(J, (rows, jb), -2 * sg * dy)
    J[ne + np.arange(axis_iy.size), axis_iy] = 1.0
    r0 = ne + axis_iy.size
    J[r0 + np.arange(rail_ix.size), rail_ix] = so
    J[r0 + np.arange(rail_iy.size), rail_iy] = co
    J[r0 + np.arange(rail_ix.size), nv - 1] = -so
    return J[:, :nv]


def _extend(x):
    return np.concatenate([x, [0.0, 0.0]])


def _solve_f64(t, arrays, omega, x0, max_iterations=MAX_ITERATIONS):
    """Damped Gauss-Newton on the float64 model; returns (x, best, iterations)."""
    x = x0.copy()
    lam = 1e-8
    r = _residuals_f64(arrays, omega, _extend(x))
    best = np.abs(r).max()
    its = 0
    while its < max_iterations:
        if best < 1e-12:
            break
        J = _jacobian_f64(arrays, omega, _extend(x), t.n_vars)
        g = J.T @ r
        jtj = J.T @ J
        improved = False
        for _ in range(25):
            its += 1
            try:
                delta = np.linalg.solve(jtj + lam * np.eye(t.n_vars), -g)
            except np.linalg.LinAlgError:
                lam *= DAMPING_FACTOR
                continue
            xt = x + delta
            rt = _residuals_f64(arrays, omega, _extend(xt))
            if np.abs(rt).max() < best:
                x, r, best = xt, rt, np.abs(rt).max()
                lam = max(lam / DAMPING_FACTOR, 1e-14)
                improved = True
                break
            lam *= DAMPING_FACTOR
            if lam > 1e16:
                break
        if not improved:
            break
    return x, best, its


def _newton_f64(t, arrays, omega, x0, iterations=30):
    """Plain float64 Newton; branch-true for inits already near a root."""
    x = x0.copy()
    best = np.abs(_residuals_f64(arrays, omega, _extend(x))).max()
    for _ in range(iterations):
        r = _residuals_f64(arrays, omega, _extend(x))
        best = np.abs(r).max()
        if best < 1e-13:
            break
        J = _jacobian_f64(arrays, omega, _extend(x), t.n_vars)
        try:
            if J.shape[0] == J.shape[1]:
                step = np.linalg.solve(J, -r)
            else:
                step = np.linalg.lstsq(J, -r, rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        x = x + step
    return x, best


def _state_separation_ok(t: LinkageTemplate, state) -> bool:
    """Reject roots whose configuration no valid unit graph can carry:
    coincident vertices or an upper vertex collapsed onto the axis."""
    xs = []
    ys = []
    for v in t.half:
        slot = t.var_of[v]
        if slot is None:
            xs.append(0.0)
            ys.append(0.0)
        else:
            xs.append(float(state[slot[0]]))
            ys.append(float(state[slot[1]]))
    pts = np.array([xs, ys]).T
    upper = [i for i, v in enumerate(t.half) if v in set(t.upper)]
    # An upper vertex on the axis would merge with its own mirror image.
    if any(pts[i, 1] < 1e-9 for i in upper):
        return False
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    np.fill_diagonal(d2, 1.0)
    return d2.min() >= (2e-9) ** 2


def solve(
    t: LinkageTemplate,
    spec: RingSpec,
    init=None,
    tol_inf=None,
    max_iterations: int = MAX_ITERATIONS,
) -> SolveResult:
    """Solve closure at ``spec.n``; raises NoConvergence if the cap is hit.

    The default tolerance is ``10**(10 - p)``; polishing continues past it to
    the arithmetic floor so seam merges downstream see exact coincidences.
    """
    if tol_inf is None:
        tol_inf = tol(10)
    omega = spec.omega
    if init is None:
        init = t.initial_state(spec)
    if len(init) != t.n_vars:
        raise DimensionMismatch(f"init has {len(init)} entries, expected {t.n_vars}")
    arrays = _slots(t)

    state = [mpf(v) for v in init]
    r = _residuals_mp(t, omega, state)
    rinf = max(abs(v) for v in r)
    iterations = 0
    if rinf > mpf("1e-13"):
        x0 = np.array([float(v) for v in init])
        if rinf < mpf("1e-8"):
            # Near a root already (fixture or continuation start): plain
            # Newton stays on the branch the init belongs to.
            x64, best64 = _newton_f64(t, arrays, float(omega), x0)
            iterations += 1
        else:
            x64, best64, its = _solve_f64(t, arrays, float(omega), x0)
            iterations += its
            if best64 <= 1e-6:
                x64, best64 = _newton_f64(t, arrays, float(omega), x64)
        if best64 > 1e-6:
            raise NoConvergence(
                f"float64 stage stalled at |r|={best64:.3e} for n={spec.n}", last_omega=omega
            )
        state = [mpf(v) for v in x64]
        r = _residuals_mp(t, omega, state)
        rinf = max(abs(v) for v in r)

    floor = tol(4)
    square = t.n_residuals == t.n_vars
    for _ in range(40):
        if rinf < floor or iterations >= max_iterations:
            break
        iterations += 1
        rows = _jacobian_rows_mp(t, omega, state)
        J = matrix(len(rows), t.n_vars)
        for i, row in enumerate(rows):
            for jcol, val in row.items():
                J[i, jcol] = val
        rhs = matrix([-v for v in r])
        delta = lu_solve(J, rhs) if square else qr_solve(J, rhs)[0]
        trial = [state[i] + delta[i] for i in range(t.n_vars)]
        rt = _residuals_mp(t, omega, trial)
        rtinf = max(abs(v) for v in rt)
        if rtinf >= rinf:
            # Step did not contract: try halving before giving up.
            scale = mpf("0.5")
            for _ in range(6):
                trial = [state[i] + scale * delta[i] for i in range(t.n_vars)]
                rt = _residuals_mp(t, omega, trial)
                rtinf = max(abs(v) for v in rt)
                if rtinf < rinf:
                    break
                scale /= 2
            if rtinf >= rinf:
                break
        state, r, rinf = trial, rt, rtinf

    if rinf >= tol_inf:
        raise NoConvergence(
            f"stalled at |r|inf={mp.nstr(rinf, 5)} > tol for n={spec.n}", last_omega=omega
        )
    if not _state_separation_ok(t, state):
        raise NoConvergence(
            f"converged to a degenerate root (coincident vertices) for n={spec.n}",
            last_omega=omega,
        )

    Jf = _jacobian_f64(arrays, float(omega), _extend(np.array([float(v) for v in state])), t.n_vars)
    min_singular = float(np.linalg.svd(Jf, compute_uv=False)[-1])
    return SolveResult(
        spec=spec,
        state=tuple(state),
        coords=t.state_points(state),
        apex_x=state[t.n_vars - 1],
        residual_inf=rinf,
        iterations=iterations,
        min_singular=min_singular,
        converged=True,
    )


def is_rank_deficient(result: SolveResult) -> bool:
    """Flexibility flag: gauge-fixed Jacobian lost full column rank."""
    return result.min_singular < RANK_THRESHOLD


# -- observables -------------------------------------------------------------


def _angle_deg(p_i: Point, p_j: Point, p_k: Point) -> mpf:
    u = p_i - p_j
    w = p_k - p_j
    return degrees(atan2(abs(u.cross(w)), u.dot(w)))


def extract_angles(t: LinkageTemplate, result: SolveResult) -> AngleReadout:
    """Measure the annotated angles, the labelled near-pair gap and the
    angle between the two rail directions at the solution."""
    pts = result.coords
    instances = {}
    for name, triples in t.angle_triples.items():
        instances[name] = tuple(_angle_deg(pts[i], pts[j], pts[k]) for i, j, k in triples)

    def first(name):
        vals = instances.get(name)
        return vals[0] if vals else None

    gh = None
    if "G" in t.labels and "H" in t.labels:
        gh = distance(pts[t.labels["G"]], pts[t.labels["H"]])

    omega_check = None
    if "A" in t.labels and "F" in t.labels:
        a = pts[t.labels["A"]]
        f = pts[t.labels["F"]]
        fa = a - f
        dc = a.conj() - f.conj()  # C - D, the mirrored rail direction
        omega_check = degrees(atan2(abs(fa.cross(dc)), fa.dot(dc)))
    if omega_check is None:
        raise MissingLabels("labels A and F are required for the rail-angle check")

    return AngleReadout(
        alpha=first("alpha"),
        beta=first("beta"),
        gamma=first("gamma"),
        delta=first("delta"),
        gh=gh,
        omega_check=omega_check,
        instances=instances,
    )


# -- continuation and search --------------------------------------------------


def continue_in_n(
    t: LinkageTemplate,
    from_result: SolveResult,
    n1: int,
    tol_inf=None,
    max_step_degrees: float = MAX_STEP_DEGREES,
) -> SolveResult:
    """Walk omega from the solved order to ``n1`` in bounded steps.

    Intermediate steps re-solve on the float64 model only; the final integer
    order gets the full-precision polish.
    """
    n0 = from_result.spec.n
    if n1 == n0:
        return from_result
    w0 = 360.0 / n0
    w1 = 360.0 / n1
    steps = max(1, math.ceil(abs(w1 - w0) / max_step_degrees))
    arrays = _slots(t)
    x = np.array([float(v) for v in from_result.state])
    for k in range(1, steps + 1):
        wdeg = w0 + (w1 - w0) * k / steps
        omega = math.radians(wdeg)
        # Plain Newton: each bounded omega step stays on the tracked branch.
        x, best = _newton_f64(t, arrays, omega, x)
        if best > 1e-9 or not _state_separation_ok(t, x):
            raise StepCollapse(
                f"continuation stalled at omega={wdeg:.6f} deg between n={n0} and n={n1}",
                last_omega=omega,
            )
        _require_feasible_rails(t, arrays, x)
    return solve(t, RingSpec(n1), init=[mpf(v) for v in x], tol_inf=tol_inf)


def _require_feasible_rails(t, arrays, x):
    """Cheap lock-up guard: rail ordinates must stay positive (above axis)."""
    _, _, _, rail_iy = arrays
    ext = _extend(x)
    if np.any(ext[rail_iy] < -1e-9):
        raise StepCollapse("a rail vertex crossed the axis during continuation")


@dataclass(frozen=True)
class SearchRow:
    n: int
    solved: bool
    verdicts: dict
    passed: bool
    detail: dict


@dataclass(frozen=True)
class SearchResult:
    rows: tuple
    smallest_passing: int

    def table(self) -> str:
        head = f"{'n':>5}  {'solved':>6}  " + "  ".join(f"{k:>13}" for k in _CRITERIA_ORDER)
        lines = [head]
        for row in self.rows:
            cells = []
            for k in _CRITERIA_ORDER:
                if k in row.verdicts:
                    cells.append(f"{'pass' if row.verdicts[k] else 'FAIL':>13}")
                else:
                    cells.append(f"{'-':>13}")
            lines.append(f"{row.n:>5}  {'yes' if row.solved else 'NO':>6}  " + "  ".join(cells))
        return "\n".join(lines)


_CRITERIA_ORDER = ("unit", "regular4", "planar", "no_additional")


def minimal_n_search(
    t: LinkageTemplate,
    n_range: tuple,
    profile=None,
    criteria=_CRITERIA_ORDER,
) -> SearchResult:
    """Solve, assemble and certify every order in ``n_range``; the smallest
    order passing all requested verdicts wins.

    Initial guesses come from a serial continuation pass anchored at the
    template's published order.
    """
    from .assemble import mirror_close, ring_assemble
    from .verify import ToleranceProfile, verify

    if profile is None:
        profile = ToleranceProfile.solved()
    unknown = [c for c in criteria if c not in _CRITERIA_ORDER]
    if unknown:
        raise ValueError(f"unknown criteria {unknown}; known: {_CRITERIA_ORDER}")
    n_min, n_max = int(n_range[0]), int(n_range[1])
    if n_min > n_max:
        raise ValueError("empty search range")
    anchor = t.anchor_n
    if anchor is None:
        raise NoConvergence("template has no anchor order for continuation")

    results: dict[int, SolveResult | None] = {}
    anchor_result = solve(t, RingSpec(anchor))
    if n_min <= anchor <= n_max:
        results[anchor] = anchor_result

    def sweep(ns):
        prev = anchor_result
        for n in ns:
            try:
                prev = continue_in_n(t, prev, n)
                if n_min <= n <= n_max:
                    results[n] = prev
            except NoConvergence:
                if n_min <= n <= n_max:
                    results[n] = None
                break

    sweep(range(anchor - 1, n_min - 1, -1))
    sweep(range(anchor + 1, n_max + 1))

    rows = []
    smallest = None
    for n in range(n_min, n_max + 1):
        res = results.get(n)
        if res is None:
            rows.append(SearchRow(n=n, solved=False, verdicts={}, passed=False, detail={}))
            continue
        base = mirror_close(t, res)
        ring = ring_assemble(base, RingSpec(n))
        report = verify(ring, profile)
        verdicts = {k: report.verdicts[k] for k in _CRITERIA_ORDER}
        ok = all(report.verdicts[k] for k in criteria)
        detail = {
            "crossings": len(report.crossings),
            "incidences": len(report.incidences),
            "indeterminate": len(report.indeterminate),
            "triangles": report.triangle_count,
        }
        if report.crossings:
            detail["first_crossing"] = report.crossings[0]
        rows.append(SearchRow(n=n, solved=True, verdicts=verdicts, passed=ok, detail=detail))
        if ok and smallest is None:
            smallest = n
    if smallest is None:
        raise NoPassingN(f"no n in [{n_min}, {n_max}] passes {criteria}")
    return SearchResult(rows=tuple(rows), smallest_passing=smallest)

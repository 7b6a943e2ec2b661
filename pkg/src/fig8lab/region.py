"""Region geometry around the saddle and grid-based topology checks.

For each m the strip U_m = {m/p < Re z + (u/2 p pi) Im z < (m+1)/p} carries
the shifted potential Phi_m.  The hexagon E_m (the strip clipped to
|Im z| <= 2 Im sigma_m and b_m^- <= Re z <= b_m^+), the sublevel region
D_m = {Re Phi_m < Re Phi_m(sigma_m)} and the two tilted-threshold bands
R-bar / R-under are reconstructed on a rectangular grid, from which the
two-lobe structure of D_m within E_m and the connectivity of the bands are
verified by flood fill.  Vertex and line data of the hexagon are exposed in
closed form for the boundary-segment inequalities.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .numkernel import DomainError, li2
from .qdilog import DEFAULT_CONFIG, EvalContext, QuadratureConfig
from .jones import f_n, k_range
from .saddle import (
    KAPPA,
    f_values,
    f_zero_value,
    phi_m,
    saddle_data,
    varphi,
)


# ---------------------------------------------------------------------------
# Hexagon vertices and boundary lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolygonData:
    """Vertices and boundary/guide lines of the hexagon E_m.

    Lines are stored as coefficient triples (a, b, c) meaning a x + b y = c
    in z = x + i y coordinates.  p50 sits on V_W (Re z = m/p) at its crossing
    with the saddle ray L_sigma; the crossing of L_W with L_sigma is the
    separate point p_w = 2 m pi i / xi.
    """

    m: int
    u: float
    p: int
    p0: complex
    p1: complex
    p2: complex
    p3: complex
    p4: complex
    p5: complex
    p12: complex
    p34: complex
    p45: complex
    p50: complex
    p_w: complex
    sigma_m: complex
    lines: dict = field(repr=False)


def polygon(m: int, u: float, p: int) -> PolygonData:
    if not 0 <= m <= p - 1:
        raise DomainError(f"m must lie in [0, p-1], got {m}")
    sd = saddle_data(u, p)
    xi = sd.xi
    xibar = xi.conjugate()
    sigma_m = sd.sigma_m(m)
    ims = sigma_m.imag

    pts = {
        "p0": complex(m / p, 0.0),
        "p1": m / p + xibar / (p * math.pi) * ims,
        "p2": (m + 1) / p - 2j * ims,
        "p3": complex((m + 1) / p, 0.0),
        "p4": (m + 1) / p - xibar / (p * math.pi) * ims,
        "p5": m / p + 2j * ims,
        "p12": (2 * m + 1) / (2 * p) + xibar / (p * math.pi) * ims,
        "p34": 2j * (m + 1) * math.pi / xi,
        "p45": (2 * m + 1) / (2 * p) - xibar / (p * math.pi) * ims,
        "p50": m * xibar * 1j / (2 * p * p * math.pi),
        "p_w": 2j * m * math.pi / xi,
    }

    slope = u / (2.0 * math.pi * p)
    lines = {
        "L_sigma": (1.0, -2.0 * math.pi * p / u, 0.0),
        "L_E": (1.0, slope, (m + 1) / p),
        "L_M": (1.0, slope, (2 * m + 1) / (2 * p)),
        "L_W": (1.0, slope, m / p),
        "H_bar": (0.0, 1.0, 2.0 * ims),
        "H_under": (0.0, 1.0, -2.0 * ims),
        "V_E": (1.0, 0.0, (m + 1) / p),
        "V_W": (1.0, 0.0, m / p),
    }

    if not (pts["p1"].real < pts["p45"].real
            and pts["p12"].real < pts["p4"].real
            and pts["p12"].real < sigma_m.real):
        raise DomainError("hexagon vertex ordering violated; parameters out of range")

    return PolygonData(m=m, u=u, p=p, sigma_m=sigma_m, lines=lines, **pts)


# ---------------------------------------------------------------------------
# Region grid
# ---------------------------------------------------------------------------

@dataclass
class RegionGrid:
    """Rectangular sampling of Re Phi_m over E_m's bounding box."""

    m: int
    u: float
    p: int
    nu: float
    resolution: tuple
    bounds: tuple            # (x_lo, x_hi, y_lo, y_hi)
    xs: np.ndarray
    ys: np.ndarray
    re_phi: np.ndarray       # shape (ny, nx); NaN outside U_m
    in_u: np.ndarray
    in_e: np.ndarray
    in_d: np.ndarray
    in_rbar: np.ndarray
    in_runder: np.ndarray
    threshold: float         # Re Phi_m(sigma_m) = Re F(sigma_0)
    sigma_m: complex


def grid_scan(m: int, u: float, p: int, resolution=400, nu: float = 0.02) -> RegionGrid:
    if isinstance(resolution, int):
        resolution = (resolution, resolution)
    nx, ny = resolution
    if nx < 50 or ny < 50:
        raise DomainError("resolution must be at least 50x50")
    if not 0.0 < nu < 0.5:
        raise DomainError("nu must lie in (0, 0.5)")

    sd = saddle_data(u, p)
    xi = sd.xi
    sigma_m = sd.sigma_m(m)
    ims = sigma_m.imag
    threshold = sd.f_sigma0.real

    x_lo, x_hi = (m + nu) / p, (m + 1 - nu) / p
    y_lo, y_hi = -2.0 * ims, 2.0 * ims
    xs = np.linspace(x_lo, x_hi, nx)
    ys = np.linspace(y_lo, y_hi, ny)
    X, Y = np.meshgrid(xs, ys)

    skew = X + u / (2.0 * math.pi * p) * Y
    in_u = (skew > m / p) & (skew < (m + 1) / p)

    re_phi = np.full(X.shape, np.nan)
    z_inside = (X + 1j * Y)[in_u] - 2j * m * math.pi / xi
    re_phi[in_u] = f_values(z_inside, u, p).real

    in_e = in_u.copy()  # the grid box is E_m's bounding box by construction
    with np.errstate(invalid="ignore"):
        in_d = in_e & (re_phi < threshold)
        in_rbar = in_u & (Y >= 0.0) & (re_phi < threshold + 2.0 * math.pi * Y)
        in_runder = in_u & (Y <= 0.0) & (re_phi < threshold - 2.0 * math.pi * Y)

    return RegionGrid(
        m=m, u=u, p=p, nu=nu, resolution=(nx, ny),
        bounds=(x_lo, x_hi, y_lo, y_hi), xs=xs, ys=ys,
        re_phi=re_phi, in_u=in_u, in_e=in_e, in_d=in_d,
        in_rbar=in_rbar, in_runder=in_runder,
        threshold=threshold, sigma_m=sigma_m,
    )


def label_components(mask: np.ndarray):
    """4-connected component labels of a boolean grid; returns (labels, count)."""
    labels = np.zeros(mask.shape, dtype=np.int32)
    nrows, ncols = mask.shape
    count = 0
    for i in range(nrows):
        row = mask[i]
        for j in range(ncols):
            if row[j] and labels[i, j] == 0:
                count += 1
                stack = [(i, j)]
                labels[i, j] = count
                while stack:
                    a, b = stack.pop()
                    if a > 0 and mask[a - 1, b] and labels[a - 1, b] == 0:
                        labels[a - 1, b] = count
                        stack.append((a - 1, b))
                    if a + 1 < nrows and mask[a + 1, b] and labels[a + 1, b] == 0:
                        labels[a + 1, b] = count
                        stack.append((a + 1, b))
                    if b > 0 and mask[a, b - 1] and labels[a, b - 1] == 0:
                        labels[a, b - 1] = count
                        stack.append((a, b - 1))
                    if b + 1 < ncols and mask[a, b + 1] and labels[a, b + 1] == 0:
                        labels[a, b + 1] = count
                        stack.append((a, b + 1))
    return labels, count


def pinch_epsilon(grid: RegionGrid) -> float:
    """Sublevel regularization matched to the grid's resolution at the saddle.

    D_m's two lobes meet E_m's excluded ridge only at the single point
    sigma_m, so the strict sublevel set is separated by a barrier whose
    width shrinks to zero there; any finite grid leaks through it.  Lowering
    the threshold by the quadratic variation of Phi_m over a few cells,
    eps = |a_2| (3 h)^2, restores a barrier wider than one cell while
    removing only an O(h)-radius disk at the saddle, and vanishes as the
    grid refines, so the count below converges to the continuum count.
    """
    sd = saddle_data(grid.u, grid.p)
    dx = grid.xs[1] - grid.xs[0]
    dy = grid.ys[1] - grid.ys[0]
    return abs(sd.a2) * (3.0 * max(dx, dy)) ** 2


def components_d_cap_e(grid: RegionGrid, epsilon: float | None = None) -> int:
    """Number of 4-connected components of D_m within E_m.

    Counted on {Re Phi_m < threshold - epsilon} with the pinch-aware
    default epsilon above; pass epsilon=0.0 for the literal strict mask.
    """
    if epsilon is None:
        epsilon = pinch_epsilon(grid)
    with np.errstate(invalid="ignore"):
        mask = grid.in_e & (grid.re_phi < grid.threshold - epsilon)
    if not mask.any():
        raise DomainError("D_m ∩ E_m is empty on this grid")
    _, count = label_components(mask)
    return count


def band_endpoints_connected(grid: RegionGrid, lower: bool = False) -> bool:
    """Whether b_m^- and b_m^+ fall in one component of R-bar (or R-under)."""
    mask = grid.in_runder if lower else grid.in_rbar
    labels, _ = label_components(mask)
    iy = int(np.argmin(np.abs(grid.ys)))
    candidates = [iy] + [iy - 1, iy + 1]
    left = right = 0
    for row in candidates:
        if 0 <= row < labels.shape[0]:
            if left == 0:
                left = labels[row, 0]
            if right == 0:
                right = labels[row, -1]
    return left != 0 and left == right


# ---------------------------------------------------------------------------
# Closed-form inequality checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FSigmaCheck:
    re_f0: float
    re_f_sigma0: float

    @property
    def f0_positive(self) -> bool:
        return self.re_f0 > 0.0

    @property
    def ordered(self) -> bool:
        return self.re_f0 < self.re_f_sigma0

    @property
    def ok(self) -> bool:
        return self.f0_positive and self.ordered


def check_f_sigma(u: float, p: int) -> FSigmaCheck:
    """Margins of 0 < Re F(0) < Re F(sigma_0)."""
    sd = saddle_data(u, p)
    return FSigmaCheck(
        re_f0=f_zero_value(u, p).real,
        re_f_sigma0=sd.f_sigma0.real,
    )


def c_pm(u: float, p: int, m: int) -> float:
    """c_{p,m}(u) = Li2(-e^{-u-q}) - Li2(-e^{-u+q}) + u q - 2 p pi^2,
    with q = u((6m+5) pi + 2 theta)/(2 p pi); negative throughout (0, kappa]."""
    if not 0.0 < u <= KAPPA:
        raise DomainError(f"u must lie in (0, {KAPPA:.6f}], got {u}")
    theta = varphi(u).imag
    q = u * ((6 * m + 5) * math.pi + 2.0 * theta) / (2.0 * p * math.pi)
    value = (
        li2(-math.exp(-u - q))
        - li2(-math.exp(-u + q))
        + u * q
        - 2.0 * p * math.pi ** 2
    )
    return float(value.real)


def c_pm_derivative_bound() -> float:
    """Upper bound (kappa/2) log(3 + 2 cosh(3 kappa)) - 2 pi^2 = -18.274...

    Bounds the p-derivative (kappa/2p^2) log(3 + 2 cosh(kappa(3 - 1/2p)))
    - 2 pi^2 of c_{p,p-1}(kappa) from above, uniformly in p >= 1.
    """
    return 0.5 * KAPPA * math.log(3.0 + 2.0 * math.cosh(3.0 * KAPPA)) - 2.0 * math.pi ** 2


@dataclass(frozen=True)
class P12Check:
    value: float       # Re Phi_m(P12)
    threshold: float   # Re Phi_m(sigma_m)

    @property
    def ok(self) -> bool:
        return self.value < self.threshold

    @property
    def margin(self) -> float:
        return self.threshold - self.value


def check_f_p12(u: float, p: int, m: int) -> P12Check:
    """Direct evaluation of Re Phi_m(P12) < Re Phi_m(sigma_m)."""
    poly = polygon(m, u, p)
    sd = saddle_data(u, p)
    return P12Check(
        value=phi_m(poly.p12, m, u, p).real,
        threshold=sd.f_sigma0.real,
    )


# ---------------------------------------------------------------------------
# Finite-N endpoint decay
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EndpointDecayReport:
    rows: list  # (k, k/N, Re f_N, margin)

    @property
    def all_ok(self) -> bool:
        return all(r[3] > 0.0 for r in self.rows)


def endpoint_decay(ctx: EvalContext, m: int, delta_grid: float,
                   cfg: QuadratureConfig = DEFAULT_CONFIG) -> EndpointDecayReport:
    """Re f_N at summation points near the ends of (m/p, (m+1)/p).

    Each row reports the margin Re F(sigma_0) - Re f_N((2k+1)/2N - 2m pi i/xi),
    which the endpoint estimates require to be positive.
    """
    if math.gcd(ctx.p, ctx.n) != 1:
        raise DomainError("endpoint decay requires gcd(p, N) = 1")
    sd = saddle_data(ctx.u, ctx.p)
    top = sd.f_sigma0.real
    shift = 2j * m * math.pi / sd.xi
    lo_edge, hi_edge = m / ctx.p, (m + 1) / ctx.p
    rows = []
    for k in k_range(m, ctx):
        t = k / ctx.n
        if t - lo_edge <= delta_grid or hi_edge - t <= delta_grid:
            value = f_n((2 * k + 1) / (2.0 * ctx.n) - shift, ctx, cfg).real
            rows.append((k, t, value, top - value))
    if not rows:
        raise DomainError("no summation points within delta_grid of the interval ends")
    return EndpointDecayReport(rows=rows)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------

def grid_header(grid: RegionGrid, components: int | None = None) -> dict:
    header = {
        "schema": "fig8lab/1",
        "kind": "region-grid",
        "params": {
            "m": grid.m,
            "u": grid.u,
            "p": grid.p,
            "nu": grid.nu,
            "resolution": list(grid.resolution),
            "bounds": list(grid.bounds),
        },
        "sigma_m": [grid.sigma_m.real, grid.sigma_m.imag],
        "threshold": grid.threshold,
    }
    if components is not None:
        header["components_d_cap_e"] = components
    return header


def write_grid_csv(grid: RegionGrid, path) -> None:
    """Cell dump: x, y, rePhi and the five membership flags as 0/1."""
    ny, nx = grid.re_phi.shape
    with open(path, "w") as fh:
        fh.write("x,y,re_phi,in_u,in_e,in_d,in_rbar,in_runder\n")
        for iy in range(ny):
            y = grid.ys[iy]
            for ix in range(nx):
                fh.write(
                    "%.17g,%.17g,%.17g,%d,%d,%d,%d,%d\n"
                    % (
                        grid.xs[ix],
                        y,
                        grid.re_phi[iy, ix],
                        grid.in_u[iy, ix],
                        grid.in_e[iy, ix],
                        grid.in_d[iy, ix],
                        grid.in_rbar[iy, ix],
                        grid.in_runder[iy, ix],
                    )
                )


def write_grid_header(grid: RegionGrid, path, components: int | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(grid_header(grid, components), fh, sort_keys=True)
        fh.write("\n")

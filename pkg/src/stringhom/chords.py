"""Binormal chord spectra of sphere links in Euclidean space.

A binormal chord is a straight segment meeting a submanifold K
perpendicularly at both endpoints; the multiset of chord lengths controls
where length-filtered homology can jump.  K here is a disjoint union of
round (d-1)-spheres embedded affinely in R^(2d-1), which covers the built-in
link configurations and keeps all tangent data closed-form.

Chords are found with the broken-segment model: a path is a polygon
q^0 ... q^nu with endpoints constrained to K, graded by the smoothed length

    L_r = sum_l sqrt(|q^(l+1) - q^l|^2 + r),

whose critical points (as r -> 0) are exactly the binormal chords, traversed
as straight equal-speed polygons.  The search runs in two phases per
component pair: a multistart gradient descent of L_r down a decreasing
r-schedule (each accepted step must not increase L_r nor the largest
smoothed segment, mirroring the confinement property of the continuous
flow), followed by a Gauss-Newton solve of the endpoint perpendicularity
system, which also captures the saddle-type chords that pure descent
cannot converge to.  Results are deduplicated by length, with endpoint
clusters counted as a multiplicity hint for chord families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np


class ChordError(Exception):
    pass


class ParameterOutOfRange(ChordError):
    pass


class DegenerateSegment(ChordError):
    pass


class NoConvergence(ChordError):
    """Descent hit its iteration cap; the best iterate is still returned."""


# -- geometry ----------------------------------------------------------------


class Component:
    """Round unit sphere S^(k-1) affinely embedded in R^n.

    Points are parametrized by their unit preimage u in R^k; the embedding
    is u -> matrix @ u + offset with orthonormal matrix columns, so tangent
    vectors push forward isometrically.
    """

    def __init__(self, matrix, offset, label: str = ""):
        self.matrix = np.asarray(matrix, dtype=float)
        self.offset = np.asarray(offset, dtype=float)
        self.label = label
        n, k = self.matrix.shape
        if self.offset.shape != (n,):
            raise ValueError("offset dimension mismatch")
        gram = self.matrix.T @ self.matrix
        if not np.allclose(gram, np.eye(k), atol=1e-12):
            raise ValueError("embedding matrix must have orthonormal columns")
        self.ambient_dim = n
        self.param_dim = k

    def embed(self, u):
        return np.asarray(u, dtype=float) @ self.matrix.T + self.offset

    def tangent_frame(self, u):
        """Orthonormal basis of the tangent space at embed(u).

        Shape (..., n, k-1): ambient pushforwards of a basis of u-perp,
        computed from the Householder map sending e1 to u.
        """
        u = np.asarray(u, dtype=float)
        basis = _perp_frame(u)
        return np.einsum("nk,...kj->...nj", self.matrix, basis)


def _perp_frame(u):
    """Orthonormal basis of u-perp for batched unit vectors u (..., k)."""
    u = np.asarray(u, dtype=float)
    k = u.shape[-1]
    v = u.copy()
    v[..., 0] -= 1.0
    nrm2 = np.sum(v * v, axis=-1)
    degenerate = nrm2 < 1e-24
    safe = np.where(degenerate, 1.0, nrm2)
    frame = np.broadcast_to(np.eye(k)[:, 1:], u.shape[:-1] + (k, k - 1)).copy()
    frame -= 2.0 * v[..., :, None] * (v[..., None, 1:] / safe[..., None, None])
    if np.any(degenerate):
        frame[degenerate] = np.eye(k)[:, 1:]
    return frame


def _normalize(u):
    return u / np.linalg.norm(u, axis=-1, keepdims=True)


class ParamSubmanifold:
    """Disjoint union of embedded sphere components in a common R^n."""

    def __init__(self, components: Iterable[Component]):
        self.components = list(components)
        if not self.components:
            raise ValueError("need at least one component")
        dims = {c.ambient_dim for c in self.components}
        if len(dims) != 1:
            raise ValueError("components live in different ambient spaces")
        self.ambient_dim = dims.pop()

    def __repr__(self) -> str:
        labels = ",".join(c.label or "?" for c in self.components)
        return f"ParamSubmanifold({labels})"


def builtin_config(name: str, d: int, z2star: float | None = None) -> ParamSubmanifold:
    """The linked and the spaced pair of unit (d-1)-spheres in R^(2d-1)."""
    if d < 2:
        raise ParameterOutOfRange("d must be at least 2")
    n = 2 * d - 1
    e_first = np.zeros((n, d))
    e_first[: d - 1, : d - 1] = np.eye(d - 1)
    e_first[d - 1, d - 1] = 1.0
    if name == "hopf":
        e_second = np.zeros((n, d))
        e_second[d - 1, 0] = 1.0
        e_second[d:, 1:] = np.eye(d - 1)
        offset = np.zeros(n)
        offset[d - 1] = 1.0
        return ParamSubmanifold(
            [
                Component(e_first, np.zeros(n), "K0"),
                Component(e_second, offset, "K1"),
            ]
        )
    if name == "unlink":
        if z2star is None or abs(z2star) <= 2:
            raise ParameterOutOfRange("unlink needs |z2star| > 2")
        offset = np.zeros(n)
        offset[d] = float(abs(z2star))
        return ParamSubmanifold(
            [
                Component(e_first, np.zeros(n), "K0"),
                Component(e_first, offset, "K2"),
            ]
        )
    raise ParameterOutOfRange(f"unknown builtin config {name!r}")


def single_sphere(d: int) -> ParamSubmanifold:
    """One unit (d-1)-sphere in R^(2d-1); its only chords are diameters."""
    if d < 2:
        raise ParameterOutOfRange("d must be at least 2")
    n = 2 * d - 1
    e_first = np.zeros((n, d))
    e_first[: d - 1, : d - 1] = np.eye(d - 1)
    e_first[d - 1, d - 1] = 1.0
    return ParamSubmanifold([Component(e_first, np.zeros(n), "K0")])


# -- configuration and path types --------------------------------------------


def _default_r_schedule() -> tuple:
    return tuple(10.0 ** (-k) for k in range(2, 11))


@dataclass
class ChordConfig:
    nu: int = 16
    r_schedule: tuple = field(default_factory=_default_r_schedule)
    grad_tol: float = 1e-9
    dedup_len_tol: float = 1e-7
    dedup_pt_tol: float = 5e-2
    length_bound: float | None = None
    epsilon_g: float | None = None
    b0: float | None = None
    eps_min: float = 1e-3
    seeds_per_circle: int = 24
    seeds_per_sphere: int = 36
    rng_seed: int = 0
    max_iter_per_stage: int = 40
    descent_stage_tol: float = 1e-4
    descent_seed_cap: int = 256
    gn_iterations: int = 40

    def __post_init__(self):
        if self.nu < 1:
            raise ParameterOutOfRange("nu must be positive")
        sched = tuple(float(r) for r in self.r_schedule)
        if not sched or any(r <= 0 for r in sched):
            raise ParameterOutOfRange("r_schedule must be positive")
        if any(a <= b for a, b in zip(sched, sched[1:])):
            raise ParameterOutOfRange("r_schedule must be strictly decreasing")
        self.r_schedule = sched
        for name in ("grad_tol", "dedup_len_tol", "dedup_pt_tol", "eps_min"):
            if getattr(self, name) <= 0:
                raise ParameterOutOfRange(f"{name} must be positive")

    def resolved_bounds(self) -> tuple[float, float, float]:
        """(length_bound, b0, epsilon_g) with defaults filled in."""
        bound = self.length_bound if self.length_bound is not None else np.inf
        b0 = self.b0 if self.b0 is not None else (bound + 2 if np.isfinite(bound) else 64.0)
        eps_g = self.epsilon_g if self.epsilon_g is not None else 4.0 * b0 / self.nu
        return float(bound), float(b0), float(eps_g)


class BrokenPath:
    """Polygonal path with endpoints on two (possibly equal) components."""

    def __init__(self, manifold, comp0: int, comp1: int, u0, u1, points):
        self.manifold = manifold
        self.comp0 = comp0
        self.comp1 = comp1
        self.u0 = _normalize(np.asarray(u0, dtype=float))
        self.u1 = _normalize(np.asarray(u1, dtype=float))
        self.points = np.array(points, dtype=float)
        self.converged = True
        c0 = manifold.components[comp0]
        c1 = manifold.components[comp1]
        if not np.allclose(self.points[0], c0.embed(self.u0), atol=1e-9):
            raise ValueError("first point must equal the embedded start parameter")
        if not np.allclose(self.points[-1], c1.embed(self.u1), atol=1e-9):
            raise ValueError("last point must equal the embedded end parameter")

    @property
    def nu(self) -> int:
        return len(self.points) - 1

    def segment_lengths(self):
        return np.linalg.norm(np.diff(self.points, axis=0), axis=1)

    def polygonal_length(self) -> float:
        return float(self.segment_lengths().sum())

    def copy_with_points(self, points) -> "BrokenPath":
        return BrokenPath(
            self.manifold, self.comp0, self.comp1, self.u0, self.u1, points
        )


def straight_path(
    manifold: ParamSubmanifold, comp0: int, comp1: int, u0, u1, nu: int
) -> BrokenPath:
    p0 = manifold.components[comp0].embed(u0)
    p1 = manifold.components[comp1].embed(u1)
    t = np.linspace(0.0, 1.0, nu + 1)[:, None]
    return BrokenPath(manifold, comp0, comp1, u0, u1, (1 - t) * p0 + t * p1)


@dataclass
class ChordResult:
    comp_source: int
    comp_target: int
    u0: np.ndarray
    u1: np.ndarray
    length: float
    residual: float
    multiplicity: int
    points: np.ndarray

    def as_json_dict(self) -> dict:
        return {
            "components": [self.comp_source, self.comp_target],
            "theta0": [float(x) for x in self.u0],
            "theta1": [float(x) for x in self.u1],
            "length": self.length,
            "residual": self.residual,
            "multiplicity": self.multiplicity,
        }


# -- smoothed length and its gradient -----------------------------------------


def l_r_value(path: BrokenPath, r: float) -> float:
    if r <= 0:
        raise ParameterOutOfRange("r must be positive")
    d = np.diff(path.points, axis=0)
    return float(np.sum(np.sqrt(np.sum(d * d, axis=1) + r)))


def _batch_lr(points, r):
    d = np.diff(points, axis=1)
    h = np.sum(d * d, axis=2)
    seg = np.sqrt(h + r)
    return seg.sum(axis=1), seg.max(axis=1), d, seg


def _batch_gradient(manifold, comp0, comp1, u0, u1, points, r):
    """Interior gradient plus tangent-projected endpoint gradients."""
    total, fmax, d, seg = _batch_lr(points, r)
    w = 1.0 / seg
    g_all = np.zeros_like(points)
    g_all[:, 1:, :] += d * w[:, :, None]
    g_all[:, :-1, :] -= d * w[:, :, None]
    c0 = manifold.components[comp0]
    c1 = manifold.components[comp1]
    gu0 = g_all[:, 0, :] @ c0.matrix
    gu1 = g_all[:, -1, :] @ c1.matrix
    gu0 -= np.sum(gu0 * u0, axis=1, keepdims=True) * u0
    gu1 -= np.sum(gu1 * u1, axis=1, keepdims=True) * u1
    g_int = g_all[:, 1:-1, :]
    return total, fmax, g_int, gu0, gu1


def l_r_gradient(path: BrokenPath, r: float):
    """Analytic gradient of l_r_value with endpoints constrained to K.

    Returns (interior, g_u0, g_u1): ambient vectors for the free points and
    sphere-tangent vectors for the two endpoint parameters.
    """
    if r <= 0:
        raise ParameterOutOfRange("r must be positive")
    total, fmax, g_int, gu0, gu1 = _batch_gradient(
        path.manifold,
        path.comp0,
        path.comp1,
        path.u0[None, :],
        path.u1[None, :],
        path.points[None, :, :],
        r,
    )
    return g_int[0], gu0[0], gu1[0]


def _grad_norm(g_int, gu0, gu1):
    return np.sqrt(
        np.sum(g_int * g_int, axis=(1, 2))
        + np.sum(gu0 * gu0, axis=1)
        + np.sum(gu1 * gu1, axis=1)
    )


class _DescentState:
    """Batched projected gradient descent with monotone step acceptance.

    A step is accepted only if L_r strictly decreases and the largest
    smoothed segment does not grow; both traces are therefore nonincreasing
    along accepted steps by construction, and ``violations`` stays zero
    unless that invariant is broken by a numerical fault.
    """

    def __init__(self, manifold, comp0, comp1, u0, u1, points):
        self.manifold = manifold
        self.comp0 = comp0
        self.comp1 = comp1
        self.u0 = u0.copy()
        self.u1 = u1.copy()
        self.points = points.copy()
        self.step = np.full(len(points), 0.1)
        self.violations = 0

    def run_stage(self, r, grad_tol, max_iter, history=None):
        c0 = self.manifold.components[self.comp0]
        c1 = self.manifold.components[self.comp1]
        gnorm = None
        for _ in range(max_iter):
            lr, fmax, g_int, gu0, gu1 = _batch_gradient(
                self.manifold, self.comp0, self.comp1, self.u0, self.u1, self.points, r
            )
            gnorm = _grad_norm(g_int, gu0, gu1)
            active = (gnorm > grad_tol) & (self.step > 1e-15)
            if not np.any(active):
                break
            s = np.where(active, self.step, 0.0)[:, None]
            new_u0 = _normalize(self.u0 - s * gu0)
            new_u1 = _normalize(self.u1 - s * gu1)
            new_points = self.points.copy()
            new_points[:, 1:-1, :] -= s[:, :, None] * g_int
            new_points[:, 0, :] = c0.embed(new_u0)
            new_points[:, -1, :] = c1.embed(new_u1)
            new_lr, new_f, _, _ = _batch_lr(new_points, r)
            accept = active & (new_lr < lr) & (new_f <= fmax)
            if np.any(accept & ((new_lr > lr) | (new_f > fmax))):
                self.violations += 1
            self.u0[accept] = new_u0[accept]
            self.u1[accept] = new_u1[accept]
            self.points[accept] = new_points[accept]
            self.step[accept] = np.minimum(self.step[accept] * 1.3, 1.0)
            shrink = active & ~accept
            self.step[shrink] *= 0.5
            if history is not None and bool(accept[0]):
                history.append((float(new_lr[0]), float(new_f[0])))
        if gnorm is None:
            _, _, g_int, gu0, gu1 = _batch_gradient(
                self.manifold, self.comp0, self.comp1, self.u0, self.u1, self.points, r
            )
            gnorm = _grad_norm(g_int, gu0, gu1)
        return gnorm


def descend(path: BrokenPath, r: float, cfg: ChordConfig, history: list | None = None) -> BrokenPath:
    """Gradient descent of L_r for one path; accepted steps are monotone.

    The returned path carries ``converged`` (gradient below cfg.grad_tol).
    ``history`` (optional list) receives one (L_r, max smoothed segment)
    pair per accepted step.
    """
    if r <= 0:
        raise ParameterOutOfRange("r must be positive")
    state = _DescentState(
        path.manifold,
        path.comp0,
        path.comp1,
        path.u0[None, :],
        path.u1[None, :],
        path.points[None, :, :],
    )
    gnorm = state.run_stage(r, cfg.grad_tol, cfg.max_iter_per_stage * 4, history=history)
    out = BrokenPath(
        path.manifold, path.comp0, path.comp1, state.u0[0], state.u1[0], state.points[0]
    )
    out.converged = bool(gnorm[0] <= cfg.grad_tol)
    return out


def refine(path: BrokenPath) -> BrokenPath:
    """Insert segment midpoints: 2*nu segments, same polygonal length."""
    pts = path.points
    mids = 0.5 * (pts[:-1] + pts[1:])
    new = np.empty((2 * path.nu + 1, pts.shape[1]))
    new[0::2] = pts
    new[1::2] = mids
    return path.copy_with_points(new)


def binormality_residual(path: BrokenPath) -> float:
    """Deviation from chord criticality.

    Maximum of: consecutive unit-direction mismatches, chord-tangency
    inner products at both endpoints, and the segment-length spread.
    Zero exactly on straight equally-spaced binormal chords.
    """
    seg = np.diff(path.points, axis=0)
    lens = np.linalg.norm(seg, axis=1)
    eps = 1e-3 / max(path.nu, 1)
    if np.any(lens <= eps):
        raise DegenerateSegment("segment shorter than eps_min/nu")
    dirs = seg / lens[:, None]
    turn = 0.0
    if len(dirs) > 1:
        turn = float(np.max(np.linalg.norm(dirs[1:] - dirs[:-1], axis=1)))
    c0 = path.manifold.components[path.comp0]
    c1 = path.manifold.components[path.comp1]
    f0 = c0.tangent_frame(path.u0)
    f1 = c1.tangent_frame(path.u1)
    t0 = float(np.max(np.abs(dirs[0] @ f0))) if f0.shape[-1] else 0.0
    t1 = float(np.max(np.abs(dirs[-1] @ f1))) if f1.shape[-1] else 0.0
    spread = float(lens.max() - lens.min())
    return max(turn, t0, t1, spread)


# -- multistart search --------------------------------------------------------


def _circle_points(n: int):
    ang = 2.0 * np.pi * np.arange(n) / n
    return np.stack([np.cos(ang), np.sin(ang)], axis=1)


def _fibonacci_sphere(n: int):
    i = np.arange(n) + 0.5
    phi = np.arccos(1 - 2 * i / n)
    golden = np.pi * (1 + 5**0.5)
    theta = golden * i
    return np.stack(
        [np.sin(phi) * np.cos(theta), np.sin(phi) * np.sin(theta), np.cos(phi)], axis=1
    )


def _component_grid(comp: Component, cfg: ChordConfig):
    k = comp.param_dim
    if k == 2:
        return _circle_points(cfg.seeds_per_circle)
    if k == 3:
        return _fibonacci_sphere(cfg.seeds_per_sphere)
    rng = np.random.default_rng(cfg.rng_seed + 7 * k)
    return _normalize(rng.standard_normal((cfg.seeds_per_sphere, k)))


def _gauss_newton(manifold, comp0, comp1, u0, u1, iterations):
    """Batched Gauss-Newton on the endpoint perpendicularity system.

    Variables are tangent coordinates of (u0, u1); residuals are the inner
    products of the unit chord direction with the tangent frames at both
    ends.  Square system: (k0-1)+(k1-1) equations in as many unknowns.
    """
    c0 = manifold.components[comp0]
    c1 = manifold.components[comp1]
    t0 = c0.param_dim - 1
    t1 = c1.param_dim - 1
    m = t0 + t1
    u0 = u0.copy()
    u1 = u1.copy()
    alive = np.ones(len(u0), dtype=bool)

    def residual(a0, a1):
        p0 = c0.embed(a0)
        p1 = c1.embed(a1)
        chord = p1 - p0
        dist = np.linalg.norm(chord, axis=1)
        ok = dist > 1e-9
        dirs = chord / np.where(ok, dist, 1.0)[:, None]
        f0 = c0.tangent_frame(a0)
        f1 = c1.tangent_frame(a1)
        r0 = np.einsum("sn,snj->sj", dirs, f0)
        r1 = np.einsum("sn,snj->sj", dirs, f1)
        return np.concatenate([r0, r1], axis=1), ok

    h = 1e-7
    work = np.arange(len(u0))
    for _ in range(iterations):
        res, ok = residual(u0[work], u1[work])
        alive[work] &= ok
        # Freeze seeds that are done (or dead) and compact the batch.
        resnorm_w = np.max(np.abs(res), axis=1)
        busy = alive[work] & (resnorm_w > 1e-14)
        if not np.any(busy):
            break
        work = work[busy]
        res = res[busy]
        w0, w1 = u0[work], u1[work]
        jac = np.empty((len(work), m, m))
        f0 = _perp_frame(w0)
        f1 = _perp_frame(w1)
        for col in range(m):
            if col < t0:
                pert0 = _normalize(w0 + h * f0[:, :, col])
                pert1 = w1
            else:
                pert0 = w0
                pert1 = _normalize(w1 + h * f1[:, :, col - t0])
            res_p, _ = residual(pert0, pert1)
            jac[:, :, col] = (res_p - res) / h
        jtj = np.einsum("sij,sik->sjk", jac, jac)
        jtr = np.einsum("sij,si->sj", jac, res)
        jtj += 1e-12 * np.eye(m)
        try:
            delta = -np.linalg.solve(jtj, jtr[:, :, None])[:, :, 0]
        except np.linalg.LinAlgError:
            delta = -np.stack(
                [np.linalg.lstsq(jtj[s], jtr[s], rcond=None)[0] for s in range(len(work))]
            )
        delta = np.clip(delta, -0.5, 0.5)
        step0 = np.einsum("skj,sj->sk", f0, delta[:, :t0])
        step1 = np.einsum("skj,sj->sk", f1, delta[:, t0:])
        u0[work] = _normalize(w0 + step0)
        u1[work] = _normalize(w1 + step1)
    res, ok = residual(u0, u1)
    alive &= ok
    resnorm = np.max(np.abs(res), axis=1)
    return u0, u1, resnorm, alive


def _pair_candidates(manifold, i, j, cfg: ChordConfig, diagnostics: dict):
    """Endpoint candidates for one ordered component pair."""
    g0 = _component_grid(manifold.components[i], cfg)
    g1 = _component_grid(manifold.components[j], cfg)
    u0 = np.repeat(g0, len(g1), axis=0)
    u1 = np.tile(g1, (len(g0), 1))
    if i == j:
        keep = np.linalg.norm(
            manifold.components[i].embed(u0) - manifold.components[j].embed(u1), axis=1
        ) > max(cfg.eps_min, 1e-3)
        u0, u1 = u0[keep], u1[keep]
    if len(u0) == 0:
        return np.zeros((0, g0.shape[1])), np.zeros((0, g1.shape[1])), np.zeros(0)
    diagnostics["seeds"] = diagnostics.get("seeds", 0) + len(u0)

    # Phase 1: smoothed-length descent along the r-schedule (the flow model).
    # The descent batch is capped by a deterministic stride: the Gauss-Newton
    # phase below restarts from the full raw grid, so coverage does not
    # depend on descending every seed.
    stride = max(1, -(-len(u0) // cfg.descent_seed_cap))
    d0, d1 = u0[::stride].copy(), u1[::stride].copy()
    t = np.linspace(0.0, 1.0, cfg.nu + 1)[None, :, None]
    p0 = manifold.components[i].embed(d0)
    p1 = manifold.components[j].embed(d1)
    points = (1 - t) * p0[:, None, :] + t * p1[:, None, :]
    state = _DescentState(manifold, i, j, d0, d1, points)
    # The Gauss-Newton phase supplies the final precision, so each descent
    # stage only needs to settle to a loose tolerance.
    stage_tol = max(cfg.grad_tol, cfg.descent_stage_tol)
    for r in cfg.r_schedule:
        state.run_stage(r, stage_tol, cfg.max_iter_per_stage)
    diagnostics["descent_violations"] = (
        diagnostics.get("descent_violations", 0) + state.violations
    )

    # Phase 2: Gauss-Newton criticality solve, from the raw grid (reaches
    # saddle-type chords) and from the descended endpoints (polish).
    cand0 = np.concatenate([u0, state.u0], axis=0)
    cand1 = np.concatenate([u1, state.u1], axis=0)
    out0, out1, resnorm, alive = _gauss_newton(manifold, i, j, cand0, cand1, cfg.gn_iterations)
    good = alive & (resnorm < cfg.grad_tol) & ~np.any(np.isnan(out0), axis=1)
    diagnostics["converged"] = diagnostics.get("converged", 0) + int(np.sum(good[: len(u0)]))
    diagnostics["failed"] = diagnostics.get("failed", 0) + int(np.sum(~good[: len(u0)]))
    return out0[good], out1[good], resnorm[good]


def find_spectrum(
    manifold: ParamSubmanifold, cfg: ChordConfig, diagnostics: dict | None = None
) -> list[ChordResult]:
    """Multistart search for all binormal chords below the length bound.

    Runs every ordered component pair, rebuilds each converged chord as a
    straight nu-segment path, filters by the residual and length windows,
    and deduplicates by length (clustered endpoints are reported as the
    multiplicity).  Returns results sorted by length.
    """
    diagnostics = diagnostics if diagnostics is not None else {}
    bound, b0, eps_g = cfg.resolved_bounds()
    ncomp = len(manifold.components)
    found: list[tuple] = []
    for i in range(ncomp):
        for j in range(ncomp):
            u0s, u1s, resnorms = _pair_candidates(manifold, i, j, cfg, diagnostics)
            if len(u0s) == 0:
                continue
            p0 = manifold.components[i].embed(u0s)
            p1 = manifold.components[j].embed(u1s)
            lens = np.linalg.norm(p1 - p0, axis=1)
            # Window, total-length cap and per-segment cap of the model.
            keep = (
                (lens >= cfg.eps_min)
                & (lens < min(bound, b0))
                & (lens / cfg.nu < eps_g)
            )
            for s in np.flatnonzero(keep):
                found.append((float(lens[s]), i, j, u0s[s], u1s[s], float(resnorms[s])))
    found.sort(key=lambda t: t[0])

    results: list[ChordResult] = []
    group: list[tuple] = []

    def flush():
        if not group:
            return
        reps: list[np.ndarray] = []
        for item in group:
            key = np.concatenate([item[3], item[4]])
            for rkey in reps:
                if len(rkey) == len(key) and np.max(np.abs(key - rkey)) < cfg.dedup_pt_tol:
                    break
            else:
                reps.append(key)
        best = group[0]
        path = straight_path(manifold, best[1], best[2], best[3], best[4], cfg.nu)
        residual = max(binormality_residual(path), max(g[5] for g in group))
        results.append(
            ChordResult(
                comp_source=best[1],
                comp_target=best[2],
                u0=best[3],
                u1=best[4],
                length=float(np.median([g[0] for g in group])),
                residual=float(residual),
                multiplicity=len(reps),
                points=path.points,
            )
        )

    for item in found:
        if group and item[0] - group[-1][0] > cfg.dedup_len_tol:
            flush()
            group = []
        group.append(item)
    flush()
    total = diagnostics.get("seeds", 0)
    diagnostics["failure_rate"] = (
        diagnostics.get("failed", 0) / total if total else 0.0
    )
    return results


def chord_sum_spectrum(lengths: list[float], m: int, a: float, tol: float = 1e-7) -> list[float]:
    """All m-fold sums of chord lengths below a, sorted and deduplicated."""
    if m < 1:
        raise ParameterOutOfRange("m must be at least 1")
    if a <= 0:
        raise ParameterOutOfRange("a must be positive")
    from itertools import combinations_with_replacement

    sums = sorted(
        s
        for combo in combinations_with_replacement(sorted(lengths), m)
        if (s := float(sum(combo))) < a
    )
    out: list[float] = []
    for s in sums:
        if not out or s - out[-1] > tol:
            out.append(s)
    return out

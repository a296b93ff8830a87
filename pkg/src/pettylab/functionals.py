"""Affine invariants and tuple functionals of the projection-body calculus.

The central quantity is the direction ratio

    ratio(K, x) = h_{Pi^2 K}(x) / (h_K(x) * V(K))        (d = 3)

whose extrema over the sphere are the invariants M(K) and m(K); P(K) is
V(Pi K)/V(K)^2 and Q(K) is the sharpest slice-integral lower bound for P.
The two quadrilinear forms s_term/t_term drive the sharp constant 4/3: their
symmetrizations satisfy t_sym <= (4/3) s_sym, which is equivalent to the
zonoid bound M <= 8.

Index convention: s_sym/t_sym sum over the 24 permutations of the four
vector arguments (distinct indices).  The bridging identity

    ratio(Z, x) = 6 * sum_{tuples} t_term / sum_{tuples} s_term

over ordered generator 4-tuples fixes the normalization; the cube calibrates
the constant (8 = 6 * 4/3).
"""

import itertools
import math

import numpy as np
from scipy.optimize import minimize

from .bodies import Ball
from .errors import FlatBodyError, InputError, SymmetryError
from .geom import (Polytope, adaptive_simpson, as_vec, fibonacci_sphere,
                   slice_quadratics, support, support_batch, unitize)
from .revolution import RevolutionBody, axis_ratio, rev_to_polytope
from .zonotope import (GeneratorSet, is_flat, pair_crosses, polytope_projection_body,
                       projection_body, z_shadow_area_batch, z_support,
                       z_support_batch, z_volume)

BALL_RATIO = 3.0 * math.pi ** 2 / 4.0  # Pi^2 B = pi^3 B, V(B) = 4pi/3

_PERMS4 = np.array(list(itertools.permutations(range(4))))


def s_term(a, b, c, w, x):
    """|det(a, b, c)| * |<w, x>| for 3-vectors."""
    a, b, c, w, x = (as_vec(v, 3) for v in (a, b, c, w, x))
    return abs(float(np.dot(np.cross(a, b), c))) * abs(float(np.dot(w, x)))


def t_term(a, b, c, w, x):
    """|det(a x b, c x w, x)| for 3-vectors."""
    a, b, c, w, x = (as_vec(v, 3) for v in (a, b, c, w, x))
    return abs(float(np.dot(np.cross(np.cross(a, b), np.cross(c, w)), x)))


def s_sym(x1, x2, x3, x4, x):
    """Sum of s_term over the 24 argument permutations; symmetric in x1..x4."""
    vs = [as_vec(v, 3) for v in (x1, x2, x3, x4)]
    x = as_vec(x, 3)
    return sum(s_term(vs[p[0]], vs[p[1]], vs[p[2]], vs[p[3]], x) for p in _PERMS4)


def t_sym(x1, x2, x3, x4, x):
    """Sum of t_term over the 24 argument permutations; symmetric in x1..x4."""
    vs = [as_vec(v, 3) for v in (x1, x2, x3, x4)]
    x = as_vec(x, 3)
    return sum(t_term(vs[p[0]], vs[p[1]], vs[p[2]], vs[p[3]], x) for p in _PERMS4)


def ts_ratio(x1, x2, x3, x4, x):
    """t_sym / s_sym, or None when s_sym vanishes (then t_sym vanishes too)."""
    s = s_sym(x1, x2, x3, x4, x)
    if s <= 0.0:
        return None
    return t_sym(x1, x2, x3, x4, x) / s


def ts_ratio_batch(tuples, xs):
    """Vectorized t_sym/s_sym for (B, 4, 3) tuples and (B, 3) directions.

    Entries with s_sym = 0 come back as NaN.
    """
    v = np.asarray(tuples, dtype=float)
    x = np.asarray(xs, dtype=float)
    s_tot = np.zeros(v.shape[0])
    t_tot = np.zeros(v.shape[0])
    for p in _PERMS4:
        a, b, c, w = v[:, p[0]], v[:, p[1]], v[:, p[2]], v[:, p[3]]
        s_tot += np.abs(np.einsum("ij,ij->i", np.cross(a, b), c)
                        * np.einsum("ij,ij->i", w, x))
        t_tot += np.abs(np.einsum("ij,ij->i", np.cross(np.cross(a, b), np.cross(c, w)), x))
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(s_tot > 0.0, t_tot / s_tot, np.nan)


# --- support / volume dispatch over the body union ---------------------------

def body_volume(B):
    if isinstance(B, GeneratorSet):
        return z_volume(B)
    if isinstance(B, Polytope):
        return B.volume
    if isinstance(B, Ball):
        return 4.0 * math.pi / 3.0
    if isinstance(B, RevolutionBody):
        from .revolution import rev_volume
        return rev_volume(B)
    raise InputError(f"unsupported body type {type(B).__name__}")


def body_support(B, x):
    if isinstance(B, GeneratorSet):
        return z_support(B, x)
    if isinstance(B, Polytope):
        return support(B, x)
    if isinstance(B, Ball):
        return float(np.linalg.norm(as_vec(x, 3)))
    raise InputError(f"no support evaluation for {type(B).__name__}")


def _require_solid(B):
    if isinstance(B, GeneratorSet) and is_flat(B):
        raise FlatBodyError("zonotope is flat")
    if isinstance(B, Polytope) and B.volume <= 0.0:
        raise FlatBodyError("polytope is flat")


# --- mixed volumes and polars -------------------------------------------------

def mixed_volume(K, L):
    """V(K, L, L) = (1/3) * integral of h_K against the surface measure of L.

    L must be solid; its facets are enumerated directly (triangles of a
    polytope, cross-product parallelogram pairs of a zonotope).  K enters
    only through its support values, so K may be a polytope or zonotope.
    """
    def h(x):
        return body_support(K, x)

    if isinstance(L, Polytope):
        total = sum(h(n) * a for n, a in zip(L.facet_normals, L.facet_areas))
        return total / 3.0
    if isinstance(L, GeneratorSet):
        if is_flat(L):
            raise FlatBodyError("surface measure of a flat zonotope")
        c = pair_crosses(L, drop_zero=True)
        # each pair spans antipodal facets of area 4|c|, normals +-c/|c|
        total = sum(4.0 * (h(ci) + h(-ci)) for ci in c)
        return total / 3.0
    raise InputError("mixed volume needs a polytope or zonotope as second argument")


def polar_volume(B, grid=100_000):
    """Volume of the polar body via (1/3) * mean over S^2 of h^{-3} * 4*pi.

    Quadrature on a Fibonacci grid of at least 1e5 points; documented
    accuracy target is 1% relative.  Bodies must contain the origin in the
    interior.
    """
    if isinstance(B, Ball):
        return 4.0 * math.pi / 3.0
    grid = max(int(grid), 100_000)
    U = fibonacci_sphere(grid).points
    if isinstance(B, GeneratorSet):
        h = z_support_batch(B, U)
    elif isinstance(B, Polytope):
        h = support_batch(B, U)
    else:
        raise InputError(f"no polar volume for {type(B).__name__}")
    scale = float(np.max(h))
    if scale <= 0.0 or np.min(h) <= 1e-12 * scale:
        raise InputError("body must contain the origin in its interior")
    return float(4.0 * math.pi / (3.0 * grid) * np.sum(h ** -3.0))


# --- the direction ratio and its extrema --------------------------------------

def _second_support_weights(B):
    """Pair-cross matrix W with h_{Pi^2 B}(x) = 4 * sum |W @ x| (d = 3).

    Cached on the body: extremization calls this once per direction batch.
    """
    cached = getattr(B, "_second_weights", None)
    if cached is not None:
        return cached
    if isinstance(B, GeneratorSet):
        c = pair_crosses(B, drop_zero=True)
        # Pi B has generators 4c; absorb the factor into the weights
        w = pair_crosses(GeneratorSet(4.0 * c))
    elif isinstance(B, Polytope):
        pb = polytope_projection_body(B, merge_antipodal=True)
        w = pair_crosses(pb, drop_zero=True)
    else:
        raise InputError(f"no projection-body pipeline for {type(B).__name__}")
    B._second_weights = w
    return w


def ratio_batch(B, X):
    """ratio(B, x) for each row of X, via one pass over the pair-cross matrix."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if isinstance(B, Ball):
        return np.full(X.shape[0], BALL_RATIO)
    _require_solid(B)
    vol = body_volume(B)
    W = _second_support_weights(B)
    num = 4.0 * np.sum(np.abs(W @ X.T), axis=0)
    if isinstance(B, GeneratorSet):
        den = z_support_batch(B, X) * vol
    else:
        den = support_batch(B, X) * vol
    if np.any(den <= 0.0):
        raise InputError("support must be positive in every requested direction")
    return num / den


def ratio(B, x):
    """h_{Pi^2 B}(x) / (h_B(x) * V(B)) for a solid symmetric 3-D body.

    Zonotopes and polytopes evaluate exactly through the projection-body
    pipeline; the ball is analytic; revolution bodies use the closed axis
    form when x is the axis and a polytopal realization otherwise.
    """
    if isinstance(B, RevolutionBody):
        x = as_vec(x, 3)
        axis = np.array([0.0, 0.0, 1.0])
        if B.d != 3:
            raise InputError("direction ratios for revolution bodies need d = 3")
        cosang = abs(np.dot(unitize(x), axis))
        if cosang >= 1.0 - 1e-12:
            return axis_ratio(B)
        return ratio(rev_to_polytope(B), x)
    if isinstance(B, Polytope) and not B.symmetric:
        raise SymmetryError("direction ratio requires a symmetric body")
    return float(ratio_batch(B, np.asarray(x, dtype=float)[None, :])[0])


def q_direction(B, x):
    """Slice functional 4 * (int sqrt(V_2(slice)) ds)^2 / (h_B(x) V(B)).

    The inner integral runs over the full height range of the body along x;
    section areas are piecewise quadratic between vertex heights and each
    piece is integrated by adaptive Simpson (abs tol 1e-9).
    """
    if isinstance(B, Ball):
        return BALL_RATIO  # int sqrt(pi(1-s^2)) = sqrt(pi) pi/2
    if isinstance(B, RevolutionBody):
        return axis_ratio(B) if B.d == 3 else _raise_dim()
    if isinstance(B, GeneratorSet):
        from .zonotope import zonotope_vertices
        from .geom import convex_hull
        B = convex_hull(zonotope_vertices(B), symmetric=True)
    u = unitize(x)
    breaks, coeffs = slice_quadratics(B, u)
    integral = 0.0
    for k in range(breaks.size - 1):
        c0, c1, c2 = coeffs[k]
        f = lambda s: math.sqrt(max(c0 + c1 * s + c2 * s * s, 0.0))
        integral += adaptive_simpson(f, breaks[k], breaks[k + 1], tol=1e-9)
    # even support convention (max |<x, y>|) so asymmetric bodies work too
    h = max(support(B, u), support(B, -u))
    return 4.0 * integral * integral / (h * B.volume)


def _raise_dim():
    raise InputError("slice functional for revolution bodies needs d = 3")


def petty_value(B):
    """P(B) = V(Pi B) / V(B)^2, exact for zonotopes and polytopes."""
    if isinstance(B, Ball):
        return BALL_RATIO  # conjectured minimum value, exact for the ball
    if isinstance(B, RevolutionBody):
        if B.d != 3:
            raise InputError("P for revolution bodies is realized at d = 3")
        B = rev_to_polytope(B)
    _require_solid(B)
    if isinstance(B, GeneratorSet):
        pb = projection_body(B)
    else:
        pb = polytope_projection_body(B, merge_antipodal=True)
    return z_volume(pb) / body_volume(B) ** 2


def candidate_directions(B):
    """Structured candidate extremizers: axes, facet normals, vertex rays, crosses."""
    cands = [np.eye(3)]
    if isinstance(B, GeneratorSet):
        g = B.gens
        cands.append(g)
        cands.append(pair_crosses(B, drop_zero=True))
    elif isinstance(B, Polytope):
        cands.append(B.facet_normals)
        cands.append(B.vertices)
    arr = np.vstack(cands)
    norms = np.linalg.norm(arr, axis=1)
    arr = arr[norms > 0.0] / norms[norms > 0.0, None]
    return arr


def _chart_refine(fn, x0, v0, maximize, steps):
    """Polish an extremum on S^2 with Nelder-Mead in a local 2-D chart."""
    if steps <= 0:
        return x0, v0
    x0 = unitize(x0)
    # orthonormal frame spanning the tangent plane at x0
    a = np.array([1.0, 0.0, 0.0]) if abs(x0[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    u = unitize(np.cross(x0, a))
    w = np.cross(x0, u)
    sign = -1.0 if maximize else 1.0

    def obj(th):
        return sign * fn(unitize(x0 + th[0] * u + th[1] * w))

    res = minimize(obj, np.zeros(2), method="Nelder-Mead",
                   options={"maxiter": steps, "xatol": 1e-9, "fatol": 1e-12,
                            "initial_simplex": np.array([[0.0, 0.0], [0.04, 0.0], [0.0, 0.04]])})
    xr = unitize(x0 + res.x[0] * u + res.x[1] * w)
    vr = sign * res.fun
    if (vr > v0) if maximize else (vr < v0):
        return xr, float(vr)
    return x0, v0


class InvariantReport:
    """P, M, m, Q of a body with attaining directions and search diagnostics."""

    def __init__(self, P, M, m, Q, M_dir, m_dir, Q_dir, grid, refine, near_cone_equality):
        self.P = P
        self.M = M
        self.m = m
        self.Q = Q
        self.M_dir = M_dir
        self.m_dir = m_dir
        self.Q_dir = Q_dir
        self.grid = grid
        self.refine = refine
        self.near_cone_equality = near_cone_equality

    def as_dict(self):
        return {
            "P": self.P, "M": self.M, "m": self.m, "Q": self.Q,
            "M_dir": None if self.M_dir is None else list(self.M_dir),
            "m_dir": None if self.m_dir is None else list(self.m_dir),
            "Q_dir": None if self.Q_dir is None else list(self.Q_dir),
            "grid": self.grid, "refine": self.refine,
            "near_cone_equality": self.near_cone_equality,
        }


def invariants(B, grid=2048, refine=50, want=("P", "M", "m", "Q")):
    """Invariant report: P exactly, M/m/Q extremized on a grid plus refinement.

    The grid is a Fibonacci sphere of the given resolution augmented with
    structured candidate directions (axes, normals, vertex rays, generator
    crosses), so symmetric fixtures attain their exact extremal directions.
    M and m require a symmetric body.
    """
    want = set(want)
    if isinstance(B, RevolutionBody):
        if B.d != 3:
            raise InputError("invariant reports for revolution bodies need d = 3")
        B = rev_to_polytope(B)
    _require_solid(B)
    if isinstance(B, Ball):
        v = BALL_RATIO
        return InvariantReport(v, v, v, v, None, None, None, grid, refine, False)
    symmetric = isinstance(B, GeneratorSet) or (isinstance(B, Polytope) and B.symmetric)
    if ("M" in want or "m" in want) and not symmetric:
        raise SymmetryError("M and m are defined for symmetric bodies")

    P = petty_value(B) if "P" in want else None
    X = np.vstack([fibonacci_sphere(grid).points, candidate_directions(B)])

    M = m = Q = None
    M_dir = m_dir = Q_dir = None
    if "M" in want or "m" in want:
        vals = ratio_batch(B, X)
        iM, im = int(np.argmax(vals)), int(np.argmin(vals))
        fn = lambda x: float(ratio_batch(B, x[None, :])[0])
        if "M" in want:
            M_dir, M = _chart_refine(fn, X[iM], float(vals[iM]), True, refine)
        if "m" in want:
            m_dir, m = _chart_refine(fn, X[im], float(vals[im]), False, refine)
    if "Q" in want:
        if isinstance(B, GeneratorSet):
            from .zonotope import zonotope_vertices
            from .geom import convex_hull
            Bq = convex_hull(zonotope_vertices(B), symmetric=True)
        else:
            Bq = B
        qvals = np.array([q_direction(Bq, x) for x in X])
        iQ = int(np.argmax(qvals))
        Q_dir, Q = _chart_refine(lambda x: q_direction(Bq, x), X[iQ], float(qvals[iQ]),
                                 True, refine)
    near = bool(m is not None and m < 6.0 + 1e-6)
    return InvariantReport(P, M, m, Q, M_dir, m_dir, Q_dir, grid, refine, near)


def sl_invariance_check(B, T, grid=2048, refine=50):
    """Max relative deviation of M and m under a volume-preserving linear map."""
    T = np.asarray(T, dtype=float)
    if T.shape != (3, 3) or abs(np.linalg.det(T) - 1.0) > 1e-9:
        raise InputError("map must be a 3x3 matrix with determinant 1")
    if isinstance(B, GeneratorSet):
        TB = B.map_linear(T)
    elif isinstance(B, Polytope):
        TB = B.map_linear(T)
    else:
        raise InputError("invariance check needs a polytope or zonotope")
    r0 = invariants(B, grid=grid, refine=refine, want=("M", "m"))
    r1 = invariants(TB, grid=grid, refine=refine, want=("M", "m"))
    dev_M = abs(r1.M - r0.M) / abs(r0.M)
    dev_m = abs(r1.m - r0.m) / abs(r0.m)
    return max(dev_M, dev_m)

"""Zonotope calculus: support, volume, shadows, and projection bodies.

A centrally symmetric zonotope Z = sum of segments [-x_i, x_i] is stored by
its generator list.  Everything here reduces to sums of absolute 3x3
determinants over generator tuples:

    h_Z(x)            = sum_i |<x, x_i>|
    V(Z)              = 8 * sum_{i<j<k} |det(x_i, x_j, x_k)|
    V_2(Z | x^perp)   = 4 * sum_{i<j} |det(x_i, x_j, x)|

and the projection body of Z is the zonotope generated by {4 (x_i x x_j)}.
The facet normals of a polytope give its projection body the same way, one
generator (area/2) * normal per triangle.
"""

import numpy as np

from .errors import FlatBodyError, InputError
from .geom import Polytope, as_vec

# Pair-index cache keyed by generator count; the i<j enumeration order is
# fixed so determinant sums are reproducible bit for bit.
_PAIR_CACHE = {}


class GeneratorSet:
    """Generators x_1..x_n of the zonotope sum of [-x_i, x_i]."""

    def __init__(self, gens):
        g = np.asarray(gens, dtype=float)
        if g.ndim != 2 or g.shape[1] != 3:
            raise InputError("generators must form an (n, 3) array")
        if g.shape[0] < 1:
            raise InputError("need at least one generator")
        if not np.all(np.isfinite(g)):
            raise InputError("generators have non-finite entries")
        if np.any(np.linalg.norm(g, axis=1) == 0.0):
            raise InputError("zero generators are not allowed")
        self.gens = g

    def __len__(self):
        return self.gens.shape[0]

    def map_linear(self, mat):
        return GeneratorSet(self.gens @ np.asarray(mat, float).T)


def as_gens(Z):
    """Accept a GeneratorSet or a raw (n, 3) array."""
    if isinstance(Z, GeneratorSet):
        return Z.gens
    return GeneratorSet(Z).gens


def _pairs(n):
    if n not in _PAIR_CACHE:
        idx = np.triu_indices(n, k=1)
        _PAIR_CACHE[n] = idx
    return _PAIR_CACHE[n]


def pair_crosses(Z, drop_zero=False):
    """Cross products x_i x x_j over i < j, in index order."""
    g = as_gens(Z)
    i, j = _pairs(g.shape[0])
    c = np.cross(g[i], g[j])
    if drop_zero:
        scale = float(np.max(np.abs(g))) or 1.0
        c = c[np.linalg.norm(c, axis=1) > 1e-14 * scale * scale]
    return c


def is_flat(Z):
    """True when all generators lie in a plane (the zonotope has no interior)."""
    g = as_gens(Z)
    if g.shape[0] < 3:
        return True
    sv = np.linalg.svd(g, compute_uv=False)
    return bool(sv[2] <= 1e-12 * sv[0])


def z_support(Z, x):
    """Support value of the zonotope: sum of |<x, x_i>|."""
    g = as_gens(Z)
    return float(np.sum(np.abs(g @ as_vec(x, 3))))


def z_support_batch(Z, X):
    g = as_gens(Z)
    return np.sum(np.abs(g @ np.asarray(X, float).T), axis=0)


def z_volume(Z):
    """Volume 8 * sum over generator triples of |det|; zero iff coplanar."""
    g = as_gens(Z)
    n = g.shape[0]
    if n < 3:
        return 0.0
    c = pair_crosses(g)
    i, j = _pairs(n)
    # sum over i<j and all k of |det(x_i, x_j, x_k)| counts each triple 3x
    total = 0.0
    chunk = max(1, int(2e7) // max(n, 1))
    for lo in range(0, c.shape[0], chunk):
        total += float(np.sum(np.abs(c[lo:lo + chunk] @ g.T)))
    return 8.0 * total / 3.0


def z_shadow_area(Z, x):
    """Shadow area V_2(Z | x^perp) = 4 * sum over pairs of |det(x_i, x_j, x)|."""
    c = pair_crosses(Z)
    return 4.0 * float(np.sum(np.abs(c @ as_vec(x, 3))))


def z_shadow_area_batch(Z, X):
    c = pair_crosses(Z)
    return 4.0 * np.sum(np.abs(c @ np.asarray(X, float).T), axis=0)


def projection_body(Z):
    """Projection body of a solid zonotope, again as a GeneratorSet.

    One generator 4 (x_i x x_j) per unordered pair, zero cross products
    skipped; parallel generators are kept separate (support and volume sums
    are additive, so merging is never required for correctness).
    """
    if is_flat(Z):
        raise FlatBodyError("projection body of a flat zonotope is degenerate")
    c = pair_crosses(Z, drop_zero=True)
    return GeneratorSet(4.0 * c)


def second_proj_support(Z, x):
    """Support value of the second projection body, h_{Pi^2 Z}(x).

    Direct tuple-sum evaluation: 8 * sum over ordered 4-tuples (i,j,k,l) of
    |det(x_i x x_j, x_k x x_l, x)|, computed over i<j, k<l with multiplicity
    4 (absolute values make the orientation irrelevant).
    """
    return float(second_proj_support_batch(Z, np.asarray(x, float)[None, :])[0])


def second_proj_support_batch(Z, X):
    if is_flat(Z):
        raise FlatBodyError("flat zonotope has no second projection body")
    c = pair_crosses(Z, drop_zero=True)
    cc = pair_crosses(GeneratorSet(c))
    X = np.asarray(X, dtype=float)
    # ordered (a,b) combos of i<j pairs double the a<b sum; times multiplicity 4
    return 64.0 * np.sum(np.abs(cc @ X.T), axis=0)


def polytope_projection_body(P, merge_antipodal=False):
    """Projection body of a triangulated polytope: (area/2) * normal per facet.

    With merge_antipodal=True parallel generators are combined (their sums
    enter every formula additively, so the represented body is unchanged).
    """
    if not isinstance(P, Polytope):
        raise InputError("expected a Polytope")
    gens = 0.5 * P.facet_areas[:, None] * P.facet_normals
    if merge_antipodal:
        gens = merge_parallel(gens)
    return GeneratorSet(gens)


def merge_parallel(gens, tol=1e-12):
    """Combine (anti)parallel generators into single summed segments."""
    g = np.asarray(gens, dtype=float)
    norms = np.linalg.norm(g, axis=1)
    keep = norms > 0.0
    g, norms = g[keep], norms[keep]
    units = g / norms[:, None]
    # canonical sign: first nonzero coordinate positive
    sign = np.where(units[:, 0] != 0.0, np.sign(units[:, 0]),
                    np.where(units[:, 1] != 0.0, np.sign(units[:, 1]), np.sign(units[:, 2])))
    units = units * sign[:, None]
    out_units = []
    out_norms = []
    for u, r in zip(units, norms):
        for k, v in enumerate(out_units):
            if np.linalg.norm(u - v) <= tol:
                out_norms[k] += r
                break
        else:
            out_units.append(u)
            out_norms.append(r)
    return np.array(out_units) * np.array(out_norms)[:, None]


def zonogon_area(gens2d):
    """Area of the planar zonotope with the given 2-D generators.

    Independent of the determinant-sum formula: the zonogon boundary is
    walked generator by generator in angular order and the polygon area is
    taken by the shoelace rule.  Used as a cross-check oracle for shadows.
    """
    g = np.asarray(gens2d, dtype=float)
    if g.ndim != 2 or g.shape[1] != 2:
        raise InputError("expected (n, 2) generators")
    norms = np.hypot(g[:, 0], g[:, 1])
    g = g[norms > 1e-15 * max(float(norms.max(initial=0.0)), 1.0)]
    if g.shape[0] == 0:
        return 0.0
    flip = (g[:, 1] < 0.0) | ((g[:, 1] == 0.0) & (g[:, 0] < 0.0))
    g = np.where(flip[:, None], -g, g)
    order = np.argsort(np.arctan2(g[:, 1], g[:, 0]), kind="stable")
    g = g[order]
    start = -np.sum(g, axis=0)
    upper = start + 2.0 * np.cumsum(g, axis=0)
    # boundary cycle: start, w_1..w_n (= -start), then -w_1..-w_{n-1}
    poly = np.vstack([start, upper, -upper[:-1] if g.shape[0] > 1 else np.empty((0, 2))])
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def zonotope_vertices(Z, limit=16):
    """All sign-combination points of the generators (2^n of them).

    Only sensible for small n; used to realize a zonotope as a Polytope.
    """
    g = as_gens(Z)
    n = g.shape[0]
    if n > limit:
        raise InputError(f"vertex enumeration limited to {limit} generators")
    signs = np.array(np.meshgrid(*([[-1.0, 1.0]] * n), indexing="ij")).reshape(n, -1).T
    return signs @ g

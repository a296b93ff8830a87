"""Named verification suites mapping one-to-one onto the library's properties.

Each suite draws seeded random inputs, checks an inequality or identity at
its stated tolerance, and returns report rows; FAIL rows carry the seed and
sample index needed to reproduce the witness.  Suite names:

    ts-ratio, formula-coherence, fubini, minkowski, steiner-monotone,
    schwartz-monotone, berwald, zhang-petty, theorem-1-1, theorem-1-2,
    sl-invariance, class-reduction
"""

import zlib

import numpy as np

from . import fixtures
from .functionals import (candidate_directions, mixed_volume, petty_value,
                          polar_volume, ratio_batch, ts_ratio_batch)
from .geom import fibonacci_sphere, unitize
from .report import Row, check
from .revolution import berwald_check
from .symmetrize import (schwartz_ratio_monotonicity,
                         steiner_projection_monotonicity)
from .zonotope import (GeneratorSet, projection_body, second_proj_support,
                       z_shadow_area, z_support, z_volume, zonogon_area)

SHARP_TS = 4.0 / 3.0


def _rng(seed, tag):
    # crc32 keeps the per-suite stream stable across processes
    key = zlib.crc32(tag.encode("utf-8"))
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(key,)))


def suite_ts_ratio(samples=100_000, seed=42):
    """t_sym <= (4/3) s_sym on random 4-tuples; parallel pairs give exactly 4/3."""
    rng = _rng(seed, "ts")
    tuples = rng.standard_normal((samples, 4, 3))
    xs = rng.standard_normal((samples, 3))
    r = ts_ratio_batch(tuples, xs)
    finite = r[~np.isnan(r)]
    worst = float(np.max(finite))
    rows = [check("ts-ratio-bound", worst <= SHARP_TS + 1e-12, value=worst,
                  tolerance=SHARP_TS + 1e-12,
                  detail=f"seed={seed} samples={samples}")]
    # tuples with a repeated direction sit exactly on the constant; keep the
    # family away from the degenerate slabs (coplanar triple, direction
    # orthogonal to the repeated vector) where cancellation would eat the
    # 1e-12 margin
    par = rng.standard_normal((1000, 4, 3))
    par /= np.linalg.norm(par, axis=2, keepdims=True)
    par[:, 3] = par[:, 2] * rng.uniform(0.5, 2.0, 1000)[:, None]
    xs = rng.standard_normal((1000, 3))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    dets = np.abs(np.einsum("ij,ij->i", np.cross(par[:, 0], par[:, 1]), par[:, 2]))
    dots = np.abs(np.einsum("ij,ij->i", par[:, 2], xs))
    ok_idx = (dets > 1e-2) & (dots > 1e-2)
    rp = ts_ratio_batch(par[ok_idx], xs[ok_idx])
    rp = rp[~np.isnan(rp)]
    dev = float(np.max(np.abs(rp - SHARP_TS))) if rp.size else 0.0
    rows.append(check("ts-ratio-parallel-pair", dev <= 1e-12, value=dev,
                      tolerance=1e-12, detail=f"seed={seed}"))
    return rows


def suite_formula_coherence(samples=200, seed=7):
    """Shadow formula vs zonogon oracle (1e-12) and direct vs composed h_{Pi^2} (1e-9)."""
    rng = _rng(seed, "coherence")
    worst_shadow = 0.0
    worst_second = 0.0
    witness = ""
    for k in range(samples):
        Z = fixtures.random_zonotope(rng, int(rng.integers(3, 9)))
        x = unitize(rng.standard_normal(3))
        a1 = z_shadow_area(Z, x)
        # oracle: project generators to x-perp and take the zonogon area
        e1, e2 = _basis(x)
        a2 = zonogon_area(np.column_stack([Z.gens @ e1, Z.gens @ e2]))
        rel = abs(a1 - a2) / max(a1, 1e-300)
        if rel > worst_shadow:
            worst_shadow, witness = rel, f"seed={seed} sample={k}"
        b1 = second_proj_support(Z, x)
        b2 = z_shadow_area(projection_body(Z), x)
        worst_second = max(worst_second, abs(b1 - b2) / max(b1, 1e-300))
        s1 = z_support(projection_body(Z), x)
        worst_shadow = max(worst_shadow, abs(a1 - s1) / max(a1, 1e-300))
    return [
        check("shadow-vs-zonogon-oracle", worst_shadow <= 1e-12, value=worst_shadow,
              tolerance=1e-12, detail=witness),
        check("second-support-direct-vs-composed", worst_second <= 1e-9,
              value=worst_second, tolerance=1e-9, detail=f"seed={seed}"),
    ]


def _basis(x):
    a = np.array([1.0, 0.0, 0.0]) if abs(x[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = unitize(np.cross(x, a))
    return e1, np.cross(x, e1)


def suite_fubini(samples=200, seed=11):
    """V(Pi L, Pi K) = V(Pi^2 K, L) on random body pairs; cube/tet gives 64."""
    rng = _rng(seed, "fubini")
    worst = 0.0
    witness = ""
    for k in range(samples):
        K = fixtures.random_zonotope(rng, int(rng.integers(3, 7)))
        if rng.random() < 0.5:
            L = fixtures.random_zonotope(rng, int(rng.integers(3, 7)))
        else:
            L = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 9)))
        piK = projection_body(K)
        piL = projection_body(L) if isinstance(L, GeneratorSet) else _poly_pi(L)
        lhs = mixed_volume(piL, piK)
        rhs = mixed_volume(projection_body(piK), L)
        rel = abs(lhs - rhs) / max(abs(lhs), 1e-300)
        if rel > worst:
            worst, witness = rel, f"seed={seed} sample={k}"
    rows = [check("fubini-identity", worst <= 1e-9, value=worst, tolerance=1e-9,
                  detail=witness)]
    cube_z = fixtures.cube_zonotope()
    tet = fixtures.tetrahedron()
    lhs = mixed_volume(_poly_pi(tet), projection_body(cube_z))
    rhs = mixed_volume(projection_body(projection_body(cube_z)), tet)
    ok = abs(lhs - 64.0) <= 1e-9 and abs(rhs - 64.0) <= 1e-9
    rows.append(check("fubini-cube-tetrahedron", ok, value=lhs, tolerance=1e-9,
                      detail=f"both sides should be 64, got {lhs:.12g}/{rhs:.12g}"))
    return rows


def _poly_pi(P):
    from .zonotope import polytope_projection_body
    return polytope_projection_body(P)


def suite_minkowski(samples=200, seed=13):
    """V(K,L) >= V(K)^{1/3} V(L)^{2/3} and V(K,K) = V(K) on random pairs."""
    rng = _rng(seed, "minkowski")
    worst_gap = np.inf
    worst_diag = 0.0
    witness = ""
    for k in range(samples):
        K = _random_body(rng)
        L = _random_body(rng)
        vK = z_volume(K) if isinstance(K, GeneratorSet) else K.volume
        vL = z_volume(L) if isinstance(L, GeneratorSet) else L.volume
        mv = mixed_volume(K, L)
        slack = mv / (vK ** (1.0 / 3.0) * vL ** (2.0 / 3.0))
        if slack < worst_gap:
            worst_gap, witness = slack, f"seed={seed} sample={k}"
        diag = abs(mixed_volume(L, L) - vL) / vL
        worst_diag = max(worst_diag, diag)
    return [
        check("minkowski-inequality", worst_gap >= 1.0 - 1e-9, value=worst_gap,
              tolerance=1.0, detail=witness),
        check("mixed-volume-diagonal", worst_diag <= 1e-9, value=worst_diag,
              tolerance=1e-9, detail=f"seed={seed}"),
    ]


def _random_body(rng):
    if rng.random() < 0.5:
        return fixtures.random_zonotope(rng, int(rng.integers(3, 8)))
    return fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))


def suite_steiner_monotone(samples=500, seed=17):
    """Shadow of Pi K on planes through nu never grows under Steiner."""
    rng = _rng(seed, "steiner")
    worst = -np.inf
    witness = ""
    for k in range(samples):
        P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
        nu = unitize(rng.standard_normal(3))
        h2 = unitize(rng.standard_normal(3))
        if abs(np.dot(nu, h2)) > 1.0 - 1e-6:
            continue
        before, after = steiner_projection_monotonicity(P, nu, h2)
        gap = (after - before) / max(before, 1e-300)
        if gap > worst:
            worst, witness = gap, f"seed={seed} sample={k}"
    return [check("steiner-shadow-monotone", worst <= 1e-9, value=worst,
                  tolerance=1e-9, detail=witness)]


def suite_schwartz_monotone(samples=200, seed=19):
    """Direction ratio never grows under Schwartz symmetrization."""
    rng = _rng(seed, "schwartz")
    worst = -np.inf
    witness = ""
    for k in range(samples):
        P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, 11)))
        x = unitize(rng.standard_normal(3))
        before, after = schwartz_ratio_monotonicity(P, x)
        gap = after - before
        if gap > worst:
            worst, witness = gap, f"seed={seed} sample={k}"
    return [check("schwartz-ratio-monotone", worst <= 1e-6, value=worst,
                  tolerance=1e-6, detail=witness)]


def suite_berwald(samples=1000, seed=23):
    """Moment comparison on random concave profiles; equality only for tents."""
    rng = _rng(seed, "berwald")
    worst = -np.inf
    false_equal = 0
    witness = ""
    for k in range(samples):
        R = fixtures.random_concave_profile(rng, n_nodes=int(rng.integers(3, 8)))
        p = float(rng.uniform(0.3, 2.0))
        q = p + float(rng.uniform(0.2, 2.0))
        res = berwald_check(R.s, R.f, p, q)
        gap = (res.rhs - res.lhs) / max(res.lhs, 1e-300)
        if gap > worst:
            worst, witness = gap, f"seed={seed} sample={k}"
        if res.equality and not _is_tent(R):
            false_equal += 1
    tent = fixtures.double_cone_profile()
    res = berwald_check(tent.s, tent.f, 1.0, 2.0)
    rows = [
        check("berwald-inequality", worst <= 1e-12, value=worst, tolerance=1e-12,
              detail=witness),
        check("berwald-equality-only-linear", false_equal == 0, value=false_equal,
              tolerance=0, detail=f"seed={seed}"),
        check("berwald-tent-equality", res.equality and abs(res.lhs - res.rhs) < 1e-10,
              value=res.lhs - res.rhs, tolerance=1e-10),
    ]
    return rows


def _is_tent(R):
    half = R.s >= 0.0
    s, f = R.s[half], R.f[half]
    if f[-1] > 1e-10 * f.max():
        return False
    lin = f[0] * (1.0 - s / R.a)
    return bool(np.max(np.abs(f - lin)) <= 1e-10 * f.max())


def suite_zhang_petty(samples=100, seed=29):
    """20/27 <= V((Pi K)^polar) V(K)^2 <= 64/27 at 1% quadrature tolerance."""
    rng = _rng(seed, "zhang")
    lo_band, hi_band = 20.0 / 27.0, 64.0 / 27.0
    lo_seen, hi_seen = np.inf, -np.inf
    witness = ""
    for k in range(samples):
        Z = fixtures.random_zonotope(rng, int(rng.integers(3, 9)))
        Z = GeneratorSet(Z.gens / z_volume(Z) ** (1.0 / 3.0))
        val = polar_volume(projection_body(Z)) * z_volume(Z) ** 2
        if val < lo_seen:
            lo_seen = val
            witness = f"seed={seed} sample={k}"
        hi_seen = max(hi_seen, val)
    ok = lo_seen >= lo_band * 0.99 and hi_seen <= hi_band * 1.01
    rows = [check("zhang-petty-band", ok, value=lo_seen, tolerance=lo_band,
                  detail=f"range [{lo_seen:.6g}, {hi_seen:.6g}] in "
                         f"[{lo_band:.6g}, {hi_band:.6g}] (1%); {witness}")]
    # simplex attains the lower end: the tetrahedron pins the quadrature
    tet = fixtures.tetrahedron()
    val = polar_volume(_poly_pi(tet)) * tet.volume ** 2
    rows.append(check("zhang-simplex-extremal", abs(val - lo_band) <= 0.01 * lo_band,
                      value=val, tolerance=lo_band, detail="tetrahedron, expect 20/27"))
    return rows


def suite_theorem_1_1(samples=10_000, seed=31, grid=1024):
    """Zonoid upper bound: ratio <= 8 in every direction, cube attains 8."""
    rng = _rng(seed, "thm11")
    X = fibonacci_sphere(grid).points
    worst = -np.inf
    witness = ""
    for k in range(samples):
        Z = fixtures.random_zonotope(rng, int(rng.integers(3, 9)))
        dirs = np.vstack([X, candidate_directions(Z)])
        vals = ratio_batch(Z, dirs)
        v = float(np.max(vals))
        if v > worst:
            worst, witness = v, f"seed={seed} sample={k}"
    rows = [check("zonoid-ratio-upper", worst <= 8.0 * (1.0 + 1e-9), value=worst,
                  tolerance=8.0, detail=witness)]
    cube_val = float(ratio_batch(fixtures.cube_zonotope(), np.eye(3)).max())
    rows.append(check("cube-attains-8", abs(cube_val - 8.0) <= 1e-9,
                      value=cube_val, tolerance=1e-9))
    return rows


def suite_theorem_1_2(samples=1000, seed=37, grid=1024, pairs_max=12):
    """Symmetric lower bound: ratio >= 6 in every direction; octahedron attains 6."""
    rng = _rng(seed, "thm12")
    X = fibonacci_sphere(grid).points
    worst = np.inf
    witness = ""
    for k in range(samples):
        P = fixtures.random_symmetric_polytope(rng, int(rng.integers(4, pairs_max + 1)))
        dirs = np.vstack([X, candidate_directions(P)])
        vals = ratio_batch(P, dirs)
        v = float(np.min(vals))
        if v < worst:
            worst, witness = v, f"seed={seed} sample={k}"
    rows = [check("symmetric-ratio-lower", worst >= 6.0 * (1.0 - 1e-9), value=worst,
                  tolerance=6.0, detail=witness)]
    oct_val = float(ratio_batch(fixtures.octahedron(), np.eye(3)).min())
    rows.append(check("octahedron-attains-6", abs(oct_val - 6.0) <= 1e-6,
                      value=oct_val, tolerance=1e-6, direction=(0, 0, 1)))
    return rows


def suite_sl_invariance(samples=12, seed=41, grid=2048):
    """M and m are invariant under volume-preserving linear maps (to 1e-4)."""
    from .functionals import sl_invariance_check
    rng = _rng(seed, "sl")
    worst = 0.0
    witness = ""
    bodies = [fixtures.cube_zonotope(), fixtures.octahedron()]
    maps = [np.array([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
            np.diag([2.0, 0.5, 1.0])]
    cases = [(b, T) for b in bodies for T in maps]
    while len(cases) < samples:
        B = _random_body(rng)
        T = _random_unimodular(rng)
        cases.append((B, T))
    for k, (B, T) in enumerate(cases[:samples]):
        dev = sl_invariance_check(B, T, grid=grid, refine=60)
        if dev > worst:
            worst, witness = dev, f"seed={seed} case={k}"
    return [check("sl-invariance", worst <= 1e-4, value=worst, tolerance=1e-4,
                  detail=witness)]


def _random_unimodular(rng):
    """Random volume-preserving map with moderate condition number."""
    A = rng.standard_normal((3, 3)) * 0.4 + np.eye(3)
    d = np.linalg.det(A)
    if abs(d) < 0.1:
        return _random_unimodular(rng)
    if d < 0:
        A[0] = -A[0]
        d = -d
    return A / d ** (1.0 / 3.0)


def suite_class_reduction(samples=100, seed=43):
    """P(Pi K) <= P(K); both values logged for every body."""
    rng = _rng(seed, "classred")
    worst = -np.inf
    witness = ""
    for k in range(samples):
        B = _random_body(rng)
        pk = petty_value(B)
        if isinstance(B, GeneratorSet):
            piB = projection_body(B)
        else:
            piB = _poly_pi(B)
        from .zonotope import merge_parallel
        piB = GeneratorSet(merge_parallel(piB.gens))
        ppk = petty_value(piB)
        gap = (ppk - pk) / max(pk, 1e-300)
        if gap > worst:
            worst, witness = gap, f"seed={seed} sample={k} P(K)={pk:.9g} P(PiK)={ppk:.9g}"
    return [check("class-reduction", worst <= 1e-9, value=worst, tolerance=1e-9,
                  detail=witness)]


SUITES = {
    "ts-ratio": suite_ts_ratio,
    "formula-coherence": suite_formula_coherence,
    "fubini": suite_fubini,
    "minkowski": suite_minkowski,
    "steiner-monotone": suite_steiner_monotone,
    "schwartz-monotone": suite_schwartz_monotone,
    "berwald": suite_berwald,
    "zhang-petty": suite_zhang_petty,
    "theorem-1-1": suite_theorem_1_1,
    "theorem-1-2": suite_theorem_1_2,
    "sl-invariance": suite_sl_invariance,
    "class-reduction": suite_class_reduction,
}

_DEFAULT_SAMPLES = {
    "ts-ratio": 100_000, "formula-coherence": 200, "fubini": 200,
    "minkowski": 200, "steiner-monotone": 500, "schwartz-monotone": 200,
    "berwald": 1000, "zhang-petty": 100, "theorem-1-1": 10_000,
    "theorem-1-2": 1000, "sl-invariance": 12, "class-reduction": 100,
}


def run_suite(name, samples=None, seed=42):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    kwargs = {"seed": seed}
    kwargs["samples"] = samples if samples is not None else _DEFAULT_SAMPLES[name]
    rows = SUITES[name](**kwargs)
    summary = Row(f"suite:{name}",
                  status="FAIL" if any(r.status == "FAIL" for r in rows) else "PASS",
                  detail=f"{sum(r.status != 'FAIL' for r in rows)}/{len(rows)} checks passed")
    return rows + [summary]

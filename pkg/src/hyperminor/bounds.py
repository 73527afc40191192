"""Counting side: sphere sizes, the entropy-style bound, exact Cheeger
constants, the separation audit on concrete hypercube embeddings, and the
non-universality constants."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from . import kernels
from .coloring import vizing_edge_color
from .embedding import CombinatorialEmbedding, verify_embedding
from .errors import InvalidInputError, ResourceError, UsageError
from .graph import BaseGraph, Graph, Hypercube

SIG_DIGITS = 15
EXHAUSTIVE_LIMIT = 24
_MP_DPS = 50


@dataclass
class BoundsReport:
    """Ordered key/value report; ``to_text`` gives a stable diffable form."""

    kind: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def __contains__(self, key):
        return key in self.values

    def get(self, key, default=None):
        return self.values.get(key, default)

    def to_text(self) -> str:
        lines = [f"kind: {self.kind}"]
        for key, val in self.values.items():
            lines.append(f"{key}: {_fmt(val)}")
        return "\n".join(lines) + "\n"


def _fmt(val) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if val is None:
        return "none"
    if isinstance(val, (list, tuple)):
        return " ".join(_fmt(v) for v in val)
    if isinstance(val, float):
        return repr(val)
    return str(val)


def round_sig(x, digits: int = SIG_DIGITS) -> Decimal:
    """Round to ``digits`` significant digits, half-even."""
    d = Decimal(mpmath.nstr(mpmath.mpf(x), 40, strip_zeros=False)) if not isinstance(x, Decimal) else x
    if d == 0:
        return Decimal(0)
    return Context(prec=digits, rounding=ROUND_HALF_EVEN).plus(d)


# ---------------------------------------------------------------------------
# Spheres and the entropy function
# ---------------------------------------------------------------------------

def sphere_sizes(d: int) -> list[int]:
    if d < 0:
        raise UsageError("d must be >= 0")
    out = [math.comb(d, k) for k in range(d + 1)]
    assert sum(out) == 2 ** d
    return out


def product_sphere_sizes(n: int, k: int) -> list[int]:
    """Sphere sizes around 0 in K_{k+1}^n: C(n, r) k^r."""
    if n < 0 or k < 1:
        raise UsageError("need n >= 0 and k >= 1")
    out = [math.comb(n, r) * k ** r for r in range(n + 1)]
    assert sum(out) == (k + 1) ** n
    return out


def sphere_constant() -> mpmath.mpf:
    """sqrt(2) e / sqrt(pi)."""
    with mpmath.workdps(_MP_DPS):
        return mpmath.sqrt(2) * mpmath.e / mpmath.sqrt(mpmath.pi)


def sphere_inequality(d: int, rel: float = 1e-12) -> tuple[int, mpmath.mpf, bool]:
    """(max_k C(d,k), right side, holds). The comparison is against the right
    side shrunk by ``rel`` so float noise can never make it pass."""
    if d < 1:
        raise UsageError("d must be >= 1")
    mx = max(sphere_sizes(d))
    with mpmath.workdps(_MP_DPS):
        rhs = sphere_constant() * mpmath.mpf(2) ** d / mpmath.sqrt(d)
        holds = bool(mpmath.mpf(mx) < rhs * (1 - mpmath.mpf(rel)))
    return mx, rhs, holds


def entropy_bound(a, k: int) -> float:
    """f(a) = k^a / (a^a (1-a)^(1-a))."""
    a = float(a)
    if not 0 < a < 1:
        raise UsageError("a must lie in (0, 1)")
    if k < 1:
        raise UsageError("k must be >= 1")
    return math.exp(a * math.log(k) - a * math.log(a) - (1 - a) * math.log1p(-a))


def grid_maximum(k: int, step: float = 1e-3) -> tuple[float, float]:
    """(max f, argmax) over the grid step, 2*step, ..., 1-step."""
    count = int(round(1 / step)) - 1
    a = np.arange(1, count + 1) * step
    vals = np.exp(a * math.log(k) - a * np.log(a) - (1 - a) * np.log1p(-a))
    i = int(np.argmax(vals))
    return float(vals[i]), float(a[i])


def max_and_argmax(k: int, step: float = 1e-3) -> tuple[int, Fraction]:
    """(k+1, k/(k+1)), after checking them against the grid."""
    gmax, garg = grid_maximum(k, step)
    if gmax > k + 1 + 1e-9 or abs(garg - k / (k + 1)) > step:
        raise AssertionError(f"grid disagrees: max {gmax} at {garg}")
    return k + 1, Fraction(k, k + 1)


@dataclass(frozen=True)
class StirlingBound:
    lower: mpmath.mpf
    exact: int
    upper: mpmath.mpf
    entropy_form: mpmath.mpf

    def contains(self) -> bool:
        return self.lower < self.exact < self.upper


def stirling_binomial_bound(n: int, a, k: int = 1) -> StirlingBound:
    """Stirling sandwich around C(n, an) k^(an), plus the entropy-form upper
    bound c f(a)^n / sqrt(a(1-a)n) with c = e/sqrt(2 pi)."""
    a = Fraction(a)
    r = a * n
    if r.denominator != 1:
        raise UsageError(f"a*n = {r} is not an integer")
    r = int(r)
    if not 1 <= r <= n - 1:
        raise UsageError("need 1 <= a*n <= n-1")
    exact = math.comb(n, r) * k ** r
    with mpmath.workdps(_MP_DPS):
        def base(m):
            return mpmath.sqrt(2 * mpmath.pi * m) * (mpmath.mpf(m) / mpmath.e) ** m

        def lo(m):
            return base(m) * mpmath.exp(mpmath.mpf(1) / (12 * m + 1))

        def hi(m):
            return base(m) * mpmath.exp(mpmath.mpf(1) / (12 * m))

        kk = mpmath.mpf(k) ** r
        lower = lo(n) / (hi(r) * hi(n - r)) * kk
        upper = hi(n) / (lo(r) * lo(n - r)) * kk
        af = mpmath.mpf(a.numerator) / a.denominator
        f = mpmath.mpf(k) ** af / (af ** af * (1 - af) ** (1 - af))
        c = mpmath.e / mpmath.sqrt(2 * mpmath.pi)
        ent = c / mpmath.sqrt(af * (1 - af) * n) * f ** n
    out = StirlingBound(lower, exact, upper, ent)
    if not (out.contains() and exact <= ent):
        raise AssertionError(f"Stirling sandwich violated for n={n}, a={a}, k={k}")
    return out


# ---------------------------------------------------------------------------
# Cheeger constant
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheegerCut:
    subset: frozenset[int]
    boundary: int
    ratio: Fraction


def cheeger_exact(g: BaseGraph, estimate: bool = False):
    """(h, cut) minimizing |E(U, U^c)| / |U| over 0 < |U| <= |V|/2; ties go
    to the lexicographically least U. Beyond the exhaustive limit,
    ``estimate=True`` returns (lambda_2 / 2, None), a spectral lower bound."""
    if g.n < 2:
        raise UsageError("Cheeger constant needs at least 2 vertices")
    if g.n > EXHAUSTIVE_LIMIT:
        if not estimate:
            raise ResourceError(f"exhaustive Cheeger limited to {EXHAUSTIVE_LIMIT} vertices")
        lap = np.zeros((g.n, g.n))
        for u, v in g.edges():
            lap[u, v] = lap[v, u] = -1
            lap[u, u] += 1
            lap[v, v] += 1
        lam = np.linalg.eigvalsh(lap)
        return float(lam[1]) / 2, None
    edges = np.array(list(g.edges()), dtype=np.int64).reshape(-1, 2)
    b, s, mask = kernels.cheeger_scan(g.n, edges, g.n // 2)
    subset = frozenset(i for i in range(g.n) if mask >> i & 1)
    ratio = Fraction(b, s)
    return ratio, CheegerCut(subset, b, ratio)


# ---------------------------------------------------------------------------
# Separation audit
# ---------------------------------------------------------------------------

def separation_audit(emb: CombinatorialEmbedding) -> BoundsReport:
    """Replays the separator counting on a concrete embedding into Q_d.

    Balls are open: B_k = {x : |x| < k}, S_k = {x : |x| = k}. The report says
    which branch of the argument applies (light spheres or a heavy sphere)
    and whether a balanced radius exists; when none does, the most balanced
    proper radius is audited and flagged ``balanced: false``.
    """
    if not isinstance(emb.host, Hypercube):
        raise UsageError("separation audit needs a hypercube host")
    g = emb.guest
    if g.max_degree() > 3:
        raise UsageError("guest must have maximum degree <= 3")
    rep = verify_embedding(emb)
    if not rep.valid:
        raise InvalidInputError("embedding is invalid:\n" + rep.summary())
    d, n = emb.host.d, g.n
    f = emb.vertex_map
    weight = [bin(x).count("1") for x in f]
    on_sphere = [0] * (d + 1)
    for w in weight:
        on_sphere[w] += 1
    rho = [sum(on_sphere[:k]) for k in range(d + 2)]
    light = all(Fraction(c) <= Fraction(n, 10) for c in on_sphere)
    out = BoundsReport("separation_audit", {
        "d": d,
        "guest_vertices": n,
        "guest_edges": g.num_edges,
        "images_per_sphere": on_sphere,
        "rho": rho,
        "light_spheres": light,
        "branch": "light" if light else "heavy_sphere",
    })
    if n < 10:
        out.values.update(applicable=False, reason="guest has fewer than 10 vertices")
        return out
    proper = [r for r in range(d + 2) if 0 < rho[r] < n]
    if not proper:
        out.values.update(applicable=False, reason="no radius separates the images")
        return out
    lo, hi = Fraction(2, 5) * n, Fraction(1, 2) * n
    balanced = [r for r in proper if lo <= rho[r] <= hi]
    if balanced:
        r = balanced[0]
    else:
        r = min(proper, key=lambda q: (abs(Fraction(rho[q]) - hi), q))
    inside = {v for v in range(n) if weight[v] < r}
    crossing = sorted((u, v) for u, v in g.edges() if (u in inside) != (v in inside))
    classes = vizing_edge_color(Graph(n, crossing)) if crossing else []
    chosen = sorted(max(classes, key=lambda c: (len(c), sorted(c)))) if classes else []
    hits = []
    for e in chosen:
        meet = {x for x in emb.roads[e] if bin(x).count("1") == r}
        if not meet:
            raise AssertionError(f"road of crossing edge {e} misses S_{r}")
        hits.append(meet)
    distinct = all(not (hits[i] & hits[j]) for i in range(len(hits)) for j in range(i + 1, len(hits)))
    sphere = math.comb(d, r)
    out.values.update(
        applicable=True,
        radius=r,
        balanced=bool(balanced),
        rho_r=rho[r],
        crossing_edges=len(crossing),
        extracted=len(chosen),
        quarter_bound=4 * len(chosen) >= len(crossing),
        distinct_hits=distinct,
        sphere_size=sphere,
        sphere_bound_holds=distinct and sphere >= len(chosen),
    )
    return out


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------

def _c_entropy() -> mpmath.mpf:
    return mpmath.e / mpmath.sqrt(2 * mpmath.pi)


def _scan_sup(term, start: int) -> mpmath.mpf:
    # term is eventually decreasing; stop after a long decreasing run
    best, prev, n, falling = term(start), None, start, 0
    while falling < 200 and n < 10**6:
        t = term(n)
        best = max(best, t)
        falling = falling + 1 if prev is not None and t < prev else 0
        prev = t
        n += 1
    return best


def nonuniversality_constants(d: int, h, k: Optional[int] = None, kprime=None) -> BoundsReport:
    """C = 10 sqrt(2) e / (sqrt(pi) h), the target interval for the guest
    order n, and the edge bound 1.5n <= 3C 2^d/sqrt(d). With ``k`` also the
    generalized constants C1, C2, c/(k'(1-k')) and m = max(f(k'), f(1-k'))."""
    if d < 1:
        raise UsageError("d must be >= 1")
    hq = Fraction(h)
    if not 0 < hq <= 1:
        raise UsageError("h must lie in (0, 1]")
    with mpmath.workdps(_MP_DPS):
        hm = mpmath.mpf(hq.numerator) / hq.denominator
        c_big = 10 * sphere_constant() / hm
        scale = mpmath.mpf(2) ** d / mpmath.sqrt(d)
        vals = {
            "d": d,
            "h": str(hq),
            "c": round_sig(_c_entropy()),
            "sphere_factor": round_sig(sphere_constant()),
            "C": round_sig(c_big),
            "C_times_h": round_sig(c_big * hm),
            "n_low": round_sig(c_big * scale),
            "n_high": round_sig(2 * c_big * scale),
            "edge_bound": round_sig(3 * c_big * scale),
        }
        if k is not None:
            vals.update(_generalized(k, kprime))
    return BoundsReport("constants", vals)


def _generalized(k: int, kprime) -> dict:
    if k < 1:
        raise UsageError("k must be >= 1")
    base = Fraction(k, k + 1)
    kp = (base + 1) / 2 if kprime is None else Fraction(kprime).limit_denominator(10**12)
    if not base < kp < 1:
        raise UsageError(f"k' must lie in ({base}, 1)")
    kpm = mpmath.mpf(kp.numerator) / kp.denominator

    def f(a):
        return mpmath.mpf(k) ** a / (a ** a * (1 - a) ** (1 - a))

    m = max(f(kpm), f(1 - kpm))
    if not m < k + 1:
        raise AssertionError("m must be below k+1")
    c = _c_entropy()
    q1 = mpmath.mpf(k) / (k + 1)
    q2 = m / (k + 1)
    c1 = _scan_sup(lambda n: q1 ** n * mpmath.sqrt(n), 1)
    c2 = c * _scan_sup(lambda n: q2 ** n * n / mpmath.sqrt(n - 1), 2)
    c3 = c / (kpm * (1 - kpm))
    return {
        "k": k,
        "kprime": round_sig(kpm),
        "m": round_sig(m),
        "C1": round_sig(c1),
        "C2": round_sig(c2),
        "C3": round_sig(c3),
        "C_k": round_sig(max(c1, c2, c3)),
    }

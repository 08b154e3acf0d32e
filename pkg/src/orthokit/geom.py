"""Hyperbolic plane geometry: isometries, geodesics, pants surfaces and
orthospectrum enumeration.

Upper half-plane model throughout.  An isometry is a real 2x2 matrix of
determinant one, identified up to sign; a geodesic is an ordered pair of
distinct boundary points (math.inf allowed).
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

INF = math.inf

_DET_TOL = 1e-12
_HYP_TOL = 1e-12


class GeometryError(ValueError):
    """Invalid geometric configuration (crossing geodesics, elliptic input...)."""


def _canonical(m: np.ndarray) -> np.ndarray:
    """Normalize det to 1 and fix the sign so the first nonzero entry is positive."""
    m = np.asarray(m, dtype=float)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det <= 0:
        raise GeometryError("matrix must have positive determinant")
    m = m / math.sqrt(det)
    for v in (m[0, 0], m[0, 1], m[1, 0], m[1, 1]):
        if v != 0.0:
            if v < 0.0:
                m = -m
            break
    return m


@dataclass(frozen=True)
class Isometry:
    """Orientation-preserving isometry of H^2 as a PSL(2,R) matrix."""
    m: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "m", _canonical(self.m))

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(np.eye(2))

    @staticmethod
    def from_entries(a, b, c, d) -> "Isometry":
        return Isometry(np.array([[a, b], [c, d]], dtype=float))

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.m @ other.m)

    def inverse(self) -> "Isometry":
        a, b, c, d = self.m.ravel()
        return Isometry(np.array([[d, -b], [-c, a]]))

    @property
    def trace(self) -> float:
        return float(self.m[0, 0] + self.m[1, 1])

    def apply(self, x: float) -> float:
        """Mobius action on the extended real line, handled projectively."""
        a, b, c, d = self.m.ravel()
        if math.isinf(x):
            return a / c if c != 0.0 else INF
        num = a * x + b
        den = c * x + d
        if den == 0.0:
            return INF
        return num / den

    def apply_complex(self, z: complex) -> complex:
        a, b, c, d = self.m.ravel()
        return (a * z + b) / (c * z + d)

    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2.0 + _HYP_TOL

    def translation_length(self) -> float:
        t = abs(self.trace)
        if t <= 2.0 + _HYP_TOL:
            raise GeometryError("translation length requires a hyperbolic isometry")
        return 2.0 * math.acosh(t / 2.0)

    def axis(self) -> "Geodesic":
        """Axis as (repelling, attracting) fixed points."""
        if not self.is_hyperbolic():
            raise GeometryError("axis requires a hyperbolic isometry")
        a, b, c, d = self.m.ravel()
        tr = a + d
        disc = math.sqrt(tr * tr - 4.0)
        if c == 0.0:
            # one fixed point at infinity
            other = b / (d - a) if d != a else INF
            if abs(a) > abs(d):  # z -> (a/d) z + ...; inf attracting iff |a|>|d|
                return Geodesic(other, INF)
            return Geodesic(INF, other)
        p = (a - d + disc) / (2.0 * c)
        q = (a - d - disc) / (2.0 * c)
        # attracting fixed point has |derivative| = (c z + d)^(-2) < 1
        if (c * p + d) ** 2 > 1.0:
            return Geodesic(q, p)
        return Geodesic(p, q)


@dataclass(frozen=True)
class Geodesic:
    """Unoriented support is {p, q}; order records orientation from p to q."""
    p: float
    q: float

    def __post_init__(self):
        if self.p == self.q:
            raise GeometryError("geodesic endpoints must be distinct")

    def reversed(self) -> "Geodesic":
        return Geodesic(self.q, self.p)

    def transformed(self, iso: Isometry) -> "Geodesic":
        return Geodesic(iso.apply(self.p), iso.apply(self.q))


def apply(iso: Isometry, x: float) -> float:
    return iso.apply(x)


def translation_length(iso: Isometry) -> float:
    return iso.translation_length()


def axis(iso: Isometry) -> Geodesic:
    return iso.axis()


def _normalize_against(g1: Geodesic, e: float) -> float:
    """Image of endpoint e under the Mobius map sending g1 to (0, inf)."""
    p1, q1 = g1.p, g1.q
    if math.isinf(p1):
        # z -> -1/(z - q1) sends p1 -> 0, q1 -> inf
        return INF if e == q1 else (-1.0 / (e - q1) if not math.isinf(e) else 0.0)
    if math.isinf(q1):
        return INF if math.isinf(e) else e - p1
    if math.isinf(e):
        return 1.0
    if e == q1:
        return INF
    return (e - p1) / (e - q1)


def geodesic_distance(g1: Geodesic, g2: Geodesic) -> float:
    """Length of the common perpendicular of two disjoint geodesics.

    Raises GeometryError for crossing or asymptotic configurations.
    """
    a = _normalize_against(g1, g2.p)
    b = _normalize_against(g1, g2.q)
    if a == 0.0 or b == 0.0 or math.isinf(a) or math.isinf(b):
        raise GeometryError("asymptotic geodesics have no common perpendicular")
    if (a > 0.0) != (b > 0.0):
        raise GeometryError("crossing geodesics have no common perpendicular")
    a, b = abs(a), abs(b)
    if a == b:
        raise GeometryError("degenerate configuration")
    rho = max(a, b) / min(a, b)
    return math.acosh((rho + 1.0) / (rho - 1.0))


def geodesics_disjoint(g1: Geodesic, g2: Geodesic) -> bool:
    """True when the endpoint pairs are unlinked and share no endpoint."""
    try:
        geodesic_distance(g1, g2)
    except GeometryError:
        return False
    return True


def a_of_l(l: float) -> float:
    """Ortholength to kernel parameter: a = sech^2(l/2)."""
    if not l > 0.0:
        raise ValueError("a_of_l requires l > 0")
    return 1.0 / math.cosh(0.5 * l) ** 2


def l_of_a(a: float) -> float:
    """Inverse of a_of_l on (0, 1)."""
    if not 0.0 < a < 1.0:
        raise ValueError("l_of_a requires a in (0, 1)")
    return 2.0 * math.acosh(1.0 / math.sqrt(a))


# ---------------------------------------------------------------------------
# Surfaces


@dataclass(frozen=True)
class SurfaceModel:
    """Finite-area hyperbolic surface with totally geodesic boundary."""
    generators: tuple
    boundary_words: tuple
    cuff_lengths: tuple
    chi_eff: float
    cusp_count: int
    boundary_length: float

    def __post_init__(self):
        if not self.chi_eff < 0:
            raise ValueError("chi_eff must be negative")

    @property
    def area(self) -> float:
        return 2.0 * PI_AREA * abs(self.chi_eff)

    def to_json(self) -> str:
        if self.cusp_count == 3 and not self.cuff_lengths:
            return json.dumps({"type": "ideal_triangle"})
        return json.dumps({"type": "pants", "cuffs": list(self.cuff_lengths)})

    @staticmethod
    def from_json(text: str) -> "SurfaceModel":
        doc = json.loads(text)
        kind = doc.get("type")
        if kind == "pants":
            cuffs = doc["cuffs"]
            if len(cuffs) != 3:
                raise ValueError("pants surface needs exactly three cuff lengths")
            return build_pants(*cuffs)
        if kind == "ideal_triangle":
            return ideal_triangle()
        raise ValueError(f"unknown surface type: {kind!r}")


PI_AREA = math.pi  # kept symbolic for readability of area = 2*pi*|chi|


def ideal_triangle() -> SurfaceModel:
    """The ideal triangle: three boundary cusps, empty orthospectrum.

    chi_eff = chi_top - C_S/2 = 1 - 3/2 = -1/2, so area = pi.
    """
    return SurfaceModel(
        generators=(), boundary_words=(), cuff_lengths=(),
        chi_eff=-0.5, cusp_count=3, boundary_length=0.0,
    )


def seam_length(li: float, lj: float, lk: float) -> float:
    """Right-angled hexagon rule: perpendicular between cuffs i and j,
    opposite cuff k."""
    num = math.cosh(0.5 * lk) + math.cosh(0.5 * li) * math.cosh(0.5 * lj)
    den = math.sinh(0.5 * li) * math.sinh(0.5 * lj)
    return math.acosh(num / den)


def _turtle_translation(length: float) -> np.ndarray:
    e = math.exp(0.5 * length)
    return np.array([[e, 0.0], [0.0, 1.0 / e]])


def _turtle_rotation(angle: float) -> np.ndarray:
    c, s = math.cos(0.5 * angle), math.sin(0.5 * angle)
    return np.array([[c, s], [-s, c]])


def pants_octagon_frames(L1: float, L2: float, L3: float):
    """Fundamental right-angled octagon for a pair of pants.

    Two mirror hexagons glued across the seam joining cuffs 1 and 2.  Side
    order: half cuff 3, seam(3,1), full cuff 1, seam(3,1), half cuff 3,
    seam(2,3), full cuff 2, seam(2,3).  Returns (side_lengths, frames,
    closure_defect) where frames[k] is the SL(2,R) frame at the start of
    side k pointing along it.
    """
    s31 = seam_length(L3, L1, L2)
    s23 = seam_length(L2, L3, L1)
    lengths = [0.5 * L3, s31, L1, s31, 0.5 * L3, s23, L2, s23]
    frames = []
    m = np.eye(2)
    turn = _turtle_rotation(0.5 * math.pi)
    for ell in lengths:
        frames.append(m.copy())
        m = m @ _turtle_translation(ell) @ turn
    closure = min(np.abs(m - np.eye(2)).max(), np.abs(m + np.eye(2)).max())
    return lengths, frames, closure


def build_pants(L1: float, L2: float, L3: float) -> SurfaceModel:
    """Hyperbolic pair of pants with geodesic boundary lengths L1, L2, L3.

    Generators A, B translate along the cuff-1 and cuff-2 geodesics by L1
    and L2; boundary words are {A, B, (AB)^-1}.
    """
    if min(L1, L2, L3) <= 0.0:
        raise ValueError("cuff lengths must be positive")
    lengths, frames, closure = pants_octagon_frames(L1, L2, L3)
    if closure > 1e-9:
        raise GeometryError(f"octagon failed to close (defect {closure:.2e})")
    # side 2 runs along cuff 1, side 6 along cuff 2
    f1 = Isometry(frames[2])
    f2 = Isometry(frames[6])
    a = f1 @ Isometry(_turtle_translation(L1)) @ f1.inverse()
    b = f2 @ Isometry(_turtle_translation(L2)) @ f2.inverse()
    ab = a @ b
    if abs(ab.trace) <= 2.0:
        raise GeometryError("degenerate pants: AB not hyperbolic")
    return SurfaceModel(
        generators=(a, b),
        boundary_words=(a, b, ab.inverse()),
        cuff_lengths=(float(L1), float(L2), float(L3)),
        chi_eff=-1.0,
        cusp_count=0,
        boundary_length=float(L1 + L2 + L3),
    )


# ---------------------------------------------------------------------------
# Orthospectrum enumeration

# free group words over A, A^-1, B, B^-1 encoded as 0, 1, 2, 3
_INV = (1, 0, 3, 2)


def _reduce(word: tuple) -> tuple:
    out = []
    for g in word:
        if out and out[-1] == _INV[g]:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _mul(w1: tuple, w2: tuple) -> tuple:
    out = list(w1)
    for g in w2:
        if out and out[-1] == _INV[g]:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def _inv(word: tuple) -> tuple:
    return tuple(_INV[g] for g in reversed(word))


# boundary words in letters: A, B, (AB)^-1 = B^-1 A^-1
_BOUNDARY_WORDS = ((0,), (2,), (3, 1))


def _coset_canonical(i: int, word: tuple, j: int) -> tuple:
    """Shortest, lexicographically least reduced word in the double coset
    <b_i> word <b_j>.

    Word length is convex along b_i^m word b_j^n in either exponent, so the
    minimum is reachable through words no longer than the input; a bounded
    BFS over that sublevel set is exhaustive.
    """
    bi, bj = _BOUNDARY_WORDS[i], _BOUNDARY_WORDS[j]
    bi_inv, bj_inv = _inv(bi), _inv(bj)
    bound = len(word)
    seen = {word}
    stack = [word]
    while stack:
        w = stack.pop()
        for cand in (_mul(bi, w), _mul(bi_inv, w),
                     _mul(w, bj), _mul(w, bj_inv)):
            if len(cand) <= bound and cand not in seen:
                seen.add(cand)
                stack.append(cand)
    return min(seen, key=lambda w: (len(w), w))


def _ortho_key(i: int, word: tuple, j: int) -> tuple:
    """Canonical identifier of the orthogeodesic determined by the
    perpendicular between axis(b_i) and word*axis(b_j)*word^-1, invariant
    under the double-coset action and orientation reversal."""
    k1 = (i, j, _coset_canonical(i, word, j))
    k2 = (j, i, _coset_canonical(j, _inv(word), i))
    return min(k1, k2)


@dataclass(frozen=True)
class OrthoSpectrum:
    """Sorted ortholengths with multiplicities below a cutoff."""
    lengths: tuple          # ((l, multiplicity), ...) sorted by l
    l_max: float
    complete_below_cutoff: bool = True

    def total_terms(self) -> int:
        return sum(m for _, m in self.lengths)

    def iter_lengths(self):
        for l, m in self.lengths:
            yield l, m

    def to_json(self) -> str:
        return json.dumps([[l, m] for l, m in self.lengths])

    @staticmethod
    def from_json(text: str, l_max: float = INF) -> "OrthoSpectrum":
        data = json.loads(text)
        return OrthoSpectrum(tuple((float(l), int(m)) for l, m in data), l_max)


def _group_lengths(lengths, tol: float = 1e-7):
    out = []
    for l in sorted(lengths):
        if out and l - out[-1][0] < tol:
            out[-1][1] += 1
        else:
            out.append([l, 1])
    return tuple((l, m) for l, m in out)


def enumerate_orthospectrum(surface: SurfaceModel, l_max: float,
                            margin: float | None = None,
                            max_word_len: int = 64) -> OrthoSpectrum:
    """All ortholengths <= l_max of a pants-type surface, with multiplicity.

    BFS over reduced words w in the free group on the generators; each
    candidate perpendicular runs between axis(b_i) and w axis(b_j) w^-1.
    Candidates are deduplicated by a canonical double-coset key.  A subtree
    is pruned once every still-relevant lift sits farther than
    l_max + margin from its base axis.
    """
    if surface.cusp_count > 0:
        raise ValueError("orthospectrum enumeration requires a cusp-free surface")
    if not l_max > 0.0:
        raise ValueError("l_max must be positive")
    if margin is None:
        margin = 2.0 * max(surface.cuff_lengths)

    gens = [surface.generators[0], surface.generators[0].inverse(),
            surface.generators[1], surface.generators[1].inverse()]
    base_axes = [w.axis() for w in surface.boundary_words]
    base_pts = [(g.p, g.q) for g in base_axes]

    found: dict = {}
    horizon = l_max + margin

    def lift_distance(mat: np.ndarray, i: int, j: int) -> float:
        """Distance from axis(b_i) to the j-lift under mat; inf if same
        geodesic, raises on genuinely crossing lifts."""
        iso = Isometry(mat)
        p = iso.apply(base_pts[j][0])
        q = iso.apply(base_pts[j][1])
        bi = base_axes[i]
        same = ({p, q} == {bi.p, bi.q})
        if same:
            return INF
        try:
            return geodesic_distance(bi, Geodesic(p, q))
        except GeometryError as exc:
            raise GeometryError(
                f"boundary lifts cross: invalid surface model ({exc})") from exc

    def starts_with(word: tuple, prefix: tuple) -> bool:
        return word[:len(prefix)] == prefix

    queue = deque()
    queue.append(((), np.eye(2)))
    while queue:
        word, mat = queue.popleft()
        keep_any = False
        for i in range(3):
            bi, bi_inv = _BOUNDARY_WORDS[i], _inv(_BOUNDARY_WORDS[i])
            # skip i when a b_i^{+-1} prefix strips off: the lift repeats a
            # shorter word's orbit and so does its whole subtree
            if word and (starts_with(word, bi) or starts_with(word, bi_inv)):
                continue
            best = INF
            for j in range(3):
                if not word and i == j:
                    continue
                # likewise skip j when a b_j^{+-1} suffix strips off: the
                # candidate repeats the shorter ancestor word's orthogeodesic
                bj = _BOUNDARY_WORDS[j]
                if len(word) >= len(bj) and word[-len(bj):] in (bj, _inv(bj)):
                    continue
                d = lift_distance(mat, i, j)
                if math.isinf(d):
                    continue
                best = min(best, d)
                if d <= l_max:
                    key = _ortho_key(i, word, j)
                    prev = found.get(key)
                    if prev is None:
                        found[key] = d
                    elif abs(prev - d) > 1e-6:
                        raise GeometryError("inconsistent duplicate ortholength")
            if best <= horizon:
                keep_any = True
        if (keep_any or not word) and len(word) < max_word_len:
            for g in range(4):
                if word and word[-1] == _INV[g]:
                    continue
                child = word + (g,)
                queue.append((child, _canonical(mat @ gens[g].m)))

    spectrum = _group_lengths(found.values())
    return OrthoSpectrum(spectrum, l_max, complete_below_cutoff=True)

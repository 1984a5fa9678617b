"""Admissibility of socle-factor sequences, composite-image computations and
the verification of the scalar identity lambda = C * 6j.

A sequence V(a_1), ..., V(a_n) is admissible when some uniserial module of
sl(2) semidirect V(m) has exactly those socle factors.  The closed-form
decision implemented here (and checked in the tests against the brute-force
commutator oracle) is: a single factor; any pair joined by a triangle with m;
arithmetic progressions with increment m of any length; the exceptional
length-3 sequences V(0), V(m), V(c) with c <= 2m, c = 2m mod 4; and the
self-dual length-4 family V(0), V(m), V(m), V(0) for m divisible by 4, the
only case with a one-parameter module family.  Everything is closed under
reversal.

The bridge to recoupling theory: for f: V(p) -> Hom(V(b), V(a)) and
g: V(q) -> Hom(V(c), V(b)), the composite image contains V(k) iff the
6j-symbol {q/2 k/2 p/2; a/2 b/2 c/2} is non-zero, and the proportionality
scalar of the composed equivariant map is that 6j-symbol times an explicit
non-zero factor C.  Both facts are verified here by independent tensor
computations.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction

from . import sl2
from .constructions import build_from_sequence
from .exact import SqrtRational, binomial, factorial, rref, solve_columns
from .gmod import GRep
from .sl2 import TensorVector, iota
from .wigner import cgc, delta, sixj, triangle

NOT_ADMISSIBLE = "NotAdmissible"
UNIQUE_MODULE = "UniqueModule"
ONE_PARAMETER_FAMILY = "OneParameterFamily"


@dataclass(frozen=True)
class AdmissibleVerdict:
    status: str
    witness: str | None = None

    @property
    def admissible(self) -> bool:
        return self.status != NOT_ADMISSIBLE


def _oriented_rule(seq: list[int], m: int) -> tuple[str, str] | None:
    n = len(seq)
    if n == 1:
        return UNIQUE_MODULE, "irreducible"
    if all(seq[i + 1] - seq[i] == m for i in range(n - 1)):
        return UNIQUE_MODULE, "arithmetic-progression"
    if n == 2:
        if triangle(seq[0], seq[1], m):
            return UNIQUE_MODULE, "length2-triangle"
        return None
    if n == 3:
        a, b, c = seq
        if a == 0 and b == m and c <= 2 * m and (2 * m - c) % 4 == 0:
            return UNIQUE_MODULE, "length3-exceptional"
        return None
    if n == 4 and seq == [0, m, m, 0] and m % 4 == 0:
        return ONE_PARAMETER_FAMILY, "z-family"
    return None


def is_admissible(seq, m: int) -> AdmissibleVerdict:
    """Closed-form admissibility decision, up to reversal of the sequence."""
    seq = [int(a) for a in seq]
    if not seq:
        raise ValueError("the sequence must be non-empty")
    if any(a < 0 for a in seq):
        raise ValueError("socle factors must be non-negative")
    if m < 1:
        raise ValueError("the radical weight m must be positive")
    hit = _oriented_rule(seq, m) or _oriented_rule(seq[::-1], m)
    if hit is None:
        return AdmissibleVerdict(NOT_ADMISSIBLE)
    return AdmissibleVerdict(*hit)


def length3_condition4(a: int, b: int, c: int, m: int) -> bool:
    """Closed form for admissibility of the length-3 sequence V(a), V(b), V(c).

    Both consecutive triangles with m must hold (domain error otherwise); the
    sequence is admissible iff, up to swapping a and c, either c = 0, b = m,
    a = 2m mod 4 and a <= 2m, or b = c + m and a = c + 2m.
    """
    if not triangle(a, b, m) or not triangle(b, c, m):
        raise ValueError(f"triangle conditions fail for [{a}, {b}, {c}] with m={m}")

    def oriented(x, y, z):
        if z == 0 and y == m and (2 * m - x) % 4 == 0 and x <= 2 * m:
            return True
        return y == z + m and x == z + 2 * m

    return oriented(a, b, c) or oriented(c, b, a)


def length3_condition3(a: int, b: int, c: int, m: int) -> bool:
    """6j-vanishing form of length-3 admissibility.

    The sequence V(a), V(b), V(c) is admissible iff {m/2 k/2 m/2; a/2 b/2 c/2}
    vanishes for every k = 2m-2 mod 4 (beyond k = 2m the symbol is zero by
    definition, so only finitely many k matter).
    """
    if not triangle(a, b, m) or not triangle(b, c, m):
        raise ValueError(f"triangle conditions fail for [{a}, {b}, {c}] with m={m}")
    start = (2 * m - 2) % 4
    for k in range(start, 2 * m + 1, 4):
        if not sixj(m, k, m, a, b, c, cross_check=False).is_zero:
            return False
    return True


# -- composite images -----------------------------------------------------------


def _graded_span_components(members: list[tuple[int, tuple[Fraction, ...]]]) -> set[int]:
    """Irreducible constituents of a module spanned by weight vectors."""
    by_weight: dict[int, list] = {}
    for w, vec in members:
        by_weight.setdefault(w, []).append(vec)
    dims = {w: len(rref(vecs)[0]) for w, vecs in by_weight.items()}
    out = set()
    for k in (w for w in dims if w >= 0):
        if dims.get(k, 0) - dims.get(k + 2, 0) > 0:
            out.add(k)
    return out


def compute_I_J(
    a: int, b: int, c: int, p: int, q: int, cross_check: bool = True
) -> tuple[list[int], list[int] | None]:
    """Constituents of the composite image V(p) x V(q) -> Hom(V(c), V(a)).

    I lists the k with V(k) in the image of the full product map; when p = q,
    J lists the constituents coming from the alternating square, which are
    exactly the members of I with k = 2p-2 mod 4.  By default both are also
    recomputed from the explicit span of products of embedding matrices, and
    any mismatch raises.
    """
    if not triangle(p, a, b):
        raise ValueError(f"triangle condition fails for ({p}, {a}, {b})")
    if not triangle(q, b, c):
        raise ValueError(f"triangle condition fails for ({q}, {b}, {c})")
    lo = max(abs(p - q), abs(a - c))
    hi = min(p + q, a + c)
    candidates = [
        k
        for k in range(lo, hi + 1)
        if triangle(k, p, q) and triangle(k, a, c)
    ]
    image = [
        k for k in candidates if not sixj(q, k, p, a, b, c, cross_check=False).is_zero
    ]
    alternating = None
    if p == q:
        alternating = [k for k in image if (2 * p - 2 - k) % 4 == 0]
    if cross_check:
        f = sl2.hom_embedding(p, b, a, sl2.DIVIDED_POWER)
        g = sl2.hom_embedding(q, c, b, sl2.DIVIDED_POWER)

        def flat(mat):
            return tuple(x for row in mat.to_fractions() for x in row)

        products = {}
        for i in range(p + 1):
            for j in range(q + 1):
                products[(i, j)] = f[i] * g[j]
        members = [
            ((p - 2 * i) + (q - 2 * j), flat(mat)) for (i, j), mat in products.items()
        ]
        if set(image) != _graded_span_components(members):
            raise AssertionError(f"composite image mismatch at {(a, b, c, p, q)}")
        if p == q:
            alt_members = [
                ((p - 2 * i) + (q - 2 * j), flat(products[(i, j)] - products[(j, i)]))
                for i in range(p + 1)
                for j in range(i + 1, q + 1)
            ]
            if set(alternating) != _graded_span_components(alt_members):
                raise AssertionError(
                    f"alternating image mismatch at {(a, b, c, p, q)}"
                )
    return image, alternating


# -- the scalar of the composed map ----------------------------------------------


def _four_triangles(a, b, c, p, q, k) -> bool:
    return (
        triangle(k, p, q)
        and triangle(p, a, b)
        and triangle(q, b, c)
        and triangle(k, a, c)
    )


def _require_four_triangles(a, b, c, p, q, k) -> None:
    if not _four_triangles(a, b, c, p, q, k):
        raise ValueError(
            f"the four triangle conditions fail for (a,b,c,p,q,k)={(a, b, c, p, q, k)}"
        )


def _f_power_images(top: TensorVector, count: int) -> list[dict]:
    out = [top]
    for _ in range(count):
        out.append(out[-1].apply_f())
    return [t.coeffs for t in out]


def lambda_phi(a: int, b: int, c: int, p: int, q: int, k: int) -> Fraction:
    """Proportionality scalar of the composed map V(k) -> V(a) tensor V(c).

    Computed by brute tensor expansion: push the canonical highest weight
    vector through V(p) tensor V(q), embed both slots, contract the middle
    V(b) pair, and compare against the canonical highest weight vector of
    V(a) tensor V(c) coefficient by coefficient.  Non-proportionality is an
    internal error.
    """
    _require_four_triangles(a, b, c, p, q, k)
    x1 = (p + q - k) // 2
    outer = [
        Fraction((-1) ** r1 * binomial(x1, r1), binomial(x1 + k, p - r1))
        for r1 in range(x1 + 1)
    ]
    left = _f_power_images(iota(p, a, b), x1)
    right = _f_power_images(iota(q, b, c), x1)
    phi: dict[tuple[int, int], Fraction] = {}
    for r1, coeff in enumerate(outer):
        if coeff == 0:
            continue
        for (i, r), ca in left[r1].items():
            if ca == 0:
                continue
            t_needed = b - r
            for (t, n), cb in right[x1 - r1].items():
                if t != t_needed or cb == 0:
                    continue
                sign = -1 if r & 1 else 1
                key = (i, n)
                phi[key] = phi.get(key, Fraction(0)) + coeff * ca * cb * sign
    target = iota(k, a, c).coeffs
    lam = None
    for key, tv in target.items():
        pv = phi.get(key, Fraction(0))
        if lam is None:
            lam = pv / tv
        elif pv != lam * tv:
            raise RuntimeError(f"composed image is not proportional at {(a, b, c, p, q, k)}")
    for key, pv in phi.items():
        if key not in target and pv != 0:
            raise RuntimeError(f"composed image is not proportional at {(a, b, c, p, q, k)}")
    assert lam is not None
    return lam


def c_factor(a: int, b: int, c: int, p: int, q: int, k: int) -> SqrtRational:
    """The explicit non-zero factor C with lambda = C * {q/2 k/2 p/2; a/2 b/2 c/2}."""
    _require_four_triangles(a, b, c, p, q, k)
    x_ac = (a + c - k) // 2
    sign = -1 if (x_ac + b + k) & 1 else 1
    rational = Fraction(
        sign * (p + q + k + 2) * (a + b + p + 2) * (b + c + q + 2),
        4 * (a + c + k + 2),
    )
    numerator = delta(a, b, p) * delta(p, q, k) * delta(b, c, q)
    return rational * (numerator / delta(a, c, k))


@dataclass(frozen=True)
class LambdaReport:
    a: int
    b: int
    c: int
    p: int
    q: int
    k: int
    lam: Fraction
    c_factor: SqrtRational
    sixj: SqrtRational
    product: SqrtRational
    agrees: bool


def verify_scalar_theorem(
    a: int, b: int, c: int, p: int, q: int, k: int, cross_check_sixj: bool = True
) -> LambdaReport:
    """Compare the tensor-expansion scalar with C times the 6j-symbol."""
    lam = lambda_phi(a, b, c, p, q, k)
    cf = c_factor(a, b, c, p, q, k)
    sj = sixj(q, k, p, a, b, c, cross_check=cross_check_sixj)
    product = cf * sj
    agrees = product.is_rational and product.as_fraction() == lam
    return LambdaReport(a, b, c, p, q, k, lam, cf, sj, product, agrees)


def binomial_identity_check(x: int, y: int, z: int) -> bool:
    """sum_r C(x+r, r) C(y-r, z-r) = C(x+y+1, z), summed over 0 <= r <= z."""
    if x < 0 or z < 0 or y < z:
        raise ValueError("need x >= 0 and y >= z >= 0")
    lhs = sum(binomial(x + r, r) * binomial(y - r, z - r) for r in range(z + 1))
    return lhs == binomial(x + y + 1, z)


def cgc_iota_bridge(a: int, b: int, k: int) -> bool:
    """Tie Clebsch-Gordan coefficients to the canonical embedding exactly.

    In the normalized basis M_{j,mu} = sqrt((j+mu)!/(j-mu)!) F^{j-mu} e, the
    map M_{j,mu} -> sum C^{j,mu} M_{j1,mu1} x M_{j2,mu2} equals the canonical
    embedding scaled by sqrt(2j+1) / ((j1+j2+j+1) Delta(j1,j2,j)); this
    compares the two coefficient by coefficient for every mu.
    """
    if not triangle(a, b, k):
        raise ValueError(f"triangle condition fails for ({a}, {b}, {k})")
    images = _f_power_images(iota(k, a, b), k)
    scale = (
        SqrtRational.sqrt_of(k + 1) * Fraction(2, a + b + k + 2)
    ) / delta(a, b, k)
    for tmu in range(-k, k + 1, 2):
        img = images[(k - tmu) // 2]
        common = scale * SqrtRational.sqrt_of(
            Fraction(factorial((k + tmu) // 2), factorial((k - tmu) // 2))
        )
        for r1 in range(a + 1):
            for r2 in range(b + 1):
                tm1, tm2 = a - 2 * r1, b - 2 * r2
                rhs = common * img.get((r1, r2), Fraction(0))
                if tm1 + tm2 != tmu:
                    lhs = SqrtRational(Fraction(0))
                else:
                    lhs = cgc(a, tm1, b, tm2, k, tmu) * SqrtRational.sqrt_of(
                        Fraction(
                            factorial((a + tm1) // 2) * factorial((b + tm2) // 2),
                            factorial((a - tm1) // 2) * factorial((b - tm2) // 2),
                        )
                    )
                if lhs != rhs:
                    return False
    return True


# -- recoupling transition verification --------------------------------------------


def _triple_tensor_lhs(a, b, c, k, p) -> dict:
    """Coefficients of (iota_p^{a,b} tensor 1) after iota_k^{p,c} on e_k."""
    x = (p + c - k) // 2
    outer = [
        Fraction((-1) ** r * binomial(x, r), binomial(x + k, p - r)) for r in range(x + 1)
    ]
    left = _f_power_images(iota(p, a, b), x)
    out: dict[tuple[int, int, int], Fraction] = {}
    for r, coeff in enumerate(outer):
        if coeff == 0:
            continue
        s = x - r
        for (i, j), cv in left[r].items():
            if cv:
                key = (i, j, s)
                out[key] = out.get(key, Fraction(0)) + coeff * cv
    return out


def _triple_tensor_rhs(a, b, c, k, q) -> dict:
    """Coefficients of (1 tensor iota_q^{b,c}) after iota_k^{a,q} on e_k."""
    x = (a + q - k) // 2
    outer = [
        Fraction((-1) ** r * binomial(x, r), binomial(x + k, a - r)) for r in range(x + 1)
    ]
    right = _f_power_images(iota(q, b, c), x)
    out: dict[tuple[int, int, int], Fraction] = {}
    for r, coeff in enumerate(outer):
        if coeff == 0:
            continue
        for (j, l), cv in right[x - r].items():
            if cv:
                key = (r, j, l)
                out[key] = out.get(key, Fraction(0)) + coeff * cv
    return out


def verify_recoupling(a: int, b: int, c: int, k: int) -> bool:
    """Check that 6j-symbols are the transition coefficients between the two
    coupled bases of maps V(k) -> V(a) tensor V(b) tensor V(c).

    For each admissible intermediate p, the left-coupled map is expanded in
    the right-coupled basis by an exact linear solve, and each coefficient is
    compared with its predicted value built from the 6j-symbol, two Delta
    ratios and the explicit sign and dimension factors.
    """
    ps = [
        p
        for p in range(abs(a - b), a + b + 1)
        if triangle(a, b, p) and triangle(p, c, k)
    ]
    qs = [
        q
        for q in range(abs(b - c), b + c + 1)
        if triangle(b, c, q) and triangle(a, q, k)
    ]
    if not ps or not qs:
        raise ValueError(f"V({k}) does not occur in V({a}) x V({b}) x V({c})")
    keys = sorted(
        {(i, j, l) for i in range(a + 1) for j in range(b + 1) for l in range(c + 1)}
    )
    rhs_vectors = []
    for q in qs:
        coeffs = _triple_tensor_rhs(a, b, c, k, q)
        rhs_vectors.append(tuple(coeffs.get(key, Fraction(0)) for key in keys))
    for p in ps:
        lhs = _triple_tensor_lhs(a, b, c, k, p)
        target = tuple(lhs.get(key, Fraction(0)) for key in keys)
        solved = solve_columns(rhs_vectors, target)
        if solved is None:
            return False
        l_sign = -1 if ((a - b - c + k) // 2) & 1 else 1
        l_fac = SqrtRational(
            Fraction(l_sign * 4, (a + b + p + 2) * (p + c + k + 2))
        ) / (delta(a, b, p) * delta(p, c, k))
        for q, got in zip(qs, solved):
            r_sign = -1 if q & 1 else 1
            r_fac = SqrtRational(
                Fraction(r_sign * 4 * (q + 1), (b + c + q + 2) * (a + q + k + 2))
            ) / (delta(b, c, q) * delta(a, q, k))
            predicted = (r_fac * sixj(a, b, p, c, k, q)) / l_fac
            if not predicted.is_rational or predicted.as_fraction() != got:
                return False
    return True


# -- sweep drivers ------------------------------------------------------------------


def scalar_theorem_tuples(max_val: int):
    """All (a,b,c,p,q,k) with entries <= max_val passing the four triangles."""
    for a in range(max_val + 1):
        for b in range(max_val + 1):
            for p in range(abs(a - b), min(a + b, max_val) + 1, 2):
                for c in range(max_val + 1):
                    for q in range(abs(b - c), min(b + c, max_val) + 1, 2):
                        lo = max(abs(p - q), abs(a - c))
                        hi = min(p + q, a + c, max_val)
                        if (p + q + a + c) % 2:
                            continue
                        start = lo if (lo + p + q) % 2 == 0 else lo + 1
                        for k in range(start, hi + 1, 2):
                            yield (a, b, c, p, q, k)


def _scalar_chunk(args) -> list[LambdaReport]:
    a, max_val = args
    return [
        verify_scalar_theorem(*t, cross_check_sixj=False)
        for t in scalar_theorem_tuples(max_val)
        if t[0] == a
    ]


def verify_scalar_sweep(max_val: int, jobs: int = 1) -> list[LambdaReport]:
    """verify_scalar_theorem over the whole box; deterministic order."""
    if jobs <= 1:
        return [
            verify_scalar_theorem(*t, cross_check_sixj=False)
            for t in scalar_theorem_tuples(max_val)
        ]
    tasks = [(a, max_val) for a in range(max_val + 1)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(_scalar_chunk, tasks))
    return [report for chunk in chunks for report in chunk]


@dataclass(frozen=True)
class ClassificationRow:
    m: int
    a: int
    b: int
    c: int
    closed_form: bool
    sixj_vanishing: bool
    alternating_image_empty: bool
    assembly_succeeds: bool

    @property
    def consistent(self) -> bool:
        return (
            self.closed_form
            == self.sixj_vanishing
            == self.alternating_image_empty
            == self.assembly_succeeds
        )


def classification_tuples(max_m: int, max_weight: int):
    for m in range(1, max_m + 1):
        for b in range(max_weight + 1):
            for a in range(abs(b - m), min(b + m, max_weight) + 1, 2):
                for c in range(abs(b - m), min(b + m, max_weight) + 1, 2):
                    yield (m, a, b, c)


def classification_row(
    m: int, a: int, b: int, c: int, span_oracle: bool = True
) -> ClassificationRow:
    closed = length3_condition4(a, b, c, m)
    vanishing = length3_condition3(a, b, c, m)
    _, alternating = compute_I_J(a, b, c, m, m, cross_check=span_oracle)
    built = build_from_sequence([a, b, c], m)
    return ClassificationRow(
        m, a, b, c, closed, vanishing, alternating == [], isinstance(built, GRep)
    )


def _classification_chunk(args) -> list[ClassificationRow]:
    m, max_weight = args
    return [
        classification_row(*t)
        for t in classification_tuples(m, max_weight)
        if t[0] == m
    ]


def classification_sweep(max_m: int, max_weight: int, jobs: int = 1) -> list[ClassificationRow]:
    """Three-way check of the length-3 classification over the whole box."""
    if jobs <= 1:
        return [classification_row(*t) for t in classification_tuples(max_m, max_weight)]
    tasks = [(m, max_weight) for m in range(1, max_m + 1)]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        chunks = list(pool.map(_classification_chunk, tasks))
    return [row for chunk in chunks for row in chunk]

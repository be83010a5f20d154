"""Isogeny-decomposition bookkeeping for the quotient Jacobians.

The quadrangular Z_p^2 quotient decomposes along the p+1 cyclic
subgroups of the deck group; each factor is the Jacobian of an explicit
cyclic p-gonal curve.  The general cover decomposes along index-p
subgroups of its Z_p^n deck group.  Factors are emitted as genus +
equation data only; no analytic torus structures exist here, so every
claim stays exactly checkable (fixed-point census, Riemann-Hurwitz,
genus sums, Kani-Rosen conditions).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .classify import genus_surface
from .exactnum import _check_prime
from .fermat_group import FreeSubgroup, QuotientMap, quotient_map
from .models import CurveModel, pgonal_model


class BranchDataError(ValueError):
    """Riemann-Hurwitz data that cannot come from a cyclic quotient."""


def genus_quotient_rh(gS: int, p: int, f: int) -> int:
    """Genus of S/Z for Z cyclic of order p with f fixed points on S.

    Solves 2 gS - 2 = p (2 gZ - 2) + f (p - 1) exactly.
    """
    num = 2 * gS - 2 - f * (p - 1) + 2 * p
    if num % (2 * p) != 0 or num < 0:
        raise BranchDataError(f"inconsistent branch data gS={gS}, p={p}, f={f}")
    return num // (2 * p)


# -- fixed point census over G = H/K (rank-1 K, so G = Z_p^2) --------------


def _cyclic_directions(p: int) -> list[tuple[int, int]]:
    """Normalized generators of the p+1 cyclic subgroups of Z_p^2."""
    return [(0, 1)] + [(1, t) for t in range(p)]


def _direction_of(v: tuple[int, int], p: int) -> tuple[int, int]:
    if v[0] % p == 0 and v[1] % p == 0:
        raise ValueError("zero vector has no direction")
    if v[0] % p != 0:
        inv = pow(v[0], p - 2, p)
        return (1, v[1] * inv % p)
    return (0, 1)


@dataclass(frozen=True)
class FixedPointCensus:
    p: int
    K: FreeSubgroup
    alpha: int  # subgroups acting freely
    beta: int  # subgroups with p fixed points
    gamma: int  # subgroups with 2p fixed points
    per_subgroup: tuple[tuple[tuple[int, int], int], ...]  # (direction, f)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "per_subgroup": [
                {"direction": list(d), "fixed_points": f} for d, f in self.per_subgroup
            ],
        }


def fixed_point_profile(p: int, K: FreeSubgroup) -> FixedPointCensus:
    """Census of fixed points of the p+1 cyclic subgroups of G = H/K.

    Each of the four cone points contributes p points whose stabilizer
    is generated by the image of the corresponding standard generator,
    so f(Z) = p * #{j : phi(a_j) in Z}.
    """
    if K.rank != 1:
        raise ValueError("census applies to rank-1 kernels (l = 2)")
    qm = quotient_map(K)
    cone_dirs = [_direction_of(img, p) for img in qm.images]
    per = []
    counts = {0: 0, 1: 0, 2: 0}
    for d in _cyclic_directions(p):
        hits = sum(1 for cd in cone_dirs if cd == d)
        per.append((d, p * hits))
        counts[hits] += 1
    alpha, beta, gamma = counts[0], counts[1], counts[2]
    assert alpha + beta + gamma == p + 1 and beta + 2 * gamma == 4
    return FixedPointCensus(p, K, alpha, beta, gamma, tuple(per))


# -- factors ---------------------------------------------------------------


@dataclass(frozen=True)
class CyclicFactorProfile:
    """One isogeny factor: defining subgroup, genus, p-gonal model."""

    subgroup: dict
    fixed_count: int
    genus: int
    model: Optional[CurveModel]

    def to_json(self) -> dict:
        return {
            "subgroup": self.subgroup,
            "fixed_count": self.fixed_count,
            "genus": self.genus,
            "model": self.model.to_json() if self.model is not None else None,
        }


_N3_LABELS = ("infty", "0", "1", "lambda")


def _factor_model(p: int, labels: Sequence[str], monos: Sequence[int]) -> CurveModel:
    """Cyclic p-gonal model from branch labels and nonzero monodromies.

    Normalization: when all four quadrangular points are branched the
    exponent at 0 is scaled to 1 (so the infinity exponent never
    vanishes); otherwise the first branched point in label order gets
    exponent 1 and the infinity factor, when present, is deleted.
    """
    pairs = [(lab, m % p) for lab, m in zip(labels, monos) if m % p != 0]
    assert sum(m for _, m in pairs) % p == 0
    if len(pairs) == len(labels) == 4 and pairs[0][0] == "infty":
        scale_target = pairs[1][1]  # exponent at 0
    else:
        scale_target = pairs[0][1]
    inv = pow(scale_target, p - 2, p)
    scaled = [(lab, m * inv % p) for lab, m in pairs]
    return pgonal_model(p, scaled)


def decompose_type4(p: int, K: FreeSubgroup) -> list[CyclicFactorProfile]:
    """Positive-genus factors of the Jacobian of the rank-1 quotient.

    Factors are the quotients by the cyclic subgroups with 0 or p fixed
    points; every emitted four-branch model satisfies 1+a+b != 0 mod p
    and every three-branch one 1+a+b = 0 mod p (infinity included in
    the count with its deleted exponent).
    """
    census = fixed_point_profile(p, K)
    qm = quotient_map(K)
    gS = genus_surface(p, 2)
    out = []
    for d, f in census.per_subgroup:
        if f == 2 * p:
            continue  # genus zero
        # functional vanishing on the subgroup spanned by d
        psi = (-d[1] % p, d[0] % p)
        monos = [(psi[0] * img[0] + psi[1] * img[1]) % p for img in qm.images]
        model = _factor_model(p, _N3_LABELS, monos)
        genus = genus_quotient_rh(gS, p, f)
        out.append(
            CyclicFactorProfile(
                subgroup={"direction": list(d)}, fixed_count=f, genus=genus, model=model
            )
        )
    assert sum(c.genus for c in out) == gS
    return out


def decompose_gfc(
    p: int, n: int, branch_labels: Optional[Sequence[str]] = None
) -> list[CyclicFactorProfile]:
    """Decomposition of the full cover's Jacobian along index-p subgroups.

    Subgroups are kernels of functionals eta on Z_p^(n+1) with
    sum(eta) = 0, one per projective class; only those branched at
    r >= 3 of the n+1 points contribute (genus (p-1)(r-2)/2 > 0).
    Exponent normalization follows the two stated rules: with infinity
    unbranched the first exponent is 1 (the rest sum to p-1); with
    infinity branched its exponent is scaled to 1 and the factor deleted.
    """
    _check_prime(p)
    if n < 3:
        raise ValueError("need n >= 3")
    if branch_labels is None:
        if n == 3:
            branch_labels = _N3_LABELS
        else:
            branch_labels = ("infty", "0", "1") + tuple(
                f"lambda{i}" for i in range(1, n - 1)
            )
    labels = tuple(branch_labels)
    if len(labels) != n + 1 or len(set(labels)) != n + 1:
        raise ValueError(f"need {n + 1} distinct branch labels")
    out = []
    for phi in _normalized_functionals(p, n):
        eta = phi + (-sum(phi) % p,)
        r = sum(1 for c in eta if c != 0)
        if r < 3:
            continue
        genus = (p - 1) * (r - 2) // 2
        model = _factor_model(p, labels, eta)
        out.append(
            CyclicFactorProfile(
                subgroup={"eta": list(eta)}, fixed_count=r, genus=genus, model=model
            )
        )
    out.sort(key=lambda c: tuple(c.subgroup["eta"]))
    return out


def _normalized_functionals(p: int, n: int):
    """All (p^n - 1)/(p - 1) functionals on Z_p^n, first nonzero entry 1."""
    def rec(prefix: tuple[int, ...]):
        i = len(prefix)
        if i == n:
            if any(prefix):
                yield prefix
            return
        if any(prefix):
            for c in range(p):
                yield from rec(prefix + (c,))
        else:
            yield from rec(prefix + (0,))
            yield from rec(prefix + (1,))

    yield from rec(())


def prym_factors(p: int, K: FreeSubgroup) -> list[CyclicFactorProfile]:
    """Cover factors whose subgroup does not contain the kernel K.

    This is the complementary grouping to decompose_type4 inside the
    full cover's decomposition; it is emitted as a conjectural grouping
    only (no isogeny is constructed).
    """
    if K.rank != 1:
        raise ValueError("prym grouping applies to rank-1 kernels")
    gen = K.generator.k
    out = []
    for c in decompose_gfc(p, 3):
        eta = c.subgroup["eta"]
        if sum(e * g for e, g in zip(eta, gen)) % p != 0:
            out.append(c)
    return out


def kani_rosen_check(
    gS: int,
    subgroup_quotient_genera: Sequence[int],
    pairwise_quotient_genera: Sequence[Sequence[int]],
    commuting: Sequence[Sequence[bool]],
) -> bool:
    """Arithmetic sufficient conditions for a Jacobian product decomposition.

    True iff all pairs of subgroups commute, every pairwise quotient has
    genus zero, and the quotient genera sum to gS.
    """
    t = len(subgroup_quotient_genera)
    if len(pairwise_quotient_genera) != t or len(commuting) != t:
        raise ValueError("dimension mismatch")
    for row in pairwise_quotient_genera:
        if len(row) != t:
            raise ValueError("dimension mismatch")
    for row in commuting:
        if len(row) != t:
            raise ValueError("dimension mismatch")
    if any(not commuting[i][j] for i in range(t) for j in range(t)):
        return False
    if any(pairwise_quotient_genera[i][j] != 0 for i in range(t) for j in range(t) if i != j):
        return False
    return sum(subgroup_quotient_genera) == gS


def kani_rosen_instance(p: int, K: FreeSubgroup) -> bool:
    """Assemble and check the Kani-Rosen conditions for a rank-1 quotient."""
    factors = decompose_type4(p, K)
    t = len(factors)
    genera = [c.genus for c in factors]
    # G abelian: products of subgroups commute; any two distinct cyclic
    # subgroups generate all of G, whose quotient is the 4-point sphere.
    commuting = [[True] * t for _ in range(t)]
    pairwise = [[0 if i != j else genera[i] for j in range(t)] for i in range(t)]
    return kani_rosen_check(genus_surface(p, 2), genera, pairwise, commuting)

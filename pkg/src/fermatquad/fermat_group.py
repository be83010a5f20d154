"""The deck group H = Z_p^4 / <(1,1,1,1)> and its freely-acting subgroups.

H is elementary abelian of rank 3 but is kept in four coordinates, one
per standard generator a_1..a_4 (product = 1), so the coordinate
permutation action of S_4 is literal.  The canonical representative of
a class pins the last coordinate to 0.

An element has fixed points on the curve exactly when it is a power of
some a_j; a subgroup acts freely when it misses all of those powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .exactnum import _check_prime
from .s4 import Perm, inverse as perm_inverse

Vec4 = tuple[int, int, int, int]


class HClass:
    """Exponent class of a1^k1 a2^k2 a3^k3 a4^k4, canonical with k4 = 0."""

    __slots__ = ("p", "k")

    def __init__(self, p: int, raw):
        _check_prime(p)
        if len(raw) != 4:
            raise ValueError("need 4 exponents")
        k4 = raw[3]
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", tuple((c - k4) % p for c in raw))

    def __setattr__(self, *a):
        raise AttributeError("HClass values are immutable")

    def is_identity(self) -> bool:
        return self.k == (0, 0, 0, 0)

    def mul(self, other: "HClass") -> "HClass":
        return HClass(self.p, tuple(a + b for a, b in zip(self.k, other.k)))

    def pow(self, m: int) -> "HClass":
        return HClass(self.p, tuple(m * a for a in self.k))

    def inv(self) -> "HClass":
        return self.pow(-1)

    def __eq__(self, other):
        return (
            isinstance(other, HClass) and other.p == self.p and other.k == self.k
        )

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"HClass({self.p}, {self.k})"


def standard_generator(p: int, j: int) -> HClass:
    """a_j for j in 1..4."""
    raw = [0, 0, 0, 0]
    raw[j - 1] = 1
    return HClass(p, raw)


def has_fixed_points(e: HClass) -> bool:
    """True iff e is nontrivial and lies on one of the generator axes.

    Equivalent test: at least three coordinates of any representative
    coincide (subtracting the common value leaves a single axis).
    """
    if e.is_identity():
        return False
    k = e.k
    for v in set(k):
        if sum(1 for c in k if c == v) >= 3:
            return True
    return False


class FreeSubgroup:
    """A rank-1 or rank-2 subgroup of H acting freely on the curve.

    rank 1: cyclic, held by its normalized generator (first nonzero
    canonical coordinate scaled to 1).
    rank 2: the kernel of a functional eta on Z_p^4 with sum(eta) = 0;
    freeness is exactly "every eta_j nonzero"; eta is normalized so its
    first entry is 1.
    """

    __slots__ = ("p", "rank", "generator", "eta")

    def __init__(self, p: int, rank: int, generator: Optional[HClass], eta: Optional[Vec4]):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "eta", eta)

    def __setattr__(self, *a):
        raise AttributeError("FreeSubgroup values are immutable")

    # -- constructors --------------------------------------------------
    @classmethod
    def rank1(cls, p: int, raw, check: bool = True) -> "FreeSubgroup":
        e = raw if isinstance(raw, HClass) else HClass(p, raw)
        if e.is_identity():
            raise ValueError("trivial generator")
        k = e.k
        lead = next(i for i in range(4) if k[i] != 0)
        scale = pow(k[lead], p - 2, p)
        gen = e.pow(scale)
        if check:
            for m in range(1, p):
                if has_fixed_points(gen.pow(m)):
                    raise ValueError(f"subgroup <{k}> does not act freely")
        return cls(p, 1, gen, None)

    @classmethod
    def rank2(cls, p: int, eta, check: bool = True) -> "FreeSubgroup":
        _check_prime(p)
        eta = tuple(c % p for c in eta)
        if len(eta) != 4:
            raise ValueError("eta needs 4 entries")
        if sum(eta) % p != 0:
            raise ValueError("eta must kill the diagonal (entries sum to 0 mod p)")
        if check and any(c == 0 for c in eta):
            raise ValueError(f"kernel of eta={eta} does not act freely")
        lead = next(i for i in range(4) if eta[i] != 0)
        scale = pow(eta[lead], p - 2, p)
        eta = tuple(c * scale % p for c in eta)
        return cls(p, 2, None, eta)

    @classmethod
    def from_spec(cls, p: int, spec: str) -> "FreeSubgroup":
        """Parse "rank1:k1,k2,k3,k4" or "rank2:e1,e2,e3,e4"."""
        kind, _, body = spec.partition(":")
        coords = [int(t) for t in body.split(",")]
        if kind == "rank1":
            return cls.rank1(p, coords)
        if kind == "rank2":
            return cls.rank2(p, coords)
        raise ValueError(f"bad kernel spec {spec!r}")

    # -- protocol -------------------------------------------------------
    def key(self) -> tuple:
        if self.rank == 1:
            return (1, self.generator.k)
        return (2, self.eta)

    def __eq__(self, other):
        return (
            isinstance(other, FreeSubgroup)
            and other.p == self.p
            and other.key() == self.key()
        )

    def __hash__(self):
        return hash((self.p, self.key()))

    def __repr__(self):
        if self.rank == 1:
            return f"FreeSubgroup.rank1({self.p}, {self.generator.k})"
        return f"FreeSubgroup.rank2({self.p}, {self.eta})"

    def order(self) -> int:
        return self.p**self.rank

    def contains(self, e: HClass) -> bool:
        if self.rank == 2:
            return sum(a * b for a, b in zip(self.eta, e.k)) % self.p == 0
        g = self.generator.k
        lead = next(i for i in range(4) if g[i] != 0)
        if e.is_identity():
            return True
        if e.k[lead] == 0:
            return False
        m = e.k[lead] * pow(g[lead], self.p - 2, self.p) % self.p
        return self.generator.pow(m) == e

    def elements(self) -> Iterator[HClass]:
        p = self.p
        if self.rank == 1:
            for m in range(p):
                yield self.generator.pow(m)
        else:
            e1, e2, e3, _ = self.eta
            inv3 = pow(e3, p - 2, p)
            for a in range(p):
                for b in range(p):
                    c = -(e1 * a + e2 * b) * inv3 % p
                    yield HClass(p, (a, b, c, 0))

    def to_json(self) -> dict:
        if self.rank == 1:
            return {"rank": 1, "generator": list(self.generator.k)}
        return {"rank": 2, "eta": list(self.eta)}

    def spec_string(self) -> str:
        if self.rank == 1:
            return "rank1:" + ",".join(str(c) for c in self.generator.k)
        return "rank2:" + ",".join(str(c) for c in self.eta)


# -- enumeration --------------------------------------------------------


def enumerate_free_cyclic(p: int) -> list[FreeSubgroup]:
    """All order-p cyclic subgroups acting freely; length p^2 + p - 3.

    Normalized generators are (0,1,k,0) for k = 1..p-1 and (1,r,s,0)
    for (r,s) outside {(0,0),(1,1)}; each candidate is still run through
    the full freeness test.
    """
    _check_prime(p)
    out = []
    for k in range(1, p):
        out.append(FreeSubgroup.rank1(p, (0, 1, k, 0)))
    for r in range(p):
        for s in range(p):
            if (r, s) in ((0, 0), (1, 1)):
                continue
            out.append(FreeSubgroup.rank1(p, (1, r, s, 0)))
    out.sort(key=FreeSubgroup.key)
    assert len(out) == p * p + p - 3
    return out


def enumerate_free_rank2(p: int) -> list[FreeSubgroup]:
    """All Z_p^2 subgroups acting freely: eta = (1,b,c,d), all nonzero."""
    _check_prime(p)
    out = []
    for b in range(1, p):
        for c in range(1, p):
            d = -(1 + b + c) % p
            if d == 0:
                continue
            out.append(FreeSubgroup.rank2(p, (1, b, c, d)))
    out.sort(key=FreeSubgroup.key)
    return out


def oracle_free_cyclic(p: int) -> list[FreeSubgroup]:
    """Brute-force oracle: all (p^3-1)/(p-1) cyclic subgroups, filtered.

    Enumerates every 1-dimensional subspace of the canonical coordinate
    space and rejects a subgroup when any nontrivial power of a standard
    generator lies in it (set membership, no normal-form shortcut).
    """
    _check_prime(p)
    directions: list[Vec4] = [(0, 0, 1, 0)]
    directions += [(0, 1, t, 0) for t in range(p)]
    directions += [(1, s, t, 0) for s in range(p) for t in range(p)]
    axes = [standard_generator(p, j) for j in range(1, 5)]
    out = []
    for d in directions:
        gen = HClass(p, d)
        members = {gen.pow(m) for m in range(p)}
        free = all(a.pow(m) not in members for a in axes for m in range(1, p))
        if free:
            out.append(FreeSubgroup.rank1(p, d))
    out.sort(key=FreeSubgroup.key)
    return out


def oracle_free_rank2(p: int) -> list[FreeSubgroup]:
    """Brute-force oracle over all (p^3-1)/(p-1) hyperplanes of H.

    Keeps the kernels that contain no nontrivial power of a_1..a_4,
    testing all 4(p-1) powers by direct dot product.
    """
    _check_prime(p)
    # functionals on canonical coordinates (k1,k2,k3), up to scale
    functionals: list[tuple[int, int, int]] = [(0, 0, 1)]
    functionals += [(0, 1, t) for t in range(p)]
    functionals += [(1, s, t) for s in range(p) for t in range(p)]
    axes = [standard_generator(p, j).k[:3] for j in range(1, 5)]
    out = []
    for phi in functionals:
        ok = True
        for a in axes:
            for m in range(1, p):
                if sum(f * (m * c) for f, c in zip(phi, a)) % p == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            eta = (phi[0], phi[1], phi[2], -(phi[0] + phi[1] + phi[2]) % p)
            out.append(FreeSubgroup.rank2(p, eta))
    out.sort(key=FreeSubgroup.key)
    return out


# -- the S_4 action ------------------------------------------------------


def s4_act(sigma: Perm, e: HClass) -> HClass:
    """Push a_j to a_{sigma(j)}: coordinate i picks up k[sigma^-1(i)]."""
    inv = perm_inverse(sigma)
    return HClass(e.p, tuple(e.k[inv[i]] for i in range(4)))


def s4_act_subgroup(sigma: Perm, K: FreeSubgroup) -> FreeSubgroup:
    if K.rank == 1:
        return FreeSubgroup.rank1(K.p, s4_act(sigma, K.generator))
    inv = perm_inverse(sigma)
    eta = tuple(K.eta[inv[i]] for i in range(4))
    return FreeSubgroup.rank2(K.p, eta)


# -- quotient maps -------------------------------------------------------


def _solve_mod_p(cols: list[tuple[int, ...]], rhs: tuple[int, ...], p: int) -> Optional[list[int]]:
    """Solve sum x_i * cols[i] = rhs over F_p (unique solution expected)."""
    n = len(rhs)
    m = len(cols)
    a = [[cols[j][i] % p for j in range(m)] + [rhs[i] % p] for i in range(n)]
    row = 0
    piv_cols = []
    for col in range(m):
        piv = next((r for r in range(row, n) if a[r][col] % p != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][col], p - 2, p)
        a[row] = [v * inv % p for v in a[row]]
        for r in range(n):
            if r != row and a[r][col] % p != 0:
                f = a[r][col]
                a[r] = [(v - f * w) % p for v, w in zip(a[r], a[row])]
        piv_cols.append(col)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if a[r][m] % p != 0:
            return None
    x = [0] * m
    for r, col in enumerate(piv_cols):
        x[col] = a[r][m]
    return x


@dataclass(frozen=True)
class QuotientMap:
    """H -> G = H/K with explicit images of the standard generators.

    images[j] is phi(a_{j+1}) written in the chosen basis of G = Z_p^l;
    basis[i] names the standard generator whose image is the i-th basis
    vector.  The four images always multiply to the identity.
    """

    p: int
    l: int
    K: Optional[FreeSubgroup]
    basis: tuple[int, ...]
    images: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "basis": list(self.basis),
            "images": [list(v) for v in self.images],
        }


def quotient_map(K: Optional[FreeSubgroup], p: Optional[int] = None) -> QuotientMap:
    """Explicit G = H/K with images of a_1..a_4 (K = None means G = H)."""
    if K is None:
        if p is None:
            raise ValueError("need p for the trivial kernel")
        images = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1 % p, -1 % p, -1 % p))
        return QuotientMap(p, 3, None, (1, 2, 3), images)
    p = K.p
    if K.rank == 2:
        # G = Z_p, phi(a_j) = eta_j, basis image phi(a_1) = 1
        return QuotientMap(p, 1, K, (1,), tuple((c,) for c in K.eta))
    v = K.generator.k[:3]
    e = {1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}
    for basis in ((1, 2), (1, 3), (2, 3)):
        b1, b2 = e[basis[0]], e[basis[1]]
        imgs: list[tuple[int, int]] = []
        ok = True
        for j in (1, 2, 3):
            sol = _solve_mod_p([b1, b2, v], e[j], p)
            if sol is None:
                ok = False
                break
            imgs.append((sol[0], sol[1]))
        if not ok:
            continue
        a4 = tuple(-(x + y + z) % p for x, y, z in zip(*imgs))
        images = tuple(imgs) + (a4,)
        # sanity: kernel of phi is exactly K
        assert all(
            sum(c * img[t] for c, img in zip((*v, 0), images)) % p == 0
            for t in range(2)
        )
        return QuotientMap(p, 2, K, basis, images)
    raise AssertionError("no basis completes the kernel generator")

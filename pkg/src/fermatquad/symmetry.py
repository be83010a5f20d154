"""Arithmetic of the branch parameter lambda.

The cross-ratio parameter lives in Q(sqrt(-3)) and is classified by its
orbit under <1/z, 1-z>: orbit size 3 is the harmonic class {-1, 1/2, 2},
size 2 the equianharmonic pair (1 +- sqrt(-3))/2, size 6 generic.  The
classification drives which subgroup of S_4 is realized by Moebius
transformations of the four cone points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import QuadNum
from .s4 import Perm, closure, from_cycles


class DegenerateLambdaError(ValueError):
    """lambda in {0, 1} does not define a four-point configuration."""


GENERIC = "generic"
HARMONIC = "harmonic"
EQUIANHARMONIC = "equianharmonic"

EQUIANHARMONIC_PLUS = QuadNum(Fraction(1, 2), Fraction(1, 2))
EQUIANHARMONIC_MINUS = QuadNum(Fraction(1, 2), Fraction(-1, 2))
HARMONIC_NORMAL = QuadNum(2)

# the six substitutions generated by z -> 1/z and z -> 1-z
ORBIT_MAPS: tuple[tuple[str, callable], ...] = (
    ("z", lambda z: z),
    ("1/z", lambda z: z.inverse()),
    ("1-z", lambda z: QuadNum(1) - z),
    ("1/(1-z)", lambda z: (QuadNum(1) - z).inverse()),
    ("(z-1)/z", lambda z: (z - QuadNum(1)) / z),
    ("z/(z-1)", lambda z: z / (z - QuadNum(1))),
)


def _check_lambda(lam: QuadNum) -> None:
    if lam == 0 or lam == 1:
        raise DegenerateLambdaError(f"degenerate lambda {lam}")


def lambda_orbit(lam: QuadNum) -> dict[QuadNum, str]:
    """Map from each orbit value to the name of a substitution reaching it."""
    _check_lambda(lam)
    orbit: dict[QuadNum, str] = {}
    for name, f in ORBIT_MAPS:
        v = f(lam)
        orbit.setdefault(v, name)
    return orbit


@dataclass(frozen=True)
class LambdaClass:
    """A lambda value together with its orbit class and normal form.

    ``to_normal`` names the substitution carrying ``value`` onto
    ``normal_form`` (2 for harmonic, (1+sqrt(-3))/2 for equianharmonic,
    the value itself for generic).
    """

    kind: str
    value: QuadNum
    orbit: tuple[QuadNum, ...]
    normal_form: QuadNum
    to_normal: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "lambda": self.value.to_json()}


def classify_lambda(lam: QuadNum) -> LambdaClass:
    orbit = lambda_orbit(lam)
    values = tuple(sorted(orbit, key=QuadNum.sort_key))
    if len(orbit) == 3:
        kind, normal = HARMONIC, HARMONIC_NORMAL
    elif len(orbit) == 2:
        kind, normal = EQUIANHARMONIC, EQUIANHARMONIC_PLUS
        if normal not in orbit:  # orbit is closed under conjugation
            raise AssertionError("equianharmonic orbit without normal form")
    elif len(orbit) == 6:
        kind, normal = GENERIC, lam
    else:
        raise AssertionError(f"orbit of size {len(orbit)} is impossible")
    return LambdaClass(kind, lam, values, normal, orbit[normal])


def from_keyword(word: str) -> LambdaClass:
    """Representative class for 'generic' / 'harmonic' / 'equianharmonic'."""
    if word == GENERIC:
        return classify_lambda(QuadNum(3))
    if word == HARMONIC:
        return classify_lambda(HARMONIC_NORMAL)
    if word == EQUIANHARMONIC:
        return classify_lambda(EQUIANHARMONIC_PLUS)
    raise ValueError(f"unknown lambda class {word!r}")


def j_invariant(lam: QuadNum) -> QuadNum:
    """256 (l^2 - l + 1)^3 / (l^2 (l-1)^2); constant on orbits, j(-1) = 1728.

    The cube in the numerator is what makes the expression invariant
    under z -> 1/z; the squared-numerator variant sometimes quoted is
    not, and is available separately as j_invariant_squared_variant.
    """
    _check_lambda(lam)
    num = (lam * lam - lam + QuadNum(1)) ** 3 * 256
    den = lam * lam * (lam - QuadNum(1)) ** 2
    return num / den


def j_invariant_squared_variant(lam: QuadNum) -> QuadNum:
    """The non-invariant squared-numerator variant, for side-by-side reports."""
    _check_lambda(lam)
    num = (QuadNum(1) - lam + lam * lam) ** 2
    den = lam * lam * (lam - QuadNum(1)) ** 2
    return num / den


# -- realizable permutation images ---------------------------------------


@dataclass(frozen=True)
class ThetaImage:
    """A realizable image of the cone-point permutation representation."""

    label: str
    elements: frozenset[Perm]
    generator_tags: tuple[tuple[str, Perm], ...]

    def __contains__(self, sigma: Perm) -> bool:
        return sigma in self.elements


def _theta(label: str, tags: tuple[tuple[str, str], ...]) -> ThetaImage:
    named = tuple((name, from_cycles(c)) for name, c in tags)
    return ThetaImage(label, closure(g for _, g in named), named)


U0 = _theta("U0", ())
U1 = _theta("U1", (("alpha", "(1,2)(3,4)"),))
U2 = _theta("U2", (("alpha", "(1,2)(3,4)"), ("beta", "(1,3)(2,4)")))
U3 = _theta("U3", (("delta", "(2,3,4)"),))
U4 = _theta("U4", (("gamma", "(1,2,3,4)"),))
U8 = _theta("U8", (("alpha", "(1,2)(3,4)"), ("gamma", "(1,2,3,4)")))
U12 = _theta("U12", (("alpha", "(1,2)(3,4)"), ("delta", "(2,3,4)")))

THETA_TABLE = {u.label: u for u in (U0, U1, U2, U3, U4, U8, U12)}


def theta_image(lc: LambdaClass) -> ThetaImage:
    """Realized image of the cone permutation representation, by class."""
    if lc.kind == GENERIC:
        return U2
    if lc.kind == HARMONIC:
        return U8
    return U12


def theta_label(group: frozenset[Perm]) -> str:
    """Case label of a stabilizer subgroup, by order and type."""
    n = len(group)
    table = {1: "U0", 2: "U1", 3: "U3", 8: "U8", 12: "U12"}
    if n in table:
        return table[n]
    if n == 4:
        from .s4 import perm_order

        return "U4" if any(perm_order(g) == 4 for g in group) else "U2"
    raise ValueError(f"unexpected stabilizer order {n}")


# -- Moebius transformations over Q(sqrt(-3)) -----------------------------


class ProjPoint:
    """Point of P^1 over Q(sqrt(-3)); infinity is (1 : 0)."""

    __slots__ = ("num", "den")

    def __init__(self, num: QuadNum, den: QuadNum):
        if num.is_zero() and den.is_zero():
            raise ValueError("(0 : 0) is not a projective point")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("ProjPoint values are immutable")

    @staticmethod
    def infinity() -> "ProjPoint":
        return ProjPoint(QuadNum(1), QuadNum(0))

    @staticmethod
    def of(value: QuadNum) -> "ProjPoint":
        return ProjPoint(value, QuadNum(1))

    def is_infinity(self) -> bool:
        return self.den.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        if self.is_infinity():
            return hash("inf")
        return hash(self.num / self.den)

    def __repr__(self):
        if self.is_infinity():
            return "ProjPoint(inf)"
        return f"ProjPoint({self.num / self.den})"


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b)/(c z + d), evaluated projectively."""

    a: QuadNum
    b: QuadNum
    c: QuadNum
    d: QuadNum

    def __call__(self, pt: ProjPoint) -> ProjPoint:
        return ProjPoint(
            self.a * pt.num + self.b * pt.den, self.c * pt.num + self.d * pt.den
        )

    def formula(self) -> str:
        def term(coef: QuadNum, var: str) -> str:
            if coef == 0:
                return ""
            if coef == 1 and var:
                return var
            return f"({coef}){var}" if var else f"({coef})"

        num = " + ".join(t for t in (term(self.a, "z"), term(self.b, "")) if t) or "0"
        den = " + ".join(t for t in (term(self.c, "z"), term(self.d, "")) if t) or "0"
        return f"({num})/({den})" if den != "(1)" else num


@dataclass(frozen=True)
class TaggedMobius:
    name: str
    map: MobiusMap
    tag: Perm
    order: int


def cone_points(lam: QuadNum) -> tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint]:
    return (
        ProjPoint.infinity(),
        ProjPoint.of(QuadNum(0)),
        ProjPoint.of(QuadNum(1)),
        ProjPoint.of(lam),
    )


def mobius_tag(m: MobiusMap, lam: QuadNum) -> Optional[Perm]:
    """Permutation of (inf, 0, 1, lambda) induced by m, if any."""
    pts = cone_points(lam)
    images = [m(pt) for pt in pts]
    tag = []
    for img in images:
        matches = [i for i, pt in enumerate(pts) if pt == img]
        if len(matches) != 1:
            return None
        tag.append(matches[0])
    if sorted(tag) != [0, 1, 2, 3]:
        return None
    return tuple(tag)  # type: ignore[return-value]


def mobius_generators(lc: LambdaClass) -> list[TaggedMobius]:
    """Moebius stabilizer generators at the normal form, with S_4 tags.

    A(z) = lambda/z and B(z) = (z-lambda)/(z-1) exist for every class;
    the harmonic normal form adds the involution C(z) = z/(z-1), the
    equianharmonic one the affine rotation D(z) = 1 + (lambda-1) z of
    order three (lambda - 1 is a primitive cube root of unity there).
    """
    lam = lc.normal_form
    one, zero = QuadNum(1), QuadNum(0)
    out = [
        TaggedMobius("A", MobiusMap(zero, lam, one, zero), from_cycles("(1,2)(3,4)"), 2),
        TaggedMobius("B", MobiusMap(one, -lam, one, -one), from_cycles("(1,3)(2,4)"), 2),
    ]
    if lc.kind == HARMONIC:
        out.append(
            TaggedMobius("C", MobiusMap(one, zero, one, -one), from_cycles("(1,3)"), 2)
        )
    elif lc.kind == EQUIANHARMONIC:
        out.append(
            TaggedMobius(
                "D", MobiusMap(lam - one, one, zero, one), from_cycles("(2,3,4)"), 3
            )
        )
    for tm in out:
        actual = mobius_tag(tm.map, lam)
        if actual != tm.tag:
            raise AssertionError(f"map {tm.name} does not realize its tag")
    return out

"""Structured algebraic models and explicit automorphism formulas.

Curve models are symbolic: branch points are labels, coefficients live
in a small alphabet (integers, the parameter ``lam``, a root-of-unity
token ``w`` and p-th-root tokens).  Map formulas are expression trees
over that alphabet; they are *claims* until the finite-field verifier
certifies them.  Where a published formula fails exact verification the
certified corrected form is emitted and the original is kept as a named
variant so the falsification stays reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .exactnum import PoleError, QuadNum
from .fermat_group import FreeSubgroup, quotient_map
from .s4 import ALL_S4, Perm, from_cycles
from .symmetry import (
    EQUIANHARMONIC,
    HARMONIC,
    LambdaClass,
    MobiusMap,
    ORBIT_MAPS,
    ProjPoint,
)

# ---------------------------------------------------------------------------
# expression trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Const:
    v: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    e: int


Expr = object


def C(v: int) -> Const:
    return Const(v)


def S(name: str) -> Sym:
    return Sym(name)


def add(*ts) -> Add:
    return Add(tuple(ts))


def mul(*fs) -> Mul:
    return Mul(tuple(fs))


def pw(b, e: int) -> Pow:
    return Pow(b, e)


def neg(x) -> Mul:
    return mul(C(-1), x)


def sub(a, b) -> Add:
    return add(a, neg(b))


def div(a, b) -> Mul:
    return mul(a, pw(b, -1))


def eval_expr(e: Expr, env: dict, q: int) -> int:
    """Exact evaluation over F_q; PoleError on division by zero."""
    if isinstance(e, Const):
        return e.v % q
    if isinstance(e, Sym):
        return env[e.name] % q
    if isinstance(e, Add):
        return sum(eval_expr(t, env, q) for t in e.terms) % q
    if isinstance(e, Mul):
        out = 1
        for f in e.factors:
            out = out * eval_expr(f, env, q) % q
        return out
    if isinstance(e, Pow):
        b = eval_expr(e.base, env, q)
        if e.e < 0:
            if b == 0:
                raise PoleError("pole at input")
            b = pow(b, q - 2, q)
            return pow(b, -e.e, q)
        return pow(b, e.e, q)
    raise TypeError(f"not an expression: {e!r}")


def expr_symbols(e: Expr) -> set[str]:
    if isinstance(e, Sym):
        return {e.name}
    if isinstance(e, Add):
        return set().union(*(expr_symbols(t) for t in e.terms)) if e.terms else set()
    if isinstance(e, Mul):
        return set().union(*(expr_symbols(f) for f in e.factors)) if e.factors else set()
    if isinstance(e, Pow):
        return expr_symbols(e.base)
    return set()


def expr_str(e: Expr) -> str:
    if isinstance(e, Const):
        return str(e.v)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Add):
        return "(" + " + ".join(expr_str(t) for t in e.terms) + ")"
    if isinstance(e, Mul):
        return "*".join(expr_str(f) for f in e.factors)
    if isinstance(e, Pow):
        return f"{expr_str(e.base)}^{e.e}" if e.e >= 0 else f"{expr_str(e.base)}^({e.e})"
    raise TypeError


def expr_json(e: Expr):
    if isinstance(e, Const):
        return {"const": e.v}
    if isinstance(e, Sym):
        return {"sym": e.name}
    if isinstance(e, Add):
        return {"add": [expr_json(t) for t in e.terms]}
    if isinstance(e, Mul):
        return {"mul": [expr_json(f) for f in e.factors]}
    if isinstance(e, Pow):
        return {"pow": [expr_json(e.base), e.e]}
    raise TypeError


# p-th-root tokens and their targets as expressions in lam (evaluated mod q)
ROOT_TARGETS: dict[str, callable] = {
    "rt_lam": lambda p, lam, q: lam % q,
    "rt_lam_m1": lambda p, lam, q: (lam - 1) % q,
    "rt_two": lambda p, lam, q: 2 % q,
    "rt_neg_lam_pm1": lambda p, lam, q: (-pow(lam, p - 1, q)) % q,
    "rt_sign2": lambda p, lam, q: (
        pow(-1, (p + 1) // 2) * pow(2, (p - 1) // 2, q)
    ) % q,
}


# ---------------------------------------------------------------------------
# curve models
# ---------------------------------------------------------------------------

CONGRUENCE_ERROR = "branched at infinity"


@dataclass(frozen=True)
class PGonalEq:
    """var^p = product over finite branches (x - point)^exp."""

    var: str
    p: int
    branches: tuple[tuple[str, int], ...]  # finite labels only, exps in [1, p-1]
    infinity_exp: int  # exponent of the deleted infinity factor (0: unbranched)

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "p": self.p,
            "branches": [{"point": lab, "exponent": e} for lab, e in self.branches],
            "infinity_exponent": self.infinity_exp,
        }


_FACTOR = {"0": "x", "1": "(x-1)"}


def _factor_str(label: str) -> str:
    return _FACTOR.get(label, f"(x-{label})")


def _pgonal_str(eq: PGonalEq) -> str:
    parts = []
    for lab, e in eq.branches:
        f = _factor_str(lab)
        parts.append(f if e == 1 else f"{f}^{e}")
    return f"{eq.var}^{eq.p} = " + " ".join(parts)


@dataclass(frozen=True)
class CurveModel:
    kind: str  # pgonal | elambda | fiber_product | gfc_projective | accola_maclachlan
    p: int
    equations: tuple
    params: tuple[tuple[str, object], ...] = ()
    printable: str = ""

    def param(self, key: str):
        for k, v in self.params:
            if k == key:
                return v
        raise KeyError(key)

    def to_json(self) -> dict:
        eqs = []
        for eq in self.equations:
            eqs.append(eq.to_json() if hasattr(eq, "to_json") else eq)
        return {
            "kind": self.kind,
            "p": self.p,
            "equations": eqs,
            "params": {k: v for k, v in self.params},
            "printable": self.printable,
        }


def pgonal_model(p: int, branch_pairs: Sequence[tuple[str, int]], var: str = "y") -> CurveModel:
    """Cyclic p-gonal curve from (label, exponent) pairs, labels ordered.

    Pairs cover the branched points; infinity ("infty") is represented
    by the deleted-factor convention.  Exponents are reduced to [1, p-1]
    and must sum to 0 mod p over all branches including infinity.
    """
    finite = tuple((lab, e % p) for lab, e in branch_pairs if lab != "infty")
    inf = next((e % p for lab, e in branch_pairs if lab == "infty"), 0)
    total = (sum(e for _, e in finite) + inf) % p
    if total != 0:
        # infinity exponent is determined when not supplied
        if inf == 0:
            inf = (-sum(e for _, e in finite)) % p
        else:
            raise ValueError("branch exponents must sum to 0 mod p")
    if any(e == 0 for _, e in finite):
        raise ValueError("zero exponent at a listed branch point")
    eq = PGonalEq("y" if var == "y" else var, p, finite, inf)
    return CurveModel("pgonal", p, (eq,), (), _pgonal_str(eq))


def model_l1(p: int, m: int, n_exp: int, lam_label: str = "lambda") -> CurveModel:
    """y^p = x (x-1)^m (x-lambda)^n with 1+m+n != 0 mod p."""
    if not (1 <= m <= p - 1 and 1 <= n_exp <= p - 1):
        raise ValueError("exponents must lie in [1, p-1]")
    if (1 + m + n_exp) % p == 0:
        raise ValueError(CONGRUENCE_ERROR)
    return pgonal_model(p, (("0", 1), ("1", m), (lam_label, n_exp)))


def accola_maclachlan_model(p: int) -> CurveModel:
    return CurveModel(
        "accola_maclachlan", p, (), (), f"y^2 = x^{2 * p} - 1"
    )


def model_gfc(p: int, n: int, lam_labels: Optional[Sequence[str]] = None) -> CurveModel:
    """The n-1 projective equations of the degree-p generalized Fermat curve."""
    if n < 3:
        raise ValueError("need n >= 3")
    if lam_labels is None:
        lam_labels = ("lambda",) if n == 3 else tuple(f"lambda{i}" for i in range(1, n - 1))
    if len(lam_labels) != n - 2:
        raise ValueError(f"need {n - 2} parameter labels")
    rows = [("1", 3)] + [(lab, j + 4) for j, lab in enumerate(lam_labels)]
    pieces = []
    for coeff, idx in rows:
        lead = f"x1^{p}" if coeff == "1" else f"{coeff} x1^{p}"
        pieces.append(f"{lead} + x2^{p} + x{idx}^{p} = 0")
    return CurveModel(
        "gfc_projective",
        p,
        tuple(rows),
        (("n", n), ("lambda_labels", tuple(lam_labels))),
        " ; ".join(pieces),
    )


# -- quotient monodromy helpers (rank-1 kernels, G = Z_p^2) -----------------

_N3_LABELS = ("infty", "0", "1", "lambda")


def _census_directions(p: int, K: FreeSubgroup):
    qm = quotient_map(K)
    imgs = [tuple(c % p for c in v) for v in qm.images]

    def direction(v):
        if v[0] != 0:
            inv = pow(v[0], p - 2, p)
            return (1, v[1] * inv % p)
        return (0, 1)

    cone_dirs = [direction(v) for v in imgs]
    dirs = [(0, 1)] + [(1, t) for t in range(p)]
    return qm, imgs, cone_dirs, dirs


def _monodromies_for_direction(p, imgs, d):
    psi = (-d[1] % p, d[0] % p)
    return [(psi[0] * v[0] + psi[1] * v[1]) % p for v in imgs]


def _quotient_branch_model(p, imgs, d, var) -> CurveModel:
    monos = _monodromies_for_direction(p, imgs, d)
    pairs = [(lab, m) for lab, m in zip(_N3_LABELS, monos) if m != 0]
    if len(pairs) == 4:
        scale = pairs[1][1]  # exponent at 0 pinned to 1
    else:
        scale = pairs[0][1]
    inv = pow(scale, p - 2, p)
    pairs = [(lab, m * inv % p) for lab, m in pairs]
    return pgonal_model(p, pairs, var=var)


# -- the intermediate two-parameter family ----------------------------------


def e_model_monodromies(p: int, m: int) -> tuple[tuple[int, int], ...]:
    """Cone monodromies of y^p = (x^p-1)(x^p-mu)^m at (inf, 0, 1, mu).

    In the natural basis (x-rotation, y-rotation): A at 0, B at 1, B^m
    at mu, the balancing element at infinity.
    """
    return ((-1 % p, -(1 + m) % p), (1, 0), (0, 1), (0, m % p))


def e_model_kernel(p: int, m: int) -> FreeSubgroup:
    """The freely-acting kernel realized by the intermediate model."""
    return FreeSubgroup.rank1(p, (1, 1, 1 + m, 0))


def _mat2_inv(mat, p):
    (a, b), (c, d) = mat
    det = (a * d - b * c) % p
    if det == 0:
        return None
    inv = pow(det, p - 2, p)
    return ((d * inv % p, -b * inv % p), (-c * inv % p, a * inv % p))


def _mat2_apply(mat, v, p):
    return (
        (mat[0][0] * v[0] + mat[0][1] * v[1]) % p,
        (mat[1][0] * v[0] + mat[1][1] * v[1]) % p,
    )


def _mat2_mul(a, b, p):
    return (
        (
            (a[0][0] * b[0][0] + a[0][1] * b[1][0]) % p,
            (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % p,
        ),
        (
            (a[1][0] * b[0][0] + a[1][1] * b[1][0]) % p,
            (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % p,
        ),
    )


def _match_tuples(gk, ge, p, sigma: Perm) -> Optional[tuple]:
    """Group isomorphism theta with theta(gk[j]) = ge[sigma[j]], if any."""
    pair = None
    for i in range(4):
        for j in range(i + 1, 4):
            if (gk[i][0] * gk[j][1] - gk[i][1] * gk[j][0]) % p != 0:
                pair = (i, j)
                break
        if pair:
            break
    i, j = pair
    mk = ((gk[i][0], gk[j][0]), (gk[i][1], gk[j][1]))  # columns gk[i], gk[j]
    me = ((ge[sigma[i]][0], ge[sigma[j]][0]), (ge[sigma[i]][1], ge[sigma[j]][1]))
    theta = _mat2_mul(me, _mat2_inv(mk, p), p)
    if _mat2_inv(theta, p) is None:
        return None
    for t in range(4):
        if _mat2_apply(theta, gk[t], p) != ge[sigma[t]]:
            return None
    return theta


def _cross_ratio_map(a, b, c) -> MobiusMap:
    """Moebius map sending (a, b, c) to (inf, 0, 1); None stands for inf."""
    one, zero = QuadNum(1), QuadNum(0)
    if a is None:
        return MobiusMap(one, -b, zero, c - b)
    if b is None:
        return MobiusMap(zero, c - a, one, -a)
    if c is None:
        return MobiusMap(one, -b, one, -a)
    return MobiusMap(c - a, -b * (c - a), c - b, -a * (c - b))


def param_orbit_name(sigma: Perm) -> str:
    """Which orbit substitution carries lambda to the relabeled parameter.

    Position j of the quotient corresponds to model position sigma[j];
    the model parameter is the cross-ratio of the points read off in
    model order.  The substitution is independent of lambda, so it is
    identified at a generic test value.
    """
    lam = QuadNum(5)
    pts = {0: None, 1: QuadNum(0), 2: QuadNum(1), 3: lam}
    inv = [0] * 4
    for j, i in enumerate(sigma):
        inv[i] = j
    a, b, c, d = (pts[inv[i]] for i in range(4))
    t = _cross_ratio_map(a, b, c)
    img = t(ProjPoint.infinity() if d is None else ProjPoint.of(d))
    val = img.num / img.den
    for name, f in ORBIT_MAPS:
        if f(lam) == val:
            return name
    raise AssertionError("relabeled parameter left the orbit")


def orbit_value(name: str, lam_val: int, q: int) -> int:
    """Evaluate an orbit substitution on a concrete parameter mod q."""
    table = {
        "z": lambda z: z % q,
        "1/z": lambda z: pow(z, q - 2, q),
        "1-z": lambda z: (1 - z) % q,
        "1/(1-z)": lambda z: pow((1 - z) % q, q - 2, q),
        "(z-1)/z": lambda z: (z - 1) * pow(z, q - 2, q) % q,
        "z/(z-1)": lambda z: z * pow((z - 1) % q, q - 2, q) % q,
    }
    return table[name](lam_val)


class ModelMatchError(ValueError):
    """No intermediate model matches the kernel's branch data."""


def match_e_model(K: FreeSubgroup) -> tuple[int, Perm, tuple, str, tuple[int, ...]]:
    """Find (m, sigma, theta, param) matching the kernel's branch data.

    The certificate: theta is a group isomorphism carrying the quotient
    monodromy at cone position j onto the model monodromy at position
    sigma[j]; param names the orbit substitution giving the model's
    parameter in terms of lambda.  The parameter m is canonical only
    once the relabeling is fixed (moving the parameter inside its orbit
    can trade m for another value), so the smallest matching m is chosen
    and the full match set returned.  Raises when no m matches.
    """
    p = K.p
    qm = quotient_map(K)
    gk = tuple(tuple(c % p for c in v) for v in qm.images)
    matches = []
    for m in range(1, p):
        ge = e_model_monodromies(p, m)
        for sigma in sorted(ALL_S4):
            theta = _match_tuples(gk, ge, p, sigma)
            if theta is not None:
                matches.append((m, sigma, theta))
                break
    if not matches:
        raise ModelMatchError(f"no intermediate model matches kernel {K.spec_string()}")
    m, sigma, theta = matches[0]
    all_ms = tuple(mm for mm, _, _ in matches)
    return m, sigma, theta, param_orbit_name(sigma), all_ms


def elambda_model(p: int, m: int, param: str = "z") -> CurveModel:
    """y^p = (x^p - 1)(x^p - mu)^m with mu the (possibly moved) parameter."""
    if not 1 <= m <= p - 1:
        raise ValueError("m must lie in [1, p-1]")
    printable = f"y^{p} = (x^{p}-1) (x^{p}-mu)^{m}" if m > 1 else f"y^{p} = (x^{p}-1) (x^{p}-mu)"
    printable += f" where mu = {param_to_str(param)}"
    return CurveModel("elambda", p, (), (("m", m), ("param", param)), printable)


def param_to_str(name: str) -> str:
    return name.replace("z", "lambda") if name != "z" else "lambda"


def model_l2(p: int, K: FreeSubgroup) -> CurveModel:
    """Model of the rank-1 quotient: intermediate form or fiber product.

    Kernels with a vanishing exponent get the one-equation intermediate
    model, with the parameter m derived by exact branch matching (the
    match certificate rides along in params).  Kernels with both
    exponents positive get the two-equation fiber product built from
    two freely-acting cyclic quotients.
    """
    if K.rank != 1:
        raise ValueError("rank-1 kernels only")
    k = K.generator.k
    zeroish = k[0] == 0 or k[1] == 0 or k[2] == 0
    if zeroish:
        m, sigma, theta, param, all_ms = match_e_model(K)
        model = elambda_model(p, m, param)
        extra = (
            ("kernel", K.spec_string()),
            ("position_map", tuple(sigma)),
            ("basis_change", theta),
            ("matching_m_values", all_ms),
        )
        return CurveModel(
            model.kind, p, model.equations, model.params + extra, model.printable
        )
    # fiber product from two positive-genus cyclic quotients
    qm, imgs, cone_dirs, dirs = _census_directions(p, K)
    free_dirs = [d for d in dirs if cone_dirs.count(d) == 0]
    chosen = free_dirs[:2]
    if len(chosen) < 2:  # p = 3: fall back to p-fixed-point quotients
        chosen = [d for d in dirs if cone_dirs.count(d) == 1][:2]
    eq_y = _quotient_branch_model(p, imgs, chosen[0], "y").equations[0]
    eq_z = _quotient_branch_model(p, imgs, chosen[1], "z").equations[0]
    printable = _pgonal_str(eq_y) + " ; " + _pgonal_str(eq_z)
    return CurveModel(
        "fiber_product",
        p,
        (eq_y, eq_z),
        (("kernel", K.spec_string()), ("subgroups", (chosen[0], chosen[1]))),
        printable,
    )


# ---------------------------------------------------------------------------
# printable round-trip parser
# ---------------------------------------------------------------------------


def _parse_pgonal_rhs(p: int, rhs: str, var: str) -> PGonalEq:
    branches = []
    for piece in rhs.split():
        m = re.fullmatch(r"x(?:\^(\d+))?", piece)
        if m:
            branches.append(("0", int(m.group(1) or 1)))
            continue
        m = re.fullmatch(r"\(x-([a-z0-9]+)\)(?:\^(\d+))?", piece)
        if not m:
            raise ValueError(f"bad factor {piece!r}")
        lab = m.group(1)
        branches.append(("1" if lab == "1" else lab, int(m.group(2) or 1)))
    inf = (-sum(e for _, e in branches)) % p
    return PGonalEq(var, p, tuple(branches), inf)


def parse_model(s: str) -> CurveModel:
    """Parse the canonical printable form back into a model."""
    s = s.strip()
    m = re.fullmatch(r"y\^2 = x\^(\d+) - 1", s)
    if m:
        return accola_maclachlan_model(int(m.group(1)) // 2)
    m = re.fullmatch(
        r"y\^(\d+) = \(x\^\1-1\) \(x\^\1-mu\)(?:\^(\d+))? where mu = (.+)", s
    )
    if m:
        p = int(m.group(1))
        m_exp = int(m.group(2) or 1)
        param_s = m.group(3)
        name = "z" if param_s == "lambda" else param_s.replace("lambda", "z")
        return elambda_model(p, m_exp, name)
    if " ; " in s and s.startswith("y^"):
        left, right = s.split(" ; ")
        lm = re.fullmatch(r"y\^(\d+) = (.+)", left)
        rm = re.fullmatch(r"z\^(\d+) = (.+)", right)
        p = int(lm.group(1))
        eq_y = _parse_pgonal_rhs(p, lm.group(2), "y")
        eq_z = _parse_pgonal_rhs(p, rm.group(2), "z")
        return CurveModel(
            "fiber_product", p, (eq_y, eq_z), (), _pgonal_str(eq_y) + " ; " + _pgonal_str(eq_z)
        )
    if " ; " in s or "x1^" in s:
        rows_s = s.split(" ; ")
        rows = []
        labels = []
        p = None
        for j, row in enumerate(rows_s):
            m = re.fullmatch(r"(?:([a-z0-9]+) )?x1\^(\d+) \+ x2\^\2 \+ x(\d+)\^\2 = 0", row)
            if not m:
                raise ValueError(f"bad projective row {row!r}")
            coeff = m.group(1) or "1"
            p = int(m.group(2))
            rows.append((coeff, int(m.group(3))))
            if coeff != "1":
                labels.append(coeff)
        n = len(rows) + 1
        return model_gfc(p, n, labels or None)
    m = re.fullmatch(r"y\^(\d+) = (.+)", s)
    if m:
        p = int(m.group(1))
        eq = _parse_pgonal_rhs(p, m.group(2), "y")
        return CurveModel("pgonal", p, (eq,), (), _pgonal_str(eq))
    raise ValueError(f"unparseable model {s!r}")


# ---------------------------------------------------------------------------
# map formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapFormula:
    name: str
    space: str  # "P3" | "xy" | "xyz"
    components: tuple
    claimed_order: int
    tag: Optional[Perm] = None
    notes: tuple[str, ...] = ()

    def root_tokens(self) -> tuple[str, ...]:
        syms = set()
        for c in self.components:
            syms |= expr_symbols(c)
        return tuple(sorted(s for s in syms if s.startswith("rt_")))

    def to_json(self) -> dict:
        from .s4 import to_cycles

        return {
            "name": self.name,
            "space": self.space,
            "components": [expr_json(c) for c in self.components],
            "printable": ", ".join(expr_str(c) for c in self.components),
            "claimed_order": self.claimed_order,
            "tag": to_cycles(self.tag) if self.tag is not None else None,
            "notes": list(self.notes),
        }


X1, X2, X3, X4 = S("x1"), S("x2"), S("x3"), S("x4")
X, Y, Z, LAM, W = S("x"), S("y"), S("z"), S("lam"), S("w")


def deck_generators_projective() -> list[MapFormula]:
    out = []
    for j in range(4):
        comps = [X1, X2, X3, X4]
        comps[j] = mul(W, comps[j])
        out.append(MapFormula(f"a{j + 1}", "P3", tuple(comps), 0, None, ()))
    return out


def _alpha_hat() -> MapFormula:
    return MapFormula(
        "alpha_hat",
        "P3",
        (X2, mul(S("rt_lam"), X1), X4, mul(S("rt_lam"), X3)),
        2,
        from_cycles("(1,2)(3,4)"),
    )


def _beta_hat() -> MapFormula:
    return MapFormula(
        "beta_hat",
        "P3",
        (neg(X3), X4, mul(S("rt_lam_m1"), X1), neg(mul(S("rt_lam_m1"), X2))),
        2,
        from_cycles("(1,3)(2,4)"),
    )


def _gamma_hat(lam_value: QuadNum) -> MapFormula:
    rt2 = S("rt_two")
    if lam_value == QuadNum(2):
        comps = (X4, mul(rt2, X1), X2, neg(mul(rt2, X3)))
        tag = from_cycles("(1,2,3,4)")
    elif lam_value == QuadNum(-1):
        comps = (X3, X4, mul(rt2, X2), neg(mul(rt2, X1)))
        tag = from_cycles("(1,4,2,3)")
    else:  # lambda = 1/2
        comps = (mul(rt2, X3), X1, neg(mul(rt2, X4)), X2)
        tag = from_cycles("(2,4,3,1)")
    return MapFormula("gamma_hat", "P3", comps, 4, tag)


def _delta_hat() -> MapFormula:
    # valid at both equianharmonic values; the sign sits on the x3 source
    return MapFormula(
        "delta_hat",
        "P3",
        (mul(S("rt_lam"), X1), X4, X2, neg(X3)),
        3,
        from_cycles("(2,3,4)"),
        ("order is 3 modulo the deck group; the projective order depends on the root choice",),
    )


def _delta_hat_variant() -> MapFormula:
    return MapFormula(
        "delta_hat_variant",
        "P3",
        (mul(S("rt_lam"), X1), neg(X4), X2, X3),
        3,
        from_cycles("(2,3,4)"),
        ("sign variant; fails closure and is kept as a falsification regression",),
    )


def quadrangular_cover_maps(lc: LambdaClass, include_variants: bool = False) -> list[MapFormula]:
    """Certified cone-permuting maps of the projective cover at this class."""
    out = [_alpha_hat(), _beta_hat()]
    if lc.kind == HARMONIC:
        out.append(_gamma_hat(lc.normal_form))
    if lc.kind == EQUIANHARMONIC:
        out.append(_delta_hat())
        if include_variants:
            out.append(_delta_hat_variant())
    return out


# -- explicit genus p-1 curve bundle (four branch points, one deck Z_p) -----


def curve_l1_bundle(p: int, harmonic: bool = False) -> tuple[CurveModel, list[MapFormula]]:
    """The curve y^p = x (x-1)^(p-1) (x-lambda) and its certified maps.

    The exponent pattern (p-1, 1) is the one invariant under the full
    four-group of cone swaps; at lambda = 2 it also carries the order-4
    map c, so all three maps coexist on one model.
    """
    model = model_l1(p, p - 1, 1)
    xm1, xml = sub(X, C(1)), sub(X, LAM)
    a = MapFormula(
        "a",
        "xy",
        (div(LAM, X), mul(neg(pw(S("rt_lam"), 2)), xm1, xml, pw(mul(X, Y), -1))),
        2,
        from_cycles("(1,2)(3,4)"),
    )
    b = MapFormula(
        "b",
        "xy",
        (div(xml, xm1), mul(sub(C(1), LAM), Y, pw(xm1, -2))),
        2,
        from_cycles("(1,3)(2,4)"),
    )
    maps = [MapFormula("deck", "xy", (X, mul(W, Y)), p, None), a, b]
    if harmonic:
        c = MapFormula(
            "c",
            "xy",
            (
                div(C(2), sub(C(2), X)),
                mul(pw(S("rt_two"), 2), X, xm1, pw(mul(sub(X, C(2)), Y), -1)),
            ),
            4,
            from_cycles("(1,2,3,4)"),
        )
        maps.append(c)
    return model, maps


def curve_l1_displayed_bundle(p: int) -> tuple[CurveModel, list[MapFormula]]:
    """The mirrored exponent pattern (1, p-1) with its two involution maps.

    Map a is exact as published; b requires a sign fix (the published
    sign variant is kept for falsification).  No order-4 map exists on
    this exponent pattern at lambda = 2 (the needed p-th root is
    obstructed), which the verifier demonstrates on the variant c.
    """
    model = model_l1(p, 1, p - 1)
    xm1, xml = sub(X, C(1)), sub(X, LAM)
    a = MapFormula(
        "a",
        "xy",
        (div(LAM, X), mul(C(-1), LAM, xm1, xml, pw(mul(X, Y), -1))),
        2,
        from_cycles("(1,2)(3,4)"),
    )
    b = MapFormula(
        "b",
        "xy",
        (div(xml, xm1), mul(sub(C(1), LAM), X, xml, pw(mul(xm1, Y), -1))),
        2,
        from_cycles("(1,3)(2,4)"),
    )
    b_variant = MapFormula(
        "b_variant",
        "xy",
        (div(xml, xm1), mul(C(-1), sub(C(1), LAM), X, xml, pw(mul(xm1, Y), -1))),
        2,
        from_cycles("(1,3)(2,4)"),
        ("sign variant; fails closure",),
    )
    c_variant = MapFormula(
        "c_variant",
        "xy",
        (
            div(C(2), sub(C(2), X)),
            mul(C(-2), Y, xm1, pw(sub(X, C(2)), -2)),
        ),
        4,
        from_cycles("(1,2,3,4)"),
        ("no order-4 map exists on this exponent pattern; kept as a falsification regression",),
    )
    maps = [MapFormula("deck", "xy", (X, mul(W, Y)), p, None), a, b, b_variant, c_variant]
    return model, maps


# -- intermediate model maps -------------------------------------------------


def _xp(p: int):
    return pw(X, p)


def elambda_maps(p: int, m: int, include_variants: bool = False) -> list[MapFormula]:
    """Certified extra automorphisms of y^p = (x^p-1)(x^p-mu)^m.

    The mu symbol is bound to "lam" at evaluation time (the caller
    instantiates the moved parameter).  m = p-1 carries two commuting
    involutions, m = 1 one; the order-4 candidate at mu = 2 with
    m^2 = -1 mod p is provably not an automorphism and only the
    published candidate is kept, as a falsification regression.
    """
    xp = _xp(p)
    xpm1, xpml = sub(xp, C(1)), sub(xp, LAM)
    maps: list[MapFormula] = [
        MapFormula("deckA", "xy", (mul(W, X), Y), p, None),
        MapFormula("deckB", "xy", (X, mul(W, Y)), p, None),
    ]
    if m == p - 1:
        maps.append(
            MapFormula(
                "alpha",
                "xy",
                (
                    div(S("rt_lam"), X),
                    mul(S("rt_neg_lam_pm1"), xpm1, xpml, pw(mul(xp, Y), -1)),
                ),
                2,
            )
        )
        maps.append(
            MapFormula(
                "beta",
                "xy",
                (div(xpml, Y), mul(sub(C(1), LAM), pw(X, p - 1), pw(xpm1, -1))),
                2,
            )
        )
        if include_variants:
            maps.append(
                MapFormula(
                    "alpha_variant",
                    "xy",
                    (div(S("rt_lam"), X), mul(S("rt_neg_lam_pm1"), pw(Y, p - 1))),
                    2,
                    None,
                    ("drops a rational factor; fails closure",),
                )
            )
            maps.append(
                MapFormula(
                    "beta_variant",
                    "xy",
                    (div(xpml, Y), mul(sub(C(1), LAM), pw(X, p - 1))),
                    2,
                    None,
                    ("drops a rational factor; fails closure",),
                )
            )
    if m == 1:
        maps.append(
            MapFormula(
                "alpha",
                "xy",
                (div(S("rt_lam"), X), mul(S("rt_lam"), Y, pw(X, -2))),
                2,
            )
        )
        if include_variants:
            maps.append(
                MapFormula(
                    "alpha_variant",
                    "xy",
                    (div(S("rt_lam"), X), mul(S("rt_lam"), Y)),
                    2,
                    None,
                    ("drops a rational factor; fails closure",),
                )
            )
    if include_variants and (m * m + 1) % p == 0:
        maps.append(
            MapFormula(
                "gamma_candidate",
                "xy",
                (
                    mul(xpm1, pw(sub(xp, C(2)), m - 1), pw(Y, -p)),
                    mul(S("rt_sign2"), pw(sub(xp, C(2)), (m * m + 1) // p)),
                ),
                4,
                None,
                (
                    "order-4 candidate at mu = 2; no such automorphism exists "
                    "(the required p-th root is not in the function field), "
                    "kept as a falsification regression",
                ),
            )
        )
    return maps


def instantiate_maps(model: CurveModel, lc: LambdaClass, include_variants: bool = False) -> list[MapFormula]:
    """The certified (and optionally candidate) maps for a model and class."""
    if model.kind == "gfc_projective":
        return deck_generators_projective() + quadrangular_cover_maps(lc, include_variants)
    if model.kind == "pgonal":
        eq = model.equations[0]
        exps = dict(eq.branches)
        if exps.get("0") == 1 and exps.get("1") == model.p - 1 and exps.get("lambda") == 1:
            _, maps = curve_l1_bundle(model.p, harmonic=lc.kind == HARMONIC)
            return maps
        if exps.get("0") == 1 and exps.get("1") == 1 and exps.get("lambda") == model.p - 1:
            _, maps = curve_l1_displayed_bundle(model.p)
            return maps if include_variants else [f for f in maps if "variant" not in f.name]
        return [MapFormula("deck", "xy", (X, mul(W, Y)), model.p, None)]
    if model.kind == "elambda":
        return elambda_maps(model.p, model.param("m"), include_variants)
    if model.kind == "fiber_product":
        return [
            MapFormula("deckA", "xyz", (X, mul(W, Y), Z), model.p, None),
            MapFormula("deckB", "xyz", (X, Y, mul(W, Z)), model.p, None),
        ]
    return []

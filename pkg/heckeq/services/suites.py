"""
Identity suites and the runner that verifies them.

An identity compares two sides coefficient by coefficient up to an order. A
side is either an expression in the evaluator's language or a builder that
computes the series when asked for a working order. Randomized suites draw
their specialisations from a seeded generator, so a seed fixes the catalogue.
"""
import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

from heckeq.config import get_settings
from heckeq.errors import SingularSpec, UnknownIdentity, UnknownSuite
from heckeq.models.report import Discrepancy, IdentityReport, ReportStatus
from heckeq.services.appell import AppellSpec, appell_m, changing_z_correction
from heckeq.services.evaluator import eval_expression
from heckeq.services.hecke import (
    DoubleSumParams,
    f1p1_expansion,
    f_flip_rhs,
    f_shift_rhs,
    fabc_fnq_rhs,
    fnn1_expansion,
    h_nn1,
    hecke_f,
    validate_f1p1,
    validate_fnn1,
)
from heckeq.services.series import (
    FirstDiscrepancy,
    FracSeries,
    QArg,
    Rational,
    add,
    ensure_order,
    equal_to_order,
    fmt_exponent,
    fmt_rational,
    mul,
    parity_sign,
)
from heckeq.services.strings import (
    Corollary,
    StringIndex,
    corollary_rhs,
    prop51_sides,
    split_rhs,
    string_S_hecke,
)
from heckeq.services.theta import ThetaArg, ThetaForm, jtheta, theta_quotient

logger = logging.getLogger(__name__)

SeriesBuilder = Callable[[Fraction], FracSeries]
T = TypeVar("T")


@dataclass(frozen=True)
class Identity:
    """
    One identity of a suite.

    Attributes:
        identity_id: Stable name, unique within its suite
        lhs: Left side as text (an expression unless lhs_build is given)
        rhs: Right side as text (an expression unless rhs_build is given)
        lhs_build: Builder for the left side
        rhs_build: Builder for the right side
        order: Order used when the caller does not choose one
    """

    identity_id: str
    lhs: str
    rhs: str
    lhs_build: Optional[SeriesBuilder] = None
    rhs_build: Optional[SeriesBuilder] = None
    order: Optional[Fraction] = None

    def side(self, which: str, order: Fraction) -> FracSeries:
        text, build = (self.lhs, self.lhs_build) if which == "lhs" else (self.rhs, self.rhs_build)
        if build is None:
            return eval_expression(text, order)
        return ensure_order(build, order)


@dataclass(frozen=True)
class Fault:
    """Adds ``delta`` to the left-side coefficient of q^exponent of one identity."""

    identity_id: str
    exponent: Fraction
    delta: Fraction = Fraction(1)

    @classmethod
    def parse(cls, text: str) -> "Fault":
        """Read ``ID@EXP``, e.g. ``KP-1@3`` or ``KP-8B@7/10``."""
        identity_id, sep, exponent = text.rpartition("@")
        if not sep or not identity_id:
            raise ValueError(f"fault must look like ID@EXP, got {text!r}")
        try:
            return cls(identity_id, Fraction(exponent))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad fault exponent {exponent!r}") from exc


SuiteBuilder = Callable[[random.Random, int], List[Identity]]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    default_order: Fraction
    build: SuiteBuilder


# builders


def _expr(identity_id: str, lhs: str, rhs: str, order: Optional[Rational] = None) -> Identity:
    return Identity(identity_id, lhs, rhs, order=None if order is None else Fraction(order))


def _j(x: QArg, modulus: Rational = 1) -> SeriesBuilder:
    return lambda w: jtheta(x, Fraction(modulus), w)


def _m(x: QArg, modulus: Rational, z: QArg) -> SeriesBuilder:
    spec = AppellSpec(x, Fraction(modulus), z)
    return lambda w: appell_m(spec, w)


def _f(params: DoubleSumParams) -> SeriesBuilder:
    return lambda w: hecke_f(params, w)


def _times(mono: QArg, build: SeriesBuilder) -> SeriesBuilder:
    return lambda w: build(w - mono.exp).shift(mono.exp).scale(mono.sign)


def _scaled(factor: Rational, build: SeriesBuilder) -> SeriesBuilder:
    return lambda w: build(w).scale(factor)


def _prod(*builders: SeriesBuilder) -> SeriesBuilder:
    def build(w: Fraction) -> FracSeries:
        acc = FracSeries.one()
        for factor in builders:
            acc = mul(acc, factor(w))
        return acc

    return build


def _sum(*builders: SeriesBuilder) -> SeriesBuilder:
    def build(w: Fraction) -> FracSeries:
        acc = FracSeries.zero()
        for term in builders:
            acc = add(acc, term(w))
        return acc

    return build


def _const(value: Rational) -> SeriesBuilder:
    return lambda w: FracSeries.constant(value)


# sampling


def _random_exp(rng: random.Random, max_den: int, magnitude: int) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-magnitude * den, magnitude * den), den)


def _random_qarg(rng: random.Random, max_den: int = 4, magnitude: int = 3) -> QArg:
    return QArg(rng.choice((1, -1)), _random_exp(rng, max_den, magnitude))


def _draw(
    rng: random.Random,
    count: int,
    sample: Callable[[random.Random], T],
    accept: Callable[[T], bool] = lambda _: True,
    what: str = "sample",
) -> List[T]:
    """Draw ``count`` accepted samples, giving up after 50 tries per sample."""
    found: List[T] = []
    for _ in range(50 * count):
        if len(found) == count:
            break
        candidate = sample(rng)
        if accept(candidate):
            found.append(candidate)
    if len(found) < count:
        logger.warning(f"only {len(found)} of {count} {what} instances accepted")
    return found


def _regular(*thetas: ThetaArg) -> bool:
    return not any(theta.singular for theta in thetas)


def _appell_ok(*specs: AppellSpec) -> bool:
    try:
        for spec in specs:
            spec.validate()
    except SingularSpec:
        return False
    return True


def _random_params(rng: random.Random) -> DoubleSumParams:
    a, c = rng.randint(1, 3), rng.randint(1, 3)
    root = math.isqrt(a * c)
    b = rng.randint(root + 1, root + 2)
    return DoubleSumParams(a, b, c, _random_qarg(rng, 2, 5), _random_qarg(rng, 2, 5))


def _integer_qarg(rng: random.Random) -> QArg:
    return QArg(rng.choice((1, -1)), Fraction(rng.randint(-3, 3)))


def _q(exp: Rational, sign: int = 1) -> QArg:
    return QArg(sign, Fraction(exp))


# notation: product rearrangements

NOTATION = [
    ("Jb01-as-Jb14", "Jb(0,1)", "2*Jb(1,4)"),
    ("Jb01-product", "Jb(0,1)", "2*Jp(2)^2/Jp(1)"),
    ("Jb12-product", "Jb(1,2)", "Jp(2)^5/(Jp(1)^2*Jp(4)^2)"),
    ("J12-product", "J(1,2)", "Jp(1)^2/Jp(2)"),
    ("Jb13-product", "Jb(1,3)", "Jp(2)*Jp(3)^2/(Jp(1)*Jp(6))"),
    ("J14-product", "J(1,4)", "Jp(1)*Jp(4)/Jp(2)"),
    ("J16-product", "J(1,6)", "Jp(1)*Jp(6)^2/(Jp(2)*Jp(3))"),
    ("Jb16-product", "Jb(1,6)", "Jp(2)^2*Jp(3)*Jp(12)/(Jp(1)*Jp(4)*Jp(6))"),
    ("J1-as-J13", "Jp(1)", "J(1,3)"),
    ("J2-as-J26", "Jp(2)", "J(2,6)"),
    ("J15-J25", "J(1,5)*J(2,5)", "Jp(1)*Jp(5)"),
]


def _notation_suite(rng: random.Random, count: int) -> List[Identity]:
    return [_expr(identity_id, lhs, rhs) for identity_id, lhs, rhs in NOTATION]


# theta-id: theta function identities

LEMMA_F661_A = (
    "Jp(30)^3/Jb(0,5)*J(3,6)/J(3,30)"
    " - 2*J(6,60)*Jb(5,30)*Jb(10,30)/(Jb(0,5)*Jb(0,30)*Jb(3,30))"
    "*Jp(6)*Jp(60)/Jp(30)^4*J(9,30)*J(21,30)*J(15,30)*J(5,30)"
)
LEMMA_F661_B = (
    "4*J(6,60)*Jb(5,30)*Jb(10,30)/(Jb(0,5)*Jb(0,30)*Jb(3,30))"
    "*Jp(6)*Jp(60)/Jp(30)^4*J(16,30)*J(20,30)*J(26,30)*J(10,30)"
)
THETA_MODULI = (1, 2, 3)


def _theta_sample(rng: random.Random) -> Tuple[QArg, int]:
    return _random_qarg(rng), rng.choice(THETA_MODULI)


def _theta_regular(sample: Tuple[QArg, int]) -> bool:
    x, modulus = sample
    return _regular(ThetaArg(x, modulus))


def _theta_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = [
        _expr("f661-id-a", LEMMA_F661_A, "0", order=60),
        _expr("f661-id-b", LEMMA_F661_B, "J(4,10)*J(3,15)", order=60),
    ]

    for i, (x, M) in enumerate(_draw(rng, 2 * count, _theta_sample, what="j-forms")):
        identities.append(
            Identity(
                f"j-forms#{i}",
                f"j({x}; q^{M}) as a sum",
                f"j({x}; q^{M}) as a product",
                lhs_build=_j(x, M),
                rhs_build=lambda w, x=x, M=M: jtheta(x, Fraction(M), w, ThetaForm.PRODUCT),
            )
        )

    for m in (2, 3):
        for i, z in enumerate(_draw(rng, count, _random_qarg, what="j-split")):
            terms = []
            for k in range(m):
                mono = ((-z) ** k).shifted(Fraction(k * (k - 1), 2))
                arg = (QArg(parity_sign(m + 1), Fraction(0)) * z ** m).shifted(m * (m - 1) // 2 + m * k)
                terms.append(_times(mono, _j(arg, m * m)))
            identities.append(
                Identity(
                    f"j-split[m={m}]#{i}",
                    f"j({z}; q)",
                    f"sum_k (-1)^k q^C(k,2) z^k j((-1)^{m + 1} q^(C({m},2)+{m}k) z^{m}; q^{m * m}) at z={z}",
                    lhs_build=_j(z),
                    rhs_build=_sum(*terms),
                )
            )

    for n in (-2, -1, 1, 2):
        for i, (x, M) in enumerate(_draw(rng, count, _theta_sample, what="j-elliptic")):
            mono = (x ** (-n)).shifted(-M * n * (n - 1) // 2) * QArg(parity_sign(n), Fraction(0))
            identities.append(
                Identity(
                    f"j-elliptic[n={n}]#{i}",
                    f"j({x.shifted(n * M)}; q^{M})",
                    f"{mono} * j({x}; q^{M})",
                    lhs_build=_j(x.shifted(n * M), M),
                    rhs_build=_times(mono, _j(x, M)),
                )
            )

    for i, (x, M) in enumerate(_draw(rng, count, _theta_sample, what="j-reflect")):
        flipped = x.inverse().shifted(M)
        identities.append(
            Identity(
                f"j-reflect#{i}",
                f"j({x}; q^{M})",
                f"j({flipped}; q^{M})",
                lhs_build=_j(x, M),
                rhs_build=_j(flipped, M),
            )
        )

    for n in (2, 3):
        for i, (x, M) in enumerate(_draw(rng, count, _theta_sample, _theta_regular, "j-dissect")):
            parts = [ThetaArg(x.shifted(k * M), n * M) for k in range(n)]
            identities.append(
                Identity(
                    f"j-dissect[n={n}]#{i}",
                    f"j({x}; q^{M})",
                    f"J_{M} prod_k j(q^({M}k) x; q^{n * M}) / J_{n * M}^{n} at x={x}",
                    lhs_build=_j(x, M),
                    rhs_build=lambda w, parts=parts, M=M, n=n: theta_quotient(
                        parts, [], w, euler=[(M, 1), (n * M, -n)]
                    ),
                )
            )

    for i, (x, M) in enumerate(_draw(rng, count, _theta_sample, what="j-neg-base")):
        numerators = [ThetaArg(x, 2 * M), ThetaArg(_q(M, -1) * x, 2 * M)]
        denominators = [ThetaArg(_q(M), 4 * M)]
        identities.append(
            Identity(
                f"j-neg-base#{i}",
                f"j({x}; -q^{M})",
                f"j({x}; q^{2 * M}) j({_q(M, -1) * x}; q^{2 * M}) / J_{{{M},{4 * M}}}",
                lhs_build=lambda w, x=x, M=M: jtheta(x, Fraction(M), w, base_sign=-1),
                rhs_build=lambda w, num=numerators, den=denominators: theta_quotient(num, den, w),
            )
        )

    for i, (x, M) in enumerate(_draw(rng, count, _theta_sample, _theta_regular, "j-square")):
        halves = [ThetaArg(x, M), ThetaArg(-x, M)]
        identities.append(
            Identity(
                f"j-square#{i}",
                f"j({x ** 2}; q^{2 * M})",
                f"J_{2 * M} j({x}; q^{M}) j({-x}; q^{M}) / J_{M}^2",
                lhs_build=_j(x ** 2, 2 * M),
                rhs_build=lambda w, halves=halves, M=M: theta_quotient(
                    halves, [], w, euler=[(2 * M, 1), (M, -2)]
                ),
            )
        )

    identities.extend(_weierstrass(rng, count))
    identities.extend(_product_pairs(rng, count))
    return identities


def _weierstrass(rng: random.Random, count: int) -> List[Identity]:
    def sample(r: random.Random) -> Tuple[QArg, ...]:
        return tuple(_random_qarg(r, 3, 2) for _ in range(4))

    def pairs(a: QArg, b: QArg) -> List[QArg]:
        return [a * b, a * b.inverse()]

    def accept(args: Tuple[QArg, ...]) -> bool:
        a, b, c, d = args
        if len({arg.exp for arg in args}) < 4:
            return False
        every = pairs(a, c) + pairs(b, d) + pairs(a, d) + pairs(b, c) + pairs(a, b) + pairs(c, d)
        return _regular(*(ThetaArg(arg, 1) for arg in every))

    def quad(u: QArg, v: QArg, s: QArg, t: QArg) -> SeriesBuilder:
        return _prod(*(_j(arg) for arg in pairs(u, v) + pairs(s, t)))

    identities = []
    for i, (a, b, c, d) in enumerate(_draw(rng, count, sample, accept, "weierstrass")):
        identities.append(
            Identity(
                f"weierstrass#{i}",
                f"j(ac)j(a/c)j(bd)j(b/d) at a={a}, b={b}, c={c}, d={d}",
                "j(ad)j(a/d)j(bc)j(b/c) + (b/c) j(ab)j(a/b)j(cd)j(c/d)",
                lhs_build=quad(a, c, b, d),
                rhs_build=_sum(quad(a, d, b, c), _times(b * c.inverse(), quad(a, b, c, d))),
            )
        )
    return identities


def _product_pairs(rng: random.Random, count: int) -> List[Identity]:
    def sample(r: random.Random) -> Tuple[QArg, QArg, int]:
        return _random_qarg(r), _random_qarg(r), r.choice((1, 2))

    def accept(args: Tuple[QArg, QArg, int]) -> bool:
        x, y, M = args
        return _regular(*(ThetaArg(arg, M) for arg in (x, -x, y, -y)))

    identities = []
    for i, (x, y, M) in enumerate(_draw(rng, count, sample, accept, "theta pairs")):
        cross = _sum(
            _prod(_j(-x, M), _j(y, M)), _scaled(-1, _prod(_j(x, M), _j(-y, M)))
        )
        identities.append(
            Identity(
                f"theta-diff#{i}",
                f"j(-x)j(y) - j(x)j(-y) to base q^{M} at x={x}, y={y}",
                f"2x j(y/x; q^{2 * M}) j(q^{M} xy; q^{2 * M})",
                lhs_build=cross,
                rhs_build=_scaled(
                    2,
                    _times(x, _prod(_j(y * x.inverse(), 2 * M), _j((x * y).shifted(M), 2 * M))),
                ),
            )
        )
        plain = _sum(_prod(_j(-x, M), _j(y, M)), _prod(_j(x, M), _j(-y, M)))
        identities.append(
            Identity(
                f"theta-sum#{i}",
                f"j(-x)j(y) + j(x)j(-y) to base q^{M} at x={x}, y={y}",
                f"2 j(xy; q^{2 * M}) j(q^{M} y/x; q^{2 * M})",
                lhs_build=plain,
                rhs_build=_scaled(
                    2,
                    _prod(_j(x * y, 2 * M), _j((y * x.inverse()).shifted(M), 2 * M)),
                ),
            )
        )
    return identities


# appell: Appell-Lerch functional equations

APPELL_MODULI = (1, 2, 3, 5, 12)


def _appell_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = [
        _expr("mxqz-eval-a", "am(q, 2, -1)", "1/2"),
        _expr("mxqz-eval-b", "am(-1, 2, q)", "0"),
    ]

    def sample(r: random.Random) -> Tuple[QArg, int, QArg]:
        return _random_qarg(r), r.choice(APPELL_MODULI), _random_qarg(r)

    def accept(args: Tuple[QArg, int, QArg]) -> bool:
        x, M, z = args
        return _appell_ok(AppellSpec(x, M, z))

    for i, (x, M, z) in enumerate(_draw(rng, count, sample, accept, "m-shift-z")):
        spec = AppellSpec(x, M, z)
        identities.append(
            Identity(
                f"m-shift-z#{i}",
                str(spec),
                str(AppellSpec(x, M, z.shifted(M))),
                lhs_build=_m(x, M, z),
                rhs_build=_m(x, M, z.shifted(M)),
            )
        )
    for i, (x, M, z) in enumerate(_draw(rng, count, sample, accept, "m-flip")):
        flipped = AppellSpec(x.inverse(), M, z.inverse())
        identities.append(
            Identity(
                f"m-flip#{i}",
                str(AppellSpec(x, M, z)),
                f"{x.inverse()} * {flipped}",
                lhs_build=_m(x, M, z),
                rhs_build=_times(x.inverse(), _m(x.inverse(), M, z.inverse())),
            )
        )
    for i, (x, M, z) in enumerate(_draw(rng, count, sample, accept, "m-shift-x")):
        identities.append(
            Identity(
                f"m-shift-x#{i}",
                str(AppellSpec(x.shifted(M), M, z)),
                f"1 - {x} * {AppellSpec(x, M, z)}",
                lhs_build=_m(x.shifted(M), M, z),
                rhs_build=_sum(_const(1), _scaled(-1, _times(x, _m(x, M, z)))),
            )
        )
    for i, (x, M, z) in enumerate(_draw(rng, count, sample, accept, "m-flip-xz")):
        other = (x * z).inverse()
        identities.append(
            Identity(
                f"m-flip-xz#{i}",
                str(AppellSpec(x, M, z)),
                str(AppellSpec(x, M, other)),
                lhs_build=_m(x, M, z),
                rhs_build=_m(x, M, other),
            )
        )

    def sample_pair(r: random.Random) -> Tuple[QArg, int, QArg, QArg]:
        return _random_qarg(r), r.choice(APPELL_MODULI), _random_qarg(r), _random_qarg(r)

    def accept_pair(args: Tuple[QArg, int, QArg, QArg]) -> bool:
        x, M, z0, z1 = args
        return _appell_ok(AppellSpec(x, M, z0), AppellSpec(x, M, z1))

    for i, (x, M, z0, z1) in enumerate(_draw(rng, count, sample_pair, accept_pair, "changing-z")):
        identities.append(
            Identity(
                f"changing-z#{i}",
                f"{AppellSpec(x, M, z1)} - {AppellSpec(x, M, z0)}",
                f"z0 J_M^3 j(z1/z0) j(x z0 z1) / (j(z0) j(z1) j(x z0) j(x z1)) at z0={z0}, z1={z1}",
                lhs_build=_sum(_m(x, M, z1), _scaled(-1, _m(x, M, z0))),
                rhs_build=lambda w, x=x, M=M, z0=z0, z1=z1: changing_z_correction(x, M, z0, z1, w),
            )
        )
    return identities


# hecke-fe: double-sum functional equations


def _hecke_fe_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = []
    shift_params = _draw(rng, min(count, 10), _random_params, what="f-shift")
    for R in range(-2, 3):
        for S in range(-2, 3):
            for i, params in enumerate(shift_params):
                identities.append(
                    Identity(
                        f"f-shift[{R},{S}]#{i}",
                        str(params),
                        f"({R},{S}) shift of {params}",
                        lhs_build=_f(params),
                        rhs_build=lambda w, p=params, R=R, S=S: f_shift_rhs(p, R, S, w),
                    )
                )
    for which in (1, 2):
        for i, params in enumerate(_draw(rng, count, _random_params, what=f"fabc-fnq-{which}")):
            identities.append(
                Identity(
                    f"fabc-fnq-{which}#{i}",
                    str(params),
                    f"one-step shift {which} of {params}",
                    lhs_build=_f(params),
                    rhs_build=lambda w, p=params, which=which: fabc_fnq_rhs(p, which, w),
                )
            )
    for i, params in enumerate(_draw(rng, count, _random_params, what="f-flip")):
        identities.append(
            Identity(
                f"f-flip#{i}",
                str(params),
                f"flip of {params}",
                lhs_build=_f(params),
                rhs_build=lambda w, p=params: f_flip_rhs(p, w),
            )
        )

    def sample_swap(r: random.Random) -> DoubleSumParams:
        return DoubleSumParams(1, 1 + r.randint(1, 5), 1, _random_qarg(r, 2, 5), _random_qarg(r, 2, 5))

    for i, params in enumerate(_draw(rng, count, sample_swap, what="f-swap")):
        swapped = params.with_args(params.y, params.x)
        identities.append(
            Identity(
                f"f-swap#{i}",
                str(params),
                str(swapped),
                lhs_build=_f(params),
                rhs_build=_f(swapped),
            )
        )
    return identities


# expansion: Appell-Lerch expansions of f_{1,p+1,1} and f_{n,n,1}

EXPANSION_EVALS = [
    ("f551-eval", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)"),
    ("f441-f331-eval-a", "f(4,4,1; -q^5, q^3) - q^-1*f(4,4,1; -q^3, q)", "-q^-1*Jp(1)^2"),
    ("f441-f331-eval-b", "f(3,3,1; -q^4, q^3) - q^-1*f(3,3,1; -q^2, q)", "-q^-1*Jp(1)*J(1,2)"),
]


def _valid(check: Callable[[], None]) -> bool:
    try:
        check()
    except SingularSpec:
        return False
    return True


def _expansion_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = [_expr(identity_id, lhs, rhs, order=50) for identity_id, lhs, rhs in EXPANSION_EVALS]
    identities.append(_expr("phi-lerch", "f(1,2,1; q, -q)", "2*Jb(1,4)*am(q, 3, -1)", order=40))
    identities.append(
        Identity(
            "f121-expansion-eval",
            "f1p1 expansion at p=1, x=q, y=q",
            "Jp(1)^2",
            lhs_build=lambda w: f1p1_expansion(1, _q(1), _q(1), w),
            order=Fraction(40),
        )
    )
    identities.append(
        Identity(
            "f551-expansion-eval",
            "fnn1 expansion at n=5, x=q^5, y=q^4",
            "Jp(2)*Jp(10)",
            lhs_build=lambda w: fnn1_expansion(5, _q(5), _q(4), w),
            order=Fraction(50),
        )
    )
    identities.append(
        Identity(
            "f661-expansion-eval",
            "fnn1 expansion at n=6, x=q^6, y=q^4",
            "J(4,10)*J(3,15)",
            lhs_build=lambda w: fnn1_expansion(6, _q(6), _q(4), w),
            order=Fraction(50),
        )
    )
    minus = _q(0, -1)
    for identity_id, text, build in (
        ("h661-zero", "h_{6,6,1}(q^6, q^4, -1, -1)", lambda w: h_nn1(6, _q(6), _q(4), minus, minus, w)),
        ("h441-zero", "h_{4,4,1}(q^4, q^3, -1, -1)", lambda w: h_nn1(4, _q(4), _q(3), minus, minus, w)),
        (
            "h441-pair-zero",
            "h_{4,4,1}(q^3, q^2, -1, -1) + q h_{4,4,1}(q^5, q^4, -1, -1)",
            _sum(
                lambda w: h_nn1(4, _q(3), _q(2), minus, minus, w),
                _times(_q(1), lambda w: h_nn1(4, _q(5), _q(4), minus, minus, w)),
            ),
        ),
    ):
        identities.append(Identity(identity_id, text, "0", lhs_build=build))

    def sample(r: random.Random) -> Tuple[QArg, QArg]:
        return _integer_qarg(r), _integer_qarg(r)

    samples = min(count, 10)
    for p in (1, 2, 3):
        accept = lambda xy, p=p: _valid(lambda: validate_f1p1(p, *xy, strict=True))  # noqa: E731
        for i, (x, y) in enumerate(_draw(rng, samples, sample, accept, f"f1p1 p={p}")):
            params = DoubleSumParams(1, p + 1, 1, x, y)
            identities.append(
                Identity(
                    f"f1p1[p={p}]#{i}",
                    str(params),
                    f"g_{{1,{p + 1},1}}({x}, {y}, -1, -1) + theta_{p}({x}, {y}) / Jbar_{{0,{p * (2 + p)}}}",
                    lhs_build=_f(params),
                    rhs_build=lambda w, p=p, x=x, y=y: f1p1_expansion(p, x, y, w),
                )
            )
    for n in (2, 3, 4, 5, 6):
        accept = lambda xy, n=n: _valid(lambda: validate_fnn1(n, *xy, strict=True))  # noqa: E731
        for i, (x, y) in enumerate(_draw(rng, samples, sample, accept, f"fnn1 n={n}")):
            params = DoubleSumParams(n, n, 1, x, y)
            identities.append(
                Identity(
                    f"fnn1[n={n}]#{i}",
                    str(params),
                    f"h_{{{n},{n},1}}({x}, {y}, -1, -1) - theta_{n}({x}, {y}) / (Jbar_{{0,{n - 1}}} Jbar_{{0,{n * n - n}}})",
                    lhs_build=_f(params),
                    rhs_build=lambda w, n=n, x=x, y=y: fnn1_expansion(n, x, y, w),
                )
            )
    return identities


# string functions

STRING_INDICES = [(2, 1, 1), (4, 2, 0), (4, 2, 2), (6, 5, 1), (8, 6, 2), (10, 9, 1)]


def _s(idx: StringIndex, reduce: bool = True) -> SeriesBuilder:
    return lambda w: string_S_hecke(idx, w, reduce=reduce)


def _string_sym_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = []
    for N, m, l in STRING_INDICES:  # noqa: E741
        idx = StringIndex(N, m, l)
        images = [
            ("neg", StringIndex(N, -m, l), False),
            ("reflect", StringIndex(N, 2 * N - m, l), False),
            ("dual", StringIndex(N, N - m, N - l), False),
        ]
        for kind, image, reduce in images:
            identities.append(
                Identity(
                    f"S-{kind}[{N},{m},{l}]",
                    f"S({N},{m},{l})",
                    f"S({image.level},{image.m},{image.l})",
                    lhs_build=_s(idx),
                    rhs_build=_s(image, reduce=reduce),
                )
            )
    return identities


def _cross_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = []
    for N, m, l in STRING_INDICES:  # noqa: E741
        identities.append(_expr(f"C=S[{N},{m},{l}]", f"C({N},{m},{l})", f"S({N},{m},{l})"))
        identities.append(_expr(f"S=KPL[{N},{m},{l}]", f"S({N},{m},{l})", f"KPL({N},{m},{l})"))
    return identities


KP_HECKE = [
    ("KP-1-hecke", "f(1,2,1; q, q)", "Jp(1)^2"),
    ("KP-2-hecke", "f(2,2,1; q^2, q)", "Jp(1)*Jp(2)"),
    ("KP-4A-hecke", "q^-1*f(3,3,1; q^2, 1)", "Jp(1)*Jb(6,24)"),
    ("KP-4B-hecke", "f(3,3,1; -q^2, q) - q*f(3,3,1; -q^4, q^3)", "Jp(1)*J(1,2)"),
    ("KP-6A-hecke", "f(4,4,1; q^4, q^3)", "Jp(2)*J(3,12)"),
    ("KP-6B-hecke", "f(4,4,1; q^3, q^2) + q*f(4,4,1; q^5, q^4)", "Jp(2)*J(6,12)"),
    ("KP-6C-hecke", "f(4,4,1; -q^3, q^2) - q*f(4,4,1; -q^5, q^4)", "Jp(1)^2"),
    ("KP-8A-hecke", "f(5,5,1; q^5, q^4)", "Jp(2)*Jp(10)"),
    ("KP-8B-hecke", "f(5,5,1; -q^4, q^3) - q*f(5,5,1; -q^6, q^5)", "J(1,2)*J(8,20)"),
    ("KP-10A-hecke", "q^-1*f(6,6,1; q^5, 1)", "Jp(2)*Jb(5,20)"),
    ("KP-10B-hecke", "f(6,6,1; q^6, q^4)", "J(4,10)*J(3,15)"),
    ("KP-10C-hecke", "f(6,6,1; -q^4, q^2) - q^2*f(6,6,1; -q^8, q^6)", "Jp(1)*Jp(2)*Jp(20)/J(4,20)"),
    # f_{1,11,1} form of KP-10B, counted with the twelve as the thirteenth evaluation
    ("f1-11-1-eval", "f(1,11,1; q^4, q^3)", "J(4,10)*J(3,15)"),
]


def _kp_hecke_suite(rng: random.Random, count: int) -> List[Identity]:
    return [_expr(identity_id, lhs, rhs) for identity_id, lhs, rhs in KP_HECKE]


KP_ETA = [
    ("KP-1", "C(1,0,0)", "eta(1)^-1"),
    ("KP-2", "C(2,1,1)", "eta(1)^-2*eta(2)"),
    ("KP-4A", "C(4,2,0)", "eta(1)^-2*eta(6)^-1*eta(12)^2"),
    ("KP-4B", "C(4,0,0) - C(4,4,0)", "eta(2)^-1"),
    ("KP-6A", "C(6,1,3)", "eta(1)^-3*eta(2)*eta(3)*eta(6)^-1*eta(12)"),
    ("KP-6B", "C(6,1,1) + C(6,5,1)", "eta(1)^-3*eta(2)*eta(6)^2*eta(12)^-1"),
    ("KP-6C", "C(6,1,1) - C(6,5,1)", "eta(1)^-1"),
    ("KP-8A", "C(8,2,4)", "eta(1)^-3*eta(2)*eta(10)"),
    ("KP-8B", "C(8,2,2) - C(8,6,2)", "eta(1)^-1*eta(2)^-1*q^(1/10)*rp(4,5,{1,4},1)"),
    ("KP-10A", "C(10,5,3)", "eta(1)^-3*eta(2)*eta(5)^-1*eta(10)^2"),
    ("KP-10B", "C(10,1,5)", "eta(1)^-3*q^(29/40)*rp(2,5,{1,4},1)*rp(3,5,{2,3},1)"),
    ("KP-10C", "C(10,1,1) - C(10,9,1)", "eta(1)^-2*eta(2)*q^(-1/15)*rp(4,5,{0,2,3},-1)"),
]


def _kp_eta_suite(rng: random.Random, count: int) -> List[Identity]:
    return [_expr(identity_id, lhs, rhs) for identity_id, lhs, rhs in KP_ETA]


SPLIT_CASES = [(1, 1, 1), (2, 0, 0), (2, 2, 0), (3, 5, 1), (4, 6, 2), (5, 9, 1)]
COR2_CASES = [(1, 1), (2, 0), (2, 2), (3, 1), (3, 3), (4, 2), (5, 1), (5, 5)]
COR3_CASES = [(1, 1), (2, 0), (2, 2), (3, 1), (4, 0), (5, 3), (5, 5)]
PROP51_CASES = [
    (1, 1, 1), (2, 2, 1), (3, 4, 3), (2, 1, 3), (4, 2, 2),
    (5, 1, 1), (5, 3, 2), (6, 2, 5), (7, 4, 4), (8, 1, 6),
]


def _pm(sign: int) -> str:
    return "+" if sign > 0 else "-"


def _main_thm_suite(rng: random.Random, count: int) -> List[Identity]:
    identities = []
    for K, m, l in SPLIT_CASES:  # noqa: E741
        for sign in (1, -1):
            N = 2 * K
            identities.append(
                Identity(
                    f"split[{K},{m},{l},{_pm(sign)}]",
                    f"C({N},{m},{l}) {_pm(sign)} C({N},{N - m},{l})",
                    f"even-level splitting at K={K}, m={m}, l={l}, sign {_pm(sign)}",
                    rhs_build=lambda w, K=K, m=m, l=l, sign=sign: split_rhs(K, m, l, sign, w),
                )
            )
    for which, cases in ((Corollary.COR2, COR2_CASES), (Corollary.COR3, COR3_CASES)):
        for K, value in cases:
            N = 2 * K
            lhs = f"C({N},{value},{K})" if which is Corollary.COR2 else f"C({N},{K},{value})"
            identities.append(
                Identity(
                    f"{which.value}[{K},{value}]",
                    lhs,
                    f"single double-sum form {which.value} at K={K}",
                    rhs_build=lambda w, which=which, K=K, value=value: corollary_rhs(which, K, value, w),
                )
            )
    for K, d, e in PROP51_CASES:
        for sign in (1, -1):
            half = Fraction(K + d + e, 2)
            identities.append(
                Identity(
                    f"prop51[{K},{d},{e},{_pm(sign)}]",
                    f"f(1,{2 * K + 1},1; q^{d}, q^{e}) {_pm(sign)} q^{fmt_exponent(half)}"
                    f"*f(1,{2 * K + 1},1; q^{1 + K + d}, q^{1 + K + e})",
                    f"f_{{{K + 1},{K + 1},1}} form at K={K}, d={d}, e={e}",
                    lhs_build=lambda w, K=K, d=d, e=e, sign=sign: prop51_sides(K, d, e, sign, w)[0],
                    rhs_build=lambda w, K=K, d=d, e=e, sign=sign: prop51_sides(K, d, e, sign, w)[1],
                )
            )
    return identities


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("notation", "product rearrangements of J, Jbar and Euler products", Fraction(60), _notation_suite),
        Suite("theta-id", "theta function identities at random specialisations", Fraction(40), _theta_suite),
        Suite("appell", "Appell-Lerch functional equations and evaluations", Fraction(40), _appell_suite),
        Suite("hecke-fe", "functional equations of f_{a,b,c}", Fraction(30), _hecke_fe_suite),
        Suite("expansion", "Appell-Lerch expansions of f_{1,p+1,1} and f_{n,n,1}", Fraction(25), _expansion_suite),
        Suite("string-sym", "classic symmetries of the string functions", Fraction(25), _string_sym_suite),
        Suite("cross", "triple sum = Hecke form = lattice sum", Fraction(20), _cross_suite),
        Suite("kp-hecke", "Kac-Peterson evaluations in double-sum form", Fraction(60), _kp_hecke_suite),
        Suite("kp-eta", "Kac-Peterson evaluations as eta quotients", Fraction(40), _kp_eta_suite),
        Suite("main-thm", "even-level splitting, its corollaries and the conversion", Fraction(25), _main_thm_suite),
    )
}

ALL = "all"


def suite_names() -> List[str]:
    return list(SUITES) + [ALL]


def list_suites() -> List[Dict[str, str]]:
    """Name, description and default order of every suite."""
    return [
        {
            "name": suite.name,
            "description": suite.description,
            "default_order": fmt_rational(suite.default_order),
        }
        for suite in SUITES.values()
    ]


def build_suite(name: str, seed: Optional[int] = None, instances: Optional[int] = None) -> List[Identity]:
    """
    The identities of one suite, in declaration order.

    Raises:
        UnknownSuite: name is not registered
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    settings = get_settings()
    rng = random.Random(settings.seed if seed is None else seed)
    count = settings.random_instances if instances is None else instances
    return SUITES[name].build(rng, count)


def _inject(lhs: FracSeries, fault: Fault, order: Fraction) -> FracSeries:
    if fault.exponent > order:
        logger.warning(f"fault at q^{fault.exponent} lies beyond order {order}; ignored")
        return lhs
    return add(lhs, FracSeries.monomial(fault.exponent, fault.delta))


def verify_identity(identity: Identity, order: Rational, fault: Optional[Fault] = None) -> IdentityReport:
    """
    Verify one identity to ``order``. Errors are reported, never raised.
    """
    bound = Fraction(order)
    start = time.perf_counter()
    try:
        lhs = identity.side("lhs", bound)
        rhs = identity.side("rhs", bound)
        if fault is not None and fault.identity_id == identity.identity_id:
            lhs = _inject(lhs, fault, bound)
        verdict = equal_to_order(lhs, rhs, bound)
    except Exception as exc:
        elapsed = (time.perf_counter() - start) * 1000
        logger.error(f"{identity.identity_id} raised {type(exc).__name__}: {exc}")
        return IdentityReport(
            identity_id=identity.identity_id,
            lhs=identity.lhs,
            rhs=identity.rhs,
            order=fmt_rational(bound),
            status=ReportStatus.ERROR,
            runtime_ms=round(elapsed),
            detail=f"{type(exc).__name__}: {exc}",
        )
    elapsed = (time.perf_counter() - start) * 1000
    discrepancy = None
    status = ReportStatus.VERIFIED
    if isinstance(verdict, FirstDiscrepancy):
        status = ReportStatus.FAILED
        discrepancy = Discrepancy(
            exponent=fmt_rational(verdict.exponent),
            lhs_coeff=fmt_rational(verdict.coeff_a),
            rhs_coeff=fmt_rational(verdict.coeff_b),
        )
        logger.warning(
            f"{identity.identity_id} failed at q^{verdict.exponent}: "
            f"{verdict.coeff_a} != {verdict.coeff_b}"
        )
    return IdentityReport(
        identity_id=identity.identity_id,
        lhs=identity.lhs,
        rhs=identity.rhs,
        order=fmt_rational(bound),
        status=status,
        first_discrepancy=discrepancy,
        runtime_ms=round(elapsed),
    )


def run_suite(
    name: str,
    order: Optional[Rational] = None,
    seed: Optional[int] = None,
    fault: Optional[Fault] = None,
    instances: Optional[int] = None,
) -> List[IdentityReport]:
    """
    Verify every identity of a suite (or of all suites).

    Args:
        name: Suite name, or "all"
        order: Order for every identity; None uses the identity's or suite's default
        seed: Seed for the randomized suites; None uses the configured seed
        fault: Optional coefficient perturbation of one identity's left side
        instances: Random instances per equation; None uses the configured count

    Returns:
        One report per identity in declaration order

    Raises:
        UnknownSuite: name is not registered
        UnknownIdentity: the fault names an identity the run does not contain
    """
    names = list(SUITES) if name == ALL else [name]
    plan: List[Tuple[Identity, Fraction]] = []
    for suite_name in names:
        identities = build_suite(suite_name, seed, instances)
        default = SUITES[suite_name].default_order
        for identity in identities:
            if order is not None:
                chosen = Fraction(order)
            else:
                chosen = identity.order if identity.order is not None else default
            plan.append((identity, chosen))
    if fault is not None and not any(identity.identity_id == fault.identity_id for identity, _ in plan):
        raise UnknownIdentity(f"suite {name!r} has no identity {fault.identity_id!r}")

    logger.info(f"Running suite {name} ({len(plan)} identities)")
    start = time.perf_counter()
    reports = [verify_identity(identity, bound, fault) for identity, bound in plan]
    elapsed = time.perf_counter() - start
    counts = summarize(reports)
    logger.info(
        f"Suite {name} finished in {elapsed:.2f}s: "
        + ", ".join(f"{n} {status}" for status, n in counts.items())
    )
    return reports


def summarize(reports: Sequence[IdentityReport]) -> Dict[str, int]:
    """Count reports per status."""
    return {status.value: sum(r.status is status for r in reports) for status in ReportStatus}

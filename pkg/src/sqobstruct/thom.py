"""Thom-space models: reduced mod 2 cohomology of MSO_k as the ideal (w_k)
in H*(BSO_k; F2), the codimension-11 identity check, and the mod 3 degree
table of MSO_3."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .char_ring import (
    RingContext,
    SWPolynomial,
    apply_steenrod,
    format_poly,
    reduce_pontryagin,
    sq_poly,
)
from .steenrod import parse_element


@dataclass(frozen=True)
class ThomModel:
    ctx: RingContext

    def __post_init__(self):
        if not self.ctx.oriented:
            raise ValueError("ThomModel is built over BSO_k (oriented context)")

    @classmethod
    def mso(cls, k: int, degree_cap: int | None = None) -> ThomModel:
        return cls(RingContext(k, oriented=True, degree_cap=degree_cap))

    @property
    def k(self) -> int:
        return self.ctx.k

    @property
    def thom_class(self) -> SWPolynomial:
        return self.ctx.w(self.ctx.k)

    def contains(self, u: SWPolynomial) -> bool:
        """Ideal membership: every monomial has a factor w_k."""
        return u.ctx == self.ctx and u.divisible_by(self.ctx.k)

    def format(self, u: SWPolynomial) -> str:
        return format_poly(u, factor=self.ctx.k)


@dataclass
class TranscriptEntry:
    label: str
    operation: str
    argument: str
    argument_text: str
    value: SWPolynomial
    text: str


@dataclass
class IdentityReport:
    equal: bool
    lhs: SWPolynomial
    rhs: SWPolynomial
    difference: SWPolynomial
    lhs_text: str
    rhs_text: str
    difference_text: str
    transcript: list[TranscriptEntry] = field(default_factory=list)
    classes: dict[str, str] = field(default_factory=dict)
    omitted: tuple[str, ...] = ()

    def entry(self, label: str) -> TranscriptEntry:
        for e in self.transcript:
            if e.label == label:
                return e
        raise KeyError(label)


# (label, operation, class name) for the left-hand side, in display order
LHS_TERMS = (
    ("Sq4 alpha", "Sq4", "alpha"),
    ("Sq3.Sq1 alpha", "Sq3.Sq1", "alpha"),
    ("Sq5 beta", "Sq5", "beta"),
    ("Sq8 gamma", "Sq8", "gamma"),
    ("Sq7.Sq1 gamma", "Sq7.Sq1", "gamma"),
    ("Sq6.Sq2 gamma", "Sq6.Sq2", "gamma"),
    ("Sq9 delta", "Sq9", "delta"),
)


def codim11_classes(model: ThomModel) -> dict[str, SWPolynomial]:
    ctx = model.ctx
    return {
        "t": model.thom_class,
        "alpha": ctx.parse("w11*w6*w3"),
        "beta": reduce_pontryagin("t*(p1^2 - 2*p2)", ctx),
        "beta_prime": reduce_pontryagin("t*p2", ctx),
        "gamma": ctx.parse("w11*w3*w2"),
        "delta": reduce_pontryagin("t*p1", ctx),
    }


_CLASS_SOURCES = {
    "t": "t",
    "alpha": "w11*w6*w3",
    "beta": "t*(p1^2 - 2*p2)",
    "beta_prime": "t*p2",
    "gamma": "w11*w3*w2",
    "delta": "t*p1",
}


def verify_codim11_identity(omit: Iterable[str] = ()) -> IdentityReport:
    """Evaluate both sides of the degree-24 identity in H~*(MSO_11; F2).

    ``omit`` drops left-hand terms by label (e.g. ``"Sq9 delta"``); it exists
    to exercise the inequality path.
    """
    omit = tuple(omit)
    unknown = set(omit) - {label for label, _, _ in LHS_TERMS}
    if unknown:
        raise ValueError(f"unknown left-hand term(s): {sorted(unknown)}")
    model = ThomModel.mso(11)
    ctx = model.ctx
    cls = codim11_classes(model)
    for name in ("alpha", "beta", "beta_prime", "gamma", "delta"):
        assert model.contains(cls[name]), name

    transcript: list[TranscriptEntry] = []

    def record(label: str, op: str, arg: str, value: SWPolynomial):
        transcript.append(TranscriptEntry(
            label, op, arg, _CLASS_SOURCES.get(arg, arg), value, model.format(value)))
        return value

    lhs = ctx.zero()
    for label, op, arg in LHS_TERMS:
        value = record(label, op, arg, apply_steenrod(parse_element(op), cls[arg]))
        if label not in omit:
            lhs = lhs + value

    t = cls["t"]
    t_sq2_t = record("t.Sq2 t", "t*Sq2", "t", t * sq_poly(2, t))
    sq11_sq2_t = record("Sq11.Sq2 t", "Sq11.Sq2", "t",
                        apply_steenrod(parse_element("Sq11.Sq2"), t))
    rhs = t_sq2_t + sq11_sq2_t
    diff = lhs + rhs
    return IdentityReport(
        equal=diff.is_zero(),
        lhs=lhs,
        rhs=rhs,
        difference=diff,
        lhs_text=model.format(lhs),
        rhs_text=model.format(rhs),
        difference_text=model.format(diff),
        transcript=transcript,
        classes={name: model.format(v) for name, v in cls.items()},
        omitted=omit,
    )


def mso3_mod3_degree_dims(d_max: int) -> list[tuple[int, int]]:
    """Dimensions of H~^d(MSO_3; Z/3) = (t * Z/3[p_1])_d for 0 <= d <= d_max.

    deg t = 3 and deg p_1 = 4, so degree d is hit once when d = 3 + 4s.
    """
    if d_max < 3:
        raise ValueError(f"d_max must be at least 3, got {d_max}")
    return [(d, 1 if d >= 3 and (d - 3) % 4 == 0 else 0) for d in range(d_max + 1)]


def mso3_mod3_dim(d: int) -> int:
    return dict(mso3_mod3_degree_dims(max(d, 3)))[d] if d >= 0 else 0

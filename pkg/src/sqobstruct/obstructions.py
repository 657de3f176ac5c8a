"""Decision procedures for embedding and immersion obstructions over
finite presentations, and the mod 2 double-point ledger.

Every certificate (NotEmbedded, NotImmersed, Immersed) rests only on data
the presentation states or the axioms force; anything unknown yields
Inconclusive with the missing datum named.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .presentation import AlgebraPresentation, MissingData, PresentedClass
from .steenrod import SqWord, excess, parse_word
from .thom import mso3_mod3_dim

DEFAULT_CAP = 2 ** 20


class PreconditionError(ValueError):
    pass


class SearchCapExceeded(RuntimeError):
    pass


class Outcome(enum.Enum):
    NOT_EMBEDDED = "NotEmbedded"
    NOT_IMMERSED = "NotImmersed"
    IMMERSED = "Immersed"
    INCONCLUSIVE = "Inconclusive"

    @property
    def is_certificate(self) -> bool:
        return self is not Outcome.INCONCLUSIVE

    def __str__(self) -> str:
        return self.value


@dataclass
class Verdict:
    outcome: Outcome
    witness: dict[str, Any] = field(default_factory=dict)
    trail: list[str] = field(default_factory=list)
    missing: str | None = None

    @property
    def is_certificate(self) -> bool:
        return self.outcome.is_certificate


def _missing(trail: list[str], err: MissingData) -> Verdict:
    trail.append(f"missing data: {err}")
    return Verdict(Outcome.INCONCLUSIVE, trail=trail, missing=str(err))


def _to_int(coeffs) -> int:
    return sum(1 << i for i, c in enumerate(coeffs) if c)


def _require_degree(x: PresentedClass, degree: int, what: str):
    if x.degree != degree:
        raise PreconditionError(f"{what} needs a class of degree {degree}, got degree {x.degree}")


# --- codimension 11 -----------------------------------------------------------

_LHS_OPS = {
    "alpha": (20, [(4,), (3, 1)]),
    "beta": (19, [(5,)]),
    "gamma": (16, [(8,), (7, 1), (6, 2)]),
    "delta": (15, [(9,)]),
}


def check_theorem_c(a: AlgebraPresentation, x: PresentedClass,
                    cap: int = DEFAULT_CAP, name: str = "x") -> Verdict:
    """Search for classes alpha, beta, gamma, delta with

        (Sq4 + Sq3Sq1) alpha + Sq5 beta + (Sq8 + Sq7Sq1 + Sq6Sq2) gamma + Sq9 delta
            = x Sq2 x + Sq11 Sq2 x

    in H^24(N; F2), beta and delta ranging over the reductions of integral
    classes.  No solution means x is not dual to an embedded class.
    """
    if a.prime != 2:
        raise PreconditionError(f"check_theorem_c needs a mod 2 presentation, got p={a.prime}")
    _require_degree(x, 11, "check_theorem_c")
    trail = [f"x = {a.format_class(x)} in H^11"]
    fmt24 = a.format_class
    try:
        sq2x = a.apply("Sq2", x)
        rhs = a.add(a.cup(x, sq2x), a.apply_word((11, 2), x))
    except MissingData as e:
        return _missing(trail, e)
    trail.append(f"Sq2 x = {a.format_class(sq2x)}")
    trail.append(f"x Sq2 x + Sq11 Sq2 x = {fmt24(rhs)}")

    # candidate spaces: (slot, basis vectors of the search space, image columns)
    slots = []
    try:
        for slot, (deg, words) in _LHS_OPS.items():
            if slot in ("beta", "delta"):
                space = list(a.rho_basis(deg))
                where = f"rho_image({deg})"
            else:
                n = a.dimension(deg)
                space = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
                where = f"H^{deg}"
            cols = []
            for vec in space:
                c = PresentedClass(deg, vec)
                img = a.zero(24)
                for w in words:
                    img = a.add(img, a.apply_word(w, c))
                cols.append(img.coeffs)
            slots.append((slot, deg, space, cols))
            trail.append(f"{slot} ranges over {where}, dimension {len(space)}")
    except MissingData as e:
        return _missing(trail, e)

    total = sum(len(s[2]) for s in slots)
    if 2 ** total > cap:
        raise SearchCapExceeded(
            f"2^{total} candidate tuples exceed the search cap {cap}")

    flat = [(slot, deg, vec, col) for slot, deg, space, cols in slots
            for vec, col in zip(space, cols)]
    bits = [_to_int(col) for _, _, _, col in flat]
    target = _to_int(rhs.coeffs)
    # images[m] = LHS of candidate m, built from m with its lowest bit cleared
    images = [0] * (2 ** total)
    found = 0 if target == 0 else None
    for mask in range(1, 2 ** total if found is None else 0):
        low = mask & -mask
        images[mask] = images[mask ^ low] ^ bits[low.bit_length() - 1]
        if images[mask] == target:
            found = mask
            break
    trail.append(f"searched {2 ** total if found is None else found + 1} of {2 ** total} tuples")

    if found is None:
        trail.append("no tuple satisfies the equation")
        return Verdict(Outcome.NOT_EMBEDDED, witness={"rhs": fmt24(rhs)}, trail=trail)

    assignment: dict[str, str] = {}
    for slot, deg, _, _ in slots:
        coeffs = [0] * a.dimension(deg)
        for bit, (s, _, vec, _) in enumerate(flat):
            if s == slot and found >> bit & 1:
                coeffs = [(u + v) % 2 for u, v in zip(coeffs, vec)]
        assignment[slot] = a.format_class(PresentedClass(deg, tuple(coeffs)))
    trail.append("satisfying tuple: " + ", ".join(f"{k} = {v}" for k, v in assignment.items()))

    # beta' never enters the mod 2 equation; it is an existence side condition
    p2 = a.fact(f"P2_3_{name}_nonzero")
    if p2 is True:
        if not a.rho_known(19):
            trail.append("beta' clause: rho_image(19) unknown")
        elif a.rho_basis(19) or a.fact("H19_torsion_free") is not True:
            trail.append("beta' clause: not refuted by the data")
        else:
            trail.append("beta' clause fails: P2_3 x != 0 needs beta' != 0, "
                         "but H^19(N) is torsion free with zero mod 2 reduction")
            return Verdict(Outcome.NOT_EMBEDDED,
                           witness={"rhs": fmt24(rhs), "beta_prime": "required but absent"},
                           trail=trail)
    else:
        trail.append("beta' clause vacuous (no mod 3 fact asserts P2_3 x != 0)")
    return Verdict(Outcome.INCONCLUSIVE, witness=assignment, trail=trail)


# --- codimension 3, mod 3 ----------------------------------------------------


def check_bhk_codim3(a: AlgebraPresentation, x: PresentedClass) -> Verdict:
    """x P^1 x must vanish for x dual to an embedded codimension-3 class."""
    if a.prime != 3:
        raise PreconditionError(f"check_bhk_codim3 needs a mod 3 presentation, got p={a.prime}")
    _require_degree(x, 3, "check_bhk_codim3")
    trail = [f"x = {a.format_class(x)} in H^3(-; Z/3)"]
    try:
        p1x = a.apply("P1", x)
    except MissingData as e:
        return _missing(trail, e)
    prod = a.cup(x, p1x)
    trail.append(f"P1 x = {a.format_class(p1x)}")
    trail.append(f"x P1 x = {a.format_class(prod)} in H^10")
    dim10 = mso3_mod3_dim(10)
    trail.append(f"dim H~^10(MSO_3; Z/3) = {dim10}")
    assert dim10 == 0
    if prod.is_zero():
        return Verdict(Outcome.INCONCLUSIVE, witness={"x_P1x": "0"}, trail=trail)
    witness = {"x_P1x": a.format_class(prod)}
    if a.fundamental is not None and prod.degree == a.dim:
        witness["pairing"] = str(a.evaluate(prod))
        trail.append(f"<x P1 x, [N]> = {witness['pairing']}")
    trail.append("x P1 x != 0 although the Thom class satisfies t P1 t = 0")
    return Verdict(Outcome.NOT_EMBEDDED, witness=witness, trail=trail)


# --- excess-k immersion obstruction -------------------------------------------


def check_gsz_immersion(a: AlgebraPresentation, x: PresentedClass,
                        seq: SqWord | str) -> Verdict:
    """If x is dual to an immersed class then Sq^I x lifts to an integral class
    whenever I has excess equal to deg x."""
    if isinstance(seq, str):
        seq = parse_word(seq)
    k = x.degree
    if a.prime != 2:
        raise PreconditionError(f"check_gsz_immersion needs a mod 2 presentation, got p={a.prime}")
    if k <= 1:
        raise PreconditionError(f"class degree must exceed 1, got {k}")
    if not seq.is_admissible:
        raise PreconditionError(f"{seq} is not admissible")
    if excess(seq) != k:
        raise PreconditionError(f"excess({seq}) = {excess(seq)} but deg x = {k}")
    trail = [f"x = {a.format_class(x)} in H^{k}", f"I = {seq}, excess {k}"]
    try:
        y = a.apply_word(seq.indices, x)
    except MissingData as e:
        return _missing(trail, e)
    trail.append(f"Sq^I x = {a.format_class(y)} in H^{y.degree}")
    if y.is_zero():
        trail.append("Sq^I x = 0 is an integral reduction")
        return Verdict(Outcome.INCONCLUSIVE, witness={"sq_I_x": "0"}, trail=trail)
    try:
        lifts = a.rho_contains(y)
    except MissingData as e:
        return _missing(trail, e)
    if lifts:
        trail.append(f"Sq^I x lies in rho_image({y.degree})")
        return Verdict(Outcome.INCONCLUSIVE, witness={"sq_I_x": a.format_class(y)}, trail=trail)
    trail.append(f"Sq^I x is not in rho_image({y.degree}): beta_2 Sq^I x != 0")
    return Verdict(Outcome.NOT_IMMERSED, witness={"sq_I_x": a.format_class(y)}, trail=trail)


# --- immersion criterion in dimension 24 ----------------------------------------

KQ_FACTS = ("betaP1_3_{}_vanishes", "betaP2_3_{}_vanishes", "betaP1_5_{}_vanishes")


def check_prop_kq(a: AlgebraPresentation, x: PresentedClass, name: str = "x") -> Verdict:
    """All three odd-primary Bocksteins of x vanish => x is dual to an immersed class."""
    if a.dim != 24:
        raise PreconditionError(f"check_prop_kq needs a 24-manifold, got dim {a.dim}")
    _require_degree(x, 11, "check_prop_kq")
    trail = []
    unknown = []
    settled = True
    for template in KQ_FACTS:
        key = template.format(name)
        val = a.fact(key)
        trail.append(f"{key} = {'unknown' if val is None else str(val).lower()}")
        if val is None:
            unknown.append(key)
        settled = settled and val is True
    if not settled:
        trail.append("criterion is one-directional; no conclusion")
        return Verdict(Outcome.INCONCLUSIVE, trail=trail,
                       missing=", ".join(unknown) or None)
    trail.append("all three vanish: the odd k-invariant obstructions are zero")
    return Verdict(Outcome.IMMERSED, witness={f.format(name): "true" for f in KQ_FACTS},
                   trail=trail)


# --- Whitney's formula mod 2 ---------------------------------------------------


def whitney_m2_mod2(a: AlgebraPresentation, f_star_x: PresentedClass,
                    wk_nu: PresentedClass) -> PresentedClass:
    """rho_2 m_2(f) = f^*x + w_k(nu_f), from f^*x = e(nu_f) + m_2(f)."""
    if a.prime != 2:
        raise PreconditionError("whitney_m2_mod2 works with a mod 2 presentation")
    if f_star_x.degree != wk_nu.degree:
        raise PreconditionError(
            f"degree mismatch: f*x has degree {f_star_x.degree}, w_k(nu) {wk_nu.degree}")
    return a.add(f_star_x, wk_nu)


def whitney_notes(k: int) -> list[str]:
    notes = ["rho_2 e(nu_f) = w_k(nu_f), so rho_2 m_2(f) = f^*x + w_k(nu_f)"]
    if k % 2:
        notes.append(f"rank {k} is odd: e(nu_f) = -e(nu_f), so 2 e(nu_f) = 0")
    return notes

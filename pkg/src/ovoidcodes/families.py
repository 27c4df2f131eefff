"""Named code families and parameter selection used by the CLI and reports."""
from __future__ import annotations

from .codes import LinearCode
from .field import (ExtField, IRREDUCIBLE, REDUCIBLE_DISTINCT, FieldError, a_values_by_class,
                    make_field, quarter)
from .geometry import elliptic_quadric, generator_from_points, tits_ovoid
from .subfield import subfield_code

A_CLASS_CHOICES = ("irreducible", "reducible", "quarter")


def pick_a(F: ExtField, a_class: str = "irreducible") -> int:
    """Least element of the requested class; 'reducible' excludes 1/4."""
    classes = a_values_by_class(F)
    if a_class == "irreducible":
        return classes[IRREDUCIBLE][0]
    if a_class == "reducible":
        if not classes[REDUCIBLE_DISTINCT]:
            raise FieldError(f"GF({F.q}) has no reducible a other than 1/4")
        return classes[REDUCIBLE_DISTINCT][0]
    if a_class == "quarter":
        if F.p == 2:
            raise FieldError("1/4 does not exist in characteristic 2")
        return quarter(F)
    raise ValueError(f"unknown a class {a_class!r}")


def elliptic_code(F: ExtField, a: int) -> LinearCode:
    return LinearCode(generator_from_points(elliptic_quadric(F, a)), name=f"elliptic(q={F.q}, a={a})")


def tits_code(F: ExtField) -> LinearCode:
    return LinearCode(generator_from_points(tits_ovoid(F)), name=f"tits(q={F.q})")


def tits_field(e: int) -> ExtField:
    if e < 1:
        raise FieldError("Tits ovoid needs e >= 1")
    return make_field(2, 2 * e + 1)


def elliptic_subfield_code(p: int, m: int, a: int | None = None, a_class: str = "irreducible") -> LinearCode:
    F = make_field(p, m)
    if a is None:
        a = pick_a(F, a_class)
    return subfield_code(elliptic_code(F, a))


def tits_subfield_code(e: int) -> LinearCode:
    return subfield_code(tits_code(tits_field(e)))

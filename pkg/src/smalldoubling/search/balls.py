"""Balls of bounded word length in a finitely generated ordered group."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import BallCapExceeded, PreconditionError
from ..groups import group_from_json
from ..products import sort_elements

__all__ = ["BallSpec", "ball", "DEFAULT_CAP"]

DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class BallSpec:
    """Products of at most ``radius`` letters.

    Letters are the generators and their inverses; with ``positive=True``
    only the generators themselves are used (a monoid ball), which keeps
    non-abelian balls small enough for exhaustive subset searches.
    """

    spec: object
    generators: tuple
    radius: int
    cap: int = DEFAULT_CAP
    positive: bool = False

    def __post_init__(self):
        if self.radius < 1:
            raise PreconditionError("ball radius must be >= 1")
        if not self.generators:
            raise PreconditionError("a ball needs at least one generator")
        for g in self.generators:
            self.spec.check(g)

    @classmethod
    def standard(cls, spec, radius, **kw):
        return cls(spec, tuple(spec.standard_generators()), radius, **kw)

    def to_json(self):
        return {
            "group": self.spec.to_json(),
            "generators": [self.spec.element_to_json(g) for g in self.generators],
            "radius": self.radius,
            "cap": self.cap,
            "positive": self.positive,
        }

    @classmethod
    def from_json(cls, obj):
        spec = group_from_json(obj["group"])
        if "generators" in obj:
            gens = tuple(spec.element_from_json(g) for g in obj["generators"])
        else:
            gens = tuple(spec.standard_generators())
        return cls(
            spec,
            gens,
            int(obj["radius"]),
            int(obj.get("cap", DEFAULT_CAP)),
            bool(obj.get("positive", False)),
        )


def ball(bs):
    """All products of at most ``bs.radius`` letters, sorted ascending.

    Raises :class:`BallCapExceeded` as soon as more than ``bs.cap`` distinct
    elements have been produced.
    """
    spec = bs.spec
    letters = list(bs.generators)
    if not bs.positive:
        letters += [spec.inv(g) for g in bs.generators]
    seen = {spec.identity()}
    frontier = [spec.identity()]
    for _ in range(bs.radius):
        nxt = []
        for x in frontier:
            for g in letters:
                y = spec.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bs.cap:
                        raise BallCapExceeded(
                            f"ball of radius {bs.radius} exceeds {bs.cap} elements; "
                            "shrink the radius or raise the cap"
                        )
        frontier = nxt
    return sort_elements(spec, seen)

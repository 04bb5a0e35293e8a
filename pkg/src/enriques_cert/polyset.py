"""The twelve input forms p_i, q_i, r_i, s_i and their (de)serialization."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass

from .fields import QQ, GF
from .multipoly import FRAME_STXY, MultiPoly, Frame

TRIDEGREES = {
    "p": (1, 2, 0),
    "q": (0, 0, 2),
    "r": (2, 2, 0),
    "s": (2, 0, 2),
}
FAMILIES = ("p", "q", "r", "s")


@dataclass(frozen=True)
class PolySet:
    p: tuple
    q: tuple
    r: tuple
    s: tuple
    field: object = QQ

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in FAMILIES:
            polys = getattr(self, name)
            if len(polys) != 3:
                raise ValueError(f"{name} needs 3 polynomials, got {len(polys)}")
            for i, f in enumerate(polys):
                if f.frame != FRAME_STXY:
                    raise ValueError(f"{name}{i} is not in the (s,t|x|y) frame")
                if f.field != self.field:
                    raise ValueError(f"{name}{i} lives over {f.field!r}, expected {self.field!r}")
                f.assert_multidegree(TRIDEGREES[name])

    def family(self, name):
        return getattr(self, name)

    @classmethod
    def random(cls, seed: int, height: int = 9, field=QQ) -> "PolySet":
        rng = random.Random(seed)
        fams = {}
        for name in FAMILIES:
            fams[name] = tuple(MultiPoly.random(field, FRAME_STXY, TRIDEGREES[name], rng, height) for _ in range(3))
        return cls(field=field, **fams)

    def replace(self, **kw) -> "PolySet":
        fams = {name: kw.get(name, getattr(self, name)) for name in FAMILIES}
        return PolySet(field=kw.get("field", self.field), **fams)

    def reduce_mod(self, p: int) -> "PolySet":
        fams = {name: tuple(f.reduce_mod(p) for f in getattr(self, name)) for name in FAMILIES}
        return PolySet(field=GF(p), **fams)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": "Q" if self.field.characteristic == 0 else f"F{self.field.characteristic}",
            "frame": [list(b) for b in FRAME_STXY.blocks],
            **{name: [f.to_json()["terms"] for f in getattr(self, name)] for name in FAMILIES},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolySet":
        fld = data.get("field", "Q")
        field = QQ if fld in ("Q", "QQ") else GF(int(str(fld).lstrip("F")))
        frame = Frame(data.get("frame", [list(b) for b in FRAME_STXY.blocks]))
        if frame != FRAME_STXY:
            raise ValueError(f"unsupported frame {frame}")
        fams = {}
        for name in FAMILIES:
            if name not in data:
                raise ValueError(f"missing family {name!r}")
            polys = []
            for i, terms in enumerate(data[name]):
                f = MultiPoly.from_json({"frame": frame.blocks, "terms": terms}, field)
                polys.append(f.with_declared(TRIDEGREES[name]))
            fams[name] = tuple(polys)
        return cls(field=field, **fams)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def load(cls, path) -> "PolySet":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]

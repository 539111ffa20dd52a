"""Tunable caps shared across modules."""

import json
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Caps:
    precision_cap_bits: int = 4096
    max_box_cells: int = 10**8
    max_terms: int = 12
    relation_bound: int = 20
    max_degree: int = 24
    max_evertse_tuples: int = 10**7
    default_tolerance: float = 2.0**-40

    def with_overrides(self, **kw):
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown cap(s): {sorted(unknown)}")
        return cls(**data)


DEFAULT_CAPS = Caps()

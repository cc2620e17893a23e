# Author: RD7
# Purpose: pydantic schema of model files
# Created: 2025-10-14

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

__all__ = ["ModelFile", "EXPECTATIONS"]

EXPECTATIONS = ("hyperkahler", "hkt", "balanced_hkt", "qkt")


class ModelFile(BaseModel):
    """
    On-disk model: sparse brackets on the basis e_0..e_{dim-1}, J1 and J2 as
    dense matrices with J e_col = sum_row J[row][col] e_row, optional Gram matrix.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    dim: int = Field(gt=0)
    brackets: list[tuple[int, int, int, float]] = Field(default_factory=list)
    J1: list[list[float]]
    J2: list[list[float]]
    metric: list[list[float]] | None = None
    description: str = ""
    expect: Literal["hyperkahler", "hkt", "balanced_hkt", "qkt"] | None = None

    @field_validator("dim")
    @classmethod
    def _quaternionic_dim(cls, v: int) -> int:
        if v % 4:
            raise ValueError(f"dim must be divisible by 4, got {v}")
        return v

    @model_validator(mode="after")
    def _shapes_and_indices(self) -> ModelFile:
        d = self.dim
        for field_name in ("J1", "J2", "metric"):
            m = getattr(self, field_name)
            if m is not None and (len(m) != d or any(len(row) != d for row in m)):
                raise ValueError(f"{field_name} must be a {d}x{d} matrix")

        seen: dict[tuple[int, int, int], float] = {}
        for i, j, k, value in self.brackets:
            if not all(0 <= idx < d for idx in (i, j, k)):
                raise ValueError(f"bracket index out of range in ({i}, {j}, {k})")
            if i == j and value != 0:
                raise ValueError(f"bracket [e_{i}, e_{i}] must vanish, got e_{k} component {value}")
            if (i, j, k) in seen:
                raise ValueError(f"bracket entry ({i}, {j}, {k}) listed twice: {seen[(i, j, k)]} and {value}")
            # an entry and its transpose must be opposite when both are given
            if (j, i, k) in seen and seen[(j, i, k)] != -value:
                raise ValueError(f"brackets not antisymmetric at ({i}, {j}): e_{k} components {seen[(j, i, k)]} and {value}")
            seen[(i, j, k)] = value
        return self

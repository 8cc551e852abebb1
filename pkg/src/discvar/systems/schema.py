"""Pydantic models for system descriptions and externally supplied components.

A system reaches the pipeline either as the line-oriented text format read by
``discvar.systems.parser`` or as a JSON/YAML document with the same four keys.
Both routes validate names through ``SystemFile`` before any expression is parsed.
"""

from __future__ import annotations

import re

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _check_identifiers(names: list[str]) -> list[str]:
    for name in names:
        if not IDENTIFIER.fullmatch(name):
            raise ValueError(f"invalid identifier {name!r}")
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate names in {names}")
    return names


class SystemFile(BaseModel):
    """Serialized parametric system.

    Attributes:
        parameters: Names of the parameters U, in declaration order.
        variables: Names of the unknowns X, in declaration order.
        equations: Expressions of the equalities E (each ``= 0``).
        inequations: Expressions of the inequations F (each ``!= 0``).
    """

    parameters: list[str] = Field(default_factory=list, description="Parameter names U.")
    variables: list[str] = Field(default_factory=list, description="Unknown names X.")
    equations: list[str] = Field(default_factory=list, description="Equality expressions.")
    inequations: list[str] = Field(default_factory=list, description="Inequation expressions.")

    model_config = ConfigDict(
        extra="forbid",
        json_schema_extra={
            "examples": [
                {
                    "parameters": ["r", "a"],
                    "variables": ["x", "y"],
                    "equations": ["a*x^2*y + 5*a*y^3 - r^3", "a - r^2"],
                    "inequations": ["r"],
                }
            ]
        },
    )

    @field_validator("parameters", "variables")
    @classmethod
    def validate_names(cls, v: list[str]) -> list[str]:
        return _check_identifiers(v)

    @model_validator(mode="after")
    def names_disjoint(self) -> "SystemFile":
        shared = sorted(set(self.parameters) & set(self.variables))
        if shared:
            raise ValueError(f"names declared both as parameter and variable: {shared}")
        return self


class ComponentFile(BaseModel):
    """A component supplied from outside, e.g. a known W_sd.

    Generators must be polynomials in the parameters only.
    """

    generators: list[str] = Field(..., min_length=1, description="Generator expressions over U.")

    model_config = ConfigDict(extra="forbid")

"""Pydantic request/response models for the HTTP service.

Integers arrive as JSON numbers or as decimal strings (report values can
exceed 64 bits, so clients are encouraged to send strings); responses
always carry integers as decimal strings.
"""

from __future__ import annotations

from typing import Annotated, Any, Literal, Optional

from pydantic import BaseModel, BeforeValidator, Field


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value.strip(), 10)
    raise ValueError(f"expected an integer or decimal string, got {type(value).__name__}")


BigInt = Annotated[int, BeforeValidator(_as_int)]


class PellRequest(BaseModel):
    d: BigInt
    m: BigInt


class BcnsRequest(BaseModel):
    t: BigInt


class FamilyRequest(BaseModel):
    family: Literal["A", "B"]
    bound: BigInt = 5


class BeauvilleRequest(BaseModel):
    n: BigInt


class Theorem2Request(BaseModel):
    n: BigInt


class LatticeInfoRequest(BaseModel):
    name: Optional[str] = None
    gram: Optional[list[list[BigInt]]] = None


class VerifyAllRequest(BaseModel):
    n_max: BigInt = 5
    k_max: BigInt = 2
    sn_max: BigInt = 8
    seed: BigInt = 0
    coeff_bound: Optional[BigInt] = None


class CheckModel(BaseModel):
    name: str
    status: Literal["pass", "fail", "discrepancy"]
    detail: str


class ReportModel(BaseModel):
    command: str
    inputs: dict[str, str]
    results: dict[str, Any]
    checks: list[CheckModel] = Field(default_factory=list)


class HealthModel(BaseModel):
    status: str
    version: str

"""
SKEWAID - File Schemas
Pydantic models for every JSON format. Rationals are strings "p/q" or "p";
integers are accepted on input and normalized.
"""

from typing import Annotated, List, Literal, Optional

from pydantic import BaseModel, BeforeValidator, model_validator

from algebra.exact_arith import rat, rat_str


def _rat_string(value) -> str:
    if isinstance(value, float):
        raise ValueError("floats are not accepted; write rationals as \"p/q\" strings")
    return rat_str(rat(value))


RatStr = Annotated[str, BeforeValidator(_rat_string)]


# ===========================================
# Pencils and invariants
# ===========================================


class PencilModel(BaseModel):
    n: int
    A: List[List[RatStr]]
    B: List[List[RatStr]]

    @model_validator(mode="after")
    def _shape(self):
        for name, rows in (("A", self.A), ("B", self.B)):
            if len(rows) != self.n or any(len(row) != self.n for row in rows):
                raise ValueError(f"{name} must be {self.n} x {self.n}")
        return self


class PairModel(BaseModel):
    type: Literal["inf", "finite", "quad"]
    alpha: Optional[RatStr] = None
    modulus: Optional[List[RatStr]] = None  # lowest degree first: [v, u, 1]
    exp: int


class InvariantsModel(BaseModel):
    n: int
    pairs: List[PairModel]
    minimal_indices: List[int]


class SmithModel(BaseModel):
    n: int
    diagonal: List[str]
    coefficients: List[List[RatStr]]  # lowest degree first
    factors: List[List[str]]  # prime powers of each entry


# ===========================================
# Canonical specs
# ===========================================


class BlockModel(BaseModel):
    kind: Literal["inf", "finite", "complex", "companion", "minidx"]
    e: Optional[int] = None
    f: Optional[int] = None
    m: Optional[int] = None
    alpha: Optional[RatStr] = None
    a: Optional[RatStr] = None
    b: Optional[RatStr] = None
    modulus: Optional[List[RatStr]] = None
    eps: Optional[int] = None


class CanonicalSpecModel(BaseModel):
    blocks: List[BlockModel]


class SweepModel(BaseModel):
    specs: List[CanonicalSpecModel]


# ===========================================
# Algebras
# ===========================================


class BracketModel(BaseModel):
    i: int
    j: int
    y1: RatStr = "0"
    y2: RatStr = "0"


class AlgebraModel(BaseModel):
    pencil: Optional[PencilModel] = None
    dim_x: Optional[int] = None
    brackets: Optional[List[BracketModel]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.pencil is None) == (self.brackets is None):
            raise ValueError("give either 'pencil' or 'dim_x' with 'brackets'")
        if self.brackets is not None and self.dim_x is None:
            raise ValueError("'brackets' needs 'dim_x'")
        return self


# ===========================================
# Results
# ===========================================


class DerivationModel(BaseModel):
    d1: List[RatStr]
    d2: List[RatStr]


class AidResultModel(BaseModel):
    mode: Literal["real", "closed"]
    dim_inn: int
    dim_c: int
    dim_aid: int
    aid_basis: List[DerivationModel]


class DimsModel(BaseModel):
    dim_inn: int
    dim_aid: int


class FormulaModel(BaseModel):
    mode: Literal["real", "closed"]
    dim_inn: int
    dim_aid: int


class CrossCheckModel(BaseModel):
    label: str = ""
    mode: Literal["real", "closed"]
    n: int
    formula: DimsModel
    solver: DimsModel
    agree: bool
    invariants: InvariantsModel


class CongruentModel(BaseModel):
    congruent: bool
    n: List[int]


class CorpusRowModel(BaseModel):
    case: str
    group: str
    n: int
    dim_inn: int
    dim_aid_formula: int
    dim_aid_solver: int
    agree: bool
    notes: List[str] = []


class CorpusSummaryModel(BaseModel):
    mode: Literal["real", "closed"]
    rows: List[CorpusRowModel]
    all_agree: bool

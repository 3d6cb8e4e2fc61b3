"""
SKEWAID - Codec
Conversion between the pydantic file models and the algebra objects,
plus JSON loading with input-kind detection.
"""

import json
from pathlib import Path

from pydantic import BaseModel

from algebra.aid_solver import AidResult, CrossCheck
from algebra.canonical_forms import BlockSpec, CanonicalSpec, build_spec
from algebra.errors import InvalidSpec
from algebra.exact_arith import factor_low_degree, poly_coeffs, poly_str, rat_str
from algebra.genus2_lie import Genus2Algebra, algebra_from_brackets, algebra_from_pencil
from algebra.pencil_invariants import ElementaryDivisor, Pencil, PencilInvariants
from formats.schemas import (
    AidResultModel,
    AlgebraModel,
    BlockModel,
    CanonicalSpecModel,
    CrossCheckModel,
    DerivationModel,
    DimsModel,
    InvariantsModel,
    PairModel,
    PencilModel,
    SmithModel,
    SweepModel,
)


def dump(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


# ===========================================
# Pencils
# ===========================================


def pencil_to_model(p: Pencil) -> PencilModel:
    return PencilModel(
        n=p.n,
        A=[[rat_str(x) for x in row] for row in p.A.to_list()],
        B=[[rat_str(x) for x in row] for row in p.B.to_list()],
    )


def pencil_from_model(model: PencilModel) -> Pencil:
    return Pencil.from_rows(model.A, model.B)


def _prime_powers(d) -> list:
    if not d or d.degree() < 1:
        return []
    return [poly_str(f) if e == 1 else f"({poly_str(f)})^{e}" for f, e in factor_low_degree(d)]


def smith_to_model(n: int, diagonal: list) -> SmithModel:
    return SmithModel(
        n=n,
        diagonal=[poly_str(d) for d in diagonal],
        coefficients=[[rat_str(c) for c in poly_coeffs(d)] for d in diagonal],
        factors=[_prime_powers(d) for d in diagonal],
    )


# ===========================================
# Invariants
# ===========================================


def _pair_to_model(d: ElementaryDivisor) -> PairModel:
    if d.kind == "inf":
        return PairModel(type="inf", exp=d.exponent)
    if d.kind == "finite":
        return PairModel(type="finite", alpha=rat_str(d.alpha), exp=d.exponent)
    return PairModel(type="quad", modulus=[rat_str(c) for c in d.modulus], exp=d.exponent)


def _pair_from_model(model: PairModel) -> ElementaryDivisor:
    if model.type == "inf":
        return ElementaryDivisor.infinite(model.exp)
    if model.type == "finite":
        if model.alpha is None:
            raise ValueError("finite pair needs 'alpha'")
        return ElementaryDivisor.finite(model.alpha, model.exp)
    if model.modulus is None:
        raise ValueError("quad pair needs 'modulus'")
    return ElementaryDivisor.quadratic(list(model.modulus), model.exp)


def invariants_to_model(inv: PencilInvariants) -> InvariantsModel:
    return InvariantsModel(
        n=inv.n,
        pairs=[_pair_to_model(d) for d in inv.divisor_pairs],
        minimal_indices=list(inv.minimal_indices),
    )


def invariants_from_model(model: InvariantsModel) -> PencilInvariants:
    return PencilInvariants.build(
        model.n, [_pair_from_model(p) for p in model.pairs], model.minimal_indices
    )


# ===========================================
# Canonical specs
# ===========================================


def _required(value, name: str, kind: str):
    if value is None:
        raise InvalidSpec(f"{kind} block needs '{name}'")
    return value


def _block_from_model(model: BlockModel) -> BlockSpec:
    kind = model.kind
    if kind == "inf":
        return BlockSpec.inf(_required(model.e, "e", kind))
    if kind == "finite":
        return BlockSpec.finite(_required(model.alpha, "alpha", kind), _required(model.f, "f", kind))
    if kind == "complex":
        return BlockSpec.complex(
            _required(model.a, "a", kind), _required(model.b, "b", kind), _required(model.m, "m", kind)
        )
    if kind == "companion":
        return BlockSpec.companion(list(_required(model.modulus, "modulus", kind)), _required(model.m, "m", kind))
    return BlockSpec.minidx(_required(model.eps, "eps", kind))


def _block_to_model(block: BlockSpec) -> BlockModel:
    if block.kind == "inf":
        return BlockModel(kind="inf", e=block.exponent)
    if block.kind == "finite":
        return BlockModel(kind="finite", alpha=rat_str(block.alpha), f=block.exponent)
    if block.kind == "complex":
        return BlockModel(kind="complex", a=rat_str(block.a), b=rat_str(block.b), m=block.exponent)
    if block.kind == "companion":
        return BlockModel(kind="companion", modulus=[rat_str(c) for c in block.modulus], m=block.exponent)
    return BlockModel(kind="minidx", eps=block.epsilon)


def spec_from_model(model: CanonicalSpecModel) -> CanonicalSpec:
    return CanonicalSpec(tuple(_block_from_model(b) for b in model.blocks))


def spec_to_model(spec: CanonicalSpec) -> CanonicalSpecModel:
    return CanonicalSpecModel(blocks=[_block_to_model(b) for b in spec.blocks])


# ===========================================
# Algebras and results
# ===========================================


def algebra_from_model(model: AlgebraModel, allow_degenerate: bool = False) -> Genus2Algebra:
    if model.pencil is not None:
        return algebra_from_pencil(pencil_from_model(model.pencil), allow_degenerate)
    brackets = [(b.i, b.j, b.y1, b.y2) for b in model.brackets]
    return algebra_from_brackets(model.dim_x, brackets, allow_degenerate)


def aid_result_to_model(result: AidResult) -> AidResultModel:
    return AidResultModel(
        mode=result.mode.value,
        dim_inn=result.dim_inn,
        dim_c=result.dim_c,
        dim_aid=result.dim_aid,
        aid_basis=[
            DerivationModel(d1=[rat_str(x) for x in D.d1], d2=[rat_str(x) for x in D.d2])
            for D in result.aid_basis.basis
        ],
    )


def cross_check_to_model(check: CrossCheck, label: str = "") -> CrossCheckModel:
    return CrossCheckModel(
        label=label,
        mode=check.mode.value,
        n=check.n,
        formula=DimsModel(dim_inn=check.formula[0], dim_aid=check.formula[1]),
        solver=DimsModel(dim_inn=check.solver[0], dim_aid=check.solver[1]),
        agree=check.agree,
        invariants=invariants_to_model(check.invariants),
    )


# ===========================================
# Files
# ===========================================

INPUT_KINDS = {
    "A": ("pencil", PencilModel),
    "pairs": ("invariants", InvariantsModel),
    "blocks": ("spec", CanonicalSpecModel),
    "specs": ("sweep", SweepModel),
    "brackets": ("algebra", AlgebraModel),
    "pencil": ("algebra", AlgebraModel),
}


def load_json(path) -> dict:
    with open(Path(path), "r", encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def parse_input(data: dict):
    """(kind, model) for a decoded JSON object, detected by its keys."""
    for key, (kind, model_cls) in INPUT_KINDS.items():
        if key in data:
            return kind, model_cls.model_validate(data)
    raise ValueError(f"unrecognized input: keys {sorted(data)}")


def load_input(path):
    return parse_input(load_json(path))


def to_pencil(kind: str, model) -> Pencil:
    """A pencil from pencil, algebra or spec input."""
    if kind == "pencil":
        return pencil_from_model(model)
    if kind == "algebra":
        return algebra_from_model(model, allow_degenerate=True).pencil
    if kind == "spec":
        return build_spec(spec_from_model(model))
    raise ValueError(f"expected a pencil, algebra or spec file, got {kind}")


def pencils_of(kind: str, model) -> list:
    """(label, pencil) pairs; a sweep yields one per spec."""
    if kind == "sweep":
        out = []
        for spec_model in model.specs:
            spec = spec_from_model(spec_model)
            out.append((spec.label, build_spec(spec)))
        return out
    return [(kind, to_pencil(kind, model))]

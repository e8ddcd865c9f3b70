"""Idempotent monads, comonads and adjunctions on finite categories, and the
tensor/Hom adjunction of a bimodule over a finite-dimensional F_p-algebra."""

from .fincat import (FinAdjunction, FinCategory, FinFunctor, NatTrans, StructureError,
                     validate_adjunction, validate_category, validate_functor)
from .monadics import (FinComonad, FinMonad, build_coem_adjunction, build_em_adjunction,
                       idempotence_battery, idempotence_battery_comonad)
from .adjunctions import fix, idempotent_pair_battery, star_pair_check, verify_equivalence
from .ffla import PrimeField
from .algmod import (Bimodule, FqAlgebra, LeftModule, ModuleMap, are_isomorphic,
                     endomorphism_algebra, enumerate_modules, hom_space, tensor_over)
from .starlab import StarContext, StarVerdict, build_context, star_verdict

__all__ = [
    "FinAdjunction", "FinCategory", "FinFunctor", "NatTrans", "StructureError",
    "validate_adjunction", "validate_category", "validate_functor",
    "FinComonad", "FinMonad", "build_coem_adjunction", "build_em_adjunction",
    "idempotence_battery", "idempotence_battery_comonad",
    "fix", "idempotent_pair_battery", "star_pair_check", "verify_equivalence",
    "PrimeField", "Bimodule", "FqAlgebra", "LeftModule", "ModuleMap", "are_isomorphic",
    "endomorphism_algebra", "enumerate_modules", "hom_space", "tensor_over",
    "StarContext", "StarVerdict", "build_context", "star_verdict",
]

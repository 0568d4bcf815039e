from loguru import logger

from tree_mio.application.trees.split_index import SplitIndex, build_split_index
from tree_mio.domain.ensembles import TreeEnsemble
from tree_mio.domain.exceptions import UnsupportedFormulation
from tree_mio.domain.models import MipModel
from tree_mio.domain.types import FormulationKind

from .base import BaseFormulation
from .bigm import BigMFormulation
from .binary_split import ExpsetFormulation, MisicFormulation, add_elbow
from .union import FacetFormulation, ProjectedFormulation, UnionExtFormulation

FORMULATION_REGISTRY: dict[FormulationKind, type[BaseFormulation]] = {
    FormulationKind.MISIC: MisicFormulation,
    FormulationKind.EXPSET: ExpsetFormulation,
    FormulationKind.UNION_EXT: UnionExtFormulation,
    FormulationKind.PROJECTED: ProjectedFormulation,
    FormulationKind.FACET: FacetFormulation,
    FormulationKind.BIGM: BigMFormulation,
}

ELBOW_BASES = {
    FormulationKind.ELBOW: FormulationKind.MISIC,
    FormulationKind.EXPSET_ELBOW: FormulationKind.EXPSET,
}


class FormulationDispatcher:
    """Routes a formulation kind to its builder."""

    @staticmethod
    def build(
        ensemble: TreeEnsemble,
        kind: FormulationKind | str,
        index: SplitIndex | None = None,
        big_m: float | None = None,
    ) -> MipModel:
        try:
            kind = FormulationKind(kind)
        except ValueError as e:
            raise UnsupportedFormulation(
                f"Unknown formulation '{kind}'. Available: {', '.join(get_available_formulations())}"
            ) from e

        index = index if index is not None else build_split_index(ensemble)
        if kind in ELBOW_BASES:
            base = FORMULATION_REGISTRY[ELBOW_BASES[kind]](ensemble, index).build()
            model = add_elbow(base, ensemble, index)
        elif kind == FormulationKind.BIGM:
            model = BigMFormulation(ensemble, index, big_m=big_m).build()
        else:
            model = FORMULATION_REGISTRY[kind](ensemble, index).build()

        logger.debug(
            f"Built {kind.value}: {model.num_variables} variables, {len(model.constraints)} rows, "
            f"{len(model.binary_ids)} binaries."
        )

        return model


def get_available_formulations() -> list[str]:
    return [kind.value for kind in FormulationKind]


def build_misic(ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    return MisicFormulation(ensemble, index).build()


def build_expset(ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    return ExpsetFormulation(ensemble, index).build()


def build_union_ext(ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    return UnionExtFormulation(ensemble, index).build()


def build_projected(ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    return ProjectedFormulation(ensemble, index).build()


def build_facet(ensemble: TreeEnsemble, index: SplitIndex | None = None) -> MipModel:
    return FacetFormulation(ensemble, index).build()


def build_bigm(ensemble: TreeEnsemble, big_m: float | None = None, index: SplitIndex | None = None) -> MipModel:
    return BigMFormulation(ensemble, index, big_m=big_m).build()


def build_formulation(
    ensemble: TreeEnsemble, kind: FormulationKind | str, index: SplitIndex | None = None, big_m: float | None = None
) -> MipModel:
    return FormulationDispatcher.build(ensemble, kind, index=index, big_m=big_m)

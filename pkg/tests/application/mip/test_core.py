from tree_mio.application.formulations.dispatcher import build_formulation
from tree_mio.application.mip.core import model_stats, relax
from tree_mio.domain.types import FormulationKind


def test_relax_drops_integrality_only(ex3):
    model = build_formulation(ex3.ensemble, FormulationKind.PROJECTED)
    relaxed = relax(model)

    assert model.binary_ids
    assert relaxed.binary_ids == []
    assert [(v.name, v.lower, v.upper) for v in relaxed.variables] == [
        (v.name, v.lower, v.upper) for v in model.variables
    ]
    assert relaxed.constraints == model.constraints


def test_model_stats_exclude_definition_rows(ex3):
    stats = model_stats(build_formulation(ex3.ensemble, FormulationKind.PROJECTED))

    # two trees: def_y_1, def_y_2 and def_y
    assert stats.num_definitions == 3
    assert stats.num_constraints == 2 * (2 * 1 + 1)
    assert stats.num_binaries == 4
    assert "constraints: 6" in stats.to_text()

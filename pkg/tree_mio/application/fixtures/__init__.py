from .cart import train_cart, train_forest
from .paper import (
    PaperFixture,
    ReferencePoint,
    build_fixture_model,
    get_available_fixtures,
    paper_fixture,
    resolve_point,
)
from .synthetic import gen_triangle_data, triangle_reward

__all__ = [
    "PaperFixture",
    "ReferencePoint",
    "build_fixture_model",
    "gen_triangle_data",
    "get_available_fixtures",
    "paper_fixture",
    "resolve_point",
    "train_cart",
    "train_forest",
    "triangle_reward",
]

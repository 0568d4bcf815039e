import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class Dataset(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    X: np.ndarray
    r: np.ndarray
    seed: int | None = None

    @model_validator(mode="after")
    def _check_shapes(self) -> "Dataset":
        if self.X.ndim != 2 or self.r.ndim != 1 or self.X.shape[0] != self.r.shape[0]:
            raise ValueError(f"Incompatible dataset shapes X={self.X.shape} r={self.r.shape}.")

        return self

    @property
    def num_samples(self) -> int:
        return int(self.X.shape[0])

    @property
    def num_features(self) -> int:
        return int(self.X.shape[1])

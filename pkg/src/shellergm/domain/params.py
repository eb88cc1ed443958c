"""Parameter types of the shell-distribution model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Sequence, Tuple, Union


@dataclass(frozen=True)
class ModelParams:
    """Natural parameters ``theta_0 .. theta_{n-2}``.

    ``theta_j = log(p_j / p_{n-1})``; the top shell is the reference category
    and carries no parameter.

    Attributes:
        n: Vertex count
        theta: ``n - 1`` finite reals
    """

    n: int
    theta: Tuple[float, ...]

    def __post_init__(self) -> None:
        """Validate dimensions and finiteness."""
        if self.n < 2:
            raise ValueError(f"the model needs at least 2 vertices, got n={self.n}")
        theta = tuple(float(x) for x in self.theta)
        if len(theta) != self.n - 1:
            raise ValueError(
                f"theta must have n-1={self.n - 1} entries, got {len(theta)}"
            )
        for j, value in enumerate(theta):
            if not math.isfinite(value):
                raise ValueError(f"theta[{j}] is not finite: {value}")
        object.__setattr__(self, "theta", theta)

    @classmethod
    def zeros(cls, n: int) -> "ModelParams":
        """The uniform model: every labeled graph equally likely."""
        return cls(n, (0.0,) * (n - 1))

    @classmethod
    def from_propensities(cls, p: Sequence[float]) -> "ModelParams":
        """Map shell propensities ``p_0 .. p_{n-1}`` to natural parameters.

        Only ratios matter, so ``p`` need not sum to one.

        Raises:
            ValueError: If any propensity is not strictly positive
        """
        values = [float(x) for x in p]
        if any(not (x > 0 and math.isfinite(x)) for x in values):
            raise ValueError(f"propensities must be positive and finite, got {values}")
        reference = values[-1]
        return cls(len(values), tuple(math.log(x / reference) for x in values[:-1]))

    @property
    def p_tilde(self) -> Tuple[float, ...]:
        """``exp(theta)`` with the reference entry ``1.0`` appended."""
        return tuple(math.exp(x) for x in self.theta) + (1.0,)

    def shifted(self, offset: float) -> "ModelParams":
        return ModelParams(self.n, tuple(x + offset for x in self.theta))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "theta": list(self.theta)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ModelParams":
        try:
            return cls(int(data["n"]), tuple(data["theta"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"invalid parameter document: {exc}") from exc


@dataclass(frozen=True)
class SmoothingAlpha:
    """Pseudo-counts added to each shell count by the empirical estimator.

    Attributes:
        alpha: One non-negative value per shell ``0 .. n-1``
    """

    alpha: Tuple[float, ...]

    def __post_init__(self) -> None:
        alpha = tuple(float(a) for a in self.alpha)
        if not alpha:
            raise ValueError("alpha must have at least one entry")
        if any(not (a >= 0 and math.isfinite(a)) for a in alpha):
            raise ValueError(f"alpha entries must be finite and non-negative, got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def broadcast(cls, value: Union[float, Sequence[float]], n: int) -> "SmoothingAlpha":
        """Build from a scalar (repeated ``n`` times) or a full-length vector."""
        if isinstance(value, (int, float)):
            return cls((float(value),) * n)
        values = tuple(value)
        if len(values) != n:
            raise ValueError(f"alpha vector has {len(values)} entries, expected n={n}")
        return cls(values)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def total(self) -> float:
        return math.fsum(self.alpha)

"""Reference feature-attribution methods judged by the metric suite."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ContractViolation, ModelHandle, gradient


@dataclass(frozen=True)
class AttributionVector:
    """Signed per-feature importances for one explained point."""

    point: np.ndarray
    prediction: object  # f(x*): float, probability vector, or class index
    values: np.ndarray
    method: str
    seed: int | None = None

    def __post_init__(self):
        point = np.array(self.point, dtype=float)
        values = np.array(self.values, dtype=float)
        if values.shape != point.shape or point.ndim != 1:
            raise ContractViolation("values must be one finite real per feature")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(point))):
            raise ContractViolation("attribution point/values must be finite")
        point.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "values", values)

    @property
    def arity(self) -> int:
        return self.values.size


def _target_class(model: ModelHandle, x: np.ndarray) -> int | None:
    if model.output_kind == "probs":
        return int(np.argmax(model.predict(x)))
    return None


def saliency(model: ModelHandle, x_star) -> AttributionVector:
    """Plain gradient of the explained output at the point."""
    x = np.asarray(x_star, dtype=float)
    g = gradient(model, x, target=_target_class(model, x))
    return AttributionVector(x, model.predict(x), g, "saliency")


def input_x_gradient(model: ModelHandle, x_star) -> AttributionVector:
    """Gradient multiplied coordinatewise by the input."""
    x = np.asarray(x_star, dtype=float)
    g = gradient(model, x, target=_target_class(model, x))
    return AttributionVector(x, model.predict(x), x * g, "input-x-gradient")


def integrated_gradients(model: ModelHandle, x_star, baseline=None,
                         steps: int = 64) -> AttributionVector:
    """Path integral of gradients from a baseline, midpoint Riemann sum.

    a_i = (x*_i - b_i) * (1/steps) * sum_t df/dx_i(b + (t - 1/2)/steps * (x* - b)).
    The midpoint rule avoids gradient evaluations at the endpoints.
    """
    x = np.asarray(x_star, dtype=float)
    b = np.zeros_like(x) if baseline is None else np.asarray(baseline, dtype=float)
    if b.shape != x.shape:
        raise ContractViolation("baseline must have the same arity as the point")
    if steps < 1:
        raise ContractViolation("steps must be >= 1")
    target = _target_class(model, x)
    acc = np.zeros_like(x)
    for t in range(steps):
        alpha = (t + 0.5) / steps
        acc += gradient(model, b + alpha * (x - b), target=target)
    values = (x - b) * acc / steps
    return AttributionVector(x, model.predict(x), values, "integrated-gradients")


def random_attribution(arity: int, seed: int) -> AttributionVector:
    """I.i.d. uniform [-1, 1] attributions with exact zeros resampled away."""
    if arity < 1:
        raise ContractViolation("arity must be >= 1")
    rng = np.random.default_rng([seed, 21])
    values = rng.uniform(-1.0, 1.0, size=arity)
    while np.any(values == 0.0):
        zeros = values == 0.0
        values[zeros] = rng.uniform(-1.0, 1.0, size=int(zeros.sum()))
    return AttributionVector(np.zeros(arity), None, values, "random", seed=seed)


METHODS = {
    "saliency": saliency,
    "inpxgrad": input_x_gradient,
    "intgrad": integrated_gradients,
}


def compute_attribution(method: str, model: ModelHandle, x_star,
                        seed: int = 0, steps: int = 64) -> AttributionVector:
    """Dispatch by method name; 'random' ignores the model beyond its arity."""
    if method == "random":
        attr = random_attribution(model.arity, seed)
        x = np.asarray(x_star, dtype=float)
        return AttributionVector(x, model.predict(x), attr.values, "random", seed=seed)
    if method == "intgrad":
        return integrated_gradients(model, x_star, steps=steps)
    try:
        fn = METHODS[method]
    except KeyError:
        raise ContractViolation(f"unknown attribution method {method!r}") from None
    return fn(model, x_star)

"""Shared domain types: tabular datasets, black-box model handles, losses, samplers.

Everything here is immutable after construction and safe to share across
threads. Stochastic operations never touch global RNG state; they take an
explicit seed or a ``numpy.random.Generator``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal, Mapping, Sequence

import numpy as np

OutputKind = Literal["scalar", "probs", "label"]
GradientCapability = Literal["exact", "finite-difference", "none"]

PROB_SUM_TOL = 1e-6
CROSS_ENTROPY_CLIP = 1e-12


class ContractViolation(ValueError):
    """An operation was called outside its stated preconditions."""


class UnsupportedOperation(RuntimeError):
    """The model lacks a capability required by the operation."""


class UndefinedCorrelation(ArithmeticError):
    """A rank correlation is undefined (a rank vector is constant)."""


def _frozen_array(a, dtype=float) -> np.ndarray:
    out = np.array(a, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class TabularDataset:
    """Fixed-width real-valued samples with optional integer class labels."""

    features: np.ndarray
    labels: np.ndarray | None = None
    feature_names: tuple[str, ...] | None = None

    def __post_init__(self):
        feats = np.array(self.features, dtype=float)
        if feats.ndim != 2 or feats.shape[1] < 1 or feats.shape[0] < 1:
            raise ContractViolation("features must be a non-empty 2-D matrix")
        if not np.all(np.isfinite(feats)):
            raise ContractViolation("features contain non-finite values")
        feats.setflags(write=False)
        object.__setattr__(self, "features", feats)
        if self.labels is not None:
            labels = np.array(self.labels, dtype=np.int64)
            if labels.shape != (feats.shape[0],):
                raise ContractViolation("labels must be one integer per sample")
            if labels.min() < 0:
                raise ContractViolation("labels must be nonnegative class indices")
            labels.setflags(write=False)
            object.__setattr__(self, "labels", labels)
        if self.feature_names is not None:
            names = tuple(str(n) for n in self.feature_names)
            if len(names) != feats.shape[1]:
                raise ContractViolation("feature_names length must match width")
            object.__setattr__(self, "feature_names", names)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        if self.labels is None:
            raise ContractViolation("dataset has no labels")
        return int(self.labels.max()) + 1

    def column(self, i: int) -> np.ndarray:
        return self.features[:, i]

    def filter_class(self, label: int) -> "TabularDataset":
        if self.labels is None:
            raise ContractViolation("dataset has no labels")
        mask = self.labels == label
        if not mask.any():
            raise ContractViolation(f"no samples with label {label}")
        return TabularDataset(self.features[mask], self.labels[mask], self.feature_names)


@dataclass(frozen=True)
class ModelHandle:
    """A black-box predictor plus its declared capabilities.

    ``predict_fn`` maps one point (length ``arity``) to a prediction whose
    type depends on ``output_kind``: a float for ``scalar``, a probability
    vector for ``probs``, an integer class index for ``label``.
    ``gradient_fn``, when present, takes ``(x, target)`` and returns the
    exact gradient of the scalar output (or of the target-class probability).
    """

    arity: int
    output_kind: OutputKind
    predict_fn: Callable
    batch_fn: Callable | None = None
    gradient_fn: Callable | None = None
    gradient_capability: GradientCapability = "none"
    n_classes: int | None = None
    name: str = "model"

    def _check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.arity,):
            raise ContractViolation(
                f"model {self.name!r} takes {self.arity} inputs, got shape {x.shape}"
            )
        return x

    def _check_probs(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.ndim != 1 or np.any(p < -PROB_SUM_TOL) or abs(p.sum() - 1.0) > PROB_SUM_TOL:
            raise ContractViolation("class-probability output must be nonnegative and sum to 1")
        return p

    def predict(self, x):
        x = self._check_point(x)
        y = self.predict_fn(x)
        if self.output_kind == "scalar":
            return float(y)
        if self.output_kind == "probs":
            return self._check_probs(y)
        return int(y)

    def predict_batch(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.arity:
            raise ContractViolation("batch must be (n, arity)")
        if self.batch_fn is not None:
            out = np.asarray(self.batch_fn(X))
        else:
            out = np.asarray([self.predict_fn(row) for row in X])
        if self.output_kind == "probs":
            if np.any(out < -PROB_SUM_TOL) or np.any(np.abs(out.sum(axis=1) - 1.0) > PROB_SUM_TOL):
                raise ContractViolation("class-probability rows must be nonnegative and sum to 1")
        return out

    def predict_label(self, x) -> int:
        y = self.predict(x)
        if self.output_kind == "label":
            return int(y)
        if self.output_kind == "probs":
            return int(np.argmax(y))  # ties resolve to the lowest index
        raise ContractViolation("scalar models have no class labels")

    def predict_labels(self, X) -> np.ndarray:
        out = self.predict_batch(X)
        if self.output_kind == "label":
            return out.astype(np.int64)
        if self.output_kind == "probs":
            return np.argmax(out, axis=1).astype(np.int64)
        raise ContractViolation("scalar models have no class labels")


@dataclass(frozen=True)
class LossFunction:
    """Pointwise performance measure between a reference prediction and another."""

    kind: Literal["zero-one", "squared-error", "cross-entropy"]


ZERO_ONE = LossFunction("zero-one")
SQUARED_ERROR = LossFunction("squared-error")
CROSS_ENTROPY = LossFunction("cross-entropy")

_LOSSES = {l.kind: l for l in (ZERO_ONE, SQUARED_ERROR, CROSS_ENTROPY)}


def loss_by_name(kind: str) -> LossFunction:
    try:
        return _LOSSES[kind]
    except KeyError:
        raise ContractViolation(f"unknown loss kind {kind!r}") from None


def _is_vector(y) -> bool:
    return isinstance(y, np.ndarray) and y.ndim == 1 and y.size > 1


def evaluate_loss(loss: LossFunction, y_ref, y) -> float:
    """Pointwise loss l(y_ref, y); both predictions must share a representation."""
    if loss.kind == "zero-one":
        if _is_vector(y_ref) != _is_vector(y):
            raise ContractViolation("zero-one loss needs predictions of the same kind")
        if _is_vector(y_ref):
            y_ref, y = int(np.argmax(y_ref)), int(np.argmax(y))
        return 0.0 if int(y_ref) == int(y) else 1.0
    if loss.kind == "squared-error":
        if _is_vector(y_ref) != _is_vector(y):
            raise ContractViolation("squared-error loss needs predictions of the same kind")
        if _is_vector(y_ref):
            d = np.asarray(y_ref, float) - np.asarray(y, float)
            return float(d @ d)
        return float(y_ref - y) ** 2
    if loss.kind == "cross-entropy":
        if not (_is_vector(y_ref) and _is_vector(y)):
            raise ContractViolation("cross-entropy needs probability vectors on both sides")
        q = np.clip(np.asarray(y, float), CROSS_ENTROPY_CLIP, None)
        return float(-(np.asarray(y_ref, float) * np.log(q)).sum())
    raise ContractViolation(f"unknown loss kind {loss.kind!r}")


def evaluate_loss_batch(loss: LossFunction, y_ref, batch: np.ndarray) -> np.ndarray:
    """Vectorized loss of a batch of predictions against one reference."""
    batch = np.asarray(batch)
    if loss.kind == "zero-one":
        if batch.ndim == 2:
            batch = np.argmax(batch, axis=1)
            y_ref = int(np.argmax(y_ref)) if _is_vector(y_ref) else int(y_ref)
        return (batch != y_ref).astype(float)
    if loss.kind == "squared-error":
        if batch.ndim == 2:
            d = batch - np.asarray(y_ref, float)[None, :]
            return np.einsum("ij,ij->i", d, d)
        return (batch.astype(float) - float(y_ref)) ** 2
    if loss.kind == "cross-entropy":
        if batch.ndim != 2:
            raise ContractViolation("cross-entropy needs probability vectors on both sides")
        q = np.clip(batch.astype(float), CROSS_ENTROPY_CLIP, None)
        return -(np.asarray(y_ref, float)[None, :] * np.log(q)).sum(axis=1)
    raise ContractViolation(f"unknown loss kind {loss.kind!r}")


@dataclass(frozen=True)
class UniformSampler:
    """Uniform draws over the half-open interval [low, high)."""

    low: float
    high: float

    def __post_init__(self):
        if not self.high > self.low:
            raise ContractViolation("uniform sampler needs high > low")

    @property
    def support(self) -> tuple[float, float]:
        return (self.low, self.high)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.low, self.high, size=n)


@dataclass(frozen=True)
class EmpiricalSampler:
    """Resamples (with replacement) the recorded values of one column."""

    values: np.ndarray

    def __post_init__(self):
        vals = _frozen_array(self.values)
        if vals.ndim != 1 or vals.size == 0:
            raise ContractViolation("empirical sampler needs a non-empty 1-D column")
        object.__setattr__(self, "values", vals)

    @property
    def support(self) -> tuple[float, float]:
        return (float(self.values.min()), float(self.values.max()))

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.values[rng.integers(0, self.values.size, size=n)]


@dataclass(frozen=True)
class FeatureDistribution:
    """Per-feature sampling distributions used by expectation estimates.

    Only marginal (independent per-feature) sampling is implemented;
    ``mode="conditional"`` is accepted at construction but raises on use.
    """

    samplers: tuple
    mode: Literal["marginal", "conditional"] = "marginal"

    @property
    def arity(self) -> int:
        return len(self.samplers)

    @classmethod
    def uniform(cls, arity: int, low: float = 0.0, high: float = 1.0) -> "FeatureDistribution":
        return cls(tuple(UniformSampler(low, high) for _ in range(arity)))

    @classmethod
    def empirical(cls, data) -> "FeatureDistribution":
        feats = data.features if isinstance(data, TabularDataset) else np.asarray(data, float)
        return cls(tuple(EmpiricalSampler(feats[:, i]) for i in range(feats.shape[1])))

    def _require_marginal(self):
        if self.mode != "marginal":
            raise NotImplementedError("conditional (true-to-the-data) sampling is not implemented")

    def sample(self, i: int, n: int, rng: np.random.Generator) -> np.ndarray:
        self._require_marginal()
        return self.samplers[i].sample(n, rng)

    def sample_matrix(self, indices: Sequence[int], n: int, rng: np.random.Generator) -> np.ndarray:
        """Independent joint draws for the given columns, shape (n, len(indices))."""
        self._require_marginal()
        return np.column_stack([self.samplers[i].sample(n, rng) for i in indices])


def restrict_model(model: ModelHandle, anchor, free_indices) -> ModelHandle:
    """Clamp every coordinate outside ``free_indices`` to the anchor's value.

    The returned handle takes only the free coordinates, in the order given.
    Evaluating it at the anchor's own free coordinates reproduces
    ``model.predict(anchor)`` exactly.
    """
    anchor = np.array(anchor, dtype=float)
    if anchor.shape != (model.arity,):
        raise ContractViolation("anchor must have the model's full arity")
    free = [int(i) for i in free_indices]
    if len(set(free)) != len(free):
        raise ContractViolation("free_indices must be distinct")
    for i in free:
        if not 0 <= i < model.arity:
            raise ContractViolation(f"feature index {i} out of range for arity {model.arity}")
    free_arr = np.array(free, dtype=int)

    def embed(z):
        x = anchor.copy()
        x[free_arr] = z
        return x

    def embed_batch(Z):
        Z = np.asarray(Z, dtype=float)
        X = np.tile(anchor, (Z.shape[0], 1))
        X[:, free_arr] = Z
        return X

    grad_fn = None
    if model.gradient_capability == "exact" and model.gradient_fn is not None:
        def grad_fn(z, target=None):
            full = gradient(model, embed(z), target=target)
            return full[free_arr]

    return ModelHandle(
        arity=len(free),
        output_kind=model.output_kind,
        predict_fn=lambda z: model.predict_fn(embed(z)),
        batch_fn=lambda Z: model.predict_batch(embed_batch(Z)),
        gradient_fn=grad_fn,
        gradient_capability=model.gradient_capability,
        n_classes=model.n_classes,
        name=f"{model.name}[restricted:{','.join(map(str, free))}]",
    )


def _scalar_output(model: ModelHandle, x: np.ndarray, target: int | None) -> float:
    if model.output_kind == "scalar":
        return model.predict(x)
    return float(model.predict(x)[target])


def finite_difference_gradient(model: ModelHandle, x, target: int | None = None) -> np.ndarray:
    """Central finite differences with per-coordinate step 1e-5 * max(1, |x_i|)."""
    x = np.array(x, dtype=float)
    if model.output_kind == "probs" and target is None:
        target = int(np.argmax(model.predict(x)))
    g = np.empty(x.size)
    for i in range(x.size):
        h = 1e-5 * max(1.0, abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (_scalar_output(model, xp, target) - _scalar_output(model, xm, target)) / (2 * h)
    return g


def gradient(model: ModelHandle, x, target: int | None = None) -> np.ndarray:
    """Gradient of the model's scalar output (or target-class probability) at x."""
    if model.gradient_capability == "none":
        raise UnsupportedOperation(f"model {model.name!r} does not support gradients")
    if model.output_kind == "label":
        raise UnsupportedOperation("label-only outputs are not differentiable")
    x = model._check_point(x)
    if model.output_kind == "probs" and target is None:
        target = int(np.argmax(model.predict(x)))
    if model.gradient_capability == "exact" and model.gradient_fn is not None:
        return np.asarray(model.gradient_fn(x, target), dtype=float)
    return finite_difference_gradient(model, x, target)


@dataclass(frozen=True)
class MetricReport:
    """Named metric values plus the settings and seeds that produced them."""

    metrics: Mapping[str, float]
    settings: Mapping[str, object] = field(default_factory=dict)
    seeds: Mapping[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "metrics": dict(self.metrics),
            "settings": dict(self.settings),
            "seeds": dict(self.seeds),
        }

"""Sparse polynomial readout of a trained model via ridge regression."""

from collections.abc import Sequence
from dataclasses import dataclass

import logfire
import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg
from sklearn.preprocessing import PolynomialFeatures

from conservnet.core.exceptions import ArgumentError, DimensionError, RankDeficiencyError
from conservnet.models import FloatArray, GroupedDataset, SymbolicReport
from conservnet.services.network import MlpParams, predict

DEFAULT_DEGREE = 2
DEFAULT_RIDGE_LAMBDA = 1e-4
DEFAULT_THRESHOLD = 0.05


@dataclass(frozen=True, slots=True)
class RidgeFit:
    coefficients: FloatArray
    intercept: float

    def predict(self, features: ArrayLike) -> FloatArray:
        return np.asarray(features, dtype=np.float64) @ self.coefficients + self.intercept


def poly_features(
    states: ArrayLike, degree: int, names: Sequence[str] | None = None
) -> tuple[FloatArray, list[str]]:
    """Every monomial of total degree 1..degree, named like ``x1*x2`` and ``x4^2``."""
    if degree < 1:
        raise ArgumentError(f"Polynomial degree must be at least 1, got {degree}")
    x = np.asarray(states, dtype=np.float64)
    if x.ndim != 2:
        raise DimensionError(expected=2, got=x.ndim)
    if names is None:
        names = [f"x{i + 1}" for i in range(x.shape[1])]
    if len(names) != x.shape[1]:
        raise DimensionError(expected=x.shape[1], got=len(names))

    expander = PolynomialFeatures(degree=degree, include_bias=False)
    features = expander.fit_transform(x)
    labels = expander.get_feature_names_out(list(names))
    return np.asarray(features, dtype=np.float64), [
        str(label).replace(" ", "*") for label in labels
    ]


def ridge_fit(
    features: ArrayLike,
    targets: ArrayLike,
    lam: float,
    standardize: bool = False,
) -> RidgeFit:
    """Solve (X^T X + lam I) beta = X^T y on centered data; intercept is not penalized."""
    if lam < 0:
        raise ArgumentError(f"Ridge penalty must be non-negative, got {lam}")
    X = np.asarray(features, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64).ravel()
    if X.ndim != 2 or X.shape[0] != y.size:
        raise DimensionError(expected=y.size, got=tuple(X.shape))

    x_mean = X.mean(axis=0)
    y_mean = float(y.mean())
    Xc = X - x_mean
    scale = np.ones(X.shape[1])
    if standardize:
        std = Xc.std(axis=0)
        scale = np.where(std > 0.0, std, 1.0)
        Xc = Xc / scale

    gram = Xc.T @ Xc
    n_features = gram.shape[0]
    if lam == 0.0:
        rank = int(np.linalg.matrix_rank(gram))
        if rank < n_features:
            raise RankDeficiencyError(rank=rank, n_features=n_features)

    beta = linalg.solve(
        gram + lam * np.eye(n_features), Xc.T @ (y - y_mean), assume_a="pos"
    )
    coefficients = beta / scale
    return RidgeFit(
        coefficients=coefficients, intercept=y_mean - float(x_mean @ coefficients)
    )


def format_terms(terms: dict[str, float]) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for name, value in terms.items():
        sign = "-" if value < 0 else "+"
        parts.append(f"{sign} {abs(value):.4g}*{name}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def extract(
    params: MlpParams,
    dataset: GroupedDataset,
    degree: int = DEFAULT_DEGREE,
    lam: float = DEFAULT_RIDGE_LAMBDA,
    threshold: float = DEFAULT_THRESHOLD,
) -> SymbolicReport:
    """Fit the model's outputs with polynomials of the dataset's raw variables.

    Terms whose magnitude is below ``threshold * max|c|`` are left out of the
    formula but stay in ``coefficients``.
    """
    if threshold < 0:
        raise ArgumentError(f"Threshold must be non-negative, got {threshold}")

    with logfire.span(
        "extract formula from {dataset}", dataset=dataset.name, degree=degree, lam=lam
    ):
        targets = predict(params, dataset.stacked_states())
        features, names = poly_features(
            dataset.unscaled_states(), degree, dataset.variables
        )
        fit = ridge_fit(features, targets, lam, standardize=True)

        predicted = fit.predict(features)
        total = float(np.sum((targets - targets.mean()) ** 2))
        residual = float(np.sum((targets - predicted) ** 2))
        r2 = 1.0 - residual / total if total > 0.0 else 1.0

        terms: dict[str, float] = {}
        peak = float(np.max(np.abs(fit.coefficients))) if names else 0.0
        if total > 0.0 and peak > 0.0:
            cutoff = threshold * peak
            terms = {
                name: float(value)
                for name, value in zip(names, fit.coefficients, strict=True)
                if abs(value) >= cutoff
            }
        formula = format_terms(terms)
        logfire.info("Extracted {formula}", formula=formula, r2=r2)

    return SymbolicReport(
        degree=degree,
        ridge_lambda=lam,
        threshold=threshold,
        feature_names=names,
        coefficients=[float(c) for c in fit.coefficients],
        intercept=fit.intercept,
        terms=terms,
        formula=formula,
        r2=r2,
    )

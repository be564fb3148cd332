"""Finite-field radial projection checks.

Rational quantities in reports come back as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable

from . import _core
from ._core import (
    BudgetExceeded,
    ConfigInvalid,
    FfradError,
    Field,
    ParseError,
    PointSet,
    PreconditionViolated,
    Subspace,
    collision_count,
    enumerate_grassmannian,
    full_plane,
    gaussian_binomial,
    is_prime_power,
    project,
    radial_projection,
    radial_sizes,
    random_subset,
    sample_uniform_subspace,
)

__all__ = [
    "BudgetExceeded",
    "ConfigInvalid",
    "FfradError",
    "Field",
    "ParseError",
    "PointSet",
    "PreconditionViolated",
    "Subspace",
    "check_expectation_identity",
    "check_full_dim",
    "check_large_esc",
    "check_lemma31",
    "check_markov_fraction",
    "check_radial_conjecture",
    "check_weak_bound",
    "collision_count",
    "collision_expectation",
    "enumerate_grassmannian",
    "exceptional_set",
    "full_plane",
    "gaussian_binomial",
    "is_prime_power",
    "project",
    "radial_projection",
    "radial_sizes",
    "random_subset",
    "reduction_pipeline",
    "run_experiment",
    "sample_uniform_subspace",
]

_RATIONAL_KEYS = {"lhs", "rhs", "M", "C"}


def _rational_text(x: Fraction | int | str) -> str:
    if isinstance(x, str):
        return x
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _decode(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {
            k: Fraction(v) if k in _RATIONAL_KEYS and isinstance(v, str) else _decode(v)
            for k, v in obj.items()
        }
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj


def _report(text: str) -> dict:
    return _decode(json.loads(text))


def exceptional_set(E: PointSet, threshold: Fraction | int | str, strict: bool = False, jobs: int = 1) -> PointSet:
    return _core.exceptional_set(E, _rational_text(threshold), strict, jobs)


def collision_expectation(n: int, k: int, q: int, size: int) -> Fraction:
    return Fraction(_core.collision_expectation(n, k, q, size))


def check_weak_bound(E: PointSet, C: Fraction | int | str, jobs: int = 1) -> dict:
    return _report(_core.check_weak_bound(E, _rational_text(C), jobs))


def check_large_esc(E: PointSet, M: int, jobs: int = 1) -> dict:
    return _report(_core.check_large_esc(E, M, jobs))


def check_full_dim(E: PointSet, M: int, k: int, jobs: int = 1) -> dict:
    return _report(_core.check_full_dim(E, M, k, jobs))


def check_radial_conjecture(E: PointSet, k: int, jobs: int = 1) -> dict:
    return _report(_core.check_radial_conjecture(E, k, jobs))


def check_expectation_identity(X: PointSet, k: int) -> dict:
    return _report(_core.check_expectation_identity(X, k))


def check_markov_fraction(X: PointSet, k: int) -> dict:
    return _report(_core.check_markov_fraction(X, k))


def check_lemma31(A: PointSet, B: PointSet, k: int, seed: int = 0) -> dict:
    return _report(_core.check_lemma31(A, B, k, seed))


def reduction_pipeline(
    E: PointSet, mode: str, k: int, M: int = 0, seed: int = 0, relaxed: bool = False
) -> dict:
    """mode is "full-dim" (uses M) or "conjecture"."""
    return _report(_core.reduction_pipeline(E, mode, k, M, seed, relaxed))


def run_experiment(
    theorem: str,
    q: Iterable[int],
    n: Iterable[int],
    k: Iterable[int] = (),
    sizes: Iterable[int] = (),
    params: Iterable[Fraction | int | str] = (),
    **options: Any,
) -> dict:
    """Runs a grid; options are family, trials, seed, jobs, budget, max_trials."""
    config = {
        "theorem": theorem,
        "q": list(q),
        "n": list(n),
        "k": list(k),
        "sizes": list(sizes),
        "params": [_rational_text(p) for p in params],
        **options,
    }
    return _report(_core.run_experiment(config))

"""Synthetic two-class 2-D datasets, deterministic per seed.

circles: class A evenly spaced on a radius-1 ring, class B on a radius-0.5
ring, Gaussian noise added, then each dimension min-max rescaled to
[-1, 1].  blobs: Gaussian clusters around (-0.5, -0.5) for class A and
(0.5, 0.5) for class B, clipped to [-1, 1].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .train import CLASS_A, CLASS_B, LabeledDataset, LabeledPoint

DATASET_KINDS = ("circles", "blobs")

_BLOB_CENTERS = {CLASS_A: (-0.5, -0.5), CLASS_B: (0.5, 0.5)}


@dataclass(frozen=True)
class DatasetSpec:
    kind: str
    num_points: int
    noise: float
    seed: int

    def __post_init__(self):
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"kind must be one of {DATASET_KINDS}, got {self.kind!r}")
        if self.num_points < 4 or self.num_points % 2 != 0:
            raise ValueError(
                f"num_points must be even and >= 4 for a balanced split, got {self.num_points}"
            )
        if not self.noise >= 0:
            raise ValueError(f"noise must be >= 0, got {self.noise}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def generate_dataset(spec: DatasetSpec) -> LabeledDataset:
    rng = np.random.default_rng(spec.seed)
    half = spec.num_points // 2
    if spec.kind == "circles":
        coords = _circles(rng, half, spec.noise)
    else:
        coords = _blobs(rng, half, spec.noise)
    labels = [CLASS_A] * half + [CLASS_B] * half
    points = tuple(
        LabeledPoint(f"data_{i}", (float(x), float(y)), label)
        for i, ((x, y), label) in enumerate(zip(coords, labels))
    )
    return LabeledDataset(points, kind=spec.kind)


def _circles(rng: np.random.Generator, half: int, noise: float) -> np.ndarray:
    angles = 2.0 * math.pi * np.arange(half) / half
    ring = np.column_stack([np.cos(angles), np.sin(angles)])
    coords = np.vstack([ring, 0.5 * ring])
    coords = coords + rng.normal(0.0, noise, coords.shape)
    # Min-max per dimension onto [-1, 1]; noise may have pushed values out.
    for d in (0, 1):
        lo, hi = coords[:, d].min(), coords[:, d].max()
        if hi > lo:
            coords[:, d] = -1.0 + 2.0 * (coords[:, d] - lo) / (hi - lo)
        else:
            coords[:, d] = 0.0
    return coords


def _blobs(rng: np.random.Generator, half: int, noise: float) -> np.ndarray:
    clusters = []
    for label in (CLASS_A, CLASS_B):
        center = np.array(_BLOB_CENTERS[label])
        clusters.append(center + rng.normal(0.0, noise, (half, 2)))
    return np.clip(np.vstack(clusters), -1.0, 1.0)

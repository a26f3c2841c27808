"""Sparse 3-way tensors, dense factor matrices and the .tns coordinate format."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import DimensionError, TensorParseError
from ..core.logger import get_logger

logger = get_logger(__name__)

Dims = Tuple[int, int, int]


@dataclass(frozen=True)
class SparseTensor:
    """
    Coordinate-format tensor with 0-indexed, unique, lexicographically
    sorted coordinates.

    Build through `from_entries`, which validates ranges and sums duplicates.
    """
    dims: Dims
    coords: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @classmethod
    def from_entries(
        cls,
        dims: Sequence[int],
        coords: Union[np.ndarray, Iterable[Sequence[int]]],
        values: Union[np.ndarray, Iterable[float]],
    ) -> "SparseTensor":
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3 or min(dims) < 1:
            raise DimensionError(f"tensor dims must be three positive sizes, got {dims}")
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 3)
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if coords.shape[0] != values.shape[0]:
            raise DimensionError(f"{coords.shape[0]} coordinates but {values.shape[0]} values")
        if coords.size and ((coords < 0).any() or (coords >= np.array(dims)).any()):
            raise DimensionError(f"coordinates outside dims {dims}")

        if coords.shape[0] == 0:
            return cls(dims, coords, values)
        unique, inverse = np.unique(coords, axis=0, return_inverse=True)
        summed = np.zeros(unique.shape[0])
        np.add.at(summed, inverse.reshape(-1), values)
        return cls(dims, unique, summed)

    @property
    def nnz(self) -> int:
        return int(self.values.shape[0])

    def scaled(self, alpha: float) -> "SparseTensor":
        return SparseTensor(self.dims, self.coords, self.values * alpha)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dims)
        if self.nnz:
            dense[tuple(self.coords.T)] = self.values
        return dense


@dataclass(frozen=True)
class FactorMatrix:
    """Dense rows x R factor matrix."""
    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.shape[1] < 1:
            raise DimensionError(
                f"factor matrix must be rows x R with R >= 1, got {self.data.shape}"
            )
        if not np.isfinite(self.data).all():
            raise ValueError("factor matrix entries must be finite")

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def rank(self) -> int:
        return self.data.shape[1]


def _parse_fields(parts: Sequence[str], line_no: int) -> Tuple[Tuple[int, int, int], float]:
    if len(parts) != 4:
        raise TensorParseError(f"expected 'h0 h1 h2 value', got {len(parts)} fields", line=line_no)
    try:
        idx = tuple(int(p) for p in parts[:3])
    except ValueError:
        raise TensorParseError(
            f"coordinates must be integers: {' '.join(parts[:3])}", line=line_no
        ) from None
    try:
        value = float(parts[3])
    except ValueError:
        raise TensorParseError(f"value is not a number: {parts[3]}", line=line_no) from None
    if min(idx) < 1:
        raise TensorParseError(f"coordinates are 1-indexed, got {idx}", line=line_no)
    return idx, value


def parse_tns(text: str) -> SparseTensor:
    """
    Parse coordinate-list text: one "h0 h1 h2 value" per line, 1-indexed.

    Blank lines and '#' comments are skipped. A "# dims: I0 I1 I2" header
    fixes the dimensions; otherwise each is the largest coordinate seen.

    Raises:
        TensorParseError: Malformed line, coordinate < 1, or coordinate beyond declared dims
    """
    declared: Optional[Dims] = None
    coords = []
    values = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.lower().startswith("dims:"):
                try:
                    sizes = tuple(int(v) for v in body[5:].split())
                except ValueError:
                    raise TensorParseError(f"bad dims header: {line}", line=line_no) from None
                if len(sizes) != 3 or min(sizes) < 1:
                    raise TensorParseError(
                        f"dims header needs three positive sizes: {line}", line=line_no
                    )
                declared = sizes
            continue

        idx, value = _parse_fields(line.split(), line_no)
        if declared is not None and any(i > d for i, d in zip(idx, declared)):
            raise TensorParseError(
                f"coordinate {idx} exceeds declared dims {declared}", line=line_no
            )
        coords.append([i - 1 for i in idx])
        values.append(value)

    if declared is not None:
        dims = declared
    elif coords:
        dims = tuple(int(d) + 1 for d in np.max(np.array(coords), axis=0))
    else:
        dims = (1, 1, 1)

    tensor = SparseTensor.from_entries(dims, coords, values)
    logger.debug("Tensor parsed", dims=tensor.dims, nnz=tensor.nnz)
    return tensor


def load_tns(path: Union[str, Path]) -> SparseTensor:
    """
    Read a .tns file.

    Raises:
        FileNotFoundError: `path` does not exist
        TensorParseError: Malformed content
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"tensor file not found: {path}")
    return parse_tns(path.read_text())


def random_sparse_tensor(dims: Sequence[int], density: float, seed: int) -> SparseTensor:
    """Seeded tensor with round(density * I0*I1*I2) distinct nonzeros in [-1, 1)."""
    rng = np.random.default_rng(seed)
    size = int(np.prod(dims))
    nnz = min(size, int(round(density * size)))
    flat = rng.choice(size, size=nnz, replace=False)
    coords = np.stack(np.unravel_index(flat, tuple(dims)), axis=1)
    return SparseTensor.from_entries(dims, coords, rng.uniform(-1.0, 1.0, nnz))


def random_factor(rows: int, rank: int, seed: int) -> FactorMatrix:
    rng = np.random.default_rng(seed)
    return FactorMatrix(rng.uniform(-1.0, 1.0, (rows, rank)))

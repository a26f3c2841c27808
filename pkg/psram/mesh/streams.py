"""Host-memory stream sources feeding LoadInput/LoadConst and sinking StoreOutput."""

from abc import ABC, abstractmethod
from typing import Dict, Optional, Sequence

import numpy as np

from ..core.errors import ProgramError


class StreamSource(ABC):
    """
    Host side of the streaming model.

    The simulator asks the source for one value per virtual cell whenever a
    LoadInput or LoadConst executes, and hands it every StoreOutput. Sources
    may compute values on demand from what was written earlier in the run.
    """

    def __init__(self, n_points: int, iterations: int):
        self.n_points = n_points
        self.iterations = iterations
        self._outputs: Dict[int, np.ndarray] = {}

    @abstractmethod
    def read_input(self, stream: int, iteration: int) -> np.ndarray:
        """Values of input `stream` for all virtual cells at `iteration`."""

    @abstractmethod
    def read_const(self, stream: int, iteration: int, broadcast: bool) -> np.ndarray:
        """Values of const `stream`; a single scalar when `broadcast`."""

    def write_output(self, stream: int, iteration: int, values: np.ndarray) -> None:
        if stream not in self._outputs:
            self._outputs[stream] = np.zeros((self.iterations, self.n_points))
        self._outputs[stream][iteration] = values

    def outputs(self) -> Dict[int, np.ndarray]:
        """Output streams written so far, each shaped (iterations, N)."""
        return self._outputs


def _as_stream(values: object, iterations: int, n_points: Optional[int], label: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if n_points is None:
        # broadcast-capable stream: one scalar per iteration is allowed
        if arr.ndim == 0:
            arr = np.full(iterations, float(arr))
        if arr.ndim == 1 and arr.shape[0] == iterations:
            return arr
    if n_points is not None and arr.ndim == 1 and iterations == 1:
        arr = arr.reshape(1, -1)
    width_ok = n_points is None or (arr.ndim == 2 and arr.shape[1] == n_points)
    if arr.ndim != 2 or arr.shape[0] != iterations or not width_ok:
        expected = n_points if n_points else "N"
        raise ProgramError(f"{label} has shape {arr.shape}; expected ({iterations}, {expected})")
    return arr


class ArrayStreams(StreamSource):
    """Fixed arrays: inputs shaped (iterations, N), consts (iterations, N) or (iterations,)."""

    def __init__(
        self,
        inputs: Sequence[object],
        consts: Sequence[object],
        n_points: int,
        iterations: int,
    ):
        super().__init__(n_points, iterations)
        self._inputs = [
            _as_stream(v, iterations, n_points, f"input stream {i}") for i, v in enumerate(inputs)
        ]
        self._consts = [
            _as_stream(v, iterations, None, f"const stream {i}") for i, v in enumerate(consts)
        ]

    def read_input(self, stream: int, iteration: int) -> np.ndarray:
        if stream >= len(self._inputs):
            raise ProgramError(f"input stream {stream} not provided ({len(self._inputs)} given)")
        return self._inputs[stream][iteration]

    def read_const(self, stream: int, iteration: int, broadcast: bool) -> np.ndarray:
        if stream >= len(self._consts):
            raise ProgramError(f"const stream {stream} not provided ({len(self._consts)} given)")
        values = self._consts[stream]
        if values.ndim == 1:
            if not broadcast:
                return np.full(self.n_points, values[iteration])
            return values[iteration]
        row = values[iteration]
        if broadcast:
            return row[0]
        if row.shape[0] != self.n_points:
            raise ProgramError(
                f"const stream {stream} has {row.shape[0]} columns, expected {self.n_points}"
            )
        return row

"""Counter-based random streams.

Every replicate draws from its own Philox stream keyed by (master_seed,
stream_index), so results do not depend on which worker ran which replicate.
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError

_UINT64 = 2**64


@dataclass(frozen=True)
class RngStream:
    """Value-type handle on an independent random stream.

    ``path`` addresses sub-streams, so one replicate can hand separate streams
    to its stable mixing variable and its Gaussian part.
    """

    master_seed: int
    stream_index: int
    path: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_index"):
            value = getattr(self, name)
            if not 0 <= value < _UINT64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {value}")
        if any(p < 0 for p in self.path):
            raise DomainError(f"sub-stream indices must be >= 0, got {self.path}")

    def child(self, index: int) -> "RngStream":
        return RngStream(self.master_seed, self.stream_index, (*self.path, index))

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            entropy=self.master_seed, spawn_key=(self.stream_index, *self.path)
        )

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(self.seed_sequence()))

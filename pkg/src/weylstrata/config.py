"""Global computation caps."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    max_rank: int = 5
    order_cap: int = 50_000
    allow_exceptional: bool = False  # F4/E6-8; no data shipped for them


DEFAULT_CAPS = Caps()

"""Cost guards for operations whose work grows exponentially in their arguments.

Guarded operations take a ``max_cost`` keyword; passing a larger budget (the
CLI flag ``--max-cost``) overrides the default limit after the caller has seen
the estimated cost.
"""

from __future__ import annotations

__all__ = ["CostGuardError", "require_cost"]


class CostGuardError(ValueError):
    """Raised when an operation's estimated cost exceeds its budget."""


def _fmt(n: int) -> str:
    return str(n) if n < 10**15 else f"~2^{n.bit_length() - 1}"


def require_cost(what: str, estimate: int, default_limit: int, max_cost: int | None = None) -> None:
    limit = default_limit if max_cost is None else max_cost
    if estimate > limit:
        raise CostGuardError(
            f"{what}: estimated cost {_fmt(estimate)} exceeds the limit {_fmt(limit)}; "
            f"pass max_cost (CLI: --max-cost) to override"
        )

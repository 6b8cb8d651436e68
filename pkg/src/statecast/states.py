"""State codes and the electoral-vote apportionment table.

The bundled apportionment is the 2016 one (51 entities: 50 states plus DC,
winner-take-all, 538 votes total).  A different table can be loaded from any
``state,ev`` CSV, e.g. after a reapportionment.
"""

from __future__ import annotations

import csv
from importlib import resources

from .errors import ConfigurationError

#: 50 state postal codes plus DC.
STATE_CODES = frozenset(
    {
        "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "DC", "FL",
        "GA", "HI", "ID", "IL", "IN", "IA", "KS", "KY", "LA", "ME",
        "MD", "MA", "MI", "MN", "MS", "MO", "MT", "NE", "NV", "NH",
        "NJ", "NM", "NY", "NC", "ND", "OH", "OK", "OR", "PA", "RI",
        "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV", "WI",
        "WY",
    }
)

NATIONAL = "US"

TOTAL_ELECTORAL_VOTES = 538
WIN_ELECTORAL_VOTES = 270


def is_state(code: str) -> bool:
    return code in STATE_CODES


def load_ev_table(lines) -> dict[str, int]:
    """Read a ``state,ev`` CSV (text stream or iterable of lines).

    Every code must be one of the 51 recognized entities and the votes must
    sum to 538.  Returns a mapping sorted by state code.
    """
    table: dict[str, int] = {}
    for row in csv.DictReader(lines):
        code = (row.get("state") or "").strip().upper()
        if code not in STATE_CODES:
            raise ConfigurationError(f"unknown state code in EV table: {code!r}")
        table[code] = int(row["ev"])
    total = sum(table.values())
    if total != TOTAL_ELECTORAL_VOTES:
        raise ConfigurationError(
            f"EV table sums to {total}, expected {TOTAL_ELECTORAL_VOTES}"
        )
    return {code: table[code] for code in sorted(table)}


def default_ev_table() -> dict[str, int]:
    """The bundled 2016 apportionment."""
    ref = resources.files("statecast.data").joinpath("electoral_votes_2016.csv")
    with ref.open("r", encoding="utf-8") as fh:
        return load_ev_table(fh)
